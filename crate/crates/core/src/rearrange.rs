//! The rearrangement operator `X ↦ X⁺`.
//!
//! `X⁺` places the probability multiset, sorted non-increasingly, on the
//! integers `0, 1, -1, 2, -2, …`: the largest probability sits at 0, the
//! next at 1, the next at -1, and so on. The result depends only on the
//! probability multiset, never on where the original atoms sat.

use crate::dist::{IntDist, Rational};

/// The integer that receives the `i`-th largest probability (0-based):
/// `0, 1, -1, 2, -2, …`.
pub(crate) fn placement(i: usize) -> i64 {
    if i % 2 == 1 {
        i.div_ceil(2) as i64
    } else {
        -((i / 2) as i64)
    }
}

/// Builds the plus form of a probability multiset.
///
/// Sorts the probabilities non-increasingly and assigns them to
/// `0, 1, -1, 2, -2, …` in order. The multiset need not come from an
/// existing distribution.
pub fn plus_form_of_multiset(probs: &[Rational]) -> IntDist {
    let mut sorted: Vec<Rational> = probs.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let mut atoms: Vec<(i64, Rational)> = sorted
        .into_iter()
        .enumerate()
        .map(|(i, p)| (placement(i), p))
        .collect();
    atoms.sort_by_key(|&(x, _)| x);
    let (values, probs) = atoms.into_iter().unzip();
    IntDist::from_sorted_unchecked(values, probs)
}

/// The rearrangement `X⁺` of a distribution.
///
/// Only the probability multiset of `d` matters: translates, reflections,
/// and permutations of the atoms all map to the same plus form.
pub fn plus_rearrangement(d: &IntDist) -> IntDist {
    plus_form_of_multiset(d.probs())
}

/// True iff `d` is already its own rearrangement.
pub fn is_plus_form(d: &IntDist) -> bool {
    *d == plus_rearrangement(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::ratio;

    fn dist(atoms: &[(i64, (i64, i64))]) -> IntDist {
        IntDist::new(
            atoms
                .iter()
                .map(|&(x, (n, d))| (x, ratio(n, d)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn placement_walks_zero_one_minus_one() {
        let seq: Vec<i64> = (0..7).map(placement).collect();
        assert_eq!(seq, vec![0, 1, -1, 2, -2, 3, -3]);
    }

    #[test]
    fn rearranges_three_atoms() {
        let d = dist(&[(10, (1, 2)), (20, (1, 4)), (30, (1, 4))]);
        let expected = dist(&[(-1, (1, 4)), (0, (1, 2)), (1, (1, 4))]);
        assert_eq!(plus_rearrangement(&d), expected);
    }

    #[test]
    fn single_atom_lands_at_zero() {
        assert_eq!(plus_rearrangement(&IntDist::point(7)), IntDist::point(0));
    }

    #[test]
    fn four_atoms_end_at_plus_two() {
        let d = dist(&[(0, (2, 5)), (5, (3, 10)), (9, (1, 5)), (12, (1, 10))]);
        let expected = dist(&[(-1, (1, 5)), (0, (2, 5)), (1, (3, 10)), (2, (1, 10))]);
        assert_eq!(plus_rearrangement(&d), expected);
    }

    #[test]
    fn is_plus_form_examples() {
        assert!(is_plus_form(&dist(&[(-1, (1, 4)), (0, (1, 2)), (1, (1, 4))])));
        assert!(!is_plus_form(&dist(&[(0, (1, 4)), (1, (3, 4))])));
        assert!(is_plus_form(&IntDist::point(0)));
    }

    #[test]
    fn idempotent_and_invariant_under_translation_reflection() {
        let d = dist(&[(-3, (1, 8)), (0, (1, 2)), (4, (3, 8))]);
        let plus = plus_rearrangement(&d);
        assert_eq!(plus_rearrangement(&plus), plus);
        assert_eq!(plus_rearrangement(&d.translate(13)), plus);
        assert_eq!(plus_rearrangement(&d.reflect()), plus);
    }

    #[test]
    fn support_is_contiguous_window_containing_zero() {
        let d = dist(&[(0, (2, 5)), (5, (3, 10)), (9, (1, 5)), (12, (1, 10))]);
        let plus = plus_rearrangement(&d);
        let n = plus.len() as i64;
        assert_eq!(plus.max_value() - plus.min_value() + 1, n);
        assert!(plus.min_value() <= 0 && 0 <= plus.max_value());
    }

    #[test]
    fn plus_form_probability_ordering() {
        // P(0) dominates everything; P(k) ≥ P(-k) and P(1-k) ≥ P(k) for k ≥ 1.
        let d = dist(&[(0, (2, 5)), (5, (3, 10)), (9, (1, 5)), (12, (1, 10))]);
        let plus = plus_rearrangement(&d);
        let p0 = plus.prob_at(0);
        for k in 1..=3 {
            assert!(p0 >= plus.prob_at(k));
            assert!(plus.prob_at(k) >= plus.prob_at(-k));
            assert!(plus.prob_at(1 - k) >= plus.prob_at(k));
        }
    }

    #[test]
    fn tie_order_does_not_change_result() {
        let a = dist(&[(3, (1, 4)), (8, (1, 4)), (1, (1, 4)), (-2, (1, 4))]);
        let b = dist(&[(-2, (1, 4)), (1, (1, 4)), (3, (1, 4)), (8, (1, 4))]);
        assert_eq!(plus_rearrangement(&a), plus_rearrangement(&b));
    }
}
