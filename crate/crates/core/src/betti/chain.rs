//! Homology of the small chain complexes that compute one multigraded
//! Betti strand.
//!
//! Cells are bitmasks over an ordered ground set (generators for the Taylor
//! strand, support variables for the Koszul complex). The boundary of a cell
//! drops one element, with sign `(-1)^t` when the element is the `t`-th
//! smallest (0-based), and only terms landing on a cell of the complex are
//! kept.

use std::collections::HashMap;

use crate::field::{FieldSpec, GfMatrix};
use crate::monomial::{Monomial, MonomialIdeal};

/// Homology dimensions of the complex spanned by `cells`, indexed by cell size.
pub(crate) fn masked_homology(cells: &[u64], field: FieldSpec) -> Vec<u64> {
    let top = cells.iter().map(|c| c.count_ones() as usize).max();
    let Some(top) = top else {
        return Vec::new();
    };
    let mut levels: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for &c in cells {
        levels[c.count_ones() as usize].push(c);
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    // ranks[k] = rank of the boundary map from size k to size k-1
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        if levels[k].is_empty() || levels[k - 1].is_empty() {
            continue;
        }
        let index: HashMap<u64, usize> = levels[k - 1]
            .iter()
            .enumerate()
            .map(|(r, &c)| (c, r))
            .collect();
        let mut mat = GfMatrix::zeros(levels[k - 1].len(), levels[k].len(), field);
        for (col, &cell) in levels[k].iter().enumerate() {
            let mut t = 0;
            let mut bits = cell;
            while bits != 0 {
                let j = bits.trailing_zeros();
                bits &= bits - 1;
                if let Some(&row) = index.get(&(cell & !(1u64 << j))) {
                    mat.set(row, col, if t % 2 == 0 { 1 } else { -1 });
                }
                t += 1;
            }
        }
        ranks[k] = mat.rank();
    }
    (0..=top)
        .map(|k| (levels[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect()
}

/// Cells of the Taylor strand at multidegree `b`: subsets `S` of the
/// generators dividing `b` with `lcm(S) = b`. Bit `t` of a cell refers to
/// `divisors[t]`.
pub(crate) fn taylor_cells(divisors: &[&Monomial], b: &Monomial, include_empty: bool) -> Vec<u64> {
    fn rec(
        divisors: &[&Monomial],
        start: usize,
        mask: u64,
        acc: &Monomial,
        b: &Monomial,
        out: &mut Vec<u64>,
    ) {
        for t in start..divisors.len() {
            let next = acc.lcm_same(divisors[t]);
            let m = mask | (1u64 << t);
            if &next == b {
                out.push(m);
            }
            rec(divisors, t + 1, m, &next, b, out);
        }
    }
    let mut out = Vec::new();
    if include_empty && b.is_one() {
        out.push(0);
    }
    rec(divisors, 0, 0, &Monomial::one(b.n()), b, &mut out);
    out
}

/// Faces of the upper Koszul simplicial complex
/// `K^b = { τ ⊆ supp(b) : x^(b - τ) ∈ I }`. Bit `t` refers to the `t`-th
/// support variable of `b`.
pub(crate) fn koszul_cells(ideal: &MonomialIdeal, b: &Monomial) -> Vec<u64> {
    let support: Vec<usize> = b.support().iter().collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << support.len()) {
        let mut exps = b.exponents().to_vec();
        for (t, &i) in support.iter().enumerate() {
            if mask & (1 << t) != 0 {
                exps[i] -= 1;
            }
        }
        if ideal.contains_same(&Monomial::new(exps)) {
            out.push(mask);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_of_simplex_is_acyclic() {
        // the full simplex on 3 vertices including the empty face
        let cells: Vec<u64> = (0..8).collect();
        let h = masked_homology(&cells, FieldSpec::default());
        assert_eq!(h, vec![0, 0, 0, 0]);
    }

    #[test]
    fn hollow_triangle_has_one_loop() {
        let cells = vec![0, 1, 2, 4, 3, 5, 6];
        let h = masked_homology(&cells, FieldSpec::two());
        // reduced: H̃_1 sits at cells of size 2
        assert_eq!(h, vec![0, 0, 1]);
    }

    #[test]
    fn two_points_have_reduced_h0() {
        let h = masked_homology(&[0, 1, 2], FieldSpec::default());
        assert_eq!(h, vec![0, 1]);
    }
}
