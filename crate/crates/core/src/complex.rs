//! Simplicial complexes in facet presentation: shelling moves, Alexander
//! duality, Stanley–Reisner ideals and a Cohen–Macaulay test.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::betti::{multigraded_betti_with, BettiConfig, Convention};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};

/// Largest vertex count for which non-faces are enumerated.
pub const MAX_SR_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VariableSet>,
}

impl SimplicialComplex {
    /// The complex generated by `faces`; faces contained in others are dropped.
    pub fn new(n: usize, faces: impl IntoIterator<Item = VariableSet>) -> Result<Self> {
        let mut faces: Vec<VariableSet> = faces.into_iter().collect();
        if let Some(f) = faces.iter().find(|f| f.largest().is_some_and(|i| i >= n)) {
            return Err(Error::domain(format!("face {f} has a vertex outside [{n}]")));
        }
        faces.sort();
        faces.dedup();
        let facets: Vec<VariableSet> = faces
            .iter()
            .filter(|f| !faces.iter().any(|g| g != *f && f.is_subset(g)))
            .cloned()
            .collect();
        Ok(SimplicialComplex { n, facets })
    }

    /// The full simplex on `[n]`.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VariableSet::full(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VariableSet] {
        &self.facets
    }

    /// `max |F| - 1`; `None` for the void complex with no faces.
    pub fn dimension(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.len() as i64 - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn contains_face(&self, face: &VariableSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(f))
    }

    /// The complex generated by all facets except `facet`.
    pub fn without_facet(&self, facet: &VariableSet) -> Result<Self> {
        if !self.facets.contains(facet) {
            return Err(Error::domain(format!("{facet} is not a facet")));
        }
        Ok(SimplicialComplex {
            n: self.n,
            facets: self.facets.iter().filter(|f| *f != facet).cloned().collect(),
        })
    }

    /// Minimal non-faces, by increasing size.
    pub fn minimal_nonfaces(&self) -> Result<Vec<VariableSet>> {
        if self.n > MAX_SR_VERTICES {
            return Err(Error::Resource {
                what: "vertex count",
                cap: MAX_SR_VERTICES,
                actual: self.n,
            });
        }
        let facet_masks: Vec<u32> = self.facets.iter().map(|f| mask_of(f)).collect();
        let is_face = |m: u32| facet_masks.iter().any(|&f| m & !f == 0);
        let mut masks: Vec<u32> = (0..1u32 << self.n)
            .filter(|&m| {
                !is_face(m) && {
                    let mut bits = m;
                    let mut all_faces = true;
                    while bits != 0 {
                        let low = bits & bits.wrapping_neg();
                        bits &= bits - 1;
                        all_faces &= is_face(m & !low);
                    }
                    all_faces
                }
            })
            .collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        Ok(masks.into_iter().map(|m| set_of(m, self.n)).collect())
    }

    /// `Δ∨ = { [n] ∖ F : F ∉ Δ }`, with facets the complements of minimal non-faces.
    pub fn alexander_dual(&self) -> Result<Self> {
        let full = VariableSet::full(self.n);
        let faces: Vec<VariableSet> = self
            .minimal_nonfaces()?
            .iter()
            .map(|f| full.difference(f))
            .collect();
        SimplicialComplex::new(self.n, faces)
    }

    /// `{"n": 4, "facets": [[1,2],[2,3]]}` with 1-based vertices.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "facets": self.facets.iter().map(VariableSet::to_one_based).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v["n"]
            .as_u64()
            .ok_or_else(|| Error::parse(0, 0, "missing or invalid `n`"))? as usize;
        let facets: Vec<Vec<usize>> = serde_json::from_value(v["facets"].clone())
            .map_err(|e| Error::parse(0, 0, format!("`facets`: {e}")))?;
        let mut faces = Vec::new();
        for f in facets {
            if let Some(&i) = f.iter().find(|&&i| i == 0 || i > n) {
                return Err(Error::parse(0, 0, format!("vertex {i} out of range 1..={n}")));
            }
            faces.push(VariableSet::from_one_based(&f));
        }
        SimplicialComplex::new(n, faces)
    }
}

fn mask_of(set: &VariableSet) -> u32 {
    set.iter().fold(0, |m, i| m | (1 << i))
}

fn set_of(mask: u32, n: usize) -> VariableSet {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

/// `(x_{[n]∖F} : F a facet)`. The full simplex gives the unit ideal and the
/// void complex the zero ideal.
pub fn alexander_dual_ideal(complex: &SimplicialComplex) -> MonomialIdeal {
    let full = VariableSet::full(complex.n);
    let gens = complex
        .facets
        .iter()
        .map(|f| Monomial::from_set(complex.n, &full.difference(f)));
    MonomialIdeal::new(complex.n, gens).expect("complements live in [n]")
}

/// `I_Δ`, generated by the squarefree monomials of the minimal non-faces.
pub fn stanley_reisner_ideal(complex: &SimplicialComplex) -> Result<MonomialIdeal> {
    let gens = complex
        .minimal_nonfaces()?
        .into_iter()
        .map(|f| Monomial::from_set(complex.n, &f));
    MonomialIdeal::new(complex.n, gens)
}

/// Whether the faces of `facet` lying in some facet of `others` form a pure
/// complex of dimension `dim(facet) - 1`.
fn attaches_purely(others: &[VariableSet], facet: &VariableSet) -> bool {
    if others.is_empty() {
        return false;
    }
    let target = facet.len() - 1;
    let meets: Vec<VariableSet> = others.iter().map(|g| facet.intersection(g)).collect();
    let big: Vec<&VariableSet> = meets.iter().filter(|m| m.len() == target).collect();
    meets
        .iter()
        .all(|m| m.len() == target || big.iter().any(|b| m.is_subset(b)))
}

/// Whether `⟨F⟩ ∩ ⟨facets ∖ F⟩` is pure of dimension `dim F - 1`.
pub fn is_shelling_move(complex: &SimplicialComplex, facet: &VariableSet) -> Result<bool> {
    if !complex.facets.contains(facet) {
        return Err(Error::domain(format!("{facet} is not a facet")));
    }
    if complex.facets.len() < 2 {
        return Err(Error::domain("a shelling move needs at least two facets"));
    }
    let others: Vec<VariableSet> = complex.facets.iter().filter(|f| *f != facet).cloned().collect();
    Ok(attaches_purely(&others, facet))
}

/// An order on the facets of `Δ` not in `Γ` such that each is a shelling
/// move onto the complex built so far; `None` when no order works. With
/// `Γ` void this decides shellability.
pub fn shelled_over_search(
    complex: &SimplicialComplex,
    base: &SimplicialComplex,
) -> Result<Option<Vec<VariableSet>>> {
    if base.n != complex.n || !base.facets.iter().all(|f| complex.facets.contains(f)) {
        return Err(Error::domain("the base facets are not facets of the complex"));
    }
    let rest: Vec<VariableSet> = complex
        .facets
        .iter()
        .filter(|f| !base.facets.contains(f))
        .cloned()
        .collect();
    if rest.len() > 63 {
        return Err(Error::Resource {
            what: "facets to order",
            cap: 63,
            actual: rest.len(),
        });
    }
    let full = (1u64 << rest.len()) - 1;
    let mut built = base.facets.clone();
    let mut order = Vec::new();
    let mut failed = HashSet::new();
    let found = shell_search(&rest, 0, full, &mut built, &mut order, &mut failed);
    Ok(found.then(|| order.into_iter().map(|k| rest[k].clone()).collect()))
}

fn shell_search(
    rest: &[VariableSet],
    mask: u64,
    full: u64,
    built: &mut Vec<VariableSet>,
    order: &mut Vec<usize>,
    failed: &mut HashSet<u64>,
) -> bool {
    if mask == full {
        return true;
    }
    if failed.contains(&mask) {
        return false;
    }
    for k in 0..rest.len() {
        if mask & (1 << k) != 0 {
            continue;
        }
        if !built.is_empty() && !attaches_purely(built, &rest[k]) {
            continue;
        }
        built.push(rest[k].clone());
        order.push(k);
        if shell_search(rest, mask | (1 << k), full, built, order, failed) {
            return true;
        }
        built.pop();
        order.pop();
    }
    failed.insert(mask);
    false
}

pub fn is_shellable(complex: &SimplicialComplex) -> Result<bool> {
    let void = SimplicialComplex::new(complex.n, [])?;
    Ok(shelled_over_search(complex, &void)?.is_some())
}

/// `depth K[Δ] = dim Δ + 1`, with the depth read off `pd(R/I_Δ)`.
pub fn is_cohen_macaulay(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    is_cohen_macaulay_with(complex, field, &BettiConfig::default())
}

pub fn is_cohen_macaulay_with(
    complex: &SimplicialComplex,
    field: FieldSpec,
    config: &BettiConfig,
) -> Result<bool> {
    let Some(dim) = complex.dimension() else {
        return Err(Error::domain("the void complex has no Stanley–Reisner ring"));
    };
    let sr = stanley_reisner_ideal(complex)?;
    let table = multigraded_betti_with(&sr, field, Convention::Quotient, config)?;
    let pd = table.projective_dimension().unwrap_or(0) as i64;
    Ok(complex.n as i64 - pd == dim + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(n, facets.iter().map(|f| VariableSet::from_one_based(f))).unwrap()
    }

    fn vs(f: &[usize]) -> VariableSet {
        VariableSet::from_one_based(f)
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|e| Monomial::new(e.to_vec()))).unwrap()
    }

    #[test]
    fn dual_ideals() {
        assert_eq!(alexander_dual_ideal(&cx(3, &[&[1, 2], &[2, 3]])), ideal(3, &[&[0, 0, 1], &[1, 0, 0]]));
        assert!(alexander_dual_ideal(&SimplicialComplex::simplex(3)).is_unit());
        assert_eq!(
            alexander_dual_ideal(&cx(4, &[&[1, 2], &[3, 4]])),
            ideal(4, &[&[0, 0, 1, 1], &[1, 1, 0, 0]])
        );
    }

    #[test]
    fn shelling_moves() {
        assert!(is_shelling_move(&cx(3, &[&[1, 2], &[2, 3]]), &vs(&[2, 3])).unwrap());
        assert!(!is_shelling_move(&cx(4, &[&[1, 2], &[3, 4]]), &vs(&[3, 4])).unwrap());
        assert!(is_shelling_move(&cx(3, &[&[1, 2]]), &vs(&[1, 2])).is_err());
        assert!(is_shelling_move(&cx(3, &[&[1, 2], &[2, 3]]), &vs(&[1, 3])).is_err());
        // isolated points attach along the empty face
        assert!(is_shelling_move(&cx(2, &[&[1], &[2]]), &vs(&[2])).unwrap());
    }

    #[test]
    fn shelled_over() {
        let d = cx(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        assert!(shelled_over_search(&d, &cx(4, &[&[1, 2]])).unwrap().is_some());
        assert_eq!(shelled_over_search(&d, &d).unwrap(), Some(vec![]));
        let two = cx(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(shelled_over_search(&two, &cx(4, &[&[1, 2]])).unwrap(), None);
        assert!(shelled_over_search(&cx(4, &[&[1, 2]]), &two).is_err());
        assert!(is_shellable(&d).unwrap());
        assert!(!is_shellable(&two).unwrap());
    }

    #[test]
    fn stanley_reisner_and_duality() {
        let hollow = cx(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(stanley_reisner_ideal(&hollow).unwrap(), ideal(3, &[&[1, 1, 1]]));
        let dual = hollow.alexander_dual().unwrap();
        assert_eq!(dual, cx(3, &[&[]]));
        assert_eq!(dual.dimension(), Some(-1));
        let two = cx(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(two.alexander_dual().unwrap().alexander_dual().unwrap(), two);
    }

    #[test]
    fn cohen_macaulay_examples() {
        let f = FieldSpec::default();
        assert!(is_cohen_macaulay(&cx(3, &[&[1, 2], &[2, 3], &[1, 3]]), f).unwrap());
        assert!(!is_cohen_macaulay(&cx(4, &[&[1, 2], &[3, 4]]), f).unwrap());
        assert!(is_cohen_macaulay(&SimplicialComplex::simplex(3), f).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let d = cx(4, &[&[1, 2], &[2, 3]]);
        assert_eq!(SimplicialComplex::from_json(&d.to_json()).unwrap(), d);
        assert!(SimplicialComplex::from_json(&json!({"n": 2, "facets": [[3]]})).is_err());
    }
}
