//! Independent oracles and sample generators shared by the integration tests.
//!
//! The oracles work on plain exponent vectors and never call into the
//! library's colon, ordering or homology code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::Rng;

use monolin::betti::{multigraded_betti_with, BettiConfig, Convention};
use monolin::clutter::Clutter;
use monolin::complex::SimplicialComplex;
use monolin::monomial::monomials_of_degree;
use monolin::{polarize, FieldSpec, Monomial, MonomialIdeal, VariableSet};

pub type Exps = Vec<u32>;

pub fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

pub fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(n, gens.iter().map(|e| mono(e))).unwrap()
}

pub fn vs(one_based: &[usize]) -> VariableSet {
    VariableSet::from_one_based(one_based)
}

pub fn exps(i: &MonomialIdeal) -> Vec<Exps> {
    i.gens().iter().map(|g| g.exponents().to_vec()).collect()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// Inclusion-minimal elements, sorted.
pub fn minimal(mut all: Vec<Exps>) -> Vec<Exps> {
    all.sort();
    all.dedup();
    let keep: Vec<Exps> = all
        .iter()
        .filter(|a| !all.iter().any(|b| b != *a && divides(b, a)))
        .cloned()
        .collect();
    keep
}

/// Minimal generators of `(gens) : v`, from the quotients `[u, v] / v`.
pub fn colon_oracle(gens: &[Exps], v: &[u32]) -> Vec<Exps> {
    minimal(
        gens.iter()
            .map(|u| u.iter().zip(v).map(|(a, b)| a.saturating_sub(*b)).collect())
            .collect(),
    )
}

pub fn colon_is_linear_oracle(gens: &[Exps], v: &[u32]) -> bool {
    colon_oracle(gens, v).iter().all(|g| degree(g) == 1)
}

pub fn quasi_linear_oracle(i: &MonomialIdeal) -> bool {
    let g = exps(i);
    (0..g.len()).all(|k| {
        let rest: Vec<Exps> = g.iter().enumerate().filter(|(t, _)| *t != k).map(|(_, x)| x.clone()).collect();
        colon_is_linear_oracle(&rest, &g[k])
    })
}

/// Linear quotients by dynamic programming over generator subsets: `S` is
/// reachable when some `u ∈ S` has `S ∖ u` reachable and `(S ∖ u) : u`
/// variable generated.
pub fn linear_quotients_oracle(i: &MonomialIdeal) -> bool {
    let g = exps(i);
    let m = g.len();
    assert!(m <= 16, "oracle is exponential in the generator count");
    let mut ok = vec![false; 1 << m];
    ok[0] = true;
    for mask in 1usize..1 << m {
        ok[mask] = (0..m).any(|k| {
            mask & (1 << k) != 0 && {
                let prev = mask & !(1 << k);
                ok[prev] && {
                    let sub: Vec<Exps> = (0..m).filter(|t| prev & (1 << t) != 0).map(|t| g[t].clone()).collect();
                    colon_is_linear_oracle(&sub, &g[k])
                }
            }
        });
    }
    ok[(1 << m) - 1]
}

/// `Σ_{S ⊆ G(I)} (-1)^{|S|} x^{lcm S}`, the numerator of the Hilbert series
/// of `R/I`, with zero coefficients dropped.
pub fn hilbert_numerator(i: &MonomialIdeal) -> BTreeMap<Exps, i64> {
    let n = i.n();
    let mut acc: HashMap<Exps, i64> = HashMap::from([(vec![0; n], 1)]);
    for g in exps(i) {
        let snapshot: Vec<(Exps, i64)> = acc.iter().map(|(k, v)| (k.clone(), *v)).collect();
        for (l, c) in snapshot {
            let j: Exps = l.iter().zip(&g).map(|(a, b)| *a.max(b)).collect();
            *acc.entry(j).or_insert(0) -= c;
        }
    }
    acc.into_iter().filter(|(_, v)| *v != 0).collect()
}

/// Engine self-consistency on one ideal: the shift between the `I` and
/// `R/I` conventions, the alternating-sum identity per multidegree and
/// invariance of the graded table under polarization.
pub fn engine_consistency(i: &MonomialIdeal, field: FieldSpec, config: &BettiConfig) -> Result<(), String> {
    let bi = multigraded_betti_with(i, field, Convention::Ideal, config).map_err(|e| e.to_string())?;
    let bq = multigraded_betti_with(i, field, Convention::Quotient, config).map_err(|e| e.to_string())?;
    if i.is_unit() {
        // R/(1) = 0
        return if bq.is_empty() { Ok(()) } else { Err(format!("R/(1) has a nonzero Betti table")) };
    }
    for ((s, a), v) in bi.entries() {
        if bq.get(s + 1, a) != *v {
            return Err(format!("{i}: beta_{s},{a}(I) = {v} but beta_{},{a}(R/I) = {}", s + 1, bq.get(s + 1, a)));
        }
    }
    for ((s, a), v) in bq.entries() {
        if *s > 0 && bi.get(s - 1, a) != *v {
            return Err(format!("{i}: R/I entry ({s}, {a}) has no I counterpart"));
        }
    }
    let mut euler: BTreeMap<Exps, i64> = BTreeMap::new();
    for ((s, a), v) in bq.entries() {
        let sign = if s % 2 == 0 { 1 } else { -1 };
        *euler.entry(a.exponents().to_vec()).or_insert(0) += sign * *v as i64;
    }
    euler.retain(|_, v| *v != 0);
    if euler != hilbert_numerator(i) {
        return Err(format!("{i}: alternating Betti sums differ from the Hilbert numerator"));
    }
    if !i.is_zero() && !i.is_unit() {
        let p = polarize(i).ideal;
        let bp = multigraded_betti_with(&p, field, Convention::Ideal, config).map_err(|e| e.to_string())?;
        if bp.graded() != bi.graded() {
            return Err(format!("{i}: polarization changed the graded Betti table"));
        }
    }
    Ok(())
}

/// Every ideal handed to the engine by a suite, for the self-consistency pass.
pub static TOUCHED: Mutex<BTreeSet<MonomialIdeal>> = Mutex::new(BTreeSet::new());

pub fn touch(i: &MonomialIdeal) {
    TOUCHED.lock().unwrap().insert(i.clone());
}

/// Random subset of the degree-2 monomials in `n` variables containing at
/// least one square.
pub fn random_nonsquarefree_quadratic<R: Rng>(rng: &mut R, n: usize, max_gens: usize) -> MonomialIdeal {
    let pool = monomials_of_degree(n, 2);
    loop {
        let k = rng.gen_range(1..=max_gens.min(pool.len()));
        let gens: Vec<Monomial> = pool.choose_multiple(rng, k).cloned().collect();
        if gens.iter().any(|g| !g.is_squarefree()) {
            return MonomialIdeal::new(n, gens).unwrap();
        }
    }
}

/// Edge ideal of the graph on `[n]` whose edges are the set bits of `mask`
/// over the pairs `(a, b)`, `a < b`, in lexicographic order.
pub fn graph_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

pub fn edge_ideal(n: usize, edges: &[(usize, usize)]) -> MonomialIdeal {
    MonomialIdeal::new(
        n,
        edges.iter().map(|&(a, b)| {
            let mut e = vec![0; n];
            e[a] = 1;
            e[b] = 1;
            Monomial::new(e)
        }),
    )
    .unwrap()
}

/// Induced 4-cycle in the complement of the graph, by trying every 4-set
/// in each of its three cyclic orders.
pub fn complement_c4_oracle(n: usize, edges: &[(usize, usize)]) -> bool {
    let adj = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let co = |a: usize, b: usize| !adj(a, b);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for [p, q, r, s] in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        if co(p, q) && co(q, r) && co(r, s) && co(s, p) && !co(p, r) && !co(q, s) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Random complex on `[n]` generated by one to `max_facets` nonempty faces.
/// Faces of size `n` are rare so most samples have several facets.
pub fn random_complex<R: Rng>(rng: &mut R, n: usize, max_facets: usize) -> SimplicialComplex {
    let k = rng.gen_range(1..=max_facets);
    let faces: Vec<VariableSet> = (0..k)
        .map(|_| {
            let size = if n > 1 && rng.gen_bool(0.9) { rng.gen_range(1..n) } else { rng.gen_range(1..=n) };
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(rng);
            v[..size].iter().copied().collect()
        })
        .collect();
    SimplicialComplex::new(n, faces).unwrap()
}

/// Random `d`-uniform clutter on `[n]`, each `d`-subset kept with the given
/// probability.
pub fn random_clutter<R: Rng>(rng: &mut R, n: usize, d: usize, keep: f64) -> Clutter {
    let circuits: Vec<VariableSet> = VariableSet::full(n)
        .subsets_of_size(d)
        .into_iter()
        .filter(|_| rng.gen_bool(keep))
        .collect();
    Clutter::new(n, d, circuits).unwrap()
}

/// Faces of `facet` contained in some facet of `others`, maximal ones only.
pub fn shelling_oracle(others: &[VariableSet], facet: &VariableSet) -> bool {
    let elems: Vec<usize> = facet.iter().collect();
    let mut faces = Vec::new();
    for mask in 0u32..1 << elems.len() {
        let f: VariableSet = (0..elems.len()).filter(|t| mask & (1 << t) != 0).map(|t| elems[t]).collect();
        if others.iter().any(|g| f.is_subset(g)) {
            faces.push(f);
        }
    }
    let maximal: Vec<&VariableSet> = faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g != *f && f.is_subset(g)))
        .collect();
    !maximal.is_empty() && maximal.iter().all(|f| f.len() + 1 == facet.len())
}
