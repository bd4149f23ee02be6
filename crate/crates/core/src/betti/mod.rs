//! Exact multigraded Betti numbers of monomial ideals over `GF(p)`.
//!
//! For every element `b` of the lcm lattice the Betti numbers in degree `b`
//! are the homology of a small complex. Two exact routes are available:
//!
//! * the Taylor strand: subsets `S ⊆ G(I)` with `lcm(S) = x^b`, whose
//!   differential drops one generator (kept only when the lcm is unchanged);
//! * the upper Koszul complex `K^b(I)`, with `β_{i,b}(I) = dim H̃_{i-1}(K^b)`.
//!
//! [`BettiMethod::Auto`] picks the Taylor strand unless `b` is divisible by
//! more generators than it has support variables. Forcing either route gives
//! an independent cross-check of the other.

mod chain;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::par::{self, Parallelism};

pub const DEFAULT_GENERATOR_CAP: usize = 20;

/// Largest ground set either route will enumerate for a single multidegree.
const MAX_CELL_BITS: usize = 26;

/// Which module the table describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    /// `β_{i,a}(I)`.
    Ideal,
    /// `β_{i,a}(R/I)`.
    Quotient,
}

impl Convention {
    pub fn label(self) -> &'static str {
        match self {
            Convention::Ideal => "I",
            Convention::Quotient => "R/I",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BettiMethod {
    #[default]
    Auto,
    TaylorStrand,
    KoszulComplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiConfig {
    pub max_gens: usize,
    pub method: BettiMethod,
    pub parallelism: Parallelism,
}

impl Default for BettiConfig {
    fn default() -> Self {
        BettiConfig {
            max_gens: DEFAULT_GENERATOR_CAP,
            method: BettiMethod::Auto,
            parallelism: Parallelism::default(),
        }
    }
}

impl BettiConfig {
    pub fn with_max_gens(mut self, cap: usize) -> Self {
        self.max_gens = cap;
        self
    }

    pub fn with_method(mut self, method: BettiMethod) -> Self {
        self.method = method;
        self
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }
}

fn check_cap(ideal: &MonomialIdeal, cap: usize) -> Result<()> {
    if ideal.len() > cap {
        return Err(Error::Resource {
            what: "generator count",
            cap,
            actual: ideal.len(),
        });
    }
    Ok(())
}

/// The distinct lcms of nonempty subsets of `G(I)`, sorted.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<Vec<Monomial>> {
    lcm_lattice_with_cap(ideal, DEFAULT_GENERATOR_CAP)
}

pub fn lcm_lattice_with_cap(ideal: &MonomialIdeal, cap: usize) -> Result<Vec<Monomial>> {
    check_cap(ideal, cap)?;
    // Closing under joins with single generators reaches every subset lcm.
    let mut seen: BTreeSet<Monomial> = ideal.gens().iter().cloned().collect();
    let mut frontier: Vec<Monomial> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in ideal.gens() {
                let l = x.lcm_same(g);
                if seen.insert(l.clone()) {
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// Nonzero multigraded Betti numbers, keyed by `(i, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    field: FieldSpec,
    convention: Convention,
    entries: BTreeMap<(usize, Monomial), u64>,
}

impl BettiTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn entries(&self) -> &BTreeMap<(usize, Monomial), u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, a: &Monomial) -> u64 {
        self.entries.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    /// `β_{i,j} = Σ_{|a| = j} β_{i,a}`.
    pub fn graded(&self) -> BTreeMap<(usize, u32), u64> {
        let mut out = BTreeMap::new();
        for ((i, a), &b) in &self.entries {
            *out.entry((*i, a.degree())).or_insert(0) += b;
        }
        out
    }

    /// `max { j - i : β_{i,j} ≠ 0 }`, or `None` for an empty table.
    pub fn regularity(&self) -> Option<i64> {
        self.entries
            .keys()
            .map(|(i, a)| a.degree() as i64 - *i as i64)
            .max()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|((i, a), b)| json!({"i": i, "a": a.exponents(), "beta": b}))
            .collect();
        json!({
            "field": self.field.characteristic(),
            "convention": self.convention.label(),
            "entries": entries,
        })
    }

    /// Graded Betti diagram: columns are homological degrees `i`, rows are
    /// `j - i`.
    pub fn render(&self) -> String {
        let graded = self.graded();
        let mut out = String::new();
        let Some(pd) = self.projective_dimension() else {
            out.push_str("(zero table)\n");
            return out;
        };
        let rows: BTreeSet<i64> = graded.keys().map(|&(i, j)| j as i64 - i as i64).collect();
        let cell = |v: u64| if v == 0 { ".".to_string() } else { v.to_string() };
        let width = graded
            .values()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(pd.to_string().len());
        let label_width = rows
            .iter()
            .map(|r| r.to_string().len() + 1)
            .chain(std::iter::once(6))
            .max()
            .unwrap_or(6);
        let _ = write!(out, "{:>label_width$}", "");
        for i in 0..=pd {
            let _ = write!(out, " {i:>width$}");
        }
        out.push('\n');
        let _ = write!(out, "{:>label_width$}", "total:");
        for i in 0..=pd {
            let total: u64 = graded
                .iter()
                .filter(|((k, _), _)| *k == i)
                .map(|(_, v)| v)
                .sum();
            let _ = write!(out, " {:>width$}", cell(total));
        }
        out.push('\n');
        for r in rows {
            let _ = write!(out, "{:>label_width$}", format!("{r}:"));
            for i in 0..=pd {
                let j = r + i as i64;
                let v = if j < 0 {
                    0
                } else {
                    graded.get(&(i, j as u32)).copied().unwrap_or(0)
                };
                let _ = write!(out, " {:>width$}", cell(v));
            }
            out.push('\n');
        }
        out
    }
}

pub fn multigraded_betti(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    convention: Convention,
) -> Result<BettiTable> {
    multigraded_betti_with(ideal, field, convention, &BettiConfig::default())
}

pub fn multigraded_betti_with(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    convention: Convention,
    config: &BettiConfig,
) -> Result<BettiTable> {
    let mut lattice = lcm_lattice_with_cap(ideal, config.max_gens)?;
    let include_empty = convention == Convention::Quotient;
    if include_empty && !ideal.is_unit() {
        // lcm of the empty subset
        lattice.insert(0, Monomial::one(ideal.n()));
    }
    let strands = par::map(&lattice, config.parallelism, |b| {
        strand_homology(ideal, b, include_empty, field, config.method)
    });
    let mut entries = BTreeMap::new();
    for (b, dims) in lattice.iter().zip(strands) {
        for (size, dim) in dims?.into_iter().enumerate() {
            if dim == 0 {
                continue;
            }
            let i = match convention {
                Convention::Quotient => size,
                Convention::Ideal => size - 1,
            };
            entries.insert((i, b.clone()), dim);
        }
    }
    Ok(BettiTable {
        n: ideal.n(),
        field,
        convention,
        entries,
    })
}

/// Homology of the degree-`b` strand, indexed by Taylor cell size `|S|`.
fn strand_homology(
    ideal: &MonomialIdeal,
    b: &Monomial,
    include_empty: bool,
    field: FieldSpec,
    method: BettiMethod,
) -> Result<Vec<u64>> {
    let divisors: Vec<&Monomial> = ideal.gens().iter().filter(|g| g.divides_same(b)).collect();
    let support = b.support().len();
    let use_taylor = b.is_one()
        || match method {
            BettiMethod::TaylorStrand => true,
            BettiMethod::KoszulComplex => false,
            BettiMethod::Auto => divisors.len() <= support,
        };
    let bits = if use_taylor { divisors.len() } else { support };
    if bits > MAX_CELL_BITS {
        return Err(Error::Resource {
            what: "strand ground set",
            cap: MAX_CELL_BITS,
            actual: bits,
        });
    }
    if use_taylor {
        let cells = chain::taylor_cells(&divisors, b, include_empty);
        Ok(chain::masked_homology(&cells, field))
    } else {
        // Koszul face of size k sits at Taylor size k + 1.
        let cells = chain::koszul_cells(ideal, b);
        let dims = chain::masked_homology(&cells, field);
        Ok(std::iter::once(0).chain(dims).collect())
    }
}

/// Graded invariants read off the Betti table of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiSummary {
    /// `β_{i,j}(I)`, keyed by `(i, j)`.
    pub graded: BTreeMap<(usize, u32), u64>,
    pub regularity: i64,
    pub projective_dimension: usize,
    pub equigenerated_degree: Option<u32>,
    /// Equigenerated in degree `d` with `reg(I) = d`.
    pub linear: bool,
}

impl BettiSummary {
    pub fn to_json(&self) -> Value {
        let graded: Vec<Value> = self
            .graded
            .iter()
            .map(|((i, j), b)| json!({"i": i, "j": j, "beta": b}))
            .collect();
        json!({
            "graded": graded,
            "regularity": self.regularity,
            "projective_dimension": self.projective_dimension,
            "equigenerated_degree": self.equigenerated_degree,
            "linear": self.linear,
        })
    }
}

pub fn betti_summary(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiSummary> {
    betti_summary_with(ideal, field, &BettiConfig::default())
}

pub fn betti_summary_with(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    config: &BettiConfig,
) -> Result<BettiSummary> {
    if ideal.is_zero() {
        return Err(Error::domain("the zero ideal has no regularity"));
    }
    let table = multigraded_betti_with(ideal, field, Convention::Ideal, config)?;
    Ok(summarize(ideal, &table))
}

pub fn summarize(ideal: &MonomialIdeal, table: &BettiTable) -> BettiSummary {
    let regularity = table.regularity().expect("nonzero ideal has β_0");
    let d = ideal.equigenerated_degree();
    BettiSummary {
        graded: table.graded(),
        regularity,
        projective_dimension: table.projective_dimension().expect("nonzero ideal has β_0"),
        equigenerated_degree: d,
        linear: d.is_some_and(|d| d as i64 == regularity),
    }
}

/// Whether `I` has a linear resolution; the zero ideal counts as linear.
pub fn has_linear_resolution(ideal: &MonomialIdeal, field: FieldSpec) -> Result<bool> {
    has_linear_resolution_with(ideal, field, &BettiConfig::default())
}

pub fn has_linear_resolution_with(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    config: &BettiConfig,
) -> Result<bool> {
    if ideal.is_zero() {
        return Ok(true);
    }
    if ideal.equigenerated_degree().is_none() {
        return Ok(false);
    }
    Ok(betti_summary_with(ideal, field, config)?.linear)
}

/// `reg(I)`, or `None` for the zero ideal.
pub fn regularity(ideal: &MonomialIdeal, field: FieldSpec, config: &BettiConfig) -> Result<Option<i64>> {
    if ideal.is_zero() {
        return Ok(None);
    }
    Ok(Some(betti_summary_with(ideal, field, config)?.regularity))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|e| m(e))).unwrap()
    }

    #[test]
    fn lattice_examples() {
        let l = lcm_lattice(&ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]])).unwrap();
        assert_eq!(l, vec![m(&[0, 0, 1, 1]), m(&[1, 1, 0, 0]), m(&[1, 1, 1, 1])]);
        let l = lcm_lattice(&ideal(2, &[&[2, 0], &[1, 1]])).unwrap();
        assert_eq!(l, vec![m(&[1, 1]), m(&[2, 0]), m(&[2, 1])]);
    }

    #[test]
    fn lattice_cap() {
        let big = MonomialIdeal::maximal_power(3, 5); // 21 generators
        assert_eq!(
            lcm_lattice(&big).unwrap_err(),
            Error::Resource {
                what: "generator count",
                cap: 20,
                actual: 21
            }
        );
        assert!(lcm_lattice_with_cap(&big, 21).is_ok());
    }

    #[test]
    fn coprime_powers() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        let t = multigraded_betti(&i, FieldSpec::default(), Convention::Ideal).unwrap();
        assert_eq!(t.entries().len(), 3);
        assert_eq!(t.get(0, &m(&[2, 0])), 1);
        assert_eq!(t.get(0, &m(&[0, 2])), 1);
        assert_eq!(t.get(1, &m(&[2, 2])), 1);
        let s = betti_summary(&i, FieldSpec::default()).unwrap();
        assert_eq!(s.regularity, 3);
        assert!(!s.linear);
    }

    #[test]
    fn zero_ideal_tables() {
        let z = MonomialIdeal::zero(3);
        assert!(multigraded_betti(&z, FieldSpec::default(), Convention::Ideal)
            .unwrap()
            .is_empty());
        let q = multigraded_betti(&z, FieldSpec::default(), Convention::Quotient).unwrap();
        assert_eq!(q.entries().len(), 1);
        assert_eq!(q.get(0, &Monomial::one(3)), 1);
        assert!(matches!(betti_summary(&z, FieldSpec::default()), Err(Error::Domain(_))));
        assert!(has_linear_resolution(&z, FieldSpec::default()).unwrap());
    }

    #[test]
    fn unit_ideal_tables() {
        let u = MonomialIdeal::unit(2);
        let t = multigraded_betti(&u, FieldSpec::default(), Convention::Ideal).unwrap();
        assert_eq!(t.get(0, &Monomial::one(2)), 1);
        assert_eq!(t.entries().len(), 1);
        let q = multigraded_betti(&u, FieldSpec::default(), Convention::Quotient).unwrap();
        assert!(q.is_empty());
    }

    #[test]
    fn three_generator_example() {
        let i = ideal(4, &[&[1, 1, 1, 0], &[0, 0, 2, 1], &[0, 0, 1, 2]]);
        let t = multigraded_betti(&i, FieldSpec::default(), Convention::Ideal).unwrap();
        for a in [[0, 0, 2, 2], [1, 1, 2, 1], [1, 1, 1, 2]] {
            assert_eq!(t.get(1, &m(&a)), 1, "{a:?}");
        }
        assert_eq!(t.get(2, &m(&[1, 1, 2, 2])), 1);
        assert_eq!(t.entries().len(), 7);
    }

    #[test]
    fn summaries() {
        let s = betti_summary(&ideal(2, &[&[2, 0], &[1, 1]]), FieldSpec::default()).unwrap();
        assert_eq!(s.graded, BTreeMap::from([((0, 2), 2), ((1, 3), 1)]));
        assert_eq!(s.regularity, 2);
        assert!(s.linear);

        let s = betti_summary(&MonomialIdeal::maximal_power(2, 2), FieldSpec::default()).unwrap();
        assert_eq!(s.graded, BTreeMap::from([((0, 2), 3), ((1, 3), 2)]));
        assert!(s.linear);

        let s = betti_summary(&ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]), FieldSpec::default())
            .unwrap();
        assert_eq!(s.regularity, 3);
        assert_eq!(s.projective_dimension, 1);
        assert!(!s.linear);
    }

    #[test]
    fn routes_agree_on_maximal_power() {
        let i = MonomialIdeal::maximal_power(3, 3);
        let f = FieldSpec::default();
        let taylor = BettiConfig::default().with_method(BettiMethod::TaylorStrand);
        let koszul = BettiConfig::default().with_method(BettiMethod::KoszulComplex);
        let a = multigraded_betti_with(&i, f, Convention::Ideal, &taylor).unwrap();
        let b = multigraded_betti_with(&i, f, Convention::Ideal, &koszul).unwrap();
        assert_eq!(a, b);
        // m^3 in 3 variables: 10, 15, 6
        let g = a.graded();
        assert_eq!(g, BTreeMap::from([((0, 3), 10), ((1, 4), 15), ((2, 5), 6)]));
    }

    #[test]
    fn render_has_macaulay_shape() {
        let t = multigraded_betti(
            &ideal(2, &[&[2, 0], &[0, 2]]),
            FieldSpec::default(),
            Convention::Ideal,
        )
        .unwrap();
        let text = t.render();
        assert!(text.contains("total:"), "{text}");
        assert!(text.contains("2:"), "{text}");
        assert!(text.contains("3:"), "{text}");
    }

    #[test]
    fn json_entries_sorted() {
        let t = multigraded_betti(
            &ideal(2, &[&[2, 0], &[0, 2]]),
            FieldSpec::default(),
            Convention::Ideal,
        )
        .unwrap();
        let v = t.to_json();
        assert_eq!(v["convention"], "I");
        assert_eq!(v["entries"][0]["a"], json!([0, 2]));
        assert_eq!(v["entries"][2]["i"], 1);
    }
}
