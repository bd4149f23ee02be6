//! Monomials, variable sets and monomial ideals.
//!
//! Variables are indexed from 0 internally and printed from 1 (`x1`, `x2`, ...).
//! Every ideal stores its minimal generating set sorted in ascending
//! lexicographic order of exponent vectors, so `x3^2 < x2*x3 < x1^2` when
//! `n = 3`. This "lexicographic order" is the tie-breaking order used by
//! every search in the crate.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial `x^a` over a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The unit monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index {i} out of range for {n} variables");
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    /// The squarefree monomial `x_F`.
    pub fn from_set(n: usize, set: &VariableSet) -> Self {
        let mut exps = vec![0; n];
        for i in set.iter() {
            assert!(i < n, "variable index {i} out of range for {n} variables");
            exps[i] = 1;
        }
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn support(&self) -> VariableSet {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `m(u)`: the largest (0-based) index of a variable dividing `u`.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    fn check_ambient(&self, other: &Monomial) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.divides_same(other))
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        Ok(self.lcm_same(other))
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        Ok(self.zip_with(other, u32::min))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    /// Exact division `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Result<Option<Monomial>> {
        self.check_ambient(other)?;
        if !other.divides_same(self) {
            return Ok(None);
        }
        Ok(Some(self.zip_with(other, |a, b| a - b)))
    }

    /// `[self, v] / v`.
    pub fn lcm_quotient(&self, v: &Monomial) -> Result<Monomial> {
        self.check_ambient(v)?;
        Ok(self.lcm_quotient_same(v))
    }

    /// `self * x_i`.
    pub fn times_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial { exps }
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub(crate) fn divides_same(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub(crate) fn lcm_same(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::max)
    }

    pub(crate) fn lcm_quotient_same(&self, v: &Monomial) -> Monomial {
        self.zip_with(v, |a, b| a.saturating_sub(b))
    }

    pub(crate) fn mul_same(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a + b)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All degree-`d` monomials in `n` variables, ascending lexicographic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == n {
            cur[pos] = left;
            out.push(Monomial::new(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(n, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

/// A subset of the variable indices `{0, ..., n-1}`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableSet(BTreeSet<usize>);

impl VariableSet {
    pub fn new() -> Self {
        VariableSet(BTreeSet::new())
    }

    /// All of `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    /// Build from 1-based indices, as used in the text and JSON formats.
    pub fn from_one_based(indices: &[usize]) -> Self {
        indices.iter().map(|&i| i - 1).collect()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        self.0.insert(i)
    }

    pub fn remove(&mut self, i: usize) -> bool {
        self.0.remove(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn largest(&self) -> Option<usize> {
        self.0.iter().next_back().copied()
    }

    pub fn union(&self, other: &VariableSet) -> VariableSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn intersection(&self, other: &VariableSet) -> VariableSet {
        self.0.intersection(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &VariableSet) -> VariableSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn is_subset(&self, other: &VariableSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersects(&self, other: &VariableSet) -> bool {
        self.0.intersection(&other.0).next().is_some()
    }

    /// All `k`-element subsets, in lexicographic order.
    pub fn subsets_of_size(&self, k: usize) -> Vec<VariableSet> {
        let items: Vec<usize> = self.iter().collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(
            items: &[usize],
            start: usize,
            k: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<VariableSet>,
        ) {
            if cur.len() == k {
                out.push(cur.iter().copied().collect());
                return;
            }
            for j in start..items.len() {
                if items.len() - j < k - cur.len() {
                    break;
                }
                cur.push(items[j]);
                rec(items, j + 1, k, cur, out);
                cur.pop();
            }
        }
        rec(&items, 0, k, &mut cur, &mut out);
        out
    }
}

impl FromIterator<usize> for VariableSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VariableSet(iter.into_iter().collect())
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A monomial ideal, stored as its minimal generating set `G(I)`.
///
/// The zero ideal has no generators; the unit ideal has the single
/// generator `1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// The ideal generated by `monomials`, reduced to its minimal generators.
    pub fn new(n: usize, monomials: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        minimal_generators(n, monomials)
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    /// `(x_i : i in vars)`.
    pub fn variables(n: usize, vars: &VariableSet) -> Self {
        let mut gens: Vec<Monomial> = vars.iter().map(|i| Monomial::var(n, i)).collect();
        gens.sort();
        MonomialIdeal { n, gens }
    }

    /// `m^d`, all monomials of degree `d`.
    pub fn maximal_power(n: usize, d: u32) -> Self {
        MonomialIdeal {
            n,
            gens: monomials_of_degree(n, d),
        }
    }

    /// Caller guarantees `gens` is minimal; it is sorted here.
    pub(crate) fn from_minimal(n: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        debug_assert!(is_antichain(&gens));
        MonomialIdeal { n, gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// `Some(d)` when every generator has degree `d`; `None` for the zero
    /// ideal or mixed degrees.
    pub fn equigenerated_degree(&self) -> Option<u32> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub(crate) fn check_monomial(&self, w: &Monomial) -> Result<()> {
        if w.n() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: w.n(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_ideal(&self, other: &MonomialIdeal) -> Result<()> {
        if other.n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Membership: `w` is in `I` iff some generator divides it.
    pub fn contains(&self, w: &Monomial) -> Result<bool> {
        self.check_monomial(w)?;
        Ok(self.contains_same(w))
    }

    pub(crate) fn contains_same(&self, w: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_same(w))
    }

    /// Ideal containment `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_ideal(other)?;
        Ok(other.gens.iter().all(|g| self.contains_same(g)))
    }

    pub fn is_generator(&self, u: &Monomial) -> bool {
        self.gens.binary_search(u).is_ok()
    }

    /// `I∖u`: the ideal generated by `G(I) ∖ {u}`.
    pub fn without(&self, u: &Monomial) -> Result<MonomialIdeal> {
        self.check_monomial(u)?;
        let pos = self
            .gens
            .binary_search(u)
            .map_err(|_| Error::domain(format!("{u} is not a minimal generator")))?;
        let mut gens = self.gens.clone();
        gens.remove(pos);
        Ok(MonomialIdeal { n: self.n, gens })
    }

    /// `I + (extra)`.
    pub fn with(&self, extra: impl IntoIterator<Item = Monomial>) -> Result<MonomialIdeal> {
        minimal_generators(self.n, self.gens.iter().cloned().chain(extra))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ideal(other)?;
        self.with(other.gens.iter().cloned())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn is_antichain(gens: &[Monomial]) -> bool {
    gens.iter().enumerate().all(|(i, a)| {
        gens.iter()
            .enumerate()
            .all(|(j, b)| i == j || !a.divides_same(b))
    })
}

/// Result of [`monomial_lattice_ops`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeOps {
    pub lcm: Monomial,
    pub gcd: Monomial,
    /// `u` divides `v`.
    pub divides: bool,
    /// `[u, v] / v`.
    pub lcm_quotient: Monomial,
}

pub fn monomial_lattice_ops(u: &Monomial, v: &Monomial) -> Result<LatticeOps> {
    Ok(LatticeOps {
        lcm: u.lcm(v)?,
        gcd: u.gcd(v)?,
        divides: u.divides(v)?,
        lcm_quotient: u.lcm_quotient(v)?,
    })
}

/// The inclusion-minimal subset of `monomials`.
pub fn minimal_generators(
    n: usize,
    monomials: impl IntoIterator<Item = Monomial>,
) -> Result<MonomialIdeal> {
    let mut all: Vec<Monomial> = Vec::new();
    for m in monomials {
        if m.n() != n {
            return Err(Error::Dimension {
                expected: n,
                found: m.n(),
            });
        }
        all.push(m);
    }
    Ok(MonomialIdeal {
        n,
        gens: minimalize(all),
    })
}

pub(crate) fn minimalize(mut all: Vec<Monomial>) -> Vec<Monomial> {
    // Sorting by degree first means a divisor is always seen before its multiples.
    all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    for m in all {
        if !kept.iter().any(|k| k.divides_same(&m)) {
            kept.push(m);
        }
    }
    kept.sort();
    kept
}

/// `I : v`, generated by `[u, v] / v` over `u ∈ G(I)`.
pub fn colon(ideal: &MonomialIdeal, v: &Monomial) -> Result<MonomialIdeal> {
    ideal.check_monomial(v)?;
    Ok(colon_same(ideal, v))
}

pub(crate) fn colon_same(ideal: &MonomialIdeal, v: &Monomial) -> MonomialIdeal {
    MonomialIdeal {
        n: ideal.n,
        gens: minimalize(ideal.gens.iter().map(|u| u.lcm_quotient_same(v)).collect()),
    }
}

/// `I : J`, the intersection of `I : v` over `v ∈ G(J)`.
pub fn colon_ideal(ideal: &MonomialIdeal, by: &MonomialIdeal) -> Result<MonomialIdeal> {
    ideal.check_ideal(by)?;
    let mut gens = by.gens.iter();
    let first = gens
        .next()
        .ok_or_else(|| Error::domain("colon by the zero ideal is undefined"))?;
    let mut acc = colon_same(ideal, first);
    for v in gens {
        acc = intersect(&acc, &colon_same(ideal, v))?;
    }
    Ok(acc)
}

/// `I ∩ J`, generated by pairwise lcms.
pub fn intersect(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.check_ideal(b)?;
    let lcms = a
        .gens
        .iter()
        .flat_map(|u| b.gens.iter().map(move |v| u.lcm_same(v)))
        .collect();
    Ok(MonomialIdeal {
        n: a.n,
        gens: minimalize(lcms),
    })
}

/// A polarized ideal together with the origin of each new variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    /// `back_map[k] = (i, c)`: new variable `k` is copy `c` (0-based) of `x_i`.
    pub back_map: Vec<(usize, usize)>,
}

impl Polarization {
    /// Substitute `x_{i,c} -> x_i`, recovering the original ideal.
    pub fn specialize(&self, original_n: usize) -> Result<MonomialIdeal> {
        let gens = self.ideal.gens.iter().map(|g| {
            let mut exps = vec![0; original_n];
            for (k, &e) in g.exponents().iter().enumerate() {
                exps[self.back_map[k].0] += e;
            }
            Monomial::new(exps)
        });
        minimal_generators(original_n, gens)
    }
}

/// Polarization: `x_i^a` becomes `x_{i,1} ⋯ x_{i,a}`.
pub fn polarize(ideal: &MonomialIdeal) -> Polarization {
    let n = ideal.n;
    let max_exp: Vec<u32> = (0..n)
        .map(|i| ideal.gens.iter().map(|g| g.exponent(i)).max().unwrap_or(0))
        .collect();
    let mut offset = Vec::with_capacity(n);
    let mut back_map = Vec::new();
    for (i, &m) in max_exp.iter().enumerate() {
        offset.push(back_map.len());
        back_map.extend((0..m as usize).map(|c| (i, c)));
    }
    let total = back_map.len();
    let gens = ideal
        .gens
        .iter()
        .map(|g| {
            let mut exps = vec![0; total];
            for (i, &e) in g.exponents().iter().enumerate() {
                for c in 0..e as usize {
                    exps[offset[i] + c] = 1;
                }
            }
            Monomial::new(exps)
        })
        .collect();
    Polarization {
        ideal: MonomialIdeal::from_minimal(total, gens),
        back_map,
    }
}

/// Outcome of [`is_generated_by_variables`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VariableTest {
    /// The ideal is `(x_i : i in set)`; the zero ideal gives the empty set.
    Variables(VariableSet),
    /// The first minimal generator that is not a variable.
    NotVariables { witness: Monomial },
}

impl VariableTest {
    pub fn is_variables(&self) -> bool {
        matches!(self, VariableTest::Variables(_))
    }

    pub fn support(&self) -> Option<&VariableSet> {
        match self {
            VariableTest::Variables(s) => Some(s),
            VariableTest::NotVariables { .. } => None,
        }
    }
}

pub fn is_generated_by_variables(ideal: &MonomialIdeal) -> VariableTest {
    let mut set = VariableSet::new();
    for g in &ideal.gens {
        if g.degree() != 1 {
            return VariableTest::NotVariables { witness: g.clone() };
        }
        set.insert(g.max_var().expect("degree-one monomial has a variable"));
    }
    VariableTest::Variables(set)
}

/// Whether `(gens) : w` is generated by variables, without building the colon.
///
/// The colon is generated by the quotients `q = [g, w]/w`; it is variable
/// generated iff every quotient is divisible by a quotient of degree one.
pub(crate) fn colon_is_linear<'a>(
    gens: impl Iterator<Item = &'a Monomial> + Clone,
    w: &Monomial,
) -> bool {
    let n = w.n();
    let mut linear = vec![false; n];
    for g in gens.clone() {
        let mut deg = 0;
        let mut last = 0;
        for i in 0..n {
            let q = g.exponent(i).saturating_sub(w.exponent(i));
            deg += q;
            if q > 0 {
                last = i;
            }
        }
        if deg == 0 {
            return false;
        }
        if deg == 1 {
            linear[last] = true;
        }
    }
    gens.into_iter().all(|g| {
        (0..n).any(|i| linear[i] && g.exponent(i) > w.exponent(i))
    })
}
