//! Uniform clutters, their circuit ideals and simplicial maximal subcircuits.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::betti::{multigraded_betti_with, BettiConfig, Convention};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linearity::{squarefree_shift_delta, BettiDelta};
use crate::monomial::{colon_same, is_generated_by_variables, Monomial, MonomialIdeal, VariableSet};
use crate::par::{self, Parallelism};

/// A `d`-uniform clutter on `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clutter {
    n: usize,
    d: usize,
    circuits: BTreeSet<VariableSet>,
}

impl Clutter {
    pub fn new(n: usize, d: usize, circuits: impl IntoIterator<Item = VariableSet>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for c in circuits {
            if c.len() != d {
                return Err(Error::domain(format!("circuit {c} does not have {d} elements")));
            }
            if c.largest().is_some_and(|i| i >= n) {
                return Err(Error::domain(format!("circuit {c} has a vertex outside [{n}]")));
            }
            set.insert(c);
        }
        Ok(Clutter { n, d, circuits: set })
    }

    /// All `d`-subsets of `[n]`.
    pub fn complete(n: usize, d: usize) -> Self {
        Clutter {
            n,
            d,
            circuits: VariableSet::full(n).subsets_of_size(d).into_iter().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn circuits(&self) -> &BTreeSet<VariableSet> {
        &self.circuits
    }

    pub fn contains(&self, circuit: &VariableSet) -> bool {
        self.circuits.contains(circuit)
    }

    /// The `d`-subsets of `[n]` that are not circuits.
    pub fn complement(&self) -> Clutter {
        Clutter {
            n: self.n,
            d: self.d,
            circuits: VariableSet::full(self.n)
                .subsets_of_size(self.d)
                .into_iter()
                .filter(|c| !self.circuits.contains(c))
                .collect(),
        }
    }

    /// The clutter without the given circuits.
    pub fn without(&self, removed: &[VariableSet]) -> Clutter {
        Clutter {
            n: self.n,
            d: self.d,
            circuits: self
                .circuits
                .iter()
                .filter(|c| !removed.contains(c))
                .cloned()
                .collect(),
        }
    }

    fn check_subcircuit(&self, e: &VariableSet) -> Result<()> {
        if e.len() + 1 != self.d || e.largest().is_some_and(|i| i >= self.n) {
            return Err(Error::domain(format!(
                "{e} is not a {}-subset of [{}]",
                self.d as i64 - 1,
                self.n
            )));
        }
        Ok(())
    }

    /// `N[e] = e ∪ { i : e ∪ {i} is a circuit }`.
    pub fn closed_neighborhood(&self, e: &VariableSet) -> Result<VariableSet> {
        self.check_subcircuit(e)?;
        let mut out = e.clone();
        for i in 0..self.n {
            if !e.contains(i) {
                let mut f = e.clone();
                f.insert(i);
                if self.circuits.contains(&f) {
                    out.insert(i);
                }
            }
        }
        Ok(out)
    }

    /// Whether `e` is a simplicial maximal subcircuit: `|N[e]| >= d` and every
    /// `d`-subset of `N[e]` is a circuit.
    pub fn simp_detect(&self, e: &VariableSet) -> Result<bool> {
        let nb = self.closed_neighborhood(e)?;
        Ok(nb.len() >= self.d
            && nb
                .subsets_of_size(self.d)
                .iter()
                .all(|c| self.circuits.contains(c)))
    }

    /// All simplicial maximal subcircuits, in lexicographic order of subsets.
    pub fn simp_set(&self) -> Vec<VariableSet> {
        self.simp_set_with(Parallelism::default())
    }

    pub fn simp_set_with(&self, mode: Parallelism) -> Vec<VariableSet> {
        if self.d == 0 {
            return Vec::new();
        }
        let candidates = VariableSet::full(self.n).subsets_of_size(self.d - 1);
        let keep = par::map(&candidates, mode, |e| self.simp_detect(e).expect("size checked"));
        candidates
            .into_iter()
            .zip(keep)
            .filter_map(|(e, k)| k.then_some(e))
            .collect()
    }

    /// `{"n": 4, "d": 2, "circuits": [[1,2],[1,3]]}` with 1-based vertices.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "d": self.d,
            "circuits": self.circuits.iter().map(VariableSet::to_one_based).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| {
            v[name]
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::parse(0, 0, format!("missing or invalid `{name}`")))
        };
        let n = field("n")?;
        let d = field("d")?;
        let circuits: Vec<Vec<usize>> = serde_json::from_value(v["circuits"].clone())
            .map_err(|e| Error::parse(0, 0, format!("`circuits`: {e}")))?;
        let mut sets = Vec::new();
        for c in circuits {
            if let Some(&i) = c.iter().find(|&&i| i == 0 || i > n) {
                return Err(Error::parse(0, 0, format!("vertex {i} out of range 1..={n}")));
            }
            sets.push(VariableSet::from_one_based(&c));
        }
        Clutter::new(n, d, sets)
    }
}

/// `I(C) = (x_F : F ∈ C)`.
pub fn circuit_ideal(clutter: &Clutter) -> MonomialIdeal {
    MonomialIdeal::new(
        clutter.n,
        clutter.circuits.iter().map(|c| Monomial::from_set(clutter.n, c)),
    )
    .expect("circuits live in [n]")
}

/// Predicted and measured change in the Betti numbers of the complement
/// ideal when the circuits `removed` (each `e ∪ {i}`) leave `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClutterDelta {
    pub predicted: BettiDelta,
    pub measured: BettiDelta,
}

/// Compare `β(I(D̄)) - β(I(C̄))` for `D = C ∖ A` against the shift formula
/// with `X = { i : e ∪ {i} ∈ A }` and `Y` the support of `I(C̄) : x_e`.
pub fn corollary_last_delta(
    clutter: &Clutter,
    e: &VariableSet,
    removed: &[VariableSet],
    field: FieldSpec,
) -> Result<ClutterDelta> {
    corollary_last_delta_with(clutter, e, removed, field, &BettiConfig::default())
}

pub fn corollary_last_delta_with(
    clutter: &Clutter,
    e: &VariableSet,
    removed: &[VariableSet],
    field: FieldSpec,
    config: &BettiConfig,
) -> Result<ClutterDelta> {
    if !clutter.simp_detect(e)? {
        return Err(Error::domain(format!("{e} is not a simplicial maximal subcircuit")));
    }
    if removed.is_empty() {
        return Err(Error::domain("no circuits to remove"));
    }
    let mut added = VariableSet::new();
    for f in removed {
        let extra = f.difference(e);
        if !clutter.contains(f) || !e.is_subset(f) || extra.len() != 1 {
            return Err(Error::domain(format!("{f} is not a circuit containing {e}")));
        }
        added.insert(extra.iter().next().expect("one element"));
    }

    let n = clutter.n;
    let before = circuit_ideal(&clutter.complement());
    let after = circuit_ideal(&clutter.without(removed).complement());
    let u = Monomial::from_set(n, e);
    let colon = is_generated_by_variables(&colon_same(&before, &u));
    let Some(colon_support) = colon.support().cloned() else {
        return Err(Error::Invariant(format!(
            "{e} is simplicial but {before} : {u} is not generated by variables"
        )));
    };

    let predicted = squarefree_shift_delta(&u, &added, &colon_support);
    let d = clutter.d as u32;
    let b0 = multigraded_betti_with(&before, field, Convention::Ideal, config)?;
    let b1 = multigraded_betti_with(&after, field, Convention::Ideal, config)?;
    let measured = BettiDelta::measured(&b0, &b1, d);
    Ok(ClutterDelta { predicted, measured })
}
