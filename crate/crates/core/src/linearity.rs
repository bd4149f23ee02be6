//! Linearity predicates: quasi-linearity, strong linearity, linear-over
//! orderings, linear quotients, critical linear ideals, strongly linear
//! chains and the Betti deltas of one-step extensions.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde_json::{json, Value};

use crate::betti::{self, BettiConfig, BettiTable};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::format;
use crate::monomial::{
    colon_is_linear, colon_same, is_generated_by_variables, Monomial, MonomialIdeal,
    VariableSet, VariableTest,
};

/// Largest number of generators the ordering searches will handle by default.
pub const DEFAULT_SEARCH_CAP: usize = 20;

/// Default depth limit for [`strongly_linear_over_search`].
pub const DEFAULT_CHAIN_DEPTH: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiLinearReport {
    pub verdict: bool,
    /// `(u, w)`: `w` is a minimal generator of `(I∖u) : u` of degree at least two.
    pub witnesses: Vec<(Monomial, Monomial)>,
}

impl QuasiLinearReport {
    pub fn to_json(&self) -> Value {
        json!({
            "quasi_linear": self.verdict,
            "witnesses": self.witnesses.iter()
                .map(|(u, w)| json!({"generator": u.to_string(), "colon_generator": w.to_string()}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Whether `(I∖u) : u` is generated by variables for every `u ∈ G(I)`.
pub fn is_quasi_linear(ideal: &MonomialIdeal) -> QuasiLinearReport {
    let mut witnesses = Vec::new();
    for u in ideal.gens() {
        let rest = ideal.without(u).expect("u is a generator");
        for w in colon_same(&rest, u).gens() {
            if w.degree() != 1 {
                witnesses.push((u.clone(), w.clone()));
            }
        }
    }
    QuasiLinearReport {
        verdict: witnesses.is_empty(),
        witnesses,
    }
}

/// Verdict of [`is_strongly_linear`], with each characterization evaluated
/// on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongLinearity {
    pub verdict: bool,
    /// Generating degree `d` of the ideal.
    pub degree: u32,
    /// `B` with `I : u = (x_i : i ∈ B)`, when strongly linear.
    pub colon_support: Option<VariableSet>,
    /// (colon is variable generated, support condition, lcm membership condition)
    pub conditions: [bool; 3],
    /// A minimal generator of `I : u` that is not a variable.
    pub witness: Option<Monomial>,
}

fn extension_degree(ideal: &MonomialIdeal, u: &Monomial) -> Result<u32> {
    ideal.check_monomial(u)?;
    let d = if ideal.is_zero() {
        u.degree() + 1
    } else {
        ideal
            .equigenerated_degree()
            .ok_or_else(|| Error::domain(format!("{ideal} is not generated in a single degree")))?
    };
    if u.degree() + 1 != d {
        return Err(Error::domain(format!(
            "{u} has degree {}, expected {}",
            u.degree(),
            d as i64 - 1
        )));
    }
    Ok(d)
}

/// Whether `u` (of degree `d - 1`) is strongly linear over the ideal `I`
/// generated in degree `d`. The zero ideal is treated as generated in
/// degree `deg(u) + 1`.
pub fn is_strongly_linear(u: &Monomial, ideal: &MonomialIdeal) -> Result<StrongLinearity> {
    let d = extension_degree(ideal, u)?;
    let n = ideal.n();

    let test = is_generated_by_variables(&colon_same(ideal, u));
    let by_colon = test.is_variables();

    let available: VariableSet = (0..n)
        .filter(|&i| ideal.is_generator(&u.times_var(i)))
        .collect();
    let by_support = ideal
        .gens()
        .iter()
        .all(|v| v.lcm_quotient_same(u).support().intersects(&available));
    let by_lcm = ideal.gens().iter().all(|v| {
        let l = u.lcm_same(v);
        available.iter().any(|i| u.times_var(i).divides_same(&l))
    });

    if by_colon != by_support || by_colon != by_lcm {
        return Err(Error::Invariant(format!(
            "strong linearity characterizations disagree for {u} over {ideal}: \
             colon={by_colon}, support={by_support}, lcm={by_lcm}"
        )));
    }
    let (colon_support, witness) = match test {
        VariableTest::Variables(b) => (Some(b), None),
        VariableTest::NotVariables { witness } => (None, Some(witness)),
    };
    Ok(StrongLinearity {
        verdict: by_colon,
        degree: d,
        colon_support,
        conditions: [by_colon, by_support, by_lcm],
        witness,
    })
}

fn check_vars(n: usize, vars: &VariableSet) -> Result<()> {
    match vars.largest() {
        Some(i) if i >= n => Err(Error::domain(format!(
            "variable index {} out of range for {n} variables",
            i + 1
        ))),
        _ => Ok(()),
    }
}

/// `I + u·(x_i : i ∈ A)` for `u` strongly linear over `I`.
pub fn one_step_extension(
    ideal: &MonomialIdeal,
    u: &Monomial,
    vars: &VariableSet,
) -> Result<MonomialIdeal> {
    check_vars(ideal.n(), vars)?;
    let sl = is_strongly_linear(u, ideal)?;
    if !sl.verdict {
        let w = sl.witness.expect("failure carries a witness");
        return Err(Error::domain(format!(
            "{u} is not strongly linear over {ideal}: {w} is a minimal generator of the colon"
        )));
    }
    ideal.with(vars.iter().map(|i| u.times_var(i)))
}

/// Outcome of an ordering search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOver {
    pub verdict: bool,
    /// Generators of `G(I) ∖ G(J)` in an order whose successive colons are
    /// variable generated.
    pub order: Option<Vec<Monomial>>,
}

impl LinearOver {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict,
            "order": self.order.as_ref().map(|o| o.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
        })
    }
}

/// Whether `I` is linear over `J`.
pub fn is_linear_over(ideal: &MonomialIdeal, base: &MonomialIdeal) -> Result<LinearOver> {
    is_linear_over_with_cap(ideal, base, DEFAULT_SEARCH_CAP)
}

pub fn is_linear_over_with_cap(
    ideal: &MonomialIdeal,
    base: &MonomialIdeal,
    cap: usize,
) -> Result<LinearOver> {
    ideal.check_ideal(base)?;
    if !ideal.contains_ideal(base)? {
        return Err(Error::domain(format!("{base} is not contained in {ideal}")));
    }
    if !base.gens().iter().all(|g| ideal.is_generator(g)) {
        return Ok(LinearOver {
            verdict: false,
            order: None,
        });
    }
    let rest: Vec<Monomial> = ideal
        .gens()
        .iter()
        .filter(|g| !base.is_generator(g))
        .cloned()
        .collect();
    let limit = cap.min(64);
    if rest.len() > limit {
        return Err(Error::Resource {
            what: "generators to order",
            cap: limit,
            actual: rest.len(),
        });
    }
    let full = if rest.len() == 64 {
        u64::MAX
    } else {
        (1u64 << rest.len()) - 1
    };
    let mut failed = HashSet::new();
    let mut order = Vec::with_capacity(rest.len());
    let found = order_search(base.gens(), &rest, 0, full, &mut failed, &mut order);
    Ok(LinearOver {
        verdict: found,
        order: found.then(|| order.into_iter().map(|k| rest[k].clone()).collect()),
    })
}

/// Depth-first search over subsets of `rest`; candidates in lexicographic
/// order so the first witness found is the lexicographically least one.
fn order_search(
    base: &[Monomial],
    rest: &[Monomial],
    mask: u64,
    full: u64,
    failed: &mut HashSet<u64>,
    order: &mut Vec<usize>,
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
        let current = base.iter().chain(
            rest.iter()
                .enumerate()
                .filter(move |(t, _)| mask & (1 << t) != 0)
                .map(|(_, g)| g),
        );
        if !colon_is_linear(current, &rest[k]) {
            continue;
        }
        order.push(k);
        if order_search(base, rest, mask | (1 << k), full, failed, order) {
            return true;
        }
        order.pop();
    }
    failed.insert(mask);
    false
}

/// Linear quotients: linear over the zero ideal.
pub fn has_linear_quotients(ideal: &MonomialIdeal) -> Result<LinearOver> {
    is_linear_over(ideal, &MonomialIdeal::zero(ideal.n()))
}

pub fn has_linear_quotients_with_cap(ideal: &MonomialIdeal, cap: usize) -> Result<LinearOver> {
    is_linear_over_with_cap(ideal, &MonomialIdeal::zero(ideal.n()), cap)
}

/// Critical linearity: `I` is linear but no `I∖u` is. The zero ideal is
/// critical; the zero ideal also counts as having a linear resolution, so
/// principal ideals are not critical.
pub fn is_critical_linear(ideal: &MonomialIdeal, field: FieldSpec) -> Result<bool> {
    is_critical_linear_with(ideal, field, &BettiConfig::default())
}

pub fn is_critical_linear_with(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    config: &BettiConfig,
) -> Result<bool> {
    if ideal.is_zero() {
        return Ok(true);
    }
    let Some(d) = ideal.equigenerated_degree() else {
        return Ok(false);
    };
    let linear = betti::has_linear_resolution_with(ideal, field, config)?;
    let reg = betti::regularity(ideal, field, config)?;

    let mut by_deletion = linear;
    let mut by_regularity = reg == Some(d as i64);
    for u in ideal.gens() {
        let rest = ideal.without(u)?;
        if betti::has_linear_resolution_with(&rest, field, config)? {
            by_deletion = false;
        }
        if betti::regularity(&rest, field, config)? != Some(d as i64 + 1) {
            by_regularity = false;
        }
    }
    if by_deletion != by_regularity {
        return Err(Error::Invariant(format!(
            "criticality of {ideal}: deletion test {by_deletion}, regularity test {by_regularity}"
        )));
    }
    Ok(by_deletion)
}

/// A critical linear ideal `J` with `I` linear over `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalBase {
    pub base: MonomialIdeal,
    /// Deleted generators in reverse deletion order; a linear-over witness.
    pub order: Vec<Monomial>,
}

/// Peel generators off `I` while a linear resolution survives. At each
/// step the lexicographically first deletable generator goes, so the base
/// found depends on that order.
pub fn find_critical_base(ideal: &MonomialIdeal, field: FieldSpec) -> Result<CriticalBase> {
    find_critical_base_with(ideal, field, &BettiConfig::default())
}

pub fn find_critical_base_with(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    config: &BettiConfig,
) -> Result<CriticalBase> {
    if !betti::has_linear_resolution_with(ideal, field, config)? {
        return Err(Error::domain(format!("{ideal} has no linear resolution")));
    }
    let mut current = ideal.clone();
    let mut deleted = Vec::new();
    'peel: loop {
        for u in current.gens() {
            let rest = current.without(u)?;
            if betti::has_linear_resolution_with(&rest, field, config)? {
                deleted.push(u.clone());
                current = rest;
                continue 'peel;
            }
        }
        break;
    }
    deleted.reverse();
    Ok(CriticalBase {
        base: current,
        order: deleted,
    })
}

/// Change in multigraded Betti numbers of `I` under a one-step extension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiDelta {
    /// Nonzero differences `β_{s,a}(J) - β_{s,a}(I)`.
    pub entries: BTreeMap<(usize, Monomial), i64>,
    /// Nonzero graded differences on the linear strand, `s ↦ Σ_{|a| = d+s}`.
    pub graded: BTreeMap<usize, i64>,
}

impl BettiDelta {
    /// `after - before`, with the linear strand taken at degree `d`.
    /// Both tables must use the same convention.
    pub fn measured(before: &BettiTable, after: &BettiTable, d: u32) -> Self {
        let mut entries: BTreeMap<(usize, Monomial), i64> = BTreeMap::new();
        for (k, &v) in after.entries() {
            *entries.entry(k.clone()).or_insert(0) += v as i64;
        }
        for (k, &v) in before.entries() {
            *entries.entry(k.clone()).or_insert(0) -= v as i64;
        }
        entries.retain(|_, v| *v != 0);
        let mut graded = BTreeMap::new();
        for ((s, a), &v) in &entries {
            if a.degree() == d + *s as u32 {
                *graded.entry(*s).or_insert(0) += v;
            }
        }
        graded.retain(|_, v: &mut i64| *v != 0);
        BettiDelta { entries, graded }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "entries": self.entries.iter()
                .map(|((s, a), v)| json!({"i": s, "a": a.exponents(), "delta": v}))
                .collect::<Vec<_>>(),
            "graded": self.graded.iter()
                .map(|(s, v)| json!({"i": s, "delta": v}))
                .collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for t in 0..k {
        acc = acc * (n - t) as i64 / (t + 1) as i64;
    }
    acc
}

/// Entries `+1` at `(s, mdeg(u) + e_T)` for every `(s+1)`-subset `T` of
/// `A ∪ B` not contained in `B`; graded `C(|A∪B|, s+1) - C(|B|, s+1)`.
pub(crate) fn squarefree_shift_delta(
    u: &Monomial,
    added: &VariableSet,
    colon_support: &VariableSet,
) -> BettiDelta {
    let all = added.union(colon_support);
    let mut entries = BTreeMap::new();
    let mut graded = BTreeMap::new();
    for s in 0..all.len() {
        for t in all.subsets_of_size(s + 1) {
            if t.is_subset(colon_support) {
                continue;
            }
            let a = u.mul_same(&Monomial::from_set(u.n(), &t));
            entries.insert((s, a), 1);
        }
        let g = binomial(all.len(), s + 1) - binomial(colon_support.len(), s + 1);
        if g != 0 {
            graded.insert(s, g);
        }
    }
    BettiDelta { entries, graded }
}

/// The Betti delta of `I ⊆ I + u·(x_i : i ∈ A)` predicted from the colon
/// support `B` of `I : u`.
pub fn predicted_betti_delta(
    ideal: &MonomialIdeal,
    u: &Monomial,
    vars: &VariableSet,
) -> Result<BettiDelta> {
    check_vars(ideal.n(), vars)?;
    let sl = is_strongly_linear(u, ideal)?;
    let Some(b) = sl.colon_support else {
        return Err(Error::domain(format!("{u} is not strongly linear over {ideal}")));
    };
    Ok(squarefree_shift_delta(u, vars, &b))
}

/// One extension step `I ↦ I + u·(x_i : i ∈ vars)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainStep {
    pub u: Monomial,
    pub vars: VariableSet,
}

impl ChainStep {
    pub fn to_json(&self) -> Value {
        json!({"u": self.u.exponents(), "A": self.vars.to_one_based()})
    }
}

/// Replay of a strongly linear chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReplay {
    /// One flag per step; steps after the first failure are not applied.
    pub verified: Vec<bool>,
    pub first_failure: Option<usize>,
    /// The ideal after each applied step.
    pub intermediates: Vec<MonomialIdeal>,
    pub final_ideal: MonomialIdeal,
}

/// Replay `steps` from `base`, checking that each `u` is strongly linear
/// over the ideal built so far.
pub fn strongly_linear_chain(
    base: &MonomialIdeal,
    d: u32,
    steps: &[ChainStep],
) -> Result<ChainReplay> {
    if !base.is_zero() && base.equigenerated_degree() != Some(d) {
        return Err(Error::domain(format!("{base} is not generated in degree {d}")));
    }
    let mut current = base.clone();
    let mut verified = vec![false; steps.len()];
    let mut intermediates = Vec::new();
    let mut first_failure = None;
    for (k, step) in steps.iter().enumerate() {
        current.check_monomial(&step.u)?;
        check_vars(current.n(), &step.vars)?;
        let ok = step.u.degree() + 1 == d
            && is_strongly_linear(&step.u, &current)?.verdict;
        if !ok {
            first_failure = Some(k);
            break;
        }
        current = current.with(step.vars.iter().map(|i| step.u.times_var(i)))?;
        verified[k] = true;
        intermediates.push(current.clone());
    }
    Ok(ChainReplay {
        verified,
        first_failure,
        intermediates,
        final_ideal: current,
    })
}

/// Breadth-first search for a strongly linear chain from `J` to `I`.
///
/// Candidates are the degree-`(d-1)` divisors of generators of `I`; a step
/// may add any nonempty set of the generators `u·x_i ∈ G(I)` still missing.
/// Returns the shortest chain within `depth` steps, or `None`.
pub fn strongly_linear_over_search(
    ideal: &MonomialIdeal,
    base: &MonomialIdeal,
    depth: usize,
) -> Result<Option<Vec<ChainStep>>> {
    ideal.check_ideal(base)?;
    if !base.gens().iter().all(|g| ideal.is_generator(g)) {
        return Err(Error::domain(format!(
            "G({base}) is not contained in G({ideal})"
        )));
    }
    if ideal == base {
        return Ok(Some(Vec::new()));
    }
    let d = ideal
        .equigenerated_degree()
        .ok_or_else(|| Error::domain(format!("{ideal} is not generated in a single degree")))?;
    let rest: Vec<Monomial> = ideal
        .gens()
        .iter()
        .filter(|g| !base.is_generator(g))
        .cloned()
        .collect();
    if rest.len() > 63 {
        return Err(Error::Resource {
            what: "generators to add",
            cap: 63,
            actual: rest.len(),
        });
    }
    let position: HashMap<&Monomial, usize> = rest.iter().enumerate().map(|(k, g)| (g, k)).collect();
    let full = (1u64 << rest.len()) - 1;

    let mut candidates: Vec<Monomial> = ideal
        .gens()
        .iter()
        .flat_map(|g| {
            (0..g.n()).filter(|&i| g.exponent(i) > 0).map(move |i| {
                let mut e = g.exponents().to_vec();
                e[i] -= 1;
                Monomial::new(e)
            })
        })
        .collect();
    candidates.sort();
    candidates.dedup();
    debug_assert!(candidates.iter().all(|c| c.degree() + 1 == d));

    let mut parent: HashMap<u64, (u64, ChainStep)> = HashMap::new();
    let mut queue = VecDeque::from([(0u64, 0usize)]);
    while let Some((mask, dist)) = queue.pop_front() {
        if dist == depth {
            continue;
        }
        let current: Vec<&Monomial> = base
            .gens()
            .iter()
            .chain(rest.iter().enumerate().filter(|(t, _)| mask & (1 << t) != 0).map(|(_, g)| g))
            .collect();
        for u in &candidates {
            let avail: Vec<(usize, usize)> = (0..ideal.n())
                .filter_map(|i| position.get(&u.times_var(i)).map(|&k| (i, k)))
                .filter(|&(_, k)| mask & (1 << k) == 0)
                .collect();
            if avail.is_empty() || !colon_is_linear(current.iter().copied(), u) {
                continue;
            }
            for pick in 1u64..(1 << avail.len()) {
                let mut next = mask;
                let mut vars = VariableSet::new();
                for (t, &(i, k)) in avail.iter().enumerate() {
                    if pick & (1 << t) != 0 {
                        next |= 1 << k;
                        vars.insert(i);
                    }
                }
                if next == mask || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next, (mask, ChainStep { u: u.clone(), vars }));
                if next == full {
                    let mut steps = Vec::new();
                    let mut at = next;
                    while at != 0 {
                        let (prev, step) = parent[&at].clone();
                        steps.push(step);
                        at = prev;
                    }
                    steps.reverse();
                    return Ok(Some(steps));
                }
                queue.push_back((next, dist + 1));
            }
        }
    }
    Ok(None)
}

/// A chain file: `{"d": 3, "base": <ideal JSON>, "steps": [{"u": [...], "A": [...]}]}`.
/// Variable indices in `A` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFile {
    pub d: u32,
    pub base: MonomialIdeal,
    pub steps: Vec<ChainStep>,
}

impl ChainFile {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::parse(0, 0, msg.to_string());
        let d = v["d"].as_u64().ok_or_else(|| bad("missing or invalid `d`"))? as u32;
        let base = format::ideal_from_json_value(&v["base"])?;
        let n = base.n();
        let mut steps = Vec::new();
        for (k, s) in v["steps"]
            .as_array()
            .ok_or_else(|| bad("missing `steps` array"))?
            .iter()
            .enumerate()
        {
            let u: Vec<u32> = serde_json::from_value(s["u"].clone())
                .map_err(|e| bad(&format!("step {k}: `u`: {e}")))?;
            if u.len() != n {
                return Err(bad(&format!("step {k}: `u` has {} exponents, expected {n}", u.len())));
            }
            let vars: Vec<usize> = serde_json::from_value(s["A"].clone())
                .map_err(|e| bad(&format!("step {k}: `A`: {e}")))?;
            if let Some(&i) = vars.iter().find(|&&i| i == 0 || i > n) {
                return Err(bad(&format!("step {k}: variable index {i} out of range 1..={n}")));
            }
            steps.push(ChainStep {
                u: Monomial::new(u),
                vars: VariableSet::from_one_based(&vars),
            });
        }
        Ok(ChainFile { d, base, steps })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "base": format::ideal_to_json(&self.base),
            "steps": self.steps.iter().map(ChainStep::to_json).collect::<Vec<_>>(),
        })
    }
}
