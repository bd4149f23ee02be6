//! Randomized exploration of the linearity hierarchy
//! linear quotients ⇒ linear resolution (every field) ⇒ quasi-linear.
//!
//! Violations of the hierarchy are errors. Strict separations and
//! disagreements between fields are recorded as findings.

use rand::Rng;
use serde_json::{json, Value};

use crate::betti::{summarize, multigraded_betti_with, BettiConfig, Convention};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::format::ideal_to_json;
use crate::linearity::{has_linear_quotients_with_cap, is_quasi_linear};
use crate::monomial::{polarize, MonomialIdeal};
use crate::par::{self, Parallelism};
use crate::random::{random_ideal_with, rng_from_seed, sample_seed, Bounds, RandomKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExploreConfig {
    pub seed: u64,
    /// Samples per kind.
    pub samples: usize,
    pub kinds: Vec<RandomKind>,
    pub max_n: usize,
    pub max_d: u32,
    pub max_gens: usize,
    pub fields: Vec<FieldSpec>,
    pub betti: BettiConfig,
}

impl Default for ExploreConfig {
    fn default() -> Self {
        ExploreConfig {
            seed: 0,
            samples: 500,
            kinds: RandomKind::ALL.to_vec(),
            max_n: 5,
            max_d: 4,
            max_gens: 8,
            fields: vec![FieldSpec::two(), FieldSpec::default()],
            betti: BettiConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FindingClass {
    QuasiLinearNotLinear,
    LinearWithoutLinearQuotients,
    CharacteristicDependent,
    PolarizationDisagreement,
}

impl FindingClass {
    pub fn tag(self) -> &'static str {
        match self {
            FindingClass::QuasiLinearNotLinear => "quasi-linear, no linear resolution",
            FindingClass::LinearWithoutLinearQuotients => "linear resolution, no linear quotients",
            FindingClass::CharacteristicDependent => "char-dependent linearity",
            FindingClass::PolarizationDisagreement => {
                "degree-3 polarization/quasi-linearity disagreement"
            }
        }
    }
}

/// Everything evaluated on one sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleOutcome {
    pub kind: RandomKind,
    pub index: usize,
    pub ideal: MonomialIdeal,
    pub linear_quotients: bool,
    /// `(characteristic, has linear resolution)` per configured field.
    pub linear: Vec<(u32, bool)>,
    pub quasi_linear: bool,
    /// Quasi-linearity of the polarization, probed in degree three.
    pub polarized_quasi_linear: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorerFinding {
    pub class: FindingClass,
    pub kind: RandomKind,
    pub index: usize,
    pub ideal: MonomialIdeal,
    pub evidence: Value,
}

impl ExplorerFinding {
    pub fn to_json(&self) -> Value {
        json!({
            "class": self.class.tag(),
            "kind": self.kind.name(),
            "index": self.index,
            "ideal": ideal_to_json(&self.ideal),
            "ideal_text": self.ideal.to_string(),
            "evidence": self.evidence,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skip {
    pub kind: RandomKind,
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExploreReport {
    pub outcomes: Vec<SampleOutcome>,
    pub findings: Vec<ExplorerFinding>,
    pub skipped: Vec<Skip>,
}

impl ExploreReport {
    pub fn count(&self, class: FindingClass) -> usize {
        self.findings.iter().filter(|f| f.class == class).count()
    }

    /// One JSON object per line: findings, then skips.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for f in &self.findings {
            out.push_str(&f.to_json().to_string());
            out.push('\n');
        }
        for s in &self.skipped {
            let v = json!({"skipped": s.kind.name(), "index": s.index, "reason": s.reason});
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.outcomes.len(),
            "findings": self.findings.iter().map(ExplorerFinding::to_json).collect::<Vec<_>>(),
            "skipped": self.skipped.iter()
                .map(|s| json!({"kind": s.kind.name(), "index": s.index, "reason": s.reason}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Draw the bounds and ideal of sample `index` of `kind`.
pub fn sample_ideal(config: &ExploreConfig, kind: RandomKind, index: usize) -> Result<MonomialIdeal> {
    let stream = RandomKind::ALL.iter().position(|&k| k == kind).expect("listed") as u64;
    let mut rng = rng_from_seed(sample_seed(config.seed, stream, index as u64));
    let n = rng.gen_range(2..=config.max_n.max(2));
    let top = if kind == RandomKind::SquarefreeEquigenerated {
        config.max_d.min(n as u32)
    } else {
        config.max_d
    };
    let d = rng.gen_range(2..=top.max(2));
    let bounds = Bounds {
        n,
        d,
        max_gens: config.max_gens,
    };
    random_ideal_with(kind, bounds, &mut rng)
}

/// Evaluate the hierarchy on one ideal. Fails with [`Error::Invariant`] when
/// an implication breaks.
pub fn evaluate(
    ideal: &MonomialIdeal,
    fields: &[FieldSpec],
    config: &BettiConfig,
) -> Result<(bool, Vec<(u32, bool)>, bool, Option<bool>)> {
    let lq = has_linear_quotients_with_cap(ideal, config.max_gens)?.verdict;
    let mut linear = Vec::new();
    for &f in fields {
        let table = multigraded_betti_with(ideal, f, Convention::Ideal, config)?;
        linear.push((f.characteristic(), summarize(ideal, &table).linear));
    }
    let ql = is_quasi_linear(ideal).verdict;

    if lq && linear.iter().any(|(_, l)| !l) {
        return Err(Error::Invariant(format!(
            "{ideal} has linear quotients but not a linear resolution: {linear:?}"
        )));
    }
    if linear.iter().any(|(_, l)| *l) && !ql {
        return Err(Error::Invariant(format!(
            "{ideal} has a linear resolution but is not quasi-linear"
        )));
    }
    let polarized = match ideal.equigenerated_degree() {
        Some(2) | Some(3) => Some(is_quasi_linear(&polarize(ideal).ideal).verdict),
        _ => None,
    };
    if ideal.equigenerated_degree() == Some(2) && polarized != Some(ql) {
        return Err(Error::Invariant(format!(
            "quadratic {ideal} and its polarization disagree on quasi-linearity"
        )));
    }
    Ok((lq, linear, ql, polarized))
}

fn findings_for(outcome: &SampleOutcome) -> Vec<ExplorerFinding> {
    let any_linear = outcome.linear.iter().any(|(_, l)| *l);
    let all_linear = outcome.linear.iter().all(|(_, l)| *l);
    let evidence = json!({
        "linear_quotients": outcome.linear_quotients,
        "linear": outcome.linear.iter().map(|(p, l)| json!({"field": p, "linear": l})).collect::<Vec<_>>(),
        "quasi_linear": outcome.quasi_linear,
        "polarized_quasi_linear": outcome.polarized_quasi_linear,
    });
    let mut classes = Vec::new();
    if outcome.quasi_linear && !any_linear {
        classes.push(FindingClass::QuasiLinearNotLinear);
    }
    if all_linear && !outcome.linear_quotients {
        classes.push(FindingClass::LinearWithoutLinearQuotients);
    }
    if any_linear && !all_linear {
        classes.push(FindingClass::CharacteristicDependent);
    }
    if outcome.ideal.equigenerated_degree() == Some(3)
        && outcome.polarized_quasi_linear.is_some_and(|p| p != outcome.quasi_linear)
    {
        classes.push(FindingClass::PolarizationDisagreement);
    }
    classes
        .into_iter()
        .map(|class| ExplorerFinding {
            class,
            kind: outcome.kind,
            index: outcome.index,
            ideal: outcome.ideal.clone(),
            evidence: evidence.clone(),
        })
        .collect()
}

/// Sample every configured kind and evaluate the hierarchy. Output order
/// is by kind, then sample index, whatever the parallelism.
pub fn explore(config: &ExploreConfig) -> Result<ExploreReport> {
    let jobs: Vec<(RandomKind, usize)> = config
        .kinds
        .iter()
        .flat_map(|&k| (0..config.samples).map(move |i| (k, i)))
        .collect();
    let results = par::map(&jobs, config.betti.parallelism, |&(kind, index)| {
        // samples are already spread over workers
        let inner = config.betti.with_parallelism(Parallelism::Sequential);
        let ideal = sample_ideal(config, kind, index)?;
        match evaluate(&ideal, &config.fields, &inner) {
            Ok((linear_quotients, linear, quasi_linear, polarized_quasi_linear)) => {
                Ok(Ok(SampleOutcome {
                    kind,
                    index,
                    ideal,
                    linear_quotients,
                    linear,
                    quasi_linear,
                    polarized_quasi_linear,
                }))
            }
            Err(e) if e.is_resource() => Ok(Err(Skip {
                kind,
                index,
                reason: e.to_string(),
            })),
            Err(e) => Err(e),
        }
    });
    let mut report = ExploreReport::default();
    for r in results {
        match r? {
            Ok(outcome) => {
                report.findings.extend(findings_for(&outcome));
                report.outcomes.push(outcome);
            }
            Err(skip) => report.skipped.push(skip),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExploreConfig {
        ExploreConfig {
            samples: 20,
            max_n: 4,
            max_d: 3,
            max_gens: 6,
            ..ExploreConfig::default()
        }
    }

    #[test]
    fn replay_is_deterministic() {
        let a = explore(&small()).unwrap();
        let b = explore(&small()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.outcomes.len() + a.skipped.len(), 80);
    }

    #[test]
    fn sequential_matches_parallel() {
        let mut seq = small();
        seq.betti = seq.betti.with_parallelism(Parallelism::Sequential);
        let mut parallel = small();
        parallel.betti = parallel.betti.with_parallelism(Parallelism::Parallel);
        assert_eq!(explore(&seq).unwrap(), explore(&parallel).unwrap());
    }

    #[test]
    fn findings_replay() {
        let config = small();
        let report = explore(&config).unwrap();
        for f in &report.findings {
            let (lq, linear, ql, _) = evaluate(&f.ideal, &config.fields, &config.betti).unwrap();
            assert_eq!(f.evidence["linear_quotients"], lq);
            assert_eq!(f.evidence["quasi_linear"], ql);
            assert_eq!(f.evidence["linear"].as_array().unwrap().len(), linear.len());
        }
    }
}
