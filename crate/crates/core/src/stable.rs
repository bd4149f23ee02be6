//! Stable monomial ideals and the chain of special monomials from a stable
//! ideal up to `𝔪^d`.
//!
//! For a monomial `u`, `m(u)` is the largest index of a variable dividing
//! `u`. Indices here are 0-based; `m(1)` is `None`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linearity::{is_strongly_linear, ChainStep};
use crate::monomial::{colon_same, monomials_of_degree, Monomial, MonomialIdeal, VariableSet};

/// `u · x_i / x_{m(u)}`.
pub fn exchange(u: &Monomial, i: usize) -> Option<Monomial> {
    let m = u.max_var()?;
    let mut e = u.exponents().to_vec();
    e[m] -= 1;
    e[i] += 1;
    Some(Monomial::new(e))
}

/// First `(u, i)` with `u ∈ G(I)`, `i < m(u)` and `u x_i / x_{m(u)} ∉ I`.
pub fn stability_witness(ideal: &MonomialIdeal) -> Option<(Monomial, usize)> {
    for u in ideal.gens() {
        let Some(m) = u.max_var() else { continue };
        for i in 0..m {
            let w = exchange(u, i).expect("u is not 1");
            if !ideal.contains_same(&w) {
                return Some((u.clone(), i));
            }
        }
    }
    None
}

pub fn is_stable(ideal: &MonomialIdeal) -> bool {
    stability_witness(ideal).is_none()
}

/// Length of the initial segment `x_1, …, x_k` of variables in `I : v`.
fn initial_segment(colon: &MonomialIdeal) -> usize {
    (0..colon.n())
        .take_while(|&i| colon.contains_same(&Monomial::var(colon.n(), i)))
        .count()
}

fn is_special(ideal: &MonomialIdeal, v: &Monomial) -> bool {
    let k = initial_segment(&colon_same(ideal, v));
    // m(v) - 1 in 1-based terms is the 0-based index of the last variable
    let needed = v.max_var().unwrap_or(0);
    k >= needed && (0..ideal.n()).any(|i| !ideal.contains_same(&v.times_var(i)))
}

fn check_stable_equigenerated(ideal: &MonomialIdeal) -> Result<u32> {
    if ideal.is_zero() {
        return Err(Error::domain("the zero ideal has no special monomial"));
    }
    let d = ideal
        .equigenerated_degree()
        .ok_or_else(|| Error::domain(format!("{ideal} is not generated in a single degree")))?;
    if let Some((u, i)) = stability_witness(ideal) {
        return Err(Error::domain(format!(
            "{ideal} is not stable: {u} fails the exchange with x{}",
            i + 1
        )));
    }
    Ok(d)
}

/// The lexicographically first degree-`(d-1)` monomial special over `I`.
pub fn find_special_monomial(ideal: &MonomialIdeal) -> Result<Monomial> {
    let d = check_stable_equigenerated(ideal)?;
    if ideal == &MonomialIdeal::maximal_power(ideal.n(), d) {
        return Err(Error::domain(format!("{ideal} is already the maximal ideal power")));
    }
    monomials_of_degree(ideal.n(), d - 1)
        .into_iter()
        .find(|v| is_special(ideal, v))
        .ok_or_else(|| Error::Invariant(format!("no special monomial over the stable ideal {ideal}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableStep {
    pub v: Monomial,
    /// `B` with `I : v = (x_i : i ∈ B)`, an initial segment.
    pub colon_support: VariableSet,
    /// `I + v𝔪`.
    pub ideal: MonomialIdeal,
}

impl StableStep {
    /// The same step as a chain step adding `v x_i` for `i ∉ B`.
    pub fn chain_step(&self) -> ChainStep {
        ChainStep {
            u: self.v.clone(),
            vars: VariableSet::full(self.v.n()).difference(&self.colon_support),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "v": self.v.to_string(),
            "colon": self.colon_support.to_one_based(),
            "ideal": self.ideal.to_string(),
        })
    }
}

/// Add `v𝔪` for successive special monomials `v` until `I = 𝔪^d`, checking
/// each step.
pub fn stable_chain_to_power(ideal: &MonomialIdeal) -> Result<Vec<StableStep>> {
    let d = check_stable_equigenerated(ideal)?;
    let n = ideal.n();
    let target = MonomialIdeal::maximal_power(n, d);
    let mut current = ideal.clone();
    let mut steps = Vec::new();
    while current != target {
        let v = find_special_monomial(&current)?;
        let sl = is_strongly_linear(&v, &current)?;
        let colon_support = sl.colon_support.ok_or_else(|| {
            Error::Invariant(format!("special monomial {v} is not strongly linear over {current}"))
        })?;
        let k = colon_support.len();
        if colon_support != (0..k).collect::<VariableSet>() {
            return Err(Error::Invariant(format!(
                "colon {current} : {v} is not an initial segment of variables"
            )));
        }
        let next = current.with((0..n).map(|i| v.times_var(i)))?;
        if next.len() <= current.len() {
            return Err(Error::Invariant(format!("{v} added nothing to {current}")));
        }
        if !is_stable(&next) {
            return Err(Error::Invariant(format!("{next} is not stable")));
        }
        current = next;
        steps.push(StableStep {
            v,
            colon_support,
            ideal: current.clone(),
        });
    }
    Ok(steps)
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

    fn stable_example() -> MonomialIdeal {
        ideal(3, &[&[0, 2, 1], &[0, 3, 0], &[1, 2, 0], &[2, 1, 0], &[3, 0, 0]])
    }

    #[test]
    fn stability_examples() {
        assert!(is_stable(&stable_example()));
        assert_eq!(
            stability_witness(&ideal(3, &[&[1, 1, 0], &[0, 1, 1]])),
            Some((m(&[0, 1, 1]), 1))
        );
        assert!(is_stable(&ideal(2, &[&[4, 0]])));
        assert!(is_stable(&MonomialIdeal::zero(3)));
    }

    #[test]
    fn special_monomials() {
        assert_eq!(find_special_monomial(&stable_example()).unwrap(), m(&[1, 1, 0]));
        assert!(find_special_monomial(&MonomialIdeal::maximal_power(3, 2)).is_err());
        assert_eq!(find_special_monomial(&ideal(2, &[&[3, 0]])).unwrap(), m(&[2, 0]));
    }

    #[test]
    fn example_chain() {
        let steps = stable_chain_to_power(&stable_example()).unwrap();
        let vs: Vec<Monomial> = steps.iter().map(|s| s.v.clone()).collect();
        assert_eq!(
            vs,
            vec![m(&[1, 1, 0]), m(&[0, 1, 1]), m(&[2, 0, 0]), m(&[1, 0, 1]), m(&[0, 0, 2])]
        );
        for s in &steps {
            assert_eq!(s.colon_support, VariableSet::from_one_based(&[1, 2]));
        }
        assert_eq!(steps.last().unwrap().ideal, MonomialIdeal::maximal_power(3, 3));
    }

    #[test]
    fn short_chains() {
        assert!(stable_chain_to_power(&MonomialIdeal::maximal_power(3, 2)).unwrap().is_empty());
        let steps = stable_chain_to_power(&ideal(2, &[&[3, 0]])).unwrap();
        assert_eq!(steps.len(), 3);
        assert_eq!(steps[2].ideal, MonomialIdeal::maximal_power(2, 3));
    }
}
