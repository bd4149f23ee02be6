//! Seeded random monomial ideals.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::monomial::{colon_is_linear, monomials_of_degree, Monomial, MonomialIdeal};
use crate::stable::exchange;

pub const MAX_VARIABLES: usize = 12;
pub const MAX_DEGREE: u32 = 8;
pub const MAX_GENERATORS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RandomKind {
    Equigenerated,
    SquarefreeEquigenerated,
    Stable,
    LinearQuotientsBuilt,
}

impl RandomKind {
    pub const ALL: [RandomKind; 4] = [
        RandomKind::Equigenerated,
        RandomKind::SquarefreeEquigenerated,
        RandomKind::Stable,
        RandomKind::LinearQuotientsBuilt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RandomKind::Equigenerated => "equigenerated",
            RandomKind::SquarefreeEquigenerated => "squarefree-equigenerated",
            RandomKind::Stable => "stable",
            RandomKind::LinearQuotientsBuilt => "linear-quotients-built",
        }
    }
}

impl fmt::Display for RandomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RandomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RandomKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown ideal kind `{s}`")))
    }
}

/// Ambient size, generating degree and the largest generator count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub n: usize,
    pub d: u32,
    pub max_gens: usize,
}

impl Bounds {
    fn check(&self, kind: RandomKind) -> Result<()> {
        if self.n == 0 || self.n > MAX_VARIABLES {
            return Err(Error::domain(format!("n = {} outside 1..={MAX_VARIABLES}", self.n)));
        }
        if self.d == 0 || self.d > MAX_DEGREE {
            return Err(Error::domain(format!("d = {} outside 1..={MAX_DEGREE}", self.d)));
        }
        if self.max_gens == 0 || self.max_gens > MAX_GENERATORS {
            return Err(Error::domain(format!(
                "generator bound {} outside 1..={MAX_GENERATORS}",
                self.max_gens
            )));
        }
        if kind == RandomKind::SquarefreeEquigenerated && self.d as usize > self.n {
            return Err(Error::domain(format!(
                "no squarefree monomials of degree {} in {} variables",
                self.d, self.n
            )));
        }
        Ok(())
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of sample `index` in `stream`, independent of which worker runs it.
pub fn sample_seed(seed: u64, stream: u64, index: u64) -> u64 {
    splitmix(splitmix(splitmix(seed) ^ stream) ^ index)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random ideal of the given kind generated in degree `d` with between
/// one and `max_gens` generators.
pub fn random_ideal(kind: RandomKind, bounds: Bounds, seed: u64) -> Result<MonomialIdeal> {
    random_ideal_with(kind, bounds, &mut rng_from_seed(seed))
}

pub fn random_ideal_with<R: Rng>(kind: RandomKind, bounds: Bounds, rng: &mut R) -> Result<MonomialIdeal> {
    bounds.check(kind)?;
    let Bounds { n, d, max_gens } = bounds;
    let mut pool = monomials_of_degree(n, d);
    if kind == RandomKind::SquarefreeEquigenerated {
        pool.retain(Monomial::is_squarefree);
    }
    let target = rng.gen_range(1..=max_gens.min(pool.len()));
    let gens = match kind {
        RandomKind::Equigenerated | RandomKind::SquarefreeEquigenerated => {
            pool.choose_multiple(rng, target).cloned().collect()
        }
        RandomKind::Stable => random_stable(n, d, target, &pool, rng),
        RandomKind::LinearQuotientsBuilt => random_linear_quotients(target, &pool, rng),
    };
    MonomialIdeal::new(n, gens)
}

/// Close `gens` under `u ↦ u x_i / x_{m(u)}`, giving up past `limit`.
fn exchange_closure(mut gens: Vec<Monomial>, limit: usize) -> Option<Vec<Monomial>> {
    let mut k = 0;
    while k < gens.len() {
        let u = gens[k].clone();
        if let Some(m) = u.max_var() {
            for i in 0..m {
                let w = exchange(&u, i).expect("u is not 1");
                if !gens.contains(&w) {
                    gens.push(w);
                    if gens.len() > limit {
                        return None;
                    }
                }
            }
        }
        k += 1;
    }
    Some(gens)
}

fn random_stable<R: Rng>(n: usize, d: u32, target: usize, pool: &[Monomial], rng: &mut R) -> Vec<Monomial> {
    let mut e = vec![0; n];
    e[0] = d;
    let mut gens = vec![Monomial::new(e)];
    for _ in 0..4 * target {
        if gens.len() >= target {
            break;
        }
        let cand = pool.choose(rng).expect("pool is nonempty").clone();
        if gens.contains(&cand) {
            continue;
        }
        let mut next = gens.clone();
        next.push(cand);
        if let Some(closed) = exchange_closure(next, target) {
            gens = closed;
        }
    }
    gens
}

fn random_linear_quotients<R: Rng>(target: usize, pool: &[Monomial], rng: &mut R) -> Vec<Monomial> {
    let mut gens = vec![pool.choose(rng).expect("pool is nonempty").clone()];
    for _ in 0..4 * target {
        if gens.len() >= target {
            break;
        }
        let cand = pool.choose(rng).expect("pool is nonempty");
        if !gens.contains(cand) && colon_is_linear(gens.iter(), cand) {
            gens.push(cand.clone());
        }
    }
    gens
}
