//! Prime fields and exact rank computation over them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(FieldSpec { characteristic: p })
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// `GF(2)`.
    pub fn two() -> Self {
        FieldSpec { characteristic: 2 }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec {
            characteristic: Self::DEFAULT_CHARACTERISTIC,
        }
    }
}

impl TryFrom<u32> for FieldSpec {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        FieldSpec::new(p)
    }
}

impl From<FieldSpec> for u32 {
    fn from(f: FieldSpec) -> u32 {
        f.characteristic
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut k = 2u64;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Dense row-major matrix over `GF(p)`, entries kept reduced in `0..p`.
#[derive(Clone, Debug)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    p: u32,
}

impl GfMatrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        GfMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            p: field.characteristic,
        }
    }

    /// Set entry `(r, c)` to the image of the integer `value`.
    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        let p = self.p as i64;
        self.data[r * self.cols + c] = value.rem_euclid(p) as u32;
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    /// Rank by Gaussian elimination. Consumes the matrix.
    pub fn rank(mut self) -> usize {
        let p = self.p as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| self.data[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for c in col..cols {
                    self.data.swap(pivot * cols + c, rank * cols + c);
                }
            }
            let inv = pow_mod(self.data[rank * cols + col] as u64, p - 2, p);
            for c in col..cols {
                let idx = rank * cols + c;
                self.data[idx] = (self.data[idx] as u64 * inv % p) as u32;
            }
            for r in rank + 1..rows {
                let factor = self.data[r * cols + col] as u64;
                if factor == 0 {
                    continue;
                }
                for c in col..cols {
                    let sub = factor * self.data[rank * cols + c] as u64 % p;
                    let idx = r * cols + c;
                    self.data[idx] = ((self.data[idx] as u64 + p - sub) % p) as u32;
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert_eq!(FieldSpec::new(32004).unwrap_err(), Error::NotPrime(32004));
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(2).is_ok());
        assert_eq!(FieldSpec::default().characteristic(), 32003);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] has determinant -2
        for (p, expected) in [(2, 1), (3, 2), (32003, 2)] {
            let mut m = GfMatrix::zeros(2, 2, FieldSpec::new(p).unwrap());
            m.set(0, 0, 1);
            m.set(0, 1, 1);
            m.set(1, 0, 1);
            m.set(1, 1, -1);
            assert_eq!(m.rank(), expected, "p = {p}");
        }
    }

    #[test]
    fn rank_of_wide_and_tall() {
        let f = FieldSpec::default();
        let mut m = GfMatrix::zeros(2, 4, f);
        m.set(0, 1, 3);
        m.set(1, 3, 5);
        assert_eq!(m.clone().rank(), 2);
        let mut t = GfMatrix::zeros(3, 1, f);
        t.set(2, 0, 7);
        assert_eq!(t.rank(), 1);
        assert_eq!(GfMatrix::zeros(0, 3, f).rank(), 0);
    }

    #[test]
    fn serde_validates() {
        let f: FieldSpec = serde_json::from_str("7").unwrap();
        assert_eq!(f.characteristic(), 7);
        assert!(serde_json::from_str::<FieldSpec>("8").is_err());
    }
}
