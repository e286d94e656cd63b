//! Truncated power series ("jets") over the exact rationals.
//!
//! A [`Jet`] of order `m` stores the coefficients of `eps^0 .. eps^(m-1)` and
//! represents a value known modulo `O(eps^m)`. Mixed-order arithmetic
//! truncates to the smaller order. These are the carrier for every epsilon
//! expansion in the crate: residue extraction at poles, the telescoping
//! certificate samples, and the well-poised series coefficients.

use num_traits::{One, Signed, Zero};

use crate::rational::{rat, Rat};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    coeffs: Vec<Rat>,
}

impl Jet {
    /// Jet with the given coefficients; the order is their count.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Jet {
        assert!(!coeffs.is_empty(), "a jet needs order >= 1");
        Jet { coeffs }
    }

    /// The constant `c + O(eps^order)`.
    pub fn constant(c: Rat, order: usize) -> Jet {
        assert!(order >= 1);
        let mut coeffs = vec![Rat::zero(); order];
        coeffs[0] = c;
        Jet { coeffs }
    }

    pub fn zero(order: usize) -> Jet {
        Jet::constant(Rat::zero(), order)
    }

    pub fn one(order: usize) -> Jet {
        Jet::constant(Rat::one(), order)
    }

    /// The series variable `eps + O(eps^order)`.
    pub fn variable(order: usize) -> Jet {
        assert!(order >= 2, "eps is invisible at order < 2");
        let mut coeffs = vec![Rat::zero(); order];
        coeffs[1] = Rat::one();
        Jet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `eps^i` (zero beyond the stored order).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `k`-th derivative at 0, i.e. `k! * coeff(k)`.
    pub fn derivative_at_zero(&self, k: u64) -> Rat {
        Rat::from_integer(crate::rational::factorial(k)) * self.coeff(k as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    fn truncated(&self, order: usize) -> Jet {
        Jet {
            coeffs: self.coeffs[..order.min(self.coeffs.len())].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add_scalar(&self, c: &Rat) -> Jet {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        Jet { coeffs }
    }

    /// Multiply by `eps^k`, keeping the order (top coefficients fall away).
    pub fn shift_up(&self, k: usize) -> Jet {
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order];
        for i in k..order {
            coeffs[i] = self.coeffs[i - k].clone();
        }
        Jet { coeffs }
    }

    /// Multiplicative inverse; fails when the constant term vanishes.
    pub fn inverse(&self) -> Result<Jet, Error> {
        if self.coeffs[0].is_zero() {
            return Err(Error::JetDivision);
        }
        let order = self.order();
        let c0_inv = Rat::one() / &self.coeffs[0];
        let mut inv = vec![Rat::zero(); order];
        inv[0] = c0_inv.clone();
        for i in 1..order {
            let mut acc = Rat::zero();
            for j in 1..=i {
                acc += &self.coeffs[j] * &inv[i - j];
            }
            inv[i] = -acc * &c0_inv;
        }
        Ok(Jet { coeffs: inv })
    }

    pub fn div(&self, rhs: &Jet) -> Result<Jet, Error> {
        Ok(self * &rhs.inverse()?.truncated(self.order().min(rhs.order())))
    }

    /// Integer power; negative exponents invert first (constant term must be
    /// nonzero for those).
    pub fn powi(&self, e: i64) -> Result<Jet, Error> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Jet::one(self.order());
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Exponential of a jet with vanishing constant term, via the
    /// derivative recurrence `m r_m = sum_{i=1..m} i s_i r_{m-i}`.
    pub fn exp_nilpotent(&self) -> Jet {
        assert!(
            self.coeffs[0].is_zero(),
            "exp of a jet needs a vanishing constant term"
        );
        let order = self.order();
        let mut out = vec![Rat::zero(); order];
        out[0] = Rat::one();
        for m in 1..order {
            let mut acc = Rat::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc += rat(i as i64) * &self.coeffs[i] * &out[m - i];
                }
            }
            out[m] = acc / rat(m as i64);
        }
        Jet { coeffs: out }
    }

    /// Rising factorial `(self)(self + 1) ... (self + n - 1)`.
    pub fn pochhammer(&self, n: u64) -> Jet {
        let mut acc = Jet::one(self.order());
        let mut term = self.clone();
        for _ in 0..n {
            acc = &acc * &term;
            term = term.add_scalar(&Rat::one());
        }
        acc
    }

    /// Largest `k` with all coefficients below `k` zero (`order` if all are).
    pub fn leading_index(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.order())
    }

    /// Maximum absolute value of the stored coefficients (for diagnostics).
    pub fn max_coeff_abs(&self) -> Rat {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .expect("order >= 1")
    }
}

impl std::ops::Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let order = self.order().min(rhs.order());
        let coeffs = (0..order)
            .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
            .collect();
        Jet { coeffs }
    }
}

impl std::ops::Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let order = self.order().min(rhs.order());
        let coeffs = (0..order)
            .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
            .collect();
        Jet { coeffs }
    }
}

impl std::ops::Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rat::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Jet { coeffs }
    }
}

impl std::ops::Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::fmt::Display for Jet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*eps")?,
                _ => write!(f, "({c})*eps^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(eps^{})", self.order())
    }
}

/// Convenience: the jet `t0 + eps` used when expanding around a point.
pub fn around(t0: &Rat, order: usize) -> Jet {
    let mut coeffs = vec![Rat::zero(); order];
    coeffs[0] = t0.clone();
    if order >= 2 {
        coeffs[1] = Rat::one();
    }
    Jet { coeffs }
}
