//! Dense univariate polynomials over the exact rationals.
//!
//! Coefficients are stored in ascending order with no trailing zeros, so the
//! zero polynomial is the empty vector and `degree` is `None` for it. Only
//! the operations the rational-function layer needs are provided: ring
//! arithmetic, exact division with remainder, differentiation, evaluation at
//! rationals and at [`Jet`]s, and the variable shift `p(t) -> p(t + a)`.

use num_traits::{One, Zero};

use crate::jet::Jet;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Poly {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_jet(&self, x: &Jet) -> Jet {
        let mut acc = Jet::zero(x.order());
        for c in self.coeffs.iter().rev() {
            acc = (&acc * x).add_scalar(c);
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(crate::rational::int(i as i64)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// `p(t + a)`, by Horner in the polynomial ring.
    pub fn shift_var(&self, a: &Rat) -> Poly {
        let shift = Poly::from_coeffs(vec![a.clone(), Rat::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Quotient and remainder with `deg rem < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(d_deg)];
        while rem.len() > d_deg {
            let r_deg = rem.len() - 1;
            let factor = rem.last().unwrap() / &d_lead;
            let shift = r_deg - d_deg;
            quot[shift] = factor.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let delta = dc * &factor;
                rem[shift + i] -= delta;
            }
            debug_assert!(rem.len() == r_deg + 1 && rem[r_deg].is_zero());
            while rem.last().is_some_and(Rat::is_zero) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn construction_normalizes() {
        assert!(Poly::from_coeffs(vec![rat(0), rat(0)]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::monomial(rat(3), 2), p(&[0, 0, 3]));
    }

    #[test]
    fn ring_arithmetic() {
        let a = p(&[1, 1]); // 1 + t
        let b = p(&[-1, 1]); // -1 + t
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn evaluation_matches_jets() {
        let q = p(&[2, -3, 0, 5]);
        let x0 = frac(7, 3);
        let jet = q.eval_jet(&crate::jet::around(&x0, 3));
        assert_eq!(jet.coeff(0), q.eval(&x0));
        assert_eq!(jet.coeff(1), q.derivative().eval(&x0));
        assert_eq!(
            jet.coeff(2),
            q.derivative().derivative().eval(&x0) / rat(2)
        );
    }

    #[test]
    fn variable_shift() {
        let q = p(&[0, 0, 1]); // t^2
        assert_eq!(q.shift_var(&rat(1)), p(&[1, 2, 1]));
        let r = p(&[3, 1, -2, 4]);
        let s = r.shift_var(&frac(1, 2));
        assert_eq!(s.eval(&rat(0)), r.eval(&frac(1, 2)));
        assert_eq!(s.eval(&frac(3, 2)), r.eval(&rat(2)));
        assert_eq!(s.shift_var(&frac(-1, 2)), r);
    }

    #[test]
    fn division_round_trips() {
        let a = p(&[1, 0, -4, 0, 2, 7]);
        let b = p(&[2, 3, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());

        let exact = &a * &b;
        let (q2, r2) = exact.divrem(&b);
        assert_eq!(q2, a);
        assert!(r2.is_zero());
    }

    #[test]
    fn derivative_rules() {
        let q = p(&[5, 4, 3, 2]);
        assert_eq!(q.derivative(), p(&[4, 6, 6]));
        assert_eq!(Poly::constant(rat(9)).derivative(), Poly::zero());
    }
}
