//! p-adic numbers with explicit absolute-precision tracking.
//!
//! A [`Padic`] represents a value known modulo `p^prec`. Nonzero values carry
//! an exact valuation `val` and a unit `u` with `u % p != 0`, reduced modulo
//! `p^(prec - val)`; the value is `p^val * u + O(p^prec)`. A value that is
//! indistinguishable from zero at the working precision is stored as the
//! explicit big-oh `O(p^prec)` (`val` absent). All operations propagate
//! precision pessimistically, so a reported digit is always a certified digit.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{Rat, Valuation};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Padic {
    p: u64,
    prec: i64,
    val: Option<i64>,
    unit: BigUint,
}

/// `p^k` for `k >= 0`, with a shift fast path at `p = 2`.
fn p_pow(p: u64, k: u64) -> BigUint {
    if p == 2 {
        BigUint::one() << k
    } else {
        BigUint::from(p).pow(u32::try_from(k).expect("exponent fits u32"))
    }
}

/// Inverse of `a` modulo `m` (`None` when `gcd(a, m) != 1`).
fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m_int = BigInt::from(m.clone());
    let ext = a.extended_gcd(&m_int);
    if !ext.gcd.is_one() {
        return None;
    }
    let x = ext.x.mod_floor(&m_int);
    Some(x.to_biguint().expect("mod_floor is nonnegative"))
}

impl Padic {
    /// The explicit big-oh `O(p^prec)`.
    pub fn zero_at_precision(p: u64, prec: i64) -> Result<Padic, Error> {
        if !crate::primes::is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        Ok(Padic {
            p,
            prec,
            val: None,
            unit: BigUint::zero(),
        })
    }

    /// Embed an exact rational, keeping its exact valuation.
    ///
    /// The denominator must be coprime to `p` after the `p`-part is split off,
    /// which always holds for a reduced fraction.
    pub fn from_rational(x: &Rat, p: u64, prec: i64) -> Result<Padic, Error> {
        if !crate::primes::is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if x.is_zero() {
            return Self::zero_at_precision(p, prec);
        }
        let v = match crate::rational::vp(x, p)? {
            Valuation::Finite(v) => v,
            Valuation::Infinite => unreachable!("x is nonzero"),
        };
        if v >= prec {
            return Self::zero_at_precision(p, prec);
        }
        let rel = (prec - v) as u64;
        let modulus = p_pow(p, rel);

        let strip = |n: &BigInt| -> BigUint {
            let mut m = n.magnitude().clone();
            if p == 2 {
                let tz = m.trailing_zeros().unwrap_or(0);
                m >>= tz;
            } else {
                let p_big = BigUint::from(p);
                loop {
                    let (q, r) = m.div_rem(&p_big);
                    if !r.is_zero() {
                        break;
                    }
                    m = q;
                }
            }
            m
        };

        let num_unit = strip(x.numer()) % &modulus;
        let den_unit = strip(x.denom()) % &modulus;
        let den_inv = mod_inverse(&den_unit, &modulus).expect("denominator unit is coprime to p");
        let mut unit = num_unit * den_inv % &modulus;
        if x.is_negative() {
            unit = &modulus - unit;
        }
        Ok(Padic {
            p,
            prec,
            val: Some(v),
            unit,
        })
    }

    pub fn from_integer(n: i64, p: u64, prec: i64) -> Result<Padic, Error> {
        Self::from_rational(&crate::rational::rat(n), p, prec)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Absolute precision: the value is known modulo `p^prec`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Exact valuation, when the value is distinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        self.val
    }

    /// Best certified lower bound for the valuation (`prec` for a big-oh).
    pub fn valuation_lower_bound(&self) -> i64 {
        self.val.unwrap_or(self.prec)
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.val.is_none()
    }

    pub fn unit(&self) -> &BigUint {
        &self.unit
    }

    pub fn unit_hex(&self) -> String {
        format!("{:x}", self.unit)
    }

    fn rel(&self) -> i64 {
        match self.val {
            Some(v) => self.prec - v,
            None => 0,
        }
    }

    /// Normalize a candidate `(val, residue mod p^(prec-val))` pair, demoting
    /// to a big-oh when the residue vanishes or no digits remain.
    fn make(p: u64, prec: i64, val: i64, residue: BigUint) -> Padic {
        if val >= prec {
            return Padic {
                p,
                prec,
                val: None,
                unit: BigUint::zero(),
            };
        }
        let rel = (prec - val) as u64;
        let residue = residue % p_pow(p, rel);
        if residue.is_zero() {
            return Padic {
                p,
                prec,
                val: None,
                unit: BigUint::zero(),
            };
        }
        // Shift the p-part of the residue into the valuation.
        let shift = if p == 2 {
            residue.trailing_zeros().unwrap_or(0)
        } else {
            let p_big = BigUint::from(p);
            let mut m = residue.clone();
            let mut s = 0u64;
            loop {
                let (q, r) = m.div_rem(&p_big);
                if !r.is_zero() {
                    break;
                }
                m = q;
                s += 1;
            }
            s
        };
        let val = val + shift as i64;
        if val >= prec {
            return Padic {
                p,
                prec,
                val: None,
                unit: BigUint::zero(),
            };
        }
        let unit = if p == 2 {
            residue >> shift
        } else {
            residue / p_pow(p, shift)
        };
        Padic {
            p,
            prec,
            val: Some(val),
            unit,
        }
    }

    /// Forget digits above `p^new_prec` (no-op if we already know fewer).
    pub fn plus_big_oh(&self, new_prec: i64) -> Padic {
        if new_prec >= self.prec {
            return self.clone();
        }
        match self.val {
            None => Padic {
                p: self.p,
                prec: new_prec,
                val: None,
                unit: BigUint::zero(),
            },
            Some(v) => Padic::make(self.p, new_prec, v, self.unit.clone()),
        }
    }

    pub fn inverse(&self) -> Result<Padic, Error> {
        match self.val {
            None => Err(Error::PadicZeroInverse { prec: self.prec }),
            Some(v) => {
                let rel = (self.prec - v) as u64;
                let modulus = p_pow(self.p, rel);
                let inv = mod_inverse(&self.unit, &modulus).expect("unit is coprime to p");
                Ok(Padic {
                    p: self.p,
                    prec: self.prec - 2 * v,
                    val: Some(-v),
                    unit: inv,
                })
            }
        }
    }

    /// Integer power; negative exponents require an invertible value.
    pub fn pow(&self, e: i64) -> Result<Padic, Error> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc: Option<Padic> = None;
        let mut sq = base;
        let mut k = e.unsigned_abs();
        if k == 0 {
            // x^0 carries the relative precision of x, centred at 1.
            return Ok(Padic::make(self.p, self.rel().max(1), 0, BigUint::one()));
        }
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => &a * &sq,
                });
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc.expect("e != 0"))
    }

    /// Multiply by an exact nonzero rational (no precision loss beyond the
    /// valuation shift).
    pub fn scale_rational(&self, q: &Rat) -> Padic {
        assert!(!q.is_zero(), "scaling by exact zero loses all information");
        let w = crate::rational::vp(q, self.p)
            .expect("prime validated at construction")
            .finite()
            .expect("q is nonzero");
        match self.val {
            None => Padic {
                p: self.p,
                prec: self.prec + w,
                val: None,
                unit: BigUint::zero(),
            },
            Some(v) => {
                let rel = (self.prec - v) as u64;
                let modulus = p_pow(self.p, rel);
                let q_unit = Padic::from_rational(q, self.p, w + rel as i64)
                    .expect("prime validated at construction")
                    .unit;
                Padic {
                    p: self.p,
                    prec: self.prec + w,
                    val: Some(v + w),
                    unit: self.unit.clone() * q_unit % modulus,
                }
            }
        }
    }

    /// Certified number of leading p-adic digits on which `self` and `other`
    /// agree, i.e. a lower bound for `v_p(self - other)` capped by the joint
    /// precision.
    pub fn common_digits(&self, other: &Padic) -> i64 {
        let diff = self - other;
        diff.valuation_lower_bound()
    }

    /// `true` when `self - other` is certified divisible by `p^digits`.
    pub fn agrees_to(&self, other: &Padic, digits: i64) -> bool {
        self.common_digits(other) >= digits
    }

    /// Serialize to the report schema
    /// `{"p":..,"prec":..,"val":..,"unit_hex":".."}` with `"val":"inf"` for a
    /// value that is zero at its precision.
    pub fn to_json(&self) -> serde_json::Value {
        let val = match self.val {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from("inf"),
        };
        serde_json::json!({
            "p": self.p,
            "prec": self.prec,
            "val": val,
            "unit_hex": self.unit_hex(),
        })
    }
}

impl serde::Serialize for Padic {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl std::ops::Add for &Padic {
    type Output = Padic;
    fn add(self, rhs: &Padic) -> Padic {
        assert_eq!(self.p, rhs.p, "mixed p-adic moduli");
        let prec = self.prec.min(rhs.prec);
        match (self.val, rhs.val) {
            (None, None) => Padic {
                p: self.p,
                prec,
                val: None,
                unit: BigUint::zero(),
            },
            (Some(v), None) => Padic::make(self.p, prec, v, self.unit.clone()),
            (None, Some(v)) => Padic::make(self.p, prec, v, rhs.unit.clone()),
            (Some(vx), Some(vy)) => {
                let v = vx.min(vy);
                if v >= prec {
                    return Padic {
                        p: self.p,
                        prec,
                        val: None,
                        unit: BigUint::zero(),
                    };
                }
                let sum = p_pow(self.p, (vx - v) as u64) * &self.unit
                    + p_pow(self.p, (vy - v) as u64) * &rhs.unit;
                Padic::make(self.p, prec, v, sum)
            }
        }
    }
}

impl std::ops::Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        match self.val {
            None => self.clone(),
            Some(v) => {
                let rel = (self.prec - v) as u64;
                Padic {
                    p: self.p,
                    prec: self.prec,
                    val: Some(v),
                    unit: p_pow(self.p, rel) - &self.unit,
                }
            }
        }
    }
}

impl std::ops::Sub for &Padic {
    type Output = Padic;
    fn sub(self, rhs: &Padic) -> Padic {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Padic {
    type Output = Padic;
    fn mul(self, rhs: &Padic) -> Padic {
        assert_eq!(self.p, rhs.p, "mixed p-adic moduli");
        match (self.val, rhs.val) {
            (None, None) => Padic {
                p: self.p,
                prec: self.prec + rhs.prec,
                val: None,
                unit: BigUint::zero(),
            },
            (Some(v), None) => Padic {
                p: self.p,
                prec: rhs.prec + v,
                val: None,
                unit: BigUint::zero(),
            },
            (None, Some(v)) => Padic {
                p: self.p,
                prec: self.prec + v,
                val: None,
                unit: BigUint::zero(),
            },
            (Some(vx), Some(vy)) => {
                let rel = (self.prec - vx).min(rhs.prec - vy);
                let val = vx + vy;
                let modulus = p_pow(self.p, rel as u64);
                Padic {
                    p: self.p,
                    prec: val + rel,
                    val: Some(val),
                    unit: &self.unit * &rhs.unit % modulus,
                }
            }
        }
    }
}

impl std::fmt::Display for Padic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.val {
            None => write!(f, "O({}^{})", self.p, self.prec),
            Some(v) => write!(f, "{}^{} * {} + O({}^{})", self.p, v, self.unit, self.p, self.prec),
        }
    }
}
