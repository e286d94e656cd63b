//! Exact integer/rational aliases and small number-theoretic helpers.
//!
//! Everything downstream computes over [`Int`] and [`Rat`]; floating point
//! appears only in logarithmic estimates ([`ln_abs_int`], [`ln_abs`]) used for
//! growth-rate reporting, never in any pass/fail decision.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

/// Shorthand for `Int::from(n)`.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand for the rational `n/1`.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

/// Shorthand for the rational `n/d`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

/// `2^k` as an exact rational, `k` of either sign.
pub fn two_pow(k: i64) -> Rat {
    let abs = Int::one() << k.unsigned_abs() as usize;
    if k >= 0 {
        Rat::from_integer(abs)
    } else {
        Rat::new(Int::one(), abs)
    }
}

/// A p-adic valuation: finite, or infinite for the exact zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Valuation::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// p-adic valuation of a nonzero magnitude, by exact division.
fn vp_magnitude(mut m: BigUint, p: u64) -> i64 {
    debug_assert!(!m.is_zero());
    if p == 2 {
        return m.trailing_zeros().unwrap_or(0) as i64;
    }
    let p_big = BigUint::from(p);
    let mut v = 0i64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p_big);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of an integer (`Infinite` for zero).
pub fn vp_int(x: &Int, p: u64) -> Result<Valuation, Error> {
    if !crate::primes::is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(vp_magnitude(x.magnitude().clone(), p)))
}

/// p-adic valuation of a rational (`Infinite` for zero).
pub fn vp(x: &Rat, p: u64) -> Result<Valuation, Error> {
    if !crate::primes::is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let vn = vp_magnitude(x.numer().magnitude().clone(), p);
    let vd = vp_magnitude(x.denom().magnitude().clone(), p);
    Ok(Valuation::Finite(vn - vd))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// Exact binomial coefficient for nonnegative integer arguments.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    num_integer::binomial(Int::from(n), Int::from(k))
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: &Rat, n: u64) -> Rat {
    let mut acc = Rat::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rat::one();
    }
    acc
}

/// Generalised binomial coefficient `C(a, k) = a (a-1) ... (a-k+1) / k!`
/// for rational `a` and nonnegative integer `k`.
pub fn gen_binomial(a: &Rat, k: u64) -> Rat {
    let mut acc = Rat::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term -= Rat::one();
    }
    acc / Rat::from_integer(factorial(k))
}

/// Natural log of `|x|` for a big integer, accurate to double precision.
///
/// Large inputs are handled by splitting off the top 64 bits, so this works
/// far beyond the `f64` exponent range.
pub fn ln_abs_int(x: &Int) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let mag = x.magnitude();
    let bits = mag.bits();
    if bits <= 512 {
        mag.to_f64().expect("fits in f64 range").ln()
    } else {
        let shift = bits - 64;
        let top = mag >> shift;
        top.to_f64().expect("64-bit mantissa").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Natural log of `|x|` for a rational.
pub fn ln_abs(x: &Rat) -> f64 {
    ln_abs_int(x.numer()) - ln_abs_int(x.denom())
}

/// Exact integer power of a rational with exponent of either sign.
///
/// Panics on `0^negative`.
pub fn pow_rat(base: &Rat, e: i64) -> Rat {
    if e >= 0 {
        base.pow(e as i32)
    } else {
        assert!(!base.is_zero(), "0 raised to a negative power");
        base.pow(e as i32)
    }
}

/// Round a rational towards negative infinity.
pub fn floor_rat(x: &Rat) -> Int {
    x.floor().to_integer()
}

/// Smallest integer `>= x`.
pub fn ceil_rat(x: &Rat) -> Int {
    x.ceil().to_integer()
}

/// Absolute value.
pub fn abs_rat(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_of_integers_and_rationals() {
        assert_eq!(vp(&rat(73728), 2).unwrap(), Valuation::Finite(13));
        assert_eq!(vp(&frac(3, 8), 2).unwrap(), Valuation::Finite(-3));
        assert_eq!(vp(&frac(-48, 5), 2).unwrap(), Valuation::Finite(4));
        assert_eq!(vp(&rat(0), 2).unwrap(), Valuation::Infinite);
        assert_eq!(vp(&rat(250), 5).unwrap(), Valuation::Finite(3));
        assert_eq!(vp_int(&int(-27), 3).unwrap(), Valuation::Finite(3));
    }

    #[test]
    fn valuation_rejects_composite_modulus() {
        assert!(matches!(vp(&rat(10), 6), Err(Error::NonPrime(6))));
        assert!(matches!(vp_int(&int(10), 1), Err(Error::NonPrime(1))));
    }

    #[test]
    fn valuation_ordering_puts_infinity_on_top() {
        assert!(Valuation::Infinite > Valuation::Finite(1 << 40));
        assert!(Valuation::Finite(-3) < Valuation::Finite(0));
        assert_eq!(
            Valuation::Infinite.max(Valuation::Finite(7)),
            Valuation::Infinite
        );
    }

    #[test]
    fn pochhammer_and_binomials() {
        assert_eq!(pochhammer(&frac(1, 2), 2), frac(3, 4));
        assert_eq!(pochhammer(&rat(1), 5), rat(120));
        assert_eq!(pochhammer(&rat(3), 0), rat(1));
        assert_eq!(gen_binomial(&rat(-4), 2), rat(10));
        assert_eq!(gen_binomial(&rat(-1), 3), rat(-1));
        assert_eq!(gen_binomial(&frac(1, 2), 2), frac(-1, 8));
        assert_eq!(binomial(10, 3), int(120));
        assert_eq!(binomial(3, 7), int(0));
        assert_eq!(factorial(6), int(720));
    }

    #[test]
    fn central_binomial_via_half_integer_pochhammer() {
        // 4^i (1/2)_i / i! equals the central binomial coefficient C(2i, i).
        for i in 0..10u64 {
            let lhs = pow_rat(&rat(4), i as i64) * pochhammer(&frac(1, 2), i)
                / Rat::from_integer(factorial(i));
            assert_eq!(lhs, Rat::from_integer(binomial(2 * i, i)));
        }
    }

    #[test]
    fn log_estimates_track_bit_length() {
        let x = Int::one() << 100;
        assert!((ln_abs_int(&x) - 100.0 * std::f64::consts::LN_2).abs() < 1e-9);
        let y = Int::one() << 5000;
        assert!((ln_abs_int(&y) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-6);
        let q = Rat::new(Int::one() << 200, int(3));
        let expect = 200.0 * std::f64::consts::LN_2 - 3f64.ln();
        assert!((ln_abs(&q) - expect).abs() < 1e-9);
    }

    #[test]
    fn two_pow_handles_both_signs() {
        assert_eq!(two_pow(10), rat(1024));
        assert_eq!(two_pow(-3), frac(1, 8));
        assert_eq!(two_pow(0), rat(1));
    }
}
