//! Rational functions kept in factored form, partial-fraction extraction via
//! local jets, and the telescoping certificate for the hypergeometric kernel.
//!
//! A [`RatFun`] is `scalar * pre(t) * prod_a (t + a)^(e_a)` with rational
//! shifts `a` and integer exponents of either sign. Keeping the factored form
//! exact makes shifting `t -> t + 1`, merging cancelling factors, and local
//! expansion around a pole all cheap and exact.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::jet::Jet;
use crate::poly::Poly;
use crate::rational::{frac, int, pow_rat, rat, Int, Rat};
use crate::{Error, Verdict};

pub type FactorMap = BTreeMap<Rat, i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    scalar: Rat,
    pre: Poly,
    factors: FactorMap,
}

impl RatFun {
    pub fn new(scalar: Rat, pre: Poly, factors: FactorMap) -> RatFun {
        if scalar.is_zero() || pre.is_zero() {
            return RatFun::zero();
        }
        let factors = factors.into_iter().filter(|(_, e)| *e != 0).collect();
        RatFun {
            scalar,
            pre,
            factors,
        }
    }

    pub fn zero() -> RatFun {
        RatFun {
            scalar: Rat::zero(),
            pre: Poly::one(),
            factors: FactorMap::new(),
        }
    }

    pub fn one() -> RatFun {
        RatFun::new(Rat::one(), Poly::one(), FactorMap::new())
    }

    pub fn from_poly(pre: Poly) -> RatFun {
        RatFun::new(Rat::one(), pre, FactorMap::new())
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn scalar(&self) -> &Rat {
        &self.scalar
    }

    pub fn pre(&self) -> &Poly {
        &self.pre
    }

    pub fn factors(&self) -> &FactorMap {
        &self.factors
    }

    /// Total degree `deg(pre) + sum of factor exponents` (`None` for zero).
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let base = self.pre.degree().expect("pre is nonzero") as i64;
        Some(base + self.factors.values().sum::<i64>())
    }

    /// Pole locations `t = -a` with their orders.
    pub fn poles(&self) -> Vec<(Rat, u64)> {
        self.factors
            .iter()
            .filter(|(_, &e)| e < 0)
            .map(|(a, &e)| (-a, (-e) as u64))
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        if c.is_zero() || self.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            scalar: &self.scalar * c,
            pre: self.pre.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        let mut factors = self.factors.clone();
        for (a, e) in &rhs.factors {
            *factors.entry(a.clone()).or_insert(0) += e;
        }
        RatFun::new(
            &self.scalar * &rhs.scalar,
            &self.pre * &rhs.pre,
            factors,
        )
    }

    /// `f(t + k)` as a factored function.
    pub fn shift_var(&self, k: &Rat) -> RatFun {
        if self.is_zero() {
            return RatFun::zero();
        }
        let factors = self
            .factors
            .iter()
            .map(|(a, &e)| (a + k, e))
            .collect();
        RatFun {
            scalar: self.scalar.clone(),
            pre: self.pre.shift_var(k),
            factors,
        }
    }

    /// Exact value at a non-pole point; positive vanishing factors give zero.
    pub fn eval(&self, t: &Rat) -> Result<Rat, Error> {
        if self.is_zero() {
            return Ok(Rat::zero());
        }
        let mut acc = &self.scalar * self.pre.eval(t);
        for (a, &e) in &self.factors {
            let base = t + a;
            if base.is_zero() {
                if e > 0 {
                    return Ok(Rat::zero());
                }
                return Err(Error::PoleOutside(format!(
                    "evaluation at the pole t = {t} of order {}",
                    -e
                )));
            }
            acc *= pow_rat(&base, e);
        }
        Ok(acc)
    }

    /// Jet of `f(t) * (t - t0)^clear` around `t = t0`.
    ///
    /// Factors vanishing at `t0` (including the clearing power) are pulled
    /// out as a net power of `eps`; the remainder is an invertible jet. The
    /// net power must come out nonnegative, otherwise `t0` is a genuine pole
    /// of the cleared function.
    ///
    /// The non-vanishing factors are combined through their logarithm: with
    /// `Q_m = sum_f e_f / base_f^m`,
    ///
    /// ```text
    /// prod_f (base_f + eps)^(e_f)
    ///     = (prod_f base_f^(e_f)) * exp( sum_m (-1)^(m+1) Q_m eps^m / m ),
    /// ```
    ///
    /// which needs only the power sums `Q_1 .. Q_(order-1)` (small numbers)
    /// and one exponential, instead of a long chain of jet products.
    pub fn eval_cleared_jet(&self, t0: &Rat, clear: i64, order: usize) -> Result<Jet, Error> {
        if self.is_zero() {
            return Ok(Jet::zero(order));
        }
        let mut shift = clear;
        // The constant term is a long product; collecting numerator and
        // denominator separately defers the gcd work to a single reduction.
        let mut c_num = self.scalar.numer().clone();
        let mut c_den = self.scalar.denom().clone();
        let mut power_sums = vec![Rat::zero(); order.saturating_sub(1)];
        for (a, &e) in &self.factors {
            let base = t0 + a;
            if base.is_zero() {
                shift += e;
                continue;
            }
            let mag = e.unsigned_abs() as u32;
            if e > 0 {
                c_num *= base.numer().pow(mag);
                c_den *= base.denom().pow(mag);
            } else {
                c_num *= base.denom().pow(mag);
                c_den *= base.numer().pow(mag);
            }
            let inv = Rat::one() / base;
            let mut pw = inv.clone();
            for q in power_sums.iter_mut() {
                *q += rat(e) * &pw;
                pw *= &inv;
            }
        }
        let constant = Rat::new(c_num, c_den);
        if shift < 0 {
            return Err(Error::PoleOutside(format!(
                "t = {t0} remains a pole of order {} after clearing {clear}",
                -shift
            )));
        }
        let mut log_coeffs = vec![Rat::zero(); order];
        for (m, q) in power_sums.into_iter().enumerate() {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            log_coeffs[m + 1] = q * frac(sign, m as i64 + 1);
        }
        let mut acc = Jet::from_coeffs(log_coeffs)
            .exp_nilpotent()
            .scale(&constant);
        if self.pre != Poly::one() {
            acc = &acc * &self.pre.eval_jet(&crate::jet::around(t0, order));
        }
        Ok(acc.shift_up(shift as usize))
    }

    /// Jet of `f` around a non-pole point.
    pub fn eval_jet(&self, t0: &Rat, order: usize) -> Result<Jet, Error> {
        self.eval_cleared_jet(t0, 0, order)
    }

    /// Expanded numerator and denominator polynomials (denominator monic in
    /// the factored sense: the scalar goes into the numerator).
    pub fn expand(&self) -> (Poly, Poly) {
        if self.is_zero() {
            return (Poly::zero(), Poly::one());
        }
        let mut num = self.pre.scale(&self.scalar);
        let mut den = Poly::one();
        for (a, &e) in &self.factors {
            let linear = Poly::from_coeffs(vec![a.clone(), Rat::one()]);
            let power = linear.pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &power;
            } else {
                den = &den * &power;
            }
        }
        (num, den)
    }

    /// Numerator of `f` over the common denominator `prod (t+a)^(d_a)`.
    ///
    /// Fails unless every factor of `f` is absorbed, i.e. `e_a + d_a >= 0`
    /// for all shifts `a`.
    pub fn numerator_over(&self, denom: &FactorMap) -> Result<Poly, Error> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let mut num = self.pre.scale(&self.scalar);
        for (a, &e) in &self.factors {
            let total = e + denom.get(a).copied().unwrap_or(0);
            if total < 0 {
                return Err(Error::PoleOutside(format!(
                    "common denominator misses (t + {a})^{}",
                    -e
                )));
            }
            let linear = Poly::from_coeffs(vec![a.clone(), Rat::one()]);
            num = &num * &linear.pow(total as u32);
        }
        for (a, &d) in denom {
            if !self.factors.contains_key(a) {
                let linear = Poly::from_coeffs(vec![a.clone(), Rat::one()]);
                num = &num * &linear.pow(d as u32);
            }
        }
        Ok(num)
    }
}

impl std::fmt::Display for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "({}) * ({})", self.scalar, self.pre)?;
        for (a, e) in &self.factors {
            write!(f, " * (t + {a})^{e}")?;
        }
        Ok(())
    }
}

/// The order-`8n` kernel
/// `R_n(t) = 2^(8n) (2t + n) (t + 1/2)_n^4 / ((t)_(n+1))^4`,
/// stored as `2^(8n+1) (t + n/2) ...` so that for even `n` the linear factor
/// merges with one denominator power automatically.
pub fn build_r(n: u64) -> RatFun {
    let mut factors = FactorMap::new();
    *factors.entry(frac(n as i64, 2)).or_insert(0) += 1;
    for i in 0..n {
        *factors.entry(frac(1, 2) + rat(i as i64)).or_insert(0) += 4;
    }
    for j in 0..=n {
        *factors.entry(rat(j as i64)).or_insert(0) += -4;
    }
    RatFun::new(
        crate::rational::two_pow(8 * n as i64 + 1),
        Poly::one(),
        factors,
    )
}

/// Quartic prefactor of the telescoping certificate for index `n`.
fn certificate_quartic(n: u64) -> Poly {
    let n = int(n as i64);
    let c4 = int(8) * (int(2) * &n + 1);
    let c3 = int(48) * &n * (int(2) * &n + 1);
    let c2 = int(2) * (int(2) * &n + 1) * (int(48) * &n * &n - int(6) * &n - int(5));
    let c1 = int(2)
        * (int(80) * &n * &n * &n * &n + int(16) * &n * &n * &n - int(28) * &n * &n
            - int(3) * &n
            + int(3));
    let c0 = int(48) * &n * &n * &n * &n * &n - int(24) * &n * &n * &n + int(3) * &n * &n
        + int(4) * &n
        - int(1);
    Poly::from_coeffs(
        [c0, c1, c2, c3, c4]
            .into_iter()
            .map(Rat::from_integer)
            .collect(),
    )
}

/// The telescoping certificate
/// `T_n(t) = 16 Q_n(t) 2^(8n) (t - 1/2)_n^4 / ((t)_(n+1))^4`
/// with `Q_n` the quartic from [`certificate_quartic`].
pub fn build_t(n: u64) -> RatFun {
    assert!(n >= 1, "certificate is defined for n >= 1");
    let mut factors = FactorMap::new();
    for i in 0..n {
        *factors.entry(frac(-1, 2) + rat(i as i64)).or_insert(0) += 4;
    }
    for j in 0..=n {
        *factors.entry(rat(j as i64)).or_insert(0) += -4;
    }
    RatFun::new(
        crate::rational::two_pow(8 * n as i64 + 4),
        certificate_quartic(n),
        factors,
    )
}

/// Second-order analogue `2^(6n) ((t + 3/4)_n)^2 / ((t)_(n+1))^2`.
pub fn build_r_quarter(n: u64) -> RatFun {
    let mut factors = FactorMap::new();
    for i in 0..n {
        *factors.entry(frac(3, 4) + rat(i as i64)).or_insert(0) += 2;
    }
    for j in 0..=n {
        *factors.entry(rat(j as i64)).or_insert(0) += -2;
    }
    RatFun::new(crate::rational::two_pow(6 * n as i64), Poly::one(), factors)
}

/// Third-order analogue `2^(6n) (2t + n) ((t + 1/2)_n)^3 / ((t)_(n+1))^3`.
pub fn build_r_half(n: u64) -> RatFun {
    let mut factors = FactorMap::new();
    *factors.entry(frac(n as i64, 2)).or_insert(0) += 1;
    for i in 0..n {
        *factors.entry(frac(1, 2) + rat(i as i64)).or_insert(0) += 3;
    }
    for j in 0..=n {
        *factors.entry(rat(j as i64)).or_insert(0) += -3;
    }
    RatFun::new(
        crate::rational::two_pow(6 * n as i64 + 1),
        Poly::one(),
        factors,
    )
}

/// Partial-fraction data for a function whose poles all sit at non-positive
/// integers `t = -k` with order at most `max_order`:
///
/// ```text
/// f(t) = poly_part(t) + sum_{k} sum_{i=1..max_order} coeff[k][i-1] / (t+k)^i
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pfd {
    pub max_order: u64,
    pub coeffs: Vec<Vec<Rat>>,
    pub poly_part: Poly,
}

impl Pfd {
    pub fn k_max(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    /// Coefficient `r_{i,k}` of `(t + k)^(-i)`.
    pub fn coeff(&self, i: u64, k: u64) -> Rat {
        self.coeffs
            .get(k as usize)
            .map(|row| row[i as usize - 1].clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Evaluate the decomposition at a non-pole rational point.
    pub fn reconstruct_at(&self, t: &Rat) -> Rat {
        let mut acc = self.poly_part.eval(t);
        for (k, row) in self.coeffs.iter().enumerate() {
            let base = t + rat(k as i64);
            let inv = Rat::one() / base;
            let mut power = inv.clone();
            for r in row {
                acc += r * &power;
                power *= &inv;
            }
        }
        acc
    }
}

/// Partial fractions of `f` by local expansion.
///
/// For each pole `t = -k`, the coefficient of `(t+k)^(-i)` is read off as the
/// `eps^(max_order - i)` coefficient of the jet of `f(t) (t+k)^max_order`
/// around `t = -k`. Requires every pole of `f` to be a non-positive integer
/// of order `<= max_order`.
pub fn pfd(f: &RatFun, max_order: u64) -> Result<Pfd, Error> {
    let mut k_max = 0u64;
    for (location, order) in f.poles() {
        if !location.is_integer() || location.is_positive() {
            return Err(Error::PoleOutside(format!(
                "pole at t = {location} is not a non-positive integer"
            )));
        }
        if order > max_order {
            return Err(Error::PoleOutside(format!(
                "pole at t = {location} has order {order} > {max_order}"
            )));
        }
        let k = (-location).to_integer();
        k_max = k_max.max(u64::try_from(k).expect("non-negative"));
    }

    let mut coeffs = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let t0 = rat(-(k as i64));
        let jet = f.eval_cleared_jet(&t0, max_order as i64, max_order as usize)?;
        let row = (1..=max_order)
            .map(|i| jet.coeff((max_order - i) as usize))
            .collect();
        coeffs.push(row);
    }

    let poly_part = match f.degree() {
        Some(d) if d >= 0 => {
            let (num, den) = f.expand();
            num.divrem(&den).0
        }
        _ => Poly::zero(),
    };

    Ok(Pfd {
        max_order,
        coeffs,
        poly_part,
    })
}

/// Report from the two independent checks of the telescoping identity.
#[derive(Debug, Clone)]
pub struct TelescopeReport {
    pub n: u64,
    pub coefficient_mode: Verdict,
    pub sample_mode: Verdict,
}

impl TelescopeReport {
    pub fn is_pass(&self) -> bool {
        self.coefficient_mode.is_pass() && self.sample_mode.is_pass()
    }
}

/// Recurrence middle coefficient `32 (2n+1) (8n^4 + 16n^3 + 20n^2 + 12n + 3)`.
pub fn recurrence_middle(n: u64) -> Int {
    let n = int(n as i64);
    int(32)
        * (int(2) * &n + 1)
        * (int(8) * &n * &n * &n * &n
            + int(16) * &n * &n * &n
            + int(20) * &n * &n
            + int(12) * &n
            + 3)
}

/// Check the telescoping identity
///
/// ```text
/// (n+1)^5 R_{n+1}(t) - 32(2n+1)(8n^4+16n^3+20n^2+12n+3) R_n(t)
///         + 2^16 n^5 R_{n-1}(t)  =  T_n(t+1) - T_n(t)
/// ```
///
/// against the given certificate, in two independent ways: by expanding all
/// five terms over the common denominator `((t)_(n+2))^4` and checking the
/// numerator sum is the zero polynomial, and by exact evaluation at the
/// `4n + 9` points `t = j + 1/3` (one more than the numerator degree bound
/// `4n + 8`, so agreement there already implies the identity).
pub fn telescope_check_against(n: u64, certificate: &RatFun) -> Result<TelescopeReport, Error> {
    assert!(n >= 1);
    let terms = [
        build_r(n + 1).scale(&pow_rat(&rat(n as i64 + 1), 5)),
        build_r(n).scale(&-Rat::from_integer(recurrence_middle(n))),
        build_r(n - 1).scale(&(crate::rational::two_pow(16) * pow_rat(&rat(n as i64), 5))),
        certificate.shift_var(&Rat::one()).scale(&rat(-1)),
        certificate.clone(),
    ];

    let mut denom = FactorMap::new();
    for j in 0..=n + 1 {
        denom.insert(rat(j as i64), 4);
    }

    let mut numerator_sum = Poly::zero();
    for term in &terms {
        numerator_sum = &numerator_sum + &term.numerator_over(&denom)?;
    }
    let coefficient_mode = Verdict::from_bool(numerator_sum.is_zero(), || {
        format!(
            "n = {n}: numerator sum over the common denominator is {numerator_sum}, not zero"
        )
    });

    let mut sample_mode = Verdict::Pass;
    for j in 0..=(4 * n + 8) {
        let x = rat(j as i64) + frac(1, 3);
        let mut total = Rat::zero();
        for term in &terms {
            total += term.eval(&x)?;
        }
        if !total.is_zero() {
            sample_mode = Verdict::Fail {
                witness: format!("n = {n}: identity misses zero at t = {x} by {total}"),
            };
            break;
        }
    }

    Ok(TelescopeReport {
        n,
        coefficient_mode,
        sample_mode,
    })
}

/// [`telescope_check_against`] with the built-in certificate [`build_t`].
pub fn telescope_check(n: u64) -> Result<TelescopeReport, Error> {
    telescope_check_against(n, &build_t(n))
}
