//! Volkenborn integrals over `Z_2` and the 2-adic zeta evaluator built on
//! them.
//!
//! The workhorse is [`volk_inverse_power`], the integral of `(t + c)^(-m)`
//! for a shift `c` with negative 2-adic valuation. Expanding the integrand
//! binomially and integrating term by term gives the convergent series
//!
//! ```text
//! integral (t+c)^(-m) dt  =  sum_{j >= 0} C(-m, j) c^(-m-j) B_j
//! ```
//!
//! with `B_j` the Bernoulli numbers (`B_1 = -1/2`). Writing `a = -v_2(c) >= 1`,
//! the `j`-th term has 2-adic valuation at least `a (m + j) - 1`: the
//! generalized binomial coefficient is an integer, `v_2(c^(-m-j)) = a (m+j)`,
//! and `v_2(B_j) >= -1` by the von Staudt–Clausen theorem (the only external
//! input used for tail control). Truncating at the first index whose certified
//! valuation reaches the target precision therefore yields the integral with
//! an explicit big-oh, no heuristics involved.

use num_traits::{One, Zero};

use crate::bernoulli::bernoulli;
use crate::padic::Padic;
use crate::rational::{
    frac, gen_binomial, pow_rat, rat, two_pow, vp, Rat, Valuation,
};
use crate::{Error, Verdict};

/// Largest level accepted by [`volk_naive`] (`2^28` summands).
pub const MAX_NAIVE_LEVEL: u32 = 28;

/// `integral (t+c)^(-m) dt` over `Z_2`, certified to `O(2^prec)`.
///
/// Requires `m >= 1` and `v_2(c) <= -1`.
pub fn volk_inverse_power(c: &Rat, m: u64, prec: i64) -> Result<Padic, Error> {
    if m == 0 {
        return Err(Error::Precondition("inverse power needs m >= 1".into()));
    }
    let a = match vp(c, 2)? {
        Valuation::Finite(v) if v <= -1 => -v,
        v => {
            return Err(Error::Precondition(format!(
                "shift must have negative 2-adic valuation, got v_2(c) = {v}"
            )))
        }
    };
    // Smallest J with a(m + J) - 1 >= prec; all later terms are O(2^prec).
    let needed = prec + 1;
    let j_end = {
        let quot = (needed + a - 1).div_euclid(a); // ceil(needed / a)
        (quot - m as i64).max(0) as u64
    };
    let minus_m = rat(-(m as i64));
    let c_inv = Rat::one() / c;
    let mut c_power = pow_rat(c, -(m as i64));
    let mut sum = Rat::zero();
    for j in 0..=j_end {
        if !(j > 1 && j % 2 == 1) {
            let b = bernoulli(j);
            if !b.is_zero() {
                sum += gen_binomial(&minus_m, j) * &c_power * b;
            }
        }
        c_power *= &c_inv;
    }
    Padic::from_rational(&sum, 2, prec)
}

/// Riemann-sum approximation `2^(-level) * sum_{k < 2^level} f(k)`, reduced
/// to `O(2^prec)`.
///
/// This is the defining limit of the Volkenborn integral, used as an
/// independent oracle. No convergence rate is certified; callers should
/// compare successive levels and trust only the stabilized digits.
pub fn volk_naive<F: Fn(u64) -> Rat>(f: F, level: u32, prec: i64) -> Result<Padic, Error> {
    if level > MAX_NAIVE_LEVEL {
        return Err(Error::Precondition(format!(
            "naive level {level} exceeds the supported maximum {MAX_NAIVE_LEVEL}"
        )));
    }
    // Guard digits cover the division by 2^level plus slack for summand
    // valuations dipping below zero.
    let work = prec + level as i64 + 4;
    let mut acc = Padic::zero_at_precision(2, work)?;
    for k in 0..(1u64 << level) {
        let term = Padic::from_rational(&f(k), 2, work)?;
        acc = &acc + &term;
    }
    Ok(acc.scale_rational(&two_pow(-(level as i64))).plus_big_oh(prec))
}

/// `integral (t + c + k)^(-m) dt` computed from the translation rule
/// `integral f(t+1) dt = integral f(t) dt + f'(0)` iterated `k` times:
/// the direct integral at shift `c` minus `m * sum_{l<k} (l+c)^(-m-1)`.
pub fn translate_shift(c: &Rat, m: u64, k: u64, prec: i64) -> Result<Padic, Error> {
    let base = volk_inverse_power(c, m, prec)?;
    let mut correction = Rat::zero();
    for l in 0..k {
        let point = rat(l as i64) + c;
        correction += pow_rat(&point, -(m as i64 + 1));
    }
    correction *= rat(m as i64);
    let correction = Padic::from_rational(&correction, 2, prec)?;
    Ok(&base - &correction)
}

/// Check the translation rule by evaluating both sides independently.
pub fn shift_identity_check(c: &Rat, m: u64, k: u64, prec: i64) -> Result<Verdict, Error> {
    let direct = volk_inverse_power(&(c + rat(k as i64)), m, prec)?;
    let translated = translate_shift(c, m, k, prec)?;
    Ok(Verdict::from_bool(
        direct.agrees_to(&translated, prec),
        || {
            format!(
                "shift rule at c = {c}, m = {m}, k = {k}: direct {direct} vs translated {translated}"
            )
        },
    ))
}

/// 2-adic valuation of `s - 1` (used in working-precision budgets).
fn v2_of(n: u64) -> i64 {
    assert!(n > 0);
    n.trailing_zeros() as i64
}

/// The 2-adic zeta value `zeta_2(s)` for integer `s >= 2`, to `O(2^prec)`.
///
/// Evaluated through the two quarter-shift integrals:
///
/// ```text
/// zeta_2(s) = [ integral (t+1/4)^(1-s) dt + integral (t+3/4)^(1-s) dt ]
///             / (4^s (s-1))
/// ```
///
/// The working precision is raised so the exact division by `4^s (s-1)`
/// still lands at the requested precision. For even `s` the result is zero
/// at precision.
pub fn zeta2(s: u64, prec: i64) -> Result<Padic, Error> {
    if s < 2 {
        return Err(Error::Precondition("zeta_2(s) needs s >= 2".into()));
    }
    let m = s - 1;
    let work = prec + 2 * s as i64 + v2_of(s - 1) + 4;
    let quarter = volk_inverse_power(&frac(1, 4), m, work)?;
    let three_quarter = volk_inverse_power(&frac(3, 4), m, work)?;
    let divisor = pow_rat(&rat(4), s as i64) * rat(m as i64);
    Ok((&quarter + &three_quarter)
        .scale_rational(&divisor.recip())
        .plus_big_oh(prec))
}

/// `zeta_2(s)` through the single half-shift integral
/// `(1/(s-1)) integral (t+1/2)^(1-s) dt = 2^s zeta_2(s)`.
///
/// Independent of [`zeta2`] (different shift, different series), so agreement
/// of the two is a real consistency check.
pub fn zeta2_via_half_shift(s: u64, prec: i64) -> Result<Padic, Error> {
    if s < 2 {
        return Err(Error::Precondition("zeta_2(s) needs s >= 2".into()));
    }
    let m = s - 1;
    let work = prec + s as i64 + v2_of(s - 1) + 4;
    let half = volk_inverse_power(&frac(1, 2), m, work)?;
    let divisor = two_pow(s as i64) * rat(m as i64);
    Ok(half.scale_rational(&divisor.recip()).plus_big_oh(prec))
}

/// The divided-difference characteristic
///
/// ```text
/// min( min_{1 <= k <= k_max} v_p( (f(k) - f(k-)) / (k - k-) ),  1 + v_p(f(0)) )
/// ```
///
/// where `k-` strips the leading base-`p` digit of `k`. The full
/// characteristic is an infimum over all `k`; truncating at `k_max` gives an
/// upper estimate that is monotone non-increasing in `k_max`, and
/// `v_p(integral f) >= (full characteristic) - 1`.
pub fn triangle_depth<F: Fn(u64) -> Rat>(
    f: F,
    k_max: u64,
    p: u64,
) -> Result<Valuation, Error> {
    if !crate::primes::is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    let mut best = match vp(&f(0), p)? {
        Valuation::Finite(v) => Valuation::Finite(v + 1),
        Valuation::Infinite => Valuation::Infinite,
    };
    for k in 1..=k_max {
        let l = crate::primes::floor_log(p, k);
        let lead = k / p.pow(l);
        let k_minus = k - lead * p.pow(l);
        let diff = f(k) - f(k_minus);
        let term = match vp(&diff, p)? {
            Valuation::Finite(v) => Valuation::Finite(v - l as i64),
            Valuation::Infinite => Valuation::Infinite,
        };
        best = best.min(term);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shifts_and_orders() {
        assert!(volk_inverse_power(&frac(1, 2), 0, 16).is_err());
        assert!(volk_inverse_power(&rat(3), 1, 16).is_err());
        assert!(volk_inverse_power(&frac(1, 3), 1, 16).is_err());
    }

    #[test]
    fn half_shift_integrals_of_low_order_vanish() {
        // (1/(s-1)) integral (t+1/2)^(1-s) dt = 2^s zeta_2(s), and zeta_2
        // vanishes at positive even integers; so the integrals of order
        // m = 1 and m = 3 are zero at any precision we ask for.
        for (m, prec) in [(1u64, 64i64), (3, 48)] {
            let v = volk_inverse_power(&frac(1, 2), m, prec).unwrap();
            assert!(v.is_zero_at_precision(), "m = {m}: got {v}");
            assert_eq!(v.precision(), prec);
        }
    }

    #[test]
    fn integral_of_t_is_minus_half() {
        // The naive sums converge to integral t dt = B_1 = -1/2.
        let exact = Padic::from_rational(&frac(-1, 2), 2, 20).unwrap();
        let naive = volk_naive(|k| rat(k as i64), 16, 20).unwrap();
        // 2^-16 sum k = (2^16 - 1)/2 = -1/2 + 2^15, so 15 digits agree.
        assert_eq!(naive.common_digits(&exact), 15);
    }

    #[test]
    fn naive_sums_stabilize_toward_the_series_value() {
        let exact = volk_inverse_power(&frac(1, 4), 1, 40).unwrap();
        let f = |k: u64| frac(4, 4 * k as i64 + 1);
        let mut last = 0i64;
        for level in [8u32, 11, 14] {
            let naive = volk_naive(f, level, 40).unwrap();
            let agree = naive.common_digits(&exact);
            assert!(agree > last, "level {level}: {agree} <= {last}");
            last = agree;
        }
        assert!(last >= 10);
    }

    #[test]
    fn naive_level_guard() {
        assert!(matches!(
            volk_naive(|_| rat(1), 29, 8),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn translation_rule_holds() {
        for (c, m, k) in [
            (frac(1, 2), 1u64, 3u64),
            (frac(1, 4), 2, 5),
            (frac(3, 4), 4, 2),
            (frac(-7, 8), 3, 4),
        ] {
            assert!(
                shift_identity_check(&c, m, k, 48).unwrap().is_pass(),
                "c = {c}, m = {m}, k = {k}"
            );
        }
    }

    #[test]
    fn zeta_values_have_the_expected_valuations() {
        let z5 = zeta2(5, 60).unwrap();
        assert_eq!(z5.valuation(), Some(-3));
        let z3 = zeta2(3, 60).unwrap();
        assert_eq!(z3.valuation(), Some(-2));
        for s in [2u64, 4, 6, 8] {
            let z = zeta2(s, 48).unwrap();
            assert!(z.is_zero_at_precision(), "s = {s}: got {z}");
        }
    }

    #[test]
    fn quarter_and_half_routes_agree() {
        for s in 2..=8u64 {
            let a = zeta2(s, 48).unwrap();
            let b = zeta2_via_half_shift(s, 48).unwrap();
            assert!(a.agrees_to(&b, 48), "s = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn divided_difference_characteristic_basics() {
        // f(t) = t: differences are exactly 1, and f(0) = 0.
        assert_eq!(
            triangle_depth(|k| rat(k as i64), 64, 2).unwrap(),
            Valuation::Finite(0)
        );
        // Constants: only the 1 + v(f(0)) branch contributes.
        assert_eq!(
            triangle_depth(|_| rat(12), 64, 2).unwrap(),
            Valuation::Finite(3)
        );
        assert_eq!(
            triangle_depth(|_| rat(0), 64, 2).unwrap(),
            Valuation::Infinite
        );
        // Estimates only tighten as the scan deepens.
        let f = |k: u64| frac(1, 2 * k as i64 + 1);
        let d16 = triangle_depth(f, 16, 2).unwrap();
        let d64 = triangle_depth(f, 64, 2).unwrap();
        assert!(d64 <= d16);
    }

    #[test]
    fn characteristic_bounds_the_integral_valuation() {
        // v_2(integral f) >= depth(f) - 1, checked on inverse powers where
        // both sides are computable.
        for (c, m) in [(frac(1, 2), 2u64), (frac(1, 4), 1), (frac(3, 4), 3)] {
            let f = |k: u64| pow_rat(&(rat(k as i64) + &c), -(m as i64));
            let depth = triangle_depth(f, 128, 2).unwrap();
            let integral = volk_inverse_power(&c, m, 48).unwrap();
            let measured = Valuation::Finite(integral.valuation_lower_bound());
            let bound = match depth {
                Valuation::Finite(d) => Valuation::Finite(d - 1),
                Valuation::Infinite => Valuation::Infinite,
            };
            assert!(measured >= bound, "c = {c}, m = {m}: {measured:?} < {bound:?}");
        }
    }
}
