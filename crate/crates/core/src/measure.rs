//! The irrationality-measure certificate: the generic valuation/growth
//! bound `mu <= alpha / (alpha - beta)`, the empirical rate sequences
//! measured from the computed table, and the exact nonvanishing of
//! consecutive linear forms.
//!
//! The certified constants are `alpha = 16 log 2` (decay of the normalized
//! forms) and `beta = 8 log 2 + 5` (growth of the integer coefficients),
//! giving the bound `16 log 2 / (8 log 2 - 5) = 20.342651...`. The rate
//! sequences converge slowly; reports always carry the raw values, and any
//! corridor drawn around them is an artifact tolerance, not a theorem.

use std::f64::consts::LN_2;

use num_traits::Zero;

use crate::denom::audit_integrality_with;
use crate::forms::{s_eval_against, LinearForm};
use crate::primes::{d_lcm, phi_product, psi_product};
use crate::rational::{int, ln_abs_int, two_pow, vp_int, Int, Rat, Valuation};
use crate::volkenborn::zeta2;
use crate::{Error, Verdict};

/// The measure bound `alpha / (alpha - beta)` from a decay rate `alpha`
/// and a growth rate `beta` with `alpha > beta > 0`.
pub fn bel_bound(alpha: f64, beta: f64) -> Result<f64, Error> {
    if !(alpha > beta && beta > 0.0) {
        return Err(Error::Precondition(format!(
            "no certificate: need alpha > beta > 0, got alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(alpha / (alpha - beta))
}

/// Default absolute-precision policy for measuring `v_2(S_n)`: the
/// near-cancellation sits around `16n + 3`, so 64 guard digits pin it.
pub fn default_precision(n: u64) -> i64 {
    16 * n as i64 + 64
}

/// One table row scaled to integrality: `a = (d_n^6 / Phi_n) rho0`,
/// `b = (d_n^6 / Phi_n) rho3`, plus the 2-adic valuation of the scaling
/// factor itself.
struct ScaledForm {
    a: Int,
    b: Int,
    scale_v2: i64,
}

fn scaled_form(form: &LinearForm) -> Result<ScaledForm, Error> {
    audit_integrality_with(form.n, &form.rho0, &form.rho3)?;
    let d6 = d_lcm(form.n).pow(6);
    let (scale, rem) = num_integer::Integer::div_rem(&d6, &phi_product(form.n));
    debug_assert!(rem.is_zero(), "Phi_n divides d_n^6 by construction");
    let a = &form.rho0 * Rat::from_integer(scale.clone());
    let b = &form.rho3 * Rat::from_integer(scale.clone());
    if !a.is_integer() || !b.is_integer() {
        return Err(Error::Verification {
            witness: format!(
                "n={}: scaled coefficients are not integral (denominators {}, {})",
                form.n,
                a.denom(),
                b.denom()
            ),
        });
    }
    let scale_v2 = match vp_int(&scale, 2)? {
        Valuation::Finite(v) => v,
        Valuation::Infinite => unreachable!("the scaling factor is positive"),
    };
    Ok(ScaledForm {
        a: a.to_integer(),
        b: b.to_integer(),
        scale_v2,
    })
}

/// Exact nonvanishing of consecutive scaled forms: the integer determinant
/// `a_n b_(n+1) - a_(n+1) b_n` must equal
///
/// ```text
/// (Phi_n Phi_(n+1))^(-1) (d_n d_(n+1))^6 * 3 * 2^(16n+18) / (n+1)^5,
/// ```
///
/// which is positive, so the two forms are never simultaneously zero.
pub fn nonvanishing_check(lo: &LinearForm, hi: &LinearForm) -> Result<Verdict, Error> {
    assert_eq!(hi.n, lo.n + 1, "nonvanishing needs consecutive indices");
    let n = lo.n;
    let lo_scaled = scaled_form(lo)?;
    let hi_scaled = scaled_form(hi)?;
    let det = &lo_scaled.a * &hi_scaled.b - &hi_scaled.a * &lo_scaled.b;
    let scale = Rat::new(
        d_lcm(n).pow(6) * d_lcm(n + 1).pow(6),
        phi_product(n) * phi_product(n + 1),
    );
    let expected = scale * Rat::from_integer(int(3)) * two_pow(16 * n as i64 + 18)
        / Rat::from_integer(int(n as i64 + 1).pow(5));
    Ok(Verdict::from_bool(
        Rat::from_integer(det.clone()) == expected,
        || format!("scaled determinant at n = {n}: got {det}, expected {expected}"),
    ))
}

/// The assembled certificate: target rates, the bound they imply, and the
/// measured per-index sequences (entry `k` belongs to `n = k + 1`).
#[derive(Debug, Clone)]
pub struct Certificate {
    pub alpha: f64,
    pub beta: f64,
    pub mu_bound: f64,
    pub alpha_n: Vec<f64>,
    pub beta_n: Vec<f64>,
    pub nonvanishing: bool,
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "alpha": self.alpha,
            "beta": self.beta,
            "mu_bound": self.mu_bound,
            "alpha_n": self.alpha_n,
            "beta_n": self.beta_n,
            "nonvanishing": self.nonvanishing,
        })
    }
}

/// Measures the empirical decay and growth rates over `1 <= n <= n_max`
/// and assembles the certificate.
///
/// Per index: `alpha_n = v_2(S_hat_n) log 2 / n` where
/// `S_hat_n = (d_n^6 / Phi_n) S_n` (the valuation is read off a 2-adic
/// evaluation at `prec_policy(n) >= 16n + 64` certified digits, never
/// inferred), and `beta_n = log max(|a_n|, |b_n|) / n` from the scaled
/// integer coefficients. Nonvanishing of every consecutive pair up to
/// `n_max` is checked exactly; a failure is an error, not a finding, since
/// it would contradict the determinant identity.
pub fn empirical_rates<F: Fn(u64) -> i64>(n_max: u64, prec_policy: F) -> Result<Certificate, Error> {
    if n_max == 0 {
        return Err(Error::Precondition("the rate audit needs n_max >= 1".into()));
    }
    let mut prec_max = 0;
    for n in 1..=n_max {
        let prec = prec_policy(n);
        if prec < 16 * n as i64 + 64 {
            return Err(Error::Precondition(format!(
                "precision policy grants {prec} digits at n = {n}, need {}",
                16 * n + 64
            )));
        }
        prec_max = prec_max.max(prec);
    }

    let table = crate::forms::linear_form_table(n_max + 1);
    let zeta5 = zeta2(5, prec_max)?;
    let mut alpha_n = Vec::with_capacity(n_max as usize);
    let mut beta_n = Vec::with_capacity(n_max as usize);
    for form in &table[1..=n_max as usize] {
        let n = form.n;
        let scaled = scaled_form(form)?;
        let s = s_eval_against(form, &zeta5, prec_policy(n))?;
        let v2_s = s.valuation().ok_or_else(|| {
            Error::PrecisionShortfall(format!(
                "v_2(S_{n}) is not pinned at {} certified digits",
                prec_policy(n)
            ))
        })?;
        let v2_hat = scaled.scale_v2 + v2_s;
        alpha_n.push(v2_hat as f64 * LN_2 / n as f64);
        let magnitude = scaled.a.magnitude().max(scaled.b.magnitude());
        beta_n.push(ln_abs_int(&Int::from(magnitude.clone())) / n as f64);
    }
    for pair in table[1..].windows(2) {
        if let Verdict::Fail { witness } = nonvanishing_check(&pair[0], &pair[1])? {
            return Err(Error::Verification { witness });
        }
    }

    let alpha = 16.0 * LN_2;
    let beta = 8.0 * LN_2 + 5.0;
    let mu_bound = bel_bound(alpha, beta)?;
    Ok(Certificate {
        alpha,
        beta,
        mu_bound,
        alpha_n,
        beta_n,
        nonvanishing: true,
    })
}

/// Margin of the lightened denominator route, `log Psi_n / n - 8 log 2`:
/// negative exactly when `log Psi_n / n + 8 log 2 < 16 log 2`, the
/// inequality the simplified (measure-free) irrationality argument needs.
/// The crossover sits between n = 200 and n = 300.
pub fn lightened_margin(n: u64) -> f64 {
    assert!(n >= 1, "the margin is normalized by n");
    ln_abs_int(&psi_product(n)) / n as f64 - 8.0 * LN_2
}
