//! Integrality and per-prime valuation audits for the linear-form
//! coefficients, plus the epsilon-jet summand machinery that certifies the
//! per-prime bound term by term.
//!
//! Three layers:
//!
//! * [`audit_integrality`] — which fixed multiples of `rho0` and `rho3` are
//!   integers. The inclusions that follow from the construction (`d_n rho3`,
//!   `d_n^6 rho0`, `(d_n^6/Phi_n) rho0`, `Psi_n rho_i`) are hard errors when
//!   violated; the sharper conjectural ones (`rho3` itself, `d_n^5 rho0`)
//!   are reported as findings.
//! * [`vp_rho0_audit`] — the bound `v_p(rho0) >= -5` for every prime
//!   `p > max(sqrt(2n), 3)`.
//! * the quadruple-sum jets — the deformed residue block over one
//!   half-integer pole ladder, its expansion into summand jets with
//!   controlled denominators, the reconstruction of `rho0` from third
//!   derivatives, and the terminating very-well-poised series route to the
//!   `rho` table.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::forms::linear_form;
use crate::jet::Jet;
use crate::primes::{d_lcm, factor_smooth, is_prime, phi_product, psi_product, sieve};
use crate::ratfun::{build_r, pfd};
use crate::rational::{
    binomial, factorial, frac, int, pochhammer, pow_rat, rat, two_pow, vp, Int, Rat, Valuation,
};
use crate::{Error, Verdict};

/// Outcomes of the proven integrality inclusions for one index.
///
/// A `false` here contradicts a proved statement, so [`audit_integrality`]
/// turns it into a hard [`Error::Verification`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaFlags {
    /// `d_n * rho3` is an integer.
    pub d_rho3: bool,
    /// `d_n^6 * rho0` is an integer.
    pub d6_rho0: bool,
    /// `(d_n^6 / Phi_n) * rho0` is an integer.
    pub phi_inv_d6_rho0: bool,
    /// `Psi_n * rho0` is an integer.
    pub psi_rho0: bool,
    /// `Psi_n * rho3` is an integer.
    pub psi_rho3: bool,
}

impl LemmaFlags {
    pub fn all(&self) -> bool {
        self.d_rho3 && self.d6_rho0 && self.phi_inv_d6_rho0 && self.psi_rho0 && self.psi_rho3
    }
}

/// Outcomes of the conjectural (finitely verified) sharper inclusions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjectureFlags {
    /// `rho3` itself is an integer.
    pub rho3_integer: bool,
    /// `d_n^5 * rho0` is an integer.
    pub d5_rho0: bool,
}

impl ConjectureFlags {
    pub fn all(&self) -> bool {
        self.rho3_integer && self.d5_rho0
    }
}

/// Per-index integrality report: prime-by-prime valuations of the two
/// coefficients plus the inclusion flags.
///
/// The valuation map covers every prime `<= n` and every prime dividing
/// either denominator; for honest coefficients the latter set adds nothing,
/// it only matters when reporting on corrupted inputs.
#[derive(Debug, Clone)]
pub struct ValuationReport {
    pub n: u64,
    /// `p -> (v_p(rho0), v_p(rho3))`.
    pub valuations: BTreeMap<u64, (Valuation, Valuation)>,
    pub lemma: LemmaFlags,
    pub conjecture: ConjectureFlags,
    /// One note per flag that came out false.
    pub witnesses: Vec<String>,
}

impl ValuationReport {
    /// The findings-file shape: flags as booleans, witnesses as strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "lemma_flags": {
                "d_rho3": self.lemma.d_rho3,
                "d6_rho0": self.lemma.d6_rho0,
                "phi_inv_d6_rho0": self.lemma.phi_inv_d6_rho0,
                "psi_rho0": self.lemma.psi_rho0,
                "psi_rho3": self.lemma.psi_rho3,
            },
            "conjecture_flags": {
                "rho3_integer": self.conjecture.rho3_integer,
                "d5_rho0": self.conjecture.d5_rho0,
            },
            "witnesses": self.witnesses,
        })
    }
}

fn integrality_flag(n: u64, label: &str, value: &Rat, witnesses: &mut Vec<String>) -> bool {
    if value.is_integer() {
        true
    } else {
        witnesses.push(format!("n={n}: {label} has denominator {}", value.denom()));
        false
    }
}

/// Integrality audit against precomputed coefficients.
///
/// Proven inclusions are checked first and any violation is returned as a
/// hard error carrying all the offending denominators; the conjectural
/// inclusions only set flags and witnesses on the report.
pub fn audit_integrality_with(n: u64, rho0: &Rat, rho3: &Rat) -> Result<ValuationReport, Error> {
    let d = Rat::from_integer(d_lcm(n));
    let d5 = pow_rat(&d, 5);
    let d6 = pow_rat(&d, 6);
    let phi = Rat::from_integer(phi_product(n));
    let psi = Rat::from_integer(psi_product(n));

    let mut witnesses = Vec::new();
    let lemma = LemmaFlags {
        d_rho3: integrality_flag(n, "d_n * rho3", &(rho3 * &d), &mut witnesses),
        d6_rho0: integrality_flag(n, "d_n^6 * rho0", &(rho0 * &d6), &mut witnesses),
        phi_inv_d6_rho0: integrality_flag(
            n,
            "(d_n^6 / Phi_n) * rho0",
            &(rho0 * &(&d6 / &phi)),
            &mut witnesses,
        ),
        psi_rho0: integrality_flag(n, "Psi_n * rho0", &(rho0 * &psi), &mut witnesses),
        psi_rho3: integrality_flag(n, "Psi_n * rho3", &(rho3 * &psi), &mut witnesses),
    };
    if !lemma.all() {
        return Err(Error::Verification {
            witness: witnesses.join("; "),
        });
    }

    let conjecture = ConjectureFlags {
        rho3_integer: integrality_flag(n, "rho3 (conjectural integrality)", rho3, &mut witnesses),
        d5_rho0: integrality_flag(
            n,
            "d_n^5 * rho0 (conjectural integrality)",
            &(rho0 * &d5),
            &mut witnesses,
        ),
    };

    let mut primes = sieve(n);
    let extra = rho0.denom() * rho3.denom();
    if !extra.is_one() {
        match factor_smooth(&extra, n.max(1000)) {
            Some(fs) => primes.extend(fs.into_iter().map(|(p, _)| p)),
            None => witnesses.push(format!(
                "n={n}: a denominator prime above {} is omitted from the valuation map",
                n.max(1000)
            )),
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut valuations = BTreeMap::new();
    for p in primes {
        valuations.insert(p, (vp(rho0, p)?, vp(rho3, p)?));
    }

    Ok(ValuationReport {
        n,
        valuations,
        lemma,
        conjecture,
        witnesses,
    })
}

/// [`audit_integrality_with`] on the directly computed coefficients.
pub fn audit_integrality(n: u64) -> Result<ValuationReport, Error> {
    let form = linear_form(n);
    audit_integrality_with(n, &form.rho0, &form.rho3)
}

/// Check `v_p(rho0) >= -5` for every prime `p > max(sqrt(2n), 3)`.
///
/// Only primes dividing the denominator can violate the bound. The
/// denominator of an honest `rho0` divides `d_n^6` and is therefore
/// n-smooth; if factoring over the primes `<= n` leaves something behind,
/// the audit aborts with an error rather than guessing exponents.
pub fn vp_rho0_audit_with(n: u64, rho0: &Rat) -> Result<Verdict, Error> {
    if n == 0 {
        return Err(Error::Precondition(
            "the per-prime valuation audit needs n >= 1".into(),
        ));
    }
    let bound = n.max(1000);
    let factors = factor_smooth(rho0.denom(), bound).ok_or_else(|| Error::Verification {
        witness: format!("n={n}: denominator of rho0 has a prime factor above {bound}"),
    })?;
    for (p, e) in factors {
        if p > 3 && p * p > 2 * n && e > 5 {
            return Ok(Verdict::Fail {
                witness: format!("n={n}: v_{p}(rho0) = -{e} < -5"),
            });
        }
    }
    Ok(Verdict::Pass)
}

/// [`vp_rho0_audit_with`] on the directly computed coefficient.
pub fn vp_rho0_audit(n: u64) -> Result<Verdict, Error> {
    vp_rho0_audit_with(n, &linear_form(n).rho0)
}

/// Jet `c0 + c1 * eps` at the given order (the slope is dropped at order 1).
fn lin_jet(c0: Rat, c1: i64, order: usize) -> Jet {
    let mut coeffs = vec![Rat::zero(); order];
    coeffs[0] = c0;
    if order > 1 {
        coeffs[1] = rat(c1);
    }
    Jet::from_coeffs(coeffs)
}

/// Rising factorial of a jet: `a (a+1) ... (a+m-1)`.
fn poch_jet(a: &Jet, m: u64) -> Jet {
    let mut acc = Jet::one(a.order());
    for i in 0..m {
        acc = &acc * &a.add_scalar(&rat(i as i64));
    }
    acc
}

fn quad_preconditions(
    i1: u64,
    i2: u64,
    i3: u64,
    i4: u64,
    n: u64,
    ell: u64,
    order: usize,
) -> Result<(), Error> {
    if ell < 1 || ell > n {
        return Err(Error::Precondition(format!(
            "need 1 <= ell <= n, got ell = {ell}, n = {n}"
        )));
    }
    if !(i1 <= i2 && i2 <= i3 && i3 <= i4 && i4 <= n - ell) {
        return Err(Error::Precondition(format!(
            "summand indices must satisfy 0 <= i1 <= i2 <= i3 <= i4 <= n - ell, \
             got ({i1}, {i2}, {i3}, {i4}) with n - ell = {}",
            n - ell
        )));
    }
    if !(1..=4).contains(&order) {
        return Err(Error::Precondition(format!(
            "jet order must be 1..=4, got {order}"
        )));
    }
    Ok(())
}

/// Shared Pochhammer jets for every summand at one `(n, ell)`.
struct QuadTables {
    n: u64,
    ell: u64,
    order: usize,
    /// `(1/2 - eps)_j` and `(1/2 + eps)_j` for `j = 0..=n`.
    half_minus: Vec<Jet>,
    half_plus: Vec<Jet>,
    /// Inverses of `(1 - eps)_j` and `(1 + eps)_j`.
    one_minus_inv: Vec<Jet>,
    one_plus_inv: Vec<Jet>,
    /// `(ell + 1/2 - eps)_i` for `i = 0..=n-ell`.
    ell_half: Vec<Jet>,
    /// `(ell + 1 - 2eps)_i` and the inverse of `(ell + 1 - eps)_i`.
    ell_shift: Vec<Jet>,
    ell_one_inv: Vec<Jet>,
    /// `(n-ell+1-i)_i / (n-ell+1-i+eps)_i`, indexed by `i = i4`.
    tail_ratio: Vec<Jet>,
}

impl QuadTables {
    fn new(n: u64, ell: u64, order: usize) -> Result<QuadTables, Error> {
        let lin = |c0: Rat, c1: i64| lin_jet(c0, c1, order);
        let span = (n - ell) as usize;
        let ladder = |seed: Jet, len: usize| -> Vec<Jet> {
            let mut out = Vec::with_capacity(len + 1);
            out.push(Jet::one(order));
            for i in 0..len {
                let next = out.last().unwrap() * &seed.add_scalar(&rat(i as i64));
                out.push(next);
            }
            out
        };
        let invert = |v: Vec<Jet>| -> Result<Vec<Jet>, Error> {
            v.into_iter().map(|j| j.inverse()).collect()
        };

        let half_minus = ladder(lin(frac(1, 2), -1), n as usize);
        let half_plus = ladder(lin(frac(1, 2), 1), n as usize);
        let one_minus_inv = invert(ladder(lin(rat(1), -1), n as usize))?;
        let one_plus_inv = invert(ladder(lin(rat(1), 1), n as usize))?;
        let ell_half = ladder(lin(frac(2 * ell as i64 + 1, 2), -1), span);
        let ell_shift = ladder(lin(rat(ell as i64 + 1), -2), span);
        let ell_one_inv = invert(ladder(lin(rat(ell as i64 + 1), -1), span))?;
        let mut tail_ratio = Vec::with_capacity(span + 1);
        for i in 0..=span as u64 {
            let base = rat((n - ell + 1 - i) as i64);
            let scalar = pochhammer(&base, i);
            let denom = poch_jet(&lin(base, 1), i);
            tail_ratio.push(denom.inverse()?.scale(&scalar));
        }
        Ok(QuadTables {
            n,
            ell,
            order,
            half_minus,
            half_plus,
            one_minus_inv,
            one_plus_inv,
            ell_half,
            ell_shift,
            ell_one_inv,
            tail_ratio,
        })
    }

    fn summand(&self, i1: u64, i2: u64, i3: u64, i4: u64) -> Jet {
        let (n, ell) = (self.n, self.ell);
        let li = |i: u64| (ell + i) as usize;
        let ri = |i: u64| (n - ell - i) as usize;

        // All powers of two collapse to 2^(8n - 2 i4); the nested binomials
        // and the leading -(n - ell + 1)/(i4 + 1) stay scalar.
        let mut scalar = Rat::new(
            int(-1) * Int::from(n - ell + 1),
            Int::from(i4 + 1),
        );
        scalar *= two_pow(8 * n as i64 - 2 * i4 as i64);
        scalar *= Rat::from_integer(
            binomial(2 * i1, i1)
                * binomial(2 * (i2 - i1), i2 - i1)
                * binomial(2 * (i3 - i2), i3 - i2)
                * binomial(2 * (i4 - i3), i4 - i3),
        );

        let mut out = self.half_minus[li(i1)].clone();
        out = &out * &self.half_plus[ri(i1)];
        out = &out * &self.one_minus_inv[li(i1)];
        out = &out * &self.one_plus_inv[ri(i1)];
        for i in [i2, i3] {
            out = &out * &self.ell_half[i as usize];
            out = &out * &self.half_minus[(ell - 1) as usize];
            out = &out * &self.half_plus[ri(i)];
            out = &out * &self.one_minus_inv[li(i)];
            out = &out * &self.one_plus_inv[ri(i)];
        }
        out = &out * &lin_jet(rat(ell as i64), -2, self.order);
        out = &out * &self.ell_shift[i4 as usize];
        out = &out * &self.ell_one_inv[i4 as usize];
        out = &out * &self.half_minus[(ell - 1) as usize];
        out = &out * &self.one_minus_inv[ell as usize];
        out = &out * &self.half_plus[ri(i4)];
        out = &out * &self.one_plus_inv[ri(i4)];
        out = &out * &self.tail_ratio[i4 as usize];
        out.scale(&scalar)
    }
}

/// One summand of the quadruple-sum expansion of the residue block, as an
/// exact jet in eps.
///
/// The indices must satisfy `0 <= i1 <= i2 <= i3 <= i4 <= n - ell` with
/// `1 <= ell <= n`; `order` is the number of eps-coefficients kept (up to 4).
pub fn quad_summand_jet(
    i1: u64,
    i2: u64,
    i3: u64,
    i4: u64,
    n: u64,
    ell: u64,
    order: usize,
) -> Result<Jet, Error> {
    quad_preconditions(i1, i2, i3, i4, n, ell, order)?;
    Ok(QuadTables::new(n, ell, order)?.summand(i1, i2, i3, i4))
}

/// The summand at `eps = 0`: `-16 (n-ell+1) / ((2 ell - 1)^2 (i4 + 1))`
/// times twelve central binomial coefficients.
pub fn quad_summand_closed_form(
    i1: u64,
    i2: u64,
    i3: u64,
    i4: u64,
    n: u64,
    ell: u64,
) -> Result<Rat, Error> {
    quad_preconditions(i1, i2, i3, i4, n, ell, 1)?;
    let central = |m: u64| binomial(2 * m, m);
    let mut v = Rat::new(
        int(-16) * Int::from(n - ell + 1),
        Int::from(2 * ell - 1).pow(2) * Int::from(i4 + 1),
    );
    for i in [i1, i2, i3] {
        v *= Rat::from_integer(central(ell + i) * central(n - ell - i));
    }
    v *= Rat::from_integer(central(i1) * central(i2 - i1) * central(i3 - i2) * central(i4 - i3));
    v *= Rat::from_integer(central(ell - 1) * central(n - ell - i4));
    Ok(v)
}

/// The deformed residue block over the pole ladder at `ell - 1/2`:
///
/// ```text
/// 2^(8n) (ell - 1/2 - eps) (1/2 - eps)_(ell-1)^4
///   * sum_{k=ell}^n (n - 2k + 2 eps)
///       (ell + 1/2 - eps)_(k-ell)^4 (1/2 + eps)_(n-k)^4
///     / ((1 - eps)_k^4 (1 + eps)_(n-k)^4).
/// ```
///
/// A third of its third derivative at 0 equals the weighted sum of
/// partial-fraction coefficients `i (i+1) r_(i,k) / (ell - 1/2)^(i+2)` over
/// `k >= ell`, which is how `rho0` is rebuilt from these blocks.
pub fn quad_block_jet(n: u64, ell: u64, order: usize) -> Result<Jet, Error> {
    quad_preconditions(0, 0, 0, 0, n, ell, order)?;
    let lin = |c0: Rat, c1: i64| lin_jet(c0, c1, order);
    let mut tail = Jet::zero(order);
    for k in ell..=n {
        let lead = lin(rat(n as i64 - 2 * k as i64), 2);
        let num = &poch_jet(&lin(frac(2 * ell as i64 + 1, 2), -1), k - ell).powi(4)?
            * &poch_jet(&lin(frac(1, 2), 1), n - k).powi(4)?;
        let den = &poch_jet(&lin(rat(1), -1), k).powi(4)?
            * &poch_jet(&lin(rat(1), 1), n - k).powi(4)?;
        tail = &tail + &(&lead * &num.div(&den)?);
    }
    let pre = &lin(frac(2 * ell as i64 - 1, 2), -1)
        * &poch_jet(&lin(frac(1, 2), -1), ell - 1).powi(4)?;
    Ok((&pre * &tail).scale(&two_pow(8 * n as i64)))
}

/// Cross-checks the quadruple-sum machinery at one `(n, ell)`:
///
/// 1. the residue block equals the total of all summand jets, order 4;
/// 2. a third of the block's third derivative at 0 equals the weighted
///    partial-fraction sum over the ladder `k = ell..=n`;
/// 3. those block derivatives, summed over every ladder and negated,
///    reproduce `rho0`.
pub fn quad_identity_check(n: u64, ell: u64) -> Result<Verdict, Error> {
    if n > 12 {
        return Err(Error::Precondition(format!(
            "the jet identity sweep is sized for n <= 12, got n = {n}"
        )));
    }
    let order = 4;
    let block = quad_block_jet(n, ell, order)?;

    let tables = QuadTables::new(n, ell, order)?;
    let mut total = Jet::zero(order);
    for i4 in 0..=(n - ell) {
        for i3 in 0..=i4 {
            for i2 in 0..=i3 {
                for i1 in 0..=i2 {
                    total = &total + &tables.summand(i1, i2, i3, i4);
                }
            }
        }
    }
    for j in 0..order {
        if block.coeff(j) != total.coeff(j) {
            return Ok(Verdict::Fail {
                witness: format!(
                    "(n, ell) = ({n}, {ell}): eps^{j} coefficient of the residue block is {} \
                     but the summand total gives {}",
                    block.coeff(j),
                    total.coeff(j)
                ),
            });
        }
    }

    let parts = pfd(&build_r(n), 4)?;
    let pole = frac(2 * ell as i64 - 1, 2);
    let mut weighted = Rat::zero();
    for k in ell..=n {
        for i in 1..=4u64 {
            let r = parts.coeff(i, k);
            if r.is_zero() {
                continue;
            }
            weighted += rat((i * (i + 1)) as i64) * r * pow_rat(&pole, -(i as i64 + 2));
        }
    }
    let third = block.derivative_at_zero(3) * frac(1, 3);
    if weighted != third {
        return Ok(Verdict::Fail {
            witness: format!(
                "(n, ell) = ({n}, {ell}): third-derivative weight {third} differs from the \
                 partial-fraction sum {weighted}"
            ),
        });
    }

    let mut rebuilt = Rat::zero();
    for l in 1..=n {
        rebuilt -= quad_block_jet(n, l, order)?.derivative_at_zero(3) * frac(1, 3);
    }
    let direct = linear_form(n).rho0;
    if rebuilt != direct {
        return Ok(Verdict::Fail {
            witness: format!(
                "n = {n}: rho0 rebuilt from the residue blocks is {rebuilt}, direct value {direct}"
            ),
        });
    }
    Ok(Verdict::Pass)
}

fn vp_u64(mut x: u64, p: u64) -> i64 {
    debug_assert!(x > 0);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// `v_p` of the central binomial `C(2m, m)`: the number of carries when
/// adding `m + m` in base `p`.
fn vp_central_binomial(m: u64, p: u64) -> i64 {
    let mut rest = m;
    let mut carry = 0u64;
    let mut carries = 0i64;
    while rest > 0 || carry > 0 {
        let s = 2 * (rest % p) + carry;
        carry = u64::from(s >= p);
        carries += carry as i64;
        rest /= p;
    }
    carries
}

/// Exact `v_p` of the summand at `eps = 0`, from the factored closed form
/// (no big-integer arithmetic).
pub fn quad_summand_vp(
    i1: u64,
    i2: u64,
    i3: u64,
    i4: u64,
    n: u64,
    ell: u64,
    p: u64,
) -> Result<i64, Error> {
    quad_preconditions(i1, i2, i3, i4, n, ell, 1)?;
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    let mut v = vp_u64(16, p) + vp_u64(n - ell + 1, p);
    v -= 2 * vp_u64(2 * ell - 1, p) + vp_u64(i4 + 1, p);
    for i in [i1, i2, i3] {
        v += vp_central_binomial(ell + i, p) + vp_central_binomial(n - ell - i, p);
    }
    v += vp_central_binomial(i1, p)
        + vp_central_binomial(i2 - i1, p)
        + vp_central_binomial(i3 - i2, p)
        + vp_central_binomial(i4 - i3, p);
    v += vp_central_binomial(ell - 1, p) + vp_central_binomial(n - ell - i4, p);
    Ok(v)
}

/// Verify `v_p(F(0)) >= -2` for every prime `p > max(sqrt(2n), 3)` and
/// every index tuple at this `n`.
///
/// The closed form is an integer numerator over `(2 ell - 1)^2 (i4 + 1)`,
/// and an eligible prime satisfies `p^2 > 2n`, so it divides each of those
/// small factors at most once: the valuation can only drop below -2 when
/// `p` divides both `2 ell - 1` and `i4 + 1`. Only those tuples need their
/// numerator valuations counted; everything else is `>= -2` outright.
pub fn quad_summand_vp_audit(n: u64) -> Result<Verdict, Error> {
    if n == 0 {
        return Err(Error::Precondition("the summand audit needs n >= 1".into()));
    }
    for ell in 1..=n {
        let mut divisors = Vec::new();
        let mut m = 2 * ell - 1;
        let mut q = 3u64;
        while q * q <= m {
            if m % q == 0 {
                divisors.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 2;
        }
        if m > 1 {
            divisors.push(m);
        }
        for p in divisors.into_iter().filter(|&p| p > 3 && p * p > 2 * n) {
            let mut i4 = p - 1;
            while i4 <= n - ell {
                for i3 in 0..=i4 {
                    for i2 in 0..=i3 {
                        for i1 in 0..=i2 {
                            let v = quad_summand_vp(i1, i2, i3, i4, n, ell, p)?;
                            if v < -2 {
                                return Ok(Verdict::Fail {
                                    witness: format!(
                                        "n={n}, ell={ell}, indices ({i1}, {i2}, {i3}, {i4}): \
                                         v_{p}(F(0)) = {v} < -2"
                                    ),
                                });
                            }
                        }
                    }
                }
                i4 += p;
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Verify the derivative cascade: the `lambda`-th eps-derivative of every
/// summand at 0 has `v_p >= -2 - lambda` for `lambda <= 3` and every prime
/// `p > max(sqrt(2n), 3)`.
pub fn quad_derivative_cascade(n: u64, ell: u64) -> Result<Verdict, Error> {
    if n > 12 {
        return Err(Error::Precondition(format!(
            "the cascade sweep is sized for n <= 12, got n = {n}"
        )));
    }
    quad_preconditions(0, 0, 0, 0, n, ell, 4)?;
    let tables = QuadTables::new(n, ell, 4)?;
    for i4 in 0..=(n - ell) {
        for i3 in 0..=i4 {
            for i2 in 0..=i3 {
                for i1 in 0..=i2 {
                    let jet = tables.summand(i1, i2, i3, i4);
                    for lambda in 0..4u64 {
                        let value = jet.derivative_at_zero(lambda);
                        if value.is_zero() {
                            continue;
                        }
                        let factors =
                            factor_smooth(value.denom(), 2 * n).ok_or_else(|| Error::Verification {
                                witness: format!(
                                    "n={n}, ell={ell}: a derivative denominator is not {}-smooth",
                                    2 * n
                                ),
                            })?;
                        for (p, e) in factors {
                            if p > 3 && p * p > 2 * n && e as i64 > 2 + lambda as i64 {
                                return Ok(Verdict::Fail {
                                    witness: format!(
                                        "n={n}, ell={ell}, indices ({i1}, {i2}, {i3}, {i4}): \
                                         v_{p} of the order-{lambda} derivative is -{e} < -{}",
                                        2 + lambda
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Terminating very-well-poised series as an exact jet:
///
/// ```text
/// sum_{k=0}^{N} (a0 + 2k) (a0)_k prod_j (a_j)_k
///             / (a0 k! prod_j (1 + a0 - a_j)_k)
/// ```
///
/// with `params[0] = a0` and the remaining entries the `a_j`. Termination
/// by `k = N` must be visible: some parameter is the constant jet of an
/// integer in `[-N, 0]`, which kills every later product. Division errors
/// surface when a denominator Pochhammer or `a0` has a vanishing constant
/// term.
pub fn wellpoised_jet(params: &[Jet], n_trunc: u64, order: usize) -> Result<Jet, Error> {
    if params.len() < 2 {
        return Err(Error::Precondition(
            "the series needs a0 and at least one further parameter".into(),
        ));
    }
    if !(1..=4).contains(&order) {
        return Err(Error::Precondition(format!(
            "jet order must be 1..=4, got {order}"
        )));
    }
    let is_terminator = |a: &Jet| {
        a.coeffs()[1..].iter().all(Rat::is_zero)
            && a.coeff(0).is_integer()
            && !a.coeff(0).is_positive()
            && a.coeff(0) >= rat(-(n_trunc as i64))
    };
    if !params.iter().any(is_terminator) {
        return Err(Error::Precondition(format!(
            "no parameter terminates the series by k = {n_trunc}"
        )));
    }

    let a0 = &params[0];
    let rest = &params[1..];
    let mut total = Jet::zero(order);
    let mut num = Jet::one(order);
    let mut den = Jet::one(order);
    for k in 0..=n_trunc {
        let lead = a0.add_scalar(&rat(2 * k as i64));
        let term = (&lead * &num).div(&(a0 * &den))?;
        total = &total + &term;
        if k < n_trunc {
            let step = rat(k as i64);
            num = &num * &a0.add_scalar(&step);
            for a in rest {
                num = &num * &a.add_scalar(&step);
            }
            den = den.scale(&rat(k as i64 + 1));
            for a in rest {
                den = &den * &(a0 - a).add_scalar(&rat(k as i64 + 1));
            }
        }
    }
    Ok(total)
}

/// `rho_n` through the terminating well-poised route.
///
/// The eps-expansion of
///
/// ```text
/// (n + eps) (1/2)_n^2 (1/2 + eps)_n^2 / (n!^2 (1 + eps)_n^2)
///   * V(-n - eps; -n - eps, 1/2, 1/2, 1/2 - eps, 1/2 - eps, -n, -n)
/// ```
///
/// has constant term 0 and eps-coefficient `rho_n / 2^(8n)`; the returned
/// pair is `(constant term, scaled eps-coefficient)`.
pub fn rho_wellpoised(n: u64) -> Result<(Rat, Rat), Error> {
    if n == 0 {
        return Err(Error::Precondition(
            "the well-poised route needs n >= 1 (it divides by a0 = -n)".into(),
        ));
    }
    let order = 2;
    let lin = |c0: Rat, c1: i64| lin_jet(c0, c1, order);
    let a0 = lin(rat(-(n as i64)), -1);
    let half = Jet::constant(frac(1, 2), order);
    let minus_n = Jet::constant(rat(-(n as i64)), order);
    let params = vec![
        a0.clone(),
        a0,
        half.clone(),
        half.clone(),
        lin(frac(1, 2), -1),
        lin(frac(1, 2), -1),
        minus_n.clone(),
        minus_n,
    ];
    let series = wellpoised_jet(&params, n, order)?;
    let pre_num = &(&lin(rat(n as i64), 1) * &poch_jet(&half, n).powi(2)?)
        * &poch_jet(&lin(frac(1, 2), 1), n).powi(2)?;
    let pre_den = &Jet::constant(Rat::from_integer(factorial(n).pow(2)), order)
        * &poch_jet(&lin(rat(1), 1), n).powi(2)?;
    let total = (&pre_num * &series).div(&pre_den)?;
    Ok((total.coeff(0), total.coeff(1) * two_pow(8 * n as i64)))
}
