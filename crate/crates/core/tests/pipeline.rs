//! Cross-module flows: each test routes a quantity through two independent
//! computational paths and demands agreement on every certified digit.

use num_traits::Zero;
use padic_zeta::denom::audit_integrality_with;
use padic_zeta::forms::{
    determinant_check, linear_form, linear_form_table, rec_extend, rho_doublesum, s_eval_against,
    v2_bound,
};
use padic_zeta::rational::{frac, pow_rat, rat, two_pow, vp, Valuation};
use padic_zeta::volkenborn::{shift_identity_check, volk_naive, zeta2, zeta2_via_half_shift};
use padic_zeta::Rat;

#[test]
fn quarter_and_half_shift_zeta_routes_agree() {
    for s in 2u64..=8 {
        let quarter = zeta2(s, 48).unwrap();
        let half = zeta2_via_half_shift(s, 48).unwrap();
        assert!(
            quarter.agrees_to(&half, 48),
            "s = {s}: quarter {quarter} vs half {half}"
        );
        assert_eq!(
            quarter.is_zero_at_precision(),
            s % 2 == 0,
            "zeta_2 vanishes exactly at the even arguments"
        );
    }
}

#[test]
fn naive_riemann_sums_stabilize_onto_the_certified_zeta_value() {
    // Empirically the naive sums of the two quarter-shift integrands carry
    // `level + 8` correct digits (the offset is the integrand valuation);
    // asserting `level + 6` leaves margin without losing the linear rate.
    let certified = zeta2(5, 64).unwrap();
    let mut last = 0;
    for level in [6u32, 10, 14] {
        let prec = i64::from(level) + 30;
        let quarter =
            volk_naive(|k| pow_rat(&(rat(k as i64) + frac(1, 4)), -4), level, prec).unwrap();
        let three_quarter =
            volk_naive(|k| pow_rat(&(rat(k as i64) + frac(3, 4)), -4), level, prec).unwrap();
        let z = (&quarter + &three_quarter).scale_rational(&frac(1, 4096));
        let common = z.common_digits(&certified);
        assert!(
            common >= i64::from(level) + 6,
            "level {level}: only {common} digits stabilized"
        );
        assert!(common > last, "stabilization must improve with the level");
        last = common;
    }
}

#[test]
fn translation_rule_holds_across_shifts_and_orders() {
    for c in [frac(1, 4), frac(3, 4), frac(-5, 2)] {
        for m in [2u64, 4] {
            for k in [1u64, 3] {
                let verdict = shift_identity_check(&c, m, k, 40).unwrap();
                assert!(verdict.is_pass(), "c = {c}, m = {m}, k = {k}: {verdict:?}");
            }
        }
    }
}

#[test]
fn three_routes_to_the_linear_form_coincide() {
    let table = linear_form_table(16);
    for n in 0..=16u64 {
        let direct = linear_form(n);
        assert_eq!(direct.rho0, table[n as usize].rho0, "table rho0 at n = {n}");
        assert_eq!(direct.rho3, table[n as usize].rho3, "table rho3 at n = {n}");
        assert_eq!(
            Rat::from_integer(rho_doublesum(n)) * rat(768),
            direct.rho3,
            "double sum at n = {n}"
        );
        if n >= 2 {
            let prev = &table[n as usize - 2];
            let cur = &table[n as usize - 1];
            assert_eq!(
                rec_extend(&prev.rho0, &cur.rho0, n - 1),
                direct.rho0,
                "recurrence rho0 at n = {n}"
            );
            assert_eq!(
                rec_extend(&prev.rho3, &cur.rho3, n - 1),
                direct.rho3,
                "recurrence rho3 at n = {n}"
            );
        }
    }
    for pair in table.windows(2) {
        assert!(determinant_check(&pair[0], &pair[1]).is_pass());
    }
}

#[test]
fn linear_form_evaluations_agree_under_either_zeta_route() {
    // One high-precision value per route, capped down per index.
    let top = 16 * 6 + 64;
    let quarter = zeta2(5, top).unwrap();
    let half = zeta2_via_half_shift(5, top).unwrap();
    for n in 0..=6u64 {
        let form = linear_form(n);
        let prec = 16 * n as i64 + 48;
        let via_quarter = s_eval_against(&form, &quarter, prec).unwrap();
        let via_half = s_eval_against(&form, &half, prec).unwrap();
        assert!(
            via_quarter.agrees_to(&via_half, prec),
            "n = {n}: {via_quarter} vs {via_half}"
        );
        assert!(
            via_quarter.valuation_lower_bound() >= v2_bound(n),
            "n = {n}: valuation floor {} under bound {}",
            via_quarter.valuation_lower_bound(),
            v2_bound(n)
        );
    }
}

#[test]
fn small_form_evaluations_reduce_to_scaled_zeta_values() {
    // n = 0 collapses to 768 zeta_2(5): the constant coefficient vanishes.
    let form = linear_form(0);
    assert!(form.rho0.is_zero());
    assert_eq!(form.rho3, rat(768));
    let s0 = s_eval_against(&form, &zeta2(5, 48).unwrap(), 48).unwrap();
    let direct = zeta2(5, 48).unwrap().scale_rational(&rat(768));
    assert!(s0.agrees_to(&direct, s0.precision().min(direct.precision())));
    assert_eq!(s0.valuation(), Some(5), "v2(768) - 3 = 5");
}

#[test]
fn audited_forms_clear_the_proven_denominators_along_the_table() {
    for form in linear_form_table(24) {
        let report = audit_integrality_with(form.n, &form.rho0, &form.rho3).unwrap();
        assert!(report.lemma.all(), "lemma flags at n = {}", form.n);
        assert!(
            report.conjecture.all(),
            "conjectural flags observed to hold at n = {}",
            form.n
        );
        // The audited valuation floor feeds the scaled-form construction:
        // d_n^6 rho0 integral means v_p(rho0) >= -6 v_p(d_n) at every p.
        for (&p, &(v0, _)) in &report.valuations {
            let cap = 6 * padic_zeta::primes::floor_log(p, form.n.max(1)) as i64;
            assert!(
                v0 >= Valuation::Finite(-cap),
                "n = {}, p = {p}: v = {v0}, cap = {cap}",
                form.n
            );
        }
    }
}

#[test]
fn determinant_growth_matches_the_closed_form_scale() {
    // The closed form 3 * 2^(16n+18) / (n+1)^5 fixes the determinant's
    // 2-adic valuation; check it against vp of the recomputed product.
    let table = linear_form_table(9);
    for pair in table.windows(2) {
        let n = pair[0].n;
        let det = &pair[0].rho0 * &pair[1].rho3 - &pair[1].rho0 * &pair[0].rho3;
        let expected =
            Rat::from_integer(rat(3).to_integer()) * two_pow(16 * n as i64 + 18)
                / Rat::from_integer(rat(n as i64 + 1).to_integer().pow(5));
        assert_eq!(det, expected);
        let shift = 5 * (n + 1).trailing_zeros() as i64;
        assert_eq!(
            vp(&det, 2).unwrap(),
            Valuation::Finite(16 * n as i64 + 18 - shift)
        );
    }
}
