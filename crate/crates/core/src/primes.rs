//! Primality, sieves, and the three denominator sequences used by the
//! integrality audits: `d_n = lcm(1..=n)`, the large-prime product `Phi_n`,
//! and the capped product `Psi_n`.

use num_traits::One;

use crate::rational::Int;

/// Deterministic Miller–Rabin for `u64` (the standard 12-base certificate).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// All primes `<= limit`, by Eratosthenes.
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Largest `k` with `p^k <= n` (zero when `p > n`).
pub fn floor_log(p: u64, n: u64) -> u32 {
    assert!(p >= 2);
    let mut k = 0u32;
    let mut pk = p;
    while pk <= n {
        k += 1;
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => break,
        }
    }
    k
}

/// `v_p(n!)` by Legendre's formula.
pub fn legendre_vp_factorial(n: u64, p: u64) -> u64 {
    assert!(p >= 2);
    let mut total = 0u64;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// `d_n = lcm(1, ..., n)`, as the product of maximal prime powers `<= n`.
pub fn d_lcm(n: u64) -> Int {
    let mut acc = Int::one();
    for p in sieve(n) {
        acc *= Int::from(p).pow(floor_log(p, n));
    }
    acc
}

/// Product of the primes `p <= n` with `p > 3` and `p^2 > 2n`.
///
/// These are exactly the primes large enough that each summand of the scaled
/// linear form is certified to carry at worst a bounded negative `p`-valuation,
/// so dividing them out of `d_n^6` is still integral.
pub fn phi_product(n: u64) -> Int {
    let mut acc = Int::one();
    for p in sieve(n) {
        if p > 3 && p * p > 2 * n {
            acc *= Int::from(p);
        }
    }
    acc
}

/// Product over primes `p <= n` of `p^min(6 floor(log_p n), 5 v_p(n!))`.
///
/// This caps the prime content of `d_n^6` by what `(n!)^5` can absorb; it is
/// the sharpened denominator predicted to clear the linear forms.
pub fn psi_product(n: u64) -> Int {
    let mut acc = Int::one();
    for p in sieve(n) {
        let cap = (6 * floor_log(p, n) as u64).min(5 * legendre_vp_factorial(n, p));
        acc *= Int::from(p).pow(cap as u32);
    }
    acc
}

/// Factor `x` over the primes `<= bound`; `None` if a larger factor remains.
pub fn factor_smooth(x: &Int, bound: u64) -> Option<Vec<(u64, u64)>> {
    use num_traits::Zero;
    let mut m = x.magnitude().clone();
    if m.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    for p in sieve(bound) {
        let p_big = num_bigint::BigUint::from(p);
        let mut e = 0u64;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&m, &p_big);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        if m.is_one() {
            break;
        }
    }
    if m.is_one() {
        Some(out)
    } else {
        None
    }
}
