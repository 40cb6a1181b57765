//! Integer helpers: primality, factorization by trial division, gcd/lcm and
//! multiplicative orders modulo an integer.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn checked_lcm(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Smallest `m >= 1` with `base^m = 1 (mod modulus)`; `None` when
/// `gcd(base, modulus) != 1`. For `modulus == 1` the answer is 1.
pub fn multiplicative_order_mod(base: u64, modulus: u64) -> Option<u64> {
    if modulus == 1 {
        return Some(1);
    }
    if gcd(base as u128, modulus as u128) != 1 {
        return None;
    }
    let b = base % modulus;
    let mut acc = b;
    let mut m = 1u64;
    while acc != 1 {
        acc = ((acc as u128 * b as u128) % modulus as u128) as u64;
        m += 1;
    }
    Some(m)
}

/// Order of an element of a group of known exponent `group_order`, given a
/// predicate telling whether `x^e` is the identity. Descends through the
/// prime factors of `group_order`.
pub fn order_by_descent(group_order: u128, mut is_identity_at: impl FnMut(u128) -> bool) -> u128 {
    let mut t = group_order;
    for r in prime_factors(group_order) {
        while t.is_multiple_of(r) && is_identity_at(t / r) {
            t /= r;
        }
    }
    t
}

/// `C(n, k) mod p` for prime `p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p64, k % p64);
        if ki > ni {
            return 0;
        }
        // C(ni, ki) with ni < p, as a product of ratios mod p
        let mut c = 1u64;
        for j in 0..ki {
            c = c * ((ni - j) % p64) % p64;
            c = c * inv_mod(j + 1, p64) % p64;
        }
        acc = acc * c % p64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut acc, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}
