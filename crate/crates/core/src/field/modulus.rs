//! Dense polynomials over a prime field F_p, used only to choose and validate
//! the defining modulus of F_{p^n}. Coefficients are stored low degree first.

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - factor * c % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `m` of degree `n` is irreducible iff
/// `gcd(x^{p^k} - x, m) = 1` for every `1 <= k <= n/2`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let p64 = p as u64;
    let m: Poly = trim(m.iter().map(|&c| c as u64 % p64).collect());
    if m.len() < 2 {
        return false;
    }
    let n = m.len() - 1;
    if n == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut frob = rem(&x, &m, p64);
    for _ in 1..=n / 2 {
        frob = pow_mod(&frob, p64, &m, p64);
        let mut diff = frob.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p64 - 1) % p64;
        let g = gcd(&diff, &m, p64);
        if g.len() > 1 {
            return false;
        }
        if g.is_empty() {
            // x^{p^k} - x is divisible by m, so m splits over F_{p^k}
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree `n` over F_p, where candidates are
/// ordered by the integer `sum c_i p^i` over their low coefficients
/// `c_0..c_{n-1}`.
pub fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(n as usize + 1);
        let mut rest = code;
        for _ in 0..n {
            coeffs.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        coeffs.push(1);
        if n > 1 && coeffs[0] == 0 {
            continue;
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
