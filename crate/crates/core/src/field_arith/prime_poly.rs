//! Dense polynomials over F_p stored low degree first, used to pick moduli.

pub(crate) fn mulmod_u(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn trim(f: &mut Vec<u64>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_u(r, a, p);
        }
        a = mulmod_u(a, a, p);
        e >>= 1;
    }
    r
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn rem_monic(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let n = m.len() - 1;
    if a.len() <= n {
        return a;
    }
    for i in (n..a.len()).rev() {
        let c = a[i];
        if c == 0 {
            continue;
        }
        for j in 0..n {
            let s = mulmod_u(c, m[j], p);
            a[i - n + j] = (a[i - n + j] + p - s) % p;
        }
        a[i] = 0;
    }
    a.truncate(n.max(1));
    a
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulmod_u(x, y, p)) % p;
        }
    }
    rem_monic(prod, m, p)
}

fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = rem_monic(base.to_vec(), m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_rem(&r, &b, m, p);
        }
        b = mul_rem(&b, &b, m, p);
        e >>= 1;
    }
    r
}

/// Polynomial gcd over F_p, normalized monic.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let lead = inv_mod(*b.last().unwrap(), p);
        let bm: Vec<u64> = b.iter().map(|&c| mulmod_u(c, lead, p)).collect();
        let mut r = rem_monic(a, &bm, p);
        trim(&mut r);
        a = bm;
        b = r;
    }
    let lead = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|&c| mulmod_u(c, lead, p)).collect()
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rabin's test for a monic polynomial of degree n over F_p.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = (f.len() - 1) as u32;
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // xp[i] = X^{p^i} mod f
    let mut xp = vec![rem_monic(x.clone(), f, p)];
    for i in 0..n as usize {
        let next = pow_rem(&xp[i], p, f, p);
        xp.push(next);
    }
    let mut top = xp[n as usize].clone();
    trim(&mut top);
    let mut xr = rem_monic(x.clone(), f, p);
    trim(&mut xr);
    if top != xr {
        return false;
    }
    for r in prime_factors(n as u64) {
        let k = (n as u64 / r) as usize;
        let mut h = xp[k].clone();
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        let g = gcd(f, &h, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree n, comparing
/// coefficients from X^{n-1} downwards.
pub(crate) fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    let count = p.pow(n);
    for code in 0..count {
        let mut f = Vec::with_capacity(n as usize + 1);
        let mut c = code;
        for _ in 0..n {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if n > 1 && f[0] == 0 {
            continue;
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
