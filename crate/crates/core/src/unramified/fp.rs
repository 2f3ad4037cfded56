//! Polynomials over F_p as `Vec<u64>`, constant term first.

pub(crate) type FpPoly = Vec<u64>;

pub(crate) fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so Fermat.
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    acc
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn rem(a: &FpPoly, g: &FpPoly, p: u64) -> FpPoly {
    let g = trim(g.clone());
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p);
    let mut r = trim(a.clone());
    while r.len() > dg {
        let k = r.len() - 1;
        let c = mulm(r[k], lead_inv, p);
        for j in 0..=dg {
            let t = mulm(c, g[j], p);
            r[k - dg + j] = (r[k - dg + j] + p - t) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul_mod(a: &FpPoly, b: &FpPoly, g: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    rem(&out, g, p)
}

pub(crate) fn pow_mod_poly(a: &FpPoly, e: u64, g: &FpPoly, p: u64) -> FpPoly {
    let mut acc = rem(&vec![1], g, p);
    let mut b = rem(a, g, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, g, p);
        }
        b = mul_mod(&b, &b, g, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let mut a = trim(a.clone());
    let mut b = trim(b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// `z^{p^k} mod g`.
fn frobenius_power_of_z(k: u32, g: &FpPoly, p: u64) -> FpPoly {
    let mut x = rem(&vec![0, 1], g, p);
    for _ in 0..k {
        x = pow_mod_poly(&x, p, g, p);
    }
    x
}

/// Rabin's test for a polynomial of degree `f >= 1` over F_p.
pub(crate) fn is_irreducible(g: &FpPoly, p: u64) -> bool {
    let g = trim(g.clone());
    if g.len() < 2 {
        return false;
    }
    let f = (g.len() - 1) as u32;
    let z = vec![0, 1];
    if sub(&frobenius_power_of_z(f, &g, p), &rem(&z, &g, p), p).is_empty() {
        for r in prime_factors(f) {
            let h = sub(&frobenius_power_of_z(f / r, &g, p), &z, p);
            if gcd(&g, &h, p).len() != 1 {
                return false;
            }
        }
        true
    } else {
        false
    }
}
