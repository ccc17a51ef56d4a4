//! Polynomials over GF(2) packed into machine words (bit i = coefficient of x^i).
//!
//! Only what the irreducibility test needs: degrees stay below 64 and every
//! product is reduced modulo a defining polynomial of degree at most 32.

pub(crate) fn degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut a = a as u128;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// `a mod f` for a non-zero `f`.
pub(crate) fn rem(mut a: u128, f: u64) -> u64 {
    let df = degree(f).expect("division by the zero polynomial");
    let f = f as u128;
    while a != 0 {
        let da = 127 - a.leading_zeros();
        if da < df {
            break;
        }
        a ^= f << (da - df);
    }
    a as u64
}

pub(crate) fn mulmod(a: u64, b: u64, f: u64) -> u64 {
    rem(clmul(a, b), f)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a as u128, b);
        a = b;
        b = r;
    }
    a
}

/// Renders a polynomial as `x^3+x+1`.
pub(crate) fn to_pretty(p: u64) -> String {
    if p == 0 {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for i in (0..64).rev() {
        if (p >> i) & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    terms.join("+")
}

/// Checks that `f` (monic, degree `n`) is irreducible: x^(2^i) - x must be
/// coprime to `f` for 1 <= i < n, and x^(2^n) = x mod f.
pub(crate) fn irreducibility_defect(f: u64, n: u32) -> Option<String> {
    let x = 2u64;
    let mut r = rem(x as u128, f);
    for i in 1..n {
        r = mulmod(r, r, f);
        let g = gcd(f, r ^ x);
        if g != 1 {
            return Some(format!(
                "gcd(x^(2^{i}) - x, f) = {} is a nontrivial factor",
                to_pretty(g)
            ));
        }
    }
    r = mulmod(r, r, f);
    if r != rem(x as u128, f) {
        return Some(format!("x^(2^{n}) != x mod f"));
    }
    None
}
