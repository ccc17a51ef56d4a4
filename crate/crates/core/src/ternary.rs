//! Ternary fields GF(3^n), 1 <= n <= 12, and ternary Kloosterman sums.
//!
//! Elements are unpacked digit vectors mod 3. With `w` a primitive cube root
//! of unity, `K(a) = N0 + N1 w + N2 w^2` where `N_c` counts the `x` with
//! `Tr(x^(q-2) + a x) = c`; the sum is a rational integer exactly when
//! `N1 = N2`, and then equals `N0 - N1`.

use crate::error::{Error, Result};

pub const MAX_TERNARY_DEGREE: u32 = 12;
const WIDTH: usize = MAX_TERNARY_DEGREE as usize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TernaryElement {
    digits: [u8; WIDTH],
}

impl TernaryElement {
    pub const ZERO: TernaryElement = TernaryElement { digits: [0; WIDTH] };

    pub fn digits(&self) -> &[u8; WIDTH] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryFieldCtx {
    n: u32,
    /// n+1 coefficients, constant term first, leading 1.
    poly: Vec<u8>,
    /// Tr(t^m) for 0 <= m <= 2n-2.
    power_traces: Vec<u8>,
}

impl TernaryFieldCtx {
    /// GF(3^n); the default polynomial is the smallest monic irreducible one
    /// under the encoding `sum c_i 3^i`.
    pub fn new(n: u32, poly: Option<Vec<u8>>) -> Result<TernaryFieldCtx> {
        if !(1..=MAX_TERNARY_DEGREE).contains(&n) {
            return Err(Error::InvalidDegree {
                n,
                reason: format!("ternary fields need 1 <= n <= {MAX_TERNARY_DEGREE}"),
            });
        }
        let poly = match poly {
            Some(p) => {
                if p.len() != n as usize + 1 || p[n as usize] != 1 || p.iter().any(|&c| c > 2) {
                    return Err(Error::InvalidPolynomial {
                        poly: format!("{p:?}"),
                        reason: format!("not a monic degree-{n} polynomial over GF(3)"),
                    });
                }
                if let Some(factor) = smallest_factor(&p) {
                    return Err(Error::InvalidPolynomial {
                        poly: poly3_pretty(&p),
                        reason: format!("reducible, divisible by {}", poly3_pretty(&factor)),
                    });
                }
                p
            }
            None => (0..3u64.pow(n))
                .map(|low| {
                    let mut p = digits_of(low, n as usize);
                    p.push(1);
                    p
                })
                .find(|p| smallest_factor(p).is_none())
                .expect("irreducible polynomials exist in every degree"),
        };
        let mut ctx = TernaryFieldCtx {
            n,
            poly,
            power_traces: Vec::new(),
        };
        let mut t_pow = ctx.one();
        let t = ctx.monomial(1);
        for _ in 0..(2 * n - 1) {
            let tr = ctx.trace_by_conjugates(t_pow);
            ctx.power_traces.push(tr);
            t_pow = ctx.mul(t_pow, t);
        }
        Ok(ctx)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn poly(&self) -> &[u8] {
        &self.poly
    }

    pub fn order(&self) -> u64 {
        3u64.pow(self.n)
    }

    pub fn one(&self) -> TernaryElement {
        let mut e = TernaryElement::ZERO;
        e.digits[0] = 1;
        e
    }

    /// `t^i` for i < n (t = x itself when n = 1 reduces to a constant).
    fn monomial(&self, i: usize) -> TernaryElement {
        if self.n == 1 {
            // x = -poly[0] in GF(3)
            let mut e = TernaryElement::ZERO;
            e.digits[0] = if i == 0 { 1 } else { (3 - self.poly[0]) % 3 };
            return e;
        }
        let mut e = TernaryElement::ZERO;
        e.digits[i] = 1;
        e
    }

    /// Element with base-3 digits of `index`.
    pub fn element(&self, index: u64) -> Result<TernaryElement> {
        if index >= self.order() {
            return Err(Error::Domain(format!(
                "index {index} outside GF(3^{})",
                self.n
            )));
        }
        let mut e = TernaryElement::ZERO;
        for (i, d) in digits_of(index, self.n as usize).into_iter().enumerate() {
            e.digits[i] = d;
        }
        Ok(e)
    }

    pub fn index(&self, a: TernaryElement) -> u64 {
        a.digits[..self.n as usize]
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * 3 + d as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = TernaryElement> + '_ {
        (0..self.order()).map(|i| self.element(i).expect("index in range"))
    }

    pub fn add(&self, a: TernaryElement, b: TernaryElement) -> TernaryElement {
        let mut out = TernaryElement::ZERO;
        for i in 0..self.n as usize {
            out.digits[i] = (a.digits[i] + b.digits[i]) % 3;
        }
        out
    }

    pub fn mul(&self, a: TernaryElement, b: TernaryElement) -> TernaryElement {
        let n = self.n as usize;
        let mut buf = [0u32; 2 * WIDTH];
        for i in 0..n {
            if a.digits[i] == 0 {
                continue;
            }
            for j in 0..n {
                buf[i + j] += (a.digits[i] * b.digits[j]) as u32;
            }
        }
        for d in (n..2 * n - 1).rev() {
            let c = buf[d] % 3;
            if c == 0 {
                continue;
            }
            // x^n = -(p_0 + ... + p_{n-1} x^{n-1})
            for i in 0..n {
                buf[d - n + i] += 3 * 3 - c * self.poly[i] as u32;
            }
        }
        let mut out = TernaryElement::ZERO;
        for i in 0..n {
            out.digits[i] = (buf[i] % 3) as u8;
        }
        out
    }

    pub fn pow(&self, a: TernaryElement, mut e: u64) -> TernaryElement {
        let mut result = self.one();
        let mut base = a;
        while e != 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `a^(q-2)`, zero at zero.
    pub fn inv_or_zero(&self, a: TernaryElement) -> TernaryElement {
        self.pow(a, self.order() - 2)
    }

    fn trace_by_conjugates(&self, a: TernaryElement) -> u8 {
        let mut sum = TernaryElement::ZERO;
        let mut c = a;
        for _ in 0..self.n {
            sum = self.add(sum, c);
            c = self.pow(c, 3);
        }
        debug_assert!(sum.digits[1..].iter().all(|&d| d == 0));
        sum.digits[0]
    }

    /// Absolute trace GF(3^n) -> GF(3).
    pub fn trace(&self, a: TernaryElement) -> u8 {
        let s: u32 = (0..self.n as usize)
            .map(|i| a.digits[i] as u32 * self.power_traces[i] as u32)
            .sum();
        (s % 3) as u8
    }

    /// Coefficients `w` with `Tr(a x) = sum_j w_j x_j`.
    fn trace_form(&self, a: TernaryElement) -> [u8; WIDTH] {
        let n = self.n as usize;
        let mut w = [0u8; WIDTH];
        for (j, wj) in w.iter_mut().enumerate().take(n) {
            let s: u32 = (0..n)
                .map(|i| a.digits[i] as u32 * self.power_traces[i + j] as u32)
                .sum();
            *wj = (s % 3) as u8;
        }
        w
    }
}

/// `N_0 - N_1` after checking `N_1 = N_2`.
fn settle(counts: [i64; 3], what: &str) -> Result<i64> {
    if counts[1] != counts[2] {
        return Err(Error::Internal(format!(
            "ternary Kloosterman sum {what} is not rational: N = {counts:?}"
        )));
    }
    Ok(counts[0] - counts[1])
}

/// Ternary Kloosterman sum at one point, by direct summation.
pub fn ternary_ksum(ctx: &TernaryFieldCtx, a: TernaryElement) -> Result<i64> {
    let mut counts = [0i64; 3];
    for x in ctx.elements() {
        let arg = ctx.add(ctx.inv_or_zero(x), ctx.mul(a, x));
        counts[ctx.trace(arg) as usize] += 1;
    }
    settle(counts, &format!("at index {}", ctx.index(a)))
}

/// Ternary Kloosterman sums for every element, indexed by [`TernaryFieldCtx::index`].
pub fn ternary_ksum_all(ctx: &TernaryFieldCtx) -> Result<Vec<i64>> {
    let n = ctx.n as usize;
    let elements: Vec<TernaryElement> = ctx.elements().collect();
    let inv_traces: Vec<u8> = elements
        .iter()
        .map(|&x| ctx.trace(ctx.inv_or_zero(x)))
        .collect();
    elements
        .iter()
        .map(|&a| {
            let w = ctx.trace_form(a);
            let mut counts = [0i64; 3];
            for (x, &it) in elements.iter().zip(&inv_traces) {
                let lin: u32 = (0..n).map(|j| w[j] as u32 * x.digits[j] as u32).sum();
                counts[((lin + it as u32) % 3) as usize] += 1;
            }
            settle(counts, &format!("at index {}", ctx.index(a)))
        })
        .collect()
}

fn digits_of(mut value: u64, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            let d = (value % 3) as u8;
            value /= 3;
            d
        })
        .collect()
}

/// Remainder of `a` by a monic `m` over GF(3).
fn poly3_rem(a: &[u8], m: &[u8]) -> Vec<u8> {
    let dm = m.len() - 1;
    let mut r: Vec<u8> = a.to_vec();
    while r.len() > dm {
        let lead = *r.last().expect("non-empty");
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + 3 * 3 - lead * c) % 3;
            }
        }
        r.pop();
    }
    r
}

/// A monic factor of degree `1..=deg/2`, if any, by trial division.
fn smallest_factor(p: &[u8]) -> Option<Vec<u8>> {
    let deg = p.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..3u64.pow(d as u32) {
            let mut m = digits_of(low, d);
            m.push(1);
            if poly3_rem(p, &m).iter().all(|&c| c == 0) {
                return Some(m);
            }
        }
    }
    None
}

fn poly3_pretty(p: &[u8]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coef = if c == 2 && i > 0 { "2" } else { "" };
            match i {
                0 => c.to_string(),
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}
