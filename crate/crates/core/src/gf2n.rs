//! Binary fields GF(2^n) in a polynomial basis, 2 <= n <= 32.
//!
//! An element is the coefficient vector of a polynomial in `t`, the residue
//! class of `x` modulo the defining polynomial, packed into a `u32` with bit
//! `i` holding the coefficient of `t^i`.
//!
//! Besides the ring operations, [`FieldCtx`] hosts the solvers the congruence
//! predictors need: the absolute trace, the quadratic trace
//! `Q(a) = sum_{i<j} a^(2^i + 2^j)`, Artin-Schreier solutions of
//! `y^2 + y = c`, cube roots for odd `n`, and the quartic equation
//! `b^4 + b = c + 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2_linalg;
use crate::poly2;
use crate::spec_string::KeyValues;

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 32;

/// Element of GF(2^n); bit `i` is the coefficient of `t^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

/// Lowercase hex of the coefficient vector.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl serde::Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::LowerHex for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// An immutable description of GF(2^n) together with precomputed data:
/// the trace as a bit mask, the trace-dual basis and a primitive element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    n: u32,
    poly: u64,
    trace_mask: u32,
    dual: Vec<FieldElement>,
    primitive: FieldElement,
}

impl FieldCtx {
    /// Builds GF(2^n). Without an explicit polynomial the smallest monic
    /// irreducible polynomial of degree `n` (by integer encoding) is used.
    pub fn new(n: u32, poly: Option<u64>) -> Result<FieldCtx> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::InvalidDegree {
                n,
                reason: format!("binary fields need {MIN_DEGREE} <= n <= {MAX_DEGREE}"),
            });
        }
        let poly = match poly {
            Some(p) => {
                if poly2::degree(p) != Some(n) {
                    return Err(Error::InvalidPolynomial {
                        poly: format!("{p:#x}"),
                        reason: format!("not monic of degree {n}"),
                    });
                }
                if let Some(defect) = poly2::irreducibility_defect(p, n) {
                    return Err(Error::InvalidPolynomial {
                        poly: format!("{p:#x} ({})", poly2::to_pretty(p)),
                        reason: format!("reducible: {defect}"),
                    });
                }
                p
            }
            None => default_polynomial(n),
        };
        let mut ctx = FieldCtx {
            n,
            poly,
            trace_mask: 0,
            dual: Vec::new(),
            primitive: FieldElement::ONE,
        };
        ctx.trace_mask = (0..n)
            .filter(|&i| !ctx.trace_by_conjugates(FieldElement(1 << i)).is_zero())
            .fold(0, |m, i| m | (1 << i));
        ctx.dual = ctx.compute_dual_basis();
        ctx.primitive = ctx.find_primitive();
        Ok(ctx)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Defining polynomial including the leading bit.
    #[inline]
    pub fn poly(&self) -> u64 {
        self.poly
    }

    /// Field size `q = 2^n`.
    #[inline]
    pub fn order(&self) -> u64 {
        1u64 << self.n
    }

    #[inline]
    fn mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// The residue class `t` of `x`.
    #[inline]
    pub fn t(&self) -> FieldElement {
        FieldElement(2)
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if bits & !self.mask() != 0 {
            return Err(Error::Domain(format!(
                "{bits:#x} has bits above position {} in GF(2^{})",
                self.n - 1,
                self.n
            )));
        }
        Ok(FieldElement(bits))
    }

    pub fn parse_element(&self, hex: &str) -> Result<FieldElement> {
        let digits = hex.trim().trim_start_matches("0x");
        let bits = u32::from_str_radix(digits, 16)
            .map_err(|e| Error::Parse(format!("field element {hex:?}: {e}")))?;
        self.element(bits)
    }

    /// All field elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(|b| FieldElement(b as u32))
    }

    #[inline]
    fn reduce(&self, mut p: u64) -> FieldElement {
        let n = self.n;
        while p >> n != 0 {
            let d = 63 - p.leading_zeros();
            p ^= self.poly << (d - n);
        }
        FieldElement(p as u32)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut acc = 0u64;
        let mut x = a.0 as u64;
        let mut y = b.0;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        self.reduce(acc)
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        // squaring spreads the bits: sum a_i t^(2i)
        let mut acc = 0u64;
        let mut bits = a.0;
        while bits != 0 {
            let i = bits.trailing_zeros();
            acc |= 1u64 << (2 * i);
            bits &= bits - 1;
        }
        self.reduce(acc)
    }

    /// `a^e` by square-and-multiply with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut result = FieldElement::ONE;
        let mut base = a;
        while e != 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        result
    }

    /// `a^(q-2)`: the inverse for `a != 0` and `0` at zero.
    #[inline]
    pub fn inv_or_zero(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.order() - 2)
    }

    /// Absolute trace, evaluated as the parity of `a & trace_mask`.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> bool {
        (a.0 & self.trace_mask).count_ones() & 1 == 1
    }

    /// Bit mask `m` with `Tr(a) = parity(a & m)`.
    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    /// `a + a^2 + ... + a^(2^(n-1))` as a field element; always 0 or 1.
    pub fn trace_by_conjugates(&self, a: FieldElement) -> FieldElement {
        let mut c = a;
        let mut sum = FieldElement::ZERO;
        for _ in 0..self.n {
            sum += c;
            c = self.square(c);
        }
        sum
    }

    /// `Q(a) = sum_{0 <= i < j < n} a^(2^i) a^(2^j)`, the second elementary
    /// symmetric function of the conjugates of `a`, accumulated in one pass.
    pub fn quadratic_trace(&self, a: FieldElement) -> bool {
        let mut partial = FieldElement::ZERO;
        let mut e2 = FieldElement::ZERO;
        let mut c = a;
        for _ in 0..self.n {
            e2 += self.mul(partial, c);
            partial += c;
            c = self.square(c);
        }
        debug_assert!(e2.0 <= 1, "Q({a}) = {e2} is not in GF(2)");
        e2.0 == 1
    }

    /// `Q(a)` from ordinary traces: the index pairs `(i, i+d)` form Frobenius
    /// orbits, giving `sum_{1 <= d < n/2} Tr(a^(1+2^d))`, plus for even `n`
    /// the half orbit `d = n/2`, a trace down from GF(2^(n/2)).
    pub fn quadratic_trace_via_traces(&self, a: FieldElement) -> bool {
        let n = self.n;
        let mut value = false;
        for d in 1..=(n - 1) / 2 {
            let b = self.mul(a, self.pow(a, 1u64 << d));
            value ^= self.trace(b);
        }
        if n % 2 == 0 {
            let mut c = self.mul(a, self.pow(a, 1u64 << (n / 2)));
            let mut sum = FieldElement::ZERO;
            for _ in 0..n / 2 {
                sum += c;
                c = self.square(c);
            }
            debug_assert!(sum.0 <= 1);
            value ^= sum.0 == 1;
        }
        value
    }

    /// Solves `y^2 + y = c`. Returns the smaller of the two roots `{y, y+1}`,
    /// or `None` when `Tr(c) = 1`.
    pub fn half_trace_solve(&self, c: FieldElement) -> Option<FieldElement> {
        if self.trace(c) {
            return None;
        }
        let y = if self.n % 2 == 1 {
            // half-trace: sum_{i <= (n-1)/2} c^(4^i)
            let mut term = c;
            let mut h = FieldElement::ZERO;
            for _ in 0..=(self.n - 1) / 2 {
                h += term;
                term = self.square(self.square(term));
            }
            h
        } else {
            let columns: Vec<u32> = (0..self.n)
                .map(|i| {
                    let b = FieldElement(1 << i);
                    (self.square(b) + b).0
                })
                .collect();
            FieldElement(gf2_linalg::solve(&columns, c.0)?)
        };
        debug_assert_eq!(self.square(y) + y, c);
        Some(y.min(y + FieldElement::ONE))
    }

    /// The unique cube root for odd `n`, `a^s` with `3s = 1 mod (2^n - 1)`.
    pub fn cube_root(&self, a: FieldElement) -> Result<FieldElement> {
        if self.n % 2 == 0 {
            return Err(Error::UnsupportedDegree {
                n: self.n,
                reason: "cubing is a bijection only for odd n".into(),
            });
        }
        Ok(self.pow(a, self.cube_root_exponent()))
    }

    /// `3^-1 mod (2^n - 1)` for odd `n`.
    pub fn cube_root_exponent(&self) -> u64 {
        let m = self.order() - 1;
        // 2^n - 1 = 1 mod 3 for odd n, so 3 * (2^(n+1) - 1)/3 = 2(2^n - 1) + 1
        debug_assert!(self.n % 2 == 1);
        let s = ((m << 1) + 1) / 3;
        debug_assert_eq!((3 * s as u128) % m as u128, 1);
        s
    }

    /// Solves `b^4 + b = c + 1` for odd `n` and returns the root with
    /// `Tr(b) = 0`. The kernel of `b -> b^4 + b` is `{0, 1}` when `n` is odd,
    /// so roots come in pairs `{b, b+1}` with opposite traces.
    pub fn solve_beta(&self, c: FieldElement) -> Result<Option<FieldElement>> {
        if self.n % 2 == 0 {
            return Err(Error::UnsupportedDegree {
                n: self.n,
                reason: "the quartic equation is only used for odd n".into(),
            });
        }
        let columns: Vec<u32> = (0..self.n)
            .map(|i| {
                let b = FieldElement(1 << i);
                (self.square(self.square(b)) + b).0
            })
            .collect();
        let rhs = c + FieldElement::ONE;
        Ok(gf2_linalg::solve(&columns, rhs.0).map(|raw| {
            let b = FieldElement(raw);
            if self.trace(b) {
                b + FieldElement::ONE
            } else {
                b
            }
        }))
    }

    /// The basis `d_0..d_{n-1}` with `Tr(t^i d_j) = [i = j]`.
    pub fn dual_basis(&self) -> &[FieldElement] {
        &self.dual
    }

    fn compute_dual_basis(&self) -> Vec<FieldElement> {
        // column k is the image of t^k under d -> (Tr(t^i d))_i
        let columns: Vec<u32> = (0..self.n)
            .map(|k| {
                (0..self.n)
                    .filter(|&i| self.trace(self.mul(FieldElement(1 << i), FieldElement(1 << k))))
                    .fold(0u32, |m, i| m | (1 << i))
            })
            .collect();
        (0..self.n)
            .map(|j| {
                let d = gf2_linalg::solve(&columns, 1 << j)
                    .expect("trace form is nondegenerate; singular trace matrix");
                FieldElement(d)
            })
            .collect()
    }

    /// A fixed primitive element: the smallest encoding generating the
    /// multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    fn find_primitive(&self) -> FieldElement {
        let group = self.order() - 1;
        let primes = prime_factors(group);
        (2..self.order())
            .map(|b| FieldElement(b as u32))
            .find(|&g| {
                primes
                    .iter()
                    .all(|&p| self.pow(g, group / p) != FieldElement::ONE)
            })
            .unwrap_or(FieldElement::ONE)
    }

    /// `[g^0, g^1, ..., g^(q-2)]`.
    pub fn powers(&self, g: FieldElement) -> Vec<FieldElement> {
        let len = (self.order() - 1) as usize;
        let mut out = Vec::with_capacity(len);
        let mut x = FieldElement::ONE;
        for _ in 0..len {
            out.push(x);
            x = self.mul(x, g);
        }
        out
    }

    /// `n=<int>,poly=0x<hex>`.
    pub fn spec_string(&self) -> String {
        format!("n={},poly={:#x}", self.n, self.poly)
    }

    pub(crate) fn from_key_values(kv: &KeyValues) -> Result<FieldCtx> {
        let n = kv.required_u32("n")?;
        let poly = kv.optional_hex("poly")?;
        FieldCtx::new(n, poly)
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldCtx> {
        let kv = KeyValues::parse(s, &["n", "poly"])?;
        FieldCtx::from_key_values(&kv)
    }
}

fn default_polynomial(n: u32) -> u64 {
    // odd constant term is necessary, the search always succeeds
    ((1u64 << n) + 1..1u64 << (n + 1))
        .step_by(2)
        .find(|&p| poly2::irreducibility_defect(p, n).is_none())
        .expect("irreducible polynomials exist in every degree")
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}
