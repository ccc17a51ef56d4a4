//! The Galois ring GR(2^k, n) = (Z/2^k)[x]/(f), where `f` is the {0,1}
//! coefficient lift of the field's defining polynomial.
//!
//! Teichmüller representatives are computed intrinsically: lifting `a`
//! coefficient-wise and iterating `u -> u^(2^n)` converges to the unique
//! `(q-1)`-th root of unity (or zero) reducing to `a`. On such elements the
//! Frobenius automorphism is plain squaring, so the lifted trace
//! `T(a) = sum_i w(a)^(2^i)` and lifted quadratic trace
//! `Q(a) = sum_{i<j} w(a)^(2^i + 2^j)` are Frobenius-fixed and therefore
//! integer residues mod 2^k.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2n::{FieldCtx, FieldElement};
use crate::residue::{mask, IntResidue};
use crate::spec_string::KeyValues;

pub const MAX_PRECISION: u32 = 32;

/// `n` coefficients mod 2^k, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    coeffs: Vec<u64>,
}

impl RingElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The constant coefficient if every other coordinate vanishes.
    pub fn as_scalar(&self) -> Option<u64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }
}

/// Comma-separated decimal coefficients, constant term first.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RingCtx {
    base: FieldCtx,
    k: u32,
    mask: u64,
    /// f_0..f_{n-1}; the leading coefficient 1 is implicit.
    lifted: Vec<u64>,
    tau: RingElement,
}

impl RingCtx {
    pub fn new(base: FieldCtx, k: u32) -> Result<RingCtx> {
        if !(1..=MAX_PRECISION).contains(&k) {
            return Err(Error::Config(format!(
                "ring precision k={k} outside 1..={MAX_PRECISION}"
            )));
        }
        let n = base.degree() as usize;
        let lifted = (0..n).map(|i| (base.poly() >> i) & 1).collect();
        let mut ctx = RingCtx {
            base,
            k,
            mask: mask(k),
            lifted,
            tau: RingElement { coeffs: vec![0; n] },
        };
        let t = ctx.base.t();
        ctx.tau = ctx.teichmuller_fixpoint(t)?;
        Ok(ctx)
    }

    #[inline]
    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    #[inline]
    pub fn precision(&self) -> u32 {
        self.k
    }

    #[inline]
    fn n(&self) -> usize {
        self.lifted.len()
    }

    /// Lifted defining polynomial, all n+1 coefficients.
    pub fn lifted_poly(&self) -> Vec<u64> {
        let mut p = self.lifted.clone();
        p.push(1);
        p
    }

    /// Teichmüller lift of `t`.
    pub fn tau(&self) -> &RingElement {
        &self.tau
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            coeffs: vec![0; self.n()],
        }
    }

    pub fn scalar(&self, c: u64) -> RingElement {
        let mut e = self.zero();
        e.coeffs[0] = c & self.mask;
        e
    }

    pub fn one(&self) -> RingElement {
        self.scalar(1)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<RingElement> {
        if coeffs.len() != self.n() {
            return Err(Error::Domain(format!(
                "expected {} coefficients, got {}",
                self.n(),
                coeffs.len()
            )));
        }
        Ok(RingElement {
            coeffs: coeffs.iter().map(|c| c & self.mask).collect(),
        })
    }

    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        let coeffs = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("ring coefficient {c:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs)
    }

    /// Coefficient-wise {0,1} lift.
    pub fn lift(&self, a: FieldElement) -> RingElement {
        RingElement {
            coeffs: (0..self.n()).map(|i| ((a.bits() >> i) & 1) as u64).collect(),
        }
    }

    /// Reduction modulo 2.
    pub fn residue(&self, u: &RingElement) -> FieldElement {
        let bits = u
            .coeffs
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &c)| acc | (((c & 1) as u32) << i));
        self.base
            .element(bits)
            .expect("reduction stays inside the field")
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.wrapping_add(*y) & self.mask)
                .collect(),
        }
    }

    pub fn add_assign(&self, a: &mut RingElement, b: &RingElement) {
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x = x.wrapping_add(*y) & self.mask;
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.wrapping_sub(*y) & self.mask)
                .collect(),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        RingElement {
            coeffs: a
                .coeffs
                .iter()
                .map(|x| x.wrapping_neg() & self.mask)
                .collect(),
        }
    }

    pub fn scale(&self, a: &RingElement, c: u64) -> RingElement {
        RingElement {
            coeffs: a
                .coeffs
                .iter()
                .map(|x| x.wrapping_mul(c) & self.mask)
                .collect(),
        }
    }

    /// Product reduced mod (f, 2^k). Arithmetic wraps mod 2^64, which is
    /// exact modulo every 2^k with k <= 64.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let n = self.n();
        let mut buf = [0u64; 2 * MAX_FIELD_DEGREE];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                buf[i + j] = buf[i + j].wrapping_add(x.wrapping_mul(y));
            }
        }
        for d in (n..2 * n - 1).rev() {
            let c = buf[d];
            if c == 0 {
                continue;
            }
            // x^n = -(f_0 + ... + f_{n-1} x^{n-1})
            for (i, &f) in self.lifted.iter().enumerate() {
                buf[d - n + i] = buf[d - n + i].wrapping_sub(c.wrapping_mul(f));
            }
        }
        RingElement {
            coeffs: buf[..n].iter().map(|c| c & self.mask).collect(),
        }
    }

    pub fn square(&self, a: &RingElement) -> RingElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &RingElement, mut e: u64) -> RingElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e != 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        result
    }

    /// `u^(2^n)`.
    fn pow_q(&self, u: &RingElement) -> RingElement {
        let mut v = u.clone();
        for _ in 0..self.n() {
            v = self.square(&v);
        }
        v
    }

    /// Each round of `u -> u^(2^n)` gains at least n bits of precision, so
    /// the lift is stable after ceil((k-1)/n) rounds; one more confirms it.
    fn teichmuller_fixpoint(&self, a: FieldElement) -> Result<RingElement> {
        let rounds = (self.k as usize).saturating_sub(1).div_ceil(self.n()) + 1;
        let mut u = self.lift(a);
        for _ in 0..rounds {
            let next = self.pow_q(&u);
            if next == u {
                return Ok(u);
            }
            u = next;
        }
        Err(Error::Internal(format!(
            "Teichmüller iteration for {a} not stable after {rounds} rounds"
        )))
    }

    /// Teichmüller representative w(a): w(0) = 0, w(a)^(q-1) = 1 otherwise,
    /// w(a) = a mod 2, and w is multiplicative.
    pub fn teichmuller(&self, a: FieldElement) -> RingElement {
        self.teichmuller_fixpoint(a)
            .expect("Teichmüller iteration converges for every element")
    }

    /// w(a) for every field element, indexed by encoding, built as powers of
    /// the lift of the field's primitive element.
    pub fn teichmuller_table(&self) -> Vec<RingElement> {
        let q = self.base.order() as usize;
        let g = self.base.primitive_element();
        let wg = self.teichmuller(g);
        let mut table = vec![self.zero(); q];
        let mut x = FieldElement::ONE;
        let mut w = self.one();
        for _ in 0..q - 1 {
            table[x.index()] = w.clone();
            x = self.base.mul(x, g);
            w = self.mul(&w, &wg);
        }
        table
    }

    fn expect_scalar(&self, u: &RingElement, what: &str) -> Result<IntResidue> {
        u.as_scalar()
            .map(|c| IntResidue::new(c, self.k))
            .ok_or_else(|| Error::Internal(format!("{what} is not Frobenius-fixed: [{u}]")))
    }

    /// `T(a) = sum_{i<n} w(a)^(2^i)` as a residue mod 2^k.
    pub fn lifted_trace(&self, a: FieldElement) -> Result<IntResidue> {
        self.lifted_trace_of(&self.teichmuller(a))
    }

    /// Lifted trace from a precomputed Teichmüller representative.
    pub fn lifted_trace_of(&self, w: &RingElement) -> Result<IntResidue> {
        let mut sum = self.zero();
        let mut c = w.clone();
        for _ in 0..self.n() {
            self.add_assign(&mut sum, &c);
            c = self.square(&c);
        }
        self.expect_scalar(&sum, "lifted trace")
    }

    /// `Q(a) = sum_{i<j} w(a)^(2^i + 2^j)` as a residue mod 2^k.
    pub fn lifted_quadratic_trace(&self, a: FieldElement) -> Result<IntResidue> {
        Ok(self.lifted_traces_of(&self.teichmuller(a))?.1)
    }

    /// Lifted trace and lifted quadratic trace in one pass over the
    /// conjugates (the first two elementary symmetric functions).
    pub fn lifted_traces_of(&self, w: &RingElement) -> Result<(IntResidue, IntResidue)> {
        let mut e1 = self.zero();
        let mut e2 = self.zero();
        let mut c = w.clone();
        for _ in 0..self.n() {
            let cross = self.mul(&e1, &c);
            self.add_assign(&mut e2, &cross);
            self.add_assign(&mut e1, &c);
            c = self.square(&c);
        }
        Ok((
            self.expect_scalar(&e1, "lifted trace")?,
            self.expect_scalar(&e2, "lifted quadratic trace")?,
        ))
    }

    /// Field spec followed by `,k=<int>`.
    pub fn spec_string(&self) -> String {
        format!("{},k={}", self.base.spec_string(), self.k)
    }
}

/// Ring elements use a fixed stack buffer in multiplication.
const MAX_FIELD_DEGREE: usize = crate::gf2n::MAX_DEGREE as usize;

impl FromStr for RingCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<RingCtx> {
        let kv = KeyValues::parse(s, &["n", "poly", "k"])?;
        let base = FieldCtx::from_key_values(&kv)?;
        RingCtx::new(base, kv.required_u32("k")?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: u32, k: u32) -> RingCtx {
        RingCtx::new(FieldCtx::new(n, None).unwrap(), k).unwrap()
    }

    #[test]
    fn gr_16_2_generator() {
        let r = ring(2, 4);
        assert_eq!(r.lifted_poly(), vec![1, 1, 1]);
        // x^3 - 1 = (x - 1)(x^2 + x + 1), so x is already Teichmüller
        assert_eq!(r.tau().coeffs(), &[0, 1]);
        let x = r.tau().clone();
        assert_eq!(r.mul(&x, &x).coeffs(), &[15, 15]);
        assert_eq!(r.teichmuller(r.base().t()), x);
    }

    #[test]
    fn tau_has_order_q_minus_one() {
        let r = ring(3, 4);
        assert_eq!(r.pow(r.tau(), 7), r.one());
        assert_eq!(r.residue(r.tau()), r.base().t());
    }

    #[test]
    fn teichmuller_basics() {
        let r = ring(3, 4);
        assert!(r.teichmuller(FieldElement::ZERO).is_zero());
        assert_eq!(r.teichmuller(FieldElement::ONE), r.one());
        for a in r.base().elements() {
            let w = r.teichmuller(a);
            assert_eq!(r.teichmuller(r.base().square(a)), r.square(&w));
            assert_eq!(r.residue(&w), a);
        }
    }

    #[test]
    fn table_matches_pointwise() {
        let r = ring(5, 7);
        let table = r.teichmuller_table();
        for a in r.base().elements() {
            assert_eq!(table[a.index()], r.teichmuller(a), "a={a}");
        }
    }

    #[test]
    fn multiplicativity() {
        let r = ring(4, 6);
        for a in r.base().elements() {
            for b in r.base().elements() {
                let lhs = r.teichmuller(r.base().mul(a, b));
                let rhs = r.mul(&r.teichmuller(a), &r.teichmuller(b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lifted_trace_examples() {
        let r = ring(2, 4);
        assert_eq!(r.lifted_trace(FieldElement::ZERO).unwrap().value(), 0);
        assert_eq!(r.lifted_trace(FieldElement::ONE).unwrap().value(), 2);
        // tau + tau^2 = -1
        assert_eq!(r.lifted_trace(r.base().t()).unwrap().value(), 15);
        let r = ring(7, 5);
        assert_eq!(r.lifted_trace(FieldElement::ONE).unwrap().value(), 7);
        assert_eq!(r.lifted_quadratic_trace(FieldElement::ONE).unwrap().value(), 21);
        assert_eq!(r.lifted_quadratic_trace(FieldElement::ZERO).unwrap().value(), 0);
    }

    #[test]
    fn quadratic_identity_gr_16_4() {
        let r = ring(4, 4);
        for a in r.base().elements() {
            let t = r.lifted_trace(a).unwrap().value();
            let q = r.lifted_quadratic_trace(a).unwrap().value();
            assert_eq!((2 * q) & 15, (t * t).wrapping_sub(t) & 15, "a={a}");
        }
    }

    #[test]
    fn large_precision_fixpoint() {
        let r = ring(2, 32);
        assert_eq!(r.pow(r.tau(), 3), r.one());
        let r = ring(9, 32);
        assert_eq!(r.pow(r.tau(), 511), r.one());
    }

    #[test]
    fn rejects_bad_precision() {
        let base = FieldCtx::new(3, None).unwrap();
        assert!(RingCtx::new(base.clone(), 0).is_err());
        assert!(RingCtx::new(base, 33).is_err());
    }

    #[test]
    fn text_forms() {
        let r: RingCtx = "n=2,poly=0x7,k=4".parse().unwrap();
        assert_eq!(r.spec_string(), "n=2,poly=0x7,k=4");
        let x = r.parse_element("15,15").unwrap();
        assert_eq!(x.to_string(), "15,15");
        assert!(r.parse_element("1,2,3").is_err());
    }
}
