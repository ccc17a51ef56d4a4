//! Gauss sums `g(j) = -sum_x w(x)^(-j) (-1)^Tr(x)` in GR(2^k, n), the 2-adic
//! Gamma function, and the congruences relating them.
//!
//! At p = 2 the additive character takes values in {1, -1} and the uniformizer
//! is -2, so every quantity lives in the unramified ring. Each `g(j)` is fixed
//! by Frobenius and is returned as an integer residue mod 2^k.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galois_ring::{RingCtx, RingElement};
use crate::gf2n::FieldElement;
use crate::kloosterman::ksum_naive;
use crate::residue::{inverse_mod_pow2, IntResidue};

/// Binary digit sum.
#[inline]
pub fn wt2(j: u64) -> u32 {
    j.count_ones()
}

/// Teichmüller powers of a primitive element and the additive signs along
/// the same enumeration `x = g^i`.
struct Enumeration {
    powers: Vec<RingElement>,
    minus: Vec<bool>,
}

impl Enumeration {
    fn new(ring: &RingCtx) -> Enumeration {
        let field = ring.base();
        let g = field.primitive_element();
        let wg = ring.teichmuller(g);
        let len = (field.order() - 1) as usize;
        let mut powers = Vec::with_capacity(len);
        let mut minus = Vec::with_capacity(len);
        let mut w = ring.one();
        let mut x = FieldElement::ONE;
        for _ in 0..len {
            powers.push(w.clone());
            minus.push(field.trace(x));
            w = ring.mul(&w, &wg);
            x = field.mul(x, g);
        }
        Enumeration { powers, minus }
    }

    fn gauss_sum(&self, ring: &RingCtx, j: u64) -> Result<IntResidue> {
        let order = self.powers.len() as u64;
        let mut sum = ring.zero();
        for (i, &minus) in self.minus.iter().enumerate() {
            // w(g^i)^(-j) = w(g)^(-ij)
            let e = (order - (i as u64 * j) % order) % order;
            let term = &self.powers[e as usize];
            // -(-1)^Tr(x): subtract on even trace
            sum = if minus {
                ring.add(&sum, term)
            } else {
                ring.sub(&sum, term)
            };
        }
        sum.as_scalar()
            .map(|c| IntResidue::new(c, ring.precision()))
            .ok_or_else(|| Error::Internal(format!("g({j}) is not Frobenius-fixed: [{sum}]")))
    }
}

fn check_index(ring: &RingCtx, j: u64) -> Result<()> {
    let q = ring.base().order();
    if !(1..=q - 2).contains(&j) {
        return Err(Error::Domain(format!(
            "Gauss sum index j={j} outside [1, {}]",
            q - 2
        )));
    }
    Ok(())
}

/// `g(j)` for `1 <= j <= q - 2`.
pub fn gauss_sum(ring: &RingCtx, j: u64) -> Result<IntResidue> {
    check_index(ring, j)?;
    Enumeration::new(ring).gauss_sum(ring, j)
}

/// All Gauss sums `g(1), ..., g(q-2)` over one ring.
#[derive(Clone, Debug)]
pub struct GaussTable {
    ring: RingCtx,
    values: Vec<IntResidue>,
}

impl GaussTable {
    pub fn new(ring: RingCtx) -> Result<GaussTable> {
        let enumeration = Enumeration::new(&ring);
        let q = ring.base().order();
        let values = (1..=q - 2)
            .into_par_iter()
            .map(|j| enumeration.gauss_sum(&ring, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(GaussTable { ring, values })
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn get(&self, j: u64) -> Result<IntResidue> {
        check_index(&self.ring, j)?;
        Ok(self.values[(j - 1) as usize])
    }

    /// `(j, g(j))` in increasing `j`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, IntResidue)> + '_ {
        self.values.iter().enumerate().map(|(i, &g)| (i as u64 + 1, g))
    }
}

/// `g = (-2)^wt (mod 2^(wt+1))` together with `v_2(g) = wt`.
pub fn stickelberger_holds(g: IntResidue, j: u64) -> Result<bool> {
    let wt = wt2(j);
    if wt + 1 > g.bits() {
        return Err(Error::Config(format!(
            "checking j={j} (weight {wt}) needs precision >= {}, have {}",
            wt + 1,
            g.bits()
        )));
    }
    let expected = IntResidue::from_i64((-2i64).pow(wt), wt + 1);
    let congruence = g.reduce(wt + 1)? == expected;
    let valuation = g.valuation() == Some(wt);
    Ok(congruence && valuation)
}

pub fn stickelberger_check(ring: &RingCtx, j: u64) -> Result<bool> {
    check_index(ring, j)?;
    let wt = wt2(j);
    if wt + 1 > ring.precision() {
        return Err(Error::Config(format!(
            "j={j} has weight {wt}; ring precision must be at least {}",
            wt + 1
        )));
    }
    stickelberger_holds(gauss_sum(ring, j)?, j)
}

/// `Gamma_2(k) = (-1)^k prod_{t < k, t odd} t` at a natural number, mod 2^bits.
pub fn gamma2_natural(k: u64, bits: u32) -> IntResidue {
    let mut prod = 1u64;
    let mut t = 1u64;
    while t < k {
        prod = prod.wrapping_mul(t);
        t += 2;
    }
    if k % 2 == 1 {
        prod = prod.wrapping_neg();
    }
    IntResidue::new(prod, bits)
}

/// `Gamma_2` at a 2-adic argument known mod 2^m, evaluated at its natural
/// representative in `[0, 2^m)`. The value is well defined mod 2^m for
/// m != 2; at m = 2 it is only determined up to sign.
pub fn gamma2(x: IntResidue) -> IntResidue {
    gamma2_natural(x.value(), x.bits())
}

/// `(-2)^wt(j) prod_{i<n} Gamma_2(<2^i j / (q-1)>)`, with the fractional parts
/// taken as 2-adic numbers mod 2^m. The unit product is known mod 2^m, so the
/// result is known mod 2^(m + wt(j)) (at most 2^63).
pub fn gross_koblitz_rhs(n: u32, j: u64, m: u32) -> Result<IntResidue> {
    if !(2..=32).contains(&n) {
        return Err(Error::InvalidDegree {
            n,
            reason: "binary fields need 2 <= n <= 32".into(),
        });
    }
    let q_minus_1 = (1u64 << n) - 1;
    if !(1..q_minus_1).contains(&j) {
        return Err(Error::Domain(format!(
            "Gauss sum index j={j} outside [1, {}]",
            q_minus_1 - 1
        )));
    }
    if !(3..=IntResidue::MAX_BITS).contains(&m) {
        return Err(Error::Config(format!(
            "Gamma_2 continuity needs 3 <= m <= {}, got {m}",
            IntResidue::MAX_BITS
        )));
    }
    let unit = gk_unit_product(n, j, m);
    let wt = wt2(j);
    let bits = (m + wt).min(IntResidue::MAX_BITS);
    let sign = if wt % 2 == 1 { 1u64.wrapping_neg() } else { 1 };
    let value = unit.value().wrapping_mul(sign) << wt;
    Ok(IntResidue::new(value, bits))
}

/// The unit part `prod_{i<n} Gamma_2(<2^i j / (q-1)>) mod 2^m`.
pub fn gk_unit_product(n: u32, j: u64, m: u32) -> IntResidue {
    let q_minus_1 = (1u64 << n) - 1;
    let inv = inverse_mod_pow2(q_minus_1, m);
    let mut prod = IntResidue::new(1, m);
    let mut r = j % q_minus_1;
    for _ in 0..n {
        let arg = IntResidue::new(r.wrapping_mul(inv), m);
        prod = prod.mul(gamma2(arg));
        r = (2 * r) % q_minus_1;
    }
    prod
}

/// Compares a computed `g(j)` with the Gamma-product side at the precision of `g`.
pub fn gk_holds(g: IntResidue, n: u32, j: u64) -> Result<bool> {
    let rhs = gross_koblitz_rhs(n, j, g.bits())?;
    let common = g.bits().min(rhs.bits());
    Ok(g.reduce(common)? == rhs.reduce(common)?)
}

pub fn gk_check(ring: &RingCtx, j: u64) -> Result<bool> {
    check_index(ring, j)?;
    let wt = wt2(j);
    if ring.precision() < wt + 3 {
        return Err(Error::Config(format!(
            "j={j} has weight {wt}; ring precision must be at least {}",
            wt + 3
        )));
    }
    gk_holds(gauss_sum(ring, j)?, ring.base().degree(), j)
}

/// `-sum_{j=1}^{q-2} g(j)^2 w(a)^j` as a residue mod 2^n; the table's ring
/// must have precision `k = n`.
pub fn fourier_residue(table: &GaussTable, a: FieldElement) -> Result<IntResidue> {
    let ring = table.ring();
    let n = ring.base().degree();
    if ring.precision() != n {
        return Err(Error::Config(format!(
            "the congruence holds mod q = 2^{n}; ring precision is {}",
            ring.precision()
        )));
    }
    fourier_residue_of(table, &ring.teichmuller(a))
}

/// [`fourier_residue`] from a precomputed Teichmüller representative.
pub fn fourier_residue_of(table: &GaussTable, w: &RingElement) -> Result<IntResidue> {
    let ring = table.ring();
    let n = ring.base().degree();
    if ring.precision() != n {
        return Err(Error::Config(format!(
            "the congruence holds mod q = 2^{n}; ring precision is {}",
            ring.precision()
        )));
    }
    let mut power = ring.one();
    let mut sum = ring.zero();
    for (_, g) in table.iter() {
        power = ring.mul(&power, w);
        let g2 = g.mul(g).value();
        let term = ring.scale(&power, g2);
        ring.add_assign(&mut sum, &term);
    }
    let total = ring.neg(&sum);
    total
        .as_scalar()
        .map(|c| IntResidue::new(c, n))
        .ok_or_else(|| Error::Internal(format!("Fourier sum is not scalar: [{total}]")))
}

pub fn fourier_congruence_check(table: &GaussTable, a: FieldElement) -> Result<bool> {
    let predicted = fourier_residue(table, a)?;
    let exact = ksum_naive(table.ring().base(), a);
    Ok(predicted == IntResidue::from_i64(exact, predicted.bits()))
}
