//! Binary Kloosterman sums `K(a) = sum_x (-1)^Tr(x^(q-2) + a x)`.
//!
//! [`ksum_naive`] evaluates one value directly. [`ksum_all`] produces the whole
//! spectrum at once: with `x` in the polynomial basis and `a` written in the
//! trace-dual basis, `Tr(a x)` is the bit inner product of the two coordinate
//! vectors, so the spectrum is the Walsh-Hadamard transform of
//! `x -> (-1)^Tr(x^(q-2))`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2n::{FieldCtx, FieldElement};

pub const MAX_SPECTRUM_DEGREE: u32 = 24;

/// Exact Kloosterman values for every element, indexed by encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSpectrum {
    n: u32,
    values: Vec<i32>,
}

impl KSpectrum {
    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    #[inline]
    pub fn get(&self, a: FieldElement) -> i32 {
        self.values[a.index()]
    }

    /// Lists every violated spectrum invariant: `K(0) = 0`, `4 | K(a)`,
    /// `sum K(a) = q` and `sum K(a)^2 = q^2`.
    pub fn invariant_violations(&self) -> Vec<String> {
        let q = 1i64 << self.n;
        let mut out = Vec::new();
        if self.values[0] != 0 {
            out.push(format!("K(0) = {}", self.values[0]));
        }
        for (a, &v) in self.values.iter().enumerate() {
            if v.rem_euclid(4) != 0 {
                out.push(format!("K({a:x}) = {v} is not divisible by 4"));
            }
        }
        let sum: i64 = self.values.iter().map(|&v| v as i64).sum();
        if sum != q {
            out.push(format!("sum of K(a) is {sum}, expected {q}"));
        }
        let sum_sq: i128 = self.values.iter().map(|&v| (v as i128) * (v as i128)).sum();
        if sum_sq != (q as i128) * (q as i128) {
            out.push(format!("sum of K(a)^2 is {sum_sq}, expected {}", q * q));
        }
        out
    }

    /// Entries with `|K(a)| > 2^(n/2+1)`, compared as `K(a)^2 > 4q`.
    ///
    /// Including the `x = 0` term shifts the Weil interval by one, so only
    /// `|K(a) - 1| <= 2^(n/2+1)` is guaranteed; for n = 5, `K(1) = 12`.
    pub fn range_violations(&self) -> Vec<String> {
        self.bound_violations(0)
    }

    /// Entries with `|K(a) - 1| > 2^(n/2+1)`.
    pub fn shifted_range_violations(&self) -> Vec<String> {
        self.bound_violations(1)
    }

    fn bound_violations(&self, shift: i64) -> Vec<String> {
        let four_q = 4i64 << self.n;
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| (v as i64 - shift).pow(2) > four_q)
            .map(|(a, &v)| format!("K({a:x}) = {v} lies outside {shift} +- 2^(n/2+1)"))
            .collect()
    }

    /// Compares the attained value set with the multiples of 4 in
    /// `[-2^(n/2+1), 2^(n/2+1)]` and in the same interval shifted by +1.
    pub fn value_set(&self) -> ValueSetReport {
        let mut attained: Vec<i32> = self.values.clone();
        attained.sort_unstable();
        attained.dedup();
        let four_q = 4i64 << self.n;
        let candidates = |shift: i64| -> Vec<i32> {
            let reach = (four_q as f64).sqrt() as i64 + 2;
            (-reach..=reach + 1)
                .filter(|v| v.rem_euclid(4) == 0 && (v - shift) * (v - shift) <= four_q)
                .map(|v| v as i32)
                .collect()
        };
        let stated = candidates(0);
        let shifted = candidates(1);
        ValueSetReport {
            n: self.n,
            min: *attained.first().unwrap_or(&0),
            max: *attained.last().unwrap_or(&0),
            distinct_values: attained.len(),
            matches_stated_range: attained == stated,
            matches_shifted_range: attained == shifted,
            missing_from_stated: stated
                .iter()
                .filter(|v| attained.binary_search(v).is_err())
                .copied()
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValueSetReport {
    pub n: u32,
    pub min: i32,
    pub max: i32,
    pub distinct_values: usize,
    pub matches_stated_range: bool,
    pub matches_shifted_range: bool,
    pub missing_from_stated: Vec<i32>,
}

/// `K(a)` by direct summation over the field.
pub fn ksum_naive(ctx: &FieldCtx, a: FieldElement) -> i64 {
    ctx.elements()
        .map(|x| {
            let arg = ctx.inv_or_zero(x) + ctx.mul(a, x);
            if ctx.trace(arg) {
                -1
            } else {
                1
            }
        })
        .sum()
}

/// The full spectrum via one Walsh-Hadamard transform.
pub fn ksum_all(ctx: &FieldCtx) -> Result<KSpectrum> {
    let n = ctx.degree();
    if n > MAX_SPECTRUM_DEGREE {
        return Err(Error::Resource(format!(
            "spectrum needs 2^{n} entries; limit is n <= {MAX_SPECTRUM_DEGREE}"
        )));
    }
    let q = ctx.order() as usize;

    // (-1)^Tr(1/x), x = g^i and 1/x = g^(q-1-i)
    let powers = ctx.powers(ctx.primitive_element());
    let mut signs = vec![1i32; q];
    for (i, x) in powers.iter().enumerate() {
        let inv = powers[(q - 1 - i) % (q - 1)];
        signs[x.index()] = if ctx.trace(inv) { -1 } else { 1 };
    }

    fwht(&mut signs);

    // dual coordinates of a: bit j is Tr(a t^j)
    let monomial = |i: u32| ctx.element(1 << i).expect("monomial basis element");
    let basis_coords: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| ctx.trace(ctx.mul(monomial(i), monomial(j))))
                .fold(0u32, |m, j| m | (1 << j))
        })
        .collect();
    let mut coords = vec![0u32; q];
    for a in 1..q {
        let low = a.trailing_zeros() as usize;
        coords[a] = coords[a & (a - 1)] ^ basis_coords[low];
    }
    let values = coords.par_iter().map(|&c| signs[c as usize]).collect();
    Ok(KSpectrum { n, values })
}

const SERIAL_BLOCK: usize = 1 << 12;

/// In-place unnormalized Walsh-Hadamard transform,
/// `out[u] = sum_x in[x] (-1)^popcount(u & x)`.
pub fn fwht(data: &mut [i32]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "transform length must be a power of two");
    let block = SERIAL_BLOCK.min(len);
    data.par_chunks_mut(block).for_each(fwht_serial);
    let mut h = block;
    while h < len {
        data.par_chunks_mut(2 * h).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(h);
            lo.par_chunks_mut(SERIAL_BLOCK)
                .zip(hi.par_chunks_mut(SERIAL_BLOCK))
                .for_each(|(l, r)| butterfly(l, r));
        });
        h *= 2;
    }
}

fn fwht_serial(data: &mut [i32]) {
    let mut h = 1;
    while h < data.len() {
        for chunk in data.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            butterfly(lo, hi);
        }
        h *= 2;
    }
}

#[inline]
fn butterfly(lo: &mut [i32], hi: &mut [i32]) {
    for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
        let (s, d) = (*x + *y, *x - *y);
        *x = s;
        *y = d;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_wht(data: &[i32]) -> Vec<i32> {
        (0..data.len())
            .map(|u| {
                data.iter()
                    .enumerate()
                    .map(|(x, &v)| if (u & x).count_ones() % 2 == 0 { v } else { -v })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn fwht_matches_definition() {
        for log in [0, 1, 3, 6, 13] {
            let data: Vec<i32> = (0..1i32 << log).map(|i| (i * 7919) % 13 - 6).collect();
            let mut fast = data.clone();
            fwht(&mut fast);
            if log <= 6 {
                assert_eq!(fast, naive_wht(&data));
            }
            // applying twice scales by the length
            fwht(&mut fast);
            let scaled: Vec<i32> = data.iter().map(|v| v << log).collect();
            assert_eq!(fast, scaled);
        }
    }

    #[test]
    fn small_field_values() {
        let gf4 = FieldCtx::new(2, None).unwrap();
        assert_eq!(ksum_naive(&gf4, FieldElement::ZERO), 0);
        assert_eq!(ksum_naive(&gf4, FieldElement::ONE), 4);
        let gf8 = FieldCtx::new(3, Some(0b1011)).unwrap();
        assert_eq!(ksum_naive(&gf8, FieldElement::ONE), -4);
    }

    #[test]
    fn spectrum_agrees_with_naive() {
        for n in 2..=9 {
            let ctx = FieldCtx::new(n, None).unwrap();
            let spec = ksum_all(&ctx).unwrap();
            for a in ctx.elements() {
                assert_eq!(spec.get(a) as i64, ksum_naive(&ctx, a), "n={n} a={a}");
            }
            assert!(spec.invariant_violations().is_empty(), "n={n}");
            assert!(spec.shifted_range_violations().is_empty(), "n={n}");
        }
    }

    #[test]
    fn unshifted_range_fails_only_at_five() {
        for n in 3..=12 {
            let ctx = FieldCtx::new(n, None).unwrap();
            let violations = ksum_all(&ctx).unwrap().range_violations();
            if n == 5 {
                assert_eq!(violations.len(), 1, "{violations:?}");
                assert_eq!(ksum_naive(&ctx, FieldElement::ONE), 12);
            } else {
                assert!(violations.is_empty(), "n={n} {violations:?}");
            }
        }
    }

    #[test]
    fn value_set_even_degrees() {
        for n in [4, 6, 8] {
            let ctx = FieldCtx::new(n, None).unwrap();
            let report = ksum_all(&ctx).unwrap().value_set();
            assert!(report.matches_shifted_range, "{report:?}");
            assert!(!report.matches_stated_range, "{report:?}");
            assert_eq!(report.missing_from_stated, vec![-(1 << (n / 2 + 1))]);
        }
    }

    #[test]
    fn refuses_huge_spectra() {
        let ctx = FieldCtx::new(25, None).unwrap();
        assert!(matches!(ksum_all(&ctx), Err(Error::Resource(_))));
    }
}
