//! Exhaustive verification of the congruence characterizations over whole
//! fields, and a congruence-sieved search for Kloosterman zeros.
//!
//! Every binary check uses [`ksum_all`] as ground truth. Degrees outside a
//! statement's validity range are still evaluated where the predictor is
//! defined, but their mismatches are informational and do not affect `pass`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::congruences::{
    crt, lisonek_div16, mod64_from_lifted, predict_mod16, predict_mod48_literal, predict_mod48_odd,
    predict_mod64_from_lifted_trace, predict_mod3_odd, predict_mod8, predict_ternary_mod9,
    CongruenceClass,
};
use crate::error::{Error, Result};
use crate::galois_ring::RingCtx;
use crate::gauss::{fourier_residue_of, gk_holds, stickelberger_holds, wt2, GaussTable};
use crate::gf2n::{FieldCtx, FieldElement};
use crate::kloosterman::{ksum_all, ksum_naive, KSpectrum, MAX_SPECTRUM_DEGREE};
use crate::residue::IntResidue;
use crate::ternary::{ternary_ksum_all, TernaryFieldCtx};

/// At most this many mismatches are listed per degree; all are counted.
pub const MISMATCH_LIST_LIMIT: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    Mod8,
    Mod16,
    Lisonek,
    Mod48,
    Mod64,
    Mod192,
    Ternary9,
    Stickelberger,
    GrossKoblitz,
    Fourier5,
    RangeDivisibility,
}

impl Theorem {
    pub const ALL: [Theorem; 11] = [
        Theorem::Mod8,
        Theorem::Mod16,
        Theorem::Lisonek,
        Theorem::Mod48,
        Theorem::Mod64,
        Theorem::Mod192,
        Theorem::Ternary9,
        Theorem::Stickelberger,
        Theorem::GrossKoblitz,
        Theorem::Fourier5,
        Theorem::RangeDivisibility,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Mod8 => "mod8",
            Theorem::Mod16 => "mod16",
            Theorem::Lisonek => "lisonek",
            Theorem::Mod48 => "mod48",
            Theorem::Mod64 => "mod64",
            Theorem::Mod192 => "mod192",
            Theorem::Ternary9 => "ternary9",
            Theorem::Stickelberger => "stickelberger",
            Theorem::GrossKoblitz => "grosskoblitz",
            Theorem::Fourier5 => "fourier5",
            Theorem::RangeDivisibility => "range-divisibility",
        }
    }

    /// Degrees checked when the caller gives no range.
    pub fn default_range(self) -> (u32, u32) {
        match self {
            Theorem::Mod8 => (3, 14),
            Theorem::Mod16 | Theorem::Lisonek | Theorem::RangeDivisibility => (4, 14),
            Theorem::Mod48 => (5, 13),
            Theorem::Mod64 => (6, 14),
            Theorem::Mod192 => (7, 13),
            Theorem::Ternary9 => (2, 7),
            Theorem::Stickelberger => (4, 8),
            Theorem::GrossKoblitz => (3, 8),
            Theorem::Fourier5 => (4, 8),
        }
    }

    /// Largest and smallest degree the driver will attempt.
    pub fn degree_limits(self) -> (u32, u32) {
        match self {
            Theorem::Mod8 | Theorem::Mod16 | Theorem::Lisonek | Theorem::RangeDivisibility => {
                (2, MAX_SPECTRUM_DEGREE)
            }
            Theorem::Mod48 => (2, 20),
            Theorem::Mod64 | Theorem::Mod192 => (2, 16),
            Theorem::Ternary9 => (1, 9),
            Theorem::Stickelberger | Theorem::GrossKoblitz | Theorem::Fourier5 => (2, 10),
        }
    }

    /// `None` inside the validity range, otherwise the reason it is outside.
    pub fn validity(self, n: u32) -> Option<String> {
        let below = |min: u32| (n < min).then(|| format!("stated for n >= {min}"));
        match self {
            Theorem::Mod8 => below(3),
            Theorem::Mod16 | Theorem::Lisonek => below(4),
            Theorem::Mod48 => {
                if n % 2 == 0 {
                    Some("stated for odd n only".into())
                } else {
                    below(5)
                }
            }
            Theorem::Mod64 => below(6),
            Theorem::Mod192 => {
                if n % 2 == 0 {
                    Some("stated for odd n only".into())
                } else {
                    below(7)
                }
            }
            Theorem::Ternary9 => below(2),
            Theorem::GrossKoblitz => below(3),
            Theorem::Stickelberger | Theorem::Fourier5 | Theorem::RangeDivisibility => None,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| {
                let ids: Vec<&str> = Theorem::ALL.iter().map(|t| t.id()).collect();
                Error::Parse(format!("unknown theorem '{s}'; expected one of {}", ids.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Ring precision override for the Galois-ring checks.
    pub precision: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: String,
    pub item: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeReport {
    pub n: u32,
    pub field_poly: String,
    pub in_range: bool,
    pub skipped: bool,
    pub elements_checked: u64,
    pub mismatch_count: u64,
    pub mismatches: Vec<Mismatch>,
    pub adjudications: BTreeMap<String, Value>,
    pub notes: Vec<String>,
}

impl DegreeReport {
    fn new(n: u32, field_poly: String, theorem: Theorem) -> DegreeReport {
        let reason = theorem.validity(n);
        DegreeReport {
            n,
            field_poly,
            in_range: reason.is_none(),
            skipped: false,
            elements_checked: 0,
            mismatch_count: 0,
            mismatches: Vec::new(),
            adjudications: BTreeMap::new(),
            notes: reason
                .map(|r| vec![format!("outside validity range ({r}); informational")])
                .unwrap_or_default(),
        }
    }

    fn skip(mut self, why: &str) -> DegreeReport {
        self.skipped = true;
        self.notes.push(format!("skipped: {why}"));
        self
    }

    fn absorb(&mut self, results: Vec<Vec<Mismatch>>) {
        self.elements_checked += results.len() as u64;
        for m in results.into_iter().flatten() {
            self.mismatch_count += 1;
            if self.mismatches.len() < MISMATCH_LIST_LIMIT {
                self.mismatches.push(m);
            }
        }
    }

    fn adjudicate(&mut self, key: &str, value: impl Into<Value>) {
        self.adjudications.insert(key.to_string(), value.into());
    }

    pub fn passed(&self) -> bool {
        !self.in_range || self.mismatch_count == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub n_min: u32,
    pub n_max: u32,
    pub degrees: Vec<DegreeReport>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for d in &self.degrees {
            let status = if d.skipped {
                "SKIP"
            } else if d.mismatch_count == 0 {
                "ok"
            } else if d.in_range {
                "FAIL"
            } else {
                "info"
            };
            let _ = writeln!(
                out,
                "{} n={:<2} poly={} checked={} mismatches={} {}",
                self.theorem, d.n, d.field_poly, d.elements_checked, d.mismatch_count, status
            );
            for m in &d.mismatches {
                let _ = writeln!(
                    out,
                    "  [{}] {}: expected {}, got {}",
                    m.check, m.item, m.expected, m.actual
                );
            }
            for (k, v) in &d.adjudications {
                let _ = writeln!(out, "  {k}: {v}");
            }
            for note in &d.notes {
                let _ = writeln!(out, "  note: {note}");
            }
        }
        let _ = writeln!(
            out,
            "{} n={}..{}: {}",
            self.theorem,
            self.n_min,
            self.n_max,
            if self.pass { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// Runs one exhaustive check for every degree in `[n_min, n_max]`.
pub fn run_verify(
    theorem: Theorem,
    n_min: u32,
    n_max: u32,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    if n_min > n_max {
        return Err(Error::Config(format!("empty degree range {n_min}..{n_max}")));
    }
    let (lo, hi) = theorem.degree_limits();
    if n_min < lo || n_max > hi {
        return Err(Error::Resource(format!(
            "{theorem} is checked for {lo} <= n <= {hi}, requested {n_min}..{n_max}"
        )));
    }
    let degrees = (n_min..=n_max)
        .map(|n| verify_degree(theorem, n, opts))
        .collect::<Result<Vec<_>>>()?;
    let pass = degrees.iter().all(DegreeReport::passed);
    Ok(VerifyReport {
        theorem: theorem.id().to_string(),
        n_min,
        n_max,
        degrees,
        pass,
    })
}

pub fn verify_degree(theorem: Theorem, n: u32, opts: &VerifyOptions) -> Result<DegreeReport> {
    if theorem == Theorem::Ternary9 {
        return verify_ternary(n);
    }
    let field = FieldCtx::new(n, None)?;
    let mut report = DegreeReport::new(n, format!("{:#x}", field.poly()), theorem);
    match theorem {
        Theorem::Mod8 => verify_mod8(&field, &mut report)?,
        Theorem::Mod16 => verify_mod16(&field, &mut report)?,
        Theorem::Lisonek => verify_lisonek(&field, &mut report)?,
        Theorem::Mod48 => {
            if n % 2 == 0 || n < 3 {
                return Ok(report.skip("the mod-3 rule needs odd n >= 3"));
            }
            verify_mod48(&field, &mut report)?
        }
        Theorem::Mod64 => verify_mod64(&field, ring_precision(opts, 4)?, &mut report)?,
        Theorem::Mod192 => {
            if n % 2 == 0 || n < 3 {
                return Ok(report.skip("the mod-3 rule needs odd n >= 3"));
            }
            verify_mod192(&field, ring_precision(opts, 4)?, &mut report)?
        }
        Theorem::Stickelberger => {
            verify_stickelberger(&field, ring_precision(opts, 8)?, &mut report)?
        }
        Theorem::GrossKoblitz => {
            // the Gamma-product unit is compared to 6 bits for every index
            let k = ring_precision(opts, n + 5)?;
            verify_gross_koblitz(&field, k, &mut report)?
        }
        Theorem::Fourier5 => {
            if let Some(k) = opts.precision.filter(|&k| k != n) {
                return Err(Error::Config(format!(
                    "the Fourier congruence is checked with k = n = {n}, got k = {k}"
                )));
            }
            verify_fourier(&field, &mut report)?
        }
        Theorem::RangeDivisibility => verify_range(&field, &mut report)?,
        Theorem::Ternary9 => unreachable!(),
    }
    Ok(report)
}

fn ring_precision(opts: &VerifyOptions, default: u32) -> Result<u32> {
    let k = opts.precision.unwrap_or(default);
    if k < 2 {
        return Err(Error::Config(format!("ring precision must be >= 2, got {k}")));
    }
    Ok(k)
}

fn residue_mismatch(check: &str, a: impl fmt::Display, predicted: CongruenceClass, k: i64) -> Option<Mismatch> {
    (!predicted.contains(k)).then(|| Mismatch {
        check: check.to_string(),
        item: a.to_string(),
        expected: predicted.to_string(),
        actual: format!("{} (K = {k})", k.rem_euclid(predicted.modulus() as i64)),
    })
}

fn flag(check: &str, a: impl fmt::Display, expected: impl fmt::Display, actual: impl fmt::Display) -> Mismatch {
    Mismatch {
        check: check.to_string(),
        item: a.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

/// Applies `check` to every element in encoding order.
fn per_element<F>(field: &FieldCtx, skip_zero: bool, check: F) -> Result<Vec<Vec<Mismatch>>>
where
    F: Fn(FieldElement) -> Result<Vec<Mismatch>> + Sync,
{
    let start = u32::from(skip_zero);
    (start as u64..field.order())
        .into_par_iter()
        .map(|i| check(field.element(i as u32)?))
        .collect()
}

fn verify_mod8(field: &FieldCtx, report: &mut DegreeReport) -> Result<()> {
    let spec = ksum_all(field)?;
    let results = per_element(field, false, |a| {
        let pred = predict_mod8(field.trace(a));
        Ok(residue_mismatch("mod8", a, pred, spec.get(a) as i64).into_iter().collect())
    })?;
    report.absorb(results);
    Ok(())
}

fn verify_mod16(field: &FieldCtx, report: &mut DegreeReport) -> Result<()> {
    let spec = ksum_all(field)?;
    let results = per_element(field, false, |a| {
        let tr = field.trace(a);
        let pred = predict_mod16(tr, field.quadratic_trace(a));
        let mut out: Vec<Mismatch> = residue_mismatch("mod16", a, pred, spec.get(a) as i64)
            .into_iter()
            .collect();
        if pred.reduce(8)? != predict_mod8(tr) {
            out.push(flag("reduces-to-mod8", a, predict_mod8(tr), pred.reduce(8)?));
        }
        Ok(out)
    })?;
    report.absorb(results);
    Ok(())
}

fn verify_lisonek(field: &FieldCtx, report: &mut DegreeReport) -> Result<()> {
    let spec = ksum_all(field)?;
    let results = per_element(field, false, |a| {
        let predicted = lisonek_div16(field, a);
        let k = spec.get(a);
        let mut out = Vec::new();
        if predicted != (k % 16 == 0) {
            out.push(flag("lisonek", a, format!("16 | K is {predicted}"), format!("K = {k}")));
        }
        let by_table = predict_mod16(field.trace(a), field.quadratic_trace(a)).residue() == 0;
        if predicted != by_table {
            out.push(flag("mod16-equivalence", a, predicted, by_table));
        }
        Ok(out)
    })?;
    report.absorb(results);
    Ok(())
}

fn verify_mod48(field: &FieldCtx, report: &mut DegreeReport) -> Result<()> {
    let spec = ksum_all(field)?;
    let literal: Vec<(bool, Option<bool>)> = (1..field.order())
        .into_par_iter()
        .map(|i| {
            let a = field.element(i as u32)?;
            let k = spec.get(a) as i64;
            let lit = predict_mod48_literal(field, a)?;
            Ok((lit.is_none(), lit.map(|c| c.contains(k))))
        })
        .collect::<Result<_>>()?;
    let results = per_element(field, true, |a| {
        let pred = predict_mod48_odd(field, a)?;
        let k = spec.get(a) as i64;
        let mut out: Vec<Mismatch> = residue_mismatch("mod48", a, pred, k).into_iter().collect();
        let m3 = predict_mod3_odd(field, a)?;
        if pred.reduce(3)? != m3 {
            out.push(flag("reduces-to-mod3", a, m3, pred.reduce(3)?));
        }
        Ok(out)
    })?;
    report.absorb(results);
    let no_row = literal.iter().filter(|(none, _)| *none).count();
    let matched = literal.iter().filter(|(_, m)| *m == Some(true)).count();
    let contradicted = literal.iter().filter(|(_, m)| *m == Some(false)).count();
    report.adjudicate("literal_table_matches", matched);
    report.adjudicate("literal_table_contradicts", contradicted);
    report.adjudicate("literal_table_no_row", no_row);
    report.adjudicate(
        "literal_table_agrees",
        contradicted == 0 && no_row == 0,
    );
    Ok(())
}

/// Teichmüller table at precision k plus lifted traces for every element.
fn lifted_traces(field: &FieldCtx, k: u32) -> Result<(RingCtx, Vec<(IntResidue, IntResidue)>)> {
    let ring = RingCtx::new(field.clone(), k)?;
    let table = ring.teichmuller_table();
    let traces = table
        .par_iter()
        .map(|w| ring.lifted_traces_of(w))
        .collect::<Result<Vec<_>>>()?;
    Ok((ring, traces))
}

fn verify_mod64(field: &FieldCtx, k: u32, report: &mut DegreeReport) -> Result<()> {
    if k < 4 {
        return Err(Error::Config(format!("mod-64 prediction needs k >= 4, got {k}")));
    }
    let spec = ksum_all(field)?;
    let (_, traces) = lifted_traces(field, k)?;
    let results = per_element(field, false, |a| {
        let (t, q) = traces[a.index()];
        let by_table = predict_mod64_from_lifted_trace(t)?;
        let mut out: Vec<Mismatch> = residue_mismatch("mod64", a, by_table, spec.get(a) as i64)
            .into_iter()
            .collect();
        let by_formula = mod64_from_lifted(t, q)?;
        if by_formula != by_table {
            out.push(flag("formula-path", a, by_table, by_formula));
        }
        let lhs = t.mul(t);
        let rhs = IntResidue::new(2u64.wrapping_mul(q.value()).wrapping_add(t.value()), k);
        if lhs != rhs {
            out.push(flag("lifted-identity", a, rhs, lhs));
        }
        let reduced = by_table.reduce(16)?;
        let mod16 = predict_mod16(field.trace(a), field.quadratic_trace(a));
        if reduced != mod16 {
            out.push(flag("reduces-to-mod16", a, mod16, reduced));
        }
        Ok(out)
    })?;
    report.absorb(results);
    Ok(())
}

fn verify_mod192(field: &FieldCtx, k: u32, report: &mut DegreeReport) -> Result<()> {
    if k < 4 {
        return Err(Error::Config(format!("mod-64 prediction needs k >= 4, got {k}")));
    }
    let spec = ksum_all(field)?;
    let (_, traces) = lifted_traces(field, k)?;
    let results = per_element(field, true, |a| {
        let m64 = predict_mod64_from_lifted_trace(traces[a.index()].0)?;
        let m3 = predict_mod3_odd(field, a)?;
        let pred = crt(m64, m3)?;
        Ok(residue_mismatch("mod192", a, pred, spec.get(a) as i64).into_iter().collect())
    })?;
    report.absorb(results);
    Ok(())
}

fn verify_ternary(n: u32) -> Result<DegreeReport> {
    let field = TernaryFieldCtx::new(n, None)?;
    let poly: Vec<String> = field.poly().iter().map(u8::to_string).collect();
    let mut report = DegreeReport::new(n, format!("[{}]", poly.join(",")), Theorem::Ternary9);
    let values = ternary_ksum_all(&field)?;
    let four_q = 4 * field.order() as i64;
    let results: Vec<Vec<Mismatch>> = values
        .par_iter()
        .enumerate()
        .map(|(i, &k)| {
            let a = field.element(i as u64)?;
            let pred = predict_ternary_mod9(field.trace(a));
            let mut out: Vec<Mismatch> = residue_mismatch("mod9", i, pred, k).into_iter().collect();
            if k % 3 != 0 {
                out.push(flag("divisible-by-3", i, "0 (mod 3)", k));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    report.absorb(results);
    // |K| < 2 sqrt(q) compared as K^2 < 4q
    let outside = values.iter().filter(|&&k| k * k >= four_q).count();
    let max_abs = values.iter().map(|k| k.abs()).max().unwrap_or(0);
    report.adjudicate("strict_bound_violations", outside);
    report.adjudicate("max_abs_value", max_abs);
    Ok(report)
}

fn verify_stickelberger(field: &FieldCtx, k: u32, report: &mut DegreeReport) -> Result<()> {
    let q_minus_1 = field.order() - 1;
    let table = GaussTable::new(RingCtx::new(field.clone(), k)?)?;
    let mut unchecked = 0u64;
    let mut results = Vec::new();
    for (j, g) in table.iter() {
        if wt2(j) + 1 > k {
            unchecked += 1;
            continue;
        }
        let mut out = Vec::new();
        if !stickelberger_holds(g, j)? {
            let wt = wt2(j);
            out.push(flag(
                "stickelberger",
                format!("j={j}"),
                format!("valuation {wt}, {}", IntResidue::from_i64((-2i64).pow(wt), wt + 1)),
                g,
            ));
        }
        let j2 = (2 * j) % q_minus_1;
        let g2 = table.get(j2)?;
        if g2 != g {
            out.push(flag("frobenius-index", format!("j={j}"), g, format!("g({j2}) = {g2}")));
        }
        results.push(out);
    }
    report.absorb(results);
    if unchecked > 0 {
        report.notes.push(format!("{unchecked} indices have weight >= k = {k}; not checked"));
    }
    Ok(())
}

fn verify_gross_koblitz(field: &FieldCtx, k: u32, report: &mut DegreeReport) -> Result<()> {
    let n = field.degree();
    let table = GaussTable::new(RingCtx::new(field.clone(), k)?)?;
    let mut unchecked = 0u64;
    let mut results = Vec::new();
    for (j, g) in table.iter() {
        if k < wt2(j) + 3 {
            unchecked += 1;
            continue;
        }
        let mut out = Vec::new();
        if !gk_holds(g, n, j)? {
            let rhs = crate::gauss::gross_koblitz_rhs(n, j, k)?.reduce(k)?;
            out.push(flag("gross-koblitz", format!("j={j}"), rhs, g));
        }
        results.push(out);
    }
    report.absorb(results);
    if k >= 4 {
        report.adjudicate("g1_mod_16", table.get(1)?.reduce(4)?.value());
    }
    report.adjudicate("ring_precision", k);
    if unchecked > 0 {
        report.notes.push(format!("{unchecked} indices need precision above k = {k}; not checked"));
    }
    Ok(())
}

fn verify_fourier(field: &FieldCtx, report: &mut DegreeReport) -> Result<()> {
    let n = field.degree();
    let spec = ksum_all(field)?;
    let table = GaussTable::new(RingCtx::new(field.clone(), n)?)?;
    let lifts = table.ring().teichmuller_table();
    let results = per_element(field, false, |a| {
        let predicted = fourier_residue_of(&table, &lifts[a.index()])?;
        let k = spec.get(a) as i64;
        let exact = IntResidue::from_i64(k, n);
        Ok(if predicted == exact {
            Vec::new()
        } else {
            vec![flag("fourier", a, predicted, format!("{exact} (K = {k})"))]
        })
    })?;
    report.absorb(results);
    Ok(())
}

fn verify_range(field: &FieldCtx, report: &mut DegreeReport) -> Result<()> {
    let spec = ksum_all(field)?;
    let mut results: Vec<Vec<Mismatch>> = vec![Vec::new(); spec.values().len()];
    for v in spec.invariant_violations() {
        results[0].push(flag("invariant", "spectrum", "holds", v));
    }
    for v in spec.range_violations() {
        results[0].push(flag("range", "spectrum", "|K| <= 2^(n/2+1)", v));
    }
    report.absorb(results);
    report.adjudicate("shifted_range_violations", spec.shifted_range_violations().len());
    report.adjudicate("value_set", serde_json::to_value(spec.value_set()).expect("serializable"));
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroSearch {
    pub n: u32,
    pub sieve: Vec<String>,
    pub candidates: u64,
    pub zeros: Vec<FieldElement>,
    pub matches_ground_truth: bool,
}

/// Largest degree at which the mod-64 sieve is applied.
pub const MOD64_SIEVE_MAX_DEGREE: u32 = 16;
/// Candidates are evaluated pointwise up to this degree, from the spectrum above it.
const NAIVE_EVALUATION_MAX_DEGREE: u32 = 14;

/// All `a` with `K(a) = 0`, found by evaluating only the elements that the
/// mod-16 classes (for `n >= 4`) and mod-64 classes (for `6 <= n <= 16`) put
/// in class 0. Below n = 4 every element is evaluated.
pub fn run_zeros(n: u32) -> Result<ZeroSearch> {
    if n > MAX_SPECTRUM_DEGREE {
        return Err(Error::Resource(format!(
            "zero search is limited to n <= {MAX_SPECTRUM_DEGREE}"
        )));
    }
    let field = FieldCtx::new(n, None)?;
    let mut sieve = Vec::new();
    let mut candidates: Vec<FieldElement> = field.elements().collect();
    if n >= 4 {
        sieve.push("mod16".to_string());
        candidates.retain(|&a| predict_mod16(field.trace(a), field.quadratic_trace(a)).residue() == 0);
    }
    if (6..=MOD64_SIEVE_MAX_DEGREE).contains(&n) {
        sieve.push("mod64".to_string());
        let ring = RingCtx::new(field.clone(), 4)?;
        let keep = candidates
            .par_iter()
            .map(|&a| Ok(predict_mod64_from_lifted_trace(ring.lifted_trace(a)?)?.residue() == 0))
            .collect::<Result<Vec<bool>>>()?;
        candidates = candidates
            .into_iter()
            .zip(keep)
            .filter_map(|(a, k)| k.then_some(a))
            .collect();
    }
    let spectrum: Option<KSpectrum> = if n > NAIVE_EVALUATION_MAX_DEGREE {
        Some(ksum_all(&field)?)
    } else {
        None
    };
    let exact = |a: FieldElement| match &spectrum {
        Some(s) => s.get(a) as i64,
        None => ksum_naive(&field, a),
    };
    let zeros: Vec<FieldElement> = candidates
        .par_iter()
        .copied()
        .filter(|&a| exact(a) == 0)
        .collect();
    let truth_spectrum = match spectrum {
        Some(s) => s,
        None => ksum_all(&field)?,
    };
    let truth: Vec<FieldElement> = field
        .elements()
        .filter(|&a| truth_spectrum.get(a) == 0)
        .collect();
    Ok(ZeroSearch {
        n,
        sieve,
        candidates: candidates.len() as u64,
        matches_ground_truth: truth == zeros,
        zeros,
    })
}

impl ZeroSearch {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "sieve": self.sieve,
            "candidates": self.candidates,
            "zero_count": self.zeros.len(),
            "matches_ground_truth": self.matches_ground_truth,
            "zeros": self.zeros,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(t: Theorem, lo: u32, hi: u32) -> VerifyReport {
        run_verify(t, lo, hi, &VerifyOptions::default()).unwrap()
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.id().parse::<Theorem>().unwrap(), t);
        }
        assert!(matches!("mod7".parse::<Theorem>(), Err(Error::Parse(_))));
    }

    #[test]
    fn mod16_small_range() {
        let r = run(Theorem::Mod16, 4, 10);
        assert!(r.pass);
        let checked: u64 = r.degrees.iter().map(|d| d.elements_checked).sum();
        assert_eq!(checked, (4..=10).map(|n| 1u64 << n).sum::<u64>());
    }

    #[test]
    fn mod8_degree_two_is_informational() {
        let r = run(Theorem::Mod8, 2, 6);
        assert!(r.pass);
        let d2 = &r.degrees[0];
        assert!(!d2.in_range);
        // K(1) = 4 with Tr(1) = 0, and K = 0 at both trace-one elements
        assert_eq!(d2.mismatch_count, 3);
        assert_eq!(d2.mismatches[0].item, "1");
    }

    #[test]
    fn ternary_small_range() {
        let r = run(Theorem::Ternary9, 2, 6);
        assert!(r.pass, "{}", r.render_text());
    }

    #[test]
    fn mod48_skips_even_degrees() {
        let r = run(Theorem::Mod48, 5, 8);
        assert!(r.pass, "{}", r.render_text());
        assert!(r.degrees[1].skipped);
        assert!(r.degrees[0].adjudications.contains_key("literal_table_no_row"));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(Theorem::Mod64, 6, 9).to_json();
        let b = run(Theorem::Mod64, 6, 9).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn range_limits() {
        let opts = VerifyOptions::default();
        assert!(matches!(run_verify(Theorem::Fourier5, 4, 11, &opts), Err(Error::Resource(_))));
        assert!(matches!(run_verify(Theorem::Mod8, 6, 4, &opts), Err(Error::Config(_))));
    }

    #[test]
    fn zeros_match_spectrum() {
        for n in [2, 5, 8, 11] {
            let z = run_zeros(n).unwrap();
            assert!(z.matches_ground_truth, "n={n}");
            assert_eq!(z.zeros[0], FieldElement::ZERO);
        }
    }
}
