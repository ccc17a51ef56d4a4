//! CSV and JSON tables. Integers are decimal, field elements lowercase hex.

use std::io::Write;

use serde::Serialize;

use crate::congruences::{predict, BINARY_MODULI};
use crate::error::{Error, Result};
use crate::galois_ring::RingCtx;
use crate::gauss::{gk_holds, stickelberger_holds, wt2, GaussTable};
use crate::gf2n::FieldCtx;
use crate::kloosterman::KSpectrum;
use crate::verify::MOD64_SIEVE_MAX_DEGREE;

#[derive(Serialize)]
struct SpectrumRow {
    a_hex: String,
    #[serde(rename = "K")]
    k: i32,
    tr: u8,
    #[serde(rename = "Q")]
    q: u8,
}

fn spectrum_rows<'a>(ctx: &'a FieldCtx, spec: &'a KSpectrum) -> impl Iterator<Item = SpectrumRow> + 'a {
    ctx.elements().map(move |a| SpectrumRow {
        a_hex: a.to_string(),
        k: spec.get(a),
        tr: ctx.trace(a) as u8,
        q: ctx.quadratic_trace(a) as u8,
    })
}

fn check_degrees(ctx: &FieldCtx, spec: &KSpectrum) -> Result<()> {
    if ctx.degree() != spec.degree() {
        return Err(Error::Config(format!(
            "spectrum of degree {} does not belong to a field of degree {}",
            spec.degree(),
            ctx.degree()
        )));
    }
    Ok(())
}

/// Columns `a_hex,K,tr,Q`, one row per element in encoding order.
pub fn write_spectrum_csv<W: Write>(ctx: &FieldCtx, spec: &KSpectrum, out: W) -> Result<()> {
    check_degrees(ctx, spec)?;
    let mut w = csv::Writer::from_writer(out);
    for row in spectrum_rows(ctx, spec) {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SpectrumDoc {
    n: u32,
    field: String,
    rows: Vec<SpectrumRow>,
}

/// The same rows as [`write_spectrum_csv`] under a field header.
pub fn write_spectrum_json<W: Write>(ctx: &FieldCtx, spec: &KSpectrum, mut out: W) -> Result<()> {
    check_degrees(ctx, spec)?;
    let doc = SpectrumDoc {
        n: ctx.degree(),
        field: ctx.spec_string(),
        rows: spectrum_rows(ctx, spec).collect(),
    };
    serde_json::to_writer(&mut out, &doc).map_err(|e| Error::Io(e.to_string()))?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Columns `a_hex,K_exact,pred_mod8,...,pred_mod192,match_flags`. Predictors
/// that are undefined at this degree or element leave an empty cell and a
/// `-` flag; `match_flags` lists `modulus:Y|N|-` for each modulus.
pub fn write_classification_csv<W: Write>(ring: &RingCtx, spec: &KSpectrum, out: W) -> Result<()> {
    let ctx = ring.base();
    check_degrees(ctx, spec)?;
    if ctx.degree() > MOD64_SIEVE_MAX_DEGREE {
        return Err(Error::Resource(format!(
            "classification tables are limited to n <= {MOD64_SIEVE_MAX_DEGREE}"
        )));
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["a_hex".to_string(), "K_exact".to_string()];
    header.extend(BINARY_MODULI.iter().map(|m| format!("pred_mod{m}")));
    header.push("match_flags".to_string());
    w.write_record(&header)?;
    for a in ctx.elements() {
        let k = spec.get(a) as i64;
        let mut record = vec![a.to_string(), k.to_string()];
        let mut flags = Vec::new();
        for m in BINARY_MODULI {
            let defined = !(matches!(m, 48 | 192) && (a.is_zero() || ctx.degree() % 2 == 0));
            let class = if defined { Some(predict(ring, a, m)?) } else { None };
            match class {
                Some(c) => {
                    record.push(c.residue().to_string());
                    flags.push(format!("{m}:{}", if c.contains(k) { 'Y' } else { 'N' }));
                }
                None => {
                    record.push(String::new());
                    flags.push(format!("{m}:-"));
                }
            }
        }
        record.push(flags.join("|"));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `j,wt2,g_mod_2k,stickelberger_ok,gk_ok`. A check that needs more
/// precision than the table carries leaves an empty cell.
pub fn write_gauss_csv<W: Write>(table: &GaussTable, out: W) -> Result<()> {
    let k = table.ring().precision();
    let n = table.ring().base().degree();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["j", "wt2", "g_mod_2k", "stickelberger_ok", "gk_ok"])?;
    for (j, g) in table.iter() {
        let wt = wt2(j);
        let stick = if wt < k {
            stickelberger_holds(g, j)?.to_string()
        } else {
            String::new()
        };
        let gk = if k >= wt + 3 {
            gk_holds(g, n, j)?.to_string()
        } else {
            String::new()
        };
        w.write_record([j.to_string(), wt.to_string(), g.value().to_string(), stick, gk])?;
    }
    w.flush()?;
    Ok(())
}
