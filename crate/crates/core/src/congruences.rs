//! Predictors for Kloosterman residues built from cheap field and ring data.
//!
//! | modulus | inputs                                         | degrees        |
//! |---------|------------------------------------------------|----------------|
//! | 8       | `Tr(a)`                                        | n >= 3         |
//! | 16      | `Tr(a)`, `Q(a)`                                | n >= 4         |
//! | 3       | `Tr(a^(1/3))`, `Tr(b^3)` with `b^4+b+1 = a^(1/3)` | odd n >= 5  |
//! | 48      | CRT of 16 and 3                                | odd n >= 5     |
//! | 64      | lifted trace mod 16                            | n >= 6         |
//! | 192     | CRT of 64 and 3                                | odd n >= 7     |
//! | 9       | ternary `Tr(a)`                                | n >= 2         |
//!
//! The predictors evaluate outside these ranges too; callers decide whether a
//! mismatch there matters.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois_ring::RingCtx;
use crate::gf2n::{FieldCtx, FieldElement};
use crate::residue::IntResidue;

pub const MODULI: [u32; 7] = [3, 8, 9, 16, 48, 64, 192];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CongruenceClass {
    residue: u32,
    modulus: u32,
}

impl CongruenceClass {
    pub fn new(residue: u32, modulus: u32) -> Result<CongruenceClass> {
        if !MODULI.contains(&modulus) {
            return Err(Error::Domain(format!("unsupported modulus {modulus}")));
        }
        if residue >= modulus {
            return Err(Error::Domain(format!("residue {residue} >= modulus {modulus}")));
        }
        Ok(CongruenceClass { residue, modulus })
    }

    /// The class of an integer.
    pub fn of(value: i64, modulus: u32) -> Result<CongruenceClass> {
        CongruenceClass::new(value.rem_euclid(modulus as i64) as u32, modulus)
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn contains(self, value: i64) -> bool {
        value.rem_euclid(self.modulus as i64) == self.residue as i64
    }

    /// Image modulo a divisor `m` of the modulus.
    pub fn reduce(self, m: u32) -> Result<CongruenceClass> {
        if self.modulus % m != 0 {
            return Err(Error::Domain(format!(
                "{m} does not divide {}",
                self.modulus
            )));
        }
        CongruenceClass::new(self.residue % m, m)
    }
}

impl fmt::Display for CongruenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

/// Combines classes with coprime moduli.
pub fn crt(a: CongruenceClass, b: CongruenceClass) -> Result<CongruenceClass> {
    let m = a.modulus * b.modulus;
    let r = (0..m)
        .find(|&r| r % a.modulus == a.residue && r % b.modulus == b.residue)
        .ok_or_else(|| {
            Error::Domain(format!("moduli {} and {} are not coprime", a.modulus, b.modulus))
        })?;
    CongruenceClass::new(r, m)
}

pub fn predict_mod8(tr: bool) -> CongruenceClass {
    CongruenceClass {
        residue: if tr { 4 } else { 0 },
        modulus: 8,
    }
}

pub fn predict_mod16(tr: bool, q: bool) -> CongruenceClass {
    let residue = match (tr, q) {
        (false, false) => 0,
        (true, true) => 4,
        (false, true) => 8,
        (true, false) => 12,
    };
    CongruenceClass {
        residue,
        modulus: 16,
    }
}

/// `16 | K(a)` iff `Tr(a) = 0` and `Tr(y) = 0` for a root `y` of
/// `y^2 + a y + a^3 = 0`. Substituting `y = a s` gives `s^2 + s = a`.
pub fn lisonek_div16(ctx: &FieldCtx, a: FieldElement) -> bool {
    if a.is_zero() {
        return true;
    }
    if ctx.trace(a) {
        return false;
    }
    let s = ctx
        .half_trace_solve(a)
        .expect("Tr(a) = 0 makes s^2 + s = a solvable");
    let y = ctx.mul(a, s);
    debug_assert!(ctx.square(y) + ctx.mul(a, y) + ctx.mul(a, ctx.square(a)) == FieldElement::ZERO);
    !ctx.trace(y)
}

/// Intermediate data of the mod-3 rule for odd n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubeRootData {
    pub cube_root: FieldElement,
    pub cube_root_trace: bool,
    /// Present when `Tr(a^(1/3)) = 1`.
    pub beta: Option<FieldElement>,
    pub beta_cube_trace: Option<bool>,
}

pub fn cube_root_data(ctx: &FieldCtx, a: FieldElement) -> Result<CubeRootData> {
    if a.is_zero() {
        return Err(Error::Domain("the mod-3 rule is stated for a != 0".into()));
    }
    let c = ctx.cube_root(a)?;
    let cube_root_trace = ctx.trace(c);
    let (beta, beta_cube_trace) = if cube_root_trace {
        let beta = ctx.solve_beta(c)?.ok_or_else(|| {
            Error::Internal(format!("b^4 + b = {c} + 1 has no solution although Tr({c}) = 1"))
        })?;
        let b3 = ctx.mul(beta, ctx.square(beta));
        (Some(beta), Some(ctx.trace(b3)))
    } else {
        (None, None)
    };
    Ok(CubeRootData {
        cube_root: c,
        cube_root_trace,
        beta,
        beta_cube_trace,
    })
}

/// `K(a) mod 3` for odd n: 1 when `Tr(a^(1/3)) = 0`; otherwise 0 exactly when
/// `Tr(b^3) = 0, n = 5,7 (mod 8)` or `Tr(b^3) = 1, n = 1,3 (mod 8)`, else 2.
pub fn predict_mod3_odd(ctx: &FieldCtx, a: FieldElement) -> Result<CongruenceClass> {
    let data = cube_root_data(ctx, a)?;
    Ok(mod3_from_data(ctx.degree(), &data))
}

fn mod3_from_data(n: u32, data: &CubeRootData) -> CongruenceClass {
    let residue = match data.beta_cube_trace {
        None => 1,
        Some(tb) => {
            let zero = match n % 8 {
                5 | 7 => !tb,
                1 | 3 => tb,
                _ => unreachable!("n is odd"),
            };
            if zero {
                0
            } else {
                2
            }
        }
    };
    CongruenceClass {
        residue,
        modulus: 3,
    }
}

pub fn predict_mod48_odd(ctx: &FieldCtx, a: FieldElement) -> Result<CongruenceClass> {
    let m3 = predict_mod3_odd(ctx, a)?;
    crt(predict_mod16(ctx.trace(a), ctx.quadratic_trace(a)), m3)
}

/// The case-2 table read literally: rows are selected by `n + Tr(b^3) mod 8`
/// in `{5, 7}` or `{1, 3}`. Returns `None` when no row applies, which happens
/// whenever `Tr(b^3) = 1` because `n + 1` is even.
pub fn predict_mod48_literal(ctx: &FieldCtx, a: FieldElement) -> Result<Option<CongruenceClass>> {
    let data = cube_root_data(ctx, a)?;
    let tr = ctx.trace(a);
    let q = ctx.quadratic_trace(a);
    let Some(tb) = data.beta_cube_trace else {
        let residue = match (tr, q) {
            (true, true) => 4,
            (false, false) => 16,
            (true, false) => 28,
            (false, true) => 40,
        };
        return Ok(Some(CongruenceClass { residue, modulus: 48 }));
    };
    let selector = (ctx.degree() + tb as u32) % 8;
    let residue = match (selector, tr, q) {
        (5 | 7, false, false) => 0,
        (1 | 3, false, true) => 8,
        (5 | 7, true, false) => 12,
        (1 | 3, true, true) => 20,
        (5 | 7, false, true) => 24,
        (1 | 3, false, false) => 32,
        (5 | 7, true, true) => 36,
        (1 | 3, true, false) => 44,
        _ => return Ok(None),
    };
    Ok(Some(CongruenceClass { residue, modulus: 48 }))
}

/// `K(a) mod 64` indexed by `T(a) mod 16`.
pub const MOD64_TABLE: [u32; 16] = [0, 28, 40, 36, 16, 44, 56, 52, 32, 60, 8, 4, 48, 12, 24, 20];

/// `-36 T - 16 Q mod 64`; needs `T` mod 16 and `Q` mod 4.
pub fn mod64_from_lifted(t_hat: IntResidue, q_hat: IntResidue) -> Result<CongruenceClass> {
    let t = t_hat.reduce(4)?.value() as i64;
    let q = q_hat.reduce(2)?.value() as i64;
    CongruenceClass::of(-36 * t - 16 * q, 64)
}

/// Table lookup from the lifted trace, cross-checked against the formula
/// with `Q` recovered from `2Q = T^2 - T`.
pub fn predict_mod64_from_lifted_trace(t_hat: IntResidue) -> Result<CongruenceClass> {
    let t = t_hat.reduce(4)?.value();
    let by_table = CongruenceClass {
        residue: MOD64_TABLE[t as usize],
        modulus: 64,
    };
    // T^2 - T is even; halving mod 16 leaves Q mod 8
    let q = ((t * t + 16 - t) % 16) / 2;
    let by_formula = mod64_from_lifted(t_hat.reduce(4)?, IntResidue::new(q, 3))?;
    if by_table != by_formula {
        return Err(Error::Internal(format!(
            "mod-64 table gives {by_table}, formula gives {by_formula} for T = {t}"
        )));
    }
    Ok(by_table)
}

pub fn predict_mod64(ring: &RingCtx, a: FieldElement) -> Result<CongruenceClass> {
    if ring.precision() < 4 {
        return Err(Error::Config(format!(
            "mod-64 prediction needs ring precision k >= 4, got {}",
            ring.precision()
        )));
    }
    predict_mod64_from_lifted_trace(ring.lifted_trace(a)?)
}

pub fn predict_mod192_odd(ring: &RingCtx, a: FieldElement) -> Result<CongruenceClass> {
    let m64 = predict_mod64(ring, a)?;
    let m3 = predict_mod3_odd(ring.base(), a)?;
    crt(m64, m3)
}

/// Binary moduli accepted by [`predict`].
pub const BINARY_MODULI: [u32; 5] = [8, 16, 48, 64, 192];

/// Dispatches to the predictor for `modulus`; the ring (precision >= 4) is
/// used only for 64 and 192.
pub fn predict(ring: &RingCtx, a: FieldElement, modulus: u32) -> Result<CongruenceClass> {
    let field = ring.base();
    match modulus {
        8 => Ok(predict_mod8(field.trace(a))),
        16 => Ok(predict_mod16(field.trace(a), field.quadratic_trace(a))),
        48 => predict_mod48_odd(field, a),
        64 => predict_mod64(ring, a),
        192 => predict_mod192_odd(ring, a),
        m => Err(Error::Domain(format!(
            "no binary predictor for modulus {m}; expected one of 8, 16, 48, 64, 192"
        ))),
    }
}

pub fn predict_ternary_mod9(tr: u8) -> CongruenceClass {
    assert!(tr < 3, "trace value {tr} is not in GF(3)");
    CongruenceClass {
        residue: 3 * tr as u32,
        modulus: 9,
    }
}
