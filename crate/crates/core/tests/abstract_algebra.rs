use kloosterman_core::congruences::{predict_mod16, predict_mod3_odd, predict_mod48_odd, predict_mod8};
use kloosterman_core::gauss::{gamma2, gk_unit_product, gross_koblitz_rhs};
use kloosterman_core::{FieldCtx, FieldElement, IntResidue, RingCtx};
use proptest::prelude::*;

fn element(ctx: &FieldCtx, bits: u32) -> FieldElement {
    ctx.element(bits & (ctx.order() as u32 - 1)).unwrap()
}

proptest! {
    #[test]
    fn field_axioms(n in 2u32..=16, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let k = FieldCtx::new(n, None).unwrap();
        let (a, b, c) = (element(&k, a), element(&k, b), element(&k, c));
        prop_assert_eq!(k.mul(a, b), k.mul(b, a));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.mul(a, b + c), k.mul(a, b) + k.mul(a, c));
        prop_assert_eq!(k.mul(a, FieldElement::ONE), a);
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv_or_zero(a)), FieldElement::ONE);
        }
        prop_assert_eq!(k.pow(a, k.order()), a);
    }

    #[test]
    fn trace_and_quadratic_trace(n in 2u32..=20, a in any::<u32>(), b in any::<u32>()) {
        let k = FieldCtx::new(n, None).unwrap();
        let (a, b) = (element(&k, a), element(&k, b));
        prop_assert_eq!(k.trace(a + b), k.trace(a) ^ k.trace(b));
        prop_assert_eq!(k.trace(k.square(a)), k.trace(a));
        prop_assert_eq!(k.trace_by_conjugates(a), if k.trace(a) { FieldElement::ONE } else { FieldElement::ZERO });
        prop_assert_eq!(k.quadratic_trace(a), k.quadratic_trace_via_traces(a));
    }

    #[test]
    fn half_trace_solutions(n in 2u32..=20, c in any::<u32>()) {
        let k = FieldCtx::new(n, None).unwrap();
        let c = element(&k, c);
        match k.half_trace_solve(c) {
            Some(y) => prop_assert_eq!(k.square(y) + y, c),
            None => prop_assert!(k.trace(c)),
        }
    }

    #[test]
    fn cube_roots_and_beta(n in (2u32..=10).prop_map(|m| 2 * m + 1), a in any::<u32>()) {
        let k = FieldCtx::new(n, None).unwrap();
        let a = element(&k, a);
        let r = k.cube_root(a).unwrap();
        prop_assert_eq!(k.pow(r, 3), a);
        if let Some(beta) = k.solve_beta(a).unwrap() {
            let b4 = k.square(k.square(beta));
            prop_assert_eq!(b4 + beta, a + FieldElement::ONE);
            prop_assert!(!k.trace(beta));
        }
    }

    #[test]
    fn teichmuller_is_multiplicative(n in 2u32..=10, k in 2u32..=20, a in any::<u32>(), b in any::<u32>()) {
        let r = RingCtx::new(FieldCtx::new(n, None).unwrap(), k).unwrap();
        let (a, b) = (element(r.base(), a), element(r.base(), b));
        let wa = r.teichmuller(a);
        let wb = r.teichmuller(b);
        prop_assert_eq!(r.mul(&wa, &wb), r.teichmuller(r.base().mul(a, b)));
        prop_assert_eq!(r.residue(&wa), a);
        prop_assert_eq!(r.pow(&wa, r.base().order()), wa);
    }

    #[test]
    fn ring_axioms(n in 2u32..=8, k in 1u32..=32, x in proptest::collection::vec(any::<u64>(), 24)) {
        let r = RingCtx::new(FieldCtx::new(n, None).unwrap(), k).unwrap();
        let n = n as usize;
        let a = r.from_coeffs(&x[..n].iter().map(|v| v % (1 << k)).collect::<Vec<_>>()).unwrap();
        let b = r.from_coeffs(&x[8..8 + n].iter().map(|v| v % (1 << k)).collect::<Vec<_>>()).unwrap();
        let c = r.from_coeffs(&x[16..16 + n].iter().map(|v| v % (1 << k)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.add(&a, &r.neg(&a)), r.zero());
    }

    #[test]
    fn gamma2_product_is_a_unit(n in 3u32..=12, j in any::<u64>(), m in 3u32..=12) {
        let j = 1 + j % ((1u64 << n) - 2);
        let unit = gk_unit_product(n, j, m);
        prop_assert!(unit.is_unit());
        let rhs = gross_koblitz_rhs(n, j, m).unwrap();
        prop_assert_eq!(rhs.valuation(), Some(j.count_ones()));
    }
}

#[test]
fn congruence_lattice() {
    for n in [5, 7, 9] {
        let k = FieldCtx::new(n, None).unwrap();
        for a in k.elements().skip(1) {
            let m16 = predict_mod16(k.trace(a), k.quadratic_trace(a));
            assert_eq!(m16.reduce(8).unwrap(), predict_mod8(k.trace(a)));
            let m48 = predict_mod48_odd(&k, a).unwrap();
            assert_eq!(m48.reduce(16).unwrap(), m16);
            assert_eq!(m48.reduce(3).unwrap(), predict_mod3_odd(&k, a).unwrap());
        }
    }
}

#[test]
fn gamma2_functional_equation() {
    // Gamma_2(x + 1) = -x Gamma_2(x) for odd x, -Gamma_2(x) for even x
    for x in 0..200u64 {
        let g = gamma2(IntResidue::new(x, 12));
        let next = gamma2(IntResidue::new(x + 1, 12));
        let factor = if x % 2 == 1 { x.wrapping_neg() } else { 1u64.wrapping_neg() };
        assert_eq!(next, g.mul(IntResidue::new(factor, 12)), "x={x}");
    }
}
