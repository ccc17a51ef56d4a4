//! Acceptance criteria, run in order with one PASS/FAIL line each.
//! The binary exits non-zero if any criterion fails.

use std::io::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kloosterman_core::congruences::{
    lisonek_div16, mod64_from_lifted, predict_mod16, predict_mod192_odd, predict_mod48_literal,
    predict_mod48_odd, predict_mod64, predict_mod8, predict_ternary_mod9,
};
use kloosterman_core::export::write_spectrum_csv;
use kloosterman_core::gauss::{
    fourier_congruence_check, gamma2, gauss_sum, gk_check, stickelberger_check, wt2, GaussTable,
};
use kloosterman_core::{
    ksum_all, ksum_naive, ternary_ksum_all, FieldCtx, IntResidue, RingCtx, TernaryFieldCtx,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn field(n: u32) -> FieldCtx {
    FieldCtx::new(n, None).unwrap()
}

fn ring(n: u32, k: u32) -> RingCtx {
    RingCtx::new(field(n), k).unwrap()
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed < Duration::from_secs(limit_secs)
}

/// Independent GF(2^n) arithmetic: shift-and-add multiplication, inversion by
/// exhaustive search, trace by summing squares.
mod oracle {
    pub struct Field {
        pub n: u32,
        pub poly: u32,
    }

    impl Field {
        pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
            let mut r = 0;
            while b != 0 {
                if b & 1 == 1 {
                    r ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a >> self.n & 1 == 1 {
                    a ^= self.poly;
                }
            }
            r
        }

        pub fn trace(&self, a: u32) -> u32 {
            let (mut t, mut c) = (0, a);
            for _ in 0..self.n {
                t ^= c;
                c = self.mul(c, c);
            }
            assert!(t <= 1, "trace must land in GF(2)");
            t
        }

        pub fn kloosterman_all(&self) -> Vec<i64> {
            let q = 1u32 << self.n;
            let mut inv = vec![0u32; q as usize];
            for x in 1..q {
                inv[x as usize] = (1..q).find(|&y| self.mul(x, y) == 1).unwrap();
            }
            (0..q)
                .map(|a| {
                    (0..q)
                        .map(|x| {
                            if self.trace(inv[x as usize] ^ self.mul(a, x)) == 1 {
                                -1
                            } else {
                                1
                            }
                        })
                        .sum()
                })
                .collect()
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut checked = 0u64;
    for n in 3..=14 {
        let ctx = field(n);
        let spec = ksum_all(&ctx).unwrap();
        for a in ctx.elements() {
            checked += 1;
            if !predict_mod8(ctx.trace(a)).contains(spec.get(a) as i64) {
                mismatches += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(
        mismatches == 0 && within(t, 5),
        format!("mod 8, n=3..14: {checked} elements, {mismatches} mismatches, {t:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut checked = 0u64;
    for n in 4..=14 {
        let ctx = field(n);
        let spec = ksum_all(&ctx).unwrap();
        for a in ctx.elements() {
            checked += 1;
            let class = predict_mod16(ctx.trace(a), ctx.quadratic_trace(a));
            if !class.contains(spec.get(a) as i64) {
                mismatches += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(
        mismatches == 0 && within(t, 5),
        format!("mod 16, n=4..14: {checked} elements, {mismatches} mismatches, {t:.2?}"),
    )
}

fn criterion_3() -> Outcome {
    let (mut exact, mut table) = (0, 0);
    for n in 4..=14 {
        let ctx = field(n);
        let spec = ksum_all(&ctx).unwrap();
        for a in ctx.elements() {
            let div = lisonek_div16(&ctx, a);
            if div != (spec.get(a) % 16 == 0) {
                exact += 1;
            }
            let zero_class = predict_mod16(ctx.trace(a), ctx.quadratic_trace(a)).residue() == 0;
            if div != zero_class {
                table += 1;
            }
        }
    }
    outcome(
        exact == 0 && table == 0,
        format!("16 | K, n=4..14: {exact} mismatches vs K, {table} vs mod-16 class 0"),
    )
}

fn criterion_4() -> Outcome {
    let mut mismatches = 0;
    let mut literal = Vec::new();
    for n in [5, 7, 9, 11, 13] {
        let ctx = field(n);
        let spec = ksum_all(&ctx).unwrap();
        let (mut no_row, mut contradicts) = (0, 0);
        for a in ctx.elements().skip(1) {
            let k = spec.get(a) as i64;
            if !predict_mod48_odd(&ctx, a).unwrap().contains(k) {
                mismatches += 1;
            }
            match predict_mod48_literal(&ctx, a).unwrap() {
                None => no_row += 1,
                Some(c) if !c.contains(k) => contradicts += 1,
                Some(_) => {}
            }
        }
        literal.push(format!("n={n}: {no_row} without row, {contradicts} contradicted"));
    }
    outcome(
        mismatches == 0,
        format!(
            "mod 48 (proof rule), odd n=5..13: {mismatches} mismatches; literal table: {}",
            literal.join("; ")
        ),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let (mut table, mut paths) = (0, 0);
    for n in 6..=14 {
        let r = ring(n, 4);
        let spec = ksum_all(r.base()).unwrap();
        for a in r.base().elements() {
            let class = predict_mod64(&r, a).unwrap();
            if !class.contains(spec.get(a) as i64) {
                table += 1;
            }
            let w = r.teichmuller(a);
            let (t_hat, q_hat) = r.lifted_traces_of(&w).unwrap();
            if mod64_from_lifted(t_hat, q_hat).unwrap() != class {
                paths += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(
        table == 0 && paths == 0 && within(t, 30),
        format!("mod 64, n=6..14, k=4: {table} table mismatches, {paths} path disagreements, {t:.2?}"),
    )
}

fn criterion_6() -> Outcome {
    let mut mismatches = 0;
    let mut checked = 0;
    for n in [7, 9, 11, 13] {
        let r = ring(n, 4);
        let spec = ksum_all(r.base()).unwrap();
        for a in r.base().elements().skip(1) {
            checked += 1;
            if !predict_mod192_odd(&r, a).unwrap().contains(spec.get(a) as i64) {
                mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("mod 192, n=7,9,11,13: {checked} elements, {mismatches} mismatches"),
    )
}

fn criterion_7() -> Outcome {
    let mut failures = 0;
    let mut checked = 0;
    for n in 4..=8 {
        let table = GaussTable::new(ring(n, 8)).unwrap();
        for (j, g) in table.iter() {
            checked += 1;
            let wt = wt2(j);
            let valuation = g.valuation() == Some(wt);
            let congruence =
                g.reduce(wt + 1).unwrap() == IntResidue::from_i64((-2i64).pow(wt), wt + 1);
            if !(valuation && congruence) {
                failures += 1;
            }
        }
        // the library predicate agrees on a sample
        assert!(stickelberger_check(table.ring(), 1).unwrap());
    }
    outcome(
        failures == 0,
        format!("Stickelberger, n=4..8, k=8: {checked} indices, {failures} failures"),
    )
}

fn criterion_8() -> Outcome {
    let mut gk_failures = 0;
    let mut checked = 0;
    for n in 3..=8 {
        // six bits on the Gamma-product unit for every index
        let r = ring(n, n + 5);
        for j in 1..(1u64 << n) - 1 {
            checked += 1;
            if !gk_check(&r, j).unwrap() {
                gk_failures += 1;
            }
        }
    }
    let gammas: Vec<u64> = (0..8).map(|x| gamma2(IntResidue::new(x, 3)).value()).collect();
    let gamma_ok = gammas == [1, 7, 1, 7, 3, 5, 7, 1];
    let g1: Vec<u64> = (3..=12)
        .map(|n| gauss_sum(&ring(n, 4), 1).unwrap().value())
        .collect();
    let g1_ok = g1.iter().all(|&v| v == 6);
    outcome(
        gk_failures == 0 && gamma_ok && g1_ok,
        format!(
            "Gross-Koblitz n=3..8: {checked} indices, {gk_failures} failures; Gamma_2 mod 8 = {gammas:?}; g(1) mod 16 for n=3..12 = {g1:?}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut mismatches = 0;
    let mut n8 = Duration::ZERO;
    for n in 4..=8 {
        let start = Instant::now();
        let table = GaussTable::new(ring(n, n)).unwrap();
        for a in table.ring().base().elements() {
            if !fourier_congruence_check(&table, a).unwrap() {
                mismatches += 1;
            }
        }
        if n == 8 {
            n8 = start.elapsed();
        }
    }
    outcome(
        mismatches == 0 && within(n8, 60),
        format!("Fourier congruence mod 2^n, n=4..8: {mismatches} mismatches, n=8 in {n8:.2?}"),
    )
}

fn criterion_10() -> Outcome {
    let mut failures = 0;
    for n in 4..=8 {
        for k in [4, 6] {
            let r = ring(n, k);
            for w in r.teichmuller_table() {
                let (t, q) = r.lifted_traces_of(&w).unwrap();
                let rhs = IntResidue::new(2 * q.value() + t.value(), k);
                if t.mul(t) != rhs {
                    failures += 1;
                }
            }
        }
    }
    outcome(
        failures == 0,
        format!("T^2 = 2Q + T, n=4..8, k=4,6: {failures} failures"),
    )
}

fn criterion_11() -> Outcome {
    let mut invariant = Vec::new();
    let mut range = Vec::new();
    let mut value_sets = Vec::new();
    for n in 4..=14 {
        let spec = ksum_all(&field(n)).unwrap();
        invariant.extend(spec.invariant_violations().into_iter().map(|v| format!("n={n}: {v}")));
        range.extend(spec.range_violations().into_iter().map(|v| format!("n={n}: {v}")));
        if matches!(n, 8 | 10 | 12) {
            let vs = spec.value_set();
            value_sets.push(format!(
                "n={n}: [{}, {}] stated={} shifted={}",
                vs.min, vs.max, vs.matches_stated_range, vs.matches_shifted_range
            ));
        }
    }
    outcome(
        invariant.is_empty() && range.is_empty(),
        format!(
            "spectrum n=4..14: invariant violations {invariant:?}; |K| <= 2^(n/2+1) violations {range:?}; value sets {}",
            value_sets.join("; ")
        ),
    )
}

fn criterion_12() -> Outcome {
    let start = Instant::now();
    let (mut mod9, mut div3) = (0, 0);
    let mut bound = Vec::new();
    for n in 2..=7 {
        let ctx = TernaryFieldCtx::new(n, None).unwrap();
        let values = ternary_ksum_all(&ctx).unwrap();
        let four_q = 4 * ctx.order() as i64;
        for (i, &k) in values.iter().enumerate() {
            let a = ctx.element(i as u64).unwrap();
            if !predict_ternary_mod9(ctx.trace(a)).contains(k) {
                mod9 += 1;
            }
            if k % 3 != 0 {
                div3 += 1;
            }
            if k * k >= four_q {
                bound.push(format!("n={n}: K={k}"));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        mod9 == 0 && div3 == 0 && bound.is_empty() && within(t, 30),
        format!(
            "ternary n=2..7: {mod9} mod-9 mismatches, {div3} not divisible by 3, |K| < 2*3^(n/2) violations {bound:?}, {t:.2?}"
        ),
    )
}

fn criterion_13() -> Outcome {
    let mut mismatches = 0;
    let mut oracle_mismatches = 0;
    for n in 3..=12 {
        let ctx = field(n);
        let spec = ksum_all(&ctx).unwrap();
        for a in ctx.elements() {
            if spec.get(a) as i64 != ksum_naive(&ctx, a) {
                mismatches += 1;
            }
        }
        if n <= 9 {
            let independent = oracle::Field {
                n,
                poly: ctx.poly() as u32,
            }
            .kloosterman_all();
            let ours: Vec<i64> = spec.values().iter().map(|&v| v as i64).collect();
            if independent != ours {
                oracle_mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0 && oracle_mismatches == 0,
        format!(
            "WHT vs pointwise, n=3..12: {mismatches} mismatches; independent oracle n=3..9: {oracle_mismatches} differing degrees"
        ),
    )
}

fn ktable_csv(n: u32) -> Vec<u8> {
    let ctx = field(n);
    let spec = ksum_all(&ctx).unwrap();
    let mut out = Vec::new();
    write_spectrum_csv(&ctx, &spec, &mut out).unwrap();
    out
}

fn criterion_14() -> Outcome {
    let start = Instant::now();
    let default = ktable_csv(20);
    let t = start.elapsed();
    let pool = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
    };
    let single = pool(1).install(|| ktable_csv(20));
    let many = pool(4).install(|| ktable_csv(20));
    let same = single == default && many == default;
    outcome(
        within(t, 10) && same,
        format!(
            "ktable n=20 in {t:.2?} ({} bytes of CSV); identical across 1/4/default threads: {same}",
            default.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 14] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
        (13, criterion_13),
        (14, criterion_14),
    ];
    let mut failed = Vec::new();
    let mut stdout = std::io::stdout();
    for (id, run) in criteria {
        let result = run();
        let status = if result.pass { "PASS" } else { "FAIL" };
        writeln!(stdout, "criterion {id:>2}: {status}  {}", result.detail).unwrap();
        stdout.flush().unwrap();
        if !result.pass {
            failed.push(id);
        }
    }
    writeln!(
        stdout,
        "acceptance: {} of {} criteria passed; failed: {failed:?}",
        criteria.len() - failed.len(),
        criteria.len()
    )
    .unwrap();
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
