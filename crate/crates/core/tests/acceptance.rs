//! One PASS/FAIL line per acceptance criterion.
//!
//! A criterion listed in `KNOWN_FAILURES` prints FAIL with its reason but does
//! not fail the run; if it starts passing, the run fails so the list is kept
//! honest.

mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use tensormult_core::arith::{Poly, Rat};
use tensormult_core::characters::kronecker;
use tensormult_core::ennola::{parse_tex_label, table_rows, MasterContext, PsiCache, Registry, SignData};
use tensormult_core::hall_littlewood::{extend_to_type, kostka_foulkes, transformed_hl_powersum};
use tensormult_core::partition::{
    enumerate_multipartitions, enumerate_partitions, sorted_multipartitions, MultiPartition, Partition,
};
use tensormult_core::symfunc::{Basis, GradedSeries, SymFunc};
use tensormult_core::types::enumerate_types;

const KNOWN_FAILURES: &[(u8, &str)] = &[(
    5,
    "the sign (-1)^{d/2+n} contradicts the reference U' tables for every nonzero odd-n row; \
     (-1)^{d/2} reproduces them",
)];

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

fn golden_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden"))
}

/// Rows of a transcribed table keyed by multipartition.
fn golden_table(name: &str, n: usize) -> BTreeMap<MultiPartition, Poly> {
    let text = std::fs::read_to_string(golden_dir().join(format!("{name}-n{n}.tex"))).unwrap();
    text.lines()
        .filter(|l| l.starts_with('('))
        .map(|line| {
            let cells: Vec<&str> = line.trim_end_matches("\\\\").split('&').map(str::trim).collect();
            let (labels, value) = cells.split_at(cells.len() - 1);
            let parts = labels.iter().map(|l| parse_tex_label(l).unwrap()).collect();
            (MultiPartition::new(parts).unwrap(), value[0].parse().unwrap())
        })
        .collect()
}

/// Compares `f` on every sorted multipartition of `n` with a golden table,
/// absent rows meaning zero. Returns the rows checked and the mismatches.
fn compare_table(
    golden: &BTreeMap<MultiPartition, Poly>,
    n: usize,
    f: impl Fn(&MultiPartition) -> Poly,
) -> (usize, Vec<String>) {
    let mut bad = Vec::new();
    for mu in sorted_multipartitions(n, 3) {
        let expected = golden.get(&mu).cloned().unwrap_or_else(Poly::zero);
        let got = f(&mu);
        if got != expected {
            bad.push(format!("{mu}: {got} vs {expected}"));
        }
    }
    (golden.len(), bad)
}

fn table_criterion(ctx: &MasterContext, name: &str, range: std::ops::RangeInclusive<usize>, anchors: &[(&str, &str)]) -> Outcome {
    let q = Registry::standard();
    let q = q.get(name).unwrap();
    let mut counts = Vec::new();
    let mut bad = Vec::new();
    for n in range {
        let golden = golden_table(name, n);
        let (rows, mismatches) = compare_table(&golden, n, |mu| q.eval(ctx, mu).unwrap());
        counts.push(rows.to_string());
        bad.extend(mismatches);
    }
    for (mu, expected) in anchors {
        let got = q.eval(ctx, &MultiPartition::parse(mu).unwrap()).unwrap();
        if got != expected.parse().unwrap() {
            bad.push(format!("anchor {mu}: {got}"));
        }
    }
    let detail = format!("rows per n: {}; {} mismatches{}", counts.join("+"), bad.len(), first(&bad));
    outcome(bad.is_empty(), detail)
}

fn first(items: &[String]) -> String {
    items.first().map(|s| format!(", first: {s}")).unwrap_or_default()
}

fn criterion1(cache_dir: &Path) -> (Outcome, MasterContext) {
    let cache = PsiCache::new(cache_dir);
    let v = Registry::standard();
    let v = v.get("V").unwrap();
    let timed = || {
        let start = Instant::now();
        let (ctx, _) = cache.context(3, 5).unwrap();
        for n in 2..=5 {
            table_rows(&ctx, v, n).unwrap();
        }
        (ctx, start.elapsed())
    };
    let (_, cold) = timed();
    let (ctx, warm) = timed();
    let mut out = table_criterion(&ctx, "V", 2..=5, &[("1^5,1^5,1^5", "q^6 + q^4 + q^3 + q^2 + q")]);
    let fast = cold < Duration::from_secs(120) && warm < Duration::from_secs(5);
    out.pass &= fast;
    out.detail = format!(
        "{}; cold {:.2}s, warm {:.2}s (the reference n=5 table has 20 rows)",
        out.detail,
        cold.as_secs_f64(),
        warm.as_secs_f64()
    );
    (out, ctx)
}

fn criterion4(ctx: &MasterContext) -> Outcome {
    let text = std::fs::read_to_string(golden_dir().join("tau-intro.txt")).unwrap();
    let mut bad = Vec::new();
    let mut count = 0;
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let mut cols = line.split_whitespace();
        let n: usize = cols.next().unwrap().parse().unwrap();
        let lam: Partition = cols.next().unwrap().parse().unwrap();
        let expected: Poly = cols.collect::<Vec<_>>().join(" ").parse().unwrap();
        let mu = MultiPartition::new(vec![Partition::column(n), Partition::column(n), lam]).unwrap();
        let got = ctx.t_poly(&mu).unwrap();
        count += 1;
        if got != expected {
            bad.push(format!("{mu}: {got} vs {expected}"));
        }
    }
    outcome(bad.is_empty(), format!("{count} reference coefficients, {} mismatches{}", bad.len(), first(&bad)))
}

fn criterion5(ctx: &MasterContext) -> Outcome {
    let mut interp_bad = Vec::new();
    let mut shifted_bad: BTreeMap<usize, usize> = BTreeMap::new();
    let mut corrected_bad = 0;
    let mut cases = 0;
    for n in 1..=5 {
        let golden = golden_table("Uprime", n);
        for mu in enumerate_multipartitions(n, 3) {
            cases += 1;
            let t = ctx.t_poly(&mu).unwrap();
            if t.eval_u(0) != ctx.v_mu(&mu).unwrap() {
                interp_bad.push(format!("{mu}: T(0,q) ≠ V"));
            }
            if t.eval_u(1) != ctx.oracles().u_poly(&mu).unwrap() {
                interp_bad.push(format!("{mu}: T(1,q) ≠ U"));
            }
            let expected = golden.get(&mu.sorted()).cloned().unwrap_or_else(Poly::zero);
            let s = SignData::new(&mu).unwrap();
            let base = t.eval_u(-1).negate_q();
            let apply = |sign: i64| if sign < 0 { -base.clone() } else { base.clone() };
            if apply(s.shifted_sign_uprime) != expected {
                *shifted_bad.entry(n).or_default() += 1;
            }
            if apply(s.sign_uprime) != expected {
                corrected_bad += 1;
            }
        }
    }
    let shifted_total: usize = shifted_bad.values().sum();
    let by_n: Vec<String> = shifted_bad.iter().map(|(n, c)| format!("n={n}: {c}")).collect();
    let detail = format!(
        "{cases} cases; T(0,q)=V and T(1,q)=U: {} failures; (-1)^{{d/2+n}}T(-1,-q)=U': {shifted_total} failures ({}); \
         with (-1)^{{d/2}}: {corrected_bad} failures",
        interp_bad.len(),
        by_n.join(", ")
    );
    outcome(interp_bad.is_empty() && shifted_total == 0, detail)
}

fn kronecker_check(ctx: &MasterContext, max_n: usize) -> (usize, Vec<String>) {
    let mut bad = Vec::new();
    let mut cases = 0;
    for n in 1..=max_n {
        for mu in enumerate_multipartitions(n, ctx.k()) {
            cases += 1;
            let top = ctx.t_poly(&mu).unwrap().u_coeff(n as u32 - 1);
            if top != Poly::from(kronecker(&mu).unwrap()) {
                bad.push(format!("{mu}: {top}"));
            }
        }
    }
    (cases, bad)
}

fn criterion6(ctx3: &MasterContext) -> Outcome {
    let (c3, mut bad) = kronecker_check(ctx3, 5);
    let ctx4 = MasterContext::build(4, 4).unwrap();
    let (c4, bad4) = kronecker_check(&ctx4, 4);
    bad.extend(bad4);
    outcome(bad.is_empty(), format!("{c3} cases at k=3, {c4} at k=4; {} failures{}", bad.len(), first(&bad)))
}

fn criterion7(ctx: &MasterContext) -> Outcome {
    let o = ctx.oracles();
    let mut bad = Vec::new();
    let mut cases = 0;
    for n in 1..=4 {
        for mu in enumerate_multipartitions(n, 3) {
            cases += 1;
            if ctx.u_poly(&mu).unwrap() != o.u_poly(&mu).unwrap() {
                bad.push(format!("{mu}: U"));
            }
            let uprime = ctx.uprime_poly(&mu).unwrap();
            if uprime != o.uprime_poly(&mu).unwrap() || uprime != o.uprime_log_form_poly(&mu).unwrap() {
                bad.push(format!("{mu}: U'"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{cases} cases, U and U' (product and log expansion); {} failures{}", bad.len(), first(&bad)))
}

fn criterion8(ctx: &MasterContext) -> Outcome {
    let mut negative = Vec::new();
    let mut leading = Vec::new();
    let mut cases = 0;
    for n in 1..=5 {
        for mu in enumerate_multipartitions(n, 3) {
            cases += 1;
            let t = ctx.t_poly(&mu).unwrap();
            if t.terms().any(|(_, c)| c < &BigInt::from(0)) {
                negative.push(format!("{mu}: {t}"));
            }
            let u = ctx.uprime_poly(&mu).unwrap();
            if u.leading().is_some_and(|(_, c)| c < &BigInt::from(0)) {
                leading.push(format!("{mu}: {u}"));
            }
        }
    }
    let pass = negative.is_empty() && leading.is_empty();
    outcome(
        pass,
        format!(
            "{cases} cases; negative T coefficients: {}, U' with negative leading coefficient: {}",
            negative.len(),
            leading.len()
        ),
    )
}

fn criterion9() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();

    // Exp/Log on log Ω for two alphabets.
    let ctx = MasterContext::build(2, 5).unwrap();
    let log = ctx.log_omega();
    if &log.exp().unwrap() != ctx.omega() || &ctx.omega().log().unwrap() != log {
        bad.push("exp/log roundtrip".to_string());
    }
    let other = ctx.psi().adams(2);
    let lhs = log.add(&other).unwrap().exp().unwrap();
    if lhs != log.exp().unwrap().mul(&other.exp().unwrap()).unwrap() {
        bad.push("exp homomorphism".to_string());
    }
    if ctx.psi().pleth_exp().unwrap().pleth_log().unwrap() != *ctx.psi() {
        bad.push("plethystic roundtrip".to_string());
    }

    // Log over types, n ≤ 4.
    let order = 4;
    let u = |lam: &Partition| -> SymFunc {
        transformed_hl_powersum(lam).scale(&Rat::from_poly(lam.a_poly()).inv().unwrap())
    };
    let mut series = GradedSeries::one(1, order);
    for n in 1..=order {
        for lam in enumerate_partitions(n) {
            series.add_piece(u(&lam)).unwrap();
        }
    }
    let plog = series.pleth_log().unwrap();
    for n in 1..=order {
        let mut expected = SymFunc::zero(1, n, Basis::PowerSum);
        for ty in enumerate_types(n) {
            let c = ty.c_tau();
            let term = extend_to_type(u, &ty).scale(&Rat::from_big_rational(&c));
            expected = expected.add(&term).unwrap();
        }
        if plog.coeff(n) != &expected {
            bad.push(format!("Log over types, degree {n}"));
        }
    }

    // Duality of the type decomposition, |ω| ≤ 5.
    for n in 1..=5 {
        for ty in enumerate_types(n) {
            for mu in enumerate_partitions(n) {
                let lhs = ty.c_omega(&mu.dual()).unwrap();
                let rhs = ty.dual().c_omega(&mu).unwrap();
                let rhs = if ty.r_stat() % 2 == 0 { rhs } else { -rhs };
                if lhs != rhs {
                    bad.push(format!("duality {ty}, {mu}"));
                }
            }
        }
    }

    // Hall pairing on Schur and power-sum bases, and Kostka–Foulkes, n ≤ 6.
    for n in 1..=6 {
        let parts = enumerate_partitions(n);
        for lam in &parts {
            let s_lam = SymFunc::single(Basis::Schur, n, [(lam.clone(), Rat::one())]).to_powersum();
            let p_lam = SymFunc::single(Basis::PowerSum, n, [(lam.clone(), Rat::one())]);
            for mu in &parts {
                let s_mu = SymFunc::single(Basis::Schur, n, [(mu.clone(), Rat::one())]).to_powersum();
                let p_mu = SymFunc::single(Basis::PowerSum, n, [(mu.clone(), Rat::one())]);
                let same = lam == mu;
                if s_lam.hall_pairing(&s_mu).unwrap() != Rat::integer(same as i64) {
                    bad.push(format!("<s_{lam}, s_{mu}>"));
                }
                let z = if same { lam.z() } else { BigInt::from(0) };
                if p_lam.hall_pairing(&p_mu).unwrap() != Rat::integer(z) {
                    bad.push(format!("<p_{lam}, p_{mu}>"));
                }
                if kostka_foulkes(lam, mu).unwrap() != common::lusztig_kostka(lam, mu) {
                    bad.push(format!("K_{{{lam},{mu}}}"));
                }
            }
        }
    }

    // d_μ parity, n ≤ 6, k ≤ 4.
    for k in 1..=4 {
        for n in 1..=6 {
            for mu in enumerate_multipartitions(n, k) {
                if SignData::new(&mu).is_err() {
                    bad.push(format!("d_μ parity {mu}"));
                }
            }
        }
    }

    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(300);
    outcome(pass, format!("{} failures{}, {:.2}s", bad.len(), first(&bad), elapsed.as_secs_f64()))
}

fn main() {
    let cache_dir = tempfile::tempdir().unwrap();
    let (c1, ctx) = criterion1(cache_dir.path());
    let results = vec![
        (1, c1),
        (2, table_criterion(&ctx, "U", 1..=5, &[("1^4,1^4,1^4", "q^3 + 2q + 1"), ("2.1^3,2.1^3,2.1^3", "2q^3 + 6q^2 + 16q + 28")])),
        (3, table_criterion(&ctx, "Uprime", 1..=5, &[("1^5,1^5,2.1^3", "q^5 - q^4 + q^3 - q^2")])),
        (4, criterion4(&ctx)),
        (5, criterion5(&ctx)),
        (6, criterion6(&ctx)),
        (7, criterion7(&ctx)),
        (8, criterion8(&ctx)),
        (9, criterion9()),
    ];
    let mut unexpected = 0;
    for (id, out) in &results {
        let known = KNOWN_FAILURES.iter().find(|(k, _)| k == id).map(|(_, why)| *why);
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {id}: {verdict}  {}", out.detail);
        match (out.pass, known) {
            (false, Some(why)) => println!("    known: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("    listed as a known failure but passed");
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
