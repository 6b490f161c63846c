//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Failing criteria are reported, not hidden. The process exits non-zero on a
//! failure only when `ACCEPTANCE_STRICT=1`, so the rest of the workspace
//! suite still runs; the summary line names every failing criterion.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use pacs_correlations::correlations::{discord_12_peak, Quantity, QuantityKind};
use pacs_correlations::fock_oracle::{oracle_values, truncation, DensityMatrix};
use pacs_correlations::linalg::eigh;
use pacs_correlations::special::binary_entropy;
use pacs_correlations::states::{ghz_rho12, ghz_rho23};
use pacs_correlations::{report, LaguerreOrder, ModelParams, Parity};

const BIN: &str = env!("CARGO_BIN_EXE_pacs-corr");

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn h(x: f64) -> f64 {
    binary_entropy(x).unwrap()
}

fn params(alpha2: f64, m: u32, parity: Parity) -> ModelParams {
    ModelParams::new(alpha2, m, parity).unwrap()
}

fn verify_grid() -> Vec<ModelParams> {
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for m in 0..=4 {
            for i in 1..=40 {
                out.push(params(f64::from(i) / 10.0, m, parity));
            }
        }
    }
    out
}

fn run_bin(args: &[&str]) -> (i32, String, Duration) {
    let t0 = Instant::now();
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    let elapsed = t0.elapsed();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        elapsed,
    )
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).expect("csv readable");
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn field(s: &str, key: &str) -> Option<f64> {
    s.split_whitespace()
        .find_map(|tok| tok.strip_prefix(key))
        .and_then(|v| v.parse().ok())
}

fn criterion_1() -> Outcome {
    let (code, stdout, elapsed) = run_bin(&["threshold", "--m", "0", "--k", "1"]);
    let a = field(&stdout, "alpha2*=");
    let p = field(&stdout, "p*=");
    let pass = code == 0
        && a.is_some_and(|a| (0.1055..=0.1095).contains(&a))
        && p.is_some_and(|p| (0.802..=0.810).contains(&p))
        && elapsed < Duration::from_secs(1);
    Outcome {
        id: 1,
        title: "monogamy threshold (m=0, k=1)",
        pass,
        detail: format!(
            "alpha2*={} in [0.1055, 0.1095], p*={} in [0.802, 0.810], runtime {:.3} s < 1 s",
            a.map_or("none".into(), |v| format!("{v:.7}")),
            p.map_or("none".into(), |v| format!("{v:.7}")),
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_2(dir: &Path) -> Outcome {
    let out = dir.join("verify.csv");
    let (code, _, elapsed) = run_bin(&["verify", "--out", out.to_str().unwrap()]);
    let (header, rows) = read_csv(&out);
    let mut max_exact: f64 = 0.0;
    let mut max_discord: f64 = 0.0;
    for q in Quantity::ALL {
        let col = header.iter().position(|c| *c == format!("dev_{}", q.name())).unwrap();
        for row in &rows {
            let v: f64 = row[col].parse::<f64>().unwrap().abs();
            if q.kind() == QuantityKind::Discord {
                max_discord = max_discord.max(v);
            } else {
                max_exact = max_exact.max(v);
            }
        }
    }
    let pass = code == 0
        && rows.len() == 400
        && max_exact <= 1e-8
        && max_discord <= 1e-3
        && elapsed < Duration::from_secs(60);
    Outcome {
        id: 2,
        title: "oracle equivalence on the 400-point grid",
        pass,
        detail: format!(
            "{} rows, exit {code}, max entropy/concurrence/EoF deviation {max_exact:.2e} <= 1e-8, \
             max discord deviation {max_discord:.2e} <= 1e-3, runtime {:.1} s < 60 s",
            rows.len(),
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut d123_m0 = f64::NAN;
    for m in 0..=4u32 {
        let mf = f64::from(m);
        let r = report(&params(1e-6, m, Parity::Odd));
        let d = mf + 3.0;
        let h12 = h(0.5 + 0.5 * ((mf + 1.0) * (mf + 5.0)).sqrt() / d);
        let expected = [
            (r.e12, h((mf + 1.0) / (mf + 2.0))),
            (r.c12, 2.0 * (mf + 1.0).sqrt() / (mf + 2.0)),
            (r.d12, h(2.0 / d) - h((mf + 2.0) / d) + h12),
            (
                r.d23,
                h((mf + 2.0) / d) - h(2.0 / d) + h(0.5 + 0.5 * (mf * mf + 2.0 * mf + 5.0).sqrt() / d),
            ),
            (r.d1_23, h(2.0 / d)),
            (r.delta123, 2.0 * h((mf + 2.0) / d) - 2.0 * h12 - h(2.0 / d)),
        ];
        for (got, want) in expected {
            worst = worst.max((got - want).abs());
        }
        if m == 0 {
            d123_m0 = r.d1_23;
        }
    }
    let pass = worst <= 1e-4 && (d123_m0 - 0.9182958).abs() <= 1e-4;
    Outcome {
        id: 3,
        title: "W-limit identities at alpha2 = 1e-6, k = 1",
        pass,
        detail: format!("max deviation {worst:.2e} <= 1e-4, D1_23(m=0) = {d123_m0:.7} (0.9182958 +- 1e-4)"),
    }
}

fn criterion_4() -> Outcome {
    let mut worst = [0.0f64; 4];
    for m in 0..=4 {
        for parity in [Parity::Even, Parity::Odd] {
            let r = report(&params(20.0, m, parity));
            worst[0] = worst[0].max((r.e12 - 1.0).abs());
            worst[1] = worst[1].max(r.d12.abs());
            worst[2] = worst[2].max((r.d1_23 - 1.0).abs());
            worst[3] = worst[3].max((r.delta123 - 1.0).abs());
        }
    }
    let pass = worst[0] <= 1e-6 && worst[1] <= 1e-6 && worst[2] <= 1e-6 && worst[3] <= 1e-5;
    Outcome {
        id: 4,
        title: "asymptotics at alpha2 = 20",
        pass,
        detail: format!(
            "|E12-1| {:.1e}, |D12| {:.1e}, |D1_23-1| {:.1e} (each <= 1e-6), |Delta123-1| {:.1e} <= 1e-5",
            worst[0], worst[1], worst[2], worst[3]
        ),
    }
}

fn criterion_5() -> Outcome {
    let grid = verify_grid();
    let even_min = grid
        .iter()
        .filter(|p| p.parity == Parity::Even)
        .map(|p| report(p).delta123)
        .fold(f64::INFINITY, f64::min);
    let odd_violations = grid
        .iter()
        .filter(|p| p.parity == Parity::Odd && p.m() >= 2)
        .filter(|p| report(p).delta123 < -1e-9)
        .count();
    let pass = even_min >= -1e-9 && odd_violations == 0;
    Outcome {
        id: 5,
        title: "monogamy: k=0 everywhere, k=1 with m>=2",
        pass,
        detail: format!("min Delta123 (k=0) = {even_min:.3e} >= -1e-9, k=1 m>=2 violations: {odd_violations}"),
    }
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for parity in [Parity::Even, Parity::Odd] {
        for i in 1..=400 {
            let r = report(&params(0.01 * f64::from(i), 0, parity));
            worst = worst
                .max((r.d12 - r.d23).abs())
                .max((r.s1.unwrap() - r.s2.unwrap()).abs())
                .max((r.s12.unwrap() - r.s23.unwrap()).abs());
        }
    }
    Outcome {
        id: 6,
        title: "m=0 collapse",
        pass: worst <= 1e-12,
        detail: format!("max |D12-D23|, |S1-S2|, |S12-S23| = {worst:.2e} <= 1e-12"),
    }
}

fn criterion_7(dir: &Path) -> Outcome {
    let out = dir.join("fig3.csv");
    let (code, _, _) = run_bin(&["figure", "fig3", "--out", out.to_str().unwrap()]);
    let (_, rows) = read_csv(&out);
    let mut sampled = Vec::new();
    for m in 0..=3u32 {
        let best = rows
            .iter()
            .filter(|r| r[2] == m.to_string())
            .map(|r| (r[0].parse::<f64>().unwrap(), r[4].parse::<f64>().unwrap()))
            .fold((f64::NAN, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        sampled.push(best);
    }
    let refined: Vec<(f64, f64)> = (0..=3)
        .map(|m| {
            let pk = discord_12_peak(LaguerreOrder::new(m).unwrap(), Parity::Even);
            (pk.alpha2, pk.value)
        })
        .collect();
    let left = refined.windows(2).all(|w| w[1].0 < w[0].0) && sampled.windows(2).all(|w| w[1].0 < w[0].0);
    let higher = refined.windows(2).all(|w| w[1].1 > w[0].1) && sampled.windows(2).all(|w| w[1].1 > w[0].1);
    let fmt = |v: &[(f64, f64)], k: usize| {
        v.iter()
            .map(|p| format!("{:.4}", if k == 0 { p.0 } else { p.1 }))
            .collect::<Vec<_>>()
            .join(", ")
    };
    Outcome {
        id: 7,
        title: "fig3 peaks move left and grow with m",
        pass: code == 0 && left && higher,
        detail: format!(
            "argmax alpha2 (m=0..3) [{}] strictly decreasing: {left}; max D12 [{}] strictly increasing: {higher}",
            fmt(&refined, 0),
            fmt(&refined, 1)
        ),
    }
}

fn criterion_8(dir: &Path) -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let mut density_ok = true;
    for p in verify_grid().iter().chain(&[params(1e-6, 2, Parity::Odd), params(20.0, 3, Parity::Even)]) {
        for rho in [ghz_rho12(p).unwrap(), ghz_rho23(p).unwrap()] {
            let dense = rho.to_dense();
            let spectrum = eigh(&dense).values;
            density_ok &= (rho.trace() - 1.0).abs() <= 1e-10
                && dense.hermiticity_defect() <= 1e-10
                && spectrum[0] >= -1e-10
                && DensityMatrix::new(vec![2, 2], dense).is_ok();
        }
    }
    pass &= density_ok;
    notes.push(format!("densities valid: {density_ok}"));

    let mut entropy_ok = h(0.0) == 0.0 && h(1.0) == 0.0 && h(0.5) == 1.0;
    for i in 0..=1000 {
        let x = f64::from(i) / 1000.0;
        entropy_ok &= (h(x) - h(1.0 - x)).abs() <= 1e-15;
    }
    pass &= entropy_ok;
    notes.push(format!("binary entropy identities: {entropy_ok}"));

    let mut doubling: f64 = 0.0;
    for (a, m, parity) in [(0.1, 0, Parity::Odd), (1.0, 2, Parity::Even), (4.0, 4, Parity::Odd)] {
        let p = params(a, m, parity);
        let n = truncation(a, m);
        let base = oracle_values(&p, n).unwrap();
        let twice = oracle_values(&p, 2 * n).unwrap();
        for q in Quantity::ALL {
            doubling = doubling.max((base.get(q) - twice.get(q)).abs());
        }
    }
    pass &= doubling <= 1e-10;
    notes.push(format!("truncation doubling {doubling:.1e} <= 1e-10"));

    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    for path in [&a, &b] {
        let args = [
            "sweep", "--start", "0.01", "--stop", "4", "--steps", "400", "--m", "0,1,2,3", "--k", "0,1",
            "--quantities", "S1,S2,S12,S23,C12_conc,C23_conc,C13_conc,C1_23_conc,E12,E23,E13,E1_23,D12,D23,D1_23,Delta123",
            "--out", path.to_str().unwrap(),
        ];
        assert_eq!(run_bin(&args).0, 0);
    }
    let identical = std::fs::read(&a).unwrap() == std::fs::read(&b).unwrap();
    pass &= identical;
    notes.push(format!("repeated sweep byte-identical: {identical}"));

    Outcome {
        id: 8,
        title: "invariant suite",
        pass,
        detail: notes.join(", "),
    }
}

/// Dense-scan findings reported next to criterion 5 (not criteria themselves).
fn informational() -> Vec<String> {
    let mut lines = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for m in 0..=3 {
            let (min, at) = (1..=400)
                .map(|i| {
                    let a = 0.01 * f64::from(i);
                    (report(&params(a, m, parity)).delta123, a)
                })
                .fold((f64::INFINITY, 0.0), |acc, cur| if cur.0 < acc.0 { cur } else { acc });
            lines.push(format!(
                "[INFO] figure grid (alpha2 = 0.01..4.00) k={} m={m}: min Delta123 = {min:.3e} at alpha2 = {at:.2}",
                parity.k()
            ));
        }
    }
    lines
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let outcomes = vec![
        criterion_1(),
        criterion_2(dir.path()),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(dir.path()),
        criterion_8(dir.path()),
    ];
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {}. {}: {}", o.id, o.title, o.detail);
    }
    for line in informational() {
        println!("{line}");
    }
    let failing: Vec<String> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id.to_string()).collect();
    println!(
        "acceptance: {} of {} criteria pass{}",
        outcomes.len() - failing.len(),
        outcomes.len(),
        if failing.is_empty() {
            String::new()
        } else {
            format!("; failing: {}", failing.join(", "))
        }
    );
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && !failing.is_empty() {
        std::process::exit(1);
    }
}
