//! Acceptance criteria 1 through 8, one pass/fail line each.
#![allow(clippy::absurd_extreme_comparisons)]

use std::time::{Duration, Instant};

use real_gersten::verify::{self, Battery, BatteryReport};

const SEED: u64 = 20_241_014;

/// Zero failures everywhere; only the wall-clock budgets below are tolerances.
const MAX_FAILURES: usize = 0;
const BUDGET_BM: Duration = Duration::from_secs(60);
const BUDGET_LADDER: Duration = Duration::from_secs(120);

const LADDER_CASES: usize = 1000;
const UNIFORMIZER_CASES: usize = 500;
const TRACE_CASES: usize = 200;
const DEVISSAGE_CASES: usize = 100;
const RECIPROCITY_CASES: usize = 500;
const REALIZE_CASES: usize = 100;
const SUBSTRATE_CASES: usize = 500;

/// Lines expected to print FAIL; see the decisions ledger.
const KNOWN_UNATTAINABLE: &[&str] = &["6-odd"];

struct Line {
    id: &'static str,
    ok: bool,
    detail: String,
}

fn summarize(r: &BatteryReport) -> String {
    r.checks
        .iter()
        .map(|(k, t)| {
            let mut s = format!("{k}: {}/{} failed", t.failures, t.cases);
            if let Some(e) = t.examples.first() {
                s.push_str(&format!(" [{e}]"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn timed(f: impl FnOnce() -> BatteryReport) -> (BatteryReport, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

fn main() {
    let mut lines = Vec::new();

    let (r, t) = timed(|| verify::run(Battery::SignatureIso, SEED, 100));
    let bm = &r.checks["complex vs Borel–Moore"];
    lines.push(Line {
        id: "1",
        ok: bm.failures <= MAX_FAILURES && bm.cases == 56 && r.passed && t <= BUDGET_BM,
        detail: format!("signature / Borel–Moore battery, {:.1?} (budget {BUDGET_BM:?}); {}", t, summarize(&r)),
    });

    let (r, t) = timed(|| verify::run(Battery::Ladder, SEED, LADDER_CASES));
    lines.push(Line {
        id: "2",
        ok: r.failures() <= MAX_FAILURES && t <= BUDGET_LADDER,
        detail: format!("ladder commutativity, {:.1?} (budget {BUDGET_LADDER:?}); {}", t, summarize(&r)),
    });

    let r = verify::run(Battery::Uniformizer, SEED, UNIFORMIZER_CASES);
    lines.push(Line {
        id: "3",
        ok: r.failures() <= MAX_FAILURES,
        detail: format!("uniformizer independence; {}", summarize(&r)),
    });

    let r = verify::run(Battery::TraceCount, SEED, TRACE_CASES);
    lines.push(Line {
        id: "4",
        ok: r.failures() <= MAX_FAILURES,
        detail: format!("trace-count identity; {}", summarize(&r)),
    });

    let r = verify::run(Battery::Devissage, SEED, DEVISSAGE_CASES);
    lines.push(Line {
        id: "5",
        ok: r.failures() <= MAX_FAILURES,
        detail: format!("devissage and localization; {}", summarize(&r)),
    });

    let r = verify::reciprocity(SEED, RECIPROCITY_CASES, &[-3, -2, -1, 0, 1, 2, 3]);
    let even: usize = r.checks.values().map(|t| t.failures).sum();
    let even_cases: usize = r.checks.values().map(|t| t.cases).sum();
    lines.push(Line {
        id: "6-even",
        ok: even <= MAX_FAILURES && even_cases == 3 * RECIPROCITY_CASES,
        detail: format!("reciprocity on P1, n in {{-2, 0, 2}}; {}", summarize(&r)),
    });
    let odd: usize = r.known_unattainable.values().map(|t| t.failures).sum();
    let odd_detail = r
        .known_unattainable
        .iter()
        .map(|(k, t)| format!("{k}: {}/{} nonzero", t.failures, t.cases))
        .collect::<Vec<_>>()
        .join("; ");
    lines.push(Line {
        id: "6-odd",
        ok: odd <= MAX_FAILURES,
        detail: format!("reciprocity on P1, n in {{-3, -1, 1, 3}}; {odd_detail}"),
    });

    let r = verify::run(Battery::Realize, SEED, REALIZE_CASES);
    lines.push(Line {
        id: "7",
        ok: r.failures() <= MAX_FAILURES,
        detail: format!("Arason–Knebusch round trip; {}", summarize(&r)),
    });

    let r = verify::run(Battery::Substrate, SEED, SUBSTRATE_CASES);
    lines.push(Line {
        id: "8",
        ok: r.failures() <= MAX_FAILURES,
        detail: format!("substrate soundness; {}", summarize(&r)),
    });

    let mut unexpected = Vec::new();
    for l in &lines {
        println!("criterion {:<6} {}  {}", l.id, if l.ok { "PASS" } else { "FAIL" }, l.detail);
        let known = KNOWN_UNATTAINABLE.contains(&l.id);
        if l.ok == known {
            unexpected.push(l.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
