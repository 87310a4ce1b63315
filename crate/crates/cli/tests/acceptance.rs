//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use jordanlab::algebra::Element;
use jordanlab::commutation::{q_commutation_panel, DEFAULT_TOL};
use jordanlab::families::{herm_complex, Family};
use jordanlab::suite::{Property, PropertyStats, SuiteContext};

const SEED: u64 = 20_240_601;

fn families() -> Vec<Family> {
    ["sym_r:3", "herm_c:3", "herm_q:2", "spin:5", "albert"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

struct Criterion {
    id: usize,
    title: &'static str,
    pass: bool,
    details: Vec<String>,
}

impl Criterion {
    fn new(id: usize, title: &'static str) -> Self {
        Self {
            id,
            title,
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.pass &= ok;
        if !ok {
            self.details.push(detail);
        }
    }

    /// Zero failures in every listed run.
    fn zero_failures(&mut self, family: Family, stats: &PropertyStats) {
        self.check(
            stats.fail == 0,
            format!(
                "{family} {}: {} of {} failed ({})",
                stats.name,
                stats.fail,
                stats.trials(),
                stats.first_failure.as_deref().unwrap_or("")
            ),
        );
    }
}

fn context(family: Family) -> SuiteContext {
    SuiteContext::new(family, DEFAULT_TOL).unwrap()
}

fn per_family(c: &mut Criterion, runs: &[(Property, usize)]) {
    for family in families() {
        let ctx = context(family);
        for &(p, n) in runs {
            let stats = ctx.run_property(p, n, SEED);
            c.zero_failures(family, &stats);
        }
    }
}

fn identity() -> Criterion {
    let mut c = Criterion::new(1, "identity suite, 1000 triples per family");
    per_family(&mut c, &[(Property::Identity, 1000)]);
    c
}

fn jc_bridge() -> Criterion {
    let mut c = Criterion::new(2, "JC bridge on herm_c:3, 1000 pairs");
    let family = Family::HermComplex(3);
    let stats = context(family).run_property(Property::JcBridge, 1000, SEED);
    c.zero_failures(family, &stats);
    c
}

fn theorem() -> Criterion {
    let mut c = Criterion::new(3, "theorem consistency, 500 commuting + 500 generic pairs per family");
    for family in families() {
        let ctx = context(family);
        let commuting = ctx.run_property(Property::TheoremCommuting, 500, SEED);
        let generic = ctx.run_property(Property::TheoremGeneric, 500, SEED);
        c.zero_failures(family, &commuting);
        c.zero_failures(family, &generic);
        let borderline = commuting.borderline + generic.borderline;
        c.check(
            borderline * 100 < 1000,
            format!("{family}: {borderline} borderline reports of 1000"),
        );
    }
    c
}

fn q_positive() -> Criterion {
    let mut c = Criterion::new(4, "positive quadratic criterion, 500 + 500 pairs per family");
    per_family(
        &mut c,
        &[(Property::QPositiveCommuting, 500), (Property::QPositiveGeneric, 500)],
    );
    c
}

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jordanlab"));
    cmd.env_remove("JORDANLAB_TOL");
    cmd
}

fn counterexamples() -> Criterion {
    let mut c = Criterion::new(5, "counterexample goldens at default tolerance");
    let alg = herm_complex(2).unwrap();
    let sx = Element::new(&alg, vec![0.0, 0.0, 1.0, 0.0]).unwrap();
    let sz = Element::new(&alg, vec![1.0, -1.0, 0.0, 0.0]).unwrap();
    let a = (&sx + &sz).scale(std::f64::consts::FRAC_1_SQRT_2);

    let p = q_commutation_panel(&a, &sz, DEFAULT_TOL).unwrap();
    c.check(
        p.q_cross_identity && !p.qq_commute && !p.full_commute,
        format!("q-identity variant: {p:?}"),
    );
    let p = q_commutation_panel(&sx, &sz, DEFAULT_TOL).unwrap();
    c.check(p.qq_commute && !p.full_commute, format!("qq variant: {p:?}"));

    for (name, want) in [
        ("pauli-q-identity", ["qq_commute value=false", "q_cross_identity value=true", "full_commute value=false"]),
        ("pauli-qq-commute", ["qq_commute value=true", "full_commute value=false", "matches=true"]),
    ] {
        let out = bin().args(["counterexample", name, "--format", "records"]).output().unwrap();
        let text = String::from_utf8_lossy(&out.stdout);
        c.check(out.status.code() == Some(0), format!("{name}: exit {:?}", out.status.code()));
        for w in want {
            c.check(text.contains(w), format!("{name}: missing `{w}`"));
        }
    }
    c
}

fn spectral() -> Criterion {
    let mut c = Criterion::new(6, "spectral suite, 1000 elements per family");
    per_family(&mut c, &[(Property::Spectral, 1000)]);
    c
}

fn sea() -> Criterion {
    let mut c = Criterion::new(7, "SEA suite, 500 triples + 100 orthogonal pairs per family");
    per_family(
        &mut c,
        &[
            (Property::SeaRandom, 500),
            (Property::SeaOrthogonal, 100),
            (Property::SeaCommuting, 500),
        ],
    );
    c
}

fn commutant() -> Criterion {
    let mut c = Criterion::new(8, "commutant structure, 200 sets per family");
    per_family(&mut c, &[(Property::Commutant, 200)]);
    c
}

fn determinism() -> Criterion {
    let mut c = Criterion::new(9, "suite reports are byte-identical across runs");
    for format in ["records", "human"] {
        let args = ["suite", "herm_c:3", "--trials", "200", "--seed", "42", "--format", format];
        let first = bin().args(args).output().unwrap();
        let second = bin().args(args).output().unwrap();
        c.check(first.status.code() == Some(0), format!("{format}: exit {:?}", first.status.code()));
        c.check(
            !first.stdout.is_empty() && first.stdout == second.stdout,
            format!("{format}: outputs differ"),
        );
    }
    c
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [fn() -> Criterion; 9] = [
        identity,
        jc_bridge,
        theorem,
        q_positive,
        counterexamples,
        spectral,
        sea,
        commutant,
        determinism,
    ];
    let mut failed = 0;
    for run in criteria {
        let t = Instant::now();
        let c = run();
        println!(
            "criterion {} {}: {} ({:.1}s)",
            c.id,
            if c.pass { "PASS" } else { "FAIL" },
            c.title,
            t.elapsed().as_secs_f64()
        );
        for d in &c.details {
            println!("    {d}");
        }
        failed += usize::from(!c.pass);
    }
    println!(
        "acceptance: {} of 9 criteria passed in {:.1}s",
        9 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
