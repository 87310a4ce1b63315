//! One function per subcommand. Each writes to `out` and returns the exit
//! code on success; errors carry their own code.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use jordanlab::algebra::{Algebra, Element};
use jordanlab::commutation::{commutation_residual, q_commutation_panel, theorem_report, NamedResidual, QPanel, Verdict};
use jordanlab::families::Family;
use jordanlab::sea::{seq_product, Effect};
use jordanlab::spectral::spectral_decompose;
use jordanlab::suite::run_suite;

use crate::document::ElementDocument;
use crate::{exit, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Records,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub tol: f64,
    pub format: Format,
}

type Outcome = Result<u8, CliError>;

fn io(e: std::io::Error) -> CliError {
    CliError::usage(format!("write failed: {e}"))
}

fn coords_text(x: &Element) -> String {
    x.coords().iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join(" ")
}

fn load(path: &Path) -> Result<(ElementDocument, Arc<Algebra>, Element), CliError> {
    let doc = ElementDocument::read(path)?;
    let alg = doc.family.build()?;
    let el = doc.element(&alg)?;
    Ok((doc, alg, el))
}

fn load_pair(a: &Path, b: &Path) -> Result<(Family, Element, Element), CliError> {
    let da = ElementDocument::read(a)?;
    let db = ElementDocument::read(b)?;
    if da.family != db.family {
        return Err(CliError::usage(format!(
            "algebra mismatch: {} vs {}",
            da.family, db.family
        )));
    }
    let alg = da.family.build()?;
    Ok((da.family, da.element(&alg)?, db.element(&alg)?))
}

pub fn describe(spec: &str, opts: Options, out: &mut dyn Write) -> Outcome {
    let family: Family = spec.parse()?;
    let alg = family.build()?;
    let v = alg.validation();
    let checks = [
        ("symmetry", v.symmetry),
        ("unit_law", v.unit_law),
        ("jordan_identity", v.jordan_identity),
        ("self_adjointness", v.self_adjointness),
    ];
    match opts.format {
        Format::Human => {
            writeln!(out, "{family}").map_err(io)?;
            writeln!(out, "dimension: {}", alg.dim()).map_err(io)?;
            writeln!(out, "basis: {}", alg.basis_labels().join(" ")).map_err(io)?;
            writeln!(out, "validation residuals:").map_err(io)?;
            for (name, r) in checks {
                writeln!(out, "  {name:<18}{r:.3e}").map_err(io)?;
            }
        }
        Format::Records => {
            writeln!(out, "algebra spec={} name={} dim={}", family, alg.name(), alg.dim()).map_err(io)?;
            writeln!(out, "basis labels={}", alg.basis_labels().join(",")).map_err(io)?;
            for (name, r) in checks {
                writeln!(out, "validation name={name} residual={r:e}").map_err(io)?;
            }
        }
    }
    Ok(exit::OK)
}

pub fn mul(a: &Path, b: &Path, _opts: Options, out: &mut dyn Write) -> Outcome {
    let (family, x, y) = load_pair(a, b)?;
    let p = x.jmul(&y)?;
    let doc = ElementDocument::from_element(family, &p, Some("a*b".into()));
    out.write_all(doc.to_text().as_bytes()).map_err(io)?;
    Ok(exit::OK)
}

pub fn seq(a: &Path, b: &Path, _opts: Options, out: &mut dyn Write) -> Outcome {
    let (family, x, y) = load_pair(a, b)?;
    let (ea, eb) = (Effect::new(x)?, Effect::new(y)?);
    let p = seq_product(&ea, &eb)?;
    let doc = ElementDocument::from_element(family, p.element(), Some("a&b".into()));
    out.write_all(doc.to_text().as_bytes()).map_err(io)?;
    Ok(exit::OK)
}

pub fn spectrum(path: &Path, opts: Options, out: &mut dyn Write) -> Outcome {
    let (doc, _, a) = load(path)?;
    let dec = spectral_decompose(&a)?;
    match opts.format {
        Format::Human => {
            writeln!(out, "{} spectral values in {}", dec.len(), doc.family).map_err(io)?;
            for (l, p) in dec.eigenvalues.iter().zip(&dec.idempotents) {
                writeln!(out, "  {l:>24.16e}  idempotent: {}", coords_text(p)).map_err(io)?;
            }
        }
        Format::Records => {
            for (i, (l, p)) in dec.eigenvalues.iter().zip(&dec.idempotents).enumerate() {
                writeln!(out, "eigenvalue index={i} value={l:?} idempotent={}", coords_text(p).replace(' ', ","))
                    .map_err(io)?;
            }
        }
    }
    Ok(exit::OK)
}

pub fn commute(a: &Path, b: &Path, opts: Options, out: &mut dyn Write) -> Outcome {
    let (_, x, y) = load_pair(a, b)?;
    let r = commutation_residual(&x, &y)?;
    let commutes = r.within(opts.tol);
    match opts.format {
        Format::Human => writeln!(
            out,
            "operator commute: {commutes} (‖[T_a,T_b]‖ = {:.3e}, ratio {:.3e}, tol {:e})",
            r.value,
            r.ratio(),
            opts.tol
        ),
        Format::Records => writeln!(
            out,
            "commute value={commutes} residual={:e} ratio={:e} tol={:e}",
            r.value,
            r.ratio(),
            opts.tol
        ),
    }
    .map_err(io)?;
    Ok(exit::OK)
}

fn write_residuals(out: &mut dyn Write, residuals: &[NamedResidual], format: Format) -> Result<(), CliError> {
    for r in residuals {
        match format {
            Format::Human => writeln!(
                out,
                "  {:<14}{:.3e}{}",
                r.name,
                r.ratio,
                if r.borderline { "  (borderline)" } else { "" }
            ),
            Format::Records => writeln!(
                out,
                "residual name={} ratio={:e} borderline={}",
                r.name, r.ratio, r.borderline
            ),
        }
        .map_err(io)?;
    }
    Ok(())
}

pub fn report(a: &Path, b: &Path, opts: Options, out: &mut dyn Write) -> Outcome {
    let (_, x, y) = load_pair(a, b)?;
    let r = theorem_report(&x, &y, opts.tol)?;
    let conditions = [
        ("a", "op_commute", "a and b operator commute", r.op_commute),
        ("b", "assoc", "generated subalgebra is associative", r.assoc),
        ("c", "assoc_mutual", "its elements mutually operator commute", r.assoc_mutual),
        ("d", "squares_commute", "a, a² operator commute with b, b²", r.squares_commute),
    ];
    match opts.format {
        Format::Human => {
            for (tag, _, text, value) in conditions {
                writeln!(out, "{tag}) {text}: {value}").map_err(io)?;
            }
            if r.positivity_case.applicable {
                writeln!(out, "q) Q_a b² = Q_b a² (positive case): {}", r.positivity_case.q_identity).map_err(io)?;
            }
            writeln!(out, "generated subalgebra dimension: {}", r.generated_dim).map_err(io)?;
            writeln!(out, "residual ratios (tol {:e}):", r.tol).map_err(io)?;
            write_residuals(out, &r.residuals, opts.format)?;
            writeln!(out, "verdict: {}", r.verdict).map_err(io)?;
        }
        Format::Records => {
            for (_, name, _, value) in conditions {
                writeln!(out, "condition name={name} value={value}").map_err(io)?;
            }
            writeln!(
                out,
                "positivity applicable={} q_identity={}",
                r.positivity_case.applicable, r.positivity_case.q_identity
            )
            .map_err(io)?;
            writeln!(out, "generated dim={}", r.generated_dim).map_err(io)?;
            write_residuals(out, &r.residuals, opts.format)?;
            writeln!(out, "verdict value={} tol={:e}", r.verdict, r.tol).map_err(io)?;
        }
    }
    Ok(match r.verdict {
        Verdict::Consistent => exit::OK,
        Verdict::Inconsistent => exit::INCONSISTENT,
    })
}

pub const COUNTEREXAMPLES: [&str; 2] = ["pauli-q-identity", "pauli-qq-commute"];

/// The expected `(qq_commute, q_cross_identity, full_commute)` pattern of a
/// named counterexample; `None` entries are not part of the claim.
fn counterexample_pair(name: &str, alg: &Arc<Algebra>) -> Result<(Element, Element, [Option<bool>; 3]), CliError> {
    let sx = Element::new(alg, vec![0.0, 0.0, 1.0, 0.0])?;
    let sz = Element::new(alg, vec![1.0, -1.0, 0.0, 0.0])?;
    match name {
        // the Hadamard reflection (σx + σz)/√2 against σz
        "pauli-q-identity" => Ok(((&sx + &sz).scale(std::f64::consts::FRAC_1_SQRT_2), sz, [Some(false), Some(true), Some(false)])),
        "pauli-qq-commute" => Ok((sx, sz, [Some(true), None, Some(false)])),
        _ => Err(CliError::usage(format!(
            "unknown counterexample `{name}` (known: {})",
            COUNTEREXAMPLES.join(", ")
        ))),
    }
}

pub fn counterexample(name: &str, opts: Options, out: &mut dyn Write) -> Outcome {
    let family = Family::HermComplex(2);
    let alg = family.build()?;
    let (a, b, expected) = counterexample_pair(name, &alg)?;
    let panel = q_commutation_panel(&a, &b, opts.tol)?;
    let observed = [panel.qq_commute, panel.q_cross_identity, panel.full_commute];
    let matches = expected.iter().zip(observed).all(|(e, o)| e.is_none_or(|e| e == o));
    write_panel(out, name, family, &a, &b, &panel, expected, opts.format)?;
    match opts.format {
        Format::Human => writeln!(out, "pattern {}", if matches { "confirmed" } else { "NOT reproduced" }),
        Format::Records => writeln!(out, "pattern name={name} matches={matches}"),
    }
    .map_err(io)?;
    Ok(if matches { exit::OK } else { exit::INCONSISTENT })
}

#[allow(clippy::too_many_arguments)]
fn write_panel(
    out: &mut dyn Write,
    name: &str,
    family: Family,
    a: &Element,
    b: &Element,
    panel: &QPanel,
    expected: [Option<bool>; 3],
    format: Format,
) -> Result<(), CliError> {
    let labels = [
        ("a", "qq_commute", "Q_a Q_b = Q_b Q_a"),
        ("b", "q_cross_identity", "Q_a b² = Q_b a²"),
        ("c", "full_commute", "a, a² operator commute with b, b²"),
    ];
    let observed = [panel.qq_commute, panel.q_cross_identity, panel.full_commute];
    match format {
        Format::Human => {
            writeln!(out, "{name} in {family}").map_err(io)?;
            writeln!(out, "  a = {}", coords_text(a)).map_err(io)?;
            writeln!(out, "  b = {}", coords_text(b)).map_err(io)?;
            for ((tag, _, text), (o, e)) in labels.iter().zip(observed.iter().zip(expected)) {
                let want = e.map_or("-".to_string(), |e| e.to_string());
                writeln!(out, "{tag}) {text}: {o} (expected {want})").map_err(io)?;
            }
            write_residuals(out, &panel.residuals, format)?;
        }
        Format::Records => {
            writeln!(out, "pair family={family} a={} b={}", coords_text(a).replace(' ', ","), coords_text(b).replace(' ', ","))
                .map_err(io)?;
            for ((_, key, _), (o, e)) in labels.iter().zip(observed.iter().zip(expected)) {
                let want = e.map_or("any".to_string(), |e| e.to_string());
                writeln!(out, "condition name={key} value={o} expected={want}").map_err(io)?;
            }
            write_residuals(out, &panel.residuals, format)?;
        }
    }
    Ok(())
}

pub fn suite(spec: &str, trials: usize, seed: u64, opts: Options, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let family: Family = spec.parse()?;
    if trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let start = Instant::now();
    let report = run_suite(family, trials, seed, opts.tol)?;
    let text = match opts.format {
        Format::Human => report.to_human(),
        Format::Records => report.to_records(),
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    // timing stays off stdout so reports are byte-for-byte reproducible
    writeln!(err, "elapsed {:.2}s", start.elapsed().as_secs_f64()).map_err(io)?;
    Ok(if report.failures() == 0 { exit::OK } else { exit::INCONSISTENT })
}
