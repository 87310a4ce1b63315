//! Seeded randomized property suites.
//!
//! Every trial draws its inputs from its own `ChaCha8Rng`, seeded with
//! `seed ^ trial_index` and placed on a stream fixed per property, so trials
//! can run in parallel while the report stays a function of
//! `(family, trials, seed, tol)` alone.
//!
//! A trial passes when its residual ratio is below a tenth of the threshold,
//! is borderline when it passes within a factor of ten of the threshold, and
//! fails otherwise. Separation checks (residuals that must be large) mirror
//! this and are summarised by their smallest ratio, the margin.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{identity_residuals, q_operator, Algebra, Element};
use crate::commutation::{
    commutant, commutation_residual, generate_subalgebra, is_associative, operator_commute, q_cross_residual,
    squares_commutation_ratio, theorem_report, Verdict,
};
use crate::error::Result;
use crate::families::{ambient_commutes, residual_formula_check, AmbientRep, Family};
use crate::random;
use crate::sea::{quadratic_zero_check, sea_axioms, seq_commutation_residual, seq_product, AxiomOutcome, SeaAxiomReport};
use crate::spectral::{order_unit_norm, spectral_decompose, sqrt};

/// Threshold of the ambient commutator formula check.
const FORMULA_TOL: f64 = 1e-9;
/// SEA checks run at this multiple of the suite tolerance.
const SEA_FACTOR: f64 = 10.0;
/// Generic pairs must separate from zero by this multiple of the tolerance.
const SEPARATION: f64 = 10.0;
/// Generic pairs are at least this multiple of the tolerance from commuting.
const NON_COMMUTING: f64 = 1e4;
const MAX_DRAWS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Identity,
    JcBridge,
    TheoremCommuting,
    TheoremGeneric,
    QPositiveCommuting,
    QPositiveGeneric,
    Spectral,
    SeaRandom,
    SeaCommuting,
    SeaOrthogonal,
    SeaBridge,
    Commutant,
}

impl Property {
    pub const ALL: [Property; 12] = [
        Property::Identity,
        Property::JcBridge,
        Property::TheoremCommuting,
        Property::TheoremGeneric,
        Property::QPositiveCommuting,
        Property::QPositiveGeneric,
        Property::Spectral,
        Property::SeaRandom,
        Property::SeaCommuting,
        Property::SeaOrthogonal,
        Property::SeaBridge,
        Property::Commutant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Identity => "identity",
            Property::JcBridge => "jc_bridge",
            Property::TheoremCommuting => "theorem_commuting",
            Property::TheoremGeneric => "theorem_generic",
            Property::QPositiveCommuting => "q_positive_commuting",
            Property::QPositiveGeneric => "q_positive_generic",
            Property::Spectral => "spectral",
            Property::SeaRandom => "sea_random",
            Property::SeaCommuting => "sea_commuting",
            Property::SeaOrthogonal => "sea_orthogonal",
            Property::SeaBridge => "sea_bridge",
            Property::Commutant => "commutant",
        }
    }

    fn stream(self) -> u64 {
        Property::ALL.iter().position(|p| *p == self).unwrap() as u64 + 1
    }

    /// The bridge needs an associative ambient algebra; separation
    /// properties need non-commuting pairs to exist.
    pub fn applies_to(self, ctx: &SuiteContext) -> bool {
        match self {
            Property::JcBridge => ctx.ambient.is_some(),
            Property::QPositiveGeneric => !ctx.family.is_associative(),
            _ => true,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Borderline,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub outcome: Outcome,
    pub ratio: f64,
    /// `ratio` had to be large rather than small.
    pub separation: bool,
    pub note: Option<String>,
}

impl TrialResult {
    /// `ratio` must stay at or below `threshold`.
    fn upper(ratio: f64, threshold: f64) -> Self {
        let outcome = if !(ratio <= threshold) {
            Outcome::Fail
        } else if ratio >= 0.1 * threshold {
            Outcome::Borderline
        } else {
            Outcome::Pass
        };
        Self {
            outcome,
            ratio,
            separation: false,
            note: None,
        }
    }

    /// `ratio` must exceed `threshold`.
    fn lower(ratio: f64, threshold: f64) -> Self {
        let outcome = if !(ratio > threshold) {
            Outcome::Fail
        } else if ratio <= 10.0 * threshold {
            Outcome::Borderline
        } else {
            Outcome::Pass
        };
        Self {
            outcome,
            ratio,
            separation: true,
            note: None,
        }
    }

    fn fail(note: impl Into<String>) -> Self {
        Self {
            outcome: Outcome::Fail,
            ratio: f64::NAN,
            separation: false,
            note: Some(note.into()),
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        if self.outcome == Outcome::Fail {
            self.note = Some(note.into());
        }
        self
    }

    /// Combines two checks that must both hold: the worse outcome wins.
    fn and(self, other: Self) -> Self {
        if rank(other.outcome) > rank(self.outcome) {
            other
        } else {
            self
        }
    }
}

fn rank(o: Outcome) -> u8 {
    match o {
        Outcome::Pass => 0,
        Outcome::Borderline => 1,
        Outcome::Fail => 2,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyStats {
    pub name: &'static str,
    pub pass: usize,
    pub fail: usize,
    pub borderline: usize,
    /// Largest ratio among checks that must stay small.
    pub worst: f64,
    /// Smallest ratio among checks that must stay large, if there were any.
    pub margin: Option<f64>,
    /// Note attached to the first failing trial, if any.
    pub first_failure: Option<String>,
}

impl PropertyStats {
    pub fn trials(&self) -> usize {
        self.pass + self.fail + self.borderline
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub family: String,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub properties: Vec<PropertyStats>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.properties.iter().map(|p| p.fail).sum()
    }

    pub fn property(&self, name: &str) -> Option<&PropertyStats> {
        self.properties.iter().find(|p| p.name == name)
    }

    /// One `key=value` record per line.
    pub fn to_records(&self) -> String {
        let mut out = format!(
            "suite family={} seed={} trials={} tol={:e}\n",
            self.family, self.seed, self.trials, self.tol
        );
        for p in &self.properties {
            out.push_str(&format!(
                "property name={} pass={} fail={} borderline={} worst={:.6e}",
                p.name, p.pass, p.fail, p.borderline, p.worst
            ));
            if let Some(m) = p.margin {
                out.push_str(&format!(" margin={m:.6e}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("summary failures={}\n", self.failures()));
        out
    }

    pub fn to_human(&self) -> String {
        let mut out = format!(
            "suite {} (seed {}, {} trials, tol {:e})\n",
            self.family, self.seed, self.trials, self.tol
        );
        out.push_str(&format!(
            "  {:<22}{:>7}{:>7}{:>11}  {:<11}{}\n",
            "property", "pass", "fail", "borderline", "worst", "margin"
        ));
        for p in &self.properties {
            let margin = p.margin.map_or("-".to_string(), |m| format!("{m:.3e}"));
            let worst = if p.worst == 0.0 && p.margin.is_some() {
                "-".to_string()
            } else {
                format!("{:.3e}", p.worst)
            };
            out.push_str(&format!(
                "  {:<22}{:>7}{:>7}{:>11}  {:<11}{}\n",
                p.name,
                p.pass,
                p.fail,
                p.borderline,
                worst,
                margin
            ));
            if let Some(note) = &p.first_failure {
                out.push_str(&format!("      first failure: {note}\n"));
            }
        }
        out.push_str(if self.failures() == 0 {
            "all properties hold\n"
        } else {
            "FAILURES\n"
        });
        out
    }
}

/// Family, built algebra and tolerance shared by all trials.
pub struct SuiteContext {
    pub family: Family,
    pub alg: Arc<Algebra>,
    pub ambient: Option<AmbientRep>,
    pub tol: f64,
}

impl SuiteContext {
    pub fn new(family: Family, tol: f64) -> Result<Self> {
        let (alg, ambient) = family.build_with_ambient()?;
        Ok(Self {
            family,
            alg,
            ambient,
            tol,
        })
    }

    fn rng(&self, property: Property, seed: u64, idx: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ idx as u64);
        rng.set_stream(property.stream());
        rng
    }

    /// Runs a single trial; errors from the library count as failures.
    pub fn trial(&self, property: Property, seed: u64, idx: usize) -> TrialResult {
        let mut rng = self.rng(property, seed, idx);
        match self.dispatch(property, idx, &mut rng) {
            Ok(r) => r,
            Err(e) => TrialResult::fail(format!("trial {idx}: {e}")),
        }
    }

    pub fn run_property(&self, property: Property, trials: usize, seed: u64) -> PropertyStats {
        let results: Vec<TrialResult> = (0..trials)
            .into_par_iter()
            .map(|idx| self.trial(property, seed, idx))
            .collect();
        let mut stats = PropertyStats {
            name: property.name(),
            pass: 0,
            fail: 0,
            borderline: 0,
            worst: 0.0,
            margin: None,
            first_failure: None,
        };
        for (idx, r) in results.into_iter().enumerate() {
            match r.outcome {
                Outcome::Pass => stats.pass += 1,
                Outcome::Borderline => stats.borderline += 1,
                Outcome::Fail => {
                    stats.fail += 1;
                    if stats.first_failure.is_none() {
                        stats.first_failure =
                            Some(r.note.clone().unwrap_or_else(|| format!("trial {idx}: ratio {:e}", r.ratio)));
                    }
                }
            }
            if r.ratio.is_nan() {
                continue;
            }
            if r.separation {
                stats.margin = Some(stats.margin.map_or(r.ratio, |m| m.min(r.ratio)));
            } else {
                stats.worst = stats.worst.max(r.ratio);
            }
        }
        stats
    }

    fn dispatch(&self, property: Property, idx: usize, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        match property {
            Property::Identity => self.identity(rng),
            Property::JcBridge => self.jc_bridge(idx, rng),
            Property::TheoremCommuting => self.theorem_commuting(idx, rng),
            Property::TheoremGeneric => self.theorem_generic(rng),
            Property::QPositiveCommuting => self.q_positive_commuting(idx, rng),
            Property::QPositiveGeneric => self.q_positive_generic(rng),
            Property::Spectral => self.spectral(rng),
            Property::SeaRandom => self.sea_random(rng),
            Property::SeaCommuting => self.sea_commuting(rng),
            Property::SeaOrthogonal => self.sea_orthogonal(rng),
            Property::SeaBridge => self.sea_bridge(idx, rng),
            Property::Commutant => self.commutant(idx, rng),
        }
    }

    fn gaussian(&self, rng: &mut ChaCha8Rng) -> Element {
        random::gaussian(&self.alg, rng)
    }

    /// A pair inside one associative subalgebra, cycling through three
    /// constructions.
    fn commuting_pair(&self, idx: usize, rng: &mut ChaCha8Rng) -> Result<(Element, Element)> {
        Ok(match idx % 3 {
            0 => random::diagonal_pair(self.family, &self.alg, rng),
            1 => {
                let x = self.gaussian(rng);
                (random::polynomial_in(&x, 2, rng), random::polynomial_in(&x, 2, rng))
            }
            _ => {
                let x = self.gaussian(rng);
                let y = random::in_commutant(&x, rng)?;
                (x, y)
            }
        })
    }

    fn identity(&self, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let (a, b, c) = (self.gaussian(rng), self.gaussian(rng), self.gaussian(rng));
        let r = identity_residuals(&a, &b, &c)?;
        let worst = r
            .entries()
            .into_iter()
            .max_by(|x, y| x.1.ratio().total_cmp(&y.1.ratio()))
            .expect("five identities");
        Ok(TrialResult::upper(worst.1.ratio(), self.tol).note(format!("{} ratio {:e}", worst.0, worst.1.ratio())))
    }

    /// Alternates generic pairs with polynomial pairs so that both answers
    /// of the commutation test are exercised.
    fn jc_bridge(&self, idx: usize, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let rep = self.ambient.as_ref().expect("applies_to checked");
        let a = self.gaussian(rng);
        let b = if idx % 2 == 0 {
            self.gaussian(rng)
        } else {
            random::polynomial_in(&a, 2, rng)
        };
        let c = self.gaussian(rng);
        let jordan = operator_commute(&a, &b, self.tol)?;
        let ambient = ambient_commutes(rep, &a, &b, self.tol)?;
        if jordan != ambient {
            return Ok(TrialResult::fail(format!(
                "operator commute {jordan} but ambient commute {ambient}"
            )));
        }
        let formula = residual_formula_check(rep, &a, &b, &c)?.ratio();
        Ok(TrialResult::upper(formula, FORMULA_TOL).note(format!("formula ratio {formula:e}")))
    }

    fn theorem_verdict(&self, a: &Element, b: &Element, expect: bool) -> Result<TrialResult> {
        let r = theorem_report(a, b, self.tol)?;
        let worst = r.residuals.iter().map(|n| n.ratio).fold(0.0, f64::max);
        let ratio = if expect {
            worst
        } else {
            r.residuals.iter().map(|n| n.ratio).fold(f64::INFINITY, f64::min)
        };
        let outcome = if r.verdict == Verdict::Inconsistent || r.op_commute != expect {
            Outcome::Fail
        } else if r.borderline() {
            Outcome::Borderline
        } else {
            Outcome::Pass
        };
        Ok(TrialResult {
            outcome,
            ratio,
            separation: !expect,
            note: (outcome == Outcome::Fail).then(|| {
                format!(
                    "verdict {} (a {}, b {}, c {}, d {})",
                    r.verdict, r.op_commute, r.assoc, r.assoc_mutual, r.squares_commute
                )
            }),
        })
    }

    fn theorem_commuting(&self, idx: usize, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let (a, b) = self.commuting_pair(idx, rng)?;
        self.theorem_verdict(&a, &b, true)
    }

    fn theorem_generic(&self, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let (a, b) = (self.gaussian(rng), self.gaussian(rng));
        self.theorem_verdict(&a, &b, self.family.is_associative())
    }

    /// Squares of a commuting pair: `Q_a b² = Q_b a² = a² * b²`.
    fn q_positive_commuting(&self, idx: usize, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let (x, y) = self.commuting_pair(idx, rng)?;
        let (a, b) = (x.square(), y.square());
        let cross = q_cross_residual(&a, &b)?.ratio();
        let (a2, b2) = (a.square(), b.square());
        let lhs = q_operator(&a).apply(&b2)?;
        let scale = (1.0 + a.norm()).powi(2) * (1.0 + b.norm()).powi(2);
        let product = lhs.distance(&a2.jmul(&b2)?) / scale;
        Ok(TrialResult::upper(cross, self.tol)
            .note(format!("q identity ratio {cross:e}"))
            .and(TrialResult::upper(product, self.tol).note(format!("product ratio {product:e}"))))
    }

    /// Generic positive pairs: the quadratic identity and the commutation of
    /// squares fail together.
    ///
    /// Squares of Gaussians land near the centre with non-negligible
    /// probability (in a spin factor, whenever the scalar part of `x` is
    /// small), so pairs closer than [`NON_COMMUTING`]`·tol` to commuting are
    /// redrawn.
    fn q_positive_generic(&self, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let mut draw = || (random::positive(&self.alg, rng), random::positive(&self.alg, rng));
        let (mut a, mut b) = draw();
        let mut attempts = 1;
        while commutation_residual(&a, &b)?.ratio() < NON_COMMUTING * self.tol {
            if attempts == MAX_DRAWS {
                return Ok(TrialResult::fail("no non-commuting positive pair drawn"));
            }
            (a, b) = draw();
            attempts += 1;
        }
        let cross = q_cross_residual(&a, &b)?.ratio();
        let squares = squares_commutation_ratio(&a, &b)?;
        let q = TrialResult::lower(cross, SEPARATION * self.tol).note(format!("q identity ratio {cross:e}"));
        let d = TrialResult::lower(squares, self.tol).note(format!("squares ratio {squares:e}"));
        let mut joint = q.clone().and(d);
        joint.ratio = cross;
        if joint.outcome == Outcome::Fail && joint.note.is_none() {
            joint.note = q.note;
        }
        Ok(joint)
    }

    fn spectral(&self, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let tol = self.tol;
        let a = self.gaussian(rng);
        let dec = spectral_decompose(&a)?;
        let decomposition = dec.residuals(&a).worst_ratio();

        let p = random::positive(&self.alg, rng);
        let root = sqrt(&p)?;
        let root_sq = root.square().distance(&p) / (1.0 + p.norm());

        let x = self.gaussian(rng);
        let qp = q_operator(&x).apply(&p)?;
        let min = spectral_decompose(&qp)?.min();
        let q_scale = (1.0 + x.norm()).powi(2) * (1.0 + p.norm());
        let q_positive = (-min).max(0.0) / q_scale;

        let na = order_unit_norm(&a)?;
        let a2 = a.square();
        let na2 = order_unit_norm(&a2)?;
        let square_norm = (na2 - na * na).abs() / (1.0 + na).powi(2);
        let b2 = self.gaussian(rng).square();
        let nb2 = order_unit_norm(&b2)?;
        let monotone = (na2 - order_unit_norm(&(&a2 + &b2))?).max(0.0) / (1.0 + na2 + nb2);

        let checks = [
            ("decomposition", decomposition),
            ("sqrt", root_sq),
            ("q positivity", q_positive),
            ("square norm", square_norm),
            ("norm monotone", monotone),
        ];
        Ok(checks
            .into_iter()
            .map(|(name, r)| TrialResult::upper(r, tol).note(format!("{name} ratio {r:e}")))
            .reduce(TrialResult::and)
            .expect("non-empty")
            .with_ratio(checks.iter().map(|c| c.1).fold(0.0, f64::max)))
    }

    fn sea_tol(&self) -> f64 {
        SEA_FACTOR * self.tol
    }

    fn sea_result(&self, report: &SeaAxiomReport) -> TrialResult {
        let (name, worst) = report
            .entries()
            .into_iter()
            .filter(|(_, o)| o.applicable)
            .max_by(|x, y| x.1.residual.total_cmp(&y.1.residual))
            .unwrap_or(("none", AxiomOutcome::default()));
        TrialResult::upper(worst.residual, self.sea_tol()).note(format!(
            "axiom {name} ratio {:e}, hypothesis ratio {:e}",
            worst.residual, worst.hypothesis
        ))
    }

    fn sea_random(&self, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let a = random::effect(&self.alg, rng)?;
        let b = random::effect(&self.alg, rng)?;
        let c = random::effect(&self.alg, rng)?;
        Ok(self.sea_result(&sea_axioms(&a, &b, &c, self.sea_tol())?))
    }

    /// Commuting triples in `[0, ½]`, where axioms a, d and e all apply.
    fn sea_commuting(&self, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let es = random::commuting_effects(&self.alg, 3, rng)?;
        let report = sea_axioms(&es[0], &es[1], &es[2], self.sea_tol())?;
        for (name, o) in report.entries() {
            if name != "c" && !o.applicable {
                return Ok(TrialResult::fail(format!("axiom {name} not applicable to a commuting triple")));
            }
        }
        Ok(self.sea_result(&report))
    }

    /// Effects with orthogonal supports: `a & b = 0`, so axiom c applies and
    /// `b & a = 0`, `a * b = 0` must follow.
    fn sea_orthogonal(&self, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let tol = self.sea_tol();
        let (a, b) = random::orthogonal_effects(&self.alg, rng)?;
        let c = random::effect(&self.alg, rng)?;
        let scale = (1.0 + a.element().norm()) * (1.0 + b.element().norm());
        let ab = seq_product(&a, &b)?.element().norm() / scale;
        let hypothesis = TrialResult::upper(ab, tol).note(format!("a & b ratio {ab:e}"));
        let report = sea_axioms(&a, &b, &c, tol)?;
        if !report.ax_c.applicable {
            return Ok(TrialResult::fail("axiom c not applicable"));
        }
        let axioms = self.sea_result(&report);
        let zero = quadratic_zero_check(a.element(), b.element(), tol)?;
        let product = TrialResult::upper(zero.product, tol).note(format!("a * b ratio {:e}", zero.product));
        let lemma = if zero.consistent {
            TrialResult::upper(zero.q_ab.max(zero.q_ba), tol)
        } else {
            TrialResult::fail(format!("Q_a b {:e} vs Q_b a {:e}", zero.q_ab, zero.q_ba))
        };
        Ok(hypothesis.and(axioms).and(product).and(lemma))
    }

    /// `a & b = b & a` exactly when `a ⌣ b`: commuting effects on even trials,
    /// generic effects (redrawn as in `q_positive_generic`) on odd ones.
    fn sea_bridge(&self, idx: usize, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let tol = self.tol;
        let commuting = idx % 2 == 0 || self.family.is_associative();
        let (a, b) = if idx % 2 == 0 {
            let es = random::commuting_effects(&self.alg, 2, rng)?;
            (es[0].clone(), es[1].clone())
        } else {
            let mut draw = || -> Result<_> { Ok((random::effect(&self.alg, rng)?, random::effect(&self.alg, rng)?)) };
            let (mut a, mut b) = draw()?;
            let mut attempts = 1;
            while !commuting && commutation_residual(a.element(), b.element())?.ratio() < NON_COMMUTING * tol {
                if attempts == MAX_DRAWS {
                    return Ok(TrialResult::fail("no non-commuting effect pair drawn"));
                }
                (a, b) = draw()?;
                attempts += 1;
            }
            (a, b)
        };
        let seq = seq_commutation_residual(&a, &b)?.ratio();
        let op = commutation_residual(a.element(), b.element())?.ratio();
        let note = format!("a & b vs b & a ratio {seq:e}, operator commutator ratio {op:e}");
        Ok(if commuting {
            TrialResult::upper(seq, tol).and(TrialResult::upper(op, tol)).note(note)
        } else {
            TrialResult::lower(seq, tol).and(TrialResult::lower(op, tol)).note(note)
        })
    }

    /// Even trials: the commutant of one Gaussian element. Odd trials: the
    /// commutant of an idempotent pair, and whether the pair operator
    /// commutes exactly when it generates an associative subalgebra.
    fn commutant(&self, idx: usize, rng: &mut ChaCha8Rng) -> Result<TrialResult> {
        let tol = self.tol;
        if idx % 2 == 0 {
            let a = self.gaussian(rng);
            let c = commutant(std::slice::from_ref(&a))?;
            let closure = c.closure_defect();
            let member = c.span_residual(&a) / (1.0 + a.norm());
            return Ok(TrialResult::upper(closure, tol)
                .note(format!("closure defect {closure:e}"))
                .and(TrialResult::upper(member, tol).note(format!("a outside its commutant by {member:e}"))));
        }
        let p = random::idempotent(&self.alg, rng)?;
        let q = if rng.random_bool(0.5) {
            random::idempotent(&self.alg, rng)?
        } else {
            // another idempotent of the algebra generated by p
            Element::unit(&self.alg) - &p
        };
        let c = commutant(&[p.clone(), q.clone()])?;
        let closure = c.closure_defect();
        let commute = operator_commute(&p, &q, tol)?;
        let assoc = is_associative(&generate_subalgebra(&[p, q], true)?, tol);
        if commute != assoc {
            return Ok(TrialResult::fail(format!(
                "idempotents commute {commute} but generated subalgebra associative {assoc}"
            )));
        }
        Ok(TrialResult::upper(closure, tol).note(format!("closure defect {closure:e}")))
    }
}

impl TrialResult {
    fn with_ratio(mut self, ratio: f64) -> Self {
        self.ratio = ratio;
        self
    }
}

/// Runs every applicable property for `trials` trials each.
pub fn run_suite(family: Family, trials: usize, seed: u64, tol: f64) -> Result<SuiteReport> {
    let ctx = SuiteContext::new(family, tol)?;
    let properties = Property::ALL
        .iter()
        .filter(|p| p.applies_to(&ctx))
        .map(|&p| ctx.run_property(p, trials, seed))
        .collect();
    Ok(SuiteReport {
        family: family.to_string(),
        seed,
        trials,
        tol,
        properties,
    })
}
