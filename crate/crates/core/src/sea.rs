//! The sequential product `a & b = Q_{√a} b` on the unit interval `[0, 1]`
//! of an algebra, and checks of the sequential effect algebra axioms.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{q_operator, Algebra, Element, OperatorMatrix, Residual};
use crate::error::{Error, Result};
use crate::spectral::{self, POSITIVITY_TOL};

/// An element with spectrum in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct Effect(Element);

impl Effect {
    /// Accepts spectra in `[−δ, 1 + δ]` with `δ = 1e-9·(1 + ‖a‖)`; values in
    /// the slack region are clamped onto `[0, 1]`.
    pub fn new(element: Element) -> Result<Self> {
        let dec = spectral::spectral_decompose(&element)?;
        let slack = POSITIVITY_TOL * (1.0 + element.norm());
        let (min, max) = (dec.min(), dec.max());
        if min < -slack || max > 1.0 + slack {
            return Err(Error::NotAnEffect { min, max });
        }
        if min < 0.0 || max > 1.0 {
            return Ok(Self(dec.apply(|l| l.clamp(0.0, 1.0))?));
        }
        Ok(Self(element))
    }

    pub fn one(alg: &Arc<Algebra>) -> Self {
        Self(Element::unit(alg))
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Self(Element::zero(alg))
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }
}

/// `a & b = Q_{√a} b`
pub fn seq_product(a: &Effect, b: &Effect) -> Result<Effect> {
    a.0.same_algebra(&b.0)?;
    let root = spectral::sqrt(&a.0)?;
    Effect::new(q_operator(&root).apply(&b.0)?)
}

/// `a^⊥ = 1 − a`
pub fn perp(a: &Effect) -> Effect {
    Effect(Element::unit(a.0.algebra()) - &a.0)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct AxiomOutcome {
    /// The axiom's hypotheses held (or it has none).
    pub applicable: bool,
    /// Conclusions held; always `true` when not applicable.
    pub holds: bool,
    /// Worst conclusion ratio (residual / scale); zero when not applicable.
    pub residual: f64,
    /// Worst hypothesis ratio of a conditional axiom, zero otherwise. A
    /// conclusion may miss the tolerance when this sits just below it.
    pub hypothesis: f64,
}

impl AxiomOutcome {
    fn not_applicable(hypothesis: f64) -> Self {
        Self {
            applicable: false,
            holds: true,
            residual: 0.0,
            hypothesis,
        }
    }

    fn evaluated(ratio: f64, tol: f64) -> Self {
        Self {
            applicable: true,
            holds: ratio <= tol,
            residual: ratio,
            hypothesis: 0.0,
        }
    }

    fn given(mut self, hypothesis: f64) -> Self {
        self.hypothesis = hypothesis;
        self
    }

    pub fn failed(&self) -> bool {
        self.applicable && !self.holds
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeaAxiomReport {
    /// `a & (b + c) = a & b + a & c` (when `b + c` is an effect)
    pub ax_a: AxiomOutcome,
    /// `1 & a = a`
    pub ax_b: AxiomOutcome,
    /// `a & b = 0 ⟹ b & a = 0`
    pub ax_c: AxiomOutcome,
    /// `a & b = b & a ⟹ a & b^⊥ = b^⊥ & a` and `a & (b & c) = (a & b) & c`
    pub ax_d: AxiomOutcome,
    /// `a & b = b & a`, `a & c = c & a` ⟹ `a & (b + c) = (b + c) & a` and
    /// `a & (b & c) = (b & c) & a`
    pub ax_e: AxiomOutcome,
}

impl SeaAxiomReport {
    pub fn entries(&self) -> [(&'static str, AxiomOutcome); 5] {
        [
            ("a", self.ax_a),
            ("b", self.ax_b),
            ("c", self.ax_c),
            ("d", self.ax_d),
            ("e", self.ax_e),
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.entries().iter().all(|(_, o)| !o.failed())
    }

    pub fn worst_ratio(&self) -> f64 {
        self.entries().iter().map(|(_, o)| o.residual).fold(0.0, f64::max)
    }
}

fn ratio(x: &Element, y: &Element, scale: f64) -> f64 {
    x.distance(y) / scale
}

/// Evaluates the five axioms on `(a, b, c)`. Hypotheses and conclusions are
/// judged with the same relative tolerance; the scale of every comparison is
/// `(1 + ‖a‖)(1 + ‖b‖)(1 + ‖c‖)`.
pub fn sea_axioms(a: &Effect, b: &Effect, c: &Effect, tol: f64) -> Result<SeaAxiomReport> {
    a.0.same_algebra(&b.0)?;
    a.0.same_algebra(&c.0)?;
    let alg = a.0.algebra();
    let scale = (1.0 + a.0.norm()) * (1.0 + b.0.norm()) * (1.0 + c.0.norm());
    // products of effects are effects, so intermediate results skip validation
    let left = |x: &Element| -> Result<OperatorMatrix> { Ok(q_operator(&spectral::sqrt(x)?)) };
    let (la, lb, lc) = (left(&a.0)?, left(&b.0)?, left(&c.0)?);

    let ab = la.apply(&b.0)?;
    let ba = lb.apply(&a.0)?;
    let ac = la.apply(&c.0)?;
    let ca = lc.apply(&a.0)?;
    let bc = lb.apply(&c.0)?;
    let sum_bc = Effect::new(&b.0 + &c.0).ok();

    let ax_a = match &sum_bc {
        Some(s) => AxiomOutcome::evaluated(ratio(&la.apply(&s.0)?, &(&ab + &ac), scale), tol),
        None => AxiomOutcome::not_applicable(0.0),
    };

    let one_a = seq_product(&Effect::one(alg), a)?;
    let ax_b = AxiomOutcome::evaluated(ratio(&one_a.0, &a.0, scale), tol);

    let ab_zero = ab.norm() / scale;
    let ax_c = if ab_zero <= tol {
        AxiomOutcome::evaluated(ba.norm() / scale, tol).given(ab_zero)
    } else {
        AxiomOutcome::not_applicable(ab_zero)
    };

    let a_bc = la.apply(&bc)?;
    let ab_gap = ratio(&ab, &ba, scale);
    let ab_commute = ab_gap <= tol;
    let ax_d = if ab_commute {
        let bp = perp(b);
        let r1 = ratio(&la.apply(&bp.0)?, &left(&bp.0)?.apply(&a.0)?, scale);
        let r2 = ratio(&a_bc, &left(&ab)?.apply(&c.0)?, scale);
        AxiomOutcome::evaluated(r1.max(r2), tol).given(ab_gap)
    } else {
        AxiomOutcome::not_applicable(ab_gap)
    };

    let ac_gap = ratio(&ac, &ca, scale);
    let ac_commute = ac_gap <= tol;
    let ax_e = if ab_commute && ac_commute {
        let mut worst = ratio(&a_bc, &left(&bc)?.apply(&a.0)?, scale);
        if let Some(s) = &sum_bc {
            worst = worst.max(ratio(&la.apply(&s.0)?, &left(&s.0)?.apply(&a.0)?, scale));
        }
        AxiomOutcome::evaluated(worst, tol).given(ab_gap.max(ac_gap))
    } else {
        AxiomOutcome::not_applicable(ab_gap.max(ac_gap))
    };

    Ok(SeaAxiomReport {
        ax_a,
        ax_b,
        ax_c,
        ax_d,
        ax_e,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticZeroReport {
    /// `‖Q_a b‖ / ((1+‖a‖)²(1+‖b‖))`
    pub q_ab: f64,
    /// `‖Q_b a‖ / ((1+‖b‖)²(1+‖a‖))`
    pub q_ba: f64,
    /// `‖a*b‖ / ((1+‖a‖)(1+‖b‖))`
    pub product: f64,
    /// `Q_a b = 0 ⟺ Q_b a = 0`, and then `a*b = 0`.
    pub consistent: bool,
}

/// For positive `a`, `b`: compares the vanishing of `Q_a b`, `Q_b a` and `a*b`.
pub fn quadratic_zero_check(a: &Element, b: &Element, tol: f64) -> Result<QuadraticZeroReport> {
    a.same_algebra(b)?;
    for x in [a, b] {
        let dec = spectral::spectral_decompose(x)?;
        if dec.min() < -POSITIVITY_TOL * (1.0 + x.norm()) {
            return Err(Error::NotPositive {
                min_eigenvalue: dec.min(),
            });
        }
    }
    let (na, nb) = (1.0 + a.norm(), 1.0 + b.norm());
    let q_ab = q_operator(a).apply(b)?.norm() / (na * na * nb);
    let q_ba = q_operator(b).apply(a)?.norm() / (nb * nb * na);
    let product = a.jmul(b)?.norm() / (na * nb);
    let (za, zb) = (q_ab <= tol, q_ba <= tol);
    Ok(QuadraticZeroReport {
        q_ab,
        q_ba,
        product,
        consistent: za == zb && (!za || product <= tol),
    })
}

/// `‖a_η & b − a & b‖` (order-unit norm) for `a_η = (a + η·1)/(1 + η)`.
pub fn continuity_profile(a: &Effect, b: &Effect, etas: &[f64]) -> Result<Vec<f64>> {
    let base = seq_product(a, b)?;
    etas.iter()
        .map(|&eta| {
            let moved = Effect::new(a.0.shift(eta).scale(1.0 / (1.0 + eta)))?;
            let diff = &seq_product(&moved, b)?.0 - &base.0;
            spectral::order_unit_norm(&diff)
        })
        .collect()
}

/// Residual of `a & b = b & a` with scale `(1+‖a‖)(1+‖b‖)`.
pub fn seq_commutation_residual(a: &Effect, b: &Effect) -> Result<Residual> {
    let ab = seq_product(a, b)?;
    let ba = seq_product(b, a)?;
    Ok(Residual::new(
        ab.0.distance(&ba.0),
        (1.0 + a.0.norm()) * (1.0 + b.0.norm()),
    ))
}
