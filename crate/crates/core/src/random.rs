//! Reproducible random elements.
//!
//! Coordinates are i.i.d. standard normal; positive elements are squares;
//! effects are squares rescaled by `1 / (‖b‖ + 1)` with the order-unit norm,
//! which puts their spectrum inside `[0, 1)`.

use std::sync::Arc;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{power, Algebra, Element};
use crate::commutation::commutant;
use crate::error::Result;
use crate::families::Family;
use crate::sea::Effect;
use crate::spectral::{order_unit_norm, spectral_decompose};

pub fn gaussian<R: Rng + ?Sized>(alg: &Arc<Algebra>, rng: &mut R) -> Element {
    let coords = (0..alg.dim()).map(|_| StandardNormal.sample(rng)).collect();
    Element::new(alg, coords).expect("finite samples")
}

pub fn positive<R: Rng + ?Sized>(alg: &Arc<Algebra>, rng: &mut R) -> Element {
    gaussian(alg, rng).square()
}

/// Rescales a positive element into `[0, 1)`.
pub fn squash(b: &Element) -> Result<Effect> {
    let n = order_unit_norm(b)?;
    Effect::new(b.scale(1.0 / (n + 1.0)))
}

pub fn effect<R: Rng + ?Sized>(alg: &Arc<Algebra>, rng: &mut R) -> Result<Effect> {
    squash(&positive(alg, rng))
}

/// `Σ_{k ≤ degree} c_k a^k` with standard normal coefficients.
pub fn polynomial_in<R: Rng + ?Sized>(a: &Element, degree: u32, rng: &mut R) -> Element {
    let mut acc = Element::zero(a.algebra());
    for k in 0..=degree {
        let c: f64 = StandardNormal.sample(rng);
        acc = acc + power(a, k).scale(c);
    }
    acc
}

/// A random element of the commutant of `{a}`.
pub fn in_commutant<R: Rng + ?Sized>(a: &Element, rng: &mut R) -> Result<Element> {
    let c = commutant(std::slice::from_ref(a))?;
    let coeffs: Vec<f64> = (0..c.dim()).map(|_| StandardNormal.sample(rng)).collect();
    Ok(c.combination(&coeffs))
}

/// A pair of elements that are simultaneously "diagonal": diagonal matrices
/// in the Hermitian families, parallel vector parts in a spin factor.
pub fn diagonal_pair<R: Rng + ?Sized>(
    family: Family,
    alg: &Arc<Algebra>,
    rng: &mut R,
) -> (Element, Element) {
    let d = alg.dim();
    let mut x = vec![0.0; d];
    let mut y = vec![0.0; d];
    match family {
        Family::Spin(_) => {
            let dir: Vec<f64> = (1..d).map(|_| StandardNormal.sample(&mut *rng)).collect();
            let (s, t): (f64, f64) = (StandardNormal.sample(&mut *rng), StandardNormal.sample(&mut *rng));
            let (l1, l2): (f64, f64) = (StandardNormal.sample(&mut *rng), StandardNormal.sample(&mut *rng));
            x[0] = s;
            y[0] = t;
            for (i, u) in dir.iter().enumerate() {
                x[i + 1] = l1 * u;
                y[i + 1] = l2 * u;
            }
        }
        _ => {
            for i in 0..family.size() {
                x[i] = StandardNormal.sample(&mut *rng);
                y[i] = StandardNormal.sample(&mut *rng);
            }
        }
    }
    (
        Element::new(alg, x).expect("finite"),
        Element::new(alg, y).expect("finite"),
    )
}

/// A random idempotent: the sum of a random non-empty proper subset of the
/// spectral idempotents of a Gaussian element (or a single one for rank-one
/// spectra).
pub fn idempotent<R: Rng + ?Sized>(alg: &Arc<Algebra>, rng: &mut R) -> Result<Element> {
    let a = gaussian(alg, rng);
    let dec = spectral_decompose(&a)?;
    let k = dec.len();
    let mut acc = Element::zero(alg);
    if k == 1 {
        return Ok(dec.idempotents[0].clone());
    }
    let mask = rng.random_range(1..(1u32 << k) - 1);
    for (i, p) in dec.idempotents.iter().enumerate() {
        if mask & (1 << i) != 0 {
            acc = acc + p;
        }
    }
    Ok(acc)
}

/// Splits the spectral idempotents of a Gaussian element into two
/// non-empty groups and returns effects supported on each.
pub fn orthogonal_effects<R: Rng + ?Sized>(alg: &Arc<Algebra>, rng: &mut R) -> Result<(Effect, Effect)> {
    let a = gaussian(alg, rng);
    let dec = spectral_decompose(&a)?;
    let k = dec.len();
    let split = if k > 1 { rng.random_range(1..k) } else { 1 };
    let mut x = Element::zero(alg);
    let mut y = Element::zero(alg);
    for (i, p) in dec.idempotents.iter().enumerate() {
        let w: f64 = rng.random_range(0.05..1.0);
        if i < split {
            x = x + p.scale(w);
        } else {
            y = y + p.scale(w);
        }
    }
    Ok((Effect::new(x)?, Effect::new(y)?))
}

/// `k` effects in `[0, ½]` that are polynomials of one Gaussian element,
/// hence pairwise operator commuting, with every pairwise sum an effect.
pub fn commuting_effects<R: Rng + ?Sized>(alg: &Arc<Algebra>, k: usize, rng: &mut R) -> Result<Vec<Effect>> {
    let x = gaussian(alg, rng);
    (0..k)
        .map(|_| {
            let p = polynomial_in(&x, 2, rng);
            Effect::new(squash(&p.square())?.element().scale(0.5))
        })
        .collect()
}
