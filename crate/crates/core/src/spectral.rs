//! Spectral decomposition and functional calculus.
//!
//! The decomposition is computed inside the associative subalgebra `J(a)`:
//! an orthonormal Krylov basis of `1, a, a², …` is grown until the next
//! power is dependent, `T_a` is restricted to that basis, and each
//! eigenvector `w` of the restriction yields the idempotent `⟨1, w⟩ w`
//! (the projection of the unit onto `ℝw`).

use crate::algebra::{Element, Residual};
use crate::error::{Error, Result};
use crate::kernel::{self, DenseMatrix, OrthoBasis, Vector, BASE_TOL};

/// Relative threshold under which neighbouring spectral values are merged.
pub const CLUSTER_TOL: f64 = 1e-7;
/// Relative slack allowed below zero for positivity.
pub const POSITIVITY_TOL: f64 = 1e-9;
/// Relative tolerance for the decomposition invariants.
pub const SPECTRAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Distinct spectral values, ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthogonal idempotents, one per spectral value, summing to the unit.
    pub idempotents: Vec<Element>,
}

/// Worst residuals of the decomposition invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralResiduals {
    pub reconstruction: Residual,
    pub idempotency: Residual,
    pub orthogonality: Residual,
    pub completeness: Residual,
}

impl SpectralResiduals {
    pub fn worst_ratio(&self) -> f64 {
        [
            self.reconstruction,
            self.idempotency,
            self.orthogonality,
            self.completeness,
        ]
        .iter()
        .map(Residual::ratio)
        .fold(0.0, f64::max)
    }
}

impl SpectralDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `Σ f(λ_i) p_i`
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<Element> {
        let alg = self.idempotents[0].algebra();
        let mut acc = Vector::zeros(alg.dim());
        for (l, p) in self.eigenvalues.iter().zip(&self.idempotents) {
            let v = f(*l);
            if !v.is_finite() {
                return Err(Error::DomainError { eigenvalue: *l });
            }
            acc += p.coords() * v;
        }
        Ok(Element::from_vector(alg, acc))
    }

    /// Residuals of the invariants against the decomposed element `a`.
    pub fn residuals(&self, a: &Element) -> SpectralResiduals {
        let alg = a.algebra();
        let scale_a = 1.0 + a.norm();
        let recon = self.apply(|l| l).expect("identity is finite");
        let reconstruction = Residual::new(recon.distance(a), scale_a);

        let mut idem = Residual::new(0.0, 1.0);
        let mut orth = Residual::new(0.0, 1.0);
        let mut sum = Vector::zeros(alg.dim());
        for (i, p) in self.idempotents.iter().enumerate() {
            sum += p.coords();
            let np = 1.0 + p.norm();
            let r = Residual::new(p.square().distance(p), np * np);
            if r.ratio() > idem.ratio() {
                idem = r;
            }
            for q in &self.idempotents[i + 1..] {
                let pq = Element::from_vector(alg, alg.product(p.coords(), q.coords()));
                let r = Residual::new(pq.norm(), np * (1.0 + q.norm()));
                if r.ratio() > orth.ratio() {
                    orth = r;
                }
            }
        }
        let unit = Element::unit(alg);
        let completeness = Residual::new(
            alg.norm_of(&(sum - unit.coords())),
            1.0 + unit.norm(),
        );
        SpectralResiduals {
            reconstruction,
            idempotency: idem,
            orthogonality: orth,
            completeness,
        }
    }
}

/// Orthonormal basis of `J(a)` (Krylov space of the unit under `T_a`).
pub fn krylov_basis(a: &Element) -> Vec<Vector> {
    let alg = a.algebra();
    let t = alg.t_matrix(a.coords());
    let mut basis = OrthoBasis::new(alg.gram().clone()).expect("validated gram");
    basis.push(alg.unit_coords(), BASE_TOL);
    while basis.len() < alg.dim() {
        let next = &t * basis.vectors().last().expect("non-empty");
        if !basis.push(&next, BASE_TOL) {
            break;
        }
    }
    basis.into_vectors()
}

fn raw_decomposition(a: &Element) -> Result<SpectralDecomposition> {
    let alg = a.algebra();
    let t = alg.t_matrix(a.coords());
    let basis = krylov_basis(a);
    let d = basis.len();
    let restricted = DenseMatrix::from_fn(d, d, |i, j| alg.inner_of(&basis[i], &(&t * &basis[j])));
    let restricted = (&restricted + restricted.transpose()) * 0.5;
    let eig = kernel::sym_eigen(&restricted)?;

    let unit = alg.unit_coords();
    let mut pairs: Vec<(f64, Vector)> = (0..d)
        .map(|k| {
            let y = eig.eigenvectors.column(k);
            let mut w = Vector::zeros(alg.dim());
            for (yk, v) in y.iter().zip(&basis) {
                w += v * *yk;
            }
            let p = &w * alg.inner_of(unit, &w);
            (eig.eigenvalues[k], p)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));

    let delta = CLUSTER_TOL * (1.0 + a.norm());
    let mut eigenvalues: Vec<f64> = Vec::new();
    let mut idempotents: Vec<Vector> = Vec::new();
    let mut members = 0usize;
    for (l, p) in pairs {
        match eigenvalues.last_mut() {
            Some(last) if (l - *last).abs() <= delta => {
                members += 1;
                *last += (l - *last) / members as f64;
                *idempotents.last_mut().expect("paired") += p;
            }
            _ => {
                eigenvalues.push(l);
                idempotents.push(p);
                members = 1;
            }
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        idempotents: idempotents
            .into_iter()
            .map(|p| Element::from_vector(alg, p))
            .collect(),
    })
}

/// Spectral decomposition `a = Σ λ_i p_i` with distinct `λ_i`.
///
/// If the invariants miss [`SPECTRAL_TOL`], the idempotents are sharpened
/// once with `p ↦ 3p² − 2p³`; a decomposition still off by more than ten
/// times the tolerance is a [`Error::NumericalFailure`].
pub fn spectral_decompose(a: &Element) -> Result<SpectralDecomposition> {
    let mut dec = raw_decomposition(a)?;
    let mut res = dec.residuals(a);
    if res.worst_ratio() > SPECTRAL_TOL {
        for p in &mut dec.idempotents {
            let p2 = p.square();
            let p3 = Element::from_vector(p.algebra(), p.algebra().product(p.coords(), p2.coords()));
            *p = p2.scale(3.0) - p3.scale(2.0);
        }
        res = dec.residuals(a);
        if res.worst_ratio() > 10.0 * SPECTRAL_TOL {
            return Err(Error::NumericalFailure(format!(
                "spectral invariants off by {:.3e}",
                res.worst_ratio()
            )));
        }
    }
    Ok(dec)
}

/// `f(a) = Σ f(λ_i) p_i`; fails with [`Error::DomainError`] if `f` is not
/// finite at some spectral value.
pub fn apply_function(a: &Element, f: impl Fn(f64) -> f64) -> Result<Element> {
    spectral_decompose(a)?.apply(f)
}

fn positivity_slack(a: &Element) -> f64 {
    POSITIVITY_TOL * (1.0 + a.norm())
}

/// Square root of a positive element; spectral values in `[−δ, 0)` are
/// treated as zero.
pub fn sqrt(a: &Element) -> Result<Element> {
    let dec = spectral_decompose(a)?;
    let min = dec.min();
    if min < -positivity_slack(a) {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    dec.apply(|l| l.max(0.0).sqrt())
}

pub fn is_positive(a: &Element) -> bool {
    match spectral_decompose(a) {
        Ok(dec) => dec.min() >= -positivity_slack(a),
        Err(_) => false,
    }
}

/// `max |λ_i|`, the JB norm of a finite-dimensional algebra.
pub fn order_unit_norm(a: &Element) -> Result<f64> {
    let dec = spectral_decompose(a)?;
    Ok(dec.min().abs().max(dec.max().abs()))
}

/// `a^n` through the functional calculus.
pub fn spectral_power(a: &Element, n: i32) -> Result<Element> {
    apply_function(a, |l| l.powi(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{power, q_operator};
    use crate::families::{herm_complex, spin, Family};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};
    use std::sync::Arc;

    fn hc2() -> Arc<crate::algebra::Algebra> {
        herm_complex(2).unwrap()
    }

    fn el(alg: &Arc<crate::algebra::Algebra>, v: &[f64]) -> Element {
        Element::new(alg, v.to_vec()).unwrap()
    }

    fn random(alg: &Arc<crate::algebra::Algebra>, rng: &mut ChaCha8Rng) -> Element {
        let v = (0..alg.dim()).map(|_| StandardNormal.sample(&mut *rng)).collect();
        Element::new(alg, v).unwrap()
    }

    #[test]
    fn unit_spectrum() {
        let alg = hc2();
        let dec = spectral_decompose(&Element::unit(&alg)).unwrap();
        assert_eq!(dec.len(), 1);
        assert!((dec.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!(dec.idempotents[0].distance(&Element::unit(&alg)) < 1e-14);
    }

    #[test]
    fn sigma_z_spectrum() {
        let alg = hc2();
        let sz = el(&alg, &[1.0, -1.0, 0.0, 0.0]);
        let dec = spectral_decompose(&sz).unwrap();
        assert_eq!(dec.len(), 2);
        assert!((dec.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((dec.eigenvalues[1] - 1.0).abs() < 1e-14);
        // −1 ↦ |1⟩⟨1| = E11, +1 ↦ |0⟩⟨0| = E00
        assert!(dec.idempotents[0].distance(&el(&alg, &[0.0, 1.0, 0.0, 0.0])) < 1e-14);
        assert!(dec.idempotents[1].distance(&el(&alg, &[1.0, 0.0, 0.0, 0.0])) < 1e-14);
    }

    #[test]
    fn spin_spectrum() {
        // minimal polynomial (λ − s)² = ‖u‖²
        let alg = spin(3).unwrap();
        let a = el(&alg, &[0.5, 3.0, 4.0]);
        let dec = spectral_decompose(&a).unwrap();
        assert!((dec.eigenvalues[0] + 4.5).abs() < 1e-13);
        assert!((dec.eigenvalues[1] - 5.5).abs() < 1e-13);
    }

    #[test]
    fn functional_calculus_examples() {
        let alg = hc2();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random(&alg, &mut rng);
        assert!(apply_function(&a, |l| l).unwrap().distance(&a) < 1e-12);
        assert!(apply_function(&a, |_| 1.0).unwrap().distance(&Element::unit(&alg)) < 1e-12);
        let d = el(&alg, &[1.0, 4.0, 0.0, 0.0]);
        let r = apply_function(&d, f64::sqrt).unwrap();
        assert!(r.distance(&el(&alg, &[1.0, 2.0, 0.0, 0.0])) < 1e-14);
        let neg = el(&alg, &[-1.0, 4.0, 0.0, 0.0]);
        assert!(matches!(apply_function(&neg, f64::sqrt), Err(Error::DomainError { .. })));
        assert!(matches!(apply_function(&neg, f64::ln), Err(Error::DomainError { .. })));
    }

    #[test]
    fn sqrt_examples() {
        let alg = hc2();
        let p = el(&alg, &[0.5, 0.5, 0.5, 0.0]); // |+⟩⟨+|
        assert!(p.square().distance(&p) < 1e-15);
        assert!(sqrt(&p).unwrap().distance(&p) < 1e-14);
        let one = Element::unit(&alg);
        assert!(sqrt(&one).unwrap().distance(&one) < 1e-14);
        let d = el(&alg, &[4.0, 9.0, 0.0, 0.0]);
        assert!(sqrt(&d).unwrap().distance(&el(&alg, &[2.0, 3.0, 0.0, 0.0])) < 1e-14);
        let sz = el(&alg, &[1.0, -1.0, 0.0, 0.0]);
        assert!(matches!(sqrt(&sz), Err(Error::NotPositive { .. })));
        // slightly negative noise is clamped
        let noisy = el(&alg, &[1.0, -1e-12, 0.0, 0.0]);
        let s = sqrt(&noisy).unwrap();
        assert!(s.distance(&el(&alg, &[1.0, 0.0, 0.0, 0.0])) < 1e-12);
    }

    #[test]
    fn positivity_and_norm_examples() {
        let alg = hc2();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = random(&alg, &mut rng);
        assert!(is_positive(&b.square()));
        assert!(!is_positive(&-Element::unit(&alg)));
        let sz = el(&alg, &[1.0, -1.0, 0.0, 0.0]);
        let sx = el(&alg, &[0.0, 0.0, 1.0, 0.0]);
        assert!(!is_positive(&sz));
        assert!((order_unit_norm(&Element::unit(&alg)).unwrap() - 1.0).abs() < 1e-14);
        assert!((order_unit_norm(&sz).unwrap() - 1.0).abs() < 1e-14);
        assert!((order_unit_norm(&sx.scale(3.0)).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn power_matches_spectral_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for f in [Family::SymReal(3), Family::Spin(4), Family::Albert] {
            let alg = f.build().unwrap();
            for _ in 0..10 {
                let a = random(&alg, &mut rng);
                for n in 0..5 {
                    let p = power(&a, n as u32);
                    let s = spectral_power(&a, n).unwrap();
                    let scale = (1.0 + a.norm()).powi(n);
                    assert!(p.distance(&s) <= 1e-8 * scale, "{f} n={n}");
                }
            }
        }
    }

    #[test]
    fn q_preserves_positivity_and_unit_interval_squares() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let alg = Family::HermQuat(2).build().unwrap();
        for _ in 0..20 {
            let a = random(&alg, &mut rng);
            let b = random(&alg, &mut rng).square();
            assert!(is_positive(&q_operator(&a).apply(&b).unwrap()));
            // −1 ≤ c ≤ 1 ⟹ 0 ≤ c² ≤ 1
            let c = a.scale(1.0 / order_unit_norm(&a).unwrap());
            let dec = spectral_decompose(&c.square()).unwrap();
            assert!(dec.min() >= -1e-12 && dec.max() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn sqrt_is_norm_continuous() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let alg = Family::HermComplex(3).build().unwrap();
        for _ in 0..20 {
            let a = random(&alg, &mut rng).square();
            let s = sqrt(&a).unwrap();
            for eta in [0.5, 1e-2, 1e-4, 1e-6] {
                let se = sqrt(&a.shift(eta)).unwrap();
                let diff = order_unit_norm(&(se - &s)).unwrap();
                assert!(diff <= eta.sqrt() + 1e-8 * (1.0 + a.norm()));
            }
        }
    }
}
