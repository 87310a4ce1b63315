//! Operator commutation, commutants, generated subalgebras and the
//! equivalence report for pairs of elements.
//!
//! All decisions share one relative tolerance (default [`DEFAULT_TOL`]).
//! A residual whose ratio falls in `[0.1·tol, 10·tol]` is flagged as
//! borderline rather than being silently classified.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{ensure_same, q_operator, Algebra, Element, Residual};
use crate::error::{Error, Result};
use crate::kernel::{self, DenseMatrix, OrthoBasis, Vector};
use crate::spectral::is_positive;

pub const DEFAULT_TOL: f64 = 1e-8;
/// Drop tolerance for spans built from products and kernels.
const SPAN_TOL: f64 = 1e-9;
/// Defect scans stop once a ratio exceeds this multiple of the tolerance.
const EARLY_EXIT: f64 = 1e3;

fn is_borderline(ratio: f64, tol: f64) -> bool {
    ratio >= 0.1 * tol && ratio <= 10.0 * tol
}

/// `‖[T_a, T_b]‖` with scale `(1 + ‖T_a‖)(1 + ‖T_b‖)`, operator norms.
pub fn commutation_residual(a: &Element, b: &Element) -> Result<Residual> {
    a.same_algebra(b)?;
    let alg = a.algebra();
    let ta = alg.t_matrix(a.coords());
    let tb = alg.t_matrix(b.coords());
    Ok(operator_commutator_residual(alg, &ta, &tb))
}

fn operator_commutator_residual(alg: &Algebra, s: &DenseMatrix, t: &DenseMatrix) -> Residual {
    let c = s * t - t * s;
    Residual::new(
        alg.operator_norm(&c),
        (1.0 + alg.operator_norm(s)) * (1.0 + alg.operator_norm(t)),
    )
}

/// `a ⌣ b`: `‖[T_a, T_b]‖ ≤ tol · (1 + ‖T_a‖)(1 + ‖T_b‖)`.
pub fn operator_commute(a: &Element, b: &Element, tol: f64) -> Result<bool> {
    Ok(commutation_residual(a, b)?.within(tol))
}

/// A subspace given by a basis orthonormal in the algebra's inner product.
#[derive(Debug, Clone)]
pub struct SubalgebraBasis {
    alg: Arc<Algebra>,
    basis: Vec<Element>,
    contains_unit: bool,
}

impl SubalgebraBasis {
    fn from_vectors(alg: &Arc<Algebra>, vectors: Vec<Vector>) -> Self {
        let basis: Vec<Element> = vectors
            .into_iter()
            .map(|v| Element::from_vector(alg, v))
            .collect();
        let mut s = Self {
            alg: alg.clone(),
            basis,
            contains_unit: false,
        };
        s.contains_unit = s.span_residual(&Element::unit(alg)) <= 1e-8 * (1.0 + Element::unit(alg).norm());
        s
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.basis
    }

    pub fn contains_unit(&self) -> bool {
        self.contains_unit
    }

    /// Orthogonal projection onto the span.
    pub fn project(&self, x: &Element) -> Element {
        let mut acc = Vector::zeros(self.alg.dim());
        for q in &self.basis {
            acc += q.coords() * self.alg.inner_of(q.coords(), x.coords());
        }
        Element::from_vector(&self.alg, acc)
    }

    /// Distance from `x` to the span.
    pub fn span_residual(&self, x: &Element) -> f64 {
        x.distance(&self.project(x))
    }

    /// Largest relative distance of a basis product `x * y` from the span.
    pub fn closure_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (i, x) in self.basis.iter().enumerate() {
            let tx = self.alg.t_matrix(x.coords());
            for y in &self.basis[i..] {
                let p = Element::from_vector(&self.alg, &tx * y.coords());
                worst = worst.max(self.span_residual(&p) / (1.0 + p.norm()));
            }
        }
        worst
    }

    /// `Σ c_i q_i` over the basis.
    pub fn combination(&self, coeffs: &[f64]) -> Element {
        let mut acc = Vector::zeros(self.alg.dim());
        for (c, q) in coeffs.iter().zip(&self.basis) {
            acc += q.coords() * *c;
        }
        Element::from_vector(&self.alg, acc)
    }
}

fn ensure_all_same(xs: &[Element]) -> Result<&Arc<Algebra>> {
    let first = xs
        .first()
        .ok_or_else(|| Error::InvalidDescriptor("empty element list".into()))?;
    for x in &xs[1..] {
        ensure_same(first.algebra(), x.algebra())?;
    }
    Ok(first.algebra())
}

/// `S′ = {x : [T_x, T_s] = 0 for all s ∈ S}`, as the joint kernel of the
/// linear maps `x ↦ [T_x, T_s]`.
pub fn commutant(s: &[Element]) -> Result<SubalgebraBasis> {
    let alg = ensure_all_same(s)?;
    let d = alg.dim();
    let basis_ops: Vec<DenseMatrix> = (0..d).map(|i| alg.t_matrix(Element::basis(alg, i).coords())).collect();
    let mut stacked = DenseMatrix::zeros(d * d * s.len(), d);
    for (block, el) in s.iter().enumerate() {
        let ts = alg.t_matrix(el.coords());
        // normalise each block so that large generators do not swamp small ones
        let weight = 1.0 / (1.0 + alg.operator_norm(&ts));
        for (i, ti) in basis_ops.iter().enumerate() {
            let c = (ti * &ts - &ts * ti) * weight;
            for (r, v) in c.iter().enumerate() {
                stacked[(block * d * d + r, i)] = *v;
            }
        }
    }
    let kernel_cols = kernel::nullspace(&stacked, SPAN_TOL);
    let vectors: Vec<Vector> = kernel_cols.column_iter().map(|c| c.into_owned()).collect();
    let ortho = kernel::gram_schmidt(&vectors, alg.gram(), SPAN_TOL)?;
    Ok(SubalgebraBasis::from_vectors(alg, ortho))
}

/// Smallest product-closed subspace containing `gens` (and the unit if
/// requested).
pub fn generate_subalgebra(gens: &[Element], include_unit: bool) -> Result<SubalgebraBasis> {
    let alg = ensure_all_same(gens)?;
    let mut basis = OrthoBasis::new(alg.gram().clone())?;
    if include_unit {
        basis.push(alg.unit_coords(), SPAN_TOL);
    }
    for g in gens {
        basis.push(g.coords(), SPAN_TOL);
    }
    let mut done = 0;
    while done < basis.len() && basis.len() < alg.dim() {
        let current = basis.len();
        let snapshot: Vec<Vector> = basis.vectors().to_vec();
        let ops: Vec<DenseMatrix> = snapshot.iter().map(|v| alg.t_matrix(v)).collect();
        'outer: for i in done..current {
            for j in 0..=i {
                basis.push(&(&ops[i] * &snapshot[j]), SPAN_TOL);
                if basis.len() == alg.dim() {
                    break 'outer;
                }
            }
        }
        done = current;
    }
    Ok(SubalgebraBasis::from_vectors(alg, basis.into_vectors()))
}

/// Worst `‖(x*y)*z − x*(y*z)‖ / ((1+‖x‖)(1+‖y‖)(1+‖z‖))` over basis triples.
///
/// The scan stops early once a violation is far outside the tolerance band;
/// in that case the returned value is a lower bound.
pub fn associativity_defect(b: &SubalgebraBasis, tol: f64) -> f64 {
    let alg = &b.alg;
    let d = b.dim();
    if d == 0 {
        return 0.0;
    }
    let bmat = DenseMatrix::from_columns(&b.basis.iter().map(|e| e.coords().clone()).collect::<Vec<_>>());
    let ops: Vec<DenseMatrix> = b.basis.iter().map(|e| alg.t_matrix(e.coords())).collect();
    let images: Vec<DenseMatrix> = ops.iter().map(|t| t * &bmat).collect();
    let norms: Vec<f64> = b.basis.iter().map(|e| 1.0 + e.norm()).collect();
    let mut worst = 0.0_f64;
    for x in 0..d {
        for z in x + 1..d {
            // column y: (x*y)*z − x*(y*z) = T_z T_x y − T_x T_z y
            let diff = &ops[z] * &images[x] - &ops[x] * &images[z];
            for (y, col) in diff.column_iter().enumerate() {
                let r = alg.norm_of(&col.into_owned()) / (norms[x] * norms[y] * norms[z]);
                worst = worst.max(r);
            }
            if worst > EARLY_EXIT * tol {
                return worst;
            }
        }
    }
    worst
}

pub fn is_associative(b: &SubalgebraBasis, tol: f64) -> bool {
    associativity_defect(b, tol) <= tol
}

/// Worst commutation ratio over basis pairs (early exit as in
/// [`associativity_defect`]).
pub fn mutual_commutation_defect(b: &SubalgebraBasis, tol: f64) -> f64 {
    let alg = &b.alg;
    let ops: Vec<DenseMatrix> = b.basis.iter().map(|e| alg.t_matrix(e.coords())).collect();
    let norms: Vec<f64> = ops.iter().map(|t| 1.0 + alg.operator_norm(t)).collect();
    let mut worst = 0.0_f64;
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let r = operator_commutator_residual(alg, &ops[i], &ops[j]);
            worst = worst.max(r.value / (norms[i] * norms[j]));
            if worst > EARLY_EXIT * tol {
                return worst;
            }
        }
    }
    worst
}

pub fn is_mutually_commuting(b: &SubalgebraBasis, tol: f64) -> bool {
    mutual_commutation_defect(b, tol) <= tol
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Consistent => f.write_str("Consistent"),
            Verdict::Inconsistent => f.write_str("Inconsistent"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedResidual {
    pub name: &'static str,
    /// Residual divided by its scale; compared against the tolerance.
    pub ratio: f64,
    pub borderline: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityCase {
    /// At least one of the pair is positive.
    pub applicable: bool,
    /// `Q_a b² = Q_b a²` within tolerance (evaluated either way).
    pub q_identity: bool,
}

/// The four equivalent conditions for a pair, plus the quadratic identity
/// when one element is positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    /// (a) `a ⌣ b`
    pub op_commute: bool,
    /// (b) the subalgebra generated by `a`, `b`, `1` is associative
    pub assoc: bool,
    /// (c) … and its elements mutually operator commute
    pub assoc_mutual: bool,
    /// (d) `a, a²` operator commute with `b, b²`
    pub squares_commute: bool,
    pub positivity_case: PositivityCase,
    pub generated_dim: usize,
    pub residuals: Vec<NamedResidual>,
    pub verdict: Verdict,
    pub tol: f64,
}

impl TheoremReport {
    pub fn borderline(&self) -> bool {
        self.residuals.iter().any(|r| r.borderline)
    }
}

/// Quadratic identity residual `‖Q_a b² − Q_b a²‖`, scale `(1+‖a‖)²(1+‖b‖)²`.
pub fn q_cross_residual(a: &Element, b: &Element) -> Result<Residual> {
    a.same_algebra(b)?;
    let lhs = q_operator(a).apply(&b.square())?;
    let rhs = q_operator(b).apply(&a.square())?;
    let scale = (1.0 + a.norm()).powi(2) * (1.0 + b.norm()).powi(2);
    Ok(Residual::new(lhs.distance(&rhs), scale))
}

/// Worst commutation ratio over `{a, a²} × {b, b²}`.
pub fn squares_commutation_ratio(a: &Element, b: &Element) -> Result<f64> {
    let (a2, b2) = (a.square(), b.square());
    let mut worst = 0.0_f64;
    for x in [a, &a2] {
        for y in [b, &b2] {
            worst = worst.max(commutation_residual(x, y)?.ratio());
        }
    }
    Ok(worst)
}

pub fn theorem_report(a: &Element, b: &Element, tol: f64) -> Result<TheoremReport> {
    a.same_algebra(b)?;
    let mut residuals = Vec::new();
    let mut record = |name: &'static str, ratio: f64| {
        residuals.push(NamedResidual {
            name,
            ratio,
            borderline: is_borderline(ratio, tol),
        });
        ratio <= tol
    };

    let op_commute = record("op_commute", commutation_residual(a, b)?.ratio());
    let generated = generate_subalgebra(&[a.clone(), b.clone()], true)?;
    let assoc = record("assoc", associativity_defect(&generated, tol));
    let assoc_mutual = if assoc {
        record("mutual", mutual_commutation_defect(&generated, tol))
    } else {
        false
    };
    let squares_commute = record("squares", squares_commutation_ratio(a, b)?);
    let applicable = is_positive(a) || is_positive(b);
    let q_ratio = q_cross_residual(a, b)?.ratio();
    let q_identity = if applicable {
        record("q_identity", q_ratio)
    } else {
        q_ratio <= tol
    };

    let mut agree = op_commute == assoc && assoc == assoc_mutual && assoc_mutual == squares_commute;
    if applicable {
        agree &= q_identity == op_commute;
    }
    Ok(TheoremReport {
        op_commute,
        assoc,
        assoc_mutual,
        squares_commute,
        positivity_case: PositivityCase {
            applicable,
            q_identity,
        },
        generated_dim: generated.dim(),
        residuals,
        verdict: if agree {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        },
        tol,
    })
}

/// Result of closing a pair satisfying `a ⌣ b, b²` and `b ⌣ a²`.
#[derive(Debug, Clone)]
pub struct CommutingClosure {
    pub basis: SubalgebraBasis,
    pub associative: bool,
    pub mutually_commuting: bool,
    /// `a ⌣ b` and `b ⌣ a²` imply `b² ⌣ a`.
    pub squares_follow: bool,
}

impl CommutingClosure {
    pub fn consistent(&self) -> bool {
        self.associative && self.mutually_commuting && self.squares_follow
    }
}

pub fn two_generator_commuting_closure(a: &Element, b: &Element, tol: f64) -> Result<CommutingClosure> {
    a.same_algebra(b)?;
    let ab = operator_commute(a, b, tol)?;
    let a_b2 = operator_commute(a, &b.square(), tol)?;
    let b_a2 = operator_commute(b, &a.square(), tol)?;
    if !(ab && a_b2 && b_a2) {
        return Err(Error::NotApplicable(format!(
            "a⌣b: {ab}, a⌣b²: {a_b2}, b⌣a²: {b_a2}"
        )));
    }
    let basis = generate_subalgebra(&[a.clone(), b.clone()], true)?;
    let associative = is_associative(&basis, tol);
    let mutually_commuting = is_mutually_commuting(&basis, tol);
    let squares_follow = squares_follow_from(a, b, tol)? == Some(true);
    Ok(CommutingClosure {
        basis,
        associative,
        mutually_commuting,
        squares_follow,
    })
}

/// Whether `a ⌣ b` and `b ⌣ a²` force `b² ⌣ a`; `None` when the hypotheses fail.
pub fn squares_follow_from(a: &Element, b: &Element, tol: f64) -> Result<Option<bool>> {
    if operator_commute(a, b, tol)? && operator_commute(b, &a.square(), tol)? {
        Ok(Some(operator_commute(a, &b.square(), tol)?))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QPanel {
    /// `Q_a Q_b = Q_b Q_a`
    pub qq_commute: bool,
    /// `Q_a b² = Q_b a²`
    pub q_cross_identity: bool,
    /// `a, a²` operator commute with `b, b²`
    pub full_commute: bool,
    pub positive_case: bool,
    /// When one element is positive, whether the three conditions agree.
    pub agreement: Option<bool>,
    pub residuals: Vec<NamedResidual>,
}

pub fn q_commutation_panel(a: &Element, b: &Element, tol: f64) -> Result<QPanel> {
    a.same_algebra(b)?;
    let alg = a.algebra();
    let qa = q_operator(a);
    let qb = q_operator(b);
    let qq = operator_commutator_residual(alg, qa.matrix(), qb.matrix()).ratio();
    let cross = q_cross_residual(a, b)?.ratio();
    let full = squares_commutation_ratio(a, b)?;
    let residuals = [("qq_commute", qq), ("q_cross", cross), ("full_commute", full)]
        .into_iter()
        .map(|(name, ratio)| NamedResidual {
            name,
            ratio,
            borderline: is_borderline(ratio, tol),
        })
        .collect();
    let (qq_commute, q_cross_identity, full_commute) = (qq <= tol, cross <= tol, full <= tol);
    let positive_case = is_positive(a) || is_positive(b);
    Ok(QPanel {
        qq_commute,
        q_cross_identity,
        full_commute,
        positive_case,
        agreement: positive_case
            .then_some(qq_commute == q_cross_identity && q_cross_identity == full_commute),
        residuals,
    })
}
