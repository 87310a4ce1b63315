//! Finite-dimensional real Jordan algebras given by structure constants.
//!
//! An [`Algebra`] is immutable once built and is shared through `Arc`.
//! Elements and operators hold a reference to their algebra; mixing
//! elements from different algebras is reported as
//! [`Error::AlgebraMismatch`] by the checked operations, and panics in the
//! arithmetic operator impls (like a dimension mismatch would).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::kernel::{self, DenseMatrix, Vector};

/// Relative tolerance used when validating a descriptor.
const VALIDATION_TOL: f64 = 1e-9;
const VALIDATION_PROBES: usize = 8;
const VALIDATION_SEED: u64 = 0x4a6f_7264_616e;

/// Worst relative residuals seen while validating a descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize)]
pub struct ValidationResiduals {
    pub symmetry: f64,
    pub unit_law: f64,
    pub jordan_identity: f64,
    pub self_adjointness: f64,
}

/// A finite-dimensional Euclidean Jordan algebra in a fixed coordinate basis.
///
/// `e_i * e_j = Σ_k c[i][j][k] e_k`, the inner product is `⟨e_i, e_j⟩ = gram[i][j]`.
pub struct Algebra {
    name: String,
    labels: Vec<String>,
    structure: Vec<f64>,
    // mult[i] = T_{e_i}; column j holds the coordinates of e_i * e_j
    mult: Vec<DenseMatrix>,
    gram: DenseMatrix,
    gram_sqrt: DenseMatrix,
    gram_inv_sqrt: DenseMatrix,
    unit: Vector,
    validation: ValidationResiduals,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .finish()
    }
}

impl Algebra {
    /// Builds and validates a descriptor. `structure` is laid out as
    /// `c[(i * dim + j) * dim + k]`.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        structure: Vec<f64>,
        gram: DenseMatrix,
        unit: Vector,
    ) -> Result<Arc<Self>> {
        let name = name.into();
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidDescriptor("empty basis".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(Error::InvalidDescriptor(format!(
                "structure tensor has {} entries, expected {}",
                structure.len(),
                dim * dim * dim
            )));
        }
        if gram.shape() != (dim, dim) || unit.len() != dim {
            return Err(Error::InvalidDescriptor("gram/unit shape mismatch".into()));
        }
        if !structure.iter().chain(gram.iter()).chain(unit.iter()).all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mult = (0..dim)
            .map(|i| DenseMatrix::from_fn(dim, dim, |k, j| structure[(i * dim + j) * dim + k]))
            .collect();
        let (gram_sqrt, gram_inv_sqrt) = kernel::sqrt_and_inv_sqrt(&gram)?;
        let mut alg = Self {
            name,
            labels,
            structure,
            mult,
            gram,
            gram_sqrt,
            gram_inv_sqrt,
            unit,
            validation: ValidationResiduals::default(),
        };
        alg.validation = alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<ValidationResiduals> {
        let dim = self.dim();
        let c_scale = 1.0 + self.structure.iter().fold(0.0_f64, |m, x| m.max(x.abs()));

        let mut symmetry = 0.0_f64;
        for i in 0..dim {
            for j in 0..i {
                symmetry = symmetry.max((self.mult[i].column(j) - self.mult[j].column(i)).amax());
            }
        }
        symmetry /= c_scale;

        let t_unit = self.t_matrix(&self.unit);
        let unit_law = kernel::max_abs(&(t_unit - DenseMatrix::identity(dim, dim))) / c_scale;

        let mut self_adjointness = 0.0_f64;
        for m in &self.mult {
            let gt = &self.gram * m;
            let asym = kernel::max_abs(&(&gt - gt.transpose()));
            self_adjointness = self_adjointness.max(asym / (1.0 + kernel::max_abs(&gt)));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
        let mut jordan_identity = 0.0_f64;
        for _ in 0..VALIDATION_PROBES {
            let a = Vector::from_fn(dim, |_, _| StandardNormal.sample(&mut rng));
            let b = Vector::from_fn(dim, |_, _| StandardNormal.sample(&mut rng));
            let a2 = self.t_matrix(&a) * &a;
            let lhs = self.t_matrix(&a2) * (self.t_matrix(&a) * &b);
            let rhs = self.t_matrix(&a) * (self.t_matrix(&a2) * &b);
            let scale = (1.0 + self.norm_of(&a)).powi(3) * (1.0 + self.norm_of(&b)) * c_scale.powi(3);
            jordan_identity = jordan_identity.max(self.norm_of(&(lhs - rhs)) / scale);
        }

        let report = ValidationResiduals {
            symmetry,
            unit_law,
            jordan_identity,
            self_adjointness,
        };
        let checks = [
            ("structure constants not symmetric", symmetry),
            ("unit law violated", unit_law),
            ("Jordan identity violated", jordan_identity),
            ("product operators not self-adjoint", self_adjointness),
        ];
        for (what, r) in checks {
            if !(r <= VALIDATION_TOL) {
                return Err(Error::InvalidDescriptor(format!("{what} (residual {r:.3e})")));
            }
        }
        Ok(report)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        let d = self.dim();
        self.structure[(i * d + j) * d + k]
    }

    pub fn gram(&self) -> &DenseMatrix {
        &self.gram
    }

    pub fn unit_coords(&self) -> &Vector {
        &self.unit
    }

    pub fn validation(&self) -> ValidationResiduals {
        self.validation
    }

    /// Matrix of `T_a` for coordinates `a`.
    pub(crate) fn t_matrix(&self, a: &Vector) -> DenseMatrix {
        let d = self.dim();
        let mut t = DenseMatrix::zeros(d, d);
        for (ai, m) in a.iter().zip(&self.mult) {
            if *ai != 0.0 {
                t += m * *ai;
            }
        }
        t
    }

    pub(crate) fn product(&self, x: &Vector, y: &Vector) -> Vector {
        self.t_matrix(x) * y
    }

    pub(crate) fn inner_of(&self, x: &Vector, y: &Vector) -> f64 {
        x.dot(&(&self.gram * y))
    }

    pub(crate) fn norm_of(&self, x: &Vector) -> f64 {
        self.inner_of(x, x).max(0.0).sqrt()
    }

    /// Spectral norm of a coordinate operator, measured in the Gram geometry.
    pub(crate) fn operator_norm(&self, m: &DenseMatrix) -> f64 {
        kernel::spectral_norm(&(&self.gram_sqrt * m * &self.gram_inv_sqrt))
    }

    pub(crate) fn same_as(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other) || (self.name == other.name && self.dim() == other.dim())
    }
}

pub(crate) fn ensure_same(x: &Algebra, y: &Algebra) -> Result<()> {
    if x.same_as(y) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch {
            left: x.name.clone(),
            right: y.name.clone(),
        })
    }
}

/// An element of an algebra, stored as coordinates in the canonical basis.
#[derive(Clone)]
pub struct Element {
    alg: Arc<Algebra>,
    coords: Vector,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({}: {:?})", self.alg.name, self.coords.as_slice())
    }
}

impl Element {
    pub fn new(alg: &Arc<Algebra>, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: coords.len(),
            });
        }
        if !coords.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            alg: alg.clone(),
            coords: Vector::from_vec(coords),
        })
    }

    pub(crate) fn from_vector(alg: &Arc<Algebra>, coords: Vector) -> Self {
        debug_assert_eq!(coords.len(), alg.dim());
        Self {
            alg: alg.clone(),
            coords,
        }
    }

    pub fn unit(alg: &Arc<Algebra>) -> Self {
        Self::from_vector(alg, alg.unit.clone())
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Self::from_vector(alg, Vector::zeros(alg.dim()))
    }

    pub fn basis(alg: &Arc<Algebra>, i: usize) -> Self {
        let mut v = Vector::zeros(alg.dim());
        v[i] = 1.0;
        Self::from_vector(alg, v)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn coords(&self) -> &Vector {
        &self.coords
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.coords.iter().copied().collect()
    }

    /// Norm induced by the algebra's inner product.
    pub fn norm(&self) -> f64 {
        self.alg.norm_of(&self.coords)
    }

    pub fn inner(&self, other: &Element) -> Result<f64> {
        ensure_same(&self.alg, &other.alg)?;
        Ok(self.alg.inner_of(&self.coords, &other.coords))
    }

    pub fn square(&self) -> Element {
        Self::from_vector(&self.alg, self.alg.product(&self.coords, &self.coords))
    }

    /// Jordan product; see [`jordan_mul`].
    pub fn jmul(&self, other: &Element) -> Result<Element> {
        jordan_mul(self, other)
    }

    pub fn scale(&self, s: f64) -> Element {
        Self::from_vector(&self.alg, &self.coords * s)
    }

    /// `self + s * unit`
    pub fn shift(&self, s: f64) -> Element {
        Self::from_vector(&self.alg, &self.coords + &self.alg.unit * s)
    }

    pub fn distance(&self, other: &Element) -> f64 {
        self.alg.norm_of(&(&self.coords - &other.coords))
    }

    pub(crate) fn same_algebra(&self, other: &Element) -> Result<()> {
        ensure_same(&self.alg, &other.alg)
    }
}

macro_rules! element_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                assert!(self.alg.same_as(&rhs.alg), "element algebra mismatch");
                Element::from_vector(&self.alg, &self.coords $op &rhs.coords)
            }
        }
        impl $tr<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$method(rhs)
            }
        }
    };
}

element_binop!(Add, add, +);
element_binop!(Sub, sub, -);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, s: f64) -> Element {
        self.scale(s)
    }
}

impl Mul<f64> for Element {
    type Output = Element;
    fn mul(self, s: f64) -> Element {
        self.scale(s)
    }
}

/// Dense linear operator on an algebra's coordinate space.
#[derive(Clone)]
pub struct OperatorMatrix {
    alg: Arc<Algebra>,
    matrix: DenseMatrix,
}

impl fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorMatrix({}, {})", self.alg.name, self.matrix)
    }
}

impl OperatorMatrix {
    pub fn new(alg: &Arc<Algebra>, matrix: DenseMatrix) -> Result<Self> {
        let d = alg.dim();
        if matrix.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.nrows(),
            });
        }
        if !matrix.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            alg: alg.clone(),
            matrix,
        })
    }

    pub fn identity(alg: &Arc<Algebra>) -> Self {
        let d = alg.dim();
        Self {
            alg: alg.clone(),
            matrix: DenseMatrix::identity(d, d),
        }
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        ensure_same(&self.alg, &x.alg)?;
        Ok(Element::from_vector(&self.alg, &self.matrix * &x.coords))
    }

    pub fn compose(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        ensure_same(&self.alg, &other.alg)?;
        Ok(self.wrap(&self.matrix * &other.matrix))
    }

    /// Operator (spectral) norm with respect to the algebra's inner product.
    pub fn norm(&self) -> f64 {
        self.alg.operator_norm(&self.matrix)
    }

    fn wrap(&self, matrix: DenseMatrix) -> OperatorMatrix {
        OperatorMatrix {
            alg: self.alg.clone(),
            matrix,
        }
    }
}

macro_rules! operator_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&OperatorMatrix> for &OperatorMatrix {
            type Output = OperatorMatrix;
            fn $method(self, rhs: &OperatorMatrix) -> OperatorMatrix {
                assert!(self.alg.same_as(&rhs.alg), "operator algebra mismatch");
                self.wrap(&self.matrix $op &rhs.matrix)
            }
        }
        impl $tr<OperatorMatrix> for OperatorMatrix {
            type Output = OperatorMatrix;
            fn $method(self, rhs: OperatorMatrix) -> OperatorMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}

operator_binop!(Add, add, +);
operator_binop!(Sub, sub, -);
operator_binop!(Mul, mul, *);

impl Mul<f64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, s: f64) -> OperatorMatrix {
        self.wrap(&self.matrix * s)
    }
}

impl Mul<f64> for OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, s: f64) -> OperatorMatrix {
        &self * s
    }
}

/// `x * y`, computed through the structure tensor.
pub fn jordan_mul(x: &Element, y: &Element) -> Result<Element> {
    x.same_algebra(y)?;
    Ok(Element::from_vector(&x.alg, x.alg.product(&x.coords, &y.coords)))
}

/// The product operator `T_a : b ↦ a * b`.
pub fn t_operator(a: &Element) -> OperatorMatrix {
    OperatorMatrix {
        alg: a.alg.clone(),
        matrix: a.alg.t_matrix(&a.coords),
    }
}

/// The quadratic operator `Q_a = 2 T_a² − T_{a²}`.
pub fn q_operator(a: &Element) -> OperatorMatrix {
    let t = a.alg.t_matrix(&a.coords);
    let t_sq = a.alg.t_matrix(&(&t * &a.coords));
    OperatorMatrix {
        alg: a.alg.clone(),
        matrix: (&t * &t) * 2.0 - t_sq,
    }
}

/// `[S, T] = ST − TS`
pub fn commutator(s: &OperatorMatrix, t: &OperatorMatrix) -> Result<OperatorMatrix> {
    ensure_same(&s.alg, &t.alg)?;
    Ok(s.wrap(&s.matrix * &t.matrix - &t.matrix * &s.matrix))
}

/// `a^n` by repeated multiplication, with `a^0 = 1`.
pub fn power(a: &Element, n: u32) -> Element {
    let mut acc = Element::unit(&a.alg);
    if n == 0 {
        return acc;
    }
    let t = a.alg.t_matrix(&a.coords);
    acc.coords = a.coords.clone();
    for _ in 1..n {
        acc.coords = &t * &acc.coords;
    }
    acc
}

/// A residual norm together with the scale it should be judged against.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Residual {
    pub value: f64,
    pub scale: f64,
}

impl Residual {
    pub fn new(value: f64, scale: f64) -> Self {
        Self { value, scale }
    }

    /// `value / scale`
    pub fn ratio(&self) -> f64 {
        self.value / self.scale
    }

    pub fn within(&self, tol: f64) -> bool {
        self.value <= tol * self.scale
    }
}

/// Operator-norm residuals of the identities every Jordan algebra satisfies.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct IdentityResiduals {
    /// `[T_a, T_{a²}]`
    pub jordan: Residual,
    /// `[T_b, T_{a²}] − 2[T_{a*b}, T_a]`
    pub linearized: Residual,
    /// `[T_a, T_{b*c}] + [T_b, T_{c*a}] + [T_c, T_{a*b}]`
    pub trilinear: Residual,
    /// `T_{a*(b*c)} − (T_a T_{b*c} + T_b T_{c*a} + T_c T_{a*b} − T_b T_a T_c − T_c T_a T_b)`
    pub expansion: Residual,
    /// `Q_{Q_a b} − Q_a Q_b Q_a`
    pub fundamental: Residual,
}

impl IdentityResiduals {
    pub fn entries(&self) -> [(&'static str, Residual); 5] {
        [
            ("jordan", self.jordan),
            ("linearized", self.linearized),
            ("trilinear", self.trilinear),
            ("expansion", self.expansion),
            ("fundamental", self.fundamental),
        ]
    }

    pub fn worst_ratio(&self) -> f64 {
        self.entries().iter().map(|(_, r)| r.ratio()).fold(0.0, f64::max)
    }

    pub fn all_within(&self, tol: f64) -> bool {
        self.entries().iter().all(|(_, r)| r.within(tol))
    }
}

/// Evaluates the linearized Jordan equations, the `T_{a*(b*c)}` expansion
/// and the fundamental identity at `(a, b, c)`.
///
/// Each residual's scale is `Π (1 + ‖x‖)^k` over the arguments, with `k` the
/// polynomial degree of the identity in that argument.
pub fn identity_residuals(a: &Element, b: &Element, c: &Element) -> Result<IdentityResiduals> {
    a.same_algebra(b)?;
    a.same_algebra(c)?;
    let alg = &a.alg;
    let t = |x: &Vector| alg.t_matrix(x);
    let mul = |x: &Vector, y: &Vector| alg.product(x, y);
    let comm = |s: &DenseMatrix, u: &DenseMatrix| s * u - u * s;
    let opnorm = |m: &DenseMatrix| alg.operator_norm(m);

    let (av, bv, cv) = (&a.coords, &b.coords, &c.coords);
    let (na, nb, nc) = (1.0 + a.norm(), 1.0 + b.norm(), 1.0 + c.norm());

    let ta = t(av);
    let tb = t(bv);
    let tc = t(cv);
    let a2 = mul(av, av);
    let ab = mul(av, bv);
    let bc = mul(bv, cv);
    let ca = mul(cv, av);
    let ta2 = t(&a2);
    let tab = t(&ab);
    let tbc = t(&bc);
    let tca = t(&ca);

    let jordan = Residual::new(opnorm(&comm(&ta, &ta2)), na.powi(3));
    let linearized = Residual::new(
        opnorm(&(comm(&tb, &ta2) - comm(&tab, &ta) * 2.0)),
        na.powi(2) * nb,
    );
    let trilinear = Residual::new(
        opnorm(&(comm(&ta, &tbc) + comm(&tb, &tca) + comm(&tc, &tab))),
        na * nb * nc,
    );
    let a_bc = mul(av, &bc);
    let expanded = &ta * &tbc + &tb * &tca + &tc * &tab - &tb * &ta * &tc - &tc * &ta * &tb;
    let expansion = Residual::new(opnorm(&(t(&a_bc) - expanded)), na * nb * nc);

    let qa = q_operator(a).matrix;
    let qb = q_operator(b).matrix;
    let qab = &qa * bv;
    let q_qab = q_operator(&Element::from_vector(alg, qab)).matrix;
    let fundamental = Residual::new(opnorm(&(q_qab - &qa * &qb * &qa)), na.powi(4) * nb.powi(2));

    Ok(IdentityResiduals {
        jordan,
        linearized,
        trilinear,
        expansion,
        fundamental,
    })
}
