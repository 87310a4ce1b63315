//! Standard Euclidean Jordan algebra families and their ambient matrix
//! representations.
//!
//! Canonical basis of the Hermitian families (`n×n` matrices over a
//! composition algebra `K` of dimension `d`):
//!
//! * `E{ii}`: diagonal matrix units, `i = 0..n`;
//! * for each imaginary-unit index `u = 0..d` (real part first) and each
//!   pair `i < j` in row-major order, the matrix `e_u E_ij + ē_u E_ji`.
//!
//! Labels use `R` for real parts, `I`, `J`, `K` for complex/quaternion
//! units and `o1..o7` for octonion units, e.g. `R01`, `I01`, `o3_12`.
//! The inner product is the trace form `⟨x, y⟩ = Re tr(x ∘ y)`.
//!
//! `spin:N` uses coordinates `(s, u_1, …, u_{N−1})` with
//! `(s,u)*(t,v) = (st + ⟨u,v⟩, sv + tu)` and `⟨(s,u),(t,v)⟩ = 2(st + ⟨u,v⟩)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{ensure_same, Algebra, Element, Residual};
use crate::composition::CompositionAlgebra;
use crate::error::{Error, Result};
use crate::kernel::{self, DenseMatrix, Vector};

/// One of the standard families, as named by a family spec string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    SymReal(usize),
    HermComplex(usize),
    HermQuat(usize),
    Spin(usize),
    Albert,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::SymReal(n) => write!(f, "sym_r:{n}"),
            Family::HermComplex(n) => write!(f, "herm_c:{n}"),
            Family::HermQuat(n) => write!(f, "herm_q:{n}"),
            Family::Spin(n) => write!(f, "spin:{n}"),
            Family::Albert => write!(f, "albert"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadFamilySpec(s.to_string());
        let s = s.trim();
        if s == "albert" {
            return Ok(Family::Albert);
        }
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let family = match kind.trim() {
            "sym_r" => Family::SymReal(n),
            "herm_c" => Family::HermComplex(n),
            "herm_q" => Family::HermQuat(n),
            "spin" => Family::Spin(n),
            _ => return Err(bad()),
        };
        let min = if matches!(family, Family::Spin(_)) { 2 } else { 1 };
        // keep descriptors within desk scale
        if n < min || n > 12 {
            return Err(bad());
        }
        Ok(family)
    }
}

impl Family {
    pub fn build(self) -> Result<Arc<Algebra>> {
        match self {
            Family::SymReal(n) => sym_real(n),
            Family::HermComplex(n) => herm_complex(n),
            Family::HermQuat(n) => herm_quat(n),
            Family::Spin(n) => spin(n),
            Family::Albert => albert(),
        }
    }

    /// Descriptor plus ambient representation, for the special matrix families.
    pub fn build_with_ambient(self) -> Result<(Arc<Algebra>, Option<AmbientRep>)> {
        let field = match self {
            Family::SymReal(_) => CompositionAlgebra::Real,
            Family::HermComplex(_) => CompositionAlgebra::Complex,
            Family::HermQuat(_) => CompositionAlgebra::Quaternion,
            _ => return Ok((self.build()?, None)),
        };
        let alg = self.build()?;
        let n = self.size();
        let rep = AmbientRep::new(&alg, field, n)?;
        Ok((alg, Some(rep)))
    }

    /// Matrix size for the Hermitian families, vector length for spin factors.
    pub fn size(self) -> usize {
        match self {
            Family::SymReal(n) | Family::HermComplex(n) | Family::HermQuat(n) | Family::Spin(n) => n,
            Family::Albert => 3,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Family::SymReal(n) => n * (n + 1) / 2,
            Family::HermComplex(n) => n * n,
            Family::HermQuat(n) => n * (2 * n - 1),
            Family::Spin(n) => n,
            Family::Albert => 27,
        }
    }

    pub fn is_matrix_family(self) -> bool {
        !matches!(self, Family::Spin(_))
    }

    /// `ℝ` (any family of size one) and `spin:2 ≅ ℝ ⊕ ℝ`.
    pub fn is_associative(self) -> bool {
        match self {
            Family::Spin(n) => n == 2,
            Family::Albert => false,
            _ => self.size() == 1,
        }
    }
}

/// Layout of the Hermitian coordinate basis.
#[derive(Debug, Clone, Copy)]
struct HermLayout {
    n: usize,
    field: CompositionAlgebra,
}

impl HermLayout {
    fn pairs(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    fn dim(&self) -> usize {
        self.n + self.field.dim() * self.pairs()
    }

    fn pair_list(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::with_capacity(self.pairs());
        for i in 0..self.n {
            for j in i + 1..self.n {
                v.push((i, j));
            }
        }
        v
    }

    fn labels(&self) -> Vec<String> {
        let prefixes: Vec<String> = match self.field {
            CompositionAlgebra::Octonion => std::iter::once("R".to_string())
                .chain((1..8).map(|u| format!("o{u}_")))
                .collect(),
            _ => ["R", "I", "J", "K"].iter().map(|s| s.to_string()).collect(),
        };
        let mut labels: Vec<String> = (0..self.n).map(|i| format!("E{i}{i}")).collect();
        for prefix in prefixes.iter().take(self.field.dim()) {
            for (i, j) in self.pair_list() {
                labels.push(format!("{prefix}{i}{j}"));
            }
        }
        labels
    }

    /// Coordinates → `n×n` matrix of `K`-entries (row-major, each entry length `d`).
    fn to_matrix(&self, coords: &[f64]) -> Vec<Vec<f64>> {
        let (n, d) = (self.n, self.field.dim());
        let mut m = vec![vec![0.0; d]; n * n];
        for i in 0..n {
            m[i * n + i][0] = coords[i];
        }
        let pairs = self.pair_list();
        for u in 0..d {
            for (p, &(i, j)) in pairs.iter().enumerate() {
                m[i * n + j][u] = coords[n + u * pairs.len() + p];
            }
        }
        for &(i, j) in &pairs {
            m[j * n + i] = self.field.conj(&m[i * n + j]);
        }
        m
    }

    /// Hermitian matrix → coordinates (reads the diagonal and upper triangle).
    fn from_matrix(&self, m: &[Vec<f64>]) -> Vec<f64> {
        let (n, d) = (self.n, self.field.dim());
        let pairs = self.pair_list();
        let mut coords = vec![0.0; self.dim()];
        for i in 0..n {
            coords[i] = m[i * n + i][0];
        }
        for u in 0..d {
            for (p, &(i, j)) in pairs.iter().enumerate() {
                coords[n + u * pairs.len() + p] = m[i * n + j][u];
            }
        }
        coords
    }

    fn matmul(&self, x: &[Vec<f64>], y: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let (n, d) = (self.n, self.field.dim());
        let mut z = vec![vec![0.0; d]; n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    let p = self.field.mul(&x[i * n + j], &y[j * n + k]);
                    for (acc, v) in z[i * n + k].iter_mut().zip(p) {
                        *acc += v;
                    }
                }
            }
        }
        z
    }

    /// `(xy + yx)/2` evaluated entrywise with `K`-arithmetic.
    fn jordan(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let (mx, my) = (self.to_matrix(x), self.to_matrix(y));
        let xy = self.matmul(&mx, &my);
        let yx = self.matmul(&my, &mx);
        let sym: Vec<Vec<f64>> = xy
            .iter()
            .zip(&yx)
            .map(|(a, b)| a.iter().zip(b).map(|(p, q)| 0.5 * (p + q)).collect())
            .collect();
        self.from_matrix(&sym)
    }
}

fn hermitian(name: String, n: usize, field: CompositionAlgebra) -> Result<Arc<Algebra>> {
    let layout = HermLayout { n, field };
    let dim = layout.dim();
    let mut structure = vec![0.0; dim * dim * dim];
    for i in 0..dim {
        for j in 0..=i {
            let mut ei = vec![0.0; dim];
            let mut ej = vec![0.0; dim];
            ei[i] = 1.0;
            ej[j] = 1.0;
            let prod = layout.jordan(&ei, &ej);
            for (k, v) in prod.into_iter().enumerate() {
                structure[(i * dim + j) * dim + k] = v;
                structure[(j * dim + i) * dim + k] = v;
            }
        }
    }
    // trace form: Re tr(e_i ∘ e_j) is the sum of the diagonal coordinates
    let gram = DenseMatrix::from_fn(dim, dim, |i, j| {
        (0..n).map(|k| structure[(i * dim + j) * dim + k]).sum()
    });
    let unit = Vector::from_fn(dim, |k, _| if k < n { 1.0 } else { 0.0 });
    Algebra::new(name, layout.labels(), structure, gram, unit)
}

/// Real symmetric `n×n` matrices, dimension `n(n+1)/2`.
pub fn sym_real(n: usize) -> Result<Arc<Algebra>> {
    check_size(n, 1)?;
    hermitian(Family::SymReal(n).to_string(), n, CompositionAlgebra::Real)
}

/// Complex Hermitian `n×n` matrices, dimension `n²`.
pub fn herm_complex(n: usize) -> Result<Arc<Algebra>> {
    check_size(n, 1)?;
    hermitian(Family::HermComplex(n).to_string(), n, CompositionAlgebra::Complex)
}

/// Quaternionic Hermitian `n×n` matrices, dimension `n(2n−1)`.
pub fn herm_quat(n: usize) -> Result<Arc<Algebra>> {
    check_size(n, 1)?;
    hermitian(Family::HermQuat(n).to_string(), n, CompositionAlgebra::Quaternion)
}

/// The 27-dimensional exceptional algebra of octonionic Hermitian 3×3 matrices.
pub fn albert() -> Result<Arc<Algebra>> {
    hermitian(Family::Albert.to_string(), 3, CompositionAlgebra::Octonion)
}

/// Spin factor `ℝ ⊕ ℝ^{n−1}`.
pub fn spin(n: usize) -> Result<Arc<Algebra>> {
    check_size(n, 2)?;
    let mut structure = vec![0.0; n * n * n];
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    for i in 0..n {
        structure[idx(0, i, i)] = 1.0;
        structure[idx(i, 0, i)] = 1.0;
    }
    for i in 1..n {
        structure[idx(i, i, 0)] = 1.0;
    }
    let labels = std::iter::once("s".to_string())
        .chain((1..n).map(|i| format!("u{i}")))
        .collect();
    let gram = DenseMatrix::identity(n, n) * 2.0;
    let mut unit = Vector::zeros(n);
    unit[0] = 1.0;
    Algebra::new(Family::Spin(n).to_string(), labels, structure, gram, unit)
}

fn check_size(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidDescriptor(format!("size {n} below minimum {min}")));
    }
    Ok(())
}

/// Embedding of a special Hermitian family into real matrices.
///
/// A `K`-entry `x` is realified as its left-multiplication matrix `L(x)`
/// (`d×d`), so an `n×n` Hermitian matrix becomes a symmetric `nd×nd` real
/// matrix. The left-multiplication matrices are written out by hand here,
/// independently of the Cayley–Dickson code used for the structure constants.
#[derive(Debug, Clone)]
pub struct AmbientRep {
    alg: Arc<Algebra>,
    field: CompositionAlgebra,
    n: usize,
    images: Vec<DenseMatrix>,
}

fn left_mul_block(field: CompositionAlgebra, x: &[f64]) -> DenseMatrix {
    match field {
        CompositionAlgebra::Real => DenseMatrix::from_element(1, 1, x[0]),
        CompositionAlgebra::Complex => {
            let (a, b) = (x[0], x[1]);
            DenseMatrix::from_row_slice(2, 2, &[a, -b, b, a])
        }
        CompositionAlgebra::Quaternion => {
            let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
            #[rustfmt::skip]
            let m = DenseMatrix::from_row_slice(4, 4, &[
                a, -b, -c, -d,
                b,  a, -d,  c,
                c,  d,  a, -b,
                d, -c,  b,  a,
            ]);
            m
        }
        CompositionAlgebra::Octonion => unreachable!("octonion matrices have no associative ambient"),
    }
}

impl AmbientRep {
    fn new(alg: &Arc<Algebra>, field: CompositionAlgebra, n: usize) -> Result<Self> {
        if !field.is_associative() {
            return Err(Error::InvalidDescriptor("no associative ambient for octonions".into()));
        }
        let layout = HermLayout { n, field };
        let d = field.dim();
        let images = (0..alg.dim())
            .map(|i| {
                let mut e = vec![0.0; alg.dim()];
                e[i] = 1.0;
                let m = layout.to_matrix(&e);
                let mut big = DenseMatrix::zeros(n * d, n * d);
                for r in 0..n {
                    for c in 0..n {
                        big.view_mut((r * d, c * d), (d, d))
                            .copy_from(&left_mul_block(field, &m[r * n + c]));
                    }
                }
                big
            })
            .collect();
        Ok(Self {
            alg: alg.clone(),
            field,
            n,
            images,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// Size of the real ambient matrices.
    pub fn ambient_size(&self) -> usize {
        self.n * self.field.dim()
    }

    pub fn embed(&self, a: &Element) -> Result<DenseMatrix> {
        ensure_same(&self.alg, a.algebra())?;
        let s = self.ambient_size();
        let mut m = DenseMatrix::zeros(s, s);
        for (c, img) in a.coords().iter().zip(&self.images) {
            if *c != 0.0 {
                m += img * *c;
            }
        }
        Ok(m)
    }

    /// Inverse of [`embed`](Self::embed) on realified Hermitian matrices:
    /// reads the first column of each diagonal and upper-triangular block.
    pub fn extract(&self, m: &DenseMatrix) -> Result<Element> {
        let s = self.ambient_size();
        if m.shape() != (s, s) {
            return Err(Error::DimensionMismatch {
                expected: s,
                found: m.nrows(),
            });
        }
        let (n, d) = (self.n, self.field.dim());
        let layout = HermLayout { n, field: self.field };
        let pairs = layout.pair_list();
        let mut coords = vec![0.0; self.alg.dim()];
        for i in 0..n {
            coords[i] = m[(i * d, i * d)];
        }
        for u in 0..d {
            for (p, &(i, j)) in pairs.iter().enumerate() {
                coords[n + u * pairs.len() + p] = m[(i * d + u, j * d)];
            }
        }
        Element::new(&self.alg, coords)
    }
}

fn ambient_scale(x: &DenseMatrix, y: &DenseMatrix) -> f64 {
    (1.0 + kernel::spectral_norm(x)) * (1.0 + kernel::spectral_norm(y))
}

/// Whether `a` and `b` commute as ambient matrices:
/// `‖AB − BA‖ ≤ tol · (1 + ‖A‖)(1 + ‖B‖)` in spectral norm.
pub fn ambient_commutes(rep: &AmbientRep, a: &Element, b: &Element, tol: f64) -> Result<bool> {
    Ok(ambient_commutator(rep, a, b)?.within(tol))
}

/// Spectral norm of the ambient commutator `AB − BA` with its scale.
pub fn ambient_commutator(rep: &AmbientRep, a: &Element, b: &Element) -> Result<Residual> {
    let (ma, mb) = (rep.embed(a)?, rep.embed(b)?);
    let c = &ma * &mb - &mb * &ma;
    Ok(Residual::new(kernel::spectral_norm(&c), ambient_scale(&ma, &mb)))
}

/// Compares `[T_a, T_b] c` (through the structure tensor) with
/// `¼ ((ab − ba)c − c(ab − ba))` (through ambient matrix arithmetic).
pub fn residual_formula_check(
    rep: &AmbientRep,
    a: &Element,
    b: &Element,
    c: &Element,
) -> Result<Residual> {
    a.same_algebra(b)?;
    a.same_algebra(c)?;
    let alg = a.algebra();
    let ta = alg.t_matrix(a.coords());
    let tb = alg.t_matrix(b.coords());
    let lhs = (&ta * &tb - &tb * &ta) * c.coords();

    let (ma, mb, mc) = (rep.embed(a)?, rep.embed(b)?, rep.embed(c)?);
    let k = &ma * &mb - &mb * &ma;
    let rhs = rep.extract(&((&k * &mc - &mc * &k) * 0.25))?;

    let value = alg.norm_of(&(lhs - rhs.coords()));
    let scale = (1.0 + a.norm()) * (1.0 + b.norm()) * (1.0 + c.norm());
    Ok(Residual::new(value, scale))
}

/// Coordinates in `herm_c:2` of the spin(4) basis `(1, σx, σy, σz)`.
///
/// In the canonical basis `(E00, E11, R01, I01)`: `1 = E00 + E11`,
/// `σx = R01`, `σy = −I01`, `σz = E00 − E11`.
pub fn pauli_basis_in_herm_c2() -> [[f64; 4]; 4] {
    [
        [1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [1.0, -1.0, 0.0, 0.0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{identity_residuals, jordan_mul, power, q_operator, t_operator};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn random(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Element {
        let v = (0..alg.dim()).map(|_| StandardNormal.sample(&mut *rng)).collect();
        Element::new(alg, v).unwrap()
    }

    fn hc2() -> (Arc<Algebra>, AmbientRep) {
        let (alg, rep) = Family::HermComplex(2).build_with_ambient().unwrap();
        (alg, rep.unwrap())
    }

    fn sx(alg: &Arc<Algebra>) -> Element {
        Element::new(alg, vec![0.0, 0.0, 1.0, 0.0]).unwrap()
    }

    fn sz(alg: &Arc<Algebra>) -> Element {
        Element::new(alg, vec![1.0, -1.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn family_dimensions() {
        assert_eq!(herm_complex(2).unwrap().dim(), 4);
        assert_eq!(sym_real(2).unwrap().dim(), 3);
        assert_eq!(herm_quat(1).unwrap().dim(), 1);
        assert_eq!(herm_quat(3).unwrap().dim(), 15);
        assert_eq!(sym_real(4).unwrap().dim(), 10);
        assert_eq!(spin(5).unwrap().dim(), 5);
        let alb = albert().unwrap();
        assert_eq!(alb.dim(), 27);
        assert_eq!(alb.unit_coords().as_slice()[..3], [1.0, 1.0, 1.0]);
        assert!(alb.unit_coords().as_slice()[3..].iter().all(|x| *x == 0.0));
        for f in [
            Family::SymReal(3),
            Family::HermComplex(3),
            Family::HermQuat(2),
            Family::Spin(5),
            Family::Albert,
        ] {
            assert_eq!(f.build().unwrap().dim(), f.dim());
        }
    }

    #[test]
    fn herm_q1_is_reals() {
        let alg = herm_quat(1).unwrap();
        assert_eq!(alg.basis_labels(), ["E00"]);
        assert_eq!(alg.structure_constant(0, 0, 0), 1.0);
    }

    #[test]
    fn spec_strings() {
        for s in ["sym_r:3", "herm_c:2", "herm_q:2", "spin:5", "albert"] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
        for s in ["spin:1", "herm_c:0", "foo:2", "herm_c", "herm_c:x", ""] {
            assert!(s.parse::<Family>().is_err(), "{s}");
        }
    }

    #[test]
    fn pauli_products() {
        let (alg, _) = hc2();
        // σx * σz = 0
        let p = jordan_mul(&sx(&alg), &sz(&alg)).unwrap();
        assert!(p.norm() < 1e-15);
        // σz² = 1
        assert_eq!(power(&sz(&alg), 2).to_vec(), Element::unit(&alg).to_vec());
        // T_{σz} σx = 0, T_{σz} 1 = σz
        let t = t_operator(&sz(&alg));
        assert!(t.apply(&sx(&alg)).unwrap().norm() < 1e-15);
        assert_eq!(t.apply(&Element::unit(&alg)).unwrap().to_vec(), sz(&alg).to_vec());
        // Q_{σx} σz = σx σz σx = −σz
        let q = q_operator(&sx(&alg)).apply(&sz(&alg)).unwrap();
        assert!(q.distance(&-sz(&alg)) < 1e-14);
    }

    #[test]
    fn spin_products() {
        let alg = spin(3).unwrap();
        let u = Element::new(&alg, vec![0.0, 2.0, -1.0]).unwrap();
        let p = jordan_mul(&u, &u).unwrap();
        assert_eq!(p.to_vec(), vec![5.0, 0.0, 0.0]);
        let one = Element::unit(&alg);
        assert_eq!(jordan_mul(&one, &u).unwrap().to_vec(), u.to_vec());
    }

    #[test]
    fn spin4_is_herm_c2() {
        let s4 = spin(4).unwrap();
        let h = herm_complex(2).unwrap();
        let basis = pauli_basis_in_herm_c2();
        let p = DenseMatrix::from_fn(4, 4, |r, c| basis[c][r]);
        let p_inv = p.clone().try_inverse().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let x = Element::new(&h, basis[i].to_vec()).unwrap();
                let y = Element::new(&h, basis[j].to_vec()).unwrap();
                let prod = &p_inv * jordan_mul(&x, &y).unwrap().coords();
                for k in 0..4 {
                    assert!(
                        (prod[k] - s4.structure_constant(i, j, k)).abs() < 1e-14,
                        "c[{i}][{j}][{k}]"
                    );
                }
            }
        }
    }

    #[test]
    fn albert_idempotent() {
        let alg = albert().unwrap();
        let e11 = Element::basis(&alg, 0);
        assert!(e11.square().distance(&e11) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (a, b, c) = (random(&alg, &mut rng), random(&alg, &mut rng), random(&alg, &mut rng));
            let r = identity_residuals(&a, &b, &c).unwrap();
            assert!(r.all_within(1e-8), "{r:?}");
        }
    }

    #[test]
    fn ambient_is_special_jordan_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in [Family::SymReal(3), Family::HermComplex(3), Family::HermQuat(2)] {
            let (alg, rep) = f.build_with_ambient().unwrap();
            let rep = rep.unwrap();
            for _ in 0..20 {
                let a = random(&alg, &mut rng);
                let b = random(&alg, &mut rng);
                let (ma, mb) = (rep.embed(&a).unwrap(), rep.embed(&b).unwrap());
                let special = (&ma * &mb + &mb * &ma) * 0.5;
                let via_tensor = rep.embed(&jordan_mul(&a, &b).unwrap()).unwrap();
                assert!((special - via_tensor).norm() < 1e-12 * (1.0 + a.norm() * b.norm()));
                assert!(rep.extract(&ma).unwrap().distance(&a) < 1e-14 * (1.0 + a.norm()));
                // trace form agrees with the ambient trace
                let d = rep.ambient_size() as f64 / f.size() as f64;
                let tr = (&ma * &mb).trace() / d;
                assert!((tr - a.inner(&b).unwrap()).abs() < 1e-12 * (1.0 + a.norm() * b.norm()));
            }
        }
    }

    #[test]
    fn ambient_commutation_examples() {
        let (alg, rep) = hc2();
        let one = Element::unit(&alg);
        let b = Element::new(&alg, vec![0.3, -1.0, 2.0, 0.5]).unwrap();
        assert!(ambient_commutes(&rep, &one, &b, 1e-8).unwrap());
        assert!(!ambient_commutes(&rep, &sx(&alg), &sz(&alg), 1e-8).unwrap());
        let d1 = Element::new(&alg, vec![1.0, 2.0, 0.0, 0.0]).unwrap();
        let d2 = Element::new(&alg, vec![3.0, 4.0, 0.0, 0.0]).unwrap();
        assert!(ambient_commutes(&rep, &d1, &d2, 1e-8).unwrap());
    }

    #[test]
    fn residual_formula_examples() {
        let (alg, rep) = hc2();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = random(&alg, &mut rng);
        let r = residual_formula_check(&rep, &sx(&alg), &sz(&alg), &c).unwrap();
        assert!(r.within(1e-9), "{r:?}");
        let a = random(&alg, &mut rng);
        assert!(residual_formula_check(&rep, &a, &a, &c).unwrap().value < 1e-12);
        let d1 = Element::new(&alg, vec![1.0, 2.0, 0.0, 0.0]).unwrap();
        let d2 = Element::new(&alg, vec![3.0, 4.0, 0.0, 0.0]).unwrap();
        assert!(residual_formula_check(&rep, &d1, &d2, &c).unwrap().value < 1e-12);
        // and the commutator really is non-zero for σx, σz
        let ta = t_operator(&sx(&alg));
        let tb = t_operator(&sz(&alg));
        let k = crate::algebra::commutator(&ta, &tb).unwrap();
        assert!(k.norm() > 0.1);
    }
}
