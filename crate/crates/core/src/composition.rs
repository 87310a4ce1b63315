//! Real composition algebras ℝ, ℂ, ℍ, 𝕆 built by Cayley–Dickson doubling.
//!
//! Doubling rule: `(a, b)(c, d) = (ac − d̄b, da + bc̄)`, conjugation
//! `(a, b)‾ = (ā, −b)`. With basis order `1, e1, …, e7` this gives the
//! Hamilton quaternions on `1, e1, e2, e3` (`e1 e2 = e3`).

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionAlgebra {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl CompositionAlgebra {
    pub fn dim(self) -> usize {
        match self {
            Self::Real => 1,
            Self::Complex => 2,
            Self::Quaternion => 4,
            Self::Octonion => 8,
        }
    }

    pub fn is_associative(self) -> bool {
        !matches!(self, Self::Octonion)
    }

    pub fn mul(self, x: &[f64], y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        cd_mul(x, y)
    }

    pub fn conj(self, x: &[f64]) -> Vec<f64> {
        cd_conj(x)
    }

    /// `e_i e_j = sign · e_k`, returned as `(sign, k)`.
    pub fn basis_product(self, i: usize, j: usize) -> (f64, usize) {
        let d = self.dim();
        let mut x = vec![0.0; d];
        let mut y = vec![0.0; d];
        x[i] = 1.0;
        y[j] = 1.0;
        let z = cd_mul(&x, &y);
        let k = z.iter().position(|v| *v != 0.0).expect("basis product is a signed basis unit");
        (z[k], k)
    }

    /// Matrix of left multiplication `y ↦ x y` on coordinates (row-major, `d×d`).
    pub fn left_mul_matrix(self, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        let mut m = vec![0.0; d * d];
        for j in 0..d {
            let mut e = vec![0.0; d];
            e[j] = 1.0;
            let col = cd_mul(x, &e);
            for (k, v) in col.into_iter().enumerate() {
                m[k * d + j] = v;
            }
        }
        m
    }

    pub fn norm_sq(self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }
}

fn cd_conj(x: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = x.iter().map(|v| -v).collect();
    out[0] = x[0];
    out
}

fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let dbar_b = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let b_cbar = cd_mul(b, &cd_conj(c));
    let mut out = Vec::with_capacity(n);
    out.extend(ac.iter().zip(&dbar_b).map(|(p, q)| p - q));
    out.extend(da.iter().zip(&b_cbar).map(|(p, q)| p + q));
    out
}
