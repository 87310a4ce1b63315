//! Browser bindings: spectral decomposition, the commutation report for a
//! pair, and the sequential product. The `ops` functions are plain Rust so
//! they can be tested natively; the exported wrappers only convert errors.

use wasm_bindgen::prelude::*;

pub mod ops {
    use std::sync::Arc;

    use jordanlab::algebra::{Algebra, Element};
    use jordanlab::commutation::{q_commutation_panel, theorem_report};
    use jordanlab::families::Family;
    use jordanlab::sea::{seq_product, Effect};
    use jordanlab::spectral::spectral_decompose;

    pub type OpResult<T> = Result<T, String>;

    fn algebra(spec: &str) -> OpResult<Arc<Algebra>> {
        let family: Family = spec.parse().map_err(|e| format!("{e}"))?;
        family.build().map_err(|e| format!("{e}"))
    }

    fn element(alg: &Arc<Algebra>, coords: &[f64]) -> OpResult<Element> {
        Element::new(alg, coords.to_vec()).map_err(|e| format!("{e}"))
    }

    pub fn basis_labels(spec: &str) -> OpResult<Vec<String>> {
        Ok(algebra(spec)?.basis_labels().to_vec())
    }

    pub struct Spectrum {
        pub eigenvalues: Vec<f64>,
        /// Idempotent coordinates, one row per eigenvalue.
        pub idempotents: Vec<Vec<f64>>,
    }

    pub fn spectrum(spec: &str, coords: &[f64]) -> OpResult<Spectrum> {
        let alg = algebra(spec)?;
        let dec = spectral_decompose(&element(&alg, coords)?).map_err(|e| format!("{e}"))?;
        Ok(Spectrum {
            eigenvalues: dec.eigenvalues.clone(),
            idempotents: dec.idempotents.iter().map(|p| p.to_vec()).collect(),
        })
    }

    pub struct PairReport {
        /// Conditions a) to d) of the report: `a ⌣ b`, associative generated
        /// subalgebra, mutual commutation inside it, squares commute.
        pub conditions: [bool; 4],
        pub positive_case: bool,
        pub q_identity: bool,
        pub qq_commute: bool,
        pub consistent: bool,
        pub generated_dim: usize,
        pub residuals: Vec<(String, f64)>,
    }

    pub fn compare(spec: &str, a: &[f64], b: &[f64], tol: f64) -> OpResult<PairReport> {
        let alg = algebra(spec)?;
        let (x, y) = (element(&alg, a)?, element(&alg, b)?);
        let r = theorem_report(&x, &y, tol).map_err(|e| format!("{e}"))?;
        let panel = q_commutation_panel(&x, &y, tol).map_err(|e| format!("{e}"))?;
        let mut residuals: Vec<(String, f64)> = r.residuals.iter().map(|n| (n.name.to_string(), n.ratio)).collect();
        residuals.extend(
            panel
                .residuals
                .iter()
                .filter(|n| n.name == "qq_commute" || n.name == "q_cross")
                .map(|n| (n.name.to_string(), n.ratio)),
        );
        Ok(PairReport {
            conditions: [r.op_commute, r.assoc, r.assoc_mutual, r.squares_commute],
            positive_case: r.positivity_case.applicable,
            q_identity: panel.q_cross_identity,
            qq_commute: panel.qq_commute,
            consistent: r.verdict == jordanlab::commutation::Verdict::Consistent,
            generated_dim: r.generated_dim,
            residuals,
        })
    }

    pub fn sequential(spec: &str, a: &[f64], b: &[f64]) -> OpResult<Vec<f64>> {
        let alg = algebra(spec)?;
        let ea = Effect::new(element(&alg, a)?).map_err(|e| format!("a: {e}"))?;
        let eb = Effect::new(element(&alg, b)?).map_err(|e| format!("b: {e}"))?;
        let p = seq_product(&ea, &eb).map_err(|e| format!("{e}"))?;
        Ok(p.element().to_vec())
    }
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen(js_name = basisLabels)]
pub fn basis_labels(spec: &str) -> Result<Vec<String>, JsError> {
    ops::basis_labels(spec).map_err(js)
}

#[wasm_bindgen]
pub struct SpectrumView(ops::Spectrum);

#[wasm_bindgen]
impl SpectrumView {
    #[wasm_bindgen(getter)]
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues.clone()
    }

    pub fn idempotent(&self, i: usize) -> Vec<f64> {
        self.0.idempotents.get(i).cloned().unwrap_or_default()
    }
}

#[wasm_bindgen]
pub fn spectrum(spec: &str, coords: &[f64]) -> Result<SpectrumView, JsError> {
    ops::spectrum(spec, coords).map(SpectrumView).map_err(js)
}

#[wasm_bindgen]
pub struct PairView(ops::PairReport);

#[wasm_bindgen]
impl PairView {
    /// Conditions a) to d) as booleans.
    #[wasm_bindgen(getter)]
    pub fn conditions(&self) -> Vec<u8> {
        self.0.conditions.iter().map(|&c| c as u8).collect()
    }

    #[wasm_bindgen(getter, js_name = positiveCase)]
    pub fn positive_case(&self) -> bool {
        self.0.positive_case
    }

    #[wasm_bindgen(getter, js_name = qIdentity)]
    pub fn q_identity(&self) -> bool {
        self.0.q_identity
    }

    #[wasm_bindgen(getter, js_name = qqCommute)]
    pub fn qq_commute(&self) -> bool {
        self.0.qq_commute
    }

    #[wasm_bindgen(getter)]
    pub fn consistent(&self) -> bool {
        self.0.consistent
    }

    #[wasm_bindgen(getter, js_name = generatedDim)]
    pub fn generated_dim(&self) -> usize {
        self.0.generated_dim
    }

    #[wasm_bindgen(getter, js_name = residualNames)]
    pub fn residual_names(&self) -> Vec<String> {
        self.0.residuals.iter().map(|r| r.0.clone()).collect()
    }

    #[wasm_bindgen(getter, js_name = residualRatios)]
    pub fn residual_ratios(&self) -> Vec<f64> {
        self.0.residuals.iter().map(|r| r.1).collect()
    }
}

#[wasm_bindgen]
pub fn compare(spec: &str, a: &[f64], b: &[f64], tol: f64) -> Result<PairView, JsError> {
    ops::compare(spec, a, b, tol).map(PairView).map_err(js)
}

#[wasm_bindgen]
pub fn sequential(spec: &str, a: &[f64], b: &[f64]) -> Result<Vec<f64>, JsError> {
    ops::sequential(spec, a, b).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::ops;

    fn close(x: &[f64], y: &[f64]) -> bool {
        x.len() == y.len() && x.iter().zip(y).all(|(a, b)| (a - b).abs() < 1e-12)
    }

    #[test]
    fn labels() {
        assert_eq!(ops::basis_labels("herm_c:2").unwrap(), ["E00", "E11", "R01", "I01"]);
        assert!(ops::basis_labels("herm_c:0").is_err());
    }

    #[test]
    fn spectrum_of_sigma_x() {
        let s = ops::spectrum("herm_c:2", &[0.0, 0.0, 1.0, 0.0]).unwrap();
        assert!(close(&s.eigenvalues, &[-1.0, 1.0]));
        assert!(close(&s.idempotents[1], &[0.5, 0.5, 0.5, 0.0]));
        assert!(ops::spectrum("herm_c:2", &[1.0]).is_err());
    }

    #[test]
    fn pauli_pair() {
        let r = ops::compare("herm_c:2", &[0.0, 0.0, 1.0, 0.0], &[1.0, -1.0, 0.0, 0.0], 1e-8).unwrap();
        assert_eq!(r.conditions, [false; 4]);
        assert!(r.consistent && r.qq_commute && !r.positive_case);
        let r = ops::compare("herm_c:2", &[1.0, 2.0, 0.0, 0.0], &[3.0, -1.0, 0.0, 0.0], 1e-8).unwrap();
        assert_eq!(r.conditions, [true; 4]);
        assert!(r.positive_case && r.q_identity);
    }

    #[test]
    fn sequential_product() {
        let p = ops::sequential("herm_c:2", &[0.5, 0.5, 0.5, 0.0], &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(close(&p, &[0.25, 0.25, 0.25, 0.0]));
        let err = ops::sequential("herm_c:2", &[1.0, -1.0, 0.0, 0.0], &[1.0, 0.0, 0.0, 0.0]).unwrap_err();
        assert!(err.starts_with("a:"));
    }

    #[test]
    fn exported_wrappers_succeed_natively() {
        let s = super::spectrum("spin:3", &[1.0, 0.0, 2.0]).unwrap();
        assert!(close(&s.eigenvalues(), &[-1.0, 3.0]));
        let v = super::sequential("sym_r:2", &[1.0, 1.0, 0.0], &[0.3, 0.6, 0.1]).unwrap();
        assert!(close(&v, &[0.3, 0.6, 0.1]));
    }
}
