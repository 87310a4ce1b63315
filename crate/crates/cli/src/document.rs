//! Line-oriented element files:
//!
//! ```text
//! algebra: herm_c:2
//! coords: 0.5 0.5 0.5 0
//! label: plus
//! ```
//!
//! Numbers are written in Rust's shortest round-trip form, which never needs
//! more than 17 significant digits and reads back to the same `f64`.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use jordanlab::algebra::{Algebra, Element};
use jordanlab::families::Family;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct ElementDocument {
    pub family: Family,
    pub coords: Vec<f64>,
    pub label: Option<String>,
}

impl ElementDocument {
    pub fn new(family: Family, coords: Vec<f64>, label: Option<String>) -> Self {
        Self { family, coords, label }
    }

    pub fn from_element(family: Family, element: &Element, label: Option<String>) -> Self {
        Self::new(family, element.to_vec(), label)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut family = None;
        let mut coords = None;
        let mut label = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| CliError::usage(format!("line {}: expected `key: value`", lineno + 1)))?;
            let value = value.trim();
            match key.trim() {
                // family specs contain a colon themselves, so only the first one splits
                "algebra" => {
                    family = Some(value.parse::<Family>().map_err(CliError::from)?);
                }
                "coords" => {
                    let parsed = value
                        .split_whitespace()
                        .map(|tok| match tok.parse::<f64>() {
                            Ok(x) if x.is_finite() => Ok(x),
                            _ => Err(CliError::usage(format!("line {}: bad number `{tok}`", lineno + 1))),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    coords = Some(parsed);
                }
                "label" => label = Some(value.to_string()),
                other => {
                    return Err(CliError::usage(format!("line {}: unknown key `{other}`", lineno + 1)));
                }
            }
        }
        let family = family.ok_or_else(|| CliError::usage("missing `algebra:` line"))?;
        let coords = coords.ok_or_else(|| CliError::usage("missing `coords:` line"))?;
        if coords.len() != family.dim() {
            return Err(CliError::usage(format!(
                "{family} has dimension {} but {} coordinates were given",
                family.dim(),
                coords.len()
            )));
        }
        Ok(Self { family, coords, label })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("algebra: {}\ncoords:", self.family);
        for x in &self.coords {
            write!(out, " {x:?}").unwrap();
        }
        out.push('\n');
        if let Some(label) = &self.label {
            writeln!(out, "label: {label}").unwrap();
        }
        out
    }

    pub fn element(&self, alg: &Arc<Algebra>) -> Result<Element, CliError> {
        Element::new(alg, self.coords.clone()).map_err(CliError::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let coords = vec![0.1, -1.0 / 3.0, 1e-300, 123456789.123456789, 0.0, -0.0, 2.0f64.sqrt(), 5e-324, 1.0];
        let doc = ElementDocument::new(Family::SymReal(3), coords[..6].to_vec(), Some("x".into()));
        let back = ElementDocument::parse(&doc.to_text()).unwrap();
        assert_eq!(back, doc);
        for x in &coords {
            let d = ElementDocument::new(Family::Spin(2), vec![*x, 1.0], None);
            let back = ElementDocument::parse(&d.to_text()).unwrap();
            assert_eq!(back.coords[0].to_bits(), x.to_bits());
        }
    }

    #[test]
    fn parse_errors() {
        assert!(ElementDocument::parse("algebra: herm_c:2\ncoords: 1 2 3\n").is_err());
        assert!(ElementDocument::parse("algebra: herm_c:2\ncoords: 1 2 3 nan\n").is_err());
        assert!(ElementDocument::parse("algebra: herm_c:2\ncoords: 1 2 3 x\n").is_err());
        assert!(ElementDocument::parse("coords: 1 2 3 4\n").is_err());
        assert!(ElementDocument::parse("algebra: spin:1\ncoords: 1\n").is_err());
        assert!(ElementDocument::parse("algebra: herm_c:2\nwhat: 1\n").is_err());
        let ok = ElementDocument::parse("# comment\nalgebra: herm_c:2\n\ncoords: 1 0 0.5 -2\nlabel: a b\n").unwrap();
        assert_eq!(ok.label.as_deref(), Some("a b"));
        assert_eq!(ok.coords, vec![1.0, 0.0, 0.5, -2.0]);
    }
}
