//! Irreducible-representation data of a finite group `F`: the pointed set of
//! irreps (basepoint = trivial representation), the pointed set of minimal
//! projection classes in `CF` (basepoint = the averaging projection `p_F`), and
//! the finite-group assembly bijection between them.
//!
//! Groups are described by irrep labels and dimensions only. That is all the
//! K-theory computations consume.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupSpecError {
    #[error("Burnside identity violated: sum of squared irrep dimensions is {sum}, group order is {order}")]
    Burnside { sum: u64, order: u64 },
    #[error("expected exactly one trivial irrep, found {0}")]
    TrivialCount(usize),
    #[error("the trivial irrep must have dimension 1, found {0}")]
    TrivialDimension(u32),
    #[error("group order must be at least 2, found {0}")]
    OrderTooSmall(u64),
    #[error("irrep dimensions must be positive ({0} has dimension 0)")]
    ZeroDimension(String),
    #[error("duplicate irrep id {0:?}")]
    DuplicateId(String),
    #[error("unknown built-in group {0:?} (try Z2, Z3, Zm, S3, D4, Q8)")]
    UnknownBuiltin(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("cannot read group document {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed group document: {0}")]
    Parse(String),
}

/// One irreducible representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub id: String,
    pub dim: u32,
    #[serde(default)]
    pub trivial: bool,
}

/// Serialized form of a group document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDocument {
    pub name: String,
    pub order: u64,
    pub irreps: Vec<IrrepLabel>,
}

/// A validated finite group description. The trivial irrep is stored first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupSpec {
    name: String,
    order: u64,
    irreps: Vec<IrrepLabel>,
}

/// Class of a minimal projection `e_pi` in `CF`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinProjLabel {
    pub id: String,
    pub trace: BigRational,
    pub basepoint: bool,
}

/// Which pointed label set a configuration draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `Min F`, minimal projections; the C*-algebra side.
    Analytic,
    /// `F^`, irreducible representations; the K-homology side.
    Topological,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Analytic => "analytic",
            Side::Topological => "topological",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite pointed set of labels; index 0 is the basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet {
    labels: Vec<String>,
}

impl LabelSet {
    /// `labels[0]` becomes the basepoint. Fails on fewer than two labels
    /// (configurations over a trivial group are excluded) or duplicates.
    pub fn new(labels: Vec<String>) -> Result<Self, GroupSpecError> {
        if labels.len() < 2 {
            return Err(GroupSpecError::OrderTooSmall(labels.len() as u64));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(GroupSpecError::DuplicateId(l.clone()));
            }
        }
        Ok(LabelSet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn basepoint(&self) -> &str {
        &self.labels[0]
    }

    pub fn name(&self, index: u16) -> &str {
        &self.labels[index as usize]
    }

    pub fn index_of(&self, id: &str) -> Option<u16> {
        self.labels.iter().position(|l| l == id).map(|i| i as u16)
    }

    pub fn names(&self) -> &[String] {
        &self.labels
    }
}

impl FiniteGroupSpec {
    /// Validates the Burnside identity, the trivial irrep and the order.
    pub fn new(name: &str, order: u64, irreps: Vec<IrrepLabel>) -> Result<Self, GroupSpecError> {
        if order < 2 {
            return Err(GroupSpecError::OrderTooSmall(order));
        }
        let trivial: Vec<&IrrepLabel> = irreps.iter().filter(|i| i.trivial).collect();
        if trivial.len() != 1 {
            return Err(GroupSpecError::TrivialCount(trivial.len()));
        }
        if trivial[0].dim != 1 {
            return Err(GroupSpecError::TrivialDimension(trivial[0].dim));
        }
        for (i, irrep) in irreps.iter().enumerate() {
            if irrep.dim == 0 {
                return Err(GroupSpecError::ZeroDimension(irrep.id.clone()));
            }
            if irreps[..i].iter().any(|o| o.id == irrep.id) {
                return Err(GroupSpecError::DuplicateId(irrep.id.clone()));
            }
        }
        let sum: u64 = irreps.iter().map(|i| u64::from(i.dim).pow(2)).sum();
        if sum != order {
            return Err(GroupSpecError::Burnside { sum, order });
        }
        let mut sorted = irreps;
        sorted.sort_by_key(|i| !i.trivial);
        Ok(FiniteGroupSpec { name: name.to_string(), order, irreps: sorted })
    }

    /// Built-in groups: `Z2`, `Z3`, `Zm` for any `m >= 2`, `S3`, `D4`, `Q8`.
    pub fn builtin(name: &str) -> Result<Self, GroupSpecError> {
        let irr = |id: &str, dim: u32| IrrepLabel { id: id.into(), dim, trivial: id == "triv" };
        match name {
            "Z2" => Self::new("Z2", 2, vec![irr("triv", 1), irr("sgn", 1)]),
            "S3" => Self::new("S3", 6, vec![irr("triv", 1), irr("sgn", 1), irr("std", 2)]),
            "D4" => Self::new(
                "D4",
                8,
                vec![irr("triv", 1), irr("r", 1), irr("s", 1), irr("rs", 1), irr("std", 2)],
            ),
            "Q8" => Self::new(
                "Q8",
                8,
                vec![irr("triv", 1), irr("i", 1), irr("j", 1), irr("k", 1), irr("quat", 2)],
            ),
            _ => match name.strip_prefix('Z').and_then(|m| m.parse::<u32>().ok()) {
                Some(m) if m >= 2 && !name[1..].starts_with('0') => {
                    let irreps = std::iter::once(irr("triv", 1))
                        .chain((1..m).map(|k| irr(&format!("chi{k}"), 1)))
                        .collect();
                    Self::new(name, u64::from(m), irreps)
                }
                _ => Err(GroupSpecError::UnknownBuiltin(name.to_string())),
            },
        }
    }

    /// The built-ins exercised by the test suites.
    pub fn builtins() -> Vec<FiniteGroupSpec> {
        ["Z2", "Z3", "Z4", "S3", "D4", "Q8"]
            .iter()
            .map(|n| Self::builtin(n).expect("built-in group"))
            .collect()
    }

    pub fn from_document(doc: GroupDocument) -> Result<Self, GroupSpecError> {
        Self::new(&doc.name, doc.order, doc.irreps)
    }

    /// Parses a TOML group document.
    pub fn from_toml(text: &str) -> Result<Self, GroupSpecError> {
        let doc: GroupDocument =
            toml::from_str(text).map_err(|e| GroupSpecError::Parse(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn from_json(text: &str) -> Result<Self, GroupSpecError> {
        let doc: GroupDocument =
            serde_json::from_str(text).map_err(|e| GroupSpecError::Parse(e.to_string()))?;
        Self::from_document(doc)
    }

    /// Loads a `.json` or TOML document from disk.
    pub fn from_path(path: &Path) -> Result<Self, GroupSpecError> {
        let text = std::fs::read_to_string(path).map_err(|source| GroupSpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn to_document(&self) -> GroupDocument {
        GroupDocument { name: self.name.clone(), order: self.order, irreps: self.irreps.clone() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn irreps(&self) -> &[IrrepLabel] {
        &self.irreps
    }

    pub fn trivial(&self) -> &IrrepLabel {
        &self.irreps[0]
    }

    pub fn irrep(&self, id: &str) -> Result<&IrrepLabel, GroupSpecError> {
        self.irreps
            .iter()
            .find(|i| i.id == id)
            .ok_or_else(|| GroupSpecError::UnknownLabel(id.to_string()))
    }

    /// `e_pi` labels, in irrep order; the first is `p_F`.
    pub fn min_projections(&self) -> Vec<MinProjLabel> {
        self.irreps.iter().map(|pi| self.projection_of(pi)).collect()
    }

    fn projection_of(&self, pi: &IrrepLabel) -> MinProjLabel {
        MinProjLabel {
            id: format!("e_{}", pi.id),
            trace: BigRational::new(BigInt::from(pi.dim), BigInt::from(self.order)),
            basepoint: pi.trivial,
        }
    }

    pub fn min_projection(&self, id: &str) -> Result<MinProjLabel, GroupSpecError> {
        self.min_projections()
            .into_iter()
            .find(|p| p.id == id)
            .ok_or_else(|| GroupSpecError::UnknownLabel(id.to_string()))
    }

    /// Pointed label set for one side; label indices agree across sides, so
    /// the finite assembly bijection is the identity on indices.
    pub fn labels(&self, side: Side) -> LabelSet {
        let names = match side {
            Side::Topological => self.irreps.iter().map(|i| i.id.clone()).collect(),
            Side::Analytic => self.min_projections().into_iter().map(|p| p.id).collect(),
        };
        LabelSet::new(names).expect("validated group has at least two irreps")
    }

    /// Trace of the minimal projection with the given label index.
    pub fn trace_of_index(&self, index: u16) -> BigRational {
        let dim = self.irreps[index as usize].dim;
        BigRational::new(BigInt::from(dim), BigInt::from(self.order))
    }
}

/// The finite-group assembly map `pi -> e_pi`.
pub fn mu_f(spec: &FiniteGroupSpec, pi: &str) -> Result<MinProjLabel, GroupSpecError> {
    let irrep = spec.irrep(pi)?;
    Ok(spec.projection_of(irrep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn builtin_examples() {
        let z2 = FiniteGroupSpec::builtin("Z2").unwrap();
        assert_eq!(z2.order(), 2);
        let dims: Vec<_> = z2.irreps().iter().map(|i| (i.id.as_str(), i.dim)).collect();
        assert_eq!(dims, vec![("triv", 1), ("sgn", 1)]);

        let s3 = FiniteGroupSpec::builtin("S3").unwrap();
        let dims: Vec<_> = s3.irreps().iter().map(|i| (i.id.as_str(), i.dim)).collect();
        assert_eq!(dims, vec![("triv", 1), ("sgn", 1), ("std", 2)]);

        let z5 = FiniteGroupSpec::builtin("Z5").unwrap();
        assert_eq!(z5.irreps().len(), 5);
        assert!(FiniteGroupSpec::builtin("Z1").is_err());
        assert!(FiniteGroupSpec::builtin("Z05").is_err());
        assert!(FiniteGroupSpec::builtin("A5").is_err());
    }

    #[test]
    fn burnside_violation() {
        let doc = r#"
            name = "bad"
            order = 6
            irreps = [ { id = "triv", dim = 1, trivial = true }, { id = "x", dim = 2 } ]
        "#;
        match FiniteGroupSpec::from_toml(doc) {
            Err(GroupSpecError::Burnside { sum: 5, order: 6 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_irrep_rules() {
        let irr = |id: &str, trivial| IrrepLabel { id: id.into(), dim: 1, trivial };
        assert!(matches!(
            FiniteGroupSpec::new("g", 2, vec![irr("a", false), irr("b", false)]),
            Err(GroupSpecError::TrivialCount(0))
        ));
        assert!(matches!(
            FiniteGroupSpec::new("g", 2, vec![irr("a", true), irr("b", true)]),
            Err(GroupSpecError::TrivialCount(2))
        ));
        assert!(matches!(
            FiniteGroupSpec::new("g", 1, vec![irr("a", true)]),
            Err(GroupSpecError::OrderTooSmall(1))
        ));
    }

    #[test]
    fn trivial_is_stored_first() {
        let irr = |id: &str, trivial| IrrepLabel { id: id.into(), dim: 1, trivial };
        let g = FiniteGroupSpec::new("g", 2, vec![irr("x", false), irr("one", true)]).unwrap();
        assert_eq!(g.trivial().id, "one");
        assert_eq!(g.labels(Side::Topological).basepoint(), "one");
    }

    #[test]
    fn json_documents_load() {
        let doc = r#"{"name":"Z2","order":2,"irreps":[{"id":"triv","dim":1,"trivial":true},{"id":"sgn","dim":1,"trivial":false}]}"#;
        let g = FiniteGroupSpec::from_json(doc).unwrap();
        assert_eq!(g, FiniteGroupSpec::builtin("Z2").unwrap());
    }

    #[test]
    fn mu_f_examples() {
        let z2 = FiniteGroupSpec::builtin("Z2").unwrap();
        let p = mu_f(&z2, "triv").unwrap();
        assert!(p.basepoint);
        assert_eq!(p.trace, q(1, 2));

        let s3 = FiniteGroupSpec::builtin("S3").unwrap();
        assert_eq!(mu_f(&s3, "std").unwrap().trace, q(1, 3));
        let sgn = mu_f(&s3, "sgn").unwrap();
        assert!(!sgn.basepoint);
        assert_eq!(sgn.trace, q(1, 6));
        assert!(mu_f(&s3, "nope").is_err());
    }

    #[test]
    fn mu_f_is_a_pointed_bijection() {
        for g in FiniteGroupSpec::builtins() {
            let images: Vec<MinProjLabel> =
                g.irreps().iter().map(|pi| mu_f(&g, &pi.id).unwrap()).collect();
            assert_eq!(images.iter().filter(|p| p.basepoint).count(), 1);
            assert!(images[0].basepoint);
            for (pi, p) in g.irreps().iter().zip(&images) {
                assert_eq!(&p.trace * BigRational::from_integer(g.order().into()), q(pi.dim as i64, 1));
            }
            let mut ids: Vec<_> = images.iter().map(|p| p.id.clone()).collect();
            ids.dedup();
            assert_eq!(ids.len(), g.irreps().len());
            // Burnside in trace coordinates: sum (trace * |F|)^2 = |F|.
            let order = BigRational::from_integer(g.order().into());
            let total: BigRational =
                images.iter().map(|p| (&p.trace * &order) * (&p.trace * &order)).sum();
            assert_eq!(total, order);
        }
    }

    #[test]
    fn label_sets_share_indices() {
        let s3 = FiniteGroupSpec::builtin("S3").unwrap();
        let top = s3.labels(Side::Topological);
        let ana = s3.labels(Side::Analytic);
        for (i, pi) in top.names().iter().enumerate() {
            assert_eq!(ana.names()[i], mu_f(&s3, pi).unwrap().id);
        }
        assert!(LabelSet::new(vec!["only".into()]).is_err());
    }
}
