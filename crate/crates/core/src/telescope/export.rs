use serde::{Deserialize, Serialize};

use crate::freegroup::{parse_word, Generator};
use crate::orbits::Config;

use super::cells::{Cell, CellKind, TreeVertex};
use super::{CellComplex, GluingScheme, GroupLaw, TelescopeError};

/// One cell with a global id; ids run through vertices, then edges, then squares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub id: usize,
    pub kind: CellKind,
    pub w: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub step: Option<String>,
    pub level: usize,
    pub coset: String,
    /// `(face id, sign)`
    pub boundary: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub group: String,
    pub rank: u32,
    pub radius: usize,
    pub levels: usize,
    pub support_radius: usize,
    pub scheme: GluingScheme,
    pub cells: Vec<CellRecord>,
}

impl CellComplex {
    fn global_id(&self, c: &Cell) -> usize {
        let offset: usize = self.cells[..c.dim()].iter().map(Vec::len).sum();
        offset + self.id_of(c).expect("cell in complex")
    }

    pub fn to_document(&self) -> ComplexDocument {
        let labels = self.law.labels();
        let cells = self
            .cells
            .iter()
            .flatten()
            .map(|c| {
                let v = c.vertex();
                CellRecord {
                    id: self.global_id(c),
                    kind: c.kind(),
                    w: v.w.to_string(),
                    step: c.step().map(|s| s.to_string()),
                    level: v.level,
                    coset: v.coset.render(&labels),
                    boundary: c
                        .boundary(self.levels)
                        .expect("complex cells have faces")
                        .iter()
                        .map(|(f, s)| (self.global_id(f), *s))
                        .collect(),
                }
            })
            .collect();
        ComplexDocument {
            group: self.group.clone(),
            rank: self.rank,
            radius: self.radius,
            levels: self.levels,
            support_radius: self.support_radius,
            scheme: self.scheme,
            cells,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<CellComplex, TelescopeError> {
        let doc: ComplexDocument = serde_json::from_str(text).map_err(|e| TelescopeError::Parse(e.to_string()))?;
        doc.to_complex()
    }
}

fn parse_step(text: &str, rank: u32) -> Result<Generator, TelescopeError> {
    let w = parse_word(text, rank)?;
    match w.letters() {
        [g] => Ok(*g),
        _ => Err(TelescopeError::Parse(format!("step {text:?} is not a generator"))),
    }
}

impl ComplexDocument {
    /// Rebuilds the complex and checks every recorded boundary against the
    /// recomputed one.
    pub fn to_complex(&self) -> Result<CellComplex, TelescopeError> {
        let law = GroupLaw::by_name(&self.group)?;
        let labels = law.labels();
        let mut cells: [Vec<Cell>; 3] = Default::default();
        for r in &self.cells {
            let v = TreeVertex {
                w: parse_word(&r.w, self.rank)?,
                level: r.level,
                coset: Config::parse(&r.coset, self.rank, &labels)?,
            };
            let step = r.step.as_deref().map(|s| parse_step(s, self.rank)).transpose()?;
            let cell = match (r.kind, step) {
                (CellKind::TreeVertex, None) => Cell::Vertex(v),
                (CellKind::TreeEdge, None) => Cell::TreeEdge(v),
                (CellKind::VerticalEdge, Some(step)) => Cell::Vertical { at: v, step },
                (CellKind::Square, Some(step)) => Cell::Square { at: v, step },
                _ => return Err(TelescopeError::Parse(format!("cell {} has the wrong step data", r.id))),
            };
            cells[cell.dim()].push(cell);
        }
        let meta = (self.group.clone(), law, self.rank, self.radius, self.levels, self.support_radius, self.scheme);
        let cx = CellComplex::assemble(meta, cells)?;
        let rebuilt = cx.to_document();
        let mut recorded = self.cells.clone();
        recorded.sort_by_key(|r| r.id);
        if rebuilt.cells != recorded {
            return Err(TelescopeError::Parse("cell ids or boundaries do not match the cells".into()));
        }
        Ok(cx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::FiniteGroupSpec;
    use crate::telescope::build_telescope;

    #[test]
    fn json_round_trip() {
        let spec = FiniteGroupSpec::builtin("Z3").unwrap();
        let cx = build_telescope(&spec, 1, 1, 3, GluingScheme::Positive).unwrap();
        let text = cx.to_json();
        let back = CellComplex::from_json(&text).unwrap();
        assert_eq!(back, cx);
        assert_eq!(back.to_json(), text);
        let mut doc = cx.to_document();
        let edge = doc.cells.iter().position(|r| r.kind == CellKind::TreeEdge).unwrap();
        doc.cells[edge].boundary.clear();
        assert!(matches!(doc.to_complex(), Err(TelescopeError::Parse(_))));
    }

    #[test]
    fn record_shape() {
        let spec = FiniteGroupSpec::builtin("Z2").unwrap();
        let cx = build_telescope(&spec, 1, 1, 3, GluingScheme::Positive).unwrap();
        let doc = cx.to_document();
        let edge = doc.cells.iter().find(|r| r.kind == CellKind::VerticalEdge).unwrap();
        assert_eq!(edge.step.as_deref(), Some("a1"));
        assert_eq!(edge.boundary.len(), 2);
        assert!(edge.boundary.iter().all(|(id, _)| doc.cells[*id].kind == CellKind::TreeVertex));
        let json = serde_json::to_value(&doc).unwrap();
        assert_eq!(json["cells"][0]["kind"], "tree-vertex");
    }
}
