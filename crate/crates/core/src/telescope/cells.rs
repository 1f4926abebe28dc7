use std::fmt;

use serde::{Deserialize, Serialize};

use crate::freegroup::{Generator, ReducedWord};
use crate::orbits::Config;

use super::{GroupLaw, TelescopeError};

/// The coset `b B_level` in the tree `T_w`, in the local coordinates of `T_w`.
/// `coset` keeps only the entries of `b` at words longer than `level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeVertex {
    pub w: ReducedWord,
    pub level: usize,
    pub coset: Config,
}

/// Drops the entries of `b` inside `ball(e, m)`: the canonical representative of `b B_m`.
pub fn erase(b: &Config, m: usize) -> Config {
    Config::from_entries(b.rank(), b.entries().iter().filter(|(w, _)| w.len() > m).cloned())
        .expect("subset of a valid configuration")
}

/// Pointwise product `(f b)(x) = f(x) b(x)` in `F^(F_n)`.
pub fn pointwise(law: &GroupLaw, f: &Config, b: &Config) -> Config {
    let mut out = Vec::with_capacity(f.support_size() + b.support_size());
    let (mut i, mut j) = (f.entries().iter().peekable(), b.entries().iter().peekable());
    loop {
        match (i.peek(), j.peek()) {
            (Some((x, p)), Some((y, q))) => match x.cmp(y) {
                std::cmp::Ordering::Less => {
                    out.push((x.clone(), *p));
                    i.next();
                }
                std::cmp::Ordering::Greater => {
                    out.push((y.clone(), *q));
                    j.next();
                }
                std::cmp::Ordering::Equal => {
                    out.push((x.clone(), law.mul(*p, *q)));
                    i.next();
                    j.next();
                }
            },
            (Some((x, p)), None) => {
                out.push((x.clone(), *p));
                i.next();
            }
            (None, Some((y, q))) => {
                out.push((y.clone(), *q));
                j.next();
            }
            (None, None) => break,
        }
    }
    Config::from_entries(f.rank(), out).expect("merged supports are distinct")
}

impl TreeVertex {
    pub fn new(w: ReducedWord, level: usize, b: &Config) -> TreeVertex {
        TreeVertex { w, level, coset: erase(b, level) }
    }

    /// The neighbour one level up, `b B_(m+1)`.
    pub fn parent(&self) -> TreeVertex {
        TreeVertex::new(self.w.clone(), self.level + 1, &self.coset)
    }

    /// Global coordinates `w . b`.
    pub fn global(&self) -> Config {
        self.coset.translate(&self.w)
    }

    /// `theta(f)`: left multiplication by `w^-1 . f` in local coordinates.
    pub fn theta(&self, law: &GroupLaw, f: &Config) -> TreeVertex {
        let local = f.translate(&self.w.inverse());
        TreeVertex::new(self.w.clone(), self.level, &pointwise(law, &local, &self.coset))
    }

    /// `eta(s)`: moves the vertex to the tree over `s w`; the coset is unchanged.
    pub fn eta(&self, s: Generator) -> TreeVertex {
        TreeVertex { w: self.w.gen_mul(s), level: self.level, coset: self.coset.clone() }
    }
}

/// Gluing map `T_w -> T_(w s)`: `b B_m -> (s^-1 . b) B_(m+1)`.
pub fn glue_map_phi(v: &TreeVertex, step: Generator, levels: usize) -> Result<TreeVertex, TelescopeError> {
    if v.level >= levels {
        return Err(TelescopeError::LevelOverflow { level: v.level, levels });
    }
    let s = ReducedWord::generator(v.w.rank(), step).map_err(TelescopeError::Word)?;
    Ok(TreeVertex::new(v.w.mul_gen(step), v.level + 1, &v.coset.translate(&s.inverse())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellKind {
    TreeVertex,
    TreeEdge,
    VerticalEdge,
    Square,
}

impl CellKind {
    pub fn dim(self) -> usize {
        match self {
            CellKind::TreeVertex => 0,
            CellKind::TreeEdge | CellKind::VerticalEdge => 1,
            CellKind::Square => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CellKind::TreeVertex => "tree-vertex",
            CellKind::TreeEdge => "tree-edge",
            CellKind::VerticalEdge => "vertical-edge",
            CellKind::Square => "square",
        }
    }
}

/// A cell of the telescope. Tree edges are named by their lower endpoint;
/// cylinder cells by the tree cell at the near end and the step `s` of the
/// Cayley edge `[w, w s]` they run along.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Vertex(TreeVertex),
    TreeEdge(TreeVertex),
    Vertical { at: TreeVertex, step: Generator },
    Square { at: TreeVertex, step: Generator },
}

impl Cell {
    pub fn kind(&self) -> CellKind {
        match self {
            Cell::Vertex(_) => CellKind::TreeVertex,
            Cell::TreeEdge(_) => CellKind::TreeEdge,
            Cell::Vertical { .. } => CellKind::VerticalEdge,
            Cell::Square { .. } => CellKind::Square,
        }
    }

    pub fn dim(&self) -> usize {
        self.kind().dim()
    }

    pub fn vertex(&self) -> &TreeVertex {
        match self {
            Cell::Vertex(v) | Cell::TreeEdge(v) => v,
            Cell::Vertical { at, .. } | Cell::Square { at, .. } => at,
        }
    }

    pub fn step(&self) -> Option<Generator> {
        match self {
            Cell::Vertical { step, .. } | Cell::Square { step, .. } => Some(*step),
            _ => None,
        }
    }

    /// The Cayley vertex the cell hangs over (the near end for cylinder cells).
    pub fn anchor(&self) -> &ReducedWord {
        &self.vertex().w
    }

    pub fn with_vertex(&self, v: TreeVertex) -> Cell {
        match self {
            Cell::Vertex(_) => Cell::Vertex(v),
            Cell::TreeEdge(_) => Cell::TreeEdge(v),
            Cell::Vertical { step, .. } => Cell::Vertical { at: v, step: *step },
            Cell::Square { step, .. } => Cell::Square { at: v, step: *step },
        }
    }

    /// Signed faces. `phi` images are computed, not looked up.
    pub fn boundary(&self, levels: usize) -> Result<Vec<(Cell, i64)>, TelescopeError> {
        Ok(match self {
            Cell::Vertex(_) => Vec::new(),
            Cell::TreeEdge(v) => vec![(Cell::Vertex(v.parent()), 1), (Cell::Vertex(v.clone()), -1)],
            Cell::Vertical { at, step } => {
                vec![(Cell::Vertex(glue_map_phi(at, *step, levels)?), 1), (Cell::Vertex(at.clone()), -1)]
            }
            Cell::Square { at, step } => vec![
                (Cell::TreeEdge(at.clone()), 1),
                (Cell::Vertical { at: at.parent(), step: *step }, 1),
                (Cell::TreeEdge(glue_map_phi(at, *step, levels)?), -1),
                (Cell::Vertical { at: at.clone(), step: *step }, -1),
            ],
        })
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{}@{}{:?}", self.w, self.level, self.coset)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Vertex(v) => write!(f, "{v}"),
            Cell::TreeEdge(v) => write!(f, "{v}--up"),
            Cell::Vertical { at, step } => write!(f, "{at} x [{}, {}]", at.w, at.w.mul_gen(*step)),
            Cell::Square { at, step } => write!(f, "({at}--up) x [{}, {}]", at.w, at.w.mul_gen(*step)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;

    fn w(s: &str) -> ReducedWord {
        parse_word(s, 2).unwrap()
    }

    fn b(items: &[(&str, u16)]) -> Config {
        Config::from_entries(2, items.iter().map(|(s, l)| (w(s), *l))).unwrap()
    }

    #[test]
    fn phi_examples() {
        let v = TreeVertex::new(w("a2"), 1, &Config::basepoint(2));
        let image = glue_map_phi(&v, Generator::pos(1), 3).unwrap();
        assert_eq!(image, TreeVertex::new(w("a2*a1"), 2, &Config::basepoint(2)));
        assert!(glue_map_phi(&TreeVertex::new(w("e"), 3, &Config::basepoint(2)), Generator::pos(1), 3).is_err());
        // cosets that differ inside ball(m + 1) after the shift share an image
        let x = TreeVertex::new(w("e"), 1, &b(&[("a1*a2", 1)]));
        let y = TreeVertex::new(w("e"), 1, &b(&[("a1*a2", 1), ("a1*a1", 1)]));
        assert_ne!(x, y);
        let (px, py) = (glue_map_phi(&x, Generator::pos(1), 3).unwrap(), glue_map_phi(&y, Generator::pos(1), 3).unwrap());
        assert_eq!(px, py);
    }

    #[test]
    fn erasure_keeps_the_outside() {
        let v = TreeVertex::new(w("e"), 1, &b(&[("e", 1), ("a2", 1), ("a1*a2", 1)]));
        assert_eq!(v.coset, b(&[("a1*a2", 1)]));
        assert!(v.parent().coset.is_basepoint());
    }

    #[test]
    fn theta_uses_local_coordinates() {
        let law = GroupLaw::cyclic(2);
        // f supported at the global word a1*a2; seen from T_a1 that is a2
        let f = b(&[("a1*a2", 1)]);
        let v = TreeVertex::new(w("a1"), 0, &Config::basepoint(2));
        assert_eq!(v.theta(&law, &f).coset, b(&[("a2", 1)]));
        assert_eq!(v.theta(&law, &f).global(), f);
    }

    #[test]
    fn pointwise_product_is_the_group_law() {
        let law = GroupLaw::symmetric3();
        let f = b(&[("e", 1), ("a1", 3)]);
        let g = b(&[("a1", 4), ("a2", 2)]);
        let p = pointwise(&law, &f, &g);
        assert_eq!(p.get(&w("e")), 1);
        assert_eq!(p.get(&w("a1")), law.mul(3, 4));
        assert_eq!(p.get(&w("a2")), 2);
    }
}
