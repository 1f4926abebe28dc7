use std::collections::{BTreeMap, BTreeSet};

use crate::freegroup::{CayleyEdge, ReducedWord};

use super::{Config, OrbitError};

/// A finite subtree of the Cayley tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportTree {
    pub vertices: BTreeSet<ReducedWord>,
    pub edges: BTreeSet<CayleyEdge>,
}

/// Centre of a finite tree: a vertex, or an edge when the diameter is odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Barycentre {
    Vertex(ReducedWord),
    Edge(CayleyEdge),
}

impl Barycentre {
    pub fn translate(&self, w: &ReducedWord) -> Barycentre {
        match self {
            Barycentre::Vertex(v) => Barycentre::Vertex(w * v),
            Barycentre::Edge(e) => Barycentre::Edge(e.translate(w)),
        }
    }

    /// The word whose inverse moves this centre to `e` or to `[e, a_i]`.
    pub fn anchor(&self) -> &ReducedWord {
        match self {
            Barycentre::Vertex(v) => v,
            Barycentre::Edge(e) => &e.base,
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.anchor().is_identity()
    }
}

impl SupportTree {
    /// Convex hull of a non-empty vertex set: in a tree this is the union of
    /// the geodesics from any one point to all the others.
    pub fn hull<'a>(points: impl IntoIterator<Item = &'a ReducedWord>) -> Option<SupportTree> {
        let mut points = points.into_iter();
        let root = points.next()?.clone();
        let mut vertices = BTreeSet::from([root.clone()]);
        let mut edges = BTreeSet::new();
        for p in points {
            let step = &root.inverse() * p;
            let mut cur = root.clone();
            for &g in step.letters() {
                let next = cur.mul_gen(g);
                edges.insert(CayleyEdge::from_step(&cur, g));
                vertices.insert(next.clone());
                cur = next;
            }
        }
        Some(SupportTree { vertices, edges })
    }

    pub fn translate(&self, w: &ReducedWord) -> SupportTree {
        SupportTree {
            vertices: self.vertices.iter().map(|v| w * v).collect(),
            edges: self.edges.iter().map(|e| e.translate(w)).collect(),
        }
    }

    pub fn is_tree(&self) -> bool {
        if self.vertices.is_empty() || self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        let mut adj: BTreeMap<&ReducedWord, Vec<ReducedWord>> = BTreeMap::new();
        for e in &self.edges {
            let (a, b) = e.endpoints();
            if !self.vertices.contains(&a) || !self.vertices.contains(&b) {
                return false;
            }
            adj.entry(self.vertices.get(&a).unwrap()).or_default().push(b.clone());
            adj.entry(self.vertices.get(&b).unwrap()).or_default().push(a);
        }
        let start = self.vertices.iter().next().unwrap().clone();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for nb in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(nb.clone()) {
                    stack.push(nb.clone());
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

pub fn support_tree(f: &Config) -> Result<SupportTree, OrbitError> {
    SupportTree::hull(f.support()).ok_or(OrbitError::EmptyConfig)
}

/// Strips all current leaves simultaneously until one or two vertices remain.
pub fn barycentre(t: &SupportTree) -> Barycentre {
    assert!(!t.vertices.is_empty(), "barycentre of an empty tree");
    let mut alive: BTreeSet<ReducedWord> = t.vertices.clone();
    let mut edges: BTreeSet<CayleyEdge> = t.edges.clone();
    while alive.len() > 2 {
        let mut degree: BTreeMap<ReducedWord, usize> = alive.iter().map(|v| (v.clone(), 0)).collect();
        for e in &edges {
            let (a, b) = e.endpoints();
            *degree.get_mut(&a).expect("edge endpoint in tree") += 1;
            *degree.get_mut(&b).expect("edge endpoint in tree") += 1;
        }
        let leaves: BTreeSet<ReducedWord> =
            degree.into_iter().filter(|(_, d)| *d <= 1).map(|(v, _)| v).collect();
        alive.retain(|v| !leaves.contains(v));
        edges.retain(|e| {
            let (a, b) = e.endpoints();
            !leaves.contains(&a) && !leaves.contains(&b)
        });
    }
    let mut it = alive.into_iter();
    match (it.next(), it.next()) {
        (Some(v), None) => Barycentre::Vertex(v),
        (Some(a), Some(b)) => {
            Barycentre::Edge(CayleyEdge::between(&a, &b).expect("two surviving vertices are adjacent"))
        }
        _ => unreachable!("non-empty tree"),
    }
}

pub fn is_admissible(t: &SupportTree) -> bool {
    barycentre(t).is_admissible()
}

/// Centre of the hull of the support via a double sweep: the farthest point
/// `y` from any support point, then the farthest `z` from `y`; the centre is
/// the midpoint of the geodesic `y -> z`.
pub fn centre_of_support(f: &Config) -> Option<Barycentre> {
    let mut support = f.support();
    let x0 = support.next()?;
    let far = |from: &ReducedWord| {
        f.support()
            .max_by(|a, b| from.distance(a).cmp(&from.distance(b)).then_with(|| b.cmp(a)))
            .expect("non-empty support")
            .clone()
    };
    let y = far(x0);
    let z = far(&y);
    let path = &y.inverse() * &z;
    let diameter = path.len();
    let walk = |steps: usize| {
        let mut cur = y.clone();
        for &g in &path.letters()[..steps] {
            cur = cur.mul_gen(g);
        }
        cur
    };
    if diameter % 2 == 0 {
        Some(Barycentre::Vertex(walk(diameter / 2)))
    } else {
        let a = walk(diameter / 2);
        let g = path.letters()[diameter / 2];
        Some(Barycentre::Edge(CayleyEdge::from_step(&a, g)))
    }
}

/// Returns `(c, w)` with `f = w . c` and `c` the unique representative of the
/// orbit whose support hull is admissible (or `1_p`).
pub fn canonicalize(f: &Config) -> (Config, ReducedWord) {
    match centre_of_support(f) {
        None => (f.clone(), ReducedWord::identity(f.rank())),
        Some(centre) => {
            let w = centre.anchor().clone();
            (f.translate(&w.inverse()), w)
        }
    }
}

/// Whether `f` is its own canonical form.
pub fn is_canonical(f: &Config) -> bool {
    centre_of_support(f).is_none_or(|c| c.is_admissible())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;

    fn w(s: &str) -> ReducedWord {
        parse_word(s, 2).unwrap()
    }

    fn cfg(items: &[(&str, u16)]) -> Config {
        Config::from_entries(2, items.iter().map(|(s, l)| (w(s), *l))).unwrap()
    }

    #[test]
    fn support_tree_examples() {
        let t = support_tree(&cfg(&[("e", 1)])).unwrap();
        assert_eq!(t.vertices, BTreeSet::from([w("e")]));
        assert!(t.edges.is_empty());

        let t = support_tree(&cfg(&[("a1^-1", 1), ("a1", 1)])).unwrap();
        assert_eq!(t.vertices, BTreeSet::from([w("a1^-1"), w("e"), w("a1")]));
        assert_eq!(t.edges.len(), 2);

        let t = support_tree(&cfg(&[("a1", 1), ("a1*a2", 1)])).unwrap();
        assert_eq!(t.edges, BTreeSet::from([CayleyEdge::new(w("a1"), 2)]));

        assert!(matches!(support_tree(&Config::basepoint(2)), Err(OrbitError::EmptyConfig)));
    }

    #[test]
    fn barycentre_examples() {
        let single = support_tree(&cfg(&[("a1*a2", 1)])).unwrap();
        assert_eq!(barycentre(&single), Barycentre::Vertex(w("a1*a2")));
        let path = support_tree(&cfg(&[("a1^-1", 1), ("a1", 1)])).unwrap();
        assert_eq!(barycentre(&path), Barycentre::Vertex(w("e")));
        let edge = support_tree(&cfg(&[("a1", 1), ("a1*a2", 1)])).unwrap();
        assert_eq!(barycentre(&edge), Barycentre::Edge(CayleyEdge::new(w("a1"), 2)));
        let neg = support_tree(&cfg(&[("e", 1), ("a2^-1", 1)])).unwrap();
        assert_eq!(barycentre(&neg), Barycentre::Edge(CayleyEdge::new(w("a2^-1"), 2)));
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&support_tree(&cfg(&[("e", 1)])).unwrap()));
        assert!(!is_admissible(&support_tree(&cfg(&[("a1", 1)])).unwrap()));
        assert!(is_admissible(&support_tree(&cfg(&[("e", 1), ("a1", 1)])).unwrap()));
        assert!(!is_admissible(&support_tree(&cfg(&[("e", 1), ("a1^-1", 1)])).unwrap()));
    }

    #[test]
    fn canonicalize_examples() {
        let one = Config::basepoint(2);
        assert_eq!(canonicalize(&one), (one.clone(), w("e")));
        assert_eq!(canonicalize(&cfg(&[("a1", 1)])), (cfg(&[("e", 1)]), w("a1")));
        assert_eq!(
            canonicalize(&cfg(&[("a1", 1), ("a1*a2", 2)])),
            (cfg(&[("e", 1), ("a2", 2)]), w("a1"))
        );
        // edge barycentre with a negative step normalizes to [e, a1]
        assert_eq!(
            canonicalize(&cfg(&[("e", 1), ("a1^-1", 2)])),
            (cfg(&[("e", 2), ("a1", 1)]), w("a1^-1"))
        );
    }

    #[test]
    fn hull_is_a_tree_containing_support() {
        let f = cfg(&[("a1*a2", 1), ("a2^-1*a1", 2), ("a1^-1", 1)]);
        let t = support_tree(&f).unwrap();
        assert!(t.is_tree());
        assert!(f.support().all(|x| t.vertices.contains(x)));
        assert!(t.vertices.contains(&w("e")));
        assert_eq!(t.vertices.len(), 6);
    }

    #[test]
    fn double_sweep_agrees_with_leaf_stripping_on_examples() {
        for f in [
            cfg(&[("a1*a2", 1), ("a2^-1*a1", 2), ("a1^-1", 1)]),
            cfg(&[("a1*a1*a1", 1), ("a2", 1)]),
            cfg(&[("a1", 1), ("a2", 1), ("a1^-1", 1), ("a2^-1*a1^-1", 1)]),
        ] {
            let t = support_tree(&f).unwrap();
            assert_eq!(centre_of_support(&f).unwrap(), barycentre(&t), "{f:?}");
        }
    }
}
