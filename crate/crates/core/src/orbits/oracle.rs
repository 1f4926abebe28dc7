//! Brute-force orbit partition, independent of the canonical-form machinery:
//! configurations are joined whenever one generator move relates them.

use std::collections::{BTreeMap, HashMap};

use crate::freegroup::{all_generators, ball, ReducedWord};
use crate::grouprep::LabelSet;

use super::enumerate::for_each_config;
use super::{Config, OrbitError};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Orbit classes of the configurations supported in `ball(rank, radius)`.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub radius: usize,
    pub exploration_radius: usize,
    /// Each class sorted, classes sorted by their first member.
    pub classes: Vec<Vec<Config>>,
    /// Number of configurations visited during the search.
    pub explored: usize,
}

impl OrbitPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Joins `f` and `a_i^{+-1} . f` whenever both stay inside
/// `ball(rank, 2 radius + 1)`.
pub fn orbit_oracle(labels: &LabelSet, rank: u32, radius: usize) -> Result<OrbitPartition, OrbitError> {
    orbit_oracle_within(labels, rank, radius, 2 * radius + 1)
}

pub fn orbit_oracle_within(
    labels: &LabelSet,
    rank: u32,
    radius: usize,
    exploration_radius: usize,
) -> Result<OrbitPartition, OrbitError> {
    let region = ball(rank, radius);
    let limit = 200_000usize;
    let count = (labels.len() as f64).powi(region.len() as i32);
    if count > limit as f64 {
        return Err(OrbitError::TooLarge { words: region.len(), limit });
    }
    let moves: Vec<ReducedWord> = all_generators(rank)
        .map(|g| ReducedWord::generator(rank, g).expect("generator in range"))
        .collect();

    let mut starts = Vec::new();
    for_each_config(rank, labels.len(), &region, |c| starts.push(c));

    let mut ids: HashMap<Config, usize> = HashMap::new();
    let mut nodes: Vec<Config> = Vec::new();
    let mut uf = UnionFind::new(0);
    for c in &starts {
        ids.insert(c.clone(), uf.push());
        nodes.push(c.clone());
    }
    let mut next = 0;
    while next < nodes.len() {
        let f = nodes[next].clone();
        let id = next;
        next += 1;
        for m in &moves {
            let g = f.translate(m);
            if g.radius() > exploration_radius {
                continue;
            }
            let gid = match ids.get(&g) {
                Some(&gid) => gid,
                None => {
                    let gid = uf.push();
                    ids.insert(g.clone(), gid);
                    nodes.push(g);
                    gid
                }
            };
            uf.union(id, gid);
        }
    }

    let mut grouped: BTreeMap<usize, Vec<Config>> = BTreeMap::new();
    for (i, c) in starts.iter().enumerate() {
        let root = uf.find(i);
        grouped.entry(root).or_default().push(c.clone());
    }
    let mut classes: Vec<Vec<Config>> = grouped
        .into_values()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    classes.sort();
    Ok(OrbitPartition { radius, exploration_radius, classes, explored: nodes.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;

    fn labels(n: usize) -> LabelSet {
        LabelSet::new((0..n).map(|i| format!("l{i}")).collect()).unwrap()
    }

    fn class_of<'a>(p: &'a OrbitPartition, c: &Config) -> &'a Vec<Config> {
        p.classes.iter().find(|k| k.contains(c)).expect("config in some class")
    }

    #[test]
    fn oracle_examples() {
        let l = labels(3);
        let p = orbit_oracle(&l, 2, 1).unwrap();
        let at = |s: &str, lab: u16| Config::from_entries(2, [(parse_word(s, 2).unwrap(), lab)]).unwrap();
        assert_eq!(class_of(&p, &at("a1", 1)), class_of(&p, &at("a2", 1)));
        assert_ne!(class_of(&p, &at("e", 1)), class_of(&p, &at("e", 2)));
        assert_eq!(orbit_oracle(&labels(2), 2, 1).unwrap().class_count(), 26);
    }

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(4);
        assert!(uf.union(0, 1));
        assert!(!uf.union(1, 0));
        assert!(uf.union(2, 3));
        assert_ne!(uf.find(0), uf.find(2));
        uf.union(1, 3);
        assert_eq!(uf.find(0), uf.find(2));
    }

    #[test]
    fn enlarging_the_search_ball_changes_nothing() {
        let l = labels(2);
        for (n, r) in [(1, 2), (2, 1)] {
            let a = orbit_oracle(&l, n, r).unwrap();
            let b = orbit_oracle_within(&l, n, r, 2 * r + 3).unwrap();
            assert_eq!(a.classes, b.classes);
        }
    }
}
