use std::collections::HashMap;

use crate::grouprep::{FiniteGroupSpec, LabelSet};

use super::TelescopeError;

/// Multiplication table of a small finite group; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLaw {
    name: String,
    table: Vec<Vec<u16>>,
    inverse: Vec<u16>,
}

impl GroupLaw {
    /// The permutation group generated by `gens` (images of `0..k`), with
    /// elements numbered in breadth-first order from the identity and
    /// product `(p q)(x) = p(q(x))`.
    pub fn from_permutations(name: &str, gens: &[Vec<usize>]) -> GroupLaw {
        let k = gens.first().map_or(0, Vec::len);
        let identity: Vec<usize> = (0..k).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut next = 0;
        while next < elements.len() {
            let p = elements[next].clone();
            next += 1;
            for g in gens {
                let q: Vec<usize> = (0..k).map(|x| g[p[x]]).collect();
                if !index.contains_key(&q) {
                    index.insert(q.clone(), elements.len());
                    elements.push(q);
                }
            }
        }
        let table: Vec<Vec<u16>> = elements
            .iter()
            .map(|p| {
                elements
                    .iter()
                    .map(|q| index[&(0..k).map(|x| p[q[x]]).collect::<Vec<_>>()] as u16)
                    .collect()
            })
            .collect();
        let inverse = table.iter().map(|row| row.iter().position(|&x| x == 0).expect("group") as u16).collect();
        GroupLaw { name: name.to_string(), table, inverse }
    }

    pub fn cyclic(m: usize) -> GroupLaw {
        GroupLaw::from_permutations(&format!("Z{m}"), &[(0..m).map(|x| (x + 1) % m).collect()])
    }

    pub fn symmetric3() -> GroupLaw {
        GroupLaw::from_permutations("S3", &[vec![1, 2, 0], vec![1, 0, 2]])
    }

    /// Symmetries of a square.
    pub fn dihedral4() -> GroupLaw {
        GroupLaw::from_permutations("D4", &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])
    }

    /// Left multiplication by `i` and `j` on `1, i, j, k, -1, -i, -j, -k`.
    pub fn quaternion8() -> GroupLaw {
        GroupLaw::from_permutations("Q8", &[vec![1, 4, 3, 6, 5, 0, 7, 2], vec![2, 7, 4, 1, 6, 3, 0, 5]])
    }

    pub fn by_name(name: &str) -> Result<GroupLaw, TelescopeError> {
        match name {
            "S3" => Ok(GroupLaw::symmetric3()),
            "D4" => Ok(GroupLaw::dihedral4()),
            "Q8" => Ok(GroupLaw::quaternion8()),
            _ => match name.strip_prefix('Z').and_then(|m| m.parse::<usize>().ok()) {
                Some(m) if m >= 2 => Ok(GroupLaw::cyclic(m)),
                _ => Err(TelescopeError::NoGroupLaw(name.to_string())),
            },
        }
    }

    /// Group documents carry no multiplication, so only built-in names work.
    pub fn for_spec(spec: &FiniteGroupSpec) -> Result<GroupLaw, TelescopeError> {
        let law = GroupLaw::by_name(spec.name())?;
        if law.order() as u64 != spec.order() {
            return Err(TelescopeError::NoGroupLaw(spec.name().to_string()));
        }
        Ok(law)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize][b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inverse[a as usize]
    }

    /// Element names `0, 1, ...`; `0` is the identity.
    pub fn labels(&self) -> LabelSet {
        LabelSet::new((0..self.order()).map(|i| i.to_string()).collect()).expect("order at least 2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_group(g: &GroupLaw) -> bool {
        let n = g.order() as u16;
        (0..n).all(|a| g.mul(0, a) == a && g.mul(a, 0) == a && g.mul(a, g.inv(a)) == 0)
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))))
    }

    fn is_abelian(g: &GroupLaw) -> bool {
        let n = g.order() as u16;
        (0..n).all(|a| (0..n).all(|b| g.mul(a, b) == g.mul(b, a)))
    }

    #[test]
    fn builtin_laws() {
        for spec in FiniteGroupSpec::builtins() {
            let g = GroupLaw::for_spec(&spec).unwrap();
            assert_eq!(g.order() as u64, spec.order());
            assert!(is_group(&g), "{}", spec.name());
        }
        assert!(is_abelian(&GroupLaw::cyclic(4)));
        assert!(!is_abelian(&GroupLaw::symmetric3()));
        // Q8 has a single involution, D4 has five
        let involutions = |g: &GroupLaw| (1..g.order() as u16).filter(|&a| g.mul(a, a) == 0).count();
        assert_eq!(involutions(&GroupLaw::quaternion8()), 1);
        assert_eq!(involutions(&GroupLaw::dihedral4()), 5);
        assert!(GroupLaw::by_name("A5").is_err());
    }
}
