use std::collections::BTreeMap;

use serde::Serialize;

use crate::freegroup::{all_generators, ball, Generator, ReducedWord};
use crate::orbits::{for_each_config, Config};

use super::cells::{glue_map_phi, Cell, CellKind, TreeVertex};
use super::{cylinder_steps, CellComplex};

/// Exhaustive checks over the truncated base group stop at this many elements.
pub const EXHAUSTIVE_LIMIT: u128 = 4096;

/// One factor of an element of the wreath product, acting on cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// `theta(f)` for a finitely supported `f`, in global coordinates.
    Theta(Config),
    /// `eta(s)`: left translation by a generator.
    Eta(Generator),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }
}

/// All of `B_R = F^(ball(e, R))`, if it has at most [`EXHAUSTIVE_LIMIT`] elements.
pub fn truncated_group(order: usize, rank: u32, support_radius: usize) -> Option<Vec<Config>> {
    let region = ball(rank, support_radius);
    let size = (order as u128).checked_pow(region.len() as u32)?;
    if size > EXHAUSTIVE_LIMIT {
        return None;
    }
    let mut out = Vec::with_capacity(size as usize);
    for_each_config(rank, order, &region, |f| out.push(f));
    Some(out)
}

/// The generators `delta_(x, g)` of `B_R`: label `g != 0` at a single `x`.
pub fn single_site_elements(order: usize, rank: u32, support_radius: usize) -> Vec<Config> {
    let mut out = Vec::new();
    for x in ball(rank, support_radius) {
        for g in 1..order as u16 {
            out.push(Config::from_entries(rank, [(x.clone(), g)]).expect("single entry"));
        }
    }
    out
}

fn test_elements(cx: &CellComplex) -> Vec<Config> {
    truncated_group(cx.law.order(), cx.rank, cx.support_radius)
        .unwrap_or_else(|| single_site_elements(cx.law.order(), cx.rank, cx.support_radius))
}

impl CellComplex {
    /// Applies `moves` right to left. `None` as soon as a move leaves the
    /// truncation: an intermediate cell is missing or some `f` is supported
    /// outside `ball(e, support_radius)`.
    pub fn act(&self, moves: &[Move], cell: &Cell) -> Option<Cell> {
        let mut c = cell.clone();
        for m in moves.iter().rev() {
            let v = match m {
                Move::Theta(f) if f.radius() <= self.support_radius || f.is_basepoint() => {
                    c.vertex().theta(&self.law, f)
                }
                Move::Theta(_) => return None,
                Move::Eta(s) => c.vertex().eta(*s),
            };
            c = c.with_vertex(v);
            if !self.contains(&c) {
                return None;
            }
        }
        Some(c)
    }

    /// Stabilizer of a vertex in the truncated base group, by enumeration.
    /// `None` if `B_R` is too large to enumerate.
    pub fn stabilizer_order(&self, v: &TreeVertex) -> Option<u128> {
        let group = truncated_group(self.law.order(), self.rank, self.support_radius)?;
        Some(group.iter().filter(|f| &v.theta(&self.law, f) == v).count() as u128)
    }
}

pub fn stabilizer_order(cx: &CellComplex, v: &TreeVertex) -> Option<u128> {
    cx.stabilizer_order(v)
}

/// `|F|^|ball(w, m) ∩ ball(e, R)|`: the maps that vanish where the coset is read.
pub fn predicted_stabilizer_order(order: usize, v: &TreeVertex, support_radius: usize) -> u128 {
    let sites = ball(v.w.rank(), v.level).iter().filter(|x| (&v.w * x).len() <= support_radius).count();
    (order as u128).pow(sites as u32)
}

/// `phi^s(theta(f) x) = theta(f) phi^s(x)` along every cylinder. `theta` is a
/// homomorphism, so generators of `B_R` suffice; all of `B_R` is used when small.
pub fn check_phi_equivariance(cx: &CellComplex) -> CheckOutcome {
    let elements = test_elements(cx);
    let mut out = CheckOutcome::default();
    for c in &cx.cells[1] {
        let Cell::Vertical { at, step } = c else { continue };
        let image = glue_map_phi(at, *step, cx.levels).expect("vertical edges sit below the top level");
        for f in &elements {
            let lhs = glue_map_phi(&at.theta(&cx.law, f), *step, cx.levels).expect("same level");
            let rhs = image.theta(&cx.law, f);
            out.record(lhs == rhs, || format!("phi^{step} and theta({f:?}) disagree at {at}"));
        }
    }
    out
}

/// `eta(a_j) theta(f) eta(a_j)^-1 = theta(a_j . f)` on every cell where both
/// sides stay inside the truncation.
pub fn check_conjugation(cx: &CellComplex) -> CheckOutcome {
    let elements = single_site_elements(cx.law.order(), cx.rank, cx.support_radius);
    let mut out = CheckOutcome::default();
    for c in cx.cells.iter().flatten() {
        for s in all_generators(cx.rank) {
            let sw = ReducedWord::generator(cx.rank, s).expect("generator in range");
            for f in &elements {
                let lhs = cx.act(&[Move::Eta(s), Move::Theta(f.clone()), Move::Eta(s.inv())], c);
                let rhs = cx.act(&[Move::Theta(f.translate(&sw))], c);
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    out.record(l == r, || format!("conjugating theta({f:?}) by {s} fails at {c}"));
                }
            }
        }
    }
    out
}

/// `d(g c) = g d(c)` for each single move `g` whose action is defined on `c` and its faces.
pub fn check_boundary_equivariance(cx: &CellComplex, moves: &[Move]) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    for dim in 1..=2 {
        for c in &cx.cells[dim] {
            for m in moves {
                let Some(image) = cx.act(std::slice::from_ref(m), c) else { continue };
                let faces = c.boundary(cx.levels).expect("complex cells have faces");
                let moved: Option<BTreeMap<Cell, i64>> = faces
                    .iter()
                    .map(|(f, s)| cx.act(std::slice::from_ref(m), f).map(|g| (g, *s)))
                    .try_fold(BTreeMap::new(), |mut acc, x| {
                        let (g, s) = x?;
                        *acc.entry(g).or_insert(0) += s;
                        Some(acc)
                    });
                let Some(moved) = moved else { continue };
                let mut direct: BTreeMap<Cell, i64> = BTreeMap::new();
                for (f, s) in image.boundary(cx.levels).expect("complex cells have faces") {
                    *direct.entry(f).or_insert(0) += s;
                }
                out.record(moved == direct, || format!("boundary of {c} is not equivariant under {m:?}"));
            }
        }
    }
    out
}

/// How the cells meet the candidate fundamental domain for `eta`: the cells
/// anchored at `e` (the tree `T_e` and the cylinders leaving it).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Domain cells by kind: vertices, tree edges, vertical edges, squares.
    pub domain: [usize; 4],
    /// Domain cells with every face in the domain.
    pub interior: usize,
    /// Domain cells with a face in a neighbouring tree.
    pub frontier: usize,
    /// Cells whose `eta`-translate to `e` is a domain cell.
    pub covered: usize,
    /// Cells whose translate has its coset cut off by the truncation.
    pub truncated: usize,
    /// Cylinder shapes `(w, s)` missing from the orbit structure: either a
    /// cylinder with no translate starting at `e`, or a translate of a domain
    /// cylinder that lies inside the ball but is absent.
    pub violations: Vec<String>,
    /// Cells fixed by a nontrivial `eta(g)`.
    pub fixed: usize,
}

pub fn fundamental_domain_cells(cx: &CellComplex) -> Census {
    let e = ReducedWord::identity(cx.rank);
    let domain_steps = cylinder_steps(cx.scheme, &e, cx.radius);
    let mut census = Census::default();
    for w in ball(cx.rank, cx.radius) {
        let steps = cylinder_steps(cx.scheme, &w, cx.radius);
        for &s in &domain_steps {
            if w.mul_gen(s).len() <= cx.radius && !steps.contains(&s) && census.violations.len() < 20 {
                census.violations.push(format!("no cylinder from T_{w} over [{w}, {}]", w.mul_gen(s)));
            }
        }
    }
    let kind_index = |k: CellKind| match k {
        CellKind::TreeVertex => 0,
        CellKind::TreeEdge => 1,
        CellKind::VerticalEdge => 2,
        CellKind::Square => 3,
    };
    for c in cx.cells.iter().flatten() {
        if c.anchor().is_identity() {
            census.domain[kind_index(c.kind())] += 1;
            let faces = c.boundary(cx.levels).expect("complex cells have faces");
            if faces.iter().all(|(f, _)| f.anchor().is_identity()) {
                census.interior += 1;
            } else {
                census.frontier += 1;
            }
        }
        if let Some(s) = c.step() {
            if !domain_steps.contains(&s) {
                if census.violations.len() < 20 {
                    census.violations.push(format!("{c} has no translate at e"));
                }
                continue;
            }
        }
        let v = c.vertex();
        let rep = c.with_vertex(TreeVertex { w: e.clone(), level: v.level, coset: v.coset.clone() });
        if cx.contains(&rep) {
            census.covered += 1;
        } else {
            census.truncated += 1;
        }
        // eta(g) moves the anchor w to g w, which differs from w unless g = e
        if c.with_vertex(v.eta(Generator::pos(1))) == *c {
            census.fixed += 1;
        }
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::FiniteGroupSpec;
    use crate::telescope::{build_telescope, build_tree, GluingScheme};

    fn z2() -> FiniteGroupSpec {
        FiniteGroupSpec::builtin("Z2").unwrap()
    }

    #[test]
    fn small_telescope_is_equivariant() {
        let cx = build_telescope(&z2(), 2, 1, 3, GluingScheme::Positive).unwrap();
        let phi = check_phi_equivariance(&cx);
        assert!(phi.holds() && phi.checked > 0, "{:?}", phi.failures);
        let conj = check_conjugation(&cx);
        assert!(conj.holds() && conj.checked > 0, "{:?}", conj.failures);
        let mut moves: Vec<Move> = single_site_elements(2, 2, 1).into_iter().map(Move::Theta).collect();
        moves.extend(all_generators(2).map(Move::Eta));
        let bd = check_boundary_equivariance(&cx, &moves);
        assert!(bd.holds() && bd.checked > 0, "{:?}", bd.failures);
    }

    #[test]
    fn census_positive_and_outward() {
        let cx = build_telescope(&z2(), 2, 1, 3, GluingScheme::Positive).unwrap();
        let census = fundamental_domain_cells(&cx);
        assert!(census.violations.is_empty());
        assert_eq!(census.fixed, 0);
        // T_e plus one cylinder per positive generator
        let low = cx.cells[0].iter().filter(|c| c.anchor().is_identity() && c.vertex().level < cx.levels).count();
        assert_eq!(census.domain[2], 2 * low);
        assert_eq!(census.domain.iter().sum::<usize>(), census.interior + census.frontier);
        let outward = build_telescope(&z2(), 2, 1, 3, GluingScheme::Outward).unwrap();
        assert!(!fundamental_domain_cells(&outward).violations.is_empty());
    }

    #[test]
    fn stabilizers_match_the_prediction() {
        let cx = build_tree(&z2(), 1, 2).unwrap();
        for c in &cx.cells[0] {
            let v = c.vertex();
            assert_eq!(cx.stabilizer_order(v), Some(predicted_stabilizer_order(2, v, cx.support_radius)));
        }
        let top = cx.cells[0].iter().find(|c| c.vertex().level == 2).unwrap();
        assert_eq!(cx.stabilizer_order(top.vertex()), Some(32));
    }

    #[test]
    fn eta_leaves_the_truncation() {
        let cx = build_telescope(&z2(), 1, 1, 2, GluingScheme::Positive).unwrap();
        let v = cx.cells[0].iter().find(|c| c.anchor().len() == 1).unwrap();
        let s = v.anchor().first().unwrap();
        assert!(cx.act(&[Move::Eta(s)], v).is_none());
        assert!(cx.act(&[Move::Eta(s.inv()), Move::Eta(s)], v).is_none());
    }
}
