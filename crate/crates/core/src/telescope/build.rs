use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::freegroup::{all_generators, ball, Generator, ReducedWord};
use crate::grouprep::FiniteGroupSpec;
use crate::intlin::{smith_diagonal, IntMatrix};
use crate::orbits::{for_each_config, Config};

use super::cells::{Cell, TreeVertex};
use super::{GroupLaw, TelescopeError};

/// Largest complex (in cells) the builder will produce.
pub const MAX_CELLS: u128 = 3_000_000;

/// Which way the cylinder over a Cayley edge points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GluingScheme {
    /// Over `[v, v a_j]` the cylinder starts at `T_v` and is glued into
    /// `T_(v a_j)` by `phi^(a_j)`. Left translation preserves this, so `eta`
    /// is a cellular action.
    Positive,
    /// Every cylinder starts at the tree nearer to `e` and is glued outward by
    /// `phi^(a_j^(+-1))`.
    Outward,
}

/// Free chain groups in degrees 0..=2 with boundary maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    pub dims: [usize; 3],
    /// `C_1 -> C_0`
    pub d1: IntMatrix,
    /// `C_2 -> C_1`
    pub d2: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    pub groups: [HomologyGroup; 3],
    pub euler: i64,
}

pub fn homology(c: &ChainComplex) -> Result<Homology, TelescopeError> {
    if !c.d1.try_mul(&c.d2).map_err(|_| TelescopeError::BoundaryNotZero)?.is_zero() {
        return Err(TelescopeError::BoundaryNotZero);
    }
    let diag1 = smith_diagonal(&c.d1);
    let diag2 = smith_diagonal(&c.d2);
    let rank = |d: &[BigInt]| d.iter().filter(|x| !x.is_zero()).count();
    let torsion = |d: &[BigInt]| d.iter().filter(|x| **x > BigInt::one()).cloned().collect::<Vec<_>>();
    let (r1, r2) = (rank(&diag1), rank(&diag2));
    let groups = [
        HomologyGroup { free_rank: c.dims[0] - r1, torsion: torsion(&diag1) },
        HomologyGroup { free_rank: c.dims[1] - r1 - r2, torsion: torsion(&diag2) },
        HomologyGroup { free_rank: c.dims[2] - r2, torsion: Vec::new() },
    ];
    let euler = c.dims[0] as i64 - c.dims[1] as i64 + c.dims[2] as i64;
    Ok(Homology { groups, euler })
}

/// A truncated telescope: trees `T_w` for `|w| <= radius` with levels
/// `1..=levels`, cylinders over the Cayley edges inside the ball, and every
/// tree coset drawn from maps supported in `ball(e, support_radius)` in
/// global coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    pub group: String,
    pub law: GroupLaw,
    pub rank: u32,
    pub radius: usize,
    pub levels: usize,
    pub support_radius: usize,
    pub scheme: GluingScheme,
    pub cells: [Vec<Cell>; 3],
    index: [HashMap<Cell, usize>; 3],
    pub chain: ChainComplex,
}

/// Steps `s` with a cylinder over `[w, w s]` starting at `T_w`.
pub fn cylinder_steps(scheme: GluingScheme, w: &ReducedWord, radius: usize) -> Vec<Generator> {
    all_generators(w.rank())
        .filter(|&s| match scheme {
            GluingScheme::Positive => !s.inverse && w.mul_gen(s).len() <= radius,
            GluingScheme::Outward => {
                let ws = w.mul_gen(s);
                ws.len() == w.len() + 1 && ws.len() <= radius
            }
        })
        .collect()
}

/// Local support region of `T_w`: `w^-1 . ball(e, support_radius)`.
fn local_region(w: &ReducedWord, support_radius: usize) -> Vec<ReducedWord> {
    let inv = w.inverse();
    let mut out: Vec<ReducedWord> = ball(w.rank(), support_radius).iter().map(|y| &inv * y).collect();
    out.sort();
    out
}

fn estimate_cells(order: usize, rank: u32, radius: usize, levels: usize, support_radius: usize) -> Option<u128> {
    let mut total: u128 = 0;
    for w in ball(rank, radius) {
        let region = local_region(&w, support_radius);
        for m in 1..=levels {
            let free = region.iter().filter(|x| x.len() > m).count() as u32;
            // vertex, tree edge and up to 4 rank cylinder cells per coset
            total = total.checked_add((order as u128).checked_pow(free)?.checked_mul(2 + 4 * rank as u128)?)?;
        }
    }
    Some(total)
}

impl CellComplex {
    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.index[c.dim()].contains_key(c)
    }

    pub fn id_of(&self, c: &Cell) -> Option<usize> {
        self.index[c.dim()].get(c).copied()
    }

    pub fn count_by_kind(&self, kind: super::CellKind) -> usize {
        self.cells[kind.dim()].iter().filter(|c| c.kind() == kind).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells[0].len() as i64 - self.cells[1].len() as i64 + self.cells[2].len() as i64
    }

    pub fn homology(&self) -> Result<Homology, TelescopeError> {
        homology(&self.chain)
    }

    /// Assembles a complex from its cells; boundaries are recomputed and every
    /// face must be present.
    pub(crate) fn assemble(
        meta: (String, GroupLaw, u32, usize, usize, usize, GluingScheme),
        mut cells: [Vec<Cell>; 3],
    ) -> Result<CellComplex, TelescopeError> {
        let (group, law, rank, radius, levels, support_radius, scheme) = meta;
        for c in &mut cells {
            c.sort();
        }
        let index: [HashMap<Cell, usize>; 3] =
            std::array::from_fn(|d| cells[d].iter().cloned().enumerate().map(|(i, c)| (c, i)).collect());
        let matrix = |d: usize| -> Result<IntMatrix, TelescopeError> {
            let mut triples = Vec::new();
            for (j, c) in cells[d].iter().enumerate() {
                for (face, sign) in c.boundary(levels)? {
                    let i = *index[d - 1]
                        .get(&face)
                        .ok_or_else(|| TelescopeError::Gluing(format!("face {face} of {c} is missing")))?;
                    triples.push((i, j, BigInt::from(sign)));
                }
            }
            Ok(IntMatrix::from_triples(cells[d - 1].len(), cells[d].len(), triples).expect("indices in range"))
        };
        let chain = ChainComplex { dims: [cells[0].len(), cells[1].len(), cells[2].len()], d1: matrix(1)?, d2: matrix(2)? };
        Ok(CellComplex { group, law, rank, radius, levels, support_radius, scheme, cells, index, chain })
    }
}

fn build(
    law: GroupLaw,
    rank: u32,
    radius: usize,
    levels: usize,
    support_radius: usize,
    scheme: GluingScheme,
) -> Result<CellComplex, TelescopeError> {
    if rank == 0 {
        return Err(TelescopeError::ZeroRank);
    }
    match estimate_cells(law.order(), rank, radius, levels, support_radius) {
        Some(c) if c <= MAX_CELLS => {}
        c => return Err(TelescopeError::TooLarge { cells: c, limit: MAX_CELLS }),
    }
    let mut cells: [Vec<Cell>; 3] = Default::default();
    for w in ball(rank, radius) {
        let region = local_region(&w, support_radius);
        let steps = cylinder_steps(scheme, &w, radius);
        for m in 1..=levels {
            let free: Vec<ReducedWord> = region.iter().filter(|x| x.len() > m).cloned().collect();
            for_each_config(rank, law.order(), &free, |b: Config| {
                let v = TreeVertex { w: w.clone(), level: m, coset: b };
                if m < levels {
                    cells[1].push(Cell::TreeEdge(v.clone()));
                    for &s in &steps {
                        cells[1].push(Cell::Vertical { at: v.clone(), step: s });
                        if m + 1 < levels {
                            cells[2].push(Cell::Square { at: v.clone(), step: s });
                        }
                    }
                }
                cells[0].push(Cell::Vertex(v));
            });
        }
    }
    let name = law.name().to_string();
    CellComplex::assemble((name, law, rank, radius, levels, support_radius, scheme), cells)
}

/// The tree `T` for `B_L`: vertices `B_L / B_m` for `m = 1..=L`, each joined
/// to the coset containing it one level up.
pub fn build_tree(spec: &FiniteGroupSpec, rank: u32, levels: usize) -> Result<CellComplex, TelescopeError> {
    if levels < 1 {
        return Err(TelescopeError::LevelsTooSmall { levels, min: 1 });
    }
    build(GroupLaw::for_spec(spec)?, rank, 0, levels, levels, GluingScheme::Positive)
}

/// Truncated telescope over `ball(e, radius)` with levels `1..=levels`.
/// Cosets are drawn from maps supported in `ball(e, R)`, `R = levels - radius - 1`.
/// Then every `T_w` already has a single vertex at level `levels - 1`, so each
/// cylinder starts on a whole tree, and every `phi` image stays inside the
/// truncation.
pub fn build_telescope(
    spec: &FiniteGroupSpec,
    rank: u32,
    radius: usize,
    levels: usize,
    scheme: GluingScheme,
) -> Result<CellComplex, TelescopeError> {
    if levels < 2 {
        return Err(TelescopeError::LevelsTooSmall { levels, min: 2 });
    }
    if radius >= levels {
        return Err(TelescopeError::RadiusExceedsLevels { radius, levels });
    }
    build(GroupLaw::for_spec(spec)?, rank, radius, levels, levels - radius - 1, scheme)
}
