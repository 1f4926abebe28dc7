use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::freegroup::{ball, ball_size, Generator, ReducedWord};
use crate::grouprep::{FiniteGroupSpec, LabelSet, Side};
use crate::intlin::{kernel_basis, IntMatrix};
use crate::orbits::{for_each_config, Config};

use super::BcError;

/// Largest truncation (in basis configurations) that will be materialized.
pub const MAX_BASIS: u128 = 250_000;

/// The free module on all configurations supported in `ball(rank, radius)`,
/// with basis sorted by configuration order (`1_p` first).
#[derive(Debug, Clone)]
pub struct TruncatedModule {
    side: Side,
    rank: u32,
    radius: usize,
    labels: LabelSet,
    basis: Vec<Config>,
    index: HashMap<Config, usize>,
}

/// `labels^|ball(rank, radius)|`, or `None` past `u128`.
pub fn truncation_size(labels: usize, rank: u32, radius: usize) -> Option<u128> {
    let words = u32::try_from(ball_size(rank, radius)).ok()?;
    (labels as u128).checked_pow(words)
}

impl TruncatedModule {
    pub fn new(spec: &FiniteGroupSpec, side: Side, rank: u32, radius: usize) -> Result<Self, BcError> {
        Self::from_labels(spec.labels(side), side, rank, radius)
    }

    pub fn from_labels(labels: LabelSet, side: Side, rank: u32, radius: usize) -> Result<Self, BcError> {
        if rank == 0 {
            return Err(BcError::ZeroRank);
        }
        match truncation_size(labels.len(), rank, radius) {
            Some(size) if size <= MAX_BASIS => {}
            size => return Err(BcError::TooLarge { configs: size, limit: MAX_BASIS }),
        }
        let mut basis = Vec::new();
        for_each_config(rank, labels.len(), &ball(rank, radius), |c| basis.push(c));
        basis.sort();
        let index = basis.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(TruncatedModule { side, rank, radius, labels, basis, index })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn basis(&self) -> &[Config] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, c: &Config) -> Option<usize> {
        self.index.get(c).copied()
    }
}

/// The matrix of `psi(m_1..m_n) = sum_j m_j - a_j m_j` from `n` copies of the
/// radius-`r` module to the radius-`(r+1)` module. Only codomain rows that
/// some column touches are stored; the nominal codomain size is kept apart.
#[derive(Debug, Clone)]
pub struct PsiMatrix {
    pub matrix: IntMatrix,
    /// Codomain configuration of each stored row, sorted.
    pub rows: Vec<Config>,
    pub codomain_dim: BigUint,
    pub blocks: usize,
    pub block_size: usize,
}

impl PsiMatrix {
    /// Column of basis element `k` in block `j` (1-based generator index).
    pub fn column(&self, j: u32, k: usize) -> usize {
        (j as usize - 1) * self.block_size + k
    }

    pub fn row_of(&self, c: &Config) -> Option<usize> {
        self.rows.binary_search(c).ok()
    }
}

pub fn psi_matrix(m: &TruncatedModule) -> PsiMatrix {
    let n = m.rank();
    let mut touched: BTreeSet<Config> = BTreeSet::new();
    let mut columns = Vec::with_capacity(n as usize * m.len());
    for j in 1..=n {
        let a = ReducedWord::generator(n, Generator::pos(j)).expect("generator in range");
        for f in m.basis() {
            let moved = f.translate(&a);
            if &moved != f {
                touched.insert(f.clone());
                touched.insert(moved.clone());
                columns.push(Some((f.clone(), moved)));
            } else {
                columns.push(None);
            }
        }
    }
    let rows: Vec<Config> = touched.into_iter().collect();
    let pos: HashMap<&Config, usize> = rows.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut triples = Vec::with_capacity(2 * columns.len());
    for (col, entry) in columns.iter().enumerate() {
        if let Some((f, moved)) = entry {
            triples.push((pos[f], col, BigInt::one()));
            triples.push((pos[moved], col, -BigInt::one()));
        }
    }
    let matrix = IntMatrix::from_triples(rows.len(), columns.len(), triples).expect("indices in range");
    let words = u32::try_from(ball_size(n, m.radius() + 1)).expect("ball size fits u32");
    PsiMatrix {
        matrix,
        rows,
        codomain_dim: BigUint::from(m.labels().len()).pow(words),
        blocks: n as usize,
        block_size: m.len(),
    }
}

/// Applies `psi` to a formal sum of `(generator index j, m, coefficient)`
/// terms without building any matrix.
pub fn psi_apply(terms: &[(u32, Config, BigInt)]) -> BTreeMap<Config, BigInt> {
    let mut out: BTreeMap<Config, BigInt> = BTreeMap::new();
    for (j, m, c) in terms {
        let a = ReducedWord::generator(m.rank(), Generator::pos(*j)).expect("generator in range");
        *out.entry(m.clone()).or_default() += c;
        *out.entry(m.translate(&a)).or_default() -= c;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Outcome of the kernel check: `coefficients` expresses the computed kernel
/// basis in terms of the `n` indicator vectors of `1_p` (one per block).
#[derive(Debug, Clone)]
pub struct KernelCertificate {
    pub holds: bool,
    pub kernel_rank: usize,
    pub coefficients: IntMatrix,
    pub det: BigInt,
}

/// Checks that the kernel of the truncated `psi` is exactly the span of the
/// `n` block indicators of `1_p`.
pub fn verify_kernel_lemma(m: &TruncatedModule) -> KernelCertificate {
    let psi = psi_matrix(m);
    let basepoint = m.index_of(&Config::basepoint(m.rank())).expect("1_p in every truncation");
    let indicators: Vec<usize> = (1..=m.rank()).map(|j| psi.column(j, basepoint)).collect();
    let kernel = kernel_basis(&psi.matrix);
    let n = indicators.len();
    let mut coefficients = IntMatrix::zeros(kernel.len(), n);
    let mut supported = true;
    for (t, x) in kernel.iter().enumerate() {
        for (col, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match indicators.iter().position(|&ic| ic == col) {
                Some(i) => coefficients.set(t, i, c.clone()),
                None => supported = false,
            }
        }
    }
    let det = if kernel.len() == n { coefficients.det().expect("square") } else { BigInt::zero() };
    KernelCertificate { holds: supported && kernel.len() == n && det.abs().is_one(), kernel_rank: kernel.len(), coefficients, det }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;

    fn z2() -> FiniteGroupSpec {
        FiniteGroupSpec::builtin("Z2").unwrap()
    }

    #[test]
    fn psi_examples() {
        let m = TruncatedModule::new(&z2(), Side::Analytic, 2, 1).unwrap();
        assert_eq!(m.len(), 32);
        assert!(m.basis()[0].is_basepoint());
        let psi = psi_matrix(&m);
        assert_eq!(psi.matrix.cols(), 2 * 32);
        assert_eq!(psi.codomain_dim, BigUint::from(1u32 << 17));
        // 1_p columns are zero
        assert!(psi.matrix.column(psi.column(1, 0)).iter().all(Zero::is_zero));
        // {e -> t} in block 1: +1 at {e -> t}, -1 at {a1 -> t}
        let e_t = Config::from_entries(2, [(parse_word("e", 2).unwrap(), 1)]).unwrap();
        let a1_t = Config::from_entries(2, [(parse_word("a1", 2).unwrap(), 1)]).unwrap();
        let col = psi.matrix.column(psi.column(1, m.index_of(&e_t).unwrap()));
        assert_eq!(col[psi.row_of(&e_t).unwrap()], BigInt::one());
        assert_eq!(col[psi.row_of(&a1_t).unwrap()], -BigInt::one());
        assert_eq!(col.iter().filter(|c| !c.is_zero()).count(), 2);
    }

    #[test]
    fn kernel_lemma_examples() {
        let m = TruncatedModule::new(&z2(), Side::Analytic, 2, 1).unwrap();
        let cert = verify_kernel_lemma(&m);
        assert!(cert.holds);
        assert_eq!(cert.kernel_rank, 2);
        let s3 = FiniteGroupSpec::builtin("S3").unwrap();
        let cert = verify_kernel_lemma(&TruncatedModule::new(&s3, Side::Topological, 1, 1).unwrap());
        assert!(cert.holds && cert.kernel_rank == 1);
    }

    #[test]
    fn psi_apply_matches_matrix() {
        let m = TruncatedModule::new(&z2(), Side::Topological, 1, 1).unwrap();
        let psi = psi_matrix(&m);
        for (k, f) in m.basis().iter().enumerate() {
            let direct = psi_apply(&[(1, f.clone(), BigInt::one())]);
            let col = psi.matrix.column(psi.column(1, k));
            let via: BTreeMap<Config, BigInt> = col
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (psi.rows[i].clone(), c))
                .collect();
            assert_eq!(direct, via);
        }
    }

    #[test]
    fn oversized_truncations_are_refused() {
        let q8 = FiniteGroupSpec::builtin("Q8").unwrap();
        assert!(matches!(
            TruncatedModule::new(&q8, Side::Analytic, 3, 2),
            Err(BcError::TooLarge { .. })
        ));
        assert_eq!(truncation_size(2, 2, 1), Some(32));
    }
}
