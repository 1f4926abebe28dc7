use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::freegroup::ball;
use crate::grouprep::{FiniteGroupSpec, LabelSet, Side};
use crate::intlin::cokernel_invariants;
use crate::orbits::{canonicalize, enumerate_canonical, Config};

use super::module::{psi_apply, psi_matrix, verify_kernel_lemma, KernelCertificate, TruncatedModule};
use super::{trace_of, BcError};

/// A preimage under `psi` of `x - canon(x)`, as `(generator index j, m, coefficient)` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub terms: Vec<(u32, Config, BigInt)>,
}

/// Canonical form of `x` together with a `psi`-preimage of `x - canon(x)`.
///
/// With `x = g c` and `g = s_1 ... s_k`, put `y_t = s_{t+1} ... s_k c`; then
/// `x - c = sum_t (y_{t-1} - y_t)` and each summand is `-(y_t - a_j y_t)` when
/// `s_t = a_j`, or `m - a_j m` with `m = y_{t-1}` when `s_t = a_j^-1`.
pub fn coinvariance_witness(x: &Config) -> (Config, Witness) {
    let (c, g) = canonicalize(x);
    let letters = g.letters();
    let mut terms = Vec::with_capacity(letters.len());
    let mut y = c.clone();
    for s in letters.iter().rev() {
        let prev = y.translate(&crate::freegroup::ReducedWord::generator(x.rank(), *s).expect("letter in range"));
        if s.inverse {
            terms.push((s.index, prev.clone(), BigInt::one()));
        } else {
            terms.push((s.index, y.clone(), -BigInt::one()));
        }
        y = prev;
    }
    debug_assert_eq!(&y, x);
    (c, Witness { terms })
}

/// Whether `psi(w) = x - c` exactly.
pub fn check_witness(x: &Config, c: &Config, w: &Witness) -> bool {
    let mut expected = std::collections::BTreeMap::new();
    if x != c {
        expected.insert(x.clone(), BigInt::one());
        expected.insert(c.clone(), -BigInt::one());
    }
    psi_apply(&w.terms) == expected
}

/// A uniformly random configuration supported in `ball(rank, radius)`.
pub fn random_config(rng: &mut impl Rng, labels: usize, rank: u32, radius: usize) -> Config {
    let entries = ball(rank, radius).into_iter().map(|w| (w, rng.gen_range(0..labels) as u16));
    Config::from_entries(rank, entries).expect("distinct ball words")
}

#[derive(Debug, Clone)]
pub struct K0Report {
    pub side: Side,
    pub n: u32,
    pub radius: usize,
    /// Canonical representatives, by support size then configuration order.
    pub basis: Vec<Config>,
    /// Number of truncation elements whose coinvariance witness was verified.
    pub witnesses_checked: usize,
    /// Torsion of the cokernel of the truncated `psi` (expected empty).
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone)]
pub struct K1Report {
    pub side: Side,
    pub n: u32,
    pub radius: usize,
    pub rank: usize,
    pub generators: Vec<String>,
    pub certificate: KernelCertificate,
}

/// Names of the degree-one generators: `u1..un` analytically, `v1..vn` topologically.
pub fn k1_generator_names(side: Side, n: u32) -> Vec<String> {
    let letter = match side {
        Side::Analytic => 'u',
        Side::Topological => 'v',
    };
    (1..=n).map(|i| format!("{letter}{i}")).collect()
}

fn k0_of(m: &TruncatedModule) -> Result<K0Report, BcError> {
    let basis = enumerate_canonical(m.labels(), m.rank(), m.radius())?;
    let mut checked = 0;
    for x in m.basis() {
        let (c, w) = coinvariance_witness(x);
        if m.index_of(&c).is_none() || !check_witness(x, &c, &w) {
            return Err(BcError::WitnessFailure(x.render(m.labels())));
        }
        checked += 1;
    }
    let (_, torsion) = cokernel_invariants(&psi_matrix(m).matrix);
    Ok(K0Report { side: m.side(), n: m.rank(), radius: m.radius(), basis, witnesses_checked: checked, torsion })
}

fn k1_of(m: &TruncatedModule) -> Result<K1Report, BcError> {
    let certificate = verify_kernel_lemma(m);
    let n = m.rank() as usize;
    if certificate.kernel_rank != n {
        return Err(BcError::RankMismatch { expected: n, found: certificate.kernel_rank });
    }
    Ok(K1Report {
        side: m.side(),
        n: m.rank(),
        radius: m.radius(),
        rank: certificate.kernel_rank,
        generators: k1_generator_names(m.side(), m.rank()),
        certificate,
    })
}

pub fn k0_report(spec: &FiniteGroupSpec, side: Side, n: u32, radius: usize) -> Result<K0Report, BcError> {
    k0_of(&TruncatedModule::new(spec, side, n, radius)?)
}

pub fn k1_report(spec: &FiniteGroupSpec, side: Side, n: u32, radius: usize) -> Result<K1Report, BcError> {
    k1_of(&TruncatedModule::new(spec, side, n, radius)?)
}

/// Both K-groups for one side, sharing one truncation.
#[derive(Debug, Clone)]
pub struct KGroupReport {
    pub group: String,
    pub labels: LabelSet,
    pub k0: K0Report,
    pub k1: K1Report,
    /// Trace of each `k0.basis` element, in the same order.
    pub traces: Vec<BigRational>,
}

pub fn k_report(spec: &FiniteGroupSpec, side: Side, n: u32, radius: usize) -> Result<KGroupReport, BcError> {
    let m = TruncatedModule::new(spec, side, n, radius)?;
    let k0 = k0_of(&m)?;
    let k1 = k1_of(&m)?;
    let traces = k0.basis.iter().map(|c| trace_of(spec, c)).collect();
    Ok(KGroupReport { group: spec.name().to_string(), labels: m.labels().clone(), k0, k1, traces })
}

impl KGroupReport {
    pub fn is_torsion_free(&self) -> bool {
        self.k0.torsion.iter().all(|t| t.is_zero() || t.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn k0_examples() {
        let z2 = FiniteGroupSpec::builtin("Z2").unwrap();
        let r = k0_report(&z2, Side::Analytic, 2, 0).unwrap();
        assert_eq!(r.basis.len(), 2);
        assert!(r.basis[0].is_basepoint());
        assert_eq!(r.witnesses_checked, 2);
        let r = k0_report(&z2, Side::Topological, 2, 1).unwrap();
        assert_eq!(r.basis.len(), 26);
        assert_eq!(r.witnesses_checked, 32);
        assert!(r.torsion.is_empty());
    }

    #[test]
    fn k1_examples() {
        let z2 = FiniteGroupSpec::builtin("Z2").unwrap();
        let r = k1_report(&z2, Side::Analytic, 2, 1).unwrap();
        assert_eq!((r.rank, r.generators.clone()), (2, vec!["u1".to_string(), "u2".to_string()]));
        let s3 = FiniteGroupSpec::builtin("S3").unwrap();
        let r = k1_report(&s3, Side::Topological, 3, 0).unwrap();
        assert_eq!(r.generators, ["v1", "v2", "v3"]);
        for g in FiniteGroupSpec::builtins() {
            assert_eq!(k1_report(&g, Side::Analytic, 1, 1).unwrap().rank, 1);
        }
    }

    #[test]
    fn witness_for_a_negative_translate() {
        let w = |s: &str| parse_word(s, 2).unwrap();
        let x = Config::from_entries(2, [(w("a2^-1*a1"), 1), (w("a2^-1"), 1)]).unwrap();
        let (c, wit) = coinvariance_witness(&x);
        assert_eq!(c, Config::from_entries(2, [(w("e"), 1), (w("a1"), 1)]).unwrap());
        assert_eq!(wit.terms.len(), 1);
        assert!(check_witness(&x, &c, &wit));
    }

    #[test]
    fn random_witnesses_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x = random_config(&mut rng, 3, 2, 2);
            let (c, w) = coinvariance_witness(&x);
            assert!(check_witness(&x, &c, &w), "{x:?}");
            assert!(w.terms.iter().all(|(_, m, _)| m.radius() <= 4));
        }
    }
}
