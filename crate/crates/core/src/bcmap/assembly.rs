use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::freegroup::{Generator, ReducedWord};
use crate::grouprep::{mu_f, FiniteGroupSpec, Side};
use crate::orbits::{enumerate_canonical, Config};

use super::kgroups::k1_generator_names;
use super::BcError;

/// Label-wise image of a topological configuration under the finite
/// assembly bijection `pi -> e_pi`.
pub fn mu_config(spec: &FiniteGroupSpec, f: &Config) -> Result<Config, BcError> {
    let top = spec.labels(Side::Topological);
    let ana = spec.labels(Side::Analytic);
    let mut entries = Vec::with_capacity(f.support_size());
    for (w, l) in f.entries() {
        let image = mu_f(spec, top.name(*l))?;
        if image.basepoint {
            return Err(BcError::SupportMismatch(w.to_string()));
        }
        let idx = ana.index_of(&image.id).ok_or_else(|| BcError::SupportMismatch(w.to_string()))?;
        entries.push((w.clone(), idx));
    }
    Ok(Config::from_entries(f.rank(), entries)?)
}

#[derive(Debug, Clone)]
pub struct AssemblyReport {
    pub group: String,
    pub n: u32,
    pub radius: usize,
    /// `(topological representative, its image)` in topological basis order.
    pub pairs: Vec<(Config, Config)>,
    pub analytic_basis: Vec<Config>,
    pub bijective: bool,
    /// Degree-one correspondence `v_i -> u_i`.
    pub degree_one: Vec<(String, String)>,
}

pub fn assembly_map(spec: &FiniteGroupSpec, n: u32, radius: usize) -> Result<AssemblyReport, BcError> {
    let top = enumerate_canonical(&spec.labels(Side::Topological), n, radius)?;
    let ana = enumerate_canonical(&spec.labels(Side::Analytic), n, radius)?;
    let mut pairs = Vec::with_capacity(top.len());
    for f in &top {
        let g = mu_config(spec, f)?;
        if g.support().ne(f.support()) {
            return Err(BcError::SupportMismatch(format!("{f:?}")));
        }
        pairs.push((f.clone(), g));
    }
    let images: BTreeSet<&Config> = pairs.iter().map(|p| &p.1).collect();
    let targets: BTreeSet<&Config> = ana.iter().collect();
    let bijective = images.len() == pairs.len() && images == targets;
    let degree_one = k1_generator_names(Side::Topological, n)
        .into_iter()
        .zip(k1_generator_names(Side::Analytic, n))
        .collect();
    Ok(AssemblyReport { group: spec.name().to_string(), n, radius, pairs, analytic_basis: ana, bijective, degree_one })
}

/// `tau(c)`: product of the minimal-projection traces over the support; 1 for `1_p`.
pub fn trace_of(spec: &FiniteGroupSpec, c: &Config) -> BigRational {
    c.entries().iter().map(|(_, l)| spec.trace_of_index(*l)).fold(BigRational::one(), |a, b| a * b)
}

/// Positive generator `d` of the subgroup `d Z` of `Q` spanned by `values`
/// (zero if all values vanish).
pub fn rational_gcd<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigRational {
    let values: Vec<&BigRational> = values.into_iter().collect();
    let den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let num = values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(&(v.numer() * (&den / v.denom()))));
    BigRational::new(num, den)
}

#[derive(Debug, Clone)]
pub struct TraceReport {
    pub group: String,
    pub order: u64,
    pub support_bound: usize,
    /// One representative per label multiset; `tau` depends on nothing else.
    pub table: Vec<(Config, BigRational)>,
    pub generated: BigRational,
    pub predicted: BigRational,
}

impl TraceReport {
    pub fn holds(&self) -> bool {
        self.generated == self.predicted
    }
}

/// Canonical rank-one configuration carrying `labels` along the path
/// `a1^-h .. a1^(k-1-h)` with `h = (k-1)/2`: centred at `e` for odd `k`,
/// at `[e, a1]` for even `k`.
pub fn path_config(labels: &[u16]) -> Config {
    let k = labels.len() as i64;
    let h = (k - 1).max(0) / 2;
    let entries = labels.iter().enumerate().map(|(t, l)| {
        let p = t as i64 - h;
        let g = if p < 0 { Generator::neg(1) } else { Generator::pos(1) };
        let letters = vec![g; p.unsigned_abs() as usize];
        (ReducedWord::from_letters(1, &letters).expect("rank one"), *l)
    });
    Config::from_entries(1, entries).expect("distinct path words")
}

/// The trace values of canonical configurations with at most `bound` support
/// points. The trace is a product over labels, so every multiset of
/// non-basepoint labels of size at most `bound` is realized once by a path.
pub fn trace_image(spec: &FiniteGroupSpec, bound: usize) -> TraceReport {
    let labels = spec.labels(Side::Analytic).len() as u16;
    let mut table = Vec::new();
    let mut current: Vec<u16> = Vec::new();
    fn walk(
        spec: &FiniteGroupSpec,
        labels: u16,
        bound: usize,
        from: u16,
        current: &mut Vec<u16>,
        table: &mut Vec<(Config, BigRational)>,
    ) {
        let c = path_config(current);
        let t = trace_of(spec, &c);
        table.push((c, t));
        if current.len() == bound {
            return;
        }
        for l in from..labels {
            current.push(l);
            walk(spec, labels, bound, l, current, table);
            current.pop();
        }
    }
    walk(spec, labels, bound, 1, &mut current, &mut table);
    table.sort_by(|a, b| a.0.support_size().cmp(&b.0.support_size()).then_with(|| a.0.cmp(&b.0)));
    let generated = rational_gcd(table.iter().map(|(_, t)| t));
    let predicted = BigRational::new(BigInt::one(), BigInt::from(spec.order()).pow(bound as u32));
    TraceReport { group: spec.name().to_string(), order: spec.order(), support_bound: bound, table, generated, predicted }
}
