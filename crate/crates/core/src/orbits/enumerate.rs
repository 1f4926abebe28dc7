use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::freegroup::{ball, ball_size, ReducedWord};
use crate::grouprep::LabelSet;

use super::{Config, OrbitError};

/// Largest support region (in words) that subset enumeration will accept.
const MAX_REGION: usize = 26;

/// Whether a support set (sorted, non-empty) has its hull centred at `e` or
/// at an edge `[e, a_i]`, decided from the depth profile alone:
/// centre `e` with radius `k` iff the support sits in the `k`-ball and reaches
/// depth `k` in two different branches; centre `[e, a_i]` iff the words of
/// maximal length `D` all start with `a_i` and some word not starting with
/// `a_i` has length `D - 1`.
pub(crate) fn support_is_canonical(support: &[&ReducedWord]) -> bool {
    let depth = support.iter().map(|w| w.len()).max().unwrap_or(0);
    if depth == 0 {
        return true;
    }
    let mut deepest = support.iter().filter(|w| w.len() == depth).map(|w| w.first().unwrap());
    let head = deepest.next().unwrap();
    if deepest.any(|g| g != head) {
        return true;
    }
    if head.inverse {
        return false;
    }
    support.iter().any(|w| w.len() == depth - 1 && w.first() != Some(head))
}

/// Calls `visit` with every configuration supported in `region`, in
/// mixed-radix order (first word of `region` is the least significant digit).
pub fn for_each_config(rank: u32, labels: usize, region: &[ReducedWord], mut visit: impl FnMut(Config)) {
    let mut digits = vec![0u16; region.len()];
    loop {
        let entries: Vec<(ReducedWord, u16)> = region
            .iter()
            .zip(&digits)
            .filter(|(_, d)| **d != 0)
            .map(|(w, d)| (w.clone(), *d))
            .collect();
        visit(Config::from_entries(rank, entries).expect("distinct region words"));
        let mut k = 0;
        loop {
            if k == digits.len() {
                return;
            }
            digits[k] += 1;
            if (digits[k] as usize) < labels {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// All canonical configurations with support in `ball(rank, radius)`,
/// including `1_p`, ordered by support size and then by entries.
pub fn enumerate_canonical(labels: &LabelSet, rank: u32, radius: usize) -> Result<Vec<Config>, OrbitError> {
    let region = ball(rank, radius);
    if region.len() > MAX_REGION {
        return Err(OrbitError::TooLarge { words: region.len(), limit: MAX_REGION });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << region.len()) {
        let support: Vec<&ReducedWord> =
            (0..region.len()).filter(|i| mask >> i & 1 == 1).map(|i| &region[i]).collect();
        if !support.is_empty() && !support_is_canonical(&support) {
            continue;
        }
        // every non-basepoint labelling of this support
        let mut digits = vec![1u16; support.len()];
        loop {
            let entries = support.iter().zip(&digits).map(|(w, d)| ((*w).clone(), *d));
            out.push(Config::from_entries(rank, entries).expect("distinct words"));
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if (digits[k] as usize) < labels.len() {
                    break;
                }
                digits[k] = 1;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    }
    out.sort_by(|a, b| a.support_size().cmp(&b.support_size()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Number of canonical configurations with support in `ball(rank, radius)`
/// over `labels` labels, counted from the depth profile without enumerating:
/// each support point carries one of `q = labels - 1` non-basepoint labels.
pub fn count_canonical(labels: usize, rank: u32, radius: usize) -> BigUint {
    let q = BigUint::from(labels - 1);
    let free = |words: u128| -> BigUint { Pow::pow(BigUint::from(labels), words as u32) };
    let nonempty = |words: u128| free(words) - BigUint::one();
    let branch = |depth: usize| -> u128 { (2 * rank as u128 - 1).pow(depth as u32 - 1) };
    let layer = |depth: usize| ball_size(rank, depth) - ball_size(rank, depth - 1);
    // empty support and the single point e
    let mut total = BigUint::one() + &q;
    for d in 1..=radius {
        let deep = nonempty(branch(d));
        // two or more branches reach depth d
        let spread = Pow::pow(&deep + BigUint::one(), 2 * rank) - BigUint::one() - &deep * BigUint::from(2 * rank);
        total += free(ball_size(rank, d - 1)) * spread;
        // all depth-d words in branch a_i, another branch (or e) at depth d - 1
        let edge = if d == 1 {
            &q * &deep
        } else {
            let other = layer(d - 1) - branch(d - 1);
            nonempty(other) * free(ball_size(rank, d - 2) + branch(d - 1)) * &deep
        };
        total += edge * BigUint::from(rank);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::{FiniteGroupSpec, Side};
    use crate::orbits::tree::{is_canonical, is_admissible, support_tree};

    fn two_labels() -> LabelSet {
        LabelSet::new(vec!["p".into(), "t".into()]).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let l = two_labels();
        let r0 = enumerate_canonical(&l, 2, 0).unwrap();
        assert_eq!(r0.len(), 2);
        assert!(r0[0].is_basepoint());
        let three = LabelSet::new(vec!["p".into(), "t".into(), "u".into()]).unwrap();
        assert_eq!(enumerate_canonical(&three, 1, 0).unwrap().len(), 3);
    }

    // Oracle for the radius-1 count: all 2^5 subsets of ball(2,1), hull built
    // and centred by leaf stripping.
    #[test]
    fn radius_one_count_matches_subset_oracle() {
        let region = ball(2, 1);
        let mut admissible = 1; // the empty support, i.e. 1_p
        for mask in 1u32..32 {
            let entries = (0..5).filter(|i| mask >> i & 1 == 1).map(|i| (region[i].clone(), 1));
            let f = Config::from_entries(2, entries).unwrap();
            if is_admissible(&support_tree(&f).unwrap()) {
                admissible += 1;
            }
        }
        assert_eq!(admissible, 26);
        assert_eq!(enumerate_canonical(&two_labels(), 2, 1).unwrap().len(), 26);
    }

    #[test]
    fn enumerated_configs_are_fixed_by_canonicalize() {
        let s3 = FiniteGroupSpec::builtin("S3").unwrap();
        for c in enumerate_canonical(&s3.labels(Side::Analytic), 2, 1).unwrap() {
            assert!(is_canonical(&c), "{c:?}");
        }
    }

    #[test]
    fn for_each_config_counts() {
        let region = ball(1, 1);
        let mut seen = Vec::new();
        for_each_config(1, 3, &region, |c| seen.push(c));
        assert_eq!(seen.len(), 27);
        assert!(seen[0].is_basepoint());
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 27);
    }

    #[test]
    fn closed_form_count_matches_enumeration() {
        for (labels, rank, radius) in [(2, 2, 1), (3, 2, 1), (2, 1, 3), (3, 1, 2), (5, 1, 2), (2, 3, 1), (2, 2, 2)] {
            let names = (0..labels).map(|i| format!("l{i}")).collect();
            let l = LabelSet::new(names).unwrap();
            let listed = enumerate_canonical(&l, rank, radius).unwrap().len();
            assert_eq!(count_canonical(labels, rank, radius), BigUint::from(listed), "{labels} {rank} {radius}");
        }
    }

    #[test]
    fn oversized_regions_are_rejected() {
        assert!(matches!(
            enumerate_canonical(&two_labels(), 3, 2),
            Err(OrbitError::TooLarge { .. })
        ));
    }
}
