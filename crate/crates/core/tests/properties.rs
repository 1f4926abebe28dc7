use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use wreath_bc::freegroup::{parse_word, Generator, ReducedWord};
use wreath_bc::intlin::{cokernel_invariants, smith, smith_dense, IntMatrix};
use wreath_bc::orbits::{barycentre, canonicalize, centre_of_support, is_canonical, support_tree, Config};

const RANK: u32 = 2;

fn word(max_len: usize) -> impl Strategy<Value = ReducedWord> {
    prop::collection::vec((1..=RANK, any::<bool>()), 0..=max_len).prop_map(|letters| {
        let gens: Vec<Generator> = letters.into_iter().map(|(i, inv)| Generator::new(i, inv)).collect();
        ReducedWord::from_letters(RANK, &gens).unwrap()
    })
}

fn config() -> impl Strategy<Value = Config> {
    prop::collection::vec((word(4), 1u16..4), 0..6).prop_map(|entries| {
        let unique: BTreeMap<ReducedWord, u16> = entries.into_iter().collect();
        Config::from_entries(RANK, unique).unwrap()
    })
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r).prop_map(|rows| IntMatrix::from_dense(&rows))
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(u in word(6), v in word(6), w in word(6)) {
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
    }

    #[test]
    fn inverse_cancels(u in word(8)) {
        prop_assert!((&u * &u.inverse()).is_identity());
        prop_assert!((&u.inverse() * &u).is_identity());
        prop_assert_eq!(u.inverse().inverse(), u);
    }

    #[test]
    fn words_render_and_parse(u in word(8)) {
        prop_assert_eq!(parse_word(&u.to_string(), RANK).unwrap(), u);
    }

    #[test]
    fn canonical_form_is_translation_invariant(f in config(), g in word(5)) {
        let (c, w) = canonicalize(&f);
        prop_assert!(is_canonical(&c));
        prop_assert_eq!(c.translate(&w), f.clone());
        prop_assert_eq!(canonicalize(&f.translate(&g)).0, c);
    }

    #[test]
    fn translation_is_free_on_nonempty_supports(f in config(), g in word(5)) {
        prop_assume!(!f.is_basepoint() && !g.is_identity());
        prop_assert_ne!(f.translate(&g), f);
    }

    #[test]
    fn centre_is_equivariant(f in config(), g in word(5)) {
        prop_assume!(!f.is_basepoint());
        let centre = centre_of_support(&f).unwrap();
        prop_assert_eq!(centre_of_support(&f.translate(&g)).unwrap(), centre.translate(&g));
    }

    #[test]
    fn double_sweep_finds_the_leaf_stripping_centre(f in config()) {
        prop_assume!(!f.is_basepoint());
        let tree = support_tree(&f).unwrap();
        prop_assert!(tree.is_tree());
        prop_assert_eq!(centre_of_support(&f).unwrap(), barycentre(&tree));
    }

    #[test]
    fn smith_transforms_diagonalize(a in matrix()) {
        let s = smith(&a);
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d_matrix());
        let dense = smith_dense(&a);
        prop_assert_eq!(s.diag, dense.diag);
    }

    #[test]
    fn cokernel_ignores_row_and_column_order(a in matrix(), seed in any::<u64>()) {
        let mut rows: Vec<usize> = (0..a.rows()).collect();
        let mut cols: Vec<usize> = (0..a.cols()).collect();
        rows.rotate_left(seed as usize % a.rows());
        cols.reverse();
        cols.rotate_left((seed >> 8) as usize % a.cols());
        prop_assert_eq!(cokernel_invariants(&a.permute(&rows, &cols)), cokernel_invariants(&a));
    }

    #[test]
    fn smith_diagonal_divides(a in matrix()) {
        let d: Vec<BigInt> = smith(&a).diag.into_iter().filter(|x| *x != BigInt::from(0)).collect();
        for pair in d.windows(2) {
            prop_assert_eq!(&pair[1] % &pair[0], BigInt::from(0));
        }
    }
}
