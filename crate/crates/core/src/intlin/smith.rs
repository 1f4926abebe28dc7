use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `u * a * v = diag(diag)` padded with zeros, `u` and `v` unimodular,
/// `diag[0] | diag[1] | ...`, zeros last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Length `min(rows, cols)`.
    pub diag: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix `D` with the shape of the original input.
    pub fn d_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.u.rows(), self.v.cols());
        for (i, x) in self.diag.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

/// Matrices with fewer columns than this (and few rows) go to the dense routine.
const DENSE_COLS: usize = 64;
const DENSE_ROWS: usize = 256;

pub fn smith(a: &IntMatrix) -> SmithForm {
    if a.cols() < DENSE_COLS && a.rows() <= DENSE_ROWS {
        smith_dense(a)
    } else {
        smith_sparse(a)
    }
}

pub fn smith_sparse(a: &IntMatrix) -> SmithForm {
    let e = Eliminator::run(a, true, true);
    e.into_form(a.rows(), a.cols())
}

/// Invariant factors only (no transforms), length `min(rows, cols)`.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let mut e = Eliminator::run(a, false, false);
    e.fix_divisibility();
    let mut diag: Vec<BigInt> = e.pivots.iter().map(|p| p.2.clone()).collect();
    diag.resize(a.rows().min(a.cols()), BigInt::zero());
    diag
}

pub fn rank(a: &IntMatrix) -> usize {
    Eliminator::run(a, false, false).pivots.len()
}

/// A Z-basis of the integer kernel `{x : a x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut e = Eliminator::run(a, false, true);
    let pivot_cols: BTreeSet<usize> = e.pivots.iter().map(|p| p.1).collect();
    let v = e.v.take().expect("tracking V");
    (0..a.cols())
        .filter(|j| !pivot_cols.contains(j))
        .map(|j| {
            let mut x = vec![BigInt::zero(); a.cols()];
            for (r, val) in &v[j] {
                x[*r] = val.clone();
            }
            if x.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
                x.iter_mut().for_each(|c| *c = -&*c);
            }
            x
        })
        .collect()
}

/// `(free rank, torsion)` of `Z^rows / im a`; torsion lists the factors > 1.
pub fn cokernel_invariants(a: &IntMatrix) -> (usize, Vec<BigInt>) {
    let diag = smith_diagonal(a);
    let r = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag.into_iter().filter(|d| d > &BigInt::one()).collect();
    (a.rows() - r, torsion)
}

/// Some integer `x` with `a x = b`, if one exists.
pub fn solve_in_image(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows(), "right-hand side length");
    let f = smith(a);
    let ub = f.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        let d = f.diag.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(f.v.mul_vec(&y))
}

/// Sparse elimination with optional recording of row transforms (`u`, by
/// rows) and column transforms (`v`, by columns). Pivots are taken in the
/// sparsest column that holds a unit, preferring the sparsest row; without
/// units the smallest entry of the sparsest column is used and reduced by
/// Euclidean steps.
struct Eliminator {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
    by_count: BTreeSet<(usize, usize)>,
    u: Option<Vec<BTreeMap<usize, BigInt>>>,
    v: Option<Vec<BTreeMap<usize, BigInt>>>,
    /// `(row, col, value)` in elimination order.
    pivots: Vec<(usize, usize, BigInt)>,
}

fn axpy(target: &mut BTreeMap<usize, BigInt>, c: &BigInt, src: &[(usize, BigInt)]) {
    for (k, x) in src {
        let slot = target.entry(*k).or_default();
        *slot += c * x;
        if slot.is_zero() {
            target.remove(k);
        }
    }
}

impl Eliminator {
    fn run(a: &IntMatrix, track_u: bool, track_v: bool) -> Self {
        let mut rows = vec![BTreeMap::new(); a.rows()];
        let mut cols = vec![BTreeSet::new(); a.cols()];
        for (i, j, x) in a.entries() {
            rows[i].insert(j, x.clone());
            cols[j].insert(i);
        }
        let by_count = cols.iter().enumerate().filter(|(_, c)| !c.is_empty()).map(|(j, c)| (c.len(), j)).collect();
        let unit = |n: usize| (0..n).map(|i| BTreeMap::from([(i, BigInt::one())])).collect::<Vec<_>>();
        let mut e = Eliminator {
            rows,
            cols,
            by_count,
            u: track_u.then(|| unit(a.rows())),
            v: track_v.then(|| unit(a.cols())),
            pivots: Vec::new(),
        };
        while let Some((i, j)) = e.choose_pivot() {
            e.eliminate(i, j);
        }
        e
    }

    fn set(&mut self, i: usize, j: usize, x: BigInt) {
        let before = self.cols[j].len();
        if x.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.rows[i].insert(j, x);
            self.cols[j].insert(i);
        }
        let after = self.cols[j].len();
        if before != after {
            if before > 0 {
                self.by_count.remove(&(before, j));
            }
            if after > 0 {
                self.by_count.insert((after, j));
            }
        }
    }

    fn choose_pivot(&self) -> Option<(usize, usize)> {
        for &(_, j) in &self.by_count {
            let best = self.cols[j]
                .iter()
                .filter(|&&i| self.rows[i][&j].abs().is_one())
                .min_by_key(|&&i| self.rows[i].len());
            if let Some(&i) = best {
                return Some((i, j));
            }
        }
        let &(_, j) = self.by_count.first()?;
        self.cols[j].iter().map(|&i| (i, j)).min_by_key(|&(i, j)| self.rows[i][&j].abs())
    }

    /// `row k += c * row i`
    fn row_op(&mut self, k: usize, i: usize, c: &BigInt) {
        let src: Vec<(usize, BigInt)> = self.rows[i].iter().map(|(j, x)| (*j, x.clone())).collect();
        for (j, x) in src {
            let cur = self.rows[k].get(&j).cloned().unwrap_or_default();
            self.set(k, j, cur + c * x);
        }
        if let Some(u) = &mut self.u {
            let src: Vec<(usize, BigInt)> = u[i].iter().map(|(j, x)| (*j, x.clone())).collect();
            axpy(&mut u[k], c, &src);
        }
    }

    /// `col l += c * col j`
    fn col_op(&mut self, l: usize, j: usize, c: &BigInt) {
        let src: Vec<(usize, BigInt)> = self.cols[j].iter().map(|&i| (i, self.rows[i][&j].clone())).collect();
        for (i, x) in src {
            let cur = self.rows[i].get(&l).cloned().unwrap_or_default();
            self.set(i, l, cur + c * x);
        }
        self.record_col_op(l, j, c);
    }

    fn record_col_op(&mut self, l: usize, j: usize, c: &BigInt) {
        if let Some(v) = &mut self.v {
            let src: Vec<(usize, BigInt)> = v[j].iter().map(|(r, x)| (*r, x.clone())).collect();
            axpy(&mut v[l], c, &src);
        }
    }

    fn eliminate(&mut self, mut i: usize, mut j: usize) {
        loop {
            // clear column j below/above the pivot
            let p = self.rows[i][&j].clone();
            let others: Vec<usize> = self.cols[j].iter().copied().filter(|&k| k != i).collect();
            for k in others {
                let q = &self.rows[k][&j] / &p;
                if !q.is_zero() {
                    self.row_op(k, i, &-q);
                }
            }
            if let Some(k) = self.cols[j]
                .iter()
                .copied()
                .filter(|&k| k != i)
                .min_by_key(|&k| self.rows[k][&j].abs())
            {
                i = k;
                continue;
            }
            // column j is now the single entry p at row i; clear row i
            let others: Vec<(usize, BigInt)> =
                self.rows[i].iter().filter(|(l, _)| **l != j).map(|(l, x)| (*l, x.clone())).collect();
            if p.abs().is_one() {
                for (l, x) in others {
                    let c = -(&x * &p);
                    self.set(i, l, BigInt::zero());
                    self.record_col_op(l, j, &c);
                }
            } else {
                for (l, x) in others {
                    let q = &x / &p;
                    if !q.is_zero() {
                        self.col_op(l, j, &-q);
                    }
                }
            }
            if let Some(l) = self.rows[i]
                .iter()
                .filter(|(l, _)| **l != j)
                .min_by_key(|(_, x)| x.abs())
                .map(|(l, _)| *l)
            {
                j = l;
                continue;
            }
            break;
        }
        let p = self.rows[i][&j].clone();
        self.set(i, j, BigInt::zero());
        self.pivots.push((i, j, p));
    }

    /// Makes pivots positive and turns them into a divisibility chain
    /// (units first), updating the transforms.
    fn fix_divisibility(&mut self) {
        for t in 0..self.pivots.len() {
            if self.pivots[t].2.is_negative() {
                let i = self.pivots[t].0;
                self.pivots[t].2 = -&self.pivots[t].2;
                if let Some(u) = &mut self.u {
                    u[i].values_mut().for_each(|x| *x = -&*x);
                }
            }
        }
        let (units, mut rest): (Vec<_>, Vec<_>) = self.pivots.drain(..).partition(|p| p.2.is_one());
        for s in 0..rest.len() {
            for t in s + 1..rest.len() {
                let (a, b) = (rest[s].2.clone(), rest[t].2.clone());
                if b.is_multiple_of(&a) {
                    continue;
                }
                let eg = a.extended_gcd(&b);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let (ag, bg) = (&a / &g, &b / &g);
                let (is, it) = (rest[s].0, rest[t].0);
                let (js, jt) = (rest[s].1, rest[t].1);
                if let Some(u) = &mut self.u {
                    // rows (is, it) <- [[x, y], [-b/g, a/g]] (rows is, it)
                    let us: Vec<(usize, BigInt)> = u[is].iter().map(|(k, v)| (*k, v.clone())).collect();
                    let ut: Vec<(usize, BigInt)> = u[it].iter().map(|(k, v)| (*k, v.clone())).collect();
                    let mut ns = BTreeMap::new();
                    axpy(&mut ns, &x, &us);
                    axpy(&mut ns, &y, &ut);
                    let mut nt = BTreeMap::new();
                    axpy(&mut nt, &-&bg, &us);
                    axpy(&mut nt, &ag, &ut);
                    u[is] = ns;
                    u[it] = nt;
                }
                if let Some(v) = &mut self.v {
                    // cols (js, jt) <- (cols js, jt) [[1, -y b/g], [1, x a/g]]
                    let vs: Vec<(usize, BigInt)> = v[js].iter().map(|(k, v)| (*k, v.clone())).collect();
                    let vt: Vec<(usize, BigInt)> = v[jt].iter().map(|(k, v)| (*k, v.clone())).collect();
                    let mut ns = BTreeMap::new();
                    axpy(&mut ns, &BigInt::one(), &vs);
                    axpy(&mut ns, &BigInt::one(), &vt);
                    let mut nt = BTreeMap::new();
                    axpy(&mut nt, &-(&y * &bg), &vs);
                    axpy(&mut nt, &(&x * &ag), &vt);
                    v[js] = ns;
                    v[jt] = nt;
                }
                rest[t].2 = &a * &bg;
                rest[s].2 = g;
            }
        }
        self.pivots = units;
        self.pivots.extend(rest);
    }

    fn into_form(mut self, rows: usize, cols: usize) -> SmithForm {
        self.fix_divisibility();
        let row_order: Vec<usize> = {
            let piv: Vec<usize> = self.pivots.iter().map(|p| p.0).collect();
            let set: BTreeSet<usize> = piv.iter().copied().collect();
            piv.into_iter().chain((0..rows).filter(|i| !set.contains(i))).collect()
        };
        let col_order: Vec<usize> = {
            let piv: Vec<usize> = self.pivots.iter().map(|p| p.1).collect();
            let set: BTreeSet<usize> = piv.iter().copied().collect();
            piv.into_iter().chain((0..cols).filter(|j| !set.contains(j))).collect()
        };
        let u_rows = self.u.take().expect("tracking U");
        let v_cols = self.v.take().expect("tracking V");
        let mut u = IntMatrix::zeros(rows, rows);
        for (new, &old) in row_order.iter().enumerate() {
            for (k, x) in &u_rows[old] {
                u.set(new, *k, x.clone());
            }
        }
        let mut v = IntMatrix::zeros(cols, cols);
        for (new, &old) in col_order.iter().enumerate() {
            for (k, x) in &v_cols[old] {
                v.set(*k, new, x.clone());
            }
        }
        let mut diag: Vec<BigInt> = self.pivots.into_iter().map(|p| p.2).collect();
        diag.resize(rows.min(cols), BigInt::zero());
        SmithForm { u, v, diag }
    }
}

/// Textbook dense Smith normal form: move the smallest entry of the trailing
/// block to the corner, reduce its row and column, and enforce divisibility
/// of the rest of the block before moving on.
pub fn smith_dense(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.to_dense();
    let mut u = IntMatrix::identity(m).to_dense();
    let mut v = IntMatrix::identity(n).to_dense();
    let row_axpy = |mat: &mut Vec<Vec<BigInt>>, k: usize, i: usize, c: &BigInt| {
        let src = mat[i].clone();
        for (dst, x) in mat[k].iter_mut().zip(&src) {
            *dst += c * x;
        }
    };
    let col_axpy = |mat: &mut Vec<Vec<BigInt>>, l: usize, j: usize, c: &BigInt| {
        for row in mat.iter_mut() {
            let x = row[j].clone();
            row[l] += c * x;
        }
    };
    let swap_cols = |mat: &mut Vec<Vec<BigInt>>, a: usize, b: usize| {
        for row in mat.iter_mut() {
            row.swap(a, b);
        }
    };
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !d[i][j].is_zero())
                .min_by_key(|&(i, j)| d[i][j].abs())
            else {
                break;
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let p = d[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = &d[i][t] / &p;
                if !q.is_zero() {
                    row_axpy(&mut d, i, t, &-&q);
                    row_axpy(&mut u, i, t, &-&q);
                }
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = &d[t][j] / &p;
                if !q.is_zero() {
                    col_axpy(&mut d, j, t, &-&q);
                    col_axpy(&mut v, j, t, &-&q);
                }
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    row_axpy(&mut d, t, i, &BigInt::one());
                    row_axpy(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            d[t].iter_mut().for_each(|x| *x = -&*x);
            u[t].iter_mut().for_each(|x| *x = -&*x);
        }
    }
    let diag = (0..m.min(n)).map(|t| d[t][t].clone()).collect();
    SmithForm { u: IntMatrix::from_dense(&u), v: IntMatrix::from_dense(&v), diag }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_form(a: &IntMatrix, f: &SmithForm) {
        assert_eq!(&(&f.u * a) * &f.v, f.d_matrix(), "U A V = D for {a:?}");
        assert!(f.u.is_unimodular() && f.v.is_unimodular());
        let nz: Vec<&BigInt> = f.diag.iter().filter(|d| !d.is_zero()).collect();
        assert!(f.diag.iter().skip(nz.len()).all(|d| d.is_zero()), "zeros last");
        assert!(nz.iter().all(|d| d.is_positive()));
        assert!(nz.windows(2).all(|w| w[1].is_multiple_of(w[0])), "chain {:?}", f.diag);
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64, max: i64) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if rng.gen_bool(density) {
                    m.set(i, j, BigInt::from(rng.gen_range(-max..=max)));
                }
            }
        }
        m
    }

    #[test]
    fn smith_examples() {
        for f in [smith_dense, smith_sparse] {
            let id = IntMatrix::identity(3);
            assert_eq!(f(&id).diag, ints(&[1, 1, 1]));
            let a = IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
            assert_eq!(f(&a).diag, ints(&[1, 6]));
            check_form(&a, &f(&a));
            let b = IntMatrix::from_dense(&[vec![2, 4], vec![4, 8]]);
            assert_eq!(f(&b).diag, ints(&[2, 0]));
            check_form(&b, &f(&b));
            let empty = IntMatrix::zeros(0, 0);
            assert!(f(&empty).diag.is_empty());
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&IntMatrix::zeros(2, 3)).len(), 3);
        assert_eq!(kernel_basis(&IntMatrix::from_dense(&[vec![1, -1]])), vec![ints(&[1, 1])]);
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_invariants(&IntMatrix::zeros(3, 0)), (3, vec![]));
        assert_eq!(cokernel_invariants(&IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]])), (0, ints(&[6])));
        assert_eq!(cokernel_invariants(&IntMatrix::from_dense(&[vec![1, -1]])), (0, vec![]));
    }

    #[test]
    fn solve_examples() {
        let b = ints(&[4, -2, 9]);
        assert_eq!(solve_in_image(&IntMatrix::identity(3), &b), Some(b.clone()));
        assert_eq!(solve_in_image(&IntMatrix::from_dense(&[vec![2]]), &ints(&[3])), None);
        let a = IntMatrix::from_dense(&[vec![1, -1]]);
        let x = solve_in_image(&a, &ints(&[5])).unwrap();
        assert_eq!(a.mul_vec(&x), ints(&[5]));
    }

    #[test]
    fn sparse_and_dense_agree_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let (r, c) = (rng.gen_range(0..7), rng.gen_range(0..7));
            let a = random_matrix(&mut rng, r, c, 0.5, 6);
            let (fs, fd) = (smith_sparse(&a), smith_dense(&a));
            check_form(&a, &fs);
            check_form(&a, &fd);
            assert_eq!(fs.diag, fd.diag, "{a:?}");
            assert_eq!(smith_diagonal(&a), fd.diag);
        }
    }

    // d_1 ... d_k equals the gcd of the k x k minors.
    #[test]
    fn determinantal_divisors() {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let a = random_matrix(&mut rng, 4, 4, 0.7, 9);
            let diag = smith_dense(&a).diag;
            let dense = a.to_dense();
            for k in 1..=4 {
                let mut g = BigInt::zero();
                for rs in subsets(4, k) {
                    for cs in subsets(4, k) {
                        let minor: Vec<Vec<BigInt>> =
                            rs.iter().map(|&i| cs.iter().map(|&j| dense[i][j].clone()).collect()).collect();
                        g = g.gcd(&IntMatrix::from_dense(&minor).det().unwrap());
                    }
                }
                let prod: BigInt = diag[..k].iter().product();
                assert_eq!(prod, g, "{a:?} k={k}");
            }
        }
    }

    #[test]
    fn kernel_is_saturated() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let (r, c) = (rng.gen_range(1..5), rng.gen_range(1..7));
            let a = random_matrix(&mut rng, r, c, 0.6, 4);
            let basis = kernel_basis(&a);
            assert_eq!(basis.len(), a.cols() - rank(&a));
            for x in &basis {
                assert!(a.mul_vec(x).iter().all(Zero::is_zero));
            }
            if !basis.is_empty() {
                // stacked basis has all invariant factors 1: its span is a direct summand
                let stacked = IntMatrix::from_dense(&basis);
                assert!(smith_diagonal(&stacked).iter().all(One::is_one));
            }
        }
    }

    #[test]
    fn large_unit_pivots_do_not_overflow() {
        let big: BigInt = BigInt::from(10).pow(40);
        let mut a = IntMatrix::zeros(2, 2);
        a.set(0, 0, big.clone());
        a.set(0, 1, &big + 1);
        a.set(1, 1, big.clone());
        let f = smith_sparse(&a);
        check_form(&a, &f);
        assert_eq!(f.diag[0], BigInt::one());
    }
}
