//! Sparse kernels over pluggable semirings, primitivity and power periodicity.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, Digraph};

/// Tropical infinity. Saturating addition keeps it absorbing.
pub const INF: u32 = u32::MAX;

/// Rows per rayon task in row-parallel kernels.
const ROW_CHUNK: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SemiringKind {
    MinPlusNatInf,
    PlusTimesBignat,
    PlusTimesFloat,
}

pub trait Semiring: Clone + PartialEq + Debug + Send + Sync + 'static {
    const KIND: SemiringKind;
    /// Additive identity, absorbing for multiplication.
    fn zero() -> Self;
    /// Multiplicative identity.
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }
}

/// (min, +) over the naturals with a saturating infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MinPlus(pub u32);

impl MinPlus {
    pub const INF: MinPlus = MinPlus(INF);

    pub fn finite(self) -> Option<u32> {
        (self.0 != INF).then_some(self.0)
    }
}

impl Semiring for MinPlus {
    const KIND: SemiringKind = SemiringKind::MinPlusNatInf;
    fn zero() -> Self {
        MinPlus(INF)
    }
    fn one() -> Self {
        MinPlus(0)
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        MinPlus(self.0.min(rhs.0))
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        MinPlus(self.0.saturating_add(rhs.0))
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == INF
    }
    #[inline]
    fn add_assign(&mut self, rhs: &Self) {
        self.0 = self.0.min(rhs.0);
    }
}

/// (+, ×) over exact naturals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Count(pub BigUint);

impl Semiring for Count {
    const KIND: SemiringKind = SemiringKind::PlusTimesBignat;
    fn zero() -> Self {
        Count(BigUint::zero())
    }
    fn one() -> Self {
        Count(BigUint::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        Count(&self.0 + &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Count(&self.0 * &rhs.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add_assign(&mut self, rhs: &Self) {
        self.0 += &rhs.0;
    }
}

/// (+, ×) over doubles, used with explicit normalisation.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Real(pub f64);

impl Semiring for Real {
    const KIND: SemiringKind = SemiringKind::PlusTimesFloat;
    fn zero() -> Self {
        Real(0.0)
    }
    fn one() -> Self {
        Real(1.0)
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        Real(self.0 + rhs.0)
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        Real(self.0 * rhs.0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }
    #[inline]
    fn add_assign(&mut self, rhs: &Self) {
        self.0 += rhs.0;
    }
}

/// Square CSR matrix. Absent entries are the semiring zero; stored entries never are.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<S>,
}

impl<S: Semiring> SparseMatrix<S> {
    /// Builds from unsorted row lists; duplicates are merged with `add`.
    pub fn from_rows(dim: usize, rows: Vec<Vec<(u32, S)>>) -> Self {
        assert_eq!(rows.len(), dim, "row count must equal dimension");
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals: Vec<S> = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(c, _)| c);
            let start = cols.len();
            for (c, v) in row {
                assert!((c as usize) < dim, "column out of range");
                if cols.len() > start && *cols.last().unwrap() == c {
                    vals.last_mut().unwrap().add_assign(&v);
                } else {
                    cols.push(c);
                    vals.push(v);
                }
            }
            let mut w = start;
            for r in start..cols.len() {
                if !vals[r].is_zero() {
                    cols.swap(w, r);
                    vals.swap(w, r);
                    w += 1;
                }
            }
            cols.truncate(w);
            vals.truncate(w);
            row_ptr.push(cols.len());
        }
        SparseMatrix { dim, row_ptr, cols, vals }
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let dim = rows.len();
        let lists = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), dim, "matrix must be square");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j as u32, v.clone()))
                    .collect()
            })
            .collect();
        Self::from_rows(dim, lists)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_rows(dim, (0..dim).map(|i| vec![(i as u32, S::one())]).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, i: usize) -> (&[u32], &[S]) {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.cols[a..b], &self.vals[a..b])
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        let (c, v) = self.row(i);
        match c.binary_search(&(j as u32)) {
            Ok(k) => v[k].clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        (0..self.dim)
            .map(|i| {
                let mut r = vec![S::zero(); self.dim];
                let (c, v) = self.row(i);
                for (&j, x) in c.iter().zip(v) {
                    r[j as usize] = x.clone();
                }
                r
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.dim + 1];
        for &c in &self.cols {
            counts[c as usize + 1] += 1;
        }
        for i in 0..self.dim {
            counts[i + 1] += counts[i];
        }
        let row_ptr = counts.clone();
        let mut cols = vec![0u32; self.nnz()];
        let mut vals = vec![S::zero(); self.nnz()];
        let mut fill = counts;
        for i in 0..self.dim {
            let (c, v) = self.row(i);
            for (&j, x) in c.iter().zip(v) {
                let slot = fill[j as usize];
                cols[slot] = i as u32;
                vals[slot] = x.clone();
                fill[j as usize] += 1;
            }
        }
        SparseMatrix { dim: self.dim, row_ptr, cols, vals }
    }

    /// Same support, values mapped through `f`.
    pub fn map<T: Semiring>(&self, f: impl Fn(&S) -> T) -> SparseMatrix<T> {
        let rows = (0..self.dim)
            .map(|i| {
                let (c, v) = self.row(i);
                c.iter().zip(v).map(|(&j, x)| (j, f(x))).collect()
            })
            .collect();
        SparseMatrix::from_rows(self.dim, rows)
    }

    /// Successor lists of the support digraph.
    pub fn support(&self) -> Vec<Vec<u32>> {
        (0..self.dim).map(|i| self.row(i).0.to_vec()).collect()
    }

    /// Restriction to the rows and columns flagged in `keep`, renumbered densely.
    pub fn restrict(&self, keep: &[bool]) -> (Self, Vec<usize>) {
        let kept: Vec<usize> = (0..self.dim).filter(|&i| keep[i]).collect();
        let mut new_id = vec![u32::MAX; self.dim];
        for (k, &i) in kept.iter().enumerate() {
            new_id[i] = k as u32;
        }
        let rows = kept
            .iter()
            .map(|&i| {
                let (c, v) = self.row(i);
                c.iter()
                    .zip(v)
                    .filter(|(&j, _)| keep[j as usize])
                    .map(|(&j, x)| (new_id[j as usize], x.clone()))
                    .collect()
            })
            .collect();
        (Self::from_rows(kept.len(), rows), kept)
    }
}

impl<S: Semiring> Digraph for SparseMatrix<S> {
    fn order(&self) -> usize {
        self.dim
    }
    fn successors(&self, v: usize) -> &[u32] {
        self.row(v).0
    }
}

/// Row vector times matrix: `out[j] = ⊕_i v[i] ⊗ M[i][j]`.
pub fn vec_mat<S: Semiring>(v: &[S], m: &SparseMatrix<S>) -> Vec<S> {
    assert_eq!(v.len(), m.dim, "dimension mismatch");
    let mut out = vec![S::zero(); m.dim];
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (c, vals) = m.row(i);
        for (&j, y) in c.iter().zip(vals) {
            out[j as usize].add_assign(&x.mul(y));
        }
    }
    out
}

/// Matrix times column vector, row-parallel: `out[i] = ⊕_j M[i][j] ⊗ v[j]`.
pub fn mat_vec<S: Semiring>(m: &SparseMatrix<S>, v: &[S]) -> Vec<S> {
    assert_eq!(v.len(), m.dim, "dimension mismatch");
    (0..m.dim)
        .into_par_iter()
        .with_min_len(ROW_CHUNK)
        .map(|i| {
            let (c, vals) = m.row(i);
            let mut acc = S::zero();
            for (&j, y) in c.iter().zip(vals) {
                acc.add_assign(&y.mul(&v[j as usize]));
            }
            acc
        })
        .collect()
}

/// Row-parallel sparse product. Fails once the result holds more than `budget` entries.
pub fn mat_mul<S: Semiring>(
    a: &SparseMatrix<S>,
    b: &SparseMatrix<S>,
    budget: usize,
) -> Result<SparseMatrix<S>> {
    assert_eq!(a.dim, b.dim, "dimension mismatch");
    let dim = a.dim;
    let rows: Vec<Vec<(u32, S)>> = (0..dim)
        .into_par_iter()
        .with_min_len(ROW_CHUNK)
        .map_init(
            || (vec![S::zero(); dim], Vec::<u32>::new()),
            |(acc, touched), i| {
                let (ac, av) = a.row(i);
                for (&k, x) in ac.iter().zip(av) {
                    let (bc, bv) = b.row(k as usize);
                    for (&j, y) in bc.iter().zip(bv) {
                        let slot = &mut acc[j as usize];
                        if slot.is_zero() {
                            touched.push(j);
                        }
                        slot.add_assign(&x.mul(y));
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let row = touched
                    .iter()
                    .map(|&j| (j, std::mem::replace(&mut acc[j as usize], S::zero())))
                    .collect();
                touched.clear();
                row
            },
        )
        .collect();
    let fill: usize = rows.iter().map(Vec::len).sum();
    if fill > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    Ok(SparseMatrix::from_rows(dim, rows))
}

/// Dense row-major (min,+) matrix, used for powers that fill up quickly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMinPlus {
    dim: usize,
    data: Vec<u32>,
}

impl DenseMinPlus {
    pub fn infinite(dim: usize) -> Self {
        DenseMinPlus { dim, data: vec![INF; dim * dim] }
    }

    /// Wraps row-major entries.
    pub fn from_row_major(dim: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), dim * dim, "entry count must be dim²");
        DenseMinPlus { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        let mut d = Self::infinite(dim);
        for i in 0..dim {
            d.data[i * dim + i] = 0;
        }
        d
    }

    pub fn from_sparse(m: &SparseMatrix<MinPlus>) -> Self {
        let mut d = Self::infinite(m.dim());
        for i in 0..m.dim() {
            let (c, v) = m.row(i);
            for (&j, x) in c.iter().zip(v) {
                d.data[i * m.dim() + j as usize] = x.0;
            }
        }
        d
    }

    pub fn to_sparse(&self) -> SparseMatrix<MinPlus> {
        let rows = (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != INF)
                    .map(|(j, &x)| (j as u32, MinPlus(x)))
                    .collect()
            })
            .collect();
        SparseMatrix::from_rows(self.dim, rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Smallest finite entry.
    pub fn min_entry(&self) -> Option<u32> {
        self.data.iter().copied().filter(|&x| x != INF).min()
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|&x| x != INF)
    }

    /// Subtracts `c` from every finite entry.
    pub fn shifted_down(&self, c: u32) -> Self {
        let data = self.data.iter().map(|&x| if x == INF { INF } else { x - c }).collect();
        DenseMinPlus { dim: self.dim, data }
    }

    /// `self ⊙ m` with a sparse right factor.
    pub fn mul_sparse(&self, m: &SparseMatrix<MinPlus>) -> Self {
        assert_eq!(self.dim, m.dim(), "dimension mismatch");
        let dim = self.dim;
        let mut data = vec![INF; dim * dim];
        data.par_chunks_mut(dim.max(1)).enumerate().for_each(|(i, out)| {
            for (k, &x) in self.row(i).iter().enumerate() {
                if x == INF {
                    continue;
                }
                let (c, v) = m.row(k);
                for (&j, y) in c.iter().zip(v) {
                    let s = x.saturating_add(y.0);
                    let slot = &mut out[j as usize];
                    if s < *slot {
                        *slot = s;
                    }
                }
            }
        });
        DenseMinPlus { dim, data }
    }

    /// Dense product `self ⊙ other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let dim = self.dim;
        let mut data = vec![INF; dim * dim];
        data.par_chunks_mut(dim.max(1)).enumerate().for_each(|(i, out)| {
            for (k, &x) in self.row(i).iter().enumerate() {
                if x == INF {
                    continue;
                }
                for (slot, &y) in out.iter_mut().zip(other.row(k)) {
                    let s = x.saturating_add(y);
                    if s < *slot {
                        *slot = s;
                    }
                }
            }
        });
        DenseMinPlus { dim, data }
    }

    /// `min_{i,j} A[i][j] + A[j][i]`, the tropical trace of `A²`.
    pub fn trace_of_square(&self) -> u32 {
        let mut best = INF;
        for i in 0..self.dim {
            for j in 0..self.dim {
                best = best.min(self.get(i, j).saturating_add(self.get(j, i)));
            }
        }
        best
    }

    fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.data.hash(&mut h);
        h.finish()
    }
}

/// `M^{l+r} = M^l + p` for all `l ≥ start` (matrix form), or the analogous
/// relation on a value sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Recurrence {
    pub start: usize,
    pub period: usize,
    pub increment: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitivity {
    Yes(usize),
    No,
    Unknown,
}

/// Boolean powers are skipped above this many states.
const PRIMITIVITY_BITSET_LIMIT: usize = 40_000;

/// Smallest `k ≤ cap` with `M^k` entrywise finite, or a proof that none exists.
pub fn is_primitive<S: Semiring>(m: &SparseMatrix<S>, cap: usize) -> Primitivity {
    if !graph::is_irreducible_aperiodic(m) {
        return Primitivity::No;
    }
    let n = m.dim();
    if n > PRIMITIVITY_BITSET_LIMIT {
        return Primitivity::Unknown;
    }
    let words = n.div_ceil(64);
    let full_last = if n % 64 == 0 { u64::MAX } else { (1u64 << (n % 64)) - 1 };
    let is_full = |row: &[u64]| {
        row[..words - 1].iter().all(|&w| w == u64::MAX) && row[words - 1] == full_last
    };
    let mut reach = vec![0u64; n * words];
    for i in 0..n {
        for &j in m.row(i).0 {
            reach[i * words + j as usize / 64] |= 1 << (j % 64);
        }
    }
    for k in 1..=cap {
        if reach.chunks(words).all(is_full) {
            return Primitivity::Yes(k);
        }
        let prev = reach;
        reach = vec![0u64; n * words];
        reach.par_chunks_mut(words).enumerate().for_each(|(i, out)| {
            for &j in m.row(i).0 {
                let src = &prev[j as usize * words..(j as usize + 1) * words];
                for (o, s) in out.iter_mut().zip(src) {
                    *o |= s;
                }
            }
        });
    }
    Primitivity::Unknown
}

/// Memory for retained powers before the window stops growing on its own.
const WINDOW_BYTES: usize = 1 << 30;

/// Detects `M^{l+r} = M^l + p` by hashing normalised powers `M^l − min(M^l)`.
pub fn detect_recurrence(m: &SparseMatrix<MinPlus>, max_exponent: usize) -> Result<Recurrence> {
    if !graph::is_irreducible_aperiodic(m) {
        return Err(Error::NotPrimitive);
    }
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut window: VecDeque<(usize, u32, DenseMinPlus)> = VecDeque::new();
    let bytes = m.dim() * m.dim() * std::mem::size_of::<u32>();
    let mut capacity = (WINDOW_BYTES / bytes.max(1)).clamp(2, 64);
    let mut power = DenseMinPlus::from_sparse(m);
    for l in 1..=max_exponent {
        let low = power.min_entry().ok_or(Error::NotPrimitive)?;
        let norm = power.shifted_down(low);
        let key = norm.fingerprint();
        if let Some(earlier) = seen.get(&key) {
            for &l0 in earlier {
                match window.iter().find(|(e, _, _)| *e == l0) {
                    Some((_, low0, m0)) if *m0 == norm => {
                        return Ok(Recurrence {
                            start: l0,
                            period: l - l0,
                            increment: i64::from(low) - i64::from(*low0),
                        });
                    }
                    Some(_) => {}
                    None => capacity = capacity.max(2 * (l - l0)),
                }
            }
        }
        seen.entry(key).or_default().push(l);
        window.push_back((l, low, norm));
        while window.len() > capacity {
            window.pop_front();
        }
        if l < max_exponent {
            power = power.mul_sparse(m);
        }
    }
    Err(Error::NotFound(max_exponent))
}

/// Checks `M^{l+r} = M^l + p` for every `l` in `[start, start + span]`.
pub fn replays(m: &SparseMatrix<MinPlus>, rec: &Recurrence, span: usize) -> bool {
    let Ok(p) = u32::try_from(rec.increment) else {
        return false;
    };
    let last = rec.start + span + rec.period;
    let mut powers = Vec::with_capacity(last);
    let mut power = DenseMinPlus::from_sparse(m);
    for l in 1..=last {
        powers.push(power.clone());
        if l < last {
            power = power.mul_sparse(m);
        }
    }
    (rec.start..=rec.start + span).all(|l| {
        let a = &powers[l - 1];
        let b = &powers[l + rec.period - 1];
        a.data
            .iter()
            .zip(&b.data)
            .all(|(&x, &y)| if x == INF { y == INF } else { y != INF && y == x + p })
    })
}

/// Perron root by power iteration on `T + I` with L1 normalisation from the uniform vector.
pub fn spectral_radius(m: &SparseMatrix<Real>, tol: f64, max_iters: usize) -> Result<f64> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    // Iterates with T + I so periodic classes still converge; x keeps unit L1 norm.
    let mut x = vec![Real(1.0 / n as f64); n];
    let mut prev = f64::NAN;
    let mut stable = 0;
    for _ in 0..max_iters {
        let y = mat_vec(m, &x);
        let norm: f64 = y.iter().zip(&x).map(|(a, b)| a.0 + b.0).sum();
        let lambda = norm - 1.0;
        if lambda <= 0.0 {
            return Ok(0.0);
        }
        x = y.into_iter().zip(&x).map(|(a, b)| Real((a.0 + b.0) / norm)).collect();
        stable = if (lambda - prev).abs() <= tol * lambda { stable + 1 } else { 0 };
        if stable >= 3 {
            return Ok(lambda);
        }
        prev = lambda;
    }
    Err(Error::NoConvergence(max_iters))
}

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITERS: usize = 10_000;

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(rows: &[&[u32]]) -> SparseMatrix<MinPlus> {
        SparseMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&x| MinPlus(x)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn min_plus_vector_product() {
        let m = mp(&[&[0, INF], &[1, 0]]);
        assert_eq!(vec_mat(&[MinPlus(3), MinPlus(5)], &m), vec![MinPlus(3), MinPlus(5)]);
        let id = SparseMatrix::<MinPlus>::identity(2);
        let v = vec![MinPlus(7), MinPlus(INF)];
        assert_eq!(vec_mat(&v, &id), v);
        assert_eq!(mat_vec(&id, &v), v);
    }

    #[test]
    fn plus_times_vector_product() {
        let ones = SparseMatrix::from_dense(&vec![vec![Count(1u32.into()); 2]; 2]);
        let v = vec![Count(1u32.into()); 2];
        assert_eq!(vec_mat(&v, &ones), vec![Count(2u32.into()); 2]);
    }

    #[test]
    fn upper_triangular_square_is_fixed() {
        let a = mp(&[&[0, 1], &[INF, 0]]);
        assert_eq!(mat_mul(&a, &a, usize::MAX).unwrap(), a);
        let id = SparseMatrix::identity(2);
        assert_eq!(mat_mul(&a, &id, usize::MAX).unwrap(), a);
        assert!(matches!(mat_mul(&a, &a, 2), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn saturation_never_wraps() {
        assert_eq!(MinPlus(INF - 1).mul(&MinPlus(5)), MinPlus::INF);
        assert_eq!(MinPlus::INF.mul(&MinPlus(0)), MinPlus::INF);
        assert_eq!(MinPlus::INF.add(&MinPlus(4)), MinPlus(4));
    }

    #[test]
    fn primitivity_examples() {
        assert_eq!(is_primitive(&mp(&[&[0, 1], &[2, 3]]), 10), Primitivity::Yes(1));
        assert_eq!(is_primitive(&mp(&[&[INF, 0], &[0, INF]]), 10), Primitivity::No);
        assert_eq!(is_primitive(&mp(&[&[INF, 0], &[0, 0]]), 10), Primitivity::Yes(2));
        assert_eq!(is_primitive(&mp(&[&[INF, 0], &[0, 0]]), 1), Primitivity::Unknown);
    }

    #[test]
    fn recurrence_examples() {
        let one = Recurrence { start: 1, period: 1, increment: 0 };
        assert_eq!(detect_recurrence(&mp(&[&[0]]), 10).unwrap(), one);
        assert_eq!(
            detect_recurrence(&mp(&[&[1]]), 10).unwrap(),
            Recurrence { start: 1, period: 1, increment: 1 }
        );
        assert_eq!(detect_recurrence(&mp(&[&[INF, 0], &[0, INF]]), 10), Err(Error::NotPrimitive));
        let m = mp(&[&[INF, 3], &[1, 5]]);
        let rec = detect_recurrence(&m, 50).unwrap();
        assert!(replays(&m, &rec, 3 * rec.period));
    }

    #[test]
    fn spectral_radius_examples() {
        let r = |rows: &[&[f64]]| {
            let d: Vec<Vec<Real>> = rows.iter().map(|r| r.iter().map(|&x| Real(x)).collect()).collect();
            spectral_radius(&SparseMatrix::from_dense(&d), DEFAULT_TOL, DEFAULT_MAX_ITERS).unwrap()
        };
        assert!((r(&[&[2.0]]) - 2.0).abs() < 1e-12);
        assert!((r(&[&[1.0, 1.0], &[1.0, 1.0]]) - 2.0).abs() < 1e-12);
        assert!((r(&[&[1.0, 1.0], &[1.0, 0.0]]) - 1.618_033_988_7).abs() < 1e-9);
    }

    #[test]
    fn transpose_and_restrict() {
        let m = mp(&[&[INF, 3, 4], &[1, INF, INF], &[INF, 2, 0]]);
        assert_eq!(m.transpose().to_dense(), mp(&[&[INF, 1, INF], &[3, INF, 2], &[4, INF, 0]]).to_dense());
        let (r, kept) = m.restrict(&[true, false, true]);
        assert_eq!(kept, vec![0, 2]);
        assert_eq!(r, mp(&[&[INF, 4], &[INF, 0]]));
    }

    #[test]
    fn dense_products_agree_with_sparse() {
        let m = mp(&[&[INF, 3, 4], &[1, INF, 2], &[INF, 2, 0]]);
        let d = DenseMinPlus::from_sparse(&m);
        let sq = mat_mul(&m, &m, usize::MAX).unwrap();
        assert_eq!(d.mul(&d).to_sparse(), sq);
        assert_eq!(d.mul_sparse(&m).to_sparse(), sq);
        assert_eq!(d.trace_of_square(), 0);
    }
}
