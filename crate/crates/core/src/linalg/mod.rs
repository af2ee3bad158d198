//! Exact linear algebra over the rationals with a certified multi-modular
//! fast path for ranks.
//!
//! Matrices are immutable sparse maps over [`Rat`]; elimination clears
//! denominators row by row and runs fraction-free over the integers. Every
//! operation is pure and deterministic, so values can be shared freely
//! across worker threads.

mod elim;
mod modular;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub(crate) use elim::{
    kernel_vectors, particular_solution, reduce_dense_mod_echelon, reduced_rows, Elimination,
    IntRow, IntOps, PivotRule,
};
pub(crate) use modular::certified_rank;

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Sparse vector: sorted `(coordinate, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, Rat)>;

/// Pivot profile of an elimination: `(row id, column)` in pivot order.
pub(crate) type PivotProfile = Vec<(usize, usize)>;

/// Arithmetic mode for rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithMode {
    /// Everything over the rationals (fraction-free integer elimination).
    Rational,
    /// Ranks certified by agreement across `primes` random word-size primes;
    /// kernels and echelons are still recomputed rationally.
    Modular { primes: usize },
}

#[derive(Debug, thiserror::Error)]
pub enum LinalgError {
    #[error(
        "modular rank not certified after {rounds} rounds of prime sampling; \
         increase the prime budget or use rational mode"
    )]
    ModularUncertified { rounds: usize },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
}

/// Immutable sparse matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| ((i, i), Rat::one())).collect();
        ExactMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    /// Build from `(row, col, value)` triplets; zero values are dropped,
    /// repeated positions accumulate.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Self {
        let mut entries: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of {rows}x{cols}");
            if v.is_zero() {
                continue;
            }
            let slot = entries.entry((r, c)).or_insert_with(Rat::zero);
            *slot += v;
            if slot.is_zero() {
                entries.remove(&(r, c));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> Rat {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(&(r, c), v)| ((c, r), v.clone()))
            .collect();
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![Rat::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            if !x[c].is_zero() {
                out[r] += v * &x[c];
            }
        }
        out
    }

    /// Rows as denominator-cleared integer sparse rows, tagged by row index.
    pub(crate) fn int_rows(&self) -> Vec<(usize, IntRow)> {
        let mut grouped: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            grouped[r].push((c, v.clone()));
        }
        grouped
            .into_iter()
            .enumerate()
            .filter(|(_, row)| !row.is_empty())
            .map(|(id, row)| (id, clear_denominators(&row)))
            .collect()
    }

    /// Rank over the matrix's field of fractions. In modular mode the value
    /// is certified by agreement across independent primes and equals the
    /// rational rank.
    pub fn rank(&self, mode: ArithMode) -> Result<usize, LinalgError> {
        Ok(self.rank_profile(mode)?.0)
    }

    /// Rank together with a pivot profile usable as elimination hints.
    pub(crate) fn rank_profile(
        &self,
        mode: ArithMode,
    ) -> Result<(usize, Option<PivotProfile>), LinalgError> {
        let rows = self.int_rows();
        match mode {
            ArithMode::Rational => {
                let e = elim::eliminate(rows, self.cols, None, PivotRule::Markowitz, &IntOps);
                Ok((e.rank(), Some(e.pivots)))
            }
            ArithMode::Modular { primes } => {
                let c = certified_rank(&rows, self.cols, primes, PivotRule::Markowitz)?;
                Ok((c.rank, c.profile))
            }
        }
    }

    pub(crate) fn eliminate_rows(
        &self,
        rule: PivotRule,
    ) -> Elimination<BigInt> {
        elim::eliminate(self.int_rows(), self.cols, None, rule, &IntOps)
    }

    /// Reduced-echelon basis of the null space; `dim = cols - rank`.
    ///
    /// The kernel is always computed rationally; in modular mode the
    /// certified pivot profile seeds the rational elimination.
    pub fn kernel_basis(&self, mode: ArithMode) -> Result<SubspaceBasis, LinalgError> {
        let rows = self.int_rows();
        let hints = match mode {
            ArithMode::Rational => None,
            ArithMode::Modular { primes } => {
                certified_rank(&rows, self.cols, primes, PivotRule::Markowitz)?.profile
            }
        };
        let rule = match &hints {
            Some(h) => PivotRule::Hints(h),
            None => PivotRule::Markowitz,
        };
        let e = elim::eliminate(rows, self.cols, None, rule, &IntOps);
        let vectors = kernel_vectors(&e);
        Ok(SubspaceBasis::from_spanning(self.cols, vectors))
    }

    /// Any solution of `self * x = rhs`, or `None` when `rhs` is not in the
    /// image. Free variables are set to zero, pivots chosen by the default
    /// deterministic rule.
    pub fn solve_particular(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        self.solve_particular_with(rhs, PivotRule::Markowitz)
    }

    pub(crate) fn solve_particular_with(
        &self,
        rhs: &[Rat],
        rule: PivotRule,
    ) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows, "rhs length must equal rows");
        let mut grouped: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            grouped[r].push((c, v.clone()));
        }
        let rows: Vec<(usize, IntRow)> = grouped
            .into_iter()
            .enumerate()
            .filter_map(|(id, mut row)| {
                if !rhs[id].is_zero() {
                    row.push((self.cols, rhs[id].clone()));
                }
                (!row.is_empty()).then(|| (id, clear_denominators(&row)))
            })
            .collect();
        let e = elim::eliminate(rows, self.cols, Some(self.cols), rule, &IntOps);
        particular_solution(&e)
    }
}

fn clear_denominators(row: &SparseVec) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    row.iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect()
}

/// A linear subspace given by its unique reduced-echelon basis: rows with
/// leading 1 at strictly increasing pivot coordinates and zeros above and
/// below each pivot. Two values represent the same subspace iff equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<SparseVec>,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    /// The full coordinate space.
    pub fn full(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim).map(|i| vec![(i, Rat::one())]).collect();
        SubspaceBasis {
            ambient_dim,
            vectors,
        }
    }

    /// Canonical basis of the span of the given vectors.
    pub fn from_spanning(
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = SparseVec>,
    ) -> Self {
        let rows: Vec<(usize, IntRow)> = vectors
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(|(id, v)| {
                debug_assert!(v.iter().all(|(c, _)| *c < ambient_dim));
                (id, clear_denominators(&v))
            })
            .collect();
        let e = elim::eliminate(rows, ambient_dim, None, PivotRule::LeftmostColumn, &IntOps);
        let vectors = reduced_rows(&e).into_iter().map(|(_, row)| row).collect();
        SubspaceBasis {
            ambient_dim,
            vectors,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    /// Pivot coordinate of each basis vector (ascending).
    pub fn leading_cols(&self) -> Vec<usize> {
        self.vectors.iter().map(|v| v[0].0).collect()
    }

    pub fn dense_vector(&self, i: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.ambient_dim];
        for (c, v) in &self.vectors[i] {
            out[*c] = v.clone();
        }
        out
    }

    /// Reduce `v` modulo the subspace in place (zeroes every pivot
    /// coordinate); the result is the canonical coset representative.
    pub fn reduce_dense(&self, v: &mut [Rat]) {
        assert_eq!(v.len(), self.ambient_dim);
        for row in &self.vectors {
            let pc = row[0].0;
            if v[pc].is_zero() {
                continue;
            }
            let factor = v[pc].clone();
            for (c, w) in row {
                v[*c] -= &factor * w;
            }
        }
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        let mut w = v.to_vec();
        self.reduce_dense(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, other: &SubspaceBasis) -> bool {
        other.ambient_dim == self.ambient_dim
            && other
                .vectors
                .iter()
                .all(|v| {
                    let mut dense = vec![Rat::zero(); self.ambient_dim];
                    for (c, x) in v {
                        dense[*c] = x.clone();
                    }
                    self.contains_vector(&dense)
                })
    }

    /// `dim(span(self) ∩ span(other)) = dim self + dim other - rank[self; other]`.
    pub fn intersection_dim(&self, other: &SubspaceBasis) -> Result<usize, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        let stacked = SubspaceBasis::from_spanning(
            self.ambient_dim,
            self.vectors.iter().chain(other.vectors.iter()).cloned(),
        );
        Ok(self.dim() + other.dim() - stacked.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn m(rows: usize, cols: usize, data: &[(usize, usize, i64)]) -> ExactMatrix {
        ExactMatrix::from_triplets(
            rows,
            cols,
            data.iter().map(|&(r, c, v)| (r, c, rat(v))),
        )
    }

    #[test]
    fn rank_empty_and_identity() {
        assert_eq!(m(0, 0, &[]).rank(ArithMode::Rational).unwrap(), 0);
        assert_eq!(
            ExactMatrix::identity(3).rank(ArithMode::Rational).unwrap(),
            3
        );
        assert_eq!(
            ExactMatrix::identity(3)
                .rank(ArithMode::Modular { primes: 3 })
                .unwrap(),
            3
        );
    }

    #[test]
    fn kernel_injective_and_zero() {
        let id2 = ExactMatrix::identity(2);
        assert_eq!(id2.kernel_basis(ArithMode::Rational).unwrap().dim(), 0);
        let z = ExactMatrix::zero(2, 3);
        let k = z.kernel_basis(ArithMode::Rational).unwrap();
        assert_eq!(k.dim(), 3);
        assert_eq!(k, SubspaceBasis::full(3));
    }

    #[test]
    fn kernel_vectors_annihilate_exactly() {
        let a = m(
            3,
            4,
            &[
                (0, 0, 2),
                (0, 1, 3),
                (0, 3, -1),
                (1, 1, 5),
                (1, 2, 7),
                (2, 0, 2),
                (2, 1, 8),
                (2, 2, 7),
                (2, 3, -1),
            ],
        );
        let k = a.kernel_basis(ArithMode::Rational).unwrap();
        assert_eq!(k.dim() + a.rank(ArithMode::Rational).unwrap(), a.cols());
        for i in 0..k.dim() {
            let v = k.dense_vector(i);
            assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_identity_and_no_solution() {
        let id = ExactMatrix::identity(3);
        let e1 = vec![rat(1), rat(0), rat(0)];
        assert_eq!(id.solve_particular(&e1).unwrap(), e1);
        let z = ExactMatrix::zero(2, 2);
        assert!(z.solve_particular(&[rat(1), rat(0)]).is_none());
        // consistent solve residual is exactly zero
        let a = m(2, 3, &[(0, 0, 2), (0, 2, 1), (1, 1, 3)]);
        let rhs = vec![rat(5), rat(6)];
        let x = a.solve_particular(&rhs).unwrap();
        assert_eq!(a.mul_vec(&x), rhs);
    }

    #[test]
    fn intersection_examples() {
        let a = SubspaceBasis::from_spanning(2, vec![vec![(0, rat(1)), (1, rat(1))]]);
        let b = SubspaceBasis::from_spanning(2, vec![vec![(0, rat(2)), (1, rat(2))]]);
        assert_eq!(a.intersection_dim(&b).unwrap(), 1);
        assert_eq!(a, b);

        let x = SubspaceBasis::from_spanning(2, vec![vec![(0, rat(1))]]);
        let y = SubspaceBasis::from_spanning(2, vec![vec![(1, rat(1))]]);
        assert_eq!(x.intersection_dim(&y).unwrap(), 0);
        assert_eq!(x.intersection_dim(&x).unwrap(), x.dim());

        let wrong = SubspaceBasis::full(3);
        assert!(matches!(
            x.intersection_dim(&wrong),
            Err(LinalgError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn reduced_echelon_is_canonical() {
        // Same plane, two spanning sets -> identical bases.
        let a = SubspaceBasis::from_spanning(
            3,
            vec![
                vec![(0, rat(1)), (1, rat(2)), (2, rat(3))],
                vec![(0, rat(2)), (1, rat(4)), (2, rat(7))],
            ],
        );
        let b = SubspaceBasis::from_spanning(
            3,
            vec![
                vec![(0, rat(3)), (1, rat(6)), (2, rat(10))],
                vec![(0, rat(-1)), (1, rat(-2)), (2, rat(1))],
            ],
        );
        assert_eq!(a, b);
        assert_eq!(a.leading_cols(), vec![0, 2]);
    }
}
