//! Graded slices of the Koszul complex `(Ω^•, df∧)`, its top two cohomology
//! dimensions, and the page-one / page-two differentials of the pole order
//! spectral sequence.
//!
//! Conventions, fixed once: a slice basis element is a pair (wedge set `S`,
//! monomial `m`), wedge sets in lex order, monomials graded-lex; wedging by
//! `dx_i` on the left carries the sign `(-1)^{#{s in S : s < i}}`. The de
//! Rham differential uses the same sign, so `d(df∧ω) = -df∧dω` holds on the
//! nose and all page data is well defined.
//!
//! Representatives: the image of `df∧` from below is eliminated once per
//! degree; its pivot coordinates are removed and the cohomology classes are
//! kernel vectors supported on the complementary coordinates, reduced to
//! canonical echelon form. Quotient classes use echelon complements.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::linalg::{self, ArithMode, ExactMatrix, LinalgError, PivotRule, Rat, SubspaceBasis};
use crate::poly::{dim_r, Exponents, HomPoly, MonomialBasis};

#[derive(Debug, thiserror::Error)]
pub enum KoszulError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("zig-zag lift failed at degree {k}: dω is not in the image of df∧")]
    LiftFailed { k: i64 },
    #[error("the supplied slice at degree {k} does not contain the Jacobian slice")]
    InconsistentSlice { k: i64 },
}

/// Ordered basis of the degree-`k` slice of `Ω^j`: pairs (wedge set,
/// monomial of degree `k - j`), wedge sets lex, then monomials graded-lex.
#[derive(Clone, Debug)]
pub struct FormSliceBasis {
    num_vars: usize,
    j: usize,
    k: i64,
    wedges: Vec<Vec<u8>>,
    monomials: MonomialBasis,
}

impl FormSliceBasis {
    pub fn new(num_vars: usize, j: usize, k: i64) -> Self {
        let wedges = if j > num_vars {
            Vec::new()
        } else {
            combinations(num_vars as u8, j)
        };
        let monomials = MonomialBasis::new(num_vars, k - j as i64);
        FormSliceBasis {
            num_vars,
            j,
            k,
            wedges,
            monomials,
        }
    }

    pub fn len(&self) -> usize {
        self.wedges.len() * self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn form_degree(&self) -> usize {
        self.j
    }

    pub fn graded_degree(&self) -> i64 {
        self.k
    }

    pub fn wedges(&self) -> &[Vec<u8>] {
        &self.wedges
    }

    pub fn monomials(&self) -> &MonomialBasis {
        &self.monomials
    }

    pub fn index(&self, wedge_idx: usize, mono_idx: usize) -> usize {
        wedge_idx * self.monomials.len() + mono_idx
    }

    pub fn decompose(&self, idx: usize) -> (usize, usize) {
        (idx / self.monomials.len(), idx % self.monomials.len())
    }

    fn wedge_index(&self, wedge: &[u8]) -> usize {
        self.wedges
            .binary_search_by(|probe| probe.as_slice().cmp(wedge))
            .expect("wedge set in range")
    }
}

fn combinations(n: u8, j: usize) -> Vec<Vec<u8>> {
    fn rec(start: u8, n: u8, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if start >= n {
            return;
        }
        for i in start..=(n - left as u8) {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if j <= n as usize {
        rec(0, n, j, &mut Vec::with_capacity(j), &mut out);
    }
    out
}

/// Sign of `dx_i ∧ dx_S` in our convention and the resulting sorted set.
fn wedge_insert(s: &[u8], i: u8) -> Option<(i64, Vec<u8>)> {
    if s.contains(&i) {
        return None;
    }
    let below = s.iter().filter(|&&x| x < i).count();
    let sign = if below % 2 == 0 { 1 } else { -1 };
    let mut t = s.to_vec();
    t.push(i);
    t.sort_unstable();
    Some((sign, t))
}

/// Matrix of `df∧ : Ω^j_k → Ω^{j+1}_{k+d}` in the slice bases. Empty slices
/// give matrices with zero rows or columns.
pub fn koszul_matrix(f: &HomPoly, j: usize, k: i64) -> ExactMatrix {
    let partials = f.partials();
    koszul_matrix_with(f.num_vars(), &partials, f.degree() as i64, j, k)
}

pub(crate) fn koszul_matrix_with(
    num_vars: usize,
    partials: &[HomPoly],
    d: i64,
    j: usize,
    k: i64,
) -> ExactMatrix {
    let src = FormSliceBasis::new(num_vars, j, k);
    let tgt = FormSliceBasis::new(num_vars, j + 1, k + d);
    let mut triplets = Vec::new();
    if !src.is_empty() && !tgt.is_empty() {
        for (wi, s) in src.wedges.iter().enumerate() {
            for i in 0..num_vars as u8 {
                let Some((sign, t)) = wedge_insert(s, i) else {
                    continue;
                };
                let twi = tgt.wedge_index(&t);
                let sign = Rat::from_integer(BigInt::from(sign));
                for (mi, m) in src.monomials.monomials().iter().enumerate() {
                    let col = src.index(wi, mi);
                    for (e, c) in partials[i as usize].terms() {
                        let target: Exponents =
                            e.iter().zip(m.iter()).map(|(a, b)| a + b).collect();
                        let row = tgt.index(
                            twi,
                            tgt.monomials.index_of(&target).expect("degree bookkeeping"),
                        );
                        triplets.push((row, col, &sign * c));
                    }
                }
            }
        }
    }
    ExactMatrix::from_triplets(tgt.len(), src.len(), triplets)
}

/// Apply the de Rham differential to a sparse `Ω^j_k` vector; dense result
/// in `Ω^{j+1}_k` coordinates.
pub(crate) fn de_rham_apply(
    src: &FormSliceBasis,
    tgt: &FormSliceBasis,
    vec: &[(usize, Rat)],
) -> Vec<Rat> {
    debug_assert_eq!(src.graded_degree(), tgt.graded_degree());
    debug_assert_eq!(tgt.form_degree(), src.form_degree() + 1);
    let mut out = vec![Rat::zero(); tgt.len()];
    for (idx, c) in vec {
        let (wi, mi) = src.decompose(*idx);
        let s = &src.wedges[wi];
        let m = src.monomials.exponents(mi);
        for i in 0..src.num_vars as u8 {
            if m[i as usize] == 0 {
                continue;
            }
            let Some((sign, t)) = wedge_insert(s, i) else {
                continue;
            };
            let mut e = m.clone();
            e[i as usize] -= 1;
            let row = tgt.index(
                tgt.wedge_index(&t),
                tgt.monomials.index_of(&e).expect("degree bookkeeping"),
            );
            out[row] += c * Rat::from_integer(BigInt::from(sign * i64::from(m[i as usize])));
        }
    }
    out
}

/// Per-degree data of the spectral sequence pipeline.
pub(crate) struct DegreeData {
    pub dim_omega_np1: usize,
    /// Representatives of the middle cohomology at degree `k`, as canonical
    /// echelon rows in `Ω^n_k` coordinates supported off the image pivots.
    pub sn_reps: SubspaceBasis,
    /// Forward echelon of the image of `df∧ : Ω^n_{k-d} → Ω^{n+1}_k`.
    pub im_echelon: linalg::Elimination<BigInt>,
    /// Non-pivot coordinates of `Ω^{n+1}_k`: coordinates of the top quotient.
    pub m_coords: Vec<usize>,
    /// Page-one differential, `dim M_k × dim ˢN_k`.
    pub d1: ExactMatrix,
    /// Canonical basis of the image of `d1` inside the quotient coordinates.
    pub d1_image: SubspaceBasis,
    /// Kernel of `d1` in representative coordinates.
    pub sn2_coords: SubspaceBasis,
    /// Surviving quotient coordinates after dividing by the `d1` image
    /// (positions within `m_coords`).
    pub m2_coords: Vec<usize>,
}

impl DegreeData {
    pub fn sn_dim(&self) -> usize {
        self.sn_reps.dim()
    }

    pub fn m_dim(&self) -> usize {
        self.m_coords.len()
    }

    pub fn sn2_dim(&self) -> usize {
        self.sn2_coords.dim()
    }

    pub fn m2_dim(&self) -> usize {
        self.m2_coords.len()
    }

    /// Lift the page-two kernel classes to explicit `Ω^n_k` vectors.
    pub fn sn2_reps(&self) -> Vec<Vec<(usize, Rat)>> {
        let mut out = Vec::with_capacity(self.sn2_coords.dim());
        for coeffs in self.sn2_coords.vectors() {
            let mut dense = vec![Rat::zero(); self.sn_reps.ambient_dim()];
            for (rep_idx, c) in coeffs {
                for (pos, v) in &self.sn_reps.vectors()[*rep_idx] {
                    dense[*pos] += c * v;
                }
            }
            out.push(sparsify(&dense));
        }
        out
    }

    /// Project an `Ω^{n+1}_k` vector to quotient coordinates.
    pub fn project_to_m(&self, mut dense: Vec<Rat>) -> Vec<Rat> {
        linalg::reduce_dense_mod_echelon(&mut dense, &self.im_echelon);
        self.m_coords.iter().map(|&c| dense[c].clone()).collect()
    }
}

fn sparsify(dense: &[Rat]) -> Vec<(usize, Rat)> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// One page of the pole order spectral sequence over a degree window.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: u8,
    pub sn_dims: std::collections::BTreeMap<i64, usize>,
    pub m_dims: std::collections::BTreeMap<i64, usize>,
    /// Differential at each degree `k`, mapping into degree `k - (r-1)d`.
    pub d_matrices: std::collections::BTreeMap<i64, ExactMatrix>,
    pub representatives: std::collections::BTreeMap<i64, PageReps>,
}

/// Representative bases for one degree of a page.
#[derive(Clone, Debug)]
pub struct PageReps {
    /// Middle-cohomology representatives in `Ω^n_k` coordinates.
    pub sn: SubspaceBasis,
    /// Top-quotient representatives in `Ω^{n+1}_k` coordinates (unit
    /// vectors at the surviving echelon-complement positions).
    pub m: SubspaceBasis,
}

/// Computation engine for one polynomial. Per-degree results are cached;
/// all operations are deterministic and safe to call from parallel workers.
pub struct KoszulEngine {
    f: HomPoly,
    partials: Vec<HomPoly>,
    n: usize,
    d: i64,
    mode: ArithMode,
    cache: Mutex<HashMap<i64, Arc<DegreeData>>>,
}

impl KoszulEngine {
    pub fn new(f: HomPoly, mode: ArithMode) -> Self {
        let partials = f.partials();
        let n = f.proj_dim();
        let d = f.degree() as i64;
        KoszulEngine {
            f,
            partials,
            n,
            d,
            mode,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn polynomial(&self) -> &HomPoly {
        &self.f
    }

    pub fn proj_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn mode(&self) -> ArithMode {
        self.mode
    }

    /// Default degree window end: covers the support of the gamma
    /// coefficients, the stabilization of the middle cohomology and both
    /// spectra supports.
    pub fn default_kmax(&self) -> i64 {
        (self.n as i64 + 1) * (self.d - 1) + 2 * self.d
    }

    pub fn koszul_matrix(&self, j: usize, k: i64) -> ExactMatrix {
        koszul_matrix_with(self.f.num_vars(), &self.partials, self.d, j, k)
    }

    /// Rank of `df∧ : Ω^j_k → Ω^{j+1}_{k+d}` in the engine's mode.
    pub fn koszul_rank(&self, j: usize, k: i64) -> Result<usize, KoszulError> {
        Ok(self.koszul_matrix(j, k).rank(self.mode)?)
    }

    /// `dim H^n(K_f)_k`.
    pub fn dim_sn(&self, k: i64) -> Result<usize, KoszulError> {
        Ok(self.degree_data(k)?.sn_dim())
    }

    /// `dim H^{n+1}(K_f)_k`.
    pub fn dim_m(&self, k: i64) -> Result<usize, KoszulError> {
        Ok(self.degree_data(k)?.m_dim())
    }

    /// Diagnostic: does the top cohomology agree with the Jacobian ring
    /// slice computed independently from spans of `∂f · monomial`?
    pub fn check_m_is_r_mod_j(&self, k: i64) -> Result<bool, KoszulError> {
        let km = k - self.n as i64 - 1;
        let target = MonomialBasis::new(self.f.num_vars(), km);
        let mults = MonomialBasis::new(self.f.num_vars(), km - (self.d - 1));
        let mut vectors = Vec::new();
        for p in &self.partials {
            if p.is_zero() {
                continue;
            }
            for m in mults.monomials() {
                vectors.push(target.sparse_vector_of(&p.mul_monomial(m)));
            }
        }
        let j_slice = SubspaceBasis::from_spanning(target.len(), vectors);
        Ok(self.dim_m(k)? == dim_r(self.n, km) - j_slice.dim())
    }

    /// Matrix of the page-one differential `[ω] ↦ [dω]` on the stored bases.
    pub fn d1_matrix(&self, k: i64) -> Result<ExactMatrix, KoszulError> {
        Ok(self.degree_data(k)?.d1.clone())
    }

    /// Matrix of the page-two differential via the zig-zag
    /// `dω = df∧η ↦ [dη]`, mapping degree `k` into degree `k - d`.
    pub fn d2_matrix(&self, k: i64) -> Result<ExactMatrix, KoszulError> {
        self.d2_matrix_with(k, PivotRule::Markowitz)
    }

    /// Same, with an explicit pivot rule for the lift; the resulting classes
    /// are lift-independent, which tests assert by comparing rules.
    pub(crate) fn d2_matrix_with(
        &self,
        k: i64,
        rule: PivotRule,
    ) -> Result<ExactMatrix, KoszulError> {
        let data = self.degree_data(k)?;
        let prev = self.degree_data(k - self.d)?;
        let rows = prev.m2_dim();
        let cols = data.sn2_dim();
        if cols == 0 {
            return Ok(ExactMatrix::zero(rows, 0));
        }
        let src = FormSliceBasis::new(self.f.num_vars(), self.n, k);
        let tgt = FormSliceBasis::new(self.f.num_vars(), self.n + 1, k);
        let src_prev = FormSliceBasis::new(self.f.num_vars(), self.n, k - self.d);
        let tgt_prev = FormSliceBasis::new(self.f.num_vars(), self.n + 1, k - self.d);
        let c_matrix = self.koszul_matrix(self.n, k - self.d);
        let mut triplets = Vec::new();
        for (col, omega) in data.sn2_reps().into_iter().enumerate() {
            let d_omega = de_rham_apply(&src, &tgt, &omega);
            let eta = c_matrix
                .solve_particular_with(&d_omega, rule)
                .ok_or(KoszulError::LiftFailed { k })?;
            let d_eta = de_rham_apply(&src_prev, &tgt_prev, &sparsify(&eta));
            let mut class = prev.project_to_m(d_eta);
            prev.d1_image.reduce_dense(&mut class);
            for (i, &pos) in prev.m2_coords.iter().enumerate() {
                if !class[pos].is_zero() {
                    triplets.push((i, col, class[pos].clone()));
                }
            }
        }
        Ok(ExactMatrix::from_triplets(rows, cols, triplets))
    }

    /// Dimensions `(dim M'_k, dim M''_k)` of the finite-support part of the
    /// top cohomology and its quotient, given the radical-ideal slice in
    /// degree `k - n - 1`.
    pub fn mprime_dims(
        &self,
        k: i64,
        i_slice: &SubspaceBasis,
    ) -> Result<(usize, usize), KoszulError> {
        let km = k - self.n as i64 - 1;
        self.check_jacobian_contained(km, i_slice)?;
        let mpp = dim_r(self.n, km) - i_slice.dim();
        Ok((self.dim_m(k)? - mpp, mpp))
    }

    /// Image of the radical-ideal slice inside the quotient coordinates:
    /// the subspace `M'_k` of `M_k`.
    pub fn mprime_subspace(
        &self,
        k: i64,
        i_slice: &SubspaceBasis,
    ) -> Result<SubspaceBasis, KoszulError> {
        let km = k - self.n as i64 - 1;
        self.check_jacobian_contained(km, i_slice)?;
        let data = self.degree_data(k)?;
        let vectors: Vec<_> = i_slice
            .vectors()
            .iter()
            .map(|v| {
                let mut dense = vec![Rat::zero(); data.dim_omega_np1];
                for (c, x) in v {
                    dense[*c] = x.clone();
                }
                sparsify(&data.project_to_m(dense))
            })
            .collect();
        Ok(SubspaceBasis::from_spanning(data.m_dim(), vectors))
    }

    /// Canonical basis of the image of the page-one differential in `M_k`.
    pub fn d1_image(&self, k: i64) -> Result<SubspaceBasis, KoszulError> {
        Ok(self.degree_data(k)?.d1_image.clone())
    }

    fn check_jacobian_contained(
        &self,
        km: i64,
        i_slice: &SubspaceBasis,
    ) -> Result<(), KoszulError> {
        let target = MonomialBasis::new(self.f.num_vars(), km);
        let mults = MonomialBasis::new(self.f.num_vars(), km - (self.d - 1));
        for p in &self.partials {
            if p.is_zero() {
                continue;
            }
            for m in mults.monomials() {
                let v = target.vector_of(&p.mul_monomial(m));
                if !i_slice.contains_vector(&v) {
                    return Err(KoszulError::InconsistentSlice { k: km });
                }
            }
        }
        Ok(())
    }

    /// Assemble page one or two over a degree window.
    pub fn page(
        &self,
        r: u8,
        k_range: std::ops::RangeInclusive<i64>,
    ) -> Result<SpectralPage, KoszulError> {
        assert!(r == 1 || r == 2, "only pages one and two exist here");
        let ks: Vec<i64> = k_range.collect();
        let computed: Vec<(i64, Arc<DegreeData>)> = ks
            .par_iter()
            .map(|&k| self.degree_data(k).map(|d| (k, d)))
            .collect::<Result<_, _>>()?;
        let mut page = SpectralPage {
            r,
            sn_dims: Default::default(),
            m_dims: Default::default(),
            d_matrices: Default::default(),
            representatives: Default::default(),
        };
        for (k, data) in computed {
            if r == 1 {
                page.sn_dims.insert(k, data.sn_dim());
                page.m_dims.insert(k, data.m_dim());
                page.d_matrices.insert(k, data.d1.clone());
                let m_units = SubspaceBasis::from_spanning(
                    data.dim_omega_np1,
                    data.m_coords.iter().map(|&c| vec![(c, rat_one())]),
                );
                page.representatives.insert(
                    k,
                    PageReps {
                        sn: data.sn_reps.clone(),
                        m: m_units,
                    },
                );
            } else {
                page.sn_dims.insert(k, data.sn2_dim());
                page.m_dims.insert(k, data.m2_dim());
                page.d_matrices.insert(k, self.d2_matrix(k)?);
                let sn2 =
                    SubspaceBasis::from_spanning(data.sn_reps.ambient_dim(), data.sn2_reps());
                let m_units = SubspaceBasis::from_spanning(
                    data.dim_omega_np1,
                    data.m2_coords
                        .iter()
                        .map(|&i| vec![(data.m_coords[i], rat_one())]),
                );
                page.representatives.insert(k, PageReps { sn: sn2, m: m_units });
            }
        }
        Ok(page)
    }

    pub(crate) fn degree_data(&self, k: i64) -> Result<Arc<DegreeData>, KoszulError> {
        if let Some(hit) = self.cache.lock().unwrap().get(&k) {
            return Ok(hit.clone());
        }
        let data = Arc::new(self.compute_degree(k, self.mode)?);
        self.cache.lock().unwrap().insert(k, data.clone());
        Ok(data)
    }

    fn compute_degree(&self, k: i64, mode: ArithMode) -> Result<DegreeData, KoszulError> {
        let num_vars = self.f.num_vars();
        let omega_n = FormSliceBasis::new(num_vars, self.n, k);
        let omega_np1 = FormSliceBasis::new(num_vars, self.n + 1, k);
        let dim_omega_n = omega_n.len();
        let dim_omega_np1 = omega_np1.len();

        // Image of df∧ from Ω^{n-1}_{k-d}: rank and pivot coordinates.
        let b = self.koszul_matrix(self.n - 1, k - self.d).transpose();
        let (rank_b, b_pivot_cols) = image_pivots(&b, mode)?;

        // Complementary coordinates of Ω^n_k. The kernel of df∧ restricted
        // to these columns is isomorphic to the middle cohomology slice.
        let mut is_pivot = vec![false; dim_omega_n];
        for &c in &b_pivot_cols {
            is_pivot[c] = true;
        }
        let complement: Vec<usize> = (0..dim_omega_n).filter(|&c| !is_pivot[c]).collect();

        let a = self.koszul_matrix(self.n, k);
        let a_sub = restrict_columns(&a, &complement);
        let a_elim = a_sub.eliminate_rows(PivotRule::Markowitz);
        let rank_a = a_elim.rank();
        if let ArithMode::Modular { primes } = mode {
            // The restricted rational rank must reproduce the certified full
            // rank; otherwise the modular pivot profile was not a valid
            // complement and this degree is redone rationally.
            let certified = a.rank(ArithMode::Modular { primes })?;
            if certified != rank_a {
                return self.compute_degree(k, ArithMode::Rational);
            }
        }
        let kernel = linalg::kernel_vectors(&a_elim);
        let sn_reps = SubspaceBasis::from_spanning(
            dim_omega_n,
            kernel.into_iter().map(|v| {
                v.into_iter()
                    .map(|(i, x)| (complement[i], x))
                    .collect::<Vec<_>>()
            }),
        );
        debug_assert_eq!(
            sn_reps.dim() + rank_a + rank_b,
            dim_omega_n,
            "middle cohomology bookkeeping at degree {k}"
        );

        // Echelon of the image of df∧ : Ω^n_{k-d} → Ω^{n+1}_k.
        let c = self.koszul_matrix(self.n, k - self.d).transpose();
        let im_echelon = c.eliminate_rows(PivotRule::Markowitz);
        let mut pivot_np1 = vec![false; dim_omega_np1];
        for &(_, col) in &im_echelon.pivots {
            pivot_np1[col] = true;
        }
        let m_coords: Vec<usize> = (0..dim_omega_np1).filter(|&c| !pivot_np1[c]).collect();

        let mut data = DegreeData {
            dim_omega_np1,
            sn_reps,
            im_echelon,
            m_coords,
            d1: ExactMatrix::zero(0, 0),
            d1_image: SubspaceBasis::empty(0),
            sn2_coords: SubspaceBasis::empty(0),
            m2_coords: Vec::new(),
        };

        // Page-one differential on the stored bases.
        let mut triplets = Vec::new();
        for (col, rep) in data.sn_reps.vectors().iter().enumerate() {
            let image = de_rham_apply(&omega_n, &omega_np1, rep);
            let class = data.project_to_m(image);
            for (row, v) in class.iter().enumerate() {
                if !v.is_zero() {
                    triplets.push((row, col, v.clone()));
                }
            }
        }
        let d1 = ExactMatrix::from_triplets(data.m_dim(), data.sn_dim(), triplets);

        let d1_image = SubspaceBasis::from_spanning(
            data.m_dim(),
            (0..d1.cols()).map(|c| {
                (0..d1.rows())
                    .filter_map(|r| {
                        let v = d1.entry(r, c);
                        (!v.is_zero()).then_some((r, v))
                    })
                    .collect::<Vec<_>>()
            }),
        );
        let sn2_coords = d1.kernel_basis(ArithMode::Rational)?;
        let image_pivots: std::collections::HashSet<usize> =
            d1_image.leading_cols().into_iter().collect();
        let m2_coords: Vec<usize> = (0..data.m_dim())
            .filter(|i| !image_pivots.contains(i))
            .collect();

        data.d1 = d1;
        data.d1_image = d1_image;
        data.sn2_coords = sn2_coords;
        data.m2_coords = m2_coords;
        Ok(data)
    }
}

/// Rank and pivot coordinates of a row space (rows span the image).
fn image_pivots(m: &ExactMatrix, mode: ArithMode) -> Result<(usize, Vec<usize>), KoszulError> {
    match mode {
        ArithMode::Rational => {
            let e = m.eliminate_rows(PivotRule::Markowitz);
            Ok((e.rank(), e.pivot_cols()))
        }
        ArithMode::Modular { primes } => {
            let rows = m.int_rows();
            let cert = linalg::certified_rank(&rows, m.cols(), primes, PivotRule::Markowitz)?;
            match cert.profile {
                Some(profile) => {
                    let mut cols: Vec<usize> = profile.iter().map(|&(_, c)| c).collect();
                    cols.sort_unstable();
                    Ok((cert.rank, cols))
                }
                None => {
                    // Profiles disagreed across primes; use the rational
                    // elimination for this matrix instead.
                    let e = m.eliminate_rows(PivotRule::Markowitz);
                    Ok((e.rank(), e.pivot_cols()))
                }
            }
        }
    }
}

fn rat_one() -> Rat {
    Rat::from_integer(1.into())
}

fn restrict_columns(m: &ExactMatrix, cols: &[usize]) -> ExactMatrix {
    let mut position = HashMap::with_capacity(cols.len());
    for (i, &c) in cols.iter().enumerate() {
        position.insert(c, i);
    }
    ExactMatrix::from_triplets(
        m.rows(),
        cols.len(),
        m.iter()
            .filter_map(|(r, c, v)| position.get(&c).map(|&i| (r, i, v.clone()))),
    )
}
