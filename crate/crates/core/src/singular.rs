//! Singular-point machinery: certification that every singularity is an
//! ordinary double point, Taylor-evaluation matrices at the points, defects,
//! symbolic and ordinary ideal power slices, and the graded quotient
//! dimensions compared by the two conjectural descriptions.
//!
//! Singular points are input and certified, never discovered: a claimed
//! point must annihilate every partial, have a nondegenerate dehomogenized
//! Hessian, and the list must be complete, which is checked through the
//! stabilized dimension of the Jacobian ring. Points with irrational
//! coordinates are unsupported.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::koszul::KoszulError;
use crate::linalg::{ArithMode, ExactMatrix, LinalgError, Rat, SubspaceBasis};
use crate::poly::{dim_r, Exponents, HomPoly, MonomialBasis};

#[derive(Debug, thiserror::Error)]
pub enum SingularError {
    #[error("projective point must have a nonzero coordinate")]
    ZeroPoint,
    #[error("points {first} and {second} coincide after normalization")]
    DuplicatePoint { first: usize, second: usize },
    #[error("point {point} is not a singular point: a partial derivative does not vanish")]
    NotSingular { point: String },
    #[error("point {point} is a degenerate singular point: Hessian rank {rank} < {expected}")]
    Degenerate {
        point: String,
        rank: usize,
        expected: usize,
    },
    #[error(
        "Jacobian ring dimension stabilizes at {stabilized} but {claimed} points were supplied; \
         the singular-point list is incomplete or wrong"
    )]
    IncompleteList { stabilized: usize, claimed: usize },
    #[error(
        "Jacobian ring dimensions {dims:?} do not stabilize on the detection window \
         starting at degree {start}; the singular locus is not isolated"
    )]
    NotIsolated { start: i64, dims: Vec<usize> },
    #[error("generator stopping rule failed at degree {degree}; enlarge the generator window")]
    GeneratorWindowExceeded { degree: i64 },
    #[error(
        "quotient denominator not contained in the numerator at degree {degree}; \
         the singular-point list is suspect"
    )]
    ContainmentViolated { degree: i64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}

/// A rational point of projective space, normalized so that its chart
/// coordinate (the first nonzero one) equals 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Rat>,
    chart: usize,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self, SingularError> {
        let chart = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(SingularError::ZeroPoint)?;
        let scale = coords[chart].clone();
        let coords = coords.into_iter().map(|c| c / &scale).collect();
        Ok(ProjPoint { coords, chart })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn num_vars(&self) -> usize {
        self.coords.len()
    }

    /// Affine coordinates in the canonical chart (chart variable dropped).
    pub fn affine(&self) -> Vec<Rat> {
        self.coords
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.chart)
            .map(|(_, c)| c.clone())
            .collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(":"))
    }
}

/// Certificate that the hypersurface has only ordinary double points, all
/// listed.
#[derive(Clone, Debug)]
pub struct OdpCertificate {
    pub points: Vec<ProjPoint>,
    pub tau: usize,
    pub hessian_ranks: Vec<usize>,
    /// Degree window `[T, T + n + 1]` used for stabilization detection.
    pub stabilization_window: (i64, i64),
    pub rj_dims_on_window: Vec<usize>,
}

/// Verify that every claimed point is an ordinary double point of `f = 0`
/// and that the list is complete.
pub fn certify_condition_a(
    f: &HomPoly,
    claimed_points: &[ProjPoint],
    mode: ArithMode,
) -> Result<OdpCertificate, SingularError> {
    let n = f.proj_dim();
    let d = f.degree() as i64;
    for p in claimed_points {
        assert_eq!(p.num_vars(), f.num_vars(), "point has wrong coordinate count");
    }
    for (i, p) in claimed_points.iter().enumerate() {
        for (j, q) in claimed_points.iter().enumerate().skip(i + 1) {
            if p == q {
                return Err(SingularError::DuplicatePoint { first: i, second: j });
            }
        }
    }

    let partials = f.partials();
    let mut hessian_ranks = Vec::with_capacity(claimed_points.len());
    for p in claimed_points {
        let singular = f.eval_homogeneous(p.coords()).is_zero()
            && partials
                .iter()
                .all(|pf| pf.eval_homogeneous(p.coords()).is_zero());
        if !singular {
            return Err(SingularError::NotSingular {
                point: p.to_string(),
            });
        }
        let rank = hessian_rank(f, p)?;
        if rank < n {
            return Err(SingularError::Degenerate {
                point: p.to_string(),
                rank,
                expected: n,
            });
        }
        hessian_ranks.push(rank);
    }

    // Beyond the top degree of the Jacobian ring of a smooth hypersurface,
    // dim (R/J)_k counts the global Tjurina number of an isolated singular
    // locus, which for nodes is the number of nodes.
    let start = (n as i64 + 1) * (d - 2) + 1;
    let window: Vec<i64> = (start..=start + n as i64 + 1).collect();
    let mut rj_dims = Vec::with_capacity(window.len());
    for &k in &window {
        rj_dims.push(jacobian_ring_dim(f, k, mode)?);
    }
    let stabilized = rj_dims[0];
    if rj_dims.iter().any(|&v| v != stabilized) {
        return Err(SingularError::NotIsolated {
            start,
            dims: rj_dims,
        });
    }
    if stabilized != claimed_points.len() {
        return Err(SingularError::IncompleteList {
            stabilized,
            claimed: claimed_points.len(),
        });
    }

    Ok(OdpCertificate {
        points: claimed_points.to_vec(),
        tau: stabilized,
        hessian_ranks,
        stabilization_window: (start, start + n as i64 + 1),
        rj_dims_on_window: rj_dims,
    })
}

/// Rank of the Hessian of the dehomogenized polynomial at the point's
/// affine image (n by n over the non-chart variables).
fn hessian_rank(f: &HomPoly, p: &ProjPoint) -> Result<usize, SingularError> {
    let vars: Vec<usize> = (0..f.num_vars()).filter(|&v| v != p.chart()).collect();
    let mut triplets = Vec::new();
    for (a, &va) in vars.iter().enumerate() {
        for (b, &vb) in vars.iter().enumerate() {
            let value = f.partial(va).partial(vb).eval_homogeneous(p.coords());
            triplets.push((a, b, value));
        }
    }
    let h = ExactMatrix::from_triplets(vars.len(), vars.len(), triplets);
    Ok(h.rank(ArithMode::Rational)?)
}

/// `dim (R/J)_k` with the Jacobian ideal slice spanned by `∂f · monomial`.
pub fn jacobian_ring_dim(f: &HomPoly, k: i64, mode: ArithMode) -> Result<usize, SingularError> {
    let n = f.proj_dim();
    let target = MonomialBasis::new(f.num_vars(), k);
    let mults = MonomialBasis::new(f.num_vars(), k - (f.degree() as i64 - 1));
    let mut triplets = Vec::new();
    let mut row = 0usize;
    for p in f.partials() {
        if p.is_zero() {
            continue;
        }
        for m in mults.monomials() {
            for (c, v) in target.sparse_vector_of(&p.mul_monomial(m)) {
                triplets.push((row, c, v));
            }
            row += 1;
        }
    }
    let span = ExactMatrix::from_triplets(row, target.len(), triplets);
    Ok(dim_r(n, k) - span.rank(mode)?)
}

/// Exhaustive search for rational singular points with coordinates in
/// `{0, ±1, ±2, ±1/2}`. Heuristic convenience only: it can miss nodes with
/// other coordinates, so its output still has to be certified.
pub fn heuristic_singular_search(f: &HomPoly) -> Vec<ProjPoint> {
    let values: Vec<Rat> = vec![
        Rat::zero(),
        Rat::one(),
        -Rat::one(),
        Rat::from_integer(2.into()),
        -Rat::from_integer(2.into()),
        Rat::new(1.into(), 2.into()),
        Rat::new((-1).into(), 2.into()),
    ];
    let nv = f.num_vars();
    let partials = f.partials();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut stack = vec![Vec::<Rat>::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == nv {
            let Ok(p) = ProjPoint::new(prefix) else {
                continue;
            };
            if !seen.insert(p.to_string()) {
                continue;
            }
            if f.eval_homogeneous(p.coords()).is_zero()
                && partials
                    .iter()
                    .all(|g| g.eval_homogeneous(p.coords()).is_zero())
            {
                out.push(p);
            }
            continue;
        }
        for v in &values {
            let mut next = prefix.clone();
            next.push(v.clone());
            stack.push(next);
        }
    }
    out
}

/// Evaluation matrix: rows indexed by (point, multi-index of order `< i` in
/// the point's chart variables), columns by the monomials of `R_k`; the
/// entry is the multi-index partial of the dehomogenized monomial at the
/// point's affine image.
pub fn beta_matrix(points: &[ProjPoint], i: usize, k: i64, num_vars: usize) -> ExactMatrix {
    assert!(i >= 1, "vanishing order must be at least 1");
    let cols_basis = MonomialBasis::new(num_vars, k);
    let n = num_vars - 1;
    let mut mu_list: Vec<Exponents> = Vec::new();
    for order in 0..i as i64 {
        mu_list.extend(
            MonomialBasis::new(n, order)
                .monomials()
                .iter()
                .cloned(),
        );
    }
    let rows = points.len() * mu_list.len();
    let mut triplets = Vec::new();
    for (pi, p) in points.iter().enumerate() {
        let affine = p.affine();
        for (mi, mu) in mu_list.iter().enumerate() {
            let row = pi * mu_list.len() + mi;
            for (col, e) in cols_basis.monomials().iter().enumerate() {
                let dehom: Vec<u16> = e
                    .iter()
                    .enumerate()
                    .filter(|&(v, _)| v != p.chart())
                    .map(|(_, &x)| x)
                    .collect();
                let v = taylor_entry(&dehom, mu, &affine);
                if !v.is_zero() {
                    triplets.push((row, col, v));
                }
            }
        }
    }
    ExactMatrix::from_triplets(rows, cols_basis.len(), triplets)
}

/// `∂^mu x^e` evaluated at the affine point (falling-factorial coefficient).
fn taylor_entry(e: &[u16], mu: &[u16], affine: &[Rat]) -> Rat {
    let mut acc = Rat::one();
    for v in 0..e.len() {
        let (a, m) = (e[v] as i64, mu[v] as i64);
        if m > a {
            return Rat::zero();
        }
        for t in 0..m {
            acc *= Rat::from_integer((a - t).into());
        }
        let rem = (a - m) as usize;
        if rem > 0 {
            if affine[v].is_zero() {
                return Rat::zero();
            }
            for _ in 0..rem {
                acc *= &affine[v];
            }
        }
    }
    acc
}

/// `def_k = τ - rank` of the order-one evaluation at degree `k`.
pub fn defect(
    points: &[ProjPoint],
    k: i64,
    num_vars: usize,
    mode: ArithMode,
) -> Result<usize, SingularError> {
    if points.is_empty() {
        return Ok(0);
    }
    let b = beta_matrix(points, 1, k, num_vars);
    Ok(points.len() - b.rank(mode)?)
}

/// Basis of the forms of degree `k` vanishing to order at least `i` at all
/// points. `i <= 0` returns the full slice.
pub fn symbolic_power_slice(points: &[ProjPoint], i: i64, k: i64) -> SubspaceBasis {
    let num_vars = points
        .first()
        .map(|p| p.num_vars())
        .expect("need at least one point to fix the ring; use the _in variant");
    symbolic_power_slice_in(points, i, k, num_vars)
}

pub fn symbolic_power_slice_in(
    points: &[ProjPoint],
    i: i64,
    k: i64,
    num_vars: usize,
) -> SubspaceBasis {
    let ambient = dim_r(num_vars - 1, k);
    if k < 0 {
        return SubspaceBasis::empty(ambient);
    }
    if i <= 0 || points.is_empty() {
        return SubspaceBasis::full(ambient);
    }
    let b = beta_matrix(points, i as usize, k, num_vars);
    b.kernel_basis(ArithMode::Rational)
        .expect("rational kernel cannot fail")
}

/// Basis of the degree-`k` slice of the Jacobian ideal.
pub fn jacobian_slice(f: &HomPoly, k: i64) -> SubspaceBasis {
    let target = MonomialBasis::new(f.num_vars(), k);
    let mults = MonomialBasis::new(f.num_vars(), k - (f.degree() as i64 - 1));
    let mut vectors = Vec::new();
    for p in f.partials() {
        if p.is_zero() {
            continue;
        }
        for m in mults.monomials() {
            vectors.push(target.sparse_vector_of(&p.mul_monomial(m)));
        }
    }
    SubspaceBasis::from_spanning(target.len(), vectors)
}

/// Span of `∂f · A` in degree `k`, for a slice `A` in degree `k - d + 1`.
pub fn product_with_j(f: &HomPoly, a: &SubspaceBasis, k: i64) -> SubspaceBasis {
    let target = MonomialBasis::new(f.num_vars(), k);
    let source = MonomialBasis::new(f.num_vars(), k - (f.degree() as i64 - 1));
    assert_eq!(
        a.ambient_dim(),
        source.len(),
        "slice lives in the wrong degree"
    );
    let partials = f.partials();
    let mut vectors = Vec::new();
    for v in a.vectors() {
        let g = source.poly_of(v);
        for p in &partials {
            if p.is_zero() {
                continue;
            }
            let prod = p.multiply(&g);
            if !prod.is_zero() {
                vectors.push(target.sparse_vector_of(&prod));
            }
        }
    }
    SubspaceBasis::from_spanning(target.len(), vectors)
}

/// The radical ideal of the singular points with its minimal generators,
/// computed once and reused for true-power slices.
pub struct PointIdeal {
    points: Vec<ProjPoint>,
    num_vars: usize,
    generators: Vec<HomPoly>,
    cache: Mutex<HashMap<(i64, i64), SubspaceBasis>>,
}

impl PointIdeal {
    /// Compute minimal generators through degree `τ + 1` and verify the
    /// stopping rule `R_1 · I_k = I_{k+1}` at the window edge.
    pub fn new(points: Vec<ProjPoint>, num_vars: usize) -> Result<Self, SingularError> {
        let tau = points.len() as i64;
        let mut generators: Vec<HomPoly> = Vec::new();
        let mut prev: Option<SubspaceBasis> = None;
        for k in 0..=tau + 1 {
            let cur = symbolic_power_slice_in(&points, 1, k, num_vars);
            let grown = grow_by_linear_forms(prev.as_ref(), k, num_vars);
            if grown.dim() < cur.dim() {
                // Reduce slice vectors against the grown span; survivors are
                // new minimal generators.
                let basis = MonomialBasis::new(num_vars, k);
                let mut span = grown;
                for v in cur.vectors() {
                    let mut dense = vec![Rat::zero(); basis.len()];
                    for (c, x) in v {
                        dense[*c] = x.clone();
                    }
                    span.reduce_dense(&mut dense);
                    if dense.iter().any(|x| !x.is_zero()) {
                        let sparse: Vec<(usize, Rat)> = dense
                            .iter()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(i, x)| (i, x.clone()))
                            .collect();
                        generators.push(basis.poly_of(&sparse));
                        span = SubspaceBasis::from_spanning(
                            basis.len(),
                            span.vectors().iter().cloned().chain([sparse]),
                        );
                        if span.dim() == cur.dim() {
                            break;
                        }
                    }
                }
            }
            prev = Some(cur);
        }
        // Stopping rule at the window edge.
        let edge = tau + 2;
        let grown = grow_by_linear_forms(prev.as_ref(), edge, num_vars);
        let cur = symbolic_power_slice_in(&points, 1, edge, num_vars);
        if grown.dim() != cur.dim() {
            return Err(SingularError::GeneratorWindowExceeded { degree: edge });
        }
        Ok(PointIdeal {
            points,
            num_vars,
            generators,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn tau(&self) -> usize {
        self.points.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[HomPoly] {
        &self.generators
    }

    /// Degree-`k` slice of the radical ideal.
    pub fn radical_slice(&self, k: i64) -> SubspaceBasis {
        symbolic_power_slice_in(&self.points, 1, k, self.num_vars)
    }

    /// Degree-`k` slice of the `i`-th symbolic power.
    pub fn symbolic_slice(&self, i: i64, k: i64) -> SubspaceBasis {
        symbolic_power_slice_in(&self.points, i, k, self.num_vars)
    }

    /// Degree-`k` slice of the true ideal power, as the span of products of
    /// minimal generators with lower power slices.
    pub fn power_slice(&self, a: i64, k: i64) -> SubspaceBasis {
        let ambient = dim_r(self.num_vars - 1, k);
        if k < 0 {
            return SubspaceBasis::empty(ambient);
        }
        if a <= 0 {
            return SubspaceBasis::full(ambient);
        }
        if let Some(hit) = self.cache.lock().unwrap().get(&(a, k)) {
            return hit.clone();
        }
        let basis = MonomialBasis::new(self.num_vars, k);
        let mut vectors = Vec::new();
        for g in &self.generators {
            let dg = g.degree() as i64;
            if dg > k {
                continue;
            }
            let sub = self.power_slice(a - 1, k - dg);
            let sub_basis = MonomialBasis::new(self.num_vars, k - dg);
            for v in sub.vectors() {
                let prod = g.multiply(&sub_basis.poly_of(v));
                if !prod.is_zero() {
                    vectors.push(basis.sparse_vector_of(&prod));
                }
            }
        }
        let result = SubspaceBasis::from_spanning(ambient, vectors);
        self.cache.lock().unwrap().insert((a, k), result.clone());
        result
    }
}

fn grow_by_linear_forms(
    prev: Option<&SubspaceBasis>,
    k: i64,
    num_vars: usize,
) -> SubspaceBasis {
    let basis = MonomialBasis::new(num_vars, k);
    let Some(prev) = prev else {
        return SubspaceBasis::empty(basis.len());
    };
    let prev_basis = MonomialBasis::new(num_vars, k - 1);
    let mut vectors = Vec::new();
    for v in prev.vectors() {
        let g = prev_basis.poly_of(v);
        for var in 0..num_vars {
            let mut e = vec![0u16; num_vars];
            e[var] = 1;
            vectors.push(basis.sparse_vector_of(&g.mul_monomial(&e)));
        }
    }
    SubspaceBasis::from_spanning(basis.len(), vectors)
}

/// Which ideal powers enter the graded quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WotzlawVariant {
    /// True ideal powers.
    Powers,
    /// Symbolic powers (order-of-vanishing slices).
    Symbolic,
}

/// Dimension of the graded quotient `(I^{q-m+1} / I^{q-m} J)` (or its
/// symbolic variant) in degree `(q+1)d - n - 1`, with `m = [n/2]`.
pub fn wotzlaw_quotient_dim(
    f: &HomPoly,
    ideal: &PointIdeal,
    q: i64,
    variant: WotzlawVariant,
) -> Result<usize, SingularError> {
    let n = f.proj_dim() as i64;
    let d = f.degree() as i64;
    let m = n.div_euclid(2);
    let degree = (q + 1) * d - n - 1;
    let a = q - m;
    let slice = |power: i64, k: i64| -> SubspaceBasis {
        match variant {
            WotzlawVariant::Powers => ideal.power_slice(power, k),
            WotzlawVariant::Symbolic => ideal.symbolic_slice(power, k),
        }
    };
    let numerator = slice(a + 1, degree);
    let denominator = product_with_j(f, &slice(a, degree - d + 1), degree);
    if !numerator.contains(&denominator) {
        return Err(SingularError::ContainmentViolated { degree });
    }
    Ok(numerator.dim() - denominator.dim())
}
