//! Graded polynomial ring plumbing: monomial enumeration, homogeneous
//! polynomials with exact rational coefficients, differentiation, products
//! and dehomogenized evaluation.
//!
//! The monomial order is graded-lexicographic with earlier variables more
//! significant, descending within a degree (`x0^k` first). It is fixed once
//! here so every matrix and every reported basis is reproducible bit for
//! bit.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::linalg::Rat;

/// Exponent vector; length equals the number of variables.
pub type Exponents = Vec<u16>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial mixes degrees {0} and {1}")]
    NotHomogeneous(usize, usize),
    #[error("chart coordinate {chart} vanishes at the point")]
    BadChart { chart: usize },
    #[error("a homogeneous polynomial needs at least 2 variables and degree at least 1")]
    TooSmall,
}

/// `dim R_k = C(k+n, n)` for `k >= 0`, else 0, in `n+1` variables.
pub fn dim_r(n: usize, k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    binomial(k as u128 + n as u128, n as u128) as usize
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Homogeneous polynomial in `num_vars` variables with rational
/// coefficients. The zero polynomial is allowed and keeps a nominal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    num_vars: usize,
    degree: usize,
    terms: BTreeMap<Exponents, Rat>,
}

impl HomPoly {
    /// Build from terms, checking homogeneity.
    pub fn new(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Exponents, Rat)>,
    ) -> Result<Self, PolyError> {
        let mut map: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length mismatch");
            if c.is_zero() {
                continue;
            }
            let slot = map.entry(e).or_insert_with(Rat::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degree = None;
        for e in map.keys() {
            let d = e.iter().map(|&x| x as usize).sum::<usize>();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(PolyError::NotHomogeneous(d0.min(d), d0.max(d)))
                }
                _ => {}
            }
        }
        Ok(HomPoly {
            num_vars,
            degree: degree.unwrap_or(0),
            terms: map,
        })
    }

    /// An input polynomial `f`: at least two variables, degree at least one.
    pub fn new_input(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Exponents, Rat)>,
    ) -> Result<Self, PolyError> {
        let p = Self::new(num_vars, terms)?;
        if p.num_vars < 2 || p.degree < 1 || p.terms.is_empty() {
            return Err(PolyError::TooSmall);
        }
        Ok(p)
    }

    pub fn zero(num_vars: usize, degree: usize) -> Self {
        HomPoly {
            num_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Projective space dimension `n = num_vars - 1`.
    pub fn proj_dim(&self) -> usize {
        self.num_vars - 1
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u16]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly, PolyError> {
        assert_eq!(self.num_vars, other.num_vars);
        HomPoly::new(
            self.num_vars,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// All first partials, in variable order. Each is homogeneous of degree
    /// `d - 1` (possibly zero).
    pub fn partials(&self) -> Vec<HomPoly> {
        (0..self.num_vars).map(|i| self.partial(i)).collect()
    }

    pub fn partial(&self, var: usize) -> HomPoly {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            terms.insert(e2, c * Rat::from_integer((e[var] as i64).into()));
        }
        HomPoly {
            num_vars: self.num_vars,
            degree: self.degree.saturating_sub(1),
            terms,
        }
    }

    /// Iterated partial derivative by a multi-index.
    pub fn derivative_order(&self, mu: &[u16]) -> HomPoly {
        assert_eq!(mu.len(), self.num_vars);
        let mut p = self.clone();
        for (var, &m) in mu.iter().enumerate() {
            for _ in 0..m {
                p = p.partial(var);
            }
        }
        p
    }

    pub fn multiply(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.num_vars, other.num_vars);
        let mut terms: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = terms.entry(e).or_insert_with(Rat::zero);
                *slot += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomPoly {
            num_vars: self.num_vars,
            degree: self.degree + other.degree,
            terms,
        }
    }

    /// The same polynomial viewed in a larger ring (a cone over it), with
    /// exponent vectors padded by zeros.
    pub fn extend_vars(&self, num_vars: usize) -> HomPoly {
        assert!(num_vars >= self.num_vars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(num_vars, 0);
                (e2, c.clone())
            })
            .collect();
        HomPoly {
            num_vars,
            degree: self.degree,
            terms,
        }
    }

    pub fn mul_monomial(&self, e: &[u16]) -> HomPoly {
        let mut terms = BTreeMap::new();
        for (e1, c) in &self.terms {
            let key: Exponents = e1.iter().zip(e).map(|(a, b)| a + b).collect();
            terms.insert(key, c.clone());
        }
        HomPoly {
            num_vars: self.num_vars,
            degree: self.degree + e.iter().map(|&x| x as usize).sum::<usize>(),
            terms,
        }
    }

    /// Exact value on a homogeneous coordinate vector.
    pub fn eval_homogeneous(&self, coords: &[Rat]) -> Rat {
        assert_eq!(coords.len(), self.num_vars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &exp) in coords.iter().zip(e.iter()) {
                for _ in 0..exp {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Value of the polynomial dehomogenized by the chart variable, at the
    /// affine image of the point. Errors when the chart coordinate vanishes.
    pub fn eval_at(&self, coords: &[Rat], chart: usize) -> Result<Rat, PolyError> {
        assert_eq!(coords.len(), self.num_vars);
        if coords[chart].is_zero() {
            return Err(PolyError::BadChart { chart });
        }
        let scaled: Vec<Rat> = coords.iter().map(|x| x / &coords[chart]).collect();
        Ok(self.eval_homogeneous(&scaled))
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    write!(f, "*x{i}")?;
                    if exp > 1 {
                        write!(f, "^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Ordered monomial basis of the degree-`degree` slice of the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    num_vars: usize,
    degree: i64,
    monomials: Vec<Exponents>,
}

impl MonomialBasis {
    pub fn new(num_vars: usize, degree: i64) -> Self {
        let mut monomials = Vec::new();
        if degree >= 0 {
            enumerate_monomials(num_vars, degree as u16, &mut Vec::new(), &mut monomials);
        }
        debug_assert_eq!(monomials.len(), dim_r(num_vars - 1, degree));
        MonomialBasis {
            num_vars,
            degree,
            monomials,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn exponents(&self, i: usize) -> &Exponents {
        &self.monomials[i]
    }

    /// Position of an exponent vector in the basis.
    pub fn index_of(&self, e: &[u16]) -> Option<usize> {
        self.monomials
            .binary_search_by(|probe| cmp_lex_desc(probe, e))
            .ok()
    }

    /// A polynomial of matching degree as a dense coordinate vector.
    pub fn vector_of(&self, p: &HomPoly) -> Vec<Rat> {
        assert_eq!(p.num_vars(), self.num_vars);
        let mut out = vec![Rat::zero(); self.len()];
        for (e, c) in p.terms() {
            let i = self.index_of(e).expect("degree mismatch");
            out[i] = c.clone();
        }
        out
    }

    pub fn sparse_vector_of(&self, p: &HomPoly) -> Vec<(usize, Rat)> {
        let mut out: Vec<(usize, Rat)> = p
            .terms()
            .map(|(e, c)| (self.index_of(e).expect("degree mismatch"), c.clone()))
            .collect();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    pub fn poly_of(&self, coords: &[(usize, Rat)]) -> HomPoly {
        HomPoly::new(
            self.num_vars,
            coords
                .iter()
                .map(|(i, c)| (self.monomials[*i].clone(), c.clone())),
        )
        .expect("monomials share a degree")
    }
}

fn cmp_lex_desc(a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    // Monomials are stored lex-descending.
    b.cmp(a)
}

fn enumerate_monomials(
    num_vars: usize,
    degree: u16,
    prefix: &mut Vec<u16>,
    out: &mut Vec<Exponents>,
) {
    if num_vars == 1 {
        let mut e = prefix.clone();
        e.push(degree);
        out.push(e);
        return;
    }
    for e0 in (0..=degree).rev() {
        prefix.push(e0);
        enumerate_monomials(num_vars - 1, degree - e0, prefix, out);
        prefix.pop();
    }
}
