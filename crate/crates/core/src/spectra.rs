//! Spectra as finitely supported integer multiplicity functions on the
//! rationals with denominator `d`, the gamma coefficients of the smooth
//! reference hypersurface, and the closed-form and page-derived spectra of
//! a nodal hypersurface.
//!
//! Multiplicities are stored in integer `k`-units (the multiplicity of
//! `t^{k/d}` is keyed by `k`), so every comparison is an exact integer
//! comparison. Multiplicities may be negative.

use std::collections::BTreeMap;
use std::fmt;

use crate::koszul::SpectralPage;
use crate::singular::OdpCertificate;

#[derive(Debug, thiserror::Error)]
pub enum SpectraError {
    #[error(
        "page-two differential does not vanish at degree {k}; the input does not \
         satisfy the ordinary-double-point hypothesis"
    )]
    DegenerationFailed { k: i64 },
}

/// Finitely supported integer-valued function on `(1/denom)·Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    denom: i64,
    mult: BTreeMap<i64, i64>,
}

impl Spectrum {
    pub fn new(denom: i64) -> Self {
        assert!(denom >= 1);
        Spectrum {
            denom,
            mult: BTreeMap::new(),
        }
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn get(&self, k: i64) -> i64 {
        self.mult.get(&k).copied().unwrap_or(0)
    }

    pub fn set(&mut self, k: i64, v: i64) {
        if v == 0 {
            self.mult.remove(&k);
        } else {
            self.mult.insert(k, v);
        }
    }

    pub fn add_to(&mut self, k: i64, dv: i64) {
        self.set(k, self.get(k) + dv);
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.mult.iter().map(|(&k, &v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.mult.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn total_mass(&self) -> i64 {
        self.mult.values().sum()
    }

    pub fn add(&self, other: &Spectrum) -> Spectrum {
        assert_eq!(self.denom, other.denom);
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_to(k, v);
        }
        out
    }

    pub fn sub(&self, other: &Spectrum) -> Spectrum {
        assert_eq!(self.denom, other.denom);
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_to(k, -v);
        }
        out
    }

    /// Canonical line serialization: `k/d: multiplicity`, sorted by `k`.
    pub fn canonical_lines(&self) -> Vec<String> {
        self.mult
            .iter()
            .map(|(k, v)| format!("{}/{}: {}", k, self.denom, v))
            .collect()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .mult
            .iter()
            .map(|(k, v)| format!("{v}*t^({k}/{})", self.denom))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coefficients of `(t + ... + t^{d-1})^{n+1}`, keyed by exponent; the
/// spectrum data of a smooth degree-`d` hypersurface in `P^n`.
pub fn gamma_coeffs(n: usize, d: i64) -> BTreeMap<i64, i64> {
    let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
    acc.insert(0, 1);
    for _ in 0..=n {
        let mut next: BTreeMap<i64, i64> = BTreeMap::new();
        for (&k, &v) in &acc {
            for t in 1..d {
                *next.entry(k + t).or_insert(0) += v;
            }
        }
        acc = next;
    }
    acc.retain(|_, v| *v != 0);
    acc
}

pub fn gamma_at(gamma: &BTreeMap<i64, i64>, k: i64) -> i64 {
    gamma.get(&k).copied().unwrap_or(0)
}

fn sn_at(sn_dims: &BTreeMap<i64, usize>, k: i64) -> i64 {
    if k < 0 {
        0
    } else {
        *sn_dims
            .get(&k)
            .unwrap_or_else(|| panic!("middle cohomology table does not cover degree {k}"))
            as i64
    }
}

/// Closed-form pole order spectrum: `γ_k` up to the middle, `γ_k - ˢν_k`
/// on the unit window above it, `γ_k - (ˢν_k - ˢν_{k-d})` beyond.
///
/// `sn_dims` must cover `[0, kmax]`; the certificate pins the hypothesis
/// under which the formula is valid.
pub fn sp_pole_closed_form(
    n: usize,
    d: i64,
    _cert: &OdpCertificate,
    sn_dims: &BTreeMap<i64, usize>,
    kmax: i64,
) -> Spectrum {
    let nd = n as i64 * d;
    let gamma = gamma_coeffs(n, d);
    let mut sp = Spectrum::new(d);
    for k in 1..=kmax {
        let g = gamma_at(&gamma, k);
        let v = if 2 * k <= nd {
            g
        } else if 2 * k <= nd + 2 * d {
            g - sn_at(sn_dims, k)
        } else {
            g - (sn_at(sn_dims, k) - sn_at(sn_dims, k - d))
        };
        sp.set(k, v);
    }
    sp
}

/// Closed-form Steenbrink spectrum: `γ_k`, except `γ_k - τ` on the unit
/// window above the middle.
pub fn sp_steenbrink_closed_form(
    n: usize,
    d: i64,
    cert: &OdpCertificate,
    kmax: i64,
) -> Spectrum {
    let nd = n as i64 * d;
    let gamma = gamma_coeffs(n, d);
    let tau = cert.tau as i64;
    let mut sp = Spectrum::new(d);
    for k in 1..=kmax {
        let g = gamma_at(&gamma, k);
        let v = if 2 * k > nd && 2 * k <= nd + 2 * d {
            g - tau
        } else {
            g
        };
        sp.set(k, v);
    }
    sp
}

/// Pole order spectrum read off the second page, with the degeneration
/// hypothesis asserted: every page-two differential must vanish.
pub fn sp_pole_from_page(page2: &SpectralPage, d: i64) -> Result<Spectrum, SpectraError> {
    assert_eq!(page2.r, 2, "needs the second page");
    for (&k, m) in &page2.d_matrices {
        if !m.is_zero() {
            return Err(SpectraError::DegenerationFailed { k });
        }
    }
    let mut sp = Spectrum::new(d);
    for (&k, &m2) in &page2.m_dims {
        if k < 1 {
            continue;
        }
        let sn2_prev = if k - d < 0 {
            0
        } else {
            page2.sn_dims.get(&(k - d)).copied().unwrap_or(0) as i64
        };
        sp.set(k, m2 as i64 - sn2_prev);
    }
    Ok(sp)
}

/// The level-zero and level-one refinements of both spectra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedSpectra {
    pub sp0: Spectrum,
    pub sp1: Spectrum,
    pub sp_pole0: Spectrum,
    pub sp_pole1: Spectrum,
}

/// Level-one parts are `(dim ˢN_{nd/2}) t^{n/2+1}` when `nd` is even and
/// zero otherwise; level zero adds them back onto the plain spectra.
pub fn refined_spectra(
    n: usize,
    d: i64,
    sn_dims: &BTreeMap<i64, usize>,
    sp: &Spectrum,
    sp_pole: &Spectrum,
) -> RefinedSpectra {
    let nd = n as i64 * d;
    let mut sp1 = Spectrum::new(d);
    if nd % 2 == 0 {
        let middle = sn_at(sn_dims, nd / 2);
        sp1.set(nd / 2 + d, middle);
    }
    RefinedSpectra {
        sp0: sp.add(&sp1),
        sp1: sp1.clone(),
        sp_pole0: sp_pole.add(&sp1),
        sp_pole1: sp1,
    }
}
