//! The full analysis pipeline for one certified input, and the identity
//! suite that verifies every proved relation between the computed objects.
//!
//! Check failures are report entries, not errors: a red check means either
//! an implementation bug or an input that does not satisfy the
//! ordinary-double-point hypothesis, and the caller decides what to do.

use std::collections::{BTreeMap, BTreeSet};

use crate::koszul::{KoszulEngine, KoszulError, SpectralPage};
use crate::linalg::{ArithMode, LinalgError, SubspaceBasis};
use crate::poly::{dim_r, HomPoly};
use crate::singular::{
    self, certify_condition_a, OdpCertificate, PointIdeal, ProjPoint, SingularError,
    WotzlawVariant,
};
use crate::spectra::{
    self, gamma_at, RefinedSpectra, Spectrum, SpectraError,
};

#[derive(Debug, thiserror::Error)]
#[error("stage {stage}: {source}")]
pub struct AnalysisError {
    pub stage: &'static str,
    #[source]
    pub source: ModuleError,
}

#[derive(Debug, thiserror::Error)]
pub enum ModuleError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

fn at_stage<E: Into<ModuleError>>(stage: &'static str) -> impl Fn(E) -> AnalysisError {
    move |e| AnalysisError {
        stage,
        source: e.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "n/a",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    /// Degrees (or indices) witnessing a failure.
    pub witnesses: Vec<i64>,
}

/// Outcome of the identity suite; every enabled check appears exactly once.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub checks: Vec<CheckResult>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failed(&self) -> Vec<&CheckResult> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect()
    }
}

/// All identity checks, in report order.
pub const CHECK_NAMES: &[&str] = &[
    "euler_characteristic",
    "defect_duality",
    "tau_partition",
    "jacobian_ring_dims",
    "snu_monotone",
    "low_degree_vanishing",
    "middle_d1_vanishes",
    "page_two_collapse",
    "middle_page_two_full",
    "e2_degeneration",
    "torsion_avoids_image",
    "pole_formula_vs_page",
    "spectra_difference",
    "spectrum_symmetry",
    "middle_symmetry_drop",
    "torsion_bound",
    "hodge_pole_prefix",
    "spectrum_mass",
    "low_forms_exact",
    "defect_stabilizes",
    "power_in_symbolic",
    "surjectivity_range",
    "wotzlaw_match",
    "window_covers_support",
];

/// Which checks to run.
#[derive(Clone, Debug)]
pub enum CheckSelection {
    All,
    Only(BTreeSet<String>),
}

impl CheckSelection {
    pub fn enabled(&self, name: &str) -> bool {
        match self {
            CheckSelection::All => true,
            CheckSelection::Only(set) => set.contains(name),
        }
    }
}

/// One line of the graded-quotient comparison table.
#[derive(Clone, Debug)]
pub struct WotzlawRow {
    pub q: i64,
    pub degree: i64,
    pub powers_dim: usize,
    pub symbolic_dim: usize,
    /// Hodge-side dimension assembled from the closed-form spectrum and its
    /// level-one refinement.
    pub hodge_dim: i64,
    /// The symbolic comparison is a theorem for this `q`.
    pub proven_symbolic: bool,
    /// The true-power comparison is a theorem for this `q`.
    pub proven_powers: bool,
}

/// Everything the pipeline computes for one input.
pub struct Analysis {
    pub f: HomPoly,
    pub n: usize,
    pub d: i64,
    pub mode: ArithMode,
    pub kmax: i64,
    pub cert: OdpCertificate,
    pub gamma: BTreeMap<i64, i64>,
    pub mu: BTreeMap<i64, usize>,
    pub snu: BTreeMap<i64, usize>,
    pub mu2: BTreeMap<i64, usize>,
    pub snu2: BTreeMap<i64, usize>,
    /// `def_k` for `k` in `[0, nd - n - 1]`.
    pub defects: BTreeMap<i64, usize>,
    pub mprime: BTreeMap<i64, usize>,
    pub mpp: BTreeMap<i64, usize>,
    pub sp_pole: Spectrum,
    pub sp_pole_page: Spectrum,
    pub sp: Spectrum,
    pub refined: RefinedSpectra,
    pub wotzlaw: Vec<WotzlawRow>,
    pub page1: SpectralPage,
    pub page2: SpectralPage,
    engine: KoszulEngine,
    ideal: PointIdeal,
}

impl Analysis {
    /// Run the whole pipeline: certify, assemble both pages, spectra,
    /// defects, torsion dimensions and the quotient comparison table.
    pub fn compute(
        f: HomPoly,
        points: Vec<ProjPoint>,
        kmax: Option<i64>,
        mode: ArithMode,
    ) -> Result<Analysis, AnalysisError> {
        let n = f.proj_dim();
        let d = f.degree() as i64;
        let nd = n as i64 * d;

        let cert = certify_condition_a(&f, &points, mode).map_err(at_stage("certification"))?;

        let engine = KoszulEngine::new(f.clone(), mode);
        let kmax = kmax.unwrap_or_else(|| engine.default_kmax());
        let page1 = engine.page(1, 0..=kmax).map_err(at_stage("koszul"))?;
        let page2 = engine.page(2, 0..=kmax).map_err(at_stage("koszul"))?;

        let mu = page1.m_dims.clone();
        let snu = page1.sn_dims.clone();
        let mu2 = page2.m_dims.clone();
        let snu2 = page2.sn_dims.clone();

        let gamma = spectra::gamma_coeffs(n, d);

        let mut defects = BTreeMap::new();
        for k in 0..=(nd - n as i64 - 1) {
            let def = singular::defect(&cert.points, k, f.num_vars(), mode)
                .map_err(at_stage("defect"))?;
            defects.insert(k, def);
        }

        let ideal =
            PointIdeal::new(cert.points.clone(), f.num_vars()).map_err(at_stage("ideal"))?;

        let mut mprime = BTreeMap::new();
        let mut mpp = BTreeMap::new();
        for k in 0..=kmax {
            let slice = radical_or_full(&ideal, k - n as i64 - 1, f.num_vars());
            let (mp, mq) = engine.mprime_dims(k, &slice).map_err(at_stage("torsion"))?;
            mprime.insert(k, mp);
            mpp.insert(k, mq);
        }

        let sp_pole = spectra::sp_pole_closed_form(n, d, &cert, &snu, kmax);
        let sp = spectra::sp_steenbrink_closed_form(n, d, &cert, kmax);
        let sp_pole_page = spectra::sp_pole_from_page(&page2, d).map_err(at_stage("spectra"))?;
        let refined = spectra::refined_spectra(n, d, &snu, &sp, &sp_pole);

        let m = n as i64 / 2;
        let mut wotzlaw = Vec::new();
        for q in 0..=n as i64 {
            let powers_dim =
                singular::wotzlaw_quotient_dim(&f, &ideal, q, WotzlawVariant::Powers)
                    .map_err(at_stage("wotzlaw"))?;
            let symbolic_dim =
                singular::wotzlaw_quotient_dim(&f, &ideal, q, WotzlawVariant::Symbolic)
                    .map_err(at_stage("wotzlaw"))?;
            let hodge_dim = hodge_level_zero(n, d, &gamma, cert.tau as i64, &snu, (q + 1) * d);
            let exceptional = n % 2 == 1 && m < q && q < m + d / 2;
            wotzlaw.push(WotzlawRow {
                q,
                degree: (q + 1) * d - n as i64 - 1,
                powers_dim,
                symbolic_dim,
                hodge_dim,
                proven_symbolic: !exceptional,
                proven_powers: q <= m,
            });
        }

        Ok(Analysis {
            f,
            n,
            d,
            mode,
            kmax,
            cert,
            gamma,
            mu,
            snu,
            mu2,
            snu2,
            defects,
            mprime,
            mpp,
            sp_pole,
            sp_pole_page,
            sp,
            refined,
            wotzlaw,
            page1,
            page2,
            engine,
            ideal,
        })
    }

    pub fn engine(&self) -> &KoszulEngine {
        &self.engine
    }

    pub fn ideal(&self) -> &PointIdeal {
        &self.ideal
    }

    pub fn tau(&self) -> usize {
        self.cert.tau
    }

    fn snu_at(&self, k: i64) -> i64 {
        if k < 0 {
            0
        } else {
            self.snu.get(&k).copied().unwrap_or(self.cert.tau) as i64
        }
    }

    fn mu_at(&self, k: i64) -> i64 {
        if k < 0 {
            0
        } else {
            *self.mu.get(&k).expect("window covers degree") as i64
        }
    }

    /// Run the identity suite. Failures are entries, never errors.
    pub fn identity_suite(&self, selection: &CheckSelection) -> IdentityReport {
        let mut checks = Vec::new();
        let nd = self.n as i64 * self.d;
        let tau = self.cert.tau as i64;
        let middle_even = nd % 2 == 0;

        let mut push = |name: &'static str, outcome: Option<Vec<i64>>| {
            let status = match &outcome {
                None => CheckStatus::NotApplicable,
                Some(w) if w.is_empty() => CheckStatus::Pass,
                Some(_) => CheckStatus::Fail,
            };
            checks.push(CheckResult {
                name,
                status,
                witnesses: outcome.unwrap_or_default(),
            });
        };

        if selection.enabled("euler_characteristic") {
            let bad: Vec<i64> = (0..=self.kmax)
                .filter(|&k| self.mu_at(k) - self.snu_at(k - self.d) != gamma_at(&self.gamma, k))
                .collect();
            push("euler_characteristic", Some(bad));
        }

        if selection.enabled("defect_duality") {
            let top = nd - self.n as i64 - 1;
            let bad: Vec<i64> = (0..=top)
                .filter(|&k| {
                    self.snu_at(top - k) != self.defects.get(&k).map_or(-1, |&v| v as i64)
                })
                .collect();
            push("defect_duality", Some(bad));
        }

        if selection.enabled("tau_partition") {
            let lo = (nd - self.kmax).max(0);
            let bad: Vec<i64> = (lo..=self.kmax)
                .filter(|&k| {
                    let mpp = self.mpp.get(&k).map_or(-1, |&v| v as i64);
                    mpp + self.snu_at(nd - k) != tau
                })
                .collect();
            push("tau_partition", Some(bad));
        }

        if selection.enabled("jacobian_ring_dims") {
            let bad: Vec<i64> = (0..=self.kmax)
                .filter(|&k| !self.engine.check_m_is_r_mod_j(k).unwrap_or(false))
                .collect();
            push("jacobian_ring_dims", Some(bad));
        }

        if selection.enabled("snu_monotone") {
            let mut bad = Vec::new();
            for k in 0..=self.kmax {
                let v = self.snu_at(k);
                if v > tau || (k > 0 && v < self.snu_at(k - 1)) {
                    bad.push(k);
                }
            }
            push("snu_monotone", Some(bad));
        }

        if selection.enabled("low_degree_vanishing") {
            let bad: Vec<i64> = (0..=self.kmax)
                .filter(|&k| 2 * k < nd && self.snu_at(k) != 0)
                .collect();
            push("low_degree_vanishing", Some(bad));
        }

        if selection.enabled("middle_d1_vanishes") {
            if middle_even {
                let k0 = nd / 2;
                let zero = self
                    .engine
                    .d1_matrix(k0)
                    .map(|m| m.is_zero())
                    .unwrap_or(false);
                let full_kernel = self.snu2.get(&k0) == self.snu.get(&k0);
                push(
                    "middle_d1_vanishes",
                    Some(if zero && full_kernel { vec![] } else { vec![k0] }),
                );
            } else {
                push("middle_d1_vanishes", None);
            }
        }

        if selection.enabled("page_two_collapse") {
            let mut bad = Vec::new();
            for k in 0..=self.kmax {
                if 2 * k == nd {
                    continue;
                }
                let sn2 = self.snu2.get(&k).copied().unwrap_or(0) as i64;
                let m2 = self.mu2.get(&k).copied().unwrap_or(0) as i64;
                if sn2 != 0 || m2 != self.mu_at(k) - self.snu_at(k) {
                    bad.push(k);
                }
            }
            push("page_two_collapse", Some(bad));
        }

        if selection.enabled("middle_page_two_full") {
            if middle_even {
                let k0 = nd / 2;
                let m2 = self.mu2.get(&k0).copied().unwrap_or(0) as i64;
                let sn2_prev = if k0 - self.d < 0 {
                    0
                } else {
                    self.snu2.get(&(k0 - self.d)).copied().unwrap_or(0)
                };
                let ok = m2 == self.mu_at(k0) && m2 == gamma_at(&self.gamma, k0) && sn2_prev == 0;
                push(
                    "middle_page_two_full",
                    Some(if ok { vec![] } else { vec![k0] }),
                );
            } else {
                push("middle_page_two_full", None);
            }
        }

        if selection.enabled("e2_degeneration") {
            let bad: Vec<i64> = self
                .page2
                .d_matrices
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(&k, _)| k)
                .collect();
            push("e2_degeneration", Some(bad));
        }

        if selection.enabled("torsion_avoids_image") {
            let mut bad = Vec::new();
            for k in 1..=self.kmax {
                let slice = radical_or_full(&self.ideal, k - self.n as i64 - 1, self.f.num_vars());
                let ok = self
                    .engine
                    .d1_image(k)
                    .and_then(|image| {
                        let mprime = self.engine.mprime_subspace(k, &slice)?;
                        Ok(image
                            .intersection_dim(&mprime)
                            .map(|dim| dim == 0)
                            .unwrap_or(false))
                    })
                    .unwrap_or(false);
                if !ok {
                    bad.push(k);
                }
            }
            push("torsion_avoids_image", Some(bad));
        }

        if selection.enabled("pole_formula_vs_page") {
            let diff = self.sp_pole.sub(&self.sp_pole_page);
            push("pole_formula_vs_page", Some(diff.support().collect()));
        }

        if selection.enabled("spectra_difference") {
            // Rebuild Sp - Sp_P from the increments of the middle cohomology
            // beyond the upper window, each paired with its shift into the
            // window.
            let mut rebuilt = Spectrum::new(self.d);
            for k in 1..=self.kmax {
                if 2 * k <= nd + 2 * self.d {
                    continue;
                }
                let inc = self.snu_at(k) - self.snu_at(k - self.d);
                if inc == 0 {
                    continue;
                }
                let p = div_ceil(2 * k - nd - 2 * self.d, 2 * self.d);
                rebuilt.add_to(k, inc);
                rebuilt.add_to(k - p * self.d, -inc);
            }
            let direct = self.sp.sub(&self.sp_pole);
            let diff = rebuilt.sub(&direct);
            push("spectra_difference", Some(diff.support().collect()));
        }

        if selection.enabled("spectrum_symmetry") {
            let mut bad = Vec::new();
            let hi = (self.n as i64 + 1) * self.d;
            for k in 1..hi {
                if 2 * k == nd || 2 * k == nd + 2 * self.d {
                    continue;
                }
                if self.sp.get(k) != self.sp.get(hi - k) {
                    bad.push(k);
                }
            }
            push("spectrum_symmetry", Some(bad));
        }

        if selection.enabled("middle_symmetry_drop") {
            if middle_even {
                let ok = self.sp.get(nd / 2 + self.d) == self.sp.get(nd / 2) - tau;
                push(
                    "middle_symmetry_drop",
                    Some(if ok { vec![] } else { vec![nd / 2] }),
                );
            } else {
                push("middle_symmetry_drop", None);
            }
        }

        if selection.enabled("torsion_bound") {
            let mut bad = Vec::new();
            for k in 1..=self.kmax {
                let mp = self.mprime.get(&k).map_or(-1, |&v| v as i64);
                let hodge = hodge_level_zero(self.n, self.d, &self.gamma, tau, &self.snu, k);
                let in_window = 2 * k > nd && 2 * k <= nd + 2 * self.d;
                if mp > hodge || (in_window && mp != hodge) {
                    bad.push(k);
                }
            }
            push("torsion_bound", Some(bad));
        }

        if selection.enabled("hodge_pole_prefix") {
            let mut bad = Vec::new();
            for k in 1..=self.kmax {
                let prefix_equal = (1..)
                    .map(|p| k - p * self.d)
                    .take_while(|&j| j >= 1)
                    .all(|j| self.sp.get(j) == self.sp_pole.get(j));
                if prefix_equal && self.sp.get(k) > self.sp_pole.get(k) {
                    bad.push(k);
                }
            }
            push("hodge_pole_prefix", Some(bad));
        }

        if selection.enabled("spectrum_mass") {
            let gamma_total: i64 = self.gamma.values().sum();
            let ok = self.sp.total_mass() == gamma_total - tau * self.d;
            push("spectrum_mass", Some(if ok { vec![] } else { vec![0] }));
        }

        if selection.enabled("low_forms_exact") {
            // Sampled exactness of the slice complex below the middle.
            let mut bad = Vec::new();
            let sample_max = (2 * self.d + 2).min(self.kmax);
            for j in 0..self.n {
                for k in 0..=sample_max {
                    let dim = form_dim(self.f.num_vars(), j, k);
                    let r_here = self.engine.koszul_rank(j, k).unwrap_or(usize::MAX);
                    let r_below = if j == 0 {
                        0
                    } else {
                        self.engine.koszul_rank(j - 1, k - self.d).unwrap_or(usize::MAX)
                    };
                    let h = dim as i64 - r_here as i64 - r_below as i64;
                    if h != 0 {
                        bad.push(k + 100 * j as i64);
                    }
                }
            }
            push("low_forms_exact", Some(bad));
        }

        if selection.enabled("defect_stabilizes") {
            let bad: Vec<i64> = self
                .defects
                .iter()
                .filter(|(&k, &v)| k >= tau - 1 && v != 0)
                .map(|(&k, _)| k)
                .collect();
            push("defect_stabilizes", Some(bad));
        }

        if selection.enabled("power_in_symbolic") {
            let mut bad = Vec::new();
            let m = self.n as i64 / 2;
            for q in 0..=self.n as i64 {
                let a = q - m + 1;
                if a < 1 {
                    continue;
                }
                let degree = (q + 1) * self.d - self.n as i64 - 1;
                let power = self.ideal.power_slice(a, degree);
                let symbolic = self.ideal.symbolic_slice(a, degree);
                if !symbolic.contains(&power) {
                    bad.push(q);
                }
            }
            push("power_in_symbolic", Some(bad));
        }

        if selection.enabled("surjectivity_range") {
            // The degree-window inequality must agree with its closed-form
            // case split over q.
            let n = self.n as i64;
            let m = n / 2;
            let mut bad = Vec::new();
            for q in 0..=2 * n {
                let lhs = 2 * ((n - m) * self.d + m - q - 1) < nd;
                let rhs = if n % 2 == 0 {
                    q >= m
                } else {
                    q >= m + self.d / 2
                };
                if lhs != rhs {
                    bad.push(q);
                }
            }
            push("surjectivity_range", Some(bad));
        }

        if selection.enabled("wotzlaw_match") {
            let mut bad = Vec::new();
            for row in &self.wotzlaw {
                if row.proven_symbolic && row.symbolic_dim as i64 != row.hodge_dim {
                    bad.push(row.q);
                }
                if row.proven_powers && row.powers_dim as i64 != row.hodge_dim {
                    bad.push(row.q);
                }
            }
            bad.dedup();
            push("wotzlaw_match", Some(bad));
        }

        if selection.enabled("window_covers_support") {
            let mut ok = (self.n as i64 + 1) * (self.d - 1) <= self.kmax;
            let last = self.snu_at(self.kmax);
            for k in (self.kmax - self.d)..=self.kmax {
                ok &= self.snu_at(k) == last;
            }
            push("window_covers_support", Some(if ok { vec![] } else { vec![self.kmax] }));
        }

        IdentityReport { checks }
    }
}

/// Level-zero Hodge multiplicity at `t^{k/d}` assembled from the closed
/// forms: the Steenbrink value plus the level-one correction at the upper
/// edge of the middle window.
pub fn hodge_level_zero(
    n: usize,
    d: i64,
    gamma: &BTreeMap<i64, i64>,
    tau: i64,
    snu: &BTreeMap<i64, usize>,
    k: i64,
) -> i64 {
    let nd = n as i64 * d;
    let g = gamma_at(gamma, k);
    let base = if 2 * k > nd && 2 * k <= nd + 2 * d {
        g - tau
    } else {
        g
    };
    let level_one = if nd % 2 == 0 && k == nd / 2 + d {
        snu.get(&(nd / 2)).copied().unwrap_or(0) as i64
    } else {
        0
    };
    base + level_one
}

fn radical_or_full(ideal: &PointIdeal, km: i64, num_vars: usize) -> SubspaceBasis {
    if km < 0 {
        SubspaceBasis::empty(0)
    } else if ideal.tau() == 0 {
        SubspaceBasis::full(dim_r(num_vars - 1, km))
    } else {
        ideal.radical_slice(km)
    }
}

fn form_dim(num_vars: usize, j: usize, k: i64) -> usize {
    if j > num_vars {
        return 0;
    }
    crate::poly::binomial(num_vars as u128, j as u128) as usize * dim_r(num_vars - 1, k - j as i64)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rat;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn poly(num_vars: usize, terms: &[(i64, &[u16])]) -> HomPoly {
        HomPoly::new(num_vars, terms.iter().map(|&(c, e)| (e.to_vec(), rat(c)))).unwrap()
    }

    fn point(coords: &[i64]) -> ProjPoint {
        ProjPoint::new(coords.iter().map(|&c| rat(c)).collect()).unwrap()
    }

    fn analyze(f: HomPoly, pts: Vec<ProjPoint>) -> Analysis {
        Analysis::compute(f, pts, None, ArithMode::Rational).unwrap()
    }

    #[test]
    fn identity_suite_green_on_three_node_quartic() {
        let a = analyze(
            poly(3, &[(1, &[2, 2, 0]), (1, &[2, 0, 2]), (1, &[0, 2, 2])]),
            vec![point(&[1, 0, 0]), point(&[0, 1, 0]), point(&[0, 0, 1])],
        );
        let report = a.identity_suite(&CheckSelection::All);
        for c in &report.checks {
            assert_ne!(
                c.status,
                CheckStatus::Fail,
                "{} failed at {:?}",
                c.name,
                c.witnesses
            );
        }
        // The difference of the two spectra is +1 at k=9, -1 at k=5.
        let diff = a.sp.sub(&a.sp_pole);
        assert_eq!(diff.get(9), 1);
        assert_eq!(diff.get(5), -1);
        assert_eq!(diff.iter().count(), 2);
    }

    #[test]
    fn identity_suite_green_on_six_node_quartic() {
        let a = analyze(
            poly(3, &[(1, &[2, 1, 1]), (1, &[1, 2, 1]), (1, &[1, 1, 2])]),
            vec![
                point(&[0, 0, 1]),
                point(&[0, 1, 0]),
                point(&[1, 0, 0]),
                point(&[0, 1, -1]),
                point(&[1, 0, -1]),
                point(&[1, -1, 0]),
            ],
        );
        let report = a.identity_suite(&CheckSelection::All);
        for c in &report.checks {
            assert_ne!(
                c.status,
                CheckStatus::Fail,
                "{} failed at {:?}",
                c.name,
                c.witnesses
            );
        }
        // Sp - Sp_P is -1 at k=5 and +1 at k=9 (k=9 pairs down to k=5).
        let diff = a.sp.sub(&a.sp_pole);
        let support: Vec<i64> = diff.support().collect();
        assert_eq!(support, vec![5, 9]);
        assert_eq!(diff.get(5), -1);
        assert_eq!(diff.get(9), 1);
    }

    #[test]
    fn identity_suite_vacuous_on_smooth_fermat() {
        let a = analyze(
            poly(3, &[(1, &[4, 0, 0]), (1, &[0, 4, 0]), (1, &[0, 0, 4])]),
            vec![],
        );
        let report = a.identity_suite(&CheckSelection::All);
        assert!(report.all_pass());
        assert!(a.sp.sub(&a.sp_pole).is_zero());
        assert_eq!(a.tau(), 0);
    }

    #[test]
    fn wotzlaw_rows_for_golden_curves() {
        let a = analyze(
            poly(3, &[(1, &[2, 2, 0]), (1, &[2, 0, 2]), (1, &[0, 2, 2])]),
            vec![point(&[1, 0, 0]), point(&[0, 1, 0]), point(&[0, 0, 1])],
        );
        let rows: Vec<(i64, usize, usize, i64)> = a
            .wotzlaw
            .iter()
            .map(|r| (r.q, r.powers_dim, r.symbolic_dim, r.hodge_dim))
            .collect();
        assert_eq!(rows, vec![(0, 3, 3, 3), (1, 0, 0, 0), (2, 0, 0, 0)]);
        assert!(a.wotzlaw.iter().all(|r| r.proven_symbolic));
    }

    #[test]
    fn torsion_intersection_dimensions_at_degree_six() {
        // Inside the 7-dimensional top quotient at k = 6, the page-one image
        // is 3-dimensional, the torsion part is 4-dimensional, and they only
        // meet in zero.
        let a = analyze(
            poly(3, &[(1, &[2, 2, 0]), (1, &[2, 0, 2]), (1, &[0, 2, 2])]),
            vec![point(&[1, 0, 0]), point(&[0, 1, 0]), point(&[0, 0, 1])],
        );
        let image = a.engine().d1_image(6).unwrap();
        let slice = a.ideal().radical_slice(3);
        let torsion = a.engine().mprime_subspace(6, &slice).unwrap();
        assert_eq!(image.dim(), 3);
        assert_eq!(torsion.dim(), 4);
        assert_eq!(image.intersection_dim(&torsion).unwrap(), 0);
    }

    #[test]
    fn check_selection_subsets() {
        let a = analyze(
            poly(3, &[(1, &[4, 0, 0]), (1, &[0, 4, 0]), (1, &[0, 0, 4])]),
            vec![],
        );
        let only = CheckSelection::Only(
            ["euler_characteristic".to_string(), "spectrum_mass".to_string()]
                .into_iter()
                .collect(),
        );
        let report = a.identity_suite(&only);
        assert_eq!(report.checks.len(), 2);
        assert!(report.all_pass());
    }
}
