//! The ν-scan: for each ν the coadjoint action is computed through the ν-deformed Θ, and the
//! weight μ with `ad*_ν = dσ̃_μ` on `(a, V₋₂)` is solved for.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::sv::{basis, monomial_points};
use super::{Case, Check, SuiteConfig};
use crate::error::Result;
use crate::kacmoody::{coadjoint_direct, embed_i};
use crate::ring::{CoeffFn, GaussRat};
use crate::svaction::{d_sigma_tilde, SchrodPoint};
use crate::transforms::Theta;

/// Outcome of the fit at one ν.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NuFit {
    Mu(GaussRat),
    NoFit(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuScanRow {
    pub nu: GaussRat,
    pub fit: NuFit,
    /// Basis elements times points compared.
    pub samples: usize,
}

impl fmt::Display for NuScanRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.fit {
            NuFit::Mu(mu) => write!(f, "nu = {}: mu = {} ({} samples)", self.nu, mu, self.samples),
            NuFit::NoFit(why) => write!(f, "nu = {}: NO-FIT ({})", self.nu, why),
        }
    }
}

fn raw_map(f: &CoeffFn) -> BTreeMap<(i32, i32, i32), GaussRat> {
    f.raw_terms().map(|(p, q, k, c)| ((p, q, k), c.clone())).collect()
}

/// The constant `μ` with `r = μ·b`, if `b ≠ 0` fixes it.
fn ratio(r: &CoeffFn, b: &CoeffFn) -> Option<GaussRat> {
    let rm = raw_map(r);
    let (key, bc) = b.raw_terms().map(|(p, q, k, c)| ((p, q, k), c)).next()?;
    let rc = rm.get(&key).cloned().unwrap_or_default();
    Some(&rc * &bc.inv().expect("stored coefficients are nonzero"))
}

fn fit_at(nu: &GaussRat, cfg: &SuiteConfig) -> Result<NuScanRow> {
    let th = Theta::new(nu.clone());
    let points = monomial_points(cfg.range);
    let zero = GaussRat::zero();
    let one = GaussRat::one();
    let mut residuals: Vec<(String, SchrodPoint, SchrodPoint)> = Vec::new();
    for (g, x) in basis(cfg).iter() {
        let image = embed_i(&th, x, cfg.floor)?;
        for (label, mu) in &points {
            let out = coadjoint_direct(&image, mu, &cfg.c)?;
            let row = |fit| NuScanRow { nu: nu.clone(), fit, samples: residuals.len() };
            if !out.in_n() {
                return Ok(row(NuFit::NoFit(format!("ad*_{g} at {label} leaves N"))));
            }
            let p = SchrodPoint::new(mu.a.clone(), mu.v_m2());
            let base = d_sigma_tilde(&zero, x, &p);
            let got = SchrodPoint::new(out.a.clone(), out.v_m2());
            let direction = d_sigma_tilde(&one, x, &p).sub(&base);
            residuals.push((format!("{g} at {label}"), got.sub(&base), direction));
        }
    }
    let samples = residuals.len();
    let row = |fit| NuScanRow { nu: nu.clone(), fit, samples };
    let mu = residuals.iter().find_map(|(_, r, b)| ratio(&r.v, &b.v).or_else(|| ratio(&r.a, &b.a)));
    let Some(mu) = mu else {
        let all_zero = residuals.iter().all(|(_, r, _)| r.is_zero());
        return Ok(row(if all_zero { NuFit::Mu(zero) } else { NuFit::NoFit("mu does not enter".into()) }));
    };
    for (label, r, b) in &residuals {
        let predicted = SchrodPoint::new(b.a.scale_gauss(&mu), b.v.scale_gauss(&mu));
        if &predicted != r {
            return Ok(row(NuFit::NoFit(format!("mu = {mu} from the first sample fails at {label}: residual {r}"))));
        }
    }
    Ok(row(NuFit::Mu(mu)))
}

/// Fits at every value of the configured grid, in order.
pub fn nu_scan(cfg: &SuiteConfig) -> Result<Vec<NuScanRow>> {
    let mut grid: Vec<GaussRat> = Vec::new();
    for nu in &cfg.nu_grid {
        if !grid.contains(nu) {
            grid.push(nu.clone());
        }
    }
    grid.iter().map(|nu| fit_at(nu, cfg)).collect()
}

pub(super) fn suite(cfg: &Arc<SuiteConfig>) -> Result<(Vec<Case>, Vec<String>)> {
    let mut with_zero = (**cfg).clone();
    if !with_zero.nu_grid.contains(&GaussRat::zero()) {
        with_zero.nu_grid.insert(0, GaussRat::zero());
    }
    let rows = nu_scan(&with_zero)?;
    let notes = rows.iter().map(|r| r.to_string()).collect();
    let mut cases = Vec::new();
    for row in rows {
        let name = format!("fit at nu = {}", row.nu);
        cases.push(Case::new(name, move || {
            let shown = match &row.fit {
                NuFit::Mu(mu) => format!("mu = {mu}"),
                NuFit::NoFit(why) => format!("NO-FIT ({why})"),
            };
            if row.nu.is_zero() {
                let ok = row.fit == NuFit::Mu(GaussRat::zero());
                return Ok(Check::new(ok, shown, "mu = 0"));
            }
            Ok(Check::new(true, shown, "a consistent mu or NO-FIT"))
        }));
    }
    Ok((cases, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_tracks_nu_off_the_grid() {
        let cfg = SuiteConfig { range: 2, nu_grid: vec![GaussRat::frac(1, 3), GaussRat::int(2), GaussRat::i()], ..SuiteConfig::default() };
        let rows = nu_scan(&cfg).unwrap();
        assert_eq!(rows.len(), 3);
        for row in rows {
            assert_eq!(row.fit, NuFit::Mu(row.nu.clone()), "{row}");
        }
        assert!(nu_scan(&SuiteConfig { nu_grid: vec![], ..SuiteConfig::default() }).unwrap().is_empty());
    }
}
