//! The transform Θ from ξ-symbols to r-symbols and its inverse.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::psido::{HalfInt, SymVar, Symbol};
use crate::ring::{CoeffFn, GaussRat, Scalar};

/// Θ with generator image `ξ ↦ ½ r∂⁻¹ + ν∂⁻²`, memoizing the powers `Θ(ξ)^k`.
pub struct Theta {
    nu: GaussRat,
    cache: RwLock<HashMap<(i64, HalfInt), Symbol>>,
}

impl Default for Theta {
    fn default() -> Self {
        Theta::new(GaussRat::zero())
    }
}

impl Clone for Theta {
    fn clone(&self) -> Self {
        Theta::new(self.nu.clone())
    }
}

impl std::fmt::Debug for Theta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Theta(nu = {})", self.nu)
    }
}

fn r_pow(q: i32) -> CoeffFn {
    CoeffFn::x_pow(q)
}

/// Euler degree `q - κ` shared by all stored terms, if any.
fn homogeneous_degree(d: &Symbol) -> Result<Option<HalfInt>> {
    let degs = d.euler_degrees();
    match degs.len() {
        0 => Ok(None),
        1 => Ok(degs.iter().next().map(|&e| HalfInt::halves(e))),
        _ => Err(Error::Domain(
            "truncated input must be homogeneous in Euler degree to bound its image".into(),
        )),
    }
}

impl Theta {
    pub fn new(nu: GaussRat) -> Self {
        Theta { nu, cache: RwLock::new(HashMap::new()) }
    }

    pub fn nu(&self) -> &GaussRat {
        &self.nu
    }

    /// `Θ(ξ) = ½ r∂⁻¹ + ν∂⁻²`.
    pub fn xi_image(&self) -> Symbol {
        let mut s = Symbol::monomial(SymVar::R, r_pow(1).scale_gauss(&GaussRat::frac(1, 2)), HalfInt::int(-1));
        s = s.add(&Symbol::d(SymVar::R, HalfInt::int(-2)).scale_gauss(&self.nu)).expect("same variable");
        s
    }

    /// `Θ(ξ⁻¹) = 2∂ Σ_n (−2ν r⁻¹∂⁻¹)^n r⁻¹`, trusted down to `floor`.
    pub fn xi_inv_image(&self, floor: HalfInt) -> Result<Symbol> {
        let two_d = Symbol::d(SymVar::R, HalfInt::ONE).scale_gauss(&GaussRat::int(2));
        let rinv = Symbol::function(SymVar::R, r_pow(-1));
        if self.nu.is_zero() {
            return two_d.mul(&rinv, floor);
        }
        let step = Symbol::monomial(SymVar::R, r_pow(-1), HalfInt::int(-1))
            .scale_gauss(&GaussRat::int(-2))
            .scale_gauss(&self.nu);
        // term n has top order 1 - n
        let n_max = 1 - floor.floor_int();
        let mut series = Symbol::function(SymVar::R, CoeffFn::one());
        let mut power = series.clone();
        for _ in 1..=n_max {
            power = step.mul(&power, floor - HalfInt::ONE)?;
            series = series.add(&power)?;
        }
        let series = series.with_floor(Some(floor - HalfInt::ONE));
        let tail = series.mul(&rinv, floor - HalfInt::ONE)?;
        two_d.mul(&tail, floor)
    }

    /// `Θ(ξ)^k` for any integer `k`, trusted down to `floor`.
    pub fn xi_power(&self, k: i64, floor: HalfInt) -> Result<Symbol> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(&(k, floor)) {
            return Ok(hit.clone());
        }
        let value = match k {
            0 => Symbol::function(SymVar::R, CoeffFn::one()),
            1 => self.xi_image(),
            -1 => self.xi_inv_image(floor)?,
            _ if k > 0 => self.xi_image().mul(&self.xi_power(k - 1, floor + HalfInt::ONE)?, floor)?,
            _ => {
                let base = self.xi_inv_image(floor + HalfInt::int(k + 1))?;
                base.mul(&self.xi_power(k + 1, floor - HalfInt::ONE)?, floor)?
            }
        };
        self.cache.write().expect("cache lock").insert((k, floor), value.clone());
        Ok(value)
    }

    /// Θ on a ξ-symbol. Truncated inputs must be homogeneous in Euler degree.
    pub fn theta(&self, d: &Symbol, req_floor: HalfInt) -> Result<Symbol> {
        if d.var() != SymVar::Xi {
            return Err(Error::MixedVariable);
        }
        let mut target = req_floor;
        let mut out_floor = None;
        if let Some(f) = d.floor() {
            if let Some(e) = homogeneous_degree(d)? {
                target = target.max(f - e);
            }
            out_floor = Some(target);
        }
        let mut out = Symbol::zero(SymVar::R).with_floor(out_floor);
        for (kappa, c) in d.terms() {
            let shift = kappa.double();
            for (p, q, k, v) in c.raw_terms() {
                let img = self.xi_power(q as i64, target - shift)?.shift_order(shift);
                let coeff = CoeffFn::raw(v.clone(), k, p, 0);
                out = out.add(&img.left_mul_fn(&coeff))?;
            }
        }
        Ok(out)
    }

    /// `Θ⁻¹(r)^k` trusted down to `floor`; `Θ⁻¹(r) = 2ξ∂^{1/2}`, `Θ⁻¹(r⁻¹) = ½∂^{−1/2}ξ⁻¹`.
    fn r_power_inverse(&self, k: i64, floor: HalfInt) -> Result<Symbol> {
        match k {
            0 => Ok(Symbol::function(SymVar::Xi, CoeffFn::one())),
            _ if k > 0 => {
                let base = Symbol::monomial(SymVar::Xi, CoeffFn::x_pow(1).scale(&Scalar::int(2)), HalfInt::HALF);
                base.mul(&self.r_power_inverse(k - 1, floor - HalfInt::HALF)?, floor)
            }
            _ => {
                let xi_inv = Symbol::function(SymVar::Xi, CoeffFn::x_pow(-1));
                let base = Symbol::d(SymVar::Xi, -HalfInt::HALF)
                    .scale_gauss(&GaussRat::frac(1, 2))
                    .mul(&xi_inv, floor)?;
                base.mul(&self.r_power_inverse(k + 1, floor + HalfInt::HALF)?, floor)
            }
        }
    }

    /// Θ⁻¹ on an r-symbol. Truncated inputs must be homogeneous in Euler degree.
    pub fn theta_inv(&self, d: &Symbol, req_floor: HalfInt) -> Result<Symbol> {
        if d.var() != SymVar::R {
            return Err(Error::MixedVariable);
        }
        if !self.nu.is_zero() {
            return Err(Error::Domain("the inverse transform is only implemented at nu = 0".into()));
        }
        let mut target = req_floor;
        let mut out_floor = None;
        if let Some(f) = d.floor() {
            if let Some(e) = homogeneous_degree(d)? {
                target = target.max(f + HalfInt::halves(e.doubled() / 2));
            }
            out_floor = Some(target);
        }
        let mut out = Symbol::zero(SymVar::Xi).with_floor(out_floor);
        for (m, c) in d.terms() {
            let half = HalfInt::halves(m.doubled() / 2);
            for (p, q, k, v) in c.raw_terms() {
                let img = self.r_power_inverse(q as i64, target - half)?.shift_order(half);
                out = out.add(&img.left_mul_fn(&CoeffFn::raw(v.clone(), k, p, 0)))?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLOOR: HalfInt = HalfInt(-8);

    fn xi_mono(q: i32, kappa2: i64) -> Symbol {
        Symbol::monomial(SymVar::Xi, CoeffFn::x_pow(q), HalfInt::halves(kappa2))
    }

    #[test]
    fn generator_images() {
        let th = Theta::default();
        assert_eq!(th.theta(&xi_mono(0, 1), FLOOR).unwrap().to_string(), "d_r | exact");
        assert_eq!(th.theta(&xi_mono(1, 0), FLOOR).unwrap().to_string(), "1/2*r*d_r^-1 | exact");
        assert_eq!(th.theta(&xi_mono(1, 2), FLOOR).unwrap().to_string(), "1/2*r*d_r | exact");
        assert_eq!(th.theta(&xi_mono(-1, 0), FLOOR).unwrap().to_string(), "2*r^-1*d_r - 2*r^-2 | exact");
    }

    #[test]
    fn inverse_generators() {
        let th = Theta::default();
        let d = Symbol::d(SymVar::R, HalfInt::ONE);
        assert_eq!(th.theta_inv(&d, FLOOR).unwrap(), xi_mono(0, 1));
        let r = Symbol::function(SymVar::R, CoeffFn::x_pow(1));
        assert_eq!(th.theta_inv(&r, FLOOR).unwrap(), xi_mono(1, 1).scale(&Scalar::int(2)));
    }

    #[test]
    fn round_trip_on_a_monomial() {
        let th = Theta::default();
        let d = xi_mono(2, 3);
        let img = th.theta(&d, FLOOR).unwrap();
        let back = th.theta_inv(&img, FLOOR).unwrap();
        assert!(back.sub(&d).unwrap().is_zero(), "{back}");
    }

    #[test]
    fn deformed_inverse_is_an_inverse() {
        let th = Theta::new(GaussRat::frac(1, 3));
        let p = th.xi_image().mul(&th.xi_inv_image(HalfInt::int(-4)).unwrap(), HalfInt::int(-6)).unwrap();
        let one = Symbol::function(SymVar::R, CoeffFn::one());
        assert!(p.sub(&one).unwrap().is_zero(), "{p}");
        assert!(p.floor().unwrap() <= HalfInt::int(-4));
    }
}
