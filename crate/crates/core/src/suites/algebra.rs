//! Suites on the symbol algebras themselves: axioms, Θ, the time shift and the cocycles.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{Case, Check, Normal, SuiteConfig};
use crate::cocycles::{cocycle_identity_defect, eval_cocycle, CocycleId};
use crate::error::Result;
use crate::psido::{HalfInt, SymVar, Symbol};
use crate::ring::{CoeffFn, Scalar};
use crate::transforms::{time_shift, time_shift_left_inverse, minus_two_i_m, Theta};

fn r_mono(q: i64, o: i64) -> Symbol {
    Symbol::monomial(SymVar::R, CoeffFn::x_pow(q as i32), HalfInt::int(o))
}

fn xi_mono(q: i64, kappa: HalfInt) -> Symbol {
    Symbol::monomial(SymVar::Xi, CoeffFn::x_pow(q as i32), kappa)
}

pub(super) fn top(s: &Symbol) -> HalfInt {
    s.top().unwrap_or(HalfInt::ZERO)
}

pub(super) fn trusted_to(s: &Symbol, floor: HalfInt) -> bool {
    s.floor().map_or(true, |f| f <= floor)
}

/// Zero above the floor, with the floor actually reached.
fn vanishes_to(s: &Symbol, floor: HalfInt, norm: bool) -> Check {
    let ok = s.is_zero() && trusted_to(s, floor);
    Check::zero(s, ok, norm)
}

/// `A − B` vanishes and both sides are trusted down to `floor`.
pub(super) fn agree_to(a: &Symbol, b: &Symbol, floor: HalfInt, norm: bool) -> Result<Check> {
    let d = a.sub(b)?;
    let ok = d.is_zero() && trusted_to(a, floor) && trusted_to(b, floor);
    Ok(Check::new(ok, a.show(norm), b.show(norm)))
}

fn r_box(range: i64, max_order: i64) -> Arc<Vec<Symbol>> {
    let mut out = Vec::new();
    for q in -range..=range {
        for o in -range..=max_order {
            out.push(r_mono(q, o));
        }
    }
    Arc::new(out)
}

fn xi_box(range: i64) -> Arc<Vec<Symbol>> {
    let mut out = Vec::new();
    for q in -range..=range {
        for k in -2 * range..=2 * range {
            out.push(xi_mono(q, HalfInt::halves(k)));
        }
    }
    Arc::new(out)
}

/// Random polynomial r-symbols with a few terms.
fn random_r_symbols(cfg: &SuiteConfig, count: usize, max_order: i64, salt: u64) -> Vec<Symbol> {
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ salt);
    let range = cfg.range.max(1);
    (0..count)
        .map(|_| {
            let mut s = Symbol::zero(SymVar::R);
            for _ in 0..rng.gen_range(1..=3) {
                let c = CoeffFn::monomial(Scalar::int(rng.gen_range(-5..=5)), rng.gen_range(-2..=2), rng.gen_range(-range..=range) as i32);
                let o = HalfInt::int(rng.gen_range(-range..=max_order));
                s = s.add(&Symbol::monomial(SymVar::R, c, o)).expect("same variable");
            }
            s
        })
        .collect()
}

fn associativity(a: &Symbol, b: &Symbol, c: &Symbol, fl: HalfInt, norm: bool) -> Result<Check> {
    let lhs = a.mul(b, fl - top(c))?.mul(c, fl)?;
    let rhs = a.mul(&b.mul(c, fl - top(a))?, fl)?;
    agree_to(&lhs, &rhs, fl, norm)
}

fn jacobi(a: &Symbol, b: &Symbol, c: &Symbol, fl: HalfInt, norm: bool) -> Result<Check> {
    let term = |x: &Symbol, y: &Symbol, z: &Symbol| -> Result<Symbol> { x.bracket(&y.bracket(z, fl - top(x))?, fl) };
    let sum = term(a, b, c)?.add(&term(b, c, a)?)?.add(&term(c, a, b)?)?;
    Ok(vanishes_to(&sum, fl, norm))
}

pub(super) fn psido_axioms(cfg: &Arc<SuiteConfig>) -> Vec<Case> {
    let monos = r_box(cfg.range, cfg.range);
    let n = monos.len();
    let (fl, norm) = (cfg.floor, cfg.normalize_mass);
    let mut cases = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let m = monos.clone();
                let name = format!("assoc ({}) ({}) ({})", m[i].render_body(), m[j].render_body(), m[k].render_body());
                cases.push(Case::new(name, move || associativity(&m[i], &m[j], &m[k], fl, norm)));
                if i < j && j < k {
                    let m = monos.clone();
                    let name = format!("jacobi ({}) ({}) ({})", m[i].render_body(), m[j].render_body(), m[k].render_body());
                    cases.push(Case::new(name, move || jacobi(&m[i], &m[j], &m[k], fl, norm)));
                }
            }
            let m = monos.clone();
            let name = format!("trace of bracket ({}) ({})", m[i].render_body(), m[j].render_body());
            cases.push(Case::new(name, move || {
                let t = m[i].bracket(&m[j], fl)?.adler_trace()?;
                Ok(Check::zero(&t, t.is_zero(), norm))
            }));
            if top(&monos[i]) <= HalfInt::ONE && top(&monos[j]) <= HalfInt::ONE {
                let m = monos.clone();
                let name = format!("closure ({}) ({})", m[i].render_body(), m[j].render_body());
                cases.push(Case::new(name, move || {
                    let b = m[i].bracket(&m[j], fl)?;
                    Ok(Check::new(b.top().map_or(true, |t| t <= HalfInt::ONE), b.to_string(), "order <= 1"))
                }));
            }
        }
    }
    let rand = Arc::new(random_r_symbols(cfg, 3 * cfg.random, cfg.range, 0x5eed_0001));
    for t in 0..cfg.random {
        let m = rand.clone();
        let name = format!("random assoc+jacobi ({}) ({}) ({})", m[3 * t], m[3 * t + 1], m[3 * t + 2]);
        cases.push(Case::new(name, move || {
            let (a, b, c) = (&m[3 * t], &m[3 * t + 1], &m[3 * t + 2]);
            let first = associativity(a, b, c, fl, norm)?;
            if !first.ok {
                return Ok(first);
            }
            jacobi(a, b, c, fl, norm)
        }));
    }
    cases
}

/// Top r-order of Θ(ξ^q ∂_ξ^κ).
fn theta_top(s: &Symbol) -> HalfInt {
    let (kappa, c) = s.terms().next_back().expect("nonzero monomial");
    let q = c.degree_range(crate::ring::Var::X).map_or(0, |(lo, _)| lo);
    kappa.double() - HalfInt::int(q as i64)
}

/// Euler degree `q − κ` of a ξ- or r-monomial.
fn euler_degree(s: &Symbol) -> HalfInt {
    HalfInt::halves(*s.euler_degrees().iter().next().unwrap_or(&0))
}

pub(super) fn theta(cfg: &Arc<SuiteConfig>) -> Vec<Case> {
    let th = Arc::new(Theta::default());
    let xis = xi_box(cfg.range);
    let rs = r_box(cfg.range, cfg.range);
    let (fl, norm) = (cfg.floor, cfg.normalize_mass);
    let mut cases = Vec::new();
    for i in 0..xis.len() {
        for j in 0..xis.len() {
            let (m, th) = (xis.clone(), th.clone());
            let name = format!("homomorphism ({}) ({})", m[i].render_body(), m[j].render_body());
            cases.push(Case::new(name, move || {
                let (a, b) = (&m[i], &m[j]);
                let e = euler_degree(a) + euler_degree(b);
                let lhs = th.theta(&a.mul(b, fl + e)?, fl)?;
                let (ta, tb) = (theta_top(a), theta_top(b));
                if ta + tb < fl {
                    return Ok(vanishes_to(&lhs, fl, norm));
                }
                let rhs = th.theta(a, fl - tb)?.mul(&th.theta(b, fl - ta)?, fl)?;
                agree_to(&lhs, &rhs, fl, norm)
            }));
        }
        let (m, th2) = (xis.clone(), th.clone());
        let name = format!("round trip xi ({})", m[i].render_body());
        cases.push(Case::new(name, move || {
            let a = &m[i];
            let img = th2.theta(a, fl - euler_degree(a))?;
            let back = th2.theta_inv(&img, fl)?;
            agree_to(&back, a, fl, norm)
        }));
        let (m, th2) = (xis.clone(), th.clone());
        let name = format!("euler ({})", m[i].render_body());
        cases.push(Case::new(name, move || {
            let a = &m[i];
            let lhs = th2.theta(&a.euler(), fl)?;
            let rhs = th2.theta(a, fl)?.euler().scale(&Scalar::frac(1, 2));
            agree_to(&lhs, &rhs, fl, norm)
        }));
        let (m, th2) = (xis.clone(), th.clone());
        let name = format!("trace pullback ({})", m[i].render_body());
        cases.push(Case::new(name, move || {
            let a = &m[i];
            let (kappa, c) = a.terms().next().expect("monomial");
            let k = c.degree_range(crate::ring::Var::X).map_or(0, |(lo, _)| lo);
            let expected = if kappa == -HalfInt::ONE && k == -1 { CoeffFn::int(2) } else { CoeffFn::zero() };
            let got = th2.theta(a, fl)?.adler_trace()?;
            Ok(Check::eq(&got, &expected, norm))
        }));
    }
    for i in 0..rs.len() {
        let (m, th2) = (rs.clone(), th.clone());
        let name = format!("round trip r ({})", m[i].render_body());
        cases.push(Case::new(name, move || {
            let b = &m[i];
            let back = th2.theta_inv(b, fl + HalfInt::halves(euler_degree(b).doubled() / 2))?;
            let again = th2.theta(&back, fl)?;
            agree_to(&again, b, fl, norm)
        }));
    }
    cases
}

pub(super) fn timeshift(cfg: &Arc<SuiteConfig>) -> Vec<Case> {
    let th = Arc::new(Theta::default());
    let (fl, norm, range) = (cfg.floor, cfg.normalize_mass, cfg.range);
    let depth = range + 2;
    let xi = |n: i64| CoeffFn::x_pow(n as i32);
    let mut cases = Vec::new();
    for n in -range..=range {
        cases.push(Case::new(format!("left inverse xi^{n}"), move || {
            let back = time_shift_left_inverse(&time_shift(&xi(n), depth)?);
            Ok(Check::eq(&back, &xi(n), norm))
        }));
        cases.push(Case::new(format!("free transport xi^{n}"), move || {
            let g = time_shift(&xi(n), depth)?;
            let defect = (&g.dt().scale(&minus_two_i_m()) - &g.dx()).filter_x(|q| (q as i64) < depth);
            Ok(Check::zero(&defect, defect.is_zero(), norm))
        }));
        for m in -range..=range {
            cases.push(Case::new(format!("multiplicative xi^{n} xi^{m}"), move || {
                let lhs = (&time_shift(&xi(n), depth)? * &time_shift(&xi(m), depth)?).filter_x(|q| (q as i64) <= depth);
                let rhs = time_shift(&xi(n + m), depth)?.filter_x(|q| (q as i64) <= depth);
                Ok(Check::eq(&lhs, &rhs, norm))
            }));
        }
    }
    let xis = xi_box(range.min(2));
    let half_floor = HalfInt::halves(fl.doubled().div_euclid(2));
    for i in 0..xis.len() {
        for j in 0..xis.len() {
            let (m, th) = (xis.clone(), th.clone());
            let name = format!("looped homomorphism ({}) ({})", m[i].render_body(), m[j].render_body());
            cases.push(Case::new(name, move || {
                let (a, b) = (&m[i], &m[j]);
                let ta = top(a).double();
                let tb = top(b).double();
                let lhs = th.theta_t(&a.mul(b, half_floor)?, fl)?;
                if ta + tb < fl {
                    return Ok(vanishes_to(&lhs, fl, norm));
                }
                let rhs = th.theta_t(a, fl - tb)?.mul(&th.theta_t(b, fl - ta)?, fl)?;
                agree_to(&lhs, &rhs, fl, norm)
            }));
        }
    }
    cases
}

pub(super) fn cocycles(cfg: &Arc<SuiteConfig>) -> Vec<Case> {
    let monos = r_box(cfg.range, 1);
    let n = monos.len();
    let mut cases = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let m = monos.clone();
            let name = format!("antisymmetry ({}) ({})", m[i].render_body(), m[j].render_body());
            cases.push(Case::new(name, move || {
                let mut bad = Vec::new();
                for id in CocycleId::ALL {
                    let s = &eval_cocycle(id, &m[i], &m[j])? + &eval_cocycle(id, &m[j], &m[i])?;
                    if !s.is_zero() {
                        bad.push(format!("{id}: {s}"));
                    }
                }
                Ok(Check::new(bad.is_empty(), bad.join("; "), "0"))
            }));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let m = monos.clone();
                let name = format!("cocycle identity ({}) ({}) ({})", m[i].render_body(), m[j].render_body(), m[k].render_body());
                cases.push(Case::new(name, move || identity_check(&m[i], &m[j], &m[k])));
            }
        }
    }
    let rand = Arc::new(random_r_symbols(cfg, 3 * cfg.random, 1, 0x5eed_0002));
    for t in 0..cfg.random {
        let m = rand.clone();
        let name = format!("random cocycle identity ({}) ({}) ({})", m[3 * t], m[3 * t + 1], m[3 * t + 2]);
        cases.push(Case::new(name, move || identity_check(&m[3 * t], &m[3 * t + 1], &m[3 * t + 2])));
    }
    cases
}

fn identity_check(a: &Symbol, b: &Symbol, c: &Symbol) -> Result<Check> {
    let mut bad = Vec::new();
    for id in CocycleId::ALL {
        let d = cocycle_identity_defect(id, a, b, c)?;
        if !d.is_zero() {
            bad.push(format!("{id}: {d}"));
        }
    }
    Ok(Check::new(bad.is_empty(), bad.join("; "), "0"))
}
