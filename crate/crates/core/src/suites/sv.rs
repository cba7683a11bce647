//! Suites on the Schrödinger-Virasoro algebra: its ξ-realization, the embedding into 𝔤, the
//! coadjoint action on 𝒩 and the two representations.

use std::sync::Arc;

use super::algebra::{agree_to, top, trusted_to};
use super::{Case, Check, Normal, SuiteConfig};
use crate::diffop2::{d_pi, DiffOp2};
use crate::error::Result;
use crate::kacmoody::{
    coadjoint, coadjoint_direct, coadjoint_duality_defect, embed_i, embed_symbol, g_bracket, j_map, embedding_defect,
    quotient_nullity_defect, GDual, GElement, Generator, SvElement,
};
use crate::poisson::generic_points;
use crate::psido::{HalfInt, SymVar, Symbol};
use crate::ring::{rat, rat_int, CoeffFn, GaussRat, Scalar};
use crate::svaction::{d_sigma_affine, d_sigma_tilde, representation_defect, SchrodPoint};
use crate::transforms::{minus_two_i_m, schrodinger_invariance_defect, Theta};

pub(super) fn basis(cfg: &SuiteConfig) -> Arc<Vec<(Generator, SvElement)>> {
    Arc::new(Generator::basis(cfg.range).into_iter().map(|g| (g, g.element())).collect())
}

/// The ξ-floor whose Θ-image reaches `fl`.
fn half_floor(fl: HalfInt) -> HalfInt {
    HalfInt::halves(fl.doubled().div_euclid(2))
}

fn m_pow(c: GaussRat, k: i32) -> Scalar {
    Scalar::monomial(c, k)
}

fn laurent(range: i64) -> Vec<(i64, CoeffFn)> {
    (-range..=range).map(|n| (n, CoeffFn::t_pow(n as i32))).collect()
}

pub(super) fn embedding_defect_suite(cfg: &Arc<SuiteConfig>) -> Vec<Case> {
    let b = basis(cfg);
    let norm = cfg.normalize_mass;
    let req = half_floor(cfg.floor);
    let mut cases = Vec::new();
    for i in 0..b.len() {
        for j in 0..b.len() {
            let b = b.clone();
            cases.push(Case::new(format!("[j({}), j({})] - j([{}, {}])", b[i].0, b[j].0, b[i].0, b[j].0), move || {
                let d = embedding_defect(&b[i].1, &b[j].1, req)?;
                let ok = d.top().map_or(true, |t| t <= -HalfInt::HALF) && trusted_to(&d, HalfInt::ZERO);
                Ok(Check::new(ok, d.show(norm), "O(d_xi^(-1/2))"))
            }));
        }
    }
    cases
}

fn coeff_check(s: &Symbol, expected: &[(HalfInt, CoeffFn)], norm: bool) -> Result<Check> {
    let mut ok = true;
    let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
    for (o, want) in expected {
        let got = s.trusted_coeff(*o)?;
        ok &= &got == want;
        lhs.push(format!("[{o}] {}", got.show(norm)));
        rhs.push(format!("[{o}] {}", want.show(norm)));
    }
    Ok(Check::new(ok, lhs.join("; "), rhs.join("; ")))
}

fn plus_part(s: &Symbol) -> Result<DiffOp2> {
    DiffOp2::from_r_symbol(&s.differential_part())
}

pub(super) fn invariance_suite(cfg: &Arc<SuiteConfig>) -> Vec<Case> {
    let (fl, norm) = (cfg.floor, cfg.normalize_mass);
    let th = Arc::new(Theta::new(cfg.nu.clone()));
    let mut cases = Vec::new();
    let r = |q: i32| CoeffFn::x_pow(q);
    for (n, f) in laurent(cfg.range) {
        for j in [0, 1, 2] {
            let f = f.clone();
            cases.push(Case::new(format!("invariance defect f = t^{n}, j = {}", HalfInt::halves(j)), move || {
                let d = schrodinger_invariance_defect(&f, HalfInt::halves(j), fl)?;
                Ok(Check::zero(&d, d.is_zero(), norm))
            }));
        }

        let (f1, f2, f3) = (f.dt(), f.dt().dt(), f.dt().dt().dt());
        let expected_1 = vec![
            (HalfInt::int(2), -&f),
            (HalfInt::ONE, (&f1 * &r(1)).scale(&m_pow(GaussRat::i(), 1))),
            (HalfInt::ZERO, (&f2 * &r(2)).scale(&m_pow(GaussRat::frac(1, 2), 2))),
            (
                HalfInt::int(-1),
                -&(&(&f2 * &r(1)).scale(&m_pow(GaussRat::frac(1, 2), 2))
                    + &(&f3 * &r(3)).scale(&m_pow(GaussRat::new(rat_int(0), rat(1, 6)), 3))),
            ),
        ];
        let expected_half = vec![
            (HalfInt::ONE, -&f),
            (HalfInt::ZERO, (&f1 * &r(1)).scale(&m_pow(GaussRat::i(), 1))),
            (HalfInt::int(-1), (&f2 * &r(2)).scale(&m_pow(GaussRat::frac(1, 2), 2))),
        ];
        for (j, expected) in [(HalfInt::ONE, expected_1), (HalfInt::HALF, expected_half)] {
            let (th, f) = (th.clone(), f.clone());
            cases.push(Case::new(format!("expansion of X^({j}) for t^{n}"), move || {
                coeff_check(&th.x_generator(&f, j, fl)?, &expected, norm)
            }));
        }
        {
            let (th, h) = (th.clone(), f.clone());
            cases.push(Case::new(format!("expansion of X^(0) for t^{n}"), move || {
                let x = th.x_generator(&h, HalfInt::ZERO, fl)?;
                let mut check = coeff_check(&x, &[(HalfInt::ZERO, -&h)], norm)?;
                check.ok &= top(&x) <= HalfInt::ZERO;
                Ok(check)
            }));
        }

        let (th1, f_l) = (th.clone(), f.clone());
        cases.push(Case::new(format!("(X^(1)_f)+ - f*D0 = -2iM dpi0(L_f), f = t^{n}"), move || {
            let plus = plus_part(&th1.x_generator(&f_l, HalfInt::ONE, fl)?)?;
            let lhs = plus.sub(&DiffOp2::function(f_l.clone()).mul(&DiffOp2::free_schrodinger()));
            let rhs = d_pi(&Scalar::zero(), &SvElement::l(f_l.clone())).scale(&minus_two_i_m());
            Ok(Check::eq(&lhs, &rhs, norm))
        }));
        let (th2, g) = (th.clone(), f.clone());
        cases.push(Case::new(format!("(X^(1/2)_g)+ = dpi0(Y_g), g = t^{n}"), move || {
            let lhs = plus_part(&th2.x_generator(&g, HalfInt::HALF, fl)?)?;
            Ok(Check::eq(&lhs, &d_pi(&Scalar::zero(), &SvElement::y(g.clone())), norm))
        }));
        let (th3, h) = (th.clone(), f.clone());
        cases.push(Case::new(format!("-iM (X^(0)_h)+ = dpi0(M_h), h = t^{n}"), move || {
            let lhs = plus_part(&th3.x_generator(&h, HalfInt::ZERO, fl)?)?.scale(&m_pow(GaussRat::new(rat_int(0), rat_int(-1)), 1));
            Ok(Check::eq(&lhs, &d_pi(&Scalar::zero(), &SvElement::m(h.clone())), norm))
        }));
    }
    cases
}

fn g_agree(a: &GElement, b: &GElement, fl: HalfInt, norm: bool) -> Result<Check> {
    let sym = agree_to(&a.big_w, &b.big_w, fl, norm)?;
    let ok = sym.ok && a.w == b.w && a.alpha == b.alpha;
    Ok(Check::new(ok, a.show(norm), b.show(norm)))
}

pub(super) fn homomorphism_suite(cfg: &Arc<SuiteConfig>) -> Vec<Case> {
    let b = basis(cfg);
    let (fl, norm) = (cfg.floor, cfg.normalize_mass);
    let th = Arc::new(Theta::new(cfg.nu.clone()));
    let images: Arc<Vec<Result<GElement>>> = Arc::new(b.iter().map(|(_, x)| embed_i(&th, x, fl - HalfInt::ONE)).collect());
    let mut cases = Vec::new();
    for i in 0..b.len() {
        for j in 0..b.len() {
            let (b, images, th, c) = (b.clone(), images.clone(), th.clone(), cfg.c.clone());
            cases.push(Case::new(format!("[I({}), I({})] = I([j{}, j{}])", b[i].0, b[j].0, b[i].0, b[j].0), move || {
                let (ix, iy) = (images[i].clone()?, images[j].clone()?);
                let lhs = g_bracket(&ix, &iy, &c, fl)?;
                let inner = j_map(&b[i].1).bracket(&j_map(&b[j].1), half_floor(fl))?;
                let rhs = embed_symbol(&th, &inner, fl)?;
                g_agree(&lhs, &rhs, fl, norm)
            }));
        }
    }
    cases
}

/// The monomial points of 𝒩 with exponents in the box: one nonzero component each.
pub(super) fn monomial_points(range: i64) -> Vec<(String, GDual)> {
    let z = CoeffFn::zero;
    let mut out = Vec::new();
    for p in -range..=range {
        let tp = CoeffFn::t_pow(p as i32);
        out.push((format!("v = t^{p}"), GDual::point(tp.clone(), z(), z(), z())));
        out.push((format!("V0 = t^{p}"), GDual::point(z(), z(), tp.clone(), z())));
        out.push((format!("a = t^{p}"), GDual::point(z(), z(), z(), tp.clone())));
        for q in -range..=range {
            let c = CoeffFn::monomial(Scalar::one(), p as i32, q as i32);
            out.push((format!("V-2 = t^{p} r^{q}"), GDual::point(z(), c, z(), z())));
        }
    }
    out.into_iter().map(|(s, d)| (s, d.expect("t-only data"))).collect()
}

/// Test elements of 𝔤 with monomial components.
fn test_elements(range: i64) -> Vec<(String, GElement)> {
    let mut out = Vec::new();
    for p in -range..=range {
        let tp = CoeffFn::t_pow(p as i32);
        out.push((format!("t^{p} d_t"), GElement::vector_field(tp.clone())));
        out.push((format!("alpha = t^{p}"), GElement::central(tp.clone())));
        for q in -range..=range {
            for o in -2..=1 {
                let c = CoeffFn::monomial(Scalar::one(), p as i32, q as i32);
                out.push((format!("t^{p} r^{q} d_r^{o}"), GElement::symbol(Symbol::monomial(SymVar::R, c, HalfInt::int(o)))));
            }
        }
    }
    out
}

/// `(a, V₋₂)` of `ad*_X μ` against `dσ̃_μ(X)(aΔ₀ + V₋₂)`.
fn schrodinger_part(mu_dual: &GDual) -> SchrodPoint {
    SchrodPoint::new(mu_dual.a.clone(), mu_dual.v_m2())
}

fn sigma_agrees(x: &SvElement, mu: &GDual, weight: &GaussRat, c: &GaussRat) -> Result<(bool, SchrodPoint, SchrodPoint)> {
    let lhs = schrodinger_part(&coadjoint(x, mu, c)?);
    let rhs = d_sigma_tilde(weight, x, &schrodinger_part(mu));
    Ok((lhs == rhs, lhs, rhs))
}

pub(super) fn coadjoint_suite(cfg: &Arc<SuiteConfig>) -> Vec<Case> {
    let b = basis(cfg);
    let (fl, norm) = (cfg.floor, cfg.normalize_mass);
    let th = Arc::new(Theta::new(cfg.nu.clone()));
    let images: Arc<Vec<Result<GElement>>> = Arc::new(b.iter().map(|(_, x)| embed_i(&th, x, fl)).collect());
    let points = Arc::new(monomial_points(cfg.range));
    let mut cases = Vec::new();

    for i in 0..b.len() {
        for k in 0..points.len() {
            let (bb, images, pts, c) = (b.clone(), images.clone(), points.clone(), cfg.c.clone());
            cases.push(Case::new(format!("(a) ad*_I({}) at {} stays in N", bb[i].0, pts[k].0), move || {
                let mu = &pts[k].1;
                let direct = coadjoint_direct(&images[i].clone()?, mu, &c)?;
                let closed = coadjoint(&bb[i].1, mu, &c)?;
                Ok(Check::new(direct.in_n() && direct == closed, direct.show(norm), closed.show(norm)))
            }));
            let (b, points, c, weight) = (b.clone(), points.clone(), cfg.c.clone(), cfg.mu.clone());
            cases.push(Case::new(format!("(b) ad*_{} = dsigma at {}", b[i].0, points[k].0), move || {
                let (ok, lhs, rhs) = sigma_agrees(&b[i].1, &points[k].1, &weight, &c)?;
                Ok(Check::new(ok, lhs.show(norm), rhs.show(norm)))
            }));
        }
    }

    let generic: Arc<Vec<GDual>> = Arc::new(generic_points().iter().map(|p| p.to_dual().expect("points of N")).collect());
    let tests = Arc::new(test_elements(cfg.range));
    for i in 0..b.len() {
        for (g, _) in generic.iter().enumerate() {
            for k in 0..tests.len() {
                let (b, generic, tests, th, c) = (b.clone(), generic.clone(), tests.clone(), th.clone(), cfg.c.clone());
                cases.push(Case::new(format!("(c) duality {} at generic point {g} against {}", b[i].0, tests[k].0), move || {
                    let d = coadjoint_duality_defect(&th, &b[i].1, &generic[g], &tests[k].1, &c, fl)?;
                    Ok(Check::zero(&d, d.is_zero(), norm))
                }));
            }
        }
    }

    for kappa in [-1, -2, -3].map(HalfInt::halves) {
        for (n, f) in laurent(cfg.range) {
            for (g, _) in generic.iter().enumerate() {
                for k in 0..tests.len() {
                    let (generic, tests, th, c, f) = (generic.clone(), tests.clone(), th.clone(), cfg.c.clone(), f.clone());
                    cases.push(Case::new(format!("(d) nullity t^{n} d_xi^{kappa} at generic point {g} against {}", tests[k].0), move || {
                        let d = quotient_nullity_defect(&th, &f, kappa, &generic[g], &tests[k].1, &c, fl)?;
                        Ok(Check::zero(&d, d.is_zero(), norm))
                    }));
                }
            }
        }
    }

    let (points, weight) = (points.clone(), cfg.mu.clone());
    cases.push(Case::new("(e) negative control at c = 1", move || {
        let one = GaussRat::one();
        let mut mismatches = 0usize;
        let mut first = None;
        for (g, x) in b.iter() {
            for (label, mu) in points.iter() {
                let (ok, lhs, rhs) = sigma_agrees(x, mu, &weight, &one)?;
                if !ok {
                    mismatches += 1;
                    first.get_or_insert_with(|| format!("{g} at {label}: {} vs {}", lhs.show(norm), rhs.show(norm)));
                }
            }
        }
        let total = b.len() * points.len();
        Ok(Check::new(mismatches > 0, format!("{mismatches}/{total} mismatches; first: {}", first.unwrap_or_default()), "at least one mismatch"))
    }));
    cases
}

fn weights(cfg: &SuiteConfig) -> Arc<Vec<GaussRat>> {
    let mut out = vec![GaussRat::zero(), GaussRat::frac(1, 4), GaussRat::one()];
    if !out.contains(&cfg.mu) {
        out.push(cfg.mu.clone());
    }
    Arc::new(out)
}

pub(super) fn dpi_rep(cfg: &Arc<SuiteConfig>) -> Vec<Case> {
    let b = basis(cfg);
    let norm = cfg.normalize_mass;
    let ws = weights(cfg);
    let mut cases = Vec::new();
    for w in 0..ws.len() {
        for i in 0..b.len() {
            for j in 0..b.len() {
                let (b, ws) = (b.clone(), ws.clone());
                cases.push(Case::new(format!("mu = {}: [dpi({}), dpi({})] = dpi([.,.])", ws[w], b[i].0, b[j].0), move || {
                    let mu = Scalar::constant(ws[w].clone());
                    let (x, y) = (&b[i].1, &b[j].1);
                    let lhs = d_pi(&mu, x).bracket(&d_pi(&mu, y));
                    Ok(Check::eq(&lhs, &d_pi(&mu, &x.bracket(y)), norm))
                }));
            }
        }
    }
    cases
}

/// Points `aΔ₀ + V` with one monomial component.
fn schrod_points(range: i64) -> Vec<(String, SchrodPoint)> {
    let mut out = Vec::new();
    for p in -range..=range {
        out.push((format!("a = t^{p}"), SchrodPoint::new(CoeffFn::t_pow(p as i32), CoeffFn::zero())));
        for q in -range..=range {
            out.push((format!("V = t^{p} r^{q}"), SchrodPoint::new(CoeffFn::zero(), CoeffFn::monomial(Scalar::one(), p as i32, q as i32))));
        }
    }
    out
}

pub(super) fn dsigma_rep(cfg: &Arc<SuiteConfig>) -> Vec<Case> {
    let b = basis(cfg);
    let norm = cfg.normalize_mass;
    let ws = weights(cfg);
    let points = Arc::new(schrod_points(cfg.range));
    let mut cases = Vec::new();
    for w in 0..ws.len() {
        for i in 0..b.len() {
            for j in 0..b.len() {
                let (b, ws, points) = (b.clone(), ws.clone(), points.clone());
                cases.push(Case::new(format!("mu = {}: dsigma on [{}, {}] at all monomial points", ws[w], b[i].0, b[j].0), move || {
                    for (label, p) in points.iter() {
                        let d = representation_defect(&ws[w], &b[i].1, &b[j].1, p);
                        if !d.is_zero() {
                            return Ok(Check::zero(&d, false, norm).with_context(label));
                        }
                    }
                    Ok(Check::new(true, "0", "0"))
                }));
            }
        }
    }
    for (n, f) in laurent(cfg.range) {
        for q in -cfg.range..=cfg.range {
            for p in -cfg.range..=cfg.range {
                let (f, ws) = (f.clone(), ws.clone());
                cases.push(Case::new(format!("dsigma~(L_t^{n}) - dsigma(L_t^{n}) on D0 + t^{p} r^{q}"), move || {
                    let v = CoeffFn::monomial(Scalar::one(), p as i32, q as i32);
                    let unit = SchrodPoint::new(CoeffFn::one(), v.clone());
                    let expected = SchrodPoint::new(-&f.dt(), -&(&f.dt() * &v));
                    let mut ok = true;
                    let mut got = SchrodPoint::default();
                    for w in ws.iter() {
                        let x = SvElement::l(f.clone());
                        got = d_sigma_tilde(w, &x, &unit).sub(&d_sigma_affine(w, &x, &unit));
                        ok &= got == expected;
                    }
                    Ok(Check::new(ok, got.show(norm), expected.show(norm)))
                }));
            }
        }
    }
    cases
}
