//! The Poisson bracket of local functionals and the Hamiltonian operator.
//!
//! The bracket is normalized by `{F, G} = dF(H_G)`, where `H_G` is given by [`hamiltonian_vector`].

use super::functional::{integrate, Field, FunctionalClass, LocalFunctional, SlicePoint};
use crate::error::Result;
use crate::kacmoody::GDual;
use crate::ring::{CoeffFn, GaussRat, Scalar, Var};

use FunctionalClass::{Central, Potential, Vector};

fn delta(f: &LocalFunctional, field: Field, p: &SlicePoint) -> CoeffFn {
    f.variational_derivative(field).density_at(p)
}

fn res_t(f: &CoeffFn) -> Scalar {
    integrate(Vector, f)
}

fn res_tr(f: &CoeffFn) -> Scalar {
    integrate(Potential, f)
}

fn bracket_parts(cf: FunctionalClass, f: &LocalFunctional, cg: FunctionalClass, g: &LocalFunctional, p: &SlicePoint, c: &GaussRat) -> Scalar {
    match (cf, cg) {
        (Potential, Potential) => {
            let (f2, f0) = (delta(f, Field::Vm2, p), delta(f, Field::V0, p));
            let (g2, g0) = (delta(g, Field::Vm2, p), delta(g, Field::V0, p));
            let mut dens = &p.v_m2 * &(&(&f2.dx() * &g2) - &(&g2.dx() * &f2));
            dens += &(&p.v0 * &(&(&g2 * &f0) - &(&g0 * &f2)).dx());
            let central = &(&f0.dx() * &g2) + &(&f2.dx() * &g0);
            dens -= &(&p.a * &central).scale_gauss(c);
            res_tr(&dens)
        }
        (Vector, Potential) => {
            let fv = delta(f, Field::V, p);
            let (g2, g0) = (delta(g, Field::Vm2, p), delta(g, Field::V0, p));
            let dens = &fv * &(&(&p.v_m2 * &g2.dt()) + &(&p.v0 * &g0.dt()));
            -&res_tr(&dens)
        }
        (Potential, Vector) => -&bracket_parts(cg, g, cf, f, p, c),
        (Vector, Central) => {
            let fv = delta(f, Field::V, p);
            let ga = delta(g, Field::A, p);
            -&res_t(&(&(&p.a * &fv) * &ga.dt()))
        }
        (Central, Vector) => -&bracket_parts(cg, g, cf, f, p, c),
        (Vector, Vector) => {
            let fv = delta(f, Field::V, p);
            let gv = delta(g, Field::V, p);
            let dens = &p.v * &(&(&fv * &gv.dt()) - &(&gv * &fv.dt()));
            -&res_t(&dens)
        }
        _ => Scalar::zero(),
    }
}

/// `{F, G}` evaluated at a point of the affine slice, with central charge `c`.
pub fn poisson_bracket(f: &LocalFunctional, g: &LocalFunctional, p: &SlicePoint, c: &GaussRat) -> Scalar {
    let mut out = Scalar::zero();
    for (cf, pf) in f.parts() {
        for (cg, pg) in g.parts() {
            out = &out + &bracket_parts(cf, &pf, cg, &pg, p, c);
        }
    }
    out
}

/// The Hamiltonian vector `H_F` at a point, as an increment `(dt²; ∂⁻², ∂⁰; dt)`.
pub fn hamiltonian_increment(f: &LocalFunctional, p: &SlicePoint, c: &GaussRat) -> SlicePoint {
    let mut out = SlicePoint { v: CoeffFn::zero(), v_m2: CoeffFn::zero(), v0: CoeffFn::zero(), a: CoeffFn::zero() };
    for (class, part) in f.parts() {
        match class {
            Potential => {
                let (f2, f0) = (delta(&part, Field::Vm2, p), delta(&part, Field::V0, p));
                let flow = &(&p.v_m2 * &f2.dt()) + &(&p.v0 * &f0.dt());
                out.v -= &flow.residue(Var::X);
                out.v_m2 -= &(&p.v_m2 * &f2.dx()).scale_gauss(&GaussRat::int(2));
                out.v_m2 -= &(&p.v_m2.dx() * &f2);
                out.v_m2 += &(&p.a * &f0.dx()).scale_gauss(c);
                out.v_m2 += &(&p.v0.dx() * &f0);
                out.v0 += &(&p.a * &f2.dx()).scale_gauss(c);
                out.v0 -= &(&p.v0.dx() * &f2);
            }
            Vector => {
                let fv = delta(&part, Field::V, p);
                out.v -= &(&(&p.v * &fv.dt()).scale_gauss(&GaussRat::int(2)) + &(&p.v.dt() * &fv));
                out.v_m2 -= &(&p.v_m2 * &fv).dt();
                out.v0 -= &(&p.v0 * &fv).dt();
                out.a -= &(&p.a * &fv).dt();
            }
            Central => {
                let fa = delta(&part, Field::A, p);
                out.v -= &(&p.a * &fa.dt());
            }
        }
    }
    out
}

/// `H_F` as an element of the dual.
pub fn hamiltonian_vector(f: &LocalFunctional, p: &SlicePoint, c: &GaussRat) -> Result<GDual> {
    hamiltonian_increment(f, p, c).to_dual()
}

/// `dF_p(X) = d/dε F(p + εX)` at `ε = 0`, computed from the density without integration by parts.
pub fn directional_derivative(f: &LocalFunctional, p: &SlicePoint, x: &SlicePoint) -> Scalar {
    let mut out = Scalar::zero();
    for (class, part) in f.parts() {
        let mut dens = CoeffFn::zero();
        for (m, c) in part.terms() {
            for k in 0..m.len() {
                let mut prod = &c.clone() * &x.jet(m[k]);
                for (l, v) in m.iter().enumerate() {
                    if l != k {
                        prod = &prod * &p.jet(*v);
                    }
                }
                dens += &prod;
            }
        }
        out = &out + &integrate(class, &dens);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::functional::JetVar;

    fn point() -> SlicePoint {
        SlicePoint::new(
            &CoeffFn::t_pow(-3) + &CoeffFn::t_pow(1),
            &(&CoeffFn::monomial(Scalar::one(), 1, -1) + &CoeffFn::monomial(Scalar::int(2), -2, 1)) + &CoeffFn::x_pow(-3),
            &CoeffFn::monomial(Scalar::int(5), -1, -2) + &CoeffFn::t_pow(2),
            &CoeffFn::t_pow(-1) + &CoeffFn::t_pow(3),
        )
        .unwrap()
    }

    fn samples() -> Vec<LocalFunctional> {
        let j = |f, i, k| JetVar::new(f, i, k).unwrap();
        let mono = |c: CoeffFn, jets: Vec<JetVar>| LocalFunctional::monomial(c, jets).unwrap();
        vec![
            mono(CoeffFn::monomial(Scalar::one(), 2, 1), vec![j(Field::Vm2, 0, 0)]),
            mono(CoeffFn::monomial(Scalar::int(3), -1, 3), vec![j(Field::V0, 0, 0)]),
            mono(CoeffFn::monomial(Scalar::one(), 1, 2), vec![j(Field::Vm2, 1, 0), j(Field::V0, 0, 1)]),
            mono(CoeffFn::t_pow(2), vec![j(Field::V, 0, 0)]),
            mono(CoeffFn::t_pow(-1), vec![j(Field::V, 1, 0), j(Field::V, 0, 0)]),
            mono(CoeffFn::t_pow(3), vec![j(Field::A, 0, 0)]),
            mono(CoeffFn::one(), vec![j(Field::A, 0, 0), j(Field::A, 0, 0)]),
        ]
    }

    #[test]
    fn bracket_is_dual_to_the_hamiltonian() {
        let p = point();
        for c in [GaussRat::zero(), GaussRat::int(2)] {
            for f in samples() {
                for g in samples() {
                    let lhs = poisson_bracket(&f, &g, &p, &c);
                    let rhs = directional_derivative(&f, &p, &hamiltonian_increment(&g, &p, &c));
                    assert_eq!(lhs, rhs, "{f} / {g}");
                    assert_eq!(lhs, -&poisson_bracket(&g, &f, &p, &c));
                }
            }
        }
    }

    #[test]
    fn self_bracket_vanishes() {
        let f = samples().into_iter().fold(LocalFunctional::zero(), |a, b| a.add(&b));
        assert!(poisson_bracket(&f, &f, &point(), &GaussRat::int(2)).is_zero());
    }
}
