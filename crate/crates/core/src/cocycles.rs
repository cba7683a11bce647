//! The six central 2-cocycles of the Lie algebra of r-symbols of order at most one.
//!
//! Coordinates: every integral over the circle is a residue in `r`, and `∂_θ` is read as
//! `∂_r`. With this dictionary `c3` is literally `res(f′g)` on `(f∂, g∂⁻¹)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::psido::{HalfInt, SymVar, Symbol};
use crate::ring::{CoeffFn, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CocycleId {
    C0,
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl CocycleId {
    pub const ALL: [CocycleId; 6] =
        [CocycleId::C0, CocycleId::C1, CocycleId::C2, CocycleId::C3, CocycleId::C4, CocycleId::C5];
}

impl fmt::Display for CocycleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", *self as u8)
    }
}

/// The coefficients at orders 1, 0, -1 of a symbol of top order at most one.
pub(crate) struct Slots {
    pub one: CoeffFn,
    pub zero: CoeffFn,
    pub minus_one: CoeffFn,
}

pub(crate) fn slots(a: &Symbol) -> Result<Slots> {
    if a.var() != SymVar::R {
        return Err(Error::MixedVariable);
    }
    if let Some(top) = a.top() {
        if top > HalfInt::ONE {
            return Err(Error::BadOrder(top));
        }
    }
    Ok(Slots {
        one: a.trusted_coeff(HalfInt::ONE)?,
        zero: a.trusted_coeff(HalfInt::ZERO)?,
        minus_one: a.trusted_coeff(HalfInt::int(-1))?,
    })
}

fn res(f: &CoeffFn) -> CoeffFn {
    f.residue(Var::X)
}

fn d(f: &CoeffFn, n: u32) -> CoeffFn {
    f.deriv_n(Var::X, n)
}

/// `res(u v) - res(w z)`.
fn res_diff(u: &CoeffFn, v: &CoeffFn, w: &CoeffFn, z: &CoeffFn) -> CoeffFn {
    res(&(&(u * v) - &(w * z)))
}

pub(crate) fn eval_slots(id: CocycleId, a: &Slots, b: &Slots) -> CoeffFn {
    match id {
        CocycleId::C0 => res(&(&d(&a.one, 3) * &b.one)),
        CocycleId::C1 => res_diff(&d(&a.one, 2), &b.zero, &d(&b.one, 2), &a.zero),
        CocycleId::C2 => res_diff(&a.one, &b.minus_one, &b.one, &a.minus_one),
        CocycleId::C3 => res_diff(&d(&a.one, 1), &b.minus_one, &d(&b.one, 1), &a.minus_one),
        CocycleId::C4 => res_diff(&d(&b.zero, 1), &a.zero, &d(&a.zero, 1), &b.zero),
        CocycleId::C5 => res_diff(&a.zero, &b.minus_one, &b.zero, &a.minus_one),
    }
}

/// Value of a cocycle on a pair of symbols, a function of `t`.
pub fn eval_cocycle(id: CocycleId, a: &Symbol, b: &Symbol) -> Result<CoeffFn> {
    Ok(eval_slots(id, &slots(a)?, &slots(b)?))
}

/// `c([A,B],C) + c([B,C],A) + c([C,A],B)`.
pub fn cocycle_identity_defect(id: CocycleId, a: &Symbol, b: &Symbol, c: &Symbol) -> Result<CoeffFn> {
    let fl = HalfInt::int(-1);
    let ab = a.bracket(b, fl)?;
    let bc = b.bracket(c, fl)?;
    let ca = c.bracket(a, fl)?;
    let mut out = eval_cocycle(id, &ab, c)?;
    out += &eval_cocycle(id, &bc, a)?;
    out += &eval_cocycle(id, &ca, b)?;
    Ok(out)
}
