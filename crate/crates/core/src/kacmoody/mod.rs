//! The algebra 𝔤, its dual and the coadjoint action of the Schrödinger-Virasoro algebra.

mod coadjoint;
mod embed;
mod gelement;
mod sv;

pub use coadjoint::{coadjoint, coadjoint_direct, coadjoint_duality_defect, quotient_nullity_defect};
pub use embed::{embed_i, embed_symbol, j_map, embedding_defect};
pub use gelement::{g_bracket, pairing, GDual, GElement};
pub use sv::{Generator, SvElement};
