use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exterior::{Monomial, MultiVector, WedgeIndex};

/// Shape of a single-term cohomology generator `z^α w^β ∂_z^γ ∂_w^δ`, reading
/// `γ`, `δ` as the 0/1 incidence vectors of the wedge factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorType {
    /// `α = γ` and `β = δ`: wedge products of the Euler fields `ζ_k ∂_{ζ_k}`.
    #[serde(rename = "I")]
    TypeI,
    /// `α·γ = 0` and `β·δ = 0`.
    #[serde(rename = "II")]
    TypeII,
    /// A wedge of a nontrivial Type I factor and a nontrivial Type II factor.
    #[serde(rename = "III")]
    TypeIII,
    #[serde(rename = "untyped")]
    Untyped,
}

impl fmt::Display for GeneratorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorType::TypeI => "Type I",
            GeneratorType::TypeII => "Type II",
            GeneratorType::TypeIII => "Type III",
            GeneratorType::Untyped => "untyped",
        })
    }
}

fn is_type_one(mono: &Monomial, wedge: WedgeIndex) -> bool {
    mono.zeta().iter().enumerate().all(|(k, &e)| e == u32::from(wedge.contains(k)))
}

fn is_type_two(mono: &Monomial, wedge: WedgeIndex) -> bool {
    wedge.indices().all(|k| mono.zeta()[k] == 0)
}

/// Classifies a multivector; only single basis terms (of any scale) get a
/// type.
pub fn classify_generator(x: &MultiVector) -> GeneratorType {
    let mut terms = x.terms();
    let (Some((mono, wedge, _)), None) = (terms.next(), terms.next()) else {
        return GeneratorType::Untyped;
    };
    if is_type_one(mono, wedge) {
        return GeneratorType::TypeI;
    }
    if is_type_two(mono, wedge) {
        return GeneratorType::TypeII;
    }
    // Try every split of the wedge factor into a Type I part S1 (which must
    // divide the monomial as ζ^{1_S1}) and a nonempty Type II remainder.
    let full = wedge.mask();
    let mut s1 = (full - 1) & full;
    while s1 != 0 {
        let first = WedgeIndex::from_mask(s1);
        let second = WedgeIndex::from_mask(full & !s1);
        if first.indices().all(|k| mono.zeta()[k] >= 1) {
            let mut rest = mono.zeta().to_vec();
            for k in first.indices() {
                rest[k] -= 1;
            }
            if second.indices().all(|k| rest[k] == 0) {
                return GeneratorType::TypeIII;
            }
        }
        s1 = (s1 - 1) & full;
    }
    GeneratorType::Untyped
}
