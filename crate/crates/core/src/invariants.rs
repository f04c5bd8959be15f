//! Kronecker dimension, 1-defectless places, and the base-level shadow of
//! the Galois-theoretic dimension conditions.

use serde::Serialize;

use crate::classes::ClassSpace;
use crate::error::Result;
use crate::places::{FieldDescriptor, GlobalField};
use crate::rigid::Valuation;
use crate::symbols::{wedge_iso_check, WedgeStatus};

/// `trdeg(K/F_p)` in positive characteristic, `trdeg(K/Q) + 1` in
/// characteristic zero.
pub fn kronecker_dimension(field: &FieldDescriptor) -> u32 {
    let trdeg = field.transcendence_degree();
    if field.characteristic() == 0 {
        trdeg + 1
    } else {
        trdeg
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectlessReport {
    pub place: String,
    pub field_dimension: u32,
    pub residue_field: Option<FieldDescriptor>,
    pub residue_dimension: Option<u32>,
    pub one_defectless: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Whether `dim E = dim E_v + 1` for the residue field `E_v`. The trivial
/// valuation has residue field `E` itself.
pub fn is_one_defectless<F: GlobalField>(field: &F, valuation: &Valuation<F::Place>) -> Result<DefectlessReport> {
    let desc = field.descriptor();
    let field_dimension = kronecker_dimension(&desc);
    let (place, residue) = match valuation {
        Valuation::Trivial => ("trivial".to_string(), Some(desc)),
        Valuation::Place(p) if !field.is_discrete(p) => {
            return Ok(DefectlessReport {
                place: field.place_label(p),
                field_dimension,
                residue_field: None,
                residue_dimension: None,
                one_defectless: false,
                note: Some("archimedean place: no residue field in scope".into()),
            });
        }
        Valuation::Place(p) => (
            field.place_label(p),
            Some(FieldDescriptor::FiniteField {
                q: field.residue_size(p)? as u64,
            }),
        ),
    };
    let residue_dimension = residue.as_ref().map(kronecker_dimension);
    Ok(DefectlessReport {
        place,
        field_dimension,
        one_defectless: residue_dimension.map(|r| field_dimension == r + 1).unwrap_or(false),
        residue_field: residue,
        residue_dimension,
        note: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop2Shadow {
    pub scope: &'static str,
    pub place: String,
    pub p: u64,
    pub n: u32,
    pub class_dim: usize,
    /// `dim E*/E*^p = n + 1`.
    pub h1_rank: bool,
    /// The symbol map on the wedge square is an isomorphism.
    pub cup_product: bool,
    /// `dim Γ/p = 1 <= n`.
    pub value_group: bool,
    pub verdict: bool,
}

/// Checks the three dimension conditions on the local model only; finite
/// extensions are not examined.
pub fn prop2_shadow_report<F: GlobalField>(space: &ClassSpace<F>, n: u32) -> Result<Prop2Shadow> {
    let class_dim = space.dim();
    let h1_rank = class_dim == n as usize + 1;
    let cup_product = wedge_iso_check(space)?.status == WedgeStatus::Holds;
    let value_group = 1 <= n;
    Ok(Prop2Shadow {
        scope: "base-level shadow",
        place: space.label(),
        p: space.p(),
        n,
        class_dim,
        h1_rank,
        cup_product,
        value_group,
        verdict: h1_rank && cup_product && value_group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::{FunctionField, RationalPlace, Rationals};
    use proptest::prelude::*;

    fn desc(s: &str) -> FieldDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_dimension(&desc("Q")), 1);
        assert_eq!(kronecker_dimension(&desc("F7")), 0);
        assert_eq!(kronecker_dimension(&desc("F7t")), 1);
        assert_eq!(kronecker_dimension(&desc("F9t")), 1);
    }

    #[test]
    fn defectless_examples() {
        let r = is_one_defectless(&Rationals, &Valuation::Place(RationalPlace::Prime(5))).unwrap();
        assert!(r.one_defectless);
        assert_eq!(r.residue_dimension, Some(0));
        let f = FunctionField::with_size(7).unwrap();
        let t = f.parse_place("t").unwrap();
        assert!(is_one_defectless(&f, &Valuation::Place(t)).unwrap().one_defectless);
        assert!(!is_one_defectless(&Rationals, &Valuation::Trivial).unwrap().one_defectless);
        let real = is_one_defectless(&Rationals, &Valuation::Place(RationalPlace::Real)).unwrap();
        assert!(!real.one_defectless && real.note.is_some());
    }

    #[test]
    fn first_hundred_places_are_defectless() {
        for p in Rationals.first_places(100) {
            assert!(is_one_defectless(&Rationals, &Valuation::Place(p)).unwrap().one_defectless);
        }
        let f = FunctionField::with_size(7).unwrap();
        let places = f.first_places(100);
        assert_eq!(places.len(), 100);
        for p in places {
            assert!(is_one_defectless(&f, &Valuation::Place(p)).unwrap().one_defectless);
        }
        let inf = f.parse_place("inf").unwrap();
        assert!(is_one_defectless(&f, &Valuation::Place(inf)).unwrap().one_defectless);
    }

    #[test]
    fn shadow_examples() {
        let v = ClassSpace::new(Rationals, RationalPlace::Prime(5), 2).unwrap();
        let r = prop2_shadow_report(&v, 1).unwrap();
        assert!(r.h1_rank && r.cup_product && r.value_group && r.verdict);
        assert_eq!(r.scope, "base-level shadow");

        let v = ClassSpace::new(Rationals, RationalPlace::Prime(7), 5).unwrap();
        let r = prop2_shadow_report(&v, 1).unwrap();
        assert!(!r.h1_rank && !r.verdict);

        let v = ClassSpace::new(Rationals, RationalPlace::Prime(7), 3).unwrap();
        assert!(prop2_shadow_report(&v, 1).unwrap().verdict);

        let v = ClassSpace::new(Rationals, RationalPlace::Prime(7), 2).unwrap();
        let r = prop2_shadow_report(&v, 1).unwrap();
        assert!(r.h1_rank && !r.cup_product && !r.verdict);
    }

    #[test]
    fn shadow_verdict_is_conjunction() {
        for (l, p) in [(5u128, 2u64), (7, 2), (7, 3), (7, 5), (13, 3), (11, 5), (3, 2)] {
            let v = ClassSpace::new(Rationals, RationalPlace::Prime(l), p).unwrap();
            for n in 0..3 {
                let r = prop2_shadow_report(&v, n).unwrap();
                assert_eq!(r.verdict, r.h1_rank && r.cup_product && r.value_group);
            }
        }
    }

    proptest! {
        #[test]
        fn kronecker_stable_under_round_trip(kind in 0usize..3, qi in 0usize..6) {
            let q = [2u64, 3, 4, 5, 7, 9][qi];
            let d = match kind {
                0 => FieldDescriptor::Rationals,
                1 => FieldDescriptor::FiniteField { q },
                _ => FieldDescriptor::FunctionField { q },
            };
            let back: FieldDescriptor = d.to_string().parse().unwrap();
            prop_assert_eq!(kronecker_dimension(&back), kronecker_dimension(&d));
        }
    }
}
