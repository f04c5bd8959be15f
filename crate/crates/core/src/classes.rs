//! The local class space `V = E*/E*^p` at a place and subgroups `T`
//! presented as preimages of subspaces of `V`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::field::{primitive_element, PowerResidue};
use crate::arith::{integer, FiniteFieldOps};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Subspace};
use crate::places::{GlobalField, ResidueElem};

/// Coordinates `(v_P(x) mod p, unit class)`, the second present iff
/// `p | N(P) - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PowerClass(pub Vec<u64>);

impl PowerClass {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for PowerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct ClassSpace<F: GlobalField> {
    field: F,
    place: F::Place,
    p: u64,
    residue: F::Residue,
    norm: u128,
    generator: ResidueElem<F>,
    power_residue: PowerResidue<F::Residue>,
    uniformizer: F::Elem,
    unit_lifts: Vec<F::Elem>,
}

impl<F: GlobalField> ClassSpace<F> {
    pub fn new(field: F, place: F::Place, p: u64) -> Result<Self> {
        if !integer::is_prime(p as u128) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if !field.is_discrete(&place) {
            return Err(Error::Archimedean);
        }
        let residue = field.residue_field(&place)?;
        if residue.characteristic() == p as u128 {
            return Err(Error::WildPlace {
                place: field.place_label(&place),
                p,
            });
        }
        let norm = residue.order();
        let generator = primitive_element(&residue);
        let power_residue = PowerResidue::new(residue.clone(), &generator, p);
        let uniformizer = field.uniformizer(&place)?;
        let classes = if power_residue.is_nontrivial() { p } else { 1 };
        let mut reps: Vec<Option<ResidueElem<F>>> = vec![None; classes as usize];
        let mut found = 0;
        for i in 1..norm {
            let z = residue.element(i);
            let s = power_residue.exponent(&z) as usize;
            if reps[s].is_none() {
                reps[s] = Some(z);
                found += 1;
                if found == classes {
                    break;
                }
            }
        }
        let unit_lifts = reps
            .into_iter()
            .map(|z| field.lift_residue(&z.expect("every class is hit"), &place))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassSpace {
            field,
            place,
            p,
            residue,
            norm,
            generator,
            power_residue,
            uniformizer,
            unit_lifts,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn place(&self) -> &F::Place {
        &self.place
    }

    pub fn label(&self) -> String {
        self.field.place_label(&self.place)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue_field(&self) -> &F::Residue {
        &self.residue
    }

    /// `N(P)`.
    pub fn norm(&self) -> u128 {
        self.norm
    }

    pub fn generator(&self) -> &ResidueElem<F> {
        &self.generator
    }

    pub fn uniformizer(&self) -> &F::Elem {
        &self.uniformizer
    }

    /// `1 + [p | N(P) - 1]`.
    pub fn dim(&self) -> usize {
        if self.power_residue.is_nontrivial() {
            2
        } else {
            1
        }
    }

    /// Exponent in `F_p` of a residue element relative to the generator.
    pub fn residue_class(&self, z: &ResidueElem<F>) -> u64 {
        self.power_residue.exponent(z)
    }

    pub fn unit_class(&self, x: &F::Elem) -> Result<u64> {
        let (_, ac) = self.field.angular_component(x, &self.place)?;
        Ok(self.power_residue.exponent(&ac))
    }

    pub fn class_of(&self, x: &F::Elem) -> Result<PowerClass> {
        if self.field.is_zero(x) {
            return Err(Error::Domain("power class of zero".into()));
        }
        let (v, ac) = self.field.angular_component(x, &self.place)?;
        let a = v.rem_euclid(self.p as i64) as u64;
        if self.dim() == 2 {
            Ok(PowerClass(vec![a, self.power_residue.exponent(&ac)]))
        } else {
            Ok(PowerClass(vec![a]))
        }
    }

    pub fn zero_class(&self) -> PowerClass {
        PowerClass(vec![0; self.dim()])
    }

    pub fn minus_one_class(&self) -> PowerClass {
        self.class_of(&self.field.from_int(-1)).expect("-1 is a unit")
    }

    /// Canonical lift `pi^alpha * u_s`, with `u_s` the lift of the first
    /// residue element (in index order) of unit class `s`.
    pub fn lift(&self, c: &PowerClass) -> F::Elem {
        assert_eq!(c.0.len(), self.dim(), "class dimension");
        let alpha = (c.0[0] % self.p) as i64;
        let s = if self.dim() == 2 { c.0[1] % self.p } else { 0 };
        let pi = self.field.pow(&self.uniformizer, alpha);
        self.field.mul(&pi, &self.unit_lifts[s as usize])
    }

    /// All `p^d` classes in lexicographic order with their canonical lifts.
    pub fn enumerate_classes(&self) -> Vec<(PowerClass, F::Elem)> {
        all_vectors(self.p, self.dim())
            .map(PowerClass)
            .map(|c| {
                let x = self.lift(&c);
                (c, x)
            })
            .collect()
    }

    pub fn classes(&self) -> Vec<PowerClass> {
        all_vectors(self.p, self.dim()).map(PowerClass).collect()
    }

    pub fn add_classes(&self, a: &PowerClass, b: &PowerClass) -> PowerClass {
        PowerClass(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        )
    }
}

/// `unit_class_at`.
pub fn unit_class_at<F: GlobalField>(field: &F, x: &F::Elem, place: &F::Place, p: u64) -> Result<u64> {
    ClassSpace::new(field.clone(), place.clone(), p)?.unit_class(x)
}

/// `power_class`.
pub fn power_class<F: GlobalField>(x: &F::Elem, space: &ClassSpace<F>) -> Result<PowerClass> {
    space.class_of(x)
}

/// `T = {x : class(x) ∈ T-bar}`; always contains `-1` and `E*^p`.
#[derive(Debug, Clone)]
pub struct SubgroupSpec<F: GlobalField> {
    space: Arc<ClassSpace<F>>,
    tbar: Subspace,
}

impl<F: GlobalField> SubgroupSpec<F> {
    pub fn new(space: Arc<ClassSpace<F>>, basis: &[Vec<u64>]) -> Result<Self> {
        let d = space.dim();
        if let Some(v) = basis.iter().find(|v| v.len() != d) {
            return Err(Error::InvalidSubgroup(format!(
                "basis vector {v:?} has length {} but the class space has dimension {d}",
                v.len()
            )));
        }
        let tbar = Subspace::span(space.p(), d, basis);
        let m1 = space.minus_one_class();
        if !tbar.contains(&m1.0) {
            return Err(Error::InvalidSubgroup(format!(
                "class of -1 {m1} is not in T-bar"
            )));
        }
        Ok(SubgroupSpec { space, tbar })
    }

    /// The smallest admissible `T`: generated by `-1` and `E*^p`.
    pub fn minimal(space: Arc<ClassSpace<F>>) -> Self {
        let m1 = space.minus_one_class();
        let basis = if m1.is_zero() { vec![] } else { vec![m1.0] };
        SubgroupSpec::new(space, &basis).expect("contains -1")
    }

    pub fn space(&self) -> &ClassSpace<F> {
        &self.space
    }

    pub fn space_arc(&self) -> &Arc<ClassSpace<F>> {
        &self.space
    }

    pub fn tbar(&self) -> &Subspace {
        &self.tbar
    }

    /// `dim V / T-bar`.
    pub fn codim(&self) -> usize {
        self.tbar.codim()
    }

    pub fn contains_class(&self, c: &PowerClass) -> bool {
        self.tbar.contains(&c.0)
    }

    /// `subgroup_membership`.
    pub fn contains(&self, x: &F::Elem) -> Result<bool> {
        Ok(self.contains_class(&self.space.class_of(x)?))
    }
}
