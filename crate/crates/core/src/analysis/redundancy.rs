//! Redundancy of P via the fixed-space criterion C_N(x) > C_N(P) for all x ∈ P.

use serde::Serialize;

use crate::linalg::Vector;
use crate::semidirect::{GElement, SemidirectGroup};

/// A vector w ∈ C_N(x) \ C_N(P): x lies in wPw⁻¹ ≠ P.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub x: usize,
    pub w: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Redundancy {
    pub redundant: bool,
    /// One witness per conjugacy class representative, when redundant.
    pub witnesses: Vec<Witness>,
    /// Smallest x with C_N(x) = C_N(P), when not redundant.
    pub obstruction: Option<usize>,
}

/// A basis vector of C_N(x) outside C_N(P), if C_N(x) ≠ C_N(P).
pub fn witness(g: &SemidirectGroup, x: usize) -> Option<Vector> {
    let f = g.field();
    let cp = g.fixed_by_group();
    g.centralizer_in_n(x).basis().iter().find(|w| !cp.contains(f, w)).cloned()
}

pub fn is_redundant(g: &SemidirectGroup) -> Redundancy {
    let cp_dim = g.fixed_by_group().dim();
    // C_N(P) ⊆ C_N(x), so strict containment is a dimension comparison
    let obstruction = g.group().elements().find(|&x| g.centralizer_in_n(x).dim() == cp_dim);
    if let Some(x) = obstruction {
        return Redundancy { redundant: false, witnesses: Vec::new(), obstruction: Some(x) };
    }
    let witnesses = g
        .group()
        .conjugacy_classes()
        .into_iter()
        .map(|c| {
            let x = c.representative;
            Witness { x, w: witness(g, x).expect("C_N(x) is strictly larger than C_N(P)") }
        })
        .collect();
    Redundancy { redundant: true, witnesses, obstruction: None }
}

/// Checks a witness with the group law: (w,1)(0,x)(w,1)⁻¹ = (0,x) and w ∉ C_N(P).
pub fn witness_holds(g: &SemidirectGroup, wit: &Witness) -> bool {
    let px = GElement::new(vec![0; g.dim()], wit.x);
    let we = GElement::new(wit.w.clone(), 0);
    let fixes = g.conjugate(&px, &we).is_ok_and(|c| c == px);
    fixes && !g.fixed_by_group().contains(g.field(), &wit.w)
}
