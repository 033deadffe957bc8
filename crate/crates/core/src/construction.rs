//! Linear actions of a p-group P on an elementary abelian group N.
//!
//! Two constructions are provided:
//!
//! * [`LinearAction::regular_quotient`]: N = V/Z where V is the regular
//!   GF(q)P-module with basis `{v_g}` (x·v_g = v_{xg}) and Z is spanned by the
//!   sum of all basis vectors. N is written in the basis `{v_g + Z : g ≠ 1}`
//!   (coordinate `g − 1`), so `v_1 + Z = −Σ_{g≠1} (v_g + Z)`.
//! * [`LinearAction::line_sum`]: N = N_1 ⊕ … ⊕ N_{p+1}, each N_i a copy of
//!   GF(q) on which x acts by ζ^{φ_i(x)}, where φ_i : P → Z/p has kernel P_i
//!   from [`PGroup::maximal_cover`]. Coordinates are over the prime field
//!   GF(ℓ), `q = ℓ^k`, using the polynomial basis `1, α, …, α^{k−1}` per block.
//!
//! Every action validates the homomorphism property at construction.

use crate::arith::{is_prime, smallest_prime_power_1modp};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::pgroup::{PGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Regular module modulo the trivial submodule, over the prime field GF(q).
    RegularQuotient { q: u64 },
    /// Sum of p+1 one-dimensional GF(q)-modules with kernels P_1, …, P_{p+1}.
    LineSum { q: u64, zeta: Elem },
    Custom,
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::RegularQuotient { .. } => "thm1",
            Provenance::LineSum { .. } => "thm2",
            Provenance::Custom => "custom",
        }
    }

    pub fn q(&self) -> Option<u64> {
        match self {
            Provenance::RegularQuotient { q } | Provenance::LineSum { q, .. } => Some(*q),
            Provenance::Custom => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearAction {
    group: PGroup,
    /// Scalars of the construction: GF(q).
    field: Field,
    /// Coordinates of N live in this prime field.
    prime_field: Field,
    dim: usize,
    matrices: Vec<Matrix>,
    provenance: Provenance,
    /// The p+1 maximal subgroups covering P, for the two named constructions.
    cover: Option<Vec<Subgroup>>,
}

impl LinearAction {
    /// Action of P on V/Z for the regular module V over GF(q), q prime.
    pub fn regular_quotient(group: &PGroup, q: u64) -> Result<LinearAction> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q == group.p() as u64 {
            return Err(Error::SamePrime(q));
        }
        let cover = group.maximal_cover()?;
        let field = Field::prime(q)?;
        let n = group.order();
        let dim = n - 1;
        let minus_one = field.neg(1);
        let matrices = group
            .elements()
            .map(|x| {
                let mut m = Matrix::zeros(dim, dim);
                for g in 1..n {
                    let image = group.mul(x, g);
                    if image == 0 {
                        for row in 0..dim {
                            m.set(row, g - 1, minus_one);
                        }
                    } else {
                        m.set(image - 1, g - 1, 1);
                    }
                }
                m
            })
            .collect();
        let action = LinearAction {
            group: group.clone(),
            prime_field: field.clone(),
            field,
            dim,
            matrices,
            provenance: Provenance::RegularQuotient { q },
            cover: Some(cover),
        };
        action.validate()?;
        if action.fixed_space_of_group().dim() != 0 {
            return Err(Error::InternalError("regular quotient has nonzero P-fixed points".into()));
        }
        Ok(action)
    }

    /// Action of P on N_1 ⊕ … ⊕ N_{p+1} over the smallest GF(q) with q ≡ 1 (mod p).
    pub fn line_sum(group: &PGroup) -> Result<LinearAction> {
        let p = group.p() as u64;
        let cover = group.maximal_cover()?;
        let q = smallest_prime_power_1modp(p);
        let (l, k) = crate::arith::prime_power(q).expect("q is a prime power");
        let field = Field::new(l, k)?;
        let prime_field = Field::prime(l)?;
        let zeta = field.element_of_order(p)?;
        let homs = cover
            .iter()
            .map(|s| group.hom_to_cp(s))
            .collect::<Result<Vec<_>>>()?;
        let k = k as usize;
        let blocks = cover.len();
        let dim = blocks * k;
        // multiplication-by-c matrix on GF(q) in the polynomial basis
        let mult_matrix = |c: Elem| -> Matrix {
            let mut m = Matrix::zeros(k, k);
            let mut basis_elem: Elem = 1;
            for col in 0..k {
                let digits = field.digits(field.mul(c, basis_elem));
                for (row, &d) in digits.iter().enumerate() {
                    m.set(row, col, d);
                }
                basis_elem *= l as Elem;
            }
            m
        };
        let powers: Vec<Matrix> = (0..p).map(|e| mult_matrix(field.pow(zeta, e))).collect();
        let matrices = group
            .elements()
            .map(|x| {
                let mut m = Matrix::zeros(dim, dim);
                for (b, hom) in homs.iter().enumerate() {
                    let block = &powers[hom[x] as usize];
                    for r in 0..k {
                        for c in 0..k {
                            m.set(b * k + r, b * k + c, block.get(r, c));
                        }
                    }
                }
                m
            })
            .collect();
        let action = LinearAction {
            group: group.clone(),
            field,
            prime_field,
            dim,
            matrices,
            provenance: Provenance::LineSum { q, zeta },
            cover: Some(cover),
        };
        action.validate()?;
        if action.fixed_space_of_group().dim() != 0 {
            return Err(Error::InternalError("line sum has nonzero P-fixed points".into()));
        }
        Ok(action)
    }

    /// An arbitrary action given by one matrix per element of P over GF(ℓ), ℓ ≠ p.
    pub fn custom(group: &PGroup, prime_field: Field, matrices: Vec<Matrix>) -> Result<LinearAction> {
        if !prime_field.is_prime_field() {
            return Err(Error::InvalidAction("custom actions are given over a prime field".into()));
        }
        if prime_field.characteristic() == group.p() {
            return Err(Error::SamePrime(prime_field.characteristic() as u64));
        }
        if matrices.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].rows();
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim || !m.is_valid_over(&prime_field)) {
            return Err(Error::InvalidAction("matrices must be square over the field".into()));
        }
        let action = LinearAction {
            group: group.clone(),
            field: prime_field.clone(),
            prime_field,
            dim,
            matrices,
            provenance: Provenance::Custom,
            cover: None,
        };
        action.validate()?;
        Ok(action)
    }

    /// The trivial action of P on GF(ℓ)^dim.
    pub fn trivial(group: &PGroup, prime_field: Field, dim: usize) -> Result<LinearAction> {
        let matrices = vec![Matrix::identity(dim); group.order()];
        LinearAction::custom(group, prime_field, matrices)
    }

    /// ρ(1) = I and ρ(x)ρ(y) = ρ(xy) for all x, y.
    fn validate(&self) -> Result<()> {
        let f = &self.prime_field;
        if self.matrices[0] != Matrix::identity(self.dim) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for x in self.group.elements() {
            for y in self.group.elements() {
                let lhs = self.matrices[x].mul(f, &self.matrices[y])?;
                if lhs != self.matrices[self.group.mul(x, y)] {
                    return Err(Error::InvalidAction(format!(
                        "ρ({x})ρ({y}) ≠ ρ({x}·{y})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &PGroup {
        &self.group
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn prime_field(&self) -> &Field {
        &self.prime_field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
    pub fn matrix(&self, x: usize) -> &Matrix {
        &self.matrices[x]
    }
    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }
    /// `P_1, …, P_{p+1}` for the named constructions.
    pub fn maximal_cover(&self) -> Option<&[Subgroup]> {
        self.cover.as_deref()
    }

    /// C_N(x) = ker(ρ(x) − I).
    pub fn fixed_space(&self, x: usize) -> Subspace {
        let f = &self.prime_field;
        Subspace::kernel_of(f, &self.matrices[x].minus_identity(f))
    }

    /// Vectors fixed by every listed element.
    pub fn fixed_space_of(&self, elements: &[usize]) -> Subspace {
        let f = &self.prime_field;
        if elements.is_empty() {
            return Subspace::full(self.dim);
        }
        let blocks: Vec<Matrix> = elements.iter().map(|&x| self.matrices[x].minus_identity(f)).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let stacked = Matrix::stack(&refs).expect("all blocks are dim×dim");
        Subspace::kernel_of(f, &stacked)
    }

    pub fn fixed_space_of_subgroup(&self, h: &Subgroup) -> Subspace {
        self.fixed_space_of(h.members())
    }

    /// C_N(P).
    pub fn fixed_space_of_group(&self) -> Subspace {
        let all: Vec<usize> = self.group.elements().collect();
        self.fixed_space_of(&all)
    }

    fn ensure_regular(&self) -> Result<()> {
        match self.provenance {
            Provenance::RegularQuotient { .. } => Ok(()),
            _ => Err(Error::WrongProvenance { expected: "thm1" }),
        }
    }

    /// Image in N of `Σ_{g ∈ S} v_g`.
    fn image_of_sum(&self, elements: &[usize]) -> Vector {
        let f = &self.prime_field;
        let mut v = vec![0; self.dim];
        for &g in elements {
            if g == 0 {
                for c in v.iter_mut() {
                    *c = f.sub(*c, 1);
                }
            } else {
                v[g - 1] = f.add(v[g - 1], 1);
            }
        }
        v
    }

    /// w = image of Σ_{c∈⟨x⟩} v_c, a vector fixed by x and nonzero when ⟨x⟩ ≠ P.
    pub fn witness_fixed_vector(&self, x: usize) -> Result<Vector> {
        self.ensure_regular()?;
        Ok(self.image_of_sum(self.group.cyclic_subgroup(x).members()))
    }

    /// Images of w_C = Σ_{c∈C} v_c over the right cosets C = ⟨x⟩g, ordered by
    /// their smallest element.
    pub fn coset_fixed_basis(&self, x: usize) -> Result<Vec<Vector>> {
        self.ensure_regular()?;
        let h = self.group.cyclic_subgroup(x);
        let mut seen = vec![false; self.group.order()];
        let mut out = Vec::new();
        for g in self.group.elements() {
            if seen[g] {
                continue;
            }
            let coset: Vec<usize> = h.members().iter().map(|&c| self.group.mul(c, g)).collect();
            for &c in &coset {
                seen[c] = true;
            }
            out.push(self.image_of_sum(&coset));
        }
        Ok(out)
    }
}
