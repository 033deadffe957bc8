//! G = N ⋊ P for N = GF(ℓ)^dim and a linear action of P.
//!
//! Elements are pairs `(n, x)` with `(n, x)(m, y) = (n + ρ(x)m, xy)`. The
//! Sylow p-subgroups are the conjugates `tPt⁻¹ = {((I − ρ(x))t, x) : x ∈ P}`
//! for `t ∈ N`, and two vectors give the same conjugate iff they differ by an
//! element of C_N(P); Sylow subgroups are therefore stored as canonical coset
//! representatives of C_N(P).

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::arith::big_pow;
use crate::construction::LinearAction;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Subspace, Vector, VectorCodec};
use crate::pgroup::PGroup;

pub const DEFAULT_ENUMERATION_CEILING: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElement {
    pub n: Vector,
    pub x: usize,
}

impl GElement {
    pub fn new(n: Vector, x: usize) -> GElement {
        GElement { n, x }
    }
}

/// One class representative's contribution to |G_p|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassContribution {
    pub representative: usize,
    pub class_size: usize,
    pub centralizer_order: BigUint,
    /// |G : C_G(x)|, the size of the G-class of x.
    pub g_class_size: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PElementCount {
    pub total: BigUint,
    /// |G_p| / |P|.
    pub multiplier: BigUint,
    pub classes: Vec<ClassContribution>,
}

/// λ_G(x): the number of Sylow p-subgroups containing x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowContainment {
    /// |C_N(x) : C_N(P)|.
    pub linear: BigUint,
    /// Count over enumerated Sylow subgroups, when enumerable.
    pub enumerated: Option<u64>,
    pub representatives: Option<Vec<Vector>>,
}

#[derive(Clone, Debug)]
pub struct SemidirectGroup {
    action: LinearAction,
    fixed: Vec<Subspace>,
    fixed_p: Subspace,
    ceiling: u64,
}

impl SemidirectGroup {
    pub fn new(action: LinearAction) -> SemidirectGroup {
        Self::with_ceiling(action, DEFAULT_ENUMERATION_CEILING)
    }

    pub fn with_ceiling(action: LinearAction, ceiling: u64) -> SemidirectGroup {
        let fixed = action.group().elements().map(|x| action.fixed_space(x)).collect();
        let fixed_p = action.fixed_space_of_group();
        SemidirectGroup { action, fixed, fixed_p, ceiling }
    }

    pub fn action(&self) -> &LinearAction {
        &self.action
    }
    pub fn group(&self) -> &PGroup {
        self.action.group()
    }
    pub fn field(&self) -> &Field {
        self.action.prime_field()
    }
    pub fn dim(&self) -> usize {
        self.action.dim()
    }
    pub fn p(&self) -> u64 {
        self.group().p() as u64
    }
    pub fn ceiling(&self) -> u64 {
        self.ceiling
    }
    pub fn set_ceiling(&mut self, ceiling: u64) {
        self.ceiling = ceiling;
    }

    fn ell(&self) -> u64 {
        self.field().order() as u64
    }

    pub fn subspace_order(&self, s: &Subspace) -> BigUint {
        big_pow(self.ell(), s.dim() as u64)
    }

    pub fn subspace_index(&self, s: &Subspace) -> BigUint {
        big_pow(self.ell(), s.codim() as u64)
    }

    pub fn n_order(&self) -> BigUint {
        big_pow(self.ell(), self.dim() as u64)
    }

    pub fn order(&self) -> BigUint {
        self.n_order() * BigUint::from(self.group().order())
    }

    /// Codec for vectors of N, if N is small enough to be encoded in a u64.
    pub fn codec(&self) -> Option<VectorCodec> {
        VectorCodec::new(self.field().order(), self.dim())
    }

    pub fn identity(&self) -> GElement {
        GElement { n: vec![0; self.dim()], x: 0 }
    }

    fn check(&self, a: &GElement) -> Result<()> {
        if a.n.len() != self.dim() || a.x >= self.group().order() {
            return Err(Error::ShapeError(format!(
                "element with {} coordinates and P-part {} in a group with dim {} and |P| = {}",
                a.n.len(),
                a.x,
                self.dim(),
                self.group().order()
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &GElement, b: &GElement) -> Result<GElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &GElement, b: &GElement) -> GElement {
        let f = self.field();
        let moved = self.action.matrix(a.x).apply(f, &b.n);
        let n = a.n.iter().zip(&moved).map(|(&u, &v)| f.add(u, v)).collect();
        GElement { n, x: self.group().mul(a.x, b.x) }
    }

    pub fn inverse(&self, a: &GElement) -> Result<GElement> {
        self.check(a)?;
        Ok(self.inv_unchecked(a))
    }

    pub(crate) fn inv_unchecked(&self, a: &GElement) -> GElement {
        let f = self.field();
        let xi = self.group().inv(a.x);
        let moved = self.action.matrix(xi).apply(f, &a.n);
        GElement { n: moved.iter().map(|&c| f.neg(c)).collect(), x: xi }
    }

    /// `g a g⁻¹`.
    pub fn conjugate(&self, a: &GElement, g: &GElement) -> Result<GElement> {
        let ga = self.multiply(g, a)?;
        Ok(self.mul_unchecked(&ga, &self.inv_unchecked(g)))
    }

    /// Order via the normal form: `(n, x)^o = (s, 1)` for `o = ord(x)`, where s = Σ_{i<o} ρ(x)^i n;
    /// the order is `o` when `s = 0` and `o·ℓ` otherwise.
    pub fn element_order(&self, a: &GElement) -> Result<u64> {
        self.check(a)?;
        let o = self.group().element_order(a.x) as u64;
        Ok(if self.orbit_sum(a).iter().all(|&c| c == 0) { o } else { o * self.ell() })
    }

    pub fn is_p_element(&self, a: &GElement) -> Result<bool> {
        self.check(a)?;
        Ok(self.orbit_sum(a).iter().all(|&c| c == 0))
    }

    fn orbit_sum(&self, a: &GElement) -> Vector {
        let f = self.field();
        let o = self.group().element_order(a.x);
        let mut term = a.n.clone();
        let mut sum = vec![0; self.dim()];
        for _ in 0..o {
            for (s, &t) in sum.iter_mut().zip(&term) {
                *s = f.add(*s, t);
            }
            term = self.action.matrix(a.x).apply(f, &term);
        }
        sum
    }

    /// Basis of C_N(x) = ker(ρ(x) − I).
    pub fn centralizer_in_n(&self, x: usize) -> &Subspace {
        &self.fixed[x]
    }

    /// C_N(P).
    pub fn fixed_by_group(&self) -> &Subspace {
        &self.fixed_p
    }

    /// C_N(H) for a set of elements of P.
    pub fn fixed_by(&self, elements: &[usize]) -> Subspace {
        self.action.fixed_space_of(elements)
    }

    /// |C_G(x)| = |C_N(x)| · |C_P(x)| for x ∈ P.
    pub fn centralizer_order(&self, x: usize) -> BigUint {
        self.subspace_order(&self.fixed[x]) * BigUint::from(self.group().centralizer(x).order())
    }

    /// |N_G(P)| = |C_N(P)| · |P|.
    pub fn normalizer_order(&self) -> BigUint {
        self.subspace_order(&self.fixed_p) * BigUint::from(self.group().order())
    }

    /// ν_p(G) = |N : C_N(P)|.
    pub fn sylow_count(&self) -> BigUint {
        self.subspace_index(&self.fixed_p)
    }

    pub(crate) fn enumerable(&self, what: &'static str, size: &BigUint) -> Result<u64> {
        match size.to_u64() {
            Some(v) if v <= self.ceiling => Ok(v),
            _ => Err(Error::TooLargeToEnumerate { what, size: size.to_string(), ceiling: self.ceiling }),
        }
    }

    /// One conjugating vector per Sylow subgroup: the lexicographically least element of
    /// each coset of C_N(P), in lexicographic order. The first entry (zero) is P itself.
    pub fn enumerate_sylows(&self) -> Result<Vec<Vector>> {
        self.enumerable("Sylow p-subgroup count", &self.sylow_count())?;
        Ok(self.fixed_p.coset_representatives(self.field()).collect())
    }

    /// The element of tPt⁻¹ with P-part x: ((I − ρ(x))t, x).
    pub fn sylow_element(&self, t: &[u32], x: usize) -> GElement {
        let f = self.field();
        let moved = self.action.matrix(x).apply(f, t);
        GElement { n: t.iter().zip(&moved).map(|(&a, &b)| f.sub(a, b)).collect(), x }
    }

    pub fn sylow_contains(&self, t: &[u32], g: &GElement) -> bool {
        self.sylow_element(t, g.x).n == g.n
    }

    /// |G_p| = Σ_{x∈R} |G : C_G(x)| over class representatives R of P.
    pub fn count_p_elements(&self) -> Result<PElementCount> {
        let order = self.order();
        let mut total = BigUint::zero();
        let mut classes = Vec::new();
        for class in self.group().conjugacy_classes() {
            let x = class.representative;
            let c = self.centralizer_order(x);
            if !(&order % &c).is_zero() {
                return Err(Error::InternalError(format!("|C_G({x})| does not divide |G|")));
            }
            let g_class_size = &order / &c;
            total += &g_class_size;
            classes.push(ClassContribution {
                representative: x,
                class_size: class.members.len(),
                centralizer_order: c,
                g_class_size,
            });
        }
        let p_order = BigUint::from(self.group().order());
        if !(&total % &p_order).is_zero() {
            return Err(Error::InternalError(format!(
                "|G_p| = {total} is not a multiple of |P| = {p_order}"
            )));
        }
        let multiplier = &total / &p_order;
        Ok(PElementCount { total, multiplier, classes })
    }

    /// λ_G(x), by linear algebra and, when the Sylow subgroups are enumerable, by
    /// checking t⁻¹xt ∈ P for every representative t.
    pub fn sylows_containing(&self, x: usize) -> SylowContainment {
        let linear = self.subspace_order(&self.fixed[x]) / self.subspace_order(&self.fixed_p);
        let (enumerated, representatives) = match self.enumerate_sylows() {
            Ok(reps) => {
                let px = GElement { n: vec![0; self.dim()], x };
                let containing: Vec<Vector> = reps
                    .into_iter()
                    .filter(|t| {
                        let conj = self.conjugate_by_vector_inverse(&px, t);
                        conj.n.iter().all(|&c| c == 0)
                    })
                    .collect();
                (Some(containing.len() as u64), Some(containing))
            }
            Err(_) => (None, None),
        };
        SylowContainment { linear, enumerated, representatives }
    }

    /// `t⁻¹ g t` for t ∈ N, computed with the group law.
    pub fn conjugate_by_vector_inverse(&self, g: &GElement, t: &[u32]) -> GElement {
        let te = GElement { n: t.to_vec(), x: 0 };
        let ti = self.inv_unchecked(&te);
        self.mul_unchecked(&self.mul_unchecked(&ti, g), &te)
    }
}
