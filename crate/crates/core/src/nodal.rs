//! The nodal algebra `A = R[x,y]/(xy - pi)` over an Artin coefficient ring.
//!
//! Elements are kept in canonical form `c + sum a_n x^n + sum b_m y^m`: no
//! mixed monomial `x^n y^m` survives, mixed products fold through `xy = pi`.
//! Support is finite; over an Artin coefficient ring every computation in
//! this crate involves finitely many nonzero coefficients, so polynomial
//! arithmetic is exact and no truncation cap is needed.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::artin::{ArtinElement, ArtinRing};
use crate::error::CoreError;
use crate::scalar::Scalar;

/// `R[x,y]/(xy - pi)` for a fixed Artin ring `R` and `pi` in its maximal ideal.
#[derive(Debug, Clone)]
pub struct NodalAlgebra {
    ring: Arc<ArtinRing>,
    pi: ArtinElement,
}

impl PartialEq for NodalAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.pi == other.pi
    }
}
impl Eq for NodalAlgebra {}

impl NodalAlgebra {
    pub fn new(ring: &Arc<ArtinRing>, pi: ArtinElement) -> Result<Arc<Self>, CoreError> {
        if pi.ring() != ring {
            return Err(CoreError::RingMismatch);
        }
        if !pi.is_nilpotent() {
            return Err(CoreError::BadInput(
                "pi must lie in the maximal ideal".into(),
            ));
        }
        Ok(Arc::new(NodalAlgebra {
            ring: Arc::clone(ring),
            pi,
        }))
    }

    pub fn ring(&self) -> &Arc<ArtinRing> {
        &self.ring
    }

    pub fn pi(&self) -> &ArtinElement {
        &self.pi
    }
}

/// Residue of a nodal element modulo the maximal ideal of `R`: an element of
/// `k[x,y]/(xy)` with scalar coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueNodal {
    pub c: Scalar,
    pub xs: BTreeMap<u32, Scalar>,
    pub ys: BTreeMap<u32, Scalar>,
}

/// Canonical-form element of a [`NodalAlgebra`]. Immutable.
#[derive(Debug, Clone)]
pub struct NodalElement {
    algebra: Arc<NodalAlgebra>,
    c: ArtinElement,
    xs: BTreeMap<u32, ArtinElement>,
    ys: BTreeMap<u32, ArtinElement>,
}

impl PartialEq for NodalElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra
            && self.c == other.c
            && self.xs == other.xs
            && self.ys == other.ys
    }
}
impl Eq for NodalElement {}

impl NodalElement {
    pub fn zero(algebra: &Arc<NodalAlgebra>) -> Self {
        NodalElement {
            algebra: Arc::clone(algebra),
            c: ArtinElement::zero(&algebra.ring),
            xs: BTreeMap::new(),
            ys: BTreeMap::new(),
        }
    }

    pub fn from_const(algebra: &Arc<NodalAlgebra>, c: ArtinElement) -> Self {
        let mut e = Self::zero(algebra);
        e.c = c;
        e
    }

    pub fn one(algebra: &Arc<NodalAlgebra>) -> Self {
        Self::from_const(algebra, ArtinElement::one(&algebra.ring))
    }

    /// `coeff * x^n` (or the constant when `n = 0`).
    pub fn x_term(algebra: &Arc<NodalAlgebra>, n: u32, coeff: ArtinElement) -> Self {
        let mut e = Self::zero(algebra);
        if n == 0 {
            e.c = coeff;
        } else if !coeff.is_zero() {
            e.xs.insert(n, coeff);
        }
        e
    }

    pub fn y_term(algebra: &Arc<NodalAlgebra>, m: u32, coeff: ArtinElement) -> Self {
        let mut e = Self::zero(algebra);
        if m == 0 {
            e.c = coeff;
        } else if !coeff.is_zero() {
            e.ys.insert(m, coeff);
        }
        e
    }

    pub fn gen_x(algebra: &Arc<NodalAlgebra>) -> Self {
        Self::x_term(algebra, 1, ArtinElement::one(&algebra.ring))
    }

    pub fn gen_y(algebra: &Arc<NodalAlgebra>) -> Self {
        Self::y_term(algebra, 1, ArtinElement::one(&algebra.ring))
    }

    pub fn from_parts(
        algebra: &Arc<NodalAlgebra>,
        c: ArtinElement,
        xs: impl IntoIterator<Item = (u32, ArtinElement)>,
        ys: impl IntoIterator<Item = (u32, ArtinElement)>,
    ) -> Self {
        let mut e = Self::from_const(algebra, c);
        for (n, a) in xs {
            assert!(n >= 1, "x-coefficients are indexed from 1");
            if !a.is_zero() {
                e.xs.insert(n, a);
            }
        }
        for (m, b) in ys {
            assert!(m >= 1, "y-coefficients are indexed from 1");
            if !b.is_zero() {
                e.ys.insert(m, b);
            }
        }
        e
    }

    pub fn algebra(&self) -> &Arc<NodalAlgebra> {
        &self.algebra
    }

    pub fn constant(&self) -> &ArtinElement {
        &self.c
    }

    pub fn x_coeff(&self, n: u32) -> ArtinElement {
        if n == 0 {
            self.c.clone()
        } else {
            self.xs
                .get(&n)
                .cloned()
                .unwrap_or_else(|| ArtinElement::zero(&self.algebra.ring))
        }
    }

    pub fn y_coeff(&self, m: u32) -> ArtinElement {
        if m == 0 {
            self.c.clone()
        } else {
            self.ys
                .get(&m)
                .cloned()
                .unwrap_or_else(|| ArtinElement::zero(&self.algebra.ring))
        }
    }

    pub fn x_coeffs(&self) -> &BTreeMap<u32, ArtinElement> {
        &self.xs
    }

    pub fn y_coeffs(&self) -> &BTreeMap<u32, ArtinElement> {
        &self.ys
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.xs.is_empty() && self.ys.is_empty()
    }

    /// No y-part (constant allowed).
    pub fn is_x_only(&self) -> bool {
        self.ys.is_empty()
    }

    pub fn is_y_only(&self) -> bool {
        self.xs.is_empty()
    }

    fn assert_same_algebra(&self, other: &Self) {
        assert!(
            self.algebra == other.algebra,
            "operands belong to different nodal algebras"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_algebra(other);
        let mut out = self.clone();
        out.c = out.c.add(&other.c);
        for (n, a) in &other.xs {
            let cur = out.x_coeff(*n).add(a);
            if cur.is_zero() {
                out.xs.remove(n);
            } else {
                out.xs.insert(*n, cur);
            }
        }
        for (m, b) in &other.ys {
            let cur = out.y_coeff(*m).add(b);
            if cur.is_zero() {
                out.ys.remove(m);
            } else {
                out.ys.insert(*m, cur);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.c = out.c.neg();
        for a in out.xs.values_mut() {
            *a = a.neg();
        }
        for b in out.ys.values_mut() {
            *b = b.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply by an element of the coefficient ring.
    pub fn scale(&self, s: &ArtinElement) -> Self {
        let mut out = Self::zero(&self.algebra);
        out.c = self.c.mul(s);
        for (n, a) in &self.xs {
            let c = a.mul(s);
            if !c.is_zero() {
                out.xs.insert(*n, c);
            }
        }
        for (m, b) in &self.ys {
            let c = b.mul(s);
            if !c.is_zero() {
                out.ys.insert(*m, c);
            }
        }
        out
    }

    /// Canonical-form product; mixed monomials fold via `x^a y^b =
    /// pi^min(a,b) x^(a-b)` (resp. `y^(b-a)`).
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_algebra(other);
        let pi = &self.algebra.pi;
        let mut out = Self::zero(&self.algebra);
        let terms = |e: &Self| -> Vec<(i64, ArtinElement)> {
            let mut v = Vec::new();
            if !e.c.is_zero() {
                v.push((0i64, e.c.clone()));
            }
            for (n, a) in &e.xs {
                v.push((*n as i64, a.clone()));
            }
            for (m, b) in &e.ys {
                v.push((-(*m as i64), b.clone()));
            }
            v
        };
        for (e1, c1) in terms(self) {
            for (e2, c2) in terms(other) {
                let mut coeff = c1.mul(&c2);
                if e1.signum() * e2.signum() == -1 {
                    let k = e1.abs().min(e2.abs()) as u32;
                    coeff = coeff.mul(&pi.pow(k));
                }
                if coeff.is_zero() {
                    continue;
                }
                let exp = e1 + e2;
                let term = if exp == 0 {
                    Self::from_const(&self.algebra, coeff)
                } else if exp > 0 {
                    Self::x_term(&self.algebra, exp as u32, coeff)
                } else {
                    Self::y_term(&self.algebra, (-exp) as u32, coeff)
                };
                out = out.add(&term);
            }
        }
        out
    }

    /// Reduce every coefficient modulo the maximal ideal of `R`.
    pub fn residue(&self) -> ResidueNodal {
        let f = self.algebra.ring.field();
        let keep = |s: Scalar| -> Option<Scalar> {
            if f.is_zero(&s) {
                None
            } else {
                Some(s)
            }
        };
        ResidueNodal {
            c: self.c.constant_term(),
            xs: self
                .xs
                .iter()
                .filter_map(|(n, a)| keep(a.constant_term()).map(|s| (*n, s)))
                .collect(),
            ys: self
                .ys
                .iter()
                .filter_map(|(m, b)| keep(b.constant_term()).map(|s| (*m, s)))
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        if !self.c.is_zero() {
            parts.push(format!("({})", self.c.render()));
        }
        for (n, a) in &self.xs {
            let x = if *n == 1 {
                "x".to_string()
            } else {
                format!("x^{}", n)
            };
            parts.push(format!("({})*{}", a.render(), x));
        }
        for (m, b) in &self.ys {
            let y = if *m == 1 {
                "y".to_string()
            } else {
                format!("y^{}", m)
            };
            parts.push(format!("({})*{}", b.render(), y));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}
