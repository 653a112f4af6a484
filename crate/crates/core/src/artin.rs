//! Artin local coefficient rings `k[t_1..t_m]/(monomial ideal)` with exact
//! arithmetic and decidable unit / nilpotent / associate / r-th root
//! questions.
//!
//! The quotient must be finite-dimensional over the base field, which for a
//! monomial ideal means the ideal contains a pure power of every variable.
//! The maximal ideal is generated by the variable images, so every element is
//! either a unit (nonzero constant term) or nilpotent.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::CoreError;
use crate::linalg;
use crate::scalar::{FieldDesc, Scalar};

pub type Monomial = Vec<u32>;

/// A finite-dimensional monomial quotient of a polynomial ring over Q or F_p.
#[derive(Debug, PartialEq, Eq)]
pub struct ArtinRing {
    field: FieldDesc,
    vars: Vec<String>,
    ideal: Vec<Monomial>,
    basis: Vec<Monomial>,
    basis_index: BTreeMap<Monomial, usize>,
}

impl ArtinRing {
    pub fn new(
        field: FieldDesc,
        vars: Vec<String>,
        ideal: Vec<Monomial>,
    ) -> Result<Arc<Self>, CoreError> {
        field.validate()?;
        for g in &ideal {
            if g.len() != vars.len() {
                return Err(CoreError::BadInput(format!(
                    "ideal generator {:?} has {} exponents, expected {}",
                    g,
                    g.len(),
                    vars.len()
                )));
            }
        }
        // every variable needs a pure power among the generators
        let mut bounds = vec![None::<u32>; vars.len()];
        for g in &ideal {
            let nonzero: Vec<usize> = (0..g.len()).filter(|&i| g[i] > 0).collect();
            if nonzero.len() == 1 {
                let i = nonzero[0];
                bounds[i] = Some(bounds[i].map_or(g[i], |b| b.min(g[i])));
            }
        }
        for (i, b) in bounds.iter().enumerate() {
            if b.is_none() {
                return Err(CoreError::NotArtinian(vars[i].clone()));
            }
        }
        let bounds: Vec<u32> = bounds.into_iter().map(|b| b.unwrap()).collect();

        let mut ring = ArtinRing {
            field,
            vars,
            ideal,
            basis: Vec::new(),
            basis_index: BTreeMap::new(),
        };
        let mut basis = Vec::new();
        enumerate_monomials(&bounds, &mut Vec::new(), &mut |m| {
            if !ring.in_ideal(m) {
                basis.push(m.to_vec());
            }
        });
        basis.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        ring.basis_index = basis.iter().cloned().zip(0..).collect();
        ring.basis = basis;
        Ok(Arc::new(ring))
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn ideal(&self) -> &[Monomial] {
        &self.ideal
    }

    /// Monomial basis of the quotient, sorted by total degree then lex.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn in_ideal(&self, m: &[u32]) -> bool {
        self.ideal
            .iter()
            .any(|g| g.iter().zip(m).all(|(ge, me)| ge <= me))
    }

    pub fn var_index(&self, name: &str) -> Result<usize, CoreError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| CoreError::UnknownVariable(name.to_string()))
    }

    /// True when `r` is invertible in the ring, i.e. char does not divide r.
    pub fn exponent_invertible(&self, r: u32) -> bool {
        match self.field.characteristic() {
            0 => r > 0,
            p => r > 0 && !(r as u64).is_multiple_of(p),
        }
    }
}

fn enumerate_monomials(bounds: &[u32], prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if prefix.len() == bounds.len() {
        f(prefix);
        return;
    }
    let i = prefix.len();
    for e in 0..bounds[i] {
        prefix.push(e);
        enumerate_monomials(bounds, prefix, f);
        prefix.pop();
    }
}

/// Element of an [`ArtinRing`]: a coefficient map supported on the quotient
/// basis, with zero coefficients omitted. Immutable after construction.
#[derive(Debug, Clone)]
pub struct ArtinElement {
    ring: Arc<ArtinRing>,
    coeffs: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for ArtinElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs
    }
}
impl Eq for ArtinElement {}

impl ArtinElement {
    /// Reduce a raw coefficient map modulo the monomial ideal.
    pub fn from_coeffs(
        ring: &Arc<ArtinRing>,
        raw: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, CoreError> {
        let mut coeffs: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, s) in raw {
            if m.len() != ring.vars.len() {
                return Err(CoreError::BadInput(format!(
                    "monomial {:?} has wrong arity",
                    m
                )));
            }
            if ring.in_ideal(&m) {
                continue;
            }
            let entry = coeffs.entry(m).or_insert_with(|| ring.field.zero());
            *entry = ring.field.add(entry, &s);
        }
        coeffs.retain(|_, s| !ring.field.is_zero(s));
        Ok(ArtinElement {
            ring: Arc::clone(ring),
            coeffs,
        })
    }

    pub fn zero(ring: &Arc<ArtinRing>) -> Self {
        ArtinElement {
            ring: Arc::clone(ring),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<ArtinRing>, s: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !ring.field.is_zero(&s) {
            coeffs.insert(vec![0; ring.vars.len()], s);
        }
        ArtinElement {
            ring: Arc::clone(ring),
            coeffs,
        }
    }

    pub fn one(ring: &Arc<ArtinRing>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn from_i64(ring: &Arc<ArtinRing>, n: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(n))
    }

    pub fn var(ring: &Arc<ArtinRing>, index: usize) -> Self {
        let mut m = vec![0; ring.vars.len()];
        m[index] = 1;
        Self::from_coeffs(ring, [(m, ring.field.one())]).expect("arity is correct")
    }

    pub fn ring(&self) -> &Arc<ArtinRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeffs
            .get(&vec![0; self.ring.vars.len()])
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Unit iff the constant term is nonzero (local Artin quotient).
    pub fn is_unit(&self) -> bool {
        !self.ring.field.is_zero(&self.constant_term())
    }

    /// Nilpotent iff the constant term is zero.
    pub fn is_nilpotent(&self) -> bool {
        self.ring.field.is_zero(&self.constant_term())
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            self.ring == other.ring,
            "operands belong to different Artin rings"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut coeffs = self.coeffs.clone();
        for (m, s) in &other.coeffs {
            let entry = coeffs
                .entry(m.clone())
                .or_insert_with(|| self.ring.field.zero());
            *entry = self.ring.field.add(entry, s);
        }
        coeffs.retain(|_, s| !self.ring.field.is_zero(s));
        ArtinElement {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(m, s)| (m.clone(), self.ring.field.neg(s)))
            .collect();
        ArtinElement {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut coeffs: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, s1) in &self.coeffs {
            for (m2, s2) in &other.coeffs {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                if self.ring.in_ideal(&m) {
                    continue;
                }
                let s = self.ring.field.mul(s1, s2);
                let entry = coeffs.entry(m).or_insert_with(|| self.ring.field.zero());
                *entry = self.ring.field.add(entry, &s);
            }
        }
        coeffs.retain(|_, s| !self.ring.field.is_zero(s));
        ArtinElement {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let f = &self.ring.field;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(m, c)| (m.clone(), f.mul(c, s)))
            .filter(|(_, c)| !f.is_zero(c))
            .collect();
        ArtinElement {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a unit via the geometric series on the nilpotent part.
    pub fn invert(&self) -> Result<Self, CoreError> {
        let f = self.ring.field.clone();
        let c = self.constant_term();
        if f.is_zero(&c) {
            return Err(CoreError::NotAUnit);
        }
        let c_inv = f.inv(&c)?;
        // a = c (1 + n/c) with n nilpotent; 1/a = (1/c) sum (-n/c)^k
        let n_over_c = self.sub(&Self::constant(&self.ring, c)).scale(&c_inv);
        let mut acc = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        loop {
            term = term.mul(&n_over_c).neg();
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc.scale(&c_inv))
    }

    /// Lift an r-th root of the unit `self`, starting from a base-field root
    /// of its constant term. The result is the unique root with that constant
    /// term, and `result^r == self` exactly.
    pub fn rth_root_lift(&self, r: u32, root0: &Scalar) -> Result<Self, CoreError> {
        let f = self.ring.field.clone();
        if !self.ring.exponent_invertible(r) {
            return Err(CoreError::ExponentNotInvertible(r));
        }
        if !self.is_unit() {
            return Err(CoreError::NotAUnit);
        }
        let c = self.constant_term();
        if f.pow(root0, r) != c {
            return Err(CoreError::RootMismatch(
                f.render(&f.pow(root0, r)),
                f.render(&c),
            ));
        }
        // Newton iteration; the defect lives in ever higher powers of the
        // maximal ideal, which is nilpotent.
        let r_elt = Self::from_i64(&self.ring, r as i64);
        let mut x = Self::constant(&self.ring, root0.clone());
        for _ in 0..=self.ring.dim() {
            let defect = x.pow(r).sub(self);
            if defect.is_zero() {
                return Ok(x);
            }
            let deriv = r_elt.mul(&x.pow(r - 1));
            x = x.sub(&defect.mul(&deriv.invert()?));
        }
        unreachable!("Newton iteration exceeded the nilpotency bound");
    }

    fn to_vec(&self) -> Vec<Scalar> {
        let f = &self.ring.field;
        let mut v = vec![f.zero(); self.ring.dim()];
        for (m, s) in &self.coeffs {
            v[self.ring.basis_index[m]] = s.clone();
        }
        v
    }

    fn from_vec(ring: &Arc<ArtinRing>, v: &[Scalar]) -> Self {
        Self::from_coeffs(
            ring,
            ring.basis
                .iter()
                .zip(v)
                .map(|(m, s)| (m.clone(), s.clone())),
        )
        .expect("basis monomials are well-formed")
    }

    /// Matrix of multiplication by `self` on the quotient basis (row-major).
    fn mult_matrix(&self) -> Vec<Vec<Scalar>> {
        let f = &self.ring.field;
        let dim = self.ring.dim();
        let mut rows = vec![vec![f.zero(); dim]; dim];
        for (j, bm) in self.ring.basis.iter().enumerate() {
            let col = self
                .mul(&Self::from_coeffs(&self.ring, [(bm.clone(), f.one())]).unwrap())
                .to_vec();
            for (i, s) in col.into_iter().enumerate() {
                rows[i][j] = s;
            }
        }
        rows
    }

    /// Find a unit `lambda` with `other = lambda * self`, if one exists.
    ///
    /// Decided by linear algebra over the base field. `associate_solve(0, 0)`
    /// returns 1 by convention; `associate_solve(0, b != 0)` returns none.
    pub fn associate_solve(&self, other: &Self) -> Option<Self> {
        self.assert_same_ring(other);
        if self.is_zero() {
            return if other.is_zero() {
                Some(Self::one(&self.ring))
            } else {
                None
            };
        }
        let m = self.mult_matrix();
        let sol = linalg::solve(&self.ring.field, &m, &other.to_vec(), self.ring.dim())?;
        unit_solution(&self.ring, &sol).map(|v| Self::from_vec(&self.ring, &v))
    }

    /// Solve the joint system `target_p = lambda * p` and `q = lambda * target_q`
    /// for a single unit `lambda`. Used by the Faltings isomorphism test.
    pub fn joint_unit_solve(
        p: &Self,
        target_p: &Self,
        q_new: &Self,
        q_old: &Self,
    ) -> Option<Self> {
        let ring = &p.ring;
        if p.is_zero() && q_new.is_zero() {
            return if target_p.is_zero() && q_old.is_zero() {
                Some(Self::one(ring))
            } else {
                None
            };
        }
        let mut m = p.mult_matrix();
        m.extend(q_new.mult_matrix());
        let mut rhs = target_p.to_vec();
        rhs.extend(q_old.to_vec());
        let sol = linalg::solve(&ring.field, &m, &rhs, ring.dim())?;
        unit_solution(ring, &sol).map(|v| Self::from_vec(ring, &v))
    }

    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let f = &self.ring.field;
        let mut parts = Vec::new();
        for (m, s) in &self.coeffs {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    if *e == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                parts.push(f.render(s));
            } else if *s == f.one() {
                parts.push(mono.join("*"));
            } else {
                parts.push(format!("{}*{}", f.render(s), mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

/// Pick a solution with nonzero constant-basis coordinate from an affine
/// solution space, when one exists. The constant monomial is basis index 0.
fn unit_solution(ring: &Arc<ArtinRing>, sol: &linalg::SolveResult) -> Option<Vec<Scalar>> {
    let f = &ring.field();
    debug_assert!(ring.basis()[0].iter().all(|&e| e == 0));
    if !f.is_zero(&sol.particular[0]) {
        return Some(sol.particular.clone());
    }
    for k in &sol.kernel {
        if !f.is_zero(&k[0]) {
            let v = sol
                .particular
                .iter()
                .zip(k)
                .map(|(a, b)| f.add(a, b))
                .collect();
            return Some(v);
        }
    }
    None
}
