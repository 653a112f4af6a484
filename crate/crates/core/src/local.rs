//! Local models of rank-one torsion-free sheaves at a node: the modules
//! E(p,q), spin-map construction and validation, cokernel lengths, the
//! sigma-deviation classifier, and the Faltings isomorphism/homomorphism
//! criteria.

use std::sync::Arc;

use crate::artin::ArtinElement;
use crate::error::CoreError;
use crate::nodal::{NodalAlgebra, NodalElement};

/// The image of `alpha(p,q) = [[x, p], [q, y]]` over `A = R[x,y]/(xy - pq)`.
/// Elements are canonical pairs `(f, g)` with `f` in `R[x]` and `g` in `R[y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpqModule {
    algebra: Arc<NodalAlgebra>,
    p: ArtinElement,
    q: ArtinElement,
}

impl EpqModule {
    pub fn new(
        algebra: &Arc<NodalAlgebra>,
        p: ArtinElement,
        q: ArtinElement,
    ) -> Result<Self, CoreError> {
        if p.ring() != algebra.ring() || q.ring() != algebra.ring() {
            return Err(CoreError::RingMismatch);
        }
        if p.mul(&q) != *algebra.pi() {
            return Err(CoreError::BadModuleData);
        }
        Ok(EpqModule {
            algebra: Arc::clone(algebra),
            p,
            q,
        })
    }

    pub fn algebra(&self) -> &Arc<NodalAlgebra> {
        &self.algebra
    }

    pub fn p(&self) -> &ArtinElement {
        &self.p
    }

    pub fn q(&self) -> &ArtinElement {
        &self.q
    }

    /// Apply `alpha(p,q)` to a pair.
    pub fn apply_alpha(&self, f: &NodalElement, g: &NodalElement) -> (NodalElement, NodalElement) {
        let x = NodalElement::gen_x(&self.algebra);
        let y = NodalElement::gen_y(&self.algebra);
        let p = NodalElement::from_const(&self.algebra, self.p.clone());
        let q = NodalElement::from_const(&self.algebra, self.q.clone());
        (
            x.mul(f).add(&p.mul(g)),
            q.mul(f).add(&y.mul(g)),
        )
    }

    /// Decide membership of a vector in the image of `alpha(p,q)` and return
    /// the unique canonical preimage pair `(f, g)` when it exists.
    pub fn membership(
        &self,
        vec: &(NodalElement, NodalElement),
    ) -> Option<(NodalElement, NodalElement)> {
        let (a, b) = vec;
        if a.algebra() != &self.algebra || b.algebra() != &self.algebra {
            return None;
        }
        // alpha(f, g) = (xf + pg, qf + yg) with f in R[x], g in R[y] reads off
        // f from the x-part of the first component and g from the y-part of
        // the second; the remaining coefficients are consistency constraints.
        let f = NodalElement::from_parts(
            &self.algebra,
            a.x_coeff(1),
            a.x_coeffs()
                .iter()
                .filter(|(n, _)| **n >= 2)
                .map(|(n, c)| (n - 1, c.clone())),
            [],
        );
        let g = NodalElement::from_parts(
            &self.algebra,
            b.y_coeff(1),
            [],
            b.y_coeffs()
                .iter()
                .filter(|(m, _)| **m >= 2)
                .map(|(m, c)| (m - 1, c.clone())),
        );
        // constraints: const and y-part of the first component, const and
        // x-part of the second
        if a.constant() != &self.p.mul(g.constant()) {
            return None;
        }
        if b.constant() != &self.q.mul(f.constant()) {
            return None;
        }
        let max_y = a.y_coeffs().keys().max().copied().unwrap_or(0);
        for m in 1..=max_y.max(g.y_coeffs().keys().max().copied().unwrap_or(0)) {
            if a.y_coeff(m) != self.p.mul(&g.y_coeff(m)) {
                return None;
            }
        }
        let max_x = b.x_coeffs().keys().max().copied().unwrap_or(0);
        for n in 1..=max_x.max(f.x_coeffs().keys().max().copied().unwrap_or(0)) {
            if b.x_coeff(n) != self.q.mul(&f.x_coeff(n)) {
                return None;
            }
        }
        debug_assert!({
            let (a2, b2) = self.apply_alpha(&f, &g);
            a2 == *a && b2 == *b
        });
        Some((f, g))
    }
}

/// Classification of a candidate spin map by its sigma deviations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinClass {
    /// All sigma deviations vanish: locally induced from the canonical map.
    Spin,
    /// Some deviation is nonzero but all are nilpotent.
    QuasiSpin,
    /// A deviation is a unit; cannot occur for consistent input data.
    NotQuasiSpin,
}

impl std::fmt::Display for SpinClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpinClass::Spin => write!(f, "spin"),
            SpinClass::QuasiSpin => write!(f, "quasi-spin"),
            SpinClass::NotQuasiSpin => write!(f, "not-quasi-spin"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SigmaReport {
    /// sigma_1 .. sigma_{r-1}; sigma_u is identically zero.
    pub sigmas: Vec<ArtinElement>,
    pub u: u32,
    pub v: u32,
    pub w: ArtinElement,
    pub class: SpinClass,
}

/// The lift `(b_0, ..., b_r)` of a map `E(p,q)^{tensor r} -> A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinMapLocal {
    module: EpqModule,
    r: u32,
    components: Vec<NodalElement>,
}

impl SpinMapLocal {
    pub fn from_components(
        module: EpqModule,
        r: u32,
        components: Vec<NodalElement>,
    ) -> Result<Self, CoreError> {
        if r == 0 {
            return Err(CoreError::BadTwist("r must be positive".into()));
        }
        if components.len() != (r + 1) as usize {
            return Err(CoreError::BadInput(format!(
                "expected {} components, got {}",
                r + 1,
                components.len()
            )));
        }
        for c in &components {
            if c.algebra() != module.algebra() {
                return Err(CoreError::AlgebraMismatch);
            }
        }
        Ok(SpinMapLocal {
            module,
            r,
            components,
        })
    }

    pub fn module(&self) -> &EpqModule {
        &self.module
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn components(&self) -> &[NodalElement] {
        &self.components
    }

    /// Verify the relation families `p b_i = x b_{i+1}` and
    /// `y b_i = q b_{i+1}`; returns the indices where either fails.
    pub fn check_relations(&self) -> (bool, Vec<usize>) {
        let alg = self.module.algebra();
        let x = NodalElement::gen_x(alg);
        let y = NodalElement::gen_y(alg);
        let p = NodalElement::from_const(alg, self.module.p.clone());
        let q = NodalElement::from_const(alg, self.module.q.clone());
        let mut failing = Vec::new();
        for i in 0..self.r as usize {
            let ok_p = p.mul(&self.components[i]) == x.mul(&self.components[i + 1]);
            let ok_q = y.mul(&self.components[i]) == q.mul(&self.components[i + 1]);
            if !ok_p || !ok_q {
                failing.push(i);
            }
        }
        (failing.is_empty(), failing)
    }

    /// Read the twist `(u, v)` off the residues of `b_0` and `b_r`.
    ///
    /// Requires `b_0 = x^u (unit series)` and `b_r = y^v (unit series)`
    /// modulo the maximal ideal, with `b_i = 0` in between.
    pub fn twist(&self) -> Result<(u32, u32), CoreError> {
        let f = self.module.algebra().ring().field();
        let r0 = self.components[0].residue();
        let rr = self.components[self.r as usize].residue();
        if !f.is_zero(&r0.c) || !r0.ys.is_empty() || r0.xs.is_empty() {
            return Err(CoreError::BadResidueShape(
                "b_0 mod m is not x^u times a unit series".into(),
            ));
        }
        if !f.is_zero(&rr.c) || !rr.xs.is_empty() || rr.ys.is_empty() {
            return Err(CoreError::BadResidueShape(
                "b_r mod m is not y^v times a unit series".into(),
            ));
        }
        for i in 1..self.r as usize {
            let ri = self.components[i].residue();
            if !f.is_zero(&ri.c) || !ri.xs.is_empty() || !ri.ys.is_empty() {
                return Err(CoreError::BadResidueShape(format!(
                    "b_{} is nonzero modulo the maximal ideal",
                    i
                )));
            }
        }
        let u = *r0.xs.keys().next().expect("nonempty");
        let v = *rr.ys.keys().next().expect("nonempty");
        Ok((u, v))
    }

    /// Cokernel length `u + v - 1` of the residue map, and whether the
    /// cokernel is good (`length = r - 1`).
    pub fn cokernel_length(&self) -> Result<(u32, bool), CoreError> {
        let (u, v) = self.twist()?;
        let len = u + v - 1;
        Ok((len, len == self.r - 1))
    }

    /// Extract the sigma deviations and classify the map.
    pub fn extract_sigma(&self) -> Result<SigmaReport, CoreError> {
        let (u, v) = self.twist()?;
        let ring = self.module.algebra().ring();
        let pi = self.module.algebra().pi();
        let r = self.r;
        let b0 = &self.components[0];
        let br = &self.components[r as usize];
        // b_{0,u} and b_{r,-v} are units; w = b_{r,-v} / b_{0,u}
        let lead0 = b0.x_coeff(u);
        let leadr = br.y_coeff(v);
        if !lead0.is_unit() || !leadr.is_unit() {
            return Err(CoreError::NonUnitLeadingCoefficient);
        }
        let w = leadr.mul(&lead0.invert()?);
        let w_inv = w.invert()?;
        let mut sigmas = Vec::new();
        for i in 1..r {
            let sigma = if i < u {
                // sigma_i = b_{0,i} - (pi^{u-i}/w) b_{r,i-r}
                b0.x_coeff(i)
                    .sub(&pi.pow(u - i).mul(&w_inv).mul(&br.y_coeff(r - i)))
            } else if i == u {
                ArtinElement::zero(ring)
            } else {
                // sigma_i = b_{r,i-r} - w pi^{i-u} b_{0,i}
                br.y_coeff(r - i).sub(&w.mul(&pi.pow(i - u)).mul(&b0.x_coeff(i)))
            };
            sigmas.push(sigma);
        }
        let any_nonzero = sigmas.iter().any(|s| !s.is_zero());
        let any_unit = sigmas.iter().any(|s| s.is_unit());
        let class = if any_unit {
            SpinClass::NotQuasiSpin
        } else if any_nonzero {
            SpinClass::QuasiSpin
        } else {
            SpinClass::Spin
        };
        Ok(SigmaReport {
            sigmas,
            u,
            v,
            w,
            class,
        })
    }
}

/// Build the induced spin map `b = a * (x^u, p x^{u-1}, ..., p^u,
/// w q^{v-1} y, ..., w y^v)` for the twist `(u, v)` and unit `a`.
pub fn make_spin_map(
    module: &EpqModule,
    r: u32,
    u: u32,
    v: u32,
    w: &ArtinElement,
    a: &ArtinElement,
) -> Result<SpinMapLocal, CoreError> {
    if u == 0 || v == 0 {
        return Err(CoreError::BadTwist("u and v must both be at least one".into()));
    }
    if u + v != r {
        return Err(CoreError::BadTwist(format!("u + v = {} but r = {}", u + v, r)));
    }
    if !w.is_unit() || !a.is_unit() {
        return Err(CoreError::NotAUnit);
    }
    let p = module.p();
    let q = module.q();
    if p.pow(u) != w.mul(&q.pow(v)) {
        return Err(CoreError::BadTwist("p^u != w q^v".into()));
    }
    let alg = module.algebra();
    let mut components = Vec::with_capacity((r + 1) as usize);
    for i in 0..=r {
        let b_i = if i <= u {
            NodalElement::x_term(alg, u - i, a.mul(&p.pow(i)))
        } else {
            NodalElement::y_term(alg, i - u, a.mul(w).mul(&q.pow(r - i)))
        };
        components.push(b_i);
    }
    SpinMapLocal::from_components(module.clone(), r, components)
}

/// Faltings' criterion: `E(p,q)` and `E(p',q')` over the same `pi` are
/// isomorphic iff there is a unit `mu` with `p' = mu p` and `q' = mu^{-1} q`.
/// Returns the witness when one exists.
pub fn epq_isomorphic(
    first: &EpqModule,
    second: &EpqModule,
) -> Result<Option<ArtinElement>, CoreError> {
    if first.algebra().pi() != second.algebra().pi()
        || first.algebra().ring() != second.algebra().ring()
    {
        return Err(CoreError::PiMismatch);
    }
    for e in [first.p(), first.q(), second.p(), second.q()] {
        if !e.is_nilpotent() {
            return Err(CoreError::NotInMaximalIdeal);
        }
    }
    // mu p = p' and mu q' = q, solved jointly over the base field
    Ok(ArtinElement::joint_unit_solve(
        first.p(),
        second.p(),
        second.q(),
        first.q(),
    ))
}

/// A homomorphism `E(p,q) -> E(p',q')` presented by its lift
/// `[[phi_+, psi_+], [psi_-, phi_-]]`.
#[derive(Debug, Clone)]
pub struct ModuleHom {
    pub source: EpqModule,
    pub target: EpqModule,
    pub phi_plus: NodalElement,
    pub phi_minus: NodalElement,
    pub psi_plus: NodalElement,
    pub psi_minus: NodalElement,
}

/// Complete `(phi_+, phi_-)` to a module homomorphism, or report that the
/// constant-term constraints fail.
pub fn hom_complete(
    phi_plus: &NodalElement,
    phi_minus: &NodalElement,
    source: &EpqModule,
    target: &EpqModule,
) -> Result<Option<ModuleHom>, CoreError> {
    if source.algebra() != target.algebra() {
        return Err(CoreError::AlgebraMismatch);
    }
    let alg = source.algebra();
    if phi_plus.algebra() != alg || phi_minus.algebra() != alg {
        return Err(CoreError::AlgebraMismatch);
    }
    if !phi_plus.is_x_only() || !phi_minus.is_y_only() {
        return Err(CoreError::BadInput(
            "phi_+ must be x-only and phi_- y-only".into(),
        ));
    }
    // p' phi_-(0) = phi_+(0) p  and  q' phi_+(0) = phi_-(0) q
    let c_plus = phi_plus.constant();
    let c_minus = phi_minus.constant();
    if target.p().mul(c_minus) != c_plus.mul(source.p())
        || target.q().mul(c_plus) != c_minus.mul(source.q())
    {
        return Ok(None);
    }
    // psi_+ = (p/x)(phi_+ - phi_+(0)) : shift the x-exponents down by one
    let psi_plus = {
        let mut acc = NodalElement::zero(alg);
        for (n, c) in phi_plus.x_coeffs() {
            let term = NodalElement::x_term(alg, n - 1, c.mul(source.p()));
            acc = acc.add(&term);
        }
        acc
    };
    let psi_minus = {
        let mut acc = NodalElement::zero(alg);
        for (m, c) in phi_minus.y_coeffs() {
            let term = NodalElement::y_term(alg, m - 1, c.mul(source.q()));
            acc = acc.add(&term);
        }
        acc
    };
    Ok(Some(ModuleHom {
        source: source.clone(),
        target: target.clone(),
        phi_plus: phi_plus.clone(),
        phi_minus: phi_minus.clone(),
        psi_plus,
        psi_minus,
    }))
}

/// Shape of the local automorphism group of a quasi-spin map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalAutKind {
    /// `p` or `q` nonzero: diagonal `U_r` (`phi_+ = phi_- = zeta`).
    Diagonal,
    /// `p = q = 0`: independent pair, `U_r x U_r`.
    Product,
}

#[derive(Debug, Clone)]
pub struct LocalAutGroup {
    pub kind: LocalAutKind,
    /// `r^1` or `r^2`, the order over a field with all r-th roots of unity.
    pub abstract_order: u64,
    /// r-th roots of unity actually present in the base field.
    pub realized_roots: u64,
    /// `realized_roots^(1 or 2)`.
    pub realized_order: u64,
}

pub fn local_aut_group(b: &SpinMapLocal) -> Result<LocalAutGroup, CoreError> {
    let (ok, failing) = b.check_relations();
    if !ok {
        return Err(CoreError::BadInput(format!(
            "spin relations fail at indices {:?}",
            failing
        )));
    }
    let report = b.extract_sigma()?;
    if report.class == SpinClass::NotQuasiSpin {
        return Err(CoreError::BadInput("not a quasi-spin map".into()));
    }
    let r = b.r() as u64;
    let field = b.module().algebra().ring().field();
    let roots = field.roots_of_unity(b.r()).len() as u64;
    let (kind, exp) = if b.module().p().is_zero() && b.module().q().is_zero() {
        (LocalAutKind::Product, 2)
    } else {
        (LocalAutKind::Diagonal, 1)
    };
    Ok(LocalAutGroup {
        kind,
        abstract_order: r.pow(exp),
        realized_roots: roots,
        realized_order: roots.pow(exp),
    })
}
