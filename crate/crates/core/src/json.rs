//! JSON schemas for the published interfaces: ring descriptors, ring and
//! nodal elements, local spin-map bundles, and spin types. Graphs, families,
//! and chain solutions serialize directly from their structs.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::artin::{ArtinElement, ArtinRing};
use crate::error::CoreError;
use crate::graph::{SpinType, StableGraph};
use crate::local::{EpqModule, SpinMapLocal};
use crate::nodal::{NodalAlgebra, NodalElement};
use crate::parse;
use crate::scalar::FieldDesc;

/// `{"field": "Q" | {"Fp": p}, "vars": [...], "ideal": [[...], ...]}` with
/// ideal generators given by exponent vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingJson {
    pub field: FieldDesc,
    pub vars: Vec<String>,
    pub ideal: Vec<Vec<u32>>,
}

impl RingJson {
    pub fn to_ring(&self) -> Result<Arc<ArtinRing>, CoreError> {
        ArtinRing::new(self.field.clone(), self.vars.clone(), self.ideal.clone())
    }

    pub fn from_ring(ring: &ArtinRing) -> Self {
        RingJson {
            field: ring.field().clone(),
            vars: ring.vars().to_vec(),
            ideal: ring.ideal().to_vec(),
        }
    }
}

/// An element is either a raw expression string or a canonical map from
/// comma-separated exponent vectors to coefficient strings
/// (`{"1,0": "2", "0,1": "1/2"}`). Output always uses the map form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Expr(String),
    Map(BTreeMap<String, String>),
}

pub fn element_from_json(ring: &Arc<ArtinRing>, e: &ElemJson) -> Result<ArtinElement, CoreError> {
    match e {
        ElemJson::Expr(s) => parse::normalize(ring, s),
        ElemJson::Map(map) => {
            let mut raw = Vec::new();
            for (key, val) in map {
                let mono: Vec<u32> = key
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<u32>()
                            .map_err(|_| CoreError::Parse(format!("bad exponent key {:?}", key)))
                    })
                    .collect::<Result<_, _>>()?;
                raw.push((mono, ring.field().parse(val)?));
            }
            ArtinElement::from_coeffs(ring, raw)
        }
    }
}

pub fn element_to_json(e: &ArtinElement) -> ElemJson {
    let field = e.ring().field();
    ElemJson::Map(
        e.coeffs()
            .iter()
            .map(|(m, s)| {
                let key = m
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                (key, field.render(s))
            })
            .collect(),
    )
}

/// `{"const": elt, "x": {"1": elt, ...}, "y": {...}}`; powers are the map
/// keys, `x^0`/`y^0` are not allowed (they belong in `const`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodalJson {
    #[serde(rename = "const", default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<ElemJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub x: BTreeMap<String, ElemJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub y: BTreeMap<String, ElemJson>,
}

fn power_map(
    ring: &Arc<ArtinRing>,
    m: &BTreeMap<String, ElemJson>,
) -> Result<BTreeMap<u32, ArtinElement>, CoreError> {
    let mut out = BTreeMap::new();
    for (k, v) in m {
        let n: u32 = k
            .trim()
            .parse()
            .map_err(|_| CoreError::Parse(format!("bad power key {:?}", k)))?;
        if n == 0 {
            return Err(CoreError::Parse(
                "power 0 is not allowed; use \"const\"".into(),
            ));
        }
        out.insert(n, element_from_json(ring, v)?);
    }
    Ok(out)
}

pub fn nodal_from_json(
    algebra: &Arc<NodalAlgebra>,
    e: &NodalJson,
) -> Result<NodalElement, CoreError> {
    let ring = algebra.ring();
    let c = match &e.constant {
        Some(v) => element_from_json(ring, v)?,
        None => ArtinElement::zero(ring),
    };
    Ok(NodalElement::from_parts(
        algebra,
        c,
        power_map(ring, &e.x)?,
        power_map(ring, &e.y)?,
    ))
}

pub fn nodal_to_json(e: &NodalElement) -> NodalJson {
    let to_map = |m: &BTreeMap<u32, ArtinElement>| {
        m.iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k.to_string(), element_to_json(v)))
            .collect()
    };
    NodalJson {
        constant: if e.constant().is_zero() {
            None
        } else {
            Some(element_to_json(e.constant()))
        },
        x: to_map(e.x_coeffs()),
        y: to_map(e.y_coeffs()),
    }
}

/// Bundle for `spin local classify`: the base ring, the node parameters
/// `p, q` (the algebra is `R[x,y]/(xy - pq)`), the order `r`, and the
/// `r + 1` components of the spin map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpinMapJson {
    pub ring: RingJson,
    pub p: ElemJson,
    pub q: ElemJson,
    pub r: u32,
    pub components: Vec<NodalJson>,
}

impl SpinMapJson {
    pub fn to_spin_map(&self) -> Result<SpinMapLocal, CoreError> {
        let ring = self.ring.to_ring()?;
        let p = element_from_json(&ring, &self.p)?;
        let q = element_from_json(&ring, &self.q)?;
        let algebra = NodalAlgebra::new(&ring, p.mul(&q))?;
        let module = EpqModule::new(&algebra, p, q)?;
        let components = self
            .components
            .iter()
            .map(|c| nodal_from_json(&algebra, c))
            .collect::<Result<Vec<_>, _>>()?;
        SpinMapLocal::from_components(module, self.r, components)
    }
}

/// Bundle for `spin local isom`: one ring and two `(p, q)` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsomJson {
    pub ring: RingJson,
    pub first: PairJson,
    pub second: PairJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairJson {
    pub p: ElemJson,
    pub q: ElemJson,
}

impl IsomJson {
    pub fn to_modules(&self) -> Result<(EpqModule, EpqModule), CoreError> {
        let ring = self.ring.to_ring()?;
        let p1 = element_from_json(&ring, &self.first.p)?;
        let q1 = element_from_json(&ring, &self.first.q)?;
        let p2 = element_from_json(&ring, &self.second.p)?;
        let q2 = element_from_json(&ring, &self.second.q)?;
        if p1.mul(&q1) != p2.mul(&q2) {
            return Err(CoreError::PiMismatch);
        }
        let algebra = NodalAlgebra::new(&ring, p1.mul(&q1))?;
        Ok((
            EpqModule::new(&algebra, p1, q1)?,
            EpqModule::new(&algebra, p2, q2)?,
        ))
    }
}

/// `{"nonfree": [{"edge": 0, "u": 1}], "degrees": {"0": 0}}`; `v = r - u`
/// is implied, with `u` at the edge's smaller vertex id.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpinTypeJson {
    pub nonfree: Vec<NonfreeEdgeJson>,
    pub degrees: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NonfreeEdgeJson {
    pub edge: u32,
    pub u: u32,
}

impl SpinTypeJson {
    pub fn from_type(t: &SpinType) -> Self {
        SpinTypeJson {
            nonfree: t
                .nonfree
                .iter()
                .map(|(&edge, &(u, _))| NonfreeEdgeJson { edge, u })
                .collect(),
            degrees: t
                .degrees
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
        }
    }

    /// Rebuild and revalidate against a graph; the degrees are recomputed,
    /// and must match when present.
    pub fn to_type(&self, g: &StableGraph) -> Result<SpinType, CoreError> {
        let mut nonfree = BTreeMap::new();
        for nf in &self.nonfree {
            if g.edge(nf.edge).is_none() {
                return Err(CoreError::InvalidSpinType(format!(
                    "unknown edge {}",
                    nf.edge
                )));
            }
            if nf.u == 0 || nf.u >= g.r {
                return Err(CoreError::InvalidSpinType(format!(
                    "twist u = {} out of range for r = {}",
                    nf.u, g.r
                )));
            }
            if nonfree.insert(nf.edge, (nf.u, g.r - nf.u)).is_some() {
                return Err(CoreError::InvalidSpinType(format!(
                    "edge {} listed twice",
                    nf.edge
                )));
            }
        }
        let degrees = g.degrees_for(&nonfree)?;
        for (k, v) in &self.degrees {
            let id: u32 = k
                .parse()
                .map_err(|_| CoreError::Parse(format!("bad vertex key {:?}", k)))?;
            match degrees.get(&id) {
                Some(d) if d == v => {}
                Some(d) => {
                    return Err(CoreError::InvalidSpinType(format!(
                        "vertex {}: stated degree {} != computed {}",
                        id, v, d
                    )));
                }
                None => {
                    return Err(CoreError::InvalidSpinType(format!("unknown vertex {}", id)));
                }
            }
        }
        Ok(SpinType { nonfree, degrees })
    }
}
