//! Dual-graph combinatorics of limit spin structures: stable graphs, spin
//! types, enumeration, automorphism orders, root counts, and deformation-ring
//! presentations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub genus: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: u32,
    /// Endpoints; loops and multi-edges are allowed.
    pub v: (u32, u32),
}

/// Dual graph of a stable curve: vertices carry genera, edges are nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableGraph {
    pub r: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub genus: i64,
    pub diagnostics: Vec<String>,
}

/// Per-edge twist assignment plus per-vertex degrees; the combinatorial
/// shadow of a limit spin structure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinType {
    /// Non-free edges with their ordered twist `(u, v)`; `u` sits at the
    /// endpoint with the smaller vertex id, and loops carry `u <= v`.
    pub nonfree: BTreeMap<u32, (u32, u32)>,
    /// `d_v = (2g_v - 2 + deg v - sum of twists at v) / r` per vertex.
    pub degrees: BTreeMap<u32, i64>,
}

impl StableGraph {
    pub fn vertex(&self, id: u32) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn edge(&self, id: u32) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Valence of a vertex; a loop counts twice.
    pub fn degree(&self, vid: u32) -> u32 {
        self.edges
            .iter()
            .map(|e| (e.v.0 == vid) as u32 + (e.v.1 == vid) as u32)
            .sum()
    }

    /// Total arithmetic genus `sum g_v + (E - V + 1)`.
    pub fn genus(&self) -> i64 {
        let gsum: i64 = self.vertices.iter().map(|v| v.genus as i64).sum();
        gsum + self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self, &BTreeSet::new()).len() <= 1
    }

    pub fn validate(&self) -> ValidationReport {
        let mut diagnostics = Vec::new();
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id) {
                diagnostics.push(format!("duplicate vertex id {}", v.id));
            }
        }
        let mut eids = BTreeSet::new();
        for e in &self.edges {
            if !eids.insert(e.id) {
                diagnostics.push(format!("duplicate edge id {}", e.id));
            }
            for end in [e.v.0, e.v.1] {
                if self.vertex(end).is_none() {
                    diagnostics.push(format!("edge {} references missing vertex {}", e.id, end));
                }
            }
        }
        if self.vertices.is_empty() {
            diagnostics.push("graph has no vertices".into());
        }
        if !diagnostics.is_empty() {
            return ValidationReport {
                valid: false,
                genus: 0,
                diagnostics,
            };
        }
        if !self.is_connected() {
            diagnostics.push("graph is not connected".into());
        }
        for v in &self.vertices {
            let stab = 2 * v.genus as i64 - 2 + self.degree(v.id) as i64;
            if stab <= 0 {
                diagnostics.push(format!(
                    "vertex {} violates stability: 2g-2+deg = {}",
                    v.id, stab
                ));
            }
        }
        let genus = self.genus();
        if genus < 2 {
            diagnostics.push(format!("total genus {} < 2", genus));
        }
        if self.r < 2 {
            diagnostics.push(format!("r = {} must be at least 2", self.r));
        } else if (2 * genus - 2).rem_euclid(self.r as i64) != 0 {
            diagnostics.push(format!("r = {} does not divide 2g-2 = {}", self.r, 2 * genus - 2));
        }
        ValidationReport {
            valid: diagnostics.is_empty(),
            genus,
            diagnostics,
        }
    }

    /// Sum of twists carried at `vid` by the non-free edges of `t`.
    fn twist_at(&self, t: &BTreeMap<u32, (u32, u32)>, vid: u32) -> i64 {
        let mut sum = 0i64;
        for (eid, (u, v)) in t {
            let e = self.edge(*eid).expect("edge exists");
            if e.v.0 == e.v.1 {
                if e.v.0 == vid {
                    sum += (*u + *v) as i64;
                }
            } else {
                let (lo, hi) = if e.v.0 <= e.v.1 {
                    (e.v.0, e.v.1)
                } else {
                    (e.v.1, e.v.0)
                };
                if lo == vid {
                    sum += *u as i64;
                }
                if hi == vid {
                    sum += *v as i64;
                }
            }
        }
        sum
    }

    /// Check the per-vertex mod-r condition for a twist assignment and
    /// compute the degree vector, or report the offending vertex.
    pub fn degrees_for(
        &self,
        nonfree: &BTreeMap<u32, (u32, u32)>,
    ) -> Result<BTreeMap<u32, i64>, CoreError> {
        let r = self.r as i64;
        let mut degrees = BTreeMap::new();
        for v in &self.vertices {
            let d = 2 * v.genus as i64 - 2 + self.degree(v.id) as i64 - self.twist_at(nonfree, v.id);
            if d.rem_euclid(r) != 0 {
                return Err(CoreError::InvalidSpinType(format!(
                    "vertex {}: 2g-2+deg-twists = {} is not divisible by r = {}",
                    v.id, d, r
                )));
            }
            degrees.insert(v.id, d / r);
        }
        Ok(degrees)
    }

    /// All spin types on this graph, in deterministic lexicographic order
    /// (per edge: free first, then increasing `u`).
    pub fn enumerate_spin_types(&self) -> Result<Vec<SpinType>, CoreError> {
        let report = self.validate();
        if !report.valid {
            return Err(CoreError::InvalidGraph(report.diagnostics.join("; ")));
        }
        let r = self.r;
        let mut edges: Vec<&Edge> = self.edges.iter().collect();
        edges.sort_by_key(|e| e.id);
        let mut out = Vec::new();
        let mut current: BTreeMap<u32, (u32, u32)> = BTreeMap::new();
        fn rec(
            g: &StableGraph,
            edges: &[&Edge],
            idx: usize,
            r: u32,
            current: &mut BTreeMap<u32, (u32, u32)>,
            out: &mut Vec<SpinType>,
        ) {
            if idx == edges.len() {
                if let Ok(degrees) = g.degrees_for(current) {
                    out.push(SpinType {
                        nonfree: current.clone(),
                        degrees,
                    });
                }
                return;
            }
            let e = edges[idx];
            // free
            rec(g, edges, idx + 1, r, current, out);
            // non-free twists
            let us: Vec<u32> = if e.v.0 == e.v.1 {
                (1..=r / 2).collect()
            } else {
                (1..r).collect()
            };
            for u in us {
                current.insert(e.id, (u, r - u));
                rec(g, edges, idx + 1, r, current, out);
                current.remove(&e.id);
            }
        }
        rec(self, &edges, 0, r, &mut current, &mut out);
        Ok(out)
    }

    /// `sum d_v + |S| = (2g-2)/r`.
    pub fn degree_sum_check(&self, t: &SpinType) -> bool {
        let lhs: i64 = t.degrees.values().sum::<i64>() + t.nonfree.len() as i64;
        lhs == (2 * self.genus() - 2) / self.r as i64
    }

    /// `r^c` where `c` counts the components of the graph with the non-free
    /// edges deleted (the partial normalization). Counts abstract U_r-valued
    /// functions; the base field may realize fewer roots of unity.
    pub fn aut_order(&self, t: &SpinType) -> u64 {
        let removed: BTreeSet<u32> = t.nonfree.keys().copied().collect();
        let c = connected_components(self, &removed).len() as u32;
        (self.r as u64).pow(c)
    }

    /// Number of spin structures with this combinatorial type: the product
    /// over components `C` of the partial normalization of
    /// `r^(2 sum_{v in C} g_v + b_1(C))`.
    pub fn count_roots(&self, t: &SpinType) -> u64 {
        let removed: BTreeSet<u32> = t.nonfree.keys().copied().collect();
        let mut total = 1u64;
        for comp in connected_components(self, &removed) {
            let gsum: u32 = comp
                .iter()
                .map(|vid| self.vertex(*vid).unwrap().genus)
                .sum();
            let e_count = self
                .edges
                .iter()
                .filter(|e| !removed.contains(&e.id) && comp.contains(&e.v.0))
                .count() as i64;
            let b1 = (e_count - comp.len() as i64 + 1) as u32;
            total *= (self.r as u64).pow(2 * gsum + b1);
        }
        total
    }

    /// Swap the branches at one non-free edge. The swapped assignment must
    /// still satisfy the per-vertex mod-r condition.
    pub fn swap_branches(&self, t: &SpinType, edge: u32) -> Result<SpinType, CoreError> {
        let mut nonfree = t.nonfree.clone();
        let Some((u, v)) = nonfree.get(&edge).copied() else {
            return Err(CoreError::InvalidSpinType(format!(
                "edge {} is not in the non-free set",
                edge
            )));
        };
        nonfree.insert(edge, (v, u));
        let degrees = self.degrees_for(&nonfree)?;
        Ok(SpinType { nonfree, degrees })
    }
}

/// Connected components of the graph with the listed edges removed.
/// Every vertex appears in exactly one component.
pub fn connected_components(g: &StableGraph, removed_edges: &BTreeSet<u32>) -> Vec<BTreeSet<u32>> {
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    let mut comps = Vec::new();
    for v in &g.vertices {
        if seen.contains(&v.id) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![v.id];
        while let Some(cur) = stack.pop() {
            if !comp.insert(cur) {
                continue;
            }
            seen.insert(cur);
            for e in &g.edges {
                if removed_edges.contains(&e.id) {
                    continue;
                }
                if e.v.0 == cur && !comp.contains(&e.v.1) {
                    stack.push(e.v.1);
                }
                if e.v.1 == cur && !comp.contains(&e.v.0) {
                    stack.push(e.v.0);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// Degree of the natural pull-back of a degree-`d` sheaf normalized at `k`
/// singularities: each normalization drops the degree by one.
pub fn natural_pullback_degree(d: i64, k: u32) -> i64 {
    d - k as i64
}

/// Generators and relations of the universal deformation ring of a limit
/// spin structure: one `(P_i, Q_i)` pair per non-free node with relation
/// `P_i^{u_i} - Q_i^{v_i}`, plus smoothing parameters up to `3g - 3`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub node_pairs: Vec<NodePair>,
    /// Per-node smooth-cover substitution adjoining `tau_i`.
    pub pure_cover: Vec<PureCoverNode>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodePair {
    pub edge: u32,
    pub u: u32,
    pub v: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PureCoverNode {
    pub edge: u32,
    pub tau: String,
    pub relations: Vec<String>,
}

fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{}^{}", name, e)
    }
}

pub fn universal_deformation_presentation(
    g: &StableGraph,
    t: &SpinType,
) -> Result<Presentation, CoreError> {
    let genus = g.genus();
    if genus < 2 {
        return Err(CoreError::GenusTooSmall(genus));
    }
    let n = 3 * genus - 3;
    let l = t.nonfree.len() as i64;
    if l > n {
        return Err(CoreError::InvalidSpinType(format!(
            "{} nodes exceed the parameter count 3g-3 = {}",
            l, n
        )));
    }
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    let mut node_pairs = Vec::new();
    let mut pure_cover = Vec::new();
    for (i, (edge, (u, v))) in t.nonfree.iter().enumerate() {
        let idx = i + 1;
        let p_name = format!("P{}", idx);
        let q_name = format!("Q{}", idx);
        generators.push(p_name.clone());
        generators.push(q_name.clone());
        relations.push(format!("{} - {}", power(&p_name, *u), power(&q_name, *v)));
        node_pairs.push(NodePair {
            edge: *edge,
            u: *u,
            v: *v,
        });
        let tau = format!("tau{}", idx);
        pure_cover.push(PureCoverNode {
            edge: *edge,
            relations: vec![
                format!("p{} - {}", idx, power(&tau, *v)),
                format!("q{} - {}", idx, power(&tau, *u)),
            ],
            tau,
        });
    }
    for j in (l + 1)..=n {
        generators.push(format!("t{}", j));
    }
    Ok(Presentation {
        generators,
        relations,
        node_pairs,
        pure_cover,
    })
}
