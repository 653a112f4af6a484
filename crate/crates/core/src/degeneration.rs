//! Exceptional-chain bookkeeping for limits of spin structures: after the
//! base change t -> t^r a node of order n sprouts a chain of nr - 1 rational
//! curves, and the divisor coefficients on that chain determine whether the
//! limit sheaf is free at the node and, if not, its twist.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::graph::{SpinType, StableGraph};

/// Number of exceptional curves over a node of order `n` (local equation
/// `xy - t^n`) after the degree-`r` base change.
pub fn chain_length(n: u32, r: u32) -> u32 {
    n * r - 1
}

/// Degree of `O(sum a_i X_i)` on component `j` of a fiber with intersection
/// multiplicities `delta`: `-a_j * delta_j + sum_{i != j} a_i * delta_ij`,
/// where `delta_j = sum_{i != j} delta_ij`.
///
/// `adjacency` keys are unordered pairs stored as `(min, max)`; self-pairs
/// are ignored.
pub fn divisor_degree(
    a: &BTreeMap<u32, i64>,
    adjacency: &BTreeMap<(u32, u32), u32>,
    j: u32,
) -> Result<i64, CoreError> {
    let a_j = *a
        .get(&j)
        .ok_or_else(|| CoreError::MissingCoefficient(j.to_string()))?;
    let mut deg = 0i64;
    for (&(x, y), &mult) in adjacency {
        if x == y || mult == 0 {
            continue;
        }
        let other = if x == j {
            y
        } else if y == j {
            x
        } else {
            continue;
        };
        let a_i = *a
            .get(&other)
            .ok_or_else(|| CoreError::MissingCoefficient(other.to_string()))?;
        deg += (a_i - a_j) * mult as i64;
    }
    Ok(deg)
}

/// One exceptional chain in a semistable fiber: the curves `members` run in
/// branch order from the component `ends.0` to the component `ends.1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExceptionalChain {
    pub node: u32,
    pub ends: (u32, u32),
    pub members: Vec<u32>,
}

/// A fiber with its exceptional chains singled out. Non-exceptional
/// components are everything in `components`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainFiber {
    pub components: Vec<u32>,
    pub chains: Vec<ExceptionalChain>,
}

impl ChainFiber {
    /// Intersection multiplicities of the fiber: consecutive chain members
    /// meet once, and each chain end meets its non-exceptional component.
    pub fn adjacency(&self) -> BTreeMap<(u32, u32), u32> {
        let mut adj: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        let mut bump = |x: u32, y: u32| {
            let key = (x.min(y), x.max(y));
            *adj.entry(key).or_insert(0) += 1;
        };
        for chain in &self.chains {
            if chain.members.is_empty() {
                bump(chain.ends.0, chain.ends.1);
                continue;
            }
            bump(chain.ends.0, chain.members[0]);
            for w in chain.members.windows(2) {
                bump(w[0], w[1]);
            }
            bump(chain.ends.1, *chain.members.last().unwrap());
        }
        adj
    }
}

/// Result of normalizing a fiber's divisor coefficients: non-exceptional
/// components are brought to 0 and only the mod-r residues along each chain
/// survive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReducedFiber {
    /// Common residue class (mod r) of the non-exceptional coefficients.
    pub c: u32,
    /// Non-exceptional components 0, exceptional members `(a_i - c) mod r`.
    pub coefficients: BTreeMap<u32, i64>,
    /// Per node, the residue of the first chain coefficient — the input to
    /// `normalize_chain`.
    pub residues: BTreeMap<u32, u32>,
}

/// Check that the coefficients describe an r-th-power divisor class datum
/// and normalize them: every exceptional curve must have divisor degree
/// divisible by r, and all non-exceptional coefficients must share one
/// residue class mod r.
pub fn reduce_nonexceptional(
    fiber: &ChainFiber,
    a: &BTreeMap<u32, i64>,
    r: u32,
) -> Result<ReducedFiber, CoreError> {
    if r == 0 {
        return Err(CoreError::BadInput("r must be positive".into()));
    }
    let adj = fiber.adjacency();
    let rr = r as i64;
    for chain in &fiber.chains {
        for &m in &chain.members {
            let deg = divisor_degree(a, &adj, m)?;
            if deg.rem_euclid(rr) != 0 {
                return Err(CoreError::CongruenceFailure(format!(
                    "exceptional curve {} has divisor degree {} not divisible by {}",
                    m, deg, r
                )));
            }
        }
    }
    let mut c: Option<i64> = None;
    for &comp in &fiber.components {
        let a_v = *a
            .get(&comp)
            .ok_or_else(|| CoreError::MissingCoefficient(comp.to_string()))?;
        let res = a_v.rem_euclid(rr);
        match c {
            None => c = Some(res),
            Some(prev) if prev != res => {
                return Err(CoreError::CongruenceFailure(format!(
                    "non-exceptional coefficients fall in distinct classes {} and {} mod {}",
                    prev, res, r
                )));
            }
            _ => {}
        }
    }
    let c = c.unwrap_or(0);
    let mut coefficients = BTreeMap::new();
    for &comp in &fiber.components {
        coefficients.insert(comp, 0);
    }
    let mut residues = BTreeMap::new();
    for chain in &fiber.chains {
        for &m in &chain.members {
            let a_m = *a
                .get(&m)
                .ok_or_else(|| CoreError::MissingCoefficient(m.to_string()))?;
            coefficients.insert(m, (a_m - c).rem_euclid(rr));
        }
        let s0 = match chain.members.first() {
            Some(first) => (*a.get(first).unwrap() - c).rem_euclid(rr) as u32,
            None => 0,
        };
        residues.insert(chain.node, s0);
    }
    Ok(ReducedFiber {
        c: c as u32,
        coefficients,
        residues,
    })
}

/// Normalized coefficients along one exceptional chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSolution {
    /// `e'_1 .. e'_{nr-1}`, all nonpositive.
    pub coeffs: Vec<i64>,
    /// 1-based kink position, absent when the chain is identically zero.
    pub m: Option<usize>,
    /// Divisor degrees on the chain curves (boundary coefficients 0):
    /// 0 everywhere except `r` at position `m`.
    pub degrees: Vec<i64>,
}

/// Solve for the unique nonpositive chain coefficients with residue `s0`
/// on the first curve whose divisor degrees vanish except for a single
/// `+r` kink: piecewise linear `e'_i = i*e'_1 + max(0, i-m)*r` with
/// `e'_1 = s0 - r` (or the zero chain when `s0 = 0`) and `m = n*(r + e'_1)`.
pub fn normalize_chain(s0: u32, n: u32, r: u32) -> Result<ChainSolution, CoreError> {
    if n == 0 || r == 0 {
        return Err(CoreError::BadInput("n and r must be positive".into()));
    }
    if s0 >= r {
        return Err(CoreError::BadInput(format!(
            "residue {} out of range for r = {}",
            s0, r
        )));
    }
    let len = chain_length(n, r) as usize;
    let (e1, m) = if s0 == 0 {
        (0i64, None)
    } else {
        let e1 = s0 as i64 - r as i64;
        (e1, Some((n as i64 * (r as i64 + e1)) as usize))
    };
    let mk = m.map(|m| m as i64).unwrap_or(i64::MAX);
    let coeffs: Vec<i64> = (1..=len as i64)
        .map(|i| i * e1 + (i - mk).max(0) * r as i64)
        .collect();
    let at = |i: i64| -> i64 {
        if i == 0 || i == len as i64 + 1 {
            0
        } else {
            coeffs[(i - 1) as usize]
        }
    };
    let degrees: Vec<i64> = (1..=len as i64)
        .map(|i| at(i - 1) - 2 * at(i) + at(i + 1))
        .collect();
    Ok(ChainSolution { coeffs, m, degrees })
}

/// Per-node data of a degenerating family: the node's singularity order
/// (local equation `xy - t^n`) and the residue mod r of the divisor
/// coefficient on the first exceptional curve of its chain.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NodeFamilyDatum {
    pub edge: u32,
    pub order: u32,
    pub residue: u32,
}

/// A one-parameter family: the special fiber's dual graph plus per-node data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Family {
    pub r: u32,
    pub graph: StableGraph,
    pub nodes: Vec<NodeFamilyDatum>,
}

/// Assemble the combinatorial type of the limit spin structure. A node with
/// residue 0 is free; otherwise the chain solution gives twist
/// `(u, v) = (-e'_1, r + e'_1)` with `u` on the branch carrying the first
/// exceptional curve — by convention, the first-listed endpoint of the edge.
pub fn limit_spin_type(family: &Family) -> Result<SpinType, CoreError> {
    let g = &family.graph;
    if g.r != family.r {
        return Err(CoreError::BadInput(format!(
            "family r = {} disagrees with graph r = {}",
            family.r, g.r
        )));
    }
    let report = g.validate();
    if !report.valid {
        return Err(CoreError::InvalidGraph(report.diagnostics.join("; ")));
    }
    let mut seen = BTreeSet::new();
    for d in &family.nodes {
        if g.edge(d.edge).is_none() {
            return Err(CoreError::BadInput(format!("unknown edge {}", d.edge)));
        }
        if !seen.insert(d.edge) {
            return Err(CoreError::BadInput(format!(
                "duplicate datum for edge {}",
                d.edge
            )));
        }
    }
    for e in &g.edges {
        if !seen.contains(&e.id) {
            return Err(CoreError::BadInput(format!("no datum for edge {}", e.id)));
        }
    }
    let r = family.r;
    let mut nonfree = BTreeMap::new();
    for d in &family.nodes {
        let sol = normalize_chain(d.residue, d.order, r)?;
        if sol.m.is_none() {
            continue;
        }
        let e1 = sol.coeffs[0];
        let (mut u, mut v) = ((-e1) as u32, (r as i64 + e1) as u32);
        let e = g.edge(d.edge).unwrap();
        // translate to the storage convention: u at the smaller vertex id,
        // and u <= v on loops
        let swap = if e.v.0 == e.v.1 {
            u > v
        } else {
            e.v.0 > e.v.1
        };
        if swap {
            std::mem::swap(&mut u, &mut v);
        }
        nonfree.insert(d.edge, (u, v));
    }
    let degrees = g
        .degrees_for(&nonfree)
        .map_err(|e| CoreError::InconsistentLimit(e.to_string()))?;
    Ok(SpinType { nonfree, degrees })
}
