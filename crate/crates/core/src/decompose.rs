//! Splitting an `(m, 0)`-sparse graph into a forest and an `(m, 1 - 2m)`-sparse graph.

use std::collections::HashMap;
use std::time::Instant;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_forest, EdgeSet, Graph, VertexSet};
use crate::params::{SparsityCertificate, SparsityParams};
use crate::partition::{partition_forest_plus, partition_sparse, PartitionResult};
use crate::rational::{self, Rational};
use crate::refine::{brooks_refine_traced, eliminate_triangles_traced, ForestPartition};
use crate::sparsity::{self, slack};

/// Which branch of the construction produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    /// `1 < m < 9/5`: two forests.
    #[serde(rename = "small_m_two_forests")]
    SmallMTwoForests,
    /// `9/5 <= m < 2`: a forest and a triangle-free pseudoforest.
    #[serde(rename = "small_m_triangle_free")]
    SmallMTriangleFree,
    /// `eps < 3/(2k+2)`.
    #[serde(rename = "large_m_case_A")]
    LargeMCaseA,
    /// `3/(2k+2) <= eps < 1/2`.
    #[serde(rename = "large_m_case_B")]
    LargeMCaseB,
    /// `1/2 <= eps < (k+3)/(2k+3)`.
    #[serde(rename = "large_m_case_C")]
    LargeMCaseC,
    /// `(k+3)/(2k+3) <= eps <= 3/4`.
    #[serde(rename = "large_m_case_D1")]
    LargeMCaseD1,
    /// `eps >= (k+4)/(2k+3)` and `eps > 3/4`; the only branch that refines.
    #[serde(rename = "large_m_case_D2")]
    LargeMCaseD2,
    /// `3/4 < eps < (k+4)/(2k+3)`.
    #[serde(rename = "large_m_case_D3")]
    LargeMCaseD3,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::SmallMTwoForests => "small_m_two_forests",
            CaseLabel::SmallMTriangleFree => "small_m_triangle_free",
            CaseLabel::LargeMCaseA => "large_m_case_A",
            CaseLabel::LargeMCaseB => "large_m_case_B",
            CaseLabel::LargeMCaseC => "large_m_case_C",
            CaseLabel::LargeMCaseD1 => "large_m_case_D1",
            CaseLabel::LargeMCaseD2 => "large_m_case_D2",
            CaseLabel::LargeMCaseD3 => "large_m_case_D3",
        }
    }
}

/// Classifies `m > 1`. `m = 2` belongs to the large-`m` branch.
pub fn case_label(m: Rational) -> Result<CaseLabel> {
    if m <= Rational::one() {
        return Err(Error::DensityTooSmall(rational::format_rational(&m)));
    }
    let two = Rational::from_integer(2);
    if m < two {
        return Ok(if m < Rational::new(9, 5) {
            CaseLabel::SmallMTwoForests
        } else {
            CaseLabel::SmallMTriangleFree
        });
    }
    let k = rational::floor(&m);
    let eps = m - Rational::from_integer(k);
    Ok(if eps < Rational::new(3, 2 * k + 2) {
        CaseLabel::LargeMCaseA
    } else if eps < Rational::new(1, 2) {
        CaseLabel::LargeMCaseB
    } else if eps < Rational::new(k + 3, 2 * k + 3) {
        CaseLabel::LargeMCaseC
    } else if eps <= Rational::new(3, 4) {
        CaseLabel::LargeMCaseD1
    } else if eps >= Rational::new(k + 4, 2 * k + 3) {
        CaseLabel::LargeMCaseD2
    } else {
        CaseLabel::LargeMCaseD3
    })
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

/// Diagnostics gathered while decomposing.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTrace {
    pub k: i64,
    #[serde(with = "rational::serde_rational")]
    pub eps: Rational,
    /// `f(k, eps)` when the large-`m` branch ran.
    pub slack: Option<i64>,
    pub refinement_steps: usize,
    pub stages: Vec<StageTiming>,
}

/// Equality ignores the trace, whose timings differ between runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Decomposition {
    #[serde(with = "rational::serde_rational")]
    pub m: Rational,
    pub case: CaseLabel,
    #[serde(rename = "F")]
    pub f: EdgeSet,
    #[serde(rename = "Gprime")]
    pub gp: EdgeSet,
    #[serde(skip)]
    pub trace: DecompositionTrace,
}

impl PartialEq for Decomposition {
    fn eq(&self, other: &Self) -> bool {
        (self.m, self.case, &self.f, &self.gp) == (other.m, other.case, &other.f, &other.gp)
    }
}

fn sides(result: PartitionResult) -> Result<(EdgeSet, EdgeSet)> {
    match result {
        PartitionResult::Success { e1, e2 } => Ok((e1, e2)),
        PartitionResult::Deficiency { .. } => Err(Error::InvariantViolation(
            "forest split reported a deficiency".into(),
        )),
    }
}

/// A sparsity failure of a derived precondition means the implication
/// between sparsity classes broke, which is never expected.
fn derived(result: Result<PartitionResult>) -> Result<PartitionResult> {
    result.map_err(|e| match e {
        Error::NotSparse(cert) => Error::InvariantViolation(format!(
            "derived ({}, {})-sparsity failed",
            rational::format_rational(&cert.a),
            rational::format_rational(&cert.b)
        )),
        other => other,
    })
}

struct Clock {
    start: Instant,
    stages: Vec<StageTiming>,
}

impl Clock {
    fn new() -> Self {
        Clock {
            start: Instant::now(),
            stages: Vec::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.stages.push(StageTiming {
            stage: stage.to_string(),
            seconds: (now - self.start).as_secs_f64(),
        });
        self.start = now;
    }
}

/// Partitions `E(g)` into a forest `F` and an `(m, 1 - 2m)`-sparse `G'`.
/// Requires `m > 1` and `g` to be `(m, 0)`-sparse.
pub fn decompose_ksw(g: &Graph, m: Rational) -> Result<Decomposition> {
    let case = case_label(m)?;
    let mut clock = Clock::new();
    let params = SparsityParams::new(m, Rational::from_integer(0))?;
    if !sparsity::check_sparse(g, params)? {
        return Err(Error::NotSparse(Box::new(sparsity::certify(g, params))));
    }
    clock.lap("precondition");

    let k = rational::floor(&m);
    let eps = m - Rational::from_integer(k);
    let mut trace = DecompositionTrace {
        k,
        eps,
        ..DecompositionTrace::default()
    };
    let (f, gp) = match case {
        CaseLabel::SmallMTwoForests => {
            let split = sides(derived(partition_sparse(g, 1, -1, 1, -1))?)?;
            clock.lap("partition");
            split
        }
        CaseLabel::SmallMTriangleFree => {
            let (f, r) = sides(derived(partition_sparse(g, 1, -1, 1, 0))?)?;
            clock.lap("partition");
            let (p, steps) = eliminate_triangles_traced(g, &ForestPartition { f, r }, false)?;
            clock.lap("refine");
            trace.refinement_steps = steps.len();
            (p.f, p.r)
        }
        _ => {
            let s = slack(k, eps)?;
            trace.slack = Some(s);
            let (f, r) = sides(derived(partition_forest_plus(g, k, eps))?)?;
            clock.lap("partition");
            if case == CaseLabel::LargeMCaseD2 {
                let (p, steps) =
                    brooks_refine_traced(g, &ForestPartition { f, r }, k as usize, s as usize, false)?;
                clock.lap("refine");
                trace.refinement_steps = steps.len();
                (p.f, p.r)
            } else {
                (f, r)
            }
        }
    };

    let decomposition = Decomposition {
        m,
        case,
        f,
        gp,
        trace,
    };
    let ok = is_forest(g, &decomposition.f)
        && sparsity::sparse_verdict(
            g.vertex_count(),
            &endpoints(g, &decomposition.gp),
            SparsityParams::two_density(m)?,
        );
    clock.lap("verify");
    if !ok {
        return Err(Error::InvariantViolation(format!(
            "decomposition for m = {} failed its final check",
            rational::format_rational(&m)
        )));
    }
    let mut decomposition = decomposition;
    decomposition.trace.stages = clock.stages;
    Ok(decomposition)
}

fn endpoints(g: &Graph, s: &EdgeSet) -> Vec<(usize, usize)> {
    s.iter().map(|id| g.endpoints(id)).collect()
}

/// Independent re-check of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub partition_exact: bool,
    pub forest_acyclic: bool,
    pub remainder_sparse: bool,
    /// `(m, 1 - 2m)` certificate for `G'`, when the edge sets were in range.
    pub certificate: Option<SparsityCertificate>,
}

/// `true` iff `F` and `G'` partition `E(g)`, `F` is acyclic, and `G'` is
/// `(m, 1 - 2m)`-sparse.
pub fn verify_decomposition(g: &Graph, d: &Decomposition) -> bool {
    verify_decomposition_report(g, d).valid
}

pub fn verify_decomposition_report(g: &Graph, d: &Decomposition) -> VerificationReport {
    let in_range = d.f.validate(g).is_ok() && d.gp.validate(g).is_ok();
    let partition_exact =
        in_range && d.f.is_disjoint(&d.gp) && d.f.len() + d.gp.len() == g.edge_count();
    let forest_acyclic = in_range && is_forest(g, &d.f);
    let certificate = match (in_range, SparsityParams::two_density(d.m)) {
        (true, Ok(params)) => Some(sparsity::certify(&g.spanning_subgraph(&d.gp), params)),
        _ => None,
    };
    let remainder_sparse = certificate.as_ref().is_some_and(|c| c.is_sparse());
    VerificationReport {
        valid: partition_exact && forest_acyclic && remainder_sparse,
        partition_exact,
        forest_acyclic,
        remainder_sparse,
        certificate,
    }
}

/// Checks `sum |F_i| >= n + r s / 2` for hyperedges `F_1..F_r` spanning `n`
/// vertices, each sharing at least `s` vertices with the union of the others.
/// A hyperedge that shares fewer than `s` is reported as an error.
pub fn check_hypergraph_bound(sets: &[VertexSet], s: usize) -> Result<bool> {
    let mut occurrences: HashMap<usize, usize> = HashMap::new();
    for set in sets {
        for v in set.iter() {
            *occurrences.entry(v).or_default() += 1;
        }
    }
    let offending: Vec<usize> = sets
        .iter()
        .enumerate()
        .filter(|(_, set)| set.iter().filter(|v| occurrences[v] >= 2).count() < s)
        .map(|(i, _)| i)
        .collect();
    if !offending.is_empty() {
        return Err(Error::Domain(format!(
            "hyperedges {offending:?} share fewer than {s} vertices with the others"
        )));
    }
    let total: usize = sets.iter().map(VertexSet::len).sum();
    Ok(2 * total >= 2 * occurrences.len() + sets.len() * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, complete_graph};
    use crate::rational::{integer, rational};

    #[test]
    fn labels_follow_the_case_boundaries() {
        assert_eq!(case_label(rational(6, 5)).unwrap(), CaseLabel::SmallMTwoForests);
        assert_eq!(case_label(rational(9, 5)).unwrap(), CaseLabel::SmallMTriangleFree);
        assert_eq!(case_label(integer(2)).unwrap(), CaseLabel::LargeMCaseA);
        assert_eq!(case_label(rational(5, 2)).unwrap(), CaseLabel::LargeMCaseC);
        // k = 3: 3/(2k+2) = 3/8 is the first value of case B.
        assert_eq!(case_label(rational(27, 8)).unwrap(), CaseLabel::LargeMCaseB);
        assert_eq!(case_label(rational(11, 4)).unwrap(), CaseLabel::LargeMCaseD1);
        assert_eq!(case_label(rational(14, 5)).unwrap(), CaseLabel::LargeMCaseD3);
        assert_eq!(case_label(rational(20, 7)).unwrap(), CaseLabel::LargeMCaseD2);
        assert!(matches!(case_label(integer(1)), Err(Error::DensityTooSmall(_))));
    }

    #[test]
    fn cycle_splits_into_two_forests() {
        let g = circulant(5, 1).unwrap();
        let d = decompose_ksw(&g, rational(6, 5)).unwrap();
        assert_eq!(d.case, CaseLabel::SmallMTwoForests);
        assert!(verify_decomposition(&g, &d));
    }

    #[test]
    fn complete_graphs() {
        let k5 = complete_graph(5).unwrap();
        let d = decompose_ksw(&k5, integer(2)).unwrap();
        assert_eq!(d.case, CaseLabel::LargeMCaseA);
        assert!(verify_decomposition(&k5, &d));
        let k6 = complete_graph(6).unwrap();
        let d = decompose_ksw(&k6, rational(5, 2)).unwrap();
        assert_eq!(d.case, CaseLabel::LargeMCaseC);
        assert_eq!(d.trace.slack, Some(3));
        assert!(verify_decomposition(&k6, &d));
    }

    #[test]
    fn rejects_dense_inputs_and_small_m() {
        let k5 = complete_graph(5).unwrap();
        assert!(matches!(decompose_ksw(&k5, rational(3, 2)), Err(Error::NotSparse(_))));
        assert!(matches!(decompose_ksw(&k5, integer(1)), Err(Error::DensityTooSmall(_))));
    }

    #[test]
    fn verification_catches_a_cycle_in_f() {
        let k4 = complete_graph(4).unwrap();
        let mut d = decompose_ksw(&k4, integer(2)).unwrap();
        assert!(verify_decomposition(&k4, &d));
        let moved = d.gp.iter().next().unwrap();
        d.f = d.f.union(&EdgeSet::from_ids([moved]));
        d.gp = d.gp.iter().filter(|&e| e != moved).collect();
        let report = verify_decomposition_report(&k4, &d);
        assert!(!report.valid && !report.forest_acyclic);
    }

    #[test]
    fn empty_graph_verifies() {
        let g = Graph::empty(3);
        let d = decompose_ksw(&g, rational(7, 3)).unwrap();
        assert!(verify_decomposition(&g, &d));
    }

    #[test]
    fn hypergraph_bound() {
        let sets = [
            VertexSet::from_indices([0, 1, 2]),
            VertexSet::from_indices([1, 2, 3]),
        ];
        assert!(check_hypergraph_bound(&sets, 2).unwrap());
        let disjoint = [VertexSet::from_indices([0, 1]), VertexSet::from_indices([2, 3])];
        assert!(check_hypergraph_bound(&disjoint, 1).is_err());
    }
}
