//! The six domination problem kinds, solution witnesses, and the
//! definition-level verifier.

use crate::graph::{all_pairs_distances, DistanceOracle, Graph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProblemKind {
    Domination,
    TotalDomination,
    /// Every vertex of G has an S-vertex at distance exactly r.
    RStep { r: usize },
    /// Every vertex outside S has an S-vertex at distance exactly r.
    RHop { r: usize },
    Roman,
    /// Every 0-labeled vertex has a 2-labeled vertex at distance exactly r.
    RHopRoman { r: usize },
}

impl ProblemKind {
    pub fn r(&self) -> Option<usize> {
        match *self {
            ProblemKind::RStep { r } | ProblemKind::RHop { r } | ProblemKind::RHopRoman { r } => {
                Some(r)
            }
            _ => None,
        }
    }

    pub fn is_roman(&self) -> bool {
        matches!(self, ProblemKind::Roman | ProblemKind::RHopRoman { .. })
    }

    /// Short external code, used by the CLI and in JSON records.
    pub fn code(&self) -> &'static str {
        match self {
            ProblemKind::Domination => "dom",
            ProblemKind::TotalDomination => "totaldom",
            ProblemKind::RStep { .. } => "step",
            ProblemKind::RHop { .. } => "hop",
            ProblemKind::Roman => "roman",
            ProblemKind::RHopRoman { .. } => "hoproman",
        }
    }
}

/// f: V -> {0, 1, 2}; weight = |V1| + 2|V2|.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RomanLabeling {
    labels: Vec<u8>,
}

impl RomanLabeling {
    pub fn new(labels: Vec<u8>) -> Result<Self, ShapeError> {
        if let Some(&bad) = labels.iter().find(|&&l| l > 2) {
            return Err(ShapeError::BadLabel(bad));
        }
        Ok(RomanLabeling { labels })
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> u8 {
        self.labels[v]
    }

    pub fn weight(&self) -> usize {
        self.labels.iter().map(|&l| l as usize).sum()
    }

    pub fn part(&self, label: u8) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| self.labels[v] == label).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Sorted vertex set, for the four set problems.
    VertexSet(Vec<usize>),
    /// Per-vertex labeling, for the two Roman problems.
    Labeling(RomanLabeling),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub witness: Witness,
    pub value: usize,
}

impl Solution {
    pub fn from_set(mut set: Vec<usize>) -> Self {
        set.sort_unstable();
        set.dedup();
        let value = set.len();
        Solution { witness: Witness::VertexSet(set), value }
    }

    pub fn from_labeling(labeling: RomanLabeling) -> Self {
        let value = labeling.weight();
        Solution { witness: Witness::Labeling(labeling), value }
    }

    pub fn vertex_set(&self) -> Option<&[usize]> {
        match &self.witness {
            Witness::VertexSet(s) => Some(s),
            Witness::Labeling(_) => None,
        }
    }

    pub fn labeling(&self) -> Option<&RomanLabeling> {
        match &self.witness {
            Witness::Labeling(l) => Some(l),
            Witness::VertexSet(_) => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("problem kind {0:?} expects a vertex-set witness")]
    ExpectedVertexSet(ProblemKind),
    #[error("problem kind {0:?} expects a labeling witness")]
    ExpectedLabeling(ProblemKind),
    #[error("witness references vertex {0} but the graph has {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("labeling covers {0} vertices but the graph has {1}")]
    LabelingLengthMismatch(usize, usize),
    #[error("label {0} outside {{0,1,2}}")]
    BadLabel(u8),
    #[error("solution value {value} inconsistent with witness ({actual})")]
    ValueMismatch { value: usize, actual: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    /// One vertex whose requirement is unmet.
    Violation(usize),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Checks `candidate` against the definition of `kind` on `g`.
pub fn verify(g: &Graph, kind: ProblemKind, candidate: &Solution) -> Result<Verdict, ShapeError> {
    let oracle = kind.r().map(|_| all_pairs_distances(g));
    verify_with_oracle(g, kind, candidate, oracle.as_ref())
}

/// Same as [`verify`] but reuses a precomputed distance table for
/// distance-parameterized kinds.
pub fn verify_with_oracle(
    g: &Graph,
    kind: ProblemKind,
    candidate: &Solution,
    oracle: Option<&DistanceOracle>,
) -> Result<Verdict, ShapeError> {
    let n = g.n();
    match kind {
        ProblemKind::Domination | ProblemKind::TotalDomination | ProblemKind::RStep { .. }
        | ProblemKind::RHop { .. } => {
            let set = candidate
                .vertex_set()
                .ok_or(ShapeError::ExpectedVertexSet(kind))?;
            if let Some(&v) = set.iter().find(|&&v| v >= n) {
                return Err(ShapeError::VertexOutOfRange(v, n));
            }
            if candidate.value != set.len() {
                return Err(ShapeError::ValueMismatch { value: candidate.value, actual: set.len() });
            }
            let mut in_set = vec![false; n];
            for &v in set {
                in_set[v] = true;
            }
            let satisfied = |v: usize| -> bool {
                match kind {
                    ProblemKind::Domination => {
                        in_set[v] || g.neighbors(v).iter().any(|&u| in_set[u])
                    }
                    ProblemKind::TotalDomination => g.neighbors(v).iter().any(|&u| in_set[u]),
                    ProblemKind::RStep { r } => {
                        let d = oracle.expect("distance oracle required");
                        (0..n).any(|u| in_set[u] && d.dist(v, u) == r)
                    }
                    ProblemKind::RHop { r } => {
                        let d = oracle.expect("distance oracle required");
                        in_set[v] || (0..n).any(|u| in_set[u] && d.dist(v, u) == r)
                    }
                    _ => unreachable!(),
                }
            };
            for v in 0..n {
                if !satisfied(v) {
                    return Ok(Verdict::Violation(v));
                }
            }
            Ok(Verdict::Pass)
        }
        ProblemKind::Roman | ProblemKind::RHopRoman { .. } => {
            let labeling = candidate.labeling().ok_or(ShapeError::ExpectedLabeling(kind))?;
            if labeling.labels().len() != n {
                return Err(ShapeError::LabelingLengthMismatch(labeling.labels().len(), n));
            }
            if candidate.value != labeling.weight() {
                return Err(ShapeError::ValueMismatch {
                    value: candidate.value,
                    actual: labeling.weight(),
                });
            }
            for v in 0..n {
                if labeling.label(v) != 0 {
                    continue;
                }
                let dominated = match kind {
                    ProblemKind::Roman => g.neighbors(v).iter().any(|&u| labeling.label(u) == 2),
                    ProblemKind::RHopRoman { r } => {
                        let d = oracle.expect("distance oracle required");
                        (0..n).any(|u| labeling.label(u) == 2 && d.dist(v, u) == r)
                    }
                    _ => unreachable!(),
                };
                if !dominated {
                    return Ok(Verdict::Violation(v));
                }
            }
            Ok(Verdict::Pass)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamilySpec};

    fn p4() -> Graph {
        generate(&GraphFamilySpec::Path { n: 4 }).unwrap()
    }

    #[test]
    fn exact_r_neighborhoods() {
        let oracle = all_pairs_distances(&p4());
        assert_eq!(oracle.exact_r_neighborhood(0, 2), vec![2]);
        let k3 = generate(&GraphFamilySpec::Complete { n: 3 }).unwrap();
        let o3 = all_pairs_distances(&k3);
        assert!(o3.exact_r_neighborhood(0, 2).is_empty());
        let star = generate(&GraphFamilySpec::Star { n: 4 }).unwrap();
        let os = all_pairs_distances(&star);
        assert!(os.exact_r_neighborhood(0, 2).is_empty());
        assert_eq!(os.exact_r_neighborhood(1, 2), vec![2, 3]);
    }

    #[test]
    fn p4_step_full_set_passes() {
        let sol = Solution::from_set(vec![0, 1, 2, 3]);
        assert_eq!(verify(&p4(), ProblemKind::RStep { r: 2 }, &sol), Ok(Verdict::Pass));
    }

    #[test]
    fn p4_hop_cases() {
        let g = p4();
        let kind = ProblemKind::RHop { r: 2 };
        assert_eq!(verify(&g, kind, &Solution::from_set(vec![0, 1])), Ok(Verdict::Pass));
        assert_eq!(verify(&g, kind, &Solution::from_set(vec![0, 3])), Ok(Verdict::Pass));
        // N_2(1) = {3}, and 3 is not in {0}: vertex 1 violates.
        assert_eq!(verify(&g, kind, &Solution::from_set(vec![0])), Ok(Verdict::Violation(1)));
    }

    #[test]
    fn c5_hop_roman_violation() {
        let c5 = generate(&GraphFamilySpec::Cycle { n: 5 }).unwrap();
        let f = RomanLabeling::new(vec![2, 1, 0, 0, 0]).unwrap();
        let sol = Solution::from_labeling(f);
        assert_eq!(
            verify(&c5, ProblemKind::RHopRoman { r: 2 }, &sol),
            Ok(Verdict::Violation(4))
        );
    }

    #[test]
    fn shape_mismatch_rejected() {
        let sol = Solution::from_set(vec![0]);
        assert_eq!(
            verify(&p4(), ProblemKind::Roman, &sol),
            Err(ShapeError::ExpectedLabeling(ProblemKind::Roman))
        );
        let bad = Solution { witness: Witness::VertexSet(vec![0]), value: 7 };
        assert_eq!(
            verify(&p4(), ProblemKind::Domination, &bad),
            Err(ShapeError::ValueMismatch { value: 7, actual: 1 })
        );
    }
}
