//! Hardness gadget constructions for the exact-distance domination problems:
//! the bipartite and chordal step/hop gadgets, the even and odd Roman gadgets,
//! the membership transform, forward certificates, and solution pull-back.
//!
//! Every gadget vertex carries exactly one role tag; vertex ids are assigned
//! canonically (sorted by role tag), so two builds of the same instance agree
//! vertex-for-vertex.

use crate::domination::{verify, ProblemKind, RomanLabeling, Solution, Witness};
use crate::graph::{exact_distance_graph, Graph};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum K5Which {
    A1IJ,
    A1JI,
    A0,
}

/// Role of a gadget vertex. Indices `i`, `j` are 0-based source-graph vertex
/// ids; `t`, `s`, `b` are 1-based positions along paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RoleTag {
    /// Copy of source vertex i.
    U(usize),
    /// The private checker vertex u'_i (Roman gadgets).
    UPrime(usize),
    /// t-th vertex of the pendant tail at u_i (step gadgets).
    Tail { i: usize, t: usize },
    /// Subdivision vertex of source edge {i, j} (bipartite step gadget).
    SubdivA { i: usize, j: usize },
    /// t-th intermediate on the subdivided edge path, counted from u_i's side
    /// (Roman gadgets).
    EdgePath { i: usize, j: usize, t: usize },
    /// t-th vertex on the spoke from the edge gadget of {i, j} towards s.
    SPoke { i: usize, j: usize, t: usize },
    /// t-th interior vertex on the path from u'_i into the edge gadget of {i, j}.
    UPrimePath { i: usize, j: usize, t: usize },
    /// t-th vertex of the p-chain (step gadgets).
    P(usize),
    /// s-th vertex of the pendant path at p_t.
    PTail { t: usize, s: usize },
    /// The hub vertex s (Roman gadgets).
    S,
    /// t-th vertex of the chain hanging off s.
    STail(usize),
    /// t-th vertex of branch b in {1, 2} at the end of the s-chain.
    SBranch { b: usize, t: usize },
    /// K5 auxiliary vertex of edge {i, j} (odd Roman gadget).
    K5Aux { i: usize, j: usize, which: K5Which },
}

impl fmt::Display for RoleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RoleTag::U(i) => write!(f, "u({})", i + 1),
            RoleTag::UPrime(i) => write!(f, "u'({})", i + 1),
            RoleTag::Tail { i, t } => write!(f, "tail({},{t})", i + 1),
            RoleTag::SubdivA { i, j } => write!(f, "a({},{})", i + 1, j + 1),
            RoleTag::EdgePath { i, j, t } => write!(f, "edgepath({},{},{t})", i + 1, j + 1),
            RoleTag::SPoke { i, j, t } => write!(f, "spoke({},{},{t})", i + 1, j + 1),
            RoleTag::UPrimePath { i, j, t } => write!(f, "u'path({},{},{t})", i + 1, j + 1),
            RoleTag::P(t) => write!(f, "p({t})"),
            RoleTag::PTail { t, s } => write!(f, "ptail({t},{s})"),
            RoleTag::S => write!(f, "s"),
            RoleTag::STail(t) => write!(f, "stail({t})"),
            RoleTag::SBranch { b, t } => write!(f, "sbranch({b},{t})"),
            RoleTag::K5Aux { i, j, which } => {
                let w = match which {
                    K5Which::A1IJ => "a1_ij",
                    K5Which::A1JI => "a1_ji",
                    K5Which::A0 => "a0",
                };
                write!(f, "k5({},{},{w})", i + 1, j + 1)
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unparseable role tag {0:?}")]
pub struct RoleParseError(String);

impl FromStr for RoleTag {
    type Err = RoleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RoleParseError(s.to_string());
        if s == "s" {
            return Ok(RoleTag::S);
        }
        let (name, rest) = s.split_once('(').ok_or_else(err)?;
        let args_str = rest.strip_suffix(')').ok_or_else(err)?;
        let args: Vec<&str> = args_str.split(',').collect();
        let num = |idx: usize| -> Result<usize, RoleParseError> {
            args.get(idx).and_then(|a| a.parse::<usize>().ok()).ok_or_else(err)
        };
        // Source-vertex indices are 1-based in the external format.
        let vid = |idx: usize| -> Result<usize, RoleParseError> {
            let v = num(idx)?;
            if v == 0 {
                return Err(err());
            }
            Ok(v - 1)
        };
        let expect_args = |k: usize| if args.len() == k { Ok(()) } else { Err(err()) };
        match name {
            "u" => {
                expect_args(1)?;
                Ok(RoleTag::U(vid(0)?))
            }
            "u'" => {
                expect_args(1)?;
                Ok(RoleTag::UPrime(vid(0)?))
            }
            "tail" => {
                expect_args(2)?;
                Ok(RoleTag::Tail { i: vid(0)?, t: num(1)? })
            }
            "a" => {
                expect_args(2)?;
                Ok(RoleTag::SubdivA { i: vid(0)?, j: vid(1)? })
            }
            "edgepath" => {
                expect_args(3)?;
                Ok(RoleTag::EdgePath { i: vid(0)?, j: vid(1)?, t: num(2)? })
            }
            "spoke" => {
                expect_args(3)?;
                Ok(RoleTag::SPoke { i: vid(0)?, j: vid(1)?, t: num(2)? })
            }
            "u'path" => {
                expect_args(3)?;
                Ok(RoleTag::UPrimePath { i: vid(0)?, j: vid(1)?, t: num(2)? })
            }
            "p" => {
                expect_args(1)?;
                Ok(RoleTag::P(num(0)?))
            }
            "ptail" => {
                expect_args(2)?;
                Ok(RoleTag::PTail { t: num(0)?, s: num(1)? })
            }
            "stail" => {
                expect_args(1)?;
                Ok(RoleTag::STail(num(0)?))
            }
            "sbranch" => {
                expect_args(2)?;
                Ok(RoleTag::SBranch { b: num(0)?, t: num(1)? })
            }
            "k5" => {
                expect_args(3)?;
                let which = match args[2] {
                    "a1_ij" => K5Which::A1IJ,
                    "a1_ji" => K5Which::A1JI,
                    "a0" => K5Which::A0,
                    _ => return Err(err()),
                };
                Ok(RoleTag::K5Aux { i: vid(0)?, j: vid(1)?, which })
            }
            _ => Err(err()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OddWiring {
    /// u'_i attaches to a^1_{ij} for each incident edge {i, j}, as written.
    Literal,
    /// u'_i attaches to a^1_{ji} instead.
    Swapped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GadgetFamily {
    StepBipartite,
    StepChordal,
    RomanEven,
    RomanOdd { wiring: OddWiring },
}

impl GadgetFamily {
    pub fn label(&self) -> &'static str {
        match self {
            GadgetFamily::StepBipartite => "step-bipartite",
            GadgetFamily::StepChordal => "step-chordal",
            GadgetFamily::RomanEven => "roman-even",
            GadgetFamily::RomanOdd { wiring: OddWiring::Literal } => "roman-odd-literal",
            GadgetFamily::RomanOdd { wiring: OddWiring::Swapped } => "roman-odd-swapped",
        }
    }
}

/// How a claim shifts the source parameter k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundMap {
    /// k -> k + 2r (step/hop gadgets).
    AddTwoR,
    /// k -> 2k + 2r (Roman gadgets).
    DoublePlusTwoR,
}

impl BoundMap {
    pub fn apply(&self, k: usize, r: usize) -> usize {
        match self {
            BoundMap::AddTwoR => k + 2 * r,
            BoundMap::DoublePlusTwoR => 2 * k + 2 * r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub kind: ProblemKind,
    pub bound: BoundMap,
}

#[derive(Debug, Clone)]
pub struct GadgetOutput {
    pub graph: Graph,
    /// Role of each gadget vertex; sorted, since ids are assigned in role order.
    pub roles: Vec<RoleTag>,
    pub family: GadgetFamily,
    pub r: usize,
    pub source: Graph,
    pub claims: Vec<Claim>,
}

impl GadgetOutput {
    pub fn vertex_of(&self, tag: RoleTag) -> Option<usize> {
        self.roles.binary_search(&tag).ok()
    }

    pub fn role_of(&self, v: usize) -> RoleTag {
        self.roles[v]
    }

    /// One line per vertex: `<1-based id> <role-tag>`.
    pub fn roles_text(&self) -> String {
        let mut out = String::new();
        for (v, role) in self.roles.iter().enumerate() {
            out.push_str(&format!("{} {}\n", v + 1, role));
        }
        out
    }
}

/// Parses a roles sidecar file back into a per-vertex role list.
pub fn parse_roles(text: &str) -> Result<Vec<RoleTag>, RoleParseError> {
    let mut entries = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let (id, role) = trimmed
            .split_once(' ')
            .ok_or_else(|| RoleParseError(trimmed.to_string()))?;
        let id: usize = id.parse().map_err(|_| RoleParseError(trimmed.to_string()))?;
        entries.push((id, role.parse::<RoleTag>()?));
    }
    entries.sort_by_key(|&(id, _)| id);
    for (pos, &(id, _)) in entries.iter().enumerate() {
        if id != pos + 1 {
            return Err(RoleParseError(format!("non-contiguous vertex id {id}")));
        }
    }
    Ok(entries.into_iter().map(|(_, role)| role).collect())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("source graph has an isolated vertex ({0}); pre-place isolated vertices and delete them")]
    IsolatedVertex(usize),
    #[error("source graph must be connected")]
    Disconnected,
    #[error("r must be >= 2, got {0}")]
    InvalidR(usize),
    #[error("r must be even for the even Roman gadget, got {0}")]
    ExpectedEvenR(usize),
    #[error("vertex set is not a dominating set of the source graph")]
    InvalidDomSet,
    #[error("solution does not verify against any of the gadget's claims")]
    InvalidSolution,
    #[error("membership transform applies to distance kinds only, got {0:?}")]
    NonDistanceKind(ProblemKind),
}

/// Accumulates roles and role-level edges, then numbers vertices canonically.
struct GadgetBuilder {
    roles: BTreeSet<RoleTag>,
    edges: Vec<(RoleTag, RoleTag)>,
}

impl GadgetBuilder {
    fn new() -> Self {
        GadgetBuilder { roles: BTreeSet::new(), edges: Vec::new() }
    }

    fn vertex(&mut self, tag: RoleTag) -> RoleTag {
        self.roles.insert(tag);
        tag
    }

    fn edge(&mut self, a: RoleTag, b: RoleTag) {
        self.vertex(a);
        self.vertex(b);
        self.edges.push((a, b));
    }

    fn path(&mut self, seq: &[RoleTag]) {
        for w in seq.windows(2) {
            self.edge(w[0], w[1]);
        }
    }

    fn finish(
        self,
        family: GadgetFamily,
        r: usize,
        source: &Graph,
        claims: Vec<Claim>,
    ) -> GadgetOutput {
        let roles: Vec<RoleTag> = self.roles.into_iter().collect();
        let id_of = |tag: &RoleTag| roles.binary_search(tag).expect("edge endpoint registered");
        let mut edges: Vec<(usize, usize)> =
            self.edges.iter().map(|(a, b)| (id_of(a), id_of(b))).collect();
        edges.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
        edges.dedup_by_key(|&mut (a, b)| (a.min(b), a.max(b)));
        let graph = Graph::new(roles.len(), edges).expect("gadget edges are simple");
        GadgetOutput { graph, roles, family, r, source: source.clone(), claims }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepVariant {
    Bipartite,
    Chordal,
}

/// Builds the step/hop gadget. Both claims (r-step and r-hop, k -> k + 2r)
/// ride on the same construction.
pub fn build_step_gadget(
    g1: &Graph,
    r: usize,
    variant: StepVariant,
) -> Result<GadgetOutput, GadgetError> {
    if r < 2 {
        return Err(GadgetError::InvalidR(r));
    }
    if let Some(v) = (0..g1.n()).find(|&v| g1.degree(v) == 0) {
        return Err(GadgetError::IsolatedVertex(v));
    }
    let n = g1.n();
    let mut b = GadgetBuilder::new();
    for i in 0..n {
        b.vertex(RoleTag::U(i));
    }
    match variant {
        StepVariant::Bipartite => {
            // Each source edge is subdivided once through a_{ij}.
            for &(i, j) in g1.edges() {
                let a = RoleTag::SubdivA { i, j };
                b.edge(RoleTag::U(i), a);
                b.edge(a, RoleTag::U(j));
            }
        }
        StepVariant::Chordal => {
            // Clique on all copy vertices (subsumes the source edges).
            for i in 0..n {
                for j in (i + 1)..n {
                    b.edge(RoleTag::U(i), RoleTag::U(j));
                }
            }
        }
    }
    // Pendant tails u_i - u_i^1 - ... - u_i^r.
    for i in 0..n {
        let mut seq = vec![RoleTag::U(i)];
        seq.extend((1..=r).map(|t| RoleTag::Tail { i, t }));
        b.path(&seq);
    }
    // Cross edges per source edge.
    for &(i, j) in g1.edges() {
        b.edge(RoleTag::Tail { i, t: 1 }, RoleTag::U(j));
        b.edge(RoleTag::U(i), RoleTag::Tail { i: j, t: 1 });
    }
    // p_1 adjacent to every u_i; p-chain p_1 - p_2 - ... - p_{2r}.
    for i in 0..n {
        b.edge(RoleTag::U(i), RoleTag::P(1));
    }
    let chain: Vec<RoleTag> = (1..=2 * r).map(RoleTag::P).collect();
    b.path(&chain);
    // Pendant path of length r at every p_t.
    for t in 1..=2 * r {
        let mut seq = vec![RoleTag::P(t)];
        seq.extend((1..=r).map(|s| RoleTag::PTail { t, s }));
        b.path(&seq);
    }
    let family = match variant {
        StepVariant::Bipartite => GadgetFamily::StepBipartite,
        StepVariant::Chordal => GadgetFamily::StepChordal,
    };
    let claims = vec![
        Claim { kind: ProblemKind::RStep { r }, bound: BoundMap::AddTwoR },
        Claim { kind: ProblemKind::RHop { r }, bound: BoundMap::AddTwoR },
    ];
    Ok(b.finish(family, r, g1, claims))
}

/// The vertex at distance r/2 from u_k along the subdivided path of edge
/// {i, j} (i < j), in the even Roman gadget. At r = 2 both endpoints see the
/// single midpoint u_{ij1}.
fn even_midpoint_for(k: usize, i: usize, j: usize, r: usize) -> RoleTag {
    if k == i {
        RoleTag::EdgePath { i, j, t: r / 2 }
    } else {
        RoleTag::EdgePath { i, j, t: r - 1 }
    }
}

fn build_roman_even(g1: &Graph, r: usize) -> Result<GadgetOutput, GadgetError> {
    let n = g1.n();
    let mut b = GadgetBuilder::new();
    for i in 0..n {
        b.vertex(RoleTag::U(i));
        b.vertex(RoleTag::UPrime(i));
    }
    for &(i, j) in g1.edges() {
        // Literal intermediate list: u_{ij1..r-1} then u_{ji(r/2-1)..1}.
        let mut seq = vec![RoleTag::U(i)];
        seq.extend((1..r).map(|t| RoleTag::EdgePath { i, j, t }));
        seq.extend((1..r / 2).rev().map(|t| RoleTag::EdgePath { i: j, j: i, t }));
        seq.push(RoleTag::U(j));
        b.path(&seq);
        // Spoke from the (r/2)-midpoint to s.
        let mut spoke = vec![RoleTag::EdgePath { i, j, t: r / 2 }];
        spoke.extend((1..=r / 2).map(|t| RoleTag::SPoke { i, j, t }));
        spoke.push(RoleTag::S);
        b.path(&spoke);
        // u' attachment paths from both endpoints to their r/2-midpoints.
        for (k, other) in [(i, j), (j, i)] {
            let mut attach = vec![RoleTag::UPrime(k)];
            attach.extend((1..r / 2).map(|t| RoleTag::UPrimePath { i: k, j: other, t }));
            attach.push(even_midpoint_for(k, i, j, r));
            b.path(&attach);
        }
    }
    add_s_chain_and_branches(&mut b, r);
    let claims = vec![Claim { kind: ProblemKind::RHopRoman { r }, bound: BoundMap::DoublePlusTwoR }];
    Ok(b.finish(GadgetFamily::RomanEven, r, g1, claims))
}

fn build_roman_odd(g1: &Graph, r: usize, wiring: OddWiring) -> Result<GadgetOutput, GadgetError> {
    let n = g1.n();
    let half_lo = (r - 1) / 2;
    let half_hi = (r + 1) / 2;
    let mut b = GadgetBuilder::new();
    for i in 0..n {
        b.vertex(RoleTag::U(i));
        b.vertex(RoleTag::UPrime(i));
    }
    for &(i, j) in g1.edges() {
        // Path with r intermediates: u_{ij1..(r-1)/2} then u_{ji((r+1)/2)..1}.
        let mut seq = vec![RoleTag::U(i)];
        seq.extend((1..=half_lo).map(|t| RoleTag::EdgePath { i, j, t }));
        seq.extend((1..=half_hi).rev().map(|t| RoleTag::EdgePath { i: j, j: i, t }));
        seq.push(RoleTag::U(j));
        b.path(&seq);
        // K5 on the two middle path vertices plus three auxiliaries.
        let k5 = [
            RoleTag::EdgePath { i, j, t: half_lo },
            RoleTag::EdgePath { i: j, j: i, t: half_hi },
            RoleTag::K5Aux { i, j, which: K5Which::A1IJ },
            RoleTag::K5Aux { i, j, which: K5Which::A1JI },
            RoleTag::K5Aux { i, j, which: K5Which::A0 },
        ];
        for (a, &x) in k5.iter().enumerate() {
            for &y in &k5[a + 1..] {
                b.edge(x, y);
            }
        }
        // Spoke from a^0_{ij} to s.
        let mut spoke = vec![RoleTag::K5Aux { i, j, which: K5Which::A0 }];
        spoke.extend((1..=half_lo).map(|t| RoleTag::SPoke { i, j, t }));
        spoke.push(RoleTag::S);
        b.path(&spoke);
        // u' attachments into the K5.
        let (for_i, for_j) = match wiring {
            OddWiring::Literal => (K5Which::A1IJ, K5Which::A1JI),
            OddWiring::Swapped => (K5Which::A1JI, K5Which::A1IJ),
        };
        for (k, other, which) in [(i, j, for_i), (j, i, for_j)] {
            let mut attach = vec![RoleTag::UPrime(k)];
            attach.extend((1..half_lo).map(|t| RoleTag::UPrimePath { i: k, j: other, t }));
            attach.push(RoleTag::K5Aux { i, j, which });
            b.path(&attach);
        }
    }
    add_s_chain_and_branches(&mut b, r);
    let claims = vec![Claim { kind: ProblemKind::RHopRoman { r }, bound: BoundMap::DoublePlusTwoR }];
    Ok(b.finish(GadgetFamily::RomanOdd { wiring }, r, g1, claims))
}

/// Chain s - s^1 - ... - s^{r-1} and the two length-r branches at s^{r-1}.
fn add_s_chain_and_branches(b: &mut GadgetBuilder, r: usize) {
    let mut chain = vec![RoleTag::S];
    chain.extend((1..r).map(RoleTag::STail));
    b.path(&chain);
    let anchor = *chain.last().unwrap();
    for branch in 1..=2 {
        let mut seq = vec![anchor];
        seq.extend((1..=r).map(|t| RoleTag::SBranch { b: branch, t }));
        b.path(&seq);
    }
}

/// Builds the Roman gadget for the parity of `r`.
pub fn build_roman_gadget(
    g1: &Graph,
    r: usize,
    wiring: OddWiring,
) -> Result<GadgetOutput, GadgetError> {
    if r < 2 {
        return Err(GadgetError::InvalidR(r));
    }
    if let Some(v) = (0..g1.n()).find(|&v| g1.degree(v) == 0) {
        return Err(GadgetError::IsolatedVertex(v));
    }
    if !g1.is_connected() {
        return Err(GadgetError::Disconnected);
    }
    if r % 2 == 0 {
        build_roman_even(g1, r)
    } else {
        build_roman_odd(g1, r, wiring)
    }
}

/// Membership transform: solve a distance kind on g as its classical
/// counterpart on D_r(g).
pub fn to_membership_instance(
    g: &Graph,
    kind: ProblemKind,
) -> Result<(Graph, ProblemKind), GadgetError> {
    let (r, mapped) = match kind {
        ProblemKind::RHop { r } => (r, ProblemKind::Domination),
        ProblemKind::RStep { r } => (r, ProblemKind::TotalDomination),
        ProblemKind::RHopRoman { r } => (r, ProblemKind::Roman),
        other => return Err(GadgetError::NonDistanceKind(other)),
    };
    Ok((exact_distance_graph(g, r), mapped))
}

/// The claim proofs' explicit "if"-direction solution built from a dominating
/// set of the source graph. Validity on the gadget is not promised here; the
/// harness tests it.
pub fn forward_certificate(out: &GadgetOutput, domset: &[usize]) -> Result<Solution, GadgetError> {
    let dom = Solution::from_set(domset.to_vec());
    match verify(&out.source, ProblemKind::Domination, &dom) {
        Ok(v) if v.is_pass() => {}
        _ => return Err(GadgetError::InvalidDomSet),
    }
    let r = out.r;
    match out.family {
        GadgetFamily::StepBipartite | GadgetFamily::StepChordal => {
            let mut set: Vec<usize> = dom
                .vertex_set()
                .unwrap()
                .iter()
                .map(|&i| out.vertex_of(RoleTag::U(i)).unwrap())
                .collect();
            for t in 1..=2 * r {
                set.push(out.vertex_of(RoleTag::P(t)).unwrap());
            }
            Ok(Solution::from_set(set))
        }
        GadgetFamily::RomanEven | GadgetFamily::RomanOdd { .. } => {
            let mut labels = vec![0u8; out.graph.n()];
            for &i in dom.vertex_set().unwrap() {
                labels[out.vertex_of(RoleTag::U(i)).unwrap()] = 2;
            }
            labels[out.vertex_of(RoleTag::S).unwrap()] = 2;
            for t in 1..r {
                labels[out.vertex_of(RoleTag::STail(t)).unwrap()] = 2;
            }
            Ok(Solution::from_labeling(RomanLabeling::new(labels).unwrap()))
        }
    }
}

/// Applies the claim proofs' normalization to a verified gadget solution and
/// pulls it back to a vertex set of the source graph. Whether the result
/// dominates the source is the harness's question, not a promise made here.
pub fn pull_back_normalize(out: &GadgetOutput, sol: &Solution) -> Result<Vec<usize>, GadgetError> {
    let verifies = out
        .claims
        .iter()
        .any(|c| matches!(verify(&out.graph, c.kind, sol), Ok(v) if v.is_pass()));
    if !verifies {
        return Err(GadgetError::InvalidSolution);
    }
    let r = out.r;
    match (&out.family, &sol.witness) {
        (GadgetFamily::StepBipartite | GadgetFamily::StepChordal, Witness::VertexSet(set)) => {
            let mut picked = vec![false; out.source.n()];
            for &v in set {
                match out.role_of(v) {
                    RoleTag::U(i) => picked[i] = true,
                    // Tail and subdivision picks shift to an adjacent copy vertex.
                    RoleTag::Tail { i, .. } => picked[i] = true,
                    RoleTag::SubdivA { i, .. } => picked[i] = true,
                    // p_t^r is exchangeable for p_t; neither reaches the source.
                    _ => {}
                }
            }
            Ok((0..out.source.n()).filter(|&i| picked[i]).collect())
        }
        (GadgetFamily::RomanEven | GadgetFamily::RomanOdd { .. }, Witness::Labeling(l)) => {
            let mut f = l.labels().to_vec();
            let spoke_root = |i: usize, j: usize| -> usize {
                // The vertex the paper's spoke rules name: u^{r/2}_{ij} (even)
                // or u^{(r-1)/2}_{ij} (odd) - the spoke vertex adjacent to s,
                // or the spoke origin itself when the spoke has no interiors.
                let last = match out.family {
                    GadgetFamily::RomanEven => r / 2,
                    _ => (r - 1) / 2,
                };
                out.vertex_of(RoleTag::SPoke { i, j, t: last })
                    .or_else(|| out.vertex_of(RoleTag::SPoke { i, j, t: 1 }))
                    .unwrap_or_else(|| {
                        out.vertex_of(RoleTag::K5Aux { i, j, which: K5Which::A0 }).unwrap()
                    })
            };
            for &(i, j) in out.source.edges() {
                let sp = spoke_root(i, j);
                if f[sp] == 2 {
                    f[sp] = 0;
                    f[out.vertex_of(RoleTag::U(i.min(j))).unwrap()] = 2;
                } else if f[sp] == 1 {
                    for k in [i.min(j), i.max(j)] {
                        let up = out.vertex_of(RoleTag::UPrime(k)).unwrap();
                        if f[up] == 1 {
                            f[sp] = 0;
                            f[up] = 0;
                            f[out.vertex_of(RoleTag::U(k)).unwrap()] = 2;
                            break;
                        }
                    }
                }
            }
            for i in 0..out.source.n() {
                let u = out.vertex_of(RoleTag::U(i)).unwrap();
                let up = out.vertex_of(RoleTag::UPrime(i)).unwrap();
                if f[u] == 1 && f[up] == 1 {
                    f[u] = 2;
                    f[up] = 0;
                }
                if f[up] == 2 {
                    f[up] = 0;
                    f[u] = 2;
                }
            }
            Ok((0..out.source.n())
                .filter(|&i| f[out.vertex_of(RoleTag::U(i)).unwrap()] == 2)
                .collect())
        }
        _ => Err(GadgetError::InvalidSolution),
    }
}
