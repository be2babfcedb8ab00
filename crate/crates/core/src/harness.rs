//! Campaign runner: empirically certifies the membership-transform
//! equivalences and the gadget claims on sampled instances, emitting
//! machine-readable reports with witnesses for every mismatch.

use crate::domination::{verify, ProblemKind, Solution, Witness};
use crate::gadgets::{
    build_roman_gadget, build_step_gadget, forward_certificate, pull_back_normalize, GadgetFamily,
    GadgetOutput, K5Which, OddWiring, RoleTag, StepVariant,
};
use crate::graph::{all_pairs_distances, exact_distance_graph, generate, splitmix64, Graph, GraphFamilySpec};
use crate::recognize::{is_bipartite, is_chordal, BipartiteCertificate, ChordalCertificate};
use crate::solve::{brute_force_reference, solve_exact, SolveOutcome};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Max n for the 2^n set-kind oracle.
    pub set_max_n: usize,
    /// Max n for the 3^n Roman oracle.
    pub roman_max_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { set_max_n: crate::solve::BRUTE_SET_MAX_N, roman_max_n: crate::solve::BRUTE_ROMAN_MAX_N }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceSpec {
    Family(GraphFamilySpec),
    Explicit { n: usize, edges: Vec<(usize, usize)> },
}

impl InstanceSpec {
    pub fn label(&self) -> String {
        match self {
            InstanceSpec::Family(spec) => spec.label(),
            InstanceSpec::Explicit { n, edges } => format!("explicit-{n}v-{}e", edges.len()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckKind {
    #[serde(rename = "transform")]
    Transform,
    #[serde(rename = "gadget-step")]
    GadgetStep,
    #[serde(rename = "gadget-hop")]
    GadgetHop,
    #[serde(rename = "gadget-roman-even")]
    GadgetRomanEven,
    #[serde(rename = "gadget-roman-odd")]
    GadgetRomanOdd,
    #[serde(rename = "structural")]
    Structural,
}

impl CheckKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Transform => "transform",
            CheckKind::GadgetStep => "gadget-step",
            CheckKind::GadgetHop => "gadget-hop",
            CheckKind::GadgetRomanEven => "gadget-roman-even",
            CheckKind::GadgetRomanOdd => "gadget-roman-odd",
            CheckKind::Structural => "structural",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub master_seed: u64,
    pub checks: Vec<CheckKind>,
    pub instances: Vec<InstanceSpec>,
    pub r_values: Vec<usize>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
}

fn default_parallelism() -> usize {
    1
}

/// One side of an equivalence comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideReport {
    pub label: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Set on mismatch records: the witness independently re-passed verify.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_verified: Option<bool>,
}

impl SideReport {
    fn value(label: &str, value: usize) -> Self {
        SideReport {
            label: label.to_string(),
            status: "value".into(),
            value: Some(value),
            witness: None,
            witness_verified: None,
        }
    }

    fn from_outcome(label: &str, outcome: &SolveOutcome) -> Self {
        match outcome {
            SolveOutcome::Optimal(sol) => SideReport {
                label: label.to_string(),
                status: "optimal".into(),
                value: Some(sol.value),
                witness: Some(sol.witness.clone()),
                witness_verified: None,
            },
            SolveOutcome::Infeasible => SideReport {
                label: label.to_string(),
                status: "infeasible".into(),
                value: None,
                witness: None,
                witness_verified: None,
            },
            SolveOutcome::BudgetExceeded { budget } => SideReport {
                label: label.to_string(),
                status: format!("budget-exceeded({budget})"),
                value: None,
                witness: None,
                witness_verified: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordVerdict {
    Match,
    Mismatch,
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceRecord {
    pub instance_id: String,
    pub check: String,
    pub detail: String,
    pub r: usize,
    pub lhs: SideReport,
    pub rhs: SideReport,
    pub verdict: RecordVerdict,
    /// Whether a mismatch here fails the campaign (the Roman-odd equality and
    /// the ambiguous Roman-even r >= 4 case are recorded findings, not gates).
    pub gating: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl EquivalenceRecord {
    pub fn is_mismatch(&self) -> bool {
        self.verdict == RecordVerdict::Mismatch
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub skipped: usize,
    pub gating_mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub records: Vec<EquivalenceRecord>,
    pub summary: Summary,
    pub discrepancies: Vec<String>,
    /// Wall clock per check; the only nondeterministic part of a report.
    pub timing_ms: BTreeMap<String, u128>,
}

impl CampaignReport {
    pub fn has_gating_mismatch(&self) -> bool {
        self.summary.gating_mismatches > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Report content with timing stripped; byte-identical across reruns of
    /// the same config.
    pub fn deterministic_json(&self) -> String {
        let mut copy = self.clone();
        copy.timing_ms.clear();
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("instance {index} invalid: {message}")]
    BadInstance { index: usize, message: String },
}

/// Per-instance seed derivation, pinned: FNV-1a over the label, folded with
/// the master seed and index through one splitmix64 step.
pub fn derive_seed(master: u64, label: &str, index: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    let mut state = master ^ h ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    splitmix64(&mut state)
}

fn realize_instance(
    spec: &InstanceSpec,
    master_seed: u64,
    index: usize,
) -> Result<Graph, HarnessError> {
    let bad = |message: String| HarnessError::BadInstance { index, message };
    match spec {
        InstanceSpec::Family(family) => {
            let effective = match *family {
                GraphFamilySpec::Gnp { n, p, seed: _ } => GraphFamilySpec::Gnp {
                    n,
                    p,
                    seed: derive_seed(master_seed, &family.label(), index as u64),
                },
                other => other,
            };
            generate(&effective).map_err(|e| bad(e.to_string()))
        }
        InstanceSpec::Explicit { n, edges } => {
            Graph::new(*n, edges.iter().copied()).map_err(|e| bad(e.to_string()))
        }
    }
}

fn reverify(side: &mut SideReport, g: &Graph, kind: ProblemKind) {
    if let (Some(w), Some(v)) = (&side.witness, side.value) {
        let sol = Solution { witness: w.clone(), value: v };
        side.witness_verified = Some(matches!(verify(g, kind, &sol), Ok(verdict) if verdict.is_pass()));
    }
}

/// Three records: hop-vs-domination, step-vs-total-domination, and
/// hop-Roman-vs-Roman, comparing the definition-level oracle on `g` against
/// the exact engine on D_r(g).
pub fn check_transform_equivalence(
    instance_id: &str,
    g: &Graph,
    r: usize,
    caps: Caps,
) -> Vec<EquivalenceRecord> {
    let pairs: [(ProblemKind, ProblemKind, &str, usize); 3] = [
        (ProblemKind::RHop { r }, ProblemKind::Domination, "hop-vs-dom", caps.set_max_n),
        (ProblemKind::RStep { r }, ProblemKind::TotalDomination, "step-vs-totaldom", caps.set_max_n),
        (ProblemKind::RHopRoman { r }, ProblemKind::Roman, "hoproman-vs-roman", caps.roman_max_n),
    ];
    let transformed = exact_distance_graph(g, r);
    pairs
        .iter()
        .map(|&(kind, mapped, detail, cap)| {
            let mut record = EquivalenceRecord {
                instance_id: instance_id.to_string(),
                check: "transform".into(),
                detail: detail.into(),
                r,
                lhs: SideReport::value("pending", 0),
                rhs: SideReport::value("pending", 0),
                verdict: RecordVerdict::Match,
                gating: true,
                notes: Vec::new(),
            };
            if g.n() > cap {
                record.verdict = RecordVerdict::Skipped {
                    reason: format!("n={} exceeds oracle cap {cap}", g.n()),
                };
                return record;
            }
            let lhs_outcome = brute_force_reference(g, kind).expect("cap checked above");
            let rhs_outcome = solve_exact(&transformed, mapped, None);
            record.lhs = SideReport::from_outcome(&format!("brute:{}", kind.code()), &lhs_outcome);
            record.rhs =
                SideReport::from_outcome(&format!("exact:{}:D_r", mapped.code()), &rhs_outcome);
            let matched = match (&lhs_outcome, &rhs_outcome) {
                (SolveOutcome::Optimal(a), SolveOutcome::Optimal(b)) => a.value == b.value,
                (SolveOutcome::Infeasible, SolveOutcome::Infeasible) => true,
                _ => false,
            };
            if !matched {
                record.verdict = RecordVerdict::Mismatch;
                reverify(&mut record.lhs, g, kind);
                reverify(&mut record.rhs, &transformed, mapped);
            }
            record
        })
        .collect()
}

/// Builds the family's gadget, solves its claimed problem exactly, and
/// compares against the claim-shifted domination number of the source.
/// Also exercises the forward certificate and the pull-back.
pub fn check_gadget_equality(
    instance_id: &str,
    g1: &Graph,
    r: usize,
    family: GadgetFamily,
    target: ProblemKind,
    gating: bool,
    caps: Caps,
) -> EquivalenceRecord {
    let mut record = EquivalenceRecord {
        instance_id: instance_id.to_string(),
        check: match family {
            GadgetFamily::StepBipartite | GadgetFamily::StepChordal => match target {
                ProblemKind::RStep { .. } => "gadget-step".into(),
                _ => "gadget-hop".into(),
            },
            GadgetFamily::RomanEven => "gadget-roman-even".into(),
            GadgetFamily::RomanOdd { .. } => "gadget-roman-odd".into(),
        },
        detail: family.label().into(),
        r,
        lhs: SideReport::value("pending", 0),
        rhs: SideReport::value("pending", 0),
        verdict: RecordVerdict::Match,
        gating,
        notes: Vec::new(),
    };
    let skip = |reason: String, mut record: EquivalenceRecord| {
        record.verdict = RecordVerdict::Skipped { reason };
        record
    };
    if g1.n() > caps.set_max_n {
        return skip(format!("n={} exceeds oracle cap {}", g1.n(), caps.set_max_n), record);
    }
    if g1.has_isolated_vertex() || !g1.is_connected() {
        return skip("source must be connected and isolated-free".into(), record);
    }
    let built = match family {
        GadgetFamily::StepBipartite => build_step_gadget(g1, r, StepVariant::Bipartite),
        GadgetFamily::StepChordal => build_step_gadget(g1, r, StepVariant::Chordal),
        GadgetFamily::RomanEven => build_roman_gadget(g1, r, OddWiring::Literal),
        GadgetFamily::RomanOdd { wiring } => build_roman_gadget(g1, r, wiring),
    };
    let out = match built {
        Ok(out) => out,
        Err(e) => return skip(format!("builder refused: {e}"), record),
    };
    let gamma_outcome = brute_force_reference(g1, ProblemKind::Domination).expect("cap checked");
    let gamma_sol = gamma_outcome.solution().expect("domination always feasible").clone();
    let k = gamma_sol.value;
    let claim = out
        .claims
        .iter()
        .find(|c| c.kind == target)
        .copied()
        .expect("target kind is among the gadget's claims");
    let expected = claim.bound.apply(k, r);
    record.lhs = SideReport::value(&format!("gamma(g1)={k}, claim bound"), expected);

    let gadget_outcome = solve_exact(&out.graph, target, None);
    record.rhs = SideReport::from_outcome(&format!("exact:{}:gadget", target.code()), &gadget_outcome);
    let equality_holds = gadget_outcome.optimal_value() == Some(expected);
    if !equality_holds {
        record.verdict = RecordVerdict::Mismatch;
        reverify(&mut record.rhs, &out.graph, target);
        record.notes.push(format!(
            "gadget optimum {:?} != expected {expected}",
            gadget_outcome.optimal_value()
        ));
    }

    // Forward certificate from a minimum dominating set of g1.
    match forward_certificate(&out, gamma_sol.vertex_set().unwrap()) {
        Ok(cert) => {
            let valid = matches!(verify(&out.graph, target, &cert), Ok(v) if v.is_pass());
            let exact_value = cert.value == expected;
            if valid && exact_value {
                record.notes.push(format!("forward certificate valid at value {}", cert.value));
            } else {
                record.verdict = RecordVerdict::Mismatch;
                record.notes.push(format!(
                    "forward certificate failed: valid={valid}, value={} (expected {expected})",
                    cert.value
                ));
            }
        }
        Err(e) => {
            record.verdict = RecordVerdict::Mismatch;
            record.notes.push(format!("forward certificate error: {e}"));
        }
    }

    // Pull the gadget optimum back to a dominating set of g1.
    if let Some(opt) = gadget_outcome.solution() {
        match pull_back_normalize(&out, opt) {
            Ok(set) => {
                let pulled = Solution::from_set(set);
                let dominates =
                    matches!(verify(g1, ProblemKind::Domination, &pulled), Ok(v) if v.is_pass());
                // The claim-proof implication only covers solutions within the bound.
                let within_bound = opt.value <= expected;
                if within_bound && (!dominates || pulled.value > k) {
                    record.verdict = RecordVerdict::Mismatch;
                    record.notes.push(format!(
                        "pull-back gave size {} (gamma {k}), dominates={dominates}",
                        pulled.value
                    ));
                } else {
                    record.notes.push(format!(
                        "pull-back size {} dominates={dominates}",
                        pulled.value
                    ));
                }
            }
            Err(e) => {
                record.verdict = RecordVerdict::Mismatch;
                record.notes.push(format!("pull-back error: {e}"));
            }
        }
    }
    record
}

/// Expected vertex/edge counts per family, in closed form.
pub fn expected_counts(family: GadgetFamily, n: usize, m: usize, r: usize) -> (usize, usize) {
    match family {
        GadgetFamily::StepBipartite => (
            n + m + n * r + 2 * r + 2 * r * r,
            4 * m + n * r + n + (2 * r - 1) + 2 * r * r,
        ),
        GadgetFamily::StepChordal => (
            n + n * r + 2 * r + 2 * r * r,
            n * (n - 1) / 2 + 2 * m + n * r + n + (2 * r - 1) + 2 * r * r,
        ),
        GadgetFamily::RomanEven => {
            let h = r / 2;
            (
                2 * n + m * (3 * h - 2) + m * h + 1 + (r - 1) + 2 * r + 2 * m * (h - 1),
                m * (3 * h - 1) + m * (h + 1) + (r - 1) + 2 * r + 2 * m * h,
            )
        }
        GadgetFamily::RomanOdd { .. } => {
            let h = (r - 1) / 2;
            (
                2 * n + m * r + 3 * m + m * h + 1 + (r - 1) + 2 * r + 2 * m * h.saturating_sub(1) * usize::from(h >= 1),
                m * (r + 1) + 9 * m + m * (h + 1) + (r - 1) + 2 * r + 2 * m * h,
            )
        }
    }
}

/// Count formulas, class certificates, K5 blocks, and the distance facts that
/// make the step gadgets tick.
pub fn structural_audit(instance_id: &str, out: &GadgetOutput) -> EquivalenceRecord {
    let n = out.source.n();
    let m = out.source.m();
    let r = out.r;
    let (ev, ee) = expected_counts(out.family, n, m, r);
    let mut notes = Vec::new();
    let mut ok = true;
    if out.graph.n() != ev || out.graph.m() != ee {
        ok = false;
        notes.push(format!(
            "count formulas: expected ({ev} vertices, {ee} edges), got ({}, {})",
            out.graph.n(),
            out.graph.m()
        ));
    }
    match out.family {
        GadgetFamily::StepBipartite => match is_bipartite(&out.graph) {
            BipartiteCertificate::Coloring(_) => notes.push("2-coloring certificate".into()),
            BipartiteCertificate::OddCycle(c) => {
                ok = false;
                notes.push(format!("not bipartite: odd cycle of length {}", c.len()));
            }
        },
        GadgetFamily::StepChordal => match is_chordal(&out.graph) {
            ChordalCertificate::Peo(_) => notes.push("PEO certificate".into()),
            ChordalCertificate::Hole(h) => {
                ok = false;
                notes.push(format!("not chordal: hole of length {}", h.len()));
            }
        },
        GadgetFamily::RomanEven => {}
        GadgetFamily::RomanOdd { .. } => {
            let k5_count = out
                .roles
                .iter()
                .filter(|t| matches!(t, RoleTag::K5Aux { which: K5Which::A0, .. }))
                .count();
            if k5_count != m {
                ok = false;
                notes.push(format!("expected {m} K5 blocks, found {k5_count}"));
            }
            'edges: for &(i, j) in out.source.edges() {
                let h = (r - 1) / 2;
                let block = [
                    RoleTag::EdgePath { i, j, t: h },
                    RoleTag::EdgePath { i: j, j: i, t: h + 1 },
                    RoleTag::K5Aux { i, j, which: K5Which::A1IJ },
                    RoleTag::K5Aux { i, j, which: K5Which::A1JI },
                    RoleTag::K5Aux { i, j, which: K5Which::A0 },
                ];
                for (a, &x) in block.iter().enumerate() {
                    for &y in &block[a + 1..] {
                        let (Some(vx), Some(vy)) = (out.vertex_of(x), out.vertex_of(y)) else {
                            ok = false;
                            notes.push(format!("K5 block of edge ({},{}) incomplete", i + 1, j + 1));
                            break 'edges;
                        };
                        if !out.graph.has_edge(vx, vy) {
                            ok = false;
                            notes.push(format!("missing K5 edge {x} - {y}"));
                            break 'edges;
                        }
                    }
                }
            }
        }
    }
    // Distance facts for the step gadgets.
    if matches!(out.family, GadgetFamily::StepBipartite | GadgetFamily::StepChordal) {
        let oracle = all_pairs_distances(&out.graph);
        let src_oracle = all_pairs_distances(&out.source);
        for i in 0..n {
            let u = out.vertex_of(RoleTag::U(i)).unwrap();
            let tail_end = out.vertex_of(RoleTag::Tail { i, t: r }).unwrap();
            if oracle.dist(u, tail_end) != r {
                ok = false;
                notes.push(format!("dist(u_{}, u_{}^r) != r", i + 1, i + 1));
            }
            for j in 0..n {
                let other_end = out.vertex_of(RoleTag::Tail { i: j, t: r }).unwrap();
                let close = src_oracle.dist(i, j) <= 1;
                let d = oracle.dist(other_end, u);
                if close != (d == r) || (!close && d <= r) {
                    ok = false;
                    notes.push(format!(
                        "dist(u_{}^r, u_{}) = {d}, but v_{} in N[v_{}] is {close}",
                        j + 1, i + 1, i + 1, j + 1
                    ));
                }
            }
        }
        for t in 1..=2 * r {
            let p = out.vertex_of(RoleTag::P(t)).unwrap();
            let pr = out.vertex_of(RoleTag::PTail { t, s: r }).unwrap();
            if oracle.dist(p, pr) != r {
                ok = false;
                notes.push(format!("dist(p_{t}, p_{t}^r) != r"));
            }
        }
    }
    EquivalenceRecord {
        instance_id: instance_id.to_string(),
        check: "structural".into(),
        detail: out.family.label().into(),
        r,
        lhs: SideReport::value("expected counts", ev + ee),
        rhs: SideReport::value("actual counts", out.graph.n() + out.graph.m()),
        verdict: if ok { RecordVerdict::Match } else { RecordVerdict::Mismatch },
        gating: true,
        notes,
    }
}

/// One unit of campaign work, evaluated independently of the others.
#[derive(Clone)]
enum Job {
    Transform { instance: usize, r: usize },
    Gadget { instance: usize, r: usize, family: GadgetFamily, target: ProblemKind, gating: bool },
    Structural { instance: usize, r: usize, family: GadgetFamily },
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport, HarnessError> {
    let graphs: Vec<(String, Graph)> = cfg
        .instances
        .iter()
        .enumerate()
        .map(|(idx, spec)| {
            realize_instance(spec, cfg.master_seed, idx)
                .map(|g| (format!("{idx:03}-{}", spec.label()), g))
        })
        .collect::<Result<_, _>>()?;

    let mut jobs: Vec<Job> = Vec::new();
    for check in &cfg.checks {
        for instance in 0..graphs.len() {
            for &r in &cfg.r_values {
                match check {
                    CheckKind::Transform => jobs.push(Job::Transform { instance, r }),
                    CheckKind::GadgetStep | CheckKind::GadgetHop => {
                        let target = if *check == CheckKind::GadgetStep {
                            ProblemKind::RStep { r }
                        } else {
                            ProblemKind::RHop { r }
                        };
                        for family in [GadgetFamily::StepBipartite, GadgetFamily::StepChordal] {
                            jobs.push(Job::Gadget { instance, r, family, target, gating: true });
                        }
                    }
                    CheckKind::GadgetRomanEven => {
                        if r % 2 == 0 {
                            jobs.push(Job::Gadget {
                                instance,
                                r,
                                family: GadgetFamily::RomanEven,
                                target: ProblemKind::RHopRoman { r },
                                // The construction is unambiguous only at r = 2;
                                // r >= 4 results are recorded findings.
                                gating: r == 2,
                            });
                        }
                    }
                    CheckKind::GadgetRomanOdd => {
                        if r % 2 == 1 {
                            for wiring in [OddWiring::Literal, OddWiring::Swapped] {
                                jobs.push(Job::Gadget {
                                    instance,
                                    r,
                                    family: GadgetFamily::RomanOdd { wiring },
                                    target: ProblemKind::RHopRoman { r },
                                    gating: false,
                                });
                            }
                        }
                    }
                    CheckKind::Structural => {
                        for family in [GadgetFamily::StepBipartite, GadgetFamily::StepChordal] {
                            jobs.push(Job::Structural { instance, r, family });
                        }
                        let roman = if r % 2 == 0 {
                            GadgetFamily::RomanEven
                        } else {
                            GadgetFamily::RomanOdd { wiring: OddWiring::Literal }
                        };
                        jobs.push(Job::Structural { instance, r, family: roman });
                    }
                }
            }
        }
    }

    let caps = cfg.caps;
    let run_job = |job: &Job| -> Vec<EquivalenceRecord> {
        match *job {
            Job::Transform { instance, r } => {
                let (id, g) = &graphs[instance];
                check_transform_equivalence(id, g, r, caps)
            }
            Job::Gadget { instance, r, family, target, gating } => {
                let (id, g) = &graphs[instance];
                vec![check_gadget_equality(id, g, r, family, target, gating, caps)]
            }
            Job::Structural { instance, r, family } => {
                let (id, g) = &graphs[instance];
                let built = match family {
                    GadgetFamily::StepBipartite => build_step_gadget(g, r, StepVariant::Bipartite),
                    GadgetFamily::StepChordal => build_step_gadget(g, r, StepVariant::Chordal),
                    GadgetFamily::RomanEven | GadgetFamily::RomanOdd { .. } => {
                        build_roman_gadget(g, r, OddWiring::Literal)
                    }
                };
                let record = match built {
                    Ok(out) => structural_audit(id, &out),
                    Err(e) => EquivalenceRecord {
                        instance_id: id.clone(),
                        check: "structural".into(),
                        detail: family.label().into(),
                        r,
                        lhs: SideReport::value("expected counts", 0),
                        rhs: SideReport::value("actual counts", 0),
                        verdict: RecordVerdict::Skipped { reason: format!("builder refused: {e}") },
                        gating: true,
                        notes: Vec::new(),
                    },
                };
                vec![record]
            }
        }
    };

    let start = Instant::now();
    let nested: Vec<Vec<EquivalenceRecord>> = if cfg.parallelism > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism)
            .build()
            .expect("thread pool");
        pool.install(|| jobs.par_iter().map(run_job).collect())
    } else {
        jobs.iter().map(run_job).collect()
    };
    let elapsed = start.elapsed().as_millis();

    let records: Vec<EquivalenceRecord> = nested.into_iter().flatten().collect();
    let mut timing_ms = BTreeMap::new();
    timing_ms.insert("total".to_string(), elapsed);
    let summary = Summary {
        total: records.len(),
        matches: records.iter().filter(|r| r.verdict == RecordVerdict::Match).count(),
        mismatches: records.iter().filter(|r| r.is_mismatch()).count(),
        skipped: records
            .iter()
            .filter(|r| matches!(r.verdict, RecordVerdict::Skipped { .. }))
            .count(),
        gating_mismatches: records.iter().filter(|r| r.is_mismatch() && r.gating).count(),
    };
    let discrepancies = records
        .iter()
        .filter(|r| r.is_mismatch())
        .map(|r| format!("{}/{}/{}/r={}", r.instance_id, r.check, r.detail, r.r))
        .collect();
    Ok(CampaignReport { config: cfg.clone(), records, summary, discrepancies, timing_ms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamilySpec;

    #[test]
    fn transform_check_p4() {
        let g = generate(&GraphFamilySpec::Path { n: 4 }).unwrap();
        let records = check_transform_equivalence("p4", &g, 2, Caps::default());
        assert_eq!(records.len(), 3);
        for rec in &records {
            assert_eq!(rec.verdict, RecordVerdict::Match, "{rec:?}");
        }
        assert_eq!(records[0].lhs.value, Some(2));
        assert_eq!(records[1].lhs.value, Some(4));
    }

    #[test]
    fn transform_check_k3_infeasible_pair() {
        let g = generate(&GraphFamilySpec::Complete { n: 3 }).unwrap();
        let records = check_transform_equivalence("k3", &g, 2, Caps::default());
        let step = &records[1];
        assert_eq!(step.verdict, RecordVerdict::Match);
        assert_eq!(step.lhs.status, "infeasible");
        assert_eq!(step.rhs.status, "infeasible");
    }

    #[test]
    fn gadget_equality_k2_step_bipartite() {
        let g = generate(&GraphFamilySpec::Path { n: 2 }).unwrap();
        let rec = check_gadget_equality(
            "k2",
            &g,
            2,
            GadgetFamily::StepBipartite,
            ProblemKind::RStep { r: 2 },
            true,
            Caps::default(),
        );
        assert_eq!(rec.verdict, RecordVerdict::Match, "{rec:?}");
        assert_eq!(rec.rhs.value, Some(5));
    }

    #[test]
    fn gadget_equality_k2_roman_even() {
        let g = generate(&GraphFamilySpec::Path { n: 2 }).unwrap();
        let rec = check_gadget_equality(
            "k2",
            &g,
            2,
            GadgetFamily::RomanEven,
            ProblemKind::RHopRoman { r: 2 },
            true,
            Caps::default(),
        );
        assert_eq!(rec.verdict, RecordVerdict::Match, "{rec:?}");
        assert_eq!(rec.rhs.value, Some(6));
    }

    #[test]
    fn structural_negative_control_flags_mutation() {
        let g = generate(&GraphFamilySpec::Path { n: 2 }).unwrap();
        let mut out = build_step_gadget(&g, 2, StepVariant::Bipartite).unwrap();
        // Splice an extra edge inside a tail.
        let a = out.vertex_of(RoleTag::Tail { i: 0, t: 1 }).unwrap();
        let b = out.vertex_of(RoleTag::Tail { i: 0, t: 2 }).unwrap();
        let _ = (a, b);
        let u = out.vertex_of(RoleTag::U(0)).unwrap();
        let t2 = out.vertex_of(RoleTag::Tail { i: 0, t: 2 }).unwrap();
        let mut edges = out.graph.edges().to_vec();
        edges.push((u.min(t2), u.max(t2)));
        out.graph = Graph::new(out.graph.n(), edges).unwrap();
        let rec = structural_audit("mutated", &out);
        assert_eq!(rec.verdict, RecordVerdict::Mismatch);
    }

    #[test]
    fn empty_campaign_succeeds() {
        let cfg = CampaignConfig {
            master_seed: 1,
            checks: vec![CheckKind::Transform],
            instances: vec![],
            r_values: vec![2],
            caps: Caps::default(),
            parallelism: 1,
        };
        let report = run_campaign(&cfg).unwrap();
        assert_eq!(report.records.len(), 0);
        assert!(!report.has_gating_mismatch());
    }

    #[test]
    fn oracle_cap_skips() {
        let cfg = CampaignConfig {
            master_seed: 1,
            checks: vec![CheckKind::Transform],
            instances: vec![InstanceSpec::Family(GraphFamilySpec::Path { n: 10 })],
            r_values: vec![2],
            caps: Caps { set_max_n: 3, roman_max_n: 3 },
            parallelism: 1,
        };
        let report = run_campaign(&cfg).unwrap();
        assert_eq!(report.summary.skipped, 3);
    }

    #[test]
    fn campaign_deterministic_across_runs_and_parallelism() {
        let mut cfg = CampaignConfig {
            master_seed: 42,
            checks: vec![CheckKind::Transform, CheckKind::Structural],
            instances: vec![
                InstanceSpec::Family(GraphFamilySpec::Gnp { n: 6, p: 0.5, seed: 0 }),
                InstanceSpec::Family(GraphFamilySpec::Cycle { n: 5 }),
            ],
            r_values: vec![2, 3],
            caps: Caps::default(),
            parallelism: 1,
        };
        let a = run_campaign(&cfg).unwrap();
        cfg.parallelism = 4;
        let b = run_campaign(&cfg).unwrap();
        let mut a_json = a.deterministic_json();
        let mut b_json = b.deterministic_json();
        // The config echo includes the parallelism degree; strip it for this
        // comparison, which is about record content and order.
        a_json = a_json.replace("\"parallelism\": 1", "\"parallelism\": X");
        b_json = b_json.replace("\"parallelism\": 4", "\"parallelism\": X");
        assert_eq!(a_json, b_json);
    }
}
