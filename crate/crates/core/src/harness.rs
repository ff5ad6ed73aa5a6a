//! Theorem-by-theorem verification of the product closed forms against the
//! exhaustive oracles, over exhaustive or seeded random graph families.
//!
//! A theorem is treated as a hypothesis under test: every disagreement
//! becomes a [`DiscrepancyCertificate`] that embeds both factors as graph6
//! and can be re-checked independently with [`validate_certificate`].

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cuts::{self, CutCertificate, Reading};
use crate::error::{Error, Result};
use crate::extended::ExtendedNat;
use crate::flow::vertex_connectivity;
use crate::graph::Graph;
use crate::io::{parse_graph6, serialize_graph6};
use crate::lexprod::{self, K1Branch, SuperBranch};

/// Largest first factor allowed in exhaustive mode.
pub const EXHAUSTIVE_N1_MAX: usize = 6;
/// Largest second factor allowed in exhaustive mode.
pub const EXHAUSTIVE_N2_MAX: usize = 4;
/// Largest product size `n1_max · n2_max` allowed in random mode.
pub const RANDOM_PRODUCT_MAX: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// κ(G₁∘G₂) = κ(G₁)·m for connected non-complete G₁.
    Thm21,
    /// κ(Kₙ∘G₂) = (n−1)·m + κ(G₂).
    Thm21Complete,
    /// k₁(G₁∘G₂) = κ(G₁∘G₂) when k₁(G₁) = κ(G₁).
    Thm22,
    /// k₁(G₁∘G₂) = min(k₁(G₁)·m, κ(G₁∘G₂) + c·|V₀(G₂)|) when κ < k₁ < ∞.
    Thm23,
    /// k₁(G₁∘G₂) = κ(G₁∘G₂) + c·|V₀(G₂)| when k₁(G₁) = ∞.
    Cor24,
    /// Not super connected when G₂ is connected and m ≥ 2.
    SuperPart1,
    /// Not super connected when G₂ is disconnected without isolated vertices.
    SuperPart2,
    /// Super connected when G₂ has isolated vertices, is disconnected, and G₁
    /// is super connected.
    SuperPart3,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Thm21,
        TheoremId::Thm21Complete,
        TheoremId::Thm22,
        TheoremId::Thm23,
        TheoremId::Cor24,
        TheoremId::SuperPart1,
        TheoremId::SuperPart2,
        TheoremId::SuperPart3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Thm21 => "thm21",
            TheoremId::Thm21Complete => "thm21_complete",
            TheoremId::Thm22 => "thm22",
            TheoremId::Thm23 => "thm23",
            TheoremId::Cor24 => "cor24",
            TheoremId::SuperPart1 => "super_part1",
            TheoremId::SuperPart2 => "super_part2",
            TheoremId::SuperPart3 => "super_part3",
        }
    }

    /// Whether the formula depends on the X-quantifier reading.
    pub fn uses_reading(self) -> bool {
        matches!(self, TheoremId::Thm23 | TheoremId::Cor24)
    }

    fn kind(self) -> Kind {
        match self {
            TheoremId::Thm21 | TheoremId::Thm21Complete => Kind::Kappa,
            TheoremId::Thm22 | TheoremId::Thm23 | TheoremId::Cor24 => Kind::K1,
            _ => Kind::Super,
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown theorem id {s:?}")))
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Kappa,
    K1,
    Super,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Random,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "random" => Ok(Mode::Random),
            other => Err(Error::Usage(format!("unknown mode {other:?}"))),
        }
    }
}

/// The set of `(G₁, G₂)` pairs a verification run covers.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFamily {
    pub n1_max: usize,
    pub n2_max: usize,
    pub mode: Mode,
    /// Number of random pairs (random mode).
    pub sample_count: usize,
    pub seed: u64,
    pub edge_probability: f64,
}

impl InstanceFamily {
    /// Every labeled G₁ on `1..=n1_max` vertices against every labeled G₂ on
    /// `1..=n2_max` vertices.
    pub fn exhaustive(n1_max: usize, n2_max: usize) -> Self {
        InstanceFamily {
            n1_max,
            n2_max,
            mode: Mode::Exhaustive,
            sample_count: 0,
            seed: 0,
            edge_probability: 0.5,
        }
    }

    /// `samples` pairs; each factor size is uniform in `1..=max` and each
    /// edge is present with probability `p`.
    pub fn random(n1_max: usize, n2_max: usize, samples: usize, seed: u64, p: f64) -> Self {
        InstanceFamily {
            n1_max,
            n2_max,
            mode: Mode::Random,
            sample_count: samples,
            seed,
            edge_probability: p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n1_max == 0 || self.n2_max == 0 {
            return Err(Error::Usage("n1-max and n2-max must be positive".into()));
        }
        match self.mode {
            Mode::Exhaustive => {
                if self.n1_max > EXHAUSTIVE_N1_MAX || self.n2_max > EXHAUSTIVE_N2_MAX {
                    return Err(Error::Usage(format!(
                        "exhaustive mode allows n1-max <= {EXHAUSTIVE_N1_MAX} and n2-max <= {EXHAUSTIVE_N2_MAX}"
                    )));
                }
            }
            Mode::Random => {
                if self.n1_max * self.n2_max > RANDOM_PRODUCT_MAX {
                    return Err(Error::Usage(format!(
                        "random mode allows n1-max * n2-max <= {RANDOM_PRODUCT_MAX}"
                    )));
                }
                if self.sample_count == 0 {
                    return Err(Error::Usage("random mode needs at least one sample".into()));
                }
                check_probability(self.edge_probability).map_err(|e| Error::Usage(e.to_string()))?;
            }
        }
        Ok(())
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!("edge probability {p} is outside [0, 1]")))
    }
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All labeled graphs on `n` vertices. Bit `k` of the counter is the `k`-th
/// pair `(u, v)`, `u < v`, in lexicographic order.
pub struct LabeledGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next == self.end {
            return None;
        }
        let bits = self.next;
        self.next += 1;
        let n = self.n;
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .map(|(_, e)| e);
        Some(Graph::from_edges(n, edges).expect("pairs are in range"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabeledGraphs {}

pub fn enumerate_labeled_graphs(n: usize) -> Result<LabeledGraphs> {
    if !(1..=EXHAUSTIVE_N1_MAX).contains(&n) {
        return Err(Error::domain(format!(
            "labeled enumeration supports 1 <= n <= {EXHAUSTIVE_N1_MAX}, got {n}"
        )));
    }
    Ok(LabeledGraphs {
        n,
        next: 0,
        end: 1 << pair_count(n),
    })
}

/// G(n, p) drawn from ChaCha8 seeded with `seed`; pairs are visited in
/// lexicographic order, one Bernoulli draw each.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::domain("random graphs need at least one vertex"));
    }
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// A theorem-side or oracle-side value: a count for κ/k₁ claims, a flag for
/// super-connectivity claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClaimValue {
    Bool(bool),
    Nat(ExtendedNat),
}

impl fmt::Display for ClaimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimValue::Bool(b) => write!(f, "{b}"),
            ClaimValue::Nat(v) => write!(f, "{v}"),
        }
    }
}

/// Proof that a closed form and the oracle disagree on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyCertificate {
    pub theorem_id: TheoremId,
    pub g1: String,
    pub g2: String,
    pub formula_value: ClaimValue,
    pub oracle_value: ClaimValue,
    /// A cut of the product supporting the oracle value: a minimum cut for
    /// κ, a minimum k₁-cut for finite k₁ (none for ∞), a minimum cut that
    /// strands nothing (or any minimum cut, if all strand) for super claims.
    pub witness: Option<CutCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reading: Option<Reading>,
}

/// Counts of k₁ answers from the library fast path whose witness was
/// re-verified on the product.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessAudit {
    pub results: usize,
    pub verified: usize,
    pub oracle_fallbacks: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub reading: Reading,
    pub instances_checked: usize,
    pub skipped: usize,
    pub agreements: usize,
    pub discrepancies: Vec<DiscrepancyCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_audit: Option<WitnessAudit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl VerificationReport {
    pub fn agreement_rate(&self) -> f64 {
        if self.instances_checked == 0 {
            1.0
        } else {
            self.agreements as f64 / self.instances_checked as f64
        }
    }

    /// The same report without the wall-clock field, so that repeated runs
    /// serialize identically.
    pub fn without_timing(mut self) -> Self {
        self.wall_time_ms = None;
        self
    }
}

/// First-factor facts the hypotheses are stated in.
#[derive(Debug, Clone, Default)]
struct Facts {
    n: usize,
    connected: bool,
    complete: bool,
    kappa: usize,
    k1: Option<ExtendedNat>,
    super_connected: Option<bool>,
}

impl Facts {
    fn of(g: &Graph, need_k1: bool, need_super: bool) -> Result<Self> {
        let connected = g.is_connected()?;
        let complete = g.is_complete()?;
        let interesting = connected && !complete;
        Ok(Facts {
            n: g.n(),
            connected,
            complete,
            kappa: vertex_connectivity(g)?,
            k1: if need_k1 && interesting {
                Some(cuts::k1_connectivity(g)?)
            } else {
                None
            },
            super_connected: if need_super && interesting {
                Some(cuts::is_super_connected(g)?.super_connected)
            } else {
                None
            },
        })
    }

    fn for_theorem(g: &Graph, t: TheoremId) -> Result<Self> {
        Facts::of(g, t.kind() == Kind::K1, t == TheoremId::SuperPart3)
    }
}

fn hypotheses_hold(t: TheoremId, f1: &Facts, g2: &Graph) -> Result<bool> {
    let base = f1.connected && !f1.complete;
    Ok(match t {
        TheoremId::Thm21 => base,
        TheoremId::Thm21Complete => f1.complete && f1.n >= 2,
        TheoremId::Thm22 => base && f1.k1 == Some(ExtendedNat::Finite(f1.kappa)),
        TheoremId::Thm23 => {
            base && matches!(f1.k1, Some(ExtendedNat::Finite(k)) if k > f1.kappa)
        }
        TheoremId::Cor24 => base && f1.k1 == Some(ExtendedNat::Infinity),
        TheoremId::SuperPart1 => base && g2.n() >= 2 && g2.is_connected()?,
        TheoremId::SuperPart2 => {
            base && !g2.is_connected()? && g2.isolated_vertices().is_empty()
        }
        TheoremId::SuperPart3 => {
            base && f1.super_connected == Some(true)
                && !g2.is_connected()?
                && !g2.isolated_vertices().is_empty()
        }
    })
}

fn formula_value(t: TheoremId, g1: &Graph, g2: &Graph, reading: Reading) -> Result<ClaimValue> {
    match t.kind() {
        Kind::Kappa => Ok(ClaimValue::Nat(lexprod::lex_connectivity(g1, g2)?.into())),
        Kind::K1 => {
            let f = lexprod::k1_formula(g1, g2, reading)?
                .ok_or_else(|| Error::domain("k1 formula is undefined for complete G1"))?;
            let expected = match t {
                TheoremId::Thm22 => K1Branch::Thm22,
                TheoremId::Thm23 => K1Branch::Thm23,
                _ => K1Branch::Cor24,
            };
            debug_assert_eq!(f.branch, expected);
            Ok(ClaimValue::Nat(f.value))
        }
        Kind::Super => {
            let (value, branch) = lexprod::lex_super_connected(g1, g2)?;
            debug_assert_eq!(
                branch,
                match t {
                    TheoremId::SuperPart1 => SuperBranch::Part1,
                    TheoremId::SuperPart2 => SuperBranch::Part2,
                    _ => SuperBranch::Part3,
                }
            );
            Ok(ClaimValue::Bool(value))
        }
    }
}

/// Oracle value on the product plus a lazily built witness.
struct OracleSide {
    value: ClaimValue,
    witness: Box<dyn FnOnce() -> Result<Option<CutCertificate>> + Send>,
}

fn oracle_side(kind: Kind, product: Graph) -> Result<OracleSide> {
    match kind {
        Kind::Kappa => {
            let cut = cuts::min_vertex_cut_oracle(&product)?;
            let kappa = cut.len();
            Ok(OracleSide {
                value: ClaimValue::Nat(kappa.into()),
                witness: Box::new(move || {
                    CutCertificate::evaluate_with_kappa(&product, &cut, kappa).map(Some)
                }),
            })
        }
        Kind::K1 => {
            let cut = cuts::min_k1_cut(&product)?;
            let value = cut
                .as_ref()
                .map_or(ExtendedNat::Infinity, |c| ExtendedNat::Finite(c.len()));
            Ok(OracleSide {
                value: ClaimValue::Nat(value),
                witness: Box::new(move || match cut {
                    Some(c) => CutCertificate::evaluate(&product, &c).map(Some),
                    None => Ok(None),
                }),
            })
        }
        Kind::Super => {
            let certs = cuts::enumerate_min_vertex_cuts(&product)?;
            let stranding_none = certs
                .iter()
                .position(|c| c.isolated_after.is_empty() && !c.reduces_to_trivial);
            let value = stranding_none.is_none();
            let pick = stranding_none.unwrap_or(0);
            Ok(OracleSide {
                value: ClaimValue::Bool(value),
                witness: Box::new(move || Ok(certs.into_iter().nth(pick))),
            })
        }
    }
}

enum Outcome {
    Skipped,
    Agree(Option<bool>),
    Disagree(Box<DiscrepancyCertificate>, Option<bool>),
}

fn audit_k1_witness(g1: &Graph, g2: &Graph, product: &Graph, reading: Reading) -> Result<(bool, bool)> {
    let r = lexprod::lex_k1_connectivity_with(g1, g2, reading)?;
    let ok = match (r.value, &r.witness) {
        (ExtendedNat::Finite(v), Some(w)) => w.len() == v && cuts::is_k1_vertex_cut(product, w)?,
        (ExtendedNat::Infinity, None) => true,
        _ => false,
    };
    Ok((ok, r.branch == K1Branch::OracleFallback))
}

fn check_instance(
    t: TheoremId,
    g1: &Graph,
    f1: &Facts,
    g2: &Graph,
    reading: Reading,
) -> Result<(Outcome, Option<bool>)> {
    if !hypotheses_hold(t, f1, g2)? {
        return Ok((Outcome::Skipped, None));
    }
    let formula = formula_value(t, g1, g2, reading)?;
    let product = lexprod::lex_product(g1, g2)?;

    let mut fallback = None;
    let audit = if t.kind() == Kind::K1 {
        let (ok, fb) = audit_k1_witness(g1, g2, &product, reading)?;
        fallback = Some(fb);
        Some(ok)
    } else {
        None
    };

    let oracle = oracle_side(t.kind(), product)?;
    let outcome = if formula == oracle.value {
        Outcome::Agree(audit)
    } else {
        let cert = DiscrepancyCertificate {
            theorem_id: t,
            g1: serialize_graph6(g1),
            g2: serialize_graph6(g2),
            formula_value: formula,
            oracle_value: oracle.value,
            witness: (oracle.witness)()?,
            reading: t.uses_reading().then_some(reading),
        };
        Outcome::Disagree(Box::new(cert), audit)
    };
    Ok((outcome, fallback))
}

/// Runs one theorem over a family. Pairs are visited G₁-major in
/// enumeration order; the report does not depend on thread scheduling.
pub fn verify_theorem(
    theorem: TheoremId,
    family: &InstanceFamily,
    reading: Reading,
) -> Result<VerificationReport> {
    family.validate()?;
    let started = Instant::now();

    let (firsts, seconds, pairs): (Vec<Graph>, Vec<Graph>, Vec<(usize, usize)>) = match family.mode
    {
        Mode::Exhaustive => {
            let mut firsts = Vec::new();
            for n in 1..=family.n1_max {
                firsts.extend(enumerate_labeled_graphs(n)?);
            }
            let mut seconds = Vec::new();
            for n in 1..=family.n2_max {
                seconds.extend(enumerate_labeled_graphs(n)?);
            }
            let pairs = (0..firsts.len())
                .flat_map(|i| (0..seconds.len()).map(move |j| (i, j)))
                .collect();
            (firsts, seconds, pairs)
        }
        Mode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(family.seed);
            let p = family.edge_probability;
            let mut firsts = Vec::with_capacity(family.sample_count);
            let mut seconds = Vec::with_capacity(family.sample_count);
            for _ in 0..family.sample_count {
                let n1 = rng.gen_range(1..=family.n1_max);
                let n2 = rng.gen_range(1..=family.n2_max);
                firsts.push(random_graph(n1, p, rng.gen())?);
                seconds.push(random_graph(n2, p, rng.gen())?);
            }
            let pairs = (0..family.sample_count).map(|i| (i, i)).collect();
            (firsts, seconds, pairs)
        }
    };

    let facts: Vec<Facts> = firsts
        .par_iter()
        .map(|g| Facts::for_theorem(g, theorem))
        .collect::<Result<_>>()?;

    let outcomes: Vec<(Outcome, Option<bool>)> = pairs
        .par_iter()
        .map(|&(i, j)| check_instance(theorem, &firsts[i], &facts[i], &seconds[j], reading))
        .collect::<Result<_>>()?;

    let mut report = VerificationReport {
        theorem_id: theorem,
        reading,
        instances_checked: 0,
        skipped: 0,
        agreements: 0,
        discrepancies: Vec::new(),
        witness_audit: (theorem.kind() == Kind::K1).then(WitnessAudit::default),
        seed: (family.mode == Mode::Random).then_some(family.seed),
        wall_time_ms: None,
    };
    for (outcome, fallback) in outcomes {
        let audit = match outcome {
            Outcome::Skipped => {
                report.skipped += 1;
                continue;
            }
            Outcome::Agree(audit) => {
                report.agreements += 1;
                audit
            }
            Outcome::Disagree(cert, audit) => {
                report.discrepancies.push(*cert);
                audit
            }
        };
        report.instances_checked += 1;
        if let (Some(tally), Some(ok)) = (report.witness_audit.as_mut(), audit) {
            tally.results += 1;
            tally.verified += ok as usize;
            tally.oracle_fallbacks += fallback.unwrap_or(false) as usize;
        }
    }
    report.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    Ok(report)
}

/// Re-derives everything a certificate claims from its graph6 strings.
pub fn validate_certificate(cert: &DiscrepancyCertificate) -> bool {
    recheck(cert).unwrap_or(false)
}

fn recheck(cert: &DiscrepancyCertificate) -> Result<bool> {
    let t = cert.theorem_id;
    if cert.formula_value == cert.oracle_value {
        return Ok(false);
    }
    let reading = match (t.uses_reading(), cert.reading) {
        (true, Some(r)) => r,
        (true, None) => return Ok(false),
        (false, _) => Reading::default(),
    };
    let g1 = parse_graph6(&cert.g1)?;
    let g2 = parse_graph6(&cert.g2)?;
    if g1.n() == 0 || g2.n() == 0 {
        return Ok(false);
    }
    let f1 = Facts::of(&g1, true, true)?;
    if !hypotheses_hold(t, &f1, &g2)? {
        return Ok(false);
    }
    if formula_value(t, &g1, &g2, reading)? != cert.formula_value {
        return Ok(false);
    }

    let product = lexprod::lex_product(&g1, &g2)?;
    let kappa = cuts::vertex_connectivity_oracle(&product)?;
    let oracle = match t.kind() {
        Kind::Kappa => ClaimValue::Nat(kappa.into()),
        Kind::K1 => ClaimValue::Nat(cuts::k1_connectivity(&product)?),
        Kind::Super => ClaimValue::Bool(cuts::is_super_connected(&product)?.super_connected),
    };
    if oracle != cert.oracle_value {
        return Ok(false);
    }

    let witness = match &cert.witness {
        Some(w) => {
            let fresh = CutCertificate::evaluate_with_kappa(&product, &w.cut, kappa)?;
            if &fresh != w {
                return Ok(false);
            }
            Some(fresh)
        }
        None => None,
    };
    Ok(match (t.kind(), oracle, witness) {
        (Kind::Kappa, ClaimValue::Nat(v), Some(w)) => {
            w.is_minimum && w.is_vertex_cut() && v == ExtendedNat::Finite(w.cut.len())
        }
        (Kind::K1, ClaimValue::Nat(ExtendedNat::Infinity), None) => true,
        (Kind::K1, ClaimValue::Nat(v), Some(w)) => {
            w.is_k1_cut() && v == ExtendedNat::Finite(w.cut.len())
        }
        (Kind::Super, ClaimValue::Bool(false), Some(w)) => {
            w.is_minimum && w.isolated_after.is_empty() && !w.reduces_to_trivial
        }
        (Kind::Super, ClaimValue::Bool(true), Some(w)) => {
            w.is_minimum && (!w.isolated_after.is_empty() || w.reduces_to_trivial)
        }
        _ => false,
    })
}
