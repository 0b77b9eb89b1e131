//! Instance generation and the cross-validation sweep.
//!
//! The sweep evaluates both formula variants, the constructor, the fast paths
//! and the exact oracle on every enumerated caterpillar, and records where
//! they disagree. Disagreements between independent computations are
//! findings; a broken internal contract (a constructed broadcast that is not
//! independent, a constructor cost that differs from the formula it
//! implements) is an invariant violation.

use std::fmt::Write as _;
use std::hash::Hasher;
use std::io::{self, Write};

use fnv::FnvHasher;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::broadcast::{
    canonical_broadcast, is_independent, is_valid_broadcast, saturate_stems, spine_weights,
    Broadcast,
};
use crate::construct::construct_witness;
use crate::error::{Error, Result};
use crate::formula::{beta_b, beta_b_fastpath, FastPathRule, Instance, WitnessSource};
use crate::oracle::{exact_beta_b, OracleOptions};
use crate::pattern::{check_overlaps, FormulaOccurrences, Variant};
use crate::tree::{has_adjacent_trunks, Caterpillar, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepParams {
    pub k_min: usize,
    pub k_max: usize,
    /// Largest `λ_i` allowed at any spine vertex.
    pub lambda_cap: u32,
    /// Largest `Σ λ_i`.
    pub total_cap: u32,
    pub no_adjacent_trunks: bool,
    /// Emit only the lexicographically smaller of a sequence and its reverse.
    pub canonicalize: bool,
    pub oracle_budget: usize,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            k_min: 1,
            k_max: 6,
            lambda_cap: 3,
            total_cap: 9,
            no_adjacent_trunks: true,
            canonicalize: true,
            oracle_budget: OracleOptions::default().budget,
        }
    }
}

impl SweepParams {
    pub fn validate(&self) -> Result<()> {
        if self.k_min == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if self.k_min > self.k_max {
            return Err(Error::InvalidParams(format!(
                "empty k range {}..={}",
                self.k_min, self.k_max
            )));
        }
        if self.lambda_cap == 0 || self.total_cap == 0 {
            return Err(Error::InvalidParams("leaf caps must be positive".into()));
        }
        if self.oracle_budget == 0 {
            return Err(Error::InvalidParams(
                "oracle budget must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Every λ-sequence within the parameters, by increasing `k` and then
/// lexicographically. Both end values are at least 1.
pub fn enumerate_caterpillars(p: &SweepParams) -> Result<Vec<Caterpillar>> {
    p.validate()?;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for k in p.k_min..=p.k_max {
        extend(p, k, &mut cur, 0, &mut out);
    }
    Ok(out)
}

fn extend(p: &SweepParams, k: usize, cur: &mut Vec<u32>, total: u32, out: &mut Vec<Caterpillar>) {
    let i = cur.len();
    if i == k + 1 {
        if p.canonicalize && cur.iter().rev().lt(cur.iter()) {
            return;
        }
        out.push(Caterpillar::new(cur.clone()).expect("ends are positive"));
        return;
    }
    let lo = if i == 0 || i == k { 1 } else { 0 };
    for l in lo..=p.lambda_cap {
        if total + l > p.total_cap {
            break;
        }
        if p.no_adjacent_trunks && l == 0 && cur.last() == Some(&0) {
            continue;
        }
        cur.push(l);
        extend(p, k, cur, total + l, out);
        cur.pop();
    }
}

/// Uniform labelled tree on `n` vertices, decoded from a seeded random
/// Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree> {
    if n < 2 {
        return Err(Error::InvalidTree(format!(
            "random trees need n ≥ 2, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Tree::new(n, &prufer_decode(n, &code))
}

fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in code {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in code {
        let leaf = leaves
            .pop_first()
            .expect("a Prüfer code always leaves a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Stable 64-bit digest of a broadcast's value vector.
pub fn digest(b: &Broadcast) -> String {
    let mut h = FnvHasher::default();
    for &x in b.values() {
        h.write_u32(x);
    }
    format!("{:016x}", h.finish())
}

/// Non-zero values of a broadcast keyed by vertex role, in vertex order.
pub fn named_values(ct: &Caterpillar, b: &Broadcast) -> serde_json::Map<String, serde_json::Value> {
    b.values()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(v, &x)| (ct.role(v).to_string(), x.into()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FastPath {
    pub value: u32,
    pub rule: FastPathRule,
}

/// `None` means the comparison could not be made (unsupported class or
/// oracle over budget).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub effective_vs_oracle: Option<bool>,
    pub as_written_vs_oracle: Option<bool>,
    pub fast_path_vs_oracle: Option<bool>,
    pub constructor_vs_formula: Option<bool>,
    pub constructor_le_oracle: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reproduction {
    pub instance: String,
    pub oracle_witness: Option<serde_json::Map<String, serde_json::Value>>,
    pub constructor_witness: Option<serde_json::Map<String, serde_json::Value>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub index: usize,
    pub lambdas: Vec<u32>,
    pub vertices: usize,
    /// `2(diam − 1)`, the cost of the canonical broadcast.
    pub canonical_cost: u32,
    pub unsupported: Option<&'static str>,
    pub beta_star_as_written: Option<u32>,
    pub beta_star_effective: Option<u32>,
    pub beta_b_as_written: Option<u32>,
    pub beta_b_effective: Option<u32>,
    pub source: Option<WitnessSource>,
    pub constructor_cost: Option<u64>,
    pub constructor_independent: Option<bool>,
    pub oracle: Option<u64>,
    pub oracle_error: Option<String>,
    pub fast_path: Option<FastPath>,
    pub agreement: Agreement,
    pub reversal_invariant: bool,
    pub overlaps_clean: Option<bool>,
    pub constructor_digest: Option<String>,
    pub oracle_digest: Option<String>,
    /// Disagreements between independent computations.
    pub findings: Vec<&'static str>,
    /// Broken internal contracts.
    pub violations: Vec<&'static str>,
    pub reproduction: Option<Reproduction>,
}

struct Formulas {
    star_aw: u32,
    star_eff: u32,
    b_aw: u32,
    b_eff: u32,
    source: WitnessSource,
}

fn formulas(ct: &Caterpillar) -> Result<Formulas> {
    let aw = beta_b(ct, Variant::AsWritten)?;
    let eff = beta_b(ct, Variant::Effective)?;
    Ok(Formulas {
        star_aw: aw.breakdown.beta_star(),
        star_eff: eff.breakdown.beta_star(),
        b_aw: aw.value,
        b_eff: eff.value,
        source: eff.source,
    })
}

/// Evaluates every column for one instance.
pub fn evaluate(index: usize, ct: &Caterpillar, options: &OracleOptions) -> SweepRecord {
    let m = ct.metrics();
    let canonical_cost = 2 * (ct.diameter() - 1);
    let mut rec = SweepRecord {
        index,
        lambdas: ct.lambdas().to_vec(),
        vertices: ct.vertex_count(),
        canonical_cost,
        unsupported: None,
        beta_star_as_written: None,
        beta_star_effective: None,
        beta_b_as_written: None,
        beta_b_effective: None,
        source: None,
        constructor_cost: None,
        constructor_independent: None,
        oracle: None,
        oracle_error: None,
        fast_path: beta_b_fastpath(Instance::Caterpillar(ct))
            .map(|(value, rule)| FastPath { value, rule }),
        agreement: Agreement::default(),
        reversal_invariant: true,
        overlaps_clean: None,
        constructor_digest: None,
        oracle_digest: None,
        findings: Vec::new(),
        violations: Vec::new(),
        reproduction: None,
    };

    let mut witness = None;
    match formulas(ct) {
        Ok(f) => {
            rec.beta_star_as_written = Some(f.star_aw);
            rec.beta_star_effective = Some(f.star_eff);
            rec.beta_b_as_written = Some(f.b_aw);
            rec.beta_b_effective = Some(f.b_eff);
            rec.source = Some(f.source);
            rec.overlaps_clean = Some(check_overlaps(ct, &FormulaOccurrences::find(ct)).is_clean());

            let w = construct_witness(ct, Variant::Effective).expect("supported instance");
            let ok = is_valid_broadcast(&m, &w.broadcast).unwrap_or(false)
                && is_independent(&m, &w.broadcast).unwrap_or(false);
            rec.constructor_cost = Some(w.cost);
            rec.constructor_independent = Some(ok);
            rec.constructor_digest = Some(digest(&w.broadcast));
            rec.agreement.constructor_vs_formula = Some(w.cost == f.b_eff as u64);

            let rev = ct.reversed();
            if let (Ok(r), Ok(rw)) = (formulas(&rev), construct_witness(&rev, Variant::Effective)) {
                // The effective β* reads a whole alternating spine from the
                // left only, so it may change under reversal there; β_b may not.
                let whole = FormulaOccurrences::find(ct).whole;
                rec.reversal_invariant = r.star_aw == f.star_aw
                    && (whole || r.star_eff == f.star_eff)
                    && r.b_aw == f.b_aw
                    && r.b_eff == f.b_eff
                    && rw.cost == w.cost;
            } else {
                rec.reversal_invariant = false;
            }
            witness = Some(w.broadcast);
        }
        Err(Error::Unsupported(u)) => rec.unsupported = Some(u.code()),
        Err(e) => unreachable!("caterpillar already validated: {e}"),
    }

    let mut oracle_witness = None;
    match exact_beta_b(&m, options) {
        Ok(r) => {
            rec.oracle = Some(r.optimum);
            rec.oracle_digest = Some(digest(&r.witness));
            let a = &mut rec.agreement;
            a.effective_vs_oracle = rec.beta_b_effective.map(|x| x as u64 == r.optimum);
            a.as_written_vs_oracle = rec.beta_b_as_written.map(|x| x as u64 == r.optimum);
            a.fast_path_vs_oracle = rec.fast_path.map(|fp| fp.value as u64 == r.optimum);
            a.constructor_le_oracle = rec.constructor_cost.map(|c| c <= r.optimum);
            if r.optimum < canonical_cost as u64 {
                rec.violations.push("oracle_below_canonical");
            }
            oracle_witness = Some(r.witness);
        }
        Err(e) => rec.oracle_error = Some(e.to_string()),
    }

    let a = rec.agreement;
    if a.effective_vs_oracle == Some(false) {
        rec.findings.push("effective_vs_oracle");
    }
    if a.as_written_vs_oracle == Some(false) {
        rec.findings.push("as_written_vs_oracle");
    }
    if a.fast_path_vs_oracle == Some(false) {
        rec.findings.push("fast_path_vs_oracle");
    }
    if rec.overlaps_clean == Some(false) {
        rec.findings.push("pattern_overlap");
    }
    if rec.constructor_independent == Some(false) {
        rec.violations.push("constructor_not_independent");
    }
    if a.constructor_vs_formula == Some(false) {
        rec.violations.push("constructor_cost_mismatch");
    }
    if a.constructor_le_oracle == Some(false) {
        rec.violations.push("constructor_exceeds_oracle");
    }
    if !rec.reversal_invariant {
        rec.violations.push("reversal_variance");
    }
    if !rec.findings.is_empty() || !rec.violations.is_empty() {
        rec.reproduction = Some(Reproduction {
            instance: ct.to_string(),
            oracle_witness: oracle_witness.as_ref().map(|b| named_values(ct, b)),
            constructor_witness: witness.as_ref().map(|b| named_values(ct, b)),
        });
    }
    rec
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub agree: usize,
    pub disagree: usize,
    pub skipped: usize,
}

impl PairCount {
    fn add(&mut self, flag: Option<bool>) {
        match flag {
            Some(true) => self.agree += 1,
            Some(false) => self.disagree += 1,
            None => self.skipped += 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Clean,
    Findings,
    InvariantViolation,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub unsupported: usize,
    pub over_budget: usize,
    pub effective_vs_oracle: PairCount,
    pub as_written_vs_oracle: PairCount,
    pub fast_path_vs_oracle: PairCount,
    pub constructor_vs_formula: PairCount,
    pub constructor_le_oracle: PairCount,
    pub records_with_findings: usize,
    pub records_with_violations: usize,
}

impl SweepSummary {
    pub fn from_records(records: &[SweepRecord]) -> SweepSummary {
        let mut s = SweepSummary {
            instances: records.len(),
            ..Default::default()
        };
        for r in records {
            s.unsupported += r.unsupported.is_some() as usize;
            s.over_budget += r.oracle_error.is_some() as usize;
            s.effective_vs_oracle.add(r.agreement.effective_vs_oracle);
            s.as_written_vs_oracle.add(r.agreement.as_written_vs_oracle);
            s.fast_path_vs_oracle.add(r.agreement.fast_path_vs_oracle);
            s.constructor_vs_formula
                .add(r.agreement.constructor_vs_formula);
            s.constructor_le_oracle
                .add(r.agreement.constructor_le_oracle);
            s.records_with_findings += !r.findings.is_empty() as usize;
            s.records_with_violations += !r.violations.is_empty() as usize;
        }
        s
    }

    pub fn outcome(&self) -> Outcome {
        if self.records_with_violations > 0 {
            Outcome::InvariantViolation
        } else if self.records_with_findings > 0 {
            Outcome::Findings
        } else {
            Outcome::Clean
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instances             {}", self.instances);
        let _ = writeln!(out, "unsupported           {}", self.unsupported);
        let _ = writeln!(out, "oracle over budget    {}", self.over_budget);
        let pairs = [
            ("effective vs oracle", self.effective_vs_oracle),
            ("as-written vs oracle", self.as_written_vs_oracle),
            ("fast path vs oracle", self.fast_path_vs_oracle),
            ("constructor = formula", self.constructor_vs_formula),
            ("constructor <= oracle", self.constructor_le_oracle),
        ];
        for (name, c) in pairs {
            let _ = writeln!(
                out,
                "{name:<22}agree {} disagree {} skipped {}",
                c.agree, c.disagree, c.skipped
            );
        }
        let _ = writeln!(out, "records with findings {}", self.records_with_findings);
        let _ = writeln!(
            out,
            "invariant violations  {}",
            self.records_with_violations
        );
        let outcome = match self.outcome() {
            Outcome::Clean => "clean",
            Outcome::Findings => "findings",
            Outcome::InvariantViolation => "invariant violation",
        };
        let _ = writeln!(out, "outcome               {outcome}");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub params: SweepParams,
    pub records: Vec<SweepRecord>,
    pub summary: SweepSummary,
}

/// Runs the sweep over [`enumerate_caterpillars`]. Instances are evaluated in
/// parallel and collected in enumeration order.
pub fn sweep(p: &SweepParams) -> Result<SweepReport> {
    let instances = enumerate_caterpillars(p)?;
    Ok(sweep_instances(p, &instances))
}

pub fn sweep_instances(p: &SweepParams, instances: &[Caterpillar]) -> SweepReport {
    let options = OracleOptions {
        budget: p.oracle_budget,
        ..Default::default()
    };
    let records: Vec<SweepRecord> = instances
        .par_iter()
        .enumerate()
        .map(|(i, ct)| evaluate(i, ct, &options))
        .collect();
    SweepReport {
        params: p.clone(),
        summary: SweepSummary::from_records(&records),
        records,
    }
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(records: &[SweepRecord], mut w: W) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

#[derive(Serialize)]
struct CsvRow<'a> {
    index: usize,
    lambdas: String,
    vertices: usize,
    canonical_cost: u32,
    unsupported: &'a str,
    beta_star_as_written: Option<u32>,
    beta_star_effective: Option<u32>,
    beta_b_effective: Option<u32>,
    constructor_cost: Option<u64>,
    oracle: Option<u64>,
    fast_path: Option<u32>,
    fast_path_rule: Option<FastPathRule>,
    effective_vs_oracle: Option<bool>,
    as_written_vs_oracle: Option<bool>,
    findings: String,
    violations: String,
}

/// Flat projection of the records; list-valued cells are space-separated.
pub fn write_csv<W: Write>(records: &[SweepRecord], w: W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in records {
        let join = |xs: &[&str]| xs.join(" ");
        out.serialize(CsvRow {
            index: r.index,
            lambdas: r
                .lambdas
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            vertices: r.vertices,
            canonical_cost: r.canonical_cost,
            unsupported: r.unsupported.unwrap_or(""),
            beta_star_as_written: r.beta_star_as_written,
            beta_star_effective: r.beta_star_effective,
            beta_b_effective: r.beta_b_effective,
            constructor_cost: r.constructor_cost,
            oracle: r.oracle,
            fast_path: r.fast_path.map(|f| f.value),
            fast_path_rule: r.fast_path.map(|f| f.rule),
            effective_vs_oracle: r.agreement.effective_vs_oracle,
            as_written_vs_oracle: r.agreement.as_written_vs_oracle,
            findings: join(&r.findings),
            violations: join(&r.violations),
        })
        .map_err(io::Error::other)?;
    }
    out.flush()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticWitness {
    Oracle,
    Canonical,
    Constructed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagnosticEntry {
    pub lambdas: Vec<u32>,
    pub optimum: Option<u64>,
    /// Some optimum found leaves every stem silent.
    pub stems_silent: bool,
    /// That optimum has positive leaf weight at both spine ends.
    pub ends_positive: bool,
    pub witness: Option<DiagnosticWitness>,
}

impl DiagnosticEntry {
    pub fn passed(&self) -> bool {
        self.stems_silent && self.ends_positive
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DiagnosticReport {
    pub entries: Vec<DiagnosticEntry>,
}

impl DiagnosticReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(DiagnosticEntry::passed)
    }
}

/// Looks for an optimum with all stems at 0 and leaf weight on both spine
/// ends. Candidates are the oracle witness after stem saturation, the
/// canonical broadcast and the constructed one, whichever reach the optimum.
pub fn structural_diagnostics(
    instances: &[Caterpillar],
    options: &OracleOptions,
) -> DiagnosticReport {
    let entries = instances
        .iter()
        .map(|ct| {
            let m = ct.metrics();
            let mut entry = DiagnosticEntry {
                lambdas: ct.lambdas().to_vec(),
                optimum: None,
                stems_silent: false,
                ends_positive: false,
                witness: None,
            };
            let Ok(r) = exact_beta_b(&m, options) else {
                return entry;
            };
            entry.optimum = Some(r.optimum);
            let mut candidates = vec![
                (DiagnosticWitness::Oracle, saturate_stems(&m, &r.witness)),
                (DiagnosticWitness::Canonical, canonical_broadcast(ct)),
            ];
            if let Ok(w) = construct_witness(ct, Variant::Effective) {
                candidates.push((DiagnosticWitness::Constructed, w.trace.result().clone()));
            }
            for (kind, b) in candidates {
                if b.cost() != r.optimum || !is_independent(&m, &b).unwrap_or(false) {
                    continue;
                }
                let stems_silent = (0..=ct.length()).all(|i| ct.is_trunk(i) || b.get(i) == 0);
                let weights = spine_weights(ct, &b).expect("same tree");
                let k = ct.length();
                let ends_positive = weights[0] > b.get(0) as u64 && weights[k] > b.get(k) as u64;
                if stems_silent && ends_positive {
                    entry.stems_silent = true;
                    entry.ends_positive = true;
                    entry.witness = Some(kind);
                    break;
                }
                if entry.witness.is_none() {
                    entry.stems_silent = stems_silent;
                    entry.ends_positive = ends_positive;
                    entry.witness = Some(kind);
                }
            }
            entry
        })
        .collect();
    DiagnosticReport { entries }
}

/// True when no spine vertex pair `(i, i+1)` is a pair of trunks.
pub fn is_sweepable(ct: &Caterpillar) -> bool {
    !has_adjacent_trunks(ct)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: usize, cap: u32) -> SweepParams {
        SweepParams {
            k_min: k,
            k_max: k,
            lambda_cap: cap,
            total_cap: 100,
            no_adjacent_trunks: true,
            canonicalize: false,
            oracle_budget: 26,
        }
    }

    fn ct(l: &[u32]) -> Caterpillar {
        Caterpillar::new(l.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_order_and_canonical_form() {
        let mut p = params(1, 2);
        let all: Vec<Vec<u32>> = enumerate_caterpillars(&p)
            .unwrap()
            .iter()
            .map(|c| c.lambdas().to_vec())
            .collect();
        assert_eq!(all, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        p.canonicalize = true;
        assert_eq!(enumerate_caterpillars(&p).unwrap().len(), 3);

        let p = params(2, 1);
        let all = enumerate_caterpillars(&p).unwrap();
        assert_eq!(all[0].lambdas(), &[1, 0, 1]);
    }

    #[test]
    fn adjacent_trunk_filter() {
        let mut p = params(3, 1);
        assert!(enumerate_caterpillars(&p).unwrap().iter().all(is_sweepable));
        p.no_adjacent_trunks = false;
        assert!(enumerate_caterpillars(&p)
            .unwrap()
            .iter()
            .any(|c| c.lambdas() == [1, 0, 0, 1]));
    }

    #[test]
    fn bad_params() {
        let mut p = params(2, 1);
        p.k_min = 3;
        assert!(matches!(
            enumerate_caterpillars(&p),
            Err(Error::InvalidParams(_))
        ));
        let mut p = params(2, 1);
        p.lambda_cap = 0;
        assert!(p.validate().is_err());
    }

    #[test]
    fn random_trees() {
        let t = random_tree(2, 7).unwrap();
        assert_eq!(t.edges(), vec![(0, 1)]);
        let t = random_tree(3, 7).unwrap();
        assert_eq!(t.edges().len(), 2);
        assert_eq!(random_tree(12, 99).unwrap(), random_tree(12, 99).unwrap());
        assert!(random_tree(1, 0).is_err());
    }

    #[test]
    fn prufer_of_path() {
        // Code (1, 2) decodes to the path 0-1-2-3.
        let mut e = prufer_decode(4, &[1, 2]);
        e.sort();
        assert_eq!(e, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn records_for_known_instances() {
        let opts = OracleOptions::default();
        let r = evaluate(0, &ct(&[2, 0, 3]), &opts);
        assert_eq!(r.beta_b_as_written, Some(7));
        assert_eq!(r.beta_b_effective, Some(6));
        assert_eq!(r.oracle, Some(6));
        assert_eq!(r.findings, vec!["as_written_vs_oracle"]);
        assert!(r.violations.is_empty());
        assert!(r.reproduction.is_some());

        let r = evaluate(0, &ct(&[3, 0, 3]), &opts);
        assert_eq!(
            (
                r.beta_b_as_written,
                r.beta_b_effective,
                r.constructor_cost,
                r.oracle
            ),
            (Some(7), Some(7), Some(7), Some(7))
        );
        assert!(r.findings.is_empty());

        let r = evaluate(0, &ct(&[1, 0, 2, 1, 1, 2, 1, 0, 3]), &opts);
        assert_eq!(r.beta_b_effective, Some(18));
        assert_eq!(r.source, Some(WitnessSource::Canonical));
        assert_eq!(r.oracle, Some(18));

        let r = evaluate(0, &ct(&[1, 0, 0, 1]), &opts);
        assert_eq!(r.unsupported, Some("adjacent_trunks"));
        assert_eq!(r.oracle, Some(8));
        assert_eq!(r.agreement.fast_path_vs_oracle, Some(true));
    }

    #[test]
    fn over_budget_is_recorded() {
        let opts = OracleOptions {
            budget: 3,
            ..Default::default()
        };
        let r = evaluate(0, &ct(&[3, 0, 3]), &opts);
        assert_eq!(r.oracle, None);
        assert!(r.oracle_error.unwrap().contains("budget"));
        assert_eq!(r.agreement.effective_vs_oracle, None);
    }

    #[test]
    fn summary_counts() {
        let p = SweepParams {
            k_max: 2,
            ..Default::default()
        };
        let rep = sweep(&p).unwrap();
        let s = &rep.summary;
        assert_eq!(s.instances, rep.records.len());
        assert_eq!(
            s.effective_vs_oracle.agree
                + s.effective_vs_oracle.disagree
                + s.effective_vs_oracle.skipped,
            s.instances
        );
        assert_eq!(s.records_with_violations, 0);
        assert!(s.render_text().contains("outcome"));
    }

    #[test]
    fn diagnostics() {
        let rep = structural_diagnostics(&[ct(&[1, 1]), ct(&[3, 0, 3])], &OracleOptions::default());
        assert!(rep.all_passed());
    }

    #[test]
    fn digests_are_stable() {
        let b = Broadcast::from_values(vec![0, 1, 2]);
        assert_eq!(digest(&b), digest(&b.clone()));
        assert_ne!(digest(&b), digest(&Broadcast::from_values(vec![0, 2, 1])));
    }
}
