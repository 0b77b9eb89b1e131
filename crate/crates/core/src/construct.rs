//! Four-step construction of an independent broadcast of cost `β*`.
//!
//! Step 1 puts value 1 on every leaf and trunk. Step 2 raises isolated single
//! leaves to 2. Steps 3 and 4 rewrite the alternating stem/trunk runs found by
//! the pattern engine, silencing their trunks and pushing value 3 onto one leaf
//! per stem. Stems themselves never broadcast.

use serde::Serialize;

use crate::broadcast::{canonical_broadcast, Broadcast};
use crate::error::{Error, Result, Unsupported};
use crate::formula::{check_supported, WitnessSource};
use crate::pattern::{single_leaf_stems, CountingWindow, FormulaOccurrences, Occurrence, Variant};
use crate::tree::Caterpillar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    #[serde(skip)]
    pub steps: [Broadcast; 4],
    pub costs: [u64; 4],
    /// Stem runs rewritten in step 3.
    pub step3_rewrites: Vec<Occurrence>,
    /// Alternating occurrences rewritten in step 4.
    pub step4_rewrites: Vec<Occurrence>,
}

impl ConstructionTrace {
    /// `cost(f_{i+1}) − cost(f_i)` for the last three steps.
    pub fn deltas(&self) -> [i64; 3] {
        [
            self.costs[1] as i64 - self.costs[0] as i64,
            self.costs[2] as i64 - self.costs[1] as i64,
            self.costs[3] as i64 - self.costs[2] as i64,
        ]
    }

    pub fn result(&self) -> &Broadcast {
        &self.steps[3]
    }
}

/// Value 1 on every pendant leaf and every trunk.
pub fn step1(ct: &Caterpillar) -> Result<Broadcast> {
    check_supported(ct)?;
    let mut f = Broadcast::zeros(ct.vertex_count());
    for i in 0..=ct.length() {
        if ct.is_trunk(i) {
            f.set(i, 1);
        }
        for j in 1..=ct.lambda(i) as usize {
            f.set(ct.leaf_vertex(i, j), 1);
        }
    }
    Ok(f)
}

/// Raises the leaf of every single-leaf stem flanked by stems or spine ends
/// to 2.
pub fn step2(ct: &Caterpillar, f1: &Broadcast) -> Broadcast {
    let mut f = f1.clone();
    for c in crate::pattern::single_centers(ct) {
        f.set(ct.leaf_vertex(c, 1), 2);
    }
    f
}

fn set_stem_leaves(ct: &Caterpillar, f: &mut Broadcast, i: usize, first: u32) {
    f.set(ct.leaf_vertex(i, 1), first);
    for j in 2..=ct.lambda(i) as usize {
        f.set(ct.leaf_vertex(i, j), 0);
    }
}

fn rewrite_stem_run(ct: &Caterpillar, f: &mut Broadcast, m: &Occurrence) {
    let first = m.start + 1;
    let last = m.end - 1;
    for i in first..=last {
        if ct.is_trunk(i) {
            f.set(i, 0);
        } else if i == first || i == last {
            if ct.lambda(i) == 1 {
                f.set(ct.leaf_vertex(i, 1), 2);
            }
        } else {
            set_stem_leaves(ct, f, i, 3);
        }
    }
}

/// Rewrites the stem runs `1⁺2⁻(02⁻)^{+r}1⁺` whose interior holds a
/// single-leaf stem. Returns the rewritten occurrences.
pub fn step3(ct: &Caterpillar, f2: &Broadcast) -> (Broadcast, Vec<Occurrence>) {
    let occ = FormulaOccurrences::find(ct);
    step3_with(ct, f2, &occ)
}

fn step3_with(
    ct: &Caterpillar,
    f2: &Broadcast,
    occ: &FormulaOccurrences,
) -> (Broadcast, Vec<Occurrence>) {
    let mut f = f2.clone();
    let mut done = Vec::new();
    for m in &occ.stem_runs {
        if single_leaf_stems(ct, m, CountingWindow::Interior) >= 1 {
            rewrite_stem_run(ct, &mut f, m);
            done.push(*m);
        }
    }
    (f, done)
}

fn rewrite_alternating(ct: &Caterpillar, f: &mut Broadcast, m: &Occurrence) {
    for i in m.indices() {
        if ct.is_trunk(i) {
            f.set(i, 0);
        } else {
            set_stem_leaves(ct, f, i, 3);
        }
    }
}

/// Rewrites the trunk-alternating occurrences: internal ones when they hold a
/// single-leaf stem, anchored ones always (only the left one when the whole
/// spine alternates).
///
/// The variant does not change the broadcast; the `as-written` accounting has
/// no construction reaching it, so both variants build the effective one.
pub fn step4(ct: &Caterpillar, f3: &Broadcast, variant: Variant) -> (Broadcast, Vec<Occurrence>) {
    let occ = FormulaOccurrences::find(ct);
    step4_with(ct, f3, &occ, variant)
}

fn step4_with(
    ct: &Caterpillar,
    f3: &Broadcast,
    occ: &FormulaOccurrences,
    _variant: Variant,
) -> (Broadcast, Vec<Occurrence>) {
    let mut f = f3.clone();
    let mut done = Vec::new();
    for m in &occ.internal {
        if single_leaf_stems(ct, m, CountingWindow::Whole) >= 1 {
            rewrite_alternating(ct, &mut f, m);
            done.push(*m);
        }
    }
    for m in occ.left.iter().chain(occ.counted_right(Variant::Effective)) {
        rewrite_alternating(ct, &mut f, m);
        done.push(*m);
    }
    (f, done)
}

/// Runs all four steps and records the intermediate broadcasts.
pub fn construct(ct: &Caterpillar) -> Result<ConstructionTrace> {
    let f1 = step1(ct)?;
    let occ = FormulaOccurrences::find(ct);
    let f2 = step2(ct, &f1);
    let (f3, step3_rewrites) = step3_with(ct, &f2, &occ);
    let (f4, step4_rewrites) = step4_with(ct, &f3, &occ, Variant::Effective);
    let costs = [f1.cost(), f2.cost(), f3.cost(), f4.cost()];
    Ok(ConstructionTrace {
        steps: [f1, f2, f3, f4],
        costs,
        step3_rewrites,
        step4_rewrites,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub broadcast: Broadcast,
    pub cost: u64,
    pub source: WitnessSource,
    pub trace: ConstructionTrace,
}

/// The costlier of the canonical broadcast and the step-4 broadcast; the
/// canonical one wins ties.
pub fn construct_witness(ct: &Caterpillar, _variant: Variant) -> Result<Witness> {
    if ct.length() == 0 {
        return Err(Error::Unsupported(Unsupported::Star));
    }
    let trace = construct(ct)?;
    let canonical = canonical_broadcast(ct);
    let (broadcast, source) = if trace.costs[3] > canonical.cost() {
        (trace.result().clone(), WitnessSource::Constructed)
    } else {
        (canonical, WitnessSource::Canonical)
    };
    Ok(Witness {
        cost: broadcast.cost(),
        broadcast,
        source,
        trace,
    })
}
