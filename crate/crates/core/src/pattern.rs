//! Patterns over pendant-count sequences.
//!
//! A pattern is matched against contiguous windows of `λ_0 … λ_k`. Besides
//! plain symbols it supports end anchors and one alternating repetition group
//! `(ab)+` / `(ab)*`, matched with as many repetitions as possible. The textual
//! grammar is documented in `docs/patterns.md` at the repository root.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::Caterpillar;

/// Condition on the pendant count of one spine vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SymbolPredicate {
    /// Exactly `t` pendant leaves; `0` is a trunk.
    Exact(u32),
    /// At least `t` pendant leaves.
    AtLeast(u32),
    /// A stem with at most `t` pendant leaves, i.e. `1 ≤ λ ≤ t`.
    AtMost(u32),
    /// Any of the listed predicates.
    AnyOf(Vec<SymbolPredicate>),
}

impl SymbolPredicate {
    pub fn matches(&self, lambda: u32) -> bool {
        match self {
            SymbolPredicate::Exact(t) => lambda == *t,
            SymbolPredicate::AtLeast(t) => lambda >= *t,
            SymbolPredicate::AtMost(t) => lambda >= 1 && lambda <= *t,
            SymbolPredicate::AnyOf(ps) => ps.iter().any(|p| p.matches(lambda)),
        }
    }
}

impl fmt::Display for SymbolPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolPredicate::Exact(t) => write!(f, "{t}"),
            SymbolPredicate::AtLeast(t) => write!(f, "{t}+"),
            SymbolPredicate::AtMost(t) => write!(f, "{t}-"),
            SymbolPredicate::AnyOf(ps) => {
                f.write_str("{")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// What lies beyond one side of the matched window.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Edge {
    /// Unconstrained.
    Free,
    /// The window must touch this end of the spine (`[` or `]`).
    Anchored,
    /// Either the window touches this end, or one extra vertex on this side
    /// satisfies the predicate (`{p,[}` or `{p,]}`).
    AnchoredOr(SymbolPredicate),
}

/// Alternating group `(first second)` repeated `r ≥ min` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Repeat {
    pub first: SymbolPredicate,
    pub second: SymbolPredicate,
    /// `1` for `(..)+`, `0` for `(..)*`.
    pub min: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub left: Edge,
    pub prefix: Vec<SymbolPredicate>,
    pub repeat: Option<Repeat>,
    pub suffix: Vec<SymbolPredicate>,
    pub right: Edge,
}

impl Pattern {
    pub fn parse(text: &str) -> Result<Pattern> {
        Parser::new(text).pattern()
    }

    /// The pattern read right to left.
    pub fn mirrored(&self) -> Pattern {
        let rev = |v: &[SymbolPredicate]| v.iter().rev().cloned().collect::<Vec<_>>();
        Pattern {
            left: self.right.clone(),
            prefix: rev(&self.suffix),
            repeat: self.repeat.as_ref().map(|r| Repeat {
                first: r.second.clone(),
                second: r.first.clone(),
                min: r.min,
            }),
            suffix: rev(&self.prefix),
            right: self.left.clone(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.left {
            Edge::Free => {}
            Edge::Anchored => f.write_str("[")?,
            Edge::AnchoredOr(p) => write!(f, "{{{p},[}}")?,
        }
        for p in &self.prefix {
            write!(f, "{p}")?;
        }
        if let Some(r) = &self.repeat {
            write!(
                f,
                "({}{}){}",
                r.first,
                r.second,
                if r.min == 0 { '*' } else { '+' }
            )?;
        }
        for p in &self.suffix {
            write!(f, "{p}")?;
        }
        match &self.right {
            Edge::Free => {}
            Edge::Anchored => f.write_str("]")?,
            Edge::AnchoredOr(p) => write!(f, "{{{p},]}}")?,
        }
        Ok(())
    }
}

impl std::str::FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pattern> {
        Pattern::parse(s)
    }
}

/// A located match: the inclusive spine interval `start..=end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Occurrence {
    pub start: usize,
    pub end: usize,
    /// Repetitions of the alternating group (0 when the pattern has none).
    pub repetitions: usize,
    pub contains_left_end: bool,
    pub contains_right_end: bool,
    /// The `{p,[}` alternative was satisfied by the left end of the spine.
    pub left_by_end: bool,
    /// The `{p,]}` alternative was satisfied by the right end of the spine.
    pub right_by_end: bool,
}

impl Occurrence {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, other: &Occurrence) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: &Occurrence) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

fn match_run(lambdas: &[u32], at: usize, preds: &[SymbolPredicate]) -> bool {
    at + preds.len() <= lambdas.len()
        && preds.iter().zip(&lambdas[at..]).all(|(p, &l)| p.matches(l))
}

/// Every occurrence of `p` in `ct`, sorted by start index.
///
/// At a given start the repetition group takes the largest count that still
/// completes the match. An occurrence of a repeating pattern lying strictly
/// inside another occurrence of the same pattern is a truncated repetition and
/// is dropped.
pub fn find_occurrences(ct: &Caterpillar, p: &Pattern) -> Vec<Occurrence> {
    let lambdas = ct.lambdas();
    let n = lambdas.len();
    let k = n - 1;
    let mut out = Vec::new();

    // Each left mode says where the first pattern position sits relative to
    // the window start and whether the spine end stood in for `{p,[}`.
    for start in 0..n {
        let mut left_modes: Vec<(usize, bool)> = Vec::new();
        match &p.left {
            Edge::Free => left_modes.push((start, false)),
            Edge::Anchored => {
                if start == 0 {
                    left_modes.push((0, false));
                }
            }
            Edge::AnchoredOr(pred) => {
                if start == 0 {
                    left_modes.push((0, true));
                }
                if pred.matches(lambdas[start]) {
                    left_modes.push((start + 1, false));
                }
            }
        }
        for (body_start, left_by_end) in left_modes {
            if !match_run(lambdas, body_start, &p.prefix) {
                continue;
            }
            let group_start = body_start + p.prefix.len();
            let (min_r, max_r) = match &p.repeat {
                None => (0, 0),
                Some(rep) => {
                    let mut r = 0;
                    while group_start + 2 * r + 1 < n
                        && rep.first.matches(lambdas[group_start + 2 * r])
                        && rep.second.matches(lambdas[group_start + 2 * r + 1])
                    {
                        r += 1;
                    }
                    (rep.min, r)
                }
            };
            if max_r < min_r {
                continue;
            }
            for r in (min_r..=max_r).rev() {
                let suffix_start = group_start + 2 * r;
                if !match_run(lambdas, suffix_start, &p.suffix) {
                    continue;
                }
                // One past the last body position.
                let after = suffix_start + p.suffix.len();
                let mut hits = Vec::new();
                match &p.right {
                    Edge::Free => {
                        if after > start {
                            hits.push((after - 1, false));
                        }
                    }
                    Edge::Anchored => {
                        if after == n && after > start {
                            hits.push((k, false));
                        }
                    }
                    Edge::AnchoredOr(pred) => {
                        if after == n && after > start {
                            hits.push((k, true));
                        }
                        if after < n && pred.matches(lambdas[after]) {
                            hits.push((after, false));
                        }
                    }
                }
                if hits.is_empty() {
                    continue;
                }
                for (end, right_by_end) in hits {
                    out.push(Occurrence {
                        start,
                        end,
                        repetitions: r,
                        contains_left_end: start == 0,
                        contains_right_end: end == k,
                        left_by_end,
                        right_by_end,
                    });
                }
                break;
            }
        }
    }

    if p.repeat.is_some() {
        let all = out.clone();
        out.retain(|o| {
            !all.iter()
                .any(|q| q != o && q.contains(o) && (q.start, q.end) != (o.start, o.end))
        });
    }
    out.sort();
    out.dedup();
    out
}

pub fn count_occurrences(ct: &Caterpillar, p: &Pattern) -> usize {
    find_occurrences(ct, p).len()
}

/// Which positions of an occurrence `α₁` counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountingWindow {
    /// Every position of the occurrence.
    Whole,
    /// Positions strictly between the first and the last one.
    Interior,
}

/// Number of stems with exactly one pendant leaf inside the window.
pub fn single_leaf_stems(ct: &Caterpillar, m: &Occurrence, window: CountingWindow) -> u32 {
    let range = match window {
        CountingWindow::Whole => m.start..=m.end,
        CountingWindow::Interior => {
            if m.end < m.start + 2 {
                return 0;
            }
            m.start + 1..=m.end - 1
        }
    };
    range.filter(|&i| ct.lambda(i) == 1).count() as u32
}

/// `max{0, s − 1}` where `s` counts the single-leaf stems in the window.
pub fn alpha1(ct: &Caterpillar, m: &Occurrence, window: CountingWindow) -> u32 {
    single_leaf_stems(ct, m, window).saturating_sub(1)
}

/// How the end-vertex bonus of `α₂` is accounted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `α₁` plus one per spine end inside the occurrence.
    AsWritten,
    /// `α₁` for internal occurrences, the plain single-leaf stem count for
    /// occurrences touching one end. This is the gain the end rewrite actually
    /// realises.
    Effective,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::AsWritten => "as-written",
            Variant::Effective => "effective",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "as-written" | "as_written" => Ok(Variant::AsWritten),
            "effective" => Ok(Variant::Effective),
            other => Err(format!("unknown variant {other:?}")),
        }
    }
}

/// The three trunk-alternating families `02⁻(02⁻)*0`, `[2⁻(02⁻)*0` and
/// `02⁻(02⁻)*]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlternatingFamily {
    Internal,
    LeftAnchored,
    RightAnchored,
}

impl AlternatingFamily {
    pub fn name(&self) -> &'static str {
        match self {
            AlternatingFamily::Internal => "02-(02-)*0",
            AlternatingFamily::LeftAnchored => "[2-(02-)*0",
            AlternatingFamily::RightAnchored => "02-(02-)*]",
        }
    }

    pub fn pattern(&self) -> Pattern {
        match self {
            AlternatingFamily::Internal => internal_pattern(),
            AlternatingFamily::LeftAnchored => left_anchored_pattern(),
            AlternatingFamily::RightAnchored => right_anchored_pattern(),
        }
    }
}

fn is_family_shape(ct: &Caterpillar, m: &Occurrence, family: AlternatingFamily) -> bool {
    let k = ct.length();
    if m.end > k || m.start > m.end {
        return false;
    }
    let trunk_parity = match family {
        AlternatingFamily::Internal | AlternatingFamily::RightAnchored => 0,
        AlternatingFamily::LeftAnchored => 1,
    };
    let alternates = m.indices().all(|i| {
        let l = ct.lambda(i);
        if (i - m.start) % 2 == trunk_parity {
            l == 0
        } else {
            (1..=2).contains(&l)
        }
    });
    let ends_ok = match family {
        AlternatingFamily::Internal => {
            m.start > 0 && m.end < k && (m.end - m.start).is_multiple_of(2)
        }
        AlternatingFamily::LeftAnchored => m.start == 0 && m.end < k && (m.end - m.start) % 2 == 1,
        AlternatingFamily::RightAnchored => m.start > 0 && m.end == k && (m.end - m.start) % 2 == 1,
    };
    alternates && ends_ok && m.len() >= 2
}

/// End bonus term for an occurrence of one of the trunk-alternating families.
pub fn alpha2(
    ct: &Caterpillar,
    m: &Occurrence,
    family: AlternatingFamily,
    variant: Variant,
) -> Result<u32> {
    if !is_family_shape(ct, m, family) {
        return Err(Error::WrongPatternFamily(family.name()));
    }
    let s = single_leaf_stems(ct, m, CountingWindow::Whole);
    let ends = m.contains_left_end as u32 + m.contains_right_end as u32;
    Ok(match (variant, ends) {
        (Variant::AsWritten, _) => s.saturating_sub(1) + ends,
        (Variant::Effective, 0) => s.saturating_sub(1),
        (Variant::Effective, _) => s,
    })
}

fn sp(t: u32) -> SymbolPredicate {
    SymbolPredicate::Exact(t)
}

fn stem2() -> SymbolPredicate {
    SymbolPredicate::AtMost(2)
}

fn trunk_stem_repeat(min: usize) -> Option<Repeat> {
    Some(Repeat {
        first: sp(0),
        second: stem2(),
        min,
    })
}

/// `{1⁺,[}1{1⁺,]}`.
pub fn single_center_pattern() -> Pattern {
    Pattern {
        left: Edge::AnchoredOr(SymbolPredicate::AtLeast(1)),
        prefix: vec![sp(1)],
        repeat: None,
        suffix: vec![],
        right: Edge::AnchoredOr(SymbolPredicate::AtLeast(1)),
    }
}

/// `1⁺2⁻(02⁻)^{+r}1⁺`.
pub fn stem_run_pattern() -> Pattern {
    Pattern {
        left: Edge::Free,
        prefix: vec![SymbolPredicate::AtLeast(1), stem2()],
        repeat: trunk_stem_repeat(1),
        suffix: vec![SymbolPredicate::AtLeast(1)],
        right: Edge::Free,
    }
}

/// `02⁻(02⁻)^{*r}0`.
pub fn internal_pattern() -> Pattern {
    Pattern {
        left: Edge::Free,
        prefix: vec![sp(0), stem2()],
        repeat: trunk_stem_repeat(0),
        suffix: vec![sp(0)],
        right: Edge::Free,
    }
}

/// `[2⁻(02⁻)^{*r}0`.
pub fn left_anchored_pattern() -> Pattern {
    Pattern {
        left: Edge::Anchored,
        prefix: vec![stem2()],
        repeat: trunk_stem_repeat(0),
        suffix: vec![sp(0)],
        right: Edge::Free,
    }
}

/// `02⁻(02⁻)^{*r}]`.
pub fn right_anchored_pattern() -> Pattern {
    Pattern {
        left: Edge::Free,
        prefix: vec![sp(0), stem2()],
        repeat: trunk_stem_repeat(0),
        suffix: vec![],
        right: Edge::Anchored,
    }
}

/// Spine indices `i` with `λ_i = 1` whose neighbours are each either a
/// spine end or a stem.
pub fn single_centers(ct: &Caterpillar) -> Vec<usize> {
    let k = ct.length();
    (0..=k)
        .filter(|&i| {
            ct.lambda(i) == 1
                && (i == 0 || ct.lambda(i - 1) >= 1)
                && (i == k || ct.lambda(i + 1) >= 1)
        })
        .collect()
}

/// Whether the whole spine reads `[2⁻(02⁻)^{*r}]`.
pub fn is_whole_alternating(ct: &Caterpillar) -> bool {
    ct.lambdas().iter().enumerate().all(|(i, &l)| {
        if i % 2 == 0 {
            (1..=2).contains(&l)
        } else {
            l == 0
        }
    })
}

/// Occurrences of every pattern family the formula sums over, after
/// maximality filtering across families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaOccurrences {
    /// Centres of `{1⁺,[}1{1⁺,]}`.
    pub singles: Vec<usize>,
    pub stem_runs: Vec<Occurrence>,
    pub internal: Vec<Occurrence>,
    pub left: Vec<Occurrence>,
    pub right: Vec<Occurrence>,
    /// The spine is entirely `[2⁻(02⁻)^{*r}]`; the left and right anchored
    /// occurrences then share vertices.
    pub whole: bool,
}

impl FormulaOccurrences {
    /// An internal occurrence sitting inside a longer alternating occurrence
    /// (a stem run or an anchored one) is not a maximal repetition and is
    /// discarded.
    pub fn find(ct: &Caterpillar) -> FormulaOccurrences {
        let stem_runs = find_occurrences(ct, &stem_run_pattern());
        let left = find_occurrences(ct, &left_anchored_pattern());
        let right = find_occurrences(ct, &right_anchored_pattern());
        let mut internal = find_occurrences(ct, &internal_pattern());
        internal.retain(|m| {
            !stem_runs
                .iter()
                .chain(&left)
                .chain(&right)
                .any(|outer| outer.contains(m))
        });
        FormulaOccurrences {
            singles: single_centers(ct),
            stem_runs,
            internal,
            left,
            right,
            whole: is_whole_alternating(ct),
        }
    }

    /// Right-anchored occurrences that count towards the formula under the
    /// given variant. In the whole-spine case the effective reading keeps only
    /// the left one.
    pub fn counted_right(&self, variant: Variant) -> &[Occurrence] {
        match variant {
            Variant::Effective if self.whole => &[],
            _ => &self.right,
        }
    }

    pub fn anchored_count(&self) -> usize {
        self.left.len() + self.right.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapViolation {
    pub first: &'static str,
    pub first_occurrence: Occurrence,
    pub second: &'static str,
    pub second_occurrence: Occurrence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapReport {
    /// Left- and right-anchored occurrences overlap because the spine is
    /// `[2⁻(02⁻)^{*r}]`.
    pub whole_caterpillar: bool,
    pub violations: Vec<OverlapViolation>,
}

impl OverlapReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the forbidden overlaps between the formula's pattern families.
///
/// Internal occurrences must not meet any family (including each other);
/// anchored ones must not meet single centres or stem runs; left and right
/// anchored ones may only meet when the whole spine alternates.
pub fn check_overlaps(ct: &Caterpillar, occ: &FormulaOccurrences) -> OverlapReport {
    let k = ct.length();
    let single_windows: Vec<Occurrence> = occ
        .singles
        .iter()
        .map(|&c| Occurrence {
            start: c.saturating_sub(1),
            end: (c + 1).min(k),
            repetitions: 0,
            contains_left_end: c == 0,
            contains_right_end: c == k,
            left_by_end: c == 0,
            right_by_end: c == k,
        })
        .collect();
    let families: [(&'static str, &[Occurrence]); 5] = [
        ("{1+,[}1{1+,]}", &single_windows),
        ("1+2-(02-)+1+", &occ.stem_runs),
        (AlternatingFamily::Internal.name(), &occ.internal),
        (AlternatingFamily::LeftAnchored.name(), &occ.left),
        (AlternatingFamily::RightAnchored.name(), &occ.right),
    ];
    // (a, b) index pairs into `families` that must stay disjoint.
    const FORBIDDEN: [(usize, usize); 9] = [
        (2, 0),
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 0),
        (3, 1),
        (4, 0),
        (4, 1),
    ];
    let mut violations = Vec::new();
    for (a, b) in FORBIDDEN {
        let (na, sa) = families[a];
        let (nb, sb) = families[b];
        for (i, x) in sa.iter().enumerate() {
            for (j, y) in sb.iter().enumerate() {
                if a == b && i >= j {
                    continue;
                }
                if x.overlaps(y) {
                    violations.push(OverlapViolation {
                        first: na,
                        first_occurrence: *x,
                        second: nb,
                        second_occurrence: *y,
                    });
                }
            }
        }
    }
    let mut whole_caterpillar = false;
    for x in &occ.left {
        for y in &occ.right {
            if x.overlaps(y) {
                if occ.whole {
                    whole_caterpillar = true;
                } else {
                    violations.push(OverlapViolation {
                        first: families[3].0,
                        first_occurrence: *x,
                        second: families[4].0,
                        second_occurrence: *y,
                    });
                }
            }
        }
    }
    OverlapReport {
        whole_caterpillar,
        violations,
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

enum BraceItem {
    Sym(SymbolPredicate),
    LeftEnd,
    RightEnd,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Parser<'a> {
        Parser {
            src,
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let pos = self
            .chars
            .get(self.pos)
            .map(|(b, _)| *b)
            .unwrap_or(self.src.len());
        Err(Error::PatternSyntax {
            pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected '{want}'")),
        }
    }

    fn pattern(&mut self) -> Result<Pattern> {
        let mut left = Edge::Free;
        let mut right = Edge::Free;
        let mut prefix = Vec::new();
        let mut suffix = Vec::new();
        let mut repeat = None;
        let mut first = true;

        while let Some(c) = self.peek() {
            let body = if repeat.is_some() {
                &mut suffix
            } else {
                &mut prefix
            };
            match c {
                '[' => {
                    if !first {
                        return self.err("'[' must start the pattern");
                    }
                    self.bump();
                    left = Edge::Anchored;
                }
                ']' => {
                    self.bump();
                    if self.peek().is_some() {
                        return self.err("']' must end the pattern");
                    }
                    right = Edge::Anchored;
                }
                '(' => {
                    if repeat.is_some() {
                        return self.err("only one repetition group is supported");
                    }
                    self.bump();
                    let a = self.symbol()?;
                    let b = self.symbol()?;
                    self.expect(')')?;
                    let min = match self.bump() {
                        Some('+') | Some('⁺') => 1,
                        Some('*') => 0,
                        _ => {
                            self.pos -= 1;
                            return self.err("expected '+' or '*' after ')'");
                        }
                    };
                    repeat = Some(Repeat {
                        first: a,
                        second: b,
                        min,
                    });
                }
                '{' => {
                    let at = self.pos;
                    let items = self.brace()?;
                    let mut syms = Vec::new();
                    let mut left_end = false;
                    let mut right_end = false;
                    for item in items {
                        match item {
                            BraceItem::Sym(s) => syms.push(s),
                            BraceItem::LeftEnd => left_end = true,
                            BraceItem::RightEnd => right_end = true,
                        }
                    }
                    let sym = match syms.len() {
                        0 => {
                            self.pos = at;
                            return self.err("braces need at least one symbol");
                        }
                        1 => syms.pop().unwrap(),
                        _ => SymbolPredicate::AnyOf(syms),
                    };
                    match (left_end, right_end) {
                        (false, false) => body.push(sym),
                        (true, false) => {
                            if !first {
                                self.pos = at;
                                return self.err("'{..,[}' must start the pattern");
                            }
                            left = Edge::AnchoredOr(sym);
                        }
                        (false, true) => {
                            if self.peek().is_some() {
                                self.pos = at;
                                return self.err("'{..,]}' must end the pattern");
                            }
                            right = Edge::AnchoredOr(sym);
                        }
                        (true, true) => {
                            self.pos = at;
                            return self.err("a group cannot hold both '[' and ']'");
                        }
                    }
                }
                _ => {
                    let s = self.symbol()?;
                    body.push(s);
                }
            }
            first = false;
        }
        if prefix.is_empty() && suffix.is_empty() && repeat.is_none() {
            return self.err("pattern has no positions");
        }
        Ok(Pattern {
            left,
            prefix,
            repeat,
            suffix,
            right,
        })
    }

    fn brace(&mut self) -> Result<Vec<BraceItem>> {
        self.expect('{')?;
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Some('[') => {
                    self.bump();
                    items.push(BraceItem::LeftEnd);
                }
                Some(']') => {
                    self.bump();
                    items.push(BraceItem::RightEnd);
                }
                _ => items.push(BraceItem::Sym(self.symbol()?)),
            }
            match self.bump() {
                Some(',') => continue,
                Some('}') => return Ok(items),
                _ => {
                    self.pos -= 1;
                    return self.err("expected ',' or '}'");
                }
            }
        }
    }

    fn symbol(&mut self) -> Result<SymbolPredicate> {
        if self.peek() == Some('{') {
            let at = self.pos;
            let mut syms = Vec::new();
            for item in self.brace()? {
                match item {
                    BraceItem::Sym(s) => syms.push(s),
                    _ => {
                        self.pos = at;
                        return self.err("end markers are not allowed here");
                    }
                }
            }
            return Ok(SymbolPredicate::AnyOf(syms));
        }
        let Some(d) = self.peek().and_then(|c| c.to_digit(10)) else {
            return self.err("expected a digit");
        };
        self.bump();
        Ok(match self.peek() {
            Some('+') | Some('⁺') => {
                self.bump();
                SymbolPredicate::AtLeast(d)
            }
            Some('-') | Some('⁻') => {
                self.bump();
                SymbolPredicate::AtMost(d)
            }
            _ => SymbolPredicate::Exact(d),
        })
    }
}
