//! Closed-form broadcast independence number of caterpillars without adjacent
//! trunks, and the special cases that need no pattern counting.

use serde::Serialize;

use crate::error::{Error, Result, Unsupported};
use crate::pattern::{
    alpha1, alpha2, AlternatingFamily, CountingWindow, FormulaOccurrences, Occurrence, Variant,
};
use crate::tree::{classify_spine, first_adjacent_trunks, Caterpillar};

/// Which formula term an occurrence feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Singles,
    Alpha1,
    Alpha2Internal,
    Alpha2Left,
    Alpha2Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub term: Term,
    pub occurrence: Occurrence,
    pub value: u32,
}

/// `β*` split into its seven summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaBreakdown {
    pub variant: Variant,
    pub lambda_total: u32,
    pub tau: u32,
    pub singles_term: u32,
    pub alpha1_term: u32,
    pub alpha2_internal_term: u32,
    pub alpha2_left_term: u32,
    pub alpha2_right_term: u32,
    pub contributions: Vec<Contribution>,
}

impl BetaBreakdown {
    pub fn beta_star(&self) -> u32 {
        self.lambda_total
            + self.tau
            + self.singles_term
            + self.alpha1_term
            + self.alpha2_internal_term
            + self.alpha2_left_term
            + self.alpha2_right_term
    }

    /// Everything added on top of `λ + τ + singles` by the alternating
    /// families.
    pub fn alpha2_total(&self) -> u32 {
        self.alpha2_internal_term + self.alpha2_left_term + self.alpha2_right_term
    }
}

/// Rejects stars and caterpillars with adjacent trunks.
pub fn check_supported(ct: &Caterpillar) -> Result<()> {
    if ct.length() == 0 {
        return Err(Error::Unsupported(Unsupported::Star));
    }
    if let Some(index) = first_adjacent_trunks(ct) {
        return Err(Error::Unsupported(Unsupported::AdjacentTrunks { index }));
    }
    Ok(())
}

pub fn beta_star(ct: &Caterpillar, variant: Variant) -> Result<BetaBreakdown> {
    check_supported(ct)?;
    let class = classify_spine(ct);
    let occ = FormulaOccurrences::find(ct);
    Ok(breakdown_from(
        ct,
        &occ,
        class.lambda_total,
        class.tau,
        variant,
    ))
}

fn breakdown_from(
    ct: &Caterpillar,
    occ: &FormulaOccurrences,
    lambda_total: u32,
    tau: u32,
    variant: Variant,
) -> BetaBreakdown {
    let k = ct.length();
    let mut contributions = Vec::new();

    for &c in &occ.singles {
        contributions.push(Contribution {
            term: Term::Singles,
            occurrence: Occurrence {
                start: c.saturating_sub(1),
                end: (c + 1).min(k),
                repetitions: 0,
                contains_left_end: c == 0,
                contains_right_end: c == k,
                left_by_end: c == 0,
                right_by_end: c == k,
            },
            value: 1,
        });
    }
    for m in &occ.stem_runs {
        contributions.push(Contribution {
            term: Term::Alpha1,
            occurrence: *m,
            value: alpha1(ct, m, CountingWindow::Interior),
        });
    }
    let families = [
        (
            Term::Alpha2Internal,
            AlternatingFamily::Internal,
            &occ.internal[..],
        ),
        (
            Term::Alpha2Left,
            AlternatingFamily::LeftAnchored,
            &occ.left[..],
        ),
        (
            Term::Alpha2Right,
            AlternatingFamily::RightAnchored,
            occ.counted_right(variant),
        ),
    ];
    for (term, family, list) in families {
        for m in list {
            let value = alpha2(ct, m, family, variant).expect("occurrence found for this family");
            contributions.push(Contribution {
                term,
                occurrence: *m,
                value,
            });
        }
    }

    let sum = |t: Term| {
        contributions
            .iter()
            .filter(|c| c.term == t)
            .map(|c| c.value)
            .sum::<u32>()
    };
    BetaBreakdown {
        variant,
        lambda_total,
        tau,
        singles_term: sum(Term::Singles),
        alpha1_term: sum(Term::Alpha1),
        alpha2_internal_term: sum(Term::Alpha2Internal),
        alpha2_left_term: sum(Term::Alpha2Left),
        alpha2_right_term: sum(Term::Alpha2Right),
        contributions,
    }
}

/// Which side attains the maximum in `max{2(diam − 1), β*}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    Canonical,
    Constructed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaValue {
    pub value: u32,
    pub canonical_cost: u32,
    pub source: WitnessSource,
    pub breakdown: BetaBreakdown,
}

/// `β_b(CT) = max{2(diam − 1), β*(CT)}`; ties go to the canonical side.
pub fn beta_b(ct: &Caterpillar, variant: Variant) -> Result<BetaValue> {
    let breakdown = beta_star(ct, variant)?;
    let canonical_cost = 2 * (ct.length() as u32 + 1);
    let star = breakdown.beta_star();
    let (value, source) = if star > canonical_cost {
        (star, WitnessSource::Constructed)
    } else {
        (canonical_cost, WitnessSource::Canonical)
    };
    Ok(BetaValue {
        value,
        canonical_cost,
        source,
        breakdown,
    })
}

/// Input to [`beta_b_fastpath`].
#[derive(Debug, Clone, Copy)]
pub enum Instance<'a> {
    /// `K_{1,n}`.
    Star(u32),
    Caterpillar(&'a Caterpillar),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FastPathRule {
    /// `β_b(K_{1,n}) = n`.
    Star,
    /// No trunk, some stem with three or more leaves: `λ + n₁`.
    NoTrunk,
    /// No stem with three or more leaves: `2k + 2`.
    SmallStems,
    /// No adjacent trunks and every stem has at least three leaves: `λ + τ`.
    LargeStems,
}

/// Values that follow from simple structural conditions alone.
pub fn beta_b_fastpath(instance: Instance<'_>) -> Option<(u32, FastPathRule)> {
    let ct = match instance {
        Instance::Star(n) => return Some((n, FastPathRule::Star)),
        Instance::Caterpillar(ct) => ct,
    };
    let k = ct.length() as u32;
    let class = classify_spine(ct);
    let has_big_stem = ct.lambdas().iter().any(|&l| l >= 3);
    if !has_big_stem {
        return Some((2 * k + 2, FastPathRule::SmallStems));
    }
    if class.tau == 0 {
        return Some((class.lambda_total + class.n1, FastPathRule::NoTrunk));
    }
    let all_big = ct.lambdas().iter().all(|&l| l == 0 || l >= 3);
    if all_big && first_adjacent_trunks(ct).is_none() {
        return Some((class.lambda_total + class.tau, FastPathRule::LargeStems));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(l: &[u32]) -> Caterpillar {
        Caterpillar::new(l.to_vec()).unwrap()
    }

    #[test]
    fn figure_one() {
        let c = ct(&[1, 0, 2, 1, 1, 2, 1, 0, 3]);
        for v in [Variant::Effective, Variant::AsWritten] {
            let b = beta_star(&c, v).unwrap();
            assert_eq!(b.lambda_total, 11);
            assert_eq!(b.tau, 2);
            assert_eq!(b.singles_term, 2);
            assert_eq!(b.alpha1_term, 0);
            assert_eq!(b.alpha2_internal_term, 0);
            assert_eq!(b.alpha2_left_term, 1);
            assert_eq!(b.alpha2_right_term, 0);
            assert_eq!(b.beta_star(), 16);
            let bb = beta_b(&c, v).unwrap();
            assert_eq!((bb.value, bb.source), (18, WitnessSource::Canonical));
        }
    }

    #[test]
    fn known_discrepancy() {
        let c = ct(&[2, 0, 3]);
        assert_eq!(beta_star(&c, Variant::AsWritten).unwrap().beta_star(), 7);
        assert_eq!(beta_star(&c, Variant::Effective).unwrap().beta_star(), 6);
        assert_eq!(beta_b(&c, Variant::AsWritten).unwrap().value, 7);
        assert_eq!(beta_b(&c, Variant::Effective).unwrap().value, 6);
    }

    #[test]
    fn trunk_between_big_stems() {
        let c = ct(&[3, 0, 3]);
        for v in [Variant::Effective, Variant::AsWritten] {
            assert_eq!(beta_star(&c, v).unwrap().beta_star(), 7);
            let bb = beta_b(&c, v).unwrap();
            assert_eq!((bb.value, bb.source), (7, WitnessSource::Constructed));
        }
    }

    #[test]
    fn p4_tie_is_canonical() {
        let bb = beta_b(&ct(&[1, 1]), Variant::Effective).unwrap();
        assert_eq!((bb.value, bb.source), (4, WitnessSource::Canonical));
        assert_eq!(bb.breakdown.beta_star(), 4);
    }

    #[test]
    fn unsupported_classes() {
        assert_eq!(
            beta_star(&ct(&[1, 0, 0, 1]), Variant::Effective),
            Err(Error::Unsupported(Unsupported::AdjacentTrunks { index: 1 }))
        );
    }

    #[test]
    fn fast_paths() {
        assert_eq!(
            beta_b_fastpath(Instance::Star(5)),
            Some((5, FastPathRule::Star))
        );
        let p7 = ct(&[1, 0, 0, 0, 1]);
        assert_eq!(
            beta_b_fastpath(Instance::Caterpillar(&p7)),
            Some((10, FastPathRule::SmallStems))
        );
        // No trunk at all, so the no-trunk rule covers it: λ + n₁ = 7 + 1.
        assert_eq!(
            beta_b_fastpath(Instance::Caterpillar(&ct(&[3, 1, 3]))),
            Some((8, FastPathRule::NoTrunk))
        );
        assert_eq!(
            beta_b_fastpath(Instance::Caterpillar(&ct(&[3, 0, 1, 3]))),
            None
        );
        assert_eq!(
            beta_b_fastpath(Instance::Caterpillar(&ct(&[3, 1, 2]))),
            Some((7, FastPathRule::NoTrunk))
        );
        assert_eq!(
            beta_b_fastpath(Instance::Caterpillar(&ct(&[3, 0, 4]))),
            Some((8, FastPathRule::LargeStems))
        );
        assert_eq!(
            beta_b_fastpath(Instance::Caterpillar(&ct(&[3, 0, 0, 4]))),
            None
        );
    }
}
