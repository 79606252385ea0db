// SPDX-License-Identifier: Apache-2.0

//! Pairwise human judgments: blinding, tie resolution, raw agreement,
//! Cohen's kappa and tallies.
//!
//! Annotators see two summaries in positions A and B. A [`BlindKey`] per task
//! maps positions back to the two systems; after de-blinding every judgment is
//! a [`Verdict`] in model space.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

/// A judgment as the annotator entered it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PositionLabel {
    #[cfg_attr(feature = "serde", serde(alias = "a"))]
    A,
    #[cfg_attr(feature = "serde", serde(alias = "b"))]
    B,
    #[cfg_attr(feature = "serde", serde(rename = "TIE", alias = "Tie", alias = "tie"))]
    Tie,
}

impl FromStr for PositionLabel {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(PositionLabel::A),
            "B" => Ok(PositionLabel::B),
            "TIE" => Ok(PositionLabel::Tie),
            _ => Err(UnknownLabel),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("label must be one of A, B, TIE")]
pub struct UnknownLabel;

/// One of the two systems under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Model {
    #[cfg_attr(feature = "serde", serde(rename = "model_1"))]
    Model1,
    #[cfg_attr(feature = "serde", serde(rename = "model_2"))]
    Model2,
}

impl Model {
    pub fn other(self) -> Model {
        match self {
            Model::Model1 => Model::Model2,
            Model::Model2 => Model::Model1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Model1 => "model_1",
            Model::Model2 => "model_2",
        }
    }
}

/// A de-blinded judgment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Verdict {
    #[cfg_attr(feature = "serde", serde(rename = "prediction_1"))]
    Prediction1,
    #[cfg_attr(feature = "serde", serde(rename = "prediction_2"))]
    Prediction2,
    #[cfg_attr(feature = "serde", serde(rename = "tie"))]
    Tie,
}

impl Verdict {
    pub const ALL: [Verdict; 3] = [Verdict::Prediction1, Verdict::Prediction2, Verdict::Tie];

    fn slot(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Prediction1 => "prediction_1",
            Verdict::Prediction2 => "prediction_2",
            Verdict::Tie => "tie",
        }
    }
}

impl From<Model> for Verdict {
    fn from(m: Model) -> Self {
        match m {
            Model::Model1 => Verdict::Prediction1,
            Model::Model2 => Verdict::Prediction2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which model sits in position A; position B holds the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlindKey {
    pub a: Model,
}

impl BlindKey {
    /// Fair coin: one draw per task.
    pub fn draw<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let a = if rng.random_bool(0.5) {
            Model::Model1
        } else {
            Model::Model2
        };
        BlindKey { a }
    }

    pub fn b(&self) -> Model {
        self.a.other()
    }

    pub fn deblind(&self, label: PositionLabel) -> Verdict {
        match label {
            PositionLabel::A => self.a.into(),
            PositionLabel::B => self.b().into(),
            PositionLabel::Tie => Verdict::Tie,
        }
    }
}

/// Outcome of combining two annotators' verdicts on one task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Final(Verdict),
    /// The annotators picked different models; settle by discussion.
    NeedsDiscussion,
}

/// Equal verdicts stand, a tie yields to a concrete pick, and opposite picks
/// go to discussion.
pub fn resolve_pair(first: Verdict, second: Verdict) -> Resolution {
    match (first, second) {
        (x, y) if x == y => Resolution::Final(x),
        (Verdict::Tie, pick) | (pick, Verdict::Tie) => Resolution::Final(pick),
        _ => Resolution::NeedsDiscussion,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum AgreementError {
    #[error("no paired judgments to compare")]
    Empty,
    #[error("kappa is undefined: chance agreement is 1 but observed agreement is {observed}")]
    DegenerateChance { observed: f64 },
}

/// Category space for kappa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KappaCategories {
    /// prediction_1 / prediction_2 / tie.
    #[default]
    Three,
    /// Tasks either annotator marked as a tie are left out.
    Two,
}

/// Square contingency table of annotator 1 (rows) against annotator 2.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    cells: [[u64; 3]; 3],
}

impl ConfusionMatrix {
    pub fn from_rows(cells: [[u64; 3]; 3]) -> Self {
        ConfusionMatrix { cells }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Verdict, Verdict)>) -> Self {
        let mut m = ConfusionMatrix::default();
        for (x, y) in pairs {
            m.cells[x.slot()][y.slot()] += 1;
        }
        m
    }

    pub fn get(&self, row: Verdict, col: Verdict) -> u64 {
        self.cells[row.slot()][col.slot()]
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().flatten().sum()
    }

    /// The same table with every task involving a tie removed.
    pub fn without_ties(&self) -> Self {
        let mut m = self.clone();
        let t = Verdict::Tie.slot();
        for i in 0..3 {
            m.cells[t][i] = 0;
            m.cells[i][t] = 0;
        }
        m
    }

    pub fn observed_agreement(&self) -> Result<f64, AgreementError> {
        let n = self.total();
        if n == 0 {
            return Err(AgreementError::Empty);
        }
        let diagonal: u64 = (0..3).map(|i| self.cells[i][i]).sum();
        Ok(diagonal as f64 / n as f64)
    }

    /// Chance agreement from the product of the two marginals.
    pub fn chance_agreement(&self) -> Result<f64, AgreementError> {
        let n = self.total();
        if n == 0 {
            return Err(AgreementError::Empty);
        }
        let n = n as f64;
        let mut p_e = 0.0;
        for k in 0..3 {
            let row: u64 = self.cells[k].iter().sum();
            let col: u64 = (0..3).map(|i| self.cells[i][k]).sum();
            p_e += (row as f64 / n) * (col as f64 / n);
        }
        Ok(p_e)
    }

    /// `(p_o - p_e) / (1 - p_e)`; when `p_e == 1`, perfect agreement is 1
    /// and anything else is undefined.
    pub fn kappa(&self) -> Result<f64, AgreementError> {
        let p_o = self.observed_agreement()?;
        let p_e = self.chance_agreement()?;
        if p_e >= 1.0 {
            return if p_o >= 1.0 {
                Ok(1.0)
            } else {
                Err(AgreementError::DegenerateChance { observed: p_o })
            };
        }
        Ok((p_o - p_e) / (1.0 - p_e))
    }
}

/// Share of paired judgments that are identical.
pub fn raw_agreement(pairs: &[(Verdict, Verdict)]) -> Result<f64, AgreementError> {
    ConfusionMatrix::from_pairs(pairs.iter().copied()).observed_agreement()
}

pub fn cohens_kappa(pairs: &[(Verdict, Verdict)], categories: KappaCategories) -> Result<f64, AgreementError> {
    let m = ConfusionMatrix::from_pairs(pairs.iter().copied());
    match categories {
        KappaCategories::Three => m.kappa(),
        KappaCategories::Two => m.without_ties().kappa(),
    }
}

/// Final-verdict counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tally {
    pub model_1: u64,
    pub model_2: u64,
    pub tie: u64,
    pub total: u64,
}

pub fn tally(verdicts: impl IntoIterator<Item = Verdict>) -> Tally {
    let mut t = Tally::default();
    for v in verdicts {
        match v {
            Verdict::Prediction1 => t.model_1 += 1,
            Verdict::Prediction2 => t.model_2 += 1,
            Verdict::Tie => t.tie += 1,
        }
        t.total += 1;
    }
    t
}

/// Pair up verdicts for the common helpers above.
pub fn zip_verdicts(first: &[Verdict], second: &[Verdict]) -> Vec<(Verdict, Verdict)> {
    first.iter().copied().zip(second.iter().copied()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use Verdict::*;

    #[test]
    fn tie_resolution_rules() {
        assert_eq!(resolve_pair(Prediction1, Prediction1), Resolution::Final(Prediction1));
        assert_eq!(resolve_pair(Tie, Tie), Resolution::Final(Tie));
        assert_eq!(resolve_pair(Tie, Prediction2), Resolution::Final(Prediction2));
        assert_eq!(resolve_pair(Prediction1, Tie), Resolution::Final(Prediction1));
        assert_eq!(resolve_pair(Prediction1, Prediction2), Resolution::NeedsDiscussion);
        assert_eq!(resolve_pair(Prediction2, Prediction1), Resolution::NeedsDiscussion);
    }

    #[test]
    fn deblinding_follows_the_key() {
        let key = BlindKey { a: Model::Model2 };
        assert_eq!(key.deblind(PositionLabel::A), Prediction2);
        assert_eq!(key.deblind(PositionLabel::B), Prediction1);
        assert_eq!(key.deblind(PositionLabel::Tie), Tie);
        assert_eq!(BlindKey { a: Model::Model1 }.deblind(PositionLabel::Tie), Tie);
    }

    #[test]
    fn parses_position_labels() {
        assert_eq!("a".parse::<PositionLabel>(), Ok(PositionLabel::A));
        assert_eq!("TIE".parse::<PositionLabel>(), Ok(PositionLabel::Tie));
        assert!("C".parse::<PositionLabel>().is_err());
    }

    fn pairs_with_agreements(n: usize, agree: usize) -> Vec<(Verdict, Verdict)> {
        (0..n)
            .map(|i| {
                let v = Verdict::ALL[i % 3];
                if i < agree {
                    (v, v)
                } else {
                    (v, Verdict::ALL[(i + 1) % 3])
                }
            })
            .collect()
    }

    #[test]
    fn raw_agreement_counts() {
        assert_eq!(raw_agreement(&pairs_with_agreements(200, 200)).unwrap(), 1.0);
        assert!((raw_agreement(&pairs_with_agreements(200, 149)).unwrap() - 0.745).abs() < 1e-12);
        assert!((raw_agreement(&pairs_with_agreements(200, 164)).unwrap() - 0.82).abs() < 1e-12);
        assert_eq!(raw_agreement(&[]), Err(AgreementError::Empty));
    }

    // Oracle for the fixed table below, by hand:
    //   rows 65, 75, 60; cols 62, 76, 62; n = 200; diagonal 160
    //   p_o = 160/200 = 0.8
    //   p_e = (65*62 + 75*76 + 60*62) / 200^2 = 13450/40000 = 0.33625
    //   kappa = 0.46375 / 0.66375 = 371/531
    #[test]
    fn kappa_matches_hand_computation() {
        let m = ConfusionMatrix::from_rows([[50, 10, 5], [8, 60, 7], [4, 6, 50]]);
        assert_eq!(m.total(), 200);
        assert!((m.observed_agreement().unwrap() - 0.8).abs() < 1e-15);
        assert!((m.chance_agreement().unwrap() - 0.33625).abs() < 1e-15);
        assert!((m.kappa().unwrap() - 371.0 / 531.0).abs() < 1e-9);
    }

    #[test]
    fn perfect_agreement_is_one() {
        let pairs: Vec<_> = [Prediction1, Prediction2, Tie, Tie, Prediction2]
            .iter()
            .map(|&v| (v, v))
            .collect();
        assert_eq!(cohens_kappa(&pairs, KappaCategories::Three).unwrap(), 1.0);
        // One category only: chance agreement is 1 as well.
        let same = vec![(Tie, Tie); 4];
        assert_eq!(cohens_kappa(&same, KappaCategories::Three).unwrap(), 1.0);
    }

    #[test]
    fn degenerate_chance_with_disagreement_is_an_error() {
        // Only one annotator varies; both marginals cannot be 1 while they
        // disagree, so build p_e = 1 via the two-category view instead.
        let pairs = [(Prediction1, Prediction1), (Prediction1, Tie)];
        assert_eq!(cohens_kappa(&pairs, KappaCategories::Two).unwrap(), 1.0);
        let m = ConfusionMatrix::from_rows([[0, 0, 0], [0, 0, 0], [0, 0, 0]]);
        assert_eq!(m.kappa(), Err(AgreementError::Empty));
    }

    #[test]
    fn two_category_kappa_drops_ties() {
        let pairs = [
            (Prediction1, Prediction1),
            (Prediction2, Prediction2),
            (Prediction1, Prediction2),
            (Tie, Prediction2),
            (Prediction2, Tie),
        ];
        // Remaining 2x2: [[1,1],[0,1]], n = 3: p_o = 2/3,
        // p_e = (2/3)(1/3) + (1/3)(2/3) = 4/9, kappa = (2/9)/(5/9) = 0.4.
        assert!((cohens_kappa(&pairs, KappaCategories::Two).unwrap() - 0.4).abs() < 1e-12);
    }

    #[test]
    fn independent_annotators_have_near_zero_kappa() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let pairs: Vec<_> = (0..100_000)
            .map(|_| {
                (
                    Verdict::ALL[rng.random_range(0..3)],
                    Verdict::ALL[rng.random_range(0..3)],
                )
            })
            .collect();
        let k = cohens_kappa(&pairs, KappaCategories::Three).unwrap();
        assert!(k.abs() < 0.02, "kappa {k}");
    }

    #[test]
    fn tallies_sum_to_total() {
        let t = tally([Prediction1, Prediction2, Prediction2, Tie]);
        assert_eq!(
            t,
            Tally {
                model_1: 1,
                model_2: 2,
                tie: 1,
                total: 4
            }
        );
        assert_eq!(tally([]), Tally::default());
    }

    #[test]
    fn coin_is_fair() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ones = (0..10_000)
            .filter(|_| BlindKey::draw(&mut rng).a == Model::Model1)
            .count();
        let share = ones as f64 / 10_000.0;
        assert!((0.47..=0.53).contains(&share), "{share}");
    }

    fn verdict() -> impl Strategy<Value = Verdict> {
        prop_oneof![Just(Prediction1), Just(Prediction2), Just(Tie)]
    }

    proptest! {
        #[test]
        fn kappa_is_invariant_under_consistent_relabeling(
            pairs in proptest::collection::vec((verdict(), verdict()), 1..60),
            perm in Just([0usize, 1, 2]).prop_shuffle(),
        ) {
            let relabel = |v: Verdict| Verdict::ALL[perm[v.slot()]];
            let moved: Vec<_> = pairs.iter().map(|&(x, y)| (relabel(x), relabel(y))).collect();
            let k1 = cohens_kappa(&pairs, KappaCategories::Three);
            let k2 = cohens_kappa(&moved, KappaCategories::Three);
            match (k1, k2) {
                (Ok(a), Ok(b)) => prop_assert!((a - b).abs() < 1e-12),
                (a, b) => prop_assert_eq!(a, b),
            }
        }

        #[test]
        fn kappa_bounded_and_resolution_complete(
            pairs in proptest::collection::vec((verdict(), verdict()), 1..60),
        ) {
            if let Ok(k) = cohens_kappa(&pairs, KappaCategories::Three) {
                prop_assert!((-1.0..=1.0).contains(&k));
            }
            let t = tally(pairs.iter().filter_map(|&(a, b)| match resolve_pair(a, b) {
                Resolution::Final(v) => Some(v),
                Resolution::NeedsDiscussion => None,
            }));
            let open = pairs.iter().filter(|&&(a, b)| resolve_pair(a, b) == Resolution::NeedsDiscussion).count();
            prop_assert_eq!(t.total as usize + open, pairs.len());
            prop_assert_eq!(t.model_1 + t.model_2 + t.tie, t.total);
        }
    }
}
