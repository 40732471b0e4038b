//! Bundled worked examples as JSON inputs.

use crate::optimality::FuzzyProblem;
use crate::svm::FuzzyDataset;

pub const BOX_JSON: &str = include_str!("../fixtures/box.json");
pub const FJ_1D_JSON: &str = include_str!("../fixtures/fj_1d.json");
pub const KKT_2D_JSON: &str = include_str!("../fixtures/kkt_2d.json");
pub const SVM_6PT_JSON: &str = include_str!("../fixtures/svm_6pt.json");

/// Feasible box of the box example.
pub const BOX_LO: [f64; 2] = [1.0, 1.0];
pub const BOX_HI: [f64; 2] = [2.0, 2.0];
/// Box minimiser and a non-optimal comparison point.
pub const BOX_OPTIMUM: [f64; 2] = [1.5, 1.0];
pub const BOX_OTHER: [f64; 2] = [1.5, 2.0];

pub const FJ_1D_POINT: [f64; 1] = [2.0];
pub const KKT_2D_POINT: [f64; 2] = [0.0, 2.0];

fn parse<T: serde::de::DeserializeOwned>(src: &str) -> T {
    serde_json::from_str(src).expect("bundled fixture parses")
}

/// Objective of the box example; the problem carries no constraints.
pub fn box_problem() -> FuzzyProblem {
    parse(BOX_JSON)
}

pub fn fj_1d() -> FuzzyProblem {
    parse(FJ_1D_JSON)
}

pub fn kkt_2d() -> FuzzyProblem {
    parse(KKT_2D_JSON)
}

pub fn svm_6pt() -> FuzzyDataset {
    parse(SVM_6PT_JSON)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        assert_eq!(box_problem().dim(), 2);
        assert_eq!(fj_1d().constraints().len(), 2);
        assert_eq!(kkt_2d().dim(), 2);
        assert_eq!(svm_6pt().len(), 6);
    }
}
