use crate::chain::{tensor, ChainComplex};

use super::bar::cyclic_homology;
use super::finite::FiniteGroup;
use super::word::ConjClassRep;

/// The rational model of `BF_r`: `Q` in degree 0, `Q^r` in degree 1.
pub fn free_group_classifying_model(rank: usize) -> ChainComplex {
    ChainComplex::from_diffs(0, vec![1, rank], vec![crate::exactla::SparseMatrix::zeros(1, rank)]).expect("zero differential")
}

/// The λ-complex of `Q`, truncated at `top`.
pub fn unit_cyclic_complex(top: usize) -> ChainComplex {
    cyclic_homology(&FiniteGroup::trivial(), top).lambda.complex
}

/// `⊕_{x ≠ 1} C_*(B(C_{<x>}/(x))) ⊕ C_*(BF) ⊗ CC_*(Q)` in degrees `≤ top`.
/// Each quotient `C_{<x>}/(x) ≅ Z/k` contributes `Q` in degree 0.
pub fn wtcc_small_model(classes: &[ConjClassRep], rank: usize, top: usize) -> ChainComplex {
    let identity = tensor(&free_group_classifying_model(rank), &unit_cyclic_complex(top)).truncate_above(top as i64);
    let others = ChainComplex::concentrated(0, classes.len());
    identity.direct_sum(&others)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcyc::classes_up_to;

    #[test]
    fn hc1_of_integers() {
        let classes = classes_up_to(1, 3);
        assert_eq!(classes.len(), 6);
        let m = wtcc_small_model(&classes, 1, 4);
        assert_eq!(m.betti(1), 1);
        assert_eq!(m.betti(0), 1 + classes.len());
    }

    #[test]
    fn trivial_group_reduces_to_unit_complex() {
        let m = wtcc_small_model(&[], 0, 4);
        assert_eq!(m, unit_cyclic_complex(4));
    }

    #[test]
    fn rank_two_window() {
        let classes = classes_up_to(2, 2);
        let m = wtcc_small_model(&classes, 2, 3);
        assert_eq!(m.betti(0), 1 + 12);
        assert_eq!(m.betti(1), 2);
    }
}
