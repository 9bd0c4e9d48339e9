//! Witness trees: the partition structure attaining a computed norm.
//!
//! Replaying a witness bottom-up against the original vector reproduces
//! the engine value, which is what the regression tests check for every
//! reported result.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Scalar, ScalarError};
use crate::vector::{Interval, SparseVector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WitnessError {
    #[error("children intervals are not successive at position {0}")]
    NotSuccessive(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// The `‖·‖_∞` branch: the norm is attained at a single coordinate.
    SupLeaf { index: u64 },
    /// A partition family `E_1 < … < E_n` with its penalty factor.
    Partition {
        factor: Scalar,
        children: Vec<(Interval, Witness)>,
    },
}

impl Witness {
    /// Re-evaluates the tree bottom-up on `x`.
    pub fn replay(&self, x: &SparseVector) -> Result<Scalar, WitnessError> {
        self.validate()?;
        self.replay_unchecked(x)
    }

    fn replay_unchecked(&self, x: &SparseVector) -> Result<Scalar, WitnessError> {
        match self {
            Witness::SupLeaf { index } => Ok(x.coeff(*index).abs()),
            Witness::Partition { factor, children } => {
                let mut sum = Scalar::zero(factor.mode());
                for (interval, child) in children {
                    let part = x.restrict(*interval);
                    sum = sum.try_add(&child.replay_unchecked(&part)?)?;
                }
                Ok(factor.try_mul(&sum)?)
            }
        }
    }

    /// Checks that children intervals are pairwise successive, recursively.
    pub fn validate(&self) -> Result<(), WitnessError> {
        if let Witness::Partition { children, .. } = self {
            for (pos, window) in children.windows(2).enumerate() {
                if !window[0].0.precedes(&window[1].0) {
                    return Err(WitnessError::NotSuccessive(pos));
                }
            }
            for (_, child) in children {
                child.validate()?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarMode;

    #[test]
    fn leaf_replay_reads_coefficient() {
        let x = SparseVector::from_entries(
            ScalarMode::Exact,
            [(3, Scalar::ratio(-1, 4).unwrap())],
        )
        .unwrap();
        let w = Witness::SupLeaf { index: 3 };
        assert_eq!(w.replay(&x).unwrap(), Scalar::ratio(1, 4).unwrap());
    }

    #[test]
    fn partition_replay_sums_children() {
        let x = SparseVector::from_entries(
            ScalarMode::Exact,
            [(4, Scalar::int(1)), (6, Scalar::int(1))],
        )
        .unwrap();
        let w = Witness::Partition {
            factor: Scalar::ratio(1, 2).unwrap(),
            children: vec![
                (Interval::new(4, 4).unwrap(), Witness::SupLeaf { index: 4 }),
                (Interval::new(6, 6).unwrap(), Witness::SupLeaf { index: 6 }),
            ],
        };
        assert_eq!(w.replay(&x).unwrap(), Scalar::int(1));
    }

    #[test]
    fn overlapping_children_rejected() {
        let w = Witness::Partition {
            factor: Scalar::ratio(1, 2).unwrap(),
            children: vec![
                (Interval::new(1, 5).unwrap(), Witness::SupLeaf { index: 1 }),
                (Interval::new(5, 6).unwrap(), Witness::SupLeaf { index: 6 }),
            ],
        };
        assert!(matches!(
            w.validate(),
            Err(WitnessError::NotSuccessive(0))
        ));
    }
}
