use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::classes::{ClassLabel, ClassTable};
use crate::error::{Error, Result};
use crate::par;
use crate::sl2::Sl2Element;

/// Commutator fiber size over one representative of every rational class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDistribution {
    pub prime: u32,
    pub labels: Vec<ClassLabel>,
    /// `#{(A, B) : [A,B] = rep}` per class, in table order.
    pub fibers: Vec<u64>,
    pub orbit_sizes: Vec<u64>,
}

impl ClassDistribution {
    /// `#{(A, B) : [A,B] = g} = Σ_A [A^{-1} g ~ A^{-1}] · |C(A)|`: for fixed
    /// `A` the equation reads `B A^{-1} B^{-1} = A^{-1} g`, whose solutions
    /// form a coset of the centralizer when they exist.
    pub fn compute(table: &ClassTable, group: &[Sl2Element]) -> Self {
        let reps = table.representatives();
        let fibers = par::sum_vec(group.len(), reps.len(), |i, acc| {
            let a_inv = group[i].inverse();
            let own = table.class_index(&a_inv);
            let weight = table.centralizer_order(own);
            for (k, g) in reps.iter().enumerate() {
                if table.class_index(&a_inv.mul_raw(g)) == own {
                    acc[k] += weight;
                }
            }
        });
        let n = table.len();
        ClassDistribution {
            prime: table.prime().get(),
            labels: table.labels().to_vec(),
            fibers,
            orbit_sizes: (0..n).map(|i| table.orbit_size(i)).collect(),
        }
    }

    pub fn fiber(&self, index: usize) -> u64 {
        self.fibers[index]
    }

    pub fn fiber_of(&self, label: &ClassLabel) -> Option<u64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.fibers[i])
    }

    /// `Σ_K |K| · fiber(K)`, which must be `|G|^2`.
    pub fn total(&self) -> u128 {
        self.fibers
            .iter()
            .zip(&self.orbit_sizes)
            .map(|(&f, &o)| f as u128 * o as u128)
            .sum()
    }

    pub fn is_consistent(&self) -> bool {
        let p = self.prime as u128;
        let g = p * p * p - p;
        self.labels.len() == self.fibers.len()
            && self.labels.len() == self.orbit_sizes.len()
            && self.total() == g * g
    }

    /// Accepts a distribution (e.g. loaded from disk) only if it describes the
    /// same class layout and passes the total check.
    pub fn validate_against(&self, table: &ClassTable) -> Result<()> {
        let same_layout = self.prime == table.prime().get()
            && self.labels == table.labels()
            && self
                .orbit_sizes
                .iter()
                .enumerate()
                .all(|(i, &o)| o == table.orbit_size(i));
        if !same_layout || !self.is_consistent() {
            return Err(Error::InvalidParameter(alloc::format!(
                "class distribution for p={} does not match the class table",
                self.prime
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Prime, SquareClass};
    use crate::sl2::enumerate_sl2;

    fn dist(p: u32) -> ClassDistribution {
        let table = ClassTable::new(Prime::new(p).unwrap());
        ClassDistribution::compute(&table, &enumerate_sl2(p).unwrap())
    }

    #[test]
    fn totals_are_group_order_squared() {
        for p in [3, 5, 7, 11, 13] {
            assert!(dist(p).is_consistent(), "p={p}");
        }
        assert_eq!(dist(5).total(), 14_400);
    }

    #[test]
    fn small_prime_values() {
        let d5 = dist(5);
        assert_eq!(d5.fiber_of(&ClassLabel::CentralPlus), Some(1080));
        assert_eq!(d5.fiber_of(&ClassLabel::CentralMinus), Some(120));
        assert_eq!(
            d5.fiber_of(&ClassLabel::UnipotentPlus(SquareClass::Square)),
            Some(60)
        );
        assert_eq!(
            d5.fiber_of(&ClassLabel::UnipotentMinus(SquareClass::Square)),
            Some(200)
        );
        let d3 = dist(3);
        assert_eq!(d3.fiber_of(&ClassLabel::CentralPlus), Some(168));
        assert_eq!(
            d3.fiber_of(&ClassLabel::UnipotentPlus(SquareClass::Square)),
            Some(0)
        );
    }

    #[test]
    fn rejects_foreign_layout() {
        let d5 = dist(5);
        let t7 = ClassTable::new(Prime::new(7).unwrap());
        assert!(d5.validate_against(&t7).is_err());
        let mut bad = d5.clone();
        bad.fibers[0] += 1;
        assert!(bad
            .validate_against(&ClassTable::new(Prime::new(5).unwrap()))
            .is_err());
        assert!(d5
            .validate_against(&ClassTable::new(Prime::new(5).unwrap()))
            .is_ok());
    }
}
