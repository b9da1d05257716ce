use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sieve::SieveTables;

/// A weight sequence `(w_m)_{m >= 1}` with `|w_m| <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSeq {
    ConstantOne,
    /// Independent signs; a pure function of `(seed, m)`.
    Rademacher { seed: u64 },
    Moebius,
    /// `values[m - 1]` is the weight of `m`.
    Custom(Vec<f64>),
}

impl WeightSeq {
    pub fn custom(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|w| !(w.abs() <= 1.0)) {
            return Err(Error::BadArgument(format!("weight {bad} is not bounded by 1")));
        }
        Ok(WeightSeq::Custom(values))
    }

    pub fn rademacher_sign(seed: u64, m: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_word_pos(u128::from(m));
        if rng.next_u32() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Weights for `m = 1..=len`, stored at index `m - 1`.
    pub fn materialize(&self, len: u64) -> Result<Vec<f64>> {
        Ok(match self {
            WeightSeq::ConstantOne => vec![1.0; len as usize],
            WeightSeq::Rademacher { seed } => {
                (1..=len).map(|m| Self::rademacher_sign(*seed, m)).collect()
            }
            WeightSeq::Moebius => {
                let tables = SieveTables::build(len.max(1))?;
                (1..=len).map(|m| f64::from(tables.mu(m))).collect()
            }
            WeightSeq::Custom(values) => {
                if (values.len() as u64) < len {
                    return Err(Error::BadArgument(format!(
                        "custom weights have {} entries, need {len}",
                        values.len()
                    )));
                }
                values[..len as usize].to_vec()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rademacher_is_reproducible_and_signed() {
        let a = WeightSeq::Rademacher { seed: 7 }.materialize(1000).unwrap();
        let b = WeightSeq::Rademacher { seed: 7 }.materialize(1000).unwrap();
        let c = WeightSeq::Rademacher { seed: 8 }.materialize(1000).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.iter().all(|&w| w == 1.0 || w == -1.0));
        let plus = a.iter().filter(|&&w| w > 0.0).count();
        assert!((400..600).contains(&plus));
        assert_eq!(a[41], WeightSeq::rademacher_sign(7, 42));
    }

    #[test]
    fn moebius_and_constant() {
        assert_eq!(
            WeightSeq::Moebius.materialize(6).unwrap(),
            vec![1.0, -1.0, -1.0, 0.0, -1.0, 1.0]
        );
        assert_eq!(WeightSeq::ConstantOne.materialize(3).unwrap(), vec![1.0; 3]);
        assert!(WeightSeq::ConstantOne.materialize(0).unwrap().is_empty());
    }

    #[test]
    fn custom_validation() {
        assert!(WeightSeq::custom(vec![0.5, -1.0]).is_ok());
        assert!(WeightSeq::custom(vec![1.5]).is_err());
        assert!(WeightSeq::custom(vec![f64::NAN]).is_err());
        let w = WeightSeq::custom(vec![0.5, -1.0]).unwrap();
        assert!(w.materialize(3).is_err());
        assert_eq!(w.materialize(1).unwrap(), vec![0.5]);
    }
}
