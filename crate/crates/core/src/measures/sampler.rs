use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{aut_order_unchecked, limit_normalizer, MeasureParams};
use crate::error::{Error, Result};
use crate::exactnum::{int, pow, to_f64, BigRational};
use crate::partitions::{enumerate_size, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    /// Largest partition size the sampler will enumerate.
    pub size_cap: u32,
    /// Explicit factors in the normalising product.
    pub truncation: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            size_cap: 40,
            truncation: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SampleOutcome {
    Partition(Partition),
    /// The draw landed in the unenumerated remainder of the measure.
    Overflow,
}

#[derive(Debug, Clone)]
pub struct SampleRun {
    pub draws: Vec<SampleOutcome>,
    /// Enumerated outcomes with the certified lower bound on their mass.
    pub table: Vec<(Partition, BigRational)>,
    /// Mass assigned to [`SampleOutcome::Overflow`]: `1 - sum(table)`.
    pub overflow_mass: BigRational,
}

impl SampleRun {
    pub fn overflow_count(&self) -> usize {
        self.draws.iter().filter(|d| **d == SampleOutcome::Overflow).count()
    }
}

/// Inverse-CDF sampling from the (deformed) limit measure.
///
/// Partitions are enumerated by size until the lower bounds on their masses
/// add up to at least `1 - tail_epsilon`; the rest of the unit interval maps
/// to [`SampleOutcome::Overflow`].
pub fn sample(
    params: &MeasureParams,
    count: usize,
    seed: u64,
    tail_epsilon: &BigRational,
    config: SamplerConfig,
) -> Result<SampleRun> {
    if tail_epsilon <= &BigRational::zero() {
        return Err(Error::InvalidParameter("tail epsilon must be positive".into()));
    }
    // a 128-bit lower bound keeps the rationals small; masses stay lower bounds
    let norm = limit_normalizer(params, config.truncation)?.round_outward(128);
    let q = int(params.q as i64);
    let target = BigRational::one() - tail_epsilon;
    let mut table = Vec::new();
    let mut total = BigRational::zero();
    let mut size = 0;
    while total < target {
        if size > config.size_cap {
            return Err(Error::SizeCapExceeded(config.size_cap));
        }
        let mut level = Vec::new();
        enumerate_size(params.family.support(), size, &mut level);
        let scale = norm.lo() * pow(&params.u, size as i64);
        for l in level {
            let mass = &scale / aut_order_unchecked(params.family, &l, &q);
            total += &mass;
            table.push((l, mass));
        }
        size += 1;
    }
    let overflow_mass = BigRational::one() - &total;

    let mut cumulative = Vec::with_capacity(table.len());
    let mut acc = BigRational::zero();
    for (_, m) in &table {
        acc += m;
        cumulative.push(to_f64(&acc));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = (0..count)
        .map(|_| {
            let r: f64 = rng.gen();
            match cumulative.partition_point(|&c| c <= r) {
                i if i < table.len() => SampleOutcome::Partition(table[i].0.clone()),
                _ => SampleOutcome::Overflow,
            }
        })
        .collect();
    Ok(SampleRun {
        draws,
        table,
        overflow_mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use crate::measures::Family;

    #[test]
    fn point_mass_at_zero_deformation() {
        let params = MeasureParams::new(Family::Gl, 2).with_u(int(0));
        let run = sample(&params, 500, 7, &ratio(1, 1000), SamplerConfig::default()).unwrap();
        assert!(run.draws.iter().all(|d| *d == SampleOutcome::Partition(Partition::empty())));
        assert!(run.overflow_mass.is_zero());
    }

    #[test]
    fn same_seed_same_draws() {
        let params = MeasureParams::new(Family::Sp, 3);
        let eps = ratio(1, 1_000_000);
        let a = sample(&params, 200, 42, &eps, SamplerConfig::default()).unwrap();
        let b = sample(&params, 200, 42, &eps, SamplerConfig::default()).unwrap();
        assert_eq!(a.draws, b.draws);
        let c = sample(&params, 200, 43, &eps, SamplerConfig::default()).unwrap();
        assert_ne!(a.draws, c.draws);
    }

    #[test]
    fn overflow_mass_is_reported() {
        let params = MeasureParams::new(Family::Gl, 2);
        let run = sample(&params, 10, 1, &ratio(1, 4), SamplerConfig::default()).unwrap();
        assert!(run.overflow_mass > BigRational::zero());
        assert!(run.overflow_mass <= ratio(1, 4));
    }

    #[test]
    fn size_cap_is_enforced() {
        let params = MeasureParams::new(Family::Gl, 2);
        let config = SamplerConfig {
            size_cap: 3,
            ..SamplerConfig::default()
        };
        assert_eq!(
            sample(&params, 1, 0, &ratio(1, 1_000_000_000), config).unwrap_err(),
            Error::SizeCapExceeded(3)
        );
    }

    #[test]
    fn rejects_nonpositive_epsilon() {
        let params = MeasureParams::new(Family::Gl, 2);
        assert!(sample(&params, 1, 0, &int(0), SamplerConfig::default()).is_err());
    }
}
