//! A First Fit refinement for k = 5: a bin that already holds four items
//! only accepts a fifth if the resulting level reaches 1/2.

use super::{OnlineAlgorithm, OnlineRun};
use crate::error::{Error, Result};
use crate::instance::Packing;
use crate::rational::{rat, Rational};

pub struct Alg5 {
    run: OnlineRun,
}

impl Alg5 {
    pub fn new(k: u32) -> Result<Self> {
        if k != 5 {
            return Err(Error::Unsupported(format!(
                "this algorithm is defined only for k = 5, got k = {k}"
            )));
        }
        Ok(Alg5 { run: OnlineRun::new(5) })
    }
}

impl OnlineAlgorithm for Alg5 {
    fn run(&self) -> &OnlineRun {
        &self.run
    }

    fn place(&mut self, size: Rational) -> usize {
        let one = Rational::one();
        let half = rat(1, 2);
        let mut chosen = self.run.packing.num_bins();
        for (b, bin) in self.run.packing.bins.iter().enumerate() {
            let level = &bin.level + &size;
            if level <= one && bin.count() <= 4 && (bin.count() < 4 || level >= half) {
                chosen = b;
                break;
            }
        }
        self.run.record(size, chosen);
        chosen
    }

    fn into_run(self: Box<Self>) -> OnlineRun {
        self.run
    }
}

/// Checks the level facts this algorithm guarantees: every 5-bin has level
/// at least 1/2, and at most one 2-bin or 3-bin has level below 2/3.
pub fn check_alg5_invariants(packing: &Packing) -> Vec<String> {
    let mut violations = Vec::new();
    let two_thirds = rat(2, 3);
    let half = rat(1, 2);
    let mut low_regular = 0usize;
    for (b, bin) in packing.bins.iter().enumerate() {
        match bin.count() {
            5 if bin.level < half => {
                violations.push(format!("5-bin {b} has level {} < 1/2", bin.level));
            }
            2 | 3 if bin.level < two_thirds => low_regular += 1,
            _ => {}
        }
    }
    if low_regular > 1 {
        violations.push(format!(
            "{low_regular} bins with 2 or 3 items have level < 2/3 (at most 1 allowed)"
        ));
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{run_online, AlgorithmKind};
    use crate::instance::Instance;

    fn groups(run: &OnlineRun) -> Vec<Vec<usize>> {
        run.packing.bins.iter().map(|b| b.items.clone()).collect()
    }

    #[test]
    fn fifth_item_admitted_when_level_reaches_half() {
        let mut alg = Alg5::new(5).unwrap();
        for _ in 0..4 {
            alg.place(rat(1, 10));
        }
        assert_eq!(alg.place(rat(1, 5)), 0);
        assert_eq!(alg.run().packing.bins[0].count(), 5);
    }

    #[test]
    fn fifth_item_deflected_when_level_stays_low() {
        let mut alg = Alg5::new(5).unwrap();
        for _ in 0..4 {
            alg.place(rat(1, 10));
        }
        assert_eq!(alg.place(rat(1, 20)), 1);
        assert!(check_alg5_invariants(&alg.run().packing).is_empty());
    }

    #[test]
    fn matches_ff_without_four_bins() {
        let sizes: Vec<Rational> = [(2, 5), (2, 5), (2, 5), (3, 5), (1, 5)]
            .iter()
            .map(|&(p, q)| rat(p, q))
            .collect();
        let i = Instance::new(5, sizes).unwrap();
        let ff = run_online(AlgorithmKind::Ff, &i).unwrap();
        let alg = run_online(AlgorithmKind::Alg5, &i).unwrap();
        assert!(ff.packing.bins.iter().all(|b| b.count() < 4));
        assert_eq!(groups(&ff), groups(&alg));
    }

    #[test]
    fn rejects_other_k() {
        assert!(Alg5::new(4).is_err());
        assert!(Alg5::new(6).is_err());
    }
}
