//! First Fit: the minimum-index bin with room in both size and count.

use super::{OnlineAlgorithm, OnlineRun};
use crate::instance::Packing;
use crate::rational::Rational;

/// The First Fit choice rule on an arbitrary packing: minimum-index bin
/// with level at most `1 - size` and fewer than `k` items, else a fresh
/// index. Shared with the offline FFD seeding and replay checks.
pub fn ff_choice(packing: &Packing, k: u32, size: &Rational) -> usize {
    let one = Rational::one();
    for (b, bin) in packing.bins.iter().enumerate() {
        if bin.count() < k as usize && &bin.level + size <= one {
            return b;
        }
    }
    packing.num_bins()
}

pub struct FirstFit {
    run: OnlineRun,
}

impl FirstFit {
    pub fn new(k: u32) -> Self {
        FirstFit { run: OnlineRun::new(k) }
    }
}

impl OnlineAlgorithm for FirstFit {
    fn run(&self) -> &OnlineRun {
        &self.run
    }

    fn place(&mut self, size: Rational) -> usize {
        let bin = ff_choice(&self.run.packing, self.run.k, &size);
        self.run.record(size, bin);
        bin
    }

    fn into_run(self: Box<Self>) -> OnlineRun {
        self.run
    }
}
