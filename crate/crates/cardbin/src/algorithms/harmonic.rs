//! Harmonic: items are split into k size classes packed independently.
//!
//! Class l covers (1/(l+1), 1/l] for l < k; class k covers (0, 1/k].
//! Each class keeps one open bin, closed after its l-th item.

use super::{OnlineAlgorithm, OnlineRun};
use crate::rational::{rat, Rational};

pub struct Harmonic {
    run: OnlineRun,
    /// Open bin per class, indexed by class - 1.
    open: Vec<Option<usize>>,
}

impl Harmonic {
    pub fn new(k: u32) -> Self {
        Harmonic { run: OnlineRun::new(k), open: vec![None; k as usize] }
    }

    /// Class of a size in (0, 1]: floor(1/size) capped at k.
    fn class(&self, size: &Rational) -> usize {
        let inv = Rational::one() / size;
        let floor = inv.floor();
        let k = self.run.k as usize;
        if floor >= num::BigInt::from(k) {
            k
        } else {
            use num::ToPrimitive;
            floor.to_usize().expect("class fits usize")
        }
    }
}

impl OnlineAlgorithm for Harmonic {
    fn run(&self) -> &OnlineRun {
        &self.run
    }

    fn place(&mut self, size: Rational) -> usize {
        let class = self.class(&size);
        let bin = match self.open[class - 1] {
            Some(b) => b,
            None => {
                let b = self.run.packing.num_bins();
                self.open[class - 1] = Some(b);
                b
            }
        };
        self.run.record(size, bin);
        if self.run.packing.bins[bin].count() == class {
            self.open[class - 1] = None;
        }
        bin
    }

    fn into_run(self: Box<Self>) -> OnlineRun {
        self.run
    }
}

/// Checks that every closed class-l bin got exactly l items: counts other
/// than the class are only allowed in the final (still open) bin per class.
pub fn check_harmonic_fill(run: &OnlineRun) -> Vec<String> {
    let k = run.k as usize;
    let mut violations = Vec::new();
    // reconstruct each bin's class from its first item
    let mut last_of_class = vec![None; k + 1];
    let mut class_of_bin = vec![0usize; run.packing.num_bins()];
    for (b, bin) in run.packing.bins.iter().enumerate() {
        let first = &run.sizes[bin.items[0]];
        let inv = Rational::one() / first;
        let class = (inv.floor().min(num::BigInt::from(k)))
            .try_into()
            .unwrap_or(k);
        class_of_bin[b] = class;
        last_of_class[class] = Some(b);
    }
    for (b, bin) in run.packing.bins.iter().enumerate() {
        let class = class_of_bin[b];
        if bin.count() != class && last_of_class[class] != Some(b) {
            violations.push(format!(
                "closed class-{class} bin {b} holds {} items",
                bin.count()
            ));
        }
        let ub = rat(1, class as i64);
        let lb = if class < k { Some(rat(1, class as i64 + 1)) } else { None };
        for &item in &bin.items {
            let s = &run.sizes[item];
            let in_class = s <= &ub && lb.as_ref().map_or(true, |l| s > l);
            if !in_class {
                violations.push(format!("item {item} of size {s} landed in a class-{class} bin"));
            }
        }
    }
    violations
}
