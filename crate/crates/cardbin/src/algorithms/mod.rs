//! Online packing algorithms behind one irrevocable-placement contract,
//! plus replay-based structural checks on First Fit output.

mod alg5;
mod first_fit;
mod harmonic;
mod thin_fat;

pub use alg5::{check_alg5_invariants, Alg5};
pub use first_fit::{ff_choice, FirstFit};
pub use harmonic::{check_harmonic_fill, Harmonic};
pub use thin_fat::{check_tf_invariants, TfState, ThinFat};

use crate::error::{Error, Result};
use crate::instance::{Instance, Packing};
use crate::rational::{rat, Rational};

/// A completed (or in-progress) online run: the items seen so far, the
/// packing built, and the bin chosen for each item in arrival order.
#[derive(Clone, Debug)]
pub struct OnlineRun {
    pub k: u32,
    pub sizes: Vec<Rational>,
    pub packing: Packing,
    pub trace: Vec<usize>,
}

impl OnlineRun {
    pub fn new(k: u32) -> Self {
        OnlineRun { k, sizes: Vec::new(), packing: Packing::new(), trace: Vec::new() }
    }

    /// Commits item `size` to bin `bin`, which must be an existing bin or
    /// the next fresh index.
    pub(crate) fn record(&mut self, size: Rational, bin: usize) {
        assert!(bin <= self.packing.num_bins(), "placement skipped a bin index");
        let item = self.sizes.len();
        self.packing.place(bin, item, &size);
        self.sizes.push(size);
        self.trace.push(bin);
    }

    pub fn num_bins(&self) -> usize {
        self.packing.num_bins()
    }
}

/// One item at a time, irrevocably. `place` returns the chosen bin index;
/// an index equal to the current bin count opens a new bin.
pub trait OnlineAlgorithm {
    fn run(&self) -> &OnlineRun;
    fn place(&mut self, size: Rational) -> usize;
    fn into_run(self: Box<Self>) -> OnlineRun;
}

/// Name tokens used to select an algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgorithmKind {
    Ff,
    Harmonic,
    Tf,
    Alg5,
}

impl AlgorithmKind {
    pub fn from_token(token: &str) -> Result<Self> {
        match token {
            "ff" => Ok(AlgorithmKind::Ff),
            "harmonic" => Ok(AlgorithmKind::Harmonic),
            "tf" => Ok(AlgorithmKind::Tf),
            "alg5" => Ok(AlgorithmKind::Alg5),
            other => Err(Error::Parameter(format!(
                "unknown algorithm `{other}` (expected ff, harmonic, tf, or alg5)"
            ))),
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            AlgorithmKind::Ff => "ff",
            AlgorithmKind::Harmonic => "harmonic",
            AlgorithmKind::Tf => "tf",
            AlgorithmKind::Alg5 => "alg5",
        }
    }

    pub fn build(&self, k: u32) -> Result<Box<dyn OnlineAlgorithm>> {
        if k < 2 {
            return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
        }
        Ok(match self {
            AlgorithmKind::Ff => Box::new(FirstFit::new(k)),
            AlgorithmKind::Harmonic => Box::new(Harmonic::new(k)),
            AlgorithmKind::Tf => Box::new(ThinFat::new(k)),
            AlgorithmKind::Alg5 => Box::new(Alg5::new(k)?),
        })
    }
}

/// Feeds a whole instance through an algorithm and returns the finished run.
pub fn run_online(kind: AlgorithmKind, instance: &Instance) -> Result<OnlineRun> {
    let mut alg = kind.build(instance.k)?;
    for size in &instance.sizes {
        alg.place(size.clone());
    }
    Ok(alg.into_run())
}

/// Serializes a run's trace as `place <item> -> <bin>` lines.
pub fn write_trace(run: &OnlineRun) -> String {
    let mut out = String::new();
    for (item, &bin) in run.trace.iter().enumerate() {
        out.push_str(&format!("place {item} -> {bin}\n"));
    }
    out
}

/// Runs First Fit over `instance` and checks that the result equals
/// `packing` bin for bin. Used by the structural checks, which are only
/// meaningful on genuine First Fit output.
pub fn replay_ff(instance: &Instance, packing: &Packing) -> Result<OnlineRun> {
    let run = run_online(AlgorithmKind::Ff, instance)?;
    if &run.packing != packing {
        return Err(Error::InconsistentInput(
            "packing is not First Fit's output on this instance".into(),
        ));
    }
    Ok(run)
}

/// Reorders the items so that, under First Fit, all k-bins come first and
/// all 1-bins come last, without changing the bin count. `ff_packing` must
/// be First Fit's output on `instance`.
pub fn reorder_for_ff(instance: &Instance, ff_packing: &Packing) -> Result<Instance> {
    replay_ff(instance, ff_packing)?;

    let k = instance.k as usize;
    let owner = ff_packing.bin_of_items(instance.len())?;
    let mut front = Vec::new();
    let mut middle = Vec::new();
    let mut back = Vec::new();
    for (item, bin) in owner.iter().enumerate() {
        let bin = bin.expect("replayed packing covers every item");
        let count = ff_packing.bins[bin].count();
        let dest = if count == k {
            &mut front
        } else if count == 1 {
            &mut back
        } else {
            &mut middle
        };
        dest.push(instance.sizes[item].clone());
    }
    front.extend(middle);
    front.extend(back);
    Instance::new(instance.k, front)
}

/// Outcome of `check_ff_structure`.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Structural facts about First Fit output relative to an optimal packing:
/// (a) no certificate bin holds two items that First Fit put in 1-bins;
/// (b) for each j in 1..k, at most one First Fit j-bin has level at or
/// below j/(j+1), and likewise at most one bin with j to k-1 items.
pub fn check_ff_structure(
    instance: &Instance,
    ff_packing: &Packing,
    certificate: &Packing,
) -> Result<StructureReport> {
    replay_ff(instance, ff_packing)?;

    let mut violations = Vec::new();
    let k = instance.k as usize;

    let in_one_bin: Vec<bool> = {
        let owner = ff_packing.bin_of_items(instance.len())?;
        owner
            .iter()
            .map(|b| ff_packing.bins[b.unwrap()].count() == 1)
            .collect()
    };
    for (b, bin) in certificate.bins.iter().enumerate() {
        let hits = bin.items.iter().filter(|&&i| in_one_bin[i]).count();
        if hits > 1 {
            violations.push(format!(
                "certificate bin {b} holds {hits} items from 1-bins (at most 1 allowed)"
            ));
        }
    }

    for j in 1..k {
        let threshold = rat(j as i64, j as i64 + 1);
        let low_exact = ff_packing
            .bins
            .iter()
            .filter(|bin| bin.count() == j && bin.level <= threshold)
            .count();
        if low_exact > 1 {
            violations.push(format!(
                "{low_exact} bins with exactly {j} items have level <= {j}/{} (at most 1 allowed)",
                j + 1
            ));
        }
        let low_at_least = ff_packing
            .bins
            .iter()
            .filter(|bin| (j..k).contains(&bin.count()) && bin.level <= threshold)
            .count();
        if low_at_least > 1 {
            violations.push(format!(
                "{low_at_least} bins with {j} to {} items have level <= {j}/{} (at most 1 allowed)",
                k - 1,
                j + 1
            ));
        }
    }

    Ok(StructureReport { ok: violations.is_empty(), violations })
}

/// Verifies the replay property recoverable from a trace alone: when an item
/// went to bin b, every earlier bin was full in count or too full in size.
pub fn check_ff_minimality(run: &OnlineRun) -> Vec<String> {
    let k = run.k as usize;
    let mut violations = Vec::new();
    let mut levels: Vec<Rational> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for (item, &bin) in run.trace.iter().enumerate() {
        let size = &run.sizes[item];
        for earlier in 0..bin {
            let fits = counts[earlier] < k && &levels[earlier] + size <= Rational::one();
            if fits {
                violations.push(format!(
                    "item {item} went to bin {bin} but bin {earlier} had room"
                ));
            }
        }
        if bin == levels.len() {
            levels.push(Rational::zero());
            counts.push(0);
        }
        levels[bin] = &levels[bin] + size;
        counts[bin] += 1;
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Packing;

    fn inst(k: u32, sizes: &[(i64, i64)]) -> Instance {
        Instance::new(k, sizes.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    fn groups(run: &OnlineRun) -> Vec<Vec<usize>> {
        run.packing.bins.iter().map(|b| b.items.clone()).collect()
    }

    #[test]
    fn ff_cardinality_blocks_third_half() {
        let i = inst(2, &[(1, 2), (1, 2), (1, 2)]);
        let run = run_online(AlgorithmKind::Ff, &i).unwrap();
        assert_eq!(groups(&run), vec![vec![0, 1], vec![2]]);
        assert!(check_ff_minimality(&run).is_empty());
    }

    #[test]
    fn replay_detects_foreign_packings() {
        let i = inst(2, &[(1, 2), (1, 2), (1, 2)]);
        let other = Packing::from_groups(&i, vec![vec![0, 2], vec![1]]).unwrap();
        assert!(replay_ff(&i, &other).is_err());
    }

    #[test]
    fn reorder_preserves_bin_count() {
        // 1-bin item arrives first; the reorder must push it to the back.
        let i = inst(2, &[(2, 3), (1, 2), (1, 2)]);
        let ff = run_online(AlgorithmKind::Ff, &i).unwrap();
        let reordered = reorder_for_ff(&i, &ff.packing).unwrap();
        let ff2 = run_online(AlgorithmKind::Ff, &reordered).unwrap();
        assert_eq!(ff2.num_bins(), ff.num_bins());
        // last item in the new order is the one First Fit isolates
        let last = reordered.sizes.last().unwrap();
        let last_bin = *ff2.trace.last().unwrap();
        assert_eq!(ff2.packing.bins[last_bin].count(), 1, "last item {last} not isolated");
    }

    #[test]
    fn reorder_identity_when_sorted_already() {
        let i = inst(2, &[(1, 2), (1, 2), (1, 2)]);
        let ff = run_online(AlgorithmKind::Ff, &i).unwrap();
        let reordered = reorder_for_ff(&i, &ff.packing).unwrap();
        assert_eq!(reordered.sizes, i.sizes);
    }

    #[test]
    fn structure_check_passes_two_singletons() {
        let i = inst(2, &[(3, 5), (3, 5)]);
        let ff = run_online(AlgorithmKind::Ff, &i).unwrap();
        let cert = Packing::from_groups(&i, vec![vec![0], vec![1]]).unwrap();
        let report = check_ff_structure(&i, &ff.packing, &cert).unwrap();
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn trace_serialization() {
        let i = inst(2, &[(1, 2), (1, 2), (1, 2)]);
        let run = run_online(AlgorithmKind::Ff, &i).unwrap();
        assert_eq!(write_trace(&run), "place 0 -> 0\nplace 1 -> 0\nplace 2 -> 1\n");
    }

    #[test]
    fn tokens_round_trip() {
        for t in ["ff", "harmonic", "tf", "alg5"] {
            assert_eq!(AlgorithmKind::from_token(t).unwrap().token(), t);
        }
        assert!(AlgorithmKind::from_token("bfd").is_err());
        assert!(AlgorithmKind::Alg5.build(4).is_err());
    }
}
