//! The instance/packing data model and feasibility validation.
//!
//! An instance is a cardinality bound `k` plus an arrival-ordered list of
//! item sizes. Item identity is the arrival index; equal sizes are distinct
//! items. A packing partitions the item indices into bins, each bin limited
//! to total size 1 and at most `k` items.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A problem instance: cardinality bound plus arrival-ordered item sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub k: u32,
    pub sizes: Vec<Rational>,
}

impl Instance {
    /// Builds an instance, rejecting `k < 2` and sizes outside `(0, 1]`.
    pub fn new(k: u32, sizes: Vec<Rational>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
        }
        for (i, s) in sizes.iter().enumerate() {
            if !s.is_positive() {
                return Err(Error::Parameter(format!("item {i} has non-positive size {s}")));
            }
            if s > &Rational::one() {
                return Err(Error::Parameter(format!("item {i} has size {s} > 1")));
            }
        }
        Ok(Instance { k, sizes })
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn total_size(&self) -> Rational {
        self.sizes.iter().sum()
    }
}

/// A bin: the item indices it holds plus their cached total size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bin {
    pub items: Vec<usize>,
    pub level: Rational,
}

impl Bin {
    pub fn new() -> Self {
        Bin { items: Vec::new(), level: Rational::zero() }
    }

    pub fn count(&self) -> usize {
        self.items.len()
    }

    pub fn push(&mut self, item: usize, size: &Rational) {
        self.items.push(item);
        self.level = &self.level + size;
    }
}

impl Default for Bin {
    fn default() -> Self {
        Self::new()
    }
}

/// An ordered sequence of bins. For online algorithms the order is bin
/// creation order, which is the ordering all First Fit arguments rely on.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Packing {
    pub bins: Vec<Bin>,
}

impl Packing {
    pub fn new() -> Self {
        Packing { bins: Vec::new() }
    }

    /// Builds a packing from item-index groups, computing levels from the instance.
    pub fn from_groups(instance: &Instance, groups: Vec<Vec<usize>>) -> Result<Self> {
        let mut bins = Vec::with_capacity(groups.len());
        for group in groups {
            let mut bin = Bin::new();
            for item in group {
                let size = instance.sizes.get(item).ok_or_else(|| {
                    Error::MalformedPacking(format!(
                        "item index {item} out of range (n={})",
                        instance.len()
                    ))
                })?;
                bin.push(item, size);
            }
            bins.push(bin);
        }
        Ok(Packing { bins })
    }

    pub fn num_bins(&self) -> usize {
        self.bins.len()
    }

    /// Places `item` into bin `bin_idx`, opening a new bin when
    /// `bin_idx == self.bins.len()`.
    pub fn place(&mut self, bin_idx: usize, item: usize, size: &Rational) {
        if bin_idx == self.bins.len() {
            self.bins.push(Bin::new());
        }
        self.bins[bin_idx].push(item, size);
    }

    /// For each item index, the bin that holds it. Errors on out-of-range
    /// indices; duplicates and gaps are reported by `validate_packing`.
    pub fn bin_of_items(&self, n: usize) -> Result<Vec<Option<usize>>> {
        let mut owner = vec![None; n];
        for (b, bin) in self.bins.iter().enumerate() {
            for &item in &bin.items {
                if item >= n {
                    return Err(Error::MalformedPacking(format!(
                        "item index {item} out of range (n={n})"
                    )));
                }
                owner[item] = Some(b);
            }
        }
        Ok(owner)
    }
}

/// What a certificate asserts about its packing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Optimal,
    FeasibleUpperBound,
}

/// A feasible packing attached to an instance as a proof of an upper bound
/// on OPT (or of OPT itself).
#[derive(Clone, Debug)]
pub struct Certificate {
    pub packing: Packing,
    pub claim: Claim,
    pub claimed_count: usize,
}

impl Certificate {
    pub fn new(packing: Packing, claim: Claim) -> Self {
        let claimed_count = packing.num_bins();
        Certificate { packing, claim, claimed_count }
    }
}

/// Outcome of `validate_packing`.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Checks that `packing` is a feasible packing of `instance`: the bins
/// partition `{0..n-1}`, every level is at most 1, and every count is at
/// most `k`. Out-of-range indices are a malformed-packing error rather
/// than a violation.
pub fn validate_packing(instance: &Instance, packing: &Packing) -> Result<ValidationReport> {
    let n = instance.len();
    let mut violations = Vec::new();
    let mut seen = vec![0usize; n];

    for (b, bin) in packing.bins.iter().enumerate() {
        let mut level = Rational::zero();
        for &item in &bin.items {
            if item >= n {
                return Err(Error::MalformedPacking(format!(
                    "bin {b} references item {item}, but the instance has {n} items"
                )));
            }
            seen[item] += 1;
            level = level + &instance.sizes[item];
        }
        if bin.level != level {
            violations.push(format!(
                "bin {b}: stored level {} differs from item total {level}",
                bin.level
            ));
        }
        if level > Rational::one() {
            violations.push(format!("bin {b}: level {level} > 1"));
        }
        if bin.count() > instance.k as usize {
            violations.push(format!("bin {b}: count {} > k={}", bin.count(), instance.k));
        }
    }

    for (item, &times) in seen.iter().enumerate() {
        match times {
            0 => violations.push(format!("item {item} is not packed")),
            1 => {}
            _ => violations.push(format!("item {item} is packed {times} times")),
        }
    }

    Ok(ValidationReport { ok: violations.is_empty(), violations })
}

/// `max(ceil(total size), ceil(n/k))`: a bin count no feasible packing can beat.
pub fn trivial_lower_bound(instance: &Instance) -> usize {
    let by_size = instance.total_size().ceil_usize();
    let n = instance.len();
    let k = instance.k as usize;
    let by_count = n.div_ceil(k);
    by_size.max(by_count)
}
