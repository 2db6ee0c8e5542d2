//! Exact optimum for small instances via depth-first branch and bound,
//! plus the first-fit-decreasing upper bound used to seed it.

use crate::algorithms::ff_choice;
use crate::instance::{trivial_lower_bound, Certificate, Claim, Instance, Packing};
use crate::rational::Rational;
use std::collections::HashSet;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Result of `exact_opt`: either a proven optimum or the best packing
/// found before the node budget ran out.
#[derive(Clone, Debug)]
pub enum OptResult {
    Exact(Certificate),
    BudgetExceeded(Certificate),
}

impl OptResult {
    pub fn certificate(&self) -> &Certificate {
        match self {
            OptResult::Exact(c) | OptResult::BudgetExceeded(c) => c,
        }
    }

    pub fn count(&self) -> usize {
        self.certificate().claimed_count
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, OptResult::Exact(_))
    }
}

/// First fit decreasing: items sorted by non-increasing size (ties by
/// arrival index), each packed by the First Fit rule.
pub fn best_known_upper(instance: &Instance) -> Certificate {
    let order = sorted_order(instance);
    let mut packing = Packing::new();
    for &item in &order {
        let size = &instance.sizes[item];
        let bin = ff_choice(&packing, instance.k, size);
        packing.place(bin, item, size);
    }
    Certificate::new(packing, Claim::FeasibleUpperBound)
}

fn sorted_order(instance: &Instance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..instance.len()).collect();
    order.sort_by(|&a, &b| {
        instance.sizes[b]
            .cmp(&instance.sizes[a])
            .then(a.cmp(&b))
    });
    order
}

struct Search<'a> {
    instance: &'a Instance,
    order: Vec<usize>,
    /// suffix_size[i] = total size of items order[i..]
    suffix_size: Vec<Rational>,
    budget: u64,
    nodes: u64,
    best: Packing,
    current: Packing,
}

impl Search<'_> {
    /// A bin count no completion of the current partial packing can beat:
    /// open-bin slack is credited against both the remaining size and the
    /// remaining item count before rounding up.
    fn completion_bound(&self, depth: usize) -> usize {
        let used = self.current.num_bins();
        let k = self.instance.k as usize;
        let rem_items = self.order.len() - depth;
        if rem_items == 0 {
            return used;
        }

        let mut size_slack = Rational::zero();
        let mut count_slack = 0usize;
        for bin in &self.current.bins {
            if bin.count() < k {
                size_slack = size_slack + (Rational::one() - &bin.level);
                count_slack += k - bin.count();
            }
        }

        let size_overflow = &self.suffix_size[depth] - &size_slack;
        let by_size = if size_overflow.is_positive() {
            size_overflow.ceil_usize()
        } else {
            0
        };
        let by_count = rem_items.saturating_sub(count_slack).div_ceil(k);
        used + by_size.max(by_count)
    }

    /// Depth-first search; returns false when the budget runs out.
    fn dfs(&mut self, depth: usize) -> bool {
        if self.nodes >= self.budget {
            return false;
        }
        self.nodes += 1;

        if depth == self.order.len() {
            if self.current.num_bins() < self.best.num_bins() {
                self.best = self.current.clone();
            }
            return true;
        }
        if self.completion_bound(depth) >= self.best.num_bins() {
            return true;
        }

        let item = self.order[depth];
        let size = self.instance.sizes[item].clone();
        let k = self.instance.k as usize;
        let one = Rational::one();

        // one branch per (level, count) class of existing bins, then a new bin
        let mut seen: HashSet<(Rational, usize)> = HashSet::new();
        let mut complete = true;
        for b in 0..self.current.num_bins() {
            let bin = &self.current.bins[b];
            if bin.count() >= k || &bin.level + &size > one {
                continue;
            }
            if !seen.insert((bin.level.clone(), bin.count())) {
                continue;
            }
            self.current.bins[b].push(item, &size);
            complete &= self.dfs(depth + 1);
            let undone = self.current.bins[b].items.pop();
            debug_assert_eq!(undone, Some(item));
            self.current.bins[b].level = &self.current.bins[b].level - &size;
            if !complete {
                return false;
            }
        }

        self.current.place(self.current.num_bins(), item, &size);
        complete &= self.dfs(depth + 1);
        self.current.bins.pop();
        complete
    }
}

/// Minimum bin count with a certificate packing, by branch and bound over
/// items in non-increasing size order. Returns `BudgetExceeded` with the
/// incumbent when more than `node_budget` search nodes would be needed.
pub fn exact_opt(instance: &Instance, node_budget: u64) -> OptResult {
    let seed = best_known_upper(instance);
    let lower = trivial_lower_bound(instance);
    if seed.claimed_count <= lower {
        return OptResult::Exact(Certificate::new(seed.packing, Claim::Optimal));
    }

    let order = sorted_order(instance);
    let mut suffix_size = vec![Rational::zero(); order.len() + 1];
    for i in (0..order.len()).rev() {
        suffix_size[i] = &suffix_size[i + 1] + &instance.sizes[order[i]];
    }

    let mut search = Search {
        instance,
        order,
        suffix_size,
        budget: node_budget,
        nodes: 0,
        best: seed.packing,
        current: Packing::new(),
    };
    let complete = search.dfs(0);
    let cert = Certificate::new(
        search.best,
        if complete { Claim::Optimal } else { Claim::FeasibleUpperBound },
    );
    if complete {
        OptResult::Exact(cert)
    } else {
        OptResult::BudgetExceeded(cert)
    }
}
