//! Amortized weight-function verifiers for First Fit.
//!
//! Each k-regime defines item weights so that First Fit bins carry weight
//! close to 1 while optimal bins cannot exceed a fixed cap. Verifying both
//! sides on a concrete instance mechanically checks the competitive bound
//! on that instance: FF bins - slack <= total weight <= cap * OPT bins.

use crate::algorithms::replay_ff;
use crate::error::{Error, Result};
use crate::instance::{Instance, Packing};
use crate::rational::{rat, Rational};

/// How an item is charged by the accounting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItemRole {
    /// packed by First Fit into a bin with k items
    Alpha,
    /// any non-alpha item in the regimes for k <= 8
    Additional,
    /// largest non-alpha item of an optimal bin with one or two such items
    Gamma1,
    /// the other non-alpha item of such a bin
    Gamma2,
    /// non-alpha item of an optimal bin with at least three of them
    Phi,
}

fn check_covering(instance: &Instance, packing: &Packing, what: &str) -> Result<Vec<usize>> {
    let owner = packing.bin_of_items(instance.len())?;
    let mut out = Vec::with_capacity(owner.len());
    let covered: usize = packing.bins.iter().map(|b| b.count()).sum();
    if covered != instance.len() {
        return Err(Error::InconsistentInput(format!(
            "{what} covers {covered} items but the instance has {}",
            instance.len()
        )));
    }
    for (item, bin) in owner.into_iter().enumerate() {
        match bin {
            Some(b) => out.push(b),
            None => {
                return Err(Error::InconsistentInput(format!(
                    "{what} does not pack item {item}"
                )))
            }
        }
    }
    Ok(out)
}

/// Assigns a role to every item: alpha for items in First Fit k-bins, and
/// for k >= 9 the remaining items are split into gamma and phi roles by
/// how many of them share an optimal bin. Ties for the largest gamma item
/// go to the earliest arrival.
pub fn assign_roles(
    k: u32,
    instance: &Instance,
    ff_packing: &Packing,
    opt_certificate: &Packing,
) -> Result<Vec<ItemRole>> {
    let ff_owner = check_covering(instance, ff_packing, "algorithm packing")?;
    let opt_owner = check_covering(instance, opt_certificate, "certificate")?;

    let k_us = k as usize;
    let mut roles: Vec<ItemRole> = ff_owner
        .iter()
        .map(|&b| {
            if ff_packing.bins[b].count() == k_us {
                ItemRole::Alpha
            } else {
                ItemRole::Additional
            }
        })
        .collect();
    if k <= 8 {
        return Ok(roles);
    }

    let mut additional_by_bin: Vec<Vec<usize>> = vec![Vec::new(); opt_certificate.num_bins()];
    for (item, &b) in opt_owner.iter().enumerate() {
        if roles[item] == ItemRole::Additional {
            additional_by_bin[b].push(item);
        }
    }
    for members in additional_by_bin {
        match members.len() {
            0 => {}
            1 | 2 => {
                let largest = *members
                    .iter()
                    .max_by(|&&a, &&b| {
                        instance.sizes[a]
                            .cmp(&instance.sizes[b])
                            .then(b.cmp(&a))
                    })
                    .unwrap();
                for item in members {
                    roles[item] = if item == largest { ItemRole::Gamma1 } else { ItemRole::Gamma2 };
                }
            }
            _ => {
                for item in members {
                    roles[item] = ItemRole::Phi;
                }
            }
        }
    }
    Ok(roles)
}

/// The bonus part of the weight of an additional (k in 6..=8) or phi
/// (k >= 9) item of size at most 1/2.
pub fn bonus(k: u32, a: &Rational) -> Result<Rational> {
    if !a.is_positive() || a > &rat(1, 2) {
        return Err(Error::Parameter(format!("bonus is defined on (0, 1/2], got {a}")));
    }
    let kk = k as i64;
    let value = match k {
        6..=8 => {
            let slope = rat(2 * (2 * kk - 11), 3 * kk);
            if a <= &rat(1, 6) {
                Rational::zero()
            } else if a <= &rat(1, 4) {
                slope * a + rat(7 - kk, 3 * kk)
            } else if a <= &rat(1, 3) {
                slope * a + rat(10 - kk, 3 * kk)
            } else {
                rat(2, kk)
            }
        }
        9 => {
            if a <= &rat(1, 6) {
                Rational::zero()
            } else if a <= &rat(1, 5) {
                rat(32, 27) * a - rat(5, 27)
            } else if a <= &rat(1, 4) {
                rat(-28, 27) * a + rat(7, 27)
            } else if a <= &rat(3, 10) {
                rat(-28, 27) * a + rat(10, 27)
            } else if a <= &rat(1, 3) {
                rat(32, 27) * a - rat(8, 27)
            } else {
                rat(1, 9)
            }
        }
        10..=19 => {
            let mid_slope = rat(8, 5) - rat(20, kk);
            if a <= &rat(1, 6) {
                Rational::zero()
            } else if a <= &rat(1, 5) {
                rat(3, 5) * a - rat(1, 10)
            } else if a <= &rat(1, 4) {
                &mid_slope * a - rat(3, 10) + rat(4, kk)
            } else if a <= &rat(3, 10) {
                &mid_slope * a - rat(2, 5) + rat(6, kk)
            } else if a <= &rat(1, 3) {
                rat(3, 5) * a - rat(1, 10)
            } else {
                rat(1, 10)
            }
        }
        k if k >= 20 => {
            if a <= &rat(1, 6) {
                Rational::zero()
            } else if a <= &rat(1, 3) {
                rat(3, 5) * a - rat(1, 10)
            } else {
                rat(1, 10)
            }
        }
        _ => {
            return Err(Error::UnsupportedRegime(format!(
                "no bonus function for k={k}"
            )))
        }
    };
    Ok(value)
}

/// Exact weight of an item under the regime for `k`.
pub fn item_weight(k: u32, role: ItemRole, size: &Rational) -> Result<Rational> {
    if !size.is_positive() || size > &Rational::one() {
        return Err(Error::Parameter(format!("size must lie in (0, 1], got {size}")));
    }
    let kk = k as i64;
    let half = rat(1, 2);
    let mismatch = || {
        Err(Error::Parameter(format!(
            "role {role:?} does not occur in the k={k} regime"
        )))
    };
    match k {
        2 => match role {
            ItemRole::Alpha => Ok(rat(1, 2)),
            ItemRole::Additional => Ok(Rational::one()),
            _ => mismatch(),
        },
        3 => Err(Error::UnsupportedRegime(
            "k=3 is handled only by the dedicated case-1 verifier".into(),
        )),
        4 => match role {
            // pure size weights; this regime has no alpha accounting
            ItemRole::Alpha | ItemRole::Additional => {
                if size > &half {
                    Ok(Rational::one())
                } else if size > &rat(1, 4) {
                    Ok(rat(1, 2))
                } else {
                    Ok(rat(1, 4))
                }
            }
            _ => mismatch(),
        },
        5 => match role {
            ItemRole::Alpha => Ok(rat(1, 5)),
            ItemRole::Additional => {
                if size <= &rat(1, 6) {
                    Ok(rat(1, 5))
                } else if size <= &rat(1, 4) {
                    Ok(rat(4, 15))
                } else if size <= &rat(1, 3) {
                    Ok(rat(7, 15))
                } else if size <= &half {
                    Ok(rat(8, 15))
                } else {
                    Ok(Rational::one())
                }
            }
            _ => mismatch(),
        },
        6..=8 => match role {
            ItemRole::Alpha => Ok(rat(1, kk)),
            ItemRole::Additional => {
                if size > &half {
                    Ok(Rational::one())
                } else {
                    let scaled = rat(2 * (2 * kk - 11), 3 * kk) * size;
                    Ok(rat(1, kk) + scaled + bonus(k, size)?)
                }
            }
            _ => mismatch(),
        },
        _ => match role {
            ItemRole::Alpha => Ok(rat(1, kk)),
            ItemRole::Gamma1 => Ok(Rational::one()),
            ItemRole::Gamma2 => {
                if k == 9 {
                    Ok(rat(16, 27))
                } else if k <= 19 {
                    Ok(rat(7, 10) - rat(1, kk))
                } else {
                    Ok(rat(13, 20))
                }
            }
            ItemRole::Phi => {
                if size > &half {
                    Ok(Rational::one())
                } else {
                    let scaled = if k == 9 { rat(32, 27) } else { rat(6, 5) } * size;
                    Ok(scaled + bonus(k, size)?)
                }
            }
            ItemRole::Additional => mismatch(),
        },
    }
}

/// Cap on the total weight of one optimal bin.
pub fn opt_bin_bound(k: u32) -> Result<Rational> {
    let kk = k as i64;
    match k {
        2 => Ok(rat(3, 2)),
        3 => Err(Error::UnsupportedRegime(
            "k=3 is handled only by the dedicated case-1 verifier".into(),
        )),
        4 => Ok(Rational::int(2)),
        5 => Ok(rat(32, 15)),
        6..=8 => Ok(rat(8 * (kk - 1), 3 * kk)),
        9 => Ok(rat(64, 27)),
        _ => Ok(rat(27 * kk - 30, 10 * kk)),
    }
}

/// Additive slack in the lower bound on the total weight of First Fit's
/// output: total weight >= FF bins - slack.
pub fn ff_total_slack(k: u32) -> Result<Rational> {
    match k {
        2 => Ok(Rational::zero()),
        3 => Err(Error::UnsupportedRegime(
            "k=3 is handled only by the dedicated case-1 verifier".into(),
        )),
        4 => Ok(rat(3, 4)),
        5 => Ok(Rational::int(4)),
        6..=8 => Ok(Rational::int(8)),
        9 => Ok(Rational::int(7)),
        _ => Ok(Rational::int(5)),
    }
}

/// Outcome of a weight verification.
#[derive(Clone, Debug)]
pub struct WeightReport {
    pub ok: bool,
    pub violations: Vec<String>,
    pub total_weight: Rational,
}

/// Checks every certificate bin's weight against `opt_bin_bound(k)`.
pub fn verify_opt_bins(
    k: u32,
    instance: &Instance,
    opt_certificate: &Packing,
    roles: &[ItemRole],
) -> Result<WeightReport> {
    let bound = opt_bin_bound(k)?;
    let mut violations = Vec::new();
    let mut total = Rational::zero();
    for (b, bin) in opt_certificate.bins.iter().enumerate() {
        let mut weight = Rational::zero();
        for &item in &bin.items {
            weight = weight + item_weight(k, roles[item], &instance.sizes[item])?;
        }
        if weight > bound {
            violations.push(format!(
                "certificate bin {b} has weight {weight} > {bound}"
            ));
        }
        total = total + weight;
    }
    Ok(WeightReport { ok: violations.is_empty(), violations, total_weight: total })
}

/// Checks that the total item weight is at least the First Fit bin count
/// minus `ff_total_slack(k)`. The packing must replay as First Fit output.
pub fn verify_ff_total(
    k: u32,
    instance: &Instance,
    ff_packing: &Packing,
    roles: &[ItemRole],
) -> Result<WeightReport> {
    replay_ff(instance, ff_packing)?;
    let mut total = Rational::zero();
    for (item, size) in instance.sizes.iter().enumerate() {
        total = total + item_weight(k, roles[item], size)?;
    }
    let floor = Rational::int(ff_packing.num_bins() as i64) - ff_total_slack(k)?;
    let mut violations = Vec::new();
    if total < floor {
        violations.push(format!(
            "total weight {total} is below the required {floor}"
        ));
    }
    Ok(WeightReport { ok: violations.is_empty(), violations, total_weight: total })
}

/// Result of the k=3 case-1 verifier, which only applies when the number
/// of First Fit 1-bins equals the certificate bin count.
#[derive(Clone, Debug)]
pub enum K3Case1Outcome {
    NotApplicable(String),
    Checked(WeightReport),
}

/// For k=3, when every optimal bin must hold one 1-bin item, charging 1/i
/// to items of i-bins caps every optimal bin at 1 + 1/2 + 1/3 = 11/6.
pub fn verify_k3_case1(
    instance: &Instance,
    ff_packing: &Packing,
    opt_certificate: &Packing,
) -> Result<K3Case1Outcome> {
    if instance.k != 3 {
        return Err(Error::Parameter(format!(
            "the case-1 verifier is specific to k=3, got k={}",
            instance.k
        )));
    }
    replay_ff(instance, ff_packing)?;
    let one_bins = ff_packing.bins.iter().filter(|b| b.count() == 1).count();
    if one_bins != opt_certificate.num_bins() {
        return Ok(K3Case1Outcome::NotApplicable(format!(
            "{one_bins} 1-bins versus {} certificate bins",
            opt_certificate.num_bins()
        )));
    }

    let ff_owner = check_covering(instance, ff_packing, "algorithm packing")?;
    check_covering(instance, opt_certificate, "certificate")?;
    let cap = rat(11, 6);
    let mut violations = Vec::new();
    let mut total = Rational::zero();
    for (b, bin) in opt_certificate.bins.iter().enumerate() {
        let mut weight = Rational::zero();
        for &item in &bin.items {
            let i = ff_packing.bins[ff_owner[item]].count() as i64;
            weight = weight + rat(1, i);
        }
        if weight > cap {
            violations.push(format!("certificate bin {b} has weight {weight} > 11/6"));
        }
        total = total + weight;
    }
    Ok(K3Case1Outcome::Checked(WeightReport {
        ok: violations.is_empty(),
        violations,
        total_weight: total,
    }))
}

/// One row of the worst-case ratio table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub k: u32,
    pub ell: u32,
    pub ff_bins: usize,
    pub cert_bins: usize,
    pub ratio: Rational,
    pub asymptote: Rational,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Builds the matching killer family for each k in the range (rounding
/// `ell` up to the family's divisibility requirement), runs First Fit,
/// and reports the finite ratio next to the closed-form asymptote.
pub fn ratio_table(k_from: u32, k_to: u32, ell: u32) -> Result<Vec<TableRow>> {
    use crate::adversary::{
        default_delta_mid, default_eps_mid, default_eps_small, gen_ff_killer_large,
        gen_ff_killer_mid, gen_ff_killer_small,
    };
    use crate::algorithms::{run_online, AlgorithmKind};

    if k_from < 2 || k_from > k_to {
        return Err(Error::Parameter(format!(
            "need 2 <= k-from <= k-to, got {k_from}..{k_to}"
        )));
    }
    let ell = ell.max(1);
    let mut rows = Vec::new();
    for k in k_from..=k_to {
        let kk = k as i64;
        let (family, used_ell, asymptote) = if k <= 4 {
            let f = gen_ff_killer_small(k, ell, default_eps_small(k))?;
            (f, ell, rat(5 * kk - 4, 2 * kk))
        } else if k <= 9 {
            let e = ell.div_ceil(k) * k;
            let f = gen_ff_killer_mid(k, e, default_eps_mid(), default_delta_mid(e))?;
            (f, e, rat(8 * (kk - 1), 3 * kk))
        } else {
            let step = {
                let (a, b) = (k as u64, (k - 3) as u64);
                (a / gcd(a, b) * b) as u32
            };
            let e = ell.saturating_sub(1).div_ceil(step).max(1) * step + 1;
            let f = gen_ff_killer_large(k, e, default_eps_mid(), default_delta_mid(e))?;
            (f, e, rat(27 * kk - 30, 10 * kk))
        };
        let run = run_online(AlgorithmKind::Ff, &family.instance)?;
        let ff_bins = run.num_bins();
        if let Some(predicted) = family.predicted_ff {
            if predicted != ff_bins {
                return Err(Error::InconsistentInput(format!(
                    "k={k}: First Fit used {ff_bins} bins, closed form says {predicted}"
                )));
            }
        }
        let cert_bins = family.certificate.claimed_count;
        rows.push(TableRow {
            k,
            ell: used_ell,
            ff_bins,
            cert_bins,
            ratio: Rational::int(ff_bins as i64) / Rational::int(cert_bins as i64),
            asymptote,
        });
    }
    Ok(rows)
}
