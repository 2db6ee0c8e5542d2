//! Adaptive adversaries for the absolute competitive ratio.
//!
//! Each strategy issues items one at a time, watching only the algorithm's
//! public packing, and stops with a feasible certificate packing of
//! everything issued. The achieved ratio is algorithm bins over
//! certificate bins.

use crate::algorithms::{AlgorithmKind, OnlineRun};
use crate::error::{Error, Result};
use crate::instance::{validate_packing, Certificate, Claim, Instance, Packing};
use crate::rational::{rat, Rational};

/// Issues items based on the algorithm's current public packing, then
/// certifies an optimal packing for the issued prefix.
pub trait AdaptiveAdversary {
    /// Ratio the strategy is designed to force.
    fn target_ratio(&self) -> Rational;
    /// Next item, given the packing after all previous placements, or
    /// `None` to stop.
    fn next_item(&mut self, packing: &Packing) -> Option<Rational>;
    /// Certificate packing of exactly the issued items. Call after stop.
    fn certificate(&self, instance: &Instance) -> Result<Certificate>;
}

/// Which bins hold each of the given item indices (deduplicated).
fn bins_holding(packing: &Packing, items: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (b, bin) in packing.bins.iter().enumerate() {
        if bin.items.iter().any(|i| items.contains(i)) {
            out.push(b);
        }
    }
    out
}

enum K4Phase {
    Tiny(u32),
    FirstThird,
    SecondThird,
    BigIssued,
    FirstHalf,
    SecondHalf,
    Done,
}

/// Forces ratio 2 for any k >= 4: k tiny items, then two items of
/// 1/3 + eps, then either one 2/3 item or two 1/2 + eps items depending
/// on whether the thirds were separated.
pub struct AbsK4Plus {
    k: u32,
    eps: Rational,
    phase: K4Phase,
    issued: usize,
    /// which closing branch built the certificate
    took_big_branch: bool,
    stopped_after_tiny: bool,
}

impl AbsK4Plus {
    pub fn new(k: u32, eps: Rational) -> Result<Self> {
        if k < 4 {
            return Err(Error::Parameter(format!("this strategy needs k >= 4, got {k}")));
        }
        if !eps.is_positive() || eps >= rat(1, 3 * k as i64) {
            return Err(Error::Parameter(format!(
                "eps must lie in (0, 1/{}), got {eps}",
                3 * k
            )));
        }
        // the two-bin certificate packs ceil(k/2) + 2 items alongside
        // 1/2 + 1/3, so its slack must cover that many eps items
        let ceil_half = (k as i64 + 1) / 2;
        if &eps * Rational::int(ceil_half + 2) > rat(1, 6) {
            return Err(Error::Parameter(format!(
                "eps must be at most 1/{} for the certificate to be feasible",
                6 * (ceil_half + 2)
            )));
        }
        Ok(AbsK4Plus {
            k,
            eps,
            phase: K4Phase::Tiny(0),
            issued: 0,
            took_big_branch: false,
            stopped_after_tiny: false,
        })
    }
}

impl AdaptiveAdversary for AbsK4Plus {
    fn target_ratio(&self) -> Rational {
        Rational::int(2)
    }

    fn next_item(&mut self, packing: &Packing) -> Option<Rational> {
        let third = rat(1, 3) + &self.eps;
        let item = match self.phase {
            K4Phase::Tiny(i) => {
                if i < self.k {
                    self.phase = K4Phase::Tiny(i + 1);
                    Some(self.eps.clone())
                } else if packing.num_bins() >= 2 {
                    self.stopped_after_tiny = true;
                    self.phase = K4Phase::Done;
                    None
                } else {
                    self.phase = K4Phase::FirstThird;
                    Some(third)
                }
            }
            K4Phase::FirstThird => {
                self.phase = K4Phase::SecondThird;
                Some(third)
            }
            K4Phase::SecondThird => {
                // the tiny bin is full, so the thirds sit in one or two bins
                let k = self.k as usize;
                let separated = bins_holding(packing, &[k, k + 1]).len() == 2;
                if separated {
                    self.took_big_branch = true;
                    self.phase = K4Phase::BigIssued;
                    Some(rat(2, 3))
                } else {
                    self.phase = K4Phase::FirstHalf;
                    Some(rat(1, 2) + &self.eps)
                }
            }
            K4Phase::FirstHalf => {
                self.phase = K4Phase::SecondHalf;
                Some(rat(1, 2) + &self.eps)
            }
            K4Phase::BigIssued | K4Phase::SecondHalf | K4Phase::Done => {
                self.phase = K4Phase::Done;
                None
            }
        };
        if item.is_some() {
            self.issued += 1;
        }
        item
    }

    fn certificate(&self, instance: &Instance) -> Result<Certificate> {
        let k = self.k as usize;
        if instance.len() != self.issued {
            return Err(Error::InconsistentInput(format!(
                "certificate requested for {} items but {} were issued",
                instance.len(),
                self.issued
            )));
        }
        let groups = if self.stopped_after_tiny {
            vec![(0..k).collect::<Vec<_>>()]
        } else if self.took_big_branch {
            // {2/3 item, k-1 tiny} and {both thirds, last tiny}
            let mut a: Vec<usize> = vec![k + 2];
            a.extend(0..k - 1);
            vec![a, vec![k, k + 1, k - 1]]
        } else {
            // two bins of {half, third, about half the tiny items}
            let split = k.div_ceil(2);
            let mut a: Vec<usize> = vec![k + 2, k];
            a.extend(0..split);
            let mut b: Vec<usize> = vec![k + 3, k + 1];
            b.extend(split..k);
            vec![a, b]
        };
        Ok(Certificate::new(
            Packing::from_groups(instance, groups)?,
            Claim::Optimal,
        ))
    }
}

enum K3Phase {
    Tiny(u32),
    FirstThird,
    SecondThird,
    FirstBigThird,
    SecondBigThird,
    TwoBigs(u32),
    FourBigs(u32),
    Done,
}

#[derive(Clone, Copy, PartialEq)]
enum K3Branch {
    TinySplit,
    OneBig,
    TwoBigs,
    FourBigs,
}

/// Forces ratio 7/4 for k = 3 (some branches reach 2), following the
/// case analysis over how the algorithm groups the first pairs.
pub struct AbsK3 {
    eps: Rational,
    phase: K3Phase,
    issued: usize,
    branch: K3Branch,
}

impl AbsK3 {
    pub fn new(eps: Rational) -> Result<Self> {
        if !eps.is_positive() || eps >= rat(1, 24) {
            return Err(Error::Parameter(format!(
                "eps must lie in (0, 1/24), got {eps}"
            )));
        }
        Ok(AbsK3 { eps, phase: K3Phase::Tiny(0), issued: 0, branch: K3Branch::FourBigs })
    }
}

impl AdaptiveAdversary for AbsK3 {
    fn target_ratio(&self) -> Rational {
        rat(7, 4)
    }

    fn next_item(&mut self, packing: &Packing) -> Option<Rational> {
        let item = match self.phase {
            K3Phase::Tiny(i) => {
                if i < 3 {
                    self.phase = K3Phase::Tiny(i + 1);
                    Some(self.eps.clone())
                } else if packing.num_bins() >= 2 {
                    self.branch = K3Branch::TinySplit;
                    self.phase = K3Phase::Done;
                    None
                } else {
                    self.phase = K3Phase::FirstThird;
                    Some(rat(1, 3) + &self.eps)
                }
            }
            K3Phase::FirstThird => {
                self.phase = K3Phase::SecondThird;
                Some(rat(1, 3) + &self.eps)
            }
            K3Phase::SecondThird => {
                if bins_holding(packing, &[3, 4]).len() == 2 {
                    self.branch = K3Branch::OneBig;
                    self.phase = K3Phase::Done;
                    Some(rat(2, 3))
                } else {
                    self.phase = K3Phase::FirstBigThird;
                    Some(rat(1, 3) + Rational::int(3) * &self.eps)
                }
            }
            K3Phase::FirstBigThird => {
                self.phase = K3Phase::SecondBigThird;
                Some(rat(1, 3) + Rational::int(3) * &self.eps)
            }
            K3Phase::SecondBigThird => {
                if bins_holding(packing, &[5, 6]).len() == 2 {
                    self.branch = K3Branch::TwoBigs;
                    self.phase = K3Phase::TwoBigs(1);
                    Some(rat(2, 3) - Rational::int(2) * &self.eps)
                } else {
                    self.branch = K3Branch::FourBigs;
                    self.phase = K3Phase::FourBigs(1);
                    Some(rat(2, 3) - Rational::int(4) * &self.eps)
                }
            }
            K3Phase::TwoBigs(i) => {
                if i < 2 {
                    self.phase = K3Phase::TwoBigs(i + 1);
                    Some(rat(2, 3) - Rational::int(2) * &self.eps)
                } else {
                    self.phase = K3Phase::Done;
                    None
                }
            }
            K3Phase::FourBigs(i) => {
                if i < 4 {
                    self.phase = K3Phase::FourBigs(i + 1);
                    Some(rat(2, 3) - Rational::int(4) * &self.eps)
                } else {
                    self.phase = K3Phase::Done;
                    None
                }
            }
            K3Phase::Done => None,
        };
        if item.is_some() {
            self.issued += 1;
        }
        item
    }

    fn certificate(&self, instance: &Instance) -> Result<Certificate> {
        if instance.len() != self.issued {
            return Err(Error::InconsistentInput(format!(
                "certificate requested for {} items but {} were issued",
                instance.len(),
                self.issued
            )));
        }
        let groups = match self.branch {
            K3Branch::TinySplit => vec![vec![0, 1, 2]],
            // items 3,4 are the thirds, 5 is the 2/3 item
            K3Branch::OneBig => vec![vec![5, 0, 1], vec![3, 4, 2]],
            // 5,6 are the bigger thirds, 7,8 are 2/3 - 2 eps
            K3Branch::TwoBigs => vec![vec![7, 3, 0], vec![8, 4, 1], vec![5, 6, 2]],
            // 7..10 are 2/3 - 4 eps
            K3Branch::FourBigs => {
                vec![vec![7, 3, 0], vec![8, 4, 1], vec![9, 5, 2], vec![10, 6]]
            }
        };
        Ok(Certificate::new(
            Packing::from_groups(instance, groups)?,
            Claim::Optimal,
        ))
    }
}

/// Result of playing an adaptive strategy against an online algorithm.
#[derive(Clone, Debug)]
pub struct DuelOutcome {
    pub instance: Instance,
    pub run: OnlineRun,
    pub certificate: Certificate,
    pub ratio: Rational,
    pub target: Rational,
}

/// Streams the adversary's items into the algorithm and scores the result.
/// The certificate is validated before the ratio is reported.
pub fn run_duel(
    adversary: &mut dyn AdaptiveAdversary,
    kind: AlgorithmKind,
    k: u32,
) -> Result<DuelOutcome> {
    let mut alg = kind.build(k)?;
    while let Some(size) = adversary.next_item(&alg.run().packing) {
        alg.place(size);
    }
    let run = alg.into_run();
    let instance = Instance::new(k, run.sizes.clone())?;
    let certificate = adversary.certificate(&instance)?;
    let report = validate_packing(&instance, &certificate.packing)?;
    if !report.ok {
        return Err(Error::InconsistentInput(format!(
            "adversary certificate infeasible: {}",
            report.violations.join("; ")
        )));
    }
    let ratio = Rational::int(run.num_bins() as i64)
        / Rational::int(certificate.claimed_count as i64);
    let target = adversary.target_ratio();
    Ok(DuelOutcome { instance, run, certificate, ratio, target })
}
