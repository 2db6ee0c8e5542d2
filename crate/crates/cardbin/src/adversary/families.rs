//! Static worst-case input families with certificate packings.
//!
//! Each generator returns the instance in its adversarial presentation
//! order, a feasible certificate packing bounding the optimum, and a
//! closed-form prediction for the First Fit bin count where one exists.

use crate::error::{Error, Result};
use crate::instance::{Certificate, Claim, Instance, Packing};
use crate::rational::{rat, Rational};

/// A generated instance plus everything known about it in closed form.
#[derive(Clone, Debug)]
pub struct GeneratedFamily {
    pub name: String,
    pub instance: Instance,
    pub certificate: Certificate,
    pub predicted_ff: Option<usize>,
}

fn check_range(name: &str, value: &Rational, upper: Rational) -> Result<()> {
    if !value.is_positive() || value >= &upper {
        return Err(Error::Parameter(format!(
            "{name} must lie in (0, {upper}), got {value}"
        )));
    }
    Ok(())
}

pub fn default_eps_small(k: u32) -> Rational {
    rat(1, 18 * k as i64)
}

pub fn default_eps_mid() -> Rational {
    rat(1, 121)
}

pub fn default_delta_mid(ell: u32) -> Rational {
    default_eps_mid() * Rational::inv_pow(3, ell + 5)
}

/// Items of sizes eps, 1/2 - k eps, 1/2 + eps in that order. First Fit
/// uses 5kl - 4l bins; the certificate packs one large, one medium, and
/// k - 2 small items per bin, 2kl bins in total.
pub fn gen_ff_killer_small(k: u32, ell: u32, eps: Rational) -> Result<GeneratedFamily> {
    if !(2..=4).contains(&k) {
        return Err(Error::Parameter(format!("supported k are 2, 3, 4, got {k}")));
    }
    if ell < 1 {
        return Err(Error::Parameter("ell must be at least 1".into()));
    }
    check_range("eps", &eps, rat(1, 9 * k as i64))?;

    let (k_us, ell_us) = (k as usize, ell as usize);
    let n_small = 2 * k_us * (k_us - 2) * ell_us;
    let n_each = 2 * k_us * ell_us;
    let medium = rat(1, 2) - Rational::int(k as i64) * &eps;
    let large = rat(1, 2) + &eps;

    let mut sizes = vec![eps.clone(); n_small];
    sizes.extend(std::iter::repeat(medium).take(n_each));
    sizes.extend(std::iter::repeat(large).take(n_each));
    let instance = Instance::new(k, sizes)?;

    let mut groups = Vec::with_capacity(n_each);
    for t in 0..n_each {
        let mut bin = vec![n_small + n_each + t, n_small + t];
        bin.extend(t * (k_us - 2)..(t + 1) * (k_us - 2));
        groups.push(bin);
    }
    let certificate = Certificate::new(Packing::from_groups(&instance, groups)?, Claim::Optimal);

    Ok(GeneratedFamily {
        name: format!("ff-small k={k} ell={ell}"),
        instance,
        certificate,
        predicted_ff: Some(5 * k_us * ell_us - 4 * ell_us),
    })
}

/// The 5 <= k <= 10 construction built around near-quarter pairs with
/// geometrically shrinking offsets. First Fit uses (8k-8)l/k - 1 bins;
/// the certificate uses 3l.
pub fn gen_ff_killer_mid(k: u32, ell: u32, eps: Rational, delta: Rational) -> Result<GeneratedFamily> {
    if !(5..=10).contains(&k) {
        return Err(Error::Parameter(format!("supported k are 5..=10, got {k}")));
    }
    if ell == 0 || ell % k != 0 {
        return Err(Error::Parameter(format!(
            "ell must be a positive multiple of k={k}, got {ell}"
        )));
    }
    check_range("eps", &eps, rat(1, 120))?;
    check_range("delta", &delta, &eps * Rational::inv_pow(3, ell + 4))?;

    let (k_us, ell_us) = (k as usize, ell as usize);
    let quarter = rat(1, 4);
    let ten_delta = Rational::int(10) * &delta;
    let companion = &quarter - Rational::int(30) * &delta;

    // presentation order: tiny, modified pairs with companions, the
    // (1/2 - 10d, 1/4 + 20d) pairs, then the 1/2 + d items
    let n_tiny = (3 * k_us - 8) * ell_us;
    let mut sizes = vec![delta.clone(); n_tiny];
    for p in 1..=ell_us - 1 {
        sizes.push(&quarter + &eps * Rational::inv_pow(3, p as u32));
        sizes.push(&quarter - &ten_delta - &eps * Rational::inv_pow(3, p as u32 + 1));
        sizes.push(companion.clone());
    }
    let pair_base = sizes.len();
    for _ in 0..ell_us {
        sizes.push(rat(1, 2) - &ten_delta);
        sizes.push(&quarter + Rational::int(20) * &delta);
    }
    let half_base = sizes.len();
    sizes.extend(std::iter::repeat(rat(1, 2) + &delta).take(3 * ell_us));
    let instance = Instance::new(k, sizes)?;

    // index helpers for the modified-pair block
    let plus_idx = |p: usize| n_tiny + 3 * (p - 1); // 1/4 + eps/3^p, p in 1..=ell-1
    let minus_idx = |p: usize| n_tiny + 3 * (p - 1) + 1; // 1/4 - 10d - eps/3^(p+1)
    let companion_idx = |t: usize| n_tiny + 3 * t + 2; // t in 0..ell-1

    let mut tiny_next = 0;
    let mut take_tiny = |count: usize, bin: &mut Vec<usize>| {
        bin.extend(tiny_next..tiny_next + count);
        tiny_next += count;
    };

    let mut groups = Vec::with_capacity(3 * ell_us);
    for t in 0..ell_us {
        // {1/2 + d, 1/2 - 10d, k-2 tiny}
        let mut bin = vec![half_base + t, pair_base + 2 * t];
        take_tiny(k_us - 2, &mut bin);
        groups.push(bin);
    }
    for t in 0..ell_us {
        // {1/2 + d, 1/4 + 20d, 1/4 - 30d, k-3 tiny}; one companion is missing
        let mut bin = vec![half_base + ell_us + t, pair_base + 2 * t + 1];
        if t < ell_us - 1 {
            bin.push(companion_idx(t));
        }
        take_tiny(k_us - 3, &mut bin);
        groups.push(bin);
    }
    for p in 1..=ell_us {
        // {1/2 + d, 1/4 + eps/3^p, 1/4 - 10d - eps/3^p, k-3 tiny}; the
        // first bin lacks its minus item and the last its plus item,
        // because the pairs were modified to shift exponents by one
        let mut bin = vec![half_base + 2 * ell_us + p - 1];
        if p <= ell_us - 1 {
            bin.push(plus_idx(p));
        }
        if p >= 2 {
            bin.push(minus_idx(p - 1));
        }
        take_tiny(k_us - 3, &mut bin);
        groups.push(bin);
    }
    debug_assert_eq!(tiny_next, n_tiny);
    let certificate = Certificate::new(Packing::from_groups(&instance, groups)?, Claim::Optimal);

    Ok(GeneratedFamily {
        name: format!("ff-mid k={k} ell={ell}"),
        instance,
        certificate,
        predicted_ff: Some((8 * k_us - 8) * ell_us / k_us - 1),
    })
}

/// The k >= 10 construction: the classic sixth/third/half geometry with
/// tiny items of size delta/k presented first. First Fit uses
/// 10(k-3)(l-1)/k + 17l bins; the certificate uses 10l + 2.
pub fn gen_ff_killer_large(
    k: u32,
    ell: u32,
    eps: Rational,
    delta: Rational,
) -> Result<GeneratedFamily> {
    if k < 10 {
        return Err(Error::Parameter(format!("k must be at least 10, got {k}")));
    }
    if ell < 3 || (ell - 1) % k != 0 || (ell - 1) % (k - 3) != 0 {
        return Err(Error::Parameter(format!(
            "ell - 1 must be a positive multiple of k={k} and of k-3={}, got ell={ell}",
            k - 3
        )));
    }
    check_range("eps", &eps, rat(1, 120))?;
    check_range("delta", &delta, &eps * Rational::inv_pow(3, ell + 4))?;

    let (k_us, ell_us) = (k as usize, ell as usize);
    let sixth = rat(1, 6);
    let third = rat(1, 3);
    let two_delta = Rational::int(2) * &delta;

    let a_size = |i: usize, p: usize| -> Rational {
        match i {
            1..=3 => &sixth + &eps * Rational::inv_pow(3, p as u32) - &delta,
            4..=5 => &sixth + &eps * Rational::inv_pow(3, p as u32) - &two_delta,
            6..=7 => &sixth - &eps * Rational::inv_pow(3, p as u32 + 1) - &delta,
            _ => &sixth - &eps * Rational::inv_pow(3, p as u32 + 1) - &two_delta,
        }
    };
    let b_size = |i: usize, p: usize| -> Rational {
        if i <= 5 {
            &third + &eps * Rational::inv_pow(3, p as u32 - 1) - Rational::int(i as i64) * &delta
        } else {
            &third - &eps * Rational::inv_pow(3, p as u32) - Rational::int(i as i64 - 5) * &delta
        }
    };

    let n_tiny = 10 * (k_us - 3) * (ell_us - 1);
    let mut sizes = vec![&delta / Rational::int(k as i64); n_tiny];

    // a-items per index p, in the order First Fit groups them: the five
    // items of the first bin, then the five of the second
    let a_order = [1, 2, 3, 6, 7, 4, 5, 8, 9, 10];
    let mut a_idx = vec![[0usize; 11]; ell_us + 1];
    for p in 1..=ell_us {
        for &i in &a_order {
            a_idx[p][i] = sizes.len();
            sizes.push(a_size(i, p));
        }
    }
    // b-items interleaved so First Fit pairs b_j with b_{j+5}
    let b_order = [1, 6, 2, 7, 3, 8, 4, 9, 5, 10];
    let mut b_idx = vec![[0usize; 11]; ell_us + 1];
    for p in 1..=ell_us {
        for &i in &b_order {
            b_idx[p][i] = sizes.len();
            sizes.push(b_size(i, p));
        }
    }
    // c-items, 1-based in the construction
    let c_base = sizes.len();
    let c_idx = |j: usize| c_base + j - 1;
    sizes.extend(std::iter::repeat(rat(1, 2) + &delta / Rational::int(2)).take(10 * ell_us));
    let instance = Instance::new(k, sizes)?;

    let mut tiny_next = 0;
    let mut groups = Vec::with_capacity(10 * ell_us + 2);
    for p in 1..=ell_us {
        for i in 1..=5 {
            let mut bin = vec![a_idx[p][i], b_idx[p][5 + i], c_idx(5 * (p - 1) + i)];
            bin.extend(tiny_next..tiny_next + (k_us - 3));
            tiny_next += k_us - 3;
            groups.push(bin);
        }
    }
    for p in 3..=ell_us {
        for i in 1..=5 {
            let mut bin = vec![a_idx[p - 2][5 + i], b_idx[p][i], c_idx(5 * (p + ell_us - 3) + i)];
            bin.extend(tiny_next..tiny_next + (k_us - 3));
            tiny_next += k_us - 3;
            groups.push(bin);
        }
    }
    debug_assert_eq!(tiny_next, n_tiny);
    for i in 1..=5 {
        groups.push(vec![c_idx(10 * (ell_us - 1) + i), b_idx[1][i]]);
    }
    for i in 1..=5 {
        groups.push(vec![c_idx(10 * (ell_us - 1) + 5 + i), b_idx[2][i]]);
    }
    groups.push((6..=10).map(|i| a_idx[ell_us][i]).collect());
    groups.push((6..=10).map(|i| a_idx[ell_us - 1][i]).collect());

    let certificate =
        Certificate::new(Packing::from_groups(&instance, groups)?, Claim::FeasibleUpperBound);

    Ok(GeneratedFamily {
        name: format!("ff-large k={k} ell={ell}"),
        instance,
        certificate,
        predicted_ff: Some(10 * (k_us - 3) * (ell_us - 1) / k_us + 17 * ell_us),
    })
}

/// The four-batch lower-bound family, truncated after batch `stop`.
/// The certificate is an optimal packing of the emitted prefix.
pub fn gen_batches(k: u32, n: u32, delta: Rational, stop: u32) -> Result<GeneratedFamily> {
    if !matches!(k, 5 | 7 | 8 | 9 | 10 | 11) {
        return Err(Error::Parameter(format!(
            "supported k are 5 and 7..=11 (the method gains nothing at k=6 or k=12), got {k}"
        )));
    }
    if n == 0 || n % (6 * k) != 0 {
        return Err(Error::Parameter(format!(
            "n must be a positive multiple of 6k = {}, got {n}",
            6 * k
        )));
    }
    if !(1..=4).contains(&stop) {
        return Err(Error::Parameter(format!("stop must be in 1..=4, got {stop}")));
    }
    check_range("delta", &delta, rat(1, 2000))?;

    let (k_us, n_us) = (k as usize, n as usize);
    let batch1_count = if k == 5 { n_us / 2 } else { n_us * (k_us - 6) / 6 };
    let batch_sizes = [
        rat(1, 42) - Rational::int(3) * &delta,
        rat(1, 7) + &delta,
        rat(1, 3) + &delta,
        rat(1, 2) + &delta,
    ];
    let counts = [batch1_count, n_us, n_us, n_us];

    let mut sizes = Vec::new();
    let mut batch_start = [0usize; 4];
    for b in 0..stop as usize {
        batch_start[b] = sizes.len();
        sizes.extend(std::iter::repeat(batch_sizes[b].clone()).take(counts[b]));
    }
    let instance = Instance::new(k, sizes)?;

    let groups: Vec<Vec<usize>> = match stop {
        1 => (0..batch1_count / k_us)
            .map(|t| (t * k_us..(t + 1) * k_us).collect())
            .collect(),
        2 => {
            if k == 5 {
                // every bin takes five items; any mix fits
                (0..instance.len() / 5)
                    .map(|t| (t * 5..(t + 1) * 5).collect())
                    .collect()
            } else {
                // six second-batch items plus k-6 first-batch items
                (0..n_us / 6)
                    .map(|t| {
                        let mut bin: Vec<usize> =
                            (batch_start[1] + 6 * t..batch_start[1] + 6 * (t + 1)).collect();
                        bin.extend(t * (k_us - 6)..(t + 1) * (k_us - 6));
                        bin
                    })
                    .collect()
            }
        }
        3 => {
            // two third-batch, two second-batch, and the first batch
            // spread round-robin (at most two per bin)
            let bins = n_us / 2;
            let mut groups: Vec<Vec<usize>> = (0..bins)
                .map(|t| {
                    vec![
                        batch_start[2] + 2 * t,
                        batch_start[2] + 2 * t + 1,
                        batch_start[1] + 2 * t,
                        batch_start[1] + 2 * t + 1,
                    ]
                })
                .collect();
            for item in 0..batch1_count {
                groups[item % bins].push(item);
            }
            groups
        }
        _ => {
            // one item of each later batch per bin, plus at most one
            // first-batch item; the full bins have level exactly 1
            let mut groups: Vec<Vec<usize>> = (0..n_us)
                .map(|t| {
                    vec![batch_start[3] + t, batch_start[2] + t, batch_start[1] + t]
                })
                .collect();
            for item in 0..batch1_count {
                groups[item].push(item);
            }
            groups
        }
    };
    let certificate = Certificate::new(Packing::from_groups(&instance, groups)?, Claim::Optimal);

    Ok(GeneratedFamily {
        name: format!("batch k={k} n={n} stop={stop}"),
        instance,
        certificate,
        predicted_ff: None,
    })
}

/// The asymptotic lower bound the batch family proves for each supported k.
pub fn lb_value(k: u32) -> Result<Rational> {
    let kk = k as i64;
    match k {
        5 => Ok(rat(3, 2)),
        7 | 8 => Ok(rat(kk * kk + 24 * kk, kk * kk + 10 * kk + 24)),
        9 => Ok(rat(189, 124)),
        10 | 11 => Ok(rat(kk * kk + 84 * kk, kk * kk + 48 * kk + 36)),
        _ => Err(Error::Parameter(format!("no improved lower bound for k={k}"))),
    }
}

/// The previously known lower bound for each supported k, for comparison.
pub fn prior_lb(k: u32) -> Result<Rational> {
    match k {
        5 => Ok(rat(25, 17)),
        7 | 8 | 9 => Ok(rat(3, 2)),
        10 => Ok(rat(80, 53)),
        11 => Ok(rat(44, 29)),
        _ => Err(Error::Parameter(format!("no comparison value for k={k}"))),
    }
}
