//! Acceptance suite: nine end-to-end criteria, one pass/fail line each.
//!
//! Shared sweeps are built lazily so criteria that reuse the same seeded
//! random instances pay for the oracle only once.

use std::collections::BTreeMap;

use once_cell::sync::Lazy;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cardbin::adversary::{
    default_delta_mid, default_eps_mid, gen_batches, gen_ff_killer_large, gen_ff_killer_mid,
    gen_ff_killer_small, lb_value, run_duel, AbsK3, AbsK4Plus, AdaptiveAdversary, GeneratedFamily,
};
use cardbin::algorithms::{
    check_ff_minimality, check_ff_structure, check_tf_invariants, run_online, AlgorithmKind,
    OnlineAlgorithm, OnlineRun, ThinFat,
};
use cardbin::analysis::{
    assign_roles, verify_ff_total, verify_k3_case1, verify_opt_bins, K3Case1Outcome,
};
use cardbin::oracle::{exact_opt, DEFAULT_NODE_BUDGET};
use cardbin::sweep::random_grid_instance;
use cardbin::{rat, trivial_lower_bound, validate_packing, Instance, Packing, Rational};

struct SweptInstance {
    instance: Instance,
    ff: OnlineRun,
    opt: Packing,
    opt_count: usize,
}

fn sweep(k: u32, count: usize, max_n: usize, seed: u64) -> Vec<SweptInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let instance = random_grid_instance(&mut rng, k, max_n);
            let ff = run_online(AlgorithmKind::Ff, &instance).unwrap();
            let opt = exact_opt(&instance, DEFAULT_NODE_BUDGET);
            assert!(opt.is_exact(), "oracle budget exceeded on a sweep instance");
            let cert = opt.certificate();
            SweptInstance {
                instance,
                ff,
                opt: cert.packing.clone(),
                opt_count: cert.claimed_count,
            }
        })
        .collect()
}

/// 500 seeded instances with n <= 12 per k, shared across criteria.
static SWEEPS: Lazy<BTreeMap<u32, Vec<SweptInstance>>> = Lazy::new(|| {
    [2u32, 3, 4, 5, 6, 7, 8, 9, 10, 12, 20]
        .into_iter()
        .map(|k| (k, sweep(k, 500, 12, 1000 + k as u64)))
        .collect()
});

/// The big k=10 family and its First Fit run, shared by criteria 3 and 7.
static LARGE_K10: Lazy<(GeneratedFamily, OnlineRun)> = Lazy::new(|| {
    let family = gen_ff_killer_large(10, 71, default_eps_mid(), default_delta_mid(71)).unwrap();
    let run = run_online(AlgorithmKind::Ff, &family.instance).unwrap();
    (family, run)
});

fn checked_family(family: &GeneratedFamily) -> usize {
    let report = validate_packing(&family.instance, &family.certificate.packing).unwrap();
    assert!(report.ok, "{}: {:?}", family.name, report.violations);
    family.certificate.claimed_count
}

#[test]
fn c1_small_family_closed_form() {
    for (k, ell) in [(2u32, 3u32), (3, 2), (4, 1)] {
        let family = gen_ff_killer_small(k, ell, rat(1, 18 * k as i64)).unwrap();
        let cert = checked_family(&family);
        let run = run_online(AlgorithmKind::Ff, &family.instance).unwrap();
        let (k_us, ell_us) = (k as usize, ell as usize);
        assert_eq!(run.num_bins(), 5 * k_us * ell_us - 4 * ell_us, "k={k}");
        assert_eq!(cert, 2 * k_us * ell_us, "k={k}");
    }
    let f4 = gen_ff_killer_small(4, 1, rat(1, 72)).unwrap();
    let run = run_online(AlgorithmKind::Ff, &f4.instance).unwrap();
    assert_eq!(
        Rational::int(run.num_bins() as i64) / Rational::int(f4.certificate.claimed_count as i64),
        Rational::int(2)
    );
    println!("PASS 1: small-family closed form, 5kl-4l vs 2kl for (k,l) in {{(2,3),(3,2),(4,1)}}");
}

#[test]
fn c2_mid_family_closed_form() {
    for (k, ell, ff_expect, cert_expect) in [(5u32, 5u32, 31, 15), (8, 8, 55, 24), (10, 10, 71, 30)]
    {
        let family = gen_ff_killer_mid(k, ell, default_eps_mid(), default_delta_mid(ell)).unwrap();
        let cert = checked_family(&family);
        let run = run_online(AlgorithmKind::Ff, &family.instance).unwrap();
        assert_eq!(run.num_bins(), ff_expect, "k={k}");
        assert_eq!(cert, cert_expect, "k={k}");
        let (k_us, ell_us) = (k as usize, ell as usize);
        assert_eq!(run.num_bins(), (8 * k_us - 8) * ell_us / k_us - 1, "k={k}");
    }
    println!("PASS 2: mid-family closed form, (8k-8)l/k - 1 bins at k=5,8,10");
}

#[test]
fn c3_large_family_ratio() {
    let (family, run) = &*LARGE_K10;
    let cert = checked_family(family);
    assert_eq!(run.num_bins(), 1697);
    assert!(cert <= 712, "certificate used {cert} bins");
    let ratio = Rational::int(run.num_bins() as i64) / Rational::int(cert as i64);
    assert!(ratio >= rat(1697, 712), "ratio {ratio}");
    println!("PASS 3: large family k=10 l=71, 1697 bins vs certificate {cert} (ratio >= 1697/712)");
}

#[test]
fn c4_adaptive_lower_bounds() {
    let algs_for = |k: u32| -> Vec<AlgorithmKind> {
        let mut v = vec![AlgorithmKind::Ff, AlgorithmKind::Harmonic, AlgorithmKind::Tf];
        if k == 5 {
            v.push(AlgorithmKind::Alg5);
        }
        v
    };
    for k in [4u32, 5] {
        for kind in algs_for(k) {
            let mut adv = AbsK4Plus::new(k, rat(1, 100)).unwrap();
            let outcome = run_duel(&mut adv, kind, k).unwrap();
            assert!(
                outcome.ratio >= Rational::int(2),
                "k={k} {}: ratio {}",
                kind.token(),
                outcome.ratio
            );
        }
    }
    for kind in algs_for(3) {
        let mut adv = AbsK3::new(rat(1, 100)).unwrap();
        let outcome = run_duel(&mut adv, kind, 3).unwrap();
        assert!(outcome.ratio >= rat(7, 4), "{}: ratio {}", kind.token(), outcome.ratio);
        assert_eq!(adv.target_ratio(), rat(7, 4));
    }
    println!("PASS 4: adaptive adversaries force ratio >= 2 (k=4,5) and >= 7/4 (k=3) on all algorithms");
}

#[test]
fn c5_batch_certificates_and_bounds() {
    for (stop, expect) in [(1u32, 1usize), (2, 7), (3, 21), (4, 42)] {
        let family = gen_batches(7, 42, rat(1, 2001), stop).unwrap();
        let cert = checked_family(&family);
        assert_eq!(cert, expect, "stop {stop}");
        assert_eq!(trivial_lower_bound(&family.instance), expect, "stop {stop}");
    }
    for (k, num, den) in
        [(5u32, 3i64, 2i64), (7, 217, 143), (8, 32, 21), (9, 189, 124), (10, 235, 154), (11, 209, 137)]
    {
        assert_eq!(lb_value(k).unwrap(), rat(num, den), "k={k}");
    }
    println!("PASS 5: batch stops at k=7 N=42 certify 1,7,21,42 bins; asymptotic values match");
}

#[test]
fn c6_absolute_upper_bounds_on_sweeps() {
    for (&k, swept) in SWEEPS.iter().filter(|(k, _)| **k <= 8) {
        for s in swept {
            let opt = s.opt_count;
            let ff = s.ff.num_bins();
            let cap = (rat(27 * k as i64 - 24, 10 * k as i64) * Rational::int(opt as i64))
                .floor_usize();
            assert!(ff <= cap, "k={k}: ff {ff} > floor((2.7-2.4/k)*{opt})");
            if k == 4 {
                assert!(ff <= 2 * opt, "k=4: ff {ff} > 2*{opt}");
            }
            if (2..=5).contains(&k) {
                let tf = run_online(AlgorithmKind::Tf, &s.instance).unwrap();
                assert!(tf.num_bins() <= 2 * opt, "k={k}: tf {} > 2*{opt}", tf.num_bins());
            }
            if k == 5 {
                let a5 = run_online(AlgorithmKind::Alg5, &s.instance).unwrap();
                assert!(a5.num_bins() <= 2 * opt, "alg5 {} > 2*{opt}", a5.num_bins());
            }
        }
    }
    println!("PASS 6: absolute upper bounds hold on 500-instance sweeps for k=2..8, zero violations");
}

fn check_weights(k: u32, instance: &Instance, ff: &Packing, opt: &Packing, label: &str) {
    let roles = assign_roles(k, instance, ff, opt).unwrap();
    let per_bin = verify_opt_bins(k, instance, opt, &roles).unwrap();
    assert!(per_bin.ok, "{label}: {:?}", per_bin.violations);
    let total = verify_ff_total(k, instance, ff, &roles).unwrap();
    assert!(total.ok, "{label}: {:?}", total.violations);
}

#[test]
fn c7_weight_schemes() {
    for (&k, swept) in SWEEPS.iter().filter(|(k, _)| **k != 3) {
        for (i, s) in swept.iter().enumerate() {
            check_weights(k, &s.instance, &s.ff.packing, &s.opt, &format!("k={k} sweep[{i}]"));
        }
    }
    let mut case1 = 0usize;
    for (i, s) in SWEEPS[&3].iter().enumerate() {
        match verify_k3_case1(&s.instance, &s.ff.packing, &s.opt).unwrap() {
            K3Case1Outcome::Checked(report) => {
                assert!(report.ok, "k=3 sweep[{i}]: {:?}", report.violations);
                case1 += 1;
            }
            K3Case1Outcome::NotApplicable(_) => {}
        }
    }
    assert!(case1 > 0, "the k=3 sweep produced no case-1 instances");

    let mut families: Vec<GeneratedFamily> = vec![
        gen_ff_killer_small(2, 3, rat(1, 36)).unwrap(),
        gen_ff_killer_small(4, 1, rat(1, 72)).unwrap(),
    ];
    for k in [5u32, 6, 7, 8, 9, 10] {
        families
            .push(gen_ff_killer_mid(k, k, default_eps_mid(), default_delta_mid(k)).unwrap());
    }
    for (k, n) in [(5u32, 60u32), (7, 42), (8, 48)] {
        for stop in 1..=4 {
            families.push(gen_batches(k, n, rat(1, 2001), stop).unwrap());
        }
    }
    for family in &families {
        let run = run_online(AlgorithmKind::Ff, &family.instance).unwrap();
        check_weights(
            family.instance.k,
            &family.instance,
            &run.packing,
            &family.certificate.packing,
            &family.name,
        );
    }
    let (family, run) = &*LARGE_K10;
    check_weights(10, &family.instance, &run.packing, &family.certificate.packing, &family.name);
    println!(
        "PASS 7: weight schemes verified on all sweeps ({case1} k=3 case-1 hits) and generated families"
    );
}

#[test]
fn c8_structural_invariants() {
    for (&k, swept) in SWEEPS.iter() {
        for (i, s) in swept.iter().enumerate() {
            assert!(
                check_ff_minimality(&s.ff).is_empty(),
                "k={k} sweep[{i}]: first fit skipped a usable bin"
            );
            let report = check_ff_structure(&s.instance, &s.ff.packing, &s.opt).unwrap();
            assert!(report.ok, "k={k} sweep[{i}]: {:?}", report.violations);
            if k <= 8 {
                let mut tf = ThinFat::new(k);
                for size in &s.instance.sizes {
                    tf.place(size.clone());
                    let violations = check_tf_invariants(tf.state(), &tf.run().packing, k);
                    assert!(violations.is_empty(), "k={k} sweep[{i}]: {violations:?}");
                }
            }
        }
    }
    println!("PASS 8: replay minimality, 1-bin scatter, low-bin uniqueness, and thin/fat state hold");
}

/// Exhaustive minimum bin count by enumerating set partitions in
/// restricted-growth form, pruning only infeasible blocks. Independent of
/// the branch-and-bound oracle: no bounds, no incumbent, no sorting.
fn exhaustive_opt(instance: &Instance) -> usize {
    fn go(
        instance: &Instance,
        item: usize,
        levels: &mut Vec<Rational>,
        counts: &mut Vec<usize>,
        best: &mut usize,
    ) {
        if item == instance.len() {
            *best = (*best).min(levels.len());
            return;
        }
        let size = &instance.sizes[item];
        let k = instance.k as usize;
        for b in 0..levels.len() {
            if counts[b] < k && &levels[b] + size <= Rational::one() {
                levels[b] = &levels[b] + size;
                counts[b] += 1;
                go(instance, item + 1, levels, counts, best);
                counts[b] -= 1;
                levels[b] = &levels[b] - size;
            }
        }
        levels.push(size.clone());
        counts.push(1);
        go(instance, item + 1, levels, counts, best);
        counts.pop();
        levels.pop();
    }
    let mut best = instance.len().max(1);
    go(instance, 0, &mut Vec::new(), &mut Vec::new(), &mut best);
    best
}

#[test]
fn c9_oracle_matches_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..500 {
        let k = 2 + (i % 4) as u32;
        let instance = random_grid_instance(&mut rng, k, 10);
        let oracle = exact_opt(&instance, DEFAULT_NODE_BUDGET);
        assert!(oracle.is_exact(), "instance {i}");
        let brute = exhaustive_opt(&instance);
        assert_eq!(oracle.count(), brute, "instance {i} (k={k}, n={})", instance.len());
        let report = validate_packing(&instance, &oracle.certificate().packing).unwrap();
        assert!(report.ok, "instance {i}: {:?}", report.violations);
    }
    println!("PASS 9: oracle equals exhaustive set-partition enumeration on 500 instances");
}
