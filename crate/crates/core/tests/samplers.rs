mod common;

use condmc::ecdf::{sup_distance, Ecdf};
use condmc::framework::{
    estimate_conditional_expectation, mh_sample, mh_sample_chains, naive_sample,
    rejection_sample, MhConfig, NaiveConfig, PriorBox, RejectionConfig,
};
use condmc::models::proposals::{GammaIid, NormalMixture};
use condmc::models::{
    normal_range_sample, uniform_sum_sample, GammaSuffModel, InvGaussSuffModel, NormalRangeModel,
    UniformSumModel,
};
use condmc::{ConditionalModel, Error, Execution, RngState};

use common::ks_from_cdf;

fn uniform_on(sample: &[f64], hi: f64) -> f64 {
    let e = Ecdf::new(sample).unwrap();
    let cdf: Vec<f64> = e.sorted().iter().map(|x| (x / hi).clamp(0.0, 1.0)).collect();
    ks_from_cdf(&cdf)
}

#[test]
fn sequential_and_parallel_agree() {
    let us = UniformSumModel::new(3, 1.0, 0.8).unwrap();
    let nr = NormalRangeModel::new(4, 1.5).unwrap();
    let gm = GammaSuffModel::new(3, 4.86, 1.02, PriorBox::default()).unwrap();
    let run = |exec: Execution| {
        let mut rng = RngState::new(77, 1);
        let a = uniform_sum_sample(&us, 5000, u64::MAX, exec, &mut rng).unwrap();
        let b = normal_range_sample(&nr, 5000, u64::MAX, exec, &mut rng).unwrap();
        let c = mh_sample_chains(&gm, &MhConfig::new(3000), 4, exec, &mut rng).unwrap();
        let (k, theta) = gm.mle();
        let mut cfg = NaiveConfig::new(vec![0.1, 0.1], 3000);
        cfg.exec = exec;
        let d = naive_sample(&GammaIid::new(k, theta).unwrap(), 3, gm.target(), &cfg, &mut rng).unwrap();
        let e = estimate_conditional_expectation(&gm, |x| x[0], 5000, exec, &mut rng).unwrap();
        (a, b, c, d, e)
    };
    assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
}

#[test]
fn equal_seeds_give_equal_batches() {
    let gm = InvGaussSuffModel::new(3, 3.67, 6.01, PriorBox::default()).unwrap();
    let cfg = MhConfig::new(2000).with_burn_in(100);
    let a = mh_sample(&gm, &cfg, &mut RngState::new(5, 0)).unwrap();
    let b = mh_sample(&gm, &cfg, &mut RngState::new(5, 0)).unwrap();
    let c = mh_sample(&gm, &cfg, &mut RngState::new(5, 1)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.as_flat(), c.as_flat());
}

#[test]
fn importance_sampling_uniform_sum_mean() {
    let model = UniformSumModel::new(2, 1.0, 0.3).unwrap();
    let mut rng = RngState::new(11, 0);
    let est = estimate_conditional_expectation(&model, |x| x[0], 200_000, Execution::default(), &mut rng).unwrap();
    assert!((est.estimate - 0.15).abs() <= 3.0 * est.std_error, "{est:?}");
    assert!(est.std_error > 0.0);
}

#[test]
fn importance_sampling_constant_is_exact() {
    let model = GammaSuffModel::new(3, 4.86, 1.02, PriorBox::default()).unwrap();
    let mut rng = RngState::new(12, 0);
    let est = estimate_conditional_expectation(&model, |_| 1.0, 10_000, Execution::default(), &mut rng).unwrap();
    assert_eq!(est.estimate, 1.0);
    assert_eq!(est.std_error, 0.0);
}

#[test]
fn importance_sampling_of_t1_returns_t1() {
    let model = GammaSuffModel::new(3, 4.86, 1.02, PriorBox::default()).unwrap();
    let mut rng = RngState::new(13, 0);
    let est = estimate_conditional_expectation(
        &model,
        |x| x.iter().sum(),
        10_000,
        Execution::default(),
        &mut rng,
    )
    .unwrap();
    assert!((est.estimate - 4.86).abs() <= 1e-8 * 4.86);
}

#[test]
fn importance_sampling_needs_two_draws() {
    let model = UniformSumModel::new(2, 1.0, 0.3).unwrap();
    let err = estimate_conditional_expectation(&model, |x| x[0], 1, Execution::default(), &mut RngState::new(1, 0));
    assert!(matches!(err, Err(Error::InvalidParameter(_))));
}

#[test]
fn mh_uniform_sum_marginal_is_uniform() {
    let model = UniformSumModel::new(2, 1.0, 0.3).unwrap();
    let mut rng = RngState::new(21, 0);
    // About 4.5% of uniform proposals land in the triangle, so thin enough
    // that consecutive kept states are nearly independent.
    let batch = mh_sample(&model, &MhConfig::new(10_000).with_thin(100), &mut rng).unwrap();
    assert_eq!(batch.len(), 10_000);
    assert!(uniform_on(&batch.column(0), 0.3) < 0.02);
}

#[test]
fn normal_range_samplers_agree() {
    let model = NormalRangeModel::new(3, 2.0).unwrap();
    let mut rng = RngState::new(22, 0);
    let rej = normal_range_sample(&model, 10_000, u64::MAX, Execution::default(), &mut rng).unwrap();
    let mh = mh_sample(&model, &MhConfig::new(10_000), &mut rng).unwrap();
    let naive = naive_sample(
        &NormalMixture::standard(),
        3,
        model.target(),
        &NaiveConfig::new(vec![0.02], 10_000),
        &mut rng,
    )
    .unwrap();
    let (a, b, c) = (
        Ecdf::new(&rej.column(0)).unwrap(),
        Ecdf::new(&mh.column(0)).unwrap(),
        Ecdf::new(&naive.column(0)).unwrap(),
    );
    for d in [sup_distance(&a, &b), sup_distance(&a, &c), sup_distance(&b, &c)] {
        assert!(d < 0.05, "{d}");
    }
}

#[test]
fn normal_range_with_large_t_has_a_vacuous_indicator() {
    let model = NormalRangeModel::new(3, 100.0).unwrap();
    let mut rng = RngState::new(23, 0);
    let mut u = [0.0; 3];
    for _ in 0..2000 {
        model.proposal().sample_into(&mut rng, &mut u);
        let p = model.project(&u).unwrap();
        assert!(p.log_h.is_finite());
        let r = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - u.iter().cloned().fold(f64::INFINITY, f64::min);
        for (x, v) in p.x_hat.iter().zip(u) {
            assert!((x * r / 100.0 - v).abs() <= 1e-12 * (1.0 + v.abs()));
        }
    }
}

#[test]
fn normal_range_mixture_run_is_valid() {
    let model = NormalRangeModel::with_mixture(3, 0.5, 0.3, 0.2).unwrap();
    let mut rng = RngState::new(24, 0);
    let batch = normal_range_sample(&model, 2000, u64::MAX, Execution::default(), &mut rng).unwrap();
    assert_eq!(batch.len(), 2000);
}

#[test]
fn uniform_sum_with_one_coordinate_is_constant() {
    let model = UniformSumModel::new(1, 1.0, 0.5).unwrap();
    let mut rng = RngState::new(25, 0);
    let batch = uniform_sum_sample(&model, 100, u64::MAX, Execution::default(), &mut rng).unwrap();
    assert!(batch.as_flat().iter().all(|&x| x == 0.5));
}

#[test]
fn small_bound_is_reported() {
    let model = GammaSuffModel::new(3, 4.86, 1.02, PriorBox::default()).unwrap();
    let mut rng = RngState::new(27, 0);
    let err = rejection_sample(&model, &RejectionConfig::new(1e-12, 100), &mut rng);
    assert!(matches!(err, Err(Error::BoundViolation { .. })), "{err:?}");
}

#[test]
fn naive_samples_respect_the_box() {
    let model = GammaSuffModel::new(3, 4.86, 1.02, PriorBox::default()).unwrap();
    let (k, theta) = model.mle();
    let g = GammaIid::new(k, theta).unwrap();
    let mut rng = RngState::new(28, 0);
    let batch = naive_sample(&g, 3, model.target(), &NaiveConfig::new(vec![0.01, 0.01], 1000), &mut rng).unwrap();
    assert_eq!(batch.len(), 1000);
    for x in batch.rows() {
        let t1: f64 = x.iter().sum();
        let t2: f64 = x.iter().map(|v| v.ln()).sum();
        assert!((t1 - 4.86).abs() <= 0.01 && (t2 - 1.02).abs() <= 0.01);
    }
}

#[test]
fn naive_with_huge_tolerance_accepts_everything() {
    let model = GammaSuffModel::new(3, 4.86, 1.02, PriorBox::default()).unwrap();
    let mut rng = RngState::new(29, 0);
    let g = GammaIid::new(1.0, 1.0).unwrap();
    let batch = naive_sample(&g, 3, model.target(), &NaiveConfig::new(vec![1e300, 1e300], 500), &mut rng).unwrap();
    assert_eq!(batch.acceptance_rate(), 1.0);
    let empty = naive_sample(&g, 3, model.target(), &NaiveConfig::new(vec![0.1, 0.1], 0), &mut rng).unwrap();
    assert!(empty.is_empty());
}

#[test]
fn naive_budget_exhaustion_keeps_partial_output() {
    let model = GammaSuffModel::new(3, 4.86, 1.02, PriorBox::default()).unwrap();
    let mut rng = RngState::new(30, 0);
    let g = GammaIid::new(1.0, 1.0).unwrap();
    let mut cfg = NaiveConfig::new(vec![1e-6, 1e-6], 10);
    cfg.max_draws = 1000;
    match naive_sample(&g, 3, model.target(), &cfg, &mut rng) {
        Err(Error::BudgetExhausted { draws, partial, .. }) => {
            assert!(draws >= 1000);
            assert!(partial.len() < 10);
        }
        other => panic!("expected budget exhaustion, got {other:?}"),
    }
}

#[test]
fn chain_started_at_data_solves_to_unit_theta() {
    let x = [1.3, 0.4, 2.2, 0.9];
    for model in [
        Box::new(GammaSuffModel::from_data(&x, PriorBox::default()).unwrap()) as Box<dyn ConditionalModel>,
        Box::new(InvGaussSuffModel::from_data(&x, PriorBox::default()).unwrap()),
    ] {
        let p = model.project(&x).unwrap();
        assert!((p.theta.alpha() - 1.0).abs() < 1e-10 && (p.theta.beta() - 1.0).abs() < 1e-10);
        assert!(p.log_h.is_finite());
    }
}

#[test]
fn mh_diagnostics_count_every_iteration() {
    let model = GammaSuffModel::new(10, 16.49, 2.85, PriorBox::default()).unwrap();
    let cfg = MhConfig::new(500).with_thin(3).with_burn_in(50).with_diagnostics();
    let batch = mh_sample(&model, &cfg, &mut RngState::new(31, 0)).unwrap();
    let d = &batch.diagnostics;
    assert_eq!(d.proposals, 50 + 500 * 3);
    assert_eq!(d.accept_flags.as_ref().unwrap().len() as u64, d.proposals);
    assert_eq!(batch.theta_hats.len(), 500);
    assert!(batch.theta_hats.iter().all(|th| model.prior().contains(*th)));
}
