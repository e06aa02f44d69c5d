use fracmem::analysis::{adaptive_bound, l1_error_bound, trapezoid_error, ErrorBoundInputs};
use fracmem::caputo::{caputo_weight, weight_sum, WeightTriple};
use fracmem::experiment::TestFunction;
use fracmem::memory::GlCoefficients;
use fracmem::solvers::{DiffusionConfig, DiffusionSolver, GridField, KelvinVoigtConfig, KelvinVoigtSolver};
use fracmem::special::{gamma, ln_gamma};
use fracmem::{CaputoEvaluator, FractionalOrder, HistoryBuffer, MemoryPolicy, PolicyKind, TimePoint};
use proptest::prelude::*;

fn order() -> impl Strategy<Value = FractionalOrder> {
    (0.01f64..0.99).prop_map(|a| FractionalOrder::new(a).unwrap())
}

fn increasing_times(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    (0.0f64..5.0, prop::collection::vec(1e-3f64..2.0, 1..max_len)).prop_map(|(t0, steps)| {
        let mut t = vec![t0];
        for s in steps {
            let last = *t.last().unwrap();
            t.push(last + s);
        }
        t
    })
}

fn policy() -> impl Strategy<Value = MemoryPolicy> {
    (0usize..4, 0.05f64..3.0).prop_map(|(k, t)| MemoryPolicy::new(PolicyKind::ALL[k], t).unwrap())
}

// Solvers need the memory length on the time grid.
fn solver_policy(dt: f64) -> impl Strategy<Value = MemoryPolicy> {
    (0usize..4, 1usize..300).prop_map(move |(k, m)| MemoryPolicy::new(PolicyKind::ALL[k], m as f64 * dt).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weights_telescope(times in increasing_times(80), a in order()) {
        let t_n = *times.last().unwrap();
        let s = weight_sum(&times, a, t_n).unwrap();
        let beta = a.complement();
        let expect = (t_n - times[0]).powf(beta) / beta;
        prop_assert!((s - expect).abs() <= 1e-12 * expect, "{s} vs {expect}");
    }

    #[test]
    fn affine_functions_are_exact(times in increasing_times(60), a in order(), c0 in -10.0f64..10.0, c1 in -10.0f64..10.0) {
        let t0 = times[0];
        let t_n = *times.last().unwrap();
        let d = CaputoEvaluator::new(a)
            .evaluate(times.iter().map(|&t| (t, c0 + c1 * t)))
            .unwrap();
        let exact = c1 * (t_n - t0).powf(a.complement()) / gamma(2.0 - a.value());
        prop_assert!((d - exact).abs() <= 1e-13 * (1.0 + exact.abs()) * times.len() as f64, "{d} vs {exact}");
    }

    #[test]
    fn interval_errors_and_weights_are_positive(
        a in order(), t_k in 0.0f64..50.0, h in 1e-8f64..10.0, gap in 0.0f64..100.0,
    ) {
        let t_k1 = t_k + h;
        let t_n = t_k1 + gap;
        prop_assume!(t_k1 > t_k);
        let w = caputo_weight(WeightTriple::new(t_n, t_k, t_k1).unwrap(), a);
        prop_assert!(w > 0.0);
        prop_assert!(trapezoid_error(t_n, t_k, t_k1, a).unwrap() >= 0.0);
    }

    #[test]
    fn subset_contributions_grow_geometrically(a in order(), m in 1usize..200, levels in 1u32..12, dt in 1e-4f64..0.1) {
        let b = adaptive_bound(&ErrorBoundInputs { m_bound: 2.0, dt, m, levels, alpha: a }).unwrap();
        prop_assert!(b.u0 >= 0.0);
        let ratio = 2f64.powf(2.0 - a.value());
        for w in b.subsets.windows(2) {
            prop_assert!(w[0] >= 0.0);
            prop_assert!((w[1] - ratio * w[0]).abs() <= 1e-12 * w[1].abs());
        }
    }

    #[test]
    fn buffer_invariants_hold_after_every_push(p in policy(), steps in prop::collection::vec(1e-3f64..1.0, 1..300)) {
        let mut b = HistoryBuffer::new(p, TimePoint::new(0.0, ())).unwrap();
        let mut t = 0.0;
        for s in steps {
            t += s;
            b.push(TimePoint::new(t, ())).unwrap();
            b.check_invariants().unwrap();
            prop_assert_eq!(b.newest().t, t);
            if p.kind() != PolicyKind::Fixed {
                prop_assert_eq!(b.oldest().t, 0.0);
            }
            prop_assert!(b.peak_stored() >= b.count_stored());
        }
    }

    #[test]
    fn pushes_must_move_forward(p in policy(), back in 0.0f64..1.0) {
        let mut b = HistoryBuffer::new(p, TimePoint::new(1.0, ())).unwrap();
        prop_assert!(b.push(TimePoint::new(1.0 - back, ())).is_err());
    }

    #[test]
    fn measured_error_never_exceeds_bound(a in order(), m in 2usize..40, levels in 0u32..5, memory_length in 0.25f64..2.0) {
        let dt = memory_length / m as f64;
        let policy = MemoryPolicy::new(PolicyKind::AdaptivePresent, memory_length).unwrap();
        let f = TestFunction::Square;
        let eval = CaputoEvaluator::new(a);
        let mut b = HistoryBuffer::new(policy, TimePoint::new(0.0, 0.0)).unwrap();
        let total = m << levels;
        for n in 1..=total {
            let t = n as f64 * dt;
            b.push(TimePoint::new(t, f.eval(t))).unwrap();
            let d = eval.evaluate(b.iter().map(|p| (p.t, p.value))).unwrap();
            let exact = f.caputo(t, a.value());
            let bound = l1_error_bound(&b.times(), 2.0, a).unwrap();
            prop_assert!((d - exact).abs() <= bound + 1e-10 * exact.abs().max(1.0), "t={t}: {} > {bound}", (d - exact).abs());
        }
    }

    #[test]
    fn creep_rises_monotonically_below_limit(alpha in 0.05f64..0.95, eta in 0.2f64..5.0, k in 0.2f64..5.0, force in 0.1f64..3.0) {
        let cfg = KelvinVoigtConfig {
            eta,
            k,
            force,
            alpha: FractionalOrder::new(alpha).unwrap(),
            dt: 0.01,
            policy: MemoryPolicy::Full,
        };
        let mut s = KelvinVoigtSolver::new(cfg).unwrap();
        let mut prev = s.elongation();
        for _ in 0..400 {
            s.step().unwrap();
            let x = s.elongation();
            prop_assert!(x >= prev);
            prop_assert!(x <= force / k * (1.0 + 1e-12));
            prev = x;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn symmetric_fields_stay_symmetric(p in solver_policy(0.01), amp in -1.0f64..1.0) {
        let cfg = DiffusionConfig { dx: 0.25, ..DiffusionConfig::benchmark(p) };
        let l = cfg.length;
        let init = GridField::from_fn(40, 0.25, |x| {
            (std::f64::consts::PI * x / l).sin() + amp * (3.0 * std::f64::consts::PI * x / l).sin()
        });
        let mut s = DiffusionSolver::with_initial(cfg, init).unwrap();
        for _ in 0..300 {
            s.step().unwrap();
            let v = s.field().values().to_vec();
            let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
            for i in 0..v.len() {
                prop_assert!((v[i] - v[v.len() - 1 - i]).abs() <= 1e-12 * scale.max(1.0));
            }
        }
    }
}

// The L1 policies are monotone in the supremum norm. The rescaled GL weights
// are not, which the acceptance run reports separately.
#[test]
fn l1_policies_do_not_grow_the_sup_norm() {
    for kind in [PolicyKind::Full, PolicyKind::Fixed, PolicyKind::AdaptivePresent] {
        let mut s = DiffusionSolver::new(DiffusionConfig::benchmark(MemoryPolicy::new(kind, 0.1).unwrap())).unwrap();
        let mut prev = s.field().sup_norm();
        for n in 0..1000 {
            s.step().unwrap();
            let now = s.field().sup_norm();
            assert!(now <= prev * (1.0 + 1e-12), "{kind} grew at step {n}: {prev} -> {now}");
            prev = now;
        }
    }
}

#[test]
fn policies_agree_inside_the_memory_window() {
    let t_window = 0.5;
    let l1 = [PolicyKind::Full, PolicyKind::Fixed, PolicyKind::AdaptivePresent];
    let fields: Vec<Vec<f64>> = l1
        .iter()
        .map(|&k| {
            let mut s =
                DiffusionSolver::new(DiffusionConfig::benchmark(MemoryPolicy::new(k, t_window).unwrap())).unwrap();
            s.run_until(t_window).unwrap();
            s.field().values().to_vec()
        })
        .collect();
    assert_eq!(fields[0], fields[1]);
    assert_eq!(fields[0], fields[2]);

    let creep: Vec<f64> = l1
        .iter()
        .map(|&k| {
            let mut s = KelvinVoigtSolver::new(KelvinVoigtConfig::benchmark(MemoryPolicy::new(k, 1.0).unwrap())).unwrap();
            s.run_until(1.0).unwrap();
            s.elongation()
        })
        .collect();
    assert_eq!(creep[0], creep[1]);
    assert_eq!(creep[0], creep[2]);

    let mut gl = DiffusionSolver::new(DiffusionConfig::benchmark(MemoryPolicy::new(PolicyKind::AdaptiveGl, t_window).unwrap()))
        .unwrap();
    gl.run_until(t_window).unwrap();
    let dt: f64 = 0.01;
    let gap = gl
        .field()
        .values()
        .iter()
        .zip(&fields[0])
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(gap <= dt.powf(0.5), "gl vs l1 gap {gap}");
}

#[test]
fn gl_coefficients_shrink_and_partial_sums_vanish() {
    for a in [0.1, 0.5, 0.9] {
        let mut gl = GlCoefficients::new(FractionalOrder::new(a).unwrap());
        let mut sum = gl.get(0) + gl.get(1);
        let mut prev = gl.get(1).abs();
        for j in 2..=20_000usize {
            let c = gl.get(j);
            assert!(c < 0.0 && c.abs() < prev);
            prev = c.abs();
            sum += c;
            if j % 5000 == 0 {
                // Σ_{i<=j} c_i = Γ(j+1-α) / (Γ(1-α) Γ(j+1)) → 0.
                let n = j as f64;
                let expect = (ln_gamma(n + 1.0 - a) - ln_gamma(1.0 - a) - ln_gamma(n + 1.0)).exp();
                assert!((sum - expect).abs() <= 1e-10 * expect, "alpha {a}, j {j}: {sum} vs {expect}");
            }
        }
    }
}

// Near α = 1 the scheme becomes backward Euler and the spatial error of the
// three-point Laplacian dominates.
#[test]
fn second_order_in_space_near_unit_order() {
    let alpha = FractionalOrder::new(1.0 - 1e-7).unwrap();
    let dt = 2e-5;
    let length = 10.0;
    let errors: Vec<f64> = [1.0, 0.5, 0.25]
        .iter()
        .map(|&dx| {
            let cfg = DiffusionConfig {
                length,
                dx,
                dt,
                mu: (length / std::f64::consts::PI).powi(2),
                alpha,
                policy: MemoryPolicy::new(PolicyKind::Fixed, 5.0 * dt).unwrap(),
            };
            let mut s = DiffusionSolver::new(cfg).unwrap();
            s.run_until(1.0).unwrap();
            (s.center_value() - (-1.0f64).exp()).abs()
        })
        .collect();
    for w in errors.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((1.8..=2.2).contains(&order), "errors {errors:?}");
    }
}
