use eigenbounds::continuum::{local_energy_zeeman, ZeemanPoint};
use eigenbounds::discrete::{
    bloch_matrix, hofstadter_bottom, local_energy_discrete, nonsym_bounds_real, tighten_bounds,
    DiscreteTestVector, PeriodicPotential,
};
use eigenbounds::linalg::{exact_ground_energy, Matrix};
use eigenbounds::manybody::{
    angles_sum_fn, angles_sum_fn_with_gradient, cluster_sum, default_check_radii,
    identical_coulomb_bounds, local_energy_coulomb, local_energy_identical, local_energy_nbody,
    maximize_fn, named_configuration, proposition_two_body_bounds, AlphaSource, Configuration,
    ConfigurationName, PairFunction, PairFunctionSet, ParticleSystem,
};
use eigenbounds::{
    extrema, optimize_lower, optimize_upper, rayleigh_quotient, LocalEnergyProfile,
    OptimizerConfig, TestFamily,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn potential_and_phi() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (3usize..=12).prop_flat_map(|n| {
        (
            prop::collection::vec(-2.0f64..2.0, n),
            prop::collection::vec(0.05f64..5.0, n),
        )
    })
}

fn random_configuration(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Configuration {
    let points = (0..n)
        .map(|_| (0..d).map(|_| rng.sample(StandardNormal)).collect())
        .collect();
    Configuration::new(d, points).unwrap()
}

/// Orthogonal matrix from Gram–Schmidt on Gaussian columns.
fn random_rotation(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<f64>> {
    let mut q: Vec<Vec<f64>> = Vec::new();
    while q.len() < d {
        let mut v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        for u in &q {
            let dot: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            q.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    q
}

fn schrodinger_matrix(v: &[f64]) -> Matrix<f64> {
    let n = v.len();
    let mut m = Matrix::diagonal(v);
    for q in 0..n {
        m.set(q, (q + 1) % n, -1.0);
        m.set((q + 1) % n, q, -1.0);
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discrete_sandwich((v, phi) in potential_and_phi(), eta2 in 0.0f64..1.0) {
        let potential = PeriodicPotential::new(v).unwrap();
        let phi = DiscreteTestVector::new(phi).unwrap();
        let bounds = extrema(&local_energy_discrete(&potential, &phi, eta2).unwrap()).unwrap();
        let e0 = bloch_matrix(&potential, eta2).unwrap().exact_ground_energy().unwrap().e0;
        prop_assert!(bounds.encloses(e0, 1e-12), "{bounds:?} vs {e0}");
    }

    #[test]
    fn rayleigh_dominance((v, phi) in potential_and_phi(), weight in 0.1f64..3.0) {
        let h = schrodinger_matrix(&v);
        let apply = |x: &[f64]| h.mul_vec(x);
        let profile = LocalEnergyProfile::from_operator(apply, &phi).unwrap();
        let upper = extrema(&profile).unwrap().upper;
        let rq = rayleigh_quotient(apply, &phi, &vec![weight; phi.len()]).unwrap();
        prop_assert!(upper - rq >= -1e-12, "sup {upper} < rayleigh {rq}");
    }

    #[test]
    fn scale_invariance((v, phi) in potential_and_phi(), k in -20i32..20, c in 0.01f64..100.0) {
        let potential = PeriodicPotential::new(v).unwrap();
        let base = local_energy_discrete(&potential, &DiscreteTestVector::new(phi.clone()).unwrap(), 0.0).unwrap();
        // powers of two scale without rounding, so the profile is bitwise unchanged
        let exact: Vec<f64> = phi.iter().map(|p| p * 2f64.powi(k)).collect();
        let scaled = local_energy_discrete(&potential, &DiscreteTestVector::new(exact).unwrap(), 0.0).unwrap();
        prop_assert_eq!(base.values(), scaled.values());
        let general: Vec<f64> = phi.iter().map(|p| p * c).collect();
        let scaled = local_energy_discrete(&potential, &DiscreteTestVector::new(general).unwrap(), 0.0).unwrap();
        for (a, b) in base.values().iter().zip(scaled.values()) {
            let (a, b) = (a.unwrap(), b.unwrap());
            prop_assert!((a - b).abs() <= 1e-13 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn exact_at_ground_vector((v, _) in potential_and_phi(), eta2 in 0.0f64..1.0) {
        let potential = PeriodicPotential::new(v).unwrap();
        let ground = bloch_matrix(&potential, eta2).unwrap().exact_ground_energy().unwrap();
        let phi = DiscreteTestVector::new(ground.vector.clone()).unwrap();
        let bounds = extrema(&local_energy_discrete(&potential, &phi, eta2).unwrap()).unwrap();
        prop_assert!(bounds.width() <= 1e-8);
        prop_assert!((bounds.lower - ground.e0).abs() <= 1e-8);
    }

    #[test]
    fn symmetric_matrix_nonsym_bounds((v, phi) in potential_and_phi()) {
        let h = schrodinger_matrix(&v);
        let b = nonsym_bounds_real(&h, &phi).unwrap();
        let profile = extrema(&LocalEnergyProfile::from_operator(|x| h.mul_vec(x), &phi).unwrap()).unwrap();
        prop_assert!((b.re_lower - profile.lower).abs() <= 1e-12 * (1.0 + profile.lower.abs()));
        prop_assert!((b.re_upper - profile.upper).abs() <= 1e-12 * (1.0 + profile.upper.abs()));
        prop_assert!(b.im_lower <= 0.0 && 0.0 <= b.im_upper);
    }

    #[test]
    fn tightening_trace(m in 1usize..12, n in 3usize..12, v0 in 0.0f64..3.0) {
        prop_assume!(m < n && gcd(m, n) == 1);
        let potential = PeriodicPotential::harper(m, n, v0).unwrap();
        let e0 = bloch_matrix(&potential, 0.0).unwrap().exact_ground_energy().unwrap().e0;
        let config = OptimizerConfig { max_iterations: 2000, tolerance: 1e-9, ..OptimizerConfig::default() };
        let t = tighten_bounds(&potential, &DiscreteTestVector::ones(n), 0.0, &config).unwrap();
        for w in t.trace.windows(2) {
            prop_assert!(w[1].width() <= w[0].width());
        }
        for b in &t.trace {
            prop_assert!(b.encloses(e0, 1e-12), "{b:?} vs {e0}");
        }
    }

    #[test]
    fn optimizer_history_monotone(seed in 0u64..1000, v0 in 0.5f64..3.0) {
        let potential = PeriodicPotential::harper(2, 7, v0).unwrap();
        let family = TestFamily::new(vec![(-2.0, 2.0), (-2.0, 2.0)], |l: &[f64]| {
            DiscreteTestVector::new((0..7).map(|q| (l[0] * (q as f64).cos() + l[1] * (q as f64 * 0.5).sin()).exp()).collect()).unwrap()
        }).unwrap();
        let build = |phi: &DiscreteTestVector| local_energy_discrete(&potential, phi, 0.0);
        let config = OptimizerConfig { max_iterations: 200, tolerance: 1e-9, restarts: 2, seed };
        let lo = optimize_lower(&family, build, &config).unwrap();
        let hi = optimize_upper(&family, build, &config).unwrap();
        prop_assert!(lo.history.windows(2).all(|w| w[1] >= w[0]));
        prop_assert!(hi.history.windows(2).all(|w| w[1] <= w[0]));
        let e0 = bloch_matrix(&potential, 0.0).unwrap().exact_ground_energy().unwrap().e0;
        prop_assert!(lo.bound <= e0 + 1e-12 && e0 <= hi.bound + 1e-12);
    }

    #[test]
    fn gauge_invariance(seed in any::<u64>(), n in 3usize..9, d in 2usize..5, scale in 0.01f64..100.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_configuration(&mut rng, n, d);
        let f = angles_sum_fn(&c).unwrap().value;
        let rot = random_rotation(&mut rng, d);
        let shift: Vec<f64> = (0..d).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let moved: Vec<Vec<f64>> = c.points().iter().map(|p| {
            (0..d).map(|i| scale * rot[i].iter().zip(p).map(|(a, b)| a * b).sum::<f64>() + shift[i]).collect()
        }).collect();
        let g = angles_sum_fn(&Configuration::new(d, moved).unwrap()).unwrap().value;
        prop_assert!((f - g).abs() <= 1e-10, "{f} vs {g}");
    }

    #[test]
    fn gradient_matches_finite_differences(seed in any::<u64>(), n in 3usize..8, d in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_configuration(&mut rng, n, d);
        let grad = angles_sum_fn_with_gradient(&c).unwrap().gradient.unwrap();
        let flat = c.flat();
        let h = 1e-6;
        let mut fd = Vec::with_capacity(flat.len());
        for k in 0..flat.len() {
            let mut plus = flat.clone();
            let mut minus = flat.clone();
            plus[k] += h;
            minus[k] -= h;
            let fp = angles_sum_fn(&Configuration::from_flat(d, &plus).unwrap()).unwrap().value;
            let fm = angles_sum_fn(&Configuration::from_flat(d, &minus).unwrap()).unwrap().value;
            fd.push((fp - fm) / (2.0 * h));
        }
        let analytic: Vec<f64> = grad.concat();
        let diff = analytic.iter().zip(&fd).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let norm = analytic.iter().map(|a| a * a).sum::<f64>().sqrt();
        prop_assert!(diff <= 1e-5 * norm.max(1.0), "diff {diff}, norm {norm}");
    }

    #[test]
    fn clustering_identity(seed in any::<u64>(), n in 3usize..=6, m_offset in 0usize..4) {
        let m = 3 + m_offset % (n - 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_configuration(&mut rng, n, 3);
        let f = angles_sum_fn(&c).unwrap().value;
        prop_assert!((cluster_sum(&c, m).unwrap() - f).abs() <= 1e-10);
    }

    #[test]
    fn coulomb_forms_agree(seed in any::<u64>(), n in 2usize..8, d in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_configuration(&mut rng, n, d);
        let a = local_energy_coulomb(&c, &ParticleSystem::identical(n)).unwrap();
        let b = local_energy_identical(&c).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
    }

    #[test]
    fn zeeman_never_exceeds_bound(rho in 0.0f64..1e3, z in -1e3f64..1e3, b in 0.0f64..50.0) {
        let e = local_energy_zeeman(ZeemanPoint::new(rho, z, b).unwrap());
        prop_assert!(e <= -0.5 + 0.5 * b + 1e-12);
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn general_formula_matches_identical_coulomb() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2usize, 3, 4] {
        let sys = ParticleSystem::identical(n);
        let pairs =
            PairFunctionSet::uniform(n, PairFunction::exponential(-0.5), &default_check_radii())
                .unwrap();
        for _ in 0..100 {
            let c = random_configuration(&mut rng, n, 3);
            let general = local_energy_nbody(&c, &sys, &pairs, |_, _, r| -1.0 / r).unwrap();
            let closed = local_energy_identical(&c).unwrap();
            assert!(
                (general - closed).abs() <= 1e-10 * (1.0 + closed.abs()),
                "{general} vs {closed}"
            );
        }
    }
}

#[test]
fn general_formula_with_masses_matches_coulomb() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let n = 4;
    let masses = vec![1.0, 2.0, 0.5, 3.0];
    let mut charges = Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let e = rng.gen_range(-2.0..2.0);
            charges.set(i, j, e);
            charges.set(j, i, e);
        }
    }
    let sys = ParticleSystem::new(masses, charges).unwrap();
    let d = 3;
    let pairs = PairFunctionSet::new(
        n,
        |i, j| {
            PairFunction::exponential(
                2.0 * sys.charge(i, j) * sys.reduced_mass(i, j) / (d - 1) as f64,
            )
        },
        &default_check_radii(),
    )
    .unwrap();
    for _ in 0..50 {
        let c = random_configuration(&mut rng, n, d);
        let general = local_energy_nbody(&c, &sys, &pairs, |i, j, r| sys.charge(i, j) / r).unwrap();
        let coulomb = local_energy_coulomb(&c, &sys).unwrap();
        assert!((general - coulomb).abs() <= 1e-10 * (1.0 + coulomb.abs()));
    }
}

#[test]
fn triangle_angle_sum_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..100_000 {
        let f = angles_sum_fn(&random_configuration(&mut rng, 3, 3))
            .unwrap()
            .value;
        lo = lo.min(f);
        hi = hi.max(f);
    }
    assert!(lo >= 1.0 - 1e-9 && hi <= 1.5 + 1e-9, "[{lo}, {hi}]");
    for _ in 0..100 {
        let a: Vec<f64> = (0..3).map(|_| rng.sample(StandardNormal)).collect();
        let dir: Vec<f64> = (0..3).map(|_| rng.sample(StandardNormal)).collect();
        let ts = [0.0, rng.gen_range(0.1..1.0), rng.gen_range(1.5..3.0)];
        let pts = ts
            .iter()
            .map(|t| a.iter().zip(&dir).map(|(x, v)| x + t * v).collect())
            .collect();
        let f = angles_sum_fn(&Configuration::new(3, pts).unwrap())
            .unwrap()
            .value;
        assert!((f - 1.0).abs() < 1e-10);
    }
}

#[test]
fn aligned_points_minimize() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 3..=6usize {
        let aligned = angles_sum_fn(
            &named_configuration(ConfigurationName::Aligned, Some(n as f64)).unwrap(),
        )
        .unwrap()
        .value;
        let inf = (n * (n - 1) * (n - 2)) as f64 / 6.0;
        assert_eq!(aligned, inf);
        for _ in 0..250_000 {
            let f = angles_sum_fn(&random_configuration(&mut rng, n, 3))
                .unwrap()
                .value;
            assert!(f >= inf - 1e-9);
        }
    }
}

#[test]
fn best_found_density_decreases() {
    let config = OptimizerConfig::new(3000, 1e-10, 20, 5).unwrap();
    let mut previous = 0.25 + 1e-12;
    for n in 3..=8usize {
        let best = maximize_fn(n, 3, &config).unwrap().best_value;
        let density = best / (n * (n - 1) * (n - 2)) as f64;
        assert!(
            density <= previous + 1e-9,
            "N = {n}: {density} > {previous}"
        );
        previous = density;
    }
}

#[test]
fn two_body_proposition_is_looser() {
    let d = 3;
    for n in 3..=8usize {
        let mut eps = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    eps.set(i, j, -0.25);
                }
            }
        }
        let s = 2.0 * 0.5 * 1.0 / (d - 1) as f64;
        let (lo, hi) = proposition_two_body_bounds(n, &eps, s, 1.0).unwrap();
        let b = identical_coulomb_bounds(n, d, AlphaSource::Lemma3).unwrap();
        assert!(lo <= b.lower + 1e-12 && hi >= b.upper - 1e-12);
    }
}

#[test]
fn zeeman_unbounded_below() {
    let e = local_energy_zeeman(ZeemanPoint::new(1e6, 0.0, 1.0).unwrap());
    assert!(e < -1e5);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1_000_000 {
        let p = ZeemanPoint::new(
            rng.gen_range(0.0..100.0),
            rng.gen_range(-100.0..100.0),
            rng.gen_range(0.0..20.0),
        )
        .unwrap();
        assert!(local_energy_zeeman(p) <= -0.5 + 0.5 * p.b + 1e-12);
    }
}

#[test]
fn mirrored_fluxes_agree() {
    let config = OptimizerConfig {
        max_iterations: 100_000,
        tolerance: 1e-9,
        ..OptimizerConfig::default()
    };
    let rows = hofstadter_bottom(&[(2, 9), (7, 9), (3, 11), (8, 11)], 1.5, &config).unwrap();
    for pair in rows.chunks(2) {
        assert!((pair[0].lower - pair[1].lower).abs() <= 1e-12);
        assert!((pair[0].upper - pair[1].upper).abs() <= 1e-12);
    }
}

#[test]
fn dense_oracle_on_symmetric_operator() {
    let v = [0.3, -1.2, 0.8, 1.9, -0.4];
    let g = exact_ground_energy(&schrodinger_matrix(&v)).unwrap();
    let profile =
        LocalEnergyProfile::from_operator(|x| schrodinger_matrix(&v).mul_vec(x), &g.vector)
            .unwrap();
    let b = extrema(&profile).unwrap();
    assert!(b.width() < 1e-10 && (b.lower - g.e0).abs() < 1e-10);
}
