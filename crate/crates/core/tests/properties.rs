//! Cross-module properties on sampled realizations.

use anderson1d::randpot::{sample_covering, GapDistribution, Perturbation, PotentialRealization};
use anderson1d::rng::trial_seed;
use anderson1d::spectral::{
    bracket_counts_dn, count_negative_exact, count_with_bracketed_w, decoupled_count, fd_inertia_count, Boundary,
    PiecewisePotential, RefinePolicy,
};

fn realization(seed: u64, x: f64, h: f64) -> PotentialRealization {
    let dist = GapDistribution::exponential(1.0).unwrap();
    sample_covering(&dist, 0.5, h, x, seed, 1_000_000).unwrap()
}

#[test]
fn fd_on_smooth_w_lies_in_bracket() {
    let w = Perturbation::log_power(std::f64::consts::PI.powi(2), 2.0).unwrap();
    for seed in 0..3 {
        let real = realization(trial_seed(77, seed), 2000.0, 1.0);
        assert!(real.centers().len() >= 900);
        let cert = count_with_bracketed_w(&real, &w, Boundary::Dirichlet, RefinePolicy::fixed(32)).unwrap();
        assert!(cert.width() <= 1, "{cert:?}");
        let fd = fd_inertia_count(
            |x| real.value(x) - w.eval(x),
            real.domain(),
            1_000_000,
            Boundary::Dirichlet,
            Boundary::Dirichlet,
        )
        .unwrap();
        assert!(cert.contains(fd), "fd {fd} outside {cert:?}");
    }
}

#[test]
fn counts_grow_with_w() {
    let base = Perturbation::log_power(3.0, 2.0).unwrap();
    for seed in 0..10 {
        let real = realization(trial_seed(5, seed), 1500.0, 1.0);
        let mut prev = (0, 0);
        for factor in [0.5, 1.0, 2.0, 4.0, 8.0] {
            let c = count_with_bracketed_w(&real, &base.scaled(factor), Boundary::Dirichlet, RefinePolicy::default())
                .unwrap();
            assert!(c.n_lo >= prev.0 && c.n_hi >= prev.1);
            prev = (c.n_lo, c.n_hi);
        }
    }
}

#[test]
fn dirichlet_never_exceeds_neumann() {
    let w = Perturbation::log_power(15.0, 2.0).unwrap();
    for seed in 0..10 {
        let real = realization(trial_seed(6, seed), 800.0, 2.0);
        let d = count_with_bracketed_w(&real, &w, Boundary::Dirichlet, RefinePolicy::fixed(16)).unwrap();
        let n = count_with_bracketed_w(&real, &w, Boundary::Neumann, RefinePolicy::fixed(16)).unwrap();
        assert!(d.n_lo <= n.n_lo && d.n_hi <= n.n_hi);
        let dn = bracket_counts_dn(&real, &w, RefinePolicy::default()).unwrap();
        for i in &dn.intervals {
            assert!(i.dirichlet.0 <= i.neumann.0 && i.dirichlet.1 <= i.neumann.1, "{i:?}");
        }
    }
}

#[test]
fn hard_wall_intervals_follow_floor_formula() {
    let real = realization(8, 3000.0, 1e8);
    let w = Perturbation::constant(3.0).unwrap();
    let dn = bracket_counts_dn(&real, &w, RefinePolicy::default()).unwrap();
    let mut pairs = Vec::new();
    for i in dn.intervals.iter().filter(|i| i.index > 0 && i.end < real.domain()) {
        let gap = (i.end - i.start) - 2.0 * real.half_width();
        pairs.push((3.0, gap));
        assert_eq!(i.dirichlet.0, decoupled_count(&[(3.0, gap)]).unwrap(), "{i:?}");
    }
    assert!(pairs.len() > 500);
}

#[test]
fn translation_leaves_counts_unchanged() {
    let q = PiecewisePotential::from_lengths(&[(2.0, 1.0), (7.5, -3.0), (1.0, 5.0), (4.0, -0.7)]).unwrap();
    for shift in [-1000.0, -0.25, 3.0, 12345.678] {
        for (l, r) in [
            (Boundary::Dirichlet, Boundary::Dirichlet),
            (Boundary::Neumann, Boundary::Dirichlet),
            (Boundary::Neumann, Boundary::Neumann),
        ] {
            assert_eq!(count_negative_exact(&q.translated(shift), l, r), count_negative_exact(&q, l, r));
        }
    }
}

#[test]
fn serialization_is_byte_stable() {
    let a = realization(99, 500.0, 1.0);
    let b = realization(99, 500.0, 1.0);
    assert_eq!(a.to_text(), b.to_text());
    assert_eq!(a.to_csv(), b.to_csv());
    let back = PotentialRealization::from_text(&a.to_text()).unwrap();
    assert_eq!(back.to_text(), a.to_text());
}
