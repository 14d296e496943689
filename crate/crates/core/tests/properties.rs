use std::f64::consts::TAU;

use proptest::prelude::*;

use hardy_sampling::geometry::{stolz_arc, Aperture, DiskPoint};
use hardy_sampling::points::PointSet;
use hardy_sampling::sampling::{
    lemma1_identity_check, m_a, m_a_lp_norm, m_a_lp_norm_grid, m_a_p, mu_norm, nt_coverage, sampling_ratio,
};
use hardy_sampling::{Exponent, FunctionSpec};
use num_complex::Complex64;

fn point() -> impl Strategy<Value = DiskPoint> {
    (0.0..0.995f64, 0.0..TAU).prop_map(|(r, t)| DiskPoint::from_polar(r, t).unwrap())
}

fn point_set(max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(point(), 1..max).prop_map(PointSet::new)
}

fn function() -> impl Strategy<Value = FunctionSpec> {
    prop_oneof![
        (0u32..6).prop_map(FunctionSpec::monomial),
        prop::collection::vec(point(), 1..4).prop_map(FunctionSpec::blaschke),
        (0.0..TAU, 0.1..2.0f64).prop_map(|(t, m)| FunctionSpec::singular_inner(t, m).unwrap()),
    ]
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![Just(0.5), Just(1.0), Just(2.0), 0.3..4.0f64].prop_map(|p| Exponent::new(p).unwrap())
}

fn aperture() -> impl Strategy<Value = Aperture> {
    (0.1..4.0f64).prop_map(|a| Aperture::new(a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn max_is_dominated_by_sum(f in function(), a in point_set(40), t in 0.0..TAU, al in aperture(), p in exponent()) {
        let max = m_a(&f, &a, t, al).unwrap();
        let sum = m_a_p(&f, &a, t, al, p).unwrap();
        prop_assert!(max <= sum * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn maximal_function_grows_with_the_set(f in function(), a in point_set(30), b in point_set(30), t in 0.0..TAU, al in aperture()) {
        let mut ab = a.clone();
        ab.extend(&b);
        prop_assert!(m_a(&f, &a, t, al).unwrap() <= m_a(&f, &ab, t, al).unwrap());
    }

    #[test]
    fn stolz_arc_widens_with_aperture(z in point(), a in 0.1..2.0f64, extra in 0.0..2.0f64) {
        let small = stolz_arc(&z, Aperture::new(a).unwrap()).measure();
        let large = stolz_arc(&z, Aperture::new(a + extra).unwrap()).measure();
        prop_assert!(small <= large + 1e-15);
    }

    #[test]
    fn coverage_shrinks_with_depth_and_grows_with_aperture(a in point_set(60), n in 1u32..64, al in 0.1..2.0f64) {
        let alpha = Aperture::new(al).unwrap();
        let shallow = nt_coverage(&a, alpha, n).unwrap();
        let deep = nt_coverage(&a, alpha, 2 * n).unwrap();
        let wide = nt_coverage(&a, Aperture::new(2.0 * al).unwrap(), n).unwrap();
        prop_assert!(deep <= shallow + 1e-12);
        prop_assert!(shallow <= wide + 1e-12);
        prop_assert!((0.0..=TAU).contains(&shallow));
    }

    #[test]
    fn arc_identity_holds(f in function(), a in point_set(200), al in aperture(), p in exponent()) {
        let c = lemma1_identity_check(&f, &a, p, al).unwrap();
        prop_assert!(c.relative_error <= 1e-10, "{c:?}");
    }

    #[test]
    fn norms_are_homogeneous(f in function(), a in point_set(40), c in 0.1..10.0f64, al in aperture(), p in exponent()) {
        let g = f.clone().times(FunctionSpec::constant(Complex64::new(0.0, c)).unwrap());
        let mu_f = mu_norm(&f, &a, p).unwrap();
        let mu_g = mu_norm(&g, &a, p).unwrap();
        prop_assert!((mu_g - c * mu_f).abs() <= 1e-10 * (c * mu_f).max(1e-300));
        let rf = sampling_ratio(&f, &a, p, al, 16.0).unwrap().ratio;
        let rg = sampling_ratio(&g, &a, p, al, 16.0).unwrap().ratio;
        prop_assert!((rf - rg).abs() <= 1e-9 * rf.max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sweep_matches_dense_grid(f in function(), a in point_set(200), al in 0.5..2.0f64) {
        let alpha = Aperture::new(al).unwrap();
        let p = Exponent::new(2.0).unwrap();
        let exact = m_a_lp_norm(&f, &a, p, alpha).unwrap();
        let grid = m_a_lp_norm_grid(&f, &a, p, alpha, 1 << 14).unwrap();
        prop_assert!((exact - grid).abs() <= 1e-4 * exact.max(1e-12) + 1e-12, "{exact} vs {grid}");
    }
}
