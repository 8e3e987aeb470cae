use proptest::prelude::*;
use rkdg::{
    godunov_flux, project_l2, semi_discrete_rhs, spatial_indicator, BoundaryModel, DgSpace, FluxFunction, FluxModel,
    Mesh, RunConfig,
};

fn burgers() -> FluxModel {
    FluxModel::new(FluxFunction::Burgers, 0.1, 3.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn godunov_is_upwind_under_west_wind(a in 0.1f64..3.0, b in 0.1f64..3.0) {
        let flux = burgers();
        prop_assert_eq!(godunov_flux(a, b, &flux).unwrap(), 0.5 * a * a);
    }

    #[test]
    fn projection_reproduces_global_polynomials(
        coeffs in prop::collection::vec(-1.0f64..1.0, 1..5),
        p in 4usize..7,
    ) {
        let space = DgSpace::new(Mesh::new(-1.0, 2.0, 6).unwrap(), p).unwrap();
        let poly = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let u = project_l2(poly, &space).unwrap();
        for i in 1..30 {
            let x = -1.0 + 3.0 * i as f64 / 30.0 + 1e-3;
            prop_assert!((u.eval(x, 0).unwrap() - poly(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn jumps_vanish_for_smooth_polynomials(
        coeffs in prop::collection::vec(-0.1f64..0.1, 1..4),
    ) {
        // a global polynomial has continuous derivatives: every interior jump is rounding
        let space = DgSpace::new(Mesh::new(0.0, 1.0, 8).unwrap(), 3).unwrap();
        let poly = |x: f64| 1.0 + coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let u = project_l2(poly, &space).unwrap();
        let cfg = RunConfig { p: 3, h: 0.125, ..Default::default() };
        let bc = BoundaryModel::Periodic;
        let s = spatial_indicator(&u, &cfg, &burgers(), &bc, 0.0).unwrap();
        for j in 1..s.cells {
            for l in 0..=3 {
                prop_assert!(s.jump(j, l).abs() < 1e-9, "j={} l={} {}", j, l, s.jump(j, l));
                prop_assert_eq!(s.jump(j, l), s.m(j, l) - s.l(j, l));
            }
        }
    }

    #[test]
    fn periodic_rhs_has_zero_mean(
        amp in 0.0f64..0.4,
        shift in 0.0f64..6.3,
        p in 0usize..5,
    ) {
        let space = DgSpace::new(Mesh::new(0.0, 1.0, 10).unwrap(), p).unwrap();
        let u = project_l2(|x| 1.0 + amp * (std::f64::consts::TAU * x + shift).sin(), &space).unwrap();
        let rhs = semi_discrete_rhs(&u, &burgers(), &BoundaryModel::Periodic, 0.0).unwrap();
        let total: f64 = (0..10).map(|j| rhs.get(j, 0)).sum();
        prop_assert!(total.abs() < 1e-12, "{}", total);
    }
}
