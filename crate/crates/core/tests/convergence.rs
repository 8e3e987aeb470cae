use rkdg::{convergence_study, CflMode, ProblemSpec, RunConfig};

#[test]
fn linear_advection_p2_reaches_third_order() {
    let cfg = RunConfig {
        p: 2,
        k: 3,
        t_final: 0.5,
        cfl_mode: CflMode::Auto,
        tau_fixed: None,
        gamma: 0.2,
        ..Default::default()
    };
    let table = convergence_study(&ProblemSpec::linear_advection(), &cfg, &[0.2, 0.1, 0.05, 0.025]).unwrap();
    assert!(table.fitted_order >= 2.8, "{table:?}");
    for row in &table.rows {
        assert!(row.effectivity >= 1.0, "{row:?}");
        assert!(row.trusted);
    }
}
