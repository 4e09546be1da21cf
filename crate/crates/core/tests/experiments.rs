use cheby_consensus::harness::{
    emit_csv, preset, run_experiment, run_trials, ExperimentConfig, ParamCell, PRESET_NAMES,
};
use cheby_consensus::{MethodKind, ScenarioKind, WeightKind};

fn small(cfg: &mut ExperimentConfig) {
    cfg.n_graphs = 2;
    cfg.n_inits = 2;
    cfg.max_rounds = 400;
}

#[test]
fn every_preset_parses_and_validates() {
    for name in PRESET_NAMES {
        let configs = preset(name).unwrap();
        assert!(!configs.is_empty());
        for (stem, cfg) in configs {
            assert!(stem.starts_with(name));
            cfg.validate().unwrap();
            assert!(!cfg.cells().is_empty());
        }
    }
    assert_eq!(preset("table3").unwrap().len(), 3);
    assert!(preset("table7").is_err());
}

#[test]
fn config_survives_a_toml_round_trip() {
    for name in PRESET_NAMES {
        for (_, cfg) in preset(name).unwrap() {
            let back = ExperimentConfig::from_toml(&cfg.to_toml()).unwrap();
            assert_eq!(back, cfg);
        }
    }
}

#[test]
fn config_rejects_bad_values() {
    assert!(ExperimentConfig::from_toml("tolerances = [1e-4, 1e-3]").is_err());
    assert!(ExperimentConfig::from_toml("n_graphs = 0").is_err());
    assert!(ExperimentConfig::from_toml("lambda_m = [-1.0]\nlambda_M = [0.5]\ngrid_methods = [\"cheby\"]").is_err());
    assert!(ExperimentConfig::from_toml("scenario = \"linkfail\"\nmethods = [\"newton2\"]").is_err());
    assert!(ExperimentConfig::from_toml("scenario = \"motion\"\nweights = [\"nonsymmetric\"]").is_err());
    assert!(ExperimentConfig::from_toml("weights = [\"custom\"]").is_err());
    assert!(ExperimentConfig::from_toml("failure_prob = 1.5").is_err());
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let (_, mut cfg) = preset("table1").unwrap().remove(0);
    small(&mut cfg);
    let reference = run_experiment(&cfg).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| run_experiment(&cfg)).unwrap();
    assert_eq!(reference.rows, serial.rows);
}

#[test]
fn same_seed_same_csv_bytes() {
    let (_, mut cfg) = preset("table4").unwrap().remove(0);
    small(&mut cfg);
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    emit_csv(&run_experiment(&cfg).unwrap(), &a).unwrap();
    emit_csv(&run_experiment(&cfg).unwrap(), &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    cfg.seed += 1;
    let c = dir.path().join("c.csv");
    emit_csv(&run_experiment(&cfg).unwrap(), &c).unwrap();
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn tuned_chebyshev_never_slower_than_power_on_fixed_graphs() {
    let cfg = ExperimentConfig {
        n_graphs: 5,
        n_inits: 3,
        methods: vec![MethodKind::Power, MethodKind::Chebyshev],
        tolerances: vec![1e-3, 1e-5],
        max_rounds: 5000,
        seed: 17,
        ..ExperimentConfig::default()
    };
    let outcomes = run_trials(&cfg).unwrap();
    for trial in &outcomes {
        let cells = trial.cells.as_ref().unwrap();
        let rounds: Vec<_> = cells
            .iter()
            .map(|c| match c {
                cheby_consensus::harness::CellOutcome::Ran { rounds, .. } => rounds.clone(),
                other => panic!("{other:?}"),
            })
            .collect();
        for (p, c) in rounds[0].iter().zip(&rounds[1]) {
            assert!(c.unwrap() <= p.unwrap());
        }
    }
}

#[test]
fn grid_cells_cover_the_requested_axes() {
    let (_, cfg) = preset("table6").unwrap().remove(0);
    assert_eq!(cfg.scenario, ScenarioKind::RandomNetwork);
    let cells = cfg.cells();
    assert_eq!(cells.len(), cfg.lambda_m.len() * cfg.lambda_max.len());
    for cell in &cells {
        assert_eq!(cell.weights, WeightKind::LocalDegree);
        assert!(matches!(cell.params, ParamCell::Interval(_)));
    }
}
