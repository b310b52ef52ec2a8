use magblock::csv::{format_real, header, to_csv_string, write_csv};
use magblock::parallel::run_sweep_parallel;
use magblock_core::steadystate;
use magblock_core::sweep::{run_sweep, SweepParameter};
use magblock_core::{AxisSpec, SystemParams};
use proptest::prelude::*;

fn axis(p: SweepParameter, a: f64, b: f64, n: usize) -> AxisSpec {
    AxisSpec::new(p, a, b, n).unwrap()
}

#[test]
fn two_by_two_grid_has_five_lines() {
    let axes = [
        axis(SweepParameter::DeltaM, -2.0, 2.0, 2),
        axis(SweepParameter::ChiQm, 0.0, 20.0, 2),
    ];
    let result = run_sweep_parallel(&SystemParams::default(), &axes, Some(2)).unwrap();
    let csv = to_csv_string(&result);
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.ends_with('\n') && !csv.contains('\r'));
    assert_eq!(
        csv.lines().next().unwrap(),
        "axis1,axis2,g2,log10_g2,p0,p1,p2,p3,p4,mean_magnon,qubit_excitation,residual"
    );
    assert_eq!(header(1).split(',').count(), 11);
    let second: Vec<&str> = csv.lines().nth(2).unwrap().split(',').collect();
    assert_eq!((second[0], second[1]), ("-2", "20"));
}

#[test]
fn undefined_g2_leaves_empty_fields() {
    let base = SystemParams {
        omega_d: 0.0,
        ..Default::default()
    };
    let result = run_sweep(&base, &[axis(SweepParameter::DeltaM, -1.0, 1.0, 3)]).unwrap();
    let csv = to_csv_string(&result);
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 11);
        assert_eq!((fields[1], fields[2]), ("", ""));
        for (k, f) in fields.iter().enumerate() {
            if k != 1 && k != 2 {
                assert!(f.parse::<f64>().is_ok(), "{line}");
            }
        }
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let base = SystemParams {
        chi_qm: 20.0,
        ..Default::default()
    };
    let axes = [
        axis(SweepParameter::DeltaM, -30.0, 30.0, 13),
        axis(SweepParameter::MTh, 0.0, 0.01, 4),
    ];
    let one = to_csv_string(&run_sweep_parallel(&base, &axes, Some(1)).unwrap());
    let three = to_csv_string(&run_sweep_parallel(&base, &axes, Some(3)).unwrap());
    let eight = to_csv_string(&run_sweep_parallel(&base, &axes, Some(8)).unwrap());
    assert_eq!(one, three);
    assert_eq!(one, eight);
    let serial = to_csv_string(&run_sweep(&base, &axes).unwrap());
    assert_eq!(one, serial);
}

#[test]
fn two_dimensional_grid_restricts_to_one_dimensional_cuts() {
    let base = SystemParams::default();
    let chi = axis(SweepParameter::ChiQm, 0.0, 40.0, 3);
    let dm = axis(SweepParameter::DeltaM, -20.0, 20.0, 9);
    let grid = run_sweep_parallel(&base, &[chi, dm], None).unwrap();
    for (i, c) in chi.values().into_iter().enumerate() {
        let cut = run_sweep(
            &SystemParams {
                chi_qm: c,
                ..base.clone()
            },
            &[dm],
        )
        .unwrap();
        for (j, r) in cut.records.iter().enumerate() {
            let g = &grid.records[i * dm.points + j];
            assert_eq!(g.coordinates, [c, r.coordinates[0]]);
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12;
            assert!(close(g.g2_zero.unwrap(), r.g2_zero.unwrap()));
            assert!(close(g.mean_magnon, r.mean_magnon));
            assert!(close(g.qubit_excitation, r.qubit_excitation));
            for (a, b) in g.p_n.iter().zip(&r.p_n) {
                assert!(close(*a, *b));
            }
        }
    }
}

#[test]
fn single_point_grid_is_a_single_solve() {
    let base = SystemParams {
        chi_qm: 20.0,
        ..Default::default()
    };
    let axes = [
        axis(SweepParameter::DeltaM, 4.5, 4.5, 1),
        axis(SweepParameter::NTh, 0.0, 0.0, 1),
    ];
    let result = run_sweep_parallel(&base, &axes, Some(1)).unwrap();
    assert_eq!(result.records.len(), 1);
    let direct = steadystate::steady_state(&SystemParams {
        delta_m: 4.5,
        ..base
    })
    .unwrap();
    let r = &result.records[0];
    assert_eq!(r.g2_zero, direct.g2_zero);
    assert_eq!(r.mean_magnon, direct.mean_magnon);
    assert_eq!(&r.p_n[..], &direct.p_n[..5]);
}

#[test]
fn records_are_accepted_solves() {
    let base = SystemParams {
        chi_qm: 45.0,
        ..Default::default()
    };
    let result = run_sweep_parallel(
        &base,
        &[axis(SweepParameter::DeltaM, -80.0, 80.0, 33)],
        None,
    )
    .unwrap();
    assert!(result.records.iter().all(|r| r.residual_norm < 1e-6));
    assert_eq!(result.records.len(), 33);
}

#[test]
fn both_statistics_regimes_exist_for_strong_coupling() {
    for chi in [10.0, 20.0, 30.0, 40.0, 50.0] {
        let base = SystemParams {
            chi_qm: chi,
            ..Default::default()
        };
        let result = run_sweep_parallel(
            &base,
            &[axis(SweepParameter::DeltaM, -80.0, 80.0, 161)],
            None,
        )
        .unwrap();
        let g2: Vec<f64> = result.records.iter().filter_map(|r| r.g2_zero).collect();
        let lo = g2.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = g2.iter().copied().fold(0.0, f64::max);
        assert!(lo < 1.0 && hi > 1.0, "chi = {chi}: g2 in [{lo}, {hi}]");
    }
}

#[test]
fn io_errors_surface() {
    struct Broken;
    impl std::io::Write for Broken {
        fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
            Err(std::io::Error::other("disk full"))
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }
    let result = run_sweep(
        &SystemParams::default(),
        &[axis(SweepParameter::DeltaM, 0.0, 1.0, 2)],
    )
    .unwrap();
    let err = write_csv(&result, Broken).unwrap_err();
    assert_eq!(err.to_string(), "disk full");
}

proptest! {
    #[test]
    fn reals_round_trip(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        let s = format_real(x);
        prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn reals_are_compact(x in -1e6f64..1e6) {
        let s = format_real(x);
        prop_assert!(s.len() <= 25, "{}", s);
    }
}
