mod common;

use common::{random_density, random_hermitian, rng};
use magblock_core::fockspace::{self, HilbertLayout};
use magblock_core::linalg::{unvectorize, vectorize};
use magblock_core::liouvillian::{
    build_dissipators, build_hamiltonian, liouvillian_matrix, master_rhs, MasterEquation,
};
use magblock_core::steadystate::{
    self, evolve_from, evolve_to_steady, solve_direct, EvolveOptions, TruncationQuantity,
};
use magblock_core::{ComplexMatrix, Error, LindbladTerm, SystemParams};

fn model(p: &SystemParams) -> (ComplexMatrix, Vec<LindbladTerm>) {
    let layout = p.layout().unwrap();
    (
        build_hamiltonian(p).unwrap(),
        build_dissipators(p, &layout).unwrap(),
    )
}

fn thermal_point() -> SystemParams {
    SystemParams {
        chi_qm: 20.0,
        delta_m: 4.5,
        n_th: 0.3,
        m_th: 0.2,
        ..Default::default()
    }
}

#[test]
fn superoperator_and_matrix_form_agree() {
    let mut r = rng(11);
    for (k, p) in [SystemParams::default(), thermal_point()]
        .iter()
        .enumerate()
    {
        let (h, terms) = model(p);
        let l = liouvillian_matrix(&h, &terms).unwrap();
        let d = h.rows();
        for _ in 0..50 {
            let rho = random_hermitian(&mut r, d);
            let via_l = unvectorize(&l.mul_vec(&vectorize(&rho)).unwrap(), d).unwrap();
            let direct = master_rhs(&h, &terms, &rho).unwrap();
            let err = via_l.max_abs_diff(&direct);
            assert!(err < 1e-10, "point {k}: {err}");
        }
    }
}

#[test]
fn generator_preserves_trace_and_hermiticity() {
    let mut r = rng(12);
    let p = thermal_point();
    let (h, terms) = model(&p);
    let l = liouvillian_matrix(&h, &terms).unwrap();
    let d = h.rows();
    for col in 0..d * d {
        let s: f64 = (0..d)
            .map(|k| l[(k * d + k, col)])
            .sum::<magblock_core::Complex64>()
            .norm();
        assert!(s < 1e-10, "column {col}: {s}");
    }
    for _ in 0..20 {
        let rho = random_density(&mut r, d);
        let out = master_rhs(&h, &terms, &rho).unwrap();
        assert!(out.trace().unwrap().norm() < 1e-12);
        assert!(out.hermiticity_error() < 1e-12);
    }
}

#[test]
fn closed_system_generator_is_anti_hermitian() {
    let p = SystemParams {
        chi_qm: 7.0,
        delta_m: -3.0,
        ..Default::default()
    };
    let h = build_hamiltonian(&p).unwrap();
    let layout = p.layout().unwrap();
    let silent: Vec<LindbladTerm> = build_dissipators(&p, &layout)
        .unwrap()
        .into_iter()
        .map(|t| LindbladTerm::new(0.0, t.jump).unwrap())
        .collect();
    let l = liouvillian_matrix(&h, &silent).unwrap();
    let il = l.scale(magblock_core::Complex64::new(0.0, 1.0));
    assert!(il.hermiticity_error() < 1e-12);
}

#[test]
fn pure_decay_from_excited_state() {
    let h = ComplexMatrix::zeros(2, 2);
    let terms = [LindbladTerm::new(1.0, fockspace::sigma_minus()).unwrap()];
    let excited = ComplexMatrix::basis_projector(2, 1);
    let evo = evolve_from(&h, &terms, &excited, 20.0, 0.01).unwrap();
    let ground = ComplexMatrix::basis_projector(2, 0);
    assert!(evo.rho.max_abs_diff(&ground) < 1e-7, "{:?}", evo.rho);
    let l = liouvillian_matrix(&h, &terms).unwrap();
    assert!(solve_direct(&l, 2).unwrap().max_abs_diff(&ground) < 1e-12);
}

#[test]
fn evolution_guards_step_and_horizon() {
    let (h, terms) = model(&SystemParams::default());
    assert!(matches!(
        evolve_to_steady(&h, &terms, 500.0, 1.0),
        Err(Error::StepTooLarge { .. })
    ));
    assert!(matches!(
        evolve_to_steady(&h, &terms, 1.0, 1e-3),
        Err(Error::HorizonTooShort { .. })
    ));
}

#[test]
fn magnon_bath_detailed_balance() {
    for n_fock in [8usize, 12] {
        for m_th in [0.1, 0.5] {
            let kappa = 1.4;
            let a = fockspace::annihilation(n_fock).unwrap();
            let terms = [
                LindbladTerm::new(kappa * (1.0 + m_th), a.clone()).unwrap(),
                LindbladTerm::new(kappa * m_th, a.dagger()).unwrap(),
            ];
            let h = ComplexMatrix::zeros(n_fock, n_fock);
            let l = liouvillian_matrix(&h, &terms).unwrap();
            let rho = solve_direct(&l, n_fock).unwrap();
            let ratio = m_th / (1.0 + m_th);
            for n in 0..n_fock - 2 {
                let got = rho[(n + 1, n + 1)].re / rho[(n, n)].re;
                assert!((got - ratio).abs() < 1e-6, "n={n}: {got} vs {ratio}");
            }
            for i in 0..n_fock {
                for j in 0..n_fock {
                    if i != j {
                        assert!(rho[(i, j)].norm() < 1e-12);
                    }
                }
            }
            let z: f64 = (0..n_fock).map(|n| ratio.powi(n as i32)).sum();
            let mean: f64 = (0..n_fock)
                .map(|n| n as f64 * ratio.powi(n as i32) / z)
                .sum();
            let got = fockspace::expectation(&fockspace::number(n_fock).unwrap(), &rho)
                .unwrap()
                .re;
            assert!((got - mean).abs() < 1e-10, "{got} vs {mean}");
        }
    }
}

#[test]
fn undriven_system_relaxes_to_vacuum() {
    let p = SystemParams {
        omega_d: 0.0,
        omega_s: 0.0,
        chi_qm: 20.0,
        ..Default::default()
    };
    let vacuum = ComplexMatrix::basis_projector(12, 0);
    let direct = steadystate::steady_state(&p).unwrap();
    assert!(direct.rho_ss.max_abs_diff(&vacuum) < 1e-8);
    assert_eq!(direct.g2_zero, None);
    let evolved = steadystate::steady_state_by_evolution(&p).unwrap();
    assert!(evolved.rho_ss.max_abs_diff(&vacuum) < 1e-8);
}

#[test]
fn evolution_matches_direct_solve() {
    for p in [
        SystemParams {
            chi_qm: 20.0,
            delta_m: 4.5,
            ..Default::default()
        },
        thermal_point(),
    ] {
        let (h, terms) = model(&p);
        let l = liouvillian_matrix(&h, &terms).unwrap();
        let direct = solve_direct(&l, h.rows()).unwrap();
        let eq = MasterEquation::new(&h, &terms).unwrap();
        let opts = EvolveOptions::auto(&eq);
        let evo = evolve_to_steady(&h, &terms, opts.t_final, opts.dt).unwrap();
        let diff = evo.rho.max_abs_diff(&direct);
        assert!(diff < 1e-6, "{diff}");
        assert!(evo.residual < 1e-8);
        let rhs = master_rhs(&h, &terms, &direct).unwrap();
        assert!(rhs.frobenius_norm() < 1e-8);
    }
}

#[test]
fn solved_states_are_physical() {
    for p in [SystemParams::default(), thermal_point()] {
        let r = steadystate::steady_state(&p).unwrap();
        let report = r.physicality().unwrap();
        assert!(report.passes(), "{report:?}");
        assert_eq!(r.p_n.len(), p.n_fock);
    }
}

#[test]
fn truncation_checks() {
    let weak = SystemParams {
        chi_qm: 20.0,
        delta_m: 4.5,
        ..Default::default()
    };
    let report = steadystate::truncation_converged(&weak, TruncationQuantity::G2, 1e-4).unwrap();
    assert!(report.converged, "{report:?}");
    let report =
        steadystate::truncation_converged(&weak, TruncationQuantity::MeanMagnon, 1e-8).unwrap();
    assert!(report.converged, "{report:?}");

    let two_magnon = magblock_core::resonance::two_magnon_detunings(-20.0, 20.0, 15.0)[0].detuning;
    let cut = SystemParams {
        n_fock: 2,
        delta_m: two_magnon,
        ..weak.clone()
    };
    let report = steadystate::truncation_converged(&cut, TruncationQuantity::G2, 1e-4).unwrap();
    assert!(!report.converged, "{report:?}");
    assert_eq!(report.value, Some(0.0));

    for n_fock in [2, 3, 6] {
        let dark = SystemParams {
            omega_d: 0.0,
            n_fock,
            ..weak.clone()
        };
        let report =
            steadystate::truncation_converged(&dark, TruncationQuantity::G2, 1e-4).unwrap();
        assert!(report.converged, "{report:?}");
        assert_eq!(report.value, None);
    }
}

#[test]
fn steady_state_of_layout_is_sized() {
    let layout = HilbertLayout::new(4).unwrap();
    let p = SystemParams {
        n_fock: 4,
        chi_qm: 5.0,
        ..Default::default()
    };
    let r = steadystate::steady_state(&p).unwrap();
    assert_eq!(r.rho_ss.shape(), (layout.total_dim(), layout.total_dim()));
    assert!(r.residual_norm < 1e-10);
}
