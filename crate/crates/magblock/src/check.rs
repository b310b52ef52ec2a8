//! Self-test suite run by `magblock check`.

use magblock_core::linalg::{unvectorize, vectorize};
use magblock_core::liouvillian::{
    build_dissipators, build_hamiltonian, liouvillian_matrix, master_rhs, MasterEquation,
};
use magblock_core::observables::{
    coherent_reference_state, g2_zero, thermal_occupation, thermal_reference_state,
};
use magblock_core::resonance::ResonanceSet;
use magblock_core::steadystate::{
    self, evolve_to_steady, solve_direct, EvolveOptions, TruncationQuantity,
};
use magblock_core::{Complex64, ComplexMatrix, Error, HilbertLayout, LindbladTerm, SystemParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::spectrum;

const RANDOM_STATES: usize = 100;
const SEED: u64 = 0x6d61_6762;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn bound(name: &'static str, value: f64, limit: f64) -> Self {
        Self {
            name,
            passed: value <= limit,
            detail: format!("{value:.3e} <= {limit:.0e}"),
        }
    }

    fn failed(name: &'static str, e: &Error) -> Self {
        Self {
            name,
            passed: false,
            detail: e.to_string(),
        }
    }
}

struct Model {
    h: ComplexMatrix,
    terms: Vec<LindbladTerm>,
    l: ComplexMatrix,
    dim: usize,
}

fn build(p: &SystemParams) -> Result<Model, Error> {
    let layout = p.layout()?;
    let h = build_hamiltonian(p)?;
    let terms = build_dissipators(p, &layout)?;
    let l = liouvillian_matrix(&h, &terms)?;
    Ok(Model {
        dim: layout.total_dim(),
        h,
        terms,
        l,
    })
}

fn random_hermitian(rng: &mut StdRng, dim: usize) -> Result<ComplexMatrix, Error> {
    let data = (0..dim * dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::from_row_major(dim, dim, data)?.hermitian_part()
}

fn trace_preservation(m: &Model) -> f64 {
    let d = m.dim;
    (0..d * d)
        .map(|col| {
            (0..d)
                .map(|k| m.l[(k * d + k, col)])
                .sum::<Complex64>()
                .norm()
        })
        .fold(0.0, f64::max)
}

fn dual_path(m: &Model, rng: &mut StdRng) -> Result<(f64, f64), Error> {
    let (mut agree, mut herm) = (0.0f64, 0.0f64);
    for _ in 0..RANDOM_STATES {
        let rho = random_hermitian(rng, m.dim)?;
        let via_l = unvectorize(&m.l.mul_vec(&vectorize(&rho))?, m.dim)?;
        let direct = master_rhs(&m.h, &m.terms, &rho)?;
        agree = agree.max(via_l.max_abs_diff(&direct));
        herm = herm.max(direct.hermiticity_error());
    }
    Ok((agree, herm))
}

fn unitary_generator(p: &SystemParams) -> Result<f64, Error> {
    let m = build(p)?;
    let silent: Vec<LindbladTerm> = m
        .terms
        .into_iter()
        .map(|t| LindbladTerm::new(0.0, t.jump))
        .collect::<Result<_, _>>()?;
    let l = liouvillian_matrix(&m.h, &silent)?;
    Ok(l.scale(Complex64::new(0.0, 1.0)).hermiticity_error())
}

/// `g²(0)` of a one-magnon Fock state, a thermal state and a coherent state.
fn analytic_observables() -> Result<[f64; 3], Error> {
    let layout = HilbertLayout::new(10)?;
    Ok([
        g2_zero(&layout.basis_state(false, 1), &layout)?,
        g2_zero(&thermal_reference_state(&layout, 0.3), &layout)?,
        g2_zero(
            &coherent_reference_state(&layout, Complex64::new(0.1f64.sqrt(), 0.0)),
            &layout,
        )?,
    ])
}

/// Runs every property at `p` and reports each one.
pub fn run_checks(p: &SystemParams) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut rng = StdRng::seed_from_u64(SEED);
    let model = match build(p) {
        Ok(m) => m,
        Err(e) => return vec![CheckOutcome::failed("model_construction", &e)],
    };

    out.push(CheckOutcome::bound(
        "trace_preservation",
        trace_preservation(&model),
        1e-10,
    ));
    match dual_path(&model, &mut rng) {
        Ok((agree, herm)) => {
            out.push(CheckOutcome::bound("dual_path_generator", agree, 1e-10));
            out.push(CheckOutcome::bound("hermiticity_preservation", herm, 1e-12));
        }
        Err(e) => out.push(CheckOutcome::failed("dual_path_generator", &e)),
    }
    match unitary_generator(p) {
        Ok(v) => out.push(CheckOutcome::bound("unitary_generator", v, 1e-12)),
        Err(e) => out.push(CheckOutcome::failed("unitary_generator", &e)),
    }
    match spectrum::spectral_summary(&model.l) {
        Some((max_re, min_abs)) => {
            out.push(CheckOutcome::bound(
                "spectrum_left_half_plane",
                max_re,
                1e-9,
            ));
            out.push(CheckOutcome::bound("spectrum_has_kernel", min_abs, 1e-10));
        }
        None => out.push(CheckOutcome {
            name: "spectrum_left_half_plane",
            passed: false,
            detail: "Schur decomposition did not converge".into(),
        }),
    }

    let direct = solve_direct(&model.l, model.dim);
    match direct
        .clone()
        .and_then(|rho| {
            let residual = steadystate::liouvillian_residual(&model.l, &rho)?;
            steadystate::SteadyStateResult::from_state(
                rho,
                p.layout()?,
                residual,
                steadystate::SolveMethod::Direct,
            )
        })
        .and_then(|r| r.physicality())
    {
        Ok(rep) => out.push(CheckOutcome {
            name: "steady_state_physicality",
            passed: rep.passes(),
            detail: format!(
                "trace {:.1e}, hermiticity {:.1e}, min eigenvalue {:.1e}, sum P_n {:.1e}, residual {:.1e}",
                rep.trace_error,
                rep.hermiticity_error,
                rep.min_eigenvalue,
                rep.distribution_sum_error,
                rep.residual_norm
            ),
        }),
        Err(e) => out.push(CheckOutcome::failed("steady_state_physicality", &e)),
    }

    let oracle = direct.and_then(|rho| {
        let eq = MasterEquation::new(&model.h, &model.terms)?;
        let opts = EvolveOptions::auto(&eq);
        let evo = evolve_to_steady(&model.h, &model.terms, opts.t_final, opts.dt)?;
        Ok(evo.rho.max_abs_diff(&rho))
    });
    match oracle {
        Ok(d) => out.push(CheckOutcome::bound("direct_vs_evolution", d, 1e-6)),
        Err(e) => out.push(CheckOutcome::failed("direct_vs_evolution", &e)),
    }

    match steadystate::truncation_converged(p, TruncationQuantity::G2, 1e-4) {
        Ok(r) => out.push(CheckOutcome {
            name: "truncation_convergence",
            passed: r.converged,
            detail: format!(
                "g2 at n_fock={}: {:?}, at n_fock={}: {:?}",
                r.n_fock,
                r.value,
                r.n_fock + 4,
                r.value_extended
            ),
        }),
        Err(e) => out.push(CheckOutcome::failed("truncation_convergence", &e)),
    }

    match analytic_observables() {
        Ok([fock, thermal, coherent]) => out.push(CheckOutcome {
            name: "analytic_g2_references",
            passed: fock == 0.0 && (thermal - 2.0).abs() <= 1e-3 && (coherent - 1.0).abs() <= 1e-6,
            detail: format!("Fock {fock}, thermal {thermal:.6}, coherent {coherent:.9}"),
        }),
        Err(e) => out.push(CheckOutcome::failed("analytic_g2_references", &e)),
    }

    let set = ResonanceSet::new(p.delta_q, p.chi_qm, p.omega_s);
    let antisym = set
        .single_magnon
        .chunks(2)
        .chain(set.two_magnon.chunks(2))
        .map(|pair| (pair[0].detuning + pair[1].detuning).abs())
        .fold(0.0, f64::max);
    out.push(CheckOutcome::bound("resonance_sign_symmetry", antisym, 0.0));

    let occupation = thermal_occupation(8.5e9, 0.072);
    out.push(match occupation {
        Ok(n) => CheckOutcome {
            name: "thermal_occupation_reference",
            passed: (0.0033..=0.0037).contains(&n),
            detail: format!("n(8.5 GHz, 72 mK) = {n:.5}"),
        },
        Err(e) => CheckOutcome::failed("thermal_occupation_reference", &e),
    });
    out
}
