//! Cross-checks of every analytic observable against the state-vector oracle.

use crate::error::{domain, Result};
use crate::fidelity::coarse_fidelity;
use crate::kernel::{kernel_matrix, magnetization, two_spin_density, xx_corr, zz_corr};
use crate::oracle::{
    build_region_state, build_state, ground_residual, matrix_fidelity, oracle_corr,
    reduced_density, wootters_concurrence, Observable, MAX_ORACLE_SITES,
};
use crate::pairstate::{concurrence, one_tangle};
use crate::spectrum::{crossing_field, region_index, ChainSpec};

/// Agreement required between analytic and brute-force values.
pub const ORACLE_TOLERANCE: f64 = 1e-10;

/// Named checks, in report order.
pub const CHECKS: [&str; 8] = [
    "residual",
    "z",
    "zz",
    "xx",
    "density",
    "tangle",
    "concurrence",
    "fidelity",
];

/// Largest deviation per check for one chain length.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub n: usize,
    pub cases: usize,
    pub max_error: [f64; CHECKS.len()],
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.max_error.iter().all(|e| *e < ORACLE_TOLERANCE)
    }
}

/// `cases` evenly spaced fields strictly inside region `k`.
pub fn region_fields(n: usize, k: usize, cases: usize) -> Vec<f64> {
    let upper = if k == 0 {
        crossing_field(n, 1) + 1.0
    } else {
        crossing_field(n, k)
    };
    let lower = if k == n {
        crossing_field(n, n) - 1.0
    } else {
        crossing_field(n, k + 1)
    };
    (1..=cases)
        .map(|i| lower + (upper - lower) * i as f64 / (cases + 1) as f64)
        .collect()
}

/// Runs every check for chain length `n` at `cases` fields per region.
pub fn validate_chain(n: usize, cases: usize) -> Result<ValidationReport> {
    if !(2..=MAX_ORACLE_SITES).contains(&n) {
        return Err(domain(format!(
            "validation needs 2 <= n <= {MAX_ORACLE_SITES}, got {n}"
        )));
    }
    if cases == 0 {
        return Err(domain("cases per region must be >= 1"));
    }
    let mut err = [0.0f64; CHECKS.len()];
    let mut bump = |slot: usize, a: f64, b: f64| {
        let d = (a - b).abs();
        err[slot] = if d.is_nan() {
            f64::INFINITY
        } else {
            err[slot].max(d)
        };
    };
    let mut total = 0;
    for k in 0..=n {
        let previous = if k > 0 {
            Some(build_region_state(n, k - 1)?)
        } else {
            None
        };
        for b in region_fields(n, k, cases) {
            total += 1;
            if region_index(ChainSpec::new(n, b)?) != k {
                return Err(domain(format!("sample field {b} left region {k}")));
            }
            bump(0, ground_residual(n, b)?, 0.0);
            let psi = build_state(n, b)?;
            let kern = kernel_matrix(n, k)?;
            for l in 1..=n {
                let z = oracle_corr(&psi, Observable::Z(l))?;
                bump(1, magnetization(&kern, l)?, z);
                bump(5, one_tangle(&kern, l)?, 1.0 - z * z);
                if let Some(prev) = &previous {
                    let exact = matrix_fidelity(
                        &reduced_density(prev, &[l])?,
                        &reduced_density(&psi, &[l])?,
                    );
                    bump(7, coarse_fidelity(n, l, k)?, exact);
                }
                for m in l + 1..=n {
                    bump(
                        2,
                        zz_corr(&kern, l, m)?,
                        oracle_corr(&psi, Observable::ZZ(l, m))?,
                    );
                    bump(
                        3,
                        xx_corr(&kern, l, m)?,
                        oracle_corr(&psi, Observable::XX(l, m))?,
                    );
                    let rho = reduced_density(&psi, &[l, m])?;
                    let dens = two_spin_density(&kern, l, m)?;
                    // oracle basis order: up-up, up-down, down-up, down-down
                    bump(4, dens.a_plus, rho[(0, 0)]);
                    bump(4, dens.b_plus, rho[(1, 1)]);
                    bump(4, dens.b_minus, rho[(2, 2)]);
                    bump(4, dens.a_minus, rho[(3, 3)]);
                    bump(4, dens.e, rho[(1, 2)]);
                    bump(4, 0.0, rho[(0, 3)]);
                    bump(6, concurrence(&dens)?, wootters_concurrence(&rho)?);
                }
            }
        }
    }
    Ok(ValidationReport {
        n,
        cases: total,
        max_error: err,
    })
}
