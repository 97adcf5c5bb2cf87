//! Brute-force state-vector reference for small chains (`n <= 14`).
//!
//! Basis index bit `n - l` set means site `l` is flipped down, so index order is
//! lexicographic order with site 1 most significant:
//! `(up-up, up-down, down-up, down-down)` for two sites. The ground state of
//! region `k` is assembled from Slater determinants of the sine modes and
//! certified by its Hamiltonian residual; observables are measured directly on
//! the amplitudes, independently of the kernel formulas.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{check_index, domain, Error, Result};
use crate::linalg::SquareMatrix;
use crate::spectrum::{ground_energy, mode_amplitude, region_index, ChainSpec};

pub const MAX_ORACLE_SITES: usize = 14;

/// Real amplitudes over the `2^n` spin configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<f64>,
}

impl StateVector {
    /// Wraps raw amplitudes, normalizing them.
    pub fn from_amplitudes(n: usize, mut amplitudes: Vec<f64>) -> Result<Self> {
        check_size(n)?;
        if amplitudes.len() != 1 << n {
            return Err(domain(format!(
                "expected {} amplitudes, got {}",
                1usize << n,
                amplitudes.len()
            )));
        }
        let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n, amplitudes })
    }

    /// Configuration with the given down spins.
    pub fn basis(n: usize, down_sites: &[usize]) -> Result<Self> {
        check_size(n)?;
        let mut amplitudes = vec![0.0; 1 << n];
        let mut idx = 0;
        for &l in down_sites {
            check_index("site", l, n)?;
            idx |= site_bit(n, l);
        }
        amplitudes[idx] = 1.0;
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        self.amplitudes.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    /// Flips the global sign so the first nonzero amplitude is non-negative.
    fn fix_phase(&mut self) {
        if let Some(first) = self.amplitudes.iter().find(|a| **a != 0.0) {
            if *first < 0.0 {
                self.amplitudes.iter_mut().for_each(|a| *a = -*a);
            }
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(domain("chain length n must be >= 1"));
    }
    if n > MAX_ORACLE_SITES {
        return Err(Error::ResourceLimit(format!(
            "oracle supports n <= {MAX_ORACLE_SITES}, got n = {n}"
        )));
    }
    Ok(())
}

#[inline]
fn site_bit(n: usize, l: usize) -> usize {
    1 << (n - l)
}

#[inline]
fn is_down(n: usize, idx: usize, l: usize) -> bool {
    idx & site_bit(n, l) != 0
}

/// `det[S_{l_i}^j]` for flipped sites `l_1 < ... < l_k`.
pub fn slater_amplitude(n: usize, sites: &[usize]) -> Result<f64> {
    for &l in sites {
        check_index("site", l, n)?;
    }
    if sites.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain(format!(
            "sites {sites:?} must be strictly increasing"
        )));
    }
    Ok(SquareMatrix::from_fn(sites.len(), |i, j| mode_amplitude(n, j + 1, sites[i])).det())
}

/// Ground state of region `k` from Slater amplitudes.
pub fn build_region_state(n: usize, k: usize) -> Result<StateVector> {
    check_size(n)?;
    if k > n {
        return Err(domain(format!("region index k = {k} must lie in 0..={n}")));
    }
    let mut amplitudes = vec![0.0; 1 << n];
    let mut sites = Vec::with_capacity(k);
    for (idx, amp) in amplitudes.iter_mut().enumerate() {
        if idx.count_ones() as usize != k {
            continue;
        }
        sites.clear();
        sites.extend((1..=n).filter(|&l| is_down(n, idx, l)));
        *amp = slater_amplitude(n, &sites)?;
    }
    let mut state = StateVector::from_amplitudes(n, amplitudes)?;
    state.fix_phase();
    Ok(state)
}

/// Ground state at field `b`.
pub fn build_state(n: usize, b: f64) -> Result<StateVector> {
    check_size(n)?;
    let spec = ChainSpec::new(n, b)?;
    build_region_state(n, region_index(spec))
}

/// Region-`k` state built by applying the mode creation operators
/// `sum_l S_l^{k'} (prod_{m<l} sigma^z_m) sigma^-_l`, `k' = 1..=k`, to the
/// all-up state.
pub fn build_state_by_operators(n: usize, k: usize) -> Result<StateVector> {
    check_size(n)?;
    if k > n {
        return Err(domain(format!("region index k = {k} must lie in 0..={n}")));
    }
    let mut psi = vec![0.0; 1 << n];
    psi[0] = 1.0;
    for mode in 1..=k {
        let mut next = vec![0.0; 1 << n];
        for (idx, &amp) in psi.iter().enumerate() {
            if amp == 0.0 {
                continue;
            }
            for l in 1..=n {
                if is_down(n, idx, l) {
                    continue;
                }
                // string of sigma^z on sites before l: -1 per down spin
                let downs_before = (1..l).filter(|&m| is_down(n, idx, m)).count();
                let sign = if downs_before % 2 == 0 { 1.0 } else { -1.0 };
                next[idx | site_bit(n, l)] += sign * mode_amplitude(n, mode, l) * amp;
            }
        }
        psi = next;
    }
    let mut state = StateVector::from_amplitudes(n, psi)?;
    state.fix_phase();
    Ok(state)
}

/// `H psi` with hopping element -1 and diagonal `-b (n - 2 * #down)`.
pub fn apply_hamiltonian(b: f64, psi: &StateVector) -> Vec<f64> {
    let n = psi.n;
    let mut out = vec![0.0; psi.amplitudes.len()];
    for (idx, &amp) in psi.amplitudes.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let downs = idx.count_ones() as f64;
        out[idx] += -b * (n as f64 - 2.0 * downs) * amp;
        for l in 1..n {
            if is_down(n, idx, l) != is_down(n, idx, l + 1) {
                let flipped = idx ^ site_bit(n, l) ^ site_bit(n, l + 1);
                out[flipped] -= amp;
            }
        }
    }
    out
}

/// `|| H psi - E_g psi ||` for the analytic ground state and energy at `b`.
pub fn ground_residual(n: usize, b: f64) -> Result<f64> {
    let psi = build_state(n, b)?;
    let energy = ground_energy(ChainSpec::new(n, b)?);
    let h_psi = apply_hamiltonian(b, &psi);
    Ok(h_psi
        .iter()
        .zip(&psi.amplitudes)
        .map(|(h, a)| (h - energy * a).powi(2))
        .sum::<f64>()
        .sqrt())
}

/// Reduced density matrix of one or two sites, by partial trace.
///
/// Local basis per site is `(up, down)`; for two sites the first listed site
/// is the more significant index.
pub fn reduced_density(psi: &StateVector, sites: &[usize]) -> Result<DMatrix<f64>> {
    let n = psi.n;
    if sites.is_empty() || sites.len() > 2 {
        return Err(domain("reduced density needs one or two sites"));
    }
    for &l in sites {
        check_index("site", l, n)?;
    }
    if sites.len() == 2 && sites[0] == sites[1] {
        return Err(domain("reduced density needs distinct sites"));
    }
    let bits: Vec<usize> = sites.iter().map(|&l| site_bit(n, l)).collect();
    let mask: usize = bits.iter().sum();
    let dim = 1 << sites.len();
    // local index t -> configuration bits of the traced-out-complement
    let patterns: Vec<usize> = (0..dim)
        .map(|t| {
            bits.iter()
                .enumerate()
                .filter(|(i, _)| t >> (bits.len() - 1 - i) & 1 == 1)
                .map(|(_, b)| b)
                .sum()
        })
        .collect();
    let mut rho = DMatrix::zeros(dim, dim);
    for (idx, &a) in psi.amplitudes.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let rest = idx & !mask;
        let row = patterns
            .iter()
            .position(|&p| p == idx & mask)
            .expect("pattern exists");
        for (col, &p) in patterns.iter().enumerate() {
            rho[(row, col)] += a * psi.amplitudes[rest | p];
        }
    }
    Ok(rho)
}

/// Observable measured by [`oracle_corr`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Z(usize),
    ZZ(usize, usize),
    XX(usize, usize),
}

/// `<psi| O |psi>` by direct action on the amplitudes.
pub fn oracle_corr(psi: &StateVector, obs: Observable) -> Result<f64> {
    let n = psi.n;
    let z = |idx: usize, l: usize| if is_down(n, idx, l) { -1.0 } else { 1.0 };
    let amps = &psi.amplitudes;
    match obs {
        Observable::Z(l) => {
            check_index("site", l, n)?;
            Ok(amps.iter().enumerate().map(|(i, a)| a * a * z(i, l)).sum())
        }
        Observable::ZZ(l, m) | Observable::XX(l, m) => {
            check_index("site l", l, n)?;
            check_index("site m", m, n)?;
            if l == m {
                return Err(domain("two-site observable needs distinct sites"));
            }
            Ok(match obs {
                Observable::ZZ(..) => amps
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * a * z(i, l) * z(i, m))
                    .sum(),
                _ => {
                    let flip = site_bit(n, l) | site_bit(n, m);
                    amps.iter()
                        .enumerate()
                        .map(|(i, a)| a * amps[i ^ flip])
                        .sum()
                }
            })
        }
    }
}

fn symmetric_sqrt(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let vals = eig.eigenvalues.map(|v| v.max(0.0).sqrt());
    &eig.eigenvectors * DMatrix::from_diagonal(&vals) * eig.eigenvectors.transpose()
}

/// Uhlmann fidelity `Tr sqrt(sqrt(rho) sigma sqrt(rho))` of real symmetric states.
pub fn matrix_fidelity(rho: &DMatrix<f64>, sigma: &DMatrix<f64>) -> f64 {
    // nuclear norm of sqrt(rho) sqrt(sigma)
    (symmetric_sqrt(rho) * symmetric_sqrt(sigma))
        .singular_values()
        .sum()
}

/// Wootters concurrence of a real two-qubit density matrix.
pub fn wootters_concurrence(rho: &DMatrix<f64>) -> Result<f64> {
    if rho.shape() != (4, 4) {
        return Err(domain("Wootters concurrence needs a 4x4 matrix"));
    }
    // sigma^y (x) sigma^y is real in the computational basis
    let mut flip = DMatrix::zeros(4, 4);
    flip[(0, 3)] = -1.0;
    flip[(3, 0)] = -1.0;
    flip[(1, 2)] = 1.0;
    flip[(2, 1)] = 1.0;
    // lambda_i are the singular values of sqrt(rho) sqrt(rho~) = sqrt(rho) F sqrt(rho) F
    let root = symmetric_sqrt(rho);
    let product = &root * &flip * &root;
    let mut lambdas: Vec<f64> = product.singular_values().iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}
