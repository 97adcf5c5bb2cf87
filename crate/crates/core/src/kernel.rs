//! Fermionic two-point kernel and the spin correlators built from it.
//!
//! For the region-`k` ground state every spin observable reduces to
//! `g_{l,m} = 2 sum_{r=1}^{k} S_l^r S_m^r`, twice the projector onto the
//! emptied modes. Off the diagonal the sum telescopes to
//!
//! ```text
//! g_{l,m} = (S_l^{k+1} S_m^k - S_l^k S_m^{k+1}) / (cos(pi l/(n+1)) - cos(pi m/(n+1)))
//! ```
//!
//! The transverse correlator is the determinant of the `(m-l) x (m-l)` block
//! with rows `l..m-1`, columns `l+1..m` and entries `g_{i,j} - delta_{i,j}`.

use crate::error::{check_index, domain, Error, Result};
use crate::linalg::SquareMatrix;
use crate::spectrum::{mode_amplitude, sin_pi_ratio};

/// Below this cosine gap the closed form falls back to direct summation.
const CLOSED_FORM_MIN_GAP: f64 = 1e-8;

fn check_region(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(domain("chain length n must be >= 1"));
    }
    if k > n {
        return Err(domain(format!("region index k = {k} must lie in 0..={n}")));
    }
    Ok(())
}

/// `cos(pi l/(n+1)) - cos(pi m/(n+1))` as a product of sines.
fn cos_gap(n: usize, l: usize, m: usize) -> f64 {
    let q = 2 * (n + 1);
    let s = sin_pi_ratio(l + m, q);
    if m >= l {
        2.0 * s * sin_pi_ratio(m - l, q)
    } else {
        -2.0 * s * sin_pi_ratio(l - m, q)
    }
}

fn direct_sum(n: usize, k: usize, l: usize, m: usize) -> f64 {
    2.0 * (1..=k)
        .map(|r| mode_amplitude(n, r, l) * mode_amplitude(n, r, m))
        .sum::<f64>()
}

fn entry_unchecked(n: usize, k: usize, l: usize, m: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    if l == m {
        return direct_sum(n, k, l, m);
    }
    let gap = cos_gap(n, l, m);
    if gap.abs() < CLOSED_FORM_MIN_GAP {
        return direct_sum(n, k, l, m);
    }
    let num = mode_amplitude(n, k + 1, l) * mode_amplitude(n, k, m)
        - mode_amplitude(n, k, l) * mode_amplitude(n, k + 1, m);
    num / gap
}

/// Single kernel entry `g_{l,m}` for region `k`.
pub fn kernel_entry(n: usize, k: usize, l: usize, m: usize) -> Result<f64> {
    check_region(n, k)?;
    check_index("site l", l, n)?;
    check_index("site m", m, n)?;
    Ok(entry_unchecked(n, k, l, m))
}

/// Dense symmetric kernel for one `(n, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationKernel {
    n: usize,
    k: usize,
    g: Vec<f64>,
}

impl CorrelationKernel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `g_{l,m}` with 1-based sites. Panics if out of range.
    #[inline]
    pub fn get(&self, l: usize, m: usize) -> f64 {
        assert!(
            l >= 1 && l <= self.n && m >= 1 && m <= self.n,
            "site out of range"
        );
        self.g[(l - 1) * self.n + (m - 1)]
    }

    fn check_site(&self, name: &str, l: usize) -> Result<()> {
        check_index(name, l, self.n)
    }
}

/// Builds the full kernel matrix, O(n^2) after O(n k) setup.
pub fn kernel_matrix(n: usize, k: usize) -> Result<CorrelationKernel> {
    check_region(n, k)?;
    let mut g = vec![0.0; n * n];
    if k > 0 {
        let edge: Vec<f64> = (1..=n).map(|l| mode_amplitude(n, k, l)).collect();
        let next: Vec<f64> = (1..=n).map(|l| mode_amplitude(n, k + 1, l)).collect();
        for l in 1..=n {
            g[(l - 1) * n + (l - 1)] = direct_sum(n, k, l, l);
            for m in l + 1..=n {
                let gap = cos_gap(n, l, m);
                let v = if gap.abs() < CLOSED_FORM_MIN_GAP {
                    direct_sum(n, k, l, m)
                } else {
                    (next[l - 1] * edge[m - 1] - edge[l - 1] * next[m - 1]) / gap
                };
                g[(l - 1) * n + (m - 1)] = v;
                g[(m - 1) * n + (l - 1)] = v;
            }
        }
    }
    Ok(CorrelationKernel { n, k, g })
}

/// `<sigma^z_l> = 1 - g_{l,l}`.
pub fn magnetization(kern: &CorrelationKernel, l: usize) -> Result<f64> {
    kern.check_site("site l", l)?;
    Ok(1.0 - kern.get(l, l))
}

/// `<sigma^z_l sigma^z_m>` for distinct sites.
pub fn zz_corr(kern: &CorrelationKernel, l: usize, m: usize) -> Result<f64> {
    kern.check_site("site l", l)?;
    kern.check_site("site m", m)?;
    if l == m {
        return Err(domain(format!(
            "zz correlator needs distinct sites, got l = m = {l}"
        )));
    }
    let g = kern.get(l, m);
    Ok((1.0 - kern.get(l, l)) * (1.0 - kern.get(m, m)) - g * g)
}

/// `<sigma^x_l sigma^x_m>` for `l < m`.
pub fn xx_corr(kern: &CorrelationKernel, l: usize, m: usize) -> Result<f64> {
    kern.check_site("site l", l)?;
    kern.check_site("site m", m)?;
    if l >= m {
        return Err(domain(format!(
            "xx correlator needs l < m, got l = {l}, m = {m}"
        )));
    }
    if m == l + 1 {
        return Ok(kern.get(l, m));
    }
    let block = SquareMatrix::from_fn(m - l, |a, c| {
        let (i, j) = (l + a, l + 1 + c);
        kern.get(i, j) - if i == j { 1.0 } else { 0.0 }
    });
    Ok(block.det())
}

/// Two-site reduced density matrix in the basis `{up-up, down-down, up-down, down-up}`.
///
/// Only the diagonal and the `up-down/down-up` coherence `e` are nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSpinDensity {
    pub a_plus: f64,
    pub a_minus: f64,
    pub b_plus: f64,
    pub b_minus: f64,
    pub e: f64,
}

impl TwoSpinDensity {
    /// Assembles the density matrix from `<z_l>`, `<z_m>`, `<z_l z_m>` and `<x_l x_m>`.
    pub fn from_correlators(z_l: f64, z_m: f64, zz: f64, xx: f64) -> Self {
        Self {
            a_plus: 0.25 * (1.0 + z_l + z_m + zz),
            a_minus: 0.25 * (1.0 - z_l - z_m + zz),
            b_plus: 0.25 * (1.0 + z_l - z_m - zz),
            b_minus: 0.25 * (1.0 - z_l + z_m - zz),
            e: 0.5 * xx,
        }
    }

    pub fn trace(&self) -> f64 {
        self.a_plus + self.a_minus + self.b_plus + self.b_minus
    }

    /// Checks non-negativity, unit trace and positivity of the coherent block.
    pub fn validate(&self) -> Result<()> {
        const TOL: f64 = 1e-12;
        for (name, v) in [
            ("a_plus", self.a_plus),
            ("a_minus", self.a_minus),
            ("b_plus", self.b_plus),
            ("b_minus", self.b_minus),
        ] {
            if v.is_nan() || v < -TOL {
                return Err(Error::InvalidState(format!("{name} = {v} is negative")));
            }
        }
        if (self.trace() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!(
                "trace = {} differs from 1",
                self.trace()
            )));
        }
        let bound = (self.b_plus.max(0.0) * self.b_minus.max(0.0)).sqrt() + 1e-10;
        if self.e.abs() > bound {
            return Err(Error::InvalidState(format!(
                "|e| = {} exceeds sqrt(b+ b-)",
                self.e.abs()
            )));
        }
        Ok(())
    }
}

/// Reduced density matrix of sites `l` and `m` (in that order).
pub fn two_spin_density(kern: &CorrelationKernel, l: usize, m: usize) -> Result<TwoSpinDensity> {
    let zz = zz_corr(kern, l, m)?;
    let xx = xx_corr(kern, l.min(m), l.max(m))?;
    let mut dens =
        TwoSpinDensity::from_correlators(magnetization(kern, l)?, magnetization(kern, m)?, zz, xx);
    // With fewer than two down (up) spins both sites cannot be down (up); the
    // correlator formula only reaches zero up to round-off there.
    if kern.k < 2 {
        dens.a_minus = 0.0;
    }
    if kern.n - kern.k < 2 {
        dens.a_plus = 0.0;
    }
    Ok(dens)
}

/// Mean density of antiparallel nearest-neighbour bonds.
pub fn domain_wall_density(kern: &CorrelationKernel) -> Result<f64> {
    let n = kern.n;
    if n < 2 {
        return Err(domain("domain wall density needs n >= 2"));
    }
    let mut total = 0.0;
    for l in 1..n {
        total += 0.5 * (1.0 - zz_corr(kern, l, l + 1)?);
    }
    Ok(total / (n - 1) as f64)
}
