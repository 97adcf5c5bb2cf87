//! Single-particle spectrum, level crossings and the ground-state envelope.
//!
//! The open chain of `n` sites maps onto free fermions with standing-wave
//! modes `S_l^k = sqrt(2/(n+1)) sin(pi k l/(n+1))` and mode energies
//! `Lambda_k = -2B + 2 cos(pi k/(n+1))`. The ground state in region `k`
//! (between the crossing fields `B_{k+1} < B < B_k`) has modes `1..=k`
//! emptied, i.e. `k` flipped spins.
//!
//! At an exact crossing field the higher-field state is reported: the region
//! index counts crossing fields strictly greater than `B`.

use std::f64::consts::PI;

use crate::error::{check_index, domain, Result};

/// Chain length and dimensionless field. The exchange coupling is the energy unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    n: usize,
    b: f64,
}

impl ChainSpec {
    pub fn new(n: usize, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("chain length n must be >= 1"));
        }
        if !b.is_finite() {
            return Err(domain(format!("field b = {b} must be finite")));
        }
        Ok(Self { n, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Region index plus mode occupations of the ground state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundStateData {
    pub n: usize,
    pub k: usize,
    /// `occupation[m - 1]` is true iff mode `m` is filled.
    pub occupation: Vec<bool>,
}

/// `sin(pi * p / q)` with exact argument reduction, so that multiples of `pi`
/// give exactly zero and the values are exactly odd/symmetric.
pub(crate) fn sin_pi_ratio(p: usize, q: usize) -> f64 {
    let period = 2 * q;
    let mut p = p % period;
    let mut sign = 1.0;
    if p >= q {
        p -= q;
        sign = -1.0;
    }
    if 2 * p > q {
        p = q - p;
    }
    if p == 0 {
        return 0.0;
    }
    sign * (PI * p as f64 / q as f64).sin()
}

/// `cos(pi * p / q)` with exact reduction; `cos(pi/2)` is exactly zero.
pub(crate) fn cos_pi_ratio(p: usize, q: usize) -> f64 {
    let period = 2 * q;
    let mut p = p % period;
    if p > q {
        p = period - p;
    }
    if 2 * p == q {
        0.0
    } else if 2 * p > q {
        -(PI * (q - p) as f64 / q as f64).cos()
    } else {
        (PI * p as f64 / q as f64).cos()
    }
}

/// Unchecked mode amplitude `S_l^k`.
#[inline]
pub(crate) fn mode_amplitude(n: usize, k: usize, l: usize) -> f64 {
    (2.0 / (n + 1) as f64).sqrt() * sin_pi_ratio(k * l, n + 1)
}

/// Standing-wave amplitude `S_l^k` of mode `k` on site `l`.
///
/// `k = n + 1` is accepted and gives zero on every site.
pub fn sine_amplitude(n: usize, k: usize, l: usize) -> Result<f64> {
    if n == 0 {
        return Err(domain("chain length n must be >= 1"));
    }
    check_index("mode k", k, n + 1)?;
    check_index("site l", l, n)?;
    Ok(mode_amplitude(n, k, l))
}

/// Crossing field `B_k = cos(k pi/(n+1))`, unchecked.
#[inline]
pub(crate) fn crossing_field(n: usize, k: usize) -> f64 {
    cos_pi_ratio(k, n + 1)
}

/// Single-particle energy `Lambda_k`.
pub fn mode_energy(spec: ChainSpec, k: usize) -> Result<f64> {
    check_index("mode k", k, spec.n)?;
    Ok(-2.0 * spec.b + 2.0 * crossing_field(spec.n, k))
}

/// All crossing fields `[B_1, ..., B_n]`, strictly decreasing.
pub fn crossing_fields(n: usize) -> Vec<f64> {
    (1..=n).map(|k| crossing_field(n, k)).collect()
}

/// Number of crossing fields strictly above `b`.
pub fn region_index(spec: ChainSpec) -> usize {
    // B_k is decreasing, so the count is the first k with B_k <= b.
    let n = spec.n;
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if crossing_field(n, mid + 1) > spec.b {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

pub fn ground_state(spec: ChainSpec) -> GroundStateData {
    let k = region_index(spec);
    GroundStateData {
        n: spec.n,
        k,
        occupation: (1..=spec.n).map(|m| m > k).collect(),
    }
}

/// Energy of the region-`k` state at the field in `spec`.
pub fn ground_energy_at(spec: ChainSpec, k: usize) -> Result<f64> {
    let n = spec.n;
    if k > n {
        return Err(domain(format!("region index k = {k} must lie in 0..={n}")));
    }
    let cos_sum: f64 = (1..=k).map(|l| crossing_field(n, l)).sum();
    Ok(-((n as f64) - 2.0 * k as f64) * spec.b - 2.0 * cos_sum)
}

pub fn ground_energy(spec: ChainSpec) -> f64 {
    ground_energy_at(spec, region_index(spec)).expect("region index is in range")
}
