//! Single-spin partial-state fidelity across crossings and its coarse-grained
//! susceptibility.
//!
//! The one-spin reduced state is diagonal, `diag(p_up, 1 - p_up)`, so the
//! Uhlmann fidelity reduces to the Bhattacharyya coefficient of the two
//! occupations. Inside a region the state does not depend on `B`, so the
//! fidelity is only nontrivial between neighbouring regions; it is reported at
//! the crossing field `B_k` separating regions `k - 1` and `k`, and the
//! susceptibility uses the crossing spacing as the field step.

use crate::error::{check_index, domain, Result};
use crate::spectrum::{crossing_field, mode_amplitude};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityPoint {
    pub k: usize,
    pub b_k: f64,
    pub fid: f64,
    /// `-2 ln(fid) / delta_b^2`; `+inf` when `fid == 0`.
    pub chi: f64,
    pub delta_b: f64,
}

/// Fidelity of `diag(p, 1-p)` and `diag(q, 1-q)`.
pub fn single_spin_fidelity(p_up: f64, q_up: f64) -> Result<f64> {
    const TOL: f64 = 1e-12;
    for (name, v) in [("p_up", p_up), ("q_up", q_up)] {
        if !(-TOL..=1.0 + TOL).contains(&v) {
            return Err(domain(format!("{name} = {v} must lie in [0, 1]")));
        }
    }
    let (p, q) = (p_up.clamp(0.0, 1.0), q_up.clamp(0.0, 1.0));
    Ok(bhattacharyya(
        Occupation {
            up: p,
            down: 1.0 - p,
        },
        Occupation {
            up: q,
            down: 1.0 - q,
        },
    ))
}

/// Diagonal of a one-spin reduced state. Both entries are kept as separate
/// partial sums over modes so that neither loses precision near zero.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Occupation {
    up: f64,
    down: f64,
}

fn bhattacharyya(p: Occupation, q: Occupation) -> f64 {
    ((p.up * q.up).sqrt() + (p.down * q.down).sqrt()).min(1.0)
}

fn occupation(n: usize, l: usize, k: usize) -> Occupation {
    let weight = |r| mode_amplitude(n, r, l).powi(2);
    Occupation {
        up: (k + 1..=n).map(weight).sum::<f64>().min(1.0),
        down: (1..=k).map(weight).sum::<f64>().min(1.0),
    }
}

/// Spin-up probability of site `l` in region `k`: `1 - g_{l,l}/2`, summed
/// over the modes that stay filled.
pub fn up_probability(n: usize, l: usize, k: usize) -> Result<f64> {
    check_index("site l", l, n)?;
    if k > n {
        return Err(domain(format!("region index k = {k} must lie in 0..={n}")));
    }
    Ok(occupation(n, l, k).up)
}

/// Fidelity of site `l` between regions `k - 1` and `k`.
pub fn coarse_fidelity(n: usize, l: usize, k: usize) -> Result<f64> {
    check_index("crossing k", k, n)?;
    check_index("site l", l, n)?;
    Ok(bhattacharyya(occupation(n, l, k - 1), occupation(n, l, k)))
}

fn susceptibility(fid: f64, delta_b: f64) -> f64 {
    if fid <= 0.0 {
        f64::INFINITY
    } else {
        (-2.0 * fid.ln() / (delta_b * delta_b)).max(0.0)
    }
}

/// Coarse susceptibility at crossing `k`, with step `B_{k-1} - B_k`.
pub fn fidelity_susceptibility(n: usize, l: usize, k: usize) -> Result<f64> {
    if k < 2 || k > n {
        return Err(domain(format!("crossing k = {k} must lie in 2..={n}")));
    }
    let fid = coarse_fidelity(n, l, k)?;
    Ok(susceptibility(
        fid,
        crossing_field(n, k - 1) - crossing_field(n, k),
    ))
}

/// Field step attached to crossing `k`. The first crossing has no upper
/// neighbour and borrows the spacing to the second; a single-site chain uses
/// the distance from its only crossing to the saturation field.
fn crossing_spacing(n: usize, k: usize) -> f64 {
    match (n, k) {
        (1, _) => 1.0 - crossing_field(1, 1),
        (_, 1) => crossing_field(n, 1) - crossing_field(n, 2),
        _ => crossing_field(n, k - 1) - crossing_field(n, k),
    }
}

/// Fidelity and susceptibility at every crossing, `k = 1..=n` (descending `B_k`).
pub fn fidelity_sweep(n: usize, l: usize) -> Result<Vec<FidelityPoint>> {
    check_index("site l", l, n)?;
    let weights: Vec<f64> = (1..=n).map(|r| mode_amplitude(n, r, l).powi(2)).collect();
    // occupations for k = 0..=n via prefix and suffix sums
    let mut down = vec![0.0; n + 1];
    let mut up = vec![0.0; n + 1];
    for k in 1..=n {
        down[k] = down[k - 1] + weights[k - 1];
    }
    for k in (0..n).rev() {
        up[k] = up[k + 1] + weights[k];
    }
    let occ = |k: usize| Occupation {
        up: up[k].min(1.0),
        down: down[k].min(1.0),
    };
    Ok((1..=n)
        .map(|k| {
            let fid = bhattacharyya(occ(k - 1), occ(k));
            let delta_b = crossing_spacing(n, k);
            FidelityPoint {
                k,
                b_k: crossing_field(n, k),
                fid,
                chi: susceptibility(fid, delta_b),
                delta_b,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{kernel_matrix, magnetization};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn single_spin_examples() {
        assert_abs_diff_eq!(
            single_spin_fidelity(0.3, 0.3).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            single_spin_fidelity(1.0, 0.75).unwrap(),
            0.75f64.sqrt(),
            epsilon = 1e-15
        );
        assert_eq!(single_spin_fidelity(1.0, 0.0).unwrap(), 0.0);
        assert!(single_spin_fidelity(1.1, 0.5).is_err());
        assert!(single_spin_fidelity(0.5, -0.01).is_err());
        assert!(single_spin_fidelity(f64::NAN, 0.5).is_err());
    }

    #[test]
    fn coarse_examples() {
        assert_abs_diff_eq!(
            coarse_fidelity(3, 1, 1).unwrap(),
            0.8660254037844386,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            coarse_fidelity(3, 2, 1).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        assert!(coarse_fidelity(3, 1, 0).is_err());
        assert!(coarse_fidelity(3, 1, 4).is_err());
    }

    #[test]
    fn occupations_agree_with_kernel() {
        for n in 1..15 {
            for k in 0..=n {
                let kern = kernel_matrix(n, k).unwrap();
                for l in 1..=n {
                    let from_kernel = 0.5 * (1.0 + magnetization(&kern, l).unwrap());
                    assert_abs_diff_eq!(
                        up_probability(n, l, k).unwrap(),
                        from_kernel,
                        epsilon = 1e-13
                    );
                }
            }
        }
    }

    #[test]
    fn susceptibility_examples() {
        // n = 3, site 1 across B_2: p goes 0.75 -> 0.25 (S_1^2 = 1/sqrt 2)
        let p1 = up_probability(3, 1, 1).unwrap();
        let p2 = up_probability(3, 1, 2).unwrap();
        assert_abs_diff_eq!(p1, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(p2, 0.25, epsilon = 1e-15);
        let f = 2.0 * (0.75f64 * 0.25).sqrt();
        let want = -2.0 * f.ln() / 0.5;
        assert_abs_diff_eq!(
            fidelity_susceptibility(3, 1, 2).unwrap(),
            want,
            epsilon = 1e-13
        );
        assert!(fidelity_susceptibility(3, 1, 1).is_err());

        let mid = fidelity_susceptibility(30, 15, 15).unwrap();
        // site 15 of 30 sits next to the nodes of even modes; compare odd crossings
        let edge = fidelity_susceptibility(30, 15, 3).unwrap();
        assert!(mid.is_finite() && mid > 0.0);
        assert!(mid < edge);
    }

    #[test]
    fn sweep_examples() {
        let s = fidelity_sweep(30, 15).unwrap();
        assert_eq!(s.len(), 30);
        assert!(s.windows(2).all(|w| w[0].b_k > w[1].b_k));
        let min_k = s.iter().min_by(|a, b| a.fid.total_cmp(&b.fid)).unwrap().k;
        assert!(min_k == 1 || min_k == 30);

        let interior_min = |n: usize| {
            fidelity_sweep(n, n / 2)
                .unwrap()
                .into_iter()
                .filter(|p| 5 * p.k >= n && 5 * p.k <= 4 * n)
                .map(|p| p.fid)
                .fold(f64::INFINITY, f64::min)
        };
        assert!(interior_min(200) > interior_min(50));

        let min_fid = |l| {
            fidelity_sweep(30, l)
                .unwrap()
                .iter()
                .map(|p| p.fid)
                .fold(1.0, f64::min)
        };
        assert!(min_fid(1) > min_fid(15));

        let single = fidelity_sweep(1, 1).unwrap();
        assert_eq!(single[0].fid, 0.0);
        assert_eq!(single[0].chi, f64::INFINITY);
    }

    #[test]
    fn sweep_matches_pointwise_calls() {
        for (n, l) in [(7, 3), (20, 1), (31, 16)] {
            for p in fidelity_sweep(n, l).unwrap() {
                assert_abs_diff_eq!(p.fid, coarse_fidelity(n, l, p.k).unwrap(), epsilon = 1e-13);
                if p.k >= 2 {
                    let chi = fidelity_susceptibility(n, l, p.k).unwrap();
                    assert!((p.chi - chi).abs() <= 1e-9 * chi.max(1.0));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn fidelity_properties(p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
            let f = single_spin_fidelity(p, q).unwrap();
            prop_assert!((0.0..=1.0).contains(&f));
            prop_assert_eq!(f, single_spin_fidelity(q, p).unwrap());
            prop_assert!((single_spin_fidelity(p, p).unwrap() - 1.0).abs() < 1e-15);
            let chi = susceptibility(f, 0.1);
            prop_assert!(chi >= 0.0);
            if (p - q).abs() > 1e-6 {
                prop_assert!(f < 1.0);
            }
        }
    }
}
