// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{check_dim, commutator, eig_hermitian, max_abs, HermitianObservable};
use crate::{Real, Result};

/// Comparison of spec(A + B) with sums of eigenvalues of A and B.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditivityReport<T> {
    pub spec_a: Vec<T>,
    pub spec_b: Vec<T>,
    pub spec_sum: Vec<T>,
    /// Multiset `{aᵢ + bⱼ}` over all pairs, ascending.
    pub pairwise_sums: Vec<T>,
    pub commuting: bool,
    /// Whether spec(A + B) equals `{aᵢ + b_π(i)}` for some pairing `π`.
    pub additive: bool,
}

const MATCH_TOL: f64 = 1e-9;

pub fn spectrum_additivity_report<T: Real>(
    a: &HermitianObservable<T>,
    b: &HermitianObservable<T>,
) -> Result<AdditivityReport<T>> {
    check_dim(a.dim(), b.dim())?;
    let spec_a = a.eigenvalues();
    let spec_b = b.eigenvalues();
    let spec_sum = eig_hermitian(&(a.matrix() + b.matrix()))?.values;
    let mut pairwise_sums: Vec<T> =
        spec_a.iter().flat_map(|&x| spec_b.iter().map(move |&y| x + y)).collect();
    pairwise_sums.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let scale = spec_a
        .iter()
        .chain(&spec_b)
        .fold(T::one(), |acc, v| acc.max(v.abs()));
    let commuting = max_abs(&commutator(a.matrix(), b.matrix())) <= T::lit(MATCH_TOL) * scale;
    // commuting pairs are simultaneously diagonalizable, so a pairing exists;
    // the search still runs and must agree
    let tol = T::lit(MATCH_TOL) * scale;
    let mut used_b = vec![false; spec_b.len()];
    let mut used_c = vec![false; spec_sum.len()];
    let additive = find_pairing(&spec_a, &spec_b, &spec_sum, 0, &mut used_b, &mut used_c, tol);
    debug_assert!(!commuting || additive);

    Ok(AdditivityReport { spec_a, spec_b, spec_sum, pairwise_sums, commuting, additive })
}

/// Backtracking search for a bijection b ↦ a with {aᵢ + b_π(i)} = c as multisets.
fn find_pairing<T: Real>(
    a: &[T],
    b: &[T],
    c: &[T],
    i: usize,
    used_b: &mut [bool],
    used_c: &mut [bool],
    tol: T,
) -> bool {
    if i == a.len() {
        return true;
    }
    for j in 0..b.len() {
        if used_b[j] || (j > 0 && !used_b[j - 1] && (b[j] - b[j - 1]).abs() <= tol) {
            // equal unused predecessor already tried
            continue;
        }
        let target = a[i] + b[j];
        let Some(k) = (0..c.len()).find(|&k| !used_c[k] && (c[k] - target).abs() <= tol) else {
            continue;
        };
        used_b[j] = true;
        used_c[k] = true;
        if find_pairing(a, b, c, i + 1, used_b, used_c, tol) {
            return true;
        }
        used_b[j] = false;
        used_c[k] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{diag, zeros};
    use crate::ops;

    fn obs(m: nalgebra::DMatrix<nalgebra::Complex<f64>>) -> HermitianObservable<f64> {
        HermitianObservable::new(m).unwrap()
    }

    #[test]
    fn commuting_diagonals_are_additive() {
        let r = spectrum_additivity_report(&obs(diag(&[1.0, 2.0])), &obs(diag(&[10.0, 20.0])))
            .unwrap();
        assert!(r.commuting);
        assert!(r.additive);
        assert!((r.spec_sum[0] - 11.0).abs() < 1e-12);
        assert!((r.spec_sum[1] - 22.0).abs() < 1e-12);
        assert_eq!(r.pairwise_sums.len(), 4);
    }

    #[test]
    fn pauli_x_plus_z_not_additive() {
        let r = spectrum_additivity_report(&obs(ops::pauli_x()), &obs(ops::pauli_z())).unwrap();
        let s2 = 2f64.sqrt();
        assert!((r.spec_sum[0] + s2).abs() < 1e-12);
        assert!((r.spec_sum[1] - s2).abs() < 1e-12);
        assert!(!r.commuting);
        assert!(!r.additive);
    }

    #[test]
    fn zero_plus_anything_is_additive() {
        let b = obs(ops::pauli_y::<f64>() + ops::pauli_x::<f64>());
        let r = spectrum_additivity_report(&obs(zeros(2)), &b).unwrap();
        assert!(r.additive);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(spectrum_additivity_report(&obs(zeros(2)), &obs(zeros(3))).is_err());
    }
}
