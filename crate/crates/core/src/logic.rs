// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantum logic on projectors.
//!
//! Propositions are subspaces, represented by their orthogonal projectors.
//! Negation is the orthogonal complement, conjunction the intersection of
//! ranges and disjunction the closed span of their union. Both binary
//! operations are commutative for every pair of projectors; distributivity
//! is what fails once projectors stop commuting.

use serde::{Deserialize, Serialize};

pub use crate::hilbert::Projector;
use crate::hilbert::{check_dim, commutator, eig_hermitian, max_abs, StateVector};
use crate::{Real, Result};

/// Eigenvalue window around 2 used to read off range(P) ∩ range(Q).
const MEET_WINDOW: f64 = 1e-8;
/// Eigenvalues of P + Q above this count towards the join.
const JOIN_FLOOR: f64 = 1e-8;
/// Operator deviation separating a distributivity violation from noise.
pub const VIOLATION_THRESHOLD: f64 = 1e-8;
pub const DEFAULT_COMMUTE_TOL: f64 = 1e-9;

/// `I − P`.
pub fn complement<T: Real>(p: &Projector<T>) -> Projector<T> {
    p.complement()
}

/// Projector onto range(P) ∩ range(Q).
///
/// A vector lies in both ranges iff `(P + Q)v = 2v`, so the meet is the
/// eigenvalue-2 eigenspace of `P + Q`.
pub fn meet<T: Real>(p: &Projector<T>, q: &Projector<T>) -> Result<Projector<T>> {
    check_dim(p.dim(), q.dim())?;
    let eig = eig_hermitian(&(p.matrix() + q.matrix()))?;
    let two = T::lit(2.0);
    let idx: Vec<usize> =
        (0..eig.dim()).filter(|&i| (eig.values[i] - two).abs() <= T::lit(MEET_WINDOW)).collect();
    Ok(Projector::from_matrix_unchecked(eig.projector(&idx)))
}

/// Projector onto span(range P ∪ range Q), i.e. the support of `P + Q`.
pub fn join<T: Real>(p: &Projector<T>, q: &Projector<T>) -> Result<Projector<T>> {
    check_dim(p.dim(), q.dim())?;
    let eig = eig_hermitian(&(p.matrix() + q.matrix()))?;
    let idx: Vec<usize> = (0..eig.dim()).filter(|&i| eig.values[i] > T::lit(JOIN_FLOOR)).collect();
    Ok(Projector::from_matrix_unchecked(eig.projector(&idx)))
}

pub fn commute<T: Real>(p: &Projector<T>, q: &Projector<T>, tol: f64) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    Ok(max_abs(&commutator(p.matrix(), q.matrix())) <= T::lit(tol))
}

/// Name of a proposition in a distributivity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Prop {
    P,
    Q,
    R,
    Pc,
    Qc,
    Rc,
}

/// A triple where `X∧(Y∨Z) ≠ (X∧Y)∨(X∧Z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation<T> {
    #[serde(rename = "X")]
    pub x: Prop,
    #[serde(rename = "Y")]
    pub y: Prop,
    #[serde(rename = "Z")]
    pub z: Prop,
    pub deviation: T,
}

/// `(X∧(Y∨Z), (X∧Y)∨(X∧Z))` for every ordered triple of `family`, in
/// lexicographic order. Pairwise meets and joins are computed once.
fn distributive_sides<T: Real>(family: &[Projector<T>]) -> Result<Vec<(Projector<T>, Projector<T>)>> {
    let n = family.len();
    let mut joins = Vec::with_capacity(n * n);
    let mut meets = Vec::with_capacity(n * n);
    for a in family {
        for b in family {
            joins.push(join(a, b)?);
            meets.push(meet(a, b)?);
        }
    }
    let mut out = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = meet(&family[x], &joins[y * n + z])?;
                let rhs = join(&meets[x * n + y], &meets[x * n + z])?;
                out.push((lhs, rhs));
            }
        }
    }
    Ok(out)
}

/// Evaluates the distributive law on all 216 ordered triples drawn from
/// {P, Q, R, P̄, Q̄, R̄} and returns every violating triple, sorted.
pub fn distributivity_violations<T: Real>(
    p: &Projector<T>,
    q: &Projector<T>,
    r: &Projector<T>,
) -> Result<Vec<Violation<T>>> {
    check_dim(p.dim(), q.dim())?;
    check_dim(p.dim(), r.dim())?;
    let family = [
        (Prop::P, p.clone()),
        (Prop::Q, q.clone()),
        (Prop::R, r.clone()),
        (Prop::Pc, p.complement()),
        (Prop::Qc, q.complement()),
        (Prop::Rc, r.complement()),
    ];
    let projectors: Vec<_> = family.iter().map(|(_, p)| p.clone()).collect();
    let mut sides = distributive_sides(&projectors)?.into_iter();
    let mut out = Vec::new();
    for (xn, _) in &family {
        for (yn, _) in &family {
            for (zn, _) in &family {
                let (lhs, rhs) = sides.next().expect("one entry per triple");
                let deviation = max_abs(&(lhs.matrix() - rhs.matrix()));
                if deviation > T::lit(VIOLATION_THRESHOLD) {
                    out.push(Violation { x: *xn, y: *yn, z: *zn, deviation });
                }
            }
        }
    }
    out.sort_by_key(|v| (v.x, v.y, v.z));
    Ok(out)
}

/// Per-triple vector deviations ‖[X∧(Y∨Z)]ψ − [(X∧Y)∨(X∧Z)]ψ‖ over
/// X, Y, Z ∈ {P, Q, P̄, Q̄} (64 triples, in enumeration order).
pub fn state_distributivity_deviations<T: Real>(
    p: &Projector<T>,
    q: &Projector<T>,
    psi: &StateVector<T>,
) -> Result<Vec<((Prop, Prop, Prop), T)>> {
    check_dim(p.dim(), q.dim())?;
    check_dim(p.dim(), psi.dim())?;
    let family = [
        (Prop::P, p.clone()),
        (Prop::Q, q.clone()),
        (Prop::Pc, p.complement()),
        (Prop::Qc, q.complement()),
    ];
    let projectors: Vec<_> = family.iter().map(|(_, p)| p.clone()).collect();
    let mut sides = distributive_sides(&projectors)?.into_iter();
    let mut out = Vec::with_capacity(64);
    for (xn, _) in &family {
        for (yn, _) in &family {
            for (zn, _) in &family {
                let (lhs, rhs) = sides.next().expect("one entry per triple");
                let diff = lhs.apply(psi.amplitudes()) - rhs.apply(psi.amplitudes());
                out.push(((*xn, *yn, *zn), diff.norm()));
            }
        }
    }
    Ok(out)
}

/// Whether the distributive law holds relative to ψ for all 64 triples.
pub fn state_distributivity<T: Real>(
    p: &Projector<T>,
    q: &Projector<T>,
    psi: &StateVector<T>,
) -> Result<bool> {
    Ok(state_distributivity_deviations(p, q, psi)?
        .iter()
        .all(|(_, d)| *d <= T::lit(VIOLATION_THRESHOLD)))
}
