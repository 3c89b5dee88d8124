// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use super::QuantumInstrument;
use crate::hilbert::{check_dim, ComplexMatrix, DensityOperator};
use crate::{Error, Real, Result};

/// Joint distribution of outcome tuples from measuring instruments in order.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<T> {
    /// Outcome labels of each instrument, in measurement order.
    pub labels: Vec<Vec<String>>,
    /// `(outcome indices, probability)`, lexicographic in the indices.
    pub entries: Vec<(Vec<usize>, T)>,
}

/// `p(x₁,…,xₙ) = Tr[𝓘ₙ(xₙ)∘…∘𝓘₁(x₁)ρ]`.
pub fn sequential_distribution<T: Real>(
    instruments: &[&QuantumInstrument<T>],
    rho: &DensityOperator<T>,
) -> Result<JointDistribution<T>> {
    if instruments.is_empty() {
        return Err(Error::Empty);
    }
    for inst in instruments {
        check_dim(rho.dim(), inst.dim())?;
    }
    let mut entries = Vec::new();
    let mut path = Vec::with_capacity(instruments.len());
    walk(instruments, rho.matrix(), &mut path, &mut entries);
    let labels = instruments.iter().map(|i| i.outcomes().to_vec()).collect();
    Ok(JointDistribution { labels, entries })
}

fn walk<T: Real>(
    instruments: &[&QuantumInstrument<T>],
    state: &ComplexMatrix<T>,
    path: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, T)>,
) {
    let Some((first, rest)) = instruments.split_first() else {
        out.push((path.clone(), state.trace().re.max(T::zero())));
        return;
    };
    for (i, map) in first.maps().iter().enumerate() {
        let next = map.apply(state);
        path.push(i);
        walk(rest, &next, path, out);
        path.pop();
    }
}

impl<T: Real> JointDistribution<T> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, (_, p)| acc + *p)
    }

    fn index(&self, outcomes: &[&str]) -> Result<Vec<usize>> {
        if outcomes.len() != self.labels.len() {
            return Err(Error::DimensionMismatch { expected: self.labels.len(), found: outcomes.len() });
        }
        outcomes
            .iter()
            .zip(&self.labels)
            .map(|(o, ls)| {
                ls.iter().position(|l| l == o).ok_or_else(|| Error::UnknownOutcome(o.to_string()))
            })
            .collect()
    }

    pub fn prob(&self, outcomes: &[&str]) -> Result<T> {
        let idx = self.index(outcomes)?;
        Ok(self.entries.iter().find(|(k, _)| *k == idx).map(|(_, p)| *p).unwrap_or(T::zero()))
    }

    /// Distribution of the first `n` measurements, summing out the rest.
    pub fn prefix_marginal(&self, n: usize) -> Self {
        let n = n.min(self.labels.len());
        let mut entries: Vec<(Vec<usize>, T)> = Vec::new();
        for (k, p) in &self.entries {
            let key = k[..n].to_vec();
            match entries.last_mut() {
                Some((last, acc)) if *last == key => *acc += *p,
                _ => entries.push((key, *p)),
            }
        }
        Self { labels: self.labels[..n].to_vec(), entries }
    }

    /// Entries with their labels, for reporting.
    pub fn labeled(&self) -> Vec<(Vec<String>, T)> {
        self.entries
            .iter()
            .map(|(k, p)| (k.iter().zip(&self.labels).map(|(&i, ls)| ls[i].clone()).collect(), *p))
            .collect()
    }
}
