// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::QuantumInstrument;
use crate::literal::MatrixLiteral;
use crate::{Error, Real, Result};

/// JSON form `{outcomes: [labels], kraus: {label: [matrix literals]}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstrumentRecord {
    pub outcomes: Vec<String>,
    pub kraus: BTreeMap<String, Vec<MatrixLiteral>>,
}

impl InstrumentRecord {
    pub fn from_instrument<T: Real>(inst: &QuantumInstrument<T>) -> Self {
        let kraus = inst
            .outcomes()
            .iter()
            .zip(inst.maps())
            .map(|(o, m)| (o.clone(), m.kraus().iter().map(MatrixLiteral::from_matrix).collect()))
            .collect();
        Self { outcomes: inst.outcomes().to_vec(), kraus }
    }

    pub fn to_instrument<T: Real>(&self) -> Result<QuantumInstrument<T>> {
        if self.kraus.len() != self.outcomes.len() {
            return Err(Error::InvalidArgument(format!(
                "{} outcomes but {} Kraus entries",
                self.outcomes.len(),
                self.kraus.len()
            )));
        }
        let table = self
            .outcomes
            .iter()
            .map(|o| {
                let lits = self
                    .kraus
                    .get(o)
                    .ok_or_else(|| Error::InvalidArgument(format!("no Kraus list for outcome {o:?}")))?;
                let ms = lits.iter().map(|l| l.to_matrix::<T>()).collect::<Result<Vec<_>>>()?;
                Ok((o.clone(), ms))
            })
            .collect::<Result<Vec<_>>>()?;
        QuantumInstrument::from_kraus(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HermitianObservable;
    use crate::ops;

    #[test]
    fn round_trip_through_json() {
        let inst = QuantumInstrument::projection(&HermitianObservable::new(ops::spin_along::<f64>(0.4)).unwrap());
        let rec = InstrumentRecord::from_instrument(&inst);
        let text = serde_json::to_string(&rec).unwrap();
        let back: InstrumentRecord = serde_json::from_str(&text).unwrap();
        let inst2 = back.to_instrument::<f64>().unwrap();
        assert!(inst.action_distance(&inst2).unwrap() < 1e-15);
    }

    #[test]
    fn missing_kraus_entry() {
        let rec: InstrumentRecord = serde_json::from_str(
            r#"{"outcomes":["a","b"],"kraus":{"a":[[[[1,0],[0,0]],[[0,0],[1,0]]]],"c":[]}}"#,
        )
        .unwrap();
        assert!(rec.to_instrument::<f64>().is_err());
    }
}
