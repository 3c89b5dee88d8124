// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Searches the memory-register family for a member showing the question
//! order effect together with response replicability and the QQ-equality,
//! and prints its parameters as JSON.
//!
//! Usage: `cargo run --example search_profile -- [seed] [trials] [probe_dim]`

use qlike::effects::{search_reference, Expectations};
use qlike::random;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let seed = args.first().copied().unwrap_or(7);
    let trials = args.get(1).copied().unwrap_or(200) as usize;
    let probe_dim = args.get(2).copied().unwrap_or(4) as usize;
    let mut rng = random::seeded(seed);
    match search_reference(&mut rng, trials, probe_dim, &Expectations::combined()) {
        Ok(Some((params, profile))) => {
            eprintln!("{}", serde_json::to_string(&profile.record(true)).unwrap());
            println!("{}", serde_json::to_string_pretty(&params).unwrap());
        }
        Ok(None) => {
            eprintln!("no member passed in {trials} trials");
            std::process::exit(1);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
