//! Shared helpers for integration tests: an independent brute-force
//! discrepancy oracle and a harness for driving the CLI binary.
#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

/// Maximum anchored-box discrepancy over the dense corner grid
/// {1/g, 2/g, ..., 1}^s, counted with plain loops.
///
/// The grid is an (s/g)-cover, so the true supremum lies in
/// [result, result + s/g]. Everything here is written independently of the
/// library: own counting, own volume accumulation, own maximum.
pub fn dense_grid_oracle(coords: &[Vec<f64>], g: u64) -> f64 {
    let s = coords[0].len();
    let n = coords.len() as f64;
    let mut idx = vec![1u64; s];
    let mut best = 0.0f64;
    loop {
        let y: Vec<f64> = idx.iter().map(|&i| i as f64 / g as f64).collect();
        let mut closed = 0usize;
        let mut strict = 0usize;
        for p in coords {
            let mut le = true;
            let mut lt = true;
            for d in 0..s {
                if p[d] > y[d] {
                    le = false;
                    lt = false;
                    break;
                }
                if p[d] >= y[d] {
                    lt = false;
                }
            }
            if le {
                closed += 1;
            }
            if lt {
                strict += 1;
            }
        }
        let mut vol = 1.0f64;
        for &c in &y {
            vol *= c;
        }
        let over = closed as f64 / n - vol;
        let under = vol - strict as f64 / n;
        if over > best {
            best = over;
        }
        if under > best {
            best = under;
        }
        let mut d = s;
        loop {
            if d == 0 {
                return best;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] <= g {
                break;
            }
            idx[d] = 1;
        }
    }
}

pub struct CliOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    pub fn json(&self) -> serde_json::Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| {
            panic!("stdout is not JSON ({e}):\n{}", self.stdout);
        })
    }
}

/// Runs the stardisc binary with a scrubbed budget environment.
pub fn stardisc(args: &[&str]) -> CliOutput {
    stardisc_env(args, &[])
}

pub fn stardisc_env(args: &[&str], envs: &[(&str, &str)]) -> CliOutput {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_stardisc"));
    cmd.args(args).env_remove("STARDISC_BUDGET");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    let out = cmd.output().expect("failed to launch the stardisc binary");
    CliOutput {
        status: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn write_file(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}
