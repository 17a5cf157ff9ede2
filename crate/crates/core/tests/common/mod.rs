#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

/// Textbook RK4 on `Vec<f64>` states, written independently of the library's
/// stepping code. Used as a numerical reference, not for bit comparisons.
pub fn reference_rk4<F>(f: F, x0: &[f64], h: f64, steps: usize) -> Vec<Vec<f64>>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let axpy = |x: &[f64], s: f64, k: &[f64]| -> Vec<f64> {
        x.iter().zip(k).map(|(xi, ki)| xi + s * ki).collect()
    };
    let mut out = vec![x0.to_vec()];
    let mut x = x0.to_vec();
    for _ in 0..steps {
        let k1 = f(&x);
        let k2 = f(&axpy(&x, 0.5 * h, &k1));
        let k3 = f(&axpy(&x, 0.5 * h, &k2));
        let k4 = f(&axpy(&x, h, &k3));
        for i in 0..x.len() {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        out.push(x.clone());
    }
    out
}

pub fn rossler_rhs(a: f64, b: f64, c: f64) -> impl Fn(&[f64]) -> Vec<f64> {
    move |s| vec![-s[1] - s[2], s[0] + a * s[1], b + s[2] * (s[0] - c)]
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_rossler"))
}

pub fn rossler(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("failed to spawn rossler")
}

/// Bit patterns sorted, then checked for adjacent duplicates.
pub fn pairwise_bit_distinct(values: &[f64]) -> bool {
    let mut bits: Vec<u64> = values.iter().map(|v| v.to_bits()).collect();
    bits.sort_unstable();
    bits.windows(2).all(|w| w[0] != w[1])
}
