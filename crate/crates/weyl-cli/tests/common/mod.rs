//! Shared helpers for the integration suites: an independent dense-matrix
//! oracle built straight from the defining formulas (no algebra-element
//! code), and a runner for the compiled `weyl` binary.

#![allow(dead_code)]

use ndarray::Array2;
use num_complex::Complex64 as C64;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Once;

pub type Matrix = Array2<C64>;

/// Pin the BLAS backend to one thread before the first linear-algebra call
/// in this test process; parallel test threads would otherwise oversubscribe
/// the machine and distort the per-criterion runtime measurements.
pub fn pin_blas() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| std::env::set_var("OPENBLAS_NUM_THREADS", "1"));
}

pub fn omega(n: usize) -> C64 {
    C64::from_polar(1.0, std::f64::consts::TAU / n as f64)
}

/// Diagonal generator: diag(1, ω, ω², …).
pub fn clock_matrix(n: usize) -> Matrix {
    let w = omega(n);
    Array2::from_shape_fn((n, n), |(r, c)| {
        if r == c {
            w.powu(r as u32)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Cyclic shift with ones on the superdiagonal: (Sψ)_j = ψ_{j+1}.
pub fn shift_matrix(n: usize) -> Matrix {
    Array2::from_shape_fn((n, n), |(r, c)| {
        if c == (r + 1) % n {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Unitary DFT F[r, c] = ω^{rc}/√n.
pub fn dft_matrix(n: usize) -> Matrix {
    let w = omega(n);
    let s = 1.0 / (n as f64).sqrt();
    Array2::from_shape_fn((n, n), |(r, c)| w.powu(((r * c) % n) as u32) * s)
}

/// Position observable diag(0, 1, …, n−1).
pub fn position_matrix(n: usize) -> Matrix {
    Array2::from_shape_fn((n, n), |(r, c)| {
        if r == c {
            C64::new(r as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

pub fn dag(m: &Matrix) -> Matrix {
    m.t().mapv(|z| z.conj())
}

/// Momentum observable F·X·F†.
pub fn momentum_matrix(n: usize) -> Matrix {
    let f = dft_matrix(n);
    f.dot(&position_matrix(n)).dot(&dag(&f))
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub struct RunResult {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// Run the compiled binary with the given arguments and a scrubbed
/// environment (no inherited WEYL_OUT_DIR).
pub fn run_weyl(args: &[&str]) -> RunResult {
    run_weyl_env(args, &[])
}

pub fn run_weyl_env(args: &[&str], envs: &[(&str, &str)]) -> RunResult {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_weyl"));
    cmd.args(args).env_remove("WEYL_OUT_DIR");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    RunResult {
        code: out.status.code().expect("binary not killed by signal"),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn stdout_json(r: &RunResult) -> serde_json::Value {
    serde_json::from_slice(&r.stdout).expect("stdout parses as JSON")
}

/// Fresh directory under the cargo-managed integration-test temp root.
pub fn temp_dir(label: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!(
        "{label}-{}",
        std::process::id()
    ));
    std::fs::create_dir_all(&dir).expect("create temp dir");
    dir
}
