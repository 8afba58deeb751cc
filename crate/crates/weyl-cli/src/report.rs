//! Report assembly: every emitted file embeds the command, its parameters,
//! the tool version, and the frozen convention constants, in both the JSON
//! and CSV renderings, so downstream comparisons never depend on implicit
//! choices. All numeric text is 17-significant-digit lowercase scientific,
//! which round-trips f64 exactly.

use std::path::{Path, PathBuf};
use weyl_core::operators::{
    ADJOINT_CONVENTION, EXP_SIGN_MOMENTUM, EXP_SIGN_POSITION, SHIFT_CONVENTION,
};
use weyl_core::C64;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable that re-roots relative `--output` paths.
pub const OUT_DIR_ENV: &str = "WEYL_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// 17 significant digits, lowercase scientific: enough to reconstruct the
/// exact f64, and byte-stable across runs.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex_json(z: C64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

pub fn conventions_json() -> serde_json::Value {
    serde_json::json!({
        "shift_convention": SHIFT_CONVENTION,
        "adjoint_convention": ADJOINT_CONVENTION,
        "neighbour_convention": weyl_core::locality::NEIGHBOUR_CONVENTION,
        "exp_sign_position": EXP_SIGN_POSITION,
        "exp_sign_momentum": EXP_SIGN_MOMENTUM,
    })
}

/// The order(s) a command ran at: one n, or the ascending list of a study.
pub enum Orders {
    Single(usize),
    List(Vec<usize>),
}

impl Orders {
    fn json_key(&self) -> &'static str {
        match self {
            Orders::Single(_) => "n",
            Orders::List(_) => "n_list",
        }
    }

    fn json_value(&self) -> serde_json::Value {
        match self {
            Orders::Single(n) => serde_json::json!(n),
            Orders::List(ns) => serde_json::json!(ns),
        }
    }

    fn text(&self) -> String {
        match self {
            Orders::Single(n) => n.to_string(),
            Orders::List(ns) => ns
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

/// Shared report header: command name, the n (or n-list) it ran at, and the
/// seed when the command consumed randomness.
pub struct Meta {
    pub command: &'static str,
    pub orders: Orders,
    pub seed: Option<u64>,
}

impl Meta {
    pub fn single(command: &'static str, n: usize, seed: Option<u64>) -> Self {
        Self {
            command,
            orders: Orders::Single(n),
            seed,
        }
    }

    pub fn list(command: &'static str, n_list: &[usize]) -> Self {
        Self {
            command,
            orders: Orders::List(n_list.to_vec()),
            seed: None,
        }
    }

    pub fn json_header(&self) -> serde_json::Map<String, serde_json::Value> {
        let mut m = serde_json::Map::new();
        m.insert("command".into(), self.command.into());
        m.insert(self.orders.json_key().into(), self.orders.json_value());
        match self.seed {
            Some(seed) => m.insert("seed".into(), seed.into()),
            None => m.insert("seed".into(), serde_json::Value::Null),
        };
        m.insert("version".into(), VERSION.into());
        m.insert("conventions".into(), conventions_json());
        m
    }

    pub fn csv_header(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("# command = {}\n", self.command));
        s.push_str(&format!("# {} = {}\n", self.orders.json_key(), self.orders.text()));
        if let Some(seed) = self.seed {
            s.push_str(&format!("# seed = {seed}\n"));
        }
        s.push_str(&format!("# version = {VERSION}\n"));
        s.push_str(&format!("# shift_convention = {SHIFT_CONVENTION}\n"));
        s.push_str(&format!("# adjoint_convention = {ADJOINT_CONVENTION}\n"));
        s.push_str(&format!(
            "# neighbour_convention = {}\n",
            weyl_core::locality::NEIGHBOUR_CONVENTION
        ));
        s.push_str(&format!("# exp_sign_position = {EXP_SIGN_POSITION}\n"));
        s.push_str(&format!("# exp_sign_momentum = {EXP_SIGN_MOMENTUM}\n"));
        s
    }
}

/// Assemble the final JSON document: header fields first, then the payload
/// fields, in insertion order.
pub fn json_report(meta: &Meta, payload: serde_json::Value) -> String {
    let mut root = meta.json_header();
    if let serde_json::Value::Object(fields) = payload {
        for (k, v) in fields {
            root.insert(k, v);
        }
    }
    let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(root))
        .expect("report serialization");
    s.push('\n');
    s
}

/// Resolve the output target: relative paths land under $WEYL_OUT_DIR when
/// it is set.
pub fn resolve_output(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

/// Write the report to the file (creating parent directories) or stdout.
pub fn emit(output: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => {
            let target = resolve_output(p);
            if let Some(parent) = target.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(target, content)
        }
    }
}
