#![allow(dead_code)]

pub mod schlafli;
pub mod shape_oracle;

use std::process::{Command, Output};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_orbcheck")
}

pub fn orbcheck(args: &[&str], threads: Option<usize>) -> Output {
    let mut c = Command::new(bin());
    c.args(args);
    match threads {
        Some(n) => c.env("ORBCHECK_THREADS", n.to_string()),
        None => c.env_remove("ORBCHECK_THREADS"),
    };
    c.output().expect("binary runs")
}

/// A scratch path unique to this process and tag.
pub fn scratch(tag: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("orbcheck-{}-{tag}", std::process::id()))
}
