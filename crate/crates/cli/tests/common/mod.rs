#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl From<Output> for Run {
    fn from(o: Output) -> Self {
        Run {
            code: o.status.code().expect("process exited normally"),
            stdout: String::from_utf8_lossy(&o.stdout).into_owned(),
            stderr: String::from_utf8_lossy(&o.stderr).into_owned(),
        }
    }
}

pub fn command(out: &Path) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_privres"));
    // keep the caller's environment from leaking into flag defaults
    for (k, _) in std::env::vars() {
        if k.starts_with("PRIVRES_") {
            cmd.env_remove(k);
        }
    }
    cmd.arg("--out").arg(out);
    cmd
}

pub fn privres(out: &Path, args: &[&str]) -> Run {
    command(out).args(args).output().expect("binary runs").into()
}

pub fn read(path: impl AsRef<Path>) -> String {
    let path = path.as_ref();
    fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn write(dir: &Path, name: &str, contents: &[u8]) -> PathBuf {
    let p = dir.join(name);
    if let Some(parent) = p.parent() {
        fs::create_dir_all(parent).unwrap();
    }
    fs::write(&p, contents).unwrap();
    p
}

/// Binary PGM whose sample at (x, y) is `f(x, y)`.
pub fn pgm(w: u32, h: u32, f: impl Fn(u32, u32) -> u8) -> Vec<u8> {
    let mut v = format!("P5\n{w} {h}\n255\n").into_bytes();
    for y in 0..h {
        for x in 0..w {
            v.push(f(x, y));
        }
    }
    v
}

pub fn s(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}
