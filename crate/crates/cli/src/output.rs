use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use vamat_core::matrix::UMatrix;
use vamat_core::{Monomial, State};

use crate::CliError;

/// Pretty JSON with a trailing newline; keys keep their declared order.
pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn parts(m: &Monomial) -> String {
    m.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn state_rows(prefix: &str, s: &State, out: &mut String) {
    for (m, c) in s.iter() {
        out.push_str(&format!("{prefix}{},{c}\n", parts(m)));
    }
}

pub fn umatrix_csv(a: &UMatrix) -> String {
    let mut s = String::from("k,l,monomial,coefficient\n");
    for (&(k, l), st) in a.entries() {
        state_rows(&format!("{k},{l},"), st, &mut s);
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct Written {
    pub file: String,
    pub sha256: String,
}

/// Files written by one command, optionally into an output directory.
pub struct Artifacts {
    dir: Option<PathBuf>,
    pub written: Vec<Written>,
}

impl Artifacts {
    pub fn new(dir: Option<PathBuf>) -> Result<Self, CliError> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).map_err(|e| CliError::io(d, e))?;
        }
        Ok(Artifacts { dir, written: Vec::new() })
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<Written, CliError> {
        let w = Written {
            file: name.to_string(),
            sha256: hex::encode(Sha256::digest(contents.as_bytes())),
        };
        if let Some(d) = &self.dir {
            let path = d.join(name);
            fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        }
        self.written.push(w.clone());
        Ok(w)
    }
}

pub fn read_matrix(path: &Path) -> Result<UMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: not a matrix: {e}", path.display())))
}
