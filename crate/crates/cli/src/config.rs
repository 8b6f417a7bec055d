use std::fs;
use std::path::{Path, PathBuf};

use d4mod_core::lattice::DEFAULT_MAX_SHELL_NORM;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Table,
}

impl std::str::FromStr for Output {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Output::Json),
            "table" => Ok(Output::Table),
            other => Err(format!("unknown output format '{other}' (json or table)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
    pub max_shell_norm: u64,
    pub worker_count: usize,
    pub output: Output,
}

impl Default for Config {
    fn default() -> Self {
        let cache_dir = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .map(|d| d.join("d4mod"));
        Config {
            cache_dir,
            max_shell_norm: DEFAULT_MAX_SHELL_NORM,
            worker_count: std::thread::available_parallelism().map_or(1, |n| n.get()),
            output: Output::Json,
        }
    }
}

impl Config {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        self.apply_text(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
            self.set(key.trim(), value.trim()).map_err(|e| format!("line {}: {e}", n + 1))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let positive = |v: &str| -> Result<u64, String> {
            match v.parse::<u64>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(format!("{key} must be a positive integer, got '{v}'")),
            }
        };
        match key {
            "cache_dir" => self.cache_dir = (!value.is_empty()).then(|| PathBuf::from(value)),
            "max_shell_norm" => self.max_shell_norm = positive(value)?,
            "worker_count" => self.worker_count = positive(value)? as usize,
            "output" => self.output = value.parse()?,
            other => return Err(format!("unknown key '{other}'")),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_lines() {
        let mut c = Config::default();
        c.apply_text("# comment\nmax_shell_norm = 8\nworker_count=3\noutput = table # trailing\ncache_dir = /tmp/x\n")
            .unwrap();
        assert_eq!(c.max_shell_norm, 8);
        assert_eq!(c.worker_count, 3);
        assert_eq!(c.output, Output::Table);
        assert_eq!(c.cache_dir, Some(PathBuf::from("/tmp/x")));
    }

    #[test]
    fn rejects_bad_values() {
        let mut c = Config::default();
        assert!(c.apply_text("max_shell_norm = 0").is_err());
        assert!(c.apply_text("colour = red").is_err());
        assert!(c.apply_text("output = xml").is_err());
        assert!(c.apply_text("just words").is_err());
    }
}
