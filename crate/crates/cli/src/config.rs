//! Run configuration: defaults, then `./dds.conf`, then `$DDS_CONFIG`,
//! then command-line flags.

use std::path::{Path, PathBuf};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Precision {
    /// Parallel chunked summation.
    Fast,
    /// Sequential compensated summation.
    #[default]
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunConfig {
    pub precision: Precision,
    pub format: Format,
    pub out_path: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub pi_digits_path: Option<PathBuf>,
    pub no_cache: bool,
}

/// Flag values; `None` leaves the configured value alone.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub precision: Option<Precision>,
    pub format: Option<Format>,
    pub out_path: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub pi_digits_path: Option<PathBuf>,
    pub no_cache: bool,
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T, String> {
    T::from_str(value, true).map_err(|_| format!("invalid value {value:?} for {key}"))
}

impl RunConfig {
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "precision" => self.precision = parse_enum(key, value)?,
            "format" => self.format = parse_enum(key, value)?,
            "out_path" => self.out_path = Some(PathBuf::from(value)),
            "cache_dir" => self.cache_dir = Some(PathBuf::from(value)),
            "pi_digits_path" => self.pi_digits_path = Some(PathBuf::from(value)),
            "no_cache" => {
                self.no_cache = match value {
                    "true" | "yes" | "1" => true,
                    "false" | "no" | "0" => false,
                    _ => return Err(format!("invalid value {value:?} for no_cache")),
                }
            }
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str, origin: &str) -> Result<(), String> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("{origin}:{}: expected `key = value`", i + 1))?;
            self.set(k.trim(), v.trim()).map_err(|e| format!("{origin}:{}: {e}", i + 1))?;
        }
        Ok(())
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.apply_text(&text, &path.display().to_string())
    }

    pub fn apply(&mut self, o: Overrides) {
        if let Some(p) = o.precision {
            self.precision = p;
        }
        if let Some(f) = o.format {
            self.format = f;
        }
        if o.out_path.is_some() {
            self.out_path = o.out_path;
        }
        if o.cache_dir.is_some() {
            self.cache_dir = o.cache_dir;
        }
        if o.pi_digits_path.is_some() {
            self.pi_digits_path = o.pi_digits_path;
        }
        self.no_cache |= o.no_cache;
    }

    pub fn load(overrides: Overrides) -> Result<Self, String> {
        let mut cfg = RunConfig::default();
        let local = Path::new("dds.conf");
        if local.is_file() {
            cfg.apply_file(local)?;
        }
        if let Some(p) = std::env::var_os("DDS_CONFIG") {
            cfg.apply_file(Path::new(&p))?;
        }
        cfg.apply(overrides);
        Ok(cfg)
    }

    /// Digit-string file: flag or config, then `$DDS_PI_DIGITS`.
    pub fn pi_digits_source(&self) -> Option<PathBuf> {
        self.pi_digits_path.clone().or_else(|| std::env::var_os("DDS_PI_DIGITS").map(PathBuf::from))
    }

    pub fn cache_root(&self) -> Option<PathBuf> {
        if self.no_cache {
            return None;
        }
        if let Some(d) = &self.cache_dir {
            return Some(d.clone());
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(std::env::temp_dir);
        Some(base.join("dds"))
    }
}
