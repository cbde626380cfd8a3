//! Line-based `key = value` run configuration. Unknown and duplicate keys are
//! rejected with the offending line number; optional keys fall back to
//! documented defaults.

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Family, NoncentralParams, PhysConst, PotentialSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub family: Family,
    pub mass: f64,
    pub hbar: f64,
    /// Kratzer well depth / equilibrium radius (hrs family).
    pub de: Option<f64>,
    pub re: Option<f64>,
    /// Oscillator force constant / ring radius (rso family).
    pub kappa: Option<f64>,
    pub r0: Option<f64>,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub f: f64,
    pub g: f64,
    pub n0_max: u32,
    pub nr_max: u32,
    pub oracle_n: usize,
    pub r_max_override: Option<f64>,
    /// +1 flips the Coulomb coefficient to the repulsive regime (no bound
    /// states); -1 is the attractive default.
    pub kappa1_sign: f64,
    pub tol_eigenvalue_rel: f64,
    pub tol_residual: f64,
}

impl RunConfig {
    pub fn potential_spec(&self) -> Result<PotentialSpec> {
        let nc = NoncentralParams::new(self.b, self.c, self.d, self.f, self.g)?;
        let pc = PhysConst::new(self.mass, self.hbar)?;
        match self.family {
            Family::Hrs => PotentialSpec::new_hrs(self.de.unwrap(), self.re.unwrap(), nc, pc),
            Family::Rso => PotentialSpec::new_rso(self.kappa.unwrap(), self.r0.unwrap(), nc, pc),
        }
    }
}

const KNOWN_KEYS: &[&str] = &[
    "family",
    "mass",
    "hbar",
    "De",
    "re",
    "kappa",
    "r0",
    "B",
    "C",
    "D",
    "F",
    "G",
    "n0_max",
    "nr_max",
    "oracle_N",
    "r_max_override",
    "kappa1_sign",
    "tol_eigenvalue_rel",
    "tol_residual",
];

struct RawEntry {
    line: usize,
    value: String,
}

/// Parse a config file; returns the config plus the raw bytes for hashing.
pub fn parse_config(path: &Path) -> Result<(RunConfig, String)> {
    let text = std::fs::read_to_string(path)?;
    let cfg = parse_config_str(&text)?;
    Ok((cfg, text))
}

pub fn parse_config_str(text: &str) -> Result<RunConfig> {
    let mut entries: Vec<(String, RawEntry)> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config {
                line: line_no,
                msg: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::Config {
                line: line_no,
                msg: format!("unknown key `{key}`"),
            });
        }
        if !seen.insert(key.clone()) {
            return Err(Error::Config {
                line: line_no,
                msg: format!("duplicate key `{key}`"),
            });
        }
        if value.is_empty() {
            return Err(Error::Config {
                line: line_no,
                msg: format!("empty value for `{key}`"),
            });
        }
        entries.push((
            key,
            RawEntry {
                line: line_no,
                value,
            },
        ));
    }

    let find = |key: &str| entries.iter().find(|(k, _)| k == key).map(|(_, e)| e);

    let parse_f64 = |key: &str| -> Result<Option<(f64, usize)>> {
        match find(key) {
            None => Ok(None),
            Some(e) => {
                let v: f64 = e.value.parse().map_err(|_| Error::Config {
                    line: e.line,
                    msg: format!("`{key}` is not a number: `{}`", e.value),
                })?;
                if !v.is_finite() {
                    return Err(Error::Config {
                        line: e.line,
                        msg: format!("`{key}` must be finite"),
                    });
                }
                Ok(Some((v, e.line)))
            }
        }
    };
    let parse_u32 = |key: &str| -> Result<Option<(u32, usize)>> {
        match find(key) {
            None => Ok(None),
            Some(e) => {
                let v: u32 = e.value.parse().map_err(|_| Error::Config {
                    line: e.line,
                    msg: format!("`{key}` is not a nonnegative integer: `{}`", e.value),
                })?;
                Ok(Some((v, e.line)))
            }
        }
    };

    let family_entry = find("family").ok_or_else(|| Error::Config {
        line: text.lines().count() + 1,
        msg: "missing required key `family`".into(),
    })?;
    let family = match family_entry.value.as_str() {
        "hrs" => Family::Hrs,
        "rso" => Family::Rso,
        other => {
            return Err(Error::Config {
                line: family_entry.line,
                msg: format!("family must be `hrs` or `rso`, got `{other}`"),
            })
        }
    };

    let positive = |key: &str, required: bool| -> Result<Option<f64>> {
        match parse_f64(key)? {
            Some((v, line)) => {
                if v <= 0.0 {
                    return Err(Error::Config {
                        line,
                        msg: format!("`{key}` must be positive, got {v}"),
                    });
                }
                Ok(Some(v))
            }
            None if required => Err(Error::Config {
                line: text.lines().count() + 1,
                msg: format!("missing required key `{key}` for family {family}"),
            }),
            None => Ok(None),
        }
    };

    let (de, re, kappa, r0) = match family {
        Family::Hrs => {
            for key in ["kappa", "r0"] {
                if let Some(e) = find(key) {
                    return Err(Error::Config {
                        line: e.line,
                        msg: format!("key `{key}` is not valid for family hrs"),
                    });
                }
            }
            (positive("De", true)?, positive("re", true)?, None, None)
        }
        Family::Rso => {
            for key in ["De", "re"] {
                if let Some(e) = find(key) {
                    return Err(Error::Config {
                        line: e.line,
                        msg: format!("key `{key}` is not valid for family rso"),
                    });
                }
            }
            (None, None, positive("kappa", true)?, positive("r0", true)?)
        }
    };

    let nonneg = |key: &str| -> Result<f64> {
        match parse_f64(key)? {
            Some((v, line)) => {
                if v < 0.0 {
                    return Err(Error::Config {
                        line,
                        msg: format!("`{key}` must be >= 0, got {v}"),
                    });
                }
                Ok(v)
            }
            None => Ok(0.0),
        }
    };

    let mass = positive("mass", false)?.unwrap_or(1.0);
    let hbar = positive("hbar", false)?.unwrap_or(1.0);

    let kappa1_sign = match parse_f64("kappa1_sign")? {
        None => -1.0,
        Some((v, line)) => {
            if v != 1.0 && v != -1.0 {
                return Err(Error::Config {
                    line,
                    msg: format!("`kappa1_sign` must be -1 or 1, got {v}"),
                });
            }
            v
        }
    };

    let oracle_n = match parse_u32("oracle_N")? {
        None => 4000,
        Some((v, line)) => {
            if v < 64 {
                return Err(Error::Config {
                    line,
                    msg: format!("`oracle_N` must be at least 64, got {v}"),
                });
            }
            v as usize
        }
    };

    let tol = |key: &str, default: f64| -> Result<f64> {
        match parse_f64(key)? {
            Some((v, line)) => {
                if v <= 0.0 {
                    return Err(Error::Config {
                        line,
                        msg: format!("`{key}` must be positive, got {v}"),
                    });
                }
                Ok(v)
            }
            None => Ok(default),
        }
    };

    Ok(RunConfig {
        family,
        mass,
        hbar,
        de,
        re,
        kappa,
        r0,
        b: nonneg("B")?,
        c: nonneg("C")?,
        d: nonneg("D")?,
        f: nonneg("F")?,
        g: nonneg("G")?,
        n0_max: parse_u32("n0_max")?.map_or(0, |(v, _)| v),
        nr_max: parse_u32("nr_max")?.map_or(0, |(v, _)| v),
        oracle_n,
        r_max_override: positive("r_max_override", false)?,
        kappa1_sign,
        tol_eigenvalue_rel: tol("tol_eigenvalue_rel", 1e-4)?,
        tol_residual: tol("tol_residual", 1e-7)?,
    })
}
