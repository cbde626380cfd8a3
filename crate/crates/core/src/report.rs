//! The three-way verification pipeline (printed formulas vs NU engine vs
//! finite-difference oracle), spectrum tabulation, and deterministic CSV /
//! key-value report rendering.

use sha2::{Digest, Sha256};

use crate::angular::{self, angular_residual, angular_wavefunction};
use crate::assembly::{eval_cartesian_grid, eval_polar_grid, GridFunction};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::model::{
    separation_data, BarredParams, CentralPotential, Family, KratzerParams, OscParams, PhysConst,
    PotentialSpec, RadialSystem, SeparationData,
};
use crate::oracle;
use crate::radial::{
    self, hrs_r_max, hrs_wavefunction, radial_residual, rso_r_max, rso_wavefunction,
};

/// 17 significant digits, locale-free; every real number in CSV and report
/// output goes through here.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// The printed closed forms, injectable so tests can corrupt them and prove
/// they never feed the engine or oracle paths.
pub struct PaperFormulas {
    pub msq: fn(&BarredParams, u32) -> Result<f64>,
    pub hrs_energy: fn(&KratzerParams, f64, u32, &PhysConst) -> Result<f64>,
    pub rso_energy: fn(&OscParams, f64, u32, &PhysConst) -> Result<f64>,
}

impl Default for PaperFormulas {
    fn default() -> Self {
        PaperFormulas {
            msq: angular::m_squared_paper,
            hrs_energy: radial::hrs_energy_paper,
            rso_energy: radial::rso_energy_paper,
        }
    }
}

/// Separation data with the configured Coulomb-sign override applied.
fn separation_with_sign(spec: &PotentialSpec, msq: f64, kappa1_sign: f64) -> SeparationData {
    let mut sd = separation_data(spec, msq);
    if kappa1_sign > 0.0 {
        sd.lambda0 = sd.lambda0.abs();
    }
    sd
}

fn paper_energy(formulas: &PaperFormulas, spec: &PotentialSpec, msq: f64, nr: u32) -> Result<f64> {
    match spec.central {
        CentralPotential::Kratzer(kp) => (formulas.hrs_energy)(&kp, msq, nr, &spec.consts),
        CentralPotential::Oscillator(op) => (formulas.rso_energy)(&op, msq, nr, &spec.consts),
    }
}

fn derived_energy(
    spec: &PotentialSpec,
    sd: &SeparationData,
    nr: u32,
) -> Result<radial::RadialSolution> {
    match spec.family() {
        Family::Hrs => radial::hrs_energy_derived(sd, nr, &spec.consts),
        Family::Rso => radial::rso_energy_derived(sd, nr, &spec.consts),
    }
}

// --- spectrum command ----------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct SpectrumRow {
    pub n0: u32,
    pub nr: u32,
    pub msq_paper: f64,
    pub msq_nu: f64,
    pub e_paper: f64,
    pub e_derived: f64,
}

/// Rows sorted by (n0, nr). The printed-energy column is evaluated at the
/// printed M^2, the derived column at the engine M^2.
pub fn spectrum_rows(cfg: &RunConfig) -> Result<Vec<SpectrumRow>> {
    let formulas = PaperFormulas::default();
    let spec = cfg.potential_spec()?;
    let bp = spec.barred();
    let mut rows = Vec::new();
    for n0 in 0..=cfg.n0_max {
        let msq_paper = (formulas.msq)(&bp, n0)?;
        let msq_nu = angular::m_squared_nu(&bp, n0)?[0].msq;
        let sd = separation_with_sign(&spec, msq_nu, cfg.kappa1_sign);
        for nr in 0..=cfg.nr_max {
            rows.push(SpectrumRow {
                n0,
                nr,
                msq_paper,
                msq_nu,
                e_paper: paper_energy(&formulas, &spec, msq_paper, nr)?,
                e_derived: derived_energy(&spec, &sd, nr)?.energy,
            });
        }
    }
    Ok(rows)
}

pub fn render_spectrum_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::from("n0,nr,Msq_paper,Msq_nu,E_paper,E_derived\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n0,
            r.nr,
            fmt_real(r.msq_paper),
            fmt_real(r.msq_nu),
            fmt_real(r.e_paper),
            fmt_real(r.e_derived)
        ));
    }
    out
}

// --- wavefunction command ------------------------------------------------

/// Assemble the requested state and sample it on a polar or cartesian grid.
pub fn wavefunction_grid(
    cfg: &RunConfig,
    n0: u32,
    nr: u32,
    grid: (usize, usize),
    cartesian: bool,
) -> Result<GridFunction> {
    let not_found = |e: Error| Error::StateNotFound {
        n0,
        nr,
        msg: e.to_string(),
    };
    let spec = cfg.potential_spec()?;
    let bp = spec.barred();
    let ang = angular::m_squared_nu(&bp, n0).map_err(not_found)?[0];
    let sd = separation_with_sign(&spec, ang.msq, cfg.kappa1_sign);
    let rad = derived_energy(&spec, &sd, nr).map_err(not_found)?;
    let state = crate::assembly::assemble(&spec, &ang, &rad).map_err(not_found)?;

    let (na, nb) = grid;
    if na == 0 || nb == 0 {
        return Err(Error::InvalidParameter(
            "grid dimensions must be positive".into(),
        ));
    }
    let r_span = cfg
        .r_max_override
        .unwrap_or_else(|| state.radial_wf.support_radius());
    if cartesian {
        let half = r_span / std::f64::consts::SQRT_2;
        let axis = |count: usize| -> Vec<f64> {
            if count == 1 {
                vec![0.0]
            } else {
                (0..count)
                    .map(|i| -half + 2.0 * half * i as f64 / (count - 1) as f64)
                    .collect()
            }
        };
        Ok(eval_cartesian_grid(&state, &axis(na), &axis(nb)))
    } else {
        let rs: Vec<f64> = (0..na)
            .map(|i| (i as f64 + 1.0) * r_span / na as f64)
            .collect();
        let phis: Vec<f64> = (0..nb)
            .map(|j| 2.0 * std::f64::consts::PI * j as f64 / nb as f64)
            .collect();
        Ok(eval_polar_grid(&state, &rs, &phis))
    }
}

pub fn render_grid_csv(grid: &GridFunction) -> String {
    let header = match grid.meta.mode {
        crate::assembly::GridMode::Polar => "r,phi,psi",
        crate::assembly::GridMode::Cartesian => "x,y,psi",
    };
    let mut out = String::from(header);
    out.push('\n');
    let nb = grid.axis_b.len();
    for (i, &a) in grid.axis_a.iter().enumerate() {
        for (j, &b) in grid.axis_b.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_real(a),
                fmt_real(b),
                fmt_real(grid.values[i * nb + j])
            ));
        }
    }
    out
}

// --- verify command --------------------------------------------------------

/// Everything recorded for one (n0, nr) cell of the verification table.
#[derive(Debug, Clone)]
pub struct StateEntry {
    pub n0: u32,
    pub nr: u32,
    pub msq_paper: Option<f64>,
    pub msq_nu: f64,
    pub msq_oracle: f64,
    pub residual_angular: f64,
    pub e_paper: Option<f64>,
    /// `None` means the derived route reports no bound state.
    pub e_derived: Option<f64>,
    pub e_oracle: Option<f64>,
    /// Oracle count of box states below the dissociation threshold, recorded
    /// when the derived route reports no bound state.
    pub oracle_bound_count: Option<usize>,
    pub residual_radial: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub config: RunConfig,
    pub config_sha256: String,
    pub states: Vec<StateEntry>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.pass
    }

    /// Indented `key: value` tree with a stable key order; byte-identical
    /// across runs on the same config.
    pub fn render(&self) -> String {
        let cfg = &self.config;
        let mut s = String::new();
        s.push_str("nubound-verify:\n");
        s.push_str(&format!("  config_sha256: {}\n", self.config_sha256));
        s.push_str(&format!("  family: {}\n", cfg.family));
        s.push_str(&format!("  mass: {}\n", fmt_real(cfg.mass)));
        s.push_str(&format!("  hbar: {}\n", fmt_real(cfg.hbar)));
        match cfg.family {
            Family::Hrs => {
                s.push_str(&format!("  De: {}\n", fmt_real(cfg.de.unwrap())));
                s.push_str(&format!("  re: {}\n", fmt_real(cfg.re.unwrap())));
            }
            Family::Rso => {
                s.push_str(&format!("  kappa: {}\n", fmt_real(cfg.kappa.unwrap())));
                s.push_str(&format!("  r0: {}\n", fmt_real(cfg.r0.unwrap())));
            }
        }
        for (name, v) in [
            ("B", cfg.b),
            ("C", cfg.c),
            ("D", cfg.d),
            ("F", cfg.f),
            ("G", cfg.g),
        ] {
            s.push_str(&format!("  {name}: {}\n", fmt_real(v)));
        }
        s.push_str(&format!(
            "  kappa1_sign: {}\n",
            if cfg.kappa1_sign > 0.0 { 1 } else { -1 }
        ));
        s.push_str(&format!("  n0_max: {}\n", cfg.n0_max));
        s.push_str(&format!("  nr_max: {}\n", cfg.nr_max));
        s.push_str(&format!("  oracle_N: {}\n", cfg.oracle_n));
        s.push_str("  tolerances:\n");
        s.push_str(&format!(
            "    eigenvalue_rel: {}\n",
            fmt_real(cfg.tol_eigenvalue_rel)
        ));
        s.push_str(&format!("    residual: {}\n", fmt_real(cfg.tol_residual)));
        s.push_str("  states:\n");
        let opt = |v: Option<f64>, unbound_tag: &str| match v {
            Some(x) => fmt_real(x),
            None => unbound_tag.to_string(),
        };
        for e in &self.states {
            s.push_str(&format!("    state n0={} nr={}:\n", e.n0, e.nr));
            s.push_str(&format!("      msq_paper: {}\n", opt(e.msq_paper, "error")));
            s.push_str(&format!("      msq_nu: {}\n", fmt_real(e.msq_nu)));
            s.push_str(&format!("      msq_oracle: {}\n", fmt_real(e.msq_oracle)));
            if let Some(p) = e.msq_paper {
                s.push_str(&format!(
                    "      delta_msq_paper_nu: {}\n",
                    fmt_real((p - e.msq_nu).abs())
                ));
            }
            s.push_str(&format!(
                "      delta_msq_nu_oracle: {}\n",
                fmt_real((e.msq_nu - e.msq_oracle).abs())
            ));
            s.push_str(&format!(
                "      residual_angular: {}\n",
                fmt_real(e.residual_angular)
            ));
            s.push_str(&format!("      e_paper: {}\n", opt(e.e_paper, "error")));
            s.push_str(&format!(
                "      e_derived: {}\n",
                opt(e.e_derived, "no-bound-state")
            ));
            s.push_str(&format!(
                "      e_oracle: {}\n",
                opt(e.e_oracle, "none-below-threshold")
            ));
            if let (Some(p), Some(d)) = (e.e_paper, e.e_derived) {
                s.push_str(&format!(
                    "      delta_e_paper_derived: {}\n",
                    fmt_real((p - d).abs())
                ));
            }
            if let (Some(d), Some(o)) = (e.e_derived, e.e_oracle) {
                s.push_str(&format!(
                    "      delta_e_derived_oracle: {}\n",
                    fmt_real((d - o).abs())
                ));
            }
            if let Some(count) = e.oracle_bound_count {
                s.push_str(&format!("      oracle_states_below_threshold: {count}\n"));
            }
            if let Some(res) = e.residual_radial {
                s.push_str(&format!("      residual_radial: {}\n", fmt_real(res)));
            }
            s.push_str(&format!(
                "      status: {}\n",
                if e.pass { "pass" } else { "fail" }
            ));
        }
        s.push_str(&format!(
            "  result: {}\n",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        s
    }
}

pub fn config_digest(raw: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(raw.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Run the full three-way verification with the default printed formulas.
pub fn run_verify(cfg: &RunConfig, raw_config: &str) -> Result<VerifyReport> {
    run_verify_with(cfg, raw_config, &PaperFormulas::default())
}

/// Verification core. PASS depends only on engine/derived vs oracle values
/// and residuals; the printed-formula columns are report content.
pub fn run_verify_with(
    cfg: &RunConfig,
    raw_config: &str,
    formulas: &PaperFormulas,
) -> Result<VerifyReport> {
    let spec = cfg.potential_spec()?;
    let bp = spec.barred();
    let system = match spec.family() {
        Family::Hrs => RadialSystem::Hrs,
        Family::Rso => RadialSystem::Rso,
    };
    let scale = spec.consts.two_m_over_hbar2();
    let count_n0 = cfg.n0_max as usize + 1;
    let msq_oracle = oracle::angular_oracle(&bp, count_n0, cfg.oracle_n)?;

    let mut states = Vec::new();
    let mut all_pass = true;
    for n0 in 0..=cfg.n0_max {
        let msq_paper = (formulas.msq)(&bp, n0).ok();
        let ang = angular::m_squared_nu(&bp, n0)?[0];
        let wf = angular_wavefunction(&ang)?;
        let res_ang = angular_residual(&bp, ang.msq, &wf);
        let msq_orc = msq_oracle[n0 as usize];

        let sd = separation_with_sign(&spec, ang.msq, cfg.kappa1_sign);
        let offset = match system {
            RadialSystem::Hrs => sd.kappa0,
            RadialSystem::Rso => sd.v0,
        };

        // Solve the whole radial ladder for this angular state.
        let derived: Vec<Result<radial::RadialSolution>> = (0..=cfg.nr_max)
            .map(|nr| derived_energy(&spec, &sd, nr))
            .collect();
        let any_bound = derived.iter().any(|d| d.is_ok());

        let (etilde_oracle, bound_count) = if any_bound {
            let r_box = cfg.r_max_override.map(Ok).unwrap_or_else(|| match system {
                RadialSystem::Hrs => hrs_r_max(&sd, cfg.nr_max, &spec.consts),
                RadialSystem::Rso => rso_r_max(&sd, cfg.nr_max),
            })?;
            let n_rad = (cfg.oracle_n)
                .max((r_box * 50.0).ceil() as usize)
                .min(60_000);
            let vals = oracle::radial_oracle(system, &sd, cfg.nr_max as usize + 1, n_rad, r_box)?;
            (Some(vals), None)
        } else {
            // Confirm absence: count oracle box states below the threshold.
            let r_box = cfg.r_max_override.unwrap_or(200.0);
            let below =
                oracle::radial_count_below(system, &sd, cfg.oracle_n.max(2000), r_box, 0.0)?;
            (None, Some(below))
        };

        for nr in 0..=cfg.nr_max {
            let mut entry = StateEntry {
                n0,
                nr,
                msq_paper,
                msq_nu: ang.msq,
                msq_oracle: msq_orc,
                residual_angular: res_ang,
                e_paper: msq_paper.and_then(|mp| paper_energy(formulas, &spec, mp, nr).ok()),
                e_derived: None,
                e_oracle: None,
                oracle_bound_count: bound_count,
                residual_radial: None,
                pass: false,
            };

            let angular_ok = (ang.msq - msq_orc).abs()
                <= cfg.tol_eigenvalue_rel * (1.0 + ang.msq.abs())
                && res_ang <= cfg.tol_residual;

            match &derived[nr as usize] {
                Ok(sol) => {
                    entry.e_derived = Some(sol.energy);
                    let etilde_orc = etilde_oracle.as_ref().unwrap()[nr as usize];
                    let e_orc = offset + etilde_orc / scale;
                    entry.e_oracle = Some(e_orc);
                    let u = match system {
                        RadialSystem::Hrs => hrs_wavefunction(&sd, nr, &spec.consts)?,
                        RadialSystem::Rso => rso_wavefunction(&sd, nr, &spec.consts)?,
                    };
                    let res_rad = radial_residual(system, &sd, sol.etilde, &u);
                    entry.residual_radial = Some(res_rad);
                    entry.pass = angular_ok
                        && (sol.energy - e_orc).abs()
                            <= cfg.tol_eigenvalue_rel * (1.0 + sol.energy.abs())
                        && res_rad <= cfg.tol_residual;
                }
                Err(Error::NoBoundState(_)) => {
                    // Agreement on absence is a pass.
                    entry.pass = angular_ok && bound_count == Some(0);
                }
                Err(e) => {
                    return Err(Error::InvalidParameter(format!(
                        "radial solve failed for n0={n0} nr={nr}: {e}"
                    )))
                }
            }
            all_pass &= entry.pass;
            states.push(entry);
        }
    }

    Ok(VerifyReport {
        config: cfg.clone(),
        config_sha256: config_digest(raw_config),
        states,
        pass: all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config_str;

    const ZERO_HRS: &str =
        "family = hrs\nDe = 4\nre = 1\nn0_max = 0\nnr_max = 0\noracle_N = 1200\n";

    #[test]
    fn spectrum_rows_zero_noncentral() {
        let cfg = parse_config_str(ZERO_HRS).unwrap();
        let rows = spectrum_rows(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(r.msq_paper, 3.0);
        assert!((r.msq_nu - 4.0).abs() < 1e-9);
        // Printed column at its own M^2 (printed compact form), derived
        // column from the standard bracket at the engine M^2.
        let bracket_p = 0.5 + 0.5 * (8.0_f64 + 3.0).sqrt();
        let e_paper = 4.0 - 32.0 / (bracket_p * bracket_p);
        assert!((r.e_paper - e_paper).abs() < 1e-12);
        let lambda = 8.0 + r.msq_nu - 0.25;
        let bracket_d = 0.5 + 0.5 * (1.0 + 4.0 * lambda).sqrt();
        let e_derived = 4.0 - 0.5 * 64.0 / (bracket_d * bracket_d);
        assert!(
            (r.e_derived - e_derived).abs() < 1e-12,
            "{} vs {e_derived}",
            r.e_derived
        );
    }

    #[test]
    fn csv_fixed_header_and_digits() {
        let cfg = parse_config_str(ZERO_HRS).unwrap();
        let csv = render_spectrum_csv(&spectrum_rows(&cfg).unwrap());
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n0,nr,Msq_paper,Msq_nu,E_paper,E_derived"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("0,0,3.0000000000000000e0,"), "{row}");
    }

    #[test]
    fn verify_zero_noncentral_passes_and_reports_gap() {
        let cfg = parse_config_str(ZERO_HRS).unwrap();
        let report = run_verify(&cfg, ZERO_HRS).unwrap();
        assert!(report.passed());
        let e = &report.states[0];
        assert_eq!(e.msq_paper, Some(3.0));
        assert!((e.msq_nu - 4.0).abs() < 1e-9);
        assert!(((e.msq_paper.unwrap() - e.msq_nu).abs() - 1.0).abs() < 1e-9);
        let text = report.render();
        assert!(text.contains("delta_msq_paper_nu: "), "{text}");
        assert!(text.contains("delta_e_paper_derived: "), "{text}");
        assert!(text.contains("result: PASS"));
    }

    #[test]
    fn verify_is_deterministic() {
        let cfg = parse_config_str(ZERO_HRS).unwrap();
        let a = run_verify(&cfg, ZERO_HRS).unwrap().render();
        let b = run_verify(&cfg, ZERO_HRS).unwrap().render();
        assert_eq!(a, b);
    }

    #[test]
    fn corrupted_printed_formulas_do_not_change_pass() {
        let cfg = parse_config_str(ZERO_HRS).unwrap();
        let clean = run_verify(&cfg, ZERO_HRS).unwrap();
        let corrupted = PaperFormulas {
            msq: |_, _| Ok(999.0),
            hrs_energy: |_, _, _, _| Ok(-12345.0),
            rso_energy: |_, _, _, _| Ok(12345.0),
        };
        let tainted = run_verify_with(&cfg, ZERO_HRS, &corrupted).unwrap();
        assert_eq!(clean.passed(), tainted.passed());
        for (a, b) in clean.states.iter().zip(&tainted.states) {
            assert_eq!(a.pass, b.pass);
            assert_eq!(a.msq_nu, b.msq_nu);
            assert_eq!(a.e_derived, b.e_derived);
        }
        assert_eq!(tainted.states[0].msq_paper, Some(999.0));
    }

    #[test]
    fn repulsive_override_agrees_on_absence() {
        let text = "family = hrs\nDe = 4\nre = 1\nkappa1_sign = 1\noracle_N = 1200\n";
        let cfg = parse_config_str(text).unwrap();
        let report = run_verify(&cfg, text).unwrap();
        assert!(report.passed());
        let e = &report.states[0];
        assert_eq!(e.e_derived, None);
        assert_eq!(e.oracle_bound_count, Some(0));
        assert!(report.render().contains("no-bound-state"));
    }

    #[test]
    fn wavefunction_grid_shapes() {
        let cfg = parse_config_str(ZERO_HRS).unwrap();
        let g = wavefunction_grid(&cfg, 0, 0, (3, 3), false).unwrap();
        let csv = render_grid_csv(&g);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], "r,phi,psi");
        // phi = 0 rows sit on the axis, where admitted states vanish.
        let first: Vec<&str> = lines[1].split(',').collect();
        let psi: f64 = first[2].parse().unwrap();
        assert!(psi.abs() < 1e-12);
    }
}
