//! Browser bindings for the nubound solver: probability-density maps,
//! spectrum tables, and angular-mode profiles for the single static demo
//! page in `www/`.

use wasm_bindgen::prelude::*;

use nubound::angular::{angular_wavefunction, m_squared_nu, m_squared_paper};
use nubound::assembly::assemble;
use nubound::config::RunConfig;
use nubound::model::{separation_data, Family, NoncentralParams, PhysConst, PotentialSpec};
use nubound::oracle::angular_oracle;
use nubound::radial::{hrs_energy_derived, rso_energy_derived};
use nubound::report::{render_spectrum_csv, spectrum_rows};

fn err_to_js(e: nubound::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

#[allow(clippy::too_many_arguments)]
fn build_spec(
    family: &str,
    p1: f64,
    p2: f64,
    b: f64,
    c: f64,
    d: f64,
    f: f64,
    g: f64,
) -> Result<PotentialSpec, JsValue> {
    let nc = NoncentralParams::new(b, c, d, f, g).map_err(err_to_js)?;
    let pc = PhysConst::default();
    match family {
        "hrs" => PotentialSpec::new_hrs(p1, p2, nc, pc).map_err(err_to_js),
        "rso" => PotentialSpec::new_rso(p1, p2, nc, pc).map_err(err_to_js),
        other => Err(JsValue::from_str(&format!("unknown family `{other}`"))),
    }
}

/// Probability density |Psi(x, y)|^2 sampled on a size x size cartesian grid
/// spanning [-half_width, half_width]^2, row-major with y varying fastest.
#[wasm_bindgen]
pub struct DensityMap {
    size: usize,
    half_width: f64,
    msq: f64,
    energy: f64,
    values: Vec<f64>,
}

#[wasm_bindgen]
impl DensityMap {
    #[wasm_bindgen(getter)]
    pub fn size(&self) -> usize {
        self.size
    }

    #[wasm_bindgen(getter)]
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    #[wasm_bindgen(getter)]
    pub fn msq(&self) -> f64 {
        self.msq
    }

    #[wasm_bindgen(getter)]
    pub fn energy(&self) -> f64 {
        self.energy
    }

    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }
}

/// Assemble the (n0, nr) bound state and sample its probability density.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn density_map(
    family: &str,
    p1: f64,
    p2: f64,
    b: f64,
    c: f64,
    d: f64,
    f: f64,
    g: f64,
    n0: u32,
    nr: u32,
    size: usize,
) -> Result<DensityMap, JsValue> {
    let size = size.clamp(16, 256);
    let spec = build_spec(family, p1, p2, b, c, d, f, g)?;
    let ang = m_squared_nu(&spec.barred(), n0).map_err(err_to_js)?[0];
    let sd = separation_data(&spec, ang.msq);
    let rad = match spec.family() {
        Family::Hrs => hrs_energy_derived(&sd, nr, &spec.consts),
        Family::Rso => rso_energy_derived(&sd, nr, &spec.consts),
    }
    .map_err(err_to_js)?;
    let state = assemble(&spec, &ang, &rad).map_err(err_to_js)?;

    // Frame the classically relevant region rather than the far tail.
    let half_width = state.radial_wf.support_radius();
    let mut values = Vec::with_capacity(size * size);
    for i in 0..size {
        let x = -half_width + 2.0 * half_width * i as f64 / (size - 1) as f64;
        for j in 0..size {
            let y = -half_width + 2.0 * half_width * j as f64 / (size - 1) as f64;
            values.push(state.psi_cartesian(x, y).powi(2));
        }
    }
    Ok(DensityMap {
        size,
        half_width,
        msq: ang.msq,
        energy: rad.energy,
        values,
    })
}

/// Spectrum table as CSV (same columns as the CLI `spectrum` subcommand).
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn spectrum_csv(
    family: &str,
    p1: f64,
    p2: f64,
    b: f64,
    c: f64,
    d: f64,
    f: f64,
    g: f64,
    n0_max: u32,
    nr_max: u32,
) -> Result<String, JsValue> {
    // Validate the physical parameters up front for a friendly error.
    build_spec(family, p1, p2, b, c, d, f, g)?;
    let cfg = RunConfig {
        family: if family == "hrs" {
            Family::Hrs
        } else {
            Family::Rso
        },
        mass: 1.0,
        hbar: 1.0,
        de: (family == "hrs").then_some(p1),
        re: (family == "hrs").then_some(p2),
        kappa: (family == "rso").then_some(p1),
        r0: (family == "rso").then_some(p2),
        b,
        c,
        d,
        f,
        g,
        n0_max: n0_max.min(4),
        nr_max: nr_max.min(4),
        oracle_n: 1000,
        r_max_override: None,
        kappa1_sign: -1.0,
        tol_eigenvalue_rel: 1e-4,
        tol_residual: 1e-7,
    };
    let rows = spectrum_rows(&cfg).map_err(err_to_js)?;
    Ok(render_spectrum_csv(&rows))
}

/// Angular mode profile Phi(phi) over (0, pi/2) plus the three M^2 routes,
/// serialized as CSV: a `#`-prefixed metadata line, then `phi,value` rows.
#[wasm_bindgen]
pub fn angular_mode_csv(
    b: f64,
    c: f64,
    d: f64,
    f: f64,
    g: f64,
    n0: u32,
    samples: usize,
) -> Result<String, JsValue> {
    let samples = samples.clamp(16, 2000);
    let nc = NoncentralParams::new(b, c, d, f, g).map_err(err_to_js)?;
    let bp = nubound::model::barred_params(&nc, &PhysConst::default());
    let sol = m_squared_nu(&bp, n0).map_err(err_to_js)?[0];
    let wf = angular_wavefunction(&sol).map_err(err_to_js)?;
    let paper = m_squared_paper(&bp, n0).map_err(err_to_js)?;
    let oracle = angular_oracle(&bp, n0 as usize + 1, 800).map_err(err_to_js)?[n0 as usize];

    let mut out = format!(
        "# msq_nu={} msq_paper={} msq_oracle={}\n",
        sol.msq, paper, oracle
    );
    out.push_str("phi,value\n");
    let half_pi = std::f64::consts::FRAC_PI_2;
    for i in 0..=samples {
        let phi = half_pi * i as f64 / samples as f64;
        out.push_str(&format!("{},{}\n", phi, wf.value(phi)));
    }
    Ok(out)
}
