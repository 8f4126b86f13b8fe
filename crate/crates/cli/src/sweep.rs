use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use spin_manifold::dynamics::{brachistochrone, geodesic_distance, speed, BrachistochroneMode};
use spin_manifold::entanglement::{
    curvature_from_concurrence, distance_and_time_from_concurrence, iconcurrence_exact,
    iconcurrence_short_time, phase_from_concurrence, speed_from_concurrence, ConcurrenceContext,
    DEFAULT_XI_PRIME_MAX,
};
use spin_manifold::geometry::{
    euler_characteristic, gaussian_curvature, metric_closed_form, BULK_QUAD_TOL, CURVATURE_FD_STEP,
    DEFAULT_EPSILON, METRIC_FD_STEP,
};
use spin_manifold::phases::{aa_phase, geometric_phase, unwrap_phases, ORTHOGONALITY_THRESHOLD};
use spin_manifold::state::{evolution_period_sign, LAYOUT};
use spin_manifold::{Error, ParamPoint, SpinValue, SystemConfig};

use crate::error::{CliError, CliResult};
use crate::grid::Grid;
use crate::output::{Cell, OutputFormat, SweepResult};
use crate::TOOL_VERSION;

/// Spin values swept by the figure presets, as `2s`.
pub const FIGURE_TWICE_SPINS: [u32; 4] = [1, 2, 3, 4];

/// Default number of concurrence samples in a figure preset. With 210
/// intervals the grid contains `C′` exactly for every preset spin.
pub const FIGURE_C_COUNT: usize = 211;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Metric,
    Curvature,
    Euler,
    Phase,
    AaPhase,
    Speed,
    Distance,
    Brachistochrone,
    Concurrence,
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Axis {
    Theta,
    Phi,
    Xi,
}

impl Quantity {
    pub const ALL: [Quantity; 14] = [
        Quantity::Metric,
        Quantity::Curvature,
        Quantity::Euler,
        Quantity::Phase,
        Quantity::AaPhase,
        Quantity::Speed,
        Quantity::Distance,
        Quantity::Brachistochrone,
        Quantity::Concurrence,
        Quantity::Fig1,
        Quantity::Fig2,
        Quantity::Fig3,
        Quantity::Fig4,
        Quantity::Fig5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Metric => "metric",
            Quantity::Curvature => "curvature",
            Quantity::Euler => "euler",
            Quantity::Phase => "phase",
            Quantity::AaPhase => "aa_phase",
            Quantity::Speed => "speed",
            Quantity::Distance => "distance",
            Quantity::Brachistochrone => "brachistochrone",
            Quantity::Concurrence => "concurrence",
            Quantity::Fig1 => "fig1",
            Quantity::Fig2 => "fig2",
            Quantity::Fig3 => "fig3",
            Quantity::Fig4 => "fig4",
            Quantity::Fig5 => "fig5",
        }
    }

    pub fn is_figure(self) -> bool {
        matches!(
            self,
            Quantity::Fig1 | Quantity::Fig2 | Quantity::Fig3 | Quantity::Fig4 | Quantity::Fig5
        )
    }

    fn axes(self) -> &'static [Axis] {
        match self {
            Quantity::Metric => &[Axis::Theta, Axis::Phi, Axis::Xi],
            Quantity::Curvature | Quantity::AaPhase | Quantity::Speed => &[Axis::Theta],
            Quantity::Phase | Quantity::Distance | Quantity::Concurrence => {
                &[Axis::Theta, Axis::Xi]
            }
            Quantity::Brachistochrone => &[Axis::Xi],
            _ => &[],
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            Quantity::Metric => &["g_tt", "g_pp", "g_xx", "g_tp", "g_tx", "g_px"],
            Quantity::Curvature => &["curvature"],
            Quantity::Phase => &["global_phase", "dynamical_phase", "geometric_phase"],
            Quantity::AaPhase => &["xi_max", "aa_phase_raw", "aa_phase_reduced", "cyclic"],
            Quantity::Speed => &["speed"],
            Quantity::Distance => &["distance"],
            Quantity::Brachistochrone => {
                &["theta_max", "v_max", "s_min", "tau", "ratio_tau_over_t"]
            }
            Quantity::Concurrence => &["concurrence_exact", "concurrence_short_time"],
            Quantity::Euler => &[
                "bulk_integral",
                "bulk_limit",
                "defect_sum",
                "euler_characteristic",
                "quadrature_intervals",
                "quadrature_converged",
            ],
            Quantity::Fig1 => &["curvature"],
            Quantity::Fig2 => &["geometric_phase"],
            Quantity::Fig3 => &["speed"],
            Quantity::Fig4 => &["distance"],
            Quantity::Fig5 => &["optimal_time"],
        }
    }

    /// Flags a figure preset fixes; user values for them are overridden.
    pub fn preset_overrides(self) -> &'static [&'static str] {
        match self {
            Quantity::Fig1 | Quantity::Fig2 => &["n", "twice-spin", "theta", "phi", "xi"],
            Quantity::Fig3 => &["n", "twice-spin", "theta", "phi", "xi", "coupling"],
            Quantity::Fig4 | Quantity::Fig5 => &[
                "n",
                "twice-spin",
                "theta",
                "phi",
                "xi",
                "coupling",
                "xi-prime-max",
            ],
            _ => &[],
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Quantity::ALL.iter().map(|q| q.name()).collect();
                format!(
                    "unknown quantity `{s}`, expected one of {}",
                    names.join(", ")
                )
            })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything needed to reproduce one table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub config: SystemConfig,
    pub theta: Grid,
    pub phi: Grid,
    pub xi: Grid,
    /// Only the count is used by the figure presets, which always span `[0, C_max]`.
    pub c: Grid,
    pub xi_prime_max: f64,
    pub xi_max: Option<f64>,
    pub epsilon: Vec<f64>,
    pub mode: BrachistochroneMode,
    pub unwrap: bool,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl SweepSpec {
    pub fn new(quantity: Quantity, config: SystemConfig) -> Self {
        SweepSpec {
            quantity,
            config,
            theta: Grid::point(PI / 2.0),
            phi: Grid::point(0.0),
            xi: Grid::point(1.0),
            c: Grid {
                start: 0.0,
                stop: 1.0,
                count: FIGURE_C_COUNT,
            },
            xi_prime_max: DEFAULT_XI_PRIME_MAX,
            xi_max: None,
            epsilon: vec![1e-2, DEFAULT_EPSILON, 1e-4],
            mode: BrachistochroneMode::Optimal,
            unwrap: false,
            format: OutputFormat::Csv,
            out: None,
        }
    }

    /// Preset for one of the concurrence figures: `N = 2`, `ξ̃ = 1`, and for
    /// the speed, distance and time figures `J = 1`.
    pub fn figure(quantity: Quantity, c_count: usize, xi_prime_max: f64) -> CliResult<Self> {
        if !quantity.is_figure() {
            return Err(CliError::usage(
                "quantity",
                format!("`{quantity}` is not a figure preset"),
            ));
        }
        let config = SystemConfig::from_twice_spin(2, 1, 1.0)?;
        let mut spec = SweepSpec::new(quantity, config);
        spec.c = Grid::new(0.0, 1.0, c_count).map_err(|e| CliError::usage("c", e))?;
        spec.xi_prime_max = match quantity {
            Quantity::Fig4 | Quantity::Fig5 => DEFAULT_XI_PRIME_MAX,
            _ => xi_prime_max,
        };
        Ok(spec)
    }

    pub fn validate(&self) -> CliResult<()> {
        let q = self.quantity;
        if !(self.xi_prime_max > 0.0 && self.xi_prime_max.is_finite()) {
            return Err(CliError::usage(
                "xi-prime-max",
                "must be positive and finite",
            ));
        }
        if q.is_figure() || q == Quantity::Euler {
            return match q {
                Quantity::Euler => self.validate_euler(),
                _ => Ok(()),
            };
        }
        for (axis, name, grid) in [
            (Axis::Theta, "theta", &self.theta),
            (Axis::Phi, "phi", &self.phi),
            (Axis::Xi, "xi", &self.xi),
        ] {
            if !q.axes().contains(&axis) && grid.count > 1 {
                return Err(CliError::usage(
                    name,
                    format!("`{q}` does not sweep this parameter"),
                ));
            }
        }
        if self.theta.start < 0.0 || self.theta.stop > PI {
            return Err(CliError::usage("theta", "must lie in [0, pi]"));
        }
        if self.xi.start < 0.0 {
            return Err(CliError::usage("xi", "must be non-negative"));
        }
        match q {
            Quantity::Brachistochrone if self.xi.start <= 0.0 => {
                Err(CliError::usage("xi", "the brachistochrone needs xi > 0"))
            }
            Quantity::Concurrence if self.config.n_spins != 2 => Err(CliError::usage(
                "n",
                "the I-concurrence is defined here for two spins",
            )),
            Quantity::AaPhase => match self.xi_max {
                Some(x) if !(x > 0.0 && x.is_finite()) => {
                    Err(CliError::usage("xi-max", "must be positive and finite"))
                }
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }

    fn validate_euler(&self) -> CliResult<()> {
        match self.xi_max {
            None => return Err(CliError::usage("xi-max", "required by `euler`")),
            Some(x) if !(x > 0.0 && x.is_finite()) => {
                return Err(CliError::usage("xi-max", "must be positive and finite"))
            }
            _ => {}
        }
        if self.epsilon.is_empty() {
            return Err(CliError::usage("epsilon", "at least one cutoff is needed"));
        }
        if let Some(e) = self.epsilon.iter().find(|e| !(**e > 0.0 && **e < PI / 4.0)) {
            return Err(CliError::usage(
                "epsilon",
                format!("{e} is outside (0, pi/4)"),
            ));
        }
        Ok(())
    }

    fn grid(&self, axis: Axis) -> &Grid {
        match axis {
            Axis::Theta => &self.theta,
            Axis::Phi => &self.phi,
            Axis::Xi => &self.xi,
        }
    }

    fn metadata(&self, rows: usize) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("tool".into(), json!(TOOL_VERSION));
        m.insert("quantity".into(), json!(self.quantity.name()));
        if self.quantity.is_figure() {
            m.insert("n_spins".into(), json!(2));
            m.insert("twice_spin".into(), json!(FIGURE_TWICE_SPINS));
            m.insert("xi_tilde".into(), json!(1.0));
            m.insert("xi_prime_max".into(), json!(self.xi_prime_max));
            if !matches!(self.quantity, Quantity::Fig1 | Quantity::Fig2) {
                m.insert("coupling".into(), json!(1.0));
            }
            m.insert("c_count".into(), json!(self.c.count));
        } else {
            m.insert("n_spins".into(), json!(self.config.n_spins));
            m.insert("twice_spin".into(), json!(self.config.spin.twice_spin()));
            m.insert("coupling".into(), json!(self.config.coupling));
            for &axis in self.quantity.axes() {
                let name = match axis {
                    Axis::Theta => "theta_grid",
                    Axis::Phi => "phi_grid",
                    Axis::Xi => "xi_grid",
                };
                m.insert(name.into(), json!(self.grid(axis).to_string()));
            }
        }
        match self.quantity {
            Quantity::Euler => {
                m.insert("xi_max".into(), json!(self.xi_max));
                m.insert("bulk_quadrature_tolerance".into(), json!(BULK_QUAD_TOL));
            }
            Quantity::Phase => {
                m.insert(
                    "orthogonality_threshold".into(),
                    json!(ORTHOGONALITY_THRESHOLD),
                );
                m.insert("unwrapped".into(), json!(self.unwrap));
            }
            Quantity::Brachistochrone => {
                let mode = match self.mode {
                    BrachistochroneMode::Optimal => "optimal",
                    BrachistochroneMode::Equatorial => "equatorial",
                };
                m.insert("mode".into(), json!(mode));
            }
            Quantity::Concurrence => {
                m.insert("phi".into(), json!(self.phi.start));
                m.insert("basis_layout".into(), json!(LAYOUT));
            }
            _ => {}
        }
        m.insert("metric_fd_step".into(), json!(METRIC_FD_STEP));
        m.insert("curvature_fd_step".into(), json!(CURVATURE_FD_STEP));
        m.insert("rows".into(), json!(rows));
        m
    }
}

/// Errors that mark a point as singular instead of aborting the sweep.
fn is_singular(e: &Error) -> bool {
    matches!(
        e,
        Error::Singular { .. } | Error::Degenerate(_) | Error::UndefinedPhase(_)
    )
}

fn finish_row(
    mut lead: Vec<Cell>,
    values: spin_manifold::Result<Vec<Cell>>,
    width: usize,
) -> CliResult<Vec<Cell>> {
    let values = match values {
        Ok(v)
            if v.iter()
                .all(|c| !matches!(c, Cell::Float(x) if !x.is_finite())) =>
        {
            Some(v)
        }
        Ok(_) => None,
        Err(e) if is_singular(&e) => None,
        Err(e) => return Err(e.into()),
    };
    match values {
        Some(v) => {
            lead.extend(v);
            lead.push(Cell::Text("ok".into()));
        }
        None => {
            lead.extend(std::iter::repeat_n(Cell::Empty, width));
            lead.push(Cell::Text("singular".into()));
        }
    }
    Ok(lead)
}

fn floats(values: &[f64]) -> Vec<Cell> {
    values.iter().map(|&x| Cell::Float(x)).collect()
}

fn evaluate(spec: &SweepSpec, theta: f64, phi: f64, xi: f64) -> spin_manifold::Result<Vec<Cell>> {
    let config = &spec.config;
    match spec.quantity {
        Quantity::Metric => {
            let g = metric_closed_form(config, &ParamPoint::new(theta, phi, xi)?);
            Ok(floats(&g.components()))
        }
        Quantity::Curvature => Ok(floats(&[gaussian_curvature(config, theta)?])),
        Quantity::Phase => {
            let b = geometric_phase(config, &ParamPoint::new(theta, phi, xi)?)?;
            Ok(floats(&[
                b.global_phase,
                b.dynamical_phase,
                b.geometric_phase,
            ]))
        }
        Quantity::AaPhase => {
            let xi_max = spec
                .xi_max
                .unwrap_or_else(|| evolution_period_sign(config).0);
            let aa = aa_phase(config, theta, xi_max)?;
            Ok(vec![
                Cell::Float(xi_max),
                Cell::Float(aa.raw),
                Cell::Float(aa.reduced),
                Cell::Bool(aa.cyclic),
            ])
        }
        Quantity::Speed => Ok(floats(&[speed(config, theta)?])),
        Quantity::Distance => Ok(floats(&[geodesic_distance(config, theta, xi)?])),
        Quantity::Brachistochrone => {
            let b = brachistochrone(config, xi, spec.mode)?;
            Ok(floats(&[
                b.theta_max,
                b.v_max,
                b.s_min,
                b.tau,
                b.ratio_tau_over_t,
            ]))
        }
        Quantity::Concurrence => Ok(floats(&[
            iconcurrence_exact(config.spin, theta, phi, xi)?,
            iconcurrence_short_time(config.spin, theta, xi),
        ])),
        _ => unreachable!("handled by dedicated sweeps"),
    }
}

fn point_sweep(spec: &SweepSpec) -> CliResult<SweepResult> {
    let q = spec.quantity;
    let axes = q.axes();
    let thetas = spec.theta.values();
    let phis = spec.phi.values();
    let xis = spec.xi.values();
    let mut points = Vec::with_capacity(thetas.len() * phis.len() * xis.len());
    for &t in &thetas {
        for &p in &phis {
            for &x in &xis {
                points.push((t, p, x));
            }
        }
    }
    let width = q.columns().len();
    let rows = points
        .par_iter()
        .map(|&(t, p, x)| {
            let lead: Vec<Cell> = axes
                .iter()
                .map(|a| match a {
                    Axis::Theta => Cell::Float(t),
                    Axis::Phi => Cell::Float(p),
                    Axis::Xi => Cell::Float(x),
                })
                .collect();
            finish_row(lead, evaluate(spec, t, p, x), width)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut header: Vec<String> = axes
        .iter()
        .map(|a| {
            match a {
                Axis::Theta => "theta",
                Axis::Phi => "phi",
                Axis::Xi => "xi",
            }
            .to_string()
        })
        .collect();
    header.extend(q.columns().iter().map(|c| c.to_string()));
    header.push("status".into());
    let mut result = SweepResult {
        header,
        metadata: spec.metadata(rows.len()),
        rows,
    };
    if q == Quantity::Phase && spec.unwrap {
        unwrap_along_xi(&mut result, xis.len());
    }
    Ok(result)
}

/// Unwraps the global and geometric phases along each ξ line, skipping singular rows.
fn unwrap_along_xi(result: &mut SweepResult, line: usize) {
    for name in ["global_phase", "geometric_phase"] {
        let idx = result.column(name).expect("phase columns present");
        for block in result.rows.chunks_mut(line) {
            let ok: Vec<usize> = (0..block.len())
                .filter(|&i| block[i][idx].as_f64().is_some())
                .collect();
            let wrapped: Vec<f64> = ok
                .iter()
                .map(|&i| block[i][idx].as_f64().unwrap())
                .collect();
            for (&i, v) in ok.iter().zip(unwrap_phases(&wrapped)) {
                block[i][idx] = Cell::Float(v);
            }
        }
    }
}

fn euler_sweep(spec: &SweepSpec) -> CliResult<SweepResult> {
    let xi_max = spec.xi_max.expect("validated");
    let rows = spec
        .epsilon
        .par_iter()
        .map(|&eps| {
            let lead = vec![Cell::Float(eps)];
            let report = euler_characteristic(&spec.config, xi_max, eps).map(|r| {
                vec![
                    Cell::Float(r.bulk_integral),
                    Cell::Float(r.bulk_limit),
                    Cell::Float(r.defect_sum),
                    Cell::Float(r.euler_characteristic),
                    Cell::Int(r.quadrature_intervals as i64),
                    Cell::Bool(r.quadrature_converged),
                ]
            });
            finish_row(lead, report, Quantity::Euler.columns().len())
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut header = vec!["epsilon".to_string()];
    header.extend(Quantity::Euler.columns().iter().map(|c| c.to_string()));
    header.push("status".into());
    Ok(SweepResult {
        header,
        metadata: spec.metadata(rows.len()),
        rows,
    })
}

/// Value plotted by a figure preset at one concurrence.
pub fn figure_value(quantity: Quantity, ctx: &ConcurrenceContext) -> spin_manifold::Result<f64> {
    match quantity {
        Quantity::Fig1 => Ok(curvature_from_concurrence(ctx)),
        Quantity::Fig2 => Ok(phase_from_concurrence(ctx)),
        Quantity::Fig3 => speed_from_concurrence(ctx, 1.0),
        Quantity::Fig4 => Ok(distance_and_time_from_concurrence(ctx, 1.0)?.0),
        Quantity::Fig5 => Ok(distance_and_time_from_concurrence(ctx, 1.0)?.1),
        other => unreachable!("`{other}` is not a figure"),
    }
}

fn figure_sweep(spec: &SweepSpec) -> CliResult<SweepResult> {
    let q = spec.quantity;
    let xp = spec.xi_prime_max;
    let fractions = Grid::new(0.0, 1.0, spec.c.count)
        .map_err(|e| CliError::usage("c", e))?
        .values();
    let mut points = Vec::new();
    for ts in FIGURE_TWICE_SPINS {
        let spin = SpinValue::new(ts)?;
        let c_max = 2.0 * spin.s() * xp;
        points.extend(fractions.iter().map(|&f| (spin, f * c_max)));
    }
    let rows = points
        .par_iter()
        .map(|&(spin, c)| {
            let ctx = ConcurrenceContext::new(spin, xp, xp, c)?;
            let lead = vec![
                Cell::Int(i64::from(spin.twice_spin())),
                Cell::Float(spin.s()),
                Cell::Float(c),
                Cell::Float(ctx.reduced_c()),
            ];
            finish_row(lead, figure_value(q, &ctx).map(|v| vec![Cell::Float(v)]), 1)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut header: Vec<String> = ["twice_spin", "s", "c", "reduced_c"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.push(q.columns()[0].into());
    header.push("status".into());
    Ok(SweepResult {
        header,
        metadata: spec.metadata(rows.len()),
        rows,
    })
}

/// Evaluates a sweep. Points are computed in parallel and returned in grid
/// order (Θ outermost, then Φ, then ξ), so the output matches a serial run.
pub fn run_sweep(spec: &SweepSpec) -> CliResult<SweepResult> {
    spec.validate()?;
    match spec.quantity {
        Quantity::Euler => euler_sweep(spec),
        q if q.is_figure() => figure_sweep(spec),
        _ => point_sweep(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, ts: u32) -> SystemConfig {
        SystemConfig::from_twice_spin(n, ts, 1.0).unwrap()
    }

    #[test]
    fn quantity_names_round_trip() {
        for q in Quantity::ALL {
            assert_eq!(q.name().parse::<Quantity>().unwrap(), q);
        }
        assert!("fig6".parse::<Quantity>().is_err());
    }

    #[test]
    fn single_point_gives_one_row() {
        for q in [
            Quantity::Metric,
            Quantity::Speed,
            Quantity::Phase,
            Quantity::Curvature,
        ] {
            let r = run_sweep(&SweepSpec::new(q, cfg(3, 2))).unwrap();
            assert_eq!(r.rows.len(), 1);
        }
    }

    #[test]
    fn row_count_is_grid_product() {
        let mut spec = SweepSpec::new(Quantity::Metric, cfg(2, 1));
        spec.theta = "0:pi:5".parse().unwrap();
        spec.phi = "0:1:2".parse().unwrap();
        spec.xi = "0:2:3".parse().unwrap();
        assert_eq!(run_sweep(&spec).unwrap().rows.len(), 30);
    }

    #[test]
    fn poles_are_marked_singular() {
        let mut spec = SweepSpec::new(Quantity::Curvature, cfg(3, 1));
        spec.theta = "0:pi:3".parse().unwrap();
        let r = run_sweep(&spec).unwrap();
        let status: Vec<String> = r
            .rows
            .iter()
            .map(|row| format!("{:?}", row.last().unwrap()))
            .collect();
        assert!(status[0].contains("singular") && status[2].contains("singular"));
        assert!(status[1].contains("ok"));
        assert!(r.rows[0][1] == Cell::Empty);
    }

    #[test]
    fn usage_errors_name_the_field() {
        let spec = SweepSpec::new(Quantity::Euler, cfg(2, 1));
        match run_sweep(&spec) {
            Err(CliError::Usage { field, .. }) => assert_eq!(field, "xi-max"),
            other => panic!("{other:?}"),
        }
        let mut spec = SweepSpec::new(Quantity::Curvature, cfg(2, 1));
        spec.xi = "0:1:4".parse().unwrap();
        assert!(matches!(
            run_sweep(&spec),
            Err(CliError::Usage { field: "xi", .. })
        ));
        let spec = SweepSpec::new(Quantity::Concurrence, cfg(3, 1));
        assert!(matches!(
            run_sweep(&spec),
            Err(CliError::Usage { field: "n", .. })
        ));
    }

    #[test]
    fn figure_rows_cover_all_spins() {
        let spec = SweepSpec::figure(Quantity::Fig1, 11, 1e-3).unwrap();
        let r = run_sweep(&spec).unwrap();
        assert_eq!(r.rows.len(), 44);
        let k = r.values("curvature").unwrap();
        assert!((k[0].unwrap() - 5.0).abs() < 1e-12);
        assert!(k[10].unwrap().abs() < 1e-12);
    }
}
