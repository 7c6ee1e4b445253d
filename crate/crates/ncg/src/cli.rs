//! The `ncg` command line. Every run produces a JSON report (or CSV for
//! spectral-action series) carrying the inputs, the results and a version stamp.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use ncg_core::clifford::{classification, generate_gammas, MAX_GAMMA_DIM};
use ncg_core::connes_lott::{
    assemble_gauge_matrices, higgs_from_fluctuation, DegeneracyAxis, InternalTriple,
};
use ncg_core::fluctuations::{fluctuate, potential, PotentialSpec};
use ncg_core::matrix::{hermitian_eigen, C64};
use ncg_core::spectral_action::{
    counting, dixmier_estimate, einstein_hilbert_constant, spectral_action, torus_a0, weyl_fit,
    CutoffFunction, SpectrumModel, TorusSpectrum,
};
use ncg_core::triple::{check_axioms_with, spectral_distance, AxiomReport, DEFAULT_SAMPLES, DEFAULT_SEED};
use ncg_core::two_point::TwoPointGeometry;
use ncg_core::State;

use crate::formats::{
    GaugeFieldJson, InternalPairsJson, MatrixJson, PairsJson, SpectrumJson, TripleJson, YukawaJson,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ncg",
    version,
    about = "Finite spectral triples from the command line"
)]
pub struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Clifford algebra classification and gamma matrices.
    Clifford {
        #[command(subcommand)]
        action: CliffordCommand,
    },
    /// Axiom checks on a triple file.
    Axioms {
        #[command(subcommand)]
        action: AxiomsCommand,
    },
    /// Spectral distance between two states: `char:<i>` or `vec:<file.json>`.
    Distance {
        triple: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The two-point space for a coupling matrix M.
    TwoPoint {
        #[arg(long = "M")]
        m: PathBuf,
        /// Higgs value as `re,im`.
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        phi: String,
    },
    /// Inner fluctuation D ↦ D + A + JAJ⁻¹.
    Fluctuate {
        triple: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        /// Use the hermitian part of A.
        #[arg(long)]
        symmetrize: bool,
    },
    /// Counting function and cutoff spectral action over a grid of Λ.
    SpectralAction {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long = "L", default_value_t = std::f64::consts::TAU)]
        l: f64,
        /// Lattice cutoff; chosen from the grid when omitted.
        #[arg(long = "K")]
        k: Option<u64>,
        /// Eigenvalue file for the explicit model.
        #[arg(long)]
        spectrum: Option<PathBuf>,
        /// `start:stop:count`
        #[arg(long)]
        lambda_grid: String,
        /// `hard` or `smooth:<δ>`
        #[arg(long, default_value = "hard")]
        cutoff: String,
    },
    /// The internal space of the electroweak-strong model.
    ConnesLott {
        #[arg(long)]
        yukawa: PathBuf,
        #[arg(long)]
        generations: Option<usize>,
        #[arg(long, value_enum, default_value_t = Axis::Color)]
        axis: Axis,
        #[command(subcommand)]
        action: ConnesLottCommand,
    },
    /// Logarithmic-mean (Dixmier) estimate for a model sequence.
    Dixmier {
        /// `harmonic`, `inverse-square`, `constant` or `power:<p>` for μₙ = (n+1)^(−p).
        #[arg(long)]
        sequence: String,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        /// Extra N values, comma separated.
        #[arg(long, value_delimiter = ',')]
        ladder: Vec<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CliffordCommand {
    Table {
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum AxiomsCommand {
    Check {
        triple: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConnesLottCommand {
    Axioms,
    Higgs {
        #[arg(long)]
        pairs: PathBuf,
        /// Replace the pairs by an equivalent list with self-adjoint potential.
        #[arg(long)]
        self_adjoint: bool,
    },
    Gauge {
        #[arg(long)]
        fields: PathBuf,
        /// Keep V as given instead of imposing Trace V = Λ.
        #[arg(long)]
        no_trace: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Torus,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Color,
    Generation,
}

#[derive(Debug)]
pub enum CliError {
    Core(ncg_core::Error),
    Input(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(s) | CliError::Io(s) => f.write_str(s),
        }
    }
}

impl From<ncg_core::Error> for CliError {
    fn from(e: ncg_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => EXIT_INTERNAL,
            CliError::Core(_) | CliError::Input(_) => EXIT_INPUT,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_INTERNAL => "internal_consistency",
            EXIT_INPUT => "input",
            _ => "io",
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub enum Output {
    Json(Value),
    Csv(String),
}

fn load<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("cannot parse {}: {e}", path.display())))
}

fn matrix_value(m: &ncg_core::ComplexMatrix) -> Value {
    serde_json::to_value(MatrixJson::from(m)).expect("plain data")
}

fn complex_value(z: C64) -> Value {
    json!([z.re, z.im])
}

fn parse_complex(s: &str) -> CliResult<C64> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || CliError::Input(format!("expected `re,im`, got {s:?}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let re = parts[0].trim().parse().map_err(|_| bad())?;
    let im = parts[1].trim().parse().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

fn parse_state(s: &str) -> CliResult<State> {
    if let Some(i) = s.strip_prefix("char:") {
        let i = i
            .parse()
            .map_err(|_| CliError::Input(format!("bad character index in {s:?}")))?;
        return Ok(State::Character(i));
    }
    if let Some(path) = s.strip_prefix("vec:") {
        let m: MatrixJson = load(Path::new(path))?;
        return Ok(State::Vector(m.to_matrix()?.into_data()));
    }
    Err(CliError::Input(format!(
        "state must be `char:<i>` or `vec:<file>`, got {s:?}"
    )))
}

fn parse_grid(s: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Input(format!("grid must be `start:stop:count`, got {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    if n == 0 || a.is_nan() || a <= 0.0 || b < a || !b.is_finite() {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
}

fn parse_cutoff(s: &str) -> CliResult<CutoffFunction> {
    if s == "hard" {
        return Ok(CutoffFunction::Hard);
    }
    if let Some(d) = s.strip_prefix("smooth:") {
        let d: f64 = d
            .parse()
            .map_err(|_| CliError::Input(format!("bad smooth margin in {s:?}")))?;
        return Ok(CutoffFunction::smooth(d)?);
    }
    Err(CliError::Input(format!(
        "cutoff must be `hard` or `smooth:<δ>`, got {s:?}"
    )))
}

fn axiom_report(rep: &AxiomReport) -> Value {
    let results: Vec<Value> = rep
        .results
        .iter()
        .map(|r| {
            json!({
                "axiom": r.id.name(),
                "outcome": r.outcome.name(),
                "residual": r.residual,
                "note": r.note,
            })
        })
        .collect();
    json!({
        "seed": rep.seed,
        "all_applicable_pass": rep.all_applicable_pass(),
        "failed": rep.failed().iter().map(|a| a.name()).collect::<Vec<_>>(),
        "max_residual": rep.max_residual(),
        "results": results,
    })
}

fn spectrum_of(m: &ncg_core::ComplexMatrix) -> CliResult<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

fn clifford_table(dim: usize) -> CliResult<Value> {
    let c = classification(dim);
    let mut out = json!({
        "n": dim,
        "structure": c.structure(),
        "dim": c.real_dim(),
        "field": c.field.symbol(),
        "summands": c.summands,
        "matrix_size": c.size(),
        "real_dim_log2": c.real_dim_log2(),
    });
    if (1..=MAX_GAMMA_DIM).contains(&dim) {
        let g = generate_gammas(dim)?;
        out["gammas"] = json!({
            "size": g.size(),
            "anticommutator_residual": g.anticommutator_residual(),
            "anti_hermiticity_residual": g.anti_hermiticity_residual(),
        });
    }
    Ok(out)
}

fn distance(path: &Path, from: &str, to: &str) -> CliResult<Value> {
    let t = load::<TripleJson>(path)?.to_triple()?;
    let (s1, s2) = (parse_state(from)?, parse_state(to)?);
    let d = spectral_distance(&t, &s1, &s2)?;
    Ok(json!({
        "distance": d.value,
        "finite": d.value.is_finite(),
        "upper_bound": d.upper_bound,
        "witness": d.witness.as_ref().map(|w| matrix_value(w.matrix())),
    }))
}

fn two_point(m: &Path, phi: &str) -> CliResult<Value> {
    let m = load::<MatrixJson>(m)?.to_matrix()?;
    let phi = parse_complex(phi)?;
    let g = TwoPointGeometry::new(m)?;
    let d = g.distance()?;
    let c = g.curvature(phi)?;
    let ym = g.ym_action(phi)?;
    Ok(json!({
        "distance": d.value,
        "distance_upper_bound": d.upper_bound,
        "ym": ym.value,
        "ym_operational": ym.operational,
        "ym_residual": ym.residual,
        "theta": matrix_value(&c.theta),
        "curvature_residual": c.residual,
        "spectrum": g.spectrum(phi)?,
    }))
}

fn fluctuate_cmd(path: &Path, spec: &Path, symmetrize: bool) -> CliResult<Value> {
    let t = load::<TripleJson>(path)?.to_triple()?;
    let pairs = load::<PairsJson>(spec)?.to_pairs(&t.algebra)?;
    let a = potential(&PotentialSpec::new(pairs), &t, symmetrize)?;
    let f = fluctuate(&t, &a.a)?;
    Ok(json!({
        "potential": matrix_value(&a.a),
        "potential_self_adjoint_residual": a.self_adjoint_residual,
        "D": matrix_value(&f.triple.d),
        "spectrum_before": spectrum_of(&t.d)?,
        "spectrum_after": spectrum_of(&f.triple.d)?,
        "note": f.note,
    }))
}

struct ActionArgs<'a> {
    model: Model,
    dim: Option<usize>,
    l: f64,
    k: Option<u64>,
    spectrum: Option<&'a Path>,
    grid: &'a str,
    cutoff: &'a str,
}

fn spectral_action_cmd(a: ActionArgs<'_>, format: Format) -> CliResult<Output> {
    let grid = parse_grid(a.grid)?;
    let phi = parse_cutoff(a.cutoff)?;
    let lmax = grid.iter().copied().fold(0.0, f64::max);
    let (sm, torus) = match a.model {
        Model::Torus => {
            let n = a
                .dim
                .ok_or_else(|| CliError::Input("--dim is required for the torus model".into()))?;
            let scale = std::f64::consts::TAU / a.l;
            let k = match a.k {
                Some(k) => k,
                None => (lmax * phi.support().sqrt() / scale).ceil() as u64 + 1,
            };
            let t = TorusSpectrum::new(n, a.l, k)?;
            (SpectrumModel::Torus(t.clone()), Some(t))
        }
        Model::Explicit => {
            let p = a
                .spectrum
                .ok_or_else(|| CliError::Input("--spectrum is required for the explicit model".into()))?;
            (
                SpectrumModel::explicit(load::<SpectrumJson>(p)?.eigenvalues)?,
                None,
            )
        }
    };
    let mut rows = Vec::with_capacity(grid.len());
    for &l in &grid {
        rows.push((l, counting(&sm, l)?, spectral_action(&sm, phi, l)?));
    }
    if format == Format::Csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["lambda", "N", "action"])
            .map_err(|e| CliError::Io(e.to_string()))?;
        for (l, n, s) in &rows {
            w.write_record([l.to_string(), n.to_string(), s.to_string()])
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        return Ok(Output::Csv(String::from_utf8(bytes).expect("csv is utf-8")));
    }
    let moments = phi.moments();
    let mut out = json!({
        "rows": rows.iter().map(|(l, n, s)| json!({"lambda": l, "N": n, "action": s})).collect::<Vec<_>>(),
        "moments": {"f0": moments.f0, "f2": moments.f2, "f4": moments.f4},
    });
    if let Some(t) = torus {
        out["lattice_cutoff"] = json!(t.cutoff());
        out["a0"] = json!(torus_a0(t.dim(), t.side()));
        out["einstein_hilbert_constant"] = match einstein_hilbert_constant(t.dim()) {
            Ok(c) => json!(c),
            Err(_) => Value::Null,
        };
        out["weyl_fit"] = match weyl_fit(&t, &grid) {
            Ok(f) => json!({
                "power": f.power,
                "fitted_constant": f.fitted_constant,
                "constant_at_max": f.constant_at_max,
                "oracle_constant": f.oracle_constant,
                "relative_error": f.relative_error,
                "oscillation": f.samples.iter().map(|s| s.2).collect::<Vec<_>>(),
            }),
            Err(e) => json!({"error": e.to_string()}),
        };
    }
    Ok(Output::Json(out))
}

fn connes_lott(
    yukawa: &Path,
    generations: Option<usize>,
    axis: Axis,
    action: &ConnesLottCommand,
) -> CliResult<Value> {
    let axis = match axis {
        Axis::Color => DegeneracyAxis::Color,
        Axis::Generation => DegeneracyAxis::Generation,
    };
    let y = load::<YukawaJson>(yukawa)?.to_yukawa()?;
    let t = InternalTriple::new(y, axis)?;
    if let Some(g) = generations {
        if g != t.basis.generations {
            return Err(CliError::Input(format!(
                "--generations {g} disagrees with the {0}x{0} Yukawa matrices",
                t.basis.generations
            )));
        }
    }
    let mut out = json!({"generations": t.basis.generations, "dim": t.basis.dim()});
    match action {
        ConnesLottCommand::Axioms => {
            out["axioms"] = axiom_report(&check_axioms_with(&t.triple, DEFAULT_SEED, DEFAULT_SAMPLES)?);
        }
        ConnesLottCommand::Higgs { pairs, self_adjoint } => {
            let raw: InternalPairsJson = load(pairs)?;
            let mut list = raw
                .pairs
                .iter()
                .map(|[a, b]| Ok((a.to_element()?, b.to_element()?)))
                .collect::<CliResult<Vec<_>>>()?;
            if *self_adjoint {
                list = PotentialSpec::new(list)
                    .self_adjoint(&t.triple.algebra.identity())
                    .pairs;
            }
            let h = higgs_from_fluctuation(&t, &list)?;
            out["higgs"] = json!({
                "phi1": complex_value(h.fields.phi1),
                "phi2": complex_value(h.fields.phi2),
                "phi1_prime": complex_value(h.fields.phi1_prime),
                "phi2_prime": complex_value(h.fields.phi2_prime),
                "q": matrix_value(&h.fields.q()),
                "q_prime": matrix_value(&h.fields.q_prime()),
                "reconstruction_residual": h.residual,
                "hermiticity_residual": h.hermiticity_residual,
                "doublet_residual": h.doublet_residual,
            });
        }
        ConnesLottCommand::Gauge { fields, no_trace } => {
            let gf = load::<GaugeFieldJson>(fields)?.to_sample()?;
            let g = assemble_gauge_matrices(&gf, !no_trace)?;
            out["gauge"] = json!({
                "quark": matrix_value(&g.quark),
                "lepton": matrix_value(&g.lepton),
                "V": matrix_value(&g.v),
                "hypercharges": g.hypercharges.map(|h| {
                    h.iter().map(|(p, y)| (p.name().to_string(), json!(y))).collect::<serde_json::Map<_, _>>()
                }),
            });
        }
    }
    Ok(out)
}

fn dixmier_cmd(sequence: &str, n: u64, ladder: &[u64]) -> CliResult<Value> {
    let p: f64 = match sequence {
        "harmonic" => 1.0,
        "inverse-square" => 2.0,
        "constant" => 0.0,
        s => s
            .strip_prefix("power:")
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| CliError::Input(format!("unknown sequence {s:?}")))?,
    };
    let mu = |k: u64| ((k + 1) as f64).powf(-p);
    let main = dixmier_estimate(mu, n)?;
    let steps = ladder
        .iter()
        .map(|&m| {
            dixmier_estimate(mu, m).map(|e| json!({"N": m, "value": e.value, "divergent": e.divergent}))
        })
        .collect::<ncg_core::Result<Vec<_>>>()?;
    Ok(json!({"N": n, "value": main.value, "divergent": main.divergent, "ladder": steps}))
}

/// The arguments after the program name, lossily decoded.
fn inputs(args: &[OsString]) -> Value {
    json!(args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Clifford { .. } => "clifford",
        Command::Axioms { .. } => "axioms",
        Command::Distance { .. } => "distance",
        Command::TwoPoint { .. } => "two-point",
        Command::Fluctuate { .. } => "fluctuate",
        Command::SpectralAction { .. } => "spectral-action",
        Command::ConnesLott { .. } => "connes-lott",
        Command::Dixmier { .. } => "dixmier",
    }
}

fn execute(cli: &Cli, args: &[OsString]) -> CliResult<Output> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::SpectralAction { .. }) {
        return Err(CliError::Input(
            "CSV output is only offered for spectral-action".into(),
        ));
    }
    let results = match &cli.command {
        Command::Clifford {
            action: CliffordCommand::Table { dim },
        } => clifford_table(*dim)?,
        Command::Axioms {
            action:
                AxiomsCommand::Check {
                    triple,
                    seed,
                    samples,
                },
        } => {
            let t = load::<TripleJson>(triple)?.to_triple()?;
            axiom_report(&check_axioms_with(&t, *seed, *samples)?)
        }
        Command::Distance { triple, from, to } => distance(triple, from, to)?,
        Command::TwoPoint { m, phi } => two_point(m, phi)?,
        Command::Fluctuate {
            triple,
            spec,
            symmetrize,
        } => fluctuate_cmd(triple, spec, *symmetrize)?,
        Command::SpectralAction {
            model,
            dim,
            l,
            k,
            spectrum,
            lambda_grid,
            cutoff,
        } => {
            let args = ActionArgs {
                model: *model,
                dim: *dim,
                l: *l,
                k: *k,
                spectrum: spectrum.as_deref(),
                grid: lambda_grid,
                cutoff,
            };
            match spectral_action_cmd(args, cli.format)? {
                Output::Json(v) => v,
                csv => return Ok(csv),
            }
        }
        Command::ConnesLott {
            yukawa,
            generations,
            axis,
            action,
        } => connes_lott(yukawa, *generations, *axis, action)?,
        Command::Dixmier { sequence, n, ladder } => dixmier_cmd(sequence, *n, ladder)?,
    };
    Ok(Output::Json(json!({
        "version": concat!("ncg ", env!("CARGO_PKG_VERSION")),
        "command": command_name(&cli.command),
        "inputs": inputs(args),
        "results": results,
    })))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = execute(&cli, &args).and_then(|o| {
        let text = match o {
            Output::Json(v) => serde_json::to_string_pretty(&v).expect("serialisable") + "\n",
            Output::Csv(s) => s,
        };
        emit(cli.out.as_deref(), &text)
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("ncg: {e}");
            let report = json!({
                "version": concat!("ncg ", env!("CARGO_PKG_VERSION")),
                "command": command_name(&cli.command),
                "inputs": inputs(&args),
                "error": {"kind": e.kind(), "message": e.to_string()},
            });
            if let Some(p) = &cli.out {
                let _ = fs::write(
                    p,
                    serde_json::to_string_pretty(&report).expect("serialisable") + "\n",
                );
            }
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let internal = CliError::Core(ncg_core::Error::InternalConsistency {
            what: "test".into(),
            residual: 1.0,
        });
        assert_eq!(internal.exit_code(), EXIT_INTERNAL);
        assert_eq!(internal.kind(), "internal_consistency");
        assert_eq!(
            CliError::Core(ncg_core::Error::InvalidInput("x".into())).exit_code(),
            EXIT_INPUT
        );
        assert_eq!(CliError::Io("x".into()).exit_code(), EXIT_IO);
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("1:3:3").unwrap(), [1.0, 2.0, 3.0]);
        assert_eq!(parse_grid("2:2:1").unwrap(), [2.0]);
        for bad in ["1:3", "0:3:2", "3:1:2", "1:3:0", "a:b:c"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn states_and_cutoffs() {
        assert!(matches!(parse_state("char:3"), Ok(State::Character(3))));
        assert!(parse_state("point:1").is_err());
        assert!(matches!(parse_cutoff("hard"), Ok(CutoffFunction::Hard)));
        assert!(matches!(
            parse_cutoff("smooth:0.25"),
            Ok(CutoffFunction::Smooth { .. })
        ));
        assert!(parse_cutoff("smooth:1.5").is_err());
        assert_eq!(parse_complex("-1, 0.5").unwrap(), C64::new(-1.0, 0.5));
    }
}
