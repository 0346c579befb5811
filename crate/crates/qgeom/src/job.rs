use std::f64::consts::PI;
use std::path::PathBuf;

use qgeom_core::cyl::{holonomy, inner_product, mc_inner_product, monomial_basis, spin_network_basis, Connection};
use qgeom_core::graph::punctures;
use qgeom_core::linalg::hermitian_eigen;
use qgeom_core::operators::{
    area_spectrum, flux_commutator, flux_commutator_closed_form, flux_matrix, volume_spectrum, FluxSpec, Region,
};
use qgeom_core::{HalfInt, Spectrum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::document::Document;
use crate::table::{Format, Table};
use crate::JobError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    AreaSpectrum,
    VolumeSpectrum,
    InnerProduct,
    Holonomy,
    FluxMatrix,
    CommutatorCheck,
    BasisEnum,
}

/// Everything a run needs. Unset numeric fields fall back to the
/// document's `parameters`, then to the defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct JobConfig {
    pub command: Command,
    pub input: PathBuf,
    pub gamma: Option<f64>,
    pub c: Option<f64>,
    /// Twice the largest spin.
    pub max_spin: Option<i32>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl JobConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        JobConfig {
            command,
            input: input.into(),
            gamma: None,
            c: None,
            max_spin: None,
            seed: None,
            samples: None,
            output: None,
            format: Format::Csv,
        }
    }
}

/// Resolved job parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub gamma: f64,
    pub c: f64,
    pub max_spin: HalfInt,
    pub seed: u64,
    pub samples: usize,
    pub gauge_invariant: bool,
}

pub const DEFAULT_MAX_SPIN: i32 = 2;
pub const DEFAULT_SAMPLES: usize = 10_000;

impl Settings {
    pub fn resolve(config: &JobConfig, doc: &Document) -> Result<Settings, JobError> {
        let p = &doc.parameters;
        let s = Settings {
            gamma: config.gamma.or(p.gamma).unwrap_or(1.0),
            c: config.c.or(p.c).unwrap_or(1.0),
            max_spin: HalfInt::from_twice(config.max_spin.or(p.max_spin).unwrap_or(DEFAULT_MAX_SPIN)),
            seed: config.seed.or(p.seed).unwrap_or(0),
            samples: config.samples.or(p.samples).unwrap_or(DEFAULT_SAMPLES),
            gauge_invariant: p.gauge_invariant.unwrap_or(true),
        };
        if !(s.gamma > 0.0 && s.gamma.is_finite()) {
            return Err(JobError::Config(format!("gamma must be positive, got {}", s.gamma)));
        }
        if !(s.c > 0.0 && s.c.is_finite()) {
            return Err(JobError::Config(format!("c must be positive, got {}", s.c)));
        }
        if s.max_spin.twice() < 1 {
            return Err(JobError::Config(format!("max spin (twice) must be at least 1, got {}", s.max_spin.twice())));
        }
        if s.samples == 0 {
            return Err(JobError::Config("samples must be at least 1".into()));
        }
        Ok(s)
    }

    /// Physical area per unit of the area spectrum.
    pub fn area_scale(&self) -> f64 {
        4.0 * PI * self.gamma
    }

    /// Physical volume per unit of the volume spectrum, before `c`.
    pub fn volume_scale(&self) -> f64 {
        (8.0 * PI * self.gamma).powf(1.5)
    }

    pub fn flux_scale(&self) -> f64 {
        8.0 * PI * self.gamma
    }
}

/// Reads the input, runs the command and writes the output file if one
/// is configured. Returns the rendered output.
pub fn run(config: &JobConfig) -> Result<String, JobError> {
    let text = std::fs::read_to_string(&config.input)
        .map_err(|e| JobError::Io { path: config.input.display().to_string(), message: e.to_string() })?;
    let doc = Document::parse(&text, &config.input.display().to_string())?;
    let table = compute(config.command, &doc, &Settings::resolve(config, &doc)?)?;
    let out = table.render(config.format);
    if let Some(path) = &config.output {
        std::fs::write(path, &out)
            .map_err(|e| JobError::Io { path: path.display().to_string(), message: e.to_string() })?;
    }
    Ok(out)
}

fn surface_choice(doc: &Document, default: &[usize]) -> Vec<usize> {
    doc.parameters.surfaces.clone().unwrap_or_else(|| default.to_vec())
}

fn flux(doc: &Document, k: usize) -> Result<FluxSpec, JobError> {
    Ok(FluxSpec::constant(doc.surface(k)?, doc.smearing(k)))
}

/// Runs `command` on a parsed document.
pub fn compute(command: Command, doc: &Document, s: &Settings) -> Result<Table, JobError> {
    let graph = doc.graph()?;
    match command {
        Command::AreaSpectrum => {
            let k = surface_choice(doc, &[0])[0];
            let spec = area_spectrum(&graph, &doc.surface(k)?, s.max_spin, s.gauge_invariant)?;
            Ok(Table::from_spectrum(format!("area spectrum, surface {k}"), "ℓ_P²", &spec, s.area_scale()))
        }
        Command::VolumeSpectrum => {
            let region = doc.parameters.region.clone().map_or(Region::All, Region::Vertices);
            let spec = volume_spectrum(&graph, &region, s.max_spin, s.c, s.gauge_invariant)?;
            Ok(Table::from_spectrum("volume spectrum", "ℓ_P³", &spec, s.volume_scale()))
        }
        Command::InnerProduct => {
            let f1 = doc.state(0, &graph, s.gauge_invariant)?;
            let f2 = if doc.states.len() > 1 { doc.state(1, &graph, s.gauge_invariant)? } else { f1.clone() };
            let exact = inner_product(&f1, &f2).map_err(qgeom_core::OperatorError::from)?;
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            let mc = mc_inner_product(&f1, &f2, s.samples, &mut rng).map_err(qgeom_core::OperatorError::from)?;
            let mut t = Table::new("inner product of states 0 and 1", "dimensionless");
            t.push(exact.re, 1, "exact re");
            t.push(exact.im, 1, "exact im");
            t.push(mc.value.re, s.samples, "monte-carlo re");
            t.push(mc.value.im, s.samples, "monte-carlo im");
            t.push(mc.std_error, s.samples, "monte-carlo standard error");
            Ok(t)
        }
        Command::Holonomy => {
            let a = match &doc.parameters.connection {
                None => Connection::zero(),
                Some(c) => match c.linear {
                    None => Connection::constant(c.constant),
                    Some(l) => Connection::affine(c.constant, l),
                },
            };
            let mut t = Table::new("edge holonomies g = [[a, b], [-conj(b), conj(a)]]", "dimensionless");
            for (k, e) in graph.edges().iter().enumerate() {
                let g = holonomy(&a, &e.polyline).map_err(qgeom_core::OperatorError::from)?;
                t.push(g.alpha().re, 1, format!("edge={k} a re"));
                t.push(g.alpha().im, 1, format!("edge={k} a im"));
                t.push(g.beta().re, 1, format!("edge={k} b re"));
                t.push(g.beta().im, 1, format!("edge={k} b im"));
            }
            Ok(t)
        }
        Command::FluxMatrix => {
            let k = surface_choice(doc, &[0])[0];
            let f = flux(doc, k)?;
            let fine = punctures(&graph, &f.surface)?.graph;
            let basis = monomial_basis(&fine, s.max_spin);
            let m = flux_matrix(&f, &basis)?;
            let records = hermitian_eigen(&m).values.into_iter().map(|v| (v, 1, String::from("flux")));
            let spec = Spectrum::from_records(records);
            Ok(Table::from_spectrum(format!("flux spectrum, surface {k}"), "ℓ_P²", &spec, s.flux_scale()))
        }
        Command::CommutatorCheck => {
            let ks = surface_choice(doc, &[0, 1]);
            if ks.len() < 2 {
                return Err(JobError::Config("commutator-check needs two surfaces".into()));
            }
            let (f1, f2) = (flux(doc, ks[0])?, flux(doc, ks[1])?);
            let psi = doc.state(0, &graph, s.gauge_invariant)?;
            let direct = flux_commutator(&f1, &f2, &psi)?;
            let closed = flux_commutator_closed_form(&f1, &f2, &psi)?;
            let diff = qgeom_core::cyl::distance(&direct, &closed).map_err(qgeom_core::OperatorError::from)?;
            let scale = s.flux_scale() * s.flux_scale();
            let mut t = Table::new(format!("flux commutator, surfaces {} and {}", ks[0], ks[1]), "ℓ_P⁴");
            t.push(direct.norm_sqr().sqrt() * scale, 1, "double application norm");
            t.push(closed.norm_sqr().sqrt() * scale, 1, "vertex sum norm");
            t.push(diff * scale, 1, "difference norm");
            Ok(t)
        }
        Command::BasisEnum => {
            let mut t = Table::new("spin-network basis (value: norm)", "dimensionless");
            let states = spin_network_basis(&graph, s.max_spin, s.gauge_invariant);
            for st in &states {
                let spins: Vec<String> = st.spins.iter().map(ToString::to_string).collect();
                let iw: Vec<String> = st.intertwiners.iter().map(ToString::to_string).collect();
                let label = format!("j=({}) i=({})", spins.join(" "), iw.join(" "));
                t.push(st.function.norm_sqr().sqrt(), 1, label);
            }
            Ok(t)
        }
    }
}
