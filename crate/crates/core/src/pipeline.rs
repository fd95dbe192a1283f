//! Build, reduce, companion, verify and eigen phases chained together, with
//! timings.

use std::fmt;
use std::time::Instant;

use crate::bezout::{build_bezout_set_traced, BuildOptions, BuildTrace};
use crate::companion::{companion_matrices, verify_modp_with_fallback, CompanionSet, VerifyReport};
use crate::eigen::{attach_residuals, eigen_roots, residual_histogram, Histogram, RootSet};
use crate::error::Result;
use crate::io::SparseMatrixFile;
use crate::poly::PolySystem;
use crate::reduction::{reduce, ReducedBezoutSet};

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub build: BuildOptions,
    pub seed: u64,
    pub prime: u64,
    pub verify: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { build: BuildOptions::default(), seed: 0, prime: 2003, verify: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    /// `(phase, seconds)` in execution order.
    pub phase_timings: Vec<(String, f64)>,
    pub dim: usize,
    pub initial_size: (usize, usize),
    pub relations_count: usize,
    pub verify: Option<VerifyReport>,
    pub histogram: Histogram,
    /// Bytes of the triplet sections of the reduced Bezout matrix files.
    pub matrix_bytes: usize,
    pub trace: BuildTrace,
}

impl RunReport {
    pub fn verified(&self) -> bool {
        self.verify.as_ref().is_none_or(|v| v.passed)
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutput {
    pub reduced: ReducedBezoutSet,
    pub companions: Option<CompanionSet>,
    pub roots: RootSet,
    pub report: RunReport,
}

/// Sparse files `B0..Bn` of a reduced set.
pub fn bezout_files(red: &ReducedBezoutSet) -> Vec<SparseMatrixFile> {
    red.bez
        .matrices
        .iter()
        .enumerate()
        .map(|(k, m)| SparseMatrixFile {
            k,
            matrix: m.clone(),
            row_family: red.bez.row_family.clone(),
            col_family: red.bez.col_family.clone(),
        })
        .collect()
}

/// Sparse files `X1..Xn`; both families are the basis.
pub fn companion_files(cs: &CompanionSet) -> Vec<SparseMatrixFile> {
    cs.matrices
        .iter()
        .enumerate()
        .map(|(j, m)| SparseMatrixFile { k: j + 1, matrix: m.clone(), row_family: cs.basis.clone(), col_family: cs.basis.clone() })
        .collect()
}

fn timed<T>(timings: &mut Vec<(String, f64)>, phase: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f()?;
    timings.push((phase.to_string(), start.elapsed().as_secs_f64()));
    Ok(out)
}

pub fn solve(f: &PolySystem, opts: &SolveOptions) -> Result<SolveOutput> {
    let mut timings = Vec::new();
    let (bez, trace) = timed(&mut timings, "build", || build_bezout_set_traced(f, &opts.build))?;
    let initial_size = bez.shape();
    let reduced = timed(&mut timings, "reduce", || Ok(reduce(bez)))?;
    let matrix_bytes = bezout_files(&reduced).iter().map(|file| file.triplets().len()).sum();

    let mut companions = None;
    let mut verify = None;
    let mut roots = RootSet { roots: Vec::new(), seed: opts.seed, combination: Vec::new() };
    if reduced.dim > 0 {
        let cs = timed(&mut timings, "companion", || companion_matrices(&reduced))?;
        if opts.verify {
            verify = Some(timed(&mut timings, "verify", || verify_modp_with_fallback(f, &cs, opts.prime, opts.seed))?);
        }
        roots = timed(&mut timings, "eigen", || {
            let mut rs = eigen_roots(&cs, opts.seed)?;
            attach_residuals(f, &mut rs);
            Ok(rs)
        })?;
        companions = Some(cs);
    }
    let report = RunReport {
        phase_timings: timings,
        dim: reduced.dim,
        initial_size,
        relations_count: reduced.relations.len(),
        verify,
        histogram: residual_histogram(&roots),
        matrix_bytes,
        trace,
    };
    Ok(SolveOutput { reduced, companions, roots, report })
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim: {}", self.dim)?;
        writeln!(f, "initial size: {}x{}", self.initial_size.0, self.initial_size.1)?;
        writeln!(f, "relations: {}", self.relations_count)?;
        writeln!(f, "grid x sizes: {:?}", self.trace.x_sizes)?;
        writeln!(f, "grid y sizes: {:?}", self.trace.y_sizes)?;
        for (k, path) in self.trace.paths.iter().enumerate() {
            writeln!(f, "bezoutian {k}: {path:?}")?;
        }
        writeln!(f, "matrix bytes: {}", self.matrix_bytes)?;
        match &self.verify {
            Some(v) => {
                let flags: Vec<&str> = v.per_poly.iter().map(|&b| if b { "true" } else { "false" }).collect();
                writeln!(f, "verify: {} (p = {}, seed = {}, per polynomial: {})", if v.passed { "passed" } else { "FAILED" }, v.prime, v.seed, flags.join(" "))?;
            }
            None => writeln!(f, "verify: skipped")?,
        }
        writeln!(f)?;
        writeln!(f, "phase,seconds")?;
        for (phase, secs) in &self.phase_timings {
            writeln!(f, "{phase},{secs:.6}")?;
        }
        writeln!(f)?;
        writeln!(f, "log10 of errors,nb of roots")?;
        for (bin, count) in &self.histogram.bins {
            writeln!(f, "{bin},{count}")?;
        }
        if self.histogram.skipped > 0 {
            writeln!(f, "singular jacobian,{}", self.histogram.skipped)?;
        }
        Ok(())
    }
}
