use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bezoutian::bezout::BuildOptions;
use bezoutian::companion::{companion_matrices, verify_modp_with_fallback, CompanionSet, VerifyReport};
use bezoutian::io::{roots_to_json, SparseMatrixFile};
use bezoutian::linalg::QMatrix;
use bezoutian::pipeline::{bezout_files, companion_files, solve, SolveOptions};
use bezoutian::poly::{parse_system, Ambient, PolySystem};
use bezoutian::reduction::reduce;
use bezoutian::Error;

#[derive(Parser)]
#[command(name = "bezoutian", version, about = "Solve square polynomial systems through Bezout and companion matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the roots and a run report.
    Solve {
        system: PathBuf,
        /// Roots JSON destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report destination (default: stderr).
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Write the reduced Bezout matrices and the companion matrices.
    Matrices {
        system: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check f(X) = 0 modulo a prime.
    Verify {
        system: PathBuf,
        /// Read X1..Xn from this directory instead of computing them.
        #[arg(long)]
        load_matrices: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 1)]
    margin: usize,
    #[arg(long, default_value_t = 1e-6)]
    round_tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2003)]
    prime: u64,
    #[arg(long)]
    no_verify: bool,
    #[arg(long)]
    force_symbolic: bool,
}

impl Common {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            build: BuildOptions {
                margin: self.margin,
                round_tol: self.round_tol,
                force_symbolic: self.force_symbolic,
                ..BuildOptions::default()
            },
            seed: self.seed,
            prime: self.prime,
            verify: !self.no_verify,
        }
    }
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    msg: String,
}

fn classify(e: Error) -> Failure {
    let code = match e {
        Error::Syntax { .. }
        | Error::UnknownVariable { .. }
        | Error::EmptyInput
        | Error::NonSquare { .. }
        | Error::MatrixFile { .. }
        | Error::NotPrime(_)
        | Error::InvalidArgument(_) => 2,
        _ => 3,
    };
    Failure { code, msg: e.to_string() }
}

fn input_error(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, msg: format!("cannot read {}: {e}", path.display()) }
}

fn output_error(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 3, msg: format!("cannot write {}: {e}", path.display()) }
}

fn load_system(path: &Path) -> Result<PolySystem, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(path, e))?;
    parse_system(&text).map_err(classify)
}

fn check_prime(common: &Common) -> Result<(), Failure> {
    if bezoutian::linalg::modp::is_prime(common.prime) {
        Ok(())
    } else {
        Err(classify(Error::NotPrime(common.prime)))
    }
}

fn emit(dest: Option<&Path>, text: &str, to_stdout: bool) -> Result<(), Failure> {
    match dest {
        Some(p) => fs::write(p, text).map_err(|e| output_error(p, e)),
        None if to_stdout => {
            print!("{text}");
            Ok(())
        }
        None => {
            let _ = std::io::stderr().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn verify_status(v: Option<&VerifyReport>) -> u8 {
    match v {
        Some(v) if !v.passed => 1,
        _ => 0,
    }
}

fn cmd_solve(system: &Path, out: Option<&Path>, report: Option<&Path>, common: &Common) -> Result<u8, Failure> {
    let f = load_system(system)?;
    check_prime(common)?;
    let run = solve(&f, &common.options()).map_err(classify)?;
    emit(out, &roots_to_json(&run.roots), true)?;
    emit(report, &run.report.to_string(), false)?;
    Ok(verify_status(run.report.verify.as_ref()))
}

fn cmd_matrices(system: &Path, out_dir: &Path, report: Option<&Path>, common: &Common) -> Result<u8, Failure> {
    let f = load_system(system)?;
    check_prime(common)?;
    let run = solve(&f, &common.options()).map_err(classify)?;
    fs::create_dir_all(out_dir).map_err(|e| output_error(out_dir, e))?;
    let mut files = bezout_files(&run.reduced);
    match &run.companions {
        Some(cs) => files.extend(companion_files(cs)),
        None => files.extend((1..=f.n()).map(|k| SparseMatrixFile {
            k,
            matrix: QMatrix::zeros(0, 0),
            row_family: Vec::new(),
            col_family: Vec::new(),
        })),
    }
    let n_bezout = f.n() + 1;
    for (idx, file) in files.iter().enumerate() {
        let name = if idx < n_bezout { format!("B{}.txt", file.k) } else { format!("X{}.txt", file.k) };
        let path = out_dir.join(name);
        fs::write(&path, file.to_text()).map_err(|e| output_error(&path, e))?;
    }
    emit(report, &run.report.to_string(), false)?;
    Ok(verify_status(run.report.verify.as_ref()))
}

fn load_companions(dir: &Path, n: usize) -> Result<CompanionSet, Failure> {
    let mut matrices = Vec::with_capacity(n);
    let mut basis = None;
    for k in 1..=n {
        let path = dir.join(format!("X{k}.txt"));
        let text = fs::read_to_string(&path).map_err(|e| input_error(&path, e))?;
        let file = SparseMatrixFile::parse(&text, Ambient::X(n), Ambient::X(n))
            .map_err(|e| Failure { code: 2, msg: format!("{}: {e}", path.display()) })?;
        let dim = file.row_family.len();
        if file.k != k || file.matrix.rows() != dim || file.matrix.cols() != dim {
            return Err(Failure { code: 2, msg: format!("{}: expected a square matrix with k={k}", path.display()) });
        }
        match &basis {
            None => basis = Some(file.row_family.clone()),
            Some(b) if *b != file.row_family => {
                return Err(Failure { code: 2, msg: format!("{}: basis differs from X1", path.display()) });
            }
            Some(_) => {}
        }
        matrices.push(file.matrix);
    }
    Ok(CompanionSet { n, matrices, basis: basis.unwrap_or_default() })
}

fn cmd_verify(system: &Path, load: Option<&Path>, common: &Common) -> Result<u8, Failure> {
    let f = load_system(system)?;
    check_prime(common)?;
    let cs = match load {
        Some(dir) => load_companions(dir, f.n())?,
        None => {
            let bez = bezoutian::bezout::build_bezout_set(&f, &common.options().build).map_err(classify)?;
            companion_matrices(&reduce(bez)).map_err(classify)?
        }
    };
    let v = verify_modp_with_fallback(&f, &cs, common.prime, common.seed).map_err(classify)?;
    println!("prime: {}", v.prime);
    for (i, ok) in v.per_poly.iter().enumerate() {
        println!("f{}: {ok}", i + 1);
    }
    println!("passed: {}", v.passed);
    Ok(verify_status(Some(&v)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { system, out, report, common } => cmd_solve(system, out.as_deref(), report.as_deref(), common),
        Command::Matrices { system, out_dir, report, common } => cmd_matrices(system, out_dir, report.as_deref(), common),
        Command::Verify { system, load_matrices, common } => cmd_verify(system, load_matrices.as_deref(), common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, msg }) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
