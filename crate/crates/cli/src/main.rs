use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sectordet::heat_trace::{heat_expansion_cone, heat_expansion_sector, zeta_zero};
use sectordet::spectral_oracle::Geometry;
use sectordet::QuadratureConfig;
use sectordet_cli::eval::{self, Evaluation, GeometryArg, MethodArg};
use sectordet_cli::spectrum::{build_spectrum_parallel, write_spectrum_csv};
use sectordet_cli::sweep::{self, Quantity, SweepRequest};
use sectordet_cli::{fmt17, spec_file, verify, CliError};

/// Determinants of the Dirichlet Laplacian on circular sectors and flat cones.
#[derive(Parser)]
#[command(name = "sectordet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Unit-radius circular sector.
    Sector {
        #[command(subcommand)]
        op: ShapeOp,
    },
    /// Flat cone of slant height 1.
    Cone {
        #[command(subcommand)]
        op: ShapeOp,
    },
    /// Heat-trace coefficients.
    Heat {
        #[command(subcommand)]
        op: HeatOp,
    },
    /// Evaluate a quantity on an angle grid and write CSV.
    Sweep {
        #[arg(long, value_enum)]
        geometry: GeometryArg,
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Evaluate the Polyakov formulas on a JSON spec file.
    Polyakov {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Run the self-verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Explicit Bessel-zero spectra.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
}

#[derive(Subcommand)]
enum ShapeOp {
    /// -log det of the Dirichlet Laplacian.
    Det {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Derivative of -log det in the opening angle.
    Ddalpha {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
}

#[derive(Subcommand)]
enum HeatOp {
    Coeffs {
        #[arg(long, value_enum)]
        geometry: GeometryArg,
        #[arg(long)]
        alpha: f64,
    },
}

#[derive(Subcommand)]
enum OracleOp {
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, value_enum)]
    geometry: GeometryArg,
    #[arg(long)]
    alpha: f64,
    #[arg(long = "L")]
    l_max: usize,
    #[arg(long = "N")]
    n_max: usize,
    #[arg(long)]
    out: PathBuf,
}

fn print_eval(e: &Evaluation) {
    println!("alpha {}", fmt17(e.alpha));
    println!("value {}", fmt17(e.value));
    println!("abs_err {:.3e}", e.abs_err);
    println!("method {}", e.method);
}

fn shape(geometry: GeometryArg, op: ShapeOp, cfg: &QuadratureConfig) -> Result<(), CliError> {
    let e = match op {
        ShapeOp::Det { alpha } => eval::det(geometry, alpha, cfg)?,
        ShapeOp::Ddalpha { alpha, method } => eval::ddalpha(geometry, alpha, method, cfg)?,
    };
    print_eval(&e);
    Ok(())
}

fn geometry(g: GeometryArg) -> Geometry {
    match g {
        GeometryArg::Sector => Geometry::Sector,
        GeometryArg::Cone => Geometry::Cone,
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = QuadratureConfig::default();
    match cli.command {
        Command::Sector { op } => shape(GeometryArg::Sector, op, &cfg)?,
        Command::Cone { op } => shape(GeometryArg::Cone, op, &cfg)?,
        Command::Heat { op: HeatOp::Coeffs { geometry, alpha } } => {
            let a = eval::angle(alpha)?;
            let h = match geometry {
                GeometryArg::Sector => heat_expansion_sector(&a),
                GeometryArg::Cone => heat_expansion_cone(&a),
            };
            println!("a0 {}", fmt17(h.a0));
            println!("a1 {}", fmt17(h.a1));
            println!("a2_log {}", fmt17(h.a2_log));
            println!("a2_const {}", fmt17(h.a2_const));
            println!("zeta_zero {}", fmt17(zeta_zero(&h, 0)?));
        }
        Command::Sweep { geometry, quantity, from, to, steps, out, method } => {
            let req = SweepRequest { geometry, quantity, alpha_from: from, alpha_to: to, steps, method, output_path: out };
            let n = sweep::run(&req, &cfg)?;
            eprintln!("wrote {n} rows to {}", req.output_path.display());
        }
        Command::Polyakov { spec } => {
            let s = spec_file::read_spec(&spec)?;
            let (variational, integrated) = spec_file::evaluate(&s)?;
            println!("variational {}", fmt17(variational));
            println!("integrated {}", fmt17(integrated));
        }
        Command::Verify { suite } => {
            let checks = verify::run(&suite, &cfg)?;
            for c in &checks {
                println!("{}", c.line());
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            println!("{} checks, {} failed", checks.len(), failed);
            return Ok(failed == 0);
        }
        Command::Oracle { op: OracleOp::Spectrum(args) } => {
            let a = eval::angle(args.alpha)?;
            let s = build_spectrum_parallel(geometry(args.geometry), &a, args.l_max, args.n_max)?;
            write_spectrum_csv(&s, &args.out)?;
            eprintln!("wrote {} levels to {}", s.entries.len(), args.out.display());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
