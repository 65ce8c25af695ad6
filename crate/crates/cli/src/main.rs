//! Command-line front end: element arithmetic, identity suites, module
//! construction and verification, and operator-family fitting, all over the
//! JSON formats of the library.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on malformed
//! input or usage errors.

mod suites;

use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use vljet::fit::fit_family;
use vljet::formal::{
    bracket_bplus, bracket_g, bracket_l, bracket_semidirect, jacobi_defect, AElement, GAElement,
};
use vljet::ideal::{diff_derivative, in_ideal_ik, in_ideal_jk, in_derived, project_reductive};
use vljet::jet::{act_element, extract_l, f_isomorphic, JetModuleSpec};
use vljet::json::{
    self, element_from_json, element_to_json, family_to_json, matrix_to_json, reductive_to_json,
    spec_from_json, spec_to_json, vector_from_json, vector_to_json, AnyElement,
};
use vljet::rep::{bplus_from_sl2, sl2_irrep};
use vljet::scalar::parse_rational;
use vljet::{Error, LatticePoint};

#[derive(Parser)]
#[command(name = "vljet", version, about = "Exact computer algebra for a Virasoro-like algebra and its jet modules")]
struct Cli {
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Window radius for windowed identity checks
    #[arg(long, global = true, default_value_t = 3)]
    window: i64,
    /// Degree cap for polynomial fitting
    #[arg(long, global = true, default_value_t = 6)]
    cap: u32,
    /// Number of randomized trials per suite check
    #[arg(long, global = true, default_value_t = 16)]
    trials: u32,
    /// Output format for suite reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algebra {
    #[value(name = "G", alias = "g")]
    G,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "GA", alias = "ga")]
    Ga,
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "Bplus", alias = "bplus")]
    Bplus,
}

#[derive(Subcommand)]
enum Command {
    /// Lie bracket of two elements of the named algebra
    Bracket {
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// Element JSON, inline or a file path
        x: String,
        y: String,
    },
    /// Jacobi defect [[x,y],z] + [[y,z],x] + [[z,x],y]
    JacobiDefect {
        #[arg(long, value_enum)]
        algebra: Algebra,
        x: String,
        y: String,
        z: String,
    },
    /// Ideal membership: I_k for L elements, J_k for Bplus elements
    IdealTest {
        element: String,
        #[arg(long)]
        k: u32,
        /// Additionally require membership in the derived subalgebra
        #[arg(long)]
        derived: bool,
    },
    /// Projection of an L element onto the reductive quotient
    Project { element: String },
    /// Iterated difference derivative of L along a coordinate direction
    Diff {
        /// Direction coordinate, 0 or 1
        #[arg(long, default_value_t = 1)]
        c: i64,
        /// Base point on the line
        #[arg(long)]
        s: i64,
        /// Order of the difference derivative
        #[arg(long)]
        l: u32,
    },
    /// Build a jet-module spec and print it as JSON
    Mkmodule {
        /// Module kind: F (weight-shifted sl2 fiber) or B (generator map)
        kind: String,
        /// Weight alpha as "a1,a2" (F kind, and B kind built from --n)
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        lambda: String,
        /// Highest weight: use the (n+1)-dimensional irreducible sl2 fiber
        #[arg(long)]
        n: Option<i64>,
        /// Representation file: SL2Rep JSON for F, BPlusRep JSON for B
        #[arg(long)]
        rep: Option<String>,
    },
    /// Apply a semidirect-product element to a module vector
    Act {
        spec: String,
        element: String,
        vector: String,
    },
    /// Grade-zero operator of d_m, as a matrix
    ExtractL {
        spec: String,
        /// Lattice point as "a,b"
        m: String,
    },
    /// Run a named identity suite; exit 0 iff every check passes
    Verify {
        /// One of: jacobi, ideals, sl2-quotient, jet, fit, jk
        suite: String,
        /// Spec JSON (required by the jet and fit suites)
        spec: Option<String>,
    },
    /// Interpolate the polynomial operator family of a spec
    Fit { spec: String },
    /// Decide isomorphism of two irreducible F-variant specs
    Classify { spec_a: String, spec_b: String },
}

/// Treat an argument as inline JSON when it looks like JSON, otherwise as a
/// file path.
fn read_arg(arg: &str) -> Result<String, Error> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg)
        .map_err(|e| Error::Parse(format!("cannot read {arg:?}: {e}")))
}

fn parse_point(s: &str) -> Result<LatticePoint, Error> {
    let bad = || Error::Parse(format!("expected a lattice point \"a,b\", got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok(LatticePoint::new(
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn element_arg(arg: &str) -> Result<AnyElement, Error> {
    element_from_json(&read_arg(arg)?)
}

fn spec_arg(arg: &str) -> Result<JetModuleSpec, Error> {
    spec_from_json(&read_arg(arg)?)
}

fn algebra_mismatch(want: &str, got: &AnyElement) -> Error {
    Error::Parse(format!("expected a {want} element, got {}", got.algebra_name()))
}

fn as_ga(x: AnyElement) -> Result<GAElement, Error> {
    match x {
        AnyElement::G(g) => Ok(GAElement::new(g, AElement::zero())),
        AnyElement::A(a) => Ok(GAElement::new(vljet::GElement::zero(), a)),
        AnyElement::GA(u) => Ok(u),
        other => Err(algebra_mismatch("G, A, or GA", &other)),
    }
}

fn cmd_bracket(algebra: Algebra, x: &str, y: &str) -> Result<String, Error> {
    let (x, y) = (element_arg(x)?, element_arg(y)?);
    let out = match (algebra, x, y) {
        (Algebra::G, AnyElement::G(a), AnyElement::G(b)) => AnyElement::G(bracket_g(&a, &b)),
        (Algebra::A, AnyElement::A(_), AnyElement::A(_)) => AnyElement::A(AElement::zero()),
        (Algebra::Ga, a, b) => AnyElement::GA(bracket_semidirect(&as_ga(a)?, &as_ga(b)?)),
        (Algebra::L, AnyElement::L(a), AnyElement::L(b)) => AnyElement::L(bracket_l(&a, &b)),
        (Algebra::Bplus, AnyElement::Bplus(a), AnyElement::Bplus(b)) => {
            AnyElement::Bplus(bracket_bplus(&a, &b))
        }
        (_, x, _) => return Err(algebra_mismatch("matching", &x)),
    };
    Ok(element_to_json(&out))
}

fn cmd_jacobi_defect(algebra: Algebra, x: &str, y: &str, z: &str) -> Result<String, Error> {
    let (x, y, z) = (element_arg(x)?, element_arg(y)?, element_arg(z)?);
    let out = match (algebra, x, y, z) {
        (Algebra::G, AnyElement::G(a), AnyElement::G(b), AnyElement::G(c)) => {
            AnyElement::G(jacobi_defect(&a, &b, &c, bracket_g))
        }
        (Algebra::A, AnyElement::A(_), AnyElement::A(_), AnyElement::A(_)) => {
            AnyElement::A(AElement::zero())
        }
        (Algebra::Ga, a, b, c) => AnyElement::GA(jacobi_defect(
            &as_ga(a)?,
            &as_ga(b)?,
            &as_ga(c)?,
            bracket_semidirect,
        )),
        (Algebra::L, AnyElement::L(a), AnyElement::L(b), AnyElement::L(c)) => {
            AnyElement::L(jacobi_defect(&a, &b, &c, bracket_l))
        }
        (Algebra::Bplus, AnyElement::Bplus(a), AnyElement::Bplus(b), AnyElement::Bplus(c)) => {
            AnyElement::Bplus(jacobi_defect(&a, &b, &c, bracket_bplus))
        }
        (_, x, _, _) => return Err(algebra_mismatch("matching", &x)),
    };
    Ok(element_to_json(&out))
}

fn cmd_ideal_test(element: &str, k: u32, derived: bool) -> Result<String, Error> {
    let member = match element_arg(element)? {
        AnyElement::L(x) => in_ideal_ik(&x, k)? && (!derived || in_derived(&x)),
        AnyElement::Bplus(x) => {
            if derived {
                return Err(Error::Parse(
                    "--derived applies to L elements only".into(),
                ));
            }
            in_ideal_jk(&x, k)?
        }
        other => return Err(algebra_mismatch("L or Bplus", &other)),
    };
    Ok(format!("{{\"member\":{member}}}"))
}

fn cmd_mkmodule(
    kind: &str,
    alpha: Option<&str>,
    lambda: &str,
    n: Option<i64>,
    rep: Option<&str>,
) -> Result<String, Error> {
    let lambda = parse_rational(lambda)?;
    let parse_alpha = |s: Option<&str>| -> Result<_, Error> {
        let s = s.ok_or_else(|| Error::Parse("--alpha is required".into()))?;
        let bad = || Error::Parse(format!("expected --alpha \"a1,a2\", got {s:?}"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        Ok((parse_rational(a)?, parse_rational(b)?))
    };
    let spec = match kind {
        "F" | "f" => {
            let fiber = match (n, rep) {
                (Some(n), None) => sl2_irrep(n)?,
                (None, Some(path)) => json::sl2_rep_from_json(&read_arg(path)?)?,
                _ => return Err(Error::Parse("kind F needs exactly one of --n or --rep".into())),
            };
            JetModuleSpec::f(parse_alpha(alpha)?, lambda, fiber)?
        }
        "B" | "b" => {
            let gens = match (n, rep) {
                (Some(n), None) => bplus_from_sl2(&sl2_irrep(n)?, &parse_alpha(alpha)?),
                (None, Some(path)) => json::bplus_rep_from_json(&read_arg(path)?)?,
                _ => return Err(Error::Parse("kind B needs exactly one of --n or --rep".into())),
            };
            JetModuleSpec::b(lambda, gens)?
        }
        other => return Err(Error::Parse(format!("unknown module kind {other:?}"))),
    };
    Ok(spec_to_json(&spec))
}

fn cmd_classify(a: &str, b: &str) -> Result<String, Error> {
    let iso = f_isomorphic(&spec_arg(a)?, &spec_arg(b)?)?;
    Ok(format!("{{\"isomorphic\":{iso}}}"))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Bracket { algebra, x, y } => {
            println!("{}", cmd_bracket(algebra, &x, &y)?);
        }
        Command::JacobiDefect { algebra, x, y, z } => {
            println!("{}", cmd_jacobi_defect(algebra, &x, &y, &z)?);
        }
        Command::IdealTest { element, k, derived } => {
            println!("{}", cmd_ideal_test(&element, k, derived)?);
        }
        Command::Project { element } => {
            let AnyElement::L(x) = element_arg(&element)? else {
                return Err(Error::Parse("projection applies to L elements".into()));
            };
            println!("{}", reductive_to_json(&project_reductive(&x)));
        }
        Command::Diff { c, s, l } => {
            let out = diff_derivative(c, s, l)?;
            println!("{}", element_to_json(&AnyElement::L(out)));
        }
        Command::Mkmodule { kind, alpha, lambda, n, rep } => {
            println!(
                "{}",
                cmd_mkmodule(&kind, alpha.as_deref(), &lambda, n, rep.as_deref())?
            );
        }
        Command::Act { spec, element, vector } => {
            let spec = spec_arg(&spec)?;
            let x = as_ga(element_arg(&element)?)?;
            let v = vector_from_json(&read_arg(&vector)?)?;
            println!("{}", vector_to_json(&act_element(&spec, &x, &v)?));
        }
        Command::ExtractL { spec, m } => {
            let spec = spec_arg(&spec)?;
            println!("{}", matrix_to_json(&extract_l(&spec, &parse_point(&m)?)?));
        }
        Command::Verify { suite, spec } => {
            let spec_text = match spec {
                Some(s) => Some(read_arg(&s)?),
                None => None,
            };
            let config = suites::Config {
                seed: cli.seed,
                window: cli.window,
                cap: cli.cap,
                trials: cli.trials,
                text: cli.format == Format::Text,
            };
            let all_pass = suites::run_suite(&suite, spec_text.as_deref(), &config)?;
            return Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Fit { spec } => {
            let spec = spec_arg(&spec)?;
            let dim = spec.dim();
            let family = match fit_family(
                |m| extract_l(&spec, m).expect("nonzero grid point"),
                cli.cap,
                dim,
            ) {
                Ok(f) => f,
                Err(e @ Error::NoPolynomialFit { .. }) => {
                    eprintln!("fit failed: {e}");
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e),
            };
            println!("{}", family_to_json(&family));
        }
        Command::Classify { spec_a, spec_b } => {
            println!("{}", cmd_classify(&spec_a, &spec_b)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
