//! JSON-in, JSON-out command line for bead configurations.
//!
//! Every subcommand reads canonical JSON documents, writes one line of
//! canonical JSON to standard output, and signals through the exit code:
//! 0 when the operation succeeded or the queried property holds, 1 when
//! the property fails or no certificate exists, 2 on malformed input or a
//! violated precondition (with an `{"error": ...}` envelope on stdout).
//! Given identical inputs and flags, output is byte identical across runs;
//! diagnostics that may vary, such as probe warnings, go to stderr.

use std::io::Read;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;

use beadslide::bead::{ConfigError, OrderError};
use beadslide::json::{
    check_report_to_json, config_from_json, config_to_json, error_to_json, gap_vector_to_json,
    instance_from_json, parse_rational, plan_from_json, plan_result_to_json,
    predecessor_report_to_json, verdict_to_json, verification_report_to_json, JsonError,
    ParseRationalError,
};
use beadslide::majorization::{
    check_concave_schur, check_concave_sum_inequality, check_schur_convex,
    find_concavity_counterexample, DominanceMode, MajorizationInstance, MajorizeError,
    TestFunction,
};
use beadslide::oracle::{lattice_reachable, LatticeSpec, OracleError};
use beadslide::planner::{
    approx_plan, converse_counterexample, epsilon_sleeve, has_predecessor,
    one_step_predecessor_interval, plan, try_plan, verify_plan, PlannerError,
};
use beadslide::Rational;

#[derive(Parser)]
#[command(
    name = "beadslide",
    version,
    about = "Decide and certify slide reachability between bead configurations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a document is a valid configuration
    Validate {
        /// configuration JSON (path or -)
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Print the gap form of a configuration
    Gaps {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Compare two configurations componentwise
    Order {
        #[arg(long, default_value = "-")]
        input: String,
        /// right-hand configuration (path or -)
        #[arg(long)]
        target: String,
    },
    /// Check whether a configuration is a slideable target
    Slideable {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Construct a certificate of admissible slides from input to target
    Plan {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        target: String,
        /// plan toward the epsilon sleeve of the target instead
        #[arg(long, value_name = "P/Q", conflicts_with = "budget")]
        epsilon: Option<String>,
        /// best-effort planning with at most this many sweeps per window
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
    },
    /// Replay a plan and check that it certifies the target
    Verify {
        /// plan JSON (path or -); plan output is accepted directly
        #[arg(long, default_value = "-")]
        plan: String,
        #[arg(long)]
        input: String,
        #[arg(long)]
        target: String,
    },
    /// Print the epsilon sleeve of a configuration
    Perturb {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_name = "P/Q")]
        epsilon: String,
    },
    /// Build the dominated-but-unreachable companion of a tail-patterned target
    Counterexample {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// One-step predecessor intervals and existence
    Predecessors {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Check a majorization sum inequality on an instance {"x": [...], "y": [...]}
    #[command(group(
        ArgGroup::new("check")
            .required(true)
            .args(["concave_sum", "concave_schur", "convex_schur"])
    ))]
    Schur {
        /// sum f(x) <= sum f(y) under prefix dominance above a base point
        #[arg(long)]
        concave_sum: bool,
        /// sum f(x) <= sum f(y) for concave f with equal totals
        #[arg(long)]
        concave_schur: bool,
        /// sum g(x) >= sum g(y) for convex g with equal totals
        #[arg(long)]
        convex_schur: bool,
        /// test function: sqrt, log1p, square, exp, or pwl:x0,y0;x1,y1;...
        #[arg(long = "fn", value_name = "NAME")]
        function: String,
        #[arg(long, default_value = "-")]
        input: String,
        /// probe the function for concavity violations, warning on stderr
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
    },
    /// Brute-force reachability search on a rational lattice
    Oracle {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        target: String,
        /// lattice denominator; slides move in multiples of 1/D
        #[arg(long, value_name = "D")]
        denominator: i64,
        /// give up after this many distinct states
        #[arg(long, value_name = "N", default_value_t = 1_000_000)]
        max_states: usize,
    },
}

struct Failure {
    code: &'static str,
    message: String,
}

fn fail<E: std::fmt::Display>(code: &'static str, err: E) -> Failure {
    Failure {
        code,
        message: err.to_string(),
    }
}

fn config_code(e: &ConfigError) -> &'static str {
    match e {
        ConfigError::Empty => "empty_config",
        ConfigError::Incomparable { .. } => "not_comparable",
        ConfigError::FirstGapNegative | ConfigError::GapDecrease { .. } => "not_monotone",
    }
}

fn order_code(e: &OrderError) -> &'static str {
    match e {
        OrderError::DimensionMismatch { .. } => "dimension_mismatch",
        OrderError::BasePointMismatch => "base_point_mismatch",
    }
}

fn rational_code(e: &ParseRationalError) -> &'static str {
    match e {
        ParseRationalError::Malformed => "malformed_rational",
        ParseRationalError::NonCanonical => "non_canonical_rational",
        ParseRationalError::ZeroDenominator => "zero_denominator",
    }
}

fn json_code(e: &JsonError) -> &'static str {
    match e {
        JsonError::Syntax(_) => "malformed_json",
        JsonError::Rational(r) => rational_code(r),
        JsonError::Config(c) => config_code(c),
        JsonError::NegativeDelta => "negative_delta",
    }
}

fn planner_code(e: &PlannerError) -> &'static str {
    match e {
        PlannerError::Incompatible(o) => order_code(o),
        PlannerError::NotDominated => "precondition_order",
        PlannerError::TargetNotSlideable => "precondition_slideable",
        PlannerError::SweepBoundExceeded => "internal_bound_exceeded",
        PlannerError::IndexOutOfRange { .. } => "index_out_of_range",
        PlannerError::TooFewBeads { .. } => "too_few_beads",
        PlannerError::NonpositiveEpsilon => "nonpositive_epsilon",
        PlannerError::PatternMismatch { .. } => "pattern_mismatch",
    }
}

fn majorize_code(e: &MajorizeError) -> &'static str {
    match e {
        MajorizeError::EmptyInstance => "empty_instance",
        MajorizeError::LengthMismatch => "length_mismatch",
        MajorizeError::DominanceViolated { .. } => "precondition_dominance",
        MajorizeError::TotalsDiffer => "precondition_totals",
        MajorizeError::NotSorted { .. } => "precondition_sorted",
        MajorizeError::ValueBelowBase { .. } => "value_below_base",
        MajorizeError::BasePointNotZero => "base_point_not_zero",
        MajorizeError::NotNondecreasing => "not_nondecreasing",
        MajorizeError::InvalidBreakpoints { .. } => "invalid_breakpoints",
        MajorizeError::EmptyFunction => "empty_function",
        MajorizeError::DerivativeUnavailable => "derivative_unavailable",
        MajorizeError::DerivativeMismatch => "derivative_mismatch",
        MajorizeError::DomainError => "domain_error",
        MajorizeError::NotDominated => "precondition_order",
        MajorizeError::Incompatible(o) => order_code(o),
        MajorizeError::Config(c) => config_code(c),
    }
}

fn oracle_code(e: &OracleError) -> &'static str {
    match e {
        OracleError::Incompatible(o) => order_code(o),
        OracleError::NotDominated => "precondition_order",
        OracleError::ZeroDenominator => "zero_denominator",
        OracleError::OffLattice { .. } => "off_lattice",
        OracleError::BudgetExceeded { .. } => "budget_exceeded",
    }
}

/// Tracks stdin so that at most one document comes from it.
#[derive(Default)]
struct SourceReader {
    stdin_taken: bool,
}

impl SourceReader {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.stdin_taken {
                return Err(Failure {
                    code: "stdin_conflict",
                    message: "at most one input can come from standard input".to_owned(),
                });
            }
            self.stdin_taken = true;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| fail("io_error", e))?;
            Ok(buf)
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| Failure {
                    code: "io_error",
                    message: format!("{path}: {e}"),
                })
        }
    }

    fn config(&mut self, path: &str) -> Result<beadslide::BeadConfig, Failure> {
        let text = self.read(path)?;
        config_from_json(&text).map_err(|e| fail(json_code(&e), e))
    }
}

#[derive(Serialize)]
struct ErrorBody {
    code: &'static str,
    message: String,
}

#[derive(Serialize)]
struct ValidityJson {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
}

#[derive(Serialize)]
struct LeqJson {
    leq: bool,
}

#[derive(Serialize)]
struct SlideableJson {
    slideable: bool,
}

#[derive(Serialize)]
struct NoCertificateJson {
    no_certificate: bool,
}

fn emit<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("output structs always serialize")
    );
}

fn parse_function(text: &str) -> Result<TestFunction, Failure> {
    if let Some(body) = text.strip_prefix("pwl:") {
        let mut points = Vec::new();
        for part in body.split(';') {
            let (x, y) = part.split_once(',').ok_or_else(|| Failure {
                code: "malformed_function",
                message: format!("breakpoint '{part}' is not of the form x,y"),
            })?;
            let parse = |s: &str| {
                parse_rational(s).map_err(|e| Failure {
                    code: "malformed_function",
                    message: format!("breakpoint value '{s}': {e}"),
                })
            };
            points.push((parse(x)?, parse(y)?));
        }
        TestFunction::piecewise_linear(points).map_err(|e| fail(majorize_code(&e), e))
    } else {
        TestFunction::named(text).ok_or_else(|| Failure {
            code: "unknown_function",
            message: format!(
                "'{text}' is neither in the catalog (sqrt, log1p, square, exp) nor a pwl: spec"
            ),
        })
    }
}

fn stdin_count(cmd: &Cmd) -> usize {
    let paths: Vec<&String> = match cmd {
        Cmd::Validate { input }
        | Cmd::Gaps { input }
        | Cmd::Slideable { input }
        | Cmd::Counterexample { input }
        | Cmd::Predecessors { input }
        | Cmd::Perturb { input, .. }
        | Cmd::Schur { input, .. } => vec![input],
        Cmd::Order { input, target }
        | Cmd::Plan { input, target, .. }
        | Cmd::Oracle { input, target, .. } => vec![input, target],
        Cmd::Verify {
            plan,
            input,
            target,
        } => vec![plan, input, target],
    };
    paths.iter().filter(|p| p.as_str() == "-").count()
}

fn run(cmd: Cmd) -> Result<u8, Failure> {
    // reject double stdin before consuming any of it
    if stdin_count(&cmd) > 1 {
        return Err(Failure {
            code: "stdin_conflict",
            message: "at most one input can come from standard input".to_owned(),
        });
    }
    let mut src = SourceReader::default();
    match cmd {
        Cmd::Validate { input } => {
            let text = src.read(&input)?;
            match config_from_json(&text) {
                Ok(_) => {
                    emit(&ValidityJson {
                        valid: true,
                        error: None,
                    });
                    Ok(0)
                }
                // a well-formed document that fails validation is a negative
                // answer, not an input error
                Err(JsonError::Config(e)) => {
                    emit(&ValidityJson {
                        valid: false,
                        error: Some(ErrorBody {
                            code: config_code(&e),
                            message: e.to_string(),
                        }),
                    });
                    Ok(1)
                }
                Err(e) => Err(fail(json_code(&e), e)),
            }
        }
        Cmd::Gaps { input } => {
            let c = src.config(&input)?;
            println!("{}", gap_vector_to_json(&c.gaps()));
            Ok(0)
        }
        Cmd::Order { input, target } => {
            let a = src.config(&input)?;
            let b = src.config(&target)?;
            let leq = a.leq(&b).map_err(|e| fail(order_code(&e), e))?;
            emit(&LeqJson { leq });
            Ok(if leq { 0 } else { 1 })
        }
        Cmd::Slideable { input } => {
            let c = src.config(&input)?;
            let slideable = c.is_slideable_target();
            emit(&SlideableJson { slideable });
            Ok(if slideable { 0 } else { 1 })
        }
        Cmd::Plan {
            input,
            target,
            epsilon,
            budget,
        } => {
            let a = src.config(&input)?;
            let b = src.config(&target)?;
            let result = match (epsilon, budget) {
                (Some(eps), None) => {
                    let eps = parse_rational(&eps).map_err(|e| fail(rational_code(&e), e))?;
                    approx_plan(&a, &b, &eps).map_err(|e| fail(planner_code(&e), e))?
                }
                (None, Some(max_sweeps)) => {
                    match try_plan(&a, &b, max_sweeps).map_err(|e| fail(planner_code(&e), e))? {
                        Some(result) => result,
                        None => {
                            emit(&NoCertificateJson {
                                no_certificate: true,
                            });
                            return Ok(1);
                        }
                    }
                }
                _ => plan(&a, &b).map_err(|e| fail(planner_code(&e), e))?,
            };
            println!("{}", plan_result_to_json(&result));
            Ok(0)
        }
        Cmd::Verify {
            plan,
            input,
            target,
        } => {
            let a = src.config(&input)?;
            let b = src.config(&target)?;
            let text = src.read(&plan)?;
            let p = plan_from_json(&text).map_err(|e| fail(json_code(&e), e))?;
            let report = verify_plan(&a, &p, &b);
            println!("{}", verification_report_to_json(&report));
            Ok(if report.ok { 0 } else { 1 })
        }
        Cmd::Perturb { input, epsilon } => {
            let b = src.config(&input)?;
            let eps = parse_rational(&epsilon).map_err(|e| fail(rational_code(&e), e))?;
            let sleeve = epsilon_sleeve(&b, &eps).map_err(|e| fail(planner_code(&e), e))?;
            println!("{}", config_to_json(&sleeve));
            Ok(0)
        }
        Cmd::Counterexample { input } => {
            let b = src.config(&input)?;
            let c = converse_counterexample(&b).map_err(|e| fail(planner_code(&e), e))?;
            println!("{}", config_to_json(&c));
            Ok(0)
        }
        Cmd::Predecessors { input } => {
            let b = src.config(&input)?;
            let intervals = (1..=b.n())
                .map(|k| one_step_predecessor_interval(&b, k))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| fail(planner_code(&e), e))?;
            let has = has_predecessor(&b);
            println!("{}", predecessor_report_to_json(has, &intervals));
            Ok(if has { 0 } else { 1 })
        }
        Cmd::Schur {
            concave_sum,
            concave_schur,
            convex_schur: _,
            function,
            input,
            seed,
        } => {
            let f = parse_function(&function)?;
            let text = src.read(&input)?;
            let (x, y, mu) = instance_from_json(&text).map_err(|e| fail(json_code(&e), e))?;
            let report = if concave_sum {
                let inst = MajorizationInstance::new(x, y, DominanceMode::PrefixDominance)
                    .map_err(|e| fail(majorize_code(&e), e))?;
                let mu = mu.unwrap_or_else(|| Rational::from_integer(0.into()));
                check_concave_sum_inequality(&inst, &f, &mu)
            } else if concave_schur {
                let inst = MajorizationInstance::new(x, y, DominanceMode::EqualTotals)
                    .map_err(|e| fail(majorize_code(&e), e))?;
                check_concave_schur(&inst, &f)
            } else {
                check_schur_convex(&x, &y, &f)
            }
            .map_err(|e| fail(majorize_code(&e), e))?;
            if let Some(seed) = seed {
                if let Some((a, b)) = find_concavity_counterexample(&f, 100, seed) {
                    eprintln!(
                        "warning: the test function is not concave; a single slide from {} to {} already breaks the sum inequality",
                        config_to_json(&a),
                        config_to_json(&b)
                    );
                }
            }
            println!("{}", check_report_to_json(&report));
            Ok(if report.holds { 0 } else { 1 })
        }
        Cmd::Oracle {
            input,
            target,
            denominator,
            max_states,
        } => {
            let a = src.config(&input)?;
            let b = src.config(&target)?;
            let spec = LatticeSpec {
                denominator,
                max_states,
            };
            let verdict = lattice_reachable(&a, &b, &spec).map_err(|e| fail(oracle_code(&e), e))?;
            println!("{}", verdict_to_json(&verdict));
            Ok(if verdict.reachable { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            println!("{}", error_to_json(f.code, &f.message));
            ExitCode::from(2)
        }
    }
}
