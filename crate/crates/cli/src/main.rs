//! `grossone`: evaluate gross-number expressions, sum series with a gross
//! number of items, and compute probabilities from the command line.

use std::fs;
use std::io::{self, BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use grossone::eval::{evaluate, evaluate_value, DivisionMode, Env, EvalError, Outcome};
use grossone::numio::{
    parse_expression_with_cap, parse_statement_with_cap, print_canonical, PrintMode, SyntaxError,
};
use grossone::setcalc::{event_extent, EventExtent, ProbabilityModel, SetError};
use grossone::summation::{
    sum_alternating_polynomial, sum_finite_generic, sum_polynomial, validate_item_count,
    PolynomialSummand, SumError,
};
use grossone::{GrossError, GrossNumber};

#[derive(Parser)]
#[command(
    name = "grossone",
    version,
    about = "Exact arithmetic with infinite and infinitesimal numbers"
)]
struct Cli {
    /// Truncate non-exact quotients to N terms instead of failing.
    #[arg(long, global = true, value_name = "N", value_parser = positive)]
    div_truncate: Option<usize>,

    /// Output format: `exact` or `decimal:D` (rounded to D digits after the point).
    #[arg(long, global = true, value_name = "FORMAT", default_value = "exact", value_parser = print_mode)]
    format: PrintMode,

    /// Maximum nesting of grosspowers accepted by the parser.
    #[arg(long, global = true, value_name = "N", default_value_t = grossone::numio::DEFAULT_DEPTH_CAP, value_parser = positive)]
    depth_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one expression and print the result.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Sum a polynomial summand over i = 1..upper.
    Sum {
        #[arg(long, allow_hyphen_values = true)]
        summand: String,
        #[arg(long, default_value = "i")]
        var: String,
        /// Number of items; may be infinite, e.g. `2*G1 - 1`.
        #[arg(long, allow_hyphen_values = true)]
        upper: String,
        /// Alternate signs: p(1) - p(2) + p(3) - ...
        #[arg(long)]
        alternating: bool,
    },
    /// Probability of an event with `favorable` outcomes out of `total`.
    Prob {
        #[arg(long, allow_hyphen_values = true)]
        total: String,
        #[arg(long, allow_hyphen_values = true)]
        favorable: String,
    },
    /// Interactive session; reads statements from stdin or a script file.
    Repl {
        #[arg(long, value_name = "FILE")]
        script: Option<PathBuf>,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("'{s}' is not a positive integer")),
    }
}

fn print_mode(s: &str) -> Result<PrintMode, String> {
    if s == "exact" {
        return Ok(PrintMode::Exact);
    }
    s.strip_prefix("decimal:")
        .and_then(|d| positive(d).ok())
        .map(PrintMode::Decimal)
        .ok_or_else(|| format!("'{s}' is not 'exact' or 'decimal:D' with D >= 1"))
}

struct Config {
    division: DivisionMode,
    format: PrintMode,
    depth_cap: usize,
}

enum Failure {
    Usage(String),
    Syntax(SyntaxError),
    Eval(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Syntax(_) => 2,
            Failure::Eval(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Eval(m) => m.clone(),
            Failure::Syntax(e) => e.to_string(),
        }
    }
}

impl From<SyntaxError> for Failure {
    fn from(e: SyntaxError) -> Self {
        Failure::Syntax(e)
    }
}

macro_rules! eval_failure {
    ($($t:ty),*) => {
        $(impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Eval(e.to_string())
            }
        })*
    };
}

eval_failure!(EvalError, SumError, SetError, GrossError);

impl Config {
    fn env(&self) -> Env {
        Env::with_division(self.division)
    }

    fn show(&self, x: &GrossNumber) -> String {
        print_canonical(x, self.format)
    }

    fn number(&self, text: &str, env: &Env) -> Result<GrossNumber, Failure> {
        let expr = parse_expression_with_cap(text, self.depth_cap)?;
        Ok(evaluate(&expr, env)?)
    }
}

fn cmd_eval(cfg: &Config, text: &str) -> Result<(), Failure> {
    let expr = parse_expression_with_cap(text, cfg.depth_cap)?;
    println!("{}", evaluate_value(&expr, &cfg.env())?.render(cfg.format));
    Ok(())
}

fn cmd_sum(
    cfg: &Config,
    summand: &str,
    var: &str,
    upper: &str,
    alternating: bool,
) -> Result<(), Failure> {
    let env = cfg.env();
    let expr = parse_expression_with_cap(summand, cfg.depth_cap)?;
    let k = cfg.number(upper, &env)?;
    validate_item_count(&k)?;
    let total = match PolynomialSummand::from_expr(&expr, var, &env) {
        Ok(p) if alternating => sum_alternating_polynomial(&p, &k)?,
        Ok(p) => sum_polynomial(&p, &k),
        Err(SumError::NotPolynomial { .. }) if k.is_finite() => {
            let n = k
                .as_integer()
                .and_then(|n| u64::try_from(n).ok())
                .ok_or_else(|| Failure::Eval(format!("item count {k} is too large to iterate")))?;
            if alternating {
                alternating_by_iteration(&expr, var, n, &env)?
            } else {
                sum_finite_generic(&expr, var, n, &env)?
            }
        }
        Err(e) => return Err(e.into()),
    };
    println!("{}", cfg.show(&total));
    Ok(())
}

fn alternating_by_iteration(
    expr: &grossone::numio::Expr,
    var: &str,
    n: u64,
    env: &Env,
) -> Result<GrossNumber, EvalError> {
    let mut scope = env.clone();
    let mut total = GrossNumber::zero();
    for i in 1..=n {
        scope.bind(var, GrossNumber::from_int(i));
        let term = evaluate(expr, &scope)?;
        total = if i % 2 == 1 {
            total + term
        } else {
            total - term
        };
    }
    Ok(total)
}

fn cmd_prob(cfg: &Config, total: &str, favorable: &str) -> Result<(), Failure> {
    let env = cfg.env();
    let model = ProbabilityModel::new(cfg.number(total, &env)?, cfg.number(favorable, &env)?)?;
    let p = model.probability()?;
    println!("{}", cfg.show(&p));
    println!("{:?}", model.classify_event()?);
    println!(
        "{}",
        match event_extent(model.favorable()) {
            Some(EventExtent::Point) => "Point",
            Some(EventExtent::Arc) => "Arc",
            None => "none",
        }
    );
    Ok(())
}

fn repl_line(cfg: &Config, env: &mut Env, line: &str) -> Result<Option<String>, Failure> {
    let stmt = parse_statement_with_cap(line, cfg.depth_cap)?;
    Ok(match env.execute(stmt)? {
        Outcome::Value(v) => Some(v.render(cfg.format)),
        Outcome::Bound(..) | Outcome::Defined(_) => None,
    })
}

fn cmd_repl(cfg: &Config, script: Option<PathBuf>) -> Result<(), Failure> {
    let input: Box<dyn BufRead> = match &script {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Box::new(io::Cursor::new(text))
        }
        None => Box::new(io::stdin().lock()),
    };
    let interactive = script.is_none() && io::stdin().is_terminal();
    let mut env = cfg.env();
    let mut lines = input.lines().enumerate();
    loop {
        if interactive {
            print!("> ");
            io::stdout().flush().ok();
        }
        let Some((n, line)) = lines.next() else { break };
        let line = line.map_err(|e| Failure::Usage(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == ":quit" {
            break;
        }
        match repl_line(cfg, &mut env, line) {
            Ok(Some(out)) => println!("{out}"),
            Ok(None) => {}
            Err(f) => match &script {
                Some(path) => eprintln!("error: {}:{}: {}", path.display(), n + 1, f.message()),
                None => eprintln!("error: {}", f.message()),
            },
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = Config {
        division: cli
            .div_truncate
            .map_or(DivisionMode::ExactOnly, DivisionMode::Truncate),
        format: cli.format,
        depth_cap: cli.depth_cap,
    };
    match cli.command {
        Command::Eval { expr } => cmd_eval(&cfg, &expr),
        Command::Sum {
            summand,
            var,
            upper,
            alternating,
        } => cmd_sum(&cfg, &summand, &var, &upper, alternating),
        Command::Prob { total, favorable } => cmd_prob(&cfg, &total, &favorable),
        Command::Repl { script } => cmd_repl(&cfg, script),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
