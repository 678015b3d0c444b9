use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use torus_cobordism::bounds::{report, BoundReport};
use torus_cobordism::export::{profile_csv, profile_json};
use torus_cobordism::planner::{plan_with, validate_plan, CobordismPlan, SearchBudget, Strategy};
use torus_cobordism::stable::{ball_csv, ball_polygon, SpanBasis};
use torus_cobordism::verify::{run_claim, ClaimId, ScanResult};
use torus_cobordism::{signature_at, Error, ProfileCache, Theta, TorusLink};

/// Exact signatures, cobordism-distance bounds and cobordism plans for torus links.
#[derive(Parser)]
#[command(name = "torcob", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Thm1,
    Thm2,
    Prop1,
}

#[derive(Args)]
struct Pair {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Levine–Tristram signature of T(p,q) at θ (default 1/2), or its full profile.
    Sig {
        p: u64,
        q: u64,
        /// Exact fraction NUM/DEN in (0,1).
        #[arg(long, conflicts_with = "profile")]
        theta: Option<Theta>,
        #[arg(long)]
        profile: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Lower and upper bounds for the cobordism distance between T(a,b) and T(c,d).
    Bounds {
        #[arg(required_unless_present = "batch", num_args = 4, value_names = ["A", "B", "C", "D"])]
        params: Vec<u64>,
        /// Largest link parameter the plan search may visit [default: largest input, at most 60].
        #[arg(long)]
        budget: Option<u64>,
        /// Read `a b c d` lines from a file (`-` for stdin) and print one JSON report per line.
        #[arg(long, conflicts_with = "params")]
        batch: Option<String>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// An explicit cobordism from T(a,b) to T(c,d) built from scissor moves.
    Plan {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Check published statements over parameter ranges.
    Verify {
        #[arg(long, required_unless_present = "all", value_parser = parse_claim)]
        claim: Vec<ClaimId>,
        #[arg(long, conflicts_with = "claim")]
        all: bool,
        /// Range bound; its meaning depends on the claim (see `--list`).
        #[arg(long)]
        max: Option<u64>,
        /// Worker threads [default: all cores].
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Print the registered claims and what `--max` bounds for each.
    Claims,
    /// Inner and outer radii of the stable-genus unit ball on span{T(a,b), T(c,d)}.
    Ball {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 64)]
        resolution: u32,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn parse_claim(s: &str) -> Result<ClaimId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn budget(flag: Option<u64>, a: u64, b: u64, c: u64, d: u64) -> SearchBudget {
    SearchBudget::new(flag.unwrap_or_else(|| a.max(b).max(c).max(d).min(60)))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::MalformedTheta(_) | Error::UnknownClaim(_) => 2,
        Error::Domain(_) | Error::Overflow(_) | Error::Precondition(_) => 3,
        Error::Rejected(_) | Error::Io(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = ProfileCache::from_env();
    let mut out = io::stdout().lock();
    match run(cli.command, &cache, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command, cache: &ProfileCache, out: &mut impl Write) -> Result<u8, Error> {
    let text = match command {
        Command::Sig { p, q, theta, profile, format } => sig(p, q, theta, profile, format, cache)?,
        Command::Bounds { params, budget: flag, batch, format } => match batch {
            Some(path) => {
                batch_bounds(&path, flag, cache, out)?;
                return Ok(0);
            }
            None => {
                let [a, b, c, d] = params[..] else { unreachable!("clap enforces four values") };
                render_report(&report(a, b, c, d, budget(flag, a, b, c, d), cache)?, format)
            }
        },
        Command::Plan { pair: Pair { a, b, c, d }, strategy, budget: flag, format } => {
            let strategy = match strategy {
                StrategyArg::Auto => None,
                StrategyArg::Thm1 => Some(Strategy::Theorem1),
                StrategyArg::Thm2 => Some(Strategy::Theorem2),
                StrategyArg::Prop1 => Some(Strategy::Prop1),
            };
            let best = plan_with(strategy, a, b, c, d, budget(flag, a, b, c, d))?;
            render_plan(&best.plan, format)
        }
        Command::Verify { claim, all, max, jobs, format } => {
            let claims = if all { ClaimId::ALL.to_vec() } else { claim };
            return verify(&claims, max, jobs, format, cache, out);
        }
        Command::Claims => {
            let mut s = String::new();
            for c in ClaimId::ALL {
                let (doc, default) = c.range_doc();
                let _ = writeln!(s, "{:<22} {doc} (default N = {default})", c.id());
            }
            s
        }
        Command::Ball { pair: Pair { a, b, c, d }, resolution, budget: flag, format } => {
            let basis = SpanBasis::new(TorusLink::new(a, b)?, TorusLink::new(c, d)?, budget(flag, a, b, c, d), cache)?;
            let rays = ball_polygon(&basis, resolution)?;
            match format {
                Format::Json => serde_json::to_string_pretty(&rays).expect("rays serialize") + "\n",
                Format::Csv => ball_csv(&rays),
                Format::Human => {
                    let mut s = format!("{:>9} {:>9}  {:>10} {:>10}  {:>8} {:>8}\n", "x", "y", "lower_r", "upper_r", "lower", "upper");
                    for r in &rays {
                        let upper = r.upper_radius.map_or("inf".to_string(), |u| format!("{u:.6}"));
                        let _ = writeln!(
                            s,
                            "{:>9.4} {:>9.4}  {:>10.6} {:>10}  {:>8} {:>8}",
                            r.direction_x, r.direction_y, r.lower_radius, upper, r.bounds.lower, r.bounds.upper
                        );
                    }
                    s
                }
            }
        }
    };
    out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))?;
    Ok(0)
}

fn sig(p: u64, q: u64, theta: Option<Theta>, profile: bool, format: Format, cache: &ProfileCache) -> Result<String, Error> {
    let link = TorusLink::new(p, q)?;
    if profile {
        let prof = cache.get(&link);
        return Ok(match format {
            Format::Json => profile_json(&prof) + "\n",
            Format::Csv => profile_csv(&prof),
            Format::Human => {
                let mut s = format!("signature profile of {link} ({} breakpoints)\n", prof.breakpoint_numerators().len());
                let _ = writeln!(s, "  (0, ...)        {}", prof.interval_values()[0]);
                for (th, (at, right)) in prof
                    .breakpoints()
                    .iter()
                    .zip(prof.breakpoint_values().iter().zip(&prof.interval_values()[1..]))
                {
                    let _ = writeln!(s, "  θ = {:<10} {at:>4}   then {right}", th.to_string());
                }
                s
            }
        });
    }
    let theta = theta.unwrap_or_else(Theta::half);
    let value = signature_at(&link, &theta);
    Ok(match format {
        Format::Human => format!("{value}\n"),
        Format::Json => {
            serde_json::json!({ "link": link, "theta": theta, "signature": value }).to_string() + "\n"
        }
        Format::Csv => format!("theta_numerator,theta_denominator,value\n{},{},{value}\n", theta.numer(), theta.denom()),
    })
}

fn render_report(r: &BoundReport, format: Format) -> String {
    let strategy = serde_json::to_value(r.strategy).expect("strategy serializes");
    let strategy = strategy.as_str().unwrap_or_default();
    let ratio = r.gamma_ratio.map_or(String::new(), |g| g.to_string());
    let witness = r.witness_theta.as_ref().map_or(String::new(), |t| t.to_string());
    match format {
        Format::Json => r.to_json_line() + "\n",
        Format::Csv => format!(
            "p1,q1,p2,q2,delta_chi,delta_sigma_sup,tau,upper,f_low,f_high,gamma_ratio,witness_theta,strategy,exhaustive\n\
             {},{},{},{},{},{},{},{},{},{},{ratio},{witness},{strategy},{}\n",
            r.pair.0.p(), r.pair.0.q(), r.pair.1.p(), r.pair.1.q(),
            r.delta_chi, r.delta_sigma_sup, r.tau, r.upper, r.f_interval.0, r.f_interval.1, r.exhaustive
        ),
        Format::Human => {
            let mut s = format!("{} → {}\n", r.pair.0, r.pair.1);
            let _ = writeln!(s, "  |Δχ|              {}", r.delta_chi);
            let at = if witness.is_empty() { String::new() } else { format!("  at θ = {witness}") };
            let _ = writeln!(s, "  sup |Δσ_θ|        {}{at}", r.delta_sigma_sup);
            let _ = writeln!(s, "  lower bound τ     {}", r.tau);
            let _ = writeln!(s, "  upper bound       {}  ({strategy}{})", r.upper, if r.exhaustive { "" } else { ", search budget exhausted" });
            let _ = writeln!(s, "  f in              [{}, {}]", r.f_interval.0, r.f_interval.1);
            if !ratio.is_empty() {
                let _ = writeln!(s, "  upper / τ         {ratio}");
            }
            s.push_str(&plan_lines(&r.plan));
            for n in &r.notes {
                let _ = writeln!(s, "  note: {n}");
            }
            s
        }
    }
}

fn plan_lines(plan: &CobordismPlan) -> String {
    let mut s = String::new();
    if plan.moves.is_empty() {
        s.push_str("  (no moves)\n");
    }
    for (i, m) in plan.moves.iter().enumerate() {
        let _ = writeln!(s, "  {:>2}. {:<9} {} → {}   cost {}", i + 1, m.kind.to_string(), m.source, m.target, m.cost);
    }
    s
}

fn render_plan(plan: &CobordismPlan, format: Format) -> String {
    match format {
        Format::Json => plan.to_json() + "\n",
        Format::Csv => {
            let mut s = String::from("step,kind,source,target,cost\n");
            for (i, m) in plan.moves.iter().enumerate() {
                let kind = serde_json::to_value(m.kind).expect("kind serializes");
                let join = |st: &torus_cobordism::planner::LinkState| {
                    st.params().iter().map(|(p, q)| format!("T({p};{q})")).collect::<Vec<_>>().join("+")
                };
                let _ = writeln!(s, "{},{},{},{},{}", i + 1, kind.as_str().unwrap_or_default(), join(&m.source), join(&m.target), m.cost);
            }
            s
        }
        Format::Human => {
            let valid = if validate_plan(plan).is_valid() { "" } else { " (INVALID)" };
            format!(
                "{} → {}: total cost {} (|Δχ| = {}){valid}\n{}",
                plan.start,
                plan.end,
                plan.total_cost,
                plan.delta_chi(),
                plan_lines(plan)
            )
        }
    }
}

fn batch_bounds(path: &str, flag: Option<u64>, cache: &ProfileCache, out: &mut impl Write) -> Result<(), Error> {
    let io_err = |e: io::Error| Error::Io(e.to_string());
    let reader: Box<dyn BufRead> = if path == "-" {
        Box::new(io::stdin().lock())
    } else {
        Box::new(io::BufReader::new(std::fs::File::open(path).map_err(io_err)?))
    };
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err)?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<u64> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| Error::Domain(format!("line {}: expected four integers", lineno + 1)))?;
        let [a, b, c, d] = nums[..] else {
            return Err(Error::Domain(format!("line {}: expected four integers", lineno + 1)));
        };
        let r = report(a, b, c, d, budget(flag, a, b, c, d), cache)?;
        writeln!(out, "{}", r.to_json_line()).map_err(io_err)?;
    }
    Ok(())
}

fn verify(
    claims: &[ClaimId],
    max: Option<u64>,
    jobs: Option<usize>,
    format: Format,
    cache: &ProfileCache,
    out: &mut impl Write,
) -> Result<u8, Error> {
    let io_err = |e: io::Error| Error::Io(e.to_string());
    let mut results: Vec<ScanResult> = Vec::new();
    for &claim in claims {
        eprintln!("checking {claim} ...");
        let r = run_claim(claim, max, jobs, cache)?;
        eprintln!("  {} cases, {} violations, {:.0} ms", r.checked, r.violations.len(), r.elapsed_ms);
        results.push(r);
    }
    match format {
        Format::Json => {
            for r in &results {
                writeln!(out, "{}", r.to_json_line()).map_err(io_err)?;
            }
        }
        Format::Human | Format::Csv => {
            let human = format == Format::Human;
            if human {
                writeln!(out, "{:<22} {:>5} {:>9} {:>10} {:>8} {:>8} {:>10}", "claim", "N", "checked", "violations", "skipped", "rejected", "ms")
            } else {
                writeln!(out, "claim,max,checked,violations,skipped,rejected,elapsed_ms")
            }
            .map_err(io_err)?;
            for r in &results {
                let row = if human {
                    format!(
                        "{:<22} {:>5} {:>9} {:>10} {:>8} {:>8} {:>10.0}",
                        r.claim_id, r.range.max, r.checked, r.violations.len(), r.skipped, r.rejected, r.elapsed_ms
                    )
                } else {
                    format!(
                        "{},{},{},{},{},{},{:.1}",
                        r.claim_id, r.range.max, r.checked, r.violations.len(), r.skipped, r.rejected, r.elapsed_ms
                    )
                };
                writeln!(out, "{row}").map_err(io_err)?;
                if human && !r.holds() {
                    let shown: Vec<String> = r.violations.iter().take(8).map(|v| format!("{v:?}")).collect();
                    writeln!(out, "    counterexamples: {}", shown.join(" ")).map_err(io_err)?;
                }
            }
        }
    }
    Ok(if results.iter().all(ScanResult::holds) { 0 } else { 1 })
}
