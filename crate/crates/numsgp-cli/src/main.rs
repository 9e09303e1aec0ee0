use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use numsgp::enumerate::{self, CacheStatus, Check};
use numsgp::{classify, endo, twobranch, Error, NumericalSemigroup, RelativeIdeal};

#[derive(Parser)]
#[command(
    name = "numsgp",
    version,
    about = "Exact classification and exhaustive verification for numerical semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a semigroup and report on its endomorphism semigroup
    Analyze {
        /// Minimal generators, comma separated, e.g. "6,7,9,17"
        semigroup: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check whether an ideal is almost canonical, with every route shown
    IdealCheck {
        /// Ideal in the form "0,1,3 @ 6,7,9,17"
        ideal: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Report on T = M - M and the endomorphism-side checks
    Endo {
        /// Minimal generators, comma separated
        semigroup: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the theorem checks over every semigroup up to a genus bound
    Verify {
        #[arg(long, default_value_t = 8)]
        max_genus: i64,
        /// Comma-separated check names, or "all"
        #[arg(long, default_value = "all")]
        checks: String,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Directory holding the enumeration cache
        #[arg(long, env = "NUMSGP_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
        /// Abort once the enumeration has visited this many nodes
        #[arg(long)]
        node_cap: Option<u64>,
    },
    /// Tabulate class counts per genus
    Census {
        #[arg(long, default_value_t = 8)]
        max_genus: i64,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, env = "NUMSGP_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        node_cap: Option<u64>,
    },
    /// Verify the two-branch containment chain
    Twobranch {
        /// Fixture file; defaults to the bundled transcription
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::NodeCapExceeded(_) => ExitCode::from(3),
                Error::CensusMismatch(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
    }
}

/// JSON with deterministically sorted keys.
fn print_json<T: serde::Serialize>(value: &T) {
    let v = serde_json::to_value(value).expect("serializable");
    println!("{}", serde_json::to_string_pretty(&v).expect("printable"));
}

fn no_csv() -> Error {
    Error::Parse("csv output is only available for verify and census".into())
}

fn parse_checks(text: &str) -> Result<Vec<Check>, Error> {
    if text.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    text.split(',').map(|t| t.trim().parse()).collect()
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Analyze { semigroup, format } => {
            let s = Arc::new(semigroup.parse::<NumericalSemigroup>()?);
            let report = classify::classify(&s);
            let er = endo::endo_report(&s);
            match format {
                Format::Csv => return Err(no_csv()),
                Format::Json => {
                    let v = serde_json::json!({
                        "classification": serde_json::to_value(&report).expect("serializable"),
                        "endo": serde_json::to_value(&er).expect("serializable"),
                    });
                    print_json(&v);
                }
                Format::Text => {
                    println!("semigroup:           {}", s);
                    println!("genus:               {}", s.genus());
                    println!("frobenius:           {}", s.frobenius());
                    println!("multiplicity:        {}", s.multiplicity());
                    println!("embedding dimension: {}", s.embedding_dimension());
                    println!("type:                {}", report.semigroup_type);
                    println!("symmetric:           {}", report.is_symmetric);
                    println!("almost symmetric:    {}", report.is_almost_symmetric);
                    println!("GAS:                 {}", report.is_gas);
                    println!("2-AGL:               {}", report.is_two_agl);
                    println!("MED:                 {}", report.is_med);
                    println!("agl length:          {}", report.agl_length);
                    println!("omega stable:        {}", report.omega_stable);
                    println!("T = M - M:           {}", er.t);
                    match &er.omega {
                        Some(omega) => println!("omega over T:        {}", omega),
                        None => println!("omega over T:        (not defined: S is all of N)"),
                    }
                    println!("symmetric T:         {}", er.symmetric_t);
                    println!("almost symmetric T:  {}", er.almost_symmetric_t);
                    println!("endo checks hold:    {}", er.verdicts.all_hold());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::IdealCheck { ideal, format } => {
            let e = ideal.parse::<RelativeIdeal>()?;
            let routes = classify::almost_canonical_routes(&e);
            let agree = routes.iter().all(|r| r.1 == routes[0].1);
            let verdict = agree && routes[0].1;
            match format {
                Format::Csv => return Err(no_csv()),
                Format::Json => {
                    let route_map: serde_json::Map<String, serde_json::Value> = routes
                        .iter()
                        .map(|&(name, v)| (name.to_string(), serde_json::Value::Bool(v)))
                        .collect();
                    print_json(&serde_json::json!({
                        "ideal": e.to_string(),
                        "routes": route_map,
                        "routes_agree": agree,
                        "almost_canonical": verdict,
                    }));
                }
                Format::Text => {
                    println!("ideal: {}", e);
                    for (name, v) in &routes {
                        println!("route {:<12} {}", name, v);
                    }
                    if !agree {
                        println!("routes DISAGREE (implementation defect)");
                    }
                    println!("almost canonical: {}", verdict);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Endo { semigroup, format } => {
            let s = Arc::new(semigroup.parse::<NumericalSemigroup>()?);
            let er = endo::endo_report(&s);
            match format {
                Format::Csv => return Err(no_csv()),
                Format::Json => print_json(&er),
                Format::Text => {
                    println!("semigroup:          {}", s);
                    println!("T = M - M:          {}", er.t);
                    println!("N (maximal of T):   {}", er.n);
                    match &er.omega {
                        Some(omega) => println!("omega over T:       {}", omega),
                        None => println!("omega over T:       (not defined: S is all of N)"),
                    }
                    println!("symmetric T:        {}", er.symmetric_t);
                    println!("almost symmetric T: {}", er.almost_symmetric_t);
                    let v = er.verdicts;
                    println!("canonical postconditions: {}", v.canonical_postconditions);
                    println!("AS parts (1,2,3):   {} {} {}",
                        v.almost_symmetric_part1, v.almost_symmetric_part2, v.symmetric_endo_part3);
                    println!("main theorem:       {}", v.main_theorem);
                    println!("final corollary:    {}", v.final_corollary);
                    println!("2-AGL under MED:    {}", v.two_agl_under_med);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            max_genus,
            checks,
            jobs,
            format,
            cache_dir,
            node_cap,
        } => {
            let checks = parse_checks(&checks)?;
            let (count, status, ces) = with_pool(jobs, || -> Result<_, Error> {
                let (semigroups, status) =
                    enumerate::load_or_enumerate(cache_dir.as_deref(), max_genus, node_cap)?;
                let ces = enumerate::verify_semigroups(&semigroups, &checks);
                Ok((semigroups.len(), status, ces))
            })?;
            if let CacheStatus::Rewritten(reason) = &status {
                eprintln!("note: cache was invalid ({}); rebuilt", reason);
            }
            match format {
                Format::Csv => print!("{}", enumerate::counterexamples_csv(&ces)),
                Format::Json => print_json(&ces),
                Format::Text => {
                    if ces.is_empty() {
                        println!(
                            "verified {} semigroups up to genus {}: no counterexamples",
                            count, max_genus
                        );
                    } else {
                        print!("{}", enumerate::counterexamples_csv(&ces));
                    }
                }
            }
            Ok(if ces.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Census {
            max_genus,
            jobs,
            format,
            cache_dir,
            node_cap,
        } => {
            let rows = with_pool(jobs, || {
                enumerate::census_with_cache(cache_dir.as_deref(), max_genus, node_cap)
            })?;
            match format {
                Format::Csv => print!("{}", enumerate::census_csv(&rows)),
                Format::Json => print_json(&rows),
                Format::Text => {
                    println!(
                        "{:>5} {:>8} {:>9} {:>16} {:>7} {:>7} {:>7}",
                        "genus", "total", "symmetric", "almost_symmetric", "2agl", "gas", "med"
                    );
                    for r in &rows {
                        println!(
                            "{:>5} {:>8} {:>9} {:>16} {:>7} {:>7} {:>7}",
                            r.genus, r.total, r.symmetric, r.almost_symmetric, r.two_agl, r.gas,
                            r.med
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Twobranch { fixture, format } => {
            let text = match fixture {
                Some(path) => std::fs::read_to_string(path)?,
                None => twobranch::CANONICAL_FIXTURE.to_string(),
            };
            let report = twobranch::two_branch_report(&text)?;
            match format {
                Format::Csv => return Err(no_csv()),
                Format::Json => print_json(&report),
                Format::Text => {
                    println!("v(R) inside K:                {}", report.ring_in_canonical);
                    println!("v(R) inside v(B):             {}", report.ring_in_endomorphism_ring);
                    println!("v(m)+K+v(J) inside [6,oo)^2:  {}", report.product_in_conductor_cone);
                    println!("[6,oo)^2 inside v(R):         {}", report.conductor_cone_in_ring);
                    println!("(0,1) in K but not v(R):      {}", report.gap_above_origin);
                    println!("(3,3) in v(R):                {}", report.multiplicity_point_in_ring);
                    println!("{}", report.verdict());
                }
            }
            Ok(if report.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
