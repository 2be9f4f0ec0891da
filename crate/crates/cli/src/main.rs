//! Command-line front end: cosets, factorizations, cyclic codes, self-dual
//! enumeration, and an oracle-backed verification mode.
//!
//! Exit codes: 0 success, 2 input validation, 3 resource cap, 1 internal
//! consistency failure. Output is byte-identical across runs.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cyclotomic::codes::{self, CodeFamily};
use cyclotomic::cosets::{self, Coset, CosetSpec, SplitKind};
use cyclotomic::factorizer;
use cyclotomic::intarith;
use cyclotomic::{Error, Result};

/// Listing cap: moduli handled by the coset listing paths.
const MAX_LISTING_MODULUS: u64 = 1 << 31;
/// Factorization paths reject orders beyond this at validation.
const MAX_FACTOR_ORDER: u64 = 64;

#[derive(Parser)]
#[command(
    name = "cyclo",
    version,
    about = "Cyclotomic cosets, factorizations of X^n - 1, and cyclic codes over F_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the q-cyclotomic cosets modulo n.
    Cosets {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also print the doubling-chain levels modulo n'*2^i for i < depth.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Factor X^n - 1 over F_q (or Phi_n with --phi).
    Factor {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Factor the cyclotomic polynomial Phi_n instead of X^n - 1.
        #[arg(long)]
        phi: bool,
    },
    /// Factor the cyclotomic polynomial Phi_n over F_q.
    Phi {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Enumerate the cyclic codes of length m over F_q.
    Codes {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Emit at most this many codes.
        #[arg(long)]
        limit: Option<u64>,
        /// Print only the total count.
        #[arg(long)]
        count_only: bool,
    },
    /// Enumerate the self-dual cyclic codes of length m over F_q.
    Selfdual {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        count_only: bool,
    },
    /// Run the oracle cross-checks for one instance (q, n).
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome { output, ok }) => {
            print!("{output}");
            if !ok {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(match e {
                Error::Domain(_) => 2,
                Error::Resource(_) => 3,
                Error::Internal(_) => 1,
            });
        }
    }
}

struct Outcome {
    output: String,
    ok: bool,
}

impl Outcome {
    fn pass(output: String) -> Self {
        Outcome { output, ok: true }
    }
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Cosets { q, n, format, depth } => cmd_cosets(q, n, format, depth),
        Command::Factor { q, n, format, phi } => cmd_factor(q, n, format, phi),
        Command::Phi { q, n, format } => cmd_factor(q, n, format, true),
        Command::Codes {
            q,
            m,
            format,
            limit,
            count_only,
        } => cmd_codes(q, m, format, limit, count_only),
        Command::Selfdual {
            q,
            m,
            format,
            limit,
            count_only,
        } => cmd_selfdual(q, m, format, limit, count_only),
        Command::Verify { q, n, format } => cmd_verify(q, n, format),
    }
}

fn check_listing_cap(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if n >= MAX_LISTING_MODULUS {
        return Err(Error::resource(format!(
            "modulus {n} exceeds the listing cap 2^31"
        )));
    }
    Ok(())
}

fn check_factor_cap(spec: &CosetSpec) -> Result<u64> {
    let ord = intarith::mult_order(spec.q(), spec.n())?;
    if ord > MAX_FACTOR_ORDER {
        return Err(Error::resource(format!(
            "ord_n(q) = {ord} exceeds the factorization cap {MAX_FACTOR_ORDER}"
        )));
    }
    Ok(ord)
}

fn orbit_string(c: &Coset) -> String {
    let elems: Vec<String> = c.orbit().iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", elems.join(","))
}

fn cmd_cosets(q: u64, n: u64, format: Format, depth: Option<u32>) -> Result<Outcome> {
    check_listing_cap(n)?;
    let spec = CosetSpec::new(q, n)?;
    let chain = cosets::doubling_chain(&spec)?;
    let final_level = chain.final_level();
    let (e0, _) = spec.two_part();
    let trace_levels = depth.map_or(0, |d| d.min(e0)) as usize;

    match format {
        Format::Table => {
            let mut out = String::new();
            for level in chain.levels.iter().take(trace_levels) {
                let m = level[0].modulus();
                let blocks: Vec<String> = level.iter().map(orbit_string).collect();
                out.push_str(&format!("modulus {m}: {}\n", blocks.join(" ")));
            }
            out.push_str(&format!(
                "q-cyclotomic cosets: q = {q}, n = {n} ({} cosets)\n",
                final_level.len()
            ));
            out.push_str("rep\tsize\telements\n");
            for c in final_level {
                out.push_str(&format!(
                    "{}\t{}\t{}\n",
                    c.representative(),
                    c.size(),
                    orbit_string(c)
                ));
            }
            Ok(Outcome::pass(out))
        }
        Format::Json => {
            let levels: Vec<_> = chain
                .levels
                .iter()
                .take(trace_levels)
                .map(|level| {
                    json!({
                        "modulus": level[0].modulus(),
                        "cosets": level.iter().map(|c| json!({
                            "rep": c.representative(),
                            "size": c.size(),
                            "elements": c.orbit(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let v = json!({
                "schema": 1,
                "q": q,
                "n": n,
                "count": final_level.len(),
                "cosets": final_level.iter().map(|c| json!({
                    "rep": c.representative(),
                    "leader": c.leader(),
                    "size": c.size(),
                    "elements": c.orbit(),
                })).collect::<Vec<_>>(),
                "levels": levels,
            });
            Ok(Outcome::pass(format!("{v}\n")))
        }
    }
}

fn cmd_factor(q: u64, n: u64, format: Format, phi: bool) -> Result<Outcome> {
    check_listing_cap(n)?;
    let spec = CosetSpec::new(q, n)?;
    check_factor_cap(&spec)?;
    let f = if phi {
        factorizer::factor_cyclotomic(&spec)?
    } else {
        factorizer::factor_xn_minus_1(&spec)?
    };
    // Certify before printing: the product must reconstruct the modulus.
    if f.product() != f.modulus_poly {
        return Err(Error::internal("factor product does not reconstruct the modulus"));
    }
    match format {
        Format::Table => {
            let name = if phi {
                format!("Phi_{n}")
            } else {
                format!("X^{n} - 1")
            };
            let mut out = format!(
                "factorization of {name} over F_{q} ({} factors)\n",
                f.factors.len()
            );
            out.push_str("rep\tsize\tpoly\n");
            for e in &f.factors {
                out.push_str(&format!("{}\t{}\t{}\n", e.rep, e.size, e.poly));
            }
            Ok(Outcome::pass(out))
        }
        Format::Json => {
            let mut v = f.to_json();
            v["schema"] = json!(1);
            v["phi"] = json!(phi);
            Ok(Outcome::pass(format!("{v}\n")))
        }
    }
}

fn cmd_codes(
    q: u64,
    m: u64,
    format: Format,
    limit: Option<u64>,
    count_only: bool,
) -> Result<Outcome> {
    check_listing_cap(m)?;
    let family = CodeFamily::new(q, m)?;
    let count = family.code_count()?;
    if count_only {
        return Ok(Outcome::pass(format!("{count}\n")));
    }
    let cap = limit.unwrap_or(u64::MAX) as usize;
    let codes: Vec<_> = family.enumerate_codes().take(cap).collect();
    match format {
        Format::Table => {
            let mut out = format!("cyclic codes: q = {q}, m = {m} ({count} total)\n");
            out.push_str("dim\tgenerator\n");
            for c in &codes {
                out.push_str(&format!("{}\t{}\n", c.dim, c.generator));
            }
            Ok(Outcome::pass(out))
        }
        Format::Json => {
            let items: Vec<_> = codes
                .iter()
                .map(|c| {
                    let self_dual = family.dual_code(c).map(|d| d == *c).unwrap_or(false);
                    codes::code_to_json(&family, c, self_dual)
                })
                .collect();
            let v = json!({
                "schema": 1,
                "q": q,
                "m": m,
                "count": count.to_string(),
                "codes": items,
            });
            Ok(Outcome::pass(format!("{v}\n")))
        }
    }
}

fn cmd_selfdual(
    q: u64,
    m: u64,
    format: Format,
    limit: Option<u64>,
    count_only: bool,
) -> Result<Outcome> {
    check_listing_cap(m)?;
    let family = CodeFamily::new(q, m)?;
    let classification = family.selfdual_classify()?;
    if count_only {
        return Ok(Outcome::pass(format!("{}\n", classification.count)));
    }
    let cap = limit.unwrap_or(u64::MAX) as usize;
    let codes: Vec<_> = family.selfdual_enumerate()?.take(cap).collect();
    match format {
        Format::Table => {
            let mut out = format!(
                "self-dual cyclic codes: q = {q}, m = {m} ({} total)\n",
                classification.count
            );
            out.push_str("dim\tgenerator\n");
            for c in &codes {
                out.push_str(&format!("{}\t{}\n", c.dim, c.generator));
            }
            Ok(Outcome::pass(out))
        }
        Format::Json => {
            let items: Vec<_> = codes
                .iter()
                .map(|c| codes::code_to_json(&family, c, true))
                .collect();
            let v = json!({
                "schema": 1,
                "q": q,
                "m": m,
                "count": classification.count.to_string(),
                "codes": items,
            });
            Ok(Outcome::pass(format!("{v}\n")))
        }
    }
}

struct Check {
    name: &'static str,
    ok: bool,
    detail: String,
}

fn cmd_verify(q: u64, n: u64, format: Format) -> Result<Outcome> {
    check_listing_cap(n)?;
    let spec = CosetSpec::new(q, n)?;
    let mut checks = Vec::new();

    let oracle = cosets::cosets_oracle(&spec)?;
    let oracle_partition = cosets::canonical_partition(&oracle);

    // Closed-form transversal expands to the oracle partition.
    let reps = cosets::transversal(&spec)?;
    let expanded: Vec<Coset> = reps
        .iter()
        .map(|r| Coset::from_representative(n, q, r.rep()))
        .collect();
    checks.push(Check {
        name: "transversal-partition",
        ok: cosets::canonical_partition(&expanded) == oracle_partition,
        detail: format!("{} cosets", reps.len()),
    });
    let sizes_ok = reps.iter().zip(&expanded).all(|(r, c)| r.size() == c.size());
    checks.push(Check {
        name: "closed-form-sizes",
        ok: sizes_ok,
        detail: String::new(),
    });
    checks.push(Check {
        name: "size-sum",
        ok: reps.iter().map(|r| r.size()).sum::<u64>() == n,
        detail: format!("sum = {n}"),
    });

    // Doubling chain agrees with the oracle.
    let chain = cosets::doubling_chain(&spec)?;
    checks.push(Check {
        name: "doubling-chain",
        ok: cosets::canonical_partition(chain.final_level()) == oracle_partition,
        detail: format!("{} levels", chain.levels.len()),
    });

    // Splitting dichotomy along every chain level.
    if q % 2 == 1 {
        let mut ok = true;
        let mut detail = String::new();
        'outer: for level in &chain.levels {
            let m = level[0].modulus();
            let doubled = cosets::orbit_partition(2 * m, q % (2 * m))?;
            for c in level {
                // A modulus-2m coset projects onto exactly one modulus-m coset.
                let preimages = doubled
                    .iter()
                    .filter(|d| {
                        Coset::from_representative(m, q, d.representative() % m).leader()
                            == c.leader()
                    })
                    .count();
                let predicted = match cosets::split_test(m, q, c.representative(), c.size())? {
                    SplitKind::Splitting => 2,
                    SplitKind::Stable => 1,
                };
                if preimages != predicted {
                    ok = false;
                    detail = format!("coset {} mod {m}", c.representative());
                    break 'outer;
                }
            }
        }
        checks.push(Check {
            name: "split-dichotomy",
            ok,
            detail,
        });
    }

    // Factorization checks when the splitting field is desk-sized.
    let ord = intarith::mult_order(q, n)?;
    if ord <= 16 && spec.ext_degree() as u64 * ord <= 48 {
        let f = factorizer::factor_xn_minus_1(&spec)?;
        checks.push(Check {
            name: "factor-multiply-back",
            ok: f.product() == f.modulus_poly,
            detail: format!("{} factors", f.factors.len()),
        });
        let mut irr = true;
        for e in &f.factors {
            if !e.poly.is_irreducible()? || e.poly.degree() != Some(e.size as usize) {
                irr = false;
            }
        }
        checks.push(Check {
            name: "factor-irreducible",
            ok: irr,
            detail: String::new(),
        });
        let fc = factorizer::FactorContext::new(&spec)?;
        let mut routes = true;
        for c in &oracle {
            let a = factorizer::minimal_poly_direct(&fc, c)?;
            let b = factorizer::minimal_poly_equal_difference(&fc, c)?;
            if a != b {
                routes = false;
            }
        }
        checks.push(Check {
            name: "route-equivalence",
            ok: routes,
            detail: String::new(),
        });
        let phi = factorizer::factor_cyclotomic(&spec)?;
        let phi_direct = factorizer::phi_poly(f.modulus_poly.ctx(), n)?;
        checks.push(Check {
            name: "phi-cross-check",
            ok: phi.product() == phi_direct,
            detail: String::new(),
        });
    }

    // Strata counting for the self-dual setting.
    if q % 2 == 0 && n % 2 == 1 && ord <= 16 && spec.ext_degree() as u64 * ord <= 48 {
        let counts = codes::count_cosets(&spec)?;
        let family = CodeFamily::new(q, n)?;
        let enumerated = (0..family.reps().len())
            .filter(|&i| family.self_reciprocal_test(i).unwrap_or(false))
            .count() as u64;
        checks.push(Check {
            name: "strata-counts",
            ok: counts.sigma as usize == oracle.len() && counts.sigma_prime == enumerated,
            detail: format!("sigma = {}", counts.sigma),
        });
    }

    let all_ok = checks.iter().all(|c| c.ok);
    match format {
        Format::Table => {
            let mut out = format!("verify: q = {q}, n = {n}\n");
            for c in &checks {
                if c.ok {
                    out.push_str(&format!("ok {}\n", c.name));
                } else {
                    out.push_str(&format!("FAIL {} {}\n", c.name, c.detail));
                }
            }
            out.push_str(&format!(
                "result: {} ({} checks)\n",
                if all_ok { "PASS" } else { "FAIL" },
                checks.len()
            ));
            Ok(Outcome {
                output: out,
                ok: all_ok,
            })
        }
        Format::Json => {
            let v = json!({
                "schema": 1,
                "q": q,
                "n": n,
                "checks": checks.iter().map(|c| json!({
                    "name": c.name,
                    "ok": c.ok,
                })).collect::<Vec<_>>(),
                "ok": all_ok,
            });
            Ok(Outcome {
                output: format!("{v}\n"),
                ok: all_ok,
            })
        }
    }
}
