use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dpff_core::census::{self, c14_certificate_name, CensusReport, DP2_CERTIFICATE_NAME};
use dpff_core::construct::{dp2_class35_surface, make_c14_surface};
use dpff_core::cubic::classify::default_weil_range;
use dpff_core::cubic::{certify, CubicSurface};
use dpff_core::dp2::{certify_dp2, ConicBundleSurface};
use dpff_core::ff::prime::prime_power;
use dpff_core::ff::Gf;
use dpff_core::weyl::{e6, e7, WeylTable};

/// Frobenius classes of cubic and degree-2 del Pezzo surfaces over finite fields.
#[derive(Parser)]
#[command(name = "dpff", version)]
struct Cli {
    /// Directory for reports and certificates.
    #[arg(long, global = true, env = "DPFF_WORKDIR", default_value = "dpff-out")]
    workdir: PathBuf,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Root {
    E6,
    E7,
}

#[derive(Subcommand)]
enum Cmd {
    /// Conjugacy classes as CSV on stdout.
    WeylTable { root: Root },
    /// Classifies every cubic over GF(2), or random ones with --sample.
    Census {
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Draw this many random forms instead of enumerating.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Six points of P^2(GF(q)) in general position, or proof there are none.
    ArcSearch {
        #[arg(long)]
        q: u64,
    },
    /// Builds and certifies a cubic surface of the order-9 class.
    ConstructC14 {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certifies the fixed conic bundle over GF(3).
    ConstructDp2_35,
    /// Classifies a cubic from its 20 coefficients (monomials x0^3, x0^2 x1, ..., x3^3).
    Classify {
        #[arg(long)]
        q: u64,
        #[arg(long, num_args = 1.., required = true, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<i64>,
    },
    /// Certifies a conic bundle from 18 coefficients (Q0, Q1, Q2, each over x^2, xy, xz, y^2, yz, z^2).
    VerifyDp2 {
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[arg(long, num_args = 1.., value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<i64>>,
        /// Extension degrees checked by enumerating P^1 x P^2.
        #[arg(long, default_value_t = 2)]
        brute: u32,
    },
    /// Runs every construction for each q and writes the certificates.
    RealizeAll {
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        q_list: Vec<u64>,
    },
}

fn reduce(q: u64, c: &[i64], len: usize) -> Result<Vec<u64>> {
    if c.len() != len {
        bail!("expected {len} coefficients, got {}", c.len());
    }
    let (p, k) = prime_power(q).with_context(|| format!("{q} is not a prime power"))?;
    if k > 1 && c.iter().any(|&v| v < 0) {
        bail!("negative coefficients are only meaningful over a prime field");
    }
    Ok(c.iter().map(|&v| if k == 1 { v.rem_euclid(p as i64) as u64 } else { v as u64 }).collect())
}

fn write_json(dir: &Path, name: &str, v: &impl Serialize) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(v)? + "\n").with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn print_json(v: &impl Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn weyl_table(t: &WeylTable) -> Result<()> {
    let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut w = csv::Writer::from_writer(std::io::stdout());
    w.write_record(["id", "alias", "order", "size", "cycle_type", "char_poly", "traces"])?;
    for c in &t.classes {
        let cycles: Vec<i64> = c.cycle_type.iter().map(|&x| x as i64).collect();
        w.write_record([
            c.id.clone(),
            c.alias.clone().unwrap_or_default(),
            c.order.to_string(),
            c.size.to_string(),
            join(&cycles),
            join(&c.char_poly),
            join(&c.traces),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn census_csv(r: &CensusReport, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["schema", "class_id", "alias", "order", "t1", "t2", "t3", "t4", "count", "representative"])?;
    for c in &r.classes {
        let rep = c.representative.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).unwrap_or_default();
        let mut row = vec![r.schema.clone(), c.class_id.clone(), c.alias.clone().unwrap_or_default(), c.order.to_string()];
        row.extend(c.traces.iter().map(|t| t.to_string()));
        row.extend([c.count.to_string(), rep]);
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn run_census(dir: &Path, q: u64, sample: Option<u64>, seed: u64) -> Result<bool> {
    if let Some(n) = sample {
        let r = census::census_sample(q, n, seed)?;
        let path = write_json(dir, &format!("census_sample_q{q}_s{seed}.json"), &r)?;
        let found = r.classes.iter().filter(|c| c.count > 0).count();
        println!("q={q}: {n} drawn, {} smooth, {} singular, {} failures, {found} classes seen; report {}", r.smooth, r.singular, r.failures, path.display());
        return Ok(r.failures == 0);
    }
    let r = census::census_cubic(q, 256)?;
    fs::create_dir_all(dir)?;
    let csv_path = dir.join(format!("census_q{q}.csv"));
    census_csv(&r, &csv_path)?;
    let json_path = write_json(dir, &format!("census_q{q}.json"), &r)?;
    let present = r.present().count();
    let absent = r.absent().count();
    let identity_absent = r.classes.iter().any(|c| c.order == 1 && c.count == 0);
    let rechecked = census::recheck_samples(&r, usize::MAX)?;
    println!(
        "q={q}: {} forms, {} smooth, {} singular; {present} classes present, {absent} absent; identity {}; {rechecked} samples re-derived from lines; {} ms",
        r.forms,
        r.smooth,
        r.singular,
        if identity_absent { "absent" } else { "present" },
        r.wall_ms
    );
    println!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(present == 18 && absent == 7 && identity_absent && rechecked >= 100)
}

fn run_arcs(dir: &Path, q: u64) -> Result<bool> {
    let (p, k) = prime_power(q).with_context(|| format!("{q} is not a prime power"))?;
    let f = std::sync::Arc::new(Gf::canonical(p, k)?);
    let r = census::arc_search(&f);
    print_json(&r)?;
    write_json(dir, &format!("arcs_q{q}.json"), &r)?;
    let mut ok = true;
    if let Some(w) = &r.witness {
        let cert = census::surface_from_arc(f, w)?;
        write_json(dir, &format!("split_cubic_q{q}.json"), &cert)?;
        eprintln!("blow-up of the witness: class {}", cert.alias.as_deref().unwrap_or(&cert.class_id));
        ok &= cert.alias.as_deref() == Some("C1");
    }
    if q <= 9 {
        ok &= r.witness.is_some() == ![2, 3, 5].contains(&q);
    }
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    let dir = cli.workdir;
    match cli.cmd {
        Cmd::WeylTable { root } => {
            weyl_table(match root {
                Root::E6 => e6(),
                Root::E7 => e7(),
            })?;
            Ok(true)
        }
        Cmd::Census { q, jobs, sample, seed } => {
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                pool = pool.num_threads(j);
            }
            pool.build()?.install(|| run_census(&dir, q, sample, seed))
        }
        Cmd::ArcSearch { q } => run_arcs(&dir, q),
        Cmd::ConstructC14 { q, seed } => {
            let c = make_c14_surface(q, seed)?;
            print_json(&c.certificate)?;
            write_json(&dir, &c14_certificate_name(q), &c.certificate)?;
            Ok(true)
        }
        Cmd::ConstructDp2_35 => {
            let (cl, cert) = certify_dp2(&dp2_class35_surface(), 4, 2)?;
            print_json(&cert)?;
            write_json(&dir, DP2_CERTIFICATE_NAME, &cert)?;
            Ok(cl.class.alias.as_deref() == Some("35") && cl.twist.alias.as_deref() == Some("28"))
        }
        Cmd::Classify { q, coeffs } => {
            let x = CubicSurface::from_u64(q, &reduce(q, &coeffs, 20)?)?;
            let (_, cert) = certify(&x, default_weil_range(q))?;
            print_json(&cert)?;
            Ok(true)
        }
        Cmd::VerifyDp2 { q, coeffs, brute } => {
            let x = match coeffs {
                Some(c) => ConicBundleSurface::from_u64(q, &reduce(q, &c, 18)?)?,
                None if q == 3 => dp2_class35_surface(),
                None => bail!("--coeffs is required when q is not 3"),
            };
            let (_, cert) = certify_dp2(&x, 4, brute)?;
            print_json(&cert)?;
            Ok(true)
        }
        Cmd::RealizeAll { q_list } => {
            let r = census::realize_all(&q_list)?;
            for c in &r.c14 {
                write_json(&dir, &c14_certificate_name(c.q), c)?;
            }
            if let Some(c) = &r.dp2 {
                write_json(&dir, DP2_CERTIFICATE_NAME, c)?;
            }
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for row in &r.rows {
                w.serialize(row)?;
            }
            w.flush()?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            let _ = writeln!(std::io::stderr(), "dpff: a checked assertion failed");
            ExitCode::from(1)
        }
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "dpff: {e:#}");
            ExitCode::from(2)
        }
    }
}
