use std::fmt::Write;
use std::path::Path;
use std::sync::Arc;

use curvemix::io::parse_instance;
use curvemix::mixing::check_mixing_bounds;
use curvemix::rational::{fraction_string, rat};
use curvemix::spectral::{
    build_heat_bath, decompose_switch, row_pair_partitions, verify_edge_comparison, verify_k_curveball_bounds,
    verify_ktv_nonneg, verify_regular_bounds, verify_relaxation_comparison, ComparisonReport, MAX_KCURVEBALL_ROWS,
};
use curvemix::statespace::{
    build_state_graph, check_irreducibility, check_johnson_isomorphism, partition_by_rowpair, row_pairs,
};
use curvemix::{
    build_transition, empirical_distribution, enumerate_states, find_state, instances, mixing_time, run_chain_with,
    spectral_report, BinaryMatrix, ChainKind, ChainSpec, Error, MarginSpec, RngStream, StateSpace,
};
use serde::Serialize;
use serde_json::json;

use crate::failure::{Failure, CHECK_FAILED, REDUCIBLE, USAGE};
use crate::render::{comparison_csv, comparison_table, envelope, header, matrix_rows, status};
use crate::{Format, InstanceArgs, Theorem};

fn builtin(name: &str) -> Option<Result<MarginSpec, Failure>> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Failure::new(USAGE, format!("bad number {s:?} in {name:?}")));
    let spec = match parts[..] {
        ["permutation", n] => num(n).map(instances::permutation),
        ["regular", n, d] => num(n).and_then(|n| num(d).map(|d| instances::regular_directed(n, d))),
        ["split", n] => num(n).and_then(|n| {
            if n % 2 == 0 && n > 0 {
                Ok(instances::split_rows(n))
            } else {
                Err(Failure::new(USAGE, "split:<n> needs a positive even n"))
            }
        }),
        _ => return None,
    };
    Some(spec)
}

pub fn load_spec(args: &InstanceArgs) -> Result<Arc<MarginSpec>, Failure> {
    if !Path::new(&args.instance).exists() {
        if let Some(spec) = builtin(&args.instance) {
            return spec.map(Arc::new);
        }
    }
    let text = std::fs::read_to_string(&args.instance)
        .map_err(|e| Failure::new(USAGE, format!("cannot read {}: {e}", args.instance)))?;
    Ok(Arc::new(parse_instance(&text)?))
}

fn load_space(args: &InstanceArgs) -> Result<StateSpace, Failure> {
    Ok(enumerate_states(load_spec(args)?, args.max_states)?)
}

pub fn enumerate(args: &InstanceArgs) -> Result<String, Failure> {
    let space = load_space(args)?;
    let keys: Vec<String> = space.states().iter().map(BinaryMatrix::canonical_hex).collect();
    Ok(match args.format {
        Format::Json => {
            let mut partitions = serde_json::Map::new();
            for (i, j) in row_pairs(space.spec().m()) {
                let classes: Vec<Vec<usize>> =
                    partition_by_rowpair(&space, i, j)?.into_iter().map(|nb| nb.members).collect();
                partitions.insert(format!("{},{}", i + 1, j + 1), json!(classes));
            }
            envelope("enumerate", json!({ "states": space.len(), "keys": keys, "partitions": partitions }))
        }
        Format::Csv => {
            let mut out = String::from("index,key\n");
            for (i, k) in keys.iter().enumerate() {
                let _ = writeln!(out, "{i},{k}");
            }
            out
        }
        Format::Table => {
            let mut out = format!("N={}\n", space.len());
            for k in &keys {
                out.push_str(k);
                out.push('\n');
            }
            out
        }
    })
}

pub fn sample(
    args: &InstanceArgs,
    chain: &ChainSpec,
    steps: u64,
    count: usize,
    seed: u64,
    start: Option<&str>,
) -> Result<String, Failure> {
    let spec = load_spec(args)?;
    chain.validate(&spec)?;
    let a0 = match start {
        Some(hex) => BinaryMatrix::from_canonical_hex(spec.clone(), hex)?,
        None => find_state(spec.clone())?,
    };
    let mut samples = Vec::with_capacity(count);
    for i in 0..count {
        let mut rng = RngStream::new(seed, i as u64);
        samples.push(run_chain_with(&a0, chain, steps, &mut rng, None)?.last);
    }
    Ok(match args.format {
        Format::Json => envelope(
            "sample",
            json!({
                "chain": chain.to_string(),
                "steps": steps,
                "seed": seed,
                "start": a0.canonical_hex(),
                "samples": samples.iter().map(|a| json!({ "key": a.canonical_hex(), "rows": a.to_rows() })).collect::<Vec<_>>(),
            }),
        ),
        Format::Csv => {
            let mut out = String::from("sample,key\n");
            for (i, a) in samples.iter().enumerate() {
                let _ = writeln!(out, "{i},{}", a.canonical_hex());
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            for (i, a) in samples.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&matrix_rows(a));
            }
            out
        }
    })
}

pub fn matrix(args: &InstanceArgs, chain: &ChainSpec) -> Result<String, Failure> {
    let space = load_space(args)?;
    let p = build_transition(&space, chain)?;
    let n = p.dim();
    let cells: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| fraction_string(&p.get(i, j))).collect()).collect();
    Ok(match args.format {
        Format::Csv => p.to_csv(),
        Format::Json => envelope(
            "matrix",
            json!({
                "chain": chain.to_string(),
                "states": space.states().iter().map(BinaryMatrix::canonical_hex).collect::<Vec<_>>(),
                "rows": cells,
            }),
        ),
        Format::Table => {
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            let mut out = String::new();
            header(&mut out, &format!("{chain} on {n} states"));
            for row in &cells {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
            out
        }
    })
}

pub fn spectrum(args: &InstanceArgs, chain: &ChainSpec) -> Result<String, Failure> {
    let space = load_space(args)?;
    let s = spectral_report(&build_transition(&space, chain)?)?;
    Ok(match args.format {
        Format::Json => envelope("spectrum", json!({ "chain": chain.to_string(), "spectrum": s })),
        Format::Csv => {
            let mut out = String::from("index,eigenvalue\n");
            for (i, v) in s.eigenvalues.iter().enumerate() {
                let _ = writeln!(out, "{i},{v}");
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            header(&mut out, &format!("{chain} on {} states", space.len()));
            let _ = writeln!(out, "lambda_1: {}", s.lambda_1);
            let _ = writeln!(out, "lambda_min: {}", s.lambda_min);
            let _ = writeln!(out, "lambda_star: {}", s.lambda_star);
            let _ = writeln!(out, "relaxation (lambda_star): {}", s.relaxation);
            let _ = writeln!(out, "relaxation (lambda_1): {}", s.relaxation_second);
            let _ = writeln!(out, "periodic: {}", s.periodic);
            let _ = writeln!(out, "eigenvalues: {}", join(&s.eigenvalues));
            out
        }
    })
}

fn join(values: &[f64]) -> String {
    values.iter().map(f64::to_string).collect::<Vec<_>>().join(" ")
}

fn render_comparison(format: Format, r: &ComparisonReport) -> String {
    match format {
        Format::Json => envelope("compare", json!({ "report": r })),
        Format::Csv => comparison_csv(r),
        Format::Table => comparison_table(r),
    }
}

pub fn compare(args: &InstanceArgs, theorem: Theorem, k: usize) -> Result<String, Failure> {
    let space = load_space(args)?;
    let report = match theorem {
        Theorem::Ktv => verify_relaxation_comparison(&space),
        Theorem::Edge => verify_edge_comparison(&space),
        Theorem::Regular => verify_regular_bounds(&space),
        Theorem::Kcurveball => verify_k_curveball_bounds(&space, k),
    }?;
    let out = render_comparison(args.format, &report);
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::new(CHECK_FAILED, format!("{} does not hold", report.theorem)).with_output(out))
    }
}

pub fn mix(
    args: &InstanceArgs,
    chain: &ChainSpec,
    epsilon: f64,
    horizon: Option<usize>,
    runs: Option<usize>,
    steps: Option<u64>,
    seed: u64,
) -> Result<String, Failure> {
    let space = load_space(args)?;
    let p = build_transition(&space, chain)?;
    let report = mixing_time(&p, epsilon, horizon)?;
    let empirical = match runs {
        Some(r) => {
            let t = steps.unwrap_or(2 * report.tau as u64);
            Some(empirical_distribution(&space, chain, 0, t, r, seed)?)
        }
        None => None,
    };
    let out = match args.format {
        Format::Json => {
            envelope("mix", json!({ "chain": chain.to_string(), "mixing": report, "empirical": empirical }))
        }
        Format::Csv => {
            let mut out = String::from("t,distance\n");
            for (t, d) in report.curve.iter().enumerate() {
                let _ = writeln!(out, "{t},{d}");
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            header(&mut out, &format!("{chain} on {} states", space.len()));
            let _ = writeln!(out, "epsilon: {}", report.epsilon);
            let _ = writeln!(out, "tau: {}", report.tau);
            let _ = writeln!(out, "lambda_star: {}", report.lambda_star);
            let _ = writeln!(out, "lower bound: {}", report.lower_bound);
            let _ = writeln!(out, "upper bound: {}", report.upper_bound);
            let _ = writeln!(out, "{} bounds", status(report.bounds_hold()));
            if let Some(e) = &empirical {
                let _ = writeln!(out, "empirical: {} runs of {} steps from state 0", e.runs, e.steps);
                let _ = writeln!(out, "tv to exact: {}", e.tv_to_exact);
                let _ = writeln!(out, "tv to uniform: {}", e.tv_to_uniform);
            }
            out
        }
    };
    if report.bounds_hold() {
        Ok(out)
    } else {
        Err(Failure::new(CHECK_FAILED, "mixing time outside the spectral bounds").with_output(out))
    }
}

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    status: &'static str,
    detail: String,
}

impl Check {
    fn new(name: impl Into<String>, status: &'static str, detail: impl Into<String>) -> Self {
        Self { name: name.into(), status, detail: detail.into() }
    }

    fn from_error(name: &str, e: &Error) -> Self {
        match e {
            Error::Reducible(_) | Error::PeriodicChain(_) => Check::new(name, "SKIP", e.to_string()),
            _ => Check::new(name, "FAIL", e.to_string()),
        }
    }

    fn from_report(name: &str, r: Result<ComparisonReport, Error>) -> Self {
        match r {
            Ok(r) => {
                let values: Vec<String> = r.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                Check::new(name, status(r.passed()), values.join(" "))
            }
            Err(e) => Check::from_error(name, &e),
        }
    }
}

fn johnson_check(space: &StateSpace) -> Result<usize, Error> {
    let mut count = 0;
    for (i, j) in row_pairs(space.spec().m()) {
        for nb in partition_by_rowpair(space, i, j)? {
            let (u, l) = nb.profile[0];
            if u > 0 && l > 0 {
                check_johnson_isomorphism(&nb, space)?;
                count += 1;
            }
        }
    }
    Ok(count)
}

pub fn verify(args: &InstanceArgs, k: usize, epsilon: f64) -> Result<String, Failure> {
    let space = load_space(args)?;
    let spec = space.spec().clone();
    let (m, n) = (spec.m(), spec.n());
    let mut checks = Vec::new();

    let components = check_irreducibility(&build_state_graph(&space, &ChainKind::KtvSwitch));
    let mut component_spectra = Vec::new();
    if !components.is_irreducible() {
        let p = build_transition(&space, &ChainSpec::curveball())?;
        for c in &components.components {
            component_spectra.push((c.clone(), spectral_report(&p.restrict(c))?));
        }
    }

    let gamma = if n >= 2 { rat(2, (n * (n - 1)) as i64) } else { rat(1, 1) };
    checks.push(match decompose_switch(&space, &gamma) {
        Ok(d) => {
            Check::new("switch decomposition", "PASS", format!("{} blocks rebuild the KTV matrix", d.blocks.len()))
        }
        Err(e) => Check::from_error("switch decomposition", &e),
    });
    let heat = row_pair_partitions(&space).and_then(|parts| {
        build_heat_bath(&space, &parts).assert_equal(&build_transition(&space, &ChainSpec::curveball())?)
    });
    checks.push(match heat {
        Ok(()) => Check::new("heat-bath identity", "PASS", "heat-bath variant equals Curveball"),
        Err(e) => Check::from_error("heat-bath identity", &e),
    });
    checks.push(match johnson_check(&space) {
        Ok(c) => Check::new("johnson neighbourhoods", "PASS", format!("{c} neighbourhoods")),
        Err(e) => Check::from_error("johnson neighbourhoods", &e),
    });
    checks.push(if n >= 3 {
        match verify_ktv_nonneg(&space) {
            Ok(min) => Check::new("ktv non-negative", "PASS", format!("lambda_min={min}")),
            Err(e) => Check::from_error("ktv non-negative", &e),
        }
    } else {
        Check::new("ktv non-negative", "SKIP", "needs n >= 3")
    });
    checks.push(if n >= 3 {
        Check::from_report("curveball vs ktv", verify_relaxation_comparison(&space))
    } else {
        Check::new("curveball vs ktv", "SKIP", "needs n >= 3")
    });
    checks.push(Check::from_report("curveball vs edge", verify_edge_comparison(&space)));
    if spec.regular_degree().is_some_and(|d| d > 0) {
        checks.push(Check::from_report("regular edge bounds", verify_regular_bounds(&space)));
    }
    checks.push(if k >= 1 && 2 * k <= m && m <= MAX_KCURVEBALL_ROWS {
        Check::from_report(&format!("{k}-curveball bounds"), verify_k_curveball_bounds(&space, k))
    } else {
        Check::new(format!("{k}-curveball bounds"), "SKIP", format!("needs 2k <= m <= {MAX_KCURVEBALL_ROWS}"))
    });
    let mut chains = vec![ChainSpec::curveball(), ChainSpec::edge()];
    if n >= 3 {
        chains.push(ChainSpec::ktv());
    }
    for chain in chains {
        let name = format!("mixing bounds {chain}");
        let result = build_transition(&space, &chain).and_then(|p| check_mixing_bounds(&p, epsilon));
        checks.push(match result {
            Ok(r) => {
                Check::new(name, "PASS", format!("tau({epsilon})={} in [{}, {}]", r.tau, r.lower_bound, r.upper_bound))
            }
            Err(e) => Check::from_error(&name, &e),
        });
    }

    let failed = checks.iter().filter(|c| c.status == "FAIL").count();
    let reducible = !components.is_irreducible();
    let out = match args.format {
        Format::Json => envelope(
            "verify",
            json!({
                "states": space.len(),
                "irreducible": !reducible,
                "components": component_spectra.iter().map(|(c, s)| json!({ "states": c, "spectrum": s })).collect::<Vec<_>>(),
                "checks": checks,
            }),
        ),
        Format::Csv => {
            let mut out = String::from("check,status,detail\n");
            for c in &checks {
                let _ = writeln!(out, "\"{}\",{},\"{}\"", c.name, c.status, c.detail);
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            header(&mut out, &format!("verify on {} states", space.len()));
            if reducible {
                let _ = writeln!(out, "Reducible: {} components", components.count());
                for (idx, (c, s)) in component_spectra.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "component {idx} ({} states): curveball eigenvalues {}",
                        c.len(),
                        join(&s.eigenvalues)
                    );
                }
            }
            for c in &checks {
                let _ = writeln!(out, "{} {}: {}", c.status, c.name, c.detail);
            }
            out
        }
    };
    if failed > 0 {
        Err(Failure::new(CHECK_FAILED, format!("{failed} checks failed")).with_output(out))
    } else if reducible {
        Err(Failure::new(REDUCIBLE, Error::Reducible(components.count()).to_string()).with_output(out))
    } else {
        Ok(out)
    }
}
