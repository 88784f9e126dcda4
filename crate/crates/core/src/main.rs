//! Command-line interface: black-white polynomials of single graphs, series
//! and rational generating functions of graph families, the all-multigraphs
//! pairing series, fixed-loop-number series, and built-in differential
//! verification between independent computation paths.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use serde_json::json;

use bwgraph::families::{
    build_transfer, expand_family, rational_family_gf, realize_members, FamilyError, FamilySpec,
};
use bwgraph::feynman::{
    bw_graph_series, connected_bw_series, connected_gaussian_series, gaussian_graph_series,
    DegreeFilter, FeynmanError,
};
use bwgraph::graphcore::{
    aut_order, aut_order_halfedge, enumerate_multigraphs, full_w, profiles_with_halfedges, w_poly,
    w_table, Mode, Multigraph,
};
use bwgraph::poly::{LaurentPoly, Monomial, Reg, VarRegistry};
use bwgraph::series::TruncatedSeries;
use bwgraph::wright::{classical_a, colored_tree_triple, wg_contributions, wg_series, WrightError};

#[derive(Parser)]
#[command(name = "bwgraph", version, about = "Black-white polynomials of multigraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Black-white polynomial of one graph (file in text or JSON form)
    Wpoly {
        path: PathBuf,
        /// Three-variable form (b, w_plus, w_minus) instead of t
        #[arg(long)]
        full: bool,
        /// Fix vertex colors, e.g. `0=w,2=b`; prints the restricted polynomial
        #[arg(long)]
        restricted: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Series or reduced rational generating function of a graph family
    Family {
        path: PathBuf,
        /// Number of series terms to print
        #[arg(long, default_value_t = 50)]
        terms: usize,
        /// Print the reduced rational generating function instead
        #[arg(long)]
        rational: bool,
        #[arg(long)]
        json: bool,
    },
    /// Series over all multigraphs with the given vertex degrees, weighted
    /// by W/|Aut|, with degree profiles marked by xi variables
    Allgraphs {
        /// Allowed vertex degrees, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        /// Truncation order in u (u counts half-edges)
        #[arg(long, default_value_t = 12)]
        max_halfedges: usize,
        /// Connected multigraphs only (the series logarithm)
        #[arg(long)]
        connected: bool,
        /// Count colorings only: drop the W weights (pure Gaussian moments)
        #[arg(long)]
        gaussian: bool,
        /// Evaluate the coefficients at a rational t
        #[arg(long)]
        t_value: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Fixed-loop-number series of connected multigraphs weighted by 1/|Aut|
    Wright {
        /// Loop number (first Betti number)
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// Classical count (no W weights) via the rooted-tree series
        #[arg(long)]
        classical: bool,
        /// Print the colored rooted-tree series instead of the graph series
        #[arg(long)]
        trees_only: bool,
        /// For genus >= 2, print one series per minimum-degree-3 graph
        #[arg(long)]
        itemize: bool,
        #[arg(long)]
        json: bool,
    },
    /// Differential verification: recompute by brute force and compare
    Verify {
        /// One of: families, feynman, wright, aut
        #[arg(long)]
        suite: String,
        /// Size bound for the brute-force side
        #[arg(long)]
        bound: Option<usize>,
    },
}

/// Failures with their process exit codes: 1 verification mismatch,
/// 2 bad input, 3 resource bound exceeded.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn bound(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::StateBound(_) => Failure::bound(e.to_string()),
            _ => Failure::parse(e.to_string()),
        }
    }
}

impl From<FeynmanError> for Failure {
    fn from(e: FeynmanError) -> Self {
        Failure::parse(e.to_string())
    }
}

impl From<WrightError> for Failure {
    fn from(e: WrightError) -> Self {
        match e {
            WrightError::LoopNumberBound(_) | WrightError::OrderBelowVertexCount { .. } => {
                Failure::bound(e.to_string())
            }
            _ => Failure::parse(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    let reg = VarRegistry::standard();
    match cmd {
        Cmd::Wpoly {
            path,
            full,
            restricted,
            json,
        } => cmd_wpoly(&reg, &path, full, restricted.as_deref(), json),
        Cmd::Family {
            path,
            terms,
            rational,
            json,
        } => cmd_family(&reg, &path, terms, rational, json),
        Cmd::Allgraphs {
            degrees,
            max_halfedges,
            connected,
            gaussian,
            t_value,
            json,
        } => cmd_allgraphs(
            &reg,
            &degrees,
            max_halfedges,
            connected,
            gaussian,
            t_value.as_deref(),
            json,
        ),
        Cmd::Wright {
            genus,
            order,
            classical,
            trees_only,
            itemize,
            json,
        } => cmd_wright(&reg, genus, order, classical, trees_only, itemize, json),
        Cmd::Verify { suite, bound } => cmd_verify(&reg, &suite, bound),
    }
}

fn read_graph(path: &PathBuf) -> Result<Multigraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let parsed = if text.trim_start().starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Failure::parse(e.to_string()))?;
        Multigraph::from_json(&value)
    } else {
        Multigraph::from_text(&text)
    };
    parsed.map_err(|e| Failure::parse(e.to_string()))
}

fn print_poly(p: &LaurentPoly, json: bool) {
    if json {
        println!("{}", p.to_json());
    } else {
        println!("{p}");
    }
}

fn print_series(s: &TruncatedSeries, json: bool) {
    if json {
        let coeffs: Vec<_> = s.coeffs().iter().map(LaurentPoly::to_json).collect();
        println!(
            "{}",
            json!({ "var": s.registry().name(s.var()), "coeffs": coeffs })
        );
    } else {
        print!("{s}");
    }
}

fn cmd_wpoly(
    reg: &Reg,
    path: &PathBuf,
    full: bool,
    restricted: Option<&str>,
    json: bool,
) -> Result<(), Failure> {
    let g = read_graph(path)?;
    if g.vertex_count() >= 40 {
        return Err(Failure::bound(format!(
            "coloring enumeration over {} vertices exceeds the size bound",
            g.vertex_count()
        )));
    }
    let mode = if full { Mode::Full } else { Mode::T };
    let p = match restricted {
        None => w_table(&g, reg, mode, &[]).pop().unwrap(),
        Some(spec) => {
            let (block, code) = parse_color_assignments(spec, g.vertex_count())?;
            let mut table = w_table(&g, reg, mode, &block);
            table.swap_remove(code)
        }
    };
    print_poly(&p, json);
    Ok(())
}

/// Parse `v=b,v=w` pairs into a vertex block plus the coloring code of the
/// block (first listed vertex most significant, white = 1).
fn parse_color_assignments(spec: &str, n: usize) -> Result<(Vec<usize>, usize), Failure> {
    let mut block = Vec::new();
    let mut code = 0usize;
    for part in spec.split(',') {
        let (v, color) = part
            .split_once('=')
            .ok_or_else(|| Failure::parse(format!("expected vertex=color, got '{part}'")))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| Failure::parse(format!("bad vertex '{v}'")))?;
        if v >= n {
            return Err(Failure::parse(format!("vertex {v} out of range")));
        }
        if block.contains(&v) {
            return Err(Failure::parse(format!("vertex {v} assigned twice")));
        }
        let white = match color.trim() {
            "w" | "white" => true,
            "b" | "black" => false,
            other => return Err(Failure::parse(format!("unknown color '{other}'"))),
        };
        block.push(v);
        code = code << 1 | white as usize;
    }
    Ok((block, code))
}

fn read_family_spec(path: &PathBuf) -> Result<FamilySpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::parse(e.to_string()))?;
    Ok(FamilySpec::from_json(&value)?)
}

fn cmd_family(
    reg: &Reg,
    path: &PathBuf,
    terms: usize,
    rational: bool,
    json: bool,
) -> Result<(), Failure> {
    let spec = read_family_spec(path)?;
    let ts = build_transfer(&spec)?;
    let var = reg.var(spec.kind.series_var());
    if rational {
        let gf = rational_family_gf(&ts)?;
        if json {
            println!(
                "{}",
                json!({
                    "var": reg.name(var),
                    "num": gf.num().to_json(),
                    "den": gf.den().to_json(),
                })
            );
        } else {
            println!("{gf}");
        }
    } else {
        let coeffs = expand_family(&ts, terms);
        print_series(&TruncatedSeries::from_coeffs(reg, var, coeffs), json);
    }
    Ok(())
}

fn cmd_allgraphs(
    reg: &Reg,
    degrees: &[usize],
    max_halfedges: usize,
    connected: bool,
    gaussian: bool,
    t_value: Option<&str>,
    json: bool,
) -> Result<(), Failure> {
    if max_halfedges > 40 {
        return Err(Failure::bound(format!(
            "truncation {max_halfedges} exceeds the half-edge bound 40"
        )));
    }
    let filter = DegreeFilter::new(degrees.iter().copied())?;
    let mut s = match (gaussian, connected) {
        (true, false) => gaussian_graph_series(reg, &filter, max_halfedges)?,
        (true, true) => connected_gaussian_series(reg, &filter, max_halfedges)?,
        (false, false) => bw_graph_series(reg, &filter, max_halfedges)?,
        (false, true) => connected_bw_series(reg, &filter, max_halfedges)?,
    };
    if let Some(q) = t_value {
        let q = parse_rational(q)?;
        let bindings: BTreeMap<_, _> =
            [(reg.var("t"), LaurentPoly::constant(reg, q))].into();
        s = s.map_coeffs(|c| c.substitute(&bindings).expect("constant binding"));
    }
    print_series(&s, json);
    Ok(())
}

fn parse_rational(s: &str) -> Result<BigRational, Failure> {
    let bad = || Failure::parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(
            s.trim().parse().map_err(|_| bad())?,
        )),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn cmd_wright(
    reg: &Reg,
    genus: usize,
    order: usize,
    classical: bool,
    trees_only: bool,
    itemize: bool,
    json: bool,
) -> Result<(), Failure> {
    if order > 40 {
        return Err(Failure::bound(format!(
            "order {order} exceeds the truncation bound 40"
        )));
    }
    if trees_only {
        let triple = colored_tree_triple(reg, order)?;
        for (label, s) in [
            ("white root, even black children", &triple.tplus),
            ("white root, odd black children", &triple.tminus),
            ("black root", &triple.tb),
        ] {
            println!("# {label}");
            print_series(s, json);
        }
        return Ok(());
    }
    if classical {
        print_series(&classical_a(reg, genus, order)?, json);
        return Ok(());
    }
    if itemize && genus >= 2 {
        for (graph, s) in wg_contributions(reg, genus, order)? {
            println!(
                "# {} vertices, {} edges, |Aut| = {}",
                graph.vertex_count(),
                graph.edge_count(),
                aut_order(&graph)
            );
            print_series(&s, json);
        }
        return Ok(());
    }
    print_series(&wg_series(reg, genus, order)?, json);
    Ok(())
}

fn cmd_verify(reg: &Reg, suite: &str, bound: Option<usize>) -> Result<(), Failure> {
    let checks = match suite {
        "families" => verify_families(reg, bound.unwrap_or(5)),
        "feynman" => verify_feynman(reg, bound.unwrap_or(8)),
        "wright" => verify_wright(reg, bound.unwrap_or(5)),
        "aut" => verify_aut(bound.unwrap_or(8)),
        other => return Err(Failure::parse(format!("unknown suite '{other}'"))),
    }?;
    let mut failed = 0;
    for (name, detail) in &checks {
        match detail {
            None => println!("PASS {name}"),
            Some(d) => {
                println!("FAIL {name}: {d}");
                failed += 1;
            }
        }
    }
    if failed > 0 {
        return Err(Failure::verification(format!(
            "{failed} of {} checks failed",
            checks.len()
        )));
    }
    Ok(())
}

type Checks = Vec<(String, Option<String>)>;

fn check(
    checks: &mut Checks,
    name: String,
    got: &impl std::fmt::Display,
    want: &impl std::fmt::Display,
) {
    let (got, want) = (got.to_string(), want.to_string());
    let detail = (got != want).then(|| format!("got {got}, want {want}"));
    checks.push((name, detail));
}

/// Transfer-matrix expansion vs direct realization of every family member.
fn verify_families(reg: &Reg, bound: usize) -> Result<Checks, Failure> {
    let two_loop = {
        let mut g = Multigraph::new(1);
        g.add_edge(0, 0, 2);
        g
    };
    let specs: Vec<(&str, FamilySpec)> = vec![
        ("cylinder/paths", FamilySpec::cylinder(Multigraph::path(1), Mode::T)),
        ("cylinder/ladders", FamilySpec::cylinder(Multigraph::path(2), Mode::T)),
        ("torus/cycles", FamilySpec::torus(Multigraph::path(1), Mode::T)),
        ("torus/cycles-full", FamilySpec::torus(Multigraph::path(1), Mode::Full)),
        ("cylinder/looped", FamilySpec::cylinder(two_loop, Mode::T)),
    ];
    let mut checks = Vec::new();
    for (name, spec) in specs {
        let ts = build_transfer(&spec)?;
        let series = expand_family(&ts, bound);
        for n in 1..=bound {
            let mut direct = LaurentPoly::zero(reg);
            for g in realize_members(&spec, n)? {
                let w = match spec.mode {
                    Mode::T => w_poly(&g, reg),
                    Mode::Full => full_w(&g, reg),
                };
                direct = &direct + &w;
            }
            check(
                &mut checks,
                format!("families/{name} n={n}"),
                &series[n],
                &direct,
            );
        }
    }
    Ok(checks)
}

/// Sum of xi-marked `W/|Aut|` over explicitly enumerated multigraphs with
/// `h` half-edges, for comparison against the pairing series.
fn enumeration_coefficient(reg: &Reg, h: usize, connected: bool) -> LaurentPoly {
    let mut total = LaurentPoly::zero(reg);
    for profile in profiles_with_halfedges(h) {
        let mut mark = Monomial::one();
        for (i, &count) in profile.iter().enumerate() {
            if count > 0 {
                mark = mark.mul(&Monomial::var_pow(
                    reg.var(&format!("xi{}", i + 1)),
                    count as i64,
                ));
            }
        }
        let mut sum = LaurentPoly::zero(reg);
        for g in enumerate_multigraphs(&profile) {
            if connected && !g.is_connected() {
                continue;
            }
            let inv_aut = BigRational::new(BigInt::one(), aut_order(&g));
            sum = &sum + &w_poly(&g, reg).scale(&inv_aut);
        }
        total = &total + &sum.mul_monomial(&mark);
    }
    total
}

/// Pairing-measure series vs brute-force graph enumeration.
fn verify_feynman(reg: &Reg, bound: usize) -> Result<Checks, Failure> {
    let filter = DegreeFilter::all_up_to(bound)?;
    let all = bw_graph_series(reg, &filter, bound)?;
    let conn = connected_bw_series(reg, &filter, bound)?;
    let mut checks = Vec::new();
    for h in 1..=bound {
        check(
            &mut checks,
            format!("feynman/all h={h}"),
            all.coeff(h),
            &enumeration_coefficient(reg, h, false),
        );
        check(
            &mut checks,
            format!("feynman/connected h={h}"),
            conn.coeff(h),
            &enumeration_coefficient(reg, h, true),
        );
    }
    Ok(checks)
}

/// Fixed-loop-number series vs enumeration and the t = 1 specialization
/// against the doubled classical series.
fn verify_wright(reg: &Reg, bound: usize) -> Result<Checks, Failure> {
    let order = bound.max(2);
    let mut checks = Vec::new();
    let t_one: BTreeMap<_, _> = [(reg.var("t"), LaurentPoly::one(reg))].into();
    for g in 0..=2usize {
        let w = wg_series(reg, g, order)?;
        let a = classical_a(reg, g, order)?
            .scale_var(&BigRational::from_integer(2.into()));
        let specialized = w.map_coeffs(|c| c.substitute(&t_one).expect("t -> 1"));
        check(&mut checks, format!("wright/t=1 g={g}"), &specialized, &a);
    }
    for g in 1..=2usize {
        let w = wg_series(reg, g, order)?;
        for v in 1..=order.min(4) {
            let e = v + g - 1;
            let mut direct = LaurentPoly::zero(reg);
            for profile in profiles_with_halfedges(2 * e) {
                if profile.iter().sum::<usize>() != v {
                    continue;
                }
                for h in enumerate_multigraphs(&profile) {
                    if h.is_connected() {
                        let inv_aut = BigRational::new(BigInt::one(), aut_order(&h));
                        direct = &direct + &w_poly(&h, reg).scale(&inv_aut);
                    }
                }
            }
            check(
                &mut checks,
                format!("wright/enumeration g={g} v={v}"),
                w.coeff(v),
                &direct,
            );
        }
    }
    Ok(checks)
}

/// Orbit-formula automorphism orders vs brute-force half-edge bijections.
fn verify_aut(bound: usize) -> Result<Checks, Failure> {
    let mut checks = Vec::new();
    for h in 1..=bound {
        for profile in profiles_with_halfedges(h) {
            for g in enumerate_multigraphs(&profile) {
                check(
                    &mut checks,
                    format!("aut/{:?} h={h}", profile),
                    &aut_order(&g),
                    &aut_order_halfedge(&g),
                );
            }
        }
    }
    // one PASS/FAIL line per half-edge count, not per graph
    let mut by_h: Checks = Vec::new();
    for h in 1..=bound {
        let tag = format!("h={h}");
        let fails: Vec<_> = checks
            .iter()
            .filter(|(n, d)| n.ends_with(&tag) && d.is_some())
            .collect();
        let detail = (!fails.is_empty()).then(|| fails[0].1.clone().unwrap());
        by_h.push((format!("aut/halfedges {h}"), detail));
    }
    Ok(by_h)
}
