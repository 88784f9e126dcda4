//! End-to-end acceptance checks: exact golden values for the rational
//! family machinery, the pairing-measure series, and the fixed-loop-number
//! series, each with a wall-clock budget. One line per criterion.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use bwgraph::families::{build_transfer, expand_family, rational_family_gf, FamilyKind, FamilySpec, Strand};
use bwgraph::feynman::{
    bw_graph_series, connected_bw_series, flower_poly, gaussian_graph_series, DegreeFilter,
};
use bwgraph::graphcore::{
    aut_order, enumerate_multigraphs, profiles_with_halfedges, w_poly, Mode, Multigraph,
};
use bwgraph::poly::{parse_poly, LaurentPoly, Monomial, Reg, VarRegistry};
use bwgraph::series::TruncatedSeries;
use bwgraph::wright::{classical_a, colored_tree_triple, lambert_series, wg_contributions, wg_series};

fn q(reg: &Reg, s: &str) -> LaurentPoly {
    parse_poly(reg, s).unwrap()
}

fn series(reg: &Reg, coeffs: &[&str]) -> TruncatedSeries {
    let coeffs = coeffs.iter().map(|s| q(reg, s)).collect();
    TruncatedSeries::from_coeffs(reg, reg.var("x"), coeffs)
}

/// Record the criterion's outcome line and enforce its time budget.
fn pass(n: u32, name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("criterion {n} ({name}): PASS in {elapsed:.2?}");
    assert!(
        elapsed < budget,
        "criterion {n} ({name}): FAIL, took {elapsed:.2?} (budget {budget:?})"
    );
}

fn path_spec() -> FamilySpec {
    FamilySpec::cylinder(Multigraph::new(1), Mode::T)
}

#[test]
fn criterion_01_path_family_rational_form() {
    let started = Instant::now();
    let ts = build_transfer(&path_spec()).unwrap();
    let reg = ts.registry().clone();
    let gf = rational_family_gf(&ts).unwrap();
    assert_eq!(gf.num(), &q(&reg, "1 + (2 - 2*t)*x^2"));
    assert_eq!(gf.den(), &q(&reg, "1 - (t + 1)*x + (t^2 - 1)*x^3"));
    let expected = series(
        &reg,
        &[
            "1",
            "t + 1",
            "t^2 + 3",
            "t^3 + 3*t + 4",
            "t^4 + 2*t^2 + 8*t + 5",
        ],
    );
    assert_eq!(gf.expand(4), expected);
    pass(1, "path family rational form", started, Duration::from_secs(1));
}

#[test]
fn criterion_02_path_on_100_vertices() {
    let started = Instant::now();
    let ts = build_transfer(&path_spec()).unwrap();
    let reg = ts.registry().clone();
    let gf = rational_family_gf(&ts).unwrap();
    let w = gf.expand(100).coeff(100).clone();
    let t = reg.var("t");

    let parts = w.decompose_in(t);
    let slice = |lo: i64, hi: i64| {
        let mut out = LaurentPoly::zero(&reg);
        for (&d, p) in parts.range(lo..=hi) {
            out = &out + &p.mul_monomial(&Monomial::var_pow(t, d));
        }
        out
    };
    assert_eq!(slice(96, 100), q(&reg, "t^100 + 2*t^98 + 102*t^97 + 202*t^96"));
    assert_eq!(
        slice(0, 3),
        q(
            &reg,
            "520112162534040819904*t^3 + 39376811249644776236*t^2 \
             + 1945884509713393346*t + 47086698309271007"
        )
    );

    let at_one: BTreeMap<_, _> = [(t, BigRational::one())].into();
    assert_eq!(
        w.eval(&at_one).unwrap(),
        BigRational::from_integer(BigInt::one() << 100)
    );
    pass(2, "path on 100 vertices", started, Duration::from_secs(1));
}

#[test]
fn criterion_03_depth_two_grids() {
    let started = Instant::now();
    let spec = FamilySpec::cylinder(Multigraph::path(2), Mode::T);
    let ts = build_transfer(&spec).unwrap();
    let reg = ts.registry().clone();
    let gf = rational_family_gf(&ts).unwrap();
    assert_eq!(
        gf.num(),
        &q(
            &reg,
            "1 - 4*(t - 1)^2*x^2 - 3*(t^2 - 1)^2*x^3 + 4*(t - 1)^4*(t + 1)^2*x^5"
        )
    );
    assert_eq!(
        gf.den(),
        &q(
            &reg,
            "1 - (t^2 + 3)*x + 2*(t^2 - 1)^2*x^3 + (t^2 - 1)^2*(t^2 + 3)*x^4 \
             - (t^2 - 1)^4*x^6"
        )
    );
    let expected = series(
        &reg,
        &[
            "1",
            "t^2 + 3",
            "t^4 + 2*t^2 + 8*t + 5",
            "t^6 + 8*t^3 + 21*t^2 + 24*t + 10",
            "t^8 + 8*t^5 + 18*t^4 + 48*t^3 + 88*t^2 + 72*t + 21",
            "t^10 + 8*t^7 + 18*t^6 + 48*t^5 + 136*t^4 + 264*t^3 + 309*t^2 \
             + 192*t + 48",
        ],
    );
    let got = gf.expand(5);
    assert_eq!(got, expected);
    // every row against direct enumeration over the product graph
    for n in 1..=5 {
        let grid = Multigraph::path(2).cartesian_product(&Multigraph::path(n));
        assert_eq!(got.coeff(n), &w_poly(&grid, &reg), "n = {n}");
    }
    pass(3, "depth-two grids", started, Duration::from_secs(5));
}

#[test]
fn criterion_04_rank_two_subdivision() {
    let started = Instant::now();
    let mut spec = FamilySpec::cylinder(Multigraph::path(3), Mode::T);
    spec.kind = FamilyKind::SubdivideMany;
    spec.edges = vec![
        Strand { a: 0, b: 1, strand: 0 },
        Strand { a: 1, b: 2, strand: 0 },
    ];
    let ts = build_transfer(&spec).unwrap();
    let reg = ts.registry().clone();

    // both edges subdivided at least 4 times, so the series starts at y^8
    let coeffs = expand_family(&ts, 9);
    for c in &coeffs[..8] {
        assert!(c.is_zero());
    }
    assert_eq!(
        coeffs[8],
        q(
            &reg,
            "t^11 + 2*t^9 + 13*t^8 + 24*t^7 + 58*t^6 + 146*t^5 + 308*t^4 \
             + 519*t^3 + 566*t^2 + 332*t + 79"
        )
    );
    assert_eq!(
        coeffs[9],
        q(
            &reg,
            "2*t^12 + 4*t^10 + 28*t^9 + 52*t^8 + 128*t^7 + 336*t^6 + 728*t^5 \
             + 1426*t^4 + 2144*t^3 + 2044*t^2 + 1068*t + 232"
        )
    );

    let gf = rational_family_gf(&ts).unwrap();
    let num = q(
        &reg,
        "(t^13 + 11*t^10 + 17*t^9 + 25*t^8 + 72*t^7 + 78*t^6 - 77*t^5 - 238*t^4 \
          - 136*t^3 + 87*t^2 + 123*t + 37)*y^12 \
         + (2*t^12 + 20*t^9 + 30*t^8 + 48*t^7 + 96*t^6 - 8*t^5 - 242*t^4 \
          - 208*t^3 + 64*t^2 + 148*t + 50)*y^11 \
         + (-2*t^12 + t^11 - 2*t^10 - 24*t^9 - 31*t^8 - 66*t^7 - 192*t^6 \
          - 372*t^5 - 404*t^4 + 9*t^3 + 506*t^2 + 452*t + 125)*y^10 \
         + (-2*t^11 - 2*t^9 - 22*t^8 - 36*t^7 - 72*t^6 - 180*t^5 - 228*t^4 \
          - 26*t^3 + 248*t^2 + 246*t + 74)*y^9 \
         + (t^11 + 2*t^9 + 13*t^8 + 24*t^7 + 58*t^6 + 146*t^5 + 308*t^4 \
          + 519*t^3 + 566*t^2 + 332*t + 79)*y^8",
    );
    let den = q(
        &reg,
        "(t^4 - 2*t^2 + 1)*y^6 + (-2*t^3 - 2*t^2 + 2*t + 2)*y^4 \
         + (2*t^2 - 2)*y^3 + (t^2 + 2*t + 1)*y^2 + (-2*t - 2)*y + 1",
    );
    assert_eq!(gf.num(), &num);
    assert_eq!(gf.den(), &den);
    pass(4, "rank-two subdivision", started, Duration::from_secs(30));
}

#[test]
fn criterion_05_cycle_family_full_weights() {
    let started = Instant::now();
    let spec = FamilySpec::torus(Multigraph::new(1), Mode::Full);
    let ts = build_transfer(&spec).unwrap();
    let reg = ts.registry().clone();
    let gf = rational_family_gf(&ts).unwrap();
    assert_eq!(gf.num(), &q(&reg, "(-2*w_plus^2 + 2*w_minus^2)*b*x^3 + 1"));
    assert_eq!(
        gf.den(),
        &q(
            &reg,
            "(w_plus^2 - w_minus^2)*b*x^3 + (-b - w_plus)*x + 1"
        )
    );
    pass(5, "cycle family full weights", started, Duration::from_secs(1));
}

#[test]
fn criterion_06_degree_restricted_series() {
    let started = Instant::now();
    let reg = VarRegistry::standard();

    // degree 1 only: unions of single edges, (t^2+3)^k xi1^{2k} u^{2k} / (2^k k!)
    let ones = DegreeFilter::new([1]).unwrap();
    let got = bw_graph_series(&reg, &ones, 8).unwrap();
    let mut expected = TruncatedSeries::zero(&reg, reg.var("u"), 8);
    let mut kfact = BigInt::one();
    for k in 0..=4u64 {
        if k > 0 {
            kfact *= k;
        }
        let c = BigRational::new(BigInt::one(), (BigInt::one() << k) * &kfact);
        let term = q(&reg, "t^2 + 3")
            .pow(k)
            .scale(&c)
            .try_mul(&q(&reg, "xi1").pow(2 * k))
            .unwrap();
        expected.set_coeff(2 * k as usize, term);
    }
    assert_eq!(got, expected);

    // degrees 1 and 2, connected: paths and cycles
    let ones_twos = DegreeFilter::new([1, 2]).unwrap();
    let conn = connected_bw_series(&reg, &ones_twos, 6).unwrap();
    assert_eq!(
        conn.coeff(2),
        &q(&reg, "(1/2)*((t^2 + 3)*xi1^2 + (t + 1)*xi2)")
    );
    // xi1^2*xi2 marks the three-vertex path: W = t^3 + 3t + 4 over |Aut| = 2
    assert_eq!(
        conn.coeff(4),
        &q(
            &reg,
            "(1/2)*(t^3 + 3*t + 4)*xi1^2*xi2 + (1/4)*(t^2 + 2*t + 1)*xi2^2"
        )
    );
    assert_eq!(
        conn.coeff(6),
        &q(
            &reg,
            "(1/6)*((3*t^4 + 6*t^2 + 24*t + 15)*xi1^2*xi2^2 + (t^3 + 3*t + 4)*xi2^3)"
        )
    );

    // degree 3 only, connected (cubic multigraphs); the u^12 coefficient is
    // 5/16 (t^2+3)^2: the five connected cubic graphs on four vertices have
    // automorphism orders 24, 48, 16, 16, 8 and each has W = (t^2+3)^2
    let threes = DegreeFilter::new([3]).unwrap();
    let cubic = connected_bw_series(&reg, &threes, 12).unwrap();
    assert_eq!(cubic.coeff(6), &q(&reg, "(5/24)*(t^2 + 3)*xi3^2"));
    assert_eq!(cubic.coeff(12), &q(&reg, "(5/16)*(t^2 + 3)^2*xi3^4"));

    // no color weights: Gaussian moments of the degree-count marks
    let all6 = DegreeFilter::all_up_to(6).unwrap();
    let gauss = gaussian_graph_series(&reg, &all6, 6).unwrap();
    assert_eq!(gauss.coeff(0), &LaurentPoly::one(&reg));
    assert_eq!(gauss.coeff(2), &q(&reg, "(1/2)*(xi1^2 + xi2)"));
    assert_eq!(
        gauss.coeff(4),
        &q(&reg, "(1/8)*(xi1^4 + 6*xi1^2*xi2 + 4*xi1*xi3 + 3*xi2^2 + xi4)")
    );
    assert_eq!(
        gauss.coeff(6),
        &q(
            &reg,
            "(1/48)*(xi1^6 + 15*xi1^4*xi2 + 20*xi1^3*xi3 + 45*xi1^2*xi2^2 \
             + 15*xi1^2*xi4 + 60*xi1*xi2*xi3 + 6*xi1*xi5 + 15*xi2^3 \
             + 15*xi2*xi4 + 10*xi3^2 + xi6)"
        )
    );
    pass(6, "degree-restricted series", started, Duration::from_secs(30));
}

/// Sum of xi-marked W/|Aut| over all (or connected) multigraphs with h
/// half-edges, by direct enumeration.
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

#[test]
fn criterion_07_series_vs_enumeration() {
    let started = Instant::now();
    let reg = VarRegistry::standard();
    let filter = DegreeFilter::all_up_to(8).unwrap();
    let all = bw_graph_series(&reg, &filter, 8).unwrap();
    let conn = connected_bw_series(&reg, &filter, 8).unwrap();
    assert_eq!(all.coeff(0), &LaurentPoly::one(&reg));
    assert!(conn.coeff(0).is_zero());
    for h in 1..=8 {
        assert_eq!(all.coeff(h), &enumeration_coefficient(&reg, h, false), "h = {h}");
        assert_eq!(conn.coeff(h), &enumeration_coefficient(&reg, h, true), "h = {h}");
    }
    pass(7, "series vs enumeration", started, Duration::from_secs(120));
}

#[test]
fn criterion_08_fixed_loop_number_series() {
    let started = Instant::now();
    let reg = VarRegistry::standard();

    assert_eq!(
        lambert_series(&reg, 4),
        series(&reg, &["0", "1", "1", "3/2", "8/3"])
    );
    assert_eq!(
        colored_tree_triple(&reg, 6).unwrap().total(),
        series(
            &reg,
            &[
                "0",
                "t + 1",
                "t^2 + 3",
                "(3/2)*t^3 + (9/2)*t + 6",
                "(8/3)*t^4 + 8*t^2 + 16*t + 16",
                "(125/24)*t^5 + (205/12)*t^3 + 35*t^2 + (1465/24)*t + 145/3",
                "(54/5)*t^6 + (157/4)*t^4 + 80*t^3 + (335/2)*t^2 + 240*t + 3073/20",
            ]
        )
    );
    assert_eq!(
        wg_series(&reg, 1, 4).unwrap(),
        series(
            &reg,
            &[
                "0",
                "(1/2)*t + 1/2",
                "(3/4)*t^2 + (1/2)*t + 7/4",
                "(17/12)*t^3 + (1/2)*t^2 + (17/4)*t + 31/6",
                "(71/24)*t^4 + (3/4)*t^3 + 9*t^2 + (73/4)*t + 131/8",
            ]
        )
    );
    assert_eq!(
        wg_series(&reg, 2, 3).unwrap(),
        series(
            &reg,
            &[
                "0",
                "(1/8)*t + 1/8",
                "(7/12)*t^2 + (1/2)*t + 5/4",
                "(101/48)*t^3 + (9/8)*t^2 + (101/16)*t + 175/24",
            ]
        )
    );

    // per-graph x^2 contributions, catalog order: the one-vertex two-loop
    // graph, the theta graph, the dumbbell
    let contributions = wg_contributions(&reg, 2, 2).unwrap();
    let x2: Vec<_> = contributions.iter().map(|(_, s)| s.coeff(2).clone()).collect();
    assert_eq!(
        x2,
        vec![
            q(&reg, "(3/8)*t^2 + (1/2)*t + 5/8"),
            q(&reg, "(1/12)*t^2 + 1/4"),
            q(&reg, "(1/8)*t^2 + 3/8"),
        ]
    );

    assert_eq!(
        classical_a(&reg, 1, 3).unwrap(),
        series(&reg, &["0", "1/2", "3/4", "17/12"])
    );
    assert_eq!(
        classical_a(&reg, 2, 3).unwrap(),
        series(&reg, &["0", "1/8", "7/12", "101/48"])
    );

    // and the budget is measured at order 8
    wg_series(&reg, 2, 8).unwrap();
    pass(8, "fixed-loop-number series", started, Duration::from_secs(60));
}

#[test]
fn criterion_09_doubling_bridges_at_t_one() {
    let started = Instant::now();
    let reg = VarRegistry::standard();
    let order = 8;
    let two = BigRational::from_integer(2.into());
    let t_one: BTreeMap<_, _> = [(reg.var("t"), LaurentPoly::one(&reg))].into();
    let at_t_one =
        |s: &TruncatedSeries| s.map_coeffs(|c| c.substitute(&t_one).unwrap());

    assert_eq!(
        at_t_one(&colored_tree_triple(&reg, order).unwrap().total()),
        lambert_series(&reg, order).scale_var(&two)
    );
    for g in 0..=2 {
        assert_eq!(
            at_t_one(&wg_series(&reg, g, order).unwrap()),
            classical_a(&reg, g, order).unwrap().scale_var(&two),
            "loop number {g}"
        );
    }
    pass(9, "doubling bridges at t = 1", started, Duration::from_secs(60));
}

#[test]
fn criterion_10_frozen_derived_values() {
    let started = Instant::now();
    let reg = VarRegistry::standard();

    // one transfer step of the path family from its initial vector
    let ts = build_transfer(&path_spec()).unwrap();
    let reg_ts = ts.registry().clone();
    assert_eq!(
        ts.apply(ts.initial_vector()),
        vec![
            q(&reg_ts, "2"),
            q(&reg_ts, "2"),
            q(&reg_ts, "2*t"),
            q(&reg_ts, "t + t^3"),
        ]
    );

    // a white flower carries t exactly when its black-neighbor count is even
    assert_eq!(
        flower_poly(&reg, 2),
        q(&reg, "(b + y)^2 + t*w^2 + 2*w*z + t*z^2")
    );

    // the tree series integrates to x + x^2/2 + x^3/2 + ...
    assert_eq!(
        classical_a(&reg, 0, 3).unwrap(),
        series(&reg, &["0", "1", "1/2", "1/2"])
    );

    // the quartic term of the connected cubic series
    let threes = DegreeFilter::new([3]).unwrap();
    let cubic = connected_bw_series(&reg, &threes, 12).unwrap();
    assert_eq!(cubic.coeff(12), &q(&reg, "(5/16)*(t^2 + 3)^2*xi3^4"));

    pass(10, "frozen derived values", started, Duration::from_secs(60));
}
