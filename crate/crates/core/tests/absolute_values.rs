//! Frozen reference values for the canonical partition (tau 1, h 0.2,
//! gamma 2). Each constant was produced by 40-digit arithmetic of the closed
//! forms and is checked against both the std oracle and the library.

#![allow(clippy::excessive_precision)]

mod common;

use geoline_core::migration::{migration_flow, phi_factor};
use geoline_core::model::{consumption_bundle, foc_residual, remoteness, trade_cost};
use geoline_core::trade::{gravity_fixed_area, shortest_distance, trade_flow, FixedArea};
use geoline_core::{ModelParams, Partition};

const TOL: f64 = 1e-12;

const BORDERS: [f64; 6] = [
    0.427_912_139_096_394_51,
    0.928_029_167_863_676_52,
    0.968_838_492_140_686_93,
    0.971_218_274_093_722_57,
    0.971_352_783_217_686_53,
    0.971_360_371_963_637_04,
];
const S0: f64 = 0.855_824_278_192_789_02;
const S1: f64 = 0.500_117_028_767_282_01;
const S2: f64 = 0.040_809_324_277_010_409;
const R0: f64 = 1.387_196_106_896_805_9;
const R1: f64 = 2.778_903_537_215_884_9;
const X_NEWTON_12: f64 = 0.010_204_719_001_709_478;
const X_EXACT_12: f64 = 0.009_999_298_985_962_294_3;
const PHI1: f64 = 0.071_970_832_136_323_481;
const PHI2: f64 = 0.031_161_507_859_313_071;
const M21: f64 = 0.022_350_295_943_784_635;
const M21_UNWEIGHTED: f64 = 0.008_075_986_386_310_086_3;
const C_LORD0: f64 = 0.720_878_609_036_054_91;
const U_LORD0: f64 = -1.558_360_962_535_363_7;
const COST_1_FROM_03: f64 = 1.136_453_148_509_951_6;
const FIXED_AREA_02: f64 = 0.000_303_229_841_165_243_64;

fn canonical() -> Partition {
    geoline_core::solver::solve_partition(&ModelParams::canonical()).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * b.abs().max(1.0)
}

#[test]
fn borders_match_oracle_and_library() {
    let oracle = common::borders(1.0, 0.2, 2.0, 1e-6);
    let part = canonical();
    assert_eq!(oracle.len(), BORDERS.len());
    assert_eq!(part.n_interior(), BORDERS.len() - 1);
    for ((o, l), f) in oracle.iter().zip(part.right_borders()).zip(BORDERS) {
        assert!(close(*o, f), "oracle {o} vs {f}");
        assert!(close(*l, f), "library {l} vs {f}");
    }
    assert!(part.truncated_at_accumulation());
    assert!(close(part.central().size, S0));
    assert!(close(part.state(1).unwrap().size, S1));
    assert!(close(part.state(-2).unwrap().size, S2));
}

#[test]
fn remoteness_examples() {
    let p = ModelParams::canonical();
    assert_eq!(remoteness(-1.0, 1.0, &p).unwrap(), 1.0);
    assert!(close(remoteness(-BORDERS[0], BORDERS[0], &p).unwrap(), R0));
    assert!(close(remoteness(BORDERS[0], BORDERS[1], &p).unwrap(), R1));
    assert!(close(common::remoteness(BORDERS[0], BORDERS[1], 1.0), R1));
    assert!(remoteness(0.5, 0.4, &p).is_err());
    assert!(remoteness(-1.1, 0.4, &p).is_err());
}

#[test]
fn trade_cost_examples() {
    let part = canonical();
    assert_eq!(trade_cost(0.5, 0.6, &part).unwrap(), 1.0);
    assert!(close(trade_cost(0.6, 0.3, &part).unwrap(), COST_1_FROM_03));
    assert_eq!(trade_cost(0.6, BORDERS[0], &part).unwrap(), 1.0);
    assert!(trade_cost(1.2, 0.0, &part).is_err());
}

#[test]
fn foc_examples() {
    let p = ModelParams::canonical();
    assert_eq!(foc_residual(0.3, 0.7, 0.2, &p).unwrap(), -0.2);
    assert!(foc_residual(BORDERS[0], S1, 0.2, &p).unwrap().abs() < 1e-12);
    let edge = foc_residual(0.3, 0.0, 0.2, &p).unwrap();
    assert!(close(edge, common::marginal(0.3, 0.0, 1.0, 0.2, 2.0)));
}

#[test]
fn welfare_at_central_state() {
    let part = canonical();
    let w = consumption_bundle(part.central(), part.params(), 1.0);
    assert!(close(w.c_lord, C_LORD0));
    assert!(close(w.u_lord, U_LORD0));
    assert_eq!(w.c_labor, w.c_lord);
    assert!((w.c_lord * part.central().remoteness - 1.0).abs() < 1e-14);
}

#[test]
fn gravity_examples() {
    let part = canonical();
    assert_eq!(shortest_distance(&part, 1, 2).unwrap(), 0.0);
    assert!(close(shortest_distance(&part, -1, 1).unwrap(), S0));
    let f = trade_flow(&part, 1, 2).unwrap();
    assert!(close(f.x_newton, X_NEWTON_12));
    assert!(close(f.x_exact, X_EXACT_12));
    let mid = common::gravity_midpoint(BORDERS[0], BORDERS[1], BORDERS[1], BORDERS[2], 1.0, 10_000);
    assert!(common::rel_err(mid, X_EXACT_12) < 1e-6);
    assert_eq!(trade_flow(&part, 2, 1).unwrap().x_newton, f.x_newton);
}

#[test]
fn fixed_area_example() {
    let part = canonical();
    let u = FixedArea::new(0.30, 0.40).unwrap();
    let v = FixedArea::new(0.95, 0.96).unwrap();
    assert!(close(gravity_fixed_area(&part, &u, &v).unwrap(), FIXED_AREA_02));
}

#[test]
fn migration_example() {
    let part = canonical();
    assert!(close(phi_factor(BORDERS[1], 2.0).unwrap(), PHI1));
    let r = migration_flow(&part, 2, 1).unwrap();
    assert!(close(r.phi_to, PHI1));
    assert!(close(r.phi_from, PHI2));
    assert!(close(r.flow, M21));
    assert!(close(r.unweighted_flow, M21_UNWEIGHTED));
    let (m, n) = (part.state(2).unwrap(), part.state(1).unwrap());
    let oracle = common::migration_by_bisection(m.size, n.size, m.remoteness, n.remoteness);
    assert!((oracle - M21).abs() < 1e-12);
}
