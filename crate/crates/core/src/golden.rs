//! Reference values the verification suite compares against.

/// `(m, |Ch|)` for the chambers of `ℝ^m`.
pub const CHAMBER_COUNTS: [(u8, usize); 6] = [(3, 2), (4, 3), (5, 7), (6, 21), (7, 135), (8, 2470)];

pub const CODES_M9: usize = 319_124;
pub const CHAMBERS_M9: usize = 175_428;

/// `(k, |Str(ℝ^k)|)`.
pub const STRATA_COUNTS: [(u8, usize); 6] = [(3, 3), (4, 7), (5, 21), (6, 117), (7, 1506), (8, 62254)];

/// Values computed here where the reference differs; each is confirmed by an
/// independent computation (see the README).
pub const STRATA_COUNTS_COMPUTED: [(u8, usize); 3] = [(6, 118), (7, 1546), (8, 62236)];

pub const NOT_IN_IMAGE_M7: usize = 18;
pub const NOT_IN_IMAGE_M7_COMPUTED: usize = 17;

/// Chambers of `ℝ⁷` listed as failing the toric test, with their `a_min`.
pub const TORIC_FAILURES_M7: [(&str, [i64; 7]); 3] = [
    ("<754,762>", [3, 3, 3, 4, 4, 5, 5]),
    ("<764>", [2, 2, 2, 2, 3, 3, 3]),
    ("<765>", [1, 1, 1, 1, 1, 1, 1]),
];

/// `(m, chambers failing the toric test)`.
pub const TORIC_FAILURE_COUNTS: [(u8, usize); 2] = [(8, 217), (9, 56550)];

/// `(code, a_min)`; zeros are conventional where the chamber touches a wall.
pub const A_MIN_M3: [(&str, &[i64]); 2] = [("<>", &[0, 0, 1]), ("<3>", &[1, 1, 1])];

pub const A_MIN_M4: [(&str, &[i64]); 3] = [("<>", &[0, 0, 0, 1]), ("<4>", &[1, 1, 1, 2]), ("<41>", &[1, 2, 2, 2])];

/// `(code, a_min, l1)`.
pub const A_MIN_M5: [(&str, &[i64], i64); 7] = [
    ("<>", &[0, 0, 0, 0, 1], 1),
    ("<5>", &[1, 1, 1, 1, 3], 7),
    ("<51>", &[0, 1, 1, 1, 2], 5),
    ("<52>", &[1, 1, 2, 2, 3], 9),
    ("<521>", &[0, 0, 1, 1, 1], 3),
    ("<53>", &[1, 1, 1, 2, 2], 7),
    ("<54>", &[1, 1, 1, 1, 1], 5),
];

pub struct HexagonRow {
    pub code: &'static str,
    pub a_min: [i64; 6],
    pub l1: i64,
    /// Second Betti number.
    pub b: i64,
    pub r_cup: i64,
    pub s: u64,
}

const fn hex(code: &'static str, a_min: [i64; 6], l1: i64, b: i64, r_cup: i64, s: u64) -> HexagonRow {
    HexagonRow {
        code,
        a_min,
        l1,
        b,
        r_cup,
        s,
    }
}

/// All 21 chambers of `ℝ⁶`, in `(b, r_cup, s)` order.
pub const HEXAGONS: [HexagonRow; 21] = [
    hex("<>", [0, 0, 0, 0, 0, 1], 1, 0, 0, 0),
    hex("<6>", [1, 1, 1, 1, 1, 4], 9, 1, 1, 1),
    hex("<61>", [0, 1, 1, 1, 1, 3], 7, 2, 2, 2),
    hex("<6321>", [0, 0, 0, 1, 1, 1], 3, 3, 0, 0),
    hex("<621>", [0, 0, 1, 1, 1, 2], 5, 3, 2, 0),
    hex("<62>", [1, 1, 2, 2, 2, 5], 13, 3, 3, 3),
    hex("<632>", [1, 1, 1, 3, 3, 4], 13, 4, 1, 1),
    hex("<631>", [0, 1, 1, 2, 2, 3], 9, 4, 2, 0),
    hex("<621,63>", [1, 1, 2, 3, 3, 5], 15, 4, 3, 1),
    hex("<63>", [1, 1, 1, 2, 2, 4], 11, 4, 4, 4),
    hex("<641>", [0, 1, 1, 1, 2, 2], 7, 5, 2, 0),
    hex("<632,64>", [1, 1, 1, 2, 3, 3], 11, 5, 2, 2),
    hex("<631,64>", [1, 2, 2, 3, 4, 5], 17, 5, 3, 1),
    hex("<621,64>", [1, 1, 2, 2, 3, 4], 13, 5, 4, 2),
    hex("<64>", [1, 1, 1, 1, 2, 3], 9, 5, 5, 5),
    hex("<651>", [0, 1, 1, 1, 1, 1], 5, 6, 2, 0),
    hex("<641,65>", [1, 2, 2, 2, 3, 3], 13, 6, 3, 1),
    hex("<632,65>", [1, 1, 1, 2, 2, 2], 9, 6, 3, 3),
    hex("<631,65>", [1, 2, 2, 3, 3, 4], 15, 6, 4, 2),
    hex("<621,65>", [1, 1, 2, 2, 2, 3], 11, 6, 5, 3),
    hex("<65>", [1, 1, 1, 1, 1, 2], 7, 6, 6, 6),
];

/// `r_cup` on two chambers of `ℝ⁵`.
pub const R_CUP_M5: [(&str, i64); 2] = [("<52>", 1), ("<521>", 0)];

/// `(α, a_min(α), α⁻, a_min(α⁻))` for the chambers of `ℝ^m`, `m = 4, 5`.
pub type MinusRow = (&'static str, &'static [i64], &'static str, &'static [i64]);

pub const MINUS_M4: [MinusRow; 3] = [
    ("<>", &[0, 0, 0, 1], "<>", &[0, 0, 1]),
    ("<4>", &[1, 1, 1, 2], "<3=>", &[1, 1, 2]),
    ("<41>", &[0, 1, 1, 1], "<3>", &[1, 1, 1]),
];

pub const MINUS_M5: [MinusRow; 7] = [
    ("<>", &[0, 0, 0, 0, 1], "<>", &[0, 0, 0, 1]),
    ("<5>", &[1, 1, 1, 1, 3], "<4=>", &[1, 1, 1, 3]),
    ("<51>", &[0, 1, 1, 1, 2], "<4>", &[1, 1, 1, 2]),
    ("<52>", &[1, 1, 2, 2, 3], "<41=>", &[1, 2, 2, 3]),
    ("<521>", &[0, 0, 1, 1, 1], "<41>", &[0, 1, 1, 1]),
    ("<53>", &[1, 1, 1, 2, 2], "<42=>", &[1, 1, 2, 2]),
    ("<54>", &[1, 1, 1, 1, 1], "<43=>", &[1, 1, 1, 1]),
];

/// A code of `G₉` with no realization.
pub const UNREALIZABLE_M9: &str = "<9642>";
