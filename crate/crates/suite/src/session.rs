//! The variable table shared by every object in the suite.

use std::sync::{Arc, OnceLock};

use fano_core::{Poly, VarTable};

/// Coordinates and parameters with their indices resolved once.
#[derive(Debug)]
pub struct Session {
    pub table: Arc<VarTable>,
    /// `x0..x5`; the first five are the coordinates of P⁴.
    pub x: [usize; 6],
    pub p4: [usize; 5],
    pub uv: [usize; 2],
    pub xyz: [usize; 3],
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub s: usize,
    pub t: usize,
    pub lam: usize,
    pub mu: usize,
    /// Symbolic coefficients `a0..a5` of a quadric `Σ a_i f_i`.
    pub coeffs: [usize; 6],
}

const COORDINATES: [&str; 11] = ["x0", "x1", "x2", "x3", "x4", "x5", "u", "v", "x", "y", "z"];
const PARAMETERS: [&str; 13] = ["a", "b", "c", "s", "t", "lam", "mu", "a0", "a1", "a2", "a3", "a4", "a5"];

impl Session {
    fn build() -> Self {
        let table = VarTable::new(&COORDINATES, &PARAMETERS).expect("standard names are valid");
        let ix = |n: &str| table.index(n).expect("standard name");
        let x = [ix("x0"), ix("x1"), ix("x2"), ix("x3"), ix("x4"), ix("x5")];
        Session {
            x,
            p4: [x[0], x[1], x[2], x[3], x[4]],
            uv: [ix("u"), ix("v")],
            xyz: [ix("x"), ix("y"), ix("z")],
            a: ix("a"),
            b: ix("b"),
            c: ix("c"),
            s: ix("s"),
            t: ix("t"),
            lam: ix("lam"),
            mu: ix("mu"),
            coeffs: [ix("a0"), ix("a1"), ix("a2"), ix("a3"), ix("a4"), ix("a5")],
            table,
        }
    }

    /// Parses a polynomial over the session table. Only for trusted,
    /// in-crate formulas.
    pub fn poly(&self, text: &str) -> Poly {
        fano_core::parse_poly(&self.table, text).unwrap_or_else(|e| panic!("bad formula `{text}`: {e}"))
    }

    pub fn var(&self, index: usize) -> Poly {
        Poly::var(&self.table, index)
    }

    pub fn parameter_names(&self) -> impl Iterator<Item = &'static str> {
        PARAMETERS.iter().copied()
    }
}

pub fn session() -> &'static Session {
    static SESSION: OnceLock<Session> = OnceLock::new();
    SESSION.get_or_init(Session::build)
}
