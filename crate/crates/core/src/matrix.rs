//! Dense matrices over the fraction field of a polynomial ring.
//!
//! Determinants, adjugates and linear solves run fraction-free (Bareiss
//! elimination) on a polynomial matrix obtained by clearing each row's
//! denominators, so the only divisions performed are exact ones.

use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::frac::RatExpr;
use crate::poly::MultiPoly;
use crate::scalar::Coeff;
use crate::vars::VarTable;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<C: Coeff> {
    rows: usize,
    cols: usize,
    entries: Vec<RatExpr<C>>,
}

/// Outcome of [`PolyMatrix::solve`].
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<C: Coeff> {
    Solved { x: PolyMatrix<C>, unique: bool },
    NoSolution,
}

impl<C: Coeff> LinearSolution<C> {
    pub fn solution(&self) -> Option<&PolyMatrix<C>> {
        match self {
            LinearSolution::Solved { x, .. } => Some(x),
            LinearSolution::NoSolution => None,
        }
    }
}

impl<C: Coeff> PolyMatrix<C> {
    pub fn new(rows: usize, cols: usize, entries: Vec<RatExpr<C>>) -> Result<Self, AlgebraError> {
        if rows == 0 || cols == 0 {
            return Err(AlgebraError::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let t = entries[0].table();
        if entries.iter().any(|e| e.table() != t) {
            return Err(AlgebraError::TableMismatch);
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_polys(rows: usize, cols: usize, entries: Vec<MultiPoly<C>>) -> Result<Self, AlgebraError> {
        Self::new(rows, cols, entries.into_iter().map(RatExpr::from_poly).collect())
    }

    pub fn from_ints(table: &Arc<VarTable>, rows: &[&[i64]]) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::DimensionMismatch {
                expected: cols,
                found: rows.iter().map(|r| r.len()).find(|&l| l != cols).unwrap_or(0),
            });
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&n| RatExpr::int(table, n)))
            .collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn identity(table: &Arc<VarTable>, n: usize) -> Self {
        Self::diagonal(&vec![RatExpr::one(table); n])
    }

    pub fn diagonal(diag: &[RatExpr<C>]) -> Self {
        let n = diag.len();
        let table = diag[0].table().clone();
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    diag[k / n].clone()
                } else {
                    RatExpr::zero(&table)
                }
            })
            .collect();
        PolyMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.entries[0].table()
    }

    pub fn get(&self, i: usize, j: usize) -> &RatExpr<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[RatExpr<C>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[RatExpr<C>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<RatExpr<C>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn map_entries<F>(&self, f: F) -> Result<Self, AlgebraError>
    where
        F: Fn(&RatExpr<C>) -> Result<RatExpr<C>, AlgebraError>,
    {
        let entries = self.entries.iter().map(f).collect::<Result<_, _>>()?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: &RatExpr<C>) -> Result<Self, AlgebraError> {
        self.map_entries(|e| e.try_mul(c))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.cols != o.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: o.rows,
            });
        }
        let table = self.table().clone();
        let mut entries = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = RatExpr::zero(&table);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.try_add(&a.try_mul(b)?)?;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: o.cols,
            entries,
        })
    }

    /// Entrywise cross-multiplication equality.
    pub fn frac_eq(&self, o: &Self) -> Result<bool, AlgebraError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Ok(false);
        }
        for (a, b) in self.entries.iter().zip(&o.entries) {
            if !a.frac_eq(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `self = c·o` for a single nonzero scalar `c`.
    pub fn proportional_to(&self, o: &Self) -> Result<bool, AlgebraError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Ok(false);
        }
        let Some(k) = self.entries.iter().position(|e| !e.is_zero()) else {
            return Ok(false);
        };
        if o.entries[k].is_zero() {
            return Ok(false);
        }
        for (a, b) in self.entries.iter().zip(&o.entries) {
            if !a.try_mul(&o.entries[k])?.frac_eq(&b.try_mul(&self.entries[k])?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_square(&self) -> Result<(), AlgebraError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Rows scaled to polynomials, with the product of the scale factors.
    fn cleared_rows(&self) -> (Vec<Vec<MultiPoly<C>>>, MultiPoly<C>) {
        let table = self.table().clone();
        let mut total = MultiPoly::one(&table);
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut lcm_ish = MultiPoly::one(&table);
                let mut seen: Vec<&MultiPoly<C>> = Vec::new();
                for e in row {
                    if e.as_poly().is_none() && !seen.contains(&e.den()) {
                        seen.push(e.den());
                        lcm_ish = &lcm_ish * e.den();
                    }
                }
                total = &total * &lcm_ish;
                row.iter()
                    .map(|e| {
                        let q = lcm_ish
                            .div_exact(e.den())
                            .expect("row multiplier divisible by entry denominator");
                        e.num() * &q
                    })
                    .collect()
            })
            .collect();
        (rows, total)
    }

    /// Exact determinant.
    pub fn det(&self) -> Result<RatExpr<C>, AlgebraError> {
        self.check_square()?;
        let (rows, scale) = self.cleared_rows();
        RatExpr::new(bareiss_det(rows), scale)
    }

    /// Transpose of the cofactor matrix.
    pub fn adjugate(&self) -> Result<Self, AlgebraError> {
        self.check_square()?;
        let n = self.rows;
        let table = self.table().clone();
        if n == 1 {
            return Ok(Self::identity(&table, 1));
        }
        let mut entries = vec![RatExpr::zero(&table); n * n];
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let d = minor.det()?;
                let c = if (i + j) % 2 == 0 { d } else { -&d };
                entries[j * n + i] = c;
            }
        }
        Ok(PolyMatrix {
            rows: n,
            cols: n,
            entries,
        })
    }

    /// The matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let entries = (0..self.rows)
            .filter(|&r| r != i)
            .flat_map(|r| (0..self.cols).filter(move |&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        PolyMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Solves `self · x = b` over the fraction field.
    pub fn solve(&self, b: &Self) -> Result<LinearSolution<C>, AlgebraError> {
        if b.rows != self.rows || b.cols != 1 {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows,
                found: b.rows,
            });
        }
        let table = self.table().clone();
        let n = self.cols;
        let augmented_entries = (0..self.rows)
            .flat_map(|i| self.row(i).iter().chain(std::iter::once(b.get(i, 0))).cloned())
            .collect();
        let aug = PolyMatrix {
            rows: self.rows,
            cols: n + 1,
            entries: augmented_entries,
        };
        let (mut m, _) = aug.cleared_rows();
        let pivots = bareiss_echelon(&mut m, n);
        let rank = pivots.len();
        if m[rank..].iter().any(|row| !row[n].is_zero()) {
            return Ok(LinearSolution::NoSolution);
        }
        let mut x = vec![RatExpr::zero(&table); n];
        for (k, &c) in pivots.iter().enumerate().rev() {
            let mut rhs = RatExpr::from_poly(m[k][n].clone());
            for &c2 in &pivots[k + 1..] {
                let coef = RatExpr::from_poly(m[k][c2].clone());
                rhs = rhs.try_add(&-&coef.try_mul(&x[c2])?)?;
            }
            x[c] = rhs.try_div(&RatExpr::from_poly(m[k][c].clone()))?;
        }
        Ok(LinearSolution::Solved {
            x: PolyMatrix {
                rows: n,
                cols: 1,
                entries: x,
            },
            unique: rank == n,
        })
    }

    pub fn substitute_values(&self, values: &[(usize, C)]) -> Result<Self, AlgebraError> {
        self.map_entries(|e| e.substitute_values(values))
    }

    /// Multiplies by the product of the distinct entry denominators, giving a
    /// polynomial matrix proportional to `self`.
    pub fn clear_denominators(&self) -> (Vec<Vec<MultiPoly<C>>>, MultiPoly<C>) {
        let table = self.table().clone();
        let mut common = MultiPoly::one(&table);
        let mut seen: Vec<&MultiPoly<C>> = Vec::new();
        for e in &self.entries {
            if e.as_poly().is_none() && !seen.contains(&e.den()) {
                seen.push(e.den());
                common = &common * e.den();
            }
        }
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| e.num() * &common.div_exact(e.den()).expect("common multiple"))
                    .collect()
            })
            .collect();
        (rows, common)
    }
}

/// Fraction-free elimination to row echelon form on the first `ncols`
/// columns. Returns the pivot columns; rows below the rank are zero in those
/// columns.
fn bareiss_echelon<C: Coeff>(m: &mut [Vec<MultiPoly<C>>], ncols: usize) -> Vec<usize> {
    let rows = m.len();
    let width = m.first().map_or(0, |r| r.len());
    let table = m[0][0].table().clone();
    let mut prev = MultiPoly::one(&table);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..width {
                let v = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            m[i][c] = MultiPoly::zero(&table);
        }
        // entries left of the pivot in the pivot row stay; entries of skipped
        // columns in lower rows are already zero
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn bareiss_det<C: Coeff>(mut m: Vec<Vec<MultiPoly<C>>>) -> MultiPoly<C> {
    let n = m.len();
    let table = m[0][0].table().clone();
    let mut sign = false;
    let mut prev = MultiPoly::one(&table);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return MultiPoly::zero(&table);
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Resultant of `p` and `q` with respect to `var`, via the determinant of
/// the Sylvester matrix.
pub fn resultant<C: Coeff>(p: &MultiPoly<C>, q: &MultiPoly<C>, var: usize) -> Result<MultiPoly<C>, AlgebraError> {
    if p.table() != q.table() {
        return Err(AlgebraError::TableMismatch);
    }
    let table = p.table().clone();
    if p.is_zero() || q.is_zero() {
        return Ok(MultiPoly::zero(&table));
    }
    let coeffs = |f: &MultiPoly<C>| -> Vec<MultiPoly<C>> {
        let deg = f.degree_in_var(var) as usize;
        let mut out = vec![MultiPoly::zero(&table); deg + 1];
        for (mono, c) in f.coeffs_in(&[var]) {
            out[deg - mono.exponents()[var] as usize] = c;
        }
        out
    };
    let (a, b) = (coeffs(p), coeffs(q));
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 {
        return Ok(a[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(b[0].pow(m as u32));
    }
    let size = m + n;
    let mut rows = vec![vec![MultiPoly::zero(&table); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    Ok(bareiss_det(rows))
}

impl<C: Coeff> fmt::Display for PolyMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    type P = MultiPoly<Rat>;
    type M = PolyMatrix<Rat>;

    fn table() -> Arc<VarTable> {
        VarTable::new(&["x0", "x1", "x2", "x3", "x4", "x5"], &["a", "b"]).unwrap()
    }

    fn sym3() -> [&'static [i64]; 3] {
        [&[1, 2, 3], &[2, 5, 7], &[3, 7, 13]]
    }

    /// Laplace expansion along the first row, independent of the Bareiss path.
    fn laplace(m: &M) -> RatExpr<Rat> {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = RatExpr::zero(m.table());
        for j in 0..n {
            let term = m.get(0, j) * &laplace(&m.minor(0, j));
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    fn symbolic_sym3(t: &Arc<VarTable>) -> M {
        let x = |i| P::var(t, i);
        M::from_polys(3, 3, vec![x(0), x(1), x(5), x(1), x(2), x(3), x(5), x(3), x(4)]).unwrap()
    }

    #[test]
    fn determinant_cases() {
        let t = table();
        assert_eq!(M::identity(&t, 5).det().unwrap(), RatExpr::one(&t));
        let s = M::from_ints(&t, &sym3()).unwrap();
        assert_eq!(s.det().unwrap().as_constant(), Some(Rat::from_int(3)));
        // matrix of f5 = 3x2^2 - 4x1x3 + x0x4: antidiagonal-ish, det 3
        let h = Rat::new(1.into(), 2.into());
        let mut e = vec![RatExpr::zero(&t); 25];
        e[4] = RatExpr::constant(&t, h.clone());
        e[20] = RatExpr::constant(&t, h.clone());
        e[8] = RatExpr::constant(&t, -h.clone() * Rat::from_int(4));
        e[16] = RatExpr::constant(&t, -h * Rat::from_int(4));
        e[12] = RatExpr::int(&t, 3);
        let f5 = M::new(5, 5, e).unwrap();
        assert_eq!(f5.det().unwrap().as_constant(), Some(Rat::from_int(3)));
        assert!(matches!(
            M::from_ints(&t, &[&[1, 2]]).unwrap().det(),
            Err(AlgebraError::NotSquare { .. })
        ));
    }

    #[test]
    fn symbolic_determinant_matches_laplace() {
        let t = table();
        let s = symbolic_sym3(&t);
        assert_eq!(s.det().unwrap(), laplace(&s));
    }

    #[test]
    fn adjugate_cases() {
        let t = table();
        assert_eq!(M::identity(&t, 3).adjugate().unwrap(), M::identity(&t, 3));
        let s = M::from_ints(&t, &sym3()).unwrap();
        let expected = M::from_ints(&t, &[&[16, -5, -1], &[-5, 4, -1], &[-1, -1, 1]]).unwrap();
        assert_eq!(s.adjugate().unwrap(), expected);
    }

    #[test]
    fn double_adjugate_is_det_times_matrix() {
        let t = table();
        let s = symbolic_sym3(&t);
        let aa = s.adjugate().unwrap().adjugate().unwrap();
        let d = s.det().unwrap();
        assert!(aa.frac_eq(&s.scale(&d).unwrap()).unwrap());
        let prod = s.try_mul(&s.adjugate().unwrap()).unwrap();
        assert!(prod.frac_eq(&M::identity(&t, 3).scale(&d).unwrap()).unwrap());
    }

    #[test]
    fn fractional_entries() {
        let t = table();
        let a = P::var(&t, 6);
        let inv_a = RatExpr::new(P::one(&t), a.clone()).unwrap();
        let m = M::new(
            2,
            2,
            vec![inv_a.clone(), RatExpr::one(&t), RatExpr::one(&t), RatExpr::from_poly(a)],
        )
        .unwrap();
        assert!(m.det().unwrap().is_zero());
        let m2 = M::new(
            2,
            2,
            vec![inv_a.clone(), RatExpr::zero(&t), RatExpr::zero(&t), inv_a.clone()],
        )
        .unwrap();
        assert_eq!(m2.det().unwrap(), inv_a.pow(2));
    }

    #[test]
    fn solve_cases() {
        let t = table();
        let b = M::from_polys(3, 1, vec![P::var(&t, 6), P::int(&t, 2), P::var(&t, 7)]).unwrap();
        let sol = M::identity(&t, 3).solve(&b).unwrap();
        assert_eq!(
            sol,
            LinearSolution::Solved {
                x: b.clone(),
                unique: true
            }
        );

        let inconsistent = M::from_ints(&t, &[&[1, 1], &[2, 2]]).unwrap();
        let rhs = M::from_ints(&t, &[&[1], &[3]]).unwrap();
        assert_eq!(inconsistent.solve(&rhs).unwrap(), LinearSolution::NoSolution);

        let under = M::from_ints(&t, &[&[1, 1, 0], &[0, 1, 1]]).unwrap();
        let rhs = M::from_ints(&t, &[&[2], &[3]]).unwrap();
        match under.solve(&rhs).unwrap() {
            LinearSolution::Solved { x, unique } => {
                assert!(!unique);
                assert!(under.try_mul(&x).unwrap().frac_eq(&rhs).unwrap());
            }
            LinearSolution::NoSolution => panic!("solvable"),
        }

        // symbolic coefficient matrix
        let a = P::var(&t, 6);
        let sym = M::from_polys(2, 2, vec![a.clone(), P::one(&t), P::one(&t), a.clone()]).unwrap();
        let rhs = M::from_polys(2, 1, vec![P::one(&t), P::zero(&t)]).unwrap();
        let x = sym.solve(&rhs).unwrap().solution().unwrap().clone();
        assert!(sym.try_mul(&x).unwrap().frac_eq(&rhs).unwrap());
    }

    #[test]
    fn resultant_of_linear_and_quadratic() {
        let t = table();
        let x = P::var(&t, 0);
        let a = P::var(&t, 6);
        // Res_x(x^2 - 1, x - a) = a^2 - 1 up to sign
        let r = resultant(&(&x.pow(2) - &P::one(&t)), &(&x - &a), 0).unwrap();
        let target = &a.pow(2) - &P::one(&t);
        assert!(r == target || r == -&target, "{r}");
        // common root gives zero resultant
        let r0 = resultant(&(&x.pow(2) - &P::one(&t)), &(&x - &P::one(&t)), 0).unwrap();
        assert!(r0.is_zero());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::Rat;
    use proptest::prelude::*;

    type P = MultiPoly<Rat>;

    fn table() -> Arc<VarTable> {
        VarTable::new(&[] as &[&str], &["a", "b"]).unwrap()
    }

    fn entry() -> impl Strategy<Value = (i64, i64, i64)> {
        (-3i64..4, -2i64..3, -2i64..3)
    }

    fn matrix(n: usize) -> impl Strategy<Value = PolyMatrix<Rat>> {
        prop::collection::vec(entry(), n * n).prop_map(move |es| {
            let t = table();
            let a = P::var(&t, 0);
            let b = P::var(&t, 1);
            let polys = es
                .into_iter()
                .map(|(c, i, j)| &(&P::int(&t, c) + &a.scale(&Rat::from_int(i))) + &(&b * &b).scale(&Rat::from_int(j)))
                .collect();
            PolyMatrix::from_polys(n, n, polys).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn adjugate_identity(m in (1usize..5).prop_flat_map(matrix)) {
            let t = m.table().clone();
            let d = m.det().unwrap();
            let lhs = m.try_mul(&m.adjugate().unwrap()).unwrap();
            let rhs = PolyMatrix::identity(&t, m.rows()).scale(&d).unwrap();
            prop_assert!(lhs.frac_eq(&rhs).unwrap());
        }

        #[test]
        fn det_commutes_with_evaluation(m in (1usize..5).prop_flat_map(matrix), a in -4i64..5, b in -4i64..5) {
            let vals = [(0usize, Rat::from_int(a)), (1usize, Rat::from_int(b))];
            let lhs = m.det().unwrap().substitute_values(&vals).unwrap();
            let rhs = m.substitute_values(&vals).unwrap().det().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
