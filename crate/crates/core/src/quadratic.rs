use crate::error::AlgebraError;
use crate::frac::RatExpr;
use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::Coeff;

/// Symmetric matrix `S` with `q = xᵀ S x` over the coordinates `coords`.
///
/// Off-diagonal entries carry half the coefficient of `x_i x_j`. Parameters
/// may appear in the coefficients.
pub fn quadratic_matrix<C: Coeff>(q: &MultiPoly<C>, coords: &[usize]) -> Result<PolyMatrix<C>, AlgebraError> {
    if coords.is_empty() {
        return Err(AlgebraError::EmptyMatrix);
    }
    if !q.is_zero() && q.homogeneous_degree_in(coords) != Some(2) {
        return Err(AlgebraError::NotQuadratic);
    }
    let table = q.table().clone();
    let n = coords.len();
    let parts = q.coeffs_in(coords);
    if parts
        .keys()
        .any(|m| (0..table.len()).any(|v| m.exponents()[v] > 0 && !coords.contains(&v)))
    {
        return Err(AlgebraError::NotQuadratic);
    }
    let half = C::one() / C::from_int(2);
    let mut entries = vec![RatExpr::zero(&table); n * n];
    for i in 0..n {
        for j in i..n {
            let mono = Monomial::var(table.len(), coords[i], 1).mul(&Monomial::var(table.len(), coords[j], 1));
            let Some(c) = parts.get(&mono) else { continue };
            if i == j {
                entries[i * n + i] = RatExpr::from_poly(c.clone());
            } else {
                let h = RatExpr::from_poly(c.scale(&half));
                entries[i * n + j] = h.clone();
                entries[j * n + i] = h;
            }
        }
    }
    PolyMatrix::new(n, n, entries)
}

/// Re-expands `xᵀ S x`.
pub fn quadratic_form<C: Coeff>(s: &PolyMatrix<C>, coords: &[usize]) -> Result<RatExpr<C>, AlgebraError> {
    if !s.is_square() || s.rows() != coords.len() {
        return Err(AlgebraError::DimensionMismatch {
            expected: coords.len(),
            found: s.rows(),
        });
    }
    let table = s.table().clone();
    let mut acc = RatExpr::zero(&table);
    for (i, &vi) in coords.iter().enumerate() {
        for (j, &vj) in coords.iter().enumerate() {
            let e = s.get(i, j);
            if e.is_zero() {
                continue;
            }
            let m = MultiPoly::var(&table, vi) * MultiPoly::var(&table, vj);
            acc = acc.try_add(&e.try_mul(&RatExpr::from_poly(m))?)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VarTable;
    use crate::Rat;
    use std::sync::Arc;

    type P = MultiPoly<Rat>;

    fn table() -> Arc<VarTable> {
        VarTable::new(&["x0", "x1", "x2", "x3", "x4"], &["a0", "a4"]).unwrap()
    }

    const COORDS: [usize; 5] = [0, 1, 2, 3, 4];

    #[test]
    fn single_square() {
        let t = table();
        let q = P::var(&t, 0).pow(2);
        let s = quadratic_matrix(&q, &COORDS).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == 0 && j == 0 { 1 } else { 0 };
                assert_eq!(s.get(i, j).as_constant(), Some(Rat::from_int(expected)));
            }
        }
    }

    #[test]
    fn off_diagonal_entries_are_halved() {
        let t = table();
        let x = |i| P::var(&t, i);
        let f2 = &x(2).pow(2) - &(&x(0) * &x(4));
        let s = quadratic_matrix(&f2, &COORDS).unwrap();
        let h = Rat::new((-1).into(), 2.into());
        assert_eq!(s.get(2, 2).as_constant(), Some(Rat::from_int(1)));
        assert_eq!(s.get(0, 4).as_constant(), Some(h.clone()));
        assert_eq!(s.get(4, 0).as_constant(), Some(h));
        assert_eq!(s.get(1, 1).as_constant(), Some(Rat::from_int(0)));
    }

    #[test]
    fn pencil_a0_f0_plus_a4_f4_is_degenerate() {
        let t = table();
        let x = |i| P::var(&t, i);
        let f0 = &x(3).pow(2) - &(&x(2) * &x(4));
        let f4 = &x(1).pow(2) - &(&x(0) * &x(2));
        let q = &(&P::var(&t, 5) * &f0) + &(&P::var(&t, 6) * &f4);
        let s = quadratic_matrix(&q, &COORDS).unwrap();
        // rows of x0 and x4 are both supported on the x2 column only
        for j in [0, 1, 3, 4] {
            assert!(s.get(0, j).is_zero() && s.get(4, j).is_zero());
        }
        assert!(!s.get(0, 2).is_zero() && !s.get(4, 2).is_zero());
        assert!(s.det().unwrap().is_zero());
        assert_eq!(quadratic_form(&s, &COORDS).unwrap(), RatExpr::from_poly(q));
    }

    #[test]
    fn rejects_non_quadratic() {
        let t = table();
        let cubic = P::var(&t, 0).pow(3);
        assert_eq!(quadratic_matrix(&cubic, &COORDS), Err(AlgebraError::NotQuadratic));
        let mixed = &P::var(&t, 0).pow(2) + &P::var(&t, 1);
        assert_eq!(quadratic_matrix(&mixed, &COORDS), Err(AlgebraError::NotQuadratic));
    }
}
