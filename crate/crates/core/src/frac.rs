//! Quotients of polynomials, compared by cross-multiplication.
//!
//! No multivariate GCD is ever taken. The only simplifications applied are
//! division by a constant denominator and cancellation of the common
//! monomial content of numerator and denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::poly::MultiPoly;
use crate::scalar::Coeff;
use crate::vars::VarTable;

#[derive(Clone, Debug)]
pub struct RatExpr<C> {
    num: MultiPoly<C>,
    den: MultiPoly<C>,
}

impl<C: Coeff> RatExpr<C> {
    pub fn new(num: MultiPoly<C>, den: MultiPoly<C>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.table() != den.table() {
            return Err(AlgebraError::TableMismatch);
        }
        Ok(Self::tidy(num, den))
    }

    fn tidy(num: MultiPoly<C>, den: MultiPoly<C>) -> Self {
        if num.is_zero() {
            let table = den.table().clone();
            return RatExpr {
                num,
                den: MultiPoly::one(&table),
            };
        }
        if let Some(c) = den.as_constant() {
            let inv = C::one() / c;
            let table = den.table().clone();
            return RatExpr {
                num: num.scale(&inv),
                den: MultiPoly::one(&table),
            };
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        if g.is_one() {
            RatExpr { num, den }
        } else {
            RatExpr {
                num: num.div_monomial(&g).expect("content divides"),
                den: den.div_monomial(&g).expect("content divides"),
            }
        }
    }

    pub fn from_poly(p: MultiPoly<C>) -> Self {
        let table = p.table().clone();
        RatExpr {
            num: p,
            den: MultiPoly::one(&table),
        }
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        Self::from_poly(MultiPoly::zero(table))
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::from_poly(MultiPoly::one(table))
    }

    pub fn constant(table: &Arc<VarTable>, c: C) -> Self {
        Self::from_poly(MultiPoly::constant(table, c))
    }

    pub fn int(table: &Arc<VarTable>, n: i64) -> Self {
        Self::from_poly(MultiPoly::int(table, n))
    }

    pub fn num(&self) -> &MultiPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly<C> {
        &self.den
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.num.table()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator is one.
    pub fn as_poly(&self) -> Option<&MultiPoly<C>> {
        self.den.as_constant().is_some_and(|c| c.is_one()).then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<C> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.den == o.den {
            return Ok(Self::tidy(self.num.try_add(&o.num)?, self.den.clone()));
        }
        let n = self.num.try_mul(&o.den)?.try_add(&o.num.try_mul(&self.den)?)?;
        Ok(Self::tidy(n, self.den.try_mul(&o.den)?))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(Self::tidy(self.num.try_mul(&o.num)?, self.den.try_mul(&o.den)?))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, AlgebraError> {
        if o.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::tidy(self.num.try_mul(&o.den)?, self.den.try_mul(&o.num)?))
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::tidy(self.num.pow(e), self.den.pow(e))
    }

    /// Cross-multiplication equality.
    pub fn frac_eq(&self, o: &Self) -> Result<bool, AlgebraError> {
        Ok(self.num.try_mul(&o.den)? == o.num.try_mul(&self.den)?)
    }

    /// Simultaneous substitution of fractions for variables.
    pub fn substitute(&self, bindings: &[(usize, RatExpr<C>)]) -> Result<Self, AlgebraError> {
        substitute_frac(&self.num, bindings)?.try_div(&substitute_frac(&self.den, bindings)?)
    }

    pub fn substitute_values(&self, values: &[(usize, C)]) -> Result<Self, AlgebraError> {
        Self::new(self.num.substitute_values(values), self.den.substitute_values(values))
    }

    /// `None` when the denominator vanishes at `point`.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        let d = self.den.eval(point);
        (!d.is_zero()).then(|| self.num.eval(point) / d)
    }
}

impl<C: Coeff> PartialEq for RatExpr<C> {
    fn eq(&self, other: &Self) -> bool {
        self.frac_eq(other).unwrap_or(false)
    }
}

/// Substitutes fractions into a polynomial, producing a fraction.
pub fn substitute_frac<C: Coeff>(
    p: &MultiPoly<C>,
    bindings: &[(usize, RatExpr<C>)],
) -> Result<RatExpr<C>, AlgebraError> {
    let table = p.table().clone();
    let bound: Vec<usize> = bindings.iter().map(|(v, _)| *v).collect();
    let mut out = RatExpr::zero(&table);
    // group the terms by their bound part so each fraction power is built once
    for (mono, coeff) in p.coeffs_in(&bound) {
        let mut factor = RatExpr::from_poly(coeff);
        for (v, value) in bindings {
            let e = mono.exponents()[*v];
            if e > 0 {
                factor = factor.try_mul(&value.pow(e))?;
            }
        }
        out = out.try_add(&factor)?;
    }
    Ok(out)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<C: Coeff> $tr<&RatExpr<C>> for &RatExpr<C> {
            type Output = RatExpr<C>;
            fn $method(self, rhs: &RatExpr<C>) -> RatExpr<C> {
                self.$try(rhs).expect("fraction operands share a table")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Mul, mul, try_mul);

impl<C: Coeff> Sub<&RatExpr<C>> for &RatExpr<C> {
    type Output = RatExpr<C>;
    fn sub(self, rhs: &RatExpr<C>) -> RatExpr<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Neg for &RatExpr<C> {
    type Output = RatExpr<C>;
    fn neg(self) -> RatExpr<C> {
        RatExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<C: Coeff> fmt::Display for RatExpr<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.as_poly().is_some() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
