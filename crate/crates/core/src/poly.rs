//! Sparse multivariate polynomials with exact coefficients.
//!
//! A [`MultiPoly`] is a map from dense exponent vectors (one entry per table
//! variable) to nonzero coefficients. Terms are kept in graded lexicographic
//! order: higher total degree first, ties broken lexicographically in table
//! order. The order is a monomial order, so it also drives exact division.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::scalar::Coeff;
use crate::vars::VarTable;

/// Exponent vector, one entry per variable of the owning table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn var(len: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; len];
        e[index] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&v| self.0[v]).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Keeps only the exponents of `vars`.
    pub fn restrict(&self, vars: &[usize]) -> Monomial {
        let mut e = vec![0; self.0.len()];
        for &v in vars {
            e[v] = self.0[v];
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly<C> {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn accumulate<C: Coeff>(terms: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    match terms.get_mut(&m) {
        Some(slot) => {
            let old = std::mem::replace(slot, C::zero());
            let sum = old + c;
            if sum.is_zero() {
                terms.remove(&m);
            } else {
                *slot = sum;
            }
        }
        None => {
            if !c.is_zero() {
                terms.insert(m, c);
            }
        }
    }
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        MultiPoly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, C::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: C) -> Self {
        Self::monomial(table, Monomial::one(table.len()), c)
    }

    pub fn int(table: &Arc<VarTable>, n: i64) -> Self {
        Self::constant(table, C::from_int(n))
    }

    pub fn monomial(table: &Arc<VarTable>, m: Monomial, c: C) -> Self {
        assert_eq!(m.0.len(), table.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            table: table.clone(),
            terms,
        }
    }

    pub fn var(table: &Arc<VarTable>, index: usize) -> Self {
        Self::monomial(table, Monomial::var(table.len(), index, 1), C::one())
    }

    /// Variable by name.
    pub fn named(table: &Arc<VarTable>, name: &str) -> Result<Self, AlgebraError> {
        Ok(Self::var(table, table.lookup(name)?))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(table: &Arc<VarTable>, terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), table.len(), "exponent vector length");
            accumulate(&mut out, m, c);
        }
        MultiPoly {
            table: table.clone(),
            terms: out,
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Whether the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(vars)).max()
    }

    pub fn degree_in_var(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Common degree when every term has the same degree in `vars`.
    /// `None` for the zero polynomial and for inhomogeneous input.
    pub fn homogeneous_degree_in(&self, vars: &[usize]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree_in(vars));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Variables that appear with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.table.len())
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    fn check_table(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(AlgebraError::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_table(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(MultiPoly {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_table(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        Ok(MultiPoly {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_table(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut terms, m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(MultiPoly {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        MultiPoly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        MultiPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    /// Divides every term by `mono`, which must divide all of them.
    pub fn div_monomial(&self, mono: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| m.div(mono).map(|q| (q, c.clone())))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(MultiPoly {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.table);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest monomial dividing every term (the unit monomial for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.table.len()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Simultaneous substitution of polynomials for variables.
    ///
    /// Unbound variables pass through unchanged.
    pub fn substitute(&self, bindings: &[(usize, MultiPoly<C>)]) -> Result<Self, AlgebraError> {
        for (_, b) in bindings {
            self.check_table(b)?;
        }
        let mut image: HashMap<usize, &MultiPoly<C>> = HashMap::new();
        for (v, b) in bindings {
            image.insert(*v, b);
        }
        let mut powers: HashMap<(usize, u32), MultiPoly<C>> = HashMap::new();
        let mut out = Self::zero(&self.table);
        for (m, c) in &self.terms {
            let mut free = m.0.clone();
            let mut factor = Self::constant(&self.table, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let Some(b) = image.get(&v) {
                    free[v] = 0;
                    let p = powers.entry((v, e)).or_insert_with(|| b.pow(e));
                    factor = &factor * &*p;
                }
            }
            out = &out + &factor.mul_monomial(&Monomial(free));
        }
        Ok(out)
    }

    /// Substitutes constants for some variables.
    pub fn substitute_values(&self, values: &[(usize, C)]) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let mut k = c.clone();
            for (v, val) in values {
                let p = e[*v];
                if p > 0 {
                    k = k * num_traits::pow(val.clone(), p as usize);
                    e[*v] = 0;
                }
            }
            accumulate(&mut terms, Monomial(e), k);
        }
        MultiPoly {
            table: self.table.clone(),
            terms,
        }
    }

    /// Full evaluation; `point` assigns a value to every table variable.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.table.len(), "evaluation point length");
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * num_traits::pow(point[v].clone(), e as usize);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Splits into coefficients of the monomials in `vars`.
    ///
    /// Keys are monomials supported on `vars`; values are polynomials in the
    /// remaining variables.
    pub fn coeffs_in(&self, vars: &[usize]) -> BTreeMap<Monomial, MultiPoly<C>> {
        let mut out: BTreeMap<Monomial, BTreeMap<Monomial, C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.restrict(vars);
            let rest = m.div(&key).expect("restriction divides");
            accumulate(out.entry(key).or_default(), rest, c.clone());
        }
        out.into_iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(k, terms)| {
                (
                    k,
                    MultiPoly {
                        table: self.table.clone(),
                        terms,
                    },
                )
            })
            .collect()
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || self.check_table(divisor).is_err() {
            return None;
        }
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let qc = c.clone() / lc.clone();
            let step = divisor.mul_monomial(&qm).scale(&qc);
            accumulate(&mut quot, qm, qc);
            rem = &rem - &step;
        }
        Some(MultiPoly {
            table: self.table.clone(),
            terms: quot,
        })
    }

    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        Self::from_terms(&self.table, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<C: Coeff> $tr<&MultiPoly<C>> for &MultiPoly<C> {
            type Output = MultiPoly<C>;
            /// Panics when the operands use different tables; use the
            /// `try_` methods to get an error instead.
            fn $method(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                self.$try(rhs).expect("polynomial operands share a table")
            }
        }

        impl<C: Coeff> $tr<MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, table: &VarTable, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(table.name(v))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical form: descending graded-lex terms, explicit `*` and `^`,
/// coefficients as `int` or `int/nat`.
impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.table, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    type P = MultiPoly<Rat>;

    fn table() -> Arc<VarTable> {
        VarTable::new(&["x0", "x1", "x2", "x3", "x4"], &["a", "b"]).unwrap()
    }

    fn x(t: &Arc<VarTable>, i: usize) -> P {
        P::var(t, i)
    }

    fn basis(t: &Arc<VarTable>) -> Vec<P> {
        let x0 = || x(t, 0);
        let x1 = || x(t, 1);
        let x2 = || x(t, 2);
        let x3 = || x(t, 3);
        let x4 = || x(t, 4);
        vec![
            x3() * x3() - x2() * x4(),
            x2() * x3() - x1() * x4(),
            x2() * x2() - x0() * x4(),
            x1() * x2() - x0() * x3(),
            x1() * x1() - x0() * x2(),
            P::int(t, 3) * x2() * x2() - P::int(t, 4) * x1() * x3() + x0() * x4(),
        ]
    }

    #[test]
    fn displays_in_graded_lex_order() {
        let t = table();
        let f = basis(&t);
        assert_eq!(f[0].to_string(), "-x2*x4 + x3^2");
        assert_eq!(f[5].to_string(), "x0*x4 - 4*x1*x3 + 3*x2^2");
        let c = P::constant(&t, "-1/64".parse().unwrap());
        assert_eq!((x(&t, 1) + c).to_string(), "x1 - 1/64");
        assert_eq!(P::zero(&t).to_string(), "0");
    }

    #[test]
    fn addition_cases() {
        let t = table();
        let f = basis(&t);
        assert_eq!(&f[3] + &P::zero(&t), f[3]);
        let expected = P::int(&t, 4) * x(&t, 2) * x(&t, 2) - P::int(&t, 4) * x(&t, 1) * x(&t, 3);
        assert_eq!(&f[2] + &f[5], expected);
        assert!((&f[0] + &(-&f[0])).is_zero());
    }

    #[test]
    fn multiplication_cases() {
        let t = table();
        let f = basis(&t);
        assert_eq!(&f[1] * &P::one(&t), f[1]);
        let dsq = (x(&t, 3) - x(&t, 2)) * (x(&t, 3) + x(&t, 2));
        assert_eq!(dsq, x(&t, 3) * x(&t, 3) - x(&t, 2) * x(&t, 2));
        // (x1^2 - x0x2)(x3^2 - x2x4) expanded by hand
        let prod = &f[4] * &f[0];
        assert_eq!(prod.num_terms(), 4);
        let m = Monomial::from_exponents(vec![0, 2, 0, 2, 0, 0, 0]);
        assert_eq!(prod.coefficient(&m), Rat::from_int(1));
    }

    #[test]
    fn substitution_cases() {
        let t = table();
        let f = basis(&t);
        assert_eq!(f[2].substitute(&[(2, x(&t, 2))]).unwrap(), f[2]);
        // a, b used as the P^1 coordinates here
        let (u, v) = (x(&t, 5), x(&t, 6));
        let nu: Vec<(usize, P)> = (0..5).map(|i| (i, u.pow(4 - i as u32) * v.pow(i as u32))).collect();
        for q in &f {
            assert!(q.substitute(&nu).unwrap().is_zero(), "{q}");
        }
        // simultaneous, not sequential
        let swap = x(&t, 0) - x(&t, 1);
        let s = swap.substitute(&[(0, x(&t, 1)), (1, x(&t, 0))]).unwrap();
        assert_eq!(s, x(&t, 1) - x(&t, 0));
    }

    #[test]
    fn table_mismatch_is_an_error() {
        let t1 = table();
        let t2 = VarTable::new(&["y"], &[]).unwrap();
        let p = P::var(&t1, 0);
        let q = P::var(&t2, 0);
        assert_eq!(p.try_add(&q), Err(AlgebraError::TableMismatch));
        assert_eq!(p.try_mul(&q), Err(AlgebraError::TableMismatch));
        assert!(p.substitute(&[(0, q)]).is_err());
    }

    #[test]
    fn exact_division() {
        let t = table();
        let a = x(&t, 5);
        let b = x(&t, 6);
        let d = &(&a * &b) + &P::one(&t);
        let p = &(&d * &d) * &(&a - &b);
        assert_eq!(p.div_exact(&d).unwrap(), &d * &(&a - &b));
        assert!(p.div_exact(&(&a + &P::int(&t, 2))).is_none());
        assert!(P::zero(&t).div_exact(&d).unwrap().is_zero());
    }

    #[test]
    fn coefficient_split_and_content() {
        let t = table();
        let a = x(&t, 5);
        let q = &(&(&a * &x(&t, 0)) * &x(&t, 1)) + &(&x(&t, 0) * &x(&t, 1));
        let split = q.coeffs_in(&[0, 1, 2, 3, 4]);
        assert_eq!(split.len(), 1);
        assert_eq!(split.values().next().unwrap(), &(&a + &P::one(&t)));
        let content = q.monomial_content();
        assert_eq!(content.exponents(), &[1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(q.homogeneous_degree_in(&[0, 1, 2, 3, 4]), Some(2));
        assert_eq!(q.homogeneous_degree_in(&[5]), None);
    }

    #[test]
    fn evaluation_matches_substitution() {
        let t = table();
        let f = basis(&t);
        let pt: Vec<Rat> = [1, 2, 5, 7, 13, 0, 0].iter().map(|&n| Rat::from_int(n)).collect();
        assert_eq!(f[0].eval(&pt), Rat::from_int(49 - 65));
        let vals: Vec<(usize, Rat)> = pt.iter().cloned().enumerate().collect();
        assert_eq!(f[0].substitute_values(&vals).as_constant(), Some(Rat::from_int(-16)));
    }
}
