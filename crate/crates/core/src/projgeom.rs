//! Rational maps between projective spaces and hypersurfaces in them.
//!
//! Projective spaces are identified by an ordered list of coordinate
//! variables of a [`VarTable`]. Source and target spaces of a map may reuse
//! the same variable names: composition substitutes simultaneously, so the
//! positional correspondence is all that matters.
//!
//! Projective equality is proportionality over the fraction field of the
//! whole table, tested by 2x2 cross products. Only monomial content is ever
//! removed from a tuple; any other common factor is absorbed by the
//! proportionality tests.

use std::sync::Arc;

use crate::error::{AlgebraError, GeometryError};
use crate::frac::RatExpr;
use crate::matrix::{LinearSolution, PolyMatrix};
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::Coeff;
use crate::vars::VarTable;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap<C: Coeff> {
    source: Vec<usize>,
    target: Vec<usize>,
    components: Vec<MultiPoly<C>>,
    degree: u32,
}

/// A failed cross product `v_i w_j - v_j w_i` with `i < j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossWitness<C: Coeff> {
    pub i: usize,
    pub j: usize,
    pub cross: MultiPoly<C>,
}

impl<C: Coeff> RationalMap<C> {
    /// Validates a tuple of components: every nonzero component must be
    /// homogeneous of one common degree in `source`.
    pub fn new(source: Vec<usize>, target: Vec<usize>, components: Vec<MultiPoly<C>>) -> Result<Self, GeometryError> {
        if components.is_empty() {
            return Err(GeometryError::Empty);
        }
        if components.len() != target.len() {
            return Err(GeometryError::ArityMismatch {
                expected: target.len(),
                found: components.len(),
            });
        }
        let table = components[0].table();
        if components.iter().any(|c| c.table() != table) {
            return Err(AlgebraError::TableMismatch.into());
        }
        let mut degree = None;
        for (index, c) in components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = c
                .homogeneous_degree_in(&source)
                .ok_or(GeometryError::InhomogeneousComponent { index })?;
            match degree {
                None => degree = Some(d),
                Some(first) if first != d => return Err(GeometryError::MixedDegrees { first, other: d }),
                _ => {}
            }
        }
        let degree = degree.ok_or(GeometryError::AllZero)?;
        Ok(RationalMap {
            source,
            target,
            components,
            degree,
        })
    }

    /// A map whose source and target use the same coordinates.
    pub fn endo(coords: &[usize], components: Vec<MultiPoly<C>>) -> Result<Self, GeometryError> {
        Self::new(coords.to_vec(), coords.to_vec(), components)
    }

    pub fn identity(table: &Arc<VarTable>, coords: &[usize]) -> Self {
        let comps = coords.iter().map(|&v| MultiPoly::var(table, v)).collect();
        Self::endo(coords, comps).expect("identity is valid")
    }

    /// The linear map `x ↦ M x`.
    pub fn linear(matrix: &PolyMatrix<C>, source: &[usize], target: &[usize]) -> Result<Self, GeometryError> {
        if matrix.cols() != source.len() || matrix.rows() != target.len() {
            return Err(GeometryError::ArityMismatch {
                expected: source.len(),
                found: matrix.cols(),
            });
        }
        let table = matrix.table().clone();
        let (rows, _) = matrix.clear_denominators();
        let comps = rows
            .iter()
            .map(|row| {
                row.iter().zip(source).fold(MultiPoly::zero(&table), |acc, (e, &v)| {
                    &acc + &(e * &MultiPoly::var(&table, v))
                })
            })
            .collect();
        Self::new(source.to_vec(), target.to_vec(), comps)
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.components[0].table()
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn components(&self) -> &[MultiPoly<C>] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `next ∘ self`: first `self`, then `next`, with monomial content removed.
    pub fn then(&self, next: &RationalMap<C>) -> Result<Self, GeometryError> {
        compose(self, next)
    }

    /// Substitutes constants for parameters in every component.
    pub fn substitute_values(&self, values: &[(usize, C)]) -> Result<Self, GeometryError> {
        let comps = self.components.iter().map(|c| c.substitute_values(values)).collect();
        Self::new(self.source.clone(), self.target.clone(), comps)
    }

    /// Same components regarded on other coordinate lists.
    pub fn relabel(&self, source: Vec<usize>, target: Vec<usize>) -> Result<Self, GeometryError> {
        Self::new(source, target, self.components.clone())
    }

    /// Evaluates the components at a point of the source space; `params`
    /// fixes the remaining variables (unlisted ones are zero).
    pub fn eval_at(&self, point: &[C], params: &[(usize, C)]) -> Result<Vec<C>, GeometryError> {
        if point.len() != self.source.len() {
            return Err(GeometryError::ArityMismatch {
                expected: self.source.len(),
                found: point.len(),
            });
        }
        let mut full = vec![C::zero(); self.table().len()];
        for (v, c) in params {
            full[*v] = c.clone();
        }
        for (v, c) in self.source.iter().zip(point) {
            full[*v] = c.clone();
        }
        Ok(self.components.iter().map(|c| c.eval(&full)).collect())
    }
}

/// Divides a tuple by its common monomial content and makes the leading
/// coefficient of the first nonzero entry one.
pub fn strip_content<C: Coeff>(tuple: &[MultiPoly<C>]) -> Vec<MultiPoly<C>> {
    let nonzero: Vec<&MultiPoly<C>> = tuple.iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return tuple.to_vec();
    };
    let content = nonzero
        .iter()
        .skip(1)
        .fold(first.monomial_content(), |acc, p| acc.gcd(&p.monomial_content()));
    let lead = first.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
    let inv = C::one() / lead;
    tuple
        .iter()
        .map(|p| p.div_monomial(&content).expect("content divides").scale(&inv))
        .collect()
}

/// `g ∘ f`: substitutes `f`'s components for `g`'s source coordinates.
pub fn compose<C: Coeff>(f: &RationalMap<C>, g: &RationalMap<C>) -> Result<RationalMap<C>, GeometryError> {
    if f.components.len() != g.source.len() {
        return Err(GeometryError::ArityMismatch {
            expected: g.source.len(),
            found: f.components.len(),
        });
    }
    let bindings: Vec<(usize, MultiPoly<C>)> = g.source.iter().copied().zip(f.components.iter().cloned()).collect();
    let comps = g
        .components
        .iter()
        .map(|c| c.substitute(&bindings))
        .collect::<Result<Vec<_>, _>>()?;
    RationalMap::new(f.source.clone(), g.target.clone(), strip_content(&comps))
}

/// First failing cross product, or `None` when `v ∝ w`.
pub fn proportionality_witness<C: Coeff>(
    v: &[MultiPoly<C>],
    w: &[MultiPoly<C>],
) -> Result<Option<CrossWitness<C>>, GeometryError> {
    if v.len() != w.len() {
        return Err(GeometryError::ArityMismatch {
            expected: v.len(),
            found: w.len(),
        });
    }
    let Some(k) = v.iter().position(|p| !p.is_zero()) else {
        return Err(GeometryError::AllZero);
    };
    if w.iter().all(MultiPoly::is_zero) {
        return Err(GeometryError::AllZero);
    }
    // with v_k ≠ 0, v_k w_j = v_j w_k for every j already forces v ∝ w
    for j in 0..v.len() {
        if j == k {
            continue;
        }
        let cross = v[k].try_mul(&w[j])?.try_sub(&v[j].try_mul(&w[k])?)?;
        if !cross.is_zero() {
            let (i, j, cross) = if k < j { (k, j, cross) } else { (j, k, -cross) };
            return Ok(Some(CrossWitness { i, j, cross }));
        }
    }
    Ok(None)
}

pub fn proportional_tuples<C: Coeff>(v: &[MultiPoly<C>], w: &[MultiPoly<C>]) -> Result<bool, GeometryError> {
    Ok(proportionality_witness(v, w)?.is_none())
}

/// Index pair `(i, j)` with `v_i w_j ≠ v_j w_i`, or `None` when the fraction
/// vectors are proportional.
pub fn fraction_proportionality_witness<C: Coeff>(
    v: &[RatExpr<C>],
    w: &[RatExpr<C>],
) -> Result<Option<(usize, usize)>, GeometryError> {
    if v.len() != w.len() {
        return Err(GeometryError::ArityMismatch {
            expected: v.len(),
            found: w.len(),
        });
    }
    let Some(k) = v.iter().position(|p| !p.is_zero()) else {
        return Err(GeometryError::AllZero);
    };
    if w.iter().all(RatExpr::is_zero) {
        return Err(GeometryError::AllZero);
    }
    for j in 0..v.len() {
        if j != k && !v[k].try_mul(&w[j])?.frac_eq(&v[j].try_mul(&w[k])?)? {
            return Ok(Some((k.min(j), k.max(j))));
        }
    }
    Ok(None)
}

/// Whether `q` vanishes identically on the image of `m`.
pub fn vanishes_on_param<C: Coeff>(q: &MultiPoly<C>, m: &RationalMap<C>) -> Result<bool, GeometryError> {
    Ok(pull_polynomial(q, m)?.is_zero())
}

/// `q ∘ m` without any normalization.
pub fn pull_polynomial<C: Coeff>(q: &MultiPoly<C>, m: &RationalMap<C>) -> Result<MultiPoly<C>, GeometryError> {
    let bindings: Vec<(usize, MultiPoly<C>)> = m.target.iter().copied().zip(m.components.iter().cloned()).collect();
    Ok(q.substitute(&bindings)?)
}

/// Hypersurface given by a nonzero homogeneous equation, up to a scalar from
/// the parameter fraction field.
#[derive(Clone, Debug)]
pub struct Hypersurface<C: Coeff> {
    coords: Vec<usize>,
    equation: MultiPoly<C>,
}

impl<C: Coeff> Hypersurface<C> {
    pub fn new(coords: &[usize], equation: MultiPoly<C>) -> Result<Self, GeometryError> {
        if equation.is_zero() || equation.homogeneous_degree_in(coords).is_none() {
            return Err(GeometryError::InvalidHypersurface);
        }
        Ok(Hypersurface {
            coords: coords.to_vec(),
            equation,
        })
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn equation(&self) -> &MultiPoly<C> {
        &self.equation
    }

    pub fn degree(&self) -> u32 {
        self.equation.homogeneous_degree_in(&self.coords).expect("validated")
    }

    /// Coefficients of the equation per coordinate monomial, aligned with
    /// the other hypersurface's monomials.
    fn coefficient_vectors(&self, other: &Self) -> (Vec<MultiPoly<C>>, Vec<MultiPoly<C>>) {
        let a = self.equation.coeffs_in(&self.coords);
        let b = other.equation.coeffs_in(&other.coords);
        let table = self.equation.table().clone();
        let mut keys: Vec<&Monomial> = a.keys().chain(b.keys()).collect();
        keys.sort();
        keys.dedup();
        let pick = |m: &BTreeLike<C>, k: &Monomial| m.get(k).cloned().unwrap_or_else(|| MultiPoly::zero(&table));
        (
            keys.iter().map(|k| pick(&a, k)).collect(),
            keys.iter().map(|k| pick(&b, k)).collect(),
        )
    }

    /// Failing cross product of coefficient vectors, `None` if equal.
    pub fn difference_witness(&self, other: &Self) -> Result<Option<CrossWitness<C>>, GeometryError> {
        if self.coords != other.coords {
            return Err(GeometryError::ArityMismatch {
                expected: self.coords.len(),
                found: other.coords.len(),
            });
        }
        let (v, w) = self.coefficient_vectors(other);
        proportionality_witness(&v, &w)
    }

    /// Projective equality: equations proportional by a coordinate-free scalar.
    pub fn same_as(&self, other: &Self) -> Result<bool, GeometryError> {
        Ok(self.difference_witness(other)?.is_none())
    }

    pub fn substitute_values(&self, values: &[(usize, C)]) -> Result<Self, GeometryError> {
        Self::new(&self.coords, self.equation.substitute_values(values))
    }
}

type BTreeLike<C> = std::collections::BTreeMap<Monomial, MultiPoly<C>>;

/// Equation of `h` composed with `m`, monomial content removed; the result
/// lives on `m`'s source.
pub fn pullback<C: Coeff>(m: &RationalMap<C>, h: &Hypersurface<C>) -> Result<Hypersurface<C>, GeometryError> {
    if h.coords != m.target {
        return Err(GeometryError::ArityMismatch {
            expected: m.target.len(),
            found: h.coords.len(),
        });
    }
    let eq = pull_polynomial(&h.equation, m)?;
    if eq.is_zero() {
        return Err(GeometryError::InvalidHypersurface);
    }
    let eq = strip_content(std::slice::from_ref(&eq)).remove(0);
    Hypersurface::new(&m.source, eq)
}

/// Coefficients `c` with `q = Σ c_i basis_i`, over the parameter fraction field.
pub fn express_in_span<C: Coeff>(
    q: &MultiPoly<C>,
    basis: &[MultiPoly<C>],
    coords: &[usize],
) -> Result<Vec<RatExpr<C>>, GeometryError> {
    let table = q.table().clone();
    let degree = basis
        .first()
        .and_then(|b| b.homogeneous_degree_in(coords))
        .ok_or(GeometryError::DegreeMismatch)?;
    if basis.iter().any(|b| b.homogeneous_degree_in(coords) != Some(degree))
        || (!q.is_zero() && q.homogeneous_degree_in(coords) != Some(degree))
    {
        return Err(GeometryError::DegreeMismatch);
    }
    let target = q.coeffs_in(coords);
    let parts: Vec<_> = basis.iter().map(|b| b.coeffs_in(coords)).collect();
    let mut keys: Vec<&Monomial> = target.keys().chain(parts.iter().flat_map(|p| p.keys())).collect();
    keys.sort();
    keys.dedup();
    let zero = MultiPoly::zero(&table);
    let mut a = Vec::with_capacity(keys.len() * basis.len());
    let mut b = Vec::with_capacity(keys.len());
    for k in &keys {
        for p in &parts {
            a.push(p.get(*k).unwrap_or(&zero).clone());
        }
        b.push(target.get(*k).unwrap_or(&zero).clone());
    }
    if keys.is_empty() {
        return Ok(vec![RatExpr::zero(&table); basis.len()]);
    }
    let a = PolyMatrix::from_polys(keys.len(), basis.len(), a)?;
    let b = PolyMatrix::from_polys(keys.len(), 1, b)?;
    match a.solve(&b)? {
        LinearSolution::Solved { x, .. } => Ok(x.column(0)),
        LinearSolution::NoSolution => Err(GeometryError::NotInSpan),
    }
}

/// Image of `h` under the invertible linear map `x ↦ M x`: the equation
/// composed with the adjugate of `M`.
pub fn linear_image<C: Coeff>(m: &PolyMatrix<C>, h: &Hypersurface<C>) -> Result<Hypersurface<C>, GeometryError> {
    if !m.is_square() || m.rows() != h.coords.len() {
        return Err(GeometryError::ArityMismatch {
            expected: h.coords.len(),
            found: m.rows(),
        });
    }
    if m.det()?.is_zero() {
        return Err(AlgebraError::Singular.into());
    }
    let inverse = RationalMap::linear(&m.adjugate()?, &h.coords, &h.coords)?;
    pullback(&inverse, h)
}
