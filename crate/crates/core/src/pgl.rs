//! Symmetric-power representations of PGL2 and PGL3, and the induced action
//! on quadrics through the rational normal quartic.
//!
//! Conventions, used consistently below:
//!
//! * a 2x2 matrix acts on column vectors `(u, v)` of P¹;
//! * the degree-`d` Veronese map sends `(u, v)` to `(u^{d-i} v^i)_i`, and the
//!   representation matrix `R` of `g` is the unique matrix with
//!   `R ∘ ν = ν ∘ g`, acting on points by `x ↦ R x`;
//! * a quadric `q` is pulled back, `q ↦ q ∘ R`, and `g` stabilizes `q` when
//!   the pullback is proportional to `q`;
//! * on the basis `f_0..f_5` the pullback is a matrix `A` with
//!   `f_j ∘ R = Σ_i A_ij f_i`, so coefficient vectors transform by `a ↦ A a`
//!   and `A(gh) = A(h) A(g)`.
//!
//! Cyclic subgroups are never realised with roots of unity: a diagonal
//! element `diag(1, ζ)` of order `n` scales `f_i` by `ζ^{w_i}`, so its fixed
//! locus on P⁵ only depends on the weights `w_i` modulo `n`.

use std::sync::Arc;

use crate::error::{AlgebraError, GeometryError};
use crate::frac::RatExpr;
use crate::matrix::PolyMatrix;
use crate::poly::MultiPoly;
use crate::projgeom::{compose, express_in_span, proportional_tuples, pull_polynomial, Hypersurface, RationalMap};
use crate::quadratic::quadratic_matrix;
use crate::scalar::Coeff;
use crate::vars::VarTable;

/// Weights of `diag(1, t)` on the quadrics `f_0..f_5`.
pub const QUADRIC_WEIGHTS: [u32; 6] = [6, 5, 4, 3, 2, 4];

/// Invertible 2x2 matrix over the parameter fraction field.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElem2<C: Coeff> {
    matrix: PolyMatrix<C>,
}

impl<C: Coeff> GroupElem2<C> {
    pub fn new(matrix: PolyMatrix<C>) -> Result<Self, AlgebraError> {
        if matrix.rows() != 2 || matrix.cols() != 2 {
            return Err(AlgebraError::DimensionMismatch {
                expected: 2,
                found: matrix.rows().max(matrix.cols()),
            });
        }
        if matrix.det()?.is_zero() {
            return Err(AlgebraError::Singular);
        }
        Ok(GroupElem2 { matrix })
    }

    pub fn from_entries(entries: [RatExpr<C>; 4]) -> Result<Self, AlgebraError> {
        Self::new(PolyMatrix::new(2, 2, entries.to_vec())?)
    }

    pub fn from_ints(table: &Arc<VarTable>, e: [[i64; 2]; 2]) -> Result<Self, AlgebraError> {
        Self::new(PolyMatrix::from_ints(table, &[&e[0], &e[1]])?)
    }

    pub fn matrix(&self) -> &PolyMatrix<C> {
        &self.matrix
    }

    pub fn compose(&self, other: &Self) -> Result<Self, AlgebraError> {
        Self::new(self.matrix.try_mul(&other.matrix)?)
    }

    /// Action on the binary coordinates `(u, v)`.
    pub fn as_map(&self, binary: &[usize]) -> Result<RationalMap<C>, GeometryError> {
        RationalMap::linear(&self.matrix, binary, binary)
    }
}

/// Linear action on coordinates, `x ↦ M x`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRep<C: Coeff> {
    matrix: PolyMatrix<C>,
}

impl<C: Coeff> LinearRep<C> {
    pub fn new(matrix: PolyMatrix<C>) -> Result<Self, AlgebraError> {
        if !matrix.is_square() {
            return Err(AlgebraError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(LinearRep { matrix })
    }

    pub fn matrix(&self) -> &PolyMatrix<C> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn as_map(&self, coords: &[usize]) -> Result<RationalMap<C>, GeometryError> {
        RationalMap::linear(&self.matrix, coords, coords)
    }

    /// Scales so the first nonzero entry is one. Only for display.
    pub fn normalized(&self) -> Result<Self, AlgebraError> {
        let Some(first) = self.matrix.entries().iter().find(|e| !e.is_zero()) else {
            return Ok(self.clone());
        };
        let inv = first.recip()?;
        Ok(LinearRep {
            matrix: self.matrix.scale(&inv)?,
        })
    }
}

fn binomial<C: Coeff>(n: u32, k: u32) -> C {
    let mut acc: i64 = 1;
    for i in 0..k as i64 {
        acc = acc * (n as i64 - i) / (i + 1);
    }
    C::from_int(acc)
}

/// Matrix of `g` on degree-`d` binary forms in the Veronese coordinates.
pub fn sym_power_rep<C: Coeff>(g: &GroupElem2<C>, d: u32) -> Result<LinearRep<C>, AlgebraError> {
    if d == 0 {
        return Err(AlgebraError::EmptyMatrix);
    }
    let m = &g.matrix;
    let table = m.table().clone();
    let (p, q, r, s) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let n = d as usize + 1;
    let mut entries = Vec::with_capacity(n * n);
    // component i of ν(g·w) is (p u + q v)^{d-i} (r u + s v)^i
    for i in 0..=d {
        for j in 0..=d {
            let mut acc = RatExpr::zero(&table);
            for a in 0..=(d - i).min(j) {
                let b = j - a;
                if b > i {
                    continue;
                }
                let c = binomial::<C>(d - i, a) * binomial::<C>(i, b);
                let term = p
                    .pow(d - i - a)
                    .try_mul(&q.pow(a))?
                    .try_mul(&r.pow(i - b))?
                    .try_mul(&s.pow(b))?
                    .try_mul(&RatExpr::constant(&table, c))?;
                acc = acc.try_add(&term)?;
            }
            entries.push(acc);
        }
    }
    LinearRep::new(PolyMatrix::new(n, n, entries)?)
}

/// Index pairs of the quadratic Veronese coordinates `(x², xy, y², yz, z², xz)`.
pub const SYM2_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (0, 2)];

/// Matrix of a 3x3 matrix on the quadratic Veronese coordinates.
pub fn sym2_rep3<C: Coeff>(h: &PolyMatrix<C>) -> Result<LinearRep<C>, AlgebraError> {
    if h.rows() != 3 || h.cols() != 3 {
        return Err(AlgebraError::DimensionMismatch {
            expected: 3,
            found: h.rows().max(h.cols()),
        });
    }
    if h.det()?.is_zero() {
        return Err(AlgebraError::Singular);
    }
    let table = h.table().clone();
    let mut entries = Vec::with_capacity(36);
    for &(a, b) in &SYM2_PAIRS {
        for &(l, m) in &SYM2_PAIRS {
            let e = if l == m {
                h.get(a, l).try_mul(h.get(b, l))?
            } else {
                h.get(a, l)
                    .try_mul(h.get(b, m))?
                    .try_add(&h.get(a, m).try_mul(h.get(b, l))?)?
            };
            entries.push(if e.is_zero() { RatExpr::zero(&table) } else { e });
        }
    }
    LinearRep::new(PolyMatrix::new(6, 6, entries)?)
}

/// Whether `rep ∘ param = param ∘ base` as rational maps.
pub fn intertwines<C: Coeff>(
    rep: &LinearRep<C>,
    base: &RationalMap<C>,
    param: &RationalMap<C>,
) -> Result<bool, GeometryError> {
    let lhs = compose(param, &rep.as_map(param.target())?)?;
    let rhs = compose(base, param)?;
    proportional_tuples(lhs.components(), rhs.components())
}

/// A basis of quadrics on a fixed coordinate list.
#[derive(Clone, Debug)]
pub struct QuadricBasis<C: Coeff> {
    coords: Vec<usize>,
    basis: Vec<MultiPoly<C>>,
}

impl<C: Coeff> QuadricBasis<C> {
    pub fn new(coords: &[usize], basis: Vec<MultiPoly<C>>) -> Result<Self, GeometryError> {
        if basis.is_empty() || basis.iter().any(|b| b.homogeneous_degree_in(coords) != Some(2)) {
            return Err(GeometryError::DegreeMismatch);
        }
        Ok(QuadricBasis {
            coords: coords.to_vec(),
            basis,
        })
    }

    /// The six quadrics through the rational normal quartic
    /// `[u⁴ : u³v : u²v² : uv³ : v⁴]`, in the order `f_0..f_5`.
    pub fn rational_normal_quartic(table: &Arc<VarTable>, coords: &[usize; 5]) -> Self {
        let x = |i: usize| MultiPoly::<C>::var(table, coords[i]);
        let k = |n: i64| C::from_int(n);
        let basis = vec![
            &x(3).pow(2) - &(&x(2) * &x(4)),
            &(&x(2) * &x(3)) - &(&x(1) * &x(4)),
            &x(2).pow(2) - &(&x(0) * &x(4)),
            &(&x(1) * &x(2)) - &(&x(0) * &x(3)),
            &x(1).pow(2) - &(&x(0) * &x(2)),
            &(&x(2).pow(2).scale(&k(3)) - &(&x(1) * &x(3)).scale(&k(4))) + &(&x(0) * &x(4)),
        ];
        Self::new(coords, basis).expect("quadrics")
    }

    /// The six quadrics through the Veronese surface
    /// `[x² : xy : y² : yz : z² : xz]`, in the order `g_0..g_5`.
    pub fn veronese_surface(table: &Arc<VarTable>, coords: &[usize; 6]) -> Self {
        let x = |i: usize| MultiPoly::<C>::var(table, coords[i]);
        let basis = vec![
            &x(3).pow(2) - &(&x(2) * &x(4)),
            &(&x(3) * &x(5)) - &(&x(1) * &x(4)),
            &x(5).pow(2) - &(&x(0) * &x(4)),
            &(&x(1) * &x(5)) - &(&x(0) * &x(3)),
            &x(1).pow(2) - &(&x(0) * &x(2)),
            &(&x(1) * &x(3)) - &(&x(2) * &x(5)),
        ];
        Self::new(coords, basis).expect("quadrics")
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn elements(&self) -> &[MultiPoly<C>] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `Σ c_i b_i`.
    pub fn combination(&self, coeffs: &[MultiPoly<C>]) -> MultiPoly<C> {
        let table = self.basis[0].table().clone();
        coeffs
            .iter()
            .zip(&self.basis)
            .fold(MultiPoly::zero(&table), |acc, (c, b)| &acc + &(c * b))
    }

    pub fn coordinates_of(&self, q: &MultiPoly<C>) -> Result<Vec<RatExpr<C>>, GeometryError> {
        express_in_span(q, &self.basis, &self.coords)
    }

    /// Matrix of the pullback by `map` on this basis.
    pub fn pullback_matrix(&self, map: &RationalMap<C>) -> Result<PolyMatrix<C>, GeometryError> {
        let n = self.basis.len();
        let table = self.basis[0].table().clone();
        let mut entries = vec![RatExpr::zero(&table); n * n];
        for (j, b) in self.basis.iter().enumerate() {
            let pulled = pull_polynomial(b, map)?;
            for (i, c) in self.coordinates_of(&pulled)?.into_iter().enumerate() {
                entries[i * n + j] = c;
            }
        }
        Ok(PolyMatrix::new(n, n, entries)?)
    }
}

/// Pullback action of `g` on the quadrics `f_0..f_5` (see module docs).
pub fn induced_quadric_rep<C: Coeff>(
    g: &GroupElem2<C>,
    basis: &QuadricBasis<C>,
) -> Result<LinearRep<C>, GeometryError> {
    let rep = sym_power_rep(g, 4)?;
    let map = rep.as_map(basis.coords())?;
    Ok(LinearRep::new(basis.pullback_matrix(&map)?)?)
}

/// Whether `g` maps the quadric `q ⊂ P⁴` to itself.
pub fn stabilizes<C: Coeff>(g: &GroupElem2<C>, q: &Hypersurface<C>) -> Result<bool, GeometryError> {
    if q.coords().len() != 5 || q.degree() != 2 {
        return Err(GeometryError::DegreeMismatch);
    }
    let map = sym_power_rep(g, 4)?.as_map(q.coords())?;
    let pulled = Hypersurface::new(q.coords(), pull_polynomial(q.equation(), &map)?)?;
    pulled.same_as(q)
}

/// Partition of the quadric coordinates `a_0..a_5` by weight residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightClassDecomposition {
    pub modulus: u32,
    pub weights: Vec<u32>,
    pub classes: Vec<Vec<usize>>,
}

impl WeightClassDecomposition {
    pub fn class_of(&self, index: usize) -> Option<&[usize]> {
        self.classes.iter().find(|c| c.contains(&index)).map(Vec::as_slice)
    }

    pub fn contains_class(&self, class: &[usize]) -> bool {
        self.classes.iter().any(|c| c == class)
    }
}

/// Groups indices whose weights agree modulo `modulus`, in order of first
/// appearance.
pub fn weight_classes(weights: &[u32], modulus: u32) -> WeightClassDecomposition {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        match classes.iter_mut().find(|c| weights[c[0]] % modulus == w % modulus) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    WeightClassDecomposition {
        modulus,
        weights: weights.to_vec(),
        classes,
    }
}

/// Fixed components on P⁵ of the cyclic group of order `n` generated by
/// `diag(1, ζ)`: one coordinate subspace per weight class.
pub fn fixed_components(n: u32) -> WeightClassDecomposition {
    assert!(n >= 2, "cyclic group order must be at least 2");
    weight_classes(&QUADRIC_WEIGHTS, n)
}

/// Whether every quadric `Σ_{i∈class} a_i f_i` is singular, i.e. its
/// symmetric matrix has identically vanishing determinant. `coeff_vars`
/// supplies the symbolic `a_0..a_5`.
pub fn component_all_singular<C: Coeff>(
    basis: &QuadricBasis<C>,
    class: &[usize],
    coeff_vars: &[usize; 6],
) -> Result<bool, GeometryError> {
    if class.is_empty() {
        return Err(GeometryError::EmptyClass);
    }
    let table = basis.elements()[0].table().clone();
    let coeffs: Vec<MultiPoly<C>> = (0..6)
        .map(|i| {
            if class.contains(&i) {
                MultiPoly::var(&table, coeff_vars[i])
            } else {
                MultiPoly::zero(&table)
            }
        })
        .collect();
    let q = basis.combination(&coeffs);
    Ok(quadratic_matrix(&q, basis.coords())?.det()?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    type P = MultiPoly<Rat>;
    type G = GroupElem2<Rat>;
    type M = PolyMatrix<Rat>;

    fn table() -> Arc<VarTable> {
        VarTable::new(
            &["x0", "x1", "x2", "x3", "x4", "x5", "u", "v", "x", "y", "z"],
            &["t", "lam", "mu", "a0", "a1", "a2", "a3", "a4", "a5"],
        )
        .unwrap()
    }

    const P4: [usize; 5] = [0, 1, 2, 3, 4];
    const P5: [usize; 6] = [0, 1, 2, 3, 4, 5];
    const P1: [usize; 2] = [6, 7];
    const P2: [usize; 3] = [8, 9, 10];
    const T: usize = 11;
    const A: [usize; 6] = [14, 15, 16, 17, 18, 19];

    fn veronese(t: &Arc<VarTable>, d: u32) -> RationalMap<Rat> {
        let (u, v) = (P::var(t, 6), P::var(t, 7));
        let comps = (0..=d).map(|i| &u.pow(d - i) * &v.pow(i)).collect();
        RationalMap::new(P1.to_vec(), (0..=d as usize).collect(), comps).unwrap()
    }

    fn frac(p: P) -> RatExpr<Rat> {
        RatExpr::from_poly(p)
    }

    fn gm(t: &Arc<VarTable>) -> G {
        let one = RatExpr::one(t);
        let zero = RatExpr::zero(t);
        G::from_entries([one, zero.clone(), zero, frac(P::var(t, T))]).unwrap()
    }

    fn ga(t: &Arc<VarTable>) -> G {
        let one = RatExpr::one(t);
        G::from_entries([one.clone(), frac(P::var(t, T)), RatExpr::zero(t), one]).unwrap()
    }

    #[test]
    fn sym_power_cases() {
        let t = table();
        let id = G::from_ints(&t, [[1, 0], [0, 1]]).unwrap();
        assert_eq!(sym_power_rep(&id, 4).unwrap().matrix(), &M::identity(&t, 5));

        let g2 = G::from_ints(&t, [[0, 1], [1, 0]]).unwrap();
        let r = sym_power_rep(&g2, 4).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let e = if i + j == 4 { 1 } else { 0 };
                assert_eq!(r.matrix().get(i, j).as_constant(), Some(Rat::from_int(e)));
            }
        }

        let r = sym_power_rep(&gm(&t), 4).unwrap();
        let tt = P::var(&t, T);
        let diag: Vec<_> = (0..5).map(|i| frac(tt.pow(i))).collect();
        assert_eq!(r.matrix(), &M::diagonal(&diag));
    }

    #[test]
    fn sym_power_intertwines_veronese() {
        let t = table();
        for g in [ga(&t), gm(&t), G::from_ints(&t, [[2, -1], [3, 5]]).unwrap()] {
            for d in 1..=4 {
                let rep = sym_power_rep(&g, d).unwrap();
                assert!(intertwines(&rep, &g.as_map(&P1).unwrap(), &veronese(&t, d)).unwrap());
            }
        }
    }

    #[test]
    fn sym_power_rejects_singular() {
        let t = table();
        assert_eq!(G::from_ints(&t, [[1, 2], [2, 4]]).unwrap_err(), AlgebraError::Singular);
    }

    #[test]
    fn induced_rep_cases() {
        let t = table();
        let basis = QuadricBasis::<Rat>::rational_normal_quartic(&t, &P4);
        let id = G::from_ints(&t, [[1, 0], [0, 1]]).unwrap();
        assert_eq!(induced_quadric_rep(&id, &basis).unwrap().matrix(), &M::identity(&t, 6));

        let g2 = G::from_ints(&t, [[0, 1], [1, 0]]).unwrap();
        let a = induced_quadric_rep(&g2, &basis).unwrap();
        let perm = [4, 3, 2, 1, 0, 5];
        for (j, &pj) in perm.iter().enumerate() {
            for i in 0..6 {
                let e = if i == pj { 1 } else { 0 };
                assert_eq!(a.matrix().get(i, j).as_constant(), Some(Rat::from_int(e)), "({i},{j})");
            }
        }

        let a = induced_quadric_rep(&gm(&t), &basis).unwrap();
        let tt = P::var(&t, T);
        let diag: Vec<_> = QUADRIC_WEIGHTS.iter().map(|&w| frac(tt.pow(w))).collect();
        assert_eq!(a.matrix(), &M::diagonal(&diag));
    }

    #[test]
    fn stabilizer_cases() {
        let t = table();
        let basis = QuadricBasis::<Rat>::rational_normal_quartic(&t, &P4);
        let f = basis.elements();
        let (lam, mu) = (P::var(&t, 12), P::var(&t, 13));
        let q1 = &(&(&mu * &(&f[0] + &f[4])) + &(&lam * &f[2])) + &f[5];
        let q1 = Hypersurface::new(&P4, q1).unwrap();
        let g1 = G::from_ints(&t, [[1, 0], [0, -1]]).unwrap();
        let g2 = G::from_ints(&t, [[0, 1], [1, 0]]).unwrap();
        assert!(stabilizes(&g1, &q1).unwrap());
        assert!(stabilizes(&g2, &q1).unwrap());

        let q2 = Hypersurface::new(&P4, &(&f[0] + &(&lam * &f[2])) + &f[5]).unwrap();
        assert!(stabilizes(&g1, &q2).unwrap());
        assert!(!stabilizes(&g2, &q2).unwrap());

        // (1 - 4s²) f2 + f5 with s² folded into lam
        let qgm = Hypersurface::new(&P4, &(&lam * &f[2]) + &f[5]).unwrap();
        assert!(stabilizes(&gm(&t), &qgm).unwrap());
        // projective invariance under rescaling g
        let g1x3 = G::from_ints(&t, [[3, 0], [0, -3]]).unwrap();
        assert!(stabilizes(&g1x3, &q2).unwrap());
        let cubic = Hypersurface::new(&P4, P::var(&t, 0).pow(3)).unwrap();
        assert!(stabilizes(&g1, &cubic).is_err());
    }

    #[test]
    fn weight_classes_cases() {
        let two = fixed_components(2);
        assert_eq!(two.classes, vec![vec![0, 2, 4, 5], vec![1, 3]]);
        let three = fixed_components(3);
        assert_eq!(three.classes, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        let four = fixed_components(4);
        assert_eq!(four.classes, vec![vec![0, 4], vec![1], vec![2, 5], vec![3]]);
        for n in 5..12 {
            let d = fixed_components(n);
            assert!(d.contains_class(&[2, 5]), "n = {n}");
            let mut all: Vec<usize> = d.classes.concat();
            all.sort();
            assert_eq!(all, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn singular_components() {
        let t = table();
        let basis = QuadricBasis::<Rat>::rational_normal_quartic(&t, &P4);
        assert!(component_all_singular(&basis, &[0, 4], &A).unwrap());
        assert!(!component_all_singular(&basis, &[2, 5], &A).unwrap());
        assert!(component_all_singular(&basis, &[1], &A).unwrap());
        assert_eq!(component_all_singular(&basis, &[], &A), Err(GeometryError::EmptyClass));
    }

    #[test]
    fn sym2_cases() {
        let t = table();
        let id = M::identity(&t, 3);
        assert_eq!(sym2_rep3(&id).unwrap().matrix(), &M::identity(&t, 6));
        let flip = M::from_ints(&t, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]).unwrap();
        let r = sym2_rep3(&flip).unwrap();
        let expected = M::from_ints(
            &t,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, -1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
                &[0, 0, 0, 0, 0, -1],
            ],
        )
        .unwrap();
        assert_eq!(r.matrix(), &expected);

        let (x, y, z) = (P::var(&t, 8), P::var(&t, 9), P::var(&t, 10));
        let upsilon = RationalMap::new(
            P2.to_vec(),
            P5.to_vec(),
            vec![x.pow(2), &x * &y, y.pow(2), &y * &z, z.pow(2), &x * &z],
        )
        .unwrap();
        let h = M::from_ints(&t, &[&[1, 2, 0], &[0, 1, -1], &[3, 0, 1]]).unwrap();
        let base = RationalMap::linear(&h, &P2, &P2).unwrap();
        assert!(intertwines(&sym2_rep3(&h).unwrap(), &base, &upsilon).unwrap());
        // and the surface quadrics are permuted among themselves
        let g = QuadricBasis::<Rat>::veronese_surface(&t, &P5);
        let map = sym2_rep3(&h).unwrap().as_map(&P5).unwrap();
        assert!(g.pullback_matrix(&map).is_ok());
    }
}
