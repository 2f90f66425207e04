//! Every constant object the checks refer to, validated once at construction.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use fano_core::projgeom::vanishes_on_param;
use fano_core::{GeometryError, Group2, Map, Matrix, Poly, Surface};

use crate::session::{session, Session};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    Polynomial,
    Map,
    Hypersurface,
    Matrix,
    GroupElement,
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectKind::Polynomial => "polynomial",
            ObjectKind::Map => "map",
            ObjectKind::Hypersurface => "hypersurface",
            ObjectKind::Matrix => "matrix",
            ObjectKind::GroupElement => "group-element",
        })
    }
}

#[derive(Clone, Debug)]
pub enum ObjectValue {
    Polynomial(Poly),
    Map(Map),
    Hypersurface(Surface),
    Matrix(Matrix),
    GroupElement(Group2),
}

impl ObjectValue {
    pub fn kind(&self) -> ObjectKind {
        match self {
            ObjectValue::Polynomial(_) => ObjectKind::Polynomial,
            ObjectValue::Map(_) => ObjectKind::Map,
            ObjectValue::Hypersurface(_) => ObjectKind::Hypersurface,
            ObjectValue::Matrix(_) => ObjectKind::Matrix,
            ObjectValue::GroupElement(_) => ObjectKind::GroupElement,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedObject {
    pub id: &'static str,
    pub value: ObjectValue,
    pub locus: &'static str,
}

impl NamedObject {
    pub fn kind(&self) -> ObjectKind {
        self.value.kind()
    }
}

#[derive(Debug, thiserror::Error)]
#[error("object `{id}` failed validation: {reason}")]
pub struct RegistryError {
    pub id: String,
    pub reason: String,
}

#[derive(Debug)]
pub struct Registry {
    objects: Vec<NamedObject>,
    index: BTreeMap<&'static str, usize>,
}

impl Registry {
    pub fn objects(&self) -> &[NamedObject] {
        &self.objects
    }

    pub fn get(&self, id: &str) -> Option<&NamedObject> {
        self.index.get(id).map(|&i| &self.objects[i])
    }

    fn value(&self, id: &str) -> &ObjectValue {
        &self.get(id).unwrap_or_else(|| panic!("`{id}` is not registered")).value
    }

    // Typed accessors for ids fixed in this crate; a wrong id is a bug.

    pub fn poly(&self, id: &str) -> &Poly {
        match self.value(id) {
            ObjectValue::Polynomial(p) => p,
            other => panic!("`{id}` is a {}", other.kind()),
        }
    }

    pub fn map(&self, id: &str) -> &Map {
        match self.value(id) {
            ObjectValue::Map(m) => m,
            other => panic!("`{id}` is a {}", other.kind()),
        }
    }

    pub fn surface(&self, id: &str) -> &Surface {
        match self.value(id) {
            ObjectValue::Hypersurface(h) => h,
            other => panic!("`{id}` is a {}", other.kind()),
        }
    }

    pub fn matrix(&self, id: &str) -> &Matrix {
        match self.value(id) {
            ObjectValue::Matrix(m) => m,
            other => panic!("`{id}` is a {}", other.kind()),
        }
    }

    pub fn group(&self, id: &str) -> &Group2 {
        match self.value(id) {
            ObjectValue::GroupElement(g) => g,
            other => panic!("`{id}` is a {}", other.kind()),
        }
    }

    /// `f_0..f_5`.
    pub fn f(&self) -> Vec<Poly> {
        (0..6).map(|i| self.poly(&format!("f{i}")).clone()).collect()
    }

    /// `g_0..g_5`.
    pub fn g(&self) -> Vec<Poly> {
        (0..6).map(|i| self.poly(&format!("g{i}")).clone()).collect()
    }
}

/// The validated registry, built on first use.
pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| build(session()).unwrap_or_else(|e| panic!("{e}")))
}

struct Builder<'a> {
    s: &'a Session,
    objects: Vec<NamedObject>,
}

fn invalid(id: &str, e: impl fmt::Display) -> RegistryError {
    RegistryError {
        id: id.to_string(),
        reason: e.to_string(),
    }
}

impl<'a> Builder<'a> {
    fn push(&mut self, id: &'static str, locus: &'static str, value: ObjectValue) -> Result<(), RegistryError> {
        if self.objects.iter().any(|o| o.id == id) {
            return Err(invalid(id, "duplicate id"));
        }
        self.objects.push(NamedObject { id, value, locus });
        Ok(())
    }

    fn quadric(&mut self, id: &'static str, locus: &'static str, text: &str) -> Result<(), RegistryError> {
        let p = self.s.poly(text);
        if p.homogeneous_degree_in(&self.s.x) != Some(2) {
            return Err(invalid(id, "not a quadratic form"));
        }
        self.push(id, locus, ObjectValue::Polynomial(p))
    }

    fn surface(
        &mut self,
        id: &'static str,
        locus: &'static str,
        coords: &[usize],
        eq: Poly,
    ) -> Result<(), RegistryError> {
        let h = Surface::new(coords, eq).map_err(|e| invalid(id, e))?;
        self.push(id, locus, ObjectValue::Hypersurface(h))
    }

    fn map(
        &mut self,
        id: &'static str,
        locus: &'static str,
        source: &[usize],
        target: &[usize],
        comps: Vec<Poly>,
    ) -> Result<(), RegistryError> {
        let m = Map::new(source.to_vec(), target.to_vec(), comps).map_err(|e| invalid(id, e))?;
        self.push(id, locus, ObjectValue::Map(m))
    }

    fn group(&mut self, id: &'static str, locus: &'static str, entries: [&str; 4]) -> Result<(), RegistryError> {
        let polys = entries.iter().map(|e| self.s.poly(e)).collect();
        let m = Matrix::from_polys(2, 2, polys).map_err(|e| invalid(id, e))?;
        let g = Group2::new(m).map_err(|e| invalid(id, e))?;
        self.push(id, locus, ObjectValue::GroupElement(g))
    }

    fn matrix(&mut self, id: &'static str, locus: &'static str, rows: &[&[&str]]) -> Result<(), RegistryError> {
        let n = rows[0].len();
        let entries = rows.iter().flat_map(|r| r.iter().map(|e| self.s.poly(e))).collect();
        let m = Matrix::from_polys(rows.len(), n, entries).map_err(|e| invalid(id, e))?;
        self.push(id, locus, ObjectValue::Matrix(m))
    }

    fn get_poly(&self, id: &str) -> &Poly {
        match &self
            .objects
            .iter()
            .find(|o| o.id == id)
            .expect("registered earlier")
            .value
        {
            ObjectValue::Polynomial(p) => p,
            _ => unreachable!(),
        }
    }

    /// `Σ coeff_i * basis_i` with `basis` one of "f" or "g".
    fn lin(&self, basis: &str, coeffs: [&str; 6]) -> Poly {
        let zero = Poly::zero(&self.s.table);
        coeffs.iter().enumerate().fold(zero, |acc, (i, c)| {
            let b = self.get_poly(&format!("{basis}{i}"));
            &acc + &(&self.s.poly(c) * b)
        })
    }

    fn check_on(&self, param: &str, quadrics: &[&str]) -> Result<(), RegistryError> {
        let m = match &self.objects.iter().find(|o| o.id == param).expect("registered").value {
            ObjectValue::Map(m) => m.clone(),
            _ => unreachable!(),
        };
        for q in quadrics {
            let eq = match &self.objects.iter().find(|o| o.id == *q).expect("registered").value {
                ObjectValue::Polynomial(p) => p.clone(),
                ObjectValue::Hypersurface(h) => h.equation().clone(),
                _ => unreachable!(),
            };
            let ok = vanishes_on_param(&eq, &m).map_err(|e: GeometryError| invalid(param, e))?;
            if !ok {
                return Err(invalid(param, format!("image does not lie on `{q}`")));
            }
        }
        Ok(())
    }
}

fn build(s: &Session) -> Result<Registry, RegistryError> {
    let mut b = Builder { s, objects: Vec::new() };
    let p4 = s.p4;
    let x = s.x;
    let p3_case2 = [x[0], x[2], x[3], x[4]];
    let p3_case3 = [x[1], x[2], x[3], x[4]];

    b.map(
        "nu",
        "quartic Veronese embedding of P1 in P4",
        &s.uv,
        &p4,
        ["u^4", "u^3*v", "u^2*v^2", "u*v^3", "v^4"].map(|c| s.poly(c)).to_vec(),
    )?;
    b.map(
        "upsilon",
        "quadratic Veronese embedding of P2 in P5",
        &s.xyz,
        &x,
        ["x^2", "x*y", "y^2", "y*z", "z^2", "x*z"].map(|c| s.poly(c)).to_vec(),
    )?;

    let curve = "quadrics through the rational normal quartic";
    b.quadric("f0", curve, "x3^2 - x2*x4")?;
    b.quadric("f1", curve, "x2*x3 - x1*x4")?;
    b.quadric("f2", curve, "x2^2 - x0*x4")?;
    b.quadric("f3", curve, "x1*x2 - x0*x3")?;
    b.quadric("f4", curve, "x1^2 - x0*x2")?;
    b.quadric("f5", curve, "3*x2^2 - 4*x1*x3 + x0*x4")?;
    b.check_on("nu", &["f0", "f1", "f2", "f3", "f4", "f5"])?;

    let surf = "quadrics through the Veronese surface";
    b.quadric("g0", surf, "x3^2 - x2*x4")?;
    b.quadric("g1", surf, "x3*x5 - x1*x4")?;
    b.quadric("g2", surf, "x5^2 - x0*x4")?;
    b.quadric("g3", surf, "x1*x5 - x0*x3")?;
    b.quadric("g4", surf, "x1^2 - x0*x2")?;
    b.quadric("g5", surf, "x1*x3 - x2*x5")?;
    b.check_on("upsilon", &["g0", "g1", "g2", "g3", "g4", "g5"])?;

    let q1 = b.lin("f", ["mu", "0", "lam", "0", "mu", "1"]);
    b.surface("q1", "two-parameter normal form with Klein four symmetry", &p4, q1)?;
    let q2 = b.lin("f", ["1", "0", "lam", "0", "0", "1"]);
    b.surface("q2", "one-parameter normal form with a single involution", &p4, q2)?;
    let q2s = b.lin("f", ["1", "0", "1 - 4*s^2", "0", "0", "1"]);
    b.surface("q2s", "one-parameter normal form, lam = 1 - 4s^2", &p4, q2s)?;
    let q3 = b.lin("f", ["0", "1", "0", "0", "0", "1"]);
    b.surface("q3", "rigid normal form f1 + f5", &p4, q3)?;
    let qgm = b.lin("f", ["0", "0", "1 - 4*s^2", "0", "0", "1"]);
    b.surface("q_gm", "multiplicative-group invariant quadric", &p4, qgm)?;
    let qga = b.lin("f", ["1", "0", "0", "0", "0", "1"]);
    b.surface("q_ga", "additive-group invariant quadric f0 + f5", &p4, qga)?;

    let tau = vec![
        b.lin("f", ["0", "0", "0", "0", "1", "0"]),
        b.lin("f", ["0", "0", "0", "s", "0", "0"]),
        b.lin("f", ["0", "0", "s^2", "0", "0", "0"]),
        b.lin("f", ["0", "s", "0", "0", "0", "0"]),
        b.lin("f", ["1", "0", "0", "0", "0", "0"]),
    ];
    b.map(
        "tau",
        "birational involution of the multiplicative-group invariant quadric",
        &p4,
        &p4,
        tau,
    )?;

    let iota = vec![
        b.lin("f", ["-1/16", "0", "1/2*s^2", "0", "1", "0"]),
        b.lin("f", ["0", "1/4*s", "0", "s", "0", "0"]),
        b.lin("f", ["0", "0", "s^2", "0", "0", "0"]),
        b.lin("f", ["0", "s", "0", "0", "0", "0"]),
        b.lin("f", ["1", "0", "0", "0", "0", "0"]),
    ];
    b.map(
        "iota",
        "birational involution for the single-involution normal form",
        &p4,
        &p4,
        iota,
    )?;

    let sigma = vec![
        b.lin("f", ["1/64", "-1/4", "3/2", "16", "64", "0"]),
        b.lin("f", ["-1/8", "3/2", "2", "32", "0", "0"]),
        b.lin("f", ["1", "-8", "16", "0", "0", "0"]),
        b.lin("f", ["-8", "32", "0", "0", "0", "0"]),
        b.lin("f", ["64", "0", "0", "0", "0", "0"]),
    ];
    b.map(
        "sigma",
        "birational involution of the rigid normal form",
        &p4,
        &p4,
        sigma,
    )?;

    let phi: Vec<Poly> = (0..6).map(|i| b.get_poly(&format!("g{i}")).clone()).collect();
    b.map(
        "phi",
        "quadratic map by the surface quadrics, as printed",
        &x,
        &x,
        phi.clone(),
    )?;
    let signs = [-1, 1, -1, 1, -1, 1];
    let phi_adj = phi
        .iter()
        .zip(signs)
        .map(|(p, e)| if e < 0 { -p } else { p.clone() })
        .collect();
    b.map(
        "phi_adj",
        "adjugate of the symmetric 3x3 matrix, as a map of P5",
        &x,
        &x,
        phi_adj,
    )?;
    b.matrix(
        "sym3",
        "symmetric 3x3 matrix identified with a point of P5",
        &[&["x0", "x1", "x5"], &["x1", "x2", "x3"], &["x5", "x3", "x4"]],
    )?;

    b.surface(
        "H",
        "hyperplane x0 = a^2 x2 + b^2 x4",
        &x,
        s.poly("x0 - a^2*x2 - b^2*x4"),
    )?;
    let q2_big = b.lin("g", ["1", "0", "-a^2", "0", "-b^2", "0"]);
    b.surface("Q2", "quadric g0 = a^2 g2 + b^2 g4", &x, q2_big)?;
    b.matrix(
        "psi",
        "projective transformation induced from PGL3",
        &[
            &["1", "0", "0", "0", "b^2", "-2*b"],
            &["0", "-a", "0", "a*b", "0", "0"],
            &["0", "0", "a^2", "0", "0", "0"],
            &["0", "-a", "0", "-a*b", "0", "0"],
            &["1", "0", "0", "0", "b^2", "2*b"],
            &["1", "0", "0", "0", "-b^2", "0"],
        ],
    )?;
    b.surface("psi_H.printed", "displayed image of H", &x, s.poly("x2 - x5"))?;
    let psi_q2 = b.lin("g", ["1 - b^4", "0", "-a^4", "0", "1 - b^4", "2 + 2*b^4"]);
    b.surface("psi_Q2.printed", "displayed image of Q2", &x, psi_q2)?;
    b.matrix(
        "eq_ab",
        "normal form coefficients in terms of the roots a, b",
        &[&["2 - 2*b^4", "0", "1 - 2*a^4 + b^4", "0", "2 - 2*b^4", "1 + b^4"]],
    )?;
    b.map(
        "alpha",
        "sign change of x3, x5",
        &x,
        &x,
        ["x0", "x1", "x2", "-x3", "x4", "-x5"].map(|c| s.poly(c)).to_vec(),
    )?;
    b.map(
        "beta",
        "sign change of x1, x3",
        &x,
        &x,
        ["x0", "-x1", "x2", "-x3", "x4", "x5"].map(|c| s.poly(c)).to_vec(),
    )?;

    let p = [
        "x0*x3",
        "s^2*x0*x4 - s^2*x2^2 + x2^2 - 1/4*x2*x4 + 1/4*x3^2",
        "x2*x3",
        "x3^2",
        "x3*x4",
    ];
    b.map(
        "p",
        "inverse of the projection from [0:1:0:0:0], single-involution form",
        &p3_case2,
        &p4,
        p.map(|c| s.poly(c)).to_vec(),
    )?;
    b.check_on("p", &["q2s"])?;
    // the displayed composite divided through by 4 x3, read on (x0, x2, x3, x4)
    let composite = [
        "4*x0*x3",
        "(4 - 4*s^2)*x2^2 - x2*x4 + 4*s^2*x0*x4 + x3^2",
        "4*x2*x3",
        "4*x3^2",
        "4*x3*x4",
    ];
    b.map(
        "iota_iota_p.printed",
        "displayed second iterate on the parametrisation",
        &p3_case2,
        &p4,
        composite.map(|c| s.poly(c)).to_vec(),
    )?;
    b.check_on("iota_iota_p.printed", &["q2s"])?;
    let p_gm = ["x0*x3", "(1 - s^2)*x2^2 + s^2*x0*x4", "x2*x3", "x3^2", "x3*x4"];
    b.map(
        "p_gm",
        "inverse of the projection from [0:1:0:0:0], multiplicative-group form",
        &p3_case2,
        &p4,
        p_gm.map(|c| s.poly(c)).to_vec(),
    )?;
    b.check_on("p_gm", &["q_gm"])?;
    let p3 = ["4*x1*x3 + x1*x4 - 3*x2^2 - x2*x3", "x1*x4", "x2*x4", "x3*x4", "x4^2"];
    b.map(
        "p3",
        "inverse of the projection from [1:0:0:0:0], rigid form",
        &p3_case3,
        &p4,
        p3.map(|c| s.poly(c)).to_vec(),
    )?;
    b.check_on("p3", &["q3"])?;
    b.surface(
        "Pi",
        "plane x3 = 0 where the parametrisation degenerates",
        &p3_case2,
        s.poly("x3"),
    )?;
    b.surface(
        "Pi3",
        "plane x4 = 0 where the rigid parametrisation degenerates",
        &p3_case3,
        s.poly("x4"),
    )?;

    b.group("inv1", "diagonal involution", ["1", "0", "0", "-1"])?;
    b.group("inv2", "antidiagonal involution", ["0", "1", "1", "0"])?;
    b.group("g_gm", "multiplicative group element", ["1", "0", "0", "t"])?;
    b.group("g_ga", "additive group element", ["1", "t", "0", "1"])?;
    b.group("g_ab", "candidate involution [[1,a],[b,-1]]", ["1", "a", "b", "-1"])?;
    let ga_printed = [
        "x0 + 4*t*x1 + 6*t^2*x2 + 4*t^3*x3 + t^4*x4",
        "x1 + 3*t*x2 + 3*t^2*x3 + x4",
        "x2 + 2*t*x3 + t^2*x4",
        "x3 + t*x4",
        "x4",
    ];
    b.map(
        "ga_family.printed",
        "displayed additive-group action on P4",
        &p4,
        &p4,
        ga_printed.map(|c| s.poly(c)).to_vec(),
    )?;
    let g_q3 = b.lin(
        "f",
        [
            "4*b",
            "2*(1 - 3*b*c)",
            "-3*c*(1 - b*c)",
            "2*c^2*(3 - b*c)",
            "-4*c^3",
            "b*c^2 - 2*b^2*c^2 - 4*b*c - c - 2",
        ],
    );
    b.surface(
        "g_q3.printed",
        "displayed image of f1 + f5 under [[1,a],[b,-1]]",
        &p4,
        g_q3,
    )?;

    let index = b.objects.iter().enumerate().map(|(i, o)| (o.id, i)).collect();
    Ok(Registry {
        objects: b.objects,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let r = registry();
        assert_eq!(r.poly("f0").to_string(), "-x2*x4 + x3^2");
        assert_eq!(r.get("sigma").unwrap().kind(), ObjectKind::Map);
        assert_eq!(r.get("psi").unwrap().kind(), ObjectKind::Matrix);
        assert_eq!(r.get("g_ab").unwrap().kind(), ObjectKind::GroupElement);
        assert!(r.get("nope").is_none());
        let sigma = r.map("sigma");
        let s = session();
        let f = r.f();
        let first = s.poly(
            "1/64*(x3^2 - x2*x4) - 1/4*(x2*x3 - x1*x4) + 3/2*(x2^2 - x0*x4) + 16*(x1*x2 - x0*x3) + 64*(x1^2 - x0*x2)",
        );
        assert_eq!(
            first,
            &(&(&(&f[0] * &s.poly("1/64")) - &(&f[1] * &s.poly("1/4"))) + &(&f[2] * &s.poly("3/2")))
                + &(&(&f[3] * &s.poly("16")) + &(&f[4] * &s.poly("64")))
        );
        assert_eq!(sigma.components()[0], first);
        assert_eq!(sigma.source(), &s.p4);
    }

    #[test]
    fn ids_are_unique() {
        let r = registry();
        let mut ids: Vec<_> = r.objects().iter().map(|o| o.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }
}
