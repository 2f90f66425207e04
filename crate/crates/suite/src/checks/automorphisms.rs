//! Generators, cyclic fixed loci, stabilizers of the normal forms and the
//! smoothness conditions.

use fano_core::pgl::{
    component_all_singular, fixed_components, induced_quadric_rep, stabilizes, sym_power_rep, weight_classes,
    QuadricBasis, QUADRIC_WEIGHTS,
};
use fano_core::projgeom::pull_polynomial;
use fano_core::{quadratic_matrix, Frac, Group2, Matrix, Poly, Rat, Surface};
use num_traits::{One, Zero};

use super::{note, stabilizer_witness, CheckError, CheckSpec, Checked, Ctx, Outcome};
use crate::elimination::{eliminate, Conclusion};
use crate::oracle::{congruent_up_to_scale, sample_oracle, Sample};
use crate::report::Witness;

pub(super) fn specs() -> Vec<CheckSpec> {
    vec![
        CheckSpec {
            id: "gen.curve",
            locus: "f0..f5 vanish on the rational normal quartic",
            bindable: &[],
            symbolic: &[],
            run: gen_curve,
        },
        CheckSpec {
            id: "gen.surface",
            locus: "g0..g5 vanish on the Veronese surface",
            bindable: &[],
            symbolic: &[],
            run: gen_surface,
        },
        CheckSpec {
            id: "lemma.weights",
            locus: "diag(1,t) acts on the quadric coefficients with weights (6,5,4,3,2,4)",
            bindable: &[],
            symbolic: &["t"],
            run: lemma_weights,
        },
        CheckSpec {
            id: "lemma.fixed",
            locus: "fixed loci of cyclic subgroups: order 2 exactly, orders 3 and 4 contain the listed components",
            bindable: &[],
            symbolic: &["t"],
            run: lemma_fixed,
        },
        CheckSpec {
            id: "lemma.fixed.printed",
            locus: "fixed loci of cyclic subgroups compared with the listed components for every order",
            bindable: &[],
            symbolic: &["t"],
            run: lemma_fixed_printed,
        },
        CheckSpec {
            id: "lemma.singular",
            locus: "cyclic symmetry of order above 2 with finite stabilizer forces a singular quadric",
            bindable: &[],
            symbolic: &["t", "a0", "a1", "a2", "a3", "a4", "a5"],
            run: lemma_singular,
        },
        CheckSpec {
            id: "aut.case1",
            locus: "both involutions preserve mu(f0+f4) + lam f2 + f5",
            bindable: &["lam", "mu"],
            symbolic: &[],
            run: aut_case1,
        },
        CheckSpec {
            id: "aut.case2",
            locus: "only the diagonal involution preserves f0 + lam f2 + f5",
            bindable: &["lam"],
            symbolic: &[],
            run: aut_case2,
        },
        CheckSpec {
            id: "aut.case3",
            locus: "no involution preserves f1 + f5",
            bindable: &[],
            symbolic: &["a", "b"],
            run: aut_case3,
        },
        CheckSpec {
            id: "aut.case3.printed",
            locus: "displayed image of f1 + f5 under [[1,a],[b,-1]]",
            bindable: &[],
            symbolic: &["a", "b", "c"],
            run: aut_case3_printed,
        },
        CheckSpec {
            id: "smooth.case1_boundary",
            locus: "excluded values of (lam, mu) in the two-parameter normal form are singular",
            bindable: &[],
            symbolic: &["lam", "mu"],
            run: smooth_case1,
        },
        CheckSpec {
            id: "smooth.case2_boundary",
            locus: "singular members of the one-parameter normal form",
            bindable: &[],
            symbolic: &["lam"],
            run: smooth_case2,
        },
        CheckSpec {
            id: "smooth.case3",
            locus: "the rigid normal form is smooth",
            bindable: &[],
            symbolic: &[],
            run: smooth_case3,
        },
    ]
}

fn vanish_on(ctx: &Ctx, basis: &[Poly], param: &str, label: &str) -> Checked {
    let m = ctx.map(param)?;
    for (i, q) in basis.iter().enumerate() {
        let r = pull_polynomial(q, &m)?;
        if !r.is_zero() {
            return Ok(Outcome::fail(Witness::Polynomial(format!(
                "{label}{i} on {param}: {r}"
            ))));
        }
    }
    Ok(Outcome::pass())
}

fn gen_curve(ctx: &Ctx) -> Checked {
    vanish_on(ctx, &ctx.reg.f(), "nu", "f")
}

fn gen_surface(ctx: &Ctx) -> Checked {
    vanish_on(ctx, &ctx.reg.g(), "upsilon", "g")
}

fn basis(ctx: &Ctx) -> QuadricBasis<Rat> {
    QuadricBasis::rational_normal_quartic(&ctx.s.table, &ctx.s.p4)
}

/// Exponents of `t` on the diagonal of the induced action of diag(1, t),
/// read off the computed matrix.
fn derived_weights(ctx: &Ctx) -> Result<Vec<u32>, CheckError> {
    let a = induced_quadric_rep(ctx.reg.group("g_gm"), &basis(ctx))?;
    let m = a.matrix();
    let mut weights = Vec::new();
    for i in 0..6 {
        for j in 0..6 {
            if i != j && !m.get(i, j).is_zero() {
                return Err(CheckError(format!("entry ({i},{j}) is off-diagonal")));
            }
        }
        let e = m.get(i, i);
        let p = e
            .as_poly()
            .filter(|p| p.is_monomial())
            .ok_or_else(|| CheckError(format!("diagonal entry {i} is {e}")))?;
        weights.push(p.degree_in_var(ctx.s.t));
    }
    Ok(weights)
}

fn lemma_weights(ctx: &Ctx) -> Checked {
    let w = derived_weights(ctx)?;
    let diffs = |v: &[u32]| v.iter().map(|&x| x as i64 - v[0] as i64).collect::<Vec<_>>();
    if diffs(&w) == diffs(&QUADRIC_WEIGHTS) {
        Ok(Outcome::pass())
    } else {
        Ok(Outcome::fail(note(format!("computed weights {w:?}"))))
    }
}

/// The components listed in the text, by cyclic order; `None` past 4 means
/// the listed locus is empty.
fn printed_classes(n: u32) -> Vec<Vec<usize>> {
    match n {
        2 => vec![vec![0, 2, 4, 5], vec![1, 3]],
        3 => vec![vec![0, 3], vec![1, 4]],
        4 => vec![vec![0, 4]],
        _ => vec![],
    }
}

fn fmt_class(c: &[usize]) -> String {
    let names: Vec<String> = c.iter().map(|i| format!("a{i}")).collect();
    format!("{{{}}}", names.join(","))
}

fn lemma_fixed(ctx: &Ctx) -> Checked {
    let w = derived_weights(ctx)?;
    let two = weight_classes(&w, 2);
    if two.classes != printed_classes(2) {
        return Ok(Outcome::fail(note(format!("order 2 classes {:?}", two.classes))));
    }
    for n in [3, 4] {
        let d = weight_classes(&w, n);
        for c in printed_classes(n) {
            if !d.contains_class(&c) {
                return Ok(Outcome::fail(note(format!(
                    "order {n}: {} is not a fixed component",
                    fmt_class(&c)
                ))));
            }
        }
    }
    Ok(Outcome::pass())
}

fn lemma_fixed_printed(ctx: &Ctx) -> Checked {
    let w = derived_weights(ctx)?;
    let mut missing = Vec::new();
    for n in 2..=8 {
        let computed = weight_classes(&w, n);
        if computed != fixed_components(n) {
            return Ok(Outcome::fail(note(format!("order {n}: weight classes disagree"))));
        }
        let printed = printed_classes(n);
        let extra: Vec<String> = computed
            .classes
            .iter()
            .filter(|c| !printed.contains(c))
            .map(|c| fmt_class(c))
            .collect();
        let absent: Vec<String> = printed
            .iter()
            .filter(|c| !computed.contains_class(c))
            .map(|c| fmt_class(c))
            .collect();
        if !absent.is_empty() {
            return Ok(Outcome::fail(note(format!(
                "order {n}: listed {} not fixed",
                absent.join(" ")
            ))));
        }
        if !extra.is_empty() {
            missing.push(format!("order {n}: unlisted {}", extra.join(" ")));
        }
    }
    if missing.is_empty() {
        Ok(Outcome::pass())
    } else {
        Ok(Outcome::discrepancy(note(missing.join("; "))))
    }
}

fn lemma_singular(ctx: &Ctx) -> Checked {
    let b = basis(ctx);
    let w = derived_weights(ctx)?;
    let special = [2usize, 5];
    for n in 3..=6 {
        for class in weight_classes(&w, n).classes {
            if class == special {
                continue;
            }
            if !component_all_singular(&b, &class, &ctx.s.coeffs)? {
                return Ok(Outcome::fail(note(format!(
                    "order {n}: {} contains smooth quadrics",
                    fmt_class(&class)
                ))));
            }
        }
    }
    // the exceptional class carries a whole one-dimensional torus
    let s = ctx.s;
    let q = Surface::new(&s.p4, s.poly("a2*(x2^2 - x0*x4) + a5*(3*x2^2 - 4*x1*x3 + x0*x4)"))?;
    if !stabilizes(ctx.reg.group("g_gm"), &q)? {
        return Ok(Outcome::fail(note("a2 f2 + a5 f5 is not torus invariant")));
    }
    Ok(Outcome::pass())
}

fn aut_case1(ctx: &Ctx) -> Checked {
    let q = ctx.surface("q1")?;
    for id in ["inv1", "inv2"] {
        if let Some(w) = stabilizer_witness(ctx.reg.group(id), &q)? {
            return Ok(Outcome::fail(w));
        }
    }
    Ok(Outcome::pass())
}

fn g1g2(ctx: &Ctx) -> Result<Group2, CheckError> {
    Ok(ctx.reg.group("inv1").compose(ctx.reg.group("inv2"))?)
}

fn aut_case2(ctx: &Ctx) -> Checked {
    let q = ctx.surface("q2")?;
    if let Some(w) = stabilizer_witness(ctx.reg.group("inv1"), &q)? {
        return Ok(Outcome::fail(w));
    }
    let mut evidence = Vec::new();
    for (name, g) in [("g2", ctx.reg.group("inv2").clone()), ("g1g2", g1g2(ctx)?)] {
        match stabilizer_witness(&g, &q)? {
            None => return Ok(Outcome::fail(note(format!("{name} preserves the quadric")))),
            Some(w) => evidence.push(format!("{name}: {w}")),
        }
    }
    Ok(Outcome::pass_with(note(evidence.join("; "))))
}

/// Coefficients of the pullback of `q` by the Sym⁴ action of `g`, in the
/// f basis, with denominators cleared.
fn pullback_coefficients(ctx: &Ctx, g: &Group2, q: &Surface) -> Result<Vec<Poly>, CheckError> {
    let map = sym_power_rep(g, 4)?.as_map(&ctx.s.p4)?;
    let pulled = pull_polynomial(q.equation(), &map)?;
    let c = basis(ctx).coordinates_of(&pulled)?;
    clear(&c)
}

fn clear(c: &[Frac]) -> Result<Vec<Poly>, CheckError> {
    let table = c[0].table().clone();
    let common = c.iter().fold(Poly::one(&table), |acc, e| &acc * e.den());
    c.iter()
        .map(|e| {
            (e.num() * &common)
                .div_exact(e.den())
                .ok_or_else(|| CheckError("denominator does not divide".into()))
        })
        .collect()
}

fn aut_case3(ctx: &Ctx) -> Checked {
    let s = ctx.s;
    let q = ctx.surface("q3")?;
    let mut evidence = Vec::new();
    for (name, g) in [("g2", ctx.reg.group("inv2").clone()), ("g1g2", g1g2(ctx)?)] {
        match stabilizer_witness(&g, &q)? {
            None => return Ok(Outcome::fail(note(format!("{name} preserves the quadric")))),
            Some(w) => evidence.push(format!("{name}: {w}")),
        }
    }

    let g = ctx.reg.group("g_ab");
    let factor = s.poly("1 + a*b");
    let det = g.matrix().det()?;
    if !det.frac_eq(&Frac::from_poly(-&factor))? {
        return Ok(Outcome::fail(note(format!("det of the family is {det}"))));
    }
    let c = pullback_coefficients(ctx, g, &q)?;
    // proportional to (0,1,0,0,0,1): c0 = c2 = c3 = c4 = 0 and c1 = c5
    let constraints = [c[0].clone(), c[2].clone(), c[3].clone(), c[4].clone(), &c[1] - &c[5]];
    let trace = eliminate(&constraints, &factor, &[s.a, s.b]);
    if trace.conclusion != Conclusion::Contradiction {
        return Ok(Outcome::fail(note(format!(
            "elimination stalled: {}",
            trace.steps.join("; ")
        ))));
    }
    evidence.push(format!("elimination: {}", trace.steps.join("; ")));

    // independent route: congruence of the symmetric matrix at integer (a, b)
    let sq = quadratic_matrix(q.equation(), &s.p4)?;
    let sq = constant_rows(&sq).ok_or_else(|| CheckError("q3 has parameters".into()))?;
    let mut error = None;
    let res = sample_oracle(2, ctx.trials, ctx.seed, |ab| {
        if (&ab[0] * &ab[1] + Rat::one()).is_zero() {
            return Sample::Degenerate;
        }
        let values = [(s.a, ab[0].clone()), (s.b, ab[1].clone())];
        let r = g
            .matrix()
            .substitute_values(&values)
            .map_err(CheckError::from)
            .and_then(|m| Ok(Group2::new(m)?))
            .and_then(|h| Ok(sym_power_rep(&h, 4)?));
        match r {
            Ok(r) => match constant_rows(r.matrix()) {
                Some(rows) if congruent_up_to_scale(&rows, &sq) => Sample::Fails,
                Some(_) => Sample::Holds,
                None => Sample::Degenerate,
            },
            Err(e) => {
                error = Some(e);
                Sample::Degenerate
            }
        }
    });
    if let Some(CheckError(e)) = error {
        return Err(CheckError(e));
    }
    let res = res?;
    if res.failures > 0 {
        return Ok(Outcome::fail(Witness::Point(res.samples[0].clone())));
    }
    evidence.push(format!("oracle: {} samples, none invariant", res.trials));
    Ok(Outcome::pass_with(note(evidence.join("; "))))
}

fn constant_rows(m: &Matrix) -> Option<Vec<Vec<Rat>>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).as_constant()).collect())
        .collect()
}

fn aut_case3_printed(ctx: &Ctx) -> Checked {
    let s = ctx.s;
    let q = ctx.surface("q3")?;
    let derived = basis(ctx).coordinates_of(&pull_polynomial(
        q.equation(),
        &sym_power_rep(ctx.reg.group("g_ab"), 4)?.as_map(&s.p4)?,
    )?)?;
    let printed = basis(ctx).coordinates_of(ctx.reg.surface("g_q3.printed").equation())?;
    let rename = |pairs: &[(usize, &str)]| -> Result<Vec<Frac>, CheckError> {
        let b: Vec<(usize, Frac)> = pairs.iter().map(|(v, t)| (*v, Frac::from_poly(s.poly(t)))).collect();
        printed.iter().map(|e| Ok(e.substitute(&b)?)).collect()
    };
    use fano_core::projgeom::fraction_proportionality_witness as witness;
    let literal = witness(&derived, &printed)?;
    let c_is_a = witness(&derived, &rename(&[(s.c, "a")])?)?;
    let shifted = witness(&derived, &rename(&[(s.b, "a"), (s.c, "b")])?)?;
    let show = |w: Option<(usize, usize)>| match w {
        None => "matches".to_string(),
        Some((i, j)) => format!("differs at ({i},{j})"),
    };
    let summary = format!(
        "as printed: {}; with c = a: {}; with (b, c) renamed (a, b): {}",
        show(literal),
        show(c_is_a),
        show(shifted)
    );
    Ok(match (literal, shifted) {
        (None, _) => Outcome::pass(),
        (Some(_), None) => Outcome::discrepancy(note(summary)),
        (Some(_), Some(_)) => Outcome::fail(note(summary)),
    })
}

/// Determinant of the symmetric matrix of a quadric as a polynomial.
fn det_poly(q: &Surface) -> Result<Poly, CheckError> {
    let d = quadratic_matrix(q.equation(), q.coords())?.det()?;
    let c = d
        .den()
        .as_constant()
        .ok_or_else(|| CheckError("non-polynomial determinant".into()))?;
    Ok(d.num().scale(&(Rat::one() / c)))
}

/// Remainder of `p` modulo `var^2 - value`, as `(r0, r1)` with
/// `p ≡ r0 + r1 var`.
fn reduce_square(p: &Poly, var: usize, value: &Poly) -> (Poly, Poly) {
    let table = p.table().clone();
    let (mut r0, mut r1) = (Poly::zero(&table), Poly::zero(&table));
    for (m, c) in p.coeffs_in(&[var]) {
        let k = m.exponents()[var];
        let term = &c * &value.pow(k / 2);
        if k % 2 == 0 {
            r0 = &r0 + &term;
        } else {
            r1 = &r1 + &term;
        }
    }
    (r0, r1)
}

fn smooth_case1(ctx: &Ctx) -> Checked {
    let s = ctx.s;
    let d = det_poly(&ctx.surface("q1")?)?;
    for mu in [2, -2] {
        let r = d.substitute_values(&[(s.mu, Rat::from_integer(mu.into()))]);
        if !r.is_zero() {
            return Ok(Outcome::fail(Witness::Polynomial(format!("det at mu = {mu}: {r}"))));
        }
    }
    let (r0, r1) = reduce_square(&d, s.mu, &s.poly("-lam^2 - 2*lam + 3"));
    for (k, r) in [(0, r0), (1, r1)] {
        if !r.is_zero() {
            return Ok(Outcome::fail(Witness::Polynomial(format!(
                "remainder coefficient of mu^{k}: {r}"
            ))));
        }
    }
    let at_origin = d.substitute_values(&[(s.lam, Rat::zero()), (s.mu, Rat::zero())]);
    if at_origin.is_zero() {
        return Ok(Outcome::fail(note("det vanishes at (0, 0)")));
    }
    let at_one = d.substitute_values(&[(s.lam, Rat::one())]);
    let mut finding = format!("det at (0,0) = {at_origin}");
    if at_one.is_zero() {
        finding.push_str("; det also vanishes identically at lam = 1");
    }
    Ok(Outcome::pass_with(note(finding)))
}

fn smooth_case2(ctx: &Ctx) -> Checked {
    let s = ctx.s;
    let d = det_poly(&ctx.surface("q2")?)?;
    let target = s.poly("(lam - 1)^2*(lam + 3)");
    match d.div_exact(&target).and_then(|q| q.as_constant()) {
        Some(c) if !c.is_zero() => {
            let scale = if c.is_one() { String::new() } else { format!("{c}*") };
            Ok(Outcome::pass_with(note(format!(
                "det = {scale}(lam - 1)^2*(lam + 3); singular exactly at lam = 1 and lam = -3"
            ))))
        }
        _ => Ok(Outcome::fail(Witness::Polynomial(format!("det = {d}")))),
    }
}

fn smooth_case3(ctx: &Ctx) -> Checked {
    let d = det_poly(&ctx.surface("q3")?)?;
    match d.as_constant() {
        Some(c) if !c.is_zero() => Ok(Outcome::pass_with(note(format!("det = {c}")))),
        _ => Ok(Outcome::fail(Witness::Polynomial(format!("det = {d}")))),
    }
}
