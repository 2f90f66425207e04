//! Involutions of single quadrics checked through rational parametrisations.

use fano_core::pgl::sym_power_rep;
use fano_core::projgeom::{compose, pull_polynomial};
use fano_core::{Group2, Map, Poly, Rat, Surface};

use super::{note, stabilizer_witness, tuple_witness, CheckError, CheckSpec, Checked, Ctx, Outcome};
use crate::oracle::MapClaim;
use crate::report::Witness;

pub(super) fn specs() -> Vec<CheckSpec> {
    vec![
        CheckSpec {
            id: "case2.p_on_Q",
            locus: "the projection inverse p lands on f0 + (1-4s^2) f2 + f5",
            bindable: &["s"],
            symbolic: &[],
            run: case2_p_on_q,
        },
        CheckSpec {
            id: "case2.involution",
            locus: "iota∘iota∘p is proportional to p and to the displayed composite",
            bindable: &["s"],
            symbolic: &[],
            run: case2_involution,
        },
        CheckSpec {
            id: "case2.equivariance_g1",
            locus: "iota commutes with the diagonal involution",
            bindable: &["s"],
            symbolic: &[],
            run: case2_equivariance_g1,
        },
        CheckSpec {
            id: "case2.equivariance_Ga",
            locus: "iota commutes with every additive-group element when s = 1/2 or s = -1/2",
            bindable: &[],
            symbolic: &["s", "t"],
            run: case2_equivariance_ga,
        },
        CheckSpec {
            id: "case2.ga_family.printed",
            locus: "displayed additive-group action on P4",
            bindable: &[],
            symbolic: &["t"],
            run: case2_ga_printed,
        },
        CheckSpec {
            id: "gm.invariance",
            locus: "(1-4s^2) f2 + f5 is invariant under the torus and the antidiagonal involution",
            bindable: &["s"],
            symbolic: &["t"],
            run: gm_invariance,
        },
        CheckSpec {
            id: "gm.tau_involution",
            locus: "tau∘tau is the identity on the torus-invariant quadric",
            bindable: &["s"],
            symbolic: &[],
            run: gm_tau_involution,
        },
        CheckSpec {
            id: "case3.p_on_Q",
            locus: "the projection inverse p3 lands on f1 + f5",
            bindable: &[],
            symbolic: &[],
            run: case3_p_on_q,
        },
        CheckSpec {
            id: "case3.involution",
            locus: "sigma∘sigma∘p3 is proportional to p3",
            bindable: &[],
            symbolic: &[],
            run: case3_involution,
        },
    ]
}

fn lands_on(param: &Map, q: &Surface, label: &str) -> Result<Option<Witness>, CheckError> {
    let r = pull_polynomial(q.equation(), param)?;
    Ok((!r.is_zero()).then(|| Witness::Polynomial(format!("{label}: {r}"))))
}

/// The values of `s` excluded from the normal forms, as polynomials that
/// must not vanish when sampling.
fn s_exclusions(ctx: &Ctx) -> Vec<Poly> {
    ["s", "s - 1", "s + 1"].iter().map(|e| ctx.s.poly(e)).collect()
}

/// Symbolic and numeric check that `m∘m∘p ∝ p` with `m∘p` on `q`.
fn involution_on(ctx: &Ctx, m: &Map, p: &Map, q: &Surface, params: &[usize]) -> Checked {
    let once = compose(p, m)?;
    if let Some(w) = lands_on(&once, q, "image off the quadric")? {
        return Ok(Outcome::fail(w));
    }
    let twice = compose(&once, m)?;
    if let Some(w) = tuple_witness(twice.components(), p.components())? {
        return Ok(Outcome::fail(w));
    }
    let free = ctx.free(params);
    let mut claim = MapClaim::new(vec![p.clone(), m.clone(), m.clone()], vec![p.clone()], free.clone());
    if free.contains(&ctx.s.s) {
        for e in s_exclusions(ctx) {
            claim = claim.avoiding(e);
        }
    }
    let res = ctx.oracle(&claim)?;
    if res.failures > 0 {
        return Ok(Outcome::fail(Witness::Point(res.samples[0].clone())));
    }
    Ok(Outcome::pass())
}

fn case2_p_on_q(ctx: &Ctx) -> Checked {
    match lands_on(&ctx.map("p")?, &ctx.surface("q2s")?, "q2s∘p")? {
        Some(w) => Ok(Outcome::fail(w)),
        None => Ok(Outcome::pass()),
    }
}

fn case2_involution(ctx: &Ctx) -> Checked {
    let p = ctx.map("p")?;
    let iota = ctx.map("iota")?;
    let out = involution_on(ctx, &iota, &p, &ctx.surface("q2s")?, &[ctx.s.s])?;
    if out.status != crate::report::Status::Pass {
        return Ok(out);
    }
    let twice = compose(&compose(&p, &iota)?, &iota)?;
    let printed = ctx.map("iota_iota_p.printed")?;
    if let Some(w) = tuple_witness(twice.components(), printed.components())? {
        return Ok(Outcome::fail(note(format!("displayed composite differs: {w}"))));
    }
    Ok(Outcome::pass())
}

fn p4_action(ctx: &Ctx, g: &Group2) -> Result<Map, CheckError> {
    Ok(sym_power_rep(g, 4)?.as_map(&ctx.s.p4)?)
}

/// `None` when `m∘g` and `g∘m` agree along the parametrisation `p`.
fn commutator_witness(p: &Map, m: &Map, g: &Map) -> Result<Option<Witness>, CheckError> {
    let one = compose(&compose(p, g)?, m)?;
    let other = compose(&compose(p, m)?, g)?;
    tuple_witness(one.components(), other.components())
}

fn case2_equivariance_g1(ctx: &Ctx) -> Checked {
    let g1 = p4_action(ctx, ctx.reg.group("inv1"))?;
    match commutator_witness(&ctx.map("p")?, &ctx.map("iota")?, &g1)? {
        Some(w) => Ok(Outcome::fail(w)),
        None => Ok(Outcome::pass()),
    }
}

fn case2_equivariance_ga(ctx: &Ctx) -> Checked {
    let s = ctx.s;
    let ga = ctx.reg.group("g_ga");
    let g = p4_action(ctx, ga)?;
    let inverse = ["1", "-t", "0", "1"].map(|e| s.poly(e)).to_vec();
    let neg = p4_action(ctx, &Group2::new(fano_core::Matrix::from_polys(2, 2, inverse)?)?)?;
    let mut failures = Vec::new();
    for half in ["1/2", "-1/2"] {
        let value: Rat = half.parse().expect("rational literal");
        let at = [(s.s, value)];
        let p = ctx.reg.map("p").substitute_values(&at)?;
        let iota = ctx.reg.map("iota").substitute_values(&at)?;
        let q = Surface::new(&s.p4, ctx.reg.surface("q2s").equation().substitute_values(&at))?;
        if let Some(w) = stabilizer_witness(ga, &q)? {
            return Ok(Outcome::fail(note(format!(
                "s = {half}: the additive group does not preserve the quadric: {w}"
            ))));
        }
        if let Some(w) = commutator_witness(&p, &iota, &g)? {
            let twisted = compose(&compose(&p, &g)?, &iota)?;
            let swapped = compose(&compose(&p, &iota)?, &neg)?;
            let relation = if tuple_witness(twisted.components(), swapped.components())?.is_none() {
                "; instead iota∘G(t) ∝ G(-t)∘iota"
            } else {
                ""
            };
            failures.push(format!("s = {half}: iota∘G(t) and G(t)∘iota differ, {w}{relation}"));
        }
    }
    if failures.is_empty() {
        Ok(Outcome::pass())
    } else {
        Ok(Outcome::fail(note(failures.join("; "))))
    }
}

/// Matrix entries `(i, j, coefficient)` of a linear map of P4.
fn linear_entries(m: &Map, coords: &[usize]) -> Vec<Vec<Poly>> {
    m.components()
        .iter()
        .map(|c| {
            let parts = c.coeffs_in(coords);
            coords
                .iter()
                .map(|&v| {
                    let mono = fano_core::Monomial::var(c.table().len(), v, 1);
                    parts.get(&mono).cloned().unwrap_or_else(|| Poly::zero(c.table()))
                })
                .collect()
        })
        .collect()
}

fn case2_ga_printed(ctx: &Ctx) -> Checked {
    let s = ctx.s;
    let printed = ctx.map("ga_family.printed")?;
    let rep = sym_power_rep(ctx.reg.group("g_ga"), 4)?;
    let q = ctx.surface("q_ga")?;
    let corrected = rep.as_map(&s.p4)?;
    let pulled = Surface::new(&s.p4, pull_polynomial(q.equation(), &corrected)?)?;
    if let Some(w) = pulled.difference_witness(&q)? {
        return Ok(Outcome::fail(note(format!(
            "the representation does not preserve f0 + f5: {}",
            super::pair(w)
        ))));
    }
    let entries = linear_entries(&printed, &s.p4);
    let mut diffs = Vec::new();
    for (i, row) in entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let r = rep.matrix().get(i, j);
            if !r.frac_eq(&fano_core::Frac::from_poly(e.clone()))? {
                diffs.push(format!("entry ({i},{j}) is {e}, the representation gives {r}"));
            }
        }
    }
    if diffs.is_empty() {
        return Ok(Outcome::pass());
    }
    let printed_pull = pull_polynomial(q.equation(), &printed)?;
    let preserved = Surface::new(&s.p4, printed_pull)
        .ok()
        .map(|h| h.same_as(&q))
        .transpose()?
        .unwrap_or(false);
    let effect = if preserved {
        "the displayed maps still preserve f0 + f5"
    } else {
        "the displayed maps do not preserve f0 + f5"
    };
    Ok(Outcome::discrepancy(note(format!("{}; {effect}", diffs.join("; ")))))
}

fn gm_invariance(ctx: &Ctx) -> Checked {
    let q = ctx.surface("q_gm")?;
    for id in ["g_gm", "inv2"] {
        if let Some(w) = stabilizer_witness(ctx.reg.group(id), &q)? {
            return Ok(Outcome::fail(note(format!("{id}: {w}"))));
        }
    }
    Ok(Outcome::pass())
}

fn gm_tau_involution(ctx: &Ctx) -> Checked {
    let q = ctx.surface("q_gm")?;
    let p = ctx.map("p_gm")?;
    if let Some(w) = lands_on(&p, &q, "q_gm∘p_gm")? {
        return Ok(Outcome::fail(w));
    }
    involution_on(ctx, &ctx.map("tau")?, &p, &q, &[ctx.s.s])
}

fn case3_p_on_q(ctx: &Ctx) -> Checked {
    match lands_on(&ctx.map("p3")?, &ctx.surface("q3")?, "q3∘p3")? {
        Some(w) => Ok(Outcome::fail(w)),
        None => Ok(Outcome::pass()),
    }
}

fn case3_involution(ctx: &Ctx) -> Checked {
    involution_on(ctx, &ctx.map("sigma")?, &ctx.map("p3")?, &ctx.surface("q3")?, &[])
}
