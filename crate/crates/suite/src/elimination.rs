//! Small polynomial systems solved by successive vanishing substitutions,
//! with resultants as a fallback.
//!
//! The question answered is always whether a system `c_i = 0` has a
//! solution with `factor ≠ 0`. Powers of `factor` are divided out of every
//! constraint first, since they cannot vanish there.

use fano_core::{resultant, Poly, Rat};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub enum Conclusion {
    /// No common zero off `factor = 0`.
    Contradiction,
    /// The route stalled with these constraints remaining.
    Undetermined(Vec<Poly>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EliminationTrace {
    /// Power of `factor` removed from each input constraint.
    pub stripped: Vec<u32>,
    /// Human-readable record of each deduction, in order.
    pub steps: Vec<String>,
    pub used_resultant: bool,
    pub conclusion: Conclusion,
}

const RESULTANT_BUDGET: usize = 4;

fn strip(c: &Poly, factor: &Poly) -> (Poly, u32) {
    let mut c = c.clone();
    let mut k = 0;
    if factor.as_constant().is_some() {
        return (c, 0);
    }
    while !c.is_zero() {
        match c.div_exact(factor) {
            Some(q) => {
                c = q;
                k += 1;
            }
            None => break,
        }
    }
    (c, k)
}

/// Decides whether `constraints` force `factor = 0`, over the variables `vars`.
pub fn eliminate(constraints: &[Poly], factor: &Poly, vars: &[usize]) -> EliminationTrace {
    let mut stripped = Vec::new();
    let mut reduced = Vec::new();
    for c in constraints {
        let (r, k) = strip(c, factor);
        stripped.push(k);
        reduced.push(r);
    }
    let mut steps = Vec::new();
    let mut used_resultant = false;
    let conclusion = solve(
        reduced,
        factor.clone(),
        vars,
        &mut steps,
        &mut used_resultant,
        RESULTANT_BUDGET,
    );
    EliminationTrace {
        stripped,
        steps,
        used_resultant,
        conclusion,
    }
}

fn solve(
    mut cs: Vec<Poly>,
    factor: Poly,
    vars: &[usize],
    steps: &mut Vec<String>,
    used_resultant: &mut bool,
    budget: usize,
) -> Conclusion {
    cs.retain(|c| !c.is_zero());
    cs = cs.iter().map(|c| strip(c, &factor).0).collect();
    if let Some(c) = cs.iter().find(|c| c.as_constant().is_some()) {
        steps.push(format!("{c} = 0 is impossible"));
        return Conclusion::Contradiction;
    }
    if let Some(c) = cs.iter().find(|c| c.is_monomial()) {
        // a monomial vanishes only if one of its variables does
        let support: Vec<usize> = c.support().into_iter().filter(|v| vars.contains(v)).collect();
        let names: Vec<&str> = support.iter().map(|&v| c.table().name(v)).collect();
        match names.as_slice() {
            [one] => steps.push(format!("{c} = 0 forces {one} = 0")),
            _ => steps.push(format!("{c} = 0 forces one of {} to vanish", names.join(", "))),
        }
        for (&v, name) in support.iter().zip(&names) {
            let zero = [(v, Rat::zero())];
            let f = factor.substitute_values(&zero);
            if f.is_zero() {
                steps.push(format!("{name} = 0 lies on the excluded locus"));
                continue;
            }
            if support.len() > 1 {
                steps.push(format!("branch {name} = 0"));
            }
            let next: Vec<Poly> = cs.iter().map(|p| p.substitute_values(&zero)).collect();
            match solve(next, f, vars, steps, used_resultant, budget) {
                Conclusion::Contradiction => {}
                open => return open,
            }
        }
        return Conclusion::Contradiction;
    }
    if budget == 0 {
        return Conclusion::Undetermined(cs);
    }
    // fallback: eliminate a shared variable between two constraints
    let pick = vars.iter().find_map(|&v| {
        let with: Vec<usize> = (0..cs.len()).filter(|&i| cs[i].degree_in_var(v) > 0).collect();
        (with.len() >= 2).then(|| (v, with[0], with[1]))
    });
    let Some((v, i, j)) = pick else {
        return Conclusion::Undetermined(cs);
    };
    let r = match resultant(&cs[i], &cs[j], v) {
        Ok(r) => r,
        Err(_) => return Conclusion::Undetermined(cs),
    };
    *used_resultant = true;
    steps.push(format!(
        "resultant in {} of constraints {i}, {j}: {r}",
        cs[0].table().name(v)
    ));
    if r.is_zero() {
        return Conclusion::Undetermined(cs);
    }
    cs.push(r);
    solve(cs, factor, vars, steps, used_resultant, budget - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::session;

    #[test]
    fn monomial_chain() {
        let s = session();
        let f = s.poly("1 + a*b");
        let cs = [s.poly("-2*a*(1 + a*b)^2"), s.poly("2*b^3"), s.poly("a + b - 2")];
        let t = eliminate(&cs, &f, &[s.a, s.b]);
        assert_eq!(t.stripped, vec![2, 0, 0]);
        assert_eq!(t.conclusion, Conclusion::Contradiction);
        assert!(!t.used_resultant);
    }

    #[test]
    fn resultant_fallback() {
        let s = session();
        let cs = [s.poly("a*b - 1"), s.poly("a*b - 2")];
        let t = eliminate(&cs, &s.poly("1"), &[s.a, s.b]);
        assert_eq!(t.conclusion, Conclusion::Contradiction);
        assert!(t.used_resultant);
    }

    #[test]
    fn consistent_system_is_undetermined() {
        let s = session();
        let t = eliminate(&[s.poly("a - b")], &s.poly("1"), &[s.a, s.b]);
        assert!(matches!(t.conclusion, Conclusion::Undetermined(_)));
        // a = 0 is a genuine solution here
        let t = eliminate(&[s.poly("a^2"), s.poly("a*b")], &s.poly("1"), &[s.a, s.b]);
        assert!(matches!(t.conclusion, Conclusion::Undetermined(_)));
    }

    #[test]
    fn excluded_branch_is_skipped() {
        let s = session();
        // a = 0 would solve it but lies where the factor a vanishes
        let t = eliminate(&[s.poly("a")], &s.poly("a"), &[s.a]);
        assert_eq!(t.conclusion, Conclusion::Contradiction);
    }
}
