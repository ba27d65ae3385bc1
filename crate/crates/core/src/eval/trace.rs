//! Trace polynomials and the trace identities of PI-reduced algebras.

use rayon::prelude::*;

use super::search::{basis_values, TupleSpace};
use super::{Counterexample, Evaluable, Evaluation};
use crate::algebra::{Element, SuperAlgebra};
use crate::caps::Caps;
use crate::error::{over_cap, usage, Result};
use crate::poly::{
    cayley_hamilton_trace_poly, AlternatedPolynomial, AlternationProfile, GradedPolynomial, GradedVariable,
    SetKind, TracePolynomial,
};
use crate::scalar::{Parity, Scalar};

/// Outcome of an exhaustive trace identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCheck {
    /// The least evaluation where the identity fails, with the defect as value.
    pub counterexample: Option<Counterexample>,
    pub evaluations: u128,
}

impl TraceCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn word_value(alg: &SuperAlgebra, word: &[GradedVariable], ev: &Evaluation) -> Result<Element> {
    if word.is_empty() {
        return alg.one().ok_or_else(|| crate::Error::Usage("a unit term needs a unital algebra".into()));
    }
    let values = ev.values_for(alg, word)?;
    let mut acc = values[0].clone();
    for v in &values[1..] {
        acc = alg.mul(&acc, v);
    }
    Ok(acc)
}

/// Evaluates `tp` with each `tr(u)` read through [`SuperAlgebra::trace_even`].
pub fn evaluate_trace_poly(alg: &SuperAlgebra, tp: &TracePolynomial, ev: &Evaluation) -> Result<Element> {
    let mut acc = Element::zero();
    for term in tp.terms() {
        let mut c = term.coef.clone();
        for u in &term.traces {
            let t = alg.trace_even(&word_value(alg, u.vars(), ev)?)?;
            c = c * t;
            if c.is_zero() {
                break;
            }
        }
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&word_value(alg, &term.word, ev)?.scale(&c));
    }
    Ok(acc)
}

/// `tr(z) f = sum_i f|_{x_i := z x_i}` over the even part `x_1..x_t` of the
/// exact set of `profile`, checked on every elementary evaluation.
pub fn check_traceid1(
    alg: &SuperAlgebra,
    f: &AlternatedPolynomial,
    profile: &AlternationProfile,
    z: GradedVariable,
    caps: &Caps,
) -> Result<TraceCheck> {
    check_traceid1_with_summands(alg, f, profile, z, None, caps)
}

/// As [`check_traceid1`], leaving out the summand with index `drop` when given.
pub fn check_traceid1_with_summands(
    alg: &SuperAlgebra,
    f: &AlternatedPolynomial,
    profile: &AlternationProfile,
    z: GradedVariable,
    drop: Option<usize>,
    caps: &Caps,
) -> Result<TraceCheck> {
    let params = alg.kemer_parameters()?;
    if profile.t() != params.beta {
        return usage(format!("profile pair {:?} differs from the graded dimensions {:?}", profile.t(), params.beta));
    }
    if profile.mu() != 1 || profile.s() + 1 != params.gamma {
        return usage(format!("the identity needs a polynomial of type (dims; {}; 1)", params.gamma - 1));
    }
    if !f.has_type(profile) {
        return usage("the polynomial does not have the declared type");
    }
    if z.parity != Parity::Even || f.core().variables().contains(&z) {
        return usage("z must be a fresh even variable");
    }
    let exact = profile.sets().iter().find(|s| s.kind == SetKind::Exact).expect("mu = 1");
    let xs = exact.part(Parity::Even);
    let compiled = f.compile();
    let pos: Vec<usize> = xs.iter().map(|x| compiled.slot().binary_search(x).expect("f is linear in its sets")).collect();
    let mut full_slot = compiled.slot().to_vec();
    full_slot.push(z);
    let space = TupleSpace::new(alg, &full_slot);
    space.check_cap(compiled.permutation_count() * (xs.len() as u128 + 1), caps)?;
    let n = compiled.slot().len();
    let found = space.find_first(|t| {
        let values = basis_values(&t[..n]);
        let zv = Element::basis(t[n]);
        let tr = alg.trace_even(&zv).expect("z is even");
        let mut defect = compiled.eval(alg, &values).scale(&tr);
        for (i, &p) in pos.iter().enumerate() {
            if Some(i) == drop {
                continue;
            }
            let mut sub = values.clone();
            sub[p] = alg.mul(&zv, &values[p]);
            defect = defect.sub(&compiled.eval(alg, &sub));
        }
        (!defect.is_zero()).then_some(defect)
    });
    Ok(TraceCheck {
        counterexample: found.map(|(t, value)| Counterexample { assignment: full_slot.iter().copied().zip(t).collect(), value }),
        evaluations: space.size(),
    })
}

/// `(X_t(x) x)^nd` for `t = dim B_0`, as a trace polynomial in `x`.
fn hamkel_polynomial(alg: &SuperAlgebra, x: GradedVariable, caps: &Caps) -> Result<TracePolynomial> {
    let params = alg.kemer_parameters()?;
    let t0 = params.beta.0;
    if t0 > caps.max_ch {
        return over_cap(format!("Cayley-Hamilton degree {t0} exceeds the cap {}", caps.max_ch));
    }
    let xp = TracePolynomial::from_polynomial(&GradedPolynomial::var(x));
    let base = if t0 == 0 { xp } else { cayley_hamilton_trace_poly(t0, x, caps)?.mul(&xp) };
    Ok(base.pow(params.gamma))
}

/// The full linearization of `(X_t(x) x)^nd` at `values`, by inclusion-exclusion.
pub fn hamkel_defect(alg: &SuperAlgebra, values: &[Element], caps: &Caps) -> Result<Element> {
    let x = GradedVariable::even(1);
    let p = hamkel_polynomial(alg, x, caps)?;
    linearized_value(alg, &p, x, values)
}

fn linearized_value(alg: &SuperAlgebra, p: &TracePolynomial, x: GradedVariable, values: &[Element]) -> Result<Element> {
    let d = values.len();
    let mut acc = Element::zero();
    for mask in 1u64..(1u64 << d) {
        let mut y = Element::zero();
        for (i, v) in values.iter().enumerate() {
            if mask >> i & 1 == 1 {
                y = y.add(v);
            }
        }
        let val = evaluate_trace_poly(alg, p, &Evaluation::from_pairs([(x, y)]))?;
        let c = if (d - mask.count_ones() as usize) % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
        acc = acc.add(&val.scale(&c));
    }
    Ok(acc)
}

/// Checks `(X_t(x) x)^nd = 0` through its full linearization on all even
/// basis tuples of `alg`.
pub fn check_hamkel(alg: &SuperAlgebra, caps: &Caps) -> Result<TraceCheck> {
    let x = GradedVariable::even(1);
    let p = hamkel_polynomial(alg, x, caps)?;
    let degree = p.terms().map(|t| t.word.len() + t.traces.iter().map(|u| u.degree()).sum::<usize>()).max().unwrap_or(0);
    if degree > 20 {
        return over_cap(format!("linearization degree {degree} is too large"));
    }
    let slot: Vec<GradedVariable> = (1..=degree as u32).map(GradedVariable::even).collect();
    // The linearization is symmetric, so nondecreasing tuples suffice.
    let space = TupleSpace::new(alg, &slot);
    space.check_cap(1u128 << degree, caps)?;
    let failure = (0..space.size() as u64)
        .into_par_iter()
        .map(|i| space.decode(i as u128))
        .filter(|t| t.windows(2).all(|w| w[0] <= w[1]))
        .map(|t| {
            let v = linearized_value(alg, &p, x, &basis_values(&t));
            (t, v)
        })
        .find_first(|(_, v)| !matches!(v, Ok(e) if e.is_zero()));
    let counterexample = match failure {
        None => None,
        Some((_, Err(e))) => return Err(e),
        Some((t, Ok(value))) => Some(Counterexample { assignment: slot.iter().copied().zip(t).collect(), value }),
    };
    Ok(TraceCheck { counterexample, evaluations: space.size() })
}
