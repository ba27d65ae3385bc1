//! Polynomials with trace coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::{GradedMonomial, GradedPolynomial, GradedVariable};
use crate::caps::Caps;
use crate::error::{over_cap, usage, Result};
use crate::scalar::{Parity, Scalar};

/// `coef * tr(u_1) ... tr(u_k) * word`; an empty word stands for the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTerm {
    pub coef: Scalar,
    pub traces: Vec<GradedMonomial>,
    pub word: Vec<GradedVariable>,
}

type Key = (Vec<GradedMonomial>, Vec<GradedVariable>);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TracePolynomial {
    terms: BTreeMap<Key, Scalar>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        TracePolynomial::default()
    }

    /// The scalar `c` times the unit.
    pub fn constant(c: Scalar) -> Self {
        let mut p = TracePolynomial::zero();
        p.add(Vec::new(), Vec::new(), &c);
        p
    }

    pub fn from_polynomial(f: &GradedPolynomial) -> Self {
        let mut p = TracePolynomial::zero();
        for (m, c) in f.terms() {
            p.add(Vec::new(), m.vars().to_vec(), c);
        }
        p
    }

    /// The pure trace `tr(u)`; `u` must be even.
    pub fn trace_of(u: GradedMonomial) -> Result<Self> {
        if u.parity() != Parity::Even {
            return usage(format!("tr({u}) of an odd monomial"));
        }
        let mut p = TracePolynomial::zero();
        p.add(vec![u], Vec::new(), &Scalar::one());
        Ok(p)
    }

    fn add(&mut self, mut traces: Vec<GradedMonomial>, word: Vec<GradedVariable>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        traces.sort();
        let key = (traces, word);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = TraceTerm> + '_ {
        self.terms.iter().map(|((t, w), c)| TraceTerm { coef: c.clone(), traces: t.clone(), word: w.clone() })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &TracePolynomial) -> TracePolynomial {
        let mut p = self.clone();
        for ((t, w), c) in &other.terms {
            p.add(t.clone(), w.clone(), c);
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> TracePolynomial {
        let mut p = TracePolynomial::zero();
        for ((t, w), x) in &self.terms {
            p.add(t.clone(), w.clone(), &(x * c));
        }
        p
    }

    /// Traces are central, so they multiply as commuting scalars.
    pub fn mul(&self, other: &TracePolynomial) -> TracePolynomial {
        let mut p = TracePolynomial::zero();
        for ((ta, wa), x) in &self.terms {
            for ((tb, wb), y) in &other.terms {
                let mut t = ta.clone();
                t.extend(tb.iter().cloned());
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                p.add(t, w, &(x * y));
            }
        }
        p
    }

    pub fn pow(&self, n: usize) -> TracePolynomial {
        let mut p = TracePolynomial::constant(Scalar::one());
        for _ in 0..n {
            p = p.mul(self);
        }
        p
    }

    /// Trace-free part, `None` when some term carries a trace or the unit.
    pub fn as_polynomial(&self) -> Option<GradedPolynomial> {
        let mut out = GradedPolynomial::zero();
        for ((t, w), c) in &self.terms {
            if !t.is_empty() || w.is_empty() {
                return None;
            }
            out.add_term(GradedMonomial::new(w.clone()), c);
        }
        Some(out)
    }
}

impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((t, w), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} *")?;
            for u in t {
                write!(f, " tr({u})")?;
            }
            if w.is_empty() {
                f.write_str(" 1")?;
            }
            for v in w {
                write!(f, " {v}")?;
            }
        }
        Ok(())
    }
}

/// The characteristic polynomial of a `t x t` matrix `x` with coefficients
/// written in `tr(x^i)` through Newton's identities, in the even variable `x`.
pub fn cayley_hamilton_trace_poly(t: usize, x: GradedVariable, caps: &Caps) -> Result<TracePolynomial> {
    if t == 0 {
        return usage("the Cayley-Hamilton degree must be positive");
    }
    if t > caps.max_ch {
        return over_cap(format!("Cayley-Hamilton degree {t} exceeds the cap {}", caps.max_ch));
    }
    if x.parity != Parity::Even {
        return usage("the Cayley-Hamilton variable must be even");
    }
    let power = |i: usize| GradedMonomial::new(vec![x; i]);
    let p: Vec<TracePolynomial> = (0..=t).map(|i| if i == 0 { TracePolynomial::zero() } else { TracePolynomial::trace_of(power(i)).unwrap() }).collect();
    // k e_k = sum_{i=1}^k (-1)^(i-1) e_(k-i) p_i
    let mut e = vec![TracePolynomial::constant(Scalar::one())];
    for k in 1..=t {
        let mut acc = TracePolynomial::zero();
        for i in 1..=k {
            let sign = if i % 2 == 1 { Scalar::one() } else { Scalar::from_int(-1) };
            acc = acc.plus(&e[k - i].mul(&p[i]).scale(&sign));
        }
        e.push(acc.scale(&Scalar::from_ratio(1, k as i64)));
    }
    let mut chi = TracePolynomial::zero();
    for (k, ek) in e.iter().enumerate() {
        let sign = if k % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
        let xp = if k == t { TracePolynomial::constant(Scalar::one()) } else { TracePolynomial::from_polynomial(&GradedPolynomial::from_terms([(power(t - k), Scalar::one())])) };
        chi = chi.plus(&ek.mul(&xp).scale(&sign));
    }
    Ok(chi)
}
