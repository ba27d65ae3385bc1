//! One function per verb. Each returns the verdict object of its report.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};
use superpi::algebra::{AlgebraSpec, SuperAlgebra};
use superpi::caps::Caps;
use superpi::eval::{find_counterexample, find_inexact_evaluation, Counterexample, Evaluation};
use superpi::grassmann::{
    default_truncation, find_envelope_counterexample, grassmann_twist, subset_label, EnvelopeElement, TwistDirection,
};
use superpi::kemer::{build_boundary, build_reduced_witness, build_simple_witness, certify_parameters, check_bound_vanishing};
use superpi::poly::{
    multilinearize, parse_document, parse_documents, parse_polynomial, GradedPolynomial, GradedVariable, PolynomialDocument,
};
use superpi::scalar::Parity;
use superpi::tideal::{build_rqs_over, consequence_span, decide_membership, MultidegreeSlot};

use crate::report::Inputs;
use crate::{CliError, RqsArgs};

type Result<T> = std::result::Result<T, CliError>;

fn load_algebra(inputs: &mut Inputs, path: &Path, caps: &Caps) -> Result<SuperAlgebra> {
    let text = inputs.read(path)?;
    Ok(AlgebraSpec::from_json(&text)?.build(caps)?)
}

fn load_document(inputs: &mut Inputs, path: &Path) -> Result<PolynomialDocument> {
    Ok(parse_document(&inputs.read(path)?)?)
}

fn load_generators(inputs: &mut Inputs, path: &Path) -> Result<Vec<GradedPolynomial>> {
    Ok(parse_documents(&inputs.read(path)?)?.into_iter().map(|d| d.polynomial.expand()).collect())
}

fn parse_variables(text: &str) -> Result<Vec<GradedVariable>> {
    let p = parse_polynomial(&format!("1 * {text}"))?;
    let vars = p.terms().next().map(|(m, _)| m.vars().to_vec()).unwrap_or_default();
    Ok(vars)
}

fn emit(p: &GradedPolynomial) -> String {
    PolynomialDocument::plain(p.clone()).emit()
}

fn counterexample(alg: &SuperAlgebra, c: &Counterexample) -> Value {
    serde_json::to_value(c.report(alg)).expect("reports serialize")
}

fn structure(alg: &SuperAlgebra) -> Value {
    let even = alg.basis_of_parity(Parity::Even).len();
    json!({
        "dim": alg.dim(),
        "even_dim": even,
        "odd_dim": alg.dim() - even,
        "unital": alg.unit_index().is_some(),
    })
}

pub fn validate(inputs: &mut Inputs, path: &Path, caps: &Caps) -> Result<Value> {
    let alg = load_algebra(inputs, path, caps)?;
    let mut out = structure(&alg);
    out["valid"] = json!(true);
    out["labels"] = json!(alg.labels());
    if let Some(d) = alg.decomposition() {
        let params = alg.kemer_parameters()?;
        out["blocks"] = serde_json::to_value(&d.blocks).expect("blocks serialize");
        out["radical_dim"] = json!(params.radical_dim);
        out["par"] = json!([[params.beta.0, params.beta.1], params.gamma]);
    }
    Ok(out)
}

pub fn build_rqs(inputs: &mut Inputs, args: &RqsArgs, caps: &Caps) -> Result<Value> {
    let b = load_algebra(inputs, &args.algebra, caps)?;
    let generators = match &args.generators {
        Some(p) => load_generators(inputs, p)?,
        None => Vec::new(),
    };
    let (even, odd) = match args.q {
        Some(q) => (q, q),
        None => (args.even.unwrap_or(0), args.odd.unwrap_or(0)),
    };
    if even + odd == 0 {
        return Err(CliError::Usage("give --q, or --even and --odd with at least one letter".into()));
    }
    let letters: Vec<GradedVariable> = (1..=even as u32)
        .map(GradedVariable::even)
        .chain((even as u32 + 1..=(even + odd) as u32).map(GradedVariable::odd))
        .collect();
    let alg = build_rqs_over(&b, &generators, &letters, args.s, caps)?;
    let spec = AlgebraSpec::Table(alg.to_table_spec());
    if let Some(out) = &args.output {
        std::fs::write(out, spec.to_json()).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
    }
    let mut verdict = structure(&alg);
    verdict["letters"] = json!(letters.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    verdict["s"] = json!(args.s);
    verdict["radical_dim"] = json!(alg.kemer_parameters()?.radical_dim);
    verdict["algebra"] = serde_json::to_value(&spec).expect("specs serialize");
    Ok(verdict)
}

pub fn identity(inputs: &mut Inputs, alg_path: &Path, poly_path: &Path, caps: &Caps) -> Result<Value> {
    let alg = load_algebra(inputs, alg_path, caps)?;
    let doc = load_document(inputs, poly_path)?;
    let f = doc.polynomial.expand();
    if f.is_multilinear() || f.is_zero() {
        let found = find_counterexample(&alg, &doc.polynomial, caps)?;
        return Ok(json!({
            "identity": found.is_none(),
            "counterexample": found.map(|c| counterexample(&alg, &c)),
        }));
    }
    // Over the rationals f is an identity iff all its full linearizations are.
    let parts = multilinearize(&f);
    for g in &parts {
        if let Some(c) = find_counterexample(&alg, g, caps)? {
            return Ok(json!({
                "identity": false,
                "linearizations": parts.len(),
                "linearization": emit(g),
                "counterexample": counterexample(&alg, &c),
            }));
        }
    }
    Ok(json!({ "identity": true, "linearizations": parts.len(), "counterexample": null }))
}

pub fn exactness(inputs: &mut Inputs, alg_path: &Path, poly_path: &Path, caps: &Caps) -> Result<Value> {
    let alg = load_algebra(inputs, alg_path, caps)?;
    let doc = load_document(inputs, poly_path)?;
    let found = find_inexact_evaluation(&alg, &doc.polynomial, caps)?;
    Ok(json!({
        "exact": found.is_none(),
        "degenerate_nonzero": found.map(|c| counterexample(&alg, &c)),
    }))
}

fn witness_value(bundle: &superpi::kemer::WitnessBundle) -> Value {
    json!({
        "expected": bundle.algebra.describe(&bundle.expected),
        "witness": bundle.to_file(),
    })
}

pub fn witness_simple(inputs: &mut Inputs, path: &Path, s_hat: usize, caps: &Caps) -> Result<Value> {
    let alg = load_algebra(inputs, path, caps)?;
    let d = alg.require_decomposition()?;
    if d.p() != 1 || !d.radical_indices().is_empty() {
        return Err(CliError::Usage("witness simple needs an algebra made of one simple block".into()));
    }
    Ok(witness_value(&build_simple_witness(d.blocks[0], s_hat, caps)?))
}

pub fn witness_reduced(inputs: &mut Inputs, path: &Path, s_hat: usize, caps: &Caps) -> Result<Value> {
    let alg = load_algebra(inputs, path, caps)?;
    Ok(witness_value(&build_reduced_witness(&alg, s_hat, caps)?))
}

pub fn witness_boundary(
    inputs: &mut Inputs,
    alg_path: &Path,
    poly_path: &Path,
    assignments: &[String],
    mu: usize,
    caps: &Caps,
) -> Result<Value> {
    let alg = load_algebra(inputs, alg_path, caps)?;
    let h = load_document(inputs, poly_path)?.polynomial.expand();
    let mut a_bar = Evaluation::new();
    for entry in assignments {
        let Some((var, label)) = entry.split_once('=') else {
            return Err(CliError::Usage(format!("expected variable=label, got {entry:?}")));
        };
        let vars = parse_variables(var.trim())?;
        let [v] = vars[..] else {
            return Err(CliError::Usage(format!("{var:?} is not a single variable")));
        };
        let Some(i) = alg.index_of(label.trim()) else {
            return Err(CliError::Usage(format!("no basis element labelled {:?}", label.trim())));
        };
        a_bar.assign(v, superpi::algebra::Element::basis(i));
    }
    let cert = build_boundary(&alg, &h, &a_bar, mu, caps)?;
    let doc = PolynomialDocument { polynomial: cert.polynomial.clone(), profile: Some(cert.profile.clone()) };
    Ok(json!({
        "mu": cert.mu,
        "polynomial": doc.emit(),
        "assignment": cert.witness.report(&alg),
        "value": alg.describe(&cert.value),
        "attachments": cert.attachments,
        "trivial": cert.trivial,
    }))
}

pub fn params_certify(inputs: &mut Inputs, path: &Path, s_hat: usize, caps: &Caps) -> Result<Value> {
    let alg = load_algebra(inputs, path, caps)?;
    let cert = certify_parameters(&alg, s_hat, caps)?;
    let p = &cert.parameters;
    Ok(json!({
        "par": [[p.beta.0, p.beta.1], p.gamma],
        "radical_dim": p.radical_dim,
        "reduced_flag": p.reduced_flag,
        "expected": alg.describe(&cert.witness.expected),
        "witness": cert.witness.to_file(),
    }))
}

pub fn params_bound(inputs: &mut Inputs, path: &Path, trials: usize, seed: u64, caps: &Caps) -> Result<Value> {
    let alg = load_algebra(inputs, path, caps)?;
    let outcome = check_bound_vanishing(&alg, trials, seed, caps)?;
    let failure = outcome.failure.as_ref().map(|(f, c)| {
        json!({
            "polynomial": PolynomialDocument { polynomial: f.clone(), profile: None }.emit(),
            "counterexample": counterexample(&alg, c),
        })
    });
    Ok(json!({ "holds": outcome.holds(), "trials": trials, "failure": failure }))
}

pub fn tideal_member(inputs: &mut Inputs, gens_path: &Path, poly_path: &Path, caps: &Caps) -> Result<Value> {
    let generators = load_generators(inputs, gens_path)?;
    let f = load_document(inputs, poly_path)?.polynomial.expand();
    let m = decide_membership(&f, &generators, caps)?;
    let combination = m.certificate.as_ref().map(|c| {
        c.terms
            .iter()
            .map(|(coef, row)| json!({ "coefficient": coef, "row": row, "polynomial": emit(&row.polynomial(&generators)) }))
            .collect::<Vec<_>>()
    });
    Ok(json!({
        "member": m.member,
        "slot": m.slot.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "rank": m.rank,
        "certificate": combination,
    }))
}

pub fn tideal_span(inputs: &mut Inputs, gens_path: &Path, slot: &str, caps: &Caps) -> Result<Value> {
    let generators = load_generators(inputs, gens_path)?;
    let slot = MultidegreeSlot::new(parse_variables(slot)?)?;
    let span = consequence_span(&generators, &slot, caps)?;
    Ok(json!({
        "slot": slot.variables().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "monomials": slot.monomials().len(),
        "rank": span.rank(),
        "basis": span.basis.iter().map(|row| emit(&slot.polynomial(row))).collect::<Vec<_>>(),
    }))
}

fn envelope_label(alg: &SuperAlgebra, b: usize, mask: u32) -> String {
    format!("{}⊗{}", alg.label(b), subset_label(mask))
}

fn envelope_value(alg: &SuperAlgebra, e: &EnvelopeElement) -> BTreeMap<String, String> {
    e.iter().map(|((b, m), c)| (envelope_label(alg, *b, *m), c.to_string())).collect()
}

pub fn envelope_check(inputs: &mut Inputs, alg_path: &Path, poly_path: &Path, n: Option<usize>, caps: &Caps) -> Result<Value> {
    let alg = load_algebra(inputs, alg_path, caps)?;
    let f = load_document(inputs, poly_path)?.polynomial.expand();
    let n = n.unwrap_or_else(|| default_truncation(f.degree()));
    let found = find_envelope_counterexample(&alg, &f, n, caps)?;
    let cex = found.map(|c| {
        json!({
            "assignment": c.assignment.iter().map(|(v, b, m)| (v.to_string(), envelope_label(&alg, *b, *m))).collect::<Vec<_>>(),
            "value": envelope_value(&alg, &c.value),
        })
    });
    Ok(json!({ "identity": cex.is_none(), "generators": n, "counterexample": cex }))
}

pub fn envelope_twist(inputs: &mut Inputs, poly_path: &Path, direction: TwistDirection) -> Result<Value> {
    let f = load_document(inputs, poly_path)?.polynomial.expand();
    let g = grassmann_twist(&f, direction)?;
    Ok(json!({ "direction": direction, "polynomial": emit(&g) }))
}
