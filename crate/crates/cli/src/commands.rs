//! One function per subcommand; each turns parsed arguments into an `Outcome`.

use pcl_core::curves::{check_hypotheses, PlaneCurve, Verdict};
use pcl_core::kummer::kummer_orbifold;
use pcl_core::orbgroups::{
    count_epimorphisms, identify, normal_form, presentation, reduce, surjects_onto_infinite_dihedral,
};
use pcl_core::pencils::{contains_curve, fiber_structure, orbifold_of_pencil, special_fibers_seeded, Pencil};
use pcl_core::polycore::HomForm;
use pcl_core::splitting::{
    find_identity, no_cancellation_check, parametrize_conic, parametrize_line, split_test, verify_identity,
    Parametrization,
};
use pcl_core::{Error, Result};
use serde_json::{json, Map, Value};

use crate::report::{self, Outcome, EXIT_FAILURE, EXIT_OK, EXIT_UNDECIDED};
use crate::{Command, PairArgs, PencilAction, PencilArgs};

pub fn execute(cmd: &Command, seed: u64) -> Outcome {
    let mut inputs = Map::new();
    match run_command(cmd, seed, &mut inputs) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::new(Value::Object(inputs), report::error_value(&e), report::exit_code(&e)),
    }
}

fn form(inputs: &mut Map<String, Value>, key: &str, text: &str) -> Result<HomForm> {
    let f = HomForm::parse(text)?;
    inputs.insert(key.to_string(), report::form(&f));
    Ok(f)
}

/// Like [`form`], but accepts the zero polynomial (as a constant).
fn form_or_zero(inputs: &mut Map<String, Value>, key: &str, text: &str) -> Result<HomForm> {
    let poly = pcl_core::polycore::parse_poly(text)?;
    let f = if poly.is_zero() { HomForm::zero(poly.vars(), 0) } else { HomForm::new(poly)? };
    inputs.insert(key.to_string(), report::form(&f));
    Ok(f)
}

fn forms(inputs: &mut Map<String, Value>, key: &str, texts: &[String]) -> Result<Vec<HomForm>> {
    let fs = texts.iter().map(|t| HomForm::parse(t)).collect::<Result<Vec<_>>>()?;
    inputs.insert(key.to_string(), fs.iter().map(report::form).collect());
    Ok(fs)
}

/// Parametrization given on the command line, or derived when C2 is a line
/// or a conic with a rational point.
fn parametrization(
    args: &PairArgs,
    c2: &HomForm,
    inputs: &mut Map<String, Value>,
) -> Result<(Option<Parametrization>, Vec<String>)> {
    let phi = match &args.phi {
        Some(text) => Some(Parametrization::parse(text)?),
        None => match c2.degree() {
            1 => Some(parametrize_line(c2)?),
            2 => match parametrize_conic(c2, args.height) {
                Ok(phi) => Some(phi),
                Err(e @ (Error::NoRationalPointFound(_) | Error::DegenerateConic(_))) => {
                    return Ok((None, vec![format!("C2 not parametrized: {e}")]));
                }
                Err(e) => return Err(e),
            },
            d => return Ok((None, vec![format!("C2 has degree {d}; pass --phi to parametrize it")])),
        },
    };
    if let Some(phi) = &phi {
        inputs.insert("phi".into(), Value::String(phi.to_string()));
    }
    Ok((phi, Vec::new()))
}

fn require_phi(phi: Option<Parametrization>, warnings: &[String]) -> Result<Parametrization> {
    phi.ok_or_else(|| Error::InvalidInput(warnings.join("; ")))
}

fn run_command(cmd: &Command, seed: u64, inputs: &mut Map<String, Value>) -> Result<Outcome> {
    match cmd {
        Command::Check(args) => check(args, seed, inputs),
        Command::Split(args) => {
            let f1 = form(inputs, "c1", &args.c1)?;
            let f2 = form(inputs, "c2", &args.c2)?;
            let (phi, warnings) = parametrization(args, &f2, inputs)?;
            let phi = require_phi(phi, &warnings)?;
            phi.check_on(&f2)?;
            let s = split_test(&f1, &phi)?;
            let exit = if s.splits { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome::new(Value::Object(inputs.clone()), report::split(&s), exit))
        }
        Command::Identity { pair, max_deg } => {
            let f1 = form(inputs, "c1", &pair.c1)?;
            let f2 = form(inputs, "c2", &pair.c2)?;
            inputs.insert("max_deg".into(), json!(max_deg));
            let (phi, warnings) = parametrization(pair, &f2, inputs)?;
            let phi = require_phi(phi, &warnings)?;
            let w = find_identity(&f1, &f2, &phi, *max_deg)?;
            let (h, k) = verify_identity(&f1, &f2, &w.g1, &w.g2)?;
            let result = json!({
                "G1": report::form(&w.g1),
                "G2": report::form(&w.g2),
                "H": report::form(&w.h),
                "k": w.k,
                "verified": h == w.h && k == w.k,
                "no_cancellation": no_cancellation_check(w.g1.poly(), w.g2.poly(), f1.poly()),
            });
            Ok(Outcome::new(Value::Object(inputs.clone()), result, EXIT_OK))
        }
        Command::Verify { c1, c2, g1, g2 } => {
            let f1 = form(inputs, "c1", c1)?;
            let f2 = form(inputs, "c2", c2)?;
            let g1 = form_or_zero(inputs, "g1", g1)?;
            let g2 = form_or_zero(inputs, "g2", g2)?;
            let (h, k) = verify_identity(&f1, &f2, &g1, &g2)?;
            let result = json!({
                "H": report::form(&h),
                "k": k,
                "no_cancellation": no_cancellation_check(g1.poly(), g2.poly(), f1.poly()),
            });
            Ok(Outcome::new(Value::Object(inputs.clone()), result, EXIT_OK))
        }
        Command::Pencil { action } => pencil(action, seed, inputs),
        Command::Group { punctures, weights, reduce: divisors, present, normal_form: nf, identify: ident, count } => {
            inputs.insert("punctures".into(), json!(punctures));
            inputs.insert("weights".into(), json!(weights));
            let mut w = weights.clone();
            let mut result = Map::new();
            if let Some(d) = divisors {
                inputs.insert("reduce".into(), json!(d));
                w = reduce(&w, d)?;
                result.insert("reduced".into(), json!({ "punctures": punctures, "weights": w }));
            }
            let nothing_selected = !present && !nf && !ident && count.is_none();
            let mut exit = EXIT_OK;
            if *present || nothing_selected {
                result.insert("presentation".into(), Value::String(presentation(*punctures, &w)?.to_string()));
            }
            if *nf {
                result.insert("normal_form".into(), Value::String(normal_form(*punctures, &w)?.to_string()));
            }
            if *ident || nothing_selected {
                let g = identify(*punctures, &w);
                if g == pcl_core::orbgroups::NamedGroup::Unrecognized {
                    exit = EXIT_UNDECIDED;
                }
                result.insert("identify".into(), report::named_group(&g));
                if *punctures > 0 {
                    result.insert(
                        "surjects_onto_infinite_dihedral".into(),
                        json!(surjects_onto_infinite_dihedral(*punctures, &w)?),
                    );
                }
            }
            if let Some(order) = count {
                inputs.insert("count".into(), json!(order));
                let c = count_epimorphisms(*punctures, &w, *order)?;
                result.insert("epimorphisms".into(), json!({ "target_order": order, "count": c }));
            }
            Ok(Outcome::new(Value::Object(inputs.clone()), Value::Object(result), exit))
        }
        Command::Kummer { c, lines, n, max_deg, unchecked } => {
            let c = form(inputs, "c", c)?;
            let ls = forms(inputs, "lines", lines)?;
            let ls: [HomForm; 3] = ls
                .try_into()
                .map_err(|_| Error::InvalidInput("--lines needs exactly three linear forms".into()))?;
            inputs.insert("n".into(), json!(n));
            let r = kummer_orbifold(&c, ls, *n, *max_deg, !unchecked)?;
            let result = json!({
                "base_pencil": [report::form(r.base_pencil.p()), report::form(r.base_pencil.q())],
                "pencil": [report::form(r.pencil.p()), report::form(r.pencil.q())],
                "curve": report::form(&r.curve),
                "tangency_points": r.tangency_points.as_ref().map(|ps| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
                "signature": report::signature(&r.signature),
                "target": { "punctures": 1, "weights": r.target_weights },
                "reduction": r.reduction,
                "target_group": report::named_group(&r.target_group),
            });
            let exit = if r.reduction.is_some() { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome::new(Value::Object(inputs.clone()), result, exit).warn(r.signature.warnings.clone()))
        }
        Command::Corpus { filter } => Ok(crate::corpus::run(filter.as_deref())),
    }
}

fn check(args: &PairArgs, seed: u64, inputs: &mut Map<String, Value>) -> Result<Outcome> {
    let f1 = form(inputs, "c1", &args.c1)?;
    let f2 = form(inputs, "c2", &args.c2)?;
    inputs.insert("seed".into(), json!(seed));
    let c1 = PlaneCurve::new(f1)?;
    let c2 = PlaneCurve::new(f2.clone())?;
    let (phi, mut warnings) = parametrization(args, &f2, inputs)?;
    let rep = check_hypotheses(&c1, &c2, phi.as_ref(), seed)?;
    warnings.extend(rep.residual.iter().map(|r| format!("unclassified singular cluster: {r}")));
    let names = ["even_degree", "simple_singularities", "avoids_singular_locus", "even_contact"];
    let mut conditions = Map::new();
    for (name, c) in names.iter().zip(rep.conditions()) {
        conditions.insert(name.to_string(), report::condition(c));
    }
    let overall = rep.overall();
    let result = json!({
        "overall": overall.to_string(),
        "conditions": conditions,
        "singularities": rep.singularities.iter().map(report::singularity).collect::<Vec<_>>(),
        "residual": rep.residual.iter().map(report::cluster).collect::<Vec<_>>(),
        "split": rep.split.as_ref().map(report::split),
        "c2_irreducible": rep.c2_irreducible,
    });
    let exit = match overall {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_FAILURE,
        Verdict::NotCheckable => EXIT_UNDECIDED,
    };
    Ok(Outcome::new(Value::Object(inputs.clone()), result, exit).warn(warnings))
}

fn pencil(action: &PencilAction, seed: u64, inputs: &mut Map<String, Value>) -> Result<Outcome> {
    let (PencilAction::Analyze(args) | PencilAction::Orbifold(args) | PencilAction::Contains(args)) = action;
    let PencilArgs { p, q, c, max_deg } = args;
    let p = form(inputs, "p", p)?;
    let q = form(inputs, "q", q)?;
    let c_forms = forms(inputs, "c", c)?;
    let pencil = Pencil::new(p, q)?;
    let dmax = max_deg.unwrap_or(pencil.degree());
    match action {
        PencilAction::Analyze(_) => {
            inputs.insert("seed".into(), json!(seed));
            let special = special_fibers_seeded(&pencil, seed)?;
            let mut warnings: Vec<String> = special
                .unresolved
                .iter()
                .map(|m| format!("special parameters at the roots of {m} exceed the extension limit"))
                .collect();
            let mut fibers = Vec::new();
            let mut residual = !special.unresolved.is_empty();
            for param in &special.params {
                let f = fiber_structure(&pencil, param, &c_forms, dmax)?;
                residual |= f.residual;
                warnings.extend(f.warnings.iter().map(|w| format!("{}: {w}", param)));
                fibers.push(report::fiber(&f));
            }
            let result = json!({
                "special": special.params.iter().map(report::parameter).collect::<Vec<_>>(),
                "unresolved": special.unresolved.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "fibers": fibers,
            });
            let exit = if residual { EXIT_UNDECIDED } else { EXIT_OK };
            Ok(Outcome::new(Value::Object(inputs.clone()), result, exit).warn(warnings))
        }
        PencilAction::Orbifold(_) => {
            let sig = orbifold_of_pencil(&pencil, &c_forms, dmax)?;
            let exit = if sig.fibers.iter().any(|f| f.residual) { EXIT_UNDECIDED } else { EXIT_OK };
            let result = report::signature(&sig);
            Ok(Outcome::new(Value::Object(inputs.clone()), result, exit).warn(sig.warnings.clone()))
        }
        PencilAction::Contains(_) => {
            let cont = contains_curve(&pencil, &c_forms, dmax)?;
            let assignments: Vec<Value> = cont
                .assignments
                .iter()
                .map(|(g, p)| json!({ "component": report::form(g), "parameter": p.as_ref().map(report::parameter) }))
                .collect();
            let result = json!({ "contained": cont.contained, "assignments": assignments });
            let exit = if cont.contained { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome::new(Value::Object(inputs.clone()), result, exit))
        }
    }
}
