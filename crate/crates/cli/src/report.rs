//! JSON rendering of core results and the exit-code contract.

use pcl_core::curves::{ConditionResult, ResidualCluster, SingularityReport};
use pcl_core::orbgroups::NamedGroup;
use pcl_core::pencils::{FiberData, OrbifoldSignature, PencilParameter};
use pcl_core::polycore::{HomForm, QPoly};
use pcl_core::splitting::SplitResult;
use pcl_core::Error;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Outcome of one job before it is wrapped into the report object.
pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub warnings: Vec<String>,
    pub exit: i32,
}

impl Outcome {
    pub fn new(inputs: Value, result: Value, exit: i32) -> Self {
        Outcome { inputs, result, warnings: Vec::new(), exit }
    }

    pub fn warn(mut self, warnings: impl IntoIterator<Item = String>) -> Self {
        self.warnings.extend(warnings);
        self
    }

    pub fn into_report(self, command: &[String]) -> Value {
        json!({
            "command": command,
            "inputs": self.inputs,
            "result": self.result,
            "warnings": self.warnings,
            "exit_status": self.exit,
        })
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoWitnessUpToBound(_)
        | Error::NonRationalSquareConstant(_)
        | Error::NotDivisible(_)
        | Error::Tangency(_)
        | Error::NotContained
        | Error::ComponentOfBranchCurve => EXIT_FAILURE,
        Error::NotCheckable(_)
        | Error::ExtensionTooLarge(_)
        | Error::NotDecidableByRule
        | Error::EnumerationTooLarge(_)
        | Error::NoRationalPointFound(_) => EXIT_UNDECIDED,
        _ => EXIT_INPUT,
    }
}

pub fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

pub fn error_value(e: &Error) -> Value {
    json!({ "error": { "kind": error_kind(e), "message": e.to_string() } })
}

pub fn form(f: &HomForm) -> Value {
    Value::String(f.to_string())
}

pub fn poly(p: &QPoly) -> Value {
    Value::String(p.to_string())
}

pub fn parameter(p: &PencilParameter) -> Value {
    match p {
        PencilParameter::Rational(a, b) => Value::String(format!("[{a}:{b}]")),
        PencilParameter::Algebraic(m) => json!({ "minpoly": m.to_string() }),
    }
}

pub fn condition(c: &ConditionResult) -> Value {
    json!({ "verdict": c.verdict.to_string(), "evidence": c.evidence })
}

pub fn singularity(s: &SingularityReport) -> Value {
    json!({
        "point": s.point.to_string(),
        "multiplicity": s.multiplicity,
        "milnor": s.milnor.to_string(),
        "type": s.ade_type.to_string(),
    })
}

pub fn cluster(r: &ResidualCluster) -> Value {
    json!({ "points": r.degree(), "eliminant": r.eliminant().to_string(), "description": r.to_string() })
}

pub fn split(s: &SplitResult) -> Value {
    json!({
        "splits": s.splits,
        "pullback": poly(&s.pullback),
        "square_root": s.square_root.as_ref().map(poly),
        "constant": s.constant.as_ref().map(|c| c.to_string()),
        "odd_orders": s.odd_orders.iter().map(|(f, m)| json!([f.to_string(), m])).collect::<Vec<_>>(),
    })
}

pub fn fiber(f: &FiberData) -> Value {
    let components: Vec<Value> = f
        .components
        .iter()
        .map(|c| {
            json!({
                "form": c.text,
                "degree": c.degree,
                "multiplicity": c.multiplicity,
                "in_c": c.in_c,
                "irreducible": c.irreducible,
            })
        })
        .collect();
    json!({
        "parameter": parameter(&f.parameter),
        "components": components,
        "residual": f.residual,
        "in_a": f.in_a,
        "weight": f.weight,
    })
}

pub fn signature(s: &OrbifoldSignature) -> Value {
    json!({
        "punctures": s.punctures,
        "weights": s.weights,
        "fibers": s.fibers.iter().map(fiber).collect::<Vec<_>>(),
    })
}

pub fn named_group(g: &NamedGroup) -> Value {
    let (name, data) = match g {
        NamedGroup::DihedralFinite(o) => ("DihedralFinite", json!({ "order": o })),
        NamedGroup::Triangle(p, q, r) => ("Triangle", json!([p, q, r])),
        NamedGroup::FreeProduct { free_rank, factors } => {
            ("FreeProduct", json!({ "free_rank": free_rank, "factors": factors }))
        }
        NamedGroup::InfiniteDihedral => ("InfiniteDihedral", Value::Null),
        NamedGroup::Trivial => ("Trivial", Value::Null),
        NamedGroup::Cyclic(m) => ("Cyclic", json!({ "order": m })),
        NamedGroup::Unrecognized => ("Unrecognized", Value::Null),
    };
    json!({ "name": name, "data": data, "display": g.to_string() })
}
