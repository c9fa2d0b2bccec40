//! Regression corpus: documented examples replayed through the front-end
//! (argument lists with expected exit codes and report fields) or directly
//! against the library for operations without a subcommand of their own.

use pcl_core::curves::{
    classify_singularity, intersection_multiplicity, milnor_number, singular_points, IntersectionNumber, PlaneCurve,
    ProjPoint,
};
use pcl_core::kummer::{pullback, KummerMap};
use pcl_core::par::{self, Exec};
use pcl_core::polycore::{
    change_coordinates, factor_bounded, gcd, parse_poly, rat, resultant, squarefree_decomposition, HomForm,
    LinearChange, QPoly,
};
use pcl_core::splitting::{parametrize_conic, parametrize_line, pullback_on_curve, Parametrization};
use serde_json::{json, Value};

use crate::report::{Outcome, EXIT_FAILURE, EXIT_OK};

enum Probe {
    /// Arguments, expected exit code, and `(json pointer, expected json)` pairs.
    Cli(&'static [&'static str], i32, &'static [(&'static str, &'static str)]),
    Lib(fn() -> bool),
}

struct Case {
    name: &'static str,
    probe: Probe,
}

const CIRCLE: &str = "x^2 + y^2 - z^2";
const BITANGENT: &str = "2*z^2 - x^2 - y^2";
const ZAR_D2: &str = "x^2 + y^2 + x*z + z^2";

fn f(s: &str) -> HomForm {
    HomForm::parse(s).unwrap()
}

fn p(s: &str) -> QPoly {
    parse_poly(s).unwrap()
}

fn sqf_strings(s: &str) -> Vec<(String, u32)> {
    squarefree_decomposition(&p(s)).unwrap().into_iter().map(|(g, m)| (g.to_string(), m)).collect()
}

fn factors(s: &str, dmax: u32) -> (Vec<(String, u32)>, Vec<String>) {
    let fac = factor_bounded(&f(s), dmax).unwrap();
    let mut v: Vec<_> = fac.factors.iter().map(|(g, m)| (g.to_string(), *m)).collect();
    v.sort();
    (v, fac.residual.iter().map(|(g, _)| g.to_string()).collect())
}

fn sing(s: &str) -> Vec<String> {
    let c = PlaneCurve::new(f(s)).unwrap();
    singular_points(&c).unwrap().points.iter().map(|q| q.to_string()).collect()
}

fn origin_number(a: &str, b: &str) -> IntersectionNumber {
    intersection_multiplicity(&p(a), &p(b), &[rat(0), rat(0)])
}

fn zariski_pencil() -> [String; 2] {
    // The cubic is fixed here so the corpus is reproducible.
    let d3 = "x^3 + 2*y^3 - z^3 + x*y*z";
    let p = f(ZAR_D2).pow(3).unwrap();
    let q = f(d3).pow(2).unwrap();
    [p.to_string(), q.to_string()]
}

fn on_curve(phi: &Parametrization, c: &str) -> bool {
    pullback_on_curve(&f(c), phi).is_zero()
}

fn lib_cases() -> Vec<Case> {
    let lib = |name, probe: fn() -> bool| Case { name, probe: Probe::Lib(probe) };
    vec![
        lib("normalize/content", || f("4*x^2 - 8*y^2").normalize() == f("x^2 - 2*y^2")),
        lib("normalize/sign", || f("-3*y + 6*z").normalize() == f("y - 2*z")),
        lib("normalize/zero", || HomForm::zero(pcl_core::polycore::Vars::Xyz, 2).normalize().is_zero()),
        lib("gcd/difference-of-squares", || gcd(&f("x^2 - y^2"), &f("x - y")).unwrap() == f("x - y")),
        lib("gcd/coprime", || gcd(&f("x"), &f("y")).unwrap().degree() == 0),
        lib("gcd/common-factor", || {
            let a = f("x + y").pow(2).unwrap().mul(&f("z")).unwrap();
            let b = f("x + y").mul(&f("z^2")).unwrap();
            gcd(&a, &b).unwrap() == f("x*z + y*z")
        }),
        lib("resultant/quadric-line", || resultant(&p("x^2 + y^2"), &p("x - y"), 0).unwrap() == p("2*y^2")),
        lib("resultant/variables", || resultant(&p("x"), &p("y"), 0).unwrap() == p("y")),
        lib("resultant/constants", || resultant(&p("x - 1"), &p("x + 1"), 0).unwrap() == p("2")),
        lib("squarefree/x2y", || sqf_strings("x^2*y") == [("y".to_string(), 1), ("x".to_string(), 2)]),
        lib("squarefree/cube", || sqf_strings("x^3 + 3*x^2*y + 3*x*y^2 + y^3") == [("x + y".to_string(), 3)]),
        lib("squarefree/already", || sqf_strings("x^2 + y^2") == [("x^2 + y^2".to_string(), 1)]),
        lib("factor/two-lines", || {
            factors("x^2 - y^2", 1) == (vec![("x + y".into(), 1), ("x - y".into(), 1)], vec![])
        }),
        lib("factor/line-and-conic", || {
            factors("x^2*y + y^3", 2) == (vec![("x^2 + y^2".into(), 1), ("y".into(), 1)], vec![])
        }),
        lib("factor/bounded-residual", || factors("x^2 + y^2", 1) == (vec![], vec!["x^2 + y^2".to_string()])),
        lib("coordinates/identity", || change_coordinates(&f("x"), &LinearChange::identity()) == f("x")),
        lib("coordinates/swap", || {
            let m = LinearChange::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap();
            change_coordinates(&f("x^2"), &m) == f("y^2")
        }),
        lib("coordinates/translate", || {
            let m = LinearChange::from_ints([[1, 0, 1], [0, 1, 0], [0, 0, 1]]).unwrap();
            change_coordinates(&f(CIRCLE), &m) == f("x^2 + 2*x*z + y^2")
        }),
        lib("singular/smooth-conic", || sing(CIRCLE).is_empty()),
        lib("singular/cusp", || sing("y^2*z - x^3") == ["[0:0:1]"]),
        lib("singular/tri-nodal-quartic", || {
            let q = "x^2*y^2 + y^2*z^2 + x^2*z^2 - 2*x^2*y*z - 2*x*y^2*z - 2*x*y*z^2";
            sing(q) == ["[0:0:1]", "[0:1:0]", "[1:0:0]"]
        }),
        lib("intersection/transverse", || origin_number("u", "v") == IntersectionNumber::Finite(1)),
        lib("intersection/tangent", || origin_number("v", "v - u^2") == IntersectionNumber::Finite(2)),
        lib("intersection/flex", || origin_number("v^2 - u^3", "v") == IntersectionNumber::Finite(3)),
        lib("milnor/node", || {
            let c = PlaneCurve::new(f("y^2*z - x^2*z - x^3")).unwrap();
            milnor_number(&c, &ProjPoint::from_ints(0, 0, 1).unwrap()).unwrap() == IntersectionNumber::Finite(1)
        }),
        lib("milnor/cusp", || {
            let c = PlaneCurve::new(f("y^2*z - x^3")).unwrap();
            milnor_number(&c, &ProjPoint::from_ints(0, 0, 1).unwrap()).unwrap() == IntersectionNumber::Finite(2)
        }),
        lib("milnor/smooth", || {
            let c = PlaneCurve::new(f(CIRCLE)).unwrap();
            milnor_number(&c, &ProjPoint::from_ints(1, 0, 1).unwrap()).unwrap() == IntersectionNumber::Finite(0)
        }),
        lib("classify/A2", || classify("y^2*z - x^3") == "A2"),
        lib("classify/A3", || classify("y^2*z^2 - x^4") == "A3"),
        lib("classify/D4", || classify("x^3 - y^3") == "D4"),
        lib("parse/rational-coefficient", || p("1/2*x + y").to_string() == "1/2*x + y"),
        lib("parse/mixed-families", || parse_poly("x + u").is_err()),
        lib("parametrize/line-y-z", || parametrize_line(&f("y - z")).unwrap().to_string() == "(t, s, s)"),
        lib("parametrize/line-x", || parametrize_line(&f("x")).unwrap().to_string() == "(0, t, s)"),
        lib("parametrize/line-z", || parametrize_line(&f("z")).unwrap().to_string() == "(t, s, 0)"),
        lib("parametrize/circle", || on_curve(&parametrize_conic(&f(CIRCLE), 50).unwrap(), CIRCLE)),
        lib("parametrize/bitangent", || on_curve(&parametrize_conic(&f(BITANGENT), 50).unwrap(), BITANGENT)),
        lib("parametrize/no-point", || parametrize_conic(&f("x^2 + y^2 + z^2"), 50).is_err()),
        lib("pullback/conic-on-line", || {
            pullback_on_curve(&f(CIRCLE), &Parametrization::parse("t, s, s").unwrap()) == p("t^2")
        }),
        lib("pullback/line", || pullback_on_curve(&f("x"), &Parametrization::parse("t, s, s").unwrap()) == p("t")),
        lib("pullback/circle-param", || {
            let phi = Parametrization::parse("s^2 - t^2, 2*t*s, s^2 + t^2").unwrap();
            pullback_on_curve(&f("z"), &phi) == p("s^2 + t^2")
        }),
        lib("kummer/identity-frame", || {
            let map = KummerMap::new([f("x"), f("y"), f("z")], 3).unwrap();
            pullback(&f("x"), &map).unwrap() == f("x^3")
        }),
        lib("kummer/two-lines", || {
            let map = KummerMap::new([f("x - z"), f("x + z"), f("y - z")], 3).unwrap();
            let l1l2 = f("x - z").mul(&f("x + z")).unwrap();
            pullback(&l1l2, &map).unwrap() == l1l2.pow(3).unwrap()
        }),
        lib("kummer/circle-frame", || {
            let map = KummerMap::new([f("x - z"), f("x + z"), f("y - z")], 2).unwrap();
            pullback(&f("x - z"), &map).unwrap() == f("x - z").pow(2).unwrap()
        }),
    ]
}

fn classify(s: &str) -> String {
    let c = PlaneCurve::new(f(s)).unwrap();
    classify_singularity(&c, &ProjPoint::from_ints(0, 0, 1).unwrap()).unwrap().ade_type.to_string()
}

fn cli_cases() -> Vec<Case> {
    macro_rules! cli {
        ($name:expr, [$($arg:expr),*], $exit:expr $(, $ptr:expr => $val:expr)*) => {
            Case { name: $name, probe: Probe::Cli(&[$($arg),*], $exit, &[$(($ptr, $val)),*]) }
        };
    }
    vec![
        cli!("check/bitangent-conics", ["check", "--c1", CIRCLE, "--c2", BITANGENT], 0,
            "/result/overall" => "\"pass\""),
        cli!("check/odd-degree", ["check", "--c1", "y^2*z - x^3", "--c2", "x - 2*z"], 1,
            "/result/conditions/even_degree/verdict" => "\"fail\""),
        cli!("check/secant-line", ["check", "--c1", CIRCLE, "--c2", "y"], 1,
            "/result/conditions/even_contact/verdict" => "\"fail\""),
        cli!("check/mixed-families", ["check", "--c1", "x + u", "--c2", "y"], 3),
        cli!("split/tangent-line", ["split", "--c1", CIRCLE, "--c2", "y - z"], 0,
            "/result/square_root" => "\"t\"", "/result/constant" => "\"1\""),
        cli!("split/secant-line", ["split", "--c1", CIRCLE, "--c2", "x"], 1,
            "/result/odd_orders" => "[[\"t + s\", 1], [\"t - s\", 1]]"),
        cli!("split/square-with-constant", ["split", "--c1", "4*x^4*y^2", "--c2", "x + y - z", "--phi", "t, s, t + s"], 0,
            "/result/square_root" => "\"t^2*s\"", "/result/constant" => "\"4\""),
        cli!("identity/bitangent-conics", ["identity", "--c1", CIRCLE, "--c2", BITANGENT, "--max-deg", "2"], 0,
            "/result/G1" => "\"z\"", "/result/G2" => "\"1\"", "/result/H" => "\"1\"", "/result/k" => "0",
            "/result/no_cancellation" => "true"),
        cli!("identity/transverse-conic", ["identity", "--c1", CIRCLE, "--c2", "x^2 + 2*y^2 - 3*z^2", "--max-deg", "3"], 1,
            "/result/error/kind" => "\"NoWitnessUpToBound\""),
        cli!("verify/bitangent-conics", ["verify", "--c1", CIRCLE, "--c2", BITANGENT, "--g1", "z", "--g2", "1"], 0,
            "/result/H" => "\"1\"", "/result/k" => "0", "/result/no_cancellation" => "true"),
        cli!("verify/quartic", ["verify", "--c1", CIRCLE, "--c2", "x^4 - x^2*y^2 - y^4 + y^2*z^2", "--g1", "x^2", "--g2", "y"], 0,
            "/result/H" => "\"1\"", "/result/k" => "0"),
        cli!("verify/not-divisible", ["verify", "--c1", CIRCLE, "--c2", BITANGENT, "--g1", "x", "--g2", "1"], 1,
            "/result/error/kind" => "\"NotDivisible\""),
        cli!("verify/zero", ["verify", "--c1", CIRCLE, "--c2", BITANGENT, "--g1", "0", "--g2", "0"], 1,
            "/result/error/kind" => "\"NotDivisible\""),
        cli!("pencil/special-double-line", ["pencil", "analyze", "--p", "z^2", "--q", CIRCLE], 0,
            "/result/special" => "[\"[1:0]\", \"[1:1]\"]"),
        cli!("pencil/special-two-double-lines", ["pencil", "analyze", "--p", "x^2", "--q", "y^2"], 0,
            "/result/special" => "[\"[1:0]\", \"[0:1]\"]"),
        cli!("pencil/contains-line", ["pencil", "contains", "--p", "x^2", "--q", "y^2", "--c", "x - y"], 0,
            "/result/assignments/0/parameter" => "\"[1:-1]\""),
        cli!("pencil/contains-conics", ["pencil", "contains", "--p", "z^2", "--q", CIRCLE, "--c", CIRCLE, "--c", BITANGENT], 0),
        cli!("pencil/not-contained", ["pencil", "contains", "--p", "x^2", "--q", "y^2", "--c", "z"], 1),
        cli!("pencil/orbifold-conics", ["pencil", "orbifold", "--p", "z^2", "--q", CIRCLE, "--c", CIRCLE, "--c", BITANGENT], 0,
            "/result/punctures" => "2", "/result/weights" => "[2]"),
        cli!("group/present-zariski", ["group", "--punctures", "1", "--weights", "2,3", "--present"], 0,
            "/result/presentation" => "\"<x1, y1, y2 | y1^2, y2^3, x1*y1*y2>\""),
        cli!("group/present-dihedral", ["group", "--weights", "2,2,5", "--present"], 0,
            "/result/presentation" => "\"<y1, y2, y3 | y1^2, y2^2, y3^5, y1*y2*y3>\""),
        cli!("group/present-trivial", ["group", "--punctures", "1", "--present"], 0,
            "/result/presentation" => "\"<x1 | x1>\""),
        cli!("group/reduce-zariski", ["group", "--punctures", "1", "--weights", "2,3,5", "--reduce", "2,3,1", "--identify"], 0,
            "/result/reduced/weights" => "[2, 3]", "/result/identify/name" => "\"FreeProduct\""),
        cli!("group/reduce-even", ["group", "--punctures", "1", "--weights", "2,4", "--reduce", "2,2", "--identify"], 0,
            "/result/identify/name" => "\"InfiniteDihedral\""),
        cli!("group/reduce-identity", ["group", "--weights", "6", "--reduce", "6"], 0,
            "/result/reduced/weights" => "[6]"),
        cli!("group/normal-form", ["group", "--punctures", "2", "--weights", "2", "--normal-form"], 0,
            "/result/normal_form" => "\"F1 * Z2\""),
        cli!("group/normal-form-free", ["group", "--punctures", "3", "--normal-form"], 0,
            "/result/normal_form" => "\"F2\""),
        cli!("group/dihedral-12", ["group", "--weights", "2,2,6", "--identify"], 0,
            "/result/identify/data/order" => "12"),
        cli!("group/infinite-dihedral", ["group", "--punctures", "1", "--weights", "2,2", "--identify"], 0,
            "/result/identify/name" => "\"InfiniteDihedral\""),
        cli!("group/free-product", ["group", "--punctures", "1", "--weights", "2,5", "--identify"], 0,
            "/result/identify/data/factors" => "[2, 5]"),
        cli!("group/onto-dinf-227", ["group", "--punctures", "1", "--weights", "2,2,7", "--identify"], 0,
            "/result/surjects_onto_infinite_dihedral" => "true"),
        cli!("group/onto-dinf-free", ["group", "--punctures", "2", "--weights", "2", "--identify"], 0,
            "/result/surjects_onto_infinite_dihedral" => "true"),
        cli!("group/onto-dinf-odd", ["group", "--punctures", "1", "--weights", "3", "--identify"], 0,
            "/result/surjects_onto_infinite_dihedral" => "false"),
        cli!("group/count-reflection-pairs", ["group", "--punctures", "1", "--weights", "2,2", "--count", "6"], 0,
            "/result/epimorphisms/count" => "6"),
        cli!("group/count-abelian", ["group", "--punctures", "1", "--weights", "2", "--count", "6"], 0,
            "/result/epimorphisms/count" => "0"),
        cli!("group/count-too-large", ["group", "--punctures", "1", "--weights", "2,2", "--count", "202"], 2),
        cli!("kummer/n1", ["kummer", "--c", CIRCLE, "--lines", "x - z, x + z, y - z", "--n", "1"], 0,
            "/result/signature/weights" => "[2]"),
        cli!("kummer/n2", ["kummer", "--c", CIRCLE, "--lines", "x - z, x + z, y - z", "--n", "2"], 0,
            "/result/target_group/name" => "\"InfiniteDihedral\""),
        cli!("kummer/n3", ["kummer", "--c", CIRCLE, "--lines", "x - z, x + z, y - z", "--n", "3"], 0,
            "/result/target_group/name" => "\"FreeProduct\""),
        cli!("kummer/secant", ["kummer", "--c", CIRCLE, "--lines", "x - z, x + z, y", "--n", "2"], 1),
    ]
}

struct Verdict {
    name: &'static str,
    ok: bool,
    detail: Value,
}

fn run_case(case: &Case) -> Verdict {
    match &case.probe {
        Probe::Lib(check) => Verdict { name: case.name, ok: check(), detail: Value::Null },
        Probe::Cli(args, exit, expect) => {
            let argv: Vec<String> = std::iter::once("pcl").chain(args.iter().copied()).map(String::from).collect();
            let (report, got) = crate::run(&argv);
            let mut mismatches = Vec::new();
            for (ptr, want) in *expect {
                let want: Value = serde_json::from_str(want).expect("corpus expectation is json");
                let got = report.pointer(ptr).cloned().unwrap_or(Value::Null);
                if got != want {
                    mismatches.push(json!({ "pointer": ptr, "expected": want, "got": got }));
                }
            }
            let ok = got == *exit && mismatches.is_empty();
            let detail = json!({ "expected_exit": exit, "exit": got, "mismatches": mismatches });
            Verdict { name: case.name, ok, detail }
        }
    }
}

fn zariski_case() -> Vec<Case> {
    // The pencil is long, so the arguments are built once and leaked.
    let [p, q] = zariski_pencil();
    let c = {
        let d2 = f(ZAR_D2).pow(3).unwrap();
        let d3 = f("x^3 + 2*y^3 - z^3 + x*y*z").pow(2).unwrap();
        d2.combine(&rat(1), &d3, &rat(1)).to_string()
    };
    let leak = |s: String| -> &'static str { Box::leak(s.into_boxed_str()) };
    let args: &'static [&'static str] =
        Box::leak(vec!["pencil", "orbifold", "--p", leak(p), "--q", leak(q), "--c", leak(c)].into_boxed_slice());
    vec![Case {
        name: "pencil/zariski-sextic",
        probe: Probe::Cli(args, 0, &[("/result/punctures", "1"), ("/result/weights", "[3, 2]")]),
    }]
}

fn all_cases() -> Vec<Case> {
    let mut all = lib_cases();
    all.extend(cli_cases());
    all.extend(zariski_case());
    all
}

/// Runs every case (concurrently when built with `parallel`) and reports
/// them in corpus order.
pub fn run(filter: Option<&str>) -> Outcome {
    let selected: Vec<Case> = all_cases().into_iter().filter(|c| filter.is_none_or(|s| c.name.contains(s))).collect();
    let verdicts = par::map(Exec::default(), &selected, run_case);
    let failed: Vec<&str> = verdicts.iter().filter(|v| !v.ok).map(|v| v.name).collect();
    let cases: Vec<Value> = verdicts
        .iter()
        .map(|v| json!({ "name": v.name, "ok": v.ok, "detail": v.detail }))
        .collect();
    let result = json!({
        "total": verdicts.len(),
        "passed": verdicts.len() - failed.len(),
        "failed": failed,
        "cases": cases,
    });
    let exit = if failed.is_empty() { EXIT_OK } else { EXIT_FAILURE };
    Outcome::new(json!({ "filter": filter }), result, exit)
}
