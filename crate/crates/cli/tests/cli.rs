use std::process::Command;

use serde_json::Value;

const CIRCLE: &str = "x^2+y^2-z^2";
const BITANGENT: &str = "2*z^2-x^2-y^2";

fn pcl(args: &[&str]) -> (Value, i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pcl"))
        .args(args)
        .env_remove("PCL_SEED")
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Value = serde_json::from_str(&text).expect("stdout is one json object");
    (report, out.status.code().unwrap(), text)
}

#[test]
fn check_bitangent_conics_passes() {
    let (r, code, _) = pcl(&["check", "--c1", CIRCLE, "--c2", BITANGENT]);
    assert_eq!(code, 0);
    for cond in ["even_degree", "simple_singularities", "avoids_singular_locus", "even_contact"] {
        assert_eq!(r["result"]["conditions"][cond]["verdict"], "pass", "{cond}");
    }
    assert_eq!(r["exit_status"], 0);
}

#[test]
fn identity_witness() {
    let (r, code, _) = pcl(&["identity", "--c1", CIRCLE, "--c2", BITANGENT, "--max-deg", "2"]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!((res["G1"].as_str(), res["G2"].as_str(), res["H"].as_str()), (Some("z"), Some("1"), Some("1")));
    assert_eq!(res["k"], 0);
}

#[test]
fn group_identify_infinite_dihedral() {
    let (r, code, _) = pcl(&["group", "--punctures", "1", "--weights", "2,2", "--identify"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["identify"]["name"], "InfiniteDihedral");
}

#[test]
fn exit_codes() {
    assert_eq!(pcl(&["check", "--c1", "y^2*z-x^3", "--c2", "x-2*z"]).1, 1);
    assert_eq!(pcl(&["identity", "--c1", CIRCLE, "--c2", "x^2+2*y^2-3*z^2", "--max-deg", "3"]).1, 1);
    assert_eq!(pcl(&["check", "--c1", "x+u", "--c2", "y"]).1, 3);
    assert_eq!(pcl(&["group", "--weights", "2,2", "--count", "500"]).1, 2);
    let (r, code, _) = pcl(&["split", "--c1", CIRCLE, "--c2", "x^2+y^2+z^2"]);
    assert_eq!(code, 3, "{r}");
    let (r, code, _) = pcl(&["frobnicate"]);
    assert_eq!((code, r["result"]["error"]["kind"].as_str()), (3, Some("Usage")));
}

#[test]
fn parse_errors_carry_position() {
    let (r, code, _) = pcl(&["pencil", "analyze", "--p", "x^2 + 2*w", "--q", "y^2"]);
    assert_eq!(code, 3);
    assert_eq!(r["result"]["error"]["kind"], "Parse");
    assert!(r["result"]["error"]["message"].as_str().unwrap().contains("column 8"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["pencil", "analyze", "--p", "x^2+y^2-z^2", "--q", "x*y+2*y*z-z^2", "--seed", "7"];
    let (_, _, a) = pcl(&args);
    let (_, _, b) = pcl(&args);
    assert_eq!(a, b);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_pcl"))
        .args(["check", "--c1", CIRCLE, "--c2", "y-z"])
        .env("PCL_SEED", "11")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["inputs"]["seed"], 11);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("pcl-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (_, code, text) = pcl(&["group", "--weights", "2,2,5", "--present", "--out", p]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn corpus_passes() {
    let (r, code, _) = pcl(&["corpus"]);
    assert_eq!(r["result"]["failed"], Value::Array(vec![]), "{}", r["result"]);
    assert_eq!(code, 0);
    assert!(r["result"]["total"].as_u64().unwrap() >= 80);
}
