use std::fmt::Write;

use curvemix::spectral::{ComparisonReport, CHECK_TOL};
use curvemix::{BinaryMatrix, VERSION};
use serde_json::{json, Value};

/// Pretty JSON with the library version and tolerance added to `body`.
pub fn envelope(command: &str, body: Value) -> String {
    let mut v = json!({ "command": command, "version": VERSION, "tolerance": CHECK_TOL });
    if let (Value::Object(out), Value::Object(extra)) = (&mut v, body) {
        out.extend(extra);
    }
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn header(out: &mut String, what: &str) {
    let _ = writeln!(out, "# curvemix {VERSION}, {what}, tolerance {CHECK_TOL:e}");
}

pub fn matrix_rows(a: &BinaryMatrix) -> String {
    a.to_rows().iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n").collect()
}

pub fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn comparison_table(r: &ComparisonReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.theorem);
    let _ = writeln!(out, "states: {}", r.states);
    for (k, v) in &r.values {
        let _ = writeln!(out, "{k}: {v}");
    }
    for i in &r.inequalities {
        match i.middle {
            Some(m) => {
                let _ = writeln!(out, "{} {}: {} <= {} <= {}", status(i.pass), i.label, i.left, m, i.right);
            }
            None => {
                let _ = writeln!(out, "{} {}: {} <= {}", status(i.pass), i.label, i.left, i.right);
            }
        }
    }
    for c in &r.cases {
        let condition = c.condition_min.map_or("vacuous".to_string(), |v| v.to_string());
        let _ = writeln!(out, "{} case {}: block condition minimum {condition}", status(c.passed()), c.name);
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "{}", status(r.passed()));
    out
}

pub fn comparison_csv(r: &ComparisonReport) -> String {
    let mut out = String::from("label,left,middle,right,pass\n");
    for i in &r.inequalities {
        let middle = i.middle.map_or(String::new(), |m| m.to_string());
        let _ = writeln!(out, "\"{}\",{},{middle},{},{}", i.label, i.left, i.right, i.pass);
    }
    out
}
