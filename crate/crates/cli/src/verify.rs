//! Re-checks stored algebras: fusion law for every axis, the Frobenius form,
//! primitivity.

use axialforge::algebra::{Check, CheckReport};
use axialforge::analysis::primitivity;
use axialforge::engine::Verdict;

use crate::store::RunRecord;

pub enum Verified {
    Skipped(&'static str),
    Checked(CheckReport),
}

pub fn verify_record(rec: &RunRecord) -> Verified {
    if rec.verdict != Verdict::Completed {
        return Verified::Skipped(if rec.verdict == Verdict::Incomplete { "incomplete" } else { "collapsed" });
    }
    let mut report = CheckReport::default();
    let Some(stored) = &rec.algebra else {
        report.push(Check::new("algebra stored", false, "record has no structure constants".into()));
        return Verified::Checked(report);
    };
    let alg = &stored.algebra;
    for (i, a) in stored.axes.iter().enumerate() {
        let r = alg.check_axis(a);
        report.push(Check::new(
            &format!("axis {i} fusion law"),
            r.is_ok(),
            r.err().map_or(String::new(), |e| e.to_string()),
        ));
    }
    match &stored.form {
        Some(f) => {
            let ok = f.is_symmetric() && alg.form_associates(f);
            report.push(Check::new("form associates", ok, String::new()));
        }
        None => report.push(Check::new("form associates", false, "no form stored".into())),
    }
    let prim = primitivity(alg, &stored.axes);
    report.push(Check::new("primitive", prim, String::new()));
    if let Some(p) = rec.primitive {
        report.push(Check::new("primitivity matches record", p == prim, String::new()));
    }
    Verified::Checked(report)
}
