//! Deterministic text output: CSV tables and the reproduce report lines.
//!
//! Every float is printed with 12 significant digits so identical configs
//! produce byte-identical output.

use crate::bohr::{AsymptoticRow, BoundReport, Certificate};
use crate::reproduce::CheckResult;

/// 12-significant-digit scientific form used across all tables.
pub fn fmt_sig12(x: f64) -> String {
    // fold negative zero into zero
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

/// Norm-table rows `(n, value, kind, is_exact)` as CSV.
pub fn norms_csv(rows: &[(usize, f64, String, bool)]) -> String {
    let mut out = String::from("n,value,kind,isExact\n");
    for (n, value, kind, exact) in rows {
        out.push_str(&format!("{n},{},{kind},{exact}\n", fmt_sig12(*value)));
    }
    out
}

/// Bound-report rows as CSV (one per report).
pub fn bounds_csv(condenser: &str, reports: &[BoundReport]) -> String {
    let mut out = String::from("condenser,direction,R,method,residual,truncationN,tailEstimate\n");
    for r in reports {
        out.push_str(&format!(
            "{condenser},{},{},{},{},{},{}\n",
            r.direction,
            fmt_sig12(r.level),
            r.method,
            fmt_sig12(r.residual),
            r.truncation_n,
            fmt_sig12(r.tail_estimate)
        ));
    }
    out
}

/// Asymptotic-experiment rows as CSV.
pub fn asymptotic_csv(rows: &[AsymptoticRow]) -> String {
    let mut out = String::from("r,lowerB,upperB,mPrime,epsilonUp,epsilonDown\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_sig12(row.r),
            fmt_sig12(row.lower_b),
            fmt_sig12(row.upper_b),
            fmt_sig12(row.m_prime),
            fmt_sig12(row.epsilon_up),
            fmt_sig12(row.epsilon_down)
        ));
    }
    out
}

/// Certificate rows as CSV.
pub fn certificates_csv(certs: &[Certificate]) -> String {
    let mut out = String::from("R,r1,r0,bohrSum,boundarySup,ratio,certified\n");
    for c in certs {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_sig12(c.level),
            fmt_sig12(c.r1),
            fmt_sig12(c.r0),
            fmt_sig12(c.bohr_sum),
            fmt_sig12(c.boundary_sup),
            fmt_sig12(c.ratio),
            c.certified
        ));
    }
    out
}

/// One PASS/FAIL line per reproduction check.
pub fn check_line(check: &CheckResult) -> String {
    format!(
        "{} {:28} measured={} expected={} tol={:.1e}  {}",
        if check.pass { "PASS" } else { "FAIL" },
        check.id,
        fmt_sig12(check.measured),
        fmt_sig12(check.expected),
        check.tolerance,
        check.note
    )
}
