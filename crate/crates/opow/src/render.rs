//! Text, LaTeX, JSON and CSV renderings of expansions and tables.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use opow_core::coefficients::{join_alpha, CTable};
use opow_core::diffpoly::write_jet;
use opow_core::special_u::ATable;
use opow_core::{DiffPolynomial, ExactRational, ExponentVector, OperatorExpansion, SpecialTerm};
use serde_json::{json, Map, Number, Value};

/// Exact JSON number for an integer of any size.
pub fn int_value(v: &BigInt) -> Value {
    let n: Number = v.to_string().parse().expect("decimal integers are valid JSON numbers");
    Value::Number(n)
}

/// Integers become JSON numbers; proper fractions become `"p/q"` strings.
pub fn rational_value(q: &ExactRational) -> Value {
    if q.is_integer() {
        int_value(q.numer())
    } else {
        Value::String(q.to_string())
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("Value always serializes");
    s.push('\n');
    s
}

/// `A^2 = (u u') D^1 + (u^2) D^2`
pub fn generic_text(exp: &OperatorExpansion) -> String {
    let body: Vec<String> = exp.iter().map(|(s, p)| format!("({p}) D^{s}")).collect();
    format!("A^{} = {}\n", exp.k(), body.join(" + "))
}

fn latex_monomial(out: &mut String, exps: &ExponentVector) {
    let mut first = true;
    for (order, &e) in exps.as_slice().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push(' ');
        }
        first = false;
        let mut jet = String::new();
        if order >= 4 {
            write!(jet, "u^{{({order})}}").unwrap();
        } else {
            write_jet(&mut jet, order).unwrap();
        }
        match (order, e) {
            (_, 1) => out.push_str(&jet),
            (0, _) => write!(out, "u^{{{e}}}").unwrap(),
            _ => write!(out, "\\left({jet}\\right)^{{{e}}}").unwrap(),
        }
    }
    if first {
        out.push('1');
    }
}

fn latex_poly(p: &DiffPolynomial) -> String {
    let mut out = String::new();
    for (i, m) in p.monomials().iter().enumerate() {
        let neg = m.coeff.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = m.coeff.abs();
        if !mag.is_one() || m.exps.is_empty() {
            write!(out, "{mag}").unwrap();
            if !m.exps.is_empty() {
                out.push(' ');
            }
        }
        if !m.exps.is_empty() {
            latex_monomial(&mut out, &m.exps);
        }
    }
    if p.is_zero() {
        out.push('0');
    }
    out
}

fn latex_d(s: u32) -> String {
    if s == 1 {
        "\\frac{d}{dz}".into()
    } else {
        format!("\\frac{{d^{{{s}}}}}{{dz^{{{s}}}}}")
    }
}

pub fn generic_latex(exp: &OperatorExpansion) -> String {
    let k = exp.k();
    let mut out = String::from("\\begin{align*}\n");
    writeln!(out, "A^{{{k}}} &= \\sum_{{s=1}}^{{{k}}} P_{{{k}}}^{{s}}(u) \\frac{{d^{{s}}}}{{dz^{{s}}}},\\\\").unwrap();
    let lines: Vec<String> = exp
        .iter()
        .map(|(s, p)| format!("P_{{{k}}}^{{{s}}}(u) &= {}", latex_poly(p)))
        .collect();
    out.push_str(&lines.join(",\\\\\n"));
    out.push_str(".\n\\end{align*}\n");
    out
}

pub fn generic_json(exp: &OperatorExpansion) -> Value {
    let terms: Vec<Value> = exp
        .iter()
        .map(|(s, p)| {
            let monomials: Vec<Value> = p
                .monomials()
                .iter()
                .map(|m| json!({ "coeff": int_value(&m.coeff), "exps": m.exps.as_slice() }))
                .collect();
            json!({ "d_order": s, "monomials": monomials })
        })
        .collect();
    json!({ "k": exp.k(), "u": "generic", "terms": terms })
}

fn special_factors(t: &SpecialTerm) -> String {
    let mut out = String::new();
    if t.z_exp != 0 {
        write!(out, " z^{}", t.z_exp).unwrap();
    }
    if t.exp_mult != 0 {
        write!(out, " e^({}z)", t.exp_mult).unwrap();
    }
    write!(out, " D^{}", t.d_order).unwrap();
    out
}

/// `A^3 = 3 z^-5 D^1 - 3 z^-4 D^2 + 1 z^-3 D^3`
pub fn special_text(k: u32, terms: &[SpecialTerm]) -> String {
    let mut out = format!("A^{k} = ");
    if terms.is_empty() {
        out.push('0');
    }
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        write!(out, "{}{}", t.coeff.abs(), special_factors(t)).unwrap();
    }
    out.push('\n');
    out
}

fn latex_rational(q: &ExactRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

pub fn special_latex(k: u32, terms: &[SpecialTerm]) -> String {
    let mut out = format!("A^{{{k}}} = ");
    if terms.is_empty() {
        out.push('0');
    }
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = t.coeff.abs();
        let bare = t.z_exp == 0 && t.exp_mult == 0;
        if !mag.is_one() || bare {
            out.push_str(&latex_rational(&mag));
            out.push(' ');
        }
        if t.z_exp != 0 {
            write!(out, "z^{{{}}} ", t.z_exp).unwrap();
        }
        if t.exp_mult != 0 {
            write!(out, "e^{{{}z}} ", t.exp_mult).unwrap();
        }
        out.push_str(&latex_d(t.d_order));
    }
    out.push('\n');
    out
}

pub fn special_json(k: u32, u_name: &str, terms: &[SpecialTerm]) -> Value {
    let terms: Vec<Value> = terms
        .iter()
        .map(|t| {
            json!({
                "coeff": rational_value(&t.coeff),
                "z_exp": t.z_exp,
                "exp_mult": t.exp_mult,
                "d_order": t.d_order,
            })
        })
        .collect();
    json!({ "k": k, "u": u_name, "terms": terms })
}

pub const CTABLE_HEADER: &str = "k,s,m,alpha,value";

pub fn ctable_csv(table: &CTable) -> String {
    let mut out = String::from(CTABLE_HEADER);
    out.push('\n');
    for (key, v) in table.iter() {
        writeln!(out, "{},{},{},{},{}", key.k, key.s, key.m, join_alpha(&key.alpha), v).unwrap();
    }
    out
}

pub fn ctable_json(table: &CTable) -> Value {
    Value::Array(
        table
            .iter()
            .map(|(key, v)| {
                let mut row = Map::new();
                row.insert("k".into(), key.k.into());
                row.insert("s".into(), key.s.into());
                row.insert("m".into(), key.m.into());
                row.insert("alpha".into(), json!(key.alpha));
                row.insert("value".into(), int_value(v));
                Value::Object(row)
            })
            .collect(),
    )
}

pub fn atable_csv(table: &ATable) -> String {
    let mut out = String::from("k,s,value\n");
    for (k, s, v) in table.iter() {
        writeln!(out, "{k},{s},{v}").unwrap();
    }
    out
}

pub fn atable_json(table: &ATable) -> Value {
    Value::Array(
        table
            .iter()
            .map(|(k, s, v)| json!({ "k": k, "s": s, "value": int_value(v) }))
            .collect(),
    )
}

/// Triangle rows `n = 1..`, entries `m = 1..=n`.
pub fn triangle_csv(rows: &[Vec<BigInt>]) -> String {
    let mut out = String::from("n,m,value\n");
    for (n, row) in rows.iter().enumerate().skip(1) {
        for (m, v) in row.iter().enumerate().skip(1) {
            writeln!(out, "{n},{m},{v}").unwrap();
        }
    }
    out
}

pub fn triangle_json(rows: &[Vec<BigInt>]) -> Value {
    let mut entries = Vec::new();
    for (n, row) in rows.iter().enumerate().skip(1) {
        for (m, v) in row.iter().enumerate().skip(1) {
            entries.push(json!({ "n": n, "m": m, "value": int_value(v) }));
        }
    }
    Value::Array(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use opow_core::expand;
    use opow_core::special_u::{specialize, URule};

    #[test]
    fn generic_text_square() {
        assert_eq!(generic_text(&expand(2).unwrap()), "A^2 = (u u') D^1 + (u^2) D^2\n");
    }

    #[test]
    fn special_text_forms() {
        let exp = expand(3).unwrap();
        assert_eq!(
            special_text(3, &specialize(&exp, &URule::IdentityZ)),
            "A^3 = 1 z^1 D^1 + 3 z^2 D^2 + 1 z^3 D^3\n"
        );
        assert_eq!(
            special_text(3, &specialize(&exp, &URule::InverseZ)),
            "A^3 = 3 z^-5 D^1 - 3 z^-4 D^2 + 1 z^-3 D^3\n"
        );
        assert_eq!(
            special_text(2, &specialize(&expand(2).unwrap(), &URule::ExpZ)),
            "A^2 = 1 e^(2z) D^1 + 1 e^(2z) D^2\n"
        );
    }

    #[test]
    fn latex_forms() {
        let tex = generic_latex(&expand(3).unwrap());
        assert!(tex.contains("P_{3}^{1}(u) &= u \\left(u'\\right)^{2} + u^{2} u''"));
        assert!(tex.contains("P_{3}^{2}(u) &= 3 u^{2} u'"));
        let exp = expand(2).unwrap();
        assert_eq!(
            special_latex(2, &specialize(&exp, &URule::InverseZ)),
            "A^{2} = -z^{-3} \\frac{d}{dz} + z^{-2} \\frac{d^{2}}{dz^{2}}\n"
        );
    }

    #[test]
    fn big_integers_stay_exact_in_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_value(&big).to_string(), "123456789012345678901234567890");
        let half = ExactRational::new(1.into(), 2.into());
        assert_eq!(rational_value(&half), Value::String("1/2".into()));
    }
}
