//! Matrix serialization: JSON (round-trippable), CSV and LaTeX.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graded::{GradedMatrix, ParityVector};
use crate::reps::Representation;
use crate::scalar::{fmt_poly, Poly, Scalar};

/// `{"dim", "parities", "entries": [[i, j, "scalar"], ...]}`, 1-based, zeros omitted.
pub fn matrix_to_json(m: &GradedMatrix) -> Value {
    let entries: Vec<Value> = m
        .nonzero()
        .map(|(i, j, v)| json!([i + 1, j + 1, v.to_string()]))
        .collect();
    json!({
        "dim": m.dim(),
        "parities": m.parity().bits(),
        "entries": entries,
    })
}

/// Pretty JSON text with one entry per line.
pub fn matrix_to_json_string(m: &GradedMatrix) -> String {
    let entries: Vec<String> = m
        .nonzero()
        .map(|(i, j, v)| format!("    {}", json!([i + 1, j + 1, v.to_string()])))
        .collect();
    format!(
        "{{\n  \"dim\": {},\n  \"parities\": {},\n  \"entries\": [\n{}\n  ]\n}}\n",
        m.dim(),
        json!(m.parity().bits()),
        entries.join(",\n")
    )
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn matrix_from_value(v: &Value) -> Result<GradedMatrix> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing 'dim'"))? as usize;
    let parities: Vec<u8> = v
        .get("parities")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing 'parities'"))?
        .iter()
        .map(|p| match p.as_u64() {
            Some(0) => Ok(0),
            Some(1) => Ok(1),
            _ => Err(bad("parities must be 0 or 1")),
        })
        .collect::<Result<_>>()?;
    if parities.len() != dim {
        return Err(bad(format!(
            "{} parities for dimension {dim}",
            parities.len()
        )));
    }
    let p = ParityVector::new(parities);
    let mut m = GradedMatrix::zeros_on(&p);
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing 'entries'"))?;
    for e in entries {
        let arr = e
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| bad("entries are [i, j, value]"))?;
        let idx = |k: usize| {
            arr[k]
                .as_u64()
                .map(|x| x as usize)
                .filter(|&x| (1..=dim).contains(&x))
                .ok_or_else(|| bad(format!("index out of range in {e}")))
        };
        let (i, j) = (idx(0)?, idx(1)?);
        let s: Scalar = arr[2]
            .as_str()
            .ok_or_else(|| bad("entry values are strings"))?
            .parse()?;
        m.set(i - 1, j - 1, s);
    }
    Ok(m)
}

pub fn matrix_from_json(text: &str) -> Result<GradedMatrix> {
    matrix_from_value(&serde_json::from_str(text)?)
}

/// One row per line, canonical scalar strings separated by commas.
pub fn matrix_to_csv(m: &GradedMatrix) -> String {
    let n = m.dim();
    let mut out = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn latex_poly(p: &Poly) -> String {
    // Reuse the canonical text and rewrite the tokens.
    let text = fmt_poly(p);
    let mut out = String::new();
    for term in text.split(' ') {
        if term == "+" || term == "-" {
            out.push_str(&format!(" {term} "));
            continue;
        }
        let mut factors: Vec<String> = Vec::new();
        for f in term.split('*') {
            let (base, exp) = match f.split_once('^') {
                Some((b, e)) => (b, Some(e)),
                None => (f, None),
            };
            let base = match base {
                "theta" => "\\theta".to_string(),
                "xi" => "\\xi".to_string(),
                b => b.to_string(),
            };
            factors.push(match exp {
                Some(e) => format!("{base}^{{{e}}}"),
                None => base,
            });
        }
        // Drop unit coefficients in front of variables.
        if factors.len() > 1 {
            match factors[0].as_str() {
                "1" => {
                    factors.remove(0);
                }
                "-1" => {
                    factors.remove(0);
                    factors[0] = format!("-{}", factors[0]);
                }
                _ => {}
            }
        }
        let joined = factors
            .iter()
            .map(|f| match f.split_once('/') {
                Some((a, b)) => {
                    let (sign, a) = a.strip_prefix('-').map_or(("", a), |r| ("-", r));
                    format!("{sign}\\frac{{{a}}}{{{b}}}")
                }
                None => f.clone(),
            })
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&joined);
    }
    out
}

pub fn scalar_to_latex(s: &Scalar) -> String {
    let num = latex_poly(s.numerator());
    if s.denominator().is_one() {
        num
    } else {
        format!("\\frac{{{num}}}{{{}}}", latex_poly(s.denominator()))
    }
}

/// An `array` environment inside `\left( ... \right)`.
pub fn matrix_to_latex(m: &GradedMatrix) -> String {
    let n = m.dim();
    let mut out = format!("\\left(\n\\begin{{array}}{{{}}}\n", "c".repeat(n));
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| scalar_to_latex(m.get(i, j))).collect();
        out.push_str(&row.join(" & "));
        out.push_str(if i + 1 < n { " \\\\\n" } else { "\n" });
    }
    out.push_str("\\end{array}\n\\right)\n");
    out
}

/// The module matrices and the derived generators of a representation.
pub fn representation_to_json(r: &Representation) -> Value {
    let g = r.generators();
    json!({
        "spin": r.spin().to_string(),
        "dim": r.dim(),
        "parities": r.parity().bits(),
        "matrices": {
            "h": matrix_to_json(r.h()),
            "v_plus": matrix_to_json(r.v_plus()),
            "v_minus": matrix_to_json(r.v_minus()),
            "x_plus": matrix_to_json(r.x_plus()),
            "x_minus": matrix_to_json(r.x_minus()),
            "sigma": matrix_to_json(r.sigma()),
            "E": matrix_to_json(&g.e),
            "E_inv": matrix_to_json(&g.e_inv),
            "H": matrix_to_json(&g.h),
            "V": matrix_to_json(&g.v),
            "W": matrix_to_json(&g.w),
        }
    })
}
