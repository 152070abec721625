//! Output rendering: canonical text, JSON, and LaTeX.
//!
//! Text forms are the `Display` impls of the core types, which the parser
//! accepts back. JSON terms follow one fixed schema per basis:
//!
//! ```text
//! {"basis": "milnor"|"dual",  "terms": [{"coeff": [[a,b],...], "E": [...], "R": [...]}]}
//! {"basis": "cartan",         "terms": [{"coeff": [[a,b],...], "I": [...]}]}
//! {"basis": "tensor",         "terms": [{"coeff": ..., "left": {"E","R"}, "right": {"E","R"}}]}
//! ```
//!
//! Arrays are emitted in canonical element order and `serde_json` sorts
//! object keys, so the bytes are stable across runs.

use motivic_steenrod::cartan::{AdmissibleSequence, CartanElement};
use motivic_steenrod::coalgebra::TensorElement;
use motivic_steenrod::dual::{DualElement, DualMonomial};
use motivic_steenrod::scalar::HScalar;
use motivic_steenrod::steenrod::SteenrodElement;
use serde_json::{json, Value as Json};

/// Output format selector shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

fn coeff_json(h: &HScalar) -> Json {
    Json::Array(
        h.terms()
            .map(|(a, b)| json!([a, b]))
            .collect(),
    )
}

fn dual_monomial_json(m: &DualMonomial) -> Json {
    json!({
        "E": m.tau_indices().collect::<Vec<_>>(),
        "R": m.xi_exponents(),
    })
}

pub fn milnor_json(x: &SteenrodElement) -> Json {
    let terms: Vec<Json> = x
        .terms()
        .map(|(m, h)| {
            json!({
                "coeff": coeff_json(h),
                "E": m.dual().tau_indices().collect::<Vec<_>>(),
                "R": m.dual().xi_exponents(),
            })
        })
        .collect();
    json!({"basis": "milnor", "terms": terms})
}

pub fn dual_json(x: &DualElement) -> Json {
    let terms: Vec<Json> = x
        .terms()
        .map(|(m, h)| {
            json!({
                "coeff": coeff_json(h),
                "E": m.tau_indices().collect::<Vec<_>>(),
                "R": m.xi_exponents(),
            })
        })
        .collect();
    json!({"basis": "dual", "terms": terms})
}

pub fn cartan_json(x: &CartanElement) -> Json {
    let terms: Vec<Json> = x
        .terms()
        .map(|(seq, h)| json!({"coeff": coeff_json(h), "I": seq.entries()}))
        .collect();
    json!({"basis": "cartan", "terms": terms})
}

pub fn tensor_json(x: &TensorElement) -> Json {
    let terms: Vec<Json> = x
        .terms()
        .map(|((l, r), h)| {
            json!({
                "coeff": coeff_json(h),
                "left": dual_monomial_json(l),
                "right": dual_monomial_json(r),
            })
        })
        .collect();
    json!({"basis": "tensor", "terms": terms})
}

pub fn scalar_json(h: &HScalar) -> Json {
    json!({"basis": "scalar", "terms": [{"coeff": coeff_json(h)}]})
}

/// `tau^a rho^b` rendered with `\tau`, `\rho`; empty for the unit.
fn coeff_latex_monomial(a: u32, b: u32) -> String {
    let mut s = String::new();
    match a {
        0 => {}
        1 => s.push_str("\\tau "),
        _ => s.push_str(&format!("\\tau^{{{a}}} ")),
    }
    match b {
        0 => {}
        1 => s.push_str("\\rho "),
        _ => s.push_str(&format!("\\rho^{{{b}}} ")),
    }
    s
}

pub fn scalar_latex(h: &HScalar) -> String {
    if h.is_zero() {
        return "0".to_string();
    }
    h.terms()
        .map(|(a, b)| {
            let m = coeff_latex_monomial(a, b);
            if m.is_empty() {
                "1".to_string()
            } else {
                m.trim_end().to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn coeff_latex_prefix(h: &HScalar) -> String {
    if h.is_one() {
        String::new()
    } else if h.term_count() == 1 {
        let (a, b) = h.terms().next().unwrap();
        coeff_latex_monomial(a, b)
    } else {
        format!("({}) ", scalar_latex(h))
    }
}

fn dual_monomial_latex(m: &DualMonomial) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let mut s = String::new();
    for i in m.tau_indices() {
        s.push_str(&format!("\\tau_{{{i}}}"));
    }
    for (k, &e) in m.xi_exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => s.push_str(&format!("\\xi_{{{}}}", k + 1)),
            _ => s.push_str(&format!("\\xi_{{{}}}^{{{e}}}", k + 1)),
        }
    }
    s
}

pub fn dual_latex(x: &DualElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.terms()
        .map(|(m, h)| format!("{}{}", coeff_latex_prefix(h), dual_monomial_latex(m)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Milnor basis element in `Q(E) P^R` notation: products of
/// `Q_i` and one `\mathcal{P}^{(R)}`.
fn milnor_monomial_latex(m: &DualMonomial) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let mut s = String::new();
    for i in m.tau_indices() {
        s.push_str(&format!("Q_{{{i}}}"));
    }
    if !m.xi_exponents().is_empty() {
        let rs: Vec<String> = m.xi_exponents().iter().map(|e| e.to_string()).collect();
        s.push_str(&format!("\\mathcal{{P}}^{{({})}}", rs.join(",")));
    }
    s
}

pub fn milnor_latex(x: &SteenrodElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.terms()
        .map(|(m, h)| format!("{}{}", coeff_latex_prefix(h), milnor_monomial_latex(m.dual())))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn admissible_latex(seq: &AdmissibleSequence) -> String {
    if seq.is_one() {
        return "1".to_string();
    }
    seq.entries()
        .iter()
        .map(|i| format!("\\operatorname{{Sq}}^{{{i}}}"))
        .collect::<Vec<_>>()
        .join("")
}

pub fn cartan_latex(x: &CartanElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.terms()
        .map(|(seq, h)| format!("{}{}", coeff_latex_prefix(h), admissible_latex(seq)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn tensor_latex(x: &TensorElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.terms()
        .map(|((l, r), h)| {
            format!(
                "{}{} \\otimes {}",
                coeff_latex_prefix(h),
                dual_monomial_latex(l),
                dual_monomial_latex(r)
            )
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use motivic_steenrod::steenrod::{milnor_basis, q};

    #[test]
    fn milnor_json_shape() {
        let x = q(1)
            .unwrap()
            .add(&milnor_basis(&[0], &[1]).unwrap().scale(&HScalar::rho()));
        let j = milnor_json(&x);
        assert_eq!(j["basis"], "milnor");
        assert_eq!(j["terms"].as_array().unwrap().len(), 2);
        assert_eq!(j["terms"][0]["E"], json!([0]));
        assert_eq!(j["terms"][0]["R"], json!([1]));
        assert_eq!(j["terms"][0]["coeff"], json!([[0, 1]]));
    }

    #[test]
    fn latex_mirrors_the_notation() {
        let x = q(2).unwrap().scale(&HScalar::rho());
        assert_eq!(milnor_latex(&x), "\\rho Q_{2}");
        let s = motivic_steenrod::steenrod::sq(4).unwrap();
        assert_eq!(milnor_latex(&s), "\\mathcal{P}^{(2)}");
    }
}
