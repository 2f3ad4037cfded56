//! JSON fragments for reports. Integers that may be large are strings;
//! object keys are sorted, so identical jobs give identical bytes.

use num_rational::BigRational;
use padic_lift::graph::FunctionalGraph;
use padic_lift::interpreter::{DominanceVerdict, InterpretationType};
use padic_lift::{Ball, NormExponent, Valuation};
use serde_json::{json, Value};

use crate::input::GraphSpec;

pub fn valuation(v: Valuation) -> Value {
    Value::String(v.to_string())
}

pub fn norm(e: NormExponent) -> Value {
    Value::String(e.to_string())
}

pub fn rational(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

pub fn ball(b: &Ball) -> Value {
    json!({
        "center": b.center().to_string(),
        "radius_exp": b.radius_exp(),
        "p": b.p(),
    })
}

pub fn graph(g: &FunctionalGraph) -> Value {
    serde_json::to_value(GraphSpec::of_graph(g)).expect("graph spec serializes")
}

pub fn interpretation(t: &InterpretationType) -> Value {
    json!({
        "kind": format!("{:?}", t.kind).to_lowercase(),
        "sigma_exp": t.sigma_exp,
    })
}

pub fn dominance(d: &DominanceVerdict) -> Value {
    match d {
        DominanceVerdict::Pass {
            linear_valuation,
            slack,
        } => json!({"verdict": "pass", "linear_valuation": linear_valuation, "slack": norm(*slack)}),
        DominanceVerdict::Fail {
            index,
            linear_valuation,
            bound,
        } => json!({
            "verdict": "fail",
            "index": index,
            "linear_valuation": linear_valuation,
            "bound": norm(*bound),
        }),
        DominanceVerdict::DegenerateLinearTerm => json!({"verdict": "degenerate_linear_term"}),
        DominanceVerdict::Inconclusive { index } => json!({"verdict": "inconclusive", "index": index}),
    }
}

/// Lowercase, underscore-separated form of a `Debug` variant name.
pub fn snake(name: impl std::fmt::Debug) -> String {
    let s = format!("{name:?}");
    let mut out = String::new();
    for (i, c) in s.chars().enumerate() {
        if c.is_uppercase() {
            if i > 0 {
                out.push('_');
            }
            out.extend(c.to_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}
