use avgord_core::{BigRat, KmzPlan};
use serde_json::{json, Value};

use crate::Settings;

/// Exact text up to this length is printed in full; longer values are
/// abbreviated (the certificate always holds the full value).
const FULL_EXACT_LIMIT: usize = 120;
const GROUP_TEXT_LIMIT: usize = 160;

pub fn exact(q: &BigRat) -> String {
    let s = q.to_string();
    if s.len() <= FULL_EXACT_LIMIT {
        s
    } else {
        let num = q.numerator_abs().to_string().len();
        let den = q.denominator().to_string().len();
        format!("<{num}-digit numerator>/<{den}-digit denominator>")
    }
}

pub fn decimal(q: &BigRat) -> String {
    q.to_sig_decimal(15)
}

/// `7/4 (1.75000000000000)`
pub fn both(q: &BigRat) -> String {
    format!("{} ({})", exact(q), decimal(q))
}

pub fn float(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn group_text(s: &str) -> String {
    match s.char_indices().nth(GROUP_TEXT_LIMIT) {
        Some((i, _)) => {
            let factors = s.split(" x ").count();
            format!("{} ... ({factors} factors)", &s[..i])
        }
        None => s.to_string(),
    }
}

pub fn line(label: &str, value: impl AsRef<str>) {
    println!("{label:<15}{}", value.as_ref());
}

pub fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("JSON values always serialize")
    );
}

pub fn plan_value(plan: &KmzPlan) -> Value {
    json!({
        "n": plan.n,
        "p": plan.p,
        "s": plan.s,
        "bound": plan.bound.to_string(),
        "bound_decimal": decimal(&plan.bound),
        "narrative": plan.narrative,
    })
}

pub fn print_plan(settings: &Settings, plan: &KmzPlan) {
    if settings.json {
        print_json(&json!({ "plan": plan_value(plan) }));
        return;
    }
    line(
        "plan index",
        format!("n = {}, p = {}, s = {}", plan.n, plan.p, plan.s),
    );
    line("bound", both(&plan.bound));
    println!();
    println!("{}", plan.narrative);
}
