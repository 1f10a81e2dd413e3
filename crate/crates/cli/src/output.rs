//! JSON value helpers: rationals as `p/q` strings, floats rounded to 12
//! significant digits.

use effdim_core::rational::format_ratio;
use effdim_core::Rational;
use serde_json::Value;

pub fn q(x: &Rational) -> Value {
    Value::String(format_ratio(x))
}

pub fn qs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

/// Decimal text of a big integer, kept as a string so no precision is lost.
pub fn big(n: &impl ToString) -> Value {
    Value::String(n.to_string())
}

/// `x` rounded to 12 significant digits.
pub fn approx(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    let text = format!("{x:.11e}");
    let rounded: f64 = text.parse().expect("formatted float parses");
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}
