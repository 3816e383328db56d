//! Wire formats: complex scalars as `[re, im]` JSON pairs, CSV entries as
//! `re+imj` literals, floats printed with 17 significant digits.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::mobius::MobiusMap;
use crate::synthesis::LftWco;

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Python-style complex literal `re+imj` for CSV cells.
pub fn fmt_complex_csv(z: Complex64) -> String {
    format!("{:.16e}{:+.16e}j", z.re, z.im)
}

pub fn complex_to_value(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_from_value(v: &Value) -> Option<Complex64> {
    let arr = v.as_array()?;
    if arr.len() != 2 {
        return None;
    }
    Some(Complex64::new(arr[0].as_f64()?, arr[1].as_f64()?))
}

/// `[[a.re,a.im],[b.re,b.im],[c.re,c.im],[d.re,d.im]]`.
pub fn mobius_to_value(m: &MobiusMap) -> Value {
    let (a, b, c, d) = m.coeffs();
    json!([
        complex_to_value(a),
        complex_to_value(b),
        complex_to_value(c),
        complex_to_value(d)
    ])
}

pub fn mobius_from_value(v: &Value) -> Option<MobiusMap> {
    let arr = v.as_array()?;
    if arr.len() != 4 {
        return None;
    }
    let a = complex_from_value(&arr[0])?;
    let b = complex_from_value(&arr[1])?;
    let c = complex_from_value(&arr[2])?;
    let d = complex_from_value(&arr[3])?;
    MobiusMap::new(a, b, c, d).ok()
}

/// Taylor coefficients as an array of `[re, im]` pairs.
pub fn taylor_to_value(coeffs: &[Complex64]) -> Value {
    Value::Array(coeffs.iter().map(|c| complex_to_value(*c)).collect())
}

pub fn taylor_from_value(v: &Value) -> Option<Vec<Complex64>> {
    v.as_array()?
        .iter()
        .map(complex_from_value)
        .collect::<Option<Vec<_>>>()
}

/// `{weight: {num: [..], den: [..]}, symbol: [[..]]}`.
pub fn lft_wco_to_value(w: &LftWco) -> Value {
    let num = w.weight_num();
    let den = w.weight_den();
    json!({
        "weight": {
            "num": [complex_to_value(num[0]), complex_to_value(num[1])],
            "den": [complex_to_value(den[0]), complex_to_value(den[1])],
        },
        "symbol": mobius_to_value(w.symbol()),
    })
}

/// Eigenvalues as CSV `re,im` rows in the stable sorted order.
pub fn points_to_csv(points: &[Complex64]) -> String {
    let mut out = String::new();
    for p in points {
        out.push_str(&fmt_f64(p.re));
        out.push(',');
        out.push_str(&fmt_f64(p.im));
        out.push('\n');
    }
    out
}
