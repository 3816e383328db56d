//! Flag parsing for complex scalars and symbol specifications.

use num_complex::Complex64;
use wco::mobius::MobiusMap;

/// Parse a complex literal: `1.5`, `-2i`, `i`, `0.3+0.4i`, `1e-3-2e-4i`.
/// A trailing `j` is accepted in place of `i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".to_string());
    }
    let normalized = s.replace('j', "i");
    if !normalized.contains('i') {
        return normalized
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|e| format!("bad real literal {s:?}: {e}"));
    }
    // split off the imaginary tail at the last sign not following an exponent
    let bytes = normalized.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k] as char;
        if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
            split = Some(k);
            break;
        }
    }
    let (re_part, im_part) = match split {
        Some(k) => (&normalized[..k], &normalized[k..]),
        None => ("0", normalized.as_str()),
    };
    if !im_part.ends_with('i') {
        return Err(format!(
            "bad complex literal {s:?}: imaginary part must end in i"
        ));
    }
    let im_body = &im_part[..im_part.len() - 1];
    let im = match im_body {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other
            .parse::<f64>()
            .map_err(|e| format!("bad imaginary part in {s:?}: {e}"))?,
    };
    let re = re_part
        .parse::<f64>()
        .map_err(|e| format!("bad real part in {s:?}: {e}"))?;
    Ok(Complex64::new(re, im))
}

/// Parse a symbol specification for `synth unitary --phi`:
/// `alpha:P`, `rotation:Z`, `parabolic:T`, `hyperbolic:R:T`, or inline
/// coefficient JSON `[[a_re,a_im],...]`.
pub fn parse_phi_spec(s: &str) -> Result<MobiusMap, String> {
    if s.trim_start().starts_with('[') {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| format!("bad coefficient JSON: {e}"))?;
        return wco::serial::mobius_from_value(&value)
            .ok_or_else(|| "bad coefficient JSON: expected four [re,im] pairs".to_string());
    }
    let mut parts = s.splitn(2, ':');
    let kind = parts.next().unwrap_or_default();
    let rest = parts.next().unwrap_or_default();
    match kind {
        "alpha" => {
            let p = parse_complex(rest)?;
            MobiusMap::alpha(p).map_err(|e| e.to_string())
        }
        "rotation" => {
            let z = parse_complex(rest)?;
            if (z.norm() - 1.0).abs() > 1e-12 {
                return Err("rotation parameter must be unimodular".to_string());
            }
            Ok(MobiusMap::dilation(z))
        }
        "parabolic" => {
            let t = parse_complex(rest)?;
            MobiusMap::canonical_parabolic(t).map_err(|e| e.to_string())
        }
        "hyperbolic" => {
            let mut sub = rest.splitn(2, ':');
            let r: f64 = sub
                .next()
                .unwrap_or_default()
                .parse()
                .map_err(|e| format!("bad r parameter: {e}"))?;
            let t = parse_complex(sub.next().unwrap_or("0"))?;
            MobiusMap::canonical_hyperbolic(r, t).map_err(|e| e.to_string())
        }
        other => Err(format!(
            "unknown symbol form {other:?}: use alpha:P, rotation:Z, parabolic:T, hyperbolic:R:T, or coefficient JSON"
        )),
    }
}
