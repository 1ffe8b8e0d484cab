//! Textual formats for the external interfaces.
//!
//! Field specs: "p" or "p^k" with an optional ":c0,c1,...,ck" little-endian
//! modulus suffix ("2^2:1,1,1" is GF(4) presented by x^2+x+1). Elements:
//! an integer for prime fields, a comma-separated coefficient list for
//! extensions, bracketed ("[c0,c1]") inside composite values. Polynomials:
//! little-endian coefficient lists ("1,1,0,1") or the human form
//! ("x^3+x+1"); output uses the human form. Matrices: "a,b;c,d" row-major.
//! Generator lists: matrices joined by '|'.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, FqElem};
use crate::pgl2::Mat2;
use crate::poly::Poly;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Splits on `sep` at bracket depth zero.
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn parse_field_spec(s: &str) -> Result<FieldSpec> {
    parse_field_spec_with_limit(s, crate::field::DEFAULT_Q_LIMIT)
}

pub fn parse_field_spec_with_limit(s: &str, q_limit: u64) -> Result<FieldSpec> {
    let (p, k, modulus) = parse_field_spec_parts(s)?;
    FieldSpec::build_with_limit(p, k, modulus.as_deref(), q_limit)
}

/// Syntax-level split of a field spec string into (p, k, modulus digits).
pub fn parse_field_spec_parts(s: &str) -> Result<(u64, usize, Option<Vec<u64>>)> {
    let s = s.trim();
    let (head, modulus) = match s.split_once(':') {
        Some((head, tail)) => {
            let digits = tail
                .split(',')
                .map(|c| c.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| parse_err(format!("bad modulus coefficient: {e}")))?;
            (head, Some(digits))
        }
        None => (s, None),
    };
    let (p, k) = match head.split_once('^') {
        Some((p, k)) => (
            p.trim()
                .parse::<u64>()
                .map_err(|e| parse_err(format!("bad prime: {e}")))?,
            k.trim()
                .parse::<usize>()
                .map_err(|e| parse_err(format!("bad extension degree: {e}")))?,
        ),
        None => (
            head.trim()
                .parse::<u64>()
                .map_err(|e| parse_err(format!("bad prime: {e}")))?,
            1,
        ),
    };
    Ok((p, k, modulus))
}

pub fn format_field_spec(field: &FieldSpec) -> String {
    if field.k() == 1 {
        format!("{}", field.p())
    } else {
        format!(
            "{}^{}:{}",
            field.p(),
            field.k(),
            field
                .modulus()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Parses one element: an optionally-signed integer for prime fields, a
/// (possibly bracketed) comma-separated coefficient list otherwise.
pub fn parse_element(field: &FieldSpec, s: &str) -> Result<FqElem> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(s);
    if field.k() == 1 {
        let v = inner
            .parse::<i64>()
            .map_err(|e| parse_err(format!("bad element {s:?}: {e}")))?;
        return Ok(field.int(v));
    }
    let coeffs = inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|e| parse_err(format!("bad coefficient in {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() > field.k() {
        return Err(parse_err(format!(
            "element {s:?} has {} coefficients but the field has degree {}",
            coeffs.len(),
            field.k()
        )));
    }
    let reduced: Vec<u64> = coeffs
        .iter()
        .map(|&c| c.rem_euclid(field.p() as i64) as u64)
        .collect();
    field.from_coeffs(&reduced)
}

/// Renders one element; `bracketed` wraps extension elements for embedding
/// in composite values.
pub fn format_element(field: &FieldSpec, e: &FqElem, bracketed: bool) -> String {
    if field.k() == 1 {
        return format!("{}", field.element_index(e));
    }
    let inner = e
        .coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    if bracketed {
        format!("[{inner}]")
    } else {
        inner
    }
}

/// Parses a polynomial: the human form when the string mentions 'x', a
/// coefficient list otherwise.
pub fn parse_poly(field: &FieldSpec, s: &str) -> Result<Poly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("empty polynomial"));
    }
    if s.contains('x') {
        parse_poly_human(field, s)
    } else {
        let coeffs = split_top_level(s, ',');
        // For prime fields each item is one coefficient; for extensions the
        // items must be bracketed element lists.
        let parsed = if field.k() == 1 {
            coeffs
                .iter()
                .map(|c| parse_element(field, c))
                .collect::<Result<Vec<_>>>()?
        } else {
            coeffs
                .iter()
                .map(|c| {
                    let c = c.trim();
                    if !c.starts_with('[') {
                        return Err(parse_err(format!(
                            "extension-field coefficient {c:?} must be bracketed"
                        )));
                    }
                    parse_element(field, c)
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Poly::new(field, parsed))
    }
}

fn parse_poly_human(field: &FieldSpec, s: &str) -> Result<Poly> {
    // Terms split on top-level '+' and '-'; each term is
    // [coefficient][*][x[^exponent]].
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms: Vec<(String, bool)> = Vec::new(); // (term, negated)
    let mut current = String::new();
    let mut negated = false;
    let mut depth = 0usize;
    for (i, ch) in compact.char_indices() {
        match ch {
            '[' => {
                depth += 1;
                current.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            '+' | '-' if depth == 0 && i > 0 && !current.is_empty() => {
                terms.push((std::mem::take(&mut current), negated));
                negated = ch == '-';
            }
            '-' if depth == 0 && current.is_empty() => {
                negated = !negated;
            }
            '+' if depth == 0 && current.is_empty() => {}
            _ => current.push(ch),
        }
    }
    if !current.is_empty() {
        terms.push((current, negated));
    }
    if terms.is_empty() {
        return Err(parse_err("empty polynomial"));
    }
    let mut acc = Poly::zero(field);
    for (term, negated) in terms {
        let (coeff_str, exp) = match term.find('x') {
            None => (term.as_str(), 0usize),
            Some(pos) => {
                let coeff = term[..pos].trim_end_matches('*');
                let rest = &term[pos + 1..];
                let exp = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| parse_err(format!("bad term {term:?}")))?
                        .parse::<usize>()
                        .map_err(|e| parse_err(format!("bad exponent in {term:?}: {e}")))?
                };
                (coeff, exp)
            }
        };
        let coeff = if coeff_str.is_empty() {
            field.one()
        } else {
            parse_element(field, coeff_str)?
        };
        let coeff = if negated { field.neg(&coeff) } else { coeff };
        acc = acc
            .add(&Poly::monomial(field, coeff, exp))
            .expect("same field");
    }
    Ok(acc)
}

/// Human form, highest degree first: "x^3+x+1", "2x^2+1", "0".
pub fn format_poly(p: &Poly) -> String {
    let field = p.field();
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if field.is_zero(c) {
            continue;
        }
        let coeff = if i > 0 && c == &field.one() {
            String::new()
        } else {
            format_element(field, c, field.k() > 1)
        };
        let var = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        parts.push(format!("{coeff}{var}"));
    }
    parts.join("+")
}

/// Little-endian coefficient list form.
pub fn format_poly_coeffs(p: &Poly) -> String {
    let field = p.field();
    p.coeffs()
        .iter()
        .map(|c| format_element(field, c, field.k() > 1))
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses "a,b;c,d" row-major.
pub fn parse_matrix(field: &FieldSpec, s: &str) -> Result<Mat2> {
    let rows = split_top_level(s.trim(), ';');
    if rows.len() != 2 {
        return Err(parse_err(format!(
            "matrix {s:?} must have two ';'-separated rows"
        )));
    }
    let mut entries = Vec::with_capacity(4);
    for row in rows {
        let cols = split_top_level(row, ',');
        // Extension-field entries must be bracketed, so a plain split is
        // only valid when it yields exactly two entries.
        if cols.len() != 2 {
            return Err(parse_err(format!(
                "matrix row {row:?} must have two ','-separated entries"
            )));
        }
        for col in cols {
            entries.push(parse_element(field, col)?);
        }
    }
    Ok(Mat2::new(
        field,
        [
            entries[0].clone(),
            entries[1].clone(),
            entries[2].clone(),
            entries[3].clone(),
        ],
    ))
}

pub fn format_matrix(m: &Mat2) -> String {
    let f = m.field();
    format!(
        "{},{};{},{}",
        format_element(f, m.a(), f.k() > 1),
        format_element(f, m.b(), f.k() > 1),
        format_element(f, m.c(), f.k() > 1),
        format_element(f, m.d(), f.k() > 1)
    )
}

/// Parses a '|'-separated generator list.
pub fn parse_generators(field: &FieldSpec, s: &str) -> Result<Vec<Mat2>> {
    s.trim()
        .split('|')
        .map(|m| parse_matrix(field, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_roundtrip() {
        let f2 = parse_field_spec("2").unwrap();
        assert_eq!((f2.p(), f2.k()), (2, 1));
        assert_eq!(format_field_spec(&f2), "2");

        let f4 = parse_field_spec("2^2:1,1,1").unwrap();
        assert_eq!(f4.q(), 4);
        assert_eq!(format_field_spec(&f4), "2^2:1,1,1");

        let f9 = parse_field_spec("3^2").unwrap();
        assert_eq!(f9.q(), 9);
        assert_eq!(format_field_spec(&f9), "3^2:1,0,1");

        assert!(parse_field_spec("banana").is_err());
        assert!(parse_field_spec("4").is_err());
        assert!(parse_field_spec("2^2:1,0,1").is_err()); // reducible
        assert!(parse_field_spec("").is_err());
    }

    #[test]
    fn element_roundtrip() {
        let f5 = parse_field_spec("5").unwrap();
        assert_eq!(parse_element(&f5, "7").unwrap(), f5.int(2));
        assert_eq!(parse_element(&f5, "-1").unwrap(), f5.int(4));
        let f4 = parse_field_spec("2^2").unwrap();
        let t = parse_element(&f4, "0,1").unwrap();
        assert_eq!(format_element(&f4, &t, false), "0,1");
        assert_eq!(format_element(&f4, &t, true), "[0,1]");
        assert_eq!(parse_element(&f4, "[0,1]").unwrap(), t);
        assert!(parse_element(&f4, "0,1,1").is_err());
    }

    #[test]
    fn poly_forms() {
        let f2 = parse_field_spec("2").unwrap();
        let p = parse_poly(&f2, "1,1,0,1").unwrap();
        assert_eq!(p, Poly::from_ints(&f2, &[1, 1, 0, 1]));
        assert_eq!(parse_poly(&f2, "x^3+x+1").unwrap(), p);
        assert_eq!(format_poly(&p), "x^3+x+1");
        assert_eq!(format_poly_coeffs(&p), "1,1,0,1");

        let f3 = parse_field_spec("3").unwrap();
        assert_eq!(
            parse_poly(&f3, "x^2-x-1").unwrap(),
            Poly::from_ints(&f3, &[-1, -1, 1])
        );
        assert_eq!(
            parse_poly(&f3, "2x^2 + x").unwrap(),
            Poly::from_ints(&f3, &[0, 1, 2])
        );
        assert_eq!(format_poly(&Poly::from_ints(&f3, &[0, 1, 2])), "2x^2+x");
        assert_eq!(format_poly(&Poly::zero(&f3)), "0");
        assert_eq!(format_poly(&Poly::from_ints(&f3, &[2])), "2");

        // parse(format(p)) == p on assorted shapes
        for coeffs in [&[1i64, 0, 0, 0, 1][..], &[2, 2, 2], &[0, 0, 1], &[1]] {
            let p = Poly::from_ints(&f3, coeffs);
            assert_eq!(parse_poly(&f3, &format_poly(&p)).unwrap(), p);
            assert_eq!(parse_poly(&f3, &format_poly_coeffs(&p)).unwrap(), p);
        }

        assert!(parse_poly(&f2, "").is_err());
        assert!(parse_poly(&f2, "x^").is_err());
        assert!(parse_poly(&f2, "y+1").is_err());
    }

    #[test]
    fn extension_poly_forms() {
        let f4 = parse_field_spec("2^2").unwrap();
        let t = parse_element(&f4, "0,1").unwrap();
        let p = Poly::new(&f4, vec![t.clone(), f4.one()]);
        let s = format_poly_coeffs(&p);
        assert_eq!(s, "[0,1],[1,0]");
        assert_eq!(parse_poly(&f4, &s).unwrap(), p);
        let human = format_poly(&p);
        assert_eq!(human, "x+[0,1]");
        assert_eq!(parse_poly(&f4, &human).unwrap(), p);
        assert!(parse_poly(&f4, "0,1").is_err()); // unbracketed extension coeffs
    }

    #[test]
    fn matrix_roundtrip() {
        let f3 = parse_field_spec("3").unwrap();
        let m = parse_matrix(&f3, "2,0;0,1").unwrap();
        assert_eq!(m, Mat2::from_ints(&f3, [[2, 0], [0, 1]]));
        assert_eq!(format_matrix(&m), "2,0;0,1");
        assert_eq!(parse_matrix(&f3, "-1,0;0,1").unwrap(), Mat2::from_ints(&f3, [[2, 0], [0, 1]]));

        let f4 = parse_field_spec("2^2").unwrap();
        let m4 = parse_matrix(&f4, "[0,1],[1,1];[1,0],[0,0]").unwrap();
        assert_eq!(format_matrix(&m4), "[0,1],[1,1];[1,0],[0,0]");
        assert_eq!(parse_matrix(&f4, &format_matrix(&m4)).unwrap(), m4);

        assert!(parse_matrix(&f3, "1,2,3;4,5,6").is_err());
        assert!(parse_matrix(&f3, "1,2").is_err());

        let gens = parse_generators(&f3, "2,0;0,1|0,1;2,0").unwrap();
        assert_eq!(gens.len(), 2);
    }
}
