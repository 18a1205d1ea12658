use hrp_core::IntPoly;
use num_bigint::BigInt;

/// Input error with a 1-based character column.
#[derive(Debug, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

/// Comma-separated integers. A leading `+`, `-` or U+2212 is accepted on
/// each entry.
pub fn parse_ints(text: &str) -> Result<Vec<BigInt>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    if chars.iter().all(|c| c.is_whitespace()) {
        return Err(ParseError {
            column: 1,
            message: "empty coefficient list".into(),
        });
    }
    let mut out = Vec::new();
    let mut start = 0usize;
    for field in text.split(',') {
        let len = field.chars().count();
        let lead = field.chars().take_while(|c| c.is_whitespace()).count();
        let body: String = field
            .trim()
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        let column = start + lead + 1;
        let digits = body.strip_prefix(['+', '-']).unwrap_or(&body);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            let message = if body.is_empty() {
                "missing integer".to_string()
            } else {
                format!("malformed integer `{}`", field.trim())
            };
            return Err(ParseError { column, message });
        }
        let v: BigInt = body.trim_start_matches('+').parse().map_err(|_| ParseError {
            column,
            message: format!("malformed integer `{}`", field.trim()),
        })?;
        out.push(v);
        start += len + 1;
    }
    Ok(out)
}

/// Ascending coefficients of a nonzero polynomial.
pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    let p = IntPoly::new(parse_ints(text)?);
    if p.is_zero() {
        return Err(ParseError {
            column: 1,
            message: "the zero polynomial is not allowed".into(),
        });
    }
    Ok(p)
}
