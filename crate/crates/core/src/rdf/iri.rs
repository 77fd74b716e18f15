//! Strict IRI validation and local-name percent encoding.
//!
//! Validation never repairs its input. Strings that fail here must go
//! through the mapper's identifier policy instead of being adopted as-is.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid IRI {value:?}: {reason}")]
pub struct InvalidIri {
    pub value: String,
    pub reason: String,
}

impl InvalidIri {
    fn new(value: &str, reason: impl Into<String>) -> Self {
        InvalidIri {
            value: value.to_string(),
            reason: reason.into(),
        }
    }
}

fn is_scheme_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_scheme_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')
}

/// ASCII characters allowed verbatim after the scheme: unreserved,
/// gen-delims and sub-delims. `%` is handled separately.
fn is_ascii_iri_char(c: char) -> bool {
    c.is_ascii_alphanumeric()
        || matches!(
            c,
            '-' | '.' | '_' | '~' | ':' | '/' | '?' | '#' | '[' | ']' | '@' | '!' | '$' | '&' | '\''
                | '(' | ')' | '*' | '+' | ',' | ';' | '='
        )
}

fn is_ucs_char(c: char) -> bool {
    let cp = c as u32;
    if cp < 0xA0 {
        return false;
    }
    // Noncharacters and the specials block are never valid.
    !((0xFDD0..=0xFDEF).contains(&cp) || (cp & 0xFFFE) == 0xFFFE)
}

/// Checks that `value` is an absolute IRI. Returns the reason on failure.
pub fn validate_iri(value: &str) -> Result<(), InvalidIri> {
    let colon = match value.find(':') {
        Some(i) => i,
        None => return Err(InvalidIri::new(value, "missing scheme")),
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if is_scheme_start(c) => {}
        _ => return Err(InvalidIri::new(value, "scheme must start with a letter")),
    }
    if !chars.all(is_scheme_char) {
        return Err(InvalidIri::new(value, "illegal character in scheme"));
    }

    let rest = &value[colon + 1..];
    let mut hashes = 0;
    let mut iter = rest.char_indices();
    while let Some((i, c)) = iter.next() {
        match c {
            '%' => {
                let hex = rest.get(i + 1..i + 3);
                match hex {
                    Some(h) if h.chars().all(|d| d.is_ascii_hexdigit()) => {
                        iter.next();
                        iter.next();
                    }
                    _ => return Err(InvalidIri::new(value, "malformed percent escape")),
                }
            }
            '#' => {
                hashes += 1;
                if hashes > 1 {
                    return Err(InvalidIri::new(value, "more than one '#'"));
                }
            }
            ' ' => return Err(InvalidIri::new(value, "raw space")),
            c if c.is_ascii() => {
                if !is_ascii_iri_char(c) {
                    return Err(InvalidIri::new(
                        value,
                        format!("forbidden character {:?}", c),
                    ));
                }
            }
            c => {
                if !is_ucs_char(c) {
                    return Err(InvalidIri::new(
                        value,
                        format!("forbidden character U+{:04X}", c as u32),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Percent-encodes every character outside `[A-Za-z0-9._~-]` using its
/// UTF-8 bytes, e.g. `#` becomes `%23`.
pub fn percent_encode_local(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '~' | '-') {
            out.push(c);
        } else {
            let mut buf = [0u8; 4];
            for b in c.encode_utf8(&mut buf).bytes() {
                out.push_str(&format!("%{:02X}", b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_example_iri() {
        assert!(validate_iri("http://iais.fraunhofer.de/en/aas/examples/raspberry_pi_3b_plus").is_ok());
        assert!(validate_iri("urn:x:y").is_ok());
        assert!(validate_iri("http://ex.org/a#frag").is_ok());
        assert!(validate_iri("http://ex.org/%C3%A4").is_ok());
        assert!(validate_iri("http://ex.org/ä").is_ok());
    }

    #[test]
    fn rejects_bad_iris() {
        assert_eq!(validate_iri("26-04-07-02").unwrap_err().reason, "missing scheme");
        assert_eq!(validate_iri("http://a.b/c d").unwrap_err().reason, "raw space");
        assert!(validate_iri("0173-1#02-AAO677#002").is_err());
        assert!(validate_iri("http://a/b#c#d").is_err());
        assert!(validate_iri("http://a/<b>").is_err());
        assert!(validate_iri("http://a/%zz").is_err());
        assert!(validate_iri("http://a/%2").is_err());
        assert!(validate_iri(":nothing").is_err());
        assert!(validate_iri("1http://x").is_err());
        assert!(validate_iri("").is_err());
        assert!(validate_iri("http://a/\u{7}").is_err());
    }

    #[test]
    fn percent_encoding_examples() {
        assert_eq!(percent_encode_local("#"), "%23");
        assert_eq!(percent_encode_local("abc-123"), "abc-123");
        assert_eq!(percent_encode_local("a b#c"), "a%20b%23c");
        assert_eq!(percent_encode_local("ä"), "%C3%A4");
        assert_eq!(
            percent_encode_local("0173-1#02-AAO677#002"),
            "0173-1%2302-AAO677%23002"
        );
    }
}
