//! Text syntax for algebra elements.
//!
//! Generators are `L<k>` (e.g. `L-2`, `L3`) and `C`. A monomial is a
//! whitespace-separated list of generators, or `1` for the identity. An
//! element is a sum of terms `coeff * monomial` joined by ` + ` (the plus
//! must be surrounded by whitespace, since scalars may contain `+`). The
//! coefficient may be omitted, and a bare scalar is a multiple of `1`.

use super::{Generator, LieElement, NormalOrderer, UeaElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn malformed(text: &str, reason: impl Into<String>) -> Error {
    Error::MalformedElement { text: text.to_string(), reason: reason.into() }
}

fn parse_generator(token: &str) -> Option<Generator> {
    if token == "C" {
        return Some(Generator::Central);
    }
    let index = token.strip_prefix('L')?;
    index.parse::<i64>().ok().map(Generator::L)
}

fn split_terms(text: &str) -> Vec<String> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut terms = vec![String::new()];
    for tok in tokens {
        if tok == "+" {
            terms.push(String::new());
            continue;
        }
        let current = terms.last_mut().expect("at least one term");
        if !current.is_empty() {
            current.push(' ');
        }
        current.push_str(tok);
    }
    terms
}

fn parse_term(term: &str, whole: &str) -> Result<(Scalar, Vec<Generator>)> {
    if term.is_empty() {
        return Err(malformed(whole, "empty term"));
    }
    let (coeff, mono) = match term.split_once('*') {
        Some((c, m)) => {
            let c = c.trim();
            let coeff = c.parse::<Scalar>().map_err(|_| malformed(whole, format!("bad coefficient {c:?}")))?;
            (coeff, m.trim())
        }
        None => match term.parse::<Scalar>() {
            Ok(coeff) => (coeff, "1"),
            Err(_) => (Scalar::one(), term),
        },
    };
    if mono.contains('*') {
        return Err(malformed(whole, "more than one '*' in a term"));
    }
    if mono == "1" {
        return Ok((coeff, Vec::new()));
    }
    let mut word = Vec::new();
    for tok in mono.split_whitespace() {
        let g = parse_generator(tok).ok_or_else(|| malformed(whole, format!("unknown generator {tok:?}")))?;
        word.push(g);
    }
    if word.is_empty() {
        return Err(malformed(whole, "missing monomial"));
    }
    Ok((coeff, word))
}

/// The raw `(coefficient, word)` terms of `text`, without any reordering.
/// Words longer than `word_cap` are rejected.
pub fn parse_words(text: &str, word_cap: usize) -> Result<Vec<(Scalar, Vec<Generator>)>> {
    let terms = split_terms(text);
    let mut out = Vec::with_capacity(terms.len());
    for term in &terms {
        let (c, word) = parse_term(term, text)?;
        if word.len() > word_cap {
            return Err(Error::WordTooLong { len: word.len(), cap: word_cap });
        }
        out.push((c, word));
    }
    Ok(out)
}

/// Parses and normal-orders an element of U(Vir).
pub fn parse_uea_element(text: &str, word_cap: usize, engine: &mut NormalOrderer) -> Result<UeaElement> {
    let mut out = UeaElement::zero();
    for (c, word) in parse_words(text, word_cap)? {
        let part = engine.word(&word)?;
        out.add_scaled(&part, &c);
    }
    Ok(out)
}

/// Parses an element of Vir itself: every term must be a single generator.
pub fn parse_lie_element(text: &str) -> Result<LieElement> {
    let mut out = LieElement::zero();
    for (c, word) in parse_words(text, 1)
        .map_err(|_| malformed(text, "expected a combination of single generators"))?
    {
        match word.as_slice() {
            [g] => out.add_term(*g, c),
            _ => return Err(malformed(text, "expected a combination of single generators")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PbwMonomial;

    #[test]
    fn parses_generators_and_terms() {
        let terms = parse_words("2*L-2 L1 + -1/2+1i*C + L0 + 3", 8).unwrap();
        assert_eq!(terms.len(), 4);
        assert_eq!(terms[0], (Scalar::from_int(2), vec![Generator::L(-2), Generator::L(1)]));
        assert_eq!(terms[1].0, "-1/2+1i".parse().unwrap());
        assert_eq!(terms[2], (Scalar::one(), vec![Generator::L(0)]));
        assert_eq!(terms[3], (Scalar::from_int(3), vec![]));
    }

    #[test]
    fn lie_element_round_trip_with_display() {
        let e = parse_lie_element("-4*L0 + 1/2*C").unwrap();
        assert_eq!(e.to_string(), "-4*L0 + 1/2*C");
        assert!(parse_lie_element("L1 L2").is_err());
    }

    #[test]
    fn uea_display_parses_back() {
        let mut engine = NormalOrderer::new();
        let x = parse_uea_element("L2 L1 L-1 + 1/3i*L-2 C", 8, &mut engine).unwrap();
        let again = parse_uea_element(&x.to_string(), 8, &mut engine).unwrap();
        assert_eq!(x, again);
        let one = parse_uea_element("1", 8, &mut engine).unwrap();
        assert_eq!(one, UeaElement::monomial(PbwMonomial::identity()));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "L", "Lx", "2*", "*L1", "L1 + ", "2*L1*L2", "X1"] {
            assert!(parse_words(bad, 8).is_err(), "{bad:?}");
        }
        assert!(matches!(parse_words("L1 L1 L1", 2), Err(Error::WordTooLong { len: 3, cap: 2 })));
    }
}
