//! Text form of an [`EdgeColouring`] and seeded random colourings.
//!
//! ```text
//! n=3
//! 000000000000
//! ```
//!
//! The second line holds one character per edge in edge index order, `0` for
//! Red and `1` for Blue. A trailing newline is optional.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypercube::{check_dimension, EdgeColouring};

pub fn serialize(c: &EdgeColouring) -> String {
    let mut out = String::with_capacity(c.num_edges() + 8);
    out.push_str(&format!("n={}\n", c.dimension()));
    out.extend(c.bits().map(|b| if b { '1' } else { '0' }));
    out.push('\n');
    out
}

pub fn parse(text: &str) -> Result<EdgeColouring> {
    let (header, rest) = text.split_once('\n').unwrap_or((text, ""));
    let digits = header
        .strip_prefix("n=")
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| Error::MalformedHeader(header.to_string()))?;
    let n: u32 = digits
        .parse()
        .map_err(|_| Error::DimensionOutOfRange(u32::MAX))?;
    check_dimension(n)?;

    let body = match rest.split_once('\n') {
        Some((body, "")) => body,
        Some(_) => return Err(Error::TrailingContent),
        None => rest,
    };
    let expected = EdgeColouring::edge_count(n);
    let mut bits = Vec::with_capacity(expected);
    for (position, ch) in body.chars().enumerate() {
        match ch {
            '0' => bits.push(false),
            '1' => bits.push(true),
            found => return Err(Error::InvalidCharacter { found, position }),
        }
    }
    if bits.len() != expected {
        return Err(Error::WrongLength { expected, found: bits.len() });
    }
    EdgeColouring::from_bits(n, bits)
}

/// Uniform random colouring of `Q_n`, fully determined by `(n, seed)`.
pub fn random(n: u32, seed: u64) -> Result<EdgeColouring> {
    check_dimension(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_with(n, &mut rng)
}

pub(crate) fn random_with(n: u32, rng: &mut impl RngCore) -> Result<EdgeColouring> {
    let words = (0..EdgeColouring::edge_count(n).div_ceil(64))
        .map(|_| rng.next_u64())
        .collect();
    EdgeColouring::from_words(n, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::Colour;

    #[test]
    fn serialize_all_red() {
        let c = EdgeColouring::monochrome(3, Colour::Red).unwrap();
        assert_eq!(serialize(&c), "n=3\n000000000000\n");
    }

    #[test]
    fn round_trip_random() {
        for seed in 0..100 {
            let n = 1 + (seed % 8) as u32;
            let c = random(n, seed).unwrap();
            assert_eq!(parse(&serialize(&c)).unwrap(), c);
        }
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random(3, 42).unwrap(), random(3, 42).unwrap());
        assert_ne!(random(6, 1).unwrap(), random(6, 2).unwrap());
    }

    #[test]
    fn trailing_newline_is_optional() {
        let c = parse("n=2\n0110").unwrap();
        assert_eq!(c, parse("n=2\n0110\n").unwrap());
        assert_eq!(c.bits().collect::<Vec<_>>(), vec![false, true, true, false]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("m=3\n000000000000"), Err(Error::MalformedHeader(_))));
        assert!(matches!(parse("n=\n"), Err(Error::MalformedHeader(_))));
        assert!(matches!(parse("n= 3\n000000000000"), Err(Error::MalformedHeader(_))));
        assert!(matches!(parse("n=0\n"), Err(Error::DimensionOutOfRange(0))));
        assert!(matches!(parse("n=25\n0"), Err(Error::DimensionOutOfRange(25))));
        assert!(matches!(
            parse("n=3\n00000000000"),
            Err(Error::WrongLength { expected: 12, found: 11 })
        ));
        assert!(matches!(
            parse("n=3\n0000000000002"),
            Err(Error::InvalidCharacter { found: '2', position: 12 })
        ));
        assert!(matches!(parse("n=2\n0000\n\n"), Err(Error::TrailingContent)));
        assert!(matches!(parse("n=2\n0000\r\n"), Err(Error::InvalidCharacter { found: '\r', .. })));
    }
}
