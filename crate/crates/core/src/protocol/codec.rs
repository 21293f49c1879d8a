//! The 37-symbol alphabet: `A`–`Z` → 0–25, `0`–`9` → 26–35, space → 36.

use std::ops::Deref;

use crate::error::{Error, Result};

/// Alphabet size, and the only modulus the text codec applies to.
pub const CODEC_MODULUS: u64 = 37;

/// Symbol used to fill the last block (the space character).
pub const PAD_SYMBOL: u64 = 36;

/// A sequence of residues: plaintext or ciphertext.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SymbolStream(Vec<u64>);

impl SymbolStream {
    pub fn new(symbols: Vec<u64>) -> Self {
        SymbolStream(symbols)
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }

    /// Fails with the first symbol `>= alphabet`.
    pub fn check_alphabet(&self, alphabet: u64) -> Result<()> {
        match self.0.iter().position(|&s| s >= alphabet) {
            Some(position) => Err(Error::SymbolOutOfRange {
                position,
                symbol: self.0[position],
                alphabet,
            }),
            None => Ok(()),
        }
    }
}

impl Deref for SymbolStream {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for SymbolStream {
    fn from(symbols: Vec<u64>) -> Self {
        SymbolStream(symbols)
    }
}

fn encode_char(c: char) -> Option<u64> {
    match c.to_ascii_uppercase() {
        c @ 'A'..='Z' => Some(c as u64 - 'A' as u64),
        c @ '0'..='9' => Some(26 + c as u64 - '0' as u64),
        ' ' => Some(PAD_SYMBOL),
        _ => None,
    }
}

fn decode_symbol(s: u64) -> Option<char> {
    match s {
        0..=25 => Some((b'A' + s as u8) as char),
        26..=35 => Some((b'0' + (s - 26) as u8) as char),
        36 => Some(' '),
        _ => None,
    }
}

/// Case-folds and maps each character; positions count characters, not bytes.
pub fn encode_text(text: &str) -> Result<SymbolStream> {
    text.chars()
        .enumerate()
        .map(|(position, ch)| encode_char(ch).ok_or(Error::UnsupportedCharacter { position, ch }))
        .collect::<Result<Vec<_>>>()
        .map(SymbolStream)
}

pub fn decode_text(stream: &SymbolStream) -> Result<String> {
    stream
        .iter()
        .enumerate()
        .map(|(position, &symbol)| {
            decode_symbol(symbol).ok_or(Error::SymbolOutOfRange {
                position,
                symbol,
                alphabet: CODEC_MODULUS,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_examples() {
        assert_eq!(
            *encode_text("NOBLE2022").unwrap(),
            [13, 14, 1, 11, 4, 28, 26, 28, 28]
        );
        assert_eq!(*encode_text("A").unwrap(), [0]);
        assert_eq!(*encode_text(" ").unwrap(), [36]);
        assert_eq!(encode_text("noble2022").unwrap(), encode_text("NOBLE2022").unwrap());
        assert!(encode_text("").unwrap().is_empty());
    }

    #[test]
    fn encode_rejects_outside_alphabet() {
        assert_eq!(
            encode_text("AB-C"),
            Err(Error::UnsupportedCharacter {
                position: 2,
                ch: '-'
            })
        );
        assert_eq!(
            encode_text("éA"),
            Err(Error::UnsupportedCharacter {
                position: 0,
                ch: 'é'
            })
        );
        assert!(encode_text("A\n").is_err());
    }

    #[test]
    fn decode_examples() {
        // digit d is 26 + d, so 32 and 31 are '6' and '5'
        assert_eq!(decode_text(&vec![4, 32, 31].into()).unwrap(), "E65");
        assert_eq!(decode_text(&vec![26, 28, 28].into()).unwrap(), "022");
        assert_eq!(decode_text(&SymbolStream::default()).unwrap(), "");
        assert_eq!(decode_text(&vec![14, 25, 18].into()).unwrap(), "OZS");
        assert_eq!(
            decode_text(&vec![1, 37].into()),
            Err(Error::SymbolOutOfRange {
                position: 1,
                symbol: 37,
                alphabet: 37
            })
        );
    }

    #[test]
    fn whole_alphabet_round_trips() {
        let all: Vec<u64> = (0..CODEC_MODULUS).collect();
        let text = decode_text(&all.clone().into()).unwrap();
        assert_eq!(text, "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 ");
        assert_eq!(*encode_text(&text).unwrap(), all[..]);
    }

    #[test]
    fn alphabet_check() {
        let s: SymbolStream = vec![0, 5, 36].into();
        assert!(s.check_alphabet(37).is_ok());
        assert_eq!(
            s.check_alphabet(11),
            Err(Error::SymbolOutOfRange {
                position: 2,
                symbol: 36,
                alphabet: 11
            })
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn decode_then_encode(symbols in prop::collection::vec(0u64..37, 0..64)) {
                let stream = SymbolStream::new(symbols);
                let text = decode_text(&stream).unwrap();
                prop_assert_eq!(encode_text(&text).unwrap(), stream);
            }

            #[test]
            fn encode_then_decode(text in "[A-Z0-9 ]{0,64}") {
                prop_assert_eq!(decode_text(&encode_text(&text).unwrap()).unwrap(), text);
            }
        }
    }
}
