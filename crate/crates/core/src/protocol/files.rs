//! Text formats for keys and envelopes.
//!
//! Key files are LF-terminated `name=value` lines with decimal values:
//! `p`, `e1`, `e2` for a public key and `p`, `d` for a secret key. An
//! envelope is exactly two lines, `s=<decimal>` then
//! `c=<comma-separated symbols>`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{PublicKey, SecretKey, SymbolStream};
use crate::error::{Error, Result};
use crate::numtheory::Prime;

fn parse_u64(name: &str, value: &str) -> Result<u64> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{name}: expected a decimal integer, got {value:?}")))
}

/// Reads `name=value` lines and requires exactly the `expected` names.
fn parse_fields(text: &str, expected: &[&str]) -> Result<BTreeMap<String, u64>> {
    let mut fields = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (name, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected name=value", lineno + 1)))?;
        let name = name.trim();
        if !expected.contains(&name) {
            return Err(Error::Parse(format!("line {}: unknown field {name:?}", lineno + 1)));
        }
        if fields.insert(name.to_string(), parse_u64(name, value)?).is_some() {
            return Err(Error::Parse(format!("duplicate field {name:?}")));
        }
    }
    for name in expected {
        if !fields.contains_key(*name) {
            return Err(Error::Parse(format!("missing field {name:?}")));
        }
    }
    Ok(fields)
}

impl PublicKey {
    pub fn to_key_file(&self) -> String {
        format!("p={}\ne1={}\ne2={}\n", self.p, self.e1, self.e2)
    }

    pub fn from_key_file(text: &str) -> Result<Self> {
        let f = parse_fields(text, &["p", "e1", "e2"])?;
        let p = Prime::new(f["p"])?;
        if f["e2"] >= p.get() {
            return Err(Error::Parse(format!("e2 = {} is not reduced mod {p}", f["e2"])));
        }
        PublicKey::new(p, f["e1"], f["e2"])
    }
}

impl SecretKey {
    pub fn to_key_file(&self) -> String {
        format!("p={}\nd={}\n", self.p, self.d)
    }

    pub fn from_key_file(text: &str) -> Result<Self> {
        let f = parse_fields(text, &["p", "d"])?;
        SecretKey::new(Prime::new(f["p"])?, f["d"])
    }
}

/// What travels from sender to receiver: the signature `s` and the ciphertext.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Envelope {
    pub s: u64,
    pub ciphertext: SymbolStream,
}

impl fmt::Display for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={}\nc=", self.s)?;
        for (i, sym) in self.ciphertext.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{sym}")?;
        }
        writeln!(f)
    }
}

impl FromStr for Envelope {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
        let s_line = lines.next().ok_or_else(|| Error::Parse("empty envelope".into()))?;
        let c_line = lines
            .next()
            .ok_or_else(|| Error::Parse("envelope is missing the c= line".into()))?;
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing content after the c= line".into()));
        }
        let s = s_line
            .strip_prefix("s=")
            .ok_or_else(|| Error::Parse("line 1 must start with s=".into()))?;
        let c = c_line
            .strip_prefix("c=")
            .ok_or_else(|| Error::Parse("line 2 must start with c=".into()))?;
        let s = parse_u64("s", s)?;
        let symbols = if c.trim().is_empty() {
            Vec::new()
        } else {
            c.split(',').map(|v| parse_u64("c", v)).collect::<Result<_>>()?
        };
        Ok(Envelope {
            s,
            ciphertext: SymbolStream::new(symbols),
        })
    }
}
