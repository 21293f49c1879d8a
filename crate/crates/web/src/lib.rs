//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes plain numbers/strings and returns a JSON document, or
//! throws a string describing the validation failure. The `*_json` functions
//! hold the logic so it can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use lucas_hill::matrices::{glm, glm_closed_inverse, ResidueMatrix, DEFAULT_MAX_ORDER};
use lucas_hill::numtheory::Prime;
use lucas_hill::protocol::{
    decode_text, decrypt, derive_session, encode_text, encrypt, keygen, pad_blocks,
    recover_session, SymbolStream,
};
use lucas_hill::sequences::{range, Family};

/// Longest range the sequence explorer will render.
pub const MAX_TERMS: i64 = 2000;

type Rows = Vec<Vec<u64>>;

fn rows(m: &ResidueMatrix) -> Rows {
    m.rows().map(<[u64]>::to_vec).collect()
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

#[derive(Serialize)]
struct Term {
    n: i64,
    /// Decimal string; terms outgrow JavaScript numbers quickly.
    value: String,
}

pub fn sequence_json(family: &str, k: usize, from: i64, to: i64) -> Result<String, String> {
    let family = match family {
        "lucas" => Family::Lucas,
        "fibonacci" => Family::Fibonacci,
        other => return Err(format!("unknown family {other:?}")),
    };
    if from > to {
        return Err(format!("from ({from}) is after to ({to})"));
    }
    if to - from >= MAX_TERMS {
        return Err(format!("at most {MAX_TERMS} terms per request"));
    }
    let terms: Vec<Term> = (from..=to)
        .zip(range(family, k, from, to).map_err(err)?)
        .map(|(n, v)| Term { n, value: v.to_string() })
        .collect();
    to_json(&terms)
}

#[derive(Serialize)]
struct MatrixView {
    k: usize,
    n: i64,
    p: u64,
    matrix: Rows,
    det: u64,
    /// `None` when the matrix is singular modulo p.
    inverse: Option<Rows>,
    product_is_identity: Option<bool>,
}

pub fn matrix_json(k: usize, n: i64, p: u64) -> Result<String, String> {
    if k > DEFAULT_MAX_ORDER {
        return Err(format!("order {k} exceeds the cap of {DEFAULT_MAX_ORDER}"));
    }
    let prime = Prime::new(p).map_err(err)?;
    let m = glm(k, n, prime).map_err(err)?;
    let inverse = glm_closed_inverse(k, n, prime).ok();
    let product_is_identity = inverse
        .as_ref()
        .map(|inv| m.mul(inv).map(|prod| prod.is_identity()).unwrap_or(false));
    to_json(&MatrixView {
        k,
        n,
        p,
        det: m.det().value(),
        matrix: rows(&m),
        inverse: inverse.as_ref().map(rows),
        product_is_identity,
    })
}

#[derive(Serialize)]
struct Walkthrough {
    public_key: [u64; 3],
    s: u64,
    lambda: usize,
    key: Rows,
    shift: Vec<u64>,
    plaintext: Vec<u64>,
    ciphertext: Vec<u64>,
    ciphertext_text: String,
    decryption_key: Rows,
    recovered_lambda: usize,
    recovered_text: String,
}

/// Full round trip over the 37-symbol alphabet.
pub fn walkthrough_json(alpha: u64, d: u64, e: u64, message: &str) -> Result<String, String> {
    let p = Prime::new(37).map_err(err)?;
    let (pk, sk) = keygen(p, alpha, d).map_err(err)?;
    let session = derive_session(&pk, e).map_err(err)?;
    let plain = pad_blocks(&encode_text(message).map_err(err)?, session.lambda());
    let cipher = encrypt(&plain, &session).map_err(err)?;
    let bob = recover_session(session.s(), &sk).map_err(err)?;
    let recovered: SymbolStream = decrypt(&cipher, &bob).map_err(err)?;
    to_json(&Walkthrough {
        public_key: [p.get(), pk.e1().value(), pk.e2().value()],
        s: session.s(),
        lambda: session.lambda(),
        key: rows(session.key_matrix()),
        shift: session.shift().to_vec(),
        plaintext: plain.to_vec(),
        ciphertext_text: decode_text(&cipher).map_err(err)?,
        ciphertext: cipher.into_inner(),
        decryption_key: rows(&session.decryption_key().map_err(err)?),
        recovered_lambda: bob.lambda(),
        recovered_text: decode_text(&recovered).map_err(err)?,
    })
}

#[wasm_bindgen]
pub fn sequence(family: &str, k: usize, from: i32, to: i32) -> Result<String, JsValue> {
    sequence_json(family, k, from.into(), to.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn matrix(k: usize, n: i32, p: u32) -> Result<String, JsValue> {
    matrix_json(k, n.into(), p.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn walkthrough(alpha: u32, d: u32, e: u32, message: &str) -> Result<String, JsValue> {
    walkthrough_json(alpha.into(), d.into(), e.into(), message).map_err(|e| JsValue::from_str(&e))
}
