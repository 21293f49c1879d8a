//! Public-key Affine-Hill scheme over Lucas matrices.
//!
//! The receiver publishes `(p, E1, E2)` with `E1` a primitive root and
//! `E2 = E1^D`. A sender picks `e`, sends `s = E1^e` in the clear, and both
//! sides arrive at the same order `lambda = E2^e = s^D`. The session key is
//! `K = L_lambda^(s) mod p`, the shift is `B = [l_{lambda,lambda}, ...,
//! l_{lambda,2 lambda - 1}] mod p`, and each block encrypts as
//! `c = p K + B`. Decryption uses `K^{-1} = L_lambda^(-s) H^{-1}`.
//!
//! This is an educational construction: the cipher layer is affine and falls
//! to known-plaintext attacks.

mod codec;
mod files;

pub use codec::{decode_text, encode_text, SymbolStream, CODEC_MODULUS, PAD_SYMBOL};
pub use files::Envelope;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrices::{glm, glm_closed_inverse, ResidueMatrix, DEFAULT_MAX_ORDER};
use crate::numtheory::{euler_phi, is_primitive_root, mod_pow, Prime, Residue};
use crate::sequences::{lucas_term_mod, SequenceSpec};

/// `pk(p, E1, E2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PublicKey {
    p: Prime,
    e1: Residue,
    e2: Residue,
}

impl PublicKey {
    /// Validates `e1` as a primitive root. `e2` is taken as given.
    pub fn new(p: Prime, e1: u64, e2: u64) -> Result<Self> {
        let e1 = Residue::new(e1, p);
        if e1.is_zero() || !is_primitive_root(e1)? {
            return Err(Error::NotPrimitiveRoot {
                alpha: e1.value(),
                modulus: p.get(),
            });
        }
        Ok(PublicKey {
            p,
            e1,
            e2: Residue::new(e2, p),
        })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn e1(&self) -> Residue {
        self.e1
    }

    pub fn e2(&self) -> Residue {
        self.e2
    }
}

/// `sk(D)`, kept alongside its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SecretKey {
    p: Prime,
    d: u64,
}

impl SecretKey {
    pub fn new(p: Prime, d: u64) -> Result<Self> {
        check_exponent(d, p)?;
        Ok(SecretKey { p, d })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn d(&self) -> u64 {
        self.d
    }
}

fn check_exponent(value: u64, p: Prime) -> Result<()> {
    let bound = euler_phi(p);
    if value <= 1 || value >= bound {
        return Err(Error::ExponentOutOfRange { value, bound });
    }
    Ok(())
}

/// Builds `pk(p, alpha, alpha^d)` and `sk(d)`.
pub fn keygen(p: Prime, alpha: u64, d: u64) -> Result<(PublicKey, SecretKey)> {
    let sk = SecretKey::new(p, d)?;
    let alpha = Residue::new(alpha, p);
    let pk = PublicKey::new(p, alpha.value(), mod_pow(alpha, d as u128).value())?;
    Ok((pk, sk))
}

/// Draws an exponent uniformly from `(1, φ(p))`.
pub fn choose_exponent<R: Rng + ?Sized>(p: Prime, rng: &mut R) -> Result<u64> {
    let bound = euler_phi(p);
    if bound <= 2 {
        return Err(Error::ExponentOutOfRange { value: 2, bound });
    }
    Ok(rng.gen_range(2..bound))
}

/// Bounds applied when turning an agreed `lambda` into matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionLimits {
    pub max_lambda: usize,
}

impl Default for SessionLimits {
    fn default() -> Self {
        SessionLimits {
            max_lambda: DEFAULT_MAX_ORDER,
        }
    }
}

/// Everything both parties derive from the agreed `(lambda, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SessionParams {
    lambda: usize,
    s: u64,
    p: Prime,
    key: ResidueMatrix,
    shift: Vec<u64>,
}

impl SessionParams {
    /// Builds `K = L_lambda^(s) mod p` and `B`, rejecting degenerate orders
    /// and singular keys.
    pub fn build(lambda: u64, s: u64, p: Prime, limits: SessionLimits) -> Result<Self> {
        if lambda < 2 {
            return Err(Error::DegenerateLambda(lambda));
        }
        if lambda > limits.max_lambda as u64 {
            return Err(Error::LambdaTooLarge {
                got: lambda,
                max: limits.max_lambda,
            });
        }
        let order = lambda as usize;
        let key = glm(order, s as i64, p)?;
        if key.det().is_zero() {
            return Err(Error::KeyNotInvertible {
                lambda,
                s,
                modulus: p.get(),
            });
        }
        let shift = (0..order)
            .map(|i| {
                let spec = SequenceSpec::new(order, (order + i) as i64).expect("order >= 2");
                lucas_term_mod(spec, p).value()
            })
            .collect();
        Ok(SessionParams {
            lambda: order,
            s,
            p,
            key,
            shift,
        })
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn key_matrix(&self) -> &ResidueMatrix {
        &self.key
    }

    pub fn shift(&self) -> &[u64] {
        &self.shift
    }

    /// `K* = L_lambda^(-s) H^{-1} mod p`.
    pub fn decryption_key(&self) -> Result<ResidueMatrix> {
        glm_closed_inverse(self.lambda, self.s as i64, self.p)
    }
}

/// Sender side: `s = E1^e`, `lambda = E2^e`, then the session matrices.
pub fn derive_session(pk: &PublicKey, e: u64) -> Result<SessionParams> {
    derive_session_with(pk, e, SessionLimits::default())
}

pub fn derive_session_with(pk: &PublicKey, e: u64, limits: SessionLimits) -> Result<SessionParams> {
    check_exponent(e, pk.p)?;
    let s = mod_pow(pk.e1, e as u128).value();
    let lambda = mod_pow(pk.e2, e as u128).value();
    SessionParams::build(lambda, s, pk.p, limits)
}

/// Receiver side: `lambda = s^D`, then the same session matrices.
pub fn recover_session(s: u64, sk: &SecretKey) -> Result<SessionParams> {
    recover_session_with(s, sk, SessionLimits::default())
}

pub fn recover_session_with(s: u64, sk: &SecretKey, limits: SessionLimits) -> Result<SessionParams> {
    let p = sk.p;
    if s == 0 || s >= p.get() {
        return Err(Error::InvalidSignature { s, modulus: p.get() });
    }
    let lambda = mod_pow(Residue::new(s, p), sk.d as u128).value();
    SessionParams::build(lambda, s, p, limits)
}

/// Appends [`PAD_SYMBOL`] until the length is a multiple of `lambda`.
pub fn pad_blocks(stream: &SymbolStream, lambda: usize) -> SymbolStream {
    let mut symbols = stream.to_vec();
    let rem = symbols.len() % lambda;
    if rem != 0 {
        symbols.resize(symbols.len() + lambda - rem, PAD_SYMBOL);
    }
    SymbolStream::new(symbols)
}

fn check_blocks(stream: &SymbolStream, session: &SessionParams) -> Result<()> {
    if stream.len() % session.lambda != 0 {
        return Err(Error::BlockMisaligned {
            len: stream.len(),
            block: session.lambda,
        });
    }
    stream.check_alphabet(session.p.get())
}

/// `c_i = p_i K + B (mod p)` per block of `lambda` symbols.
pub fn encrypt(plain: &SymbolStream, session: &SessionParams) -> Result<SymbolStream> {
    check_blocks(plain, session)?;
    let p = session.p.get();
    let mut out = Vec::with_capacity(plain.len());
    for block in plain.chunks(session.lambda) {
        let product = session.key.left_mul_vector(block)?;
        out.extend(product.iter().zip(&session.shift).map(|(&c, &b)| (c + b) % p));
    }
    Ok(out.into())
}

/// `p_i = (c_i - B) K* (mod p)` with `K*` from the closed-form inverse.
pub fn decrypt(cipher: &SymbolStream, session: &SessionParams) -> Result<SymbolStream> {
    check_blocks(cipher, session)?;
    let k_star = session.decryption_key()?;
    decrypt_with_key(cipher, session, &k_star)
}

fn decrypt_with_key(
    cipher: &SymbolStream,
    session: &SessionParams,
    k_star: &ResidueMatrix,
) -> Result<SymbolStream> {
    let p = session.p.get();
    let mut out = Vec::with_capacity(cipher.len());
    for block in cipher.chunks(session.lambda) {
        let centered: Vec<u64> = block
            .iter()
            .zip(&session.shift)
            .map(|(&c, &b)| (c + p - b) % p)
            .collect();
        out.extend(k_star.left_mul_vector(&centered)?);
    }
    Ok(out.into())
}
