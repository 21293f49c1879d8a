//! Loopback demonstration of the key agreement.
//!
//! Alice (sender) and Bob (receiver) run on separate threads and talk over a
//! TCP socket on 127.0.0.1. Each message is a [`Frame`]: a 32-bit big-endian
//! byte count followed by the UTF-8 text of one [`Envelope`]. Alice sends
//! `(s, C)`; Bob recovers `lambda = s^D`, rebuilds the session, decrypts and
//! echoes the plaintext symbols back in an envelope with `s = 0`. Key matrices
//! never cross the wire.

use std::io::{self, Read, Write};
use std::net::{Ipv4Addr, SocketAddr, TcpListener, TcpStream};
use std::thread;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::error::Error;
use crate::matrices::ResidueMatrix;
use crate::numtheory::{primitive_roots, Prime};
use crate::protocol::{
    choose_exponent, decode_text, decrypt, derive_session, encode_text, encrypt, keygen, pad_blocks,
    recover_session, Envelope, SecretKey, SessionParams, SymbolStream, CODEC_MODULUS,
};

/// Frames larger than this are rejected on read.
pub const MAX_FRAME_LEN: u32 = 1 << 20;

const IO_TIMEOUT: Duration = Duration::from_secs(5);

#[derive(Debug, Error)]
pub enum ExchangeError {
    #[error("{context}: {source}")]
    Io {
        context: &'static str,
        #[source]
        source: io::Error,
    },
    #[error("bad frame: {0}")]
    Frame(String),
    #[error(transparent)]
    Protocol(#[from] Error),
    #[error("peer thread panicked")]
    PeerPanicked,
}

fn io_ctx(context: &'static str) -> impl FnOnce(io::Error) -> ExchangeError {
    move |source| ExchangeError::Io { context, source }
}

/// One length-prefixed envelope on the wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    payload: String,
}

impl Frame {
    pub fn new(envelope: &Envelope) -> Self {
        Frame {
            payload: envelope.to_string(),
        }
    }

    pub fn payload(&self) -> &str {
        &self.payload
    }

    pub fn envelope(&self) -> Result<Envelope, Error> {
        self.payload.parse()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let body = self.payload.as_bytes();
        let mut out = Vec::with_capacity(4 + body.len());
        out.extend_from_slice(&(body.len() as u32).to_be_bytes());
        out.extend_from_slice(body);
        out
    }

    /// Parses exactly one frame occupying all of `bytes`.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, ExchangeError> {
        if bytes.len() < 4 {
            return Err(ExchangeError::Frame("shorter than the length prefix".into()));
        }
        let len = u32::from_be_bytes(bytes[..4].try_into().expect("4 bytes")) as usize;
        if bytes.len() - 4 != len {
            return Err(ExchangeError::Frame(format!(
                "length prefix says {len} bytes, found {}",
                bytes.len() - 4
            )));
        }
        Frame::from_payload(bytes[4..].to_vec())
    }

    fn from_payload(body: Vec<u8>) -> Result<Self, ExchangeError> {
        let payload =
            String::from_utf8(body).map_err(|_| ExchangeError::Frame("payload is not UTF-8".into()))?;
        payload.parse::<Envelope>()?;
        Ok(Frame { payload })
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(&self.to_bytes())?;
        w.flush()
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self, ExchangeError> {
        let mut prefix = [0u8; 4];
        r.read_exact(&mut prefix).map_err(io_ctx("reading frame length"))?;
        let len = u32::from_be_bytes(prefix);
        if len > MAX_FRAME_LEN {
            return Err(ExchangeError::Frame(format!("frame of {len} bytes exceeds limit")));
        }
        let mut body = vec![0u8; len as usize];
        r.read_exact(&mut body).map_err(io_ctx("reading frame payload"))?;
        Frame::from_payload(body)
    }
}

/// Parameters for one demo run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoConfig {
    /// 0 picks an ephemeral port.
    pub port: u16,
    pub p: u64,
    pub alpha: u64,
    /// Bob's secret exponent.
    pub d: u64,
    /// Alice's ephemeral exponent.
    pub e: u64,
    pub message: String,
    /// Makes Bob decrypt with this exponent instead of `d`.
    pub bob_d_override: Option<u64>,
}

impl Default for DemoConfig {
    fn default() -> Self {
        DemoConfig {
            port: 0,
            p: 37,
            alpha: 17,
            d: 10,
            e: 23,
            message: "NOBLE2022".into(),
            bob_d_override: None,
        }
    }
}

impl DemoConfig {
    /// Random valid parameters over p = 37 with a random alphabet message.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let p = Prime::new(CODEC_MODULUS).expect("37 is prime");
        let roots = primitive_roots(p);
        loop {
            let alpha = roots.choose(rng).expect("roots exist").value();
            let d = choose_exponent(p, rng).expect("p > 3");
            let e = choose_exponent(p, rng).expect("p > 3");
            let (pk, _) = keygen(p, alpha, d).expect("valid by construction");
            if derive_session(&pk, e).is_err() {
                continue;
            }
            const ALPHABET: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 ";
            let len = rng.gen_range(1..=24);
            let message = (0..len)
                .map(|_| *ALPHABET.choose(rng).expect("non-empty") as char)
                .collect();
            return DemoConfig {
                port: 0,
                p: p.get(),
                alpha,
                d,
                e,
                message,
                bob_d_override: None,
            };
        }
    }
}

/// Short fingerprint of a key matrix for side-by-side comparison.
pub fn key_digest(k: &ResidueMatrix) -> String {
    let mut hasher = Sha256::new();
    hasher.update(k.to_string().as_bytes());
    hasher.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn render_symbols(stream: &SymbolStream, p: Prime) -> String {
    if p.get() == CODEC_MODULUS {
        if let Ok(text) = decode_text(stream) {
            return text;
        }
    }
    let parts: Vec<String> = stream.iter().map(u64::to_string).collect();
    parts.join(",")
}

fn describe_session(who: &str, session: &SessionParams) -> String {
    format!(
        "[{who}] lambda={} K digest={} B={:?}",
        session.lambda(),
        key_digest(session.key_matrix()),
        session.shift()
    )
}

/// Everything the demo observed.
#[derive(Debug, Clone)]
pub struct Transcript {
    pub lines: Vec<String>,
    pub alice_lambda: usize,
    pub alice_key_digest: String,
    pub bob_lambda: Option<usize>,
    pub bob_key_digest: Option<String>,
    /// Raw bytes Alice sent, prefix included.
    pub wire_to_bob: Vec<u8>,
    /// Raw bytes Bob sent back, prefix included.
    pub wire_to_alice: Vec<u8>,
    pub frames_to_bob: usize,
    pub frames_to_alice: usize,
    pub matched: bool,
}

impl Transcript {
    pub fn last_line(&self) -> &str {
        self.lines.last().map(String::as_str).unwrap_or("")
    }
}

struct BobOutcome {
    lines: Vec<String>,
    lambda: Option<usize>,
    digest: Option<String>,
    received: Vec<u8>,
    sent: Vec<u8>,
}

fn run_bob(listener: TcpListener, sk: SecretKey) -> Result<BobOutcome, ExchangeError> {
    let (mut stream, peer) = listener.accept().map_err(io_ctx("accepting connection"))?;
    stream.set_read_timeout(Some(IO_TIMEOUT)).map_err(io_ctx("configuring socket"))?;
    let mut lines = vec![format!("[bob] accepted connection from {peer}")];

    let frame = Frame::read_from(&mut stream)?;
    let received = frame.to_bytes();
    let envelope = frame.envelope()?;
    lines.push(format!("[bob] received s={} and {} symbols", envelope.s, envelope.ciphertext.len()));

    let mut lambda = None;
    let mut digest = None;
    let recovered = recover_session(envelope.s, &sk).and_then(|session| {
        lines.push(describe_session("bob", &session));
        lambda = Some(session.lambda());
        digest = Some(key_digest(session.key_matrix()));
        decrypt(&envelope.ciphertext, &session)
    });
    let plain = match recovered {
        Ok(plain) => {
            lines.push(format!("[bob] plaintext={:?}", render_symbols(&plain, sk.p())));
            plain
        }
        Err(err) => {
            lines.push(format!("[bob] could not decrypt: {err}"));
            SymbolStream::default()
        }
    };

    let reply = Frame::new(&Envelope {
        s: 0,
        ciphertext: plain,
    });
    reply.write_to(&mut stream).map_err(io_ctx("sending reply"))?;
    Ok(BobOutcome {
        lines,
        lambda,
        digest,
        received,
        sent: reply.to_bytes(),
    })
}

/// Runs Bob as a listener and Alice as a connector on loopback.
pub fn run_demo(config: &DemoConfig) -> Result<Transcript, ExchangeError> {
    let p = Prime::new(config.p)?;
    let (pk, sk) = keygen(p, config.alpha, config.d)?;
    let bob_sk = match config.bob_d_override {
        Some(d) => SecretKey::new(p, d)?,
        None => sk,
    };

    // Alice prepares everything before any socket is opened.
    let session = derive_session(&pk, config.e)?;
    let plain = pad_blocks(&encode_text(&config.message)?, session.lambda());
    let cipher = encrypt(&plain, &session)?;
    let envelope = Envelope {
        s: session.s(),
        ciphertext: cipher.clone(),
    };

    let listener = TcpListener::bind((Ipv4Addr::LOCALHOST, config.port))
        .map_err(io_ctx("binding loopback listener"))?;
    let addr: SocketAddr = listener.local_addr().map_err(io_ctx("reading listener address"))?;
    let bob = thread::spawn(move || run_bob(listener, bob_sk));

    let mut lines = vec![
        format!("[bob] public key pk({},{},{}) listening on {addr}", pk.p(), pk.e1(), pk.e2()),
        format!("[alice] e={} s={}", config.e, session.s()),
        describe_session("alice", &session),
        format!("[alice] ciphertext={:?}", render_symbols(&cipher, p)),
    ];

    let alice = (|| -> Result<Frame, ExchangeError> {
        let mut stream = TcpStream::connect(addr).map_err(io_ctx("connecting to bob"))?;
        stream.set_read_timeout(Some(IO_TIMEOUT)).map_err(io_ctx("configuring socket"))?;
        Frame::new(&envelope).write_to(&mut stream).map_err(io_ctx("sending envelope"))?;
        Frame::read_from(&mut stream)
    })();

    let reply = match alice {
        Ok(reply) => reply,
        Err(err) => {
            // Unblock a listener still waiting in accept().
            let _ = TcpStream::connect(addr);
            let _ = bob.join();
            return Err(err);
        }
    };
    let bob = bob.join().map_err(|_| ExchangeError::PeerPanicked)??;

    lines.push(format!(
        "[wire] alice->bob {} bytes: {:?}",
        bob.received.len(),
        String::from_utf8_lossy(&bob.received[4..])
    ));
    lines.extend(bob.lines);
    lines.push(format!(
        "[wire] bob->alice {} bytes: {:?}",
        bob.sent.len(),
        String::from_utf8_lossy(&bob.sent[4..])
    ));

    let echoed = reply.envelope()?.ciphertext;
    let matched = echoed == plain;
    let expected = render_symbols(&plain, p);
    if matched {
        lines.push(format!("MATCH: {}", expected.trim_end()));
    } else {
        lines.push(format!(
            "MISMATCH: sent {:?}, bob recovered {:?}",
            expected,
            render_symbols(&echoed, p)
        ));
    }

    Ok(Transcript {
        lines,
        alice_lambda: session.lambda(),
        alice_key_digest: key_digest(session.key_matrix()),
        bob_lambda: bob.lambda,
        bob_key_digest: bob.digest,
        wire_to_bob: bob.received,
        wire_to_alice: bob.sent,
        frames_to_bob: 1,
        frames_to_alice: 1,
        matched,
    })
}
