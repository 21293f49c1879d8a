use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;

use lucas_hill::analysis::KeyspaceReport;
use lucas_hill::exchange::{run_demo, DemoConfig, ExchangeError, Transcript};
use lucas_hill::matrices::{glm, DEFAULT_MAX_ORDER};
use lucas_hill::numtheory::{smallest_primitive_root, Prime};
use lucas_hill::protocol::{
    choose_exponent, decode_text, decrypt, derive_session, encode_text, encrypt, keygen,
    pad_blocks, recover_session, Envelope, PublicKey, SecretKey, SymbolStream, CODEC_MODULUS,
};
use lucas_hill::sequences::{range, Family};
use lucas_hill::Error;

#[derive(Parser)]
#[command(name = "lucas-hill", version, about = "Affine-Hill cipher keyed by generalized Lucas matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair and write the public and secret key files.
    Keygen {
        #[arg(long)]
        p: u64,
        /// Primitive root; defaults to the smallest one.
        #[arg(long)]
        alpha: Option<u64>,
        /// Secret exponent; drawn at random from (1, p-1) when omitted.
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        out_pub: PathBuf,
        #[arg(long)]
        out_sec: PathBuf,
    },
    /// Encrypt a message for a public key and write the envelope file.
    Encrypt {
        #[arg(long = "pub")]
        public: PathBuf,
        /// Ephemeral exponent, 1 < e < p-1.
        #[arg(long)]
        e: u64,
        /// Text over A-Z, 0-9 and space (requires p = 37).
        #[arg(long, conflicts_with = "symbols", required_unless_present = "symbols")]
        msg: Option<String>,
        /// Comma-separated residues, for any modulus.
        #[arg(long)]
        symbols: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt an envelope file with a secret key.
    Decrypt {
        #[arg(long)]
        sec: PathBuf,
        #[arg(long)]
        env: PathBuf,
    },
    /// Run sender and receiver over loopback TCP and print the transcript.
    ExchangeDemo {
        /// Listener port; 0 picks a free one.
        #[arg(long, default_value_t = 0)]
        port: u16,
        /// Run this many demos with random parameters instead of the default one.
        #[arg(long)]
        trials: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Give the receiver this secret exponent instead of the real one.
        #[arg(long)]
        wrong_d: Option<u64>,
    },
    /// Print sequence terms as `index<TAB>value` lines.
    Seq {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
        #[arg(long, value_enum, default_value_t = FamilyArg::Lucas)]
        family: FamilyArg,
    },
    /// Print the generalized Lucas matrix of order k and index n modulo p.
    Matrix {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        p: u64,
    },
    /// Report the size of the key space for block size lambda over F_p.
    Analyze {
        #[arg(long)]
        lambda: u32,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Lucas,
    Fibonacci,
}

/// An error together with the process exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

const VALIDATION: u8 = 2;
const PROTOCOL: u8 = 3;
const IO: u8 = 4;

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::DegenerateLambda(_)
            | Error::LambdaTooLarge { .. }
            | Error::KeyNotInvertible { .. }
            | Error::InvalidSignature { .. }
            | Error::BlockMisaligned { .. }
            | Error::SingularMatrix(_)
            | Error::NotInvertible { .. } => PROTOCOL,
            _ => VALIDATION,
        };
        Failure {
            code,
            error: err.into(),
        }
    }
}

impl From<ExchangeError> for Failure {
    fn from(err: ExchangeError) -> Self {
        match err {
            ExchangeError::Protocol(inner) => inner.into(),
            ExchangeError::Io { .. } => fail(IO, err),
            other => fail(PROTOCOL, other),
        }
    }
}

fn fail(code: u8, error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code,
        error: error.into(),
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| fail(IO, anyhow!(e).context(format!("reading {}", path.display()))))
}

fn write(path: &Path, contents: impl Display) -> CliResult<()> {
    fs::write(path, contents.to_string())
        .map_err(|e| fail(IO, anyhow!(e).context(format!("writing {}", path.display()))))
}

fn parse_symbols(text: &str) -> CliResult<SymbolStream> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(SymbolStream::default());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad symbol {s:?}")).into())
        })
        .collect::<CliResult<Vec<_>>>()
        .map(SymbolStream::from)
}

/// Text for the 37-symbol alphabet, comma-separated residues otherwise.
fn render(stream: &SymbolStream, p: Prime) -> CliResult<String> {
    if p.get() == CODEC_MODULUS {
        Ok(decode_text(stream)?)
    } else {
        Ok(stream.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
    }
}

fn keygen_cmd(p: u64, alpha: Option<u64>, d: Option<u64>, out_pub: &Path, out_sec: &Path) -> CliResult<()> {
    let p = Prime::new(p)?;
    let alpha = match alpha {
        Some(a) => a,
        None => smallest_primitive_root(p).value(),
    };
    let d = match d {
        Some(d) => d,
        None => choose_exponent(p, &mut rand::thread_rng())?,
    };
    let (pk, sk) = keygen(p, alpha, d)?;
    write(out_pub, pk.to_key_file())?;
    write(out_sec, sk.to_key_file())?;
    println!("pk=({},{},{})", pk.p(), pk.e1(), pk.e2());
    Ok(())
}

fn encrypt_cmd(public: &Path, e: u64, msg: Option<&str>, symbols: Option<&str>, out: &Path) -> CliResult<()> {
    let pk = PublicKey::from_key_file(&read(public)?)?;
    let plain = match (msg, symbols) {
        (Some(msg), _) => {
            if pk.p().get() != CODEC_MODULUS {
                return Err(fail(
                    VALIDATION,
                    anyhow!("--msg needs p = {CODEC_MODULUS}; use --symbols for p = {}", pk.p()),
                ));
            }
            encode_text(msg)?
        }
        (None, Some(symbols)) => parse_symbols(symbols)?,
        (None, None) => unreachable!("clap requires one of --msg/--symbols"),
    };
    let session = derive_session(&pk, e)?;
    let cipher = encrypt(&pad_blocks(&plain, session.lambda()), &session)?;
    let text = render(&cipher, pk.p())?;
    write(
        out,
        Envelope {
            s: session.s(),
            ciphertext: cipher,
        },
    )?;
    println!("s={}", session.s());
    println!("{text}");
    Ok(())
}

fn decrypt_cmd(sec: &Path, env: &Path) -> CliResult<()> {
    let sk = SecretKey::from_key_file(&read(sec)?)?;
    let envelope: Envelope = read(env)?.parse()?;
    envelope.ciphertext.check_alphabet(sk.p().get())?;
    let session = recover_session(envelope.s, &sk)?;
    let plain = decrypt(&envelope.ciphertext, &session)?;
    println!("{}", render(&plain, sk.p())?);
    Ok(())
}

fn print_transcript(t: &Transcript) {
    for line in &t.lines {
        println!("{line}");
    }
}

fn exchange_cmd(port: u16, trials: Option<u32>, seed: u64, wrong_d: Option<u64>) -> CliResult<()> {
    let configs: Vec<DemoConfig> = match trials {
        None => vec![DemoConfig {
            port,
            bob_d_override: wrong_d,
            ..DemoConfig::default()
        }],
        Some(n) => {
            let mut rng = StdRng::seed_from_u64(seed);
            (0..n)
                .map(|_| DemoConfig {
                    port,
                    bob_d_override: wrong_d,
                    ..DemoConfig::random(&mut rng)
                })
                .collect()
        }
    };
    let mut mismatches = 0;
    for (i, config) in configs.iter().enumerate() {
        if configs.len() > 1 {
            println!("--- trial {} (alpha={} d={} e={})", i + 1, config.alpha, config.d, config.e);
        }
        let transcript = run_demo(config)?;
        print_transcript(&transcript);
        if !transcript.matched {
            mismatches += 1;
        }
    }
    if mismatches > 0 {
        return Err(fail(
            PROTOCOL,
            anyhow!("{mismatches} of {} exchanges did not match", configs.len()),
        ));
    }
    Ok(())
}

fn seq_cmd(k: usize, from: i64, to: i64, family: FamilyArg) -> CliResult<()> {
    let family = match family {
        FamilyArg::Lucas => Family::Lucas,
        FamilyArg::Fibonacci => Family::Fibonacci,
    };
    if from > to {
        return Err(fail(VALIDATION, anyhow!("--from {from} is after --to {to}")));
    }
    let terms = range(family, k, from, to)?;
    let mut out = String::new();
    for (n, value) in (from..=to).zip(terms) {
        out.push_str(&format!("{n}\t{value}\n"));
    }
    print!("{out}");
    Ok(())
}

fn matrix_cmd(k: usize, n: i64, p: u64) -> CliResult<()> {
    if k > DEFAULT_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            got: k,
            max: DEFAULT_MAX_ORDER,
        }
        .into());
    }
    let p = Prime::new(p)?;
    print!("{}", glm(k, n, p)?);
    Ok(())
}

fn analyze_cmd(lambda: u32, p: u64) -> CliResult<()> {
    let report = KeyspaceReport::new(lambda, Prime::new(p)?);
    println!("{report}");
    println!(
        "remark: key space ~ {}e{}; it depends on lambda and p only, not on the signature s",
        report.significand(4),
        report.decimal_magnitude
    );
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Keygen {
            p,
            alpha,
            d,
            out_pub,
            out_sec,
        } => keygen_cmd(p, alpha, d, &out_pub, &out_sec),
        Command::Encrypt {
            public,
            e,
            msg,
            symbols,
            out,
        } => encrypt_cmd(&public, e, msg.as_deref(), symbols.as_deref(), &out),
        Command::Decrypt { sec, env } => decrypt_cmd(&sec, &env),
        Command::ExchangeDemo {
            port,
            trials,
            seed,
            wrong_d,
        } => exchange_cmd(port, trials, seed, wrong_d),
        Command::Seq { k, from, to, family } => seq_cmd(k, from, to, family),
        Command::Matrix { k, n, p } => matrix_cmd(k, n, p),
        Command::Analyze { lambda, p } => analyze_cmd(lambda, p),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
