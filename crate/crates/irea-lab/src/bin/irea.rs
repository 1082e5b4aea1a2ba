//! Command-line front end for the IREA correctness laboratory.
//!
//! Exit codes: 0 = success, 1 = operational error (bad parameters, bad
//! files), 2 = a round-trip falsification was found. All output is built
//! in memory and flushed once at completion.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use irea_lab::falsifier::{
    exhaustive_verdict, round_trip, survey, FalsifierError,
};
use irea_lab::keyfile;
use irea_lab::schemes::{decrypt, encrypt, keygen, KeyPair, SchemeId};

#[derive(Parser)]
#[command(
    name = "irea",
    about = "Key generation, encryption and round-trip falsification for textbook RSA and the two IREA variants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct KeygenParams {
    /// Scheme: textbook, irea-published or irea-corrected.
    #[arg(long)]
    scheme: SchemeId,
    /// First prime.
    #[arg(long)]
    b: u64,
    /// Second prime.
    #[arg(long)]
    v: u64,
    /// Base exponent e.
    #[arg(long)]
    e: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a keypair and write the public and private key files.
    Keygen {
        #[command(flatten)]
        params: KeygenParams,
        /// Output path for the public key file.
        #[arg(long)]
        pub_out: PathBuf,
        /// Output path for the private key file.
        #[arg(long)]
        priv_out: PathBuf,
    },
    /// Encrypt a single integer with a public key file.
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        value: u64,
    },
    /// Decrypt a single integer with a private key file.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        value: u64,
    },
    /// Encrypt-then-decrypt one message, or the whole message space.
    Roundtrip {
        #[command(flatten)]
        params: KeygenParams,
        /// Check a single message.
        #[arg(long, conflicts_with = "all")]
        message: Option<u64>,
        /// Check every message in [0, j).
        #[arg(long)]
        all: bool,
    },
    /// Exhaustive failure counts over every prime pair and admissible exponent.
    Survey {
        /// Smallest prime to include.
        #[arg(long)]
        min: u64,
        /// Largest prime to include.
        #[arg(long)]
        max: u64,
        #[arg(long)]
        scheme: SchemeId,
        /// Write the CSV report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the three reference transcripts (e=13 and e=7 under the
    /// published scheme, e=7 under the corrected scheme).
    Tables,
}

/// Falsification found: a successful negative result, distinct from a crash.
const EXIT_FALSIFIED: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome { stdout, falsified }) => {
            print!("{stdout}");
            if falsified {
                ExitCode::from(EXIT_FALSIFIED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

struct Outcome {
    stdout: String,
    falsified: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Result<Outcome, String> {
        Ok(Outcome { stdout, falsified: false })
    }
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Keygen { params, pub_out, priv_out } => {
            let kp = generate(&params)?;
            fs::write(&pub_out, keyfile::format_public(&kp.public_key()))
                .map_err(|e| format!("cannot write {}: {e}", pub_out.display()))?;
            fs::write(&priv_out, keyfile::format_private(&kp.private_key()))
                .map_err(|e| format!("cannot write {}: {e}", priv_out.display()))?;
            Outcome::ok(format!(
                "scheme={} b={} v={} j={} phi={} a={} e={} p={} d={}\n",
                kp.scheme, kp.b, kp.v, kp.j, kp.phi, kp.a, kp.e, kp.p, kp.d
            ))
        }
        Command::Encrypt { key, value } => {
            let text = fs::read_to_string(&key)
                .map_err(|e| format!("cannot read {}: {e}", key.display()))?;
            let record = keyfile::parse_public(&text).map_err(|e| e.to_string())?;
            let ciphertext = encrypt(&record, value).map_err(|e| e.to_string())?;
            Outcome::ok(format!("{ciphertext}\n"))
        }
        Command::Decrypt { key, value } => {
            let text = fs::read_to_string(&key)
                .map_err(|e| format!("cannot read {}: {e}", key.display()))?;
            let record = keyfile::parse_private(&text).map_err(|e| e.to_string())?;
            let plaintext = decrypt(&record, value).map_err(|e| e.to_string())?;
            Outcome::ok(format!("{plaintext}\n"))
        }
        Command::Roundtrip { params, message, all } => {
            let kp = generate(&params)?;
            match (message, all) {
                (Some(m), false) => {
                    let record = round_trip(&kp, m).map_err(|e| e.to_string())?;
                    let verdict = if record.ok { "OK" } else { "FAIL" };
                    Ok(Outcome {
                        stdout: format!(
                            "{} {} {} {verdict}\n",
                            record.message, record.ciphertext, record.decrypted
                        ),
                        falsified: !record.ok,
                    })
                }
                (None, true) => {
                    let verdict = exhaustive_verdict(&kp).map_err(|e| e.to_string())?;
                    let mut stdout = format!(
                        "{} failures / {}\n",
                        verdict.failures.len(),
                        verdict.total_messages
                    );
                    if !verdict.universally_correct {
                        let witnesses: Vec<String> = verdict
                            .failures
                            .iter()
                            .take(10)
                            .map(|r| r.message.to_string())
                            .collect();
                        writeln!(stdout, "smallest witnesses: {}", witnesses.join(" "))
                            .expect("writing to a String cannot fail");
                    }
                    Ok(Outcome { stdout, falsified: !verdict.universally_correct })
                }
                _ => Err("exactly one of --message or --all is required".to_string()),
            }
        }
        Command::Survey { min, max, scheme, out } => {
            let report = survey(min, max, scheme).map_err(|e| match e {
                FalsifierError::ModulusTooLargeForExhaustion { .. } => e.to_string(),
                other => other.to_string(),
            })?;
            if report.rows.is_empty() {
                return Err(format!(
                    "no prime pair in [{min}, {max}] admits any exponent"
                ));
            }
            let csv = keyfile::format_csv(&report);
            match out {
                Some(path) => {
                    fs::write(&path, csv)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    Outcome::ok(String::new())
                }
                None => Outcome::ok(csv),
            }
        }
        Command::Tables => Outcome::ok(tables_transcript()),
    }
}

fn generate(params: &KeygenParams) -> Result<KeyPair, String> {
    keygen(params.scheme, params.b, params.v, params.e).map_err(|e| e.to_string())
}

fn tables_transcript() -> String {
    let cases = [
        ("Table 1", SchemeId::IreaPublished, 13u64),
        ("Table 2", SchemeId::IreaPublished, 7),
        ("Table 3", SchemeId::IreaCorrected, 7),
    ];
    let mut out = String::new();
    for (label, scheme, e) in cases {
        let kp = keygen(scheme, 5, 11, e).expect("reference parameters are valid");
        let record = round_trip(&kp, 4).expect("M=4 < j=55");
        let verdict = if record.ok { "MATCH" } else { "MISMATCH(D≠M)" };
        writeln!(out, "{label}: scheme={} b={} v={} e={}", kp.scheme, kp.b, kp.v, kp.e)
            .expect("writing to a String cannot fail");
        writeln!(out, "j={} phi={} a={}", kp.j, kp.phi, kp.a)
            .expect("writing to a String cannot fail");
        writeln!(out, "M={}", record.message).expect("writing to a String cannot fail");
        writeln!(
            out,
            "p={} d={} E={} D={} {verdict}",
            kp.p, kp.d, record.ciphertext, record.decrypted
        )
        .expect("writing to a String cannot fail");
    }
    out
}
