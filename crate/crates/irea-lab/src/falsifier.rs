//! The falsification engine: round-trip oracle, order-based failure
//! prediction, the Carmichael-function correctness predicate,
//! counterexample search over exponents, Euler-lift identity checks, and
//! the exhaustive failure survey.

use thiserror::Error;

use crate::modmath::{
    carmichael_semiprime, euler_phi_semiprime, gcd, mod_pow, mul_mod, multiplicative_order,
    primes_in_range,
};
use crate::schemes::{decrypt, encrypt, keygen, KeyPair, SchemeId};

/// Largest modulus the exhaustive routines accept by default.
pub const DEFAULT_EXHAUSTION_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FalsifierError {
    #[error("message {message} out of range [0, {modulus})")]
    MessageOutOfRange { message: u64, modulus: u64 },
    #[error("modulus {modulus} exceeds the exhaustion bound {bound}")]
    ModulusTooLargeForExhaustion { modulus: u64, bound: u64 },
}

/// One message's encrypt/decrypt trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundTripRecord {
    pub message: u64,
    pub ciphertext: u64,
    pub decrypted: u64,
    pub ok: bool,
}

/// Exhaustive round-trip result for one keypair over the full message
/// space `[0, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeypairVerdict {
    pub keypair: KeyPair,
    pub failures: Vec<RoundTripRecord>,
    pub total_messages: u64,
    pub universally_correct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub b: u64,
    pub v: u64,
    pub e: u64,
    pub scheme: SchemeId,
    pub j: u64,
    pub failure_count: u64,
}

/// Aggregate failure statistics across `(b, v, e)` triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyReport {
    pub rows: Vec<SurveyRow>,
    pub prime_range: (u64, u64),
    pub e_policy: &'static str,
}

/// One admissible exponent under which the published scheme fails, with
/// the smallest failing message as witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BreakingExponent {
    pub e: u64,
    pub d: u64,
    pub witness_m: u64,
}

/// Instance of the identity `M^{k*phi(j)+1} ≡ M (mod b), (mod v), (mod j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerWitness {
    pub m: u64,
    pub k: u64,
    pub b: u64,
    pub v: u64,
}

/// Description of the exponent admissibility rule used by the survey and
/// the counterexample search.
pub const E_POLICY: &str = "b<e<phi(j), gcd(e,phi(j))=1, gcd(e,j)=1";

/// Every admissible base exponent for the prime pair `(b, v)`:
/// `b < e < phi(j)` with `e` coprime to both `phi(j)` and `j`, ascending.
pub fn admissible_exponents(b: u64, v: u64) -> Vec<u64> {
    let phi = euler_phi_semiprime(b, v).expect("b, v must be distinct primes");
    let j = b * v;
    (b + 1..phi)
        .filter(|&e| gcd(e, phi) == 1 && gcd(e, j) == 1)
        .collect()
}

/// Encrypt then decrypt one message through the keypair's public and
/// private records.
pub fn round_trip(kp: &KeyPair, message: u64) -> Result<RoundTripRecord, FalsifierError> {
    if message >= kp.j {
        return Err(FalsifierError::MessageOutOfRange {
            message,
            modulus: kp.j,
        });
    }
    let ciphertext = encrypt(&kp.public_key(), message).expect("message < j = a+1");
    let decrypted = decrypt(&kp.private_key(), ciphertext).expect("ciphertext < j = a+1");
    Ok(RoundTripRecord {
        message,
        ciphertext,
        decrypted,
        ok: decrypted == message,
    })
}

/// Evaluate `round_trip` for every message in `[0, j)`.
pub fn exhaustive_verdict(kp: &KeyPair) -> Result<KeypairVerdict, FalsifierError> {
    exhaustive_verdict_bounded(kp, DEFAULT_EXHAUSTION_BOUND)
}

pub fn exhaustive_verdict_bounded(
    kp: &KeyPair,
    bound: u64,
) -> Result<KeypairVerdict, FalsifierError> {
    if kp.j > bound {
        return Err(FalsifierError::ModulusTooLargeForExhaustion {
            modulus: kp.j,
            bound,
        });
    }
    let mut failures = Vec::new();
    for m in 0..kp.j {
        let record = round_trip(kp, m).expect("m < j");
        if !record.ok {
            failures.push(record);
        }
    }
    Ok(KeypairVerdict {
        keypair: kp.clone(),
        universally_correct: failures.is_empty(),
        total_messages: kp.j,
        failures,
    })
}

/// Per-residue round-trip outcome modulo each prime factor.
///
/// Entry `r` of the first table is true iff `(r^e)^d ≡ r (mod b)`, and
/// likewise for `v`. Because reduction mod `j` commutes with reduction mod
/// each factor, a message `M` round-trips iff both its residues do:
/// `ok(M) = table_b[M % b] && table_v[M % v]` (Chinese remaindering).
/// This makes exhaustion over all `j` messages affordable for large sweeps.
pub fn residue_roundtrip_tables(kp: &KeyPair) -> (Vec<bool>, Vec<bool>) {
    let table = |q: u64| -> Vec<bool> {
        (0..q)
            .map(|r| mod_pow(mod_pow(r, kp.e, q), kp.d, q) == r)
            .collect()
    };
    (table(kp.b), table(kp.v))
}

/// Exact number of messages in `[0, j)` that fail to round-trip, computed
/// from the per-residue tables.
pub fn exhaustive_failure_count(kp: &KeyPair) -> u64 {
    let (table_b, table_v) = residue_roundtrip_tables(kp);
    let ok_b = table_b.iter().filter(|&&ok| ok).count() as u64;
    let ok_v = table_v.iter().filter(|&&ok| ok).count() as u64;
    kp.j - ok_b * ok_v
}

/// Order-based prediction of whether one message round-trips, without
/// performing the exponentiations over `j`.
///
/// For each prime factor `q`, the message survives iff it is divisible by
/// `q` or `e*d ≡ 1 (mod ord_q(M))`. Agrees with `round_trip(..).ok` on
/// every input.
pub fn predict_round_trip(kp: &KeyPair, message: u64) -> bool {
    assert!(message < kp.j, "message must lie in [0, j)");
    [kp.b, kp.v].into_iter().all(|q| {
        let r = message % q;
        if r == 0 {
            return true;
        }
        let ord = multiplicative_order(r, q).expect("nonzero residue mod a prime is a unit");
        mul_mod(kp.e % ord, kp.d % ord, ord) == 1 % ord
    })
}

/// Closed-form test for universal round-trip correctness:
/// `e*d ≡ 1 (mod lambda(j))` where `lambda` is the Carmichael function.
/// Equals `exhaustive_verdict(..).universally_correct` whenever exhaustion
/// is feasible.
pub fn universally_correct_predicate(kp: &KeyPair) -> bool {
    let lambda = carmichael_semiprime(kp.b, kp.v).expect("keypair primes are distinct");
    mul_mod(kp.e % lambda, kp.d % lambda, lambda) == 1 % lambda
}

/// Every admissible exponent for which the published IREA scheme is not
/// universally correct over `(b, v)`, each with its smallest failing
/// message, ascending by `e`.
pub fn find_breaking_exponents(b: u64, v: u64) -> Vec<BreakingExponent> {
    let mut breaking = Vec::new();
    for e in admissible_exponents(b, v) {
        let kp = keygen(SchemeId::IreaPublished, b, v, e)
            .expect("admissible exponents satisfy the keygen preconditions");
        let (table_b, table_v) = residue_roundtrip_tables(&kp);
        let witness = (0..kp.j)
            .find(|&m| !(table_b[(m % kp.b) as usize] && table_v[(m % kp.v) as usize]));
        if let Some(witness_m) = witness {
            breaking.push(BreakingExponent {
                e,
                d: kp.d,
                witness_m,
            });
        }
    }
    breaking
}

/// Check `M^{k*phi(j)+1} ≡ M` modulo `b`, `v`, and `j`.
pub fn euler_identity_check(w: &EulerWitness) -> bool {
    let phi = euler_phi_semiprime(w.b, w.v).expect("witness primes must be distinct");
    let j = w.b * w.v;
    let exponent = w.k * phi + 1;
    [w.b, w.v, j]
        .into_iter()
        .all(|m| mod_pow(w.m, exponent, m) == w.m % m)
}

/// Exhaustive failure counts for every ordered pair of distinct primes in
/// `[prime_lo, prime_hi]` and every admissible exponent, under one scheme.
pub fn survey(
    prime_lo: u64,
    prime_hi: u64,
    scheme: SchemeId,
) -> Result<SurveyReport, FalsifierError> {
    survey_bounded(prime_lo, prime_hi, scheme, DEFAULT_EXHAUSTION_BOUND)
}

pub fn survey_bounded(
    prime_lo: u64,
    prime_hi: u64,
    scheme: SchemeId,
    bound: u64,
) -> Result<SurveyReport, FalsifierError> {
    let primes = primes_in_range(prime_lo, prime_hi);
    let mut rows = Vec::new();
    for &b in &primes {
        for &v in &primes {
            if b == v {
                continue;
            }
            let j = b * v;
            if j > bound {
                return Err(FalsifierError::ModulusTooLargeForExhaustion { modulus: j, bound });
            }
            for e in admissible_exponents(b, v) {
                let kp = keygen(scheme, b, v, e)
                    .expect("admissible exponents satisfy every scheme's preconditions");
                rows.push(SurveyRow {
                    b,
                    v,
                    e,
                    scheme,
                    j,
                    failure_count: exhaustive_failure_count(&kp),
                });
            }
        }
    }
    Ok(SurveyReport {
        rows,
        prime_range: (prime_lo, prime_hi),
        e_policy: E_POLICY,
    })
}
