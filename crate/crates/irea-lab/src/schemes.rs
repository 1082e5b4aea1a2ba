//! The three concrete schemes behind one keygen/encrypt/decrypt interface:
//! textbook RSA, the published IREA variant whose private key is computed
//! modulo the modulus itself, and the corrected IREA variant that computes
//! it modulo the totient.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::modmath::{euler_phi_semiprime, gcd, is_probable_prime, mod_inv, mod_pow, mul_mod};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeId {
    Textbook,
    IreaPublished,
    IreaCorrected,
}

impl SchemeId {
    pub const ALL: [SchemeId; 3] = [
        SchemeId::Textbook,
        SchemeId::IreaPublished,
        SchemeId::IreaCorrected,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemeId::Textbook => "textbook",
            SchemeId::IreaPublished => "irea-published",
            SchemeId::IreaCorrected => "irea-corrected",
        }
    }

    /// True for the two IREA variants, which publish `p = 2e + 1` instead of `e`.
    pub fn is_irea(self) -> bool {
        !matches!(self, SchemeId::Textbook)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown scheme {0:?} (expected textbook, irea-published or irea-corrected)")]
pub struct ParseSchemeError(String);

impl FromStr for SchemeId {
    type Err = ParseSchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "textbook" => Ok(SchemeId::Textbook),
            "irea-published" => Ok(SchemeId::IreaPublished),
            "irea-corrected" => Ok(SchemeId::IreaCorrected),
            other => Err(ParseSchemeError(other.to_string())),
        }
    }
}

/// Full key material for one scheme instance.
///
/// `p` is the IREA public value `2e + 1`; it is 0 for the textbook scheme,
/// which publishes `e` directly. `a = j - 1` is the published modulus
/// surrogate; encryption and decryption always reduce modulo `a + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair {
    pub scheme: SchemeId,
    pub b: u64,
    pub v: u64,
    pub j: u64,
    pub phi: u64,
    pub a: u64,
    pub e: u64,
    pub p: u64,
    pub d: u64,
}

impl KeyPair {
    pub fn public_key(&self) -> PublicKeyRecord {
        PublicKeyRecord {
            scheme: self.scheme,
            exponent: if self.scheme.is_irea() { self.p } else { self.e },
            a: self.a,
        }
    }

    pub fn private_key(&self) -> PrivateKeyRecord {
        PrivateKeyRecord {
            scheme: self.scheme,
            d: self.d,
            a: self.a,
        }
    }
}

/// Public key as published: `(e, a)` for textbook, `(p, a)` for IREA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublicKeyRecord {
    pub scheme: SchemeId,
    pub exponent: u64,
    pub a: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrivateKeyRecord {
    pub scheme: SchemeId,
    pub d: u64,
    pub a: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum KeygenError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("b and v must be distinct primes")]
    PrimesEqual,
    #[error("exponent e={e} out of range: need b={b} < e < phi(j)={phi}")]
    ExponentOutOfRange { e: u64, b: u64, phi: u64 },
    #[error("exponent e={e} is not coprime to phi(j)={phi}")]
    ExponentNotCoprimeToPhi { e: u64, phi: u64 },
    #[error("exponent e={e} is not coprime to the modulus j={j}")]
    ExponentNotCoprimeToModulus { e: u64, j: u64 },
    #[error("exponent has no inverse modulo {modulus}")]
    NoInverse { modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CryptError {
    #[error("message {value} out of range [0, {modulus})")]
    MessageOutOfRange { value: u64, modulus: u64 },
    #[error("ciphertext {value} out of range [0, {modulus})")]
    CipherOutOfRange { value: u64, modulus: u64 },
    #[error("malformed public key: IREA exponent field {0} must be odd and >= 3")]
    MalformedPublicKey(u64),
}

/// Generate a keypair for the given scheme.
///
/// The IREA variants require `b < e < phi(j)` with `e` coprime to both
/// `phi(j)` and `j`; textbook RSA only requires `gcd(e, phi(j)) = 1`.
/// The private exponent is the inverse of `e` modulo `j` for the published
/// variant and modulo `phi(j)` otherwise.
pub fn keygen(scheme: SchemeId, b: u64, v: u64, e: u64) -> Result<KeyPair, KeygenError> {
    if !is_probable_prime(b) {
        return Err(KeygenError::NotPrime(b));
    }
    if !is_probable_prime(v) {
        return Err(KeygenError::NotPrime(v));
    }
    if b == v {
        return Err(KeygenError::PrimesEqual);
    }
    let j = b * v;
    let phi = euler_phi_semiprime(b, v).expect("b, v checked distinct primes");

    if gcd(e, phi) != 1 {
        return Err(KeygenError::ExponentNotCoprimeToPhi { e, phi });
    }
    if scheme.is_irea() {
        if gcd(e, j) != 1 {
            return Err(KeygenError::ExponentNotCoprimeToModulus { e, j });
        }
        if !(b < e && e < phi) {
            return Err(KeygenError::ExponentOutOfRange { e, b, phi });
        }
    }

    let inv_modulus = match scheme {
        SchemeId::IreaPublished => j,
        SchemeId::Textbook | SchemeId::IreaCorrected => phi,
    };
    let d = mod_inv(e, inv_modulus).ok_or(KeygenError::NoInverse {
        modulus: inv_modulus,
    })?;

    Ok(KeyPair {
        scheme,
        b,
        v,
        j,
        phi,
        a: j - 1,
        e,
        p: if scheme.is_irea() { 2 * e + 1 } else { 0 },
        d,
    })
}

/// Recover the effective encryption exponent from a public key:
/// the exponent field itself for textbook, `(p - 1) / 2` for IREA.
pub fn derive_base_exponent(public: &PublicKeyRecord) -> Result<u64, CryptError> {
    if !public.scheme.is_irea() {
        return Ok(public.exponent);
    }
    if public.exponent < 3 || public.exponent % 2 == 0 {
        return Err(CryptError::MalformedPublicKey(public.exponent));
    }
    Ok((public.exponent - 1) / 2)
}

/// `E = M^e_enc mod (a + 1)` where `e_enc` is the effective encryption exponent.
pub fn encrypt(public: &PublicKeyRecord, message: u64) -> Result<u64, CryptError> {
    let modulus = public.a + 1;
    if message >= modulus {
        return Err(CryptError::MessageOutOfRange {
            value: message,
            modulus,
        });
    }
    let exponent = derive_base_exponent(public)?;
    Ok(mod_pow(message, exponent, modulus))
}

/// `D = E^d mod (a + 1)`. Makes no promise that `D` equals the original
/// message; whether it does is exactly the property the falsifier tests.
pub fn decrypt(private: &PrivateKeyRecord, ciphertext: u64) -> Result<u64, CryptError> {
    let modulus = private.a + 1;
    if ciphertext >= modulus {
        return Err(CryptError::CipherOutOfRange {
            value: ciphertext,
            modulus,
        });
    }
    Ok(mod_pow(ciphertext, private.d, modulus))
}

/// Check every structural invariant of a keypair; returns one descriptor
/// per violation, empty when the keypair is well formed.
pub fn validate_keypair(kp: &KeyPair) -> Vec<String> {
    let mut violations = Vec::new();
    if !is_probable_prime(kp.b) {
        violations.push(format!("b={} is not prime", kp.b));
    }
    if !is_probable_prime(kp.v) {
        violations.push(format!("v={} is not prime", kp.v));
    }
    if kp.b == kp.v {
        violations.push("b == v".to_string());
    }
    if kp.j != kp.b * kp.v {
        violations.push("j != b*v".to_string());
    }
    if kp.phi != (kp.b - 1) * (kp.v - 1) {
        violations.push("phi != (b-1)*(v-1)".to_string());
    }
    if kp.a != kp.j - 1 {
        violations.push("a != j-1".to_string());
    }
    if kp.scheme.is_irea() && kp.p != 2 * kp.e + 1 {
        violations.push("p != 2*e+1".to_string());
    }
    let (inv_modulus, label) = match kp.scheme {
        SchemeId::IreaPublished => (kp.j, "j"),
        SchemeId::Textbook | SchemeId::IreaCorrected => (kp.phi, "phi"),
    };
    if inv_modulus < 2 || mul_mod(kp.d % inv_modulus, kp.e % inv_modulus, inv_modulus) != 1 {
        violations.push(format!("d*e mod {label} != 1"));
    }
    violations
}
