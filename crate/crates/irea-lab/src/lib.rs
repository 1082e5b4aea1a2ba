//! Correctness laboratory for the IREA RSA variant.
//!
//! Implements textbook RSA, the published IREA scheme (whose private key is
//! the inverse of `e` modulo the modulus `j` instead of modulo `phi(j)`),
//! and the corrected IREA scheme, together with a falsification engine that
//! demonstrates mechanically where and why the published key generation
//! breaks round-trip decryption.

pub mod falsifier;
pub mod keyfile;
pub mod modmath;
pub mod schemes;

pub use falsifier::{
    EulerWitness, KeypairVerdict, RoundTripRecord, SurveyReport, SurveyRow,
};
pub use schemes::{KeyPair, PrivateKeyRecord, PublicKeyRecord, SchemeId};
