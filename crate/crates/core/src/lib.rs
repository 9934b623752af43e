//! Non-binary LDPC decoding over GF(2^p).
//!
//! The crate provides field arithmetic ([`gf`]), labeled Tanner graphs and
//! their text format ([`code`]), modulation and a-priori metrics
//! ([`channel`]), the message-passing decoders ([`decoders`]), brute-force
//! reference computations used to verify them ([`oracle`]), and a Monte Carlo
//! harness ([`sim`]).

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod channel;
pub mod code;
pub mod decoders;
pub mod error;
pub mod gf;
pub mod oracle;
pub mod sim;

pub use channel::{Convention, IntrinsicInfo, Modulation};
pub use code::{Code, SymbolVector};
pub use decoders::{decode, DecodeResult, Decoder, DecoderConfig, OpCounter, Rule};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
