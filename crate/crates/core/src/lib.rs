//! HMAC-DRBG, its CAVP conformance harness, and an executable model of the
//! security games used to argue its pseudorandomness.

pub mod block;
pub mod bounds;
pub mod cavp;
pub mod drbg;
pub mod encoding;
pub mod entropy;
pub mod games;
pub mod prf;
pub mod prob;
