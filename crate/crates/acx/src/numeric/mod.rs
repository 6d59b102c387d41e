//! Dense-matrix arithmetic with reverse-mode gradients, plus the Adam update.

pub mod adam;
pub mod matrix;
pub mod tape;

pub use adam::{adam_step, AdamConfig, AdamState};
pub use matrix::{kahan_sum, matmul, DenseMatrix};
pub use tape::{ElementwiseOp, Gradients, LossKind, Tape, Var, LOG_CLAMP};

pub(crate) const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

pub(crate) fn fnv_step(mut hash: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

/// FNV-1a fingerprint of arbitrary bytes, as a fixed-width hex string.
pub fn fingerprint_bytes(bytes: &[u8]) -> String {
    format!("{:016x}", fnv_step(FNV_OFFSET, bytes))
}

/// Fingerprint of a parameter list; identical iff every entry is bit-identical.
pub fn fingerprint_params(params: &[DenseMatrix]) -> u64 {
    let mut h = FNV_OFFSET;
    for p in params {
        h = fnv_step(h, &p.fingerprint().to_le_bytes());
    }
    h
}
