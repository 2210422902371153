//! Shared fixtures for the benchmark suite.

use bsymbol::{Code, FieldCtx, Variant, Word};

/// A mid-sized binary code: GF(256) over GF(2), full length 255.
pub fn binary_code() -> Code {
    Code::build(2, 1, 8, 1, Variant::Full).expect("valid parameters")
}

/// The shortened five-ary code of length 31.
pub fn shortened_code() -> Code {
    Code::build(5, 1, 3, 2, Variant::Shortened).expect("valid parameters")
}

/// A deterministic pseudo-random word over GF(q) of the given length,
/// derived from a tiny multiplicative generator so benches need no RNG
/// dependency.
pub fn scrambled_word(ctx: &FieldCtx, len: usize, seed: u64) -> Word {
    let q = ctx.order();
    let mut state = seed
        .wrapping_mul(2_862_933_555_777_941_757)
        .wrapping_add(3037);
    let indices: Vec<u64> = (0..len)
        .map(|_| {
            state = state
                .wrapping_mul(6_364_136_223_846_793_005)
                .wrapping_add(1_442_695_040_888_963_407);
            (state >> 33) % q
        })
        .collect();
    Word::from_indices(ctx, &indices).expect("indices in range")
}
