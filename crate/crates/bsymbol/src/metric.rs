//! Words over a finite field and the b-symbol metric.
//!
//! A width-b read of a length-n word returns, at each position i, the window
//! of b consecutive symbols starting there, with wraparound. The b-weight of
//! a word is the number of positions whose window is not all zero, and the
//! b-distance between two words is the b-weight of their difference. Width 1
//! recovers the Hamming metric.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// A fixed-length word over one field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    field_order: u64,
    symbols: Vec<FieldElement>,
}

impl Word {
    pub fn new(ctx: &FieldCtx, symbols: Vec<FieldElement>) -> Result<Word> {
        for &s in &symbols {
            if s.index() >= ctx.order() {
                return Err(Error::ElementOutOfRange {
                    index: s.index(),
                    order: ctx.order(),
                });
            }
        }
        Ok(Word {
            field_order: ctx.order(),
            symbols,
        })
    }

    pub fn from_indices(ctx: &FieldCtx, indices: &[u64]) -> Result<Word> {
        let symbols = indices
            .iter()
            .map(|&i| ctx.element(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word {
            field_order: ctx.order(),
            symbols,
        })
    }

    pub(crate) fn raw(field_order: u64, symbols: Vec<FieldElement>) -> Word {
        Word {
            field_order,
            symbols,
        }
    }

    pub fn zero(ctx: &FieldCtx, n: usize) -> Word {
        Word {
            field_order: ctx.order(),
            symbols: vec![FieldElement::ZERO; n],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn field_order(&self) -> u64 {
        self.field_order
    }

    pub fn symbols(&self) -> &[FieldElement] {
        &self.symbols
    }

    pub fn get(&self, i: usize) -> FieldElement {
        self.symbols[i]
    }

    pub fn is_zero(&self) -> bool {
        self.symbols.iter().all(|s| s.is_zero())
    }

    pub fn hamming_weight(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn add(&self, other: &Word, ctx: &FieldCtx) -> Result<Word> {
        self.check_pair(other, ctx)?;
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(&a, &b)| ctx.add(a, b))
            .collect();
        Ok(Word {
            field_order: self.field_order,
            symbols,
        })
    }

    pub fn sub(&self, other: &Word, ctx: &FieldCtx) -> Result<Word> {
        self.check_pair(other, ctx)?;
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(&a, &b)| ctx.sub(a, b))
            .collect();
        Ok(Word {
            field_order: self.field_order,
            symbols,
        })
    }

    pub fn scale(&self, lambda: FieldElement, ctx: &FieldCtx) -> Result<Word> {
        self.check_ctx(ctx)?;
        let symbols = self.symbols.iter().map(|&a| ctx.mul(a, lambda)).collect();
        Ok(Word {
            field_order: self.field_order,
            symbols,
        })
    }

    /// Cyclic left rotation by k positions.
    pub fn rotated_left(&self, k: usize) -> Word {
        let n = self.symbols.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut symbols = Vec::with_capacity(n);
        symbols.extend_from_slice(&self.symbols[k..]);
        symbols.extend_from_slice(&self.symbols[..k]);
        Word {
            field_order: self.field_order,
            symbols,
        }
    }

    /// Space separated canonical indices.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        parts.join(" ")
    }

    pub fn parse_line(ctx: &FieldCtx, line: &str) -> Result<Word> {
        let mut symbols = Vec::new();
        for tok in line.split_whitespace() {
            let idx: u64 = tok.parse().map_err(|_| Error::ElementOutOfRange {
                index: u64::MAX,
                order: ctx.order(),
            })?;
            symbols.push(ctx.element(idx)?);
        }
        Ok(Word {
            field_order: ctx.order(),
            symbols,
        })
    }

    fn check_ctx(&self, ctx: &FieldCtx) -> Result<()> {
        if self.field_order != ctx.order() {
            return Err(Error::FieldMismatch {
                left: self.field_order,
                right: ctx.order(),
            });
        }
        Ok(())
    }

    fn check_pair(&self, other: &Word, ctx: &FieldCtx) -> Result<()> {
        self.check_ctx(ctx)?;
        if self.field_order != other.field_order {
            return Err(Error::FieldMismatch {
                left: self.field_order,
                right: other.field_order,
            });
        }
        if self.symbols.len() != other.symbols.len() {
            return Err(Error::LengthMismatch {
                left: self.symbols.len(),
                right: other.symbols.len(),
            });
        }
        Ok(())
    }
}

/// The width-b read of a word: one window of b symbols per position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BProfile {
    b: usize,
    len: usize,
    data: Vec<FieldElement>,
}

impl BProfile {
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The window starting at position i.
    pub fn window(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.b..(i + 1) * self.b]
    }

    pub fn nonzero_windows(&self) -> usize {
        (0..self.len)
            .filter(|&i| self.window(i).iter().any(|s| !s.is_zero()))
            .count()
    }
}

fn check_width(b: usize, n: usize) -> Result<()> {
    if b < 1 || n < 2 || b > n - 1 {
        return Err(Error::WindowOutOfRange { b, len: n });
    }
    Ok(())
}

/// Materializes all n windows of width b, wrapping around the end.
pub fn pi_b(x: &Word, b: usize) -> Result<BProfile> {
    let n = x.len();
    check_width(b, n)?;
    let mut data = Vec::with_capacity(n * b);
    for i in 0..n {
        for j in 0..b {
            data.push(x.get((i + j) % n));
        }
    }
    Ok(BProfile { b, len: n, data })
}

/// Number of positions whose width-b window contains a nonzero symbol.
///
/// Runs in O(n + b) by sliding the window instead of materializing the
/// profile.
pub fn b_weight(x: &Word, b: usize) -> Result<usize> {
    let n = x.len();
    check_width(b, n)?;
    let mut in_window = x.symbols[..b].iter().filter(|s| !s.is_zero()).count();
    let mut weight = usize::from(in_window > 0);
    for i in 1..n {
        if !x.symbols[i - 1].is_zero() {
            in_window -= 1;
        }
        if !x.symbols[(i + b - 1) % n].is_zero() {
            in_window += 1;
        }
        weight += usize::from(in_window > 0);
    }
    Ok(weight)
}

/// b-distance: the b-weight of the difference.
pub fn b_distance(ctx: &FieldCtx, x: &Word, y: &Word, b: usize) -> Result<usize> {
    b_weight(&x.sub(y, ctx)?, b)
}
