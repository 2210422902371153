//! Trace codes over GF(q) cut out of GF(q^s).
//!
//! Fix q = p^f, an extension GF(Q) with Q = q^s, and a divisor e of Q - 1.
//! Let alpha = gamma^e, of order n = (Q - 1)/e. Each beta in GF(Q) yields the
//! codeword (T(beta), T(beta alpha), ..., T(beta alpha^(n-1))) where T is the
//! trace into GF(q). The resulting code is cyclic, linear over GF(q) of
//! dimension s, and has exactly Q distinct codewords.
//!
//! The shortened variant keeps the first (q^s - 1)/(q - 1) coordinates. It
//! requires e to divide q - 1 and is closed under the twisted rotation that
//! multiplies the wrapped symbol by delta = alpha^(shortened length).

use std::collections::BTreeMap;
use std::io::Write;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{ord_mod, FieldCtx, FieldElement, Poly};
use crate::metric::Word;

/// Which coordinate set a code exposes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    /// All n coordinates; closed under plain rotation.
    Full,
    /// The first (q^s - 1)/(q - 1) coordinates; closed under the twisted
    /// rotation.
    Shortened,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Shortened => "shortened",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Variant, String> {
        match s {
            "full" => Ok(Variant::Full),
            "shortened" => Ok(Variant::Shortened),
            other => Err(format!(
                "unknown variant '{other}', expected full or shortened"
            )),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Derived parameters of one code family member.
#[derive(Clone, Debug)]
pub struct CodeParams {
    pub p: u64,
    pub f: u32,
    /// Alphabet size q = p^f.
    pub q: u64,
    /// Extension degree of GF(Q) over GF(q); also the code dimension.
    pub s: u32,
    /// Q = q^s, the extension order and the number of codewords.
    pub ext_order: u64,
    pub e: u64,
    /// Full length n = (Q - 1)/e.
    pub n: u64,
    /// gcd(e, (Q - 1)/(q - 1)).
    pub e_prime: u64,
    /// l = (q - 1)/e when e divides q - 1; the full code is then l copies of
    /// the shortened coordinate set up to scaling.
    pub l: Option<u64>,
    /// Shortened length (Q - 1)/(q - 1).
    pub shortened_len: u64,
    /// alpha = gamma^e, of multiplicative order n.
    pub alpha: FieldElement,
    /// delta = alpha^shortened_len, the twist constant; lies in GF(q).
    pub delta: FieldElement,
    /// True exactly when e_prime = 1, equivalently when e divides q - 1 and
    /// gcd(e, s) = 1. The width-b distances are then known in closed form for
    /// 2 <= b <= s - 1 and the code is equidistant at those widths.
    pub predictions_apply: bool,
    /// Predicted full-code b-distance Q(q^b - 1)/(e q^b) per width, filled
    /// only when `predictions_apply`.
    pub predicted_db: BTreeMap<u32, u64>,
}

impl CodeParams {
    /// Validates and derives everything from (p, f, s, e). The context must
    /// be GF(p^(f s)).
    pub fn derive(ctx: &FieldCtx, f: u32, s: u32, e: u64) -> Result<CodeParams> {
        assert!(f >= 1, "subfield degree must be positive");
        let p = ctx.characteristic();
        if s < 2 {
            return Err(Error::TrivialExtension(s));
        }
        let m = f.checked_mul(s).expect("extension degree overflow");
        if ctx.extension_degree() != m {
            return Err(Error::NotASubfieldTower {
                sub: pow_sat_u64(p, f),
                order: ctx.order(),
            });
        }
        let ext_order = ctx.order();
        let group = ext_order - 1;
        if e == 0 || !group.is_multiple_of(e) {
            return Err(Error::EDoesNotDivide { e, group });
        }
        let q = pow_u64(p, f);
        let n = group / e;
        let ord = if n == 1 { 1 } else { ord_mod(q, n)? };
        if ord != u64::from(s) {
            return Err(Error::AlphaNotGenerating {
                q,
                expected: s,
                actual: ord as u32,
            });
        }

        let shortened_len = group / (q - 1);
        let e_prime = e.gcd(&shortened_len);
        let l = if (q - 1).is_multiple_of(e) {
            Some((q - 1) / e)
        } else {
            None
        };
        let alpha = ctx.pow(ctx.gamma(), e);
        debug_assert_eq!(ctx.multiplicative_order(alpha).unwrap(), n);
        let delta = ctx.pow(alpha, shortened_len);
        debug_assert_eq!(ctx.pow(delta, q - 1), FieldElement::ONE);

        let predictions_apply = e_prime == 1;
        let mut predicted_db = BTreeMap::new();
        if predictions_apply {
            for b in 2..s {
                let qb = pow_u128(q, b);
                let num = u128::from(ext_order) * (qb - 1);
                let den = u128::from(e) * qb;
                debug_assert_eq!(num % den, 0);
                predicted_db.insert(b, (num / den) as u64);
            }
        }

        Ok(CodeParams {
            p,
            f,
            q,
            s,
            ext_order,
            e,
            n,
            e_prime,
            l,
            shortened_len,
            alpha,
            delta,
            predictions_apply,
            predicted_db,
        })
    }

    /// Number of codewords.
    pub fn code_size(&self) -> u64 {
        self.ext_order
    }

    /// Code dimension over GF(q).
    pub fn dimension(&self) -> u32 {
        self.s
    }

    pub fn length(&self, variant: Variant) -> u64 {
        match variant {
            Variant::Full => self.n,
            Variant::Shortened => self.shortened_len,
        }
    }

    /// Closed-form b-distance for the given variant, when available. The
    /// shortened value is the full one divided by l.
    pub fn predicted_db_for(&self, variant: Variant, b: u32) -> Option<u64> {
        let full = *self.predicted_db.get(&b)?;
        match variant {
            Variant::Full => Some(full),
            Variant::Shortened => self.l.map(|l| full / l),
        }
    }

    /// Closed-form count of all-zero width-b windows in every nonzero
    /// codeword, when available: (Q - q^b)/(e q^b) for the full variant,
    /// divided by l for the shortened one.
    pub fn predicted_zero_windows(&self, variant: Variant, b: u32) -> Option<u64> {
        if !self.predictions_apply || b < 2 || b >= self.s {
            return None;
        }
        let qb = pow_u128(self.q, b);
        let num = u128::from(self.ext_order) - qb;
        let den = u128::from(self.e) * qb;
        debug_assert_eq!(num % den, 0);
        let full = (num / den) as u64;
        match variant {
            Variant::Full => Some(full),
            Variant::Shortened => {
                let l = self.l?;
                debug_assert_eq!(full % l, 0);
                Some(full / l)
            }
        }
    }
}

fn pow_u64(base: u64, exp: u32) -> u64 {
    (0..exp).fold(1u64, |acc, _| acc * base)
}

fn pow_sat_u64(base: u64, exp: u32) -> u64 {
    let mut acc = 1u128;
    for _ in 0..exp {
        acc = acc.saturating_mul(u128::from(base));
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

fn pow_u128(base: u64, exp: u32) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc * u128::from(base))
}

/// A concrete trace code, ready to enumerate.
#[derive(Clone, Debug)]
pub struct Code {
    ctx: FieldCtx,
    params: CodeParams,
    variant: Variant,
    /// Trace into GF(q) of every field element, indexed by canonical index.
    trace_table: Vec<FieldElement>,
}

impl Code {
    /// Builds the field, derives the parameters and precomputes the trace
    /// table.
    pub fn build(p: u64, f: u32, s: u32, e: u64, variant: Variant) -> Result<Code> {
        let m = f.checked_mul(s).expect("extension degree overflow");
        let ctx = FieldCtx::build(p, m)?;
        Code::from_field(ctx, f, s, e, variant)
    }

    /// Same as [`Code::build`] but reuses an already built field.
    pub fn from_field(ctx: FieldCtx, f: u32, s: u32, e: u64, variant: Variant) -> Result<Code> {
        let params = CodeParams::derive(&ctx, f, s, e)?;
        if variant == Variant::Shortened && params.l.is_none() {
            return Err(Error::ENotDividingQMinus1 { e, q: params.q });
        }
        let q = params.q;
        let trace_table = ctx
            .elements()
            .map(|x| ctx.trace(x, q).expect("tower validated"))
            .collect();
        Ok(Code {
            ctx,
            params,
            variant,
            trace_table,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn length(&self) -> u64 {
        self.params.length(self.variant)
    }

    /// Trace of x into GF(q), via the precomputed table.
    pub fn trace(&self, x: FieldElement) -> FieldElement {
        self.trace_table[x.index() as usize]
    }

    /// The codeword attached to beta, in this code's variant.
    pub fn codeword(&self, beta: FieldElement) -> Word {
        self.window_codeword(beta, self.length())
    }

    /// The full-length codeword attached to beta, regardless of variant.
    pub fn full_codeword(&self, beta: FieldElement) -> Word {
        self.window_codeword(beta, self.params.n)
    }

    fn window_codeword(&self, beta: FieldElement, len: u64) -> Word {
        let order = self.ctx.order();
        if beta.is_zero() {
            return Word::raw(order, vec![FieldElement::ZERO; len as usize]);
        }
        let group = order - 1;
        let t = self.ctx.log(beta).expect("nonzero");
        let e = self.params.e;
        let symbols = (0..len)
            .map(|i| {
                let exp = (t + i * e) % group;
                self.trace_table[self.ctx.antilog(exp).index() as usize]
            })
            .collect();
        Word::raw(order, symbols)
    }

    /// All beta values in enumeration order: zero first, then powers of
    /// gamma by increasing exponent.
    pub fn betas(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let group = self.ctx.order() - 1;
        std::iter::once(FieldElement::ZERO).chain((0..group).map(|i| self.ctx.antilog(i)))
    }

    /// All codewords, keyed by beta, in the fixed enumeration order.
    pub fn codewords(&self) -> impl Iterator<Item = (FieldElement, Word)> + '_ {
        self.betas().map(|beta| (beta, self.codeword(beta)))
    }

    /// Minimal polynomial over GF(q) of the inverse of alpha; for the full
    /// cyclic code this is the parity check polynomial, monic of degree s.
    pub fn parity_check_poly(&self) -> Poly {
        let inv = self.ctx.inv(self.params.alpha).expect("alpha is nonzero");
        self.ctx
            .minimal_polynomial(inv, self.params.q)
            .expect("tower validated")
    }

    /// Writes the codeword listing: a header line
    /// `# p f s e variant length` followed by one word per line in
    /// enumeration order, symbols as space separated canonical indices.
    pub fn write_dump<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(
            out,
            "# {} {} {} {} {} {}",
            self.params.p,
            self.params.f,
            self.params.s,
            self.params.e,
            self.variant,
            self.length()
        )?;
        for (_, word) in self.codewords() {
            writeln!(out, "{}", word.to_line())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::b_weight;

    #[test]
    fn binary_full_cycle_params() {
        let code = Code::build(2, 1, 4, 1, Variant::Full).unwrap();
        let p = code.params();
        assert_eq!((p.q, p.s, p.ext_order, p.n), (2, 4, 16, 15));
        assert_eq!(p.e_prime, 1);
        assert_eq!(p.l, Some(1));
        assert_eq!(p.shortened_len, 15);
        assert!(p.predictions_apply);
        assert_eq!(p.predicted_db.get(&2), Some(&12));
        assert_eq!(p.predicted_db.get(&3), Some(&14));
        assert_eq!(p.predicted_db.get(&4), None);
        assert_eq!(p.predicted_zero_windows(Variant::Full, 2), Some(3));
        assert_eq!(p.predicted_zero_windows(Variant::Full, 3), Some(1));
        assert_eq!(code.length(), 15);
    }

    #[test]
    fn derive_rejections() {
        let ctx16 = FieldCtx::build(2, 4).unwrap();
        assert!(matches!(
            CodeParams::derive(&ctx16, 1, 4, 7),
            Err(Error::EDoesNotDivide { e: 7, group: 15 })
        ));
        assert!(matches!(
            CodeParams::derive(&ctx16, 1, 1, 1),
            Err(Error::TrivialExtension(1))
        ));
        assert!(matches!(
            CodeParams::derive(&ctx16, 1, 4, 5),
            Err(Error::AlphaNotGenerating {
                q: 2,
                expected: 4,
                actual: 2
            })
        ));
        assert!(matches!(
            CodeParams::derive(&ctx16, 2, 4, 1),
            Err(Error::NotASubfieldTower { .. })
        ));
        assert!(matches!(
            CodeParams::derive(&ctx16, 1, 4, 15),
            Err(Error::AlphaNotGenerating { actual: 1, .. })
        ));
        assert!(matches!(
            Code::build(2, 1, 4, 3, Variant::Shortened),
            Err(Error::ENotDividingQMinus1 { e: 3, q: 2 })
        ));
    }

    #[test]
    fn codeword_matches_direct_trace() {
        let code = Code::build(3, 1, 3, 2, Variant::Full).unwrap();
        let ctx = code.field();
        let alpha = code.params().alpha;
        for beta in code.betas().take(10) {
            let word = code.codeword(beta);
            for i in 0..word.len() {
                let point = ctx.mul(beta, ctx.pow(alpha, i as u64));
                assert_eq!(word.get(i), ctx.trace(point, 3).unwrap());
            }
        }
    }

    #[test]
    fn codewords_are_distinct_and_linear() {
        let code = Code::build(3, 1, 2, 2, Variant::Full).unwrap();
        let ctx = code.field();
        let words: Vec<(FieldElement, Word)> = code.codewords().collect();
        assert_eq!(words.len(), 9);
        let set: std::collections::HashSet<&Word> = words.iter().map(|(_, w)| w).collect();
        assert_eq!(set.len(), 9);
        for (b1, w1) in &words {
            for (b2, w2) in &words {
                let sum = w1.add(w2, ctx).unwrap();
                assert_eq!(sum, code.codeword(ctx.add(*b1, *b2)));
            }
        }
    }

    #[test]
    fn full_code_is_rotation_closed() {
        let code = Code::build(2, 1, 4, 3, Variant::Full).unwrap();
        let ctx = code.field();
        let alpha = code.params().alpha;
        for beta in code.betas() {
            let rotated = code.codeword(beta).rotated_left(1);
            assert_eq!(rotated, code.codeword(ctx.mul(beta, alpha)));
        }
    }

    #[test]
    fn shortened_code_shape() {
        let code = Code::build(5, 1, 3, 2, Variant::Shortened).unwrap();
        let p = code.params();
        assert_eq!(p.n, 62);
        assert_eq!(p.shortened_len, 31);
        assert_eq!(p.l, Some(2));
        assert_eq!(code.length(), 31);
        assert_eq!(p.delta.index(), 4);
        let beta = code.field().gamma();
        assert_eq!(code.codeword(beta).len(), 31);
        assert_eq!(code.full_codeword(beta).len(), 62);
        // twisted rotation stays inside the code
        let ctx = code.field();
        let w = code.codeword(beta);
        let mut sym: Vec<FieldElement> = w.symbols()[1..].to_vec();
        sym.push(ctx.mul(w.get(0), p.delta));
        let twisted = Word::new(ctx, sym).unwrap();
        assert_eq!(twisted, code.codeword(ctx.mul(beta, p.alpha)));
    }

    #[test]
    fn parity_check_polynomial() {
        let code = Code::build(2, 1, 4, 1, Variant::Full).unwrap();
        let h = code.parity_check_poly();
        let idx: Vec<u64> = h.coeffs().iter().map(|c| c.index()).collect();
        assert_eq!(idx, vec![1, 0, 0, 1, 1]);
        let ctx = code.field();
        let alpha_inv = ctx.inv(code.params().alpha).unwrap();
        assert_eq!(h.eval(ctx, alpha_inv), FieldElement::ZERO);
        assert_eq!(h.degree(), Some(4));
    }

    #[test]
    fn predicted_distances_for_shortened() {
        let code = Code::build(5, 1, 3, 2, Variant::Shortened).unwrap();
        let p = code.params();
        assert_eq!(p.predicted_db_for(Variant::Full, 2), Some(60));
        assert_eq!(p.predicted_db_for(Variant::Shortened, 2), Some(30));
        assert_eq!(p.predicted_zero_windows(Variant::Full, 2), Some(2));
        assert_eq!(p.predicted_zero_windows(Variant::Shortened, 2), Some(1));
        assert_eq!(p.predicted_db_for(Variant::Full, 3), None);
    }

    #[test]
    fn wide_windows_cover_everything() {
        // once the window width reaches the extension degree, every window
        // of a nonzero codeword contains a nonzero symbol
        let code = Code::build(2, 1, 4, 1, Variant::Full).unwrap();
        for beta in code.betas().skip(1) {
            let w = code.codeword(beta);
            for b in 4..w.len() {
                assert_eq!(b_weight(&w, b).unwrap(), w.len());
            }
        }
    }

    #[test]
    fn dump_format() {
        let code = Code::build(3, 1, 2, 2, Variant::Full).unwrap();
        let mut buf = Vec::new();
        code.write_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# 3 1 2 2 full 4"));
        assert_eq!(lines.next(), Some("0 0 0 0"));
        assert_eq!(lines.clone().count(), 8);
        let ctx = code.field();
        for line in lines {
            assert!(Word::parse_line(ctx, line).is_ok());
        }
    }
}
