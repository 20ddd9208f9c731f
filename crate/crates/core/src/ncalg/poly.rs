//! Words and noncommutative polynomials over a [`Context`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::Result;
use crate::laurent::LaurentPoly;

use super::Context;

/// A word over the alphabet of a context, stored as generator codes.
///
/// Codes are alphabet indices in generator order, so the derived
/// lexicographic order on code sequences is the word order induced by the
/// generator order. Words compare by length first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(SmallVec<[u16; 12]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn single(code: u16) -> Word {
        let mut w = SmallVec::new();
        w.push(code);
        Word(w)
    }

    pub fn from_codes(codes: &[u16]) -> Word {
        Word(SmallVec::from_slice(codes))
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    /// Replace the two letters at `pos`, `pos + 1` by `mid`.
    pub(crate) fn splice_pair(&self, pos: usize, mid: &Word) -> Word {
        let mut w = SmallVec::with_capacity(self.0.len() - 2 + mid.0.len());
        w.extend_from_slice(&self.0[..pos]);
        w.extend_from_slice(&mid.0);
        w.extend_from_slice(&self.0[pos + 2..]);
        Word(w)
    }

    /// True if letters are nondecreasing in the generator order.
    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1])
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A finite Laurent-coefficient combination of words, tied to a context.
///
/// The term map drops zero coefficients eagerly and iterates in the canonical
/// (degree, then word-lexicographic) order, so equal values have identical
/// representations. Construction does not normalize; call
/// [`NcPoly::nf`] to reduce modulo the context's relations.
#[derive(Debug, Clone)]
pub struct NcPoly {
    ctx: Arc<Context>,
    terms: BTreeMap<Word, LaurentPoly>,
}

impl NcPoly {
    pub fn zero(ctx: &Arc<Context>) -> NcPoly {
        NcPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<Context>) -> NcPoly {
        NcPoly::scalar(ctx, LaurentPoly::one(&ctx.params))
    }

    pub fn scalar(ctx: &Arc<Context>, c: LaurentPoly) -> NcPoly {
        let mut p = NcPoly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Word::empty(), c);
        }
        p
    }

    pub fn gen(ctx: &Arc<Context>, code: u16) -> NcPoly {
        assert!(
            (code as usize) < ctx.gens.len(),
            "generator code out of range"
        );
        let mut p = NcPoly::zero(ctx);
        p.terms
            .insert(Word::single(code), LaurentPoly::one(&ctx.params));
        p
    }

    pub fn word(ctx: &Arc<Context>, codes: &[u16], coef: LaurentPoly) -> NcPoly {
        let mut p = NcPoly::zero(ctx);
        if !coef.is_zero() {
            p.terms.insert(Word::from_codes(codes), coef);
        }
        p
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    /// The coefficient of the empty word, if the polynomial is scalar.
    pub fn as_scalar(&self) -> Option<&LaurentPoly> {
        if self.terms.len() == 1 {
            let (w, c) = self.terms.iter().next().unwrap();
            if w.is_empty() {
                return Some(c);
            }
        }
        None
    }

    pub(crate) fn insert_term(&mut self, w: Word, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(&c).expect("coefficient space mismatch");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn from_terms(ctx: &Arc<Context>, terms: BTreeMap<Word, LaurentPoly>) -> NcPoly {
        NcPoly {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub(crate) fn take_terms(self) -> BTreeMap<Word, LaurentPoly> {
        self.terms
    }

    pub fn checked_add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.ctx.check_compatible(&other.ctx)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.ctx.check_compatible(&other.ctx)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_term(w.clone(), c.negated());
        }
        Ok(out)
    }

    /// Free product: words concatenate, coefficients multiply. Not normalized.
    pub fn checked_mul(&self, other: &NcPoly) -> Result<NcPoly> {
        self.ctx.check_compatible(&other.ctx)?;
        let mut out = NcPoly::zero(&self.ctx);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.insert_term(wa.concat(wb), ca.checked_mul(cb)?);
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &LaurentPoly) -> NcPoly {
        let mut out = NcPoly::zero(&self.ctx);
        for (w, k) in &self.terms {
            out.insert_term(
                w.clone(),
                k.checked_mul(c).expect("coefficient space mismatch"),
            );
        }
        out
    }

    pub fn negated(&self) -> NcPoly {
        NcPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.negated()))
                .collect(),
        }
    }

    /// Normal form under the context's rules (leftmost-innermost strategy).
    pub fn nf(&self) -> Result<NcPoly> {
        self.ctx.normal_form(self)
    }
}

impl PartialEq for NcPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for NcPoly {}

macro_rules! nc_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &NcPoly {
            type Output = NcPoly;
            fn $method(self, rhs: &NcPoly) -> NcPoly {
                self.$checked(rhs).expect("algebra context mismatch")
            }
        }
        impl $trait for NcPoly {
            type Output = NcPoly;
            fn $method(self, rhs: NcPoly) -> NcPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

nc_binop!(Add, add, checked_add);
nc_binop!(Sub, sub, checked_sub);
nc_binop!(Mul, mul, checked_mul);

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.negated()
    }
}

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.negated()
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut pieces = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            pieces.push(render_term(&self.ctx, w, c));
        }
        write!(f, "{}", pieces.join(" + "))
    }
}

/// Render one `coef * word` term. The coefficient is inlined when it is a
/// positive monomial, omitted when it is 1, and parenthesized otherwise, so
/// output round-trips through the parser.
fn render_term(ctx: &Context, w: &Word, c: &LaurentPoly) -> String {
    let word_str = render_word(ctx, w);
    if w.is_empty() {
        return if positive_monomial(c) {
            c.to_string()
        } else {
            format!("({c})")
        };
    }
    if c.is_one() {
        return word_str;
    }
    if positive_monomial(c) {
        format!("{c}*{word_str}")
    } else {
        format!("({c})*{word_str}")
    }
}

fn positive_monomial(c: &LaurentPoly) -> bool {
    match c.as_monomial() {
        Some((_, k)) => num::Signed::is_positive(k),
        None => false,
    }
}

fn render_word(ctx: &Context, w: &Word) -> String {
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j + 1 < letters.len() && letters[j + 1] == letters[i] {
            j += 1;
        }
        let name = ctx.gen_name(letters[i]);
        if j > i {
            parts.push(format!("{}^{}", name, j - i + 1));
        } else {
            parts.push(name.to_string());
        }
        i = j + 1;
    }
    parts.join("*")
}
