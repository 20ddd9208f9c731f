//! Exact multivariate Laurent polynomials over the rationals.
//!
//! Every coefficient appearing in the algebras of this crate lives here: a
//! [`LaurentPoly`] is a finite sum of monomials `c * x1^e1 * ... * xk^ek`
//! with `c` a [`Rational`] and signed integer exponents over a fixed,
//! ordered [`ParamSpace`]. The zero polynomial is the empty term map and no
//! stored coefficient is ever zero, so equality of values is equality of
//! representations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar.
pub type Rational = BigRational;

/// Exponent vector: one signed entry per parameter of the space.
pub type ExpVec = SmallVec<[i32; 4]>;

/// An ordered list of parameter symbols, e.g. `[q]` or `[l, p12, p13, p23]`.
///
/// Inverse parameters are never stored: `p21` is represented as `p12^-1`
/// wherever it arises, so multiplicative antisymmetry is structural.
#[derive(Debug, PartialEq, Eq)]
pub struct ParamSpace {
    names: Vec<String>,
}

impl ParamSpace {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<ParamSpace> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate parameter name {n}");
        }
        Arc::new(ParamSpace { names })
    }

    /// The one-parameter space `[q]`.
    pub fn q() -> Arc<ParamSpace> {
        ParamSpace::new(vec!["q"])
    }

    /// The multiparameter space `[l, p12, p13, ..., p{n-1}{n}]` for dimension `n`.
    pub fn multiparam(n: usize) -> Arc<ParamSpace> {
        let mut names = vec!["l".to_string()];
        for i in 1..=n {
            for j in (i + 1)..=n {
                names.push(format!("p{i}{j}"));
            }
        }
        ParamSpace::new(names)
    }

    /// The combined space `[q, p12, ..., p{n-1}{n}]` used by the twist check.
    pub fn twist(n: usize) -> Arc<ParamSpace> {
        let mut names = vec!["q".to_string()];
        for i in 1..=n {
            for j in (i + 1)..=n {
                names.push(format!("p{i}{j}"));
            }
        }
        ParamSpace::new(names)
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn describe(&self) -> String {
        self.names.join(", ")
    }
}

/// A multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, compared
/// lexicographically; that order is the canonical term order, so two equal
/// values always have identical representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    space: Arc<ParamSpace>,
    terms: BTreeMap<ExpVec, Rational>,
}

fn same_space(a: &LaurentPoly, b: &LaurentPoly) -> Result<()> {
    if Arc::ptr_eq(&a.space, &b.space) || a.space == b.space {
        Ok(())
    } else {
        Err(Error::ParamSpaceMismatch {
            left: a.space.describe(),
            right: b.space.describe(),
        })
    }
}

impl LaurentPoly {
    pub fn zero(space: &Arc<ParamSpace>) -> LaurentPoly {
        LaurentPoly {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<ParamSpace>, c: Rational) -> LaurentPoly {
        let mut p = LaurentPoly::zero(space);
        if !c.is_zero() {
            p.terms.insert(ExpVec::from_elem(0, space.arity()), c);
        }
        p
    }

    pub fn one(space: &Arc<ParamSpace>) -> LaurentPoly {
        LaurentPoly::constant(space, Rational::one())
    }

    pub fn from_int(space: &Arc<ParamSpace>, n: i64) -> LaurentPoly {
        LaurentPoly::constant(space, Rational::from(BigInt::from(n)))
    }

    /// The monomial `c * prod params[i]^exps[i]`.
    pub fn monomial(space: &Arc<ParamSpace>, c: Rational, exps: &[i32]) -> LaurentPoly {
        assert_eq!(exps.len(), space.arity(), "exponent vector width mismatch");
        let mut p = LaurentPoly::zero(space);
        if !c.is_zero() {
            p.terms.insert(SmallVec::from_slice(exps), c);
        }
        p
    }

    /// The parameter `name` to the power `exp`.
    pub fn param_pow(space: &Arc<ParamSpace>, name: &str, exp: i32) -> LaurentPoly {
        let idx = space
            .index_of(name)
            .unwrap_or_else(|| panic!("parameter {name} not in space [{}]", space.describe()));
        let mut exps = vec![0; space.arity()];
        exps[idx] = exp;
        LaurentPoly::monomial(space, Rational::one(), &exps)
    }

    pub fn param(space: &Arc<ParamSpace>, name: &str) -> LaurentPoly {
        LaurentPoly::param_pow(space, name, 1)
    }

    pub fn space(&self) -> &Arc<ParamSpace> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &Rational)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, e: ExpVec, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        same_space(self, other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        same_space(self, other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        same_space(self, other)?;
        let mut out = LaurentPoly::zero(&self.space);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: ExpVec = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.insert_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> LaurentPoly {
        LaurentPoly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.space);
        }
        LaurentPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Integer power. Negative exponents require an invertible monomial base.
    pub fn pow(&self, n: i32) -> Result<LaurentPoly> {
        if n == 0 {
            return Ok(LaurentPoly::one(&self.space));
        }
        if n < 0 {
            let inv = self.inverted_monomial()?;
            return inv.pow(-n);
        }
        let mut acc = LaurentPoly::one(&self.space);
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// If this is a single term, return its exponent vector and coefficient.
    pub fn as_monomial(&self) -> Option<(&ExpVec, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of an invertible monomial `c*m`: `c^-1 * m^-1`.
    pub fn inverted_monomial(&self) -> Result<LaurentPoly> {
        let (e, c) = self
            .as_monomial()
            .ok_or_else(|| Error::NotAMonomial(self.to_string()))?;
        let inv_e: ExpVec = e.iter().map(|x| -x).collect();
        let inv_c = Rational::one() / c;
        let mut p = LaurentPoly::zero(&self.space);
        p.terms.insert(inv_e, inv_c);
        Ok(p)
    }

    /// Exact division by an invertible monomial.
    pub fn div_monomial(&self, m: &LaurentPoly) -> Result<LaurentPoly> {
        self.checked_mul(&m.inverted_monomial()?)
    }

    /// Homomorphic substitution of every parameter.
    ///
    /// `bindings[i]` is the image of parameter `i` in `target`. A parameter
    /// that occurs with a negative exponent anywhere in `self` must be bound
    /// to an invertible monomial.
    pub fn specialize(
        &self,
        bindings: &[LaurentPoly],
        target: &Arc<ParamSpace>,
    ) -> Result<LaurentPoly> {
        if bindings.len() != self.space.arity() {
            return Err(Error::MissingBinding {
                param: self
                    .space
                    .names()
                    .get(bindings.len())
                    .cloned()
                    .unwrap_or_default(),
            });
        }
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if exp < 0 && !bindings[i].is_monomial() {
                    return Err(Error::NonInvertibleBinding {
                        param: self.space.names()[i].clone(),
                    });
                }
                term = term.checked_mul(&bindings[i].pow(exp)?)?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Specialize by parameter name; unnamed parameters map to themselves
    /// when the target space contains a parameter of the same name.
    pub fn specialize_by_name(
        &self,
        named: &[(&str, LaurentPoly)],
        target: &Arc<ParamSpace>,
    ) -> Result<LaurentPoly> {
        let mut bindings = Vec::with_capacity(self.space.arity());
        'outer: for name in self.space.names() {
            for (n, v) in named {
                if n == name {
                    bindings.push(v.clone());
                    continue 'outer;
                }
            }
            if target.index_of(name).is_some() {
                bindings.push(LaurentPoly::param(target, name));
            } else {
                return Err(Error::MissingBinding {
                    param: name.clone(),
                });
            }
        }
        self.specialize(&bindings, target)
    }

    /// Render one term into `out`; used by the canonical `Display`.
    fn fmt_term(&self, out: &mut String, e: &ExpVec, c: &Rational, first: bool) {
        let neg = c.is_negative();
        if first {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        for (i, &exp) in e.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            let name = &self.space.names()[i];
            if exp == 1 {
                factors.push(name.clone());
            } else {
                factors.push(format!("{name}^{exp}"));
            }
        }
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            self.fmt_term(&mut s, e, c, idx == 0);
        }
        write!(f, "{s}")
    }
}

macro_rules! laurent_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("parameter space mismatch")
            }
        }
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

laurent_binop!(Add, add, checked_add);
laurent_binop!(Sub, sub, checked_sub);
laurent_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negated()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_space() -> Arc<ParamSpace> {
        ParamSpace::q()
    }

    #[test]
    fn monomial_product_adds_exponents() {
        let s = q_space();
        let q = LaurentPoly::param(&s, "q");
        let qinv = LaurentPoly::param_pow(&s, "q", -1);
        assert!((q.clone() * qinv).is_one());
    }

    #[test]
    fn distributivity_on_commutator_coefficient() {
        // (q^-1 - q) * q^-2 = q^-3 - q^-1
        let s = q_space();
        let q = LaurentPoly::param(&s, "q");
        let qinv = LaurentPoly::param_pow(&s, "q", -1);
        let lhs = (qinv.clone() - q) * LaurentPoly::param_pow(&s, "q", -2);
        let rhs = LaurentPoly::param_pow(&s, "q", -3) - qinv;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn subtraction_gives_empty_term_map() {
        let s = q_space();
        let x = LaurentPoly::param_pow(&s, "q", 3) + LaurentPoly::from_int(&s, 7);
        let d = x.clone() - x;
        assert!(d.is_zero());
        assert_eq!(d.num_terms(), 0);
    }

    #[test]
    fn is_zero_distinguishes_exponent_vectors() {
        let s = q_space();
        let q = LaurentPoly::param(&s, "q");
        let qinv = LaurentPoly::param_pow(&s, "q", -1);
        assert!((q.clone() - q.clone()).is_zero());
        assert!(!(qinv - q).is_zero());
    }

    #[test]
    fn specialize_q_to_one_kills_commutator() {
        let s = q_space();
        let q = LaurentPoly::param(&s, "q");
        let qinv = LaurentPoly::param_pow(&s, "q", -1);
        let c = qinv - q;
        let got = c.specialize(&[LaurentPoly::one(&s)], &s).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn specialize_recovers_q_from_multiparam() {
        // q_21 = l * p12^-1 specializes to q under l := q^2, p12 := q.
        let mp = ParamSpace::multiparam(2);
        let qs = q_space();
        let q21 = LaurentPoly::param(&mp, "l")
            .checked_mul(&LaurentPoly::param_pow(&mp, "p12", -1))
            .unwrap();
        let q = LaurentPoly::param(&qs, "q");
        let q2 = LaurentPoly::param_pow(&qs, "q", 2);
        let got = q21.specialize(&[q2, q.clone()], &qs).unwrap();
        assert_eq!(got, q);
    }

    #[test]
    fn identity_bindings_leave_value_unchanged() {
        let mp = ParamSpace::multiparam(2);
        let v = LaurentPoly::param(&mp, "l") - LaurentPoly::param_pow(&mp, "p12", -2);
        let got = v.specialize_by_name(&[], &mp).unwrap();
        assert_eq!(got, v);
    }

    #[test]
    fn non_invertible_binding_is_rejected() {
        let s = q_space();
        let qinv = LaurentPoly::param_pow(&s, "q", -1);
        let bad = LaurentPoly::param(&s, "q") + LaurentPoly::one(&s);
        let err = qinv.specialize(&[bad], &s).unwrap_err();
        assert!(matches!(err, Error::NonInvertibleBinding { .. }));
    }

    #[test]
    fn mismatched_spaces_error() {
        let a = LaurentPoly::param(&q_space(), "q");
        let b = LaurentPoly::param(&ParamSpace::multiparam(2), "l");
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::ParamSpaceMismatch { .. })
        ));
    }

    #[test]
    fn negative_power_of_a_polynomial_is_rejected() {
        let s = q_space();
        let p = LaurentPoly::param(&s, "q") + LaurentPoly::one(&s);
        assert!(matches!(p.pow(-1), Err(Error::NotAMonomial(_))));
    }

    #[test]
    fn display_is_canonical() {
        let s = q_space();
        let q = LaurentPoly::param(&s, "q");
        let qinv = LaurentPoly::param_pow(&s, "q", -1);
        assert_eq!((qinv - q).to_string(), "q^-1 - q");
        assert_eq!(LaurentPoly::zero(&s).to_string(), "0");
        let half = LaurentPoly::constant(&s, Rational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(half.to_string(), "1/2");
    }
}
