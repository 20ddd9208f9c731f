//! Rule tables, context construction, and normal-form computation.
//!
//! Rules rewrite a two-letter pattern `a*b` into a combination of strictly
//! smaller words. Smaller means smaller in the (weight, length, lex) order,
//! where each generator carries a positive weight fixed at construction;
//! this per-rule certificate makes termination of the whole system a
//! construction-time fact rather than a runtime hope. Confluence is not
//! assumed: [`Context::confluence_probe`] checks it empirically by reducing
//! the same word under independent strategies.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, ParamSpace};

use super::poly::{NcPoly, Word};
use super::{Context, GeneratorId};

/// Default cap on live monomials per normal-form call.
pub const DEFAULT_MONOMIAL_CAP: usize = 10_000_000;

static GLOBAL_MONOMIAL_CAP: std::sync::atomic::AtomicUsize =
    std::sync::atomic::AtomicUsize::new(DEFAULT_MONOMIAL_CAP);

/// Override the cap used by newly built contexts (a front-end knob; contexts
/// built before the call keep their cap).
pub fn set_default_monomial_cap(cap: usize) {
    GLOBAL_MONOMIAL_CAP.store(cap, std::sync::atomic::Ordering::Relaxed);
}

pub fn default_monomial_cap() -> usize {
    GLOBAL_MONOMIAL_CAP.load(std::sync::atomic::Ordering::Relaxed)
}

/// Replacement side of a rule: a list of `(word, coefficient)` terms.
/// The empty list rewrites the pattern to zero.
pub type RuleRhs = Vec<(Word, LaurentPoly)>;

/// Redex selection strategy for [`Context::normal_form_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionStrategy {
    /// Rewrite the leftmost reducible pair first (the default).
    LeftmostInnermost,
    /// Rewrite the rightmost reducible pair first.
    RightmostInnermost,
    /// Pick a reducible pair with a seeded deterministic RNG.
    Seeded(u64),
}

/// Incrementally builds a [`Context`]: generators first, then rules, then a
/// completeness check at `finish`.
pub struct ContextBuilder {
    name: String,
    dim: usize,
    params: Arc<ParamSpace>,
    gens: Vec<GeneratorId>,
    gen_names: Vec<String>,
    weights: Vec<u64>,
    rules: HashMap<(u16, u16), RuleRhs>,
    check_bidegree: bool,
    cap: usize,
}

impl ContextBuilder {
    pub fn new(name: impl Into<String>, dim: usize, params: Arc<ParamSpace>) -> ContextBuilder {
        ContextBuilder {
            name: name.into(),
            dim,
            params,
            gens: Vec::new(),
            gen_names: Vec::new(),
            weights: Vec::new(),
            rules: HashMap::new(),
            check_bidegree: false,
            cap: default_monomial_cap(),
        }
    }

    /// Require every rule to preserve the (left, right) matrix bidegree.
    pub fn enforce_bidegree(mut self) -> ContextBuilder {
        self.check_bidegree = true;
        self
    }

    pub fn monomial_cap(mut self, cap: usize) -> ContextBuilder {
        self.cap = cap;
        self
    }

    /// Add a generator; insertion order is the generator order.
    pub fn add_gen(&mut self, id: GeneratorId, name: impl Into<String>, weight: u64) -> u16 {
        assert!(weight >= 1, "generator weights must be positive");
        let code = self.gens.len() as u16;
        self.gens.push(id);
        self.gen_names.push(name.into());
        self.weights.push(weight);
        code
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn params(&self) -> &Arc<ParamSpace> {
        &self.params
    }

    pub fn rule_for(&self, a: u16, b: u16) -> Option<&RuleRhs> {
        self.rules.get(&(a, b))
    }

    fn word_weight(&self, codes: &[u16]) -> u64 {
        codes.iter().map(|&c| self.weights[c as usize]).sum()
    }

    fn word_bidegree(&self, codes: &[u16]) -> Option<(Vec<i32>, Vec<i32>)> {
        let n = self.dim.max(1);
        let mut left = vec![0i32; n];
        let mut right = vec![0i32; n];
        for &code in codes {
            let ((li, ls), (ri, rs)) = self.gens[code as usize].bidegree()?;
            left[li] += ls;
            right[ri] += rs;
        }
        Some((left, right))
    }

    /// Install the rule `a*b -> rhs`, verifying the termination certificate
    /// and, when enabled, bidegree homogeneity.
    pub fn add_rule(&mut self, a: u16, b: u16, rhs: Vec<(Vec<u16>, LaurentPoly)>) -> Result<()> {
        let pattern = [a, b];
        let pw = self.word_weight(&pattern);
        for (word, coef) in &rhs {
            if coef.is_zero() {
                return Err(Error::Internal(format!(
                    "rule {}*{} has a zero replacement coefficient",
                    self.gen_names[a as usize], self.gen_names[b as usize]
                )));
            }
            let ww = self.word_weight(word);
            let smaller = match ww.cmp(&pw) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => match word.len().cmp(&pattern.len()) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => word.as_slice() < &pattern[..],
                },
            };
            if !smaller {
                return Err(Error::Internal(format!(
                    "termination certificate failed for rule {}*{}: replacement word is not smaller",
                    self.gen_names[a as usize], self.gen_names[b as usize]
                )));
            }
            if self.check_bidegree && self.word_bidegree(word) != self.word_bidegree(&pattern) {
                return Err(Error::Internal(format!(
                    "rule {}*{} is not bidegree-homogeneous",
                    self.gen_names[a as usize], self.gen_names[b as usize]
                )));
            }
        }
        let rhs: RuleRhs = rhs
            .into_iter()
            .map(|(w, c)| (Word::from_codes(&w), c))
            .collect();
        if self.rules.insert((a, b), rhs).is_some() {
            return Err(Error::Internal(format!(
                "duplicate rule for pair {}*{}",
                self.gen_names[a as usize], self.gen_names[b as usize]
            )));
        }
        Ok(())
    }

    /// Declare `a*b -> coef * b*a` (used for q-commutations and free commutes).
    pub fn add_swap_rule(&mut self, a: u16, b: u16, coef: LaurentPoly) -> Result<()> {
        self.add_rule(a, b, vec![(vec![b, a], coef)])
    }

    /// Completeness check, then freeze: every out-of-order pair of distinct
    /// generators must have a rule.
    pub fn finish(self) -> Result<Arc<Context>> {
        let g = self.gens.len();
        for a in 0..g as u16 {
            for b in 0..a {
                if !self.rules.contains_key(&(a, b)) {
                    return Err(Error::Internal(format!(
                        "incomplete rule table: no rule for out-of-order pair {}*{}",
                        self.gen_names[a as usize], self.gen_names[b as usize]
                    )));
                }
            }
        }
        let mut rules = vec![None; g * g];
        for ((a, b), rhs) in self.rules {
            rules[a as usize * g + b as usize] = Some(rhs);
        }
        let by_name = self
            .gen_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u16))
            .collect();
        Ok(Arc::new(Context {
            name: self.name,
            dim: self.dim,
            params: self.params,
            gens: self.gens,
            gen_names: self.gen_names,
            by_name,
            rules,
            cap: self.cap,
        }))
    }
}

impl Context {
    /// Normal form under the default strategy and the context's budget.
    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly> {
        self.normal_form_with(p, ReductionStrategy::LeftmostInnermost, self.cap)
    }

    /// Rewrite to a fixed point: every surviving word is sorted and contains
    /// no reducible pair. Aborts with [`Error::ResourceLimit`] when the
    /// number of live monomials exceeds `cap`.
    pub fn normal_form_with(
        &self,
        p: &NcPoly,
        strategy: ReductionStrategy,
        cap: usize,
    ) -> Result<NcPoly> {
        let ctx = p.context().clone();
        ctx.check_compatible_self(self)?;
        let mut rng = match strategy {
            ReductionStrategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut work: BTreeMap<Word, LaurentPoly> = p.clone().take_terms();
        let mut done: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
        while let Some((w, c)) = work.pop_first() {
            if c.is_zero() {
                continue;
            }
            match self.find_redex(&w, strategy, &mut rng) {
                None => merge_term(&mut done, w, c),
                Some(pos) => {
                    let key = (w.letters()[pos], w.letters()[pos + 1]);
                    let rhs = self
                        .rule(key.0, key.1)
                        .expect("redex position without rule");
                    for (mid, coef) in rhs {
                        let nw = w.splice_pair(pos, mid);
                        merge_term(&mut work, nw, c.checked_mul(coef)?);
                    }
                }
            }
            if work.len() + done.len() > cap {
                return Err(Error::ResourceLimit { cap });
            }
        }
        Ok(NcPoly::from_terms(&ctx, done))
    }

    fn check_compatible_self(&self, other: &Context) -> Result<()> {
        if std::ptr::eq(self, other) || (self.name == other.name && self.gens == other.gens) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.name.clone(),
                right: other.name.clone(),
            })
        }
    }

    fn find_redex(
        &self,
        w: &Word,
        strategy: ReductionStrategy,
        rng: &mut Option<ChaCha8Rng>,
    ) -> Option<usize> {
        let letters = w.letters();
        if letters.len() < 2 {
            return None;
        }
        match strategy {
            ReductionStrategy::LeftmostInnermost => {
                (0..letters.len() - 1).find(|&i| self.rule(letters[i], letters[i + 1]).is_some())
            }
            ReductionStrategy::RightmostInnermost => (0..letters.len() - 1)
                .rev()
                .find(|&i| self.rule(letters[i], letters[i + 1]).is_some()),
            ReductionStrategy::Seeded(_) => {
                let positions: Vec<usize> = (0..letters.len() - 1)
                    .filter(|&i| self.rule(letters[i], letters[i + 1]).is_some())
                    .collect();
                if positions.is_empty() {
                    None
                } else {
                    let rng = rng.as_mut().expect("seeded strategy without rng");
                    Some(positions[rng.gen_range(0..positions.len())])
                }
            }
        }
    }

    /// Reduce `word` under leftmost, rightmost, and one seeded-random
    /// strategy; true iff all three agree.
    pub fn confluence_probe(self: &Arc<Self>, word: &Word, seed: u64) -> Result<bool> {
        let p = NcPoly::word(self, word.letters(), LaurentPoly::one(&self.params));
        let a = self.normal_form_with(&p, ReductionStrategy::LeftmostInnermost, self.cap)?;
        let b = self.normal_form_with(&p, ReductionStrategy::RightmostInnermost, self.cap)?;
        let c = self.normal_form_with(&p, ReductionStrategy::Seeded(seed), self.cap)?;
        Ok(a == b && b == c)
    }
}

fn merge_term(map: &mut BTreeMap<Word, LaurentPoly>, w: Word, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
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
