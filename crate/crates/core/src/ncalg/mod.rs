//! Free-algebra elements with Laurent coefficients and the rewriting engine
//! that reduces them to PBW normal form.
//!
//! A [`Context`] fixes an ordered alphabet of generators, a coefficient
//! [`ParamSpace`](crate::laurent::ParamSpace), and a complete table of
//! oriented two-letter rewrite rules. [`NcPoly`] values are tied to their
//! context; [`Context::normal_form`] rewrites until every word is sorted and
//! free of cancellation pairs and nilpotent squares.

mod morphism;
mod poly;
mod rewrite;

pub use morphism::Morphism;
pub use poly::{NcPoly, Word};
pub use rewrite::{
    default_monomial_cap, set_default_monomial_cap, ContextBuilder, ReductionStrategy, RuleRhs,
    DEFAULT_MONOMIAL_CAP,
};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::ParamSpace;

/// Which alphabet a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenFamily {
    /// A matrix entry of the algebra itself (`z11`, `u23`, ...).
    Entry,
    /// The inverse of the top-left entry of its level.
    PivotInverse,
    /// A quantum-plane variable (`x1`, ...).
    PlaneVar,
    /// A Grassmann variable (`xi1`, `eta2`, ...).
    GrassVar,
    /// Matrix entry of the left tensor factor (`zl11`, ...).
    TensorLeftEntry,
    /// Matrix entry of the right tensor factor (`zr11`, ...).
    TensorRightEntry,
    /// Matrix entry of an abstract localization level (`w1_11`, ...).
    AbstractEntry,
}

/// Structural identity of a generator. Rendering is context-dependent; the
/// id itself is not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorId {
    pub family: GenFamily,
    /// 1-based row for entries; 0 for plane/Grassmann variables.
    pub row: u8,
    /// 1-based column for entries; 1-based index for plane/Grassmann variables.
    pub col: u8,
    /// Localization-tower level; 0 outside the abstract tower.
    pub level: u8,
}

impl GeneratorId {
    pub fn entry(i: usize, j: usize) -> GeneratorId {
        GeneratorId {
            family: GenFamily::Entry,
            row: i as u8,
            col: j as u8,
            level: 0,
        }
    }

    pub fn abstract_entry(level: usize, i: usize, j: usize) -> GeneratorId {
        GeneratorId {
            family: GenFamily::AbstractEntry,
            row: i as u8,
            col: j as u8,
            level: level as u8,
        }
    }

    pub fn pivot_inverse(level: usize) -> GeneratorId {
        GeneratorId {
            family: GenFamily::PivotInverse,
            row: 1,
            col: 1,
            level: level as u8,
        }
    }

    pub fn plane(i: usize) -> GeneratorId {
        GeneratorId {
            family: GenFamily::PlaneVar,
            row: 0,
            col: i as u8,
            level: 0,
        }
    }

    pub fn grass(i: usize) -> GeneratorId {
        GeneratorId {
            family: GenFamily::GrassVar,
            row: 0,
            col: i as u8,
            level: 0,
        }
    }

    pub fn tensor_left(i: usize, j: usize) -> GeneratorId {
        GeneratorId {
            family: GenFamily::TensorLeftEntry,
            row: i as u8,
            col: j as u8,
            level: 0,
        }
    }

    pub fn tensor_right(i: usize, j: usize) -> GeneratorId {
        GeneratorId {
            family: GenFamily::TensorRightEntry,
            row: i as u8,
            col: j as u8,
            level: 0,
        }
    }

    /// Contribution of one letter to the (left, right) matrix grading, as
    /// basis index and sign. `None` for generators outside the graded part.
    pub fn bidegree(&self) -> Option<((usize, i32), (usize, i32))> {
        match self.family {
            GenFamily::Entry | GenFamily::AbstractEntry => {
                Some(((self.row as usize - 1, 1), (self.col as usize - 1, 1)))
            }
            GenFamily::PivotInverse => Some(((0, -1), (0, -1))),
            _ => None,
        }
    }
}

/// An immutable algebra context: ordered alphabet, parameter space, and a
/// complete oriented rule table. Shared behind `Arc` and safe to use from
/// multiple threads.
pub struct Context {
    pub(crate) name: String,
    /// Matrix dimension of the entry family (0 when there is none).
    pub(crate) dim: usize,
    pub(crate) params: Arc<ParamSpace>,
    pub(crate) gens: Vec<GeneratorId>,
    pub(crate) gen_names: Vec<String>,
    pub(crate) by_name: HashMap<String, u16>,
    /// Dense rule table indexed by `a * gens.len() + b`.
    pub(crate) rules: Vec<Option<RuleRhs>>,
    pub(crate) cap: usize,
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context({}, {} generators)", self.name, self.gens.len())
    }
}

impl Context {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &Arc<ParamSpace> {
        &self.params
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, code: u16) -> GeneratorId {
        self.gens[code as usize]
    }

    pub fn gen_name(&self, code: u16) -> &str {
        &self.gen_names[code as usize]
    }

    pub fn code_by_name(&self, name: &str) -> Option<u16> {
        self.by_name.get(name).copied()
    }

    pub fn monomial_cap(&self) -> usize {
        self.cap
    }

    pub(crate) fn rule(&self, a: u16, b: u16) -> Option<&RuleRhs> {
        self.rules[a as usize * self.gens.len() + b as usize].as_ref()
    }

    /// True when contexts are interchangeable for arithmetic purposes.
    pub(crate) fn compatible(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other)
            || (self.name == other.name && self.gens == other.gens && self.params == other.params)
    }

    pub(crate) fn check_compatible(self: &Arc<Self>, other: &Arc<Self>) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.name.clone(),
                right: other.name.clone(),
            })
        }
    }

    /// The (left, right) matrix bidegree of a word, if every letter carries one.
    pub fn word_bidegree(&self, word: &Word) -> Option<(Vec<i32>, Vec<i32>)> {
        let n = self.dim.max(1);
        let mut left = vec![0i32; n];
        let mut right = vec![0i32; n];
        for &code in word.letters() {
            let ((li, ls), (ri, rs)) = self.gens[code as usize].bidegree()?;
            left[li] += ls;
            right[ri] += rs;
        }
        Some((left, right))
    }
}
