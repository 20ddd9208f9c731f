//! Algebra morphisms between contexts: a parameter substitution plus an
//! image for each source generator, applied multiplicatively and followed by
//! normalization in the target.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

use super::poly::NcPoly;
use super::Context;

pub struct Morphism {
    source: Arc<Context>,
    target: Arc<Context>,
    /// Image of each source parameter in the target space; unset parameters
    /// make `apply` fail.
    param_images: Vec<Option<LaurentPoly>>,
    /// Image of each source generator; unset generators make `apply` fail.
    gen_images: Vec<Option<NcPoly>>,
}

impl Morphism {
    /// A morphism with identity parameter bindings: parameters are matched
    /// by name, and a source parameter missing from the target must be bound
    /// with [`Morphism::bind_param`] before `apply` is called.
    pub fn new(source: &Arc<Context>, target: &Arc<Context>) -> Morphism {
        let param_images = source
            .params
            .names()
            .iter()
            .map(|n| {
                target
                    .params
                    .index_of(n)
                    .map(|_| LaurentPoly::param(&target.params, n))
            })
            .collect();
        Morphism {
            source: source.clone(),
            target: target.clone(),
            param_images,
            gen_images: vec![None; source.gen_count()],
        }
    }

    pub fn bind_param(mut self, name: &str, image: LaurentPoly) -> Morphism {
        let idx = self
            .source
            .params
            .index_of(name)
            .unwrap_or_else(|| panic!("no parameter {name} in source space"));
        self.param_images[idx] = Some(image);
        self
    }

    pub fn map_gen(mut self, code: u16, image: NcPoly) -> Morphism {
        self.gen_images[code as usize] = Some(image);
        self
    }

    pub fn map_gen_by_name(self, name: &str, image: NcPoly) -> Morphism {
        let code = self
            .source
            .code_by_name(name)
            .unwrap_or_else(|| panic!("no generator {name} in source context"));
        self.map_gen(code, image)
    }

    pub fn source(&self) -> &Arc<Context> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Context> {
        &self.target
    }

    /// Extend multiplicatively and additively, then take the normal form in
    /// the target context.
    pub fn apply(&self, p: &NcPoly) -> Result<NcPoly> {
        self.source.check_compatible(p.context())?;
        let bindings = self
            .param_images
            .iter()
            .enumerate()
            .map(|(i, img)| {
                img.clone().ok_or_else(|| Error::MissingBinding {
                    param: self.source.params.names()[i].clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut acc = NcPoly::zero(&self.target);
        for (w, c) in p.terms() {
            let coef = c.specialize(&bindings, &self.target.params)?;
            let mut prod = NcPoly::scalar(&self.target, coef);
            for &code in w.letters() {
                let img = self.gen_images[code as usize].as_ref().ok_or_else(|| {
                    Error::UnmappedGenerator(self.source.gen_name(code).to_string())
                })?;
                prod = prod.checked_mul(img)?;
            }
            acc = acc.checked_add(&prod)?;
        }
        self.target.normal_form(&acc)
    }
}
