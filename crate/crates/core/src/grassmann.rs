//! Quantum plane and quantum Grassmannian contexts: the independent route to
//! the quantum determinant as the top-wedge coefficient, plus the wedge-side
//! identities behind determinant invariance under row reduction.
//!
//! The combined context carries the matrix generators (optionally localized),
//! plane variables `x1..xn` with `xj*xi = q*xi*xj` (i < j), and Grassmann
//! variables `xi1..xin` with `xik^2 = 0` and `xij*xii = -q^-1*xii*xij`
//! (i < j); matrix entries commute with both variable families.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, ParamSpace};
use crate::ncalg::{Context, ContextBuilder, GeneratorId, Morphism, NcPoly};
use crate::perm::{inversions, weighted_perm_sum};
use crate::qmatrix::{entry_weight, QContext};
use crate::relations::{derive_pivot_rules, install_rules, verify_pivot_rules, QCoeffs};
use crate::report::CheckReport;

#[derive(Clone)]
pub struct GrassContext {
    n: usize,
    inner: Arc<Context>,
    localized: bool,
    entry_offset: u16,
    plane_offset: u16,
    grass_offset: u16,
}

impl GrassContext {
    pub fn new(n: usize, localized: bool) -> Result<GrassContext> {
        if n < 1 {
            return Err(Error::DimensionMismatch("dimension must be >= 1".into()));
        }
        let params = ParamSpace::q();
        let q = LaurentPoly::param(&params, "q");
        let qinv = q.inverted_monomial()?;
        let name = format!("MqGrass({n}){}", if localized { "[inv]" } else { "" });
        let mut builder = ContextBuilder::new(name, n, params.clone());
        let mut inv_code = None;
        if localized {
            inv_code = Some(builder.add_gen(GeneratorId::pivot_inverse(0), "zinv11", 1));
        }
        let entry_offset = builder.gen_count() as u16;
        for i in 1..=n {
            for j in 1..=n {
                builder.add_gen(
                    GeneratorId::entry(i, j),
                    format!("z{i}{j}"),
                    entry_weight(i, j),
                );
            }
        }
        let plane_offset = builder.gen_count() as u16;
        for i in 1..=n {
            builder.add_gen(GeneratorId::plane(i), format!("x{i}"), 1);
        }
        let grass_offset = builder.gen_count() as u16;
        for i in 1..=n {
            builder.add_gen(GeneratorId::grass(i), format!("xi{i}"), 1);
        }
        let entry = |i: usize, j: usize| entry_offset + ((i - 1) * n + (j - 1)) as u16;
        let plane = |i: usize| plane_offset + (i - 1) as u16;
        let grass = |i: usize| grass_offset + (i - 1) as u16;

        install_rules(&mut builder, n, entry, &QCoeffs::standard(&params))?;
        if let Some(inv) = inv_code {
            derive_pivot_rules(&mut builder, n, entry, inv)?;
        }
        let one = LaurentPoly::one(&params);
        for i in 1..=n {
            for j in (i + 1)..=n {
                builder.add_swap_rule(plane(j), plane(i), q.clone())?;
                builder.add_swap_rule(grass(j), grass(i), qinv.negated())?;
            }
            builder.add_rule(grass(i), grass(i), vec![])?;
            // Variables commute with every matrix generator.
            if let Some(inv) = inv_code {
                builder.add_swap_rule(plane(i), inv, one.clone())?;
                builder.add_swap_rule(grass(i), inv, one.clone())?;
            }
            for r in 1..=n {
                for s in 1..=n {
                    builder.add_swap_rule(plane(i), entry(r, s), one.clone())?;
                    builder.add_swap_rule(grass(i), entry(r, s), one.clone())?;
                }
            }
            // The two variable families commute; no mixed relation is ever
            // exercised, the rule only completes the table.
            for x in 1..=n {
                builder.add_swap_rule(grass(i), plane(x), one.clone())?;
            }
        }
        let inner = builder.finish()?;
        if let Some(inv) = inv_code {
            verify_pivot_rules(&inner, n, entry, inv)?;
        }
        Ok(GrassContext {
            n,
            inner,
            localized,
            entry_offset,
            plane_offset,
            grass_offset,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.inner
    }

    pub fn params(&self) -> &Arc<ParamSpace> {
        self.inner.params()
    }

    pub fn q(&self) -> LaurentPoly {
        LaurentPoly::param(self.params(), "q")
    }

    pub fn entry(&self, i: usize, j: usize) -> NcPoly {
        NcPoly::gen(
            &self.inner,
            self.entry_offset + ((i - 1) * self.n + (j - 1)) as u16,
        )
    }

    pub fn plane_var(&self, i: usize) -> NcPoly {
        NcPoly::gen(&self.inner, self.plane_offset + (i - 1) as u16)
    }

    pub fn grass_var(&self, i: usize) -> NcPoly {
        NcPoly::gen(&self.inner, self.grass_offset + (i - 1) as u16)
    }

    pub fn pivot_inverse(&self) -> Result<NcPoly> {
        if self.localized {
            Ok(NcPoly::gen(&self.inner, 0))
        } else {
            Err(Error::Pivot("Grassmann context is not localized".into()))
        }
    }

    /// Generic matrix entries, row-major.
    pub fn generic_entries(&self) -> Vec<NcPoly> {
        (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.entry(i, j))
            .collect()
    }

    /// Row-reduced generic entries (requires localization).
    pub fn reduced_entries(&self) -> Result<Vec<NcPoly>> {
        let n = self.n;
        let inv = self.pivot_inverse()?;
        let mut out = Vec::with_capacity(n * n);
        for j in 1..=n {
            out.push(self.entry(1, j));
        }
        for i in 2..=n {
            for j in 1..=n {
                if j == 1 {
                    out.push(NcPoly::zero(&self.inner));
                } else {
                    let corr = self
                        .entry(i, 1)
                        .checked_mul(&inv)?
                        .checked_mul(&self.entry(1, j))?;
                    out.push(
                        self.inner
                            .normal_form(&self.entry(i, j).checked_sub(&corr)?)?,
                    );
                }
            }
        }
        Ok(out)
    }

    /// The transformed Grassmann variables `xi'_i = sum_j m_ij * xi_j`.
    fn primed_grass(&self, entries: &[NcPoly]) -> Result<Vec<NcPoly>> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = NcPoly::zero(&self.inner);
                for j in 0..n {
                    acc =
                        acc.checked_add(&entries[i * n + j].checked_mul(&self.grass_var(j + 1))?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Split a normalized element as `coefficient * xi1*...*xin`; fails if
    /// any word is not the full top wedge.
    pub fn strip_top_wedge(&self, p: &NcPoly) -> Result<NcPoly> {
        let n = self.n;
        let top: Vec<u16> = (0..n).map(|i| self.grass_offset + i as u16).collect();
        let mut out = NcPoly::zero(&self.inner);
        for (w, c) in p.terms() {
            let letters = w.letters();
            if letters.len() < n || letters[letters.len() - n..] != top[..] {
                return Err(Error::Internal(format!(
                    "wedge product is not proportional to the top monomial: {p}"
                )));
            }
            let prefix = &letters[..letters.len() - n];
            if prefix.iter().any(|&g| g >= self.plane_offset) {
                return Err(Error::Internal(
                    "wedge coefficient contains non-matrix letters".into(),
                ));
            }
            out.insert_term(crate::ncalg::Word::from_codes(prefix), c.clone());
        }
        Ok(out)
    }

    /// The top-wedge coefficient of `prod_i (sum_j m_ij xi_j)`: the quantum
    /// determinant computed through the Grassmannian.
    pub fn wedge_det(&self, entries: &[NcPoly]) -> Result<NcPoly> {
        let primed = self.primed_grass(entries)?;
        let mut prod = NcPoly::one(&self.inner);
        for xi in &primed {
            prod = prod.checked_mul(xi)?;
        }
        let nf = self.inner.normal_form(&prod)?;
        self.strip_top_wedge(&nf)
    }

    /// The permutation-sum quantum determinant evaluated inside this context.
    pub fn qdet_formula(&self, entries: &[NcPoly]) -> Result<NcPoly> {
        let qinv = self.q().inverted_monomial()?;
        weighted_perm_sum(&self.inner, self.n, entries, |perm| {
            let inv = inversions(perm);
            let w = qinv.pow(inv as i32).unwrap();
            if inv % 2 == 1 {
                w.negated()
            } else {
                w
            }
        })
    }

    /// Entry-identity morphism into a plain quantum matrix context, used to
    /// compare wedge results with determinants computed there.
    pub fn entry_morphism(&self, target: &QContext) -> Result<Morphism> {
        if target.n() != self.n {
            return Err(Error::DimensionMismatch(
                "entry morphism needs matching dimensions".into(),
            ));
        }
        let mut m = Morphism::new(&self.inner, target.context());
        for i in 1..=self.n {
            for j in 1..=self.n {
                m = m.map_gen(
                    self.entry_offset + ((i - 1) * self.n + (j - 1)) as u16,
                    target.gen(i, j),
                );
            }
        }
        if self.localized && target.is_localized() {
            m = m.map_gen(0, target.pivot_inverse()?);
        }
        Ok(m)
    }

    /// Forward Kobyzev residuals: the transformed plane and Grassmann
    /// variables satisfy their defining relations.
    pub fn kobyzev_check(&self) -> Result<CheckReport> {
        let n = self.n;
        let q = self.q();
        let qinv = q.inverted_monomial()?;
        let entries = self.generic_entries();
        let mut report = CheckReport::new();

        let primed_plane: Vec<NcPoly> = (0..n)
            .map(|i| {
                let mut acc = NcPoly::zero(&self.inner);
                for j in 0..n {
                    acc =
                        acc.checked_add(&entries[i * n + j].checked_mul(&self.plane_var(j + 1))?)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        let primed_grass = self.primed_grass(&entries)?;

        for i in 0..n {
            let sq = primed_grass[i].checked_mul(&primed_grass[i])?.nf()?;
            report.push_residual(format!("kobyzev.grass-square[{}]", i + 1), &sq);
            for j in (i + 1)..n {
                let plane_res = primed_plane[j]
                    .checked_mul(&primed_plane[i])?
                    .checked_sub(&primed_plane[i].checked_mul(&primed_plane[j])?.scaled(&q))?
                    .nf()?;
                report.push_residual(format!("kobyzev.plane[{},{}]", i + 1, j + 1), &plane_res);
                let grass_res = primed_grass[j]
                    .checked_mul(&primed_grass[i])?
                    .checked_add(&primed_grass[i].checked_mul(&primed_grass[j])?.scaled(&qinv))?
                    .nf()?;
                report.push_residual(format!("kobyzev.grass[{},{}]", i + 1, j + 1), &grass_res);
            }
        }
        Ok(report)
    }

    /// The wedge-side mechanism of determinant invariance under row
    /// reduction: with `t_i = -m_i1 * m11^-1`,
    /// (a) `t_i` q-commutes with `xi'_1`,
    /// (b) the primed and double-primed top wedges agree,
    /// (c) the double-primed coefficient is the determinant of the reduced
    /// matrix.
    pub fn wedge_row_reduction_check(&self) -> Result<CheckReport> {
        let n = self.n;
        let q = self.q();
        let inv = self.pivot_inverse()?;
        let entries = self.generic_entries();
        let primed = self.primed_grass(&entries)?;
        let mut report = CheckReport::new();

        let t: Vec<NcPoly> = (2..=n)
            .map(|i| {
                self.entry(i, 1)
                    .checked_mul(&inv)
                    .map(|prod| prod.negated())
            })
            .collect::<Result<Vec<_>>>()?;

        for (idx, ti) in t.iter().enumerate() {
            let res = ti
                .checked_mul(&primed[0])?
                .checked_sub(&primed[0].checked_mul(ti)?.scaled(&q))?
                .nf()?;
            report.push_residual(format!("wedge.t-commutation[i={}]", idx + 2), &res);
        }

        let mut double_primed = vec![primed[0].clone()];
        for i in 2..=n {
            double_primed.push(primed[i - 1].checked_add(&t[i - 2].checked_mul(&primed[0])?)?);
        }
        let prod_of = |xs: &[NcPoly]| -> Result<NcPoly> {
            let mut acc = NcPoly::one(&self.inner);
            for x in xs {
                acc = acc.checked_mul(x)?;
            }
            acc.nf()
        };
        let wedge_primed = prod_of(&primed)?;
        let wedge_double = prod_of(&double_primed)?;
        report.push_residual(
            "wedge.telescoping",
            &wedge_double.checked_sub(&wedge_primed)?.nf()?,
        );

        let coeff = self.strip_top_wedge(&wedge_double)?;
        let reduced_det = self.qdet_formula(&self.reduced_entries()?)?;
        report.push_residual(
            "wedge.reduced-coefficient",
            &coeff.checked_sub(&reduced_det)?.nf()?,
        );
        Ok(report)
    }

    /// Count normal-form monomials of Grassmann degree `d` among products of
    /// `d` variables; `C(n, d)` survive, and every degree-`(n+1)` product is 0.
    pub fn dimension_check(&self, d: usize) -> Result<CheckReport> {
        let n = self.n;
        let mut report = CheckReport::new();
        let mut distinct = std::collections::BTreeSet::new();
        let mut all_zero = true;
        let mut indices = vec![1usize; d];
        loop {
            let mut prod = NcPoly::one(&self.inner);
            for &i in &indices {
                prod = prod.checked_mul(&self.grass_var(i))?;
            }
            let nf = prod.nf()?;
            if !nf.is_zero() {
                all_zero = false;
                for (w, _) in nf.terms() {
                    distinct.insert(w.clone());
                }
            }
            // Advance the mixed-radix counter over {1..n}^d.
            let mut pos = d;
            loop {
                if pos == 0 {
                    break;
                }
                indices[pos - 1] += 1;
                if indices[pos - 1] <= n {
                    break;
                }
                indices[pos - 1] = 1;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
        if d > n {
            report.push(
                format!("grass-dimension.zero[d={d}]"),
                all_zero,
                Some(format!("{} distinct monomials", distinct.len())),
            );
        } else {
            let expect = binomial(n, d);
            report.push(
                format!("grass-dimension.count[d={d}]"),
                distinct.len() == expect,
                Some(format!("{} of {expect}", distinct.len())),
            );
        }
        Ok(report)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, inversions};

    #[test]
    fn wedge_det_small_dimensions() {
        let g1 = GrassContext::new(1, false).unwrap();
        assert_eq!(g1.wedge_det(&g1.generic_entries()).unwrap(), g1.entry(1, 1));

        let g2 = GrassContext::new(2, false).unwrap();
        let wedge = g2.wedge_det(&g2.generic_entries()).unwrap();
        let det = g2.qdet_formula(&g2.generic_entries()).unwrap();
        assert_eq!(wedge, det);
        // And against the formula in the plain context.
        let q2 = QContext::new(2, false).unwrap();
        let moved = g2.entry_morphism(&q2).unwrap().apply(&wedge).unwrap();
        assert_eq!(moved, q2.generic_matrix().qdet().unwrap());
    }

    #[test]
    fn wedge_permutation_coefficients_match_inversions() {
        // xi_{s(1)} ... xi_{s(n)} = (-q^-1)^inv(s) xi_1 ... xi_n.
        let g = GrassContext::new(3, false).unwrap();
        let qinv = g.q().inverted_monomial().unwrap();
        for perm in all_permutations(3) {
            let mut prod = NcPoly::one(g.context());
            for &i in &perm {
                prod = prod.checked_mul(&g.grass_var(i + 1)).unwrap();
            }
            let coeff = g.strip_top_wedge(&prod.nf().unwrap()).unwrap();
            let inv = inversions(&perm);
            let mut expect = qinv.pow(inv as i32).unwrap();
            if inv % 2 == 1 {
                expect = expect.negated();
            }
            assert_eq!(coeff, NcPoly::scalar(g.context(), expect), "{perm:?}");
        }
    }

    #[test]
    fn grass_degree_is_preserved_by_normal_form() {
        let g = GrassContext::new(3, false).unwrap();
        let word = g
            .entry(2, 1)
            .checked_mul(&g.grass_var(3))
            .unwrap()
            .checked_mul(&g.entry(1, 2))
            .unwrap()
            .checked_mul(&g.grass_var(1))
            .unwrap();
        let nf = word.nf().unwrap();
        for (w, _) in nf.terms() {
            let degree = w
                .letters()
                .iter()
                .filter(|&&c| g.context().generator(c).family == crate::ncalg::GenFamily::GrassVar)
                .count();
            assert_eq!(degree, 2);
        }
    }

    #[test]
    fn kobyzev_residuals_vanish() {
        for n in [2, 3] {
            let g = GrassContext::new(n, false).unwrap();
            let report = g.kobyzev_check().unwrap();
            assert!(report.all_hold(), "n={n}: {:?}", report.checks);
        }
    }

    #[test]
    fn wedge_row_reduction_n2() {
        let g = GrassContext::new(2, true).unwrap();
        let report = g.wedge_row_reduction_check().unwrap();
        assert!(report.all_hold(), "{:?}", report.checks);
    }

    #[test]
    fn dimension_counts() {
        let g3 = GrassContext::new(3, false).unwrap();
        for d in 0..=4 {
            let report = g3.dimension_check(d).unwrap();
            assert!(report.all_hold(), "d={d}: {:?}", report.checks);
        }
        let g4 = GrassContext::new(4, false).unwrap();
        let report = g4.dimension_check(2).unwrap();
        assert!(report.all_hold());
        assert!(report.checks[0]
            .detail
            .as_deref()
            .unwrap()
            .starts_with("6 of 6"));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
