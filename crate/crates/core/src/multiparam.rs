//! The multiparameter quantum matrix algebra over `l` (the quantum scalar)
//! and a multiplicatively antisymmetric matrix of parameters `pij`: twisted
//! relations, the determinant and its subset minors, row/column expansions,
//! row reduction, the two-sided matrix grading, the parameter cocycle, and
//! the twist connecting the algebra to the one-parameter case.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, ParamSpace};
use crate::ncalg::{Context, ContextBuilder, GeneratorId, Morphism, NcPoly};
use crate::perm::{all_permutations, weighted_perm_sum};
use crate::qmatrix::{entry_weight, QContext};
use crate::relations::{
    derive_pivot_rules, install_rules, instances, oriented_rule, relation_residuals,
    verify_pivot_rules, MpCoeffs, QCoeffs, RelationReport,
};
use crate::report::CheckReport;

#[derive(Clone)]
pub struct MpContext {
    n: usize,
    inner: Arc<Context>,
    localized: bool,
    entry_offset: u16,
}

impl MpContext {
    pub fn new(n: usize, localized: bool) -> Result<MpContext> {
        if n < 1 {
            return Err(Error::DimensionMismatch("dimension must be >= 1".into()));
        }
        let params = ParamSpace::multiparam(n);
        let name = format!("Mp({n}){}", if localized { "[inv]" } else { "" });
        let mut builder = ContextBuilder::new(name, n, params.clone()).enforce_bidegree();
        let mut inv_code = None;
        if localized {
            inv_code = Some(builder.add_gen(GeneratorId::pivot_inverse(0), "uinv11", 1));
        }
        let entry_offset = builder.gen_count() as u16;
        for i in 1..=n {
            for j in 1..=n {
                builder.add_gen(
                    GeneratorId::entry(i, j),
                    format!("u{i}{j}"),
                    entry_weight(i, j),
                );
            }
        }
        let entry = |i: usize, j: usize| entry_offset + ((i - 1) * n + (j - 1)) as u16;
        let coeffs = MpCoeffs::generic(&params, n);
        install_rules(&mut builder, n, entry, &coeffs)?;
        if let Some(inv) = inv_code {
            derive_pivot_rules(&mut builder, n, entry, inv)?;
        }
        let inner = builder.finish()?;
        if let Some(inv) = inv_code {
            verify_pivot_rules(&inner, n, entry, inv)?;
        }
        Ok(MpContext {
            n,
            inner,
            localized,
            entry_offset,
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

    pub fn is_localized(&self) -> bool {
        self.localized
    }

    pub fn coeffs(&self) -> MpCoeffs {
        MpCoeffs::generic(self.params(), self.n)
    }

    pub fn lambda(&self) -> LaurentPoly {
        LaurentPoly::param(self.params(), "l")
    }

    /// `p_ij` for arbitrary distinct indices (`p_ji = p_ij^-1`, `p_ii = 1`).
    pub fn p(&self, i: usize, j: usize) -> LaurentPoly {
        self.coeffs().p(i, j)
    }

    pub fn gen(&self, i: usize, j: usize) -> NcPoly {
        NcPoly::gen(&self.inner, self.entry_code(i, j))
    }

    pub(crate) fn entry_code(&self, i: usize, j: usize) -> u16 {
        self.entry_offset + ((i - 1) * self.n + (j - 1)) as u16
    }

    pub fn pivot_inverse(&self) -> Result<NcPoly> {
        if self.localized {
            Ok(NcPoly::gen(&self.inner, 0))
        } else {
            Err(Error::Pivot(
                "multiparameter context is not localized".into(),
            ))
        }
    }

    pub fn generic_entries(&self) -> Vec<NcPoly> {
        (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.gen(i, j))
            .collect()
    }

    /// The sign-and-parameter weight of a permutation (0-based `theta`):
    /// the product of `-p[theta(a), theta(b)]` over inversions `a < b`,
    /// `theta(a) > theta(b)`.
    pub fn sigma_weight(&self, theta: &[usize]) -> LaurentPoly {
        let coeffs = self.coeffs();
        let mut acc = LaurentPoly::one(self.params());
        for a in 0..theta.len() {
            for b in (a + 1)..theta.len() {
                if theta[a] > theta[b] {
                    acc = acc
                        .checked_mul(&coeffs.p(theta[a] + 1, theta[b] + 1).negated())
                        .unwrap();
                }
            }
        }
        acc
    }

    /// The multiparameter determinant of an `n x n` entry slice.
    pub fn mp_det(&self, entries: &[NcPoly]) -> Result<NcPoly> {
        weighted_perm_sum(&self.inner, self.n, entries, |perm| self.sigma_weight(perm))
    }

    /// Subset minor over rows `rows` and columns `cols` (1-based, strictly
    /// increasing): the weighted sum over bijections, with the row-side
    /// formula; the equivalent column-side formula is evaluated too and the
    /// two must normalize identically.
    pub fn mp_minor(&self, entries: &[NcPoly], rows: &[usize], cols: &[usize]) -> Result<NcPoly> {
        if rows.len() != cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "minor needs |rows| = |cols|, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        let d = rows.len();
        let coeffs = self.coeffs();
        let at = |i: usize, j: usize| &entries[(i - 1) * self.n + (j - 1)];
        let mut primary = NcPoly::zero(&self.inner);
        let mut dual = NcPoly::zero(&self.inner);
        for perm in all_permutations(d) {
            // theta maps rows[a] to cols[perm[a]].
            let labels: Vec<usize> = perm.iter().map(|&a| cols[a]).collect();
            let mut sigma_p = LaurentPoly::one(self.params());
            for a in 0..d {
                for b in (a + 1)..d {
                    if labels[a] > labels[b] {
                        sigma_p = sigma_p.checked_mul(&coeffs.p(labels[a], labels[b]).negated())?;
                    }
                }
            }
            let mut row_word = NcPoly::scalar(&self.inner, sigma_p);
            for a in 0..d {
                row_word = row_word.checked_mul(at(rows[a], labels[a]))?;
            }
            primary = primary.checked_add(&row_word)?;

            // Column-side: product over columns in increasing order of the
            // entry in the row mapped onto that column, weighted by the
            // inverse-q sign of the column-ordered row sequence.
            let rows_by_col: Vec<usize> = (0..d)
                .map(|b| rows[perm.iter().position(|&x| x == b).unwrap()])
                .collect();
            let mut sigma_qinv = LaurentPoly::one(self.params());
            for a in 0..d {
                for b in (a + 1)..d {
                    if rows_by_col[a] > rows_by_col[b] {
                        sigma_qinv = sigma_qinv.checked_mul(
                            &coeffs
                                .q_param(rows_by_col[a], rows_by_col[b])
                                .inverted_monomial()?
                                .negated(),
                        )?;
                    }
                }
            }
            let mut col_word = NcPoly::scalar(&self.inner, sigma_qinv);
            for b in 0..d {
                col_word = col_word.checked_mul(at(rows_by_col[b], cols[b]))?;
            }
            dual = dual.checked_add(&col_word)?;
        }
        let primary = self.inner.normal_form(&primary)?;
        let dual = self.inner.normal_form(&dual)?;
        if primary != dual {
            return Err(Error::Internal(format!(
                "row-side and column-side minor formulas disagree on rows {rows:?}, cols {cols:?}"
            )));
        }
        Ok(primary)
    }

    /// Minor complementary to entry `(j, k)`.
    fn complementary_minor(&self, entries: &[NcPoly], j: usize, k: usize) -> Result<NcPoly> {
        let rows: Vec<usize> = (1..=self.n).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (1..=self.n).filter(|&c| c != k).collect();
        self.mp_minor(entries, &rows, &cols)
    }

    /// `beta_j = prod_{m > j} (-q_jm)`.
    fn beta(&self, j: usize) -> Result<LaurentPoly> {
        let coeffs = self.coeffs();
        let mut acc = LaurentPoly::one(self.params());
        for m in (j + 1)..=self.n {
            acc = acc.checked_mul(&coeffs.q_param(j, m).negated())?;
        }
        Ok(acc)
    }

    /// `gamma_j = prod_{m < j} (-p_jm)`.
    fn gamma(&self, j: usize) -> Result<LaurentPoly> {
        let coeffs = self.coeffs();
        let mut acc = LaurentPoly::one(self.params());
        for m in 1..j {
            acc = acc.checked_mul(&coeffs.p(j, m).negated())?;
        }
        Ok(acc)
    }

    /// Column expansion `sum_j (beta_j / beta_k) minor_jk * m_jk` (for
    /// `axis = Column`, fixed column `k`) or row expansion
    /// `sum_k (gamma_k / gamma_j) m_jk * minor_jk` (fixed row `j`); both
    /// normalize to the determinant.
    pub fn mp_expansion(
        &self,
        entries: &[NcPoly],
        axis: crate::qmatrix::Axis,
        fixed: usize,
    ) -> Result<NcPoly> {
        if fixed < 1 || fixed > self.n {
            return Err(Error::IndexOutOfRange {
                index: fixed,
                bound: self.n,
            });
        }
        let at = |i: usize, j: usize| &entries[(i - 1) * self.n + (j - 1)];
        let mut acc = NcPoly::zero(&self.inner);
        match axis {
            crate::qmatrix::Axis::Column => {
                let k = fixed;
                let beta_k_inv = self.beta(k)?.inverted_monomial()?;
                for j in 1..=self.n {
                    let w = self.beta(j)?.checked_mul(&beta_k_inv)?;
                    let term = self
                        .complementary_minor(entries, j, k)?
                        .checked_mul(at(j, k))?;
                    acc = acc.checked_add(&term.scaled(&w))?;
                }
            }
            crate::qmatrix::Axis::Row => {
                let j = fixed;
                let gamma_j_inv = self.gamma(j)?.inverted_monomial()?;
                for k in 1..=self.n {
                    let w = self.gamma(k)?.checked_mul(&gamma_j_inv)?;
                    let term = at(j, k).checked_mul(&self.complementary_minor(entries, j, k)?)?;
                    acc = acc.checked_add(&term.scaled(&w))?;
                }
            }
        }
        self.inner.normal_form(&acc)
    }

    /// Clear the first column below the pivot, as on the one-parameter side.
    pub fn mp_row_reduce(&self, entries: &[NcPoly]) -> Result<Vec<NcPoly>> {
        let n = self.n;
        if n == 1 {
            return Ok(entries.to_vec());
        }
        let inv = self.pivot_inverse()?;
        let at = |i: usize, j: usize| &entries[(i - 1) * n + (j - 1)];
        if *at(1, 1) != self.gen(1, 1) {
            return Err(Error::Pivot(
                "multiparameter row reduction needs the generic (1,1) pivot".into(),
            ));
        }
        let mut out = Vec::with_capacity(n * n);
        for j in 1..=n {
            out.push(at(1, j).clone());
        }
        for i in 2..=n {
            for j in 1..=n {
                if j == 1 {
                    out.push(NcPoly::zero(&self.inner));
                } else {
                    let corr = at(i, 1).checked_mul(&inv)?.checked_mul(at(1, j))?;
                    out.push(self.inner.normal_form(&at(i, j).checked_sub(&corr)?)?);
                }
            }
        }
        Ok(out)
    }

    pub fn relations_check(&self, entries: &[NcPoly]) -> Result<RelationReport> {
        relation_residuals(&self.inner, self.n, entries, &self.coeffs())
    }

    /// Bidegree of a bihomogeneous element (`None` when words disagree).
    /// The zero polynomial reports the trivial bidegree.
    pub fn grading_degree(&self, p: &NcPoly) -> Option<GradedDegree> {
        let n = self.n;
        let mut found: Option<GradedDegree> = None;
        for (w, _) in p.terms() {
            let (left, right) = self.inner.word_bidegree(w)?;
            let deg = GradedDegree { left, right };
            match &found {
                None => found = Some(deg),
                Some(prev) if *prev == deg => {}
                Some(_) => return None,
            }
        }
        Some(found.unwrap_or_else(|| GradedDegree {
            left: vec![0; n],
            right: vec![0; n],
        }))
    }

    /// Specialization onto the one-parameter algebra:
    /// `l -> q^2`, `pij -> q`, `uij -> zij`.
    pub fn one_parameter_morphism(&self, target: &QContext) -> Result<Morphism> {
        if target.n() != self.n {
            return Err(Error::DimensionMismatch(
                "specialization needs matching dimensions".into(),
            ));
        }
        let qs = target.params();
        let mut m = Morphism::new(&self.inner, target.context())
            .bind_param("l", LaurentPoly::param_pow(qs, "q", 2));
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                m = m.bind_param(&format!("p{i}{j}"), LaurentPoly::param(qs, "q"));
            }
        }
        for i in 1..=self.n {
            for j in 1..=self.n {
                m = m.map_gen(self.entry_code(i, j), target.gen(i, j));
            }
        }
        if self.localized {
            m = m.map_gen(0, target.pivot_inverse()?);
        }
        Ok(m)
    }
}

/// The two-sided matrix grading: exponent vectors of the left and right
/// torus degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDegree {
    pub left: Vec<i32>,
    pub right: Vec<i32>,
}

/// The bimultiplicative 2-cocycle attached to the parameter matrix:
/// `c(t_i, t_j) = p_ij` for `i < j` and 1 otherwise, extended by
/// `c(prod t_i^m_i, prod t_j^n_j) = prod_{i<j} p_ij^(m_i n_j)`.
pub struct Cocycle {
    space: Arc<ParamSpace>,
    n: usize,
    /// `upper[(i-1, j-1)]` is `c(t_i, t_j)` for `i < j`.
    upper: Vec<Vec<LaurentPoly>>,
}

impl Cocycle {
    /// The standard cocycle of the `pij` parameters living in `space`.
    pub fn standard(space: &Arc<ParamSpace>, n: usize) -> Cocycle {
        let mut upper = vec![vec![LaurentPoly::one(space); n]; n];
        for i in 1..=n {
            for j in (i + 1)..=n {
                upper[i - 1][j - 1] = LaurentPoly::param(space, &format!("p{i}{j}"));
            }
        }
        Cocycle {
            space: space.clone(),
            n,
            upper,
        }
    }

    /// The inverse cocycle (`p_ij -> p_ij^-1`).
    pub fn inverse(&self) -> Cocycle {
        let upper = self
            .upper
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.inverted_monomial().expect("cocycle values are monomials"))
                    .collect()
            })
            .collect();
        Cocycle {
            space: self.space.clone(),
            n: self.n,
            upper,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c(g, h)` on degree vectors; always an invertible monomial.
    #[allow(clippy::needless_range_loop)]
    pub fn eval(&self, g: &[i32], h: &[i32]) -> LaurentPoly {
        let mut acc = LaurentPoly::one(&self.space);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let e = g[i] * h[j];
                if e != 0 {
                    acc = acc.checked_mul(&self.upper[i][j].pow(e).unwrap()).unwrap();
                }
            }
        }
        acc
    }

    /// `r(c)_ij = c(t_i, t_j) / c(t_j, t_i)` for `i < j`.
    pub fn antisymmetrization(&self, i: usize, j: usize) -> LaurentPoly {
        let mut ti = vec![0i32; self.n];
        let mut tj = vec![0i32; self.n];
        ti[i - 1] = 1;
        tj[j - 1] = 1;
        self.eval(&ti, &tj)
            .checked_mul(&self.eval(&tj, &ti).inverted_monomial().unwrap())
            .unwrap()
    }
}

/// The twisted product `a o b = c^-1(left_a, left_b) c(right_a, right_b) a*b`
/// on bihomogeneous elements.
pub fn twist_product(mp: &MpContext, a: &NcPoly, b: &NcPoly, c: &Cocycle) -> Result<NcPoly> {
    let da = mp
        .grading_degree(a)
        .ok_or_else(|| Error::Inhomogeneous(a.to_string()))?;
    let db = mp
        .grading_degree(b)
        .ok_or_else(|| Error::Inhomogeneous(b.to_string()))?;
    let factor = c
        .eval(&da.left, &db.left)
        .inverted_monomial()?
        .checked_mul(&c.eval(&da.right, &db.right))?;
    mp.context().normal_form(&a.checked_mul(b)?.scaled(&factor))
}

/// Verify that twisting every defining relation of the one-parameter algebra
/// by the standard cocycle yields exactly the multiparameter relations for
/// the twisted parameter matrix `P_ab = q * p_ab^-1` (`a < b`), `lambda = q^2`,
/// coefficient for coefficient over the combined space `[q, pij]`; and that
/// the antisymmetrization of the cocycle is the parameter matrix itself.
pub fn twist_equivalence_check(n: usize) -> Result<CheckReport> {
    let space = ParamSpace::twist(n);
    let q = LaurentPoly::param(&space, "q");
    let source = QCoeffs::new(q.clone());
    let target = MpCoeffs::custom(&space, n, q.pow(2)?, |i, j| {
        q.checked_mul(
            &LaurentPoly::param(&space, &format!("p{i}{j}"))
                .inverted_monomial()
                .unwrap(),
        )
        .unwrap()
    })?;
    let cocycle = Cocycle::standard(&space, n);
    let mut report = CheckReport::new();

    // c(t_a, t_b) on basis vectors, as used by the per-monomial twist factor.
    let basis = |a: usize| {
        let mut v = vec![0i32; n];
        v[a - 1] = 1;
        v
    };
    let twist_factor =
        |(r1, c1): (usize, usize), (r2, c2): (usize, usize)| -> Result<LaurentPoly> {
            // z[r1,c1] * z[r2,c2] = c(t_r1, t_r2) c^-1(t_c1, t_c2) (u[r1,c1] o u[r2,c2])
            cocycle
                .eval(&basis(r1), &basis(r2))
                .checked_mul(&cocycle.eval(&basis(c1), &basis(c2)).inverted_monomial()?)
        };

    for inst in instances(n) {
        let (pattern, src_rhs) = oriented_rule(&inst, &source);
        let (tgt_pattern, tgt_rhs) = oriented_rule(&inst, &target);
        debug_assert_eq!(pattern, tgt_pattern);
        // Twisted relation: pattern coefficient twist_factor(pattern), each
        // replacement term keeps its own factor; normalize the pattern side
        // to 1 and compare with the target relation.
        let pat_factor = twist_factor(pattern.0, pattern.1)?;
        let mut ok = src_rhs.len() == tgt_rhs.len();
        if ok {
            for ((word_s, coef_s), (word_t, coef_t)) in src_rhs.iter().zip(tgt_rhs.iter()) {
                debug_assert_eq!(word_s, word_t);
                let f = twist_factor(word_s[0], word_s[1])?;
                let twisted = coef_s
                    .checked_mul(&f)?
                    .checked_mul(&pat_factor.inverted_monomial()?)?;
                if twisted != *coef_t {
                    ok = false;
                    break;
                }
            }
        }
        report.push(
            format!(
                "twist.{}[i={},j={},k={},l={}]",
                inst.family.label(),
                inst.i,
                inst.j,
                inst.k,
                inst.l
            ),
            ok,
            None,
        );
    }

    for i in 1..=n {
        for j in (i + 1)..=n {
            let r = cocycle.antisymmetrization(i, j);
            let expected = LaurentPoly::param(&space, &format!("p{i}{j}"));
            report.push(
                format!("twist.antisymmetrization[p{i}{j}]"),
                r == expected,
                Some(r.to_string()),
            );
        }
    }
    Ok(report)
}

/// Grassmann-type companion contexts for the multiparameter algebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MpGrassKind {
    /// `eta_j * eta_i = -p_ji * eta_i * eta_j`, the right-coaction dual.
    BDual,
    /// `xi_j * xi_i = -q_ij * xi_i * xi_j`, the left-coaction dual.
    ADual,
}

#[derive(Clone)]
pub struct MpGrassContext {
    n: usize,
    kind: MpGrassKind,
    inner: Arc<Context>,
    entry_offset: u16,
    grass_offset: u16,
}

impl MpGrassContext {
    pub fn new(n: usize, kind: MpGrassKind) -> Result<MpGrassContext> {
        let params = ParamSpace::multiparam(n);
        let coeffs = MpCoeffs::generic(&params, n);
        let label = match kind {
            MpGrassKind::BDual => "MpGrassB",
            MpGrassKind::ADual => "MpGrassA",
        };
        let mut builder = ContextBuilder::new(format!("{label}({n})"), n, params.clone());
        let entry_offset = builder.gen_count() as u16;
        for i in 1..=n {
            for j in 1..=n {
                builder.add_gen(GeneratorId::entry(i, j), format!("u{i}{j}"), 1);
            }
        }
        let grass_offset = builder.gen_count() as u16;
        let var_name = match kind {
            MpGrassKind::BDual => "eta",
            MpGrassKind::ADual => "xi",
        };
        for i in 1..=n {
            builder.add_gen(GeneratorId::grass(i), format!("{var_name}{i}"), 1);
        }
        let entry = |i: usize, j: usize| entry_offset + ((i - 1) * n + (j - 1)) as u16;
        let grass = |i: usize| grass_offset + (i - 1) as u16;
        install_rules(&mut builder, n, entry, &coeffs)?;
        let one = LaurentPoly::one(&params);
        for i in 1..=n {
            for j in (i + 1)..=n {
                let coef = match kind {
                    MpGrassKind::BDual => coeffs.p(j, i).negated(),
                    MpGrassKind::ADual => coeffs.q_param(i, j).negated(),
                };
                builder.add_swap_rule(grass(j), grass(i), coef)?;
            }
            builder.add_rule(grass(i), grass(i), vec![])?;
            for r in 1..=n {
                for s in 1..=n {
                    builder.add_swap_rule(grass(i), entry(r, s), one.clone())?;
                }
            }
        }
        Ok(MpGrassContext {
            n,
            kind,
            inner: builder.finish()?,
            entry_offset,
            grass_offset,
        })
    }

    pub fn kind(&self) -> MpGrassKind {
        self.kind
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.inner
    }

    pub fn entry(&self, i: usize, j: usize) -> NcPoly {
        NcPoly::gen(
            &self.inner,
            self.entry_offset + ((i - 1) * self.n + (j - 1)) as u16,
        )
    }

    pub fn var(&self, i: usize) -> NcPoly {
        NcPoly::gen(&self.inner, self.grass_offset + (i - 1) as u16)
    }

    fn strip_top(&self, p: &NcPoly) -> Result<NcPoly> {
        let n = self.n;
        let top: Vec<u16> = (0..n).map(|i| self.grass_offset + i as u16).collect();
        let mut out = NcPoly::zero(&self.inner);
        for (w, c) in p.terms() {
            let letters = w.letters();
            if letters.len() < n || letters[letters.len() - n..] != top[..] {
                return Err(Error::Internal(
                    "product is not proportional to the top wedge monomial".into(),
                ));
            }
            out.insert_term(
                crate::ncalg::Word::from_codes(&letters[..letters.len() - n]),
                c.clone(),
            );
        }
        Ok(out)
    }

    /// Top-wedge coefficient of the transformed variables. For the B-dual
    /// (`eta'_i = sum_j u_ij eta_j`), this is the multiparameter determinant.
    pub fn wedge_coefficient(&self) -> Result<NcPoly> {
        let n = self.n;
        let mut prod = NcPoly::one(&self.inner);
        for i in 1..=n {
            let mut primed = NcPoly::zero(&self.inner);
            for j in 1..=n {
                primed = primed.checked_add(&self.entry(i, j).checked_mul(&self.var(j))?)?;
            }
            prod = prod.checked_mul(&primed)?;
        }
        let nf = self.inner.normal_form(&prod)?;
        self.strip_top(&nf)
    }

    /// For the A-dual, the coaction goes through the left slot:
    /// `xi'_k = sum_j xi_j u_jk`; the top-wedge coefficient again recovers the
    /// determinant.
    pub fn left_coaction_coefficient(&self) -> Result<NcPoly> {
        let n = self.n;
        let mut prod = NcPoly::one(&self.inner);
        for k in 1..=n {
            let mut primed = NcPoly::zero(&self.inner);
            for j in 1..=n {
                primed = primed.checked_add(&self.var(j).checked_mul(&self.entry(j, k))?)?;
            }
            prod = prod.checked_mul(&primed)?;
        }
        let nf = self.inner.normal_form(&prod)?;
        self.strip_top(&nf)
    }

    /// Identity map on entries into the plain multiparameter context.
    pub fn entry_morphism(&self, target: &MpContext) -> Result<Morphism> {
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
        Ok(m)
    }
}

/// Named identity suites for the multiparameter algebra. Recognized ids:
/// `mp-theorem-rowreduce`, `mp-det-invariance`, `mp-column-identity`,
/// `mp-normalizing`, `mp-grassmann`.
pub fn mp_verify_identity(id: &str, n: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    match id {
        "mp-theorem-rowreduce" => {
            let ctx = MpContext::new(n, true)?;
            let reduced = ctx.mp_row_reduce(&ctx.generic_entries())?;
            let rels = ctx.relations_check(&reduced)?;
            report.merge(CheckReport::from_relations("mp-theorem-rowreduce", &rels));
        }
        "mp-det-invariance" => {
            let ctx = MpContext::new(n, true)?;
            let entries = ctx.generic_entries();
            let reduced = ctx.mp_row_reduce(&entries)?;
            let residual = ctx
                .mp_det(&entries)?
                .checked_sub(&ctx.mp_det(&reduced)?)?
                .nf()?;
            report.push_residual(format!("mp-det-invariance[n={n}]"), &residual);
        }
        "mp-column-identity" => {
            let ctx = MpContext::new(n, true)?;
            let reduced = ctx.mp_row_reduce(&ctx.generic_entries())?;
            let lhs = ctx.mp_det(&reduced)?;
            let rhs = if n == 1 {
                ctx.gen(1, 1)
            } else {
                let tail: Vec<usize> = (2..=n).collect();
                ctx.gen(1, 1)
                    .checked_mul(&ctx.mp_minor(&reduced, &tail, &tail)?)?
                    .nf()?
            };
            report.push_residual(
                format!("mp-column-identity[n={n}]"),
                &lhs.checked_sub(&rhs)?.nf()?,
            );
        }
        "mp-normalizing" => {
            // det * u_ij = mu_ij * u_ij * det for a monomial mu_ij, with at
            // least one mu_ij nontrivial.
            let ctx = MpContext::new(n, false)?;
            let entries = ctx.generic_entries();
            let det = ctx.mp_det(&entries)?;
            let mut some_nontrivial = false;
            for i in 1..=n {
                for j in 1..=n {
                    let g = ctx.gen(i, j);
                    let left = det.checked_mul(&g)?.nf()?;
                    let right = g.checked_mul(&det)?.nf()?;
                    match monomial_ratio(&left, &right)? {
                        Some(mu) => {
                            if !mu.is_one() {
                                some_nontrivial = true;
                            }
                            report.push(
                                format!("mp-normalizing.mu[u{i}{j}]"),
                                true,
                                Some(mu.to_string()),
                            );
                        }
                        None => {
                            report.push(
                                format!("mp-normalizing.mu[u{i}{j}]"),
                                false,
                                Some("no monomial ratio".into()),
                            );
                        }
                    }
                }
            }
            report.push("mp-normalizing.not-central", some_nontrivial, None);
        }
        "mp-grassmann" => {
            let ctx = MpContext::new(n, false)?;
            let det = ctx.mp_det(&ctx.generic_entries())?;
            let bdual = MpGrassContext::new(n, MpGrassKind::BDual)?;
            let coeff = bdual
                .entry_morphism(&ctx)?
                .apply(&bdual.wedge_coefficient()?)?;
            report.push_residual(
                format!("mp-grassmann.b-dual[n={n}]"),
                &coeff.checked_sub(&det)?.nf()?,
            );
            if n == 2 {
                let adual = MpGrassContext::new(n, MpGrassKind::ADual)?;
                let coeff = adual
                    .entry_morphism(&ctx)?
                    .apply(&adual.left_coaction_coefficient()?)?;
                report.push_residual("mp-grassmann.a-dual[n=2]", &coeff.checked_sub(&det)?.nf()?);
            }
        }
        other => return Err(Error::UnknownIdentity(other.to_string())),
    }
    Ok(report)
}

/// If `a == mu * b` for a Laurent monomial `mu`, return it. Zero pairs give
/// `mu = 1` when both are zero, `None` otherwise.
fn monomial_ratio(a: &NcPoly, b: &NcPoly) -> Result<Option<LaurentPoly>> {
    let space = a
        .terms()
        .next()
        .map(|(_, c)| c.space().clone())
        .or_else(|| b.terms().next().map(|(_, c)| c.space().clone()));
    let space = match space {
        None => return Ok(Some(LaurentPoly::one(a.context().params()))),
        Some(s) => s,
    };
    if a.is_zero() || b.is_zero() {
        return Ok(None);
    }
    let (wa, ca) = a.terms().next().unwrap();
    let (wb, cb) = b.terms().next().unwrap();
    if wa != wb {
        return Ok(None);
    }
    let (ea, ka) = ca.terms().next().unwrap();
    let (eb, kb) = cb.terms().next().unwrap();
    let exps: Vec<i32> = ea.iter().zip(eb.iter()).map(|(x, y)| x - y).collect();
    let mu = LaurentPoly::monomial(&space, ka / kb, &exps);
    let check = a.checked_sub(&b.scaled(&mu))?;
    if check.is_zero() {
        Ok(Some(mu))
    } else {
        Ok(None)
    }
}
