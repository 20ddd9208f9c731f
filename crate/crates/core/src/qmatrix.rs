//! The one-parameter quantum matrix algebra: contexts, the quantum
//! determinant and its expansions, row reduction, the bialgebra structure,
//! and the named identity checks built on them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, ParamSpace};
use crate::ncalg::{Context, ContextBuilder, GeneratorId, Morphism, NcPoly};
use crate::perm::{inversions, weighted_perm_sum};
use crate::relations::{
    derive_pivot_rules, install_rules, relation_residuals, verify_pivot_rules, QCoeffs,
    RelationCoeffs, RelationReport,
};
use crate::report::CheckReport;

/// Weight of an entry generator in the termination order: interior entries
/// outweigh first-row/first-column ones so that the derived pivot-inverse
/// rules strictly decrease.
pub(crate) fn entry_weight(i: usize, j: usize) -> u64 {
    if i > 1 && j > 1 {
        4
    } else {
        1
    }
}

/// A quantum matrix algebra context, optionally localized at the `(1,1)`
/// entry, with generators `z11..znn` (or `w{m}_11..` at abstract tower
/// levels).
#[derive(Clone, Debug)]
pub struct QContext {
    n: usize,
    inner: Arc<Context>,
    localized: bool,
    level: usize,
    entry_offset: u16,
}

impl QContext {
    pub fn new(n: usize, localized: bool) -> Result<QContext> {
        QContext::build(n, 0, localized, crate::ncalg::default_monomial_cap())
    }

    /// Same, with an explicit monomial budget instead of the process default.
    pub fn with_cap(n: usize, localized: bool, cap: usize) -> Result<QContext> {
        QContext::build(n, 0, localized, cap)
    }

    /// Context for level `level >= 1` of the localization tower: abstract
    /// generators `w{level}_ij` satisfying the same relations in dimension `n`.
    pub fn abstract_level(n: usize, level: usize, localized: bool) -> Result<QContext> {
        QContext::build(n, level, localized, crate::ncalg::default_monomial_cap())
    }

    fn build(n: usize, level: usize, localized: bool, cap: usize) -> Result<QContext> {
        if n < 1 {
            return Err(Error::DimensionMismatch("dimension must be >= 1".into()));
        }
        let params = ParamSpace::q();
        let name = if level == 0 {
            format!("Mq({n}){}", if localized { "[inv]" } else { "" })
        } else {
            format!("Mq({n})@{level}{}", if localized { "[inv]" } else { "" })
        };
        let mut builder = ContextBuilder::new(name, n, params.clone())
            .enforce_bidegree()
            .monomial_cap(cap);
        let mut inv_code = None;
        if localized {
            let id = GeneratorId::pivot_inverse(level);
            let name = if level == 0 {
                "zinv11".to_string()
            } else {
                format!("winv{level}_11")
            };
            inv_code = Some(builder.add_gen(id, name, 1));
        }
        let entry_offset = builder.gen_count() as u16;
        for i in 1..=n {
            for j in 1..=n {
                let (id, name) = if level == 0 {
                    (GeneratorId::entry(i, j), format!("z{i}{j}"))
                } else {
                    (
                        GeneratorId::abstract_entry(level, i, j),
                        format!("w{level}_{i}{j}"),
                    )
                };
                builder.add_gen(id, name, entry_weight(i, j));
            }
        }
        let entry = |i: usize, j: usize| entry_offset + ((i - 1) * n + (j - 1)) as u16;
        let coeffs = QCoeffs::standard(&params);
        install_rules(&mut builder, n, entry, &coeffs)?;
        if let Some(inv) = inv_code {
            derive_pivot_rules(&mut builder, n, entry, inv)?;
        }
        let inner = builder.finish()?;
        if let Some(inv) = inv_code {
            verify_pivot_rules(&inner, n, entry, inv)?;
        }
        Ok(QContext {
            n,
            inner,
            localized,
            level,
            entry_offset,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_localized(&self) -> bool {
        self.localized
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

    pub(crate) fn entry_code(&self, i: usize, j: usize) -> u16 {
        debug_assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        self.entry_offset + ((i - 1) * self.n + (j - 1)) as u16
    }

    /// The generator at position `(i, j)`, 1-based.
    pub fn gen(&self, i: usize, j: usize) -> NcPoly {
        NcPoly::gen(&self.inner, self.entry_code(i, j))
    }

    pub fn pivot_inverse(&self) -> Result<NcPoly> {
        if self.localized {
            Ok(NcPoly::gen(&self.inner, 0))
        } else {
            Err(Error::Pivot(format!(
                "context {} has no pivot inverse",
                self.inner.name()
            )))
        }
    }

    pub fn one(&self) -> NcPoly {
        NcPoly::one(&self.inner)
    }

    pub fn zero(&self) -> NcPoly {
        NcPoly::zero(&self.inner)
    }

    pub fn coeffs(&self) -> QCoeffs {
        QCoeffs::standard(self.params())
    }

    /// The generic matrix `(m_ij)` of this context.
    pub fn generic_matrix(&self) -> QMatrix {
        let entries = (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.gen(i, j))
            .collect();
        QMatrix {
            n: self.n,
            qctx: self.clone(),
            entries,
        }
    }

    /// Number of defining relation instances.
    pub fn relation_count(&self) -> usize {
        crate::relations::instance_count(self.n)
    }
}

/// Two commuting copies of the quantum matrix algebra; the target of the
/// comultiplication.
#[derive(Clone, Debug)]
pub struct TensorQContext {
    n: usize,
    inner: Arc<Context>,
}

impl TensorQContext {
    pub fn new(n: usize) -> Result<TensorQContext> {
        if n < 1 {
            return Err(Error::DimensionMismatch("dimension must be >= 1".into()));
        }
        let params = ParamSpace::q();
        let mut builder = ContextBuilder::new(format!("MqTensor({n})"), n, params.clone());
        for i in 1..=n {
            for j in 1..=n {
                builder.add_gen(GeneratorId::tensor_left(i, j), format!("zl{i}{j}"), 1);
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                builder.add_gen(GeneratorId::tensor_right(i, j), format!("zr{i}{j}"), 1);
            }
        }
        let nn = (n * n) as u16;
        let left = |i: usize, j: usize| ((i - 1) * n + (j - 1)) as u16;
        let right = |i: usize, j: usize| nn + ((i - 1) * n + (j - 1)) as u16;
        let coeffs = QCoeffs::standard(&params);
        install_rules(&mut builder, n, left, &coeffs)?;
        install_rules(&mut builder, n, right, &coeffs)?;
        // The two factors commute elementwise.
        let one = LaurentPoly::one(&params);
        for r in 0..nn {
            for l in 0..nn {
                builder.add_swap_rule(nn + r, l, one.clone())?;
            }
        }
        Ok(TensorQContext {
            n,
            inner: builder.finish()?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.inner
    }

    pub fn left(&self, i: usize, j: usize) -> NcPoly {
        NcPoly::gen(&self.inner, ((i - 1) * self.n + (j - 1)) as u16)
    }

    pub fn right(&self, i: usize, j: usize) -> NcPoly {
        NcPoly::gen(
            &self.inner,
            (self.n * self.n + (i - 1) * self.n + (j - 1)) as u16,
        )
    }

    fn matrix_of(&self, side: impl Fn(usize, usize) -> NcPoly) -> Vec<NcPoly> {
        (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .map(|(i, j)| side(i, j))
            .collect()
    }
}

/// Row or column, for expansion formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

/// A square matrix of algebra elements tied to a [`QContext`]. Entries are
/// normalized on construction.
#[derive(Clone, Debug)]
pub struct QMatrix {
    qctx: QContext,
    /// Dimension of this matrix; submatrices are smaller than their context.
    n: usize,
    entries: Vec<NcPoly>,
}

impl QMatrix {
    pub fn new(qctx: &QContext, entries: Vec<NcPoly>) -> Result<QMatrix> {
        let n = qctx.n();
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|e| qctx.context().normal_form(&e))
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix {
            qctx: qctx.clone(),
            n,
            entries,
        })
    }

    pub fn qctx(&self) -> &QContext {
        &self.qctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> &NcPoly {
        &self.entries[(i - 1) * self.n() + (j - 1)]
    }

    pub fn entries(&self) -> &[NcPoly] {
        &self.entries
    }

    fn check_index(&self, idx: usize) -> Result<()> {
        if idx >= 1 && idx <= self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: idx,
                bound: self.n(),
            })
        }
    }

    /// Matrix with entries transposed (no algebra map applied).
    pub fn transposed(&self) -> QMatrix {
        let n = self.n();
        let entries = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| self.at(j, i).clone())
            .collect();
        QMatrix {
            qctx: self.qctx.clone(),
            n,
            entries,
        }
    }

    /// Delete `row` and `col` (1-based).
    pub fn submatrix(&self, row: usize, col: usize) -> Result<QMatrix> {
        self.check_index(row)?;
        self.check_index(col)?;
        let n = self.n();
        if n == 1 {
            return Err(Error::DimensionMismatch(
                "cannot take a submatrix of a 1 x 1 matrix".into(),
            ));
        }
        // The submatrix keeps the ambient context; only the entry list and
        // the nominal dimension shrink.
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (1..=n).filter(|&i| i != row) {
            for j in (1..=n).filter(|&j| j != col) {
                entries.push(self.at(i, j).clone());
            }
        }
        Ok(QMatrix {
            qctx: self.qctx.clone(),
            n: n - 1,
            entries,
        })
    }

    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(
                "matrix product needs equal dimensions".into(),
            ));
        }
        let n = self.n();
        let ctx = self.qctx.context();
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let mut acc = NcPoly::zero(ctx);
                for k in 1..=n {
                    acc = acc.checked_add(&self.at(i, k).checked_mul(other.at(k, j))?)?;
                }
                entries.push(ctx.normal_form(&acc)?);
            }
        }
        Ok(QMatrix {
            qctx: self.qctx.clone(),
            n,
            entries,
        })
    }

    /// The quantum determinant: the permutation sum with weight
    /// `(-q^-1)^inv(s)`, normalized.
    pub fn qdet(&self) -> Result<NcPoly> {
        let ctx = self.qctx.context();
        let qinv = self.qctx.q().inverted_monomial()?;
        weighted_perm_sum(ctx, self.n(), &self.entries, |perm| {
            let inv = inversions(perm);
            let w = qinv.pow(inv as i32).unwrap();
            if inv % 2 == 1 {
                w.negated()
            } else {
                w
            }
        })
    }

    /// Quantum determinant of the submatrix with `row` and `col` deleted.
    pub fn minor(&self, row: usize, col: usize) -> Result<NcPoly> {
        self.submatrix(row, col)?.qdet()
    }

    /// The cofactor matrix: entry `(i, j)` is `(-q)^(j-i)` times the minor
    /// complementary to `(j, i)`, so that `Z * cof = cof * Z = qdet * I`.
    pub fn cofactor_matrix(&self) -> Result<QMatrix> {
        let n = self.n();
        let q = self.qctx.q();
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let m = if n == 1 {
                    self.qctx.one()
                } else {
                    self.minor(j, i)?
                };
                entries.push(m.scaled(&signed_q_power(&q, j as i32 - i as i32)?));
            }
        }
        Ok(QMatrix {
            qctx: self.qctx.clone(),
            n,
            entries,
        })
    }

    /// Laplace expansion along one row or column; equals the quantum
    /// determinant. Row `i`: `sum_j (-q)^(i-j) m_ij * minor_ij`; column `j`:
    /// `sum_i (-q)^(i-j) minor_ij * m_ij`.
    pub fn laplace(&self, axis: Axis, index: usize) -> Result<NcPoly> {
        self.check_index(index)?;
        let n = self.n();
        if n < 2 {
            return self.qdet();
        }
        let q = self.qctx.q();
        let ctx = self.qctx.context();
        let mut acc = NcPoly::zero(ctx);
        for t in 1..=n {
            let (i, j) = match axis {
                Axis::Row => (index, t),
                Axis::Column => (t, index),
            };
            let weight = signed_q_power(&q, i as i32 - j as i32)?;
            let minor = self.minor(i, j)?;
            let term = match axis {
                Axis::Row => self.at(i, j).checked_mul(&minor)?,
                Axis::Column => minor.checked_mul(self.at(i, j))?,
            };
            acc = acc.checked_add(&term.scaled(&weight))?;
        }
        ctx.normal_form(&acc)
    }

    /// Clear the first column below the pivot:
    /// first row unchanged, `m'_i1 = 0`, and
    /// `m'_ij = m_ij - m_i1 * m11^-1 * m_1j` for `i, j >= 2`.
    ///
    /// The pivot must be either the `(1,1)` generator of a localized context
    /// or an invertible scalar.
    pub fn row_reduce(&self) -> Result<QMatrix> {
        let n = self.n();
        if n == 1 {
            return Ok(self.clone());
        }
        let ctx = self.qctx.context();
        let pivot = self.at(1, 1);
        let pivot_inv = if *pivot == self.qctx.gen(1, 1) {
            self.qctx.pivot_inverse().map_err(|_| {
                Error::Pivot("row reduction over a generic pivot needs a localized context".into())
            })?
        } else if let Some(c) = pivot.as_scalar() {
            NcPoly::scalar(
                ctx,
                c.inverted_monomial().map_err(|_| {
                    Error::Pivot(format!("scalar pivot {c} is not an invertible monomial"))
                })?,
            )
        } else {
            return Err(Error::Pivot(format!(
                "pivot {pivot} is neither the (1,1) generator nor an invertible scalar"
            )));
        };
        let mut entries = Vec::with_capacity(n * n);
        for j in 1..=n {
            entries.push(self.at(1, j).clone());
        }
        for i in 2..=n {
            for j in 1..=n {
                if j == 1 {
                    entries.push(NcPoly::zero(ctx));
                } else {
                    let corr = self
                        .at(i, 1)
                        .checked_mul(&pivot_inv)?
                        .checked_mul(self.at(1, j))?;
                    entries.push(ctx.normal_form(&self.at(i, j).checked_sub(&corr)?)?);
                }
            }
        }
        Ok(QMatrix {
            qctx: self.qctx.clone(),
            n,
            entries,
        })
    }

    /// Evaluate every defining relation on this matrix.
    pub fn relations_check(&self) -> Result<RelationReport> {
        self.relations_check_with(&self.qctx.coeffs())
    }

    /// Same, against explicitly given coefficients (e.g. the `q^2` system).
    pub fn relations_check_with(&self, coeffs: &dyn RelationCoeffs) -> Result<RelationReport> {
        relation_residuals(self.qctx.context(), self.n(), &self.entries, coeffs)
    }
}

/// `(-q)^e` as a Laurent monomial (`e` may be negative).
pub(crate) fn signed_q_power(q: &LaurentPoly, e: i32) -> Result<LaurentPoly> {
    let mag = q.pow(e)?;
    if e.rem_euclid(2) == 1 {
        Ok(mag.negated())
    } else {
        Ok(mag)
    }
}

/// The comultiplication `m_ij -> sum_k left_ik * right_kj`, extended
/// multiplicatively from the plain context into the tensor context.
pub fn coproduct(plain: &QContext, tensor: &TensorQContext, p: &NcPoly) -> Result<NcPoly> {
    if plain.n() != tensor.n() {
        return Err(Error::DimensionMismatch(
            "coproduct needs matching dimensions".into(),
        ));
    }
    let mut m = Morphism::new(plain.context(), tensor.context());
    for i in 1..=plain.n() {
        for j in 1..=plain.n() {
            let mut img = NcPoly::zero(tensor.context());
            for k in 1..=plain.n() {
                img = img.checked_add(&tensor.left(i, k).checked_mul(&tensor.right(k, j))?)?;
            }
            m = m.map_gen(plain.entry_code(i, j), img);
        }
    }
    m.apply(p)
}

/// The counit `m_ij -> delta_ij` (and pivot inverse to 1), extended
/// multiplicatively; defined on entry-family contexts.
pub fn counit(qctx: &QContext, p: &NcPoly) -> Result<LaurentPoly> {
    let params = qctx.params();
    let mut acc = LaurentPoly::zero(params);
    'terms: for (w, c) in p.terms() {
        for &code in w.letters() {
            let g = qctx.context().generator(code);
            match g.family {
                crate::ncalg::GenFamily::Entry | crate::ncalg::GenFamily::AbstractEntry => {
                    if g.row != g.col {
                        continue 'terms;
                    }
                }
                crate::ncalg::GenFamily::PivotInverse => {}
                _ => {
                    return Err(Error::Internal(
                        "counit is only defined on matrix-entry contexts".into(),
                    ))
                }
            }
        }
        acc = acc.checked_add(c)?;
    }
    Ok(acc)
}

/// The transposition endomorphism `m_ij -> m_ji` as a morphism of the plain
/// context into itself.
pub fn transpose_hom(qctx: &QContext) -> Morphism {
    let n = qctx.n();
    let mut m = Morphism::new(qctx.context(), qctx.context());
    for i in 1..=n {
        for j in 1..=n {
            m = m.map_gen(qctx.entry_code(i, j), qctx.gen(j, i));
        }
    }
    m
}

/// Named identity suites for the one-parameter algebra. Recognized ids:
/// `theorem2`, `column-identity`, `centrality`, `cofactor`, `grouplike`,
/// `counit`, `transpose`, `z-squared`.
pub fn verify_identity(id: &str, n: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    match id {
        "theorem2" => {
            // The quantum determinant is invariant under row reduction.
            let ctx = QContext::new(n, true)?;
            let z = ctx.generic_matrix();
            let reduced = z.row_reduce()?;
            let residual = z.qdet()?.checked_sub(&reduced.qdet()?)?.nf()?;
            report.push_residual(format!("theorem2.det-invariance[n={n}]"), &residual);
        }
        "column-identity" => {
            // qdet(Z') = m11 * qdet(Z'') for the reduced matrix.
            let ctx = QContext::new(n, true)?;
            let reduced = ctx.generic_matrix().row_reduce()?;
            let lhs = reduced.qdet()?;
            let rhs = if n == 1 {
                ctx.gen(1, 1)
            } else {
                ctx.gen(1, 1)
                    .checked_mul(&reduced.submatrix(1, 1)?.qdet()?)?
                    .nf()?
            };
            let residual = lhs.checked_sub(&rhs)?.nf()?;
            report.push_residual(format!("column-identity[n={n}]"), &residual);
        }
        "centrality" => {
            let ctx = QContext::new(n, false)?;
            let det = ctx.generic_matrix().qdet()?;
            for i in 1..=n {
                for j in 1..=n {
                    let g = ctx.gen(i, j);
                    let residual = det
                        .checked_mul(&g)?
                        .checked_sub(&g.checked_mul(&det)?)?
                        .nf()?;
                    report.push_residual(format!("centrality[m{i}{j}]"), &residual);
                }
            }
        }
        "cofactor" => {
            let ctx = QContext::new(n, false)?;
            let z = ctx.generic_matrix();
            let det = z.qdet()?;
            let cof = z.cofactor_matrix()?;
            for (label, prod) in [("Z*cof", z.matmul(&cof)?), ("cof*Z", cof.matmul(&z)?)] {
                for i in 1..=n {
                    for j in 1..=n {
                        let expect = if i == j { det.clone() } else { ctx.zero() };
                        let residual = prod.at(i, j).checked_sub(&expect)?.nf()?;
                        report.push_residual(format!("cofactor.{label}[{i},{j}]"), &residual);
                    }
                }
            }
        }
        "grouplike" => {
            let plain = QContext::new(n, false)?;
            let tensor = TensorQContext::new(n)?;
            let det = plain.generic_matrix().qdet()?;
            let lhs = coproduct(&plain, &tensor, &det)?;
            let tctx = tensor.context();
            let left_entries = tensor.matrix_of(|i, j| tensor.left(i, j));
            let right_entries = tensor.matrix_of(|i, j| tensor.right(i, j));
            let qinv = plain.q().inverted_monomial()?;
            let det_side = |entries: &[NcPoly]| {
                weighted_perm_sum(tctx, n, entries, |perm| {
                    let w = qinv.pow(inversions(perm) as i32).unwrap();
                    if inversions(perm) % 2 == 1 {
                        w.negated()
                    } else {
                        w
                    }
                })
            };
            let rhs = det_side(&left_entries)?
                .checked_mul(&det_side(&right_entries)?)?
                .nf()?;
            let residual = lhs.checked_sub(&rhs)?.nf()?;
            report.push_residual(format!("grouplike[n={n}]"), &residual);
        }
        "counit" => {
            // (counit x id) o coproduct = id = (id x counit) o coproduct,
            // checked on every generator.
            let plain = QContext::new(n, false)?;
            let tensor = TensorQContext::new(n)?;
            let fold = |keep_left: bool| -> Morphism {
                let mut m = Morphism::new(tensor.context(), plain.context());
                for i in 1..=n {
                    for j in 1..=n {
                        let (lcode, limg) = (
                            tensor.context().code_by_name(&format!("zl{i}{j}")).unwrap(),
                            if keep_left {
                                plain.gen(i, j)
                            } else {
                                scalar_delta(&plain, i, j)
                            },
                        );
                        let (rcode, rimg) = (
                            tensor.context().code_by_name(&format!("zr{i}{j}")).unwrap(),
                            if keep_left {
                                scalar_delta(&plain, i, j)
                            } else {
                                plain.gen(i, j)
                            },
                        );
                        m = m.map_gen(lcode, limg).map_gen(rcode, rimg);
                    }
                }
                m
            };
            let left_fold = fold(false);
            let right_fold = fold(true);
            for i in 1..=n {
                for j in 1..=n {
                    let delta = coproduct(&plain, &tensor, &plain.gen(i, j))?;
                    let left = left_fold.apply(&delta)?;
                    let right = right_fold.apply(&delta)?;
                    report.push_residual(
                        format!("counit.left[m{i}{j}]"),
                        &left.checked_sub(&plain.gen(i, j))?.nf()?,
                    );
                    report.push_residual(
                        format!("counit.right[m{i}{j}]"),
                        &right.checked_sub(&plain.gen(i, j))?.nf()?,
                    );
                }
            }
        }
        "transpose" => {
            let ctx = QContext::new(n, false)?;
            let det = ctx.generic_matrix().qdet()?;
            let tdet = transpose_hom(&ctx).apply(&det)?;
            report.push_residual(format!("transpose[n={n}]"), &tdet.checked_sub(&det)?.nf()?);
        }
        "z-squared" => {
            // The entries of Z*Z satisfy the defining relations with q
            // replaced by q^2.
            let ctx = QContext::new(n, false)?;
            let z = ctx.generic_matrix();
            let z2 = z.matmul(&z)?;
            let q2 = QCoeffs::new(LaurentPoly::param_pow(ctx.params(), "q", 2));
            let rels = z2.relations_check_with(&q2)?;
            report.merge(CheckReport::from_relations("z-squared", &rels));
        }
        other => return Err(Error::UnknownIdentity(other.to_string())),
    }
    Ok(report)
}

fn scalar_delta(ctx: &QContext, i: usize, j: usize) -> NcPoly {
    if i == j {
        ctx.one()
    } else {
        ctx.zero()
    }
}
