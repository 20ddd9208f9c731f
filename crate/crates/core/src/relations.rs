//! The defining relation families of quantum matrix algebras, shared by the
//! one-parameter and multiparameter contexts.
//!
//! Every relation is an instance of one of four families on a pair of rows
//! `i <= j` and columns `k <= l`:
//!
//! - row (`i = j`, `k < l`):        `m[i,l]*m[i,k]  = row(k,l) * m[i,k]*m[i,l]`
//! - column (`i < j`, `k = l`):     `m[j,k]*m[i,k]  = col(i,j) * m[i,k]*m[j,k]`
//! - secondary diagonal (`i < j`, `k < l`): `m[j,k]*m[i,l] = sec * m[i,l]*m[j,k]`
//! - main diagonal (`i < j`, `k < l`):      `m[j,l]*m[i,k] = c1 * m[i,k]*m[j,l] + c2 * m[i,l]*m[j,k]`
//!
//! A [`RelationCoeffs`] supplies the coefficients; [`QCoeffs`] is the
//! one-parameter instance and [`MpCoeffs`] the multiparameter one. The same
//! instances drive rewrite-rule installation, residual checking of concrete
//! matrices, and the cocycle-twist comparison.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, ParamSpace};
use crate::ncalg::{Context, ContextBuilder, NcPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelFamily {
    Row,
    Column,
    SecondaryDiagonal,
    MainDiagonal,
}

impl RelFamily {
    pub fn label(&self) -> &'static str {
        match self {
            RelFamily::Row => "row",
            RelFamily::Column => "column",
            RelFamily::SecondaryDiagonal => "secondary-diagonal",
            RelFamily::MainDiagonal => "main-diagonal",
        }
    }
}

/// One relation instance on rows `i <= j` and columns `k <= l` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationInstance {
    pub family: RelFamily,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

/// All relation instances for dimension `n`, in a fixed deterministic order.
/// The count is `2*n*C(n,2) + 2*C(n,2)^2`.
pub fn instances(n: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            for l in (k + 1)..=n {
                out.push(RelationInstance {
                    family: RelFamily::Row,
                    i,
                    j: i,
                    k,
                    l,
                });
            }
        }
    }
    for k in 1..=n {
        for i in 1..=n {
            for j in (i + 1)..=n {
                out.push(RelationInstance {
                    family: RelFamily::Column,
                    i,
                    j,
                    k,
                    l: k,
                });
            }
        }
    }
    for family in [RelFamily::SecondaryDiagonal, RelFamily::MainDiagonal] {
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in 1..=n {
                    for l in (k + 1)..=n {
                        out.push(RelationInstance { family, i, j, k, l });
                    }
                }
            }
        }
    }
    out
}

/// Closed form for the instance count.
pub fn instance_count(n: usize) -> usize {
    let c2 = n * (n - 1) / 2;
    2 * n * c2 + 2 * c2 * c2
}

/// Coefficient provider for the four families.
pub trait RelationCoeffs {
    fn space(&self) -> &Arc<ParamSpace>;
    /// `m[i,l]*m[i,k] = row(k,l) * m[i,k]*m[i,l]` for `k < l`.
    fn row(&self, k: usize, l: usize) -> LaurentPoly;
    /// `m[j,k]*m[i,k] = col(i,j) * m[i,k]*m[j,k]` for `i < j`.
    fn col(&self, i: usize, j: usize) -> LaurentPoly;
    /// `m[j,k]*m[i,l] = sec(i,j,k,l) * m[i,l]*m[j,k]` for `i < j`, `k < l`.
    fn sec(&self, i: usize, j: usize, k: usize, l: usize) -> LaurentPoly;
    /// `m[j,l]*m[i,k] = c1 * m[i,k]*m[j,l] + c2 * m[i,l]*m[j,k]` for `i < j`, `k < l`.
    fn main(&self, i: usize, j: usize, k: usize, l: usize) -> (LaurentPoly, LaurentPoly);
}

/// One-parameter coefficients: `row = col = q`, `sec = 1`,
/// `main = (1, q - q^-1)`. The deformation parameter is any invertible
/// monomial, so the same provider serves the `q^2` variant.
pub struct QCoeffs {
    space: Arc<ParamSpace>,
    q: LaurentPoly,
}

impl QCoeffs {
    pub fn new(q: LaurentPoly) -> QCoeffs {
        QCoeffs {
            space: q.space().clone(),
            q,
        }
    }

    pub fn standard(space: &Arc<ParamSpace>) -> QCoeffs {
        QCoeffs::new(LaurentPoly::param(space, "q"))
    }

    pub fn q(&self) -> &LaurentPoly {
        &self.q
    }
}

impl RelationCoeffs for QCoeffs {
    fn space(&self) -> &Arc<ParamSpace> {
        &self.space
    }

    fn row(&self, _k: usize, _l: usize) -> LaurentPoly {
        self.q.clone()
    }

    fn col(&self, _i: usize, _j: usize) -> LaurentPoly {
        self.q.clone()
    }

    fn sec(&self, _i: usize, _j: usize, _k: usize, _l: usize) -> LaurentPoly {
        LaurentPoly::one(&self.space)
    }

    fn main(&self, _i: usize, _j: usize, _k: usize, _l: usize) -> (LaurentPoly, LaurentPoly) {
        let qinv = self
            .q
            .inverted_monomial()
            .expect("deformation parameter must be an invertible monomial");
        (
            LaurentPoly::one(&self.space),
            self.q.checked_sub(&qinv).unwrap(),
        )
    }
}

/// Multiparameter coefficients over `lambda` and a multiplicatively
/// antisymmetric matrix `p`:
///
/// - `row(k,l) = p_kl`  (i.e. `1 / p_lk`)
/// - `col(i,j) = lambda * p_ji`
/// - `sec      = lambda * p_ji / p_kl`
/// - `main     = (p_ji * p_kl, (lambda - 1) * p_ji)`
///
/// Specializing `lambda := q^2`, `p_ij := q` for `i < j` recovers the
/// one-parameter coefficients.
pub struct MpCoeffs {
    space: Arc<ParamSpace>,
    lambda: LaurentPoly,
    /// `p[i-1][j-1] = p_ij`, with `p_ii = 1` and `p_ji = p_ij^-1` filled in.
    p: Vec<Vec<LaurentPoly>>,
}

impl MpCoeffs {
    /// Generic coefficients over the standard space `[l, p12, ...]`.
    pub fn generic(space: &Arc<ParamSpace>, n: usize) -> MpCoeffs {
        let lambda = LaurentPoly::param(space, "l");
        let mut p = vec![vec![LaurentPoly::one(space); n]; n];
        for i in 1..=n {
            for j in (i + 1)..=n {
                let pij = LaurentPoly::param(space, &format!("p{i}{j}"));
                p[j - 1][i - 1] = pij.inverted_monomial().unwrap();
                p[i - 1][j - 1] = pij;
            }
        }
        MpCoeffs {
            space: space.clone(),
            lambda,
            p,
        }
    }

    /// Explicit coefficients: `upper[(i,j)]` gives `p_ij` for `i < j`.
    pub fn custom(
        space: &Arc<ParamSpace>,
        n: usize,
        lambda: LaurentPoly,
        upper: impl Fn(usize, usize) -> LaurentPoly,
    ) -> Result<MpCoeffs> {
        let mut p = vec![vec![LaurentPoly::one(space); n]; n];
        for i in 1..=n {
            for j in (i + 1)..=n {
                let pij = upper(i, j);
                p[j - 1][i - 1] = pij.inverted_monomial()?;
                p[i - 1][j - 1] = pij;
            }
        }
        Ok(MpCoeffs {
            space: space.clone(),
            lambda,
            p,
        })
    }

    pub fn lambda(&self) -> &LaurentPoly {
        &self.lambda
    }

    /// `p_ij` for arbitrary `i`, `j` (1-based).
    pub fn p(&self, i: usize, j: usize) -> LaurentPoly {
        self.p[i - 1][j - 1].clone()
    }

    /// `q_ij = lambda^(sign(i-j)) * p_ij`: the plane-commutation parameter.
    pub fn q_param(&self, i: usize, j: usize) -> LaurentPoly {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => LaurentPoly::one(&self.space),
            Greater => self.lambda.checked_mul(&self.p(i, j)).unwrap(),
            Less => self
                .lambda
                .inverted_monomial()
                .unwrap()
                .checked_mul(&self.p(i, j))
                .unwrap(),
        }
    }
}

impl RelationCoeffs for MpCoeffs {
    fn space(&self) -> &Arc<ParamSpace> {
        &self.space
    }

    fn row(&self, k: usize, l: usize) -> LaurentPoly {
        self.p(k, l)
    }

    fn col(&self, i: usize, j: usize) -> LaurentPoly {
        self.lambda.checked_mul(&self.p(j, i)).unwrap()
    }

    fn sec(&self, i: usize, j: usize, k: usize, l: usize) -> LaurentPoly {
        self.lambda
            .checked_mul(&self.p(j, i))
            .unwrap()
            .checked_mul(&self.p(l, k))
            .unwrap()
    }

    fn main(&self, i: usize, j: usize, k: usize, l: usize) -> (LaurentPoly, LaurentPoly) {
        let c1 = self.p(j, i).checked_mul(&self.p(k, l)).unwrap();
        let lm1 = self
            .lambda
            .checked_sub(&LaurentPoly::one(&self.space))
            .unwrap();
        let c2 = lm1.checked_mul(&self.p(j, i)).unwrap();
        (c1, c2)
    }
}

/// An entry position as a `(row, col)` pair.
pub type EntryPos = (usize, usize);

/// The oriented rewrite form of one instance: a two-letter pattern and its
/// replacement terms, all in entry positions.
pub type OrientedRule = ((EntryPos, EntryPos), Vec<(Vec<EntryPos>, LaurentPoly)>);

pub fn oriented_rule(inst: &RelationInstance, coeffs: &dyn RelationCoeffs) -> OrientedRule {
    let RelationInstance { family, i, j, k, l } = *inst;
    match family {
        RelFamily::Row => (
            ((i, l), (i, k)),
            vec![(vec![(i, k), (i, l)], coeffs.row(k, l))],
        ),
        RelFamily::Column => (
            ((j, k), (i, k)),
            vec![(vec![(i, k), (j, k)], coeffs.col(i, j))],
        ),
        RelFamily::SecondaryDiagonal => (
            ((j, k), (i, l)),
            vec![(vec![(i, l), (j, k)], coeffs.sec(i, j, k, l))],
        ),
        RelFamily::MainDiagonal => {
            let (c1, c2) = coeffs.main(i, j, k, l);
            (
                ((j, l), (i, k)),
                vec![(vec![(i, k), (j, l)], c1), (vec![(i, l), (j, k)], c2)],
            )
        }
    }
}

/// Install the full relation system for dimension `n` on a builder whose
/// entry generators are addressed by `entry(i, j)`.
pub fn install_rules(
    builder: &mut ContextBuilder,
    n: usize,
    entry: impl Fn(usize, usize) -> u16,
    coeffs: &dyn RelationCoeffs,
) -> Result<()> {
    for inst in instances(n) {
        let ((a, b), rhs) = oriented_rule(&inst, coeffs);
        let rhs = rhs
            .into_iter()
            .map(|(word, c)| (word.into_iter().map(|(r, s)| entry(r, s)).collect(), c))
            .collect();
        builder.add_rule(entry(a.0, a.1), entry(b.0, b.1), rhs)?;
    }
    Ok(())
}

/// Derive the commutation rules past the inverse of the `(1,1)` entry from
/// the already-installed entry relations, plus the two cancellation rules.
///
/// For a generator `g` with `g*m11 = alpha * m11*g` this yields
/// `g*inv -> alpha^-1 * inv*g`; for an interior generator with
/// `g*m11 = alpha * m11*g + beta * r*s` (with `r`, `s` on the first row and
/// column) it yields
/// `g*inv -> alpha^-1 * inv*g - alpha^-1*beta*alpha_r^-1*alpha_s^-1 * inv^2*r*s`.
/// Soundness is certified separately by [`verify_pivot_rules`].
pub fn derive_pivot_rules(
    builder: &mut ContextBuilder,
    n: usize,
    entry: impl Fn(usize, usize) -> u16,
    inv: u16,
) -> Result<()> {
    let one = LaurentPoly::one(builder.params());
    let pivot = entry(1, 1);
    builder.add_rule(pivot, inv, vec![(vec![], one.clone())])?;
    builder.add_rule(inv, pivot, vec![(vec![], one)])?;

    // Monomial commutation coefficient of g past the pivot, for first-row
    // and first-column generators.
    let swap_coef = |builder: &ContextBuilder, code: u16| -> Result<LaurentPoly> {
        let rhs = builder
            .rule_for(code, pivot)
            .ok_or_else(|| Error::Internal("missing entry relation against the pivot".into()))?;
        if rhs.len() != 1 {
            return Err(Error::Internal(
                "border generator does not commute monomially with the pivot".into(),
            ));
        }
        Ok(rhs[0].1.clone())
    };

    for j in 2..=n {
        for code in [entry(1, j), entry(j, 1)] {
            let alpha = swap_coef(builder, code)?;
            builder.add_rule(
                code,
                inv,
                vec![(vec![inv, code], alpha.inverted_monomial()?)],
            )?;
        }
    }

    for j in 2..=n {
        for l in 2..=n {
            let g = entry(j, l);
            let rhs = builder
                .rule_for(g, pivot)
                .ok_or_else(|| Error::Internal("missing interior relation".into()))?
                .clone();
            // Expect alpha * [m11, g] + beta * [r, s].
            let mut alpha = None;
            let mut extra = None;
            for (word, c) in &rhs {
                let letters = word.letters();
                if letters == [pivot, g] {
                    alpha = Some(c.clone());
                } else if letters.len() == 2 {
                    extra = Some((letters[0], letters[1], c.clone()));
                } else {
                    return Err(Error::Internal(
                        "unexpected replacement shape in interior relation".into(),
                    ));
                }
            }
            let alpha = alpha.ok_or_else(|| {
                Error::Internal("interior relation lacks the sorted leading word".into())
            })?;
            let alpha_inv = alpha.inverted_monomial()?;
            let mut rule = vec![(vec![inv, g], alpha_inv.clone())];
            if let Some((r, s, beta)) = extra {
                let ar = swap_coef(builder, r)?.inverted_monomial()?;
                let as_ = swap_coef(builder, s)?.inverted_monomial()?;
                let coef = alpha_inv
                    .checked_mul(&beta)?
                    .checked_mul(&ar)?
                    .checked_mul(&as_)?
                    .negated();
                rule.push((vec![inv, inv, r, s], coef));
            }
            builder.add_rule(g, inv, rule)?;
        }
    }
    Ok(())
}

/// Multiply-back certificate for the derived inverse rules: for every entry
/// generator `g`, `nf(nf(g*inv) * m11) == g`, and both cancellations reduce
/// to 1. Run once per localized context at construction.
pub fn verify_pivot_rules(
    ctx: &Arc<Context>,
    n: usize,
    entry: impl Fn(usize, usize) -> u16,
    inv: u16,
) -> Result<()> {
    let pivot = NcPoly::gen(ctx, entry(1, 1));
    let inv_p = NcPoly::gen(ctx, inv);
    let one = NcPoly::one(ctx);
    if pivot.checked_mul(&inv_p)?.nf()? != one || inv_p.checked_mul(&pivot)?.nf()? != one {
        return Err(Error::Internal(
            "pivot cancellation rules are unsound".into(),
        ));
    }
    for i in 1..=n {
        for j in 1..=n {
            let g = NcPoly::gen(ctx, entry(i, j));
            let reduced = g.checked_mul(&inv_p)?.nf()?;
            let back = reduced.checked_mul(&pivot)?.nf()?;
            if back != g {
                return Err(Error::Internal(format!(
                    "derived inverse rule fails multiply-back for {}",
                    ctx.gen_name(entry(i, j))
                )));
            }
            // The word g*inv*m11 has two competing redexes: the derived
            // rule on the left pair and the cancellation on the right pair.
            // All strategies must meet at g.
            let word = crate::ncalg::Word::from_codes(&[entry(i, j), inv, entry(1, 1)]);
            if !ctx.confluence_probe(&word, 0)? {
                return Err(Error::Internal(format!(
                    "inverse-rule reduction strategies disagree for {}",
                    ctx.gen_name(entry(i, j))
                )));
            }
        }
    }
    Ok(())
}

/// Result of evaluating every relation instance on a concrete matrix.
#[derive(Debug, Clone)]
pub struct RelationRecord {
    pub instance: RelationInstance,
    pub residual: NcPoly,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct RelationReport {
    pub records: Vec<RelationRecord>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.holds)
    }

    pub fn failed(&self) -> usize {
        self.records.iter().filter(|r| !r.holds).count()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Evaluate every relation instance on the `n x n` matrix `entries`
/// (row-major, 1-based indexing through `entries[(i-1)*n + (j-1)]`); the
/// residual of an instance is the normal form of
/// `pattern - sum(replacements)` with entries substituted for generators.
pub fn relation_residuals(
    ctx: &Arc<Context>,
    n: usize,
    entries: &[NcPoly],
    coeffs: &dyn RelationCoeffs,
) -> Result<RelationReport> {
    assert_eq!(entries.len(), n * n, "entry slice must be n x n");
    let at = |i: usize, j: usize| &entries[(i - 1) * n + (j - 1)];
    let mut records = Vec::with_capacity(instance_count(n));
    for inst in instances(n) {
        let ((a, b), rhs) = oriented_rule(&inst, coeffs);
        let mut acc = at(a.0, a.1).checked_mul(at(b.0, b.1))?;
        for (word, c) in rhs {
            let mut prod = NcPoly::scalar(ctx, c);
            for (r, s) in word {
                prod = prod.checked_mul(at(r, s))?;
            }
            acc = acc.checked_sub(&prod)?;
        }
        let residual = ctx.normal_form(&acc)?;
        let holds = residual.is_zero();
        records.push(RelationRecord {
            instance: inst,
            residual,
            holds,
        });
    }
    Ok(RelationReport { records })
}
