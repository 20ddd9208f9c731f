//! Dieudonne determinant machinery: Bruhat normal form over a division
//! ring, the semi-determinant built from it, and the exact pivot-chain
//! factorization of quantum determinants through the localization tower.
//!
//! Division is only computable on the commutative instances (rationals and
//! univariate rational functions); the quantum side never divides, it works
//! through the pivot chain, where each level's soundness certificate is the
//! row-reduction theorem checked by normal forms.

use std::fmt;
use std::sync::Arc;

use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, ParamSpace, Rational};
use crate::ncalg::{Morphism, NcPoly};
use crate::perm::sign;
use crate::qmatrix::QContext;
use crate::report::CheckReport;

/// Abstract division-ring operations over an element type.
pub trait DivisionRing {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_commutative(&self) -> bool;
}

/// The rational numbers.
pub struct RationalField;

impl DivisionRing for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn invert(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            Err(Error::Singular)
        } else {
            Ok(Rational::one() / a)
        }
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// A reduced fraction of univariate Laurent polynomials; the field of
/// rational functions in `q` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Build and normalize: cancel the polynomial gcd and make the
    /// denominator monic with a nonnegative leading exponent.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::Singular);
        }
        assert_eq!(num.space().arity(), 1, "rational functions are univariate");
        if num.is_zero() || den.is_one() {
            let space = num.space().clone();
            return Ok(RatFunc {
                num,
                den: LaurentPoly::one(&space),
            });
        }
        let space = num.space().clone();
        let (pn, sn) = to_poly(&num);
        let (pd, sd) = to_poly(&den);
        let g = poly_gcd(&pn, &pd);
        let pn = poly_div_exact(&pn, &g);
        let pd = poly_div_exact(&pd, &g);
        // Make the denominator monic; fold the shift into the numerator.
        let lead = pd.last().unwrap().clone();
        let pn: Vec<Rational> = pn.iter().map(|c| c / &lead).collect();
        let pd: Vec<Rational> = pd.iter().map(|c| c / &lead).collect();
        Ok(RatFunc {
            num: from_poly(&space, &pn, sn - sd),
            den: from_poly(&space, &pd, 0),
        })
    }

    pub fn from_laurent(p: LaurentPoly) -> RatFunc {
        let one = LaurentPoly::one(p.space());
        RatFunc::new(p, one).expect("unit denominator")
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Ascending coefficient vector and the exponent shift of the lowest term.
fn to_poly(p: &LaurentPoly) -> (Vec<Rational>, i32) {
    let min = p.terms().map(|(e, _)| e[0]).min().unwrap();
    let max = p.terms().map(|(e, _)| e[0]).max().unwrap();
    let mut coeffs = vec![Rational::zero(); (max - min + 1) as usize];
    for (e, c) in p.terms() {
        coeffs[(e[0] - min) as usize] = c.clone();
    }
    (coeffs, min)
}

fn from_poly(space: &Arc<ParamSpace>, coeffs: &[Rational], shift: i32) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(space);
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let m = LaurentPoly::monomial(space, c.clone(), &[shift + i as i32]);
            acc = acc.checked_add(&m).unwrap();
        }
    }
    acc
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::zero());
    }
    p
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        if r[dr].is_zero() {
            r.pop();
            continue;
        }
        let f = &r[dr] / lead;
        for i in 0..=db {
            let v = &r[dr - db + i] - &(&b[i] * &f);
            r[dr - db + i] = v;
        }
        r.pop();
    }
    poly_trim(r)
}

fn poly_monic(p: Vec<Rational>) -> Vec<Rational> {
    let lead = p.last().unwrap().clone();
    if lead.is_zero() || lead.is_one() {
        return p;
    }
    p.iter().map(|c| c / &lead).collect()
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    // Keeping every intermediate monic tames coefficient growth.
    let mut x = poly_monic(poly_trim(a.to_vec()));
    let mut y = poly_monic(poly_trim(b.to_vec()));
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = poly_monic(poly_rem(&x, &y));
        x = y;
        y = r;
    }
    if x.last().unwrap().is_zero() {
        return vec![Rational::one()];
    }
    x
}

/// Exact quotient; the caller guarantees `b` divides `a`.
fn poly_div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead = &b[db];
    if r.len() <= db {
        return vec![Rational::zero()];
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        if r[dr].is_zero() {
            r.pop();
            continue;
        }
        let f = &r[dr] / lead;
        q[dr - db] = f.clone();
        for i in 0..=db {
            let v = &r[dr - db + i] - &(&b[i] * &f);
            r[dr - db + i] = v;
        }
        r.pop();
    }
    q
}

/// The field of rational functions in one parameter.
pub struct RatFuncField {
    space: Arc<ParamSpace>,
}

impl RatFuncField {
    pub fn new(space: &Arc<ParamSpace>) -> RatFuncField {
        assert_eq!(space.arity(), 1, "rational-function field is univariate");
        RatFuncField {
            space: space.clone(),
        }
    }

    pub fn space(&self) -> &Arc<ParamSpace> {
        &self.space
    }

    pub fn from_laurent(&self, p: LaurentPoly) -> RatFunc {
        RatFunc::from_laurent(p)
    }
}

impl DivisionRing for RatFuncField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::from_laurent(LaurentPoly::zero(&self.space))
    }

    fn one(&self) -> RatFunc {
        RatFunc::from_laurent(LaurentPoly::one(&self.space))
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let num = a
            .num
            .checked_mul(&b.den)
            .unwrap()
            .checked_add(&b.num.checked_mul(&a.den).unwrap())
            .unwrap();
        RatFunc::new(num, a.den.checked_mul(&b.den).unwrap()).unwrap()
    }

    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        RatFunc::new(
            a.num.checked_mul(&b.num).unwrap(),
            a.den.checked_mul(&b.den).unwrap(),
        )
        .unwrap()
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: a.num.negated(),
            den: a.den.clone(),
        }
    }

    fn invert(&self, a: &RatFunc) -> Result<RatFunc> {
        if a.is_zero() {
            return Err(Error::Singular);
        }
        RatFunc::new(a.den.clone(), a.num.clone())
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// A dense matrix over a division ring (0-based indexing).
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Mat<E> {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity<R: DivisionRing<Elem = E>>(ring: &R, n: usize) -> Mat<E> {
        let mut data = vec![ring.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = ring.one();
        }
        Mat { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.n + c] = v;
    }

    pub fn transposed(&self) -> Mat<E> {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(self.at(c, r).clone());
            }
        }
        Mat { n, data }
    }

    pub fn matmul<R: DivisionRing<Elem = E>>(&self, ring: &R, other: &Mat<E>) -> Mat<E> {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = ring.zero();
                for k in 0..n {
                    acc = ring.add(&acc, &ring.mul(self.at(r, k), other.at(k, c)));
                }
                data.push(acc);
            }
        }
        Mat { n, data }
    }
}

/// Order in which clearing operations are performed; all orders compute a
/// valid decomposition, so `(U, sigma)` must agree across them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EliminationOrder {
    /// Clear above the pivot first, then to its left.
    UpThenLeft,
    /// Clear to the left of the pivot first, then above it.
    LeftThenUp,
    /// Interleave the two phases with a seeded deterministic RNG.
    Seeded(u64),
}

/// Bruhat normal form `A = T * U * P(sigma) * V` with `T` upper
/// unitriangular, `U` diagonal, `P(sigma)[i][j] = 1` iff `i = sigma(j)`,
/// and `V` lower unitriangular.
#[derive(Debug, Clone)]
pub struct BruhatDecomposition<E> {
    pub t: Mat<E>,
    pub diag: Vec<E>,
    /// `sigma[j]` is the row carrying the pivot of column `j`.
    pub sigma: Vec<usize>,
    pub v: Mat<E>,
}

impl<E: Clone + PartialEq> BruhatDecomposition<E> {
    pub fn sign(&self) -> i64 {
        sign(&self.sigma)
    }

    pub fn permutation_matrix<R: DivisionRing<Elem = E>>(&self, ring: &R) -> Mat<E> {
        let n = self.sigma.len();
        let mut p = Mat {
            n,
            data: vec![ring.zero(); n * n],
        };
        for (j, &i) in self.sigma.iter().enumerate() {
            p.set(i, j, ring.one());
        }
        p
    }

    pub fn recompose<R: DivisionRing<Elem = E>>(&self, ring: &R) -> Mat<E> {
        let n = self.sigma.len();
        let mut u = Mat {
            n,
            data: vec![ring.zero(); n * n],
        };
        for i in 0..n {
            u.set(i, i, self.diag[i].clone());
        }
        self.t
            .matmul(ring, &u)
            .matmul(ring, &self.permutation_matrix(ring))
            .matmul(ring, &self.v)
    }
}

/// Decompose by bottom-up elimination: the pivot of each row (processed from
/// the last row upward) is its rightmost nonzero entry among unassigned
/// columns; the column is cleared above the pivot by row operations (upper
/// unitriangular, absorbed into `T`) and the row is cleared to the left by
/// column operations (lower unitriangular, absorbed into `V`).
pub fn bruhat_decompose<R: DivisionRing>(
    ring: &R,
    a: &Mat<R::Elem>,
    order: EliminationOrder,
) -> Result<BruhatDecomposition<R::Elem>> {
    let n = a.n();
    let mut m = a.clone();
    let mut t = Mat::identity(ring, n);
    let mut v = Mat::identity(ring, n);
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut rng = match order {
        EliminationOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };

    for r in (0..n).rev() {
        let pivot_col = (0..n)
            .rev()
            .find(|&c| !used[c] && !ring.is_zero(m.at(r, c)))
            .ok_or(Error::Singular)?;
        used[pivot_col] = true;
        sigma[pivot_col] = r;
        let pivot_inv = ring.invert(m.at(r, pivot_col))?;

        let clear_up = |m: &mut Mat<R::Elem>, t: &mut Mat<R::Elem>, i: usize| {
            // row_i -= f * row_r with f = m[i][pc] * pivot^-1; row r is
            // supported on the pivot column only after its left clear, but
            // before it the subtraction must run over all columns.
            let f = ring.mul(m.at(i, pivot_col), &pivot_inv);
            if ring.is_zero(&f) {
                return;
            }
            for y in 0..n {
                let delta = ring.mul(&f, m.at(r, y));
                let val = ring.sub(m.at(i, y), &delta);
                m.set(i, y, val);
            }
            // T tracks the inverse operation: T.col_r += T.col_i * f.
            for x in 0..n {
                let delta = ring.mul(t.at(x, i), &f);
                let val = ring.add(t.at(x, r), &delta);
                t.set(x, r, val);
            }
        };
        let clear_left = |m: &mut Mat<R::Elem>, v: &mut Mat<R::Elem>, k: usize| {
            // col_k -= col_pc * g with g = pivot^-1 * m[r][k].
            let g = ring.mul(&pivot_inv, m.at(r, k));
            if ring.is_zero(&g) {
                return;
            }
            for x in 0..n {
                let delta = ring.mul(m.at(x, pivot_col), &g);
                let val = ring.sub(m.at(x, k), &delta);
                m.set(x, k, val);
            }
            // V tracks the inverse op (I + e_{pc,k} g) on the left:
            // V.row_pc += g * V.row_k.
            for y in 0..n {
                let delta = ring.mul(&g, v.at(k, y));
                let val = ring.add(v.at(pivot_col, y), &delta);
                v.set(pivot_col, y, val);
            }
        };

        let ups: Vec<usize> = (0..r).collect();
        let lefts: Vec<usize> = (0..n).filter(|&k| !used[k] && k < pivot_col).collect();
        match order {
            EliminationOrder::UpThenLeft => {
                for &i in &ups {
                    clear_up(&mut m, &mut t, i);
                }
                for &k in &lefts {
                    clear_left(&mut m, &mut v, k);
                }
            }
            EliminationOrder::LeftThenUp => {
                for &k in &lefts {
                    clear_left(&mut m, &mut v, k);
                }
                for &i in &ups {
                    clear_up(&mut m, &mut t, i);
                }
            }
            EliminationOrder::Seeded(_) => {
                let rng = rng.as_mut().unwrap();
                let mut ops: Vec<(bool, usize)> = ups
                    .iter()
                    .map(|&i| (true, i))
                    .chain(lefts.iter().map(|&k| (false, k)))
                    .collect();
                // Fisher-Yates with the seeded generator.
                for i in (1..ops.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    ops.swap(i, j);
                }
                for (is_up, idx) in ops {
                    if is_up {
                        clear_up(&mut m, &mut t, idx);
                    } else {
                        clear_left(&mut m, &mut v, idx);
                    }
                }
            }
        }
    }

    let mut diag = vec![ring.zero(); n];
    for c in 0..n {
        diag[sigma[c]] = m.at(sigma[c], c).clone();
    }
    Ok(BruhatDecomposition { t, diag, sigma, v })
}

/// `sign(sigma) * u_1 * ... * u_n` from the Bruhat normal form; zero for a
/// non-invertible matrix.
pub fn delta_epsilon_tau<R: DivisionRing>(ring: &R, a: &Mat<R::Elem>) -> Result<R::Elem> {
    match bruhat_decompose(ring, a, EliminationOrder::UpThenLeft) {
        Ok(dec) => {
            let mut acc = if dec.sign() == 1 {
                ring.one()
            } else {
                ring.neg(&ring.one())
            };
            for u in &dec.diag {
                acc = ring.mul(&acc, u);
            }
            Ok(acc)
        }
        Err(Error::Singular) => Ok(ring.zero()),
        Err(e) => Err(e),
    }
}

/// Classical determinant by cofactor expansion along the first row; the
/// independent oracle for the commutative instances.
pub fn classical_det<R: DivisionRing>(ring: &R, a: &Mat<R::Elem>) -> R::Elem {
    let n = a.n();
    if n == 1 {
        return a.at(0, 0).clone();
    }
    let mut acc = ring.zero();
    for j in 0..n {
        let rows: Vec<Vec<R::Elem>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| a.at(r, c).clone())
                    .collect()
            })
            .collect();
        let minor = classical_det(ring, &Mat::from_rows(rows));
        let term = ring.mul(a.at(0, j), &minor);
        if j % 2 == 0 {
            acc = ring.add(&acc, &term);
        } else {
            acc = ring.sub(&acc, &term);
        }
    }
    acc
}

/// One level of the localization tower.
pub struct PivotChainLevel {
    pub level: usize,
    /// The quantum matrix context of dimension `n - level` at this level.
    pub qctx: QContext,
    /// The level's pivot: the `(1,1)` generator.
    pub pivot: NcPoly,
    /// Substitution of this level's generators into the previous level
    /// (`None` at level 0).
    pub down: Option<Morphism>,
    /// Soundness certificate: the substituted matrix satisfies the defining
    /// relations in the previous level's context.
    pub relations_ok: bool,
}

pub struct PivotChain {
    pub n: usize,
    pub levels: Vec<PivotChainLevel>,
}

/// Build the full tower for the generic matrix: level `m` holds abstract
/// generators for the `(n-m)`-dimensional algebra, substituted into level
/// `m-1` by one row-reduction step, with the relation certificate checked
/// before the level is trusted.
pub fn pivot_chain(n: usize) -> Result<PivotChain> {
    if n < 1 {
        return Err(Error::DimensionMismatch("dimension must be >= 1".into()));
    }
    let mut levels: Vec<PivotChainLevel> = Vec::with_capacity(n);
    for m in 0..n {
        let dim = n - m;
        let qctx = if m == 0 {
            QContext::new(n, true)?
        } else {
            QContext::abstract_level(dim, m, dim > 1)?
        };
        let (down, relations_ok) = if m == 0 {
            let report = qctx.generic_matrix().relations_check()?;
            (None, report.all_hold())
        } else {
            let prev = &levels[m - 1].qctx;
            let inv = prev.pivot_inverse()?;
            let mut hom = Morphism::new(qctx.context(), prev.context());
            let mut entries = Vec::with_capacity(dim * dim);
            for i in 1..=dim {
                for j in 1..=dim {
                    let img = prev
                        .gen(i + 1, j + 1)
                        .checked_sub(
                            &prev
                                .gen(i + 1, 1)
                                .checked_mul(&inv)?
                                .checked_mul(&prev.gen(1, j + 1))?,
                        )?
                        .nf()?;
                    entries.push(img.clone());
                    hom = hom.map_gen(qctx.entry_code(i, j), img);
                }
            }
            let report = crate::relations::relation_residuals(
                prev.context(),
                dim,
                &entries,
                &prev.coeffs(),
            )?;
            (Some(hom), report.all_hold())
        };
        let pivot = qctx.gen(1, 1);
        levels.push(PivotChainLevel {
            level: m,
            qctx,
            pivot,
            down,
            relations_ok,
        });
    }
    Ok(PivotChain { n, levels })
}

/// The exact factorization behind the identification of the two
/// determinants: at every level `m`,
/// `qdet(level m) = pivot_m * subst(qdet(level m+1))`, an identity of
/// normal forms in the level-`m` localization. Together with the level
/// certificates this realizes the quantum determinant as the ordered
/// product of the pivot chain.
pub fn corollary_check(n: usize) -> Result<CheckReport> {
    let chain = pivot_chain(n)?;
    let mut report = CheckReport::new();
    for level in &chain.levels {
        report.push(
            format!("pivot-chain.relations[level={}]", level.level),
            level.relations_ok,
            None,
        );
    }
    for m in 0..n.saturating_sub(1) {
        let here = &chain.levels[m];
        let next = &chain.levels[m + 1];
        let lhs = here.qctx.generic_matrix().qdet()?;
        let next_det = next.qctx.generic_matrix().qdet()?;
        let pushed = next
            .down
            .as_ref()
            .expect("levels above 0 carry substitutions")
            .apply(&next_det)?;
        let rhs = here.pivot.checked_mul(&pushed)?.nf()?;
        let residual = lhs.checked_sub(&rhs)?.nf()?;
        report.push_residual(format!("pivot-chain.factorization[level={m}]"), &residual);
    }
    Ok(report)
}

/// The transpose counterexample: for `A = [[1, a], [b, a*b]]` with
/// non-commuting `a`, `b`, the pivot chain of `A` ends in a nonzero pivot
/// while the chain of the transpose ends in zero.
pub fn transpose_counterexample_check() -> Result<CheckReport> {
    let ctx = QContext::new(2, false)?;
    let a = ctx.gen(1, 1);
    let b = ctx.gen(1, 2);
    let ab = a.checked_mul(&b)?.nf()?;
    // Second pivot of M = [[1, x], [y, x*y]] after clearing with the unit
    // pivot: x*y - y*x.
    let second_pivot =
        |x: &NcPoly, y: &NcPoly| -> Result<NcPoly> { ab.checked_sub(&y.checked_mul(x)?)?.nf() };
    let mut report = CheckReport::new();

    let pa = second_pivot(&a, &b)?;
    // (1 - q) * a * b, from the row commutation b*a = q*a*b.
    let q = ctx.q();
    let expected = ab.scaled(&LaurentPoly::one(ctx.params()).checked_sub(&q)?);
    report.push(
        "counterexample.pivot[A]",
        !pa.is_zero() && pa == expected,
        Some(pa.to_string()),
    );

    let pt = second_pivot(&b, &a)?;
    report.push(
        "counterexample.pivot[At]",
        pt.is_zero(),
        Some(pt.to_string()),
    );

    // At q = 1 both pivots degenerate to zero.
    let mut classical =
        Morphism::new(ctx.context(), ctx.context()).bind_param("q", LaurentPoly::one(ctx.params()));
    for i in 1..=2 {
        for j in 1..=2 {
            classical = classical.map_gen(ctx.entry_code(i, j), ctx.gen(i, j));
        }
    }
    let degenerate = classical.apply(&pa)?;
    report.push(
        "counterexample.pivot[A,q=1]",
        degenerate.is_zero(),
        Some(degenerate.to_string()),
    );
    Ok(report)
}

/// Evaluate a parsed expression as a rational function.
pub fn eval_ratfunc(e: &crate::text::Expr, field: &RatFuncField) -> Result<RatFunc> {
    use crate::text::Expr;
    match e {
        Expr::Num(c) => Ok(field.from_laurent(LaurentPoly::constant(field.space(), c.clone()))),
        Expr::Sym(s) => {
            if field.space().index_of(s).is_some() {
                Ok(field.from_laurent(LaurentPoly::param(field.space(), s)))
            } else {
                Err(Error::MissingBinding { param: s.clone() })
            }
        }
        Expr::Neg(a) => Ok(field.neg(&eval_ratfunc(a, field)?)),
        Expr::Add(a, b) => Ok(field.add(&eval_ratfunc(a, field)?, &eval_ratfunc(b, field)?)),
        Expr::Sub(a, b) => Ok(field.sub(&eval_ratfunc(a, field)?, &eval_ratfunc(b, field)?)),
        Expr::Mul(a, b) => Ok(field.mul(&eval_ratfunc(a, field)?, &eval_ratfunc(b, field)?)),
        Expr::Div(a, b) => {
            let d = field.invert(&eval_ratfunc(b, field)?)?;
            Ok(field.mul(&eval_ratfunc(a, field)?, &d))
        }
        Expr::Pow(a, k) => {
            let base = eval_ratfunc(a, field)?;
            let mut acc = field.one();
            for _ in 0..k.unsigned_abs() {
                acc = field.mul(&acc, &base);
            }
            if *k < 0 {
                acc = field.invert(&acc)?;
            }
            Ok(acc)
        }
    }
}

/// Parse a rational-function string, e.g. `(q^2 - 1)/(q + 3)`.
pub fn parse_ratfunc(input: &str, field: &RatFuncField) -> Result<RatFunc> {
    eval_ratfunc(&crate::text::parse_expr(input)?, field)
}

/// Sampling helper for the randomized Dieudonne suite: a random Laurent
/// polynomial in `q` with small degrees and coefficients.
pub fn random_laurent(space: &Arc<ParamSpace>, rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(space);
    let terms = rng.gen_range(0..=2);
    for _ in 0..=terms {
        let e = rng.gen_range(-2..=2);
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            let m = LaurentPoly::monomial(space, Rational::from(num::BigInt::from(c)), &[e]);
            acc = acc.checked_add(&m).unwrap();
        }
    }
    acc
}

/// A random matrix over the rational-function field, resampled until
/// invertible (checked through the classical determinant).
pub fn random_invertible_matrix(
    field: &RatFuncField,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Mat<RatFunc> {
    loop {
        let rows: Vec<Vec<RatFunc>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| field.from_laurent(random_laurent(field.space(), rng)))
                    .collect()
            })
            .collect();
        let m = Mat::from_rows(rows);
        if !classical_det(field, &m).is_zero() {
            return m;
        }
    }
}

/// A random unitriangular matrix (upper when `upper` is set).
pub fn random_unitriangular(
    field: &RatFuncField,
    n: usize,
    upper: bool,
    rng: &mut ChaCha8Rng,
) -> Mat<RatFunc> {
    let mut m = Mat::identity(field, n);
    for r in 0..n {
        for c in 0..n {
            if (upper && c > r) || (!upper && c < r) {
                m.set(r, c, field.from_laurent(random_laurent(field.space(), rng)));
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qspace() -> Arc<ParamSpace> {
        ParamSpace::q()
    }

    fn rf(field: &RatFuncField, s: &str) -> RatFunc {
        parse_ratfunc(s, field).unwrap()
    }

    #[test]
    fn ratfunc_normalizes_to_reduced_monic_form() {
        let f = RatFuncField::new(&qspace());
        // (q^2 - 1)/(q - 1) reduces to q + 1.
        let v = rf(&f, "(q^2 - 1)/(q - 1)");
        assert_eq!(v, rf(&f, "q + 1"));
        assert!(v.den().is_one());
        // Equal fractions in different clothing are structurally equal.
        assert_eq!(rf(&f, "(2*q)/(2*q + 2)"), rf(&f, "q/(q + 1)"));
    }

    #[test]
    fn bruhat_identity_and_antidiagonal() {
        let f = RatFuncField::new(&qspace());
        let id2 = Mat::identity(&f, 2);
        let dec = bruhat_decompose(&f, &id2, EliminationOrder::UpThenLeft).unwrap();
        assert_eq!(dec.sigma, vec![0, 1]);
        assert!(dec.diag.iter().all(|u| *u == f.one()));
        assert_eq!(dec.recompose(&f), id2);

        let anti = Mat::from_rows(vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]);
        let dec = bruhat_decompose(&f, &anti, EliminationOrder::UpThenLeft).unwrap();
        assert_eq!(dec.sigma, vec![1, 0]);
        assert_eq!(dec.sign(), -1);
        assert!(dec.diag.iter().all(|u| *u == f.one()));
        assert_eq!(dec.t, Mat::identity(&f, 2));
        assert_eq!(dec.v, Mat::identity(&f, 2));
        assert_eq!(dec.recompose(&f), anti);
    }

    #[test]
    fn delta_epsilon_tau_examples() {
        let f = RatFuncField::new(&qspace());
        // Diagonal matrices multiply their entries.
        let d = Mat::from_rows(vec![
            vec![rf(&f, "q"), f.zero()],
            vec![f.zero(), rf(&f, "q + 1")],
        ]);
        assert_eq!(delta_epsilon_tau(&f, &d).unwrap(), rf(&f, "q^2 + q"));
        // Generic 2x2: ad - cb.
        let m = Mat::from_rows(vec![
            vec![rf(&f, "q"), rf(&f, "1")],
            vec![rf(&f, "2"), rf(&f, "q")],
        ]);
        assert_eq!(delta_epsilon_tau(&f, &m).unwrap(), rf(&f, "q^2 - 2"));
        assert_eq!(classical_det(&f, &m), rf(&f, "q^2 - 2"));
        // Equal rows: singular, value 0.
        let s = Mat::from_rows(vec![
            vec![rf(&f, "q"), rf(&f, "1")],
            vec![rf(&f, "q"), rf(&f, "1")],
        ]);
        assert!(delta_epsilon_tau(&f, &s).unwrap().is_zero());
    }

    #[test]
    fn elimination_orders_agree_on_u_and_sigma() {
        let f = RatFuncField::new(&qspace());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            for _ in 0..5 {
                let m = random_invertible_matrix(&f, n, &mut rng);
                let a = bruhat_decompose(&f, &m, EliminationOrder::UpThenLeft).unwrap();
                let b = bruhat_decompose(&f, &m, EliminationOrder::LeftThenUp).unwrap();
                let c = bruhat_decompose(&f, &m, EliminationOrder::Seeded(99)).unwrap();
                assert_eq!(a.sigma, b.sigma);
                assert_eq!(a.sigma, c.sigma);
                assert_eq!(a.diag, b.diag);
                assert_eq!(a.diag, c.diag);
                assert_eq!(a.recompose(&f), m);
                assert_eq!(b.recompose(&f), m);
            }
        }
    }

    #[test]
    fn pivot_chain_n2_reproduces_the_two_by_two_factorization() {
        // a * (d - c a^-1 b) = ad - q^-1 bc exactly.
        let chain = pivot_chain(2).unwrap();
        assert_eq!(chain.levels.len(), 2);
        assert!(chain.levels.iter().all(|l| l.relations_ok));
        let report = corollary_check(2).unwrap();
        assert!(report.all_hold(), "{:?}", report.checks);
    }

    #[test]
    fn rational_instance_matches_the_classical_determinant() {
        let f = RationalField;
        let q = |a: i64, b: i64| Rational::new(num::BigInt::from(a), num::BigInt::from(b));
        let m = Mat::from_rows(vec![vec![q(1, 2), q(3, 1)], vec![q(2, 1), q(5, 1)]]);
        let de = delta_epsilon_tau(&f, &m).unwrap();
        assert_eq!(de, classical_det(&f, &m));
        assert_eq!(de, q(-7, 2));
    }

    #[test]
    fn swapped_diagonals_have_equal_values_over_a_commutative_field() {
        let f = RatFuncField::new(&qspace());
        let (u, v) = (rf(&f, "q"), rf(&f, "q + 1"));
        let d1 = Mat::from_rows(vec![vec![u.clone(), f.zero()], vec![f.zero(), v.clone()]]);
        let d2 = Mat::from_rows(vec![vec![v, f.zero()], vec![f.zero(), u]]);
        assert_eq!(
            delta_epsilon_tau(&f, &d1).unwrap(),
            delta_epsilon_tau(&f, &d2).unwrap()
        );
    }

    #[test]
    fn transpose_counterexample() {
        let report = transpose_counterexample_check().unwrap();
        assert!(report.all_hold(), "{:?}", report.checks);
        let a_pivot = report
            .checks
            .iter()
            .find(|c| c.id == "counterexample.pivot[A]")
            .unwrap();
        assert_eq!(a_pivot.detail.as_deref(), Some("(1 - q)*z11*z12"));
    }
}
