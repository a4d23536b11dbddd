//! Exact arithmetic in the real cyclotomic field `Q(θ)`, `θ = 2cos(π/L)`.
//!
//! Elements are polynomials in `θ` with rational coefficients, reduced modulo
//! the minimal polynomial `Ψ` of `θ`. Because the representation is canonical,
//! zero testing and equality are syntactic; only [`FieldElement::sign`] needs
//! the embedding into the reals, which it gets from an isolating interval of
//! `θ` with exact rational interval arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

type Poly = Vec<BigRational>;

/// Shared data for one field `Q(2cos(π/L))`.
pub struct FieldContext {
    l: u64,
    min_poly: Vec<BigInt>,
    min_poly_q: Poly,
    sturm: Vec<Poly>,
    approx: f64,
    /// Upper bound on `|approx - θ|`.
    approx_err: f64,
    /// Current isolating interval `(lo, hi)`; narrowed in place by sign queries.
    interval: RwLock<(BigRational, BigRational)>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("l", &self.l)
            .field("min_poly", &self.min_poly)
            .finish()
    }
}

impl FieldContext {
    /// Field containing every `cos(π/m)` for the given finite labels.
    pub fn for_labels<I: IntoIterator<Item = u32>>(labels: I) -> Arc<Self> {
        let l = labels.into_iter().fold(1u64, |acc, m| acc.lcm(&(m as u64)));
        Self::with_l(l)
    }

    /// Field `Q(2cos(π/l))`; `l = 1` yields the rationals.
    pub fn with_l(l: u64) -> Arc<Self> {
        assert!(l >= 1, "L must be positive");
        let min_poly = if l == 1 {
            // θ = 2cos(π) = -2
            vec![BigInt::from(2), BigInt::one()]
        } else {
            fold_palindromic(&cyclotomic(2 * l))
        };
        let min_poly_q: Poly = min_poly
            .iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect();
        let approx = 2.0 * (std::f64::consts::PI / l as f64).cos();
        let sturm = sturm_sequence(&min_poly_q);
        let interval = if min_poly.len() == 2 {
            let root = -BigRational::from_integer(min_poly[0].clone());
            (root.clone(), root)
        } else {
            isolate(&min_poly_q, &sturm, approx)
        };
        let approx_err = {
            let a = BigRational::from_float(approx).expect("finite approximation");
            let far = (&a - &interval.0).abs().max((&a - &interval.1).abs());
            2.0 * far.to_f64().unwrap_or(f64::INFINITY) + f64::MIN_POSITIVE
        };
        Arc::new(Self {
            l,
            min_poly,
            min_poly_q,
            sturm,
            approx,
            approx_err,
            interval: RwLock::new(interval),
        })
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// Coefficients of `Ψ`, constant term first; `Ψ` is monic.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// Floating approximation of `θ`.
    pub fn theta_approx(&self) -> f64 {
        self.approx
    }

    /// Snapshot of the isolating interval.
    pub fn isolating_interval(&self) -> (BigRational, BigRational) {
        self.interval.read().expect("interval lock").clone()
    }

    /// Number of real roots of `Ψ` in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        sign_variations(&self.sturm, a) - sign_variations(&self.sturm, b)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            ctx: self.clone(),
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.rational(BigRational::one())
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> FieldElement {
        self.rational(BigRational::from_integer(v.into()))
    }

    pub fn rational(self: &Arc<Self>, v: BigRational) -> FieldElement {
        let (n, d) = v.into_raw();
        let mut e = self.zero();
        e.num[0] = n;
        e.den = d;
        e.normalized()
    }

    /// The generator `θ` itself.
    pub fn theta(self: &Arc<Self>) -> FieldElement {
        self.from_poly(vec![BigRational::zero(), BigRational::one()])
    }

    /// Reduces an arbitrary polynomial in `θ` into canonical form.
    pub fn from_poly(self: &Arc<Self>, poly: Poly) -> FieldElement {
        let den = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = poly
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        self.from_integer_poly(num, den)
    }

    fn from_integer_poly(self: &Arc<Self>, num: Vec<BigInt>, den: BigInt) -> FieldElement {
        FieldElement {
            ctx: self.clone(),
            num: self.reduce(num),
            den,
        }
        .normalized()
    }

    /// `p_k(θ) = 2cos(kπ/L)` via `p_0 = 2`, `p_1 = x`, `p_{k+1} = x p_k - p_{k-1}`.
    pub fn chebyshev_value(self: &Arc<Self>, k: u64) -> FieldElement {
        let theta = self.theta();
        let mut prev = self.from_int(2);
        if k == 0 {
            return prev;
        }
        let mut cur = theta.clone();
        for _ in 1..k {
            let next = &(&theta * &cur) - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    /// Bilinear-form entry `-cos(π/m)`; `None` stands for `m = ∞` and gives `-1`.
    pub fn bond_value(self: &Arc<Self>, m: Option<u32>) -> Result<FieldElement> {
        match m {
            None => Ok(self.from_int(-1)),
            Some(m) if m >= 1 && self.l.is_multiple_of(m as u64) => {
                let half = BigRational::new((-1).into(), 2.into());
                Ok(self.chebyshev_value(self.l / m as u64).scale(&half))
            }
            Some(m) => Err(Error::InvalidInput(format!(
                "label {m} does not divide L = {}",
                self.l
            ))),
        }
    }

    /// Remainder modulo the monic `Ψ`; stays integral.
    fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        while poly.len() > d {
            let top = poly.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let base = poly.len() - d;
            for (j, c) in self.min_poly.iter().take(d).enumerate() {
                if !c.is_zero() {
                    poly[base + j] -= &top * c;
                }
            }
        }
        poly.resize(d, BigInt::zero());
        poly
    }

    /// Halves the isolating interval until `ok` accepts it; returns the final interval.
    fn refine_until<F>(&self, mut ok: F) -> (BigRational, BigRational)
    where
        F: FnMut(&BigRational, &BigRational) -> bool,
    {
        let (mut lo, mut hi) = self.isolating_interval();
        let two = BigRational::from_integer(2.into());
        let lo_sign = eval_q(&self.min_poly_q, &lo).signum();
        let mut narrowed = false;
        while !ok(&lo, &hi) {
            let mid = (&lo + &hi) / &two;
            let s = eval_q(&self.min_poly_q, &mid).signum();
            if s.is_zero() {
                // only possible for rational θ, which never reaches this loop
                lo = mid.clone();
                hi = mid;
            } else if s == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
            narrowed = true;
        }
        if narrowed {
            let mut guard = self.interval.write().expect("interval lock");
            if &hi - &lo < &guard.1 - &guard.0 {
                *guard = (lo.clone(), hi.clone());
            }
        }
        (lo, hi)
    }
}

/// Integer cyclotomic polynomial `Φ_n`, constant term first.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    // Φ_d = (z^d - 1) / ∏ Φ_e over proper divisors e of d, built bottom-up
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut table: Vec<(u64, Vec<BigInt>)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = BigInt::from(-1);
        num[d as usize] = BigInt::one();
        for (e, phi) in &table {
            if d % e == 0 {
                num = exact_div_monic(&num, phi);
            }
        }
        table.push((d, num));
    }
    table.pop().expect("n has at least one divisor").1
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[k + j] -= &c * dc;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Rewrites a palindromic polynomial of degree `2d` in `z` as a degree-`d`
/// polynomial in `x = z + 1/z`.
fn fold_palindromic(p: &[BigInt]) -> Vec<BigInt> {
    let d = (p.len() - 1) / 2;
    // chebyshev-like q_k with q_k(z + 1/z) = z^k + z^-k
    let mut q: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    for k in 2..=d {
        let mut next = vec![BigInt::zero(); k + 1];
        for (i, c) in q[k - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in q[k - 2].iter().enumerate() {
            next[i] -= c;
        }
        q.push(next);
    }
    let mut out = vec![BigInt::zero(); d + 1];
    out[0] = p[d].clone();
    for k in 1..=d {
        let a = &p[d + k];
        for (i, c) in q[k].iter().enumerate() {
            out[i] += a * c;
        }
    }
    out
}

fn eval_q(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Poly, Poly) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let mut den = den.to_vec();
    trim(&mut den);
    assert!(!den.is_empty(), "polynomial division by zero");
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[k + j] -= &c * dc;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    trim(&mut out);
    out
}

fn sturm_sequence(p: &[BigRational]) -> Vec<Poly> {
    let mut seq = vec![p.to_vec()];
    let deriv: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(i.into()))
        .collect();
    seq.push(deriv);
    loop {
        let k = seq.len();
        if seq[k - 1].iter().all(Zero::is_zero) {
            seq.pop();
            break;
        }
        let (_, rem) = poly_divrem(&seq[k - 2], &seq[k - 1]);
        if rem.is_empty() {
            break;
        }
        seq.push(rem.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_variations(seq: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<BigRational> = seq
        .iter()
        .map(|p| eval_q(p, x).signum())
        .filter(|s| !s.is_zero())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Builds a rational interval around `approx` containing exactly one root,
/// then narrows it to width below 2^-64.
fn isolate(p: &[BigRational], sturm: &[Poly], approx: f64) -> (BigRational, BigRational) {
    let center = BigRational::from_float(approx).expect("finite approximation");
    let mut radius = BigRational::new(1.into(), 1024.into());
    let (mut lo, mut hi);
    loop {
        lo = &center - &radius;
        hi = &center + &radius;
        let count = sign_variations(sturm, &lo) - sign_variations(sturm, &hi);
        match count {
            1 if !eval_q(p, &lo).is_zero() && !eval_q(p, &hi).is_zero() => break,
            0 => radius *= BigRational::from_integer(3.into()),
            _ => radius /= BigRational::from_integer(7.into()),
        }
    }
    let two = BigRational::from_integer(2.into());
    let tol = BigRational::new(1.into(), BigInt::one() << 64);
    let lo_sign = eval_q(p, &lo).signum();
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / &two;
        if eval_q(p, &mid).signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Closed rational interval.
#[derive(Clone, Debug)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    fn point(v: BigRational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().expect("nonempty").clone();
        let hi = cands.iter().max().expect("nonempty").clone();
        Interval { lo, hi }
    }

    fn add_scalar(&self, c: &BigRational) -> Interval {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }
}

/// An element of `Q(θ)` in canonical reduced form: integer numerators over
/// a positive common denominator, with no common factor.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Coefficients of the reduced representative, constant term first.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.den.is_one() && self.num[0].is_one()
    }

    fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    fn normalized(mut self) -> FieldElement {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            self.num.iter_mut().for_each(|n| *n = -std::mem::take(n));
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_one() {
            return self;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            self.num.iter_mut().for_each(|n| *n /= &g);
        }
        self
    }

    fn with(&self, num: Vec<BigInt>, den: BigInt) -> FieldElement {
        FieldElement {
            ctx: self.ctx.clone(),
            num,
            den,
        }
        .normalized()
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> FieldElement {
        self.with(
            self.num.iter().map(|x| x * c.numer()).collect(),
            &self.den * c.denom(),
        )
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Ψ`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let mut num = vec![BigInt::zero(); self.num.len()];
            num[0] = self.den.clone();
            return Ok(self.with(num, self.num[0].clone()));
        }
        if self.num.len() == 2 {
            // Ψ = x² + p x + q: (a + bθ)(a - bp - bθ) = a² - abp + b²q
            let (q, p) = (&self.ctx.min_poly[0], &self.ctx.min_poly[1]);
            let (a, b) = (&self.num[0], &self.num[1]);
            let norm = a * a - a * b * p + b * b * q;
            let conj = vec![(a - b * p) * &self.den, -(b * &self.den)];
            return Ok(self.with(conj, norm));
        }
        // invariant: s_i * a ≡ r_i (mod Ψ)
        let mut r0 = self.ctx.min_poly_q.clone();
        let mut r1 = self.coeffs();
        trim(&mut r1);
        let mut s0: Poly = Vec::new();
        let mut s1: Poly = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            if r1.is_empty() {
                return Err(Error::Internal(
                    "minimal polynomial is not irreducible".into(),
                ));
            }
        }
        let c = r1[0].clone();
        let s: Poly = s1.iter().map(|x| x / &c).collect();
        Ok(self.ctx.from_poly(s))
    }

    /// Exact sign of the real number represented by this element.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return if self.num[0].is_positive() { 1 } else { -1 };
        }
        self.float_sign().unwrap_or_else(|| self.exact_sign())
    }

    /// Sign from a floating evaluation, when it clears a rigorous error bound.
    fn float_sign(&self) -> Option<i8> {
        let (x, dx) = (self.ctx.approx, self.ctx.approx_err);
        let (mut value, mut magnitude, mut drift) = (0.0f64, 0.0f64, 0.0f64);
        let (mut pow, mut pow_hi) = (1.0f64, 1.0f64);
        for c in &self.num {
            let c = c.to_f64().filter(|c| c.is_finite())?;
            let term = c * pow;
            value += term;
            magnitude += term.abs();
            // |θ^k - x^k| ≤ (|x| + dx)^k - |x|^k
            drift += c.abs() * (pow_hi - pow.abs());
            pow *= x;
            pow_hi *= x.abs() + dx;
        }
        let d = self.num.len() as f64;
        let bound =
            4.0 * (drift + magnitude * (3.0 * d + 4.0) * f64::EPSILON + d * f64::MIN_POSITIVE);
        if !bound.is_finite() || value.abs() <= bound {
            return None;
        }
        Some(if value > 0.0 { 1 } else { -1 })
    }

    fn exact_sign(&self) -> i8 {
        let mut result = 0;
        self.ctx
            .refine_until(|lo, hi| match self.eval_interval(lo, hi).sign() {
                Some(s) => {
                    result = s;
                    true
                }
                None => false,
            });
        result
    }

    /// Interval enclosure of the numerator polynomial; the denominator is positive.
    fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> Interval {
        let x = Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        };
        let mut iter = self
            .num
            .iter()
            .rev()
            .map(|n| BigRational::from_integer(n.clone()));
        let mut acc = Interval::point(iter.next().expect("degree >= 1"));
        for c in iter {
            acc = acc.mul(&x).add_scalar(&c);
        }
        acc
    }

    /// Floating evaluation at the approximate `θ`.
    pub fn to_f64(&self) -> f64 {
        let x = self.ctx.approx;
        let num = self
            .num
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN));
        num / self.den.to_f64().unwrap_or(f64::NAN)
    }

    pub fn cmp_value(&self, other: &FieldElement) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    fn check_ctx(&self, other: &FieldElement) {
        debug_assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx),
            "mixing elements of different fields"
        );
    }

    fn add_signed(&self, rhs: &FieldElement, negate: bool) -> FieldElement {
        self.check_ctx(rhs);
        let combine = |a: &BigInt, b: BigInt| if negate { a - b } else { a + b };
        if self.den == rhs.den {
            let num = self
                .num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| combine(a, b.clone()))
                .collect();
            return self.with(num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let (fa, fb) = (&rhs.den / &g, &self.den / &g);
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| combine(&(a * &fa), b * &fb))
            .collect();
        self.with(num, &self.den * &fa)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}θ"),
                _ => format!("{c}θ^{k}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.add_signed(rhs, false)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.add_signed(rhs, true)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_ctx(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.ctx.zero();
        }
        let den = &self.den * &rhs.den;
        if self.is_rational() || rhs.is_rational() {
            let (c, v) = if self.is_rational() {
                (&self.num[0], rhs)
            } else {
                (&rhs.num[0], self)
            };
            return self.with(v.num.iter().map(|x| x * c).collect(), den);
        }
        let mut prod = vec![BigInt::zero(); self.num.len() + rhs.num.len() - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.ctx.from_integer_poly(prod, den)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(ints(&cyclotomic(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(ints(&cyclotomic(10)), vec![1, -1, 1, -1, 1]);
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(ints(FieldContext::for_labels([3]).min_poly()), vec![-1, 1]);
        assert_eq!(
            ints(FieldContext::for_labels([4]).min_poly()),
            vec![-2, 0, 1]
        );
        assert_eq!(
            ints(FieldContext::for_labels([5]).min_poly()),
            vec![-1, -1, 1]
        );
        assert_eq!(ints(FieldContext::for_labels([]).min_poly()), vec![2, 1]);
        assert_eq!(FieldContext::for_labels([2, 3]).l(), 6);
    }

    #[test]
    fn isolating_interval_has_one_root() {
        for l in 2..=30 {
            let ctx = FieldContext::with_l(l);
            let (lo, hi) = ctx.isolating_interval();
            if ctx.degree() == 1 {
                assert_eq!(lo, hi);
                continue;
            }
            assert_eq!(ctx.count_roots(&lo, &hi), 1, "L = {l}");
            assert!(lo.to_f64().unwrap() <= ctx.theta_approx() + 1e-12);
            assert!(hi.to_f64().unwrap() >= ctx.theta_approx() - 1e-12);
        }
    }

    #[test]
    fn chebyshev_examples() {
        let c4 = FieldContext::with_l(4);
        assert_eq!(c4.chebyshev_value(0), c4.from_int(2));
        assert!(c4.chebyshev_value(2).is_zero());
        let c3 = FieldContext::with_l(3);
        assert_eq!(c3.chebyshev_value(3), c3.from_int(-2));
    }

    #[test]
    fn bond_values() {
        let ctx = FieldContext::for_labels([2, 3]);
        assert!(ctx.bond_value(Some(2)).unwrap().is_zero());
        assert_eq!(ctx.bond_value(Some(3)).unwrap(), ctx.rational(q(-1, 2)));
        assert_eq!(ctx.bond_value(None).unwrap(), ctx.from_int(-1));
        assert!(ctx.bond_value(Some(5)).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let c4 = FieldContext::with_l(4);
        let t = c4.theta();
        assert_eq!(&t * &t, c4.from_int(2));
        assert!((&t + &(-&t)).is_zero());
        let c5 = FieldContext::with_l(5);
        let t5 = c5.theta();
        assert_eq!(t5.inv().unwrap(), &t5 - &c5.one());
        assert_eq!(c5.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sign_examples() {
        let c4 = FieldContext::with_l(4);
        assert_eq!((&c4.theta() - &c4.one()).sign(), 1);
        assert_eq!(c4.zero().sign(), 0);
        let c5 = FieldContext::with_l(5);
        assert_eq!((&c5.theta() - &c5.from_int(2)).sign(), -1);
    }

    #[test]
    fn float_filter_agrees_with_exact_sign() {
        for l in [4u64, 5, 7, 12] {
            let ctx = FieldContext::with_l(l);
            for a in -6i64..=6 {
                for b in -6i64..=6 {
                    let e = ctx.from_poly(vec![q(a, 7), q(b, 5), q(a - b, 3)]);
                    if e.is_zero() {
                        continue;
                    }
                    if let Some(s) = e.float_sign() {
                        assert_eq!(s, e.exact_sign(), "L = {l}, {a}, {b}");
                    }
                }
            }
        }
        let c4 = FieldContext::with_l(4);
        let tiny = &(&c4.theta() * &c4.rational(q(10_i64.pow(17), 1)))
            - &c4.rational(q(141_421_356_237_309_505, 1));
        assert_eq!(tiny.float_sign(), None);
        assert_eq!(tiny.sign(), tiny.exact_sign());
    }

    #[test]
    fn sign_of_tiny_difference() {
        // 99/70 is a continued-fraction convergent of √2, so √2 - 99/70 is about -7e-5
        let c4 = FieldContext::with_l(4);
        let d = &c4.theta() - &c4.rational(q(99, 70));
        assert_eq!(d.sign(), -1);
        let e = &(&c4.theta() * &c4.from_int(1_000_000_007)) - &c4.rational(q(1_414_213_572, 1));
        assert_eq!(
            e.sign(),
            if 1_000_000_007f64 * 2f64.sqrt() > 1_414_213_572.0 {
                1
            } else {
                -1
            }
        );
    }
}
