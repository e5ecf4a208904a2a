//! Field elements: canonical fractions of Puiseux polynomials.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::PuiseuxPoly;
use super::{PuiseuxError, Rat, Valuation};

/// An element of the field: a fraction num/den of Puiseux polynomials in
/// canonical form.
///
/// Canonical means: zero is 0/1; otherwise the denominator has leading
/// coefficient 1 and lowest exponent 0, and the numerator and denominator
/// share no non-unit polynomial factor.  Canonical forms are unique, so
/// derived equality is exact field equality.
///
/// The field is ordered by eventual sign as t → +∞ and `val` is the
/// order-compatible valuation with val(t) = −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    num: PuiseuxPoly,
    den: PuiseuxPoly,
}

impl FieldElem {
    /// Builds num/den, canonicalizing.  Errors if den is zero.
    pub fn new(num: PuiseuxPoly, den: PuiseuxPoly) -> Result<Self, PuiseuxError> {
        if den.is_zero() {
            return Err(PuiseuxError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    /// Embeds a polynomial.
    pub fn from_poly(p: PuiseuxPoly) -> Self {
        FieldElem {
            num: p,
            den: PuiseuxPoly::one(),
        }
    }

    /// Embeds a rational constant.
    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(PuiseuxPoly::constant(c))
    }

    /// Embeds an integer constant.
    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// The distinguished big element t (val = −1).
    pub fn t() -> Self {
        Self::from_poly(PuiseuxPoly::t())
    }

    /// The monomial c · t^e.
    pub fn monomial(c: Rat, e: Rat) -> Self {
        Self::from_poly(PuiseuxPoly::monomial(c, e))
    }

    /// Numerator of the canonical form.
    pub fn num(&self) -> &PuiseuxPoly {
        &self.num
    }

    /// Denominator of the canonical form.
    pub fn den(&self) -> &PuiseuxPoly {
        &self.den
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True for one.
    pub fn is_one(&self) -> bool {
        self.num == PuiseuxPoly::one() && self.den == PuiseuxPoly::one()
    }

    /// Total stored terms across numerator and denominator, the unit of
    /// complexity budgets.
    pub fn term_count(&self) -> u64 {
        (self.num.term_count() + self.den.term_count()) as u64
    }

    /// Sign as t → +∞: −1, 0, or +1.
    pub fn sign(&self) -> i32 {
        match self.num.leading() {
            None => 0,
            Some((_, c)) => {
                if c.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Absolute value in the field order.
    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// The valuation: val(t^e) = −e, val(0) = +∞, val(xy) = val(x)+val(y),
    /// val(x+y) ≥ min(val x, val y).
    pub fn val(&self) -> Valuation {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Valuation::Infinite,
            (Some(n), Some(d)) => Valuation::Finite(d - n),
            (Some(_), None) => unreachable!("canonical denominator is nonzero"),
        }
    }

    /// Degree at t → +∞, the negative of the valuation (nonzero elements).
    fn deg(&self) -> Rat {
        match (self.num.degree(), self.den.degree()) {
            (Some(n), Some(d)) => n - d,
            _ => panic!("degree of zero"),
        }
    }

    /// Leading coefficient (the denominator is monic, so this is the
    /// leading coefficient of the numerator).
    fn leading_coeff(&self) -> Rat {
        self.num
            .leading()
            .map(|(_, c)| c.clone())
            .expect("leading coefficient of zero")
    }

    /// True when the element is big: val < 0, i.e. it dominates every
    /// rational constant in absolute value.
    pub fn is_big(&self) -> bool {
        matches!(self.val(), Valuation::Finite(v) if v.is_negative())
    }

    /// Multiplicative inverse.  Errors on zero.
    pub fn inverse(&self) -> Result<Self, PuiseuxError> {
        if self.is_zero() {
            return Err(PuiseuxError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    /// Division returning an error on a zero divisor.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, PuiseuxError> {
        if rhs.is_zero() {
            return Err(PuiseuxError::DivisionByZero);
        }
        Ok(Self::canonical(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    /// Integer power.  Errors on 0^e with e < 0.
    pub fn pow(&self, e: i64) -> Result<Self, PuiseuxError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut acc = Self::from_int(1);
        let mut base = self.clone();
        let mut n = e as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Substitutes t ↦ t^c for a positive rational c.  This scales the
    /// valuation by c: val(x(t^c)) = c · val(x).
    pub fn substitute_power(&self, c: &Rat) -> Self {
        Self::canonical(
            self.num.substitute_power(c),
            self.den.substitute_power(c),
        )
    }

    /// Evaluates at a real point t = s > 0 in double precision.
    pub fn specialize(&self, s: f64) -> f64 {
        assert!(s > 0.0, "specialization point must be positive");
        self.num.eval_f64(s) / self.den.eval_f64(s)
    }

    /// Exact square root.
    ///
    /// Errors with `Negative` on negative elements and `NotExactSquare`
    /// when no field element squares to the argument (the field is real
    /// closed only after adjoining further roots; squares are recognized
    /// exactly).
    pub fn sqrt_exact(&self) -> Result<Self, PuiseuxError> {
        match self.sign() {
            0 => return Ok(Self::from_int(0)),
            s if s < 0 => return Err(PuiseuxError::Negative),
            _ => {}
        }
        // x = num/den = (num·den)/den², so sqrt(x) = sqrt(num·den)/den.
        let p = &self.num * &self.den;
        let two_n = p.ramification() * BigInt::from(2);
        let (lo, coeffs) = p.to_laurent(&two_n);
        debug_assert!(lo.is_even(), "doubled ramification gives even offsets");
        let root = poly_sqrt(&coeffs).ok_or(PuiseuxError::NotExactSquare)?;
        let half_lo = lo / BigInt::from(2);
        let root_poly = PuiseuxPoly::from_laurent(&two_n, &half_lo, &root);
        Ok(Self::canonical(root_poly, self.den.clone()))
    }

    /// Canonicalizing constructor; den must be nonzero.
    fn canonical(num: PuiseuxPoly, den: PuiseuxPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return FieldElem {
                num: PuiseuxPoly::zero(),
                den: PuiseuxPoly::one(),
            };
        }
        let n = num.ramification().lcm(den.ramification());
        let (a, mut p) = num.to_laurent(&n);
        let (b, mut q) = den.to_laurent(&n);
        let g = int_poly_gcd(&to_primitive(&p), &to_primitive(&q));
        if g.len() > 1 {
            let g_rat: Vec<Rat> = g.iter().map(|c| Rat::from_integer(c.clone())).collect();
            p = div_exact(&p, &g_rat);
            q = div_exact(&q, &g_rat);
        }
        let lc = q.last().expect("nonzero denominator").clone();
        for c in p.iter_mut() {
            *c = &*c / &lc;
        }
        for c in q.iter_mut() {
            *c = &*c / &lc;
        }
        let num_offset = &a - &b;
        FieldElem {
            num: PuiseuxPoly::from_laurent(&n, &num_offset, &p),
            den: PuiseuxPoly::from_laurent(&n, &BigInt::zero(), &q),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == PuiseuxPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are monic, hence eventually positive, so the sign of
        // the difference is the sign of num·den' − num'·den.
        let diff = &(&self.num * &other.den) - &(&other.num * &self.den);
        match diff.leading() {
            None => Ordering::Equal,
            Some((_, c)) => {
                if c.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }
}

impl Zero for FieldElem {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
}

impl One for FieldElem {
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_one(&self) -> bool {
        FieldElem::is_one(self)
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::canonical(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        // Negating the numerator preserves canonical form.
        FieldElem {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Div for &FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self.checked_div(rhs)
            .expect("division by zero field element")
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// Base-b logarithm of a by Dedekind cut, to within `tol`.
///
/// Requires a > 0 (`NonPositive` otherwise) and val(b) < 0
/// (`NotBigElement` otherwise).  Returns exact rationals (lo, hi) with
/// hi − lo ≤ tol and b^lo ≤ a < b^hi, deciding every cut query by exact
/// field comparisons; no floating point is involved.  The cut point equals
/// val(a)/val(b), but that identity is a theorem about the field rather
/// than an input to this routine, which is why the two are cross-checked
/// in tests instead of being collapsed.
pub fn log_big(a: &FieldElem, b: &FieldElem, tol: &Rat) -> Result<(Rat, Rat), PuiseuxError> {
    assert!(tol.is_positive(), "tolerance must be positive");
    if !b.is_big() {
        return Err(PuiseuxError::NotBigElement);
    }
    if a.sign() <= 0 {
        return Err(PuiseuxError::NonPositive);
    }
    // below(p, q) ⟺ b^p ≤ a^q ⟺ p/q ≤ log_b(a), for q ≥ 1.
    let below = |p: &Rat| -> bool {
        let (pn, pd) = (p.numer().clone(), p.denom().clone());
        cmp_pow(b, &pn, a, &pd) != Ordering::Greater
    };

    let one = Rat::one();
    let (mut lo, mut hi);
    if below(&Rat::zero()) {
        let mut prev = Rat::zero();
        let mut k = one.clone();
        while below(&k) {
            prev = k.clone();
            k = &k * Rat::from_integer(BigInt::from(2));
        }
        lo = prev;
        hi = k;
    } else {
        let mut prev = Rat::zero();
        let mut k = -one;
        while !below(&k) {
            prev = k.clone();
            k = &k * Rat::from_integer(BigInt::from(2));
        }
        lo = k;
        hi = prev;
    }
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) * &half;
        if below(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Compares b^p with a^q for integers p (any sign) and q ≥ 1, both
/// elements positive.  Degree and leading-coefficient comparisons decide
/// almost every query; only exact ties expand the powers in full.
fn cmp_pow(b: &FieldElem, p: &BigInt, a: &FieldElem, q: &BigInt) -> Ordering {
    let p_rat = Rat::from_integer(p.clone());
    let q_rat = Rat::from_integer(q.clone());
    let deg_b = b.deg() * &p_rat;
    let deg_a = a.deg() * &q_rat;
    match deg_b.cmp(&deg_a) {
        Ordering::Equal => {}
        ord => return ord,
    }
    let lc_b = rat_pow(&b.leading_coeff(), p);
    let lc_a = rat_pow(&a.leading_coeff(), q);
    match lc_b.cmp(&lc_a) {
        Ordering::Equal => {}
        ord => return ord,
    }
    let bp = b.pow(p.to_i64().expect("power fits i64")).expect("nonzero base");
    let aq = a.pow(q.to_i64().expect("power fits i64")).expect("nonzero base");
    bp.cmp(&aq)
}

/// r^e for a positive rational r and integer e of either sign.
fn rat_pow(r: &Rat, e: &BigInt) -> Rat {
    let mag = e.magnitude();
    let exp = mag.to_u32().expect("exponent fits u32");
    let powed = Rat::new(r.numer().pow(exp), r.denom().pow(exp));
    if e.is_negative() {
        powed.recip()
    } else {
        powed
    }
}

/// Square root of a dense rational polynomial (ascending coefficients,
/// nonzero leading and constant terms), or `None` when it is not a square.
fn poly_sqrt(coeffs: &[Rat]) -> Option<Vec<Rat>> {
    if coeffs.is_empty() {
        return Some(Vec::new());
    }
    let d2 = coeffs.len() - 1;
    if d2 % 2 != 0 {
        return None;
    }
    let d = d2 / 2;
    // Work in descending order: cd[i] is the coefficient of w^(d2−i).
    let cd: Vec<Rat> = coeffs.iter().rev().cloned().collect();
    let lc_root = rat_sqrt(&cd[0])?;
    let mut qd = alloc::vec![Rat::zero(); d + 1];
    qd[0] = lc_root;
    let two_q0 = &qd[0] + &qd[0];
    for k in 1..=d {
        let mut s = cd[k].clone();
        for i in 1..k {
            s = s - &qd[i] * &qd[k - i];
        }
        qd[k] = s / &two_q0;
    }
    // Verify the full square; the matching above only pins the top half.
    let mut square = alloc::vec![Rat::zero(); d2 + 1];
    for i in 0..=d {
        for j in 0..=d {
            let idx = i + j;
            square[idx] = &square[idx] + &qd[i] * &qd[j];
        }
    }
    if square.iter().zip(cd.iter()).all(|(x, y)| x == y) {
        Some(qd.into_iter().rev().collect())
    } else {
        None
    }
}

/// Square root of a non-negative rational, exact or `None`.
fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Strips a rational polynomial to a primitive integer polynomial with
/// positive leading coefficient (ascending coefficients).
fn to_primitive(p: &[Rat]) -> Vec<BigInt> {
    let mut den_lcm = BigInt::one();
    for c in p {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut v: Vec<BigInt> = p
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    if v.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Primitive gcd of two integer polynomials via a pseudo-remainder
/// sequence, leading coefficient positive.  Inputs are primitive and
/// nonzero (ascending coefficients).
fn int_poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = int_primitive(r);
    }
    int_primitive(a)
}

/// Primitive part with positive leading coefficient; empty stays empty.
fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if !content.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    if v.last().unwrap().is_negative() {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Pseudo-remainder of a by b: a scalar multiple of a mod b computed
/// without rational arithmetic.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc_b = b.last().unwrap().clone();
    let mut r: Vec<BigInt> = a.to_vec();
    while r.last().map(|c| c.is_zero()).unwrap_or(false) {
        r.pop();
    }
    while r.len() > db {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * &lc_b;
        }
        for i in 0..=db {
            let idx = shift + i;
            r[idx] = &r[idx] - &lead * &b[i];
        }
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
    }
    r
}

/// Exact division of dense rational polynomials (ascending); panics if the
/// division is not exact, which canonicalization guarantees it is.
fn div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let dd = den.len() - 1;
    let lc = den.last().expect("nonzero divisor");
    let mut rem: Vec<Rat> = num.to_vec();
    let dq = num.len().checked_sub(den.len()).expect("degree underflow");
    let mut quot = alloc::vec![Rat::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let lead = rem[k + dd].clone();
        if lead.is_zero() {
            continue;
        }
        let q = lead / lc;
        for i in 0..=dd {
            rem[k + i] = &rem[k + i] - &q * &den[i];
        }
        quot[k] = q;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quot
}
