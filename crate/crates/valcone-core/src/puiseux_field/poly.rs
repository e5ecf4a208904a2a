//! Puiseux polynomials: finite ℚ-linear combinations of rational powers of t.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;

/// A finite sum Σ c_e · t^e with c_e ∈ ℚ* and e ∈ ℚ, stored sparsely by
/// exponent.  The ramification index is the lcm of the exponent
/// denominators, so the polynomial is an ordinary Laurent polynomial in
/// u = t^(1/ramification).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxPoly {
    terms: BTreeMap<Rat, Rat>,
    ramification: BigInt,
}

impl PuiseuxPoly {
    /// Builds a polynomial from (exponent, coefficient) pairs, merging
    /// duplicate exponents and dropping zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Rat, Rat)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (e, c) in iter {
            if c.is_zero() {
                continue;
            }
            let entry = terms.entry(e).or_insert_with(Rat::zero);
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        let ramification = ram_of(&terms);
        PuiseuxPoly { terms, ramification }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        PuiseuxPoly {
            terms: BTreeMap::new(),
            ramification: BigInt::one(),
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// A constant polynomial.
    pub fn constant(c: Rat) -> Self {
        Self::from_terms([(Rat::zero(), c)])
    }

    /// The monomial c · t^e.
    pub fn monomial(c: Rat, e: Rat) -> Self {
        Self::from_terms([(e, c)])
    }

    /// The variable t itself.
    pub fn t() -> Self {
        Self::monomial(Rat::one(), Rat::one())
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Lcm of the exponent denominators (1 for the zero polynomial).
    pub fn ramification(&self) -> &BigInt {
        &self.ramification
    }

    /// Iterates terms as (exponent, coefficient) in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.terms.iter()
    }

    /// Highest-exponent term, or `None` for zero.
    pub fn leading(&self) -> Option<(&Rat, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Lowest exponent present, or `None` for zero.
    pub fn min_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next()
    }

    /// Highest exponent present (the degree at t → +∞), or `None` for zero.
    pub fn degree(&self) -> Option<&Rat> {
        self.terms.keys().next_back()
    }

    /// Coefficient of t^e (zero if absent).
    pub fn coeff(&self, e: &Rat) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Multiplies every coefficient by a rational scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(e, k)| (e.clone(), k * c)))
    }

    /// Multiplies by the monomial t^e.
    pub fn shift(&self, e: &Rat) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (k + e, c.clone())))
    }

    /// n-th power by repeated squaring.
    pub fn pow(&self, n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes t ↦ t^c for a positive rational c, scaling every exponent.
    pub fn substitute_power(&self, c: &Rat) -> Self {
        assert!(c.is_positive(), "power substitution exponent must be positive");
        Self::from_terms(self.terms.iter().map(|(e, k)| (e * c, k.clone())))
    }

    /// Evaluates at a positive real t = s in double precision.
    pub fn eval_f64(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let ef = e.to_f64().unwrap_or(f64::NAN);
            acc += cf * libm::pow(s, ef);
        }
        acc
    }

    /// Writes the polynomial over a common integer exponent grid.
    ///
    /// For a common ramification N (a multiple of `self.ramification()`),
    /// returns the lowest scaled exponent a = N·min_exponent and the dense
    /// coefficient vector p with p[i] the coefficient of t^((a+i)/N).
    /// Returns (0, []) for the zero polynomial.
    pub(crate) fn to_laurent(&self, n: &BigInt) -> (BigInt, Vec<Rat>) {
        if self.is_zero() {
            return (BigInt::zero(), Vec::new());
        }
        let scaled: Vec<(BigInt, Rat)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let s = e * Rat::from_integer(n.clone());
                debug_assert!(s.is_integer());
                (s.to_integer(), c.clone())
            })
            .collect();
        let lo = scaled.iter().map(|(s, _)| s.clone()).min().unwrap();
        let hi = scaled.iter().map(|(s, _)| s.clone()).max().unwrap();
        let span = (&hi - &lo)
            .to_usize()
            .expect("exponent span exceeds addressable size");
        let mut coeffs = alloc::vec![Rat::zero(); span + 1];
        for (s, c) in scaled {
            let idx = (&s - &lo).to_usize().unwrap();
            coeffs[idx] = c;
        }
        (lo, coeffs)
    }

    /// Inverse of [`to_laurent`]: terms t^((offset+i)/N) with coefficient
    /// `coeffs[i]`.
    pub(crate) fn from_laurent(n: &BigInt, offset: &BigInt, coeffs: &[Rat]) -> Self {
        let n_rat = Rat::from_integer(n.clone());
        Self::from_terms(coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(
            |(i, c)| {
                let e = Rat::from_integer(offset + BigInt::from(i)) / &n_rat;
                (e, c.clone())
            },
        ))
    }
}

fn ram_of(terms: &BTreeMap<Rat, Rat>) -> BigInt {
    let mut n = BigInt::one();
    for e in terms.keys() {
        n = n.lcm(e.denom());
    }
    n
}

impl Add for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        PuiseuxPoly::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }
}

impl Sub for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        PuiseuxPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone()))
                .chain(rhs.terms.iter().map(|(e, c)| (e.clone(), -c))),
        )
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        PuiseuxPoly::from_terms(self.terms.iter().map(|(e, c)| (e.clone(), -c)))
    }
}

impl Mul for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        let mut acc: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                let entry = acc.entry(e).or_insert_with(Rat::zero);
                *entry = &*entry + ca * cb;
            }
        }
        PuiseuxPoly::from_terms(acc)
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if e.is_one() {
                    write!(f, "t")?;
                } else if e.is_integer() && e.is_positive() {
                    write!(f, "t^{e}")?;
                } else {
                    write!(f, "t^({e})")?;
                }
            }
        }
        Ok(())
    }
}
