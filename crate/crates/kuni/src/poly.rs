//! Exact univariate polynomial arithmetic in the indeterminate `q`.
//!
//! [`IntPoly`] is a dense polynomial over arbitrary-precision integers.
//! [`RatFraction`] carries the rational intermediates of the class-count
//! formula; integrality is only asserted when converting back to an
//! [`IntPoly`]. [`QAdicOrder`] stores a group order as `q^k · f(q)` with
//! `f(0) ≠ 0`, so the `p`-part and `p′`-part of an order are structural
//! rather than recovered by factorization.
//!
//! No floating point is used anywhere in this module.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Polynomial in `q` with integer coefficients.
///
/// Coefficients are stored low-to-high with trailing zeros trimmed; the zero
/// polynomial is the empty list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// The monomial `c · q^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        IntPoly::from_coeffs(coeffs)
    }

    /// The monomial `q^e`.
    pub fn q_pow(e: usize) -> Self {
        IntPoly::monomial(BigInt::one(), e)
    }

    /// The factor `q^e − 1`.
    pub fn q_pow_minus_one(e: usize) -> Self {
        assert!(e >= 1);
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[0] = -BigInt::one();
        coeffs[e] = BigInt::one();
        IntPoly { coeffs }
    }

    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Low-to-high coefficients (empty for zero).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Horner evaluation at an integer point; exact.
    pub fn eval_int(&self, q0: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Exact division: returns `c` with `self = b·c`, `c ∈ ℤ[q]`.
    ///
    /// A nonzero remainder or a fractional quotient coefficient is a hard
    /// error: every division in the counting pipeline is exact by the
    /// underlying theory, so inexactness signals an implementation bug.
    pub fn exact_div(&self, b: &IntPoly) -> Result<IntPoly> {
        if b.is_zero() {
            return Err(Error::InexactDivision("division by the zero polynomial".into()));
        }
        let (quo, rem) = RatPoly::from_intpoly(self).divmod(&RatPoly::from_intpoly(b));
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!(
                "({self}) / ({b}) leaves remainder {}",
                rem.to_intpoly_lossy_text()
            )));
        }
        quo.try_to_intpoly()
    }

    /// Divides every coefficient by the integer `d`, exactly.
    pub fn exact_div_scalar(&self, d: &BigInt) -> Result<IntPoly> {
        if d.is_zero() {
            return Err(Error::InexactDivision("scalar division by zero".into()));
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "coefficient of q^{i} in {self} is not divisible by {d}"
                )));
            }
            out.push(q);
        }
        Ok(IntPoly { coeffs: out })
    }

    /// Coefficients of `self` in the shifted basis `(q−c)^i`, low-to-high,
    /// by repeated synthetic division. `Σ out_i (q−c)^i` equals `self`.
    pub fn rebase(&self, c: &BigInt) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut cur = self.coeffs.clone();
        while !cur.is_empty() {
            // divide by (q − c): Horner leaves the value at c as remainder
            let mut quo = vec![BigInt::zero(); cur.len() - 1];
            let mut carry = BigInt::zero();
            for j in (1..cur.len()).rev() {
                carry = &cur[j] + &carry * c;
                quo[j - 1] = carry.clone();
            }
            let rem = &cur[0] + &carry * c;
            out.push(rem);
            while quo.last().is_some_and(|x| x.is_zero()) {
                quo.pop();
            }
            cur = quo;
        }
        while out.last().is_some_and(|x| x.is_zero()) {
            out.pop();
        }
        out
    }

    /// Decimal-string coefficients, low-to-high; the exact JSON wire form.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_coeff_strings(strings: &[impl AsRef<str>]) -> Result<IntPoly> {
        let mut coeffs = Vec::with_capacity(strings.len());
        for s in strings {
            let c: BigInt = s
                .as_ref()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {:?}", s.as_ref())))?;
            coeffs.push(c);
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }

    /// Canonical text rendering: descending powers, explicit `*` and `^`,
    /// single-space separators. `"0"` for the zero polynomial.
    pub fn to_text(&self) -> String {
        self.to_text_with("q")
    }

    pub fn to_text_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let coeff_part = if mag.is_one() && e > 0 { None } else { Some(mag.to_string()) };
            let var_part = match e {
                0 => None,
                1 => Some(var.to_string()),
                _ => Some(format!("{var}^{e}")),
            };
            match (coeff_part, var_part) {
                (Some(cp), Some(vp)) => {
                    s.push_str(&cp);
                    s.push('*');
                    s.push_str(&vp);
                }
                (Some(cp), None) => s.push_str(&cp),
                (None, Some(vp)) => s.push_str(&vp),
                (None, None) => unreachable!(),
            }
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            if let Some(b) = rhs.coeffs.get(i) {
                c += b;
            }
            out.push(c);
        }
        IntPoly::from_coeffs(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = IntPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of decimal-string coefficients, low to high")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<IntPoly, A::Error> {
                let mut strings: Vec<String> = Vec::new();
                while let Some(s) = seq.next_element::<String>()? {
                    strings.push(s);
                }
                IntPoly::from_coeff_strings(&strings).map_err(serde::de::Error::custom)
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// Polynomial with rational coefficients; the coefficient field of
/// [`RatFraction`] numerators and denominators.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly { coeffs: vec![BigRational::one()] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_intpoly(p: &IntPoly) -> Self {
        RatPoly {
            coeffs: p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients as decimal strings, `a` or `a/b`, low-to-high.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                }
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Long division: returns `(quotient, remainder)`.
    pub fn divmod(&self, b: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!b.is_zero(), "polynomial division by zero");
        let db = b.coeffs.len();
        if self.coeffs.len() < db {
            return (RatPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len() - db + 1];
        let lb = b.leading().clone();
        while rem.len() >= db {
            let dr = rem.len() - 1;
            let factor = rem.last().unwrap() / &lb;
            let shift = dr + 1 - db;
            quo[shift] = factor.clone();
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = &factor * bc;
                rem[shift + j] -= t;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (RatPoly::from_coeffs(quo), RatPoly::from_coeffs(rem))
    }

    /// Monic greatest common divisor (1 for coprime inputs).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let a = clear_denominators(self);
        let b = clear_denominators(other);
        let g = int_primitive_gcd(a, b);
        RatPoly::from_coeffs(g.into_iter().map(BigRational::from_integer).collect()).monic()
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let lc = self.leading().clone();
        self.scale(&lc.recip())
    }

    /// Converts to an integer polynomial, failing on any fractional
    /// coefficient.
    pub fn try_to_intpoly(&self) -> Result<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.denom().is_one() {
                return Err(Error::NonIntegral(format!(
                    "coefficient of q^{i} is the non-integer {c}"
                )));
            }
            out.push(c.numer().clone());
        }
        Ok(IntPoly::from_coeffs(out))
    }

    fn to_intpoly_lossy_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| format!("({c})*q^{e}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            if let Some(b) = rhs.coeffs.get(i) {
                c += b;
            }
            out.push(c);
        }
        RatPoly::from_coeffs(out)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            if let Some(b) = rhs.coeffs.get(i) {
                c -= b;
            }
            out.push(c);
        }
        RatPoly::from_coeffs(out)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

fn clear_denominators(p: &RatPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in &p.coeffs {
        lcm = lcm.lcm(c.denom());
    }
    p.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

fn int_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

fn int_primitive_part(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        return p;
    }
    let mut content = int_content(&p);
    if p.last().unwrap().is_negative() {
        content = -content;
    }
    for c in p.iter_mut() {
        *c = &*c / &content;
    }
    p
}

/// Primitive polynomial gcd over ℤ. Inputs need not be primitive; the
/// result is primitive with positive leading coefficient.
///
/// The workhorse is the small-prime modular algorithm: gcd images mod
/// word-size primes, CRT-lifted with the leading coefficient imposed, then
/// verified by exact trial division. A single lucky prime settles the
/// ubiquitous coprime case. The pseudo-remainder sequence survives only as
/// a fallback for the (never observed) event of running out of primes.
fn int_primitive_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let mut a = int_primitive_part(a);
    let mut b = int_primitive_part(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_empty() {
        return a;
    }
    if b.len() == 1 {
        return vec![BigInt::one()];
    }
    if let Some(g) = modular_gcd(&a, &b) {
        return g;
    }
    while !b.is_empty() {
        let r = int_pseudo_rem(&a, &b);
        a = b;
        b = int_primitive_part(r);
    }
    a
}

// 31-bit primes, generated on first use; products of residues fit in u64.
fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut primes = Vec::with_capacity(64);
        let mut candidate: u64 = (1 << 31) - 1;
        while primes.len() < 64 {
            let is_prime = (3..)
                .step_by(2)
                .take_while(|d| d * d <= candidate)
                .all(|d| !candidate.is_multiple_of(d))
                && !candidate.is_multiple_of(2);
            if is_prime {
                primes.push(candidate);
            }
            candidate -= 2;
        }
        primes
    })
}

fn mod_reduce(c: &BigInt, p: u64) -> u64 {
    let r = c % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    u64::try_from(r).expect("residue fits in u64")
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat: p prime, a ≠ 0 mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

// Monic gcd of the images of a, b in F_p[q]; None when p divides a leading
// coefficient (an unusable prime).
fn gcd_mod_p(a: &[BigInt], b: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let reduce = |poly: &[BigInt]| -> Vec<u64> {
        let mut v: Vec<u64> = poly.iter().map(|c| mod_reduce(c, p)).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let mut x = reduce(a);
    let mut y = reduce(b);
    if x.len() != a.len() || y.len() != b.len() {
        return None; // leading coefficient vanished mod p
    }
    while !y.is_empty() {
        // x mod y over F_p
        let dy = y.len() - 1;
        let inv_ly = mod_inv(y[dy], p);
        while x.len() > dy {
            let dx = x.len() - 1;
            let factor = x[dx] * inv_ly % p;
            if factor != 0 {
                let shift = dx - dy;
                for (j, &yc) in y.iter().enumerate() {
                    let sub = factor * yc % p;
                    x[shift + j] = (x[shift + j] + p - sub) % p;
                }
            }
            while x.last() == Some(&0) {
                x.pop();
            }
            if x.len() == dx + 1 {
                unreachable!("leading term failed to cancel mod p");
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    // make monic
    if let Some(&lc) = x.last() {
        let inv = mod_inv(lc, p);
        for c in x.iter_mut() {
            *c = *c * inv % p;
        }
    }
    Some(x)
}

// Small-prime modular gcd with CRT lifting and trial-division verification.
// Returns None only if the prime pool is exhausted before verification.
fn modular_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut modulus = BigInt::one();
    let mut lifted: Vec<BigInt> = Vec::new();
    let mut deg_min = usize::MAX;
    let mut previous: Option<Vec<BigInt>> = None;
    for &p in small_primes() {
        let Some(image) = gcd_mod_p(a, b, p) else { continue };
        if image.len() == 1 {
            return Some(vec![BigInt::one()]);
        }
        let deg = image.len() - 1;
        if deg > deg_min {
            continue; // unlucky prime, image too large
        }
        // impose leading coefficient γ on the monic image
        let gamma_p = mod_reduce(&gamma, p);
        let scaled: Vec<u64> = image.iter().map(|&c| c * (gamma_p % p) % p).collect();
        if deg < deg_min {
            deg_min = deg;
            modulus = BigInt::from(p);
            lifted = scaled.iter().map(|&c| BigInt::from(c)).collect();
            previous = None;
        } else {
            // CRT: combine the accumulated residues with the new image
            let p_big = BigInt::from(p);
            let m_inv = mod_inv(mod_reduce(&modulus, p), p);
            for (acc, &new_c) in lifted.iter_mut().zip(&scaled) {
                let cur = mod_reduce(acc, p);
                let diff = (new_c + p - cur) % p;
                let t = diff * m_inv % p;
                *acc += &modulus * BigInt::from(t);
            }
            modulus *= &p_big;
        }
        // symmetric lift, then primitive part
        let half: BigInt = &modulus >> 1;
        let candidate: Vec<BigInt> = lifted
            .iter()
            .map(|c| if c > &half { c - &modulus } else { c.clone() })
            .collect();
        let candidate = int_primitive_part(candidate);
        if candidate.is_empty() {
            continue;
        }
        if previous.as_ref() == Some(&candidate)
            && int_divides(&candidate, a)
            && int_divides(&candidate, b)
        {
            return Some(candidate);
        }
        previous = Some(candidate);
    }
    None
}

// Exact divisibility of integer polynomials by integer long division with
// early abort: when d | a over ℤ every leading-term division is exact, so
// the first inexact step or a nonzero remainder settles the question.
fn int_divides(d: &[BigInt], a: &[BigInt]) -> bool {
    let dd = d.len() - 1;
    let ld = &d[dd];
    let mut rem = a.to_vec();
    while rem.len() > dd {
        let dr = rem.len() - 1;
        let (factor, r) = rem[dr].div_rem(ld);
        if !r.is_zero() {
            return false;
        }
        let shift = dr - dd;
        for (j, dc) in d.iter().enumerate() {
            let t = &factor * dc;
            rem[shift + j] -= t;
        }
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    rem.is_empty()
}

fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// A ratio of rational-coefficient polynomials, kept normalized: numerator
/// and denominator coprime, denominator monic (and 1 when the fraction is
/// zero or polynomial).
#[derive(Clone, PartialEq, Eq)]
pub struct RatFraction {
    num: RatPoly,
    den: RatPoly,
}

impl RatFraction {
    pub fn zero() -> Self {
        RatFraction { num: RatPoly::zero(), den: RatPoly::one() }
    }

    pub fn one() -> Self {
        RatFraction { num: RatPoly::one(), den: RatPoly::one() }
    }

    /// Builds `num/den`, normalizing. Errors on a zero denominator.
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("fraction with zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_intpoly(p: &IntPoly) -> Self {
        RatFraction { num: RatPoly::from_intpoly(p), den: RatPoly::one() }
    }

    /// Builds the fraction `a/b` of integer polynomials.
    pub fn from_ratio(a: &IntPoly, b: &IntPoly) -> Result<Self> {
        Self::new(RatPoly::from_intpoly(a), RatPoly::from_intpoly(b))
    }

    fn normalized(num: RatPoly, den: RatPoly) -> Self {
        if num.is_zero() {
            return RatFraction::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            let (num, r1) = num.divmod(&g);
            debug_assert!(r1.is_zero());
            let (den, r2) = den.divmod(&g);
            debug_assert!(r2.is_zero());
            (num, den)
        };
        let lc = den.leading().clone();
        RatFraction { num: num.scale(&lc.recip()), den: den.scale(&lc.recip()) }
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn div(&self, rhs: &RatFraction) -> Result<RatFraction> {
        if rhs.is_zero() {
            return Err(Error::InvalidInput("division by the zero fraction".into()));
        }
        Ok(RatFraction::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<RatFraction> {
        RatFraction::one().div(self)
    }

    /// The assertion point for integrality: succeeds exactly when the
    /// denominator is 1 and every numerator coefficient is an integer.
    pub fn to_intpoly(&self) -> Result<IntPoly> {
        if !self.den.is_one() {
            return Err(Error::NonIntegral(format!(
                "fraction has nontrivial denominator {}",
                self.den.to_intpoly_lossy_text()
            )));
        }
        self.num.try_to_intpoly()
    }

    /// Exact evaluation at an integer point with nonzero denominator.
    pub fn eval(&self, q0: &BigInt) -> Result<BigRational> {
        let x = BigRational::from_integer(q0.clone());
        let eval_poly = |p: &RatPoly| {
            let mut acc = BigRational::zero();
            for c in p.coeffs.iter().rev() {
                acc = acc * &x + c;
            }
            acc
        };
        let d = eval_poly(&self.den);
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("fraction denominator vanishes at q = {q0}")));
        }
        Ok(eval_poly(&self.num) / d)
    }
}

impl fmt::Debug for RatFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) / ({})",
            self.num.to_intpoly_lossy_text(),
            self.den.to_intpoly_lossy_text()
        )
    }
}

impl Add for &RatFraction {
    type Output = RatFraction;
    fn add(self, rhs: &RatFraction) -> RatFraction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFraction::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFraction {
    type Output = RatFraction;
    fn sub(self, rhs: &RatFraction) -> RatFraction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFraction::normalized(num, &self.den * &rhs.den)
    }
}

impl Mul for &RatFraction {
    type Output = RatFraction;
    fn mul(self, rhs: &RatFraction) -> RatFraction {
        RatFraction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFraction {
    type Output = RatFraction;
    fn neg(self) -> RatFraction {
        RatFraction { num: -&self.num, den: self.den.clone() }
    }
}

/// A group order in split form `q^k · f(q)` with `f(0) ≠ 0`: evaluating at a
/// prime power `q₀` gives an order whose `p`-part is `q₀^k` and whose
/// `p′`-part is `f(q₀)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QAdicOrder {
    p_exponent: u64,
    prime_part: IntPoly,
}

impl QAdicOrder {
    /// Builds `q^k · f(q)`. Panics when `f` has zero constant term, which
    /// would put a factor of `q` in the wrong slot.
    pub fn new(p_exponent: u64, prime_part: IntPoly) -> Self {
        assert!(
            !prime_part.constant_term().is_zero(),
            "prime-to-p part must have nonzero constant term: {prime_part}"
        );
        QAdicOrder { p_exponent, prime_part }
    }

    pub fn one() -> Self {
        QAdicOrder { p_exponent: 0, prime_part: IntPoly::one() }
    }

    /// Exponent `k` of the `p`-part `q^k`.
    pub fn p_exponent(&self) -> u64 {
        self.p_exponent
    }

    /// The `p′`-part polynomial `f`.
    pub fn prime_part(&self) -> &IntPoly {
        &self.prime_part
    }

    /// The full order `q^k · f(q)` as one polynomial.
    pub fn to_poly(&self) -> IntPoly {
        &IntPoly::q_pow(self.p_exponent as usize) * &self.prime_part
    }

    pub fn as_fraction(&self) -> RatFraction {
        RatFraction::from_intpoly(&self.to_poly())
    }

    /// Evaluates at a prime power `q₀ > 1`, returning `(p-part, p′-part)`
    /// and asserting the split is genuine (the `p′`-part must be coprime to
    /// `q₀`).
    pub fn eval_split(&self, q0: &BigInt) -> Result<(BigInt, BigInt)> {
        let p_part = q0.pow(self.p_exponent as u32);
        let rest = self.prime_part.eval_int(q0);
        if !rest.gcd(q0).is_one() {
            return Err(Error::Mismatch(format!(
                "declared p'-part {rest} shares a factor with q0 = {q0}"
            )));
        }
        Ok((p_part, rest))
    }
}

impl Mul for &QAdicOrder {
    type Output = QAdicOrder;
    fn mul(self, rhs: &QAdicOrder) -> QAdicOrder {
        QAdicOrder {
            p_exponent: self.p_exponent + rhs.p_exponent,
            prime_part: &self.prime_part * &rhs.prime_part,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> IntPoly {
        IntPoly::q_pow(1)
    }

    fn c(v: i64) -> IntPoly {
        IntPoly::from_i64_coeffs(&[v])
    }

    #[test]
    fn arithmetic_examples() {
        let q_minus_1 = &q() - &c(1);
        let q_plus_1 = &q() + &c(1);
        assert_eq!(&q_minus_1 * &q_plus_1, IntPoly::from_i64_coeffs(&[-1, 0, 1]));
        let a = IntPoly::from_i64_coeffs(&[3, -2, 7]);
        assert_eq!(&a + &IntPoly::zero(), a);
        assert_eq!(&IntPoly::from_i64_coeffs(&[-1, 2]) * &c(1), IntPoly::from_i64_coeffs(&[-1, 2]));
    }

    #[test]
    fn degree_of_product_adds() {
        let a = IntPoly::from_i64_coeffs(&[1, 2, 3]);
        let b = IntPoly::from_i64_coeffs(&[5, 0, 0, -1]);
        assert_eq!((&a * &b).degree(), Some(5));
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn eval_examples() {
        let two_q_minus_1 = IntPoly::from_i64_coeffs(&[-1, 2]);
        assert_eq!(two_q_minus_1.eval_int(&BigInt::from(2)), BigInt::from(3));
        assert_eq!(two_q_minus_1.eval_int(&BigInt::from(3)), BigInt::from(5));
        // q^6 + 5q^4 − 9q^2 + 4q at q = 2
        let p = IntPoly::from_i64_coeffs(&[0, 4, -9, 0, 5, 0, 1]);
        assert_eq!(p.eval_int(&BigInt::from(2)), BigInt::from(116));
    }

    #[test]
    fn exact_div_examples() {
        let q2_minus_1 = IntPoly::from_i64_coeffs(&[-1, 0, 1]);
        let q_minus_1 = IntPoly::from_i64_coeffs(&[-1, 1]);
        assert_eq!(q2_minus_1.exact_div(&q_minus_1).unwrap(), IntPoly::from_i64_coeffs(&[1, 1]));

        let q3_minus_q = IntPoly::from_i64_coeffs(&[0, -1, 0, 1]);
        assert_eq!(q3_minus_q.exact_div(&q()).unwrap(), q2_minus_1);

        let q2_plus_1 = IntPoly::from_i64_coeffs(&[1, 0, 1]);
        assert!(matches!(
            q2_plus_1.exact_div(&q_minus_1),
            Err(Error::InexactDivision(_))
        ));
        // exact over ℚ but not over ℤ
        assert!(matches!(
            q().exact_div(&c(2)),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn rebase_examples() {
        let two_q_minus_1 = IntPoly::from_i64_coeffs(&[-1, 2]);
        assert_eq!(two_q_minus_1.rebase(&BigInt::from(1)), vec![BigInt::from(1), BigInt::from(2)]);

        // Table row n=3 shifted to the (q−1) basis
        let n3 = IntPoly::from_i64_coeffs(&[0, -3, 3, 1]);
        assert_eq!(
            n3.rebase(&BigInt::from(1)),
            vec![BigInt::from(1), BigInt::from(6), BigInt::from(6), BigInt::from(1)]
        );

        let a = IntPoly::from_i64_coeffs(&[4, -7, 0, 2]);
        assert_eq!(a.rebase(&BigInt::zero()), a.coeffs().to_vec());
        assert!(IntPoly::zero().rebase(&BigInt::from(5)).is_empty());
    }

    #[test]
    fn fraction_examples() {
        let q_minus_1 = IntPoly::from_i64_coeffs(&[-1, 1]);
        let one_over = RatFraction::from_ratio(&IntPoly::one(), &q_minus_1).unwrap();
        let q_over = RatFraction::from_ratio(&q(), &q_minus_1).unwrap();
        let sum = &one_over + &q_over;
        assert_eq!(
            sum,
            RatFraction::from_ratio(&IntPoly::from_i64_coeffs(&[1, 1]), &q_minus_1).unwrap()
        );

        let x = RatFraction::from_ratio(&IntPoly::from_i64_coeffs(&[2, 0, 3]), &q_minus_1).unwrap();
        assert_eq!(&x * &x.recip().unwrap(), RatFraction::one());

        // (q²−1)/(q−1) normalizes to the polynomial q+1
        let f = RatFraction::from_ratio(&IntPoly::from_i64_coeffs(&[-1, 0, 1]), &q_minus_1).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.to_intpoly().unwrap(), IntPoly::from_i64_coeffs(&[1, 1]));
    }

    #[test]
    fn to_intpoly_examples() {
        let f = RatFraction::from_intpoly(&IntPoly::from_i64_coeffs(&[-1, 2]));
        assert_eq!(f.to_intpoly().unwrap(), IntPoly::from_i64_coeffs(&[-1, 2]));

        let q_minus_1 = IntPoly::from_i64_coeffs(&[-1, 1]);
        let bad = RatFraction::from_ratio(&IntPoly::from_i64_coeffs(&[1, 1]), &q_minus_1).unwrap();
        assert!(matches!(bad.to_intpoly(), Err(Error::NonIntegral(_))));

        let three_q = RatFraction::from_intpoly(&IntPoly::from_i64_coeffs(&[0, 3]));
        assert_eq!(three_q.to_intpoly().unwrap(), IntPoly::from_i64_coeffs(&[0, 3]));

        // 3q/2 has an integer denominator polynomial (1) but fractional coefficient
        let half = RatFraction::from_ratio(&IntPoly::from_i64_coeffs(&[0, 3]), &c(2)).unwrap();
        assert!(half.is_polynomial());
        assert!(matches!(half.to_intpoly(), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn fraction_division_by_zero_is_an_error() {
        let x = RatFraction::from_intpoly(&q());
        assert!(x.div(&RatFraction::zero()).is_err());
        assert!(RatFraction::zero().recip().is_err());
    }

    #[test]
    fn qadic_order_split() {
        // |GL_2(q)| = q(q−1)(q²−1)
        let prime = &IntPoly::from_i64_coeffs(&[-1, 1]) * &IntPoly::from_i64_coeffs(&[-1, 0, 1]);
        let order = QAdicOrder::new(1, prime);
        assert_eq!(order.to_poly().eval_int(&BigInt::from(2)), BigInt::from(6));
        let (p_part, rest) = order.eval_split(&BigInt::from(2)).unwrap();
        assert_eq!((p_part, rest), (BigInt::from(2), BigInt::from(3)));

        let squared = &order * &order;
        assert_eq!(squared.p_exponent(), 2);
        assert!(!squared.prime_part().constant_term().is_zero());
    }

    #[test]
    #[should_panic(expected = "nonzero constant term")]
    fn qadic_order_rejects_misplaced_q_factor() {
        QAdicOrder::new(0, IntPoly::q_pow(1));
    }

    #[test]
    fn text_rendering() {
        assert_eq!(IntPoly::from_i64_coeffs(&[-1, 2]).to_text(), "2*q - 1");
        assert_eq!(IntPoly::q_pow(6).to_text(), "q^6");
        assert_eq!(IntPoly::from_i64_coeffs(&[1, -1]).to_text(), "-q + 1");
        assert_eq!(IntPoly::zero().to_text(), "0");
        assert_eq!(IntPoly::from_i64_coeffs(&[1, 1]).to_text(), "q + 1");
        assert_eq!(IntPoly::from_i64_coeffs(&[0, 4, -9, 0, 5, 0, 1]).to_text(), "q^6 + 5*q^4 - 9*q^2 + 4*q");
        assert_eq!(IntPoly::from_i64_coeffs(&[-3]).to_text(), "-3");
    }

    #[test]
    fn json_round_trip() {
        let p = IntPoly::from_i64_coeffs(&[0, 4, -9, 0, 5, 0, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["0","4","-9","0","5","0","1"]"#);
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
