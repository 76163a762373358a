//! Exact elements of cyclotomic fields `Q(ζ_n)`.
//!
//! A [`Scalar`] stores integer coordinates over a common positive denominator
//! in the power basis `1, ζ, …, ζ^{φ(n)-1}`, reduced modulo the `n`-th
//! cyclotomic polynomial. The pair (coordinates, denominator) is kept in lowest
//! terms, so equal values in the same field have identical representations.
//!
//! Values from different fields may be mixed freely: both operands are
//! embedded into `Q(ζ_lcm)` first. A rational scalar (conductor 1) embeds into
//! any field without cost, which is what makes `Scalar::from(2)` usable
//! everywhere.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use super::int::Int;
use crate::error::{Error, Result};

/// Largest supported conductor.
pub const MAX_CONDUCTOR: u32 = 1024;

/// Default conductor: `Q(ζ_8)` contains `i` and every `β` with `β⁴ = ±1`.
pub const DEFAULT_CONDUCTOR: u32 = 8;

#[derive(Debug)]
pub struct FieldInfo {
    n: u32,
    degree: usize,
    /// `powers[k]` is `ζ^k` in the power basis, for `0 <= k < n`.
    powers: Vec<Vec<i64>>,
    /// Exponents `k` in `[2, n)` coprime to `n`; `σ_k: ζ ↦ ζ^k` runs over the
    /// non-trivial Galois automorphisms.
    galois: Vec<u32>,
}

impl FieldInfo {
    fn build(n: u32) -> FieldInfo {
        let phi = cyclotomic_poly(n);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic polynomial
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            for k in (1..degree).rev() {
                next[k] = cur[k - 1];
            }
            for (k, c) in phi.iter().take(degree).enumerate() {
                next[k] -= top * c;
            }
            cur = next;
        }
        let galois = (2..n.max(2)).filter(|k| k.gcd(&n) == 1).collect();
        FieldInfo {
            n,
            degree,
            powers,
            galois,
        }
    }
}

/// Integer coefficients (constant term first) of the `n`-th cyclotomic
/// polynomial, computed by dividing `x^n - 1` by `Φ_d` for every proper divisor.
fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, dc) in den.iter().enumerate() {
            rem[k + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// Handle to an interned cyclotomic field.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldInfo);

impl Field {
    /// The field `Q(ζ_n)`; `n = 1` gives `Q`.
    pub fn cyclotomic(n: u32) -> Result<Field> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(Error::Semantic(format!(
                "conductor {n} outside the supported range 1..={MAX_CONDUCTOR}"
            )));
        }
        static CACHE: OnceLock<Mutex<HashMap<u32, &'static FieldInfo>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("field cache poisoned");
        let info = *guard
            .entry(n)
            .or_insert_with(|| Box::leak(Box::new(FieldInfo::build(n))));
        Ok(Field(info))
    }

    pub fn rationals() -> Field {
        Field::cyclotomic(1).expect("Q is always available")
    }

    pub fn conductor(&self) -> u32 {
        self.0.n
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            field: *self,
            num: smallvec![Int::ZERO; self.degree()],
            den: Int::ONE,
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        let mut s = self.zero();
        s.num[0] = Int::from(v);
        s
    }

    /// The generator `ζ_n` of this field.
    pub fn zeta(&self) -> Scalar {
        self.zeta_pow(1)
    }

    /// `ζ_n^k`, with `k` taken modulo `n`.
    pub fn zeta_pow(&self, k: i64) -> Scalar {
        let n = self.conductor() as i64;
        let e = k.rem_euclid(n) as usize;
        Scalar {
            field: *self,
            num: self.0.powers[e].iter().map(|&c| Int::from(c)).collect(),
            den: Int::ONE,
        }
    }

    /// Embeds `s` into this field; fails unless the conductor of `s` divides
    /// this conductor.
    pub fn embed(&self, s: &Scalar) -> Result<Scalar> {
        let m = s.field.conductor();
        let n = self.conductor();
        if !n.is_multiple_of(m) {
            return Err(Error::Semantic(format!("cannot embed Q(zeta_{m}) into Q(zeta_{n})")));
        }
        Ok(s.embed_into(*self))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.n == other.0.n
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.n)
    }
}

/// Exact element of a cyclotomic field.
#[derive(Clone)]
pub struct Scalar {
    field: Field,
    num: SmallVec<[Int; 4]>,
    den: Int,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Field::rationals().zero()
    }

    pub fn one() -> Scalar {
        Field::rationals().one()
    }

    pub fn from_int(v: i64) -> Scalar {
        Field::rationals().from_int(v)
    }

    /// The rational `p/q`.
    ///
    /// # Panics
    /// If `q == 0`; use [`Scalar::checked_div`] for fallible division.
    pub fn frac(p: i64, q: i64) -> Scalar {
        assert!(q != 0, "zero denominator");
        let mut s = Scalar {
            field: Field::rationals(),
            num: smallvec![Int::from(p)],
            den: Int::from(q),
        };
        s.normalize();
        s
    }

    /// `ζ_n` in its own field `Q(ζ_n)`.
    pub fn zeta(n: u32) -> Scalar {
        Field::cyclotomic(n).expect("conductor in range").zeta()
    }

    /// The imaginary unit, as `ζ_4`.
    pub fn i() -> Scalar {
        Scalar::zeta(4)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Integer numerators of the power-basis coordinates.
    pub fn numerators(&self) -> &[Int] {
        &self.num
    }

    pub fn denominator(&self) -> &Int {
        &self.den
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Int::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Int::is_zero)
    }

    /// True when only the constant coordinate can be non-zero.
    #[inline]
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Int::is_zero)
    }

    /// Rational value `(p, q)` when the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<(Int, Int)> {
        self.is_rational().then(|| (self.num[0].clone(), self.den.clone()))
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = self.den.neg();
            for c in self.num.iter_mut() {
                *c = c.neg();
            }
        }
        if self.is_zero() {
            self.den = Int::ONE;
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in self.num.iter() {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den = self.den.div_exact(&g);
            for c in self.num.iter_mut() {
                *c = c.div_exact(&g);
            }
        }
    }

    fn embed_into(&self, target: Field) -> Scalar {
        if self.field == target {
            return self.clone();
        }
        let mut num: SmallVec<[Int; 4]> = smallvec![Int::ZERO; target.degree()];
        let step = (target.conductor() / self.field.conductor()) as usize;
        let n = target.conductor() as usize;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, p) in target.0.powers[(k * step) % n].iter().enumerate() {
                if *p != 0 {
                    num[j] = num[j].add(&c.mul(&Int::from(*p)));
                }
            }
        }
        let mut s = Scalar {
            field: target,
            num,
            den: self.den.clone(),
        };
        s.normalize();
        s
    }

    /// Smallest field containing both `a` and `b`.
    fn common_field(a: Field, b: Field) -> Field {
        let (m, n) = (a.conductor(), b.conductor());
        if n % m == 0 {
            b
        } else if m % n == 0 {
            a
        } else {
            Field::cyclotomic(m.lcm(&n)).expect("lcm conductor in range")
        }
    }

    /// Brings two scalars into a common field.
    fn unify<'a>(a: &'a Scalar, b: &'a Scalar) -> (std::borrow::Cow<'a, Scalar>, std::borrow::Cow<'a, Scalar>) {
        use std::borrow::Cow;
        if a.field == b.field {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let target = Scalar::common_field(a.field, b.field);
        (Cow::Owned(a.embed_into(target)), Cow::Owned(b.embed_into(target)))
    }

    fn add_impl(&self, other: &Scalar, negate_other: bool) -> Scalar {
        if other.is_zero() && self.field.conductor().is_multiple_of(other.field.conductor()) {
            return self.clone();
        }
        if self.is_zero() && other.field.conductor().is_multiple_of(self.field.conductor()) {
            return if negate_other { -other } else { other.clone() };
        }
        let (a, b) = Scalar::unify(self, other);
        let mut num: SmallVec<[Int; 4]> = SmallVec::with_capacity(a.num.len());
        let den = if a.den == b.den {
            for (x, y) in a.num.iter().zip(b.num.iter()) {
                num.push(if negate_other { x.sub(y) } else { x.add(y) });
            }
            a.den.clone()
        } else {
            for (x, y) in a.num.iter().zip(b.num.iter()) {
                let l = x.mul(&b.den);
                let r = y.mul(&a.den);
                num.push(if negate_other { l.sub(&r) } else { l.add(&r) });
            }
            a.den.mul(&b.den)
        };
        let mut s = Scalar {
            field: a.field,
            num,
            den,
        };
        s.normalize();
        s
    }

    fn scale_rational(&self, p: &Int, q: &Int) -> Scalar {
        let mut s = Scalar {
            field: self.field,
            num: self.num.iter().map(|c| c.mul(p)).collect(),
            den: self.den.mul(q),
        };
        s.normalize();
        s
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        if self.is_rational() || other.is_rational() {
            let target = Scalar::common_field(self.field, other.field);
            let s = if self.is_rational() {
                other.scale_rational(&self.num[0], &self.den)
            } else {
                self.scale_rational(&other.num[0], &other.den)
            };
            return s.embed_into(target);
        }
        let (a, b) = Scalar::unify(self, other);
        let field = a.field;
        let d = field.degree();
        let n = field.conductor() as usize;
        let mut prod: SmallVec<[Int; 8]> = smallvec![Int::ZERO; 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&x.mul(y));
            }
        }
        let mut num: SmallVec<[Int; 4]> = smallvec![Int::ZERO; d];
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                num[k] = num[k].add(&c);
            } else {
                for (j, p) in field.0.powers[k % n].iter().enumerate() {
                    if *p != 0 {
                        num[j] = num[j].add(&c.mul(&Int::from(*p)));
                    }
                }
            }
        }
        let mut s = Scalar {
            field,
            num,
            den: a.den.mul(&b.den),
        };
        s.normalize();
        s
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k`.
    fn galois(&self, k: u32) -> Scalar {
        let field = self.field;
        let n = field.conductor() as usize;
        let mut num: SmallVec<[Int; 4]> = smallvec![Int::ZERO; field.degree()];
        for (e, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, p) in field.0.powers[(e * k as usize) % n].iter().enumerate() {
                if *p != 0 {
                    num[j] = num[j].add(&c.mul(&Int::from(*p)));
                }
            }
        }
        Scalar {
            field,
            num,
            den: self.den.clone(),
        }
    }

    /// The same value written in the smallest cyclotomic field containing it.
    pub fn simplified(&self) -> Scalar {
        if self.is_rational() {
            return self.embed_into(Field::rationals());
        }
        let n = self.field.conductor();
        for m in (3..n).filter(|m| n.is_multiple_of(*m) && m % 4 != 2) {
            if let Some(s) = Field::cyclotomic(m).ok().and_then(|f| self.restrict_to(f)) {
                return s;
            }
        }
        self.clone()
    }

    /// Coordinates in a subfield, found by solving the embedding equations
    /// `Σ x_j ζ_m^j = y·self` for a solution with `y ≠ 0`.
    fn restrict_to(&self, sub: Field) -> Option<Scalar> {
        let deg = sub.degree();
        let images: Vec<Scalar> = (0..deg)
            .map(|j| sub.zeta_pow(j as i64).embed_into(self.field))
            .collect();
        let rat = |c: &Int, d: &Int| {
            let mut v = Scalar {
                field: Field::rationals(),
                num: smallvec![c.clone()],
                den: d.clone(),
            };
            v.normalize();
            v
        };
        let mut ech = super::RowEchelon::new(deg + 1);
        for e in 0..self.field.degree() {
            let mut row: Vec<(usize, Scalar)> = images
                .iter()
                .enumerate()
                .map(|(j, im)| (j, rat(&im.num[e], &im.den)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            let own = rat(&self.num[e], &self.den);
            if !own.is_zero() {
                row.push((deg, -own));
            }
            if !row.is_empty() {
                ech.insert(&row);
            }
        }
        let null = ech.nullspace();
        let v = null.first()?;
        let y = v.iter().find(|(k, _)| *k == deg)?.1.clone();
        let mut out = sub.zero();
        for (j, x) in v.iter().filter(|(k, _)| *k < deg) {
            out += &(&x.checked_div(&y).ok()? * &sub.zeta_pow(*j as i64));
        }
        (out.embed_into(self.field) == *self).then_some(out)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let mut s = self.field.zero();
            s.num[0] = self.den.clone();
            s.den = self.num[0].clone();
            s.normalize();
            return Ok(s);
        }
        // x^{-1} = (∏_{σ≠1} σ(x)) / N(x), and the norm N(x) is rational.
        let mut conj = self.field.one();
        for &k in &self.field.0.galois {
            conj = conj.mul_impl(&self.galois(k));
        }
        let norm = self.mul_impl(&conj);
        debug_assert!(norm.is_rational());
        let (p, q) = norm.as_rational().expect("norm is rational");
        Ok(conj.scale_rational(&q, &p))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Signed integer power; negative exponents need a non-zero base.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Parses an exact scalar, interpreting a bare `z` as the generator of
    /// `Q(ζ_n)` and embedding the result into that field.
    pub fn parse_in(s: &str, n: u32) -> Result<Scalar> {
        let field = Field::cyclotomic(n)?;
        let v = parse::Parser::new(s, Some(n)).parse_all()?;
        let m = v.field.conductor();
        if !n.is_multiple_of(m) {
            return Err(Error::Semantic(format!("scalar '{s}' does not lie in Q(zeta_{n})")));
        }
        Ok(v.embed_into(field))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.field == other.field {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Scalar::unify(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Scalar {}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_impl(b));
forward_binop!(Div, div, |a: &Scalar, b: &Scalar| a
    .checked_div(b)
    .expect("division by zero scalar"));

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_impl(rhs);
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field,
            num: self.num.iter().map(Int::neg).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_ratio(p: &Int, q: &Int) -> String {
    let g = p.gcd(q);
    let (p, q) = (p.div_exact(&g), q.div_exact(&g));
    if q.is_one() {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

/// Canonical text form: `a0 + a1*zN + a2*zN^2 + …`, zero terms omitted,
/// rationals as `p/q`, unit coefficients on powers of ζ omitted.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let this = self.simplified();
        let n = this.field.conductor();
        let mut first = true;
        for (k, c) in this.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = fmt_ratio(&c.abs(), &this.den);
            let body = match k {
                0 => mag,
                _ => {
                    let z = if k == 1 { format!("z{n}") } else { format!("z{n}^{k}") };
                    if mag == "1" {
                        z
                    } else {
                        format!("{mag}*{z}")
                    }
                }
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::Parser::new(s, None).parse_all()
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod parse {
    //! Recursive-descent parser for scalar expressions:
    //!
    //! ```text
    //! expr   := ['+'|'-'] term (('+'|'-') term)*
    //! term   := power (('*'|'/') power)*
    //! power  := atom ['^' ['-'] digits]
    //! atom   := digits | 'i' | 'z' [digits] | '(' expr ')'
    //! ```

    use super::*;

    pub(super) struct Parser<'a> {
        src: &'a str,
        bytes: &'a [u8],
        pos: usize,
        context: Option<u32>,
    }

    impl<'a> Parser<'a> {
        pub(super) fn new(src: &'a str, context: Option<u32>) -> Self {
            Parser {
                src,
                bytes: src.as_bytes(),
                pos: 0,
                context,
            }
        }

        fn err(&self, msg: &str) -> Error {
            Error::ScalarSyntax {
                column: self.pos + 1,
                message: format!("{msg} in '{}'", self.src),
            }
        }

        fn skip_ws(&mut self) {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.bytes.get(self.pos).copied()
        }

        fn digits(&mut self) -> Option<&'a str> {
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            (self.pos > start).then(|| &self.src[start..self.pos])
        }

        pub(super) fn parse_all(mut self) -> Result<Scalar> {
            if self.peek().is_none() {
                return Err(self.err("empty scalar"));
            }
            let v = self.expr()?;
            if self.peek().is_some() {
                return Err(self.err("unexpected trailing input"));
            }
            Ok(v)
        }

        fn expr(&mut self) -> Result<Scalar> {
            let mut neg = false;
            match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                Some(b'+') => self.pos += 1,
                _ => {}
            }
            let mut acc = self.term()?;
            if neg {
                acc = -acc;
            }
            loop {
                match self.peek() {
                    Some(b'+') => {
                        self.pos += 1;
                        acc = acc + self.term()?;
                    }
                    Some(b'-') => {
                        self.pos += 1;
                        acc = acc - self.term()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn term(&mut self) -> Result<Scalar> {
            let mut acc = self.power()?;
            loop {
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        acc = acc * self.power()?;
                    }
                    Some(b'/') => {
                        self.pos += 1;
                        let at = self.pos;
                        let d = self.power()?;
                        acc = acc.checked_div(&d).map_err(|_| {
                            self.pos = at;
                            self.err("division by zero")
                        })?;
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn power(&mut self) -> Result<Scalar> {
            let base = self.atom()?;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let neg = if self.peek() == Some(b'-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                self.skip_ws();
                let e: i64 = self
                    .digits()
                    .ok_or_else(|| self.err("expected exponent"))?
                    .parse()
                    .map_err(|_| self.err("exponent too large"))?;
                let e = if neg { -e } else { e };
                return base.powi(e).map_err(|_| self.err("zero to a negative power"));
            }
            Ok(base)
        }

        fn atom(&mut self) -> Result<Scalar> {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let v = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    Ok(v)
                }
                Some(b'i') => {
                    self.pos += 1;
                    Ok(Scalar::i())
                }
                Some(b'z') => {
                    self.pos += 1;
                    let n = match self.digits() {
                        Some(d) => d.parse::<u32>().map_err(|_| self.err("bad conductor"))?,
                        None => self
                            .context
                            .ok_or_else(|| self.err("bare 'z' needs a field context; write z<n>"))?,
                    };
                    let field = Field::cyclotomic(n).map_err(|_| self.err("conductor out of range"))?;
                    Ok(field.zeta())
                }
                Some(c) if c.is_ascii_digit() => {
                    let d = self.digits().expect("digit present");
                    let v: Int = d.parse().map_err(|_| self.err("bad integer"))?;
                    let mut s = Scalar::zero();
                    s.num[0] = v;
                    Ok(s)
                }
                Some(_) => Err(self.err("unexpected character")),
                None => Err(self.err("unexpected end of input")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8() -> Scalar {
        Scalar::zeta(8)
    }

    #[test]
    fn zeta8_fourth_power_is_minus_one() {
        let z = z8();
        let z4 = &(&(&z * &z) * &z) * &z;
        assert_eq!(z4, Scalar::from(-1));
    }

    #[test]
    fn one_plus_i_times_one_minus_i() {
        let i = z8().pow(2);
        let a = &Scalar::one() + &i;
        let b = &Scalar::one() - &i;
        assert_eq!(&a * &b, Scalar::from(2));
    }

    #[test]
    fn beta_fourth_power() {
        let beta = z8().pow(7);
        assert_eq!(beta.pow(4), Scalar::from(-1));
        assert_eq!(beta.pow(2), -&z8().pow(2));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn inverse_and_division_by_zero() {
        let x = &Scalar::from(3) + &z8();
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, Scalar::one());
        assert!(matches!(Scalar::zero().inv(), Err(Error::DivisionByZero)));
        let w = Scalar::zeta(12) + Scalar::frac(1, 3);
        assert_eq!(&w * &w.inv().unwrap(), Scalar::one());
    }

    #[test]
    fn mixed_fields_unify() {
        let i4 = Scalar::i();
        let i8 = z8().pow(2);
        assert_eq!(i4, i8);
        let s = &i4 + &z8();
        assert_eq!(s.field().conductor(), 8);
        let w = &Scalar::zeta(3) * &Scalar::i();
        assert_eq!(w.field().conductor(), 12);
        assert_eq!(w.pow(12), Scalar::one());
    }

    #[test]
    fn display_and_parse() {
        let x = Scalar::frac(1, 2) - Scalar::frac(1, 2) * z8().pow(2);
        assert_eq!(x.to_string(), "1/2 - 1/2*z4");
        assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
        assert_eq!("z8^7".parse::<Scalar>().unwrap(), -&z8().pow(3));
        assert_eq!("-i/2".parse::<Scalar>().unwrap(), -&(Scalar::i() * Scalar::frac(1, 2)));
        assert_eq!(Scalar::parse_in("z^2", 8).unwrap(), z8().pow(2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("z".parse::<Scalar>().is_err());
        assert!("3 +".parse::<Scalar>().is_err());
    }
}
