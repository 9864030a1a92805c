//! Exact arithmetic in `Z[mu]` with `mu = 2cos(pi/L)`.
//!
//! Every `lambda_p = 2cos(pi/p)` with `p | L` is an integer polynomial in `mu`,
//! so one ring per `L` holds all quiddity entries built from those sizes.
//! Elements are stored as coefficient vectors reduced modulo the minimal
//! polynomial of `mu`, which makes equality (and zero testing) syntactic.
//! Signs of nonzero elements are decided with dyadic interval arithmetic.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("empty level set")]
    EmptyLevels,
    #[error("level {0} is below 3")]
    LevelTooSmall(u32),
    #[error("lambda_{p} is not in the ring for L = {l}")]
    LevelNotInRing { p: u32, l: u32 },
    #[error("elements come from different rings (L = {0} and L = {1})")]
    ContextMismatch(u32, u32),
    #[error("ring for L = {from} does not embed into ring for L = {to}")]
    NotEmbeddable { from: u32, to: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

pub(crate) type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![BigInt::zero()];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
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

/// Exact quotient of `a` by a monic `b`; panics if the division leaves a remainder.
fn poly_div_monic(a: &[BigInt], b: &[BigInt]) -> Poly {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    if a.len() - 1 < db {
        assert!(a.iter().all(|c| c.is_zero()), "inexact division");
        return vec![BigInt::zero()];
    }
    let mut rem = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    q
}

fn moebius(mut n: u32) -> i32 {
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

/// Cyclotomic polynomial `Phi_n`, coefficients low to high.
pub fn cyclotomic(n: u32) -> Poly {
    assert!(n >= 1);
    let mut num: Poly = vec![BigInt::one()];
    let mut den: Poly = vec![BigInt::one()];
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        // x^d - 1
        let mut f = vec![BigInt::zero(); d as usize + 1];
        f[0] = BigInt::from(-1);
        f[d as usize] = BigInt::one();
        match moebius(n / d) {
            1 => num = poly_mul(&num, &f),
            -1 => den = poly_mul(&den, &f),
            _ => {}
        }
    }
    // den is monic up to sign: each factor x^d - 1 has leading coefficient 1
    trim(poly_div_monic(&num, &den))
}

/// `T'_k` with `T'_0 = 2`, `T'_1 = x`: the polynomial with `T'_k(z + 1/z) = z^k + z^-k`.
fn chebyshev_t2(k: usize) -> Poly {
    let mut a: Poly = vec![BigInt::from(2)];
    if k == 0 {
        return a;
    }
    let mut b: Poly = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); b.len() + 1];
        for (i, c) in b.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in a.iter().enumerate() {
            next[i] -= c;
        }
        a = b;
        b = next;
    }
    b
}

fn gcd(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u32
}

/// Minimal polynomial of `2cos(pi/l)` over Q (monic, integer coefficients).
pub fn minimal_polynomial(l: u32) -> Poly {
    let phi = cyclotomic(2 * l);
    let d = phi.len() / 2;
    debug_assert_eq!(phi.len(), 2 * d + 1);
    let mut psi: Poly = vec![phi[d].clone()];
    for k in 1..=d {
        let c = &phi[d + k];
        if c.is_zero() {
            continue;
        }
        let t = chebyshev_t2(k);
        if psi.len() < t.len() {
            psi.resize(t.len(), BigInt::zero());
        }
        for (i, ti) in t.iter().enumerate() {
            psi[i] += c * ti;
        }
    }
    trim(psi)
}

// ---------------------------------------------------------------------------
// dyadic intervals

/// Closed interval `[lo, hi] * 2^-prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

fn floor_shr(a: &BigInt, s: u32) -> BigInt {
    a.div_floor(&(BigInt::one() << s))
}

fn ceil_shr(a: &BigInt, s: u32) -> BigInt {
    -((-a).div_floor(&(BigInt::one() << s)))
}

impl Dyadic {
    fn exact(c: &BigInt, prec: u32) -> Self {
        let v = c << prec;
        Dyadic { lo: v.clone(), hi: v, prec }
    }

    fn add(&self, o: &Dyadic) -> Dyadic {
        Dyadic { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    fn sub(&self, o: &Dyadic) -> Dyadic {
        Dyadic { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, prec: self.prec }
    }

    fn mul(&self, o: &Dyadic) -> Dyadic {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mn = c.iter().min().unwrap();
        let mx = c.iter().max().unwrap();
        Dyadic { lo: floor_shr(mn, self.prec), hi: ceil_shr(mx, self.prec), prec: self.prec }
    }

    fn scale(&self, k: i64) -> Dyadic {
        let k = BigInt::from(k);
        let a = &self.lo * &k;
        let b = &self.hi * &k;
        if a <= b {
            Dyadic { lo: a, hi: b, prec: self.prec }
        } else {
            Dyadic { lo: b, hi: a, prec: self.prec }
        }
    }

    fn div_pos(&self, q: &BigInt) -> Dyadic {
        Dyadic {
            lo: self.lo.div_floor(q),
            hi: -((-&self.hi).div_floor(q)),
            prec: self.prec,
        }
    }

    fn widen(&self, e: &BigInt) -> Dyadic {
        Dyadic { lo: &self.lo - e, hi: &self.hi + e, prec: self.prec }
    }

    /// Requantize to a coarser precision, rounding outward.
    fn to_prec(&self, prec: u32) -> Dyadic {
        assert!(prec <= self.prec);
        let s = self.prec - prec;
        Dyadic { lo: floor_shr(&self.lo, s), hi: ceil_shr(&self.hi, s), prec }
    }

    pub fn width_log2(&self) -> i64 {
        let w = &self.hi - &self.lo;
        if w.is_zero() {
            return i64::MIN;
        }
        w.bits() as i64 - self.prec as i64
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= BigInt::zero() && self.hi >= BigInt::zero()
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) / 2;
        let m = mid.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(-(self.prec as i32))
    }
}

fn atan_inv(x: u32, prec: u32) -> Dyadic {
    let one = BigInt::one() << prec;
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut pow = BigInt::from(x);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let den = BigInt::from(2 * k + 1) * &pow;
        let (q, r) = one.div_rem(&den);
        let t_hi = if r.is_zero() { q.clone() } else { &q + 1 };
        if t_hi <= BigInt::one() {
            lo -= &t_hi;
            hi += &t_hi;
            break;
        }
        if k % 2 == 0 {
            lo += &q;
            hi += &t_hi;
        } else {
            lo -= &t_hi;
            hi -= &q;
        }
        pow *= &x2;
        k += 1;
    }
    Dyadic { lo, hi, prec }
}

/// Enclosure of pi from Machin's formula.
pub fn pi_enclosure(prec: u32) -> Dyadic {
    let a = atan_inv(5, prec).scale(16);
    let b = atan_inv(239, prec).scale(4);
    a.sub(&b)
}

fn cos_enclosure(theta: &Dyadic) -> Dyadic {
    let prec = theta.prec;
    let p = theta.mul(theta);
    assert!(p.hi < (BigInt::from(4) << prec), "argument too large for the series bound");
    let mut sum = Dyadic::exact(&BigInt::one(), prec);
    let mut term = sum.clone();
    let mut k: u64 = 1;
    loop {
        term = term.mul(&p).div_pos(&BigInt::from((2 * k - 1) * (2 * k)));
        if term.hi <= BigInt::one() {
            let e = term.hi.clone().max(BigInt::zero());
            sum = sum.widen(&e);
            break;
        }
        if k % 2 == 1 {
            sum = sum.sub(&term);
        } else {
            sum = sum.add(&term);
        }
        k += 1;
    }
    sum
}

/// Enclosure of `2cos(pi/l)` with width about `2^-prec`.
pub fn mu_enclosure(l: u32, prec: u32) -> Dyadic {
    let work = prec + 64;
    let pi = pi_enclosure(work);
    let theta = pi.div_pos(&BigInt::from(l));
    cos_enclosure(&theta).scale(2).to_prec(prec)
}

// ---------------------------------------------------------------------------
// contexts

/// The ring `Z[2cos(pi/L)]`, `L` the lcm of the requested levels.
pub struct RingContext {
    levels: Vec<u32>,
    l: u32,
    minpoly: Poly,
    enclosures: Mutex<Vec<Dyadic>>,
}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingContext").field("levels", &self.levels).field("l", &self.l).finish()
    }
}

pub type Ctx = Arc<RingContext>;

impl RingContext {
    pub fn new(levels: &[u32]) -> Result<Ctx, RingError> {
        if levels.is_empty() {
            return Err(RingError::EmptyLevels);
        }
        let mut lv: Vec<u32> = levels.to_vec();
        lv.sort_unstable();
        lv.dedup();
        if let Some(&p) = lv.iter().find(|&&p| p < 3) {
            return Err(RingError::LevelTooSmall(p));
        }
        let l = lv.iter().fold(1u32, |acc, &p| acc.lcm(&p));
        let minpoly = minimal_polynomial(l);
        debug_assert_eq!(minpoly.len() - 1, (euler_phi(2 * l) / 2) as usize);
        Ok(Arc::new(RingContext { levels: lv, l, minpoly, enclosures: Mutex::new(Vec::new()) }))
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn big_l(&self) -> u32 {
        self.l
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn contains_level(&self, p: u32) -> bool {
        p >= 3 && self.l % p == 0
    }

    fn reduce(&self, mut p: Poly) -> Vec<BigInt> {
        let d = self.degree();
        if p.len() > d {
            for k in (d..p.len()).rev() {
                let c = std::mem::take(&mut p[k]);
                if c.is_zero() {
                    continue;
                }
                for i in 0..d {
                    p[k - d + i] -= &c * &self.minpoly[i];
                }
            }
            p.truncate(d);
        }
        p.resize(d, BigInt::zero());
        p
    }

    fn enclosure(&self, prec: u32) -> Dyadic {
        let mut cache = self.enclosures.lock().unwrap();
        if let Some(e) = cache.iter().find(|e| e.prec == prec) {
            return e.clone();
        }
        let e = mu_enclosure(self.l, prec);
        cache.push(e.clone());
        e
    }
}

/// Element of `Z[mu]`.
#[derive(Clone)]
pub struct RingElem {
    ctx: Ctx,
    c: Vec<BigInt>,
}

pub fn zero(ctx: &Ctx) -> RingElem {
    RingElem { ctx: ctx.clone(), c: vec![BigInt::zero(); ctx.degree()] }
}

pub fn one(ctx: &Ctx) -> RingElem {
    int(ctx, 1)
}

pub fn int(ctx: &Ctx, k: i64) -> RingElem {
    from_poly(ctx, vec![BigInt::from(k)])
}

pub fn from_poly(ctx: &Ctx, p: Poly) -> RingElem {
    RingElem { ctx: ctx.clone(), c: ctx.reduce(p) }
}

pub fn mu(ctx: &Ctx) -> RingElem {
    from_poly(ctx, vec![BigInt::zero(), BigInt::one()])
}

/// `lambda_p = 2cos(pi/p) = T'_{L/p}(mu)`.
pub fn lambda(ctx: &Ctx, p: u32) -> Result<RingElem, RingError> {
    if !ctx.contains_level(p) {
        return Err(RingError::LevelNotInRing { p, l: ctx.l });
    }
    Ok(from_poly(ctx, chebyshev_t2((ctx.l / p) as usize)))
}

/// `sum_{p in sizes} lambda_p`.
pub fn lambda_sum(ctx: &Ctx, sizes: &[u32]) -> Result<RingElem, RingError> {
    let mut acc = zero(ctx);
    for &p in sizes {
        acc += &lambda(ctx, p)?;
    }
    Ok(acc)
}

/// Chebyshev polynomial of the second kind, `U_{-1} = 0`, `U_0 = 1`.
pub fn chebyshev_u(x: &RingElem, k: i64) -> RingElem {
    assert!(k >= -1, "U_k defined here for k >= -1");
    let mut prev = zero(&x.ctx);
    let mut cur = one(&x.ctx);
    if k == -1 {
        return prev;
    }
    for _ in 0..k {
        let next = &(x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

impl RingElem {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c.first().map_or(false, |c| c.is_one()) && self.c.iter().skip(1).all(|c| c.is_zero())
    }

    /// Integer value if the element lies in Z.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.c.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.c.first().cloned().unwrap_or_else(BigInt::zero))
        } else {
            None
        }
    }

    fn same_ring(&self, o: &RingElem) -> Result<(), RingError> {
        if self.ctx.l == o.ctx.l {
            Ok(())
        } else {
            Err(RingError::ContextMismatch(self.ctx.l, o.ctx.l))
        }
    }

    pub fn checked_add(&self, o: &RingElem) -> Result<RingElem, RingError> {
        self.same_ring(o)?;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect();
        Ok(RingElem { ctx: self.ctx.clone(), c })
    }

    pub fn checked_sub(&self, o: &RingElem) -> Result<RingElem, RingError> {
        self.same_ring(o)?;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect();
        Ok(RingElem { ctx: self.ctx.clone(), c })
    }

    pub fn checked_mul(&self, o: &RingElem) -> Result<RingElem, RingError> {
        self.same_ring(o)?;
        Ok(RingElem { ctx: self.ctx.clone(), c: self.ctx.reduce(poly_mul(&self.c, &o.c)) })
    }

    pub fn scale(&self, k: i64) -> RingElem {
        let k = BigInt::from(k);
        RingElem { ctx: self.ctx.clone(), c: self.c.iter().map(|a| a * &k).collect() }
    }

    pub fn pow(&self, e: u32) -> RingElem {
        let mut acc = one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Re-express the element in a ring whose `L` is a multiple of ours.
    pub fn embed(&self, target: &Ctx) -> Result<RingElem, RingError> {
        if target.l % self.ctx.l != 0 {
            return Err(RingError::NotEmbeddable { from: self.ctx.l, to: target.l });
        }
        if target.l == self.ctx.l {
            return Ok(RingElem { ctx: target.clone(), c: self.c.clone() });
        }
        let m = from_poly(target, chebyshev_t2((target.l / self.ctx.l) as usize));
        let mut acc = zero(target);
        for c in self.c.iter().rev() {
            acc = &(&acc * &m) + &int_big(target, c.clone());
        }
        Ok(acc)
    }

    /// Interval enclosure of the real value at roughly `prec` bits.
    pub fn enclose(&self, prec: u32) -> Dyadic {
        let m = self.ctx.enclosure(prec);
        let d = self.c.len();
        let mut acc = Dyadic::exact(&self.c[d - 1], prec);
        for i in (0..d - 1).rev() {
            acc = acc.mul(&m).add(&Dyadic::exact(&self.c[i], prec));
        }
        acc
    }

    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let mut prec = 64;
        loop {
            let e = self.enclose(prec);
            if e.lo > BigInt::zero() {
                return Sign::Positive;
            }
            if e.hi < BigInt::zero() {
                return Sign::Negative;
            }
            prec *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(96).midpoint_f64()
    }

    /// Exact form followed by a decimal approximation.
    pub fn with_hint(&self) -> String {
        format!("{} : {:.6}", self, self.to_f64())
    }
}

fn int_big(ctx: &Ctx, c: BigInt) -> RingElem {
    from_poly(ctx, vec![c])
}

/// Decide the sign of `x`.
pub fn sign_of(x: &RingElem) -> Sign {
    x.sign()
}

impl PartialEq for RingElem {
    fn eq(&self, o: &RingElem) -> bool {
        if self.ctx.l == o.ctx.l {
            return self.c == o.c;
        }
        let l = self.ctx.l.lcm(&o.ctx.l);
        let big = RingContext::new(&[l]).expect("lcm of levels is a valid level");
        self.embed(&big).unwrap().c == o.embed(&big).unwrap().c
    }
}

impl Eq for RingElem {}

impl std::hash::Hash for RingElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.l.hash(state);
        self.c.hash(state);
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [L={}]", self, self.ctx.l)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let body = match (k, a.is_one()) {
                (0, _) => a.to_string(),
                (1, true) => "m".to_string(),
                (1, false) => format!("{}*m", a),
                (_, true) => format!("m^{}", k),
                (_, false) => format!("{}*m^{}", a, k),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            write!(f, "{}", body)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b RingElem> for &'a RingElem {
            type Output = RingElem;
            fn $m(self, o: &'b RingElem) -> RingElem {
                self.$checked(o).expect("ring operation on mismatched contexts")
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, o: RingElem) -> RingElem {
                (&self).$m(&o)
            }
        }
        impl<'b> $tr<&'b RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, o: &'b RingElem) -> RingElem {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, o: &RingElem) {
        self.same_ring(o).expect("ring operation on mismatched contexts");
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }
}

impl SubAssign<&RingElem> for RingElem {
    fn sub_assign(&mut self, o: &RingElem) {
        self.same_ring(o).expect("ring operation on mismatched contexts");
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a -= b;
        }
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { ctx: self.ctx.clone(), c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}
