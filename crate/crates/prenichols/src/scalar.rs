//! Exact arithmetic in cyclotomic fields `Q(zeta_N)` and root-of-unity bookkeeping.
//!
//! An element of `Q(zeta_N)` is stored as a rational coefficient vector of
//! length `deg Phi_N = phi(N)`, fully reduced modulo the `N`-th cyclotomic
//! polynomial. Equality is exact; arithmetic between different conductors
//! embeds both operands into the lcm conductor first. No floating point is
//! used anywhere.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("division by zero scalar")]
    DivisionByZero,
}

/// Multiplicative order of a scalar: finite or not a root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Integer polynomials, lowest degree first. Used only for `Phi_N`.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic; division is exact by construction.
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    if rem.len() < den.len() {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for (m, dc) in den.iter().enumerate() {
                let v = &rem[k + m] - &c * dc;
                rem[k + m] = v;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// `Phi_N` as integer coefficients, memoized. Computed by the recursion
/// `x^N - 1 = prod_{d | N} Phi_d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    static CACHE: Lazy<Mutex<HashMap<u64, Vec<BigInt>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(p) = CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::from(1);
        let mut acc = num;
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                acc = poly_div_exact(&acc, &phi_d);
            }
        }
        acc
    };
    CACHE.lock().unwrap().insert(n, poly.clone());
    poly
}

fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result
}

/// An exact element of the cyclotomic field `Q(zeta_N)`.
///
/// `coeffs` has length `phi(N)` and represents an element of
/// `Q[x]/Phi_N(x)` evaluated at the primitive root `zeta_N = e^{2 pi i / N}`.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(conductor: u64) -> Self {
        assert!(conductor >= 1);
        Cyclotomic {
            conductor,
            coeffs: vec![BigRational::zero(); euler_phi(conductor) as usize],
        }
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Cyclotomic::from_rational(rat(n))
    }

    /// `zeta_n^k`, reduced modulo `Phi_n`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Cyclotomic::reduce(n, raw)
    }

    /// Reduce an arbitrary coefficient vector (indexing powers of `zeta_n`)
    /// modulo `Phi_n`.
    fn reduce(conductor: u64, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        // Remainder of raw modulo the monic integer polynomial phi.
        if raw.len() > deg {
            for k in (deg..raw.len()).rev() {
                let c = raw[k].clone();
                if !c.is_zero() {
                    for (m, pc) in phi.iter().enumerate().take(deg) {
                        let sub = &c * BigRational::from_integer(pc.clone());
                        let v = &raw[k - deg + m] - sub;
                        raw[k - deg + m] = v;
                    }
                    raw[k] = BigRational::zero();
                }
            }
        }
        raw.resize(deg, BigRational::zero());
        Cyclotomic {
            conductor,
            coeffs: raw,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u64) -> Cyclotomic {
        assert!(m % self.conductor == 0, "not a conductor multiple");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[i * step] = c.clone();
            }
        }
        Cyclotomic::reduce(m, raw)
    }

    fn unify(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if a.conductor == b.conductor {
            (a.clone(), b.clone())
        } else {
            let m = a.conductor.lcm(&b.conductor);
            (a.embed(m), b.embed(m))
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::unify(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::unify(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Cyclotomic {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x = -x.clone();
        }
        a
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, other);
        if a.is_zero() || b.is_zero() {
            return Cyclotomic::zero(a.conductor);
        }
        let mut raw = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let v = &raw[i + j] + x * y;
                raw[i + j] = v;
            }
        }
        Cyclotomic::reduce(a.conductor, raw)
    }

    pub fn scale(&self, r: &BigRational) -> Cyclotomic {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x *= r;
        }
        a
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`
    /// against `Phi_N` (which is irreducible, so every nonzero element is a
    /// unit).
    pub fn inv(&self) -> Result<Cyclotomic, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Cyclotomic {
                conductor: self.conductor,
                coeffs: {
                    let mut v = vec![BigRational::zero(); self.coeffs.len()];
                    v[0] = r.recip();
                    v
                },
            });
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.conductor)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        // Extended gcd of (self, phi): s*self + t*phi = gcd = constant.
        let trim = |v: &mut Vec<BigRational>| {
            while v.len() > 1 && v.last().unwrap().is_zero() {
                v.pop();
            }
        };
        let mut r0 = phi;
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            // divide r0 by r1: r0 = q*r1 + r
            let mut rem = r0.clone();
            let d1 = r1.len() - 1;
            let lead = r1[d1].clone();
            let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(d1)];
            if rem.len() > d1 {
                for k in (0..quot.len()).rev() {
                    let c = &rem[k + d1] / &lead;
                    if !c.is_zero() {
                        for (m, rc) in r1.iter().enumerate() {
                            let v = &rem[k + m] - &c * rc;
                            rem[k + m] = v;
                        }
                    }
                    quot[k] = c;
                }
            }
            trim(&mut rem);
            // s_{n+1} = s0 - q*s1
            let mut snext = s0.clone();
            snext.resize(snext.len().max(quot.len() + s1.len() - 1), BigRational::zero());
            for (i, qc) in quot.iter().enumerate() {
                if qc.is_zero() {
                    continue;
                }
                for (j, sc) in s1.iter().enumerate() {
                    let v = &snext[i + j] - qc * sc;
                    snext[i + j] = v;
                }
            }
            trim(&mut snext);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = snext;
        }
        // r0 is the (constant) gcd; inverse = s0 / r0.
        assert!(r0.len() == 1 && !r0[0].is_zero(), "Phi_N not coprime to element");
        let c = r0[0].recip();
        let inv: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        Ok(Cyclotomic::reduce(self.conductor, inv))
    }

    pub fn pow(&self, e: u64) -> Cyclotomic {
        let mut result = Cyclotomic::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Convert to a root of unity `(n, k)` if this element is one.
    pub fn to_root_of_unity(&self) -> Option<RootOfUnity> {
        match order_of(self) {
            Ok(Order::Finite(n)) => {
                let mut p = Cyclotomic::one();
                let z = Cyclotomic::root_of_unity(n, 1);
                for k in 0..n {
                    if p == *self {
                        return Some(RootOfUnity::new(n, k as i64));
                    }
                    p = p.mul(&z);
                }
                None
            }
            _ => None,
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Cyclotomic::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_cyclotomic(self))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_cyclotomic(self))
    }
}

/// Text encoding: rationals as-is, roots of unity as `z(n,k)`, anything else
/// as `cyc(N)[c0,c1,...]`.
pub fn render_cyclotomic(c: &Cyclotomic) -> String {
    if let Some(r) = c.as_rational() {
        return format!("{}", r);
    }
    if let Some(root) = c.to_root_of_unity() {
        return format!("z({},{})", root.order(), root.exponent());
    }
    let body: Vec<String> = c.coeffs.iter().map(|x| format!("{}", x)).collect();
    format!("cyc({})[{}]", c.conductor, body.join(","))
}

/// The q-number `(n)_q = 1 + q + ... + q^{n-1}`; `(0)_q = 0`.
pub fn qnum(n: u64, q: &Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(q.conductor());
    let mut p = Cyclotomic::one();
    for _ in 0..n {
        acc = acc.add(&p);
        p = p.mul(q);
    }
    acc
}

/// Least `n >= 1` with `q^n = 1`, or `Infinite` when `q` is not a root of
/// unity. The roots of unity inside `Q(zeta_N)` form the cyclic group of
/// order `lcm(2, N)`, so a single powering decides the infinite case and the
/// order is then refined by removing prime factors.
pub fn order_of(q: &Cyclotomic) -> Result<Order, ScalarError> {
    if q.is_zero() {
        return Err(ScalarError::ZeroOrder);
    }
    let cap = q.conductor().lcm(&2);
    if !q.pow(cap).is_one() {
        return Ok(Order::Infinite);
    }
    let mut ord = cap;
    let mut m = cap;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            while ord % p == 0 && q.pow(ord / p).is_one() {
                ord /= p;
            }
        }
        p += 1;
    }
    if m > 1 && ord % m == 0 && q.pow(ord / m).is_one() {
        ord /= m;
    }
    Ok(Order::Finite(ord))
}

/// A root of unity `zeta_n^k`, gcd-normalized so that `(order, exponent)` is
/// canonical: `gcd(order, exponent) = 1`, with `1` represented as `(1, 0)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as u64;
        if k == 0 {
            return RootOfUnity { order: 1, exponent: 0 };
        }
        let g = n.gcd(&k);
        RootOfUnity {
            order: n / g,
            exponent: k / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// Multiplicative order (canonical form makes this the stored order).
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let n = self.order.lcm(&other.order);
        let k = (self.exponent as i64) * ((n / self.order) as i64)
            + (other.exponent as i64) * ((n / other.order) as i64);
        RootOfUnity::new(n, k)
    }

    pub fn inv(&self) -> RootOfUnity {
        RootOfUnity::new(self.order, -(self.exponent as i64))
    }

    pub fn pow(&self, e: i64) -> RootOfUnity {
        let k = (self.exponent as i128) * (e as i128);
        RootOfUnity::new(self.order, (k.rem_euclid(self.order as i128)) as i64)
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.order, self.exponent as i64)
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z({},{})", self.order, self.exponent)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            write!(f, "1")
        } else if self.order == 2 {
            write!(f, "-1")
        } else {
            write!(f, "z({},{})", self.order, self.exponent)
        }
    }
}

/// Total order on roots of unity by `(order, exponent)`; used only to make
/// canonical forms and reports deterministic.
impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order, self.exponent).cmp(&(other.order, other.exponent))
    }
}
