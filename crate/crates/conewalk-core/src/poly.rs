//! Integer polynomials: characteristic polynomials of integer matrices,
//! exact factorization over Z (Berlekamp mod p, Hensel lifting, subset
//! recombination) and cyclotomic polynomial detection.
//!
//! Degrees here stay small (the lattices have rank at most ~16), so the
//! classical algorithms are used without the refinements needed for large
//! inputs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::Matrix;

/// Dense integer polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        IntPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly { coeffs: vec![c] }.trimmed()
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        IntPoly { coeffs }.trimmed()
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Division with remainder by a monic divisor; everything stays integral.
    pub fn divrem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = rem[i].clone();
            if q.is_zero() {
                continue;
            }
            quot[i - d] = q.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let delta = &q * c;
                rem[i - d + j] -= delta;
            }
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact quotient if `divisor` divides `self` with an integral quotient;
    /// `None` otherwise.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return None;
        }
        let lead = divisor.leading();
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            quot[i - dd] = q.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let delta = &q * c;
                rem[i - dd + j] -= delta;
            }
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> IntPoly {
        let mut result = IntPoly::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Largest `k` with `divisor^k | self`: returns the multiplicity and the
    /// quotient by `divisor^k`.
    pub fn strip_factor(&self, divisor: &IntPoly) -> (u32, IntPoly) {
        let mut mult = 0u32;
        let mut current = self.clone();
        loop {
            match current.div_exact(divisor) {
                Some(q) => {
                    mult += 1;
                    current = q;
                }
                None => break,
            }
            if current.is_zero() || current.degree() == Some(0) {
                break;
            }
        }
        (mult, current)
    }
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier
/// recurrence; the divisions are exact over the integers.
pub fn char_poly(a: &Matrix) -> IntPoly {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = Matrix::identity(n);
    for k in 1..=n {
        let am = a.mul(&m);
        let mut tr = BigInt::zero();
        for i in 0..n {
            tr += am.at(i, i);
        }
        let (c, rem) = (-tr).div_rem(&BigInt::from(k as i64));
        debug_assert!(rem.is_zero());
        coeffs[n - k] = c.clone();
        if k < n {
            m = am;
            for i in 0..n {
                let v = m.at(i, i) + &c;
                m.set(i, i, v);
            }
        }
    }
    IntPoly::new(coeffs)
}

/// Euler's totient by trial division.
pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// All `m` with `phi(m) = d`. Since `phi(m) >= sqrt(m/2)`, scanning up to
/// `2 d^2 + 1` is exhaustive.
pub fn cyclotomic_orders_of_degree(d: usize) -> Vec<u64> {
    let d = d as u64;
    (1..=2 * d * d + 1).filter(|&m| euler_phi(m) == d).collect()
}

/// The `m`-th cyclotomic polynomial, by dividing `x^m - 1` by the cyclotomic
/// polynomials of the proper divisors of `m`.
pub fn cyclotomic(m: u64) -> IntPoly {
    let mut memo: Vec<Option<IntPoly>> = vec![None; (m + 1) as usize];
    cyclotomic_memo(m, &mut memo)
}

fn cyclotomic_memo(m: u64, memo: &mut Vec<Option<IntPoly>>) -> IntPoly {
    if let Some(p) = &memo[m as usize] {
        return p.clone();
    }
    let mut xm_minus_1 = vec![BigInt::zero(); (m + 1) as usize];
    xm_minus_1[0] = BigInt::from(-1);
    xm_minus_1[m as usize] = BigInt::one();
    let mut result = IntPoly::new(xm_minus_1);
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_memo(d, memo);
            let (q, r) = result.divrem_monic(&phi_d);
            debug_assert!(r.is_zero());
            result = q;
        }
    }
    memo[m as usize] = Some(result.clone());
    result
}

/// If the (assumed irreducible, monic) polynomial is a cyclotomic polynomial,
/// returns its order `m`.
pub fn is_cyclotomic(q: &IntPoly) -> Option<u64> {
    let d = q.degree()?;
    if d == 0 || !q.is_monic() {
        return None;
    }
    cyclotomic_orders_of_degree(d)
        .into_iter()
        .find(|&m| &cyclotomic(m) == q)
}

/// Full factorization over Z: `f = content * prod(factor^multiplicity)` with
/// primitive factors of positive leading coefficient, sorted by degree then
/// coefficient sequence.
pub fn factor(f: &IntPoly) -> (BigInt, Vec<(IntPoly, u32)>) {
    if f.is_zero() {
        return (BigInt::zero(), vec![]);
    }
    let mut content = f.content();
    if f.leading().is_negative() {
        content = -content;
    }
    let mut work = f.primitive_part();
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();

    // powers of x split off first
    let trailing = work.coeffs.iter().take_while(|c| c.is_zero()).count();
    if trailing > 0 {
        factors.push((IntPoly::x(), trailing as u32));
        work = IntPoly::new(work.coeffs[trailing..].to_vec());
    }
    if work.degree() == Some(0) {
        factors.sort_by(factor_order);
        return (content, factors);
    }

    // square-free part, then multiplicities by repeated division
    let deriv = work.derivative();
    let g = gcd(&work, &deriv);
    let squarefree = work
        .div_exact(&g)
        .expect("gcd divides the polynomial")
        .primitive_part();
    for irreducible in factor_squarefree(&squarefree) {
        let (mult, _) = work.strip_factor(&irreducible);
        debug_assert!(mult >= 1);
        factors.push((irreducible, mult));
    }
    factors.sort_by(factor_order);
    (content, factors)
}

fn factor_order(a: &(IntPoly, u32), b: &(IntPoly, u32)) -> core::cmp::Ordering {
    a.0.coeffs
        .len()
        .cmp(&b.0.coeffs.len())
        .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
}

/// Primitive gcd via pseudo-remainders, normalized to a positive leading
/// coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let mut x = a.primitive_part();
    let mut y = b.primitive_part();
    while !y.is_zero() {
        let r = pseudo_rem(&x, &y).primitive_part();
        x = y;
        y = r;
    }
    x.primitive_part()
}

/// Pseudo-remainder of `a` by `b` (up to a power of `lc(b)`).
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.coeffs.len() - 1;
    let mut rem = a.clone();
    let lead = b.leading();
    while !rem.is_zero() && rem.coeffs.len() - 1 >= db {
        let shift = rem.coeffs.len() - 1 - db;
        let coef = rem.leading();
        rem = rem.scale(&lead);
        let mut sub = vec![BigInt::zero(); shift];
        sub.extend(b.coeffs.iter().map(|c| c * &coef * &lead));
        // subtract (coef * lead) * x^shift * b from lead * rem; the leading
        // terms cancel because lead * rem has top coefficient coef * lead
        let mut fixed = sub;
        for c in fixed.iter_mut() {
            *c = core::mem::take(c) / &lead;
        }
        rem = rem.sub(&IntPoly::new(fixed));
    }
    rem
}

/// Factors a primitive square-free polynomial of degree >= 1 into irreducible
/// primitive factors with positive leading coefficients.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let deg = f.degree().expect("nonzero");
    if deg == 1 {
        return vec![f.clone()];
    }
    let lead = f.leading();
    if lead.is_one() {
        return factor_squarefree_monic(f);
    }
    // classical monic reduction: F(y) = lc^(n-1) f(y / lc) is monic with
    // integer coefficients; factors of f are primitive parts of G_i(lc x)
    let n = deg;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (i, c) in coeffs.iter_mut().enumerate().take(n) {
        *c = f.coeff(i) * lead.pow((n - 1 - i) as u32);
    }
    coeffs[n] = BigInt::one();
    let monic = IntPoly::new(coeffs);
    debug_assert!(monic.is_monic());
    factor_squarefree_monic(&monic)
        .into_iter()
        .map(|g| {
            let mut acc = Vec::with_capacity(g.coeffs.len());
            for (i, c) in g.coeffs.iter().enumerate() {
                acc.push(c * lead.pow(i as u32));
            }
            IntPoly::new(acc).primitive_part()
        })
        .collect()
}

fn factor_squarefree_monic(f: &IntPoly) -> Vec<IntPoly> {
    let deg = f.degree().expect("nonzero");
    if deg == 1 {
        return vec![f.clone()];
    }
    // a prime where f stays square-free
    let p = PRIMES
        .iter()
        .copied()
        .find(|&p| {
            let fp = modp::reduce(f, p);
            if modp::deg(&fp) != deg {
                return false;
            }
            let d = modp::derivative(&fp, p);
            if d.is_empty() {
                return false;
            }
            modp::deg(&modp::gcd(fp, d, p)) == 0
        })
        .expect("square-free prime exists for a square-free integer polynomial");

    let modular = modp::berlekamp(modp::reduce(f, p), p);
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Hensel lift to a modulus beyond twice the Mignotte factor bound
    let norm2_sq: BigInt = f.coeffs.iter().map(|c| c * c).sum();
    let bound: BigInt = f.leading().abs() * BigInt::from(2).pow(deg as u32) * (norm2_sq.sqrt() + 1);
    let target = BigInt::from(2) * &bound + 1;
    let mut modulus = BigInt::from(p);
    let mut lift_steps = 0u32;
    while modulus < target {
        modulus = &modulus * &modulus;
        lift_steps += 1;
    }
    let lifted = hensel::lift_tree(f, &modular, p, lift_steps);
    recombine(f, lifted, &modulus)
}

/// Zassenhaus subset recombination of Hensel-lifted modular factors.
fn recombine(f: &IntPoly, lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut result = Vec::new();
    let mut remaining = f.clone();
    let mut pool: Vec<IntPoly> = lifted;
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        for combo in Combinations::new(pool.len(), size) {
            let mut cand = IntPoly::constant(remaining.leading());
            for &i in &combo {
                cand = mul_mod(&cand, &pool[i], modulus);
            }
            let cand = symmetric(&cand, modulus).primitive_part();
            if cand.degree() == Some(0) {
                continue;
            }
            if let Some(q) = remaining.div_exact(&cand) {
                result.push(cand);
                remaining = q;
                let mut next_pool = Vec::new();
                for (i, g) in pool.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        next_pool.push(g);
                    }
                }
                pool = next_pool;
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining.degree().unwrap_or(0) > 0 {
        result.push(remaining.primitive_part());
    }
    result
}

fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    let prod = a.mul(b);
    IntPoly::new(prod.coeffs.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        a.coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lexicographic k-subset iterator over `0..n`.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let current = if k <= n && k > 0 {
            Some((0..k).collect())
        } else {
            None
        };
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.clone()?;
        let k = current.len();
        let mut next = current.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] + 1 <= self.n - (k - i) {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(current)
    }
}

const PRIMES: [u64; 25] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101,
];

/// Polynomial arithmetic over F_p for word-sized p (deterministic Berlekamp).
mod modp {
    use super::*;

    pub type Poly = Vec<u64>; // low -> high, trimmed

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn deg(a: &Poly) -> usize {
        a.len().saturating_sub(1)
    }

    pub fn reduce(f: &IntPoly, p: u64) -> Poly {
        let pb = BigInt::from(p);
        trim(
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        a * b % p
    }

    fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a, p);
            }
            a = mulmod(a, a, p);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64, p: u64) -> u64 {
        powmod(a, p - 2, p)
    }

    pub fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
            }
        }
        trim(out)
    }

    pub fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    (x + p - y) % p
                })
                .collect(),
        )
    }

    pub fn divrem(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
        let db = deg(b);
        if a.len() <= db {
            return (vec![], a.clone());
        }
        let li = inv(b[db], p);
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - db];
        while r.len() > db + 1 || (r.len() == db + 1 && !r.is_empty()) {
            if r.len() < db + 1 {
                break;
            }
            let shift = r.len() - 1 - db;
            let coef = mulmod(*r.last().unwrap(), li, p);
            q[shift] = coef;
            if coef != 0 {
                for (j, &c) in b.iter().enumerate() {
                    let sub = mulmod(coef, c, p);
                    r[shift + j] = (r[shift + j] + p - sub) % p;
                }
            }
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn rem(a: &Poly, b: &Poly, p: u64) -> Poly {
        divrem(a, b, p).1
    }

    pub fn derivative(a: &Poly, p: u64) -> Poly {
        if a.len() <= 1 {
            return vec![];
        }
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
                .collect(),
        )
    }

    pub fn monic(a: &Poly, p: u64) -> Poly {
        if a.is_empty() {
            return vec![];
        }
        let li = inv(*a.last().unwrap(), p);
        a.iter().map(|&c| mulmod(c, li, p)).collect()
    }

    pub fn gcd(mut a: Poly, mut b: Poly, p: u64) -> Poly {
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            monic(&a, p)
        }
    }

    /// x^e mod f
    pub fn x_pow_mod(e: u64, f: &Poly, p: u64) -> Poly {
        let mut result = vec![1u64];
        let mut base = rem(&vec![0, 1], f, p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &base, p), f, p);
            }
            e >>= 1;
            if e > 0 {
                base = rem(&mul(&base, &base, p), f, p);
            }
        }
        result
    }

    /// Berlekamp factorization of a monic square-free polynomial mod p into
    /// monic irreducible factors. Deterministic: splits with every Berlekamp
    /// subalgebra basis vector and every residue in F_p.
    pub fn berlekamp(f: Poly, p: u64) -> Vec<Poly> {
        let f = monic(&f, p);
        let n = deg(&f);
        if n <= 1 {
            return vec![f];
        }
        let xp = x_pow_mod(p, &f, p);
        let mut power = vec![1u64];
        let mut q_cols: Vec<Poly> = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                power = rem(&mul(&power, &xp, p), &f, p);
            }
            q_cols.push(power.clone());
        }
        // kernel of (Q - I) over F_p
        let mut m = vec![vec![0u64; n]; n];
        for (i, col) in q_cols.iter().enumerate() {
            for (j, &c) in col.iter().enumerate() {
                m[j][i] = c;
            }
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = (row[i] + p - 1) % p;
        }
        let kernel = kernel_basis(m, p);
        let target = kernel.len();
        let mut factors = vec![f.clone()];
        if target == 1 {
            return factors;
        }
        for v in &kernel {
            if factors.len() == target {
                break;
            }
            let vp = trim(v.clone());
            if deg(&vp) == 0 {
                continue;
            }
            let mut next: Vec<Poly> = Vec::new();
            for g in &factors {
                if deg(g) <= 1 {
                    next.push(g.clone());
                    continue;
                }
                let mut pieces = vec![g.clone()];
                for c in 0..p {
                    if pieces.iter().all(|q| deg(q) <= 1) {
                        break;
                    }
                    let mut shifted = vp.clone();
                    shifted[0] = (shifted[0] + p - c % p) % p;
                    let shifted = trim(shifted);
                    if shifted.is_empty() {
                        continue;
                    }
                    let mut new_pieces = Vec::new();
                    for piece in pieces {
                        if deg(&piece) <= 1 {
                            new_pieces.push(piece);
                            continue;
                        }
                        let h = gcd(piece.clone(), shifted.clone(), p);
                        if deg(&h) > 0 && deg(&h) < deg(&piece) {
                            let q = divrem(&piece, &h, p).0;
                            new_pieces.push(h);
                            new_pieces.push(monic(&q, p));
                        } else {
                            new_pieces.push(piece);
                        }
                    }
                    pieces = new_pieces;
                }
                next.extend(pieces);
            }
            factors = next;
        }
        factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        factors
    }

    fn kernel_basis(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
        let n = m.len();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        let mut row = 0usize;
        for col in 0..n {
            if let Some(r) = (row..n).find(|&r| m[r][col] != 0) {
                m.swap(row, r);
                let li = inv(m[row][col], p);
                for c in 0..n {
                    m[row][c] = mulmod(m[row][c], li, p);
                }
                for r2 in 0..n {
                    if r2 != row && m[r2][col] != 0 {
                        let factor = m[r2][col];
                        for c in 0..n {
                            let sub = mulmod(factor, m[row][c], p);
                            m[r2][c] = (m[r2][c] + p - sub) % p;
                        }
                    }
                }
                pivot_of_col[col] = Some(row);
                row += 1;
            }
        }
        let mut basis = Vec::new();
        for col in 0..n {
            if pivot_of_col[col].is_some() {
                continue;
            }
            let mut v = vec![0u64; n];
            v[col] = 1;
            for c in 0..n {
                if let Some(r) = pivot_of_col[c] {
                    v[c] = (p - m[r][col] % p) % p;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Extended Euclid: (s, t) with s*a + t*b = 1 mod p; panics if the inputs
    /// share a factor.
    pub fn bezout(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (Poly, Poly) = (vec![1], vec![]);
        let (mut t0, mut t1): (Poly, Poly) = (vec![], vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            r0 = r1;
            r1 = r;
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            s0 = s1;
            s1 = s2;
            let t2 = sub(&t0, &mul(&q, &t1, p), p);
            t0 = t1;
            t1 = t2;
        }
        assert_eq!(deg(&r0), 0, "bezout of non-coprime polynomials");
        let li = inv(r0[0], p);
        (
            s0.iter().map(|&c| mulmod(c, li, p)).collect(),
            t0.iter().map(|&c| mulmod(c, li, p)).collect(),
        )
    }
}

/// Hensel lifting of a modular factorization to a large power of p.
mod hensel {
    use super::*;

    fn reduce(a: &IntPoly, m: &BigInt) -> IntPoly {
        IntPoly::new(a.coeffs().iter().map(|c| c.mod_floor(m)).collect())
    }

    fn from_modp(a: &[u64]) -> IntPoly {
        IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn mul_m(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
        reduce(&a.mul(b), m)
    }

    fn sub_m(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
        reduce(&a.sub(b), m)
    }

    fn add_m(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
        reduce(&a.add(b), m)
    }

    /// Division with remainder mod m by a monic divisor.
    fn divrem_m(a: &IntPoly, b: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
        assert!(b.is_monic());
        let db = b.coeffs().len() - 1;
        let mut r: Vec<BigInt> = a.coeffs().to_vec();
        if r.len() <= db {
            return (IntPoly::zero(), a.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            let coef = r[i].mod_floor(m);
            q[i - db] = coef.clone();
            if !coef.is_zero() {
                for (j, c) in b.coeffs().iter().enumerate() {
                    let sub = &coef * c;
                    r[i - db + j] -= sub;
                }
            }
            r[i] = BigInt::zero();
        }
        (reduce(&IntPoly::new(q), m), reduce(&IntPoly::new(r), m))
    }

    /// One quadratic Hensel step: factorization and Bezout data mod m become
    /// valid mod m^2. `h` stays monic.
    fn step(
        f: &IntPoly,
        g: &IntPoly,
        h: &IntPoly,
        s: &IntPoly,
        t: &IntPoly,
        m: &BigInt,
    ) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
        let m2 = m * m;
        let e = sub_m(&reduce(f, &m2), &mul_m(g, h, &m2), &m2);
        let (q, r) = divrem_m(&mul_m(s, &e, &m2), h, &m2);
        let g_new = add_m(&add_m(g, &mul_m(t, &e, &m2), &m2), &mul_m(&q, g, &m2), &m2);
        let h_new = add_m(h, &r, &m2);
        let b = sub_m(
            &add_m(&mul_m(s, &g_new, &m2), &mul_m(t, &h_new, &m2), &m2),
            &IntPoly::one(),
            &m2,
        );
        let (c, d) = divrem_m(&mul_m(s, &b, &m2), &h_new, &m2);
        let s_new = sub_m(s, &d, &m2);
        let t_new = sub_m(
            &sub_m(t, &mul_m(t, &b, &m2), &m2),
            &mul_m(&c, &g_new, &m2),
            &m2,
        );
        (g_new, h_new, s_new, t_new)
    }

    /// Lifts monic modular factors of monic `f` from mod p to mod p^(2^steps)
    /// over a balanced factor tree.
    pub fn lift_tree(f: &IntPoly, factors: &[Vec<u64>], p: u64, steps: u32) -> Vec<IntPoly> {
        let mut modulus = BigInt::from(p);
        for _ in 0..steps {
            modulus = &modulus * &modulus;
        }
        lift_rec(&reduce(f, &modulus), factors, p, steps)
    }

    fn lift_rec(f: &IntPoly, factors: &[Vec<u64>], p: u64, steps: u32) -> Vec<IntPoly> {
        if factors.len() == 1 {
            return alloc::vec![f.clone()];
        }
        let (left, right) = factors.split_at(factors.len() / 2);
        let mut g0 = alloc::vec![1u64];
        for q in left {
            g0 = modp::mul(&g0, q, p);
        }
        let mut h0 = alloc::vec![1u64];
        for q in right {
            h0 = modp::mul(&h0, q, p);
        }
        let (s0, t0) = modp::bezout(&g0, &h0, p);
        let mut g = from_modp(&g0);
        let mut h = from_modp(&h0);
        let mut s = from_modp(&s0);
        let mut t = from_modp(&t0);
        let mut m = BigInt::from(p);
        for _ in 0..steps {
            let (g2, h2, s2, t2) = step(f, &g, &h, &s, &t, &m);
            g = g2;
            h = h2;
            s = s2;
            t = t2;
            m = &m * &m;
        }
        let mut out = lift_rec(&g, left, p, steps);
        out.extend(lift_rec(&h, right, p, steps));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 2, 1]); // (x+1)^2
        let b = p(&[1, 1]);
        assert_eq!(b.mul(&b), a);
        let (q, r) = a.divrem_monic(&b);
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(a.eval(&BigInt::from(3)), BigInt::from(16));
        assert_eq!(a.derivative(), p(&[2, 2]));
    }

    #[test]
    fn div_exact_detects_non_divisors() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        assert_eq!(a.div_exact(&p(&[1, 1])).unwrap(), p(&[-1, 1]));
        assert!(a.div_exact(&p(&[2, 1])).is_none());
        assert_eq!(p(&[0, 0, 2]).div_exact(&p(&[0, 2])).unwrap(), p(&[0, 1]));
        assert!(p(&[0, 0, 1]).div_exact(&p(&[0, 2])).is_none());
    }

    #[test]
    fn gcd_of_polynomials() {
        let f = p(&[-1, 1]).mul(&p(&[1, 1])); // x^2 - 1
        let g = p(&[-1, 1]).mul(&p(&[2, 1])); // (x-1)(x+2)
        assert_eq!(gcd(&f, &g), p(&[-1, 1]));
        assert_eq!(gcd(&f, &IntPoly::zero()), f.primitive_part());
        // coprime
        assert_eq!(gcd(&p(&[1, 1]), &p(&[-1, 1])).degree(), Some(0));
    }

    #[test]
    fn char_poly_small_cases() {
        let swap = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(char_poly(&swap), p(&[-1, 0, 1]));
        let id3 = Matrix::identity(3);
        assert_eq!(char_poly(&id3), p(&[-1, 3, -3, 1]));
    }

    #[test]
    fn char_poly_matches_bareiss_evaluations() {
        // det(tI - A) by Bareiss elimination is an independent oracle
        let a = Matrix::from_i64_rows(&[&[2, -1, 0], &[3, 0, 5], &[1, 1, 1]]);
        let cp = char_poly(&a);
        for t in -3i64..=3 {
            let ti = Matrix::from_fn(3, 3, |i, j| {
                if i == j {
                    BigInt::from(t) - a.at(i, j)
                } else {
                    -a.at(i, j)
                }
            });
            assert_eq!(cp.eval(&BigInt::from(t)), ti.determinant());
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_and_orders() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(60), 16);
        assert_eq!(cyclotomic_orders_of_degree(1), alloc::vec![1, 2]);
        assert_eq!(cyclotomic_orders_of_degree(2), alloc::vec![3, 4, 6]);
    }

    #[test]
    fn cyclotomic_detection() {
        assert_eq!(is_cyclotomic(&p(&[1, -1, 1])), Some(6));
        assert_eq!(is_cyclotomic(&p(&[-1, 1])), Some(1));
        assert_eq!(is_cyclotomic(&p(&[1, 1])), Some(2));
        assert_eq!(is_cyclotomic(&p(&[1, -18, 1])), None);
        assert_eq!(is_cyclotomic(&p(&[-3, 0, 1])), None);
    }

    #[test]
    fn factor_simple_cases() {
        let (c, fs) = factor(&p(&[-1, 0, 1]));
        assert_eq!(c, BigInt::from(1));
        assert_eq!(fs, alloc::vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);

        let (c, fs) = factor(&p(&[-2, 0, 2]));
        assert_eq!(c, BigInt::from(2));
        assert_eq!(fs.len(), 2);

        let cube = p(&[-1, 1]).pow(3);
        let (_, fs) = factor(&cube);
        assert_eq!(fs, alloc::vec![(p(&[-1, 1]), 3)]);

        let (_, fs) = factor(&p(&[1, -18, 1]));
        assert_eq!(fs, alloc::vec![(p(&[1, -18, 1]), 1)]);
    }

    #[test]
    fn factor_needs_recombination() {
        // (x^2 - 2)(x^2 - 3) splits further modulo every prime, so subset
        // recombination has to reassemble the true factors
        let f = p(&[-2, 0, 1]).mul(&p(&[-3, 0, 1]));
        let (_, fs) = factor(&f);
        assert_eq!(fs, alloc::vec![(p(&[-3, 0, 1]), 1), (p(&[-2, 0, 1]), 1)]);

        let sd = p(&[1, 0, -10, 0, 1]); // min poly of sqrt(2) + sqrt(3)
        let (_, fs) = factor(&sd);
        assert_eq!(fs, alloc::vec![(sd.clone(), 1)]);
    }

    #[test]
    fn factor_x_to_the_sixth_minus_one() {
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let (_, fs) = factor(&f);
        let mut expected = alloc::vec![
            (cyclotomic(1), 1),
            (cyclotomic(2), 1),
            (cyclotomic(3), 1),
            (cyclotomic(6), 1),
        ];
        expected.sort_by(factor_order);
        assert_eq!(fs, expected);
    }

    #[test]
    fn factor_non_monic() {
        // 6x^2 + 5x + 1 = (2x + 1)(3x + 1)
        let (c, fs) = factor(&p(&[1, 5, 6]));
        assert_eq!(c, BigInt::from(1));
        assert_eq!(fs, alloc::vec![(p(&[1, 2]), 1), (p(&[1, 3]), 1)]);
    }

    #[test]
    fn factor_product_roundtrip() {
        let parts = [p(&[1, 1]), p(&[1, -18, 1]), p(&[1, 1, 1]), p(&[0, 1])];
        let mut f = IntPoly::one();
        for q in &parts {
            f = f.mul(q);
        }
        f = f.scale(&BigInt::from(-6));
        let (content, fs) = factor(&f);
        let mut rebuilt = IntPoly::constant(content);
        for (q, m) in &fs {
            rebuilt = rebuilt.mul(&q.pow(*m));
        }
        assert_eq!(rebuilt, f);
        assert_eq!(fs.len(), 4);
    }

    #[test]
    fn strip_factor_multiplicity() {
        let f = p(&[-1, 1]).pow(3).mul(&p(&[1, 1]));
        let (mult, rest) = f.strip_factor(&p(&[-1, 1]));
        assert_eq!(mult, 3);
        assert_eq!(rest, p(&[1, 1]));
    }
}
