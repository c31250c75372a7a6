use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExactError, Scalar};

/// A homogeneous polynomial with rational coefficients.
///
/// Terms are keyed by exponent vectors in lexicographic order with `x1`
/// most significant. Since every stored exponent vector has the same total
/// degree this coincides with graded lexicographic order, and the leading
/// term is the last entry of the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

/// All exponent vectors of total degree `degree` in `nvars` variables, in
/// ascending graded lexicographic order.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

impl HomogeneousPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Self {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars, 0);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// The coordinate function `x_i` (zero-based index).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    pub fn monomial(exponents: Vec<u32>, coeff: Scalar) -> Self {
        let degree = exponents.iter().sum();
        let mut p = Self::zero(exponents.len(), degree);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// `x_1^2 + ... + x_n^2`.
    pub fn norm_squared(nvars: usize) -> Self {
        let mut p = Self::zero(nvars, 2);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = 2;
            p.terms.insert(e, Scalar::one());
        }
        p
    }

    /// A linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents and dropping zeros. The degree is taken from the
    /// exponents; `degree` is only used when there are no terms.
    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self, ExactError>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Self::zero(nvars, degree);
        let mut seen_degree: Option<u32> = None;
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(ExactError::BadExponents(format!("{:?}", e)));
            }
            let d: u32 = e.iter().sum();
            match seen_degree {
                None => seen_degree = Some(d),
                Some(s) if s != d => return Err(ExactError::DegreeMismatch(s, d)),
                _ => {}
            }
            p.add_term(e, c);
        }
        if let Some(d) = seen_degree {
            if d != degree {
                return Err(ExactError::DegreeMismatch(degree, d));
            }
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Scalar {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// The largest term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_nvars(other)?;
        if self.degree != other.degree {
            return Err(ExactError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(self.sum(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_nvars(other)?;
        Ok(self.product(other))
    }

    fn check_nvars(&self, other: &Self) -> Result<(), ExactError> {
        if self.nvars != other.nvars {
            return Err(ExactError::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub(crate) fn sum(&self, other: &Self) -> Self {
        debug_assert!(self.is_zero() || other.is_zero() || self.degree == other.degree);
        let (mut acc, rest) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (e, c) in &rest.terms {
            acc.add_term(e.clone(), c.clone());
        }
        if acc.is_zero() {
            acc.degree = self.degree.max(other.degree);
        }
        acc
    }

    pub(crate) fn difference(&self, other: &Self) -> Self {
        let mut acc = self.clone();
        for (e, c) in &other.terms {
            acc.add_term(e.clone(), -c);
        }
        if acc.is_zero() {
            acc.degree = self.degree.max(other.degree);
        }
        acc
    }

    pub(crate) fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        Self {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.product(self);
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, lc)) if !lc.is_one() => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm_d, lc_d) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(Self::zero(
                self.nvars,
                self.degree.saturating_sub(divisor.degree),
            ));
        }
        if self.degree < divisor.degree {
            return None;
        }
        let lm_d = lm_d.clone();
        let inv_lc = lc_d.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars, self.degree - divisor.degree);
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            if lm_r.iter().zip(&lm_d).any(|(r, d)| r < d) {
                return None;
            }
            let e: Vec<u32> = lm_r.iter().zip(&lm_d).map(|(r, d)| r - d).collect();
            let c = lc_r * &inv_lc;
            for (ed, cd) in &divisor.terms {
                let m: Vec<u32> = ed.iter().zip(&e).map(|(a, b)| a + b).collect();
                rem.add_term(m, -(cd * &c));
            }
            quot.add_term(e, c);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Highest power of `x_k` appearing in any term.
    fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    fn smallest_variable(&self) -> Option<usize> {
        (0..self.nvars).find(|&k| self.terms.keys().any(|e| e[k] > 0))
    }

    /// Coefficients with respect to `x_k`: entry `i` is the (x_k-free)
    /// coefficient of `x_k^i`.
    fn coefficients_in(&self, k: usize) -> Vec<Self> {
        let top = self.degree_in(k);
        let mut out: Vec<Self> = (0..=top)
            .map(|i| Self::zero(self.nvars, self.degree - i))
            .collect();
        for (e, c) in &self.terms {
            let i = e[k] as usize;
            let mut e2 = e.clone();
            e2[k] = 0;
            out[i].terms.insert(e2, c.clone());
        }
        out
    }

    fn leading_coefficient_in(&self, k: usize) -> Self {
        let top = self.degree_in(k);
        let mut out = Self::zero(self.nvars, self.degree - top);
        for (e, c) in &self.terms {
            if e[k] == top {
                let mut e2 = e.clone();
                e2[k] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    fn variable_power(nvars: usize, k: usize, p: u32) -> Self {
        let mut e = vec![0; nvars];
        e[k] = p;
        Self::monomial(e, Scalar::one())
    }

    /// Restriction to the affine line `s -> a*s + b`, as a univariate
    /// polynomial (coefficients low to high).
    fn restrict_to_line(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.degree as usize + 1];
        for (e, c) in &self.terms {
            let mut t = vec![c.clone()];
            for (j, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = upoly_mul(&t, &[b[j].clone(), a[j].clone()]);
                }
            }
            for (i, x) in t.into_iter().enumerate() {
                out[i] += x;
            }
        }
        out
    }
}

fn upoly_trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn upoly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
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

fn upoly_rem(a: Vec<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
    let mut r = upoly_trim(a);
    let db = b.len() - 1;
    let inv = b[db].recip();
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let f = r[r.len() - 1].clone() * &inv;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= c * &f;
        }
        r = upoly_trim(r);
    }
    r
}

/// Monic univariate gcd over Q; inputs trimmed, any may be zero.
fn upoly_gcd(a: Vec<Scalar>, b: Vec<Scalar>) -> Vec<Scalar> {
    let (mut a, mut b) = (upoly_trim(a), upoly_trim(b));
    while !b.is_empty() {
        let r = upoly_rem(a, &b);
        a = b;
        b = r;
    }
    if let Some(lc) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lc;
        }
    }
    a
}

/// Certifies coprimality by restriction to random lines. A nonconstant
/// common factor `g` with `g(a) != 0` restricts to a nonconstant common
/// factor of the univariate restrictions, so a trivial univariate gcd is a
/// proof. Returns `false` when inconclusive.
fn coprime_by_restriction(ps: &[&HomogeneousPoly]) -> bool {
    let n = ps[0].nvars;
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d9cd);
    for _ in 0..3 {
        let a: Vec<Scalar> = (0..n).map(|_| super::int(rng.gen_range(-7..=7))).collect();
        let b: Vec<Scalar> = (0..n).map(|_| super::int(rng.gen_range(-7..=7))).collect();
        let mut g: Vec<Scalar> = Vec::new();
        let mut top_nonzero = false;
        for p in ps {
            let r = p.restrict_to_line(&a, &b);
            if r.len() == p.degree as usize + 1 && !r[p.degree as usize].is_zero() {
                top_nonzero = true;
            }
            g = upoly_gcd(g, r);
            if g.len() == 1 && top_nonzero {
                return true;
            }
        }
    }
    false
}

fn content_in(coeffs: &[HomogeneousPoly]) -> HomogeneousPoly {
    let mut g: Option<HomogeneousPoly> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let next = match g {
            None => c.monic(),
            Some(prev) => gcd_rec(&prev, c),
        };
        if next.degree == 0 {
            return HomogeneousPoly::one(c.nvars);
        }
        g = Some(next);
    }
    g.expect("content of the zero polynomial")
}

/// Pseudo-remainder of `f` by `g` with respect to `x_k`.
fn pseudo_rem(f: &HomogeneousPoly, g: &HomogeneousPoly, k: usize) -> HomogeneousPoly {
    let dg = g.degree_in(k);
    let lcg = g.leading_coefficient_in(k);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(k) >= dg {
        let shift = r.degree_in(k) - dg;
        let lcr = r.leading_coefficient_in(k);
        let t = lcr
            .product(&HomogeneousPoly::variable_power(r.nvars, k, shift))
            .product(g);
        r = lcg.product(&r).difference(&t);
    }
    r
}

fn primitive_part_in(p: &HomogeneousPoly, k: usize) -> HomogeneousPoly {
    let c = content_in(&p.coefficients_in(k));
    p.div_exact(&c).expect("content divides").monic()
}

/// Monic gcd via recursive primitive remainder sequences, one variable at
/// a time.
fn gcd_rec(a: &HomogeneousPoly, b: &HomogeneousPoly) -> HomogeneousPoly {
    let nvars = a.nvars;
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.degree == 0 || b.degree == 0 {
        return HomogeneousPoly::one(nvars);
    }
    let k = match (a.smallest_variable(), b.smallest_variable()) {
        (Some(x), Some(y)) => x.min(y),
        _ => return HomogeneousPoly::one(nvars),
    };
    let (da, db) = (a.degree_in(k), b.degree_in(k));
    if da == 0 {
        return gcd_rec(a, &content_in(&b.coefficients_in(k)));
    }
    if db == 0 {
        return gcd_rec(&content_in(&a.coefficients_in(k)), b);
    }
    let ca = content_in(&a.coefficients_in(k));
    let cb = content_in(&b.coefficients_in(k));
    let c = gcd_rec(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if f.degree_in(k) < g.degree_in(k) {
        core::mem::swap(&mut f, &mut g);
    }
    let g = loop {
        let r = pseudo_rem(&f, &g, k);
        if r.is_zero() {
            break primitive_part_in(&g, k);
        }
        if r.degree_in(k) == 0 {
            break HomogeneousPoly::one(nvars);
        }
        f = g;
        g = primitive_part_in(&r, k);
    };
    c.product(&g).monic()
}

/// The monic gcd of a list of polynomials (leading coefficient 1 under
/// graded lexicographic order). Returns the constant 1 exactly when the
/// inputs are relatively prime.
pub fn poly_content_gcd(ps: &[HomogeneousPoly]) -> Result<HomogeneousPoly, ExactError> {
    let nonzero: Vec<&HomogeneousPoly> = ps.iter().filter(|p| !p.is_zero()).collect();
    let first = *nonzero.first().ok_or(ExactError::AllZero)?;
    for p in ps {
        first.check_nvars(p)?;
    }
    let nvars = first.nvars;
    if nonzero.len() == 1 {
        return Ok(first.monic());
    }
    if nonzero.iter().any(|p| p.degree == 0) || coprime_by_restriction(&nonzero) {
        return Ok(HomogeneousPoly::one(nvars));
    }
    let mut g = first.monic();
    for p in &nonzero[1..] {
        g = gcd_rec(&g, p);
        if g.degree == 0 {
            break;
        }
    }
    Ok(g)
}
