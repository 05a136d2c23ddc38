//! Exact integer linear algebra: fraction-free determinants, characteristic
//! polynomials and Sturm root counting over ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant by Bareiss fraction-free elimination. `rows` is square.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Coefficients `c₀, …, c_n` (low to high, monic) of `det(x·I − A)`, by the
/// Faddeev–LeVerrier recursion. Every division is exact over ℤ.
pub fn characteristic_polynomial(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = rows.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for t in 0..n {
                    if !rows[i][t].is_zero() && !m[t][j].is_zero() {
                        acc += &rows[i][t] * &m[t][j];
                    }
                }
                if i == j {
                    acc += &coeffs[n - k + 1];
                }
                next[i][j] = acc;
            }
        }
        m = next;
        // c_{n−k} = −tr(A·M_k)/k
        let mut tr = BigInt::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &rows[i][t] * &m[t][i];
            }
        }
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    coeffs
}

/// Dense univariate polynomial over ℚ, coefficients low to high, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn from_integers(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|v| BigRational::from_integer(v.clone())).collect())
    }

    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect())
    }

    /// Remainder of Euclidean division by a nonzero `d`.
    pub fn rem(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dl = d.lead().clone();
        let dd = d.degree();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = r.last().expect("nonempty") / &dl;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|v| v.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    fn monic(&self) -> Poly {
        let l = self.lead().clone();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn sign_at_zero(&self) -> i8 {
        self.0.first().map_or(0, sign_of)
    }

    fn sign_at_pos_inf(&self) -> i8 {
        self.0.last().map_or(0, sign_of)
    }

    fn sign_at_neg_inf(&self) -> i8 {
        let s = self.sign_at_pos_inf();
        if self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// Sturm chain `p, p', −rem(p, p'), …`.
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone()];
        if self.is_zero() {
            return chain;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = chain.last().expect("nonempty").rem(&next);
            chain.push(next);
            next = Poly(r.0.into_iter().map(|c| -c).collect());
        }
        chain
    }

    /// Distinct real roots in `(−∞, 0)` and `(0, ∞)`. Requires `p(0) ≠ 0`.
    pub fn distinct_roots_by_sign(&self) -> (usize, usize) {
        assert!(self.sign_at_zero() != 0, "zero is a root");
        let chain = self.sturm_chain();
        let v = |f: fn(&Poly) -> i8| variations(chain.iter().map(f));
        let (neg_inf, zero, pos_inf) = (v(Poly::sign_at_neg_inf), v(Poly::sign_at_zero), v(Poly::sign_at_pos_inf));
        (neg_inf - zero, zero - pos_inf)
    }

    /// Real roots in `(−∞, 0)` and `(0, ∞)` counted with multiplicity: the
    /// roots of `g_{k+1} = gcd(g_k, g_k')` are those of `g_k` of
    /// multiplicity above one, so summing distinct counts along the chain
    /// recovers multiplicities.
    pub fn roots_by_sign(&self) -> (usize, usize) {
        let mut g = self.clone();
        let (mut neg, mut pos) = (0, 0);
        while g.degree() > 0 {
            let (n, p) = g.distinct_roots_by_sign();
            neg += n;
            pos += p;
            g = g.gcd(&g.derivative());
        }
        (neg, pos)
    }
}

fn sign_of(c: &BigRational) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[]), BigInt::one());
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&big(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), BigInt::from(4));
        assert_eq!(determinant(&big(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(determinant(&big(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])), BigInt::from(-1));
    }

    #[test]
    fn characteristic_polynomials() {
        // x² − 1
        assert_eq!(characteristic_polynomial(&big(&[&[0, 1], &[1, 0]])), vec![(-1).into(), 0.into(), 1.into()]);
        // (x − 1)²(x + 1) = x³ − x² − x + 1
        let c = characteristic_polynomial(&big(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]));
        assert_eq!(c, vec![1.into(), (-1).into(), (-1).into(), 1.into()]);
    }

    #[test]
    fn root_counts_respect_multiplicity() {
        let p = Poly::from_integers(&[1.into(), (-1).into(), (-1).into(), 1.into()]);
        assert_eq!(p.distinct_roots_by_sign(), (1, 1));
        assert_eq!(p.roots_by_sign(), (1, 2));
        // (x − 2)³(x + 3)²
        let roots: [i64; 5] = [2, 2, 2, -3, -3];
        let mut c = vec![BigInt::one()];
        for r in roots {
            let mut next = vec![BigInt::zero(); c.len() + 1];
            for (i, v) in c.iter().enumerate() {
                next[i + 1] += v;
                next[i] -= v * BigInt::from(r);
            }
            c = next;
        }
        assert_eq!(Poly::from_integers(&c).roots_by_sign(), (2, 3));
    }
}
