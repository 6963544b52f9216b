//! Exact arithmetic in Q(√2, √3) for Gram entries with labels 2, 3, 4, 6.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `a + b√2` over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Q2 {
    a: BigRational,
    b: BigRational,
}

fn sign_q(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl Q2 {
    fn zero() -> Self {
        Q2 {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn sign(&self) -> i32 {
        let (sa, sb) = (sign_q(&self.a), sign_q(&self.b));
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        // Opposite signs: compare a² with 2b².
        let two = BigRational::from_integer(BigInt::from(2));
        match (&self.a * &self.a).cmp(&(&two * &self.b * &self.b)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    fn add(&self, o: &Q2) -> Q2 {
        Q2 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    fn sub(&self, o: &Q2) -> Q2 {
        Q2 {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    fn mul(&self, o: &Q2) -> Q2 {
        let two = BigRational::from_integer(BigInt::from(2));
        Q2 {
            a: &self.a * &o.a + two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn scale(&self, k: i64) -> Q2 {
        let k = BigRational::from_integer(BigInt::from(k));
        Q2 {
            a: &self.a * &k,
            b: &self.b * &k,
        }
    }
}

/// `p + q√3` with `p, q ∈ Q(√2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Q23 {
    p: Q2,
    q: Q2,
}

impl Q23 {
    pub fn zero() -> Self {
        Q23 { p: Q2::zero(), q: Q2::zero() }
    }

    pub fn one() -> Self {
        let mut x = Q23::zero();
        x.p.a = BigRational::from_integer(BigInt::from(1));
        x
    }

    /// `(a + b√2 + c√3 + d√6) / den`.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64, den: i64) -> Self {
        let r = |x: i64| BigRational::new(BigInt::from(x), BigInt::from(den));
        Q23 {
            p: Q2 { a: r(a), b: r(b) },
            q: Q2 { a: r(c), b: r(d) },
        }
    }

    /// `−cos(π/n)` for the labels with entries in this field.
    pub fn minus_cos_pi_over(n: u32) -> Option<Self> {
        Some(match n {
            2 => Q23::zero(),
            3 => Q23::from_parts(-1, 0, 0, 0, 2),
            4 => Q23::from_parts(0, -1, 0, 0, 2),
            6 => Q23::from_parts(0, 0, -1, 0, 2),
            _ => return None,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn sign(&self) -> i32 {
        let (sp, sq) = (self.p.sign(), self.q.sign());
        if sp == 0 || sq == 0 || sp == sq {
            return if sp != 0 { sp } else { sq };
        }
        // Opposite signs: compare p² with 3q².
        let d = self.p.mul(&self.p).sub(&self.q.mul(&self.q).scale(3));
        match d.sign() {
            1 => sp,
            -1 => sq,
            _ => 0,
        }
    }
}

impl Add for &Q23 {
    type Output = Q23;
    fn add(self, o: &Q23) -> Q23 {
        Q23 {
            p: self.p.add(&o.p),
            q: self.q.add(&o.q),
        }
    }
}

impl Sub for &Q23 {
    type Output = Q23;
    fn sub(self, o: &Q23) -> Q23 {
        Q23 {
            p: self.p.sub(&o.p),
            q: self.q.sub(&o.q),
        }
    }
}

impl Mul for &Q23 {
    type Output = Q23;
    fn mul(self, o: &Q23) -> Q23 {
        Q23 {
            p: self.p.mul(&o.p).add(&self.q.mul(&o.q).scale(3)),
            q: self.p.mul(&o.q).add(&self.q.mul(&o.p)),
        }
    }
}

impl Neg for &Q23 {
    type Output = Q23;
    fn neg(self) -> Q23 {
        &Q23::zero() - self
    }
}

/// (positive, negative, zero) counts of a symmetric matrix by congruence
/// elimination without division.
pub(crate) fn inertia(mut m: Vec<Vec<Q23>>) -> (usize, usize, usize) {
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    while !m.is_empty() {
        let k = m.len();
        let pivot = match (0..k).find(|&i| !m[i][i].is_zero()) {
            Some(i) => i,
            None => match (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero()) {
                // Row/column i += row/column j makes the diagonal 2·m_ij.
                Some((i, j)) => {
                    for c in 0..k {
                        let v = &m[i][c] + &m[j][c];
                        m[i][c] = v;
                    }
                    for r in 0..k {
                        let v = &m[r][i] + &m[r][j];
                        m[r][i] = v;
                    }
                    i
                }
                None => {
                    zero += k;
                    break;
                }
            },
        };
        let d = m[pivot][pivot].clone();
        match d.sign() {
            1 => pos += 1,
            _ => neg += 1,
        }
        // Schur complement scaled by d², which keeps every sign.
        let rest: Vec<usize> = (0..k).filter(|&i| i != pivot).collect();
        let next: Vec<Vec<Q23>> = rest
            .iter()
            .map(|&r| {
                rest.iter()
                    .map(|&c| {
                        let t = &(&d * &m[r][c]) - &(&m[r][pivot] * &m[pivot][c]);
                        &d * &t
                    })
                    .collect()
            })
            .collect();
        m = next;
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        // √2 − 1 > 0, √3 − √2 > 0, 5 − 2√6 > 0, 2√6 − 5 < 0
        assert_eq!(Q23::from_parts(-1, 1, 0, 0, 1).sign(), 1);
        assert_eq!(Q23::from_parts(0, -1, 1, 0, 1).sign(), 1);
        assert_eq!(Q23::from_parts(5, 0, 0, -2, 1).sign(), 1);
        assert_eq!(Q23::from_parts(-5, 0, 0, 2, 1).sign(), -1);
        assert_eq!(Q23::from_parts(0, 0, 0, 0, 1).sign(), 0);
        // (√2 + √3)² − 5 − 2√6 = 0
        let s = Q23::from_parts(0, 1, 1, 0, 1);
        let sq = &s * &s;
        assert!((&sq - &Q23::from_parts(5, 0, 0, 2, 1)).is_zero());
    }

    #[test]
    fn inertia_of_small_matrices() {
        let one = Q23::one();
        let z = Q23::zero();
        let m = vec![vec![z.clone(), one.clone()], vec![one.clone(), z.clone()]];
        assert_eq!(inertia(m), (1, 1, 0));
        let m = vec![vec![one.clone(), one.clone()], vec![one.clone(), one.clone()]];
        assert_eq!(inertia(m), (1, 0, 1));
    }
}
