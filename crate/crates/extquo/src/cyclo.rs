//! Exact arithmetic in cyclotomic fields Q(ζ_n): rational coefficient vectors in the
//! power basis, reduced modulo the n-th cyclotomic polynomial.

use crate::matrix::Q;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd] / lead;
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// The n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_divide_exact(&p, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// Element of Q(ζ_n).
#[derive(Clone)]
pub struct Cyc {
    n: u32,
    c: Vec<Q>,
}

fn reduce(n: u32, mut p: Vec<Q>) -> Vec<Q> {
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    for k in (d..p.len()).rev() {
        let c = p[k];
        if c.is_zero() {
            continue;
        }
        for (i, &f) in phi.iter().enumerate() {
            p[k - d + i] -= c * f;
        }
    }
    p.truncate(d);
    p.resize(d, Q::zero());
    p
}

impl Cyc {
    pub fn zero(n: u32) -> Self {
        Cyc { n, c: vec![Q::zero(); euler_phi(n)] }
    }

    pub fn from_q(n: u32, q: Q) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = q;
        z
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        Self::from_q(n, Q::from_integer(v))
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    /// ζ_n^k.
    pub fn root(n: u32, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut p = vec![Q::zero(); k + 1];
        p[k] = Q::one();
        Cyc { n, c: reduce(n, p) }
    }

    /// Σ_k m_k ζ_n^k for an arbitrary coefficient list indexed by exponent.
    pub fn from_powers(n: u32, powers: &[Q]) -> Self {
        Cyc { n, c: reduce(n, powers.to_vec()) }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    /// Embed into Q(ζ_m) for a multiple m of n.
    pub fn lift(&self, m: u32) -> Cyc {
        if m == self.n {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.n), "cannot lift Q(ζ_{}) into Q(ζ_{})", self.n, m);
        let step = (m / self.n) as usize;
        let mut p = vec![Q::zero(); (self.c.len().max(1) - 1) * step + 1];
        for (k, &v) in self.c.iter().enumerate() {
            p[k * step] = v;
        }
        Cyc { n: m, c: reduce(m, p) }
    }

    fn common(a: &Cyc, b: &Cyc) -> (Cyc, Cyc) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = a.n.lcm(&b.n);
        (a.lift(m), b.lift(m))
    }

    pub fn conj(&self) -> Cyc {
        let n = self.n as usize;
        let mut p = vec![Q::zero(); n.max(1)];
        for (k, &v) in self.c.iter().enumerate() {
            p[(n - k) % n] += v;
        }
        Cyc { n: self.n, c: reduce(self.n, p) }
    }

    pub fn scale(&self, q: Q) -> Cyc {
        Cyc { n: self.n, c: self.c.iter().map(|&x| x * q).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn to_rational(&self) -> Option<Q> {
        if self.c.iter().skip(1).all(|x| x.is_zero()) {
            Some(self.c.first().copied().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }

    /// Galois image under ζ ↦ ζ^k (k coprime to n).
    pub fn galois(&self, k: i64) -> Cyc {
        let n = self.n as i64;
        let mut p = vec![Q::zero(); n as usize];
        for (e, &v) in self.c.iter().enumerate() {
            p[((e as i64) * k).rem_euclid(n) as usize] += v;
        }
        Cyc { n: self.n, c: reduce(self.n, p) }
    }

    /// Smallest m dividing n such that the value lies in Q(ζ_m) (canonical field for display).
    pub fn minimal_order(&self) -> u32 {
        let mut divisors: Vec<u32> = (1..=self.n).filter(|d| self.n.is_multiple_of(*d)).collect();
        divisors.sort();
        for d in divisors {
            // the value lies in Q(ζ_d) iff it is fixed by all ζ ↦ ζ^k with k ≡ 1 mod d
            let fixed = (1..self.n as i64).filter(|k| k.gcd(&(self.n as i64)) == 1 && (k - 1) % d as i64 == 0).all(|k| self.galois(k) == *self);
            if fixed {
                return d;
            }
        }
        self.n
    }

    /// Rewrite over Q(ζ_m) where m = minimal_order().
    pub fn normalized(&self) -> Cyc {
        let m = self.minimal_order();
        if m == self.n {
            return self.clone();
        }
        // solve for coefficients in Q(ζ_m) by matching the lift
        let d = euler_phi(m);
        let lifts: Vec<Cyc> = (0..d).map(|k| Cyc::root(m, k as i64).lift(self.n)).collect();
        let mut mat = crate::matrix::QMat::zeros(self.c.len(), d);
        for (j, l) in lifts.iter().enumerate() {
            for i in 0..self.c.len() {
                mat.set(i, j, l.c[i]);
            }
        }
        let x = mat.solve(&self.c).expect("value lies in the subfield");
        Cyc { n: m, c: x }
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyc::common(self, other);
        a.c == b.c
    }
}
impl Eq for Cyc {}

impl Add for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        let (a, b) = Cyc::common(self, rhs);
        Cyc { n: a.n, c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        let (a, b) = Cyc::common(self, rhs);
        Cyc { n: a.n, c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect() }
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        let (a, b) = Cyc::common(self, rhs);
        if a.c.len() == 1 {
            return Cyc { n: a.n, c: vec![a.c[0] * b.c[0]] };
        }
        let mut p = vec![Q::zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                p[i + j] += x * y;
            }
        }
        Cyc { n: a.n, c: reduce(a.n, p) }
    }
}

fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.normalized();
        if let Some(q) = v.to_rational() {
            return write!(f, "{}", fmt_q(&q));
        }
        let mut out = String::new();
        for (k, c) in v.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Q::zero();
            let mag = if neg { -c } else { *c };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let term = match k {
                0 => fmt_q(&mag),
                _ => {
                    let z = if k == 1 { format!("E({})", v.n) } else { format!("E({})^{}", v.n, k) };
                    if mag.is_one() {
                        z
                    } else {
                        format!("{}*{}", fmt_q(&mag), z)
                    }
                }
            };
            out.push_str(&term);
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Cyc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let v = self.normalized();
        let mut st = s.serialize_struct("Cyc", 2)?;
        st.serialize_field("n", &v.n)?;
        let coeffs: Vec<String> = v.c.iter().map(fmt_q).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn arithmetic() {
        let w = Cyc::root(3, 1);
        let w2 = &w * &w;
        assert_eq!(w2, Cyc::root(3, 2));
        let s = &(&Cyc::one(3) + &w) + &w2;
        assert!(s.is_zero());
        assert_eq!(w.conj(), Cyc::root(3, 2));
        // ζ_6 = -ζ_3^2
        assert_eq!(Cyc::root(6, 1), -&Cyc::root(3, 2));
        assert_eq!(Cyc::root(4, 1).lift(12), Cyc::root(12, 3));
        assert_eq!(Cyc::root(12, 4).minimal_order(), 3);
        assert_eq!(format!("{}", Cyc::root(12, 4)), "E(3)");
        assert_eq!(format!("{}", &Cyc::root(3, 1) + &Cyc::root(3, 2)), "-1");
    }
}
