//! Exact character tables: Dixon–Schneider over a prime field with lifting to
//! cyclotomic values, plus a Murnaghan–Nakayama path for symmetric groups.

use crate::cyclo::Cyc;
use crate::error::{Error, Result};
use crate::group::{Classes, FiniteGroup, GroupTag, Subgroup};
use crate::matrix::Q;
use crate::partition::{cycle_type, format_partition, mn_character, partitions};
use crate::{par, resource_bound};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

/// A class function, one value per conjugacy class.
pub type ClassFn = Vec<Cyc>;

#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub order: usize,
    pub exponent: u32,
    #[serde(skip)]
    pub classes: Classes,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    /// Class of the inverse of each class representative.
    #[serde(skip)]
    pub inverse_class: Vec<usize>,
    pub degrees: Vec<usize>,
    pub characters: Vec<ClassFn>,
    /// Row labels where a natural labelling exists (partitions for S_n).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn primitive_root(p: u64) -> u64 {
    let mut m = p - 1;
    let mut factors = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1)).unwrap()
}

/// Characteristic polynomial of a square matrix over F_p via Hessenberg reduction.
/// Coefficients are returned constant term first.
fn char_poly_mod(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let pivinv = inv_mod(h[m][m - 1], p);
        for j in m + 1..n {
            let u = h[j][m - 1] * pivinv % p;
            if u == 0 {
                continue;
            }
            for k in 0..n {
                h[j][k] = (h[j][k] + p - u * h[m][k] % p) % p;
            }
            for k in 0..n {
                h[k][m] = (h[k][m] + u * h[k][j]) % p;
            }
        }
    }
    // p_0 = 1; p_m = (x - h[m-1][m-1]) p_{m-1} - Σ_{i=1}^{m-1} h[m-1-i][m-1] * t_i * p_{m-1-i}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - c * h[m - 1][m - 1] % p) % p;
        }
        let mut t = 1u64;
        for i in 1..m {
            t = t * h[m - i][m - i - 1] % p;
            let coef = h[m - 1 - i][m - 1] * t % p;
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[m - 1 - i].iter().enumerate() {
                next[k] = (next[k] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Null space of a matrix over F_p (rows), returned as basis vectors.
fn null_space_mod(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let iv = inv_mod(m[r][c], p);
        for k in 0..cols {
            m[r][k] = m[r][k] * iv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for k in 0..cols {
                    m[i][k] = (m[i][k] + p - f * m[r][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    /// ⟨a, b⟩ = |G|⁻¹ Σ |C| a(C) conj(b(C)).
    pub fn inner(&self, a: &ClassFn, b: &ClassFn) -> Q {
        let mut s = Cyc::zero(1);
        for i in 0..self.num_classes() {
            let t = (&a[i] * &b[i].conj()).scale(Q::from_integer(self.class_sizes[i] as i64));
            s = &s + &t;
        }
        let v = s.scale(Q::new(1, self.order as i64));
        v.to_rational().expect("inner product of class functions with conjugation-closed values is rational")
    }

    /// Multiplicities of the irreducibles in a class function.
    pub fn decompose(&self, f: &ClassFn) -> Vec<Q> {
        self.characters.iter().map(|chi| self.inner(f, chi)).collect()
    }

    pub fn index_of(&self, f: &ClassFn) -> Option<usize> {
        self.characters.iter().position(|chi| chi == f)
    }

    pub fn trivial(&self) -> ClassFn {
        vec![Cyc::one(1); self.num_classes()]
    }

    /// Pointwise product of class functions.
    pub fn product(a: &ClassFn, b: &ClassFn) -> ClassFn {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    /// Value of a class function at a group element.
    pub fn value(&self, f: &ClassFn, element: usize) -> Cyc {
        f[self.classes.class_of[element]].clone()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("X{}", i + 1),
        }
    }
}

/// Compute the character table of a finite group.
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let bound = resource_bound();
    if g.order() > bound {
        return Err(Error::ResourceBound { order: g.order(), bound });
    }
    let classes = g.classes();
    let k = classes.len();
    let class_sizes = classes.sizes();
    let class_orders: Vec<usize> = (0..k).map(|i| g.element_order(classes.rep(i))).collect();
    let inverse_class: Vec<usize> = (0..k).map(|i| classes.class_of[g.inv(classes.rep(i))]).collect();
    let exponent = g.exponent() as u32;

    if let GroupTag::Symmetric { n, perms } = g.tag() {
        let parts = partitions(*n);
        let types: Vec<Vec<usize>> = (0..k).map(|i| cycle_type(&perms[classes.rep(i)])).collect();
        let characters: Vec<ClassFn> = parts.iter().map(|l| types.iter().map(|mu| Cyc::from_int(1, mn_character(l, mu))).collect()).collect();
        let degrees = characters.iter().map(|c| c[0].to_rational().unwrap().to_integer() as usize).collect();
        return Ok(CharacterTable {
            order: g.order(),
            exponent,
            classes,
            class_sizes,
            class_orders,
            inverse_class,
            degrees,
            characters,
            labels: Some(parts.iter().map(|p| format_partition(p)).collect()),
        });
    }

    let order = g.order() as u64;
    let e = exponent as u64;
    let mut p = (2 * order + 1).max(8 * (k * k) as u64).max(64);
    p += (e - p % e) % e + 1;
    while !is_prime(p) {
        p += e;
    }

    // class multiplication coefficients a[i][j][k]
    let coeff: Vec<Vec<u32>> = par::map_range(k, |kk| {
        let z = classes.rep(kk);
        let mut m = vec![0u32; k * k];
        for x in 0..g.order() {
            let y = g.mul(g.inv(x), z);
            m[classes.class_of[x] * k + classes.class_of[y]] += 1;
        }
        m
    });
    let a = |i: usize, j: usize, kk: usize| coeff[kk][i * k + j] as u64;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut omegas: Option<Vec<Vec<u64>>> = None;
    for _attempt in 0..64 {
        let r: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        let mat: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|kk| (0..k).fold(0u64, |acc, j| (acc + r[j] * a(i, j, kk)) % p)).collect()).collect();
        let cp = char_poly_mod(&mat, p);
        let roots: Vec<u64> = (0..p).filter(|&x| cp.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0).collect();
        if roots.len() != k {
            continue;
        }
        let mut vecs = Vec::with_capacity(k);
        let mut ok = true;
        for &lam in &roots {
            let shifted: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| (mat[i][j] + if i == j { p - lam } else { 0 }) % p).collect()).collect();
            let ns = null_space_mod(&shifted, p);
            if ns.len() != 1 || ns[0][0] == 0 {
                ok = false;
                break;
            }
            let s = inv_mod(ns[0][0], p);
            vecs.push(ns[0].iter().map(|&v| v * s % p).collect());
        }
        if ok {
            omegas = Some(vecs);
            break;
        }
    }
    let omegas = omegas.ok_or_else(|| Error::Inconsistent("Dixon-Schneider failed to split the class algebra".into()))?;

    let eps = pow_mod(primitive_root(p), (p - 1) / e, p);
    let mut characters: Vec<ClassFn> = Vec::with_capacity(k);
    let mut degrees = Vec::with_capacity(k);
    for w in &omegas {
        let s = (0..k).fold(0u64, |acc, i| (acc + w[i] * w[inverse_class[i]] % p * inv_mod(class_sizes[i] as u64 % p, p)) % p);
        let d2 = order % p * inv_mod(s, p) % p;
        let d = (1..=order).take_while(|d| d * d <= order).find(|d| d * d % p == d2).ok_or_else(|| Error::Inconsistent("no valid character degree".into()))?;
        degrees.push(d as usize);
        let chi_mod: Vec<u64> = (0..k).map(|i| w[i] * d % p * inv_mod(class_sizes[i] as u64 % p, p) % p).collect();
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            let gi = classes.rep(i);
            let o = class_orders[i] as u64;
            let step = e / o;
            let mut powers = vec![Q::zero(); e as usize];
            for l in 0..o {
                let mut acc = 0u64;
                let mut x = g.identity();
                for s in 0..o {
                    let val = chi_mod[classes.class_of[x]];
                    let ex = (e - (step * l * s) % e) % e;
                    acc = (acc + val * pow_mod(eps, ex, p)) % p;
                    x = g.mul(x, gi);
                }
                let m = acc * inv_mod(o % p, p) % p;
                if m > d {
                    return Err(Error::Inconsistent("eigenvalue multiplicity out of range".into()));
                }
                powers[(step * l) as usize] = Q::from_integer(m as i64);
            }
            row.push(Cyc::from_powers(exponent, &powers));
        }
        characters.push(row);
    }

    if degrees.iter().map(|d| d * d).sum::<usize>() != g.order() {
        return Err(Error::Inconsistent("degrees do not satisfy the sum-of-squares identity".into()));
    }

    // canonical row order: trivial first, then by degree, then by values
    let key = |i: usize| -> (bool, usize, Vec<Vec<Q>>) {
        let trivial = characters[i].iter().all(|v| *v == Cyc::one(1));
        let vals = characters[i].iter().map(|v| v.lift(exponent).coeffs().to_vec()).collect();
        (!trivial, degrees[i], vals)
    };
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by_key(|&i| key(i));
    let characters: Vec<ClassFn> = idx.iter().map(|&i| characters[i].clone()).collect();
    let degrees: Vec<usize> = idx.iter().map(|&i| degrees[i]).collect();

    Ok(CharacterTable { order: g.order(), exponent, classes, class_sizes, class_orders, inverse_class, degrees, characters, labels: None })
}

/// Restriction of a class function of G to a subgroup H.
pub fn restrict(gt: &CharacterTable, chi: &ClassFn, sub: &Subgroup, ht: &CharacterTable) -> ClassFn {
    (0..ht.num_classes()).map(|j| chi[gt.classes.class_of[sub.embedding[ht.classes.rep(j)]]].clone()).collect()
}

/// Induction of a class function of H to G by the Frobenius formula.
pub fn induce(g: &FiniteGroup, gt: &CharacterTable, sub: &Subgroup, ht: &CharacterTable, phi: &ClassFn) -> ClassFn {
    let pos: HashMap<usize, usize> = sub.embedding.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let h = sub.embedding.len() as i64;
    (0..gt.num_classes())
        .map(|c| {
            let rep = gt.classes.rep(c);
            let mut acc = Cyc::zero(1);
            for x in 0..g.order() {
                if let Some(&y) = pos.get(&g.conj(x, rep)) {
                    acc = &acc + &phi[ht.classes.class_of[y]];
                }
            }
            acc.scale(Q::new(1, h))
        })
        .collect()
}

/// Row and column orthogonality, checked exactly.
pub fn check_orthogonality(t: &CharacterTable) -> bool {
    let k = t.num_classes();
    for i in 0..k {
        for j in 0..k {
            let v = t.inner(&t.characters[i], &t.characters[j]);
            if v != if i == j { Q::one() } else { Q::zero() } {
                return false;
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            let mut s = Cyc::zero(1);
            for chi in &t.characters {
                s = &s + &(&chi[a] * &chi[b].conj());
            }
            let expect = if a == b { Q::new(t.order as i64, t.class_sizes[a] as i64) } else { Q::zero() };
            if s != Cyc::from_q(1, expect) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic(g: &FiniteGroup) -> FiniteGroup {
        g.clone().with_tag(GroupTag::Generic)
    }

    #[test]
    fn s3_generic_matches_mn() {
        let s3 = FiniteGroup::symmetric(3);
        let fast = character_table(&s3).unwrap();
        let slow = character_table(&generic(&s3)).unwrap();
        assert_eq!(slow.degrees, vec![1, 1, 2]);
        for chi in &fast.characters {
            assert!(slow.index_of(chi).is_some());
        }
        assert!(check_orthogonality(&slow));
    }

    #[test]
    fn cyclic_three() {
        let t = character_table(&FiniteGroup::cyclic(3)).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1]);
        assert!(t.characters.iter().any(|c| c[1] == Cyc::root(3, 1)));
        assert!(check_orthogonality(&t));
    }

    #[test]
    fn s4_and_s5_generic() {
        for n in [4, 5] {
            let g = FiniteGroup::symmetric(n);
            let fast = character_table(&g).unwrap();
            let slow = character_table(&generic(&g)).unwrap();
            assert_eq!(fast.num_classes(), slow.num_classes());
            for chi in &fast.characters {
                assert!(slow.index_of(chi).is_some());
            }
        }
    }

    #[test]
    fn induce_restrict_examples() {
        let s3 = FiniteGroup::symmetric(3);
        let t = character_table(&s3).unwrap();
        let triv_sub = s3.subgroup(&[s3.identity()]).unwrap();
        let tt = character_table(&triv_sub.group).unwrap();
        let reg = induce(&s3, &t, &triv_sub, &tt, &tt.trivial());
        assert_eq!(t.decompose(&reg), vec![Q::one(), Q::from_integer(2), Q::one()]);
        // 2-dim restricted to A3 is χ + χ²
        let a3: Vec<usize> = (0..6).filter(|&x| s3.element_order(x) != 2).collect();
        let a3 = s3.subgroup(&a3).unwrap();
        let at = character_table(&a3.group).unwrap();
        let res = restrict(&t, &t.characters[1], &a3, &at);
        assert_eq!(at.decompose(&res), vec![Q::zero(), Q::one(), Q::one()]);
        // sign of S2 induced is sign + 2-dim
        let s2: Vec<usize> = s3.closure(&[(0..6).find(|&x| s3.element_order(x) == 2).unwrap()]);
        let s2 = s3.subgroup(&s2).unwrap();
        let st = character_table(&s2.group).unwrap();
        let ind = induce(&s3, &t, &s2, &st, &st.characters[1]);
        assert_eq!(t.decompose(&ind), vec![Q::zero(), Q::one(), Q::one()]);
    }

    #[test]
    fn large_abelian() {
        for (a, b) in [(5, 5), (7, 7), (4, 8)] {
            let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(a), &FiniteGroup::cyclic(b));
            let t = character_table(&g).unwrap();
            assert_eq!(t.num_classes(), a * b);
            assert!(check_orthogonality(&t));
        }
    }
}
