//! Exact points of a complex torus, Weyl group actions and fixed loci.
//!
//! A coordinate is ζ·q^e with ζ = exp(2πi·phase) a root of unity and q a formal
//! transcendental, so equality is decidable coordinate-wise.

use crate::error::{Error, Result};
use crate::matrix::{hermite_basis, smith_normal_form, IMat, Q};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TorusCoordinate {
    pub phase: Q,
    pub qexp: Q,
}

fn frac(x: Q) -> Q {
    x - x.floor()
}

impl TorusCoordinate {
    pub fn new(phase: Q, qexp: Q) -> Self {
        TorusCoordinate { phase: frac(phase), qexp }
    }

    pub fn one() -> Self {
        Self::new(Q::zero(), Q::zero())
    }

    pub fn root_of_unity(p: i64, n: i64) -> Self {
        Self::new(Q::new(p, n), Q::zero())
    }

    /// q^e.
    pub fn q_power(e: Q) -> Self {
        Self::new(Q::zero(), e)
    }

    /// q^{1/2}.
    pub fn sqrt_q() -> Self {
        Self::q_power(Q::new(1, 2))
    }

    pub fn is_one(&self) -> bool {
        self.phase.is_zero() && self.qexp.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.phase + o.phase, self.qexp + o.qexp)
    }

    pub fn inv(&self) -> Self {
        Self::new(-self.phase, -self.qexp)
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(self.phase * Q::from(k), self.qexp * Q::from(k))
    }

    /// Multiplicative order of the root-of-unity part.
    pub fn phase_order(&self) -> i64 {
        *self.phase.denom()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse(format!("bad torus coordinate {s:?}; expected p/q@k/2"));
        let (ph, qe) = match s.split_once('@') {
            Some((a, b)) => (a, b),
            None => (s, "0"),
        };
        Ok(Self::new(parse_q(ph).ok_or_else(err)?, parse_q(qe).ok_or_else(err)?))
    }
}

fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return Some(Q::zero());
    }
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            (b != 0).then(|| Q::new(a, b))
        }
        None => s.parse::<i64>().ok().map(Q::from),
    }
}

impl fmt::Display for TorusCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}@", self.phase.numer(), self.phase.denom())?;
        let twice = self.qexp * Q::from(2);
        if twice.is_integer() {
            write!(f, "{}/2", twice.numer())
        } else {
            write!(f, "{}/{}", self.qexp.numer(), self.qexp.denom())
        }
    }
}

/// A point of T = X_* ⊗ C^×, coordinates in the standard basis of X_*.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TorusPoint {
    pub coords: Vec<TorusCoordinate>,
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl TorusPoint {
    pub fn identity(rank: usize) -> Self {
        TorusPoint { coords: vec![TorusCoordinate::one(); rank] }
    }

    pub fn from_phases(ph: &[Q]) -> Self {
        TorusPoint { coords: ph.iter().map(|&p| TorusCoordinate::new(p, Q::zero())).collect() }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let coords = s.split(',').map(TorusCoordinate::parse).collect::<Result<Vec<_>>>()?;
        Ok(TorusPoint { coords })
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn phases(&self) -> Vec<Q> {
        self.coords.iter().map(|c| c.phase).collect()
    }

    pub fn qexps(&self) -> Vec<Q> {
        self.coords.iter().map(|c| c.qexp).collect()
    }

    pub fn from_parts(phase: &[Q], qexp: &[Q]) -> Self {
        TorusPoint { coords: phase.iter().zip(qexp).map(|(&p, &e)| TorusCoordinate::new(p, e)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| c.is_one())
    }

    pub fn is_finite_order(&self) -> bool {
        self.coords.iter().all(|c| c.qexp.is_zero())
    }

    /// Phase part only (the "unitary" factor).
    pub fn unitary_part(&self) -> Self {
        TorusPoint { coords: self.coords.iter().map(|c| TorusCoordinate::new(c.phase, Q::zero())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        TorusPoint { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn inv(&self) -> Self {
        TorusPoint { coords: self.coords.iter().map(|c| c.inv()).collect() }
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, got: self.rank() });
        }
        Ok(())
    }

    /// χ(t) for a character χ ∈ X^*.
    pub fn evaluate(&self, chi: &[i64]) -> TorusCoordinate {
        let mut ph = Q::zero();
        let mut qe = Q::zero();
        for (c, &k) in self.coords.iter().zip(chi) {
            ph += c.phase * Q::from(k);
            qe += c.qexp * Q::from(k);
        }
        TorusCoordinate::new(ph, qe)
    }

    /// Order of the finite-order part as an element of the torus.
    pub fn phase_order(&self) -> i64 {
        self.coords.iter().fold(1, |acc, c| acc.lcm(c.phase.denom()))
    }
}

/// The image λ(z) of a cocharacter λ ∈ X_* at z.
pub fn cocharacter_point(lambda: &[i64], z: TorusCoordinate) -> TorusPoint {
    TorusPoint { coords: lambda.iter().map(|&k| z.pow(k)).collect() }
}

/// Action of an element of GL(X_*) on points.
pub fn act_matrix(b: &IMat, t: &TorusPoint) -> TorusPoint {
    let ph = b.mul_qvec(&t.phases());
    let qe = b.mul_qvec(&t.qexps());
    TorusPoint::from_parts(&ph, &qe)
}

/// Lexicographically smallest point in the orbit of t under a set of X_* matrices.
pub fn canonical_form<'a, I: IntoIterator<Item = &'a IMat>>(mats: I, t: &TorusPoint) -> TorusPoint {
    mats.into_iter().map(|b| act_matrix(b, t)).min().unwrap_or_else(|| t.clone())
}

/// A translated subtorus base·(L ⊗ C^×) with L a saturated sublattice of X_*.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubtorusCoset {
    pub base: TorusPoint,
    /// Echelon basis of L (as column vectors).
    pub lattice: Vec<Vec<i64>>,
    pub dim: usize,
}

impl SubtorusCoset {
    pub fn new(base: &TorusPoint, lattice: &[Vec<i64>]) -> Self {
        let n = base.rank();
        let lattice = hermite_basis(n, lattice);
        let dim = lattice.len();
        let base = lex_min_in_coset(base, &lattice);
        SubtorusCoset { base, lattice, dim }
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    fn complement(&self) -> IMat {
        // rows of U beyond dim cut out L ⊗ R
        let n = self.rank();
        if self.dim == 0 {
            return IMat::identity(n);
        }
        let l = IMat::from_cols(n, &self.lattice);
        let (u, _, _) = smith_normal_form(&l);
        let rows: Vec<Vec<i64>> = (self.dim..n).map(|i| (0..n).map(|j| u.get(i, j)).collect()).collect();
        if rows.is_empty() {
            IMat::zeros(0, n)
        } else {
            IMat::from_rows(&rows)
        }
    }

    pub fn contains(&self, p: &TorusPoint) -> bool {
        if p.rank() != self.rank() {
            return false;
        }
        let d = p.mul(&self.base.inv());
        let c = self.complement();
        c.mul_qvec(&d.phases()).iter().all(|x| x.is_integer()) && c.mul_qvec(&d.qexps()).iter().all(|x| x.is_zero())
    }

    /// base · Π_j l_j(z_j) for the given coordinates along the lattice basis.
    pub fn point_at(&self, z: &[TorusCoordinate]) -> TorusPoint {
        let mut p = self.base.clone();
        for (l, &zj) in self.lattice.iter().zip(z) {
            p = p.mul(&cocharacter_point(l, zj));
        }
        p
    }

    /// A deterministic pseudo-generic point: phases 1/p for distinct large primes.
    pub fn generic_point(&self) -> TorusPoint {
        const PRIMES: [i64; 6] = [1009, 1013, 1019, 1021, 1031, 1033];
        let z: Vec<TorusCoordinate> = (0..self.dim).map(|j| TorusCoordinate::root_of_unity(1, PRIMES[j % PRIMES.len()])).collect();
        self.point_at(&z)
    }

    pub fn act(&self, b: &IMat) -> SubtorusCoset {
        let base = act_matrix(b, &self.base);
        let lat: Vec<Vec<i64>> = self.lattice.iter().map(|l| b.mul_vec(l)).collect();
        SubtorusCoset::new(&base, &lat)
    }
}

/// Lexicographically smallest representative of base·(L ⊗ R) mod X_* (phases only;
/// the q-exponent is moved along L to make its pivot coordinates vanish).
fn lex_min_in_coset(base: &TorusPoint, lattice: &[Vec<i64>]) -> TorusPoint {
    let n = base.rank();
    let pivots: Vec<usize> = lattice.iter().map(|l| l.iter().position(|&x| x != 0).unwrap()).collect();
    // q-part: subtract the real combination that kills pivot coordinates
    let mut qe = base.qexps();
    for (l, &p) in lattice.iter().zip(&pivots) {
        let s = qe[p] / Q::from(l[p]);
        for i in 0..n {
            qe[i] -= s * Q::from(l[i]);
        }
    }
    let mut best: Option<Vec<Q>> = None;
    fn rec(ph: Vec<Q>, k: usize, lattice: &[Vec<i64>], pivots: &[usize], best: &mut Option<Vec<Q>>) {
        if k == lattice.len() {
            let v: Vec<Q> = ph.into_iter().map(frac).collect();
            if best.as_ref().is_none_or(|b| v < *b) {
                *best = Some(v);
            }
            return;
        }
        let l = &lattice[k];
        let p = pivots[k];
        let c = l[p];
        for m in 0..c {
            let s = (Q::from(m) - ph[p]) / Q::from(c);
            let next: Vec<Q> = ph.iter().zip(l).map(|(&x, &y)| x + s * Q::from(y)).collect();
            rec(next, k + 1, lattice, pivots, best);
        }
    }
    rec(base.phases(), 0, lattice, &pivots, &mut best);
    TorusPoint::from_parts(&best.unwrap(), &qe)
}

/// T^w for a Weyl element acting on X_* by `b`.
#[derive(Clone, Debug)]
pub struct FixedLocus {
    pub components: Vec<SubtorusCoset>,
    /// Component ids (torsion coordinates) parallel to `components`.
    pub ids: Vec<Vec<Q>>,
    v_inv: IMat,
    rank_m: usize,
    mats: Vec<IMat>,
}

pub fn fixed_locus(b: &IMat) -> FixedLocus {
    fixed_locus_common(b.rows(), std::slice::from_ref(b))
}

/// Common fixed locus of several X_* matrices (the fixed points of the group they generate).
pub fn fixed_locus_common(n: usize, mats: &[IMat]) -> FixedLocus {
    let mut rows = vec![vec![0; n]];
    for b in mats {
        rows.extend(b.sub(&IMat::identity(n)).to_rows());
    }
    let m = IMat::from_rows(&rows);
    let (_u, d, v) = smith_normal_form(&m);
    let diag: Vec<i64> = (0..n).map(|i| if i < d.rows() { d.get(i, i) } else { 0 }).collect();
    let r = diag.iter().filter(|&&x| x != 0).count();
    let lattice: Vec<Vec<i64>> = (r..n).map(|j| v.col(j)).collect();
    let mut combos: Vec<Vec<i64>> = vec![Vec::new()];
    for &di in &diag[..r] {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                (0..di).map(move |k| {
                    let mut c = c.clone();
                    c.push(k);
                    c
                })
            })
            .collect();
    }
    let v_inv = v.inverse_unimodular().expect("unimodular");
    let mut pairs: Vec<(SubtorusCoset, Vec<Q>)> = combos
        .into_iter()
        .map(|k| {
            let mut y = vec![Q::zero(); n];
            let mut id = Vec::with_capacity(r);
            for i in 0..r {
                y[i] = Q::new(k[i], diag[i]);
                id.push(y[i]);
            }
            let base = TorusPoint::from_phases(&v.mul_qvec(&y));
            (SubtorusCoset::new(&base, &lattice), id)
        })
        .collect();
    pairs.sort();
    let (components, ids) = pairs.into_iter().unzip();
    FixedLocus { components, ids, v_inv, rank_m: r, mats: mats.to_vec() }
}

impl FixedLocus {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.components.first().map_or(0, |c| c.dim)
    }

    pub fn is_fixed(&self, p: &TorusPoint) -> bool {
        self.mats.iter().all(|b| act_matrix(b, p) == *p)
    }

    /// Index of the component containing a fixed point.
    pub fn component_of(&self, p: &TorusPoint) -> Option<usize> {
        if !self.is_fixed(p) {
            return None;
        }
        let y = self.v_inv.mul_qvec(&p.phases());
        let id: Vec<Q> = y[..self.rank_m].iter().map(|&x| frac(x)).collect();
        self.ids.iter().position(|i| *i == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let t = TorusPoint::parse("0/1@-2/2,0/1@0/2").unwrap();
        assert_eq!(t.coords[0].qexp, Q::from(-1));
        assert_eq!(t.to_string(), "0/1@-2/2,0/1@0/2");
        assert_eq!(TorusCoordinate::parse("3/2").unwrap().phase, Q::new(1, 2));
        assert!(TorusPoint::parse("x").is_err());
    }

    #[test]
    fn inversion_fixed_locus() {
        let f = fixed_locus(&IMat::from_rows(&[vec![-1]]));
        assert_eq!(f.len(), 2);
        assert_eq!(f.components[0].base.coords[0].phase, Q::zero());
        assert_eq!(f.components[1].base.coords[0].phase, Q::new(1, 2));
        let g = fixed_locus(&IMat::from_rows(&[vec![-1, 0], vec![0, -1]]));
        assert_eq!(g.len(), 4);
        let id = fixed_locus(&IMat::identity(2));
        assert_eq!(id.len(), 1);
        assert_eq!(id.dim(), 2);
    }

    #[test]
    fn swap_fixed_locus() {
        let f = fixed_locus(&IMat::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(f.len(), 1);
        assert_eq!(f.dim(), 1);
        let p = TorusPoint::parse("1/3,1/3").unwrap();
        assert_eq!(f.component_of(&p), Some(0));
        assert!(f.components[0].contains(&p));
        assert!(!f.components[0].contains(&TorusPoint::parse("1/3,0").unwrap()));
    }

    #[test]
    fn action() {
        let inv = IMat::from_rows(&[vec![-1]]);
        let t = TorusPoint::parse("1/3@0/2").unwrap();
        assert_eq!(act_matrix(&inv, &t), TorusPoint::parse("2/3@0/2").unwrap());
    }
}
