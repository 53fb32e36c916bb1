//! b-values from fake degrees (Molien series of the coinvariant algebra), compared with the
//! dimension of the Springer fiber of each class.

use extquo::chartable::character_table;
use extquo::extquo::Action;
use extquo::matrix::Q;
use extquo::root_datum::build_root_datum;
use extquo::springer::springer_table;
use num_traits::Zero;

/// Power series 1/f truncated to `len` terms, f[0] = ±1.
fn invert(f: &[i64], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    let f0 = Q::from(f[0]);
    for k in 0..len {
        let mut s = if k == 0 { Q::from(1) } else { Q::zero() };
        for j in 1..=k.min(f.len() - 1) {
            s -= Q::from(f[j]) * out[k - j];
        }
        out[k] = s / f0;
    }
    out
}

/// det(I − qM) from the characteristic polynomial det(xI − M).
fn det_one_minus(cp: &[i64]) -> Vec<i64> {
    cp.iter().rev().copied().collect()
}

/// Lowest degree in which χ occurs in the coinvariant algebra.
fn b_value(a: &Action, chi: &[i64], len: usize) -> usize {
    let mut num = vec![Q::zero(); len];
    let mut den = vec![Q::zero(); len];
    for (i, &w) in a.elements.iter().enumerate() {
        let s = invert(&det_one_minus(&a.weyl.cochar[w].char_poly()), len);
        for k in 0..len {
            num[k] += Q::from(chi[i]) * s[k];
            den[k] += s[k];
        }
    }
    let mut p = vec![Q::zero(); len];
    for k in 0..len {
        let mut s = num[k];
        for j in 1..=k {
            s -= den[j] * p[k - j];
        }
        p[k] = s / den[0];
    }
    p.iter().position(|x| !x.is_zero()).expect("χ occurs in the coinvariants")
}

#[test]
fn b_values_match_springer_fibers() {
    for g in ["GL2", "GL3", "GL4", "A2", "SL4", "PGL3", "C2", "G2"] {
        let d = build_root_datum(g).unwrap();
        let a = Action::unramified(d.clone()).unwrap();
        let st = springer_table(&d).unwrap();
        let all = a.weyl.group.subgroup(&a.elements).unwrap();
        let table = character_table(&all.group).unwrap();
        let n_pos = d.num_positive();
        for row in st.geometric_rows() {
            let tau = st.tensor_character(&d, &a.weyl, row.tau.as_ref().unwrap(), &all, &table);
            let vals: Vec<i64> = a
                .elements
                .iter()
                .map(|&w| {
                    let v = &tau[table.classes.class_of[all.embedding.binary_search(&w).unwrap()]];
                    v.to_rational().unwrap().to_integer() * a.weyl.det(w)
                })
                .collect();
            let b = b_value(&a, &vals, n_pos + 2);
            let class = &st.classes[row.class];
            let d_x = n_pos - class.dim_orbit / 2;
            if row.rho == 0 {
                assert_eq!(b, d_x, "{g}: class {} (τ = {:?})", class.label, row.tau_label);
            } else {
                assert!(b > d_x, "{g}: class {} ρ {} (τ = {:?})", class.label, row.rho, row.tau_label);
            }
        }
    }
}

#[test]
fn g2_fake_degrees() {
    let d = build_root_datum("G2").unwrap();
    let a = Action::unramified(d.clone()).unwrap();
    let triv = vec![1; a.order()];
    let sgn: Vec<i64> = a.elements.iter().map(|&w| a.weyl.det(w)).collect();
    assert_eq!(b_value(&a, &triv, 8), 0);
    assert_eq!(b_value(&a, &sgn, 8), 6);
}
