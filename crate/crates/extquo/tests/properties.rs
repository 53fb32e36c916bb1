use extquo::chartable::{character_table, check_orthogonality, induce, restrict, ClassFn};
use extquo::cirr::StandardCIrr;
use extquo::extquo::{extended_quotient_first, project_rho, second_kind_fiber, Action};
use extquo::klr::{label_strata, theta_z};
use extquo::matrix::{smith_normal_form, IMat};
use extquo::root_datum::build_root_datum;
use extquo::torus::{fixed_locus, TorusCoordinate, TorusPoint};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use std::sync::OnceLock;

const GROUPS: [&str; 9] = ["A1", "GL2", "PGL2", "A2", "GL3", "C2", "G2", "SL4", "PGL3"];

fn config() -> Config {
    Config { cases: 96, rng_seed: RngSeed::Fixed(20261016), failure_persistence: None, ..Config::default() }
}

fn actions() -> &'static Vec<Action> {
    static A: OnceLock<Vec<Action>> = OnceLock::new();
    A.get_or_init(|| GROUPS.iter().map(|g| Action::unramified(build_root_datum(g).unwrap()).unwrap()).collect())
}

fn point(rank: usize) -> impl Strategy<Value = TorusPoint> {
    prop::collection::vec((1i64..=12, 0i64..12, -3i64..=3), rank)
        .prop_map(|v| TorusPoint { coords: v.into_iter().map(|(n, k, e)| TorusCoordinate::new((k % n, n).into(), (e, 2).into())).collect() })
}

fn finite_point(rank: usize) -> impl Strategy<Value = TorusPoint> {
    prop::collection::vec((1i64..=12, 0i64..12), rank)
        .prop_map(|v| TorusPoint { coords: v.into_iter().map(|(n, k)| TorusCoordinate::root_of_unity(k % n, n)).collect() })
}

fn group_and_point() -> impl Strategy<Value = (usize, TorusPoint)> {
    (0..GROUPS.len()).prop_flat_map(|g| (Just(g), point(actions()[g].rank())))
}

fn group_and_finite_point() -> impl Strategy<Value = (usize, TorusPoint)> {
    (0..GROUPS.len()).prop_flat_map(|g| (Just(g), finite_point(actions()[g].rank())))
}

fn matrix() -> impl Strategy<Value = IMat> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| IMat::from_rows(&v.chunks(c).map(|x| x.to_vec()).collect::<Vec<_>>()))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn snf_is_exact(m in matrix()) {
        let (u, s, v) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).mul(&v), s.clone());
        prop_assert_eq!(u.det().abs(), 1);
        prop_assert_eq!(v.det().abs(), 1);
        let k = s.rows().min(s.cols());
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j {
                    prop_assert_eq!(s.get(i, j), 0);
                }
            }
        }
        for i in 0..k {
            prop_assert!(s.get(i, i) >= 0);
            if i + 1 < k && s.get(i, i) != 0 {
                prop_assert_eq!(s.get(i + 1, i + 1) % s.get(i, i), 0);
            }
            if s.get(i, i) == 0 {
                prop_assert!((i..k).all(|j| s.get(j, j) == 0));
            }
        }
    }

    #[test]
    fn action_laws((g, t) in group_and_point(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let a = &actions()[g];
        let (x, y) = (a.elements[i.index(a.order())], a.elements[j.index(a.order())]);
        prop_assert_eq!(a.act(a.weyl.identity, &t), t.clone());
        prop_assert_eq!(a.act(a.weyl.mul(x, y), &t), a.act(x, &a.act(y, &t)));
        let c = a.canonical(&t);
        prop_assert_eq!(a.canonical(&c), c.clone());
        prop_assert_eq!(a.canonical(&a.act(x, &t)), c);
    }

    #[test]
    fn fixed_locus_components(g in 0..GROUPS.len(), i in any::<prop::sample::Index>()) {
        let a = &actions()[g];
        let w = a.elements[i.index(a.order())];
        let m = a.weyl.cochar[w].sub(&IMat::identity(a.rank()));
        let fl = fixed_locus(&a.weyl.cochar[w]);
        let d = m.det();
        if d != 0 {
            prop_assert_eq!(fl.len() as i64, d.abs());
            prop_assert_eq!(fl.dim(), 0);
        }
        // every component meets T[12] in 12^dim points
        let n = 12i64;
        let r = a.rank();
        let fixed = (0..n.pow(r as u32))
            .filter(|&code| {
                let k: Vec<i64> = (0..r).map(|i| code / n.pow(i as u32) % n).collect();
                m.mul_vec(&k).iter().all(|x| x % n == 0)
            })
            .count() as i64;
        prop_assert_eq!(fixed, fl.len() as i64 * n.pow(fl.dim() as u32));
        for c in &fl.components {
            prop_assert!(fl.is_fixed(&c.base));
            prop_assert_eq!(a.act(w, &c.base), c.base.clone());
        }
    }

    #[test]
    fn orthogonality_and_reciprocity((g, t) in group_and_finite_point(), ci in any::<prop::sample::Index>(), hi in any::<prop::sample::Index>()) {
        let a = &actions()[g];
        let gt = character_table(&a.group.group).unwrap();
        prop_assert!(check_orthogonality(&gt));
        let fib = second_kind_fiber(a, &t).unwrap();
        prop_assert!(check_orthogonality(&fib.table));
        let pos: Vec<usize> = fib.subgroup.embedding.iter().map(|e| a.group.embedding.binary_search(e).unwrap()).collect();
        let sub = a.group.group.subgroup(&pos).unwrap();
        let ht = character_table(&sub.group).unwrap();
        let chi = &gt.characters[ci.index(gt.num_classes())];
        let phi: &ClassFn = &ht.characters[hi.index(ht.num_classes())];
        let ind = induce(&a.group.group, &gt, &sub, &ht, phi);
        let res = restrict(&gt, chi, &sub, &ht);
        prop_assert_eq!(gt.inner(&ind, chi), ht.inner(phi, &res));
    }

    #[test]
    fn theta_one_is_projection(g in 0..GROUPS.len() - 1, si in any::<prop::sample::Index>(), z in prop::collection::vec((1i64..=9, 0i64..9, -2i64..=2), 4)) {
        let a = &actions()[g];
        let eq = extended_quotient_first(a).unwrap();
        let labels = label_strata(a, &eq, &StandardCIrr::default()).unwrap();
        let k = si.index(eq.strata.len());
        let s = &eq.strata[k];
        let zs: Vec<TorusCoordinate> = z.iter().take(s.dim).map(|&(n, j, e)| TorusCoordinate::new((j % n, n).into(), (e, 2).into())).collect();
        let p = s.component.point_at(&zs);
        prop_assert_eq!(theta_z(a, s, &labels[k], TorusCoordinate::one(), &p).unwrap(), project_rho(a, s, &p).unwrap());
    }
}
