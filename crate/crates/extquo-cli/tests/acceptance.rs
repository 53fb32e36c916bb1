//! One PASS/FAIL line per acceptance criterion, with the tolerance (exact) and the time limit.

use extquo::chartable::{character_table, check_orthogonality, induce, restrict};
use extquo::cirr::StandardCIrr;
use extquo::clifford::{clifford_decomposition, semidirect_product};
use extquo::extquo::{extended_quotient_first, project_rho, second_kind_fiber, Action};
use extquo::gl::{flat_family_membership, gl_sample, gl_triangle, GlBlock, InertialDataGL};
use extquo::group::FiniteGroup;
use extquo::klr::{
    action_for, h_classes, image_intersections, label_strata, move_onto, params_with_infinitesimal_character, parse_inertial, theta_fiber, theta_identifies,
    theta_z,
};
use extquo::matrix::{smith_normal_form, IMat};
use extquo::root_datum::build_root_datum;
use extquo::springer::springer_table;
use extquo::torus::{fixed_locus, TorusCoordinate, TorusPoint};
use extquo::triangle::{verify_triangle, Sample};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_extquo")).args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn setup(g: &str) -> (Action, extquo::extquo::ExtendedQuotient, Vec<extquo::klr::StratumLabel>) {
    let a = Action::unramified(build_root_datum(g).unwrap()).unwrap();
    let eq = extended_quotient_first(&a).unwrap();
    let l = label_strata(&a, &eq, &StandardCIrr::default()).unwrap();
    (a, eq, l)
}

fn c1_g2_extquo() -> Check {
    let v = cli(&["extquo", "--group", "G2"]);
    let c = &v["counts"];
    let by_dim: Vec<u64> = c["non_ordinary_by_dim"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    ensure(c["ordinary"] == 1 && by_dim == [5, 2] && c["total"] == 8, format!("counts {c}"))?;
    Ok("ordinary 1, one-dimensional 2, points 5".into())
}

fn c2_inversion() -> Check {
    let v = cli(&["extquo", "--action", "inversion"]);
    let c = &v["counts"];
    ensure(c["ordinary"] == 1 && c["non_ordinary_by_dim"] == serde_json::json!([2]), format!("counts {c}"))?;
    // brute force: z = z⁻¹ has the solutions ±1
    let fixed = (0..24).filter(|k| (2 * k) % 24 == 0).count();
    ensure(fixed == 2, "fixed points of inversion")?;
    Ok("ordinary + 2 points".into())
}

/// Some u ∈ W carries the curve t·(z·dir) onto a curve parallel to `lattice` with u·h_ref = h.
fn conjugate_cocharacter(a: &Action, dir: &[i64], h_ref: &[i64], lattice: &[i64], h: &[i64]) -> bool {
    let neg: Vec<i64> = lattice.iter().map(|x| -x).collect();
    a.elements.iter().any(|&u| {
        let m = &a.weyl.cochar[u];
        let d = m.mul_vec(dir);
        (d == lattice || d == neg) && m.mul_vec(h_ref) == h
    })
}

fn c3_g2_fiber() -> Check {
    let (a, eq, l) = setup("G2");
    let curves: Vec<usize> = (0..eq.strata.len()).filter(|&i| eq.strata[i].dim == 1).collect();
    // (z,1) ↦ (αz, α⁻²) and (z,z) ↦ (αz, α⁻¹z)
    let reference = [(vec![1, 0], vec![1, -2]), (vec![1, 1], vec![1, -1])];
    for (dir, hp) in &reference {
        ensure(
            curves.iter().any(|&c| conjugate_cocharacter(&a, dir, hp, &eq.strata[c].component.lattice[0], &l[c].h)),
            format!("no curve with cocharacter {hp:?} along {dir:?}"),
        )?;
    }
    let target = TorusPoint::parse("0/1@-2/2,0/1@0/2").unwrap();
    let f = theta_fiber(&a, &eq, &l, &target, TorusCoordinate::sqrt_q());
    let hc = h_classes(&a).unwrap();
    let params = params_with_infinitesimal_character(&a, &hc, &target).unwrap();
    ensure(f.len() == 5 && params.len() == 5, format!("fiber {} params {}", f.len(), params.len()))?;
    Ok("fiber over (q^-1, 1): 5 via θ_√q, 5 via KLR enumeration".into())
}

fn c4_g2_incidence() -> Check {
    let (a, eq, l) = setup("G2");
    let curves: Vec<usize> = (0..eq.strata.len()).filter(|&i| eq.strata[i].dim == 1).collect();
    let (c1, c2) = (curves[0], curves[1]);
    let pts = image_intersections(&a, &eq.strata[c1], &l[c1], &eq.strata[c2], &l[c2], TorusCoordinate::sqrt_q()).unwrap();
    ensure(pts.len() == 3, format!("{} intersection points", pts.len()))?;
    let c = (0..eq.strata.len()).find(|&i| eq.strata[i].dim == 1 && l[i].label == "A1").unwrap();
    let s = &eq.strata[c];
    let p1 = move_onto(&a, s, &TorusPoint::parse("1/3@-1/2,1/3@-1/2").unwrap()).unwrap();
    let p2 = move_onto(&a, s, &TorusPoint::parse("2/3@-1/2,2/3@-1/2").unwrap()).unwrap();
    ensure(a.canonical(&p1) != a.canonical(&p2), "witnesses coincide before θ")?;
    ensure(theta_identifies(&a, s, &l[c], TorusCoordinate::sqrt_q(), &p1, &p2).unwrap(), "witnesses not identified")?;
    Ok("3 intersection points; (ω/√q, ω/√q) and (ω²/√q, ω²/√q) identified".into())
}

fn c5_triangles() -> Check {
    let pairs = [
        ("A1", "trivial"),
        ("A2", "trivial"),
        ("GL2", "trivial"),
        ("GL3", "trivial"),
        ("PGL2", "trivial"),
        ("C2", "trivial"),
        ("G2", "trivial"),
        ("PGL2", "pgl2-order2"),
        ("G2", "so4-in-g2"),
    ];
    let mut points = 0;
    let mut matchings = 0;
    for (g, inertial) in pairs {
        let d = build_root_datum(g).unwrap();
        let a = action_for(&d, &parse_inertial(inertial, &d).unwrap()).unwrap();
        let r = verify_triangle(&a, &StandardCIrr::default(), &Sample::StrataGeneric).unwrap();
        for p in &r.points {
            ensure(p.verdict == "pass", format!("{g}/{inertial} at {}: {:?}", p.point, p.failures))?;
            ensure(p.left == p.irr_w_t && p.right == p.irr_w_t && p.bottom == p.irr_w_t, format!("{g}/{inertial} fiber sizes"))?;
            ensure(p.matchings.len() == p.irr_w_t, format!("{g}/{inertial} matchings"))?;
            matchings += p.matchings.len();
        }
        points += r.points.len();
    }
    // a c-Irr system with the reflection classes swapped must be caught
    let mut bad = StandardCIrr::default();
    bad.g2[1].1 = "eps_s".into();
    bad.g2[2].1 = "refl2".into();
    let g2 = Action::unramified(build_root_datum("G2").unwrap()).unwrap();
    let caught = verify_triangle(&g2, &bad, &Sample::StrataGeneric).map_or(true, |r| r.verdict != "pass");
    ensure(caught, "swapped c-Irr system passed")?;
    Ok(format!("9 (group, inertial) pairs, {points} points, {matchings} matchings; swapped c-Irr rejected"))
}

fn compositions(max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(c) = stack.pop() {
        let s: usize = c.iter().sum();
        if !c.is_empty() {
            out.push(c.clone());
        }
        for e in 1..=max - s {
            stack.push([c.clone(), vec![e]].concat());
        }
    }
    out
}

fn c6_gl_triangle() -> Check {
    let mut runs = 0;
    for es in compositions(5) {
        let data = InertialDataGL::new(es.iter().map(|&e| GlBlock { m: 1, e, n: 1 }).collect()).unwrap();
        let r = gl_triangle(&data, &gl_sample(&data)).unwrap();
        ensure(r.verdict == "pass", format!("blocks {es:?}"))?;
        runs += 1;
    }
    let mut counts = Vec::new();
    for e in 2..=5 {
        let irr = character_table(&FiniteGroup::symmetric(e)).unwrap().num_classes();
        let data = InertialDataGL::new(vec![GlBlock { m: 1, e, n: 1 }]).unwrap();
        let t = vec![vec![extquo::gl::GlValue("z".into()); e]];
        let r = gl_triangle(&data, std::slice::from_ref(&t)).unwrap();
        let fib = r.points[0].matchings.len();
        ensure(fib == irr, format!("e = {e}: fiber {fib}, |Irr(S_e)| {irr}"))?;
        counts.push(fib);
    }
    ensure(counts == [2, 3, 5, 7], format!("{counts:?}"))?;
    Ok(format!("{runs} block data with Σe ≤ 5; repeated fibers {counts:?}"))
}

fn c7_flat_family() -> Check {
    let (a, eq, l) = setup("GL2");
    let k = (0..eq.strata.len()).find(|&i| !eq.strata[i].is_ordinary).unwrap();
    let s = &eq.strata[k];
    let mut checked = 0;
    for n in 1..=12 {
        for j in 0..n {
            for e in -2..=2 {
                let z = TorusCoordinate::new((j, n).into(), (e, 2).into());
                let zs = vec![z; s.dim];
                let p = s.component.point_at(&zs);
                let sq = theta_z(&a, s, &l[k], TorusCoordinate::sqrt_q(), &p).unwrap();
                let one = theta_z(&a, s, &l[k], TorusCoordinate::one(), &p).unwrap();
                ensure(flat_family_membership(TorusCoordinate::sqrt_q(), &sq.coords), format!("θ_√q({p}) = {sq} not in Y_√q"))?;
                ensure(flat_family_membership(TorusCoordinate::one(), &one.coords), format!("θ_1({p}) = {one} not in Y_1"))?;
                checked += 1;
            }
        }
    }
    // an ordinary generic point is in neither
    let generic = TorusPoint::parse("1/1009,1/1013").unwrap();
    ensure(!flat_family_membership(TorusCoordinate::sqrt_q(), &generic.coords), "generic point in Y_√q")?;
    Ok(format!("{checked} stratum points: θ_√q-image in Y_√q, θ_1-image in Y_1"))
}

fn c8_springer() -> Check {
    let mut seen = Vec::new();
    for (g, expected) in [("GL2", 2), ("GL3", 3), ("GL4", 5), ("GL5", 7), ("A2", 3), ("SL4", 5), ("PGL3", 3), ("C2", 5), ("G2", 6)] {
        let d = build_root_datum(g).unwrap();
        let a = Action::unramified(d.clone()).unwrap();
        let irr_w = character_table(&a.weyl.group).unwrap().num_classes();
        let st = springer_table(&d).unwrap();
        let geometric = st.geometric_rows().count();
        ensure(geometric == irr_w && irr_w == expected, format!("{g}: geometric {geometric}, |Irr(W)| {irr_w}, expected {expected}"))?;
        let all = a.weyl.group.subgroup(&a.elements).unwrap();
        let table = character_table(&all.group).unwrap();
        // τ as a function on W
        let values = |class: usize| -> Vec<i64> {
            let tau = st.tensor_character(&d, &a.weyl, st.row(class, 0).unwrap().tau.as_ref().unwrap(), &all, &table);
            a.elements.iter().map(|&w| tau[table.classes.class_of[all.embedding.binary_search(&w).unwrap()]].to_rational().unwrap().to_integer()).collect()
        };
        ensure(values(st.trivial_class()).iter().all(|&v| v == 1), format!("{g}: trivial class not ↦ trivial"))?;
        let reg = st.classes.iter().position(|c| c.dim_orbit == 2 * d.num_positive()).unwrap();
        let sgn: Vec<i64> = a.elements.iter().map(|&w| a.weyl.det(w)).collect();
        ensure(values(reg) == sgn, format!("{g}: regular class not ↦ sign"))?;
        seen.push(format!("{g}:{geometric}"));
    }
    Ok(seen.join(" "))
}

fn c9_clifford() -> Check {
    let cyclic_by = |n: usize, a: usize, ord: usize| {
        let action = (0..ord).map(|g| (0..n).map(|x| x * a.pow(g as u32) % n).collect()).collect();
        semidirect_product(&FiniteGroup::cyclic(n), &FiniteGroup::cyclic(ord), action).unwrap()
    };
    let corpus = [
        ("S3", 3, 2, 2, 3),
        ("D4", 4, 3, 2, 5),
        ("D5", 5, 4, 2, 4),
        ("D6", 6, 5, 2, 6),
        ("D8", 8, 7, 2, 7),
        ("SD16", 8, 3, 2, 7),
        ("M16", 8, 5, 2, 10),
        ("Dic3", 3, 2, 4, 6),
        ("F20", 5, 2, 4, 5),
        ("F21", 7, 2, 3, 5),
        ("F55", 11, 3, 5, 7),
        ("F39", 13, 3, 3, 7),
    ];
    for (name, n, a, ord, expected) in corpus {
        let sp = cyclic_by(n, a, ord);
        ensure(sp.group.order() <= 200, name)?;
        let cd = clifford_decomposition(&sp).map_err(|e| format!("{name}: {e}"))?;
        let total: usize = cd.orbits.iter().map(|o| o.stabilizer_irr_count).sum();
        ensure(cd.cocycle_trivial && total == expected && cd.g_table.num_classes() == expected, format!("{name}: {total} vs {expected}"))?;
    }
    let cd = clifford_decomposition(&cyclic_by(3, 2, 2)).unwrap();
    let mut per: Vec<usize> = cd.orbits.iter().map(|o| o.over.len()).collect();
    per.sort_unstable();
    ensure(per == [1, 2], format!("S3 split {per:?}"))?;
    Ok(format!("{} semidirect products; S3 = 2 + 1", corpus.len()))
}

fn random_point(rng: &mut ChaCha8Rng, rank: usize) -> TorusPoint {
    TorusPoint {
        coords: (0..rank)
            .map(|_| {
                let n = rng.gen_range(1..=12i64);
                TorusCoordinate::new((rng.gen_range(0..n), n).into(), (rng.gen_range(-3..=3i64), 2).into())
            })
            .collect(),
    }
}

fn c10_properties() -> Check {
    const CASES: usize = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(20261016);
    let groups = ["A1", "GL2", "PGL2", "A2", "GL3", "C2", "G2", "SL4"];
    let setups: Vec<_> = groups.iter().map(|g| setup(g)).collect();
    for _ in 0..CASES {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = IMat::from_rows(&rows);
        let (u, s, v) = smith_normal_form(&m);
        ensure(u.mul(&m).mul(&v) == s && u.det().abs() == 1 && v.det().abs() == 1, "SNF")?;

        let (a, eq, l) = &setups[rng.gen_range(0..setups.len())];
        let t = random_point(&mut rng, a.rank());
        let (x, y) = (a.elements[rng.gen_range(0..a.order())], a.elements[rng.gen_range(0..a.order())]);
        ensure(a.act(a.weyl.mul(x, y), &t) == a.act(x, &a.act(y, &t)), "action law")?;
        let cf = a.canonical(&t);
        ensure(a.canonical(&cf) == cf && a.canonical(&a.act(x, &t)) == cf, "canonical form")?;

        let d = a.weyl.cochar[x].sub(&IMat::identity(a.rank())).det();
        if d != 0 {
            ensure(fixed_locus(&a.weyl.cochar[x]).len() as i64 == d.abs(), "fixed-locus count")?;
        }

        let k = rng.gen_range(0..eq.strata.len());
        let s = &eq.strata[k];
        let zs: Vec<TorusCoordinate> = (0..s.dim).map(|_| random_point(&mut rng, 1).coords[0]).collect();
        let p = s.component.point_at(&zs);
        ensure(theta_z(a, s, &l[k], TorusCoordinate::one(), &p).unwrap() == project_rho(a, s, &p).unwrap(), "θ_1 = ρ")?;

        let ft = TorusPoint { coords: t.coords.iter().map(|c| TorusCoordinate::new(c.phase, 0.into())).collect() };
        let fib = second_kind_fiber(a, &ft).unwrap();
        ensure(check_orthogonality(&fib.table), "orthogonality")?;
        let gt = character_table(&a.group.group).unwrap();
        let pos: Vec<usize> = fib.subgroup.embedding.iter().map(|e| a.group.embedding.binary_search(e).unwrap()).collect();
        let sub = a.group.group.subgroup(&pos).unwrap();
        let ht = character_table(&sub.group).unwrap();
        let chi = &gt.characters[rng.gen_range(0..gt.num_classes())];
        let phi = &ht.characters[rng.gen_range(0..ht.num_classes())];
        let ind = induce(&a.group.group, &gt, &sub, &ht, phi);
        ensure(gt.inner(&ind, chi) == ht.inner(phi, &restrict(&gt, chi, &sub, &ht)), "Frobenius reciprocity")?;
    }
    Ok(format!("{CASES} seeded cases × 7 properties (full suites in extquo/tests/properties.rs)"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("G2 extended quotient", c1_g2_extquo, Some(Duration::from_secs(1))),
        ("inversion on C^x", c2_inversion, Some(Duration::from_secs(1))),
        ("G2 fiber count", c3_g2_fiber, Some(Duration::from_secs(1))),
        ("G2 incidence", c4_g2_incidence, Some(Duration::from_secs(1))),
        ("triangle bijections", c5_triangles, Some(Duration::from_secs(30))),
        ("GL triangle", c6_gl_triangle, Some(Duration::from_secs(5))),
        ("flat family", c7_flat_family, None),
        ("Springer consistency", c8_springer, None),
        ("Clifford suite", c9_clifford, Some(Duration::from_secs(10))),
        ("property suites", c10_properties, None),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let el = start.elapsed();
        let over = limit.is_some_and(|l| el > l);
        let lim = limit.map_or("none".to_string(), |l| format!("{:.0} ms", l.as_secs_f64() * 1e3));
        let (ok, detail) = match res {
            Ok(d) if !over => (true, d),
            Ok(d) => (false, format!("{d}; over time limit")),
            Err(e) => (false, e),
        };
        let line =
            format!("{} {:>2} {name}: {detail} [tolerance exact; {:.1} ms, limit {lim}]\n", if ok { "PASS" } else { "FAIL" }, i + 1, el.as_secs_f64() * 1e3);
        std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
