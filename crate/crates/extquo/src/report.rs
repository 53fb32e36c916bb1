//! Versioned JSON documents for each computation, shared by the CLI and the tests.

use crate::chartable::{character_table, CharacterTable};
use crate::cirr::CIrr;
use crate::error::{Error, Result};
use crate::extquo::{extended_quotient_first, reducibility_subvariety, Action};
use crate::gl::{
    flat_family_locus, flat_family_membership, g2_family_orbit_membership, gl_phi, gl_phi_inverse, GlPoint, GlTau, GlTriangleReport, InertialDataGL,
    LanglandsParamGL,
};
use crate::klr::{
    enumerate_affine_springer, h_classes, is_essentially_discrete, is_tempered, l_packets, label_strata, params_with_infinitesimal_character, theta_z, to_klr,
    KLRParam,
};
use crate::partition::format_partition;
use crate::root_datum::RootDatum;
use crate::springer::springer_table;
use crate::torus::{TorusCoordinate, TorusPoint};
use crate::triangle::TriangleReport;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

fn doc(kind: &str, body: Value) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "kind": kind });
    if let (Some(m), Value::Object(b)) = (v.as_object_mut(), body) {
        m.extend(b);
    }
    v
}

fn inertial_strings(a: &Action) -> Vec<String> {
    a.inertial.iter().map(|p| p.to_string()).collect()
}

pub fn extquo_doc(a: &Action, inertial: &str, sys: &dyn CIrr) -> Result<Value> {
    let eq = extended_quotient_first(a)?;
    let labels = label_strata(a, &eq, sys);
    let (ordinary, by_dim) = eq.count_by_dim();
    let strata: Vec<Value> = eq
        .strata
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut v = json!({
                "index": i,
                "w": s.class_rep_word,
                "ordinary": s.is_ordinary,
                "dim": s.dim,
                "base": s.component.base.to_string(),
                "lattice": s.component.lattice,
                "residual_order": s.residual.len(),
            });
            if let Ok(l) = &labels {
                v["label"] = json!(l[i].label);
                v["h"] = json!(l[i].h);
            }
            v
        })
        .collect();
    let reducibility: Vec<Value> =
        reducibility_subvariety(a, &eq).iter().map(|c| json!({ "base": c.base.to_string(), "lattice": c.lattice, "dim": c.dim })).collect();
    let mut body = json!({
        "group": a.datum.label,
        "inertial": inertial,
        "inertial_generators": inertial_strings(a),
        "w_s_order": a.order(),
        "counts": { "ordinary": ordinary, "non_ordinary_by_dim": by_dim, "total": eq.strata.len() },
        "strata": strata,
        "reducibility": reducibility,
    });
    if let Err(e) = labels {
        body["labels_error"] = json!(e.to_string());
    }
    Ok(doc("extquo", body))
}

fn klr_row(d: &RootDatum, p: &KLRParam, packet: usize) -> Value {
    json!({
        "t": p.frobenius_image.to_string(),
        "t_q": p.t_q.to_string(),
        "unipotent": p.h_label,
        "m_class": p.unipotent.label,
        "rho": p.rho_label,
        "sigma": p.sigma_label,
        "tempered": is_tempered(p),
        "discrete": is_essentially_discrete(d, p),
        "spherical": p.spherical,
        "packet": packet,
    })
}

/// Parameters with infinitesimal character `t_q`, or (with `frobenius`) over the point t of T/W^s.
pub fn params_doc(a: &Action, inertial: &str, point: &TorusPoint, frobenius: bool) -> Result<Value> {
    let hc = h_classes(a)?;
    let params = if frobenius {
        if !point.is_finite_order() {
            return Err(Error::QExponent);
        }
        enumerate_affine_springer(a, point)?.iter().map(|p| to_klr(a, &hc, p)).collect::<Result<Vec<_>>>()?
    } else {
        params_with_infinitesimal_character(a, &hc, point)?
    };
    let packets = l_packets(&params);
    let rows: Vec<Value> = params.iter().zip(&packets).map(|(p, &k)| klr_row(&a.datum, p, k)).collect();
    Ok(doc(
        "params",
        json!({
            "group": a.datum.label,
            "inertial": inertial,
            "mode": if frobenius { "frobenius" } else { "infinitesimal" },
            "point": point.to_string(),
            "count": rows.len(),
            "packets": packets.iter().max().map_or(0, |m| m + 1),
            "params": rows,
        }),
    ))
}

pub fn triangle_doc(r: &TriangleReport, inertial: &str) -> Value {
    let mut v = serde_json::to_value(r).unwrap();
    v["inertial_name"] = json!(inertial);
    doc("triangle", v)
}

pub fn gl_triangle_doc(r: &GlTriangleReport) -> Value {
    doc("gl_triangle", serde_json::to_value(r).unwrap())
}

fn summands(phi: &LanglandsParamGL) -> Vec<Value> {
    phi.summands.iter().map(|s| json!({ "block": s.block, "z": s.z.0, "partition": format_partition(&s.partition) })).collect()
}

fn tau_strings(tau: &GlTau) -> Vec<Vec<String>> {
    tau.iter().map(|b| b.iter().map(|p| format_partition(p)).collect()).collect()
}

pub fn glphi_doc(data: &InertialDataGL, t: &GlPoint, tau: &GlTau) -> Result<Value> {
    let phi = gl_phi(data, t, tau)?;
    let (bt, btau) = gl_phi_inverse(data, &phi)?;
    Ok(doc(
        "glphi",
        json!({
            "blocks": data.blocks,
            "t": t.iter().map(|b| b.iter().map(|v| v.0.clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "tau": tau_strings(tau),
            "summands": summands(&phi),
            "inverse": { "t": bt.iter().map(|b| b.iter().map(|v| v.0.clone()).collect::<Vec<_>>()).collect::<Vec<_>>(), "tau": tau_strings(&btau) },
        }),
    ))
}

/// Y_v for GL_e, with optional membership of a point and of the θ_v-images of the GL_e strata.
pub fn gl_family_doc(e: usize, v: TorusCoordinate, point: Option<&TorusPoint>, sys: &dyn CIrr) -> Result<Value> {
    let locus = flat_family_locus(e, v);
    let mut body = json!({ "family": "gl", "e": e, "v": v.to_string(), "locus": locus.conditions });
    if let Some(p) = point {
        p.check_rank(e)?;
        body["point"] = json!(p.to_string());
        body["member"] = json!(flat_family_membership(v, &p.coords));
    }
    let a = Action::unramified(crate::root_datum::build_root_datum(&format!("GL{e}"))?)?;
    let eq = extended_quotient_first(&a)?;
    let labels = label_strata(&a, &eq, sys)?;
    let images: Vec<Value> = eq
        .strata
        .iter()
        .zip(&labels)
        .enumerate()
        .filter(|(_, (s, _))| !s.is_ordinary)
        .map(|(i, (s, l))| {
            let g = s.component.generic_point();
            let img = theta_z(&a, s, l, v, &g)?;
            Ok(json!({ "stratum": i, "label": l.label, "point": g.to_string(), "image": img.to_string(), "member": flat_family_membership(v, &img.coords) }))
        })
        .collect::<Result<_>>()?;
    body["stratum_images"] = json!(images);
    Ok(doc("family", body))
}

/// Y_α for G2, with optional membership (up to W) and the θ_α-images of the curves.
pub fn g2_family_doc(alpha: TorusCoordinate, point: Option<&TorusPoint>, sys: &dyn CIrr) -> Result<Value> {
    let a = Action::unramified(crate::root_datum::build_root_datum("G2")?)?;
    let mut body = json!({ "family": "g2", "v": alpha.to_string(), "locus": ["(1 - v^2 y)(x - v^2 y) = 0"] });
    if let Some(p) = point {
        p.check_rank(2)?;
        body["point"] = json!(p.to_string());
        body["member"] = json!(g2_family_orbit_membership(&a, alpha, p));
    }
    let eq = extended_quotient_first(&a)?;
    let labels = label_strata(&a, &eq, sys)?;
    let images: Vec<Value> = eq
        .strata
        .iter()
        .zip(&labels)
        .enumerate()
        .filter(|(_, (s, _))| s.dim == 1)
        .map(|(i, (s, l))| {
            let g = s.component.generic_point();
            let img = theta_z(&a, s, l, alpha, &g)?;
            Ok(json!({ "stratum": i, "label": l.label, "point": g.to_string(), "image": img.to_string(), "member": g2_family_orbit_membership(&a, alpha, &img) }))
        })
        .collect::<Result<_>>()?;
    body["stratum_images"] = json!(images);
    Ok(doc("family", body))
}

fn table_rows(t: &CharacterTable) -> Vec<Value> {
    (0..t.characters.len())
        .map(|i| json!({ "name": t.label(i), "degree": t.degrees[i], "values": t.characters[i].iter().map(|c| c.to_string()).collect::<Vec<_>>() }))
        .collect()
}

/// Character table of W^s.
pub fn chartable_doc(a: &Action) -> Result<Value> {
    let t = character_table(&a.group.group)?;
    let reps: Vec<Vec<usize>> = (0..t.num_classes()).map(|k| a.weyl.words[a.group.embedding[t.classes.rep(k)]].clone()).collect();
    Ok(doc(
        "chartable",
        json!({
            "group": a.datum.label,
            "order": t.order,
            "class_reps": reps,
            "class_sizes": t.class_sizes,
            "class_orders": t.class_orders,
            "characters": table_rows(&t),
        }),
    ))
}

pub fn springer_doc(d: &RootDatum) -> Result<Value> {
    let st = springer_table(d)?;
    let classes: Vec<Value> = st
        .classes
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "dim": c.dim_orbit,
                "distinguished": c.distinguished,
                "h": c.h_cochar,
                "component_group": c.component_group,
                "a_x_irreps": c.a_x_irreps,
            })
        })
        .collect();
    let rows: Vec<Value> = st
        .rows
        .iter()
        .map(|r| {
            json!({
                "class": st.classes[r.class].label,
                "rho": st.classes[r.class].a_x_irreps[r.rho],
                "tau": r.tau_label,
            })
        })
        .collect();
    Ok(doc(
        "springer",
        json!({
            "group": d.label,
            "irr_w": st.irr_count(),
            "geometric": st.geometric_rows().count(),
            "classes": classes,
            "rows": rows,
        }),
    ))
}
