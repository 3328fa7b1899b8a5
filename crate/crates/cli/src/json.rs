//! Report serialization: the JSON schema and the plain-text renderer.

use curvesy_core::binforms::BinForm;
use curvesy_core::singloc::CurveReport;
use serde_json::{json, Map, Value};

fn form_str(f: &BinForm) -> String {
    f.to_text()
}

fn u_form_str(f: &BinForm) -> String {
    f.to_text_named("u1", "u2")
}

pub fn report_to_json(rep: &CurveReport) -> Value {
    let mut m = Map::new();
    m.insert("degree".into(), json!(rep.d));
    m.insert("base_point_free".into(), json!(rep.base_point_free));
    m.insert("birational".into(), json!(rep.birational));
    m.insert("r".into(), json!(rep.r));
    m.insert("e".into(), json!(rep.e));
    m.insert("balanced".into(), json!(rep.balanced));
    m.insert(
        "hilbert_burch".into(),
        json!({
            "column_degrees": [rep.phi.col_degs.0, rep.phi.col_degs.1],
            "entries": rep
                .phi
                .entries
                .iter()
                .map(|row| row.iter().map(form_str).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
    );
    let points: Vec<Value> = rep
        .points
        .iter()
        .map(|p| {
            json!({
                "parameter_min_poly": form_str(&p.factor),
                "conjugacy_count": p.conjugacy,
                "point": p.point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "m": p.m,
                "s": p.s,
                "branch_multiplicities": p.branch_multiplicities,
                "delta": p.delta,
                "t_exponents": p.t_exponents,
                "multiplicity_sequence": p.multiplicity_sequence(),
            })
        })
        .collect();
    m.insert("singular_points".into(), Value::Array(points));
    m.insert(
        "conductor_gcd".into(),
        json!({
            "poly": form_str(&rep.conductor.c_g),
            "factors": rep
                .conductor
                .factors
                .iter()
                .map(|(f, e)| json!({"poly": form_str(f), "exponent": e}))
                .collect::<Vec<_>>(),
        }),
    );
    m.insert("jacobian_gcd".into(), json!(form_str(&rep.jacobian_gcd)));
    m.insert(
        "multc_configuration".into(),
        match &rep.multc {
            Some((label, _)) => json!(label.as_str()),
            None => json!("n/a"),
        },
    );
    m.insert(
        "quartic_type".into(),
        match &rep.quartic {
            Some(q) => json!(q.configuration),
            None => Value::Null,
        },
    );
    m.insert("genus_check".into(), json!(rep.genus_check));
    Value::Object(m)
}

pub fn report_to_pretty(rep: &CurveReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(&mut out, format!("degree            {}", rep.d));
    push(
        &mut out,
        format!(
            "validity          base point free, birational (r = {}, e = {})",
            rep.r, rep.e
        ),
    );
    push(&mut out, format!("balanced          {}", rep.balanced));
    push(
        &mut out,
        format!(
            "hilbert-burch     column degrees ({}, {})",
            rep.phi.col_degs.0, rep.phi.col_degs.1
        ),
    );
    for row in rep.phi.entries.iter() {
        push(
            &mut out,
            format!("                  [ {} | {} ]", form_str(&row[0]), form_str(&row[1])),
        );
    }
    push(
        &mut out,
        format!("conductor gcd     {}", form_str(&rep.conductor.c_g)),
    );
    for (f, e) in &rep.conductor.factors {
        push(&mut out, format!("                  ({})^{}", form_str(f), e));
    }
    push(
        &mut out,
        format!("jacobian gcd      {}", form_str(&rep.jacobian_gcd)),
    );
    push(
        &mut out,
        format!(
            "multiplicity-c    {}",
            rep.multc
                .as_ref()
                .map(|(l, _)| l.as_str().to_string())
                .unwrap_or_else(|| "n/a".into())
        ),
    );
    if let Some(q) = &rep.quartic {
        push(&mut out, format!("quartic type      {}", q.configuration));
    }
    push(&mut out, format!("genus check       {}", rep.genus_check));
    push(
        &mut out,
        format!("singular points   {}", rep.points.len()),
    );
    for (i, p) in rep.points.iter().enumerate() {
        push(
            &mut out,
            format!(
                "  [{}] parameter root of {} (x{} conjugates)",
                i,
                form_str(&p.factor),
                p.conjugacy
            ),
        );
        push(
            &mut out,
            format!(
                "      point [{} : {} : {}]",
                p.point[0], p.point[1], p.point[2]
            ),
        );
        push(
            &mut out,
            format!(
                "      m = {}, s = {}, delta = {}, branches {:?}, t {:?}, sequence {}",
                p.m,
                p.s,
                p.delta,
                p.branch_multiplicities,
                p.t_exponents,
                p.multiplicity_sequence().unwrap_or_else(|| "n/a".into())
            ),
        );
    }
    out
}

pub fn u_form_to_string(f: &BinForm) -> String {
    u_form_str(f)
}
