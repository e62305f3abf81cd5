//! JSON and DOT forms of the library's objects. Rationals travel as `"p/q"`
//! strings; objects are `serde_json::Value` maps, so keys come out sorted.

use serde_json::{json, Value};

use crate::algebra::{parse_rational, BinaryForm, ProjPoint, Rational};
use crate::assembly::{
    glue, AssemblyKit, D4Configuration, FixedLocus, HitchinSection, Role, SEquivalence,
    StratumDescriptor, WallCrossingMap,
};
use crate::error::{Error, Result};
use crate::higgs::{HiggsField, LineSubbundle, MarkedPoints, Qph, Splitting};
use crate::polytope::{Chamber, ChamberGraph, ChamberKind, Classification, Wall, WallKind};

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn parse_q(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => {
            Ok(Rational::from_integer(n.as_i64().expect("checked").into()))
        }
        _ => Err(Error::Parse(format!(
            "{what}: expected a rational string, got {v}"
        ))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("missing key {key:?}")))
}

fn int(v: &Value, key: &str) -> Result<i64> {
    field(v, key)?
        .as_i64()
        .ok_or_else(|| Error::Parse(format!("{key:?} must be an integer")))
}

pub fn form(f: &BinaryForm) -> Value {
    json!({"deg": f.degree(), "coeffs": f.coeffs().iter().map(rational).collect::<Vec<_>>()})
}

pub fn form_from(v: &Value) -> Result<BinaryForm> {
    let coeffs = field(v, "coeffs")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"coeffs\" must be an array".into()))?;
    let coeffs: Vec<Rational> = coeffs
        .iter()
        .map(|c| parse_q(c, "coefficient"))
        .collect::<Result<_>>()?;
    if let Some(d) = v.get("deg") {
        let d = d
            .as_u64()
            .ok_or_else(|| Error::Parse("\"deg\" must be a non-negative integer".into()))?;
        if d as usize + 1 != coeffs.len() {
            return Err(Error::Parse(format!(
                "degree {d} needs {} coefficients, got {}",
                d + 1,
                coeffs.len()
            )));
        }
    }
    if coeffs.is_empty() {
        return Err(Error::Parse("a form needs at least one coefficient".into()));
    }
    Ok(BinaryForm::new(coeffs))
}

pub fn point(p: &ProjPoint) -> Value {
    json!([rational(p.a()), rational(p.b())])
}

pub fn point_from(v: &Value) -> Result<ProjPoint> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => ProjPoint::new(parse_q(a, "flag")?, parse_q(b, "flag")?),
        _ => Err(Error::Parse(format!("a point is a pair [a, b], got {v}"))),
    }
}

/// `{"m1","m2","z1","flags","u","v","w"}`; `w` is null when absent.
pub fn qph(x: &Qph) -> Value {
    json!({
        "m1": x.splitting.m1,
        "m2": x.splitting.m2,
        "z1": rational(x.marks.z1()),
        "flags": x.flags.iter().map(point).collect::<Vec<_>>(),
        "u": form(&x.phi.u),
        "v": form(&x.phi.v),
        "w": x.phi.w.as_ref().map_or(Value::Null, form),
    })
}

/// Parses and validates; membership failures name the offending mark.
/// `z1` falls back to `default_z1` when the document omits it.
pub fn qph_from(v: &Value, default_z1: &Rational) -> Result<Qph> {
    let s = Splitting::new(int(v, "m1")?, int(v, "m2")?)?;
    let z1 = match v.get("z1") {
        Some(z) => parse_q(z, "z1")?,
        None => default_z1.clone(),
    };
    let marks = MarkedPoints::new(z1)?;
    let flags = field(v, "flags")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"flags\" must be an array".into()))?;
    if flags.len() != 4 {
        return Err(Error::Parse(format!(
            "expected 4 flags, got {}",
            flags.len()
        )));
    }
    let flags: Vec<ProjPoint> = flags.iter().map(point_from).collect::<Result<_>>()?;
    let w = match v.get("w") {
        None | Some(Value::Null) => None,
        Some(w) => Some(form_from(w)?),
    };
    let phi = HiggsField::new(s, form_from(field(v, "u")?)?, form_from(field(v, "v")?)?, w)?;
    Qph::new(s, marks, flags.try_into().expect("length checked"), phi)
}

pub fn line(l: &LineSubbundle) -> Value {
    json!({"j": l.j, "s1": form(&l.s1), "s2": l.s2.as_ref().map_or(Value::Null, form)})
}

pub fn kind_name(c: &Chamber) -> &'static str {
    match c.kind() {
        ChamberKind::Exterior => "exterior",
        ChamberKind::TypeA => "A",
        ChamberKind::TypeB => "B",
    }
}

pub fn chamber(c: &Chamber) -> Value {
    let sets: Vec<String> = c
        .effective_partition_set()
        .sets()
        .iter()
        .map(|s| s.to_string())
        .collect();
    json!({
        "chamber": c.to_string(),
        "kind": kind_name(c),
        "parity": c.parity().to_string(),
        "partition_set": sets,
        "walls": c.bounding_walls().iter().map(Wall::to_string).collect::<Vec<_>>(),
    })
}

pub fn wall(w: &Wall) -> Value {
    let (alias_set, alias_level) = w.alias();
    json!({
        "wall": w.to_string(),
        "subset": w.subset().to_string(),
        "level": w.level(),
        "kind": match w.kind() { WallKind::Boundary => "boundary", WallKind::Interior => "interior" },
        "alias": format!("H_{{{},{}}}", alias_set, alias_level),
    })
}

pub fn classification(c: &Classification) -> Value {
    match c {
        Classification::Chamber(ch) => json!({"result": "chamber", "chamber": chamber(ch)}),
        Classification::OnWalls(ws) => {
            json!({"result": "walls", "walls": ws.iter().map(wall).collect::<Vec<_>>()})
        }
    }
}

pub fn graph(g: &ChamberGraph) -> Value {
    json!({
        "parity": g.parity.to_string(),
        "nodes": g.nodes.iter().map(chamber).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|(i, j, w)| json!({"from": i, "to": j, "wall": w.to_string()})).collect::<Vec<_>>(),
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Nodes colored by chamber kind; edges labeled by wall.
pub fn graph_dot(g: &ChamberGraph) -> String {
    let mut out = format!("graph chambers_{} {{\n  node [style=filled];\n", g.parity);
    for (i, c) in g.nodes.iter().enumerate() {
        let color = match c.kind() {
            ChamberKind::Exterior => "lightgray",
            ChamberKind::TypeA => "lightblue",
            ChamberKind::TypeB => "salmon",
        };
        out += &format!(
            "  n{i} [label=\"{}\", fillcolor={color}];\n",
            dot_escape(&c.to_string())
        );
    }
    for (i, j, w) in &g.edges {
        out += &format!(
            "  n{i} -- n{j} [label=\"{}\"];\n",
            dot_escape(&w.to_string())
        );
    }
    out + "}\n"
}

pub fn kit(k: &AssemblyKit) -> Value {
    let p = k.chamber.parity();
    let comps: Vec<Value> = k
        .components
        .iter()
        .map(|c| {
            json!({
                "label": c.label.to_string(),
                "splitting": c.split.name(p),
                "iso_type": c.iso.to_string(),
                "euler": c.iso.euler(),
                "role": match c.role { Role::Central => "central".to_string(), Role::Tail(s) => format!("tail{s}") },
                "attachments": c.attachments.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
                "fixed_point": c.fixed_point.clone().map_or(Value::Null, Value::String),
            })
        })
        .collect();
    json!({"chamber": k.chamber.to_string(), "components": comps})
}

pub fn configuration(cfg: &D4Configuration) -> Value {
    let comp = |c: &crate::assembly::GluedComponent| {
        json!({
            "name": c.name,
            "pieces": c.pieces.iter().map(|(l, t)| json!([l.to_string(), t.to_string()])).collect::<Vec<_>>(),
            "closure_points": c.closure_points,
            "euler": c.euler,
        })
    };
    json!({
        "chamber": cfg.chamber.to_string(),
        "central": comp(&cfg.central),
        "tails": cfg.tails.iter().map(comp).collect::<Vec<_>>(),
        "intersections": cfg.intersections.iter().map(|(t, p)| json!({"tail": t, "point": p})).collect::<Vec<_>>(),
        "euler": crate::assembly::euler_characteristic(cfg),
    })
}

/// Components as nodes (sized by how many pieces they have), meetings as edges.
pub fn configuration_dot(cfg: &D4Configuration) -> String {
    let mut out = String::from("graph d4 {\n");
    out += &format!("  label=\"{}\";\n", dot_escape(&cfg.chamber.to_string()));
    let label = |c: &crate::assembly::GluedComponent| {
        c.pieces
            .iter()
            .map(|(l, t)| format!("{l}:{t}"))
            .collect::<Vec<_>>()
            .join("\\n")
    };
    out += &format!(
        "  central [shape=box, width=2, label=\"{}\"];\n",
        dot_escape(&label(&cfg.central)).replace("\\\\n", "\\n")
    );
    for (k, t) in cfg.tails.iter().enumerate() {
        out += &format!(
            "  t{k} [shape=ellipse, width={}, label=\"{}\"];\n",
            t.pieces.len(),
            dot_escape(&label(t)).replace("\\\\n", "\\n")
        );
    }
    for (k, p) in &cfg.intersections {
        out += &format!("  central -- t{k} [label=\"{}\"];\n", dot_escape(p));
    }
    out + "}\n"
}

pub fn kit_dot(k: &AssemblyKit) -> Result<String> {
    Ok(configuration_dot(&glue(k)?))
}

pub fn crossing(m: &WallCrossingMap) -> Value {
    json!({
        "from": m.from.to_string(),
        "to": m.to.to_string(),
        "wall": m.wall.to_string(),
        "exchanged": m.exchanged.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "fixed": m.fixed,
    })
}

pub fn stratum(s: &StratumDescriptor) -> Value {
    json!({
        "splitting": s.splitting.to_string(),
        "nonempty": s.nonempty,
        "dimension": s.dimension,
        "nodes": s.nodes,
        "components": s.components.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
    })
}

pub fn fixed(f: &FixedLocus) -> Value {
    json!({"name": f.name, "dimension": f.dimension, "tail": f.tail.map_or(Value::Null, |s| Value::String(s.to_string()))})
}

pub fn hitchin(h: &HitchinSection, parity: crate::polytope::Parity) -> Value {
    json!({
        "partition": h.partition.to_string(),
        "branch": h.branch.to_string(),
        "value_at_zero": h.value_at_zero,
        "splitting": h.splitting.name(parity),
        "open_stratum": h.in_open_stratum,
    })
}

pub fn s_equivalence(s: &SEquivalence) -> Value {
    json!({
        "wall": s.wall.to_string(),
        "weight": s.weight.to_string(),
        "flagged": s.flagged.iter().map(|(k, l)| json!([k.name(s.wall.parity()), l.to_string()])).collect::<Vec<_>>(),
        "identified": s.identified.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::higgs::{canonical_representative, realizable_labels, RepSpec};

    #[test]
    fn qph_round_trip() {
        let marks = MarkedPoints::new("-3/5".parse().unwrap()).unwrap();
        for d in 0..4 {
            for gap in (0..=3).filter(|g| (d - g) % 2 == 0) {
                let s = Splitting::with_gap(d, gap).unwrap();
                for label in realizable_labels(s) {
                    let x = canonical_representative(
                        &RepSpec::Block {
                            label,
                            splitting: s,
                            modulus: None,
                        },
                        &marks,
                    )
                    .unwrap();
                    let v = qph(&x);
                    let text = render(&v);
                    let back = qph_from(
                        &serde_json::from_str(&text).unwrap(),
                        &Rational::from_integer(2.into()),
                    )
                    .unwrap();
                    assert_eq!(back, x);
                }
            }
        }
    }

    #[test]
    fn bad_documents() {
        let z = Rational::from_integer(2.into());
        let bad_flag = json!({"m1": 0, "m2": 0, "flags": [["0","1"],["0","1"],["0","1"],["1","0"]],
            "u": {"deg": 2, "coeffs": ["0","0","0"]}, "v": {"deg": 2, "coeffs": ["0","0","1"]}, "w": {"deg": 2, "coeffs": ["0","0","0"]}});
        let e = qph_from(&bad_flag, &z).unwrap_err().to_string();
        assert!(e.contains("mark"), "{e}");
        let bad_deg = json!({"m1": 0, "m2": 0, "flags": [], "u": {"deg": 3, "coeffs": ["0"]}});
        assert!(qph_from(&bad_deg, &z).is_err());
        assert!(form_from(&json!({"deg": 1, "coeffs": ["1/0", "1"]})).is_err());
    }
}
