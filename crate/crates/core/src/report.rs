//! Versioned JSON documents for every pipeline stage. Rationals are written
//! as canonical `p/q` strings (integers as `p`) and object keys are sorted,
//! so identical inputs give byte-identical output.

use serde_json::{json, Map, Value};

use crate::bandsearch::{Band, BandEnd, ResultantProfile, SweepStats};
use crate::conicfit::{classify, Conic, ConicFamily, COEFF_NAMES};
use crate::equilibria::{linearize, EquilibriumSet};
use crate::exactalg::{rational_string, AlgebraicReal, BiPoly, Rational, UPoly};
use crate::infinity::InfinityReport;
use crate::numoracle::CycleEstimate;
use crate::regions::{InnerBoundary, PBRegionReport, SignAlongConic};
use crate::sysparse::SystemSpec;
use crate::transversal::{Certificate, FailureWitness, Verdict};

pub const SCHEMA: &str = "pbconic/1";

/// Wraps `body` (an object) with the schema tag and document kind.
pub fn document(kind: &str, body: Value) -> Value {
    let mut m = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    };
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    Value::Object(m)
}

/// Pretty JSON text with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn rational(q: &Rational) -> Value {
    json!(rational_string(q))
}

fn upoly(p: &UPoly, var: &str) -> Value {
    json!(p.display_in(var))
}

fn bipoly(p: &BiPoly) -> Value {
    json!(p.to_string())
}

pub fn algebraic(r: &AlgebraicReal, var: &str) -> Value {
    json!({
        "poly": r.defining_poly().display_in(var),
        "interval": [rational(r.lo()), rational(r.hi())],
        "approx": r.to_f64(),
    })
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn system(sys: &SystemSpec) -> Value {
    let params: Map<String, Value> = sys.params.iter().map(|(k, v)| (k.clone(), rational(v))).collect();
    json!({
        "dx": bipoly(&sys.p),
        "dy": bipoly(&sys.q),
        "degree": sys.degree(),
        "params": params,
        "symmetric": sys.symmetric,
        "conic_form": sys.default_conic_form(),
    })
}

pub fn family(fam: &ConicFamily) -> Value {
    let sym = fam.axis.symbol();
    let coeffs: Map<String, Value> = COEFF_NAMES
        .iter()
        .zip(&fam.s)
        .map(|(n, c)| (n.to_string(), json!(c.display_in(sym))))
        .collect();
    json!({
        "axis": fam.axis,
        "offset": rational(&fam.offset),
        "form": fam.form,
        "f": fam.display_f(sym),
        "coefficients": coeffs,
        "achieved_order": fam.achieved_order,
        "order_is_lower_bound": fam.order_is_lower_bound,
        "rank_deficient": fam.rank_deficient,
        "series_order": fam.series_order,
    })
}

pub fn conic(c: &Conic) -> Value {
    let coeffs: Map<String, Value> = COEFF_NAMES
        .iter()
        .zip(&c.s)
        .map(|(n, v)| (n.to_string(), rational(v)))
        .collect();
    let class = classify(c).ok();
    json!({
        "f": c.f().to_string(),
        "coefficients": coeffs,
        "base_point": [rational(&c.base.0), rational(&c.base.1)],
        "class": class.as_ref().map(|k| format!("{:?}", k.kind)),
        "discriminant": rational(&c.discriminant()),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    let e = &c.evidence;
    let contacts: Vec<Value> = c
        .contact_points
        .iter()
        .map(|p| {
            json!({
                "param": p.param.as_ref().map(|r| algebraic(r, "m")),
                "multiplicity": p.multiplicity,
                "point": [finite(p.approx.0), finite(p.approx.1)],
            })
        })
        .collect();
    let factors: Vec<Value> = e
        .factors
        .iter()
        .map(|(f, m)| json!({"factor": f.display_in("m"), "multiplicity": m}))
        .collect();
    json!({
        "conic": conic(&c.conic),
        "class": format!("{:?}", c.conic_class),
        "sign": c.sign,
        "contact_points": contacts,
        "base_contact": c.base_contact,
        "vertical_sign": c.vertical_sign,
        "evidence": {
            "numerator": upoly(&e.pulled_back.numerator, "m"),
            "denominator": upoly(&e.pulled_back.d, "m"),
            "denominator_power": e.pulled_back.power,
            "factors": factors,
            "odd_part": upoly(&e.odd_part, "m"),
            "sturm_variations": [e.sturm_variations.0, e.sturm_variations.1],
            "sample": rational(&e.sample),
            "sample_sign": e.sample_sign,
        },
    })
}

pub fn failure(w: &FailureWitness) -> Value {
    json!({
        "conic": conic(&w.conic),
        "root": algebraic(&w.root, "m"),
        "multiplicity": w.multiplicity,
        "point": w.approx_point.map(|(x, y)| [x, y]),
        "numerator": upoly(&w.pulled_back.numerator, "m"),
    })
}

pub fn verdict(v: &Verdict) -> Value {
    match v {
        Verdict::Certified(c) => json!({"verdict": "Certified", "certificate": certificate(c)}),
        Verdict::Failure(w) => json!({"verdict": "Failure", "witness": failure(w)}),
    }
}

fn band_end(e: &BandEnd, var: &str) -> Value {
    match e {
        BandEnd::Breakpoint(r) => json!({"breakpoint": algebraic(r, var)}),
        BandEnd::SearchLimit(q) => json!({"search_limit": rational(q)}),
    }
}

pub fn band(b: &Band) -> Value {
    let var = b.axis.symbol();
    json!({
        "axis": b.axis,
        "lo": band_end(&b.lo, var),
        "hi": band_end(&b.hi, var),
        "inner": [rational(&b.inner.0), rational(&b.inner.1)],
        "witness": rational(&b.witness),
        "class": format!("{:?}", b.class),
        "sign": b.sign,
        "merged_gaps": b.gaps,
        "certificate": certificate(&b.certificate),
    })
}

pub fn sweep(bands: &[Band], stats: &SweepStats, profile: &ResultantProfile, var: &str) -> Value {
    let factors: Vec<Value> = profile
        .factors
        .iter()
        .map(|f| json!({"label": f.label, "poly": f.poly.display_in(var)}))
        .collect();
    json!({
        "bands": bands.iter().map(band).collect::<Vec<_>>(),
        "stats": {
            "breakpoints": stats.breakpoints,
            "gaps": stats.gaps,
            "certified_gaps": stats.certified_gaps,
        },
        "profile": {
            "zero_resultant": profile.zero_resultant,
            "factors": factors,
            "coprime_base_degrees": profile.coprime_base.iter().map(|p| p.deg()).collect::<Vec<_>>(),
        },
    })
}

pub fn equilibria(sys: &SystemSpec, set: &EquilibriumSet) -> Value {
    let pts: Vec<Value> = set
        .points
        .iter()
        .map(|e| {
            let lin = linearize(sys, e);
            let (x, y) = e.approx();
            json!({
                "approx": [x, y],
                "exact": e.rational_coords().map(|(a, b)| [rational(&a), rational(&b)]),
                "t": algebraic(&e.t, "t"),
                "shear": rational(&e.shear),
                "multiplicity": e.multiplicity,
                "kind": format!("{:?}", lin.kind),
                "det_sign": lin.det_sign,
                "trace_sign": lin.trace_sign,
                "is_origin": e.is_origin(),
            })
        })
        .collect();
    json!({
        "count": set.points.len(),
        "points": pts,
        "eliminant": upoly(&set.eliminant, "t"),
        "shear": rational(&set.shear),
    })
}

pub fn infinity(r: &InfinityReport) -> Value {
    let pts: Vec<Value> = r
        .equator_points
        .iter()
        .map(|p| {
            json!({
                "u": algebraic(&p.u, "u"),
                "multiplicity": p.multiplicity,
                "eigen_signs": [p.eigen_signs.0, p.eigen_signs.1],
                "kind": format!("{:?}", p.kind),
                "ftilde_sign": p.ftilde_sign,
            })
        })
        .collect();
    json!({
        "chart": {
            "u_dot": r.chart.udot.display_with(("u", "v")),
            "v_dot": r.chart.vdot.display_with(("u", "v")),
            "time_rescale_power": r.chart.time_rescale_power,
            "divided_by_v": r.chart.divided_by_v,
        },
        "equator_points": pts,
        "x_direction": {
            "singular": r.x_direction.singular,
            "kind": r.x_direction.kind.map(|k| format!("{k:?}")),
            "ftilde_sign": r.x_direction.ftilde_sign,
        },
        "ftilde": r.ftilde.as_ref().map(|f| f.display_with(("u", "v"))),
    })
}

fn sign_along(s: &SignAlongConic) -> Value {
    json!({
        "poly": s.poly.display_in("m"),
        "real_roots": s.real_roots,
        "sample_sign": s.sample_sign,
        "missed_point_sign": s.missed_point_sign,
    })
}

pub fn region(r: &PBRegionReport) -> Value {
    let inner = match &r.inner {
        InnerBoundary::Conic(c) => json!({"conic": certificate(c)}),
        InnerBoundary::Origin(k) => json!({"origin": format!("{k:?}")}),
    };
    let audit: Vec<Value> = r
        .equilibrium_audit
        .iter()
        .map(|a| {
            json!({
                "approx": [a.approx.0, a.approx.1],
                "kind": format!("{:?}", a.kind),
                "is_origin": a.is_origin,
                "in_region": a.in_region,
                "on_boundary": a.on_boundary,
            })
        })
        .collect();
    json!({
        "inner": inner,
        "outer": certificate(&r.outer),
        "nestedness": r.nestedness.as_ref().map(|n| json!({
            "outer_on_inner": sign_along(&n.outer_on_inner),
            "inner_on_outer": n.inner_on_outer.as_ref().map(sign_along),
        })),
        "equilibrium_audit": audit,
        "infinity": r.infinity.as_ref().map(infinity),
        "conclusion": serde_json::to_value(&r.conclusion).expect("conclusion serializes"),
        "valid": r.conclusion.is_valid(),
        "narrative": r.narrative,
    })
}

pub fn cycle(c: &CycleEstimate) -> Value {
    json!({
        "crossing": c.crossing,
        "period": c.period,
        "residual": c.residual,
        "multiplier": c.multiplier,
        "iterations": c.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn rationals_are_strings_and_keys_sorted() {
        let c = Conic::new([int(0), int(0), rat(-1, 4), int(0), rat(-1, 4)], (int(2), int(0))).unwrap();
        let v = document("conic", conic(&c));
        assert_eq!(v["schema"], "pbconic/1");
        assert_eq!(v["coefficients"]["s3"], "-1/4");
        assert_eq!(v["base_point"][0], "2");
        let text = render(&v);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(text, render(&v));
    }
}
