use anyhow::Result;
use facenum::constructions::BistellarMove;
use facenum::enumeration::{
    ds_defect, f_vector, fine_ds_defect, fine_f, fine_h, g_vector, h_vector, Coloring, FlagVector,
};
use facenum::homology::{is_eulerian, is_semi_eulerian};
use facenum::posets::{
    ab_polynomial, bayer_billera_defects, cd_index, flag_vectors, semi_eulerian_correction,
    toric_ds_defect, toric_h, GradedPoset,
};
use facenum::{betti, manifold_report, Error, FieldSpec, SimplicialComplex};
use serde_json::{json, Map, Value};

use crate::Format;

/// Ordered key/value results; JSON is the full form, the table a projection.
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    fn new() -> Self {
        Report { fields: Vec::new() }
    }

    fn put(&mut self, key: &str, value: impl serde::Serialize) {
        self.fields.push((
            key.to_string(),
            serde_json::to_value(value).expect("report values serialize"),
        ));
    }

    pub fn emit(&self, format: Format, seed: u64) {
        match format {
            Format::Json => {
                let mut m = Map::new();
                for (k, v) in &self.fields {
                    m.insert(k.clone(), v.clone());
                }
                m.insert("seed".into(), json!(seed));
                println!(
                    "{}",
                    serde_json::to_string_pretty(&Value::Object(m)).expect("valid json")
                );
            }
            Format::Table => {
                let w = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.fields {
                    println!("{k:<w$}  {}", compact(v));
                }
            }
        }
    }

    pub fn moved(
        before: &SimplicialComplex,
        after: &SimplicialComplex,
        mv: &BistellarMove,
    ) -> Report {
        let mut r = Report::new();
        r.put("move", format!("F = {}, G = {}", mv.f, mv.g));
        r.put("index", mv.index());
        r.put("h_before", h_vector(before).entries());
        r.put("h_after", h_vector(after).entries());
        r
    }
}

/// Tuples for arrays of scalars, JSON otherwise.
fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a)
            if a.iter()
                .all(|x| x.is_number() || x.is_string() || x.is_boolean()) =>
        {
            let parts: Vec<String> = a.iter().map(compact).collect();
            format!("({})", parts.join(","))
        }
        other => other.to_string(),
    }
}

pub fn analyze(
    k: &SimplicialComplex,
    field: FieldSpec,
    coloring: Option<&Coloring>,
) -> Result<Report> {
    let mut r = Report::new();
    let d = k.d();
    r.put("vertices", k.n_vertices());
    r.put("facets", k.n_facets());
    r.put("dimension", k.dim());
    r.put("pure", k.is_pure());
    r.put("f", f_vector(k).proper());
    r.put("h", h_vector(k).entries());
    r.put("g", g_vector(k).entries());
    r.put("euler_characteristic", k.euler_characteristic());
    let b = betti(k, field);
    r.put("field", field.to_string());
    r.put(
        "reduced_betti",
        (0..d as isize).map(|i| b.get(i)).collect::<Vec<_>>(),
    );
    match manifold_report(k, field) {
        Ok(m) => {
            r.put("homology_manifold", m.is_homology_manifold);
            r.put("boundary_facets", m.boundary.len());
            r.put("orientable", m.orientable);
            r.put("closed", m.closed);
            if let Some(w) = &m.witness {
                r.put("non_manifold_face", w.to_string());
            }
        }
        Err(e) => r.put("manifold_report", format!("unavailable: {e}")),
    }
    match (is_semi_eulerian(k), is_eulerian(k)) {
        (Ok(s), Ok(e)) => {
            r.put("semi_eulerian", s);
            r.put("eulerian", e);
        }
        (Err(e), _) | (_, Err(e)) => r.put("semi_eulerian", format!("unavailable: {e}")),
    }
    if let Ok(defect) = ds_defect(k) {
        r.put("ds_defect", defect);
    }
    if let Some(c) = coloring {
        let ff = fine_f(k, c)?;
        let fh = fine_h(&ff);
        r.put("type", &c.type_vector);
        r.put("fine_f", &ff.entries);
        r.put("fine_h", &fh.entries);
        r.put(
            "fine_ds_defect",
            &fine_ds_defect(&fh, k.euler_characteristic()).entries,
        );
        if c.type_vector.iter().all(|&a| a == 1) {
            let flag = FlagVector::from_fine(&fh)?;
            r.put("flag_h", flag.ab_words());
        }
    }
    Ok(r)
}

pub fn toric(p: &GradedPoset) -> Result<Report> {
    let mut r = Report::new();
    let t = toric_h(p);
    r.put("class", format!("{:?}", p.classify()));
    r.put("toric_h", t.to_string());
    r.put("coefficients", &t.th);
    r.put("toric_g", &t.g);
    r.put("order_complex_euler", p.order_complex_euler());
    match toric_ds_defect(p) {
        Ok(defect) => r.put("toric_ds_defect", defect),
        Err(e) => r.put("toric_ds_defect", format!("unavailable: {e}")),
    }
    Ok(r)
}

pub fn cd(p: &GradedPoset) -> Report {
    let mut r = Report::new();
    let ab = ab_polynomial(p);
    r.put("ab", ab.to_string());
    match cd_index(&ab) {
        Ok(cd) => r.put("cd", cd.to_string()),
        Err(Error::NotInCdSpan(residual)) => {
            r.put("cd", "not in the span of cd-monomials");
            r.put("residual", residual);
            let defects: Vec<String> = bayer_billera_defects(p)
                .iter()
                .filter(|b| b.residual() != 0)
                .map(|b| {
                    format!(
                        "S = {:?}, (i, k) = ({}, {}): residual {}",
                        b.set,
                        b.i,
                        b.k,
                        b.residual()
                    )
                })
                .collect();
            r.put("bayer_billera_defects", defects);
            if let Ok(fx) = semi_eulerian_correction(p) {
                r.put("semi_eulerian_correction", fx.ab_words());
            }
        }
        Err(e) => r.put("cd", format!("unavailable: {e}")),
    }
    r
}

pub fn flag(p: &GradedPoset) -> Report {
    let mut r = Report::new();
    let (f, h) = flag_vectors(p);
    r.put("rank", p.rank());
    r.put("flag_f", f.ab_words());
    r.put("flag_h", h.ab_words());
    r
}

pub fn classify(p: &GradedPoset) -> Report {
    let mut r = Report::new();
    r.put("elements", p.len());
    r.put("rank", p.rank());
    r.put("class", format!("{:?}", p.classify()));
    r.put("mobius_bottom_top", p.mobius_total());
    r.put("order_complex_euler", p.order_complex_euler());
    r
}
