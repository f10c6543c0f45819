//! Human, CSV and JSON renderings of payloads.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use symcover::bounds::{GhConstruction, GhRow};
use symcover::certify::DegreeCertificate;
use symcover::report::BoundReport;
use symcover::search::CoverCertificate;

use crate::commands::{CheckResult, ShapesResult, VerifyResult};
use crate::payload::{Kind, Payload};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Json,
}

fn typed<T: DeserializeOwned>(v: &Value) -> T {
    serde_json::from_value(v.clone()).expect("payload matches its kind")
}

/// The serde name of a unit enum value.
fn tag(v: &impl Serialize) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    let cells: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    cells.join(",") + "\n"
}

fn list(items: impl IntoIterator<Item = impl ToString>) -> String {
    let items: Vec<String> = items.into_iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// Header printed once before streamed rows.
pub fn header(kind: Kind, format: Format) -> String {
    match (kind, format) {
        (_, Format::Json) => String::new(),
        (Kind::Bounds, Format::Csv) => {
            "n,g,h,delta_e_size,gamma,gamma_source,gamma_prime_upper,r_lo,r_hi\n".into()
        }
        (Kind::Bounds, Format::Human) => {
            format!(
                "{:>5} {:>6} {:>6} {:>6} {:>6} {:>6}  {}\n",
                "n", "g", "h", "|δ_E|", "γ", "γ'<=", "r"
            )
        }
        (Kind::CompareGh, Format::Csv) => "n,g,h,sign\n".into(),
        (Kind::CompareGh, Format::Human) => format!("{:>6} {:>8} {:>8}\n", "n", "g", "h"),
        _ => String::new(),
    }
}

/// One streamed row of a table kind.
pub fn row(payload: &Payload, format: Format) -> String {
    if format == Format::Json {
        return serde_json::to_string(&payload.data).expect("values serialize") + "\n";
    }
    match payload.kind {
        Kind::Bounds => bounds_row(&typed(&payload.data), format),
        Kind::CompareGh => {
            let rows: Vec<GhRow> = typed(&payload.data);
            rows.iter().map(|r| gh_row(r, format)).collect()
        }
        _ => render(payload, format),
    }
}

fn bounds_row(r: &BoundReport, format: Format) -> String {
    let [lo, hi] = r.r_interval;
    match format {
        Format::Csv => csv_line(&[
            r.n.to_string(),
            opt(r.g),
            opt(r.h),
            opt(r.delta_e_size),
            opt(r.gamma),
            r.gamma_source.clone(),
            r.gamma_prime_upper.to_string(),
            lo.to_string(),
            hi.to_string(),
        ]),
        _ => {
            let interval = match r.r_point() {
                Some(p) => p.to_string(),
                None => format!("[{lo}, {hi}], r - γ ∈ {{0, 1}}"),
            };
            format!(
                "{:>5} {:>6} {:>6} {:>6} {:>6} {:>6}  {}\n",
                r.n,
                opt(r.g),
                opt(r.h),
                opt(r.delta_e_size),
                opt(r.gamma),
                r.gamma_prime_upper,
                interval
            )
        }
    }
}

fn relation(sign: &str) -> &'static str {
    match sign {
        "less" => "g < h",
        "equal" => "g = h",
        _ => "g > h",
    }
}

fn gh_row(r: &GhRow, format: Format) -> String {
    match format {
        Format::Csv => csv_line(&[
            r.n.to_string(),
            r.g.to_string(),
            r.h.to_string(),
            r.sign.clone(),
        ]),
        _ => format!("{:>6} {:>8} {:>8}  {}\n", r.n, r.g, r.h, relation(&r.sign)),
    }
}

/// A complete rendering of a single payload.
pub fn render(payload: &Payload, format: Format) -> String {
    if format == Format::Json {
        return serde_json::to_string_pretty(&payload.data).expect("values serialize") + "\n";
    }
    let d = &payload.data;
    match payload.kind {
        Kind::Bounds | Kind::CompareGh => header(payload.kind, format) + &row(payload, format),
        Kind::Verify => verify(&typed(d), format),
        Kind::Search => search(&typed(d), format),
        Kind::Certify => certify(&typed(d), format),
        Kind::Shapes => shapes(&typed(d), format),
        Kind::GhConstruction => construction(&typed(d), format),
        Kind::CheckCertificate => check(&typed(d), format),
    }
}

fn verify(v: &VerifyResult, format: Format) -> String {
    let special = v.special.as_ref().map(|s| s.special);
    let shapes: Vec<String> = v
        .special
        .iter()
        .flat_map(|s| s.uncovered_shapes.iter().map(|x| x.to_string()))
        .collect();
    let label = v
        .set
        .name
        .map_or_else(|| "set".to_string(), |n| format!("{n}({})", v.set.n));
    if format == Format::Csv {
        let types: Vec<String> = v.basic.uncovered.iter().map(|t| t.to_string()).collect();
        return csv_line(&[
            "n".into(),
            "set".into(),
            "basic".into(),
            "special".into(),
            "uncovered_types".into(),
            "uncovered_shapes".into(),
        ]) + &csv_line(&[
            v.set.n.to_string(),
            v.set.to_string(),
            v.basic.basic.to_string(),
            opt(special),
            types.join(" "),
            shapes.join(" "),
        ]);
    }
    let mut out = format!("{label} = {}\n", v.set);
    if v.basic.basic {
        out += "basic: yes\n";
    } else {
        let _ = writeln!(
            out,
            "basic: no, witness {} ({} uncovered types)",
            opt(v.witness.as_ref()),
            v.basic.uncovered.len()
        );
    }
    match &v.special {
        Some(s) if s.special => {
            let how = if s.oracle_fallbacks == 0 {
                "sufficient rules only".to_string()
            } else {
                format!("{} shapes by explicit enumeration", s.oracle_fallbacks)
            };
            let _ = writeln!(out, "special: yes ({how})");
        }
        Some(_) => {
            let _ = writeln!(out, "special: no, uncovered shapes {}", shapes.join(" "));
        }
        None => {}
    }
    out
}

fn search(c: &CoverCertificate, format: Format) -> String {
    if format == Format::Csv {
        let mut out = csv_line(&["type".into(), "component".into()]);
        for a in &c.assignment {
            out += &csv_line(&[a.ty.to_string(), a.component.to_string()]);
        }
        return out;
    }
    let mut out = String::new();
    match c.size {
        Some(k) => {
            let _ = writeln!(
                out,
                "S_{}: minimum cover size {k}: {}",
                c.n,
                list(&c.chosen)
            );
        }
        None => {
            let _ = writeln!(
                out,
                "S_{}: no cover of size at most {} (infeasible)",
                c.n, c.cap
            );
        }
    }
    let k = &c.constraints;
    if !k.force_in.is_empty() || !k.force_out.is_empty() || k.max_size.is_some() {
        let _ = writeln!(
            out,
            "constraints: in {}, out {}, max size {}",
            list(&k.force_in),
            list(&k.force_out),
            opt(k.max_size)
        );
    }
    match c.optimality.infeasible_at {
        Some(m) => {
            let _ = writeln!(out, "optimality: every size up to {m} exhausted");
        }
        None => out += "optimality: no smaller size to exclude\n",
    }
    if !c.over_approximated.is_empty() {
        let _ = writeln!(
            out,
            "admitted only for lack of an exclusion: {}",
            list(&c.over_approximated)
        );
    }
    out
}

fn certify(c: &DegreeCertificate, format: Format) -> String {
    if format == Format::Csv {
        let mut out = csv_line(&["type".into(), "component".into(), "rule".into()]);
        for t in &c.discharged {
            out += &csv_line(&[t.ty.to_string(), opt(t.component), tag(&t.rule)]);
        }
        return out;
    }
    let mut out = c.summary.clone() + "\n";
    for t in &c.discharged {
        let _ = writeln!(
            out,
            "  {} excluded from {} by {}",
            t.ty,
            opt(t.component),
            tag(&t.rule)
        );
    }
    for u in &c.unresolved {
        let _ = writeln!(out, "unresolved: {u}");
    }
    out
}

fn shapes(s: &ShapesResult, format: Format) -> String {
    let mut out = match format {
        Format::Csv => csv_line(&[
            "shape".into(),
            "sigma_type".into(),
            "component".into(),
            "status".into(),
            "rule".into(),
        ]),
        _ => match &s.set {
            Some(set) => format!("{} shapes of S_{} against {set}\n", s.shapes.len(), s.n),
            None => format!("{} shapes of S_{}\n", s.shapes.len(), s.n),
        },
    };
    for r in &s.shapes {
        let status = r.status.map(|x| tag(&x));
        let rule = r.rule.map(|x| tag(&x));
        if format == Format::Csv {
            out += &csv_line(&[
                r.shape.to_string(),
                r.sigma_type.to_string(),
                opt(r.component),
                opt(status),
                opt(rule),
            ]);
        } else if s.set.is_some() {
            let by = match (r.component, rule) {
                (Some(c), Some(rule)) => format!("{c} ({rule})"),
                _ => "uncovered".into(),
            };
            let _ = writeln!(out, "  {:<24} {by}", r.shape.to_string());
        } else {
            let _ = writeln!(out, "  {}", r.shape);
        }
    }
    out
}

fn construction(c: &GhConstruction, format: Format) -> String {
    let primes: Vec<String> = c.primes.iter().map(|p| p.to_string()).collect();
    match format {
        Format::Csv => {
            csv_line(&[
                "n".into(),
                "primes".into(),
                "g".into(),
                "h".into(),
                "g_recount".into(),
                "sign".into(),
            ]) + &csv_line(&[
                c.n.to_string(),
                primes.join(" "),
                c.g.to_string(),
                c.h.to_string(),
                c.g_recount.to_string(),
                c.sign.clone(),
            ])
        }
        _ => format!(
            "n = {} = {}\ng(n) = {} (recount {}), h(n) = {}: {}\n",
            primes.join("·"),
            c.n,
            c.g,
            c.g_recount,
            c.h,
            relation(&c.sign)
        ),
    }
}

fn check(c: &CheckResult, format: Format) -> String {
    match format {
        Format::Csv => {
            csv_line(&["file".into(), "kind".into(), "valid".into(), "error".into()])
                + &csv_line(&[
                    c.file.clone(),
                    c.kind.clone(),
                    c.valid.to_string(),
                    opt(c.error.as_ref()),
                ])
        }
        _ => match &c.error {
            None => format!("{}: valid {} certificate\n", c.file, c.kind),
            Some(e) => format!("{}: {e}\n", c.file),
        },
    }
}
