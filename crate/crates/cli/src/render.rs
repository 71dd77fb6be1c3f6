use std::fmt::Write as _;

use classprod::class_algebra::{CharacterTable, ClassProduct};
use classprod::verification::VerificationReport;
use classprod::ConjugatorWitness;
use serde::Serialize;

pub fn components_field(p: &ClassProduct) -> String {
    p.components()
        .iter()
        .map(|(t, a)| format!("{t}:{a}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn product_text(p: &ClassProduct) -> String {
    let mut out = format!("n = {}, lhs = {}, rhs = {}\neta = {}\n", p.n(), p.lhs, p.rhs, p.eta());
    let width = p.components().iter().map(|(t, _)| t.to_string().len()).max().unwrap_or(0);
    for (t, a) in p.components() {
        let _ = writeln!(out, "  {:<width$}  x {a}", t.to_string());
    }
    out
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn table_csv(rows: &[ClassProduct]) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "lhs", "rhs", "eta", "components"])?;
    for p in rows {
        w.write_record([
            p.n().to_string(),
            p.lhs.to_string(),
            p.rhs.to_string(),
            p.eta().to_string(),
            components_field(p),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn table_text(rows: &[ClassProduct]) -> String {
    let lw = rows.iter().map(|p| p.lhs.to_string().len()).max().unwrap_or(3).max(3);
    let rw = rows.iter().map(|p| p.rhs.to_string().len()).max().unwrap_or(3).max(3);
    let mut out = format!("{:<lw$}  {:<rw$}  eta  components\n", "lhs", "rhs");
    for p in rows {
        let _ = writeln!(
            out,
            "{:<lw$}  {:<rw$}  {:>3}  {}",
            p.lhs.to_string(),
            p.rhs.to_string(),
            p.eta(),
            components_field(p)
        );
    }
    out
}

#[derive(Serialize)]
struct TableRecord<'a> {
    n: usize,
    classes: Vec<String>,
    class_sizes: Vec<String>,
    irreducibles: Vec<String>,
    dims: Vec<String>,
    values: &'a [Vec<i128>],
}

pub fn chartable_json(t: &CharacterTable) -> String {
    let labels = |v: &[classprod::CycleType]| v.iter().map(|c| c.to_string()).collect();
    json(&TableRecord {
        n: t.n(),
        classes: labels(t.classes()),
        class_sizes: t.class_sizes().iter().map(|s| s.to_string()).collect(),
        irreducibles: labels(t.irreducibles()),
        dims: t.dims().iter().map(|d| d.to_string()).collect(),
        values: t.values(),
    })
}

pub fn chartable_csv(t: &CharacterTable) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["irrep".to_string()];
    header.extend(t.classes().iter().map(|c| c.to_string()));
    w.write_record(&header)?;
    let mut sizes = vec!["class_size".to_string()];
    sizes.extend(t.class_sizes().iter().map(|s| s.to_string()));
    w.write_record(&sizes)?;
    for (irrep, row) in t.irreducibles().iter().zip(t.values()) {
        let mut rec = vec![irrep.to_string()];
        rec.extend(row.iter().map(|v| v.to_string()));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn chartable_text(t: &CharacterTable) -> String {
    let mut cells: Vec<Vec<String>> = Vec::new();
    let mut header = vec![String::new()];
    header.extend(t.classes().iter().map(|c| format!("[{c}]")));
    cells.push(header);
    let mut sizes = vec!["|C|".to_string()];
    sizes.extend(t.class_sizes().iter().map(|s| s.to_string()));
    cells.push(sizes);
    for (irrep, row) in t.irreducibles().iter().zip(t.values()) {
        let mut line = vec![format!("chi[{irrep}]")];
        line.extend(row.iter().map(|v| v.to_string()));
        cells.push(line);
    }
    let cols = cells[0].len();
    let widths: Vec<usize> = (0..cols).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (cell, &w))| if i == 0 { format!("{cell:<w$}") } else { format!("{cell:>w$}") })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct ConstructionRecord<'a> {
    lemma: u32,
    construction: &'a str,
    n: usize,
    alpha: String,
    beta: String,
    #[serde(flatten)]
    witness: &'a ConjugatorWitness,
}

pub fn witness_json(lemma: u32, name: &str, alpha: &classprod::Permutation, beta: &classprod::Permutation, w: &ConjugatorWitness) -> String {
    json(&ConstructionRecord {
        lemma,
        construction: name,
        n: alpha.n(),
        alpha: alpha.to_string(),
        beta: beta.to_string(),
        witness: w,
    })
}

pub fn witness_text(alpha: &classprod::Permutation, beta: &classprod::Permutation, w: &ConjugatorWitness) -> String {
    let conj = alpha.conjugate(&w.sigma).expect("same degree");
    let fixed: Vec<String> = w.fixed_points.iter().map(|p| p.to_string()).collect();
    let rows = [
        ("alpha", alpha.to_string()),
        ("beta", beta.to_string()),
        ("sigma", w.sigma.to_string()),
        ("alpha^sigma", conj.to_string()),
        ("product", w.product.to_string()),
        ("fixed points", format!("{{{}}}", fixed.join(", "))),
        ("route", w.route.clone()),
    ];
    rows.iter().map(|(k, v)| format!("{k:<12}  {v}\n")).collect()
}

pub fn reports_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let total = reports.len();
    let noun = if total == 1 { "statement" } else { "statements" };
    if failed == 0 {
        let _ = writeln!(out, "{total} {noun} passed");
    } else {
        let _ = writeln!(out, "{failed} of {total} {noun} failed");
    }
    out
}
