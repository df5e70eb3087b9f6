//! On-disk and on-screen formats.
//!
//! Every writer is deterministic: identical inputs give byte-identical
//! output. Field elements in headers and JSON are packed indices
//! `Σ c_i p^i` over the power basis, so `lambda = 1` is the element `1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use dbtorus_core::torus::ColumnLabel;
use dbtorus_core::{
    format_element, ColumnReport, Element, ElementStyle, FieldCtx, Matrix, NTorus, Pattern, SamplingCertificate, Torus,
    UpdateMatrix,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// Rows of digits, space separated.
pub fn digit_rows(rows: usize, cols: usize, get: impl Fn(usize, usize) -> u32) -> String {
    let mut out = String::new();
    for i in 0..rows {
        let row: Vec<u32> = (0..cols).map(|j| get(i, j)).collect();
        out.push_str(&join(&row, " "));
        out.push('\n');
    }
    out
}

pub fn csv_rows(rows: usize, cols: usize, get: impl Fn(usize, usize) -> u32) -> String {
    let mut out = String::new();
    for i in 0..rows {
        let row: Vec<u32> = (0..cols).map(|j| get(i, j)).collect();
        out.push_str(&join(&row, ","));
        out.push('\n');
    }
    out
}

/// Plain PBM: `P1`, then `width height`, then one line per row.
pub fn pbm(p: u32, rows: usize, cols: usize, get: impl Fn(usize, usize) -> u32) -> Result<String, CliError> {
    if p != 2 {
        return Err(CliError::Usage("pbm output needs p = 2".into()));
    }
    Ok(format!("P1\n{cols} {rows}\n{}", digit_rows(rows, cols, get)))
}

/// Header `p n s t lambda modulus` followed by the `s` value rows.
pub fn torus_text(torus: &Torus) -> String {
    let f = torus.field();
    format!(
        "{} {} {} {} {} {}\n{}",
        f.p(),
        f.n(),
        torus.s(),
        torus.t(),
        torus.form().lambda().index(f.p()),
        join(f.modulus(), ","),
        digit_rows(torus.s(), torus.t(), |i, j| torus.value(i, j))
    )
}

/// Field data shared by every JSON document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub n: usize,
    pub modulus: Vec<u32>,
}

impl FieldJson {
    pub fn of(ctx: &FieldCtx) -> Self {
        FieldJson { p: ctx.p(), n: ctx.n(), modulus: ctx.modulus().to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub column: usize,
    /// `"zero"` or `"shift"`.
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub coset: Vec<u64>,
    pub degree: usize,
    /// Constant term first, element syntax.
    pub coeffs: Vec<String>,
    pub second_leading: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnReportJson {
    pub m: usize,
    pub labels: Vec<LabelJson>,
    pub counts: BTreeMap<usize, usize>,
    pub zero_columns: usize,
    pub factors: Vec<FactorJson>,
}

impl ColumnReportJson {
    pub fn of(ctx: &FieldCtx, m: usize, report: &ColumnReport) -> Self {
        let labels = report
            .labels
            .iter()
            .enumerate()
            .map(|(column, l)| match l {
                ColumnLabel::Zero => LabelJson { column, label: "zero".into(), r: None },
                ColumnLabel::Shift(r) => LabelJson { column, label: "shift".into(), r: Some(*r) },
            })
            .collect();
        let factors = report
            .factors
            .iter()
            .map(|o| FactorJson {
                coset: o.coset.clone(),
                degree: o.poly.degree(),
                coeffs: o.poly.coeffs().iter().map(|c| format_element(ctx, c, ElementStyle::Power)).collect(),
                second_leading: o.poly.second_leading().map(|c| format_element(ctx, c, ElementStyle::Power)),
            })
            .collect();
        ColumnReportJson { m, labels, counts: report.counts.clone(), zero_columns: report.zero_columns, factors }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusJson {
    pub field: FieldJson,
    pub s: usize,
    pub t: usize,
    pub lambda: u64,
    /// Row-major, `s` rows of `t` digits.
    pub values: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub column_report: Option<ColumnReportJson>,
}

impl TorusJson {
    pub fn of(torus: &Torus, column_report: Option<ColumnReportJson>) -> Self {
        let f = torus.field();
        TorusJson {
            field: FieldJson::of(f),
            s: torus.s(),
            t: torus.t(),
            lambda: torus.form().lambda().index(f.p()),
            values: (0..torus.s()).map(|i| torus.row(i).to_vec()).collect(),
            column_report,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

/// What a saved torus claims: enough to rebuild it, plus the stored grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusFile {
    pub p: u32,
    pub n: usize,
    pub modulus: Vec<u32>,
    pub s: usize,
    pub t: usize,
    pub lambda: u64,
    pub values: Vec<Vec<u32>>,
}

/// Reads either the JSON document or the grid text format.
pub fn parse_torus_file(text: &str) -> Result<TorusFile, CliError> {
    if text.trim_start().starts_with('{') {
        let j: TorusJson = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad torus JSON: {e}")))?;
        return Ok(TorusFile {
            p: j.field.p,
            n: j.field.n,
            modulus: j.field.modulus,
            s: j.s,
            t: j.t,
            lambda: j.lambda,
            values: j.values,
        });
    }
    let bad = |what: &str| CliError::Usage(format!("bad torus text: {what}"));
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty"))?.split_whitespace().collect();
    if header.len() != 6 {
        return Err(bad("header must be `p n s t lambda modulus`"));
    }
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad(s));
    let values = lines
        .map(|l| l.split_whitespace().map(|d| num(d).map(|v| v as u32)).collect::<Result<Vec<u32>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TorusFile {
        p: num(header[0])? as u32,
        n: num(header[1])? as usize,
        s: num(header[2])? as usize,
        t: num(header[3])? as usize,
        lambda: num(header[4])?,
        modulus: parse_digits(header[5])?,
        values,
    })
}

/// Comma separated digits, e.g. `1,1,0,0,1`.
pub fn parse_digits(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|d| d.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("bad digit list {text:?}"))))
        .collect()
}

/// Pattern files: one `i j` pair per line, `#` starts a comment.
pub fn parse_pattern_text(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    let mut cells = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cell = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| CliError::Usage(format!("bad pattern line {line:?}"))))
            .collect::<Result<Vec<usize>, _>>()?;
        cells.push(cell);
    }
    Ok(cells)
}

pub fn pattern_text(pattern: &Pattern) -> String {
    pattern.cells().iter().map(|(i, j)| format!("{i} {j}\n")).collect()
}

/// Symbols of `GF(p^m)`: digits when `m = 1`, otherwise `0` or `pow:k`.
pub fn symbol_text(ctx: &FieldCtx, m: usize, e: &Element) -> String {
    match ctx.as_scalar(e) {
        Some(d) if m == 1 || d == 0 => d.to_string(),
        _ => format_element(ctx, e, ElementStyle::Power),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub field: FieldJson,
    pub m: usize,
    pub lambda: u64,
    pub window: usize,
    pub full: bool,
    pub feedback: Vec<String>,
    pub symbols: Vec<String>,
}

/// Header `p n m lambda feedback`, then one line of symbols.
pub fn sequence_text(ctx: &FieldCtx, m: usize, lambda: u64, feedback: &[Element], symbols: &[Element]) -> String {
    let fb: Vec<String> = feedback.iter().map(|e| symbol_text(ctx, m, e)).collect();
    let sy: Vec<String> = symbols.iter().map(|e| symbol_text(ctx, m, e)).collect();
    format!("{} {} {} {} {}\n{}\n", ctx.p(), ctx.n(), m, lambda, fb.join(","), sy.join(" "))
}

/// Flat N-torus: header `p n lambda dims...`, then values row-major with one
/// line per run of the last axis.
pub fn ntorus_text(nt: &NTorus) -> String {
    let f = nt.field();
    let mut out = format!("{} {} {} {}\n", f.p(), f.n(), nt.form().lambda().index(f.p()), join(nt.dims(), " "));
    let last = *nt.dims().last().expect("at least one axis");
    for chunk in nt.values().chunks(last) {
        out.push_str(&join(chunk, " "));
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NTorusJson {
    pub field: FieldJson,
    pub lambda: u64,
    pub dims: Vec<usize>,
    pub values: Vec<u32>,
}

impl NTorusJson {
    pub fn of(nt: &NTorus) -> Self {
        let f = nt.field();
        NTorusJson {
            field: FieldJson::of(f),
            lambda: nt.form().lambda().index(f.p()),
            dims: nt.dims().to_vec(),
            values: nt.values().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub field: FieldJson,
    pub s: usize,
    pub t: usize,
    pub lambda: u64,
    pub pattern: Vec<[usize; 2]>,
    /// Discrete logs of `A|_S`, in pattern order.
    pub basis_exponents: Vec<u64>,
    pub phi: Vec<Vec<u32>>,
    pub phi_inverse: Vec<Vec<u32>>,
}

impl CertificateJson {
    pub fn of(torus: &Torus, cert: &SamplingCertificate) -> Self {
        let f = torus.field();
        CertificateJson {
            field: FieldJson::of(f),
            s: torus.s(),
            t: torus.t(),
            lambda: torus.form().lambda().index(f.p()),
            pattern: cert.pattern.cells().iter().map(|&(i, j)| [i, j]).collect(),
            basis_exponents: cert.basis_elements.iter().map(|e| f.log(e).expect("nonzero")).collect(),
            phi: cert.phi.to_rows(),
            phi_inverse: cert.phi_inverse.to_rows(),
        }
    }
}

pub fn matrix_text(m: &Matrix) -> String {
    digit_rows(m.rows(), m.cols(), |i, j| m.get(i, j))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdateJson {
    pub shift: [usize; 2],
    pub input: Vec<[usize; 2]>,
    pub outputs: Vec<[usize; 2]>,
    pub coeffs: Vec<Vec<u32>>,
    /// `[cell index, source index]` pairs for values that just move.
    pub carried: Vec<[usize; 2]>,
}

impl UpdateJson {
    pub fn of(u: &UpdateMatrix) -> Self {
        UpdateJson {
            shift: [u.shift.0, u.shift.1],
            input: u.input.cells().iter().map(|&(i, j)| [i, j]).collect(),
            outputs: u.outputs.iter().map(|&(i, j)| [i, j]).collect(),
            coeffs: u.coeffs.to_rows(),
            carried: u.carried.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

/// Human readable column report.
pub fn column_report_text(ctx: &FieldCtx, report: &ColumnReport) -> String {
    let mut out = String::new();
    for (j, label) in report.labels.iter().enumerate() {
        match label {
            ColumnLabel::Zero => writeln!(out, "column {j}: zero").unwrap(),
            ColumnLabel::Shift(r) => writeln!(out, "column {j}: shift {r}").unwrap(),
        }
    }
    writeln!(out, "zero columns: {}", report.zero_columns).unwrap();
    for (r, c) in &report.counts {
        writeln!(out, "shift {r}: {c} columns").unwrap();
    }
    for o in &report.factors {
        let second = o.poly.second_leading().map(|c| format_element(ctx, c, ElementStyle::Power));
        writeln!(
            out,
            "factor coset {{{}}} degree {} second-leading {}",
            join(&o.coset, ","),
            o.poly.degree(),
            second.as_deref().unwrap_or("-")
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_files_allow_comments_and_commas() {
        let cells = parse_pattern_text("# header\n0 0\n1,2 # trailing\n\n  3 4\n").unwrap();
        assert_eq!(cells, vec![vec![0, 0], vec![1, 2], vec![3, 4]]);
        assert!(parse_pattern_text("0 x\n").is_err());
    }

    #[test]
    fn torus_text_parses_back() {
        let ctx = FieldCtx::new(2, 4).unwrap();
        let torus = Torus::new(&ctx, 3, 5, &dbtorus_core::LinearForm::trace(&ctx)).unwrap();
        let file = parse_torus_file(&torus_text(&torus)).unwrap();
        assert_eq!((file.p, file.n, file.s, file.t, file.lambda), (2, 4, 3, 5, 1));
        assert_eq!(file.modulus, ctx.modulus());
        assert_eq!(file.values[1], vec![0, 0, 1, 1, 0]);
        let json = parse_torus_file(&to_json(&TorusJson::of(&torus, None))).unwrap();
        assert_eq!(json, file);
    }

    #[test]
    fn pbm_header_is_width_then_height() {
        let body = pbm(2, 2, 3, |i, j| ((i + j) % 2) as u32).unwrap();
        assert_eq!(body, "P1\n3 2\n0 1 0\n1 0 1\n");
        assert!(pbm(3, 1, 1, |_, _| 0).is_err());
    }

    #[test]
    fn poly_symbols() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        assert_eq!(symbol_text(&ctx, 1, &ctx.scalar(2)), "2");
        assert_eq!(symbol_text(&ctx, 2, &ctx.zero()), "0");
        assert_eq!(symbol_text(&ctx, 2, &ctx.alpha()), "pow:1");
    }
}
