use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use dbtorus_core::dbseq::{lift_to_full, DbSequence};
use dbtorus_core::patterns::{elements_rank, kronecker_pattern, lemma_witness};
use dbtorus_core::{
    find_primitive_modulus, parse_element, Element, FieldCtx, LinearForm, NTorus, Pattern, Torus, TranslateOffset,
    UpdateTarget, DEFAULT_TABLE_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::*;
use crate::formats::*;
use crate::CliError;

type Res<T = ()> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(CliError::Usage(msg.into()))
}

fn table_cap() -> Res<u64> {
    match std::env::var("TORUS_TABLE_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("TORUS_TABLE_CAP={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_TABLE_CAP),
    }
}

fn build_field(p: u32, n: usize, modulus: Option<&[u32]>) -> Res<FieldCtx> {
    Ok(FieldCtx::with_options(p, n, modulus, table_cap()?)?)
}

fn field_of(args: &FieldArgs) -> Res<FieldCtx> {
    let Some(n) = args.n else { return usage("-n is required") };
    let modulus = args.modulus.as_deref().map(parse_digits).transpose()?;
    build_field(args.p, n, modulus.as_deref())
}

/// Packed index (`5`) or element syntax (`pow:3`, `poly:[1,0,1,0]`).
fn parse_lambda(ctx: &FieldCtx, text: &str) -> Res<Element> {
    let text = text.trim();
    if !text.is_empty() && text.bytes().all(|b| b.is_ascii_digit()) {
        let idx: u64 = text.parse().map_err(|_| CliError::Usage(format!("bad lambda {text:?}")))?;
        return Ok(ctx.from_index(idx)?);
    }
    Ok(parse_element(ctx, text)?)
}

fn form_of(ctx: &FieldCtx, lambda: &str) -> Res<LinearForm> {
    Ok(LinearForm::new(ctx, parse_lambda(ctx, lambda)?)?)
}

fn read_file(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Everything needed to build a torus, resolved from flags or a file.
struct TorusSpec {
    ctx: FieldCtx,
    s: usize,
    t: usize,
    form: LinearForm,
    stored: Option<Vec<Vec<u32>>>,
}

impl TorusSpec {
    fn resolve(args: &TorusArgs) -> Res<Self> {
        if let Some(path) = &args.input {
            let file = parse_torus_file(&read_file(path)?)?;
            let ctx = build_field(file.p, file.n, Some(&file.modulus))?;
            let form = LinearForm::new(&ctx, ctx.from_index(file.lambda)?)?;
            return Ok(TorusSpec { ctx, s: file.s, t: file.t, form, stored: Some(file.values) });
        }
        let ctx = field_of(&args.field)?;
        let order = ctx.group_order() as usize;
        let (s, t) = match (args.s, args.t) {
            (Some(s), Some(t)) => (s, t),
            (Some(s), None) if s > 0 && order.is_multiple_of(s) => (s, order / s),
            (None, Some(t)) if t > 0 && order.is_multiple_of(t) => (order / t, t),
            (None, None) => return usage("give -s, -t or both"),
            (s, t) => return Err(dbtorus_core::Error::BadFactorization { s: s.unwrap_or(0), t: t.unwrap_or(0) }.into()),
        };
        let form = form_of(&ctx, &args.lambda)?;
        Ok(TorusSpec { ctx, s, t, form, stored: None })
    }

    fn build(&self) -> Res<Torus<'_>> {
        let torus = Torus::new(&self.ctx, self.s, self.t, &self.form)?;
        if let Some(stored) = &self.stored {
            let same = stored.len() == self.s && stored.iter().enumerate().all(|(i, row)| row == torus.row(i));
            if !same {
                return Err(CliError::Mismatch("stored grid differs from the rebuilt torus".into()));
            }
        }
        Ok(torus)
    }
}

fn parse_pattern(ctx: &FieldCtx, spec: &str) -> Res<Pattern> {
    if let Some(m) = spec.strip_prefix("kronecker:") {
        let m: usize = m.trim().parse().map_err(|_| CliError::Usage(format!("bad pattern {spec:?}")))?;
        return Ok(kronecker_pattern(ctx, m)?);
    }
    let mut pairs = Vec::new();
    for c in parse_cells(spec)? {
        match c.as_slice() {
            [i, j] => pairs.push((*i, *j)),
            _ => return usage(format!("pattern cells need two indices, got {c:?}")),
        }
    }
    Ok(Pattern::new(pairs)?)
}

/// `cells:a,b;c,d` or a file path; shared by the 2-D and N-D parsers.
fn parse_cells(spec: &str) -> Res<Vec<Vec<usize>>> {
    if let Some(list) = spec.strip_prefix("cells:") {
        return parse_pattern_text(&list.replace(';', "\n"));
    }
    parse_pattern_text(&read_file(Path::new(spec))?)
}

fn parse_pair(text: &str) -> Res<(i64, i64)> {
    let parts: Vec<&str> = text.split(',').collect();
    let num = |s: &str| s.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad pair {text:?}")));
    match parts.as_slice() {
        [a, b] => Ok((num(a)?, num(b)?)),
        _ => usage(format!("expected `a,b`, got {text:?}")),
    }
}

fn parse_usizes(text: &str) -> Res<Vec<usize>> {
    text.split(',')
        .map(|d| d.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad list {text:?}"))))
        .collect()
}

fn emit(out: &mut dyn Write, args: &OutputArgs, body: &str) -> Res {
    match &args.output {
        Some(path) => std::fs::write(path, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn unsupported<T>(format: Format) -> Res<T> {
    usage(format!("format {format:?} is not available for this command").to_lowercase())
}

/// Renders a grid in one of the four grid formats.
fn grid_output(p: u32, rows: usize, cols: usize, format: Format, get: impl Fn(usize, usize) -> u32) -> Res<String> {
    Ok(match format {
        Format::Text => digit_rows(rows, cols, get),
        Format::Csv => csv_rows(rows, cols, get),
        Format::Pbm => pbm(p, rows, cols, get)?,
        Format::Json => {
            let values: Vec<Vec<u32>> = (0..rows).map(|i| (0..cols).map(|j| get(i, j)).collect()).collect();
            to_json(&values)
        }
    })
}

fn text_or_json<T: Serialize>(format: Format, text: impl FnOnce() -> String, json: impl FnOnce() -> T) -> Res<String> {
    match format {
        Format::Text => Ok(text()),
        Format::Json => Ok(to_json(&json())),
        other => unsupported(other),
    }
}

pub(crate) fn execute(command: Command, out: &mut dyn Write) -> Res {
    match command {
        Command::Field(cmd) => field(cmd, out),
        Command::Seq(cmd) => seq(cmd, out),
        Command::Torus(cmd) => torus(cmd, out),
        Command::Pattern(cmd) => pattern(cmd, out),
        Command::Update(UpdateCmd::Matrix { torus, pattern, shift, new_cells, target, out: o }) => {
            update(&torus, &pattern, &shift, new_cells, target.as_deref(), &o, out)
        }
        Command::Decode(args) => decode(&args, out),
        Command::Ntorus(cmd) => ntorus(cmd, out),
    }
}

fn field(cmd: FieldCmd, out: &mut dyn Write) -> Res {
    match cmd {
        FieldCmd::Find { field, out: o } => {
            let Some(n) = field.n else { return usage("-n is required") };
            let modulus = find_primitive_modulus(field.p, n)?;
            let body = text_or_json(
                o.format,
                || format!("{}\n", join_digits(&modulus)),
                || FieldJson { p: field.p, n, modulus: modulus.clone() },
            )?;
            emit(out, &o, &body)
        }
        FieldCmd::Describe { field, out: o } => {
            let ctx = field_of(&field)?;
            let weights: Vec<u32> = (0..ctx.n()).map(|k| ctx.trace(&ctx.alpha_pow(k as i64))).collect();
            let subfields: Vec<usize> = (1..=ctx.n()).filter(|m| ctx.n() % m == 0).collect();
            #[derive(Serialize)]
            struct Describe {
                field: FieldJson,
                size: u64,
                group_order: u64,
                group_order_primes: Vec<u64>,
                trace_weights: Vec<u32>,
                subfields: Vec<usize>,
                tables: bool,
            }
            let d = Describe {
                field: FieldJson::of(&ctx),
                size: ctx.size(),
                group_order: ctx.group_order(),
                group_order_primes: ctx.group_order_primes().to_vec(),
                trace_weights: weights,
                subfields,
                tables: ctx.has_tables(),
            };
            let text = || {
                let mut s = String::new();
                writeln!(s, "p: {}", ctx.p()).unwrap();
                writeln!(s, "n: {}", ctx.n()).unwrap();
                writeln!(s, "size: {}", d.size).unwrap();
                writeln!(s, "modulus: {}", join_digits(ctx.modulus())).unwrap();
                writeln!(s, "modulus polynomial: {}", poly_text(ctx.modulus())).unwrap();
                writeln!(s, "group order: {} = {}", d.group_order, join_list(&d.group_order_primes, " * ")).unwrap();
                writeln!(s, "trace weights: {}", join_digits(&d.trace_weights)).unwrap();
                writeln!(s, "subfield degrees: {}", join_list(&d.subfields, ",")).unwrap();
                writeln!(s, "log tables: {}", if d.tables { "yes" } else { "no" }).unwrap();
                s
            };
            let body = match o.format {
                Format::Text => text(),
                Format::Json => to_json(&d),
                other => return unsupported(other),
            };
            emit(out, &o, &body)
        }
    }
}

fn join_digits(d: &[u32]) -> String {
    join_list(d, ",")
}

fn join_list<T: ToString>(d: &[T], sep: &str) -> String {
    d.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// `x^4 + x + 1` style, highest degree first.
fn poly_text(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        terms.push(match (c, k) {
            (_, 0) => c.to_string(),
            (1, _) => var,
            _ => format!("{c}{var}"),
        });
    }
    terms.join(" + ")
}

fn seq(cmd: SeqCmd, out: &mut dyn Write) -> Res {
    let (args, mode) = match cmd {
        SeqCmd::Generate(a) => (a, 0),
        SeqCmd::Lift(a) => (a, 1),
        SeqCmd::Strip { seq, full } => (seq, if full { 3 } else { 2 }),
    };
    let ctx = field_of(&args.field)?;
    let lambda = parse_lambda(&ctx, &args.lambda)?;
    let seq = DbSequence::new(&ctx, args.m, &lambda)?;
    let lambda_idx = lambda.index(ctx.p());
    let o = &args.out;
    let body = if mode >= 2 {
        let strip = seq.to_strip(&ctx, mode == 3)?;
        grid_output(ctx.p(), strip.rows(), strip.cols(), o.format, |i, j| strip.get(i, j))?
    } else {
        let full = mode == 1;
        let symbols = if full { lift_to_full(seq.symbols(), seq.window())? } else { seq.symbols().to_vec() };
        text_or_json(
            o.format,
            || sequence_text(&ctx, args.m, lambda_idx, seq.feedback(), &symbols),
            || SequenceJson {
                field: FieldJson::of(&ctx),
                m: args.m,
                lambda: lambda_idx,
                window: seq.window(),
                full,
                feedback: seq.feedback().iter().map(|e| symbol_text(&ctx, args.m, e)).collect(),
                symbols: symbols.iter().map(|e| symbol_text(&ctx, args.m, e)).collect(),
            },
        )?
    };
    emit(out, o, &body)
}

/// Smallest `m | n` with `p^m − 1 = s`.
fn infer_m(ctx: &FieldCtx, s: usize) -> Res<usize> {
    (1..=ctx.n())
        .find(|&m| ctx.n().is_multiple_of(m) && ctx.subfield_size(m) - 1 == s as u64)
        .ok_or(CliError::Math(dbtorus_core::Error::NotSubfieldRegime))
}

fn torus(cmd: TorusCmd, out: &mut dyn Write) -> Res {
    match cmd {
        TorusCmd::Generate { torus: args, out: o } => {
            let spec = TorusSpec::resolve(&args)?;
            let torus = spec.build()?;
            let body = match o.format {
                Format::Text => torus_text(&torus),
                Format::Json => to_json(&TorusJson::of(&torus, None)),
                f => grid_output(spec.ctx.p(), torus.s(), torus.t(), f, |i, j| torus.value(i, j))?,
            };
            emit(out, &o, &body)
        }
        TorusCmd::Classify { torus: args, m, out: o } => {
            let spec = TorusSpec::resolve(&args)?;
            let torus = spec.build()?;
            let m = match m {
                Some(m) => m,
                None => infer_m(&spec.ctx, spec.s)?,
            };
            let report = torus.classify_columns(m)?;
            let body = text_or_json(
                o.format,
                || column_report_text(&spec.ctx, &report),
                || TorusJson::of(&torus, Some(ColumnReportJson::of(&spec.ctx, m, &report))),
            )?;
            emit(out, &o, &body)
        }
        TorusCmd::Extend { torus: args, pattern, out: o } => {
            let spec = TorusSpec::resolve(&args)?;
            let torus = spec.build()?;
            let pattern = parse_pattern(&spec.ctx, &pattern)?.normalized();
            let grid = torus.extend_array(&pattern);
            let body = grid_output(spec.ctx.p(), grid.rows(), grid.cols(), o.format, |i, j| grid.get(i, j))?;
            emit(out, &o, &body)
        }
    }
}

fn pattern(cmd: PatternCmd, out: &mut dyn Write) -> Res {
    match cmd {
        PatternCmd::Check { torus: args, pattern, out: o } => {
            let spec = TorusSpec::resolve(&args)?;
            let torus = spec.build()?;
            let pattern = parse_pattern(&spec.ctx, &pattern)?;
            let rank = torus.pattern_rank(&pattern)?;
            let basis = torus.is_basis(&pattern)?;
            let sampling = if pattern.len() == spec.ctx.n() { Some(torus.verify_sampling(&pattern)?) } else { None };
            #[derive(Serialize)]
            struct Check {
                cells: usize,
                rank: usize,
                basis: bool,
                sampling: Option<bool>,
                certificate: Option<CertificateJson>,
            }
            let certificate =
                if basis { Some(CertificateJson::of(&torus, &torus.certificate(&pattern)?)) } else { None };
            let check = Check { cells: pattern.len(), rank, basis, sampling, certificate };
            let body = text_or_json(
                o.format,
                || {
                    let mut s = format!("cells: {}\nrank: {rank}\nbasis: {basis}\n", pattern.len());
                    if let Some(v) = sampling {
                        writeln!(s, "sampling: {v}").unwrap();
                    }
                    s
                },
                || check,
            )?;
            emit(out, &o, &body)
        }
        PatternCmd::Kronecker { field, m, out: o } => {
            let ctx = field_of(&field)?;
            let p = kronecker_pattern(&ctx, m)?;
            let cells: Vec<[usize; 2]> = p.cells().iter().map(|&(i, j)| [i, j]).collect();
            let body = text_or_json(o.format, || pattern_text(&p), || cells)?;
            emit(out, &o, &body)
        }
        PatternCmd::Extend { torus: args, pattern, with, out: o } => {
            let spec = TorusSpec::resolve(&args)?;
            let torus = spec.build()?;
            let s1 = parse_pattern(&spec.ctx, &pattern)?;
            let s2 = match &with {
                Some(w) => parse_pattern(&spec.ctx, w)?,
                None => s1.clone(),
            };
            let off = torus.find_extension_shift(&s1, &s2)?;
            let union = s1.union(&s2.translate(off, torus.s(), torus.t()));
            #[derive(Serialize)]
            struct Ext {
                offset: [usize; 2],
                pattern: Vec<[usize; 2]>,
            }
            let body = text_or_json(
                o.format,
                || format!("# offset {} {}\n{}", off.a, off.b, pattern_text(&union)),
                || Ext { offset: [off.a, off.b], pattern: union.cells().iter().map(|&(i, j)| [i, j]).collect() },
            )?;
            emit(out, &o, &body)
        }
        PatternCmd::Build { torus: args, pattern, out: o } => {
            let spec = TorusSpec::resolve(&args)?;
            let torus = spec.build()?;
            let seed = parse_pattern(&spec.ctx, &pattern)?;
            let built = torus.recursive_build(&seed)?;
            let cells: Vec<[usize; 2]> = built.cells().iter().map(|&(i, j)| [i, j]).collect();
            let body = text_or_json(o.format, || pattern_text(&built), || cells)?;
            emit(out, &o, &body)
        }
        PatternCmd::Lemma { field, seed, trials, out: o } => {
            let ctx = field_of(&field)?;
            let n = ctx.n();
            if n < 2 {
                return usage("need n >= 2 for two nonzero subspaces");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            #[derive(Serialize)]
            struct Trial {
                dim_v: usize,
                dim_w: usize,
                z_exponent: Option<u64>,
            }
            let mut results = Vec::with_capacity(trials);
            for _ in 0..trials {
                let dv = rng.gen_range(1..n);
                let dw = rng.gen_range(1..=n - dv);
                let mut pick = |d: usize| -> Vec<Element> {
                    let mut v: Vec<Element> = Vec::new();
                    while elements_rank(&ctx, &v) < d {
                        let e = ctx.from_index(rng.gen_range(1..ctx.size())).expect("in range");
                        v.push(e);
                        if elements_rank(&ctx, &v) < v.len() {
                            v.pop();
                        }
                    }
                    v
                };
                let v = pick(dv);
                let w = pick(dw);
                results.push(Trial { dim_v: dv, dim_w: dw, z_exponent: lemma_witness(&ctx, &v, &w)? });
            }
            let found = results.iter().filter(|t| t.z_exponent.is_some()).count();
            let body = text_or_json(
                o.format,
                || {
                    let mut s = String::new();
                    for (i, t) in results.iter().enumerate() {
                        let z = t.z_exponent.map_or("none".to_string(), |k| format!("pow:{k}"));
                        writeln!(s, "trial {i}: dim V = {}, dim W = {}, z = {z}", t.dim_v, t.dim_w).unwrap();
                    }
                    writeln!(s, "witnesses found: {found}/{trials}").unwrap();
                    s
                },
                || &results,
            )?;
            emit(out, &o, &body)?;
            if found != trials {
                return Err(dbtorus_core::Error::NoValidShift.into());
            }
            Ok(())
        }
    }
}

fn update(
    args: &TorusArgs,
    pattern: &str,
    shift: &str,
    new_cells: bool,
    target: Option<&str>,
    o: &OutputArgs,
    out: &mut dyn Write,
) -> Res {
    let spec = TorusSpec::resolve(args)?;
    let torus = spec.build()?;
    let input = parse_pattern(&spec.ctx, pattern)?;
    let shift = parse_pair(shift)?;
    let target = match (new_cells, target) {
        (true, _) => UpdateTarget::NewCells,
        (false, Some(t)) => UpdateTarget::Cells(parse_pattern(&spec.ctx, t)?),
        (false, None) => UpdateTarget::Full,
    };
    let u = torus.update_matrix(&input, shift, &target)?;
    let body = match o.format {
        Format::Text => matrix_text(&u.coeffs),
        Format::Csv => csv_rows(u.coeffs.rows(), u.coeffs.cols(), |i, j| u.coeffs.get(i, j)),
        Format::Json => to_json(&UpdateJson::of(&u)),
        other => return unsupported(other),
    };
    emit(out, o, &body)
}

fn decode(args: &DecodeArgs, out: &mut dyn Write) -> Res {
    let spec = TorusSpec::resolve(&args.torus)?;
    let torus = spec.build()?;
    let pattern = parse_pattern(&spec.ctx, &args.pattern)?;
    let o = &args.out;
    if args.certificate {
        let cert = torus.certificate(&pattern)?;
        return emit(out, o, &to_json(&CertificateJson::of(&torus, &cert)));
    }
    let values = parse_digits(&args.values)?;
    let off: TranslateOffset = if args.table {
        if values.iter().all(|&v| v == 0) {
            return Err(dbtorus_core::Error::AllZeroPattern.into());
        }
        if !torus.is_basis(&pattern)? {
            return Err(dbtorus_core::Error::NotABasis.into());
        }
        let table = torus.translate_table(&pattern)?;
        *table.get(&values).ok_or(CliError::Math(dbtorus_core::Error::MalformedElement))?
    } else {
        let cert = torus.certificate(&pattern)?;
        torus.decode(&cert, &values)?
    };
    #[derive(Serialize)]
    struct Pos {
        a: usize,
        b: usize,
    }
    let body = text_or_json(o.format, || format!("{} {}\n", off.a, off.b), || Pos { a: off.a, b: off.b })?;
    emit(out, o, &body)
}

fn ntorus(cmd: NtorusCmd, out: &mut dyn Write) -> Res {
    let (args, check, o) = match cmd {
        NtorusCmd::Generate { nt, out } => (nt, None, out),
        NtorusCmd::Check { nt, pattern, out } => (nt, Some(pattern), out),
    };
    let ctx = field_of(&args.field)?;
    let dims = parse_usizes(&args.dims)?;
    let form = form_of(&ctx, &args.lambda)?;
    let nt = NTorus::new(&ctx, &dims, &form)?;
    let body = match check {
        None => match o.format {
            Format::Text => ntorus_text(&nt),
            Format::Json => to_json(&NTorusJson::of(&nt)),
            other => return unsupported(other),
        },
        Some(spec) => {
            let cells = if spec == "greedy" { nt.greedy_basis_pattern() } else { parse_cells(&spec)? };
            let distinct: BTreeSet<&Vec<usize>> = cells.iter().collect();
            if distinct.len() != cells.len() {
                return usage("pattern cells must be distinct");
            }
            let basis = nt.is_basis(&cells)?;
            let sampling = nt.verify_sampling(&cells)?;
            #[derive(Serialize)]
            struct Check<'a> {
                dims: &'a [usize],
                pattern: &'a [Vec<usize>],
                basis: bool,
                sampling: bool,
            }
            text_or_json(
                o.format,
                || {
                    let mut s = String::new();
                    for c in &cells {
                        writeln!(s, "# {}", join_list(c, " ")).unwrap();
                    }
                    writeln!(s, "basis: {basis}\nsampling: {sampling}").unwrap();
                    s
                },
                || Check { dims: &dims, pattern: &cells, basis, sampling },
            )?
        }
    };
    emit(out, &o, &body)
}
