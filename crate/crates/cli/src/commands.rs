//! Command implementations. Each returns its typed output, a human summary
//! and an exit code; [`run`] wraps them into a [`Report`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::time::Instant;

use serde::Serialize;

use quadhull_core::evalinterp::delpezzo;
use quadhull_core::multred::{find_supercode_witness, is_mult_reduction, Verdict};
use quadhull_core::search::{analyze_w, SearchProblem};
use quadhull_core::sym::format_form;
use quadhull_core::{Algebra, BCode, Elem, Error, Fq, Mat, MultReduction, QuadHull};

use crate::args::{Cli, Command, DelPezzoArgs, HullArgs, SearchArgs, SupercodeArgs, TablesArgs, VerifyArgs};
use crate::format::{format_elem, format_matrix, mat_to_rows, parse_algebra, parse_matrix, read_file, TextMatrix};
use crate::report::{
    Certificate, DelPezzoOutput, HullJson, Report, ReductionJson, SearchJson, SupercodeOutput, TablesOutput, VerifyOutput,
};
use crate::{driver, tables, CliError, EXIT_BUDGET, EXIT_FALSE, EXIT_OK};

pub struct Outcome<T> {
    pub output: T,
    pub text: String,
    pub code: i32,
}

/// What the binary prints and returns.
pub struct Rendered {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn vars(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("x{i}")).collect()
}

fn form_text(f: &Fq, q: &[Elem], k: usize) -> String {
    let names = vars(k);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    format_form(f, q, &refs)
}

fn elems(v: &[Elem]) -> Vec<u32> {
    v.iter().map(|e| e.0).collect()
}

fn vector_text(f: &Fq, v: &[Elem]) -> String {
    v.iter().map(|&e| format_elem(f, e)).collect::<Vec<_>>().join(" ")
}

fn load_matrix(path: &std::path::Path) -> Result<TextMatrix, CliError> {
    parse_matrix(&read_file(path)?)
}

fn check_field(expected: &Fq, found: &Fq) -> Result<(), CliError> {
    if expected != found {
        return Err(CliError::Parse(format!("matrix is over F_{}, algebra over F_{}", found.order(), expected.order())));
    }
    Ok(())
}

/// The ambient algebra of a code file: `--target` or `F_q^n`.
fn code_from_file(tm: TextMatrix, target: Option<&str>) -> Result<(BCode, String), CliError> {
    let (b, spec) = match target {
        Some(s) => (parse_algebra(s)?, s.to_string()),
        None => {
            if tm.groups.iter().any(|&g| g != 1) {
                return Err(CliError::Parse("grouped columns need --target to name the local factors".into()));
            }
            let spec = format!("split:{}:{}", tm.field.order(), tm.mat.ncols());
            (Algebra::split(&tm.field, tm.mat.ncols()), spec)
        }
    };
    check_field(b.field(), &tm.field)?;
    if b.dim() != tm.mat.ncols() {
        return Err(CliError::Parse(format!("matrix has {} columns, target has dimension {}", tm.mat.ncols(), b.dim())));
    }
    Ok((BCode::new(&b, tm.mat)?, spec))
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome<VerifyOutput>, CliError> {
    let a = parse_algebra(&args.algebra)?;
    let b = parse_algebra(&args.target)?;
    let tm = load_matrix(&args.phi)?;
    check_field(a.field(), &tm.field)?;
    check_field(a.field(), b.field())?;
    let phi = tm.mat;
    if phi.nrows() != a.dim() || phi.ncols() != b.dim() {
        return Err(CliError::Parse(format!(
            "phi is {}x{}, expected {}x{}",
            phi.nrows(),
            phi.ncols(),
            a.dim(),
            b.dim()
        )));
    }
    let f = a.field().clone();
    let mut text = String::new();
    match is_mult_reduction(&a, &b, &phi)? {
        Verdict::Holds => {
            let r = MultReduction::new(&a, &b, phi)?;
            let omega = r.omega().expect("computed by new");
            let _ = writeln!(text, "true");
            let _ = write!(text, "omega ({} x {}):\n{}", omega.nrows(), omega.ncols(), format_matrix(omega, None));
            let output = VerifyOutput { verified: true, reduction: Some(ReductionJson::new(&args.algebra, &args.target, &r)), certificate: None };
            Ok(Outcome { output, text, code: EXIT_OK })
        }
        Verdict::NotInjective => {
            let v = phi.left_kernel().basis()[0].clone();
            let _ = writeln!(text, "false\nphi is not injective; kernel vector: {}", vector_text(&f, &v));
            let cert = Certificate {
                kind: "not_injective".into(),
                kernel_vector: Some(elems(&v)),
                form: None,
                form_text: None,
                value: None,
            };
            Ok(Outcome { output: VerifyOutput { verified: false, reduction: None, certificate: Some(cert) }, text, code: EXIT_FALSE })
        }
        Verdict::Violated(q) => {
            let value = a.eval_form(&q, &a.canonical_point());
            let ft = form_text(&f, &q, a.dim());
            let _ = writeln!(text, "false\nquadratic relation of the code: {ft}");
            let _ = writeln!(text, "value at the canonical point: {}", vector_text(&f, &value));
            let cert = Certificate {
                kind: "form_nonzero_at_canonical_point".into(),
                kernel_vector: None,
                form: Some(elems(&q)),
                form_text: Some(ft),
                value: Some(elems(&value)),
            };
            Ok(Outcome { output: VerifyOutput { verified: false, reduction: None, certificate: Some(cert) }, text, code: EXIT_FALSE })
        }
    }
}

pub fn hull(args: &HullArgs) -> Result<Outcome<HullJson>, CliError> {
    let tm = load_matrix(&args.code)?;
    if let Some(q) = args.q {
        if q != tm.field.order() {
            return Err(CliError::Parse(format!("--q {q} disagrees with the matrix header q = {}", tm.field.order())));
        }
    }
    let (code, _) = code_from_file(tm, args.target.as_deref())?;
    let a = args.algebra.as_deref().map(parse_algebra).transpose()?;
    let f = code.algebra().field().clone();
    let n = code.algebra().dim();
    let k = code.dim();
    let hull = QuadHull::from_code(&code);
    let rep = hull.fingerprint(args.ext.max(1), n, a.as_ref())?;
    let mut out = HullJson::new(&hull, n, &rep);
    let mut text = String::new();
    let _ = writeln!(text, "code: k = {k}, n = {n}, dim C(2) = {}", code.square().dim());
    let _ = writeln!(text, "dim I2 = {} (complete-intersection count {})", out.dim_i2, if out.ci_proxy { "met" } else { "not met" });
    for q in hull.i2().basis() {
        let _ = writeln!(text, "  {}", form_text(&f, q, k));
    }
    for (m, c) in &out.point_counts {
        let _ = writeln!(text, "#Z2(F_q^{m}) = {c}");
    }
    for p in &rep.points_m1 {
        let _ = writeln!(text, "  ({})", p.iter().map(|&e| format_elem(&f, e)).collect::<Vec<_>>().join(" : "));
    }
    if let Some(c) = out.canonical_in_hull {
        let _ = writeln!(text, "canonical point in hull: {c}");
    }
    if args.secants {
        let s = hull.secant_check(&code, 0)?;
        let _ = writeln!(
            text,
            "secant points checked: {} ({} rational, {} from conjugate pairs), violations: {}",
            s.checked,
            s.rational_secant_points,
            s.conjugate_secant_points,
            s.violations.len()
        );
        out.secant_points_checked = Some(s.checked);
        out.secant_violations = Some(s.violations.len());
    }
    Ok(Outcome { output: out, text, code: EXIT_OK })
}

fn search_text(json: &SearchJson) -> String {
    let mut groups: BTreeMap<(u64, usize, bool), usize> = BTreeMap::new();
    for w in &json.per_w {
        *groups.entry((w.point_counts.get(&1).copied().unwrap_or(0), w.dim_i2, w.unique)).or_insert(0) += 1;
    }
    let mut text = format!("{}  n = {}  nb. of W = {}\n", json.algebra, json.n, json.count_w);
    for ((pts, dim, unique), c) in groups {
        let _ = writeln!(text, "  {c:>6} W with #Z2(F_q) = {pts}, dim I2 = {dim}{}", if unique { ", unique algorithm" } else { "" });
    }
    let _ = writeln!(text, "nodes: {}  seconds: {:.2}", json.nodes, json.seconds);
    text
}

pub fn search(args: &SearchArgs) -> Result<Outcome<SearchJson>, CliError> {
    let a = parse_algebra(&args.algebra)?;
    let p = SearchProblem::new(&a)?;
    let budget = driver::node_budget(args.long)?;
    let t = Instant::now();
    let mut res = driver::search(&p, args.length, budget, args.workers)?;
    if args.ext > 1 {
        for s in &mut res.per_w {
            *s = analyze_w(&p, &s.w, args.ext)?;
        }
    }
    let json = SearchJson::new(&args.algebra, &res, t.elapsed().as_secs_f64());
    let text = search_text(&json);
    Ok(Outcome { output: json, text, code: EXIT_OK })
}

pub fn tables(args: &TablesArgs) -> Result<Outcome<Vec<TablesOutput>>, CliError> {
    let ids: Vec<u8> = if args.table.is_empty() { vec![1, 2, 3, 4] } else { args.table.clone() };
    let budget = driver::node_budget(args.long)?;
    let mut outputs = Vec::new();
    let mut text = String::new();
    for id in ids {
        let t = tables::table(id).ok_or_else(|| CliError::Parse(format!("no table {id}")))?;
        let out = t.run(args.long, budget, args.workers)?;
        text.push_str(&tables::render(&out));
        text.push('\n');
        outputs.push(out);
    }
    let statuses: Vec<&str> = outputs.iter().flat_map(|o| o.rows.iter().map(|r| r.status.as_str())).collect();
    let code = if statuses.contains(&"FAIL") {
        EXIT_FALSE
    } else if statuses.contains(&"BUDGET") {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Ok(Outcome { output: outputs, text, code })
}

fn const_mat<const C: usize>(f: &Fq, rows: &[[u32; C]]) -> Mat {
    let refs: Vec<&[u32]> = rows.iter().map(|r| &r[..]).collect();
    Mat::from_u32(f, &refs)
}

pub fn delpezzo(args: &DelPezzoArgs) -> Result<Outcome<DelPezzoOutput>, CliError> {
    let dp = delpezzo::build()?;
    let r = &dp.reduction;
    let f = r.a().field().clone();
    let omega = r.omega().ok_or(Error::SelfCheck("reduction without adjoint"))?;
    let code = r.code();
    let k = code.dim();
    let hull = QuadHull::from_code(&code);
    let i2 = code.i2();
    let out = DelPezzoOutput {
        phi: mat_to_rows(r.phi()),
        omega: mat_to_rows(omega),
        phi_matches_fixture: *r.phi() == const_mat(&f, &delpezzo::PHI),
        omega_matches_fixture: *omega == const_mat(&f, &delpezzo::OMEGA),
        quadrics: i2.basis().iter().map(|q| form_text(&f, q, k)).collect(),
        i2_basis: i2.basis().iter().map(|q| elems(q)).collect(),
        code: [code.length(), k, code.min_distance()?],
        dim_square: code.square().dim(),
        hull_points: hull.count_points(1)?,
        canonical_in_hull: hull.contains_canonical(r.a())?,
    };
    if let Some(path) = &args.write_phi {
        fs::write(path, format_matrix(r.phi(), None)).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    let mut text = String::new();
    let _ = write!(text, "phi:\n{}", format_matrix(r.phi(), None));
    let _ = write!(text, "omega:\n{}", format_matrix(omega, None));
    let _ = writeln!(text, "phi matches fixture: {}, omega matches fixture: {}", out.phi_matches_fixture, out.omega_matches_fixture);
    let _ = writeln!(text, "quadratic relations:");
    for q in &out.quadrics {
        let _ = writeln!(text, "  {q}");
    }
    let _ = writeln!(text, "code [{}, {}, {}], dim C(2) = {}", out.code[0], out.code[1], out.code[2], out.dim_square);
    let _ = writeln!(text, "hull points: {}, canonical point in hull: {}", out.hull_points, out.canonical_in_hull);
    let ok = out.phi_matches_fixture && out.omega_matches_fixture && out.canonical_in_hull;
    Ok(Outcome { output: out, text, code: if ok { EXIT_OK } else { EXIT_FALSE } })
}

pub fn supercode(args: &SupercodeArgs) -> Result<Outcome<SupercodeOutput>, CliError> {
    let tm = load_matrix(&args.code)?;
    let (code, spec_b) = code_from_file(tm, args.target.as_deref())?;
    let a = parse_algebra(&args.algebra)?;
    check_field(a.field(), code.algebra().field())?;
    let f = a.field().clone();
    let mut text = String::new();
    let output = match find_supercode_witness(&code, &a)? {
        None => {
            let _ = writeln!(text, "none");
            SupercodeOutput { found: false, point: None, reduction: None }
        }
        Some(w) => {
            let coords: Vec<String> = w.point.iter().map(|c| format!("[{}]", vector_text(&f, c))).collect();
            let _ = writeln!(text, "witness: ({})", coords.join(" : "));
            let _ = write!(text, "induced phi:\n{}", format_matrix(w.reduction.phi(), None));
            SupercodeOutput {
                found: true,
                point: Some(w.point.iter().map(|c| elems(c)).collect()),
                reduction: Some(ReductionJson::new(&args.algebra, &spec_b, &w.reduction)),
            }
        }
    };
    Ok(Outcome { output, text, code: EXIT_OK })
}

fn render<T: Serialize>(
    command: &str,
    inputs: BTreeMap<String, String>,
    json: bool,
    t: Instant,
    res: Result<Outcome<T>, CliError>,
) -> Rendered {
    let seconds = t.elapsed().as_secs_f64();
    let (report, text, code) = match res {
        Ok(o) => {
            let report = Report { command: command.into(), inputs, output: Some(o.output), error: None, seconds, budget_exceeded: false };
            (report, o.text, o.code)
        }
        Err(e) => {
            let report: Report<T> = Report {
                command: command.into(),
                inputs,
                output: None,
                error: Some(e.to_string()),
                seconds,
                budget_exceeded: e.is_budget(),
            };
            return Rendered {
                stdout: if json { to_json(&report) } else { String::new() },
                stderr: format!("error: {e}\n"),
                code: e.exit_code(),
            };
        }
    };
    let stdout = if json { to_json(&report) } else { text };
    Rendered { stdout, stderr: String::new(), code }
}

fn to_json<T: Serialize>(r: &Report<T>) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

fn inputs<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn run(cli: &Cli) -> Rendered {
    let t = Instant::now();
    let json = cli.json;
    match &cli.command {
        Command::Verify(a) => {
            let i = inputs([("algebra", a.algebra.clone()), ("target", a.target.clone()), ("phi", a.phi.display().to_string())]);
            render("verify", i, json, t, verify(a))
        }
        Command::Hull(a) => {
            let mut i = inputs([("code", a.code.display().to_string()), ("ext", a.ext.to_string())]);
            if let Some(s) = &a.target {
                i.insert("target".into(), s.clone());
            }
            if let Some(s) = &a.algebra {
                i.insert("algebra".into(), s.clone());
            }
            render("hull", i, json, t, hull(a))
        }
        Command::Search(a) => {
            let i = inputs([
                ("algebra", a.algebra.clone()),
                ("length", a.length.to_string()),
                ("long", a.long.to_string()),
                ("workers", a.workers.to_string()),
            ]);
            render("search", i, json, t, search(a))
        }
        Command::Tables(a) => {
            let ids: Vec<String> = a.table.iter().map(u8::to_string).collect();
            let i = inputs([("table", ids.join(",")), ("long", a.long.to_string()), ("workers", a.workers.to_string())]);
            render("tables", i, json, t, tables(a))
        }
        Command::Delpezzo(a) => render("delpezzo", BTreeMap::new(), json, t, delpezzo(a)),
        Command::Supercode(a) => {
            let mut i = inputs([("code", a.code.display().to_string()), ("algebra", a.algebra.clone())]);
            if let Some(s) = &a.target {
                i.insert("target".into(), s.clone());
            }
            render("supercode", i, json, t, supercode(a))
        }
    }
}
