//! Text formats: elements, matrices, polynomials, algebra specs and linear
//! systems.
//!
//! Field elements are written as little-endian strings of prime-field
//! digits (`"01"` is the generator of `F_4`). Over a prime field this is a
//! single digit. Matrices start with a `q rows cols` header; a token may be
//! a comma-separated group of coordinates belonging to one local factor, in
//! which case the groups are flattened and `cols` counts coordinates.

use std::fs;
use std::path::Path;

use quadhull_core::evalinterp::{Form, LinearSystem};
use quadhull_core::{Algebra, Elem, Fq, Mat, Poly};

use crate::CliError;

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Non-empty lines with `#` comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty())
}

fn parse_num<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T, CliError> {
    tok.parse().map_err(|_| parse_err(format!("bad {what}: {tok:?}")))
}

pub fn field(q: u32) -> Result<Fq, CliError> {
    Ok(Fq::with_order(q)?)
}

pub fn parse_elem(f: &Fq, tok: &str) -> Result<Elem, CliError> {
    let p = f.characteristic();
    let digits: Option<Vec<u32>> = tok.chars().map(|c| c.to_digit(36).filter(|&d| d < p)).collect();
    let digits = digits.filter(|d| !d.is_empty() && d.len() <= f.degree() as usize);
    match digits {
        Some(d) => Ok(f.from_coeffs(&d)?),
        None => Err(parse_err(format!("bad element of F_{}: {tok:?}", f.order()))),
    }
}

pub fn format_elem(f: &Fq, e: Elem) -> String {
    let mut c = f.coeffs(e);
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    c.iter().map(|&d| char::from_digit(d, 36).expect("digit below 36")).collect()
}

/// A parsed matrix with the widths of the column groups of its first row.
#[derive(Clone, Debug)]
pub struct TextMatrix {
    pub field: Fq,
    pub mat: Mat,
    pub groups: Vec<usize>,
}

pub fn parse_matrix(text: &str) -> Result<TextMatrix, CliError> {
    let mut lines = content_lines(text);
    let header: Vec<&str> = lines.next().ok_or_else(|| parse_err("empty matrix file"))?.split_whitespace().collect();
    if header.len() != 3 {
        return Err(parse_err("matrix header must be \"q rows cols\""));
    }
    let f = field(parse_num(header[0], "field order")?)?;
    let rows: usize = parse_num(header[1], "row count")?;
    let cols: usize = parse_num(header[2], "column count")?;
    let mut data = Vec::with_capacity(rows);
    let mut groups = Vec::new();
    for (r, line) in lines.enumerate() {
        if r >= rows {
            return Err(parse_err(format!("more than {rows} rows")));
        }
        let mut row = Vec::with_capacity(cols);
        let mut widths = Vec::new();
        for tok in line.split_whitespace() {
            let parts: Vec<&str> = tok.split(',').collect();
            widths.push(parts.len());
            for part in parts {
                row.push(parse_elem(&f, part)?);
            }
        }
        if row.len() != cols {
            return Err(parse_err(format!("row {} has {} entries, expected {cols}", r + 1, row.len())));
        }
        if r == 0 {
            groups = widths;
        } else if widths != groups {
            return Err(parse_err(format!("row {} groups columns differently from row 1", r + 1)));
        }
        data.push(row);
    }
    if data.len() != rows {
        return Err(parse_err(format!("expected {rows} rows, found {}", data.len())));
    }
    if rows == 0 {
        groups = vec![1; cols];
    }
    let mat = Mat::from_rows(&f, cols, &data)?;
    Ok(TextMatrix { field: f, mat, groups })
}

pub fn format_matrix(m: &Mat, groups: Option<&[usize]>) -> String {
    let f = m.field();
    let mut out = format!("{} {} {}\n", f.order(), m.nrows(), m.ncols());
    let widths: Vec<usize> = match groups {
        Some(g) if g.iter().sum::<usize>() == m.ncols() => g.to_vec(),
        _ => vec![1; m.ncols()],
    };
    for r in 0..m.nrows() {
        let row = m.row(r);
        let mut at = 0;
        let toks: Vec<String> = widths
            .iter()
            .map(|&w| {
                let t = row[at..at + w].iter().map(|&e| format_elem(f, e)).collect::<Vec<_>>().join(",");
                at += w;
                t
            })
            .collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

/// Little-endian coefficient string, `"101001"` is `1 + t² + t⁵`.
pub fn parse_poly(f: &Fq, s: &str) -> Result<Poly, CliError> {
    let q = f.order();
    let digits: Option<Vec<u32>> = s.chars().map(|c| c.to_digit(36).filter(|&d| d < q)).collect();
    match digits {
        Some(d) if !d.is_empty() => Ok(Poly::from_digits(&d)),
        _ => Err(parse_err(format!("bad polynomial over F_{q}: {s:?}"))),
    }
}

pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs().iter().map(|e| char::from_digit(e.0, 36).expect("coefficient below 36")).collect()
}

/// `gfext:q:k`, `trunc:q:k`, `quot:q:<poly>`, `split:q:n`, `raw:<file>` and
/// `prod:<spec>,<spec>,...` (a flat list of non-product specs).
pub fn parse_algebra(spec: &str) -> Result<Algebra, CliError> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| parse_err(format!("bad algebra spec {spec:?}")))?;
    let alg = match kind {
        "prod" => {
            let mut parts = rest.split(',');
            let first = parse_simple_algebra(parts.next().unwrap_or(""))?;
            parts.try_fold(first, |acc, s| Ok::<_, CliError>(Algebra::product(&acc, &parse_simple_algebra(s)?)?))?
        }
        _ => parse_simple_algebra(spec)?,
    };
    Ok(alg.with_label(spec))
}

fn parse_simple_algebra(spec: &str) -> Result<Algebra, CliError> {
    let bad = || parse_err(format!("bad algebra spec {spec:?}"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    if kind == "raw" {
        return parse_raw_algebra(&read_file(Path::new(rest))?, rest);
    }
    let (q, arg) = rest.split_once(':').ok_or_else(bad)?;
    let q: u32 = parse_num(q, "field order")?;
    match kind {
        "gfext" => Ok(Algebra::gf_ext(q, parse_num(arg, "degree")?)?),
        "trunc" => Ok(Algebra::truncated(q, parse_num(arg, "degree")?)?),
        "split" => Ok(Algebra::split(&field(q)?, parse_num(arg, "length")?)),
        "quot" => {
            let f = field(q)?;
            Ok(Algebra::quotient(&f, &parse_poly(&f, arg)?)?)
        }
        _ => Err(bad()),
    }
}

/// Structure constants: header `q k`, then `k²` lines, line `i·k + j`
/// holding the `k` coordinates of `a_i a_j`.
pub fn parse_raw_algebra(text: &str, label: &str) -> Result<Algebra, CliError> {
    let mut lines = content_lines(text);
    let header: Vec<&str> = lines.next().ok_or_else(|| parse_err("empty structure-constant file"))?.split_whitespace().collect();
    if header.len() != 2 {
        return Err(parse_err("structure-constant header must be \"q k\""));
    }
    let f = field(parse_num(header[0], "field order")?)?;
    let k: usize = parse_num(header[1], "dimension")?;
    let mut consts = Vec::with_capacity(k * k * k);
    let mut count = 0;
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let entries: Vec<String> = if toks.len() == 1 && k > 1 && f.is_prime_field() {
            toks[0].chars().map(String::from).collect()
        } else {
            toks.iter().map(|t| t.to_string()).collect()
        };
        if entries.len() != k {
            return Err(parse_err(format!("structure-constant line {} needs {k} entries", count + 1)));
        }
        for e in &entries {
            consts.push(parse_elem(&f, e)?);
        }
        count += 1;
    }
    if count != k * k {
        return Err(parse_err(format!("expected {} structure-constant lines, found {count}", k * k)));
    }
    Ok(Algebra::from_structure_constants(&f, k, consts, label)?)
}

pub fn format_raw_algebra(a: &Algebra) -> String {
    let f = a.field();
    let k = a.dim();
    let mut out = format!("{} {}\n", f.order(), k);
    for i in 0..k {
        for j in 0..k {
            let row: Vec<String> = (0..k).map(|l| format_elem(f, a.structure_constant(i, j, l))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Header `q num_vars degree count`, then one form per line as terms
/// `coeff:e1,e2,...` (or `coeff:e1e2...` with single-digit exponents).
pub fn parse_system(text: &str) -> Result<LinearSystem, CliError> {
    let mut lines = content_lines(text);
    let header: Vec<&str> = lines.next().ok_or_else(|| parse_err("empty linear-system file"))?.split_whitespace().collect();
    if header.len() != 4 {
        return Err(parse_err("linear-system header must be \"q num_vars degree count\""));
    }
    let f = field(parse_num(header[0], "field order")?)?;
    let nvars: usize = parse_num(header[1], "variable count")?;
    let degree: u32 = parse_num(header[2], "degree")?;
    let count: usize = parse_num(header[3], "form count")?;
    let mut forms = Vec::with_capacity(count);
    for line in lines {
        let mut terms = Vec::new();
        for tok in line.split_whitespace() {
            let (c, e) = tok.split_once(':').ok_or_else(|| parse_err(format!("bad term {tok:?}")))?;
            let exps: Vec<u32> = if e.contains(',') {
                e.split(',').map(|x| parse_num(x, "exponent")).collect::<Result<_, _>>()?
            } else {
                e.chars().map(|x| x.to_digit(10).ok_or_else(|| parse_err(format!("bad exponent in {tok:?}")))).collect::<Result<_, _>>()?
            };
            if exps.len() != nvars {
                return Err(parse_err(format!("term {tok:?} needs {nvars} exponents")));
            }
            terms.push((parse_elem(&f, c)?, exps));
        }
        forms.push(Form::from_terms(&f, nvars, &terms)?);
    }
    if forms.len() != count {
        return Err(parse_err(format!("expected {count} forms, found {}", forms.len())));
    }
    Ok(LinearSystem::new(&f, nvars, degree, forms)?)
}

pub fn format_system(s: &LinearSystem) -> String {
    let f = s.field();
    let mut out = format!("{} {} {} {}\n", f.order(), s.nvars(), s.degree(), s.dim());
    for form in s.forms() {
        let terms: Vec<String> = form
            .terms()
            .map(|(e, &c)| {
                let exps: Vec<String> = e.iter().map(u32::to_string).collect();
                format!("{}:{}", format_elem(f, c), exps.join(","))
            })
            .collect();
        out.push_str(&terms.join(" "));
        out.push('\n');
    }
    out
}

pub fn mat_to_rows(m: &Mat) -> Vec<Vec<u32>> {
    (0..m.nrows()).map(|r| m.row(r).iter().map(|e| e.0).collect()).collect()
}

pub fn rows_to_mat(f: &Fq, cols: usize, rows: &[Vec<u32>]) -> Result<Mat, CliError> {
    let q = f.order();
    let data: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&x| Elem(x)).collect()).collect();
    if data.iter().flatten().any(|e| e.0 >= q) {
        return Err(parse_err(format!("matrix entry out of range for F_{q}")));
    }
    Ok(Mat::from_rows(f, cols, &data)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip_with_groups() {
        let text = "2 2 5\n1 0,1,1 0\n0 1,1,0 1\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.groups, vec![1, 3, 1]);
        assert_eq!(m.mat.ncols(), 5);
        assert_eq!(format_matrix(&m.mat, Some(&m.groups)), text);
    }

    #[test]
    fn extension_field_entries() {
        let m = parse_matrix("4 1 3\n1 01 11\n").unwrap();
        let f = &m.field;
        assert_eq!(m.mat.get(0, 1), f.gen());
        assert_eq!(format_matrix(&m.mat, None), "4 1 3\n1 01 11\n");
    }

    #[test]
    fn matrix_errors() {
        assert!(parse_matrix("2 1 3\n1 0\n").is_err());
        assert!(parse_matrix("2 2 2\n1 0\n").is_err());
        assert!(parse_matrix("2 1 2\n1 2\n").is_err());
        assert!(parse_matrix("6 1 1\n1\n").is_err());
        assert!(parse_matrix("").is_err());
    }

    #[test]
    fn algebra_specs() {
        assert_eq!(parse_algebra("gfext:2:5").unwrap().dim(), 5);
        assert_eq!(parse_algebra("trunc:3:4").unwrap(), Algebra::truncated(3, 4).unwrap());
        let p = parse_algebra("prod:gfext:2:2,trunc:2:3,gfext:2:1").unwrap();
        assert_eq!(p.dim(), 6);
        assert_eq!(p.label(), "prod:gfext:2:2,trunc:2:3,gfext:2:1");
        assert!(parse_algebra("split:2:13").unwrap().is_split());
        let q = parse_algebra("quot:2:10000001").unwrap();
        assert_eq!(q.dim(), 7);
        assert!(parse_algebra("quot:2:1001").is_ok());
        assert!(parse_algebra("gfext:6:2").is_err());
        assert!(parse_algebra("nonsense").is_err());
        assert!(parse_algebra("quot:2:12").is_err());
    }

    #[test]
    fn raw_algebra_round_trip() {
        let a = Algebra::gf_ext(3, 2).unwrap();
        let text = format_raw_algebra(&a);
        assert_eq!(parse_raw_algebra(&text, "raw").unwrap(), a);
        let dense = "2 2\n10\n01\n01\n10\n";
        let b = parse_raw_algebra(dense, "raw").unwrap();
        assert_eq!(b.dim(), 2);
        assert!(parse_raw_algebra("2 2\n10\n01\n01\n", "raw").is_err());
    }

    #[test]
    fn poly_strings() {
        let f = field(2).unwrap();
        let p = parse_poly(&f, "101001").unwrap();
        assert_eq!(p.degree(), Some(5));
        assert_eq!(format_poly(&p), "101001");
    }

    #[test]
    fn system_round_trip() {
        let text = "2 3 2 2\n1:2,0,0 1:0,1,1\n1:0,2,0\n";
        let s = parse_system(text).unwrap();
        assert_eq!(s.dim(), 2);
        let again = parse_system(&format_system(&s)).unwrap();
        assert_eq!(again.coefficient_matrix(), s.coefficient_matrix());
        assert!(parse_system("2 3 2 1\n1:2,0,0 1:1,0,0\n").is_err());
        let compact = parse_system("2 3 2 1\n1:200 1:011\n").unwrap();
        assert_eq!(compact.coefficient_matrix().row(0), s.coefficient_matrix().row(0));
    }
}
