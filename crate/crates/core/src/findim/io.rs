//! Text formats for algebras and morphisms.
//!
//! Algebra: a header `dim=<n> field=<Q|minimal polynomial in x>`, then one
//! line `i j k c` per nonzero structure constant (`e_i e_j` has coefficient
//! `c` on `e_k`), sorted by `(i, j, k)`. `c` is written as comma-separated
//! `num/den` power-basis coordinates.
//!
//! Morphism: a line `n_source n_target`, then `n_target` rows of
//! `n_source` whitespace-separated entries.

use super::{AlgebraMorphism, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::field::{NumberField, RatPoly};
use crate::linalg::Matrix;

fn field_name(k: &NumberField) -> String {
    if k.is_rational() {
        "Q".into()
    } else {
        k.minpoly().display_in("x")
    }
}

pub fn parse_field(s: &str) -> Result<NumberField> {
    if s == "Q" {
        return Ok(NumberField::rationals());
    }
    NumberField::new(RatPoly::parse_in(s, "x")?)
}

pub fn render_algebra(a: &FinDimAlgebra) -> String {
    let k = a.field();
    let mut out = format!("dim={} field={}\n", a.dim(), field_name(k));
    for (i, j, l, c) in a.entries() {
        out.push_str(&format!("{i} {j} {l} {}\n", k.format(&c)));
    }
    out
}

fn line_err(n: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {n}: {msg}"))
}

pub fn parse_algebra(label: &str, text: &str) -> Result<FinDimAlgebra> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (n0, header) = lines.next().ok_or_else(|| Error::Parse("empty algebra file".into()))?;
    let mut dim = None;
    let mut field = None;
    for tok in header.split_whitespace() {
        match tok.split_once('=') {
            Some(("dim", v)) => dim = Some(v.parse::<usize>().map_err(|_| line_err(n0, "bad dim"))?),
            Some(("field", v)) => field = Some(parse_field(v)?),
            _ => return Err(line_err(n0, format!("unexpected header token '{tok}'"))),
        }
    }
    let dim = dim.ok_or_else(|| line_err(n0, "missing dim="))?;
    let k = field.ok_or_else(|| line_err(n0, "missing field="))?;
    let mut entries = Vec::new();
    let mut last: Option<(usize, usize, usize)> = None;
    for (n, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(line_err(n, "expected 'i j k c'"));
        }
        let idx = |s: &str| s.parse::<usize>().map_err(|_| line_err(n, format!("bad index '{s}'")));
        let key = (idx(parts[0])?, idx(parts[1])?, idx(parts[2])?);
        if last.is_some_and(|p| p >= key) {
            return Err(line_err(n, "entries not strictly sorted"));
        }
        last = Some(key);
        let c = k.parse(parts[3]).map_err(|e| line_err(n, e))?;
        entries.push((key.0, key.1, key.2, c));
    }
    FinDimAlgebra::from_entries(label, k, dim, &entries)
}

pub fn render_morphism(phi: &AlgebraMorphism) -> String {
    let k = phi.field();
    let m = phi.matrix();
    let mut out = format!("{} {}\n", m.cols(), m.rows());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|c| k.format(c)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_morphism(text: &str, source: FinDimAlgebra, target: FinDimAlgebra) -> Result<AlgebraMorphism> {
    let k = source.field().clone();
    if k != *target.field() {
        return Err(Error::InvalidInput("source and target fields differ".into()));
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (n0, header) = lines.next().ok_or_else(|| Error::Parse("empty morphism file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|s| s.parse().map_err(|_| line_err(n0, format!("bad dimension '{s}'"))))
        .collect::<Result<_>>()?;
    let [ns, nt] = dims[..] else {
        return Err(line_err(n0, "expected 'n_source n_target'"));
    };
    if ns != source.dim() || nt != target.dim() {
        return Err(line_err(
            n0,
            format!("declared {ns} -> {nt} but algebras have dimensions {} -> {}", source.dim(), target.dim()),
        ));
    }
    let mut rows = Vec::new();
    for (n, line) in lines {
        let row = line
            .split_whitespace()
            .map(|s| k.parse(s).map_err(|e| line_err(n, e)))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != ns {
            return Err(line_err(n, format!("expected {ns} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != nt {
        return Err(Error::Parse(format!("expected {nt} matrix rows, found {}", rows.len())));
    }
    AlgebraMorphism::new(source, target, Matrix::from_rows(rows, ns))
}
