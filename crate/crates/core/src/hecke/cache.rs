//! Persistent KL table files.
//!
//! One line per entry, `<type>|<y>|<w>|c0,c1,...` with `ci` the coefficient
//! of `r^i`, lines sorted bytewise, trailing newline.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use crate::coxeter::{bruhat_leq, enumerate_interval, CoxeterDatum, GroupElement};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

use super::kl::KLTable;

pub fn render(table: &KLTable) -> String {
    let mut lines: Vec<String> = table
        .entries()
        .into_iter()
        .map(|(y, w, p)| {
            let c = p.poly_coeffs().expect("KL polynomial with negative powers");
            let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("{}|{}|{}|{}", table.label(), y, w, c.join(","))
        })
        .collect();
    lines.sort();
    let mut out = lines.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}

/// Writes atomically through a temporary file in the same directory.
pub fn save(table: &KLTable, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, render(table))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn parse(d: &CoxeterDatum, text: &str) -> Result<KLTable> {
    let mut columns: BTreeMap<GroupElement, BTreeMap<GroupElement, LaurentPoly>> = BTreeMap::new();
    let mut prev: Option<&str> = None;
    let mut last_line: BTreeMap<GroupElement, usize> = BTreeMap::new();
    if !text.is_empty() && !text.ends_with('\n') {
        let n = text.lines().count();
        return Err(Error::CacheLine {
            line: n,
            msg: "file does not end with a newline".into(),
        });
    }
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let err = |msg: String| Error::CacheLine { line: n, msg };
        if prev.is_some_and(|p| p >= line) {
            return Err(err("lines not strictly sorted".into()));
        }
        prev = Some(line);
        let fields: Vec<&str> = line.split('|').collect();
        if fields.len() != 4 {
            return Err(err(format!("expected 4 fields, found {}", fields.len())));
        }
        if fields[0] != d.label() {
            return Err(err(format!("type '{}' does not match '{}'", fields[0], d.label())));
        }
        let y = d.parse(fields[1]).map_err(|e| err(e.to_string()))?;
        let w = d.parse(fields[2]).map_err(|e| err(e.to_string()))?;
        if y.key() != fields[1] || w.key() != fields[2] {
            return Err(err("key is not in canonical form".into()));
        }
        if y.omega() != 0 || w.omega() != 0 {
            return Err(err("entries are stored for W only".into()));
        }
        let coeffs: Vec<i64> = fields[3]
            .split(',')
            .map(|c| c.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err(format!("bad coefficient list '{}'", fields[3])))?;
        if coeffs.last() == Some(&0) {
            return Err(err("trailing zero coefficient".into()));
        }
        let p = LaurentPoly::from_poly(&coeffs);
        if y == w {
            if p != LaurentPoly::one() {
                return Err(err(format!("P_{{w,w}} = {} is not 1", fields[3])));
            }
        } else {
            if !bruhat_leq(d, &y, &w) {
                return Err(err(format!("{y} is not below {w}")));
            }
            let bound = w.length() as i32 - y.length() as i32 - 1;
            if p.degree().is_none_or(|e| e > bound) {
                return Err(err(format!("degree exceeds l(w) - l(y) - 1 = {bound}")));
            }
        }
        last_line.insert(w.clone(), n);
        columns.entry(w).or_default().insert(y, p);
    }
    let mut table = KLTable::new(d.label());
    for (w, col) in columns {
        let expected: BTreeSet<GroupElement> = enumerate_interval(d, &w);
        let got: BTreeSet<GroupElement> = col.keys().cloned().collect();
        if expected != got {
            return Err(Error::CacheLine {
                line: last_line[&w],
                msg: format!("column {w} is incomplete"),
            });
        }
        table.insert_column(w, col);
    }
    Ok(table)
}

pub fn load(d: &CoxeterDatum, path: &Path) -> Result<KLTable> {
    parse(d, &fs::read_to_string(path)?)
}

/// Loads if the file exists, otherwise starts an empty table.
pub fn load_or_new(d: &CoxeterDatum, path: &Path) -> Result<KLTable> {
    if path.exists() {
        load(d, path)
    } else {
        Ok(KLTable::new(d.label()))
    }
}
