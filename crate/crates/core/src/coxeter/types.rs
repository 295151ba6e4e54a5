//! Named Coxeter types.

use super::{Affine, AffineRealization, CoxeterDatum, OmegaSpec, INF};
use crate::error::{Error, Result};
use crate::field::{int, rat, Rational};

fn chain(n: usize, last: u32) -> Vec<Vec<u32>> {
    let mut m = vec![vec![2u32; n]; n];
    for i in 0..n {
        m[i][i] = 1;
        if i + 1 < n {
            let label = if i + 2 == n { last } else { 3 };
            m[i][i + 1] = label;
            m[i + 1][i] = label;
        }
    }
    m
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// The permutation `i -> j` with `ω s_i ω^-1 = s_j`.
fn perm_from_isometry(gens: &[Affine], w: &Affine) -> Result<Vec<usize>> {
    let inv = w.inverse();
    gens.iter()
        .map(|g| {
            let c = w.compose(g).compose(&inv);
            gens.iter()
                .position(|h| *h == c)
                .ok_or_else(|| Error::InvalidOmega("isometry does not permute the generators".into()))
        })
        .collect()
}

fn affine_a1(extended: bool) -> Result<CoxeterDatum> {
    let gens = vec![
        Affine::from_ints(&[&[-1]], &[0], 1),
        Affine::from_ints(&[&[-1]], &[1], 1),
    ];
    let lattice = vec![ints(&[1])];
    let (omega, translations, label) = if extended {
        let w = Affine::from_ints(&[&[-1]], &[1], 2);
        let perm = perm_from_isometry(&gens, &w)?;
        let spec = OmegaSpec {
            perms: vec![perm],
            isometries: Some(vec![w]),
        };
        (Some(spec), vec![vec![rat(1, 2)]], "ext-affine-A1")
    } else {
        (None, lattice.clone(), "affine-A1")
    };
    let real = AffineRealization {
        dim: 1,
        gens,
        lattice,
        translations,
        finite_gens: vec![0],
    };
    CoxeterDatum::build(label, vec![vec![1, INF], vec![INF, 1]], omega, Some(real))
}

fn affine_a2(extended: bool) -> Result<CoxeterDatum> {
    let swap01: &[&[i64]] = &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]];
    let swap12: &[&[i64]] = &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]];
    let swap02: &[&[i64]] = &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]];
    let gens = vec![
        Affine::from_ints(swap01, &[0, 0, 0], 1),
        Affine::from_ints(swap12, &[0, 0, 0], 1),
        Affine::from_ints(swap02, &[1, 0, -1], 1),
    ];
    let lattice = vec![ints(&[1, -1, 0]), ints(&[0, 1, -1])];
    let (omega, translations, label) = if extended {
        // x -> (x2, x0, x1) + (2/3, -1/3, -1/3)
        let w = Affine::from_ints(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]], &[2, -1, -1], 3);
        let perm = perm_from_isometry(&gens, &w)?;
        let spec = OmegaSpec {
            perms: vec![perm],
            isometries: Some(vec![w]),
        };
        let t = vec![
            vec![rat(2, 3), rat(-1, 3), rat(-1, 3)],
            vec![rat(1, 3), rat(1, 3), rat(-2, 3)],
        ];
        (Some(spec), t, "ext-affine-A2")
    } else {
        (None, lattice.clone(), "affine-A2")
    };
    let real = AffineRealization {
        dim: 3,
        gens,
        lattice,
        translations,
        finite_gens: vec![0, 1],
    };
    CoxeterDatum::build(label, vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]], omega, Some(real))
}

/// Recognized labels: `A<n>`, `B<n>` (n ≥ 2), `G2`, `I2(<m>)`, `affine-A1`,
/// `affine-A2`, and `ext-affine-A1`, `ext-affine-A2` for the extended
/// groups with Ω of order 2 and 3.
pub fn from_label(label: &str) -> Result<CoxeterDatum> {
    let bad = || Error::InvalidInput(format!("unknown type label '{label}'"));
    match label {
        "affine-A1" => return affine_a1(false),
        "ext-affine-A1" => return affine_a1(true),
        "affine-A2" => return affine_a2(false),
        "ext-affine-A2" => return affine_a2(true),
        "G2" => return CoxeterDatum::build("G2", chain(2, 6), None, None),
        _ => {}
    }
    if let Some(m) = label.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        return CoxeterDatum::dihedral(m.parse().map_err(|_| bad())?);
    }
    let (head, n) = label.split_at(1.min(label.len()));
    let n: usize = n.parse().map_err(|_| bad())?;
    let matrix = match head {
        "A" if (1..=8).contains(&n) => chain(n, 3),
        "B" if (2..=8).contains(&n) => chain(n, 4),
        _ => return Err(bad()),
    };
    CoxeterDatum::build(label, matrix, None, None)
}
