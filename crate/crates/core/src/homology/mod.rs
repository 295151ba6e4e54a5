//! Hochschild, cyclic and periodic cyclic homology: bar complexes for
//! finite-dimensional algebras, Burghelea's class decomposition for group
//! algebras, and its equivariant form for affine Weyl groups.

pub mod bar;
pub mod classes;


use std::fmt;

pub use bar::{
    commutator_quotient_dim, cyclic_differential_squares_to_zero, cyclic_dims, cyclic_dims_with_budget,
    hochschild_dims, hochschild_dims_with_budget, HomologySummary, Kind, DEFAULT_BUDGET,
};
pub use classes::{
    centralizer_cohomology, finite_order_classes, infinite_order_summary, CentralizerElement, ConjClassRecord,
    InfiniteOrderSummary,
};

use crate::coxeter::CoxeterDatum;
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::findim::{group_algebra, wedderburn_blocks, FinDimAlgebra};

fn hp(even: usize, odd: usize) -> HomologySummary {
    HomologySummary {
        kind: Kind::HP,
        dims: vec![even, odd],
    }
}

/// `HP_*` of a finite-dimensional algebra: one even class per simple
/// module, nothing odd.
pub fn hp_findim(a: &FinDimAlgebra, seed: u64) -> Result<HomologySummary> {
    let s = wedderburn_blocks(a, seed)?;
    Ok(hp(s.len(), 0))
}

fn burghelea(classes: usize, n: usize) -> (HomologySummary, HomologySummary) {
    let hc = HomologySummary {
        kind: Kind::HC,
        dims: (0..=n).map(|i| if i % 2 == 0 { classes } else { 0 }).collect(),
    };
    (hc, hp(classes, 0))
}

/// `HC_0..HC_n` and `HP_*` of `C[W]` for finite `W`.
pub fn burghelea_finite_group(d: &CoxeterDatum, n: usize) -> Result<(HomologySummary, HomologySummary)> {
    if !d.is_finite() {
        return Err(Error::InvalidInput(format!("{} is not finite", d.label())));
    }
    Ok(burghelea(d.conjugacy_classes()?.len(), n))
}

/// Same for a group given by its multiplication table on `0..|G|`.
pub fn burghelea_from_table(table: &[Vec<usize>], n: usize) -> Result<(HomologySummary, HomologySummary)> {
    let g = table.len();
    if table.iter().any(|row| row.len() != g || row.iter().any(|&x| x >= g)) {
        return Err(Error::InvalidInput("malformed multiplication table".into()));
    }
    let e = (0..g)
        .find(|&e| (0..g).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::InvalidInput("table has no identity".into()))?;
    let inv: Vec<usize> = (0..g)
        .map(|x| (0..g).find(|&y| table[x][y] == e).ok_or_else(|| Error::InvalidInput("table has no inverses".into())))
        .collect::<Result<_>>()?;
    let mut seen = vec![false; g];
    let mut classes = 0;
    for x in 0..g {
        if seen[x] {
            continue;
        }
        classes += 1;
        for y in 0..g {
            seen[table[table[y][x]][inv[y]]] = true;
        }
    }
    Ok(burghelea(classes, n))
}

/// Compares the class count with the number of Wedderburn blocks of `Q[W]`.
/// `None` when the group algebra does not split over `Q`.
pub fn burghelea_cross_check(d: &CoxeterDatum, seed: u64) -> Result<Option<bool>> {
    let (_, hp_classes) = burghelea_finite_group(d, 0)?;
    let a = group_algebra(d, &NumberField::rationals())?;
    match hp_findim(&a, seed) {
        Ok(h) => Ok(Some(h == hp_classes)),
        Err(Error::NonSplit(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `HP_*` of the group algebra of a finite or (extended) affine Weyl group:
/// the sum over finite-order classes of the even and odd cohomology of the
/// centralizers.
#[derive(Clone, Debug)]
pub struct GroupHpReport {
    pub label: String,
    pub classes: Vec<ConjClassRecord>,
    pub hp: HomologySummary,
    pub infinite: Option<InfiniteOrderSummary>,
}

impl fmt::Display for GroupHpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            writeln!(f, "{}", c.report_line())?;
        }
        if let Some(s) = &self.infinite {
            writeln!(
                f,
                "infinite order within radius {}: {} elements, {} linear classes",
                s.radius, s.elements, s.linear_classes
            )?;
        }
        write!(f, "{}", self.hp)
    }
}

pub fn hp_group_algebra(d: &CoxeterDatum, radius: Option<usize>) -> Result<GroupHpReport> {
    let classes = finite_order_classes(d)?;
    let (mut even, mut odd) = (0, 0);
    for c in &classes {
        for (k, h) in c.cohomology.iter().enumerate() {
            if k % 2 == 0 {
                even += h;
            } else {
                odd += h;
            }
        }
    }
    let infinite = match radius {
        Some(r) if d.realization().is_some() => Some(infinite_order_summary(d, r)?),
        _ => None,
    };
    Ok(GroupHpReport {
        label: d.label().to_string(),
        classes,
        hp: hp(even, odd),
        infinite,
    })
}
