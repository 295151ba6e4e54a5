use std::collections::BTreeSet;

use super::structure::{wedderburn_blocks, SpectrumDescription};
use super::{AlgebraMorphism, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Subspace, Vector};

/// Outcome of the spectrum-preservation test for one morphism `φ : L → J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpVerdict {
    pub holds: bool,
    /// The test ran on `φ⁺ : L⁺ → J⁺`.
    pub unit_adjoined: bool,
    pub source_prims: usize,
    pub target_prims: usize,
    /// Pairs `(i, j)` with `φ^{-1}(P'_i) ⊆ P_j`, `P'_i` primitive in `J`.
    pub relation: Vec<(usize, usize)>,
    /// `φ^*` as target index to source index, when it is a bijection.
    pub map: Option<Vec<usize>>,
    pub reason: String,
}

/// Primitive spectra of source and target and the containment relation.
pub fn spectrum_relation(
    phi: &AlgebraMorphism,
    seed: u64,
) -> Result<(SpectrumDescription, SpectrumDescription, Vec<(usize, usize)>)> {
    let k = phi.field();
    let sa = wedderburn_blocks(phi.source(), seed)?;
    let sb = wedderburn_blocks(phi.target(), seed)?;
    let mut rel = Vec::new();
    for (i, p) in sb.primitive_ideals.iter().enumerate() {
        let pre = phi.preimage(p);
        for (j, q) in sa.primitive_ideals.iter().enumerate() {
            if q.contains_subspace(k, &pre) {
                rel.push((i, j));
            }
        }
    }
    Ok((sa, sb, rel))
}

fn verdict_from(rel: Vec<(usize, usize)>, ns: usize, nt: usize, adjoined: bool) -> SpVerdict {
    let mut map = vec![usize::MAX; nt];
    let mut reason = String::new();
    for i in 0..nt {
        let hits: Vec<usize> = rel.iter().filter(|p| p.0 == i).map(|p| p.1).collect();
        if hits.len() != 1 && reason.is_empty() {
            reason = format!(
                "preimage of target primitive ideal {i} lies in {} source primitive ideals",
                hits.len()
            );
        }
        if let Some(&j) = hits.first() {
            map[i] = j;
        }
    }
    if reason.is_empty() {
        let image: BTreeSet<usize> = map.iter().copied().collect();
        if image.len() != nt {
            reason = "induced map on spectra is not injective".into();
        } else if nt != ns {
            reason = format!("induced map on spectra is not surjective ({nt} target, {ns} source)");
        }
    }
    let holds = reason.is_empty();
    SpVerdict {
        holds,
        unit_adjoined: adjoined,
        source_prims: ns,
        target_prims: nt,
        relation: rel,
        map: holds.then_some(map),
        reason: if holds { "bijection".into() } else { reason },
    }
}

/// Spectrum preservation of `φ`, or of `φ⁺` when either side lacks a unit.
pub fn is_spectrum_preserving(phi: &AlgebraMorphism, seed: u64) -> Result<SpVerdict> {
    let adjoin = !(phi.source().is_unital() && phi.target().is_unital());
    let f = if adjoin { phi.adjoin_unit() } else { phi.clone() };
    let (sa, sb, rel) = spectrum_relation(&f, seed)?;
    Ok(verdict_from(rel, sa.len(), sb.len(), adjoin))
}

/// Multiplicity of source block `j` in the restriction of target block `i`,
/// computed on semisimple quotients.
pub fn bratteli(phi: &AlgebraMorphism, seed: u64) -> Result<Vec<Vec<usize>>> {
    let k = phi.field();
    let sa = wedderburn_blocks(phi.source(), seed)?;
    let sb = wedderburn_blocks(phi.target(), seed)?;
    if !sb.radical.contains_subspace(k, &phi.image(&sa.radical)) {
        return Err(Error::InvalidInput(
            "morphism does not map the radical into the radical".into(),
        ));
    }
    let keep = sa.radical.complement_indices();
    let induce = |v: &Vector| -> Vector {
        let mut lift = phi.source().zero();
        for (c, x) in keep.iter().zip(v) {
            lift[*c] = x.clone();
        }
        sb.projection.mul_vec(k, &phi.apply(&lift))
    };
    let s = &sb.semisimple;
    let mut out = vec![vec![0usize; sa.len()]; sb.len()];
    for (j, e) in sa.idempotents.iter().enumerate() {
        let y = induce(e);
        for (i, f) in sb.idempotents.iter().enumerate() {
            let yi = s.mul(&y, f);
            let r = linalg::rank(k, &s.left_mult(&yi));
            let den = sb.blocks[i] * sa.blocks[j];
            if !r.is_multiple_of(den) {
                return Err(Error::Inconsistent(format!(
                    "rank {r} is not a multiple of {den} in Bratteli entry ({i}, {j})"
                )));
            }
            out[i][j] = r / den;
        }
    }
    Ok(out)
}

/// Square, with exactly one nonzero entry in every row and column.
pub fn is_generalized_permutation(m: &[Vec<usize>]) -> bool {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return false;
    }
    let rows_ok = m.iter().all(|r| r.iter().filter(|&&x| x != 0).count() == 1);
    let cols_ok = (0..n).all(|j| m.iter().filter(|r| r[j] != 0).count() == 1);
    rows_ok && cols_ok
}

/// Indices of the primitive ideals containing `ideal`.
pub fn vanishing_set(spec: &SpectrumDescription, a: &FinDimAlgebra, ideal: &Subspace) -> BTreeSet<usize> {
    spec.primitive_ideals
        .iter()
        .enumerate()
        .filter(|(_, p)| p.contains_subspace(a.field(), ideal))
        .map(|(i, _)| i)
        .collect()
}

/// Increasing chain of two-sided ideals `0 = F_0 ⊆ F_1 ⊆ ... ⊆ F_n = A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub ideals: Vec<Subspace>,
}

impl Filtration {
    pub fn new(a: &FinDimAlgebra, ideals: Vec<Subspace>) -> Result<Self> {
        let k = a.field();
        if ideals.len() < 2 {
            return Err(Error::MalformedFiltration("needs at least F_0 and F_1".into()));
        }
        if ideals[0].dim() != 0 {
            return Err(Error::MalformedFiltration("F_0 is not zero".into()));
        }
        if ideals.last().unwrap().dim() != a.dim() {
            return Err(Error::MalformedFiltration("last term is not the whole algebra".into()));
        }
        for (i, f) in ideals.iter().enumerate() {
            if f.ambient() != a.dim() {
                return Err(Error::MalformedFiltration(format!("F_{i} has the wrong ambient dimension")));
            }
            if !a.is_two_sided_ideal(f) {
                return Err(Error::NotAnIdeal(format!("F_{i}")));
            }
            if i > 0 && !f.contains_subspace(k, &ideals[i - 1]) {
                return Err(Error::MalformedFiltration(format!("F_{} is not contained in F_{i}", i - 1)));
            }
        }
        Ok(Filtration { ideals })
    }

    pub fn trivial(a: &FinDimAlgebra) -> Self {
        Filtration {
            ideals: vec![Subspace::zero(a.dim()), a.whole()],
        }
    }

    /// Number of layers.
    pub fn len(&self) -> usize {
        self.ideals.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerReport {
    pub index: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub verdict: SpVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakReport {
    pub holds: bool,
    pub reason: String,
    pub layers: Vec<LayerReport>,
}

impl WeakReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.layers {
            out.push_str(&format!(
                "layer {}: dim {} -> {}, prim {} -> {}, unit adjoined {}, {} ({})\n",
                l.index,
                l.source_dim,
                l.target_dim,
                l.verdict.source_prims,
                l.verdict.target_prims,
                l.verdict.unit_adjoined,
                if l.verdict.holds { "pass" } else { "fail" },
                l.verdict.reason
            ));
        }
        out.push_str(&format!(
            "weakly spectrum preserving: {} ({})\n",
            self.holds, self.reason
        ));
        out
    }
}

/// Checks `φ(L_k) ⊆ J_k` and spectrum preservation of every induced map
/// `L_k / L_{k-1} → J_k / J_{k-1}`.
pub fn is_weakly_spectrum_preserving(
    phi: &AlgebraMorphism,
    fl: &Filtration,
    fj: &Filtration,
    seed: u64,
) -> Result<WeakReport> {
    if fl.len() != fj.len() {
        return Err(Error::MalformedFiltration(format!(
            "filtration lengths differ: {} and {}",
            fl.len(),
            fj.len()
        )));
    }
    let k = phi.field();
    for i in 1..=fl.len() {
        if !fj.ideals[i].contains_subspace(k, &phi.image(&fl.ideals[i])) {
            return Ok(WeakReport {
                holds: false,
                reason: format!("φ(L_{i}) is not contained in J_{i}"),
                layers: Vec::new(),
            });
        }
    }
    let mut layers = Vec::new();
    for i in 1..=fl.len() {
        let src = phi.source().subquotient(&fl.ideals[i], &fl.ideals[i - 1])?;
        let dst = phi.target().subquotient(&fj.ideals[i], &fj.ideals[i - 1])?;
        let f = phi.induced(&src, &dst)?;
        let verdict = is_spectrum_preserving(&f, seed)?;
        layers.push(LayerReport {
            index: i,
            source_dim: src.algebra.dim(),
            target_dim: dst.algebra.dim(),
            verdict,
        });
    }
    let bad = layers.iter().find(|l| !l.verdict.holds);
    Ok(WeakReport {
        holds: bad.is_none(),
        reason: match bad {
            Some(l) => format!("layer {} fails", l.index),
            None => "all layers pass".into(),
        },
        layers,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructuralReport {
    pub checks: Vec<(String, bool)>,
}

impl StructuralReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect()
    }
}

fn restrict(phi: &AlgebraMorphism, big_src: &Subspace, small_src: &Subspace, big_dst: &Subspace, small_dst: &Subspace) -> Result<AlgebraMorphism> {
    let src = phi.source().subquotient(big_src, small_src)?;
    let dst = phi.target().subquotient(big_dst, small_dst)?;
    phi.induced(&src, &dst)
}

/// Extensional checks of the composition law, restriction to ideals and
/// quotients, `φ^*(V(J')) = V(φ^{-1}(J'))` and
/// `(φ^*)^{-1}(V(L')) = V(J φ(L')^n J)`.
pub fn structural_suite(
    phi: &AlgebraMorphism,
    psi: &AlgebraMorphism,
    target_ideals: &[Subspace],
    source_ideals: &[Subspace],
    seed: u64,
) -> Result<StructuralReport> {
    let mut report = StructuralReport::default();
    let comp = phi.then(psi)?;
    let vp = is_spectrum_preserving(phi, seed)?;
    let vq = is_spectrum_preserving(psi, seed)?;
    let vc = is_spectrum_preserving(&comp, seed)?;
    let count = [vp.holds, vq.holds, vc.holds].iter().filter(|&&b| b).count();
    report.checks.push(("composition: two out of three".into(), count != 2));
    if let (Some(mp), Some(mq), Some(mc)) = (&vp.map, &vq.map, &vc.map) {
        let agrees = (0..mc.len()).all(|i| mc[i] == mp[mq[i]]);
        report.checks.push(("composition: (ψφ)* = φ*ψ*".into(), agrees));
    }
    let Some(map) = vp.map.clone() else {
        return Ok(report);
    };
    let sl = wedderburn_blocks(phi.source(), seed)?;
    let sj = wedderburn_blocks(phi.target(), seed)?;
    let l = phi.source();
    let j = phi.target();
    for (t, jp) in target_ideals.iter().enumerate() {
        if !j.is_two_sided_ideal(jp) {
            return Err(Error::NotAnIdeal(format!("target ideal {t}")));
        }
        let pre = phi.preimage(jp);
        let zero_l = Subspace::zero(l.dim());
        let zero_j = Subspace::zero(j.dim());
        let on_ideal = restrict(phi, &pre, &zero_l, jp, &zero_j)?;
        report.checks.push((
            format!("restriction to ideal {t}"),
            is_spectrum_preserving(&on_ideal, seed)?.holds,
        ));
        let on_quot = restrict(phi, &l.whole(), &pre, &j.whole(), jp)?;
        report.checks.push((
            format!("quotient by ideal {t}"),
            is_spectrum_preserving(&on_quot, seed)?.holds,
        ));
        let lhs: BTreeSet<usize> = vanishing_set(&sj, j, jp).iter().map(|&i| map[i]).collect();
        let rhs = vanishing_set(&sl, l, &pre);
        report.checks.push((format!("φ*(V(J')) = V(φ^-1(J')) for ideal {t}"), lhs == rhs));
    }
    let n = sj.max_block().max(1);
    for (t, lp) in source_ideals.iter().enumerate() {
        if !l.is_two_sided_ideal(lp) {
            return Err(Error::NotAnIdeal(format!("source ideal {t}")));
        }
        let v = vanishing_set(&sl, l, lp);
        let lhs: BTreeSet<usize> = (0..map.len()).filter(|i| v.contains(&map[*i])).collect();
        let p = j.power(&phi.image(lp), n);
        let sandwich = j.product_span(&j.whole(), &j.product_span(&p, &j.whole()));
        let rhs = vanishing_set(&sj, j, &sandwich);
        report.checks.push((format!("(φ*)^-1(V(L')) = V(Jφ(L')^nJ) for ideal {t}"), lhs == rhs));
    }
    Ok(report)
}
