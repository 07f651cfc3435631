//! Wide subgroupoids of a connected groupoid `D(O) × coarse(n)` described by
//! an equivalence relation, vertex subgroups, coset representatives and a
//! transversal.
//!
//! The ambient arrow `(g, (y, z))` has index `g·n² + y·n + z`. A transversal
//! entry `t_P` stands for the arrow `τ_P = (t_P, (0, P))`, so that
//! `ℋ(P, Q) = τ_P⁻¹ H_P d_PQ τ_Q` has group part `t_P⁻¹ H_P d_PQ t_Q`.

use super::{coarse_groupoid, direct_product, FiniteGroup, Groupoid};
use crate::error::{structure, Error, Result};
use crate::relation::Equivalence;
use crate::report::Report;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WideSubgroupoidData {
    pub relation: Equivalence,
    /// `H_P` for each object, sorted.
    pub vertex_groups: Vec<Vec<usize>>,
    /// `d_PQ`, defined exactly for related pairs.
    pub coset_reps: BTreeMap<(usize, usize), usize>,
    /// `t_P` for each object.
    pub transversal: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WideAxiom {
    /// `H_P` is a subgroup of `D`.
    Subgroup,
    /// `d_PQ H_Q = H_P d_PQ`.
    CosetsAgree,
    /// `d_PQ d_QR ∈ H_P d_PR`.
    Cocycle,
    /// `d_PP ∈ H_P`.
    Diagonal,
}

impl fmt::Display for WideAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WideAxiom::Subgroup => "vertex subgroup",
            WideAxiom::CosetsAgree => "d_PQ H_Q = H_P d_PQ",
            WideAxiom::Cocycle => "d_PQ d_QR in H_P d_PR",
            WideAxiom::Diagonal => "d_PP in H_P",
        };
        f.write_str(s)
    }
}

pub fn ambient_groupoid(group: &FiniteGroup, n: usize) -> Result<Groupoid> {
    direct_product(&group.as_groupoid(), &coarse_groupoid(n)?)
}

impl WideSubgroupoidData {
    fn check_shape(&self, group: &FiniteGroup, n: usize) -> Result<()> {
        if self.relation.len() != n || self.vertex_groups.len() != n || self.transversal.len() != n
        {
            return structure("wide subgroupoid data sized for a different object count");
        }
        let d = group.order();
        if self.transversal.iter().any(|&t| t >= d) {
            return structure("transversal element out of range");
        }
        for p in 0..n {
            for q in 0..n {
                match (self.relation.related(p, q), self.coset_reps.get(&(p, q))) {
                    (true, None) => return structure(format!("missing d for related pair ({p},{q})")),
                    (false, Some(_)) => {
                        return structure(format!("d given for unrelated pair ({p},{q})"))
                    }
                    (true, Some(&x)) if x >= d => {
                        return structure(format!("d for ({p},{q}) out of range"))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self, group: &FiniteGroup) -> Result<Report<WideAxiom>> {
        let n = self.relation.len();
        self.check_shape(group, n)?;
        let mut rep = Report::new();
        for p in 0..n {
            rep.check(group.is_subgroup(&self.vertex_groups[p]), WideAxiom::Subgroup, || vec![p]);
        }
        if !rep.is_ok() {
            return Ok(rep);
        }
        let d = |p: usize, q: usize| self.coset_reps[&(p, q)];
        let hs = |p: usize| &self.vertex_groups[p];
        let e = group.identity();
        for (&(p, q), &dpq) in &self.coset_reps {
            rep.check(
                group.translate(dpq, hs(q), e) == group.translate(e, hs(p), dpq),
                WideAxiom::CosetsAgree,
                || vec![p, q],
            );
            for r in 0..n {
                if self.relation.related(q, r) {
                    let x = group.mul(dpq, d(q, r));
                    rep.check(
                        group.translate(e, hs(p), d(p, r)).binary_search(&x).is_ok(),
                        WideAxiom::Cocycle,
                        || vec![p, q, r],
                    );
                }
            }
            if p == q {
                rep.check(hs(p).binary_search(&dpq).is_ok(), WideAxiom::Diagonal, || vec![p]);
            }
        }
        Ok(rep)
    }

    /// Equality up to the choice of coset representatives.
    pub fn equivalent(&self, other: &Self, group: &FiniteGroup) -> bool {
        let e = group.identity();
        self.relation == other.relation
            && self.vertex_groups == other.vertex_groups
            && self.transversal == other.transversal
            && self.coset_reps.keys().eq(other.coset_reps.keys())
            && self.coset_reps.iter().all(|(&(p, q), &d)| {
                group.translate(e, &self.vertex_groups[p], d)
                    == group.translate(e, &other.vertex_groups[p], other.coset_reps[&(p, q)])
            })
    }
}

/// The wide subgroupoid `ℋ` of `D(O) × coarse(n)` encoded by `data`, and the
/// ambient index of each of its arrows.
pub fn wide_subgroupoid_from_data(
    data: &WideSubgroupoidData,
    group: &FiniteGroup,
    n: usize,
) -> Result<(Groupoid, Vec<usize>)> {
    let rep = data.validate(group)?;
    if !rep.is_ok() {
        return Err(Error::Invalid(format!("wide subgroupoid data: {rep}")));
    }
    let ambient = ambient_groupoid(group, n)?;
    let mut arrows = Vec::new();
    for (&(p, q), &dpq) in &data.coset_reps {
        let tp_inv = group.inv(data.transversal[p]);
        for &h in &data.vertex_groups[p] {
            let g = group.mul(group.mul(group.mul(tp_inv, h), dpq), data.transversal[q]);
            arrows.push(g * n * n + p * n + q);
        }
    }
    ambient.wide_subgroupoid(&arrows)
}

/// Recovers the data of a wide subgroupoid given by ambient arrow indices,
/// relative to the transversal `t_P`. Coset representatives are the smallest
/// elements of their cosets.
pub fn data_from_wide_subgroupoid(
    arrows: &[usize],
    group: &FiniteGroup,
    n: usize,
    transversal: &[usize],
) -> Result<WideSubgroupoidData> {
    let ambient = ambient_groupoid(group, n)?;
    let (_, arrows) = ambient.wide_subgroupoid(arrows)?;
    if transversal.len() != n || transversal.iter().any(|&t| t >= group.order()) {
        return structure("transversal does not match the ambient groupoid");
    }
    let nn = n * n;
    let mut hom: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &a in &arrows {
        let (g, p, q) = (a / nn, (a % nn) / n, a % n);
        hom.entry((p, q)).or_default().push(g);
    }
    let labels: Vec<usize> = (0..n)
        .map(|p| (0..n).find(|&q| hom.contains_key(&(q, p))).unwrap())
        .collect();
    let relation = Equivalence::from_labels(&labels);
    let conj = |p: usize, g: usize, q: usize| {
        group.mul(group.mul(transversal[p], g), group.inv(transversal[q]))
    };
    let vertex_groups = (0..n)
        .map(|p| {
            let mut h: Vec<usize> = hom[&(p, p)].iter().map(|&g| conj(p, g, p)).collect();
            h.sort_unstable();
            h
        })
        .collect();
    let coset_reps = hom
        .iter()
        .map(|(&(p, q), gs)| ((p, q), gs.iter().map(|&g| conj(p, g, q)).min().unwrap()))
        .collect();
    Ok(WideSubgroupoidData {
        relation,
        vertex_groups,
        coset_reps,
        transversal: transversal.to_vec(),
    })
}
