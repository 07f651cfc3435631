//! Finite groupoids with dense index tables.
//!
//! Composition is written by juxtaposition: `compose(f, g)` is defined exactly
//! when `target(f) == source(g)`.

mod decompose;
mod group;
mod iso;
mod wide;

pub use decompose::{connected_decomposition, Component};
pub use group::FiniteGroup;
pub use iso::{find_isomorphism, is_isomorphism, GroupoidMap};
pub use wide::{
    ambient_groupoid, data_from_wide_subgroupoid, wide_subgroupoid_from_data, WideAxiom,
    WideSubgroupoidData,
};

use crate::error::{structure, Error, Result};
use crate::report::Report;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    n_objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    identity: Vec<usize>,
    compose: Vec<Option<usize>>,
    inverse: Vec<Option<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GroupoidAxiom {
    IdentityEndpoints,
    CompositeEndpoints,
    LeftUnit,
    RightUnit,
    Associativity,
    Inverse,
}

impl fmt::Display for GroupoidAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupoidAxiom::IdentityEndpoints => "identity endpoints",
            GroupoidAxiom::CompositeEndpoints => "composite endpoints",
            GroupoidAxiom::LeftUnit => "left unit",
            GroupoidAxiom::RightUnit => "right unit",
            GroupoidAxiom::Associativity => "associativity",
            GroupoidAxiom::Inverse => "inverse",
        };
        f.write_str(s)
    }
}

pub type GroupoidReport = Report<GroupoidAxiom>;

impl Groupoid {
    /// Builds a groupoid from explicit composition triples `(f, g, fg)`.
    ///
    /// Structural checks only: indices in range, one entry per composable
    /// pair and none elsewhere. Axioms are checked by [`Groupoid::validate`].
    pub fn new(
        n_objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        identity: Vec<usize>,
        entries: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let n = check_shape(n_objects, &source, &target, &identity)?;
        let mut compose = vec![None; n * n];
        for (f, g, h) in entries {
            if f >= n || g >= n || h >= n {
                return structure(format!("composition entry ({f},{g},{h}) out of range"));
            }
            if target[f] != source[g] {
                return structure(format!("composition entry for non-composable pair ({f},{g})"));
            }
            if compose[f * n + g].replace(h).is_some() {
                return structure(format!("duplicate composition entry for ({f},{g})"));
            }
        }
        for f in 0..n {
            for g in 0..n {
                if target[f] == source[g] && compose[f * n + g].is_none() {
                    return structure(format!("missing composition entry for ({f},{g})"));
                }
            }
        }
        Ok(Self::assemble(n_objects, source, target, identity, compose))
    }

    /// Builds a groupoid whose composition is given by a closure evaluated on
    /// every composable pair.
    pub fn from_fn(
        n_objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        identity: Vec<usize>,
        mut mul: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = check_shape(n_objects, &source, &target, &identity)?;
        let mut compose = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                if target[f] == source[g] {
                    let h = mul(f, g);
                    if h >= n {
                        return structure(format!("composite of ({f},{g}) out of range"));
                    }
                    compose[f * n + g] = Some(h);
                }
            }
        }
        Ok(Self::assemble(n_objects, source, target, identity, compose))
    }

    fn assemble(
        n_objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        identity: Vec<usize>,
        compose: Vec<Option<usize>>,
    ) -> Self {
        let n = source.len();
        let mut inverse = vec![None; n];
        for f in 0..n {
            let (s, t) = (source[f], target[f]);
            inverse[f] = (0..n).find(|&g| {
                source[g] == t
                    && target[g] == s
                    && compose[f * n + g] == Some(identity[s])
                    && compose[g * n + f] == Some(identity[t])
            });
        }
        Groupoid {
            n_objects,
            source,
            target,
            identity,
            compose,
            inverse,
        }
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_arrows(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self, f: usize) -> usize {
        self.source[f]
    }

    pub fn target(&self, f: usize) -> usize {
        self.target[f]
    }

    pub fn sources(&self) -> &[usize] {
        &self.source
    }

    pub fn targets(&self) -> &[usize] {
        &self.target
    }

    pub fn identities(&self) -> &[usize] {
        &self.identity
    }

    pub fn identity(&self, p: usize) -> usize {
        self.identity[p]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.source[f]] == f
    }

    pub fn composable(&self, f: usize, g: usize) -> bool {
        self.target[f] == self.source[g]
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose[f * self.n_arrows() + g]
    }

    /// Composite of a pair known to be composable.
    pub fn mul(&self, f: usize, g: usize) -> usize {
        self.compose(f, g)
            .unwrap_or_else(|| panic!("arrows {f} and {g} are not composable"))
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f]
    }

    /// Inverse in a validated groupoid.
    pub fn inv(&self, f: usize) -> usize {
        self.inverse[f].unwrap_or_else(|| panic!("arrow {f} has no inverse"))
    }

    /// All composition triples `(f, g, fg)` in lexicographic order.
    pub fn entries(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n_arrows();
        let mut out = Vec::new();
        for f in 0..n {
            for g in 0..n {
                if let Some(h) = self.compose[f * n + g] {
                    out.push((f, g, h));
                }
            }
        }
        out
    }

    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        self.entries().into_iter().map(|(f, g, _)| (f, g)).collect()
    }

    /// Arrows from `p` to `q`, ascending.
    pub fn hom(&self, p: usize, q: usize) -> Vec<usize> {
        (0..self.n_arrows())
            .filter(|&f| self.source[f] == p && self.target[f] == q)
            .collect()
    }

    pub fn validate(&self) -> GroupoidReport {
        let mut rep = Report::new();
        let n = self.n_arrows();
        for p in 0..self.n_objects {
            let e = self.identity[p];
            rep.check(
                self.source[e] == p && self.target[e] == p,
                GroupoidAxiom::IdentityEndpoints,
                || vec![p],
            );
        }
        for f in 0..n {
            for g in 0..n {
                let Some(h) = self.compose(f, g) else { continue };
                rep.check(
                    self.source[h] == self.source[f] && self.target[h] == self.target[g],
                    GroupoidAxiom::CompositeEndpoints,
                    || vec![f, g],
                );
            }
            let e = self.identity[self.source[f]];
            rep.check(
                self.compose(e, f) == Some(f),
                GroupoidAxiom::LeftUnit,
                || vec![f],
            );
            let e = self.identity[self.target[f]];
            rep.check(
                self.compose(f, e) == Some(f),
                GroupoidAxiom::RightUnit,
                || vec![f],
            );
            rep.check(self.inverse[f].is_some(), GroupoidAxiom::Inverse, || vec![f]);
        }
        if rep.failed(&GroupoidAxiom::CompositeEndpoints) {
            // associativity is meaningless when composites land in the wrong place
            return rep;
        }
        for (f, g, fg) in self.entries() {
            for h in 0..n {
                let Some(gh) = self.compose(g, h) else { continue };
                let left = self.compose(fg, h);
                let right = self.compose(f, gh);
                rep.check(
                    left.is_some() && left == right,
                    GroupoidAxiom::Associativity,
                    || vec![f, g, h],
                );
            }
        }
        rep
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub(crate) fn require_valid(&self, what: &str) -> Result<()> {
        let rep = self.validate();
        if rep.is_ok() {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{what} is not a groupoid: {rep}")))
        }
    }

    /// Partition of the objects into connected components, each sorted,
    /// ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label: Vec<usize> = (0..self.n_objects).collect();
        fn find(label: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while label[r] != r {
                r = label[r];
            }
            let mut y = x;
            while label[y] != r {
                let next = label[y];
                label[y] = r;
                y = next;
            }
            r
        }
        for f in 0..self.n_arrows() {
            let a = find(&mut label, self.source[f]);
            let b = find(&mut label, self.target[f]);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                label[hi] = lo;
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n_objects];
        for p in 0..self.n_objects {
            let r = find(&mut label, p);
            if slot[r] == usize::MAX {
                slot[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[slot[r]].push(p);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Full subgroupoid on a set of objects. Returns the subgroupoid and, for
    /// each of its arrows, the original arrow index.
    pub fn full_subgroupoid(&self, objects: &[usize]) -> Result<(Groupoid, Vec<usize>)> {
        let mut obj_index = vec![usize::MAX; self.n_objects];
        for (i, &p) in objects.iter().enumerate() {
            if p >= self.n_objects {
                return structure(format!("object {p} out of range"));
            }
            obj_index[p] = i;
        }
        let arrows: Vec<usize> = (0..self.n_arrows())
            .filter(|&f| {
                obj_index[self.source[f]] != usize::MAX && obj_index[self.target[f]] != usize::MAX
            })
            .collect();
        self.sub_on(objects, &obj_index, arrows)
    }

    /// Wide subgroupoid spanned by an arrow subset (which must contain all
    /// identities and be closed under composition and inverses).
    pub fn wide_subgroupoid(&self, arrows: &[usize]) -> Result<(Groupoid, Vec<usize>)> {
        let mut arrows = arrows.to_vec();
        arrows.sort_unstable();
        arrows.dedup();
        let mut member = vec![false; self.n_arrows()];
        for &f in &arrows {
            if f >= self.n_arrows() {
                return structure(format!("arrow {f} out of range"));
            }
            member[f] = true;
        }
        for p in 0..self.n_objects {
            if !member[self.identity[p]] {
                return Err(Error::NotSubgroupoid(format!("missing identity of object {p}")));
            }
        }
        for &f in &arrows {
            if !member[self.inv(f)] {
                return Err(Error::NotSubgroupoid(format!("not closed under inverse at {f}")));
            }
            for &g in &arrows {
                if let Some(h) = self.compose(f, g) {
                    if !member[h] {
                        return Err(Error::NotSubgroupoid(format!(
                            "not closed under composition at ({f},{g})"
                        )));
                    }
                }
            }
        }
        let objects: Vec<usize> = (0..self.n_objects).collect();
        self.sub_on(&objects, &objects, arrows)
    }

    fn sub_on(
        &self,
        objects: &[usize],
        obj_index: &[usize],
        arrows: Vec<usize>,
    ) -> Result<(Groupoid, Vec<usize>)> {
        let mut arrow_index = vec![usize::MAX; self.n_arrows()];
        for (i, &f) in arrows.iter().enumerate() {
            arrow_index[f] = i;
        }
        let source = arrows.iter().map(|&f| obj_index[self.source[f]]).collect();
        let target = arrows.iter().map(|&f| obj_index[self.target[f]]).collect();
        let identity = objects.iter().map(|&p| arrow_index[self.identity[p]]).collect();
        let g = Groupoid::from_fn(objects.len(), source, target, identity, |a, b| {
            arrow_index[self.mul(arrows[a], arrows[b])]
        })?;
        Ok((g, arrows))
    }
}

fn check_shape(
    n_objects: usize,
    source: &[usize],
    target: &[usize],
    identity: &[usize],
) -> Result<usize> {
    if n_objects == 0 {
        return Err(Error::EmptyBase);
    }
    let n = source.len();
    if target.len() != n {
        return structure("source and target tables differ in length");
    }
    if identity.len() != n_objects {
        return structure("identity table length differs from object count");
    }
    if let Some(f) = (0..n).find(|&f| source[f] >= n_objects || target[f] >= n_objects) {
        return structure(format!("arrow {f} has an endpoint out of range"));
    }
    if let Some(p) = (0..n_objects).find(|&p| identity[p] >= n) {
        return structure(format!("identity of object {p} out of range"));
    }
    Ok(n)
}

/// The coarse (pair) groupoid on `n` objects: exactly one arrow `(y, z)` from
/// `y` to `z`, indexed `y * n + z`.
pub fn coarse_groupoid(n: usize) -> Result<Groupoid> {
    if n == 0 {
        return Err(Error::EmptyBase);
    }
    let arrows = n * n;
    let source = (0..arrows).map(|a| a / n).collect();
    let target = (0..arrows).map(|a| a % n).collect();
    let identity = (0..n).map(|y| y * n + y).collect();
    Groupoid::from_fn(n, source, target, identity, |a, b| (a / n) * n + b % n)
}

/// One-object groupoid of a group given by its Cayley table.
pub fn one_object_group(table: &[Vec<usize>]) -> Result<Groupoid> {
    let g = FiniteGroup::from_table(table)?;
    Ok(g.as_groupoid())
}

/// Disjoint union; arrows and objects of `g2` follow those of `g1`.
pub fn disjoint_union(g1: &Groupoid, g2: &Groupoid) -> Result<Groupoid> {
    g1.require_valid("first operand")?;
    g2.require_valid("second operand")?;
    let (n1, m1) = (g1.n_arrows(), g1.n_objects());
    let source = g1
        .source
        .iter()
        .copied()
        .chain(g2.source.iter().map(|&p| p + m1))
        .collect();
    let target = g1
        .target
        .iter()
        .copied()
        .chain(g2.target.iter().map(|&p| p + m1))
        .collect();
    let identity = g1
        .identity
        .iter()
        .copied()
        .chain(g2.identity.iter().map(|&f| f + n1))
        .collect();
    Groupoid::from_fn(m1 + g2.n_objects(), source, target, identity, |a, b| {
        if a < n1 {
            g1.mul(a, b)
        } else {
            g2.mul(a - n1, b - n1) + n1
        }
    })
}

/// Direct product; the arrow `(a, b)` has index `a * |g2| + b` and the object
/// `(p, q)` has index `p * |objects of g2| + q`.
pub fn direct_product(g1: &Groupoid, g2: &Groupoid) -> Result<Groupoid> {
    g1.require_valid("first operand")?;
    g2.require_valid("second operand")?;
    let (n2, m2) = (g2.n_arrows(), g2.n_objects());
    let n = g1.n_arrows() * n2;
    let source = (0..n)
        .map(|f| g1.source(f / n2) * m2 + g2.source(f % n2))
        .collect();
    let target = (0..n)
        .map(|f| g1.target(f / n2) * m2 + g2.target(f % n2))
        .collect();
    let identity = (0..g1.n_objects() * m2)
        .map(|p| g1.identity(p / m2) * n2 + g2.identity(p % m2))
        .collect();
    Groupoid::from_fn(g1.n_objects() * m2, source, target, identity, |a, b| {
        g1.mul(a / n2, b / n2) * n2 + g2.mul(a % n2, b % n2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_has_n_squared_arrows_and_validates() {
        for n in 1..5 {
            let g = coarse_groupoid(n).unwrap();
            assert_eq!(g.n_arrows(), n * n);
            assert!(g.is_valid());
        }
        assert_eq!(coarse_groupoid(0), Err(Error::EmptyBase));
    }

    #[test]
    fn cyclic_group_is_one_object_groupoid() {
        let table: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        let g = one_object_group(&table).unwrap();
        assert_eq!((g.n_objects(), g.n_arrows()), (1, 3));
        assert!(g.is_valid());
        assert_eq!(g.inv(1), 2);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let table = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        assert!(matches!(one_object_group(&table), Err(Error::NotAGroup { .. })));
    }

    #[test]
    fn missing_entry_is_structural() {
        let r = Groupoid::new(1, vec![0, 0], vec![0, 0], vec![0], vec![(0, 0, 0), (0, 1, 1), (1, 0, 1)]);
        assert!(matches!(r, Err(Error::Structure(_))));
    }

    #[test]
    fn broken_associativity_is_reported() {
        // a two-element magma with identity 0 but 1*1 = 1: no inverse for 1
        let g = Groupoid::new(
            1,
            vec![0, 0],
            vec![0, 0],
            vec![0],
            vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
        )
        .unwrap();
        let rep = g.validate();
        assert!(rep.failed(&GroupoidAxiom::Inverse));
    }

    #[test]
    fn union_and_product_sizes() {
        let a = coarse_groupoid(2).unwrap();
        let b = coarse_groupoid(3).unwrap();
        let u = disjoint_union(&a, &b).unwrap();
        assert_eq!((u.n_objects(), u.n_arrows()), (5, 13));
        assert_eq!(u.components(), vec![vec![0, 1], vec![2, 3, 4]]);
        let p = direct_product(&a, &b).unwrap();
        assert_eq!((p.n_objects(), p.n_arrows()), (6, 36));
        assert!(u.is_valid() && p.is_valid());
        assert!(p.is_connected());
    }

    #[test]
    fn wide_subgroupoid_checks_closure() {
        let g = coarse_groupoid(2).unwrap();
        assert!(g.wide_subgroupoid(&[0, 3]).is_ok());
        assert!(matches!(g.wide_subgroupoid(&[0, 1, 3]), Err(Error::NotSubgroupoid(_))));
        assert!(matches!(g.wide_subgroupoid(&[0]), Err(Error::NotSubgroupoid(_))));
    }
}
