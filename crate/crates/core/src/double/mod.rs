//! Finite double groupoids.
//!
//! A box `A` has a frame `(t, b, l, r)`: top and bottom in the horizontal
//! groupoid `ℋ`, left and right in the vertical groupoid `𝒱`. Both box
//! compositions are stored as groupoids on the box set:
//!
//! * vertical composition `A/B` (A above B, needs `b(A) = t(B)`) makes
//!   `ℬ ⇉ ℋ` with source `t`, target `b` and identities `vid(x)`;
//! * horizontal composition `AB` (A left of B, needs `r(A) = l(B)`) makes
//!   `ℬ ⇉ 𝒱` with source `l`, target `r` and identities `hid(g)`.

pub mod lemmas;
mod ops;
mod relation;
mod vacancy;

pub use ops::{diagonal_components, disjoint_union, direct_product};
pub use relation::{
    build_xrs, classify_vacant_relation, equivalence_groupoid, from_double_relation,
    Classification, DoubleRelation,
};
pub use vacancy::{
    condition_four, condition_two, corner_verdict, is_vacant, vacancy_report, Corner,
    VacancyReport, VacancyVerdict,
};

use crate::error::{structure, Error, Result};
use crate::groupoid::{is_isomorphism, Groupoid, GroupoidAxiom, GroupoidMap};
use crate::report::Report;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Frame {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleGroupoid {
    horizontal: Groupoid,
    vertical: Groupoid,
    boxes_v: Groupoid,
    boxes_h: Groupoid,
}

/// Axioms of a double groupoid, numbered 0 through 6, plus invertibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DoubleAxiom {
    /// Axiom 0: the four structures are categories.
    Categories,
    /// Axiom 1: the four corners of a frame match.
    Corners,
    /// Axiom 2: frames of composites.
    CompositeFrames,
    /// Axiom 3: interchange law.
    Interchange,
    /// Axiom 4: frames of identity boxes.
    IdentityFrames,
    /// Axiom 5: `vid(id_P) = hid(id_P)`.
    PointIdentities,
    /// Axiom 6: identity boxes compose like their edges.
    IdentityComposites,
    /// Every edge and box is invertible.
    Invertibility,
}

impl DoubleAxiom {
    pub fn number(&self) -> Option<u8> {
        match self {
            DoubleAxiom::Categories => Some(0),
            DoubleAxiom::Corners => Some(1),
            DoubleAxiom::CompositeFrames => Some(2),
            DoubleAxiom::Interchange => Some(3),
            DoubleAxiom::IdentityFrames => Some(4),
            DoubleAxiom::PointIdentities => Some(5),
            DoubleAxiom::IdentityComposites => Some(6),
            DoubleAxiom::Invertibility => None,
        }
    }
}

impl fmt::Display for DoubleAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.number() {
            Some(n) => write!(f, "axiom {n}"),
            None => write!(f, "invertibility"),
        }
    }
}

pub type DoubleReport = Report<DoubleAxiom>;

/// Horizontal, vertical and total inverses of every box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxInverseTable {
    pub horizontal: Vec<usize>,
    pub vertical: Vec<usize>,
    /// `A⁻¹ = (A^h)^v`, which equals `(A^v)^h`.
    pub total: Vec<usize>,
}

impl DoubleGroupoid {
    /// Assembles a double groupoid from its four structures. Only sizes are
    /// checked here; see [`DoubleGroupoid::validate`].
    pub fn new(
        horizontal: Groupoid,
        vertical: Groupoid,
        boxes_v: Groupoid,
        boxes_h: Groupoid,
    ) -> Result<Self> {
        if horizontal.n_objects() != vertical.n_objects() {
            return structure("horizontal and vertical edges have different point sets");
        }
        if boxes_v.n_objects() != horizontal.n_arrows() {
            return structure("vertical box composition is not over the horizontal edges");
        }
        if boxes_h.n_objects() != vertical.n_arrows() {
            return structure("horizontal box composition is not over the vertical edges");
        }
        if boxes_v.n_arrows() != boxes_h.n_arrows() {
            return structure("box compositions disagree on the number of boxes");
        }
        Ok(DoubleGroupoid {
            horizontal,
            vertical,
            boxes_v,
            boxes_h,
        })
    }

    /// Builds the box structures from frames, identity boxes and composition
    /// closures evaluated on composable pairs.
    pub fn from_frames(
        horizontal: Groupoid,
        vertical: Groupoid,
        frames: &[Frame],
        vid: Vec<usize>,
        hid: Vec<usize>,
        vcomp: impl FnMut(usize, usize) -> usize,
        hcomp: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        if let Some(a) = frames.iter().position(|f| {
            f.top >= horizontal.n_arrows()
                || f.bottom >= horizontal.n_arrows()
                || f.left >= vertical.n_arrows()
                || f.right >= vertical.n_arrows()
        }) {
            return structure(format!("frame of box {a} out of range"));
        }
        let boxes_v = Groupoid::from_fn(
            horizontal.n_arrows(),
            frames.iter().map(|f| f.top).collect(),
            frames.iter().map(|f| f.bottom).collect(),
            vid,
            vcomp,
        )?;
        let boxes_h = Groupoid::from_fn(
            vertical.n_arrows(),
            frames.iter().map(|f| f.left).collect(),
            frames.iter().map(|f| f.right).collect(),
            hid,
            hcomp,
        )?;
        Self::new(horizontal, vertical, boxes_v, boxes_h)
    }

    pub fn horizontal(&self) -> &Groupoid {
        &self.horizontal
    }

    pub fn vertical(&self) -> &Groupoid {
        &self.vertical
    }

    /// `ℬ ⇉ ℋ` under vertical composition.
    pub fn vertical_boxes(&self) -> &Groupoid {
        &self.boxes_v
    }

    /// `ℬ ⇉ 𝒱` under horizontal composition.
    pub fn horizontal_boxes(&self) -> &Groupoid {
        &self.boxes_h
    }

    pub fn n_points(&self) -> usize {
        self.horizontal.n_objects()
    }

    pub fn n_boxes(&self) -> usize {
        self.boxes_v.n_arrows()
    }

    pub fn top(&self, a: usize) -> usize {
        self.boxes_v.source(a)
    }

    pub fn bottom(&self, a: usize) -> usize {
        self.boxes_v.target(a)
    }

    pub fn left(&self, a: usize) -> usize {
        self.boxes_h.source(a)
    }

    pub fn right(&self, a: usize) -> usize {
        self.boxes_h.target(a)
    }

    pub fn frame(&self, a: usize) -> Frame {
        Frame {
            top: self.top(a),
            bottom: self.bottom(a),
            left: self.left(a),
            right: self.right(a),
        }
    }

    /// `A/B`: `a` stacked on top of `b`.
    pub fn vcomp(&self, a: usize, b: usize) -> Option<usize> {
        self.boxes_v.compose(a, b)
    }

    /// `AB`: `a` to the left of `b`.
    pub fn hcomp(&self, a: usize, b: usize) -> Option<usize> {
        self.boxes_h.compose(a, b)
    }

    pub fn vid(&self, x: usize) -> usize {
        self.boxes_v.identity(x)
    }

    pub fn hid(&self, g: usize) -> usize {
        self.boxes_h.identity(g)
    }

    /// `Θ_P = vid(id_P)`.
    pub fn theta(&self, p: usize) -> usize {
        self.vid(self.horizontal.identity(p))
    }

    pub fn is_vid(&self, a: usize) -> bool {
        self.boxes_v.is_identity(a)
    }

    pub fn is_hid(&self, a: usize) -> bool {
        self.boxes_h.is_identity(a)
    }

    pub fn h_inv(&self, a: usize) -> usize {
        self.boxes_h.inv(a)
    }

    pub fn v_inv(&self, a: usize) -> usize {
        self.boxes_v.inv(a)
    }

    /// `A⁻¹ = (A^h)^v`.
    pub fn inv(&self, a: usize) -> usize {
        self.v_inv(self.h_inv(a))
    }

    pub fn validate(&self) -> DoubleReport {
        let mut rep = Report::new();
        for (id, g) in [&self.horizontal, &self.vertical, &self.boxes_v, &self.boxes_h]
            .into_iter()
            .enumerate()
        {
            for v in g.validate().violations {
                let axiom = if v.axiom == GroupoidAxiom::Inverse {
                    DoubleAxiom::Invertibility
                } else {
                    DoubleAxiom::Categories
                };
                let mut w = vec![id];
                w.extend(v.witness);
                rep.push(axiom, w);
            }
        }
        if rep.failed(&DoubleAxiom::Categories) {
            return rep;
        }
        let (h, v) = (&self.horizontal, &self.vertical);
        for a in 0..self.n_boxes() {
            let f = self.frame(a);
            let corners_ok = h.target(f.top) == v.source(f.right)
                && h.source(f.top) == v.source(f.left)
                && h.source(f.bottom) == v.target(f.left)
                && h.target(f.bottom) == v.target(f.right);
            rep.check(corners_ok, DoubleAxiom::Corners, || vec![a]);
        }
        for (a, b, c) in self.boxes_v.entries() {
            let ok = v.compose(self.left(a), self.left(b)) == Some(self.left(c))
                && v.compose(self.right(a), self.right(b)) == Some(self.right(c));
            rep.check(ok, DoubleAxiom::CompositeFrames, || vec![0, a, b]);
        }
        for (a, b, c) in self.boxes_h.entries() {
            let ok = h.compose(self.top(a), self.top(b)) == Some(self.top(c))
                && h.compose(self.bottom(a), self.bottom(b)) == Some(self.bottom(c));
            rep.check(ok, DoubleAxiom::CompositeFrames, || vec![1, a, b]);
        }
        if !rep.failed(&DoubleAxiom::CompositeFrames) {
            self.check_interchange(&mut rep);
        }
        for x in 0..h.n_arrows() {
            let f = self.frame(self.vid(x));
            let ok = f.top == x
                && f.bottom == x
                && f.left == v.identity(h.source(x))
                && f.right == v.identity(h.target(x));
            rep.check(ok, DoubleAxiom::IdentityFrames, || vec![0, x]);
        }
        for g in 0..v.n_arrows() {
            let f = self.frame(self.hid(g));
            let ok = f.left == g
                && f.right == g
                && f.top == h.identity(v.source(g))
                && f.bottom == h.identity(v.target(g));
            rep.check(ok, DoubleAxiom::IdentityFrames, || vec![1, g]);
        }
        for p in 0..self.n_points() {
            rep.check(
                self.vid(h.identity(p)) == self.hid(v.identity(p)),
                DoubleAxiom::PointIdentities,
                || vec![p],
            );
        }
        for (g1, g2, g) in v.entries() {
            rep.check(
                self.vcomp(self.hid(g1), self.hid(g2)) == Some(self.hid(g)),
                DoubleAxiom::IdentityComposites,
                || vec![1, g1, g2],
            );
        }
        for (x1, x2, x) in h.entries() {
            rep.check(
                self.hcomp(self.vid(x1), self.vid(x2)) == Some(self.vid(x)),
                DoubleAxiom::IdentityComposites,
                || vec![0, x1, x2],
            );
        }
        rep
    }

    fn check_interchange(&self, rep: &mut DoubleReport) {
        let by_top = self.boxes_by(|a| self.top(a), self.horizontal.n_arrows());
        for (a, b, ab) in self.boxes_h.entries() {
            for &c in &by_top[self.bottom(a)] {
                for &d in &by_top[self.bottom(b)] {
                    if self.left(d) != self.right(c) {
                        continue;
                    }
                    let cd = self.hcomp(c, d);
                    let lhs = cd.and_then(|cd| self.vcomp(ab, cd));
                    let rhs = match (self.vcomp(a, c), self.vcomp(b, d)) {
                        (Some(ac), Some(bd)) => self.hcomp(ac, bd),
                        _ => None,
                    };
                    rep.check(lhs.is_some() && lhs == rhs, DoubleAxiom::Interchange, || {
                        vec![a, b, c, d]
                    });
                }
            }
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let rep = self.validate();
        if rep.is_ok() {
            Ok(())
        } else {
            Err(Error::Invalid(format!("not a double groupoid: {rep}")))
        }
    }

    /// Boxes grouped by a key in `0..n`, each group ascending.
    pub fn boxes_by(&self, key: impl Fn(usize) -> usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n];
        for a in 0..self.n_boxes() {
            out[key(a)].push(a);
        }
        out
    }

    pub fn compute_inverses(&self) -> Result<BoxInverseTable> {
        let n = self.n_boxes();
        let mut horizontal = Vec::with_capacity(n);
        let mut vertical = Vec::with_capacity(n);
        for a in 0..n {
            let h = self
                .boxes_h
                .inverse(a)
                .ok_or_else(|| Error::Invalid(format!("box {a} has no horizontal inverse")))?;
            let v = self
                .boxes_v
                .inverse(a)
                .ok_or_else(|| Error::Invalid(format!("box {a} has no vertical inverse")))?;
            horizontal.push(h);
            vertical.push(v);
        }
        let total: Vec<usize> = (0..n).map(|a| vertical[horizontal[a]]).collect();
        if let Some(a) = (0..n).find(|&a| horizontal[vertical[a]] != total[a]) {
            return Err(Error::Internal(format!("(A^h)^v differs from (A^v)^h at box {a}")));
        }
        Ok(BoxInverseTable {
            horizontal,
            vertical,
            total,
        })
    }

    /// Exchanges the roles of horizontal and vertical. Box indices are kept.
    pub fn transpose(&self) -> DoubleGroupoid {
        DoubleGroupoid {
            horizontal: self.vertical.clone(),
            vertical: self.horizontal.clone(),
            boxes_v: self.boxes_h.clone(),
            boxes_h: self.boxes_v.clone(),
        }
    }
}

/// Maps on points, both edge sets and boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleMap {
    pub points: Vec<usize>,
    pub horizontal: Vec<usize>,
    pub vertical: Vec<usize>,
    pub boxes: Vec<usize>,
}

/// Checks that `map` is an isomorphism of double groupoids `t1 → t2`.
pub fn is_double_isomorphism(t1: &DoubleGroupoid, t2: &DoubleGroupoid, map: &DoubleMap) -> bool {
    let edge = |g1: &Groupoid, g2: &Groupoid, arrows: &[usize]| {
        is_isomorphism(
            g1,
            g2,
            &GroupoidMap {
                objects: map.points.clone(),
                arrows: arrows.to_vec(),
            },
        )
    };
    let boxes = |g1: &Groupoid, g2: &Groupoid, objects: &[usize]| {
        is_isomorphism(
            g1,
            g2,
            &GroupoidMap {
                objects: objects.to_vec(),
                arrows: map.boxes.clone(),
            },
        )
    };
    edge(&t1.horizontal, &t2.horizontal, &map.horizontal)
        && edge(&t1.vertical, &t2.vertical, &map.vertical)
        && boxes(&t1.boxes_v, &t2.boxes_v, &map.horizontal)
        && boxes(&t1.boxes_h, &t2.boxes_h, &map.vertical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn corpus_instances_validate() {
        for (name, t) in corpus::all() {
            let rep = t.validate();
            assert!(rep.is_ok(), "{name}: {rep}");
        }
    }

    #[test]
    fn transpose_is_an_involution() {
        for (_, t) in corpus::all() {
            assert_eq!(t.transpose().transpose(), t);
        }
    }

    #[test]
    fn inverse_frames() {
        for (name, t) in corpus::all() {
            let inv = t.compute_inverses().unwrap();
            let h = t.horizontal();
            let v = t.vertical();
            for a in 0..t.n_boxes() {
                let f = t.frame(a);
                let fh = t.frame(inv.horizontal[a]);
                let fv = t.frame(inv.vertical[a]);
                let ft = t.frame(inv.total[a]);
                assert_eq!(
                    (fh.top, fh.bottom, fh.left, fh.right),
                    (h.inv(f.top), h.inv(f.bottom), f.right, f.left),
                    "{name}"
                );
                assert_eq!(
                    (fv.top, fv.bottom, fv.left, fv.right),
                    (f.bottom, f.top, v.inv(f.left), v.inv(f.right)),
                    "{name}"
                );
                assert_eq!(
                    (ft.top, ft.bottom, ft.left, ft.right),
                    (h.inv(f.bottom), h.inv(f.top), v.inv(f.right), v.inv(f.left)),
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn corrupted_composition_is_reported() {
        let t = corpus::commuting_squares_z2();
        // redirect one composite to another box with the same left and right sides
        let h = t.horizontal_boxes();
        let entries = h.entries();
        let (a, b, c) = entries
            .iter()
            .copied()
            .find(|&(a, b, _)| !t.is_hid(a) && !t.is_hid(b))
            .unwrap();
        let other = (0..t.n_boxes())
            .find(|&d| d != c && t.left(d) == t.left(c) && t.right(d) == t.right(c))
            .expect("non-vacant instance has a second box with these sides");
        let broken = Groupoid::new(
            h.n_objects(),
            h.sources().to_vec(),
            h.targets().to_vec(),
            h.identities().to_vec(),
            entries
                .iter()
                .map(|&(x, y, z)| if (x, y) == (a, b) { (x, y, other) } else { (x, y, z) }),
        )
        .unwrap();
        let t2 = DoubleGroupoid::new(
            t.horizontal().clone(),
            t.vertical().clone(),
            t.vertical_boxes().clone(),
            broken,
        )
        .unwrap();
        let rep = t2.validate();
        assert!(!rep.is_ok());
    }
}
