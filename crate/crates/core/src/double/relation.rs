use super::{is_double_isomorphism, DoubleGroupoid, DoubleMap, Frame, VacancyVerdict};
use crate::error::{structure, Error, Result};
use crate::groupoid::Groupoid;
use crate::relation::Equivalence;

/// Two equivalence relations on the same finite set of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleRelation {
    pub horizontal: Equivalence,
    pub vertical: Equivalence,
}

/// Groupoid of an equivalence relation: one arrow `(p, q)` for each related
/// pair, in lexicographic order. Returns the groupoid and a dense
/// `n × n` index table.
pub fn equivalence_groupoid(rel: &Equivalence) -> (Groupoid, Vec<Option<usize>>) {
    let n = rel.len();
    let mut index = vec![None; n * n];
    let mut pairs = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if rel.related(p, q) {
                index[p * n + q] = Some(pairs.len());
                pairs.push((p, q));
            }
        }
    }
    let idx = |p: usize, q: usize| index[p * n + q].expect("related pair");
    let g = Groupoid::from_fn(
        n,
        pairs.iter().map(|&(p, _)| p).collect(),
        pairs.iter().map(|&(_, q)| q).collect(),
        (0..n).map(|p| idx(p, p)).collect(),
        |a, b| idx(pairs[a].0, pairs[b].1),
    )
    .expect("equivalence groupoid");
    (g, index)
}

/// The double groupoid of a double relation: boxes are the matrices
/// `(P Q; R S)` with `P ∼_h Q`, `P ∼_v R`, `R ∼_h S`, `Q ∼_v S`, listed in
/// lexicographic order of `(P, Q, R, S)`.
pub fn from_double_relation(rel: &DoubleRelation) -> Result<DoubleGroupoid> {
    let n = rel.horizontal.len();
    if rel.vertical.len() != n {
        return structure("the two relations live on different point sets");
    }
    if n == 0 {
        return Err(Error::EmptyBase);
    }
    let (hor, hidx) = equivalence_groupoid(&rel.horizontal);
    let (ver, vidx) = equivalence_groupoid(&rel.vertical);
    let mut quads = Vec::new();
    let mut box_index = std::collections::HashMap::new();
    for p in 0..n {
        for q in rel.horizontal.class(p) {
            for r in rel.vertical.class(p) {
                for s in rel.horizontal.class(r) {
                    if rel.vertical.related(q, s) {
                        box_index.insert((p, q, r, s), quads.len());
                        quads.push((p, q, r, s));
                    }
                }
            }
        }
    }
    let h = |p: usize, q: usize| hidx[p * n + q].expect("horizontal pair");
    let v = |p: usize, q: usize| vidx[p * n + q].expect("vertical pair");
    let frames: Vec<Frame> = quads
        .iter()
        .map(|&(p, q, r, s)| Frame {
            top: h(p, q),
            bottom: h(r, s),
            left: v(p, r),
            right: v(q, s),
        })
        .collect();
    let bx = |quad: (usize, usize, usize, usize)| box_index[&quad];
    let vid = (0..hor.n_arrows())
        .map(|x| {
            let (p, q) = (hor.source(x), hor.target(x));
            bx((p, q, p, q))
        })
        .collect();
    let hid = (0..ver.n_arrows())
        .map(|g| {
            let (p, r) = (ver.source(g), ver.target(g));
            bx((p, p, r, r))
        })
        .collect();
    DoubleGroupoid::from_frames(
        hor,
        ver,
        &frames,
        vid,
        hid,
        |a, b| {
            let (p, q, _, _) = quads[a];
            let (_, _, u, w) = quads[b];
            bx((p, q, u, w))
        },
        |a, b| {
            let (p, _, r, _) = quads[a];
            let (_, x, _, y) = quads[b];
            bx((p, x, r, y))
        },
    )
}

/// `𝕏_{r,s}`: points `(i, j)` with index `i·s + j`, horizontally related when
/// they share `i`, vertically related when they share `j`.
pub fn build_xrs(r: usize, s: usize) -> Result<DoubleGroupoid> {
    if r == 0 || s == 0 {
        return Err(Error::EmptyBase);
    }
    let labels_h: Vec<usize> = (0..r * s).map(|p| p / s).collect();
    let labels_v: Vec<usize> = (0..r * s).map(|p| p % s).collect();
    from_double_relation(&DoubleRelation {
        horizontal: Equivalence::from_labels(&labels_h),
        vertical: Equivalence::from_labels(&labels_v),
    })
}

/// Result of recognising a vacant double relation as some `𝕏_{r,s}`.
#[derive(Clone, Debug)]
pub struct Classification {
    pub r: usize,
    pub s: usize,
    /// Isomorphism onto `build_xrs(r, s)`.
    pub witness: DoubleMap,
}

/// Recognises a connected vacant double relation as `𝕏_{r,s}`.
///
/// Rows are the horizontal classes ordered by smallest point; the point of
/// row `i` vertically related to the `j`-th point of the first row gets
/// coordinates `(i, j)`.
pub fn classify_vacant_relation(t: &DoubleGroupoid) -> Result<Classification> {
    t.require_valid()?;
    if let VacancyVerdict::NonVacant {
        horizontal,
        vertical,
        fillers,
    } = super::is_vacant(t)
    {
        return Err(Error::NotVacant {
            top: horizontal,
            right: vertical,
            fillers,
        });
    }
    let (h, v) = (t.horizontal(), t.vertical());
    let n = t.n_points();
    let not_relation = |what: &str| Err(Error::Invalid(format!("not a double relation: {what}")));
    for g in [h, v] {
        for p in 0..n {
            for q in 0..n {
                if g.hom(p, q).len() > 1 {
                    return not_relation("parallel edges");
                }
            }
        }
    }
    let hrel = Equivalence::from_classes(n, &h.components())?;
    let vrel = Equivalence::from_classes(n, &v.components())?;
    let rows = hrel.classes();
    let first = &rows[0];
    let (r, s) = (rows.len(), first.len());
    let mut coord = vec![usize::MAX; n];
    for (i, row) in rows.iter().enumerate() {
        for (j, &p) in first.iter().enumerate() {
            let hits: Vec<usize> = row.iter().copied().filter(|&q| vrel.related(p, q)).collect();
            if hits.len() != 1 {
                return Err(Error::Unsupported(format!(
                    "double relation is not connected along the diagonal (row {i}, column {j}); \
                     classify its diagonal components separately"
                )));
            }
            if coord[hits[0]] != usize::MAX {
                return not_relation("row map is not injective");
            }
            coord[hits[0]] = i * s + j;
        }
    }
    if coord.contains(&usize::MAX) {
        return not_relation("rows of unequal size");
    }
    let x = build_xrs(r, s)?;
    let edge_map = |g: &Groupoid, target: &Groupoid| -> Vec<usize> {
        (0..g.n_arrows())
            .map(|a| {
                let hom = target.hom(coord[g.source(a)], coord[g.target(a)]);
                hom.first().copied().unwrap_or(usize::MAX)
            })
            .collect()
    };
    let hm = edge_map(h, x.horizontal());
    let vm = edge_map(v, x.vertical());
    let mut bm = Vec::with_capacity(t.n_boxes());
    for a in 0..t.n_boxes() {
        let f = t.frame(a);
        let image = (0..x.n_boxes()).find(|&b| {
            let g = x.frame(b);
            hm.get(f.top) == Some(&g.top) && hm.get(f.bottom) == Some(&g.bottom)
                && vm.get(f.left) == Some(&g.left)
                && vm.get(f.right) == Some(&g.right)
        });
        match image {
            Some(b) => bm.push(b),
            None => return not_relation("box frame has no counterpart"),
        }
    }
    let witness = DoubleMap {
        points: coord,
        horizontal: hm,
        vertical: vm,
        boxes: bm,
    };
    if !is_double_isomorphism(t, &x, &witness) {
        return not_relation("induced map is not an isomorphism");
    }
    Ok(Classification { r, s, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::is_vacant;

    #[test]
    fn xrs_sizes() {
        for (r, s) in [(1, 1), (2, 2), (2, 3), (3, 1)] {
            let x = build_xrs(r, s).unwrap();
            assert_eq!(x.n_boxes(), r * r * s * s);
            assert_eq!(x.n_points(), r * s);
            assert!(x.is_valid());
            assert!(is_vacant(&x).is_vacant());
        }
    }

    #[test]
    fn classification_recovers_shape() {
        for (r, s) in [(1, 1), (2, 2), (2, 3), (3, 2), (1, 4)] {
            let c = classify_vacant_relation(&build_xrs(r, s).unwrap()).unwrap();
            assert_eq!((c.r, c.s), (r, s));
        }
    }

    #[test]
    fn transpose_swaps_shape() {
        let c = classify_vacant_relation(&build_xrs(2, 3).unwrap().transpose()).unwrap();
        assert_eq!((c.r, c.s), (3, 2));
    }

    #[test]
    fn relabelled_points_classify() {
        // rows {0,3}, {1,2}; columns {0,1}, {2,3}
        let rel = DoubleRelation {
            horizontal: Equivalence::from_labels(&[0, 1, 1, 0]),
            vertical: Equivalence::from_labels(&[0, 0, 1, 1]),
        };
        let t = from_double_relation(&rel).unwrap();
        let c = classify_vacant_relation(&t).unwrap();
        assert_eq!((c.r, c.s), (2, 2));
    }

    #[test]
    fn non_vacant_relation_is_refused() {
        // both relations total on two points: two fillers per corner pair
        let rel = DoubleRelation {
            horizontal: Equivalence::total(2),
            vertical: Equivalence::total(2),
        };
        let t = from_double_relation(&rel).unwrap();
        assert!(t.is_valid());
        assert!(matches!(classify_vacant_relation(&t), Err(Error::NotVacant { .. })));
    }
}
