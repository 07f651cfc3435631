use super::DoubleGroupoid;
use crate::error::{Error, Result};
use crate::groupoid;
use crate::relation::Equivalence;

/// Disjoint union; every index of `t2` is shifted past those of `t1`.
pub fn disjoint_union(t1: &DoubleGroupoid, t2: &DoubleGroupoid) -> Result<DoubleGroupoid> {
    t1.require_valid()?;
    t2.require_valid()?;
    DoubleGroupoid::new(
        groupoid::disjoint_union(t1.horizontal(), t2.horizontal())?,
        groupoid::disjoint_union(t1.vertical(), t2.vertical())?,
        groupoid::disjoint_union(t1.vertical_boxes(), t2.vertical_boxes())?,
        groupoid::disjoint_union(t1.horizontal_boxes(), t2.horizontal_boxes())?,
    )
}

/// Componentwise product, indexed as in [`groupoid::direct_product`].
pub fn direct_product(t1: &DoubleGroupoid, t2: &DoubleGroupoid) -> Result<DoubleGroupoid> {
    t1.require_valid()?;
    t2.require_valid()?;
    DoubleGroupoid::new(
        groupoid::direct_product(t1.horizontal(), t2.horizontal())?,
        groupoid::direct_product(t1.vertical(), t2.vertical())?,
        groupoid::direct_product(t1.vertical_boxes(), t2.vertical_boxes())?,
        groupoid::direct_product(t1.horizontal_boxes(), t2.horizontal_boxes())?,
    )
}

/// Classes of `P ∼_D Q ⟺ ∃R: P ∼_h R, R ∼_v Q`, where `∼_h`, `∼_v` are the
/// connectivity relations of `ℋ` and `𝒱`. Errors with a witness triple
/// `(P, Q, R)` when `∼_D` is not an equivalence relation.
pub fn diagonal_components(t: &DoubleGroupoid) -> Result<Vec<Vec<usize>>> {
    let n = t.n_points();
    let h = Equivalence::from_classes(n, &t.horizontal().components())?;
    let v = Equivalence::from_classes(n, &t.vertical().components())?;
    let rel: Vec<bool> = (0..n * n)
        .map(|pq| {
            let (p, q) = (pq / n, pq % n);
            (0..n).any(|r| h.related(p, r) && v.related(r, q))
        })
        .collect();
    let d = |p: usize, q: usize| rel[p * n + q];
    for p in 0..n {
        for q in 0..n {
            if d(p, q) && !d(q, p) {
                return Err(Error::DiagonalNotEquivalence(vec![p, q, p]));
            }
            for r in 0..n {
                if d(p, q) && d(q, r) && !d(p, r) {
                    return Err(Error::DiagonalNotEquivalence(vec![p, q, r]));
                }
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|p| (0..n).find(|&q| d(q, p)).unwrap()).collect();
    Ok(Equivalence::from_labels(&labels).classes())
}
