use super::iso::{is_isomorphism, GroupoidMap};
use super::{coarse_groupoid, direct_product, FiniteGroup, Groupoid};
use crate::error::{Error, Result};

/// A connected component `C` with base point `x`, presented as
/// `G(x) × coarse(C)`.
#[derive(Clone, Debug)]
pub struct Component {
    /// Objects of the component, ascending.
    pub objects: Vec<usize>,
    /// Base point: the smallest object.
    pub base: usize,
    /// Arrows of the vertex group `G(x)`, ascending.
    pub vertex_group: Vec<usize>,
    /// `transversal[i]` is the chosen arrow from `base` to `objects[i]`
    /// (the identity for the base, otherwise the smallest-index arrow).
    pub transversal: Vec<usize>,
    /// `G(x) × coarse(|C|)`; the arrow `(g, (i, j))` has index `g·|C|² + i·|C| + j`.
    pub model: Groupoid,
    /// Isomorphism from the full subgroupoid on `objects` (arrows in ascending
    /// order) onto `model`.
    pub witness: GroupoidMap,
    /// Original arrow index of each arrow of the component subgroupoid.
    pub arrows: Vec<usize>,
}

impl Component {
    pub fn vertex_group_order(&self) -> usize {
        self.vertex_group.len()
    }
}

/// Splits `g` into connected components, each with an explicit isomorphism to
/// `G(x) × coarse(component)`. The isomorphism sends `α: y → z` to
/// `(τ_y α τ_z⁻¹, (y, z))`.
pub fn connected_decomposition(g: &Groupoid) -> Result<Vec<Component>> {
    let rep = g.validate();
    if !rep.is_ok() {
        return Err(Error::Invalid(format!("not a groupoid: {rep}")));
    }
    let mut out = Vec::new();
    for objects in g.components() {
        let base = objects[0];
        let (sub, arrows) = g.full_subgroupoid(&objects)?;
        let k = objects.len();
        let vertex_group = sub.hom(0, 0);
        let vertex_orig: Vec<usize> = vertex_group.iter().map(|&a| arrows[a]).collect();
        let pos = |a: usize| vertex_group.iter().position(|&b| b == a).expect("vertex group");
        let group = FiniteGroup::from_fn(vertex_group.len(), |i, j| {
            pos(sub.mul(vertex_group[i], vertex_group[j]))
        })?;
        let transversal: Vec<usize> = (0..k)
            .map(|i| if i == 0 { sub.identity(0) } else { sub.hom(0, i)[0] })
            .collect();
        let model = direct_product(&group.as_groupoid(), &coarse_groupoid(k)?)?;
        let arrow_map: Vec<usize> = (0..sub.n_arrows())
            .map(|a| {
                let (y, z) = (sub.source(a), sub.target(a));
                let loop_ = sub.mul(sub.mul(transversal[y], a), sub.inv(transversal[z]));
                pos(loop_) * k * k + y * k + z
            })
            .collect();
        let witness = GroupoidMap {
            objects: (0..k).collect(),
            arrows: arrow_map,
        };
        if !is_isomorphism(&sub, &model, &witness) {
            return Err(Error::Internal(format!(
                "decomposition map of component at {base} is not an isomorphism"
            )));
        }
        out.push(Component {
            objects,
            base,
            vertex_group: vertex_orig,
            transversal: transversal.iter().map(|&a| arrows[a]).collect(),
            model,
            witness,
            arrows,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::disjoint_union;

    #[test]
    fn coarse_three_is_one_trivial_component() {
        let c = connected_decomposition(&coarse_groupoid(3).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].vertex_group_order(), 1);
        assert_eq!(c[0].objects, vec![0, 1, 2]);
    }

    #[test]
    fn union_of_group_and_coarse() {
        let g = disjoint_union(&FiniteGroup::cyclic(2).as_groupoid(), &coarse_groupoid(2).unwrap())
            .unwrap();
        let c = connected_decomposition(&g).unwrap();
        let summary: Vec<(usize, usize, usize)> = c
            .iter()
            .map(|c| (c.objects.len(), c.base, c.vertex_group_order()))
            .collect();
        assert_eq!(summary, vec![(1, 0, 2), (2, 1, 1)]);
    }
}
