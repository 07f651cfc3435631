//! The weak Hopf algebra `𝕜^τ_σ𝒯` on the boxes of a vacant double groupoid:
//! structure constants, sparse arithmetic and exhaustive axiom checks.
//!
//! `A·B = σ(A,B) A/B` when `b(A) = t(B)`, `Δ(A) = Σ_{BC=A} τ(B,C) B⊗C`,
//! `ε(A) = 1` iff `A` is a horizontal identity, and
//! `S(A) = τ(A,A^h)⁻¹ σ(A⁻¹,A^h)⁻¹ A⁻¹`.

use crate::cocycle::{CocyclePair, CocycleSpace, FieldCocycle};
use crate::double::{direct_product, disjoint_union, is_vacant, DoubleGroupoid, VacancyVerdict};
use crate::error::{structure, Error, Result};
use crate::field::Field;
use crate::groupoid::connected_decomposition;
use crate::relation::Equivalence;
use crate::report::Report;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

/// A finite linear combination of boxes; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<E> {
    basis: u64,
    terms: BTreeMap<usize, E>,
}

impl<E> Element<E> {
    pub fn terms(&self) -> &BTreeMap<usize, E> {
        &self.terms
    }

    pub fn coefficient(&self, a: usize) -> Option<&E> {
        self.terms.get(&a)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// An element of `W ⊗ W`, keyed by pairs of boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<E> {
    basis: u64,
    terms: BTreeMap<(usize, usize), E>,
}

impl<E> Tensor<E> {
    pub fn terms(&self) -> &BTreeMap<(usize, usize), E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WhaAxiom {
    Associativity,
    Unit,
    Coassociativity,
    Counit,
    /// `Δ(ab) = Δ(a)Δ(b)`.
    Multiplicativity,
    /// `Δ²(1) = (Δ1 ⊗ 1)(1 ⊗ Δ1)`.
    WeakUnitLeft,
    /// `Δ²(1) = (1 ⊗ Δ1)(Δ1 ⊗ 1)`.
    WeakUnitRight,
    /// `ε(abc) = ε(ab₁)ε(b₂c)`.
    WeakCounitLeft,
    /// `ε(abc) = ε(ab₂)ε(b₁c)`.
    WeakCounitRight,
    /// `m(id ⊗ S)Δ = ε_t`.
    AntipodeTarget,
    /// `m(S ⊗ id)Δ = ε_s`.
    AntipodeSource,
    /// `m²(S ⊗ id ⊗ S)Δ² = S`.
    AntipodeTriple,
}

impl WhaAxiom {
    pub fn label(&self) -> &'static str {
        match self {
            WhaAxiom::Associativity => "associativity",
            WhaAxiom::Unit => "unit",
            WhaAxiom::Coassociativity => "coassociativity",
            WhaAxiom::Counit => "counit",
            WhaAxiom::Multiplicativity => "d-mult",
            WhaAxiom::WeakUnitLeft => "ax-unit (left)",
            WhaAxiom::WeakUnitRight => "ax-unit (right)",
            WhaAxiom::WeakCounitLeft => "ax-counit (left)",
            WhaAxiom::WeakCounitRight => "ax-counit (right)",
            WhaAxiom::AntipodeTarget => "atp-1",
            WhaAxiom::AntipodeSource => "atp-2",
            WhaAxiom::AntipodeTriple => "atp-3",
        }
    }

    pub const ALL: [WhaAxiom; 12] = [
        WhaAxiom::Associativity,
        WhaAxiom::Unit,
        WhaAxiom::Coassociativity,
        WhaAxiom::Counit,
        WhaAxiom::Multiplicativity,
        WhaAxiom::WeakUnitLeft,
        WhaAxiom::WeakUnitRight,
        WhaAxiom::WeakCounitLeft,
        WhaAxiom::WeakCounitRight,
        WhaAxiom::AntipodeTarget,
        WhaAxiom::AntipodeSource,
        WhaAxiom::AntipodeTriple,
    ];
}

impl std::fmt::Display for WhaAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

pub type WhaReport = Report<WhaAxiom>;

type Map1<E> = BTreeMap<usize, E>;
type Map2<E> = BTreeMap<(usize, usize), E>;
type Map3<E> = BTreeMap<(usize, usize, usize), E>;

fn acc<K: Ord, F: Field>(f: &F, m: &mut BTreeMap<K, F::Elem>, k: K, v: F::Elem) {
    if f.is_zero(&v) {
        return;
    }
    use std::collections::btree_map::Entry;
    match m.entry(k) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            let s = f.add(e.get(), &v);
            if f.is_zero(&s) {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn fingerprint(t: &DoubleGroupoid) -> u64 {
    let mut h = DefaultHasher::new();
    (t.n_points(), t.n_boxes()).hash(&mut h);
    for a in 0..t.n_boxes() {
        (t.top(a), t.bottom(a), t.left(a), t.right(a)).hash(&mut h);
    }
    for a in 0..t.n_boxes() {
        (t.is_vid(a), t.is_hid(a), t.h_inv(a), t.v_inv(a)).hash(&mut h);
    }
    h.finish()
}

fn require_vacant(t: &DoubleGroupoid) -> Result<()> {
    t.require_valid()?;
    match is_vacant(t) {
        VacancyVerdict::Vacant => Ok(()),
        VacancyVerdict::NonVacant {
            horizontal,
            vertical,
            fillers,
        } => Err(Error::NotVacant {
            top: horizontal,
            right: vertical,
            fillers,
        }),
    }
}

/// `𝕜^τ_σ𝒯` as structure-constant tables over the field `F`.
#[derive(Clone, Debug)]
pub struct QuantumGroupoid<F: Field> {
    field: F,
    t: DoubleGroupoid,
    basis: u64,
    twisted: bool,
    /// `product[a·n + b]`: the box `a/b` and `σ(a, b)`.
    product: Vec<Option<(usize, F::Elem)>>,
    /// `coproduct[a]`: every `(b, c, τ(b, c))` with `bc = a`.
    coproduct: Vec<Vec<(usize, usize, F::Elem)>>,
    counit: Vec<bool>,
    antipode: Vec<(usize, F::Elem)>,
}

impl<F: Field> QuantumGroupoid<F> {
    /// The untwisted `𝕜𝒯`.
    pub fn build(t: &DoubleGroupoid, field: F) -> Result<Self> {
        require_vacant(t)?;
        let fc = CocycleSpace::new(t)?.trivial_field_cocycle(&field);
        Self::assemble(t, field, &fc)
    }

    /// `𝕜^τ_σ𝒯` for a `ℤ/m`-valued pair, read through `k ↦ ζᵏ`.
    pub fn build_twisted(t: &DoubleGroupoid, cp: &CocyclePair, field: F, zeta: &F::Elem) -> Result<Self> {
        require_vacant(t)?;
        let space = CocycleSpace::new(t)?;
        let rep = space.validate(cp)?;
        if !rep.is_ok() {
            return Err(Error::Invalid(format!("not a normalized cocycle pair: {rep}")));
        }
        let fc = space.embed(cp, &field, zeta)?;
        Self::assemble(t, field, &fc)
    }

    /// `𝕜^τ_σ𝒯` for a pair already valued in `𝕜^×`.
    pub fn with_cocycle(t: &DoubleGroupoid, field: F, fc: &FieldCocycle<F>) -> Result<Self> {
        require_vacant(t)?;
        let space = CocycleSpace::new(t)?;
        if fc.sigma.len() != space.vertical_pairs().len() || fc.tau.len() != space.horizontal_pairs().len() {
            return structure("cocycle tables do not match the composable pairs");
        }
        let rep = space.validate_field(fc, &field);
        if !rep.is_ok() {
            return Err(Error::Invalid(format!("not a normalized cocycle pair: {rep}")));
        }
        Self::assemble(t, field, fc)
    }

    fn assemble(t: &DoubleGroupoid, field: F, fc: &FieldCocycle<F>) -> Result<Self> {
        let space = CocycleSpace::new(t)?;
        let (vdom, hdom) = (space.vertical_pairs(), space.horizontal_pairs());
        let n = t.n_boxes();
        let one = field.one();
        let twisted = fc.sigma.iter().chain(&fc.tau).any(|s| *s != one);
        let mut product = vec![None; n * n];
        for (i, &(a, b)) in vdom.pairs().iter().enumerate() {
            product[a * n + b] = Some((t.vcomp(a, b).unwrap(), fc.sigma[i].clone()));
        }
        let mut coproduct = vec![Vec::new(); n];
        for (i, &(b, c)) in hdom.pairs().iter().enumerate() {
            coproduct[t.hcomp(b, c).unwrap()].push((b, c, fc.tau[i].clone()));
        }
        let sigma = |a, b| &fc.sigma[vdom.index(a, b).unwrap()];
        let tau = |a, b| &fc.tau[hdom.index(a, b).unwrap()];
        let mut antipode = Vec::with_capacity(n);
        for a in 0..n {
            let (ah, ai) = (t.h_inv(a), t.inv(a));
            let s = field.mul(tau(a, ah), sigma(ai, ah));
            let s = field
                .inv(&s)
                .ok_or_else(|| Error::Internal("zero cocycle value".into()))?;
            antipode.push((ai, s));
        }
        Ok(QuantumGroupoid {
            basis: fingerprint(t),
            counit: (0..n).map(|a| t.is_hid(a)).collect(),
            field,
            t: t.clone(),
            twisted,
            product,
            coproduct,
            antipode,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn double(&self) -> &DoubleGroupoid {
        &self.t
    }

    pub fn dim(&self) -> usize {
        self.t.n_boxes()
    }

    /// Whether some structure constant differs from 1.
    pub fn is_twisted(&self) -> bool {
        self.twisted
    }

    pub fn product_entry(&self, a: usize, b: usize) -> Option<&(usize, F::Elem)> {
        self.product[a * self.dim() + b].as_ref()
    }

    pub fn coproduct_entry(&self, a: usize) -> &[(usize, usize, F::Elem)] {
        &self.coproduct[a]
    }

    pub fn counit_entry(&self, a: usize) -> bool {
        self.counit[a]
    }

    pub fn antipode_entry(&self, a: usize) -> &(usize, F::Elem) {
        &self.antipode[a]
    }

    /// Copy with one product constant replaced; for exercising the checks.
    pub fn with_product_scalar(&self, a: usize, b: usize, s: F::Elem) -> Result<Self> {
        let n = self.dim();
        let mut w = self.clone();
        match w.product.get_mut(a * n + b) {
            Some(Some(entry)) if a < n && b < n => entry.1 = s,
            _ => return Err(Error::Invalid(format!("{a}·{b} is not a product of stackable boxes"))),
        }
        w.twisted = true;
        Ok(w)
    }

    // Elements.

    fn wrap(&self, terms: Map1<F::Elem>) -> Element<F::Elem> {
        Element {
            basis: self.basis,
            terms,
        }
    }

    fn check(&self, x: &Element<F::Elem>) -> Result<()> {
        if x.basis != self.basis {
            return Err(Error::BasisMismatch("element belongs to another box set".into()));
        }
        Ok(())
    }

    pub fn zero(&self) -> Element<F::Elem> {
        self.wrap(Map1::new())
    }

    pub fn basis_element(&self, a: usize) -> Result<Element<F::Elem>> {
        self.element(&[(a, self.field.one())])
    }

    pub fn element(&self, terms: &[(usize, F::Elem)]) -> Result<Element<F::Elem>> {
        let mut m = Map1::new();
        for (a, c) in terms {
            if *a >= self.dim() {
                return Err(Error::Invalid(format!("box {a} out of range")));
            }
            acc(&self.field, &mut m, *a, c.clone());
        }
        Ok(self.wrap(m))
    }

    /// `1 = Σ_x vid(x)`.
    pub fn unit(&self) -> Element<F::Elem> {
        self.wrap(self.unit_map())
    }

    fn unit_map(&self) -> Map1<F::Elem> {
        (0..self.t.horizontal().n_arrows())
            .map(|x| (self.t.vid(x), self.field.one()))
            .collect()
    }

    /// `_P1 = Σ_{l(x) = P} vid(x)`.
    pub fn left_local_unit(&self, p: usize) -> Element<F::Elem> {
        let h = self.t.horizontal();
        self.wrap(
            (0..h.n_arrows())
                .filter(|&x| h.source(x) == p)
                .map(|x| (self.t.vid(x), self.field.one()))
                .collect(),
        )
    }

    /// `1_P = Σ_{r(x) = P} vid(x)`.
    pub fn right_local_unit(&self, p: usize) -> Element<F::Elem> {
        let h = self.t.horizontal();
        self.wrap(
            (0..h.n_arrows())
                .filter(|&x| h.target(x) == p)
                .map(|x| (self.t.vid(x), self.field.one()))
                .collect(),
        )
    }

    pub fn add(&self, x: &Element<F::Elem>, y: &Element<F::Elem>) -> Result<Element<F::Elem>> {
        self.check(x)?;
        self.check(y)?;
        let mut m = x.terms.clone();
        for (a, c) in &y.terms {
            acc(&self.field, &mut m, *a, c.clone());
        }
        Ok(self.wrap(m))
    }

    pub fn scale(&self, c: &F::Elem, x: &Element<F::Elem>) -> Result<Element<F::Elem>> {
        self.check(x)?;
        let mut m = Map1::new();
        for (a, v) in &x.terms {
            acc(&self.field, &mut m, *a, self.field.mul(c, v));
        }
        Ok(self.wrap(m))
    }

    pub fn multiply(&self, x: &Element<F::Elem>, y: &Element<F::Elem>) -> Result<Element<F::Elem>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_map(&x.terms, &y.terms)))
    }

    pub fn comultiply(&self, x: &Element<F::Elem>) -> Result<Tensor<F::Elem>> {
        self.check(x)?;
        Ok(Tensor {
            basis: self.basis,
            terms: self.delta_map(&x.terms),
        })
    }

    pub fn counit(&self, x: &Element<F::Elem>) -> Result<F::Elem> {
        self.check(x)?;
        Ok(self.eps_map(&x.terms))
    }

    pub fn antipode(&self, x: &Element<F::Elem>) -> Result<Element<F::Elem>> {
        self.check(x)?;
        Ok(self.wrap(self.s_map(&x.terms)))
    }

    /// `(ε_s(x), ε_t(x))`, computed from their defining formulas
    /// `ε_s(h) = (id⊗ε)((1⊗h)Δ(1))` and `ε_t(h) = (ε⊗id)(Δ(1)(h⊗1))`.
    pub fn counital_maps(&self, x: &Element<F::Elem>) -> Result<(Element<F::Elem>, Element<F::Elem>)> {
        self.check(x)?;
        let d1 = self.delta_map(&self.unit_map());
        Ok((
            self.wrap(self.eps_s_map(&d1, &x.terms)),
            self.wrap(self.eps_t_map(&d1, &x.terms)),
        ))
    }

    // Internal arithmetic on coefficient maps.

    fn mul_map(&self, x: &Map1<F::Elem>, y: &Map1<F::Elem>) -> Map1<F::Elem> {
        let f = &self.field;
        let mut m = Map1::new();
        for (a, ca) in x {
            for (b, cb) in y {
                if let Some((c, s)) = self.product_entry(*a, *b) {
                    acc(f, &mut m, *c, f.mul(s, &f.mul(ca, cb)));
                }
            }
        }
        m
    }

    fn delta_map(&self, x: &Map1<F::Elem>) -> Map2<F::Elem> {
        let f = &self.field;
        let mut m = Map2::new();
        for (a, ca) in x {
            for (b, c, s) in &self.coproduct[*a] {
                acc(f, &mut m, (*b, *c), f.mul(s, ca));
            }
        }
        m
    }

    fn eps_map(&self, x: &Map1<F::Elem>) -> F::Elem {
        let f = &self.field;
        x.iter()
            .filter(|(a, _)| self.counit[**a])
            .fold(f.zero(), |s, (_, c)| f.add(&s, c))
    }

    fn s_map(&self, x: &Map1<F::Elem>) -> Map1<F::Elem> {
        let f = &self.field;
        let mut m = Map1::new();
        for (a, c) in x {
            let (b, s) = &self.antipode[*a];
            acc(f, &mut m, *b, f.mul(s, c));
        }
        m
    }

    fn single(&self, a: usize) -> Map1<F::Elem> {
        Map1::from([(a, self.field.one())])
    }

    fn tensor_mul(&self, x: &Map2<F::Elem>, y: &Map2<F::Elem>) -> Map2<F::Elem> {
        let f = &self.field;
        let mut m = Map2::new();
        for ((a1, a2), ca) in x {
            for ((b1, b2), cb) in y {
                let (Some((c1, s1)), Some((c2, s2))) = (self.product_entry(*a1, *b1), self.product_entry(*a2, *b2))
                else {
                    continue;
                };
                acc(f, &mut m, (*c1, *c2), f.mul(&f.mul(s1, s2), &f.mul(ca, cb)));
            }
        }
        m
    }

    fn triple_mul(&self, x: &Map3<F::Elem>, y: &Map3<F::Elem>) -> Map3<F::Elem> {
        let f = &self.field;
        let mut m = Map3::new();
        for ((a1, a2, a3), ca) in x {
            for ((b1, b2, b3), cb) in y {
                let (Some((c1, s1)), Some((c2, s2)), Some((c3, s3))) = (
                    self.product_entry(*a1, *b1),
                    self.product_entry(*a2, *b2),
                    self.product_entry(*a3, *b3),
                ) else {
                    continue;
                };
                let s = f.mul(&f.mul(s1, s2), &f.mul(s3, &f.mul(ca, cb)));
                acc(f, &mut m, (*c1, *c2, *c3), s);
            }
        }
        m
    }

    /// `(Δ ⊗ id)Δ(x)` when `left`, else `(id ⊗ Δ)Δ(x)`.
    fn delta2_map(&self, x: &Map1<F::Elem>, left: bool) -> Map3<F::Elem> {
        let f = &self.field;
        let mut m = Map3::new();
        for ((b, c), s) in self.delta_map(x) {
            if left {
                for (b1, b2, t) in &self.coproduct[b] {
                    acc(f, &mut m, (*b1, *b2, c), f.mul(&s, t));
                }
            } else {
                for (c1, c2, t) in &self.coproduct[c] {
                    acc(f, &mut m, (b, *c1, *c2), f.mul(&s, t));
                }
            }
        }
        m
    }

    fn eps_t_map(&self, d1: &Map2<F::Elem>, h: &Map1<F::Elem>) -> Map1<F::Elem> {
        let f = &self.field;
        let mut m = Map1::new();
        for ((u1, u2), c) in d1 {
            let e = self.eps_map(&self.mul_map(&self.single(*u1), h));
            acc(f, &mut m, *u2, f.mul(c, &e));
        }
        m
    }

    fn eps_s_map(&self, d1: &Map2<F::Elem>, h: &Map1<F::Elem>) -> Map1<F::Elem> {
        let f = &self.field;
        let mut m = Map1::new();
        for ((u1, u2), c) in d1 {
            let e = self.eps_map(&self.mul_map(h, &self.single(*u2)));
            acc(f, &mut m, *u1, f.mul(c, &e));
        }
        m
    }

    /// Every axiom on every basis tuple: pairs for multiplicativity, triples
    /// for associativity and the weak counit, boxes for the rest.
    pub fn verify_axioms(&self) -> WhaReport {
        let n = self.dim();
        let f = &self.field;
        let one = self.unit_map();
        let d1 = self.delta_map(&one);

        let mut rep = WhaReport::new();
        {
            let lhs = self.delta2_map(&one, true);
            let rhs = self.delta2_map(&one, false);
            rep.check(lhs == rhs, WhaAxiom::Coassociativity, Vec::new);
            let mut d1x1 = Map3::new();
            let mut x1d1 = Map3::new();
            for ((a, b), c) in &d1 {
                for u in one.keys() {
                    d1x1.insert((*a, *b, *u), c.clone());
                    x1d1.insert((*u, *a, *b), c.clone());
                }
            }
            rep.check(lhs == self.triple_mul(&d1x1, &x1d1), WhaAxiom::WeakUnitLeft, Vec::new);
            rep.check(lhs == self.triple_mul(&x1d1, &d1x1), WhaAxiom::WeakUnitRight, Vec::new);
        }

        // ε(ab) for basis pairs; most vanish.
        let eps_prod: Vec<Option<F::Elem>> = (0..n * n)
            .map(|ab| match self.product_entry(ab / n, ab % n) {
                Some((c, s)) if self.counit[*c] => Some(s.clone()),
                _ => None,
            })
            .collect();

        let per_box: Vec<WhaReport> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut rep = WhaReport::new();
                let xa = self.single(a);
                // Singletons.
                rep.check(
                    self.mul_map(&one, &xa) == xa && self.mul_map(&xa, &one) == xa,
                    WhaAxiom::Unit,
                    || vec![a],
                );
                let da = self.delta_map(&xa);
                let mut left = Map1::new();
                let mut right = Map1::new();
                for ((b, c), s) in &da {
                    if self.counit[*b] {
                        acc(f, &mut left, *c, s.clone());
                    }
                    if self.counit[*c] {
                        acc(f, &mut right, *b, s.clone());
                    }
                }
                rep.check(left == xa && right == xa, WhaAxiom::Counit, || vec![a]);
                rep.check(
                    self.delta2_map(&xa, true) == self.delta2_map(&xa, false),
                    WhaAxiom::Coassociativity,
                    || vec![a],
                );
                let mut m_id_s = Map1::new();
                let mut m_s_id = Map1::new();
                for ((b, c), s) in &da {
                    let sb = self.s_map(&self.single(*b));
                    let sc = self.s_map(&self.single(*c));
                    for (k, v) in self.mul_map(&self.single(*b), &sc) {
                        acc(f, &mut m_id_s, k, f.mul(s, &v));
                    }
                    for (k, v) in self.mul_map(&sb, &self.single(*c)) {
                        acc(f, &mut m_s_id, k, f.mul(s, &v));
                    }
                }
                rep.check(m_id_s == self.eps_t_map(&d1, &xa), WhaAxiom::AntipodeTarget, || vec![a]);
                rep.check(m_s_id == self.eps_s_map(&d1, &xa), WhaAxiom::AntipodeSource, || vec![a]);
                let mut triple = Map1::new();
                for ((x, y, z), s) in self.delta2_map(&xa, true) {
                    let sx = self.s_map(&self.single(x));
                    let sz = self.s_map(&self.single(z));
                    let v = self.mul_map(&self.mul_map(&sx, &self.single(y)), &sz);
                    for (k, c) in v {
                        acc(f, &mut triple, k, f.mul(&s, &c));
                    }
                }
                rep.check(triple == self.s_map(&xa), WhaAxiom::AntipodeTriple, || vec![a]);

                // Pairs and triples with first entry a.
                for b in 0..n {
                    let xb = self.single(b);
                    let ab = self.mul_map(&xa, &xb);
                    let lhs = self.delta_map(&ab);
                    let rhs = self.tensor_mul(&da, &self.delta_map(&xb));
                    rep.check(lhs == rhs, WhaAxiom::Multiplicativity, || vec![a, b]);

                    // ε(a b₁) τ(b₁,b₂) kept when nonzero, for each side.
                    let mut l1: Vec<(usize, F::Elem)> = Vec::new();
                    let mut l2: Vec<(usize, F::Elem)> = Vec::new();
                    for (b1, b2, t) in &self.coproduct[b] {
                        if let Some(e) = &eps_prod[a * n + b1] {
                            l1.push((*b2, f.mul(t, e)));
                        }
                        if let Some(e) = &eps_prod[a * n + b2] {
                            l2.push((*b1, f.mul(t, e)));
                        }
                    }
                    for c in 0..n {
                        let xc = self.single(c);
                        let abc = self.mul_map(&ab, &xc);
                        rep.check(
                            abc == self.mul_map(&xa, &self.mul_map(&xb, &xc)),
                            WhaAxiom::Associativity,
                            || vec![a, b, c],
                        );
                        let e = self.eps_map(&abc);
                        let side = |l: &[(usize, F::Elem)]| {
                            l.iter().fold(f.zero(), |s, (d, v)| match &eps_prod[d * n + c] {
                                Some(w) => f.add(&s, &f.mul(v, w)),
                                None => s,
                            })
                        };
                        rep.check(e == side(&l1), WhaAxiom::WeakCounitLeft, || vec![a, b, c]);
                        rep.check(e == side(&l2), WhaAxiom::WeakCounitRight, || vec![a, b, c]);
                    }
                }
                rep
            })
            .collect();
        for r in per_box {
            rep.merge(r);
        }
        rep.sort();
        rep
    }

    /// `Δ(1) − 1⊗1`; empty exactly when the algebra is a Hopf algebra.
    pub fn delta_one_defect(&self) -> Tensor<F::Elem> {
        let f = &self.field;
        let one = self.unit_map();
        let mut m = self.delta_map(&one);
        for a in one.keys() {
            for b in one.keys() {
                acc(f, &mut m, (*a, *b), f.neg(&f.one()));
            }
        }
        Tensor {
            basis: self.basis,
            terms: m,
        }
    }

    /// `Δ(1) = 1⊗1`, cross-checked against `|𝒫| = 1`.
    pub fn is_hopf(&self) -> Result<bool> {
        let hopf = self.delta_one_defect().is_zero();
        if hopf != (self.t.n_points() == 1) {
            return Err(Error::Internal(format!(
                "Δ(1) = 1⊗1 is {hopf} with {} points",
                self.t.n_points()
            )));
        }
        Ok(hopf)
    }

    /// `S²(A) = A` for every box.
    pub fn check_involutory(&self) -> bool {
        (0..self.dim()).all(|a| {
            let x = self.single(a);
            self.s_map(&self.s_map(&x)) == x
        })
    }

    /// Wedderburn blocks of the algebra and of the coalgebra; untwisted only.
    pub fn block_structure(&self) -> Result<BlockStructure> {
        if self.twisted {
            return Err(Error::Unsupported(
                "block decomposition of a twisted algebra".into(),
            ));
        }
        block_structure(&self.t)
    }

    /// The target subalgebra as a module, split into simple summands by
    /// following `A.(_P1) = ε_t(A·_P1)` on the basis.
    pub fn unit_object(&self) -> Result<UnitObject> {
        let np = self.t.n_points();
        let v = self.t.vertical();
        let d1 = self.delta_map(&self.unit_map());
        let locals: Vec<Map1<F::Elem>> = (0..np).map(|p| self.left_local_unit(p).terms).collect();
        let mut label: Vec<usize> = (0..np).collect();
        for a in 0..self.dim() {
            for p in 0..np {
                let image = self.eps_t_map(&d1, &self.mul_map(&self.single(a), &locals[p]));
                let expected = (self.t.is_hid(a) && v.target(self.t.left(a)) == p)
                    .then(|| v.source(self.t.left(a)));
                let ok = match expected {
                    None => image.is_empty(),
                    Some(q) => image == locals[q],
                };
                if !ok {
                    return Err(Error::Internal(format!("action of box {a} on the local unit at {p}")));
                }
                if let Some(q) = expected {
                    let (lp, lq) = (label[p], label[q]);
                    for l in label.iter_mut() {
                        if *l == lq {
                            *l = lp;
                        }
                    }
                }
            }
        }
        let summands = Equivalence::from_labels(&label).classes();
        let simple = summands.len() == 1;
        if simple != unit_object_simple(&self.t) {
            return Err(Error::Internal("unit object simplicity disagrees with connectivity".into()));
        }
        Ok(UnitObject { simple, summands })
    }
}

/// One Wedderburn block: a representative object, the order of its vertex
/// group and the size of its class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub representative: usize,
    pub group_order: usize,
    pub size: usize,
}

/// `𝕜𝒯 ≅ ⊕ 𝕜ℬ(x) ⊗ M_{n(H)}` as an algebra (classes of `ℬ ⇉ ℋ`) and
/// `⊕ 𝕜ℬ(g) ⊗ M_{m(V)}` as a coalgebra (classes of `ℬ ⇉ 𝒱`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockStructure {
    pub algebra: Vec<Block>,
    pub coalgebra: Vec<Block>,
}

impl BlockStructure {
    pub fn algebra_dimension(&self) -> usize {
        self.algebra.iter().map(|b| b.group_order * b.size * b.size).sum()
    }

    pub fn coalgebra_dimension(&self) -> usize {
        self.coalgebra.iter().map(|b| b.group_order * b.size * b.size).sum()
    }
}

pub fn block_structure(t: &DoubleGroupoid) -> Result<BlockStructure> {
    let blocks = |g| -> Result<Vec<Block>> {
        Ok(connected_decomposition(g)?
            .into_iter()
            .map(|c| Block {
                representative: c.base,
                group_order: c.vertex_group_order(),
                size: c.objects.len(),
            })
            .collect())
    };
    let bs = BlockStructure {
        algebra: blocks(t.vertical_boxes())?,
        coalgebra: blocks(t.horizontal_boxes())?,
    };
    if bs.algebra_dimension() != t.n_boxes() || bs.coalgebra_dimension() != t.n_boxes() {
        return Err(Error::Internal("block dimensions do not add up".into()));
    }
    Ok(bs)
}

/// Whether the algebra is simple, next to the four structural conditions it
/// forces: `ℬ ⇉ ℋ` coarse, `ℋ ⇉ 𝒫` a trivial bundle, `𝒱 ⇉ 𝒫` coarse,
/// `ℬ ⇉ 𝒱` a trivial bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleAlgebra {
    pub simple: bool,
    pub conditions: [bool; 4],
}

pub fn simple_algebra(t: &DoubleGroupoid) -> Result<SimpleAlgebra> {
    let bs = block_structure(t)?;
    let simple = bs.algebra.len() == 1 && bs.algebra[0].group_order == 1;
    let coarse = |g: &crate::groupoid::Groupoid| g.n_arrows() == g.n_objects() * g.n_objects();
    let bundle = |g: &crate::groupoid::Groupoid| g.n_arrows() == g.n_objects();
    Ok(SimpleAlgebra {
        simple,
        conditions: [
            coarse(t.vertical_boxes()),
            bundle(t.horizontal()),
            coarse(t.vertical()),
            bundle(t.horizontal_boxes()),
        ],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitObject {
    pub simple: bool,
    /// Classes `X` of points; each spans the simple summand `Σ_{P∈X} 𝕜·_P1`.
    pub summands: Vec<Vec<usize>>,
}

/// The unit object of the representation category is simple iff `𝒱 ⇉ 𝒫` is
/// connected.
pub fn unit_object_simple(t: &DoubleGroupoid) -> bool {
    t.vertical().is_connected()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DualityAxiom {
    /// `(a·b | c) = Σ (a|c₁)(b|c₂)`.
    ProductCoproduct,
    /// `(Δa | b⊗c) = (a | b·c)`.
    CoproductProduct,
    /// `(1 | c) = ε(c)` and `ε(a) = (a | 1)`.
    UnitCounit,
    /// `(S a | c) = (a | S c)`.
    Antipode,
}

impl std::fmt::Display for DualityAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Checks that `(B|C) = δ_{B,Cᵗ}` is a duality between `w` and `wt`, the
/// latter built on the transpose with the cocycles swapped. Transposition
/// keeps box indices, so the form is the identity matrix.
pub fn duality_check<F: Field>(w: &QuantumGroupoid<F>, wt: &QuantumGroupoid<F>) -> Result<Report<DualityAxiom>> {
    if *wt.double() != w.double().transpose() {
        return Err(Error::BasisMismatch("second algebra is not built on the transpose".into()));
    }
    let n = w.dim();
    let f = w.field();
    let mut rep = Report::new();
    let pairs_as_terms = |x: &QuantumGroupoid<F>, y: &QuantumGroupoid<F>, axiom, rep: &mut Report<DualityAxiom>| {
        // Product constants of x against coproduct constants of y.
        let mut from_product = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if let Some((c, s)) = x.product_entry(a, b) {
                    from_product.insert((a, b, *c), s.clone());
                }
            }
        }
        let mut from_coproduct = BTreeMap::new();
        for c in 0..n {
            for (a, b, s) in y.coproduct_entry(c) {
                from_coproduct.insert((*a, *b, c), s.clone());
            }
        }
        for (k, s) in &from_product {
            rep.check(from_coproduct.get(k) == Some(s), axiom, || vec![k.0, k.1, k.2]);
        }
        for k in from_coproduct.keys() {
            rep.check(from_product.contains_key(k), axiom, || vec![k.0, k.1, k.2]);
        }
    };
    pairs_as_terms(w, wt, DualityAxiom::ProductCoproduct, &mut rep);
    pairs_as_terms(wt, w, DualityAxiom::CoproductProduct, &mut rep);
    let (one, one_t) = (w.unit(), wt.unit());
    for a in 0..n {
        let unit_coeff = |e: &Element<F::Elem>| e.coefficient(a).cloned().unwrap_or_else(|| f.zero());
        let eps = |q: &QuantumGroupoid<F>| if q.counit_entry(a) { f.one() } else { f.zero() };
        rep.check(
            unit_coeff(&one) == eps(wt) && unit_coeff(&one_t) == eps(w),
            DualityAxiom::UnitCounit,
            || vec![a],
        );
        let (b, s) = w.antipode_entry(a);
        let (c, st) = wt.antipode_entry(*b);
        rep.check(*c == a && s == st, DualityAxiom::Antipode, || vec![a]);
    }
    rep.sort();
    Ok(rep)
}

/// Verdicts on `Ψ(B) = ψ(B)B` between two twistings of one double groupoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaugeCheck {
    /// Ψ preserves product, unit, coproduct, counit and antipode.
    pub isomorphism: bool,
    /// `ψ(A/B)σ(A,B) = ψ(A)ψ(B)ν(A,B)` and `ψ(CD)η(C,D) = ψ(C)ψ(D)τ(C,D)`.
    pub conditions: bool,
}

impl GaugeCheck {
    pub fn consistent(&self) -> bool {
        self.isomorphism == self.conditions
    }
}

pub fn gauge_isomorphism_check<F: Field>(
    w1: &QuantumGroupoid<F>,
    w2: &QuantumGroupoid<F>,
    psi: &[F::Elem],
) -> Result<GaugeCheck> {
    if w1.basis != w2.basis {
        return Err(Error::BasisMismatch("gauge check needs one double groupoid".into()));
    }
    let n = w1.dim();
    let f = w1.field();
    if psi.len() != n {
        return Err(Error::InvalidGauge(format!("{} values for {n} boxes", psi.len())));
    }
    if let Some(a) = psi.iter().position(|x| f.is_zero(x)) {
        return Err(Error::InvalidGauge(format!("ψ vanishes on box {a}")));
    }
    let t = w1.double();
    let mut conditions = true;
    let mut iso = true;
    for a in 0..n {
        for b in 0..n {
            match (w1.product_entry(a, b), w2.product_entry(a, b)) {
                (Some((c, sigma)), Some((_, nu))) => {
                    let lhs = f.mul(&psi[*c], sigma);
                    let rhs = f.mul(&f.mul(&psi[a], &psi[b]), nu);
                    conditions &= lhs == rhs;
                    iso &= lhs == rhs;
                }
                (None, None) => {}
                _ => iso = false,
            }
        }
    }
    for c in 0..n {
        let eta: BTreeMap<(usize, usize), &F::Elem> =
            w2.coproduct_entry(c).iter().map(|(a, b, s)| ((*a, *b), s)).collect();
        let d1 = w1.coproduct_entry(c);
        iso &= d1.len() == eta.len();
        for (a, b, tau) in d1 {
            let rhs = f.mul(&f.mul(&psi[*a], &psi[*b]), tau);
            match eta.get(&(*a, *b)) {
                Some(e) => {
                    let lhs = f.mul(&psi[c], e);
                    conditions &= lhs == rhs;
                    iso &= lhs == rhs;
                }
                None => iso = false,
            }
        }
    }
    for a in 0..n {
        if t.is_vid(a) {
            iso &= psi[a] == f.one();
        }
        if w1.counit_entry(a) != w2.counit_entry(a) || (w1.counit_entry(a) && psi[a] != f.one()) {
            iso = false;
        }
        let (b, s1) = w1.antipode_entry(a);
        let (b2, s2) = w2.antipode_entry(a);
        iso &= b == b2 && f.mul(&psi[*b], s1) == f.mul(s2, &psi[a]);
    }
    Ok(GaugeCheck {
        isomorphism: iso,
        conditions,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ProductAxiom {
    UnionProduct,
    UnionCoproduct,
    UnionCounit,
    UnionAntipode,
    TensorProduct,
    TensorCoproduct,
    TensorCounit,
    TensorAntipode,
}

impl std::fmt::Display for ProductAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Compares `𝕜(𝒯₁ ∐ 𝒯₂)` with `𝕜𝒯₁ × 𝕜𝒯₂` and `𝕜(𝒯₁ × 𝒯₂)` with
/// `𝕜𝒯₁ ⊗ 𝕜𝒯₂`, table by table. Boxes of a union are those of `𝒯₁`
/// followed by those of `𝒯₂`; the box `(a, b)` of a product has index
/// `a·|ℬ₂| + b`.
pub fn product_union_check<F: Field>(t1: &DoubleGroupoid, t2: &DoubleGroupoid, field: F) -> Result<Report<ProductAxiom>> {
    let w1 = QuantumGroupoid::build(t1, field.clone())?;
    let w2 = QuantumGroupoid::build(t2, field.clone())?;
    let wu = QuantumGroupoid::build(&disjoint_union(t1, t2)?, field.clone())?;
    let wp = QuantumGroupoid::build(&direct_product(t1, t2)?, field.clone())?;
    let (n1, n2) = (w1.dim(), w2.dim());
    let f = &field;
    let mut rep = Report::new();

    // Union: the factor of a box and its index there.
    let split = |a: usize| if a < n1 { (0, a) } else { (1, a - n1) };
    let shift = |k: usize, a: usize| if k == 0 { a } else { a + n1 };
    let part = |k: usize| if k == 0 { &w1 } else { &w2 };
    for a in 0..n1 + n2 {
        let (ka, ia) = split(a);
        for b in 0..n1 + n2 {
            let (kb, ib) = split(b);
            let expected = if ka == kb {
                part(ka).product_entry(ia, ib).map(|(c, s)| (shift(ka, *c), s.clone()))
            } else {
                None
            };
            rep.check(wu.product_entry(a, b).cloned() == expected, ProductAxiom::UnionProduct, || {
                vec![a, b]
            });
        }
        let mut got: Vec<_> = wu.coproduct_entry(a).to_vec();
        let mut expected: Vec<_> = part(ka)
            .coproduct_entry(ia)
            .iter()
            .map(|(b, c, s)| (shift(ka, *b), shift(ka, *c), s.clone()))
            .collect();
        got.sort();
        expected.sort();
        rep.check(got == expected, ProductAxiom::UnionCoproduct, || vec![a]);
        rep.check(
            wu.counit_entry(a) == part(ka).counit_entry(ia),
            ProductAxiom::UnionCounit,
            || vec![a],
        );
        let (s, c) = part(ka).antipode_entry(ia);
        rep.check(
            *wu.antipode_entry(a) == (shift(ka, *s), c.clone()),
            ProductAxiom::UnionAntipode,
            || vec![a],
        );
    }

    // Tensor product.
    let pair = |a: usize| (a / n2, a % n2);
    let join = |a: usize, b: usize| a * n2 + b;
    for a in 0..n1 * n2 {
        let (a1, a2) = pair(a);
        for b in 0..n1 * n2 {
            let (b1, b2) = pair(b);
            let expected = match (w1.product_entry(a1, b1), w2.product_entry(a2, b2)) {
                (Some((c1, s1)), Some((c2, s2))) => Some((join(*c1, *c2), f.mul(s1, s2))),
                _ => None,
            };
            rep.check(wp.product_entry(a, b).cloned() == expected, ProductAxiom::TensorProduct, || {
                vec![a, b]
            });
        }
        let mut got: Vec<_> = wp.coproduct_entry(a).to_vec();
        let mut expected = Vec::new();
        for (x1, y1, s1) in w1.coproduct_entry(a1) {
            for (x2, y2, s2) in w2.coproduct_entry(a2) {
                expected.push((join(*x1, *x2), join(*y1, *y2), f.mul(s1, s2)));
            }
        }
        got.sort();
        expected.sort();
        rep.check(got == expected, ProductAxiom::TensorCoproduct, || vec![a]);
        rep.check(
            wp.counit_entry(a) == (w1.counit_entry(a1) && w2.counit_entry(a2)),
            ProductAxiom::TensorCounit,
            || vec![a],
        );
        let ((c1, s1), (c2, s2)) = (w1.antipode_entry(a1), w2.antipode_entry(a2));
        rep.check(
            *wp.antipode_entry(a) == (join(*c1, *c2), f.mul(s1, s2)),
            ProductAxiom::TensorAntipode,
            || vec![a],
        );
    }
    rep.sort();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::CocycleSpace;
    use crate::corpus;
    use crate::double::build_xrs;
    use crate::field::{PrimeField, Rationals};

    fn untwisted(t: &DoubleGroupoid) -> QuantumGroupoid<Rationals> {
        QuantumGroupoid::build(t, Rationals).unwrap()
    }

    #[test]
    fn untwisted_corpus_passes_every_axiom() {
        for (name, t) in corpus::small() {
            if !is_vacant(&t).is_vacant() {
                continue;
            }
            let w = untwisted(&t);
            let rep = w.verify_axioms();
            assert!(rep.is_ok(), "{name}: {rep}");
            assert!(w.check_involutory(), "{name}");
            assert_eq!(w.is_hopf().unwrap(), t.n_points() == 1, "{name}");
            for a in 0..w.dim() {
                assert_eq!(*w.antipode_entry(a), (t.inv(a), Rationals.one()));
            }
        }
    }

    #[test]
    fn s3_is_hopf_and_x22_is_not() {
        let w = untwisted(&corpus::s3_double());
        assert_eq!(w.dim(), 6);
        assert!(w.is_hopf().unwrap());
        let w = untwisted(&build_xrs(2, 2).unwrap());
        assert_eq!(w.dim(), 16);
        assert!(!w.is_hopf().unwrap());
        // Δ(1) has pairs vid(x)⊗vid(y) outside its support; those appear
        // with coefficient −1 in the defect.
        let defect = w.delta_one_defect();
        assert!(defect.terms().values().any(|c| *c == Rationals.from_i64(-1)));
    }

    #[test]
    fn one_box_algebra_is_the_field() {
        let t = build_xrs(1, 1).unwrap();
        let w = untwisted(&t);
        assert_eq!(w.dim(), 1);
        let one = w.unit();
        assert_eq!(one, w.basis_element(0).unwrap());
        assert_eq!(w.multiply(&one, &one).unwrap(), one);
        assert_eq!(w.counit(&one).unwrap(), Rationals.one());
        assert_eq!(w.antipode(&one).unwrap(), one);
    }

    #[test]
    fn counital_maps_match_closed_form() {
        for (name, t) in corpus::small() {
            if !is_vacant(&t).is_vacant() {
                continue;
            }
            let w = untwisted(&t);
            let v = t.vertical();
            for a in 0..w.dim() {
                let (es, et) = w.counital_maps(&w.basis_element(a).unwrap()).unwrap();
                let g = t.left(a);
                let (want_t, want_s) = if t.is_hid(a) {
                    (w.left_local_unit(v.source(g)), w.right_local_unit(v.target(g)))
                } else {
                    (w.zero(), w.zero())
                };
                assert_eq!(et, want_t, "{name} box {a}");
                assert_eq!(es, want_s, "{name} box {a}");
            }
            // Both images are commutative and |𝒫|-dimensional.
            for p in 0..t.n_points() {
                for q in 0..t.n_points() {
                    let (x, y) = (w.right_local_unit(p), w.right_local_unit(q));
                    let xy = w.multiply(&x, &y).unwrap();
                    assert_eq!(xy, if p == q { x.clone() } else { w.zero() });
                    let (x, y) = (w.left_local_unit(p), w.left_local_unit(q));
                    assert_eq!(w.multiply(&x, &y).unwrap(), w.multiply(&y, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn identity_boxes_are_idempotent() {
        let t = build_xrs(2, 3).unwrap();
        let w = untwisted(&t);
        for x in 0..t.horizontal().n_arrows() {
            let e = w.basis_element(t.vid(x)).unwrap();
            assert_eq!(w.multiply(&e, &e).unwrap(), e);
        }
    }

    #[test]
    fn corrupted_product_is_caught() {
        let t = corpus::s3_double();
        let w = untwisted(&t);
        let (a, b) = (0..6)
            .flat_map(|a| (0..6).map(move |b| (a, b)))
            .find(|&(a, b)| w.product_entry(a, b).is_some() && !t.is_vid(a) && !t.is_vid(b))
            .unwrap();
        let bad = w.with_product_scalar(a, b, Rationals.from_i64(2)).unwrap();
        let rep = bad.verify_axioms();
        let v = rep.first(&WhaAxiom::Multiplicativity).expect("multiplicativity fails");
        assert_eq!(v.witness.len(), 2);
        assert!(rep.violations.iter().any(|v| v.witness == vec![a, b]));
    }

    #[test]
    fn foreign_elements_are_refused() {
        let w1 = untwisted(&corpus::s3_double());
        let w2 = untwisted(&build_xrs(2, 2).unwrap());
        let x = w2.basis_element(0).unwrap();
        assert!(matches!(w1.antipode(&x), Err(Error::BasisMismatch(_))));
        assert!(matches!(w1.multiply(&w1.unit(), &x), Err(Error::BasisMismatch(_))));
    }

    #[test]
    fn non_vacant_input_is_refused() {
        let t = corpus::commuting_squares_z2();
        assert!(matches!(QuantumGroupoid::build(&t, Rationals), Err(Error::NotVacant { .. })));
    }

    fn twisted_pairs(t: &DoubleGroupoid, m: u64) -> Vec<CocyclePair> {
        CocycleSpace::new(t).unwrap().enumerate_propagating(m, 1 << 24).unwrap()
    }

    #[test]
    fn twisted_s3_over_f3() {
        let t = corpus::s3_double();
        let f = PrimeField::new(3).unwrap();
        let pairs = twisted_pairs(&t, 2);
        assert!(pairs.len() > 1);
        for cp in &pairs {
            let w = QuantumGroupoid::build_twisted(&t, cp, f, &2).unwrap();
            assert!(w.verify_axioms().is_ok());
            assert!(w.check_involutory());
        }
        // The zero pair reproduces the untwisted tables.
        let zero = CocycleSpace::new(&t).unwrap().zero(2);
        let w0 = QuantumGroupoid::build_twisted(&t, &zero, f, &2).unwrap();
        let w = QuantumGroupoid::build(&t, f).unwrap();
        assert_eq!(w0.product, w.product);
        assert_eq!(w0.coproduct, w.coproduct);
        assert_eq!(w0.antipode, w.antipode);
        assert!(!w0.is_twisted());
    }

    #[test]
    fn blocks_of_x22() {
        let t = build_xrs(2, 2).unwrap();
        let bs = untwisted(&t).block_structure().unwrap();
        assert_eq!(bs.algebra.len(), 4);
        assert!(bs.algebra.iter().all(|b| b.group_order == 1 && b.size == 2));
        assert_eq!(bs.algebra_dimension(), 16);
        assert_eq!(bs.coalgebra_dimension(), 16);
    }

    #[test]
    fn blocks_refused_when_twisted() {
        let t = corpus::s3_double();
        let f = PrimeField::new(3).unwrap();
        let space = CocycleSpace::new(&t).unwrap();
        let cp = twisted_pairs(&t, 2)
            .into_iter()
            .find(|cp| *cp != space.zero(2))
            .unwrap();
        let w = QuantumGroupoid::build_twisted(&t, &cp, f, &2).unwrap();
        assert!(w.is_twisted());
        assert!(matches!(w.block_structure(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn simple_algebra_conditions() {
        for (r, s) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)] {
            let t = build_xrs(r, s).unwrap();
            let sa = simple_algebra(&t).unwrap();
            if sa.simple {
                assert!(sa.conditions.iter().all(|c| *c), "X{r}{s}");
            }
            // Condition (1) alone forces simplicity.
            assert_eq!(sa.simple, sa.conditions[0], "X{r}{s}");
        }
    }

    #[test]
    fn unit_object_summands() {
        for (name, t) in corpus::small() {
            if !is_vacant(&t).is_vacant() {
                continue;
            }
            let uo = untwisted(&t).unit_object().unwrap();
            assert_eq!(uo.simple, t.vertical().is_connected(), "{name}");
            assert_eq!(uo.summands.len(), t.vertical().components().len(), "{name}");
        }
    }

    #[test]
    fn duality_with_transpose() {
        for (name, t) in corpus::small() {
            if !is_vacant(&t).is_vacant() {
                continue;
            }
            let w = untwisted(&t);
            let wt = untwisted(&t.transpose());
            assert!(duality_check(&w, &wt).unwrap().is_ok(), "{name}");
        }
        let t = corpus::s3_double();
        let f = PrimeField::new(3).unwrap();
        for cp in twisted_pairs(&t, 2) {
            let swapped = CocyclePair {
                modulus: cp.modulus,
                sigma: cp.tau.clone(),
                tau: cp.sigma.clone(),
            };
            let w = QuantumGroupoid::build_twisted(&t, &cp, f, &2).unwrap();
            let wt = QuantumGroupoid::build_twisted(&t.transpose(), &swapped, f, &2).unwrap();
            assert!(duality_check(&w, &wt).unwrap().is_ok());
        }
        // Not a transpose.
        let w = untwisted(&t);
        assert!(duality_check(&w, &w).is_err());
    }

    #[test]
    fn gauge_transforms_are_isomorphisms() {
        let t = corpus::s3_double();
        let f = PrimeField::new(3).unwrap();
        let space = CocycleSpace::new(&t).unwrap();
        let w = QuantumGroupoid::build(&t, f).unwrap();
        let ones = vec![1u64; t.n_boxes()];
        let g = gauge_isomorphism_check(&w, &w, &ones).unwrap();
        assert!(g.isomorphism && g.conditions);
        for cp in twisted_pairs(&t, 2) {
            let mut psi = vec![0u64; t.n_boxes()];
            for a in space.gauge_boxes() {
                psi[a] = 1;
            }
            let cp2 = space.gauge_transform(&cp, &psi).unwrap();
            let w1 = QuantumGroupoid::build_twisted(&t, &cp, f, &2).unwrap();
            let w2 = QuantumGroupoid::build_twisted(&t, &cp2, f, &2).unwrap();
            let psi_f: Vec<u64> = psi.iter().map(|&k| f.pow(&2, k)).collect();
            let g = gauge_isomorphism_check(&w1, &w2, &psi_f).unwrap();
            assert!(g.isomorphism && g.conditions);
            // A gauge that does not relate the two pairs fails both ways.
            if cp2 != cp {
                let g = gauge_isomorphism_check(&w1, &w2, &ones).unwrap();
                assert!(!g.isomorphism && !g.conditions);
            }
        }
        assert!(matches!(
            gauge_isomorphism_check(&w, &w, &vec![0u64; t.n_boxes()]),
            Err(Error::InvalidGauge(_))
        ));
    }

    #[test]
    fn products_and_unions() {
        let rep = product_union_check(&build_xrs(1, 1).unwrap(), &corpus::s3_double(), Rationals).unwrap();
        assert!(rep.is_ok(), "{rep}");
        let rep = product_union_check(&build_xrs(1, 2).unwrap(), &build_xrs(2, 1).unwrap(), Rationals).unwrap();
        assert!(rep.is_ok(), "{rep}");
    }
}
