//! Normalized pairs `(σ, τ)` of 2-cocycles on the two box groupoids of a
//! double groupoid, written additively with values in `ℤ/m`.
//!
//! * `σ` lives on stackable pairs `A/B` and is a normalized 2-cocycle of
//!   `ℬ ⇉ ℋ`: zero when either argument is a vertical identity `vid(x)`;
//! * `τ` lives on pairs `A|B` and is a normalized 2-cocycle of `ℬ ⇉ 𝒱`: zero
//!   when either argument is a horizontal identity `hid(g)`;
//! * on every 2×2 square `[A B; C D]`:
//!   `σ(AB, CD) + τ(A/C, B/D) = τ(A, B) + τ(C, D) + σ(A, C) + σ(B, D)`.
//!
//! A gauge function `ψ: ℬ → ℤ/m` vanishing on identity boxes moves a pair to
//! `ν(A, B) = σ(A, B) + ψ(A/B) − ψ(A) − ψ(B)`,
//! `η(C, D) = τ(C, D) + ψ(C) + ψ(D) − ψ(CD)`.

use crate::double::DoubleGroupoid;
use crate::error::{structure, Error, Result};
use crate::field::Field;
use crate::report::Report;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

/// Default cap on the number of candidates an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// The composable pairs of one box composition, with a dense lookup table.
#[derive(Clone, Debug)]
pub struct PairDomain {
    n: usize,
    pairs: Vec<(usize, usize)>,
    lookup: Vec<u32>,
}

impl PairDomain {
    fn new(n: usize, mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        let mut lookup = vec![u32::MAX; n * n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            lookup[a * n + b] = i as u32;
        }
        PairDomain { n, pairs, lookup }
    }

    /// Pairs `(A, B)` with `A/B` defined.
    pub fn vertical(t: &DoubleGroupoid) -> Self {
        Self::new(t.n_boxes(), t.vertical_boxes().composable_pairs())
    }

    /// Pairs `(A, B)` with `AB` defined.
    pub fn horizontal(t: &DoubleGroupoid) -> Self {
        Self::new(t.n_boxes(), t.horizontal_boxes().composable_pairs())
    }

    pub fn index(&self, a: usize, b: usize) -> Option<usize> {
        match self.lookup.get(a * self.n + b) {
            Some(&i) if i != u32::MAX => Some(i as usize),
            _ => None,
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Values of `σ` and `τ`, aligned with the sorted pairs of
/// [`PairDomain::vertical`] and [`PairDomain::horizontal`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CocyclePair {
    pub modulus: u64,
    pub sigma: Vec<u64>,
    pub tau: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CocycleAxiom {
    SigmaCocycle,
    SigmaNormalized,
    /// `σ(A, A^v) = σ(A^v, A)`, a consequence of the two above.
    SigmaSymmetric,
    TauCocycle,
    TauNormalized,
    /// `τ(A, A^h) = τ(A^h, A)`.
    TauSymmetric,
    /// The 2×2 square condition linking `σ` and `τ`.
    Compatibility,
}

impl fmt::Display for CocycleAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub type CocycleReport = Report<CocycleAxiom>;

/// Cocycle pairs on a fixed double groupoid.
#[derive(Clone, Debug)]
pub struct CocycleSpace<'a> {
    t: &'a DoubleGroupoid,
    vdom: PairDomain,
    hdom: PairDomain,
    /// `[A, B, C, D]` with `A|B`, `C|D`, `A/C`, `B/D`.
    squares: Vec<[usize; 4]>,
}

/// A linear condition `Σ sign·x_var ≡ 0 (mod m)`; variables are `σ` slots
/// followed by `τ` slots.
type Constraint = Vec<(usize, i64)>;

impl<'a> CocycleSpace<'a> {
    pub fn new(t: &'a DoubleGroupoid) -> Result<Self> {
        t.require_valid()?;
        let by_top = t.boxes_by(|a| t.top(a), t.horizontal().n_arrows());
        let mut squares = Vec::new();
        for (a, b) in t.horizontal_boxes().composable_pairs() {
            for &c in &by_top[t.bottom(a)] {
                for &d in &by_top[t.bottom(b)] {
                    if t.right(c) == t.left(d) {
                        squares.push([a, b, c, d]);
                    }
                }
            }
        }
        Ok(CocycleSpace {
            t,
            vdom: PairDomain::vertical(t),
            hdom: PairDomain::horizontal(t),
            squares,
        })
    }

    pub fn double(&self) -> &DoubleGroupoid {
        self.t
    }

    pub fn vertical_pairs(&self) -> &PairDomain {
        &self.vdom
    }

    pub fn horizontal_pairs(&self) -> &PairDomain {
        &self.hdom
    }

    pub fn squares(&self) -> &[[usize; 4]] {
        &self.squares
    }

    pub fn zero(&self, m: u64) -> CocyclePair {
        CocyclePair {
            modulus: m,
            sigma: vec![0; self.vdom.len()],
            tau: vec![0; self.hdom.len()],
        }
    }

    /// `σ(a, b)`; `None` unless `a/b` is defined.
    pub fn sigma(&self, cp: &CocyclePair, a: usize, b: usize) -> Option<u64> {
        self.vdom.index(a, b).map(|i| cp.sigma[i])
    }

    /// `τ(a, b)`; `None` unless `ab` is defined.
    pub fn tau(&self, cp: &CocyclePair, a: usize, b: usize) -> Option<u64> {
        self.hdom.index(a, b).map(|i| cp.tau[i])
    }

    /// Builds a pair from explicit `(a, b, value)` rows, which must cover
    /// each composable pair exactly once.
    pub fn from_entries(
        &self,
        m: u64,
        sigma: &[(usize, usize, u64)],
        tau: &[(usize, usize, u64)],
    ) -> Result<CocyclePair> {
        if m == 0 {
            return structure("cocycle modulus must be positive");
        }
        let fill = |dom: &PairDomain, rows: &[(usize, usize, u64)], name: &str| {
            let mut out = vec![None; dom.len()];
            for &(a, b, v) in rows {
                let Some(i) = dom.index(a, b) else {
                    return structure(format!("{name} given on non-composable pair ({a},{b})"));
                };
                if v >= m {
                    return structure(format!("{name}({a},{b}) = {v} not reduced mod {m}"));
                }
                if out[i].replace(v).is_some() {
                    return structure(format!("{name}({a},{b}) given twice"));
                }
            }
            match out.iter().position(Option::is_none) {
                Some(i) => {
                    let (a, b) = dom.pairs()[i];
                    structure(format!("{name} missing on composable pair ({a},{b})"))
                }
                None => Ok(out.into_iter().map(Option::unwrap).collect::<Vec<u64>>()),
            }
        };
        Ok(CocyclePair {
            modulus: m,
            sigma: fill(&self.vdom, sigma, "sigma")?,
            tau: fill(&self.hdom, tau, "tau")?,
        })
    }

    pub fn sigma_entries(&self, cp: &CocyclePair) -> Vec<(usize, usize, u64)> {
        self.vdom.pairs().iter().zip(&cp.sigma).map(|(&(a, b), &v)| (a, b, v)).collect()
    }

    pub fn tau_entries(&self, cp: &CocyclePair) -> Vec<(usize, usize, u64)> {
        self.hdom.pairs().iter().zip(&cp.tau).map(|(&(a, b), &v)| (a, b, v)).collect()
    }

    fn check_shape(&self, cp: &CocyclePair) -> Result<()> {
        if cp.modulus == 0 {
            return structure("cocycle modulus must be positive");
        }
        if cp.sigma.len() != self.vdom.len() || cp.tau.len() != self.hdom.len() {
            return structure("cocycle tables do not match the composable pairs of this double groupoid");
        }
        if cp.sigma.iter().chain(&cp.tau).any(|&v| v >= cp.modulus) {
            return structure("cocycle value not reduced modulo m");
        }
        Ok(())
    }

    /// Checks every identity directly on the box tables.
    pub fn validate(&self, cp: &CocyclePair) -> Result<CocycleReport> {
        self.check_shape(cp)?;
        Ok(self.validate_unchecked(cp))
    }

    fn validate_unchecked(&self, cp: &CocyclePair) -> CocycleReport {
        let t = self.t;
        let m = cp.modulus;
        let add = |xs: &[u64]| xs.iter().fold(0, |s, &x| (s + x) % m);
        let sg = |a, b| self.sigma(cp, a, b).expect("stackable");
        let ta = |a, b| self.tau(cp, a, b).expect("composable");
        let mut rep = Report::new();
        for (i, &(a, b)) in self.vdom.pairs().iter().enumerate() {
            if t.is_vid(a) || t.is_vid(b) {
                rep.check(cp.sigma[i] == 0, CocycleAxiom::SigmaNormalized, || vec![a, b]);
            }
            let ab = t.vcomp(a, b).unwrap();
            for c in 0..t.n_boxes() {
                if let Some(bc) = t.vcomp(b, c) {
                    let ok = add(&[sg(a, b), sg(ab, c)]) == add(&[sg(b, c), sg(a, bc)]);
                    rep.check(ok, CocycleAxiom::SigmaCocycle, || vec![a, b, c]);
                }
            }
        }
        for (i, &(a, b)) in self.hdom.pairs().iter().enumerate() {
            if t.is_hid(a) || t.is_hid(b) {
                rep.check(cp.tau[i] == 0, CocycleAxiom::TauNormalized, || vec![a, b]);
            }
            let ab = t.hcomp(a, b).unwrap();
            for c in 0..t.n_boxes() {
                if let Some(bc) = t.hcomp(b, c) {
                    let ok = add(&[ta(a, b), ta(ab, c)]) == add(&[ta(b, c), ta(a, bc)]);
                    rep.check(ok, CocycleAxiom::TauCocycle, || vec![a, b, c]);
                }
            }
        }
        for a in 0..t.n_boxes() {
            let (av, ah) = (t.v_inv(a), t.h_inv(a));
            rep.check(sg(a, av) == sg(av, a), CocycleAxiom::SigmaSymmetric, || vec![a]);
            rep.check(ta(a, ah) == ta(ah, a), CocycleAxiom::TauSymmetric, || vec![a]);
        }
        for &[a, b, c, d] in &self.squares {
            let ab = t.hcomp(a, b).unwrap();
            let cd = t.hcomp(c, d).unwrap();
            let ac = t.vcomp(a, c).unwrap();
            let bd = t.vcomp(b, d).unwrap();
            let lhs = add(&[sg(ab, cd), ta(ac, bd)]);
            let rhs = add(&[ta(a, b), ta(c, d), sg(a, c), sg(b, d)]);
            rep.check(lhs == rhs, CocycleAxiom::Compatibility, || vec![a, b, c, d]);
        }
        rep
    }

    pub fn is_valid(&self, cp: &CocyclePair) -> bool {
        self.validate(cp).map(|r| r.is_ok()).unwrap_or(false)
    }

    /// Boxes that are neither a vertical nor a horizontal identity; a gauge
    /// function is free exactly there.
    pub fn gauge_boxes(&self) -> Vec<usize> {
        (0..self.t.n_boxes())
            .filter(|&a| !self.t.is_vid(a) && !self.t.is_hid(a))
            .collect()
    }

    fn check_gauge(&self, m: u64, psi: &[u64]) -> Result<()> {
        if psi.len() != self.t.n_boxes() {
            return Err(Error::InvalidGauge(format!(
                "{} values for {} boxes",
                psi.len(),
                self.t.n_boxes()
            )));
        }
        if let Some(a) = psi.iter().position(|&v| v >= m) {
            return Err(Error::InvalidGauge(format!("psi({a}) not reduced mod {m}")));
        }
        if let Some(a) = (0..psi.len()).find(|&a| psi[a] != 0 && (self.t.is_vid(a) || self.t.is_hid(a))) {
            return Err(Error::InvalidGauge(format!(
                "psi must vanish on identity boxes, but psi({a}) = {}",
                psi[a]
            )));
        }
        Ok(())
    }

    /// The pair `(ν, η)` making `B ↦ ψ(B)B` an isomorphism from the
    /// `(σ, τ)`-twisted structure.
    pub fn gauge_transform(&self, cp: &CocyclePair, psi: &[u64]) -> Result<CocyclePair> {
        self.check_shape(cp)?;
        let m = cp.modulus;
        self.check_gauge(m, psi)?;
        let t = self.t;
        let sigma = self
            .vdom
            .pairs()
            .iter()
            .zip(&cp.sigma)
            .map(|(&(a, b), &s)| (s + psi[t.vcomp(a, b).unwrap()] + 2 * m - psi[a] - psi[b]) % m)
            .collect();
        let tau = self
            .hdom
            .pairs()
            .iter()
            .zip(&cp.tau)
            .map(|(&(a, b), &s)| (s + psi[a] + psi[b] + m - psi[t.hcomp(a, b).unwrap()]) % m)
            .collect();
        Ok(CocyclePair {
            modulus: m,
            sigma,
            tau,
        })
    }

    /// Searches every normalized gauge function for one taking `cp1` to
    /// `cp2`.
    pub fn gauge_equivalence(
        &self,
        cp1: &CocyclePair,
        cp2: &CocyclePair,
        budget: u64,
    ) -> Result<Option<Vec<u64>>> {
        self.check_shape(cp1)?;
        self.check_shape(cp2)?;
        if cp1.modulus != cp2.modulus {
            return structure("cocycle pairs have different moduli");
        }
        let m = cp1.modulus;
        let free = self.gauge_boxes();
        let total = search_size(m, free.len(), budget, "gauge search")?;
        let found = (0..total).into_par_iter().find_first(|&code| {
            let psi = self.decode_gauge(m, &free, code);
            self.gauge_transform(cp1, &psi).map(|r| &r == cp2).unwrap_or(false)
        });
        Ok(found.map(|code| self.decode_gauge(m, &free, code)))
    }

    fn decode_gauge(&self, m: u64, free: &[usize], code: u64) -> Vec<u64> {
        let mut psi = vec![0; self.t.n_boxes()];
        for (slot, v) in free.iter().zip(digits(code, m, free.len())) {
            psi[*slot] = v;
        }
        psi
    }

    /// Slots of `σ` then `τ` not forced to zero by normalization.
    pub fn free_slots(&self) -> (Vec<usize>, Vec<usize>) {
        let t = self.t;
        let s = (0..self.vdom.len())
            .filter(|&i| {
                let (a, b) = self.vdom.pairs()[i];
                !t.is_vid(a) && !t.is_vid(b)
            })
            .collect();
        let h = (0..self.hdom.len())
            .filter(|&i| {
                let (a, b) = self.hdom.pairs()[i];
                !t.is_hid(a) && !t.is_hid(b)
            })
            .collect();
        (s, h)
    }

    fn assemble(&self, m: u64, free: &(Vec<usize>, Vec<usize>), values: &[u64]) -> CocyclePair {
        let mut cp = self.zero(m);
        let ns = free.0.len();
        for (k, &i) in free.0.iter().enumerate() {
            cp.sigma[i] = values[k];
        }
        for (k, &i) in free.1.iter().enumerate() {
            cp.tau[i] = values[ns + k];
        }
        cp
    }

    /// All valid pairs, by running [`CocycleSpace::validate`] on every
    /// normalized assignment. Output is sorted lexicographically by the
    /// free values in slot order.
    pub fn enumerate_brute_force(&self, m: u64, budget: u64) -> Result<Vec<CocyclePair>> {
        if m == 0 {
            return structure("cocycle modulus must be positive");
        }
        let free = self.free_slots();
        let nfree = free.0.len() + free.1.len();
        let total = search_size(m, nfree, budget, "cocycle enumeration")?;
        Ok((0..total)
            .into_par_iter()
            .filter_map(|code| {
                let vals: Vec<u64> = digits(code, m, nfree).collect();
                let cp = self.assemble(m, &free, &vals);
                self.validate_unchecked(&cp).is_ok().then_some(cp)
            })
            .collect())
    }

    /// Linear conditions over the free slots; terms on forced-zero slots are
    /// dropped.
    fn constraints(&self, free: &(Vec<usize>, Vec<usize>)) -> Vec<Constraint> {
        let t = self.t;
        let ns = free.0.len();
        let mut slot_s = vec![None; self.vdom.len()];
        let mut slot_t = vec![None; self.hdom.len()];
        for (k, &i) in free.0.iter().enumerate() {
            slot_s[i] = Some(k);
        }
        for (k, &i) in free.1.iter().enumerate() {
            slot_t[i] = Some(ns + k);
        }
        let s = |a, b| slot_s[self.vdom.index(a, b).unwrap()];
        let h = |a, b| slot_t[self.hdom.index(a, b).unwrap()];
        let mut out = Vec::new();
        let mut push = |terms: Vec<(Option<usize>, i64)>| {
            let mut c: Vec<(usize, i64)> = terms.into_iter().filter_map(|(v, k)| v.map(|v| (v, k))).collect();
            c.sort_unstable();
            if !c.is_empty() {
                out.push(c);
            }
        };
        for &(a, b) in self.vdom.pairs() {
            let ab = t.vcomp(a, b).unwrap();
            for c in 0..t.n_boxes() {
                if let Some(bc) = t.vcomp(b, c) {
                    push(vec![(s(a, b), 1), (s(ab, c), 1), (s(b, c), -1), (s(a, bc), -1)]);
                }
            }
        }
        for &(a, b) in self.hdom.pairs() {
            let ab = t.hcomp(a, b).unwrap();
            for c in 0..t.n_boxes() {
                if let Some(bc) = t.hcomp(b, c) {
                    push(vec![(h(a, b), 1), (h(ab, c), 1), (h(b, c), -1), (h(a, bc), -1)]);
                }
            }
        }
        for &[a, b, c, d] in &self.squares {
            let (ab, cd) = (t.hcomp(a, b).unwrap(), t.hcomp(c, d).unwrap());
            let (ac, bd) = (t.vcomp(a, c).unwrap(), t.vcomp(b, d).unwrap());
            push(vec![
                (s(ab, cd), 1),
                (h(ac, bd), 1),
                (h(a, b), -1),
                (h(c, d), -1),
                (s(a, c), -1),
                (s(b, d), -1),
            ]);
        }
        out
    }

    /// All valid pairs, by depth-first assignment of the free slots that
    /// checks each linear condition as soon as its last slot is set. Same
    /// order as [`CocycleSpace::enumerate_brute_force`]. `budget` caps the
    /// number of search nodes.
    pub fn enumerate_propagating(&self, m: u64, budget: u64) -> Result<Vec<CocyclePair>> {
        if m == 0 {
            return structure("cocycle modulus must be positive");
        }
        let free = self.free_slots();
        let nfree = free.0.len() + free.1.len();
        let mut due: Vec<Vec<Constraint>> = vec![Vec::new(); nfree];
        for c in self.constraints(&free) {
            let last = c.iter().map(|&(v, _)| v).max().unwrap();
            due[last].push(c);
        }
        let mut values = vec![0u64; nfree];
        let mut out = Vec::new();
        let mut nodes = 0u64;
        let holds = |c: &Constraint, values: &[u64]| {
            let s: i64 = c.iter().map(|&(v, k)| k * values[v] as i64).sum();
            s.rem_euclid(m as i64) == 0
        };
        // iterative DFS: `depth` is the next slot to assign
        let mut depth = 0usize;
        let mut next = vec![0u64; nfree + 1];
        loop {
            if depth == nfree {
                out.push(self.assemble(m, &free, &values));
                if depth == 0 {
                    break;
                }
                depth -= 1;
                continue;
            }
            if next[depth] == m {
                next[depth] = 0;
                if depth == 0 {
                    break;
                }
                depth -= 1;
                continue;
            }
            nodes += 1;
            if nodes > budget {
                return Err(Error::Budget(format!(
                    "cocycle search visited more than {budget} nodes"
                )));
            }
            values[depth] = next[depth];
            next[depth] += 1;
            if due[depth].iter().all(|c| holds(c, &values)) {
                depth += 1;
            }
        }
        Ok(out)
    }

    /// Gauge orbits of a set of valid pairs that is closed under gauge
    /// transformations (such as a complete enumeration). Returns, for each
    /// orbit, its members' positions in `pairs`, ordered by first member.
    pub fn gauge_orbits(&self, pairs: &[CocyclePair]) -> Result<Vec<Vec<usize>>> {
        let Some(first) = pairs.first() else {
            return Ok(Vec::new());
        };
        let m = first.modulus;
        let index: HashMap<&CocyclePair, usize> = pairs.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut parent: Vec<usize> = (0..pairs.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for slot in self.gauge_boxes() {
            let mut psi = vec![0; self.t.n_boxes()];
            psi[slot] = 1 % m;
            for (i, cp) in pairs.iter().enumerate() {
                let moved = self.gauge_transform(cp, &psi)?;
                let j = *index.get(&moved).ok_or_else(|| {
                    Error::Invalid("pair set is not closed under gauge transformations".into())
                })?;
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut slot_of = HashMap::new();
        for i in 0..pairs.len() {
            let r = find(&mut parent, i);
            let k = *slot_of.entry(r).or_insert_with(|| {
                orbits.push(Vec::new());
                orbits.len() - 1
            });
            orbits[k].push(i);
        }
        Ok(orbits)
    }

    /// Number of gauge classes of valid pairs with values in `ℤ/m`.
    pub fn count_modulo_gauge(&self, m: u64, budget: u64) -> Result<usize> {
        let pairs = self.enumerate_propagating(m, budget)?;
        Ok(self.gauge_orbits(&pairs)?.len())
    }

    /// `σ̂ = ζ^σ`, `τ̂ = ζ^τ`; `zeta` must have order dividing the modulus.
    pub fn embed<F: Field>(&self, cp: &CocyclePair, field: &F, zeta: &F::Elem) -> Result<FieldCocycle<F>> {
        self.check_shape(cp)?;
        if field.pow(zeta, cp.modulus) != field.one() {
            return Err(Error::Unembeddable(format!(
                "zeta^{} != 1 in the chosen field",
                cp.modulus
            )));
        }
        let powers: Vec<F::Elem> = (0..cp.modulus).map(|k| field.pow(zeta, k)).collect();
        Ok(FieldCocycle {
            sigma: cp.sigma.iter().map(|&v| powers[v as usize].clone()).collect(),
            tau: cp.tau.iter().map(|&v| powers[v as usize].clone()).collect(),
        })
    }

    /// The constant-one pair.
    pub fn trivial_field_cocycle<F: Field>(&self, field: &F) -> FieldCocycle<F> {
        FieldCocycle {
            sigma: vec![field.one(); self.vdom.len()],
            tau: vec![field.one(); self.hdom.len()],
        }
    }

    /// The multiplicative identities, checked verbatim in the field.
    pub fn validate_field<F: Field>(&self, fc: &FieldCocycle<F>, field: &F) -> CocycleReport {
        let t = self.t;
        let one = field.one();
        let sg = |a, b| &fc.sigma[self.vdom.index(a, b).unwrap()];
        let ta = |a, b| &fc.tau[self.hdom.index(a, b).unwrap()];
        let mul = |x: &F::Elem, y: &F::Elem| field.mul(x, y);
        let mut rep = Report::new();
        for &(a, b) in self.vdom.pairs() {
            if t.is_vid(a) || t.is_vid(b) {
                rep.check(*sg(a, b) == one, CocycleAxiom::SigmaNormalized, || vec![a, b]);
            }
            let ab = t.vcomp(a, b).unwrap();
            for c in 0..t.n_boxes() {
                if let Some(bc) = t.vcomp(b, c) {
                    let ok = mul(sg(a, b), sg(ab, c)) == mul(sg(b, c), sg(a, bc));
                    rep.check(ok, CocycleAxiom::SigmaCocycle, || vec![a, b, c]);
                }
            }
        }
        for &(a, b) in self.hdom.pairs() {
            if t.is_hid(a) || t.is_hid(b) {
                rep.check(*ta(a, b) == one, CocycleAxiom::TauNormalized, || vec![a, b]);
            }
            let ab = t.hcomp(a, b).unwrap();
            for c in 0..t.n_boxes() {
                if let Some(bc) = t.hcomp(b, c) {
                    let ok = mul(ta(a, b), ta(ab, c)) == mul(ta(b, c), ta(a, bc));
                    rep.check(ok, CocycleAxiom::TauCocycle, || vec![a, b, c]);
                }
            }
        }
        for &[a, b, c, d] in &self.squares {
            let (ab, cd) = (t.hcomp(a, b).unwrap(), t.hcomp(c, d).unwrap());
            let (ac, bd) = (t.vcomp(a, c).unwrap(), t.vcomp(b, d).unwrap());
            let lhs = mul(sg(ab, cd), ta(ac, bd));
            let rhs = mul(&mul(ta(a, b), ta(c, d)), &mul(sg(a, c), sg(b, d)));
            rep.check(lhs == rhs, CocycleAxiom::Compatibility, || vec![a, b, c, d]);
        }
        rep
    }
}

/// A cocycle pair with values in `𝕜^×`, aligned like [`CocyclePair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCocycle<F: Field> {
    pub sigma: Vec<F::Elem>,
    pub tau: Vec<F::Elem>,
}

fn search_size(m: u64, n: usize, budget: u64, what: &str) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total
            .checked_mul(m)
            .filter(|&t| t <= budget)
            .ok_or_else(|| Error::Budget(format!("{what} needs {m}^{n} candidates, budget {budget}")))?;
    }
    Ok(total)
}

/// Base-`m` digits of `code`, most significant first, `len` of them.
fn digits(code: u64, m: u64, len: usize) -> impl Iterator<Item = u64> {
    let mut d = vec![0; len];
    let mut c = code;
    for slot in d.iter_mut().rev() {
        *slot = c % m;
        c /= m;
    }
    d.into_iter()
}
