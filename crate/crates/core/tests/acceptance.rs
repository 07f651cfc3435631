//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one line, in order, whatever the capture flags.
//!
//! A criterion either passes, fails, or fails in a documented way: the
//! literal claim does not hold, the exact size of the discrepancy is
//! asserted, and the reason is recorded in the decisions ledger. Only a
//! plain failure makes the process exit non-zero.

use qgroupoid::cocycle::{CocyclePair, CocycleSpace, DEFAULT_BUDGET};
use qgroupoid::cohomology::{
    aut_and_opext, groupoid_cohomology, groupoid_complex, kac_report, Coefficients, DoubleComplex,
    Normalization, Part,
};
use qgroupoid::corpus;
use qgroupoid::double::lemmas::check_cross_uniqueness;
use qgroupoid::double::{
    build_xrs, condition_four, condition_two, is_double_isomorphism, is_vacant, vacancy_report,
    DoubleGroupoid, DoubleMap,
};
use qgroupoid::field::{Field, PrimeField, Rationals};
use qgroupoid::groupoid::{
    coarse_groupoid, find_isomorphism, is_isomorphism, FiniteGroup, Groupoid, GroupoidMap,
    WideSubgroupoidData,
};
use qgroupoid::matched_pair::{ConnectedFactorizationData, ConnectedVerdict, MatchedPair};
use qgroupoid::relation::Equivalence;
use qgroupoid::wha::{block_structure, duality_check, QuantumGroupoid};
use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

enum Outcome {
    Pass(String),
    /// The literal statement fails; the discrepancy is exactly the one
    /// predicted and recorded.
    Documented(String),
}

type Check = fn() -> Result<Outcome, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn vacant_corpus() -> Vec<(String, DoubleGroupoid)> {
    corpus::all()
        .into_iter()
        .filter(|(_, t)| is_vacant(t).is_vacant())
        .collect()
}

fn x22() -> DoubleGroupoid {
    build_xrs(2, 2).unwrap()
}

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

/// Normalized cocycle pairs mod 2 on `t`.
fn pairs_mod2(t: &DoubleGroupoid) -> Result<Vec<CocyclePair>, String> {
    let space = ok(CocycleSpace::new(t), "cocycle space")?;
    ok(space.enumerate_propagating(2, DEFAULT_BUDGET), "enumeration")
}

fn swapped(cp: &CocyclePair) -> CocyclePair {
    CocyclePair {
        modulus: cp.modulus,
        sigma: cp.tau.clone(),
        tau: cp.sigma.clone(),
    }
}

fn c1_wha_bicross() -> Result<Outcome, String> {
    let mut slowest = Duration::ZERO;
    let instances = vacant_corpus();
    for (name, t) in &instances {
        let start = Instant::now();
        let w = ok(QuantumGroupoid::build(t, Rationals), name)?;
        let rep = w.verify_axioms();
        let took = start.elapsed();
        ensure!(rep.is_ok(), "{name}: {rep}");
        ensure!(took < Duration::from_secs(5), "{name}: {took:?} exceeds 5 s");
        slowest = slowest.max(took);
    }
    Ok(Outcome::Pass(format!(
        "{} vacant instances, all axioms exact; slowest {slowest:.2?}",
        instances.len()
    )))
}

fn c2_twisted() -> Result<Outcome, String> {
    let start = Instant::now();
    let mut total = 0;
    for (name, t) in [("S3", corpus::s3_double()), ("X22", x22())] {
        for cp in pairs_mod2(&t)? {
            let w = ok(QuantumGroupoid::build_twisted(&t, &cp, f3(), &2), name)?;
            let rep = w.verify_axioms();
            ensure!(rep.is_ok(), "{name} twisted by {cp:?}: {rep}");
            total += 1;
        }
        let space = ok(CocycleSpace::new(&t), name)?;
        let over_q = ok(space.enumerate_propagating(1, DEFAULT_BUDGET), name)?;
        ensure!(over_q.len() == 1, "{name}: {} pairs mod 1", over_q.len());
        for cp in over_q {
            let w = ok(QuantumGroupoid::build_twisted(&t, &cp, Rationals, &Rationals.one()), name)?;
            let rep = w.verify_axioms();
            ensure!(rep.is_ok(), "{name} over Q: {rep}");
            total += 1;
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "{took:?} exceeds 60 s");
    Ok(Outcome::Pass(format!("{total} twisted builds pass in {took:.2?}")))
}

fn c3_hopf() -> Result<Outcome, String> {
    for (name, t) in vacant_corpus() {
        let w = ok(QuantumGroupoid::build(&t, Rationals), &name)?;
        let hopf = ok(w.is_hopf(), &name)?;
        ensure!(hopf == (t.n_points() == 1), "{name}: is_hopf {hopf} with {} points", t.n_points());
    }
    // Oracle for Δ(1) on X22: sum B⊗C over all horizontal factorizations of
    // vertical identities, minus 1⊗1.
    let t = x22();
    let w = ok(QuantumGroupoid::build(&t, Rationals), "X22")?;
    let vids: BTreeSet<usize> = (0..t.horizontal().n_arrows()).map(|x| t.vid(x)).collect();
    let mut expected: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for b in 0..t.n_boxes() {
        for c in 0..t.n_boxes() {
            if t.hcomp(b, c).is_some_and(|bc| vids.contains(&bc)) {
                *expected.entry((b, c)).or_default() += 1;
            }
        }
    }
    for &a in &vids {
        for &b in &vids {
            *expected.entry((a, b)).or_default() -= 1;
        }
    }
    expected.retain(|_, v| *v != 0);
    let defect = w.delta_one_defect();
    let got: BTreeMap<(usize, usize), i64> = defect
        .terms()
        .iter()
        .map(|(&k, v)| (k, if *v == Rationals.one() { 1 } else if *v == Rationals.from_i64(-1) { -1 } else { 99 }))
        .collect();
    ensure!(got == expected, "X22 Δ(1) − 1⊗1 differs from the oracle");
    ensure!(!got.is_empty(), "X22 shows no cross-terms");
    Ok(Outcome::Pass(format!(
        "Hopf iff one point; X22 Δ(1) − 1⊗1 has {} nonzero terms, as the oracle predicts",
        got.len()
    )))
}

fn c4_involutory() -> Result<Outcome, String> {
    fn twice<F: Field>(w: &QuantumGroupoid<F>) -> bool {
        (0..w.dim()).all(|a| {
            let x = w.basis_element(a).unwrap();
            w.antipode(&w.antipode(&x).unwrap()).unwrap() == x
        })
    }
    let mut built = 0;
    for (name, t) in vacant_corpus() {
        let w = ok(QuantumGroupoid::build(&t, Rationals), &name)?;
        ensure!(w.check_involutory() && twice(&w), "{name}: S² ≠ id");
        built += 1;
    }
    for (name, t) in [("S3", corpus::s3_double()), ("X22", x22())] {
        for cp in pairs_mod2(&t)? {
            let w = ok(QuantumGroupoid::build_twisted(&t, &cp, f3(), &2), name)?;
            ensure!(w.check_involutory() && twice(&w), "{name} twisted by {cp:?}: S² ≠ id");
            built += 1;
        }
    }
    Ok(Outcome::Pass(format!("S² = id on every box of {built} algebras")))
}

fn c5_blocks() -> Result<Outcome, String> {
    for (name, t) in vacant_corpus() {
        let bs = ok(block_structure(&t), &name)?;
        ensure!(bs.algebra_dimension() == t.n_boxes(), "{name}: algebra blocks sum to {}", bs.algebra_dimension());
        ensure!(bs.coalgebra_dimension() == t.n_boxes(), "{name}: coalgebra blocks sum to {}", bs.coalgebra_dimension());
        // oracle: Σ over blocks of |vertex group|·size², recomputed here
        let sum: usize = bs.algebra.iter().map(|b| b.group_order * b.size * b.size).sum();
        ensure!(sum == t.n_boxes(), "{name}: Σ|G|n² = {sum}");
    }
    let bs = ok(block_structure(&x22()), "X22")?;
    let shape: Vec<(usize, usize)> = bs.algebra.iter().map(|b| (b.group_order, b.size)).collect();
    ensure!(shape == vec![(1, 2); 4], "X22 blocks {shape:?}");
    Ok(Outcome::Pass("block identities hold; X22 = 4 × M₂(𝕜), 16 = 4·4".into()))
}

fn c6_vacancy() -> Result<Outcome, String> {
    let mut control = false;
    for (name, t) in corpus::all() {
        let rep = vacancy_report(&t);
        ensure!(rep.consistent(), "{name}: corner verdicts disagree {rep:?}");
        let v = rep.top_right.is_vacant();
        ensure!(condition_two(&t) == v && condition_four(&t) == condition_two(&t.transpose()), "{name}: filling conditions disagree");
        if name == "squares(Z2)" {
            ensure!(!v, "control reported vacant");
            control = true;
        }
    }
    ensure!(control, "control instance missing");
    let mut checked = 0;
    for (name, t) in vacant_corpus() {
        if t.n_boxes() > 50 {
            continue;
        }
        let rep = check_cross_uniqueness(&t);
        ensure!(rep.is_ok(), "{name}: {rep}");
        checked += 1;
    }
    Ok(Outcome::Pass(format!(
        "four corner verdicts agree on {} instances; cross uniqueness over ℬ³ on {checked}",
        corpus::all().len()
    )))
}

/// `t ≅ t'` by the relabeling that sends a box to the box with the same top
/// and right; points and edges fixed.
fn same_up_to_boxes(t: &DoubleGroupoid, t2: &DoubleGroupoid) -> bool {
    let mut by_corner = BTreeMap::new();
    for b in 0..t2.n_boxes() {
        by_corner.insert((t2.top(b), t2.right(b)), b);
    }
    let Some(boxes) = (0..t.n_boxes())
        .map(|a| by_corner.get(&(t.top(a), t.right(a))).copied())
        .collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    let map = DoubleMap {
        points: (0..t.n_points()).collect(),
        horizontal: (0..t.horizontal().n_arrows()).collect(),
        vertical: (0..t.vertical().n_arrows()).collect(),
        boxes,
    };
    is_double_isomorphism(t, t2, &map)
}

/// Refactors the diagonal through its embedded copies and checks that the
/// product map `(f, y) ↦ f·y` into `ambient` is an isomorphism.
fn diagonal_round_trip(mp: &MatchedPair, ambient: Option<(&Groupoid, &[usize], &[usize])>) -> Result<(), String> {
    let d = ok(mp.diagonal_groupoid(), "diagonal")?;
    let ef = ok(
        MatchedPair::from_exact_factorization(&d.groupoid, &d.vertical_embedding, &d.horizontal_embedding),
        "refactoring the diagonal",
    )?;
    // the refactored pair numbers its arrows afresh; compare through the
    // embeddings
    let relabel = |emb: &[usize], found: &[usize]| -> Option<Vec<usize>> {
        emb.iter().map(|a| found.iter().position(|b| b == a)).collect()
    };
    let pv = relabel(&d.vertical_embedding, &ef.vertical_arrows).ok_or("vertical arrows lost")?;
    let ph = relabel(&d.horizontal_embedding, &ef.horizontal_arrows).ok_or("horizontal arrows lost")?;
    let mp2 = &ef.matched_pair;
    let same_edges = |g1: &Groupoid, g2: &Groupoid, arrows: &[usize]| {
        is_isomorphism(g1, g2, &GroupoidMap { objects: (0..g1.n_objects()).collect(), arrows: arrows.to_vec() })
    };
    ensure!(
        same_edges(mp.vertical(), mp2.vertical(), &pv) && same_edges(mp.horizontal(), mp2.horizontal(), &ph),
        "edge groupoids do not match under the embeddings"
    );
    let entries: BTreeSet<_> = mp2.entries().into_iter().collect();
    ensure!(
        mp.entries().len() == entries.len()
            && mp.entries().iter().all(|&(x, g, a, b)| entries.contains(&(ph[x], pv[g], pv[a], ph[b]))),
        "diagonal refactors to a different matched pair"
    );
    if let Some((g, v_emb, h_emb)) = ambient {
        let arrows = d.pairs.iter().map(|&(f, y)| g.mul(v_emb[f], h_emb[y])).collect();
        let map = GroupoidMap {
            objects: (0..g.n_objects()).collect(),
            arrows,
        };
        ensure!(is_isomorphism(&d.groupoid, g, &map), "(f, y) ↦ fy is not an isomorphism");
    }
    Ok(())
}

fn c7_round_trips() -> Result<Outcome, String> {
    let instances = vacant_corpus();
    for (name, t) in &instances {
        let mp = ok(MatchedPair::from_vacant_double(t), name)?;
        let t2 = ok(mp.to_vacant_double(), name)?;
        ensure!(same_up_to_boxes(t, &t2), "{name}: double → pair → double changes the instance");
        let mp2 = ok(MatchedPair::from_vacant_double(&t2), name)?;
        ensure!(mp2 == mp, "{name}: pair → double → pair changes the actions");
        diagonal_round_trip(&mp, None).map_err(|e| format!("{name}: {e}"))?;
    }
    // the actual exact factorization S₃ = ⟨(12)⟩⟨(123)⟩
    let (g, perms) = FiniteGroup::symmetric(3);
    let idx = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let v = g.generated(&[idx(&[1, 0, 2])]);
    let h = g.generated(&[idx(&[1, 2, 0])]);
    let ambient = g.as_groupoid();
    let ef = ok(MatchedPair::from_exact_factorization(&ambient, &v, &h), "S3 factorization")?;
    diagonal_round_trip(&ef.matched_pair, Some((&ambient, &ef.vertical_arrows, &ef.horizontal_arrows)))
        .map_err(|e| format!("S3: {e}"))?;
    let diag = ok(corpus::s3_matched_pair().diagonal_groupoid(), "S3 diagonal")?;
    ensure!(find_isomorphism(&diag.groupoid, &ambient).is_some(), "S3 diagonal is not S3");
    Ok(Outcome::Pass(format!(
        "both round trips on {} instances; S3 diagonal ≅ S3",
        instances.len()
    )))
}

fn wide(group: Vec<usize>) -> WideSubgroupoidData {
    WideSubgroupoidData {
        relation: Equivalence::total(1),
        vertex_groups: vec![group],
        coset_reps: [((0, 0), 0)].into_iter().collect(),
        transversal: vec![0],
    }
}

fn c8_connected() -> Result<Outcome, String> {
    let (g, perms) = FiniteGroup::symmetric(3);
    let idx = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let e = g.identity();
    let (vs, hs) = (g.generated(&[idx(&[1, 0, 2])]), g.generated(&[idx(&[1, 2, 0])]));
    ensure!(vs.len() * hs.len() == g.order(), "6 ≠ |V|·|H|");
    let mut s3 = ConnectedFactorizationData {
        group: g.clone(),
        horizontal: wide(hs),
        vertical: wide(vs),
    };
    s3.horizontal.coset_reps = [((0, 0), e)].into_iter().collect();
    s3.vertical.coset_reps = [((0, 0), e)].into_iter().collect();
    ensure!(ok(s3.verify(), "S3 data")? == ConnectedVerdict::Exact, "S3 data rejected");

    let z4 = FiniteGroup::cyclic(4);
    let two = z4.generated(&[2]);
    let control = ConnectedFactorizationData {
        group: z4,
        horizontal: wide(two.clone()),
        vertical: wide(two),
    };
    let failures = ok(control.failures(), "Z/4 control")?;
    let witness = failures
        .iter()
        .find(|f| matches!(f, ConnectedVerdict::FailsCosets { .. }))
        .ok_or_else(|| format!("no coset-partition witness in {failures:?}"))?;
    // ⟨2⟩·⟨2⟩ = {0, 2}: an odd residue is missed
    let ConnectedVerdict::FailsCosets { element, count, .. } = *witness else { unreachable!() };
    ensure!(element % 2 == 1 && count == 0, "unexpected witness {witness:?}");
    Ok(Outcome::Pass(format!(
        "S3 accepted (6 = 3·2); Z/4 rejected, element {element} in no double coset"
    )))
}

/// Normalized cochains of the nerve, built independently of the library:
/// composable tuples of non-identity arrows, alternating face sums, dense
/// ranks mod `p`.
fn oracle_dims(g: &Groupoid, top: usize, p: u64) -> Vec<usize> {
    let n = g.n_arrows();
    let arrows: Vec<usize> = (0..n).filter(|&f| !g.is_identity(f)).collect();
    let mut cells: Vec<Vec<Vec<usize>>> = vec![(0..g.n_objects()).map(|x| vec![x]).collect()];
    let mut level: Vec<Vec<usize>> = arrows.iter().map(|&f| vec![f]).collect();
    for _ in 1..=top + 1 {
        cells.push(level.clone());
        level = level
            .iter()
            .flat_map(|c| {
                let last = *c.last().unwrap();
                arrows
                    .iter()
                    .filter(move |&&f| g.target(last) == g.source(f))
                    .map(move |&f| {
                        let mut c = c.clone();
                        c.push(f);
                        c
                    })
            })
            .collect();
    }
    let index: Vec<BTreeMap<Vec<usize>, usize>> = cells
        .iter()
        .map(|cs| cs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let rank = |k: usize| -> usize {
        // coboundary Cᵏ → Cᵏ⁺¹ as rows indexed by (k+1)-cells
        let mut rows = Vec::new();
        for c in &cells[k + 1] {
            let mut row = vec![0i64; cells[k].len()];
            let mut add = |face: Option<Vec<usize>>, sign: i64| {
                if let Some(f) = face {
                    if let Some(&i) = index[k].get(&f) {
                        row[i] += sign;
                    }
                }
            };
            if k == 0 {
                add(Some(vec![g.target(c[0])]), 1);
                add(Some(vec![g.source(c[0])]), -1);
            } else {
                add(Some(c[1..].to_vec()), 1);
                for i in 0..k {
                    let fg = g.mul(c[i], c[i + 1]);
                    let face = (!g.is_identity(fg)).then(|| {
                        let mut f = c[..i].to_vec();
                        f.push(fg);
                        f.extend_from_slice(&c[i + 2..]);
                        f
                    });
                    add(face, if i % 2 == 0 { -1 } else { 1 });
                }
                add(Some(c[..k].to_vec()), if k.is_multiple_of(2) { -1 } else { 1 });
            }
            rows.push(row.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect::<Vec<u64>>());
        }
        rank_mod(rows, p)
    };
    let ranks: Vec<usize> = (0..=top).map(rank).collect();
    (0..=top)
        .map(|k| cells[k].len() - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
        .collect()
}

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let inv = |a: u64| (1..p).find(|&b| a * b % p == 1).unwrap();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let s = inv(rows[r][c]);
        let pivot: Vec<u64> = rows[r].iter().map(|v| v * s % p).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let m = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - m * y % p) % p;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

fn c9_cohomology() -> Result<Outcome, String> {
    let start = Instant::now();
    let mut complexes = 0;
    let z2 = FiniteGroup::cyclic(2).as_groupoid();
    let coarse3 = coarse_groupoid(3).unwrap();
    let mut groupoids = vec![("Z/2".to_string(), z2.clone()), ("coarse3".to_string(), coarse3.clone())];
    for (name, t) in vacant_corpus() {
        groupoids.push((format!("{name} H"), t.horizontal().clone()));
        groupoids.push((format!("{name} V"), t.vertical().clone()));
        let mp = ok(MatchedPair::from_vacant_double(&t), &name)?;
        groupoids.push((format!("{name} D"), ok(mp.diagonal_groupoid(), &name)?.groupoid));
    }
    for (name, g) in &groupoids {
        // dense coboundaries of the largest diagonals exceed the size limit
        // beyond degree 2
        let top = if g.n_arrows() <= 36 { 3 } else { 1 };
        let c = ok(groupoid_complex(g, top), name)?;
        ensure!(ok(c.square_failures(), name)?.is_empty(), "{name}: d² ≠ 0");
        complexes += 1;
    }
    for (name, t) in [("S3", corpus::s3_double()), ("X22", x22()), ("X23", build_xrs(2, 3).unwrap())] {
        let dc = ok(DoubleComplex::build(&t, 4, Normalization::Full), name)?;
        ensure!(ok(dc.commutation_failures(), name)?.is_empty(), "{name}: d_H d_V ≠ d_V d_H");
        for part in [Part::D, Part::A, Part::E] {
            let c = ok(dc.total(part), name)?;
            ensure!(ok(c.square_failures(), name)?.is_empty(), "{name} Tot {part:?}: d² ≠ 0");
            complexes += 1;
        }
    }
    let dims = |g: &Groupoid, p: u64| -> Result<Vec<usize>, String> {
        let hs = ok(groupoid_cohomology(g, 2, Coefficients::Prime(p)), "cohomology")?;
        Ok(hs.iter().map(|h| h.torsion.len() + h.rank).collect())
    };
    let z2_dims = dims(&z2, 2)?;
    ensure!(z2_dims == oracle_dims(&z2, 2, 2), "Z/2 over F_2: {z2_dims:?} vs oracle");
    ensure!(z2_dims[1] == 1 && z2_dims[2] == 1, "Z/2 over F_2: {z2_dims:?}");
    let c3_dims = dims(&coarse3, 5)?;
    ensure!(c3_dims == oracle_dims(&coarse3, 2, 5), "coarse3 over F_5: {c3_dims:?} vs oracle");
    ensure!(c3_dims[1] == 0 && c3_dims[2] == 0, "coarse3 over F_5: {c3_dims:?}");
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(10), "{took:?} exceeds 10 s");
    Ok(Outcome::Pass(format!(
        "d² = 0 on {complexes} complexes; H¹ = H² = 1 for Z/2, 0 for coarse3; {took:.2?}"
    )))
}

fn c10_kac() -> Result<Outcome, String> {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (name, t, p) in [("S3", corpus::s3_double(), 2), ("X22", x22(), 3)] {
        let r = ok(kac_report(&t, p, Normalization::Full), name)?;
        ensure!(r.exact && r.nodes.len() == 9 && r.nodes.iter().all(|n| n.exact), "{name}: sequence not exact\n{r}");
        for &(n, tot, diag) in &r.diagonal_check {
            if n <= 2 {
                ensure!(tot == diag, "{name}: H^{n}(Tot D) = {tot} but H^{n}(D) = {diag}");
            }
        }
        // predicted split defect: |𝒫| − c(ℋ) − c(𝒱) + c(𝒟) in degree 1
        let d = ok(MatchedPair::from_vacant_double(&t), name)?;
        let c = |g: &Groupoid| g.components().len();
        let defect = t.n_points() + c(&ok(d.diagonal_groupoid(), name)?.groupoid)
            - c(t.horizontal())
            - c(t.vertical());
        for e in r.edge_check.iter().filter(|e| e.degree <= 2) {
            let want = if e.degree == 1 { defect } else { 0 };
            ensure!(e.balances() && e.correction == want, "{name}: Tot E in degree {} is {e:?}", e.degree);
            if e.correction > 0 {
                notes.push(format!(
                    "{name}: dim H^{} (Tot E) = {} vs H^{}(H)+H^{}(V) = {}",
                    e.degree,
                    e.tot_e,
                    e.degree,
                    e.degree,
                    e.horizontal + e.vertical
                ));
            }
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(120), "{took:?} exceeds 2 min");
    let base = format!("Tot D = diagonal for n = 1, 2; nine terms exact on S3/F_2, X22/F_3; {took:.2?}");
    if notes.is_empty() {
        Ok(Outcome::Pass(base))
    } else {
        Ok(Outcome::Documented(format!(
            "{base}; Tot E does not split in degree 1 on several points ({}), off by exactly |P| − c(H) − c(V) + c(D)",
            notes.join("; ")
        )))
    }
}

fn c11_opext() -> Result<Outcome, String> {
    let mut seen = Vec::new();
    for (name, t) in [("S3", corpus::s3_double()), ("X22", x22())] {
        let (_, opext) = ok(aut_and_opext(&t, 2, Normalization::Full), name)?;
        let order = opext.order_u64().ok_or_else(|| format!("{name}: H¹(Tot A) is infinite"))?;
        let space = ok(CocycleSpace::new(&t), name)?;
        let classes = ok(space.count_modulo_gauge(2, DEFAULT_BUDGET), name)?;
        ensure!(order as usize == classes, "{name}: |H¹| = {order}, {classes} gauge classes");
        seen.push(format!("{name} {classes}"));
    }
    Ok(Outcome::Pass(format!("|H¹(Tot A, Z/2)| = gauge classes: {}", seen.join(", "))))
}

/// The pairing is the identity matrix on box indices; checked here through
/// the public element arithmetic as well as by the library.
fn pairing_holds<F: Field>(w: &QuantumGroupoid<F>, wt: &QuantumGroupoid<F>) -> Result<(), String> {
    let f = w.field();
    let n = w.dim();
    let coeff = |x: &qgroupoid::wha::Element<F::Elem>, c: usize| x.coefficient(c).cloned().unwrap_or(f.zero());
    let basis = |w: &QuantumGroupoid<F>, a| w.basis_element(a).unwrap();
    for a in 0..n {
        for b in 0..n {
            let ab = w.multiply(&basis(w, a), &basis(w, b)).unwrap();
            let abt = wt.multiply(&basis(wt, a), &basis(wt, b)).unwrap();
            for c in 0..n {
                let dc = wt.comultiply(&basis(wt, c)).unwrap();
                let dct = w.comultiply(&basis(w, c)).unwrap();
                let lhs = coeff(&ab, c);
                let rhs = dc.terms().get(&(a, b)).cloned().unwrap_or(f.zero());
                ensure!(lhs == rhs, "(ab|c) ≠ (a⊗b|Δc) at {a}, {b}, {c}");
                let lhs = coeff(&abt, c);
                let rhs = dct.terms().get(&(a, b)).cloned().unwrap_or(f.zero());
                ensure!(lhs == rhs, "(Δa|b⊗c) ≠ (a|bc) at {a}, {b}, {c}");
            }
        }
        ensure!(coeff(&w.unit(), a) == wt.counit(&basis(wt, a)).unwrap(), "(1|c) ≠ ε(c) at {a}");
        ensure!(coeff(&wt.unit(), a) == w.counit(&basis(w, a)).unwrap(), "ε(a) ≠ (a|1) at {a}");
        let sa = w.antipode(&basis(w, a)).unwrap();
        for c in 0..n {
            let sc = wt.antipode(&basis(wt, c)).unwrap();
            ensure!(coeff(&sa, c) == coeff(&sc, a), "(Sa|c) ≠ (a|Sc) at {a}, {c}");
        }
    }
    let rep = duality_check(w, wt).map_err(|e| e.to_string())?;
    ensure!(rep.is_ok(), "{rep}");
    Ok(())
}

fn c12_duality() -> Result<Outcome, String> {
    let mut count = 0;
    for (name, t) in vacant_corpus() {
        let w = ok(QuantumGroupoid::build(&t, Rationals), &name)?;
        let wt = ok(QuantumGroupoid::build(&t.transpose(), Rationals), &name)?;
        pairing_holds(&w, &wt).map_err(|e| format!("{name}: {e}"))?;
        count += 1;
    }
    for (name, t) in [("S3", corpus::s3_double()), ("X22", x22())] {
        for cp in pairs_mod2(&t)? {
            let w = ok(QuantumGroupoid::build_twisted(&t, &cp, f3(), &2), name)?;
            let wt = ok(QuantumGroupoid::build_twisted(&t.transpose(), &swapped(&cp), f3(), &2), name)?;
            pairing_holds(&w, &wt).map_err(|e| format!("{name} twisted by {cp:?}: {e}"))?;
            count += 1;
        }
    }
    // the non-vacant control has no algebra to pair
    let control = corpus::commuting_squares_z2();
    ensure!(
        QuantumGroupoid::build(&control, Rationals).is_err(),
        "control builds an algebra"
    );
    Ok(Outcome::Pass(format!("pairing intertwines all structures on {count} pairs of algebras")))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 12] = [
        ("weak Hopf axioms on vacant instances", c1_wha_bicross),
        ("twisted builds from cocycle pairs", c2_twisted),
        ("Hopf exactly on one point", c3_hopf),
        ("involutory antipode", c4_involutory),
        ("block dimensions", c5_blocks),
        ("vacancy formulations", c6_vacancy),
        ("matched pair round trips", c7_round_trips),
        ("connected factorization", c8_connected),
        ("cohomology engine", c9_cohomology),
        ("exact sequence", c10_kac),
        ("extensions vs gauge classes", c11_opext),
        ("duality with the transpose", c12_duality),
    ];
    let mut failed = 0;
    for (i, (what, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(Outcome::Pass(d)) => println!("criterion {:>2}: PASS  {what}: {d}", i + 1),
            Ok(Outcome::Documented(d)) => println!("criterion {:>2}: FAIL (documented)  {what}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {what}: {d}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
