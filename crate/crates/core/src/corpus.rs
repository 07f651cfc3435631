//! Small named instances used by tests, the acceptance suite and the CLI.

use crate::double::{build_xrs, direct_product, disjoint_union, DoubleGroupoid, Frame};
use crate::groupoid::{FiniteGroup, Groupoid};
use crate::matched_pair::MatchedPair;
use std::collections::HashMap;

/// The matched pair of the exact factorization `S₃ = ⟨(12)⟩·⟨(123)⟩`, with
/// `𝒱 = ⟨(12)⟩ ≅ ℤ/2` and `ℋ = ⟨(123)⟩ ≅ ℤ/3`.
pub fn s3_matched_pair() -> MatchedPair {
    let (g, perms) = FiniteGroup::symmetric(3);
    let idx = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let v = g.generated(&[idx(&[1, 0, 2])]);
    let h = g.generated(&[idx(&[1, 2, 0])]);
    MatchedPair::from_exact_factorization(&g.as_groupoid(), &v, &h)
        .expect("S3 factorization is exact")
        .matched_pair
}

pub fn s3_double() -> DoubleGroupoid {
    s3_matched_pair().to_vacant_double().expect("valid matched pair")
}

/// All commuting squares `(t, b, l, r)` of `g`, with `g` as both edge
/// groupoids: `l(t) = t(l)`, `tr = lb`. Not vacant once `g` has a
/// non-identity arrow.
pub fn commuting_squares(g: &Groupoid) -> DoubleGroupoid {
    let n = g.n_arrows();
    let mut frames = Vec::new();
    let mut index = HashMap::new();
    for t in 0..n {
        for r in 0..n {
            let Some(tr) = g.compose(t, r) else { continue };
            for l in 0..n {
                if g.source(l) != g.source(t) {
                    continue;
                }
                for b in 0..n {
                    if g.compose(l, b) == Some(tr) {
                        index.insert((t, b, l, r), frames.len());
                        frames.push(Frame {
                            top: t,
                            bottom: b,
                            left: l,
                            right: r,
                        });
                    }
                }
            }
        }
    }
    let bx = |f: Frame| index[&(f.top, f.bottom, f.left, f.right)];
    let vid = (0..n)
        .map(|x| {
            bx(Frame {
                top: x,
                bottom: x,
                left: g.identity(g.source(x)),
                right: g.identity(g.target(x)),
            })
        })
        .collect();
    let hid = (0..n)
        .map(|k| {
            bx(Frame {
                top: g.identity(g.source(k)),
                bottom: g.identity(g.target(k)),
                left: k,
                right: k,
            })
        })
        .collect();
    DoubleGroupoid::from_frames(
        g.clone(),
        g.clone(),
        &frames,
        vid,
        hid,
        |a, b| {
            let (fa, fb) = (frames[a], frames[b]);
            bx(Frame {
                top: fa.top,
                bottom: fb.bottom,
                left: g.mul(fa.left, fb.left),
                right: g.mul(fa.right, fb.right),
            })
        },
        |a, b| {
            let (fa, fb) = (frames[a], frames[b]);
            bx(Frame {
                top: g.mul(fa.top, fb.top),
                bottom: g.mul(fa.bottom, fb.bottom),
                left: fa.left,
                right: fb.right,
            })
        },
    )
    .expect("commuting squares")
}

pub fn commuting_squares_z2() -> DoubleGroupoid {
    commuting_squares(&FiniteGroup::cyclic(2).as_groupoid())
}

fn xrs(r: usize, s: usize) -> DoubleGroupoid {
    build_xrs(r, s).expect("r, s > 0")
}

/// Every named instance, vacant and not.
pub fn all() -> Vec<(String, DoubleGroupoid)> {
    let s3 = s3_double();
    let mut out = small();
    out.push(("S3xX22".into(), direct_product(&s3, &xrs(2, 2)).unwrap()));
    out.push(("X22xX12".into(), direct_product(&xrs(2, 2), &xrs(1, 2)).unwrap()));
    out
}

/// Instances with at most 36 boxes, cheap enough for brute force over `ℬ⁴`.
pub fn small() -> Vec<(String, DoubleGroupoid)> {
    let s3 = s3_double();
    let x11 = xrs(1, 1);
    vec![
        ("S3".into(), s3.clone()),
        ("S3^t".into(), s3.transpose()),
        ("X11".into(), x11.clone()),
        ("X12".into(), xrs(1, 2)),
        ("X21".into(), xrs(2, 1)),
        ("X22".into(), xrs(2, 2)),
        ("X23".into(), xrs(2, 3)),
        ("X11+S3".into(), disjoint_union(&x11, &s3).unwrap()),
        ("X11xS3".into(), direct_product(&x11, &s3).unwrap()),
        ("X22+X11".into(), disjoint_union(&xrs(2, 2), &x11).unwrap()),
        ("X12xX21".into(), direct_product(&xrs(1, 2), &xrs(2, 1)).unwrap()),
        ("squares(Z2)".into(), commuting_squares_z2()),
        (
            "squares(coarse2)".into(),
            commuting_squares(&crate::groupoid::coarse_groupoid(2).unwrap()),
        ),
    ]
}

/// File stem used for an instance of [`all`] in the shipped `corpus/`.
pub fn file_stem(name: &str) -> String {
    match name {
        "squares(Z2)" => "commuting_squares_z2".into(),
        "squares(coarse2)" => "commuting_squares_coarse2".into(),
        _ => {
            // A product `x` follows a digit, as in `X11xS3`.
            let mut out = String::new();
            let mut prev_digit = false;
            for c in name.to_lowercase().replace("^t", "_transpose").replace('+', "_plus_").chars() {
                if c == 'x' && prev_digit {
                    out.push_str("_times_");
                } else {
                    out.push(c);
                }
                prev_digit = c.is_ascii_digit();
            }
            out
        }
    }
}

/// Every document shipped in `corpus/`, by file stem.
pub fn documents() -> Vec<(String, crate::format::Document)> {
    use crate::format::{CocycleTables, Document};
    let mut out: Vec<(String, Document)> = all()
        .into_iter()
        .map(|(name, t)| (file_stem(&name), Document::DoubleGroupoid(t)))
        .collect();
    out.push(("s3_matched_pair".into(), Document::MatchedPair(s3_matched_pair())));
    out.push(("group_z2".into(), Document::Groupoid(FiniteGroup::cyclic(2).as_groupoid())));
    out.push(("coarse3".into(), Document::Groupoid(crate::groupoid::coarse_groupoid(3).unwrap())));
    out.push(("field_f3".into(), Document::FieldSpec(crate::field::FieldSpec::prime(3, Some(2)))));
    let s3 = s3_double();
    let space = crate::cocycle::CocycleSpace::new(&s3).unwrap();
    let twisted = space
        .enumerate_propagating(2, crate::cocycle::DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .rfind(|cp| cp.sigma.iter().chain(&cp.tau).any(|&v| v != 0))
        .expect("S3 has nontrivial pairs mod 2");
    out.push((
        "s3_cocycle_m2".into(),
        Document::CocyclePair(CocycleTables::from_pair(&s3, &twisted).unwrap()),
    ));
    out
}
