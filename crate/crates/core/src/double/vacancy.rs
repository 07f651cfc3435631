use super::DoubleGroupoid;
use serde::Serialize;

/// A corner of a box where a horizontal and a vertical side meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Corner {
    TopRight,
    BottomLeft,
    TopLeft,
    BottomRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::TopRight,
        Corner::BottomLeft,
        Corner::TopLeft,
        Corner::BottomRight,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum VacancyVerdict {
    Vacant,
    /// The edge pair `(x ∈ ℋ, g ∈ 𝒱)` meeting at the corner has a number of
    /// fillers other than one.
    NonVacant {
        horizontal: usize,
        vertical: usize,
        fillers: Vec<usize>,
    },
}

impl VacancyVerdict {
    pub fn is_vacant(&self) -> bool {
        matches!(self, VacancyVerdict::Vacant)
    }
}

/// Verdicts of the four corner formulations of vacancy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VacancyReport {
    pub top_right: VacancyVerdict,
    pub bottom_left: VacancyVerdict,
    pub top_left: VacancyVerdict,
    pub bottom_right: VacancyVerdict,
}

impl VacancyReport {
    pub fn consistent(&self) -> bool {
        let v = self.top_right.is_vacant();
        [&self.bottom_left, &self.top_left, &self.bottom_right]
            .iter()
            .all(|x| x.is_vacant() == v)
    }
}

/// For every pair of edges meeting at `corner`, counts the boxes having
/// exactly those two sides; vacant when every count is one.
pub fn corner_verdict(t: &DoubleGroupoid, corner: Corner) -> VacancyVerdict {
    let (h, v) = (t.horizontal(), t.vertical());
    let nh = h.n_arrows();
    let nv = v.n_arrows();
    let (hside, vside): (fn(&DoubleGroupoid, usize) -> usize, fn(&DoubleGroupoid, usize) -> usize) =
        match corner {
            Corner::TopRight => (DoubleGroupoid::top, DoubleGroupoid::right),
            Corner::BottomLeft => (DoubleGroupoid::bottom, DoubleGroupoid::left),
            Corner::TopLeft => (DoubleGroupoid::top, DoubleGroupoid::left),
            Corner::BottomRight => (DoubleGroupoid::bottom, DoubleGroupoid::right),
        };
    let meets = |x: usize, g: usize| match corner {
        Corner::TopRight => h.target(x) == v.source(g),
        Corner::BottomLeft => h.source(x) == v.target(g),
        Corner::TopLeft => h.source(x) == v.source(g),
        Corner::BottomRight => h.target(x) == v.target(g),
    };
    let mut fillers = vec![Vec::new(); nh * nv];
    for a in 0..t.n_boxes() {
        fillers[hside(t, a) * nv + vside(t, a)].push(a);
    }
    for x in 0..nh {
        for g in 0..nv {
            let f = &fillers[x * nv + g];
            if meets(x, g) && f.len() != 1 {
                return VacancyVerdict::NonVacant {
                    horizontal: x,
                    vertical: g,
                    fillers: f.clone(),
                };
            }
        }
    }
    VacancyVerdict::Vacant
}

/// Vacancy: each `(x, g)` with `r(x) = t(g)` is the top and right of exactly
/// one box.
pub fn is_vacant(t: &DoubleGroupoid) -> VacancyVerdict {
    corner_verdict(t, Corner::TopRight)
}

pub fn vacancy_report(t: &DoubleGroupoid) -> VacancyReport {
    VacancyReport {
        top_right: corner_verdict(t, Corner::TopRight),
        bottom_left: corner_verdict(t, Corner::BottomLeft),
        top_left: corner_verdict(t, Corner::TopLeft),
        bottom_right: corner_verdict(t, Corner::BottomRight),
    }
}

/// Box-level filling property: for all `R/S` and `P` with `P | (R/S)` there is
/// exactly one pair `X, Y` with `X | R`, `Y | S` and `X/Y = P`.
pub fn condition_two(t: &DoubleGroupoid) -> bool {
    let v = t.vertical();
    let by_right = t.boxes_by(|a| t.right(a), v.n_arrows());
    let by_top = t.boxes_by(|a| t.top(a), t.horizontal().n_arrows());
    for (r, s, rs) in t.vertical_boxes().entries() {
        for &p in &by_right[t.left(rs)] {
            let mut count = 0;
            for &x in &by_top[t.top(p)] {
                if t.right(x) != t.left(r) {
                    continue;
                }
                let y = t.vcomp(t.v_inv(x), p).expect("composable by frames");
                if t.right(y) == t.left(s) {
                    count += 1;
                }
            }
            if count != 1 {
                return false;
            }
        }
    }
    true
}

/// The transposed filling property, i.e. [`condition_two`] of the transpose.
pub fn condition_four(t: &DoubleGroupoid) -> bool {
    condition_two(&t.transpose())
}
