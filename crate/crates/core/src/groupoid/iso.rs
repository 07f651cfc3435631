use super::Groupoid;

/// A pair of object and arrow maps between two groupoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidMap {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// Checks that `map` is an isomorphism `g1 → g2`.
pub fn is_isomorphism(g1: &Groupoid, g2: &Groupoid, map: &GroupoidMap) -> bool {
    if !is_bijection(&map.objects, g2.n_objects()) || !is_bijection(&map.arrows, g2.n_arrows()) {
        return false;
    }
    if map.objects.len() != g1.n_objects() || map.arrows.len() != g1.n_arrows() {
        return false;
    }
    let (om, am) = (&map.objects, &map.arrows);
    (0..g1.n_objects()).all(|p| am[g1.identity(p)] == g2.identity(om[p]))
        && (0..g1.n_arrows()).all(|f| {
            g2.source(am[f]) == om[g1.source(f)] && g2.target(am[f]) == om[g1.target(f)]
        })
        && g1
            .entries()
            .into_iter()
            .all(|(f, g, h)| g2.compose(am[f], am[g]) == Some(am[h]))
}

const NONE: usize = usize::MAX;

#[derive(Clone)]
struct State {
    obj: Vec<usize>,
    obj_used: Vec<bool>,
    arr: Vec<usize>,
    arr_used: Vec<bool>,
}

struct Search<'a> {
    g1: &'a Groupoid,
    g2: &'a Groupoid,
    sig1: Vec<(bool, usize)>,
    sig2: Vec<(bool, usize)>,
}

fn signature(g: &Groupoid) -> Vec<(bool, usize)> {
    (0..g.n_arrows())
        .map(|f| {
            if g.source(f) != g.target(f) {
                return (false, 0);
            }
            let e = g.identity(g.source(f));
            let (mut k, mut x) = (1, f);
            while x != e {
                x = g.mul(x, f);
                k += 1;
            }
            (true, k)
        })
        .collect()
}

impl Search<'_> {
    fn map_object(&self, st: &mut State, p: usize, q: usize) -> bool {
        if st.obj[p] == q {
            return true;
        }
        if st.obj[p] != NONE || st.obj_used[q] {
            return false;
        }
        st.obj[p] = q;
        st.obj_used[q] = true;
        self.map_arrow(st, self.g1.identity(p), self.g2.identity(q))
    }

    fn map_arrow(&self, st: &mut State, a: usize, b: usize) -> bool {
        if st.arr[a] == b {
            return true;
        }
        if st.arr[a] != NONE || st.arr_used[b] || self.sig1[a] != self.sig2[b] {
            return false;
        }
        if self.g1.is_identity(a) != self.g2.is_identity(b) {
            return false;
        }
        st.arr[a] = b;
        st.arr_used[b] = true;
        self.map_object(st, self.g1.source(a), self.g2.source(b))
            && self.map_object(st, self.g1.target(a), self.g2.target(b))
    }

    fn propagate(&self, st: &mut State) -> bool {
        loop {
            let mut changed = false;
            let assigned: Vec<usize> = (0..st.arr.len()).filter(|&a| st.arr[a] != NONE).collect();
            for &x in &assigned {
                let ix = self.g1.inv(x);
                if st.arr[ix] == NONE {
                    if !self.map_arrow(st, ix, self.g2.inv(st.arr[x])) {
                        return false;
                    }
                    changed = true;
                } else if st.arr[ix] != self.g2.inv(st.arr[x]) {
                    return false;
                }
                for &y in &assigned {
                    let Some(z) = self.g1.compose(x, y) else { continue };
                    let Some(w) = self.g2.compose(st.arr[x], st.arr[y]) else { return false };
                    if st.arr[z] == NONE {
                        if !self.map_arrow(st, z, w) {
                            return false;
                        }
                        changed = true;
                    } else if st.arr[z] != w {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&self, st: State) -> Option<State> {
        let next = (0..st.arr.len()).find(|&a| st.arr[a] == NONE);
        let Some(a) = next else {
            // objects without arrows cannot occur: every object has an identity
            return Some(st);
        };
        for b in 0..self.g2.n_arrows() {
            if st.arr_used[b] {
                continue;
            }
            let mut trial = st.clone();
            if self.map_arrow(&mut trial, a, b) && self.propagate(&mut trial) {
                if let Some(done) = self.run(trial) {
                    return Some(done);
                }
            }
        }
        None
    }
}

/// Exhaustive isomorphism search with composition propagation.
pub fn find_isomorphism(g1: &Groupoid, g2: &Groupoid) -> Option<GroupoidMap> {
    if g1.n_objects() != g2.n_objects() || g1.n_arrows() != g2.n_arrows() {
        return None;
    }
    if !g1.is_valid() || !g2.is_valid() {
        return None;
    }
    let search = Search {
        g1,
        g2,
        sig1: signature(g1),
        sig2: signature(g2),
    };
    let mut a = search.sig1.clone();
    let mut b = search.sig2.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let st = State {
        obj: vec![NONE; g1.n_objects()],
        obj_used: vec![false; g2.n_objects()],
        arr: vec![NONE; g1.n_arrows()],
        arr_used: vec![false; g2.n_arrows()],
    };
    let st = search.run(st)?;
    let map = GroupoidMap {
        objects: st.obj,
        arrows: st.arr,
    };
    is_isomorphism(g1, g2, &map).then_some(map)
}
