use super::Groupoid;
use crate::error::{structure, Error, Result};

/// A finite group stored as a Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptyBase);
        }
        if let Some(r) = table.iter().position(|row| row.len() != n) {
            return structure(format!("row {r} of the group table has the wrong length"));
        }
        for (a, row) in table.iter().enumerate() {
            if let Some(b) = row.iter().position(|&c| c >= n) {
                return structure(format!("group table entry ({a},{b}) out of range"));
            }
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        let not_group = |axiom: &str, witness: Vec<usize>| Error::NotAGroup {
            axiom: axiom.to_string(),
            witness,
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(not_group("associativity", vec![a, b, c]));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| m(e, g) == g && m(g, e) == g))
            .ok_or_else(|| not_group("identity", vec![]))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| not_group("inverse", vec![a]))?;
            inverse.push(b);
        }
        Ok(FiniteGroup {
            order: n,
            table: flat,
            identity,
            inverse,
        })
    }

    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table: Vec<Vec<usize>> = (0..order)
            .map(|a| (0..order).map(|b| mul(a, b)).collect())
            .collect();
        Self::from_table(&table)
    }

    /// ℤ/n with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// The symmetric group on `n` letters. Elements are the permutations in
    /// lexicographic order (index 0 is the identity); `(p·q)(i) = p(q(i))`.
    pub fn symmetric(n: usize) -> (Self, Vec<Vec<usize>>) {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("permutation");
        let g = Self::from_fn(perms.len(), |a, b| {
            let c: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
            index(&c)
        })
        .expect("symmetric group");
        (g, perms)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Subgroup generated by a set of elements, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !member[b] {
                    member[b] = true;
                    frontier.push(b);
                }
            }
        }
        (0..self.order).filter(|&a| member[a]).collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &a in elems {
            if a >= self.order {
                return false;
            }
            member[a] = true;
        }
        member[self.identity]
            && elems
                .iter()
                .all(|&a| member[self.inv(a)] && elems.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Product set `a·S·b` for a subset `S`, sorted.
    pub fn translate(&self, a: usize, set: &[usize], b: usize) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&s| self.mul(self.mul(a, s), b)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn as_groupoid(&self) -> Groupoid {
        Groupoid::from_fn(
            1,
            vec![0; self.order],
            vec![0; self.order],
            vec![self.identity],
            |a, b| self.mul(a, b),
        )
        .expect("group groupoid")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
