use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Witnesses kept per axiom; the count is always exact.
pub const WITNESS_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation<A> {
    pub axiom: A,
    pub witness: Vec<usize>,
}

/// Outcome of an exhaustive check: failing tuples grouped by axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report<A: Ord> {
    pub violations: Vec<Violation<A>>,
    pub counts: BTreeMap<A, usize>,
}

impl<A: Ord + Clone> Default for Report<A> {
    fn default() -> Self {
        Report {
            violations: Vec::new(),
            counts: BTreeMap::new(),
        }
    }
}

impl<A: Ord + Clone> Report<A> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, axiom: A, witness: Vec<usize>) {
        let c = self.counts.entry(axiom.clone()).or_insert(0);
        *c += 1;
        if *c <= WITNESS_LIMIT {
            self.violations.push(Violation { axiom, witness });
        }
    }

    pub fn check(&mut self, ok: bool, axiom: A, witness: impl FnOnce() -> Vec<usize>) {
        if !ok {
            self.push(axiom, witness());
        }
    }

    pub fn is_ok(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn failed(&self, axiom: &A) -> bool {
        self.counts.contains_key(axiom)
    }

    pub fn first(&self, axiom: &A) -> Option<&Violation<A>> {
        self.violations.iter().find(|v| &v.axiom == axiom)
    }

    pub fn merge(&mut self, other: Report<A>) {
        for (a, n) in other.counts {
            *self.counts.entry(a).or_insert(0) += n;
        }
        self.violations.extend(other.violations);
    }

    /// Puts violations in a canonical order independent of how they were produced.
    pub fn sort(&mut self) {
        self.violations
            .sort_by(|a, b| (&a.axiom, &a.witness).cmp(&(&b.axiom, &b.witness)));
        let mut seen: BTreeMap<A, usize> = BTreeMap::new();
        self.violations.retain(|v| {
            let c = seen.entry(v.axiom.clone()).or_insert(0);
            *c += 1;
            *c <= WITNESS_LIMIT
        });
    }
}

impl<A: Ord + Clone + fmt::Display> fmt::Display for Report<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (axiom, n) in &self.counts {
            write!(f, "{axiom}: {n} violation(s)")?;
            if let Some(v) = self.first(axiom) {
                write!(f, ", e.g. {:?}", v.witness)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
