use crate::error::{structure, Result};

/// An equivalence relation on `0..n`, stored as the smallest member of each
/// element's class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equivalence {
    class_of: Vec<usize>,
}

impl Equivalence {
    pub fn discrete(n: usize) -> Self {
        Equivalence {
            class_of: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Equivalence {
            class_of: vec![0; n],
        }
    }

    /// From any labelling: elements with equal labels are related.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let class_of = (0..labels.len())
            .map(|i| (0..=i).find(|&j| labels[j] == labels[i]).unwrap())
            .collect();
        Equivalence { class_of }
    }

    /// From explicit classes, which must partition `0..n`.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= n {
                    return structure(format!("class element {x} out of range"));
                }
                if label[x] != usize::MAX {
                    return structure(format!("element {x} lies in two classes"));
                }
                label[x] = c;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return structure(format!("element {x} lies in no class"));
        }
        Ok(Self::from_labels(&label))
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Smallest member of the class of `a`.
    pub fn representative(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Classes, each ascending, ordered by smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.len()];
        for x in 0..self.len() {
            let r = self.class_of[x];
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }

    pub fn class(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.related(a, b)).collect()
    }
}
