//! Binary tries with canonical leaf merging.
//!
//! A `Trie<T>` describes a function on the Cantor set that is constant on
//! the cylinder of every leaf. The smart constructor [`Trie::node`]
//! collapses a node whose two children are equal leaves, so two tries are
//! structurally equal exactly when they describe the same function.

use crate::cantor::BinaryWord;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Trie<T> {
    Leaf(T),
    Node(Box<Trie<T>>, Box<Trie<T>>),
}

impl<T: Clone + Eq> Trie<T> {
    pub(crate) fn leaf(value: T) -> Self {
        Trie::Leaf(value)
    }

    pub(crate) fn node(zero: Trie<T>, one: Trie<T>) -> Self {
        match (&zero, &one) {
            (Trie::Leaf(a), Trie::Leaf(b)) if a == b => zero,
            _ => Trie::Node(Box::new(zero), Box::new(one)),
        }
    }

    /// `inner` placed on the cylinder of `word`, `background` everywhere else.
    pub(crate) fn graft(word: &[bool], inner: Trie<T>, background: &T) -> Self {
        let mut acc = inner;
        for &bit in word.iter().rev() {
            let other = Trie::leaf(background.clone());
            acc = if bit {
                Trie::node(other, acc)
            } else {
                Trie::node(acc, other)
            };
        }
        acc
    }

    /// Restriction to the cylinder of `word`, re-rooted at that cylinder.
    pub(crate) fn subtrie(&self, word: &[bool]) -> Trie<T> {
        let mut cur = self;
        for &bit in word {
            match cur {
                Trie::Leaf(_) => return cur.clone(),
                Trie::Node(zero, one) => cur = if bit { one } else { zero },
            }
        }
        cur.clone()
    }

    /// Value at any point whose leading bits are produced by `bits`.
    pub(crate) fn lookup<I: IntoIterator<Item = bool>>(&self, bits: I) -> &T {
        let mut cur = self;
        let mut bits = bits.into_iter();
        loop {
            match cur {
                Trie::Leaf(v) => return v,
                Trie::Node(zero, one) => {
                    // Infinite points never run out; finite words longer
                    // than the trie depth are the only callers.
                    let bit = bits.next().expect("bit stream shorter than trie depth");
                    cur = if bit { one } else { zero };
                }
            }
        }
    }

    pub(crate) fn zip_with<U, V, F>(a: &Trie<U>, b: &Trie<V>, f: &F) -> Trie<T>
    where
        U: Clone + Eq,
        V: Clone + Eq,
        F: Fn(&U, &V) -> T,
    {
        match (a, b) {
            (Trie::Leaf(x), Trie::Leaf(y)) => Trie::leaf(f(x, y)),
            (Trie::Leaf(_), Trie::Node(b0, b1)) => {
                Trie::node(Self::zip_with(a, b0, f), Self::zip_with(a, b1, f))
            }
            (Trie::Node(a0, a1), Trie::Leaf(_)) => {
                Trie::node(Self::zip_with(a0, b, f), Self::zip_with(a1, b, f))
            }
            (Trie::Node(a0, a1), Trie::Node(b0, b1)) => {
                Trie::node(Self::zip_with(a0, b0, f), Self::zip_with(a1, b1, f))
            }
        }
    }

    pub(crate) fn map<U: Clone + Eq, F: Fn(&T) -> U>(&self, f: &F) -> Trie<U> {
        match self {
            Trie::Leaf(v) => Trie::leaf(f(v)),
            Trie::Node(zero, one) => Trie::node(zero.map(f), one.map(f)),
        }
    }

    /// Leaves in depth-first order (`0` before `1`), which is the
    /// lexicographic order of their words.
    pub(crate) fn leaves(&self) -> Vec<(BinaryWord, &T)> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_leaves(&mut path, &mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, path: &mut Vec<bool>, out: &mut Vec<(BinaryWord, &'a T)>) {
        match self {
            Trie::Leaf(v) => out.push((BinaryWord::from_bits(path.clone()), v)),
            Trie::Node(zero, one) => {
                path.push(false);
                zero.collect_leaves(path, out);
                path.pop();
                path.push(true);
                one.collect_leaves(path, out);
                path.pop();
            }
        }
    }

    pub(crate) fn depth(&self) -> usize {
        match self {
            Trie::Leaf(_) => 0,
            Trie::Node(zero, one) => 1 + zero.depth().max(one.depth()),
        }
    }
}

impl Trie<bool> {
    /// Indicator trie of the union of the cylinders of `words`.
    pub(crate) fn from_words<'a, I: IntoIterator<Item = &'a BinaryWord>>(words: I) -> Self {
        words.into_iter().fold(Trie::leaf(false), |acc, w| {
            let cyl = Trie::graft(w.bits(), Trie::leaf(true), &false);
            Trie::zip_with(&acc, &cyl, &|a: &bool, b: &bool| *a || *b)
        })
    }

    pub(crate) fn true_words(&self) -> Vec<BinaryWord> {
        self.leaves()
            .into_iter()
            .filter(|(_, v)| **v)
            .map(|(w, _)| w)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn siblings_collapse() {
        let t = Trie::from_words([&w("0"), &w("1")]);
        assert_eq!(t, Trie::leaf(true));
    }

    #[test]
    fn graft_and_subtrie_are_inverse() {
        let inner = Trie::node(Trie::leaf(3), Trie::leaf(5));
        let g = Trie::graft(w("01").bits(), inner.clone(), &0);
        assert_eq!(g.subtrie(w("01").bits()), inner);
        assert_eq!(g.subtrie(w("1").bits()), Trie::leaf(0));
        assert_eq!(g.depth(), 3);
    }

    #[test]
    fn leaves_come_out_sorted() {
        let t = Trie::from_words([&w("11"), &w("00"), &w("010")]);
        let words: Vec<String> = t.true_words().iter().map(|x| x.to_string()).collect();
        assert_eq!(words, ["00", "010", "11"]);
    }
}
