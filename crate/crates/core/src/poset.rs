//! Finite posets stored as Hasse covers, plus the tree/thicket calculus:
//! suprema, leaves, covers of convex subtrees.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::report::Diagnostic;

/// A finite poset. Covers are pairs `(child, parent)` with `child ⋖ parent`.
/// The reflexive-transitive closure is computed once on construction.
#[derive(Clone)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    le: Vec<Vec<bool>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PosetClass {
    General,
    Thicket,
    Tree { root: usize },
}

impl PosetClass {
    pub fn is_thicket(self) -> bool {
        !matches!(self, PosetClass::General)
    }

    pub fn is_tree(self) -> bool {
        matches!(self, PosetClass::Tree { .. })
    }
}

/// Result of a supremum query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sup {
    Least(usize),
    NoUpperBound,
    /// Upper bounds exist but several of them are minimal.
    Ambiguous(Vec<usize>),
}

impl Sup {
    pub fn least(&self) -> Option<usize> {
        match self {
            Sup::Least(x) => Some(*x),
            _ => None,
        }
    }
}

/// A nonempty order-convex subset with a greatest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexSubtree {
    pub root: usize,
    /// Sorted element indices.
    pub carrier: Vec<usize>,
}

pub(crate) fn check_name(name: &str) -> Result<()> {
    if name.trim().is_empty() || name.chars().any(char::is_control) {
        return Err(Error::InvalidName(name.to_string()));
    }
    Ok(())
}

impl Poset {
    pub fn new(names: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Poset> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            check_name(n)?;
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateElement(n.clone()));
            }
        }
        let len = names.len();
        let mut covers = covers;
        covers.sort_unstable();
        covers.dedup();
        let mut children = vec![Vec::new(); len];
        let mut parents = vec![Vec::new(); len];
        for &(c, p) in &covers {
            if c >= len || p >= len {
                return Err(Error::Malformed(format!("cover ({c}, {p}) out of range")));
            }
            if c == p {
                return Err(Error::CyclicCovers(names[c].clone()));
            }
            children[p].push(c);
            parents[c].push(p);
        }
        let mut le = vec![vec![false; len]; len];
        for start in 0..len {
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                if !le[start][x] {
                    le[start][x] = true;
                    stack.extend(parents[x].iter().copied());
                }
            }
        }
        for i in 0..len {
            for j in (i + 1)..len {
                if le[i][j] && le[j][i] {
                    return Err(Error::CyclicCovers(names[i].clone()));
                }
            }
        }
        for &(c, p) in &covers {
            if parents[c].iter().any(|&q| q != p && le[q][p]) {
                return Err(Error::RedundantCover(names[c].clone(), names[p].clone()));
            }
        }
        Ok(Poset {
            names,
            index,
            covers,
            children,
            parents,
            le,
        })
    }

    pub fn from_names(names: &[&str], covers: &[(&str, &str)]) -> Result<Poset> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let lookup: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let find = |n: &str| {
            lookup
                .get(n)
                .copied()
                .ok_or_else(|| Error::UnknownElement(n.to_string()))
        };
        let pairs = covers
            .iter()
            .map(|(c, p)| Ok((find(c)?, find(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::new(owned, pairs)
    }

    /// Builds a poset from a strict order `lt` (must be irreflexive and
    /// transitive) by Hasse reduction.
    pub fn from_order(names: Vec<String>, lt: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let n = names.len();
        let rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| lt(i, j)).collect()).collect();
        for i in 0..n {
            if rel[i][i] {
                return Err(Error::CyclicCovers(names[i].clone()));
            }
            for j in 0..n {
                if !rel[i][j] {
                    continue;
                }
                for k in 0..n {
                    if rel[j][k] && !rel[i][k] {
                        return Err(Error::Malformed(format!(
                            "order is not transitive at {} < {} < {}",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] && !(0..n).any(|k| rel[i][k] && rel[k][j]) {
                    covers.push((i, j));
                }
            }
        }
        Poset::new(names, covers)
    }

    pub fn chain(names: &[&str]) -> Result<Poset> {
        let covers: Vec<(usize, usize)> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Poset::new(names.iter().map(|s| s.to_string()).collect(), covers)
    }

    pub fn empty() -> &'static Poset {
        static EMPTY: OnceLock<Poset> = OnceLock::new();
        EMPTY.get_or_init(|| Poset::new(Vec::new(), Vec::new()).expect("empty poset"))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.position(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements covered by `i`.
    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    /// Elements covering `i`.
    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le[i][j] || self.le[j][i]
    }

    pub fn leq(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.le(self.id(x)?, self.id(y)?))
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.parents[i].is_empty())
            .collect()
    }

    /// Minimal elements.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.children[i].is_empty())
            .collect()
    }

    pub fn greatest(&self) -> Option<usize> {
        match self.maximal().as_slice() {
            [m] if (0..self.len()).all(|i| self.le[i][*m]) => Some(*m),
            _ => None,
        }
    }

    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.le[i][x]).collect()
    }

    pub fn up_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.le[x][i]).collect()
    }

    pub fn sup(&self, set: &[usize]) -> Sup {
        let ub: Vec<usize> = (0..self.len())
            .filter(|&u| set.iter().all(|&x| self.le[x][u]))
            .collect();
        if ub.is_empty() {
            return Sup::NoUpperBound;
        }
        let minimal: Vec<usize> = ub
            .iter()
            .copied()
            .filter(|&u| !ub.iter().any(|&v| v != u && self.le[v][u]))
            .collect();
        match minimal.as_slice() {
            [m] => Sup::Least(*m),
            _ => Sup::Ambiguous(minimal),
        }
    }

    pub fn sup2(&self, x: &str, y: &str) -> Result<Option<&str>> {
        let (i, j) = (self.id(x)?, self.id(y)?);
        Ok(self.sup(&[i, j]).least().map(|k| self.name(k)))
    }

    /// Leaves below `x`, as sorted indices.
    pub fn leaves_below(&self, x: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.children[i].is_empty() && self.le[i][x])
            .collect()
    }

    pub fn leaves_over(&self, x: &str) -> Result<Vec<&str>> {
        let i = self.id(x)?;
        Ok(self.sorted_names(&self.leaves_below(i)))
    }

    /// The root of `set` if it is a convex subtree.
    pub fn convex_root(&self, set: &[usize]) -> Option<usize> {
        let mut member = vec![false; self.len()];
        for &x in set {
            member[x] = true;
        }
        let root = *set.iter().find(|&&r| set.iter().all(|&x| self.le[x][r]))?;
        for &x in set {
            for s in 0..self.len() {
                if !member[s] && self.le[x][s] && self.le[s][root] {
                    return None;
                }
            }
        }
        Some(root)
    }

    /// `cvr(X) = ⋃ cvr(x) − X` for a convex subtree `X`.
    pub fn cover_of_set(&self, set: &[usize]) -> Result<Vec<usize>> {
        if self.convex_root(set).is_none() {
            return Err(Error::NotConvex(
                set.iter().map(|&i| self.names[i].clone()).collect(),
            ));
        }
        let mut out: Vec<usize> = set
            .iter()
            .flat_map(|&x| self.children[x].iter().copied())
            .filter(|c| !set.contains(c))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn cover_of(&self, set: &[&str]) -> Result<Vec<&str>> {
        let ids = set.iter().map(|n| self.id(n)).collect::<Result<Vec<_>>>()?;
        let cover = self.cover_of_set(&ids)?;
        Ok(self.sorted_names(&cover))
    }

    fn up_sets_are_chains(&self, within: impl Fn(usize) -> bool) -> bool {
        let n = self.len();
        for x in (0..n).filter(|&x| within(x)) {
            let ups: Vec<usize> = (0..n).filter(|&y| within(y) && self.le[x][y]).collect();
            for (a, &y) in ups.iter().enumerate() {
                for &z in &ups[a + 1..] {
                    if !self.comparable(y, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn classify(&self) -> PosetClass {
        let is_thicket = (0..self.len()).all(|p| self.up_sets_are_chains(|x| self.le[x][p]));
        if !is_thicket || self.is_empty() {
            return PosetClass::General;
        }
        match self.greatest() {
            Some(root) if self.up_sets_are_chains(|_| true) => PosetClass::Tree { root },
            _ => PosetClass::Thicket,
        }
    }

    /// Reasons the poset fails to be a tree (empty when it is one).
    pub fn class_diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut push = |code: &str, message: String| {
            out.push(Diagnostic {
                code: code.into(),
                message,
            })
        };
        if self.is_empty() {
            push("empty", "poset has no elements".into());
            return out;
        }
        if self.greatest().is_none() {
            let max = self.sorted_names(&self.maximal());
            push("no-greatest", format!("maximal elements {max:?}"));
        }
        for p in 0..self.len() {
            if !self.up_sets_are_chains(|x| self.le[x][p]) {
                push(
                    "down-set-not-tree",
                    format!("down-set of `{}` is not a tree", self.names[p]),
                );
            }
        }
        out
    }

    /// All convex subtrees, ordered by root name and then carrier names.
    pub fn convex_subtrees(&self) -> Result<Vec<ConvexSubtree>> {
        if !self.classify().is_thicket() {
            return Err(Error::NotThicket);
        }
        let mut memo: Vec<Option<Vec<Vec<usize>>>> = vec![None; self.len()];
        let mut out = Vec::new();
        for r in 0..self.len() {
            for mut carrier in self.rooted_subtrees(r, &mut memo) {
                carrier.sort_unstable();
                out.push(ConvexSubtree { root: r, carrier });
            }
        }
        let key = |t: &ConvexSubtree| {
            let mut names: Vec<&str> = t.carrier.iter().map(|&i| self.name(i)).collect();
            names.sort_unstable();
            (
                self.name(t.root).to_string(),
                names.into_iter().map(str::to_string).collect::<Vec<_>>(),
            )
        };
        out.sort_by_cached_key(key);
        Ok(out)
    }

    fn rooted_subtrees(
        &self,
        r: usize,
        memo: &mut Vec<Option<Vec<Vec<usize>>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(done) = &memo[r] {
            return done.clone();
        }
        let mut acc = vec![vec![r]];
        for &c in &self.children[r].clone() {
            let options = self.rooted_subtrees(c, memo);
            let mut next = Vec::with_capacity(acc.len() * (options.len() + 1));
            for partial in &acc {
                next.push(partial.clone());
                for opt in &options {
                    let mut joined = partial.clone();
                    joined.extend_from_slice(opt);
                    next.push(joined);
                }
            }
            acc = next;
        }
        memo[r] = Some(acc.clone());
        acc
    }

    /// The subposet induced on `subset`, keeping the order of `subset`.
    pub fn induced(&self, subset: &[usize]) -> Poset {
        let names = subset.iter().map(|&i| self.names[i].clone()).collect();
        Poset::from_order(names, |a, b| self.lt(subset[a], subset[b]))
            .expect("induced order is a poset")
    }

    pub fn sorted_names(&self, ids: &[usize]) -> Vec<&str> {
        let mut v: Vec<&str> = ids.iter().map(|&i| self.name(i)).collect();
        v.sort_unstable();
        v
    }

    /// Same order, new names (in index order).
    pub fn renamed(&self, names: Vec<String>) -> Result<Poset> {
        if names.len() != self.len() {
            return Err(Error::Malformed("renaming has the wrong length".into()));
        }
        Poset::new(names, self.covers.clone())
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers
            .iter()
            .map(|&(c, p)| format!("{}<{}", self.names[c], self.names[p]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("covers", &covers)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
        (1u32..(1 << n)).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
    }

    fn brute_convex_count(p: &Poset) -> usize {
        subsets(p.len())
            .filter(|s| {
                let root = s.iter().find(|&&r| s.iter().all(|&x| p.le(x, r)));
                root.is_some()
                    && s.iter().all(|&x| {
                        s.iter().all(|&y| {
                            (0..p.len()).all(|z| !(p.lt(x, z) && p.lt(z, y)) || s.contains(&z))
                        })
                    })
            })
            .count()
    }

    #[test]
    fn rejects_cycles_and_redundant_covers() {
        assert!(matches!(
            Poset::from_names(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::CyclicCovers(_))
        ));
        let r = Poset::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert!(matches!(r, Err(Error::RedundantCover(..))));
        assert!(matches!(
            Poset::from_names(&["a", "a"], &[]),
            Err(Error::DuplicateElement(_))
        ));
        assert!(matches!(
            Poset::from_names(&["  "], &[]),
            Err(Error::InvalidName(_))
        ));
    }

    #[test]
    fn leq_on_chain() {
        let l1 = Poset::chain(&["y_6", "y_5", "y_4", "y_1"]).unwrap();
        assert!(l1.leq("y_6", "y_4").unwrap());
        assert!(l1.leq("y_4", "y_4").unwrap());
        assert!(!l1.leq("y_1", "y_6").unwrap());
        assert!(matches!(
            l1.leq("y_9", "y_1"),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn classification() {
        let chain = Poset::chain(&["y_6", "y_5", "y_4", "y_1"]).unwrap();
        assert_eq!(chain.classify(), PosetClass::Tree { root: 3 });
        let diamond = Poset::from_names(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap();
        assert_eq!(diamond.classify(), PosetClass::General);
        let forest = Poset::from_names(&["a_0", "a_1", "a_2"], &[("a_2", "a_1")]).unwrap();
        assert_eq!(forest.classify(), PosetClass::Thicket);
        assert_eq!(forest.sup2("a_0", "a_1").unwrap(), None);
        let empty = Poset::empty();
        assert_eq!(empty.classify(), PosetClass::General);
        assert_eq!(empty.class_diagnostics()[0].code, "empty");
    }

    #[test]
    fn convex_subtree_counts_match_subset_filter() {
        let single = Poset::chain(&["a"]).unwrap();
        assert_eq!(single.convex_subtrees().unwrap().len(), 1);
        let two = Poset::chain(&["a", "b"]).unwrap();
        let subs = two.convex_subtrees().unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs.len(), brute_convex_count(&two));
        let co = Poset::from_names(
            &["t_3~v", "y_3~c", "y_2~c"],
            &[("t_3~v", "y_3~c"), ("y_3~c", "y_2~c")],
        )
        .unwrap();
        assert_eq!(co.convex_subtrees().unwrap().len(), brute_convex_count(&co));
        let star = Poset::from_names(
            &["r", "a", "b", "c", "d"],
            &[("a", "r"), ("b", "r"), ("c", "a"), ("d", "a")],
        )
        .unwrap();
        assert_eq!(
            star.convex_subtrees().unwrap().len(),
            brute_convex_count(&star)
        );
    }

    #[test]
    fn cover_of_requires_convexity() {
        let chain = Poset::chain(&["a", "b", "c"]).unwrap();
        assert!(matches!(
            chain.cover_of(&["a", "c"]),
            Err(Error::NotConvex(_))
        ));
        assert_eq!(chain.cover_of(&["b", "c"]).unwrap(), vec!["a"]);
        assert_eq!(chain.cover_of(&["a"]).unwrap(), Vec::<&str>::new());
    }
}
