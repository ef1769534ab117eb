//! Positive hypergraphs: faces graded by dimension with a codomain `γ` and a
//! nonempty domain set `δ`, their lower/upper orders and the axioms that make
//! them opetopic cardinals and positive opetopes.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::check_name;
use crate::report::{Diagnostic, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub idx: usize,
}

impl Face {
    pub fn new(dim: usize, idx: usize) -> Face {
        Face { dim, idx }
    }
}

pub type FaceSet = BTreeSet<Face>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypergraphClass {
    Hypergraph,
    Cardinal,
    Opetope,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lower,
    Upper,
}

/// How internal faces `ι` are computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IotaReading {
    /// `ι(a) = γδ(a) ∩ δδ(a)` per face, extended to sets by union.
    #[default]
    FaceWise,
    /// `γδ(X) ∩ δδ(X)` computed on the whole set at once.
    SetLevel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: HypergraphClass,
    pub failures: Vec<Diagnostic>,
    pub size: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRelation {
    pub dim: usize,
    pub kind: OrderKind,
    /// Strict pairs `(a, b)` with `a < b`, sorted by name.
    pub pairs: Vec<(String, String)>,
}

#[derive(Clone)]
pub struct PositiveHypergraph {
    names: Vec<Vec<String>>,
    index: HashMap<String, Face>,
    /// `gamma[k][a]` for `a ∈ S_{k+1}`.
    gamma: Vec<Vec<usize>>,
    /// `delta[k][a] ⊆ S_k` for `a ∈ S_{k+1}`, sorted.
    delta: Vec<Vec<Vec<usize>>>,
    upper: Vec<Vec<Vec<bool>>>,
    lower: Vec<Vec<Vec<bool>>>,
}

pub(crate) fn transitive_closure(rel: &mut [Vec<bool>]) {
    let n = rel.len();
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
}

impl PositiveHypergraph {
    pub fn new(
        names: Vec<Vec<String>>,
        gamma: Vec<Vec<usize>>,
        delta: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let dims = names.len();
        if dims > 0 && names[dims - 1].is_empty() {
            return Err(Error::Malformed("top dimension has no faces".into()));
        }
        if gamma.len() != dims.saturating_sub(1) || delta.len() != dims.saturating_sub(1) {
            return Err(Error::Malformed(
                "γ and δ must be given for every positive dimension".into(),
            ));
        }
        let mut index = HashMap::new();
        for (k, level) in names.iter().enumerate() {
            for (i, n) in level.iter().enumerate() {
                check_name(n)?;
                if index.insert(n.clone(), Face::new(k, i)).is_some() {
                    return Err(Error::DuplicateElement(n.clone()));
                }
            }
        }
        let mut delta = delta;
        for k in 0..dims.saturating_sub(1) {
            let (lo, hi) = (names[k].len(), names[k + 1].len());
            if gamma[k].len() != hi || delta[k].len() != hi {
                return Err(Error::Malformed(format!(
                    "γ/δ of dimension {} are not total",
                    k + 1
                )));
            }
            for a in 0..hi {
                let face = &names[k + 1][a];
                if gamma[k][a] >= lo {
                    return Err(Error::Malformed(format!("γ({face}) out of range")));
                }
                let d = &mut delta[k][a];
                if d.is_empty() {
                    return Err(Error::Malformed(format!("δ({face}) is empty")));
                }
                if d.iter().any(|&x| x >= lo) {
                    return Err(Error::Malformed(format!("δ({face}) out of range")));
                }
                let before = d.len();
                d.sort_unstable();
                d.dedup();
                if d.len() != before {
                    return Err(Error::Malformed(format!("δ({face}) has a duplicate entry")));
                }
                if k == 0 && d.len() != 1 {
                    return Err(Error::Malformed(format!(
                        "δ({face}) of a 1-face must be a single point"
                    )));
                }
            }
        }
        let mut h = PositiveHypergraph {
            names,
            index,
            gamma,
            delta,
            upper: Vec::new(),
            lower: Vec::new(),
        };
        h.upper = (0..dims)
            .map(|k| h.order_closure(k, OrderKind::Upper))
            .collect();
        h.lower = (0..dims)
            .map(|k| h.order_closure(k, OrderKind::Lower))
            .collect();
        Ok(h)
    }

    pub fn builder() -> HypergraphBuilder {
        HypergraphBuilder::default()
    }

    fn order_closure(&self, k: usize, kind: OrderKind) -> Vec<Vec<bool>> {
        let n = self.names[k].len();
        let mut rel = vec![vec![false; n]; n];
        match kind {
            OrderKind::Lower if k > 0 => {
                for a in 0..n {
                    for b in 0..n {
                        if self.delta[k - 1][b].contains(&self.gamma[k - 1][a]) {
                            rel[a][b] = true;
                        }
                    }
                }
            }
            OrderKind::Lower => {}
            OrderKind::Upper => {
                if k + 1 < self.names.len() {
                    for alpha in 0..self.names[k + 1].len() {
                        let b = self.gamma[k][alpha];
                        for &a in &self.delta[k][alpha] {
                            rel[a][b] = true;
                        }
                    }
                }
            }
        }
        transitive_closure(&mut rel);
        rel
    }

    /// Number of nonempty dimensions (`dimension + 1`, or 0 when empty).
    pub fn dims(&self) -> usize {
        self.names.len()
    }

    pub fn dimension(&self) -> usize {
        self.names.len().saturating_sub(1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.names.get(k).map_or(0, Vec::len)
    }

    pub fn names(&self, k: usize) -> &[String] {
        self.names.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn name(&self, f: Face) -> &str {
        &self.names[f.dim][f.idx]
    }

    pub fn face(&self, name: &str) -> Option<Face> {
        self.index.get(name).copied()
    }

    pub fn face_id(&self, name: &str) -> Result<Face> {
        self.face(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.names
            .iter()
            .enumerate()
            .flat_map(|(k, l)| (0..l.len()).map(move |i| Face::new(k, i)))
    }

    pub fn face_count(&self) -> usize {
        self.names.iter().map(Vec::len).sum()
    }

    pub fn gamma(&self, f: Face) -> Option<Face> {
        (f.dim > 0).then(|| Face::new(f.dim - 1, self.gamma[f.dim - 1][f.idx]))
    }

    /// Indices of `δ(f)` in dimension `f.dim - 1` (empty for points).
    pub fn delta_idx(&self, f: Face) -> &[usize] {
        if f.dim == 0 {
            &[]
        } else {
            &self.delta[f.dim - 1][f.idx]
        }
    }

    pub fn delta(&self, f: Face) -> Vec<Face> {
        self.delta_idx(f)
            .iter()
            .map(|&i| Face::new(f.dim - 1, i))
            .collect()
    }

    pub fn gamma_idx(&self, k: usize, a: usize) -> usize {
        self.gamma[k][a]
    }

    /// `a <⁺ b` for faces of dimension `k`.
    pub fn upper_lt(&self, k: usize, a: usize, b: usize) -> bool {
        self.upper[k][a][b]
    }

    /// `a <⁻ b` for faces of dimension `k`.
    pub fn lower_lt(&self, k: usize, a: usize, b: usize) -> bool {
        self.lower[k][a][b]
    }

    pub fn upper_le(&self, k: usize, a: usize, b: usize) -> bool {
        a == b || self.upper[k][a][b]
    }

    pub fn order(&self, k: usize, kind: OrderKind) -> Result<OrderRelation> {
        if k >= self.dims() {
            return Err(Error::Malformed(format!("dimension {k} out of range")));
        }
        let rel = match kind {
            OrderKind::Lower => &self.lower[k],
            OrderKind::Upper => &self.upper[k],
        };
        let mut pairs = Vec::new();
        for (a, row) in rel.iter().enumerate() {
            for (b, &yes) in row.iter().enumerate() {
                if yes {
                    pairs.push((self.names[k][a].clone(), self.names[k][b].clone()));
                }
            }
        }
        pairs.sort();
        Ok(OrderRelation {
            dim: k,
            kind,
            pairs,
        })
    }

    /// `γ^(k)(f)`: `f` itself when `dim f ≤ k`, otherwise iterated codomain.
    pub fn gamma_iter(&self, f: Face, k: usize) -> Face {
        let mut f = f;
        while f.dim > k {
            f = self.gamma(f).expect("positive dimension");
        }
        f
    }

    /// `S_k − γ(S_{k+1})`, as sorted indices.
    pub fn non_codomain(&self, k: usize) -> Vec<usize> {
        let mut hit = vec![false; self.count(k)];
        if k + 1 < self.dims() {
            for &g in &self.gamma[k] {
                hit[g] = true;
            }
        }
        (0..hit.len()).filter(|&i| !hit[i]).collect()
    }

    /// `S_k − δ(S_{k+1})`, as sorted indices.
    pub fn non_domain(&self, k: usize) -> Vec<usize> {
        let mut hit = vec![false; self.count(k)];
        if k + 1 < self.dims() {
            for d in &self.delta[k] {
                for &x in d {
                    hit[x] = true;
                }
            }
        }
        (0..hit.len()).filter(|&i| !hit[i]).collect()
    }

    pub fn size(&self) -> Vec<usize> {
        (0..self.dims()).map(|k| self.non_domain(k).len()).collect()
    }

    /// `ι` of a set of faces of dimension `k ≥ 2`, as indices in dimension `k − 2`.
    pub fn iota(&self, k: usize, faces: &[usize], reading: IotaReading) -> BTreeSet<usize> {
        let gd_dd = |set: &[usize]| {
            let mut gd = BTreeSet::new();
            let mut dd = BTreeSet::new();
            for &a in set {
                for &x in &self.delta[k - 1][a] {
                    gd.insert(self.gamma[k - 2][x]);
                    dd.extend(self.delta[k - 2][x].iter().copied());
                }
            }
            gd.intersection(&dd).copied().collect::<BTreeSet<usize>>()
        };
        match reading {
            IotaReading::FaceWise => faces.iter().flat_map(|&a| gd_dd(&[a])).collect(),
            IotaReading::SetLevel => gd_dd(faces),
        }
    }

    /// `ι(S)` in dimension `k`: internal faces of all `(k+2)`-faces.
    pub fn iota_all(&self, k: usize, reading: IotaReading) -> BTreeSet<usize> {
        if k + 2 >= self.dims() {
            return BTreeSet::new();
        }
        let all: Vec<usize> = (0..self.count(k + 2)).collect();
        self.iota(k + 2, &all, reading)
    }

    pub fn classify(&self) -> Classification {
        let mut failures = Vec::new();
        let mut fail = |code: &str, message: String| {
            failures.push(Diagnostic {
                code: code.into(),
                message,
            })
        };
        if self.count(0) == 0 {
            fail("nonempty", "no 0-faces".into());
        }
        for k in 2..self.dims() {
            for a in 0..self.count(k) {
                let f = Face::new(k, a);
                let mut gd = BTreeSet::new();
                let mut dd = BTreeSet::new();
                for &x in &self.delta[k - 1][a] {
                    gd.insert(self.gamma[k - 2][x]);
                    dd.extend(self.delta[k - 2][x].iter().copied());
                }
                let gg: BTreeSet<usize> = [self.gamma[k - 2][self.gamma[k - 1][a]]].into();
                let dg: BTreeSet<usize> = self.delta[k - 2][self.gamma[k - 1][a]]
                    .iter()
                    .copied()
                    .collect();
                if gg != gd.difference(&dd).copied().collect() {
                    fail("globularity", format!("γγ({}) ≠ γδ − δδ", self.name(f)));
                }
                if dg != dd.difference(&gd).copied().collect() {
                    fail("globularity", format!("δγ({}) ≠ δδ − γδ", self.name(f)));
                }
            }
        }
        for k in 0..self.dims() {
            for a in 0..self.count(k) {
                if self.upper[k][a][a] {
                    fail(
                        "strictness",
                        format!("{} <⁺ {} (cycle)", self.names[k][a], self.names[k][a]),
                    );
                }
            }
        }
        for a in 0..self.count(0) {
            for b in a + 1..self.count(0) {
                if !self.upper[0][a][b] && !self.upper[0][b][a] {
                    fail(
                        "strictness",
                        format!(
                            "0-faces {} and {} are <⁺-incomparable",
                            self.names[0][a], self.names[0][b]
                        ),
                    );
                }
            }
        }
        for k in 1..self.dims() {
            let n = self.count(k);
            for a in 0..n {
                for b in a..n {
                    let minus = self.lower[k][a][b] || self.lower[k][b][a];
                    let plus = self.upper[k][a][b] || self.upper[k][b][a];
                    if minus && plus {
                        fail(
                            "disjointness",
                            format!(
                                "{} and {} are both ⊥⁻ and ⊥⁺",
                                self.names[k][a], self.names[k][b]
                            ),
                        );
                    }
                }
            }
            for x in 0..self.count(k - 1) {
                let by_gamma: Vec<usize> = (0..n).filter(|&a| self.gamma[k - 1][a] == x).collect();
                let by_delta: Vec<usize> = (0..n)
                    .filter(|&a| self.delta[k - 1][a].contains(&x))
                    .collect();
                for (label, pencil) in [("γ", by_gamma), ("δ", by_delta)] {
                    for (i, &a) in pencil.iter().enumerate() {
                        for &b in &pencil[i + 1..] {
                            if !self.upper[k][a][b] && !self.upper[k][b][a] {
                                fail(
                                    "pencil",
                                    format!(
                                        "{label}-pencil of {}: {} and {} are <⁺-incomparable",
                                        self.names[k - 1][x],
                                        self.names[k][a],
                                        self.names[k][b]
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
        let size = self.size();
        let class = if !failures.is_empty() {
            HypergraphClass::Hypergraph
        } else if size.iter().all(|&s| s <= 1) {
            HypergraphClass::Opetope
        } else {
            HypergraphClass::Cardinal
        };
        Classification {
            class,
            failures,
            size,
        }
    }

    /// An upper path from `a` to `b` through `(n+1)`-faces outside `γ(S_{n+2})`:
    /// `a, a_0, …, a_m, b` with `a ∈ δ(a_0)`, `γ(a_{i-1}) ∈ δ(a_i)`, `γ(a_m) = b`.
    pub fn find_upper_path(&self, a: Face, b: Face) -> Option<Vec<Face>> {
        if a.dim != b.dim || a == b || a.dim + 1 >= self.dims() {
            return None;
        }
        let n = a.dim;
        let allowed = self.non_codomain(n + 1);
        let mut prev: HashMap<usize, Option<usize>> = HashMap::new();
        let mut queue = VecDeque::new();
        for &f in &allowed {
            if self.delta[n][f].contains(&a.idx) {
                prev.insert(f, None);
                queue.push_back(f);
            }
        }
        while let Some(f) = queue.pop_front() {
            let g = self.gamma[n][f];
            if g == b.idx {
                let mut path = vec![Face::new(n + 1, f)];
                let mut cur = f;
                while let Some(Some(p)) = prev.get(&cur) {
                    path.push(Face::new(n + 1, *p));
                    cur = *p;
                }
                path.reverse();
                path.insert(0, a);
                path.push(b);
                return Some(path);
            }
            for &next in &allowed {
                if !prev.contains_key(&next) && self.delta[n][next].contains(&g) {
                    prev.insert(next, Some(f));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// All maximal lower paths of `n`-faces, `n ≥ 1`.
    pub fn maximal_lower_paths(&self, n: usize) -> Vec<Vec<usize>> {
        if n == 0 || n >= self.dims() {
            return Vec::new();
        }
        let next = |a: usize| -> Vec<usize> {
            (0..self.count(n))
                .filter(|&b| self.delta[n - 1][b].contains(&self.gamma[n - 1][a]))
                .collect()
        };
        let starts: Vec<usize> = (0..self.count(n))
            .filter(|&a| {
                !(0..self.count(n)).any(|x| self.delta[n - 1][a].contains(&self.gamma[n - 1][x]))
            })
            .collect();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = starts.into_iter().map(|s| vec![s]).collect();
        while let Some(path) = stack.pop() {
            let last = *path.last().expect("nonempty path");
            let succ: Vec<usize> = next(last)
                .into_iter()
                .filter(|b| !path.contains(b))
                .collect();
            if succ.is_empty() {
                out.push(path);
            } else {
                for b in succ {
                    let mut p = path.clone();
                    p.push(b);
                    stack.push(p);
                }
            }
        }
        out.sort();
        out
    }

    /// Checks the Path Lemma for a maximal lower path, a face `b` and an index `s`.
    pub fn check_path_lemma(
        &self,
        path: &[Face],
        b: Face,
        s: usize,
        reading: IotaReading,
    ) -> Result<PathLemmaOutcome> {
        let pre = |m: &str| Err(Error::Malformed(format!("path lemma precondition: {m}")));
        let Some(first) = path.first() else {
            return pre("empty path");
        };
        let n = first.dim;
        if n == 0 || path.iter().any(|f| f.dim != n) || b.dim != n || n >= self.dims() {
            return pre("faces must share a positive dimension");
        }
        let g = |f: Face| self.gamma[n - 1][f.idx];
        let d = |f: Face| &self.delta[n - 1][f.idx];
        if path.windows(2).any(|w| !d(w[1]).contains(&g(w[0]))) {
            return pre("not a lower path");
        }
        let extendable_before =
            (0..self.count(n)).any(|x| d(path[0]).contains(&self.gamma[n - 1][x]));
        let extendable_after =
            (0..self.count(n)).any(|x| self.delta[n - 1][x].contains(&g(path[path.len() - 1])));
        if extendable_before || extendable_after {
            return pre("lower path is not maximal");
        }
        if s >= path.len() {
            return pre("index out of range");
        }
        if !self.upper[n][path[s].idx][b.idx] {
            return pre("a_s <⁺ b fails");
        }
        let below = |i: usize| self.upper[n][path[i].idx][b.idx];
        let item1 = |l: usize, p: usize| (l..=p).all(below);
        let item2 = |p: usize| g(path[p]) == g(b);
        let item3 = |l: usize| {
            if l == 0 {
                d(path[0]).iter().all(|x| d(b).contains(x))
            } else {
                d(b).contains(&g(path[l - 1]))
            }
        };
        let iota = self.iota_all(n - 1, reading);
        let item4 = |l: usize, p: usize| (l..p).all(|i| iota.contains(&g(path[i])));
        for l in 0..=s {
            for p in (s..path.len()).rev() {
                if item1(l, p) && item2(p) && item3(l) {
                    return Ok(PathLemmaOutcome {
                        l,
                        p,
                        items: [true, true, true, item4(l, p)],
                    });
                }
            }
        }
        let mut l = s;
        while l > 0 && below(l - 1) {
            l -= 1;
        }
        let mut p = s;
        while p + 1 < path.len() && below(p + 1) {
            p += 1;
        }
        Ok(PathLemmaOutcome {
            l,
            p,
            items: [item1(l, p), item2(p), item3(l), item4(l, p)],
        })
    }

    /// The least sub-hypergraph containing `f`.
    pub fn principal(&self, f: Face) -> FaceSet {
        let mut out = FaceSet::new();
        let mut stack = vec![f];
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                if let Some(g) = self.gamma(x) {
                    stack.push(g);
                }
                stack.extend(self.delta(x));
            }
        }
        out
    }

    pub fn is_closed(&self, set: &FaceSet) -> bool {
        set.iter().all(|&x| {
            self.gamma(x).is_none_or(|g| set.contains(&g))
                && self.delta(x).iter().all(|y| set.contains(y))
        })
    }

    /// The sub-hypergraph on a γ/δ-closed face set, with its inclusion.
    pub fn sub(&self, set: &FaceSet) -> Result<(PositiveHypergraph, FaceMap)> {
        if !self.is_closed(set) {
            return Err(Error::Malformed(
                "face set is not closed under γ and δ".into(),
            ));
        }
        let dims = set.iter().map(|f| f.dim + 1).max().unwrap_or(0);
        let mut keep: Vec<Vec<usize>> = vec![Vec::new(); dims];
        for f in set {
            keep[f.dim].push(f.idx);
        }
        let mut new_idx: Vec<HashMap<usize, usize>> = vec![HashMap::new(); dims];
        for k in 0..dims {
            for (i, &old) in keep[k].iter().enumerate() {
                new_idx[k].insert(old, i);
            }
        }
        let names: Vec<Vec<String>> = keep
            .iter()
            .enumerate()
            .map(|(k, v)| v.iter().map(|&i| self.names[k][i].clone()).collect())
            .collect();
        let mut gamma = Vec::new();
        let mut delta = Vec::new();
        for k in 1..dims {
            gamma.push(
                keep[k]
                    .iter()
                    .map(|&a| new_idx[k - 1][&self.gamma[k - 1][a]])
                    .collect(),
            );
            delta.push(
                keep[k]
                    .iter()
                    .map(|&a| {
                        self.delta[k - 1][a]
                            .iter()
                            .map(|x| new_idx[k - 1][x])
                            .collect()
                    })
                    .collect(),
            );
        }
        let sub = PositiveHypergraph::new(names, gamma, delta)?;
        let inclusion = FaceMap {
            source: sub.clone(),
            target: self.clone(),
            maps: keep,
        };
        Ok((sub, inclusion))
    }

    /// Per-dimension name lists, plus `γ` and `δ` by name (used by serialization).
    pub fn gamma_by_name(&self) -> Vec<(String, String)> {
        self.faces()
            .filter_map(|f| {
                self.gamma(f)
                    .map(|g| (self.name(f).to_string(), self.name(g).to_string()))
            })
            .collect()
    }

    pub fn delta_by_name(&self) -> Vec<(String, Vec<String>)> {
        self.faces()
            .filter(|f| f.dim > 0)
            .map(|f| {
                (
                    self.name(f).to_string(),
                    self.delta(f)
                        .iter()
                        .map(|&x| self.name(x).to_string())
                        .collect(),
                )
            })
            .collect()
    }

    /// Structural equality up to index order is not attempted; this compares
    /// names, γ and δ positionally.
    fn key(&self) -> (&Vec<Vec<String>>, &Vec<Vec<usize>>, &Vec<Vec<Vec<usize>>>) {
        (&self.names, &self.gamma, &self.delta)
    }
}

impl PartialEq for PositiveHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for PositiveHypergraph {}

impl std::fmt::Debug for PositiveHypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = f.debug_struct("PositiveHypergraph");
        s.field("faces", &self.names);
        s.field("gamma", &self.gamma_by_name());
        s.field("delta", &self.delta_by_name());
        s.finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLemmaOutcome {
    pub l: usize,
    pub p: usize,
    /// Items 1–4; item 4 depends on the ι reading.
    pub items: [bool; 4],
}

/// Adds faces one at a time; a cell's dimension is one more than its codomain's.
#[derive(Default)]
pub struct HypergraphBuilder {
    faces: Vec<(String, Option<(String, Vec<String>)>)>,
}

impl HypergraphBuilder {
    pub fn point(mut self, name: &str) -> Self {
        self.faces.push((name.to_string(), None));
        self
    }

    pub fn points(mut self, names: &[&str]) -> Self {
        for n in names {
            self = self.point(n);
        }
        self
    }

    pub fn cell(mut self, name: &str, gamma: &str, delta: &[&str]) -> Self {
        self.faces.push((
            name.to_string(),
            Some((
                gamma.to_string(),
                delta.iter().map(|s| s.to_string()).collect(),
            )),
        ));
        self
    }

    pub fn build(self) -> Result<PositiveHypergraph> {
        let mut at: HashMap<String, Face> = HashMap::new();
        let mut names: Vec<Vec<String>> = Vec::new();
        let mut gamma: Vec<Vec<usize>> = Vec::new();
        let mut raw_delta: Vec<Vec<Vec<String>>> = Vec::new();
        for (name, boundary) in self.faces {
            let dim = match &boundary {
                None => 0,
                Some((g, _)) => {
                    at.get(g)
                        .ok_or_else(|| Error::UnknownElement(g.clone()))?
                        .dim
                        + 1
                }
            };
            while names.len() <= dim {
                names.push(Vec::new());
            }
            while gamma.len() + 1 < names.len() {
                gamma.push(Vec::new());
                raw_delta.push(Vec::new());
            }
            let f = Face::new(dim, names[dim].len());
            if at.insert(name.clone(), f).is_some() {
                return Err(Error::DuplicateElement(name));
            }
            names[dim].push(name);
            if let Some((g, d)) = boundary {
                gamma[dim - 1].push(at[&g].idx);
                raw_delta[dim - 1].push(d);
            }
        }
        let mut delta = Vec::new();
        for (k, level) in raw_delta.into_iter().enumerate() {
            let mut out = Vec::new();
            for d in level {
                let mut ids = Vec::new();
                for n in d {
                    let f = *at.get(&n).ok_or_else(|| Error::UnknownElement(n.clone()))?;
                    if f.dim != k {
                        return Err(Error::Malformed(format!(
                            "`{n}` has the wrong dimension for a domain"
                        )));
                    }
                    ids.push(f.idx);
                }
                out.push(ids);
            }
            delta.push(out);
        }
        PositiveHypergraph::new(names, gamma, delta)
    }
}

/// A dimension-preserving morphism of positive hypergraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceMap {
    pub source: PositiveHypergraph,
    pub target: PositiveHypergraph,
    /// `maps[k][a]` is the image index in `target` dimension `k`.
    pub maps: Vec<Vec<usize>>,
}

impl FaceMap {
    pub fn identity(h: &PositiveHypergraph) -> FaceMap {
        FaceMap {
            source: h.clone(),
            target: h.clone(),
            maps: (0..h.dims()).map(|k| (0..h.count(k)).collect()).collect(),
        }
    }

    pub fn from_names(
        source: PositiveHypergraph,
        target: PositiveHypergraph,
        pairs: &[(&str, &str)],
    ) -> Result<FaceMap> {
        let mut maps: Vec<Vec<Option<usize>>> = (0..source.dims())
            .map(|k| vec![None; source.count(k)])
            .collect();
        for (a, b) in pairs {
            let fa = source.face_id(a)?;
            let fb = target.face_id(b)?;
            if fa.dim != fb.dim {
                return Err(Error::Malformed(format!(
                    "`{a}` and `{b}` differ in dimension"
                )));
            }
            maps[fa.dim][fa.idx] = Some(fb.idx);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                m.into_iter()
                    .enumerate()
                    .map(|(i, x)| {
                        x.ok_or_else(|| {
                            Error::Malformed(format!("no image for `{}`", source.names[k][i]))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FaceMap {
            source,
            target,
            maps,
        })
    }

    pub fn apply(&self, f: Face) -> Face {
        Face::new(f.dim, self.maps[f.dim][f.idx])
    }
}

pub fn validate_face_map(m: &FaceMap) -> ValidationReport {
    let mut r = ValidationReport::new("face map");
    let (s, t) = (&m.source, &m.target);
    if m.maps.len() != s.dims() || s.dims() > t.dims() {
        r.fail("shape", "map does not cover every dimension of the source");
        return r;
    }
    for k in 0..s.dims() {
        if m.maps[k].len() != s.count(k) || m.maps[k].iter().any(|&x| x >= t.count(k)) {
            r.fail(
                "shape",
                format!("map in dimension {k} is not total into the target"),
            );
            return r;
        }
    }
    for f in s.faces() {
        let img = m.apply(f);
        if let Some(g) = s.gamma(f) {
            if Some(m.apply(g)) != t.gamma(img) {
                r.fail("gamma", format!("γ not preserved at {}", s.name(f)));
            }
            let mut images: Vec<usize> = s
                .delta_idx(f)
                .iter()
                .map(|&x| m.maps[f.dim - 1][x])
                .collect();
            images.sort_unstable();
            let before = images.len();
            images.dedup();
            if images.len() != before || images != t.delta_idx(img) {
                r.fail(
                    "delta",
                    format!(
                        "δ({}) is not mapped bijectively onto δ({})",
                        s.name(f),
                        t.name(img)
                    ),
                );
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn orders_on_fixtures() {
        let o2 = fixtures::o2();
        let up0 = o2.order(0, OrderKind::Upper).unwrap().pairs;
        let pairs: Vec<(&str, &str)> = up0.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        assert_eq!(pairs, vec![("t_2", "t_1"), ("t_3", "t_1"), ("t_3", "t_2")]);
        let o3 = fixtures::o3();
        let l1 = o3.non_codomain(1);
        let names: Vec<&str> = l1.iter().map(|&i| o3.name(Face::new(1, i))).collect();
        assert_eq!(names, vec!["y_1", "y_4", "y_5", "y_6"]);
        let f = |n: &str| o3.face(n).unwrap().idx;
        assert!(o3.lower_lt(1, f("y_6"), f("y_5")));
        assert!(o3.lower_lt(1, f("y_5"), f("y_4")));
        assert!(o3.lower_lt(1, f("y_4"), f("y_1")));
        let point = PositiveHypergraph::builder().point("t").build().unwrap();
        assert!(point.order(0, OrderKind::Upper).unwrap().pairs.is_empty());
    }

    #[test]
    fn classification_of_fixtures() {
        let c = fixtures::o2().classify();
        assert_eq!(c.class, HypergraphClass::Opetope);
        assert_eq!(c.size, vec![1, 1, 1]);
        let s = fixtures::scard().classify();
        assert_eq!(s.class, HypergraphClass::Cardinal, "{:?}", s.failures);
        assert_eq!(s.size[2], 3);
        let broken = PositiveHypergraph::builder()
            .points(&["t_1", "t_2", "t_3"])
            .cell("y_1", "t_1", &["t_3"])
            .cell("y_2", "t_1", &["t_2"])
            .cell("y_3", "t_2", &["t_3"])
            .cell("b", "y_1", &["y_2"])
            .build()
            .unwrap();
        let c = broken.classify();
        assert_eq!(c.class, HypergraphClass::Hypergraph);
        assert!(c.failures.iter().any(|d| d.code == "globularity"));
    }

    #[test]
    fn gamma_iteration() {
        let o3 = fixtures::o3();
        let beta = o3.face("beta").unwrap();
        assert_eq!(o3.name(o3.gamma_iter(beta, 0)), "t_0");
        assert_eq!(o3.gamma_iter(beta, 3), beta);
        let o2 = fixtures::o2();
        assert_eq!(o2.name(o2.gamma_iter(o2.face("b").unwrap(), 1)), "y_1");
    }

    #[test]
    fn upper_paths() {
        let o3 = fixtures::o3();
        let f = |n: &str| o3.face(n).unwrap();
        let path = o3.find_upper_path(f("t_4"), f("t_0")).unwrap();
        let names: Vec<&str> = path.iter().map(|&x| o3.name(x)).collect();
        assert_eq!(names, vec!["t_4", "y_6", "y_5", "y_4", "y_1", "t_0"]);
        let o2 = fixtures::o2();
        assert!(o2
            .find_upper_path(o2.face("t_1").unwrap(), o2.face("t_3").unwrap())
            .is_none());
        assert!(o2
            .find_upper_path(o2.face("t_1").unwrap(), o2.face("t_1").unwrap())
            .is_none());
    }

    #[test]
    fn path_lemma_examples() {
        let o3 = fixtures::o3();
        let f = |n: &str| o3.face(n).unwrap();
        let path = [f("y_6"), f("y_5"), f("y_4"), f("y_1")];
        let out = o3
            .check_path_lemma(&path, f("y_2"), 0, IotaReading::FaceWise)
            .unwrap();
        assert_eq!((out.l, out.p), (0, 2));
        assert_eq!(out.items, [true; 4]);
        let o2 = fixtures::o2();
        let g = |n: &str| o2.face(n).unwrap();
        let out = o2
            .check_path_lemma(&[g("y_3"), g("y_2")], g("y_1"), 0, IotaReading::FaceWise)
            .unwrap();
        assert_eq!((out.l, out.p), (0, 1));
        assert!(o2
            .check_path_lemma(&[g("y_1")], g("y_1"), 0, IotaReading::FaceWise)
            .is_err());
    }

    #[test]
    fn face_maps() {
        let o2 = fixtures::o2();
        assert!(validate_face_map(&FaceMap::identity(&o2)).passed());
        let (_, inclusion) = o2.sub(&o2.principal(o2.face("y_2").unwrap())).unwrap();
        assert!(validate_face_map(&inclusion).passed());
        let swap = FaceMap::from_names(
            o2.clone(),
            o2.clone(),
            &[
                ("t_1", "t_1"),
                ("t_2", "t_2"),
                ("t_3", "t_3"),
                ("y_1", "y_1"),
                ("y_2", "y_3"),
                ("y_3", "y_3"),
                ("b", "b"),
            ],
        )
        .unwrap();
        assert!(validate_face_map(&swap).has("gamma"));
    }
}
