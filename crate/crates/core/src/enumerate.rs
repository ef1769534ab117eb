//! Exhaustive generation up to isomorphism: rooted trees, tree and thicket
//! complexes, ι-epis between two opetopes, and complex morphisms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::complex::{validate_complex, validate_complex_morphism, Complex, ComplexMorphism};
use crate::constellation::Mode;
use crate::hypergraph::{Face, PositiveHypergraph};
use crate::iota::IotaMap;
use crate::poset::Poset;

/// Parent arrays in preorder; roots have no parent.
type Shape = Vec<Option<usize>>;

/// All rooted-tree codes up to `n` nodes, as `(size, code)` sorted by size then code.
fn tree_table(n: usize) -> Vec<(usize, String)> {
    let mut table: Vec<(usize, String)> = Vec::new();
    for size in 1..=n {
        let mut fresh: Vec<String> = multisets(&table, size - 1, table.len())
            .into_iter()
            .map(|forest| {
                format!(
                    "({})",
                    forest
                        .iter()
                        .map(|&i| table[i].1.as_str())
                        .collect::<String>()
                )
            })
            .collect();
        fresh.sort();
        table.extend(fresh.into_iter().map(|c| (size, c)));
    }
    table
}

/// Non-increasing index sequences into `table` (below `bound`) with total size `total`.
fn multisets(table: &[(usize, String)], total: usize, bound: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in (0..bound).rev() {
        let size = table[i].0;
        if size > total {
            continue;
        }
        for mut rest in multisets(table, total - size, i + 1) {
            rest.insert(0, i);
            out.push(rest);
        }
    }
    out
}

fn parse_forest(code: &str) -> Shape {
    let mut parents = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for ch in code.chars() {
        match ch {
            '(' => {
                parents.push(stack.last().copied());
                stack.push(parents.len() - 1);
            }
            _ => {
                stack.pop();
            }
        }
    }
    parents
}

fn tree_shapes(n: usize) -> Vec<Shape> {
    tree_table(n)
        .into_iter()
        .filter(|(s, _)| *s == n)
        .map(|(_, c)| parse_forest(&c))
        .collect()
}

fn forest_shapes(m: usize) -> Vec<Shape> {
    let table = tree_table(m);
    multisets(&table, m, table.len())
        .into_iter()
        .map(|f| parse_forest(&f.iter().map(|&i| table[i].1.as_str()).collect::<String>()))
        .collect()
}

fn shape_poset(shape: &Shape, names: Vec<String>) -> Poset {
    let covers = shape
        .iter()
        .enumerate()
        .filter_map(|(c, p)| p.map(|p| (c, p)))
        .collect();
    Poset::new(names, covers).expect("generated shapes are posets")
}

/// All rooted trees with `n` nodes, one per isomorphism class, named `v0, v1, …` in preorder.
pub fn enumerate_trees(n: usize) -> Vec<Poset> {
    if n == 0 {
        return Vec::new();
    }
    tree_shapes(n)
        .iter()
        .map(|s| shape_poset(s, (0..n).map(|i| format!("v{i}")).collect()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub kind: Mode,
    pub max_nodes: usize,
    pub dimension: Option<usize>,
    /// Optional per-level node caps; levels beyond the list are uncapped.
    pub level_caps: Vec<usize>,
}

impl EnumSpec {
    pub fn new(kind: Mode, max_nodes: usize) -> EnumSpec {
        EnumSpec {
            kind,
            max_nodes,
            dimension: None,
            level_caps: Vec::new(),
        }
    }

    pub fn with_dimension(mut self, d: usize) -> EnumSpec {
        self.dimension = Some(d);
        self
    }

    fn cap(&self, level: usize) -> usize {
        self.level_caps.get(level).copied().unwrap_or(usize::MAX)
    }
}

/// Every constellation `σ : upper → St(lower)` on a fixed upper shape.
fn sigmas(lower: &Poset, upper: &Shape, kind: Mode) -> Vec<Vec<Vec<usize>>> {
    let subtrees: Vec<u64> = lower
        .convex_subtrees()
        .expect("lower levels are thickets")
        .into_iter()
        .map(|t| t.carrier.iter().fold(0u64, |acc, &x| acc | 1 << x))
        .collect();
    let full: u64 = (0..lower.len()).fold(0, |acc, x| acc | 1 << x);
    let mut out = Vec::new();
    let mut assign = vec![0u64; upper.len()];

    fn go(
        u: usize,
        upper: &Shape,
        subtrees: &[u64],
        full: u64,
        kind: Mode,
        assign: &mut Vec<u64>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if u == upper.len() {
            out.push(
                assign
                    .iter()
                    .map(|&m| (0..64).filter(|&b| m >> b & 1 == 1).collect())
                    .collect(),
            );
            return;
        }
        let siblings: u64 = (0..u)
            .filter(|&v| upper[v] == upper[u])
            .fold(0, |acc, v| acc | assign[v]);
        for &t in subtrees {
            let fits = match upper[u] {
                Some(p) => t & !assign[p] == 0,
                None if kind == Mode::Tree => t == full,
                None => true,
            };
            if fits && t & siblings == 0 {
                assign[u] = t;
                go(u + 1, upper, subtrees, full, kind, assign, out);
            }
        }
    }

    go(0, upper, &subtrees, full, kind, &mut assign, &mut out);
    out
}

/// Every valid complex within the bounds, once per isomorphism class, ordered
/// by dimension, node count and canonical code, with nodes named `n{level}_{index}`.
pub fn enumerate_complexes(spec: &EnumSpec) -> Vec<Complex> {
    if spec.max_nodes == 0 {
        return Vec::new();
    }
    let point = Complex::point(spec.kind, "n0_0").expect("point complex");
    let mut frontier: Vec<Complex> = vec![point];
    let mut results: Vec<(usize, usize, CanonicalCode, Complex)> = Vec::new();
    while !frontier.is_empty() {
        let mut next: BTreeMap<CanonicalCode, Complex> = BTreeMap::new();
        for p in &frontier {
            let top = p.level(p.dimension());
            let emit = spec.kind == Mode::Thicket || top.len() == 1;
            if emit && spec.dimension.is_none_or(|d| d == p.dimension()) {
                results.push((p.dimension(), p.node_count(), canonical_code(p), p.clone()));
            }
            if spec.dimension.is_some_and(|d| p.dimension() >= d) {
                continue;
            }
            let budget = spec.max_nodes - p.node_count();
            let level = p.dimension() + 1;
            for m in 1..=budget.min(spec.cap(level)) {
                let shapes = match spec.kind {
                    Mode::Tree => tree_shapes(m),
                    Mode::Thicket => forest_shapes(m),
                };
                for shape in &shapes {
                    for sigma in sigmas(top, shape, spec.kind) {
                        let names = (0..m).map(|j| format!("n{level}_{j}")).collect();
                        let mut levels = p.levels().to_vec();
                        levels.push(shape_poset(shape, names));
                        let mut sig = p.sigmas().to_vec();
                        sig.push(sigma);
                        let x = Complex::new(spec.kind, levels, sig).expect("generated complex");
                        let (code, canon) = canonical_form(&x);
                        next.entry(code).or_insert(canon);
                    }
                }
            }
        }
        frontier = next.into_values().collect();
    }
    results.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    results
        .into_iter()
        .map(|r| r.3)
        .filter(|x| validate_complex(x).passed())
        .collect()
}

/// Identifies a complex up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub String);

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The complex flattened into one node set with its three relations.
struct Flat {
    level: Vec<usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    members: Vec<Vec<usize>>,
    holders: Vec<Vec<usize>>,
}

impl Flat {
    fn new(x: &Complex) -> (Flat, Vec<usize>) {
        let mut offsets = vec![0];
        for l in x.levels() {
            offsets.push(offsets.last().unwrap() + l.len());
        }
        let n = *offsets.last().unwrap();
        let mut f = Flat {
            level: vec![0; n],
            parents: vec![Vec::new(); n],
            children: vec![Vec::new(); n],
            members: vec![Vec::new(); n],
            holders: vec![Vec::new(); n],
        };
        for (i, l) in x.levels().iter().enumerate() {
            for u in 0..l.len() {
                f.level[offsets[i] + u] = i;
            }
            for &(c, p) in l.covers() {
                f.parents[offsets[i] + c].push(offsets[i] + p);
                f.children[offsets[i] + p].push(offsets[i] + c);
            }
        }
        for (i, s) in x.sigmas().iter().enumerate() {
            for (u, ms) in s.iter().enumerate() {
                for &m in ms {
                    f.members[offsets[i + 1] + u].push(offsets[i] + m);
                    f.holders[offsets[i] + m].push(offsets[i + 1] + u);
                }
            }
        }
        (f, offsets)
    }

    fn refine(&self, colors: &mut [usize]) {
        let mut classes = distinct(colors);
        loop {
            let sigs: Vec<Vec<usize>> = (0..colors.len())
                .map(|v| {
                    let mut s = vec![colors[v]];
                    for rel in [&self.parents, &self.children, &self.members, &self.holders] {
                        let mut cs: Vec<usize> = rel[v].iter().map(|&w| colors[w]).collect();
                        cs.sort_unstable();
                        s.push(usize::MAX);
                        s.extend(cs);
                    }
                    s
                })
                .collect();
            let mut sorted = sigs.clone();
            sorted.sort();
            sorted.dedup();
            for v in 0..colors.len() {
                colors[v] = sorted.binary_search(&sigs[v]).expect("present");
            }
            let now = sorted.len();
            if now == classes {
                break;
            }
            classes = now;
        }
    }

    /// Serialization under the node order given by a discrete coloring.
    fn serialize(&self, kind: Mode, colors: &[usize]) -> (String, Vec<usize>) {
        let mut order: Vec<usize> = (0..colors.len()).collect();
        order.sort_by_key(|&v| colors[v]);
        let mut local = vec![0; colors.len()];
        let mut counts: Vec<usize> = Vec::new();
        for &v in &order {
            let l = self.level[v];
            if counts.len() <= l {
                counts.resize(l + 1, 0);
            }
            local[v] = counts[l];
            counts[l] += 1;
        }
        let mut s = format!("{}", if kind == Mode::Tree { 'T' } else { 'H' });
        for (l, &count) in counts.iter().enumerate() {
            s.push_str(&format!("|{count}:"));
            for &v in order.iter().filter(|&&v| self.level[v] == l) {
                let mut ps: Vec<usize> = self.parents[v].iter().map(|&w| local[w]).collect();
                ps.sort_unstable();
                let mut ms: Vec<usize> = self.members[v].iter().map(|&w| local[w]).collect();
                ms.sort_unstable();
                s.push_str(&format!("{ps:?}{ms:?}"));
            }
        }
        (s, order)
    }

    fn search(&self, kind: Mode, mut colors: Vec<usize>, best: &mut Option<(String, Vec<usize>)>) {
        self.refine(&mut colors);
        let mut size: HashMap<usize, usize> = HashMap::new();
        for &c in &colors {
            *size.entry(c).or_insert(0) += 1;
        }
        let target = size.iter().filter(|(_, &n)| n > 1).map(|(&c, _)| c).min();
        match target {
            None => {
                let cand = self.serialize(kind, &colors);
                if best.as_ref().is_none_or(|b| cand.0 < b.0) {
                    *best = Some(cand);
                }
            }
            Some(c) => {
                for v in (0..colors.len()).filter(|&v| colors[v] == c) {
                    let mut next: Vec<usize> = colors.iter().map(|&x| 2 * x + 1).collect();
                    next[v] = 2 * c;
                    self.search(kind, next, best);
                }
            }
        }
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Canonical code and the complex rebuilt in canonical node order with names
/// `n{level}_{index}`.
pub fn canonical_form(x: &Complex) -> (CanonicalCode, Complex) {
    let (flat, offsets) = Flat::new(x);
    let mut best = None;
    flat.search(x.kind(), flat.level.clone(), &mut best);
    let (code, order) = best.expect("search reaches a discrete coloring");
    let mut rank = vec![0; order.len()];
    let mut per_level: Vec<Vec<usize>> = vec![Vec::new(); x.levels().len()];
    for &v in &order {
        let l = flat.level[v];
        rank[v] = per_level[l].len();
        per_level[l].push(v - offsets[l]);
    }
    let levels: Vec<Poset> = x
        .levels()
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let names = (0..l.len()).map(|j| format!("n{i}_{j}")).collect();
            let covers = l
                .covers()
                .iter()
                .map(|&(c, p)| (rank[offsets[i] + c], rank[offsets[i] + p]))
                .collect();
            Poset::new(names, covers).expect("permuted level")
        })
        .collect();
    let sigmas: Vec<Vec<Vec<usize>>> = x
        .sigmas()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut out = vec![Vec::new(); s.len()];
            for (u, ms) in s.iter().enumerate() {
                out[rank[offsets[i + 1] + u]] = ms.iter().map(|&m| rank[offsets[i] + m]).collect();
            }
            out
        })
        .collect();
    let canon = Complex::new(x.kind(), levels, sigmas).expect("permuted complex");
    (CanonicalCode(code), canon)
}

pub fn canonical_code(x: &Complex) -> CanonicalCode {
    canonical_form(x).0
}

/// Post-order of the face DAG, so every face follows its γ and δ.
fn boundary_first_order(h: &PositiveHypergraph) -> Vec<Face> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    fn visit(
        h: &PositiveHypergraph,
        f: Face,
        seen: &mut std::collections::HashSet<Face>,
        out: &mut Vec<Face>,
    ) {
        if !seen.insert(f) {
            return;
        }
        if let Some(g) = h.gamma(f) {
            visit(h, g, seen, out);
        }
        for d in h.delta(f) {
            visit(h, d, seen, out);
        }
        out.push(f);
    }
    let mut all: Vec<Face> = h.faces().collect();
    all.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.idx.cmp(&b.idx)));
    for f in all {
        visit(h, f, &mut seen, &mut out);
    }
    out
}

/// All ι-epis `p → q`, in lexicographic order of their assignments.
pub fn enumerate_iota_epis(p: &PositiveHypergraph, q: &PositiveHypergraph) -> Vec<IotaMap> {
    if q.dims() > p.dims() || q.dims() == 0 {
        return Vec::new();
    }
    let order = boundary_first_order(p);
    let mut assign: Vec<Vec<Option<Face>>> =
        (0..p.dims()).map(|k| vec![None; p.count(k)]).collect();
    let mut out = Vec::new();

    struct Ctx<'a> {
        p: &'a PositiveHypergraph,
        q: &'a PositiveHypergraph,
        order: &'a [Face],
    }

    fn candidates(c: &Ctx<'_>, assign: &[Vec<Option<Face>>], x: Face) -> Vec<Face> {
        let Some(g) = c.p.gamma(x) else {
            return (0..c.q.count(0)).map(|i| Face::new(0, i)).collect();
        };
        let hg = assign[g.dim][g.idx].expect("boundary first");
        let mut out: Vec<Face> = Vec::new();
        if hg.dim + 1 == x.dim && x.dim < c.q.dims() {
            out.extend(
                (0..c.q.count(x.dim))
                    .map(|i| Face::new(x.dim, i))
                    .filter(|&f| c.q.gamma(f) == Some(hg)),
            );
        }
        out.push(hg);
        out.retain(|&img| {
            let mut images: Vec<Face> =
                c.p.delta(x)
                    .into_iter()
                    .filter_map(|y| {
                        let hy = assign[y.dim][y.idx].expect("boundary first");
                        (hy.dim == y.dim).then_some(hy)
                    })
                    .collect();
            images.sort();
            let n = images.len();
            images.dedup();
            if img.dim == x.dim {
                images.len() == n && images == c.q.delta(img)
            } else if img.dim + 1 == x.dim {
                images == [img]
            } else {
                images.is_empty()
            }
        });
        out
    }

    fn go(c: &Ctx<'_>, pos: usize, assign: &mut Vec<Vec<Option<Face>>>, out: &mut Vec<IotaMap>) {
        let Some(&x) = c.order.get(pos) else {
            let maps: Vec<Vec<Face>> = assign
                .iter()
                .map(|l| l.iter().map(|f| f.expect("total")).collect())
                .collect();
            let m = IotaMap {
                source: c.p.clone(),
                target: c.q.clone(),
                maps,
            };
            if m.is_epi() {
                out.push(m);
            }
            return;
        };
        for img in candidates(c, assign, x) {
            assign[x.dim][x.idx] = Some(img);
            go(c, pos + 1, assign, out);
        }
        assign[x.dim][x.idx] = None;
    }

    let ctx = Ctx {
        p,
        q,
        order: &order,
    };
    go(&ctx, 0, &mut assign, &mut out);
    out.sort_by(|a, b| a.maps.cmp(&b.maps));
    out
}

/// All complex morphisms `s → t` (level-wise embeddings passing the
/// constellation-morphism checks).
pub fn enumerate_complex_morphisms(s: &Complex, t: &Complex) -> Vec<ComplexMorphism> {
    if s.dimension() > t.dimension() {
        return Vec::new();
    }
    let per_level: Vec<Vec<Vec<usize>>> = (0..=s.dimension())
        .map(|i| order_embeddings(s.level(i), t.level(i)))
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();

    fn go(
        i: usize,
        s: &Complex,
        t: &Complex,
        per_level: &[Vec<Vec<usize>>],
        current: &mut Vec<Vec<usize>>,
        out: &mut Vec<ComplexMorphism>,
    ) {
        if i == per_level.len() {
            let m =
                ComplexMorphism::new(s.clone(), t.clone(), current.clone()).expect("total maps");
            if validate_complex_morphism(&m).passed() {
                out.push(m);
            }
            return;
        }
        for e in &per_level[i] {
            current.push(e.clone());
            go(i + 1, s, t, per_level, current, out);
            current.pop();
        }
    }

    go(0, s, t, &per_level, &mut current, &mut out);
    out
}

/// Injective maps that preserve and reflect the order.
fn order_embeddings(a: &Poset, b: &Poset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn go(a: &Poset, b: &Poset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let x = cur.len();
        if x == a.len() {
            out.push(cur.clone());
            return;
        }
        for y in 0..b.len() {
            if cur.contains(&y) {
                continue;
            }
            let ok = (0..x).all(|w| a.le(w, x) == b.le(cur[w], y) && a.le(x, w) == b.le(y, cur[w]));
            if ok {
                cur.push(y);
                go(a, b, cur, out);
                cur.pop();
            }
        }
    }
    go(a, b, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complexes_isomorphic;
    use crate::fixtures;
    use crate::iota::analyze_iota_map;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48]);
        assert!(enumerate_trees(3).iter().all(|t| t.classify().is_tree()));
    }

    #[test]
    fn small_complex_counts() {
        let dim0 = enumerate_complexes(&EnumSpec::new(Mode::Tree, 5).with_dimension(0));
        assert_eq!(dim0.len(), 1);
        let dim1 = enumerate_complexes(&EnumSpec::new(Mode::Tree, 6).with_dimension(1));
        assert_eq!(dim1.len(), 1);
        for n in 1..=4 {
            let spec = EnumSpec {
                kind: Mode::Tree,
                max_nodes: n + 2,
                dimension: Some(2),
                level_caps: vec![1, n, 1],
            };
            let fixed: Vec<Complex> = enumerate_complexes(&spec)
                .into_iter()
                .filter(|x| x.level(1).len() == n)
                .collect();
            assert_eq!(fixed.len(), 1, "|L1| = {n}");
            assert!(fixed[0].level(1).classify().is_tree());
        }
    }

    #[test]
    fn canonical_codes_respect_renaming() {
        let t3 = fixtures::t3();
        let renamed = t3.renamed(|i, j, _| format!("z{i}x{j}")).unwrap();
        assert_eq!(canonical_code(&t3), canonical_code(&renamed));
        assert_ne!(canonical_code(&fixtures::t2()), canonical_code(&t3));
        let (_, canon) = canonical_form(&t3);
        assert!(complexes_isomorphic(&t3, &canon).is_some());
        assert_eq!(canonical_form(&canon).1, canon);
        assert!(validate_complex(&canon).passed());
    }

    #[test]
    fn iota_epi_search() {
        let epis = enumerate_iota_epis(&fixtures::o3(), &fixtures::o2());
        assert!(epis.contains(&fixtures::f32()));
        assert!(epis.iter().all(|m| {
            let a = analyze_iota_map(m);
            a.report.passed() && a.epi
        }));
        let o2 = fixtures::o2();
        assert!(enumerate_iota_epis(&o2, &o2).contains(&IotaMap::identity(&o2)));
        assert!(enumerate_iota_epis(&o2, &fixtures::o3()).is_empty());
    }

    #[test]
    fn complex_morphism_search() {
        let ms = enumerate_complex_morphisms(&fixtures::t2(), &fixtures::t3());
        assert!(ms.contains(&fixtures::f32_star()));
    }
}
