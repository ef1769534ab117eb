//! Constellations `σ : S₁ → St(S₀)`, the constellation order `S₁ ◁ S₀`
//! and constellation morphisms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::report::ValidationReport;

/// Name suffix of a vertex `s•` in a constellation order.
pub const VERTEX_SUFFIX: &str = "~v";
/// Name suffix of a circle `s°` in a constellation order.
pub const CIRCLE_SUFFIX: &str = "~c";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Tree,
    Thicket,
}

/// Borrowed `(lower, upper, σ)`; σ values are sorted index lists into `lower`.
#[derive(Clone, Copy, Debug)]
pub struct ConstellationView<'a> {
    pub lower: &'a Poset,
    pub upper: &'a Poset,
    pub sigma: &'a [Vec<usize>],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constellation {
    pub lower: Poset,
    pub upper: Poset,
    pub sigma: Vec<Vec<usize>>,
    pub mode: Mode,
}

pub(crate) fn normalize_sigma(
    lower: &Poset,
    upper: &Poset,
    sigma: Vec<Vec<usize>>,
) -> Result<Vec<Vec<usize>>> {
    if sigma.len() != upper.len() {
        return Err(Error::Malformed(format!(
            "constellation assigns {} values to {} upper elements",
            sigma.len(),
            upper.len()
        )));
    }
    sigma
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            v.dedup();
            if let Some(&bad) = v.iter().find(|&&x| x >= lower.len()) {
                return Err(Error::Malformed(format!(
                    "constellation member {bad} out of range"
                )));
            }
            Ok(v)
        })
        .collect()
}

impl Constellation {
    pub fn new(lower: Poset, upper: Poset, sigma: Vec<Vec<usize>>, mode: Mode) -> Result<Self> {
        let sigma = normalize_sigma(&lower, &upper, sigma)?;
        Ok(Constellation {
            lower,
            upper,
            sigma,
            mode,
        })
    }

    pub fn from_names(
        lower: Poset,
        upper: Poset,
        sigma: &[(&str, &[&str])],
        mode: Mode,
    ) -> Result<Self> {
        let mut values = vec![None; upper.len()];
        for (s, members) in sigma {
            let ids = members
                .iter()
                .map(|m| lower.id(m))
                .collect::<Result<Vec<_>>>()?;
            values[upper.id(s)?] = Some(ids);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::Malformed(format!("no value for `{}`", upper.name(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        Constellation::new(lower, upper, values, mode)
    }

    pub fn view(&self) -> ConstellationView<'_> {
        ConstellationView {
            lower: &self.lower,
            upper: &self.upper,
            sigma: &self.sigma,
        }
    }
}

fn names(p: &Poset, ids: &[usize]) -> String {
    format!("{{{}}}", p.sorted_names(ids).join(", "))
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.binary_search(x).is_ok())
}

fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

pub fn validate_constellation(c: &Constellation) -> ValidationReport {
    validate_view(c.view(), c.mode)
}

pub fn validate_view(c: ConstellationView<'_>, mode: Mode) -> ValidationReport {
    let mut r = ValidationReport::new("constellation");
    let (lower, upper, sigma) = (c.lower, c.upper, c.sigma);
    for (label, p) in [("lower", lower), ("upper", upper)] {
        let class = p.classify();
        let ok = match mode {
            Mode::Tree => class.is_tree(),
            Mode::Thicket => class.is_thicket(),
        };
        if !ok {
            let detail: Vec<String> = p
                .class_diagnostics()
                .into_iter()
                .map(|d| d.message)
                .collect();
            r.fail(
                &format!("{label}-class"),
                format!("{label} level is not a {mode:?}: {}", detail.join("; ")),
            );
        }
    }
    for s in 0..upper.len() {
        if sigma[s].is_empty() || lower.convex_root(&sigma[s]).is_none() {
            r.fail(
                "not-convex",
                format!(
                    "σ({}) = {} is not a convex subtree",
                    upper.name(s),
                    names(lower, &sigma[s])
                ),
            );
        }
    }
    for s in 0..upper.len() {
        for t in 0..upper.len() {
            if s != t && upper.le(s, t) && !subset(&sigma[s], &sigma[t]) {
                r.fail(
                    "non-monotone",
                    format!(
                        "{} ≤ {} but σ({}) ⊄ σ({})",
                        upper.name(s),
                        upper.name(t),
                        upper.name(s),
                        upper.name(t)
                    ),
                );
            }
            if s < t && !upper.comparable(s, t) && intersects(&sigma[s], &sigma[t]) {
                r.fail(
                    "overlap",
                    format!(
                        "σ({}) and σ({}) meet but the elements are incomparable",
                        upper.name(s),
                        upper.name(t)
                    ),
                );
            }
        }
    }
    if mode == Mode::Tree {
        if let Some(top) = upper.greatest() {
            if sigma[top].len() != lower.len() {
                r.fail(
                    "top",
                    format!(
                        "σ({}) = {} is not the whole lower tree",
                        upper.name(top),
                        names(lower, &sigma[top])
                    ),
                );
            }
        }
    }
    if r.passed() {
        check_remarks(c, &mut r);
    }
    r
}

/// Consequences that must hold for every valid constellation.
fn check_remarks(c: ConstellationView<'_>, r: &mut ValidationReport) {
    let (lower, upper, sigma) = (c.lower, c.upper, c.sigma);
    for x in 0..lower.len() {
        let fiber: Vec<usize> = (0..upper.len())
            .filter(|&s| sigma[s].binary_search(&x).is_ok())
            .collect();
        for (i, &a) in fiber.iter().enumerate() {
            if fiber[i + 1..].iter().any(|&b| !upper.comparable(a, b)) {
                r.fail(
                    "remark-fiber",
                    format!("fiber over `{}` is not a chain", lower.name(x)),
                );
            }
        }
    }
    for s in 0..upper.len() {
        for t in s + 1..upper.len() {
            let meet = intersection(&sigma[s], &sigma[t]);
            if meet.is_empty() {
                continue;
            }
            let inf = if upper.le(s, t) { s } else { t };
            if meet != sigma[inf] {
                r.fail(
                    "remark-meet",
                    format!(
                        "σ({}) ∩ σ({}) differs from σ of their meet",
                        upper.name(s),
                        upper.name(t)
                    ),
                );
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Vertex(usize),
    Circle(usize),
}

/// The constellation order. Nodes are indexed vertices first, then circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstellationOrder {
    pub poset: Poset,
    vertices: usize,
}

impl ConstellationOrder {
    /// Builds the order without validating the constellation. An empty
    /// upper level gives the discrete order on the lower vertices.
    pub fn build(c: ConstellationView<'_>) -> Result<ConstellationOrder> {
        let nv = c.lower.len();
        let mut names: Vec<String> = c
            .lower
            .names()
            .iter()
            .map(|n| format!("{n}{VERTEX_SUFFIX}"))
            .collect();
        names.extend(
            c.upper
                .names()
                .iter()
                .map(|n| format!("{n}{CIRCLE_SUFFIX}")),
        );
        let lt = |a: usize, b: usize| match (a < nv, b < nv) {
            (true, true) => false,
            (true, false) => c.sigma[b - nv].binary_search(&a).is_ok(),
            (false, true) => false,
            (false, false) => c.upper.lt(a - nv, b - nv),
        };
        let poset = Poset::from_order(names, lt)?;
        Ok(ConstellationOrder {
            poset,
            vertices: nv,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn circle_count(&self) -> usize {
        self.poset.len() - self.vertices
    }

    pub fn node(&self, i: usize) -> Node {
        if i < self.vertices {
            Node::Vertex(i)
        } else {
            Node::Circle(i - self.vertices)
        }
    }

    pub fn index(&self, node: Node) -> usize {
        match node {
            Node::Vertex(i) => i,
            Node::Circle(i) => self.vertices + i,
        }
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }
}

pub fn constellation_order(c: &Constellation) -> Result<ConstellationOrder> {
    validate_constellation(c).into_result()?;
    ConstellationOrder::build(c.view())
}

/// Checks that `map` is an order embedding `src → dst`.
pub(crate) fn check_embedding(
    r: &mut ValidationReport,
    what: &str,
    map: &[usize],
    src: &Poset,
    dst: &Poset,
) -> bool {
    let before = r.diagnostics.len();
    if map.len() != src.len() {
        r.fail(
            "not-total",
            format!(
                "{what}: map has {} entries for {} elements",
                map.len(),
                src.len()
            ),
        );
        return false;
    }
    if let Some(&bad) = map.iter().find(|&&y| y >= dst.len()) {
        r.fail(
            "out-of-range",
            format!("{what}: image index {bad} out of range"),
        );
        return false;
    }
    for a in 0..src.len() {
        for b in 0..src.len() {
            if a < b && map[a] == map[b] {
                r.fail(
                    "not-injective",
                    format!(
                        "{what}: `{}` and `{}` both map to `{}`",
                        src.name(a),
                        src.name(b),
                        dst.name(map[a])
                    ),
                );
            }
            if a != b && src.le(a, b) != dst.le(map[a], map[b]) {
                let code = if src.le(a, b) {
                    "order-not-preserved"
                } else {
                    "order-not-reflected"
                };
                r.fail(
                    code,
                    format!(
                        "{what}: `{}` ≤ `{}` is {} in the source",
                        src.name(a),
                        src.name(b),
                        src.le(a, b)
                    ),
                );
            }
        }
    }
    r.diagnostics.len() == before
}

/// The map on constellation-order nodes induced by `(f_upper, f_lower)`.
pub(crate) fn induced_node_map(
    src: &ConstellationOrder,
    dst: &ConstellationOrder,
    f_upper: &[usize],
    f_lower: &[usize],
) -> Vec<usize> {
    (0..src.len())
        .map(|i| match src.node(i) {
            Node::Vertex(x) => dst.index(Node::Vertex(f_lower[x])),
            Node::Circle(s) => dst.index(Node::Circle(f_upper[s])),
        })
        .collect()
}

pub fn validate_constellation_morphism(
    f_upper: &[usize],
    f_lower: &[usize],
    src: ConstellationView<'_>,
    dst: ConstellationView<'_>,
) -> ValidationReport {
    let mut r = ValidationReport::new("constellation morphism");
    let ok_upper = check_embedding(&mut r, "upper", f_upper, src.upper, dst.upper);
    let ok_lower = check_embedding(&mut r, "lower", f_lower, src.lower, dst.lower);
    if !(ok_upper && ok_lower) {
        return r;
    }
    let (co_src, co_dst) = match (
        ConstellationOrder::build(src),
        ConstellationOrder::build(dst),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            r.fail("order", "constellation order could not be formed");
            return r;
        }
    };
    let map = induced_node_map(&co_src, &co_dst, f_upper, f_lower);
    check_embedding(&mut r, "induced", &map, &co_src.poset, &co_dst.poset);
    let (ps, pd) = (&co_src.poset, &co_dst.poset);
    for a in 0..ps.len() {
        for b in a + 1..ps.len() {
            if let Some(s) = ps.sup(&[a, b]).least() {
                let image = pd.sup(&[map[a], map[b]]).least();
                if image != Some(map[s]) {
                    r.fail(
                        "sup",
                        format!(
                            "sup({}, {}) = {} but the images have sup {}",
                            ps.name(a),
                            ps.name(b),
                            ps.name(s),
                            image.map_or("none", |i| pd.name(i))
                        ),
                    );
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t3_sigma1(b1: &[&str], mode: Mode) -> Constellation {
        let lower = Poset::chain(&["y_6", "y_5", "y_4", "y_1"]).unwrap();
        let upper = Poset::chain(&["b_3", "b_2", "b_1"]).unwrap();
        Constellation::from_names(
            lower,
            upper,
            &[
                ("b_1", b1),
                ("b_2", &["y_4", "y_5", "y_6"]),
                ("b_3", &["y_4", "y_5"]),
            ],
            mode,
        )
        .unwrap()
    }

    #[test]
    fn t3_level_one() {
        let c = t3_sigma1(&["y_1", "y_4", "y_5", "y_6"], Mode::Tree);
        assert!(validate_constellation(&c).passed());
        let co = constellation_order(&c).unwrap();
        let p = &co.poset;
        let mut covers: Vec<(&str, &str)> = p
            .covers()
            .iter()
            .map(|&(a, b)| (p.name(a), p.name(b)))
            .collect();
        covers.sort_unstable();
        assert_eq!(
            covers,
            vec![
                ("b_2~c", "b_1~c"),
                ("b_3~c", "b_2~c"),
                ("y_1~v", "b_1~c"),
                ("y_4~v", "b_3~c"),
                ("y_5~v", "b_3~c"),
                ("y_6~v", "b_2~c")
            ]
        );
        assert!(!p.leq("y_4~v", "y_6~v").unwrap());
        assert_eq!(p.sup2("y_4~v", "y_6~v").unwrap(), Some("b_2~c"));
        assert_eq!(
            p.leaves_over("b_2~c").unwrap(),
            vec!["y_4~v", "y_5~v", "y_6~v"]
        );
        assert_eq!(
            p.leaves_over("b_1~c").unwrap(),
            vec!["y_1~v", "y_4~v", "y_5~v", "y_6~v"]
        );
        assert_eq!(p.leaves_over("y_1~v").unwrap(), vec!["y_1~v"]);
        assert_eq!(p.cover_of(&["b_3~c"]).unwrap(), vec!["y_4~v", "y_5~v"]);
        assert_eq!(
            p.cover_of(&["b_1~c", "b_2~c", "b_3~c"]).unwrap(),
            vec!["y_1~v", "y_4~v", "y_5~v", "y_6~v"]
        );
        assert!(p.cover_of(&["y_5~v"]).unwrap().is_empty());
        assert_eq!(
            p.classify(),
            crate::poset::PosetClass::Tree {
                root: p.id("b_1~c").unwrap()
            }
        );
    }

    #[test]
    fn top_clause_only_in_tree_mode() {
        let tree = t3_sigma1(&["y_4", "y_5", "y_6"], Mode::Tree);
        let r = validate_constellation(&tree);
        assert!(r.has("top"), "{r}");
        assert_eq!(r.diagnostics.len(), 1);
        let thicket = t3_sigma1(&["y_4", "y_5", "y_6"], Mode::Thicket);
        assert!(validate_constellation(&thicket).passed());
    }

    #[test]
    fn overlap_of_incomparable_nodes() {
        let lower = Poset::chain(&["t"]).unwrap();
        let upper = Poset::from_names(&["a", "b"], &[]).unwrap();
        let c =
            Constellation::from_names(lower, upper, &[("a", &["t"]), ("b", &["t"])], Mode::Thicket)
                .unwrap();
        assert!(validate_constellation(&c).has("overlap"));
    }

    #[test]
    fn singleton_order_is_a_two_chain() {
        let c = Constellation::from_names(
            Poset::chain(&["t"]).unwrap(),
            Poset::chain(&["m"]).unwrap(),
            &[("m", &["t"])],
            Mode::Tree,
        )
        .unwrap();
        let co = constellation_order(&c).unwrap();
        assert_eq!(co.poset.covers(), &[(0, 1)]);
    }

    #[test]
    fn morphism_sup_preservation() {
        let dst = t3_sigma1(&["y_1", "y_4", "y_5", "y_6"], Mode::Tree);
        let src = Constellation::from_names(
            Poset::chain(&["y_3", "y_2"]).unwrap(),
            Poset::chain(&["b"]).unwrap(),
            &[("b", &["y_2", "y_3"])],
            Mode::Tree,
        )
        .unwrap();
        let lower = |n: &str| dst.lower.id(n).unwrap();
        let f_lower = vec![lower("y_6"), lower("y_4")];
        let good = vec![dst.upper.id("b_2").unwrap()];
        assert!(validate_constellation_morphism(&good, &f_lower, src.view(), dst.view()).passed());
        let bad = vec![dst.upper.id("b_1").unwrap()];
        let r = validate_constellation_morphism(&bad, &f_lower, src.view(), dst.view());
        assert!(r.has("sup"), "{r}");
        let id: Vec<usize> = (0..3).collect();
        let id_lower: Vec<usize> = (0..4).collect();
        assert!(validate_constellation_morphism(&id, &id_lower, dst.view(), dst.view()).passed());
    }
}
