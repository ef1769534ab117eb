//! The two duality functors between opetopes (cardinals) and tree (thicket)
//! complexes, on objects and morphisms, and the natural isomorphisms η, ε.
//!
//! Dual faces of a complex are the nodes of its constellation orders, named
//! `s~v` for vertices and `u~c` for circles. Duals of opetopes keep face names.

use crate::complex::{validate_complex, validate_complex_morphism, Complex, ComplexMorphism};
use crate::constellation::{induced_node_map, ConstellationOrder, Mode, Node, VERTEX_SUFFIX};
use crate::error::{Error, Result};
use crate::hypergraph::{validate_face_map, Face, FaceMap, HypergraphClass, PositiveHypergraph};
use crate::iota::{analyze_iota_map, IotaMap};
use crate::poset::Poset;
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoKind {
    Eta,
    Epsilon,
}

/// Per-level (η) or per-dimension (ε) name correspondences of a verified isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalIsoWitness {
    pub kind: IsoKind,
    pub components: Vec<Vec<(String, String)>>,
}

fn internal(context: &str, e: Error) -> Error {
    Error::Internal(format!("{context}: {e}"))
}

/// Kind of complex an opetope or cardinal dualizes to.
pub fn dual_kind(p: &PositiveHypergraph) -> Result<Mode> {
    let c = p.classify();
    match c.class {
        HypergraphClass::Opetope => Ok(Mode::Tree),
        HypergraphClass::Cardinal => Ok(Mode::Thicket),
        HypergraphClass::Hypergraph => {
            let mut r = ValidationReport::new("hypergraph");
            for d in c.failures {
                r.fail(&d.code, d.message);
            }
            Err(Error::Invalid(r))
        }
    }
}

/// `P ↦ P*`: levels `P_i − γ(P_{i+1})` under `≤⁻`, constellations
/// `π_i(p) = {s ∈ P*_i : s <⁺ γ(p)}`.
pub fn dualize_opetope(p: &PositiveHypergraph) -> Result<Complex> {
    let kind = dual_kind(p)?;
    dualize_opetope_as(p, kind)
}

/// As [`dualize_opetope`], but with a chosen output kind; an opetope may be
/// dualized to a thicket complex, a proper cardinal only to a thicket complex.
pub fn dualize_opetope_as(p: &PositiveHypergraph, kind: Mode) -> Result<Complex> {
    let natural = dual_kind(p)?;
    if kind == Mode::Tree && natural != Mode::Tree {
        return Err(Error::Malformed(
            "only positive opetopes dualize to tree complexes".into(),
        ));
    }
    let n = p.dimension();
    let kept: Vec<Vec<usize>> = (0..=n).map(|i| p.non_codomain(i)).collect();
    let mut levels = Vec::new();
    for (i, ids) in kept.iter().enumerate() {
        let names = ids.iter().map(|&a| p.names(i)[a].clone()).collect();
        let level = Poset::from_order(names, |a, b| p.lower_lt(i, ids[a], ids[b]))
            .map_err(|e| internal("P* level", e))?;
        levels.push(level);
    }
    let mut sigmas = Vec::new();
    for i in 0..n {
        let sigma = kept[i + 1]
            .iter()
            .map(|&q| {
                let g = p.gamma_idx(i, q);
                (0..kept[i].len())
                    .filter(|&s| p.upper_lt(i, kept[i][s], g))
                    .collect()
            })
            .collect();
        sigmas.push(sigma);
    }
    let x = Complex::new(kind, levels, sigmas).map_err(|e| internal("P*", e))?;
    validate_complex(&x).expect_internal()?;
    Ok(x)
}

/// Constellation orders `T_{i+1} ◁ T_i` for `i = 0..=dim`.
pub fn constellation_orders(s: &Complex) -> Result<Vec<ConstellationOrder>> {
    (0..=s.dimension())
        .map(|i| s.constellation_order(i))
        .collect()
}

/// For a node of `CO_{i+1}`, its leaves reinterpreted as circles of `CO_i`.
fn leaves_as_circles(
    hi: &ConstellationOrder,
    lo: &ConstellationOrder,
    p: usize,
) -> Result<Vec<usize>> {
    hi.poset
        .leaves_below(p)
        .into_iter()
        .map(|l| match hi.node(l) {
            Node::Vertex(t) => Ok(lo.index(Node::Circle(t))),
            Node::Circle(_) => Err(Error::Internal(format!(
                "leaf {} is a circle",
                hi.poset.name(l)
            ))),
        })
        .collect()
}

/// `S ↦ S*`: faces are constellation-order nodes, `γ` is the sup of the leaves
/// read one dimension down and `δ` their cover.
pub fn dualize_complex(s: &Complex) -> Result<PositiveHypergraph> {
    validate_complex(s).into_result()?;
    let orders = constellation_orders(s)?;
    let names: Vec<Vec<String>> = orders.iter().map(|o| o.poset.names().to_vec()).collect();
    let mut gamma = Vec::new();
    let mut delta = Vec::new();
    for i in 0..s.dimension() {
        let (lo, hi) = (&orders[i], &orders[i + 1]);
        let mut g = Vec::new();
        let mut d = Vec::new();
        for p in 0..hi.len() {
            let set = leaves_as_circles(hi, lo, p)?;
            let sup = lo.poset.sup(&set).least().ok_or_else(|| {
                Error::Internal(format!(
                    "leaves of {} have no sup in dimension {i}",
                    hi.poset.name(p)
                ))
            })?;
            g.push(sup);
            d.push(lo.poset.cover_of_set(&set).map_err(|e| internal("δ", e))?);
        }
        gamma.push(g);
        delta.push(d);
    }
    let h = PositiveHypergraph::new(names, gamma, delta).map_err(|e| internal("S*", e))?;
    let c = h.classify();
    let ok = match s.kind() {
        Mode::Tree => c.class == HypergraphClass::Opetope,
        Mode::Thicket => c.class != HypergraphClass::Hypergraph,
    };
    if !ok {
        return Err(Error::Internal(format!(
            "dual of a valid complex failed the axioms: {:?}",
            c.failures
        )));
    }
    for (i, o) in orders.iter().enumerate() {
        for a in 0..o.len() {
            for b in 0..o.len() {
                if o.poset.lt(a, b) != h.upper_lt(i, a, b) {
                    return Err(Error::Internal(format!(
                        "constellation order and <⁺ disagree on {} and {}",
                        o.poset.name(a),
                        o.poset.name(b)
                    )));
                }
            }
        }
    }
    Ok(h)
}

/// Dual of a ι-epi `f : P → Q`, the complex morphism `Q* → P*` sending
/// `q` to the unique `p ∈ P_i − γ(P_{i+1})` with `f(p) = q`.
pub fn dualize_iota_epi(f: &IotaMap) -> Result<ComplexMorphism> {
    let a = analyze_iota_map(f);
    if !a.report.passed() {
        return Err(Error::Invalid(a.report));
    }
    if !a.epi {
        return Err(Error::NotEpi(
            "some target face has no dimension-preserving preimage".into(),
        ));
    }
    let (p, q) = (&f.source, &f.target);
    let kind = match (dual_kind(p)?, dual_kind(q)?) {
        (Mode::Tree, Mode::Tree) => Mode::Tree,
        _ => Mode::Thicket,
    };
    let p_star = dualize_opetope_as(p, kind)?;
    let q_star = dualize_opetope_as(q, kind)?;
    let mut maps = Vec::new();
    for i in 0..=q.dimension() {
        let p_kept = p.non_codomain(i);
        let mut level = Vec::new();
        for &qi in &q.non_codomain(i) {
            let pre: Vec<usize> = (0..p_kept.len())
                .filter(|&x| f.apply(Face::new(i, p_kept[x])) == Face::new(i, qi))
                .collect();
            match pre.as_slice() {
                [x] => level.push(*x),
                _ => {
                    return Err(Error::Internal(format!(
                        "{} has {} preimages in P*_{i}",
                        q.names(i)[qi],
                        pre.len()
                    )));
                }
            }
        }
        maps.push(level);
    }
    let m = ComplexMorphism::new(q_star, p_star, maps).map_err(|e| internal("f*", e))?;
    check_least_fiber(f, &m).expect_internal()?;
    validate_complex_morphism(&m).expect_internal()?;
    Ok(m)
}

/// `ε_P ∘ (f*_{i+1} ◁ f*_i)` picks the `<⁺`-least element of the fiber of
/// `f` over `ε_Q`, outside the kernel.
fn check_least_fiber(f: &IotaMap, dual: &ComplexMorphism) -> ValidationReport {
    let mut r = ValidationReport::new("least fiber element");
    let (p, q) = (&f.source, &f.target);
    for i in 0..=q.dimension() {
        let (co_q, co_p) = match (
            dual.source.constellation_order(i),
            dual.target.constellation_order(i),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                r.fail("order", "constellation order could not be formed");
                return r;
            }
        };
        let upper: &[usize] = dual.maps.get(i + 1).map_or(&[], |m| m.as_slice());
        let map = induced_node_map(&co_q, &co_p, upper, &dual.maps[i]);
        for x in 0..co_q.len() {
            let eq = epsilon_face(q, &dual.source, &co_q, i, x);
            let ep = epsilon_face(p, &dual.target, &co_p, i, map[x]);
            let fiber: Vec<usize> = (0..p.count(i))
                .filter(|&a| f.apply(Face::new(i, a)) == Face::new(i, eq))
                .collect();
            let least = fiber
                .iter()
                .copied()
                .find(|&a| fiber.iter().all(|&b| p.upper_le(i, a, b)));
            if least != Some(ep) {
                r.fail(
                    "least-fiber",
                    format!(
                        "{} is not the least element over {}",
                        p.names(i)[ep],
                        q.names(i)[eq]
                    ),
                );
            }
        }
    }
    r
}

/// `ε_{P,i}` on node `x` of `CO_i(P*)`, as a face index of `P_i`.
fn epsilon_face(
    p: &PositiveHypergraph,
    p_star: &Complex,
    co: &ConstellationOrder,
    i: usize,
    x: usize,
) -> usize {
    match co.node(x) {
        Node::Vertex(v) => {
            p.face(p_star.level(i).name(v))
                .expect("P* names are faces of P")
                .idx
        }
        Node::Circle(u) => {
            let f = p
                .face(p_star.level(i + 1).name(u))
                .expect("P* names are faces of P");
            p.gamma(f).expect("positive dimension").idx
        }
    }
}

/// Dual of a complex morphism `f : S → T`, the ι-epi `T* → S*`.
pub fn dualize_complex_morphism(f: &ComplexMorphism) -> Result<IotaMap> {
    validate_complex_morphism(f).into_result()?;
    let (s, t) = (&f.source, &f.target);
    let s_star = dualize_complex(s)?;
    let t_star = dualize_complex(t)?;
    let co_s = constellation_orders(s)?;
    let co_t = constellation_orders(t)?;
    let fvec: Vec<Vec<usize>> = (0..=s.dimension())
        .map(|j| {
            let upper: &[usize] = f.maps.get(j + 1).map_or(&[], |m| m.as_slice());
            induced_node_map(&co_s[j], &co_t[j], upper, &f.maps[j])
        })
        .collect();
    let mut maps = Vec::new();
    for i in 0..t_star.dims() {
        let mut level = Vec::new();
        for ti in 0..t_star.count(i) {
            let tf = Face::new(i, ti);
            let mut image = None;
            for j in (0..=i.min(s.dimension())).rev() {
                let bound: Vec<usize> = if j == i {
                    vec![ti]
                } else {
                    t_star.delta_idx(t_star.gamma_iter(tf, j + 1)).to_vec()
                };
                let po = &co_s[j].poset;
                let cands: Vec<usize> = (0..po.len())
                    .filter(|&x| bound.iter().any(|&d| co_t[j].poset.le(fvec[j][x], d)))
                    .collect();
                if cands.is_empty() {
                    continue;
                }
                let maximal: Vec<usize> = cands
                    .iter()
                    .copied()
                    .filter(|&x| !cands.iter().any(|&y| po.lt(x, y)))
                    .collect();
                match maximal.as_slice() {
                    [m] => image = Some(Face::new(j, *m)),
                    _ => {
                        return Err(Error::Internal(format!(
                            "no unique ≤co-maximal preimage for {} in dimension {j}",
                            t_star.name(tf)
                        )))
                    }
                }
                break;
            }
            level.push(
                image
                    .ok_or_else(|| Error::Internal(format!("{} has no image", t_star.name(tf))))?,
            );
        }
        maps.push(level);
    }
    let m = IotaMap::new(t_star, s_star, maps).map_err(|e| internal("f*", e))?;
    let a = analyze_iota_map(&m);
    if !a.report.passed() || !a.epi {
        return Err(Error::Internal(format!(
            "dual morphism is not a ι-epi: {}",
            a.report
        )));
    }
    Ok(m)
}

/// Checks `ε : P** → P` (`s~v ↦ s`, `u~c ↦ γ(u)`), returning its components.
pub fn epsilon_iso(p: &PositiveHypergraph) -> Result<NaturalIsoWitness> {
    let p_star = dualize_opetope(p)?;
    let pss = dualize_complex(&p_star)?;
    let orders = constellation_orders(&p_star)?;
    let mut r = ValidationReport::new("ε");
    if pss.dims() != p.dims() {
        return Err(Error::Internal("P** and P differ in dimension".into()));
    }
    let maps: Vec<Vec<usize>> = (0..p.dims())
        .map(|i| {
            (0..orders[i].len())
                .map(|x| epsilon_face(p, &p_star, &orders[i], i, x))
                .collect()
        })
        .collect();
    for (i, m) in maps.iter().enumerate() {
        let mut sorted = m.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != m.len() || m.len() != p.count(i) {
            r.fail(
                "bijection",
                format!("ε is not a bijection in dimension {i}"),
            );
        }
    }
    if r.passed() {
        let fm = FaceMap {
            source: pss.clone(),
            target: p.clone(),
            maps: maps.clone(),
        };
        r.absorb("face map", validate_face_map(&fm));
        for (i, o) in orders.iter().enumerate() {
            for a in 0..o.len() {
                for b in 0..o.len() {
                    if o.poset.lt(a, b) != p.upper_lt(i, maps[i][a], maps[i][b]) {
                        r.fail(
                            "order-iso",
                            format!(
                                "{} <co {} is not matched by <⁺",
                                o.poset.name(a),
                                o.poset.name(b)
                            ),
                        );
                    }
                }
            }
        }
        check_ope_observations(p, &p_star, &orders, &mut r);
    }
    r.expect_internal()?;
    let components = maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            m.iter()
                .enumerate()
                .map(|(x, &y)| (pss.names(i)[x].clone(), p.names(i)[y].clone()))
                .collect()
        })
        .collect();
    Ok(NaturalIsoWitness {
        kind: IsoKind::Epsilon,
        components,
    })
}

/// For `p ∈ P*_{i+1}` with `i ≥ 1` and `p_root` the root of `π_i(p)`:
/// `γγ(p) = γ(p_root)`, `q ↦ q°` is an order isomorphism onto the leaves of
/// `p°` read as circles, and their sup is `p_root°`.
fn check_ope_observations(
    p: &PositiveHypergraph,
    p_star: &Complex,
    orders: &[ConstellationOrder],
    r: &mut ValidationReport,
) {
    for i in 1..p_star.dimension() {
        let level = p_star.level(i);
        let below = &orders[i - 1];
        for (u, pi) in p_star.sigma(i).iter().enumerate() {
            let name = p_star.level(i + 1).name(u);
            let Some(root) = level.convex_root(pi) else {
                r.fail("ope-obs", format!("π({name}) has no root"));
                continue;
            };
            let pf = p.face(name).expect("face of P");
            let gg = p.gamma(p.gamma(pf).expect("dim ≥ 2")).expect("dim ≥ 1");
            let root_face = p.face(level.name(root)).expect("face of P");
            if p.gamma(root_face) != Some(gg) {
                r.fail("ope-obs", format!("γγ({name}) ≠ γ({})", level.name(root)));
            }
            let circles: Vec<usize> = pi.iter().map(|&q| below.index(Node::Circle(q))).collect();
            for (a, &qa) in pi.iter().enumerate() {
                for (b, &qb) in pi.iter().enumerate() {
                    if level.lt(qa, qb) != below.poset.lt(circles[a], circles[b]) {
                        r.fail("ope-obs", format!("ξ_{name} is not an order isomorphism"));
                    }
                }
            }
            if below.poset.sup(&circles).least() != Some(below.index(Node::Circle(root))) {
                r.fail(
                    "ope-obs",
                    format!("sup of the leaves of {name}° is not {}°", level.name(root)),
                );
            }
        }
    }
}

/// Checks `η : S → S**` (`s ↦ s~v`), including the σ square.
pub fn eta_iso(s: &Complex) -> Result<NaturalIsoWitness> {
    let s_star = dualize_complex(s)?;
    let sss = dualize_opetope_as(&s_star, s.kind())?;
    if sss.dimension() != s.dimension() {
        return Err(Error::Internal("S** and S differ in dimension".into()));
    }
    let mut maps = Vec::new();
    for i in 0..=s.dimension() {
        let (a, b) = (s.level(i), sss.level(i));
        if a.len() != b.len() {
            return Err(Error::Internal(format!(
                "level {i} of S** has {} nodes, not {}",
                b.len(),
                a.len()
            )));
        }
        let m = (0..a.len())
            .map(|x| {
                let n = format!("{}{VERTEX_SUFFIX}", a.name(x));
                b.position(&n)
                    .ok_or_else(|| Error::Internal(format!("`{n}` missing from level {i} of S**")))
            })
            .collect::<Result<Vec<usize>>>()?;
        maps.push(m);
    }
    let mut r = ValidationReport::new("η");
    for (i, m) in maps.iter().enumerate() {
        let (a, b) = (s.level(i), sss.level(i));
        for x in 0..a.len() {
            for y in 0..a.len() {
                if a.le(x, y) != b.le(m[x], m[y]) {
                    r.fail(
                        "order-iso",
                        format!(
                            "η is not an order isomorphism on {} and {}",
                            a.name(x),
                            a.name(y)
                        ),
                    );
                }
            }
        }
        if i < s.dimension() {
            for (u, members) in s.sigma(i).iter().enumerate() {
                let mut image: Vec<usize> = members.iter().map(|&x| m[x]).collect();
                image.sort_unstable();
                if image != sss.sigma(i)[maps[i + 1][u]] {
                    r.fail(
                        "sigma-square",
                        format!("σ** ∘ η ≠ η ∘ σ at {}", s.level(i + 1).name(u)),
                    );
                }
            }
        }
    }
    let morphism =
        ComplexMorphism::new(s.clone(), sss.clone(), maps.clone()).map_err(|e| internal("η", e))?;
    r.absorb("morphism", validate_complex_morphism(&morphism));
    r.expect_internal()?;
    let components = maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            m.iter()
                .enumerate()
                .map(|(x, &y)| {
                    (
                        s.level(i).name(x).to_string(),
                        sss.level(i).name(y).to_string(),
                    )
                })
                .collect()
        })
        .collect();
    Ok(NaturalIsoWitness {
        kind: IsoKind::Eta,
        components,
    })
}

/// `ε_Q ∘ f** = f ∘ ε_P` for a ι-epi `f : P → Q`.
pub fn check_epsilon_naturality(f: &IotaMap) -> Result<ValidationReport> {
    let fss = dualize_complex_morphism(&dualize_iota_epi(f)?)?;
    let ep = epsilon_iso(&f.source)?;
    let eq = epsilon_iso(&f.target)?;
    let lookup = |w: &NaturalIsoWitness, name: &str| -> Option<String> {
        w.components
            .iter()
            .flatten()
            .find(|(a, _)| a == name)
            .map(|(_, b)| b.clone())
    };
    let mut r = ValidationReport::new("ε naturality");
    for x in fss.source.faces() {
        let x_name = fss.source.name(x);
        let left = lookup(&eq, fss.target.name(fss.apply(x)));
        let right = lookup(&ep, x_name)
            .and_then(|n| f.source.face(&n))
            .map(|pf| f.target.name(f.apply(pf)).to_string());
        if left.is_none() || left != right {
            r.fail("naturality", format!("square fails at {x_name}"));
        }
    }
    Ok(r)
}

/// `g** ∘ η_S = η_T ∘ g` for a complex morphism `g : S → T`.
pub fn check_eta_naturality(g: &ComplexMorphism) -> Result<ValidationReport> {
    let gss = dualize_iota_epi(&dualize_complex_morphism(g)?)?;
    let mut r = ValidationReport::new("η naturality");
    for i in 0..=g.source.dimension() {
        for x in 0..g.source.level(i).len() {
            let eta_s = format!("{}{VERTEX_SUFFIX}", g.source.level(i).name(x));
            let eta_t = format!("{}{VERTEX_SUFFIX}", g.target.level(i).name(g.maps[i][x]));
            let Some(pos) = gss.source.level(i).position(&eta_s) else {
                r.fail("naturality", format!("`{eta_s}` missing from S**"));
                continue;
            };
            if gss.target.level(i).name(gss.maps[i][pos]) != eta_t {
                r.fail(
                    "naturality",
                    format!("square fails at {}", g.source.level(i).name(x)),
                );
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complexes_isomorphic;
    use crate::fixtures;
    use crate::iota::compose_iota;

    #[test]
    fn o2_dualizes_to_t2() {
        assert_eq!(dualize_opetope(&fixtures::o2()).unwrap(), fixtures::t2());
        assert_eq!(dualize_opetope(&fixtures::o3()).unwrap(), fixtures::t3());
        assert_eq!(dualize_opetope(&fixtures::o1()).unwrap(), fixtures::t1());
        assert_eq!(
            dualize_opetope(&fixtures::scard()).unwrap(),
            fixtures::thk()
        );
    }

    #[test]
    fn point_duals() {
        let point = PositiveHypergraph::builder().point("t").build().unwrap();
        let c = dualize_opetope(&point).unwrap();
        assert_eq!(c.dimension(), 0);
        let back = dualize_complex(&c).unwrap();
        assert_eq!(back.names(0), ["t~v"]);
    }

    #[test]
    fn t3_dual_at_the_top() {
        let h = dualize_complex(&fixtures::t3()).unwrap();
        let beta = h.face("beta~c").unwrap();
        assert_eq!(h.name(h.gamma(beta).unwrap()), "b_1~c");
        let d: Vec<&str> = h.delta(beta).iter().map(|&x| h.name(x)).collect();
        assert_eq!(d, vec!["y_1~v", "y_4~v", "y_5~v", "y_6~v"]);
        assert!(complexes_isomorphic(&dualize_opetope(&h).unwrap(), &fixtures::t3()).is_some());
    }

    #[test]
    fn natural_isomorphisms_on_fixtures() {
        for p in [
            fixtures::o1(),
            fixtures::o2(),
            fixtures::o3(),
            fixtures::scard(),
        ] {
            epsilon_iso(&p).unwrap();
        }
        for s in [
            fixtures::t1(),
            fixtures::t2(),
            fixtures::t3(),
            fixtures::thk(),
        ] {
            eta_iso(&s).unwrap();
        }
        let e = epsilon_iso(&fixtures::o2()).unwrap();
        assert!(e.components[1].contains(&("b~c".to_string(), "y_1".to_string())));
    }

    #[test]
    fn morphism_duals() {
        let f = fixtures::f32();
        assert_eq!(dualize_iota_epi(&f).unwrap(), fixtures::f32_star());
        let back = dualize_complex_morphism(&fixtures::f32_star()).unwrap();
        assert_eq!(back.source, dualize_complex(&fixtures::t3()).unwrap());
        assert!(check_epsilon_naturality(&f).unwrap().passed());
        assert!(check_eta_naturality(&fixtures::f32_star())
            .unwrap()
            .passed());
        let id = IotaMap::identity(&fixtures::o3());
        assert_eq!(
            dualize_iota_epi(&id).unwrap(),
            ComplexMorphism::identity(&fixtures::t3())
        );
        let id2 = dualize_complex_morphism(&ComplexMorphism::identity(&fixtures::t2())).unwrap();
        assert_eq!(
            id2,
            IotaMap::identity(&dualize_complex(&fixtures::t2()).unwrap())
        );
        let twice = compose_iota(&IotaMap::identity(&f.target), &f).unwrap();
        assert_eq!(dualize_iota_epi(&twice).unwrap(), fixtures::f32_star());
    }
}
