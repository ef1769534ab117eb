//! Contraction morphisms (ι-maps) between positive opetopes and cardinals.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergraph::{Face, FaceSet, HypergraphClass, PositiveHypergraph};
use crate::report::ValidationReport;

/// A face assignment `h : Q → P` that may lower dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaMap {
    pub source: PositiveHypergraph,
    pub target: PositiveHypergraph,
    /// `maps[k][a]` is the image of face `a ∈ Q_k`.
    pub maps: Vec<Vec<Face>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaAnalysis {
    pub report: ValidationReport,
    /// Names of kernel faces, sorted.
    pub kernel: Vec<String>,
    /// Collapse degree of every source face, keyed by name.
    pub collapse: BTreeMap<String, usize>,
    pub epi: bool,
}

impl IotaMap {
    pub fn new(
        source: PositiveHypergraph,
        target: PositiveHypergraph,
        maps: Vec<Vec<Face>>,
    ) -> Result<IotaMap> {
        if maps.len() != source.dims() {
            return Err(Error::Malformed(
                "assignment must cover every source dimension".into(),
            ));
        }
        for (k, level) in maps.iter().enumerate() {
            if level.len() != source.count(k) {
                return Err(Error::Malformed(format!(
                    "assignment in dimension {k} is not total"
                )));
            }
            if level.iter().any(|f| f.idx >= target.count(f.dim)) {
                return Err(Error::Malformed(format!(
                    "assignment in dimension {k} leaves the target"
                )));
            }
        }
        Ok(IotaMap {
            source,
            target,
            maps,
        })
    }

    pub fn from_names(
        source: PositiveHypergraph,
        target: PositiveHypergraph,
        pairs: &[(&str, &str)],
    ) -> Result<IotaMap> {
        let mut maps: Vec<Vec<Option<Face>>> = (0..source.dims())
            .map(|k| vec![None; source.count(k)])
            .collect();
        for (q, p) in pairs {
            let fq = source.face_id(q)?;
            let fp = target.face_id(p)?;
            if maps[fq.dim][fq.idx].replace(fp).is_some() {
                return Err(Error::Malformed(format!("`{q}` is assigned twice")));
            }
        }
        let mut out = Vec::new();
        for (k, level) in maps.into_iter().enumerate() {
            let mut row = Vec::new();
            for (i, f) in level.into_iter().enumerate() {
                row.push(f.ok_or_else(|| {
                    Error::Malformed(format!("no image for `{}`", source.names(k)[i]))
                })?);
            }
            out.push(row);
        }
        IotaMap::new(source, target, out)
    }

    pub fn identity(h: &PositiveHypergraph) -> IotaMap {
        let maps = (0..h.dims())
            .map(|k| (0..h.count(k)).map(|i| Face::new(k, i)).collect())
            .collect();
        IotaMap {
            source: h.clone(),
            target: h.clone(),
            maps,
        }
    }

    pub fn apply(&self, q: Face) -> Face {
        self.maps[q.dim][q.idx]
    }

    pub fn in_kernel(&self, q: Face) -> bool {
        self.apply(q).dim < q.dim
    }

    pub fn kernel(&self) -> FaceSet {
        self.source.faces().filter(|&q| self.in_kernel(q)).collect()
    }

    /// `k` such that `q` is `k`-collapsing (0 when dimension is raised, which is invalid anyway).
    pub fn collapse_degree(&self, q: Face) -> usize {
        q.dim.saturating_sub(self.apply(q).dim)
    }

    /// Every target face has a dimension-preserving preimage.
    pub fn is_epi(&self) -> bool {
        let mut hit: Vec<Vec<bool>> = (0..self.target.dims())
            .map(|k| vec![false; self.target.count(k)])
            .collect();
        for q in self.source.faces() {
            let p = self.apply(q);
            if p.dim == q.dim {
                hit[p.dim][p.idx] = true;
            }
        }
        hit.iter().all(|l| l.iter().all(|&x| x))
    }

    /// `(source name, target name)` for every face, in face order.
    pub fn name_pairs(&self) -> Vec<(String, String)> {
        self.source
            .faces()
            .map(|q| {
                (
                    self.source.name(q).to_string(),
                    self.target.name(self.apply(q)).to_string(),
                )
            })
            .collect()
    }
}

pub fn analyze_iota_map(m: &IotaMap) -> IotaAnalysis {
    let (q_h, p_h) = (&m.source, &m.target);
    let mut r = ValidationReport::new("ι-map");
    for (label, h) in [("source", q_h), ("target", p_h)] {
        let c = h.classify();
        if c.class == HypergraphClass::Hypergraph {
            r.fail("endpoint", format!("{label} is not an opetopic cardinal"));
        }
    }
    for q in q_h.faces() {
        let p = m.apply(q);
        let qn = q_h.name(q);
        if p.dim > q.dim {
            r.fail(
                "dimension",
                format!("dim {} = {} < dim h({qn}) = {}", qn, q.dim, p.dim),
            );
            continue;
        }
        let Some(g) = q_h.gamma(q) else { continue };
        // Clause 2 with k = dim q − 1.
        if m.apply(g) != p_h.gamma_iter(p, q.dim - 1) {
            r.fail(
                "codomain",
                format!(
                    "h(γ({qn})) = {} but γ⁽{}⁾(h({qn})) = {}",
                    p_h.name(m.apply(g)),
                    q.dim - 1,
                    p_h.name(p_h.gamma_iter(p, q.dim - 1))
                ),
            );
        }
        let surviving: Vec<Face> = q_h
            .delta(q)
            .into_iter()
            .filter(|&x| !m.in_kernel(x))
            .collect();
        let mut images: Vec<Face> = surviving.iter().map(|&x| m.apply(x)).collect();
        images.sort();
        let distinct = {
            let mut d = images.clone();
            d.dedup();
            d.len() == images.len()
        };
        if p.dim == q.dim {
            if !distinct || images != p_h.delta(p) {
                r.fail(
                    "domain-bijection",
                    format!(
                        "δ({qn}) − ker does not map bijectively onto δ({})",
                        p_h.name(p)
                    ),
                );
            }
        } else if p.dim + 1 == q.dim {
            if images != [p] {
                r.fail(
                    "domain-collapse",
                    format!(
                        "δ({qn}) − ker does not map bijectively onto {{{}}}",
                        p_h.name(p)
                    ),
                );
            }
        } else if !surviving.is_empty() {
            r.fail("domain-kernel", format!("δ({qn}) is not inside the kernel"));
        }
    }
    let epi = r.passed() && m.is_epi();
    if epi {
        for k in 0..p_h.dims() {
            let allowed_q = q_h.non_codomain(k);
            for p in p_h.non_codomain(k) {
                let n = allowed_q
                    .iter()
                    .filter(|&&a| m.apply(Face::new(k, a)) == Face::new(k, p))
                    .count();
                if n != 1 {
                    r.fail(
                        "epi-preimage",
                        format!(
                            "{} has {n} preimages outside γ(Q_{})",
                            p_h.names(k)[p],
                            k + 1
                        ),
                    );
                }
            }
        }
    }
    let kernel: Vec<String> = {
        let mut v: Vec<String> = m
            .kernel()
            .into_iter()
            .map(|q| q_h.name(q).to_string())
            .collect();
        v.sort();
        v
    };
    let collapse = q_h
        .faces()
        .map(|q| (q_h.name(q).to_string(), m.collapse_degree(q)))
        .collect();
    r.note(format!("kernel {{{}}}", kernel.join(", ")));
    if epi {
        r.note("epi");
    }
    IotaAnalysis {
        report: r,
        kernel,
        collapse,
        epi,
    }
}

pub fn validate_iota_map(m: &IotaMap) -> ValidationReport {
    analyze_iota_map(m).report
}

/// `g ∘ f`.
pub fn compose_iota(g: &IotaMap, f: &IotaMap) -> Result<IotaMap> {
    if f.target != g.source {
        return Err(Error::EndpointMismatch(
            "target of the first ι-map is not the source of the second".into(),
        ));
    }
    let maps = f
        .maps
        .iter()
        .map(|level| level.iter().map(|&x| g.apply(x)).collect())
        .collect();
    Ok(IotaMap {
        source: f.source.clone(),
        target: g.target.clone(),
        maps,
    })
}

/// On faces outside the kernel: `<⁻` is preserved and reflected, `<⁺` is
/// preserved weakly and reflected strictly, and every fiber is a `<⁺`-interval.
pub fn check_iota_corollaries(m: &IotaMap) -> ValidationReport {
    let (q_h, p_h) = (&m.source, &m.target);
    let mut r = ValidationReport::new("ι-map corollaries");
    for k in 0..q_h.dims() {
        let live: Vec<usize> = (0..q_h.count(k))
            .filter(|&a| !m.in_kernel(Face::new(k, a)))
            .collect();
        let img = |a: usize| m.apply(Face::new(k, a)).idx;
        let name = |a: usize| &q_h.names(k)[a];
        for &a in &live {
            for &b in &live {
                if a == b {
                    continue;
                }
                let (ha, hb) = (img(a), img(b));
                if q_h.lower_lt(k, a, b) != p_h.lower_lt(k, ha, hb) {
                    r.fail(
                        "lower-order",
                        format!("{} <⁻ {} is not matched by the images", name(a), name(b)),
                    );
                }
                if q_h.upper_lt(k, a, b) && !p_h.upper_le(k, ha, hb) {
                    r.fail(
                        "upper-monotone",
                        format!(
                            "{} <⁺ {} but h({}) ≰⁺ h({})",
                            name(a),
                            name(b),
                            name(a),
                            name(b)
                        ),
                    );
                }
                if p_h.upper_lt(k, ha, hb) && !q_h.upper_lt(k, a, b) {
                    r.fail(
                        "upper-reflect",
                        format!(
                            "h({}) <⁺ h({}) but {} ≮⁺ {}",
                            name(a),
                            name(b),
                            name(a),
                            name(b)
                        ),
                    );
                }
                if ha == hb && !(q_h.upper_lt(k, a, b) || q_h.upper_lt(k, b, a)) {
                    r.fail(
                        "fiber-chain",
                        format!(
                            "{} and {} share an image but are <⁺-incomparable",
                            name(a),
                            name(b)
                        ),
                    );
                }
            }
        }
        for p in 0..p_h.count(k) {
            let fiber: Vec<usize> = live.iter().copied().filter(|&a| img(a) == p).collect();
            if fiber.is_empty() {
                continue;
            }
            let bottom = fiber
                .iter()
                .copied()
                .find(|&x| fiber.iter().all(|&y| q_h.upper_le(k, x, y)));
            let top = fiber
                .iter()
                .copied()
                .find(|&x| fiber.iter().all(|&y| q_h.upper_le(k, y, x)));
            let interval = match (bottom, top) {
                (Some(lo), Some(hi)) => {
                    let between: Vec<usize> = (0..q_h.count(k))
                        .filter(|&x| q_h.upper_le(k, lo, x) && q_h.upper_le(k, x, hi))
                        .collect();
                    between == fiber
                }
                _ => false,
            };
            if !interval {
                let names: Vec<&str> = fiber.iter().map(|&a| name(a).as_str()).collect();
                r.fail(
                    "fiber-interval",
                    format!(
                        "fiber over {} is {{{}}}, not an interval",
                        p_h.names(k)[p],
                        names.join(", ")
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
    fn f32_is_an_epi_with_the_expected_kernel() {
        let f = fixtures::f32();
        let a = analyze_iota_map(&f);
        assert!(a.report.passed(), "{}", a.report);
        assert!(a.epi);
        assert_eq!(a.kernel, vec!["b_1", "b_3", "beta", "y_1", "y_5"]);
        assert_eq!(a.collapse["beta"], 1);
        assert_eq!(a.collapse["y_6"], 0);
        assert!(check_iota_corollaries(&f).passed());
    }

    #[test]
    fn identity_and_composition() {
        let o3 = fixtures::o3();
        let id = IotaMap::identity(&o3);
        let a = analyze_iota_map(&id);
        assert!(a.report.passed() && a.epi && a.kernel.is_empty());
        let f = fixtures::f32();
        assert_eq!(compose_iota(&IotaMap::identity(&f.target), &f).unwrap(), f);
        assert_eq!(compose_iota(&f, &id).unwrap(), f);
        assert!(compose_iota(&f, &f).is_err());
    }

    #[test]
    fn broken_codomain() {
        let mut f = fixtures::f32();
        let y6 = f.source.face("y_6").unwrap();
        f.maps[1][y6.idx] = f.target.face("y_1").unwrap();
        assert!(validate_iota_map(&f).has("codomain"));
    }
}
