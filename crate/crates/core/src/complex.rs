//! Tree and thicket complexes: towers of constellations `τ_i : T_{i+1} → St(T_i)`.

use std::collections::HashMap;
use std::fmt;

use crate::constellation::{
    normalize_sigma, validate_constellation_morphism, validate_view, ConstellationOrder,
    ConstellationView, Mode,
};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::report::ValidationReport;

/// Level poset given by its element names and `(child, parent)` covers.
pub type LevelSpec<'a> = (&'a [&'a str], &'a [(&'a str, &'a str)]);
/// Constellation given as `(upper element, lower members)` pairs.
pub type SigmaSpec<'a> = &'a [(&'a str, &'a [&'a str])];

/// Levels `T_0..T_n`; `sigmas[i][u]` lists the members of `τ_i(u)` in `T_i`.
/// Element names are unique across all levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    kind: Mode,
    levels: Vec<Poset>,
    sigmas: Vec<Vec<Vec<usize>>>,
}

impl Complex {
    pub fn new(kind: Mode, levels: Vec<Poset>, sigmas: Vec<Vec<Vec<usize>>>) -> Result<Complex> {
        if levels.is_empty() {
            return Err(Error::Malformed(
                "a complex needs at least one level".into(),
            ));
        }
        if sigmas.len() + 1 != levels.len() {
            return Err(Error::Malformed(format!(
                "{} levels need {} constellations, got {}",
                levels.len(),
                levels.len() - 1,
                sigmas.len()
            )));
        }
        let mut seen = HashMap::new();
        for level in &levels {
            for n in level.names() {
                if seen.insert(n.as_str(), ()).is_some() {
                    return Err(Error::DuplicateElement(n.clone()));
                }
            }
        }
        let sigmas = sigmas
            .into_iter()
            .enumerate()
            .map(|(i, s)| normalize_sigma(&levels[i], &levels[i + 1], s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Complex {
            kind,
            levels,
            sigmas,
        })
    }

    pub fn from_spec(
        kind: Mode,
        levels: &[LevelSpec<'_>],
        sigmas: &[SigmaSpec<'_>],
    ) -> Result<Complex> {
        let posets = levels
            .iter()
            .map(|(n, c)| Poset::from_names(n, c))
            .collect::<Result<Vec<_>>>()?;
        let mut values = Vec::new();
        for (i, spec) in sigmas.iter().enumerate() {
            let (lower, upper) = match (posets.get(i), posets.get(i + 1)) {
                (Some(l), Some(u)) => (l, u),
                _ => return Err(Error::Malformed("too many constellations".into())),
            };
            let mut v = vec![None; upper.len()];
            for (s, members) in spec.iter() {
                v[upper.id(s)?] = Some(
                    members
                        .iter()
                        .map(|m| lower.id(m))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            let v = v
                .into_iter()
                .enumerate()
                .map(|(j, x)| {
                    x.ok_or_else(|| {
                        Error::Malformed(format!("τ_{i} has no value for `{}`", upper.name(j)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            values.push(v);
        }
        Complex::new(kind, posets, values)
    }

    /// The dimension-0 complex with a single node.
    pub fn point(kind: Mode, name: &str) -> Result<Complex> {
        Complex::new(kind, vec![Poset::chain(&[name])?], Vec::new())
    }

    pub fn kind(&self) -> Mode {
        self.kind
    }

    pub fn with_kind(&self, kind: Mode) -> Complex {
        Complex {
            kind,
            ..self.clone()
        }
    }

    pub fn dimension(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Poset] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &Poset {
        &self.levels[i]
    }

    /// `τ_i`, for `i < dimension`.
    pub fn sigma(&self, i: usize) -> &[Vec<usize>] {
        &self.sigmas[i]
    }

    pub fn sigmas(&self) -> &[Vec<Vec<usize>>] {
        &self.sigmas
    }

    /// `T_{i+1} ◁ T_i` as a view; at `i = dimension` the upper level is empty.
    pub fn view(&self, i: usize) -> ConstellationView<'_> {
        match self.levels.get(i + 1) {
            Some(upper) => ConstellationView {
                lower: &self.levels[i],
                upper,
                sigma: &self.sigmas[i],
            },
            None => ConstellationView {
                lower: &self.levels[i],
                upper: Poset::empty(),
                sigma: &[],
            },
        }
    }

    pub fn constellation_order(&self, i: usize) -> Result<ConstellationOrder> {
        ConstellationOrder::build(self.view(i))
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(Poset::len).sum()
    }

    /// `(level, index)` of a node name.
    pub fn locate(&self, name: &str) -> Option<(usize, usize)> {
        self.levels
            .iter()
            .enumerate()
            .find_map(|(i, l)| l.position(name).map(|j| (i, j)))
    }

    /// Same structure with every node renamed by `f(level, index, old)`.
    pub fn renamed(&self, f: impl Fn(usize, usize, &str) -> String) -> Result<Complex> {
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(i, l)| l.renamed((0..l.len()).map(|j| f(i, j, l.name(j))).collect()))
            .collect::<Result<Vec<_>>>()?;
        Complex::new(self.kind, levels, self.sigmas.clone())
    }
}

pub fn validate_complex(x: &Complex) -> ValidationReport {
    let mut r = ValidationReport::new(format!("{:?} complex", x.kind));
    r.note(format!("dimension {}", x.dimension()));
    for (i, level) in x.levels.iter().enumerate() {
        if level.is_empty() {
            r.fail("empty-level", format!("level {i} is empty"));
        }
    }
    if x.levels[0].len() != 1 {
        r.fail(
            "base-singleton",
            format!(
                "T_0 has {} elements, expected a singleton",
                x.levels[0].len()
            ),
        );
    }
    if x.kind == Mode::Tree && x.levels[x.dimension()].len() != 1 {
        r.fail(
            "top-singleton",
            format!(
                "T_{} has {} elements, expected a singleton",
                x.dimension(),
                x.levels[x.dimension()].len()
            ),
        );
    }
    if x.dimension() == 0 && !x.levels[0].is_empty() && !x.levels[0].classify().is_tree() {
        r.fail("lower-class", "T_0 is not a tree");
    }
    for i in 0..x.dimension() {
        r.absorb(&format!("τ_{i}"), validate_view(x.view(i), x.kind));
    }
    r
}

/// Number of maximal elements per level; `get` is zero above the dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeSequence(pub Vec<usize>);

impl SizeSequence {
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for SizeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "({},0,…)", parts.join(","))
    }
}

pub fn size_of(x: &Complex) -> SizeSequence {
    SizeSequence(x.levels.iter().map(|l| l.maximal().len()).collect())
}

/// Level-wise embeddings `f_i : S_i → T_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMorphism {
    pub source: Complex,
    pub target: Complex,
    pub maps: Vec<Vec<usize>>,
}

impl ComplexMorphism {
    pub fn new(source: Complex, target: Complex, maps: Vec<Vec<usize>>) -> Result<ComplexMorphism> {
        if source.dimension() > target.dimension() {
            return Err(Error::Malformed(
                "source dimension exceeds target dimension".into(),
            ));
        }
        if maps.len() != source.levels.len() {
            return Err(Error::Malformed(format!(
                "{} level maps for {} levels",
                maps.len(),
                source.levels.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.len() != source.levels[i].len() || m.iter().any(|&y| y >= target.levels[i].len()) {
                return Err(Error::Malformed(format!(
                    "level map {i} is not a total map into T_{i}"
                )));
            }
        }
        Ok(ComplexMorphism {
            source,
            target,
            maps,
        })
    }

    /// Builds a morphism from a flat `source name → target name` assignment.
    pub fn from_names(
        source: Complex,
        target: Complex,
        pairs: &[(&str, &str)],
    ) -> Result<ComplexMorphism> {
        let mut maps: Vec<Vec<Option<usize>>> =
            source.levels.iter().map(|l| vec![None; l.len()]).collect();
        for (a, b) in pairs {
            let (i, x) = source
                .locate(a)
                .ok_or_else(|| Error::UnknownElement(a.to_string()))?;
            let y = target
                .levels
                .get(i)
                .and_then(|l| l.position(b))
                .ok_or_else(|| Error::UnknownElement(format!("{b} (level {i} of the target)")))?;
            maps[i][x] = Some(y);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.into_iter()
                    .enumerate()
                    .map(|(x, y)| {
                        y.ok_or_else(|| {
                            Error::Malformed(format!("no image for `{}`", source.levels[i].name(x)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ComplexMorphism::new(source, target, maps)
    }

    pub fn identity(x: &Complex) -> ComplexMorphism {
        let maps = x.levels.iter().map(|l| (0..l.len()).collect()).collect();
        ComplexMorphism {
            source: x.clone(),
            target: x.clone(),
            maps,
        }
    }

    /// Flat `(source name, target name)` pairs, sorted.
    pub fn name_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, m) in self.maps.iter().enumerate() {
            for (x, &y) in m.iter().enumerate() {
                out.push((
                    self.source.levels[i].name(x).to_string(),
                    self.target.levels[i].name(y).to_string(),
                ));
            }
        }
        out.sort();
        out
    }
}

pub fn validate_complex_morphism(f: &ComplexMorphism) -> ValidationReport {
    let mut r = ValidationReport::new("complex morphism");
    for i in 0..=f.source.dimension() {
        let upper_map: &[usize] = f.maps.get(i + 1).map_or(&[], |m| m.as_slice());
        let rep = validate_constellation_morphism(
            upper_map,
            &f.maps[i],
            f.source.view(i),
            f.target.view(i),
        );
        r.absorb(&format!("level {i}"), rep);
    }
    r
}

pub fn compose_complex_morphisms(
    g: &ComplexMorphism,
    f: &ComplexMorphism,
) -> Result<ComplexMorphism> {
    if f.target != g.source {
        return Err(Error::EndpointMismatch(
            "target of the first morphism is not the source of the second".into(),
        ));
    }
    let maps = f
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| m.iter().map(|&x| g.maps[i][x]).collect())
        .collect();
    ComplexMorphism::new(f.source.clone(), g.target.clone(), maps)
}

fn node_signature(x: &Complex, i: usize, u: usize) -> [usize; 6] {
    let l = &x.levels[i];
    let sigma_size = if i > 0 { x.sigmas[i - 1][u].len() } else { 0 };
    let fiber = x.sigmas.get(i).map_or(0, |s| {
        s.iter().filter(|v| v.binary_search(&u).is_ok()).count()
    });
    [
        l.children(u).len(),
        l.parents(u).len(),
        l.down_set(u).len(),
        l.up_set(u).len(),
        sigma_size,
        fiber,
    ]
}

/// Searches for an isomorphism `x → y`, returning the witness morphism.
pub fn complexes_isomorphic(x: &Complex, y: &Complex) -> Option<ComplexMorphism> {
    if x.kind != y.kind || x.levels.len() != y.levels.len() {
        return None;
    }
    if x.levels
        .iter()
        .zip(&y.levels)
        .any(|(a, b)| a.len() != b.len())
    {
        return None;
    }
    let order: Vec<(usize, usize)> = x
        .levels
        .iter()
        .enumerate()
        .flat_map(|(i, l)| (0..l.len()).map(move |u| (i, u)))
        .collect();
    let sig_x: Vec<Vec<[usize; 6]>> = (0..x.levels.len())
        .map(|i| {
            (0..x.levels[i].len())
                .map(|u| node_signature(x, i, u))
                .collect()
        })
        .collect();
    let sig_y: Vec<Vec<[usize; 6]>> = (0..y.levels.len())
        .map(|i| {
            (0..y.levels[i].len())
                .map(|u| node_signature(y, i, u))
                .collect()
        })
        .collect();
    let mut maps: Vec<Vec<usize>> = x.levels.iter().map(|l| vec![usize::MAX; l.len()]).collect();
    let mut used: Vec<Vec<bool>> = y.levels.iter().map(|l| vec![false; l.len()]).collect();

    struct Search<'a> {
        x: &'a Complex,
        y: &'a Complex,
        order: &'a [(usize, usize)],
        sig_x: &'a [Vec<[usize; 6]>],
        sig_y: &'a [Vec<[usize; 6]>],
    }

    fn go(
        s: &Search<'_>,
        pos: usize,
        maps: &mut Vec<Vec<usize>>,
        used: &mut Vec<Vec<bool>>,
    ) -> bool {
        let Some(&(i, u)) = s.order.get(pos) else {
            return true;
        };
        let (lx, ly) = (&s.x.levels[i], &s.y.levels[i]);
        for v in 0..ly.len() {
            if used[i][v] || s.sig_x[i][u] != s.sig_y[i][v] {
                continue;
            }
            let consistent = (0..lx.len())
                .filter(|&w| maps[i][w] != usize::MAX)
                .all(|w| {
                    let w2 = maps[i][w];
                    lx.le(u, w) == ly.le(v, w2) && lx.le(w, u) == ly.le(w2, v)
                });
            if !consistent {
                continue;
            }
            if i > 0 {
                let mut image: Vec<usize> = s.x.sigmas[i - 1][u]
                    .iter()
                    .map(|&m| maps[i - 1][m])
                    .collect();
                image.sort_unstable();
                if image != s.y.sigmas[i - 1][v] {
                    continue;
                }
            }
            maps[i][u] = v;
            used[i][v] = true;
            if go(s, pos + 1, maps, used) {
                return true;
            }
            maps[i][u] = usize::MAX;
            used[i][v] = false;
        }
        false
    }

    let search = Search {
        x,
        y,
        order: &order,
        sig_x: &sig_x,
        sig_y: &sig_y,
    };
    if go(&search, 0, &mut maps, &mut used) {
        Some(ComplexMorphism {
            source: x.clone(),
            target: y.clone(),
            maps,
        })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_validate() {
        let t3 = fixtures::t3();
        let r = validate_complex(&t3);
        assert!(r.passed(), "{r}");
        assert_eq!(t3.dimension(), 3);
        assert_eq!(size_of(&t3), SizeSequence(vec![1, 1, 1, 1]));
        let thk = fixtures::thk();
        assert!(validate_complex(&thk).passed());
        assert!(!validate_complex(&thk.with_kind(Mode::Tree)).passed());
        assert_eq!(size_of(&thk), SizeSequence(vec![1, 1, 2]));
        let point = Complex::point(Mode::Tree, "p").unwrap();
        assert!(validate_complex(&point).passed());
        assert_eq!(size_of(&point).to_string(), "(1,0,…)");
    }

    #[test]
    fn unit_sizes_do_not_force_tree_kind() {
        // A 2-cell whiskered by an edge: every level is a tree and every size
        // entry is 1, but σ_1(b) misses the top of level 1.
        let x = Complex::from_spec(
            Mode::Thicket,
            &[(&["o"], &[]), (&["a", "c"], &[("a", "c")]), (&["b"], &[])],
            &[&[("a", &["o"]), ("c", &["o"])], &[("b", &["a"])]],
        )
        .unwrap();
        assert!(validate_complex(&x).passed());
        assert!(x.levels().iter().all(|l| l.classify().is_tree()));
        assert_eq!(size_of(&x), SizeSequence(vec![1, 1, 1]));
        assert!(!validate_complex(&x.with_kind(Mode::Tree)).passed());
    }

    #[test]
    fn base_must_be_a_singleton() {
        let bad = Complex::from_spec(
            Mode::Tree,
            &[
                (&["t_3", "t_9"], &[]),
                (&["y_3", "y_2"], &[("y_3", "y_2")]),
                (&["b"], &[]),
            ],
            &[
                &[("y_2", &["t_3"]), ("y_3", &["t_3"])],
                &[("b", &["y_2", "y_3"])],
            ],
        )
        .unwrap();
        let r = validate_complex(&bad);
        assert!(r.has("base-singleton"), "{r}");
    }

    #[test]
    fn f32_star_and_a_broken_variant() {
        let f = fixtures::f32_star();
        assert!(validate_complex_morphism(&f).passed());
        let id = ComplexMorphism::identity(&fixtures::t3());
        assert!(validate_complex_morphism(&id).passed());
        let broken = ComplexMorphism::from_names(
            fixtures::t2(),
            fixtures::t3(),
            &[("t_3", "t_4"), ("y_2", "y_4"), ("y_3", "y_6"), ("b", "b_3")],
        )
        .unwrap();
        assert!(!validate_complex_morphism(&broken).passed());
        let left =
            compose_complex_morphisms(&ComplexMorphism::identity(&fixtures::t3()), &f).unwrap();
        let right =
            compose_complex_morphisms(&f, &ComplexMorphism::identity(&fixtures::t2())).unwrap();
        assert_eq!(left, f);
        assert_eq!(right, f);
    }

    #[test]
    fn isomorphism_search() {
        let t3 = fixtures::t3();
        let renamed = t3.renamed(|i, j, _| format!("n{i}_{j}")).unwrap();
        let w = complexes_isomorphic(&t3, &renamed).expect("renaming is an isomorphism");
        assert!(validate_complex_morphism(&w).passed());
        assert!(complexes_isomorphic(&fixtures::t2(), &t3).is_none());
    }
}
