//! The ω-category `T*` of an opetopic cardinal `T`: cells `(S, n)` with `S` a
//! sub-cardinal of `T` and `dim S ≤ n`, boundaries, identities and composition
//! by union.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::{Face, FaceSet, HypergraphClass, IotaReading, PositiveHypergraph};
use crate::report::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub carrier: FaceSet,
    pub level: usize,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.carrier.iter().map(|f| f.dim).max().unwrap_or(0)
    }

    pub fn is_proper(&self) -> bool {
        self.level == self.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Domain,
    Codomain,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Domain => "d",
            Side::Codomain => "c",
        })
    }
}

/// Cell operations inside a fixed host cardinal.
pub struct Omega<'a> {
    host: &'a PositiveHypergraph,
    reading: IotaReading,
    cardinal_cache: std::cell::RefCell<HashMap<FaceSet, bool>>,
}

impl<'a> Omega<'a> {
    pub fn new(host: &'a PositiveHypergraph, reading: IotaReading) -> Result<Omega<'a>> {
        let c = host.classify();
        if c.class == HypergraphClass::Hypergraph {
            return Err(Error::Malformed(format!(
                "host is not an opetopic cardinal: {:?}",
                c.failures
            )));
        }
        Ok(Omega {
            host,
            reading,
            cardinal_cache: Default::default(),
        })
    }

    pub fn host(&self) -> &PositiveHypergraph {
        self.host
    }

    /// Whether `set` spans a sub-hypergraph that is an opetopic cardinal.
    pub fn is_sub_cardinal(&self, set: &FaceSet) -> bool {
        if let Some(&b) = self.cardinal_cache.borrow().get(set) {
            return b;
        }
        let ok = !set.is_empty()
            && self
                .host
                .sub(set)
                .is_ok_and(|(s, _)| s.classify().class != HypergraphClass::Hypergraph);
        self.cardinal_cache.borrow_mut().insert(set.clone(), ok);
        ok
    }

    pub fn cell(&self, carrier: FaceSet, level: usize) -> Result<Cell> {
        if !self.host.is_closed(&carrier) || carrier.is_empty() {
            return Err(Error::Malformed(
                "cell carrier is not a nonempty γ/δ-closed face set".into(),
            ));
        }
        let c = Cell { carrier, level };
        if c.dim() > level {
            return Err(Error::LevelOutOfRange {
                k: level,
                level: c.dim(),
            });
        }
        Ok(c)
    }

    /// `(T[x], dim x)`.
    pub fn principal(&self, x: Face) -> Cell {
        Cell {
            carrier: self.host.principal(x),
            level: x.dim,
        }
    }

    /// Both boundary formulas for any `k ≤ level`; at `k ≥ dim S` they return `S`.
    fn boundary_raw(&self, c: &Cell, side: Side, k: usize) -> Cell {
        let at = |d: usize| -> Vec<usize> {
            c.carrier
                .iter()
                .filter(|f| f.dim == d)
                .map(|f| f.idx)
                .collect()
        };
        let above = at(k + 1);
        let mut carrier = FaceSet::new();
        let removed_k: HashSet<usize> = match side {
            Side::Domain => above.iter().map(|&a| self.host.gamma_idx(k, a)).collect(),
            Side::Codomain => above
                .iter()
                .flat_map(|&a| self.host.delta_idx(Face::new(k + 1, a)).iter().copied())
                .collect(),
        };
        let removed_below: HashSet<usize> = if side == Side::Codomain && k >= 1 && !above.is_empty()
        {
            self.host
                .iota(k + 1, &above, self.reading)
                .into_iter()
                .collect()
        } else {
            HashSet::new()
        };
        for &f in &c.carrier {
            let keep = if f.dim > k {
                false
            } else if f.dim == k {
                !removed_k.contains(&f.idx)
            } else if f.dim + 1 == k {
                !removed_below.contains(&f.idx)
            } else {
                true
            };
            if keep {
                carrier.insert(f);
            }
        }
        Cell { carrier, level: k }
    }

    pub fn boundary(&self, c: &Cell, side: Side, k: usize) -> Result<Cell> {
        if k >= c.level {
            return Err(Error::LevelOutOfRange { k, level: c.level });
        }
        Ok(self.boundary_raw(c, side, k))
    }

    pub fn identity(&self, c: &Cell) -> Cell {
        Cell {
            carrier: c.carrier.clone(),
            level: c.level + 1,
        }
    }

    /// `a ∘_k b`, defined when `d⁽ᵏ⁾(a) = c⁽ᵏ⁾(b)`.
    pub fn compose(&self, a: &Cell, b: &Cell, k: usize) -> Result<Cell> {
        if k > a.level.min(b.level) {
            return Err(Error::NotComposable {
                k,
                detail: "k exceeds a cell level".into(),
            });
        }
        let da = self.boundary_raw(a, Side::Domain, k);
        let cb = self.boundary_raw(b, Side::Codomain, k);
        if da != cb {
            return Err(Error::NotComposable {
                k,
                detail: format!(
                    "d({}) = {} but c({}) = {}",
                    self.show(a),
                    self.show(&da),
                    self.show(b),
                    self.show(&cb)
                ),
            });
        }
        Ok(Cell {
            carrier: a.carrier.union(&b.carrier).copied().collect(),
            level: a.level.max(b.level),
        })
    }

    pub fn show(&self, c: &Cell) -> String {
        let names: Vec<&str> = c.carrier.iter().map(|&f| self.host.name(f)).collect();
        format!("({{{}}}, {})", names.join(","), c.level)
    }

    /// Connected unions of principal sub-hypergraphs that are cardinals.
    pub fn carriers(&self) -> Vec<FaceSet> {
        let principals: Vec<FaceSet> = self.host.faces().map(|f| self.host.principal(f)).collect();
        let mut seen: HashSet<FaceSet> = HashSet::new();
        let mut queue: VecDeque<FaceSet> = VecDeque::new();
        for p in &principals {
            if seen.insert(p.clone()) {
                queue.push_back(p.clone());
            }
        }
        while let Some(s) = queue.pop_front() {
            for p in &principals {
                if p.is_subset(&s) || p.is_disjoint(&s) {
                    continue;
                }
                let u: FaceSet = s.union(p).copied().collect();
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        let mut out: Vec<FaceSet> = seen
            .into_iter()
            .filter(|s| self.is_sub_cardinal(s))
            .collect();
        out.sort();
        out
    }

    /// Exhaustive law sweep over cells `(S, n)` with `S` from [`Omega::carriers`]
    /// and `dim S ≤ n ≤ max_level`.
    pub fn check_laws(&self, max_level: usize) -> ValidationReport {
        LawSweep::new(self, max_level).run()
    }
}

struct LawSweep<'o, 'a> {
    om: &'o Omega<'a>,
    max_level: usize,
    cells: Vec<Cell>,
    report: ValidationReport,
    failures_per_law: HashMap<&'static str, usize>,
}

const MAX_REPORTED: usize = 5;

impl<'o, 'a> LawSweep<'o, 'a> {
    fn new(om: &'o Omega<'a>, max_level: usize) -> Self {
        let mut cells = Vec::new();
        for s in om.carriers() {
            let c = Cell {
                carrier: s,
                level: 0,
            };
            for n in c.dim()..=max_level {
                cells.push(Cell {
                    carrier: c.carrier.clone(),
                    level: n,
                });
            }
        }
        LawSweep {
            om,
            max_level,
            cells,
            report: ValidationReport::new("ω-laws"),
            failures_per_law: HashMap::new(),
        }
    }

    fn fail(&mut self, code: &'static str, msg: impl FnOnce() -> String) {
        let n = self.failures_per_law.entry(code).or_insert(0);
        *n += 1;
        if *n <= MAX_REPORTED {
            let m = msg();
            self.report.fail(code, m);
        }
    }

    fn bd(&self, c: &Cell, side: Side, k: usize) -> Cell {
        self.om.boundary_raw(c, side, k)
    }

    /// Boundary of `c` viewed at level `l`, lifting lower cells by identities.
    fn bd_ext(&self, c: &Cell, side: Side, l: usize) -> Cell {
        if l >= c.level {
            Cell {
                carrier: c.carrier.clone(),
                level: l,
            }
        } else {
            self.bd(c, side, l)
        }
    }

    fn composable(&self, a: &Cell, b: &Cell, k: usize) -> bool {
        k <= a.level.min(b.level) && self.bd(a, Side::Domain, k) == self.bd(b, Side::Codomain, k)
    }

    fn union(a: &Cell, b: &Cell) -> Cell {
        Cell {
            carrier: a.carrier.union(&b.carrier).copied().collect(),
            level: a.level.max(b.level),
        }
    }

    fn run(mut self) -> ValidationReport {
        let cells = std::mem::take(&mut self.cells);
        self.report.note(format!(
            "{} cells up to level {}",
            cells.len(),
            self.max_level
        ));
        self.boundaries_and_units(&cells);
        // Composable pairs along each k, indexed by the shared boundary.
        for k in 0..=self.max_level {
            let mut by_codomain: HashMap<Cell, Vec<usize>> = HashMap::new();
            let mut by_domain: HashMap<Cell, Vec<usize>> = HashMap::new();
            for (i, c) in cells.iter().enumerate() {
                if c.level >= k {
                    by_codomain
                        .entry(self.bd(c, Side::Codomain, k))
                        .or_default()
                        .push(i);
                    by_domain
                        .entry(self.bd(c, Side::Domain, k))
                        .or_default()
                        .push(i);
                }
            }
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for (i, a) in cells.iter().enumerate() {
                if a.level < k {
                    continue;
                }
                if let Some(bs) = by_codomain.get(&self.bd(a, Side::Domain, k)) {
                    pairs.extend(bs.iter().map(|&j| (i, j)));
                }
            }
            for &(i, j) in &pairs {
                self.composite_laws(&cells[i], &cells[j], k);
            }
            self.associativity(&cells, &pairs, &by_codomain, k);
        }
        self.interchange(&cells);
        for (code, n) in &self.failures_per_law {
            if *n > MAX_REPORTED {
                self.report.note(format!("{code}: {n} failures in total"));
            }
        }
        if !self.report.passed() {
            self.report
                .note("a failing ω-law is evidence against the chosen ι reading");
        }
        self.report
    }

    fn boundaries_and_units(&mut self, cells: &[Cell]) {
        for c in cells {
            for k in 0..c.level {
                for side in [Side::Domain, Side::Codomain] {
                    let b = self.bd(c, side, k);
                    if !self.om.host.is_closed(&b.carrier)
                        || !self.om.is_sub_cardinal(&b.carrier)
                        || b.dim() > k
                    {
                        let (s, bs) = (self.om.show(c), self.om.show(&b));
                        self.fail("boundary-cardinal", || {
                            format!("{side}⁽{k}⁾{s} = {bs} is not a cardinal")
                        });
                    }
                    for j in 0..k {
                        let direct_d = self.bd(c, Side::Domain, j);
                        let direct_c = self.bd(c, Side::Codomain, j);
                        if self.bd(&b, Side::Domain, j) != direct_d
                            || self.bd(&b, Side::Codomain, j) != direct_c
                        {
                            let s = self.om.show(c);
                            self.fail("globularity", || {
                                format!("boundaries of {side}⁽{k}⁾{s} at {j} disagree")
                            });
                        }
                    }
                }
                // Units: c ∘_k id(d⁽ᵏ⁾c) = c = id(c⁽ᵏ⁾c) ∘_k c.
                let lift = |x: Cell| Cell {
                    carrier: x.carrier,
                    level: c.level,
                };
                let du = lift(self.bd(c, Side::Domain, k));
                let cu = lift(self.bd(c, Side::Codomain, k));
                let right_ok = self.composable(c, &du, k) && Self::union(c, &du) == *c;
                let left_ok = self.composable(&cu, c, k) && Self::union(&cu, c) == *c;
                if !(right_ok && left_ok) {
                    let s = self.om.show(c);
                    self.fail("unit", || format!("unit law fails for {s} along {k}"));
                }
            }
            let id = self.om.identity(c);
            if self.bd(&id, Side::Domain, c.level) != *c
                || self.bd(&id, Side::Codomain, c.level) != *c
            {
                let s = self.om.show(c);
                self.fail("identity", || format!("boundaries of id{s} are not {s}"));
            }
        }
    }

    fn composite_laws(&mut self, a: &Cell, b: &Cell, k: usize) {
        let ab = Self::union(a, b);
        if !self.om.is_sub_cardinal(&ab.carrier) {
            let (sa, sb) = (self.om.show(a), self.om.show(b));
            self.fail("composite-cardinal", || {
                format!("{sa} ∘{k} {sb} is not a cardinal")
            });
            return;
        }
        if k < ab.level
            && (self.bd(&ab, Side::Domain, k) != self.bd(b, Side::Domain, k)
                || self.bd(&ab, Side::Codomain, k) != self.bd(a, Side::Codomain, k))
        {
            let (sa, sb) = (self.om.show(a), self.om.show(b));
            self.fail("composite-boundary", || {
                format!("boundaries of {sa} ∘{k} {sb} at {k} are wrong")
            });
        }
        for l in k + 1..ab.level {
            for side in [Side::Domain, Side::Codomain] {
                let (ba, bb) = (self.bd_ext(a, side, l), self.bd_ext(b, side, l));
                let ok =
                    self.composable(&ba, &bb, k) && Self::union(&ba, &bb) == self.bd(&ab, side, l);
                if !ok {
                    let (sa, sb) = (self.om.show(a), self.om.show(b));
                    self.fail("composite-boundary", || {
                        format!("{side}⁽{l}⁾ does not distribute over {sa} ∘{k} {sb}")
                    });
                }
            }
        }
    }

    fn associativity(
        &mut self,
        cells: &[Cell],
        pairs: &[(usize, usize)],
        by_codomain: &HashMap<Cell, Vec<usize>>,
        k: usize,
    ) {
        for &(i, j) in pairs {
            let (a, b) = (&cells[i], &cells[j]);
            let Some(cs) = by_codomain.get(&self.bd(b, Side::Domain, k)) else {
                continue;
            };
            let ab = Self::union(a, b);
            for &m in cs {
                let c = &cells[m];
                let bc = Self::union(b, c);
                let left = self.composable(&ab, c, k);
                let right = self.composable(a, &bc, k);
                if !(left && right) {
                    let (sa, sb, sc) = (self.om.show(a), self.om.show(b), self.om.show(c));
                    self.fail("associativity", || {
                        format!("({sa} ∘{k} {sb}) ∘{k} {sc} is not defined on both sides")
                    });
                }
            }
        }
    }

    /// `(a ∘_l b) ∘_k (c ∘_l d) = (a ∘_k c) ∘_l (b ∘_k d)` for `k < l`.
    fn interchange(&mut self, cells: &[Cell]) {
        for l in 1..=self.max_level {
            let mut by_codomain_l: HashMap<Cell, Vec<usize>> = HashMap::new();
            for (i, c) in cells.iter().enumerate() {
                if c.level >= l {
                    by_codomain_l
                        .entry(self.bd(c, Side::Codomain, l))
                        .or_default()
                        .push(i);
                }
            }
            for k in 0..l {
                let mut by_codomain_k: HashMap<Cell, Vec<usize>> = HashMap::new();
                for (i, c) in cells.iter().enumerate() {
                    if c.level >= l {
                        by_codomain_k
                            .entry(self.bd(c, Side::Codomain, k))
                            .or_default()
                            .push(i);
                    }
                }
                for a in cells.iter().filter(|c| c.level >= l) {
                    let (Some(bs), Some(cs)) = (
                        by_codomain_l.get(&self.bd(a, Side::Domain, l)),
                        by_codomain_k.get(&self.bd(a, Side::Domain, k)),
                    ) else {
                        continue;
                    };
                    for &ci in cs {
                        let c = &cells[ci];
                        let Some(ds) = by_codomain_l.get(&self.bd(c, Side::Domain, l)) else {
                            continue;
                        };
                        for &bi in bs {
                            let b = &cells[bi];
                            for &di in ds {
                                let d = &cells[di];
                                if !self.composable(b, d, k) {
                                    continue;
                                }
                                let (ab, cd) = (Self::union(a, b), Self::union(c, d));
                                let (ac, bd) = (Self::union(a, c), Self::union(b, d));
                                let ok = self.composable(&ab, &cd, k)
                                    && self.composable(&ac, &bd, l)
                                    && Self::union(&ab, &cd) == Self::union(&ac, &bd);
                                if !ok {
                                    let s = [a, b, c, d].map(|x| self.om.show(x)).join(", ");
                                    self.fail("interchange", || {
                                        format!("interchange fails for ({s}) at k={k}, l={l}")
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Exhaustive ω-law check on a cardinal.
pub fn check_omega_laws(
    t: &PositiveHypergraph,
    max_level: usize,
    reading: IotaReading,
) -> Result<ValidationReport> {
    Ok(Omega::new(t, reading)?.check_laws(max_level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(h: &PositiveHypergraph, c: &Cell) -> Vec<String> {
        c.carrier.iter().map(|&f| h.name(f).to_string()).collect()
    }

    #[test]
    fn o2_boundaries() {
        let o2 = fixtures::o2();
        let om = Omega::new(&o2, IotaReading::FaceWise).unwrap();
        let top = om.principal(o2.face("b").unwrap());
        assert_eq!(top.carrier.len(), 7);
        let c1 = om.boundary(&top, Side::Codomain, 1).unwrap();
        assert_eq!(names(&o2, &c1), vec!["t_1", "t_3", "y_1"]);
        let d1 = om.boundary(&top, Side::Domain, 1).unwrap();
        assert_eq!(names(&o2, &d1), vec!["t_1", "t_2", "t_3", "y_2", "y_3"]);
        assert!(om.boundary(&top, Side::Domain, 2).is_err());
        let id = om.identity(&top);
        assert_eq!(id.level, 3);
        assert_eq!(om.boundary(&id, Side::Domain, 2).unwrap(), top);
        let low = om.cell(d1.carrier.clone(), 3).unwrap();
        assert_eq!(
            om.boundary(&low, Side::Codomain, 2).unwrap().carrier,
            d1.carrier
        );
        assert!(om.compose(&top, &top, 1).is_err());
        let set_level = Omega::new(&o2, IotaReading::SetLevel).unwrap();
        assert_eq!(set_level.boundary(&top, Side::Codomain, 1).unwrap(), c1);
    }

    #[test]
    fn scard_composition_along_a_point() {
        let s = fixtures::scard();
        let om = Omega::new(&s, IotaReading::FaceWise).unwrap();
        let a0 = om.cell(s.principal(s.face("a_0").unwrap()), 2).unwrap();
        let x3 = om.cell(s.principal(s.face("x_3").unwrap()), 2).unwrap();
        let comp = om.compose(&a0, &x3, 0).unwrap();
        assert_eq!(comp.level, 2);
        assert_eq!(comp.carrier.len(), a0.carrier.len() + 2);
        let d = om.boundary(&a0, Side::Domain, 0).unwrap();
        assert_eq!(names(&s, &d), vec!["s_2"]);
        let unit = Cell {
            carrier: d.carrier.clone(),
            level: 2,
        };
        assert_eq!(om.compose(&a0, &unit, 0).unwrap(), a0);
    }

    /// Two 2-cells side by side, meeting only at the point `q`.
    fn whiskered_pair() -> PositiveHypergraph {
        PositiveHypergraph::builder()
            .points(&["p", "q", "r"])
            .cell("f1", "q", &["p"])
            .cell("g1", "q", &["p"])
            .cell("f2", "r", &["q"])
            .cell("g2", "r", &["q"])
            .cell("A", "g1", &["f1"])
            .cell("B", "g2", &["f2"])
            .build()
            .unwrap()
    }

    #[test]
    fn set_level_iota_breaks_codomains() {
        let h = whiskered_pair();
        assert_eq!(h.classify().class, HypergraphClass::Cardinal);
        let all: FaceSet = h.faces().collect();
        let face_wise = Omega::new(&h, IotaReading::FaceWise).unwrap();
        let top = face_wise.cell(all.clone(), 2).unwrap();
        let c1 = face_wise.boundary(&top, Side::Codomain, 1).unwrap();
        assert_eq!(names(&h, &c1), vec!["p", "q", "r", "g1", "g2"]);
        let set_level = Omega::new(&h, IotaReading::SetLevel).unwrap();
        let c1 = set_level.boundary(&top, Side::Codomain, 1).unwrap();
        assert!(!h.is_closed(&c1.carrier));
        assert!(check_omega_laws(&h, 3, IotaReading::FaceWise)
            .unwrap()
            .passed());
        assert!(check_omega_laws(&h, 3, IotaReading::SetLevel)
            .unwrap()
            .has("boundary-cardinal"));
    }

    #[test]
    fn laws_on_small_fixtures() {
        for h in [fixtures::o1(), fixtures::o2()] {
            let r = check_omega_laws(&h, 3, IotaReading::FaceWise).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
