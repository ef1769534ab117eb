//! Brute-force oracles for the enumerators: independent generation, filtered
//! by the validators, deduplicated by isomorphism search.

use std::collections::{BTreeMap, BTreeSet};

use opetope::{
    analyze_iota_map, complexes_isomorphic, enumerate_complexes, enumerate_iota_epis,
    enumerate_trees, validate_complex, Complex, EnumSpec, Face, IotaMap, Mode, Poset,
    PositiveHypergraph,
};

mod common;

/// AHU code of the subtree under `v` given children lists.
fn ahu(children: &[Vec<usize>], v: usize) -> String {
    let mut codes: Vec<String> = children[v].iter().map(|&c| ahu(children, c)).collect();
    codes.sort();
    format!("({})", codes.concat())
}

fn poset_ahu(t: &Poset) -> String {
    let children: Vec<Vec<usize>> = (0..t.len()).map(|i| t.children(i).to_vec()).collect();
    ahu(&children, t.greatest().expect("rooted"))
}

#[test]
fn trees_match_parent_array_oracle() {
    for n in 1..=7usize {
        let mut codes = BTreeSet::new();
        let mut parents = vec![0usize; n];
        // Node i > 0 picks a parent among 0..i: every rooted tree has such a labelling.
        loop {
            let mut children = vec![Vec::new(); n];
            for i in 1..n {
                children[parents[i]].push(i);
            }
            codes.insert(ahu(&children, 0));
            let mut i = n.saturating_sub(1);
            loop {
                if i == 0 {
                    break;
                }
                if parents[i] + 1 < i {
                    parents[i] += 1;
                    break;
                }
                parents[i] = 0;
                i -= 1;
            }
            if i == 0 {
                break;
            }
        }
        let ours: BTreeSet<String> = enumerate_trees(n).iter().map(poset_ahu).collect();
        assert_eq!(
            enumerate_trees(n).len(),
            ours.len(),
            "duplicates at n = {n}"
        );
        assert_eq!(ours, codes, "n = {n}");
    }
}

/// Labelled forests on `n` nodes as cover lists, trees only when `rooted`.
fn labelled_forests(n: usize, rooted: bool) -> Vec<Poset> {
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        // choice[i] == n means "no parent".
        let parent = |i: usize| (choice[i] < n).then_some(choice[i]);
        let acyclic = (0..n).all(|start| {
            let mut x = start;
            for _ in 0..=n {
                match parent(x) {
                    Some(p) if p == start => return false,
                    Some(p) => x = p,
                    None => return true,
                }
            }
            false
        });
        let roots = (0..n).filter(|&i| parent(i).is_none()).count();
        if acyclic && (0..n).all(|i| parent(i) != Some(i)) && (!rooted || roots == 1) {
            let names = (0..n).map(|i| format!("u{i}")).collect();
            let covers = (0..n).filter_map(|i| parent(i).map(|p| (i, p))).collect();
            out.push(Poset::new(names, covers).unwrap());
        }
        let mut i = 0;
        while i < n {
            choice[i] += 1;
            if choice[i] <= n {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out
}

/// Level-size sequences `(1, m_1, …)` with total at most `total`.
fn level_sizes(total: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![1]];
    let mut stack = vec![vec![1]];
    while let Some(seq) = stack.pop() {
        let used: usize = seq.iter().sum();
        for m in 1..=total - used {
            let mut s = seq.clone();
            s.push(m);
            out.push(s.clone());
            stack.push(s);
        }
    }
    out
}

fn oracle_complexes(kind: Mode, max_nodes: usize) -> BTreeMap<Vec<usize>, usize> {
    let mut counts = BTreeMap::new();
    for sizes in level_sizes(max_nodes) {
        let mut reps: Vec<Complex> = Vec::new();
        let level_choices: Vec<Vec<Poset>> = sizes
            .iter()
            .map(|&m| labelled_forests(m, kind == Mode::Tree))
            .collect();
        let mut idx = vec![0usize; sizes.len()];
        loop {
            let levels: Vec<Poset> = idx
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    let p = &level_choices[i][j];
                    p.renamed((0..p.len()).map(|u| format!("l{i}u{u}")).collect())
                        .unwrap()
                })
                .collect();
            // Every σ_i(u) ranges over all nonempty subsets of level i.
            let slots: Vec<(usize, usize)> = (1..levels.len())
                .flat_map(|i| (0..levels[i].len()).map(move |u| (i, u)))
                .collect();
            let mut masks = vec![1usize; slots.len()];
            loop {
                let mut sigmas: Vec<Vec<Vec<usize>>> = (1..levels.len())
                    .map(|i| vec![Vec::new(); levels[i].len()])
                    .collect();
                for (&(i, u), &m) in slots.iter().zip(&masks) {
                    sigmas[i - 1][u] = (0..levels[i - 1].len())
                        .filter(|b| m >> b & 1 == 1)
                        .collect();
                }
                if let Ok(x) = Complex::new(kind, levels.clone(), sigmas) {
                    let top_ok = kind == Mode::Thicket || x.level(x.dimension()).len() == 1;
                    if top_ok
                        && validate_complex(&x).passed()
                        && !reps.iter().any(|r| complexes_isomorphic(r, &x).is_some())
                    {
                        reps.push(x);
                    }
                }
                let mut k = 0;
                while k < slots.len() {
                    let (i, _) = slots[k];
                    masks[k] += 1;
                    if masks[k] < 1 << levels[i - 1].len() {
                        break;
                    }
                    masks[k] = 1;
                    k += 1;
                }
                if k == slots.len() {
                    break;
                }
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < level_choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
        if !reps.is_empty() {
            counts.insert(sizes, reps.len());
        }
    }
    counts
}

fn enumerated_counts(kind: Mode, max_nodes: usize) -> BTreeMap<Vec<usize>, usize> {
    let mut counts = BTreeMap::new();
    for x in enumerate_complexes(&EnumSpec::new(kind, max_nodes)) {
        assert!(validate_complex(&x).passed());
        let sizes: Vec<usize> = x.levels().iter().map(Poset::len).collect();
        *counts.entry(sizes).or_insert(0) += 1;
    }
    counts
}

#[test]
fn tree_complexes_match_labelled_oracle() {
    assert_eq!(
        enumerated_counts(Mode::Tree, 6),
        oracle_complexes(Mode::Tree, 6)
    );
}

#[test]
fn thicket_complexes_match_labelled_oracle() {
    assert_eq!(
        enumerated_counts(Mode::Thicket, 5),
        oracle_complexes(Mode::Thicket, 5)
    );
}

/// Every dimension-non-increasing assignment, filtered by the validator.
fn brute_epis(p: &PositiveHypergraph, q: &PositiveHypergraph) -> Option<Vec<IotaMap>> {
    let faces: Vec<Face> = p.faces().collect();
    let options: Vec<Vec<Face>> = faces
        .iter()
        .map(|f| q.faces().filter(|g| g.dim <= f.dim).collect())
        .collect();
    let space: f64 = options.iter().map(|o| o.len() as f64).product();
    if space > 2e4 || options.iter().any(Vec::is_empty) {
        return None;
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; faces.len()];
    loop {
        let mut maps: Vec<Vec<Face>> = (0..p.dims())
            .map(|k| vec![Face::new(0, 0); p.count(k)])
            .collect();
        for (f, (&i, o)) in faces.iter().zip(idx.iter().zip(&options)) {
            maps[f.dim][f.idx] = o[i];
        }
        let m = IotaMap::new(p.clone(), q.clone(), maps).unwrap();
        let a = analyze_iota_map(&m);
        if a.report.passed() && a.epi {
            out.push(m);
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    out.sort_by(|a, b| a.maps.cmp(&b.maps));
    Some(out)
}

#[test]
fn iota_epis_match_exhaustive_assignment_oracle() {
    let ps: Vec<PositiveHypergraph> = common::complexes(Mode::Tree, 5)
        .iter()
        .map(|x| opetope::dualize_complex(x).unwrap())
        .collect();
    let mut compared = 0;
    for p in &ps {
        for q in &ps {
            if let Some(expected) = brute_epis(p, q) {
                assert_eq!(enumerate_iota_epis(p, q), expected);
                compared += 1;
            }
        }
    }
    assert!(
        compared >= 20,
        "only {compared} pairs fit the brute-force budget"
    );
}
