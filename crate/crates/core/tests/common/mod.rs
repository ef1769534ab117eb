#![allow(dead_code)]

use std::sync::OnceLock;

use opetope::{
    dualize_complex, enumerate_complexes, enumerate_iota_epis, Complex, EnumSpec, IotaMap, Mode,
    PositiveHypergraph,
};

pub fn complexes(kind: Mode, max_nodes: usize) -> Vec<Complex> {
    enumerate_complexes(&EnumSpec::new(kind, max_nodes))
}

/// Tree complexes with at most 6 nodes and their duals.
pub fn small_opetopes() -> &'static [(Complex, PositiveHypergraph)] {
    static CELL: OnceLock<Vec<(Complex, PositiveHypergraph)>> = OnceLock::new();
    CELL.get_or_init(|| {
        complexes(Mode::Tree, 6)
            .into_iter()
            .map(|x| {
                let p = dualize_complex(&x).expect("dual");
                (x, p)
            })
            .collect()
    })
}

/// `epis()[a][b]` lists the ι-epis from opetope `a` to opetope `b` of [`small_opetopes`].
pub fn epis() -> &'static [Vec<Vec<IotaMap>>] {
    static CELL: OnceLock<Vec<Vec<Vec<IotaMap>>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let ps = small_opetopes();
        ps.iter()
            .map(|(_, p)| ps.iter().map(|(_, q)| enumerate_iota_epis(p, q)).collect())
            .collect()
    })
}

/// Every `(f, g)` with `f : a → b`, `g : b → c` drawn from [`epis`].
pub fn composable_pairs() -> Vec<(&'static IotaMap, &'static IotaMap)> {
    let e = epis();
    let n = e.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for f in &e[a][b] {
                    for g in &e[b][c] {
                        out.push((f, g));
                    }
                }
            }
        }
    }
    out
}
