//! Built-in example structures: small opetopes, their dual complexes, the
//! staircase cardinal `SCARD` with its thicket dual `THK`, and the ι-epi `F32`
//! from `O3` onto `O2` together with its dual `F32*`.

use crate::complex::{Complex, ComplexMorphism};
use crate::constellation::Mode;
use crate::hypergraph::PositiveHypergraph;
use crate::iota::IotaMap;

pub const NAMES: &[&str] = &[
    "O1", "O2", "O3", "SCARD", "T1", "T2", "T3", "THK", "F32", "F32*",
];

#[derive(Clone, Debug)]
pub enum Fixture {
    Hypergraph(PositiveHypergraph),
    Complex(Complex),
    Iota(IotaMap),
    ComplexMorphism(ComplexMorphism),
}

pub fn get(name: &str) -> Option<Fixture> {
    Some(match name {
        "O1" => Fixture::Hypergraph(o1()),
        "O2" => Fixture::Hypergraph(o2()),
        "O3" => Fixture::Hypergraph(o3()),
        "SCARD" => Fixture::Hypergraph(scard()),
        "T1" => Fixture::Complex(t1()),
        "T2" => Fixture::Complex(t2()),
        "T3" => Fixture::Complex(t3()),
        "THK" => Fixture::Complex(thk()),
        "F32" => Fixture::Iota(f32()),
        "F32*" => Fixture::ComplexMorphism(f32_star()),
        _ => return None,
    })
}

pub fn o1() -> PositiveHypergraph {
    PositiveHypergraph::builder()
        .points(&["t_1", "t_2"])
        .cell("y", "t_1", &["t_2"])
        .build()
        .expect("O1")
}

pub fn o2() -> PositiveHypergraph {
    PositiveHypergraph::builder()
        .points(&["t_1", "t_2", "t_3"])
        .cell("y_1", "t_1", &["t_3"])
        .cell("y_2", "t_1", &["t_2"])
        .cell("y_3", "t_2", &["t_3"])
        .cell("b", "y_1", &["y_2", "y_3"])
        .build()
        .expect("O2")
}

pub fn o3() -> PositiveHypergraph {
    PositiveHypergraph::builder()
        .points(&["t_0", "t_1", "t_2", "t_3", "t_4"])
        .cell("y_0", "t_0", &["t_4"])
        .cell("y_1", "t_0", &["t_1"])
        .cell("y_2", "t_1", &["t_4"])
        .cell("y_3", "t_1", &["t_3"])
        .cell("y_4", "t_1", &["t_2"])
        .cell("y_5", "t_2", &["t_3"])
        .cell("y_6", "t_3", &["t_4"])
        .cell("b_0", "y_0", &["y_6", "y_5", "y_4", "y_1"])
        .cell("b_1", "y_0", &["y_2", "y_1"])
        .cell("b_2", "y_2", &["y_6", "y_3"])
        .cell("b_3", "y_3", &["y_4", "y_5"])
        .cell("beta", "b_0", &["b_1", "b_2", "b_3"])
        .build()
        .expect("O3")
}

pub fn scard() -> PositiveHypergraph {
    PositiveHypergraph::builder()
        .points(&["s_0", "s_1", "s_2", "s_3", "s_4", "s_5", "s_6", "s_7"])
        .cell("x_0", "s_0", &["s_2"])
        .cell("x_1", "s_0", &["s_1"])
        .cell("x_2", "s_1", &["s_2"])
        .cell("x_3", "s_2", &["s_3"])
        .cell("x_4", "s_3", &["s_7"])
        .cell("x_5", "s_3", &["s_4"])
        .cell("x_6", "s_4", &["s_6"])
        .cell("x_7", "s_4", &["s_5"])
        .cell("x_8", "s_5", &["s_6"])
        .cell("x_9", "s_6", &["s_7"])
        .cell("a_0", "x_0", &["x_2", "x_1"])
        .cell("a_1", "x_4", &["x_9", "x_6", "x_5"])
        .cell("a_2", "x_6", &["x_8", "x_7"])
        .build()
        .expect("SCARD")
}

pub fn t1() -> Complex {
    Complex::from_spec(
        Mode::Tree,
        &[(&["t_2"], &[]), (&["y"], &[])],
        &[&[("y", &["t_2"])]],
    )
    .expect("T1")
}

pub fn t2() -> Complex {
    Complex::from_spec(
        Mode::Tree,
        &[
            (&["t_3"], &[]),
            (&["y_2", "y_3"], &[("y_3", "y_2")]),
            (&["b"], &[]),
        ],
        &[
            &[("y_2", &["t_3"]), ("y_3", &["t_3"])],
            &[("b", &["y_2", "y_3"])],
        ],
    )
    .expect("T2")
}

pub fn t3() -> Complex {
    Complex::from_spec(
        Mode::Tree,
        &[
            (&["t_4"], &[]),
            (
                &["y_1", "y_4", "y_5", "y_6"],
                &[("y_6", "y_5"), ("y_5", "y_4"), ("y_4", "y_1")],
            ),
            (&["b_1", "b_2", "b_3"], &[("b_3", "b_2"), ("b_2", "b_1")]),
            (&["beta"], &[]),
        ],
        &[
            &[
                ("y_1", &["t_4"]),
                ("y_4", &["t_4"]),
                ("y_5", &["t_4"]),
                ("y_6", &["t_4"]),
            ],
            &[
                ("b_1", &["y_1", "y_4", "y_5", "y_6"]),
                ("b_2", &["y_4", "y_5", "y_6"]),
                ("b_3", &["y_4", "y_5"]),
            ],
            &[("beta", &["b_1", "b_2", "b_3"])],
        ],
    )
    .expect("T3")
}

/// The thicket complex dual to [`scard`].
pub fn thk() -> Complex {
    let l1 = ["x_1", "x_2", "x_3", "x_5", "x_7", "x_8", "x_9"];
    let s0: Vec<(&str, &[&str])> = l1.iter().map(|&x| (x, &["s_7"][..])).collect();
    Complex::from_spec(
        Mode::Thicket,
        &[
            (&["s_7"], &[]),
            (
                &l1,
                &[
                    ("x_9", "x_8"),
                    ("x_8", "x_7"),
                    ("x_7", "x_5"),
                    ("x_5", "x_3"),
                    ("x_3", "x_2"),
                    ("x_2", "x_1"),
                ],
            ),
            (&["a_0", "a_1", "a_2"], &[("a_2", "a_1")]),
        ],
        &[
            &s0,
            &[
                ("a_0", &["x_2", "x_1"]),
                ("a_1", &["x_9", "x_8", "x_7", "x_5"]),
                ("a_2", &["x_8", "x_7"]),
            ],
        ],
    )
    .expect("THK")
}

/// The ι-epi `O3 → O2`.
pub fn f32() -> IotaMap {
    IotaMap::from_names(
        o3(),
        o2(),
        &[
            ("t_0", "t_1"),
            ("y_1", "t_1"),
            ("t_1", "t_1"),
            ("t_2", "t_2"),
            ("y_5", "t_2"),
            ("t_3", "t_2"),
            ("t_4", "t_3"),
            ("y_2", "y_1"),
            ("b_1", "y_1"),
            ("y_0", "y_1"),
            ("y_4", "y_2"),
            ("b_3", "y_2"),
            ("y_3", "y_2"),
            ("y_6", "y_3"),
            ("b_2", "b"),
            ("beta", "b"),
            ("b_0", "b"),
        ],
    )
    .expect("F32")
}

/// The dual of [`f32`], a morphism `T2 → T3`.
pub fn f32_star() -> ComplexMorphism {
    ComplexMorphism::from_names(
        t2(),
        t3(),
        &[("t_3", "t_4"), ("y_2", "y_4"), ("y_3", "y_6"), ("b", "b_2")],
    )
    .expect("F32*")
}
