//! Small arrangements used by the worked examples, tests and the CLI.

use crate::hypertoric::Arrangement;

const FIG2: [&[i64]; 4] = [&[1, 1], &[1, 0], &[-1, 0], &[0, -1]];

fn build(d: usize, normals: &[&[i64]], offsets: &[i64]) -> Arrangement {
    Arrangement::from_ints(d, normals, offsets).expect("fixture is valid")
}

/// Figure-2 normals with the given offsets.
pub fn fig2(offsets: [i64; 4]) -> Arrangement {
    build(2, &FIG2, &offsets)
}

pub fn fig2_a() -> Arrangement {
    fig2([1, 0, 1, 0])
}

/// `𝒜_a` with the second normal reversed.
pub fn fig2_b() -> Arrangement {
    fig2_a().flip(1)
}

pub fn fig2_c() -> Arrangement {
    fig2([0, 1, 1, 0])
}

fn with_fifth(base: [i64; 4]) -> Arrangement {
    let mut normals = FIG2.to_vec();
    normals.push(&[1, 1]);
    let offsets = [base[0], base[1], base[2], base[3], 2];
    build(2, &normals, &offsets)
}

/// `𝒜_a` plus a fifth line left of the configuration.
pub fn fig2_a_prime() -> Arrangement {
    with_fifth([1, 0, 1, 0])
}

pub fn fig2_c_prime() -> Arrangement {
    with_fifth([0, 1, 1, 0])
}

/// Smooth arrangement with three fixed components (a trapezoid, an edge and
/// a point).
pub fn figure3() -> Arrangement {
    build(2, &[&[1, 0], &[1, 0], &[0, 1], &[-1, 0], &[-1, -1]], &[2, 1, 2, 0, -1])
}

/// Simple but not smooth: one vertex has index 2.
pub fn orbifold() -> Arrangement {
    build(2, &[&[-1, -1], &[-1, 0], &[0, -1], &[2, 1]], &[0, 1, 1, 0])
}

/// Three lines bounding a triangle.
pub fn triangle() -> Arrangement {
    build(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0, 1])
}

/// Named fixtures for the CLI.
pub fn by_name(name: &str) -> Option<Arrangement> {
    Some(match name {
        "fig2a" => fig2_a(),
        "fig2b" => fig2_b(),
        "fig2c" => fig2_c(),
        "fig2a-prime" => fig2_a_prime(),
        "fig2c-prime" => fig2_c_prime(),
        "figure3" => figure3(),
        "orbifold" => orbifold(),
        "triangle" => triangle(),
        _ => return None,
    })
}

pub const NAMES: [&str; 8] = [
    "fig2a",
    "fig2b",
    "fig2c",
    "fig2a-prime",
    "fig2c-prime",
    "figure3",
    "orbifold",
    "triangle",
];
