//! Exact threshold computations against classical values.

use gallai_core::{compute_gallai_ramsey, compute_ramsey, RamseyResolution, SearchLimits, Shape};

fn assert_exact(got: &gallai_core::RamseyComputation, want: usize) {
    assert_eq!(got.resolution, RamseyResolution::Exact(want));
    let w = got.witness.as_ref().expect("witness one below the value");
    assert_eq!(w.n(), want - 1);
    assert!(got.exhausted_stats.is_some());
}

#[test]
fn two_color_triangles() {
    let got = compute_ramsey(
        &[Shape::Cycle(3), Shape::Cycle(3)],
        5,
        SearchLimits::default(),
    )
    .unwrap();
    assert_exact(&got, 6);
}

#[test]
fn two_color_squares() {
    let got = compute_ramsey(
        &[Shape::Cycle(4), Shape::Cycle(4)],
        5,
        SearchLimits::default(),
    )
    .unwrap();
    assert_exact(&got, 6);
}

#[test]
fn square_versus_hexagon() {
    let got = compute_ramsey(
        &[Shape::Cycle(4), Shape::Cycle(6)],
        6,
        SearchLimits::default(),
    )
    .unwrap();
    assert_exact(&got, 7);
}

#[test]
fn two_color_pentagons() {
    let got = compute_ramsey(
        &[Shape::Cycle(5), Shape::Cycle(5)],
        8,
        SearchLimits::default(),
    )
    .unwrap();
    assert_exact(&got, 9);
}

#[test]
fn rainbow_free_pentagons_two_colors() {
    let got = compute_gallai_ramsey(Shape::Cycle(5), 2, 8, SearchLimits::default()).unwrap();
    assert_exact(&got, 9);
}

#[test]
fn rainbow_free_wheel_one_color() {
    let got = compute_gallai_ramsey(Shape::Wheel(5), 1, 4, SearchLimits::default()).unwrap();
    assert_exact(&got, 5);
}
