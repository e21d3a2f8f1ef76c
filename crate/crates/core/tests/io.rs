//! File formats: signals and coefficient dumps survive a disk round trip.

use orbitwave_core::axb::axb_chart;
use orbitwave_core::signal_io::{read_signal, sidecar_path, write_signal};
use orbitwave_core::{
    axb_reconstruct, axb_transform, AxbWavelet, CoefficientField, Gaussian, Sampled, SpatialGrid, SpectralAtom,
};

#[test]
fn signals_round_trip_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let grid = SpatialGrid::new(vec![4.0, 6.0], vec![8, 12], vec![1.0, -2.0]).unwrap();
    let f = Gaussian { center: vec![1.0, -0.5], width: 0.7, amplitude: 2.0 }.sample(&grid);

    let csv = dir.path().join("f.csv");
    write_signal(&f, &csv).unwrap();
    let back = read_signal(&csv).unwrap();
    assert_eq!(back.grid().samples(), f.grid().samples());
    // 17 significant digits reproduce every double
    assert_eq!(back.values(), f.values());

    let raw = dir.path().join("f.bin");
    write_signal(&f, &raw).unwrap();
    assert!(sidecar_path(&raw).exists());
    assert_eq!(read_signal(&raw).unwrap(), f);
}

#[test]
fn coefficient_dump_reconstructs_like_the_original() {
    let dir = tempfile::tempdir().unwrap();
    let grid = SpatialGrid::cube(1, 32.0, 256).unwrap();
    let psi = AxbWavelet::bump(1.5, 0.4).unwrap();
    let f = psi.spec.sample(&grid);
    let field = axb_transform(&f, &psi, &axb_chart(0.25, 4.0, 32).unwrap()).unwrap();
    let stem = dir.path().join("coeffs");
    field.write(&stem).unwrap();
    let back = CoefficientField::read(&stem).unwrap();
    assert_eq!(back.node_count(), field.node_count());
    assert!((back.energy() - field.energy()).abs() < 1e-12 * field.energy());
    let c = psi.c_psi_sq().unwrap();
    let a = axb_reconstruct(&field, &psi, c).unwrap();
    let b = axb_reconstruct(&back, &psi, c).unwrap();
    assert!(a.max_abs_diff(&b).unwrap() < 1e-12 * f.norm());

    let mut csv = Vec::new();
    field.write_abs_csv(&mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert_eq!(text.lines().next(), Some("p0,x0,abs"));
    assert_eq!(text.lines().count(), 1 + field.node_count() * grid.len());
}
