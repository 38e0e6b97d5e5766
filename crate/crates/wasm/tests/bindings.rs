use spinspeed_wasm::{crossing_scan, evolve, speed_limit};

#[test]
fn curves_line_up() {
    let c = evolve("B", 16, 4.0, 101).ok().unwrap();
    assert_eq!(c.gnt().len(), 101);
    assert_eq!((c.p()[0], c.r()[0], c.entropy()[0], c.saturation()[0]), (1.0, 1.0, 0.0, 1.0));
    assert!((c.gnt()[100] - 4.0).abs() < 1e-12);
    assert!(c.p().iter().zip(c.saturation()).all(|(&p, s)| p >= s - 1e-12));
}

#[test]
fn model_c_curves_are_product_states() {
    let c = evolve("C", 6, 1.0, 21).ok().unwrap();
    assert!(c.entropy().iter().all(|&s| s == 0.0));
}

#[test]
fn report_for_model_b() {
    let s = speed_limit("B", 8, 0.1).ok().unwrap();
    assert_eq!(s.dominant(), "Spread");
    assert!(s.t_reached >= s.tau_limit);
    assert!((s.spread - 8.0).abs() < 1e-12);
}

#[test]
fn scan_keeps_caller_order() {
    let g = crossing_scan("B", vec![32, 8, 16], 0.4).ok().unwrap();
    assert!(g[1] < g[2] && g[2] < g[0]);
}
