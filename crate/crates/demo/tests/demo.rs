use qball_demo::{curve, diagrams, dilation_residuals, path_diagrams, residuals};

#[test]
fn six_routes_for_the_corner() {
    let d = diagrams(3, 1, 1).unwrap();
    assert_eq!(d.len(), 6);
    assert_eq!(d[0].term, "d⊗d⊗C_qS⊗I⊗I⊗d⊗I⊗I⊗d");
    assert_eq!(d[0].picture.lines().count(), 3);
    assert!(diagrams(2, 0, 1).is_err());
}

#[test]
fn curve_rises_toward_the_supremum() {
    let c = curve("z[1,1] + (1/2) z[1,1] z[1,1]", 0.5, 64).unwrap();
    assert_eq!(c.truncations.last(), Some(&64));
    assert!((c.sup - 1.5).abs() < 1e-9);
    assert!(c.norms.windows(2).all(|w| w[1] >= w[0] - 1e-12));
    assert!(c.norms.iter().all(|&f| f <= c.sup + 1e-9));
    assert!(curve("z*[1,1]", 0.5, 8).is_err());
}

#[test]
fn dilation_breaks_after_the_last_step() {
    let r = residuals(0.5, 6, 3).unwrap();
    assert!(r.unitarity < 1e-12);
    assert!(r.powers[..3].iter().all(|&x| x < 1e-12));
    assert!(r.powers[3] > 1e-6);
}

#[test]
fn exports_emit_json() {
    let v: serde_json::Value = serde_json::from_str(&dilation_residuals(0.5, 4, 2).unwrap()).unwrap();
    assert_eq!(v["steps"], 2);
    let v: serde_json::Value = serde_json::from_str(&path_diagrams(2, 1, 1).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn page_defaults_parse() {
    let c = curve("z[1,1] + (-3/2) z[1,1] z[1,1] z[1,1] + (1/2)", 0.5, 256).unwrap();
    assert!(c.norms.last().unwrap() <= &(c.sup + 1e-9));
    assert_eq!(residuals(0.5, 8, 4).unwrap().powers.len(), 7);
}
