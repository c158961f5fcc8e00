use charclass_web::{rp_obstruction, torsion_explorer, winding_curve};

#[test]
fn torsion_explorer_reports_q_class() {
    let v = torsion_explorer(3, 3).unwrap();
    assert_eq!(v["qclass"], "p1*W5 + p2*W1 + W1*W3*W5 + W3^3");
    assert_eq!(v["degree"], 9);
    assert!(!v["indexSet"].as_array().unwrap().is_empty());
    assert!(torsion_explorer(3, 4).is_err());
    assert!(torsion_explorer(0, 2).is_err());
}

#[test]
fn obstruction_rows_for_rp4() {
    let v = rp_obstruction(4, 6).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["class"], "a^3");
    assert_eq!(rows[0]["obstructed"], true);
}

#[test]
fn winding_curve_degree() {
    for k in -3..=3 {
        let v = winding_curve(k, 64, 256).unwrap();
        assert_eq!(v["degree"], k);
        assert_eq!(v["points"].as_array().unwrap().len(), 65);
    }
    assert!(winding_curve(40, 64, 256).is_err());
}

#[test]
fn bindings_serialize_errors() {
    let s = charclass_web::torsion_explorer_js(9, 9);
    assert!(s.contains("\"error\""));
}
