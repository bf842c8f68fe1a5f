use std::path::PathBuf;

use serde_json::Value;
use spinbrauer::cellularity::phi_ell;
use spinbrauer::diagram_core::{parse_diagram, PartitionLE2};
use spinbrauer::AlgebraElement;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn every_fixture_revalidates() {
    let mut seen = 0;
    for entry in std::fs::read_dir(dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        let name = path.display();
        if v.get("terms").is_some() {
            AlgebraElement::from_json(&v).unwrap_or_else(|e| panic!("{name}: {e}"));
        } else if v.get("ell").is_some() {
            let n = v["n"].as_u64().unwrap() as usize;
            let x = PartitionLE2::from_json(n, &v["x"]).unwrap();
            let y = PartitionLE2::from_json(n, &v["y"]).unwrap();
            let list = |k: &str| serde_json::from_value::<Vec<usize>>(v[k].clone()).unwrap();
            phi_ell(v["ell"].as_u64().unwrap() as usize, &x, &list("S"), &y, &list("T")).unwrap();
        } else {
            let d = parse_diagram(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(parse_diagram(&d.to_json_string()).unwrap(), d);
        }
        seen += 1;
    }
    assert!(seen >= 6);
}

#[test]
fn datum_involution_fixture() {
    let read = |f: &str| parse_diagram(&std::fs::read_to_string(dir().join(f)).unwrap()).unwrap();
    assert_eq!(read("five_vertex_datum.json").involution(), read("five_vertex_datum_involution.json"));
}
