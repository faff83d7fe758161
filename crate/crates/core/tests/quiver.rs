use qv_core::quiver::{DimVector, Quiver};

#[test]
fn derived_quivers_round_trip_through_json() {
    let w = DimVector::new(vec![2, 0, 1]).unwrap();
    let q = Quiver::type_a(3);
    for derived in [q.clone(), q.double(), q.frame(), q.cb_frame(&w).unwrap(), q.double().opposite()] {
        let back = Quiver::from_json(&derived.to_json()).unwrap();
        assert_eq!(back, derived);
    }
}

#[test]
fn framings_add_the_right_vertices_and_edges() {
    let q = Quiver::type_a(3);
    let f = q.frame();
    assert_eq!(f.num_vertices(), 6);
    assert_eq!(f.edges().len(), 2 + 3);
    let w = DimVector::new(vec![2, 0, 1]).unwrap();
    let cb = q.cb_frame(&w).unwrap();
    assert_eq!(cb.num_vertices(), 4);
    assert_eq!(cb.edges().len(), 2 + 3);
    let p = cb.provenance().unwrap();
    assert_eq!(p.framing_edges.len(), 3);
    assert_eq!(p.framing_vertices.len(), 1);
}

#[test]
fn cycles_of_the_jordan_double() {
    let d = Quiver::jordan().double();
    // words in two loops up to rotation: 2 of length 1, 3 of length 2
    let by_len = |l: usize| d.cycles(3).iter().filter(|c| c.len() == l).count();
    assert_eq!(by_len(1), 2);
    assert!(by_len(2) >= 3);
    assert!(d.cycles(3).iter().all(|c| d.is_cycle(c)));
}

#[test]
fn malformed_quivers_are_rejected() {
    assert!(Quiver::new(&["0", "0"], &[]).is_err());
    assert!(Quiver::new(&["0"], &[("a", "0", "1")]).is_err());
    assert!(Quiver::new(&["0", "1"], &[("a", "0", "1"), ("a", "1", "0")]).is_err());
    let bad = serde_json::json!({"vertices": ["0"], "edges": [{"name": "x", "tail": "0"}]});
    assert!(Quiver::from_json(&bad).is_err());
    assert!(DimVector::new(vec![1, -1]).is_err());
}
