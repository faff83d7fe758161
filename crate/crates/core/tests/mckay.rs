use qv_core::exactalg::Scalar;
use qv_core::mckay::{
    binary_dihedral_table, cyclic_table, exceptional_table, mckay_quiver, mckay_report, shipped_tables,
    CharacterTable, Exceptional,
};

#[test]
fn shipped_tables_have_expected_types() {
    let mut seen = Vec::new();
    for t in shipped_tables().unwrap() {
        let r = mckay_report(&t).unwrap();
        assert!(r.c_delta_zero, "{}", t.name());
        assert_eq!(r.delta_at_trivial, 1);
        assert_eq!(r.delta, t.degrees());
        seen.push((t.name().to_string(), r.affine_type));
    }
    let find = |n: &str| seen.iter().find(|(name, _)| name == n).map(|(_, ty)| ty.clone()).unwrap();
    assert_eq!(find("BT"), "affine E_6");
    assert_eq!(find("BO"), "affine E_7");
    assert_eq!(find("BI"), "affine E_8");
    for n in 2..=6u32 {
        assert_eq!(find(&format!("BD_{n}")), format!("affine D_{}", n + 2));
    }
    for n in 2..=8u32 {
        assert_eq!(find(&format!("Z/{n}")), format!("affine A_{}", n - 1));
    }
}

#[test]
fn group_orders_match_degrees() {
    for t in [cyclic_table(7).unwrap(), binary_dihedral_table(5).unwrap(), exceptional_table(Exceptional::Icosahedral).unwrap()] {
        let sum: i64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum as u64, t.order());
        // sum over vertices of δ_i (C δ)_i = 0 forces Σ a_ij δ_j = 2 δ_i
        let a = mckay_quiver(&t).unwrap();
        let d = t.degrees();
        for i in 0..d.len() {
            assert_eq!((0..d.len()).map(|j| a[i][j] * d[j]).sum::<i64>(), 2 * d[i]);
        }
    }
}

#[test]
fn corrupted_icosahedral_table_fails_orthogonality() {
    let mut data = exceptional_table(Exceptional::Icosahedral).unwrap().data();
    // flip the sign of one non-identity entry of a nontrivial character
    let row = (data.trivial + 1) % data.chars.len();
    let col = data.chars[row].iter().position(|s| !s.is_zero() && !s.is_one()).unwrap_or(1);
    let entry = data.chars[row][col].clone();
    data.chars[row][col] = Scalar::zero(entry.field()).try_sub(&entry).unwrap();
    let err = CharacterTable::new(data).unwrap_err().to_string();
    assert!(err.contains("orthogonality"), "{err}");
}
