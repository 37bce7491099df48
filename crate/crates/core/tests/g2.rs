use nothg2::algebra::AlgebraicScalar as Q;
use nothg2::g2::roots::roots_with;
use nothg2::g2::structure::killing_invariance_violations;
use nothg2::g2::{
    basis, basis_as_printed, classify_g2, jacobi_check, killing_form, roots, structure_constants, CartanMetric,
    LengthClass, StructureConstants, TheoremId,
};
use nothg2::Error;

#[test]
fn printed_l12_does_not_close() {
    match structure_constants(&basis_as_printed(TheoremId::Noth2)) {
        Err(Error::NotClosed(..)) => {}
        other => panic!("expected NotClosed, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn both_theorems_are_g2() {
    for th in TheoremId::ALL {
        let b = basis(th);
        let sc = structure_constants(&b).unwrap();
        assert!(jacobi_check(&sc).is_empty());
        let kappa = killing_form(&sc);
        assert!(killing_invariance_violations(&sc, &kappa).is_empty());
        let rts = roots(&b, &sc, &kappa).unwrap();
        let cartan = [b.index_of("h1").unwrap(), b.index_of("h2").unwrap()];
        let report = classify_g2(&rts, &CartanMetric::new(&kappa, &cartan).unwrap()).unwrap();
        assert_eq!(report.cartan_matrix, [[2, -1], [-3, 2]]);
        assert_eq!((report.short, report.long), (6, 6));
        assert_eq!(report.length_ratio, Q::from_int(3));
        assert!(report.parity && report.antipodal && report.adjacency);
        for r in &rts {
            let hour = r.hour.unwrap();
            let want = if hour % 2 == 1 { LengthClass::Short } else { LengthClass::Long };
            assert_eq!(r.length, want, "{}", r.label);
        }
    }
}

#[test]
fn perturbed_constant_breaks_jacobi() {
    let sc = structure_constants(&basis(TheoremId::Noth1)).unwrap();
    let bad = sc.perturbed(0, 1, 2, &Q::one());
    assert!(!jacobi_check(&bad).is_empty());
}

fn sl2() -> StructureConstants {
    let z = Q::zero;
    let mut c = vec![vec![vec![z(); 3]; 3]; 3];
    // h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    let mut set = |i: usize, j: usize, k: usize, v: i64| {
        c[i][j][k] = Q::from_int(v);
        c[j][i][k] = Q::from_int(-v);
    };
    set(0, 1, 1, 2);
    set(0, 2, 2, -2);
    set(1, 2, 0, 1);
    StructureConstants::from_table(vec!["h".into(), "e".into(), "f".into()], c)
}

#[test]
fn sl2_is_not_g2() {
    let sc = sl2();
    assert!(jacobi_check(&sc).is_empty());
    let kappa = killing_form(&sc);
    let rts = roots_with(&sc, &kappa, &[0], &[1, 2]).unwrap();
    let metric = CartanMetric::new(&kappa, &[0]).unwrap();
    assert!(matches!(classify_g2(&rts, &metric), Err(Error::NotG2(_))));
}
