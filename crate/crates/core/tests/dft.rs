use nothg2::algebra::rf;
use nothg2::contact::HModel;
use nothg2::dft::{
    distribution_build, ensure_roundtrip, inverse_map_as_printed, roundtrip_check, verify_forward_identities,
    verify_inverse_identity, verify_inverse_identity_for, HxModel,
};
use nothg2::noth::catalog_curve;
use nothg2::Error;

#[test]
fn forward_identities_hold_and_printed_ones_fail() {
    let ids = verify_forward_identities().unwrap();
    assert_eq!(ids.len(), 7);
    for id in ids {
        assert_eq!(id.holds, !id.as_printed_typo, "{}: {}", id.name, id.residual);
    }
}

#[test]
fn inverse_identity() {
    assert!(verify_inverse_identity().unwrap().holds);
    assert!(!verify_inverse_identity_for(&inverse_map_as_printed(), true).unwrap().holds);
}

#[test]
fn roundtrips_are_exact() {
    for m in [
        HModel::formal(),
        HModel::explicit(rf("3*t^2")),
        HModel::parametric(catalog_curve("recovered-1").unwrap()),
    ] {
        ensure_roundtrip(&roundtrip_check(&m).unwrap()).unwrap();
    }
}

#[test]
fn linear_h_is_degenerate() {
    assert_eq!(distribution_build(&HxModel::Explicit(rf("2*X + 1"))).err(), Some(Error::DegenerateHXX));
    assert!(distribution_build(&HxModel::Explicit(rf("X^3"))).is_ok());
}
