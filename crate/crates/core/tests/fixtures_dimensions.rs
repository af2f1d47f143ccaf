mod common;

use common::{chart, crystallographic, fermat};
use unexp_core::construct::{construct, construct_fat, in_span};
use unexp_core::derivmod::splitting_type;
use unexp_core::unexpect::{adim, adim_basis, adim_in_frame, z_deficiency, Frame};
use unexp_core::scalars::Scalar;

#[test]
fn crystallographic_adim() {
    let z = crystallographic();
    let c = chart(&z, 1);
    assert_eq!(adim(&z, &c, 4, 5).unwrap(), 1);
    assert_eq!(adim(&z, &c, 5, 6).unwrap(), 3);
    assert_eq!(adim(&z, &c, 7, 8).unwrap(), 8);
    assert_eq!(z_deficiency(&z, 4), 0);
}

#[test]
fn fermat_dimensions() {
    let z = fermat();
    let c = chart(&z, 1);
    assert_eq!(adim(&z, &c, 1, 4).unwrap(), 3);
    assert_eq!(z_deficiency(&z, 4), 4);
    assert_eq!(z_deficiency(&z, 3), 11);
}

#[test]
fn adim_is_frame_independent() {
    let z = crystallographic();
    let c = chart(&z, 3);
    let f = &z.field;
    let unit = |i: usize| (0..5).map(|j| Scalar::from_int(f, if i == j { 1 } else { 0 })).collect::<Vec<_>>();
    let alt: Vec<Vec<Scalar>> = vec![unit(4), unit(3), unit(2)];
    let frame = Frame::with_completion(&c, &alt).unwrap();
    for d in 3..7 {
        assert_eq!(adim_in_frame(&z, &frame, d, d + 1).unwrap(), adim(&z, &c, d, d + 1).unwrap());
    }
}

#[test]
fn isomorphism_on_crystallographic() {
    let z = crystallographic();
    let c = chart(&z, 1);
    let an = splitting_type(&z, &c, 1, None).unwrap();
    for (d, h) in an.h0().iter().enumerate() {
        assert_eq!(adim(&z, &c, d as u32, d as u32 + 1).unwrap() as i64, *h, "d = {d}");
        assert_eq!(an.splitting.sections(d as i64), *h);
    }
}

#[test]
fn crystallographic_construction() {
    let z = crystallographic();
    let c = chart(&z, 1);
    let con = construct(&z, &c, 1, 4).unwrap();
    assert_eq!(con.degree, 5);
    assert!(con.multiplicity_along >= 4);
    assert!(con.point_multiplicities.iter().all(|&m| m == 1));
    let basis = adim_basis(&z, &c, 4, 5).unwrap();
    assert!(in_span(&con.hypersurface, &basis, 5));
}

#[test]
fn fermat_triple_point() {
    let z = fermat();
    let c = chart(&z, 1);
    let con = construct(&z, &c, 3, 1).unwrap();
    assert_eq!(con.degree, 4);
    assert!(con.vanishes_on_z);
    assert!(con.multiplicity_along >= 1);
    let (m, fat) = construct_fat(&z, &c, 3, 1, 1).unwrap();
    assert_eq!(m, 3);
    assert_eq!(fat.point_multiplicities[1], 3);
    assert!(fat.vanishes_on_z);
    eprintln!("default: {:?}\nfat: {}", con.point_multiplicities, fat.hypersurface.render("X"));
}
