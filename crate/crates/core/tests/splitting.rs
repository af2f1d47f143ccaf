mod common;

use common::{chart, crystallographic, fermat};
use unexp_core::derivmod::{dk_dim, euler_dim, splitting_type, SplittingType};

#[test]
fn crystallographic_splitting() {
    let z = crystallographic();
    let c = chart(&z, 1);
    let an = splitting_type(&z, &c, 1, None).unwrap();
    assert_eq!(an.splitting.exponents(), &[4, 5, 7, 8]);
    assert_eq!(an.h0()[..9], [0, 0, 0, 0, 1, 3, 5, 8, 12]);
}

#[test]
fn crystallographic_dk_includes_euler_summand() {
    let z = crystallographic();
    let c = chart(&z, 2);
    let with_euler = SplittingType::new(vec![1, 4, 5, 7, 8]);
    for d in 0..10 {
        assert_eq!(dk_dim(&z, &c, 1, d).unwrap() as i64, with_euler.sections(d as i64), "d = {d}");
        assert_eq!(euler_dim(&z, &c, 1, d).unwrap(), d);
    }
}

#[test]
fn fermat_splitting() {
    let z = fermat();
    let c = chart(&z, 1);
    let an = splitting_type(&z, &c, 3, None).unwrap();
    assert_eq!(an.splitting.render_powers(), "1^3 2^4 3^2 4^1");
    assert_eq!(an.h0()[..5], [0, 3, 10, 19, 29]);
}
