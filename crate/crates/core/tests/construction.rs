use ellrank_core::algebra::{Qt, Rat, Ring};
use ellrank_core::ellcurve::{
    minimal_model_descended, pullback_square, quartic_contains, quartic_jacobian_invariants, quartic_to_weierstrass,
};
use ellrank_core::mestre::registry;
use ellrank_core::mestre::{build_quartic, derive_scale, raw_split, s_coefficient};

#[test]
fn nagao_quartic_from_seed() {
    let seed = registry::nagao_seed();
    assert!(s_coefficient(seed.b()).unwrap().is_zero());
    let (_, raw) = raw_split(&seed);
    let target = registry::nagao_quartic();
    let scale = derive_scale(&raw, &target).unwrap();
    let m = build_quartic(&seed, &scale).unwrap();
    assert_eq!(m.r, target);
    for (x, y) in &m.points {
        assert!(m.contains(x, y));
    }
    assert_eq!(m.points.len(), 24);
}

#[test]
fn mestre_quartic_from_seed() {
    let seed = registry::mestre_seed();
    assert!(s_coefficient(seed.b()).unwrap().is_zero());
    let m = build_quartic(&seed, &registry::mestre_scale()).unwrap();
    assert_eq!(m.r, registry::mestre_quartic());
}

#[test]
fn jacobian_minimalizes_to_published_model() {
    let r = registry::nagao_quartic();
    let zero = registry::nagao_zero_point();
    assert!(quartic_contains(&r, &zero));
    let (e, _) = quartic_to_weierstrass(&r, &zero).unwrap();
    let (m, iso) = minimal_model_descended(&e).unwrap();
    assert_eq!(m, registry::nagao_minimal_u());
    assert_eq!(iso.apply_curve(&e), pullback_square(&m));
    let inv = quartic_jacobian_invariants(&r).unwrap();
    assert_eq!(minimal_model_descended(&inv).unwrap().0, m);
}

#[test]
fn extra_point_lies_on_quartic() {
    let r = registry::nagao_quartic();
    assert!(quartic_contains(&r, &registry::nagao_extra_point()));
}

fn conic_matches(c: &registry::PublishedConic, base: (Rat, Rat)) -> Qt {
    use ellrank_core::mestre::{conic_defect, conic_parametrize, match_parametrization};
    assert!(conic_defect(&c.a, &c.b, &c.t_of_z, &c.u_of_z).is_zero());
    let ours = conic_parametrize(&c.a, &c.b, base).unwrap();
    assert!(ours.defect().is_zero());
    match_parametrization(&ours, &c.t_of_z, &c.u_of_z).expect("Möbius change of z")
}

#[test]
fn published_conics() {
    // the published Mestre curve is the chord family through (6, -478) with z -> -z
    let m = conic_matches(&registry::mestre_conic(), (Rat::from_int(6), Rat::from_int(-478)));
    assert_eq!(m, -Qt::var());
    conic_matches(&registry::mestre_conic(), (Rat::from_int(6), Rat::from_int(478)));
    conic_matches(
        &registry::nagao_conic(),
        (Rat::new(23549, 2), Rat::new(3744 * 23551, 2)),
    );
}
