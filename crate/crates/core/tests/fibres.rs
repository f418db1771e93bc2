use ellrank_core::algebra::{primes_up_to, Fp};
use ellrank_core::ellcurve::{pullback_square, reduce_curve};
use ellrank_core::kodaira::{fibre_configuration, is_rational_surface, shioda_tate_rank, Place, Symbol};
use ellrank_core::mestre::registry;

#[test]
fn minimal_model_over_u() {
    let e = registry::nagao_minimal_u();
    let c = fibre_configuration(&e, true).unwrap();
    assert_eq!(c.chi, 1);
    assert!(c.rational_surface);
    assert!(is_rational_surface(&e).unwrap());
    let red: Vec<_> = c.reducible().collect();
    assert_eq!(red.len(), 1);
    assert_eq!(red[0].0, Place::Infinity);
    assert_eq!(red[0].1.symbol, Symbol::I(2));
    assert_eq!(red[0].1.split, Some(true));
    assert_eq!(shioda_tate_rank(&c, 10), Ok(7));
    assert_eq!(c.euler_sum(), 12);
}

#[test]
fn t_line_model_is_k3() {
    let e = pullback_square(&registry::nagao_minimal_u());
    let c = fibre_configuration(&e, true).unwrap();
    assert_eq!(c.chi, 2);
    assert!(!c.rational_surface);
    let red: Vec<_> = c.reducible().collect();
    assert_eq!(red.len(), 1);
    assert_eq!(red[0].0, Place::Infinity);
    assert_eq!(red[0].1.symbol, Symbol::I(4));
    assert_eq!(red[0].1.split, Some(true));
    assert_eq!(c.euler_sum(), 24);
    assert_eq!(shioda_tate_rank(&c, 18), Ok(13));
}

#[test]
fn good_primes_geometric() {
    let e = pullback_square(&registry::nagao_minimal_u());
    let sig = fibre_configuration(&e, false).unwrap().geometric_signature();
    let mut good = Vec::new();
    for p in primes_up_to(80) {
        if p < 5 { continue; }
        let ok = match reduce_curve(&e, p) {
            Some(r) => fibre_configuration::<Fp>(&r, false).map(|c| c.geometric_signature() == sig).unwrap_or(false),
            None => false,
        };
        if ok { good.push(p); }
    }
    assert_eq!(good, vec![53, 71, 73]);
}
