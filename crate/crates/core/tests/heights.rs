use ellrank_core::algebra::{Rat, Ring};
use ellrank_core::heights::{norm_map, theorem1_certificate, HeightContext};
use ellrank_core::mestre::nagao::NagaoModels;
use ellrank_core::mestre::registry;

#[test]
fn q_has_height_three_halves() {
    let e = registry::to_quadratic(&registry::nagao_minimal_u(), -3);
    let ctx = HeightContext::new(&e).unwrap();
    let q = registry::q_point();
    assert_eq!(ctx.intersection_with_zero(&q), Rat::zero());
    assert_eq!(ctx.shioda_height(&q).unwrap().value, Rat::new(3, 2));
    assert_eq!(ctx.canonical_height_limit(&q).unwrap().value, Rat::new(3, 2));
}

#[test]
fn generators_span_rank_twelve() {
    let m = NagaoModels::build().unwrap();
    let ctx = HeightContext::new(&m.t_curve).unwrap();
    let g = ctx.gram(&registry::generators()).unwrap();
    assert!(g.is_positive_semidefinite());
    assert_eq!(g.rank(), 12);
}

#[test]
fn norms_and_q() {
    let m = NagaoModels::build().unwrap();
    let norms: Vec<_> = registry::generators()
        .iter()
        .map(|p| norm_map(&m.u_curve, &m.t_curve, p).unwrap())
        .collect();
    let ctx = HeightContext::new(&m.u_curve).unwrap();
    let g = ctx.gram(&norms).unwrap();
    assert_eq!(g.rank(), 6);
    let r = theorem1_certificate(&m.u_curve, &registry::q_point(), &norms, None).unwrap();
    assert_eq!(r.rank_with_q, 7);
}

#[test]
fn z_line_generators_have_rank_thirteen() {
    let m = NagaoModels::build().unwrap();
    let z = m.z_models().unwrap();
    let ctx = HeightContext::new(&z.curve).unwrap();
    let g = ctx.gram(&z.generators(&m).unwrap()).unwrap();
    assert_eq!(g.rank(), 13);
}

#[test]
fn limit_agrees_with_shioda_on_t_line() {
    let m = NagaoModels::build().unwrap();
    let ctx = HeightContext::new(&m.t_curve).unwrap();
    let g = registry::generators();
    for p in [&g[0], &g[6], &g[12]] {
        assert_eq!(ctx.shioda_height(p).unwrap(), ctx.canonical_height_limit_modular(p, 2).unwrap());
    }
}
