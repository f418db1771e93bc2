use ellrank_core::algebra::{Rat, Ring};
use ellrank_core::heights::HeightContext;
use ellrank_core::mestre::registry;
use ellrank_core::qsearch::{build_coefficient_system, find_extra_point, node_at_infinity, solve_system};

#[test]
fn published_curve_node() {
    let e = registry::nagao_minimal_u();
    let n = node_at_infinity(&e).unwrap();
    assert_eq!(n.x0, Rat::from_i64(12));
    assert_eq!(n.x1, Rat::from_i64(-24));
    assert!(n.split);
}

#[test]
fn search_recovers_q_up_to_sign_and_conjugation() {
    let e = registry::nagao_minimal_u();
    let sys = build_coefficient_system(&e, &node_at_infinity(&e).unwrap()).unwrap();
    let sols = solve_system(&e, &sys);
    let q = registry::q_point();
    for s in &sols {
        assert!(sols.contains(&s.conjugate()));
        assert!(sols.contains(&s.negate()));
    }
    let hit = sols.iter().find(|s| s.point() == q).expect("Q among the solutions");
    assert_eq!(hit.d, -3);

    let found = find_extra_point(&e).unwrap();
    assert!(found.iter().any(|s| s.point() == q));
    let ctx = HeightContext::new(&registry::to_quadratic(&e, -3)).unwrap();
    for s in found.iter().filter(|s| s.d == -3) {
        assert_eq!(ctx.shioda_height(&s.point()).unwrap().value, Rat::new(3, 2));
    }
}
