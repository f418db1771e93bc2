use ellrank_core::ellcurve::pullback_square;
use ellrank_core::mestre::registry;
use ellrank_core::surfcount::{count_surface, eigen_ledger, ns_rank_bound, test_hypotheses, Budget, SurfaceModel, Verdict};

fn k3() -> SurfaceModel {
    SurfaceModel::new(&pullback_square(&registry::nagao_minimal_u())).unwrap()
}

#[test]
fn good_primes() {
    let m = k3();
    assert_eq!(m.b2(), 22);
    assert_eq!(m.smallest_good_prime(100), Some(53));
    for p in [59, 61, 67] {
        assert!(!m.good_prime(p).good, "{p}");
    }
    assert!(m.good_prime(71).good);
    assert!(!m.good_prime(2).good);
}

#[test]
fn counts_at_53_and_71() {
    let m = k3();
    for (p, n, want) in [(53, 1, 3593), (53, 2, 7945269), (71, 1, 6096), (71, 2, 25498920)] {
        let r = count_surface(&m, p, n, Budget::default()).unwrap();
        assert_eq!(r.total, want, "p = {p}, n = {n}");
        assert_eq!(r.breakdown.fibres(), r.q + 1);
    }
}

#[test]
fn ledgers() {
    let l = eigen_ledger(53, 22, 17, [3593, 7945269]);
    assert_eq!((l.s1, l.s2), (-65, 4225));
    let hs = test_hypotheses(&l);
    let first = hs.iter().find(|h| h.zeta_order == 1 && h.det_sign == 1).unwrap();
    assert!(matches!(&first.verdict, Verdict::Consistent { cofactor, .. } if cofactor == &vec![148877, 6254, 118, 1]));
    assert_eq!(ns_rank_bound(&l).bound, 20);
    let l = eigen_ledger(71, 22, 17, [6096, 25498920]);
    assert_eq!((l.s1, l.s2), (-82, -3500));
    let b = ns_rank_bound(&l);
    assert!(b.all_contradictions());
    assert_eq!(b.bound, 18);
}

/// Long run; enabled with ELLRANK_EXTENDED=1.
#[test]
fn extended_count_53_cubed() {
    if std::env::var_os("ELLRANK_EXTENDED").is_none() {
        return;
    }
    let m = k3();
    let l = eigen_ledger(53, 22, 17, [3593, 7945269]);
    let b = ns_rank_bound(&l);
    let charpoly = b
        .outcomes
        .iter()
        .find_map(|h| match &h.verdict {
            Verdict::Consistent { charpoly, .. } => Some(charpoly.clone()),
            _ => None,
        })
        .unwrap();
    let r = count_surface(&m, 53, 3, Budget::unlimited()).unwrap();
    assert_eq!(r.total as i128, ellrank_core::surfcount::predicted_count(&l, &charpoly, 3));
}
