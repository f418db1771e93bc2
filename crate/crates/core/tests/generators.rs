use ellrank_core::ellcurve::{CurvePoint, QuarticPoint};
use ellrank_core::io::PointsFile;
use ellrank_core::kodaira::{fibre_configuration, Symbol};
use ellrank_core::mestre::nagao::NagaoModels;
use ellrank_core::mestre::registry;

fn names() -> Vec<String> {
    let mut v: Vec<String> = (1..=12).map(|i| format!("P{i}")).collect();
    v.push("X".to_string());
    v
}

#[test]
fn t_line_model_matches_published() {
    let m = NagaoModels::build().unwrap();
    assert_eq!(m.u_curve, registry::nagao_minimal_u());
}

#[test]
fn marked_points_map_onto_t_line_model() {
    let m = NagaoModels::build().unwrap();
    for p in m.plus_images().unwrap().iter().chain(m.minus_images().unwrap().iter()) {
        assert!(m.t_curve.contains(p));
    }
    // the zero point goes to O
    assert_eq!(m.image(&registry::nagao_zero_point()).unwrap(), CurvePoint::Infinity);
    assert!(m.t_curve.contains(&m.extra_image().unwrap()));
}

#[test]
fn generator_fixture_is_current() {
    let m = NagaoModels::build().unwrap();
    let computed = PointsFile {
        field: None,
        var: "t".to_string(),
        points: names().into_iter().zip(m.generators().unwrap()).collect(),
    };
    if std::env::var_os("ELLRANK_WRITE_FIXTURES").is_some() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/nagao_generators.txt");
        let text = format!("# generators of W on the t-line model\n{}", computed.serialize());
        std::fs::write(path, text).unwrap();
        return;
    }
    assert_eq!(registry::generators(), m.generators().unwrap());
}

#[test]
fn base_change_to_z_line() {
    let m = NagaoModels::build().unwrap();
    let z = m.z_models().unwrap();
    let cfg = fibre_configuration(&z.curve, false).unwrap();
    assert_eq!(cfg.chi, 4);
    for p in z.generators(&m).unwrap() {
        assert!(z.curve.contains(&p));
    }
    let inf = z.infinity_image().unwrap();
    assert_ne!(inf, CurvePoint::Infinity);
    let _ = QuarticPoint::Infinity(z.w.clone());
    let i4 = cfg
        .reducible()
        .filter(|(_, f)| f.symbol == Symbol::I(4))
        .count();
    assert!(i4 >= 2, "{cfg:?}");
}
