use ajs_core::ajs_category::build::build_many;
use ajs_core::ajs_category::{build_qa, make_q_mu, modular_multiplicity, split_summand, theta_c};
use ajs_core::alcove_geom::Geometry;
use ajs_core::error::AjsError;
use ajs_core::order_topology::AlcoveWindow;
use ajs_core::root_system::{zero_pt, TypeTag};

#[test]
fn batch_construction_matches_single() {
    let geo = Geometry::of_type(TypeTag::A2);
    let w = AlcoveWindow::around(&geo, &geo.fundamental(), ajs_core::root_system::Q::from_integer(1));
    let alcoves: Vec<_> = w.alcoves().iter().copied().take(6).collect();
    let batch = build_many(&geo, &alcoves, None);
    for (a, q) in alcoves.iter().zip(batch) {
        assert_eq!(q.unwrap(), build_qa(&geo, a, None).unwrap());
    }
}

#[test]
fn json_is_deterministic() {
    let geo = Geometry::of_type(TypeTag::A1);
    let q = build_qa(&geo, &geo.a1(2), None).unwrap();
    let a = serde_json::to_string(&q.to_json(&geo)).unwrap();
    let b = serde_json::to_string(&build_qa(&geo, &geo.a1(2), None).unwrap().to_json(&geo)).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"rank\""));
}

#[test]
fn window_violations_are_reported() {
    let geo = Geometry::of_type(TypeTag::A1);
    let q = make_q_mu(&geo, &zero_pt());
    let tight = AlcoveWindow::a1(&geo, -1, 0);
    assert!(matches!(theta_c(&geo, 1, &q, Some(&tight)), Err(AjsError::Window(_))));
    assert!(theta_c(&geo, 0, &q, Some(&tight)).is_ok());
}

#[test]
fn split_summand_of_special_object() {
    let geo = Geometry::of_type(TypeTag::A2);
    let q = make_q_mu(&geo, &zero_pt());
    let min = ajs_core::order_topology::special_minimum(&geo, &zero_pt());
    let (part, rest) = split_summand(&geo, &q, &min).unwrap();
    assert_eq!(part.total_rank(), 6);
    assert!(rest.is_zero());
}

#[test]
fn modular_examples() {
    let geo = Geometry::of_type(TypeTag::A1);
    let x = geo.a1(0).elem;
    let above = geo.a1(1).elem;
    let below = geo.a1(-1).elem;
    assert_eq!(modular_multiplicity(&geo, &x, &x, 5).unwrap(), 1);
    assert_eq!(modular_multiplicity(&geo, &above, &x, 5).unwrap(), 1);
    assert_eq!(modular_multiplicity(&geo, &below, &x, 5).unwrap(), 0);
    assert!(modular_multiplicity(&geo, &x, &x, 2).is_err());
}
