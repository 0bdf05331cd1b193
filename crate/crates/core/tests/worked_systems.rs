use diffgalois::difference::{det_poly, DifferenceSystem};
use diffgalois::elements::hyper_elements;
use diffgalois::groebner::{parse_poly, PolyIdeal};
use diffgalois::lattice::sigma_quotient_lattice;
use diffgalois::pipeline::{check_group, compute_galois_group, stabilizer, torsor_extension, GaloisOptions};
use diffgalois::relations::{relations_ideal, RelationsRequest};
use diffgalois::structure::{associated_primes, sigma_period};
use diffgalois::RatFunc;

fn sys(rows: &[&[&str]]) -> DifferenceSystem {
    DifferenceSystem::from_strings(&rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect::<Vec<_>>())
        .unwrap()
}

fn ideal_like(like: &PolyIdeal<RatFunc>, gens: &[&str]) -> PolyIdeal<RatFunc> {
    let r = like.ring();
    PolyIdeal::new(r, gens.iter().map(|g| parse_poly(r, g).unwrap()).collect())
}

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

fn cyclic() -> DifferenceSystem {
    sys(&[&["0", "1", "0"], &["0", "0", "1"], &["x", "0", "0"]])
}

fn block() -> DifferenceSystem {
    sys(&[&["0", "1", "0"], &["x", "0", "0"], &["0", "0", "1/x"]])
}

#[test]
fn cyclic_relations_are_monomial_with_three_cosets() {
    let rel = relations_ideal(&cyclic(), &RelationsRequest::new(2, 0)).unwrap().ideal;
    assert_eq!(rel.generators().len(), 27);
    assert!(rel.generators().iter().all(|g| g.terms().len() == 1 && g.total_degree() == 2));
    let stab = stabilizer(&rel, 3).unwrap();
    assert_eq!(stab.components.len(), 3);
    assert!(check_group(&stab, Some(&rel), 20, 7).unwrap().passed());
}

#[test]
fn cyclic_decomposition_and_period() {
    let s = cyclic();
    let rel = relations_ideal(&s, &RelationsRequest::new(2, 0)).unwrap().ideal;
    let comps = associated_primes(&rel, Some(&det_poly(3, rel.ring()))).unwrap();
    assert_eq!(comps.len(), 3);
    let irr = &comps[0].ideal;
    assert!(irr.equals(&ideal_like(irr, &["y11", "y12", "y22", "y23", "y31", "y33"])));
    assert_eq!(sigma_period(irr, &s, 3).unwrap(), 3);
    let els = hyper_elements(irr, &s, 3, 1).unwrap();
    let pairs: Vec<String> = els.iter().map(|e| e.to_string()).collect();
    assert_eq!(pairs, vec!["(y13, x)", "(y21, x+1)", "(y32, x+2)"]);
    let lattice = sigma_quotient_lattice(&[rf("x+2"), rf("x"), rf("x+1")], 3).unwrap();
    assert!(lattice.is_zero());
    let own = sigma_quotient_lattice(&els.iter().map(|e| e.b.clone()).collect::<Vec<_>>(), 3).unwrap();
    assert!(torsor_extension(irr, &els, &own).equals(irr));
}

#[test]
fn cyclic_full_run() {
    let out = compute_galois_group(&cyclic(), &GaloisOptions::default()).unwrap();
    assert_eq!(out.delta, 3);
    assert!(out.torsor.equals(&out.irr));
    assert!(out.maximal_sigma_ideal.equals(&out.relations));
    assert_eq!(out.stabilizer.components.len(), 3);
    assert!(out.group_check.passed());
}

#[test]
fn block_full_run() {
    let out = compute_galois_group(&block(), &GaloisOptions::default()).unwrap();
    assert_eq!(out.components.len(), 2);
    assert!(out.irr.equals(&ideal_like(&out.irr, &["y11", "y13", "y22", "y23", "y31", "y32"])));
    assert_eq!(out.delta, 2);
    let pairs: Vec<String> = out.elements.iter().map(|e| e.to_string()).collect();
    assert_eq!(pairs, vec!["(y12, x)", "(y21, x+1)", "(y33, 1/(x^2+x))"]);
    assert_eq!(out.lattice.basis, vec![vec![1, 1, 1]]);
    assert!(out.torsor.contains(&parse_poly(out.torsor.ring(), "y12*y21*y33 - 1").unwrap()));
    let expected = ideal_like(
        &out.maximal_sigma_ideal,
        &[
            "y32",
            "y31",
            "y23",
            "y22*y21",
            "y13",
            "y22*y12",
            "y12*y21^2*y33 - y21",
            "y12^2*y21*y33 - y12",
            "y12*y21*y33 + y11*y22*y33 - 1",
            "y11*y21",
            "y11*y12",
        ],
    );
    assert_eq!(expected.generators().len(), 11);
    assert!(out.maximal_sigma_ideal.equals(&expected));
    assert_eq!(out.stabilizer.components.len(), 2);
    let r = out.stabilizer.ideal.ring();
    for (c, diag) in out.stabilizer.components.iter().zip(["g11*g22*g33 - 1", "g12*g21*g33 - 1"]) {
        assert!(c.ideal.contains(&parse_poly(r, diag).unwrap()));
    }
    assert!(out.group_check.passed());
}
