use diffgalois::difference::DifferenceSystem;
use diffgalois::pipeline::{compute_galois_group, GaloisOptions};

fn sys(rows: &[&[&str]]) -> DifferenceSystem {
    DifferenceSystem::from_strings(&rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect::<Vec<_>>())
        .unwrap()
}

fn at(degree: u32) -> GaloisOptions {
    GaloisOptions { degree, ..GaloisOptions::default() }
}

#[test]
fn alternating_sign_is_cyclic_of_order_two() {
    let out = compute_galois_group(&sys(&[&["-1"]]), &at(2)).unwrap();
    assert_eq!(out.relations.to_string(), "<y11^2 - 1>");
    assert_eq!(out.stabilizer.ideal.to_string(), "<g11^2 - 1>");
    assert_eq!(out.stabilizer.components.len(), 2);
}

#[test]
fn identity_systems_have_trivial_group() {
    for n in 1..=3 {
        let rows: Vec<Vec<String>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { "1" } else { "0" }.to_string()).collect()).collect();
        let out = compute_galois_group(&DifferenceSystem::from_strings(&rows).unwrap(), &at(1)).unwrap();
        assert_eq!(out.stabilizer.components.len(), 1);
        let check = &out.stabilizer;
        assert!(check.ideal.generators().iter().all(|g| g.total_degree() == 1));
        assert_eq!(check.ideal.generators().len(), n * n);
    }
}

#[test]
fn factorial_is_the_full_torus() {
    let out = compute_galois_group(&sys(&[&["x"]]), &at(1)).unwrap();
    assert!(out.relations.is_zero());
    assert!(out.lattice.is_zero());
    assert!(out.lattice.basis.is_empty());
    assert!(out.stabilizer.ideal.is_zero());
}
