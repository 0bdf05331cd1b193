use diffgalois::difference::{y_ring, DifferenceSystem};
use diffgalois::elements::hyper_elements;
use diffgalois::groebner::{PolyIdeal, TermOrder};
use diffgalois::hyper::is_shift_quotient;
use diffgalois::lattice::{power_product, sigma_quotient_lattice};
use diffgalois::pipeline::{check_group, compute_galois_group, is_sigma_stable, GaloisOptions};
use diffgalois::relations::{relations_ideal, RelationsRequest};
use diffgalois::{Field, RatFunc};
use proptest::prelude::*;

fn sys(rows: Vec<Vec<String>>) -> DifferenceSystem {
    DifferenceSystem::from_strings(&rows).unwrap()
}

fn linear(a: i64) -> RatFunc {
    format!("x + {a}").parse().unwrap()
}

/// Products of shifted linear factors and a constant.
fn certificate() -> impl Strategy<Value = RatFunc> {
    (prop::collection::vec((-3i64..4, -1i64..2), 0..3), prop::sample::select(vec![1i64, -1, 2]))
        .prop_map(|(fs, c)| {
            fs.into_iter().fold(RatFunc::from_i64(c), |acc, (a, e)| match e {
                1 => acc.mul(&linear(a)),
                -1 => acc.div(&linear(a)),
                _ => acc,
            })
        })
}

/// Invertible 2×2 integer matrices with small entries.
fn constant_system() -> impl Strategy<Value = Vec<Vec<String>>> {
    prop::array::uniform4(-2i64..3)
        .prop_filter("invertible", |m| m[0] * m[3] - m[1] * m[2] != 0)
        .prop_map(|m| vec![vec![m[0].to_string(), m[1].to_string()], vec![m[2].to_string(), m[3].to_string()]])
}

/// Diagonal systems with entries ±1, ±x or x + a.
fn diagonal_system() -> impl Strategy<Value = Vec<Vec<String>>> {
    let entry = prop::sample::select(vec!["1", "-1", "x", "-x", "x+1", "2"]);
    (entry.clone(), entry).prop_map(|(a, b)| vec![vec![a.to_string(), "0".into()], vec!["0".into(), b.to_string()]])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn relations_ideals_are_sigma_stable(rows in constant_system()) {
        let s = sys(rows);
        let rel = relations_ideal(&s, &RelationsRequest::new(2, 0)).unwrap();
        prop_assert!(is_sigma_stable(&rel.ideal, &s));
        prop_assert!(!rel.ideal.is_unit());
    }

    #[test]
    fn hyper_elements_satisfy_their_certificates(rows in diagonal_system()) {
        let s = sys(rows);
        let ideal = PolyIdeal::new(&y_ring(2, TermOrder::GrevLex), Vec::new());
        for el in hyper_elements(&ideal, &s, 1, 1).unwrap() {
            let lhs = s.sigma_poly(&el.p, 1);
            prop_assert_eq!(lhs, el.p.scale(&el.b));
        }
    }

    #[test]
    fn lattice_witnesses_are_shift_quotients(b in prop::collection::vec(certificate(), 1..4), delta in 1usize..3) {
        let lat = sigma_quotient_lattice(&b, delta).unwrap();
        for (z, f) in lat.basis.iter().zip(&lat.witnesses) {
            prop_assert_eq!(power_product(&b, z), f.shift(delta as i64).div(f));
        }
    }

    #[test]
    fn lattice_is_complete_on_small_box(b in prop::collection::vec(certificate(), 1..3), delta in 1usize..3) {
        let lat = sigma_quotient_lattice(&b, delta).unwrap();
        let nu = b.len();
        let mut z = vec![-3i64; nu];
        loop {
            let oracle = is_shift_quotient(&power_product(&b, &z), delta).unwrap();
            prop_assert_eq!(lat.contains(&z), oracle, "z = {:?}", z);
            let Some(k) = z.iter().position(|&v| v < 3) else { break };
            z[k] += 1;
            z[..k].iter_mut().for_each(|v| *v = -3);
        }
    }

    #[test]
    fn group_axioms_hold_at_sampled_points(rows in diagonal_system(), seed in 0u64..1000) {
        let s = sys(rows);
        let opts = GaloisOptions { degree: 2, check_points: 0, ..GaloisOptions::default() };
        let out = compute_galois_group(&s, &opts).unwrap();
        let check = check_group(&out.stabilizer, Some(&out.maximal_sigma_ideal), 20, seed).unwrap();
        prop_assert!(check.points >= 20);
        prop_assert!(check.passed(), "{:?}", check.failures);
    }
}
