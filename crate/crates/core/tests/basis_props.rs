use ddbh_core::{LocalBasis, SPINS};
use proptest::prelude::*;

#[test]
fn bijection_exhaustive() {
    for n_max in 1..=3 {
        let b = LocalBasis::new(n_max).unwrap();
        let mut seen = vec![false; b.dim_rho()];
        for n in 0..=n_max {
            for m in 0..=n_max {
                for s in SPINS {
                    for sp in SPINS {
                        let i = b.flat_index(n, m, s, sp).unwrap();
                        assert!(!seen[i]);
                        seen[i] = true;
                        assert_eq!(b.unflatten(i).unwrap(), (n, m, s, sp));
                    }
                }
            }
        }
        assert!(seen.iter().all(|x| *x));
    }
}

proptest! {
    #[test]
    fn round_trip(n_max in 1usize..6, raw in 0usize..10_000) {
        let b = LocalBasis::new(n_max).unwrap();
        let i = raw % b.dim_rho();
        let (n, m, s, sp) = b.unflatten(i).unwrap();
        prop_assert_eq!(b.flat_index(n, m, s, sp).unwrap(), i);
        prop_assert_eq!(b.transpose(b.transpose(i)), i);
        prop_assert_eq!(b.charge(b.transpose(i)), -b.charge(i));
    }
}
