use proptest::prelude::*;

use cubic_code::closed_forms::{tau, zeta};
use cubic_code::validation::reference;
use cubic_code::{BitMatrix, BitVec, ConfigKey, Family, Pauli, PauliWord};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
            let rows: Vec<BitVec> = rows.iter().map(|b| BitVec::from_bools(b)).collect();
            BitMatrix::from_rows(c, &rows).unwrap()
        })
    })
}

fn word(n: usize) -> impl Strategy<Value = PauliWord> {
    prop::collection::vec(0u8..4, n).prop_map(|ps| {
        let mut w = PauliWord::identity(ps.len());
        for (q, p) in ps.iter().enumerate() {
            let p = match p {
                0 => Pauli::I,
                1 => Pauli::X,
                2 => Pauli::Y,
                _ => Pauli::Z,
            };
            w.set(q, p).unwrap();
        }
        w
    })
}

proptest! {
    #[test]
    fn small_matrices_match_dense_reference(m in matrix(9, 11), mask_bits in prop::collection::vec(any::<bool>(), 11)) {
        prop_assert_eq!(m.rank(), reference::rank(&m));
        let ker = m.kernel_basis();
        prop_assert_eq!(reference::rowspace(&ker), reference::kernel(&m));
        let mask = BitVec::from_bools(&mask_bits[..m.n_cols()]);
        let r = m.rowspace_restricted_to(&mask).unwrap();
        prop_assert_eq!(reference::rowspace(&r), reference::restricted(&m, &mask));
    }

    #[test]
    fn wide_matrices_rank_nullity(m in matrix(40, 150)) {
        let rank = m.rank();
        prop_assert_eq!(rank, m.transpose().rank());
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.n_rows() + rank, m.n_cols());
        prop_assert_eq!(ker.rank(), ker.n_rows());
        for v in ker.rows() {
            prop_assert!(m.mul_vec(&v).is_zero());
        }
    }

    #[test]
    fn rowspace_membership(m in matrix(20, 90), coeff_bits in prop::collection::vec(any::<bool>(), 20)) {
        let coeffs = BitVec::from_bools(&coeff_bits[..m.n_rows()]);
        prop_assert!(m.in_rowspace(&m.combine_rows(&coeffs)).unwrap());
    }

    #[test]
    fn pauli_products(a in word(70), b in word(70), c in word(70)) {
        let ab = a.multiply(&b).unwrap();
        prop_assert_eq!(&ab, &b.multiply(&a).unwrap());
        prop_assert_eq!(&ab.multiply(&b).unwrap(), &a);
        prop_assert!(ab.weight() <= a.weight() + b.weight());
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
        // Commutation is bilinear in the symplectic form.
        let lhs = ab.commutes(&c).unwrap();
        prop_assert_eq!(lhs, a.commutes(&c).unwrap() == b.commutes(&c).unwrap());
        prop_assert!(a.commutes(&a).unwrap());
        prop_assert_eq!(PauliWord::from_symplectic(&a.to_symplectic()).unwrap(), a);
    }

    #[test]
    fn tau_bounds(l1 in 1u64..400, l2 in 1u64..400) {
        let t = tau(l1, Some(l2));
        prop_assert!(t <= l2);
        prop_assert!(t == 0 || (t.is_power_of_two() || t == l2));
        prop_assert_eq!(tau(l1, None), if l1 % 3 == 0 { zeta(l1 / 3) } else { 0 });
    }

    #[test]
    fn keys_round_trip(x in 2u64..60, y in 2u64..60, z in 2u64..60, idx in 0usize..33) {
        let family = Family::all().nth(idx).unwrap();
        let key = ConfigKey::with_dims(family, [x, y, z]);
        let back: ConfigKey = key.to_string().parse().unwrap();
        prop_assert_eq!(back, key);
    }
}
