use proptest::prelude::*;

use adjoint_blocks::adjoint::report;
use adjoint_blocks::block_arith::{consecutive_ones, ext2, sym2, sym2_of_type, tensor};
use adjoint_blocks::classes::{decompositions, jordan_type_v, parse_decomp};
use adjoint_blocks::gf2::{jordan_type_nilpotent, Gf2Matrix, Gf2Vector, Subspace};
use adjoint_blocks::{JordanType, Kind};

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Unipotent), Just(Kind::Nilpotent)]
}

fn jordan_type() -> impl Strategy<Value = JordanType> {
    prop::collection::vec(1usize..12, 1..8).prop_map(JordanType::from_sizes)
}

fn matrix(max: usize) -> impl Strategy<Value = Gf2Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(0u8..2, c), r).prop_map(|rows| Gf2Matrix::from_rows(&rows))
    })
}

proptest! {
    #[test]
    fn block_dimensions(m in 1usize..48, n in 1usize..48, k in kind()) {
        let (m, n) = (m.min(n), m.max(n));
        prop_assert_eq!(tensor(m, n, k).dim(), m * n);
        prop_assert_eq!(tensor(m, n, k).num_blocks(), m);
        prop_assert_eq!(sym2(n, k).dim(), n * (n + 1) / 2);
        prop_assert_eq!(ext2(n, k).dim(), n * (n - 1) / 2);
    }

    #[test]
    fn blocks_bounded_by_nilpotency(m in 1usize..40, n in 1usize..40) {
        let (m, n) = (m.min(n), m.max(n));
        prop_assert!(tensor(m, n, Kind::Nilpotent).max_size().unwrap() < m + n);
        prop_assert!(tensor(m, n, Kind::Unipotent).max_size().unwrap() <= n.next_power_of_two().max(m + n - 1), "{m} {n}");
    }

    #[test]
    fn expansion_sums_to_n(n in 1u64..1_000_000) {
        let e = consecutive_ones(n).unwrap();
        prop_assert_eq!(e.value(), n as i64);
        prop_assert!(e.betas().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn jordan_compact_round_trip(t in jordan_type()) {
        prop_assert_eq!(t.to_compact().parse::<JordanType>().unwrap(), t.clone());
        prop_assert_eq!(t.to_string().parse::<JordanType>().unwrap(), t);
    }

    #[test]
    fn sym2_of_type_dimension(t in jordan_type(), k in kind()) {
        let n = t.dim();
        prop_assert_eq!(sym2_of_type(&t, k).dim(), n * (n + 1) / 2);
    }

    #[test]
    fn canonical_form_is_stable(ell in 1usize..9, k in kind(), pick in any::<prop::sample::Index>()) {
        let all = decompositions(ell, k);
        let c = &all[pick.index(all.len())];
        let canon = c.canonical();
        prop_assert_eq!(canon.canonical(), canon.clone());
        prop_assert_eq!(canon.ell(), ell);
        prop_assert_eq!(jordan_type_v(&canon), jordan_type_v(c));
        prop_assert_eq!(parse_decomp(&c.to_string(), k).unwrap(), canon.clone());
        prop_assert_eq!(parse_decomp(&canon.to_string(), k).unwrap(), canon);
    }

    #[test]
    fn report_dimensions(ell in 1usize..13, k in kind(), pick in any::<prop::sample::Index>()) {
        let all = decompositions(ell, k);
        let r = report(&all[pick.index(all.len())]).unwrap();
        let dim = ell * (2 * ell + 1);
        prop_assert_eq!(r.type_gsc.dim(), dim);
        prop_assert_eq!(r.type_derived.dim(), dim - 1);
        prop_assert_eq!(r.type_gad.dim(), dim);
        prop_assert!(r.dim_cent_sc.abs_diff(r.dim_cent_ad) <= 1);
    }

    #[test]
    fn rank_nullity(m in matrix(40)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        prop_assert_eq!(m.transpose().rank(), m.rank());
        prop_assert_eq!(m.image().dim(), m.rank());
        for v in m.kernel().basis() {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn nilpotent_type_counts_kernel(n in 1usize..30, bits in prop::collection::vec(any::<bool>(), 900)) {
        let a = Gf2Matrix::from_fn(n, n, |i, j| j > i && bits[i * 30 + j]);
        let t = jordan_type_nilpotent(&a).unwrap();
        prop_assert_eq!(t.dim(), n);
        prop_assert_eq!(t.num_blocks(), a.kernel().dim());
    }

    #[test]
    fn span_membership(vs in prop::collection::vec(prop::collection::vec(0u8..2, 20), 0..10), mix in any::<u16>()) {
        let vecs: Vec<Gf2Vector> = vs.iter().map(|b| Gf2Vector::from_bits(b)).collect();
        let s = Subspace::span(20, vecs.clone());
        prop_assert!(s.dim() <= vecs.len());
        let mut sum = Gf2Vector::zeros(20);
        for (i, v) in vecs.iter().enumerate() {
            if mix >> i & 1 == 1 {
                sum.xor_assign(v);
            }
            prop_assert!(s.contains(v));
        }
        prop_assert!(s.contains(&sum));
        prop_assert!(Subspace::span(20, s.basis().to_vec()).is_subspace_of(&s));
    }
}
