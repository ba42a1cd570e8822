use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use ihall_core::fq::{gl_order, FqMatrix};
use ihall_core::quiver::{Algebra, DimVector, IQuiver};
use ihall_core::rep::{
    aut_order_by_endomorphisms, projective_cover_pd_le_one, res_h_is_free, RepContext,
};

// number of m x n matrices of rank r over F_q
fn rank_count(m: u32, n: u32, r: u32, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..r {
        num *= (q.pow(m) - q.pow(i)) * (q.pow(n) - q.pow(i));
        den *= q.pow(r) - q.pow(i);
    }
    num / den
}

fn dims_up_to(n: usize, total: i64) -> Vec<DimVector> {
    DimVector(vec![total; n])
        .sub_vectors()
        .into_iter()
        .filter(|d| d.total() <= total)
        .collect()
}

#[test]
fn a2_classes_match_matrix_ranks() {
    for q in [2u64, 3] {
        let ctx = RepContext::new(Algebra::path(IQuiver::a2().quiver()), q).unwrap();
        for m in 0..=3u32 {
            for n in 0..=3u32 {
                let d = DimVector(vec![m as i64, n as i64]);
                let census = ctx.census(&d).unwrap();
                assert_eq!(census.len(), m.min(n) as usize + 1);
                let group = gl_order(m as usize, q) * gl_order(n as usize, q);
                let mut auts: Vec<u128> = census.classes().iter().map(|c| c.aut).collect();
                auts.sort();
                let mut want: Vec<u128> = (0..=m.min(n))
                    .map(|r| group / rank_count(n, m, r, q as u128))
                    .collect();
                want.sort();
                assert_eq!(auts, want, "dim {d} q={q}");
            }
        }
    }
}

#[test]
fn dual_numbers_orbit_sum_matches_brute_force() {
    // k[eps]/eps^2 at q = 2: count square-zero matrices directly
    let q = 2u32;
    let ctx = RepContext::new(Algebra::bar(&IQuiver::single_vertex()), q as u64).unwrap();
    for n in 0..=3usize {
        let mut square_zero = 0u128;
        for code in 0..(1u64 << (n * n)) {
            let data = (0..n * n).map(|k| ((code >> k) & 1) as u32).collect();
            let a = FqMatrix::from_vec(q, n, n, data);
            if a.mul(&a).is_zero() {
                square_zero += 1;
            }
        }
        let census = ctx.census(&DimVector(vec![n as i64])).unwrap();
        let orbit_sum: u128 = census
            .classes()
            .iter()
            .map(|c| gl_order(n, q as u64) / c.aut)
            .sum();
        assert_eq!(orbit_sum, square_zero, "n={n}");
        assert_eq!(census.valid_count(), square_zero);
        // Jordan types with blocks of size at most two
        assert_eq!(census.len(), n / 2 + 1);
    }
}

#[test]
fn aut_agrees_with_endomorphism_count() {
    for iq in [IQuiver::a2(), IQuiver::cyclic_c2(), IQuiver::two_swapped()] {
        for alg in [Algebra::path(iq.quiver()), Algebra::bar(&iq)] {
            let ctx = RepContext::new(alg, 2).unwrap();
            for d in dims_up_to(iq.n_vertices(), 3) {
                for id in ctx.classes(&d).unwrap() {
                    let rep = ctx.rep(&id).unwrap();
                    let direct = aut_order_by_endomorphisms(ctx.algebra(), &rep, 1 << 20).unwrap();
                    assert_eq!(ctx.aut(&id).unwrap(), direct, "{d}#{}", id.index);
                }
            }
        }
    }
}

#[test]
fn finite_projective_dimension_tests_agree() {
    for iq in [IQuiver::single_vertex(), IQuiver::a2(), IQuiver::two_swapped(), IQuiver::rank_two(2, 0)] {
        let ctx = RepContext::new(Algebra::bar(&iq), 2).unwrap();
        for d in dims_up_to(iq.n_vertices(), 4) {
            for id in ctx.classes(&d).unwrap() {
                let rep = ctx.rep(&id).unwrap();
                assert_eq!(
                    res_h_is_free(&iq, &rep),
                    projective_cover_pd_le_one(&iq, &rep).unwrap(),
                    "{d}#{}",
                    id.index
                );
            }
        }
    }
}

#[test]
fn submodule_totals_are_grassmannian_sums() {
    let ctx = RepContext::new(Algebra::path(IQuiver::single_vertex().quiver()), 3).unwrap();
    let s = ctx.simple(0).unwrap();
    for t in 0..=3 {
        let z = ctx.multiple(&s, t).unwrap();
        let want: u128 = (0..=t as i64)
            .map(|k| ihall_core::fq::grassmannian_count(k, t as i64, 3))
            .sum();
        assert_eq!(ctx.hall_table(&z).unwrap().submodules(), want);
    }
}

fn pick(iq_index: usize) -> IQuiver {
    [IQuiver::a2(), IQuiver::cyclic_c2(), IQuiver::rank_two(2, 0)][iq_index].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    // sum_Z |Ext^1(X,Y)_Z| / |Hom(X,Y)| = q^{-<X,Y>} on hereditary categories
    #[test]
    fn hall_coefficients_sum_to_euler_power(
        k in 0usize..3,
        dx in proptest::collection::vec(0i64..=2, 2),
        dy in proptest::collection::vec(0i64..=2, 2),
        sx in 0usize..8,
        sy in 0usize..8,
    ) {
        let iq = pick(k);
        let dx = DimVector(dx);
        let dy = DimVector(dy);
        prop_assume!(dx.total() + dy.total() <= 4);
        let ctx = RepContext::new(Algebra::path(iq.quiver()), 2).unwrap();
        let xs = ctx.classes(&dx).unwrap();
        let ys = ctx.classes(&dy).unwrap();
        let (x, y) = (&xs[sx % xs.len()], &ys[sy % ys.len()]);
        let mut total = BigRational::zero();
        for z in ctx.classes(&(&dx + &dy)).unwrap() {
            total += ctx.hall_coefficient(x, y, &z).unwrap();
        }
        let e = iq.euler_form(&dx, &dy);
        let two = BigRational::from_integer(2.into());
        let want = if e >= 0 {
            BigRational::from_integer(1.into()) / two.pow(e as i32)
        } else {
            two.pow((-e) as i32)
        };
        prop_assert_eq!(total, want);
    }

    #[test]
    fn classification_is_invariant_under_direct_sum_order(
        k in 0usize..3,
        dx in proptest::collection::vec(0i64..=2, 2),
        dy in proptest::collection::vec(0i64..=2, 2),
        sx in 0usize..8,
        sy in 0usize..8,
    ) {
        let iq = pick(k);
        let (dx, dy) = (DimVector(dx), DimVector(dy));
        prop_assume!(dx.total() + dy.total() <= 4);
        let ctx = RepContext::new(Algebra::bar(&iq), 2).unwrap();
        let xs = ctx.classes(&dx).unwrap();
        let ys = ctx.classes(&dy).unwrap();
        let (x, y) = (&xs[sx % xs.len()], &ys[sy % ys.len()]);
        prop_assert_eq!(ctx.direct_sum(x, y).unwrap(), ctx.direct_sum(y, x).unwrap());
        let hom = ctx.hom_dim(x, y).unwrap() + ctx.hom_dim(y, x).unwrap();
        prop_assert!(hom as i64 <= 2 * dx.total() * dy.total());
    }
}
