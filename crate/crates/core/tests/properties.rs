use std::sync::Arc;

use num_integer::Integer;
use proptest::prelude::*;

use qcag::aut::{orbit_partition, Automorphism};
use qcag::code::{
    distance_by_column_search, distance_by_enumeration, matrix_to_text, parse_matrix_text, shift_operator, Matrix,
};
use qcag::curve::{Family, KummerCurve};
use qcag::gf::{Fe, Field, FieldCtx};
use qcag::rrspace::rr_basis;

const ORDERS: [(u64, u32); 13] =
    [(2, 1), (3, 1), (5, 1), (7, 1), (31, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (3, 4), (2, 7)];

fn field(i: usize) -> Field {
    let (q, r) = ORDERS[i];
    FieldCtx::extension_of(q, r).unwrap()
}

fn elem(f: &FieldCtx, raw: u32) -> Fe {
    f.from_index(raw % f.order()).unwrap()
}

fn f31_curve() -> Arc<KummerCurve> {
    let f = FieldCtx::prime(31).unwrap();
    Arc::new(KummerCurve::from_ints(f, 2, &[1, 0, 0, 0, 0, 1], Family::Hyperelliptic).unwrap())
}

fn random_matrix(f: &FieldCtx, rows: usize, cols: usize, raw: &[u32]) -> Matrix {
    let data: Vec<Vec<Fe>> =
        (0..rows).map(|i| (0..cols).map(|j| elem(f, raw[(i * cols + j) % raw.len()])).collect()).collect();
    Matrix::from_rows(data, cols)
}

proptest! {
    #[test]
    fn field_axioms(i in 0..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(i);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            prop_assert_eq!(f.div(f.mul(b, a), a).unwrap(), b);
        }
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
    }

    #[test]
    fn frobenius_is_additive_and_trace_lands_in_subfield(i in 0..ORDERS.len(), a in any::<u32>(), b in any::<u32>()) {
        let f = field(i);
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        let tr = f.trace(a, 1).unwrap();
        prop_assert!(f.in_subfield(tr, 1).unwrap());
        prop_assert_eq!(f.trace(f.add(a, b), 1).unwrap(), f.add(tr, f.trace(b, 1).unwrap()));
    }

    #[test]
    fn power_orders_follow_gcd(ex in prop::sample::select(vec![1u32, 30]), ey in prop::sample::select(vec![1u32, 2, 4, 8, 16]), i in 0u64..60) {
        let c = f31_curve();
        let f = c.field().clone();
        let (ex, ey) = (f.from_int(ex as i64), f.from_int(ey as i64));
        // x^2 = y^5 + 1 has a constant term, so both scalings must be trivial on it
        prop_assume!(f.mul(ex, ex) == Fe::ONE && f.pow(ey, 5) == Fe::ONE);
        let s = Automorphism::diagonal(c, ex, ey).unwrap();
        let ord = s.order();
        prop_assert_eq!(s.pow(i).order(), ord / i.gcd(&ord));
        prop_assert!(s.pow(ord).map().is_identity());
    }

    #[test]
    fn orbits_partition_the_point_set(j in 0u64..10, e in 0u64..10) {
        let c = f31_curve();
        let f = c.field().clone();
        let zeta = f.element_of_order(10).unwrap();
        // (zeta^(5j) x, zeta^(2j) y) fixes x^2 - y^5 - 1; compose with powers of itself
        let base = Automorphism::diagonal(c.clone(), f.pow(zeta, 5 * j), f.pow(zeta, 2 * j)).unwrap();
        let s = base.pow(e);
        let points = c.points();
        let part = orbit_partition(&s, &points).unwrap();
        let mut all: Vec<_> = part.orbits.iter().flat_map(|o| o.points.iter().copied()).collect();
        prop_assert_eq!(all.len(), points.affine.len());
        all.sort();
        all.dedup();
        prop_assert_eq!(all.len(), points.affine.len());
        for o in &part.orbits {
            prop_assert_eq!(s.order() % o.len() as u64, 0);
            for (k, p) in o.points.iter().enumerate() {
                prop_assert!(c.contains(p));
                prop_assert_eq!(s.apply(p).unwrap(), o.points[(k + 1) % o.len()]);
            }
        }
    }

    #[test]
    fn rr_dimension_is_monotone_and_riemann_roch(m in 2u64..6, d in 1u64..9, t in 0u64..60) {
        prop_assume!(m.gcd(&d) == 1 && m.max(d) >= 3);
        let mut b = vec![0i64; d as usize + 1];
        b[0] = 1;
        b[d as usize] = 1;
        let Ok(c) = KummerCurve::from_ints(FieldCtx::prime(61).unwrap(), m, &b, Family::Generic) else {
            return Ok(());
        };
        let g = c.genus();
        let now = rr_basis(&c, t).dim() as u64;
        let next = rr_basis(&c, t + 1).dim() as u64;
        prop_assert!(next == now || next == now + 1);
        prop_assert!(now <= t + 1);
        prop_assert!(now + g >= t + 1);
        if t + 2 > 2 * g {
            prop_assert_eq!(now, t + 1 - g);
        }
    }

    #[test]
    fn shift_repeated_lcm_times_is_identity(blocks in prop::collection::vec(1usize..8, 1..5), raw in prop::collection::vec(any::<u32>(), 1..40)) {
        let f = FieldCtx::prime(7).unwrap();
        let n: usize = blocks.iter().sum();
        let c: Vec<Fe> = (0..n).map(|j| elem(&f, raw[j % raw.len()])).collect();
        let period = blocks.iter().fold(1usize, |acc, &l| acc.lcm(&l));
        let mut v = c.clone();
        for _ in 0..period {
            v = shift_operator(&v, &blocks).unwrap();
        }
        prop_assert_eq!(v, c);
    }

    #[test]
    fn rank_nullity_and_orthogonality(rows in 1usize..6, cols in 1usize..9, raw in prop::collection::vec(any::<u32>(), 1..60)) {
        let f = FieldCtx::extension_of(3, 2).unwrap();
        let g = random_matrix(&f, rows, cols, &raw);
        let h = g.nullspace(&f);
        prop_assert_eq!(g.rank(&f) + h.rows(), cols);
        let prod = g.mul_transpose(&f, &h);
        prop_assert!((0..prod.rows()).all(|i| prod.row(i).iter().all(|x| x.is_zero())));
    }

    #[test]
    fn text_format_round_trips(rows in 1usize..5, cols in 1usize..8, raw in prop::collection::vec(any::<u32>(), 1..40)) {
        let f = FieldCtx::extension_of(2, 3).unwrap();
        let g = random_matrix(&f, rows, cols, &raw);
        let blocks = vec![cols];
        let parsed = parse_matrix_text(&f, &matrix_to_text(&g, 8, &blocks)).unwrap();
        prop_assert_eq!(parsed.matrix, g);
        prop_assert_eq!(parsed.q, 8);
        prop_assert_eq!(parsed.blocks, blocks);
    }

    #[test]
    fn enumeration_and_column_search_agree(k in 1usize..4, n in 2usize..9, raw in prop::collection::vec(any::<u32>(), 1..40)) {
        prop_assume!(k < n);
        let f = FieldCtx::prime(5).unwrap();
        let g = random_matrix(&f, k, n, &raw);
        let (rref, pivots) = g.rref(&f);
        let k = pivots.len();
        prop_assume!(k > 0 && k < n);
        let g = Matrix::from_rows(rref.row_vecs()[..k].to_vec(), n);
        let e = distance_by_enumeration(&f, &g, 1, u64::MAX).unwrap();
        let (lo, hi) = distance_by_column_search(&f, &g.nullspace(&f), 1, n - k + 1, u64::MAX);
        prop_assert_eq!((lo, hi), (e, e));
    }
}
