use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use latvoa::element::Element;
use latvoa::fock::{heisenberg_mode, stratum_basis, theta, Sign};
use latvoa::graded::Graded;
use latvoa::linalg::row_reduce;
use latvoa::modes::ModeEngine;
use latvoa::par::Exec;
use latvoa::scalar::{int, ratio, Scalar, Weight};
use latvoa::space::{Basis, LatticeSpec, Space, SpaceRef};
use latvoa::zhu::{circ, dimension_trend, star};

fn wt(n: i64) -> Weight {
    Weight::from_integer(n)
}

fn vl(norms: &[i64], cutoff: i64) -> SpaceRef {
    Space::algebra(LatticeSpec::new(norms.to_vec()).unwrap(), wt(cutoff))
}

fn combo(space: &SpaceRef, basis: &[Basis], coeffs: &[i64]) -> Element {
    Element::from_terms(space, basis.iter().cloned().zip(coeffs.iter().map(|&c| int(c))))
}

/// Rank by fraction-free Gaussian elimination on an integer matrix.
fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k];
                m[r][k] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

fn int_rows(vs: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    vs.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=20).prop_map(|(p, q)| ratio(p, q))
}

/// Coefficient rows over the weight-3 stratum of `V_L`, `d = 2` (dimension 7).
fn rows_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 7), 0..9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn row_reduce_idempotent_and_rank_bounded(rows in rows_strategy()) {
        let space = vl(&[2], 3);
        let basis = stratum_basis(&space, wt(3));
        let vs: Vec<Element> = rows.iter().map(|r| combo(&space, &basis, r)).collect();
        let rb = row_reduce(&space, Some(wt(3)), &vs).unwrap();
        let again = row_reduce(&space, Some(wt(3)), rb.rows()).unwrap();
        prop_assert_eq!(rb.rows(), again.rows());
        prop_assert!(rb.rank() <= rows.len().min(basis.len()));
        prop_assert_eq!(rb.rank(), bareiss_rank(int_rows(&rows)));
    }

    #[test]
    fn membership_matches_oracle(rows in rows_strategy(), v in prop::collection::vec(-2i64..=2, 7), mix in prop::collection::vec(-2i64..=2, 9)) {
        let space = vl(&[2], 3);
        let basis = stratum_basis(&space, wt(3));
        let rb = row_reduce(&space, Some(wt(3)), &rows.iter().map(|r| combo(&space, &basis, r)).collect::<Vec<_>>()).unwrap();
        // half the time test a vector that is in the span by construction
        let target: Vec<i64> = if mix[0] >= 0 && !rows.is_empty() {
            (0..7).map(|j| rows.iter().zip(&mix).map(|(r, m)| r[j] * m).sum()).collect()
        } else {
            v
        };
        let mut with = rows.clone();
        with.push(target.clone());
        let oracle = bareiss_rank(int_rows(&with)) == bareiss_rank(int_rows(&rows));
        let e = combo(&space, &basis, &target);
        let coords = rb.membership(&e).unwrap();
        prop_assert_eq!(coords.is_some(), oracle);
        if let Some(c) = coords {
            prop_assert_eq!(rb.combine(&c), e);
        }
    }

    #[test]
    fn weight_law_and_truncation(ui in 0usize..13, wi in 0usize..13, n in -3i64..=3) {
        let engine = ModeEngine::new();
        let small = vl(&[2], 6);
        let big = vl(&[2], 8);
        let pool: Vec<Basis> = (0..=2).flat_map(|d| stratum_basis(&small, wt(d))).collect();
        let (ub, wb) = (&pool[ui % pool.len()], &pool[wi % pool.len()]);
        let u = Element::basis(&small, ub.clone());
        let w = Element::basis(&small, wb.clone());
        let expected = ub.weight() - wt(n + 1) + wb.weight();
        match engine.mode_action(&u, n, &w) {
            Ok(r) => {
                prop_assert!(r.terms().keys().all(|b| b.weight() == expected));
                let r_big = engine.mode_action(&u.in_space(&big).unwrap(), n, &w.in_space(&big).unwrap()).unwrap();
                prop_assert_eq!(r.in_space(&big).unwrap(), r_big);
            }
            Err(_) => prop_assert!(expected > wt(6)),
        }
    }

    #[test]
    fn creation_axiom(coeffs in prop::collection::vec(-3i64..=3, 13), n in 0i64..4) {
        let engine = ModeEngine::new();
        let space = vl(&[2, 4], 6);
        let basis: Vec<Basis> = (0..=2).flat_map(|d| stratum_basis(&space, wt(d))).take(13).collect();
        let u = combo(&space, &basis, &coeffs);
        let one = Element::vacuum(&space);
        prop_assert_eq!(engine.mode_action(&u, -1, &one).unwrap(), u.clone());
        prop_assert!(engine.mode_action(&u, n, &one).unwrap().is_zero());
    }

    #[test]
    fn star_and_circ_bilinear(a in -3i64..=3, b in -3i64..=3, i in 0usize..8, j in 0usize..8, k in 0usize..8) {
        let engine = ModeEngine::new();
        let space = vl(&[2], 6);
        let pool: Vec<Basis> = (0..=2).flat_map(|d| stratum_basis(&space, wt(d))).collect();
        let e = |x: usize| Element::basis(&space, pool[x % pool.len()].clone());
        let (x, y, z) = (e(i), e(j), e(k));
        let mut lin = x.scaled(&int(a));
        lin.add_scaled(&int(b), &y).unwrap();
        for f in [star, circ] {
            let lhs = f(&engine, &lin, &z).unwrap();
            let mut rhs = f(&engine, &x, &z).unwrap().scaled(&int(a));
            rhs.add_scaled(&int(b), &f(&engine, &y, &z).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            let lhs = f(&engine, &z, &lin).unwrap();
            let mut rhs = f(&engine, &z, &x).unwrap().scaled(&int(a));
            rhs.add_scaled(&int(b), &f(&engine, &z, &y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn theta_is_an_involution_on_strata() {
    let space = vl(&[2, 4], 5);
    for d in 0..=5 {
        let basis = stratum_basis(&space, wt(d));
        for b in &basis {
            let e = Element::basis(&space, b.clone());
            let t = theta(&e).unwrap();
            assert!(t.terms().keys().all(|x| x.weight() == wt(d)));
            assert_eq!(theta(&t).unwrap(), e);
        }
        let plus = Graded::theta(&space, Sign::Plus).unwrap().stratum_dim(wt(d)).unwrap();
        let minus = Graded::theta(&space, Sign::Minus).unwrap().stratum_dim(wt(d)).unwrap();
        assert_eq!(plus + minus, basis.len());
    }
}

#[test]
fn heisenberg_commutators() {
    let norms = [2, 4];
    let space = vl(&norms, 8);
    for m in -4i64..=4 {
        for n in -4i64..=4 {
            let top = 8 - m.abs() - n.abs();
            for d in 0..=top {
                for b in stratum_basis(&space, wt(d)) {
                    let v = Element::basis(&space, b);
                    for (i, &di) in norms.iter().enumerate() {
                        for j in 0..norms.len() {
                            let ab = heisenberg_mode(i, m, &heisenberg_mode(j, n, &v).unwrap()).unwrap();
                            let ba = heisenberg_mode(j, n, &heisenberg_mode(i, m, &v).unwrap()).unwrap();
                            let lhs = ab.sub(&ba).unwrap();
                            let c = if i == j && m + n == 0 { m * di } else { 0 };
                            assert_eq!(lhs, v.scaled(&int(c)), "i={i} j={j} m={m} n={n} v={v}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn memo_and_execution_do_not_change_results() {
    let space = vl(&[2], 6);
    let pool: Vec<Basis> = (0..=3).flat_map(|d| stratum_basis(&space, wt(d))).collect();
    let engines = [ModeEngine::new(), ModeEngine::without_memo(), ModeEngine::new().with_exec(Exec::Sequential)];
    for u in pool.iter().take(12) {
        for w in pool.iter().take(12) {
            for n in -2..=2 {
                let (ue, we) = (Element::basis(&space, u.clone()), Element::basis(&space, w.clone()));
                let rs: Vec<_> = engines.iter().map(|e| e.mode_action(&ue, n, &we).ok()).collect();
                assert!(rs.windows(2).all(|p| p[0] == p[1]));
            }
        }
    }
}

#[test]
fn zhu_dimension_non_increasing() {
    let engine = ModeEngine::new();
    let alg = Graded::full(&vl(&[2], 10));
    let trend = dimension_trend(&engine, &alg, 2..=7).unwrap();
    let dims: Vec<usize> = trend.values().copied().collect();
    assert!(dims.windows(2).all(|p| p[1] <= p[0]), "{dims:?}");
    assert_eq!(*dims.last().unwrap(), 5);
}

#[test]
fn bareiss_oracle_sanity() {
    assert_eq!(bareiss_rank(int_rows(&[vec![1, 2], vec![2, 4]])), 1);
    assert_eq!(bareiss_rank(int_rows(&[vec![0, 3, 1], vec![2, 1, 0], vec![2, 4, 1]])), 2);
    assert_eq!(bareiss_rank(int_rows(&[vec![2, -1], vec![1, 3]])), 2);
}
