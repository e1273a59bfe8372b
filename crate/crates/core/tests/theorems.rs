//! Structural statements about U checked over more parameter pairs and
//! larger truncations than the unit tests use.

use opfractal::matrix::{
    analyze_w0_sparsity, verify_block_diagonal, verify_block_equality, verify_commutation_even,
    verify_odd_relations, BlockMatrix, DEFAULT_TOL,
};
use opfractal::spectrum::{tilde_stratum_index, word_from_value};
use opfractal::{
    mu_hat, reduce_argument, BernoulliParams, Error, QuarterInt, Stratum, TildeStratum,
};

fn params(n: u32, p: u32) -> BernoulliParams {
    BernoulliParams::new(n, Some(p)).unwrap()
}

#[test]
fn block_structure_for_many_pairs() {
    for (n, p) in [(2, 3), (2, 7), (4, 5), (6, 5), (3, 7), (5, 3)] {
        let params = params(n, p);
        let diag = verify_block_diagonal(params, 5).unwrap();
        assert!(diag.passed(), "n={n} p={p}: {:?}", diag.violations);
        let eq = verify_block_equality(params, 5, 3).unwrap();
        assert!(eq.passed(), "n={n} p={p}: {:?}", eq.violations);
    }
}

#[test]
fn commutation_by_parity() {
    for (n, p) in [(2, 3), (4, 5), (6, 7)] {
        let r = verify_commutation_even(params(n, p), 4).unwrap();
        assert!(r.passed(), "n={n} p={p}: {:?}", r.violations);
        assert!(matches!(
            verify_odd_relations(params(n, p), 3),
            Err(Error::Parity { .. })
        ));
    }
    for (n, p) in [(3, 7), (5, 3), (5, 7)] {
        let r = verify_odd_relations(params(n, p), 3).unwrap();
        assert!(r.passed(), "n={n} p={p}: {:?}", r.violations);
    }
}

#[test]
fn matrix_is_origin_plus_copies_of_the_first_block() {
    let params = params(2, 5);
    let m = BlockMatrix::strata_major(params, 5, DEFAULT_TOL).unwrap();
    let strata: Vec<Stratum> = m
        .rows()
        .iter()
        .map(|&w| opfractal::spectrum::stratum_index(w))
        .collect();
    assert_eq!(m.entry(0, 0).value.value(), 1.0);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if strata[i] != strata[j] {
                assert!(m.is_zero(i, j), "({i}, {j})");
            }
        }
    }
    // entries of the G1 block equal those of the G0 block at the stripped indices
    let index = |w| m.rows().iter().position(|&r| r == w).unwrap();
    for (i, &row) in m.rows().iter().enumerate() {
        for (j, &col) in m.cols().iter().enumerate() {
            if strata[i] == Stratum::Level(1) && strata[j] == Stratum::Level(1) {
                let sigma = opfractal::DigitWord::from_mask(row.mask() >> 1).unwrap();
                let tau = opfractal::DigitWord::from_mask(col.mask() >> 1).unwrap();
                assert_eq!(m.entry(i, j).value, m.entry(index(sigma), index(tau)).value);
            }
        }
    }
}

#[test]
fn exact_one_witness_formula() {
    // γ′ = 1 + 4^{k+1} and ξ′ = 1 + 4(1 + 4ξ) with ξ = 5·4^{k−1}: 5γ′ − ξ′ = 0
    let params = BernoulliParams::quarter_five();
    for k in 1..=8u32 {
        let gamma = 1 + 4i128.pow(k + 1);
        let xi = 5 * 4i128.pow(k - 1);
        let xi_prime = 1 + 4 * (1 + 4 * xi);
        assert_eq!(5 * gamma - xi_prime, 0, "k = {k}");
        let col = word_from_value(QuarterInt::from_int(gamma), params).unwrap();
        let row = word_from_value(QuarterInt::from_int(xi_prime), params).unwrap();
        assert_eq!(
            tilde_stratum_index(col, params).unwrap(),
            TildeStratum::Level(k)
        );
        assert_eq!(
            tilde_stratum_index(row, params).unwrap(),
            TildeStratum::Level(0)
        );
        assert_eq!(row.len(), k + 3);
    }
}

#[test]
fn sparsity_at_several_depths() {
    for d in 2..=8 {
        let s = analyze_w0_sparsity(d, None).unwrap();
        assert!(s.passed(), "d = {d}: {:?}", s.report.violations);
    }
}

#[test]
fn star_blocks_may_vanish_inside_small_truncations() {
    // every entry of (T0, T4) within six digits lies in the zero set
    let s = analyze_w0_sparsity(6, None).unwrap();
    let block = s
        .block(TildeStratum::Level(0), TildeStratum::Level(4))
        .unwrap();
    assert_eq!(block.nonzero, 0);
    let witness = block.exact_one.unwrap();
    assert_eq!(witness.row.len(), 7);
    // 320 = 5·64 lies in Γ, which is why the smaller rows all vanish
    let params = BernoulliParams::quarter_five();
    assert!(word_from_value(QuarterInt::from_int(320), params).is_some());
}

#[test]
fn first_column_of_the_first_block() {
    // U(1, 5) = μ̂(25 − 1) = μ̂(24) ≈ 0.5811539214
    let params = BernoulliParams::quarter_five();
    let v = mu_hat(QuarterInt::from_int(24), params, 1e-13).unwrap();
    assert!((v.value() - 0.581_153_921_429_386_8).abs() <= v.error_bound + 1e-16);
    assert_eq!(
        reduce_argument(QuarterInt::from_int(24), params),
        reduce_argument(QuarterInt::from_int(6), params)
    );
}
