use std::collections::BTreeMap;

use kpg_core::algebra::{
    frac, parse_poly, parse_rf, LaurentSeries, Monomial, MultiPoly, Scalar, Var, RF,
};
use kpg_core::hirota::residual_vanishes;
use kpg_core::sato::*;
use proptest::prelude::*;

fn rf(s: &str) -> RF {
    parse_rf(s).unwrap()
}

fn rfs(v: &[&str]) -> Vec<RF> {
    v.iter().map(|s| rf(s)).collect()
}

fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<RF>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| RF::int(x)).collect())
        .collect()
}

/// `exp(l)` as a polynomial, keeping weighted degree at most `n`.
fn exp_truncated(l: &MultiPoly, n: i64) -> TrivariatePoly {
    let mut acc = MultiPoly::one();
    let mut term = MultiPoly::one();
    for j in 1..=n {
        term = (&term * l).scale(&frac(1, j));
        acc = &acc + &term;
    }
    TrivariatePoly::from_poly(acc).truncate(n)
}

fn projectively_equal(a: &[RF], b: &[RF]) -> bool {
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(|x| x.is_zero());
    };
    if b[i].is_zero() {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| (x * &b[i]) == (y * &a[i]))
}

#[test]
fn schur_table() {
    let table = [
        ("11", "x^2/2 - y"),
        ("2", "x^2/2 + y"),
        ("111", "x^3/6 - x*y + t"),
        ("3", "x^3/6 + x*y + t"),
        ("21", "x^3/3 - t"),
        ("211", "x^4/8 - x^2*y/2 - y^2/2"),
        ("22", "x^4/12 - t*x + y^2"),
        ("31", "x^4/8 + x^2*y/2 - y^2/2"),
    ];
    for (l, p) in table {
        assert_eq!(
            schur_sigma(&l.parse().unwrap()),
            parse_poly(p).unwrap(),
            "sigma_{l}"
        );
    }
}

#[test]
fn cauchy_identity_two_parts() {
    let kappa = rfs(&["k1", "k2"]);
    let l = parse_poly("x*(k1 + k2) + y*(k1^2 + k2^2) + t*(k1^3 + k2^3)").unwrap();
    let lhs = exp_truncated(&l, 6);
    let mut terms: Vec<(RF, MultiPoly)> = Vec::new();
    for lam in Partition::up_to_weight(6)
        .into_iter()
        .filter(|p| p.len() <= 3)
    {
        terms.push((delta_lambda(&kappa, &[0, 1], &lam), schur_sigma(&lam)));
    }
    let rhs = TrivariatePoly::linear_combination(terms.iter().map(|(c, p)| (c, p)));
    let vdm = delta_lambda(&kappa, &[0, 1], &Partition::empty());
    assert_eq!(lhs.scale(&vdm), rhs);
}

#[test]
fn three_point_soliton_frame() {
    let s =
        SolitonData::from_matrix(rfs(&["1", "2", "3"]), vec![rfs(&["1/2", "-1", "1/2"])]).unwrap();
    let f = frame_from_soliton(&s, 8).unwrap();
    let c = schur_coeffs(&s, 6);
    for (l, v) in &c {
        assert_eq!(&plucker(&f, l).unwrap(), v, "{l}");
    }
    // The expansion starts at sigma_2, as for a genus-2 curve.
    let tau = tau_truncated(&f, 2).unwrap();
    assert_eq!(
        tau.as_rational_poly().unwrap(),
        schur_sigma(&"2".parse().unwrap())
    );
    assert!(soliton_tau(&s).hirota_operator().is_zero());
}

#[test]
fn one_two_soliton_frame() {
    let s = SolitonData::from_matrix(rfs(&["0", "1"]), vec![rfs(&["1", "1"])]).unwrap();
    let c = schur_coeffs(&s, 3);
    assert_eq!(c[&Partition::empty()], RF::int(2));
    let f = frame_from_soliton(&s, 5).unwrap();
    let xs: Vec<RF> = c.keys().map(|l| plucker(&f, l).unwrap()).collect();
    let cs: Vec<RF> = c.values().cloned().collect();
    assert!(projectively_equal(&xs, &cs));
}

#[test]
fn symbolic_two_four_frame() {
    let s = SolitonData::from_matrix(
        rfs(&["k1", "k2", "k3", "k4"]),
        int_rows(&[vec![1, 0, -1, 2], vec![0, 1, 3, 1]]),
    )
    .unwrap();
    let f = frame_from_soliton(&s, 5).unwrap();
    let c = schur_coeffs(&s, 4);
    let xs: Vec<RF> = c.keys().map(|l| plucker(&f, l).unwrap()).collect();
    let cs: Vec<RF> = c.values().cloned().collect();
    assert!(projectively_equal(&xs, &cs));
    assert!(residual_vanishes(&soliton_residual(&s).unwrap()));
}

#[test]
fn plucker_relations_on_frames() {
    let kappa = rfs(&["1", "2", "-3", "5", "7", "-11"]);
    let cube = int_rows(&[
        vec![1, 1, 0, 0, 0, 0],
        vec![0, 0, 1, 1, 0, 0],
        vec![0, 0, 0, 0, 1, 1],
    ]);
    let f = frame_from_soliton(&SolitonData::from_matrix(kappa, cube).unwrap(), 10).unwrap();
    assert!(sample_relations(&f).unwrap().iter().all(|r| r.is_zero()));
    for (k, n) in [(2, 4), (2, 5), (3, 6)] {
        assert!(
            frame_relations(&f, k, n)
                .unwrap()
                .iter()
                .all(|r| r.is_zero()),
            "Gr({k},{n})"
        );
    }
}

#[test]
fn stability_of_minors() {
    let s = SolitonData::from_matrix(
        rfs(&["1", "3", "4", "-2"]),
        int_rows(&[vec![1, 2, 0, 1], vec![0, 1, 1, 5]]),
    )
    .unwrap();
    let f = frame_from_soliton(&s, 7).unwrap();
    for l in Partition::up_to_weight(6) {
        let q = l.len().max(f.ell());
        assert_eq!(
            plucker_with_size(&f, &l, q).unwrap(),
            plucker_with_size(&f, &l, q + 1).unwrap(),
            "{l}"
        );
    }
}

#[test]
fn precision_is_checked() {
    let s = SolitonData::from_matrix(rfs(&["1", "2"]), vec![rfs(&["1", "1"])]).unwrap();
    let f = frame_from_soliton(&s, 3).unwrap();
    assert!(plucker(&f, &"4".parse().unwrap()).is_ok());
    assert!(plucker(&f, &"5".parse().unwrap())
        .unwrap_err()
        .is_precision());
    assert!(tau_truncated(&f, 6).unwrap_err().is_precision());
}

#[test]
fn gauge_by_one_minus_kappa_z() {
    let s =
        SolitonData::from_matrix(rfs(&["1", "2", "3"]), vec![rfs(&["1/2", "-1", "1/2"])]).unwrap();
    let f = frame_from_soliton(&s, 10).unwrap();
    assert_eq!(
        gauge_by_unit(&f, &LaurentSeries::one(), 1)
            .unwrap()
            .columns(),
        f.columns()
    );
    let h = LaurentSeries::exact(0, rfs(&["1", "-2"]));
    let g = gauge_by_unit(&f, &h, 12).unwrap();
    let n = 6;
    let before = tau_truncated(&f, n).unwrap();
    let after = tau_truncated(&g, n).unwrap();
    // Multiplying by 1 - k z multiplies tau by exp(-(k x + k^2 y + k^3 t)).
    let shifted = exp_truncated(&parse_poly("-2*x - 4*y - 8*t").unwrap(), n as i64)
        .mul(&before)
        .truncate(n as i64);
    let a = shifted.coefficients();
    let b = after.coefficients();
    let keys: Vec<&Monomial> = a.keys().chain(b.keys()).collect();
    let av: Vec<RF> = keys
        .iter()
        .map(|m| a.get(*m).cloned().unwrap_or_else(RF::zero))
        .collect();
    let bv: Vec<RF> = keys
        .iter()
        .map(|m| b.get(*m).cloned().unwrap_or_else(RF::zero))
        .collect();
    assert!(projectively_equal(&av, &bv));
    assert!(gauge_by_unit(&f, &LaurentSeries::monomial(RF::one(), 1), 3).is_err());
}

#[test]
fn non_plucker_vector_fails() {
    let kappa = rfs(&["k1", "k2", "k3", "k4"]);
    let mut p: BTreeMap<Vec<usize>, RF> = BTreeMap::new();
    for (i, v) in [
        ([0, 1], 1),
        ([0, 2], 1),
        ([0, 3], 1),
        ([1, 2], 1),
        ([1, 3], 1),
        ([2, 3], 1),
    ] {
        p.insert(i.to_vec(), RF::int(v));
    }
    assert!(SolitonData::from_plucker(kappa.clone(), 2, p.clone()).is_err());
    let s = SolitonData::from_plucker_unchecked(kappa, 2, p).unwrap();
    assert!(!residual_vanishes(&soliton_residual(&s).unwrap()));
    assert!(!soliton_tau(&s).hirota_operator().is_zero());
}

#[test]
fn full_rank_single_term() {
    let s =
        SolitonData::from_matrix(rfs(&["k1", "k2"]), int_rows(&[vec![1, 0], vec![0, 1]])).unwrap();
    assert!(residual_vanishes(&soliton_residual(&s).unwrap()));
}

/// Term-by-term differentiation of a dense representation, independent of
/// the polynomial type.
fn hirota_oracle(p: &BTreeMap<[u32; 3], Scalar>) -> BTreeMap<[u32; 3], Scalar> {
    let d = |p: &BTreeMap<[u32; 3], Scalar>, v: usize| -> BTreeMap<[u32; 3], Scalar> {
        let mut out = BTreeMap::new();
        for (e, c) in p {
            if e[v] > 0 {
                let mut f = *e;
                f[v] -= 1;
                out.insert(f, c * Scalar::from_integer(e[v].into()));
            }
        }
        out
    };
    let mul = |a: &BTreeMap<[u32; 3], Scalar>, b: &BTreeMap<[u32; 3], Scalar>, k: i64| {
        let mut out: BTreeMap<[u32; 3], Scalar> = BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                *out.entry(e).or_default() += ca * cb * Scalar::from_integer(k.into());
            }
        }
        out
    };
    let x = |p: &BTreeMap<[u32; 3], Scalar>, n: usize| (0..n).fold(p.clone(), |a, _| d(&a, 0));
    let parts = [
        mul(p, &x(p, 4), 1),
        mul(&x(p, 3), &x(p, 1), -4),
        mul(&x(p, 2), &x(p, 2), 3),
        mul(&x(p, 1), &d(p, 2), 4),
        mul(p, &d(&x(p, 1), 2), -4),
        mul(p, &d(&d(p, 1), 1), 3),
        mul(&d(p, 1), &d(p, 1), -3),
    ];
    let mut out: BTreeMap<[u32; 3], Scalar> = BTreeMap::new();
    for part in parts {
        for (e, c) in part {
            *out.entry(e).or_default() += c;
        }
    }
    out.retain(|_, c| *c != Scalar::from_integer(0.into()));
    out
}

fn to_poly(p: &BTreeMap<[u32; 3], Scalar>) -> MultiPoly {
    let v = [Var::new("x"), Var::new("y"), Var::new("t")];
    MultiPoly::from_terms(p.iter().map(|(e, c)| {
        (
            Monomial::from_pairs((0..3).map(|i| (v[i], e[i]))),
            c.clone(),
        )
    }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hirota_apply_matches_oracle(terms in prop::collection::vec(((0u32..5, 0u32..3, 0u32..3), -5i64..6), 1..6)) {
        let mut dense: BTreeMap<[u32; 3], Scalar> = BTreeMap::new();
        for ((a, b, c), k) in terms {
            *dense.entry([a, b, c]).or_default() += Scalar::from_integer(k.into());
        }
        dense.retain(|_, c| *c != Scalar::from_integer(0.into()));
        let got = hirota_apply(&TrivariatePoly::from_poly(to_poly(&dense)));
        prop_assert_eq!(got.as_rational_poly().unwrap(), to_poly(&hirota_oracle(&dense)));
    }

    #[test]
    fn random_solitons_solve_kp(k in 1usize..3, extra in 0usize..3, seed in prop::collection::vec(-3i64..4, 18), kap in prop::collection::btree_set(-9i64..10, 5)) {
        let n = (k + extra).min(5);
        let kappa: Vec<RF> = kap.into_iter().take(n).map(RF::int).collect();
        let a: Vec<Vec<RF>> = (0..k).map(|r| (0..n).map(|c| RF::int(seed[r * n + c] + if r == c { 7 } else { 0 })).collect()).collect();
        let s = SolitonData::from_matrix(kappa, a).unwrap();
        prop_assert!(residual_vanishes(&soliton_residual(&s).unwrap()));
        let f = frame_from_soliton(&s, 5).unwrap();
        let c = schur_coeffs(&s, 4);
        let xs: Vec<RF> = c.keys().map(|l| plucker(&f, l).unwrap()).collect();
        let cs: Vec<RF> = c.values().cloned().collect();
        prop_assert!(projectively_equal(&xs, &cs));
    }
}

#[test]
fn weighted_degree_bookkeeping() {
    let t = TrivariatePoly::from_poly(parse_poly("x*t + y^2 + 3").unwrap());
    assert_eq!(t.weighted_degree(), Some(4));
    assert_eq!(
        t.lowest_part().as_rational_poly().unwrap(),
        MultiPoly::int(3)
    );
}
