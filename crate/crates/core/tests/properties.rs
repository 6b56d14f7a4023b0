use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quasipos::action::{eschenburg_free, horizontal_basis, so8_point, BiquotientSpec};
use quasipos::cayley::{m_basis, oct_mul, Octonion};
use quasipos::charclass::poly::{GradedPoly, VarSet};
use quasipos::charclass::{pullback_bfq, pullback_bg, x1, x2, y};
use quasipos::lie::{chain_basis, ChainSpec};
use quasipos::matrix::Mat;
use quasipos::metric::DeformedMetric;

fn combo(basis: &[Mat<f64>], c: &[f64]) -> Mat<f64> {
    basis.iter().zip(c).fold(Mat::zeros(basis[0].rows(), basis[0].cols()), |acc, (b, &x)| acc.add(&b.scale(&x)))
}

fn chains() -> impl Strategy<Value = ChainSpec> {
    prop_oneof![Just(ChainSpec::So8G2), (2usize..4).prop_map(|n| ChainSpec::Unitary { n })]
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, len)
}

fn chain_vectors() -> impl Strategy<Value = (ChainSpec, Vec<f64>, Vec<f64>)> {
    chains().prop_flat_map(|c| {
        let d = c.dim();
        (Just(c), coeffs(d), coeffs(d))
    })
}

fn metric(c: ChainSpec, two_step: bool) -> DeformedMetric {
    if two_step && c.supports_two_step() {
        DeformedMetric::default_two_step(c).unwrap()
    } else {
        DeformedMetric::default_one_step(c)
    }
}

proptest! {
    #[test]
    fn octonion_norm_is_multiplicative(a in prop::array::uniform8(-5.0f64..5.0), b in prop::array::uniform8(-5.0f64..5.0)) {
        let (a, b) = (Octonion::new(a), Octonion::new(b));
        let lhs = oct_mul(&a, &b).norm_sq();
        let rhs = a.norm_sq() * b.norm_sq();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn split_is_an_orthogonal_projection((c, u, _) in chain_vectors()) {
        let x = combo(&chain_basis(c), &u);
        let parts = c.split(&x);
        prop_assert!(parts.sum().sub(&x).max_abs() < 1e-12);
        let (p, m, h) = (&parts.p, &parts.m, &parts.h);
        for (a, b) in [(p, m), (p, h), (m, h)] {
            prop_assert!(c.inner0(a, b).abs() < 1e-10);
        }
        let again = c.split(m);
        prop_assert!(again.m.sub(m).max_abs() < 1e-12);
        prop_assert!(again.p.max_abs() < 1e-12 && again.h.max_abs() < 1e-12);
    }

    #[test]
    fn phi_inverts_and_inner_is_positive((c, u, v) in chain_vectors(), two in any::<bool>()) {
        let g = metric(c, two);
        let basis = chain_basis(c);
        let (x, y) = (combo(&basis, &u), combo(&basis, &v));
        prop_assert!(g.phi_inv_mat(&g.phi_mat(&x)).sub(&x).max_abs() < 1e-10);
        prop_assert!(g.psi_inv_mat(&g.psi_mat(&x)).sub(&x).max_abs() < 1e-10);
        prop_assert!((g.inner_mat(&x, &y) - g.inner_mat(&y, &x)).abs() < 1e-10);
        if x.max_abs() > 1e-6 {
            prop_assert!(g.inner_mat(&x, &x) > 0.0);
        }
    }

    #[test]
    fn residual_is_rotation_invariant((c, u, v) in chain_vectors(), two in any::<bool>(), t in 0.0f64..6.3) {
        let g = metric(c, two);
        let basis = chain_basis(c);
        let (x, y) = (combo(&basis, &u), combo(&basis, &v));
        let (ct, st) = (t.cos(), t.sin());
        let x2 = x.scale(&ct).add(&y.scale(&st));
        let y2 = y.scale(&ct).sub(&x.scale(&st));
        if let (Ok(r1), Ok(r2)) = (g.flat_residual_mat(&x, &y), g.flat_residual_mat(&x2, &y2)) {
            prop_assert!((r1 - r2).abs() <= 1e-8 * r1.abs().max(1.0), "{} {}", r1, r2);
        }
    }

    #[test]
    fn horizontal_vectors_are_orthogonal_to_orbits(t in 0.05f64..1.5, n11 in any::<bool>()) {
        let spec = if n11 { BiquotientSpec::n11() } else { BiquotientSpec::m13() };
        let basis = horizontal_basis(&spec, &so8_point(t.cos(), t.sin()), spec.default_metrics()).unwrap();
        prop_assert_eq!(basis.dim(), if n11 { 11 } else { 13 });
        for tan in basis.tangents() {
            prop_assert!(basis.setup.vertical_defect(&tan) < 1e-10);
        }
    }

    #[test]
    fn freeness_ignores_order_and_orientation(
        p in prop::collection::vec(-5i64..=5, 3..=4),
        q in prop::array::uniform2(-5i64..=5),
        k in 0usize..24,
    ) {
        let free = eschenburg_free(&p, &q).unwrap();
        let perm = p.iter().copied().permutations(p.len()).nth(k % (if p.len() == 3 { 6 } else { 24 })).unwrap();
        prop_assert_eq!(eschenburg_free(&perm, &q).unwrap(), free);
        prop_assert_eq!(eschenburg_free(&p, &[q[1], q[0]]).unwrap(), free);
        let neg: Vec<i64> = p.iter().map(|x| -x).collect();
        prop_assert_eq!(eschenburg_free(&neg, &[-q[0], -q[1]]).unwrap(), free);
    }
}

// Homogeneous t̄-polynomials: each term is a product of `deg` generators.
fn t_poly() -> impl Strategy<Value = GradedPoly> {
    (1usize..4).prop_flat_map(|deg| {
        prop::collection::vec((prop::collection::vec(0usize..4, deg), -6i64..=6), 1..5).prop_map(|terms| {
            terms.into_iter().fold(GradedPoly::zero(VarSet::T), |acc, (idx, c)| {
                let mono = idx.iter().fold(GradedPoly::one(VarSet::T), |m, &i| &m * &GradedPoly::var(VarSet::T, i).unwrap());
                acc + mono.scale(c)
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pullbacks_are_graded_ring_maps(a in t_poly(), b in t_poly(), q in prop::array::uniform4(-3i64..=3)) {
        let ab = &a * &b;
        for pull in [&(|p: &GradedPoly| pullback_bfq(p, q)) as &dyn Fn(&GradedPoly) -> _, &|p: &GradedPoly| pullback_bg(p)] {
            let (pa, pb) = (pull(&a).unwrap(), pull(&b).unwrap());
            prop_assert_eq!(pull(&ab).unwrap(), &pa * &pb);
            prop_assert_eq!(pull(&(a.clone() + b.clone())).unwrap(), pa.clone() + pb);
            if !pa.is_zero() {
                prop_assert_eq!(pa.degree(), a.degree());
            }
        }
    }

    #[test]
    fn s_reduction_is_canonical(a in -20i64..=20, b in -20i64..=20, e in prop::array::uniform3(0u32..4)) {
        let s: Vec<GradedPoly> = (0..3).map(|i| GradedPoly::var(VarSet::S, i).unwrap()).collect();
        let f = &(&s[0].pow(e[0]) * &s[1].pow(e[1])) * &s[2].pow(e[2]);
        let g = (&s[2] * &s[2]) + s[0].clone();
        // Identity substitution is a no-op.
        prop_assert_eq!(f.substitute(&s[..2]).unwrap(), f.clone());
        // Evaluating with s̄₃ = −s̄₁ − s̄₂ respects products.
        let pt = [GradedPoly::constant(VarSet::U, a), GradedPoly::constant(VarSet::U, b)];
        let ev = |p: &GradedPoly| p.substitute(&pt).unwrap().coeff(&[0]);
        let direct = num_bigint::BigInt::from(a).pow(e[0]) * num_bigint::BigInt::from(b).pow(e[1]) * num_bigint::BigInt::from(-a - b).pow(e[2]);
        prop_assert_eq!(ev(&f), direct);
        prop_assert_eq!(ev(&(&f * &g)), ev(&f) * ev(&g));
    }
}

fn t_images(perm: &[usize], signs: u8) -> Vec<GradedPoly> {
    perm.iter()
        .enumerate()
        .map(|(i, &j)| {
            let v = GradedPoly::var(VarSet::T, j).unwrap();
            if signs >> i & 1 == 1 { -v } else { v }
        })
        .collect()
}

#[test]
fn t_classes_are_weyl_invariant() {
    let mut count = 0;
    for perm in (0..4).permutations(4) {
        for signs in (0u8..16).filter(|s| s.count_ones() % 2 == 0) {
            let img = t_images(&perm, signs);
            for i in 1..=4 {
                let yi = y(i).unwrap();
                assert_eq!(yi.substitute(&img).unwrap(), yi, "y{i} {perm:?} {signs:b}");
            }
            count += 1;
        }
    }
    assert_eq!(count, 192);
}

#[test]
fn s_classes_are_weyl_invariant() {
    let s: Vec<GradedPoly> = (0..3).map(|i| GradedPoly::var(VarSet::S, i).unwrap()).collect();
    for perm in (0..3).permutations(3) {
        for sign in [1, -1] {
            let img: Vec<GradedPoly> = perm[..2].iter().map(|&j| s[j].scale(sign)).collect();
            for x in [x1(), x2()] {
                assert_eq!(x.substitute(&img).unwrap(), x, "{perm:?} {sign}");
            }
        }
    }
}

// G2 acts transitively on orthonormal pairs in Im Ca, so the bracket of an
// orthonormal m-pair has constant nonzero length.
#[test]
fn orthonormal_m_pairs_never_commute() {
    let c = ChainSpec::So8G2;
    let basis = m_basis::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut rand_m = || combo(&basis, &(0..7).map(|_| rng.random_range(-1.0..1.0)).collect::<Vec<_>>());
    let mut seen: Option<f64> = None;
    for _ in 0..10_000 {
        let x = rand_m();
        let x = x.scale(&(1.0 / c.norm0_sq(&x).sqrt()));
        let y = rand_m();
        let y = y.sub(&x.scale(&c.inner0(&x, &y)));
        let y = y.scale(&(1.0 / c.norm0_sq(&y).sqrt()));
        let b = c.norm0_sq(&x.bracket(&y));
        assert!(b > 1e-6);
        let s = *seen.get_or_insert(b);
        assert!((b - s).abs() < 1e-9 * s, "{b} vs {s}");
    }
}
