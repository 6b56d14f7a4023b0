//! Worked examples checked against independent computations.

use quasipos::action::{eschenburg_point, horizontal_basis, so8_point, BiquotientSpec};
use quasipos::angle::Angle;
use quasipos::cayley::{g2_basis, g2_matrix, G2_PARAMS};
use quasipos::lie::ChainSpec;
use quasipos::matrix::Mat;
use quasipos::verify::normalize::lemma_xy;
use quasipos::verify::search::{frame_to_w, min_residual_search, product_residual, SearchConfig};
use quasipos::verify::{verify_eschenburg, verify_m13, verify_n11, Mode, Verdict, VerifyOptions};

fn angle(num: i64, den: i64) -> Angle {
    Angle::pi_times(num, den).unwrap()
}

#[test]
fn g2_basis_is_the_one_hot_pattern() {
    let basis = g2_basis();
    let mats: Vec<Mat<f64>> = basis.matrices();
    for (k, m) in mats.iter().enumerate() {
        let params: [f64; 14] = std::array::from_fn(|i| if i == k { 1.0 } else { 0.0 });
        assert_eq!(&g2_matrix(&params), m, "{}", G2_PARAMS[k]);
    }
    let rows: Vec<Vec<f64>> = mats.iter().map(|m| m.data().to_vec()).collect();
    assert_eq!(Mat::from_rows(rows).rank(1e-12), 14);
}

#[test]
fn alpha_generators_bracket_into_the_torus() {
    let mats: Vec<Mat<f64>> = g2_basis().matrices();
    let (a1, a2) = (&mats[12], &mats[13]);
    let b = a1.bracket(a2);
    // Direct oracle: the α-generators are block rotations on disjoint
    // planes, so the bracket is zero, which lies in span{α1, α2}.
    let direct = a1.mul(a2).sub(&a2.mul(a1));
    assert_eq!(b, direct);
    assert!(b.max_abs() < 1e-15);
}

#[test]
fn m13_numeric_at_pi_over_3() {
    let c = verify_m13(angle(1, 3), &VerifyOptions::new(Mode::Numeric, 1000, 0)).unwrap();
    let r = c.residual_infimum.unwrap();
    assert!(r > 1e-6, "{r:e}");
    assert_eq!(c.verdict, Verdict::NoFlatPlane);
    // Observed with seed 0.
    assert!((r - 5.780e-3).abs() < 1e-3 * 5.780e-3, "{r:e}");
}

#[test]
fn m13_at_identity_has_flat_planes() {
    // Outside the supported angles the search finds a flat horizontal plane.
    let c = verify_m13(Angle::zero(), &VerifyOptions::new(Mode::Numeric, 20, 0)).unwrap();
    assert_eq!(c.verdict, Verdict::FlatPlaneFound);
    let w = c.witness().unwrap();
    assert!(w.residual < 1e-10 && w.horizontality_defect < 1e-10);
    // The exact replay refuses the point.
    assert!(verify_m13(Angle::zero(), &VerifyOptions::default()).is_err());
}

#[test]
fn witness_at_identity_reduces_to_p_and_m_legs() {
    let spec = BiquotientSpec::m13();
    let basis = horizontal_basis(&spec, &so8_point(1.0, 0.0), spec.default_metrics()).unwrap();
    let res = min_residual_search(&basis, &SearchConfig::with_restarts(20, 0)).unwrap();
    assert!(res.residual < 1e-10);
    let (w1, w2) = frame_to_w(&basis, &res.frame);
    // At A = I the horizontal W have no h-part, so the reduction applies to
    // W directly.
    let (x, y) = lemma_xy(&w1, &w2, 1e-8).unwrap();
    // Relative squared norms; X − cY can be much shorter than Y.
    let c = ChainSpec::So8G2;
    let (nx, ny) = (c.norm0_sq(&x), c.norm0_sq(&y));
    assert!(nx > 1e-6 && ny > 1e-6);
    assert!(c.norm0_sq(&c.split(&x).m) < 1e-6 * nx && c.norm0_sq(&c.split(&x).h) < 1e-6 * nx);
    assert!(c.norm0_sq(&c.split(&y).p) < 1e-6 * ny && c.norm0_sq(&c.split(&y).h) < 1e-6 * ny);
    assert!(product_residual(&basis.setup, &x, &y).unwrap() < 1e-10 * nx * ny);
}

#[test]
fn exact_verdicts_are_angle_uniform() {
    for spec in ["m13", "n11"] {
        let verdicts: Vec<Verdict> = [angle(1, 4), angle(1, 6), angle(1, 3)]
            .into_iter()
            .map(|t| {
                let o = VerifyOptions::default();
                if spec == "m13" { verify_m13(t, &o) } else { verify_n11(t, &o) }.unwrap().verdict
            })
            .collect();
        assert_eq!(verdicts, vec![Verdict::NoFlatPlane; 3], "{spec}");
    }
}

#[test]
fn n11_numeric_agrees_with_exact() {
    let c = verify_n11(angle(1, 4), &VerifyOptions::new(Mode::Both, 200, 3)).unwrap();
    assert_eq!(c.exact.as_ref().unwrap().verdict, Verdict::NoFlatPlane);
    assert_eq!(c.numeric.as_ref().unwrap().verdict, Verdict::NoFlatPlane);
    assert_eq!(c.numeric.as_ref().unwrap().horizontal_dim, 11);
    assert_eq!(c.verdict, Verdict::NoFlatPlane);
}

#[test]
fn unsupported_angle_in_exact_mode() {
    assert!(verify_m13(angle(1, 5), &VerifyOptions::default()).is_err());
    // Numeric mode has no such restriction.
    let c = verify_m13(angle(1, 5), &VerifyOptions::new(Mode::Numeric, 20, 0)).unwrap();
    assert!(c.residual_infimum.unwrap() > 1e-6);
}

// At p = (0, 1, −1), q = (0, 0) with the weights in the given order, the
// proportional case admits a commuting horizontal pair; reordering the
// weights moves the point and the replay goes through.
#[test]
fn gap_weights_numeric_finds_the_flat_plane() {
    let c = verify_eschenburg(&[0, 1, -1], [0, 0], &VerifyOptions::new(Mode::Numeric, 50, 0)).unwrap();
    assert_eq!(c.ordering, vec![0, 1, 2]);
    assert_eq!(c.verdict, Verdict::FlatPlaneFound);
    let w = c.witness().unwrap();
    assert!(w.residual < 1e-10 && w.horizontality_defect < 1e-10);
}

#[test]
fn gap_weights_both_modes_use_the_reordered_point() {
    let c = verify_eschenburg(&[0, 1, -1], [0, 0], &VerifyOptions::new(Mode::Both, 100, 0)).unwrap();
    assert_eq!(c.ordering, vec![1, 0, 2]);
    assert_eq!(c.verdict, Verdict::NoFlatPlane);
    assert!(c.residual_infimum.unwrap() > 1e-6);
}

#[test]
fn witness_from_the_case_equations_is_flat_and_horizontal() {
    use quasipos::verify::exact_unitary::case5c_witness;
    let (w1, w2) = case5c_witness(&[0, 1, -1], &[0, 0]).unwrap().unwrap();
    let spec = BiquotientSpec::eschenburg(vec![0, 1, -1], [0, 0]).unwrap();
    let basis = horizontal_basis(&spec, &eschenburg_point(2, std::f64::consts::FRAC_1_SQRT_2), spec.default_metrics()).unwrap();
    let s = &basis.setup;
    assert!(s.vertical_defect(&s.tangent(&w1)) < 1e-12);
    assert!(s.vertical_defect(&s.tangent(&w2)) < 1e-12);
    assert!(product_residual(s, &w1, &w2).unwrap() < 1e-20);
    assert!(case5c_witness(&[1, 2, 3], &[0, 0]).unwrap().is_none());
}

#[test]
fn eschenburg_n3_exact() {
    let c = verify_eschenburg(&[1, 2, 3, 5], [0, 0], &VerifyOptions::default()).unwrap();
    assert_eq!(c.verdict, Verdict::NoFlatPlane);
}
