//! Exact replay of the case analysis at the √2-block point of U(n+1) for an
//! Eschenburg action with `p1 ≠ p2`, `p1 + p2 ∉ {2q1, 2q2, q1 + q2}`.
//!
//! Criterion variables X, Y live on the right factor (`W = Φ₁ X`). The
//! right-factor conditions reduce the pair to a handful of normal forms;
//! each form is then killed either by horizontality or by the left-factor
//! condition that `(Ad_{A*} Φ₁X)_p` and `(Ad_{A*} Φ₁Y)_p` be dependent.
//!
//! Families used below, as complex matrices of size n + 1:
//! - X(α, x): `iα` at (0,0), `x_j` at (j,0), `−x̄_j` at (0,j), j = 1..n;
//!   real coordinates `[α, Re x₁, Im x₁, Re x₂, Im x₂, …]`.
//! - Y(γ, δ, y): `iγ` at (0,0), `iδ` at (1,1), `y_j` at (j,1), `−ȳ_j` at
//!   (1,j), j = 2..n; coordinates `[γ, δ, Re y₂, Im y₂, …]`.
//!
//! The step of the hand argument where the X-leg is made orthogonal to the
//! Y-leg to force `α = 0` does not preserve these normal forms, so the
//! last branch keeps α free and solves for it instead.

use crate::action::{eschenburg_free, eschenburg_point, BiquotientSpec, PointSetup};
use crate::config::TOLERANCES;
use crate::error::Result;
use crate::lie::{ad, cx_entry, realify, ChainSpec};
use crate::matrix::Mat;
use crate::scalar::Scalar;

use super::BranchReport;

type Cx<F> = (F, F);

fn cmul<F: Scalar>(a: &Cx<F>, b: &Cx<F>) -> Cx<F> {
    (
        a.0.clone() * b.0.clone() - a.1.clone() * b.1.clone(),
        a.0.clone() * b.1.clone() + a.1.clone() * b.0.clone(),
    )
}

fn conj<F: Scalar>(a: &Cx<F>) -> Cx<F> {
    (a.0.clone(), -a.1.clone())
}

fn cadd<F: Scalar>(a: &Cx<F>, b: &Cx<F>) -> Cx<F> {
    (a.0.clone() + b.0.clone(), a.1.clone() + b.1.clone())
}

fn cneg<F: Scalar>(a: &Cx<F>) -> Cx<F> {
    (-a.0.clone(), -a.1.clone())
}

fn czero<F: Scalar>() -> Cx<F> {
    (F::zero(), F::zero())
}

/// Realified matrix with the listed complex entries and zeros elsewhere.
fn cmat<F: Scalar>(size: usize, entries: &[(usize, usize, Cx<F>)]) -> Mat<F> {
    realify(size, |r, c| {
        entries.iter().find(|e| e.0 == r && e.1 == c).map(|e| e.2.clone()).unwrap_or_else(czero)
    })
}

fn pairs<F: Scalar>(v: &[F]) -> Vec<Cx<F>> {
    v.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect()
}

fn x_family<F: Scalar>(n: usize, coords: &[F]) -> Mat<F> {
    let mut e = vec![(0, 0, (F::zero(), coords[0].clone()))];
    for (j, x) in pairs(&coords[1..]).into_iter().enumerate() {
        e.push((j + 1, 0, x.clone()));
        e.push((0, j + 1, cneg(&conj(&x))));
    }
    cmat(n + 1, &e)
}

fn y_family<F: Scalar>(n: usize, coords: &[F]) -> Mat<F> {
    let mut e = vec![(0, 0, (F::zero(), coords[0].clone())), (1, 1, (F::zero(), coords[1].clone()))];
    for (j, y) in pairs(&coords[2..]).into_iter().enumerate() {
        e.push((j + 2, 1, y.clone()));
        e.push((1, j + 2, cneg(&conj(&y))));
    }
    cmat(n + 1, &e)
}

/// Entries `(0, j)`, j = 1..n, as `[Re, Im, Re, Im, …]`.
fn pvec<F: Scalar>(n: usize, z: &Mat<F>) -> Vec<F> {
    (1..=n).flat_map(|j| {
        let (a, b) = cx_entry(z, 0, j);
        [a, b]
    })
    .collect()
}

fn unit<F: Scalar>(len: usize, k: usize) -> Vec<F> {
    (0..len).map(|i| if i == k { F::one() } else { F::zero() }).collect()
}

/// Matrix of a linear map given on coordinate vectors.
fn matrix_of<F: Scalar>(n_in: usize, f: impl Fn(&[F]) -> Vec<F>) -> Mat<F> {
    let cols: Vec<Vec<F>> = (0..n_in).map(|k| f(&unit(n_in, k))).collect();
    Mat::from_fn(cols[0].len(), n_in, |r, c| cols[c][r].clone())
}

fn sub_cols<F: Scalar>(m: &Mat<F>, cols: &[usize]) -> Mat<F> {
    Mat::from_fn(m.rows(), cols.len(), |r, c| m[(r, cols[c])].clone())
}

fn sub_rows<F: Scalar>(m: &Mat<F>, rows: &[usize]) -> Mat<F> {
    Mat::from_fn(rows.len(), m.cols(), |r, c| m[(rows[r], c)].clone())
}

/// Closed form of `[U, V]` for `U = X(0, u)` and `V = Y(γ, δ, v)`.
fn nasty_closed_form<F: Scalar>(n: usize, u: &[Cx<F>], gamma: &F, delta: &F, v: &[Cx<F>]) -> Mat<F> {
    let i_of = |r: F| (F::zero(), r);
    let mut first = cmul(&i_of(gamma.clone() - delta.clone()), &u[0]);
    for k in 0..n - 1 {
        first = cadd(&first, &cmul(&u[k + 1], &conj(&v[k])));
    }
    let mut e = vec![(1, 0, first.clone()), (0, 1, cneg(&conj(&first)))];
    for k in 0..n - 1 {
        let val = cadd(&cmul(&i_of(gamma.clone()), &u[k + 1]), &cneg(&cmul(&u[0], &v[k])));
        e.push((k + 2, 0, val.clone()));
        e.push((0, k + 2, cneg(&conj(&val))));
    }
    cmat(n + 1, &e)
}

/// Everything the replay computes at one point.
struct Ctx<F: Scalar> {
    n: usize,
    setup: PointSetup<F>,
    at: Mat<F>,
    chain: ChainSpec,
    cvec: Mat<F>,
    lambda: F,
}

impl<F: Scalar> Ctx<F> {
    fn new(p: &[i64], q: &[i64], inv_sqrt2: F) -> Result<Self> {
        let spec = BiquotientSpec::eschenburg(p.to_vec(), [q[0], q[1]])?;
        let n = spec.n();
        let a = eschenburg_point(n, inv_sqrt2);
        let setup = PointSetup::new(spec.clone(), a.clone(), spec.default_metrics())?;
        let cvec = setup.constraint_vectors().swap_remove(0);
        let lambda = setup.right.lambda1::<F>();
        Ok(Ctx { n, chain: setup.chain(), setup, at: a.transpose(), cvec, lambda })
    }

    fn phi1(&self, z: &Mat<F>) -> Mat<F> {
        self.setup.right.phi1_mat(z)
    }

    /// `(Ad_{A*} Φ₁ Z)_p` as real coordinates.
    fn left_p(&self, z: &Mat<F>) -> Vec<F> {
        pvec(self.n, &ad(&self.at, &self.phi1(z)))
    }

    /// `⟨Φ₁ Z, Ad_A P − Q⟩₀`; zero iff Z passes the circle constraint.
    fn horiz(&self, z: &Mat<F>) -> F {
        self.chain.inner0(&self.phi1(z), &self.cvec)
    }

    fn xf(&self, c: &[F]) -> Mat<F> {
        x_family(self.n, c)
    }

    fn yf(&self, c: &[F]) -> Mat<F> {
        y_family(self.n, c)
    }

    fn diag(&self, a: i64, b: i64) -> Mat<F> {
        self.yf(&[vec![F::from_i64(a), F::from_i64(b)], vec![F::zero(); 2 * (self.n - 1)]].concat())
    }
}

/// Coefficients of the case-5c system; see [`replay_unitary`].
struct Case5c<F> {
    kappa: Option<F>,
    c_alpha: F,
    c_y0: F,
    c_ybeta: F,
    h_alpha: F,
    h_im: F,
    g0: F,
    g_beta: F,
    structural: Vec<(String, bool)>,
}

fn case5c_system<F: Scalar>(ctx: &Ctx<F>, tol: f64) -> Case5c<F> {
    let n = ctx.n;
    let zero = |x: &F| x.is_zero_within(tol);
    let lx = matrix_of(1 + 2 * n, |c| ctx.left_p(&ctx.xf(c)));
    let ly = matrix_of(2 * n, |c| ctx.left_p(&ctx.yf(c)));
    let mut st = Vec::new();

    // Second entry of the left p-vector.
    let re_row_x: Vec<F> = lx.row(0);
    let im_row_x: Vec<F> = lx.row(1);
    st.push((
        "Re row of X depends on Re x only".to_string(),
        !zero(&re_row_x[1]) && re_row_x.iter().enumerate().all(|(k, v)| k == 1 || zero(v)),
    ));
    st.push((
        "Im row of X depends on α only".to_string(),
        !zero(&im_row_x[0]) && im_row_x.iter().enumerate().all(|(k, v)| k == 0 || zero(v)),
    ));
    let ly_re = ly.row(0);
    let ly_im = ly.row(1);
    st.push(("Re row of Y vanishes".to_string(), ly_re.iter().all(zero)));
    st.push(("Im row of Y ignores y".to_string(), ly_im[2..].iter().all(zero)));

    let kappa = kappa_of(ctx, &lx, &ly, tol);
    st.push(("rows j ≥ 3 proportional".to_string(), kappa.is_some()));

    let hx: Vec<F> = (0..1 + 2 * n).map(|k| ctx.horiz(&ctx.xf(&unit(1 + 2 * n, k)))).collect();
    st.push(("horizontality of X ignores x_j, j ≥ 3".to_string(), hx[3..].iter().all(zero)));
    let hy: Vec<F> = (0..2 * n).map(|k| ctx.horiz(&ctx.yf(&unit(2 * n, k)))).collect();
    st.push(("horizontality of Y ignores y".to_string(), hy[2..].iter().all(zero)));

    Case5c {
        kappa,
        c_alpha: im_row_x[0].clone(),
        c_y0: ly_im[0].clone(),
        c_ybeta: ly_im[1].clone(),
        h_alpha: hx[0].clone(),
        h_im: hx[2].clone(),
        g0: hy[0].clone(),
        g_beta: hy[1].clone(),
        structural: st,
    }
}

/// κ with `B_x = κ B_y`, where `B_x`, `B_y` are the rows j ≥ 3 of the left
/// p-maps restricted to x_j resp. y_j; `None` unless α, x₂, γ, δ drop out
/// of those rows, `B_y` is injective and κ is a nonzero scalar.
fn kappa_of<F: Scalar>(ctx: &Ctx<F>, lx: &Mat<F>, ly: &Mat<F>, tol: f64) -> Option<F> {
    let n = ctx.n;
    let rows: Vec<usize> = (2..2 * n).collect();
    let lx_r = sub_rows(lx, &rows);
    let ly_r = sub_rows(ly, &rows);
    let zero = |x: &F| x.is_zero_within(tol);
    let x_cols: Vec<usize> = (3..1 + 2 * n).collect();
    let y_cols: Vec<usize> = (2..2 * n).collect();
    let others_x = (0..3).all(|c| (0..rows.len()).all(|r| zero(&lx_r[(r, c)])));
    let others_y = (0..2).all(|c| (0..rows.len()).all(|r| zero(&ly_r[(r, c)])));
    let bx = sub_cols(&lx_r, &x_cols);
    let by = sub_cols(&ly_r, &y_cols);
    if !others_x || !others_y || by.rank(tol) != by.cols() {
        return None;
    }
    let (r0, c0) = (0..by.rows()).flat_map(|r| (0..by.cols()).map(move |c| (r, c))).find(|&(r, c)| !zero(&by[(r, c)]))?;
    let kappa = bx[(r0, c0)].clone() / by[(r0, c0)].clone();
    if zero(&kappa) || !bx.sub(&by.scale(&kappa)).is_zero_within(tol) {
        return None;
    }
    Some(kappa)
}

/// Outcome of the last branch. `Survives` carries `(α, β, κ, cα…)` data
/// from which a flat horizontal plane can be built.
enum Verdict5c<F> {
    Killed(String),
    Survives { beta: F, alpha_per_t: F },
    Broken(String),
}

fn decide_5c<F: Scalar>(sys: &Case5c<F>, tol: f64) -> Verdict5c<F> {
    let zero = |x: &F| x.is_zero_within(tol);
    if let Some((name, _)) = sys.structural.iter().find(|(_, ok)| !ok) {
        return Verdict5c::Broken(name.clone());
    }
    let kappa = sys.kappa.clone().expect("checked above");
    // x_j = 0 for j ≥ 3: then y = 0, β = 1 and Y must be horizontal.
    let at_one = sys.g0.clone() + sys.g_beta.clone();
    if zero(&at_one) {
        return Verdict5c::Survives { beta: F::one(), alpha_per_t: F::zero() };
    }
    if zero(&sys.g_beta) {
        return if zero(&sys.g0) {
            Verdict5c::Broken("horizontality of Y is vacuous".into())
        } else {
            Verdict5c::Killed("Y is never horizontal".into())
        };
    }
    let beta = -sys.g0.clone() / sys.g_beta.clone();
    // β = 1 − Σ|x_j|²/|x₂|² < 1 whenever some x_j ≠ 0.
    let room = F::one() - beta.clone();
    if room.sign_within(tol) <= 0 {
        return Verdict5c::Killed(format!("horizontal Y needs β = {beta:?} >= 1, leaving x_j = 0"));
    }
    // s = κ t from x = (s/κ) y and y = x/t; then α = s(cY0 + cYβ β)/cα and
    // X horizontal reads t·D = 0.
    let alpha_per_t = kappa * (sys.c_y0.clone() + sys.c_ybeta.clone() * beta.clone()) / sys.c_alpha.clone();
    let d = sys.h_alpha.clone() * alpha_per_t.clone() + sys.h_im.clone();
    if zero(&d) {
        Verdict5c::Survives { beta, alpha_per_t }
    } else {
        Verdict5c::Killed(format!("β = {beta:?}, α/t = {alpha_per_t:?}, horizontality of X leaves t·{d:?} = 0"))
    }
}

/// Replays every branch at the point for weights `p` (already permuted so
/// the witnessing pair comes first) and `q`. `inv_sqrt2` is `1/√2` in `F`.
pub fn replay_unitary<F: Scalar>(p: &[i64], q: &[i64], inv_sqrt2: F) -> Result<Vec<BranchReport>> {
    let tol = TOLERANCES.derived;
    let zero = |x: &F| x.is_zero_within(tol);
    let ctx = Ctx::new(p, q, inv_sqrt2)?;
    let n = ctx.n;
    let mut out = Vec::new();

    let bad = [2 * q[0], 2 * q[1], q[0] + q[1]];
    let free = eschenburg_free(p, q)?;
    let hyp = p[0] != p[1] && !bad.contains(&(p[0] + p[1]));
    out.push(BranchReport::new(
        "premise_hypothesis",
        free && hyp,
        format!("free: {free}; p1 = {}, p2 = {}, p1 + p2 outside {bad:?}: {hyp}", p[0], p[1]),
    ));

    let ws = ctx.setup.w_space(tol);
    let lower_zero = ws.iter().all(|w| {
        (2..=n).all(|r| (2..=n).all(|c| {
            let (a, b) = cx_entry(w, r, c);
            zero(&a) && zero(&b)
        }))
    });
    out.push(BranchReport::new(
        "premise_horizontal_space",
        ws.len() == 4 * n - 1 && lower_zero,
        format!("dim {} (expected {}), u(n-1) block zero: {lower_zero}", ws.len(), 4 * n - 1),
    ));

    // p = X(0, ·), m = Y(0, 0, ·).
    let pb: Vec<Mat<F>> = (1..1 + 2 * n).map(|k| ctx.xf(&unit(1 + 2 * n, k))).collect();
    let mb: Vec<Mat<F>> = (2..2 * n).map(|k| ctx.yf(&unit(2 * n, k))).collect();
    let mut pp_k = true;
    for a in &pb {
        for b in &pb {
            pp_k &= ctx.chain.split(&a.bracket(b)).p.is_zero_within(tol);
        }
    }
    let mut mm_h = true;
    for a in &mb {
        for b in &mb {
            let c = ctx.chain.split(&a.bracket(b));
            mm_h &= c.p.is_zero_within(tol) && c.m.is_zero_within(tol);
        }
    }
    let ker = |basis: &[Mat<F>]| {
        let m = matrix_of(basis.len(), |c| {
            let v = basis.iter().zip(c).fold(Mat::zeros(2 * n + 2, 2 * n + 2), |acc, (b, k)| acc.add(&b.scale(k)));
            basis[0].bracket(&v).data().to_vec()
        });
        m.kernel(tol).len()
    };
    let (kp, km) = (ker(&pb), ker(&mb));
    out.push(BranchReport::new(
        "premise_symmetric_pairs",
        pp_k && mm_h && kp == 1 && km == 1,
        format!("[p,p] in k: {pp_k}; [m,m] in h: {mm_h}; kernel of ad on p: {kp}, on m: {km}"),
    ));

    let (d1, d2, d3) = (ctx.diag(1, 0), ctx.diag(0, 1), ctx.diag(1, 1));
    let (f1, f2, f3) = (ctx.horiz(&d1), ctx.horiz(&d2), ctx.horiz(&d3));
    let half = F::from_ratio(1, 2);
    let s12 = F::from_i64(p[0] + p[1]);
    let e1 = ctx.lambda.clone() * (half.clone() * s12.clone() - F::from_i64(q[0]));
    let e2 = ctx.lambda.clone() * (half * s12 - F::from_i64(q[1]));
    let closed = zero(&(f1.clone() - e1)) && zero(&(f2.clone() - e2)) && zero(&(f3.clone() - f1.clone() - f2.clone()));
    let nonzero = !zero(&f1) && !zero(&f2) && !zero(&f3);
    out.push(BranchReport::new(
        "lemma_nothoriz",
        closed && nonzero,
        format!("⟨Φ₁D, Ad_A P − Q⟩₀ for iE11, iE22, i(E11+E22): {f1:?}, {f2:?}, {f3:?}; matches λ₁(½(θ+φ)(p1+p2) − θq1 − φq2): {closed}"),
    ));

    let d1_central = mb.iter().all(|m| d1.bracket(m).is_zero_within(tol));
    let d2_rank = matrix_of(mb.len(), |c| {
        let v = mb.iter().zip(c).fold(Mat::zeros(2 * n + 2, 2 * n + 2), |acc, (b, k)| acc.add(&b.scale(k)));
        d2.bracket(&v).data().to_vec()
    })
    .rank(tol);
    out.push(BranchReport::new(
        "h_m_commutator",
        d1_central && d2_rank == mb.len(),
        format!("[iE11, m] = 0: {d1_central}; ad(iE22) on m has rank {d2_rank} of {}", mb.len()),
    ));

    // Bilinear identity checked on basis pairs.
    let mut nasty_ok = true;
    for ku in 1..1 + 2 * n {
        let uc = unit::<F>(1 + 2 * n, ku);
        let u = pairs(&uc[1..]);
        for kv in 0..2 * n {
            let vc = unit::<F>(2 * n, kv);
            let v = pairs(&vc[2..]);
            let lhs = ctx.xf(&uc).bracket(&ctx.yf(&vc));
            let rhs = nasty_closed_form(n, &u, &vc[0], &vc[1], &v);
            nasty_ok &= lhs.sub(&rhs).is_zero_within(tol);
        }
    }
    out.push(BranchReport::new(
        "nasty_identity",
        nasty_ok,
        "[U,V] = 0 iff i(γ−δ)u₂ + Σ u_j v̄_j = 0 and iγu_j = u₂v_j".to_string(),
    ));

    out.push(BranchReport::new("case3", !zero(&f1), format!("Y = iE11 fails horizontality by {f1:?}")));
    out.push(BranchReport::new(
        "case4a",
        !(zero(&f1) && zero(&f2)),
        "horizontality is a nonzero functional on span{iE11, iE22}, so no horizontal 2-plane lies there".to_string(),
    ));
    out.push(BranchReport::new("case4b", !zero(&f2), format!("Y = iE22 fails horizontality by {f2:?}")));
    out.push(BranchReport::new("case4c", !zero(&f3), format!("Y = i(E11+E22) fails horizontality by {f3:?}")));
    out.push(BranchReport::new("case5a", !zero(&f1), format!("X = iE11 fails horizontality by {f1:?}")));

    let lx = matrix_of(1 + 2 * n, |c| ctx.left_p(&ctx.xf(c)));
    let ly = matrix_of(2 * n, |c| ctx.left_p(&ctx.yf(c)));
    let x5b: Vec<usize> = std::iter::once(0).chain(3..1 + 2 * n).collect();
    let y5b: Vec<usize> = (1..2 * n).collect();
    let rx = sub_cols(&lx, &x5b).rank(tol);
    let ry = sub_cols(&ly, &y5b).rank(tol);
    let kappa = kappa_of(&ctx, &lx, &ly, tol);
    out.push(BranchReport::new(
        "case5b",
        rx == x5b.len() && ry == y5b.len() && kappa.is_some(),
        format!(
            "left p-maps injective on the 5b forms ({rx}/{}, {ry}/{}); rows j ≥ 3 give x = (s/κ) y with κ = {kappa:?}, so Σ x_j ȳ_j = 0 forces x = 0",
            x5b.len(),
            y5b.len()
        ),
    ));

    let kx = lx.kernel(tol);
    let x_zero = kx.len() == 1 && kx[0].iter().enumerate().all(|(k, v)| k == 2 || zero(v));
    out.push(BranchReport::new(
        "case5c_x_zero",
        x_zero && !zero(&f3),
        format!("(Ad Φ₁X)_p = 0 leaves only Im x₂ ({x_zero}), so Y = i(E11+E22), which fails horizontality by {f3:?}"),
    ));

    let c0 = ctx.left_p(&ctx.yf(&unit(2 * n, 0)));
    let m = sub_cols(&ly, &y5b);
    let sol: Vec<F> = unit(y5b.len(), 0);
    let hits = m.mul_vec(&sol).iter().zip(&c0).all(|(a, b)| zero(&(a.clone() + b.clone())));
    let unique = m.rank(tol) == y5b.len();
    out.push(BranchReport::new(
        "case5c_y_zero",
        hits && unique && !zero(&f3),
        format!("(Ad Φ₁Y)_p = 0 has the unique solution β = 1, y = 0 ({}), so Y = i(E11+E22)", hits && unique),
    ));

    let sys = case5c_system(&ctx, tol);
    let (passed, detail) = match decide_5c(&sys, tol) {
        Verdict5c::Killed(why) => (true, why),
        Verdict5c::Survives { beta, alpha_per_t } => (
            false,
            format!("a horizontal flat plane survives with β = {beta:?}, α/t = {alpha_per_t:?}"),
        ),
        Verdict5c::Broken(what) => (false, format!("structural check failed: {what}")),
    };
    out.push(BranchReport::new("case5c_proportional", passed, detail));
    Ok(out)
}

/// When the last branch fails, builds the surviving plane as a pair
/// `(W₁, W₂)` of admissible W (so `W = Φ₁ X`). `None` when the branch holds.
pub fn case5c_witness(p: &[i64], q: &[i64]) -> Result<Option<(Mat<f64>, Mat<f64>)>> {
    let tol = TOLERANCES.derived;
    let ctx = Ctx::new(p, q, std::f64::consts::FRAC_1_SQRT_2)?;
    let n = ctx.n;
    let sys = case5c_system(&ctx, tol);
    let Verdict5c::Survives { beta, alpha_per_t } = decide_5c(&sys, tol) else {
        return Ok(None);
    };
    // t = 1: x₂ = i, x_3 = √(1 − β) real, y = x, α = α/t.
    let mut xc = vec![0.0; 1 + 2 * n];
    xc[0] = alpha_per_t;
    xc[2] = 1.0;
    xc[3] = (1.0 - beta).max(0.0).sqrt();
    let mut yc = vec![0.0; 2 * n];
    yc[0] = 1.0;
    yc[1] = beta;
    yc[2] = xc[3];
    Ok(Some((ctx.phi1(&ctx.xf(&xc)), ctx.phi1(&ctx.yf(&yc)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QSqrt2;

    fn h() -> QSqrt2 {
        QSqrt2::from_parts(0, 1, 1, 2)
    }

    #[test]
    fn replay_passes_at_123() {
        let r = replay_unitary(&[1, 2, 3], &[0, 0], h()).unwrap();
        assert!(r.iter().all(|b| b.passed), "{r:#?}");
        assert_eq!(r.len(), 15);
    }

    #[test]
    fn replay_passes_for_n3() {
        let r = replay_unitary(&[1, 2, 3, 5], &[0, 0], h()).unwrap();
        assert!(r.iter().all(|b| b.passed), "{r:#?}");
    }

    #[test]
    fn float_replay_agrees() {
        let r = replay_unitary(&[1, 2, 3], &[0, 0], std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!(r.iter().all(|b| b.passed), "{r:#?}");
    }

    #[test]
    fn last_branch_fails_at_0_1_m1() {
        let r = replay_unitary(&[0, 1, -1], &[0, 0], h()).unwrap();
        let last = r.last().unwrap();
        assert_eq!(last.name, "case5c_proportional");
        assert!(!last.passed, "{last:?}");
        assert!(r[..r.len() - 1].iter().all(|b| b.passed), "{r:#?}");
        // Swapping the first two weights moves the point and the branch holds.
        let r = replay_unitary(&[1, 0, -1], &[0, 0], h()).unwrap();
        assert!(r.iter().all(|b| b.passed), "{r:#?}");
    }

    #[test]
    fn witness_only_where_branch_fails() {
        assert!(case5c_witness(&[1, 2, 3], &[0, 0]).unwrap().is_none());
        assert!(case5c_witness(&[0, 1, -1], &[0, 0]).unwrap().is_some());
    }

    #[test]
    fn family_shapes() {
        let n = 2;
        let x = x_family::<f64>(n, &[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(crate::lie::is_complex_form(&x, 0.0));
        assert!(x.skew_residual() == 0.0);
        assert_eq!(cx_entry(&x, 0, 0), (0.0, 1.0));
        assert_eq!(cx_entry(&x, 2, 0), (4.0, 5.0));
        assert_eq!(cx_entry(&x, 0, 2), (-4.0, 5.0));
        let y = y_family::<f64>(n, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(cx_entry(&y, 1, 1), (0.0, 2.0));
        assert_eq!(cx_entry(&y, 2, 1), (3.0, 4.0));
        assert!(y.skew_residual() == 0.0);
    }
}
