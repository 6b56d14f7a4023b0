//! Frame normalizations used by the case analyses, on floating criterion
//! variables. Each returns a new basis of the same plane or says why the
//! normal form is out of reach.

use crate::error::{Error, Result};
use crate::lie::{cx_entry, ChainSpec};
use crate::matrix::Mat;
use crate::metric::DeformedMetric;

/// Which leg ends up without an m-part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MSplit {
    /// `Y_m = 0`: the Y-leg lies in h.
    YInH,
    /// `X_m = 0` after subtracting a multiple of Y.
    XWithoutM,
}

fn norm2(chain: ChainSpec, x: &Mat<f64>) -> f64 {
    chain.norm0_sq(x)
}

fn scale_tol(chain: ChainSpec, x: &Mat<f64>, y: &Mat<f64>, tol: f64) -> f64 {
    tol * norm2(chain, x).max(norm2(chain, y)).max(1.0)
}

/// Basis `(X', Y')` of the same plane with `Y'_p = 0`. Requires the p-parts
/// to be dependent, which is what `[X_p, Y_p] = 0` gives on a rank-one pair.
pub fn make_y_p_free(chain: ChainSpec, x: &Mat<f64>, y: &Mat<f64>, tol: f64) -> Result<(Mat<f64>, Mat<f64>)> {
    let (xp, yp) = (chain.split(x).p, chain.split(y).p);
    let cut = scale_tol(chain, x, y, tol);
    if norm2(chain, &yp) <= cut {
        return Ok((x.clone(), y.clone()));
    }
    if norm2(chain, &xp) <= cut {
        return Ok((y.clone(), x.clone()));
    }
    let c = chain.inner0(&xp, &yp) / norm2(chain, &xp);
    let y2 = y.sub(&x.scale(&c));
    if norm2(chain, &chain.split(&y2).p) > cut {
        return Err(Error::Precondition("p-parts are independent".into()));
    }
    Ok((x.clone(), y2))
}

/// Given `Y_p = 0` and dependent m-parts, either `Y_m = 0` already or X is
/// replaced by `X − cY` with `X_m = 0`. Keeps `Y_p = 0`.
pub fn split_m(chain: ChainSpec, x: &Mat<f64>, y: &Mat<f64>, tol: f64) -> Result<(Mat<f64>, Mat<f64>, MSplit)> {
    let cut = scale_tol(chain, x, y, tol);
    if norm2(chain, &chain.split(y).p) > cut {
        return Err(Error::Precondition("Y has a p-part".into()));
    }
    let (xm, ym) = (chain.split(x).m, chain.split(y).m);
    if norm2(chain, &ym) <= cut {
        return Ok((x.clone(), y.clone(), MSplit::YInH));
    }
    let c = chain.inner0(&xm, &ym) / norm2(chain, &ym);
    let x2 = x.sub(&y.scale(&c));
    if norm2(chain, &chain.split(&x2).m) > cut {
        return Err(Error::Precondition("m-parts are independent".into()));
    }
    Ok((x2, y.clone(), MSplit::XWithoutM))
}

/// For the SO(8) chain with horizontal legs (no h-part): a basis with
/// `X ∈ p`, `Y ∈ m`.
pub fn lemma_xy(x: &Mat<f64>, y: &Mat<f64>, tol: f64) -> Result<(Mat<f64>, Mat<f64>)> {
    let chain = ChainSpec::So8G2;
    let cut = scale_tol(chain, x, y, tol);
    if norm2(chain, &chain.split(x).h) > cut || norm2(chain, &chain.split(y).h) > cut {
        return Err(Error::Precondition("legs have an h-part".into()));
    }
    let (x1, y1) = make_y_p_free(chain, x, y, tol)?;
    match split_m(chain, &x1, &y1, tol)? {
        (x2, y2, MSplit::XWithoutM) => Ok((x2, y2)),
        (_, _, MSplit::YInH) => Err(Error::Degenerate),
    }
}

/// Rescales a unitary leg so its (0,0) entry is `i`.
pub fn scale_leading(y: &Mat<f64>, tol: f64) -> Result<Mat<f64>> {
    let (_, g) = cx_entry(y, 0, 0);
    if g.abs() <= tol {
        return Err(Error::Precondition("leading entry vanishes".into()));
    }
    Ok(y.scale(&(1.0 / g)))
}

/// Replaces X by `X − cY` so that the lifted vectors are orthogonal in the
/// deformed metric.
pub fn orthogonalize(metric: &DeformedMetric, x: &Mat<f64>, y: &Mat<f64>) -> (Mat<f64>, Mat<f64>) {
    let (_, g12, g22) = metric.plane_gram(x, y);
    (x.sub(&y.scale(&(g12 / g22))), y.clone())
}

/// The `α = 0` step: orthogonalize the legs and insist the X-leg keeps its
/// normal form `X_m = 0`. Fails when α ≠ 0 and Y has an m-part, since then
/// the orthogonal X-leg picks up `−cY_m`.
pub fn alpha_zero(metric: &DeformedMetric, x: &Mat<f64>, y: &Mat<f64>, tol: f64) -> Result<(Mat<f64>, Mat<f64>)> {
    let chain = metric.chain;
    let (x2, y2) = orthogonalize(metric, x, y);
    let cut = scale_tol(chain, x, y, tol);
    if norm2(chain, &chain.split(&x2).m) > cut {
        let (_, alpha) = cx_entry(x, 0, 0);
        return Err(Error::ReplayFailed {
            branch: "alpha_zero".into(),
            detail: format!("α = {alpha:.6}; the orthogonal X-leg has an m-part"),
        });
    }
    Ok((x2, y2))
}
