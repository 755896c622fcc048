//! Diffeomorphisms and pushforward densities.
//!
//! A [`Diffeomorphism`] is a smooth invertible map between open subsets of
//! real coordinate space, given by its forward map, its inverse, and the log
//! absolute determinant of the inverse Jacobian. Pushing a base density
//! through one gives the exact transformed density
//! p_Y(y) = p_X(F^{-1}(y)) |det DF^{-1}(y)|, with the convention that points
//! outside the open image have density zero rather than being errors, since
//! divergence integrands routinely probe boundary regions.
//!
//! Everything is generic over [`Scalar`], so the same transform code computes
//! plain values or carries a forward-mode derivative.

use crate::error::{Error, Result};
use crate::numerics::Scalar;

/// A smooth invertible map F with tractable inverse and log-det-Jacobian.
///
/// `inverse` and `log_abs_det_jacobian_inverse` return a domain error when the
/// query point is outside the open image of F.
pub trait Diffeomorphism<S: Scalar>: Send + Sync {
    fn forward(&self, x: &[S]) -> Vec<S>;

    fn inverse(&self, y: &[S]) -> Result<Vec<S>>;

    /// log |det DF^{-1}(y)|.
    fn log_abs_det_jacobian_inverse(&self, y: &[S]) -> Result<S>;
}

/// y = shift + scale * x componentwise, with one scalar scale.
#[derive(Debug, Clone)]
pub struct Affine<S: Scalar> {
    shift: Vec<S>,
    scale: S,
}

/// Build an affine map on `dim` coordinates. `shift` must have length `dim`,
/// or length 1 to broadcast; `scale` must be nonzero.
pub fn affine<S: Scalar>(shift: Vec<S>, scale: S, dim: usize) -> Result<Affine<S>> {
    if dim == 0 {
        return Err(Error::domain("affine map needs at least one coordinate"));
    }
    if scale.value() == 0.0 {
        return Err(Error::domain("affine map with scale 0 is not invertible"));
    }
    let shift = if shift.len() == dim {
        shift
    } else if shift.len() == 1 {
        vec![shift[0]; dim]
    } else {
        return Err(Error::domain(format!(
            "affine shift has {} coordinates, expected {dim}",
            shift.len()
        )));
    };
    Ok(Affine { shift, scale })
}

impl<S: Scalar> Diffeomorphism<S> for Affine<S> {
    fn forward(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.shift.len(), "affine input dimension");
        x.iter()
            .zip(&self.shift)
            .map(|(&xi, &si)| si + self.scale * xi)
            .collect()
    }

    fn inverse(&self, y: &[S]) -> Result<Vec<S>> {
        assert_eq!(y.len(), self.shift.len(), "affine input dimension");
        Ok(y.iter()
            .zip(&self.shift)
            .map(|(&yi, &si)| (yi - si) / self.scale)
            .collect())
    }

    fn log_abs_det_jacobian_inverse(&self, y: &[S]) -> Result<S> {
        assert_eq!(y.len(), self.shift.len(), "affine input dimension");
        let d = S::constant(self.shift.len() as f64);
        Ok(-(d * self.scale.abs().ln()))
    }
}

/// Componentwise logistic map from R^d onto (0,1)^d.
#[derive(Debug, Clone, Default)]
pub struct Sigmoid;

pub fn sigmoid() -> Sigmoid {
    Sigmoid
}

impl<S: Scalar> Diffeomorphism<S> for Sigmoid {
    fn forward(&self, x: &[S]) -> Vec<S> {
        x.iter().map(|&t| t.sigmoid()).collect()
    }

    fn inverse(&self, y: &[S]) -> Result<Vec<S>> {
        let one = S::constant(1.0);
        y.iter()
            .map(|&yi| {
                if yi.value() <= 0.0 || yi.value() >= 1.0 {
                    Err(Error::domain(format!(
                        "logit of {} is outside (0,1)",
                        yi.value()
                    )))
                } else {
                    Ok(yi.ln() - (one - yi).ln())
                }
            })
            .collect()
    }

    fn log_abs_det_jacobian_inverse(&self, y: &[S]) -> Result<S> {
        let one = S::constant(1.0);
        let mut acc = S::constant(0.0);
        for &yi in y {
            if yi.value() <= 0.0 || yi.value() >= 1.0 {
                return Err(Error::domain(format!(
                    "sigmoid image excludes {}",
                    yi.value()
                )));
            }
            acc = acc - yi.ln() - (one - yi).ln();
        }
        Ok(acc)
    }
}

/// The centered softmax: M logits map to all M+1 coordinates of a point in
/// the interior of the probability simplex, with the implicit last logit
/// pinned to zero. For M = 1 this is the sigmoid paired with its complement.
#[derive(Debug, Clone)]
pub struct CenteredSoftmax {
    logits: usize,
}

pub fn centered_softmax(m: usize) -> Result<CenteredSoftmax> {
    if m == 0 {
        return Err(Error::domain("centered softmax needs at least one logit"));
    }
    Ok(CenteredSoftmax { logits: m })
}

impl CenteredSoftmax {
    fn check_simplex<S: Scalar>(&self, y: &[S]) -> Result<()> {
        if y.len() != self.logits + 1 {
            return Err(Error::domain(format!(
                "expected {} simplex coordinates, got {}",
                self.logits + 1,
                y.len()
            )));
        }
        let mut total = 0.0;
        for &yi in y {
            if yi.value() <= 0.0 {
                return Err(Error::domain(
                    "point has a nonpositive coordinate, outside the open simplex",
                ));
            }
            total += yi.value();
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!(
                "coordinates sum to {total}, not a simplex point"
            )));
        }
        Ok(())
    }
}

impl<S: Scalar> Diffeomorphism<S> for CenteredSoftmax {
    fn forward(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.logits, "softmax logit count");
        // Subtract the max logit (including the implicit 0) before
        // exponentiating; the shift cancels in the ratio.
        let mut c = 0.0f64;
        for xi in x {
            c = c.max(xi.value());
        }
        let cc = S::constant(c);
        let mut terms: Vec<S> = x.iter().map(|&xi| (xi - cc).exp()).collect();
        terms.push(S::constant(-c).exp());
        let mut denom = S::constant(0.0);
        for &t in &terms {
            denom = denom + t;
        }
        terms.into_iter().map(|t| t / denom).collect()
    }

    fn inverse(&self, y: &[S]) -> Result<Vec<S>> {
        self.check_simplex(y)?;
        let last = y[self.logits];
        Ok(y[..self.logits]
            .iter()
            .map(|&yi| yi.ln() - last.ln())
            .collect())
    }

    fn log_abs_det_jacobian_inverse(&self, y: &[S]) -> Result<S> {
        self.check_simplex(y)?;
        let mut acc = S::constant(0.0);
        for &yi in y {
            acc = acc - yi.ln();
        }
        Ok(acc)
    }
}

/// Composition of diffeomorphisms, applied first to last on the forward pass.
/// An empty chain is the identity on any dimension.
pub struct Chain<S: Scalar> {
    parts: Vec<Box<dyn Diffeomorphism<S>>>,
}

pub fn chain<S: Scalar>(parts: Vec<Box<dyn Diffeomorphism<S>>>) -> Chain<S> {
    Chain { parts }
}

impl<S: Scalar> Diffeomorphism<S> for Chain<S> {
    fn forward(&self, x: &[S]) -> Vec<S> {
        let mut cur = x.to_vec();
        for part in &self.parts {
            cur = part.forward(&cur);
        }
        cur
    }

    fn inverse(&self, y: &[S]) -> Result<Vec<S>> {
        let mut cur = y.to_vec();
        for part in self.parts.iter().rev() {
            cur = part.inverse(&cur)?;
        }
        Ok(cur)
    }

    fn log_abs_det_jacobian_inverse(&self, y: &[S]) -> Result<S> {
        // log|det D(F_k ... F_1)^{-1}(y)| telescopes over the intermediate
        // points of the inverse pass.
        let mut acc = S::constant(0.0);
        let mut cur = y.to_vec();
        for part in self.parts.iter().rev() {
            acc = acc + part.log_abs_det_jacobian_inverse(&cur)?;
            cur = part.inverse(&cur)?;
        }
        Ok(acc)
    }
}

/// A base density pushed through a diffeomorphism:
/// p_Y(y) = p_X(F^{-1}(y)) exp(log |det DF^{-1}(y)|), and 0 off the image.
pub struct PushforwardDensity<S: Scalar> {
    base: Box<dyn Fn(&[S]) -> S + Send + Sync>,
    map: Box<dyn Diffeomorphism<S>>,
}

impl<S: Scalar> PushforwardDensity<S> {
    pub fn new(
        base: Box<dyn Fn(&[S]) -> S + Send + Sync>,
        map: Box<dyn Diffeomorphism<S>>,
    ) -> Self {
        PushforwardDensity { base, map }
    }

    pub fn map(&self) -> &dyn Diffeomorphism<S> {
        self.map.as_ref()
    }

    pub fn base_density(&self, x: &[S]) -> S {
        (self.base)(x)
    }

    pub fn density_at(&self, y: &[S]) -> S {
        match (
            self.map.inverse(y),
            self.map.log_abs_det_jacobian_inverse(y),
        ) {
            (Ok(x), Ok(ladj)) => (self.base)(&x) * ladj.exp(),
            _ => S::constant(0.0),
        }
    }
}

/// Free-function form of [`PushforwardDensity::density_at`].
pub fn pushforward_density_at<S: Scalar>(pd: &PushforwardDensity<S>, y: &[S]) -> S {
    pd.density_at(y)
}
