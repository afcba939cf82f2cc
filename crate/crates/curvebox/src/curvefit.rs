//! The masked polynomial curve family and its least-squares fit.
//!
//! A curve is `y = Σ_{i ∈ degrees} θ_i·xⁱ (+ c)`, where the participating
//! degrees and the optional constant term are chosen by a [`ParamMask`].
//! Masks are written in the `m(j)` notation used throughout the toolkit:
//! `4(3)` keeps the top three monomials of a degree-4 polynomial (x², x³,
//! x⁴), and an optional `+c` suffix includes the constant term.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;

/// Which monomial degrees (and optionally the constant) participate in a fit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ParamMask {
    /// Participating degrees, sorted ascending, each ≥ 1, no duplicates.
    degrees: Vec<u32>,
    include_constant: bool,
}

impl ParamMask {
    /// Builds a mask from an arbitrary degree subset. At least one free
    /// parameter (a degree or the constant) must remain.
    pub fn new(mut degrees: Vec<u32>, include_constant: bool) -> Result<Self> {
        degrees.sort_unstable();
        degrees.dedup();
        if degrees.is_empty() && !include_constant {
            return Err(Error::InvalidMask(
                "mask needs at least one degree or the constant term".into(),
            ));
        }
        if degrees.first().is_some_and(|&d| d == 0) {
            return Err(Error::InvalidMask(
                "degree 0 is the constant term; use include_constant".into(),
            ));
        }
        Ok(Self {
            degrees,
            include_constant,
        })
    }

    /// The `m(j)` family: highest degree `m` with the top `j` monomials
    /// included, i.e. degrees `m−j+1 ..= m`.
    pub fn top_run(m: u32, j: u32, include_constant: bool) -> Result<Self> {
        if m < 1 || j < 1 || j > m {
            return Err(Error::InvalidMask(format!(
                "top-run mask needs 1 ≤ j ≤ m, got m={m}, j={j}"
            )));
        }
        Self::new((m - j + 1..=m).collect(), include_constant)
    }

    /// Constant-only mask (`"c"` in the string notation).
    pub fn constant_only() -> Self {
        Self {
            degrees: Vec::new(),
            include_constant: true,
        }
    }

    /// Degree 2 with both monomials and the constant: the toolkit default.
    pub fn default_mask() -> Self {
        Self::top_run(2, 2, true).expect("2(2)+c is valid")
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn include_constant(&self) -> bool {
        self.include_constant
    }

    /// Highest participating degree; `None` for the constant-only mask.
    pub fn highest_degree(&self) -> Option<u32> {
        self.degrees.last().copied()
    }

    pub fn free_param_count(&self) -> usize {
        self.degrees.len() + usize::from(self.include_constant)
    }

    /// When the degrees form `m−j+1..=m`, returns `(m, j)`.
    fn as_top_run(&self) -> Option<(u32, u32)> {
        let &m = self.degrees.last()?;
        let j = self.degrees.len() as u32;
        if self.degrees[0] == m - j + 1 {
            Some((m, j))
        } else {
            None
        }
    }
}

impl fmt::Display for ParamMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degrees.is_empty() {
            return write!(f, "c");
        }
        match self.as_top_run() {
            Some((m, j)) => write!(f, "{m}({j})")?,
            None => {
                let m = self.degrees.last().unwrap();
                let list: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
                write!(f, "{m}({})", list.join(","))?;
            }
        }
        if self.include_constant {
            write!(f, "+c")?;
        }
        Ok(())
    }
}

impl FromStr for ParamMask {
    type Err = Error;

    /// Parses `m(j)`, `m(d1,d2,…)`, or `c`, each optionally suffixed `+c`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidMask(format!("{msg}: {s:?}"));
        let s = s.trim();
        let (body, constant) = match s.strip_suffix("+c") {
            Some(b) => (b.trim(), true),
            None => (s, false),
        };
        if body == "c" {
            if constant {
                return Err(bad("constant term given twice"));
            }
            return Ok(Self::constant_only());
        }
        let open = body.find('(').ok_or_else(|| bad("expected m(j) form"))?;
        let close = body
            .strip_suffix(')')
            .ok_or_else(|| bad("expected closing parenthesis"))?;
        let m: u32 = body[..open]
            .parse()
            .map_err(|_| bad("invalid highest degree"))?;
        let inner = &close[open + 1..];
        if inner.contains(',') {
            let degrees = inner
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| bad("invalid degree")))
                .collect::<Result<Vec<u32>>>()?;
            if degrees.iter().max() != Some(&m) {
                return Err(bad("degree list must peak at the stated highest degree"));
            }
            Self::new(degrees, constant)
        } else {
            let j: u32 = inner.parse().map_err(|_| bad("invalid monomial count"))?;
            Self::top_run(m, j, constant)
        }
    }
}

impl TryFrom<String> for ParamMask {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ParamMask> for String {
    fn from(m: ParamMask) -> Self {
        m.to_string()
    }
}

/// Fitted coefficients for one edge curve under a [`ParamMask`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveParamsRepr", into = "CurveParamsRepr")]
pub struct CurveParams {
    mask: ParamMask,
    /// One coefficient per masked degree, ascending by degree.
    coefficients: Vec<f64>,
    /// Present exactly when the mask includes the constant term.
    constant: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct CurveParamsRepr {
    mask: ParamMask,
    coefficients: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    constant: Option<f64>,
}

impl TryFrom<CurveParamsRepr> for CurveParams {
    type Error = Error;

    fn try_from(r: CurveParamsRepr) -> Result<Self> {
        CurveParams::new(r.mask, r.coefficients, r.constant)
    }
}

impl From<CurveParams> for CurveParamsRepr {
    fn from(p: CurveParams) -> Self {
        CurveParamsRepr {
            mask: p.mask,
            coefficients: p.coefficients.iter().map(|&c| crate::io::round_sig9(c)).collect(),
            constant: p.constant.map(crate::io::round_sig9),
        }
    }
}

impl CurveParams {
    pub fn new(mask: ParamMask, coefficients: Vec<f64>, constant: Option<f64>) -> Result<Self> {
        if coefficients.len() != mask.degrees().len() {
            return Err(Error::InvalidMask(format!(
                "mask {mask} expects {} coefficients, got {}",
                mask.degrees().len(),
                coefficients.len()
            )));
        }
        if constant.is_some() != mask.include_constant() {
            return Err(Error::InvalidMask(format!(
                "mask {mask} and constant term presence disagree"
            )));
        }
        if coefficients.iter().chain(constant.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidMask("non-finite coefficient".into()));
        }
        Ok(Self {
            mask,
            coefficients,
            constant,
        })
    }

    /// All-zero curve under `mask`.
    pub fn zero(mask: ParamMask) -> Self {
        let n = mask.degrees().len();
        let constant = mask.include_constant().then_some(0.0);
        Self {
            mask,
            coefficients: vec![0.0; n],
            constant,
        }
    }

    pub fn mask(&self) -> &ParamMask {
        &self.mask
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn constant(&self) -> Option<f64> {
        self.constant
    }

    /// Coefficient of `xⁱ` if degree `i` participates in the mask.
    pub fn coefficient_for_degree(&self, degree: u32) -> Option<f64> {
        self.mask
            .degrees()
            .iter()
            .position(|&d| d == degree)
            .map(|i| self.coefficients[i])
    }

    /// Flat layout used by supervision maps: masked coefficients ascending by
    /// degree, then the constant if present.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut v = self.coefficients.clone();
        if let Some(c) = self.constant {
            v.push(c);
        }
        v
    }

    /// Inverse of [`CurveParams::to_flat`].
    pub fn from_flat(mask: ParamMask, values: &[f64]) -> Result<Self> {
        if values.len() != mask.free_param_count() {
            return Err(Error::ShapeMismatch(format!(
                "mask {mask} expects {} flat values, got {}",
                mask.free_param_count(),
                values.len()
            )));
        }
        let n = mask.degrees().len();
        let constant = mask.include_constant().then(|| values[n]);
        CurveParams::new(mask, values[..n].to_vec(), constant)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut y = self.constant.unwrap_or(0.0);
        for (&deg, &coef) in self.mask.degrees().iter().zip(&self.coefficients) {
            y += coef * x.powi(deg as i32);
        }
        y
    }

    pub fn eval_many(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }
}

/// Least-squares fit of the masked polynomial through `points`, solved by
/// Householder QR of the design matrix (no normal equations, which keeps
/// near-collinear abscissae stable).
///
/// Fails with [`Error::InsufficientPoints`] when there are fewer points than
/// free parameters and [`Error::SingularFit`] when the design matrix is
/// rank-deficient (e.g. all abscissae equal).
pub fn fit_poly(points: &[Point2], mask: &ParamMask) -> Result<CurveParams> {
    let p = mask.free_param_count();
    if points.len() < p {
        return Err(Error::InsufficientPoints {
            needed: p,
            got: points.len(),
        });
    }

    let n = points.len();
    let degrees = mask.degrees();
    let design = DMatrix::from_fn(n, p, |r, c| {
        if c < degrees.len() {
            points[r].x.powi(degrees[c] as i32)
        } else {
            1.0
        }
    });
    let rhs = DVector::from_fn(n, |r, _| points[r].y);

    let qr = design.qr();
    let r = qr.r();
    let max_diag = (0..p).map(|i| r[(i, i)].abs()).fold(0.0f64, f64::max);
    let tol = f64::EPSILON * n.max(p) as f64 * max_diag.max(1.0);
    if (0..p).any(|i| r[(i, i)].abs() <= tol) {
        return Err(Error::SingularFit);
    }
    let qtb = qr.q().transpose() * rhs;
    let beta = r
        .solve_upper_triangular(&qtb)
        .ok_or(Error::SingularFit)?;

    let coefficients: Vec<f64> = beta.iter().take(degrees.len()).copied().collect();
    let constant = mask.include_constant().then(|| beta[p - 1]);
    CurveParams::new(mask.clone(), coefficients, constant)
}

/// Sum of squared residuals of `params` against `points`.
pub fn fit_residual(points: &[Point2], params: &CurveParams) -> f64 {
    points
        .iter()
        .map(|p| (p.y - params.eval(p.x)).powi(2))
        .sum()
}
