use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Laurent, RatFunc, Ring};

/// An element of `L = K((t))` with `K = F_q(u)`.
pub type Series = Laurent<RatFunc>;

/// A differential form of degree 0, 1 or 2 over `L`, in the basis
/// `{du, dlog t}`: `f`, `f_u du + f_l dlog t`, or `h du∧dlog t`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogForm {
    degree: usize,
    comps: Vec<Series>,
}

pub const MAX_DEGREE: usize = 2;

impl LogForm {
    pub fn scalar(f: Series) -> Self {
        LogForm { degree: 0, comps: vec![f] }
    }

    pub fn one_form(f_u: Series, f_l: Series) -> Self {
        LogForm { degree: 1, comps: vec![f_u, f_l] }
    }

    pub fn two_form(h: Series) -> Self {
        LogForm { degree: 2, comps: vec![h] }
    }

    pub fn from_components(degree: usize, comps: Vec<Series>) -> Result<Self> {
        let expected = match degree {
            0 | 2 => 1,
            1 => 2,
            _ => return Err(Error::DegreeOverflow(format!("forms of degree {degree} vanish on a surface"))),
        };
        if comps.len() != expected {
            return Err(Error::Mismatch(format!("degree {degree} needs {expected} components, got {}", comps.len())));
        }
        Ok(LogForm { degree, comps })
    }

    pub fn zero(ctx: &RatFunc, degree: usize) -> Result<Self> {
        let n = if degree == 1 { 2 } else { 1 };
        Self::from_components(degree, vec![Series::zero(ctx); n])
    }

    pub fn du(ctx: &RatFunc) -> Self {
        Self::one_form(Series::constant(ctx.one_like()), Series::zero(ctx))
    }

    pub fn dlog_t(ctx: &RatFunc) -> Self {
        Self::one_form(Series::zero(ctx), Series::constant(ctx.one_like()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Series] {
        &self.comps
    }

    pub fn ctx(&self) -> &RatFunc {
        self.comps[0].ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Ring::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Series) -> Series) -> Self {
        LogForm { degree: self.degree, comps: self.comps.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&Series) -> Result<Series>) -> Result<Self> {
        Ok(LogForm { degree: self.degree, comps: self.comps.iter().map(f).collect::<Result<_>>()? })
    }

    fn same_degree(&self, rhs: &Self) -> Result<()> {
        if self.degree != rhs.degree {
            return Err(Error::Mismatch(format!("adding forms of degrees {} and {}", self.degree, rhs.degree)));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_degree(rhs)?;
        Ok(LogForm { degree: self.degree, comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    /// Multiplication by a function.
    pub fn scale(&self, f: &Series) -> Self {
        self.map(|c| c.mul(f))
    }

    pub fn wedge(&self, rhs: &Self) -> Result<Self> {
        match (self.degree, rhs.degree) {
            (0, _) => Ok(rhs.scale(&self.comps[0])),
            (_, 0) => Ok(self.scale(&rhs.comps[0])),
            (1, 1) => {
                let (a, b) = (&self.comps, &rhs.comps);
                Ok(Self::two_form(a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))))
            }
            (p, q) => Err(Error::DegreeOverflow(format!("wedge of degrees {p} and {q} exceeds {MAX_DEGREE}"))),
        }
    }

    /// Exterior derivative, with `df = (∂f/∂u) du + (t ∂f/∂t) dlog t`.
    pub fn d(&self) -> Result<Self> {
        match self.degree {
            0 => {
                let f = &self.comps[0];
                Ok(Self::one_form(partial_u(f), euler(f)))
            }
            1 => {
                let (f_u, f_l) = (&self.comps[0], &self.comps[1]);
                Ok(Self::two_form(partial_u(f_l).sub(&euler(f_u))))
            }
            _ => Err(Error::DegreeOverflow("d of a 2-form has degree 3".into())),
        }
    }

    /// `dlog g = dg / g` for a nonzero function `g`.
    pub fn dlog(g: &Series) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = g.inverse()?;
        Ok(Self::scalar(g.clone()).d()?.scale(&inv))
    }
}

/// `∂/∂u`, coefficient-wise.
pub fn partial_u(f: &Series) -> Series {
    f.map_terms(|_, c| c.derivative())
}

/// `t ∂/∂t`.
pub fn euler(f: &Series) -> Series {
    f.map_terms(|k, c| c.scale_int(k))
}

fn coefficient_text(c: &Series) -> String {
    let s = c.to_string();
    if c.num_terms() > 1 || s.contains(['+', '/']) {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            0 => write!(f, "{}", self.comps[0]),
            1 => write!(f, "{}·du + {}·dlog t", coefficient_text(&self.comps[0]), coefficient_text(&self.comps[1])),
            _ => write!(f, "{}·du∧dlog t", coefficient_text(&self.comps[0])),
        }
    }
}
