use std::fmt;
use std::sync::Arc;

use crate::catalog::SeriesId;
use crate::error::{Error, Result};
use crate::Rational;

/// One `(base, coeff)` pair of a generalized Dirichlet series Σ c·b⁻ˢ.
pub type StreamTerm = (Rational, Rational);

type Generator = dyn Fn() -> Box<dyn Iterator<Item = StreamTerm> + Send> + Send + Sync;

/// A generalized Dirichlet series F(s) = Σₖ cₖ·bₖ⁻ˢ given by a restartable
/// coefficient stream over strictly increasing bases.
///
/// Streams may be infinite (catalog series), finite (Dirichlet polynomials,
/// where every base past the last one has coefficient zero), or *partial*:
/// exact only up to `known_through`, with unknown data beyond.
#[derive(Clone)]
pub struct SeriesSpec {
    name: String,
    description: String,
    id: Option<SeriesId>,
    known_through: Option<Rational>,
    finite: bool,
    generator: Arc<Generator>,
}

impl SeriesSpec {
    pub fn from_generator<F, I>(name: impl Into<String>, description: impl Into<String>, f: F) -> Self
    where
        F: Fn() -> I + Send + Sync + 'static,
        I: Iterator<Item = StreamTerm> + Send + 'static,
    {
        SeriesSpec {
            name: name.into(),
            description: description.into(),
            id: None,
            known_through: None,
            finite: false,
            generator: Arc::new(move || Box::new(f())),
        }
    }

    /// A finite Dirichlet polynomial. Terms may come in any order; equal
    /// bases are summed and zero coefficients dropped.
    pub fn polynomial(name: impl Into<String>, terms: Vec<StreamTerm>) -> Result<Self> {
        let terms = canonical_terms(terms)?;
        let mut spec = Self::from_generator(name, "finite Dirichlet polynomial", move || terms.clone().into_iter());
        spec.finite = true;
        Ok(spec)
    }

    /// A series whose coefficients are known exactly only for bases up to
    /// `known_through`. Anything needing data beyond that bound fails with
    /// [`Error::InsufficientSeriesData`].
    pub fn partial(name: impl Into<String>, terms: Vec<StreamTerm>, known_through: Rational) -> Result<Self> {
        let terms = canonical_terms(terms)?;
        let mut spec = Self::from_generator(name, "partially known Dirichlet series", move || terms.clone().into_iter());
        spec.known_through = Some(known_through);
        Ok(spec)
    }

    pub(crate) fn with_id(mut self, id: SeriesId) -> Self {
        self.id = Some(id);
        self
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// The catalog identity, when the series came from [`crate::catalog::make_series`].
    pub fn id(&self) -> Option<&SeriesId> {
        self.id.as_ref()
    }

    pub fn known_through(&self) -> Option<&Rational> {
        self.known_through.as_ref()
    }

    /// True for Dirichlet polynomials, whose stream ends.
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// A fresh pass over the stream with zero coefficients skipped.
    pub fn stream(&self) -> impl Iterator<Item = StreamTerm> + Send {
        (self.generator)().filter(|(_, c)| !c.is_zero())
    }

    /// Validated terms with base ≤ `bound`, in ascending order.
    ///
    /// Checks the stream invariants (positive, strictly increasing bases;
    /// leading base above 1; nonzero leading coefficient) on the prefix read.
    pub fn terms_through(&self, bound: &Rational) -> Result<Vec<StreamTerm>> {
        if let Some(known) = &self.known_through {
            if bound > known {
                return Err(Error::InsufficientSeriesData {
                    known: known.to_string(),
                    needed: bound.to_string(),
                });
            }
        }
        let mut out: Vec<StreamTerm> = Vec::new();
        for (base, coeff) in self.stream() {
            match out.last() {
                None => {
                    if base <= 1 {
                        return Err(Error::InvalidSeries(format!("leading base {base} must exceed 1")));
                    }
                }
                Some((prev, _)) if &base <= prev => {
                    return Err(Error::InvalidSeries(format!("bases not strictly increasing at {base}")));
                }
                _ => {}
            }
            if &base > bound {
                break;
            }
            out.push((base, coeff));
        }
        Ok(out)
    }

    /// The leading `(b₁, c₁)` pair.
    pub fn leading(&self) -> Result<StreamTerm> {
        let (base, coeff) = self.stream().next().ok_or(Error::EmptySeries)?;
        if base <= 1 {
            return Err(Error::InvalidSeries(format!("leading base {base} must exceed 1")));
        }
        if coeff.is_zero() {
            return Err(Error::InvalidSeries("leading coefficient is zero".into()));
        }
        Ok((base, coeff))
    }

    /// The first `n` stream terms.
    pub fn take(&self, n: usize) -> Vec<StreamTerm> {
        self.stream().take(n).collect()
    }

    /// The Dirichlet polynomial formed by the terms with base ≤ `max_base`.
    pub fn truncated(&self, max_base: &Rational) -> Result<SeriesSpec> {
        let terms = self.terms_through(max_base)?;
        Ok(SeriesSpec::polynomial(format!("{}[<={}]", self.name, max_base), terms)?
            .with_description(format!("{} truncated to bases <= {}", self.description, max_base)))
    }
}

impl fmt::Debug for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesSpec")
            .field("name", &self.name)
            .field("id", &self.id)
            .field("known_through", &self.known_through)
            .field("finite", &self.finite)
            .finish_non_exhaustive()
    }
}

fn canonical_terms(terms: Vec<StreamTerm>) -> Result<Vec<StreamTerm>> {
    let mut map = std::collections::BTreeMap::<Rational, Rational>::new();
    for (b, c) in terms {
        if !b.is_positive() {
            return Err(Error::InvalidSeries(format!("base {b} must be positive")));
        }
        *map.entry(b).or_insert_with(Rational::zero) += &c;
    }
    Ok(map.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}
