use std::collections::HashSet;

use super::Parity;
use crate::error::{Error, Result};

/// A finite-dimensional super vector space with an enumerated homogeneous
/// basis. Optional integer weight tags are carried per basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperModule {
    labels: Vec<String>,
    parities: Vec<Parity>,
    weights: Option<Vec<Vec<i64>>>,
}

impl SuperModule {
    pub fn new(
        labels: Vec<String>,
        parities: Vec<Parity>,
        weights: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        if labels.len() != parities.len() {
            return Err(Error::Construction(format!(
                "{} labels but {} parities",
                labels.len(),
                parities.len()
            )));
        }
        if let Some(w) = &weights {
            if w.len() != labels.len() {
                return Err(Error::Construction("weight count differs from dimension".into()));
            }
            if w.windows(2).any(|p| p[0].len() != p[1].len()) {
                return Err(Error::Construction("weights of unequal length".into()));
            }
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Construction(format!("duplicate basis label {l}")));
            }
        }
        Ok(Self {
            labels,
            parities,
            weights,
        })
    }

    /// Basis `b0, b1, ...` with the given parities and no weights.
    pub fn anonymous(parities: Vec<Parity>) -> Self {
        let labels = (0..parities.len()).map(|i| format!("b{i}")).collect();
        Self {
            labels,
            parities,
            weights: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn weight(&self, i: usize) -> Option<&[i64]> {
        self.weights.as_ref().map(|w| w[i].as_slice())
    }

    pub fn weights(&self) -> Option<&[Vec<i64>]> {
        self.weights.as_deref()
    }

    pub fn even_dim(&self) -> usize {
        self.parities.iter().filter(|p| !p.is_odd()).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    /// Index of the basis element with the given label.
    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_labels() {
        let r = SuperModule::new(
            vec!["a".into(), "a".into()],
            vec![Parity::Even, Parity::Odd],
            None,
        );
        assert!(r.is_err());
    }

    #[test]
    fn sub_dimensions_sum() {
        let v = SuperModule::anonymous(vec![Parity::Even, Parity::Odd, Parity::Odd]);
        assert_eq!(v.even_dim() + v.odd_dim(), v.dim());
        assert_eq!(v.odd_dim(), 2);
    }
}
