use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{alpha_polynomial, g_reduced_char, hilbert_spanning};
use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::lattice::{FlatId, FlatLattice, IntervalKey};
use crate::RatPolynomial;

/// Largest interval, in flats, on which incidence algebra elements are built.
pub const INCIDENCE_FLAT_LIMIT: usize = 300;

/// An element of the incidence algebra of an interval of flats, with
/// values in `Q[x]`.
#[derive(Clone, Debug)]
pub struct IncidenceElement {
    lattice: Arc<FlatLattice>,
    ids: Vec<FlatId>,
    values: FxHashMap<(FlatId, FlatId), RatPolynomial>,
}

impl PartialEq for IncidenceElement {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.values == other.values
    }
}

impl IncidenceElement {
    pub fn from_fn<F>(b: &BuildingSet, f: F) -> Result<Self>
    where
        F: Fn(IntervalKey) -> Result<RatPolynomial>,
    {
        let l = b.lattice();
        let ids = l.interval(b.bottom(), b.top());
        if ids.len() > INCIDENCE_FLAT_LIMIT {
            return Err(Error::TooLarge(format!(
                "incidence algebra on {} flats (limit {INCIDENCE_FLAT_LIMIT})",
                ids.len()
            )));
        }
        let mut values = FxHashMap::default();
        for &x in &ids {
            for y in l.interval(x, b.top()) {
                values.insert((x, y), f(IntervalKey { bottom: x, top: y })?);
            }
        }
        Ok(IncidenceElement {
            lattice: Arc::clone(l),
            ids,
            values,
        })
    }

    pub fn zeta(b: &BuildingSet) -> Result<Self> {
        Self::from_fn(b, |_| Ok(RatPolynomial::one()))
    }

    pub fn delta(b: &BuildingSet) -> Result<Self> {
        Self::from_fn(b, |k| {
            Ok(if k.bottom == k.top {
                RatPolynomial::one()
            } else {
                RatPolynomial::zero()
            })
        })
    }

    pub fn chi_bar_g(b: &BuildingSet) -> Result<Self> {
        Self::from_fn(b, |k| g_reduced_char(b, k))
    }

    pub fn alpha(b: &BuildingSet) -> Result<Self> {
        Self::from_fn(b, |k| alpha_polynomial(b, k))
    }

    /// `H` of every minor, each from the spanning engine on the induced
    /// building set.
    pub fn chow(b: &BuildingSet) -> Result<Self> {
        Self::from_fn(b, |k| Ok(hilbert_spanning(&b.induced(k.bottom, k.top)?)?.hilbert.to_rational()))
    }

    pub fn get(&self, x: FlatId, y: FlatId) -> Option<&RatPolynomial> {
        self.values.get(&(x, y))
    }

    fn same_domain(&self, other: &Self) -> Result<()> {
        if self.ids != other.ids || !Arc::ptr_eq(&self.lattice, &other.lattice) {
            return Err(Error::Internal("incidence elements on different intervals".into()));
        }
        Ok(())
    }

    fn map_pairs<F>(&self, f: F) -> Self
    where
        F: Fn(FlatId, FlatId) -> RatPolynomial,
    {
        let values = self.values.keys().map(|&(x, y)| ((x, y), f(x, y))).collect();
        IncidenceElement {
            lattice: Arc::clone(&self.lattice),
            ids: self.ids.clone(),
            values,
        }
    }

    /// `(a ∗ b)(F, G) = Σ_{F ≤ H ≤ G} a(F, H) b(H, G)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        Ok(self.map_pairs(|x, y| {
            self.lattice
                .interval(x, y)
                .into_iter()
                .map(|h| &self.values[&(x, h)] * &other.values[&(h, y)])
                .sum()
        }))
    }

    /// Two-sided inverse; the diagonal must consist of nonzero constants.
    pub fn invert(&self) -> Result<Self> {
        let l = &self.lattice;
        let mut diag_inv = FxHashMap::default();
        for &x in &self.ids {
            let d = &self.values[&(x, x)];
            if !d.is_constant() || d.is_zero() {
                return Err(Error::NonInvertibleDiagonal(x));
            }
            diag_inv.insert(x, RatPolynomial::constant(d.coeff(0).clone().recip()));
        }
        let mut inv: FxHashMap<(FlatId, FlatId), RatPolynomial> = FxHashMap::default();
        for &x in &self.ids {
            inv.insert((x, x), diag_inv[&x].clone());
            // ids within the interval come in a linear extension order
            for y in l.interval(x, *self.ids.last().unwrap_or(&x)) {
                if y == x || !self.values.contains_key(&(x, y)) {
                    continue;
                }
                let s: RatPolynomial = l
                    .interval(x, y)
                    .into_iter()
                    .filter(|&h| h != y)
                    .map(|h| &inv[&(x, h)] * &self.values[&(h, y)])
                    .sum();
                inv.insert((x, y), -(&diag_inv[&y] * &s));
            }
        }
        Ok(self.map_pairs(|x, y| inv[&(x, y)].clone()))
    }

    pub fn negated(&self) -> Self {
        self.map_pairs(|x, y| -&self.values[&(x, y)])
    }
}

/// Checks `χ̄^G ∗ H = −δ` and `(χ̄^G)^{−1} = −H` on every interval.
pub fn verify_inversion(b: &BuildingSet) -> Result<bool> {
    let chi = IncidenceElement::chi_bar_g(b)?;
    let h = IncidenceElement::chow(b)?;
    let minus_delta = IncidenceElement::delta(b)?.negated();
    if chi.convolve(&h)? != minus_delta {
        return Err(Error::IdentityViolated("χ̄^G ∗ H ≠ −δ".into()));
    }
    if h.convolve(&chi)? != minus_delta {
        return Err(Error::IdentityViolated("H ∗ χ̄^G ≠ −δ".into()));
    }
    if chi.invert()? != h.negated() {
        return Err(Error::IdentityViolated("(χ̄^G)^{-1} ≠ −H".into()));
    }
    Ok(true)
}

/// Checks `ζ ∗ χ̄^G = α^G`.
pub fn verify_zeta_alpha(b: &BuildingSet) -> Result<bool> {
    let lhs = IncidenceElement::zeta(b)?.convolve(&IncidenceElement::chi_bar_g(b)?)?;
    if lhs != IncidenceElement::alpha(b)? {
        return Err(Error::IdentityViolated("ζ ∗ χ̄^G ≠ α^G".into()));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::tests::fig1;
    use crate::polymatroid::Polymatroid;

    #[test]
    fn identities_fig1() {
        let l = FlatLattice::build(fig1()).unwrap();
        let g = BuildingSet::from_labels(&l, &[vec!["a"], vec!["b"], vec!["c"], vec!["a", "b", "c"]]).unwrap();
        assert!(verify_inversion(&g).unwrap());
        assert!(verify_zeta_alpha(&g).unwrap());
        assert!(verify_inversion(&BuildingSet::maximal(&l)).unwrap());
        assert!(verify_zeta_alpha(&BuildingSet::maximal(&l)).unwrap());
    }

    #[test]
    fn identities_k4() {
        let l = FlatLattice::build(Polymatroid::complete_graph(4).unwrap()).unwrap();
        for g in [BuildingSet::minimal(&l).unwrap(), BuildingSet::maximal(&l)] {
            assert!(verify_inversion(&g).unwrap());
            assert!(verify_zeta_alpha(&g).unwrap());
        }
    }

    #[test]
    fn zeta_inverse_is_mobius() {
        let l = FlatLattice::build(Polymatroid::complete_graph(4).unwrap()).unwrap();
        let g = BuildingSet::maximal(&l);
        let mu = IncidenceElement::zeta(&g).unwrap().invert().unwrap();
        let top = mu.get(l.bottom(), l.top()).unwrap();
        assert_eq!(top, &RatPolynomial::constant(l.mobius(l.bottom(), l.top()).unwrap().into()));
        let z = IncidenceElement::zeta(&g).unwrap();
        assert_eq!(z.convolve(&mu).unwrap(), IncidenceElement::delta(&g).unwrap());
    }

    #[test]
    fn singular_diagonal() {
        let l = FlatLattice::build(Polymatroid::boolean(2).unwrap()).unwrap();
        let g = BuildingSet::maximal(&l);
        let z = IncidenceElement::from_fn(&g, |_| Ok(RatPolynomial::zero())).unwrap();
        assert!(matches!(z.invert(), Err(Error::NonInvertibleDiagonal(_))));
    }

    #[test]
    fn size_guard() {
        let l = FlatLattice::build(Polymatroid::boolean(9).unwrap()).unwrap();
        let g = BuildingSet::maximal(&l);
        assert!(matches!(IncidenceElement::zeta(&g), Err(Error::TooLarge(_))));
    }
}
