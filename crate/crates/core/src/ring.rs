//! Graded rings `R = S/K` given by a weighted polynomial ring and homogeneous
//! relations.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger_unchecked, GroebnerBasis};
use crate::monomial::MonomialOrder;
use crate::poly::{same_ring, PolyRing, Polynomial};

/// A presentation `R = S/K` with `K` generated by homogeneous relations.
pub struct Ring {
    base: Arc<PolyRing>,
    relations: Vec<Polynomial>,
    relations_gb: OnceLock<GroebnerBasis>,
}

impl std::fmt::Debug for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ring")
            .field("p", &self.base.characteristic())
            .field("vars", &self.base.names())
            .field("weights", &self.base.weights())
            .field("relations", &self.relations)
            .finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.base, &other.base) && self.relations == other.relations
    }
}
impl Eq for Ring {}

impl Ring {
    /// Validates that every relation is nonzero, homogeneous and lives in `base`.
    pub fn new(base: Arc<PolyRing>, relations: Vec<Polynomial>) -> Result<Arc<Ring>> {
        for r in &relations {
            if !same_ring(r.ring(), &base) {
                return Err(Error::RingMismatch);
            }
            if r.is_zero() {
                return Err(Error::InvalidArgument("relation is zero".into()));
            }
            r.homogeneous_degree()?;
        }
        Ok(Arc::new(Ring {
            base,
            relations,
            relations_gb: OnceLock::new(),
        }))
    }

    pub fn polynomial_ring(base: Arc<PolyRing>) -> Arc<Ring> {
        Arc::new(Ring {
            base,
            relations: Vec::new(),
            relations_gb: OnceLock::new(),
        })
    }

    #[inline]
    pub fn base(&self) -> &Arc<PolyRing> {
        &self.base
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }

    /// Reduced grevlex basis of `K`.
    pub fn relations_gb(&self) -> &GroebnerBasis {
        self.relations_gb.get_or_init(|| {
            buchberger_unchecked(&self.base, &self.relations, MonomialOrder::Grevlex)
        })
    }

    /// `true` iff `f` vanishes in `R`.
    pub fn is_zero_in_quotient(&self, f: &Polynomial) -> bool {
        self.relations_gb().normal_form_unchecked(f).is_zero()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.base, i)
    }

    /// Structural equality or pointer identity.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Ring>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}
