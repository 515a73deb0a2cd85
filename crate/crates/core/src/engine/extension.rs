//! Short exact sequences `0 → M' → M → M'' → 0` of subquotients, validated
//! on construction.

use thiserror::Error;

use crate::module::{Matrix, Submodule, Subquotient};
use crate::ring::{Element, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("modules over different rings")]
    RingMismatch,
    #[error("map of shape {rows}×{cols} does not fit the modules")]
    Shape { rows: usize, cols: usize },
    #[error("the injection does not send M' into M")]
    InjectionUndefined,
    #[error("the surjection does not send M into M''")]
    SurjectionUndefined,
    #[error("the composite M' → M'' is not zero")]
    NotComplex,
    #[error("M' → M has a nonzero kernel")]
    NotInjective,
    #[error("M → M'' misses part of M''")]
    NotSurjective,
    #[error("the kernel of M → M'' is larger than the image of M'")]
    NotExact,
}

#[derive(Clone, Debug)]
pub struct ExtensionData {
    sub: Subquotient,
    mid: Subquotient,
    quot: Subquotient,
    inj: Matrix,
    surj: Matrix,
}

impl ExtensionData {
    pub fn new(
        sub: Subquotient,
        mid: Subquotient,
        quot: Subquotient,
        inj: Matrix,
        surj: Matrix,
    ) -> Result<ExtensionData, ExtensionError> {
        if sub.ring() != mid.ring() || mid.ring() != quot.ring() {
            return Err(ExtensionError::RingMismatch);
        }
        let (n1, n, n2) = (sub.ambient_rank(), mid.ambient_rank(), quot.ambient_rank());
        if inj.rows != n || inj.cols != n1 {
            return Err(ExtensionError::Shape {
                rows: inj.rows,
                cols: inj.cols,
            });
        }
        if surj.rows != n2 || surj.cols != n {
            return Err(ExtensionError::Shape {
                rows: surj.rows,
                cols: surj.cols,
            });
        }
        let (mid_total, quot_total) = (mid.total(), quot.total());
        if !mid_total.contains(&sub.num().map(&inj)) || !mid.rels().contains(&sub.rels().map(&inj))
        {
            return Err(ExtensionError::InjectionUndefined);
        }
        if !quot_total.contains(&mid.num().map(&surj))
            || !quot.rels().contains(&mid.rels().map(&surj))
        {
            return Err(ExtensionError::SurjectionUndefined);
        }
        if !quot.rels().contains(&sub.num().map(&inj).map(&surj)) {
            return Err(ExtensionError::NotComplex);
        }
        if !sub.rels().contains(&sub.total().preimage(&inj, mid.rels())) {
            return Err(ExtensionError::NotInjective);
        }
        if !mid.num().map(&surj).sum(quot.rels()).contains(quot.num()) {
            return Err(ExtensionError::NotSurjective);
        }
        let image = sub.num().map(&inj).sum(mid.rels());
        if !image.contains(&mid_total.preimage(&surj, quot.rels())) {
            return Err(ExtensionError::NotExact);
        }
        Ok(ExtensionData {
            sub,
            mid,
            quot,
            inj,
            surj,
        })
    }

    /// `0 → A → B → B/A → 0` for submodules `A ⊆ B ⊆ Rⁿ`, with identity maps.
    pub fn of_inclusion(
        a: &Submodule,
        b: &Submodule,
        quot_num: &Submodule,
    ) -> Result<ExtensionData, ExtensionError> {
        let ring = a.ring();
        let n = a.rank();
        let quot = Subquotient::new(quot_num.clone(), a.clone())
            .map_err(|_| ExtensionError::RingMismatch)?;
        ExtensionData::new(
            Subquotient::submodule(a.clone()),
            Subquotient::submodule(b.clone()),
            quot,
            Matrix::identity(ring, n),
            Matrix::identity(ring, n),
        )
    }

    pub fn sub(&self) -> &Subquotient {
        &self.sub
    }

    pub fn mid(&self) -> &Subquotient {
        &self.mid
    }

    pub fn quot(&self) -> &Subquotient {
        &self.quot
    }

    pub fn inj(&self) -> &Matrix {
        &self.inj
    }

    pub fn surj(&self) -> &Matrix {
        &self.surj
    }

    /// A preimage in M of `v ∈ M''`, preferring a generator of M.
    pub fn lift(&self, v: &[Element]) -> Vector {
        let ring = self.mid.ring();
        if let Some(g) = self
            .mid
            .num()
            .gens()
            .iter()
            .find(|g| self.surj.apply(ring, g) == v)
        {
            return g.clone();
        }
        for g in self.mid.num().gens() {
            let diff = ring.vec_add(&self.surj.apply(ring, g), &ring.vec_neg(v));
            if self.quot.rels().contains_vector(&diff) {
                return g.clone();
            }
        }
        self.mid
            .total()
            .lift_through(&self.surj, v, self.quot.rels())
            .expect("surjectivity was validated")
    }

    /// The element of M' mapping to `v`, for `v` in the kernel of M → M''.
    pub fn pull_back(&self, v: &[Element]) -> Vector {
        self.sub
            .total()
            .lift_through(&self.inj, v, self.mid.rels())
            .expect("exactness was validated")
    }
}
