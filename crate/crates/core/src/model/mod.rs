//! The generating cofibrations and trivial cofibrations of a descent
//! structure, lifting problems, bounded cell factorizations and the
//! predicates built on them.

mod cells;
mod descent;
mod factor;
mod lifting;
mod predicates;

use crate::coeff::{FGModule, Ring};
use crate::complex::{cylinder, disk_inclusion, ChainMap, Complex};
use crate::error::{Error, Result};

pub use cells::{attach_cell, Cell, CellCertificate, Comparison};
pub use descent::{verify_descent, DescentReport, ItemReport};
pub use factor::{cofibrant_replacement, derived_hom, factorize, Factorization, Replacement};
pub use lifting::{has_rlp, i_square_failures, lift_constructive, solve_lifting, LiftSquare};
pub use predicates::{is_fibration, is_g_local, is_h_flasque, FibrationReport};

/// A complex together with a certificate of cofibrancy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certified {
    pub complex: Complex,
    pub certificate: CellCertificate,
}

impl Certified {
    /// `D^nE = Cone(1_{S^{n+1}E})` with its two-cell structure.
    pub fn disk(e: &FGModule, n: i64) -> Self {
        Certified {
            complex: crate::complex::disk(e, n),
            certificate: factor::disk_certificate(e, n),
        }
    }

    /// A degreewise free complex with its top-down free cell structure.
    pub fn free(c: &Complex) -> Result<Self> {
        Ok(Certified {
            complex: c.clone(),
            certificate: CellCertificate::for_free_complex(c)?,
        })
    }
}

/// A pair `(𝒢, ℋ)`: generators and certified acyclic complexes.
///
/// Construction only checks rings; [`verify_descent`] checks the rest.
#[derive(Clone, Debug)]
pub struct DescentData {
    ring: Ring,
    generators: Vec<FGModule>,
    acyclics: Vec<Certified>,
}

impl DescentData {
    pub fn new(ring: Ring, generators: Vec<FGModule>, acyclics: Vec<Certified>) -> Result<Self> {
        for g in &generators {
            ring.check_same(g.ring())?;
        }
        for h in &acyclics {
            ring.check_same(h.complex.ring())?;
        }
        Ok(DescentData {
            ring,
            generators,
            acyclics,
        })
    }

    /// `(𝒢, ∅)` with `𝒢` the free module of rank one.
    pub fn frees(ring: &Ring) -> Self {
        DescentData {
            ring: ring.clone(),
            generators: vec![FGModule::free(ring.clone(), 1)],
            acyclics: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[FGModule] {
        &self.generators
    }

    pub fn acyclics(&self) -> &[Certified] {
        &self.acyclics
    }

    pub(crate) fn require_generators(&self) -> Result<()> {
        if self.generators.is_empty() {
            Err(Error::EmptyGenerators)
        } else {
            Ok(())
        }
    }

    /// True when every generator is a free module.
    pub fn generators_are_free(&self) -> bool {
        self.generators.iter().all(FGModule::is_free)
    }
}

/// `I`: the inclusions `S^{n+1}E → D^nE` ordered by degree, then generator.
pub fn generating_cofibrations(dd: &DescentData, range: Option<(i64, i64)>) -> Result<Vec<ChainMap>> {
    dd.require_generators()?;
    let Some((lo, hi)) = range else {
        return Ok(Vec::new());
    };
    Ok((lo..=hi)
        .flat_map(|n| dd.generators.iter().map(move |e| disk_inclusion(e, n)))
        .collect())
}

/// `J = J' ∪ J''`: the maps `0 → D^nE`, then `(H ⊕ H)[n] → Cyl(H)[n]`.
pub fn generating_trivial_cofibrations(dd: &DescentData, range: Option<(i64, i64)>) -> Result<Vec<ChainMap>> {
    dd.require_generators()?;
    let Some((lo, hi)) = range else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for n in lo..=hi {
        for e in &dd.generators {
            let d = disk_inclusion(e, n).target().clone();
            out.push(ChainMap::zero(&Complex::zero(dd.ring.clone()), &d));
        }
    }
    for n in lo..=hi {
        for h in &dd.acyclics {
            let cyl = cylinder(&h.complex);
            out.push(cyl.i0.hstack(&cyl.i1).shift(n));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
