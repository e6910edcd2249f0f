use crate::coeff::{FGModule, Matrix};
use crate::complex::{hull, ChainMap, Complex};
use crate::error::{Error, Result};

use super::cells::{attach_unchecked, stage_inclusion, Cell, CellCertificate, Comparison};
use super::lifting::i_square_failures;
use super::DescentData;

/// `f = p ∘ i` with `i` a relative cell complex over `I`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub i: ChainMap,
    /// Certificate of `i`: base is the source of `f`, replay gives `i`.
    pub certificate: CellCertificate,
    pub p: ChainMap,
}

impl Factorization {
    pub fn middle(&self) -> &Complex {
        self.i.target()
    }
}

/// A cofibrant complex with a quasi-isomorphism onto the original.
#[derive(Clone, Debug)]
pub struct Replacement {
    pub complex: Complex,
    pub certificate: CellCertificate,
    pub q: ChainMap,
}

/// Bounded small-object argument. Each round sweeps degrees from the top of
/// the current window down, and for every generator attaches one cell per
/// unliftable square against `S^{n+1}E → D^nE`. Stops after a round with no
/// failures; errors once more than `max_cells` cells would be needed.
pub fn factorize(f: &ChainMap, dd: &DescentData, max_cells: usize) -> Result<Factorization> {
    dd.require_generators()?;
    let x = f.source();
    let y = f.target();
    let mut stage = x.clone();
    let mut p = f.clone();
    let mut cells: Vec<Cell> = Vec::new();
    loop {
        let mut attached = false;
        let Some((lo, hi)) = hull(&[stage.bounds(), y.bounds()]) else {
            break;
        };
        for n in (lo - 1..=hi).rev() {
            for e in dd.generators() {
                let failures = i_square_failures(&p, n, e)?;
                if failures.is_empty() {
                    continue;
                }
                if cells.len() + failures.len() > max_cells {
                    return Err(Error::BudgetExceeded(format!(
                        "{} cells attached, {} unliftable squares remain in degree {n} for generator {e}",
                        cells.len(),
                        failures.len()
                    )));
                }
                for (a, b) in failures {
                    let next = attach_unchecked(&stage, n, e, &a);
                    p = ChainMap::from_fn(&next, y, |k| {
                        if k == n {
                            p.matrix(n).hstack(&b)
                        } else {
                            p.matrix(k)
                        }
                    });
                    stage = next;
                    cells.push(Cell {
                        degree: n,
                        module: e.clone(),
                        attaching: a,
                    });
                    attached = true;
                }
            }
        }
        if !attached {
            break;
        }
    }
    let i = stage_inclusion(x, &stage);
    debug_assert_eq!(&p.compose(&i), f);
    Ok(Factorization {
        i,
        certificate: CellCertificate {
            base: x.clone(),
            cells,
            comparison: Comparison::Identity,
        },
        p,
    })
}

/// Default cell budget for replacements of `c`.
fn replacement_budget(c: &Complex) -> usize {
    64 + 8 * c.total_rank()
}

/// A cofibrant replacement `q : P → C`. Degreewise free complexes are their
/// own replacement when the free module of rank one is a generator;
/// otherwise `0 → C` is factorized.
pub fn cofibrant_replacement(c: &Complex, dd: &DescentData) -> Result<Replacement> {
    dd.require_generators()?;
    dd.ring().check_same(c.ring())?;
    let r = FGModule::free(c.ring().clone(), 1);
    if c.is_degreewise_free() && dd.generators().contains(&r) {
        return Ok(Replacement {
            complex: c.clone(),
            certificate: CellCertificate::for_free_complex(c)?,
            q: ChainMap::identity(c),
        });
    }
    let zero = ChainMap::zero(&Complex::zero(c.ring().clone()), c);
    let fac = factorize(&zero, dd, replacement_budget(c)).map_err(|e| match e {
        Error::BudgetExceeded(msg) if !c.ring().is_hereditary() => {
            Error::NoResolution(format!("{} has no finite resolution by the generators: {msg}", c.ring()))
        }
        other => other,
    })?;
    Ok(Replacement {
        complex: fac.i.target().clone(),
        certificate: fac.certificate,
        q: fac.p,
    })
}

/// `Hom_D(X, Y[n])`, computed as homotopy classes out of a cofibrant
/// replacement of `X`. Every complex is fibrant for module-category data.
pub fn derived_hom(x: &Complex, y: &Complex, n: i64, dd: &DescentData) -> Result<FGModule> {
    let rep = cofibrant_replacement(x, dd)?;
    crate::complex::homotopy_classes(&rep.complex, y, n)
}

/// Identity-comparison certificate for `D^nE`, built as `S^{n+1}E` followed
/// by a cell whose attaching map is the identity.
pub(crate) fn disk_certificate(e: &FGModule, n: i64) -> CellCertificate {
    CellCertificate {
        base: Complex::zero(e.ring().clone()),
        cells: vec![
            Cell {
                degree: n + 1,
                module: e.clone(),
                attaching: Matrix::zeros(0, e.rank()),
            },
            Cell {
                degree: n,
                module: e.clone(),
                attaching: Matrix::identity(e.rank()),
            },
        ],
        comparison: Comparison::Identity,
    }
}
