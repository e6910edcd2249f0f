use std::collections::BTreeMap;

use crate::coeff::{FGModule, Matrix, ModuleMap};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};

/// One attachment along `S^{n+1}E → D^nE`: a new copy of `E` in degree `n`
/// whose differential is the attaching cycle `E → stage^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub degree: i64,
    pub module: FGModule,
    /// `rank(stage^{n+1}) × rank(E)`
    pub attaching: Matrix,
}

/// How the replayed cell complex relates to the complex being certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// The replay is literally the certified complex.
    Identity,
    /// An isomorphism from the replay onto the certified complex.
    Iso(ChainMap),
    /// The certified complex `X` is a retract of the replay `Z`:
    /// `retraction ∘ section = 1_X`.
    Retract { section: ChainMap, retraction: ChainMap },
}

/// A finite relative cell structure: `base` with cells attached in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCertificate {
    pub base: Complex,
    pub cells: Vec<Cell>,
    pub comparison: Comparison,
}

/// Pushout of `stage ← S^{n+1}E → D^nE`: `stage^n ⊕ E` with `d(e) = a(e)`.
pub fn attach_cell(stage: &Complex, cell: &Cell) -> Result<Complex> {
    let n = cell.degree;
    let e = &cell.module;
    let a = ModuleMap::new(e.clone(), stage.module(n + 1).clone(), cell.attaching.clone())
        .map_err(|err| Error::InvariantViolation(format!("attaching map in degree {n}: {err}")))?;
    if !stage.diff(n + 1).compose(&a).is_zero() {
        return Err(Error::InvariantViolation(format!(
            "attaching map in degree {n} does not land in cycles"
        )));
    }
    Ok(attach_unchecked(stage, n, e, a.matrix()))
}

pub(crate) fn attach_unchecked(stage: &Complex, n: i64, e: &FGModule, a: &Matrix) -> Complex {
    let bounds = crate::complex::hull(&[stage.bounds(), Some((n, n))]);
    Complex::from_fn(
        stage.ring(),
        bounds,
        |k| {
            if k == n {
                stage.module(n).direct_sum(e)
            } else {
                stage.module(k).clone()
            }
        },
        |k| {
            if k == n {
                stage.d(n).hstack(a)
            } else if k == n - 1 {
                stage.d(k).vstack(&Matrix::zeros(e.rank(), stage.rank(k)))
            } else {
                stage.d(k)
            }
        },
    )
}

/// Inclusion of a stage into the stage obtained by attaching in degree `n`.
pub(crate) fn stage_inclusion(old: &Complex, new: &Complex) -> ChainMap {
    ChainMap::from_fn(old, new, |k| {
        Matrix::identity(old.rank(k)).vstack(&Matrix::zeros(new.rank(k) - old.rank(k), old.rank(k)))
    })
}

impl CellCertificate {
    /// Certificate of a degreewise free bounded complex, built top-down from
    /// cells of the free rank-1 module. The replay equals `c` exactly.
    pub fn for_free_complex(c: &Complex) -> Result<Self> {
        if !c.is_degreewise_free() {
            return Err(Error::InvariantViolation("complex is not degreewise free".into()));
        }
        let r = FGModule::free(c.ring().clone(), 1);
        let mut cells = Vec::new();
        for n in c.degrees().rev() {
            let d = c.d(n);
            for k in 0..c.rank(n) {
                cells.push(Cell {
                    degree: n,
                    module: r.clone(),
                    attaching: Matrix::column_vector(&d.column(k)),
                });
            }
        }
        Ok(CellCertificate {
            base: Complex::zero(c.ring().clone()),
            cells,
            comparison: Comparison::Identity,
        })
    }

    /// Replays the attachments, returning the final stage and the inclusion
    /// of the base.
    pub fn replay(&self) -> Result<(Complex, ChainMap)> {
        let mut stage = self.base.clone();
        for cell in &self.cells {
            if cell.module.ring() != stage.ring() {
                return Err(Error::RingMismatch(stage.ring().to_string(), cell.module.ring().to_string()));
            }
            stage = attach_cell(&stage, cell)?;
        }
        let inc = stage_inclusion(&self.base, &stage);
        Ok((stage, inc))
    }

    /// Checks that replaying reconstructs `target` through the recorded
    /// comparison, and that every cell uses a module from `generators`.
    pub fn verify(&self, target: &Complex, generators: &[FGModule]) -> Result<()> {
        for (k, cell) in self.cells.iter().enumerate() {
            if !generators.contains(&cell.module) {
                return Err(Error::InvariantViolation(format!(
                    "cell {k} uses {} which is not a generator",
                    cell.module
                )));
            }
        }
        let (z, _) = self.replay()?;
        match &self.comparison {
            Comparison::Identity => {
                if &z != target {
                    return Err(Error::InvariantViolation("replay differs from the certified complex".into()));
                }
            }
            Comparison::Iso(phi) => {
                if phi.source() != &z || phi.target() != target || !phi.is_isomorphism() {
                    return Err(Error::InvariantViolation("recorded comparison is not an isomorphism".into()));
                }
            }
            Comparison::Retract { section, retraction } => {
                if section.source() != target
                    || section.target() != &z
                    || retraction.source() != &z
                    || retraction.target() != target
                    || retraction.compose(section) != ChainMap::identity(target)
                {
                    return Err(Error::InvariantViolation("recorded retract does not compose to the identity".into()));
                }
            }
        }
        Ok(())
    }

    /// Certificate of a complex whose modules are, degree by degree,
    /// concatenations of generators. Cells are attached top-down and the
    /// replay equals `c` exactly.
    pub fn from_generator_blocks(c: &Complex, generators: &[FGModule]) -> Result<Self> {
        let mut cells = Vec::new();
        for n in c.degrees().rev() {
            let d = c.d(n);
            let mut offset = 0;
            for e in split_into_generators(c.module(n), generators)
                .ok_or_else(|| Error::InvariantViolation(format!("degree {n} is not a sum of generators")))?
            {
                let idx: Vec<usize> = (offset..offset + e.rank()).collect();
                offset += e.rank();
                cells.push(Cell {
                    degree: n,
                    attaching: d.select_columns(&idx),
                    module: e,
                });
            }
        }
        Ok(CellCertificate {
            base: Complex::zero(c.ring().clone()),
            cells,
            comparison: Comparison::Identity,
        })
    }

    /// Certificate of a degreewise split injection `c : P → Q` whose
    /// cokernel is degreewise a sum of generators. The replay is compared to
    /// `Q` by the isomorphism `[c | s]` with `s` a section of the cokernel.
    pub fn for_split_injection(c: &ChainMap, generators: &[FGModule]) -> Result<Self> {
        let (p, q) = (c.source(), c.target());
        let mut splits: BTreeMap<i64, (Matrix, Vec<FGModule>, FGModule)> = BTreeMap::new();
        for n in q.degrees() {
            let coker = c.component(n).cokernel();
            let m = c.matrix(n).hstack(&coker.section);
            let phi = ModuleMap::new(p.module(n).direct_sum(&coker.module), q.module(n).clone(), m.clone())
                .map_err(|e| Error::InvariantViolation(format!("degree {n}: cokernel section is not a map: {e}")))?;
            if !phi.is_isomorphism() {
                return Err(Error::InvariantViolation(format!("degree {n}: the map is not split injective")));
            }
            let blocks = split_into_generators(&coker.module, generators).ok_or_else(|| {
                Error::InvariantViolation(format!("degree {n}: cokernel {} is not a sum of generators", coker.module))
            })?;
            splits.insert(n, (m, blocks, coker.module));
        }
        let mut cells = Vec::new();
        for n in q.degrees().rev() {
            let (m, blocks, _) = &splits[&n];
            let pr = p.rank(n);
            let mut offset = pr;
            for e in blocks {
                let idx: Vec<usize> = (offset..offset + e.rank()).collect();
                offset += e.rank();
                let image = &q.d(n) * &m.select_columns(&idx);
                let attaching = match splits.get(&(n + 1)) {
                    None => Matrix::zeros(0, e.rank()),
                    Some((m1, _, k1)) => {
                        let stage = p.module(n + 1).direct_sum(k1);
                        let phi1 = ModuleMap::new_unchecked(stage, q.module(n + 1).clone(), m1.clone());
                        let cols: Vec<_> = (0..e.rank())
                            .map(|k| phi1.solve(&image.column(k)).expect("isomorphism"))
                            .collect();
                        Matrix::from_columns(m1.cols(), &cols)
                    }
                };
                cells.push(Cell {
                    degree: n,
                    module: e.clone(),
                    attaching,
                });
            }
        }
        let mut cert = CellCertificate {
            base: p.clone(),
            cells,
            comparison: Comparison::Identity,
        };
        let (z, _) = cert.replay()?;
        let phi = ChainMap::new(z, q.clone(), splits.iter().map(|(n, (m, _, _))| (*n, m.clone())).collect())?;
        cert.comparison = Comparison::Iso(phi);
        Ok(cert)
    }

    pub fn number_of_cells(&self) -> usize {
        self.cells.len()
    }

    /// The certificate of the pushout of the certified map `base → Z` along
    /// `f : base → C`. Cells are transported unchanged in order; their
    /// attaching maps are pushed forward along the induced stage maps.
    pub fn pushforward(&self, f: &ChainMap) -> Result<CellCertificate> {
        if f.source() != &self.base {
            return Err(Error::NotAChainMap("map must start at the certificate base".into()));
        }
        let mut phi = f.clone();
        let mut stage_b = self.base.clone();
        let mut cells = Vec::new();
        for cell in &self.cells {
            let n = cell.degree;
            let a = &phi.matrix(n + 1) * &cell.attaching;
            let pushed = Cell {
                degree: n,
                module: cell.module.clone(),
                attaching: a,
            };
            let new_b = attach_cell(&stage_b, cell)?;
            let new_d = attach_cell(phi.target(), &pushed)?;
            let e = cell.module.rank();
            phi = ChainMap::from_fn(&new_b, &new_d, |k| {
                let m = phi.matrix(k);
                if k == n {
                    m.block_diag(&Matrix::identity(e))
                } else {
                    m
                }
            });
            stage_b = new_b;
            cells.push(pushed);
        }
        Ok(CellCertificate {
            base: f.target().clone(),
            cells,
            comparison: Comparison::Identity,
        })
    }
}

/// Greedy split of `m`'s generator list into consecutive generator modules.
pub(crate) fn split_into_generators(m: &FGModule, generators: &[FGModule]) -> Option<Vec<FGModule>> {
    let f = m.factors();
    let mut out = Vec::new();
    let mut k = 0;
    while k < f.len() {
        let g = generators
            .iter()
            .filter(|g| g.rank() > 0 && k + g.rank() <= f.len() && g.factors() == &f[k..k + g.rank()])
            .max_by_key(|g| g.rank())?;
        k += g.rank();
        out.push(g.clone());
    }
    Some(out)
}
