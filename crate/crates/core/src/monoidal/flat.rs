use num_bigint::BigInt;

use super::{tensor, tensor_chain_maps, tensor_power};
use crate::coeff::{FGModule, Matrix, ModuleMap, Ring, TensorSpace};
use crate::complex::{chain_cokernel, cone, hull, pushout, sphere, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::model::{cofibrant_replacement, generating_trivial_cofibrations, CellCertificate, Certified, DescentData, Replacement};

/// The map `c : A ⊗ B' ⊔_{A⊗B} A' ⊗ B → A' ⊗ B'` induced by `a` and `b`.
#[derive(Clone, Debug)]
pub struct PushoutProduct {
    /// The pushout, presented with summands ordered `A' ⊗ B`, `A ⊗ B'`.
    pub domain: Complex,
    pub map: ChainMap,
}

impl PushoutProduct {
    /// A cell structure on `c` when it is split injective with cokernel
    /// built from the generators.
    pub fn certify(&self, generators: &[FGModule]) -> Result<CellCertificate> {
        CellCertificate::for_split_injection(&self.map, generators)
    }
}

pub fn pushout_product(a: &ChainMap, b: &ChainMap) -> Result<PushoutProduct> {
    let (a0, a1) = (a.source(), a.target());
    let (b0, b1) = (b.source(), b.target());
    let id = ChainMap::identity;
    let left = tensor_chain_maps(a, &id(b0))?; // A⊗B → A'⊗B
    let right = tensor_chain_maps(&id(a0), b)?; // A⊗B → A⊗B'
    let po = pushout(&left, &right)?;
    let coker = chain_cokernel(&po.relation);
    debug_assert_eq!(coker.complex, po.complex);
    let from_left = tensor_chain_maps(&id(a1), b)?; // A'⊗B → A'⊗B'
    let from_right = tensor_chain_maps(a, &id(b1))?; // A⊗B' → A'⊗B'
    let both = from_left.hstack(&from_right);
    let map = ChainMap::from_fn(&po.complex, both.target(), |n| match coker.sections.get(&n) {
        Some(s) => &both.matrix(n) * s,
        None => Matrix::zeros(both.target().rank(n), po.complex.rank(n)),
    });
    Ok(PushoutProduct {
        domain: po.complex,
        map,
    })
}

/// `P ⊗ Y` for a cofibrant replacement `q : P → X`, with the comparison
/// `q ⊗ 1 : P ⊗ Y → X ⊗ Y`.
#[derive(Clone, Debug)]
pub struct DerivedTensor {
    pub complex: Complex,
    pub comparison: ChainMap,
    pub replacement: Replacement,
}

pub fn derived_tensor(x: &Complex, y: &Complex, dd: &DescentData) -> Result<DerivedTensor> {
    let replacement = cofibrant_replacement(x, dd)?;
    let comparison = tensor_chain_maps(&replacement.q, &ChainMap::identity(y))?;
    Ok(DerivedTensor {
        complex: comparison.source().clone(),
        comparison,
        replacement,
    })
}

/// Whether `C ⊗ j` is degreewise injective and a quasi-isomorphism, for
/// `j` one of the generating trivial cofibrations of `dd`.
pub fn monoid_axiom_probe(c: &Complex, j: &ChainMap, dd: &DescentData) -> Result<bool> {
    let Some((tl, _)) = j.target().bounds() else {
        return Err(Error::InvariantViolation("j must have a nonzero target".into()));
    };
    let mut range = Some((tl, tl));
    for h in dd.acyclics() {
        if let Some((hl, _)) = h.complex.bounds() {
            range = hull(&[range, Some((hl - 1 - tl, hl - 1 - tl))]);
        }
    }
    if !generating_trivial_cofibrations(dd, range)?.contains(j) {
        return Err(Error::InvariantViolation("j is not a generating trivial cofibration".into()));
    }
    let cj = tensor_chain_maps(&ChainMap::identity(c), j)?;
    Ok(cj.is_degreewise_injective() && cj.is_quasi_isomorphism())
}

/// `0 → A → B → M → 0` at module level, with `A` and `B` free.
#[derive(Clone, Debug)]
pub struct ShortResolution {
    pub a: FGModule,
    pub b: FGModule,
    pub incl: Matrix,
    pub proj: Matrix,
}

impl ShortResolution {
    /// The canonical resolution of `m`: `B` free on the generators of `m`,
    /// `A` free on the relations.
    pub fn build(m: &FGModule) -> Result<Self> {
        let ring = m.ring().clone();
        if m.is_free() {
            return Ok(ShortResolution {
                a: FGModule::zero(ring),
                b: m.clone(),
                incl: Matrix::zeros(m.rank(), 0),
                proj: Matrix::identity(m.rank()),
            });
        }
        if ring != Ring::Integers {
            return Err(Error::NoResolution(format!("{m} is not free over {ring}")));
        }
        let k = m.rank();
        let torsion: Vec<usize> = (0..k).filter(|&i| !m.factors()[i].eq(&BigInt::from(0))).collect();
        let mut incl = Matrix::zeros(k, torsion.len());
        for (c, &i) in torsion.iter().enumerate() {
            incl[(i, c)] = m.factors()[i].clone();
        }
        Ok(ShortResolution {
            a: FGModule::free(ring.clone(), torsion.len()),
            b: FGModule::free(ring, k),
            incl,
            proj: Matrix::identity(k),
        })
    }

    fn validate(&self, m: &FGModule) -> Result<()> {
        if !self.a.is_free() || !self.b.is_free() {
            return Err(Error::NoResolution("A and B must be free".into()));
        }
        let i = ModuleMap::new(self.a.clone(), self.b.clone(), self.incl.clone())?;
        let p = ModuleMap::new(self.b.clone(), m.clone(), self.proj.clone())?;
        if !p.compose(&i).is_zero() {
            return Err(Error::InvariantViolation("B → M does not vanish on A".into()));
        }
        Ok(())
    }
}

/// `u : H = Cone(A ⊗ E → B ⊗ E) → T^{⊗n} ⊗ E` with its checks.
#[derive(Clone, Debug)]
pub struct WeakFlatResolution {
    pub target: Complex,
    pub h: Complex,
    pub u: ChainMap,
    pub certificate: CellCertificate,
    pub u_quasi_iso: bool,
    /// Indices of probes `F'` for which `H ⊗ F' → F ⊗ F'` is not a
    /// quasi-isomorphism.
    pub probe_failures: Vec<usize>,
}

impl WeakFlatResolution {
    pub fn is_weakly_flat(&self) -> bool {
        self.u_quasi_iso && self.probe_failures.is_empty()
    }
}

fn degree_zero_module(t: &Complex) -> Result<FGModule> {
    match t.bounds() {
        None => Ok(FGModule::zero(t.ring().clone())),
        Some((0, 0)) => Ok(t.module(0).clone()),
        Some(_) => Err(Error::InvariantViolation("T must be concentrated in degree 0".into())),
    }
}

pub fn weak_flat_resolution(
    t: &Complex,
    n: usize,
    e: &FGModule,
    resolution: Option<ShortResolution>,
    probes: &[Complex],
) -> Result<WeakFlatResolution> {
    degree_zero_module(t)?;
    let tn = tensor_power(t, n)?;
    let m = degree_zero_module(&tn)?;
    let res = match resolution {
        Some(r) => {
            r.validate(&m)?;
            r
        }
        None => ShortResolution::build(&m)?,
    };
    let target = tensor(&tn, &sphere(e, 0))?;
    let ae = TensorSpace::new(&res.a, e)?;
    let be = TensorSpace::new(&res.b, e)?;
    let me = TensorSpace::new(&m, e)?;
    let ie = Matrix::identity(e.rank());
    let f = ChainMap::new(
        sphere(ae.module(), 0),
        sphere(be.module(), 0),
        [(0, ae.map_matrix(&res.incl, &ie, &be))].into(),
    )?;
    let h = cone(&f).complex;
    let u = ChainMap::new(h.clone(), target.clone(), [(0, be.map_matrix(&res.proj, &ie, &me))].into())?;
    let certificate = CellCertificate::from_generator_blocks(&h, std::slice::from_ref(e))?;
    let u_quasi_iso = u.is_quasi_isomorphism();
    let mut probe_failures = Vec::new();
    for (k, fp) in probes.iter().enumerate() {
        if !tensor_chain_maps(&u, &ChainMap::identity(fp))?.is_quasi_isomorphism() {
            probe_failures.push(k);
        }
    }
    Ok(WeakFlatResolution {
        target,
        h,
        u,
        certificate,
        u_quasi_iso,
        probe_failures,
    })
}

/// `(𝒢[T], ℋ[T])` up to a power bound, with the checks of weak flatness
/// that failed. Failures are reported, not raised.
#[derive(Clone, Debug)]
pub struct Extension {
    pub descent: DescentData,
    pub resolutions: Vec<WeakFlatResolution>,
    pub power_bound: usize,
    pub flatness_failures: Vec<String>,
}

pub fn extend_descent(dd: &DescentData, t: &Complex, power_bound: usize) -> Result<Extension> {
    dd.require_generators()?;
    degree_zero_module(t)?;
    let mut sources: Vec<(usize, FGModule, FGModule)> = Vec::new();
    let mut generators: Vec<FGModule> = Vec::new();
    for n in 0..=power_bound {
        let m = degree_zero_module(&tensor_power(t, n)?)?;
        for e in dd.generators() {
            let f = TensorSpace::new(&m, e)?.module().clone();
            if f.is_zero() || generators.contains(&f) {
                continue;
            }
            generators.push(f.clone());
            sources.push((n, e.clone(), f));
        }
    }
    let probes: Vec<Complex> = generators.iter().map(|g| sphere(g, 0)).collect();
    let mut flatness_failures = Vec::new();
    for (k, h) in dd.acyclics().iter().enumerate() {
        for n in 0..=power_bound {
            if !tensor(&h.complex, &tensor_power(t, n)?)?.is_acyclic() {
                flatness_failures.push(format!("H[{k}] ⊗ T^{n} is not acyclic"));
            }
        }
    }
    let mut acyclics = dd.acyclics().to_vec();
    let mut resolutions = Vec::new();
    for (n, e, f) in &sources {
        let r = weak_flat_resolution(t, *n, e, None, &probes)?;
        if !r.u_quasi_iso {
            flatness_failures.push(format!("resolution of {f} is not a quasi-isomorphism"));
        }
        for k in &r.probe_failures {
            flatness_failures.push(format!("H ⊗ {} → {f} ⊗ {} is not a quasi-isomorphism", generators[*k], generators[*k]));
        }
        let c = cone(&r.u).complex;
        acyclics.push(Certified {
            certificate: CellCertificate::from_generator_blocks(&c, &generators)?,
            complex: c,
        });
        resolutions.push(r);
    }
    Ok(Extension {
        descent: DescentData::new(dd.ring().clone(), generators, acyclics)?,
        resolutions,
        power_bound,
        flatness_failures,
    })
}
