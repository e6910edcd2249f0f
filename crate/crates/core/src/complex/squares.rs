use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{sum_inclusions, sum_projections, ChainMap, Complex};
use crate::coeff::{Matrix, ModuleMap};
use crate::error::{Error, Result};

/// Degreewise kernel of a chain map with its inclusion.
#[derive(Clone, Debug)]
pub struct ChainKernel {
    pub complex: Complex,
    pub inclusion: ChainMap,
}

/// Degreewise cokernel with its projection and, per degree, lifts of the new
/// generators.
#[derive(Clone, Debug)]
pub struct ChainCokernel {
    pub complex: Complex,
    pub projection: ChainMap,
    pub sections: BTreeMap<i64, Matrix>,
}

pub fn chain_kernel(f: &ChainMap) -> ChainKernel {
    let x = f.source();
    let kernels: BTreeMap<i64, ModuleMap> = x.degrees().map(|n| (n, f.component(n).kernel().inclusion)).collect();
    let incl = |n: i64| kernels.get(&n).cloned();
    let complex = Complex::from_fn(
        x.ring(),
        x.bounds(),
        |n| incl(n).unwrap().source().clone(),
        |n| {
            let (i0, i1) = (incl(n).unwrap(), incl(n + 1).unwrap());
            let dx = x.d(n);
            let columns: Vec<Vec<BigInt>> = (0..i0.source().rank())
                .map(|k| {
                    let y = dx.mul_vec(&i0.matrix().column(k));
                    i1.solve(&y).expect("differential preserves the kernel")
                })
                .collect();
            Matrix::from_columns(i1.source().rank(), &columns)
        },
    );
    let inclusion = ChainMap::from_fn(&complex, x, |n| match incl(n) {
        Some(i) => i.matrix().clone(),
        None => Matrix::zeros(x.rank(n), 0),
    });
    ChainKernel { complex, inclusion }
}

pub fn chain_cokernel(f: &ChainMap) -> ChainCokernel {
    let y = f.target();
    let cokernels: BTreeMap<i64, _> = y.degrees().map(|n| (n, f.component(n).cokernel())).collect();
    let complex = Complex::from_fn(
        y.ring(),
        y.bounds(),
        |n| cokernels[&n].module.clone(),
        |n| {
            let (c0, c1) = (&cokernels[&n], &cokernels[&(n + 1)]);
            c1.projection.matrix() * &(&y.d(n) * &c0.section)
        },
    );
    let projection = ChainMap::from_fn(y, &complex, |n| match cokernels.get(&n) {
        Some(c) => c.projection.matrix().clone(),
        None => Matrix::zeros(0, y.rank(n)),
    });
    let sections = cokernels.into_iter().map(|(n, c)| (n, c.section)).collect();
    ChainCokernel {
        complex,
        projection,
        sections,
    }
}

/// Pushout of `B ←i A →f C`, presented as the cokernel of `(i, -f)`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub complex: Complex,
    /// `j : C → D`
    pub j: ChainMap,
    /// `g : B → D`
    pub g: ChainMap,
    /// `(i; -f) : A → B ⊕ C`, the map whose cokernel is `D`.
    pub relation: ChainMap,
    /// `B ⊕ C → D`
    pub projection: ChainMap,
}

pub fn pushout(i: &ChainMap, f: &ChainMap) -> Result<Pushout> {
    if i.source() != f.source() {
        return Err(Error::NotAChainMap("pushout legs must share their source".into()));
    }
    let relation = i.vstack(&f.neg());
    let coker = chain_cokernel(&relation);
    let (ib, ic) = sum_inclusions(i.target(), f.target());
    Ok(Pushout {
        g: coker.projection.compose(&ib),
        j: coker.projection.compose(&ic),
        complex: coker.complex,
        relation,
        projection: coker.projection,
    })
}

/// Pullback of `B →f D ←g C`, presented as the kernel of `(f, -g)`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub complex: Complex,
    pub to_b: ChainMap,
    pub to_c: ChainMap,
    pub inclusion: ChainMap,
}

pub fn pullback(f: &ChainMap, g: &ChainMap) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::NotAChainMap("pullback legs must share their target".into()));
    }
    let ker = chain_kernel(&f.hstack(&g.neg()));
    let (pb, pc) = sum_projections(f.source(), g.source());
    Ok(Pullback {
        to_b: pb.compose(&ker.inclusion),
        to_c: pc.compose(&ker.inclusion),
        complex: ker.complex,
        inclusion: ker.inclusion,
    })
}
