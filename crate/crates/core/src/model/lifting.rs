use num_bigint::{BigInt, Sign};

use crate::coeff::{FGModule, HomSpace, Matrix, ModuleMap};
use crate::complex::{block_matrix, chain_kernel, disk_inclusion, ChainMap, Components, HomComplex};
use crate::error::{Error, Result};

/// A commutative square `p ∘ top = bottom ∘ i`:
///
/// ```text
///   A --top--> C
///   |i         |p
///   B --bot--> D
/// ```
#[derive(Clone, Debug)]
pub struct LiftSquare {
    pub i: ChainMap,
    pub p: ChainMap,
    pub top: ChainMap,
    pub bottom: ChainMap,
}

impl LiftSquare {
    pub fn new(i: ChainMap, p: ChainMap, top: ChainMap, bottom: ChainMap) -> Result<Self> {
        if top.source() != i.source()
            || top.target() != p.source()
            || bottom.source() != i.target()
            || bottom.target() != p.target()
        {
            return Err(Error::NotAChainMap("square maps do not fit together".into()));
        }
        if p.compose(&top) != bottom.compose(&i) {
            return Err(Error::InvariantViolation("square does not commute".into()));
        }
        Ok(LiftSquare { i, p, top, bottom })
    }
}

fn compose_right(f: &Components, g: &ChainMap) -> Components {
    f.iter().map(|(q, m)| (*q, m * &g.matrix(*q))).collect()
}

fn compose_left(g: &ChainMap, f: &Components) -> Components {
    f.iter().map(|(q, m)| (*q, &g.matrix(*q) * m)).collect()
}

fn family(f: &ChainMap) -> Components {
    f.source().degrees().map(|q| (q, f.matrix(q))).collect()
}

/// A diagonal `h : B → C` with `h∘i = top` and `p∘h = bottom`, found by
/// solving one linear system over the degree-0 part of `Hom(B, C)`.
pub fn solve_lifting(sq: &LiftSquare) -> Result<Option<ChainMap>> {
    let (a, b) = (sq.i.source(), sq.i.target());
    let (c, d) = (sq.p.source(), sq.p.target());
    let bc = HomComplex::new(b, c)?;
    let ac = HomComplex::new(a, c)?;
    let bd = HomComplex::new(b, d)?;
    let chain = bc.induced_matrix(0, &bc, 1, |h| bc.apply_d(0, h));
    let restrict = bc.induced_matrix(0, &ac, 0, |h| compose_right(h, &sq.i));
    let push = bc.induced_matrix(0, &bd, 0, |h| compose_left(&sq.p, h));
    let target_module = bc
        .complex()
        .module(1)
        .direct_sum(ac.complex().module(0))
        .direct_sum(bd.complex().module(0));
    let psi = ModuleMap::new_unchecked(
        bc.complex().module(0).clone(),
        target_module,
        chain.vstack(&restrict).vstack(&push),
    );
    let mut rhs = vec![BigInt::from(0); bc.dim(1)];
    rhs.extend(ac.element(0, &family(&sq.top)));
    rhs.extend(bd.element(0, &family(&sq.bottom)));
    match psi.solve(&rhs) {
        None => Ok(None),
        Some(x) => ChainMap::new(b.clone(), c.clone(), bc.components(0, &x)).map(Some),
    }
}

/// Whether `p` has the right lifting property against `i` for every
/// commutative square, decided by comparing the module of squares with the
/// image of the diagonals.
pub fn has_rlp(i: &ChainMap, p: &ChainMap) -> Result<bool> {
    let (a, b) = (i.source(), i.target());
    let (c, d) = (p.source(), p.target());
    let ac = HomComplex::new(a, c)?;
    let bd = HomComplex::new(b, d)?;
    let ad = HomComplex::new(a, d)?;
    let bc = HomComplex::new(b, c)?;
    let (ac0, ac1) = (ac.dim(0), ac.dim(1));
    let (bd0, bd1) = (bd.dim(0), bd.dim(1));
    let ad0 = ad.dim(0);

    // Squares: (top, bottom) with both chain maps and p∘top = bottom∘i.
    let d_top = ac.induced_matrix(0, &ac, 1, |t| ac.apply_d(0, t));
    let d_bot = bd.induced_matrix(0, &bd, 1, |t| bd.apply_d(0, t));
    let p_top = ac.induced_matrix(0, &ad, 0, |t| compose_left(p, t));
    let bot_i = bd.induced_matrix(0, &ad, 0, |t| compose_right(t, i)).scale(&BigInt::from(-1));
    let phi_matrix = block_matrix(
        &[ac1, bd1, ad0],
        &[ac0, bd0],
        &[(0, 0, &d_top), (1, 1, &d_bot), (2, 0, &p_top), (2, 1, &bot_i)],
    );
    let u = ac.complex().module(0).direct_sum(bd.complex().module(0));
    let phi_target = ac
        .complex()
        .module(1)
        .direct_sum(bd.complex().module(1))
        .direct_sum(ad.complex().module(0));
    let squares = ModuleMap::new_unchecked(u.clone(), phi_target, phi_matrix).kernel();

    // Diagonals: chain maps h : B → C, sent to (h∘i, p∘h).
    let chain_maps = ModuleMap::new_unchecked(
        bc.complex().module(0).clone(),
        bc.complex().module(1).clone(),
        bc.induced_matrix(0, &bc, 1, |h| bc.apply_d(0, h)),
    )
    .kernel();
    let restrict = bc.induced_matrix(0, &ac, 0, |h| compose_right(h, i));
    let push = bc.induced_matrix(0, &bd, 0, |h| compose_left(p, h));
    let lifts = ModuleMap::new_unchecked(bc.complex().module(0).clone(), u, restrict.vstack(&push))
        .compose(&chain_maps.inclusion);
    let inc = squares.inclusion.matrix();
    Ok((0..squares.module.rank()).all(|k| lifts.solve(&inc.column(k)).is_some()))
}

/// Unliftable squares for the instance `S^{n+1}E → D^nE` against `p : P → C`.
///
/// Returns, for each generator of `Squares / im(Hom(E, P^n))`, a square
/// `(a : E → P^{n+1}, b : E → C^n)` representing it. Empty means `p` has
/// the right lifting property against this instance.
pub fn i_square_failures(p: &ChainMap, n: i64, e: &FGModule) -> Result<Vec<(Matrix, Matrix)>> {
    let (pp, c) = (p.source(), p.target());
    let h = |m: &FGModule| HomSpace::new(e, m);
    let (h_p0, h_p1, h_p2) = (h(pp.module(n))?, h(pp.module(n + 1))?, h(pp.module(n + 2))?);
    let (h_c0, h_c1) = (h(c.module(n))?, h(c.module(n + 1))?);

    let d_p1 = h_p1.postcompose(&pp.diff(n + 1), &h_p2);
    let p_p1 = h_p1.postcompose(&p.component(n + 1), &h_c1);
    let d_c0 = h_c0.postcompose(&c.diff(n), &h_c1).neg();
    let u = h_p1.module().direct_sum(h_c0.module());
    let phi = ModuleMap::new_unchecked(
        u.clone(),
        h_p2.module().direct_sum(h_c1.module()),
        block_matrix(
            &[h_p2.dim(), h_c1.dim()],
            &[h_p1.dim(), h_c0.dim()],
            &[(0, 0, d_p1.matrix()), (1, 0, p_p1.matrix()), (1, 1, d_c0.matrix())],
        ),
    );
    let squares = phi.kernel();
    if squares.module.is_zero() {
        return Ok(Vec::new());
    }
    let d_p0 = h_p0.postcompose(&pp.diff(n), &h_p1);
    let p_p0 = h_p0.postcompose(&p.component(n), &h_c0);
    let lifts_u = d_p0.vstack(&p_p0);
    let columns: Vec<Vec<BigInt>> = (0..h_p0.dim())
        .map(|k| {
            squares
                .inclusion
                .solve(&lifts_u.matrix().column(k))
                .expect("lifts are squares")
        })
        .collect();
    let lifts = ModuleMap::new_unchecked(
        h_p0.module().clone(),
        squares.module.clone(),
        Matrix::from_columns(squares.module.rank(), &columns),
    );
    let coker = lifts.cokernel();
    let mut out = Vec::new();
    for k in 0..coker.module.rank() {
        let mut s = squares.inclusion.apply(&coker.section.column(k));
        // sign normalization: first nonzero coordinate positive
        if s.iter().find(|v| v.sign() != Sign::NoSign).is_some_and(|v| v.sign() == Sign::Minus) {
            s = squares.inclusion.target().reduced(&s.iter().map(|v| -v).collect::<Vec<_>>());
        }
        let (sa, sb) = s.split_at(h_p1.dim());
        out.push((h_p1.to_matrix(sa), h_c0.to_matrix(sb)));
    }
    Ok(out)
}

/// The lift of a square against `S^{n+1}E → D^nE` assembled as `ξ = x' + x''`:
/// `x'` solves `p x' = y`, and `x''` lifts `x - d x'` through `ker p`.
///
/// Returns `None` when either step has no solution.
pub fn lift_constructive(sq: &LiftSquare) -> Result<Option<ChainMap>> {
    let b = sq.i.target();
    let Some((n, top_deg)) = b.bounds() else {
        return Err(Error::InvariantViolation("expected a disk inclusion".into()));
    };
    let e = b.module(n).clone();
    if top_deg != n + 1 || sq.i != disk_inclusion(&e, n) {
        return Err(Error::InvariantViolation("expected a disk inclusion S^(n+1)E → D^nE".into()));
    }
    let (c, p) = (sq.p.source(), &sq.p);
    let x = sq.top.matrix(n + 1);
    let y = sq.bottom.matrix(n);

    let h_c0 = HomSpace::new(&e, c.module(n))?;
    let h_d0 = HomSpace::new(&e, p.target().module(n))?;
    let Some(x1) = h_c0.postcompose(&p.component(n), &h_d0).solve(&h_d0.coords(&y)) else {
        return Ok(None);
    };
    let x1 = h_c0.to_matrix(&x1);
    let rest = &x - &(&c.d(n) * &x1);

    let k = chain_kernel(p);
    let h_k0 = HomSpace::new(&e, k.complex.module(n))?;
    let h_k1 = HomSpace::new(&e, k.complex.module(n + 1))?;
    let h_c1 = HomSpace::new(&e, c.module(n + 1))?;
    let Some(w) = h_k1
        .postcompose(&k.inclusion.component(n + 1), &h_c1)
        .solve(&h_c1.coords(&rest))
    else {
        return Ok(None);
    };
    let Some(x2) = h_k0.postcompose(&k.complex.diff(n), &h_k1).solve(&w) else {
        return Ok(None);
    };
    let x2 = &k.inclusion.matrix(n) * &h_k0.to_matrix(&x2);
    let xi = &x1 + &x2;
    ChainMap::new(b.clone(), c.clone(), [(n, xi), (n + 1, x)].into()).map(Some)
}
