//! Braided skeletal types, abelian 3-cocycles and quadratic maps.
//!
//! Throughout, `M` is a finite abelian group viewed as a group of objects
//! (element `i` is `M.element(i)`), `N` a trivial `M`-module, and an abelian
//! 3-cocycle is a pair `(h, η)` of normalized cochains satisfying the
//! 3-cocycle identity and the two braiding identities
//!
//! ```text
//! h(x,y,z) − h(y,x,z) + h(y,z,x) + η(x,y+z) − η(x,y) − η(x,z) = 0
//! h(x,y,z) − h(x,z,y) + h(z,x,y) − η(x+y,z) + η(y,z) + η(x,z) = 0
//! ```

use std::collections::BTreeSet;

use serde::Serialize;

use crate::abelian::{AbelianHom, Elem, FiniteAbelianGroup};
use crate::cohomology::{coboundary_matrix, tuple_index, tuples, Cochain, PiModule};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Subquotient};
use crate::skeletal::{make_gr_type, GrType, SkeletalMorphism};
use crate::Caps;

/// A map `M → N`, indexed by the element index in `M`.
pub type PointMap = Vec<Elem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianCocycle {
    pub h: Cochain,
    pub eta: Cochain,
}

/// A skeletal type with a braiding `c_{x,y} = (xy, η(x,y))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedGrType {
    base: GrType,
    eta: Cochain,
    symmetric: bool,
}

impl BraidedGrType {
    pub fn base(&self) -> &GrType {
        &self.base
    }

    pub fn eta(&self) -> &Cochain {
        &self.eta
    }

    /// Whether `c_{y,x} ∘ c_{x,y} = id` for all `x, y`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn cocycle(&self) -> AbelianCocycle {
        AbelianCocycle { h: self.base.h().clone(), eta: self.eta.clone() }
    }
}

/// The `M`-module `N` with trivial action used for abelian cohomology.
pub fn abelian_module(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup) -> PiModule {
    PiModule::trivial(m.to_finite_group(), n.clone())
}

fn require_abelian_trivial(module: &PiModule) -> Result<()> {
    if !module.pi().is_abelian() {
        return Err(Error::InvalidModule("braided types need an abelian group of objects".into()));
    }
    if !module.is_trivial_action() {
        return Err(Error::InvalidModule("braided types need a trivial action".into()));
    }
    Ok(())
}

/// First failure among the three identities, as `(identity number, arguments)`.
pub fn abelian_cocycle_witness(module: &PiModule, c: &AbelianCocycle) -> Result<Option<(usize, Vec<usize>)>> {
    require_abelian_trivial(module)?;
    if let Some(w) = crate::cohomology::cocycle_witness(module, &c.h)? {
        return Ok(Some((1, w)));
    }
    let pi = module.pi();
    let n = module.coeff();
    let h = |x: usize, y: usize, z: usize| c.h.get(n, &[x, y, z]);
    let eta = |x: usize, y: usize| c.eta.get(n, &[x, y]);
    let combine = |plus: &[Elem], minus: &[Elem]| {
        let p = plus.iter().fold(n.zero(), |acc, v| n.add(&acc, v));
        minus.iter().fold(p, |acc, v| n.sub(&acc, v))
    };
    for t in tuples(pi.order(), 3) {
        let (x, y, z) = (t[0], t[1], t[2]);
        let second = combine(&[h(x, y, z), h(y, z, x), eta(x, pi.mul(y, z))], &[h(y, x, z), eta(x, y), eta(x, z)]);
        if !n.is_zero(&second) {
            return Ok(Some((2, t)));
        }
        let third = combine(&[h(x, y, z), h(z, x, y), eta(y, z), eta(x, z)], &[h(x, z, y), eta(pi.mul(x, y), z)]);
        if !n.is_zero(&third) {
            return Ok(Some((3, t)));
        }
    }
    Ok(None)
}

pub fn is_abelian_cocycle(module: &PiModule, c: &AbelianCocycle) -> bool {
    matches!(abelian_cocycle_witness(module, c), Ok(None))
}

/// `∂_ab(g) = (∂g, (x,y) ↦ g(y,x) − g(x,y))`.
pub fn d_ab(module: &PiModule, g: &Cochain) -> Result<AbelianCocycle> {
    require_abelian_trivial(module)?;
    if g.degree() != 2 {
        return Err(Error::InvalidMap("the abelian coboundary takes a 2-cochain".into()));
    }
    g.validate(module)?;
    let n = module.coeff();
    let h = crate::cohomology::coboundary(module, g)?;
    let eta = Cochain::from_fn(module, 2, |a| n.sub(&g.get(n, &[a[1], a[0]]), &g.get(n, &[a[0], a[1]])));
    Ok(AbelianCocycle { h, eta })
}

/// `t(x) = η(x, x)`.
pub fn trace(module: &PiModule, c: &AbelianCocycle) -> PointMap {
    (0..module.pi().order()).map(|x| c.eta.get(module.coeff(), &[x, x])).collect()
}

/// `ν(−x) = ν(x)` and `(x, y) ↦ ν(x) + ν(y) − ν(x+y)` bilinear.
pub fn is_quadratic(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup, nu: &[Elem]) -> bool {
    is_even(m, nu) && has_bilinear_cross_effect(m, n, nu)
}

fn is_even(m: &FiniteAbelianGroup, nu: &[Elem]) -> bool {
    m.elements().iter().all(|x| nu[m.index_of(&m.neg(x))] == nu[m.index_of(x)])
}

fn has_bilinear_cross_effect(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup, nu: &[Elem]) -> bool {
    let elems = m.elements();
    let at = |x: &[i64]| &nu[m.index_of(x)];
    let b = |x: &[i64], y: &[i64]| n.sub(&n.add(at(x), at(y)), at(&m.add(x, y)));
    elems.iter().all(|x| {
        elems.iter().all(|y| {
            elems.iter().all(|z| {
                // symmetric, so additivity in the first slot suffices
                b(&m.add(x, y), z) == n.add(&b(x, z), &b(y, z))
            })
        })
    })
}

/// Upper bound on the number of maps `M → N` enumerated by brute force.
pub const MAP_ENUMERATION_CAP: usize = 1 << 20;

fn all_maps(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup, caps: &Caps) -> Result<Vec<PointMap>> {
    if m.order() as usize > caps.group_order {
        return Err(Error::CapExceeded { what: "group order", size: m.order() as usize, cap: caps.group_order });
    }
    let size = (n.order() as f64).powi(m.order() as i32 - 1);
    if size > MAP_ENUMERATION_CAP as f64 {
        return Err(Error::CapExceeded { what: "maps M → N", size: size as usize, cap: MAP_ENUMERATION_CAP });
    }
    let n_elems = n.elements();
    let radix = vec![n_elems.len() as i64; m.order() as usize - 1];
    Ok(crate::linalg::mixed_radix(&radix)
        .into_iter()
        .map(|choice| std::iter::once(n.zero()).chain(choice.iter().map(|&i| n_elems[i as usize].clone())).collect())
        .collect())
}

/// All quadratic maps `M → N`, by brute force over maps with `ν(0) = 0`.
pub fn quadratic_maps(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup, caps: &Caps) -> Result<Vec<PointMap>> {
    Ok(all_maps(m, n, caps)?.into_iter().filter(|nu| is_quadratic(m, n, nu)).collect())
}

/// `H³_ab(M, N)` as `Z³_ab / ∂_ab(C²)` on the coordinates `(h, η)`.
#[derive(Clone, Debug)]
pub struct AbelianCohomology {
    module: PiModule,
    quotient: Subquotient,
}

fn split_dense(module: &PiModule, v: &[i64]) -> AbelianCocycle {
    let c3 = module.tuple_count(3) * module.coeff().rank();
    AbelianCocycle { h: Cochain::from_dense(module, 3, &v[..c3]), eta: Cochain::from_dense(module, 2, &v[c3..]) }
}

fn join_dense(module: &PiModule, c: &AbelianCocycle) -> Vec<i64> {
    let mut v = c.h.to_dense(module);
    v.extend(c.eta.to_dense(module));
    v
}

impl AbelianCohomology {
    pub fn module(&self) -> &PiModule {
        &self.module
    }

    pub fn invariant_factors(&self) -> &[i64] {
        self.quotient.factors()
    }

    pub fn order(&self) -> i64 {
        self.quotient.order()
    }

    pub fn representatives(&self) -> Vec<AbelianCocycle> {
        self.quotient.generators().iter().map(|g| split_dense(&self.module, &self.reduce(g))).collect()
    }

    fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let n = self.module.coeff();
        v.chunks(n.rank().max(1)).flat_map(|c| if n.rank() == 0 { vec![] } else { n.reduce(c) }).collect()
    }

    pub fn project(&self, c: &AbelianCocycle) -> Result<Vec<i64>> {
        self.quotient
            .project(&join_dense(&self.module, c))
            .ok_or_else(|| match abelian_cocycle_witness(&self.module, c) {
                Ok(Some((identity, witness))) => Error::NotAbelianCocycle { identity, witness },
                _ => Error::NotAbelianCocycle { identity: 0, witness: vec![] },
            })
    }

    pub fn class_cocycle(&self, coords: &[i64]) -> AbelianCocycle {
        split_dense(&self.module, &self.reduce(&self.quotient.lift(coords)))
    }

    pub fn classes(&self) -> Vec<(Vec<i64>, AbelianCocycle)> {
        self.quotient.all_coords().into_iter().map(|c| (c.clone(), self.class_cocycle(&c))).collect()
    }
}

fn abelian_cocycle_matrix(module: &PiModule) -> Result<AbelianHom> {
    let pi = module.pi();
    let n = pi.order();
    let k = module.coeff().rank();
    let c3 = module.tuple_count(3) * k;
    let c2 = module.tuple_count(2) * k;
    let d3 = coboundary_matrix(module, 3)?;
    let t3 = module.tuple_count(3);
    let rows = d3.matrix().rows() + 2 * t3 * k;
    let mut mat = IntMatrix::zeros(rows, c3 + c2);
    for r in 0..d3.matrix().rows() {
        for c in 0..c3 {
            mat[(r, c)] = d3.matrix()[(r, c)];
        }
    }
    let h_col = |a: usize, b: usize, c: usize| (a != 0 && b != 0 && c != 0).then(|| tuple_index(n, &[a, b, c]) * k);
    let eta_col = |a: usize, b: usize| (a != 0 && b != 0).then(|| c3 + tuple_index(n, &[a, b]) * k);
    let base2 = d3.matrix().rows();
    let base3 = base2 + t3 * k;
    for t in tuples(n, 3) {
        let (x, y, z) = (t[0], t[1], t[2]);
        let ti = tuple_index(n, &t);
        let second = [
            (h_col(x, y, z), 1),
            (h_col(y, x, z), -1),
            (h_col(y, z, x), 1),
            (eta_col(x, pi.mul(y, z)), 1),
            (eta_col(x, y), -1),
            (eta_col(x, z), -1),
        ];
        let third = [
            (h_col(x, y, z), 1),
            (h_col(x, z, y), -1),
            (h_col(z, x, y), 1),
            (eta_col(pi.mul(x, y), z), -1),
            (eta_col(y, z), 1),
            (eta_col(x, z), 1),
        ];
        for (base, terms) in [(base2, second), (base3, third)] {
            for (col, sign) in terms {
                if let Some(col) = col {
                    for i in 0..k {
                        mat[(base + ti * k + i, col + i)] += sign;
                    }
                }
            }
        }
    }
    let source = joint_space(module);
    let tfactors: Vec<i64> = (0..rows / k.max(1)).flat_map(|_| module.coeff().factors().iter().copied()).collect();
    Ok(AbelianHom::from_matrix_unchecked(source, FiniteAbelianGroup::from_factors_unchecked(tfactors), mat))
}

fn joint_space(module: &PiModule) -> FiniteAbelianGroup {
    let mut factors = module.cochain_space(3).factors().to_vec();
    factors.extend_from_slice(module.cochain_space(2).factors());
    FiniteAbelianGroup::from_factors_unchecked(factors)
}

fn d_ab_matrix(module: &PiModule) -> Result<AbelianHom> {
    let n = module.pi().order();
    let k = module.coeff().rank();
    let c3 = module.tuple_count(3) * k;
    let c2 = module.tuple_count(2) * k;
    let d2 = coboundary_matrix(module, 2)?;
    let mut mat = IntMatrix::zeros(c3 + c2, c2);
    for r in 0..c3 {
        for c in 0..c2 {
            mat[(r, c)] = d2.matrix()[(r, c)];
        }
    }
    for t in tuples(n, 2) {
        let row = c3 + tuple_index(n, &t) * k;
        let same = tuple_index(n, &t) * k;
        let swapped = tuple_index(n, &[t[1], t[0]]) * k;
        for i in 0..k {
            mat[(row + i, same + i)] -= 1;
            mat[(row + i, swapped + i)] += 1;
        }
    }
    Ok(AbelianHom::from_matrix_unchecked(module.cochain_space(2), joint_space(module), mat))
}

fn check_size(module: &PiModule, caps: &Caps) -> Result<()> {
    let dim = module.tuple_count(4) * module.coeff().rank();
    if dim > caps.cochain_dim {
        return Err(Error::CapExceeded { what: "cochain dimension", size: dim, cap: caps.cochain_dim });
    }
    Ok(())
}

pub fn h3_ab(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup, caps: &Caps) -> Result<AbelianCohomology> {
    if m.order() as usize > caps.group_order {
        return Err(Error::CapExceeded { what: "group order", size: m.order() as usize, cap: caps.group_order });
    }
    let module = abelian_module(m, n);
    check_size(&module, caps)?;
    let upper = abelian_cocycle_matrix(&module)?.kernel();
    let lower = d_ab_matrix(&module)?.image();
    let quotient = Subquotient::new(&upper, &lower);
    Ok(AbelianCohomology { module, quotient })
}

/// `g` with `∂_ab g = b − a`, if the two abelian cocycles are cohomologous.
pub fn abelian_class_solve(module: &PiModule, a: &AbelianCocycle, b: &AbelianCocycle) -> Result<Option<Cochain>> {
    require_abelian_trivial(module)?;
    let d = d_ab_matrix(module)?;
    let space = joint_space(module);
    let diff = space.sub(&join_dense(module, b), &join_dense(module, a));
    Ok(d.preimage(&diff).map(|g| Cochain::from_dense(module, 2, &g)))
}

/// Outcome of the trace-isomorphism check for one pair `(M, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmReport {
    pub m: Vec<i64>,
    pub n: Vec<i64>,
    pub h3_ab_factors: Vec<i64>,
    pub h3_ab_order: usize,
    pub quad_order: usize,
    /// Maps with bilinear cross-effect but without the evenness condition.
    pub quad_order_without_evenness: usize,
    /// Each class (by coordinates) with the trace of its representative.
    pub matching: Vec<(Vec<i64>, PointMap)>,
    pub well_defined: bool,
    pub additive: bool,
    pub injective: bool,
    pub surjective: bool,
}

/// Verifies that `[(h, η)] ↦ t_η` is a group isomorphism `H³_ab(M, N) → Quad(M, N)`.
///
/// Both sides are enumerated independently; any failure is returned as
/// [`Error::MismatchFound`] with a description of the counterexample.
pub fn em_check(m: &FiniteAbelianGroup, n: &FiniteAbelianGroup, caps: &Caps) -> Result<EmReport> {
    let h3 = h3_ab(m, n, caps)?;
    let module = h3.module().clone();
    let maps = all_maps(m, n, caps)?;
    let bilinear: Vec<&PointMap> = maps.iter().filter(|nu| has_bilinear_cross_effect(m, n, nu)).collect();
    let quad: BTreeSet<PointMap> = bilinear.iter().filter(|nu| is_even(m, nu)).map(|nu| (*nu).clone()).collect();

    // coboundaries have zero trace: check on a basis of C²
    let c2 = module.cochain_space(2);
    for i in 0..c2.rank() {
        let g = Cochain::from_dense(&module, 2, &crate::linalg::unit(c2.rank(), i));
        let t = trace(&module, &d_ab(&module, &g)?);
        if t.iter().any(|v| !n.is_zero(v)) {
            return Err(Error::MismatchFound(format!("coboundary of basis cochain {i} has trace {t:?}")));
        }
    }

    let classes = h3.classes();
    let mut matching = Vec::with_capacity(classes.len());
    for (coords, rep) in &classes {
        if !is_abelian_cocycle(&module, rep) {
            return Err(Error::MismatchFound(format!("representative of class {coords:?} is not a cocycle")));
        }
        let t = trace(&module, rep);
        if !is_quadratic(m, n, &t) {
            return Err(Error::MismatchFound(format!("trace of class {coords:?} is not quadratic: {t:?}")));
        }
        matching.push((coords.clone(), t));
    }

    let add_maps = |a: &PointMap, b: &PointMap| -> PointMap { a.iter().zip(b).map(|(x, y)| n.add(x, y)).collect() };
    let factors = h3.invariant_factors().to_vec();
    let position = |c: &[i64]| classes.iter().position(|(k, _)| k == c).expect("class coordinates");
    for (i, (a, _)) in classes.iter().enumerate() {
        for (b, _) in classes.iter() {
            let sum: Vec<i64> = a.iter().zip(b).zip(&factors).map(|((x, y), d)| (x + y) % d).collect();
            let j = position(&sum);
            let k = position(b);
            if matching[j].1 != add_maps(&matching[i].1, &matching[k].1) {
                return Err(Error::MismatchFound(format!("trace is not additive on classes {a:?} and {b:?}")));
            }
        }
    }
    let images: BTreeSet<PointMap> = matching.iter().map(|(_, t)| t.clone()).collect();
    let injective = images.len() == matching.len();
    if !injective {
        return Err(Error::MismatchFound("two classes share a trace".into()));
    }
    let surjective = images == quad;
    if !surjective {
        let missing = quad.difference(&images).next().cloned();
        return Err(Error::MismatchFound(format!("quadratic map {missing:?} is not a trace")));
    }
    Ok(EmReport {
        m: m.factors().to_vec(),
        n: n.factors().to_vec(),
        h3_ab_factors: factors,
        h3_ab_order: classes.len(),
        quad_order: quad.len(),
        quad_order_without_evenness: bilinear.len(),
        matching,
        well_defined: true,
        additive: true,
        injective,
        surjective,
    })
}

fn braiding(base: &GrType, eta: &Cochain, x: usize, y: usize) -> SkeletalMorphism {
    SkeletalMorphism { object: base.pi().mul(x, y), value: eta.get(base.coeff(), &[x, y]) }
}

fn inverse(base: &GrType, f: &SkeletalMorphism) -> SkeletalMorphism {
    SkeletalMorphism { object: f.object, value: base.coeff().neg(&f.value) }
}

/// First triple at which one of the two hexagon diagrams fails, evaluated on
/// skeletal morphisms; numbered 1 or 2. Hexagon `i` fails exactly when identity `i + 1` does.
pub fn hexagon_witness(base: &GrType, eta: &Cochain) -> Option<(usize, [usize; 3])> {
    let n = base.pi().order();
    let pi = base.pi();
    let c = |x, y| braiding(base, eta, x, y);
    let a = |x, y, z| base.associator(x, y, z);
    let id = |x| base.identity(x);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = base.compose(
                    &base.tensor(&id(y), &c(x, z)),
                    &base.compose(&a(y, x, z), &base.tensor(&c(x, y), &id(z))),
                );
                let rhs = base.compose(&a(y, z, x), &base.compose(&c(x, pi.mul(y, z)), &a(x, y, z)));
                if lhs != rhs {
                    return Some((1, [x, y, z]));
                }
                let lhs = base.compose(
                    &base.tensor(&c(x, z), &id(y)),
                    &base.compose(&inverse(base, &a(x, z, y)), &base.tensor(&id(x), &c(y, z))),
                );
                let rhs = base.compose(
                    &inverse(base, &a(z, x, y)),
                    &base.compose(&c(pi.mul(x, y), z), &inverse(base, &a(x, y, z))),
                );
                if lhs != rhs {
                    return Some((2, [x, y, z]));
                }
            }
        }
    }
    None
}

/// Accepts `(h, η)` iff it is an abelian 3-cocycle; the hexagons are evaluated literally.
pub fn make_braided(module: PiModule, h: Cochain, eta: Cochain) -> Result<BraidedGrType> {
    require_abelian_trivial(&module)?;
    if eta.degree() != 2 {
        return Err(Error::InvalidMap("the braiding must be a 2-cochain".into()));
    }
    eta.validate(&module)?;
    let base = match make_gr_type(module.clone(), h) {
        Ok(b) => b,
        Err(Error::NotACocycle { witness }) => return Err(Error::NotAbelianCocycle { identity: 1, witness }),
        Err(e) => return Err(e),
    };
    let algebraic = abelian_cocycle_witness(&module, &AbelianCocycle { h: base.h().clone(), eta: eta.clone() })?;
    let literal = hexagon_witness(&base, &eta);
    assert_eq!(algebraic.is_some(), literal.is_some(), "hexagons and abelian cocycle identities disagree");
    if let Some((which, w)) = literal {
        return Err(Error::NotAbelianCocycle { identity: which + 1, witness: w.to_vec() });
    }
    let n = base.coeff();
    let order = base.pi().order();
    let symmetric = (0..order)
        .all(|x| (0..order).all(|y| n.is_zero(&n.add(&eta.get(n, &[x, y]), &eta.get(n, &[y, x])))));
    Ok(BraidedGrType { base, eta, symmetric })
}

/// A `g` with `∂_ab g` equal to the difference of the two braided structures,
/// which exists exactly when the types are braided equivalent by `(id, id, g)`.
pub fn braided_equivalence(a: &BraidedGrType, b: &BraidedGrType) -> Result<Option<Cochain>> {
    if a.base.module() != b.base.module() {
        return Err(Error::SourceTargetMismatch);
    }
    abelian_class_solve(a.base.module(), &a.cocycle(), &b.cocycle())
}
