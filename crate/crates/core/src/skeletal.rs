//! Concrete finite Gr-categories.
//!
//! A skeletal type `(Π, A, h)` has objects `Π`, automorphism group `A` at
//! every object and associator `h`. Strict categories are modelled by the
//! [`StrictGrCat`] trait; [`AutCategory`] is the category `Aut_G` and
//! [`PulledBack`] the pullback of a strict category along `ψ: Π′ → π₀`.
//! [`reduce_strict`] chooses sticks and recovers a skeletal type, and
//! [`strictify`] checks that a supplied realization yields a strict model of
//! a given type.

use std::collections::BTreeMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::abelian::{isomorphisms, AbelianHom, AbelianIso, Elem, FiniteAbelianGroup};
use crate::cohomology::{class_solve, cocycle_witness, pushforward, Cochain, PiModule};
use crate::error::{Error, Result};
use crate::functors::{gr_functor_witness, GrFunctorData};
use crate::group::{AutData, FiniteGroup, GroupHom};
use crate::linalg::unit;
use crate::Caps;

/// A reduced Gr-category `(Π, A, h)` with a verified associator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrType {
    module: PiModule,
    h: Cochain,
}

/// A morphism `(s, u)` of a skeletal type: an automorphism `u` of the object `s`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkeletalMorphism {
    pub object: usize,
    pub value: Elem,
}

/// Accepts `h` iff it is a normalized 3-cocycle, checking the pentagon literally.
pub fn make_gr_type(module: PiModule, h: Cochain) -> Result<GrType> {
    if h.degree() != 3 {
        return Err(Error::InvalidMap(format!("associator must have degree 3, got {}", h.degree())));
    }
    h.validate(&module)?;
    let ty = GrType { module, h };
    let pentagon = ty.pentagon_witness();
    let cocycle = cocycle_witness(&ty.module, &ty.h)?;
    assert_eq!(pentagon.is_some(), cocycle.is_some(), "pentagon and cocycle condition disagree");
    match pentagon {
        Some(w) => Err(Error::NotACocycle { witness: w.to_vec() }),
        None => Ok(ty),
    }
}

/// `Dis Π`, the type `(Π, 0, 0)`.
pub fn dis(pi: FiniteGroup) -> GrType {
    GrType { module: PiModule::trivial(pi, FiniteAbelianGroup::trivial()), h: Cochain::zero(3) }
}

impl GrType {
    pub fn module(&self) -> &PiModule {
        &self.module
    }

    pub fn pi(&self) -> &FiniteGroup {
        self.module.pi()
    }

    pub fn coeff(&self) -> &FiniteAbelianGroup {
        self.module.coeff()
    }

    pub fn h(&self) -> &Cochain {
        &self.h
    }

    pub fn identity(&self, x: usize) -> SkeletalMorphism {
        SkeletalMorphism { object: x, value: self.coeff().zero() }
    }

    /// Composition is addition in `A`.
    pub fn compose(&self, a: &SkeletalMorphism, b: &SkeletalMorphism) -> SkeletalMorphism {
        assert_eq!(a.object, b.object, "composing morphisms of different objects");
        SkeletalMorphism { object: a.object, value: self.coeff().add(&a.value, &b.value) }
    }

    /// `(s, u) ⊗ (t, v) = (st, u + s·v)`.
    pub fn tensor(&self, a: &SkeletalMorphism, b: &SkeletalMorphism) -> SkeletalMorphism {
        SkeletalMorphism {
            object: self.pi().mul(a.object, b.object),
            value: self.coeff().add(&a.value, &self.module.act(a.object, &b.value)),
        }
    }

    /// The associator `(x⊗y)⊗z → x⊗(y⊗z)`, which is `(xyz, h(x,y,z))`.
    pub fn associator(&self, x: usize, y: usize, z: usize) -> SkeletalMorphism {
        let pi = self.pi();
        SkeletalMorphism { object: pi.mul(pi.mul(x, y), z), value: self.h.get(self.coeff(), &[x, y, z]) }
    }

    /// First quadruple at which the pentagon diagram fails to commute.
    pub fn pentagon_witness(&self) -> Option<[usize; 4]> {
        let n = self.pi().order();
        let pi = self.pi();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let lhs = self.compose(
                            &self.associator(x, y, pi.mul(z, w)),
                            &self.associator(pi.mul(x, y), z, w),
                        );
                        let rhs = self.compose(
                            &self.tensor(&self.identity(x), &self.associator(y, z, w)),
                            &self.compose(
                                &self.associator(x, pi.mul(y, z), w),
                                &self.tensor(&self.associator(x, y, z), &self.identity(w)),
                            ),
                        );
                        if lhs != rhs {
                            return Some([x, y, z, w]);
                        }
                    }
                }
            }
        }
        None
    }
}

/// A morphism of a strict Gr-category.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow<L> {
    pub source: usize,
    pub target: usize,
    pub label: L,
}

/// A strict Gr-category whose objects form a finite group under the tensor.
pub trait StrictGrCat {
    type Label: Clone + Ord + fmt::Debug;

    /// The object group; index 0 is the unit object.
    fn objects(&self) -> &FiniteGroup;
    /// Labels of `Hom(a, b)`, sorted.
    fn hom(&self, a: usize, b: usize) -> Vec<Self::Label>;
    fn identity(&self, a: usize) -> Arrow<Self::Label>;
    /// `g ∘ f`, with `f` applied first.
    fn compose(&self, g: &Arrow<Self::Label>, f: &Arrow<Self::Label>) -> Arrow<Self::Label>;
    fn inverse(&self, f: &Arrow<Self::Label>) -> Arrow<Self::Label>;
    fn tensor(&self, u: &Arrow<Self::Label>, v: &Arrow<Self::Label>) -> Arrow<Self::Label>;

    fn arrows(&self, a: usize, b: usize) -> Vec<Arrow<Self::Label>> {
        self.hom(a, b).into_iter().map(|label| Arrow { source: a, target: b, label }).collect()
    }

    fn all_arrows(&self) -> Vec<Arrow<Self::Label>> {
        let n = self.objects().order();
        (0..n).flat_map(|a| (0..n).flat_map(move |b| self.arrows(a, b))).collect()
    }
}

/// How many tuples a law check visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    /// Exhaustive when at most `max` tuples exist, otherwise `max` seeded random draws.
    Bounded { max: u64, seed: u64 },
}

impl Sampling {
    fn indices(self, total: u64) -> Box<dyn Iterator<Item = u64>> {
        match self {
            Sampling::Bounded { max, seed } if total > max => {
                let mut rng = StdRng::seed_from_u64(seed);
                Box::new((0..max).map(move |_| rng.gen_range(0..total)))
            }
            _ => Box::new(0..total),
        }
    }
}

/// Checks units, inverses, tensor associativity and the interchange law.
pub fn verify_strict<C: StrictGrCat>(cat: &C, sampling: Sampling) -> Result<()> {
    let fail = |msg: String| Err(Error::NotStrict(msg));
    let objs = cat.objects();
    let n = objs.order();
    for a in 0..n {
        for b in 0..n {
            if cat.tensor(&cat.identity(a), &cat.identity(b)) != cat.identity(objs.mul(a, b)) {
                return fail(format!("id_{a} ⊗ id_{b} is not an identity"));
            }
        }
    }
    let arrows = cat.all_arrows();
    for u in &arrows {
        let id_unit = cat.identity(0);
        if cat.tensor(&id_unit, u) != *u || cat.tensor(u, &id_unit) != *u {
            return fail(format!("unit law fails on {u:?}"));
        }
        if cat.compose(u, &cat.identity(u.source)) != *u || cat.compose(&cat.identity(u.target), u) != *u {
            return fail(format!("identity law fails on {u:?}"));
        }
        let inv = cat.inverse(u);
        if cat.compose(&inv, u) != cat.identity(u.source) || cat.compose(u, &inv) != cat.identity(u.target) {
            return fail(format!("{u:?} is not invertible"));
        }
    }
    let m = arrows.len() as u64;
    for idx in sampling.indices(m * m * m) {
        let (u, v, w) = (&arrows[(idx / (m * m)) as usize], &arrows[(idx / m % m) as usize], &arrows[(idx % m) as usize]);
        if cat.tensor(&cat.tensor(u, v), w) != cat.tensor(u, &cat.tensor(v, w)) {
            return fail(format!("tensor is not associative on {u:?}, {v:?}, {w:?}"));
        }
    }
    let mut from: BTreeMap<usize, Vec<&Arrow<C::Label>>> = BTreeMap::new();
    for u in &arrows {
        from.entry(u.source).or_default().push(u);
    }
    type Pair<'a, L> = (&'a Arrow<L>, &'a Arrow<L>);
    let pairs: Vec<Pair<'_, C::Label>> =
        arrows.iter().flat_map(|f| from.get(&f.target).into_iter().flatten().map(move |g| (f, *g))).collect();
    let p = pairs.len() as u64;
    for idx in sampling.indices(p * p) {
        let (u1, u2) = pairs[(idx / p) as usize];
        let (v1, v2) = pairs[(idx % p) as usize];
        let lhs = cat.compose(&cat.tensor(u2, v2), &cat.tensor(u1, v1));
        let rhs = cat.tensor(&cat.compose(u2, u1), &cat.compose(v2, v1));
        if lhs != rhs {
            return fail(format!("interchange fails on ({u1:?}, {u2:?}), ({v1:?}, {v2:?})"));
        }
    }
    Ok(())
}

/// `Aut_G`: objects are automorphisms, `Hom(α, β) = {c : α = μ_c ∘ β}`.
#[derive(Clone, Debug)]
pub struct AutCategory {
    group: FiniteGroup,
    data: AutData,
    inner_of: Vec<usize>,
}

impl AutCategory {
    pub fn new(group: &FiniteGroup, caps: &Caps) -> Result<Self> {
        let data = AutData::compute(group, caps)?;
        let inner_of = (0..group.order()).map(|c| data.index_of(&group.conjugation(c)).expect("inner")).collect();
        Ok(AutCategory { group: group.clone(), data, inner_of })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn aut_data(&self) -> &AutData {
        &self.data
    }
}

/// Shorthand for [`AutCategory::new`].
pub fn aut_g_category(group: &FiniteGroup, caps: &Caps) -> Result<AutCategory> {
    AutCategory::new(group, caps)
}

impl StrictGrCat for AutCategory {
    type Label = usize;

    fn objects(&self) -> &FiniteGroup {
        &self.data.aut
    }

    fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&c| self.data.aut.mul(self.inner_of[c], b) == a).collect()
    }

    fn identity(&self, a: usize) -> Arrow<usize> {
        Arrow { source: a, target: a, label: 0 }
    }

    fn compose(&self, g: &Arrow<usize>, f: &Arrow<usize>) -> Arrow<usize> {
        assert_eq!(f.target, g.source, "arrows are not composable");
        Arrow { source: f.source, target: g.target, label: self.group.mul(f.label, g.label) }
    }

    fn inverse(&self, f: &Arrow<usize>) -> Arrow<usize> {
        Arrow { source: f.target, target: f.source, label: self.group.inv(f.label) }
    }

    fn tensor(&self, u: &Arrow<usize>, v: &Arrow<usize>) -> Arrow<usize> {
        let aut = &self.data.aut;
        Arrow {
            source: aut.mul(u.source, v.source),
            target: aut.mul(u.target, v.target),
            label: self.group.mul(u.label, self.data.maps[u.target][v.label]),
        }
    }
}

struct Components<L> {
    class_of: Vec<usize>,
    sticks: Vec<usize>,
    comparison: Vec<L>,
}

/// Isomorphism classes ordered by smallest member, which is also the stick.
fn components<C: StrictGrCat>(cat: &C) -> Components<C::Label> {
    let n = cat.objects().order();
    let mut class_of = Vec::with_capacity(n);
    let mut sticks: Vec<usize> = Vec::new();
    let mut comparison = Vec::with_capacity(n);
    for x in 0..n {
        let found = sticks.iter().enumerate().find_map(|(s, &stick)| cat.hom(x, stick).into_iter().next().map(|l| (s, l)));
        match found {
            Some((s, label)) => {
                class_of.push(s);
                comparison.push(label);
            }
            None => {
                class_of.push(sticks.len());
                sticks.push(x);
                comparison.push(cat.identity(x).label);
            }
        }
    }
    Components { class_of, sticks, comparison }
}

fn class_group(objects: &FiniteGroup, comps: &Components<impl Clone>) -> Result<FiniteGroup> {
    let k = comps.sticks.len();
    let rows = (0..k)
        .map(|r| (0..k).map(|s| comps.class_of[objects.mul(comps.sticks[r], comps.sticks[s])]).collect())
        .collect();
    Ok(FiniteGroup::from_table(rows)?)
}

/// The skeletal data `(π₀, π₁, h)` of a strict category with chosen sticks.
///
/// The associator is evaluated on demand: `π₀` can be large (`Aut(Z2³)`
/// has 168 elements) while callers usually need `h` only along some `ψ`.
pub struct ReductionResult<'a, C: StrictGrCat> {
    cat: &'a C,
    pi0: FiniteGroup,
    comps: Components<C::Label>,
    end_unit: Vec<C::Label>,
    pi1: AbelianIso,
    gamma_inv: Vec<BTreeMap<C::Label, usize>>,
    module: PiModule,
}

impl<C: StrictGrCat> fmt::Debug for ReductionResult<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReductionResult")
            .field("pi0_order", &self.pi0.order())
            .field("pi1", self.pi1.group())
            .field("sticks", &self.comps.sticks)
            .finish()
    }
}

/// Chooses sticks (smallest object per class, the unit for the unit class) and
/// comparison arrows (smallest label), and computes `π₀`, `π₁` and the action.
pub fn reduce_strict<C: StrictGrCat>(cat: &C) -> Result<ReductionResult<'_, C>> {
    let objects = cat.objects();
    let comps = components(cat);
    let pi0 = class_group(objects, &comps)?;

    let id = cat.identity(0).label;
    let mut end_unit = vec![id.clone()];
    end_unit.extend(cat.hom(0, 0).into_iter().filter(|l| *l != id));
    let end_index: BTreeMap<C::Label, usize> = end_unit.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let k = end_unit.len();
    let arrow = |i: usize| Arrow { source: 0, target: 0, label: end_unit[i].clone() };
    let rows = (0..k).map(|i| (0..k).map(|j| end_index[&cat.compose(&arrow(j), &arrow(i)).label]).collect()).collect();
    let end_group = FiniteGroup::from_table(rows)?;
    if !end_group.is_abelian() {
        return Err(Error::NotStrict("End(I) is not commutative".into()));
    }
    let pi1 = AbelianIso::new(&end_group, &(0..k).collect::<Vec<_>>());

    let mut gamma_inv = Vec::with_capacity(comps.sticks.len());
    for &x in &comps.sticks {
        let map: BTreeMap<C::Label, usize> =
            (0..k).map(|i| (cat.tensor(&arrow(i), &cat.identity(x)).label, i)).collect();
        if map.len() != k || cat.hom(x, x).len() != k {
            return Err(Error::NotStrict(format!("u ↦ u ⊗ id is not bijective onto End({x})")));
        }
        gamma_inv.push(map);
    }

    let coeff = pi1.group().clone();
    let rank = coeff.rank();
    let mut action = Vec::with_capacity(comps.sticks.len());
    for (s, &x) in comps.sticks.iter().enumerate() {
        let columns: Vec<Vec<i64>> = (0..rank)
            .map(|j| {
                let u = pi1.to_element(&unit(rank, j));
                let moved = cat.tensor(&cat.identity(x), &arrow(u)).label;
                pi1.to_coords(gamma_inv[s][&moved]).expect("element of End(I)").clone()
            })
            .collect();
        action.push(crate::linalg::IntMatrix::from_columns(rank, &columns));
    }
    let module = PiModule::new(pi0.clone(), coeff, action)?;
    Ok(ReductionResult { cat, pi0, comps, end_unit, pi1, gamma_inv, module })
}

impl<C: StrictGrCat> ReductionResult<'_, C> {
    pub fn pi0(&self) -> &FiniteGroup {
        &self.pi0
    }

    pub fn pi1(&self) -> &FiniteAbelianGroup {
        self.pi1.group()
    }

    pub fn module(&self) -> &PiModule {
        &self.module
    }

    /// The stick object chosen for each class.
    pub fn sticks(&self) -> &[usize] {
        &self.comps.sticks
    }

    pub fn class_of(&self, object: usize) -> usize {
        self.comps.class_of[object]
    }

    /// Labels of `End(I)`; position `i` is the `i`-th element of the `π₁` presentation.
    pub fn end_unit(&self) -> &[C::Label] {
        &self.end_unit
    }

    /// The chosen arrow from `object` to the stick of its class.
    pub fn comparison(&self, object: usize) -> Arrow<C::Label> {
        Arrow {
            source: object,
            target: self.comps.sticks[self.comps.class_of[object]],
            label: self.comps.comparison[object].clone(),
        }
    }

    /// `X_s ⊗ X_t → X_{st}`.
    pub fn tensor_comparison(&self, s: usize, t: usize) -> Arrow<C::Label> {
        self.comparison(self.cat.objects().mul(self.comps.sticks[s], self.comps.sticks[t]))
    }

    fn end_coords(&self, class: usize, f: &Arrow<C::Label>) -> Elem {
        let i = self.gamma_inv[class][&f.label];
        self.pi1.to_coords(i).expect("element of End(I)").clone()
    }

    /// `h(r,s,t)`, read off from the two ways of comparing `X_r X_s X_t` with `X_{rst}`.
    pub fn h(&self, r: usize, s: usize, t: usize) -> Elem {
        let cat = self.cat;
        let (xr, xt) = (self.comps.sticks[r], self.comps.sticks[t]);
        let st = self.pi0.mul(s, t);
        let rs = self.pi0.mul(r, s);
        let right = cat.compose(&self.tensor_comparison(r, st), &cat.tensor(&cat.identity(xr), &self.tensor_comparison(s, t)));
        let left = cat.compose(&self.tensor_comparison(rs, t), &cat.tensor(&self.tensor_comparison(r, s), &cat.identity(xt)));
        let gamma_h = cat.compose(&left, &cat.inverse(&right));
        self.end_coords(self.pi0.mul(rs, t), &gamma_h)
    }

    /// The full associator; refused when it would exceed the cochain cap.
    pub fn h_cochain(&self, caps: &Caps) -> Result<Cochain> {
        let dim = self.module.tuple_count(3) * self.pi1().rank();
        if dim > caps.cochain_dim {
            return Err(Error::CapExceeded { what: "cochain dimension", size: dim, cap: caps.cochain_dim });
        }
        Ok(Cochain::from_fn(&self.module, 3, |a| self.h(a[0], a[1], a[2])))
    }

    /// `ψ*h` together with the module `π₁` restricted along `ψ`.
    pub fn pullback_h(&self, psi: &GroupHom) -> Result<(PiModule, Cochain)> {
        if !psi.target().same_table(&self.pi0) {
            return Err(Error::PsiNotIntoPi0("target is not the group of object classes".into()));
        }
        let action = psi.map().iter().map(|&y| self.module.action_matrix(y).clone()).collect();
        let module = PiModule::new(psi.source().clone(), self.pi1().clone(), action)?;
        let h = Cochain::from_fn(&module, 3, |a| self.h(psi.apply(a[0]), psi.apply(a[1]), psi.apply(a[2])));
        Ok((module, h))
    }
}

/// The strict category with objects `(x, X)`, `X` in the class `ψ(x)`, and
/// morphisms those of the base category between second components.
#[derive(Clone, Debug)]
pub struct PulledBack<C: StrictGrCat> {
    base: C,
    psi: GroupHom,
    pairs: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    objects: FiniteGroup,
}

pub fn pullback_strict<C: StrictGrCat>(base: C, psi: GroupHom) -> Result<PulledBack<C>> {
    let comps = components(&base);
    let pi0 = class_group(base.objects(), &comps)?;
    if !psi.target().same_table(&pi0) {
        return Err(Error::PsiNotIntoPi0(format!(
            "target has order {}, the object classes have order {}",
            psi.target().order(),
            pi0.order()
        )));
    }
    let pi = psi.source();
    let pairs: Vec<(usize, usize)> = (0..pi.order())
        .flat_map(|x| {
            let class = psi.apply(x);
            comps.class_of.iter().enumerate().filter(move |(_, &c)| c == class).map(move |(o, _)| (x, o))
        })
        .collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let rows = pairs
        .iter()
        .map(|&(x, a)| pairs.iter().map(|&(y, b)| index[&(pi.mul(x, y), base.objects().mul(a, b))]).collect())
        .collect();
    let objects = FiniteGroup::from_table(rows)?;
    Ok(PulledBack { base, psi, pairs, index, objects })
}

impl<C: StrictGrCat> PulledBack<C> {
    pub fn base(&self) -> &C {
        &self.base
    }

    pub fn psi(&self) -> &GroupHom {
        &self.psi
    }

    /// The pair `(x, X)` behind an object index.
    pub fn pair(&self, object: usize) -> (usize, usize) {
        self.pairs[object]
    }

    /// The object index of `(x, X)`, if `X` lies in the class `ψ(x)`.
    pub fn object(&self, x: usize, base_object: usize) -> Option<usize> {
        self.index.get(&(x, base_object)).copied()
    }

    fn down(&self, f: &Arrow<C::Label>) -> Arrow<C::Label> {
        Arrow { source: self.pairs[f.source].1, target: self.pairs[f.target].1, label: f.label.clone() }
    }
}

impl<C: StrictGrCat> StrictGrCat for PulledBack<C> {
    type Label = C::Label;

    fn objects(&self) -> &FiniteGroup {
        &self.objects
    }

    fn hom(&self, a: usize, b: usize) -> Vec<C::Label> {
        let ((x, xa), (y, yb)) = (self.pairs[a], self.pairs[b]);
        if x == y {
            self.base.hom(xa, yb)
        } else {
            Vec::new()
        }
    }

    fn identity(&self, a: usize) -> Arrow<C::Label> {
        Arrow { source: a, target: a, label: self.base.identity(self.pairs[a].1).label }
    }

    fn compose(&self, g: &Arrow<C::Label>, f: &Arrow<C::Label>) -> Arrow<C::Label> {
        assert_eq!(f.target, g.source, "arrows are not composable");
        Arrow { source: f.source, target: g.target, label: self.base.compose(&self.down(g), &self.down(f)).label }
    }

    fn inverse(&self, f: &Arrow<C::Label>) -> Arrow<C::Label> {
        Arrow { source: f.target, target: f.source, label: self.base.inverse(&self.down(f)).label }
    }

    fn tensor(&self, u: &Arrow<C::Label>, v: &Arrow<C::Label>) -> Arrow<C::Label> {
        Arrow {
            source: self.objects.mul(u.source, v.source),
            target: self.objects.mul(u.target, v.target),
            label: self.base.tensor(&self.down(u), &self.down(v)).label,
        }
    }
}

/// A strict model of a skeletal type together with the comparison functor.
#[derive(Clone, Debug)]
pub struct Strictification {
    /// `Aut_G` pulled back along `ψ`.
    pub category: PulledBack<AutCategory>,
    /// The reduction `(Π, ZG, h′)` of `category`, over the same `Π`.
    pub reduced: GrType,
    /// A Gr-functor `S → reduced` of type `(id, θ)`; `θ: A → ZG` identifies the coefficients.
    pub equivalence: GrFunctorData,
}

/// Builds the strict model of `s` from a realization `(G, ψ: Π → Out G)`.
///
/// The realization is validated, not constructed: `ZG` must be isomorphic to
/// `A` as a `Π`-module by some `θ` for which `[h′] = [θ_* h]`, where `h′` is
/// the associator of the reduced pullback.
pub fn strictify(s: &GrType, g: &FiniteGroup, psi: &GroupHom, caps: &Caps) -> Result<Strictification> {
    if !psi.source().same_table(s.pi()) {
        return Err(Error::RealizationMismatch("psi is not defined on the object group of the type".into()));
    }
    let aut = AutCategory::new(g, caps)?;
    if !psi.target().same_table(&aut.data.out) {
        return Err(Error::PsiNotIntoPi0("psi does not land in Out(G)".into()));
    }
    let category = pullback_strict(aut, psi.clone())?;
    let (reduced_module, h_prime) = {
        let red = reduce_strict(&category)?;
        if !red.pi0().same_table(s.pi()) {
            return Err(Error::RealizationMismatch("object classes of the pullback differ from Π".into()));
        }
        let action = (0..s.pi().order()).map(|x| red.module().action_matrix(x).clone()).collect();
        let module = PiModule::new(s.pi().clone(), red.pi1().clone(), action)?;
        let h = Cochain::from_fn(&module, 3, |a| red.h(a[0], a[1], a[2]));
        (module, h)
    };
    let reduced = make_gr_type(reduced_module.clone(), h_prime.clone())?;
    let id = GroupHom::identity(s.pi());
    let thetas: Vec<AbelianHom> = isomorphisms(s.coeff(), reduced_module.coeff())
        .into_iter()
        .filter(|t| crate::cohomology::check_equivariant(s.module(), &reduced_module, &id, t).is_ok())
        .collect();
    if thetas.is_empty() {
        return Err(Error::RealizationMismatch(format!(
            "center {} is not isomorphic to {} as a Π-module",
            reduced_module.coeff(),
            s.coeff()
        )));
    }
    for theta in thetas {
        let pushed = pushforward(s.module(), &reduced_module, &id, &theta, s.h())?;
        let diff = h_prime.sub(&reduced_module, &pushed);
        if let Some(g_cochain) = class_solve(&reduced_module, &diff, caps)? {
            let equivalence = GrFunctorData::new(s.clone(), reduced.clone(), id.clone(), theta, g_cochain)?;
            debug_assert_eq!(gr_functor_witness(&equivalence).ok().flatten(), None);
            return Ok(Strictification { category, reduced, equivalence });
        }
    }
    Err(Error::RealizationMismatch("the realization has a different associator class".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::is_cocycle;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn zero_associator_accepted() {
        let m = PiModule::trivial(z(3), FiniteAbelianGroup::cyclic(2));
        assert!(make_gr_type(m, Cochain::zero(3)).is_ok());
    }

    #[test]
    fn nontrivial_z2_type_accepted_and_bad_one_rejected() {
        let m = PiModule::trivial(z(2), FiniteAbelianGroup::cyclic(2));
        let h = Cochain::from_entries(&m, 3, [(vec![1, 1, 1], vec![1])]).unwrap();
        assert!(make_gr_type(m.clone(), h).is_ok());
        let m3 = PiModule::trivial(z(3), FiniteAbelianGroup::cyclic(2));
        let bad = Cochain::from_entries(&m3, 3, [(vec![1, 1, 1], vec![1])]).unwrap();
        assert!(matches!(make_gr_type(m3, bad), Err(Error::NotACocycle { witness }) if witness.len() == 4));
    }

    #[test]
    fn dis_has_trivial_coefficients() {
        let d = dis(z(2));
        assert!(d.coeff().is_trivial());
        assert!(d.h().is_zero());
        assert_eq!(dis(FiniteGroup::trivial()).pi().order(), 1);
    }

    #[test]
    fn aut_category_hom_sets() {
        let z4 = aut_g_category(&z(4), &caps()).unwrap();
        let n = z4.objects().order();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(z4.hom(a, b).len(), if a == b { 4 } else { 0 });
            }
        }
        let s3 = aut_g_category(&FiniteGroup::symmetric(3), &caps()).unwrap();
        assert_eq!(s3.hom(0, 0), vec![0]);
        for a in 0..6 {
            for b in 0..6 {
                assert!(s3.hom(a, b).len() <= 1);
            }
        }
        let d4 = FiniteGroup::dihedral(4);
        let cat = aut_g_category(&d4, &caps()).unwrap();
        assert_eq!(cat.hom(0, 0), d4.center());
    }

    #[test]
    fn aut_categories_are_strict() {
        for g in [z(2), z(3), z(4), FiniteGroup::symmetric(3), FiniteGroup::dihedral(4), FiniteGroup::quaternion()] {
            let cat = aut_g_category(&g, &caps()).unwrap();
            verify_strict(&cat, Sampling::Bounded { max: 200_000, seed: 7 }).unwrap();
        }
    }

    #[test]
    fn reductions_of_small_aut_categories() {
        let s3 = aut_g_category(&FiniteGroup::symmetric(3), &caps()).unwrap();
        let red = reduce_strict(&s3).unwrap();
        assert_eq!(red.pi0().order(), 1);
        assert!(red.pi1().is_trivial());
        assert!(red.h_cochain(&caps()).unwrap().is_zero());

        let z3 = aut_g_category(&z(3), &caps()).unwrap();
        let red = reduce_strict(&z3).unwrap();
        assert_eq!(red.pi0().order(), 2);
        assert_eq!(red.pi1().factors(), &[3]);
        assert!(red.h_cochain(&caps()).unwrap().is_zero());
        // the non-trivial class acts by inversion
        assert_eq!(red.module().act(1, &[1]), vec![2]);
    }

    #[test]
    fn reduced_associators_are_cocycles() {
        for g in [FiniteGroup::dihedral(4), FiniteGroup::quaternion(), FiniteGroup::dihedral(3)] {
            let cat = aut_g_category(&g, &caps()).unwrap();
            let red = reduce_strict(&cat).unwrap();
            let h = red.h_cochain(&caps()).unwrap();
            assert!(is_cocycle(red.module(), &h).unwrap());
        }
    }

    #[test]
    fn pullback_along_trivial_and_iso() {
        let aut = aut_g_category(&z(3), &caps()).unwrap();
        let out = aut.aut_data().out.clone();
        let triv = GroupHom::trivial(&z(2), &out);
        let pb = pullback_strict(aut.clone(), triv).unwrap();
        verify_strict(&pb, Sampling::Exhaustive).unwrap();
        let red = reduce_strict(&pb).unwrap();
        assert_eq!(red.pi0().order(), 2);
        assert!(red.module().is_trivial_action());

        let iso = GroupHom::new(z(2), out, vec![0, 1]).unwrap();
        let pb = pullback_strict(aut, iso).unwrap();
        let red = reduce_strict(&pb).unwrap();
        let h = red.h_cochain(&caps()).unwrap();
        assert!(class_solve(red.module(), &h, &caps()).unwrap().is_some());
    }

    #[test]
    fn pullback_rejects_foreign_psi() {
        let aut = aut_g_category(&z(3), &caps()).unwrap();
        let psi = GroupHom::identity(&z(3));
        assert!(matches!(pullback_strict(aut, psi), Err(Error::PsiNotIntoPi0(_))));
    }

    #[test]
    fn strictify_z2_z3() {
        let aut = AutData::compute(&z(3), &caps()).unwrap();
        let psi = GroupHom::new(z(2), aut.out.clone(), vec![0, 1]).unwrap();
        let a = FiniteAbelianGroup::cyclic(3);
        let m = PiModule::new(
            z(2),
            a,
            vec![crate::linalg::IntMatrix::identity(1), crate::linalg::IntMatrix::from_rows(&[[-1]])],
        )
        .unwrap();
        let s = make_gr_type(m, Cochain::zero(3)).unwrap();
        let res = strictify(&s, &z(3), &psi, &caps()).unwrap();
        assert_eq!(gr_functor_witness(&res.equivalence).unwrap(), None);

        // Z3 coefficients with trivial action do not match the inversion action
        let triv = make_gr_type(PiModule::trivial(z(2), FiniteAbelianGroup::cyclic(3)), Cochain::zero(3)).unwrap();
        assert!(matches!(strictify(&triv, &z(3), &psi, &caps()), Err(Error::RealizationMismatch(_))));
    }
}
