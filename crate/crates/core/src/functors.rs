//! Gr-functors of type `(φ, f)` between skeletal types.
//!
//! A functor `S → S′` is a triple `(φ, f, g)` with `φ: Π → Π′`, an
//! equivariant `f: A → A′` and a normalized 2-cochain `g` over `Π` with values
//! in `A′` (acted on through `φ`) such that `φ*h′ − f_*h = ∂g`. Two such
//! functors are homotopic when their `g` differ by a coboundary `∂t`.

use crate::abelian::AbelianHom;
use crate::cohomology::{
    class_solve, coboundary, cocycles, cohomology_group, pullback, pushforward, Cochain, PiModule,
};
use crate::error::{Error, Result};
use crate::group::GroupHom;
use crate::skeletal::GrType;
use crate::Caps;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrFunctorData {
    source: GrType,
    target: GrType,
    phi: GroupHom,
    f: AbelianHom,
    g: Cochain,
}

/// A witness `t` of `g′ = g + ∂t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub t: Cochain,
}

/// `A′` viewed as a `Π`-module through `φ`.
pub fn pulled_module(phi: &GroupHom, target: &GrType) -> Result<PiModule> {
    target.module().restrict(phi)
}

fn check_pair(phi: &GroupHom, f: &AbelianHom, s: &GrType, t: &GrType) -> Result<PiModule> {
    if !phi.source().same_table(s.pi()) || !phi.target().same_table(t.pi()) {
        return Err(Error::InvalidMap("phi does not connect the object groups".into()));
    }
    let m = pulled_module(phi, t)?;
    crate::cohomology::check_equivariant(s.module(), &m, &GroupHom::identity(s.pi()), f)?;
    Ok(m)
}

impl GrFunctorData {
    /// Checks the equivariance of `f` and the shape of `g`; the functor law itself
    /// is checked by [`is_gr_functor`].
    pub fn new(source: GrType, target: GrType, phi: GroupHom, f: AbelianHom, g: Cochain) -> Result<Self> {
        let m = check_pair(&phi, &f, &source, &target)?;
        if g.degree() != 2 {
            return Err(Error::InvalidMap(format!("g must have degree 2, got {}", g.degree())));
        }
        g.validate(&m)?;
        Ok(GrFunctorData { source, target, phi, f, g })
    }

    pub fn identity(s: &GrType) -> Self {
        GrFunctorData {
            source: s.clone(),
            target: s.clone(),
            phi: GroupHom::identity(s.pi()),
            f: AbelianHom::identity(s.coeff()),
            g: Cochain::zero(2),
        }
    }

    pub fn source(&self) -> &GrType {
        &self.source
    }

    pub fn target(&self) -> &GrType {
        &self.target
    }

    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    pub fn f(&self) -> &AbelianHom {
        &self.f
    }

    pub fn g(&self) -> &Cochain {
        &self.g
    }

    /// `A′` with the `Π`-action through `φ`.
    pub fn module(&self) -> PiModule {
        pulled_module(&self.phi, &self.target).expect("validated at construction")
    }

    fn with_g(&self, g: Cochain) -> Self {
        GrFunctorData { g, ..self.clone() }
    }
}

/// `k = φ*h′ − f_*h`, a 3-cocycle over `A′_φ`, returned with that module.
pub fn obstruction(phi: &GroupHom, f: &AbelianHom, s: &GrType, t: &GrType) -> Result<(PiModule, Cochain)> {
    let m = check_pair(phi, f, s, t)?;
    let pushed = pushforward(s.module(), &m, &GroupHom::identity(s.pi()), f, s.h())?;
    let k = pullback(phi, t.h()).sub(&m, &pushed);
    Ok((m, k))
}

/// A functor of type `(φ, f)`, or [`Error::ObstructionNonzero`] with the class of `k`.
pub fn realize(phi: &GroupHom, f: &AbelianHom, s: &GrType, t: &GrType, caps: &Caps) -> Result<GrFunctorData> {
    let (m, k) = obstruction(phi, f, s, t)?;
    match class_solve(&m, &k, caps)? {
        Some(g) => GrFunctorData::new(s.clone(), t.clone(), phi.clone(), f.clone(), g),
        None => {
            let class = cohomology_group(&m, 3, caps)?.project(&k)?;
            Err(Error::ObstructionNonzero { class })
        }
    }
}

/// `None` when `φ*h′ − f_*h = ∂g`, otherwise the first triple where it fails.
pub fn gr_functor_witness(functor: &GrFunctorData) -> Result<Option<Vec<usize>>> {
    let (m, k) = obstruction(&functor.phi, &functor.f, &functor.source, &functor.target)?;
    let defect = k.sub(&m, &coboundary(&m, &functor.g)?);
    Ok(defect.entries().keys().next().cloned())
}

pub fn is_gr_functor(functor: &GrFunctorData) -> bool {
    matches!(gr_functor_witness(functor), Ok(None))
}

/// One functor per element of `H²(Π, A′_φ)`, as `g₀ + zᵢ`.
pub fn classify(phi: &GroupHom, f: &AbelianHom, s: &GrType, t: &GrType, caps: &Caps) -> Result<Vec<GrFunctorData>> {
    let base = realize(phi, f, s, t, caps)?;
    let m = base.module();
    let h2 = cohomology_group(&m, 2, caps)?;
    Ok(h2.classes().into_iter().map(|(_, z)| base.with_g(base.g.add(&m, &z))).collect())
}

/// A homotopy `F ⇒ F′`, if one exists; never one between different `(φ, f)`.
pub fn are_homotopic(a: &GrFunctorData, b: &GrFunctorData, caps: &Caps) -> Result<Option<Homotopy>> {
    if a.source != b.source || a.target != b.target {
        return Err(Error::SourceTargetMismatch);
    }
    if a.phi.map() != b.phi.map() || a.f.matrix() != b.f.matrix() {
        return Ok(None);
    }
    let m = a.module();
    let diff = b.g.sub(&m, &a.g);
    Ok(class_solve(&m, &diff, caps)?.map(|t| Homotopy { t }))
}

/// The monoidal automorphisms of `F`, which are the 1-cocycles `Z¹(Π, A′_φ)`.
pub fn functor_automorphisms(functor: &GrFunctorData, caps: &Caps) -> Result<Vec<Cochain>> {
    cocycles(&functor.module(), 1, caps)
}

/// `F′ ∘ F` with `g″(x,y) = f′(g(x,y)) + g′(φx, φy)`.
pub fn compose(second: &GrFunctorData, first: &GrFunctorData) -> Result<GrFunctorData> {
    if first.target != second.source {
        return Err(Error::SourceTargetMismatch);
    }
    let phi = second.phi.after(&first.phi)?;
    let f = second.f.compose(&first.f)?;
    let m = pulled_module(&phi, &second.target)?;
    let coeff = m.coeff().clone();
    let mid = first.target.coeff();
    let g = Cochain::from_fn(&m, 2, |a| {
        let inner = second.f.apply(&first.g.get(mid, a));
        let outer = second.g.get(&coeff, &[first.phi.apply(a[0]), first.phi.apply(a[1])]);
        coeff.add(&inner, &outer)
    });
    GrFunctorData::new(first.source.clone(), second.target.clone(), phi, f, g)
}

/// Whether `F` also respects braidings `η` on the source and `η′` on the target:
/// `η′(φx, φy) − f(η(x,y)) = g(y,x) − g(x,y)` everywhere.
pub fn braided_compatible(functor: &GrFunctorData, eta: &Cochain, eta_target: &Cochain) -> bool {
    if !is_gr_functor(functor) {
        return false;
    }
    let n = functor.source.pi().order();
    let a = functor.source.coeff();
    let b = functor.target.coeff();
    let phi = &functor.phi;
    (0..n).all(|x| {
        (0..n).all(|y| {
            let lhs = b.sub(
                &eta_target.get(b, &[phi.apply(x), phi.apply(y)]),
                &functor.f.apply(&eta.get(a, &[x, y])),
            );
            let rhs = b.sub(&functor.g.get(b, &[y, x]), &functor.g.get(b, &[x, y]));
            lhs == rhs
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FiniteAbelianGroup;
    use crate::group::FiniteGroup;
    use crate::skeletal::{dis, make_gr_type};

    fn caps() -> Caps {
        Caps::default()
    }

    fn z2_type(h_val: i64) -> GrType {
        let m = PiModule::trivial(FiniteGroup::cyclic(2), FiniteAbelianGroup::cyclic(2));
        let h = Cochain::from_entries(&m, 3, [(vec![1, 1, 1], vec![h_val])]).unwrap();
        make_gr_type(m, h).unwrap()
    }

    #[test]
    fn identity_functor() {
        let s = z2_type(1);
        let id = GrFunctorData::identity(&s);
        let (_, k) = obstruction(id.phi(), id.f(), &s, &s).unwrap();
        assert!(k.is_zero());
        assert!(is_gr_functor(&id));
        assert_eq!(compose(&id, &id).unwrap(), id);
    }

    #[test]
    fn nonzero_obstruction() {
        let s = z2_type(1);
        let t = z2_type(0);
        let phi = GroupHom::identity(s.pi());
        let f = AbelianHom::identity(s.coeff());
        let (m, k) = obstruction(&phi, &f, &s, &t).unwrap();
        assert_eq!(k.get(m.coeff(), &[1, 1, 1]), vec![1]);
        assert!(matches!(realize(&phi, &f, &s, &t, &caps()), Err(Error::ObstructionNonzero { class }) if class == vec![1]));
    }

    #[test]
    fn classify_dis_into_z2() {
        let s = dis(FiniteGroup::cyclic(2));
        let t = z2_type(0);
        let phi = GroupHom::identity(s.pi());
        let f = AbelianHom::zero(s.coeff(), t.coeff());
        let reps = classify(&phi, &f, &s, &t, &caps()).unwrap();
        assert_eq!(reps.len(), 2);
        assert!(reps.iter().all(is_gr_functor));
        assert_eq!(are_homotopic(&reps[0], &reps[1], &caps()).unwrap(), None);
        assert!(are_homotopic(&reps[0], &reps[0], &caps()).unwrap().unwrap().t.is_zero());
        assert_eq!(functor_automorphisms(&reps[0], &caps()).unwrap().len(), 2);
    }

    #[test]
    fn perturbations() {
        let s = dis(FiniteGroup::cyclic(3));
        let m = PiModule::trivial(FiniteGroup::cyclic(3), FiniteAbelianGroup::cyclic(3));
        let t = make_gr_type(m.clone(), Cochain::zero(3)).unwrap();
        let phi = GroupHom::identity(s.pi());
        let f = AbelianHom::zero(s.coeff(), t.coeff());
        let base = realize(&phi, &f, &s, &t, &caps()).unwrap();
        // a 2-cochain with non-zero coboundary
        let delta = Cochain::from_entries(&m, 2, [(vec![1, 1], vec![1])]).unwrap();
        assert!(!coboundary(&m, &delta).unwrap().is_zero());
        assert!(!is_gr_functor(&base.with_g(base.g().add(&m, &delta))));
        let t0 = Cochain::from_entries(&m, 1, [(vec![1], vec![1])]).unwrap();
        let shifted = base.with_g(base.g().add(&m, &coboundary(&m, &t0).unwrap()));
        assert!(is_gr_functor(&shifted));
        assert!(are_homotopic(&base, &shifted, &caps()).unwrap().is_some());
    }

    #[test]
    fn braided_identity_and_flip() {
        let s = z2_type(0);
        let m = s.module().clone();
        let eta = Cochain::from_entries(&m, 2, [(vec![1, 1], vec![1])]).unwrap();
        let id = GrFunctorData::identity(&s);
        assert!(braided_compatible(&id, &eta, &eta));
        assert!(!braided_compatible(&id, &eta, &Cochain::zero(2)));
    }
}
