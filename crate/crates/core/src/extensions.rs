//! Abstract kernels, factor sets and group extensions.
//!
//! Elements of the group `B_F` built from a factor set `(F, f)` are pairs
//! `(a, x)` stored at index `x·|G| + a`, with product
//! `(a, x)(b, y) = (a·Fx(b)·f(x, y), xy)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::abelian::AbelianIso;
use crate::cohomology::{class_solve, cohomology_group, Cochain, CohomologyGroup, PiModule};
use crate::error::{Error, Result};
use crate::group::{homomorphisms, AutData, FiniteGroup, GroupHom};
use crate::linalg::{unit, IntMatrix};
use crate::skeletal::{aut_g_category, reduce_strict};
use crate::Caps;

/// A triple `(Π, G, ψ)` with `ψ: Π → Out(G)`.
#[derive(Clone, Debug)]
pub struct AbstractKernel {
    pi: FiniteGroup,
    g: FiniteGroup,
    psi: GroupHom,
    aut: AutData,
}

impl AbstractKernel {
    /// `psi` must be a homomorphism into `Out(G)` as ordered by [`AutData`].
    pub fn new(pi: FiniteGroup, g: FiniteGroup, psi: GroupHom, caps: &Caps) -> Result<Self> {
        let aut = AutData::compute(&g, caps)?;
        if !psi.target().same_table(&aut.out) || !psi.source().same_table(&pi) {
            return Err(Error::InvalidMap("psi must map Π into Out(G)".into()));
        }
        Ok(AbstractKernel { pi, g, psi, aut })
    }

    /// `ψ` given by the `Out(G)` index of each element of `Π`.
    pub fn from_indices(pi: FiniteGroup, g: FiniteGroup, psi: Vec<usize>, caps: &Caps) -> Result<Self> {
        let aut = AutData::compute(&g, caps)?;
        let psi = GroupHom::new(pi.clone(), aut.out.clone(), psi)?;
        Ok(AbstractKernel { pi, g, psi, aut })
    }

    /// Every kernel `(Π, G, ψ)` for fixed `Π` and `G`.
    pub fn all(pi: &FiniteGroup, g: &FiniteGroup, caps: &Caps) -> Result<Vec<AbstractKernel>> {
        let aut = AutData::compute(g, caps)?;
        Ok(homomorphisms(pi, &aut.out)
            .into_iter()
            .map(|psi| AbstractKernel { pi: pi.clone(), g: g.clone(), psi, aut: aut.clone() })
            .collect())
    }

    pub fn pi(&self) -> &FiniteGroup {
        &self.pi
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn psi(&self) -> &GroupHom {
        &self.psi
    }

    pub fn aut(&self) -> &AutData {
        &self.aut
    }

    /// The chosen lift `φ(x)`: the smallest automorphism in the class `ψ(x)`.
    pub fn lift(&self, x: usize) -> &[usize] {
        &self.aut.maps[self.aut.out_reps[self.psi.apply(x)]]
    }

    /// `ZG` as a `Π`-module through the chosen lifts, with its coordinates.
    pub fn center_module(&self) -> (PiModule, AbelianIso) {
        let iso = AbelianIso::new(&self.g, &self.g.center());
        let coeff = iso.group().clone();
        let rank = coeff.rank();
        let action = (0..self.pi.order())
            .map(|x| {
                let lift = self.lift(x);
                let columns: Vec<Vec<i64>> = (0..rank)
                    .map(|j| iso.to_coords(lift[iso.to_element(&unit(rank, j))]).expect("center is characteristic").clone())
                    .collect();
                IntMatrix::from_columns(rank, &columns)
            })
            .collect();
        let module = PiModule::new(self.pi.clone(), coeff, action).expect("ψ is a homomorphism into Out(G)");
        (module, iso)
    }
}

/// Lifts `Fx` of `ψ(x)` (as maps on `G`) and `f: Π² → G` with
/// `Fx ∘ Fy = μ_{f(x,y)} ∘ F(xy)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSet {
    pub phi: Vec<Vec<usize>>,
    pub f: Vec<Vec<usize>>,
}

/// `0 → G → B → Π → 1` with its induced `ψ: Π → Out(G)`.
#[derive(Clone, Debug)]
pub struct Extension {
    b: FiniteGroup,
    i: GroupHom,
    p: GroupHom,
    psi_induced: GroupHom,
}

fn conjugate(g: &FiniteGroup, c: usize, a: usize) -> usize {
    g.mul(g.mul(c, a), g.inv(c))
}

impl Extension {
    /// Checks exactness and computes the induced `ψ` against `aut`.
    pub fn new(b: FiniteGroup, i: GroupHom, p: GroupHom, aut: &AutData) -> Result<Self> {
        if !i.target().same_table(&b) || !p.source().same_table(&b) {
            return Err(Error::InvalidMap("i and p must meet at B".into()));
        }
        if !i.is_injective() || !p.is_surjective() || i.image() != p.kernel() {
            return Err(Error::InvalidMap("sequence G → B → Π is not exact".into()));
        }
        let g = i.source();
        let pi = p.target();
        let i_inv: BTreeMap<usize, usize> = (0..g.order()).map(|a| (i.apply(a), a)).collect();
        let map = (0..pi.order())
            .map(|x| {
                let u = (0..b.order()).find(|&e| p.apply(e) == x).expect("p is surjective");
                let conj: Vec<usize> = (0..g.order()).map(|a| i_inv[&conjugate(&b, u, i.apply(a))]).collect();
                aut.out_class[aut.index_of(&conj).expect("conjugation is an automorphism")]
            })
            .collect();
        let psi_induced = GroupHom::new(pi.clone(), aut.out.clone(), map)?;
        Ok(Extension { b, i, p, psi_induced })
    }

    pub fn b(&self) -> &FiniteGroup {
        &self.b
    }

    pub fn i(&self) -> &GroupHom {
        &self.i
    }

    pub fn p(&self) -> &GroupHom {
        &self.p
    }

    pub fn psi_induced(&self) -> &GroupHom {
        &self.psi_induced
    }

    pub fn g(&self) -> &FiniteGroup {
        self.i.source()
    }

    pub fn pi(&self) -> &FiniteGroup {
        self.p.target()
    }
}

fn invalid(equation: &'static str, witness: Vec<usize>) -> Error {
    Error::FactorSetInvalid { equation, witness }
}

/// Checks normalization, `φ(x) ∈ ψ(x)`, multiplicativity up to `μ_f` and the
/// twisted cocycle law `Fx[f(y,z)]·f(x,yz) = f(x,y)·f(xy,z)`.
pub fn check_factor_set(kernel: &AbstractKernel, fs: &FactorSet) -> Result<()> {
    let (pi, g, aut) = (&kernel.pi, &kernel.g, &kernel.aut);
    let n = pi.order();
    if fs.phi.len() != n || fs.f.len() != n || fs.f.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidMap("factor set has the wrong shape".into()));
    }
    if fs.f.iter().flatten().any(|&c| c >= g.order()) {
        return Err(Error::InvalidMap("factor set value out of range".into()));
    }
    for x in 0..n {
        if fs.f[x][0] != 0 || fs.f[0][x] != 0 {
            return Err(invalid("normalization", vec![x]));
        }
        match aut.index_of(&fs.phi[x]) {
            Some(a) if aut.out_class[a] == kernel.psi.apply(x) => {}
            _ => return Err(invalid("lift of psi", vec![x])),
        }
    }
    if fs.phi[0].iter().enumerate().any(|(a, &b)| a != b) {
        return Err(invalid("normalization", vec![0]));
    }
    for x in 0..n {
        for y in 0..n {
            let xy = pi.mul(x, y);
            for a in 0..g.order() {
                if fs.phi[x][fs.phi[y][a]] != conjugate(g, fs.f[x][y], fs.phi[xy][a]) {
                    return Err(invalid("multiplicativity", vec![x, y]));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = g.mul(fs.phi[x][fs.f[y][z]], fs.f[x][pi.mul(y, z)]);
                let rhs = g.mul(fs.f[x][y], fs.f[pi.mul(x, y)][z]);
                if lhs != rhs {
                    return Err(invalid("cocycle", vec![x, y, z]));
                }
            }
        }
    }
    Ok(())
}

/// The group `B_F` with `i(a) = (a, 1)` and `p(a, x) = x`.
pub fn build_extension(kernel: &AbstractKernel, fs: &FactorSet, caps: &Caps) -> Result<Extension> {
    let (pi, g) = (&kernel.pi, &kernel.g);
    let (m, n) = (g.order(), pi.order());
    if m * n > caps.extension_order {
        return Err(Error::CapExceeded { what: "extension order", size: m * n, cap: caps.extension_order });
    }
    check_factor_set(kernel, fs)?;
    let rows = (0..m * n)
        .map(|left| {
            let (a, x) = (left % m, left / m);
            (0..m * n)
                .map(|right| {
                    let (b, y) = (right % m, right / m);
                    let c = g.mul(g.mul(a, fs.phi[x][b]), fs.f[x][y]);
                    pi.mul(x, y) * m + c
                })
                .collect()
        })
        .collect();
    let b = FiniteGroup::from_table(rows)?;
    let i = GroupHom::new(g.clone(), b.clone(), (0..m).collect())?;
    let p = GroupHom::new(b.clone(), pi.clone(), (0..m * n).map(|e| e / m).collect())?;
    Extension::new(b, i, p, &kernel.aut)
}

/// The factor set of `E` for the representatives `u_x` = smallest preimage of `x`.
pub fn factor_set_of(e: &Extension) -> FactorSet {
    let (b, g, pi) = (&e.b, e.g(), e.pi());
    let i_inv: BTreeMap<usize, usize> = (0..g.order()).map(|a| (e.i.apply(a), a)).collect();
    let u: Vec<usize> = (0..pi.order()).map(|x| (0..b.order()).find(|&c| e.p.apply(c) == x).expect("surjective")).collect();
    let phi = u.iter().map(|&ux| (0..g.order()).map(|a| i_inv[&conjugate(b, ux, e.i.apply(a))]).collect()).collect();
    let f = (0..pi.order())
        .map(|x| {
            (0..pi.order())
                .map(|y| i_inv[&b.mul(b.mul(u[x], u[y]), b.inv(u[pi.mul(x, y)]))])
                .collect()
        })
        .collect();
    FactorSet { phi, f }
}

/// A congruence `(a, x) ↦ (a·α_x, x)` from `E` to `E′` in factor-set coordinates,
/// returned as the map `α: Π → G`.
pub fn congruent(e: &Extension, e2: &Extension) -> Result<Option<Vec<usize>>> {
    if !e.g().same_table(e2.g()) || !e.pi().same_table(e2.pi()) {
        return Err(Error::IncompatibleKernels);
    }
    if e.psi_induced.map() != e2.psi_induced.map() {
        return Err(Error::IncompatibleKernels);
    }
    let (fs, fs2) = (factor_set_of(e), factor_set_of(e2));
    Ok(factor_set_congruence(e.g(), e.pi(), &fs, &fs2))
}

/// Searches `α` with `α_1 = 1`, `Fx = μ_{α_x} ∘ F′x` and
/// `f(x,y)·α_{xy} = α_x·F′x(α_y)·f′(x,y)`.
pub fn factor_set_congruence(g: &FiniteGroup, pi: &FiniteGroup, fs: &FactorSet, fs2: &FactorSet) -> Option<Vec<usize>> {
    let n = pi.order();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            if x == 0 {
                return vec![0];
            }
            (0..g.order())
                .filter(|&c| (0..g.order()).all(|a| fs.phi[x][a] == conjugate(g, c, fs2.phi[x][a])))
                .collect()
        })
        .collect();
    let holds = |alpha: &[Option<usize>], x: usize, y: usize| match (alpha[x], alpha[y], alpha[pi.mul(x, y)]) {
        (Some(ax), Some(ay), Some(axy)) => {
            g.mul(fs.f[x][y], axy) == g.mul(g.mul(ax, fs2.phi[x][ay]), fs2.f[x][y])
        }
        _ => true,
    };
    let mut alpha = vec![None; n];
    if congruence_search(0, &mut alpha, &candidates, &holds) {
        Some(alpha.into_iter().map(|a| a.expect("assigned")).collect())
    } else {
        None
    }
}

/// Whether the congruence condition holds at `(x, y)` for a partial `α`.
type PairCheck<'a> = dyn Fn(&[Option<usize>], usize, usize) -> bool + 'a;

fn congruence_search(
    x: usize,
    alpha: &mut [Option<usize>],
    candidates: &[Vec<usize>],
    holds: &PairCheck,
) -> bool {
    let n = candidates.len();
    if x == n {
        return true;
    }
    for &c in &candidates[x] {
        alpha[x] = Some(c);
        let consistent = (0..n).all(|a| (0..n).all(|b| holds(alpha, a, b)));
        if consistent && congruence_search(x + 1, alpha, candidates, holds) {
            return true;
        }
    }
    alpha[x] = None;
    false
}

/// The obstruction of an abstract kernel with the data used to compute it.
#[derive(Clone, Debug)]
pub struct KernelObstruction {
    pub module: PiModule,
    pub center: AbelianIso,
    /// Index in `Aut(G)` of the lift `φ(x)` for each `x`.
    pub lifts: Vec<usize>,
    /// `f(x, y)`, the smallest `c` with `φ(x)φ(y) = μ_c φ(xy)`.
    pub f: Vec<Vec<usize>>,
    pub k: Cochain,
    pub h3: CohomologyGroup,
    pub class: Vec<i64>,
}

impl KernelObstruction {
    pub fn vanishes(&self) -> bool {
        self.class.iter().all(|&c| c == 0)
    }
}

/// `k(x,y,z) = φ(x)[f(y,z)]·f(x,yz)·f(xy,z)⁻¹·f(x,y)⁻¹`, a 3-cocycle in `ZG`.
pub fn kernel_obstruction(kernel: &AbstractKernel, caps: &Caps) -> Result<KernelObstruction> {
    let (pi, g, aut) = (&kernel.pi, &kernel.g, &kernel.aut);
    let n = pi.order();
    let lifts: Vec<usize> = (0..n).map(|x| aut.out_reps[kernel.psi.apply(x)]).collect();
    let inner_of: Vec<usize> = (0..g.order()).map(|c| aut.index_of(&g.conjugation(c)).expect("inner")).collect();
    let f: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let target = aut.aut.mul(lifts[x], lifts[y]);
                    let xy = lifts[pi.mul(x, y)];
                    (0..g.order()).find(|&c| aut.aut.mul(inner_of[c], xy) == target).expect("lifts of a homomorphism")
                })
                .collect()
        })
        .collect();
    let (module, center) = kernel.center_module();
    let k = Cochain::from_fn(&module, 3, |a| {
        let (x, y, z) = (a[0], a[1], a[2]);
        let lhs = g.mul(aut.maps[lifts[x]][f[y][z]], f[x][pi.mul(y, z)]);
        let rhs = g.mul(f[x][y], f[pi.mul(x, y)][z]);
        let value = g.mul(lhs, g.inv(rhs));
        center.to_coords(value).expect("obstruction values are central").clone()
    });
    let h3 = cohomology_group(&module, 3, caps)?;
    let class = h3.project(&k)?;
    Ok(KernelObstruction { module, center, lifts, f, k, h3, class })
}

/// How `k` relates to `ψ*h` for the associator `h` of the reduced `Aut_G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionComparison {
    pub k_class: Vec<i64>,
    pub pulled_back_class: Vec<i64>,
    /// `k = ψ*h` as cochains.
    pub pointwise_equal: bool,
    /// `k = −ψ*h` as cochains.
    pub pointwise_negated: bool,
    /// `[k] = [ψ*h]`, decided by solving `∂t = k − ψ*h`.
    pub classes_equal: bool,
    /// `[k] = −[ψ*h]`, decided by solving `∂t = k + ψ*h`.
    pub classes_opposite: bool,
}

/// Computes both `[k]` and `[ψ*h]` and reports how they compare.
pub fn compare_with_reduction(kernel: &AbstractKernel, caps: &Caps) -> Result<ObstructionComparison> {
    let obs = kernel_obstruction(kernel, caps)?;
    let cat = aut_g_category(&kernel.g, caps)?;
    let red = reduce_strict(&cat)?;
    let (module, pulled) = red.pullback_h(&kernel.psi)?;
    if module.coeff() != obs.module.coeff()
        || (0..kernel.pi.order()).any(|x| module.action_matrix(x) != obs.module.action_matrix(x))
    {
        return Err(Error::InvalidModule("reduced coefficients differ from ZG".into()));
    }
    let m = &obs.module;
    let pulled_back_class = obs.h3.project(&pulled)?;
    Ok(ObstructionComparison {
        k_class: obs.class.clone(),
        pulled_back_class,
        pointwise_equal: obs.k == pulled,
        pointwise_negated: obs.k == pulled.neg(m),
        classes_equal: class_solve(m, &obs.k.sub(m, &pulled), caps)?.is_some(),
        classes_opposite: class_solve(m, &obs.k.add(m, &pulled), caps)?.is_some(),
    })
}

/// A short description from order, commutativity, cyclicity and element orders.
pub fn identify(b: &FiniteGroup) -> String {
    let n = b.order();
    if b.is_cyclic() {
        return format!("cyclic of order {n}");
    }
    let profile = b.order_profile();
    if b.is_abelian() {
        let exps: Vec<usize> = profile.keys().copied().filter(|&k| k > 1).collect();
        if exps.len() == 1 && is_prime(exps[0]) {
            return format!("elementary abelian of order {n}");
        }
        let iso = AbelianIso::new(b, &(0..n).collect::<Vec<_>>());
        return format!("abelian {}", iso.group());
    }
    let orders: Vec<String> = profile.iter().map(|(o, c)| format!("{c}x{o}")).collect();
    format!("non-abelian of order {n}, element orders {}", orders.join(" "))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// One extension per class of `H²_ψ(Π, ZG)`, tagged with its class coordinates.
#[derive(Clone, Debug)]
pub struct EnumeratedExtension {
    pub class: Vec<i64>,
    pub factor_set: FactorSet,
    pub extension: Extension,
    pub profile: String,
}

/// All extensions inducing `ψ` up to congruence; empty exactly when the
/// obstruction class is non-zero. Pairwise non-congruence is verified.
pub fn enumerate_extensions(kernel: &AbstractKernel, caps: &Caps) -> Result<(KernelObstruction, Vec<EnumeratedExtension>)> {
    let (pi, g) = (&kernel.pi, &kernel.g);
    if g.order() * pi.order() > caps.extension_order {
        return Err(Error::CapExceeded {
            what: "extension order",
            size: g.order() * pi.order(),
            cap: caps.extension_order,
        });
    }
    let obs = kernel_obstruction(kernel, caps)?;
    let m = &obs.module;
    let Some(c) = class_solve(m, &obs.k, caps)? else {
        return Ok((obs, Vec::new()));
    };
    let center = &obs.center;
    let zg = |cochain: &Cochain, x: usize, y: usize| center.to_element(&cochain.get(m.coeff(), &[x, y]));
    let n = pi.order();
    let h2 = cohomology_group(m, 2, caps)?;
    let mut out: Vec<EnumeratedExtension> = Vec::new();
    for (class, z) in h2.classes() {
        // f′ = c⁻¹·f·z, central corrections
        let f = (0..n)
            .map(|x| (0..n).map(|y| g.mul(g.mul(g.inv(zg(&c, x, y)), obs.f[x][y]), zg(&z, x, y))).collect())
            .collect();
        let phi = obs.lifts.iter().map(|&a| kernel.aut.maps[a].clone()).collect();
        let factor_set = FactorSet { phi, f };
        let extension = build_extension(kernel, &factor_set, caps)?;
        for other in &out {
            if congruent(&other.extension, &extension)?.is_some() {
                return Err(Error::MismatchFound(format!(
                    "classes {:?} and {class:?} give congruent extensions",
                    other.class
                )));
            }
        }
        let profile = identify(extension.b());
        out.push(EnumeratedExtension { class, factor_set, extension, profile });
    }
    Ok((obs, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    fn caps() -> Caps {
        Caps::default()
    }

    fn trivial_kernel(pi: FiniteGroup, g: FiniteGroup) -> AbstractKernel {
        let n = pi.order();
        AbstractKernel::from_indices(pi, g, vec![0; n], &caps()).unwrap()
    }

    #[test]
    fn abelian_kernels_are_unobstructed() {
        let k = trivial_kernel(z(2), z(4));
        let obs = kernel_obstruction(&k, &caps()).unwrap();
        assert!(obs.k.is_zero());
        assert!(obs.vanishes());
    }

    #[test]
    fn z2_by_z2() {
        let k = trivial_kernel(z(2), z(2));
        let (_, exts) = enumerate_extensions(&k, &caps()).unwrap();
        let profiles: Vec<&str> = exts.iter().map(|e| e.profile.as_str()).collect();
        assert_eq!(profiles, vec!["elementary abelian of order 4", "cyclic of order 4"]);
    }

    #[test]
    fn z2_by_z3() {
        let k = trivial_kernel(z(2), z(3));
        let (_, exts) = enumerate_extensions(&k, &caps()).unwrap();
        assert_eq!(exts.len(), 1);
        assert_eq!(exts[0].profile, "cyclic of order 6");
    }

    #[test]
    fn explicit_factor_set_gives_z4() {
        let k = trivial_kernel(z(2), z(2));
        let id = vec![0, 1];
        let fs = FactorSet { phi: vec![id.clone(), id.clone()], f: vec![vec![0, 0], vec![0, 1]] };
        let e = build_extension(&k, &fs, &caps()).unwrap();
        assert!(e.b().is_cyclic());
        assert_eq!(factor_set_of(&e), fs);
        let triv = FactorSet { phi: vec![id.clone(), id], f: vec![vec![0, 0], vec![0, 0]] };
        let e2 = build_extension(&k, &triv, &caps()).unwrap();
        assert_eq!(identify(e2.b()), "elementary abelian of order 4");
        assert_eq!(congruent(&e, &e2).unwrap(), None);
        assert_eq!(congruent(&e, &e).unwrap(), Some(vec![0, 0]));
    }

    #[test]
    fn invalid_factor_set_named() {
        let k = trivial_kernel(z(2), z(2));
        let id = vec![0, 1];
        let fs = FactorSet { phi: vec![id.clone(), id], f: vec![vec![0, 1], vec![0, 1]] };
        assert!(matches!(
            build_extension(&k, &fs, &caps()),
            Err(Error::FactorSetInvalid { equation: "normalization", .. })
        ));
    }

    #[test]
    fn s3_kernels_have_one_extension() {
        for pi in [z(2), z(3)] {
            for k in AbstractKernel::all(&pi, &FiniteGroup::symmetric(3), &caps()).unwrap() {
                let (_, exts) = enumerate_extensions(&k, &caps()).unwrap();
                assert_eq!(exts.len(), 1);
            }
        }
    }

    #[test]
    fn sign_relation_with_reduction() {
        let d4 = FiniteGroup::dihedral(4);
        for k in AbstractKernel::all(&z(2), &d4, &caps()).unwrap() {
            let cmp = compare_with_reduction(&k, &caps()).unwrap();
            assert!(cmp.pointwise_negated);
            assert!(cmp.classes_equal);
        }
    }
}
