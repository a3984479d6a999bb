//! Normalized cochains with coefficients in a finite `Π`-module, the
//! coboundary, and cohomology in degrees 1–3.
//!
//! The coboundary is
//!
//! ```text
//! (∂c)(x₁,…,x_{n+1}) = x₁·c(x₂,…) + Σᵢ (-1)ⁱ c(…, xᵢx_{i+1}, …) + (-1)^{n+1} c(x₁,…,xₙ)
//! ```
//!
//! so in degree 2 it reads `x·g(y,z) − g(xy,z) + g(x,yz) − g(x,y)`, the
//! orientation under which a skeletal associator satisfies the pentagon
//! exactly when `∂h = 0`.

use std::collections::BTreeMap;

use crate::abelian::{AbelianHom, Elem, FiniteAbelianGroup};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::linalg::{IntMatrix, Subquotient};
use crate::Caps;

/// A finite abelian group with a left action of `Π` by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiModule {
    pi: FiniteGroup,
    coeff: FiniteAbelianGroup,
    action: Vec<IntMatrix>,
}

impl PiModule {
    /// `action[x]` is the matrix of `a ↦ x·a` on coordinate vectors.
    pub fn new(pi: FiniteGroup, coeff: FiniteAbelianGroup, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != pi.order() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                pi.order()
            )));
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(x, m)| {
                AbelianHom::new(coeff.clone(), coeff.clone(), m)
                    .map(|h| h.matrix().clone())
                    .map_err(|e| Error::InvalidModule(format!("action of element {x}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let module = PiModule { pi, coeff, action };
        let k = module.coeff.rank();
        for j in 0..k {
            let e = crate::linalg::unit(k, j);
            if module.act(0, &e) != e {
                return Err(Error::InvalidModule("identity does not act trivially".into()));
            }
            for x in 0..module.pi.order() {
                for y in 0..module.pi.order() {
                    let lhs = module.act(module.pi.mul(x, y), &e);
                    let rhs = module.act(x, &module.act(y, &e));
                    if lhs != rhs {
                        return Err(Error::InvalidModule(format!(
                            "action is not multiplicative at ({x}, {y}) on generator {j}"
                        )));
                    }
                }
            }
        }
        Ok(module)
    }

    pub fn trivial(pi: FiniteGroup, coeff: FiniteAbelianGroup) -> Self {
        let action = vec![IntMatrix::identity(coeff.rank()); pi.order()];
        PiModule { pi, coeff, action }
    }

    pub fn pi(&self) -> &FiniteGroup {
        &self.pi
    }

    pub fn coeff(&self) -> &FiniteAbelianGroup {
        &self.coeff
    }

    pub fn action_matrix(&self, x: usize) -> &IntMatrix {
        &self.action[x]
    }

    pub fn act(&self, x: usize, a: &[i64]) -> Elem {
        self.coeff.reduce(&self.action[x].mul_vec(a))
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = IntMatrix::identity(self.coeff.rank());
        self.action.iter().all(|m| *m == id)
    }

    /// The module over `phi.source()` with `x·a = φ(x)·a`.
    pub fn restrict(&self, phi: &GroupHom) -> Result<PiModule> {
        if !phi.target().same_table(&self.pi) {
            return Err(Error::InvalidModule("restriction along a map into a different group".into()));
        }
        Ok(PiModule {
            pi: phi.source().clone(),
            coeff: self.coeff.clone(),
            action: phi.map().iter().map(|&y| self.action[y].clone()).collect(),
        })
    }

    /// Number of non-identity `degree`-tuples.
    pub fn tuple_count(&self, degree: usize) -> usize {
        (self.pi.order() - 1).pow(degree as u32)
    }

    /// `C^n(Π, A)` as a finite abelian group on dense coordinates.
    pub fn cochain_space(&self, degree: usize) -> FiniteAbelianGroup {
        let factors = (0..self.tuple_count(degree)).flat_map(|_| self.coeff.factors().iter().copied()).collect();
        FiniteAbelianGroup::from_factors_unchecked(factors)
    }

    fn check_size(&self, degree: usize, caps: &Caps) -> Result<()> {
        if self.pi.order() > caps.group_order {
            return Err(Error::CapExceeded { what: "group order", size: self.pi.order(), cap: caps.group_order });
        }
        let dim = self.tuple_count(degree + 1) * self.coeff.rank();
        if dim > caps.cochain_dim {
            return Err(Error::CapExceeded { what: "cochain dimension", size: dim, cap: caps.cochain_dim });
        }
        Ok(())
    }
}

/// All tuples of non-identity elements of a group of order `n`, lexicographic.
pub fn tuples(n: usize, degree: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = (n.saturating_sub(1)).pow(degree as u32);
    (0..count).map(move |mut idx| {
        let mut t = vec![0; degree];
        for slot in t.iter_mut().rev() {
            *slot = idx % (n - 1) + 1;
            idx /= n - 1;
        }
        t
    })
}

pub(crate) fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * (n - 1) + (x - 1))
}

/// A normalized cochain: a map from `degree`-tuples to coefficients that
/// vanishes on every tuple containing the identity. Zero values are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    values: BTreeMap<Vec<usize>, Elem>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain { degree, values: BTreeMap::new() }
    }

    /// Builds a cochain from explicit entries, rejecting non-normalized data.
    pub fn from_entries<I>(m: &PiModule, degree: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Elem)>,
    {
        let mut values = BTreeMap::new();
        for (args, v) in entries {
            if args.len() != degree || args.iter().any(|&x| x >= m.pi.order()) {
                return Err(Error::InvalidMap(format!("bad cochain argument {args:?} for degree {degree}")));
            }
            if v.len() != m.coeff.rank() {
                return Err(Error::InvalidMap(format!("value {v:?} has the wrong length")));
            }
            let v = m.coeff.reduce(&v);
            if m.coeff.is_zero(&v) {
                continue;
            }
            if args.contains(&0) {
                return Err(Error::NotNormalized { witness: args });
            }
            values.insert(args, v);
        }
        Ok(Cochain { degree, values })
    }

    /// Evaluates `f` on every non-identity tuple.
    pub fn from_fn<F>(m: &PiModule, degree: usize, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> Elem,
    {
        let values = tuples(m.pi.order(), degree)
            .filter_map(|t| {
                let v = m.coeff.reduce(&f(&t));
                (!m.coeff.is_zero(&v)).then_some((t, v))
            })
            .collect();
        Cochain { degree, values }
    }

    /// Checks that every stored entry fits `m` (arguments in range, values of the right length).
    pub fn validate(&self, m: &PiModule) -> Result<()> {
        for (args, v) in &self.values {
            if args.len() != self.degree || args.iter().any(|&x| x == 0 || x >= m.pi.order()) {
                return Err(Error::InvalidMap(format!("cochain argument {args:?} does not fit the module")));
            }
            if v.len() != m.coeff.rank() || m.coeff.reduce(v) != *v {
                return Err(Error::InvalidMap(format!("cochain value {v:?} is not a reduced coefficient")));
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Elem> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, coeff: &FiniteAbelianGroup, args: &[usize]) -> Elem {
        self.values.get(args).cloned().unwrap_or_else(|| coeff.zero())
    }

    fn zip_with(&self, m: &PiModule, other: &Cochain, op: impl Fn(&[i64], &[i64]) -> Elem) -> Cochain {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        Cochain::from_fn(m, self.degree, |t| op(&self.get(&m.coeff, t), &other.get(&m.coeff, t)))
    }

    pub fn add(&self, m: &PiModule, other: &Cochain) -> Cochain {
        self.zip_with(m, other, |a, b| m.coeff.add(a, b))
    }

    pub fn sub(&self, m: &PiModule, other: &Cochain) -> Cochain {
        self.zip_with(m, other, |a, b| m.coeff.sub(a, b))
    }

    pub fn neg(&self, m: &PiModule) -> Cochain {
        Cochain::from_fn(m, self.degree, |t| m.coeff.neg(&self.get(&m.coeff, t)))
    }

    pub fn scale(&self, m: &PiModule, k: i64) -> Cochain {
        Cochain::from_fn(m, self.degree, |t| m.coeff.scale(k, &self.get(&m.coeff, t)))
    }

    pub fn to_dense(&self, m: &PiModule) -> Vec<i64> {
        let k = m.coeff.rank();
        let mut out = vec![0; m.tuple_count(self.degree) * k];
        for (t, v) in &self.values {
            let i = tuple_index(m.pi.order(), t);
            out[i * k..(i + 1) * k].copy_from_slice(v);
        }
        out
    }

    pub fn from_dense(m: &PiModule, degree: usize, v: &[i64]) -> Cochain {
        let k = m.coeff.rank();
        Cochain::from_fn(m, degree, |t| {
            let i = tuple_index(m.pi.order(), t);
            v[i * k..(i + 1) * k].to_vec()
        })
    }
}

/// Matrix of `∂: Cⁿ → Cⁿ⁺¹` on dense coordinates.
pub fn coboundary_matrix(m: &PiModule, degree: usize) -> Result<AbelianHom> {
    if degree > 3 {
        return Err(Error::DegreeTooHigh(degree));
    }
    let n = m.pi.order();
    let k = m.coeff.rank();
    let rows = m.tuple_count(degree + 1) * k;
    let cols = m.tuple_count(degree) * k;
    let mut mat = IntMatrix::zeros(rows, cols);
    for t in tuples(n, degree + 1) {
        let ti = tuple_index(n, &t);
        // x₁ acting on the tail
        let si = tuple_index(n, &t[1..]);
        let act = &m.action[t[0]];
        for i in 0..k {
            for j in 0..k {
                mat[(ti * k + i, si * k + j)] += act[(i, j)];
            }
        }
        for p in 0..degree {
            let prod = m.pi.mul(t[p], t[p + 1]);
            if prod == 0 {
                continue;
            }
            let mut merged = Vec::with_capacity(degree);
            merged.extend_from_slice(&t[..p]);
            merged.push(prod);
            merged.extend_from_slice(&t[p + 2..]);
            let mi = tuple_index(n, &merged);
            let sign = if p % 2 == 0 { -1 } else { 1 };
            for i in 0..k {
                mat[(ti * k + i, mi * k + i)] += sign;
            }
        }
        let li = tuple_index(n, &t[..degree]);
        let sign = if degree.is_multiple_of(2) { -1 } else { 1 };
        for i in 0..k {
            mat[(ti * k + i, li * k + i)] += sign;
        }
    }
    Ok(AbelianHom::from_matrix_unchecked(m.cochain_space(degree), m.cochain_space(degree + 1), mat))
}

pub fn coboundary(m: &PiModule, c: &Cochain) -> Result<Cochain> {
    let d = coboundary_matrix(m, c.degree)?;
    Ok(Cochain::from_dense(m, c.degree + 1, &d.apply(&c.to_dense(m))))
}

/// `None` if `c` is a cocycle, otherwise the first tuple where `∂c ≠ 0`.
pub fn cocycle_witness(m: &PiModule, c: &Cochain) -> Result<Option<Vec<usize>>> {
    Ok(coboundary(m, c)?.values.keys().next().cloned())
}

pub fn is_cocycle(m: &PiModule, c: &Cochain) -> Result<bool> {
    Ok(cocycle_witness(m, c)?.is_none())
}

/// `Hⁿ(Π, A)` with a projection onto class coordinates and one cocycle per generator.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    module: PiModule,
    quotient: Subquotient,
    representatives: Vec<Cochain>,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &PiModule {
        &self.module
    }

    pub fn invariant_factors(&self) -> &[i64] {
        self.quotient.factors()
    }

    pub fn order(&self) -> i64 {
        self.quotient.order()
    }

    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    /// Class coordinates of a cocycle.
    pub fn project(&self, c: &Cochain) -> Result<Vec<i64>> {
        if c.degree != self.degree {
            return Err(Error::InvalidMap(format!("expected a {}-cochain", self.degree)));
        }
        self.quotient.project(&c.to_dense(&self.module)).ok_or_else(|| Error::NotACocycle {
            witness: cocycle_witness(&self.module, c).ok().flatten().unwrap_or_default(),
        })
    }

    /// The cocycle `Σ coordsᵢ · repᵢ`.
    pub fn class_cocycle(&self, coords: &[i64]) -> Cochain {
        let v = self.module.cochain_space(self.degree).reduce(&self.quotient.lift(coords));
        Cochain::from_dense(&self.module, self.degree, &v)
    }

    /// Every class, with its coordinates, in lexicographic coordinate order.
    pub fn classes(&self) -> Vec<(Vec<i64>, Cochain)> {
        self.quotient.all_coords().into_iter().map(|c| (c.clone(), self.class_cocycle(&c))).collect()
    }
}

pub fn cohomology_group(m: &PiModule, degree: usize, caps: &Caps) -> Result<CohomologyGroup> {
    if !(1..=3).contains(&degree) {
        return Err(Error::DegreeTooHigh(degree));
    }
    m.check_size(degree, caps)?;
    let upper = coboundary_matrix(m, degree)?.kernel();
    let lower = coboundary_matrix(m, degree - 1)?.image();
    let quotient = Subquotient::new(&upper, &lower);
    let space = m.cochain_space(degree);
    let representatives: Vec<Cochain> =
        quotient.generators().iter().map(|g| Cochain::from_dense(m, degree, &space.reduce(g))).collect();
    debug_assert!(representatives.iter().all(|r| is_cocycle(m, r).unwrap_or(false)));
    Ok(CohomologyGroup { degree, module: m.clone(), quotient, representatives })
}

/// All cocycles `Zⁿ(Π, A)`, sorted by dense coordinates.
pub fn cocycles(m: &PiModule, degree: usize, caps: &Caps) -> Result<Vec<Cochain>> {
    m.check_size(degree, caps)?;
    let d = coboundary_matrix(m, degree)?;
    Ok(d.kernel_elements().iter().map(|v| Cochain::from_dense(m, degree, v)).collect())
}

/// Solves `∂t = c` for a cocycle `c`; `None` exactly when `[c] ≠ 0`.
pub fn class_solve(m: &PiModule, c: &Cochain, caps: &Caps) -> Result<Option<Cochain>> {
    if c.degree == 0 || c.degree > 3 {
        return Err(Error::DegreeTooHigh(c.degree));
    }
    m.check_size(c.degree, caps)?;
    if let Some(witness) = cocycle_witness(m, c)? {
        return Err(Error::NotACocycle { witness });
    }
    let d = coboundary_matrix(m, c.degree - 1)?;
    Ok(d.preimage(&c.to_dense(m)).map(|t| Cochain::from_dense(m, c.degree - 1, &t)))
}

/// Checks `f(x·a) = φ(x)·f(a)` on generators of `A`.
pub fn check_equivariant(source: &PiModule, target: &PiModule, phi: &GroupHom, f: &AbelianHom) -> Result<()> {
    if !phi.source().same_table(source.pi()) || !phi.target().same_table(target.pi()) {
        return Err(Error::InvalidMap("phi does not connect the two module groups".into()));
    }
    if f.source() != source.coeff() || f.target() != target.coeff() {
        return Err(Error::InvalidMap("f does not connect the two coefficient groups".into()));
    }
    let k = source.coeff().rank();
    for x in 0..source.pi().order() {
        for j in 0..k {
            let e = crate::linalg::unit(k, j);
            if f.apply(&source.act(x, &e)) != target.act(phi.apply(x), &f.apply(&e)) {
                return Err(Error::NotEquivariant { x, generator: j });
            }
        }
    }
    Ok(())
}

/// `(f_*c)(x…) = f(c(x…))`, a cochain in `target` restricted along `phi`.
pub fn pushforward(source: &PiModule, target: &PiModule, phi: &GroupHom, f: &AbelianHom, c: &Cochain) -> Result<Cochain> {
    check_equivariant(source, target, phi, f)?;
    let values = c
        .values
        .iter()
        .filter_map(|(t, v)| {
            let w = f.apply(v);
            (!f.target().is_zero(&w)).then(|| (t.clone(), w))
        })
        .collect();
    Ok(Cochain { degree: c.degree, values })
}

/// `(φ*c)(x…) = c(φx…)`, a cochain over `phi.source()`.
pub fn pullback(phi: &GroupHom, c: &Cochain) -> Cochain {
    let n = phi.source().order();
    let values = tuples(n, c.degree)
        .filter_map(|t| {
            let image: Vec<usize> = t.iter().map(|&x| phi.apply(x)).collect();
            c.values.get(&image).map(|v| (t, v.clone()))
        })
        .collect();
    Cochain { degree: c.degree, values }
}
