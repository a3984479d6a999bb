//! Finite abelian groups `Z/d₁ ⊕ … ⊕ Z/d_r` with `d₁ | … | d_r`, and
//! homomorphisms between them given by integer matrices.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{gcd, lcm, mixed_radix, smith_mod, unit, IntMatrix, Lattice, Subquotient};

/// An element, as a coordinate vector reduced modulo the invariant factors.
pub type Elem = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    factors: Vec<i64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<i64>) -> Result<Self> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidFactors(format!("invariant factor {d} is smaller than 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidFactors(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    /// A direct sum of cyclic groups of the given orders (each at least 2),
    /// kept in the given order rather than normalized.
    pub(crate) fn from_factors_unchecked(factors: Vec<i64>) -> Self {
        debug_assert!(factors.iter().all(|&d| d >= 2));
        FiniteAbelianGroup { factors }
    }

    pub fn cyclic(n: i64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FiniteAbelianGroup { factors: vec![n] }
        }
    }

    /// Canonical form of an arbitrary direct sum of cyclic groups.
    pub fn from_cyclic_orders(orders: &[i64]) -> Self {
        let k = orders.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, &d) in orders.iter().enumerate() {
            m[(i, i)] = d;
        }
        let snf = crate::linalg::smith_normal_form(&m);
        let factors = snf.diagonal().into_iter().filter(|&d| d > 1).collect();
        FiniteAbelianGroup { factors }
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> i64 {
        self.factors.iter().product()
    }

    /// Least common multiple of the factors; 1 for the trivial group.
    pub fn exponent(&self) -> i64 {
        self.factors.iter().fold(1, |a, &d| lcm(a, d))
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, v: &[i64]) -> Elem {
        v.iter().zip(&self.factors).map(|(x, d)| x.rem_euclid(*d)).collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Elem {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x + y).rem_euclid(*d)).collect()
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Elem {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x - y).rem_euclid(*d)).collect()
    }

    pub fn neg(&self, a: &[i64]) -> Elem {
        a.iter().zip(&self.factors).map(|(x, d)| (-x).rem_euclid(*d)).collect()
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Elem {
        a.iter().zip(&self.factors).map(|(x, d)| (k * x).rem_euclid(*d)).collect()
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Order of an element.
    pub fn element_order(&self, a: &[i64]) -> i64 {
        a.iter().zip(&self.factors).fold(1, |acc, (x, d)| lcm(acc, d / gcd(*x, *d)))
    }

    /// All elements, in index order (see [`Self::index_of`]).
    pub fn elements(&self) -> Vec<Elem> {
        mixed_radix(&self.factors)
    }

    /// Mixed-radix index with the first coordinate most significant; zero is index 0.
    pub fn index_of(&self, a: &[i64]) -> usize {
        a.iter().zip(&self.factors).fold(0usize, |acc, (x, d)| acc * (*d as usize) + (x.rem_euclid(*d) as usize))
    }

    pub fn element(&self, mut index: usize) -> Elem {
        let mut out = vec![0; self.rank()];
        for (slot, d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (index % (*d as usize)) as i64;
            index /= *d as usize;
        }
        out
    }

    /// The group as an abstract finite group on element indices.
    pub fn to_finite_group(&self) -> FiniteGroup {
        let elems = self.elements();
        let n = elems.len();
        let table = (0..n)
            .map(|i| (0..n).map(|j| self.index_of(&self.add(&elems[i], &elems[j]))).collect())
            .collect();
        let names = elems.iter().map(|e| format!("{e:?}")).collect();
        FiniteGroup::from_table_unchecked(table, Some(names))
    }

    /// Relation lattice `⊕ dᵢZ` inside `Z^r`, with modulus the exponent.
    pub fn relations(&self) -> Lattice {
        let r = self.rank();
        Lattice::span(
            r,
            self.exponent(),
            self.factors.iter().enumerate().map(|(i, &d)| {
                let mut v = unit(r, i);
                v[i] = d;
                v
            }),
        )
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// An additive map between finite abelian groups: column `j` is the image of
/// the `j`-th generator of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianHom {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    matrix: IntMatrix,
}

impl AbelianHom {
    /// Checks shape and well-definedness (`dⱼ·column j ≡ 0` in the target).
    pub fn new(source: FiniteAbelianGroup, target: FiniteAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::InvalidMap(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        let mut reduced = IntMatrix::zeros(matrix.rows(), matrix.cols());
        for j in 0..matrix.cols() {
            let col = target.reduce(&matrix.column(j));
            let dj = source.factors[j];
            if !target.is_zero(&target.scale(dj, &col)) {
                return Err(Error::InvalidMap(format!(
                    "generator {j} has order {dj} but its image {col:?} does not"
                )));
            }
            for (i, x) in col.into_iter().enumerate() {
                reduced[(i, j)] = x;
            }
        }
        Ok(AbelianHom { source, target, matrix: reduced })
    }

    /// For matrices built from a known-additive formula; entries are reduced.
    pub(crate) fn from_matrix_unchecked(source: FiniteAbelianGroup, target: FiniteAbelianGroup, mut matrix: IntMatrix) -> Self {
        for i in 0..matrix.rows() {
            let d = target.factors[i];
            for j in 0..matrix.cols() {
                matrix[(i, j)] = matrix[(i, j)].rem_euclid(d);
            }
        }
        AbelianHom { source, target, matrix }
    }

    pub fn identity(g: &FiniteAbelianGroup) -> Self {
        AbelianHom { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.rank()) }
    }

    pub fn zero(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Self {
        AbelianHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.rank(), source.rank()),
        }
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, a: &[i64]) -> Elem {
        self.target.reduce(&self.matrix.mul_vec(a))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AbelianHom) -> Result<AbelianHom> {
        if other.target != self.source {
            return Err(Error::InvalidMap("composition of incompatible maps".into()));
        }
        AbelianHom::new(other.source.clone(), self.target.clone(), self.matrix.mul(&other.matrix))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.kernel().index() == self.source.relations().index()
    }

    fn modulus(&self) -> i64 {
        lcm(self.source.exponent(), self.target.exponent())
    }

    /// Rows scaled by `e/bₖ` so that the target condition becomes `≡ 0 (mod e)`.
    fn scaled(&self, e: i64) -> IntMatrix {
        let mut m = self.matrix.clone();
        for (i, &b) in self.target.factors.iter().enumerate() {
            for j in 0..m.cols() {
                m[(i, j)] *= e / b;
            }
        }
        m
    }

    /// Some `x` with `self(x) = y`, or `None` when `y` is outside the image.
    pub fn preimage(&self, y: &[i64]) -> Option<Elem> {
        let e = self.modulus();
        let (r, c) = (self.matrix.rows(), self.matrix.cols());
        let snf = smith_mod(&self.scaled(e), e);
        let scaled_y: Vec<i64> = y.iter().zip(&self.target.factors).map(|(v, b)| v * (e / b)).collect();
        let w: Vec<i64> = snf.u.mul_vec(&scaled_y).into_iter().map(|x| x.rem_euclid(e)).collect();
        let mut z = vec![0i64; c];
        for i in 0..r {
            let d = if i < snf.diag.len() { snf.diag[i] } else { 0 };
            let g = gcd(d, e);
            if w[i] % g != 0 {
                return None;
            }
            if d != 0 {
                let m = e / g;
                let inv = crate::linalg::mod_inverse(d / g, m).unwrap_or(0);
                z[i] = ((w[i] / g) * inv).rem_euclid(m.max(1));
            }
        }
        let x = self.source.reduce(&snf.v.mul_vec(&z));
        debug_assert_eq!(self.apply(&x), self.target.reduce(y));
        Some(x)
    }

    /// The kernel, as a lattice in the source coordinates (containing the relations).
    pub fn kernel(&self) -> Lattice {
        let e = self.modulus();
        let (r, c) = (self.matrix.rows(), self.matrix.cols());
        let snf = smith_mod(&self.scaled(e), e);
        let mut gens: Vec<Vec<i64>> = (0..c)
            .map(|i| {
                let g = if i < r.min(c) { gcd(snf.diag[i], e) } else { e };
                snf.v.column(i).into_iter().map(|x| x * (e / g)).collect()
            })
            .collect();
        gens.extend(self.source.relations().basis().iter().cloned());
        Lattice::span(c, e, gens)
    }

    /// The image, as a lattice in the target coordinates (containing the relations).
    pub fn image(&self) -> Lattice {
        let e = self.target.exponent();
        let mut gens: Vec<Vec<i64>> = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        gens.extend(self.target.relations().basis().iter().cloned());
        Lattice::span(self.target.rank(), e, gens)
    }

    /// The cokernel `target / image`, with its projection.
    pub fn cokernel(&self) -> Subquotient {
        let e = self.target.exponent();
        Subquotient::new(&Lattice::full(self.target.rank(), e), &self.image())
    }

    /// All elements of the kernel (enumerated; intended for small groups).
    pub fn kernel_elements(&self) -> Vec<Elem> {
        let ker = Subquotient::new(&self.kernel(), &self.source.relations());
        let mut out: Vec<Elem> = ker.all_coords().iter().map(|c| self.source.reduce(&ker.lift(c))).collect();
        out.sort_by_key(|a| self.source.index_of(a));
        out
    }
}

/// Every homomorphism `source → target`, ordered by the generator images.
pub fn homomorphisms(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Vec<AbelianHom> {
    let elems = target.elements();
    let radix = vec![elems.len() as i64; source.rank()];
    mixed_radix(&radix)
        .into_iter()
        .filter_map(|choice| {
            let cols: Vec<Vec<i64>> = choice.iter().map(|&i| elems[i as usize].clone()).collect();
            AbelianHom::new(source.clone(), target.clone(), IntMatrix::from_columns(target.rank(), &cols)).ok()
        })
        .collect()
}

/// Every isomorphism `source → target`.
pub fn isomorphisms(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Vec<AbelianHom> {
    if source.factors() != target.factors() {
        return Vec::new();
    }
    homomorphisms(source, target).into_iter().filter(AbelianHom::is_bijective).collect()
}

/// An abelian subgroup of a [`FiniteGroup`] identified with its invariant-factor form.
#[derive(Clone, Debug)]
pub struct AbelianIso {
    group: FiniteAbelianGroup,
    elements: Vec<usize>,
    coords: Vec<Elem>,
    lookup: BTreeMap<Elem, usize>,
}

impl AbelianIso {
    /// `subgroup` must be a commutative subgroup of `g` containing the identity.
    pub fn new(g: &FiniteGroup, subgroup: &[usize]) -> AbelianIso {
        let n = subgroup.len();
        let pos: BTreeMap<usize, usize> = subgroup.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let exponent = subgroup.iter().fold(1i64, |acc, &x| lcm(acc, g.element_order(x) as i64));
        // presentation: one generator per element, relations e_a + e_b - e_ab and e_identity
        let mut rels = Vec::with_capacity(n * n + 1);
        rels.push(unit(n, pos[&0]));
        for (i, &a) in subgroup.iter().enumerate() {
            for (j, &b) in subgroup.iter().enumerate() {
                let mut v = vec![0; n];
                v[i] += 1;
                v[j] += 1;
                v[pos[&g.mul(a, b)]] -= 1;
                rels.push(v);
            }
        }
        let quotient = Subquotient::new(&Lattice::full(n, exponent), &Lattice::span(n, exponent, rels));
        let group = FiniteAbelianGroup { factors: quotient.factors().to_vec() };
        let coords: Vec<Elem> = (0..n).map(|i| quotient.project(&unit(n, i)).expect("full lattice")).collect();
        let lookup: BTreeMap<Elem, usize> = coords.iter().cloned().zip(subgroup.iter().copied()).collect();
        assert_eq!(lookup.len(), n, "presentation did not separate elements");
        AbelianIso { group, elements: subgroup.to_vec(), coords, lookup }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Coordinates of a subgroup element, `None` if it is not in the subgroup.
    pub fn to_coords(&self, element: usize) -> Option<&Elem> {
        self.elements.iter().position(|&x| x == element).map(|i| &self.coords[i])
    }

    pub fn to_element(&self, coords: &[i64]) -> usize {
        self.lookup[&self.group.reduce(coords)]
    }
}
