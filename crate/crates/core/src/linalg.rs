//! Exact integer linear algebra.
//!
//! Two Smith-form routines live here. [`smith_normal_form`] works over the
//! integers and returns unimodular `U`, `V` with `U·M·V = D`. [`smith_mod`]
//! works over `Z/e`, where `e` is the exponent of every finite abelian group in
//! play; all cohomology quotients go through it so that entries never grow
//! past `e`.
//!
//! Subgroups of a finite abelian group `Z^m / R` are handled as lattices
//! `L ⊆ Z^m` with `eZ^m ⊆ L`, stored in echelon form with entries reduced
//! modulo `e`.

use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Determinant by fraction-free elimination (Bareiss). Square input only.
    pub fn determinant(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<i128>> = self.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        if n == 0 {
            1
        } else {
            sign * a[n - 1][n - 1]
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// rows (a, b) <- (p·a + q·b, r·a + s·b)
    fn combine_rows(&mut self, a: usize, b: usize, [p, q, r, s]: [i64; 4], modulus: Option<i64>) {
        for c in 0..self.cols {
            let x = self[(a, c)];
            let y = self[(b, c)];
            let (mut nx, mut ny) = (p * x + q * y, r * x + s * y);
            if let Some(e) = modulus {
                nx = nx.rem_euclid(e);
                ny = ny.rem_euclid(e);
            }
            self[(a, c)] = nx;
            self[(b, c)] = ny;
        }
    }

    /// cols (a, b) <- (p·a + q·b, r·a + s·b)
    fn combine_cols(&mut self, a: usize, b: usize, [p, q, r, s]: [i64; 4], modulus: Option<i64>) {
        for row in 0..self.rows {
            let x = self[(row, a)];
            let y = self[(row, b)];
            let (mut nx, mut ny) = (p * x + q * y, r * x + s * y);
            if let Some(e) = modulus {
                nx = nx.rem_euclid(e);
                ny = ny.rem_euclid(e);
            }
            self[(row, a)] = nx;
            self[(row, b)] = ny;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b) * b).abs()
    }
}

/// Returns `(g, s, t)` with `g = gcd(a, b) = s·a + t·b`, `g ≥ 0`.
/// When `a` divides `b` the coefficients are `(±1, 0)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if a != 0 && b % a == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (g, s, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| s.rem_euclid(m))
}

/// Integer Smith normal form `U·M·V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    /// Inverse of `u`, kept so that quotient generators can be lifted back.
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)]).collect()
    }
}

/// Smith normal form over the integers. `D` is diagonal with non-negative
/// entries `d₁ | d₂ | …`; `U`, `V` are unimodular.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest non-zero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a[(i, j)];
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            let p = a[(t, t)];
            for i in t + 1..rows {
                let q = a[(i, t)] / p;
                if q != 0 {
                    a.combine_rows(t, i, [1, 0, -q, 1], None);
                    u.combine_rows(t, i, [1, 0, -q, 1], None);
                    // inverse op on columns: col_t += q·col_i
                    u_inv.combine_cols(t, i, [1, q, 0, 1], None);
                }
                clean &= a[(i, t)] == 0;
            }
            for j in t + 1..cols {
                let q = a[(t, j)] / p;
                if q != 0 {
                    a.combine_cols(t, j, [1, 0, -q, 1], None);
                    v.combine_cols(t, j, [1, 0, -q, 1], None);
                }
                clean &= a[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[(i, j)] % p != 0));
            match offending {
                Some(i) => {
                    a.combine_rows(t, i, [1, 1, 0, 1], None);
                    u.combine_rows(t, i, [1, 1, 0, 1], None);
                    u_inv.combine_cols(t, i, [1, 0, -1, 1], None);
                }
                None => break,
            }
        }
        if a[(t, t)] < 0 {
            for c in 0..cols {
                a[(t, c)] = -a[(t, c)];
            }
            for c in 0..rows {
                u[(t, c)] = -u[(t, c)];
                u_inv[(c, t)] = -u_inv[(c, t)];
            }
        }
    }
    SmithForm { u, u_inv, d: a, v }
}

/// Smith form of a matrix over `Z/e`: `U·M·V ≡ D (mod e)` with `U`, `V`
/// invertible modulo `e`. The diagonal is not normalized; the cyclic factor
/// at position `i` is `Z/gcd(dᵢ, e)`.
#[derive(Clone, Debug)]
pub struct ModSmith {
    pub modulus: i64,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal entries, length `min(rows, cols)`.
    pub diag: Vec<i64>,
}

impl ModSmith {
    /// Size `gcd(dᵢ, e)` of the i-th diagonal ideal; `e` for a zero entry.
    pub fn ideal(&self, i: usize) -> i64 {
        gcd(self.diag[i], self.modulus)
    }
}

pub fn smith_mod(m: &IntMatrix, modulus: i64) -> ModSmith {
    assert!(modulus >= 1, "modulus must be positive");
    let e = modulus;
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    for x in a.data.iter_mut() {
        *x = x.rem_euclid(e);
    }
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut diag = vec![0; rows.min(cols)];
    if e == 1 {
        return ModSmith { modulus, u, u_inv, v, diag };
    }
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, i64)> = None;
        'search: for i in t..rows {
            for j in t..cols {
                let x = a[(i, j)];
                if x != 0 {
                    let g = gcd(x, e);
                    if best.is_none_or(|(_, _, bg)| g < bg) {
                        best = Some((i, j, g));
                        if g == 1 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            for i in t + 1..rows {
                let b = a[(i, t)];
                if b == 0 {
                    continue;
                }
                let p = a[(t, t)];
                let (g, s, q) = ext_gcd(p, b);
                let op = [s, q, -b / g, p / g];
                a.combine_rows(t, i, op, Some(e));
                u.combine_rows(t, i, op, Some(e));
                u_inv.combine_cols(t, i, [p / g, b / g, -q, s], Some(e));
            }
            for j in t + 1..cols {
                let b = a[(t, j)];
                if b == 0 {
                    continue;
                }
                let p = a[(t, t)];
                let (g, s, q) = ext_gcd(p, b);
                let op = [s, q, -b / g, p / g];
                a.combine_cols(t, j, op, Some(e));
                v.combine_cols(t, j, op, Some(e));
            }
            if (t + 1..rows).all(|i| a[(i, t)] == 0) {
                break;
            }
        }
        diag[t] = a[(t, t)];
    }
    ModSmith { modulus, u, u_inv, v, diag }
}

/// A sublattice `L` with `eZ^m ⊆ L ⊆ Z^m`, in echelon form: `basis[i]` is zero
/// before coordinate `i`, `basis[i][i]` divides `e`, later entries lie in `[0, e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    modulus: i64,
    basis: Vec<Vec<i64>>,
}

impl Lattice {
    /// The lattice generated by `gens` together with `eZ^m`.
    pub fn span<I>(dim: usize, modulus: i64, gens: I) -> Lattice
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        let e = modulus;
        let mut pool: Vec<Vec<i64>> = gens
            .into_iter()
            .map(|mut g| {
                assert_eq!(g.len(), dim, "generator dimension mismatch");
                g.iter_mut().for_each(|x| *x = x.rem_euclid(e));
                g
            })
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        let mut basis = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut pivot = vec![0; dim];
            pivot[i] = e;
            let mut next = Vec::with_capacity(pool.len());
            for mut w in pool.drain(..) {
                let b = w[i];
                if b != 0 {
                    let p = pivot[i];
                    let (g, s, q) = ext_gcd(p, b);
                    let (c, d) = (-b / g, p / g);
                    for k in i..dim {
                        let (x, y) = (pivot[k], w[k]);
                        pivot[k] = s * x + q * y;
                        w[k] = c * x + d * y;
                    }
                    pivot[i] = g;
                    w[i] = 0;
                    for k in i + 1..dim {
                        pivot[k] = pivot[k].rem_euclid(e);
                        w[k] = w[k].rem_euclid(e);
                    }
                }
                if w.iter().any(|&x| x != 0) {
                    next.push(w);
                }
            }
            pool = next;
            basis.push(pivot);
        }
        Lattice { modulus, basis }
    }

    /// The whole of `Z^m`.
    pub fn full(dim: usize, modulus: i64) -> Lattice {
        Lattice::span(dim, modulus, (0..dim).map(|i| unit(dim, i)))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Index `[Z^m : L]`.
    pub fn index(&self) -> i64 {
        (0..self.dim()).map(|i| self.basis[i][i]).product()
    }

    /// Coordinates of `v` in the echelon basis, reduced modulo `e`; `None` if `v ∉ L`.
    pub fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let e = self.modulus;
        let mut w: Vec<i64> = v.iter().map(|x| x.rem_euclid(e)).collect();
        let mut c = vec![0; self.dim()];
        for i in 0..self.dim() {
            let p = self.basis[i][i];
            if w[i] % p != 0 {
                return None;
            }
            let k = w[i] / p;
            c[i] = k.rem_euclid(e);
            for (wj, bj) in w.iter_mut().zip(&self.basis[i]).skip(i) {
                *wj = (*wj - k * bj).rem_euclid(e);
            }
        }
        Some(c)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coords(v).is_some()
    }

    /// The vector with the given echelon coordinates, reduced modulo `e`.
    pub fn combine(&self, coords: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o = (*o + c * x).rem_euclid(self.modulus);
            }
        }
        out
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

pub fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// The finite abelian group `upper / lower` for lattices `lower ⊆ upper`,
/// in invariant-factor form with a projection and chosen generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    upper: Lattice,
    /// Maps echelon coordinates of `upper` to invariant coordinates.
    transform: IntMatrix,
    factors: Vec<i64>,
    generators: Vec<Vec<i64>>,
}

impl Subquotient {
    pub fn new(upper: &Lattice, lower: &Lattice) -> Subquotient {
        assert_eq!(upper.modulus, lower.modulus, "lattices over different moduli");
        let e = upper.modulus;
        let m = upper.dim();
        let mut columns: Vec<Vec<i64>> = lower
            .basis
            .iter()
            .map(|b| upper.coords(b).expect("lower lattice must lie in upper lattice"))
            .collect();
        // coordinates are only defined modulo the kernel of the basis matrix mod e
        let basis = IntMatrix::from_columns(m, &upper.basis);
        let kernel = smith_mod(&basis, e);
        for i in 0..m {
            let g = if i < kernel.diag.len() { kernel.ideal(i) } else { e };
            if g > 1 {
                columns.push(kernel.v.column(i).into_iter().map(|x| (x * (e / g)).rem_euclid(e)).collect());
            }
        }
        let x = IntMatrix::from_columns(m, &columns);
        let snf = smith_mod(&x, e);
        // cyclic decomposition (not yet a divisor chain)
        let cyclic: Vec<(usize, i64)> = (0..m)
            .map(|i| (i, if i < snf.diag.len() { snf.ideal(i) } else { e }))
            .filter(|&(_, g)| g > 1)
            .collect();
        // canonicalize the cyclic orders into invariant factors with an integer SNF
        let k = cyclic.len();
        let mut diag = IntMatrix::zeros(k, k);
        for (j, &(_, g)) in cyclic.iter().enumerate() {
            diag[(j, j)] = g;
        }
        let chain = smith_normal_form(&diag);
        let keep: Vec<usize> = (0..k).filter(|&j| chain.d[(j, j)] > 1).collect();
        let factors: Vec<i64> = keep.iter().map(|&j| chain.d[(j, j)]).collect();

        // transform = chain.u (restricted to kept rows) · (rows of snf.u for cyclic positions)
        let mut transform = IntMatrix::zeros(keep.len(), m);
        for (r, &j) in keep.iter().enumerate() {
            for (l, &(pos, _)) in cyclic.iter().enumerate() {
                let coef = chain.u[(j, l)];
                if coef == 0 {
                    continue;
                }
                for c in 0..m {
                    transform[(r, c)] = (transform[(r, c)] + coef * snf.u[(pos, c)]).rem_euclid(e);
                }
            }
        }
        // generator for kept position j: Σ_l chain.u_inv[l][j] · (snf.u_inv column pos_l)
        let generators = keep
            .iter()
            .map(|&j| {
                let mut c = vec![0; m];
                for (l, &(pos, _)) in cyclic.iter().enumerate() {
                    let coef = chain.u_inv[(l, j)];
                    if coef == 0 {
                        continue;
                    }
                    for (row, cv) in c.iter_mut().enumerate() {
                        *cv = (*cv + coef * snf.u_inv[(row, pos)]).rem_euclid(e);
                    }
                }
                upper.combine(&c)
            })
            .collect();
        Subquotient { upper: upper.clone(), transform, factors, generators }
    }

    /// Invariant factors `d₁ | d₂ | …`, each at least 2.
    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> i64 {
        self.factors.iter().product()
    }

    /// Lifts of the unit coordinate vectors, as vectors in `Z^m` reduced modulo `e`.
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Class coordinates of `v`; `None` if `v` is not in the upper lattice.
    pub fn project(&self, v: &[i64]) -> Option<Vec<i64>> {
        let c = self.upper.coords(v)?;
        let y = self.transform.mul_vec(&c);
        Some(y.iter().zip(&self.factors).map(|(a, d)| a.rem_euclid(*d)).collect())
    }

    /// A lift of the class with the given coordinates.
    pub fn lift(&self, coords: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.upper.dim()];
        for (c, g) in coords.iter().zip(&self.generators) {
            for (o, x) in out.iter_mut().zip(g) {
                *o = (*o + c * x).rem_euclid(self.upper.modulus);
            }
        }
        out
    }

    /// All coordinate vectors of the quotient, in lexicographic order.
    pub fn all_coords(&self) -> Vec<Vec<i64>> {
        mixed_radix(&self.factors)
    }
}

/// All vectors `c` with `0 ≤ cᵢ < radix[i]`, first coordinate slowest.
pub fn mixed_radix(radix: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(radix.len())];
    for &r in radix {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}
