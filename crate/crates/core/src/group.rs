//! Finite groups given by Cayley tables, with the identity at index 0.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, GroupError, Result};
use crate::Caps;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates the group axioms. Witnesses name the first violation found.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: r, len: row.len(), expected: n });
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::NotClosed { row: r, col: c, value: v });
            }
        }
        if let Some(i) = (0..n).find(|&i| rows[0][i] != i || rows[i][0] != i) {
            return Err(GroupError::NoIdentityAtZero(i));
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| rows[a][b] == 0 && rows[b][a] == 0) {
                Some(b) => inverses[a] = b,
                None => return Err(GroupError::NoInverse(a)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b];
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table: rows.into_iter().flatten().collect(), inverses, names: None })
    }

    /// For tables produced internally from a known group law.
    pub(crate) fn from_table_unchecked(rows: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Self {
        let n = rows.len();
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let inverses = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("group law")).collect();
        FiniteGroup { order: n, table, inverses, names }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order, "one name per element");
        self.names = Some(names);
        self
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table_unchecked(rows, None)
    }

    /// Elements `(a, b)` indexed `a·|h| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (n, m) = (g.order, h.order);
        let rows = (0..n * m)
            .map(|x| (0..n * m).map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m)).collect())
            .collect();
        Self::from_table_unchecked(rows, None)
    }

    /// The group generated by permutations of `0..degree`, elements sorted
    /// lexicographically (so the identity comes first).
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Self {
        let id: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q: Vec<usize> = (0..degree).map(|i| p[g[i]]).collect();
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let perms: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: BTreeMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        // (p·q)(i) = p(q(i)): apply q first
        let rows = perms
            .iter()
            .map(|p| perms.iter().map(|q| index[&(0..degree).map(|i| p[q[i]]).collect::<Vec<_>>()]).collect())
            .collect();
        let names = perms.iter().map(|p| format!("{p:?}")).collect();
        Self::from_table_unchecked(rows, Some(names))
    }

    pub fn symmetric(n: usize) -> Self {
        if n <= 1 {
            return Self::trivial();
        }
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(n, &[swap, cycle])
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rot, refl])
    }

    /// Quaternion group of order 8, as permutations of its regular representation.
    pub fn quaternion() -> Self {
        // elements ±1, ±i, ±j, ±k encoded 0..8 as (sign, unit) with unit in {1,i,j,k}
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            const T: [[(bool, usize); 4]; 4] = [
                [(false, 0), (false, 1), (false, 2), (false, 3)],
                [(false, 1), (true, 0), (false, 3), (true, 2)],
                [(false, 2), (true, 3), (true, 0), (false, 1)],
                [(false, 3), (false, 2), (true, 1), (true, 0)],
            ];
            T[a][b]
        };
        let enc = |neg: bool, u: usize| u + if neg { 4 } else { 0 };
        let mul = |x: usize, y: usize| {
            let (neg, u) = unit_mul(x % 4, y % 4);
            enc(neg ^ (x >= 4) ^ (y >= 4), u)
        };
        let gens: Vec<Vec<usize>> = [1usize, 2].iter().map(|&g| (0..8).map(|x| mul(x, g)).collect()).collect();
        Self::from_permutations(8, &gens)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    /// Equal multiplication tables, ignoring element names.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// Counts of elements by order.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for a in 0..self.order {
            *out.entry(self.element_order(a)).or_insert(0) += 1;
        }
        out
    }

    /// Elements commuting with everything, sorted.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&c| (0..self.order).all(|a| self.mul(c, a) == self.mul(a, c))).collect()
    }

    /// `μ_c(x) = c·x·c⁻¹`.
    pub fn conjugation(&self, c: usize) -> Vec<usize> {
        let ci = self.inv(c);
        (0..self.order).map(|x| self.mul(self.mul(c, x), ci)).collect()
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Greedy generating set: repeatedly add the smallest element not yet generated.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = vec![0usize];
        while sub.len() < self.order {
            let next = (0..self.order).find(|x| sub.binary_search(x).is_err()).expect("proper subgroup");
            gens.push(next);
            sub = self.generated_subgroup(&gens);
        }
        gens
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&0) && elems.iter().all(|&a| elems.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).field("table", &self.rows()).finish()
    }
}

/// A homomorphism between finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::InvalidMap(format!("map has {} entries, source has order {}", map.len(), source.order())));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::InvalidMap(format!("image {v} out of range")));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), map: (0..g.order()).collect() }
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        GroupHom { source: source.clone(), target: target.clone(), map: vec![0; source.order()] }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::InvalidMap("composition of incompatible homomorphisms".into()));
        }
        Ok(GroupHom {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        (1..self.source.order()).all(|x| self.map[x] != 0)
    }

    pub fn is_surjective(&self) -> bool {
        self.map.iter().collect::<BTreeSet<_>>().len() == self.target.order()
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order()).filter(|&x| self.map[x] == 0).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        self.map.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }
}

/// All homomorphisms `source → target`, sorted by their maps.
pub fn homomorphisms(source: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupHom> {
    homomorphism_maps(source, target, false)
        .into_iter()
        .map(|map| GroupHom { source: source.clone(), target: target.clone(), map })
        .collect()
}

/// Backtracking over generator images; each candidate assignment is extended
/// along the Cayley graph and rejected on the first inconsistency.
fn homomorphism_maps(source: &FiniteGroup, target: &FiniteGroup, bijective: bool) -> Vec<Vec<usize>> {
    let gens = source.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let k = source.element_order(s);
            (0..target.order())
                .filter(|&t| {
                    let o = target.element_order(t);
                    if bijective {
                        o == k
                    } else {
                        k.is_multiple_of(o)
                    }
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        depth: usize,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        source: &FiniteGroup,
        target: &FiniteGroup,
        bijective: bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == gens.len() {
            if let Some(map) = extend(gens, images, source, target) {
                if !bijective || map.iter().collect::<BTreeSet<_>>().len() == map.len() {
                    out.push(map);
                }
            }
            return;
        }
        for &c in &candidates[depth] {
            images[depth] = c;
            rec(depth + 1, gens, candidates, images, source, target, bijective, out);
        }
    }
    rec(0, &gens, &candidates, &mut images, source, target, bijective, &mut out);
    out.sort();
    out
}

fn extend(gens: &[usize], images: &[usize], source: &FiniteGroup, target: &FiniteGroup) -> Option<Vec<usize>> {
    let n = source.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let fy = target.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}

/// The automorphism group of `G` with its inner subgroup and outer quotient.
#[derive(Clone, Debug)]
pub struct AutData {
    /// Automorphism maps sorted lexicographically; index 0 is the identity.
    pub maps: Vec<Vec<usize>>,
    /// Composition `a·b = a ∘ b` on indices of `maps`.
    pub aut: FiniteGroup,
    /// Sorted indices of inner automorphisms.
    pub inner: Vec<usize>,
    pub out: FiniteGroup,
    /// Lexicographically smallest automorphism in each outer class.
    pub out_reps: Vec<usize>,
    /// Outer class of each automorphism.
    pub out_class: Vec<usize>,
    lookup: BTreeMap<Vec<usize>, usize>,
}

impl AutData {
    pub fn compute(g: &FiniteGroup, caps: &Caps) -> Result<AutData> {
        if g.order() > caps.group_order {
            return Err(Error::CapExceeded { what: "group order", size: g.order(), cap: caps.group_order });
        }
        let maps = homomorphism_maps(g, g, true);
        let lookup: BTreeMap<Vec<usize>, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = maps.len();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| lookup[&maps[b].iter().map(|&x| maps[a][x]).collect::<Vec<_>>()]).collect())
            .collect();
        let aut = FiniteGroup::from_table_unchecked(rows, None);
        let inner: Vec<usize> =
            (0..g.order()).map(|c| lookup[&g.conjugation(c)]).collect::<BTreeSet<_>>().into_iter().collect();
        let mut out_class = vec![usize::MAX; n];
        let mut out_reps = Vec::new();
        for a in 0..n {
            if out_class[a] != usize::MAX {
                continue;
            }
            let id = out_reps.len();
            out_reps.push(a);
            for &i in &inner {
                out_class[aut.mul(a, i)] = id;
            }
        }
        let m = out_reps.len();
        let out_rows = (0..m)
            .map(|x| (0..m).map(|y| out_class[aut.mul(out_reps[x], out_reps[y])]).collect())
            .collect();
        let out = FiniteGroup::from_table_unchecked(out_rows, None);
        Ok(AutData { maps, aut, inner, out, out_reps, out_class, lookup })
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.lookup.get(map).copied()
    }

    pub fn is_inner(&self, a: usize) -> bool {
        self.inner.binary_search(&a).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_valid() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn bad_tables() {
        assert_eq!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]), Err(GroupError::NoInverse(1)));
        assert!(matches!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]), Err(GroupError::NotClosed { .. })));
        assert!(matches!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]), Err(GroupError::NoIdentityAtZero(_))));
        // a loop with inverses that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn s3_from_permutations_validates() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(FiniteGroup::from_table(s3.rows()).is_ok());
        assert!(!s3.is_abelian());
    }

    #[test]
    fn centers() {
        assert_eq!(FiniteGroup::cyclic(4).center(), vec![0, 1, 2, 3]);
        assert_eq!(FiniteGroup::symmetric(3).center(), vec![0]);
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.center().len(), 2);
        assert_eq!(FiniteGroup::quaternion().center().len(), 2);
    }

    #[test]
    fn automorphism_groups() {
        let caps = Caps::default();
        let a2 = AutData::compute(&FiniteGroup::cyclic(2), &caps).unwrap();
        assert_eq!(a2.aut.order(), 1);
        let a3 = AutData::compute(&FiniteGroup::cyclic(3), &caps).unwrap();
        assert_eq!((a3.aut.order(), a3.inner.len(), a3.out.order()), (2, 1, 2));
        let s3 = AutData::compute(&FiniteGroup::symmetric(3), &caps).unwrap();
        assert_eq!((s3.aut.order(), s3.inner.len(), s3.out.order()), (6, 6, 1));
        let q8 = AutData::compute(&FiniteGroup::quaternion(), &caps).unwrap();
        assert_eq!((q8.aut.order(), q8.inner.len(), q8.out.order()), (24, 4, 6));
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(AutData::compute(&v, &caps).unwrap().aut.order(), 6);
        assert_eq!(a3.out_reps[0], 0);
        assert_eq!(a3.maps[0], vec![0, 1, 2]);
    }

    #[test]
    fn cap_enforced() {
        let caps = Caps { group_order: 4, ..Caps::default() };
        assert!(matches!(AutData::compute(&FiniteGroup::cyclic(5), &caps), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn hom_counts() {
        // |Hom(Z_m, Z_n)| = gcd(m, n)
        for m in 1..7 {
            for n in 1..7 {
                let hs = homomorphisms(&FiniteGroup::cyclic(m), &FiniteGroup::cyclic(n));
                assert_eq!(hs.len(), crate::linalg::gcd(m as i64, n as i64) as usize);
            }
        }
        assert_eq!(homomorphisms(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(2)).len(), 1);
    }
}
