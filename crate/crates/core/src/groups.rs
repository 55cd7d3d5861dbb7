//! Finite groups as dense multiplication tables.
//!
//! Elements are addressed by `usize` indices `0..order`, with the identity
//! pinned at index 0. Every higher layer of the crate talks about group
//! elements exclusively through these indices, so a table that passes
//! [`FiniteGroup::from_table`] is trusted everywhere else.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("multiplication table is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("not a group: no two-sided identity element")]
    NoIdentity,
    #[error("not a group: element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("not a group: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("group family `{family}` needs a positive parameter (got {n})")]
    BadParameter { family: String, n: usize },
    #[error("embedding map has {got} entries but H has order {expected}")]
    MapSizeMismatch { got: usize, expected: usize },
    #[error("embedding sends {h} to ({g1}, {g2}), outside G x G")]
    MapOutOfRange { h: usize, g1: usize, g2: usize },
    #[error("not a homomorphism: iota({a}*{b}) != iota({a})*iota({b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("not injective: iota({a}) == iota({b})")]
    NotInjective { a: usize, b: usize },
    #[error("not an action: {reason} (group element {g}, {h}; point {x})")]
    NotAnAction { reason: &'static str, g: usize, h: usize, x: usize },
    #[error("element list {0:?} is not closed under multiplication")]
    NotASubgroup(Vec<usize>),
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a square table and returns the group it defines.
    ///
    /// If the identity is not at index 0 the labels of the identity and of
    /// element 0 are swapped. Failures report indices in the caller's labels.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: r, len: row.len(), expected: n });
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::EntryOutOfRange { row: r, col: c, value: v });
            }
        }
        let at = |a: usize, b: usize| rows[a][b];

        let e = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        for x in 0..n {
            if !(0..n).any(|y| at(x, y) == e && at(y, x) == e) {
                return Err(GroupError::NoInverse { element: x });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        // swap labels e <-> 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(at(a, b));
            }
        }
        Ok(Self::from_flat_unchecked(n, table))
    }

    /// Builds a group from a flat table already known to be valid with the
    /// identity at 0.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>) -> Self {
        let inverse = (0..order)
            .map(|x| (0..order).find(|&y| table[x * order + y] == 0).expect("valid group"))
            .collect();
        Self { order, table, inverse }
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// Product of a sequence, multiplied left to right.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
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

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Realizes a closed element list as a group in its own right.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.first() != Some(&0) || elems.iter().any(|&x| x >= self.order) {
            return Err(GroupError::NotASubgroup(elems));
        }
        let mut local = vec![usize::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            local[x] = i;
        }
        let k = elems.len();
        let mut table = vec![0; k * k];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                let p = local[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(GroupError::NotASubgroup(elems));
                }
                table[i * k + j] = p;
            }
        }
        Ok(Subgroup { group: Self::from_flat_unchecked(k, table), elements: elems })
    }

    /// Direct product `self x other`; the pair `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let nm = n * m;
        let mut table = vec![0; nm * nm];
        for x in 0..nm {
            for y in 0..nm {
                let (a1, b1) = (x / m, x % m);
                let (a2, b2) = (y / m, y % m);
                table[x * nm + y] = self.mul(a1, a2) * m + other.mul(b1, b2);
            }
        }
        Self::from_flat_unchecked(nm, table)
    }

    /// All subgroups generated by at most two elements, sorted by order and
    /// then lexicographically by element list.
    pub fn two_generated_subgroups(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        for a in self.elements() {
            for b in a..self.order {
                seen.insert(self.closure(&[a, b]));
            }
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        out
    }
}

/// A subgroup realized as a group, with the map back to ambient indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub group: FiniteGroup,
    /// `elements[i]` is the ambient index of local element `i`; sorted, starts at 0.
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn local_index(&self, ambient: usize) -> Option<usize> {
        self.elements.binary_search(&ambient).ok()
    }
}

/// Cyclic group `Z/n` with `table[a][b] = (a + b) mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0, "cyclic group of order 0");
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FiniteGroup::from_flat_unchecked(n, table)
}

/// Dihedral group of order `2n`. Element `r^k s^j` has index `k + n*j`,
/// with `s r s = r^{-1}`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n > 0, "dihedral group with n = 0");
    let size = 2 * n;
    let mut table = vec![0; size * size];
    for x in 0..size {
        let (k1, j1) = (x % n, x / n);
        for y in 0..size {
            let (k2, j2) = (y % n, y / n);
            // r^k1 s^j1 r^k2 s^j2 = r^(k1 +- k2) s^(j1+j2)
            let k = if j1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            table[x * size + y] = k + n * ((j1 + j2) % 2);
        }
    }
    FiniteGroup::from_flat_unchecked(size, table)
}

/// The permutations of `{0,1,2}` in lexicographic order of their images,
/// composed as functions: `(p q)(i) = p(q(i))`.
pub const S3_PERMUTATIONS: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

pub fn symmetric3() -> FiniteGroup {
    let idx = |p: [usize; 3]| S3_PERMUTATIONS.iter().position(|&q| q == p).unwrap();
    let mut table = vec![0; 36];
    for (a, p) in S3_PERMUTATIONS.iter().enumerate() {
        for (b, q) in S3_PERMUTATIONS.iter().enumerate() {
            table[a * 6 + b] = idx([p[q[0]], p[q[1]], p[q[2]]]);
        }
    }
    FiniteGroup::from_flat_unchecked(6, table)
}

/// Looks up a named family: `cyclic` (Z/n), `dihedral` (order 2n), `s3`
/// (parameter ignored) or `product` (Z/n x Z/n).
pub fn standard_group(name: &str, n: usize) -> Result<FiniteGroup, GroupError> {
    let need_positive = |family: &str| {
        if n == 0 {
            Err(GroupError::BadParameter { family: family.to_string(), n })
        } else {
            Ok(())
        }
    };
    match name {
        "cyclic" => need_positive(name).map(|_| cyclic(n)),
        "dihedral" => need_positive(name).map(|_| dihedral(n)),
        "s3" => Ok(symmetric3()),
        "product" => need_positive(name).map(|_| cyclic(n).direct_product(&cyclic(n))),
        other => Err(GroupError::UnknownFamily(other.to_string())),
    }
}

/// A subgroup embedding `iota: H -> G x G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEmbedding {
    subgroup: FiniteGroup,
    map: Vec<(usize, usize)>,
}

impl PairEmbedding {
    /// Validates that `map` is an injective homomorphism `H -> G x G`.
    pub fn new(
        h: FiniteGroup,
        map: Vec<(usize, usize)>,
        g: &FiniteGroup,
    ) -> Result<Self, GroupError> {
        if map.len() != h.order() {
            return Err(GroupError::MapSizeMismatch { got: map.len(), expected: h.order() });
        }
        for (i, &(a, b)) in map.iter().enumerate() {
            if a >= g.order() || b >= g.order() {
                return Err(GroupError::MapOutOfRange { h: i, g1: a, g2: b });
            }
        }
        for a in h.elements() {
            for b in h.elements() {
                let ab = map[h.mul(a, b)];
                let (x, y) = (map[a], map[b]);
                if ab != (g.mul(x.0, y.0), g.mul(x.1, y.1)) {
                    return Err(GroupError::NotAHomomorphism { a, b });
                }
            }
        }
        for a in h.elements() {
            for b in (a + 1)..h.order() {
                if map[a] == map[b] {
                    return Err(GroupError::NotInjective { a, b });
                }
            }
        }
        Ok(Self { subgroup: h, map })
    }

    /// `h -> (h, h)`.
    pub fn diagonal(g: &FiniteGroup) -> Self {
        Self { subgroup: g.clone(), map: g.elements().map(|x| (x, x)).collect() }
    }

    /// The trivial subgroup `{(e, e)}`.
    pub fn trivial() -> Self {
        Self { subgroup: FiniteGroup::trivial(), map: vec![(0, 0)] }
    }

    /// Embeds a subgroup of `G x G` given as element indices of
    /// `g.direct_product(g)`.
    pub fn from_pair_subgroup(g: &FiniteGroup, elements: &[usize]) -> Result<Self, GroupError> {
        let gg = g.direct_product(g);
        let sub = gg.subgroup(elements)?;
        let n = g.order();
        let map = sub.elements.iter().map(|&x| (x / n, x % n)).collect();
        Self::new(sub.group, map, g)
    }

    pub fn subgroup(&self) -> &FiniteGroup {
        &self.subgroup
    }

    pub fn map(&self) -> &[(usize, usize)] {
        &self.map
    }

    #[inline]
    pub fn iota(&self, h: usize) -> (usize, usize) {
        self.map[h]
    }

    #[inline]
    pub fn iota1(&self, h: usize) -> usize {
        self.map[h].0
    }

    #[inline]
    pub fn iota2(&self, h: usize) -> usize {
        self.map[h].1
    }

    /// Component `side` (0 or 1) of the embedding.
    #[inline]
    pub fn component(&self, side: usize, h: usize) -> usize {
        if side == 0 {
            self.map[h].0
        } else {
            self.map[h].1
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.map.iter().all(|&(a, b)| a == b)
    }
}

/// Conjugacy classes with their centralizers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyData {
    /// Sorted classes, ordered by their least element (the representative).
    pub classes: Vec<Vec<usize>>,
    /// Centralizer of each class representative, sorted.
    pub centralizers: Vec<Vec<usize>>,
}

impl ConjugacyData {
    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(|c| c[0])
    }
}

pub fn conjugacy(g: &FiniteGroup) -> ConjugacyData {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    let mut centralizers = Vec::new();
    for x in g.elements() {
        if assigned[x] {
            continue;
        }
        let class: BTreeSet<usize> = g.elements().map(|y| g.conjugate(y, x)).collect();
        for &c in &class {
            assigned[c] = true;
        }
        classes.push(class.into_iter().collect());
        centralizers
            .push(g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).collect());
    }
    ConjugacyData { classes, centralizers }
}

/// Orbit partition of a group action on `0..carrier`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    /// Orbits sorted internally; orbit `i` is listed before orbit `j` iff its
    /// least point is smaller.
    pub orbits: Vec<Vec<usize>>,
    /// Stabilizer of the least point of each orbit, as acting-group indices.
    pub stabilizers: Vec<Vec<usize>>,
    /// Orbit index of each point.
    pub orbit_of: Vec<usize>,
}

impl OrbitData {
    pub fn representative(&self, orbit: usize) -> usize {
        self.orbits[orbit][0]
    }
}

/// Orbits and stabilizers of a left action `act(g, x)` of `group` on
/// `0..carrier`. The action axioms are checked exhaustively.
pub fn orbits_of_action<F>(
    carrier: usize,
    group: &FiniteGroup,
    act: F,
) -> Result<OrbitData, GroupError>
where
    F: Fn(usize, usize) -> usize,
{
    let image: Vec<usize> =
        (0..group.order() * carrier).map(|i| act(i / carrier, i % carrier)).collect();
    let at = |g: usize, x: usize| image[g * carrier + x];
    for x in 0..carrier {
        if at(0, x) != x {
            return Err(GroupError::NotAnAction { reason: "identity moves a point", g: 0, h: 0, x });
        }
    }
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            for x in 0..carrier {
                let y = at(h, x);
                if y >= carrier || at(g, y) != at(gh, x) {
                    return Err(GroupError::NotAnAction { reason: "g.(h.x) != (gh).x", g, h, x });
                }
            }
        }
    }

    let mut orbit_of = vec![usize::MAX; carrier];
    let mut orbits = Vec::new();
    let mut stabilizers = Vec::new();
    for x in 0..carrier {
        if orbit_of[x] != usize::MAX {
            continue;
        }
        let orbit: BTreeSet<usize> = group.elements().map(|g| at(g, x)).collect();
        for &y in &orbit {
            orbit_of[y] = orbits.len();
        }
        orbits.push(orbit.into_iter().collect::<Vec<_>>());
        stabilizers.push(group.elements().filter(|&g| at(g, x) == x).collect());
    }
    Ok(OrbitData { orbits, stabilizers, orbit_of })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_rows() -> Vec<Vec<usize>> {
        symmetric3().table_rows()
    }

    #[test]
    fn trivial_and_z2_tables() {
        let t = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        let z2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn identity_is_relabeled_to_zero() {
        // Z/2 with the identity stored at label 1
        let g = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn corrupted_s3_reports_first_nonassociative_triple() {
        let mut rows = s3_rows();
        // swap two entries of row 1 so the row stays a permutation
        rows[1].swap(2, 3);
        let err = FiniteGroup::from_table(&rows).unwrap_err();
        // exhaustive oracle: the first triple, in lexicographic order, at
        // which the corrupted table fails associativity
        let at = |a: usize, b: usize| rows[a][b];
        let mut first = None;
        'outer: for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        first = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        let (a, b, c) = first.expect("corruption must break associativity");
        assert_eq!(err, GroupError::NotAssociative { a, b, c });
    }

    #[test]
    fn malformed_tables() {
        assert_eq!(FiniteGroup::from_table(&[]), Err(GroupError::Empty));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1]]),
            Err(GroupError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]),
            Err(GroupError::EntryOutOfRange { .. })
        ));
        assert_eq!(
            FiniteGroup::from_table(&[vec![0, 0], vec![0, 0]]),
            Err(GroupError::NoIdentity)
        );
        assert_eq!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]),
            Err(GroupError::NoInverse { element: 1 })
        );
    }

    #[test]
    fn standard_families() {
        assert_eq!(standard_group("cyclic", 1).unwrap().order(), 1);
        let z4 = standard_group("cyclic", 4).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(z4.mul(a, b), (a + b) % 4);
            }
        }
        let s3 = standard_group("s3", 0).unwrap();
        let mut sizes: Vec<usize> = conjugacy(&s3).classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(!s3.is_abelian());
        assert_eq!(dihedral(3).order(), 6);
        assert_eq!(conjugacy(&dihedral(3)).classes.len(), 3);
        assert_eq!(conjugacy(&dihedral(4)).classes.len(), 5);
        assert_eq!(standard_group("product", 2).unwrap().order(), 4);
        assert!(matches!(standard_group("monster", 1), Err(GroupError::UnknownFamily(_))));
        assert!(matches!(standard_group("cyclic", 0), Err(GroupError::BadParameter { .. })));
    }

    #[test]
    fn embeddings() {
        let g = cyclic(3);
        assert!(PairEmbedding::new(g.clone(), vec![(0, 0), (1, 1), (2, 2)], &g).is_ok());
        assert!(PairEmbedding::new(FiniteGroup::trivial(), vec![(0, 0)], &g).is_ok());

        let z4 = cyclic(4);
        let z2 = cyclic(2);
        assert!(PairEmbedding::new(z2.clone(), vec![(0, 0), (2, 0)], &z4).is_ok());
        // 1 -> (1,0) would need (1,0)*(1,0) = (2,0) to equal iota(0) = (0,0)
        assert_eq!(
            PairEmbedding::new(z2.clone(), vec![(0, 0), (1, 0)], &z4),
            Err(GroupError::NotAHomomorphism { a: 1, b: 1 })
        );
        assert_eq!(
            PairEmbedding::new(z2, vec![(0, 0), (0, 0)], &z4),
            Err(GroupError::NotInjective { a: 0, b: 1 })
        );
    }

    #[test]
    fn conjugacy_examples() {
        let t = conjugacy(&FiniteGroup::trivial());
        assert_eq!(t.classes, vec![vec![0]]);
        assert_eq!(t.centralizers, vec![vec![0]]);
        let z5 = conjugacy(&cyclic(5));
        assert_eq!(z5.classes.len(), 5);
        assert!(z5.centralizers.iter().all(|c| c.len() == 5));
        let s3 = conjugacy(&symmetric3());
        let orders: Vec<usize> = s3.centralizers.iter().map(|c| c.len()).collect();
        assert_eq!(orders, vec![6, 2, 3]);
    }

    #[test]
    fn orbit_examples() {
        let t = FiniteGroup::trivial();
        let o = orbits_of_action(3, &t, |_, x| x).unwrap();
        assert_eq!(o.orbits, vec![vec![0], vec![1], vec![2]]);
        assert!(o.stabilizers.iter().all(|s| s == &vec![0]));

        let z2 = cyclic(2);
        let o = orbits_of_action(2, &z2, |g, x| (g + x) % 2).unwrap();
        assert_eq!(o.orbits, vec![vec![0, 1]]);
        assert_eq!(o.stabilizers, vec![vec![0]]);

        // G x H acting on G x G with G = Z/2 and H the diagonal
        let gh = z2.direct_product(&z2);
        let o = orbits_of_action(4, &gh, |m, x| {
            let (g, h) = (m / 2, m % 2);
            let (a, b) = (x / 2, x % 2);
            ((g + a + h) % 2) * 2 + (g + b + h) % 2
        })
        .unwrap();
        assert_eq!(o.orbits, vec![vec![0, 3], vec![1, 2]]);
        assert!(o.stabilizers.iter().all(|s| s.len() == 2));

        let err = orbits_of_action(2, &z2, |_, _| 0).unwrap_err();
        assert!(matches!(err, GroupError::NotAnAction { .. }));
    }

    #[test]
    fn subgroups_of_s3() {
        let s3 = symmetric3();
        let subs = s3.two_generated_subgroups();
        let orders: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        let a3 = s3.subgroup(&subs[4]).unwrap();
        assert!(a3.group.is_abelian());
        assert!(s3.subgroup(&[0, 1, 2]).is_err());
    }
}
