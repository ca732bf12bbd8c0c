//! Finite groups given by Cayley tables, and the exhaustive subgroup /
//! conjugacy / coset machinery built on top of them.
//!
//! Elements are dense indices `0..order`. All structure (inverses,
//! subgroups, conjugacy classes, double cosets) is derived from the
//! multiplication table; nothing assumes a permutation or matrix model.

use serde::Deserialize;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square or has out-of-range entries (row {0})")]
    MalformedTable(usize),
    #[error("element {0} is not a two-sided identity")]
    NoIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("table is not associative at triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("row or column {0} of the table is not a permutation")]
    NotClosed(usize),
    #[error("{0} is not a subgroup: {1}")]
    NotASubgroup(String, String),
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),
}

/// A finite group presented by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a multiplication table and computes inverses.
    pub fn validate(
        table: Vec<Vec<usize>>,
        identity: usize,
        names: Option<Vec<String>>,
    ) -> Result<Arc<FiniteGroup>, GroupError> {
        let n = table.len();
        if n == 0 || identity >= n {
            return Err(GroupError::MalformedTable(0));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(GroupError::MalformedTable(i));
            }
        }
        if let Some(ns) = &names {
            if ns.len() != n {
                return Err(GroupError::MalformedTable(0));
            }
        }
        // Rows and columns must be permutations (Latin square / closure).
        for i in 0..n {
            let row: BTreeSet<usize> = table[i].iter().copied().collect();
            let col: BTreeSet<usize> = (0..n).map(|j| table[j][i]).collect();
            if row.len() != n || col.len() != n {
                return Err(GroupError::NotClosed(i));
            }
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(GroupError::NoIdentity(identity));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses[a] = b,
                None => return Err(GroupError::NoInverse(a)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Arc::new(FiniteGroup { order: n, table, identity, inverses, names }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Conjugation `ᵍx = g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != self.identity {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1usize, |acc, a| num::integer::lcm(acc, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(ns) => ns[a].clone(),
            None => format!("g{a}"),
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.order).map(|a| self.name(a)).collect()
    }

    /// The trivial group.
    pub fn trivial() -> Arc<FiniteGroup> {
        Self::validate(vec![vec![0]], 0, Some(vec!["e".into()])).expect("trivial group")
    }

    /// Cyclic group ℤₙ generated by `x`.
    pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
        assert!(n >= 1);
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        Self::validate(table, 0, Some(names)).expect("cyclic group")
    }

    /// Klein four-group ℤ₂×ℤ₂ with generators `x`, `y`; element `x^i y^j`
    /// has index `i + 2j`.
    pub fn klein() -> Arc<FiniteGroup> {
        let idx = |i: usize, j: usize| i % 2 + 2 * (j % 2);
        let mut table = vec![vec![0; 4]; 4];
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        table[idx(i1, j1)][idx(i2, j2)] = idx(i1 + i2, j1 + j2);
                    }
                }
            }
        }
        let names = vec!["e".into(), "x".into(), "y".into(), "xy".into()];
        Self::validate(table, 0, Some(names)).expect("klein group")
    }

    /// Symmetric group S₃ = ⟨r, s | r³ = s² = (sr)² = e⟩; element `r^i s^j`
    /// has index `i + 3j`.
    pub fn s3() -> Arc<FiniteGroup> {
        let idx = |i: usize, j: usize| i % 3 + 3 * (j % 2);
        let mut table = vec![vec![0; 6]; 6];
        for i1 in 0..3 {
            for j1 in 0..2 {
                for i2 in 0..3 {
                    for j2 in 0..2 {
                        // (r^i1 s^j1)(r^i2 s^j2): move s^j1 past r^i2 using s r = r⁻¹ s.
                        let i2t = if j1 == 1 { (3 - i2) % 3 } else { i2 };
                        table[idx(i1, j1)][idx(i2, j2)] = idx(i1 + i2t, j1 + j2);
                    }
                }
            }
        }
        let names =
            vec!["e".into(), "r".into(), "r2".into(), "s".into(), "rs".into(), "r2s".into()];
        Self::validate(table, 0, Some(names)).expect("S3")
    }

    /// Dihedral group D₈ = ⟨x, y, z | x² = y² = z² = e, xy = yx, zx = yz,
    /// zy = xz⟩; element `x^i y^j z^n` has index `i + 2j + 4n`.
    pub fn d8() -> Arc<FiniteGroup> {
        let idx = |i: usize, j: usize, n: usize| i % 2 + 2 * (j % 2) + 4 * (n % 2);
        let mut table = vec![vec![0; 8]; 8];
        for i1 in 0..2 {
            for j1 in 0..2 {
                for n1 in 0..2 {
                    for i2 in 0..2 {
                        for j2 in 0..2 {
                            for n2 in 0..2 {
                                // Products are normalized with the z-part on
                                // the left: z x = y z and z y = x z, so moving
                                // x^i1 y^j1 across z^n2 swaps the exponents of
                                // the first factor when n2 = 1.
                                let (i1t, j1t) = if n2 == 1 { (j1, i1) } else { (i1, j1) };
                                table[idx(i1, j1, n1)][idx(i2, j2, n2)] =
                                    idx(i1t + i2, j1t + j2, n1 + n2);
                            }
                        }
                    }
                }
            }
        }
        let names = vec![
            "e".into(),
            "x".into(),
            "y".into(),
            "xy".into(),
            "z".into(),
            "xz".into(),
            "yz".into(),
            "xyz".into(),
        ];
        Self::validate(table, 0, Some(names)).expect("D8")
    }

    /// Resolves a builtin group name: `trivial`, `Zn` (e.g. `Z4`), `Z2xZ2`,
    /// `S3`, `D8`.
    pub fn builtin(name: &str) -> Result<Arc<FiniteGroup>, GroupError> {
        match name {
            "trivial" => Ok(Self::trivial()),
            "Z2xZ2" => Ok(Self::klein()),
            "S3" => Ok(Self::s3()),
            "D8" => Ok(Self::d8()),
            _ => {
                if let Some(rest) = name.strip_prefix('Z') {
                    if let Ok(n) = rest.parse::<usize>() {
                        if n >= 1 && n <= 64 {
                            return Ok(Self::cyclic(n));
                        }
                    }
                }
                Err(GroupError::UnknownBuiltin(name.to_string()))
            }
        }
    }
}

/// JSON input schema for groups.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupInput {
    Builtin {
        builtin: String,
    },
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
        identity: usize,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
}

impl GroupInput {
    pub fn build(self) -> Result<Arc<FiniteGroup>, GroupError> {
        match self {
            GroupInput::Builtin { builtin } => FiniteGroup::builtin(&builtin),
            GroupInput::Table { order, table, identity, names } => {
                if table.len() != order {
                    return Err(GroupError::MalformedTable(0));
                }
                FiniteGroup::validate(table, identity, names)
            }
        }
    }
}

/// A subgroup, stored as a sorted list of element indices of the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Subgroups of the same parent order by their element sets.
        self.elements.cmp(&other.elements)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.elements.iter().map(|&g| self.group.name(g)).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl Subgroup {
    /// Builds a subgroup from an element set, checking closure, identity and
    /// inverses.
    pub fn new(group: Arc<FiniteGroup>, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if !set.contains(&group.identity()) {
            return Err(GroupError::NotASubgroup(format!("{set:?}"), "missing identity".into()));
        }
        for &a in &set {
            if !set.contains(&group.inv(a)) {
                return Err(GroupError::NotASubgroup(
                    format!("{set:?}"),
                    format!("missing inverse of {a}"),
                ));
            }
            for &b in &set {
                if !set.contains(&group.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(
                        format!("{set:?}"),
                        format!("not closed at ({a}, {b})"),
                    ));
                }
            }
        }
        Ok(Subgroup { group, elements: set.into_iter().collect() })
    }

    /// The subgroup generated by a set of elements.
    pub fn generated(group: Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(group.identity());
        let mut frontier: Vec<usize> = vec![group.identity()];
        loop {
            let mut next = Vec::new();
            for &a in &frontier {
                for &g in gens {
                    for p in [group.mul(a, g), group.mul(a, group.inv(g))] {
                        if set.insert(p) {
                            next.push(p);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Subgroup { group, elements: set.into_iter().collect() }
    }

    pub fn whole(group: Arc<FiniteGroup>) -> Subgroup {
        let elements = (0..group.order()).collect();
        Subgroup { group, elements }
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Subgroup {
        let elements = vec![group.identity()];
        Subgroup { group, elements }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Local index of a parent element within this subgroup's element list.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements.iter().all(|&a| {
            self.elements.iter().all(|&b| self.group.mul(a, b) == self.group.mul(b, a))
        })
    }

    /// `g L g⁻¹`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let elements: BTreeSet<usize> =
            self.elements.iter().map(|&x| self.group.conj(g, x)).collect();
        Subgroup { group: self.group.clone(), elements: elements.into_iter().collect() }
    }

    /// Intersection of two subgroups of the same parent.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        if !Arc::ptr_eq(&self.group, &other.group) && self.group != other.group {
            return Err(GroupError::ParentMismatch);
        }
        let elements: Vec<usize> =
            self.elements.iter().copied().filter(|&g| other.contains(g)).collect();
        Ok(Subgroup { group: self.group.clone(), elements })
    }

    pub fn display_name(&self) -> String {
        // Prefer a short generator description when one exists.
        let nontrivial: Vec<usize> =
            self.elements.iter().copied().filter(|&g| g != self.group.identity()).collect();
        if nontrivial.is_empty() {
            return "<e>".to_string();
        }
        for &g in &nontrivial {
            if Subgroup::generated(self.group.clone(), &[g]).elements == self.elements {
                return format!("<{}>", self.group.name(g));
            }
        }
        for (i, &g) in nontrivial.iter().enumerate() {
            for &h in &nontrivial[i + 1..] {
                if Subgroup::generated(self.group.clone(), &[g, h]).elements == self.elements {
                    return format!("<{},{}>", self.group.name(g), self.group.name(h));
                }
            }
        }
        format!("{self}")
    }
}

/// All subgroups of `G`, sorted by order then lexicographically by element
/// list. Enumeration closes generated sets iteratively rather than scanning
/// all element subsets.
pub fn subgroups(group: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let triv = Subgroup::trivial(group.clone());
    seen.insert(triv.elements.clone());
    let mut frontier = vec![triv];
    while let Some(h) = frontier.pop() {
        for g in 0..group.order() {
            if h.contains(g) {
                continue;
            }
            let mut gens = h.elements.clone();
            gens.push(g);
            let bigger = Subgroup::generated(group.clone(), &gens);
            if seen.insert(bigger.elements.clone()) {
                frontier.push(bigger);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen
        .into_iter()
        .map(|elements| Subgroup { group: group.clone(), elements })
        .collect();
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    out
}

/// Conjugacy classes of subgroups: `(representative, class members)`, the
/// representative being the lexicographically least member.
pub fn conjugacy_classes_of_subgroups(group: &Arc<FiniteGroup>) -> Vec<(Subgroup, Vec<Subgroup>)> {
    let all = subgroups(group);
    let mut used: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut classes = Vec::new();
    for h in &all {
        if used.contains(&h.elements) {
            continue;
        }
        let mut members: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 0..group.order() {
            members.insert(h.conjugate(g).elements);
        }
        for m in &members {
            used.insert(m.clone());
        }
        let mut members: Vec<Subgroup> = members
            .into_iter()
            .map(|elements| Subgroup { group: group.clone(), elements })
            .collect();
        members.sort_by(|a, b| a.elements.cmp(&b.elements));
        let rep = members[0].clone();
        classes.push((rep, members));
    }
    classes.sort_by(|a, b| (a.0.order(), &a.0.elements).cmp(&(b.0.order(), &b.0.elements)));
    classes
}

/// Normalizer N_G(L) = { g : gLg⁻¹ = L }.
pub fn normalizer(group: &Arc<FiniteGroup>, l: &Subgroup) -> Subgroup {
    let elements: Vec<usize> =
        (0..group.order()).filter(|&g| l.conjugate(g).elements == l.elements).collect();
    Subgroup { group: group.clone(), elements }
}

/// Centralizer C_G(g).
pub fn centralizer(group: &Arc<FiniteGroup>, g: usize) -> Subgroup {
    let elements: Vec<usize> =
        (0..group.order()).filter(|&h| group.mul(h, g) == group.mul(g, h)).collect();
    Subgroup { group: group.clone(), elements }
}

/// Conjugacy classes of elements, each sorted, ordered by least member.
pub fn element_conjugacy_classes(group: &Arc<FiniteGroup>) -> Vec<Vec<usize>> {
    let mut seen = vec![false; group.order()];
    let mut classes = Vec::new();
    for a in 0..group.order() {
        if seen[a] {
            continue;
        }
        let class: BTreeSet<usize> = (0..group.order()).map(|g| group.conj(g, a)).collect();
        for &x in &class {
            seen[x] = true;
        }
        classes.push(class.into_iter().collect());
    }
    classes
}

/// Conjugacy classes of the elements of a subgroup under conjugation by
/// the subgroup itself.
pub fn element_conjugacy_classes_in(sub: &Subgroup) -> Vec<Vec<usize>> {
    let grp = sub.parent();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut classes = Vec::new();
    for &a in sub.elements() {
        if seen.contains(&a) {
            continue;
        }
        let class: BTreeSet<usize> = sub.elements().iter().map(|&g| grp.conj(g, a)).collect();
        seen.extend(class.iter().copied());
        classes.push(class.into_iter().collect());
    }
    classes
}

/// A double-coset decomposition `left \ G / right`.
#[derive(Debug, Clone)]
pub struct DoubleCosetDecomposition {
    pub left: Subgroup,
    pub right: Subgroup,
    /// Least-index representative of each coset, ordered by representative.
    pub representatives: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
}

/// Decomposes G into `left`-`right` double cosets with least-index
/// representatives.
pub fn double_cosets(
    left: &Subgroup,
    right: &Subgroup,
) -> Result<DoubleCosetDecomposition, GroupError> {
    if left.parent() != right.parent() {
        return Err(GroupError::ParentMismatch);
    }
    let group = left.parent().clone();
    let mut assigned = vec![false; group.order()];
    let mut representatives = Vec::new();
    let mut cosets = Vec::new();
    for g in 0..group.order() {
        if assigned[g] {
            continue;
        }
        let coset: BTreeSet<usize> = left
            .elements()
            .iter()
            .flat_map(|&l| right.elements().iter().map(move |&r| (l, r)))
            .map(|(l, r)| group.mul(group.mul(l, g), r))
            .collect();
        for &x in &coset {
            assigned[x] = true;
        }
        representatives.push(g);
        cosets.push(coset.into_iter().collect());
    }
    Ok(DoubleCosetDecomposition {
        left: left.clone(),
        right: right.clone(),
        representatives,
        cosets,
    })
}

/// The product set K·N.
pub fn product_set(k: &Subgroup, n: &Subgroup) -> Result<Vec<usize>, GroupError> {
    if k.parent() != n.parent() {
        return Err(GroupError::ParentMismatch);
    }
    let group = k.parent();
    let set: BTreeSet<usize> = k
        .elements()
        .iter()
        .flat_map(|&a| n.elements().iter().map(move |&b| (a, b)))
        .map(|(a, b)| group.mul(a, b))
        .collect();
    Ok(set.into_iter().collect())
}

/// `G = K·N` is exact: trivial intersection and `|K||N| = |G|`.
pub fn is_exact_factorization(k: &Subgroup, n: &Subgroup) -> Result<bool, GroupError> {
    if k.parent() != n.parent() {
        return Err(GroupError::ParentMismatch);
    }
    let inter = k.intersect(n)?;
    Ok(inter.order() == 1 && k.order() * n.order() == k.parent().order())
}
