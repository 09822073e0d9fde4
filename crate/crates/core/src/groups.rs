//! Finite permutation groups with fully materialized element lists.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;

use crate::exactmath::arith::{factorize, mod_inv, split_prime_power};
use crate::{Error, Result};

/// Default bound on the number of elements materialized by [`PermGroup::generate`].
pub const ELEMENT_CAP: usize = 100_000;

/// A permutation of `{0, …, m-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Product of disjoint or overlapping cycles, applied right to left as written
    /// left to right (`(0,1)(1,2)` first applies `(0,1)`).
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Self::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidArgument(format!(
                        "point {a} exceeds degree {degree}"
                    )));
                }
                if cycle[..k].contains(&a) {
                    return Err(Error::InvalidArgument(format!(
                        "point {a} repeated in a cycle"
                    )));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
            acc = acc.compose(&Self::from_images(images)?);
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`: `i ↦ other(self(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "permutations of different degree"
        );
        Self {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Self { images: inv }
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `other⁻¹ · self · other` in composition order.
    pub fn conjugate_by(&self, other: &Self) -> Self {
        other.inverse().compose(self).compose(other)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    fn extended(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Self { images }
    }

    fn shifted(&self, offset: usize, degree: usize) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + j;
        }
        Self { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A conjugacy class of a [`PermGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub index: usize,
    /// Lexicographically smallest member.
    pub representative: Permutation,
    pub size: usize,
    pub element_order: u64,
    /// Indices into [`PermGroup::elements`].
    pub members: Vec<usize>,
}

#[derive(Debug)]
struct ClassData {
    classes: Vec<ConjClass>,
    element_class: Vec<usize>,
}

/// A permutation group together with all of its elements.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    classes: OnceLock<ClassData>,
}

/// Breadth-first closure of `generators`, capped at [`ELEMENT_CAP`] elements.
pub fn enumerate(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::generate(degree, generators)
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::generate_with_cap(degree, generators, ELEMENT_CAP)
    }

    pub fn generate_with_cap(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self> {
        let degree = generators
            .iter()
            .map(Permutation::degree)
            .fold(degree.max(1), usize::max);
        let generators: Vec<Permutation> =
            generators.into_iter().map(|g| g.extended(degree)).collect();
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let h = elements[i].compose(g);
                if !index.contains_key(&h) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        Ok(Self {
            degree,
            generators,
            elements,
            index,
            classes: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.conjugacy_classes()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&c.element_order))
    }

    /// Conjugacy classes ordered by element order, then size, then smallest
    /// member; the identity class comes first.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    /// Class index of the element at position `i` of [`Self::elements`].
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_data().element_class[i]
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.index_of(g).map(|i| self.class_of_index(i))
    }

    /// Class of `g^k` for `g` in class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let g = &self.conjugacy_classes()[c].representative;
        self.class_of(&g.pow(k)).expect("powers stay in the group")
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.power_class(c, -1)
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let n = self.elements.len();
            let mut element_class = vec![usize::MAX; n];
            let mut orbits: Vec<Vec<usize>> = Vec::new();
            for start in 0..n {
                if element_class[start] != usize::MAX {
                    continue;
                }
                let id = orbits.len();
                element_class[start] = id;
                let mut orbit = vec![start];
                let mut k = 0;
                while k < orbit.len() {
                    let x = &self.elements[orbit[k]];
                    for g in &self.generators {
                        let y = self.index[&x.conjugate_by(g)];
                        if element_class[y] == usize::MAX {
                            element_class[y] = id;
                            orbit.push(y);
                        }
                    }
                    k += 1;
                }
                orbits.push(orbit);
            }
            let mut classes: Vec<ConjClass> = orbits
                .into_iter()
                .map(|mut members| {
                    members.sort_by(|&a, &b| self.elements[a].cmp(&self.elements[b]));
                    let representative = self.elements[members[0]].clone();
                    ConjClass {
                        index: 0,
                        element_order: representative.order(),
                        size: members.len(),
                        representative,
                        members,
                    }
                })
                .collect();
            classes.sort_by(|a, b| {
                (a.element_order, a.size, &a.representative).cmp(&(
                    b.element_order,
                    b.size,
                    &b.representative,
                ))
            });
            for (i, c) in classes.iter_mut().enumerate() {
                c.index = i;
                for &m in &c.members {
                    element_class[m] = i;
                }
            }
            ClassData {
                classes,
                element_class,
            }
        })
    }
}

/// The `p`-regular part of `g`: the unique power of `g` of order prime to `p`
/// whose quotient `g · g_r⁻¹` has `p`-power order.
pub fn p_regular_part(g: &Permutation, p: u64) -> Permutation {
    let order = g.order();
    let (a, m) = split_prime_power(order, p);
    if m == 1 {
        return Permutation::identity(g.degree());
    }
    let pa = p.pow(a);
    // p^a · t ≡ 1 (mod m)
    let t = mod_inv(pa % m, m).expect("p^a is a unit modulo m");
    g.pow(((pa * t) % order) as i64)
}

/// `c ↦ class of c_r^(p)` on class indices.
pub fn fusion_map(group: &PermGroup, p: u64) -> Vec<usize> {
    group
        .conjugacy_classes()
        .iter()
        .map(|c| {
            group
                .class_of(&p_regular_part(&c.representative, p))
                .expect("power of a member")
        })
        .collect()
}

/// Prime-power invariants of a finite abelian group from its element orders,
/// sorted ascending.
pub fn invariants_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    let mut out = Vec::new();
    for (p, _) in factorize(n) {
        // omega[k] = #{g : g^(p^k) = 1}
        let mut omega = vec![1u64];
        let mut k = 1;
        loop {
            let pk = p.pow(k);
            let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            omega.push(count);
            if count == *omega.iter().rev().nth(1).unwrap() {
                omega.pop();
                break;
            }
            k += 1;
        }
        // r[k] = #{cyclic factors of order ≥ p^k}
        let r: Vec<u32> = (1..omega.len())
            .map(|k| (omega[k] / omega[k - 1]).ilog(p))
            .collect();
        for k in 0..r.len() {
            let exactly = r[k] - r.get(k + 1).copied().unwrap_or(0);
            for _ in 0..exactly {
                out.push(p.pow(k as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Primary decomposition `[p_1^α_1, …]` of an abelian group.
pub fn abelian_invariants(group: &PermGroup) -> Result<Vec<u64>> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let orders: Vec<u64> = group.elements().iter().map(Permutation::order).collect();
    Ok(invariants_from_orders(&orders))
}

/// Named permutation-group families and their direct products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2k` acting on `k` points.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Product(Vec<GroupSpec>),
    Explicit(Vec<Vec<Vec<usize>>>),
}

impl GroupSpec {
    /// `(degree, generators)` of the standard realization.
    fn realize(&self) -> Result<(usize, Vec<Permutation>)> {
        let cycle = |k: usize| vec![(0..k).collect::<Vec<_>>()];
        Ok(match *self {
            GroupSpec::Cyclic(k) if k >= 2 => (k, vec![Permutation::from_cycles(k, &cycle(k))?]),
            GroupSpec::Cyclic(k) | GroupSpec::Symmetric(k) if k <= 1 => (1, vec![]),
            GroupSpec::Alternating(k) if k <= 2 => (k.max(1), vec![]),
            GroupSpec::Dihedral(0) => return Err(Error::Parse("dihedral group of order 0".into())),
            GroupSpec::Dihedral(1) => (2, vec![Permutation::from_cycles(2, &[vec![0, 1]])?]),
            GroupSpec::Dihedral(2) => (
                4,
                vec![
                    Permutation::from_cycles(4, &[vec![0, 1]])?,
                    Permutation::from_cycles(4, &[vec![2, 3]])?,
                ],
            ),
            GroupSpec::Dihedral(k) => {
                let rotation = Permutation::from_cycles(k, &cycle(k))?;
                let reflection = Permutation::from_images((0..k).map(|i| (k - i) % k).collect())?;
                (k, vec![rotation, reflection])
            }
            GroupSpec::Symmetric(k) => (
                k,
                vec![
                    Permutation::from_cycles(k, &cycle(k))?,
                    Permutation::from_cycles(k, &[vec![0, 1]])?,
                ],
            ),
            GroupSpec::Alternating(k) => (
                k,
                (2..k)
                    .map(|i| Permutation::from_cycles(k, &[vec![0, 1, i]]))
                    .collect::<Result<_>>()?,
            ),
            GroupSpec::Explicit(ref gens) => {
                let degree = gens
                    .iter()
                    .flatten()
                    .flatten()
                    .map(|&i| i + 1)
                    .max()
                    .unwrap_or(1);
                (
                    degree,
                    gens.iter()
                        .map(|cycles| Permutation::from_cycles(degree, cycles))
                        .collect::<Result<_>>()?,
                )
            }
            GroupSpec::Product(ref factors) => {
                let parts: Vec<(usize, Vec<Permutation>)> = factors
                    .iter()
                    .map(GroupSpec::realize)
                    .collect::<Result<_>>()?;
                let degree: usize = parts.iter().map(|(d, _)| d).sum();
                let mut offset = 0;
                let mut gens = Vec::new();
                for (d, g) in parts {
                    gens.extend(g.iter().map(|x| x.shifted(offset, degree)));
                    offset += d;
                }
                (degree, gens)
            }
            GroupSpec::Cyclic(_) => unreachable!(),
        })
    }
}

/// Standard permutation realization of `spec`.
pub fn make_group(spec: &GroupSpec) -> Result<PermGroup> {
    let (degree, gens) = spec.realize()?;
    PermGroup::generate(degree, gens)
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// `A4`, `S5`, `C6`, `D8` (order 8), `C2xC4`, `perm:[(0,1,2),(0,1)(2,3)]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let factors = split_top_level(s, 'x');
        if factors.len() > 1 {
            return Ok(GroupSpec::Product(
                factors.iter().map(|f| f.parse()).collect::<Result<_>>()?,
            ));
        }
        if let Some(rest) = s.strip_prefix("perm:") {
            return parse_explicit(rest);
        }
        let bad = || Error::Parse(format!("unknown group descriptor '{s}'"));
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(bad)?;
        let k: usize = chars.as_str().parse().map_err(|_| bad())?;
        match family {
            'C' => Ok(GroupSpec::Cyclic(k)),
            'S' => Ok(GroupSpec::Symmetric(k)),
            'A' => Ok(GroupSpec::Alternating(k)),
            'D' if k >= 2 && k.is_multiple_of(2) => Ok(GroupSpec::Dihedral(k / 2)),
            'D' => Err(Error::Parse(format!(
                "dihedral order must be even, got '{s}'"
            ))),
            _ => Err(bad()),
        }
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_explicit(body: &str) -> Result<GroupSpec> {
    let bad = |why: &str| Error::Parse(format!("bad permutation list '{body}': {why}"));
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| bad("expected [..]"))?;
    let mut gens = Vec::new();
    for gen in split_top_level(inner, ',') {
        let gen = gen.trim();
        if gen.is_empty() {
            continue;
        }
        let mut cycles = Vec::new();
        let mut rest = gen;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let points: Vec<usize> = open[..close]
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad("non-numeric point")))
                .collect::<Result<_>>()?;
            let mut sorted = points.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != points.len() {
                return Err(bad("repeated point in cycle"));
            }
            if points.len() > 1 {
                cycles.push(points);
            }
            rest = open[close + 1..].trim_start();
        }
        gens.push(cycles);
    }
    Ok(GroupSpec::Explicit(gens))
}
