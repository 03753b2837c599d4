//! Subgroups, conjugation, quotients, Sylow 2-subgroups, homomorphism
//! search, automorphisms and isomorphism testing.

use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;

use rand::Rng;
use thiserror::Error;

use crate::constructors::{self, ConstructionError};
use crate::group::{Group, GroupError, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("mask is not a subgroup of {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal in {0}")]
    NotNormal(String),
    #[error("map is not a homomorphism: images disagree at ({a}, {b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("map has {found} images, source has order {expected}")]
    ImageCount { expected: usize, found: usize },
    #[error("automorphism search limited to order {limit}, group has order {order}")]
    TooLargeForAutomorphisms { order: usize, limit: usize },
    #[error("automorphism group has order {order}, table construction limited to {limit}")]
    AutomorphismGroupTooLarge { order: usize, limit: usize },
    #[error("internal error: Sylow 2-subgroup extension stalled at order {reached} in {group}")]
    SylowStalled { group: String, reached: usize },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A structure-preserving map between two groups, stored as the image of
/// every source index.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: Group,
    target: Group,
    images: Vec<usize>,
}

impl Homomorphism {
    /// Checks `images[a*b] = images[a]*images[b]` over all pairs.
    pub fn new(source: Group, target: Group, images: Vec<usize>) -> Result<Self, StructureError> {
        if images.len() != source.order() {
            return Err(StructureError::ImageCount {
                expected: source.order(),
                found: images.len(),
            });
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= target.order()) {
            return Err(StructureError::Group(GroupError::EntryOutOfRange {
                row: 0,
                col: 0,
                value: bad,
                order: target.order(),
            }));
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.multiply(a, b)] != target.multiply(images[a], images[b]) {
                    return Err(StructureError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(Homomorphism { source, target, images })
    }

    fn trusted(source: &Group, target: &Group, images: Vec<usize>) -> Self {
        debug_assert!(source
            .elements()
            .all(|a| source.elements().all(|b| images[source.multiply(a, b)] == target.multiply(images[a], images[b]))));
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn kernel(&self) -> SubsetMask {
        SubsetMask::from_predicate(self.source.order(), |x| self.images[x] == 0)
    }

    pub fn image(&self) -> SubsetMask {
        SubsetMask::from_indices(self.target.order(), self.images.iter().copied())
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_full()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }
}

/// Smallest subgroup containing `gens`.
pub fn generated_subgroup(group: &Group, gens: &[usize]) -> SubsetMask {
    let mut mask = SubsetMask::trivial(group.order());
    let mut members = vec![0];
    let mut next = 0;
    while next < members.len() {
        let x = members[next];
        next += 1;
        for &g in gens {
            let y = group.multiply(x, g);
            if mask.insert(y) {
                members.push(y);
            }
        }
    }
    mask
}

fn join(group: &Group, subgroup: &SubsetMask, extra: usize) -> SubsetMask {
    let mut gens: Vec<usize> = subgroup.iter().collect();
    gens.push(extra);
    generated_subgroup(group, &gens)
}

pub fn center(group: &Group) -> SubsetMask {
    SubsetMask::from_predicate(group.order(), |z| group.elements().all(|g| group.commutes(z, g)))
}

pub fn centralizer(group: &Group, x: usize) -> SubsetMask {
    SubsetMask::from_predicate(group.order(), |g| group.commutes(g, x))
}

pub fn conjugacy_class(group: &Group, x: usize) -> SubsetMask {
    SubsetMask::from_indices(group.order(), group.elements().map(|g| group.conjugate(g, x)))
}

/// Size of the conjugacy class of every element.
pub fn class_sizes(group: &Group) -> Vec<usize> {
    group.elements().map(|x| group.order() / centralizer(group, x).len()).collect()
}

fn conjugate_mask(group: &Group, g: usize, subset: &SubsetMask) -> SubsetMask {
    SubsetMask::from_indices(group.order(), subset.iter().map(|h| group.conjugate(g, h)))
}

pub fn is_normal(group: &Group, subgroup: &SubsetMask) -> bool {
    group
        .elements()
        .all(|g| subgroup.iter().all(|h| subgroup.contains(group.conjugate(g, h))))
}

pub fn normalizer(group: &Group, subset: &SubsetMask) -> SubsetMask {
    SubsetMask::from_predicate(group.order(), |g| subset.iter().all(|h| subset.contains(group.conjugate(g, h))))
}

/// Realizes a subgroup as a group in its own right. Members keep their
/// relative order, so the identity stays at index 0.
pub fn subgroup_as_group(group: &Group, subgroup: &SubsetMask) -> Result<(Group, Vec<usize>), StructureError> {
    if !subgroup.is_subgroup_of(group) {
        return Err(StructureError::NotSubgroup(group.name().to_string()));
    }
    let members: Vec<usize> = subgroup.iter().collect();
    let mut position = vec![usize::MAX; group.order()];
    for (idx, &m) in members.iter().enumerate() {
        position[m] = idx;
    }
    let mut table = Vec::with_capacity(members.len() * members.len());
    for &a in &members {
        for &b in &members {
            table.push(position[group.multiply(a, b)]);
        }
    }
    let sub = Group::from_flat(members.len(), table)?.with_name(format!("{}.sub{}", group.name(), members.len()));
    Ok((sub, members))
}

/// `G/N` on coset representatives (the smallest index of each coset), with
/// the canonical projection. The identity coset is index 0.
pub fn quotient(group: &Group, normal: &SubsetMask) -> Result<(Group, Homomorphism), StructureError> {
    if !normal.is_subgroup_of(group) {
        return Err(StructureError::NotSubgroup(group.name().to_string()));
    }
    if !is_normal(group, normal) {
        return Err(StructureError::NotNormal(group.name().to_string()));
    }
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    for g in group.elements() {
        if coset_of[g] == usize::MAX {
            let c = reps.len();
            reps.push(g);
            for n in normal.iter() {
                coset_of[group.multiply(g, n)] = c;
            }
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[group.multiply(a, b)]);
        }
    }
    let q = Group::from_flat(k, table)?.with_name(format!("{}/N{}", group.name(), normal.len()));
    let projection = Homomorphism::trusted(group, &q, coset_of);
    Ok((q, projection))
}

/// Every subgroup, found by repeatedly joining known subgroups with single
/// elements. Sorted by (order, mask) for deterministic output.
pub fn all_subgroups(group: &Group) -> Vec<SubsetMask> {
    let trivial = SubsetMask::trivial(group.order());
    let mut seen: HashSet<SubsetMask> = HashSet::new();
    seen.insert(trivial.clone());
    let mut queue = VecDeque::from([trivial]);
    while let Some(h) = queue.pop_front() {
        for g in group.elements() {
            if h.contains(g) {
                continue;
            }
            let bigger = join(group, &h, g);
            if seen.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }
    let mut all: Vec<SubsetMask> = seen.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

pub fn normal_subgroups(group: &Group) -> Vec<SubsetMask> {
    all_subgroups(group).into_iter().filter(|h| is_normal(group, h)).collect()
}

/// Some Sylow 2-subgroup, making the first available choice at each step.
pub fn sylow2(group: &Group) -> Result<SubsetMask, StructureError> {
    sylow2_by(group, |_| 0)
}

/// Sylow 2-subgroup with randomized choices of the starting element and of
/// each extending element.
pub fn sylow2_with_rng(group: &Group, rng: &mut impl Rng) -> Result<SubsetMask, StructureError> {
    sylow2_by(group, |n| rng.gen_range(0..n))
}

/// Grows a 2-subgroup `P` inside its normalizer: any `g ∈ N(P) \ P` whose
/// image in `N(P)/P` has even order `2^a * b` yields `h = g^(b 2^(a-1))`
/// with `h ∉ P`, `h^2 ∈ P`, so `<P, h>` has order `2|P|`.
fn sylow2_by(group: &Group, mut pick: impl FnMut(usize) -> usize) -> Result<SubsetMask, StructureError> {
    let target = group.factorize_order().two_part();
    let max_two_order = group
        .elements()
        .map(|x| group.element_order(x))
        .filter(|o| o.is_power_of_two())
        .max()
        .unwrap_or(1);
    let starts: Vec<usize> = group
        .elements()
        .filter(|&x| group.element_order(x) == max_two_order)
        .collect();
    let start = starts[pick(starts.len())];
    let mut p = generated_subgroup(group, &[start]);
    while p.len() < target {
        let n = normalizer(group, &p);
        let extenders: Vec<usize> = n
            .iter()
            .filter(|&g| !p.contains(g))
            .filter_map(|g| {
                let mut k: usize = 1;
                let mut power = g;
                while !p.contains(power) {
                    power = group.multiply(power, g);
                    k += 1;
                }
                if k % 2 != 0 {
                    return None;
                }
                let a = k.trailing_zeros();
                let b = k >> a;
                Some(group.power(g, b << (a - 1)))
            })
            .collect();
        if extenders.is_empty() {
            return Err(StructureError::SylowStalled {
                group: group.name().to_string(),
                reached: p.len(),
            });
        }
        let h = extenders[pick(extenders.len())];
        p = join(group, &p, h);
    }
    Ok(p)
}

/// Some `g` with `g A g^-1 = B`.
pub fn find_conjugator(group: &Group, a: &SubsetMask, b: &SubsetMask) -> Option<usize> {
    group.elements().find(|&g| &conjugate_mask(group, g, a) == b)
}

/// Greedy small generating set: each step adds the element that enlarges
/// the generated subgroup the most (smallest index on ties).
pub fn minimal_generating_set(group: &Group) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = SubsetMask::trivial(group.order());
    while !current.is_full() {
        let mut best: Option<(usize, SubsetMask)> = None;
        for g in group.elements().filter(|&g| !current.contains(g)) {
            let mut trial = gens.clone();
            trial.push(g);
            let reached = generated_subgroup(group, &trial);
            if best.as_ref().is_none_or(|(_, b)| reached.len() > b.len()) {
                best = Some((g, reached));
            }
        }
        let (g, reached) = best.expect("non-full subgroup has an outside element");
        gens.push(g);
        current = reached;
    }
    gens
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SearchMode {
    Injective,
    Any,
}

/// Backtracking over images of a generating set of `source`. After each
/// assignment the partial map is extended along the right Cayley graph of
/// the generators assigned so far; a clash prunes the branch. A complete,
/// clash-free assignment is a homomorphism because `phi(x g) = phi(x) phi(g)`
/// holds on every edge.
fn search_homomorphisms(
    source: &Group,
    target: &Group,
    mode: SearchMode,
    mut visit: impl FnMut(Vec<usize>) -> ControlFlow<()>,
) {
    let gens = minimal_generating_set(source);
    let candidates: Vec<Vec<usize>> = match mode {
        SearchMode::Injective => {
            let src_classes = class_sizes(source);
            let dst_classes = class_sizes(target);
            gens.iter()
                .map(|&g| {
                    target
                        .elements()
                        .filter(|&h| {
                            target.element_order(h) == source.element_order(g) && dst_classes[h] == src_classes[g]
                        })
                        .collect()
                })
                .collect()
        }
        SearchMode::Any => gens
            .iter()
            .map(|&g| {
                target
                    .elements()
                    .filter(|&h| source.element_order(g) % target.element_order(h) == 0)
                    .collect()
            })
            .collect(),
    };
    if gens.is_empty() {
        let _ = visit(vec![0]);
        return;
    }
    let mut images = Vec::with_capacity(gens.len());
    let _ = backtrack(source, target, mode, &gens, &candidates, &mut images, &mut visit);
}

fn backtrack(
    source: &Group,
    target: &Group,
    mode: SearchMode,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    visit: &mut impl FnMut(Vec<usize>) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let depth = images.len();
    for &h in &candidates[depth] {
        images.push(h);
        if let Some(map) = extend(source, target, mode, &gens[..=depth], images) {
            if depth + 1 == gens.len() {
                let total: Vec<usize> = map.into_iter().map(|x| x.expect("generators reach every element")).collect();
                visit(total)?;
            } else {
                backtrack(source, target, mode, gens, candidates, images, visit)?;
            }
        }
        images.pop();
    }
    ControlFlow::Continue(())
}

fn extend(source: &Group, target: &Group, mode: SearchMode, gens: &[usize], images: &[usize]) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; source.order()];
    let mut used = vec![false; target.order()];
    map[0] = Some(0);
    used[0] = true;
    let mut queue = vec![0];
    let mut next = 0;
    while next < queue.len() {
        let x = queue[next];
        next += 1;
        let fx = map[x].expect("queued elements are mapped");
        for (&g, &h) in gens.iter().zip(images) {
            let y = source.multiply(x, g);
            let fy = target.multiply(fx, h);
            match map[y] {
                Some(existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    if mode == SearchMode::Injective && std::mem::replace(&mut used[fy], true) {
                        return None;
                    }
                    map[y] = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    Some(map)
}

/// Cheap isomorphism invariants used to reject early.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupProfile {
    pub order: usize,
    pub involutions: usize,
    pub center_order: usize,
    /// Sorted (element order, class size) pairs.
    pub element_signature: Vec<(usize, usize)>,
}

impl GroupProfile {
    pub fn of(group: &Group) -> Self {
        let sizes = class_sizes(group);
        let mut element_signature: Vec<(usize, usize)> =
            group.elements().map(|x| (group.element_order(x), sizes[x])).collect();
        element_signature.sort_unstable();
        GroupProfile {
            order: group.order(),
            involutions: group.elements().filter(|&x| group.element_order(x) <= 2).count(),
            center_order: sizes.iter().filter(|&&s| s == 1).count(),
            element_signature,
        }
    }

    pub fn element_order_multiset(&self) -> Vec<usize> {
        self.element_signature.iter().map(|&(o, _)| o).collect()
    }
}

/// An isomorphism from `g` to `h`, if one exists.
pub fn is_isomorphic(g: &Group, h: &Group) -> Option<Homomorphism> {
    if GroupProfile::of(g) != GroupProfile::of(h) {
        return None;
    }
    isomorphism_after_profile(g, h)
}

/// Like [`is_isomorphic`], for callers that already compared profiles.
pub fn isomorphism_after_profile(g: &Group, h: &Group) -> Option<Homomorphism> {
    let mut found = None;
    search_homomorphisms(g, h, SearchMode::Injective, |map| {
        found = Some(map);
        ControlFlow::Break(())
    });
    found.map(|images| Homomorphism::trusted(g, h, images))
}

/// Every homomorphism from `source` onto `target`.
pub fn surjections(source: &Group, target: &Group) -> Vec<Homomorphism> {
    let mut out = Vec::new();
    search_homomorphisms(source, target, SearchMode::Any, |map| {
        let mut hit = vec![false; target.order()];
        for &x in &map {
            hit[x] = true;
        }
        if hit.iter().all(|&b| b) {
            out.push(Homomorphism::trusted(source, target, map));
        }
        ControlFlow::Continue(())
    });
    out
}

/// Limits for automorphism computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutomorphismLimits {
    /// Largest group whose automorphisms are enumerated.
    pub max_group_order: usize,
    /// Largest automorphism group for which a Cayley table is built.
    pub max_table_order: usize,
}

impl Default for AutomorphismLimits {
    fn default() -> Self {
        AutomorphismLimits {
            max_group_order: 16,
            max_table_order: 512,
        }
    }
}

/// All automorphisms as permutations of the element indices, in search
/// order. The identity permutation comes first.
pub fn automorphisms(group: &Group, limits: AutomorphismLimits) -> Result<Vec<Vec<usize>>, StructureError> {
    if group.order() > limits.max_group_order {
        return Err(StructureError::TooLargeForAutomorphisms {
            order: group.order(),
            limit: limits.max_group_order,
        });
    }
    let identity: Vec<usize> = group.elements().collect();
    let mut perms = vec![identity.clone()];
    search_homomorphisms(group, group, SearchMode::Injective, |map| {
        if map != identity {
            perms.push(map);
        }
        ControlFlow::Continue(())
    });
    Ok(perms)
}

#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    /// Composition table; index `i` is `perms[i]`, and `i * j` is
    /// `perms[i] ∘ perms[j]`.
    pub group: Group,
    pub perms: Vec<Vec<usize>>,
}

pub fn automorphism_group(group: &Group, limits: AutomorphismLimits) -> Result<AutomorphismGroup, StructureError> {
    let perms = automorphisms(group, limits)?;
    if perms.len() > limits.max_table_order {
        return Err(StructureError::AutomorphismGroupTooLarge {
            order: perms.len(),
            limit: limits.max_table_order,
        });
    }
    let index: std::collections::HashMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let k = perms.len();
    let mut table = Vec::with_capacity(k * k);
    for a in &perms {
        for b in &perms {
            let composed: Vec<usize> = b.iter().map(|&x| a[x]).collect();
            table.push(index[composed.as_slice()]);
        }
    }
    let aut = Group::from_flat(k, table)?.with_name(format!("Aut({})", group.name()));
    Ok(AutomorphismGroup { group: aut, perms })
}

pub fn is_involutory_permutation(perm: &[usize]) -> bool {
    perm.iter().enumerate().all(|(i, &x)| perm[x] == i)
}

/// Number of `g` with `beta(g) = g^-1`.
pub fn inverted_element_count(group: &Group, beta: &[usize]) -> usize {
    group.elements().filter(|&g| beta[g] == group.inverse(g)).count()
}

/// Every element satisfies `x^2 = 1`.
pub fn is_elementary_abelian2(group: &Group) -> bool {
    group.elements().all(|x| group.multiply(x, x) == 0)
}

/// `k` with `group ≅ D8 x C2^k`, established by an explicit isomorphism
/// against the constructed comparison group.
pub fn recognize_d8_x_ea(group: &Group) -> Option<u32> {
    recognize_d8_x_ea_with_witness(group).map(|(k, _)| k)
}

pub fn recognize_d8_x_ea_with_witness(group: &Group) -> Option<(u32, Homomorphism)> {
    let n = group.order();
    if !n.is_power_of_two() || n < 8 {
        return None;
    }
    let k = n.trailing_zeros() - 3;
    let comparison = d8_times_ea(k).expect("D8 x C2^k is constructible");
    is_isomorphic(group, &comparison).map(|iso| (k, iso))
}

pub fn d8_times_ea(k: u32) -> Result<Group, ConstructionError> {
    let d8 = constructors::dihedral(8)?;
    if k == 0 {
        return Ok(d8);
    }
    constructors::direct_product(&d8, &constructors::elementary_abelian(k)?)
}
