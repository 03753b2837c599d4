//! Named group families and product constructions.
//!
//! Numbering conventions, fixed so that element indices are reproducible:
//!
//! * `cyclic(n)`: index `i` is `g^i`.
//! * `dihedral(2n)`: indices `0..n` are rotations `r^i`, `n..2n` are the
//!   reflections `r^i s`.
//! * `dicyclic(4n)`: indices `0..2n` are `a^i`, `2n..4n` are `a^i x`.
//! * `elementary_abelian(k)`: index bits are coordinates, product is XOR.
//! * products: the pair `(a, b)` has index `a * |right| + b`.

use thiserror::Error;

use crate::group::{Group, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("cyclic groups need a positive order")]
    ZeroOrder,
    #[error("dihedral order must be even and at least 2, got {0}")]
    BadDihedralOrder(usize),
    #[error("dicyclic order must be a multiple of 4 and at least 4, got {0}")]
    BadDicyclicOrder(usize),
    #[error("elementary abelian rank {0} is too large")]
    RankTooLarge(u32),
    #[error("action has {found} images but the acting group has order {expected}")]
    ActionSize { expected: usize, found: usize },
    #[error("image of {q} is not an automorphism of the normal factor")]
    NotAnAutomorphism { q: usize },
    #[error("action is not a homomorphism: image({q1} * {q2}) differs from image({q1}) o image({q2})")]
    NotAHomomorphism { q1: usize, q2: usize },
    #[error("generalized dihedral construction needs an abelian base, {0} is not abelian")]
    NonAbelianBase(String),
    #[error(transparent)]
    Invalid(#[from] GroupError),
}

fn build(order: usize, name: String, mul: impl Fn(usize, usize) -> usize) -> Result<Group, ConstructionError> {
    let mut table = Vec::with_capacity(order * order);
    for i in 0..order {
        for j in 0..order {
            table.push(mul(i, j));
        }
    }
    Ok(Group::from_flat(order, table)?.with_name(name))
}

pub fn trivial() -> Group {
    cyclic(1).expect("order 1 is valid")
}

pub fn cyclic(n: usize) -> Result<Group, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::ZeroOrder);
    }
    build(n, format!("C{n}"), |i, j| (i + j) % n)
}

/// Dihedral group of order `two_n`, `<r, s | r^n = s^2 = 1, srs = r^-1>`.
pub fn dihedral(two_n: usize) -> Result<Group, ConstructionError> {
    if two_n < 2 || two_n % 2 != 0 {
        return Err(ConstructionError::BadDihedralOrder(two_n));
    }
    let n = two_n / 2;
    build(two_n, format!("D{two_n}"), |i, j| {
        let (a, i_ref) = (i % n, i >= n);
        let (b, j_ref) = (j % n, j >= n);
        match (i_ref, j_ref) {
            (false, false) => (a + b) % n,
            (false, true) => n + (a + b) % n,
            (true, false) => n + (a + n - b) % n,
            (true, true) => (a + n - b) % n,
        }
    })
}

/// Dicyclic group of order `four_n`, `<a, x | a^2n = 1, x^2 = a^n, xax^-1 = a^-1>`.
pub fn dicyclic(four_n: usize) -> Result<Group, ConstructionError> {
    if four_n < 4 || four_n % 4 != 0 {
        return Err(ConstructionError::BadDicyclicOrder(four_n));
    }
    let n = four_n / 4;
    let m = 2 * n;
    let name = if four_n == 8 { "Q8".to_string() } else if four_n.is_power_of_two() { format!("Q{four_n}") } else { format!("Dic{four_n}") };
    build(four_n, name, |i, j| {
        let (a, i_x) = (i % m, i >= m);
        let (b, j_x) = (j % m, j >= m);
        match (i_x, j_x) {
            (false, false) => (a + b) % m,
            (false, true) => m + (a + b) % m,
            (true, false) => m + (a + m - b) % m,
            (true, true) => (a + m - b + n) % m,
        }
    })
}

pub fn quaternion8() -> Group {
    dicyclic(8).expect("order 8 is a valid dicyclic order")
}

/// `(C2)^k`, including the trivial group at `k = 0`.
pub fn elementary_abelian(k: u32) -> Result<Group, ConstructionError> {
    if k > 12 {
        return Err(ConstructionError::RankTooLarge(k));
    }
    let name = match k {
        0 => "C1".to_string(),
        1 => "C2".to_string(),
        _ => format!("C2^{k}"),
    };
    build(1 << k, name, |i, j| i ^ j)
}

pub fn direct_product(left: &Group, right: &Group) -> Result<Group, ConstructionError> {
    let k = right.order();
    build(left.order() * k, product_name(left.name(), right.name()), |i, j| {
        left.multiply(i / k, j / k) * k + right.multiply(i % k, j % k)
    })
}

fn product_name(left: &str, right: &str) -> String {
    let wrap = |s: &str| if s.contains(':') { format!("({s})") } else { s.to_string() };
    format!("{}x{}", wrap(left), wrap(right))
}

/// A homomorphism from an acting group `Q` into `Aut(N)`, listed
/// extensionally: `images[q]` is the permutation of `N`'s indices by which
/// `q` acts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismAction {
    images: Vec<Vec<usize>>,
}

impl AutomorphismAction {
    /// Checks that every image is an automorphism of `normal` and that
    /// `q -> images[q]` respects the product of `acting`.
    pub fn new(normal: &Group, acting: &Group, images: Vec<Vec<usize>>) -> Result<Self, ConstructionError> {
        if images.len() != acting.order() {
            return Err(ConstructionError::ActionSize {
                expected: acting.order(),
                found: images.len(),
            });
        }
        for (q, perm) in images.iter().enumerate() {
            if !is_automorphism(normal, perm) {
                return Err(ConstructionError::NotAnAutomorphism { q });
            }
        }
        for q1 in acting.elements() {
            for q2 in acting.elements() {
                let q = acting.multiply(q1, q2);
                let composed_ok = normal
                    .elements()
                    .all(|x| images[q][x] == images[q1][images[q2][x]]);
                if !composed_ok {
                    return Err(ConstructionError::NotAHomomorphism { q1, q2 });
                }
            }
        }
        Ok(AutomorphismAction { images })
    }

    pub fn trivial(normal: &Group, acting: &Group) -> Self {
        let identity: Vec<usize> = normal.elements().collect();
        AutomorphismAction {
            images: vec![identity; acting.order()],
        }
    }

    /// Action of the cyclic group `C_k` whose generator (index 1 in the
    /// cyclic numbering) acts by `generator_image`.
    pub fn cyclic(normal: &Group, acting_order: usize, generator_image: &[usize]) -> Result<Self, ConstructionError> {
        let acting = cyclic(acting_order)?;
        let mut images = Vec::with_capacity(acting_order);
        let mut current: Vec<usize> = normal.elements().collect();
        for _ in 0..acting_order {
            images.push(current.clone());
            current = current.iter().map(|&x| generator_image[x]).collect();
        }
        AutomorphismAction::new(normal, &acting, images)
    }

    /// `C2` acting on an abelian group by inversion.
    pub fn inversion(normal: &Group) -> Result<Self, ConstructionError> {
        if !normal.is_abelian() {
            return Err(ConstructionError::NonAbelianBase(normal.name().to_string()));
        }
        let inverse: Vec<usize> = normal.elements().map(|x| normal.inverse(x)).collect();
        AutomorphismAction::cyclic(normal, 2, &inverse)
    }

    pub fn acting_order(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, q: usize, n: usize) -> usize {
        self.images[q][n]
    }

    pub fn image(&self, q: usize) -> &[usize] {
        &self.images[q]
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }
}

fn is_automorphism(group: &Group, perm: &[usize]) -> bool {
    if perm.len() != group.order() || perm[0] != 0 {
        return false;
    }
    let mut seen = vec![false; group.order()];
    for &x in perm {
        if x >= group.order() || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    group
        .elements()
        .all(|a| group.elements().all(|b| perm[group.multiply(a, b)] == group.multiply(perm[a], perm[b])))
}

/// `N ⋊ Q` with `(n1, q1)(n2, q2) = (n1 * q1(n2), q1 q2)`.
pub fn semidirect_product(
    normal: &Group,
    acting: &Group,
    action: &AutomorphismAction,
) -> Result<Group, ConstructionError> {
    if action.acting_order() != acting.order() {
        return Err(ConstructionError::ActionSize {
            expected: acting.order(),
            found: action.acting_order(),
        });
    }
    let k = acting.order();
    let name = format!("{}:{}", normal.name(), acting.name());
    build(normal.order() * k, name, |i, j| {
        let (n1, q1) = (i / k, i % k);
        let (n2, q2) = (j / k, j % k);
        normal.multiply(n1, action.apply(q1, n2)) * k + acting.multiply(q1, q2)
    })
}

/// Split extension of an abelian group by `C2` acting by inversion.
pub fn generalized_dihedral(base: &Group) -> Result<Group, ConstructionError> {
    let action = AutomorphismAction::inversion(base)?;
    let c2 = cyclic(2)?;
    Ok(semidirect_product(base, &c2, &action)?.with_name(format!("Dih({})", base.name())))
}

/// Direct product of cyclic groups, in the given order.
pub fn abelian(factors: &[usize]) -> Result<Group, ConstructionError> {
    let mut group = trivial();
    for (idx, &n) in factors.iter().enumerate() {
        let c = cyclic(n)?;
        group = if idx == 0 { c } else { direct_product(&group, &c)? };
    }
    Ok(group)
}

/// One representative of every abelian group of the given order, as
/// products of cyclic groups of prime-power order.
pub fn abelian_groups(order: usize) -> Vec<Group> {
    assert!(order > 0);
    let mut prime_powers: Vec<(usize, u32)> = Vec::new();
    let mut rest = order;
    let mut p = 2;
    while rest > 1 {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            prime_powers.push((p, e));
        }
        p += 1;
    }
    // Each prime contributes a partition of its exponent.
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for &(p, e) in &prime_powers {
        let mut next = Vec::new();
        for partition in partitions(e) {
            for prefix in &choices {
                let mut factors = prefix.clone();
                factors.extend(partition.iter().map(|&part| p.pow(part)));
                next.push(factors);
            }
        }
        choices = next;
    }
    choices
        .into_iter()
        .map(|factors| {
            if factors.is_empty() {
                trivial()
            } else {
                abelian(&factors).expect("prime-power factors are positive")
            }
        })
        .collect()
}

/// Partitions of `n` into non-increasing parts.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn involution_count(g: &Group) -> usize {
        g.elements().filter(|&x| g.multiply(x, x) == 0).count()
    }

    #[test]
    fn cyclic_family() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(cyclic(2).unwrap().row(1), &[1, 0]);
        for k in 1..20 {
            assert_eq!(involution_count(&cyclic(2 * k).unwrap()), 2);
            assert_eq!(involution_count(&cyclic(2 * k + 1).unwrap()), 1);
        }
        assert_eq!(cyclic(0), Err(ConstructionError::ZeroOrder));
    }

    #[test]
    fn dihedral_family() {
        let d8 = dihedral(8).unwrap();
        assert_eq!(involution_count(&d8), 6);
        assert_eq!(involution_count(&dihedral(6).unwrap()), 4);
        assert!(dihedral(4).unwrap().is_abelian());
        assert!(!d8.is_abelian());
        // r = 1, s = 4: r s is the reflection r s at index 5; s r = r^-1 s.
        assert_eq!(d8.multiply(1, 4), 5);
        assert_eq!(d8.multiply(4, 1), 7);
        for s in 4..8 {
            assert_eq!(d8.element_order(s), 2);
        }
        assert!(matches!(dihedral(7), Err(ConstructionError::BadDihedralOrder(7))));
        assert!(matches!(dihedral(0), Err(ConstructionError::BadDihedralOrder(0))));
    }

    #[test]
    fn quaternion_and_dicyclic() {
        let q8 = quaternion8();
        assert_eq!(q8.order(), 8);
        assert_eq!(involution_count(&q8), 2);
        let dic12 = dicyclic(12).unwrap();
        assert_eq!(involution_count(&dic12), 2);
        assert!(dicyclic(6).is_err());
    }

    #[test]
    fn elementary_abelian_family() {
        assert_eq!(elementary_abelian(0).unwrap().order(), 1);
        let ea3 = elementary_abelian(3).unwrap();
        assert!(ea3.element_orders().iter().all(|&o| o <= 2));
        assert_eq!(involution_count(&ea3), 8);
    }

    #[test]
    fn direct_product_pairs_lexicographically() {
        let g = direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.name(), "C4xC2");
        // (1,1) * (1,1) = (2,0)
        assert_eq!(g.multiply(3, 3), 4);
        let t = direct_product(&trivial(), &dihedral(6).unwrap()).unwrap();
        assert_eq!(t, dihedral(6).unwrap());
    }

    #[test]
    fn semidirect_with_trivial_action_is_direct() {
        let n = cyclic(3).unwrap();
        let q = cyclic(4).unwrap();
        let action = AutomorphismAction::trivial(&n, &q);
        assert!(action.is_trivial());
        assert_eq!(semidirect_product(&n, &q, &action).unwrap(), direct_product(&n, &q).unwrap());
    }

    #[test]
    fn action_validation() {
        let c4 = cyclic(4).unwrap();
        let c2 = cyclic(2).unwrap();
        // x -> x + 1 fixes nothing, so it is not an automorphism.
        let shift = vec![vec![0, 1, 2, 3], vec![1, 2, 3, 0]];
        assert_eq!(
            AutomorphismAction::new(&c4, &c2, shift),
            Err(ConstructionError::NotAnAutomorphism { q: 1 })
        );
        // Inversion for the generator of C4 acting on C4 is fine, but assigning
        // inversion to q = 2 as well breaks the homomorphism law.
        let c4q = cyclic(4).unwrap();
        let inv = vec![0, 3, 2, 1];
        let id = vec![0, 1, 2, 3];
        let bad = vec![id.clone(), inv.clone(), inv.clone(), inv.clone()];
        assert!(matches!(
            AutomorphismAction::new(&c4, &c4q, bad),
            Err(ConstructionError::NotAHomomorphism { .. })
        ));
        assert!(AutomorphismAction::cyclic(&c4, 4, &inv).is_ok());
        assert!(matches!(
            AutomorphismAction::new(&c4, &c2, vec![id]),
            Err(ConstructionError::ActionSize { .. })
        ));
    }

    #[test]
    fn generalized_dihedral_checks_base() {
        assert!(matches!(
            generalized_dihedral(&dihedral(8).unwrap()),
            Err(ConstructionError::NonAbelianBase(_))
        ));
        let g = generalized_dihedral(&cyclic(5).unwrap()).unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(involution_count(&g), 6);
        assert_eq!(g.name(), "Dih(C5)");
    }

    #[test]
    fn abelian_group_lists() {
        let counts: Vec<usize> = (1..=32).map(|n| abelian_groups(n).len()).collect();
        assert_eq!(&counts[..16], &[1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        assert_eq!(counts[31], 7);
        for g in abelian_groups(24) {
            assert_eq!(g.order(), 24);
            assert!(g.is_abelian());
        }
    }
}
