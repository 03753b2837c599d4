//! Involution sets, counts, exact proportions and the counting bounds.
//!
//! Following the usual convention for these statistics, the identity counts
//! as an involution: `J(X) = {x ∈ X : x^2 = 1}`.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::constructors::{semidirect_product, AutomorphismAction, ConstructionError};
use crate::group::{Group, OrderFactorization, SubsetMask};
use crate::structure::{self, StructureError};

pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error("subgroup is not central in {0}")]
    NotCentral(String),
    #[error("subgroup is not normal in {0}")]
    NotNormal(String),
    #[error("bound needs a group of even order, {name} has order {order}")]
    OddOrder { name: String, order: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvolutionStats {
    pub order: usize,
    pub j_count: usize,
    pub alpha: Rational,
    pub factorization: OrderFactorization,
}

pub fn involution_set(group: &Group) -> SubsetMask {
    SubsetMask::from_predicate(group.order(), |x| group.multiply(x, x) == 0)
}

pub fn involutions_in(group: &Group, subset: &SubsetMask) -> SubsetMask {
    SubsetMask::from_indices(group.order(), subset.iter().filter(|&x| group.multiply(x, x) == 0))
}

pub fn stats(group: &Group) -> InvolutionStats {
    let j_count = involution_set(group).len();
    InvolutionStats {
        order: group.order(),
        j_count,
        alpha: Rational::new(j_count as u64, group.order() as u64),
        factorization: group.factorize_order(),
    }
}

/// `j(D_2n)`: `n + 1` for odd `n`, `n + 2` for even `n`.
pub fn dihedral_j_closed_form(n: usize) -> usize {
    if n % 2 == 1 {
        n + 1
    } else {
        n + 2
    }
}

/// `α(D_2n)`: `1/2 + 1/(2n)` for odd `n`, `1/2 + 1/n` for even `n`.
pub fn dihedral_alpha_closed_form(n: usize) -> Rational {
    let half = Rational::new(1, 2);
    if n % 2 == 1 {
        half + Rational::new(1, 2 * n as u64)
    } else {
        half + Rational::new(1, n as u64)
    }
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    #[serde(serialize_with = "ser_ratio")]
    pub lhs: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub rhs: Rational,
    pub holds: bool,
    pub equality: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

pub fn format_ratio(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl BoundCheck {
    pub fn new(lhs: Rational, rhs: Rational) -> Self {
        BoundCheck {
            lhs,
            rhs,
            holds: lhs <= rhs,
            equality: lhs == rhs,
        }
    }

    pub fn counts(lhs: usize, rhs: usize) -> Self {
        Self::new(Rational::from_integer(lhs as u64), Rational::from_integer(rhs as u64))
    }
}

/// A quotient bound evaluated on involution counts and on proportions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientBoundCheck {
    pub count: BoundCheck,
    pub proportion: BoundCheck,
}

impl QuotientBoundCheck {
    pub fn holds(&self) -> bool {
        self.count.holds && self.proportion.holds
    }
}

/// For central `H`: `j(G) <= j(G/H) j(H)` and `α(G) <= α(G/H) α(H)`.
pub fn check_central_bound(group: &Group, subgroup: &SubsetMask) -> Result<QuotientBoundCheck, InvolutionError> {
    if !subgroup.is_subgroup_of(group) {
        return Err(StructureError::NotSubgroup(group.name().to_string()).into());
    }
    if !subgroup.is_subset(&structure::center(group)) {
        return Err(InvolutionError::NotCentral(group.name().to_string()));
    }
    let (q, _) = structure::quotient(group, subgroup)?;
    let g_stats = stats(group);
    let q_stats = stats(&q);
    let h_inv = involutions_in(group, subgroup).len();
    let h_alpha = Rational::new(h_inv as u64, subgroup.len() as u64);
    Ok(QuotientBoundCheck {
        count: BoundCheck::counts(g_stats.j_count, q_stats.j_count * h_inv),
        proportion: BoundCheck::new(g_stats.alpha, q_stats.alpha * h_alpha),
    })
}

/// For normal `H`: `j(G) <= |H| j(G/H)` and `α(G) <= α(G/H)`.
pub fn check_normal_bound(group: &Group, subgroup: &SubsetMask) -> Result<QuotientBoundCheck, InvolutionError> {
    if subgroup.is_subgroup_of(group) && !structure::is_normal(group, subgroup) {
        return Err(InvolutionError::NotNormal(group.name().to_string()));
    }
    let (q, _) = structure::quotient(group, subgroup)?;
    let g_stats = stats(group);
    let q_stats = stats(&q);
    Ok(QuotientBoundCheck {
        count: BoundCheck::counts(g_stats.j_count, subgroup.len() * q_stats.j_count),
        proportion: BoundCheck::new(g_stats.alpha, q_stats.alpha),
    })
}

/// `α(G) <= |S| / |N_G(S)|` for a Sylow 2-subgroup `S`.
pub fn check_sylow_bound(group: &Group) -> Result<BoundCheck, InvolutionError> {
    let s = structure::sylow2(group)?;
    let n = structure::normalizer(group, &s);
    Ok(BoundCheck::new(stats(group).alpha, Rational::new(s.len() as u64, n.len() as u64)))
}

/// `j(G) <= 2^(n-1) (m + 1)` for `|G| = 2^n m`, `m` odd, `n >= 1`.
pub fn check_edmonds_bound(group: &Group) -> Result<BoundCheck, InvolutionError> {
    let f = group.factorize_order();
    if f.two_exponent == 0 {
        return Err(InvolutionError::OddOrder {
            name: group.name().to_string(),
            order: group.order(),
        });
    }
    Ok(BoundCheck::counts(stats(group).j_count, edmonds_bound(f)))
}

pub fn edmonds_bound(f: OrderFactorization) -> usize {
    (1usize << (f.two_exponent - 1)) * (f.odd_part + 1)
}

/// `α(G) <= (m + 1) / 2m` for `|G| = 2^n m`, `m` odd, `n >= 1`.
pub fn check_odd_part_proportion(group: &Group) -> Result<BoundCheck, InvolutionError> {
    let f = group.factorize_order();
    if f.two_exponent == 0 {
        return Err(InvolutionError::OddOrder {
            name: group.name().to_string(),
            order: group.order(),
        });
    }
    let m = f.odd_part as u64;
    Ok(BoundCheck::new(stats(group).alpha, Rational::new(m + 1, 2 * m)))
}

/// Outcome of comparing the involutions of `N ⋊ Q` read off the table with
/// the set `{(n, q) : q^2 = 1, q(n) = n^-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectComparison {
    pub direct: SubsetMask,
    pub characterized: SubsetMask,
}

impl SemidirectComparison {
    pub fn agrees(&self) -> bool {
        self.direct == self.characterized
    }
}

pub fn compare_semidirect_characterization(
    normal: &Group,
    acting: &Group,
    action: &AutomorphismAction,
) -> Result<SemidirectComparison, InvolutionError> {
    let product = semidirect_product(normal, acting, action)?;
    let direct = involution_set(&product);
    let k = acting.order();
    let characterized = SubsetMask::from_indices(
        product.order(),
        normal.elements().flat_map(|n| {
            acting
                .elements()
                .filter(move |&q| acting.multiply(q, q) == 0 && action.apply(q, n) == normal.inverse(n))
                .map(move |q| n * k + q)
        }),
    );
    Ok(SemidirectComparison { direct, characterized })
}

pub fn check_semidirect_characterization(
    normal: &Group,
    acting: &Group,
    action: &AutomorphismAction,
) -> Result<bool, InvolutionError> {
    Ok(compare_semidirect_characterization(normal, acting, action)?.agrees())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;
    use crate::structure::{center, generated_subgroup};

    fn r(n: u64, d: u64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn involution_sets() {
        assert_eq!(involution_set(&cyclic(3).unwrap()), SubsetMask::trivial(3));
        assert_eq!(involution_set(&dihedral(8).unwrap()).len(), 6);
        assert!(involution_set(&elementary_abelian(4).unwrap()).is_full());
    }

    #[test]
    fn stats_examples() {
        assert_eq!(stats(&dihedral(8).unwrap()).alpha, r(3, 4));
        assert_eq!(stats(&dihedral(6).unwrap()).alpha, r(2, 3));
        assert_eq!(stats(&quaternion8()).alpha, r(1, 4));
        for n in 2..=6u32 {
            let g = direct_product(&cyclic(4).unwrap(), &elementary_abelian(n - 2).unwrap()).unwrap();
            assert_eq!(stats(&g).j_count, 1 << (n - 1));
        }
        let s = stats(&elementary_abelian(5).unwrap());
        assert_eq!((s.j_count, s.alpha), (32, r(1, 1)));
    }

    #[test]
    fn dihedral_closed_forms() {
        assert_eq!(dihedral_j_closed_form(3), 4);
        assert_eq!(dihedral_j_closed_form(4), 6);
        assert_eq!(dihedral_j_closed_form(2), 4);
        assert_eq!(dihedral_alpha_closed_form(3), r(2, 3));
        assert_eq!(dihedral_alpha_closed_form(4), r(3, 4));
        assert_eq!(dihedral_alpha_closed_form(2), r(1, 1));
    }

    #[test]
    fn central_bound_examples() {
        let d8 = dihedral(8).unwrap();
        let c = check_central_bound(&d8, &center(&d8)).unwrap();
        assert_eq!(c.count, BoundCheck::counts(6, 8));
        let t = check_central_bound(&d8, &SubsetMask::trivial(8)).unwrap();
        assert!(t.count.equality);
        let c4 = cyclic(4).unwrap();
        let c = check_central_bound(&c4, &generated_subgroup(&c4, &[2])).unwrap();
        assert_eq!(c.count, BoundCheck::counts(2, 4));
        assert!(matches!(
            check_central_bound(&d8, &generated_subgroup(&d8, &[1])),
            Err(InvolutionError::NotCentral(_))
        ));
    }

    #[test]
    fn normal_bound_examples() {
        let d8 = dihedral(8).unwrap();
        let c = check_normal_bound(&d8, &generated_subgroup(&d8, &[1])).unwrap();
        assert_eq!(c.count, BoundCheck::counts(6, 8));
        let whole = check_normal_bound(&d8, &SubsetMask::full(8)).unwrap();
        assert_eq!(whole.count, BoundCheck::counts(6, 8));
        let d12 = dihedral(12).unwrap();
        let c = check_normal_bound(&d12, &generated_subgroup(&d12, &[2])).unwrap();
        assert_eq!(c.proportion, BoundCheck::new(r(2, 3), r(1, 1)));
        assert!(matches!(
            check_normal_bound(&d8, &generated_subgroup(&d8, &[4])),
            Err(InvolutionError::NotNormal(_))
        ));
    }

    #[test]
    fn sylow_bound_examples() {
        let c = check_sylow_bound(&dihedral(6).unwrap()).unwrap();
        assert_eq!(c, BoundCheck::new(r(2, 3), r(1, 1)));
        let c = check_sylow_bound(&cyclic(6).unwrap()).unwrap();
        assert_eq!(c, BoundCheck::new(r(1, 3), r(1, 3)));
        assert!(c.equality);
        assert!(check_sylow_bound(&quaternion8()).unwrap().holds);
    }

    #[test]
    fn edmonds_examples() {
        let c = check_edmonds_bound(&dihedral(6).unwrap()).unwrap();
        assert_eq!(c, BoundCheck::counts(4, 4));
        for k in 1..=6 {
            assert!(check_edmonds_bound(&elementary_abelian(k).unwrap()).unwrap().equality);
        }
        let c = check_edmonds_bound(&quaternion8()).unwrap();
        assert_eq!(c, BoundCheck::counts(2, 8));
        assert!(!c.equality);
        assert!(matches!(check_edmonds_bound(&cyclic(5).unwrap()), Err(InvolutionError::OddOrder { .. })));
    }

    #[test]
    fn semidirect_characterization_examples() {
        let c4 = cyclic(4).unwrap();
        let c2 = cyclic(2).unwrap();
        let cmp = compare_semidirect_characterization(&c4, &c2, &AutomorphismAction::inversion(&c4).unwrap()).unwrap();
        assert!(cmp.agrees());
        assert_eq!(cmp.direct.len(), 6);
        let c3 = cyclic(3).unwrap();
        let cmp = compare_semidirect_characterization(&c3, &c2, &AutomorphismAction::inversion(&c3).unwrap()).unwrap();
        assert!(cmp.agrees());
        assert_eq!(cmp.direct.len(), 4);
        let trivial = AutomorphismAction::trivial(&c4, &c2);
        let cmp = compare_semidirect_characterization(&c4, &c2, &trivial).unwrap();
        assert!(cmp.agrees());
        assert_eq!(cmp.direct.len(), 2 * 2);
    }

    #[test]
    fn ratio_formatting() {
        assert_eq!(format_ratio(&r(6, 8)), "3/4");
        assert_eq!(format_ratio(&r(4, 4)), "1");
    }
}
