//! Executable checks of the involution-counting results over the catalog
//! and the parameterized families, collected into a deterministic report.
//!
//! Each check scans a population, counts the members satisfying its
//! hypothesis, and records a failure witness for every member where the
//! conclusion does not hold. Checks are independent and run on a rayon
//! pool; results are merged in [`CheckId::ALL`] order, so the report does
//! not depend on the worker count.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{self, CatalogEntry, CatalogError, MAX_ENUMERATION_ORDER};
use crate::constructors::{self as c, AutomorphismAction, ConstructionError};
use crate::group::{Group, SubsetMask};
use crate::involutions::{self as inv, format_ratio, stats, InvolutionError, Rational};
use crate::structure::{self as st, AutomorphismLimits, StructureError};

pub const SCHEMA_VERSION: u32 = 1;
const MAX_EXAMPLES: usize = 12;
const MAX_WITNESSES: usize = 50;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error("cannot build thread pool: {0}")]
    ThreadPool(String),
}

/// Every result the verifier checks. The `anchor` of each names the
/// statement being checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    AlphaRange,
    AbelianInvolutionSubgroup,
    AbelianHalfCorollary,
    DihedralClosedForm,
    DirectProductLemma,
    NormalSubgroupLemma,
    CentralSubgroupLemma,
    SemidirectCharacterization,
    SylowBound,
    SylowSelfNormalizing,
    CenterElementaryAbelian,
    CenterStrictness,
    EdmondsBound,
    TwoThirdsCorollary,
    EdmondsEqualityCase,
    MainTheorem,
    ThreeQuartersClassification,
    SurjectionLemma,
    DihedralSubgroupFacts,
    AutD8Facts,
    CatalogOracle,
}

impl CheckId {
    pub const ALL: [CheckId; 21] = [
        CheckId::AlphaRange,
        CheckId::AbelianInvolutionSubgroup,
        CheckId::AbelianHalfCorollary,
        CheckId::DihedralClosedForm,
        CheckId::DirectProductLemma,
        CheckId::NormalSubgroupLemma,
        CheckId::CentralSubgroupLemma,
        CheckId::SemidirectCharacterization,
        CheckId::SylowBound,
        CheckId::SylowSelfNormalizing,
        CheckId::CenterElementaryAbelian,
        CheckId::CenterStrictness,
        CheckId::EdmondsBound,
        CheckId::TwoThirdsCorollary,
        CheckId::EdmondsEqualityCase,
        CheckId::MainTheorem,
        CheckId::ThreeQuartersClassification,
        CheckId::SurjectionLemma,
        CheckId::DihedralSubgroupFacts,
        CheckId::AutD8Facts,
        CheckId::CatalogOracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::AlphaRange => "alpha-range",
            CheckId::AbelianInvolutionSubgroup => "abelian-involution-subgroup",
            CheckId::AbelianHalfCorollary => "abelian-half-corollary",
            CheckId::DihedralClosedForm => "dihedral-closed-form",
            CheckId::DirectProductLemma => "direct-product-lemma",
            CheckId::NormalSubgroupLemma => "normal-subgroup-lemma",
            CheckId::CentralSubgroupLemma => "central-subgroup-lemma",
            CheckId::SemidirectCharacterization => "semidirect-characterization",
            CheckId::SylowBound => "sylow-bound",
            CheckId::SylowSelfNormalizing => "sylow-self-normalizing",
            CheckId::CenterElementaryAbelian => "center-elementary-abelian",
            CheckId::CenterStrictness => "center-strictness",
            CheckId::EdmondsBound => "edmonds-bound",
            CheckId::TwoThirdsCorollary => "two-thirds-corollary",
            CheckId::EdmondsEqualityCase => "edmonds-equality-case",
            CheckId::MainTheorem => "main-theorem",
            CheckId::ThreeQuartersClassification => "three-quarters-classification",
            CheckId::SurjectionLemma => "surjection-lemma",
            CheckId::DihedralSubgroupFacts => "dihedral-subgroup-facts",
            CheckId::AutD8Facts => "aut-d8-facts",
            CheckId::CatalogOracle => "catalog-oracle",
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            CheckId::AlphaRange => "alpha(G) = j(G)/|G| lies in (0, 1]",
            CheckId::AbelianInvolutionSubgroup => {
                "G abelian => J(G) is an elementary abelian subgroup and j(G) is a power of 2 dividing |G|"
            }
            CheckId::AbelianHalfCorollary => "G abelian and alpha(G) > 1/2 => G is an elementary abelian 2-group",
            CheckId::DihedralClosedForm => {
                "j(D_2n) = n+1 (n odd), n+2 (n even); alpha(D_2n) <= 3/4 unless D_2n is elementary abelian (n <= 2)"
            }
            CheckId::DirectProductLemma => "J(H x K) = J(H) x J(K), j(H x K) = j(H) j(K), alpha(H x K) = alpha(H) alpha(K)",
            CheckId::NormalSubgroupLemma => "H normal in G => j(G) <= |H| j(G/H) and alpha(G) <= alpha(G/H)",
            CheckId::CentralSubgroupLemma => "H central in G => j(G) <= j(G/H) j(H) and alpha(G) <= alpha(G/H) alpha(H)",
            CheckId::SemidirectCharacterization => "G = N:Q => J(G) = {nq : q^2 = 1, qnq = n^-1}",
            CheckId::SylowBound => "S Sylow 2-subgroup => alpha(G) <= |S|/|N_G(S)|",
            CheckId::SylowSelfNormalizing => "alpha(G) > 1/2 => N_G(S) = S for a Sylow 2-subgroup S",
            CheckId::CenterElementaryAbelian => "j(G) > |G|/2 => Z(G) is an elementary abelian 2-group",
            CheckId::CenterStrictness => "C4 x C2^(n-2): j(G) = |G|/2 and Z(G) = G is not elementary abelian",
            CheckId::EdmondsBound => "|G| = 2^n m, m odd, n >= 1 => j(G) <= 2^(n-1)(m+1)",
            CheckId::TwoThirdsCorollary => "|G| = 2^n m, m odd, n >= 1 => alpha(G) <= (m+1)/2m; m > 1 => alpha(G) <= 2/3",
            CheckId::EdmondsEqualityCase => {
                "j(G) = 2^(n-1)(m+1) <=> G = C2^(n-1) x Dih(A) with A abelian of order m"
            }
            CheckId::MainTheorem => "alpha(G) > 3/4 => G is an elementary abelian 2-group",
            CheckId::ThreeQuartersClassification => "alpha(G) = 3/4 <=> |G| = 2^n, n >= 3, G = D8 x C2^(n-3)",
            CheckId::SurjectionLemma => {
                "|G| = 2^n, alpha(G) = 3/4, pi: G ->> D8 => ker pi = C2^(n-3), pi splits, G = ker pi x D8"
            }
            CheckId::DihedralSubgroupFacts => {
                "in D8 x C2^k: involutions x, y with (xy)^2 != 1 give <x,y> = D8 and <x,y> meet Z(G) = <(xy)^2>"
            }
            CheckId::AutD8Facts => {
                "Aut(D8) = D8 of order 8 with 6 involutions, each inverting <= 6 elements, exactly 3 inverting 6"
            }
            CheckId::CatalogOracle => "Cayley-table enumeration and the construction list agree up to isomorphism",
        }
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyConfig {
    pub max_order: usize,
    pub dihedral_max_n: usize,
    pub enumerate_up_to: usize,
    /// Largest order for the C4 x C2^k, D8 x C2^k, C2^k and Dih(A) families.
    pub family_max_order: usize,
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_order: 16,
            dihedral_max_n: 64,
            enumerate_up_to: MAX_ENUMERATION_ORDER,
            family_max_order: 64,
            threads: None,
        }
    }
}

impl VerifyConfig {
    pub fn new(max_order: usize, dihedral_max_n: usize) -> Self {
        VerifyConfig {
            max_order,
            dihedral_max_n,
            ..VerifyConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub id: CheckId,
    pub anchor: &'static str,
    pub population: String,
    pub population_size: usize,
    pub hypothesis_count: usize,
    pub pass_count: usize,
    pub fail_count: usize,
    pub witnesses: Vec<String>,
    pub examples: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.fail_count == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub schema_version: u32,
    pub parameters: VerifyConfig,
    pub overall_pass: bool,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn check(&self, id: CheckId) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.parameters;
        let _ = writeln!(out, "verification report (schema {})", self.schema_version);
        let _ = writeln!(
            out,
            "max order {}, dihedral n <= {}, families up to order {}, enumeration up to order {}",
            p.max_order, p.dihedral_max_n, p.family_max_order, p.enumerate_up_to.min(p.max_order).min(MAX_ENUMERATION_ORDER)
        );
        let _ = writeln!(
            out,
            "{:<30} {:>10} {:>10} {:>8} {:>6}  status",
            "check", "population", "hypothesis", "pass", "fail"
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<30} {:>10} {:>10} {:>8} {:>6}  {}",
                c.id.as_str(),
                c.population_size,
                c.hypothesis_count,
                c.pass_count,
                c.fail_count,
                if c.passed() { "ok" } else { "FAIL" }
            );
            for w in &c.witnesses {
                let _ = writeln!(out, "    counterexample: {w}");
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        let failures: usize = self.checks.iter().map(|c| c.fail_count).sum();
        let _ = writeln!(
            out,
            "overall: {} ({} checks, {} failures)",
            if self.overall_pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            failures
        );
        out
    }
}

/// A group under test, with where it came from.
#[derive(Debug, Clone)]
pub struct Subject {
    pub name: String,
    pub group: Group,
    pub from_catalog: bool,
}

/// Everything the checks scan.
pub struct Population {
    pub config: VerifyConfig,
    pub catalog: Vec<CatalogEntry>,
    /// Catalog entries followed by family members not already listed.
    pub subjects: Vec<Subject>,
}

impl Population {
    pub fn build(config: VerifyConfig) -> Result<Self, VerifyError> {
        let catalog = catalog::constructed_catalog(config.max_order)?;
        let mut subjects: Vec<Subject> = catalog
            .iter()
            .map(|e| Subject {
                name: e.canonical_name.clone(),
                group: e.group.clone(),
                from_catalog: true,
            })
            .collect();
        let mut known: HashSet<String> = catalog
            .iter()
            .flat_map(|e| std::iter::once(e.canonical_name.clone()).chain(e.aliases.iter().cloned()))
            .collect();
        for group in families(&config)? {
            if known.insert(group.name().to_string()) {
                subjects.push(Subject {
                    name: group.name().to_string(),
                    group,
                    from_catalog: false,
                });
            }
        }
        Ok(Population {
            config,
            catalog,
            subjects,
        })
    }

    fn describe(&self) -> String {
        format!(
            "catalog up to order {} plus families (D_2n for n <= {}, others up to order {})",
            self.config.max_order, self.config.dihedral_max_n, self.config.family_max_order
        )
    }
}

/// `C4 x C2^(n-2)` for `n >= 2`.
pub fn c4_times_ea(n: u32) -> Result<Group, ConstructionError> {
    let c4 = c::cyclic(4)?;
    if n == 2 {
        return Ok(c4);
    }
    c::direct_product(&c4, &c::elementary_abelian(n - 2)?)
}

/// `C2^k x Dih(A)`.
pub fn ea_times_dih(k: u32, base: &Group) -> Result<Group, ConstructionError> {
    let dih = c::generalized_dihedral(base)?;
    if k == 0 {
        return Ok(dih);
    }
    c::direct_product(&c::elementary_abelian(k)?, &dih)
}

fn families(config: &VerifyConfig) -> Result<Vec<Group>, ConstructionError> {
    let limit = config.family_max_order;
    let mut out = Vec::new();
    for n in 1..=config.dihedral_max_n {
        out.push(c::dihedral(2 * n)?);
    }
    for n in 2u32.. {
        if 1usize << n > limit {
            break;
        }
        out.push(c4_times_ea(n)?);
    }
    for k in 0u32.. {
        if 8usize << k > limit {
            break;
        }
        out.push(st::d8_times_ea(k)?);
    }
    for k in 0u32.. {
        if 1usize << k > limit {
            break;
        }
        out.push(c::elementary_abelian(k)?);
    }
    for m in 1..=limit / 2 {
        for base in c::abelian_groups(m) {
            out.push(c::generalized_dihedral(&base)?);
        }
    }
    for (k, base) in edmonds_family_bases(limit) {
        if k > 0 {
            out.push(ea_times_dih(k, &base)?);
        }
    }
    Ok(out)
}

/// `(k, A)` with `|A|` odd and `|C2^k x Dih(A)| <= limit`.
fn edmonds_family_bases(limit: usize) -> Vec<(u32, Group)> {
    let mut out = Vec::new();
    for m in (1..=limit / 2).step_by(2) {
        for base in c::abelian_groups(m) {
            for k in 0u32.. {
                if (2 * m) << k > limit {
                    break;
                }
                out.push((k, base.clone()));
            }
        }
    }
    out
}

/// Committed semidirect-product fixtures: `(name, N, Q, action)`.
pub fn semidirect_fixtures() -> Result<Vec<(String, Group, Group, AutomorphismAction)>, ConstructionError> {
    let mut out = Vec::new();
    let mut add = |name: &str, n: Group, q: Group, action: AutomorphismAction| {
        out.push((name.to_string(), n, q, action));
    };
    let c2 = c::cyclic(2)?;
    let c3 = c::cyclic(3)?;
    let c4 = c::cyclic(4)?;
    let c8 = c::cyclic(8)?;
    let v4 = c::elementary_abelian(2)?;

    add("C4:C2 inversion", c4.clone(), c2.clone(), AutomorphismAction::inversion(&c4)?);
    add("C3:C2 inversion", c3.clone(), c2.clone(), AutomorphismAction::inversion(&c3)?);
    add("C4:C2 trivial", c4.clone(), c2.clone(), AutomorphismAction::trivial(&c4, &c2));
    add("C3:C4 trivial", c3.clone(), c4.clone(), AutomorphismAction::trivial(&c3, &c4));
    add("C3:C4 inversion", c3.clone(), c4.clone(), AutomorphismAction::cyclic(&c3, 4, &[0, 2, 1])?);
    add("C2^2:C3 cycling", v4.clone(), c3.clone(), AutomorphismAction::cyclic(&v4, 3, &[0, 2, 3, 1])?);
    add("C2^2:C4 swap", v4.clone(), c4.clone(), AutomorphismAction::cyclic(&v4, 4, &[0, 2, 1, 3])?);
    let times = |f: usize| -> Vec<usize> { (0..8).map(|i| i * f % 8).collect() };
    add("C8:C2 x^3", c8.clone(), c2.clone(), AutomorphismAction::cyclic(&c8, 2, &times(3))?);
    add("C8:C2 x^5", c8.clone(), c2.clone(), AutomorphismAction::cyclic(&c8, 2, &times(5))?);
    add("C8:C2 inversion", c8.clone(), c2.clone(), AutomorphismAction::inversion(&c8)?);
    add("C4:C4 inversion", c4.clone(), c4.clone(), AutomorphismAction::cyclic(&c4, 4, &[0, 3, 2, 1])?);
    let c5 = c::cyclic(5)?;
    add("C5:C4 x^2", c5.clone(), c4.clone(), AutomorphismAction::cyclic(&c5, 4, &[0, 2, 4, 1, 3])?);
    let c7 = c::cyclic(7)?;
    add("C7:C3 x^2", c7.clone(), c3.clone(), AutomorphismAction::cyclic(&c7, 3, &[0, 2, 4, 6, 1, 3, 5])?);
    // Q8 with i -> j -> k -> i, giving SL(2,3).
    let q8 = c::quaternion8();
    add("Q8:C3 cycling", q8.clone(), c3.clone(), AutomorphismAction::cyclic(&q8, 3, &[0, 4, 2, 6, 5, 1, 7, 3])?);
    // D8 with conjugation by the reflection s (index 4).
    let d8 = c::dihedral(8)?;
    let conj: Vec<usize> = d8.elements().map(|x| d8.conjugate(4, x)).collect();
    add("D8:C2 conjugation", d8.clone(), c2.clone(), AutomorphismAction::cyclic(&d8, 2, &conj)?);
    let c4c2 = c::direct_product(&c4, &c2)?;
    add("(C4xC2):C2 inversion", c4c2.clone(), c2.clone(), AutomorphismAction::inversion(&c4c2)?);
    Ok(out)
}

#[derive(Default)]
struct Tally {
    population_size: usize,
    hypothesis_count: usize,
    pass_count: usize,
    fail_count: usize,
    witnesses: Vec<String>,
    examples: Vec<String>,
}

impl Tally {
    fn scanned(&mut self) {
        self.population_size += 1;
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.hypothesis_count += 1;
        if ok {
            self.pass_count += 1;
        } else {
            self.fail_count += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    /// Scanned, hypothesis holds, and the conclusion is `ok`.
    fn item(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.scanned();
        self.record(ok, witness);
    }

    fn example(&mut self, text: impl FnOnce() -> String) {
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(text());
        }
    }

    fn finish(self, id: CheckId, population: String) -> CheckResult {
        CheckResult {
            id,
            anchor: id.anchor(),
            population,
            population_size: self.population_size,
            hypothesis_count: self.hypothesis_count,
            pass_count: self.pass_count,
            fail_count: self.fail_count,
            witnesses: self.witnesses,
            examples: self.examples,
        }
    }
}

pub fn verify_all(config: VerifyConfig) -> Result<VerificationReport, VerifyError> {
    let run = || -> Result<VerificationReport, VerifyError> {
        let population = Population::build(config)?;
        let checks = CheckId::ALL
            .par_iter()
            .map(|&id| run_check(id, &population))
            .collect::<Result<Vec<_>, _>>()?;
        let overall_pass = checks.iter().all(CheckResult::passed);
        let enumerated = config.enumerate_up_to.min(config.max_order).min(MAX_ENUMERATION_ORDER);
        let mut notes = Vec::new();
        if config.max_order > enumerated {
            notes.push(format!(
                "catalog completeness for orders {}..={} is relative to the committed construction list; \
                 orders up to {} are cross-checked by Cayley-table enumeration",
                enumerated + 1,
                config.max_order,
                enumerated
            ));
        }
        Ok(VerificationReport {
            schema_version: SCHEMA_VERSION,
            parameters: config,
            overall_pass,
            checks,
            notes,
        })
    };
    match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| VerifyError::ThreadPool(e.to_string()))?
            .install(run),
        None => run(),
    }
}

pub fn run_check(id: CheckId, pop: &Population) -> Result<CheckResult, VerifyError> {
    match id {
        CheckId::AlphaRange => Ok(check_alpha_range(pop)),
        CheckId::AbelianInvolutionSubgroup => Ok(check_abelian_involution_subgroup(pop)),
        CheckId::AbelianHalfCorollary => Ok(check_abelian_half(pop)),
        CheckId::DihedralClosedForm => check_dihedral_closed_form(pop),
        CheckId::DirectProductLemma => check_direct_product_lemma(pop),
        CheckId::NormalSubgroupLemma => Ok(check_normal_lemma(pop)),
        CheckId::CentralSubgroupLemma => Ok(check_central_lemma(pop)),
        CheckId::SemidirectCharacterization => check_semidirect(),
        CheckId::SylowBound => Ok(check_sylow_bound(pop)),
        CheckId::SylowSelfNormalizing => Ok(check_sylow_self_normalizing(pop)),
        CheckId::CenterElementaryAbelian => Ok(check_center_ea(pop)),
        CheckId::CenterStrictness => check_center_strictness(pop),
        CheckId::EdmondsBound => Ok(check_edmonds_bound(pop)),
        CheckId::TwoThirdsCorollary => Ok(check_two_thirds(pop)),
        CheckId::EdmondsEqualityCase => check_edmonds_equality(pop),
        CheckId::MainTheorem => Ok(check_main_theorem(pop)),
        CheckId::ThreeQuartersClassification => Ok(check_three_quarters(pop)),
        CheckId::SurjectionLemma => check_surjection_lemma(pop),
        CheckId::DihedralSubgroupFacts => check_dihedral_subgroups(pop),
        CheckId::AutD8Facts => check_aut_d8(),
        CheckId::CatalogOracle => check_catalog_oracle(pop),
    }
}

fn r(n: u64, d: u64) -> Rational {
    Rational::new(n, d)
}

fn check_alpha_range(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    for s in &pop.subjects {
        let st = stats(&s.group);
        let ok = st.alpha > r(0, 1) && st.alpha <= r(1, 1) && st.j_count >= 1 && st.j_count <= st.order;
        t.item(ok, || format!("{}: j = {}, alpha = {}", s.name, st.j_count, format_ratio(&st.alpha)));
    }
    t.finish(CheckId::AlphaRange, pop.describe())
}

fn check_abelian_involution_subgroup(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    for s in &pop.subjects {
        t.scanned();
        let g = &s.group;
        if !g.is_abelian() {
            continue;
        }
        let j = inv::involution_set(g);
        let ok = j.is_subgroup_of(g) && j.len().is_power_of_two() && g.order() % j.len() == 0;
        t.record(ok, || format!("{}: J(G) of size {} is not an elementary abelian subgroup", s.name, j.len()));
    }
    t.finish(CheckId::AbelianInvolutionSubgroup, format!("abelian members of {}", pop.describe()))
}

fn check_abelian_half(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    for s in &pop.subjects {
        t.scanned();
        if !s.group.is_abelian() || stats(&s.group).alpha <= r(1, 2) {
            continue;
        }
        t.record(st::is_elementary_abelian2(&s.group), || format!("{}: abelian with alpha > 1/2", s.name));
        t.example(|| s.name.clone());
    }
    t.finish(CheckId::AbelianHalfCorollary, format!("abelian members of {}", pop.describe()))
}

fn check_dihedral_closed_form(pop: &Population) -> Result<CheckResult, VerifyError> {
    let mut t = Tally::default();
    for n in 1..=pop.config.dihedral_max_n {
        let g = c::dihedral(2 * n)?;
        let s = stats(&g);
        let j_ok = s.j_count == inv::dihedral_j_closed_form(n);
        let alpha_ok = s.alpha == inv::dihedral_alpha_closed_form(n);
        // D2 = C2 and D4 = C2^2 are the elementary abelian exceptions.
        let bound_ok = if n <= 2 {
            st::is_elementary_abelian2(&g)
        } else {
            s.alpha <= r(3, 4)
        };
        t.item(j_ok && alpha_ok && bound_ok, || {
            format!(
                "D{}: j = {} (closed form {}), alpha = {}",
                2 * n,
                s.j_count,
                inv::dihedral_j_closed_form(n),
                format_ratio(&s.alpha)
            )
        });
        if s.alpha == r(3, 4) {
            t.example(|| format!("D{} attains alpha = 3/4", 2 * n));
        }
    }
    Ok(t.finish(
        CheckId::DihedralClosedForm,
        format!("D_2n for 1 <= n <= {}", pop.config.dihedral_max_n),
    ))
}

fn check_direct_product_lemma(pop: &Population) -> Result<CheckResult, VerifyError> {
    let mut t = Tally::default();
    let sets: Vec<(SubsetMask, Rational)> = pop
        .catalog
        .iter()
        .map(|e| (inv::involution_set(&e.group), stats(&e.group).alpha))
        .collect();
    for (h, (jh, ah)) in pop.catalog.iter().zip(&sets) {
        for (k, (jk, ak)) in pop.catalog.iter().zip(&sets) {
            let g = c::direct_product(&h.group, &k.group)?;
            let jg = inv::involution_set(&g);
            let kk = k.order;
            let expected = SubsetMask::from_indices(g.order(), jh.iter().flat_map(|x| jk.iter().map(move |y| x * kk + y)));
            let sg = stats(&g);
            let ok = jg == expected && sg.j_count == jh.len() * jk.len() && sg.alpha == ah * ak;
            t.item(ok, || {
                format!(
                    "{} x {}: j = {}, j(H) j(K) = {}",
                    h.canonical_name,
                    k.canonical_name,
                    sg.j_count,
                    jh.len() * jk.len()
                )
            });
        }
    }
    Ok(t.finish(
        CheckId::DirectProductLemma,
        format!("ordered pairs of catalog groups up to order {}", pop.config.max_order),
    ))
}

fn check_normal_lemma(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    for e in &pop.catalog {
        for h in st::normal_subgroups(&e.group) {
            match inv::check_normal_bound(&e.group, &h) {
                Ok(b) => {
                    t.item(b.holds(), || format!("{} with normal subgroup of order {}: {:?}", e.canonical_name, h.len(), b));
                    if b.count.equality && h.len() > 1 {
                        t.example(|| format!("{} / N{}: j equality", e.canonical_name, h.len()));
                    }
                }
                Err(err) => t.item(false, || format!("{}: {err}", e.canonical_name)),
            }
        }
    }
    t.finish(
        CheckId::NormalSubgroupLemma,
        format!("(G, H) with G in the catalog up to order {} and H normal", pop.config.max_order),
    )
}

fn check_central_lemma(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    for e in &pop.catalog {
        let z = st::center(&e.group);
        for h in st::all_subgroups(&e.group).into_iter().filter(|h| h.is_subset(&z)) {
            match inv::check_central_bound(&e.group, &h) {
                Ok(b) => t.item(b.holds(), || {
                    format!("{} with central subgroup of order {}: {:?}", e.canonical_name, h.len(), b)
                }),
                Err(err) => t.item(false, || format!("{}: {err}", e.canonical_name)),
            }
        }
    }
    t.finish(
        CheckId::CentralSubgroupLemma,
        format!("(G, H) with G in the catalog up to order {} and H central", pop.config.max_order),
    )
}

fn check_semidirect() -> Result<CheckResult, VerifyError> {
    let mut t = Tally::default();
    for (name, n, q, action) in semidirect_fixtures()? {
        match inv::compare_semidirect_characterization(&n, &q, &action) {
            Ok(cmp) => {
                t.item(cmp.agrees(), || {
                    format!("{name}: direct {:?} vs characterized {:?}", cmp.direct, cmp.characterized)
                });
                t.example(|| format!("{name}: j = {}", cmp.direct.len()));
            }
            Err(err) => t.item(false, || format!("{name}: {err}")),
        }
    }
    Ok(t.finish(CheckId::SemidirectCharacterization, "committed semidirect-product fixtures".into()))
}

fn check_sylow_bound(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    for s in &pop.subjects {
        match inv::check_sylow_bound(&s.group) {
            Ok(b) => {
                t.item(b.holds, || {
                    format!("{}: alpha = {} > |S|/|N| = {}", s.name, format_ratio(&b.lhs), format_ratio(&b.rhs))
                });
                if b.equality && b.rhs < r(1, 1) {
                    t.example(|| format!("{}: alpha = |S|/|N| = {}", s.name, format_ratio(&b.rhs)));
                }
            }
            Err(err) => t.item(false, || format!("{}: {err}", s.name)),
        }
    }
    t.finish(CheckId::SylowBound, pop.describe())
}

fn check_sylow_self_normalizing(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    for s in &pop.subjects {
        t.scanned();
        if stats(&s.group).alpha <= r(1, 2) {
            continue;
        }
        match st::sylow2(&s.group) {
            Ok(p) => {
                let n = st::normalizer(&s.group, &p);
                t.record(n == p, || format!("{}: |N_G(S)| = {} but |S| = {}", s.name, n.len(), p.len()));
                if p.len() < s.group.order() {
                    t.example(|| format!("{}: N_G(S) = S of order {}", s.name, p.len()));
                }
            }
            Err(err) => t.record(false, || format!("{}: {err}", s.name)),
        }
    }
    t.finish(CheckId::SylowSelfNormalizing, format!("members with alpha > 1/2 of {}", pop.describe()))
}

fn center_is_ea2(group: &Group) -> (bool, usize) {
    let z = st::center(group);
    let ea = z.iter().all(|x| group.multiply(x, x) == 0);
    (ea, z.len())
}

fn check_center_ea(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    for s in &pop.subjects {
        t.scanned();
        if 2 * stats(&s.group).j_count <= s.group.order() {
            continue;
        }
        let (ok, size) = center_is_ea2(&s.group);
        t.record(ok, || format!("{}: center of order {size} is not elementary abelian", s.name));
        if size == 1 {
            t.example(|| format!("{}: trivial center", s.name));
        }
    }
    t.finish(CheckId::CenterElementaryAbelian, format!("members with j > |G|/2 of {}", pop.describe()))
}

fn check_center_strictness(pop: &Population) -> Result<CheckResult, VerifyError> {
    let mut t = Tally::default();
    for n in 2u32.. {
        if 1usize << n > pop.config.family_max_order.max(4) {
            break;
        }
        let g = c4_times_ea(n)?;
        let s = stats(&g);
        let z = st::center(&g);
        let (z_ea, _) = center_is_ea2(&g);
        let ok = 2 * s.j_count == g.order() && z.is_full() && !z_ea;
        t.item(ok, || format!("{}: j = {}, |Z| = {}", g.name(), s.j_count, z.len()));
        t.example(|| format!("{}: j = {} = |G|/2, Z(G) = G", g.name(), s.j_count));
    }
    Ok(t.finish(
        CheckId::CenterStrictness,
        format!("C4 x C2^(n-2) up to order {}", pop.config.family_max_order.max(4)),
    ))
}

fn check_edmonds_bound(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    for s in &pop.subjects {
        t.scanned();
        if s.group.order() % 2 != 0 {
            continue;
        }
        match inv::check_edmonds_bound(&s.group) {
            Ok(b) => {
                t.record(b.holds, || format!("{}: j = {} > {}", s.name, b.lhs, b.rhs));
                if b.equality && s.group.factorize_order().odd_part > 1 {
                    t.example(|| format!("{}: j = {} attains the bound", s.name, b.lhs));
                }
            }
            Err(err) => t.record(false, || format!("{}: {err}", s.name)),
        }
    }
    t.finish(CheckId::EdmondsBound, format!("even-order members of {}", pop.describe()))
}

fn check_two_thirds(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    let mut d6_attains = None;
    for s in &pop.subjects {
        t.scanned();
        if s.group.order() % 2 != 0 {
            continue;
        }
        let m = s.group.factorize_order().odd_part;
        let alpha = stats(&s.group).alpha;
        let general = inv::check_odd_part_proportion(&s.group).map(|b| b.holds).unwrap_or(false);
        let two_thirds = m == 1 || alpha <= r(2, 3);
        t.record(general && two_thirds, || format!("{}: alpha = {} with m = {m}", s.name, format_ratio(&alpha)));
        if m > 1 && alpha == r(2, 3) {
            t.example(|| format!("{}: alpha = 2/3", s.name));
        }
        if s.name == "D6" {
            d6_attains = Some(alpha == r(2, 3));
        }
    }
    // D6 witnesses that 2/3 is attained whenever it is part of the population.
    if let Some(attains) = d6_attains {
        t.item(attains, || "D6 does not attain alpha = 2/3".into());
    }
    t.finish(CheckId::TwoThirdsCorollary, format!("even-order members of {}", pop.describe()))
}

fn check_edmonds_equality(pop: &Population) -> Result<CheckResult, VerifyError> {
    let mut t = Tally::default();
    // Forward: equality with m > 1 forces C2^(n-1) x Dih(A).
    let mut comparison_cache: HashMap<(u32, usize), Vec<Group>> = HashMap::new();
    for s in &pop.subjects {
        t.scanned();
        let g = &s.group;
        let f = g.factorize_order();
        if f.two_exponent == 0 || f.odd_part == 1 || stats(g).j_count != inv::edmonds_bound(f) {
            continue;
        }
        let candidates = comparison_cache.entry((f.two_exponent, f.odd_part)).or_insert_with(|| {
            c::abelian_groups(f.odd_part)
                .iter()
                .map(|a| ea_times_dih(f.two_exponent - 1, a).expect("family construction"))
                .collect()
        });
        let matched = candidates.iter().find(|cand| st::is_isomorphic(g, cand).is_some());
        t.record(matched.is_some(), || format!("{}: attains equality but is not C2^(n-1) x Dih(A)", s.name));
        if let Some(cand) = matched {
            t.example(|| format!("{} = {}", s.name, cand.name()));
        }
    }
    // Backward: every C2^(n-1) x Dih(A), |A| odd, attains equality.
    for (k, base) in edmonds_family_bases(pop.config.family_max_order) {
        let g = ea_times_dih(k, &base)?;
        let b = inv::check_edmonds_bound(&g)?;
        t.item(b.equality, || format!("{}: j = {} < {}", g.name(), b.lhs, b.rhs));
    }
    Ok(t.finish(
        CheckId::EdmondsEqualityCase,
        format!(
            "equality cases in {}; C2^k x Dih(A), |A| odd, up to order {}",
            pop.describe(),
            pop.config.family_max_order
        ),
    ))
}

fn check_main_theorem(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    let mut above: BTreeSet<Rational> = BTreeSet::new();
    for s in &pop.subjects {
        t.scanned();
        let alpha = stats(&s.group).alpha;
        if alpha <= r(3, 4) {
            continue;
        }
        above.insert(alpha);
        t.record(st::is_elementary_abelian2(&s.group), || {
            format!("{}: alpha = {} but not elementary abelian", s.name, format_ratio(&alpha))
        });
    }
    if !above.is_empty() {
        let values: Vec<String> = above.iter().map(format_ratio).collect();
        t.example(|| format!("alpha values above 3/4: {}", values.join(", ")));
        // Only alpha = 1 occurs above 3/4.
        t.record(above.len() == 1 && above.contains(&r(1, 1)), || {
            format!("alpha values above 3/4 other than 1: {}", values.join(", "))
        });
    }
    t.finish(CheckId::MainTheorem, pop.describe())
}

fn check_three_quarters(pop: &Population) -> CheckResult {
    let mut t = Tally::default();
    for s in &pop.subjects {
        t.scanned();
        let three_quarters = stats(&s.group).alpha == r(3, 4);
        let recognized = st::recognize_d8_x_ea(&s.group);
        if !three_quarters && recognized.is_none() {
            continue;
        }
        t.record(three_quarters && recognized.is_some(), || match recognized {
            Some(k) => format!("{}: isomorphic to D8 x C2^{k} but alpha != 3/4", s.name),
            None => format!("{}: alpha = 3/4 but not isomorphic to D8 x C2^k", s.name),
        });
        if let Some(k) = recognized {
            t.example(|| format!("{} = D8 x C2^{k}", s.name));
        }
    }
    t.finish(CheckId::ThreeQuartersClassification, pop.describe())
}

fn check_surjection_lemma(pop: &Population) -> Result<CheckResult, VerifyError> {
    let mut t = Tally::default();
    let d8 = c::dihedral(8)?;
    for s in &pop.subjects {
        let g = &s.group;
        t.scanned();
        if !g.order().is_power_of_two() || stats(g).alpha != r(3, 4) {
            continue;
        }
        let involutions: Vec<usize> = inv::involution_set(g).iter().collect();
        let maps = st::surjections(g, &d8);
        let mut product_checked = false;
        for pi in &maps {
            let kernel = pi.kernel();
            let kernel_ea = kernel.iter().all(|x| g.multiply(x, x) == 0) && kernel.len() * 8 == g.order();
            // Splitting: some pair of involutions over non-commuting involutions
            // generates a complement of the kernel that centralizes it.
            let complement = involutions.iter().find_map(|&x| {
                involutions.iter().find_map(|&y| {
                    if d8.commutes(pi.apply(x), pi.apply(y)) {
                        return None;
                    }
                    let l = st::generated_subgroup(g, &[x, y]);
                    let meets_trivially = l.intersection(&kernel).len() == 1;
                    (l.len() == 8 && meets_trivially).then_some(l)
                })
            });
            let direct = complement.as_ref().is_some_and(|l| {
                l.iter().all(|a| kernel.iter().all(|b| g.commutes(a, b))) && l.len() * kernel.len() == g.order()
            });
            if !product_checked && kernel_ea {
                // G = K x D8 as abstract groups, by explicit isomorphism.
                let (k_group, _) = st::subgroup_as_group(g, &kernel)?;
                let comparison = c::direct_product(&k_group, &d8)?;
                let iso = st::is_isomorphic(g, &comparison).is_some();
                t.record(iso, || format!("{}: not isomorphic to ker x D8", s.name));
                product_checked = true;
            }
            t.record(kernel_ea && complement.is_some() && direct, || {
                format!(
                    "{}: surjection with kernel of order {} (elementary abelian: {kernel_ea}, split: {}, direct: {direct})",
                    s.name,
                    kernel.len(),
                    complement.is_some()
                )
            });
        }
        t.example(|| format!("{}: {} surjections onto D8", s.name, maps.len()));
        if maps.is_empty() {
            t.record(false, || format!("{}: alpha = 3/4 but no surjection onto D8", s.name));
        }
    }
    Ok(t.finish(
        CheckId::SurjectionLemma,
        format!("surjections onto D8 from 2-groups with alpha = 3/4 in {}", pop.describe()),
    ))
}

fn check_dihedral_subgroups(pop: &Population) -> Result<CheckResult, VerifyError> {
    let mut t = Tally::default();
    let d8 = c::dihedral(8)?;
    for s in &pop.subjects {
        let g = &s.group;
        t.scanned();
        if st::recognize_d8_x_ea(g).is_none() {
            continue;
        }
        let z = st::center(g);
        let involutions: Vec<usize> = inv::involution_set(g).iter().collect();
        let mut iso_cache: HashMap<SubsetMask, bool> = HashMap::new();
        let mut pairs = 0;
        for &x in &involutions {
            for &y in &involutions {
                let xy = g.multiply(x, y);
                let a = g.multiply(xy, xy);
                if a == 0 {
                    continue;
                }
                pairs += 1;
                let l = st::generated_subgroup(g, &[x, y]);
                let is_d8 = *iso_cache.entry(l.clone()).or_insert_with(|| {
                    l.len() == 8
                        && st::subgroup_as_group(g, &l)
                            .map(|(h, _)| st::is_isomorphic(&h, &d8).is_some())
                            .unwrap_or(false)
                });
                let commutator = g.multiply(g.multiply(g.inverse(x), g.inverse(y)), xy);
                let meet_ok = l.intersection(&z) == SubsetMask::from_indices(g.order(), [0, a]);
                t.record(is_d8 && meet_ok && commutator == a, || {
                    format!("{}: x = {x}, y = {y}: <x,y> = D8: {is_d8}, meet with Z = <a>: {meet_ok}", s.name)
                });
            }
        }
        t.example(|| format!("{}: {pairs} involution pairs with (xy)^2 != 1", s.name));
    }
    Ok(t.finish(
        CheckId::DihedralSubgroupFacts,
        format!("members isomorphic to D8 x C2^k in {}", pop.describe()),
    ))
}

fn check_aut_d8() -> Result<CheckResult, VerifyError> {
    let mut t = Tally::default();
    let d8 = c::dihedral(8)?;
    let aut = st::automorphism_group(&d8, AutomorphismLimits::default())?;
    let involutory: Vec<&Vec<usize>> = aut.perms.iter().filter(|p| st::is_involutory_permutation(p)).collect();
    let inverted: Vec<usize> = involutory.iter().map(|p| st::inverted_element_count(&d8, p)).collect();
    let aut_orders = aut.group.element_orders().iter().filter(|&&o| o <= 2).count();
    t.item(aut.group.order() == 8, || format!("|Aut(D8)| = {}", aut.group.order()));
    t.item(st::is_isomorphic(&aut.group, &d8).is_some(), || "Aut(D8) is not isomorphic to D8".into());
    t.item(involutory.len() == 6 && aut_orders == 6, || {
        format!("{} involutory automorphisms ({} elements of order <= 2 in the table)", involutory.len(), aut_orders)
    });
    t.item(inverted.iter().all(|&k| k <= 6), || format!("inverted element counts {inverted:?}"));
    t.item(inverted.iter().filter(|&&k| k == 6).count() == 3, || {
        format!("inverted element counts {inverted:?}")
    });
    t.item(st::inverted_element_count(&d8, &aut.perms[0]) == 6, || "identity does not invert 6 elements".into());
    let all_inverting = aut.perms.iter().filter(|p| st::inverted_element_count(&d8, p) == 8).count();
    t.item(all_inverting == 0, || format!("{all_inverting} automorphisms invert every element"));
    t.example(|| format!("inverted element counts of involutory automorphisms: {inverted:?}"));
    Ok(t.finish(CheckId::AutD8Facts, "Aut(D8)".into()))
}

fn check_catalog_oracle(pop: &Population) -> Result<CheckResult, VerifyError> {
    let mut t = Tally::default();
    let limit = pop.config.enumerate_up_to.min(pop.config.max_order).min(MAX_ENUMERATION_ORDER);
    for n in 1..=limit {
        let enumerated = catalog::brute_force_enumerate(n)?;
        let constructed: Vec<&CatalogEntry> = pop.catalog.iter().filter(|e| e.order == n).collect();
        let matches: Vec<usize> = enumerated
            .iter()
            .map(|e| {
                constructed
                    .iter()
                    .filter(|c| st::is_isomorphic(&e.group, &c.group).is_some())
                    .count()
            })
            .collect();
        let ok = enumerated.len() == constructed.len() && matches.iter().all(|&m| m == 1);
        t.item(ok, || {
            format!(
                "order {n}: {} enumerated classes, {} constructed, matches {matches:?}",
                enumerated.len(),
                constructed.len()
            )
        });
        t.example(|| format!("order {n}: {} classes", enumerated.len()));
    }
    Ok(t.finish(CheckId::CatalogOracle, format!("orders 1..={limit}")))
}
