//! Lists of groups of small order up to isomorphism.
//!
//! [`constructed_catalog`] assembles each order from explicit
//! constructions and removes isomorphic duplicates. [`brute_force_enumerate`]
//! is an independent oracle for orders up to 8 that searches all Cayley
//! tables directly.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::constructors::{self as c, AutomorphismAction, ConstructionError};
use crate::group::Group;
use crate::involutions::{format_ratio, stats};
use crate::structure::{isomorphism_after_profile, GroupProfile};

pub const MAX_CATALOG_ORDER: usize = 16;
pub const MAX_ENUMERATION_ORDER: usize = 8;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog covers orders up to {MAX_CATALOG_ORDER}, requested {0}")]
    CatalogOrderCap(usize),
    #[error("table enumeration covers orders up to {MAX_ENUMERATION_ORDER}, requested {0}")]
    EnumerationOrderCap(usize),
    #[error("construction {name} failed: {source}")]
    Construction {
        name: String,
        #[source]
        source: ConstructionError,
    },
    #[error("construction {name} has order {found}, listed under {expected}")]
    WrongOrder { name: String, expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Constructed,
    Enumerated,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Constructed => f.write_str("constructed"),
            Provenance::Enumerated => f.write_str("enumerated"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub group: Group,
    pub order: usize,
    pub canonical_name: String,
    pub provenance: Provenance,
    /// Names of later constructions that turned out isomorphic to this one.
    pub aliases: Vec<String>,
}

type Build = fn() -> Result<Group, ConstructionError>;

fn cyc(n: usize) -> Result<Group, ConstructionError> {
    c::cyclic(n)
}

fn prod(a: Result<Group, ConstructionError>, b: Result<Group, ConstructionError>) -> Result<Group, ConstructionError> {
    c::direct_product(&a?, &b?)
}

fn cyclic_action(
    normal: Group,
    acting_order: usize,
    generator_image: &[usize],
    name: &str,
) -> Result<Group, ConstructionError> {
    let action = AutomorphismAction::cyclic(&normal, acting_order, generator_image)?;
    Ok(c::semidirect_product(&normal, &c::cyclic(acting_order)?, &action)?.with_name(name))
}

fn multiplier(modulus: usize, factor: usize) -> Vec<usize> {
    (0..modulus).map(|i| i * factor % modulus).collect()
}

/// `(C2)^2 ⋊ C3`, the generator cycling the three involutions.
pub fn alternating4() -> Result<Group, ConstructionError> {
    cyclic_action(c::elementary_abelian(2)?, 3, &[0, 2, 3, 1], "A4")
}

/// `C8 ⋊ C2` with the generator acting as `x -> x^5`.
pub fn modular16() -> Result<Group, ConstructionError> {
    cyclic_action(c::cyclic(8)?, 2, &multiplier(8, 5), "M16")
}

/// `C8 ⋊ C2` with the generator acting as `x -> x^3`.
pub fn semidihedral16() -> Result<Group, ConstructionError> {
    cyclic_action(c::cyclic(8)?, 2, &multiplier(8, 3), "SD16")
}

/// `C4 ⋊ C4`, the generator inverting the normal factor.
pub fn c4_by_c4() -> Result<Group, ConstructionError> {
    cyclic_action(c::cyclic(4)?, 4, &[0, 3, 2, 1], "C4:C4")
}

/// `(C2)^2 ⋊ C4`, the generator swapping two basis vectors.
pub fn c2sq_by_c4() -> Result<Group, ConstructionError> {
    cyclic_action(c::elementary_abelian(2)?, 4, &[0, 2, 1, 3], "C2^2:C4")
}

/// `(C4 x C2) ⋊ C2` with `(a, b) -> (a + 2b, b)`: the central product of
/// `C4` and `D8`.
pub fn pauli16() -> Result<Group, ConstructionError> {
    let normal = c::direct_product(&c::cyclic(4)?, &c::cyclic(2)?)?;
    let image: Vec<usize> = (0..8).map(|i| {
        let (a, b) = (i / 2, i % 2);
        ((a + 2 * b) % 4) * 2 + b
    }).collect();
    cyclic_action(normal, 2, &image, "C4oD8")
}

/// `C3 ⋊ C4` with the generator inverting; isomorphic to `Dic12`.
fn c3_by_c4() -> Result<Group, ConstructionError> {
    cyclic_action(c::cyclic(3)?, 4, &[0, 2, 1], "C3:C4")
}

/// `C4 ⋊ C2` by inversion; isomorphic to `D8`.
fn c4_by_c2() -> Result<Group, ConstructionError> {
    cyclic_action(c::cyclic(4)?, 2, &[0, 3, 2, 1], "C4:C2")
}

/// Constructions for one order, preferred names first. Later entries that
/// are isomorphic to earlier ones become aliases.
fn constructions(order: usize) -> Vec<(&'static str, Build)> {
    match order {
        1 => vec![("C1", || cyc(1)), ("C2^0", || c::elementary_abelian(0))],
        2 => vec![("C2", || cyc(2))],
        3 => vec![("C3", || cyc(3))],
        4 => vec![("C4", || cyc(4)), ("C2^2", || c::elementary_abelian(2)), ("D4", || c::dihedral(4))],
        5 => vec![("C5", || cyc(5))],
        6 => vec![
            ("C6", || cyc(6)),
            ("D6", || c::dihedral(6)),
            ("C3xC2", || prod(cyc(3), cyc(2))),
            ("Dih(C3)", || c::generalized_dihedral(&cyc(3)?)),
        ],
        7 => vec![("C7", || cyc(7))],
        8 => vec![
            ("C8", || cyc(8)),
            ("C4xC2", || prod(cyc(4), cyc(2))),
            ("C2^3", || c::elementary_abelian(3)),
            ("D8", || c::dihedral(8)),
            ("Q8", || Ok(c::quaternion8())),
            ("C4:C2", c4_by_c2),
            ("Dih(C4)", || c::generalized_dihedral(&cyc(4)?)),
            ("Dih(C2^2)", || c::generalized_dihedral(&c::elementary_abelian(2)?)),
            ("C2xC4", || prod(cyc(2), cyc(4))),
        ],
        9 => vec![("C9", || cyc(9)), ("C3xC3", || prod(cyc(3), cyc(3)))],
        10 => vec![
            ("C10", || cyc(10)),
            ("D10", || c::dihedral(10)),
            ("C5xC2", || prod(cyc(5), cyc(2))),
            ("Dih(C5)", || c::generalized_dihedral(&cyc(5)?)),
        ],
        11 => vec![("C11", || cyc(11))],
        12 => vec![
            ("C12", || cyc(12)),
            ("C6xC2", || prod(cyc(6), cyc(2))),
            ("D12", || c::dihedral(12)),
            ("A4", alternating4),
            ("Dic12", || c::dicyclic(12)),
            ("C4xC3", || prod(cyc(4), cyc(3))),
            ("D6xC2", || prod(c::dihedral(6), cyc(2))),
            ("Dih(C6)", || c::generalized_dihedral(&cyc(6)?)),
            ("C3:C4", c3_by_c4),
        ],
        13 => vec![("C13", || cyc(13))],
        14 => vec![
            ("C14", || cyc(14)),
            ("D14", || c::dihedral(14)),
            ("Dih(C7)", || c::generalized_dihedral(&cyc(7)?)),
        ],
        15 => vec![("C15", || cyc(15)), ("C5xC3", || prod(cyc(5), cyc(3)))],
        16 => vec![
            ("C16", || cyc(16)),
            ("C8xC2", || prod(cyc(8), cyc(2))),
            ("C4xC4", || prod(cyc(4), cyc(4))),
            ("C4xC2^2", || prod(cyc(4), c::elementary_abelian(2))),
            ("C2^4", || c::elementary_abelian(4)),
            ("D16", || c::dihedral(16)),
            ("Q16", || c::dicyclic(16)),
            ("SD16", semidihedral16),
            ("M16", modular16),
            ("D8xC2", || prod(c::dihedral(8), cyc(2))),
            ("Q8xC2", || prod(Ok(c::quaternion8()), cyc(2))),
            ("C4:C4", c4_by_c4),
            ("C2^2:C4", c2sq_by_c4),
            ("C4oD8", pauli16),
            ("Dih(C8)", || c::generalized_dihedral(&cyc(8)?)),
            ("Dih(C4xC2)", || c::generalized_dihedral(&prod(cyc(4), cyc(2))?)),
            ("Dih(C2^3)", || c::generalized_dihedral(&c::elementary_abelian(3)?)),
            ("C2xD8", || prod(cyc(2), c::dihedral(8))),
        ],
        _ => Vec::new(),
    }
}

/// Complete irredundant lists for every order up to `max_order`, in order
/// of group order and then construction preference.
pub fn constructed_catalog(max_order: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
    if max_order > MAX_CATALOG_ORDER {
        return Err(CatalogError::CatalogOrderCap(max_order));
    }
    let mut entries = Vec::new();
    for order in 1..=max_order {
        let mut groups = Vec::new();
        for (name, build) in constructions(order) {
            let group = build().map_err(|source| CatalogError::Construction {
                name: name.to_string(),
                source,
            })?;
            if group.order() != order {
                return Err(CatalogError::WrongOrder {
                    name: name.to_string(),
                    expected: order,
                    found: group.order(),
                });
            }
            groups.push((name.to_string(), group.with_name(name)));
        }
        entries.extend(dedup(groups, Provenance::Constructed));
    }
    Ok(entries)
}

fn dedup(groups: Vec<(String, Group)>, provenance: Provenance) -> Vec<CatalogEntry> {
    let mut kept: Vec<(GroupProfile, CatalogEntry)> = Vec::new();
    for (name, group) in groups {
        let profile = GroupProfile::of(&group);
        let duplicate = kept
            .iter_mut()
            .find(|(p, e)| *p == profile && isomorphism_after_profile(&group, &e.group).is_some());
        match duplicate {
            Some((_, entry)) => entry.aliases.push(name),
            None => kept.push((
                profile,
                CatalogEntry {
                    order: group.order(),
                    group,
                    canonical_name: name,
                    provenance,
                    aliases: Vec::new(),
                },
            )),
        }
    }
    kept.into_iter().map(|(_, e)| e).collect()
}

/// All groups of order `n` up to isomorphism, from a search over Cayley
/// tables with the identity row and column fixed.
pub fn brute_force_enumerate(n: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(CatalogError::EnumerationOrderCap(n));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    TableSearch::new(n).run(&mut |table| {
        let group = Group::from_flat(n, table.to_vec()).expect("search emits only group tables");
        found.push(group);
    });
    let named: Vec<(String, Group)> = found
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            let name = format!("T{n}.{i}");
            (name.clone(), g.with_name(name))
        })
        .collect();
    let mut classes = dedup(named, Provenance::Enumerated);
    for (idx, entry) in classes.iter_mut().enumerate() {
        entry.canonical_name = format!("T{n}#{}", idx + 1);
        entry.group = entry.group.clone().with_name(entry.canonical_name.clone());
    }
    Ok(classes)
}

/// Number of complete Cayley tables with identity 0, for `n <= 8`.
pub fn count_group_tables(n: usize) -> Result<usize, CatalogError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(CatalogError::EnumerationOrderCap(n));
    }
    let mut count = 0;
    TableSearch::new(n).run(&mut |_| count += 1);
    Ok(count)
}

const UNSET: usize = usize::MAX;

/// Row-major backtracking over the non-identity cells. Each assignment is
/// checked against every associativity triple whose four lookups are all
/// known, so complete tables are groups.
struct TableSearch {
    n: usize,
    table: Vec<usize>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
}

impl TableSearch {
    fn new(n: usize) -> Self {
        let mut search = TableSearch {
            n,
            table: vec![UNSET; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
        };
        for i in 0..n {
            search.set(0, i, i);
            if i != 0 {
                search.set(i, 0, i);
            }
        }
        search
    }

    fn set(&mut self, i: usize, j: usize, v: usize) {
        self.table[i * self.n + j] = v;
        self.row_used[i] |= 1 << v;
        self.col_used[j] |= 1 << v;
    }

    fn unset(&mut self, i: usize, j: usize, v: usize) {
        self.table[i * self.n + j] = UNSET;
        self.row_used[i] &= !(1 << v);
        self.col_used[j] &= !(1 << v);
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j]
    }

    /// Lookup that tolerates an unset left or right operand.
    #[inline]
    fn get(&self, i: usize, j: usize) -> usize {
        if i == UNSET || j == UNSET {
            UNSET
        } else {
            self.at(i, j)
        }
    }

    fn consistent(&self, i: usize, j: usize, v: usize) -> bool {
        let n = self.n;
        let same = |a: usize, b: usize| a == UNSET || b == UNSET || a == b;
        for k in 0..n {
            // (i j) k = i (j k)
            if !same(self.at(v, k), self.get(i, self.at(j, k))) {
                return false;
            }
            // (k i) j = k (i j)
            if !same(self.get(self.at(k, i), j), self.at(k, v)) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                // (a b) j = a (b j) where a b = i
                if self.at(a, b) == i && !same(v, self.get(a, self.at(b, j))) {
                    return false;
                }
                // i (a b) = (i a) b where a b = j
                if self.at(a, b) == j && !same(v, self.get(self.at(i, a), b)) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, emit: &mut impl FnMut(&[usize])) {
        self.fill(0, emit);
    }

    fn fill(&mut self, cell: usize, emit: &mut impl FnMut(&[usize])) {
        let side = self.n - 1;
        if cell == side * side {
            emit(&self.table);
            return;
        }
        let (i, j) = (1 + cell / side, 1 + cell % side);
        let blocked = self.row_used[i] | self.col_used[j];
        for v in 0..self.n {
            if blocked & (1 << v) != 0 {
                continue;
            }
            self.set(i, j, v);
            if self.consistent(i, j, v) {
                self.fill(cell + 1, emit);
            }
            self.unset(i, j, v);
        }
    }
}

/// One line of the catalog index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexLine {
    pub name: String,
    pub order: usize,
    pub provenance: String,
    pub j: usize,
    pub alpha: String,
    pub file: String,
}

pub const INDEX_FILE: &str = "index.tsv";
const INDEX_HEADER: &str = "# name\torder\tprovenance\tj\talpha\tfile";

pub fn table_file_name(entry: &CatalogEntry) -> String {
    let safe: String = entry
        .canonical_name
        .chars()
        .map(|ch| if ch.is_ascii_alphanumeric() { ch } else { '_' })
        .collect();
    format!("{:02}_{safe}.tbl", entry.order)
}

/// Writes one Cayley-table file per entry plus a tab-separated index.
pub fn export_catalog(entries: &[CatalogEntry], dir: &Path) -> Result<Vec<IndexLine>, CatalogError> {
    fs::create_dir_all(dir)?;
    let mut index = String::from(INDEX_HEADER);
    index.push('\n');
    let mut lines = Vec::with_capacity(entries.len());
    for entry in entries {
        let file = table_file_name(entry);
        fs::write(dir.join(&file), entry.group.to_text())?;
        let s = stats(&entry.group);
        let line = IndexLine {
            name: entry.canonical_name.clone(),
            order: entry.order,
            provenance: entry.provenance.to_string(),
            j: s.j_count,
            alpha: format_ratio(&s.alpha),
            file,
        };
        index.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            line.name, line.order, line.provenance, line.j, line.alpha, line.file
        ));
        lines.push(line);
    }
    fs::write(dir.join(INDEX_FILE), index)?;
    Ok(lines)
}

pub fn parse_index(text: &str) -> Result<Vec<IndexLine>, String> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .enumerate()
        .map(|(n, line)| {
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 6 {
                return Err(format!("index line {}: expected 6 fields, found {}", n + 1, fields.len()));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|e| format!("index line {}: {e}", n + 1));
            Ok(IndexLine {
                name: fields[0].to_string(),
                order: num(fields[1])?,
                provenance: fields[2].to_string(),
                j: num(fields[3])?,
                alpha: fields[4].to_string(),
                file: fields[5].to_string(),
            })
        })
        .collect()
}
