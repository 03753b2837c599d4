//! Finite groups stored as validated Cayley tables.
//!
//! Elements are the indices `0..n`; index 0 is always the identity. A
//! [`Group`] can only be obtained through validation, so every value in
//! circulation satisfies the identity, Latin-square and associativity laws.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table must have at least one row")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry ({row}, {col}) = {value} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("index 0 is not an identity: entry ({row}, {col}) breaks the identity law")]
    IdentityViolation { row: usize, col: usize },
    #[error("value {value} repeats in {line} {index} (at position {position})")]
    LatinSquareViolation {
        line: Line,
        index: usize,
        position: usize,
        value: usize,
    },
    #[error("associativity fails at ({i}, {j}, {k})")]
    AssociativityViolation { i: usize, j: usize, k: usize },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row => f.write_str("row"),
            Line::Column => f.write_str("column"),
        }
    }
}

/// `|G| = 2^two_exponent * odd_part` with `odd_part` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderFactorization {
    pub two_exponent: u32,
    pub odd_part: usize,
}

impl OrderFactorization {
    pub fn of(order: usize) -> Self {
        assert!(order > 0, "group orders are positive");
        let two_exponent = order.trailing_zeros();
        OrderFactorization {
            two_exponent,
            odd_part: order >> two_exponent,
        }
    }

    pub fn two_part(&self) -> usize {
        1 << self.two_exponent
    }
}

impl fmt::Display for OrderFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{} * {}", self.two_exponent, self.odd_part)
    }
}

/// A finite group given by its multiplication table.
///
/// Row `i`, column `j` of the table holds `i * j`. Inverses and element
/// orders are computed once at validation time.
#[derive(Clone)]
pub struct Group {
    name: String,
    order: usize,
    table: Arc<[usize]>,
    inverses: Arc<[usize]>,
    element_orders: Arc<[usize]>,
}

impl Group {
    /// Validates a table given as rows.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Group, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare {
                    row,
                    len: entries.len(),
                    order,
                });
            }
            flat.extend_from_slice(entries);
        }
        Group::from_flat(order, flat)
    }

    /// Validates a row-major table of length `order * order`.
    pub fn from_flat(order: usize, table: Vec<usize>) -> Result<Group, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if table.len() != order * order {
            return Err(GroupError::NotSquare {
                row: table.len() / order,
                len: table.len() % order,
                order,
            });
        }
        for (pos, &value) in table.iter().enumerate() {
            if value >= order {
                return Err(GroupError::EntryOutOfRange {
                    row: pos / order,
                    col: pos % order,
                    value,
                    order,
                });
            }
        }
        check_identity(order, &table)?;
        check_latin(order, &table)?;
        check_associative(order, &table)?;

        let mut inverses = vec![0; order];
        for i in 0..order {
            inverses[i] = (0..order)
                .find(|&j| table[i * order + j] == 0)
                .expect("latin rows contain the identity");
        }
        let mut element_orders = vec![1; order];
        for (i, slot) in element_orders.iter_mut().enumerate() {
            let mut power = i;
            while power != 0 {
                power = table[power * order + i];
                *slot += 1;
            }
        }
        Ok(Group {
            name: format!("G{order}"),
            order,
            table: table.into(),
            inverses: inverses.into(),
            element_orders: element_orders.into(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j]
    }

    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    #[inline]
    pub fn element_order(&self, i: usize) -> usize {
        self.element_orders[i]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.element_orders
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.multiply(self.multiply(g, x), self.inverse(g))
    }

    pub fn power(&self, x: usize, exponent: usize) -> usize {
        let exponent = exponent % self.element_order(x);
        (0..exponent).fold(0, |acc, _| self.multiply(acc, x))
    }

    pub fn factorize_order(&self) -> OrderFactorization {
        OrderFactorization::of(self.order)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.table[i * self.order..(i + 1) * self.order]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.multiply(i, j) == self.multiply(j, i)))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }

    /// Serializes to the Cayley-table text format: the order on the first
    /// line, then one space-separated row per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(usize::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the Cayley-table text format and validates the result.
    pub fn parse_text(text: &str) -> Result<Group, GroupError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (first_no, first) = lines.next().ok_or(GroupError::Format {
            line: 1,
            message: "missing order line".into(),
        })?;
        let order: usize = first.trim().parse().map_err(|_| GroupError::Format {
            line: first_no + 1,
            message: format!("expected a positive order, found {:?}", first.trim()),
        })?;
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut rows = Vec::with_capacity(order);
        for (line_no, line) in lines {
            if rows.len() == order {
                return Err(GroupError::Format {
                    line: line_no + 1,
                    message: format!("more than {order} table rows"),
                });
            }
            let row = line
                .split_whitespace()
                .map(|tok| tok.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| GroupError::Format {
                    line: line_no + 1,
                    message: e.to_string(),
                })?;
            rows.push(row);
        }
        if rows.len() != order {
            return Err(GroupError::Format {
                line: text.lines().count() + 1,
                message: format!("expected {order} table rows, found {}", rows.len()),
            });
        }
        Group::from_rows(&rows)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

fn check_identity(order: usize, table: &[usize]) -> Result<(), GroupError> {
    for j in 0..order {
        if table[j] != j {
            return Err(GroupError::IdentityViolation { row: 0, col: j });
        }
    }
    for i in 0..order {
        if table[i * order] != i {
            return Err(GroupError::IdentityViolation { row: i, col: 0 });
        }
    }
    Ok(())
}

fn check_latin(order: usize, table: &[usize]) -> Result<(), GroupError> {
    let mut seen = FixedBitSet::with_capacity(order);
    for i in 0..order {
        seen.clear();
        for j in 0..order {
            let value = table[i * order + j];
            if seen.put(value) {
                return Err(GroupError::LatinSquareViolation {
                    line: Line::Row,
                    index: i,
                    position: j,
                    value,
                });
            }
        }
    }
    for j in 0..order {
        seen.clear();
        for i in 0..order {
            let value = table[i * order + j];
            if seen.put(value) {
                return Err(GroupError::LatinSquareViolation {
                    line: Line::Column,
                    index: j,
                    position: i,
                    value,
                });
            }
        }
    }
    Ok(())
}

/// Associativity for a loop (Latin square with identity).
///
/// The set of `k` with `(ij)k = i(jk)` for all `i, j` is closed under the
/// table operation, so it is enough to test `k` ranging over a set whose
/// multiplicative closure is everything. When that test fails, the full
/// scan runs to report the first offending triple in lexicographic order.
fn check_associative(order: usize, table: &[usize]) -> Result<(), GroupError> {
    let mul = |a: usize, b: usize| table[a * order + b];
    let generators = multiplicative_generators(order, table);
    let fast_ok = generators.iter().all(|&k| {
        (0..order).all(|i| (0..order).all(|j| mul(mul(i, j), k) == mul(i, mul(j, k))))
    });
    if fast_ok {
        return Ok(());
    }
    for i in 0..order {
        for j in 0..order {
            let ij = mul(i, j);
            for k in 0..order {
                if mul(ij, k) != mul(i, mul(j, k)) {
                    return Err(GroupError::AssociativityViolation { i, j, k });
                }
            }
        }
    }
    unreachable!("generator test failed but no triple violates associativity")
}

/// Greedy set of elements whose closure under the (not yet trusted)
/// operation is the whole index set.
fn multiplicative_generators(order: usize, table: &[usize]) -> Vec<usize> {
    let mut reached = FixedBitSet::with_capacity(order);
    reached.insert(0);
    let mut members = vec![0];
    let mut generators = Vec::new();
    while members.len() < order {
        let g = (0..order).find(|&x| !reached.contains(x)).expect("unreached element exists");
        generators.push(g);
        // Close `members ∪ {g}` under the operation.
        let mut frontier = vec![g];
        reached.insert(g);
        members.push(g);
        while let Some(x) = frontier.pop() {
            let snapshot = members.len();
            for idx in 0..snapshot {
                let y = members[idx];
                for z in [table[x * order + y], table[y * order + x]] {
                    if !reached.put(z) {
                        members.push(z);
                        frontier.push(z);
                    }
                }
            }
        }
    }
    generators
}

/// A subset of a group's element indices.
///
/// Used for involution sets, subgroups, cosets and conjugacy classes. The
/// subgroup property is not tracked by the type; see
/// [`SubsetMask::is_subgroup_of`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: FixedBitSet,
}

impl SubsetMask {
    pub fn empty(parent_order: usize) -> Self {
        SubsetMask {
            bits: FixedBitSet::with_capacity(parent_order),
        }
    }

    pub fn full(parent_order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(parent_order);
        bits.insert_range(..);
        SubsetMask { bits }
    }

    pub fn trivial(parent_order: usize) -> Self {
        Self::from_indices(parent_order, [0])
    }

    pub fn from_indices(parent_order: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = Self::empty(parent_order);
        for i in indices {
            mask.insert(i);
        }
        mask
    }

    pub fn from_predicate(parent_order: usize, mut keep: impl FnMut(usize) -> bool) -> Self {
        Self::from_indices(parent_order, (0..parent_order).filter(|&i| keep(i)))
    }

    pub fn parent_order(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    /// Returns true if `i` was newly added.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.bits.len(), "index {i} outside parent of order {}", self.bits.len());
        !self.bits.put(i)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.parent_order()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subset(&self, other: &SubsetMask) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &SubsetMask) -> SubsetMask {
        SubsetMask {
            bits: &self.bits & &other.bits,
        }
    }

    pub fn union(&self, other: &SubsetMask) -> SubsetMask {
        SubsetMask {
            bits: &self.bits | &other.bits,
        }
    }

    /// Contains the identity and is closed under the product and inverses.
    pub fn is_subgroup_of(&self, group: &Group) -> bool {
        self.parent_order() == group.order()
            && self.contains(0)
            && self.iter().all(|a| {
                self.contains(group.inverse(a)) && self.iter().all(|b| self.contains(group.multiply(a, b)))
            })
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
