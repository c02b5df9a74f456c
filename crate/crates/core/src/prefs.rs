//! Preference instances: two complete, strictly ordered preference profiles
//! of equal size, with rank lookup, pair deletion and the plain-text file
//! format.
//!
//! Participant identifiers are 1-based integers that survive deletion, so a
//! reduced instance still talks about `M4` after `M3` has been removed.
//! Internally every instance also keeps dense index tables (positions in the
//! sorted id vectors) which the engines use.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ManId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WomanId(pub u32);

impl fmt::Display for ManId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}", self.0)
    }
}

impl fmt::Display for WomanId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Men,
    Women,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Men => Side::Women,
            Side::Women => Side::Men,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Men => f.write_str("men"),
            Side::Women => f.write_str("women"),
        }
    }
}

/// 1-based position in a preference list; 1 is the most preferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(u32);

impl Rank {
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceInstance {
    men_ids: Vec<ManId>,
    women_ids: Vec<WomanId>,
    men_prefs: Vec<Vec<WomanId>>,
    women_prefs: Vec<Vec<ManId>>,
    // [owner index] -> opposite-side indices, best first
    men_order: Vec<Vec<usize>>,
    women_order: Vec<Vec<usize>>,
    // [owner index][partner index] -> 1-based rank
    men_rank: Vec<Vec<u32>>,
    women_rank: Vec<Vec<u32>>,
}

impl PreferenceInstance {
    /// Builds an instance over ids `1..=n` on both sides. `men_prefs[i]` is
    /// the list of man `i + 1`, `women_prefs[j]` the list of woman `j + 1`.
    pub fn new(men_prefs: Vec<Vec<u32>>, women_prefs: Vec<Vec<u32>>) -> Result<Self> {
        let n = men_prefs.len();
        let ids = 1..=n as u32;
        Self::with_ids(
            ids.clone()
                .map(ManId)
                .zip(men_prefs.into_iter().map(|l| l.into_iter().map(WomanId).collect()))
                .collect(),
            ids.map(WomanId)
                .zip(women_prefs.into_iter().map(|l| l.into_iter().map(ManId).collect()))
                .collect(),
        )
    }

    /// Builds an instance from explicit `(id, list)` rows. Rows may come in
    /// any order; they are stored sorted by id.
    pub fn with_ids(
        men: Vec<(ManId, Vec<WomanId>)>,
        women: Vec<(WomanId, Vec<ManId>)>,
    ) -> Result<Self> {
        let men: BTreeMap<ManId, Vec<WomanId>> = collect_unique(men, Side::Men)?;
        let women: BTreeMap<WomanId, Vec<ManId>> = collect_unique(women, Side::Women)?;
        if men.len() != women.len() {
            return Err(Error::InvalidInstance(format!(
                "{} men but {} women",
                men.len(),
                women.len()
            )));
        }
        let men_ids: Vec<ManId> = men.keys().copied().collect();
        let women_ids: Vec<WomanId> = women.keys().copied().collect();
        let men_prefs: Vec<Vec<WomanId>> = men.into_values().collect();
        let women_prefs: Vec<Vec<ManId>> = women.into_values().collect();

        let men_order = index_lists(&men_prefs, Side::Men, |w| {
            women_ids.binary_search(w).ok().ok_or(w.0)
        })?;
        let women_order = index_lists(&women_prefs, Side::Women, |m| {
            men_ids.binary_search(m).ok().ok_or(m.0)
        })?;
        let men_rank = rank_tables(&men_order);
        let women_rank = rank_tables(&women_order);

        Ok(Self {
            men_ids,
            women_ids,
            men_prefs,
            women_prefs,
            men_order,
            women_order,
            men_rank,
            women_rank,
        })
    }

    /// The instance with no participants. Deleting the only pair of a
    /// size-1 instance yields this.
    pub fn empty() -> Self {
        Self {
            men_ids: Vec::new(),
            women_ids: Vec::new(),
            men_prefs: Vec::new(),
            women_prefs: Vec::new(),
            men_order: Vec::new(),
            women_order: Vec::new(),
            men_rank: Vec::new(),
            women_rank: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.men_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.men_ids.is_empty()
    }

    pub fn men_ids(&self) -> &[ManId] {
        &self.men_ids
    }

    pub fn women_ids(&self) -> &[WomanId] {
        &self.women_ids
    }

    pub fn man_prefs(&self, man: ManId) -> Result<&[WomanId]> {
        Ok(&self.men_prefs[self.man_index(man)?])
    }

    pub fn woman_prefs(&self, woman: WomanId) -> Result<&[ManId]> {
        Ok(&self.women_prefs[self.woman_index(woman)?])
    }

    pub fn man_index(&self, man: ManId) -> Result<usize> {
        self.men_ids.binary_search(&man).map_err(|_| Error::UnknownId {
            side: Side::Men,
            id: man.0,
        })
    }

    pub fn woman_index(&self, woman: WomanId) -> Result<usize> {
        self.women_ids.binary_search(&woman).map_err(|_| Error::UnknownId {
            side: Side::Women,
            id: woman.0,
        })
    }

    pub fn contains_man(&self, man: ManId) -> bool {
        self.men_ids.binary_search(&man).is_ok()
    }

    pub fn contains_woman(&self, woman: WomanId) -> bool {
        self.women_ids.binary_search(&woman).is_ok()
    }

    /// Rank of `woman` in `man`'s list.
    pub fn man_rank(&self, man: ManId, woman: WomanId) -> Result<Rank> {
        let m = self.man_index(man)?;
        let w = self.woman_index(woman)?;
        Ok(Rank(self.men_rank[m][w]))
    }

    /// Rank of `man` in `woman`'s list.
    pub fn woman_rank(&self, woman: WomanId, man: ManId) -> Result<Rank> {
        let w = self.woman_index(woman)?;
        let m = self.man_index(man)?;
        Ok(Rank(self.women_rank[w][m]))
    }

    /// Side-generic rank lookup over raw ids: position of `partner` in the
    /// list of `owner`, where `owner` sits on `side`.
    pub fn rank_of(&self, side: Side, owner: u32, partner: u32) -> Result<Rank> {
        match side {
            Side::Men => self.man_rank(ManId(owner), WomanId(partner)),
            Side::Women => self.woman_rank(WomanId(owner), ManId(partner)),
        }
    }

    /// Removes both members of the pair from the id sets and from every
    /// remaining list. Surviving lists keep their relative order and the
    /// survivors keep their ids.
    pub fn delete_pair(&self, man: ManId, woman: WomanId) -> Result<Self> {
        self.man_index(man)?;
        self.woman_index(woman)?;
        if self.n() == 1 {
            return Ok(Self::empty());
        }
        let men = self
            .men_ids
            .iter()
            .zip(&self.men_prefs)
            .filter(|(id, _)| **id != man)
            .map(|(id, list)| (*id, list.iter().copied().filter(|w| *w != woman).collect()))
            .collect();
        let women = self
            .women_ids
            .iter()
            .zip(&self.women_prefs)
            .filter(|(id, _)| **id != woman)
            .map(|(id, list)| (*id, list.iter().copied().filter(|m| *m != man).collect()))
            .collect();
        Self::with_ids(men, women)
    }

    /// Index-space view for the engines: lists of `side` as opposite-side
    /// indices, best first.
    pub(crate) fn order(&self, side: Side) -> &[Vec<usize>] {
        match side {
            Side::Men => &self.men_order,
            Side::Women => &self.women_order,
        }
    }

    /// Index-space rank table of `side`: `[owner][partner] -> rank`.
    pub(crate) fn ranks(&self, side: Side) -> &[Vec<u32>] {
        match side {
            Side::Men => &self.men_rank,
            Side::Women => &self.women_rank,
        }
    }
}

fn collect_unique<K: Ord + Copy + Into<u32>, V>(
    rows: Vec<(K, V)>,
    side: Side,
) -> Result<BTreeMap<K, V>> {
    let mut out = BTreeMap::new();
    for (id, list) in rows {
        let raw: u32 = id.into();
        if raw == 0 {
            return Err(Error::InvalidInstance(format!("{side} id 0 is not allowed")));
        }
        if out.insert(id, list).is_some() {
            return Err(Error::InvalidInstance(format!("duplicate {side} id {raw}")));
        }
    }
    Ok(out)
}

impl From<ManId> for u32 {
    fn from(id: ManId) -> u32 {
        id.0
    }
}

impl From<WomanId> for u32 {
    fn from(id: WomanId) -> u32 {
        id.0
    }
}

fn index_lists<T: Copy + Into<u32>>(
    lists: &[Vec<T>],
    side: Side,
    lookup: impl Fn(&T) -> std::result::Result<usize, u32>,
) -> Result<Vec<Vec<usize>>> {
    let n = lists.len();
    let mut out = Vec::with_capacity(n);
    for (row, list) in lists.iter().enumerate() {
        if list.len() != n {
            return Err(Error::NotPermutation {
                side,
                row: row + 1,
                detail: format!("expected {n} entries, found {}", list.len()),
            });
        }
        let mut seen = vec![false; n];
        let mut idx = Vec::with_capacity(n);
        for entry in list {
            let i = lookup(entry).map_err(|id| Error::NotPermutation {
                side,
                row: row + 1,
                detail: format!("unknown id {id}"),
            })?;
            if std::mem::replace(&mut seen[i], true) {
                let id: u32 = (*entry).into();
                return Err(Error::NotPermutation {
                    side,
                    row: row + 1,
                    detail: format!("id {id} repeated"),
                });
            }
            idx.push(i);
        }
        out.push(idx);
    }
    Ok(out)
}

fn rank_tables(order: &[Vec<usize>]) -> Vec<Vec<u32>> {
    order
        .iter()
        .map(|list| {
            let mut ranks = vec![0; list.len()];
            for (pos, &partner) in list.iter().enumerate() {
                ranks[partner] = pos as u32 + 1;
            }
            ranks
        })
        .collect()
}

/// A one-to-one set of (man, woman) pairs, kept sorted by man id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(ManId, WomanId)>,
}

impl Matching {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (ManId, WomanId)>) -> Result<Self> {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::NotOneToOne(format!("{} appears twice", w[0].0)));
            }
        }
        let mut women: Vec<WomanId> = pairs.iter().map(|p| p.1).collect();
        women.sort_unstable();
        for w in women.windows(2) {
            if w[0] == w[1] {
                return Err(Error::NotOneToOne(format!("{} appears twice", w[0])));
            }
        }
        Ok(Self { pairs })
    }

    /// Shorthand for tests and fixtures: `(man, woman)` raw ids.
    pub fn from_raw(pairs: &[(u32, u32)]) -> Result<Self> {
        Self::from_pairs(pairs.iter().map(|&(m, w)| (ManId(m), WomanId(w))))
    }

    pub fn pairs(&self) -> &[(ManId, WomanId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn woman_of(&self, man: ManId) -> Option<WomanId> {
        self.pairs
            .binary_search_by_key(&man, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn man_of(&self, woman: WomanId) -> Option<ManId> {
        self.pairs.iter().find(|p| p.1 == woman).map(|p| p.0)
    }

    pub fn contains(&self, man: ManId, woman: WomanId) -> bool {
        self.woman_of(man) == Some(woman)
    }

    pub fn without(&self, man: ManId, woman: WomanId) -> Self {
        Self {
            pairs: self
                .pairs
                .iter()
                .copied()
                .filter(|&p| p != (man, woman))
                .collect(),
        }
    }

    /// Checks that every id belongs to `inst`.
    pub fn check_ids(&self, inst: &PreferenceInstance) -> Result<()> {
        for &(m, w) in &self.pairs {
            inst.man_index(m)?;
            inst.woman_index(w)?;
        }
        Ok(())
    }

    /// True iff every participant of `inst` is matched.
    pub fn is_perfect_on(&self, inst: &PreferenceInstance) -> bool {
        self.len() == inst.n() && self.check_ids(inst).is_ok()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (m, w)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({m},{w})")?;
        }
        f.write_str("}")
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_ids(line_no: usize, line: &str) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u32>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("expected an integer id, found {tok:?}"),
            })
        })
        .collect()
}

/// Parses the line-oriented instance format: optional `#` comment lines,
/// then `n`, then `n` rows of woman ids (men's lists, row `i` = man `i`),
/// then `n` rows of man ids (women's lists).
pub fn parse_instance(text: &str) -> Result<PreferenceInstance> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing size line".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("expected size n, found {header:?}"),
    })?;
    if n < 1 {
        return Err(Error::Parse {
            line: line_no,
            message: "n must be at least 1".into(),
        });
    }
    let rows: Vec<(usize, &str)> = lines.collect();
    if rows.len() != 2 * n {
        return Err(Error::Parse {
            line: rows.last().map_or(line_no, |r| r.0),
            message: format!("expected {} preference rows, found {}", 2 * n, rows.len()),
        });
    }
    let mut lists = Vec::with_capacity(2 * n);
    for (k, &(line, text)) in rows.iter().enumerate() {
        let ids = parse_ids(line, text)?;
        let (side, row) = if k < n {
            (Side::Men, k + 1)
        } else {
            (Side::Women, k - n + 1)
        };
        check_permutation(&ids, n, side, row)?;
        lists.push(ids);
    }
    let women_prefs = lists.split_off(n);
    PreferenceInstance::new(lists, women_prefs)
}

fn check_permutation(ids: &[u32], n: usize, side: Side, row: usize) -> Result<()> {
    let err = |detail: String| Error::NotPermutation { side, row, detail };
    if ids.len() != n {
        return Err(err(format!("expected {n} entries, found {}", ids.len())));
    }
    let mut seen = vec![false; n];
    for &id in ids {
        if id == 0 || id as usize > n {
            return Err(err(format!("id {id} out of range 1..={n}")));
        }
        if std::mem::replace(&mut seen[id as usize - 1], true) {
            return Err(err(format!("id {id} repeated")));
        }
    }
    Ok(())
}

/// Writes the instance file format. Ids are written by position, so an
/// instance whose ids are not `1..=n` (a reduced instance) is relabelled
/// densely in ascending id order.
pub fn serialize_instance(inst: &PreferenceInstance) -> String {
    let mut out = format!("{}\n", inst.n());
    for side in [Side::Men, Side::Women] {
        for list in inst.order(side) {
            let row: Vec<String> = list.iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Parses a matching file: one `man woman` pair of raw ids per line, `#`
/// comments allowed.
pub fn parse_matching(text: &str) -> Result<Matching> {
    let mut pairs = Vec::new();
    for (line, row) in content_lines(text) {
        let ids = parse_ids(line, row)?;
        if ids.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected `man woman`, found {} fields", ids.len()),
            });
        }
        pairs.push((ManId(ids[0]), WomanId(ids[1])));
    }
    Matching::from_pairs(pairs)
}

pub fn serialize_matching(matching: &Matching) -> String {
    matching
        .pairs()
        .iter()
        .map(|(m, w)| format!("{} {}\n", m.0, w.0))
        .collect()
}
