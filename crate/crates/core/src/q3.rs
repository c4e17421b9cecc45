//! Good/bad classification of 2-coloured 3-cubes, exhaustive checks of the
//! small structural lemmas about them, and the local geodesic selectors the
//! global construction is assembled from.
//!
//! Vertices of `Q_3` are `0..8` and directions `0..3`. A [`Q3Colouring`] packs
//! the 12 edge colours in the `n = 3` edge index order.

use std::sync::OnceLock;

use crate::construction::FVariant;
use crate::error::{Error, Result};
use crate::hypercube::{
    colour_changes, enumerate_geodesics, Colour, Direction, EdgeColouring, Geodesic, Vertex,
};

pub const Q3_COLOURING_COUNT: usize = 1 << 12;

/// Direction sequences of the six antipodal geodesics from a vertex of `Q_3`, lexicographic.
pub const PERMUTATIONS: [[u8; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Antipodal pairs as `(even endpoint, odd endpoint)`.
pub const ANTIPODAL_PAIRS: [(u8, u8); 4] = [(0, 7), (3, 4), (5, 2), (6, 1)];

const PAIR_OF_VERTEX: [usize; 8] = [0, 3, 2, 1, 1, 2, 3, 0];

#[inline]
fn local_slot(u: u8, d: u8) -> u16 {
    let canonical = u & !(1 << d);
    let low = canonical & ((1 << d) - 1);
    let high = (canonical >> (d + 1)) << d;
    (d as u16) * 4 + (low | high) as u16
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q3Colouring(u16);

impl Q3Colouring {
    pub fn new(bits: u16) -> Result<Self> {
        if bits as usize >= Q3_COLOURING_COUNT {
            Err(Error::Q3OutOfRange(bits as u32))
        } else {
            Ok(Q3Colouring(bits))
        }
    }

    pub(crate) fn from_bits_truncate(bits: u16) -> Self {
        Q3Colouring(bits & 0xfff)
    }

    /// All 4096 colourings in increasing bit order.
    pub fn all() -> impl Iterator<Item = Q3Colouring> {
        (0..Q3_COLOURING_COUNT as u16).map(Q3Colouring)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// Colour of the edge in direction `d` at local vertex `u`.
    #[inline]
    pub fn colour(self, u: u8, d: u8) -> Colour {
        Colour::from_bit(self.0 >> local_slot(u, d) & 1 == 1)
    }

    pub fn from_edge_colouring(c: &EdgeColouring) -> Result<Self> {
        if c.dimension() != 3 {
            return Err(Error::NotQ3(c.dimension()));
        }
        Ok(Q3Colouring(c.words()[0] as u16))
    }

    pub fn to_edge_colouring(self) -> EdgeColouring {
        EdgeColouring::from_words(3, vec![self.0 as u64]).expect("12 bits fit Q3")
    }

    pub fn complement(self) -> Self {
        Q3Colouring(!self.0 & 0xfff)
    }

    /// The colouring carried by `iso`: edge `(iso(u), iso(d))` gets the colour of `(u, d)`.
    pub fn transform(self, iso: &Isometry) -> Self {
        let mut bits = 0u16;
        for d in 0..3u8 {
            for u in (0..8u8).filter(|u| u >> d & 1 == 0) {
                if self.colour(u, d).bit() {
                    bits |= 1 << local_slot(iso.vertex(u), iso.direction(d));
                }
            }
        }
        Q3Colouring(bits)
    }

    pub fn has_monochromatic_star(self, v: u8) -> bool {
        let c = self.colour(v, 0);
        c == self.colour(v, 1) && c == self.colour(v, 2)
    }

    /// Edge colours along the geodesic leaving `start` through `perm`.
    #[inline]
    pub fn path_colours(self, start: u8, perm: [u8; 3]) -> [Colour; 3] {
        let mut v = start;
        perm.map(|d| {
            let c = self.colour(v, d);
            v ^= 1 << d;
            c
        })
    }

    #[inline]
    pub fn path_changes(self, start: u8, perm: [u8; 3]) -> u8 {
        let [a, b, c] = self.path_colours(start, perm);
        (a != b) as u8 + (b != c) as u8
    }

    fn pair_changes(self) -> [[u8; 6]; 4] {
        ANTIPODAL_PAIRS.map(|(even, _)| PERMUTATIONS.map(|perm| self.path_changes(even, perm)))
    }
}

/// A symmetry of `Q_3`: a coordinate permutation followed by a coordinate flip.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    perm: [u8; 3],
    flip: u8,
}

impl Isometry {
    pub fn new(perm: [u8; 3], flip: u8) -> Option<Self> {
        let mut sorted = perm;
        sorted.sort();
        (sorted == [0, 1, 2] && flip < 8).then_some(Isometry { perm, flip })
    }

    /// All 48 isometries.
    pub fn all() -> Vec<Isometry> {
        PERMUTATIONS
            .iter()
            .flat_map(|&perm| (0..8).map(move |flip| Isometry { perm, flip }))
            .collect()
    }

    #[inline]
    pub fn direction(&self, d: u8) -> u8 {
        self.perm[d as usize]
    }

    #[inline]
    pub fn vertex(&self, x: u8) -> u8 {
        let moved = (0..3).fold(0u8, |acc, i| acc | ((x >> i & 1) << self.perm[i as usize]));
        moved ^ self.flip
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// One geodesic per antipodal pair, oriented from its even endpoint, in
    /// [`ANTIPODAL_PAIRS`] order, with `total_changes <= 2`.
    Good {
        witness: [Geodesic; 4],
        total_changes: usize,
    },
    Bad,
}

impl Classification {
    pub fn is_good(&self) -> bool {
        matches!(self, Classification::Good { .. })
    }

    pub fn label(&self) -> &'static str {
        if self.is_good() {
            "good"
        } else {
            "bad"
        }
    }
}

fn local_geodesic(start: u8, perm: [u8; 3]) -> Geodesic {
    Geodesic::new(
        Vertex(start as u32),
        perm.iter().map(|&d| Direction(d as u32)).collect(),
    )
    .expect("permutation directions are distinct")
}

/// Good iff some choice of one geodesic per antipodal pair has at most two colour
/// changes in total. The witness minimises the total; ties go to the
/// lexicographically first assignment.
pub fn classify(q: Q3Colouring) -> Classification {
    let changes = q.pair_changes();
    let mut best: Option<(u8, [usize; 4])> = None;
    for i0 in 0..6 {
        for i1 in 0..6 {
            for i2 in 0..6 {
                for i3 in 0..6 {
                    let choice = [i0, i1, i2, i3];
                    let total: u8 = (0..4).map(|p| changes[p][choice[p]]).sum();
                    if best.is_none_or(|(t, _)| total < t) {
                        best = Some((total, choice));
                    }
                }
            }
        }
    }
    let (total, choice) = best.expect("non-empty search");
    if total <= 2 {
        let witness = std::array::from_fn(|p| local_geodesic(ANTIPODAL_PAIRS[p].0, PERMUTATIONS[choice[p]]));
        Classification::Good { witness, total_changes: total as usize }
    } else {
        Classification::Bad
    }
}

/// The chosen geodesic `(from, first, second, to)` for an ordered antipodal pair of `Q_3`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct SelectorEntry {
    pub from: u8,
    pub to: u8,
    pub first: u8,
    pub second: u8,
}

impl SelectorEntry {
    fn from_choice(x: u8, perm: [u8; 3]) -> Self {
        let (even, odd) = ANTIPODAL_PAIRS[PAIR_OF_VERTEX[x as usize]];
        let v1 = even ^ (1 << perm[0]);
        let v2 = v1 ^ (1 << perm[1]);
        if x == even {
            SelectorEntry { from: even, to: odd, first: v1, second: v2 }
        } else {
            SelectorEntry { from: odd, to: even, first: v2, second: v1 }
        }
    }

    pub fn vertices(&self) -> [u8; 4] {
        [self.from, self.first, self.second, self.to]
    }

    pub fn dirs(&self) -> [u8; 3] {
        let v = self.vertices();
        std::array::from_fn(|i| (v[i] ^ v[i + 1]).trailing_zeros() as u8)
    }

    pub fn geodesic(&self) -> Geodesic {
        local_geodesic(self.from, self.dirs())
    }
}

fn antipodal_pair_index(x: u8, y: u8) -> Result<usize> {
    if x >= 8 || y >= 8 || x ^ y != 7 {
        return Err(Error::NotAntipodalInQ3(x as u32, y as u32));
    }
    Ok(PAIR_OF_VERTEX[x as usize])
}

fn good_choice(q: Q3Colouring, pair: usize) -> usize {
    let even = ANTIPODAL_PAIRS[pair].0;
    (0..6)
        .min_by_key(|&i| (q.path_changes(even, PERMUTATIONS[i]), i))
        .expect("six candidates")
}

/// Index of the first one-change geodesic from the even endpoint whose end colours
/// follow `variant`: F1 is Blue at the even end and Red at the odd end, F2 the reverse.
fn bad_choice(q: Q3Colouring, pair: usize, variant: FVariant) -> Option<usize> {
    let even = ANTIPODAL_PAIRS[pair].0;
    let (at_even, at_odd) = match variant {
        FVariant::F1 => (Colour::Blue, Colour::Red),
        FVariant::F2 => (Colour::Red, Colour::Blue),
    };
    (0..6).find(|&i| {
        let colours = q.path_colours(even, PERMUTATIONS[i]);
        colours[0] == at_even && colours[2] == at_odd && q.path_changes(even, PERMUTATIONS[i]) == 1
    })
}

fn wrong_kind(q: Q3Colouring, found_good: bool) -> Error {
    let (found, expected) = if found_good { ("good", "bad") } else { ("bad", "good") };
    Error::WrongClassification { bits: q.0, found, expected }
}

/// Minimum-change geodesic between antipodal `x` and `y` of a good colouring.
/// Ties go to the lexicographically smallest direction sequence read from the
/// even endpoint, so `(x, y)` and `(y, x)` select the same path.
pub fn select_good_geodesic(q: Q3Colouring, x: u8, y: u8) -> Result<SelectorEntry> {
    let pair = antipodal_pair_index(x, y)?;
    if !classify(q).is_good() {
        return Err(wrong_kind(q, false));
    }
    Ok(SelectorEntry::from_choice(x, PERMUTATIONS[good_choice(q, pair)]))
}

/// One-change geodesic between antipodal `x` and `y` of a bad colouring, with the
/// end colours fixed by `variant` relative to the even endpoint.
pub fn select_bad_geodesic(q: Q3Colouring, x: u8, y: u8, variant: FVariant) -> Result<SelectorEntry> {
    let pair = antipodal_pair_index(x, y)?;
    if classify(q).is_good() {
        return Err(wrong_kind(q, true));
    }
    let choice = bad_choice(q, pair, variant).ok_or(Error::NoQualifyingGeodesic(q.0))?;
    Ok(SelectorEntry::from_choice(x, PERMUTATIONS[choice]))
}

/// Outcome of an exhaustive sweep over all Q3 colourings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub checked: usize,
    /// Colourings on which the lemma's hypothesis held.
    pub hypothesis_hits: usize,
    pub counterexamples: Vec<Q3Colouring>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn antipodal_change_counts(c: &EdgeColouring, v: u8) -> Vec<usize> {
    enumerate_geodesics(Vertex(v as u32), Vertex(7 - v as u32))
        .iter()
        .map(|g| colour_changes(c, g))
        .collect()
}

/// If every geodesic between some antipodal pair has two colour changes, each of
/// the other three pairs must be joined by a geodesic with none.
pub fn verify_lemma6() -> LemmaReport {
    let mut report = LemmaReport::default();
    for q in Q3Colouring::all() {
        report.checked += 1;
        let c = q.to_edge_colouring();
        let counts: Vec<Vec<usize>> = ANTIPODAL_PAIRS
            .iter()
            .map(|&(even, _)| antipodal_change_counts(&c, even))
            .collect();
        let saturated: Vec<usize> = (0..4).filter(|&p| counts[p].iter().all(|&k| k == 2)).collect();
        if saturated.is_empty() {
            continue;
        }
        report.hypothesis_hits += 1;
        let holds = saturated.iter().all(|&s| {
            (0..4).filter(|&p| p != s).all(|p| counts[p].contains(&0))
        });
        if !holds {
            report.counterexamples.push(q);
        }
    }
    report
}

/// A colouring with a monochromatic star at some vertex is good.
pub fn verify_lemma7() -> LemmaReport {
    let mut report = LemmaReport::default();
    for q in Q3Colouring::all() {
        report.checked += 1;
        if !(0..8).any(|v| q.has_monochromatic_star(v)) {
            continue;
        }
        report.hypothesis_hits += 1;
        if !classify(q).is_good() {
            report.counterexamples.push(q);
        }
    }
    report
}

/// In a bad colouring every vertex `v` has one-change geodesics to its antipode
/// both with Red at `v` / Blue at the far end and with Blue at `v` / Red at the far end.
pub fn verify_lemma8() -> LemmaReport {
    let mut report = LemmaReport::default();
    for q in Q3Colouring::all() {
        report.checked += 1;
        if classify(q).is_good() {
            continue;
        }
        report.hypothesis_hits += 1;
        let c = q.to_edge_colouring();
        let holds = (0..8u32).all(|v| {
            let patterns: Vec<(Colour, Colour)> = enumerate_geodesics(Vertex(v), Vertex(7 - v))
                .iter()
                .filter(|g| colour_changes(&c, g) == 1)
                .map(|g| {
                    let colours: Vec<Colour> = g.colours(&c).collect();
                    (colours[0], colours[2])
                })
                .collect();
            patterns.contains(&(Colour::Red, Colour::Blue))
                && patterns.contains(&(Colour::Blue, Colour::Red))
        });
        if !holds {
            report.counterexamples.push(q);
        }
    }
    report
}

/// Precomputed classification and selector choices for one Q3 colouring.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    good: bool,
    witness_total: u8,
    /// Per antipodal pair and variant: index into [`PERMUTATIONS`], read from the even endpoint.
    choice: [[u8; 2]; 4],
}

impl TableEntry {
    pub fn is_good(&self) -> bool {
        self.good
    }

    /// Minimum total changes over one geodesic per antipodal pair.
    pub fn witness_total(&self) -> u8 {
        self.witness_total
    }

    pub fn choice(&self, pair: usize, variant: FVariant) -> usize {
        self.choice[pair][variant.index()] as usize
    }
}

/// Memoized [`classify`] and selector results for all 4096 Q3 colourings.
#[derive(Clone, Debug)]
pub struct Q3Table {
    entries: Vec<TableEntry>,
}

impl Q3Table {
    pub fn build() -> Self {
        let entries = Q3Colouring::all()
            .map(|q| {
                let changes = q.pair_changes();
                let witness_total: u8 = changes.iter().map(|row| *row.iter().min().unwrap()).sum();
                let good = classify(q).is_good();
                let choice = std::array::from_fn(|pair| {
                    if good {
                        let i = good_choice(q, pair) as u8;
                        [i, i]
                    } else {
                        FVariant::ALL.map(|variant| {
                            bad_choice(q, pair, variant)
                                .expect("every bad Q3 colouring has both one-change end patterns") as u8
                        })
                    }
                });
                TableEntry { good, witness_total, choice }
            })
            .collect();
        Q3Table { entries }
    }

    /// Process-wide table, built on first use.
    pub fn global() -> &'static Q3Table {
        static TABLE: OnceLock<Q3Table> = OnceLock::new();
        TABLE.get_or_init(Q3Table::build)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn get(&self, q: Q3Colouring) -> &TableEntry {
        &self.entries[q.0 as usize]
    }

    pub fn is_good(&self, q: Q3Colouring) -> bool {
        self.get(q).good
    }

    /// Selector for the ordered antipodal pair `(x, y)`; for good colourings the
    /// variant is ignored.
    pub fn selector(&self, q: Q3Colouring, x: u8, y: u8, variant: FVariant) -> Result<SelectorEntry> {
        let pair = antipodal_pair_index(x, y)?;
        Ok(SelectorEntry::from_choice(x, PERMUTATIONS[self.get(q).choice(pair, variant)]))
    }

    /// Selector entries for the ordered pairs `(x, 7 - x)`, `x = 0..8`.
    pub fn selectors(&self, q: Q3Colouring, variant: FVariant) -> [SelectorEntry; 8] {
        std::array::from_fn(|x| {
            self.selector(q, x as u8, 7 - x as u8, variant).expect("antipodal by construction")
        })
    }

    /// Local directions of the selected geodesic, in order of traversal from `x`.
    #[inline]
    pub fn dirs_from(&self, q: Q3Colouring, x: u8, variant: FVariant) -> [u8; 3] {
        let pair = PAIR_OF_VERTEX[x as usize];
        let perm = PERMUTATIONS[self.get(q).choice(pair, variant)];
        if ANTIPODAL_PAIRS[pair].0 == x {
            perm
        } else {
            [perm[2], perm[1], perm[0]]
        }
    }
}
