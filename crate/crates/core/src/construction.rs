//! Modified antipodal geodesics in `Q_n`, `3 | n`.
//!
//! An antipodal geodesic is cut into `k = n / 3` blocks of three directions.
//! Each block between endpoints `v` and `w` is replaced by the geodesic the
//! local selector picks inside the subcube `G(v, w)`. Good subcubes use the
//! minimum-change selector; bad subcubes use a one-change geodesic whose end
//! colours are fixed by the [`FVariant`]:
//!
//! * `F1`: Blue at the even endpoint, Red at the odd endpoint.
//! * `F2`: Red at the even endpoint, Blue at the odd endpoint.
//!
//! Parity here is global parity in `Q_n`. Inside a subcube whose anchor is odd
//! the local parities are swapped, so the local variant is swapped as well.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypercube::{
    check_dimension, colour_changes, subcube_of_pair, vertex_mask, Colour, Direction,
    EdgeColouring, Geodesic, Parity, SubcubeEmbedding, Vertex,
};
use crate::q3::Q3Table;
use crate::{binomial, Fraction};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FVariant {
    F1,
    F2,
}

impl FVariant {
    pub const ALL: [FVariant; 2] = [FVariant::F1, FVariant::F2];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            FVariant::F1 => 0,
            FVariant::F2 => 1,
        }
    }

    #[inline]
    pub fn other(self) -> FVariant {
        match self {
            FVariant::F1 => FVariant::F2,
            FVariant::F2 => FVariant::F1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FVariant::F1 => "f1",
            FVariant::F2 => "f2",
        }
    }
}

impl fmt::Display for FVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "f1" | "F1" => Ok(FVariant::F1),
            "f2" | "F2" => Ok(FVariant::F2),
            other => Err(format!("unknown variant {other:?}, expected f1 or f2")),
        }
    }
}

#[inline]
fn local_variant(sub: &SubcubeEmbedding, variant: FVariant) -> FVariant {
    match sub.anchor().parity() {
        Parity::Even => variant,
        Parity::Odd => variant.other(),
    }
}

/// Directions of the selected geodesic of `sub`, in traversal order from `v`.
#[inline]
fn block_dirs(c: &EdgeColouring, sub: &SubcubeEmbedding, v: Vertex, variant: FVariant) -> [Direction; 3] {
    let q = sub.restrict(c);
    let local = Q3Table::global().dirs_from(q, sub.to_local(v), local_variant(sub, variant));
    let dirs = sub.dirs();
    local.map(|d| dirs[d as usize])
}

fn check_pair(c: &EdgeColouring, v: Vertex, w: Vertex) -> Result<SubcubeEmbedding> {
    v.in_dimension(c.dimension())?;
    w.in_dimension(c.dimension())?;
    subcube_of_pair(v, w)
}

/// The selected geodesic from `v` to `w`, `d(v, w) = 3`.
pub fn f_geodesic(c: &EdgeColouring, v: Vertex, w: Vertex, variant: FVariant) -> Result<Geodesic> {
    let sub = check_pair(c, v, w)?;
    Ok(Geodesic::new_unchecked(v, block_dirs(c, &sub, v, variant).to_vec()))
}

/// `f(v, w)`: the neighbour of `v` on the selected geodesic from `v` to `w`.
pub fn f_value(c: &EdgeColouring, v: Vertex, w: Vertex, variant: FVariant) -> Result<Vertex> {
    let sub = check_pair(c, v, w)?;
    Ok(v.flip(block_dirs(c, &sub, v, variant)[0]))
}

fn check_multiple_of_three(n: u32) -> Result<u32> {
    check_dimension(n)?;
    if n % 3 != 0 {
        return Err(Error::NotDivisibleByThree(n));
    }
    Ok(n / 3)
}

/// An antipodal geodesic viewed as `n / 3` consecutive blocks of three directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockDecomposition {
    n: u32,
    start: Vertex,
    triples: Vec<[Direction; 3]>,
}

impl BlockDecomposition {
    pub fn new(n: u32, start: Vertex, triples: Vec<[Direction; 3]>) -> Result<Self> {
        let k = check_multiple_of_three(n)?;
        start.in_dimension(n)?;
        if triples.len() != k as usize {
            return Err(Error::InvalidBlocks(format!("expected {k} triples, got {}", triples.len())));
        }
        let mut used = 0u32;
        for d in triples.iter().flatten() {
            d.in_dimension(n)?;
            if used & d.bit() != 0 {
                return Err(Error::InvalidBlocks(format!("direction {} used twice", d.0)));
            }
            used |= d.bit();
        }
        Ok(BlockDecomposition { n, start, triples })
    }

    /// Splits a permutation of all `n` directions into consecutive triples.
    pub fn from_permutation(n: u32, start: Vertex, perm: &[Direction]) -> Result<Self> {
        check_multiple_of_three(n)?;
        if perm.len() % 3 != 0 {
            return Err(Error::InvalidBlocks(format!("{} directions do not split into triples", perm.len())));
        }
        let triples = perm.chunks_exact(3).map(|t| [t[0], t[1], t[2]]).collect();
        Self::new(n, start, triples)
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    pub fn triples(&self) -> &[[Direction; 3]] {
        &self.triples
    }

    /// Block endpoints `v_0, v_3, ..., v_n`.
    pub fn endpoints(&self) -> Vec<Vertex> {
        let mut out = vec![self.start];
        let mut v = self.start;
        for t in &self.triples {
            v = t.iter().fold(v, |v, &d| v.flip(d));
            out.push(v);
        }
        out
    }
}

/// An antipodal geodesic whose blocks are the selected geodesics between block endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModifiedGeodesic(Geodesic);

impl ModifiedGeodesic {
    pub fn geodesic(&self) -> &Geodesic {
        &self.0
    }

    pub fn into_geodesic(self) -> Geodesic {
        self.0
    }
}

pub fn modify_geodesic(c: &EdgeColouring, bd: &BlockDecomposition, variant: FVariant) -> Result<ModifiedGeodesic> {
    if c.dimension() != bd.n {
        return Err(Error::InvalidBlocks(format!(
            "blocks are for dimension {}, colouring has dimension {}",
            bd.n,
            c.dimension()
        )));
    }
    let mut dirs = Vec::with_capacity(bd.n as usize);
    let mut v = bd.start;
    for t in &bd.triples {
        let mask = t.iter().fold(0, |m, d| m | d.bit());
        let sub = SubcubeEmbedding::from_mask(v, mask);
        dirs.extend(block_dirs(c, &sub, v, variant));
        v = Vertex(v.0 ^ mask);
    }
    Ok(ModifiedGeodesic(Geodesic::new_unchecked(bd.start, dirs)))
}

/// All 3-element direction sets of `Q_n`, with disjointness bitsets over their indices.
struct Triples {
    masks: Vec<u32>,
    words: usize,
    disjoint: Vec<u64>,
}

impl Triples {
    fn new(n: u32) -> Self {
        let mut masks = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    masks.push(1 << a | 1 << b | 1 << c);
                }
            }
        }
        let words = masks.len().div_ceil(64).max(1);
        let mut disjoint = vec![0u64; masks.len() * words];
        for (i, &m) in masks.iter().enumerate() {
            for (j, &other) in masks.iter().enumerate() {
                if m & other == 0 {
                    disjoint[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Triples { masks, words, disjoint }
    }

    fn disjoint(&self, t: usize) -> &[u64] {
        &self.disjoint[t * self.words..(t + 1) * self.words]
    }
}

fn count_and(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as u64).sum()
}

fn count_and_not(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| (x & !y).count_ones() as u64).sum()
}

/// For every vertex `u` and triple `t`: whether the subcube through `u` spanned by `t`
/// is good, and the colour of the selected geodesic's edge at `u` under each variant.
struct LocalSelection {
    n: u32,
    triples: Triples,
    good: Vec<u64>,
    blue: [Vec<u64>; 2],
    good_subcubes: u64,
    /// Changes of the selected block geodesic summed over all `(u, t)`.
    block_changes: [u64; 2],
}

struct VertexRow {
    good: Vec<u64>,
    blue: [Vec<u64>; 2],
    good_subcubes: u64,
    block_changes: [u64; 2],
}

impl LocalSelection {
    fn compute(c: &EdgeColouring) -> Self {
        let n = c.dimension();
        let triples = Triples::new(n);
        let table = Q3Table::global();
        let words = triples.words;
        let rows: Vec<VertexRow> = (0..1u32 << n)
            .into_par_iter()
            .map(|u| {
                let u = Vertex(u);
                let mut row = VertexRow {
                    good: vec![0; words],
                    blue: [vec![0; words], vec![0; words]],
                    good_subcubes: 0,
                    block_changes: [0; 2],
                };
                for (t, &mask) in triples.masks.iter().enumerate() {
                    let sub = SubcubeEmbedding::from_mask(u, mask);
                    let q = sub.restrict(c);
                    let x = sub.to_local(u);
                    let is_anchor = u.0 & mask == 0;
                    if table.is_good(q) {
                        row.good[t / 64] |= 1 << (t % 64);
                        row.good_subcubes += is_anchor as u64;
                    }
                    for variant in FVariant::ALL {
                        let dirs = table.dirs_from(q, x, local_variant(&sub, variant));
                        if q.colour(x, dirs[0]) == Colour::Blue {
                            row.blue[variant.index()][t / 64] |= 1 << (t % 64);
                        }
                        row.block_changes[variant.index()] += q.path_changes(x, dirs) as u64;
                    }
                }
                row
            })
            .collect();

        let mut sel = LocalSelection {
            n,
            good: Vec::with_capacity(rows.len() * words),
            blue: [Vec::with_capacity(rows.len() * words), Vec::with_capacity(rows.len() * words)],
            triples,
            good_subcubes: 0,
            block_changes: [0; 2],
        };
        for row in rows {
            sel.good.extend(row.good);
            for v in 0..2 {
                sel.blue[v].extend(&row.blue[v]);
                sel.block_changes[v] += row.block_changes[v];
            }
            sel.good_subcubes += row.good_subcubes;
        }
        sel
    }

    fn row<'a>(&self, bits: &'a [u64], u: usize) -> &'a [u64] {
        let w = self.triples.words;
        &bits[u * w..(u + 1) * w]
    }

    fn total_subcubes(&self) -> u64 {
        self.triples.masks.len() as u64 * (1u64 << (self.n - 3))
    }

    /// Disjoint triples per triple, `C(n-3, 3)`.
    fn partners(&self) -> u64 {
        binomial(self.n as u64 - 3, 3)
    }

    fn stats(&self) -> SubcubeStats {
        let pair_counts: Vec<(u64, u64)> = (0..1usize << self.n)
            .into_par_iter()
            .map(|u| {
                let good = self.row(&self.good, u);
                let mut ordered_gg = 0;
                let mut mixed = 0;
                for t in (0..self.triples.masks.len()).filter(|t| good[t / 64] >> (t % 64) & 1 == 1) {
                    let disjoint = self.triples.disjoint(t);
                    ordered_gg += count_and(disjoint, good);
                    mixed += count_and_not(disjoint, good);
                }
                (ordered_gg / 2, mixed)
            })
            .collect();
        let good_count_at = (0..1usize << self.n)
            .map(|u| self.row(&self.good, u).iter().map(|w| w.count_ones()).sum())
            .collect();
        let triples = self.triples.masks.len() as u64;
        SubcubeStats {
            n: self.n,
            good_subcubes: self.good_subcubes,
            total_subcubes: self.total_subcubes(),
            good_good_pairs: pair_counts.iter().map(|p| p.0).sum(),
            mixed_pairs: pair_counts.iter().map(|p| p.1).sum(),
            total_pairs: (1u64 << self.n) * triples * self.partners() / 2,
            good_count_at,
        }
    }

    fn census(&self) -> JunctionCensus {
        let words = self.triples.words;
        let per_vertex: Vec<JunctionCensus> = (0..1usize << self.n)
            .into_par_iter()
            .map(|u| {
                let good = self.row(&self.good, u);
                let blue = [self.row(&self.blue[0], u), self.row(&self.blue[1], u)];
                let mut census = JunctionCensus::default();
                let mut gg = vec![0u64; words];
                let mut mixed = vec![0u64; words];
                let mut bb = vec![0u64; words];
                let mut diff = [vec![0u64; words], vec![0u64; words]];
                for t in 0..self.triples.masks.len() {
                    let disjoint = self.triples.disjoint(t);
                    let good_in = good[t / 64] >> (t % 64) & 1 == 1;
                    for i in 0..words {
                        let (g, p) = (good[i], disjoint[i]);
                        if good_in {
                            gg[i] = p & g;
                            mixed[i] = p & !g;
                            bb[i] = 0;
                        } else {
                            gg[i] = 0;
                            mixed[i] = p & g;
                            bb[i] = p & !g;
                        }
                        for v in 0..2 {
                            let incoming_blue = blue[v][t / 64] >> (t % 64) & 1 == 1;
                            diff[v][i] = if incoming_blue { !blue[v][i] } else { blue[v][i] };
                        }
                    }
                    census.total += count_and(disjoint, disjoint);
                    census.good_good += count_and(&gg, &gg);
                    census.mixed += count_and(&mixed, &mixed);
                    census.bad_bad += count_and(&bb, &bb);
                    for v in 0..2 {
                        census.good_good_changes[v] += count_and(&gg, &diff[v]);
                        census.mixed_changes[v] += count_and(&mixed, &diff[v]);
                        census.bad_bad_changes[v] += count_and(&bb, &diff[v]);
                    }
                    census.mixed_xor_violations += mixed
                        .iter()
                        .zip(diff[0].iter().zip(&diff[1]))
                        .map(|(m, (d1, d2))| (m & !(d1 ^ d2)).count_ones() as u64)
                        .sum::<u64>();
                }
                census
            })
            .collect();
        per_vertex.into_iter().fold(JunctionCensus::default(), |acc, c| acc.merge(&c))
    }

    fn expectation(&self, census: &JunctionCensus, variant: FVariant) -> Expectation {
        let k = (self.n / 3) as u128;
        let starts = self.triples.masks.len() as u128 * (1u128 << self.n);
        let block_mean = Fraction::new(self.block_changes[variant.index()] as u128, starts);
        let junction_mean = if census.total == 0 {
            Fraction::from_integer(0)
        } else {
            Fraction::new(census.changes(variant) as u128, census.total as u128)
        };
        let expectation = block_mean * k + junction_mean * (k - 1);
        Expectation { blocks: k as u32, block_mean, junction_mean, expectation }
    }
}

/// Exact good-subcube statistics of a colouring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcubeStats {
    pub n: u32,
    pub good_subcubes: u64,
    pub total_subcubes: u64,
    /// Unordered pairs of subcubes sharing exactly one vertex, counted per shared vertex.
    pub good_good_pairs: u64,
    pub mixed_pairs: u64,
    pub total_pairs: u64,
    /// Good subcubes containing each vertex.
    pub good_count_at: Vec<u32>,
}

impl SubcubeStats {
    pub fn p(&self) -> Fraction {
        Fraction::new(self.good_subcubes as u128, self.total_subcubes as u128)
    }

    /// `None` when `n < 6`, where no two subcubes share exactly one vertex.
    pub fn a(&self) -> Option<Fraction> {
        (self.total_pairs > 0).then(|| Fraction::new(self.good_good_pairs as u128, self.total_pairs as u128))
    }

    pub fn b(&self) -> Option<Fraction> {
        (self.total_pairs > 0).then(|| Fraction::new(self.mixed_pairs as u128, self.total_pairs as u128))
    }
}

/// Lower bound on good subcubes at `v` from monochromatic sub-stars:
/// `C(r, 3) + C(n - r, 3)` with `r` the Red degree of `v`.
pub fn good_count_lower_bound(c: &EdgeColouring, v: Vertex) -> u64 {
    let r = c.red_degree(v) as u64;
    binomial(r, 3) + binomial(c.dimension() as u64 - r, 3)
}

pub fn exact_stats(c: &EdgeColouring) -> Result<SubcubeStats> {
    if c.dimension() < 3 {
        return Err(Error::DimensionTooSmall { n: c.dimension(), min: 3, what: "subcube statistics" });
    }
    Ok(LocalSelection::compute(c).stats())
}

/// Counts over junction configurations `(u, D_in, D_out)`: a vertex and an ordered
/// pair of disjoint direction triples. The incoming block is the selected geodesic
/// from `u ^ D_in` to `u`, the outgoing one from `u` to `u ^ D_out`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JunctionCensus {
    pub total: u64,
    pub good_good: u64,
    pub mixed: u64,
    pub bad_bad: u64,
    /// Configurations with a colour change at `u`, indexed by [`FVariant::index`].
    pub good_good_changes: [u64; 2],
    pub mixed_changes: [u64; 2],
    pub bad_bad_changes: [u64; 2],
    /// Mixed configurations where the two variants agree on whether the colour changes.
    pub mixed_xor_violations: u64,
}

impl JunctionCensus {
    fn merge(mut self, other: &JunctionCensus) -> JunctionCensus {
        self.total += other.total;
        self.good_good += other.good_good;
        self.mixed += other.mixed;
        self.bad_bad += other.bad_bad;
        for v in 0..2 {
            self.good_good_changes[v] += other.good_good_changes[v];
            self.mixed_changes[v] += other.mixed_changes[v];
            self.bad_bad_changes[v] += other.bad_bad_changes[v];
        }
        self.mixed_xor_violations += other.mixed_xor_violations;
        self
    }

    pub fn changes(&self, variant: FVariant) -> u64 {
        let v = variant.index();
        self.good_good_changes[v] + self.mixed_changes[v] + self.bad_bad_changes[v]
    }

    /// The variant changing colour on at most half of the mixed configurations; F1 on ties
    /// and when there are none.
    pub fn preferred_variant(&self) -> FVariant {
        if 2 * self.mixed_changes[0] <= self.mixed {
            FVariant::F1
        } else {
            FVariant::F2
        }
    }

    pub fn mixed_change_fraction(&self, variant: FVariant) -> Option<Fraction> {
        (self.mixed > 0).then(|| Fraction::new(self.mixed_changes[variant.index()] as u128, self.mixed as u128))
    }

    pub fn good_good_change_fraction(&self, variant: FVariant) -> Option<Fraction> {
        (self.good_good > 0)
            .then(|| Fraction::new(self.good_good_changes[variant.index()] as u128, self.good_good as u128))
    }
}

fn check_junction_dimension(c: &EdgeColouring) -> Result<()> {
    check_multiple_of_three(c.dimension())?;
    if c.dimension() < 6 {
        return Err(Error::DimensionTooSmall { n: c.dimension(), min: 6, what: "junction analysis" });
    }
    Ok(())
}

pub fn junction_census(c: &EdgeColouring) -> Result<JunctionCensus> {
    check_junction_dimension(c)?;
    Ok(LocalSelection::compute(c).census())
}

pub fn choose_variant(c: &EdgeColouring) -> Result<FVariant> {
    junction_census(c).map(|census| census.preferred_variant())
}

/// Exact expected colour changes of a uniformly random modified geodesic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    /// `k = n / 3`.
    pub blocks: u32,
    /// Mean changes inside one block, over a uniform start vertex and triple.
    pub block_mean: Fraction,
    /// Probability of a change at one junction.
    pub junction_mean: Fraction,
    /// `k * block_mean + (k - 1) * junction_mean`.
    pub expectation: Fraction,
}

pub fn exact_expectation(c: &EdgeColouring, variant: FVariant) -> Result<Expectation> {
    check_multiple_of_three(c.dimension())?;
    let sel = LocalSelection::compute(c);
    let census = if c.dimension() >= 6 { sel.census() } else { JunctionCensus::default() };
    Ok(sel.expectation(&census, variant))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VariantSource {
    Auto,
    Override,
}

/// Everything the construction computes for one colouring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionReport {
    pub stats: SubcubeStats,
    /// `None` for `n = 3`, which has no junctions.
    pub census: Option<JunctionCensus>,
    pub chosen: FVariant,
    pub source: VariantSource,
    pub expectation: Expectation,
}

/// Builds the full report; `variant` overrides the automatic choice.
pub fn construction_report(c: &EdgeColouring, variant: Option<FVariant>) -> Result<ConstructionReport> {
    check_multiple_of_three(c.dimension())?;
    let sel = LocalSelection::compute(c);
    let census = (c.dimension() >= 6).then(|| sel.census());
    let (chosen, source) = match variant {
        Some(v) => (v, VariantSource::Override),
        None => (
            census.as_ref().map_or(FVariant::F1, JunctionCensus::preferred_variant),
            VariantSource::Auto,
        ),
    };
    let expectation = sel.expectation(census.as_ref().unwrap_or(&JunctionCensus::default()), chosen);
    Ok(ConstructionReport { stats: sel.stats(), census, chosen, source, expectation })
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub samples: u64,
    pub mean: f64,
    /// Sample standard deviation over `sqrt(samples)`.
    pub stderr: f64,
}

const CHUNK: u64 = 1024;

/// Samples `(start vertex, direction permutation)` uniformly, builds the modified
/// geodesic and averages its colour changes. Chunk `i` draws from stream `i + 1`
/// of the seeded generator, so the result does not depend on thread scheduling
/// and never overlaps [`codec::random`](crate::codec::random) with the same seed.
pub fn monte_carlo_mean(c: &EdgeColouring, variant: FVariant, samples: u64, seed: u64) -> Result<MonteCarloEstimate> {
    let n = c.dimension();
    check_multiple_of_three(n)?;
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let chunks = samples.div_ceil(CHUNK);
    let (sum, sum_sq) = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk + 1);
            let count = CHUNK.min(samples - chunk * CHUNK);
            let mut perm: Vec<Direction> = (0..n).map(Direction).collect();
            let (mut sum, mut sum_sq) = (0u64, 0u64);
            for _ in 0..count {
                let start = Vertex(rng.gen_range(0..=vertex_mask(n)));
                perm.shuffle(&mut rng);
                let bd = BlockDecomposition::from_permutation(n, start, &perm).expect("valid permutation");
                let g = modify_geodesic(c, &bd, variant).expect("matching dimension");
                let changes = colour_changes(c, g.geodesic()) as u64;
                sum += changes;
                sum_sq += changes * changes;
            }
            (sum, sum_sq)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let count = samples as f64;
    let mean = sum as f64 / count;
    let stderr = if samples > 1 {
        let variance = ((sum_sq as f64 - count * mean * mean) / (count - 1.0)).max(0.0);
        (variance / count).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloEstimate { samples, mean, stderr })
}
