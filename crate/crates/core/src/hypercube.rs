//! Vertices, directions, edge colourings and geodesics of the hypercube `Q_n`.
//!
//! A vertex is an `n`-bit integer whose bit `d` is coordinate `d`. The edge in
//! direction `d` at vertex `u` joins `u` and `u ^ (1 << d)`; its canonical
//! endpoint is the one with bit `d` clear.

use std::fmt;

use crate::error::{Error, Result};
use crate::q3::Q3Colouring;

/// Largest supported dimension.
pub const MAX_DIMENSION: u32 = 24;

#[inline]
pub(crate) fn vertex_mask(n: u32) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn check_dimension(n: u32) -> Result<()> {
    if (1..=MAX_DIMENSION).contains(&n) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange(n))
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Red,
    Blue,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Vertex {
    #[inline]
    pub fn id(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn flip(self, d: Direction) -> Vertex {
        Vertex(self.0 ^ d.bit())
    }

    #[inline]
    pub fn has(self, d: Direction) -> bool {
        self.0 & d.bit() != 0
    }

    /// Bitwise complement within `n` bits.
    #[inline]
    pub fn antipode(self, n: u32) -> Vertex {
        Vertex(!self.0 & vertex_mask(n))
    }

    #[inline]
    pub fn parity(self) -> Parity {
        if self.0.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    #[inline]
    pub fn distance(self, other: Vertex) -> u32 {
        (self.0 ^ other.0).count_ones()
    }

    pub fn in_dimension(self, n: u32) -> Result<Vertex> {
        if self.0 & !vertex_mask(n) != 0 {
            Err(Error::VertexOutOfRange { vertex: self.0, n })
        } else {
            Ok(self)
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Direction {
    #[inline]
    pub fn bit(self) -> u32 {
        1u32 << self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn in_dimension(self, n: u32) -> Result<Direction> {
        if self.0 >= n {
            Err(Error::DirectionOutOfRange { direction: self.0, n })
        } else {
            Ok(self)
        }
    }
}

impl Colour {
    #[inline]
    pub fn from_bit(bit: bool) -> Colour {
        if bit {
            Colour::Blue
        } else {
            Colour::Red
        }
    }

    /// `false` for Red, `true` for Blue; the serialized form is `'0'`/`'1'`.
    #[inline]
    pub fn bit(self) -> bool {
        self == Colour::Blue
    }

    #[inline]
    pub fn flipped(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

/// Antipode and parity of `v` in `Q_n`.
pub fn vertex_ops(v: Vertex, n: u32) -> Result<(Vertex, Parity)> {
    check_dimension(n)?;
    let v = v.in_dimension(n)?;
    Ok((v.antipode(n), v.parity()))
}

/// Removes bit `d` from `u`, shifting the higher bits down one place.
#[inline]
fn compress(u: u32, d: u32) -> u32 {
    let low = u & ((1u32 << d) - 1);
    let high = (u >> (d + 1)) << d;
    low | high
}

#[inline]
fn slot(n: u32, u: u32, d: u32) -> usize {
    ((d as usize) << (n - 1)) | compress(u, d) as usize
}

/// Canonical index `d * 2^(n-1) + compress(u, d)` of the edge in direction `d`
/// at its canonical endpoint `u`.
pub fn edge_index(n: u32, u: Vertex, d: Direction) -> Result<usize> {
    check_dimension(n)?;
    let d = d.in_dimension(n)?;
    let u = u.in_dimension(n)?;
    if u.has(d) {
        return Err(Error::NonCanonicalEndpoint { vertex: u.0, direction: d.0 });
    }
    Ok(slot(n, u.0, d.0))
}

/// Inverse of [`edge_index`].
pub fn edge_from_index(n: u32, index: usize) -> Result<(Vertex, Direction)> {
    check_dimension(n)?;
    let half = 1usize << (n - 1);
    if index >= n as usize * half {
        return Err(Error::WrongLength { expected: n as usize * half, found: index + 1 });
    }
    let d = (index / half) as u32;
    let rest = (index % half) as u32;
    let low = rest & ((1u32 << d) - 1);
    let high = (rest >> d) << (d + 1);
    Ok((Vertex(low | high), Direction(d)))
}

/// A 2-colouring of the `n * 2^(n-1)` edges of `Q_n`, bit-packed in edge index order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColouring {
    n: u32,
    words: Vec<u64>,
}

impl fmt::Debug for EdgeColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeColouring")
            .field("n", &self.n)
            .field("edges", &self.num_edges())
            .finish()
    }
}

impl EdgeColouring {
    pub fn edge_count(n: u32) -> usize {
        (n as usize) << (n - 1)
    }

    /// Builds a colouring from its packed words; bits past the last edge are cleared.
    pub fn from_words(n: u32, mut words: Vec<u64>) -> Result<Self> {
        check_dimension(n)?;
        let edges = Self::edge_count(n);
        let expected = edges.div_ceil(64);
        if words.len() != expected {
            return Err(Error::WrongLength { expected: edges, found: words.len() * 64 });
        }
        let tail = edges % 64;
        if tail != 0 {
            *words.last_mut().unwrap() &= (1u64 << tail) - 1;
        }
        Ok(EdgeColouring { n, words })
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(n: u32, bits: I) -> Result<Self> {
        check_dimension(n)?;
        let edges = Self::edge_count(n);
        let mut words = vec![0u64; edges.div_ceil(64)];
        let mut count = 0usize;
        for (i, bit) in bits.into_iter().enumerate() {
            if i < edges && bit {
                words[i / 64] |= 1 << (i % 64);
            }
            count += 1;
        }
        if count != edges {
            return Err(Error::WrongLength { expected: edges, found: count });
        }
        Ok(EdgeColouring { n, words })
    }

    /// Colours each edge by `rule(canonical endpoint, direction)`.
    pub fn from_fn(n: u32, mut rule: impl FnMut(Vertex, Direction) -> Colour) -> Result<Self> {
        check_dimension(n)?;
        let bits = (0..Self::edge_count(n)).map(|i| {
            let (u, d) = edge_from_index(n, i).expect("index in range");
            rule(u, d).bit()
        });
        Self::from_bits(n, bits.collect::<Vec<_>>())
    }

    pub fn monochrome(n: u32, colour: Colour) -> Result<Self> {
        Self::from_fn(n, |_, _| colour)
    }

    /// Every edge in direction `red_direction` is Red and every other edge is Blue.
    pub fn direction_split(n: u32, red_direction: Direction) -> Result<Self> {
        let red_direction = red_direction.in_dimension(n)?;
        Self::from_fn(n, |_, d| if d == red_direction { Colour::Red } else { Colour::Blue })
    }

    #[inline]
    pub fn dimension(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        Self::edge_count(self.n)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn bit(&self, index: usize) -> bool {
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.num_edges()).map(move |i| self.bit(i))
    }

    /// Colour of the edge in direction `d` at `u` (either endpoint).
    #[inline]
    pub fn colour_at(&self, u: Vertex, d: Direction) -> Colour {
        debug_assert!(d.0 < self.n && u.0 <= vertex_mask(self.n));
        let canonical = u.0 & !d.bit();
        Colour::from_bit(self.bit(slot(self.n, canonical, d.0)))
    }

    /// Colour of the edge `uv`, independent of argument order.
    pub fn edge_colour(&self, u: Vertex, v: Vertex) -> Result<Colour> {
        let u = u.in_dimension(self.n)?;
        let v = v.in_dimension(self.n)?;
        let diff = u.0 ^ v.0;
        if diff.count_ones() != 1 {
            return Err(Error::NotAdjacent(u.0, v.0));
        }
        Ok(self.colour_at(u, Direction(diff.trailing_zeros())))
    }

    pub fn complement(&self) -> EdgeColouring {
        let words = self.words.iter().map(|w| !w).collect();
        Self::from_words(self.n, words).expect("same shape")
    }

    pub fn with_flipped_edge(&self, index: usize) -> EdgeColouring {
        assert!(index < self.num_edges(), "edge index {index} out of range");
        let mut words = self.words.clone();
        words[index / 64] ^= 1 << (index % 64);
        EdgeColouring { n: self.n, words }
    }

    /// Number of Red edges at `v`.
    pub fn red_degree(&self, v: Vertex) -> u32 {
        (0..self.n)
            .filter(|&d| self.colour_at(v, Direction(d)) == Colour::Red)
            .count() as u32
    }
}

/// A path that never uses a direction twice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Geodesic {
    start: Vertex,
    dirs: Vec<Direction>,
}

impl Geodesic {
    pub fn new(start: Vertex, dirs: Vec<Direction>) -> Result<Self> {
        let mut seen = 0u32;
        for d in &dirs {
            if d.0 >= 32 {
                return Err(Error::DirectionOutOfRange { direction: d.0, n: 32 });
            }
            if seen & d.bit() != 0 {
                return Err(Error::RepeatedDirection(d.0));
            }
            seen |= d.bit();
        }
        Ok(Geodesic { start, dirs })
    }

    pub(crate) fn new_unchecked(start: Vertex, dirs: Vec<Direction>) -> Self {
        debug_assert!(Geodesic::new(start, dirs.clone()).is_ok());
        Geodesic { start, dirs }
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    pub fn dirs(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn direction_mask(&self) -> u32 {
        self.dirs.iter().fold(0, |m, d| m | d.bit())
    }

    pub fn end(&self) -> Vertex {
        Vertex(self.start.0 ^ self.direction_mask())
    }

    /// All visited vertices, starting with `start` and ending with `end`.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.dirs.len() + 1);
        let mut v = self.start;
        out.push(v);
        for &d in &self.dirs {
            v = v.flip(d);
            out.push(v);
        }
        out
    }

    pub fn reversed(&self) -> Geodesic {
        Geodesic {
            start: self.end(),
            dirs: self.dirs.iter().rev().copied().collect(),
        }
    }

    /// True when the geodesic uses all `n` directions, i.e. joins antipodal vertices.
    pub fn is_antipodal(&self, n: u32) -> bool {
        self.dirs.len() == n as usize && self.direction_mask() == vertex_mask(n)
    }

    /// Edge colours along the path.
    pub fn colours<'a>(&'a self, c: &'a EdgeColouring) -> impl Iterator<Item = Colour> + 'a {
        let mut v = self.start;
        self.dirs.iter().map(move |&d| {
            let colour = c.colour_at(v, d);
            v = v.flip(d);
            colour
        })
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "start={} dirs=", self.start)?;
        for (i, d) in self.dirs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", d.0)?;
        }
        Ok(())
    }
}

/// Rearranges `items` into the next permutation in lexicographic order.
/// Returns `false` (leaving the slice sorted ascending) after the last one.
pub(crate) fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Every geodesic from `v` to `w`, in lexicographic order of direction sequence.
pub fn enumerate_geodesics(v: Vertex, w: Vertex) -> Vec<Geodesic> {
    let diff = v.0 ^ w.0;
    let mut dirs: Vec<Direction> = (0..32).filter(|d| diff >> d & 1 == 1).map(Direction).collect();
    let mut out = Vec::new();
    loop {
        out.push(Geodesic::new_unchecked(v, dirs.clone()));
        if !next_permutation(&mut dirs) {
            break;
        }
    }
    out
}

/// Number of consecutive edge pairs along `g` whose colours differ.
pub fn colour_changes(c: &EdgeColouring, g: &Geodesic) -> usize {
    assert!(
        g.dirs.iter().all(|d| d.0 < c.dimension()) && g.start.0 <= vertex_mask(c.dimension()),
        "geodesic does not fit in Q_{}",
        c.dimension()
    );
    let mut changes = 0;
    let mut previous = None;
    for colour in g.colours(c) {
        if previous.is_some_and(|p| p != colour) {
            changes += 1;
        }
        previous = Some(colour);
    }
    changes
}

/// The 3-dimensional subcube spanned by the geodesics between two vertices at distance 3.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubcubeEmbedding {
    anchor: Vertex,
    dirs: [Direction; 3],
}

impl SubcubeEmbedding {
    /// `dirs` may be given in any order; `anchor` must have all three bits clear.
    pub fn new(anchor: Vertex, mut dirs: [Direction; 3]) -> Result<Self> {
        dirs.sort();
        if dirs[0] == dirs[1] || dirs[1] == dirs[2] {
            return Err(Error::RepeatedDirection(dirs[1].0));
        }
        if dirs[2].0 >= 32 {
            return Err(Error::DirectionOutOfRange { direction: dirs[2].0, n: 32 });
        }
        for d in dirs {
            if anchor.has(d) {
                return Err(Error::NonCanonicalEndpoint { vertex: anchor.0, direction: d.0 });
            }
        }
        Ok(SubcubeEmbedding { anchor, dirs })
    }

    pub(crate) fn from_mask(anchor: Vertex, mask: u32) -> Self {
        debug_assert_eq!(mask.count_ones(), 3);
        let d0 = mask.trailing_zeros();
        let rest = mask & (mask - 1);
        let d1 = rest.trailing_zeros();
        let d2 = (rest & (rest - 1)).trailing_zeros();
        SubcubeEmbedding {
            anchor: Vertex(anchor.0 & !mask),
            dirs: [Direction(d0), Direction(d1), Direction(d2)],
        }
    }

    pub fn anchor(&self) -> Vertex {
        self.anchor
    }

    pub fn dirs(&self) -> [Direction; 3] {
        self.dirs
    }

    pub fn mask(&self) -> u32 {
        self.dirs.iter().fold(0, |m, d| m | d.bit())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.0 & !self.mask() == self.anchor.0
    }

    /// Local 3-bit coordinates of `v`: local bit `i` is global direction `dirs[i]`.
    #[inline]
    pub fn to_local(&self, v: Vertex) -> u8 {
        debug_assert!(self.contains(v));
        self.dirs
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, d)| acc | ((v.has(*d) as u8) << i))
    }

    #[inline]
    pub fn to_global(&self, local: u8) -> Vertex {
        let bits = self
            .dirs
            .iter()
            .enumerate()
            .filter(|(i, _)| local >> i & 1 == 1)
            .fold(0u32, |acc, (_, d)| acc | d.bit());
        Vertex(self.anchor.0 | bits)
    }

    pub fn vertices(&self) -> [Vertex; 8] {
        std::array::from_fn(|i| self.to_global(i as u8))
    }

    /// The colouring `c` induces on this subcube, in `Q_3` edge index order.
    pub fn restrict(&self, c: &EdgeColouring) -> Q3Colouring {
        let mut bits = 0u16;
        for (local_d, &d) in self.dirs.iter().enumerate() {
            for rest in 0u8..4 {
                // local edge index local_d * 4 + rest; rest is the endpoint with bit local_d removed
                let low = rest & ((1 << local_d) - 1);
                let high = (rest >> local_d) << (local_d + 1);
                let u = self.to_global(low | high);
                if c.colour_at(u, d).bit() {
                    bits |= 1 << (local_d * 4 + rest as usize);
                }
            }
        }
        Q3Colouring::from_bits_truncate(bits)
    }
}

/// The subcube `G(v, w)` for `v`, `w` at distance 3.
pub fn subcube_of_pair(v: Vertex, w: Vertex) -> Result<SubcubeEmbedding> {
    let diff = v.0 ^ w.0;
    if diff.count_ones() != 3 {
        return Err(Error::NotDistanceThree { v: v.0, w: w.0, distance: diff.count_ones() });
    }
    Ok(SubcubeEmbedding::from_mask(v, diff))
}
