//! Points, vertex sets, adjacency and line structure of H(n,3).
//!
//! Coordinates are numbered from 1 in every public signature that takes a
//! direction (`is_saturated(s, 1)` is the first coordinate). Point indices use
//! little-endian base 3: `index = Σ x_i · 3^(i-1)`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 12;

const POW3: [usize; MAX_DIM + 1] = {
    let mut t = [1usize; MAX_DIM + 1];
    let mut i = 1;
    while i <= MAX_DIM {
        t[i] = t[i - 1] * 3;
        i += 1;
    }
    t
};

/// `3^k` for `k <= MAX_DIM`.
#[inline]
pub fn pow3(k: usize) -> usize {
    POW3[k]
}

/// Coordinate at 0-based position `axis` of the point with the given index.
#[inline]
pub fn digit(index: usize, axis: usize) -> u8 {
    ((index / POW3[axis]) % 3) as u8
}

/// Index of the point obtained by adding `a` (mod 3) to coordinate `axis`.
#[inline]
pub fn shift_index(index: usize, axis: usize, a: u8) -> usize {
    let d = digit(index, axis) as usize;
    let nd = (d + a as usize) % 3;
    index + nd * POW3[axis] - d * POW3[axis]
}

/// Indices of the `2n` neighbours of `index`.
pub fn neighbor_indices(index: usize, n: usize) -> impl Iterator<Item = usize> {
    (0..n).flat_map(move |axis| [1u8, 2].map(|a| shift_index(index, axis, a)))
}

/// Sum of coordinates mod 3 of the point with the given index.
pub fn digit_sum(index: usize, n: usize) -> u8 {
    (0..n).map(|a| digit(index, a) as usize).sum::<usize>() as u8 % 3
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        return Err(Error::Capability(format!(
            "dimension {n} exceeds the supported maximum {MAX_DIM}"
        )));
    }
    Ok(())
}

/// Converts a 1-based direction into a 0-based axis, checking range.
pub(crate) fn axis_of(direction: usize, n: usize) -> Result<usize> {
    if direction == 0 || direction > n {
        return Err(Error::InvalidArgument(format!(
            "direction {direction} is not in [1, {n}]"
        )));
    }
    Ok(direction - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TernaryPoint {
    coords: Vec<u8>,
}

impl TernaryPoint {
    pub fn new(coords: Vec<u8>) -> Result<Self> {
        check_dim(coords.len())?;
        if let Some(&c) = coords.iter().find(|&&c| c > 2) {
            return Err(Error::Codec(format!("coordinate {c} is not in Z_3")));
        }
        Ok(TernaryPoint { coords })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        TernaryPoint { coords: vec![0; n] }
    }

    /// Unit vector `e_direction` (1-based).
    pub fn unit(n: usize, direction: usize) -> Result<Self> {
        let axis = axis_of(direction, n)?;
        let mut p = Self::zero(n);
        p.coords[axis] = 1;
        Ok(p)
    }

    pub fn from_index(index: usize, n: usize) -> Result<Self> {
        check_dim(n)?;
        if index >= pow3(n) {
            return Err(Error::Codec(format!(
                "index {index} is out of range for n = {n}"
            )));
        }
        Ok(Self::from_index_unchecked(index, n))
    }

    pub(crate) fn from_index_unchecked(index: usize, n: usize) -> Self {
        TernaryPoint {
            coords: (0..n).map(|a| digit(index, a)).collect(),
        }
    }

    pub fn index(&self) -> usize {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, &c)| c as usize * pow3(i))
            .sum()
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn add(&self, other: &TernaryPoint) -> Result<TernaryPoint> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(TernaryPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) % 3)
                .collect(),
        })
    }

    /// `self + a·e_direction`.
    pub fn step(&self, direction: usize, a: u8) -> Result<TernaryPoint> {
        let axis = axis_of(direction, self.n())?;
        let mut coords = self.coords.clone();
        coords[axis] = (coords[axis] + a % 3) % 3;
        Ok(TernaryPoint { coords })
    }

    pub fn hamming(&self, other: &TernaryPoint) -> usize {
        self.coords
            .iter()
            .zip(&other.coords)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// The `2n` points at Hamming distance 1.
    pub fn neighbors(&self) -> Vec<TernaryPoint> {
        let mut out = Vec::with_capacity(2 * self.n());
        for axis in 0..self.n() {
            for a in 1..3 {
                let mut coords = self.coords.clone();
                coords[axis] = (coords[axis] + a) % 3;
                out.push(TernaryPoint { coords });
            }
        }
        out
    }
}

impl fmt::Display for TernaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A subset of Z_3^n as a bit array indexed by the point codec.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    /// Panics if `n > MAX_DIM`.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        VertexSet {
            n,
            words: vec![0; pow3(n).div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        Self::from_fn(n, |_| true)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(n);
        for i in 0..pow3(n) {
            if f(i) {
                s.insert(i);
            }
        }
        s
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_dim(n)?;
        let mut s = Self::empty(n);
        for i in indices {
            if i >= s.universe() {
                return Err(Error::Codec(format!(
                    "index {i} is out of range for n = {n}"
                )));
            }
            s.insert(i);
        }
        Ok(s)
    }

    pub fn from_points(n: usize, points: &[TernaryPoint]) -> Result<Self> {
        for p in points {
            if p.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.n(),
                });
            }
        }
        Self::from_indices(n, points.iter().map(TernaryPoint::index))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points of Z_3^n.
    pub fn universe(&self) -> usize {
        pow3(self.n)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        index < self.universe() && self.words[index >> 6] >> (index & 63) & 1 == 1
    }

    pub fn contains_point(&self, p: &TernaryPoint) -> bool {
        p.n() == self.n && self.contains(p.index())
    }

    #[inline]
    pub fn insert(&mut self, index: usize) {
        assert!(index < self.universe());
        self.words[index >> 6] |= 1 << (index & 63);
    }

    #[inline]
    pub fn remove(&mut self, index: usize) {
        assert!(index < self.universe());
        self.words[index >> 6] &= !(1 << (index & 63));
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn points(&self) -> Vec<TernaryPoint> {
        self.iter()
            .map(|i| TernaryPoint::from_index_unchecked(i, self.n))
            .collect()
    }

    fn same_dim(&self, other: &VertexSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    fn zip_words(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> Result<VertexSet> {
        self.same_dim(other)?;
        Ok(VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn union(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        let full = VertexSet::full(self.n);
        full.difference(self).expect("same dimension")
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.n == other.n
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// Lexicographic order on bit arrays read from index 0 upward, absent < present.
    pub fn lex_cmp(&self, other: &VertexSet) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let x = a ^ b;
            if x != 0 {
                let low = x & x.wrapping_neg();
                return if a & low == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.words.len().cmp(&other.words.len())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("set serializes")
    }

    pub fn from_json(text: &str) -> Result<VertexSet> {
        Ok(serde_json::from_str(text)?)
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.lex_cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VertexSet")
            .field("n", &self.n)
            .field("points", &self.iter().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SetJson {
    n: usize,
    points: Vec<usize>,
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetJson {
            n: self.n,
            points: self.iter().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SetJson::deserialize(d)?;
        if raw.points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(D::Error::custom("points must be strictly ascending"));
        }
        VertexSet::from_indices(raw.n, raw.points).map_err(D::Error::custom)
    }
}

/// Induced degree of every member plus the maximum (0 for the empty set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<(usize, u32)>,
    pub max: u32,
}

impl DegreeProfile {
    pub fn degree(&self, index: usize) -> Option<u32> {
        self.degrees
            .binary_search_by_key(&index, |&(i, _)| i)
            .ok()
            .map(|k| self.degrees[k].1)
    }
}

/// Number of members of `s` adjacent to the point `index`.
pub fn degree_in(s: &VertexSet, index: usize) -> u32 {
    neighbor_indices(index, s.n())
        .filter(|&j| s.contains(j))
        .count() as u32
}

pub fn induced_degree_profile(s: &VertexSet) -> DegreeProfile {
    let degrees: Vec<(usize, u32)> = s.iter().map(|i| (i, degree_in(s, i))).collect();
    let max = degrees.iter().map(|&(_, d)| d).max().unwrap_or(0);
    DegreeProfile { degrees, max }
}

pub fn max_induced_degree(s: &VertexSet) -> u32 {
    s.iter().map(|i| degree_in(s, i)).max().unwrap_or(0)
}

/// Early-exit test for `max_induced_degree(s) <= d`.
pub fn has_degree_at_most(s: &VertexSet, d: u32) -> bool {
    s.iter().all(|i| degree_in(s, i) <= d)
}

pub fn is_independent(s: &VertexSet) -> bool {
    has_degree_at_most(s, 0)
}

/// The line `{x, x+e_i, x+2e_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub base: TernaryPoint,
    pub direction: usize,
}

impl Line {
    pub fn new(base: TernaryPoint, direction: usize) -> Result<Self> {
        axis_of(direction, base.n())?;
        Ok(Line { base, direction })
    }

    pub fn points(&self) -> [TernaryPoint; 3] {
        let step = |a| {
            self.base
                .step(self.direction, a)
                .expect("checked direction")
        };
        [self.base.clone(), step(1), step(2)]
    }

    pub fn indices(&self) -> [usize; 3] {
        let axis = self.direction - 1;
        let b = self.base.index();
        [b, shift_index(b, axis, 1), shift_index(b, axis, 2)]
    }
}

/// Bases (coordinate `axis` equal to 0) of every line along a 0-based axis.
pub(crate) fn line_bases(n: usize, axis: usize) -> impl Iterator<Item = usize> {
    let lo = pow3(axis);
    let hi = pow3(n - axis - 1);
    (0..hi).flat_map(move |h| (0..lo).map(move |l| h * lo * 3 + l))
}

/// All `3^(n-1)` lines in a direction, based at points with that coordinate 0.
pub fn lines(n: usize, direction: usize) -> Result<Vec<Line>> {
    let axis = axis_of(direction, n)?;
    Ok(line_bases(n, axis)
        .map(|b| Line {
            base: TernaryPoint::from_index_unchecked(b, n),
            direction,
        })
        .collect())
}

fn line_hits(s: &VertexSet, axis: usize) -> impl Iterator<Item = usize> + '_ {
    let step = pow3(axis);
    line_bases(s.n(), axis).map(move |b| {
        s.contains(b) as usize + s.contains(b + step) as usize + s.contains(b + 2 * step) as usize
    })
}

/// True iff every line in `direction` meets `s`.
pub fn is_saturated(s: &VertexSet, direction: usize) -> Result<bool> {
    let axis = axis_of(direction, s.n())?;
    Ok(line_hits(s, axis).all(|h| h > 0))
}

/// Number of lines in `direction` containing exactly two members of `s`.
pub fn count_two_point_lines(s: &VertexSet, direction: usize) -> Result<usize> {
    let axis = axis_of(direction, s.n())?;
    Ok(line_hits(s, axis).filter(|&h| h == 2).count())
}

/// `count_two_point_lines` for directions `1..=n`.
pub fn two_point_line_counts(s: &VertexSet) -> Vec<usize> {
    (1..=s.n())
        .map(|k| count_two_point_lines(s, k).expect("direction in range"))
        .collect()
}

/// Parameters of the independent set `{x : Σ b_i x_i ≡ c (mod 3)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetParams {
    pub b: Vec<u8>,
    pub c: u8,
}

impl CosetParams {
    pub fn new(b: Vec<u8>, c: u8) -> Result<Self> {
        if b.is_empty() || b[0] != 1 {
            return Err(Error::InvalidArgument("b must start with 1".into()));
        }
        if b.iter().any(|&v| v != 1 && v != 2) {
            return Err(Error::InvalidArgument("b entries must be 1 or 2".into()));
        }
        if c > 2 {
            return Err(Error::InvalidArgument(format!("c = {c} is not in Z_3")));
        }
        check_dim(b.len())?;
        Ok(CosetParams { b, c })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        let s: usize = self
            .b
            .iter()
            .enumerate()
            .map(|(a, &w)| w as usize * digit(index, a) as usize)
            .sum();
        s % 3 == self.c as usize
    }
}

impl fmt::Display for CosetParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b=")?;
        for v in &self.b {
            write!(f, "{v}")?;
        }
        write!(f, ",c={}", self.c)
    }
}

pub fn coset_independent_set(p: &CosetParams) -> VertexSet {
    VertexSet::from_fn(p.n(), |i| p.contains(i))
}

/// All `3·2^(n-1)` maximum independent sets, in lexicographic `(b, c)` order.
pub fn enumerate_max_independent_sets(n: usize) -> Result<Vec<(CosetParams, VertexSet)>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    check_dim(n)?;
    let mut out = Vec::with_capacity(3 << (n - 1));
    for mask in 0..(1usize << (n - 1)) {
        // bit n-2 of the mask is b_2 so that the list is lexicographic in b
        let b: Vec<u8> = std::iter::once(1)
            .chain((0..n - 1).map(|k| 1 + ((mask >> (n - 2 - k)) & 1) as u8))
            .collect();
        for c in 0..3 {
            let p = CosetParams { b: b.clone(), c };
            let set = coset_independent_set(&p);
            out.push((p, set));
        }
    }
    Ok(out)
}

/// The max independent sets disjoint from `s`, in enumeration order.
pub fn disjoint_max_independent_sets(s: &VertexSet) -> Result<Vec<CosetParams>> {
    Ok(enumerate_max_independent_sets(s.n())?
        .into_iter()
        .filter(|(_, i)| i.is_disjoint(s))
        .map(|(p, _)| p)
        .collect())
}

fn sum_class(n: usize, c: u8) -> VertexSet {
    VertexSet::from_fn(n, |i| digit_sum(i, n) == c)
}

/// `A_n = {x : Σ x_i ≡ 0}`.
pub fn a_set(n: usize) -> VertexSet {
    sum_class(n, 0)
}

/// `B_n = {x : Σ x_i ≡ 1}`.
pub fn b_set(n: usize) -> VertexSet {
    sum_class(n, 1)
}

/// `C_n = {x : Σ x_i ≡ 2}`.
pub fn c_set(n: usize) -> VertexSet {
    sum_class(n, 2)
}

/// `A'_n = {x : x_1 + … + x_(n-1) + 2x_n ≡ 0}`.
pub fn a_prime_set(n: usize) -> VertexSet {
    assert!(n >= 1);
    VertexSet::from_fn(n, |i| {
        (digit_sum(i, n) as usize + digit(i, n - 1) as usize).is_multiple_of(3)
    })
}

pub fn a_params(n: usize) -> CosetParams {
    CosetParams {
        b: vec![1; n],
        c: 0,
    }
}

pub fn a_prime_params(n: usize) -> CosetParams {
    let mut b = vec![1; n];
    if n > 1 {
        b[n - 1] = 2;
    }
    CosetParams { b, c: 0 }
}

#[derive(Clone, Debug)]
pub struct SumClasses {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub a_prime: VertexSet,
}

pub fn abc_and_aprime(n: usize) -> Result<SumClasses> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    check_dim(n)?;
    Ok(SumClasses {
        a: a_set(n),
        b: b_set(n),
        c: c_set(n),
        a_prime: a_prime_set(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[u8]) -> TernaryPoint {
        TernaryPoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn codec_examples() {
        assert_eq!(pt(&[0, 0, 0]).index(), 0);
        assert_eq!(pt(&[1, 2, 0]).index(), 7);
        assert_eq!(TernaryPoint::from_index(26, 3).unwrap(), pt(&[2, 2, 2]));
        assert!(TernaryPoint::from_index(27, 3).is_err());
        assert!(TernaryPoint::new(vec![0, 3]).is_err());
    }

    #[test]
    fn codec_round_trip() {
        for n in 0..=5 {
            for i in 0..pow3(n) {
                assert_eq!(TernaryPoint::from_index(i, n).unwrap().index(), i);
            }
        }
    }

    #[test]
    fn neighbors_examples() {
        let nb = pt(&[0]).neighbors();
        assert_eq!(nb, vec![pt(&[1]), pt(&[2])]);
        assert_eq!(TernaryPoint::zero(4).neighbors().len(), 8);
        let mut nb = pt(&[0, 0]).neighbors();
        nb.sort();
        assert_eq!(nb, vec![pt(&[0, 1]), pt(&[0, 2]), pt(&[1, 0]), pt(&[2, 0])]);
        for i in 0..81 {
            let p = TernaryPoint::from_index(i, 4).unwrap();
            let idx: Vec<usize> = neighbor_indices(i, 4).collect();
            let via_points: Vec<usize> = p.neighbors().iter().map(|q| q.index()).collect();
            assert_eq!(idx, via_points);
            assert!(p.neighbors().iter().all(|q| q.hamming(&p) == 1));
        }
    }

    #[test]
    fn degree_profile_examples() {
        let u = VertexSet::from_points(2, &[pt(&[0, 0]), pt(&[0, 2]), pt(&[1, 1]), pt(&[2, 1])])
            .unwrap();
        let prof = induced_degree_profile(&u);
        assert!(prof.degrees.iter().all(|&(_, d)| d == 1));
        assert_eq!(prof.max, 1);

        let line = VertexSet::full(1);
        let prof = induced_degree_profile(&line);
        assert!(prof.degrees.iter().all(|&(_, d)| d == 2));

        assert_eq!(max_induced_degree(&a_set(3)), 0);
        assert_eq!(max_induced_degree(&VertexSet::empty(3)), 0);
    }

    #[test]
    fn max_independent_sets() {
        let all = enumerate_max_independent_sets(3).unwrap();
        assert_eq!(all.len(), 12);
        assert_eq!(all[0].0, a_params(3));
        assert_eq!(all[0].1, a_set(3));
        for w in all.windows(2) {
            assert!(w[0].0 < w[1].0);
        }
        for (_, s) in &all {
            assert_eq!(s.len(), 9);
            assert!(is_independent(s));
        }
    }

    #[test]
    fn sum_classes() {
        let c = abc_and_aprime(1).unwrap();
        assert_eq!(c.a.iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(c.b.iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(c.c.iter().collect::<Vec<_>>(), vec![2]);
        let a2 = a_prime_set(2);
        assert_eq!(a2.points(), vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])]);
        assert_eq!(a_prime_set(3), coset_independent_set(&a_prime_params(3)));
    }

    #[test]
    fn saturation_and_lines() {
        assert!(!is_saturated(&VertexSet::empty(2), 1).unwrap());
        assert!(is_saturated(&VertexSet::full(2), 2).unwrap());
        assert!(is_saturated(&a_set(2), 3).is_err());
        assert_eq!(count_two_point_lines(&a_set(4), 2).unwrap(), 0);
        let ls = lines(3, 2).unwrap();
        assert_eq!(ls.len(), 9);
        for l in ls {
            let p = l.points();
            assert_eq!(p[0].hamming(&p[1]), 1);
            assert_eq!(p[1].hamming(&p[2]), 1);
            assert_eq!(p[0].hamming(&p[2]), 1);
            assert_eq!(l.indices(), p.clone().map(|q| q.index()));
        }
    }

    #[test]
    fn lex_order_prefers_leading_absence() {
        let a = VertexSet::from_indices(2, [1]).unwrap();
        let b = VertexSet::from_indices(2, [0]).unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        let big = VertexSet::from_indices(5, [200]).unwrap();
        let small = VertexSet::from_indices(5, [100, 200]).unwrap();
        assert_eq!(big.lex_cmp(&small), Ordering::Less);
    }

    #[test]
    fn json_round_trip() {
        let s = VertexSet::from_indices(2, [4, 1, 8]).unwrap();
        let text = s.to_json();
        assert_eq!(text, r#"{"n":2,"points":[1,4,8]}"#);
        assert_eq!(VertexSet::from_json(&text).unwrap(), s);
        assert!(VertexSet::from_json(r#"{"n":2,"points":[4,1]}"#).is_err());
        assert!(VertexSet::from_json(r#"{"n":2,"points":[9]}"#).is_err());
    }
}
