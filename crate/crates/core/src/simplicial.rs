//! Finite abstract simplicial complexes on a ground set `{1, …, m}` with
//! `m <= 63`, stored by their maximal simplices.
//!
//! Vertex subsets are packed into a single machine word ([`VertexSet`]), so
//! every set operation used by the rest of the crate is a handful of bit
//! instructions. Vertices are 1-indexed; a complex may have *ghost* vertices,
//! i.e. elements of the ground set that appear in no simplex. The empty
//! simplex belongs to every complex.

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Largest supported ground set size; subsets must fit in a `u64`.
pub const MAX_VERTICES: usize = 63;

/// A subset of the ground set `{1, …, m}`, packed into one machine word.
///
/// Bit `i - 1` is set exactly when vertex `i` is a member. The derived
/// ordering compares raw masks, which sorts sets colexicographically; that
/// ordering is used everywhere a deterministic arrangement of subsets or
/// simplices is needed.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{v}`. Panics if `v` is not in `1..=63`; range checks against
    /// a particular ground set happen in [`Complex::from_facets`].
    pub fn singleton(v: usize) -> Self {
        assert!(
            (1..=MAX_VERTICES).contains(&v),
            "vertex {v} out of word range"
        );
        VertexSet(1u64 << (v - 1))
    }

    /// The full ground set `{1, …, m}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_VERTICES, "ground set size {m} out of word range");
        if m == 0 {
            VertexSet(0)
        } else {
            VertexSet(u64::MAX >> (64 - m))
        }
    }

    /// Builds a set from 1-indexed vertices. Panics on vertices outside
    /// `1..=63`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in vertices {
            set = set.with(v);
        }
        set
    }

    /// Wraps a raw bitmask; bit `v-1` stands for vertex `v`.
    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    /// The raw bitmask; bit `v-1` stands for vertex `v`.
    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    /// `self` with vertex `v` added.
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | VertexSet::singleton(v).0)
    }

    /// `self` with vertex `v` removed.
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !VertexSet::singleton(v).0)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Complement inside the ground set `{1, …, m}`.
    pub fn complement_in(self, m: usize) -> Self {
        VertexSet(VertexSet::full(m).0 & !self.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint_from(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize + 1;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    pub fn vertices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of members strictly greater than `v`.
    pub fn count_above(self, v: usize) -> usize {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        (self.0 >> v).count_ones() as usize
    }

    /// Number of members strictly less than `v`.
    pub fn count_below(self, v: usize) -> usize {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        (self.0 & ((1u64 << (v - 1)) - 1)).count_ones() as usize
    }

    /// All subsets of `self` in ascending mask order, starting with the
    /// empty set and ending with `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.0;
        let mut current = Some(0u64);
        std::iter::from_fn(move || {
            let value = current?;
            let next = (value.wrapping_sub(mask)) & mask;
            current = if value == mask { None } else { Some(next) };
            Some(VertexSet(value))
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Deserialize)]
struct ComplexDescription {
    m: usize,
    facets: Vec<Vec<usize>>,
}

/// A finite abstract simplicial complex on `{1, …, m}`.
///
/// Stored by its maximal nonempty simplices (facets), canonicalized so that
/// no facet contains another, duplicates are removed, and facets are sorted
/// by mask. The empty simplex is always a member, so the complex with no
/// facets is `{∅}`. A `Complex` is immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    m: usize,
    facets: Vec<VertexSet>,
}

impl Complex {
    /// Builds a complex from a list of generating simplices.
    ///
    /// Returns [`Error::TooLarge`] when `m > 63` and [`Error::InvalidVertex`]
    /// when a simplex mentions a vertex outside `{1, …, m}`. Non-maximal and
    /// duplicate entries are absorbed. An empty list (or a list containing
    /// only the empty set) yields the complex `{∅}`.
    pub fn from_facets<I>(m: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        if m > MAX_VERTICES {
            return Err(Error::TooLarge { m });
        }
        let ground = VertexSet::full(m);
        let mut collected: Vec<VertexSet> = Vec::new();
        for facet in facets {
            if !facet.is_subset_of(ground) {
                let vertex = facet.difference(ground).min().unwrap_or(0);
                return Err(Error::InvalidVertex { vertex, m });
            }
            if !facet.is_empty() {
                collected.push(facet);
            }
        }
        collected.sort();
        collected.dedup();
        // A set is kept only when no other set strictly contains it.
        let maximal: Vec<VertexSet> = collected
            .iter()
            .filter(|&&f| !collected.iter().any(|&g| g != f && f.is_subset_of(g)))
            .copied()
            .collect();
        Ok(Complex { m, facets: maximal })
    }

    /// Parses the JSON description `{"m": <int>, "facets": [[v, …], …]}` with
    /// 1-indexed vertices.
    pub fn from_json(text: &str) -> Result<Self> {
        let description: ComplexDescription =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if description.m > MAX_VERTICES {
            return Err(Error::TooLarge { m: description.m });
        }
        let mut facets = Vec::with_capacity(description.facets.len());
        for raw in &description.facets {
            let mut facet = VertexSet::EMPTY;
            for &v in raw {
                if v < 1 || v > description.m {
                    return Err(Error::InvalidVertex {
                        vertex: v,
                        m: description.m,
                    });
                }
                facet = facet.with(v);
            }
            facets.push(facet);
        }
        Complex::from_facets(description.m, facets)
    }

    /// Ground set size `m`.
    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn ground_set(&self) -> VertexSet {
        VertexSet::full(self.m)
    }

    /// Maximal nonempty simplices, sorted by mask. Empty for the complex `{∅}`.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Vertices that belong to at least one simplex.
    pub fn supported_vertices(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, &f| acc.union(f))
    }

    /// Largest cardinality of a simplex (0 for `{∅}`).
    pub fn max_simplex_size(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// Membership test. The empty set is always a member; vertices outside
    /// the ground set are in no simplex.
    pub fn contains(&self, simplex: VertexSet) -> bool {
        simplex.is_empty() || self.facets.iter().any(|&f| simplex.is_subset_of(f))
    }

    /// All simplices contained in `scope` (including ∅), sorted by mask.
    pub fn simplices_within(&self, scope: VertexSet) -> Vec<VertexSet> {
        let mut seen: BTreeSet<VertexSet> = BTreeSet::new();
        seen.insert(VertexSet::EMPTY);
        for &facet in &self.facets {
            for subset in facet.intersection(scope).subsets() {
                seen.insert(subset);
            }
        }
        seen.into_iter().collect()
    }

    /// Every simplex of the complex (including ∅), sorted by mask.
    pub fn all_simplices(&self) -> Vec<VertexSet> {
        self.simplices_within(self.ground_set())
    }

    /// The full subcomplex on `scope`: all simplices contained in `scope`.
    ///
    /// Vertex labels are preserved; the result lives on the same ground set,
    /// with everything outside `scope` turned into ghost vertices.
    pub fn full_subcomplex(&self, scope: VertexSet) -> Complex {
        let restricted = self.facets.iter().map(|&f| f.intersection(scope));
        Complex::from_facets(self.m, restricted).expect("restriction of valid facets stays valid")
    }

    /// Connected components of the supported vertices, where two vertices are
    /// adjacent when they span an edge of the complex. Components are sorted
    /// by their smallest member; ghost vertices appear in no component.
    pub fn components(&self) -> Vec<VertexSet> {
        let supported = self.supported_vertices();
        let mut remaining = supported;
        let mut components = Vec::new();
        while let Some(start) = remaining.min() {
            let mut component = VertexSet::singleton(start);
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                for &facet in &self.facets {
                    if facet.contains(v) {
                        for u in facet.difference(component).iter() {
                            component = component.with(u);
                            frontier.push(u);
                        }
                    }
                }
            }
            remaining = remaining.difference(component);
            components.push(component);
        }
        components
    }
}

/// The boundary of an `n`-gon: vertices `1, …, n` with edges between circular
/// neighbours. Requires `n >= 3`.
pub fn polygon_boundary(n: usize) -> Result<Complex> {
    if n < 3 {
        return Err(Error::InvalidPolygon { n });
    }
    let mut facets: Vec<VertexSet> = (1..n)
        .map(|i| VertexSet::from_vertices([i, i + 1]))
        .collect();
    facets.push(VertexSet::from_vertices([1, n]));
    Complex::from_facets(n, facets)
}

/// The boundary of the `m`-simplex on `m + 1` vertices, a triangulation of
/// the `(m-1)`-sphere. Requires `m >= 1`.
pub fn simplex_boundary(m: usize) -> Result<Complex> {
    if m < 1 {
        return Err(Error::InvalidDimension { m });
    }
    let ground = VertexSet::full(m + 1);
    let facets = ground.iter().map(|v| ground.without(v));
    Complex::from_facets(m + 1, facets)
}
