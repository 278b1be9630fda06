//! The cochain complex underlying a real moment-angle complex.
//!
//! For every subset `I` of the ground set there is one *block*: a free graded
//! abelian group with a generator `y(I, σ)` for each simplex `σ ⊆ I` of the
//! complex, graded by `|σ|`. The differential inserts one vertex of `I` at a
//! time, with a sign that counts the generator's members below the inserted
//! vertex, and drops insertions that do not land on a simplex. Blocks never
//! interact through the differential, so the total complex is the direct sum
//! of the blocks over all `2^m` subsets.
//!
//! The cohomology of the block of `I`, computed in [`crate::linalg`], is the
//! reduced cohomology of the suspension of the full subcomplex on `I`,
//! shifted so that a `d`-dimensional class sits in degree `d`.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::simplicial::{Complex, VertexSet};

/// One generator of a block: the simplex `σ` contributing in degree `|σ|`,
/// tagged with the block `I` it lives in (`σ ⊆ I`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct KoszulGenerator {
    block: VertexSet,
    simplex: VertexSet,
}

impl KoszulGenerator {
    pub fn new(block: VertexSet, simplex: VertexSet) -> Self {
        debug_assert!(simplex.is_subset_of(block));
        KoszulGenerator { block, simplex }
    }

    pub fn block(&self) -> VertexSet {
        self.block
    }

    pub fn simplex(&self) -> VertexSet {
        self.simplex
    }

    pub fn degree(&self) -> usize {
        self.simplex.len()
    }
}

/// Sign picked up when the differential inserts `vertex` into `simplex`:
/// `-1` to the number of members of `simplex` below the inserted vertex.
pub fn sign_of_insertion(simplex: VertexSet, vertex: usize) -> Result<i64> {
    if simplex.contains(vertex) {
        return Err(Error::InvalidInsertion { vertex, simplex });
    }
    Ok(if simplex.count_below(vertex).is_multiple_of(2) {
        1
    } else {
        -1
    })
}

/// The block of one subset `I`: generators arranged by degree plus the
/// differentials between consecutive degrees.
///
/// Within a degree, generators are sorted by the mask of their simplex, so
/// every ordering in the crate is reproducible. `differential(d)` maps
/// degree `d` to degree `d + 1`; its matrix has one column per degree-`d`
/// generator and one row per degree-`d+1` generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBlock {
    block: VertexSet,
    gens_by_degree: Vec<Vec<KoszulGenerator>>,
    diffs: Vec<IntMatrix>,
}

impl GradedBlock {
    pub fn block_label(&self) -> VertexSet {
        self.block
    }

    /// Largest degree carrying a generator; at least 0 since ∅ is always a
    /// simplex.
    pub fn top_degree(&self) -> usize {
        self.gens_by_degree.len() - 1
    }

    pub fn generators(&self, degree: usize) -> &[KoszulGenerator] {
        self.gens_by_degree
            .get(degree)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn generator_count(&self, degree: usize) -> usize {
        self.generators(degree).len()
    }

    pub fn total_generator_count(&self) -> usize {
        self.gens_by_degree.iter().map(Vec::len).sum()
    }

    /// Position of `simplex` among the degree-`|simplex|` generators.
    pub fn index_of(&self, simplex: VertexSet) -> Option<usize> {
        let gens = self.generators(simplex.len());
        gens.binary_search_by_key(&simplex, |g| g.simplex()).ok()
    }

    /// The differential out of degree `d`, sized `count(d+1) x count(d)`;
    /// zero-shaped for degrees beyond the top.
    pub fn differential(&self, degree: usize) -> IntMatrix {
        match self.diffs.get(degree) {
            Some(m) => m.clone(),
            None => IntMatrix::zero(0, self.generator_count(degree)),
        }
    }

    /// JSON dump of generators and differential triples, for golden tests
    /// and debugging.
    pub fn debug_json(&self) -> serde_json::Value {
        let degrees: Vec<serde_json::Value> = self
            .gens_by_degree
            .iter()
            .enumerate()
            .map(|(d, gens)| {
                serde_json::json!({
                    "degree": d,
                    "simplices": gens.iter().map(|g| g.simplex().vertices()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let differentials: Vec<serde_json::Value> = self
            .diffs
            .iter()
            .enumerate()
            .map(|(d, m)| {
                serde_json::json!({
                    "degree": d,
                    "rows": m.rows(),
                    "cols": m.cols(),
                    "entries": m.triples_i64(),
                })
            })
            .collect();
        serde_json::json!({
            "block": self.block.vertices(),
            "degrees": degrees,
            "differentials": differentials,
        })
    }
}

/// Builds the block of `scope`, which must be a subset of the ground set.
pub fn block(complex: &Complex, scope: VertexSet) -> GradedBlock {
    assert!(
        scope.is_subset_of(complex.ground_set()),
        "block scope {scope} exceeds the ground set"
    );
    let simplices = complex.simplices_within(scope);
    let top = simplices.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut gens_by_degree: Vec<Vec<KoszulGenerator>> = vec![Vec::new(); top + 1];
    for simplex in simplices {
        gens_by_degree[simplex.len()].push(KoszulGenerator::new(scope, simplex));
    }
    let mut diffs = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let rows = gens_by_degree.get(d + 1).map(Vec::len).unwrap_or(0);
        let cols = gens_by_degree[d].len();
        let mut triples: Vec<(usize, usize, i64)> = Vec::new();
        for (col, generator) in gens_by_degree[d].iter().enumerate() {
            for vertex in scope.difference(generator.simplex()).iter() {
                let inserted = generator.simplex().with(vertex);
                if !complex.contains(inserted) {
                    continue;
                }
                let row = gens_by_degree[d + 1]
                    .binary_search_by_key(&inserted, |g| g.simplex())
                    .expect("complexes are closed under faces");
                let sign = sign_of_insertion(generator.simplex(), vertex)
                    .expect("inserted vertex is outside the simplex");
                triples.push((row, col, sign));
            }
        }
        diffs.push(IntMatrix::from_i64_triples(rows, cols, triples));
    }
    GradedBlock {
        block: scope,
        gens_by_degree,
        diffs,
    }
}

/// The direct sum of blocks over every subset of the ground set.
///
/// Blocks are constructed on demand and cached; the cache hands out shared
/// handles so concurrent readers never copy a block.
pub struct TotalComplex {
    complex: Complex,
    cache: RwLock<HashMap<VertexSet, Arc<GradedBlock>>>,
}

impl TotalComplex {
    pub fn new(complex: Complex) -> Self {
        TotalComplex {
            complex,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    /// All subsets of the ground set in ascending mask order.
    pub fn subsets(&self) -> impl Iterator<Item = VertexSet> {
        let full = self.complex.ground_set().mask();
        (0..=full).map(VertexSet::from_mask)
    }

    pub fn block(&self, scope: VertexSet) -> Arc<GradedBlock> {
        if let Some(found) = self.cache.read().get(&scope) {
            return Arc::clone(found);
        }
        let built = Arc::new(block(&self.complex, scope));
        let mut cache = self.cache.write();
        Arc::clone(cache.entry(scope).or_insert(built))
    }

    /// Generators summed over every block; one pair `(I, σ)` per `σ ⊆ I`.
    pub fn total_generator_count(&self) -> usize {
        self.subsets()
            .map(|scope| self.block(scope).total_generator_count())
            .sum()
    }
}

/// Convenience constructor mirroring [`TotalComplex::new`].
pub fn total_complex(complex: &Complex) -> TotalComplex {
    TotalComplex::new(complex.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::polygon_boundary;

    fn vs<I: IntoIterator<Item = usize>>(vertices: I) -> VertexSet {
        VertexSet::from_vertices(vertices)
    }

    #[test]
    fn insertion_signs() {
        assert_eq!(sign_of_insertion(vs([1]), 2).unwrap(), -1);
        assert_eq!(sign_of_insertion(vs([2]), 1).unwrap(), 1);
        assert_eq!(sign_of_insertion(VertexSet::EMPTY, 4).unwrap(), 1);
        assert_eq!(sign_of_insertion(vs([1, 3]), 4).unwrap(), 1);
        assert_eq!(sign_of_insertion(vs([1, 3]), 2).unwrap(), -1);
        assert!(matches!(
            sign_of_insertion(vs([1, 3]), 3),
            Err(Error::InvalidInsertion { vertex: 3, .. })
        ));
    }

    #[test]
    fn pentagon_top_block_differentials() {
        let c = polygon_boundary(5).unwrap();
        let b = block(&c, VertexSet::full(5));
        assert_eq!(b.top_degree(), 2);
        assert_eq!(b.generator_count(0), 1);
        assert_eq!(b.generator_count(1), 5);
        assert_eq!(b.generator_count(2), 5);
        assert_eq!(b.total_generator_count(), 11);

        // Degree 0 -> 1: the empty simplex hits every vertex with sign +1.
        let d0 = b.differential(0);
        for row in 0..5 {
            assert_eq!(d0.get_i64(row, 0), 1);
        }

        // Degree 1 -> 2 matches the edge coboundaries of the cycle.
        let d1 = b.differential(1);
        let edge = |i, j| b.index_of(vs([i, j])).unwrap();
        let vertex = |i| {
            b.generators(1)
                .iter()
                .position(|g| g.simplex() == vs([i]))
                .unwrap()
        };
        assert_eq!(d1.get_i64(edge(1, 2), vertex(1)), -1);
        assert_eq!(d1.get_i64(edge(1, 5), vertex(1)), -1);
        assert_eq!(d1.get_i64(edge(1, 2), vertex(2)), 1);
        assert_eq!(d1.get_i64(edge(2, 3), vertex(2)), -1);
        assert_eq!(d1.get_i64(edge(4, 5), vertex(5)), 1);
        assert_eq!(d1.get_i64(edge(1, 5), vertex(5)), 1);
        assert_eq!(d1.get_i64(edge(2, 3), vertex(1)), 0);
    }

    #[test]
    fn differentials_compose_to_zero() {
        let c = polygon_boundary(5).unwrap();
        for scope in [vs([1, 2, 4]), vs([1, 2, 3]), VertexSet::full(5)] {
            let b = block(&c, scope);
            for d in 0..b.top_degree() {
                let squared = b.differential(d + 1).mul(&b.differential(d));
                assert!(squared.is_zero(), "d² != 0 in block {scope} degree {d}");
            }
        }
    }

    #[test]
    fn empty_scope_block_is_the_unit_block() {
        let c = polygon_boundary(5).unwrap();
        let b = block(&c, VertexSet::EMPTY);
        assert_eq!(b.top_degree(), 0);
        assert_eq!(b.generator_count(0), 1);
        assert_eq!(b.differential(0).rows(), 0);
    }

    #[test]
    fn ghost_scope_block_has_constant_generator_only() {
        let c = Complex::from_facets(3, [vs([1, 2])]).unwrap();
        let b = block(&c, vs([3]));
        assert_eq!(b.total_generator_count(), 1);
        assert_eq!(b.generators(0)[0].simplex(), VertexSet::EMPTY);
    }

    #[test]
    fn triangle_total_generator_count() {
        // Oracle: direct enumeration of pairs (I, σ) with σ ⊆ I and σ a simplex.
        let c = polygon_boundary(3).unwrap();
        let mut oracle = 0usize;
        for mask in 0..(1u64 << 3) {
            let scope = VertexSet::from_mask(mask);
            oracle += c
                .all_simplices()
                .iter()
                .filter(|s| s.is_subset_of(scope))
                .count();
        }
        assert_eq!(oracle, 26);
        let total = total_complex(&c);
        assert_eq!(total.total_generator_count(), 26);
    }

    #[test]
    fn block_agrees_with_block_of_full_subcomplex() {
        let c = polygon_boundary(5).unwrap();
        let scope = vs([1, 2, 4]);
        let direct = block(&c, scope);
        let restricted = block(&c.full_subcomplex(scope), scope);
        assert_eq!(direct, restricted);
    }

    #[test]
    fn generators_sorted_by_simplex_mask() {
        let c = polygon_boundary(5).unwrap();
        let b = block(&c, VertexSet::full(5));
        for d in 0..=b.top_degree() {
            let gens = b.generators(d);
            for pair in gens.windows(2) {
                assert!(pair[0].simplex() < pair[1].simplex());
            }
        }
    }

    #[test]
    fn debug_json_golden() {
        let c = polygon_boundary(5).unwrap();
        let b = block(&c, vs([1, 2, 4]));
        let dump = serde_json::to_string(&b.debug_json()).unwrap();
        let expected = concat!(
            r#"{"block":[1,2,4],"#,
            r#""degrees":[{"degree":0,"simplices":[[]]},"#,
            r#"{"degree":1,"simplices":[[1],[2],[4]]},"#,
            r#"{"degree":2,"simplices":[[1,2]]}],"#,
            r#""differentials":[{"cols":1,"degree":0,"entries":[[0,0,1],[1,0,1],[2,0,1]],"rows":3},"#,
            r#"{"cols":3,"degree":1,"entries":[[0,0,-1],[0,1,1]],"rows":1},"#,
            r#"{"cols":1,"degree":2,"entries":[],"rows":0}]}"#
        );
        assert_eq!(dump, expected);
    }

    #[test]
    fn total_complex_caches_blocks() {
        let c = polygon_boundary(4).unwrap();
        let total = total_complex(&c);
        let first = total.block(vs([1, 3]));
        let second = total.block(vs([1, 3]));
        assert!(Arc::ptr_eq(&first, &second));
    }
}
