//! Shared test support: an independent reduced simplicial cohomology oracle
//! and a seeded random complex generator.
//!
//! The oracle deliberately shares nothing with the library beyond the facet
//! lists it is handed: faces are sorted vertex vectors, coboundaries use the
//! alternating-sign convention on ordered simplices, and ranks and torsion
//! come from a plain integer diagonalization over `i128`.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use rmac_core::koszul::KoszulGenerator;
use rmac_core::{Cochain, Complex, Int, RingContext, VertexSet};

/// All faces spanned by `facets`, grouped by dimension: `grouped[d]` holds
/// the `d`-dimensional faces as sorted vertex vectors, in lexicographic
/// order. The empty face is left implicit.
pub fn face_lattice(facets: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut faces: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    for facet in facets {
        let mut sorted = facet.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let k = sorted.len();
        for mask in 1u64..(1 << k) {
            let face: Vec<usize> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| sorted[i])
                .collect();
            faces.insert(face);
        }
    }
    let top = faces.iter().map(Vec::len).max().unwrap_or(0);
    let mut grouped = vec![Vec::new(); top];
    for face in faces {
        grouped[face.len() - 1].push(face);
    }
    grouped
}

fn cochain_dimension(grouped: &[Vec<Vec<usize>>], k: isize) -> usize {
    if k == -1 {
        1
    } else if k >= 0 && (k as usize) < grouped.len() {
        grouped[k as usize].len()
    } else {
        0
    }
}

/// The coboundary matrix from `k`-cochains to `(k+1)`-cochains, with entry
/// `(τ, σ) = (-1)^i` when `σ` is `τ` with its `i`-th vertex removed. The
/// `k = -1` column is the augmentation (every vertex evaluates the empty
/// face with sign `+1`).
fn coboundary(grouped: &[Vec<Vec<usize>>], k: isize) -> Vec<Vec<i128>> {
    let rows = cochain_dimension(grouped, k + 1);
    let cols = cochain_dimension(grouped, k);
    let mut matrix = vec![vec![0i128; cols]; rows];
    if cols == 0 || rows == 0 {
        return matrix;
    }
    if k == -1 {
        for row in matrix.iter_mut() {
            row[0] = 1;
        }
        return matrix;
    }
    let sources = &grouped[k as usize];
    let targets = &grouped[(k + 1) as usize];
    for (r, target) in targets.iter().enumerate() {
        for i in 0..target.len() {
            let mut face = target.clone();
            face.remove(i);
            if let Ok(c) = sources.binary_search(&face) {
                matrix[r][c] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    matrix
}

/// Diagonalizes an integer matrix by row and column operations and returns
/// the nonzero diagonal entries (positive, in elimination order; not
/// necessarily a divisibility chain).
#[allow(clippy::needless_range_loop)] // symmetric row/column elimination reads best indexed
fn diagonalize(mut w: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = w.len();
    let cols = w.first().map(Vec::len).unwrap_or(0);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if w[i][j] != 0 && pivot.is_none_or(|(pi, pj)| w[i][j].abs() < w[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap(t, pi);
        for row in w.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w[i][t] != 0 {
                    let q = w[i][t].div_euclid(w[t][t]);
                    for j in t..cols {
                        w[i][j] -= q * w[t][j];
                    }
                    if w[i][t] != 0 {
                        w.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if w[t][j] != 0 {
                    let q = w[t][j].div_euclid(w[t][t]);
                    for i in t..rows {
                        let delta = q * w[i][t];
                        w[i][j] -= delta;
                    }
                    if w[t][j] != 0 {
                        for row in w.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        diagonal.push(w[t][t].abs());
        t += 1;
    }
    diagonal
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Normalizes a multiset of elementary divisors to the canonical invariant
/// factors greater than one, ascending.
fn invariant_factors(mut divisors: Vec<i128>) -> Vec<i128> {
    divisors.retain(|d| d.abs() > 1);
    for d in divisors.iter_mut() {
        *d = d.abs();
    }
    loop {
        let mut changed = false;
        for i in 0..divisors.len() {
            for j in i + 1..divisors.len() {
                if divisors[j] % divisors[i] != 0 {
                    let g = gcd(divisors[i], divisors[j]);
                    let l = divisors[i] / g * divisors[j];
                    divisors[i] = g;
                    divisors[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    divisors.retain(|d| *d > 1);
    divisors.sort_unstable();
    divisors
}

/// Reduced integral cohomology of the complex spanned by `facets` in reduced
/// degree `k >= -1`: the free rank and the invariant factors of the torsion
/// subgroup.
pub fn reduced_cohomology(facets: &[Vec<usize>], k: isize) -> (usize, Vec<i128>) {
    assert!(k >= -1, "reduced degree below -1");
    let grouped = face_lattice(facets);
    let dimension = cochain_dimension(&grouped, k);
    let outgoing_rank = diagonalize(coboundary(&grouped, k)).len();
    let incoming = if k == -1 {
        Vec::new()
    } else {
        diagonalize(coboundary(&grouped, k - 1))
    };
    let incoming_rank = incoming.len();
    let free = dimension - outgoing_rank - incoming_rank;
    (free, invariant_factors(incoming))
}

/// Facet lists of the full subcomplex on `subset`, as plain vertex vectors.
pub fn restrict_facets(facets: &[Vec<usize>], subset: &[usize]) -> Vec<Vec<usize>> {
    facets
        .iter()
        .map(|facet| {
            facet
                .iter()
                .copied()
                .filter(|v| subset.contains(v))
                .collect::<Vec<usize>>()
        })
        .filter(|facet| !facet.is_empty())
        .collect()
}

/// The facet list of a complex as sorted vertex vectors, the oracle's input
/// format.
pub fn facet_lists(complex: &Complex) -> Vec<Vec<usize>> {
    complex.facets().iter().map(|f| f.vertices()).collect()
}

/// The minimal 6-vertex triangulation of the real projective plane.
pub fn projective_plane() -> Complex {
    let facets = [
        [1, 2, 5],
        [1, 2, 6],
        [1, 3, 4],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 4, 6],
        [3, 5, 6],
        [4, 5, 6],
    ];
    Complex::from_facets(
        6,
        facets
            .iter()
            .map(|f| VertexSet::from_vertices(f.iter().copied())),
    )
    .expect("valid triangulation")
}

/// Picks a generator of the total complex from two raw seeds: a block scope
/// and a simplex of the complex within it.
pub fn pick_generator(complex: &Complex, scope_seed: u64, simplex_seed: u64) -> KoszulGenerator {
    let ground = complex.ground_set().mask();
    let scope = VertexSet::from_mask(scope_seed & ground);
    let choices = complex.simplices_within(scope);
    let simplex = choices[(simplex_seed % choices.len() as u64) as usize];
    KoszulGenerator::new(scope, simplex)
}

/// Embeds a generator as the corresponding unit cochain of its block.
pub fn unit_cochain(ctx: &RingContext, generator: &KoszulGenerator) -> Cochain {
    let graded = ctx.total().block(generator.block());
    let degree = generator.degree();
    let slot = graded
        .index_of(generator.simplex())
        .expect("generator simplex belongs to the complex");
    let mut cochain = Cochain::zero(generator.block(), degree, graded.generator_count(degree));
    cochain.coeffs[slot] = Int::from(1);
    cochain
}

pub fn add_cochains(a: &Cochain, b: &Cochain) -> Cochain {
    assert_eq!(a.block, b.block);
    assert_eq!(a.degree, b.degree);
    assert_eq!(a.coeffs.len(), b.coeffs.len());
    Cochain {
        block: a.block,
        degree: a.degree,
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
    }
}

pub fn negate_cochain(a: &Cochain) -> Cochain {
    Cochain {
        block: a.block,
        degree: a.degree,
        coeffs: a.coeffs.iter().map(|x| -x).collect(),
    }
}

/// A seeded random complex on at most `max_vertices` vertices. Ghost
/// vertices, singleton facets, and the empty complex all occur.
pub fn random_complex(rng: &mut ChaCha8Rng, max_vertices: usize) -> Complex {
    let m = rng.gen_range(1..=max_vertices);
    let facet_count = rng.gen_range(0..=6);
    let facets: Vec<VertexSet> = (0..facet_count)
        .map(|_| {
            let size = rng.gen_range(1..=m.min(4));
            let mut vertices: Vec<usize> = (1..=m).collect();
            vertices.shuffle(rng);
            vertices.truncate(size);
            VertexSet::from_vertices(vertices)
        })
        .collect();
    Complex::from_facets(m, facets).expect("random facets are valid")
}
