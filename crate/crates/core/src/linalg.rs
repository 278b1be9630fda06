//! Exact integer linear algebra over arbitrary-precision integers: sparse
//! matrices, Smith normal form with invertible change of basis, determinants,
//! and the cohomology of a graded block together with coordinates for
//! arbitrary cocycles.
//!
//! No floating point is used anywhere; every rank, torsion coefficient and
//! projection is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::koszul::{block, GradedBlock};
use crate::simplicial::{Complex, VertexSet};

/// Exact integer scalar used throughout the crate.
pub type Int = BigInt;

pub(crate) fn int(value: i64) -> Int {
    Int::from(value)
}

/// Renders an integer as a JSON number when it fits in `i64`, falling back to
/// a decimal string for anything larger.
pub fn int_to_json(value: &Int) -> serde_json::Value {
    match value.to_i64() {
        Some(small) => serde_json::json!(small),
        None => serde_json::json!(value.to_string()),
    }
}

/// A sparse integer matrix stored as sorted `(row, col, value)` triples with
/// no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Int)>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, Int::one())).collect(),
        }
    }

    /// Builds a matrix from triples; duplicates are summed, zeros dropped.
    pub fn from_triples<I>(rows: usize, cols: usize, triples: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Int)>,
    {
        let mut merged: BTreeMap<(usize, usize), Int> = BTreeMap::new();
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "triple ({r},{c}) out of bounds");
            *merged.entry((r, c)).or_insert_with(Int::zero) += v;
        }
        IntMatrix {
            rows,
            cols,
            entries: merged
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((r, c), v)| (r, c, v))
                .collect(),
        }
    }

    pub fn from_i64_triples<I>(rows: usize, cols: usize, triples: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        IntMatrix::from_triples(
            rows,
            cols,
            triples.into_iter().map(|(r, c, v)| (r, c, int(v))),
        )
    }

    /// Builds a matrix from dense rows; usable in tests and small fixtures.
    pub fn from_rows(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map(Vec::len).unwrap_or(0);
        let triples = data.iter().enumerate().flat_map(|(r, row)| {
            assert_eq!(row.len(), cols, "ragged rows");
            row.iter().enumerate().map(move |(c, &v)| (r, c, v))
        });
        IntMatrix::from_i64_triples(rows, cols, triples.collect::<Vec<_>>())
    }

    pub fn from_dense(rows: usize, cols: usize, data: Vec<Vec<Int>>) -> Self {
        assert_eq!(data.len(), rows);
        let triples = data.into_iter().enumerate().flat_map(|(r, row)| {
            assert_eq!(row.len(), cols, "ragged rows");
            row.into_iter()
                .enumerate()
                .map(move |(c, v)| (r, c, v))
                .collect::<Vec<_>>()
        });
        IntMatrix::from_triples(rows, cols, triples)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn triples(&self) -> &[(usize, usize, Int)] {
        &self.entries
    }

    /// Triples with `i64` values, for serialization of small matrices.
    pub fn triples_i64(&self) -> Vec<(usize, usize, i64)> {
        self.entries
            .iter()
            .map(|(r, c, v)| (*r, *c, v.to_i64().expect("entry exceeds i64")))
            .collect()
    }

    pub fn get(&self, row: usize, col: usize) -> Int {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        match self
            .entries
            .binary_search_by_key(&(row, col), |(r, c, _)| (*r, *c))
        {
            Ok(pos) => self.entries[pos].2.clone(),
            Err(_) => Int::zero(),
        }
    }

    pub fn get_i64(&self, row: usize, col: usize) -> i64 {
        self.get(row, col).to_i64().expect("entry exceeds i64")
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut dense = vec![vec![Int::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            dense[*r][*c] = v.clone();
        }
        dense
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_triples(
            self.cols,
            self.rows,
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())),
        )
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut rows_of_other: Vec<Vec<(usize, &Int)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in &other.entries {
            rows_of_other[*r].push((*c, v));
        }
        let mut acc: BTreeMap<(usize, usize), Int> = BTreeMap::new();
        for (r, k, a) in &self.entries {
            for (c, b) in &rows_of_other[*k] {
                *acc.entry((*r, *c)).or_insert_with(Int::zero) += a * *b;
            }
        }
        IntMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((r, c), v)| (r, c, v))
                .collect(),
        }
    }

    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(
            x.len(),
            self.cols,
            "dimension mismatch in matrix-vector product"
        );
        let mut result = vec![Int::zero(); self.rows];
        for (r, c, v) in &self.entries {
            result[*r] += v * &x[*c];
        }
        result
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination. The matrix must
/// be square; the determinant of the empty matrix is 1.
pub fn determinant(a: &IntMatrix) -> Int {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return Int::one();
    }
    let mut w = a.to_dense();
    let mut sign = Int::one();
    let mut previous = Int::one();
    for k in 0..n - 1 {
        if w[k][k].is_zero() {
            match (k + 1..n).find(|&i| !w[i][k].is_zero()) {
                Some(i) => {
                    w.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let numerator = &w[i][j] * &w[k][k] - &w[i][k] * &w[k][j];
                w[i][j] = numerator / &previous;
            }
            w[i][k] = Int::zero();
        }
        previous = w[k][k].clone();
    }
    sign * w[n - 1][n - 1].clone()
}

/// Smith normal form `U * A * V = D` with unimodular `U`, `V`, their inverses,
/// and a nonnegative diagonal forming a divisibility chain.
pub struct SNFResult {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    d: IntMatrix,
    diagonal: Vec<Int>,
}

impl SNFResult {
    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    /// Diagonal of `D`, length `min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> &[Int] {
        &self.diagonal
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Reduction {
    rows: usize,
    cols: usize,
    w: Vec<Vec<Int>>,
    u: Vec<Vec<Int>>,
    ui: Vec<Vec<Int>>,
    v: Vec<Vec<Int>>,
    vi: Vec<Vec<Int>>,
}

fn dense_identity(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

impl Reduction {
    fn new(a: &IntMatrix) -> Self {
        Reduction {
            rows: a.rows(),
            cols: a.cols(),
            w: a.to_dense(),
            u: dense_identity(a.rows()),
            ui: dense_identity(a.rows()),
            v: dense_identity(a.cols()),
            vi: dense_identity(a.cols()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.w.swap(a, b);
        self.u.swap(a, b);
        for row in &mut self.ui {
            row.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.w {
            row.swap(a, b);
        }
        for row in &mut self.v {
            row.swap(a, b);
        }
        self.vi.swap(a, b);
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.w[i] {
            *x = -std::mem::take(x);
        }
        for x in &mut self.u[i] {
            *x = -std::mem::take(x);
        }
        for row in &mut self.ui {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }

    /// `row_dst += q * row_src` on the working matrix and `U`; `U⁻¹` absorbs
    /// the inverse column operation.
    fn add_row(&mut self, dst: usize, src: usize, q: &Int) {
        for k in 0..self.cols {
            let delta = q * &self.w[src][k];
            self.w[dst][k] += delta;
        }
        for k in 0..self.rows {
            let delta = q * &self.u[src][k];
            self.u[dst][k] += delta;
        }
        for r in 0..self.rows {
            let delta = q * &self.ui[r][dst];
            self.ui[r][src] -= delta;
        }
    }

    /// `col_dst += q * col_src` on the working matrix and `V`; `V⁻¹` absorbs
    /// the inverse row operation.
    fn add_col(&mut self, dst: usize, src: usize, q: &Int) {
        for r in 0..self.rows {
            let delta = q * &self.w[r][src];
            self.w[r][dst] += delta;
        }
        for r in 0..self.cols {
            let delta = q * &self.v[r][src];
            self.v[r][dst] += delta;
        }
        for k in 0..self.cols {
            let delta = q * &self.vi[dst][k];
            self.vi[src][k] -= delta;
        }
    }

    /// Smallest-magnitude nonzero entry of the trailing submatrix, ties
    /// broken by scan order.
    fn find_pivot(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = Int::zero();
        for i in from..self.rows {
            for j in from..self.cols {
                let value = &self.w[i][j];
                if value.is_zero() {
                    continue;
                }
                let magnitude = value.abs();
                if best.is_none() || magnitude < best_abs {
                    best = Some((i, j));
                    best_abs = magnitude;
                }
            }
        }
        best
    }
}

/// Computes the Smith normal form of `a` with min-magnitude pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SNFResult {
    let mut red = Reduction::new(a);
    let size = red.rows.min(red.cols);
    let mut k = 0;
    while k < size {
        let Some((pi, pj)) = red.find_pivot(k) else {
            break;
        };
        red.swap_rows(k, pi);
        red.swap_cols(k, pj);
        if red.w[k][k].is_negative() {
            red.negate_row(k);
        }
        let pivot = red.w[k][k].clone();

        let mut dirty = false;
        for i in k + 1..red.rows {
            if red.w[i][k].is_zero() {
                continue;
            }
            let q = red.w[i][k].div_floor(&pivot);
            if !q.is_zero() {
                red.add_row(i, k, &-q);
            }
            if !red.w[i][k].is_zero() {
                dirty = true;
            }
        }
        for j in k + 1..red.cols {
            if red.w[k][j].is_zero() {
                continue;
            }
            let q = red.w[k][j].div_floor(&pivot);
            if !q.is_zero() {
                red.add_col(j, k, &-q);
            }
            if !red.w[k][j].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }

        // Pivot is alone in its row and column; pull in any entry it does
        // not divide so the diagonal forms a divisibility chain.
        let mut merged = false;
        'scan: for i in k + 1..red.rows {
            for j in k + 1..red.cols {
                if !red.w[i][j].mod_floor(&pivot).is_zero() {
                    red.add_row(k, i, &Int::one());
                    merged = true;
                    break 'scan;
                }
            }
        }
        if merged {
            continue;
        }
        k += 1;
    }

    let diagonal: Vec<Int> = (0..size).map(|i| red.w[i][i].clone()).collect();
    SNFResult {
        u: IntMatrix::from_dense(red.rows, red.rows, red.u),
        u_inv: IntMatrix::from_dense(red.rows, red.rows, red.ui),
        v: IntMatrix::from_dense(red.cols, red.cols, red.v),
        v_inv: IntMatrix::from_dense(red.cols, red.cols, red.vi),
        d: IntMatrix::from_dense(red.rows, red.cols, red.w),
        diagonal,
    }
}

/// Rank of an integer matrix.
pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// An element of the cohomology of one block in one degree, written in the
/// coordinates of a [`CohomologyBasis`]: an integer vector over the free
/// generators plus residues over the torsion generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub block: VertexSet,
    pub degree: usize,
    pub free: Vec<Int>,
    pub torsion: Vec<Int>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "block": self.block.vertices(),
            "degree": self.degree,
            "free": self.free.iter().map(int_to_json).collect::<Vec<_>>(),
            "torsion": self.torsion.iter().map(int_to_json).collect::<Vec<_>>(),
        })
    }
}

/// The cohomology of one block in one degree: ranks, torsion coefficients,
/// chosen representative cocycles, and an exact projection sending any
/// cocycle to its coordinates.
///
/// Representatives are listed free generators first, then torsion
/// generators in the order of their coefficients; each is sign-normalized so
/// its first nonzero entry is positive. `project` is a retraction: projecting
/// a representative returns the corresponding unit coordinate vector, and
/// coboundaries project to zero.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    block: VertexSet,
    degree: usize,
    ambient: usize,
    free_rank: usize,
    torsion: Vec<Int>,
    reps: Vec<Vec<Int>>,
    coboundary_test: IntMatrix,
    kernel_rows: IntMatrix,
    free_rows: IntMatrix,
    torsion_rows: IntMatrix,
}

impl CohomologyBasis {
    pub fn block(&self) -> VertexSet {
        self.block
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of generators of the block in this degree.
    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Torsion coefficients `d_1 | d_2 | …`, each greater than 1.
    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Representative cocycles, free generators first, then torsion.
    pub fn representatives(&self) -> &[Vec<Int>] {
        &self.reps
    }

    pub fn is_cocycle(&self, x: &[Int]) -> bool {
        x.len() == self.ambient && self.coboundary_test.mul_vec(x).iter().all(Zero::is_zero)
    }

    /// Coordinates of a cocycle; rejects vectors of the wrong length or with
    /// a nonzero coboundary.
    pub fn project(&self, x: &[Int]) -> Result<CohomologyClass> {
        if x.len() != self.ambient {
            return Err(Error::Mismatch(format!(
                "expected a vector of length {}, got {}",
                self.ambient,
                x.len()
            )));
        }
        if !self.is_cocycle(x) {
            return Err(Error::NotACocycle {
                block: self.block,
                degree: self.degree,
            });
        }
        let kernel_coords = self.kernel_rows.mul_vec(x);
        let free = self.free_rows.mul_vec(&kernel_coords);
        let torsion = self
            .torsion_rows
            .mul_vec(&kernel_coords)
            .into_iter()
            .zip(&self.torsion)
            .map(|(value, modulus)| value.mod_floor(modulus))
            .collect();
        Ok(CohomologyClass {
            block: self.block,
            degree: self.degree,
            free,
            torsion,
        })
    }

    /// The cocycle `Σ free_i · rep_i + Σ torsion_j · torsion_rep_j`.
    pub fn representative(&self, class: &CohomologyClass) -> Result<Vec<Int>> {
        if class.block != self.block
            || class.degree != self.degree
            || class.free.len() != self.free_rank
            || class.torsion.len() != self.torsion.len()
        {
            return Err(Error::Mismatch(
                "class coordinates do not match this basis".to_string(),
            ));
        }
        let mut rep = vec![Int::zero(); self.ambient];
        for (coefficient, basis_rep) in class.free.iter().chain(&class.torsion).zip(&self.reps) {
            for (slot, value) in rep.iter_mut().zip(basis_rep) {
                *slot += coefficient * value;
            }
        }
        Ok(rep)
    }

    pub fn zero_class(&self) -> CohomologyClass {
        CohomologyClass {
            block: self.block,
            degree: self.degree,
            free: vec![Int::zero(); self.free_rank],
            torsion: vec![Int::zero(); self.torsion.len()],
        }
    }

    /// Unit coordinate classes, one per generator, free first.
    pub fn basis_classes(&self) -> Vec<CohomologyClass> {
        let total = self.free_rank + self.torsion.len();
        (0..total)
            .map(|i| {
                let mut class = self.zero_class();
                if i < self.free_rank {
                    class.free[i] = Int::one();
                } else {
                    class.torsion[i - self.free_rank] = Int::one();
                }
                class
            })
            .collect()
    }

    /// `-class`, with torsion coordinates folded back into range.
    pub fn negate_class(&self, class: &CohomologyClass) -> CohomologyClass {
        CohomologyClass {
            block: class.block,
            degree: class.degree,
            free: class.free.iter().map(|v| -v).collect(),
            torsion: class
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(value, modulus)| (-value).mod_floor(modulus))
                .collect(),
        }
    }

    /// Replaces the representatives of a torsion-free basis with caller
    /// supplied cocycles that span the same lattice, rewriting the projection
    /// so the new representatives project to unit vectors. Fails unless the
    /// candidates are cocycles forming a basis (unimodular coordinate
    /// matrix).
    pub fn rebase(&self, preferred: &[Vec<Int>]) -> Result<CohomologyBasis> {
        if !self.torsion.is_empty() {
            return Err(Error::Mismatch(
                "rebase requires a torsion-free basis".to_string(),
            ));
        }
        if preferred.len() != self.free_rank {
            return Err(Error::Mismatch(format!(
                "expected {} candidate representatives, got {}",
                self.free_rank,
                preferred.len()
            )));
        }
        let mut coordinate_columns = Vec::with_capacity(preferred.len());
        for candidate in preferred {
            coordinate_columns.push(self.project(candidate)?.free);
        }
        let p = IntMatrix::from_dense(
            self.free_rank,
            self.free_rank,
            (0..self.free_rank)
                .map(|r| {
                    (0..self.free_rank)
                        .map(|c| coordinate_columns[c][r].clone())
                        .collect()
                })
                .collect(),
        );
        if determinant(&p).abs() != Int::one() {
            return Err(Error::Mismatch(
                "candidate representatives do not form a basis".to_string(),
            ));
        }
        let snf = smith_normal_form(&p);
        let p_inv = snf.v().mul(snf.u());
        Ok(CohomologyBasis {
            block: self.block,
            degree: self.degree,
            ambient: self.ambient,
            free_rank: self.free_rank,
            torsion: Vec::new(),
            reps: preferred.to_vec(),
            coboundary_test: self.coboundary_test.clone(),
            kernel_rows: self.kernel_rows.clone(),
            free_rows: p_inv.mul(&self.free_rows),
            torsion_rows: self.torsion_rows.clone(),
        })
    }
}

/// Computes the cohomology of `graded` in the given degree: the kernel of the
/// outgoing differential modulo the image of the incoming one.
pub fn cohomology(graded: &GradedBlock, degree: usize) -> CohomologyBasis {
    let ambient = graded.generator_count(degree);
    let outgoing = graded.differential(degree);
    let snf_out = smith_normal_form(&outgoing);
    let rank_out = snf_out.rank();
    let kernel_rank = ambient - rank_out;

    // The kernel lattice is spanned by the trailing columns of V; the
    // matching rows of V⁻¹ read off kernel coordinates of any cocycle.
    let v = snf_out.v().to_dense();
    let v_inv = snf_out.v_inv().to_dense();
    let kernel_basis: Vec<Vec<Int>> = (0..ambient)
        .map(|r| {
            (0..kernel_rank)
                .map(|c| v[r][rank_out + c].clone())
                .collect()
        })
        .collect();
    let kernel_rows = IntMatrix::from_dense(
        kernel_rank,
        ambient,
        (0..kernel_rank)
            .map(|r| v_inv[rank_out + r].clone())
            .collect(),
    );

    let incoming = if degree == 0 {
        IntMatrix::zero(ambient, 0)
    } else {
        graded.differential(degree - 1)
    };
    let image_in_kernel = kernel_rows.mul(&incoming);
    let snf_in = smith_normal_form(&image_in_kernel);
    let diagonal = snf_in.diagonal();
    let image_rank = snf_in.rank();
    let first_torsion = (0..image_rank)
        .find(|&i| diagonal[i] > Int::one())
        .unwrap_or(image_rank);
    let free_rank = kernel_rank - image_rank;
    let torsion: Vec<Int> = diagonal[first_torsion..image_rank].to_vec();

    let u = snf_in.u().to_dense();
    let u_inv = snf_in.u_inv().to_dense();
    let generator_slots: Vec<usize> = (image_rank..kernel_rank)
        .chain(first_torsion..image_rank)
        .collect();

    let mut reps = Vec::with_capacity(generator_slots.len());
    let mut projection_rows: Vec<Vec<Int>> = Vec::with_capacity(generator_slots.len());
    for &slot in &generator_slots {
        let kernel_coords: Vec<Int> = (0..kernel_rank).map(|r| u_inv[r][slot].clone()).collect();
        let mut rep = vec![Int::zero(); ambient];
        for (r, row) in kernel_basis.iter().enumerate() {
            for (value, coord) in row.iter().zip(&kernel_coords) {
                rep[r] += value * coord;
            }
        }
        let mut row = u[slot].clone();
        let flip = rep
            .iter()
            .find(|value| !value.is_zero())
            .map(Signed::is_negative)
            .unwrap_or(false);
        if flip {
            for value in &mut rep {
                *value = -std::mem::take(value);
            }
            for value in &mut row {
                *value = -std::mem::take(value);
            }
        }
        reps.push(rep);
        projection_rows.push(row);
    }

    let free_rows = IntMatrix::from_dense(
        free_rank,
        kernel_rank,
        projection_rows[..free_rank].to_vec(),
    );
    let torsion_rows = IntMatrix::from_dense(
        torsion.len(),
        kernel_rank,
        projection_rows[free_rank..].to_vec(),
    );

    CohomologyBasis {
        block: graded.block_label(),
        degree,
        ambient,
        free_rank,
        torsion,
        reps,
        coboundary_test: outgoing,
        kernel_rows,
        free_rows,
        torsion_rows,
    }
}

/// Ranks and torsion in one degree, torsion coefficients sorted ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeSummary {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl DegreeSummary {
    fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Cohomology ranks and torsion per degree, summed over blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiProfile {
    degrees: Vec<DegreeSummary>,
}

impl BettiProfile {
    pub fn top_degree(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }

    pub fn degrees(&self) -> &[DegreeSummary] {
        &self.degrees
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.degrees.get(degree).map(|d| d.rank).unwrap_or(0)
    }

    pub fn torsion(&self, degree: usize) -> &[Int] {
        self.degrees
            .get(degree)
            .map(|d| d.torsion.as_slice())
            .unwrap_or(&[])
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }

    pub fn is_trivial(&self) -> bool {
        self.degrees.iter().all(DegreeSummary::is_trivial)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(degree, summary)| {
                serde_json::json!({
                    "degree": degree,
                    "rank": summary.rank,
                    "torsion": summary.torsion.iter().map(int_to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!(entries)
    }
}

fn profile_of_block(graded: &GradedBlock, top: usize) -> Vec<DegreeSummary> {
    let mut summary = vec![DegreeSummary::default(); top + 1];
    for (degree, slot) in summary.iter_mut().enumerate().take(graded.top_degree() + 1) {
        let basis = cohomology(graded, degree);
        slot.rank += basis.free_rank();
        slot.torsion.extend(basis.torsion().iter().cloned());
    }
    summary
}

fn merge_profiles(mut left: Vec<DegreeSummary>, right: Vec<DegreeSummary>) -> Vec<DegreeSummary> {
    for (into, from) in left.iter_mut().zip(right) {
        into.rank += from.rank;
        into.torsion.extend(from.torsion);
    }
    left
}

/// Total cohomology of the real moment-angle complex of `complex`: the sum of
/// the block profiles over all `2^m` subsets of the ground set.
pub fn betti_profile(complex: &Complex) -> BettiProfile {
    let top = complex.max_simplex_size();
    let subset_count = 1u64 << complex.vertex_count();
    let empty = || vec![DegreeSummary::default(); top + 1];
    let mut degrees = (0..subset_count)
        .into_par_iter()
        .map(|mask| profile_of_block(&block(complex, VertexSet::from_mask(mask)), top))
        .reduce(empty, merge_profiles);
    for summary in &mut degrees {
        summary.torsion.sort();
    }
    BettiProfile { degrees }
}

/// Per-block contribution to the profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSummary {
    pub block: VertexSet,
    pub profile: BettiProfile,
}

/// The blocks with nonzero cohomology, in ascending mask order.
pub fn block_profiles(complex: &Complex) -> Vec<BlockSummary> {
    let subset_count = 1u64 << complex.vertex_count();
    let mut summaries: Vec<BlockSummary> = (0..subset_count)
        .into_par_iter()
        .filter_map(|mask| {
            let scope = VertexSet::from_mask(mask);
            let graded = block(complex, scope);
            let mut degrees = profile_of_block(&graded, graded.top_degree());
            for summary in &mut degrees {
                summary.torsion.sort();
            }
            let profile = BettiProfile { degrees };
            if profile.is_trivial() {
                None
            } else {
                Some(BlockSummary {
                    block: scope,
                    profile,
                })
            }
        })
        .collect();
    summaries.sort_by_key(|summary| summary.block);
    summaries
}
