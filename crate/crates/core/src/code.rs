//! Orbit-ordered evaluation codes, dense linear algebra over a [`FieldCtx`],
//! block-shift checks and minimum distance.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aut::{AutError, Automorphism, Orbit};
use crate::curve::{KummerCurve, Point};
use crate::gf::{Fe, Field, FieldCtx, GfError};
use crate::rrspace::{rr_basis, MonomialBasis};

/// Default candidate budget for each distance strategy.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("no orbits selected")]
    EmptyOrbitSelection,
    #[error("t = {t} outside the open range ({lo}, {hi})")]
    TOutOfRange { t: i64, lo: i64, hi: i64 },
    #[error("point {0} appears in more than one selected orbit")]
    OverlappingOrbits(Point),
    #[error("selected point list starting at {0} is not a sigma-orbit")]
    NotAnOrbit(Point),
    #[error("vector of length {got} does not match total block length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("rank {rank} differs from t + 1 - g = {expected}")]
    RankMismatch { rank: usize, expected: usize },
    #[error("classification needs an exact minimum distance")]
    InexactDistance,
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("matrix text: {0}")]
    Parse(String),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Dense row-major matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// Rows must share one length; `cols` is used when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Fe>>, cols: usize) -> Self {
        let cols = rows.first().map_or(cols, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, f: &FieldCtx, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut out = Matrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                out.set(i, j, dot(f, self.row(i), other.row(j)));
            }
        }
        out
    }

    /// Reduced row echelon form with the zero rows dropped, plus pivot columns.
    pub fn rref(&self, f: &FieldCtx) -> (Matrix, Vec<usize>) {
        let mut rows = self.row_vecs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = f.inv(rows[r][col]).expect("pivot is nonzero");
            for v in rows[r].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[col].is_zero() {
                    continue;
                }
                let c = f.neg(row[col]);
                axpy(f, row, c, &pivot_row);
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        (Matrix::from_rows(rows, self.cols), pivots)
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        self.rref(f).1.len()
    }

    /// Rows span `{v : self * v = 0}`.
    pub fn nullspace(&self, f: &FieldCtx) -> Matrix {
        let (r, pivots) = self.rref(f);
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![Fe::ZERO; self.cols];
            v[free] = Fe::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Matrix::from_rows(basis, self.cols)
    }
}

fn dot(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `y += c * x`.
fn axpy(f: &FieldCtx, y: &mut [Fe], c: Fe, x: &[Fe]) {
    if c.is_zero() {
        return;
    }
    for (a, &b) in y.iter_mut().zip(x) {
        *a = f.add(*a, f.mul(c, b));
    }
}

fn weight(v: &[Fe]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}

/// Row space membership against a reduced echelon basis.
pub struct RowSpace<'a> {
    field: &'a FieldCtx,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl<'a> RowSpace<'a> {
    pub fn new(f: &'a FieldCtx, m: &Matrix) -> Self {
        let (basis, pivots) = m.rref(f);
        RowSpace { field: f, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            axpy(self.field, &mut v, self.field.neg(c), self.basis.row(i));
        }
        v.iter().all(|c| c.is_zero())
    }
}

/// Rotates every block right by one: `(c_0, .., c_{l-1}) -> (c_{l-1}, c_0, .., c_{l-2})`.
pub fn shift_operator(c: &[Fe], blocks: &[usize]) -> Result<Vec<Fe>, CodeError> {
    let total: usize = blocks.iter().sum();
    if total != c.len() {
        return Err(CodeError::LengthMismatch { expected: total, got: c.len() });
    }
    let mut out = Vec::with_capacity(c.len());
    let mut start = 0;
    for &l in blocks {
        if l > 0 {
            out.push(c[start + l - 1]);
            out.extend_from_slice(&c[start..start + l - 1]);
        }
        start += l;
    }
    Ok(out)
}

/// Whether the row space of `g` is closed under [`shift_operator`].
pub fn verify_shift_invariance(f: &FieldCtx, g: &Matrix, blocks: &[usize]) -> Result<bool, CodeError> {
    let space = RowSpace::new(f, g);
    for i in 0..g.rows() {
        if !space.contains(&shift_operator(g.row(i), blocks)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(m)` for equal blocks, `(m1,m2,..)` otherwise.
pub fn co_index(blocks: &[usize]) -> String {
    let set: BTreeSet<usize> = blocks.iter().copied().collect();
    if set.len() == 1 {
        return format!("{}", blocks[0]);
    }
    let parts: Vec<String> = blocks.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Enumeration,
    ColumnSearch,
    Certificate,
    Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub strategy: Strategy,
}

impl DistanceResult {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    acc
}

/// Number of projective codewords, `(Q^k - 1) / (Q - 1)`, saturating.
pub fn enumeration_cost(q: u64, k: usize) -> u64 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for _ in 0..k {
        total = total.saturating_add(term);
        term = term.saturating_mul(q as u128);
    }
    total.min(u64::MAX as u128) as u64
}

/// Candidate count of one column-search probe at weight `w`: `sum_{s=1}^{w} C(n, s)`.
pub fn column_search_cost(n: usize, w: usize) -> u64 {
    let total = (1..=w as u64).fold(0u128, |acc, s| acc.saturating_add(binomial(n as u64, s)));
    total.min(u64::MAX as u128) as u64
}

/// Exact minimum weight of the code spanned by the (independent) rows of `g`,
/// scanning one representative per projective point. Stops early once a
/// codeword of weight `floor` turns up. `None` if over budget.
pub fn distance_by_enumeration(f: &FieldCtx, g: &Matrix, floor: usize, budget: u64) -> Option<usize> {
    let k = g.rows();
    if k == 0 || enumeration_cost(f.order() as u64, k) > budget {
        return None;
    }
    let rows = g.row_vecs();
    // one task per (leading row, value of the next coefficient)
    let mut tasks: Vec<(usize, Option<u32>)> = Vec::new();
    for lead in 0..k {
        if lead + 1 < k {
            tasks.extend((0..f.order()).map(|v| (lead, Some(v))));
        } else {
            tasks.push((lead, None));
        }
    }
    let scan = |&(lead, second): &(usize, Option<u32>)| -> usize {
        let mut cw = rows[lead].clone();
        let mut free_from = lead + 1;
        if let Some(v) = second {
            let c = f.from_index(v).expect("in range");
            axpy(f, &mut cw, c, &rows[lead + 1]);
            free_from += 1;
        }
        let digits: Vec<usize> = (free_from..k).collect();
        odometer_min(f, &rows, cw, &digits, floor)
    };
    #[cfg(feature = "parallel")]
    let best = {
        use rayon::prelude::*;
        tasks.par_iter().map(scan).min()
    };
    #[cfg(not(feature = "parallel"))]
    let best = tasks.iter().map(scan).min();
    best
}

fn odometer_min(f: &FieldCtx, rows: &[Vec<Fe>], mut cw: Vec<Fe>, digits: &[usize], floor: usize) -> usize {
    let q = f.order();
    let mut vals = vec![0u32; digits.len()];
    let mut best = usize::MAX;
    loop {
        best = best.min(weight(&cw));
        if best <= floor {
            return best;
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return best;
            }
            let old = f.from_index(vals[pos]).expect("in range");
            let next = (vals[pos] + 1) % q;
            let new = f.from_index(next).expect("in range");
            axpy(f, &mut cw, f.sub(new, old), &rows[digits[pos]]);
            vals[pos] = next;
            if next != 0 {
                break;
            }
            pos += 1;
        }
    }
}

/// Whether some set of at most `w` columns (given as vectors) is linearly dependent.
pub fn has_dependent_columns(f: &FieldCtx, columns: &[Vec<Fe>], w: usize) -> bool {
    if w == 0 {
        return false;
    }
    let branch = |j0: usize| -> bool {
        let mut basis: Vec<(usize, Vec<Fe>)> = Vec::new();
        match reduce_against(f, &basis, &columns[j0]) {
            None => true,
            Some(v) if w > 1 => {
                basis.push(v);
                dfs_dependent(f, columns, &mut basis, j0 + 1, w)
            }
            Some(_) => false,
        }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..columns.len()).into_par_iter().any(branch)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..columns.len()).any(branch)
    }
}

/// Reduces `v` against an echelon basis; `None` if it lies in the span,
/// otherwise the normalized remainder with its pivot.
fn reduce_against(f: &FieldCtx, basis: &[(usize, Vec<Fe>)], v: &[Fe]) -> Option<(usize, Vec<Fe>)> {
    let mut v = v.to_vec();
    for (p, b) in basis {
        let c = v[*p];
        axpy(f, &mut v, f.neg(c), b);
    }
    let p = v.iter().position(|c| !c.is_zero())?;
    let inv = f.inv(v[p]).expect("nonzero");
    v.iter_mut().for_each(|c| *c = f.mul(*c, inv));
    Some((p, v))
}

fn dfs_dependent(f: &FieldCtx, columns: &[Vec<Fe>], basis: &mut Vec<(usize, Vec<Fe>)>, start: usize, w: usize) -> bool {
    for j in start..columns.len() {
        match reduce_against(f, basis, &columns[j]) {
            None => return true,
            Some(v) => {
                if basis.len() + 1 < w {
                    basis.push(v);
                    let found = dfs_dependent(f, columns, basis, j + 1, w);
                    basis.pop();
                    if found {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Narrows `lo <= d <= hi` using column dependencies of the parity-check
/// matrix `h`. Returns the final bounds.
pub fn distance_by_column_search(
    f: &FieldCtx,
    h: &Matrix,
    mut lo: usize,
    mut hi: usize,
    budget: u64,
) -> (usize, usize) {
    let n = h.cols();
    let columns: Vec<Vec<Fe>> = (0..n).map(|j| h.column(j)).collect();
    let mut spent = 0u64;
    while lo < hi {
        let cost_lo = column_search_cost(n, lo);
        let cost_hi = column_search_cost(n, hi - 1);
        let (w, cost) = if cost_lo <= cost_hi { (lo, cost_lo) } else { (hi - 1, cost_hi) };
        if spent.saturating_add(cost) > budget {
            break;
        }
        spent += cost;
        let dependent = has_dependent_columns(f, &columns, w);
        match (w == lo, dependent) {
            (true, true) => hi = lo,
            (true, false) => lo += 1,
            (false, true) => hi = w,
            (false, false) => lo = hi,
        }
    }
    (lo, hi)
}

/// Minimum distance of the code with generator `g` and parity check `h`,
/// given a proven lower bound. Tries enumeration, then column search.
pub fn minimum_distance(f: &FieldCtx, g: &Matrix, h: &Matrix, lower: usize, budget: u64) -> Result<DistanceResult, CodeError> {
    let k = g.rows();
    if k == 0 {
        return Err(CodeError::ZeroCode);
    }
    let n = g.cols();
    let hi = n - k + 1;
    let lo = lower.clamp(1, hi);
    if let Some(d) = distance_by_enumeration(f, g, lo, budget) {
        return Ok(DistanceResult { lower: d, upper: d, exact: true, strategy: Strategy::Enumeration });
    }
    let (lo, hi) = distance_by_column_search(f, h, lo, hi, budget);
    let exact = lo == hi;
    Ok(DistanceResult {
        lower: lo,
        upper: hi,
        exact,
        strategy: if exact { Strategy::ColumnSearch } else { Strategy::Bounds },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "MDS")]
    Mds,
    #[serde(rename = "AMDS")]
    Amds,
    #[serde(rename = "NMDS")]
    Nmds,
    #[serde(rename = "other")]
    Other,
    #[serde(rename = "unknown")]
    Unknown,
}

/// Singleton-defect class. `d_dual` only matters when the defect is 1.
pub fn classify(n: usize, k: usize, d: Option<usize>, d_dual: Option<usize>) -> Result<Classification, CodeError> {
    let d = d.ok_or(CodeError::InexactDistance)?;
    let s = (n + 1) as i64 - k as i64 - d as i64;
    Ok(match s {
        0 => Classification::Mds,
        1 => match d_dual {
            None => Classification::Unknown,
            Some(dd) if (n + 1) as i64 - (n - k) as i64 - dd as i64 == 1 => Classification::Nmds,
            Some(_) => Classification::Amds,
        },
        _ => Classification::Other,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeMeta {
    pub curve: String,
    pub automorphism: String,
    pub orbit_starts: Vec<Point>,
}

/// Evaluation code of `L(t P_inf)` on a list of orbits.
#[derive(Debug, Clone)]
pub struct QcCode {
    curve: Arc<KummerCurve>,
    basis: MonomialBasis,
    pub t: u64,
    pub n: usize,
    pub k: usize,
    pub block_lengths: Vec<usize>,
    pub generator: Matrix,
    pub points: Vec<Point>,
    pub meta: CodeMeta,
}

/// Builds the code on the concatenated orbits, each listed `P, sP, ..`.
pub fn build_code(sigma: &Automorphism, orbits: &[Orbit], t: u64) -> Result<QcCode, CodeError> {
    if orbits.is_empty() {
        return Err(CodeError::EmptyOrbitSelection);
    }
    let curve = sigma.curve().clone();
    let f = curve.field().clone();
    let mut seen = BTreeSet::new();
    for o in orbits {
        let first = *o.points.first().ok_or(CodeError::EmptyOrbitSelection)?;
        for (i, p) in o.points.iter().enumerate() {
            curve.check_point(p).map_err(AutError::from)?;
            if !seen.insert(*p) {
                return Err(CodeError::OverlappingOrbits(*p));
            }
            let next = o.points[(i + 1) % o.points.len()];
            if sigma.map().apply(&f, p) != next {
                return Err(CodeError::NotAnOrbit(first));
            }
        }
    }
    let n: usize = orbits.iter().map(Orbit::len).sum();
    let g = curve.genus() as i64;
    if !(2 * g - 2 < t as i64 && (t as usize) < n) {
        return Err(CodeError::TOutOfRange { t: t as i64, lo: 2 * g - 2, hi: n as i64 });
    }
    let basis = rr_basis(&curve, t);
    let points: Vec<Point> = orbits.iter().flat_map(|o| o.points.iter().copied()).collect();
    let cols: Vec<Vec<Fe>> = points.iter().map(|p| basis.evaluate_affine(&f, p)).collect();
    let generator = Matrix::from_rows(cols, basis.dim()).transpose();
    let k = generator.rank(&f);
    let expected = (t as i64 + 1 - g) as usize;
    if k != expected || k != basis.dim() {
        return Err(CodeError::RankMismatch { rank: k, expected });
    }
    Ok(QcCode {
        meta: CodeMeta {
            curve: curve.describe(),
            automorphism: sigma.describe(),
            orbit_starts: orbits.iter().map(|o| o.points[0]).collect(),
        },
        curve,
        basis,
        t,
        n,
        k,
        block_lengths: orbits.iter().map(Orbit::len).collect(),
        generator,
        points,
    })
}

/// Code on every orbit of length > 1: short orbits first, then long ones.
pub fn build_gqc_with_short_orbits(sigma: &Automorphism, t: u64) -> Result<QcCode, CodeError> {
    let part = crate::aut::orbit_partition(sigma, &sigma.curve().points())?;
    build_code(sigma, &part.nontrivial_orbits(), t)
}

/// Structured summary of a code and its distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub t: u64,
    pub q: u64,
    pub d_lower: usize,
    pub d_upper: usize,
    pub exact: bool,
    pub strategy: Strategy,
    pub singleton_defect: Option<usize>,
    pub dual_distance: Option<DistanceResult>,
    pub classification: Classification,
    pub qc_verified: bool,
    pub co_index: String,
    pub block_lengths: Vec<usize>,
    pub curve: String,
    pub automorphism: String,
}

impl QcCode {
    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    pub fn curve(&self) -> &Arc<KummerCurve> {
        &self.curve
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn genus(&self) -> u64 {
        self.curve.genus()
    }

    pub fn co_index(&self) -> String {
        co_index(&self.block_lengths)
    }

    pub fn parity_check(&self) -> Matrix {
        self.generator.nullspace(self.field())
    }

    pub fn verify_shift_invariance(&self) -> bool {
        verify_shift_invariance(self.field(), &self.generator, &self.block_lengths).expect("block lengths match n")
    }

    /// `n - t'` with `t'` the largest pole order in the basis: a function with
    /// pole order `t'` has at most `t'` zeros.
    pub fn designed_distance(&self) -> usize {
        let top = self.basis.monomials.last().map_or(0, |mo| mo.pole_order) as usize;
        self.n - top
    }

    /// A codeword of weight `n - t'` from a product of fully split fibers
    /// `prod (x - e_i) prod (y - c_j)` whose zeros are distinct support points.
    pub fn fiber_certificate(&self) -> Option<Vec<Fe>> {
        let f = self.field();
        let (m, d) = (self.curve.m() as usize, self.curve.d() as usize);
        let top = self.n - self.designed_distance();
        let mut by_x: BTreeMap<Fe, Vec<Point>> = BTreeMap::new();
        let mut by_y: BTreeMap<Fe, Vec<Point>> = BTreeMap::new();
        for p in &self.points {
            by_x.entry(p.x).or_default().push(*p);
            by_y.entry(p.y).or_default().push(*p);
        }
        let full_x: Vec<(Fe, &Vec<Point>)> = by_x.iter().filter(|(_, v)| v.len() == d).map(|(&e, v)| (e, v)).collect();
        let full_y: Vec<(Fe, &Vec<Point>)> = by_y.iter().filter(|(_, v)| v.len() == m).map(|(&c, v)| (c, v)).collect();
        for a in 0..=top / d {
            if (top - a * d) % m != 0 || a > full_x.len() {
                continue;
            }
            let b = (top - a * d) / m;
            let xs = &full_x[..a];
            let used: BTreeSet<Point> = xs.iter().flat_map(|(_, v)| v.iter().copied()).collect();
            let ys: Vec<Fe> = full_y
                .iter()
                .filter(|(_, v)| v.iter().all(|p| !used.contains(p)))
                .take(b)
                .map(|(c, _)| *c)
                .collect();
            if ys.len() < b {
                continue;
            }
            let word: Vec<Fe> = self
                .points
                .iter()
                .map(|p| {
                    let vx = xs.iter().fold(Fe::ONE, |acc, (e, _)| f.mul(acc, f.sub(p.x, *e)));
                    ys.iter().fold(vx, |acc, c| f.mul(acc, f.sub(p.y, *c)))
                })
                .collect();
            if weight(&word) == self.n - top && RowSpace::new(f, &self.generator).contains(&word) {
                return Some(word);
            }
        }
        None
    }

    /// Enumeration, then column search, then the fiber certificate.
    pub fn minimum_distance(&self, budget: u64) -> DistanceResult {
        let f = self.field();
        let designed = self.designed_distance();
        let mut res = minimum_distance(f, &self.generator, &self.parity_check(), designed, budget)
            .expect("k >= 1 for valid builds");
        if !res.exact && self.fiber_certificate().is_some() && res.lower <= designed {
            res = DistanceResult { lower: designed, upper: designed, exact: true, strategy: Strategy::Certificate };
        }
        res
    }

    pub fn dual_distance(&self, budget: u64) -> Result<DistanceResult, CodeError> {
        let h = self.parity_check();
        if h.rows() == 0 {
            return Err(CodeError::ZeroCode);
        }
        minimum_distance(self.field(), &h, &self.generator, 1, budget)
    }

    pub fn report(&self, budget: u64) -> CodeReport {
        let d = self.minimum_distance(budget);
        let singleton_defect = d.value().map(|d| self.n + 1 - self.k - d);
        let dual = (singleton_defect == Some(1)).then(|| self.dual_distance(budget).ok()).flatten();
        let classification = match d.value() {
            None => Classification::Unknown,
            Some(dv) => classify(self.n, self.k, Some(dv), dual.as_ref().and_then(DistanceResult::value))
                .expect("exact distance"),
        };
        CodeReport {
            n: self.n,
            k: self.k,
            t: self.t,
            q: self.field().order() as u64,
            d_lower: d.lower,
            d_upper: d.upper,
            exact: d.exact,
            strategy: d.strategy,
            singleton_defect,
            dual_distance: dual,
            classification,
            qc_verified: self.verify_shift_invariance(),
            co_index: self.co_index(),
            block_lengths: self.block_lengths.clone(),
            curve: self.meta.curve.clone(),
            automorphism: self.meta.automorphism.clone(),
        }
    }

    /// Header `n k q blocks=m1,m2,..` followed by `k` rows of element indices.
    pub fn to_text(&self) -> String {
        matrix_to_text(&self.generator, self.field().order() as u64, &self.block_lengths)
    }
}

pub fn matrix_to_text(g: &Matrix, q: u64, blocks: &[usize]) -> String {
    let mut s = String::new();
    let bl: Vec<String> = blocks.iter().map(usize::to_string).collect();
    writeln!(s, "{} {} {} blocks={}", g.cols(), g.rows(), q, bl.join(",")).unwrap();
    for i in 0..g.rows() {
        let row: Vec<String> = g.row(i).iter().map(|c| c.index().to_string()).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

/// Parsed matrix text: the matrix, the field order and the block lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixText {
    pub matrix: Matrix,
    pub q: u64,
    pub blocks: Vec<usize>,
}

pub fn parse_matrix_text(f: &FieldCtx, text: &str) -> Result<MatrixText, CodeError> {
    let bad = |m: &str| CodeError::Parse(m.to_string());
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("missing header"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [n, k, q, blocks] = parts.as_slice() else {
        return Err(bad("header must be `n k q blocks=..`"));
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad(&format!("not a number: {s}")));
    let (n, k, q) = (num(n)?, num(k)?, num(q)? as u64);
    if q != f.order() as u64 {
        return Err(bad(&format!("field order {q} does not match {}", f.order())));
    }
    let blocks = blocks.strip_prefix("blocks=").ok_or_else(|| bad("missing blocks="))?;
    let blocks: Vec<usize> = blocks.split(',').map(num).collect::<Result<_, _>>()?;
    if blocks.iter().sum::<usize>() != n {
        return Err(bad("block lengths do not sum to n"));
    }
    let mut rows = Vec::with_capacity(k);
    for line in lines {
        let row: Vec<Fe> = line
            .split_whitespace()
            .map(|s| {
                let v = s.parse::<u32>().map_err(|_| bad(&format!("not an element: {s}")))?;
                f.from_index(v).map_err(CodeError::from)
            })
            .collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(bad("row length differs from n"));
        }
        rows.push(row);
    }
    if rows.len() != k {
        return Err(bad("row count differs from k"));
    }
    Ok(MatrixText { matrix: Matrix::from_rows(rows, n), q, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::orbit_partition;
    use crate::curve::Family;
    use crate::gf::FieldCtx;

    fn f31_sigma() -> Automorphism {
        let f = FieldCtx::prime(31).unwrap();
        let c = Arc::new(KummerCurve::from_ints(f.clone(), 2, &[1, 0, 0, 0, 0, 1], Family::Hyperelliptic).unwrap());
        Automorphism::diagonal(c, f.from_int(-1), f.from_int(2)).unwrap()
    }

    fn f31_qc(t: u64) -> QcCode {
        let s = f31_sigma();
        let part = orbit_partition(&s, &s.curve().points()).unwrap();
        build_code(&s, &part.long_orbits().unwrap(), t).unwrap()
    }

    #[test]
    fn shift_examples() {
        let f = FieldCtx::prime(7).unwrap();
        let e = |v: &[i64]| v.iter().map(|&i| f.from_int(i)).collect::<Vec<_>>();
        assert_eq!(shift_operator(&e(&[1, 2, 3]), &[3]).unwrap(), e(&[3, 1, 2]));
        assert_eq!(shift_operator(&e(&[1, 2, 3, 4]), &[2, 2]).unwrap(), e(&[2, 1, 4, 3]));
        assert_eq!(shift_operator(&e(&[5, 5, 5]), &[1, 2]).unwrap(), e(&[5, 5, 5]));
        assert!(matches!(shift_operator(&e(&[1]), &[2]), Err(CodeError::LengthMismatch { .. })));
    }

    #[test]
    fn rank_and_nullspace() {
        let f = FieldCtx::prime(7).unwrap();
        assert_eq!(Matrix::identity(4).rank(&f), 4);
        let code = f31_qc(3);
        let f = code.field();
        assert_eq!((code.n, code.k), (20, 2));
        let h = code.parity_check();
        assert_eq!(h.rows(), 18);
        assert_eq!(h.rank(f), 18);
        let prod = h.mul_transpose(f, &code.generator);
        assert!(prod.data.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn full_space_is_shift_invariant_and_swaps_break_it() {
        let f = FieldCtx::prime(5).unwrap();
        assert!(verify_shift_invariance(&f, &Matrix::identity(6), &[2, 4]).unwrap());
        let code = f31_qc(5);
        assert!(code.verify_shift_invariance());
        let mut g = code.generator.clone();
        g.swap_columns(0, 13);
        assert!(!verify_shift_invariance(code.field(), &g, &code.block_lengths).unwrap());
    }

    #[test]
    fn build_errors() {
        let s = f31_sigma();
        assert_eq!(build_code(&s, &[], 3).unwrap_err(), CodeError::EmptyOrbitSelection);
        let part = orbit_partition(&s, &s.curve().points()).unwrap();
        let long = part.long_orbits().unwrap();
        assert!(matches!(build_code(&s, &long, 2), Err(CodeError::TOutOfRange { .. })));
        assert!(matches!(build_code(&s, &long, 20), Err(CodeError::TOutOfRange { .. })));
        let twice = vec![long[0].clone(), long[0].clone()];
        assert!(matches!(build_code(&s, &twice, 5), Err(CodeError::OverlappingOrbits(_))));
        let mut broken = long[0].clone();
        broken.points.swap(1, 2);
        assert!(matches!(build_code(&s, &[broken], 3), Err(CodeError::NotAnOrbit(_))));
    }

    #[test]
    fn repetition_code() {
        let f = FieldCtx::prime(7).unwrap();
        let g = Matrix::from_rows(vec![vec![Fe::ONE; 5]], 5);
        let h = g.nullspace(&f);
        let d = minimum_distance(&f, &g, &h, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(d.value(), Some(5));
        assert_eq!(classify(5, 1, Some(5), None).unwrap(), Classification::Mds);
        assert_eq!(classify(5, 1, None, None).unwrap_err(), CodeError::InexactDistance);
        // column search alone agrees
        assert_eq!(distance_by_column_search(&f, &h, 1, 5, DEFAULT_BUDGET), (5, 5));
    }

    #[test]
    fn f31_distances() {
        let c3 = f31_qc(3);
        let r = c3.report(DEFAULT_BUDGET);
        assert_eq!((r.d_lower, r.exact), (18, true));
        assert_eq!(r.classification, Classification::Nmds);
        let c5 = f31_qc(5);
        let d = c5.minimum_distance(DEFAULT_BUDGET);
        assert_eq!(d.value(), Some(15));
        assert_eq!(c5.report(DEFAULT_BUDGET).singleton_defect, Some(2));
    }

    #[test]
    fn enumeration_and_column_search_agree() {
        for t in 3..8 {
            let code = f31_qc(t);
            let f = code.field();
            let h = code.parity_check();
            let e = distance_by_enumeration(f, &code.generator, 1, 1 << 26).unwrap();
            let (lo, hi) = distance_by_column_search(f, &h, 1, code.n - code.k + 1, 1 << 26);
            assert_eq!((lo, hi), (e, e), "t = {t}");
        }
    }

    #[test]
    fn gqc_blocks() {
        let s = f31_sigma();
        let code = build_gqc_with_short_orbits(&s, 4).unwrap();
        assert_eq!(code.block_lengths, vec![2, 5, 10, 10]);
        assert_eq!((code.n, code.k), (27, 3));
        assert!(code.verify_shift_invariance());
        assert_eq!(code.co_index(), "(2,5,10,10)");
    }

    #[test]
    fn certificate_matches_designed_distance() {
        let code = f31_qc(6);
        let w = code.fiber_certificate().unwrap();
        assert_eq!(weight(&w), 14);
        assert_eq!(code.designed_distance(), 14);
    }

    #[test]
    fn text_round_trip() {
        let code = f31_qc(4);
        let text = code.to_text();
        assert!(text.starts_with("20 3 31 blocks=10,10\n"));
        let parsed = parse_matrix_text(code.field(), &text).unwrap();
        assert_eq!(parsed.matrix, code.generator);
        assert_eq!(parsed.blocks, vec![10, 10]);
        assert!(parse_matrix_text(code.field(), "20 3 29 blocks=10,10\n").is_err());
        assert!(parse_matrix_text(code.field(), "4 1 31 blocks=2,1\n1 1 1 1\n").is_err());
    }
}
