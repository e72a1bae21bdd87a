//! Dense linear algebra over GF(2) with rows packed into 64-bit words.
//!
//! Matrices act on column vectors: column `j` holds the image of the `j`-th basis vector.

use std::fmt;

use thiserror::Error;

use crate::jordan::JordanType;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("subspace is not invariant under the matrix")]
    NotInvariant,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b & 1 == 1);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix { rows, cols, data: vec![Gf2Vector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn<F: Fn(usize, usize) -> bool>(rows: usize, cols: usize, f: F) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b & 1 == 1);
            }
        }
        m
    }

    /// Builds a square-or-rectangular matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(rows: usize, cols: &[Gf2Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.data[i].set(j, bit)
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i].flip(j)
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.data[i].ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn add(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        out
    }

    pub fn add_identity(&self) -> Gf2Matrix {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            out.flip(i, i);
        }
        out
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = Gf2Vector::zeros(other.cols);
            for k in self.data[i].ones() {
                acc.xor_assign(&other.data[k]);
            }
            out.data[i] = acc;
        }
        out
    }

    pub fn pow(&self, k: u32) -> Gf2Matrix {
        assert!(self.is_square());
        let mut result = Gf2Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Matrix-vector product `M x`.
    pub fn apply(&self, x: &Gf2Vector) -> Gf2Vector {
        assert_eq!(x.len(), self.cols);
        let mut y = Gf2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.data[i].dot(x) {
                y.set(i, true);
            }
        }
        y
    }

    pub fn kronecker(&self, other: &Gf2Matrix) -> Gf2Matrix {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Gf2Matrix::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in self.data[i].ones() {
                for k in 0..r2 {
                    for l in other.data[k].ones() {
                        out.set(i * r2 + k, j * c2 + l, true);
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        Subspace::span(self.cols, self.data.iter().cloned()).dim()
    }

    /// Column space as a subspace of the target.
    pub fn image(&self) -> Subspace {
        self.transpose().row_space()
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.cols, self.data.iter().cloned())
    }

    /// Kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let n = self.cols;
        let row_space = self.row_space();
        let pivots: Vec<usize> = row_space.pivots.clone();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = Gf2Vector::unit(n, free);
            for (row, &p) in row_space.basis.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        Subspace::span(n, basis)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// A subspace of GF(2)^n held as its reduced row echelon basis.
///
/// Two subspaces are equal iff their echelon bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Gf2Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| Gf2Vector::unit(ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Gf2Vector>>(ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Subspace spanned by all coordinate vectors except the listed ones.
    pub fn coordinate_hyperplane(ambient: usize, omit: &[usize]) -> Self {
        Self::span(
            ambient,
            (0..ambient).filter(|i| !omit.contains(i)).map(|i| Gf2Vector::unit(ambient, i)),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Gf2Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace, clearing every pivot bit.
    pub fn reduce(&self, v: &mut Gf2Vector) {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(b);
            }
        }
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span; returns true if the dimension grew.
    pub fn insert(&mut self, mut v: Gf2Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        self.reduce(&mut v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for b in self.basis.iter_mut() {
            if b.get(p) {
                b.xor_assign(&v);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.basis.insert(pos, v);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Coordinates of `v` (assumed to lie in the subspace) in the echelon basis.
    pub fn coordinates(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut c = Gf2Vector::zeros(self.dim());
        for (k, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                c.set(k, true);
            }
        }
        c
    }

    /// Non-pivot coordinates, a basis of a complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    pub fn is_invariant_under(&self, m: &Gf2Matrix) -> bool {
        self.basis.iter().all(|b| self.contains(&m.apply(b)))
    }
}

fn check_square(m: &Gf2Matrix) -> Result<(), Gf2Error> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Gf2Error::NotSquare { rows: m.rows, cols: m.cols })
    }
}

/// Column-sparse view used to push many vectors through a sparse matrix.
enum Applier {
    Dense(Gf2Matrix),
    Sparse(Vec<Vec<usize>>),
}

impl Applier {
    fn new(m: &Gf2Matrix) -> Self {
        let nnz: usize = m.data.iter().map(|r| r.words.iter().map(|w| w.count_ones() as usize).sum::<usize>()).sum();
        if nnz * 16 < m.rows * m.cols {
            let mut cols = vec![Vec::new(); m.cols];
            for i in 0..m.rows {
                for j in m.data[i].ones() {
                    cols[j].push(i);
                }
            }
            Applier::Sparse(cols)
        } else {
            Applier::Dense(m.transpose())
        }
    }

    fn apply(&self, x: &Gf2Vector, rows: usize) -> Gf2Vector {
        let mut y = Gf2Vector::zeros(rows);
        match self {
            Applier::Sparse(cols) => {
                for j in x.ones() {
                    for &i in &cols[j] {
                        y.flip(i);
                    }
                }
            }
            Applier::Dense(t) => {
                for j in x.ones() {
                    y.xor_assign(&t.data[j]);
                }
            }
        }
        y
    }
}

/// Ranks `rank(N^k)` for `k = 0, 1, ...` until they reach zero.
pub fn rank_sequence(n: &Gf2Matrix) -> Result<Vec<usize>, Gf2Error> {
    check_square(n)?;
    let dim = n.rows;
    let applier = Applier::new(n);
    let mut ranks = vec![dim];
    let mut current: Vec<Gf2Vector> = (0..dim).map(|i| Gf2Vector::unit(dim, i)).collect();
    while !current.is_empty() {
        if ranks.len() > dim {
            return Err(Gf2Error::NotNilpotent);
        }
        let image = Subspace::span(dim, current.iter().map(|v| applier.apply(v, dim)));
        if image.dim() == *ranks.last().unwrap() {
            return Err(Gf2Error::NotNilpotent);
        }
        ranks.push(image.dim());
        current = image.basis;
    }
    Ok(ranks)
}

/// Jordan type of a nilpotent matrix from its rank sequence.
pub fn jordan_type_nilpotent(n: &Gf2Matrix) -> Result<JordanType, Gf2Error> {
    let ranks = rank_sequence(n)?;
    let mut t = JordanType::new();
    // blocks of size >= k: ranks[k-1] - ranks[k]
    let at_least = |k: usize| ranks.get(k - 1).copied().unwrap_or(0) - ranks.get(k).copied().unwrap_or(0);
    for k in 1..ranks.len() {
        t.add(k, at_least(k) - at_least(k + 1));
    }
    Ok(t)
}

pub fn jordan_type_unipotent(u: &Gf2Matrix) -> Result<JordanType, Gf2Error> {
    check_square(u)?;
    jordan_type_nilpotent(&u.add_identity()).map_err(|e| match e {
        Gf2Error::NotNilpotent => Gf2Error::NotUnipotent,
        other => other,
    })
}

/// Matrix of `M` restricted to the invariant subspace `w`, in its echelon basis.
pub fn restrict(m: &Gf2Matrix, w: &Subspace) -> Result<Gf2Matrix, Gf2Error> {
    check_square(m)?;
    if w.ambient != m.rows {
        return Err(Gf2Error::DimMismatch { expected: m.rows, got: w.ambient });
    }
    let mut cols = Vec::with_capacity(w.dim());
    for b in &w.basis {
        let img = m.apply(b);
        if !w.contains(&img) {
            return Err(Gf2Error::NotInvariant);
        }
        cols.push(w.coordinates(&img));
    }
    Ok(Gf2Matrix::from_columns(w.dim(), &cols))
}

/// Matrix of the action induced by `M` on `ambient / w`, in the basis of non-pivot unit vectors.
pub fn quotient(m: &Gf2Matrix, w: &Subspace) -> Result<Gf2Matrix, Gf2Error> {
    check_square(m)?;
    if w.ambient != m.rows {
        return Err(Gf2Error::DimMismatch { expected: m.rows, got: w.ambient });
    }
    if !w.is_invariant_under(m) {
        return Err(Gf2Error::NotInvariant);
    }
    let free = w.complement_coordinates();
    let mut cols = Vec::with_capacity(free.len());
    for &c in &free {
        let mut img = m.apply(&Gf2Vector::unit(m.rows, c));
        w.reduce(&mut img);
        let mut q = Gf2Vector::zeros(free.len());
        for (k, &f) in free.iter().enumerate() {
            if img.get(f) {
                q.set(k, true);
            }
        }
        cols.push(q);
    }
    Ok(Gf2Matrix::from_columns(free.len(), &cols))
}

/// True iff `Ker(N^m)` is contained in `w`.
pub fn kernel_power_contained(n: &Gf2Matrix, m: u32, w: &Subspace) -> Result<bool, Gf2Error> {
    rank_sequence(n)?;
    if w.ambient != n.rows {
        return Err(Gf2Error::DimMismatch { expected: n.rows, got: w.ambient });
    }
    Ok(n.pow(m).kernel().is_subspace_of(w))
}
