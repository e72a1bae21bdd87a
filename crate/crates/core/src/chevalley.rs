//! Integer lifts of the representatives and their actions on the lattices
//! `L_sc` and `L_ad` inside `S²(V_ℚ)`, reduced mod 2.

use std::fmt;

use thiserror::Error;

use crate::block_arith::oracle::{sym2_action, sym2_index};
use crate::classes::{Class, NilpClass, Part, UnipClass};
use crate::gf2::{jordan_type_nilpotent, quotient, restrict, Gf2Error, Gf2Matrix, Gf2Vector, Subspace};
use crate::jordan::JordanType;
use crate::matrix_reps::{block_positions, build_class};
use crate::Kind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevalleyError {
    #[error("image of {label} is not integral on the {lattice} lattice")]
    NonIntegralImage { label: String, lattice: Lattice },
    #[error("integer overflow")]
    Overflow,
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

type Result<T> = std::result::Result<T, ChevalleyError>;

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(ChevalleyError::Overflow)
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(ChevalleyError::Overflow)
}

/// Dense integer matrix; column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
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

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i128) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn checked_add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add(a, b)).collect::<Result<_>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = add(out.get(i, j), mul(a, b)?)?;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise division by `d`; `None` unless every entry is divisible.
    pub fn exact_div(&self, d: i128) -> Option<IntMatrix> {
        let data = self.data.iter().map(|&x| (x % d == 0).then(|| x / d)).collect::<Option<_>>()?;
        Some(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn reduce_mod2(&self) -> Gf2Matrix {
        Gf2Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).rem_euclid(2) == 1)
    }
}

/// `E_{i,j}` on an `n`-dimensional space, 1-based.
fn unit(n: usize, i: usize, j: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    m.set(i - 1, j - 1, 1);
    m
}

/// Root vector `X_{α_i}` of `sp_n`: `E_{i,i+1} - E_{n-i,n-i+1}` for `i < ℓ`, and `E_{ℓ,ℓ+1}` for `i = ℓ`.
pub fn simple_root_vector(n: usize, i: usize) -> IntMatrix {
    let l = n / 2;
    let mut x = unit(n, i, i + 1);
    if i < l {
        x.set(n - i - 1, n - i, -1);
    }
    x
}

/// Root vector `X_{2ε_k} = E_{k,n-k+1}`.
pub fn long_root_vector(n: usize, k: usize) -> IntMatrix {
    unit(n, k, n - k + 1)
}

/// `x(α) = 1 + X + X²/2`.
pub fn root_element(x: &IntMatrix) -> Result<IntMatrix> {
    let sq = x.checked_mul(x)?;
    let half = sq.exact_div(2).expect("X² is even for these root vectors");
    IntMatrix::identity(x.rows()).checked_add(x)?.checked_add(&half)
}

fn local_unip(part: Part) -> Result<IntMatrix> {
    let l = part.rank();
    let n = 2 * l;
    let top = match part {
        Part::V(_) => l,
        Part::W(_) => l - 1,
        Part::Wk { .. } => unreachable!("W_k is nilpotent only"),
    };
    let mut u = IntMatrix::identity(n);
    for i in 1..=top {
        u = u.checked_mul(&root_element(&simple_root_vector(n, i))?)?;
    }
    Ok(u)
}

fn local_nilp(part: Part) -> Result<IntMatrix> {
    let l = part.rank();
    let n = 2 * l;
    let (top, extra) = match part {
        Part::V(_) => (l, None),
        Part::W(_) => (l - 1, None),
        Part::Wk { k, .. } => (l - 1, Some(k)),
    };
    let mut e = IntMatrix::zeros(n, n);
    for i in 1..=top {
        e = e.checked_add(&simple_root_vector(n, i))?;
    }
    if let Some(k) = extra {
        e = e.checked_add(&long_root_vector(n, k))?;
    }
    Ok(e)
}

fn embed(parts: &[Part], local: impl Fn(Part) -> Result<IntMatrix>) -> Result<IntMatrix> {
    let n = 2 * parts.iter().map(Part::rank).sum::<usize>();
    let mut out = IntMatrix::zeros(n, n);
    for (part, pos) in parts.iter().zip(block_positions(parts)) {
        let m = local(*part)?;
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(pos[r], pos[c], m.get(r, c));
            }
        }
    }
    Ok(out)
}

/// `u_ℤ`, blockwise product of root elements.
pub fn integer_rep_unip(c: &UnipClass) -> Result<IntMatrix> {
    embed(&c.parts(), local_unip)
}

/// `e_ℤ`, blockwise sum of root vectors.
pub fn integer_rep_nilp(c: &NilpClass) -> Result<IntMatrix> {
    embed(&c.parts(), local_nilp)
}

pub fn integer_rep(c: &Class) -> Result<IntMatrix> {
    match c {
        Class::Unip(u) => integer_rep_unip(u),
        Class::Nilp(e) => integer_rep_nilp(e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    Sc,
    Ad,
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::Sc => "sc",
            Lattice::Ad => "ad",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Multiplicative,
    Derivation,
}

impl From<Kind> for Mode {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Unipotent => Mode::Multiplicative,
            Kind::Nilpotent => Mode::Derivation,
        }
    }
}

/// Lattice basis element; indices are 0-based, printed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    HalfSquare(usize),
    Product(usize, usize),
    Delta,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Label::HalfSquare(i) => write!(f, "½v{}²", i + 1),
            Label::Product(i, j) => write!(f, "v{}v{}", i + 1, j + 1),
            Label::Delta => f.write_str("δ"),
        }
    }
}

/// Squares, then products `v_i v_j` (`i < j`), then `δ`; the `ad` basis trades
/// `v_1 v_n` for `δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    n: usize,
    lattice: Lattice,
    labels: Vec<Label>,
}

impl LatticeBasis {
    pub fn new(n: usize, lattice: Lattice) -> Self {
        assert!(n >= 2 && n.is_multiple_of(2), "natural module dimension must be even and positive");
        let mut labels: Vec<Label> = (0..n).map(Label::HalfSquare).collect();
        for i in 0..n {
            for j in i + 1..n {
                if lattice == Lattice::Sc || (i, j) != (0, n - 1) {
                    labels.push(Label::Product(i, j));
                }
            }
        }
        if lattice == Lattice::Ad {
            labels.push(Label::Delta);
        }
        LatticeBasis { n, lattice, labels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// `2x` as integer coefficients on the monomials `v_i v_j` (`i <= j`).
    fn doubled(&self, label: Label) -> Monomials {
        let mut y = Monomials::new(self.n);
        match label {
            Label::HalfSquare(i) => y.c[i * self.n + i] = 1,
            Label::Product(i, j) => y.c[i * self.n + j] = 2,
            Label::Delta => {
                for i in 0..self.n / 2 {
                    y.c[i * self.n + self.n - 1 - i] = 1;
                }
            }
        }
        y
    }

    /// Coordinates of `x` from `2x`, or `None` if `x` is not in the lattice.
    fn coordinates(&self, y: &Monomials) -> Option<Vec<i128>> {
        let n = self.n;
        let half = |v: i128| (v % 2 == 0).then_some(v / 2);
        let delta = match self.lattice {
            Lattice::Sc => 0,
            Lattice::Ad => y.get(0, n - 1),
        };
        self.labels
            .iter()
            .map(|&l| match l {
                Label::HalfSquare(i) => Some(y.get(i, i)),
                Label::Product(i, j) if i + j == n - 1 => half(y.get(i, j) - delta),
                Label::Product(i, j) => half(y.get(i, j)),
                Label::Delta => Some(delta),
            })
            .collect()
    }
}

/// Symmetric tensor coefficients, stored on the upper triangle.
struct Monomials {
    n: usize,
    c: Vec<i128>,
}

impl Monomials {
    fn new(n: usize) -> Self {
        Monomials { n, c: vec![0; n * n] }
    }

    fn get(&self, i: usize, j: usize) -> i128 {
        self.c[i * self.n + j]
    }

    fn add(&mut self, a: usize, b: usize, v: i128) -> Result<()> {
        let (i, j) = if a <= b { (a, b) } else { (b, a) };
        let slot = &mut self.c[i * self.n + j];
        *slot = add(*slot, v)?;
        Ok(())
    }

    fn terms(&self) -> impl Iterator<Item = (usize, usize, i128)> + '_ {
        (0..self.n).flat_map(move |i| (i..self.n).map(move |j| (i, j, self.get(i, j)))).filter(|t| t.2 != 0)
    }

    fn image(&self, a: &IntMatrix, mode: Mode) -> Result<Monomials> {
        let n = self.n;
        let mut out = Monomials::new(n);
        let cols: Vec<Vec<i128>> = (0..n).map(|j| a.column(j)).collect();
        for (i, j, c) in self.terms() {
            match mode {
                Mode::Multiplicative => {
                    for (p, &x) in cols[i].iter().enumerate().filter(|t| *t.1 != 0) {
                        for (q, &y) in cols[j].iter().enumerate().filter(|t| *t.1 != 0) {
                            out.add(p, q, mul(c, mul(x, y)?)?)?;
                        }
                    }
                }
                Mode::Derivation => {
                    for (p, &x) in cols[i].iter().enumerate().filter(|t| *t.1 != 0) {
                        out.add(p, j, mul(c, x)?)?;
                    }
                    for (q, &y) in cols[j].iter().enumerate().filter(|t| *t.1 != 0) {
                        out.add(i, q, mul(c, y)?)?;
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAction {
    pub basis: LatticeBasis,
    pub matrix: IntMatrix,
}

/// Action of `A` on `S²(V)` restricted to the lattice, with integrality asserted.
pub fn induced_action(a: &IntMatrix, lattice: Lattice, mode: Mode) -> Result<LatticeAction> {
    let basis = LatticeBasis::new(a.rows(), lattice);
    let mut matrix = IntMatrix::zeros(basis.len(), basis.len());
    for (j, &label) in basis.labels().iter().enumerate() {
        let img = basis.doubled(label).image(a, mode)?;
        let coords = basis
            .coordinates(&img)
            .ok_or_else(|| ChevalleyError::NonIntegralImage { label: label.to_string(), lattice })?;
        for (i, x) in coords.into_iter().enumerate() {
            matrix.set(i, j, x);
        }
    }
    Ok(LatticeAction { basis, matrix })
}

pub fn reduce_mod2(l: &LatticeAction) -> Gf2Matrix {
    l.matrix.reduce_mod2()
}

/// `[g_ad, g_ad]` in the `ad` basis: every coordinate except `δ`.
pub fn derived_subalgebra_subspace(n: usize) -> Subspace {
    let basis = LatticeBasis::new(n, Lattice::Ad);
    Subspace::coordinate_hyperplane(basis.len(), &[basis.len() - 1])
}

/// Spanning vector of `Z(g_sc)` in the `sc` basis: `Σ_{i<=ℓ} v_i v_{n+1-i}`.
pub fn center_sc_vector(n: usize) -> Gf2Vector {
    let basis = LatticeBasis::new(n, Lattice::Sc);
    let mut v = Gf2Vector::zeros(basis.len());
    for i in 0..n / 2 {
        v.set(basis.index_of(Label::Product(i, n - 1 - i)).unwrap(), true);
    }
    v
}

/// Mod-2 nilpotent parts (`ũ - 1` or `ẽ`) on `g_sc` and `g_ad`.
pub fn lie_algebra_actions(c: &Class) -> Result<(Gf2Matrix, Gf2Matrix)> {
    let a = integer_rep(c)?;
    let mode = Mode::from(c.kind());
    let nilpotent = |m: Gf2Matrix| match c.kind() {
        Kind::Unipotent => m.add_identity(),
        Kind::Nilpotent => m,
    };
    let sc = nilpotent(reduce_mod2(&induced_action(&a, Lattice::Sc, mode)?));
    let ad = nilpotent(reduce_mod2(&induced_action(&a, Lattice::Ad, mode)?));
    Ok((sc, ad))
}

/// Jordan types computed from matrices alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTypes {
    pub sc: JordanType,
    pub sc_mod_center: JordanType,
    pub derived: JordanType,
    pub ad: JordanType,
}

pub fn oracle_types(c: &Class) -> Result<OracleTypes> {
    let n = 2 * c.ell();
    let (sc, ad) = lie_algebra_actions(c)?;
    let center = Subspace::span(sc.rows(), [center_sc_vector(n)]);
    Ok(OracleTypes {
        sc: jordan_type_nilpotent(&sc)?,
        sc_mod_center: jordan_type_nilpotent(&quotient(&sc, &center)?)?,
        derived: jordan_type_nilpotent(&restrict(&ad, &derived_subalgebra_subspace(n))?)?,
        ad: jordan_type_nilpotent(&ad)?,
    })
}

/// `Ker φ` in `S²(V)` (basis `v_i v_j`, `i <= j`), where `φ(xy) = b(x, y)`.
pub fn phi_kernel(n: usize) -> Subspace {
    let dim = n * (n + 1) / 2;
    let mut phi = Gf2Matrix::zeros(1, dim);
    for i in 0..n / 2 {
        phi.set(0, sym2_index(n, i, n - 1 - i), true);
    }
    phi.kernel()
}

/// Nilpotent part of the action on `S²(V)` over GF(2).
pub fn s2_nilpotent_part(c: &Class) -> Gf2Matrix {
    let op = build_class(c).op;
    let s = sym2_action(&op, c.kind());
    match c.kind() {
        Kind::Unipotent => s.add_identity(),
        Kind::Nilpotent => s,
    }
}

/// One kernel-containment statement and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentCheck {
    pub statement: String,
    pub holds: bool,
}

fn kernel_check(n: &Gf2Matrix, m: u32, w: &Subspace, expect_inside: bool, name: &str, space: &str) -> ContainmentCheck {
    let inside = n.pow(m).kernel().is_subspace_of(w);
    let rel = if expect_inside { "⊆" } else { "⊄" };
    ContainmentCheck { statement: format!("Ker {name}^{m} {rel} {space}"), holds: inside == expect_inside }
}

/// The kernel containments governing the passage from `g_sc` to `g_sc/Z` and to `g_ad`.
pub fn containment_checks(c: &Class) -> Result<Vec<ContainmentCheck>> {
    let n = 2 * c.ell();
    let alpha = c.alpha();
    let name = match c.kind() {
        Kind::Unipotent => "(ũ-1)",
        Kind::Nilpotent => "ẽ",
    };
    let mut out = Vec::new();

    let s2 = s2_nilpotent_part(c);
    let ker_phi = phi_kernel(n);
    let q = 1u32 << alpha;
    out.push(kernel_check(&s2, q - 1, &ker_phi, true, name, "Ker φ"));
    out.push(kernel_check(&s2, q, &ker_phi, false, name, "Ker φ"));

    let (_, ad) = lie_algebra_actions(c)?;
    let derived = derived_subalgebra_subspace(n);
    let d = "[g_ad, g_ad]";
    match c {
        Class::Unip(u) => match u.beta() {
            None => out.push(kernel_check(&ad, 1, &derived, false, name, d)),
            Some(beta) => {
                let p = 1u32 << beta;
                out.push(kernel_check(&ad, p - 1, &derived, true, name, d));
                out.push(kernel_check(&ad, p, &derived, !u.case_a(), name, d));
                out.push(kernel_check(&ad, p + 1, &derived, false, name, d));
            }
        },
        Class::Nilp(e) => {
            if e.is_all_w() {
                out.push(kernel_check(&ad, 1, &derived, false, name, d));
            } else {
                out.push(kernel_check(&ad, 1, &derived, true, name, d));
                out.push(kernel_check(&ad, 2, &derived, false, name, d));
            }
        }
    }
    Ok(out)
}
