//! Explicit GF(2) representatives of classes as bilinear spaces, and the
//! Hesselink index function computed from them.

use thiserror::Error;

use crate::classes::{Class, HesselinkSymbol, NilpClass, Part, SymbolEntry, UnipClass};
use crate::gf2::{jordan_type_nilpotent, Gf2Error, Gf2Matrix, Gf2Vector, Subspace};
use crate::jordan::JordanType;
use crate::Kind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("kinds differ")]
    KindMismatch,
    #[error("dimensions differ: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// `V` with its alternating form `b` and the operator `u` or `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearSpace {
    pub gram: Gf2Matrix,
    pub op: Gf2Matrix,
    pub kind: Kind,
}

/// The form `b(v_i, v_j) = 1` iff `i + j = n + 1`.
pub fn antidiagonal_gram(n: usize) -> Gf2Matrix {
    Gf2Matrix::from_fn(n, n, |i, j| i + j + 1 == n)
}

/// Global 0-based positions of each summand's local basis `v_1..v_{2l}`.
///
/// Summand `j` with half-dimension `l_j` and offset `L_j` sends `v_a` to `L_j + a`
/// for `a <= l_j` and its partner to the mirrored position, so the global form is
/// again antidiagonal.
pub fn block_positions(parts: &[Part]) -> Vec<Vec<usize>> {
    let total: usize = parts.iter().map(Part::rank).sum::<usize>() * 2;
    let mut offset = 0;
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        let l = p.rank();
        let n = 2 * l;
        let pos = (1..=n)
            .map(|a| if a <= l { offset + a - 1 } else { total - (offset + n + 1 - a) })
            .collect();
        out.push(pos);
        offset += l;
    }
    out
}

/// Local operator entries `(row, col)` (0-based, value 1) of a summand per its definition.
fn local_entries(part: Part, kind: Kind) -> Vec<(usize, usize)> {
    let l = part.rank();
    let n = 2 * l;
    let mut e = Vec::new();
    match kind {
        Kind::Unipotent => {
            let fixed_middle = matches!(part, Part::W(_));
            for i in 1..=n {
                e.push((i, i));
                if i == 1 {
                    continue;
                }
                let sum_to_start = if fixed_middle { i <= l } else { i <= l + 1 };
                if sum_to_start {
                    e.extend((1..i).map(|r| (r, i)));
                } else if !(fixed_middle && i == l + 1) {
                    e.push((i - 1, i));
                }
            }
        }
        Kind::Nilpotent => {
            for i in 2..=n {
                match part {
                    Part::W(_) | Part::Wk { .. } if i == l + 1 => {}
                    Part::Wk { k, .. } if i == n - k + 1 => {
                        e.push((n - k, i));
                        e.push((k, i));
                    }
                    _ => e.push((i - 1, i)),
                }
            }
        }
    }
    e.into_iter().map(|(r, c)| (r - 1, c - 1)).collect()
}

fn build(parts: &[Part], kind: Kind) -> BilinearSpace {
    let n = 2 * parts.iter().map(Part::rank).sum::<usize>();
    let mut op = Gf2Matrix::zeros(n, n);
    for (part, pos) in parts.iter().zip(block_positions(parts)) {
        for (r, c) in local_entries(*part, kind) {
            op.flip(pos[r], pos[c]);
        }
    }
    let s = BilinearSpace { gram: antidiagonal_gram(n), op, kind };
    debug_assert!(s.check().is_ok());
    s
}

pub fn build_unip(c: &UnipClass) -> BilinearSpace {
    build(&c.parts(), Kind::Unipotent)
}

pub fn build_nilp(c: &NilpClass) -> BilinearSpace {
    build(&c.parts(), Kind::Nilpotent)
}

pub fn build_class(c: &Class) -> BilinearSpace {
    match c {
        Class::Unip(u) => build_unip(u),
        Class::Nilp(n) => build_nilp(n),
    }
}

impl BilinearSpace {
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// The nilpotent operator: `e`, or `u - 1` for unipotent spaces.
    pub fn nilpotent_part(&self) -> Gf2Matrix {
        match self.kind {
            Kind::Unipotent => self.op.add_identity(),
            Kind::Nilpotent => self.op.clone(),
        }
    }

    pub fn jordan_type(&self) -> Result<JordanType, RepError> {
        Ok(jordan_type_nilpotent(&self.nilpotent_part())?)
    }

    /// Form compatibility and non-degeneracy of the alternating form.
    pub fn check(&self) -> Result<(), RepError> {
        let g = &self.gram;
        let n = self.dim();
        if g.transpose() != *g || (0..n).any(|i| g.get(i, i)) || g.rank() != n {
            return Err(RepError::InvariantViolation("form is not alternating and non-degenerate".into()));
        }
        let t = self.op.transpose();
        let ok = match self.kind {
            Kind::Unipotent => t.mul(g).mul(&self.op) == *g,
            Kind::Nilpotent => t.mul(g).add(&g.mul(&self.op)).is_zero(),
        };
        if ok {
            Ok(())
        } else {
            Err(RepError::InvariantViolation("operator does not preserve the form".into()))
        }
    }

    fn b(&self, x: &Gf2Vector, y: &Gf2Vector) -> bool {
        x.dot(&self.gram.apply(y))
    }

    /// Whether `v -> b(f v, g v)` vanishes on `u`: on each basis vector, and on
    /// each polarization `b(f x, g y) + b(f y, g x)`.
    pub fn quadratic_vanishes(&self, f: &Gf2Matrix, g: &Gf2Matrix, u: &Subspace) -> bool {
        let fx: Vec<Gf2Vector> = u.basis().iter().map(|v| f.apply(v)).collect();
        let gx: Vec<Gf2Vector> = u.basis().iter().map(|v| g.apply(v)).collect();
        for i in 0..fx.len() {
            if self.b(&fx[i], &gx[i]) {
                return false;
            }
            for j in i + 1..fx.len() {
                if self.b(&fx[i], &gx[j]) ^ self.b(&fx[j], &gx[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `b(ev, v) = 0` for all `v`, with `e` the nilpotent part.
    pub fn b_ev_v_vanishes(&self) -> bool {
        let e = self.nilpotent_part();
        self.quadratic_vanishes(&e, &Gf2Matrix::identity(self.dim()), &Subspace::whole(self.dim()))
    }

    /// The same form with the operator replaced by the square of its nilpotent part.
    pub fn squared(&self) -> BilinearSpace {
        let e = self.nilpotent_part();
        BilinearSpace { gram: self.gram.clone(), op: e.mul(&e), kind: Kind::Nilpotent }
    }
}

/// `χ(m) = min{n >= 0 : b(e^{n+1} v, e^n v) = 0 for all v in Ker e^m}`.
pub fn index_function(s: &BilinearSpace, m: usize) -> Result<usize, RepError> {
    let e = s.nilpotent_part();
    let u = e.pow(m as u32).kernel();
    let bound = m.div_ceil(2) + 1;
    let mut en = Gf2Matrix::identity(s.dim());
    for n in 0..=bound {
        let en1 = e.mul(&en);
        if s.quadratic_vanishes(&en1, &en, &u) {
            return Ok(n);
        }
        en = en1;
    }
    Err(RepError::InvariantViolation(format!("index function at {m} exceeds {bound}")))
}

/// Symbol without the constraint check.
fn raw_symbol(s: &BilinearSpace) -> Result<HesselinkSymbol, RepError> {
    let t = s.jordan_type()?;
    let entries = t
        .pairs()
        .map(|(d, n)| Ok(SymbolEntry { d, n, chi: index_function(s, d)? }))
        .collect::<Result<Vec<_>, RepError>>()?;
    Ok(HesselinkSymbol { entries })
}

/// Hesselink symbol of the nilpotent part; constraint-checked for nilpotent spaces.
pub fn hesselink_symbol(s: &BilinearSpace) -> Result<HesselinkSymbol, RepError> {
    let sym = raw_symbol(s)?;
    if s.kind == Kind::Nilpotent {
        sym.check_constraints().map_err(RepError::InvariantViolation)?;
    }
    Ok(sym)
}

/// Symbol of `u - 1`, used to tell unipotent classes with equal Jordan types apart.
pub fn unipotent_invariant(c: &UnipClass) -> HesselinkSymbol {
    hesselink_symbol(&build_unip(c)).expect("representatives are unipotent")
}

pub fn same_orbit(a: &BilinearSpace, b: &BilinearSpace) -> Result<bool, RepError> {
    if a.kind != b.kind {
        return Err(RepError::KindMismatch);
    }
    if a.dim() != b.dim() {
        return Err(RepError::DimMismatch(a.dim(), b.dim()));
    }
    Ok(hesselink_symbol(a)? == hesselink_symbol(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::parse_decomp;

    fn space(s: &str, kind: Kind) -> BilinearSpace {
        build_class(&parse_decomp(s, kind).unwrap())
    }

    fn raw_nilp(w: Vec<usize>, wk: Vec<(usize, usize)>, v: Vec<usize>) -> BilinearSpace {
        build_nilp(&NilpClass::new(w, wk, v))
    }

    #[test]
    fn small_representatives() {
        let v2 = space("V(2)", Kind::Unipotent);
        assert_eq!(v2.op, Gf2Matrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        assert_eq!(v2.gram, Gf2Matrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(space("W(1)", Kind::Unipotent).op, Gf2Matrix::identity(2));
        assert_eq!(space("W(2)", Kind::Unipotent).jordan_type().unwrap(), JordanType::from_sizes([2, 2]));
        assert_eq!(space("V(2)", Kind::Nilpotent).op, Gf2Matrix::from_rows(&[vec![0, 1], vec![0, 0]]));
        assert!(space("W(1)^2", Kind::Nilpotent).op.is_zero());
    }

    #[test]
    fn w13_operator() {
        let s = space("W_1(3)", Kind::Nilpotent);
        let e = &s.op;
        // e v_4 = 0, e v_6 = v_5 + v_1 (1-based)
        assert!(e.column(3).is_zero());
        assert_eq!(e.column(5), Gf2Vector::from_bits(&[1, 0, 0, 0, 1, 0]));
        assert!(s.check().is_ok());
    }

    #[test]
    fn index_function_examples() {
        assert_eq!(index_function(&space("V(4)", Kind::Nilpotent), 4).unwrap(), 2);
        assert_eq!(index_function(&space("W(2)", Kind::Nilpotent), 2).unwrap(), 0);
        assert_eq!(index_function(&space("W_1(3)", Kind::Nilpotent), 3).unwrap(), 1);
    }

    #[test]
    fn symbol_examples() {
        let e = |d, n, chi| SymbolEntry { d, n, chi };
        assert_eq!(hesselink_symbol(&space("V(4)", Kind::Nilpotent)).unwrap().entries, vec![e(4, 1, 2)]);
        assert_eq!(hesselink_symbol(&space("W(3)", Kind::Nilpotent)).unwrap().entries, vec![e(3, 2, 0)]);
        let mixed = raw_nilp(vec![2], vec![], vec![1]);
        let cubed = raw_nilp(vec![], vec![], vec![1, 1, 1]);
        assert_eq!(hesselink_symbol(&mixed).unwrap().entries, vec![e(2, 3, 1)]);
        assert!(same_orbit(&mixed, &cubed).unwrap());
    }

    #[test]
    fn same_orbit_examples() {
        let a = raw_nilp(vec![4], vec![], vec![1]);
        let b = raw_nilp(vec![], vec![(1, 4)], vec![1]);
        assert!(same_orbit(&a, &b).unwrap());
        let w13 = space("W_1(3)", Kind::Nilpotent);
        assert!(!same_orbit(&w13, &space("W(3)", Kind::Nilpotent)).unwrap());
        assert!(same_orbit(&w13, &w13).unwrap());
        assert_eq!(same_orbit(&w13, &space("W(3)", Kind::Unipotent)), Err(RepError::KindMismatch));
        assert_eq!(same_orbit(&w13, &space("W(2)", Kind::Nilpotent)), Err(RepError::DimMismatch(6, 4)));
    }

    #[test]
    fn unipotent_v2_squared_vs_w2() {
        let a = unipotent_invariant(&UnipClass::new(vec![], vec![1, 1]));
        let b = unipotent_invariant(&UnipClass::new(vec![2], vec![]));
        assert_ne!(a, b);
    }
}
