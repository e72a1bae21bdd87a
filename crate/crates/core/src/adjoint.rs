//! Closed-form Jordan types on `g_sc`, `g_sc/Z ≅ [g_ad, g_ad]` and `g_ad`.

use thiserror::Error;

use crate::block_arith::sym2_of_type;
use crate::classes::{jordan_type_v, Class, NilpClass, UnipClass};
use crate::jordan::JordanType;
use crate::Kind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdjointError {
    #[error("no Jordan block of size {size} to replace")]
    MissingBlock { size: usize },
}

type Result<T> = std::result::Result<T, AdjointError>;

/// Swaps one block of size `from` for one of size `to`; size 0 means none.
fn substitute(t: &JordanType, from: usize, to: usize) -> Result<JordanType> {
    let mut out = t.clone();
    if !out.remove_one(from) {
        return Err(AdjointError::MissingBlock { size: from });
    }
    out.add(to, 1);
    Ok(out)
}

fn with_block(t: &JordanType, size: usize) -> JordanType {
    let mut out = t.clone();
    out.add(size, 1);
    out
}

pub fn type_gsc(c: &Class) -> JordanType {
    sym2_of_type(&jordan_type_v(c), c.kind())
}

/// `g_sc` with one `2^α` block shortened by one.
pub fn type_derived(c: &Class) -> Result<JordanType> {
    let q = 1usize << c.alpha();
    substitute(&type_gsc(c), q, q - 1)
}

pub fn type_gad_unip(u: &UnipClass) -> Result<JordanType> {
    let c = Class::Unip(u.clone());
    let derived = type_derived(&c)?;
    match u.beta() {
        None => Ok(with_block(&derived, 1)),
        Some(beta) => {
            let p = 1usize << beta;
            if u.case_a() {
                if beta == 0 {
                    Ok(with_block(&derived, 1))
                } else {
                    substitute(&derived, p - 1, p)
                }
            } else {
                substitute(&derived, p, p + 1)
            }
        }
    }
}

pub fn type_gad_nilp(e: &NilpClass) -> Result<JordanType> {
    let derived = type_derived(&Class::Nilp(e.clone()))?;
    if e.is_all_w() {
        Ok(with_block(&derived, 1))
    } else {
        substitute(&derived, 1, 2)
    }
}

pub fn type_gad(c: &Class) -> Result<JordanType> {
    match c {
        Class::Unip(u) => type_gad_unip(u),
        Class::Nilp(e) => type_gad_nilp(e),
    }
}

/// Fixed-point dimensions on `g_sc` and `g_ad` (block counts).
pub fn centralizer_dims(c: &Class) -> Result<(usize, usize)> {
    Ok((type_gsc(c).num_blocks(), type_gad(c)?.num_blocks()))
}

/// `dim g_ad^x - dim g_sc^x` predicted from the summand parameters alone.
pub fn centralizer_shift(c: &Class) -> i64 {
    let alpha = c.alpha();
    match c {
        Class::Unip(u) if u.v_parts.is_empty() => i64::from(alpha > 0),
        Class::Unip(u) => {
            let odd_v_even_w = u.v_parts.iter().all(|&k| k % 2 == 1) && u.w_parts.iter().all(|&m| m % 2 == 0);
            if alpha > 0 || odd_v_even_w {
                0
            } else {
                -1
            }
        }
        Class::Nilp(e) if e.is_all_w() => i64::from(alpha > 0),
        Class::Nilp(_) => -i64::from(alpha == 0),
    }
}

/// One row of the tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointReport {
    pub class: Class,
    pub kind: Kind,
    pub ell: usize,
    pub type_v: JordanType,
    pub type_gsc: JordanType,
    pub type_derived: JordanType,
    pub type_gad: JordanType,
    pub alpha: u32,
    pub beta: Option<u32>,
    pub dim_cent_sc: usize,
    pub dim_cent_ad: usize,
}

pub fn report(c: &Class) -> Result<AdjointReport> {
    let type_gsc = type_gsc(c);
    let type_gad = type_gad(c)?;
    Ok(AdjointReport {
        class: c.clone(),
        kind: c.kind(),
        ell: c.ell(),
        type_v: jordan_type_v(c),
        dim_cent_sc: type_gsc.num_blocks(),
        dim_cent_ad: type_gad.num_blocks(),
        type_derived: type_derived(c)?,
        type_gsc,
        type_gad,
        alpha: c.alpha(),
        beta: c.beta(),
    })
}
