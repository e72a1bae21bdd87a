//! Jordan block arithmetic in characteristic 2: tensor products, exterior and
//! symmetric squares for unipotent and nilpotent actions.

use thiserror::Error;

use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::jordan::JordanType;
use crate::Kind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("expected a positive integer, got {0}")]
    NonPositive(u64),
}

pub fn nu2(a: u64) -> Result<u32, ArithError> {
    if a == 0 {
        return Err(ArithError::NonPositive(a));
    }
    Ok(a.trailing_zeros())
}

/// Least power of two `q` with `q/2 < n <= q`.
fn q_of(n: usize) -> usize {
    n.next_power_of_two()
}

/// Type of `V_m ⊗ V_n` for unipotent actions.
pub fn tensor_unip(m: usize, n: usize) -> JordanType {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if m == 0 {
        return JordanType::new();
    }
    let q = q_of(n);
    if n == q {
        return JordanType::uniform(q, m);
    }
    if m + n > q {
        let mut t = JordanType::uniform(q, m + n - q);
        t.extend(&tensor_unip(q - n, q - m));
        t
    } else {
        tensor_unip(m, q - n).map_sizes(|d| q - d)
    }
}

/// Type of `W_m ⊗ W_n` for nilpotent actions; agrees with [`tensor_unip`].
pub fn tensor_nilp(m: usize, n: usize) -> JordanType {
    tensor_unip(m, n)
}

pub fn tensor(m: usize, n: usize, kind: Kind) -> JordanType {
    match kind {
        Kind::Unipotent => tensor_unip(m, n),
        Kind::Nilpotent => tensor_nilp(m, n),
    }
}

pub fn ext2_unip(n: usize) -> JordanType {
    if n <= 1 {
        return JordanType::new();
    }
    let q = q_of(n);
    let mut t = ext2_unip(q - n);
    t.add(q, n - q / 2 - 1);
    t.add(3 * q / 2 - n, 1);
    t
}

pub fn sym2_unip(n: usize) -> JordanType {
    match n {
        0 => JordanType::new(),
        1 => JordanType::from_sizes([1]),
        _ => {
            let q = q_of(n);
            let mut t = ext2_unip(q - n);
            t.add(q, n - q / 2);
            t.add(q / 2, 1);
            t
        }
    }
}

/// One term `sign * 2^exp` of an alternating power-of-two expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedPower {
    pub positive: bool,
    pub exp: u32,
}

/// Minimal alternating expansion `n = 2^β_1 - 2^β_2 + ...` with `β_1 > β_2 > ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsecutiveOnesExpansion {
    pub terms: Vec<SignedPower>,
}

impl ConsecutiveOnesExpansion {
    pub fn betas(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.exp).collect()
    }

    pub fn value(&self) -> i64 {
        self.terms.iter().map(|t| if t.positive { 1i64 << t.exp } else { -(1i64 << t.exp) }).sum()
    }

    /// `d_k = 2^β_k + Σ_{i>k} (-1)^{k+i} 2^{β_i + 1}`.
    pub fn d(&self) -> Vec<i64> {
        let b = self.betas();
        (0..b.len())
            .map(|k| {
                let mut d = 1i64 << b[k];
                for (i, &bi) in b.iter().enumerate().skip(k + 1) {
                    let term = 1i64 << (bi + 1);
                    if (k + i) % 2 == 0 {
                        d += term;
                    } else {
                        d -= term;
                    }
                }
                d
            })
            .collect()
    }
}

pub fn consecutive_ones(n: u64) -> Result<ConsecutiveOnesExpansion, ArithError> {
    if n == 0 {
        return Err(ArithError::NonPositive(0));
    }
    // Runs of ones, highest first.
    let mut runs = Vec::new();
    let mut bit = 63i32;
    while bit >= 0 {
        if (n >> bit) & 1 == 1 {
            let hi = bit as u32;
            while bit >= 0 && (n >> bit) & 1 == 1 {
                bit -= 1;
            }
            runs.push((hi, (bit + 1) as u32));
        } else {
            bit -= 1;
        }
    }
    let mut terms = Vec::new();
    let last = runs.len() - 1;
    for (idx, &(hi, lo)) in runs.iter().enumerate() {
        if idx == last && hi == lo {
            terms.push(SignedPower { positive: true, exp: lo });
        } else {
            terms.push(SignedPower { positive: true, exp: hi + 1 });
            terms.push(SignedPower { positive: false, exp: lo });
        }
    }
    Ok(ConsecutiveOnesExpansion { terms })
}

fn expansion(n: usize) -> (Vec<u32>, Vec<i64>) {
    let e = consecutive_ones(n as u64).expect("n >= 1");
    (e.betas(), e.d())
}

pub fn square_tensor_nilp(n: usize) -> JordanType {
    if n == 0 {
        return JordanType::new();
    }
    let (b, d) = expansion(n);
    JordanType::from_pairs(b.iter().zip(&d).map(|(&bk, &dk)| (1usize << bk, dk as usize)))
}

pub fn ext2_nilp(n: usize) -> JordanType {
    if n == 0 {
        return JordanType::new();
    }
    let (b, d) = expansion(n);
    JordanType::from_pairs(
        b.iter().zip(&d).filter(|(&bk, _)| bk > 0).map(|(&bk, &dk)| ((1usize << bk) - 1, dk as usize / 2)),
    )
}

pub fn sym2_nilp(n: usize) -> JordanType {
    if n == 0 {
        return JordanType::new();
    }
    let (b, d) = expansion(n);
    let mut t = JordanType::uniform(1, n.div_ceil(2));
    for (&bk, &dk) in b.iter().zip(&d) {
        if bk > 0 {
            t.add(1 << bk, dk as usize / 2);
        }
    }
    t
}

pub fn sym2(n: usize, kind: Kind) -> JordanType {
    match kind {
        Kind::Unipotent => sym2_unip(n),
        Kind::Nilpotent => sym2_nilp(n),
    }
}

pub fn ext2(n: usize, kind: Kind) -> JordanType {
    match kind {
        Kind::Unipotent => ext2_unip(n),
        Kind::Nilpotent => ext2_nilp(n),
    }
}

pub fn tensor_of_types(s: &JordanType, t: &JordanType, kind: Kind) -> JordanType {
    let mut out = JordanType::new();
    for (a, ma) in s.pairs() {
        for (b, mb) in t.pairs() {
            out.extend(&tensor(a, b, kind).scaled(ma * mb));
        }
    }
    out
}

fn square_of_type(t: &JordanType, kind: Kind, diag: fn(usize, Kind) -> JordanType) -> JordanType {
    let pairs: Vec<(usize, usize)> = t.pairs().collect();
    let mut out = JordanType::new();
    for (i, &(a, ma)) in pairs.iter().enumerate() {
        out.extend(&diag(a, kind).scaled(ma));
        out.extend(&tensor(a, a, kind).scaled(ma * (ma - 1) / 2));
        for &(b, mb) in &pairs[i + 1..] {
            out.extend(&tensor(a, b, kind).scaled(ma * mb));
        }
    }
    out
}

pub fn sym2_of_type(t: &JordanType, kind: Kind) -> JordanType {
    square_of_type(t, kind, sym2)
}

pub fn ext2_of_type(t: &JordanType, kind: Kind) -> JordanType {
    square_of_type(t, kind, ext2)
}

/// Dimension of the fixed space: the number of blocks.
pub fn fixed_point_count(t: &JordanType) -> usize {
    t.num_blocks()
}

/// Explicit matrices for checking the closed forms above.
pub mod oracle {
    use super::*;

    /// Nilpotent Jordan block `J_n`: `v_i -> v_{i-1}`.
    pub fn nilpotent_block(n: usize) -> Gf2Matrix {
        Gf2Matrix::from_fn(n, n, |i, j| j == i + 1)
    }

    /// Unipotent Jordan block `1 + J_n`.
    pub fn unipotent_block(n: usize) -> Gf2Matrix {
        nilpotent_block(n).add_identity()
    }

    /// Action of `u ⊗ u'` on `V ⊗ V'`.
    pub fn tensor_action_unip(a: &Gf2Matrix, b: &Gf2Matrix) -> Gf2Matrix {
        a.kronecker(b)
    }

    /// Action of `e ⊗ 1 + 1 ⊗ e'` on `V ⊗ V'`.
    pub fn tensor_action_nilp(a: &Gf2Matrix, b: &Gf2Matrix) -> Gf2Matrix {
        a.kronecker(&Gf2Matrix::identity(b.rows())).add(&Gf2Matrix::identity(a.rows()).kronecker(b))
    }

    /// Index of `v_i v_j` (`i <= j`) in the monomial basis of `S²(V)`, ordered by `(i, j)`.
    pub fn sym2_index(n: usize, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < n);
        i * n - i * (i + 1) / 2 + j
    }

    /// Index of `v_i ∧ v_j` (`i < j`) in the basis of `∧²(V)`.
    pub fn ext2_index(n: usize, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < n);
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Multiplicative action for unipotent `a`, derivation action for nilpotent `a`.
    fn induced(a: &Gf2Matrix, kind: Kind, exterior: bool) -> Gf2Matrix {
        let n = a.rows();
        let dim = if exterior { n * (n - 1) / 2 } else { n * (n + 1) / 2 };
        let idx = |i: usize, j: usize| {
            if exterior {
                ext2_index(n, i, j)
            } else {
                sym2_index(n, i, j)
            }
        };
        let col: Vec<Gf2Vector> = (0..n).map(|j| a.column(j)).collect();
        let mut out = Gf2Matrix::zeros(dim, dim);
        // product x*y accumulated into out column c
        let add_product = |out: &mut Gf2Matrix, c: usize, x: &Gf2Vector, y: &Gf2Vector| {
            for k in x.ones() {
                for l in y.ones() {
                    if k != l {
                        out.flip(idx(k.min(l), k.max(l)), c);
                    } else if !exterior {
                        out.flip(idx(k, k), c);
                    }
                }
            }
        };
        for i in 0..n {
            let start = if exterior { i + 1 } else { i };
            for j in start..n {
                let c = idx(i, j);
                match kind {
                    Kind::Unipotent => add_product(&mut out, c, &col[i], &col[j]),
                    Kind::Nilpotent => {
                        add_product(&mut out, c, &col[i], &Gf2Vector::unit(n, j));
                        add_product(&mut out, c, &Gf2Vector::unit(n, i), &col[j]);
                    }
                }
            }
        }
        out
    }

    /// Action on `S²(V)` with basis `v_i v_j`, `i <= j`.
    pub fn sym2_action(a: &Gf2Matrix, kind: Kind) -> Gf2Matrix {
        induced(a, kind, false)
    }

    /// Action on `∧²(V)` with basis `v_i ∧ v_j`, `i < j`.
    pub fn ext2_action(a: &Gf2Matrix, kind: Kind) -> Gf2Matrix {
        induced(a, kind, true)
    }

    fn block(n: usize, kind: Kind) -> Gf2Matrix {
        match kind {
            Kind::Unipotent => unipotent_block(n),
            Kind::Nilpotent => nilpotent_block(n),
        }
    }

    fn type_of(m: &Gf2Matrix, kind: Kind) -> JordanType {
        let r = match kind {
            Kind::Unipotent => crate::gf2::jordan_type_unipotent(m),
            Kind::Nilpotent => crate::gf2::jordan_type_nilpotent(m),
        };
        r.expect("induced action of a unipotent/nilpotent block")
    }

    pub fn tensor_type(m: usize, n: usize, kind: Kind) -> JordanType {
        let (a, b) = (block(m, kind), block(n, kind));
        let t = match kind {
            Kind::Unipotent => tensor_action_unip(&a, &b),
            Kind::Nilpotent => tensor_action_nilp(&a, &b),
        };
        type_of(&t, kind)
    }

    pub fn sym2_type(n: usize, kind: Kind) -> JordanType {
        type_of(&sym2_action(&block(n, kind), kind), kind)
    }

    pub fn ext2_type(n: usize, kind: Kind) -> JordanType {
        if n < 2 {
            return JordanType::new();
        }
        type_of(&ext2_action(&block(n, kind), kind), kind)
    }

    /// Minimal alternating expansion by exhaustive search over decreasing exponents.
    pub fn consecutive_ones_brute(n: u64) -> Vec<SignedPower> {
        let top = 64 - n.leading_zeros() + 1;
        for r in 1..=top as usize + 1 {
            if let Some(t) = search(n as i64, r, top as i32, true) {
                return t;
            }
        }
        unreachable!("every positive integer has an alternating expansion")
    }

    fn search(target: i64, r: usize, max_exp: i32, positive: bool) -> Option<Vec<SignedPower>> {
        if r == 0 {
            return (target == 0).then(Vec::new);
        }
        for e in (0..=max_exp).rev() {
            let v = 1i64 << e;
            let rest = if positive { target - v } else { target + v };
            if let Some(mut tail) = search(rest, r - 1, e - 1, !positive) {
                tail.insert(0, SignedPower { positive, exp: e as u32 });
                return Some(tail);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jt(s: &[usize]) -> JordanType {
        JordanType::from_sizes(s.iter().copied())
    }

    #[test]
    fn nu2_examples() {
        assert_eq!(nu2(1), Ok(0));
        assert_eq!(nu2(6), Ok(1));
        assert_eq!(nu2(48), Ok(4));
        assert_eq!(nu2(0), Err(ArithError::NonPositive(0)));
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_unip(1, 5), jt(&[5]));
        assert_eq!(tensor_unip(2, 2), jt(&[2, 2]));
        assert_eq!(tensor_unip(3, 3), jt(&[4, 4, 1]));
        assert_eq!(tensor_nilp(1, 5), jt(&[5]));
        assert_eq!(tensor_nilp(3, 3), jt(&[4, 4, 1]));
    }

    #[test]
    fn square_examples() {
        assert!(ext2_unip(1).is_empty());
        assert_eq!(sym2_unip(4), jt(&[4, 4, 2]));
        assert_eq!(ext2_unip(4), jt(&[4, 2]));
        assert_eq!(sym2_unip(3), jt(&[4, 2]));
        assert_eq!(sym2_nilp(1), jt(&[1]));
        assert_eq!(ext2_nilp(3), jt(&[3]));
        assert_eq!(sym2_nilp(3), jt(&[4, 1, 1]));
        assert_eq!(square_tensor_nilp(3), jt(&[4, 4, 1]));
        assert_eq!(sym2_nilp(2), jt(&[2, 1]));
    }

    #[test]
    fn consecutive_ones_examples() {
        let e = consecutive_ones(3).unwrap();
        assert_eq!(e.terms, vec![SignedPower { positive: true, exp: 2 }, SignedPower { positive: false, exp: 0 }]);
        assert_eq!(e.d(), vec![2, 1]);
        assert_eq!(consecutive_ones(1).unwrap().terms, vec![SignedPower { positive: true, exp: 0 }]);
        assert_eq!(consecutive_ones(6).unwrap().betas(), vec![3, 1]);
        assert_eq!(consecutive_ones(0), Err(ArithError::NonPositive(0)));
    }

    #[test]
    fn consecutive_ones_matches_brute_force() {
        for n in 1..=300u64 {
            let e = consecutive_ones(n).unwrap();
            assert_eq!(e.value(), n as i64);
            assert_eq!(e.terms, oracle::consecutive_ones_brute(n), "n = {n}");
            let b = e.betas();
            if b.len() > 1 {
                assert!(b[b.len() - 2] > b[b.len() - 1] + 1);
            }
        }
    }

    #[test]
    fn type_level_squares() {
        assert_eq!(sym2_of_type(&jt(&[2, 2]), Kind::Unipotent), jt(&[2, 2, 2, 2, 1, 1]));
        assert_eq!(sym2_of_type(&jt(&[3, 3]), Kind::Nilpotent), jt(&[4, 4, 4, 4, 1, 1, 1, 1, 1]));
        assert!(ext2_of_type(&jt(&[1]), Kind::Unipotent).is_empty());
    }

    #[test]
    fn fixed_points() {
        assert_eq!(fixed_point_count(&jt(&[4, 2])), 2);
        assert_eq!(fixed_point_count(&sym2_unip(7)), 4);
        assert_eq!(fixed_point_count(&ext2_unip(9)), 4);
    }

    #[test]
    fn small_oracle_agreement() {
        for kind in [Kind::Unipotent, Kind::Nilpotent] {
            for n in 1..=8 {
                assert_eq!(sym2(n, kind), oracle::sym2_type(n, kind), "S² {kind:?} {n}");
                assert_eq!(ext2(n, kind), oracle::ext2_type(n, kind), "∧² {kind:?} {n}");
                for m in 1..=n {
                    assert_eq!(tensor(m, n, kind), oracle::tensor_type(m, n, kind));
                }
            }
        }
    }
}
