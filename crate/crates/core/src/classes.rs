//! Unipotent classes and nilpotent orbits of `Sp(V)` in characteristic 2,
//! described by orthogonal decompositions into `W(m)`, `V(2k)` and `W_k(l)`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::block_arith::nu2;
use crate::jordan::JordanType;
use crate::Kind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("parse error at position {pos}: {reason}")]
    Parse { pos: usize, reason: String },
    #[error("invalid part {part}: {reason}")]
    InvalidPart { part: String, reason: String },
}

/// An orthogonally indecomposable summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    /// `W(m)`, dimension `2m`.
    W(usize),
    /// `W_k(l)`, dimension `2l`, nilpotent only.
    Wk { k: usize, l: usize },
    /// `V(2k)`, dimension `2k`; stores `k`.
    V(usize),
}

impl Part {
    /// Contribution to the rank `ℓ` (half the dimension).
    pub fn rank(&self) -> usize {
        match *self {
            Part::W(m) => m,
            Part::Wk { l, .. } => l,
            Part::V(k) => k,
        }
    }

    pub fn jordan_type(&self) -> JordanType {
        match *self {
            Part::W(m) => JordanType::uniform(m, 2),
            Part::Wk { l, .. } => JordanType::uniform(l, 2),
            Part::V(k) => JordanType::uniform(2 * k, 1),
        }
    }

    /// Closed-form index function `χ(m)` of the nilpotent summand.
    pub fn nilpotent_chi(&self, m: usize) -> usize {
        match *self {
            Part::W(_) => 0,
            Part::Wk { k, l } => (m + k).saturating_sub(l).min(k),
            Part::V(k) => m.saturating_sub(k).min(k),
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Part::W(m) => write!(f, "W({m})"),
            Part::Wk { k, l } => write!(f, "W_{k}({l})"),
            Part::V(k) => write!(f, "V({})", 2 * k),
        }
    }
}

fn render_parts(parts: &[Part]) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        let c = j - i;
        out.push(if c == 1 { parts[i].to_string() } else { format!("{}^{}", parts[i], c) });
        i = j;
    }
    out.join(" + ")
}

/// A unipotent class `Σ W(m_i) ⊥ Σ V(2k_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnipClass {
    pub w_parts: Vec<usize>,
    pub v_parts: Vec<usize>,
}

impl UnipClass {
    pub fn new(mut w_parts: Vec<usize>, mut v_parts: Vec<usize>) -> Self {
        w_parts.sort_unstable();
        v_parts.sort_unstable();
        UnipClass { w_parts, v_parts }
    }

    pub fn ell(&self) -> usize {
        self.w_parts.iter().sum::<usize>() + self.v_parts.iter().sum::<usize>()
    }

    pub fn parts(&self) -> Vec<Part> {
        self.w_parts.iter().map(|&m| Part::W(m)).chain(self.v_parts.iter().map(|&k| Part::V(k))).collect()
    }

    pub fn is_canonical(&self) -> bool {
        counts(&self.v_parts).values().all(|&c| c <= 2)
    }

    pub fn alpha(&self) -> u32 {
        self.w_parts.iter().chain(&self.v_parts).map(|&x| nu2(x as u64).unwrap()).min().unwrap_or(0)
    }

    /// `max ν₂(k_j)`, defined only when some `V(2k)` is present.
    pub fn beta(&self) -> Option<u32> {
        self.v_parts.iter().map(|&k| nu2(k as u64).unwrap()).max()
    }

    /// Some `V(2k)` present, every `k` with `ν₂(k) = β`, every `m` with `ν₂(m) > β`.
    pub fn case_a(&self) -> bool {
        let Some(beta) = self.beta() else { return false };
        self.v_parts.iter().all(|&k| k.trailing_zeros() == beta) && self.w_parts.iter().all(|&m| m.trailing_zeros() > beta)
    }
}

impl fmt::Display for UnipClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_parts(&self.parts()))
    }
}

/// A nilpotent orbit `Σ W(m_i) ⊥ Σ W_{k_j}(l_j) ⊥ Σ V(2d_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NilpClass {
    pub w_parts: Vec<usize>,
    /// `(k, l)` pairs with `0 < k < l/2`.
    pub wk_parts: Vec<(usize, usize)>,
    pub v_parts: Vec<usize>,
}

impl NilpClass {
    pub fn new(mut w_parts: Vec<usize>, wk_parts: Vec<(usize, usize)>, mut v_parts: Vec<usize>) -> Self {
        w_parts.sort_unstable();
        v_parts.sort_unstable();
        let mut wk_parts = wk_parts;
        wk_parts.sort_unstable_by_key(|&(k, l)| (l, k));
        NilpClass { w_parts, wk_parts, v_parts }
    }

    pub fn ell(&self) -> usize {
        self.w_parts.iter().sum::<usize>()
            + self.wk_parts.iter().map(|&(_, l)| l).sum::<usize>()
            + self.v_parts.iter().sum::<usize>()
    }

    pub fn parts(&self) -> Vec<Part> {
        self.w_parts
            .iter()
            .map(|&m| Part::W(m))
            .chain(self.wk_parts.iter().map(|&(k, l)| Part::Wk { k, l }))
            .chain(self.v_parts.iter().map(|&d| Part::V(d)))
            .collect()
    }

    pub fn is_all_w(&self) -> bool {
        self.wk_parts.is_empty() && self.v_parts.is_empty()
    }

    /// Largest `α` with `2^α` dividing every `m_i`, `l_j` and `2d_r`.
    pub fn alpha(&self) -> u32 {
        self.w_parts
            .iter()
            .chain(self.wk_parts.iter().map(|(_, l)| l))
            .map(|&x| nu2(x as u64).unwrap())
            .chain(self.v_parts.iter().map(|&d| nu2(2 * d as u64).unwrap()))
            .min()
            .unwrap_or(0)
    }

    /// Hesselink symbol from the closed-form index functions of the summands.
    pub fn symbol(&self) -> HesselinkSymbol {
        let parts = self.parts();
        let t = jordan_type_of_parts(&parts);
        HesselinkSymbol {
            entries: t
                .pairs()
                .map(|(d, n)| SymbolEntry { d, n, chi: parts.iter().map(|p| p.nilpotent_chi(d)).max().unwrap_or(0) })
                .collect(),
        }
    }
}

impl fmt::Display for NilpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_parts(&self.parts()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolEntry {
    pub d: usize,
    pub n: usize,
    pub chi: usize,
}

/// `(d_i, n_i, χ(d_i))` triples, strictly increasing in `d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HesselinkSymbol {
    pub entries: Vec<SymbolEntry>,
}

impl HesselinkSymbol {
    pub fn jordan_type(&self) -> JordanType {
        JordanType::from_pairs(self.entries.iter().map(|e| (e.d, e.n)))
    }

    /// Checks monotonicity of `χ` and `d - χ`, `0 <= χ <= d/2`, and `χ = d/2` for odd `n`.
    pub fn check_constraints(&self) -> Result<(), String> {
        for w in self.entries.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a.chi > b.chi {
                return Err(format!("χ decreases from {} to {}", a.d, b.d));
            }
            if a.d - a.chi > b.d - b.chi {
                return Err(format!("d - χ decreases from {} to {}", a.d, b.d));
            }
        }
        for e in &self.entries {
            if 2 * e.chi > e.d {
                return Err(format!("χ({}) = {} exceeds d/2", e.d, e.chi));
            }
            if e.n % 2 == 1 && 2 * e.chi != e.d {
                return Err(format!("χ({}) = {} but multiplicity {} is odd", e.d, e.chi, e.n));
            }
        }
        Ok(())
    }
}

impl fmt::Display for HesselinkSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .entries
            .iter()
            .map(|e| if e.n == 1 { format!("{}_{}", e.d, e.chi) } else { format!("{}_{}^{}", e.d, e.chi, e.n) })
            .collect();
        write!(f, "({})", items.join(", "))
    }
}

/// A class of either kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Unip(UnipClass),
    Nilp(NilpClass),
}

impl Class {
    pub fn kind(&self) -> Kind {
        match self {
            Class::Unip(_) => Kind::Unipotent,
            Class::Nilp(_) => Kind::Nilpotent,
        }
    }

    pub fn ell(&self) -> usize {
        match self {
            Class::Unip(c) => c.ell(),
            Class::Nilp(c) => c.ell(),
        }
    }

    pub fn parts(&self) -> Vec<Part> {
        match self {
            Class::Unip(c) => c.parts(),
            Class::Nilp(c) => c.parts(),
        }
    }

    pub fn alpha(&self) -> u32 {
        match self {
            Class::Unip(c) => c.alpha(),
            Class::Nilp(c) => c.alpha(),
        }
    }

    pub fn beta(&self) -> Option<u32> {
        match self {
            Class::Unip(c) => c.beta(),
            Class::Nilp(_) => None,
        }
    }

    pub fn canonical(&self) -> Class {
        match self {
            Class::Unip(c) => Class::Unip(canonicalize_unip(c)),
            Class::Nilp(c) => Class::Nilp(canonicalize_nilp(c)),
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Unip(c) => c.fmt(f),
            Class::Nilp(c) => c.fmt(f),
        }
    }
}

fn counts(xs: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &x in xs {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

fn jordan_type_of_parts(parts: &[Part]) -> JordanType {
    let mut t = JordanType::new();
    for p in parts {
        t.extend(&p.jordan_type());
    }
    t
}

/// Jordan type of the element on the natural module `V`.
pub fn jordan_type_v(c: &Class) -> JordanType {
    jordan_type_of_parts(&c.parts())
}

/// Rewrites `V(2k)^3` as `W(2k) ⊥ V(2k)` until every `V(2k)` occurs at most twice.
pub fn canonicalize_unip(c: &UnipClass) -> UnipClass {
    let mut w = c.w_parts.clone();
    let mut v = Vec::new();
    for (k, mut mult) in counts(&c.v_parts) {
        while mult >= 3 {
            mult -= 2;
            w.push(2 * k);
        }
        v.extend(std::iter::repeat_n(k, mult));
    }
    UnipClass::new(w, v)
}

/// Normal form built from a Hesselink symbol: each block size `d` with multiplicity
/// `n` and index `c` becomes `V(d)^n` if `c = d/2`, `W_c(d) ⊥ W(d)^{n/2-1}` if
/// `0 < c < d/2`, and `W(d)^{n/2}` if `c = 0`.
pub fn nilp_from_symbol(s: &HesselinkSymbol) -> NilpClass {
    let (mut w, mut wk, mut v) = (Vec::new(), Vec::new(), Vec::new());
    for e in &s.entries {
        if 2 * e.chi == e.d {
            v.extend(std::iter::repeat_n(e.d / 2, e.n));
        } else if e.chi == 0 {
            w.extend(std::iter::repeat_n(e.d, e.n / 2));
        } else {
            wk.push((e.chi, e.d));
            w.extend(std::iter::repeat_n(e.d, e.n / 2 - 1));
        }
    }
    NilpClass::new(w, wk, v)
}

pub fn canonicalize_nilp(c: &NilpClass) -> NilpClass {
    nilp_from_symbol(&c.symbol())
}

fn parse_error(pos: usize, reason: impl Into<String>) -> ClassError {
    ClassError::Parse { pos, reason: reason.into() }
}

struct Cursor {
    chars: Vec<(usize, char)>,
    at: usize,
}

impl Cursor {
    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && self.chars[self.at].1.is_whitespace() {
            self.at += 1;
        }
    }

    fn pos(&self) -> usize {
        self.at
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.at += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<(), ClassError> {
        let pos = self.pos();
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(parse_error(pos, format!("expected '{want}', found '{c}'"))),
            None => Err(parse_error(pos, format!("expected '{want}', found end of input"))),
        }
    }

    fn int(&mut self) -> Result<usize, ClassError> {
        self.skip_ws();
        let start = self.at;
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.get(self.at) {
            if c.is_ascii_digit() {
                digits.push(c);
                self.at += 1;
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(parse_error(start, "expected an integer"));
        }
        digits.parse().map_err(|_| parse_error(start, "integer too large"))
    }

    fn try_keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let w: Vec<char> = word.chars().collect();
        let end = self.at + w.len();
        if end <= self.chars.len() && self.chars[self.at..end].iter().zip(&w).all(|(&(_, c), &d)| c.to_ascii_lowercase() == d) {
            self.at = end;
            true
        } else {
            false
        }
    }
}

fn parse_part(cur: &mut Cursor) -> Result<(Part, usize), ClassError> {
    let pos = cur.pos();
    let part = match cur.bump() {
        Some('W') => {
            if cur.peek() == Some('_') {
                cur.bump();
                let k = cur.int()?;
                cur.expect('(')?;
                let l = cur.int()?;
                cur.expect(')')?;
                Part::Wk { k, l }
            } else {
                cur.expect('(')?;
                let m = cur.int()?;
                cur.expect(')')?;
                Part::W(m)
            }
        }
        Some('V') => {
            cur.expect('(')?;
            let n = cur.int()?;
            cur.expect(')')?;
            if n == 0 || n % 2 == 1 {
                return Err(ClassError::InvalidPart {
                    part: format!("V({n})"),
                    reason: "the argument of V must be even and at least 2".into(),
                });
            }
            Part::V(n / 2)
        }
        Some(c) => return Err(parse_error(pos, format!("expected 'W' or 'V', found '{c}'"))),
        None => return Err(parse_error(pos, "expected a part, found end of input")),
    };
    let mut mult = 1;
    if cur.peek() == Some('^') {
        cur.bump();
        mult = cur.int()?;
        if mult == 0 {
            return Err(ClassError::InvalidPart { part: part.to_string(), reason: "exponent must be at least 1".into() });
        }
    }
    match part {
        Part::W(0) => Err(ClassError::InvalidPart { part: part.to_string(), reason: "W(m) needs m >= 1".into() }),
        Part::Wk { k, l } if k == 0 || 2 * k >= l => Err(ClassError::InvalidPart {
            part: part.to_string(),
            reason: "W_k(l) needs 0 < k < l/2".into(),
        }),
        _ => Ok((part, mult)),
    }
}

/// Parses `term { sep term }` where `sep` is `+`, `⊥` or `perp`, and canonicalizes.
pub fn parse_decomp(text: &str, kind: Kind) -> Result<Class, ClassError> {
    let mut cur = Cursor { chars: text.char_indices().collect(), at: 0 };
    let mut parts = Vec::new();
    loop {
        let (p, mult) = parse_part(&mut cur)?;
        parts.extend(std::iter::repeat_n(p, mult));
        match cur.peek() {
            None => break,
            Some('+') | Some('⊥') => {
                cur.bump();
            }
            Some(_) if cur.try_keyword("perp") => {}
            Some(c) => return Err(parse_error(cur.pos(), format!("expected a separator, found '{c}'"))),
        }
    }
    let (mut w, mut wk, mut v) = (Vec::new(), Vec::new(), Vec::new());
    for p in parts {
        match p {
            Part::W(m) => w.push(m),
            Part::V(k) => v.push(k),
            Part::Wk { k, l } => {
                if kind == Kind::Unipotent {
                    return Err(ClassError::InvalidPart {
                        part: p.to_string(),
                        reason: "W_k(l) summands only occur for nilpotent elements".into(),
                    });
                }
                wk.push((k, l));
            }
        }
    }
    Ok(match kind {
        Kind::Unipotent => Class::Unip(canonicalize_unip(&UnipClass::new(w, v))),
        Kind::Nilpotent => Class::Nilp(canonicalize_nilp(&NilpClass::new(w, wk, v))),
    })
}

/// All multisets of `candidates` (sorted, by index) whose ranks sum to `ell`.
fn multisets(ell: usize, candidates: &[Part]) -> Vec<Vec<Part>> {
    fn go(rest: usize, from: usize, cands: &[Part], cur: &mut Vec<Part>, out: &mut Vec<Vec<Part>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..cands.len() {
            let r = cands[i].rank();
            if r <= rest {
                cur.push(cands[i]);
                go(rest - r, i, cands, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(ell, 0, candidates, &mut Vec::new(), &mut out);
    out
}

fn order_key(t: &JordanType, s: &HesselinkSymbol) -> (Reverse<Vec<usize>>, Reverse<HesselinkSymbol>) {
    (Reverse(t.sizes_desc()), Reverse(s.clone()))
}

fn candidates(ell: usize, kind: Kind) -> Vec<Part> {
    let mut cands: Vec<Part> = (1..=ell).map(Part::W).collect();
    if kind == Kind::Nilpotent {
        for l in 3..=ell {
            cands.extend((1..).take_while(|k| 2 * k < l).map(|k| Part::Wk { k, l }));
        }
    }
    cands.extend((1..=ell).map(Part::V));
    cands
}

fn class_from_parts(parts: Vec<Part>, kind: Kind) -> Class {
    let (mut w, mut wk, mut v) = (Vec::new(), Vec::new(), Vec::new());
    for p in parts {
        match p {
            Part::W(m) => w.push(m),
            Part::Wk { k, l } => wk.push((k, l)),
            Part::V(d) => v.push(d),
        }
    }
    match kind {
        Kind::Unipotent => Class::Unip(UnipClass::new(w, v)),
        Kind::Nilpotent => Class::Nilp(NilpClass::new(w, wk, v)),
    }
}

/// Every orthogonal decomposition of rank `ell`, not canonicalized; several may
/// describe the same class.
pub fn decompositions(ell: usize, kind: Kind) -> Vec<Class> {
    multisets(ell, &candidates(ell, kind)).into_iter().map(|ps| class_from_parts(ps, kind)).collect()
}

/// Distinct unipotent classes of rank `ell`, in canonical form.
pub fn enumerate_unip(ell: usize) -> Vec<UnipClass> {
    let set: BTreeSet<UnipClass> = decompositions(ell, Kind::Unipotent)
        .into_iter()
        .map(|c| match c {
            Class::Unip(u) => canonicalize_unip(&u),
            Class::Nilp(_) => unreachable!(),
        })
        .collect();
    let mut keyed: Vec<_> = set
        .into_iter()
        .map(|c| {
            let t = jordan_type_v(&Class::Unip(c.clone()));
            let s = crate::matrix_reps::unipotent_invariant(&c);
            (order_key(&t, &s), c)
        })
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, c)| c).collect()
}

/// Distinct nilpotent orbits of rank `ell`, one per Hesselink symbol.
pub fn enumerate_nilp(ell: usize) -> Vec<NilpClass> {
    let symbols: BTreeSet<HesselinkSymbol> = decompositions(ell, Kind::Nilpotent)
        .into_iter()
        .map(|c| match c {
            Class::Nilp(n) => n.symbol(),
            Class::Unip(_) => unreachable!(),
        })
        .collect();
    let mut keyed: Vec<_> = symbols.into_iter().map(|s| (order_key(&s.jordan_type(), &s), nilp_from_symbol(&s))).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, c)| c).collect()
}

pub fn enumerate(ell: usize, kind: Kind) -> Vec<Class> {
    match kind {
        Kind::Unipotent => enumerate_unip(ell).into_iter().map(Class::Unip).collect(),
        Kind::Nilpotent => enumerate_nilp(ell).into_iter().map(Class::Nilp).collect(),
    }
}
