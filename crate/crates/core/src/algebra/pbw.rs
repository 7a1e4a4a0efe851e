//! PBW monomials, enveloping-algebra elements and the normal-ordering engine.
//!
//! Canonical monomials are written `L_{−i₁}⋯L_{−iₚ} L_0^a C^b L_{j₁}⋯L_{j_q}`
//! with `i₁ ≥ ⋯ ≥ iₚ ≥ 1` and `1 ≤ j₁ ≤ ⋯ ≤ j_q`, i.e. words sorted by
//! [`Generator`]'s order. Products are straightened with `uv = vu + [u, v]`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{bracket_basis, Generator};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default cap on the length of user-supplied words.
pub const DEFAULT_WORD_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PbwMonomial {
    /// `[i₁, …, iₚ]` for `L_{−i₁}⋯L_{−iₚ}`, non-increasing, entries ≥ 1.
    pub neg_part: Vec<u32>,
    pub l0_power: u32,
    pub central_power: u32,
    /// `[j₁, …, j_q]` for `L_{j₁}⋯L_{j_q}`, non-decreasing, entries ≥ 1.
    pub pos_part: Vec<u32>,
}

impl PbwMonomial {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.neg_part.is_empty() && self.l0_power == 0 && self.central_power == 0 && self.pos_part.is_empty()
    }

    /// `L_{−i₁}⋯L_{−iₚ}`; `parts` is sorted into canonical order.
    pub fn lowering(parts: &[u32]) -> Self {
        let mut neg_part = parts.to_vec();
        neg_part.sort_unstable_by(|a, b| b.cmp(a));
        PbwMonomial { neg_part, ..Self::default() }
    }

    /// `L_{j₁}⋯L_{j_q}`; `parts` is sorted into canonical order.
    pub fn raising(parts: &[u32]) -> Self {
        let mut pos_part = parts.to_vec();
        pos_part.sort_unstable();
        PbwMonomial { pos_part, ..Self::default() }
    }

    pub fn len(&self) -> usize {
        self.neg_part.len() + self.l0_power as usize + self.central_power as usize + self.pos_part.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn to_word(&self) -> Vec<Generator> {
        let mut word = Vec::with_capacity(self.len());
        word.extend(self.neg_part.iter().map(|&i| Generator::L(-(i as i64))));
        word.extend(std::iter::repeat(Generator::L(0)).take(self.l0_power as usize));
        word.extend(std::iter::repeat(Generator::Central).take(self.central_power as usize));
        word.extend(self.pos_part.iter().map(|&j| Generator::L(j as i64)));
        word
    }

    /// Inverse of [`to_word`](Self::to_word); `None` if the word is not sorted.
    pub fn from_sorted_word(word: &[Generator]) -> Option<Self> {
        if word.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let mut m = PbwMonomial::identity();
        for g in word {
            match *g {
                Generator::L(i) if i < 0 => m.neg_part.push((-i) as u32),
                Generator::L(0) => m.l0_power += 1,
                Generator::Central => m.central_power += 1,
                Generator::L(j) => m.pos_part.push(j as u32),
            }
        }
        Some(m)
    }

    pub fn degree(&self) -> i64 {
        degree_of(self)
    }

    fn first(&self) -> Option<Generator> {
        if let Some(&i) = self.neg_part.first() {
            Some(Generator::L(-(i as i64)))
        } else if self.l0_power > 0 {
            Some(Generator::L(0))
        } else if self.central_power > 0 {
            Some(Generator::Central)
        } else {
            self.pos_part.first().map(|&j| Generator::L(j as i64))
        }
    }

    fn without_first(&self) -> Self {
        let mut m = self.clone();
        if !m.neg_part.is_empty() {
            m.neg_part.remove(0);
        } else if m.l0_power > 0 {
            m.l0_power -= 1;
        } else if m.central_power > 0 {
            m.central_power -= 1;
        } else if !m.pos_part.is_empty() {
            m.pos_part.remove(0);
        }
        m
    }

    /// `g·self` when `g` is not larger than any letter of `self`.
    fn prepend(&self, g: Generator) -> Self {
        let mut m = self.clone();
        match g {
            Generator::L(i) if i < 0 => m.neg_part.insert(0, (-i) as u32),
            Generator::L(0) => m.l0_power += 1,
            Generator::Central => m.central_power += 1,
            Generator::L(j) => m.pos_part.insert(0, j as u32),
        }
        m
    }
}

/// Grading: `Σ posPart − Σ negPart`.
pub fn degree_of(m: &PbwMonomial) -> i64 {
    let pos: i64 = m.pos_part.iter().map(|&j| j as i64).sum();
    let neg: i64 = m.neg_part.iter().map(|&i| i as i64).sum();
    pos - neg
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(degree, negPart, l0Power, centralPower, posPart)`, lexicographic.
impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.neg_part.cmp(&other.neg_part))
            .then_with(|| self.l0_power.cmp(&other.l0_power))
            .then_with(|| self.central_power.cmp(&other.central_power))
            .then_with(|| self.pos_part.cmp(&other.pos_part))
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        for (n, g) in self.to_word().into_iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of U(Vir) in PBW normal form.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct UeaElement {
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl UeaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(PbwMonomial::identity())
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        Self::term(m, Scalar::one())
    }

    pub fn term(m: PbwMonomial, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    /// A single generator as an element of U(Vir).
    pub fn generator(g: Generator) -> Self {
        Self::monomial(PbwMonomial::from_sorted_word(&[g]).expect("single letters are sorted"))
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &UeaElement, c: &Scalar) {
        for (m, x) in other.terms() {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn add(&self, other: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn scale(&self, c: &Scalar) -> UeaElement {
        let mut out = UeaElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The common degree of all terms, if the element is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(PbwMonomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }
}

impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Normal-ordering engine with a private memo of `generator × monomial` products.
///
/// The memo is owned by the engine, so separate engines share nothing.
pub struct NormalOrderer {
    memo: HashMap<(Generator, PbwMonomial), UeaElement>,
    term_limit: usize,
}

impl Default for NormalOrderer {
    fn default() -> Self {
        Self::new()
    }
}

impl NormalOrderer {
    pub fn new() -> Self {
        NormalOrderer { memo: HashMap::new(), term_limit: usize::MAX }
    }

    /// Fails with [`Error::TermLimit`] once any intermediate result exceeds `limit` terms.
    pub fn with_term_limit(limit: usize) -> Self {
        NormalOrderer { memo: HashMap::new(), term_limit: limit }
    }

    /// `g · m` in normal form.
    pub fn left_mul_generator(&mut self, g: Generator, m: &PbwMonomial) -> Result<UeaElement> {
        let Some(first) = m.first() else {
            return Ok(UeaElement::generator(g));
        };
        if g <= first {
            return Ok(UeaElement::monomial(m.prepend(g)));
        }
        if g == Generator::Central {
            // central: slot it in after the L0 block
            let mut m = m.clone();
            m.central_power += 1;
            return Ok(UeaElement::monomial(m));
        }
        let key = (g, m.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }

        // g·f·rest = f·(g·rest) + [g, f]·rest
        let rest = m.without_first();
        let inner = self.left_mul_generator(g, &rest)?;
        let mut out = UeaElement::zero();
        for (mono, c) in inner.terms() {
            let shifted = self.left_mul_generator(first, mono)?;
            out.add_scaled(&shifted, c);
        }
        for (h, c) in bracket_basis(g, first).terms() {
            let extra = self.left_mul_generator(h, &rest)?;
            out.add_scaled(&extra, c);
        }
        if out.len() > self.term_limit {
            return Err(Error::TermLimit(self.term_limit));
        }
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    /// `g · x` in normal form.
    pub fn left_mul(&mut self, g: Generator, x: &UeaElement) -> Result<UeaElement> {
        let mut out = UeaElement::zero();
        for (m, c) in x.terms() {
            let part = self.left_mul_generator(g, m)?;
            out.add_scaled(&part, c);
        }
        if out.len() > self.term_limit {
            return Err(Error::TermLimit(self.term_limit));
        }
        Ok(out)
    }

    /// `w₁⋯wₙ · x`, multiplying letters in from the right.
    pub fn word_times(&mut self, word: &[Generator], x: &UeaElement) -> Result<UeaElement> {
        let mut acc = x.clone();
        for &g in word.iter().rev() {
            acc = self.left_mul(g, &acc)?;
        }
        Ok(acc)
    }

    pub fn word(&mut self, word: &[Generator]) -> Result<UeaElement> {
        self.word_times(word, &UeaElement::one())
    }

    pub fn product(&mut self, x: &UeaElement, y: &UeaElement) -> Result<UeaElement> {
        let mut out = UeaElement::zero();
        for (m, c) in x.terms() {
            let part = self.word_times(&m.to_word(), y)?;
            out.add_scaled(&part, c);
        }
        if out.len() > self.term_limit {
            return Err(Error::TermLimit(self.term_limit));
        }
        Ok(out)
    }

    pub fn omega(&mut self, x: &UeaElement) -> Result<UeaElement> {
        let mut out = UeaElement::zero();
        for (m, c) in x.terms() {
            let reversed: Vec<Generator> = m.to_word().into_iter().rev().map(Generator::omega).collect();
            let part = self.word(&reversed)?;
            out.add_scaled(&part, c);
        }
        Ok(out)
    }
}

/// `x · y` in PBW normal form.
pub fn normal_order_product(x: &UeaElement, y: &UeaElement) -> UeaElement {
    NormalOrderer::new().product(x, y).expect("no term limit")
}

/// The product of the letters of `word`, in normal form.
pub fn normal_order_word(word: &[Generator]) -> UeaElement {
    NormalOrderer::new().word(word).expect("no term limit")
}

/// The anti-involution `ω(L_j) = L_{−j}`, `ω(C) = C`, `ω(uv) = ω(v)ω(u)`.
pub fn omega(x: &UeaElement) -> UeaElement {
    NormalOrderer::new().omega(x).expect("no term limit")
}
