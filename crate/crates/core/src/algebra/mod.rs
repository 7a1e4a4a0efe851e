//! The Virasoro Lie algebra and its universal enveloping algebra.
//!
//! Basis `{L_i : i ∈ ℤ} ∪ {C}` with
//! `[L_i, L_j] = (j − i) L_{i+j} + ((i³ − i)/12) δ_{i,−j} C` and `C` central.

mod pbw;
mod text;

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

pub use pbw::{
    degree_of, normal_order_product, normal_order_word, omega, NormalOrderer, PbwMonomial,
    UeaElement, DEFAULT_WORD_CAP,
};
pub use text::{parse_lie_element, parse_uea_element, parse_words};

/// A basis element of Vir.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    L(i64),
    Central,
}

impl Generator {
    /// Position in the PBW order: `… L-2 < L-1 < L0 < C < L1 < L2 …`.
    pub(crate) fn pbw_key(self) -> i64 {
        match self {
            Generator::L(i) => 2 * i,
            Generator::Central => 1,
        }
    }

    /// Weight contributed to a monomial (the `i` of `L_i`, zero for `C`).
    pub fn degree(self) -> i64 {
        match self {
            Generator::L(i) => i,
            Generator::Central => 0,
        }
    }

    /// The image under ω: `L_j ↦ L_{−j}`, `C ↦ C`.
    pub fn omega(self) -> Generator {
        match self {
            Generator::L(i) => Generator::L(-i),
            Generator::Central => Generator::Central,
        }
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pbw_key().cmp(&other.pbw_key())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::L(i) => write!(f, "L{i}"),
            Generator::Central => write!(f, "C"),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite linear combination of basis elements of Vir; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LieElement {
    terms: BTreeMap<Generator, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: Generator) -> Self {
        Self::term(g, Scalar::one())
    }

    pub fn l(i: i64) -> Self {
        Self::basis(Generator::L(i))
    }

    pub fn central() -> Self {
        Self::basis(Generator::Central)
    }

    pub fn term(g: Generator, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(g, c);
        e
    }

    pub fn add_term(&mut self, g: Generator, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Generator, &Scalar)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn coeff(&self, g: Generator) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (g, x) in self.terms() {
            out.add_term(g, x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, x) in other.terms() {
            out.add_term(g, x.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// True if every term is some `L_i` with `i` in `range` (the subalgebras
    /// `Vir_{[i,j]}`, `Vir_±`); the central element never belongs.
    pub fn in_index_range(&self, range: impl std::ops::RangeBounds<i64>) -> bool {
        self.terms().all(|(g, _)| matches!(g, Generator::L(i) if range.contains(&i)))
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (g, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[g, h]` for basis elements.
pub fn bracket_basis(g: Generator, h: Generator) -> LieElement {
    match (g, h) {
        (Generator::L(i), Generator::L(j)) => {
            let mut out = LieElement::term(Generator::L(i + j), Scalar::from_int(j - i));
            if i == -j {
                let central = Scalar::ratio(i * i * i - i, 12);
                out.add_term(Generator::Central, central);
            }
            out
        }
        _ => LieElement::zero(),
    }
}

/// The bilinear extension of [`bracket_basis`].
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (g, a) in x.terms() {
        for (h, b) in y.terms() {
            let ab = a * b;
            for (k, c) in bracket_basis(g, h).terms() {
                out.add_term(k, c * &ab);
            }
        }
    }
    out
}
