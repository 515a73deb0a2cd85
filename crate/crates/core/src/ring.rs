//! The three computable rings: ℤ, ℤ/n and the idealization ℤ(+)(ℤ/2ℤ)^(ℕ).
//!
//! Elements are canonical on construction, so `==` on [`Element`] is ring
//! equality. Every operation takes the ring as context; mixing an element of
//! one ring with another is a [`RingError::Mismatch`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("element {element} does not belong to ring {ring}")]
    Mismatch { ring: String, element: String },
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(BigInt),
    #[error("unknown ring '{0}' (expected z, zmod:N or idealization)")]
    UnknownRing(String),
}

/// A finitely supported sequence over the two-element field, stored as its
/// support. Addition is symmetric difference.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Seq(BTreeSet<u64>);

impl F2Seq {
    pub fn new() -> Self {
        F2Seq(BTreeSet::new())
    }

    pub fn unit(index: u64) -> Self {
        F2Seq(BTreeSet::from([index]))
    }

    /// Builds the sum of the unit vectors at `indices`; repeated indices cancel.
    pub fn from_indices<I: IntoIterator<Item = u64>>(indices: I) -> Self {
        let mut s = F2Seq::new();
        for i in indices {
            s.toggle(i);
        }
        s
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: u64) -> bool {
        self.0.contains(&index)
    }

    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.0.iter().next_back().copied()
    }

    pub fn toggle(&mut self, index: u64) {
        if !self.0.remove(&index) {
            self.0.insert(index);
        }
    }

    pub fn add_assign(&mut self, other: &F2Seq) {
        for i in other.indices() {
            self.toggle(i);
        }
    }

    pub fn add(&self, other: &F2Seq) -> F2Seq {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }
}

impl fmt::Display for F2Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    ModularIntegers(BigInt),
    /// ℤ(+)(ℤ/2ℤ)^(ℕ) with (a,b)(c,d) = (ac, ad + cb).
    IdealizationZF2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Int(BigInt),
    Res(BigInt),
    Pair(BigInt, F2Seq),
}

pub type Vector = Vec<Element>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElemOp {
    Add,
    Mul,
    Neg,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpResult {
    Element(Element),
    Bool(bool),
}

impl Element {
    pub fn pair<I: IntoIterator<Item = u64>>(a: impl Into<BigInt>, support: I) -> Element {
        Element::Pair(a.into(), F2Seq::from_indices(support))
    }

    /// The integer part: the value over ℤ and ℤ/n, the first coordinate of a pair.
    pub fn int_part(&self) -> &BigInt {
        match self {
            Element::Int(v) | Element::Res(v) | Element::Pair(v, _) => v,
        }
    }

    /// The (ℤ/2ℤ)^(ℕ) coordinate of a pair, empty for the other rings.
    pub fn seq_part(&self) -> Option<&F2Seq> {
        match self {
            Element::Pair(_, b) => Some(b),
            _ => None,
        }
    }

    pub fn int_part_is_odd(&self) -> bool {
        self.int_part().is_odd()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) | Element::Res(v) => write!(f, "{v}"),
            Element::Pair(a, b) => write!(f, "({a}; {b})"),
        }
    }
}

impl Ring {
    pub fn modular(n: impl Into<BigInt>) -> Result<Ring, RingError> {
        let n = n.into();
        if n < BigInt::from(2) {
            return Err(RingError::InvalidModulus(n));
        }
        Ok(Ring::ModularIntegers(n))
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            Ring::ModularIntegers(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_idealization(&self) -> bool {
        matches!(self, Ring::IdealizationZF2)
    }

    /// The image of an integer in this ring.
    pub fn from_int(&self, v: impl Into<BigInt>) -> Element {
        let v = v.into();
        match self {
            Ring::Integers => Element::Int(v),
            Ring::ModularIntegers(n) => Element::Res(v.mod_floor(n)),
            Ring::IdealizationZF2 => Element::Pair(v, F2Seq::new()),
        }
    }

    pub fn zero(&self) -> Element {
        self.from_int(0)
    }

    pub fn one(&self) -> Element {
        self.from_int(1)
    }

    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (Ring::Integers, Element::Int(_)) => true,
            (Ring::ModularIntegers(n), Element::Res(v)) => !v.is_negative() && v < n,
            (Ring::IdealizationZF2, Element::Pair(..)) => true,
            _ => false,
        }
    }

    pub fn check(&self, x: &Element) -> Result<(), RingError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(RingError::Mismatch {
                ring: self.to_string(),
                element: x.to_string(),
            })
        }
    }

    pub fn is_zero(&self, x: &Element) -> bool {
        match x {
            Element::Int(v) | Element::Res(v) => v.is_zero(),
            Element::Pair(a, b) => a.is_zero() && b.is_empty(),
        }
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        match (self, x, y) {
            (Ring::Integers, Element::Int(a), Element::Int(b)) => Element::Int(a + b),
            (Ring::ModularIntegers(n), Element::Res(a), Element::Res(b)) => {
                Element::Res((a + b).mod_floor(n))
            }
            (Ring::IdealizationZF2, Element::Pair(a, b), Element::Pair(c, d)) => {
                Element::Pair(a + c, b.add(d))
            }
            _ => panic!("ring mismatch in add: {x} + {y} over {self}"),
        }
    }

    pub fn neg(&self, x: &Element) -> Element {
        match (self, x) {
            (Ring::Integers, Element::Int(a)) => Element::Int(-a),
            (Ring::ModularIntegers(n), Element::Res(a)) => Element::Res((-a).mod_floor(n)),
            // -b = b over F₂
            (Ring::IdealizationZF2, Element::Pair(a, b)) => Element::Pair(-a, b.clone()),
            _ => panic!("ring mismatch in neg: {x} over {self}"),
        }
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        match (self, x, y) {
            (Ring::Integers, Element::Int(a), Element::Int(b)) => Element::Int(a * b),
            (Ring::ModularIntegers(n), Element::Res(a), Element::Res(b)) => {
                Element::Res((a * b).mod_floor(n))
            }
            (Ring::IdealizationZF2, Element::Pair(a, b), Element::Pair(c, d)) => {
                let mut seq = F2Seq::new();
                if a.is_odd() {
                    seq.add_assign(d);
                }
                if c.is_odd() {
                    seq.add_assign(b);
                }
                Element::Pair(a * c, seq)
            }
            _ => panic!("ring mismatch in mul: {x} * {y} over {self}"),
        }
    }

    pub fn pow(&self, x: &Element, exp: u32) -> Element {
        let mut acc = self.one();
        for _ in 0..exp {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Checked entry point for a single binary operation.
    pub fn elem_op(&self, op: ElemOp, x: &Element, y: &Element) -> Result<OpResult, RingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(match op {
            ElemOp::Add => OpResult::Element(self.add(x, y)),
            ElemOp::Mul => OpResult::Element(self.mul(x, y)),
            ElemOp::Neg => OpResult::Element(self.neg(x)),
            ElemOp::Eq => OpResult::Bool(x == y),
        })
    }

    pub fn zero_vector(&self, n: usize) -> Vector {
        vec![self.zero(); n]
    }

    pub fn unit_vector(&self, n: usize, i: usize) -> Vector {
        let mut v = self.zero_vector(n);
        v[i] = self.one();
        v
    }

    pub fn is_zero_vector(&self, v: &[Element]) -> bool {
        v.iter().all(|x| self.is_zero(x))
    }

    pub fn vec_add(&self, x: &[Element], y: &[Element]) -> Vector {
        assert_eq!(x.len(), y.len(), "vector length mismatch");
        x.iter().zip(y).map(|(a, b)| self.add(a, b)).collect()
    }

    pub fn vec_neg(&self, x: &[Element]) -> Vector {
        x.iter().map(|a| self.neg(a)).collect()
    }

    pub fn vec_scale(&self, r: &Element, x: &[Element]) -> Vector {
        x.iter().map(|a| self.mul(r, a)).collect()
    }

    /// Σ coeffs[i] · gens[i] in Rⁿ.
    pub fn combine(&self, coeffs: &[Element], gens: &[Vector], n: usize) -> Vector {
        assert_eq!(coeffs.len(), gens.len(), "coefficient count mismatch");
        let mut acc = self.zero_vector(n);
        for (c, g) in coeffs.iter().zip(gens) {
            if self.is_zero(c) {
                continue;
            }
            acc = self.vec_add(&acc, &self.vec_scale(c, g));
        }
        acc
    }

    /// Coordinatewise parity of the integer parts (only meaningful for the
    /// idealization, where it drives the (ℤ/2ℤ)^(ℕ) component).
    pub fn parity_vector(&self, v: &[Element]) -> Vec<bool> {
        v.iter().map(Element::int_part_is_odd).collect()
    }

    /// The vector with integer parts `bits` (0/1) and empty sequence parts.
    pub fn lift_bits(&self, bits: &[bool]) -> Vector {
        bits.iter()
            .map(|&b| self.from_int(if b { 1 } else { 0 }))
            .collect()
    }

    /// Lifts an element to ℤ: the value, the residue in `[0, n)`, or the first coordinate.
    pub fn lift_int(&self, x: &Element) -> BigInt {
        x.int_part().clone()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "z"),
            Ring::ModularIntegers(n) => write!(f, "zmod:{n}"),
            Ring::IdealizationZF2 => write!(f, "idealization"),
        }
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Ring, RingError> {
        let t = s.trim();
        match t {
            "z" | "Z" => Ok(Ring::Integers),
            "idealization" => Ok(Ring::IdealizationZF2),
            _ => match t.strip_prefix("zmod:") {
                Some(n) => {
                    let n: BigInt = n
                        .trim()
                        .parse()
                        .map_err(|_| RingError::UnknownRing(s.to_string()))?;
                    Ring::modular(n)
                }
                None => Err(RingError::UnknownRing(s.to_string())),
            },
        }
    }
}
