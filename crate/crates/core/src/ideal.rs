//! Ideals of the supported rings and colon/intersection arithmetic.
//!
//! Every ideal handled here has a normal form `(d, offset, W)`:
//!
//! * over ℤ it is `dℤ` (`d ≥ 0`);
//! * over ℤ/n it is `⟨d⟩` with `d | n` (`d = n` is the zero ideal);
//! * over the idealization it is `{(md, m·offset + w) : m ∈ ℤ, w ∈ W}` where
//!   `W` is the ideal's intersection with `0(+)(ℤ/2ℤ)^(ℕ)`, either
//!   finite-dimensional or everything. An odd `d` forces `W` to be everything.
//!
//! The normal form decides equality and gives the canonical generators used
//! for printing.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::f2::SeqSpan;
use crate::linalg::int::echelon;
use crate::module::{ModuleError, Submodule};
use crate::ring::{Element, F2Seq, Ring, Vector};
use crate::solve::Solution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("component index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("ideals over different rings")]
    RingMismatch,
    #[error("split descriptors only exist over the idealization")]
    SplitOutsideIdealization,
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// A finitely generated ideal, canonicalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinIdeal {
    ring: Ring,
    gens: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum F2Part {
    Full,
    SpanOf(Vec<F2Seq>),
}

/// An ideal that may fail to be finitely generated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuredIdeal {
    Zero(Ring),
    FinGen(FinIdeal),
    /// `{(a, w) : a ∈ zPart·ℤ, w ∈ f2Part}`, idealization only.
    Split {
        z_part: BigInt,
        f2_part: F2Part,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum SeqPart {
    Full,
    Span(SeqSpan),
}

impl SeqPart {
    fn contains(&self, v: &F2Seq) -> bool {
        match self {
            SeqPart::Full => true,
            SeqPart::Span(s) => s.contains(v),
        }
    }

    fn reduce(&self, v: &F2Seq) -> F2Seq {
        match self {
            SeqPart::Full => F2Seq::new(),
            SeqPart::Span(s) => s.reduce(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct NormalForm {
    ring: Ring,
    d: BigInt,
    offset: F2Seq,
    seq: SeqPart,
}

impl NormalForm {
    fn canonical(ring: &Ring, d: BigInt, offset: F2Seq, seq: SeqPart) -> NormalForm {
        let seq = if d.is_odd() { SeqPart::Full } else { seq };
        let offset = if d.is_zero() {
            F2Seq::new()
        } else {
            seq.reduce(&offset)
        };
        NormalForm {
            ring: ring.clone(),
            d,
            offset,
            seq,
        }
    }

    fn unit(ring: &Ring) -> NormalForm {
        match ring {
            Ring::IdealizationZF2 => {
                NormalForm::canonical(ring, BigInt::one(), F2Seq::new(), SeqPart::Full)
            }
            _ => NormalForm::canonical(
                ring,
                BigInt::one(),
                F2Seq::new(),
                SeqPart::Span(SeqSpan::new()),
            ),
        }
    }

    fn from_submodule(m: &Submodule) -> NormalForm {
        assert_eq!(m.rank(), 1, "ideals are rank-one submodules");
        let ring = m.ring();
        let ints: Vec<Vec<BigInt>> = m
            .gens()
            .iter()
            .map(|g| vec![g[0].int_part().clone()])
            .collect();
        match ring {
            Ring::Integers => {
                let d = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(&v[0]));
                NormalForm::canonical(ring, d, F2Seq::new(), SeqPart::Span(SeqSpan::new()))
            }
            Ring::ModularIntegers(n) => {
                let d = ints.iter().fold(n.clone(), |acc, v| acc.gcd(&v[0]));
                NormalForm::canonical(ring, d, F2Seq::new(), SeqPart::Span(SeqSpan::new()))
            }
            Ring::IdealizationZF2 => {
                let e = echelon(&ints, 1);
                let d = if e.rank() == 0 {
                    BigInt::zero()
                } else {
                    e.rows[0][0].clone()
                };
                let seqs: Vec<&F2Seq> = m.gens().iter().map(|g| g[0].seq_part().unwrap()).collect();
                let combine = |coeffs: &[BigInt]| {
                    let mut s = F2Seq::new();
                    for (c, b) in coeffs.iter().zip(&seqs) {
                        if c.is_odd() {
                            s.add_assign(b);
                        }
                    }
                    s
                };
                let full = !m.is_finitely_generated() || ints.iter().any(|v| v[0].is_odd());
                let seq = if full {
                    SeqPart::Full
                } else {
                    let span: Vec<F2Seq> = e.kernel().iter().map(|l| combine(l)).collect();
                    SeqPart::Span(SeqSpan::from_vectors(&span))
                };
                let offset = if d.is_zero() {
                    F2Seq::new()
                } else {
                    combine(&e.solve(std::slice::from_ref(&d)).unwrap())
                };
                NormalForm::canonical(ring, d, offset, seq)
            }
        }
    }

    fn is_zero(&self) -> bool {
        match &self.ring {
            Ring::ModularIntegers(n) => &self.d == n,
            _ => self.d.is_zero() && matches!(&self.seq, SeqPart::Span(s) if s.dim() == 0),
        }
    }

    fn contains(&self, x: &Element) -> bool {
        match (&self.ring, x) {
            (Ring::Integers, Element::Int(v)) => {
                if self.d.is_zero() {
                    v.is_zero()
                } else {
                    v.is_multiple_of(&self.d)
                }
            }
            (Ring::ModularIntegers(_), Element::Res(v)) => v.is_multiple_of(&self.d),
            (Ring::IdealizationZF2, Element::Pair(a, w)) => {
                if self.d.is_zero() {
                    return a.is_zero() && self.seq.contains(w);
                }
                let (m, rem) = a.div_rem(&self.d);
                if !rem.is_zero() {
                    return false;
                }
                let rest = if m.is_odd() {
                    w.add(&self.offset)
                } else {
                    w.clone()
                };
                self.seq.contains(&rest)
            }
            _ => false,
        }
    }

    fn to_submodule(&self) -> Submodule {
        let ring = &self.ring;
        match ring {
            Ring::Integers | Ring::ModularIntegers(_) => {
                let gens = if self.is_zero() {
                    vec![]
                } else {
                    vec![vec![ring.from_int(self.d.clone())]]
                };
                Submodule::from_parts(ring, 1, gens, vec![])
            }
            Ring::IdealizationZF2 => {
                let mut gens = Vec::new();
                if !self.d.is_zero() {
                    gens.push(vec![Element::Pair(self.d.clone(), self.offset.clone())]);
                }
                let dirs = match &self.seq {
                    SeqPart::Full => vec![vec![true]],
                    SeqPart::Span(s) => {
                        gens.extend(
                            s.basis()
                                .iter()
                                .map(|b| vec![Element::Pair(BigInt::zero(), b.clone())]),
                        );
                        vec![]
                    }
                };
                Submodule::from_parts(ring, 1, gens, dirs)
            }
        }
    }

    fn to_structured(&self) -> StructuredIdeal {
        let ring = &self.ring;
        if self.is_zero() {
            return StructuredIdeal::Zero(ring.clone());
        }
        if ring.is_idealization() && self.d.is_even() && self.seq == SeqPart::Full {
            return StructuredIdeal::Split {
                z_part: self.d.clone(),
                f2_part: F2Part::Full,
            };
        }
        let gens = self
            .to_submodule()
            .gens()
            .iter()
            .map(|g| g[0].clone())
            .collect();
        StructuredIdeal::FinGen(FinIdeal {
            ring: ring.clone(),
            gens,
        })
    }

    fn intersect(&self, other: &NormalForm) -> NormalForm {
        let ring = &self.ring;
        match ring {
            Ring::Integers | Ring::ModularIntegers(_) => NormalForm::canonical(
                ring,
                self.d.lcm(&other.d),
                F2Seq::new(),
                SeqPart::Span(SeqSpan::new()),
            ),
            Ring::IdealizationZF2 => {
                let seq = match (&self.seq, &other.seq) {
                    (SeqPart::Full, s) | (s, SeqPart::Full) => s.clone(),
                    (SeqPart::Span(a), SeqPart::Span(b)) => SeqPart::Span(a.intersection(b)),
                };
                let l = self.d.lcm(&other.d);
                if l.is_zero() {
                    return NormalForm::canonical(ring, l, F2Seq::new(), seq);
                }
                // At first coordinate l the two cosets are m1·o1 + W1 and m2·o2 + W2.
                let c1 = if (&l / &self.d).is_odd() {
                    self.offset.clone()
                } else {
                    F2Seq::new()
                };
                let c2 = if (&l / &other.d).is_odd() {
                    other.offset.clone()
                } else {
                    F2Seq::new()
                };
                let diff = c1.add(&c2);
                let meet = match (&self.seq, &other.seq) {
                    (SeqPart::Full, _) => Some(c2.clone()),
                    (_, SeqPart::Full) => Some(c1.clone()),
                    (SeqPart::Span(a), SeqPart::Span(b)) => {
                        a.decompose(b, &diff).map(|(x, _)| c1.add(&x))
                    }
                };
                match meet {
                    Some(offset) => NormalForm::canonical(ring, l, offset, seq),
                    None => NormalForm::canonical(ring, l * 2, F2Seq::new(), seq),
                }
            }
        }
    }

    fn colon(&self, a: &Element) -> NormalForm {
        let ring = &self.ring;
        match ring {
            Ring::Integers => {
                let c = a.int_part();
                if self.d.is_zero() && c.is_zero() {
                    return NormalForm::unit(ring);
                }
                let g = self.d.gcd(c);
                NormalForm::canonical(
                    ring,
                    &self.d / g,
                    F2Seq::new(),
                    SeqPart::Span(SeqSpan::new()),
                )
            }
            Ring::ModularIntegers(_) => {
                let g = self.d.gcd(a.int_part());
                NormalForm::canonical(
                    ring,
                    &self.d / g,
                    F2Seq::new(),
                    SeqPart::Span(SeqSpan::new()),
                )
            }
            Ring::IdealizationZF2 => {
                let (c, e) = (a.int_part(), a.seq_part().unwrap());
                if c.is_zero() {
                    // r·(0, e) = (0, x̄e): only the parity of r's first coordinate matters.
                    return if self.seq.contains(e) {
                        NormalForm::unit(ring)
                    } else {
                        NormalForm::canonical(ring, BigInt::from(2), F2Seq::new(), SeqPart::Full)
                    };
                }
                let (x0, m0) = if self.d.is_zero() {
                    (BigInt::zero(), BigInt::zero())
                } else {
                    let x0 = &self.d / self.d.gcd(c);
                    let m0 = &x0 * c / &self.d;
                    (x0, m0)
                };
                let mut t = F2Seq::new();
                if x0.is_odd() {
                    t.add_assign(e);
                }
                if m0.is_odd() {
                    t.add_assign(&self.offset);
                }
                if c.is_even() {
                    let z = if self.seq.contains(&t) { x0 } else { x0 * 2 };
                    NormalForm::canonical(ring, z, F2Seq::new(), SeqPart::Full)
                } else {
                    NormalForm::canonical(ring, x0, t, self.seq.clone())
                }
            }
        }
    }
}

impl FinIdeal {
    /// The ideal generated by `gens`, canonicalized.
    pub fn new(ring: &Ring, gens: Vec<Element>) -> Result<FinIdeal, IdealError> {
        let m = Submodule::new(ring, 1, gens.into_iter().map(|g| vec![g]).collect())?;
        match NormalForm::from_submodule(&m).to_structured() {
            StructuredIdeal::Zero(r) => Ok(FinIdeal {
                ring: r,
                gens: vec![],
            }),
            StructuredIdeal::FinGen(i) => Ok(i),
            StructuredIdeal::Split { .. } => unreachable!("finitely many generators"),
        }
    }

    pub fn zero(ring: &Ring) -> FinIdeal {
        FinIdeal {
            ring: ring.clone(),
            gens: vec![],
        }
    }

    pub fn unit(ring: &Ring) -> FinIdeal {
        FinIdeal::new(ring, vec![ring.one()]).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    pub fn to_submodule(&self) -> Submodule {
        Submodule::from_parts(
            &self.ring,
            1,
            self.gens.iter().map(|g| vec![g.clone()]).collect(),
            vec![],
        )
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}

impl StructuredIdeal {
    pub fn from_submodule(m: &Submodule) -> StructuredIdeal {
        NormalForm::from_submodule(m).to_structured()
    }

    pub fn split(
        ring: &Ring,
        z_part: BigInt,
        f2_part: F2Part,
    ) -> Result<StructuredIdeal, IdealError> {
        if !ring.is_idealization() {
            return Err(IdealError::SplitOutsideIdealization);
        }
        let (gens, dirs) = match f2_part {
            F2Part::Full => (
                vec![vec![Element::Pair(z_part, F2Seq::new())]],
                vec![vec![true]],
            ),
            F2Part::SpanOf(vs) => {
                let mut g = vec![vec![Element::Pair(z_part, F2Seq::new())]];
                g.extend(
                    vs.into_iter()
                        .map(|v| vec![Element::Pair(BigInt::zero(), v)]),
                );
                (g, vec![])
            }
        };
        Ok(StructuredIdeal::from_submodule(&Submodule::from_parts(
            ring, 1, gens, dirs,
        )))
    }

    pub fn ring(&self) -> Ring {
        match self {
            StructuredIdeal::Zero(r) => r.clone(),
            StructuredIdeal::FinGen(i) => i.ring.clone(),
            StructuredIdeal::Split { .. } => Ring::IdealizationZF2,
        }
    }

    pub fn to_submodule(&self) -> Submodule {
        match self {
            StructuredIdeal::Zero(r) => Submodule::zero(r, 1),
            StructuredIdeal::FinGen(i) => i.to_submodule(),
            StructuredIdeal::Split { z_part, f2_part } => {
                let ring = Ring::IdealizationZF2;
                let mut gens = vec![vec![Element::Pair(z_part.clone(), F2Seq::new())]];
                let dirs = match f2_part {
                    F2Part::Full => vec![vec![true]],
                    F2Part::SpanOf(vs) => {
                        gens.extend(
                            vs.iter()
                                .map(|v| vec![Element::Pair(BigInt::zero(), v.clone())]),
                        );
                        vec![]
                    }
                };
                Submodule::from_parts(&ring, 1, gens, dirs)
            }
        }
    }

    fn normal_form(&self) -> NormalForm {
        NormalForm::from_submodule(&self.to_submodule())
    }

    pub fn is_finitely_generated(&self) -> bool {
        !matches!(
            self,
            StructuredIdeal::Split {
                f2_part: F2Part::Full,
                ..
            }
        )
    }

    pub fn is_zero(&self) -> bool {
        self.normal_form().is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&self.ring().one())
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.normal_form().contains(x)
    }

    pub fn is_subset_of(&self, other: &StructuredIdeal) -> bool {
        other.to_submodule().contains(&self.to_submodule())
    }

    /// The finitely generated ideal, when there is one.
    pub fn as_fin_ideal(&self) -> Option<FinIdeal> {
        match self {
            StructuredIdeal::Zero(r) => Some(FinIdeal::zero(r)),
            StructuredIdeal::FinGen(i) => Some(i.clone()),
            StructuredIdeal::Split { .. } => None,
        }
    }
}

impl From<FinIdeal> for StructuredIdeal {
    fn from(i: FinIdeal) -> StructuredIdeal {
        if i.is_zero() {
            StructuredIdeal::Zero(i.ring)
        } else {
            StructuredIdeal::FinGen(i)
        }
    }
}

/// Membership answer: a recombination witness for finitely generated ideals,
/// or a plain decision for descriptors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Witness(Solution),
    Member,
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        !matches!(self, Membership::NotMember)
    }
}

pub fn member(ideal: &StructuredIdeal, x: &Element) -> Membership {
    match ideal {
        StructuredIdeal::Zero(r) => {
            if r.is_zero(x) {
                Membership::Witness(Solution {
                    coeffs: vec![],
                    seq_coeffs: vec![],
                })
            } else {
                Membership::NotMember
            }
        }
        StructuredIdeal::FinGen(i) => match i.to_submodule().member(std::slice::from_ref(x)) {
            Some(sol) => Membership::Witness(sol),
            None => Membership::NotMember,
        },
        StructuredIdeal::Split { .. } => {
            if ideal.contains(x) {
                Membership::Member
            } else {
                Membership::NotMember
            }
        }
    }
}

pub fn intersect(a: &StructuredIdeal, b: &StructuredIdeal) -> StructuredIdeal {
    assert_eq!(a.ring(), b.ring(), "intersection across rings");
    a.normal_form().intersect(&b.normal_form()).to_structured()
}

/// `(I : a) = {r : r·a ∈ I}`.
pub fn colon(ideal: &StructuredIdeal, a: &Element) -> StructuredIdeal {
    ideal.normal_form().colon(a).to_structured()
}

/// `(0 : x)` for `x ∈ Rⁿ`, as the intersection of the coordinate annihilators.
pub fn annihilator(ring: &Ring, x: &[Element]) -> StructuredIdeal {
    assert!(!x.is_empty(), "annihilator of an empty vector");
    let zero = StructuredIdeal::Zero(ring.clone());
    x.iter()
        .map(|xi| colon(&zero, xi))
        .reduce(|acc, c| intersect(&acc, &c))
        .unwrap()
}

/// `(N : m) = {r : r·m ∈ N}`, read off the relations of `[m | N]`.
pub fn submodule_colon(n: &Submodule, m: &[Element]) -> StructuredIdeal {
    assert_eq!(
        m.len(),
        n.rank(),
        "vector length must match the module rank"
    );
    // N's sequence directions enter as sequence columns, so their
    // coefficients range over (0, w) only.
    let mut regular = vec![m.to_vec()];
    regular.extend(n.gens().iter().cloned());
    let rel = crate::solve::relations(n.ring(), n.rank(), &regular, n.seq_dirs());
    let width = regular.len() + n.seq_dirs().len();
    let rel = Submodule::from_parts(n.ring(), width, rel.gens, rel.seq_dirs);
    StructuredIdeal::from_submodule(&rel.project(&[0]))
}

/// The ideal of `i`-th coordinates of `N`'s generators (`i` is 1-based).
pub fn component_projection(n: &Submodule, i: usize) -> Result<FinIdeal, IdealError> {
    if i == 0 || i > n.rank() {
        return Err(IdealError::IndexOutOfRange {
            index: i,
            rank: n.rank(),
        });
    }
    FinIdeal::new(
        n.ring(),
        n.gens().iter().map(|g| g[i - 1].clone()).collect(),
    )
}

/// `⋂_i (proj_i(N) : m_i)`: the coordinatewise colon, audited against
/// [`submodule_colon`] rather than trusted.
pub fn componentwise_colon(n: &Submodule, m: &[Element]) -> StructuredIdeal {
    assert_eq!(
        m.len(),
        n.rank(),
        "vector length must match the module rank"
    );
    let mut acc: Option<StructuredIdeal> = None;
    for (i, mi) in m.iter().enumerate() {
        let proj: StructuredIdeal = {
            let mut sub = Submodule::from_parts(
                n.ring(),
                1,
                n.gens().iter().map(|g| vec![g[i].clone()]).collect(),
                vec![],
            );
            if n.seq_dirs().iter().any(|u| u[i]) {
                sub = sub.sum(&Submodule::from_parts(
                    n.ring(),
                    1,
                    vec![],
                    vec![vec![true]],
                ));
            }
            StructuredIdeal::from_submodule(&sub)
        };
        let c = colon(&proj, mi);
        acc = Some(match acc {
            None => c,
            Some(a) => intersect(&a, &c),
        });
    }
    acc.expect("rank at least one")
}

pub fn sum(a: &StructuredIdeal, b: &StructuredIdeal) -> StructuredIdeal {
    StructuredIdeal::from_submodule(&a.to_submodule().sum(&b.to_submodule()))
}

pub fn scale(ideal: &StructuredIdeal, s: &Element) -> StructuredIdeal {
    StructuredIdeal::from_submodule(&ideal.to_submodule().scale(s))
}

/// Multiplies out a generator list, e.g. `s·⟨gens⟩`.
pub fn scale_gens(ring: &Ring, s: &Element, gens: &[Vector]) -> Vec<Vector> {
    gens.iter().map(|g| ring.vec_scale(s, g)).collect()
}

impl fmt::Display for FinIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "<0>");
        }
        if self.gens.len() == 1 && self.gens[0] == self.ring.one() {
            return write!(f, "<1>");
        }
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Display for F2Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            F2Part::Full => write!(f, "full"),
            F2Part::SpanOf(vs) => {
                write!(f, "[")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for StructuredIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuredIdeal::Zero(_) => write!(f, "<0>"),
            StructuredIdeal::FinGen(i) => write!(f, "{i}"),
            StructuredIdeal::Split { z_part, f2_part } => write!(f, "Split({z_part}, {f2_part})"),
        }
    }
}
