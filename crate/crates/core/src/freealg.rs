//! Free associative algebras over Q or Q(i).
//!
//! A [`FreeAlgebra`] is a named list of noncommuting generators over a ground ring. A
//! [`Word`] is a product of generators (by index); words are ordered degree-first, then
//! lexicographically by generator index ("deglex"), which is the monomial order every
//! canonical form in this crate refers to. An [`Element`] is a finite Q(i)-linear
//! combination of words kept in a sorted map, so equal elements have identical
//! representations.
//!
//! Multiplication is plain concatenation extended bilinearly — no relations at this
//! layer. Rewriting modulo relations lives in [`crate::rewrite`] and its clients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{rational_string, Ring, Scalar};

/// A free associative algebra: a ground ring and an ordered list of generator names.
#[derive(Debug)]
pub struct FreeAlgebra {
    name: String,
    ring: Ring,
    generators: Vec<String>,
    index: HashMap<String, u32>,
}

impl FreeAlgebra {
    /// Builds an algebra handle. Generator names must be nonempty, unique, must start
    /// with a letter or underscore, and must not shadow the literal `i`.
    pub fn new(name: impl Into<String>, ring: Ring, generators: &[&str]) -> Result<Arc<Self>> {
        let name = name.into();
        let mut index = HashMap::new();
        let mut stored = Vec::with_capacity(generators.len());
        for (pos, gen) in generators.iter().enumerate() {
            let valid = !gen.is_empty()
                && gen.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && gen.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidPresentation(format!(
                    "`{gen}` is not a valid generator name"
                )));
            }
            if *gen == "i" {
                return Err(Error::InvalidPresentation(
                    "generator name `i` would shadow the imaginary unit".into(),
                ));
            }
            if index.insert(gen.to_string(), pos as u32).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{gen}`")));
            }
            stored.push(gen.to_string());
        }
        Ok(Arc::new(FreeAlgebra { name, ring, generators: stored, index }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_name(&self, id: u32) -> &str {
        &self.generators[id as usize]
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_id(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    /// Two handles are compatible when ring and generator lists agree (names of the
    /// algebras may differ; elements then live in the same free ring).
    pub fn compatible(&self, other: &FreeAlgebra) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

/// A product of generators, stored as indices into the owning algebra.
///
/// `Ord` is the deglex order: shorter words first, ties broken lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn single(gen: u32) -> Self {
        Word(vec![gen])
    }

    pub fn from_letters(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Renders the word against an algebra's names, grouping runs as powers.
    pub fn render(&self, algebra: &FreeAlgebra) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut pieces: Vec<String> = Vec::new();
        let mut run_letter = self.0[0];
        let mut run_len = 1usize;
        let flush = |pieces: &mut Vec<String>, letter: u32, len: usize| {
            let name = algebra.generator_name(letter);
            if len == 1 {
                pieces.push(name.to_string());
            } else {
                pieces.push(format!("{name}^{len}"));
            }
        };
        for &letter in &self.0[1..] {
            if letter == run_letter {
                run_len += 1;
            } else {
                flush(&mut pieces, run_letter, run_len);
                run_letter = letter;
                run_len = 1;
            }
        }
        flush(&mut pieces, run_letter, run_len);
        pieces.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of words with exact coefficients.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: Arc<FreeAlgebra>,
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero(algebra: &Arc<FreeAlgebra>) -> Self {
        Element { algebra: Arc::clone(algebra), terms: BTreeMap::new() }
    }

    pub fn one(algebra: &Arc<FreeAlgebra>) -> Self {
        Element::scalar(algebra, Scalar::one(algebra.ring()))
    }

    /// A scalar multiple of the empty word. The scalar's ring must match the
    /// algebra's; a rational scalar embeds into a Q(i) algebra, anything else panics.
    pub fn scalar(algebra: &Arc<FreeAlgebra>, value: Scalar) -> Self {
        let mut e = Element::zero(algebra);
        if value.ring() != algebra.ring() {
            // A Q scalar promoted into a Q(i) algebra is harmless and unambiguous.
            if value.ring() == Ring::Rational && value.is_real() {
                let promoted = Scalar::gaussian(value.re().clone(), value.im().clone());
                if !promoted.is_zero() {
                    e.terms.insert(Word::one(), promoted);
                }
                return e;
            }
            panic!("scalar ring {} does not embed in algebra ring {}", value.ring(), algebra.ring());
        }
        if !value.is_zero() {
            e.terms.insert(Word::one(), value);
        }
        e
    }

    pub fn generator(algebra: &Arc<FreeAlgebra>, id: u32) -> Self {
        assert!((id as usize) < algebra.generator_count(), "generator index out of range");
        let mut e = Element::zero(algebra);
        e.terms.insert(Word::single(id), Scalar::one(algebra.ring()));
        e
    }

    /// The generator with the given name.
    pub fn generator_named(algebra: &Arc<FreeAlgebra>, name: &str) -> Result<Self> {
        let id = algebra.generator_id(name).ok_or_else(|| Error::UnknownGenerator {
            name: name.to_string(),
            algebra: algebra.name().to_string(),
        })?;
        Ok(Element::generator(algebra, id))
    }

    /// A single word with coefficient one.
    pub fn from_word(algebra: &Arc<FreeAlgebra>, word: Word) -> Self {
        let mut e = Element::zero(algebra);
        e.terms.insert(word, Scalar::one(algebra.ring()));
        e
    }

    pub(crate) fn from_terms(algebra: &Arc<FreeAlgebra>, terms: BTreeMap<Word, Scalar>) -> Self {
        let mut e = Element { algebra: Arc::clone(algebra), terms };
        e.terms.retain(|_, c| !c.is_zero());
        e
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates `(word, coefficient)` in deglex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    /// The coefficient of a word (zero if absent).
    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(|| Scalar::zero(self.algebra.ring()))
    }

    /// The filtration degree: the maximal word length, undefined for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    fn check_compatible(&self, other: &Element) -> Result<()> {
        if self.algebra.compatible(&other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra.name().to_string(),
                right: other.algebra.name().to_string(),
            })
        }
    }

    pub(crate) fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Checked addition; errors when the algebras are incompatible.
    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Checked subtraction; errors when the algebras are incompatible.
    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        Ok(out)
    }

    /// Additive inverse.
    pub fn neg(&self) -> Element {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect();
        Element { algebra: Arc::clone(&self.algebra), terms }
    }

    /// Multiplies every coefficient by a scalar of the algebra's ring.
    pub fn scale(&self, factor: &Scalar) -> Result<Element> {
        if factor.ring() != self.algebra.ring() {
            return Err(Error::RingMismatch { left: factor.ring(), right: self.algebra.ring() });
        }
        if factor.is_zero() {
            return Ok(Element::zero(&self.algebra));
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok((w.clone(), c.mul(factor)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Element::from_terms(&self.algebra, terms))
    }

    /// Checked product (concatenation of words, extended bilinearly).
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = Element::zero(&self.algebra);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Nonnegative integer power.
    pub fn pow(&self, exp: u32) -> Element {
        let mut out = Element::one(&self.algebra);
        for _ in 0..exp {
            out = out.mul(self).expect("power within one algebra");
        }
        out
    }

    /// The commutator `self*other - other*self`.
    pub fn commutator(&self, other: &Element) -> Result<Element> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Applies a scalar map to every coefficient (used for conjugation-type maps).
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Element { algebra: Arc::clone(&self.algebra), terms }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.compatible(&other.algebra) && self.terms == other.terms
    }
}

impl Eq for Element {}

macro_rules! forward_element_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                Element::$method(self, rhs).expect("algebra mismatch (programmer error)")
            }
        }
        impl std::ops::$trait for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

forward_element_binop!(Add, add);
forward_element_binop!(Sub, sub);
forward_element_binop!(Mul, mul);

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}

impl std::ops::Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(&self)
    }
}

/// Canonical rendering: degree-descending, lexicographic-ascending within a degree;
/// coefficient `1` is dropped before a nonempty word, pure-imaginary units print as
/// `i*`, and mixed Gaussian coefficients keep their parenthesised scalar form.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Word, &Scalar)> = self.terms.iter().collect();
        ordered.sort_by(|(wa, _), (wb, _)| {
            wb.degree().cmp(&wa.degree()).then_with(|| wa.letters().cmp(wb.letters()))
        });
        let mut first = true;
        for (word, coeff) in ordered {
            let (negative, body) = term_string(&self.algebra, word, coeff);
            if first {
                if negative {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if negative {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Splits a term into a printed sign and an unsigned body.
fn term_string(algebra: &FreeAlgebra, word: &Word, coeff: &Scalar) -> (bool, String) {
    let word_part = if word.is_empty() { None } else { Some(word.render(algebra)) };
    // Mixed real+imaginary coefficients keep the full parenthesised scalar, unsigned.
    if !coeff.re().is_zero() && !coeff.im().is_zero() {
        let body = match word_part {
            Some(w) => format!("{coeff}*{w}"),
            None => coeff.to_string(),
        };
        return (false, body);
    }
    let (negative, magnitude): (bool, String) = if coeff.im().is_zero() {
        let mag: BigRational = coeff.re().abs();
        (coeff.re().is_negative(), rational_string(&mag))
    } else {
        let mag: BigRational = coeff.im().abs();
        let mag_str =
            if mag.is_one() { "i".to_string() } else { format!("{}*i", rational_string(&mag)) };
        (coeff.im().is_negative(), mag_str)
    };
    let body = match word_part {
        Some(w) => {
            if magnitude == "1" {
                w
            } else {
                format!("{magnitude}*{w}")
            }
        }
        None => magnitude,
    };
    (negative, body)
}

/// Samples a random word of degree between 0 and `max_degree` (inclusive).
pub fn random_word(algebra: &FreeAlgebra, max_degree: usize, rng: &mut impl Rng) -> Word {
    let degree = rng.random_range(0..=max_degree);
    let n = algebra.generator_count() as u32;
    let letters = (0..degree).map(|_| rng.random_range(0..n)).collect();
    Word::from_letters(letters)
}

/// Samples a random element: up to `terms` random words of degree at most `max_degree`
/// with small nonzero integer (or Gaussian-integer) coefficients.
pub fn random_element(
    algebra: &Arc<FreeAlgebra>,
    terms: usize,
    max_degree: usize,
    rng: &mut impl Rng,
) -> Element {
    let mut out = Element::zero(algebra);
    for _ in 0..terms {
        let word = random_word(algebra, max_degree, rng);
        let coeff = loop {
            let re = rng.random_range(-4i64..=4);
            let im = match algebra.ring() {
                Ring::Rational => 0,
                Ring::GaussianRational => rng.random_range(-4i64..=4),
            };
            if re != 0 || im != 0 {
                break match algebra.ring() {
                    Ring::Rational => Scalar::from_integer(re, Ring::Rational),
                    Ring::GaussianRational => Scalar::gaussian(
                        BigRational::from_integer(re.into()),
                        BigRational::from_integer(im.into()),
                    ),
                };
            }
        };
        out.add_term(word, coeff);
    }
    out
}
