//! The pairwise rewrite engine behind every canonical form in the crate.
//!
//! All presentations in scope (commutative bases, Ore extensions, PBW orderings,
//! canonical-commutation contexts) share one rule shape: a descending adjacent pair of
//! generators `g·h` (with `g` after `h` in the generator order) rewrites to an element
//! whose leading term is the swapped pair plus lower-order corrections. The engine
//! stores one rule per ordered pair and reduces words with a deterministic
//! leftmost-first strategy; a global cap on rule applications guards against
//! non-terminating rule sets, overridable through `ORECALC_MAX_REWRITES`.
//!
//! Confluence is never assumed: callers certify it by idempotence tests, by comparing
//! the deterministic strategy against [`RewriteSystem::normalize_random_order`], and —
//! for Lie presentations — against an independent matrix oracle.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::freealg::{Element, FreeAlgebra, Word};
use crate::scalar::Scalar;

/// Default bound on rule applications per `normalize` call.
pub const DEFAULT_REWRITE_CAP: usize = 1_000_000;

/// Name of the environment variable overriding the rewrite cap in the CLI.
pub const REWRITE_CAP_ENV: &str = "ORECALC_MAX_REWRITES";

/// Reads the rewrite cap from the environment, falling back to the default.
pub fn rewrite_cap_from_env() -> usize {
    std::env::var(REWRITE_CAP_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_REWRITE_CAP)
}

/// A set of two-letter rewrite rules `g·h -> element` over one algebra.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    algebra: Arc<FreeAlgebra>,
    rules: BTreeMap<(u32, u32), Element>,
    cap: usize,
}

impl RewriteSystem {
    pub fn new(algebra: &Arc<FreeAlgebra>, cap: usize) -> Self {
        RewriteSystem { algebra: Arc::clone(algebra), rules: BTreeMap::new(), cap }
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn set_cap(&mut self, cap: usize) {
        self.cap = cap;
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Iterates the rules as `((left, right), replacement)` in generator order.
    pub fn rules(&self) -> impl Iterator<Item = (&(u32, u32), &Element)> {
        self.rules.iter()
    }

    /// Registers `left·right -> replacement`. Termination discipline: only descending
    /// pairs (`left > right`) may carry rules, so every application moves a word
    /// strictly down in the inversion-count/degree well-order.
    pub fn add_rule(&mut self, left: u32, right: u32, replacement: Element) -> Result<()> {
        let n = self.algebra.generator_count() as u32;
        if left >= n || right >= n {
            return Err(Error::InvalidPresentation(format!(
                "rule ({left},{right}) references a generator outside the algebra"
            )));
        }
        if left <= right {
            return Err(Error::InvalidPresentation(format!(
                "rule for `{}·{}` is not a descending pair; canonical words could not terminate",
                self.algebra.generator_name(left),
                self.algebra.generator_name(right)
            )));
        }
        if !replacement.algebra().compatible(&self.algebra) {
            return Err(Error::AlgebraMismatch {
                left: replacement.algebra().name().to_string(),
                right: self.algebra.name().to_string(),
            });
        }
        if self.rules.insert((left, right), replacement).is_some() {
            return Err(Error::InvalidPresentation(format!(
                "duplicate rule for the pair `{}·{}`",
                self.algebra.generator_name(left),
                self.algebra.generator_name(right)
            )));
        }
        Ok(())
    }

    /// The replacement for `left·right`, if a rule exists.
    pub fn rule(&self, left: u32, right: u32) -> Option<&Element> {
        self.rules.get(&(left, right))
    }

    /// The rules as named relation elements `left·right - replacement`, each of which
    /// must normalize to zero under the system itself.
    pub fn relation_elements(&self) -> Vec<(String, Element)> {
        self.rules
            .iter()
            .map(|(&(j, i), rhs)| {
                let lhs = Element::from_word(&self.algebra, Word::from_letters(vec![j, i]));
                (
                    format!(
                        "{}*{}",
                        self.algebra.generator_name(j),
                        self.algebra.generator_name(i)
                    ),
                    &lhs - rhs,
                )
            })
            .collect()
    }

    /// First redex position in a word under the leftmost-first strategy.
    fn first_redex(&self, word: &Word) -> Option<usize> {
        let letters = word.letters();
        (0..letters.len().saturating_sub(1))
            .find(|&p| self.rules.contains_key(&(letters[p], letters[p + 1])))
    }

    /// All redex positions in a word (used by the randomized strategy).
    fn all_redexes(&self, word: &Word) -> Vec<usize> {
        let letters = word.letters();
        (0..letters.len().saturating_sub(1))
            .filter(|&p| self.rules.contains_key(&(letters[p], letters[p + 1])))
            .collect()
    }

    /// True when no rule applies anywhere in the word.
    pub fn is_normal(&self, word: &Word) -> bool {
        self.first_redex(word).is_none()
    }

    fn splice(word: &Word, at: usize, replacement_word: &Word) -> Word {
        let letters = word.letters();
        let mut out = Vec::with_capacity(letters.len() - 2 + replacement_word.degree());
        out.extend_from_slice(&letters[..at]);
        out.extend_from_slice(replacement_word.letters());
        out.extend_from_slice(&letters[at + 2..]);
        Word::from_letters(out)
    }

    /// Reduces an element to its canonical form with the deterministic strategy.
    ///
    /// Errors with [`Error::RewriteCapExceeded`] if the rule set does not reach normal
    /// forms within the cap.
    pub fn normalize(&self, e: &Element) -> Result<Element> {
        if !e.algebra().compatible(&self.algebra) {
            return Err(Error::AlgebraMismatch {
                left: e.algebra().name().to_string(),
                right: self.algebra.name().to_string(),
            });
        }
        let mut steps = 0usize;
        let mut out = Element::zero(&self.algebra);
        let mut pending: Vec<(Word, Scalar)> =
            e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        while let Some((word, coeff)) = pending.pop() {
            match self.first_redex(&word) {
                None => out.add_term(word, coeff),
                Some(p) => {
                    steps += 1;
                    if steps > self.cap {
                        return Err(Error::RewriteCapExceeded { cap: self.cap });
                    }
                    let rule = &self.rules[&(word.letters()[p], word.letters()[p + 1])];
                    for (rw, rc) in rule.terms() {
                        pending.push((Self::splice(&word, p, rw), &coeff * rc));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduces an element choosing a random redex in a random pending term at every
    /// step. Used as an independent route to the canonical form: on a confluent rule
    /// set the result must equal [`RewriteSystem::normalize`].
    pub fn normalize_random_order(&self, e: &Element, rng: &mut impl Rng) -> Result<Element> {
        if !e.algebra().compatible(&self.algebra) {
            return Err(Error::AlgebraMismatch {
                left: e.algebra().name().to_string(),
                right: self.algebra.name().to_string(),
            });
        }
        let mut steps = 0usize;
        let mut out = Element::zero(&self.algebra);
        let mut pending: Vec<(Word, Scalar)> =
            e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        while !pending.is_empty() {
            let idx = rng.random_range(0..pending.len());
            let (word, coeff) = pending.swap_remove(idx);
            let redexes = self.all_redexes(&word);
            if redexes.is_empty() {
                out.add_term(word, coeff);
                continue;
            }
            steps += 1;
            if steps > self.cap {
                return Err(Error::RewriteCapExceeded { cap: self.cap });
            }
            let p = redexes[rng.random_range(0..redexes.len())];
            let rule = &self.rules[&(word.letters()[p], word.letters()[p + 1])];
            for (rw, rc) in rule.terms() {
                pending.push((Self::splice(&word, p, rw), &coeff * rc));
            }
        }
        Ok(out)
    }
}
