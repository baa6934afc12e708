//! Ring endomorphisms, twisted derivations, and inner derivations.
//!
//! An [`Endomorphism`] is determined by generator images and extends multiplicatively
//! and additively; a `semilinear` endomorphism additionally conjugates coefficients
//! (needed for complex conjugation, which is a ring map but not a Q(i)-linear one).
//!
//! An [`AlphaDerivation`] is a left twisted derivation: linear, with the product rule
//! `delta(a*b) = delta(a)*b + alpha(a)*delta(b)`. Twists of derivations must be linear
//! endomorphisms — against a semilinear twist no linear map can satisfy the product
//! rule (moving a scalar from one factor to the other would change the result).
//!
//! An [`InnerDerivation`] is `a -> a*l - l*a` for a fixed `l`; it satisfies the
//! ordinary product rule, which [`InnerDerivation::product_rule_residual`] certifies.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freealg::{Element, FreeAlgebra, Word};
use crate::report::Report;
use crate::scalar::{Ring, Scalar};

/// A ring endomorphism of a free algebra, given by generator images.
#[derive(Clone, Debug)]
pub struct Endomorphism {
    name: String,
    algebra: Arc<FreeAlgebra>,
    images: Vec<Element>,
    semilinear: bool,
}

impl Endomorphism {
    /// Builds an endomorphism from one image per generator (in generator order).
    pub fn new(
        name: impl Into<String>,
        algebra: &Arc<FreeAlgebra>,
        images: Vec<Element>,
        semilinear: bool,
    ) -> Result<Self> {
        if images.len() != algebra.generator_count() {
            return Err(Error::DimensionMismatch {
                expected: algebra.generator_count(),
                found: images.len(),
            });
        }
        for img in &images {
            if !img.algebra().compatible(algebra) {
                return Err(Error::AlgebraMismatch {
                    left: img.algebra().name().to_string(),
                    right: algebra.name().to_string(),
                });
            }
        }
        if semilinear && algebra.ring() == Ring::Rational {
            return Err(Error::NeedsComplexRing { context: "a semilinear endomorphism".into() });
        }
        Ok(Endomorphism { name: name.into(), algebra: Arc::clone(algebra), images, semilinear })
    }

    /// The identity map.
    pub fn identity(algebra: &Arc<FreeAlgebra>) -> Self {
        let images =
            (0..algebra.generator_count() as u32).map(|g| Element::generator(algebra, g)).collect();
        Endomorphism { name: "id".into(), algebra: Arc::clone(algebra), images, semilinear: false }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn semilinear(&self) -> bool {
        self.semilinear
    }

    pub fn image(&self, generator: u32) -> &Element {
        &self.images[generator as usize]
    }

    /// True when every generator maps to itself and coefficients are untouched.
    pub fn is_identity(&self) -> bool {
        !self.semilinear
            && self.images.iter().enumerate().all(|(g, img)| {
                img.term_count() == 1 && {
                    let (w, c) = img.terms().next().unwrap();
                    w.letters() == [g as u32] && c.is_one()
                }
            })
    }

    fn image_of_word(&self, word: &Word) -> Element {
        let mut out = Element::one(&self.algebra);
        for &letter in word.letters() {
            out = &out * self.image(letter);
        }
        out
    }

    /// Applies the map: multiplicative on words, additive on terms, and conjugating
    /// coefficients when semilinear.
    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero(&self.algebra);
        for (word, coeff) in e.terms() {
            let c = if self.semilinear { coeff.conj() } else { coeff.clone() };
            let img = self.image_of_word(word).scale(&c).expect("same ring by construction");
            out = &out + &img;
        }
        out
    }

    /// The composition `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Endomorphism) -> Result<Endomorphism> {
        if !self.algebra.compatible(&inner.algebra) {
            return Err(Error::AlgebraMismatch {
                left: self.algebra.name().to_string(),
                right: inner.algebra.name().to_string(),
            });
        }
        let images = inner.images.iter().map(|img| self.apply(img)).collect();
        Endomorphism::new(
            format!("{}∘{}", self.name, inner.name),
            &self.algebra,
            images,
            self.semilinear ^ inner.semilinear,
        )
    }
}

/// A left twisted derivation `delta` with twist `alpha`:
/// linear, `delta(1) = 0`, and `delta(a*b) = delta(a)*b + alpha(a)*delta(b)`.
#[derive(Clone, Debug)]
pub struct AlphaDerivation {
    name: String,
    algebra: Arc<FreeAlgebra>,
    twist: Endomorphism,
    images: Vec<Element>,
}

impl AlphaDerivation {
    /// Builds a twisted derivation from generator images. The twist must be linear.
    pub fn new(
        name: impl Into<String>,
        algebra: &Arc<FreeAlgebra>,
        twist: Endomorphism,
        images: Vec<Element>,
    ) -> Result<Self> {
        if images.len() != algebra.generator_count() {
            return Err(Error::DimensionMismatch {
                expected: algebra.generator_count(),
                found: images.len(),
            });
        }
        if twist.semilinear() {
            return Err(Error::InvalidPresentation(
                "a twisted derivation requires a linear twist (semilinear twists break the product rule)"
                    .into(),
            ));
        }
        if !twist.algebra().compatible(algebra) {
            return Err(Error::AlgebraMismatch {
                left: twist.algebra().name().to_string(),
                right: algebra.name().to_string(),
            });
        }
        for img in &images {
            if !img.algebra().compatible(algebra) {
                return Err(Error::AlgebraMismatch {
                    left: img.algebra().name().to_string(),
                    right: algebra.name().to_string(),
                });
            }
        }
        Ok(AlphaDerivation { name: name.into(), algebra: Arc::clone(algebra), twist, images })
    }

    /// The zero derivation with the identity twist.
    pub fn zero(algebra: &Arc<FreeAlgebra>) -> Self {
        let images = (0..algebra.generator_count()).map(|_| Element::zero(algebra)).collect();
        AlphaDerivation {
            name: "0".into(),
            algebra: Arc::clone(algebra),
            twist: Endomorphism::identity(algebra),
            images,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn twist(&self) -> &Endomorphism {
        &self.twist
    }

    pub fn image(&self, generator: u32) -> &Element {
        &self.images[generator as usize]
    }

    fn image_of_word(&self, word: &Word) -> Element {
        // delta(g1 g2 ... gk) = delta(g1)*rest + alpha(g1)*delta(rest), recursively.
        let letters = word.letters();
        if letters.is_empty() {
            return Element::zero(&self.algebra);
        }
        let head = letters[0];
        let rest = Word::from_letters(letters[1..].to_vec());
        let rest_elem = Element::from_word(&self.algebra, rest.clone());
        let first = self.image(head) * &rest_elem;
        let second = self.twist.image(head).mul(&self.image_of_word(&rest)).expect("same algebra");
        &first + &second
    }

    /// Applies the derivation (linear in the coefficients).
    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero(&self.algebra);
        for (word, coeff) in e.terms() {
            out = &out + &self.image_of_word(word).scale(coeff).expect("same ring");
        }
        out
    }

    /// `delta(a*b) - delta(a)*b - alpha(a)*delta(b)`; zero by construction, exposed so
    /// tests can certify the extension on random pairs.
    pub fn product_rule_residual(&self, a: &Element, b: &Element) -> Result<Element> {
        let lhs = self.apply(&a.mul(b)?);
        let rhs = &self.apply(a).mul(b)? + &self.twist.apply(a).mul(&self.apply(b))?;
        lhs.sub(&rhs)
    }
}

/// The inner derivation `a -> a*l - l*a` attached to a fixed element `l`.
#[derive(Clone, Debug)]
pub struct InnerDerivation {
    element: Element,
}

impl InnerDerivation {
    pub fn new(element: Element) -> Self {
        InnerDerivation { element }
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    /// `a*l - l*a`.
    pub fn apply(&self, a: &Element) -> Result<Element> {
        a.mul(&self.element)?.sub(&self.element.mul(a)?)
    }

    /// `D(x)*y + x*D(y) - D(x*y)` — the ordinary product rule, identically zero.
    pub fn product_rule_residual(&self, x: &Element, y: &Element) -> Result<Element> {
        let lhs = &self.apply(x)?.mul(y)? + &x.mul(&self.apply(y)?)?;
        lhs.sub(&self.apply(&x.mul(y)?)?)
    }
}

/// Extends generator images to a linear multiplicative map between two algebras
/// (the algebras may differ; coefficients pass through unchanged up to ring embedding).
pub fn substitute(e: &Element, target: &Arc<FreeAlgebra>, images: &[Element]) -> Result<Element> {
    if images.len() != e.algebra().generator_count() {
        return Err(Error::DimensionMismatch {
            expected: e.algebra().generator_count(),
            found: images.len(),
        });
    }
    for img in images {
        if !img.algebra().compatible(target) {
            return Err(Error::AlgebraMismatch {
                left: img.algebra().name().to_string(),
                right: target.name().to_string(),
            });
        }
    }
    let mut out = Element::zero(target);
    for (word, coeff) in e.terms() {
        let mut prod = Element::one(target);
        for &letter in word.letters() {
            prod = prod.mul(&images[letter as usize])?;
        }
        let c = match (coeff.ring(), target.ring()) {
            (a, b) if a == b => coeff.clone(),
            (Ring::Rational, Ring::GaussianRational) => {
                Scalar::gaussian(coeff.re().clone(), coeff.im().clone())
            }
            (left, right) => return Err(Error::RingMismatch { left, right }),
        };
        out = out.add(&prod.scale(&c)?)?;
    }
    Ok(out)
}

/// Checks that an endomorphism preserves a presentation: every defining relation,
/// pushed through the map and normalized, must vanish.
///
/// `relations` carries `(label, element)` pairs where the element is zero in the
/// presented quotient; `normalize` is the presentation's normal-form map.
pub fn validate_endomorphism(
    endo: &Endomorphism,
    relations: &[(String, Element)],
    normalize: impl Fn(&Element) -> Result<Element>,
) -> Result<Report> {
    let mut report = Report::new(format!("endomorphism `{}` preserves relations", endo.name()));
    for (label, relation) in relations {
        let image = endo.apply(relation);
        let reduced = normalize(&image)?;
        if reduced.is_zero() {
            report.pass(label.clone());
        } else {
            report.fail(label.clone(), format!("image normalizes to {reduced}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{random_element, Word};
    use crate::rewrite::{RewriteSystem, DEFAULT_REWRITE_CAP};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn jk_algebra() -> Arc<FreeAlgebra> {
        FreeAlgebra::new("jk", Ring::GaussianRational, &["J1", "J2", "J3", "K1", "K2", "K3"])
            .unwrap()
    }

    /// J fixed, K negated — the spatial-inversion style map.
    fn parity(alg: &Arc<FreeAlgebra>) -> Endomorphism {
        let images = (0..6u32)
            .map(|g| {
                let e = Element::generator(alg, g);
                if g < 3 {
                    e
                } else {
                    -&e
                }
            })
            .collect();
        Endomorphism::new("parity", alg, images, false).unwrap()
    }

    #[test]
    fn parity_fixes_an_even_number_of_k_letters() {
        let alg = jk_algebra();
        let par = parity(&alg);
        let k1 = Element::generator_named(&alg, "K1").unwrap();
        let k2 = Element::generator_named(&alg, "K2").unwrap();
        let j1 = Element::generator_named(&alg, "J1").unwrap();
        // alpha(K1*K2) = (-K1)(-K2) = K1*K2.
        assert_eq!(par.apply(&(&k1 * &k2)), &k1 * &k2);
        // alpha(J1*K2) = -J1*K2.
        assert_eq!(par.apply(&(&j1 * &k2)), -&(&j1 * &k2));
    }

    #[test]
    fn endomorphisms_are_multiplicative_and_linear() {
        let alg = jk_algebra();
        let par = parity(&alg);
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..100 {
            let a = random_element(&alg, 3, 3, &mut rng);
            let b = random_element(&alg, 3, 3, &mut rng);
            assert_eq!(par.apply(&(&a * &b)), &par.apply(&a) * &par.apply(&b));
            assert_eq!(par.apply(&(&a + &b)), &par.apply(&a) + &par.apply(&b));
        }
        assert_eq!(par.apply(&Element::one(&alg)), Element::one(&alg));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let alg = jk_algebra();
        let par = parity(&alg);
        let comp = par.compose(&par).unwrap();
        assert!(comp.is_identity());
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..50 {
            let a = random_element(&alg, 3, 3, &mut rng);
            assert_eq!(comp.apply(&a), par.apply(&par.apply(&a)));
        }
    }

    #[test]
    fn semilinear_maps_conjugate_coefficients() {
        let alg = jk_algebra();
        // L -> -L with coefficient conjugation: the conjugation-style automorphism.
        let images = (0..6u32).map(|g| -&Element::generator(&alg, g)).collect();
        let conj = Endomorphism::new("conj", &alg, images, true).unwrap();
        let j1 = Element::generator_named(&alg, "J1").unwrap();
        let i = Element::scalar(&alg, Scalar::i());
        assert_eq!(conj.apply(&(&i * &j1)), &i * &j1); // conj(i)*(-J1) = -i*(-J1)... = i*J1
        // Semilinear maps are still multiplicative on products.
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..50 {
            let a = random_element(&alg, 3, 2, &mut rng);
            let b = random_element(&alg, 3, 2, &mut rng);
            assert_eq!(conj.apply(&(&a * &b)), &conj.apply(&a) * &conj.apply(&b));
        }
    }

    #[test]
    fn semilinear_over_q_is_rejected() {
        let alg = FreeAlgebra::new("t", Ring::Rational, &["t"]).unwrap();
        let images = vec![Element::generator(&alg, 0)];
        assert!(matches!(
            Endomorphism::new("c", &alg, images, true),
            Err(Error::NeedsComplexRing { .. })
        ));
    }

    #[test]
    fn derivative_differentiates_polynomials() {
        let alg = FreeAlgebra::new("poly", Ring::Rational, &["t"]).unwrap();
        let ddt = AlphaDerivation::new(
            "d/dt",
            &alg,
            Endomorphism::identity(&alg),
            vec![Element::one(&alg)],
        )
        .unwrap();
        let t = Element::generator_named(&alg, "t").unwrap();
        let two_t = t.scale(&Scalar::from_integer(2, Ring::Rational)).unwrap();
        assert_eq!(ddt.apply(&t.pow(2)), two_t);
        let three_t_sq =
            t.pow(2).scale(&Scalar::from_integer(3, Ring::Rational)).unwrap();
        assert_eq!(ddt.apply(&t.pow(3)), three_t_sq);
        assert_eq!(ddt.apply(&Element::one(&alg)), Element::zero(&alg));
    }

    #[test]
    fn twisted_product_rule_holds_on_many_random_pairs() {
        let alg = jk_algebra();
        let par = parity(&alg);
        // A twisted derivation with nontrivial images on a couple of generators.
        let mut images: Vec<Element> = (0..6).map(|_| Element::zero(&alg)).collect();
        images[0] = Element::one(&alg);
        images[3] = Element::generator_named(&alg, "J2").unwrap();
        images[4] = &Element::generator_named(&alg, "K3").unwrap()
            + &Element::scalar(&alg, Scalar::i());
        let delta = AlphaDerivation::new("d", &alg, par, images).unwrap();
        let mut rng = StdRng::seed_from_u64(4242);
        for _ in 0..500 {
            let a = random_element(&alg, 3, 3, &mut rng);
            let b = random_element(&alg, 3, 3, &mut rng);
            assert!(delta.product_rule_residual(&a, &b).unwrap().is_zero());
        }
    }

    #[test]
    fn semilinear_twists_are_rejected_for_derivations() {
        let alg = jk_algebra();
        let images = (0..6u32).map(|g| -&Element::generator(&alg, g)).collect();
        let conj = Endomorphism::new("conj", &alg, images, true).unwrap();
        let zero_images = (0..6).map(|_| Element::zero(&alg)).collect();
        assert!(AlphaDerivation::new("d", &alg, conj, zero_images).is_err());
    }

    #[test]
    fn inner_derivation_satisfies_the_product_rule() {
        let alg = jk_algebra();
        let l = Element::generator_named(&alg, "J3").unwrap();
        let inner = InnerDerivation::new(l);
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..200 {
            let x = random_element(&alg, 3, 3, &mut rng);
            let y = random_element(&alg, 3, 3, &mut rng);
            assert!(inner.product_rule_residual(&x, &y).unwrap().is_zero());
        }
        // And on a composite l as well.
        let j1 = Element::generator_named(&alg, "J1").unwrap();
        let k2 = Element::generator_named(&alg, "K2").unwrap();
        let inner2 = InnerDerivation::new(&(&j1 * &k2) + &j1);
        for _ in 0..100 {
            let x = random_element(&alg, 2, 2, &mut rng);
            let y = random_element(&alg, 2, 2, &mut rng);
            assert!(inner2.product_rule_residual(&x, &y).unwrap().is_zero());
        }
    }

    #[test]
    fn substitution_maps_between_algebras() {
        let src = FreeAlgebra::new("nm", Ring::GaussianRational, &["N1", "M1"]).unwrap();
        let dst = jk_algebra();
        let j1 = Element::generator_named(&dst, "J1").unwrap();
        let k1 = Element::generator_named(&dst, "K1").unwrap();
        let i = Scalar::i();
        let half = Scalar::from_rational(1, 2, Ring::GaussianRational).unwrap();
        // N1 -> (J1 + i K1)/2, M1 -> (J1 - i K1)/2.
        let n_img = (&j1 + &k1.scale(&i).unwrap()).scale(&half).unwrap();
        let m_img = (&j1 - &k1.scale(&i).unwrap()).scale(&half).unwrap();
        let n1 = Element::generator_named(&src, "N1").unwrap();
        let m1 = Element::generator_named(&src, "M1").unwrap();
        let sum = substitute(&(&n1 + &m1), &dst, &[n_img.clone(), m_img.clone()]).unwrap();
        assert_eq!(sum, j1);
        let diff = substitute(&(&n1 - &m1), &dst, &[n_img, m_img]).unwrap();
        assert_eq!(diff, k1.scale(&i).unwrap());
    }

    #[test]
    fn validate_flags_bracket_breaking_maps() {
        // su(2) with [J1,J2]=i*J3, [J2,J3]=i*J1, [J3,J1]=i*J2; the map J1 -> J2 breaks
        // the first relation while the identity passes under the real normal form.
        let alg = FreeAlgebra::new("su2", Ring::GaussianRational, &["J1", "J2", "J3"]).unwrap();
        let j = |k: u32| Element::generator(&alg, k);
        let i = Scalar::i();
        let bracket = |a: u32, b: u32, c: u32| {
            &j(a).commutator(&j(b)).unwrap() - &j(c).scale(&i).unwrap()
        };
        let relations = vec![
            ("[J1,J2]=i*J3".to_string(), bracket(0, 1, 2)),
            ("[J2,J3]=i*J1".to_string(), bracket(1, 2, 0)),
            ("[J3,J1]=i*J2".to_string(), &j(2).commutator(&j(0)).unwrap() - &j(1).scale(&i).unwrap()),
        ];
        // Straightening rules J_b·J_a -> J_a·J_b + [J_b, J_a] for b > a.
        let mut sys = RewriteSystem::new(&alg, DEFAULT_REWRITE_CAP);
        let swap_plus = |a: u32, b: u32, comm: Element| {
            &Element::from_word(&alg, Word::from_letters(vec![a, b])) + &comm
        };
        sys.add_rule(1, 0, swap_plus(0, 1, j(2).scale(&i).unwrap().neg())).unwrap();
        sys.add_rule(2, 1, swap_plus(1, 2, j(0).scale(&i).unwrap().neg())).unwrap();
        sys.add_rule(2, 0, swap_plus(0, 2, j(1).scale(&i).unwrap())).unwrap();
        let normalize = |e: &Element| sys.normalize(e);
        let swap = Endomorphism::new("J1->J2", &alg, vec![j(1), j(1), j(2)], false).unwrap();
        let report = validate_endomorphism(&swap, &relations, normalize).unwrap();
        assert!(!report.passed());
        let failure = report.first_failure().unwrap();
        assert!(
            failure.label.contains("[J1,J2]=i*J3"),
            "violated relation must be named: {}",
            failure.label
        );
        let id_report =
            validate_endomorphism(&Endomorphism::identity(&alg), &relations, normalize).unwrap();
        assert!(id_report.passed());
    }
}
