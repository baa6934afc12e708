//! Canonical-commutation contexts with a twist, and the star structure over them.
//!
//! A context carries coordinates `l0..l3`, momenta `p0..p3` (or a single pair `l`,
//! `p`), and a central unit `hbar`, ordered `hbar < l < p`. Two rewrite systems are
//! built side by side:
//!
//! * **plain**: `p_mu·l_nu -> l_nu·p_mu - i hbar eta_{mu nu}` — the usual exchange
//!   law, diagonal metric, cross pairs commuting outright;
//! * **twisted**: the same, except the *same-index* exchange threads the coordinate
//!   through a linear twist `alpha`: `p_mu·l_mu -> alpha(l_mu)·p_mu - i hbar
//!   eta_{mu mu}`. Cross-index pairs, coordinate–coordinate and momentum–momentum
//!   pairs, and `hbar` all still commute plainly.
//!
//! The adjoint reverses words, conjugates coefficients, and applies per-generator
//! dagger images (all generators are self-adjoint here). Checks shipped with the
//! context: the exchange residuals in both systems, compatibility of a twist with the
//! adjoint (with `l -> i l` as the deliberate failure), invariance of the rotation
//! bilinears under the twisted exchange with a same-index control, and the theorem
//! that the realized rotation generators close onto `-i hbar` times their abstract
//! bracket in the plain system. The same closure is *not* claimed for the twisted
//! system — a nontrivial twist leaves a quartic residue there, and a dedicated check
//! documents exactly that.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freealg::{Element, FreeAlgebra, Word};
use crate::lie::{lorentz_bracket, Metric};
use crate::morphism::{substitute, Endomorphism};
use crate::report::Report;
use crate::rewrite::{RewriteSystem, DEFAULT_REWRITE_CAP};
use crate::scalar::{Ring, Scalar};

/// Per-generator dagger images plus coefficient conjugation.
#[derive(Clone, Debug)]
pub struct StarContext {
    algebra: Arc<FreeAlgebra>,
    images: Vec<Element>,
}

impl StarContext {
    pub fn new(algebra: &Arc<FreeAlgebra>, images: Vec<Element>) -> Result<Self> {
        if images.len() != algebra.generator_count() {
            return Err(Error::MissingAdjointImage {
                generator: algebra
                    .generator_name(images.len().min(algebra.generator_count() - 1) as u32)
                    .to_string(),
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
        Ok(StarContext { algebra: Arc::clone(algebra), images })
    }

    /// Every generator its own dagger.
    pub fn hermitian(algebra: &Arc<FreeAlgebra>) -> Self {
        let images =
            (0..algebra.generator_count() as u32).map(|g| Element::generator(algebra, g)).collect();
        StarContext { algebra: Arc::clone(algebra), images }
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn image(&self, g: u32) -> &Element {
        &self.images[g as usize]
    }

    /// The antilinear antimultiplicative adjoint: reverse each word, apply the dagger
    /// images, conjugate the coefficient.
    pub fn adjoint(&self, e: &Element) -> Element {
        let mut out = Element::zero(&self.algebra);
        for (word, coeff) in e.terms() {
            let mut prod = Element::one(&self.algebra);
            for &letter in word.letters().iter().rev() {
                prod = &prod * &self.images[letter as usize];
            }
            out = &out + &prod.scale(&coeff.conj()).expect("same ring");
        }
        out
    }
}

/// Which twist preset a context uses; custom twists are supplied directly.
pub fn identity_twist(algebra: &Arc<FreeAlgebra>) -> Endomorphism {
    Endomorphism::identity(algebra)
}

/// Negates every spatial coordinate (`l1, l2, l3`; the single-pair `l` counts as
/// spatial), fixing `l0`, the momenta, and `hbar`.
pub fn parity_twist(algebra: &Arc<FreeAlgebra>) -> Result<Endomorphism> {
    let pairs = ccr_pair_count(algebra)?;
    let mut images: Vec<Element> = (0..algebra.generator_count() as u32)
        .map(|g| Element::generator(algebra, g))
        .collect();
    for mu in 0..pairs {
        let spatial = pairs == 1 || mu > 0;
        if spatial {
            images[1 + mu] = images[1 + mu].neg();
        }
    }
    Endomorphism::new("parity", algebra, images, false)
}

/// Multiplies every coordinate by `i` — structurally legal, star-incompatible.
pub fn imaginary_twist(algebra: &Arc<FreeAlgebra>) -> Result<Endomorphism> {
    let pairs = ccr_pair_count(algebra)?;
    let i = Scalar::i();
    let mut images: Vec<Element> = (0..algebra.generator_count() as u32)
        .map(|g| Element::generator(algebra, g))
        .collect();
    for mu in 0..pairs {
        images[1 + mu] = images[1 + mu].scale(&i)?;
    }
    Endomorphism::new("itwist", algebra, images, false)
}

/// The exchange algebra generators: `hbar`, then the coordinates, then the momenta.
pub fn ccr_algebra(pairs: usize) -> Result<Arc<FreeAlgebra>> {
    let names: Vec<String> = match pairs {
        1 => vec!["hbar".into(), "l".into(), "p".into()],
        4 => std::iter::once("hbar".to_string())
            .chain((0..4).map(|mu| format!("l{mu}")))
            .chain((0..4).map(|mu| format!("p{mu}")))
            .collect(),
        _ => {
            return Err(Error::InvalidPresentation(format!(
                "exchange contexts support 1 or 4 pairs, not {pairs}"
            )))
        }
    };
    FreeAlgebra::new(
        if pairs == 1 { "ccr1" } else { "ccr4" },
        Ring::GaussianRational,
        &names.iter().map(String::as_str).collect::<Vec<_>>(),
    )
}

fn ccr_pair_count(algebra: &FreeAlgebra) -> Result<usize> {
    match algebra.generator_count() {
        3 => Ok(1),
        9 => Ok(4),
        n => Err(Error::InvalidPresentation(format!(
            "not an exchange algebra: expected 3 or 9 generators, found {n}"
        ))),
    }
}

/// A canonical-exchange context: one algebra, the plain and twisted systems, and the
/// hermitian star structure.
#[derive(Clone, Debug)]
pub struct SkewCcrContext {
    algebra: Arc<FreeAlgebra>,
    pairs: usize,
    metric: Option<Metric>,
    twist: Endomorphism,
    skewed: RewriteSystem,
    plain: RewriteSystem,
    star: StarContext,
}

impl SkewCcrContext {
    /// One coordinate/momentum pair with `[p, l] = -i hbar`.
    pub fn single(twist: Option<Endomorphism>) -> Result<Self> {
        let algebra = ccr_algebra(1)?;
        Self::build(algebra, 1, None, twist)
    }

    /// Four pairs with `[p_mu, l_nu] = -i hbar eta_{mu nu}` over a diagonal metric.
    pub fn four(metric: Metric, twist: Option<Endomorphism>) -> Result<Self> {
        let algebra = ccr_algebra(4)?;
        Self::build(algebra, 4, Some(metric), twist)
    }

    fn build(
        algebra: Arc<FreeAlgebra>,
        pairs: usize,
        metric: Option<Metric>,
        twist: Option<Endomorphism>,
    ) -> Result<Self> {
        let twist = twist.unwrap_or_else(|| Endomorphism::identity(&algebra));
        if !twist.algebra().compatible(&algebra) {
            return Err(Error::AlgebraMismatch {
                left: twist.algebra().name().to_string(),
                right: algebra.name().to_string(),
            });
        }
        if twist.semilinear() {
            return Err(Error::InvalidPresentation(
                "a twisted exchange rule needs a linear twist; semilinear maps cannot be \
                 encoded as rewrite rules"
                    .into(),
            ));
        }
        let l_base = 1u32;
        let p_base = 1 + pairs as u32;
        // hbar and the momenta must stay put; coordinates must map into the
        // coordinate span (no constants, no momenta, no hbar).
        if !twist.image(0).eq(&Element::generator(&algebra, 0)) {
            return Err(Error::InvalidPresentation(
                "the twist must fix the central unit hbar".into(),
            ));
        }
        for mu in 0..pairs as u32 {
            let p = p_base + mu;
            if !twist.image(p).eq(&Element::generator(&algebra, p)) {
                return Err(Error::InvalidPresentation(format!(
                    "the twist must fix the momentum {}",
                    algebra.generator_name(p)
                )));
            }
            for (word, _) in twist.image(l_base + mu).terms() {
                let ok = matches!(word.letters(), [g] if *g >= l_base && *g < p_base);
                if !ok {
                    return Err(Error::InvalidPresentation(format!(
                        "the twist must carry {} into the coordinate span",
                        algebra.generator_name(l_base + mu)
                    )));
                }
            }
        }
        let eta = |mu: usize, nu: usize| -> Scalar {
            match metric {
                Some(m) => m.eta(mu, nu),
                None => {
                    if mu == nu {
                        Scalar::one(Ring::GaussianRational)
                    } else {
                        Scalar::zero(Ring::GaussianRational)
                    }
                }
            }
        };
        let identity = Endomorphism::identity(&algebra);
        let skewed = Self::exchange_system(&algebra, pairs, &eta, &twist)?;
        let plain = Self::exchange_system(&algebra, pairs, &eta, &identity)?;
        let star = StarContext::hermitian(&algebra);
        Ok(SkewCcrContext { algebra, pairs, metric, twist, skewed, plain, star })
    }

    fn exchange_system(
        algebra: &Arc<FreeAlgebra>,
        pairs: usize,
        eta: &impl Fn(usize, usize) -> Scalar,
        twist: &Endomorphism,
    ) -> Result<RewriteSystem> {
        let mut sys = RewriteSystem::new(algebra, DEFAULT_REWRITE_CAP);
        let n = algebra.generator_count() as u32;
        let l_base = 1u32;
        let p_base = 1 + pairs as u32;
        let swap = |j: u32, i: u32| Element::from_word(algebra, Word::from_letters(vec![i, j]));
        // hbar is central.
        for g in 1..n {
            sys.add_rule(g, 0, swap(g, 0))?;
        }
        // Coordinates commute; momenta commute.
        for block in [l_base..p_base, p_base..n] {
            let idx: Vec<u32> = block.collect();
            for (a, &hi) in idx.iter().enumerate() {
                for &lo in &idx[..a] {
                    sys.add_rule(hi, lo, swap(hi, lo))?;
                }
            }
        }
        // Exchange rules p_mu·l_nu.
        let hbar = Element::generator(algebra, 0);
        let minus_i = Scalar::i().neg();
        for mu in 0..pairs {
            for nu in 0..pairs {
                let p = p_base + mu as u32;
                let l = l_base + nu as u32;
                let leading = if mu == nu {
                    twist.image(l).mul(&Element::generator(algebra, p))?
                } else {
                    swap(p, l)
                };
                let exchange = hbar.scale(&eta(mu, nu).mul(&minus_i)?)?;
                sys.add_rule(p, l, &leading + &exchange)?;
            }
        }
        Ok(sys)
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn metric(&self) -> Option<Metric> {
        self.metric
    }

    pub fn twist(&self) -> &Endomorphism {
        &self.twist
    }

    /// The twisted exchange system.
    pub fn skewed(&self) -> &RewriteSystem {
        &self.skewed
    }

    /// The plain (identity-twist) exchange system.
    pub fn plain(&self) -> &RewriteSystem {
        &self.plain
    }

    pub fn star(&self) -> &StarContext {
        &self.star
    }

    /// Adjusts the straightening step budget on both systems.
    pub fn set_rewrite_cap(&mut self, cap: usize) {
        self.skewed.set_cap(cap);
        self.plain.set_cap(cap);
    }

    pub fn hbar(&self) -> Element {
        Element::generator(&self.algebra, 0)
    }

    pub fn coordinate(&self, mu: usize) -> Element {
        Element::generator(&self.algebra, 1 + mu as u32)
    }

    pub fn momentum(&self, mu: usize) -> Element {
        Element::generator(&self.algebra, 1 + self.pairs as u32 + mu as u32)
    }

    fn eta(&self, mu: usize, nu: usize) -> Scalar {
        match self.metric {
            Some(m) => m.eta(mu, nu),
            None => {
                if mu == nu {
                    Scalar::one(Ring::GaussianRational)
                } else {
                    Scalar::zero(Ring::GaussianRational)
                }
            }
        }
    }

    /// Exchange residuals in both systems, plus centrality and block commutativity.
    pub fn ccr_check(&self) -> Result<Report> {
        let mut report =
            Report::new(format!("exchange relations ({} pair(s), twist `{}`)", self.pairs, self.twist.name()));
        let hbar = self.hbar();
        let i = Scalar::i();
        let line = |report: &mut Report, label: String, resid: Element| {
            if resid.is_zero() {
                report.pass(label);
            } else {
                report.fail(label, format!("residual {resid}"));
            }
        };
        // Twisted system: same-index rule against the twist, cross pairs plainly.
        for mu in 0..self.pairs {
            for nu in 0..self.pairs {
                let p = self.momentum(mu);
                let l = self.coordinate(nu);
                if mu == nu {
                    let skew = &(&p * &l) - &(&self.twist.apply(&l) * &p);
                    let resid = self
                        .skewed
                        .normalize(&(&skew + &hbar.scale(&self.eta(mu, nu).mul(&i)?)?))?;
                    line(
                        &mut report,
                        format!("twisted: p{mu}·l{mu} - alpha(l{mu})·p{mu} = -i hbar eta"),
                        resid,
                    );
                } else {
                    let resid = self.skewed.normalize(&p.commutator(&l)?)?;
                    line(&mut report, format!("twisted: [p{mu}, l{nu}] = 0"), resid);
                }
            }
        }
        // Plain system: the full exchange matrix.
        for mu in 0..self.pairs {
            for nu in 0..self.pairs {
                let p = self.momentum(mu);
                let l = self.coordinate(nu);
                let resid = self
                    .plain
                    .normalize(&(&p.commutator(&l)? + &hbar.scale(&self.eta(mu, nu).mul(&i)?)?))?;
                line(&mut report, format!("plain: [p{mu}, l{nu}] = -i hbar eta_{mu}{nu}"), resid);
            }
        }
        // Centrality and block commutativity, twisted system.
        for g in 1..self.algebra.generator_count() as u32 {
            let resid = self
                .skewed
                .normalize(&Element::generator(&self.algebra, g).commutator(&hbar)?)?;
            line(
                &mut report,
                format!("twisted: [{}, hbar] = 0", self.algebra.generator_name(g)),
                resid,
            );
        }
        for mu in 0..self.pairs {
            for nu in 0..mu {
                let resid = self
                    .skewed
                    .normalize(&self.coordinate(mu).commutator(&self.coordinate(nu))?)?;
                line(&mut report, format!("twisted: [l{mu}, l{nu}] = 0"), resid);
                let resid = self
                    .skewed
                    .normalize(&self.momentum(mu).commutator(&self.momentum(nu))?)?;
                line(&mut report, format!("twisted: [p{mu}, p{nu}] = 0"), resid);
            }
        }
        Ok(report)
    }

    /// Star-structure facts: the adjoint is an involution, generators are
    /// self-adjoint, flagship identities hold, and the context twist commutes with the
    /// adjoint on generators.
    pub fn hermiticity_check(&self) -> Result<Report> {
        let mut report = Report::new(format!(
            "star structure ({} pair(s), twist `{}`)",
            self.pairs,
            self.twist.name()
        ));
        for g in 0..self.algebra.generator_count() as u32 {
            let gen = Element::generator(&self.algebra, g);
            let name = self.algebra.generator_name(g);
            if self.star.adjoint(&gen) == gen {
                report.pass(format!("{name} is self-adjoint"));
            } else {
                report.fail(format!("{name} is self-adjoint"), "dagger image differs");
            }
        }
        let p = self.momentum(0);
        let l = self.coordinate(0);
        let pl = &p * &l;
        if self.star.adjoint(&pl) == &l * &p {
            report.pass("(p·l)† = l·p");
        } else {
            report.fail("(p·l)† = l·p", format!("got {}", self.star.adjoint(&pl)));
        }
        let ip = p.scale(&Scalar::i())?;
        if self.star.adjoint(&ip) == p.scale(&Scalar::i().neg())? {
            report.pass("(i·p)† = -i·p");
        } else {
            report.fail("(i·p)† = -i·p", format!("got {}", self.star.adjoint(&ip)));
        }
        let double = self.star.adjoint(&self.star.adjoint(&pl));
        if double == pl {
            report.pass("the adjoint is an involution on p·l");
        } else {
            report.fail("the adjoint is an involution on p·l", format!("got {double}"));
        }
        report.absorb("", asym_conjugate_check(&self.star, &self.twist));
        Ok(report)
    }

    /// The realized rotation generator `-i (l_mu p_nu - p_mu l_nu)` (four pairs only).
    pub fn realized_lorentz(&self, mu: usize, nu: usize) -> Result<Element> {
        if self.pairs != 4 {
            return Err(Error::InvalidPresentation(
                "rotation bilinears need the four-pair context".into(),
            ));
        }
        if mu > 3 || nu > 3 || mu == nu {
            return Err(Error::InvalidPresentation(format!(
                "invalid rotation index pair ({mu}, {nu})"
            )));
        }
        let first = &self.coordinate(mu) * &self.momentum(nu);
        let second = &self.momentum(mu) * &self.coordinate(nu);
        (&first - &second).scale(&Scalar::i().neg())
    }

    /// The rotation bilinears have the same canonical form under the twisted and
    /// plain systems (their cross-index exchanges never see the twist), while the
    /// same-index control `p1·l1` separates the two systems.
    pub fn bilinear_invariance_check(&self) -> Result<Report> {
        let mut report = Report::new(format!(
            "bilinear invariance under twist `{}`",
            self.twist.name()
        ));
        if self.pairs != 4 {
            return Err(Error::InvalidPresentation(
                "bilinear invariance needs the four-pair context".into(),
            ));
        }
        for (mu, nu) in L_PAIRS {
            let bilinear = self.realized_lorentz(mu, nu)?;
            let twisted = self.skewed.normalize(&bilinear)?;
            let plain = self.plain.normalize(&bilinear)?;
            let label = format!("L{mu}{nu} bilinear keeps its canonical form");
            if twisted == plain {
                report.pass(label);
            } else {
                report.fail(label, format!("twisted {twisted} vs plain {plain}"));
            }
        }
        let control = &self.momentum(1) * &self.coordinate(1);
        let twisted = self.skewed.normalize(&control)?;
        let plain = self.plain.normalize(&control)?;
        if twisted != plain {
            report.pass("control: the same-index product p1·l1 separates the systems");
        } else {
            report.fail(
                "control: the same-index product p1·l1 separates the systems",
                "the twist acts trivially on the control pair",
            );
        }
        Ok(report)
    }

    /// In the plain system, the realized rotation generators close onto `-i hbar`
    /// times the abstract bracket: for every generator pair,
    /// `[L_a, L_b] = -i hbar · (bracket of the abstract table)` after realization.
    pub fn lorentz_realization_check(&self) -> Result<Report> {
        if self.pairs != 4 {
            return Err(Error::InvalidPresentation(
                "the realization theorem needs the four-pair context".into(),
            ));
        }
        let metric = self.metric.expect("four-pair contexts always carry a metric");
        let mut report =
            Report::new(format!("rotation bilinears close onto the abstract brackets ({metric})"));
        let so_alg = FreeAlgebra::new(
            "so13",
            Ring::GaussianRational,
            &["L01", "L02", "L03", "L12", "L13", "L23"],
        )?;
        let images: Vec<Element> =
            L_PAIRS.iter().map(|&(a, b)| self.realized_lorentz(a, b)).collect::<Result<_>>()?;
        let hbar = self.hbar();
        let minus_i = Scalar::i().neg();
        for (k, &(mu, nu)) in L_PAIRS.iter().enumerate() {
            for &(al, be) in &L_PAIRS[k + 1..] {
                let lhs = self
                    .plain
                    .normalize(&images[k].commutator(&self.realized_lorentz(al, be)?)?)?;
                let display = lorentz_bracket(&so_alg, metric, (mu, nu), (al, be))?;
                let realized = substitute(&display, &self.algebra, &images)?;
                let rhs = self.plain.normalize(&hbar.mul(&realized)?.scale(&minus_i)?)?;
                let label = format!("[L{mu}{nu}, L{al}{be}] realization");
                if lhs == rhs {
                    report.pass(label);
                } else {
                    report.fail(label, format!("lhs {lhs} vs rhs {rhs}"));
                }
            }
        }
        Ok(report)
    }

    /// Documents the deliberate negative: under a nontrivial twist the realized
    /// rotation generators do **not** close in the twisted system — a quartic residue
    /// survives. Passes when the residue is present (for the identity twist the
    /// closure does hold and this reports the fact).
    pub fn skewed_closure_counterexample(&self) -> Result<Report> {
        if self.pairs != 4 {
            return Err(Error::InvalidPresentation(
                "the closure counterexample needs the four-pair context".into(),
            ));
        }
        let metric = self.metric.expect("four-pair contexts always carry a metric");
        let mut report = Report::new(format!(
            "twisted-system closure residue (twist `{}`)",
            self.twist.name()
        ));
        let so_alg = FreeAlgebra::new(
            "so13",
            Ring::GaussianRational,
            &["L01", "L02", "L03", "L12", "L13", "L23"],
        )?;
        let images: Vec<Element> =
            L_PAIRS.iter().map(|&(a, b)| self.realized_lorentz(a, b)).collect::<Result<_>>()?;
        let hbar = self.hbar();
        let minus_i = Scalar::i().neg();
        let lhs = self
            .skewed
            .normalize(&images[0].commutator(&images[3])?)?; // [L01, L12]
        let display = lorentz_bracket(&so_alg, metric, (0, 1), (1, 2))?;
        let rhs = self
            .skewed
            .normalize(&hbar.mul(&substitute(&display, &self.algebra, &images)?)?.scale(&minus_i)?)?;
        let resid = &lhs - &rhs;
        if self.twist.is_identity() {
            if resid.is_zero() {
                report.pass("identity twist: closure holds in the twisted system too");
            } else {
                report.fail(
                    "identity twist: closure holds in the twisted system too",
                    format!("unexpected residue {resid}"),
                );
            }
        } else if resid.degree() == Some(4) {
            report.pass_with(
                "nontrivial twist: [L01, L12] picks up a quartic residue",
                format!("residue {resid}"),
            );
        } else {
            report.fail(
                "nontrivial twist: [L01, L12] picks up a quartic residue",
                format!("expected a degree-4 residue, got {resid}"),
            );
        }
        Ok(report)
    }
}

const L_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Does the twist commute with the adjoint on every generator?
/// `adjoint(alpha(g)) == alpha(adjoint(g))` — fails for `l -> i l`.
pub fn asym_conjugate_check(star: &StarContext, alpha: &Endomorphism) -> Report {
    let mut report =
        Report::new(format!("adjoint compatibility of twist `{}`", alpha.name()));
    let algebra = star.algebra();
    for g in 0..algebra.generator_count() as u32 {
        let gen = Element::generator(algebra, g);
        let lhs = star.adjoint(&alpha.apply(&gen));
        let rhs = alpha.apply(&star.adjoint(&gen));
        let label = format!("adjoint ∘ twist = twist ∘ adjoint on {}", algebra.generator_name(g));
        if lhs == rhs {
            report.pass(label);
        } else {
            report.fail(label, format!("adjoint(alpha({0})) = {lhs} but alpha(adjoint({0})) = {rhs}", algebra.generator_name(g)));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::random_element;
    use crate::lie::{MOSTLY_MINUS, MOSTLY_PLUS};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn parity_four() -> SkewCcrContext {
        let alg = ccr_algebra(4).unwrap();
        SkewCcrContext::four(MOSTLY_MINUS, Some(parity_twist(&alg).unwrap())).unwrap()
    }

    #[test]
    fn adjoint_is_an_antimultiplicative_involution() {
        let ctx = SkewCcrContext::four(MOSTLY_MINUS, None).unwrap();
        let star = ctx.star();
        let mut rng = StdRng::seed_from_u64(2718);
        for _ in 0..60 {
            let a = random_element(ctx.algebra(), 3, 3, &mut rng);
            let b = random_element(ctx.algebra(), 3, 3, &mut rng);
            assert_eq!(star.adjoint(&star.adjoint(&a)), a);
            assert_eq!(star.adjoint(&(&a * &b)), &star.adjoint(&b) * &star.adjoint(&a));
        }
        // Flagship identities.
        let p0 = ctx.momentum(0);
        let l0 = ctx.coordinate(0);
        assert_eq!(star.adjoint(&(&p0 * &l0)), &l0 * &p0);
        assert_eq!(star.adjoint(&p0.scale(&Scalar::i()).unwrap()), p0.scale(&Scalar::i().neg()).unwrap());
    }

    #[test]
    fn exchange_relations_hold_in_all_contexts() {
        let single_alg = ccr_algebra(1).unwrap();
        let contexts = vec![
            SkewCcrContext::single(None).unwrap(),
            SkewCcrContext::single(Some(parity_twist(&single_alg).unwrap())).unwrap(),
            SkewCcrContext::four(MOSTLY_MINUS, None).unwrap(),
            parity_four(),
            SkewCcrContext::four(MOSTLY_PLUS, None).unwrap(),
        ];
        for ctx in contexts {
            let report = ctx.ccr_check().unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn same_index_exchange_is_twisted_cross_index_is_not() {
        let ctx = parity_four();
        // eta_11 = -1 under mostly-minus: p1·l1 -> -l1·p1 + i·hbar.
        let pl = &ctx.momentum(1) * &ctx.coordinate(1);
        assert_eq!(ctx.skewed().normalize(&pl).unwrap().to_string(), "-l1*p1 + i*hbar");
        assert_eq!(ctx.plain().normalize(&pl).unwrap().to_string(), "l1*p1 + i*hbar");
        // p0·l0: parity fixes l0, so both systems agree (eta_00 = +1).
        let pl0 = &ctx.momentum(0) * &ctx.coordinate(0);
        assert_eq!(ctx.skewed().normalize(&pl0).unwrap().to_string(), "l0*p0 - i*hbar");
        assert_eq!(ctx.plain().normalize(&pl0).unwrap(), ctx.skewed().normalize(&pl0).unwrap());
        // Cross index: plain swap in both systems, no hbar term.
        let cross = &ctx.momentum(2) * &ctx.coordinate(1);
        assert_eq!(ctx.skewed().normalize(&cross).unwrap().to_string(), "l1*p2");
        // Single pair, parity twist, eta = +1: p·l -> -l·p - i·hbar.
        let alg = ccr_algebra(1).unwrap();
        let sctx = SkewCcrContext::single(Some(parity_twist(&alg).unwrap())).unwrap();
        let spl = &sctx.momentum(0) * &sctx.coordinate(0);
        assert_eq!(sctx.skewed().normalize(&spl).unwrap().to_string(), "-l*p - i*hbar");
    }

    #[test]
    fn adjoint_compatibility_separates_the_presets() {
        let ctx = SkewCcrContext::four(MOSTLY_MINUS, None).unwrap();
        let alg = ctx.algebra();
        assert!(asym_conjugate_check(ctx.star(), &identity_twist(alg)).passed());
        assert!(asym_conjugate_check(ctx.star(), &parity_twist(alg).unwrap()).passed());
        let bad = asym_conjugate_check(ctx.star(), &imaginary_twist(alg).unwrap());
        assert!(!bad.passed());
        let failure = bad.first_failure().unwrap();
        assert!(failure.label.contains("l0"), "witness should be the first coordinate: {bad}");
        let detail = failure.detail.as_deref().unwrap();
        assert!(detail.contains("i*l0") && detail.contains("-i*l0"), "{detail}");
    }

    #[test]
    fn hermiticity_suite_passes_for_parity_and_fails_for_the_imaginary_twist() {
        let report = parity_four().hermiticity_check().unwrap();
        assert!(report.passed(), "{report}");
        let alg = ccr_algebra(4).unwrap();
        let bad = SkewCcrContext::four(MOSTLY_MINUS, Some(imaginary_twist(&alg).unwrap()))
            .unwrap()
            .hermiticity_check()
            .unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn bilinears_are_invariant_with_a_same_index_control() {
        let report = parity_four().bilinear_invariance_check().unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.pass_count(), 7);
        // Identity twist: the control cannot separate the systems.
        let id = SkewCcrContext::four(MOSTLY_MINUS, None).unwrap();
        let report = id.bilinear_invariance_check().unwrap();
        assert!(!report.passed());
        assert!(report.first_failure().unwrap().label.contains("control"));
    }

    #[test]
    fn realized_rotations_close_in_the_plain_system() {
        for metric in [MOSTLY_MINUS, MOSTLY_PLUS] {
            let ctx = SkewCcrContext::four(metric, None).unwrap();
            let report = ctx.lorentz_realization_check().unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(report.pass_count(), 15);
        }
        // The twist does not affect the plain-system theorem.
        let report = parity_four().lorentz_realization_check().unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn twisted_closure_fails_with_a_quartic_residue() {
        let report = parity_four().skewed_closure_counterexample().unwrap();
        assert!(report.passed(), "{report}");
        // And the identity twist keeps closure even in the twisted system.
        let id = SkewCcrContext::four(MOSTLY_MINUS, None).unwrap();
        assert!(id.skewed_closure_counterexample().unwrap().passed());
    }

    #[test]
    fn twisted_system_is_confluent_and_exact() {
        let ctx = parity_four();
        let mut rng = StdRng::seed_from_u64(5150);
        for _ in 0..25 {
            let e = random_element(ctx.algebra(), 4, 3, &mut rng);
            let nf = ctx.skewed().normalize(&e).unwrap();
            assert_eq!(ctx.skewed().normalize(&nf).unwrap(), nf);
            let alt = ctx.skewed().normalize_random_order(&e, &mut rng).unwrap();
            assert_eq!(alt, nf);
        }
    }

    #[test]
    fn construction_rejects_malformed_twists() {
        let alg = ccr_algebra(4).unwrap();
        let mut images: Vec<Element> =
            (0..9).map(|g| Element::generator(&alg, g)).collect();
        // A twist that moves a momentum.
        images[5] = images[5].scale(&Scalar::from_integer(2, Ring::GaussianRational)).unwrap();
        let bad = Endomorphism::new("badp", &alg, images.clone(), false).unwrap();
        assert!(SkewCcrContext::four(MOSTLY_MINUS, Some(bad)).is_err());
        // A twist that moves hbar.
        images[5] = Element::generator(&alg, 5);
        images[0] = images[0].scale(&Scalar::from_integer(2, Ring::GaussianRational)).unwrap();
        let bad = Endomorphism::new("badh", &alg, images.clone(), false).unwrap();
        assert!(SkewCcrContext::four(MOSTLY_MINUS, Some(bad)).is_err());
        // A twist that sends a coordinate outside the coordinate span.
        images[0] = Element::generator(&alg, 0);
        images[1] = Element::generator(&alg, 5);
        let bad = Endomorphism::new("badl", &alg, images, false).unwrap();
        assert!(SkewCcrContext::four(MOSTLY_MINUS, Some(bad)).is_err());
        // A semilinear twist.
        let idimg: Vec<Element> = (0..9).map(|g| Element::generator(&alg, g)).collect();
        let semi = Endomorphism::new("semi", &alg, idimg, true).unwrap();
        assert!(SkewCcrContext::four(MOSTLY_MINUS, Some(semi)).is_err());
    }
}
