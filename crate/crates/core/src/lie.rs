//! Lie presentations: finite bracket tables straightened into canonical-form rewrite
//! systems, plus the built-in Lorentz-family constructions.
//!
//! A [`LiePresentation`] stores an antisymmetric bracket table over the generators of a
//! free algebra and derives the straightening rules `g_j·g_i -> g_i·g_j + [g_j, g_i]`
//! for `j > i`. Canonical words are the non-decreasing monomials, so the graded
//! dimension of the quotient follows the multiset count `C(n + d - 1, d)`; both facts
//! are certified by tests rather than assumed (Jacobi residuals, random-order
//! confluence probes, and — in the representation module — an exact matrix oracle).
//!
//! The built-ins cover `so13` (six rotation/boost generators `L01..L23`), `iso13`
//! (those plus translations `P0..P3`), and `su2su2` (the chiral basis `N1..M3`,
//! derived by embedding into `so13` rather than transcribed by hand).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freealg::{Element, FreeAlgebra, Word};
use crate::morphism::substitute;
use crate::report::Report;
use crate::rewrite::{RewriteSystem, DEFAULT_REWRITE_CAP};
use crate::scalar::{Ring, Scalar};

/// A diagonal signature on four spacetime indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Metric {
    signs: [i8; 4],
}

/// Signature (+, -, -, -).
pub const MOSTLY_MINUS: Metric = Metric { signs: [1, -1, -1, -1] };

/// Signature (-, +, +, +).
pub const MOSTLY_PLUS: Metric = Metric { signs: [-1, 1, 1, 1] };

impl Metric {
    /// The diagonal entry `eta_{aa}` as a plain sign.
    pub fn sign(&self, a: usize) -> i8 {
        self.signs[a]
    }

    /// `eta_{ab}` as an exact scalar over Q(i).
    pub fn eta(&self, a: usize, b: usize) -> Scalar {
        if a == b {
            Scalar::from_integer(self.signs[a] as i64, Ring::GaussianRational)
        } else {
            Scalar::zero(Ring::GaussianRational)
        }
    }

    pub fn name(&self) -> &'static str {
        if self.signs[0] == 1 {
            "mostly-minus"
        } else {
            "mostly-plus"
        }
    }

    /// Accepts `mostly-minus` / `mostly-plus` (underscores tolerated).
    pub fn from_name(name: &str) -> Option<Metric> {
        match name.replace('_', "-").as_str() {
            "mostly-minus" => Some(MOSTLY_MINUS),
            "mostly-plus" => Some(MOSTLY_PLUS),
            _ => None,
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// An antisymmetric bracket table with its derived straightening system.
#[derive(Clone, Debug)]
pub struct LiePresentation {
    algebra: Arc<FreeAlgebra>,
    brackets: Vec<Vec<Element>>,
    system: RewriteSystem,
}

impl LiePresentation {
    /// Builds a presentation from a full `n x n` bracket table.
    ///
    /// The table must be antisymmetric with zero diagonal, and every bracket must have
    /// degree at most one (a linear combination of generators plus a constant).
    pub fn new(algebra: &Arc<FreeAlgebra>, brackets: Vec<Vec<Element>>) -> Result<Self> {
        let n = algebra.generator_count();
        if brackets.len() != n || brackets.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidPresentation(format!(
                "bracket table must be {n}x{n} to match the generators of `{}`",
                algebra.name()
            )));
        }
        for (a, row) in brackets.iter().enumerate() {
            for (b, entry) in row.iter().enumerate() {
                if !entry.algebra().compatible(algebra) {
                    return Err(Error::AlgebraMismatch {
                        left: entry.algebra().name().to_string(),
                        right: algebra.name().to_string(),
                    });
                }
                if entry.degree().unwrap_or(0) > 1 {
                    return Err(Error::InvalidPresentation(format!(
                        "bracket [{}, {}] has degree above one: {entry}",
                        algebra.generator_name(a as u32),
                        algebra.generator_name(b as u32)
                    )));
                }
                let mirror = &brackets[b][a];
                if (entry + mirror) != Element::zero(algebra) {
                    return Err(Error::InvalidPresentation(format!(
                        "bracket table is not antisymmetric at [{}, {}]",
                        algebra.generator_name(a as u32),
                        algebra.generator_name(b as u32)
                    )));
                }
            }
        }
        let mut system = RewriteSystem::new(algebra, DEFAULT_REWRITE_CAP);
        for j in 0..n as u32 {
            for i in 0..j {
                let swapped = Element::from_word(algebra, Word::from_letters(vec![i, j]));
                system.add_rule(j, i, &swapped + &brackets[j as usize][i as usize])?;
            }
        }
        Ok(LiePresentation { algebra: Arc::clone(algebra), brackets, system })
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    /// Adjusts the straightening step budget (see `rewrite_cap_from_env`).
    pub fn set_rewrite_cap(&mut self, cap: usize) {
        self.system.set_cap(cap);
    }

    /// The tabulated bracket `[g_a, g_b]`.
    pub fn bracket(&self, a: u32, b: u32) -> &Element {
        &self.brackets[a as usize][b as usize]
    }

    /// Canonical form of an element modulo the straightening rules.
    pub fn normalize(&self, e: &Element) -> Result<Element> {
        self.system.normalize(e)
    }

    /// Canonical form of the commutator `x·y - y·x`.
    pub fn bracket_elems(&self, x: &Element, y: &Element) -> Result<Element> {
        self.system.normalize(&x.commutator(y)?)
    }

    /// The defining relations as named elements that must normalize to zero.
    pub fn relation_elements(&self) -> Vec<(String, Element)> {
        let n = self.algebra.generator_count() as u32;
        let mut out = Vec::new();
        for j in 0..n {
            for i in 0..j {
                let gj = Element::generator(&self.algebra, j);
                let gi = Element::generator(&self.algebra, i);
                let rel = &gj.commutator(&gi).unwrap() - &self.brackets[j as usize][i as usize];
                out.push((
                    format!(
                        "[{},{}]",
                        self.algebra.generator_name(j),
                        self.algebra.generator_name(i)
                    ),
                    rel,
                ));
            }
        }
        out
    }

    /// Checks the Jacobi identity on every generator triple.
    pub fn jacobi_check(&self) -> Result<Report> {
        let n = self.algebra.generator_count() as u32;
        let mut report = Report::new(format!("jacobi identity on {}", self.algebra.name()));
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    let ga = Element::generator(&self.algebra, a);
                    let gb = Element::generator(&self.algebra, b);
                    let gc = Element::generator(&self.algebra, c);
                    let t1 = self.bracket_elems(&self.bracket_elems(&ga, &gb)?, &gc)?;
                    let t2 = self.bracket_elems(&self.bracket_elems(&gb, &gc)?, &ga)?;
                    let t3 = self.bracket_elems(&self.bracket_elems(&gc, &ga)?, &gb)?;
                    let total = self.normalize(&(&(&t1 + &t2) + &t3))?;
                    let label = format!(
                        "[[{x},{y}],{z}] + [[{y},{z}],{x}] + [[{z},{x}],{y}]",
                        x = self.algebra.generator_name(a),
                        y = self.algebra.generator_name(b),
                        z = self.algebra.generator_name(c)
                    );
                    if total.is_zero() {
                        report.pass(label);
                    } else {
                        report.fail(label, format!("residual {total}"));
                    }
                }
            }
        }
        Ok(report)
    }

    /// Number of canonical words of exact degree `d`: `C(n + d - 1, d)`.
    pub fn graded_dimension(&self, degree: usize) -> u128 {
        if degree == 0 {
            return 1;
        }
        let n = self.algebra.generator_count() as u128;
        num_integer::binomial(n + degree as u128 - 1, degree as u128)
    }

    /// All canonical (non-decreasing) words of exact degree `d`, lexicographically.
    pub fn pbw_basis(&self, degree: usize) -> Vec<Word> {
        let n = self.algebra.generator_count() as u32;
        let mut out = Vec::new();
        let mut current: Vec<u32> = Vec::with_capacity(degree);
        fn rec(n: u32, left: usize, lo: u32, current: &mut Vec<u32>, out: &mut Vec<Word>) {
            if left == 0 {
                out.push(Word::from_letters(current.clone()));
                return;
            }
            for g in lo..n {
                current.push(g);
                rec(n, left - 1, g, current, out);
                current.pop();
            }
        }
        rec(n, degree, 0, &mut current, &mut out);
        out
    }
}

/// Signed `L` generator as an element: zero on the diagonal, `-L{b}{a}` below it.
///
/// Works over any algebra whose generators include `L01, L02, L03, L12, L13, L23`.
pub fn lorentz_element(alg: &Arc<FreeAlgebra>, a: usize, b: usize) -> Result<Element> {
    if a > 3 || b > 3 {
        return Err(Error::InvalidPresentation(format!(
            "spacetime index out of range in L{a}{b}"
        )));
    }
    if a == b {
        return Ok(Element::zero(alg));
    }
    if a < b {
        Element::generator_named(alg, &format!("L{a}{b}"))
    } else {
        Ok(Element::generator_named(alg, &format!("L{b}{a}"))?.neg())
    }
}

/// The bracket `[L_{mu nu}, L_{al be}]` as a linear combination of `L` generators:
/// `i { eta_{mu al} L_{nu be} + eta_{nu be} L_{mu al} - eta_{mu be} L_{nu al}
///    - eta_{nu al} L_{mu be} }`.
pub fn lorentz_bracket(
    alg: &Arc<FreeAlgebra>,
    metric: Metric,
    (mu, nu): (usize, usize),
    (al, be): (usize, usize),
) -> Result<Element> {
    let term = |sign_pair: (usize, usize), l_pair: (usize, usize)| -> Result<Element> {
        lorentz_element(alg, l_pair.0, l_pair.1)?.scale(&metric.eta(sign_pair.0, sign_pair.1))
    };
    let sum = &(&term((mu, al), (nu, be))? + &term((nu, be), (mu, al))?)
        - &(&term((mu, be), (nu, al))? + &term((nu, al), (mu, be))?);
    sum.scale(&Scalar::i())
}

const L_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
const L_NAMES: [&str; 6] = ["L01", "L02", "L03", "L12", "L13", "L23"];

/// The rotation/boost algebra on generators `L01..L23` for the given signature.
pub fn so13(metric: Metric) -> LiePresentation {
    let alg = FreeAlgebra::new("so13", Ring::GaussianRational, &L_NAMES).unwrap();
    let table: Vec<Vec<Element>> = L_PAIRS
        .iter()
        .map(|&a| {
            L_PAIRS.iter().map(|&b| lorentz_bracket(&alg, metric, a, b).unwrap()).collect()
        })
        .collect();
    LiePresentation::new(&alg, table).unwrap()
}

/// The translation generator `P{mu}` as an element.
pub fn momentum_element(alg: &Arc<FreeAlgebra>, mu: usize) -> Result<Element> {
    if mu > 3 {
        return Err(Error::InvalidPresentation(format!("spacetime index out of range in P{mu}")));
    }
    Element::generator_named(alg, &format!("P{mu}"))
}

/// `[L_{mu nu}, P_rho] = i { eta_{mu rho} P_nu - eta_{nu rho} P_mu }`.
fn lorentz_momentum_bracket(
    alg: &Arc<FreeAlgebra>,
    metric: Metric,
    (mu, nu): (usize, usize),
    rho: usize,
) -> Result<Element> {
    let sum = &momentum_element(alg, nu)?.scale(&metric.eta(mu, rho))?
        - &momentum_element(alg, mu)?.scale(&metric.eta(nu, rho))?;
    sum.scale(&Scalar::i())
}

/// The Poincaré algebra: `L01..L23` and `P0..P3`, translations commuting among
/// themselves and transforming as a vector under the `L` block.
pub fn iso13(metric: Metric) -> LiePresentation {
    let names = ["L01", "L02", "L03", "L12", "L13", "L23", "P0", "P1", "P2", "P3"];
    let alg = FreeAlgebra::new("iso13", Ring::GaussianRational, &names).unwrap();
    let n = names.len();
    let mut table = vec![vec![Element::zero(&alg); n]; n];
    for a in 0..6 {
        for b in 0..6 {
            table[a][b] = lorentz_bracket(&alg, metric, L_PAIRS[a], L_PAIRS[b]).unwrap();
        }
        for rho in 0..4 {
            let lp = lorentz_momentum_bracket(&alg, metric, L_PAIRS[a], rho).unwrap();
            table[6 + rho][a] = lp.neg();
            table[a][6 + rho] = lp;
        }
    }
    LiePresentation::new(&alg, table).unwrap()
}

/// Rotation/boost combinations over any algebra containing the six `L` generators:
/// `J1 = L23`, `J2 = -L13`, `J3 = L12`, `K_i = L0i`, and the chiral halves
/// `N_i = (J_i + i K_i)/2`, `M_i = (J_i - i K_i)/2`.
pub fn jk_aliases(alg: &Arc<FreeAlgebra>) -> Result<BTreeMap<String, Element>> {
    let l = |a: usize, b: usize| lorentz_element(alg, a, b);
    let js = [l(2, 3)?, l(1, 3)?.neg(), l(1, 2)?];
    let ks = [l(0, 1)?, l(0, 2)?, l(0, 3)?];
    let half = Scalar::from_rational(1, 2, Ring::GaussianRational)?;
    let i = Scalar::i();
    let mut out = BTreeMap::new();
    for (k, (jj, kk)) in js.iter().zip(ks.iter()).enumerate() {
        let ik = kk.scale(&i)?;
        out.insert(format!("J{}", k + 1), jj.clone());
        out.insert(format!("K{}", k + 1), kk.clone());
        out.insert(format!("N{}", k + 1), (jj + &ik).scale(&half)?);
        out.insert(format!("M{}", k + 1), (jj - &ik).scale(&half)?);
    }
    Ok(out)
}

/// The chiral basis `N1..N3, M1..M3` with brackets derived by embedding into `so13`
/// and substituting back through `L01 = -i(N1 - M1)`, …, `L23 = N1 + M1`.
pub fn su2su2(metric: Metric) -> LiePresentation {
    let so = so13(metric);
    let alg = FreeAlgebra::new(
        "su2su2",
        Ring::GaussianRational,
        &["N1", "N2", "N3", "M1", "M2", "M3"],
    )
    .unwrap();
    let aliases = jk_aliases(so.algebra()).unwrap();
    let embed: Vec<Element> = (1..=3)
        .map(|k| aliases[&format!("N{k}")].clone())
        .chain((1..=3).map(|k| aliases[&format!("M{k}")].clone()))
        .collect();
    let g = |name: &str| Element::generator_named(&alg, name).unwrap();
    let minus_i = Scalar::i().neg();
    let diff = |a: &str, b: &str| (&g(a) - &g(b)).scale(&minus_i).unwrap();
    let back = vec![
        diff("N1", "M1"),          // L01
        diff("N2", "M2"),          // L02
        diff("N3", "M3"),          // L03
        &g("N3") + &g("M3"),       // L12
        (&g("N2") + &g("M2")).neg(), // L13
        &g("N1") + &g("M1"),       // L23
    ];
    let n = 6;
    let mut table = vec![vec![Element::zero(&alg); n]; n];
    for a in 0..n {
        for b in 0..n {
            let br = so.bracket_elems(&embed[a], &embed[b]).unwrap();
            table[a][b] = substitute(&br, &alg, &back).unwrap();
        }
    }
    LiePresentation::new(&alg, table).unwrap()
}

/// The quadratic invariant `P^2 = eta^{mu mu} P_mu P_mu` over the Poincaré algebra.
pub fn momentum_squared(alg: &Arc<FreeAlgebra>, metric: Metric) -> Result<Element> {
    let mut out = Element::zero(alg);
    for mu in 0..4 {
        let p = momentum_element(alg, mu)?;
        out = out.add(&(&p * &p).scale(&metric.eta(mu, mu))?)?;
    }
    Ok(out)
}

/// Totally antisymmetric symbol with `eps_{0123} = +1`.
fn eps4(idx: [usize; 4]) -> i64 {
    let mut v = idx;
    let mut sign = 1i64;
    for a in 0..4 {
        for b in (a + 1)..4 {
            match v[a].cmp(&v[b]) {
                std::cmp::Ordering::Greater => {
                    v.swap(a, b);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// The Pauli–Lubanski component
/// `W_mu = (1/2) eps_{mu nu rho si} L^{nu rho} P^si`, indices raised with the
/// diagonal metric.
pub fn pauli_lubanski(alg: &Arc<FreeAlgebra>, metric: Metric, mu: usize) -> Result<Element> {
    let mut out = Element::zero(alg);
    let half = Scalar::from_rational(1, 2, Ring::GaussianRational)?;
    for nu in 0..4 {
        for rho in 0..4 {
            for si in 0..4 {
                let e = eps4([mu, nu, rho, si]);
                if e == 0 {
                    continue;
                }
                let raise =
                    (metric.sign(nu) * metric.sign(rho) * metric.sign(si)) as i64 * e;
                let coeff = Scalar::from_integer(raise, Ring::GaussianRational);
                let term = (&lorentz_element(alg, nu, rho)? * &momentum_element(alg, si)?)
                    .scale(&coeff)?;
                out = out.add(&term)?;
            }
        }
    }
    out.scale(&half)
}

/// Certifies the Poincaré Casimir structure: `P^2` is central, the Pauli–Lubanski
/// vector commutes with every translation and is orthogonal to momentum, and
/// `W^2 = eta^{mu mu} W_mu W_mu` is central.
pub fn casimir_check(iso: &LiePresentation, metric: Metric) -> Result<Report> {
    let alg = iso.algebra();
    let mut report = Report::new(format!("casimir structure on {} ({})", alg.name(), metric));
    let psq = momentum_squared(alg, metric)?;
    let n = alg.generator_count() as u32;
    for g in 0..n {
        let gen = Element::generator(alg, g);
        let resid = iso.bracket_elems(&psq, &gen)?;
        let label = format!("[P^2, {}] = 0", alg.generator_name(g));
        if resid.is_zero() {
            report.pass(label);
        } else {
            report.fail(label, format!("residual {resid}"));
        }
    }
    let w: Vec<Element> =
        (0..4).map(|mu| pauli_lubanski(alg, metric, mu)).collect::<Result<_>>()?;
    for (mu, w_mu) in w.iter().enumerate() {
        for nu in 0..4 {
            let resid = iso.bracket_elems(w_mu, &momentum_element(alg, nu)?)?;
            let label = format!("[W{mu}, P{nu}] = 0");
            if resid.is_zero() {
                report.pass(label);
            } else {
                report.fail(label, format!("residual {resid}"));
            }
        }
    }
    let mut wdotp = Element::zero(alg);
    for mu in 0..4 {
        let term = (&w[mu] * &momentum_element(alg, mu)?).scale(&metric.eta(mu, mu))?;
        wdotp = wdotp.add(&term)?;
    }
    let wdotp_nf = iso.normalize(&wdotp)?;
    if wdotp_nf.is_zero() {
        report.pass("W·P = 0");
    } else {
        report.fail("W·P = 0", format!("residual {wdotp_nf}"));
    }
    let mut wsq = Element::zero(alg);
    for mu in 0..4 {
        wsq = wsq.add(&(&w[mu] * &w[mu]).scale(&metric.eta(mu, mu))?)?;
    }
    for g in 0..n {
        let gen = Element::generator(alg, g);
        let resid = iso.bracket_elems(&wsq, &gen)?;
        let label = format!("[W^2, {}] = 0", alg.generator_name(g));
        if resid.is_zero() {
            report.pass(label);
        } else {
            report.fail(label, format!("residual {resid}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::random_element;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn nf_string(p: &LiePresentation, e: &Element) -> String {
        p.normalize(e).unwrap().to_string()
    }

    fn gen(p: &LiePresentation, name: &str) -> Element {
        Element::generator_named(p.algebra(), name).unwrap()
    }

    #[test]
    fn lorentz_brackets_match_hand_values_mostly_minus() {
        let so = so13(MOSTLY_MINUS);
        let b = |x: &str, y: &str| {
            p_bracket(&so, x, y)
        };
        assert_eq!(b("L01", "L02"), "i*L12");
        assert_eq!(b("L01", "L12"), "i*L02");
        assert_eq!(b("L12", "L23"), "i*L13");
        assert_eq!(b("L23", "L13"), "i*L12");
        assert_eq!(b("L01", "L23"), "0");
        assert_eq!(b("L02", "L13"), "0");
        assert_eq!(b("L03", "L12"), "0");
    }

    #[test]
    fn lorentz_brackets_flip_sign_with_the_metric() {
        let minus = so13(MOSTLY_MINUS);
        let plus = so13(MOSTLY_PLUS);
        // Only signs move between the two signatures.
        for a in 0..6u32 {
            for b in 0..6u32 {
                let flipped = plus.bracket(a, b).neg();
                assert_eq!(minus.bracket(a, b), &flipped);
            }
        }
        assert_eq!(p_bracket(&plus, "L12", "L23"), "-i*L13");
    }

    fn p_bracket(p: &LiePresentation, x: &str, y: &str) -> String {
        nf_string(p, &gen(p, x).commutator(&gen(p, y)).unwrap())
    }

    #[test]
    fn jacobi_holds_on_all_builtin_presentations() {
        for metric in [MOSTLY_MINUS, MOSTLY_PLUS] {
            for pres in [so13(metric), iso13(metric), su2su2(metric)] {
                let report = pres.jacobi_check().unwrap();
                assert!(report.passed(), "{report}");
            }
        }
    }

    #[test]
    fn rotation_boost_combinations_close_correctly() {
        let so = so13(MOSTLY_MINUS);
        let al = jk_aliases(so.algebra()).unwrap();
        let i = Scalar::i();
        let br = |x: &str, y: &str| so.bracket_elems(&al[x], &al[y]).unwrap();
        // [J1,J2] = -i*J3 and cyclic; boosts close onto rotations with +i.
        assert_eq!(br("J1", "J2"), al["J3"].scale(&i).unwrap().neg());
        assert_eq!(br("J2", "J3"), al["J1"].scale(&i).unwrap().neg());
        assert_eq!(br("K1", "K2"), al["J3"].scale(&i).unwrap());
        assert_eq!(br("J1", "K2"), al["K3"].scale(&i).unwrap().neg());
        assert_eq!(br("J1", "K1"), Element::zero(so.algebra()));
        // Chiral halves: two commuting copies.
        assert_eq!(br("N1", "N2"), al["N3"].scale(&i).unwrap().neg());
        assert_eq!(br("M1", "M2"), al["M3"].scale(&i).unwrap().neg());
        for a in 1..=3 {
            for b in 1..=3 {
                assert_eq!(
                    br(&format!("N{a}"), &format!("M{b}")),
                    Element::zero(so.algebra()),
                    "[N{a}, M{b}] must vanish"
                );
            }
        }
    }

    #[test]
    fn chiral_presentation_matches_the_embedding() {
        for metric in [MOSTLY_MINUS, MOSTLY_PLUS] {
            let nm = su2su2(metric);
            let sign = if metric == MOSTLY_MINUS { Scalar::i().neg() } else { Scalar::i() };
            let expect = |name: &str| gen(&nm, name).scale(&sign).unwrap();
            assert_eq!(nm.bracket_elems(&gen(&nm, "N1"), &gen(&nm, "N2")).unwrap(), expect("N3"));
            assert_eq!(nm.bracket_elems(&gen(&nm, "N2"), &gen(&nm, "N3")).unwrap(), expect("N1"));
            assert_eq!(nm.bracket_elems(&gen(&nm, "N3"), &gen(&nm, "N1")).unwrap(), expect("N2"));
            assert_eq!(nm.bracket_elems(&gen(&nm, "M1"), &gen(&nm, "M2")).unwrap(), expect("M3"));
            for a in ["N1", "N2", "N3"] {
                for b in ["M1", "M2", "M3"] {
                    assert!(nm.bracket_elems(&gen(&nm, a), &gen(&nm, b)).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn translations_transform_as_a_vector() {
        let iso = iso13(MOSTLY_MINUS);
        // [L01, P0] = i*eta_00*P1 = i*P1; [L01, P1] = -i*eta_11*P0 = i*P0.
        assert_eq!(p_bracket(&iso, "L01", "P0"), "i*P1");
        assert_eq!(p_bracket(&iso, "L01", "P1"), "i*P0");
        assert_eq!(p_bracket(&iso, "L12", "P1"), "-i*P2");
        assert_eq!(p_bracket(&iso, "L12", "P3"), "0");
        assert_eq!(p_bracket(&iso, "P0", "P1"), "0");
        assert_eq!(p_bracket(&iso, "P2", "P3"), "0");
    }

    #[test]
    fn casimirs_are_central_in_both_signatures() {
        for metric in [MOSTLY_MINUS, MOSTLY_PLUS] {
            let iso = iso13(metric);
            let report = casimir_check(&iso, metric).unwrap();
            assert!(report.passed(), "{report}");
            // 10 generators vs P^2, 16 (W, P) pairs, W·P, 10 generators vs W^2.
            assert_eq!(report.pass_count(), 37);
        }
    }

    #[test]
    fn graded_dimensions_follow_the_multiset_count() {
        let so = so13(MOSTLY_MINUS);
        let expected: [u128; 9] = [1, 6, 21, 56, 126, 252, 462, 792, 1287];
        for (d, want) in expected.iter().enumerate() {
            assert_eq!(so.graded_dimension(d), *want, "degree {d}");
            if d <= 4 {
                let basis = so.pbw_basis(d);
                assert_eq!(basis.len() as u128, *want);
                for w in &basis {
                    assert!(so.system().is_normal(w), "{} not canonical", w.render(so.algebra()));
                }
            }
        }
    }

    #[test]
    fn straightening_is_confluent_on_random_elements() {
        let so = so13(MOSTLY_MINUS);
        let mut rng = StdRng::seed_from_u64(4242);
        for _ in 0..40 {
            let e = random_element(so.algebra(), 4, 3, &mut rng);
            let nf = so.normalize(&e).unwrap();
            assert_eq!(so.normalize(&nf).unwrap(), nf);
            let alt = so.system().normalize_random_order(&e, &mut rng).unwrap();
            assert_eq!(alt, nf);
        }
    }

    #[test]
    fn presentation_rejects_malformed_tables() {
        let alg = FreeAlgebra::new("bad", Ring::GaussianRational, &["a", "b"]).unwrap();
        let a = Element::generator(&alg, 0);
        // Not antisymmetric.
        let t1 = vec![vec![Element::zero(&alg), a.clone()], vec![a.clone(), Element::zero(&alg)]];
        assert!(LiePresentation::new(&alg, t1).is_err());
        // Degree-two bracket.
        let sq = &a * &a;
        let t2 = vec![vec![Element::zero(&alg), sq.clone()], vec![sq.neg(), Element::zero(&alg)]];
        assert!(LiePresentation::new(&alg, t2).is_err());
        // Wrong shape.
        assert!(LiePresentation::new(&alg, vec![vec![Element::zero(&alg)]]).is_err());
    }

    #[test]
    fn relation_elements_vanish_under_their_own_normal_form() {
        let iso = iso13(MOSTLY_MINUS);
        for (name, rel) in iso.relation_elements() {
            assert!(iso.normalize(&rel).unwrap().is_zero(), "relation {name} must vanish");
        }
        assert_eq!(iso.relation_elements().len(), 45);
    }
}
