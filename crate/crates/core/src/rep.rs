//! Exact matrix representations: the independent oracle for every straightening rule.
//!
//! A [`Representation`] assigns one exact square matrix per generator and evaluates
//! arbitrary elements as a ring morphism. Because evaluation never consults the
//! rewrite engine, agreement between an element and its canonical form is genuine
//! evidence that the straightening rules present the intended algebra — this is the
//! backbone of the oracle subcommand and of the acceptance gate.
//!
//! Built-ins: the vector representation of the rotation/boost generators
//! (`(L_{mu nu})^rho_si = i(eta_{mu si} delta^rho_nu - eta_{nu si} delta^rho_mu)`),
//! its affine extension to translations (`(P_mu)^rho_4 = i delta^rho_mu` on 5x5
//! matrices), and the adjoint representation read off any purely linear bracket table.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freealg::{Element, FreeAlgebra, Word};
use crate::lie::{LiePresentation, Metric};
use crate::report::Report;
use crate::scalar::{Ring, Scalar};

/// A dense square matrix over exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    ring: Ring,
    dim: usize,
    entries: Vec<Scalar>,
}

impl RepMatrix {
    pub fn zero(dim: usize, ring: Ring) -> Self {
        RepMatrix { ring, dim, entries: vec![Scalar::zero(ring); dim * dim] }
    }

    pub fn identity(dim: usize, ring: Ring) -> Self {
        let mut m = Self::zero(dim, ring);
        for k in 0..dim {
            *m.at_mut(k, k) = Scalar::one(ring);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn at(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.dim + col]
    }

    pub fn at_mut(&mut self, row: usize, col: usize) -> &mut Scalar {
        &mut self.entries[row * self.dim + col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn check_shape(&self, other: &RepMatrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { left: self.ring, right: other.ring });
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &RepMatrix) -> Result<RepMatrix> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(other.entries.iter()) {
            *e = e.add(o)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RepMatrix) -> Result<RepMatrix> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(other.entries.iter()) {
            *e = e.sub(o)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &RepMatrix) -> Result<RepMatrix> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.dim, self.ring);
        for r in 0..self.dim {
            for c in 0..self.dim {
                let mut acc = Scalar::zero(self.ring);
                for k in 0..self.dim {
                    acc = acc.add(&self.at(r, k).mul(other.at(k, c))?)?;
                }
                *out.at_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Result<RepMatrix> {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.mul(s)?;
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &RepMatrix) -> Result<RepMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }
}

impl std::fmt::Display for RepMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for r in 0..self.dim {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.dim {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// One exact matrix per generator, evaluated multiplicatively on whole elements.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<FreeAlgebra>,
    dim: usize,
    images: Vec<RepMatrix>,
}

impl Representation {
    pub fn new(algebra: &Arc<FreeAlgebra>, images: Vec<RepMatrix>) -> Result<Self> {
        if images.len() != algebra.generator_count() {
            let missing = images.len().min(algebra.generator_count());
            return Err(Error::MissingRepImage {
                generator: algebra.generator_name(missing as u32).to_string(),
            });
        }
        let dim = images.first().map(|m| m.dim()).unwrap_or(0);
        for (k, m) in images.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.dim() });
            }
            if m.ring() != algebra.ring() {
                return Err(Error::RingMismatch { left: m.ring(), right: algebra.ring() });
            }
            let _ = k;
        }
        Ok(Representation { algebra: Arc::clone(algebra), dim, images })
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, g: u32) -> &RepMatrix {
        &self.images[g as usize]
    }

    /// Evaluates an element: words map to matrix products, the empty word to the
    /// identity, and the whole sum is taken with exact coefficients.
    pub fn evaluate(&self, e: &Element) -> Result<RepMatrix> {
        if !e.algebra().compatible(&self.algebra) {
            return Err(Error::AlgebraMismatch {
                left: e.algebra().name().to_string(),
                right: self.algebra.name().to_string(),
            });
        }
        let mut out = RepMatrix::zero(self.dim, self.algebra.ring());
        for (word, coeff) in e.terms() {
            let mut prod = RepMatrix::identity(self.dim, self.algebra.ring());
            for &letter in word.letters() {
                prod = prod.mul(&self.images[letter as usize])?;
            }
            out = out.add(&prod.scale(coeff)?)?;
        }
        Ok(out)
    }
}

/// The vector representation of the six `L` generators on 4x4 matrices.
///
/// Entry convention: `image(L_{mu nu}).at(rho, si) = i (eta_{mu si} delta^rho_nu -
/// eta_{nu si} delta^rho_mu)`.
pub fn so13_vector_rep(alg: &Arc<FreeAlgebra>, metric: Metric) -> Result<Representation> {
    let images = lorentz_images(alg, metric, 4)?;
    Representation::new(alg, images)
}

const L_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Builds the `L` images at an embedding dimension (4 for the vector rep, 5 affine),
/// in the order the generator list declares them.
fn lorentz_images(
    alg: &Arc<FreeAlgebra>,
    metric: Metric,
    dim: usize,
) -> Result<Vec<RepMatrix>> {
    let i = Scalar::i();
    let mut images = Vec::new();
    for &(mu, nu) in &L_PAIRS {
        let mut m = RepMatrix::zero(dim, Ring::GaussianRational);
        for rho in 0..4 {
            for si in 0..4 {
                let mut val = Scalar::zero(Ring::GaussianRational);
                if rho == nu {
                    val = val.add(&metric.eta(mu, si))?;
                }
                if rho == mu {
                    val = val.sub(&metric.eta(nu, si))?;
                }
                *m.at_mut(rho, si) = val.mul(&i)?;
            }
        }
        images.push(m);
    }
    // Order sanity: the generator list must be exactly L01..L23 at indices 0..5.
    for (k, &(mu, nu)) in L_PAIRS.iter().enumerate() {
        let want = format!("L{mu}{nu}");
        if alg.generator_name(k as u32) != want {
            return Err(Error::MissingRepImage { generator: want });
        }
    }
    Ok(images)
}

/// The affine 5x5 representation of the Poincaré generators: the `L` block acts on
/// the first four coordinates, and `(P_mu)^rho_4 = i delta^rho_mu`.
pub fn iso13_affine_rep(alg: &Arc<FreeAlgebra>, metric: Metric) -> Result<Representation> {
    let mut images = lorentz_images(alg, metric, 5)?;
    let i = Scalar::i();
    for mu in 0..4usize {
        let name = format!("P{mu}");
        if alg.generator_name((6 + mu) as u32) != name {
            return Err(Error::MissingRepImage { generator: name });
        }
        let mut m = RepMatrix::zero(5, Ring::GaussianRational);
        *m.at_mut(mu, 4) = i.clone();
        images.push(m);
    }
    Representation::new(alg, images)
}

/// The adjoint representation read off a purely linear bracket table:
/// `(ad g_a)_{c b}` is the coefficient of `g_c` in `[g_a, g_b]`.
///
/// Errors if any bracket carries a constant term, since constants act as zero in the
/// adjoint action and the table would not be faithful to itself.
pub fn adjoint_rep(pres: &LiePresentation) -> Result<Representation> {
    let alg = pres.algebra();
    let n = alg.generator_count();
    let mut images = Vec::with_capacity(n);
    for a in 0..n as u32 {
        let mut m = RepMatrix::zero(n, alg.ring());
        for b in 0..n as u32 {
            let bracket = pres.bracket(a, b);
            for (word, coeff) in bracket.terms() {
                match word.letters() {
                    [c] => *m.at_mut(*c as usize, b as usize) = coeff.clone(),
                    [] => {
                        return Err(Error::InvalidPresentation(format!(
                            "bracket [{}, {}] has a constant term; the adjoint action \
                             cannot represent it",
                            alg.generator_name(a),
                            alg.generator_name(b)
                        )))
                    }
                    _ => unreachable!("presentation constructor enforces degree <= 1"),
                }
            }
        }
        images.push(m);
    }
    Representation::new(alg, images)
}

/// Checks that a representation satisfies every tabulated bracket:
/// `[rep(g_a), rep(g_b)] == rep([g_a, g_b])` for all pairs.
pub fn rep_validate(pres: &LiePresentation, rep: &Representation) -> Result<Report> {
    let alg = pres.algebra();
    if !rep.algebra().compatible(alg) {
        return Err(Error::AlgebraMismatch {
            left: rep.algebra().name().to_string(),
            right: alg.name().to_string(),
        });
    }
    let n = alg.generator_count() as u32;
    let mut report =
        Report::new(format!("bracket relations of {} in a dim-{} representation", alg.name(), rep.dim()));
    for a in 0..n {
        for b in (a + 1)..n {
            let lhs = rep.image(a).commutator(rep.image(b))?;
            let rhs = rep.evaluate(pres.bracket(a, b))?;
            let label = format!(
                "[{}, {}] matches",
                alg.generator_name(a),
                alg.generator_name(b)
            );
            if lhs == rhs {
                report.pass(label);
            } else {
                report.fail(label, format!("matrices differ: {lhs} vs {rhs}"));
            }
        }
    }
    Ok(report)
}

/// Evaluates an element and its canonical form and reports whether the matrices agree
/// — the per-element oracle test.
pub fn oracle_agrees(
    pres: &LiePresentation,
    rep: &Representation,
    e: &Element,
) -> Result<bool> {
    let direct = rep.evaluate(e)?;
    let via_nf = rep.evaluate(&pres.normalize(e)?)?;
    Ok(direct == via_nf)
}

/// Exact membership test: is `target` in the linear span of `span`?
///
/// Row-reduces over the coefficient field of the common algebra; used by the
/// decomposition checks on Ore extensions.
pub fn element_in_span(span: &[Element], target: &Element) -> Result<bool> {
    if target.is_zero() {
        return Ok(true);
    }
    let alg = target.algebra();
    let mut words: BTreeSet<Word> = target.terms().map(|(w, _)| w.clone()).collect();
    for e in span {
        if !e.algebra().compatible(alg) {
            return Err(Error::AlgebraMismatch {
                left: e.algebra().name().to_string(),
                right: alg.name().to_string(),
            });
        }
        words.extend(e.terms().map(|(w, _)| w.clone()));
    }
    let index: Vec<&Word> = words.iter().collect();
    let to_vec = |e: &Element| -> Vec<Scalar> {
        index.iter().map(|w| e.coefficient(w)).collect()
    };
    // Incremental row echelon with pivot bookkeeping.
    let mut pivots: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for e in span {
        let mut row = to_vec(e);
        reduce_row(&mut row, &pivots)?;
        if let Some(col) = first_nonzero(&row) {
            let inv = row[col].inverse()?;
            for x in row.iter_mut() {
                *x = x.mul(&inv)?;
            }
            pivots.push((col, row));
        }
    }
    let mut row = to_vec(target);
    reduce_row(&mut row, &pivots)?;
    Ok(first_nonzero(&row).is_none())
}

fn first_nonzero(row: &[Scalar]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

fn reduce_row(row: &mut [Scalar], pivots: &[(usize, Vec<Scalar>)]) -> Result<()> {
    for (col, pivot) in pivots {
        if row[*col].is_zero() {
            continue;
        }
        let factor = row[*col].clone();
        for (x, p) in row.iter_mut().zip(pivot.iter()) {
            *x = x.sub(&factor.mul(p)?)?;
        }
    }
    Ok(())
}
