//! Ready-made algebra entries, loadable by name from the command line.
//!
//! Each builtin wires together a presentation, the aliases that make it pleasant to
//! talk about (`J1`, `Psq`, realized `L01`, …), and a few endomorphisms that are
//! validated against the presentation on construction. The metric-sensitive ones
//! (`so13`, `su2su2`, `iso13`, `ccr4`, `skewccr4`) accept either signature.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::deffile::{AlgebraEntry, PresentationKind};
use crate::error::{Error, Result};
use crate::freealg::{Element, FreeAlgebra};
use crate::lie::{self, Metric};
use crate::morphism::{AlphaDerivation, Endomorphism};
use crate::ore::OrePresentation;
use crate::scalar::{Ring, Scalar};
use crate::skewquant::{imaginary_twist, parity_twist, SkewCcrContext, StarContext};

/// Every name [`builtin`] accepts, in presentation order.
pub const BUILTIN_NAMES: [&str; 8] =
    ["so13", "su2su2", "iso13", "weyl", "ccr1", "skewccr1", "ccr4", "skewccr4"];

/// One-line descriptions, aligned with [`BUILTIN_NAMES`].
pub fn builtin_summaries() -> Vec<(&'static str, &'static str)> {
    vec![
        ("so13", "rotation/boost algebra on L01..L23 (metric-sensitive)"),
        ("su2su2", "chiral basis N1..N3, M1..M3 with derived brackets"),
        ("iso13", "Poincaré algebra L01..L23, P0..P3 with Psq and W aliases"),
        ("weyl", "one Weyl pair over Q: x·t = t·x + 1"),
        ("ccr1", "one coordinate/momentum pair, untwisted exchange"),
        ("skewccr1", "one pair with the parity-twisted exchange"),
        ("ccr4", "four pairs with metric weights, untwisted exchange"),
        ("skewccr4", "four pairs with the parity-twisted exchange"),
    ]
}

/// Generator images for a sign map: every name in `negate` maps to minus itself,
/// everything else stays fixed.
fn signed_images(alg: &Arc<FreeAlgebra>, negate: &[&str]) -> Vec<Element> {
    (0..alg.generator_count() as u32)
        .map(|g| {
            let e = Element::generator(alg, g);
            if negate.contains(&alg.generator_name(g)) {
                e.neg()
            } else {
                e
            }
        })
        .collect()
}

/// Semilinear negate-everything map; an automorphism whenever every structure
/// constant is purely imaginary.
fn conj_endo(alg: &Arc<FreeAlgebra>) -> Result<Endomorphism> {
    let images =
        (0..alg.generator_count() as u32).map(|g| Element::generator(alg, g).neg()).collect();
    Endomorphism::new("conj", alg, images, true)
}

fn lie_entry(pres: lie::LiePresentation, metric: Metric) -> Result<AlgebraEntry> {
    let algebra = Arc::clone(pres.algebra());
    let star = StarContext::hermitian(&algebra);
    Ok(AlgebraEntry {
        name: algebra.name().to_string(),
        kind: PresentationKind::Lie(pres),
        endos: BTreeMap::new(),
        endo_reports: BTreeMap::new(),
        twists: BTreeMap::new(),
        aliases: BTreeMap::new(),
        star: Some(star),
        metric: Some(metric),
    })
}

fn so13_entry(metric: Metric) -> Result<AlgebraEntry> {
    let mut entry = lie_entry(lie::so13(metric), metric)?;
    let algebra = Arc::clone(entry.kind.algebra());
    entry.aliases = lie::jk_aliases(&algebra)?;
    entry.add_endomorphism(Endomorphism::identity(&algebra))?;
    entry.add_endomorphism(Endomorphism::new(
        "parity",
        &algebra,
        signed_images(&algebra, &["L01", "L02", "L03"]),
        false,
    )?)?;
    entry.add_endomorphism(conj_endo(&algebra)?)?;
    Ok(entry)
}

fn su2su2_entry(metric: Metric) -> Result<AlgebraEntry> {
    let mut entry = lie_entry(lie::su2su2(metric), metric)?;
    let algebra = Arc::clone(entry.kind.algebra());

    let g = |name: &str| Element::generator_named(&algebra, name);
    let minus_i = Scalar::i().neg();
    let mut aliases = BTreeMap::new();
    for k in 1..=3usize {
        let n = g(&format!("N{k}"))?;
        let m = g(&format!("M{k}"))?;
        aliases.insert(format!("J{k}"), &n + &m);
        aliases.insert(format!("K{k}"), (&n - &m).scale(&minus_i)?);
    }
    aliases.insert("L01".into(), aliases["K1"].clone());
    aliases.insert("L02".into(), aliases["K2"].clone());
    aliases.insert("L03".into(), aliases["K3"].clone());
    aliases.insert("L12".into(), aliases["J3"].clone());
    aliases.insert("L13".into(), aliases["J2"].neg());
    aliases.insert("L23".into(), aliases["J1"].clone());
    entry.aliases = aliases;

    entry.add_endomorphism(Endomorphism::identity(&algebra))?;
    // Chiral flip: swap the two halves with a sign, conjugating coefficients.
    let mut images = Vec::new();
    for k in 1..=3usize {
        images.push(g(&format!("M{k}"))?.neg());
    }
    for k in 1..=3usize {
        images.push(g(&format!("N{k}"))?.neg());
    }
    entry.add_endomorphism(Endomorphism::new("conj", &algebra, images, true)?)?;
    Ok(entry)
}

fn iso13_entry(metric: Metric) -> Result<AlgebraEntry> {
    let mut entry = lie_entry(lie::iso13(metric), metric)?;
    let algebra = Arc::clone(entry.kind.algebra());
    let mut aliases = lie::jk_aliases(&algebra)?;
    aliases.insert("Psq".into(), lie::momentum_squared(&algebra, metric)?);
    for mu in 0..4 {
        aliases.insert(format!("W{mu}"), lie::pauli_lubanski(&algebra, metric, mu)?);
    }
    entry.aliases = aliases;
    entry.add_endomorphism(Endomorphism::identity(&algebra))?;
    entry.add_endomorphism(Endomorphism::new(
        "parity",
        &algebra,
        signed_images(&algebra, &["L01", "L02", "L03", "P1", "P2", "P3"]),
        false,
    )?)?;
    entry.add_endomorphism(conj_endo(&algebra)?)?;
    Ok(entry)
}

fn weyl_entry() -> Result<AlgebraEntry> {
    let base = OrePresentation::commutative("weyl", Ring::Rational, &["t"])?;
    let delta = AlphaDerivation::new(
        "d_dt",
        base.algebra(),
        Endomorphism::identity(base.algebra()),
        vec![Element::one(base.algebra())],
    )?;
    let pres = base.extend("x", &delta)?;
    let algebra = Arc::clone(pres.algebra());
    let mut entry = AlgebraEntry {
        name: "weyl".into(),
        kind: PresentationKind::Ore(pres),
        endos: BTreeMap::new(),
        endo_reports: BTreeMap::new(),
        twists: BTreeMap::new(),
        aliases: BTreeMap::new(),
        star: None,
        metric: None,
    };
    entry.add_endomorphism(Endomorphism::identity(&algebra))?;
    // t -> 2t, x -> x/2 preserves x·t - t·x = 1.
    let half = Scalar::from_rational(1, 2, Ring::Rational)?;
    let two = Scalar::from_integer(2, Ring::Rational);
    entry.add_endomorphism(Endomorphism::new(
        "scale",
        &algebra,
        vec![
            Element::generator_named(&algebra, "t")?.scale(&two)?,
            Element::generator_named(&algebra, "x")?.scale(&half)?,
        ],
        false,
    )?)?;
    Ok(entry)
}

fn ccr_entry(pairs: usize, twisted: bool, metric: Metric) -> Result<AlgebraEntry> {
    let canonical = crate::skewquant::ccr_algebra(pairs)?;
    let twist = if twisted { Some(parity_twist(&canonical)?) } else { None };
    let ctx = match pairs {
        1 => SkewCcrContext::single(twist)?,
        _ => SkewCcrContext::four(metric, twist)?,
    };
    let algebra = Arc::clone(ctx.algebra());
    let star = ctx.star().clone();
    let entry_metric = ctx.metric();

    let mut aliases = BTreeMap::new();
    if pairs == 4 {
        for &(a, b) in &[(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            aliases.insert(format!("L{a}{b}"), ctx.realized_lorentz(a, b)?);
        }
    }

    let mut twists = BTreeMap::new();
    twists.insert("parity".to_string(), parity_twist(&algebra)?);
    twists.insert("itwist".to_string(), imaginary_twist(&algebra)?);

    let mut entry = AlgebraEntry {
        name: if twisted { format!("skewccr{pairs}") } else { format!("ccr{pairs}") },
        kind: PresentationKind::SkewCcr(ctx),
        endos: BTreeMap::new(),
        endo_reports: BTreeMap::new(),
        twists,
        aliases,
        star: Some(star),
        metric: entry_metric,
    };
    entry.add_endomorphism(Endomorphism::identity(&algebra))?;

    // l -> 2l, p -> p/2, hbar fixed: rescales both sides of every exchange rule.
    let two = Scalar::from_integer(2, Ring::GaussianRational);
    let half = Scalar::from_rational(1, 2, Ring::GaussianRational)?;
    let mut dilate = Vec::new();
    for g in 0..algebra.generator_count() as u32 {
        let e = Element::generator(&algebra, g);
        let name = algebra.generator_name(g);
        dilate.push(if name.starts_with('l') {
            e.scale(&two)?
        } else if name.starts_with('p') {
            e.scale(&half)?
        } else {
            e
        });
    }
    entry.add_endomorphism(Endomorphism::new("dilate", &algebra, dilate, false)?)?;

    // Semilinear coordinate flip: negates the l's, fixes hbar and the momenta.
    let mut conj = Vec::new();
    for g in 0..algebra.generator_count() as u32 {
        let e = Element::generator(&algebra, g);
        conj.push(if algebra.generator_name(g).starts_with('l') { e.neg() } else { e });
    }
    entry.add_endomorphism(Endomorphism::new("conj", &algebra, conj, true)?)?;
    Ok(entry)
}

/// Builds a builtin entry by name. The metric is honored by the metric-sensitive
/// builtins and ignored by the rest.
pub fn builtin(name: &str, metric: Metric) -> Result<AlgebraEntry> {
    match name {
        "so13" => so13_entry(metric),
        "su2su2" => su2su2_entry(metric),
        "iso13" => iso13_entry(metric),
        "weyl" => weyl_entry(),
        "ccr1" => ccr_entry(1, false, metric),
        "skewccr1" => ccr_entry(1, true, metric),
        "ccr4" => ccr_entry(4, false, metric),
        "skewccr4" => ccr_entry(4, true, metric),
        other => Err(Error::InvalidDefinition(format!(
            "unknown builtin `{other}` (available: {})",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}
