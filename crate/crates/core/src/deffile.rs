//! JSON definition files for algebras.
//!
//! A definition file declares a named algebra: its ground ring, its generators, a
//! relation block (one of the supported presentation kinds), and optionally aliases
//! and endomorphisms. Coefficient-level expressions inside the file use the same
//! grammar as the command-line `-e` expressions.
//!
//! Loading a file produces an [`AlgebraEntry`]: the presentation itself plus the
//! auxiliary structure (aliases, endomorphisms with their validation reports, star
//! structure) that the evaluator needs. Endomorphisms that fail to preserve the
//! declared relations are still listed — with a failing report — but are withheld
//! from expression evaluation, so a bad map can be *diagnosed* but never *used*.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{eval_str, EvalContext};
use crate::freealg::{Element, FreeAlgebra};
use crate::lie::{LiePresentation, Metric};
use crate::morphism::{validate_endomorphism, AlphaDerivation, Endomorphism};
use crate::ore::OrePresentation;
use crate::report::Report;
use crate::rewrite::RewriteSystem;
use crate::scalar::Ring;
use crate::skewquant::{imaginary_twist, parity_twist, SkewCcrContext, StarContext};

/// The only schema revision this build reads or writes.
pub const SCHEMA_VERSION: u32 = 1;

/// Serialized form of an algebra definition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub schema_version: u32,
    pub name: String,
    pub ground_ring: Ring,
    /// Signature name, required by the four-pair exchange kind, ignored elsewhere.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    pub generators: Vec<GeneratorDecl>,
    pub relations: RelationsDecl,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub endomorphisms: Vec<EndoDecl>,
    /// Extra named elements, each an expression over the generators.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDecl {
    pub name: String,
    /// When every generator is marked hermitian the entry carries the star structure
    /// with each generator its own dagger.
    #[serde(default)]
    pub hermitian: bool,
}

/// The relation block, tagged by presentation kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RelationsDecl {
    /// No relations at all.
    Free,
    /// An antisymmetric bracket table; unlisted pairs commute.
    Lie { brackets: Vec<BracketDecl> },
    /// A base ring with variables adjoined one at a time, each with its commutation
    /// law `var·g -> alpha(g)·var + delta(g)`.
    Ore {
        /// How many leading generators form the base.
        base_generators: usize,
        /// Whether the base generators commute among themselves.
        #[serde(default)]
        base_commutative: bool,
        /// One block per remaining generator, in declaration order.
        extensions: Vec<OreExtensionDecl>,
    },
    /// A coordinate/momentum exchange algebra with an optional twist preset
    /// (`id`, `parity`, or `itwist`). Generator names are fixed by the pair count.
    SkewCcr {
        pairs: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        twist: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDecl {
    pub left: String,
    pub right: String,
    /// Expression for the bracket value; must be of degree at most one.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OreExtensionDecl {
    /// Must match the next undeclared generator name.
    pub var: String,
    /// Twist images keyed by base-generator name; missing entries default to the
    /// generator itself.
    #[serde(default)]
    pub alpha: BTreeMap<String, String>,
    /// Derivation images keyed by base-generator name; missing entries default to
    /// zero.
    #[serde(default)]
    pub delta: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoDecl {
    pub name: String,
    /// Images keyed by generator name; missing entries default to the generator.
    pub images: BTreeMap<String, String>,
    #[serde(default)]
    pub semilinear: bool,
}

/// The loaded presentation, whichever kind the file declared.
#[derive(Clone, Debug)]
pub enum PresentationKind {
    Free { system: RewriteSystem },
    Lie(LiePresentation),
    Ore(OrePresentation),
    SkewCcr(SkewCcrContext),
}

impl PresentationKind {
    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        match self {
            PresentationKind::Free { system } => system.algebra(),
            PresentationKind::Lie(p) => p.algebra(),
            PresentationKind::Ore(p) => p.algebra(),
            PresentationKind::SkewCcr(c) => c.algebra(),
        }
    }

    /// The rewrite system used for normal forms. Exchange contexts normalize with
    /// their twisted system; the plain one stays reachable through the context.
    pub fn system(&self) -> &RewriteSystem {
        match self {
            PresentationKind::Free { system } => system,
            PresentationKind::Lie(p) => p.system(),
            PresentationKind::Ore(p) => p.system(),
            PresentationKind::SkewCcr(c) => c.skewed(),
        }
    }

    pub fn normalize(&self, e: &Element) -> Result<Element> {
        self.system().normalize(e)
    }

    /// Named relation elements; every one must normalize to zero.
    pub fn relations(&self) -> Vec<(String, Element)> {
        match self {
            PresentationKind::Free { .. } => Vec::new(),
            PresentationKind::Lie(p) => p.relation_elements(),
            PresentationKind::Ore(p) => p.relations().to_vec(),
            PresentationKind::SkewCcr(c) => c.skewed().relation_elements(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            PresentationKind::Free { .. } => "free",
            PresentationKind::Lie(_) => "lie",
            PresentationKind::Ore(_) => "ore",
            PresentationKind::SkewCcr(_) => "skew_ccr",
        }
    }

    /// Adjusts the straightening step budget on every system the kind owns.
    pub fn set_rewrite_cap(&mut self, cap: usize) {
        match self {
            PresentationKind::Free { system } => system.set_cap(cap),
            PresentationKind::Lie(p) => p.set_rewrite_cap(cap),
            PresentationKind::Ore(p) => p.set_rewrite_cap(cap),
            PresentationKind::SkewCcr(c) => c.set_rewrite_cap(cap),
        }
    }

    /// Number of canonical monomials of exact degree `degree`.
    ///
    /// For a free presentation every word is canonical, giving `k^degree`. The other
    /// kinds straighten every generator pair, so the canonical words are the
    /// non-decreasing ones: `C(degree + k - 1, k - 1)`. The count is refused when a
    /// pair carries no rule, because ordered monomials then no longer span.
    pub fn graded_dimension(&self, degree: usize) -> Result<u128> {
        let k = self.algebra().generator_count();
        if let PresentationKind::Free { .. } = self {
            return (k as u128).checked_pow(degree as u32).ok_or_else(|| {
                Error::InvalidPresentation("graded dimension overflows u128".into())
            });
        }
        let expected_rules = k * (k - 1) / 2;
        if self.system().rule_count() != expected_rules {
            return Err(Error::InvalidPresentation(format!(
                "`{}` has no straightening rule for some generator pair; its graded \
                 slices are not spanned by ordered monomials",
                self.algebra().name()
            )));
        }
        Ok(binomial((degree + k - 1) as u128, (k - 1) as u128))
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for step in 0..k {
        acc = acc * (n - step) / (step + 1);
    }
    acc
}

/// A fully loaded algebra: presentation plus evaluator-facing extras.
#[derive(Clone, Debug)]
pub struct AlgebraEntry {
    pub name: String,
    pub kind: PresentationKind,
    /// Every declared endomorphism, valid or not.
    pub endos: BTreeMap<String, Endomorphism>,
    /// One validation report per declared endomorphism.
    pub endo_reports: BTreeMap<String, Report>,
    /// Maps usable in skew brackets and endomorphism application. These act on
    /// representatives and are exempt from relation validation — a twist need not
    /// descend to the quotient.
    pub twists: BTreeMap<String, Endomorphism>,
    pub aliases: BTreeMap<String, Element>,
    pub star: Option<StarContext>,
    pub metric: Option<Metric>,
}

impl AlgebraEntry {
    /// The endomorphisms whose validation reports passed — the only ones expression
    /// evaluation may apply.
    pub fn valid_endos(&self) -> BTreeMap<String, Endomorphism> {
        self.endos
            .iter()
            .filter(|(name, _)| self.endo_reports.get(*name).is_none_or(|r| r.passed()))
            .map(|(name, endo)| (name.clone(), endo.clone()))
            .collect()
    }

    /// The name table expressions see: validated endomorphisms plus the declared
    /// twists (twists win on a name clash, which builtins avoid).
    pub fn eval_endos(&self) -> BTreeMap<String, Endomorphism> {
        let mut map = self.valid_endos();
        for (name, twist) in &self.twists {
            map.insert(name.clone(), twist.clone());
        }
        map
    }

    /// Registers an endomorphism, validating it against the presentation relations.
    pub fn add_endomorphism(&mut self, endo: Endomorphism) -> Result<()> {
        let report =
            validate_endomorphism(&endo, &self.kind.relations(), |e| self.kind.normalize(e))?;
        self.endo_reports.insert(endo.name().to_string(), report);
        self.endos.insert(endo.name().to_string(), endo);
        Ok(())
    }

    /// Parses `src` with this entry's aliases, endomorphisms, and star structure in
    /// scope, then straightens the result to its canonical form.
    pub fn eval(&self, src: &str) -> Result<Element> {
        let endos = self.eval_endos();
        let ctx = EvalContext {
            algebra: self.kind.algebra(),
            aliases: &self.aliases,
            endos: &endos,
            star: self.star.as_ref(),
        };
        let raw = eval_str(src, &ctx)?;
        self.kind.normalize(&raw)
    }
}

fn eval_plain(src: &str, algebra: &Arc<FreeAlgebra>) -> Result<Element> {
    let aliases = BTreeMap::new();
    let endos = BTreeMap::new();
    let ctx = EvalContext { algebra, aliases: &aliases, endos: &endos, star: None };
    eval_str(src, &ctx)
}

fn generator_index(algebra: &FreeAlgebra, name: &str) -> Result<u32> {
    algebra.generator_id(name).ok_or_else(|| Error::UnknownGenerator {
        name: name.to_string(),
        algebra: algebra.name().to_string(),
    })
}

fn build_lie(
    file: &AlgebraFile,
    algebra: &Arc<FreeAlgebra>,
    brackets: &[BracketDecl],
) -> Result<LiePresentation> {
    let n = algebra.generator_count();
    let mut table = vec![vec![Element::zero(algebra); n]; n];
    let mut seen: std::collections::BTreeSet<(u32, u32)> = std::collections::BTreeSet::new();
    for decl in brackets {
        let l = generator_index(algebra, &decl.left)?;
        let r = generator_index(algebra, &decl.right)?;
        if l == r {
            return Err(Error::InvalidDefinition(format!(
                "{}: bracket [{}, {}] pairs a generator with itself",
                file.name, decl.left, decl.right
            )));
        }
        let key = (l.min(r), l.max(r));
        if !seen.insert(key) {
            return Err(Error::InvalidDefinition(format!(
                "{}: bracket for {} and {} given twice",
                file.name, decl.left, decl.right
            )));
        }
        let value = eval_plain(&decl.value, algebra)?;
        table[l as usize][r as usize] = value.clone();
        table[r as usize][l as usize] = value.neg();
    }
    LiePresentation::new(algebra, table)
}

fn build_ore(
    file: &AlgebraFile,
    names: &[&str],
    base_generators: usize,
    base_commutative: bool,
    extensions: &[OreExtensionDecl],
) -> Result<OrePresentation> {
    if base_generators == 0 || base_generators > names.len() {
        return Err(Error::InvalidDefinition(format!(
            "{}: base_generators must name a nonempty prefix of the generator list",
            file.name
        )));
    }
    if base_generators + extensions.len() != names.len() {
        return Err(Error::InvalidDefinition(format!(
            "{}: {} base generators plus {} extensions do not account for all {} generators",
            file.name,
            base_generators,
            extensions.len(),
            names.len()
        )));
    }
    let base_names = &names[..base_generators];
    let mut pres = if base_commutative {
        OrePresentation::commutative(&file.name, file.ground_ring, base_names)?
    } else {
        OrePresentation::free(&file.name, file.ground_ring, base_names)?
    };
    for (pos, ext) in extensions.iter().enumerate() {
        let expected = names[base_generators + pos];
        if ext.var != expected {
            return Err(Error::InvalidDefinition(format!(
                "{}: extension {} adjoins `{}` but the generator list continues with `{}`",
                file.name,
                pos + 1,
                ext.var,
                expected
            )));
        }
        let current = Arc::clone(pres.algebra());
        for key in ext.alpha.keys().chain(ext.delta.keys()) {
            generator_index(&current, key)?;
        }
        let mut alpha_images = Vec::with_capacity(current.generator_count());
        let mut delta_images = Vec::with_capacity(current.generator_count());
        for g in 0..current.generator_count() as u32 {
            let gname = current.generator_name(g);
            alpha_images.push(match ext.alpha.get(gname) {
                Some(src) => eval_plain(src, &current)?,
                None => Element::generator(&current, g),
            });
            delta_images.push(match ext.delta.get(gname) {
                Some(src) => eval_plain(src, &current)?,
                None => Element::zero(&current),
            });
        }
        let twist =
            Endomorphism::new(format!("alpha_{}", ext.var), &current, alpha_images, false)?;
        let delta =
            AlphaDerivation::new(format!("delta_{}", ext.var), &current, twist, delta_images)?;
        pres = pres.extend(&ext.var, &delta)?;
    }
    Ok(pres)
}

fn build_skew_ccr(
    file: &AlgebraFile,
    names: &[&str],
    pairs: usize,
    twist: Option<&str>,
    metric: Option<Metric>,
) -> Result<SkewCcrContext> {
    let canonical = crate::skewquant::ccr_algebra(pairs)?;
    let declared: Vec<&str> = names.to_vec();
    let expected: Vec<&str> = canonical.generator_names().iter().map(String::as_str).collect();
    if declared != expected {
        return Err(Error::InvalidDefinition(format!(
            "{}: a {}-pair exchange algebra fixes the generator list {}",
            file.name,
            pairs,
            expected.join(", ")
        )));
    }
    if file.ground_ring != Ring::GaussianRational {
        return Err(Error::InvalidDefinition(format!(
            "{}: exchange algebras require the ground ring Qi",
            file.name
        )));
    }
    let twist_map = match twist {
        None | Some("id") => None,
        Some("parity") => Some(parity_twist(&canonical)?),
        Some("itwist") => Some(imaginary_twist(&canonical)?),
        Some(other) => {
            return Err(Error::InvalidDefinition(format!(
                "{}: unknown twist preset `{other}` (expected id, parity, or itwist)",
                file.name
            )))
        }
    };
    match pairs {
        1 => SkewCcrContext::single(twist_map),
        4 => SkewCcrContext::four(metric.unwrap_or(crate::lie::MOSTLY_MINUS), twist_map),
        _ => unreachable!("ccr_algebra already rejected this pair count"),
    }
}

/// Interprets a parsed definition file, evaluating every embedded expression and
/// validating every declared endomorphism.
pub fn load_algebra(file: &AlgebraFile) -> Result<AlgebraEntry> {
    if file.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidDefinition(format!(
            "unsupported schema_version {} (this build reads {})",
            file.schema_version, SCHEMA_VERSION
        )));
    }
    if file.generators.is_empty() {
        return Err(Error::InvalidDefinition(format!(
            "{}: at least one generator is required",
            file.name
        )));
    }
    let metric = match &file.metric {
        Some(name) => Some(Metric::from_name(name).ok_or_else(|| {
            Error::InvalidDefinition(format!(
                "{}: unknown metric `{name}` (expected mostly-minus or mostly-plus)",
                file.name
            ))
        })?),
        None => None,
    };
    let names: Vec<&str> = file.generators.iter().map(|g| g.name.as_str()).collect();

    let kind = match &file.relations {
        RelationsDecl::Free => {
            let algebra = FreeAlgebra::new(&file.name, file.ground_ring, &names)?;
            let system =
                RewriteSystem::new(&algebra, crate::rewrite::DEFAULT_REWRITE_CAP);
            PresentationKind::Free { system }
        }
        RelationsDecl::Lie { brackets } => {
            let algebra = FreeAlgebra::new(&file.name, file.ground_ring, &names)?;
            PresentationKind::Lie(build_lie(file, &algebra, brackets)?)
        }
        RelationsDecl::Ore { base_generators, base_commutative, extensions } => {
            PresentationKind::Ore(build_ore(
                file,
                &names,
                *base_generators,
                *base_commutative,
                extensions,
            )?)
        }
        RelationsDecl::SkewCcr { pairs, twist } => PresentationKind::SkewCcr(build_skew_ccr(
            file,
            &names,
            *pairs,
            twist.as_deref(),
            metric,
        )?),
    };

    let algebra = Arc::clone(kind.algebra());

    let star = match &kind {
        // Exchange contexts carry their canonical star; the declaration must agree.
        PresentationKind::SkewCcr(ctx) => Some(ctx.star().clone()),
        _ => {
            if file.generators.iter().all(|g| g.hermitian) {
                Some(StarContext::hermitian(&algebra))
            } else {
                None
            }
        }
    };

    let mut aliases = BTreeMap::new();
    for (alias, src) in &file.aliases {
        if algebra.generator_id(alias).is_some() {
            return Err(Error::InvalidDefinition(format!(
                "{}: alias `{alias}` shadows a generator",
                file.name
            )));
        }
        aliases.insert(alias.clone(), eval_plain(src, &algebra)?);
    }

    let mut twists = BTreeMap::new();
    if let PresentationKind::SkewCcr(ctx) = &kind {
        let twist = ctx.twist().clone();
        if !twist.is_identity() {
            twists.insert(twist.name().to_string(), twist);
        }
    }

    let mut entry = AlgebraEntry {
        name: file.name.clone(),
        kind,
        endos: BTreeMap::new(),
        endo_reports: BTreeMap::new(),
        twists,
        aliases,
        star,
        metric,
    };

    for decl in &file.endomorphisms {
        if entry.endos.contains_key(&decl.name) {
            return Err(Error::InvalidDefinition(format!(
                "{}: endomorphism `{}` declared twice",
                file.name, decl.name
            )));
        }
        for key in decl.images.keys() {
            generator_index(&algebra, key)?;
        }
        let mut images = Vec::with_capacity(algebra.generator_count());
        for g in 0..algebra.generator_count() as u32 {
            let gname = algebra.generator_name(g);
            images.push(match decl.images.get(gname) {
                Some(src) => eval_plain(src, &algebra)?,
                None => Element::generator(&algebra, g),
            });
        }
        let endo = Endomorphism::new(decl.name.clone(), &algebra, images, decl.semilinear)?;
        entry.add_endomorphism(endo)?;
    }

    Ok(entry)
}

/// Parses a JSON string into an [`AlgebraFile`] without interpreting it.
pub fn parse_algebra_json(src: &str) -> Result<AlgebraFile> {
    serde_json::from_str(src)
        .map_err(|e| Error::InvalidDefinition(format!("malformed definition file: {e}")))
}

/// Reads, parses, and interprets a definition file from disk.
pub fn load_algebra_file(path: &std::path::Path) -> Result<AlgebraEntry> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_algebra(&parse_algebra_json(&text)?)
}

/// Serializes a definition to pretty-printed JSON (stable field order).
pub fn render_algebra_json(file: &AlgebraFile) -> String {
    let mut out = serde_json::to_string_pretty(file).expect("definition files always serialize");
    out.push('\n');
    out
}
