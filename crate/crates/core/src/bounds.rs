//! Symbolic ball calculus over generator descriptions, derived-category ball
//! strategies for quotients R/I, and the bound formulas assembled into a
//! report.
//!
//! Generators are symbolic labels for cyclic modules (or module classes);
//! no triangulated category is ever materialized. Radii compose exactly:
//! star adds, filtration multiplies, and passing from the derived ball of
//! R/I to the singularity category multiplies by mu(I) - grade(I) + 1.

use crate::error::{Error, Result};
use crate::groebner::Caps;
use crate::ideal::{self, Dimension, IdealData};
use crate::invariants::{
    self, auto_radical_candidates, grade_koszul, loewy_length, mu,
    nilpotency_index, socle, Attestations, HypothesisStatus, IdealKind, RadicalCandidate, Status,
};
use crate::poly::{PolyRing, Polynomial};
use crate::resolution::depth_graded;
use crate::ring::Ring;

/// Category tag of a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Category {
    /// D^b of the named quotient.
    DerivedBounded(String),
    /// The singularity category of R.
    Singularity,
}

impl Category {
    pub fn render(&self) -> String {
        match self {
            Category::DerivedBounded(label) => format!("D^b({label})"),
            Category::Singularity => "D_sg(R)".to_string(),
        }
    }
}

/// Symbolic generator description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// The residue field k.
    ResidueField,
    /// The cyclic module R/(gens); an empty list means R itself.
    Cyclic(Vec<Polynomial>),
    /// Direct sum of generators (normalized: flattened, deduplicated).
    Sum(Vec<Generator>),
    /// The module class mod(R/I).
    ModuleClass(Vec<Polynomial>),
    /// The extension-closure class filt{R/p : p in V(I)}.
    FiltrationClass(Vec<Polynomial>),
    /// Radius supplied by the user without a generator description.
    UserSupplied,
}

/// Lowercased display ring: quotient-ring elements are conventionally
/// written in lowercase. Falls back to the declared names on collision.
fn display_ring(ambient: &PolyRing) -> PolyRing {
    let lowered: Vec<String> = ambient.vars.iter().map(|v| v.to_lowercase()).collect();
    let mut unique = lowered.clone();
    unique.sort();
    unique.dedup();
    if unique.len() == lowered.len() {
        let mut r = ambient.clone();
        r.vars = lowered;
        r
    } else {
        ambient.clone()
    }
}

impl Generator {
    fn render_with(&self, disp: &PolyRing) -> String {
        match self {
            Generator::ResidueField => "k".to_string(),
            Generator::Cyclic(gens) => {
                if gens.is_empty() {
                    "R".to_string()
                } else {
                    let parts: Vec<String> = gens.iter().map(|g| g.render(disp)).collect();
                    format!("R/({})", parts.join(", "))
                }
            }
            Generator::Sum(parts) => parts
                .iter()
                .map(|p| p.render_with(disp))
                .collect::<Vec<_>>()
                .join(" \u{2295} "),
            Generator::ModuleClass(gens) => {
                let parts: Vec<String> = gens.iter().map(|g| g.render(disp)).collect();
                format!("mod(R/({}))", parts.join(", "))
            }
            Generator::FiltrationClass(gens) => {
                let parts: Vec<String> = gens.iter().map(|g| g.render(disp)).collect();
                format!("filt{{R/p : p in V({})}}", parts.join(", "))
            }
            Generator::UserSupplied => "(user-supplied generator)".to_string(),
        }
    }

    pub fn render(&self, ambient: &PolyRing) -> String {
        self.render_with(&display_ring(ambient))
    }

    /// Flattens direct sums and drops duplicate summands; a ball is closed
    /// under finite direct sums of its generator.
    fn normalized(self, ambient: &PolyRing) -> Generator {
        match self {
            Generator::Sum(parts) => {
                let mut flat: Vec<Generator> = Vec::new();
                let mut seen: Vec<String> = Vec::new();
                for p in parts {
                    let p = p.normalized(ambient);
                    let sub: Vec<Generator> = match p {
                        Generator::Sum(inner) => inner,
                        other => vec![other],
                    };
                    for s in sub {
                        let key = s.render(ambient);
                        if !seen.contains(&key) {
                            seen.push(key);
                            flat.push(s);
                        }
                    }
                }
                if flat.len() == 1 {
                    flat.pop().unwrap()
                } else {
                    Generator::Sum(flat)
                }
            }
            other => other,
        }
    }
}

/// A symbolic ball: generator, radius, category, and the trail of rules that
/// produced it.
#[derive(Debug, Clone)]
pub struct BallExpr {
    pub category: Category,
    pub generator: Generator,
    pub radius: u64,
    pub provenance: Vec<String>,
}

impl BallExpr {
    pub fn render(&self, ambient: &PolyRing) -> String {
        format!(
            "\u{27e8}{}\u{27e9}_{}",
            self.generator.render(ambient),
            self.radius
        )
    }

    /// Regards the ball inside another category (image under a triangle
    /// functor never increases the radius).
    pub fn regarded_in(mut self, category: Category, note: &str) -> BallExpr {
        self.provenance.push(note.to_string());
        self.category = category;
        self
    }
}

/// Star composition: an extension of two balls in the same category; the
/// radii add and the generators join in a direct sum.
pub fn star(ambient: &PolyRing, a: &BallExpr, b: &BallExpr) -> Result<BallExpr> {
    if a.category != b.category {
        return Err(Error::InvalidArgument(format!(
            "star of balls in different categories: {} vs {}",
            a.category.render(),
            b.category.render()
        )));
    }
    if a.radius == 0 || b.radius == 0 {
        return Err(Error::InvalidArgument(
            "star requires positive radii".into(),
        ));
    }
    let mut provenance = a.provenance.clone();
    provenance.extend(b.provenance.iter().cloned());
    provenance.push(format!(
        "star composition: radius {} + {} = {}",
        a.radius,
        b.radius,
        a.radius + b.radius
    ));
    Ok(BallExpr {
        category: a.category.clone(),
        generator: Generator::Sum(vec![a.generator.clone(), b.generator.clone()])
            .normalized(ambient),
        radius: a.radius + b.radius,
        provenance,
    })
}

/// Filtration of length m: the radius multiplies, the generator is fixed.
pub fn filtration(m: u64, inner: &BallExpr) -> Result<BallExpr> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "filtration length must be at least one".into(),
        ));
    }
    if inner.radius == 0 {
        return Err(Error::InvalidArgument(
            "filtration requires a positive inner radius".into(),
        ));
    }
    let mut provenance = inner.provenance.clone();
    provenance.push(format!(
        "filtration of length {m}: radius {} * {m} = {}",
        inner.radius,
        inner.radius * m
    ));
    Ok(BallExpr {
        category: inner.category.clone(),
        generator: inner.generator.clone(),
        radius: inner.radius * m,
        provenance,
    })
}

/// Strategy for bounding D^b(R/I) by a single ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Artinian,
    Regular,
    NilpotentFiltration,
    SocleSplit,
}

impl Strategy {
    pub fn parse(s: &str) -> Result<Strategy> {
        Ok(match s {
            "auto" => Strategy::Auto,
            "artinian" => Strategy::Artinian,
            "regular" => Strategy::Regular,
            "nilpotent-filtration" => Strategy::NilpotentFiltration,
            "socle-split" => Strategy::SocleSplit,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown strategy `{other}`"
                )))
            }
        })
    }
}

/// Canonical cyclic-module label for the quotient by `defining` inside R:
/// the minimal generators of the ideal when graded, the reduced lifted basis
/// otherwise.
fn cyclic_label(defining: &IdealData, caps: Caps) -> Result<Generator> {
    if defining.is_zero_in_quotient() {
        return Ok(Generator::Cyclic(Vec::new()));
    }
    let gens = if defining.ring.homogeneous && defining.is_weighted_homogeneous() {
        defining.minimal_generators(caps)?
    } else {
        defining
            .lifted
            .elements
            .iter()
            .map(|g| defining.ring.reduce(g))
            .filter(|g| !g.is_zero())
            .collect()
    };
    Ok(Generator::Cyclic(gens))
}

fn artinian_ball(label: String, defining: &IdealData, caps: Caps) -> Result<BallExpr> {
    match defining.dimension()? {
        Dimension::Finite(0) => {}
        _ => {
            return Err(Error::Unsupported(
                "artinian strategy requires a zero-dimensional quotient".into(),
            ))
        }
    }
    let ll = loewy_length(defining, caps)?;
    Ok(BallExpr {
        category: Category::DerivedBounded(label),
        generator: Generator::ResidueField,
        radius: ll as u64,
        provenance: vec![format!(
            "artinian quotient: derived category is the ball of radius ll = {ll} around k"
        )],
    })
}

fn regular_ball(
    label: String,
    defining: &IdealData,
    att: &Attestations,
    caps: Caps,
) -> Result<BallExpr> {
    let reg = invariants::regularity_status(defining, att, caps)?;
    if reg.status != Status::Verified {
        return Err(Error::Unsupported(format!(
            "regular strategy not applicable: {}",
            reg.evidence
        )));
    }
    let d = match defining.dimension()? {
        Dimension::Finite(d) => d,
        Dimension::Empty => {
            return Err(Error::Unsupported("regular strategy on the zero ring".into()))
        }
    };
    let generator = cyclic_label(defining, caps)?;
    Ok(BallExpr {
        category: Category::DerivedBounded(label),
        generator,
        radius: d as u64 + 1,
        provenance: vec![format!(
            "regular quotient of dimension {d}: derived category is the ball of radius dim + 1 = {}",
            d + 1
        )],
    })
}

fn nilpotent_filtration_ball(
    label: String,
    defining: &IdealData,
    candidates: &[RadicalCandidate],
    nil_cap: u32,
    att: &Attestations,
    caps: Caps,
) -> Result<BallExpr> {
    let nil = nilpotency_index(defining, candidates, nil_cap, caps)?;
    if !nil.verified {
        return Err(Error::Unsupported(
            "nilpotent filtration needs a verified nilradical (candidate containment or \
             primality failed, or the power cap was exhausted)"
                .into(),
        ));
    }
    let e = nil.index.expect("verified implies an index") as u64;
    // Quotient by the nilradical.
    let ring = defining.ring.clone();
    let mut red_gens = defining.generators.clone();
    for c in candidates {
        red_gens.extend(c.gens.iter().cloned());
    }
    let reduced_defining = IdealData::new(ring, red_gens, caps)?;
    let inner = regular_ball(label.clone(), &reduced_defining, att, caps).map_err(|_| {
        Error::Unsupported(
            "nilpotent filtration needs the reduced quotient to be verified regular".into(),
        )
    })?;
    let inner = inner.regarded_in(
        Category::DerivedBounded(label),
        "regarded along the surjection onto the reduced quotient",
    );
    let mut ball = filtration(e, &inner)?;
    ball.provenance.push(format!(
        "nilpotent filtration: nilradical powers vanish at exponent {e}"
    ));
    Ok(ball)
}

fn socle_split_ball(
    label: String,
    defining: &IdealData,
    att: &Attestations,
    caps: Caps,
) -> Result<BallExpr> {
    let primes = defining.monomial_minimal_primes().map_err(|_| {
        Error::Unsupported("socle-split requires a monomial defining ideal".into())
    })?;
    if primes.len() != 1 {
        return Err(Error::Unsupported(format!(
            "socle-split requires a unique minimal prime, found {}",
            primes.len()
        )));
    }
    let ring = defining.ring.clone();
    let ambient = ring.ambient.clone();
    let s_ring = ideal::quotient_presentation(defining, caps)?;
    let p_gens: Vec<Polynomial> = primes[0]
        .iter()
        .map(|&i| Polynomial::var(&ambient, i))
        .collect();
    let p_in_s = IdealData::new(s_ring.clone(), p_gens.clone(), caps)?;
    let zero_s = IdealData::zero(s_ring, caps)?;
    let annihilator = zero_s.colon(&p_in_s, caps)?;

    // S/(0 : p), as a quotient of R.
    let mut a1_gens = defining.generators.clone();
    a1_gens.extend(annihilator.generators.iter().cloned());
    let a1 = IdealData::new(ring.clone(), a1_gens, caps)?;
    let ball1 = artinian_ball(label.clone(), &a1, caps).map_err(|_| {
        Error::Unsupported("socle-split requires S/(0 : p) to be artinian and graded".into())
    })?;
    let ball1 = ball1.regarded_in(
        Category::DerivedBounded(label.clone()),
        "regarded along the surjection onto S/(0 : p)",
    );

    // S/p, as a quotient of R.
    let mut a2_gens = defining.generators.clone();
    a2_gens.extend(p_gens.iter().cloned());
    let a2 = IdealData::new(ring, a2_gens, caps)?;
    let ball2 = regular_ball(label.clone(), &a2, att, caps).map_err(|_| {
        Error::Unsupported("socle-split requires S/p to be verified regular".into())
    })?;
    let ball2 = ball2.regarded_in(
        Category::DerivedBounded(label),
        "regarded along the surjection onto S/p",
    );

    let mut ball = star(&ambient, &ball1, &ball2)?;
    ball.provenance.push(
        "socle-split (example-pattern): extension of S/(0 : p)-complexes by S/p-complexes"
            .to_string(),
    );
    Ok(ball)
}

/// Bounds D^b of the quotient by `defining` with the requested strategy.
/// `auto` tries every strategy and keeps the smallest radius, recording the
/// other candidates in the provenance.
pub fn derived_category_ball(
    label: String,
    defining: &IdealData,
    strategy: Strategy,
    candidates: Option<&[RadicalCandidate]>,
    nil_cap: u32,
    att: &Attestations,
    caps: Caps,
) -> Result<BallExpr> {
    let auto_cands;
    let cands: &[RadicalCandidate] = match candidates {
        Some(c) => c,
        None => {
            auto_cands = auto_radical_candidates(defining).unwrap_or_default();
            &auto_cands
        }
    };
    match strategy {
        Strategy::Artinian => artinian_ball(label, defining, caps),
        Strategy::Regular => regular_ball(label, defining, att, caps),
        Strategy::NilpotentFiltration => {
            if cands.is_empty() {
                return Err(Error::Unsupported(
                    "no radical candidates available; pass --radical".into(),
                ));
            }
            nilpotent_filtration_ball(label, defining, cands, nil_cap, att, caps)
        }
        Strategy::SocleSplit => socle_split_ball(label, defining, att, caps),
        Strategy::Auto => {
            let mut attempts: Vec<(&'static str, Result<BallExpr>)> = Vec::new();
            attempts.push(("artinian", artinian_ball(label.clone(), defining, caps)));
            attempts.push(("regular", regular_ball(label.clone(), defining, att, caps)));
            attempts.push((
                "nilpotent-filtration",
                if cands.is_empty() {
                    Err(Error::Unsupported("no radical candidates".into()))
                } else {
                    nilpotent_filtration_ball(
                        label.clone(),
                        defining,
                        cands,
                        nil_cap,
                        att,
                        caps,
                    )
                },
            ));
            attempts.push((
                "socle-split",
                socle_split_ball(label.clone(), defining, att, caps),
            ));
            let mut notes: Vec<String> = Vec::new();
            let mut best: Option<(&'static str, BallExpr)> = None;
            for (name, res) in attempts {
                match res {
                    Ok(ball) => {
                        notes.push(format!("strategy {name}: radius {}", ball.radius));
                        let better = match &best {
                            None => true,
                            Some((_, b)) => ball.radius < b.radius,
                        };
                        if better {
                            best = Some((name, ball));
                        }
                    }
                    Err(e) => notes.push(format!("strategy {name}: not applicable ({e})")),
                }
            }
            match best {
                Some((name, mut ball)) => {
                    ball.provenance.push(format!(
                        "auto strategy selected {name}; candidates: {}",
                        notes.join("; ")
                    ));
                    Ok(ball)
                }
                None => Err(Error::Unsupported(
                    "no derived-category strategy applies; supply --derived-radius N".into(),
                )),
            }
        }
    }
}

/// Loewy length with an explicit infinity for non-artinian quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoewyLength {
    Finite(u32),
    Infinite,
}

impl LoewyLength {
    pub fn render(&self) -> String {
        match self {
            LoewyLength::Finite(n) => n.to_string(),
            LoewyLength::Infinite => "infinity".to_string(),
        }
    }
}

/// The invariant values a report can carry.
#[derive(Debug, Clone, Default)]
pub struct InvariantSet {
    pub mu: Option<u32>,
    pub grade: Option<u32>,
    pub depth: Option<u32>,
    pub dim: Option<u32>,
    pub dim_quotient: Option<u32>,
    pub loewy: Option<LoewyLength>,
    pub nilpotency: Option<u32>,
    pub rtype: Option<u32>,
    pub height: Option<u32>,
}

/// Final output of the bound pipeline.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub formula: String,
    pub ball: Option<BallExpr>,
    pub dim_bound: Option<u64>,
    pub conditional: Option<String>,
    pub hypotheses: Vec<HypothesisStatus>,
    pub invariants: InvariantSet,
    pub trace: Vec<String>,
    pub warnings: Vec<String>,
}

fn multiplier(mu: u32, grade: u32) -> Result<u64> {
    if grade > mu {
        return Err(Error::InvalidArgument(format!(
            "grade {grade} exceeds mu {mu}; the multiplier would be non-positive"
        )));
    }
    Ok((mu - grade + 1) as u64)
}

/// One bound candidate prior to selection, carrying exactly the
/// hypotheses its formula relies on.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub formula: &'static str,
    pub ball: BallExpr,
    pub priority: u8,
    pub hyps: Vec<HypothesisStatus>,
}

impl Candidate {
    pub fn dim_bound(&self) -> u64 {
        self.ball.radius - 1
    }
}

/// The composed main bound: D_sg(R) = <mod R/I>_{mu-grade+1} with the module
/// class contracted into the derived ball of R/I.
pub fn compose_singularity_ball(
    dbs: &BallExpr,
    mu_val: u32,
    grade_val: u32,
) -> Result<BallExpr> {
    let m = multiplier(mu_val, grade_val)?;
    let mut provenance = dbs.provenance.clone();
    provenance.push(format!(
        "module-class contraction into the singularity category: multiplier \
         mu - grade + 1 = {m}, radius {} * {m} = {}",
        dbs.radius,
        dbs.radius * m
    ));
    Ok(BallExpr {
        category: Category::Singularity,
        generator: dbs.generator.clone(),
        radius: dbs.radius * m,
        provenance,
    })
}

/// radius = (mu - depth + 1) * ll(R/I), generator k.
pub fn liu_radius(mu_val: u32, depth: u32, ll: u32) -> Result<u64> {
    if depth > mu_val {
        return Err(Error::InvalidArgument(
            "mu - depth + 1 must be positive".into(),
        ));
    }
    Ok((mu_val - depth + 1) as u64 * ll as u64)
}

/// radius = ll(R/I) * (mu - grade + 1), generator the residue field of R/I.
pub fn dimsing0_radius(mu_val: u32, grade_val: u32, ll: u32) -> Result<u64> {
    Ok(ll as u64 * multiplier(mu_val, grade_val)?)
}

/// radius = 2 n(S) (ll(T) + 1)(mu - grade + 1); ll(T) = 0 in the verified
/// T = 0 case.
pub fn dimsing1_radius(mu_val: u32, grade_val: u32, n_s: u32, ll_t: u32) -> Result<u64> {
    Ok(2 * n_s as u64 * (ll_t as u64 + 1) * multiplier(mu_val, grade_val)?)
}

/// min{(ll(R/I) + 1)(mu - dim R + 1) - 1, 2 n(S)(ll(T) + 1)(mu - grade + 1) - 1},
/// with an explicit infinity when R/I is not artinian. Returns the winning
/// dim bound and which operand won (0 or 1).
pub fn countable_cm_bound(
    mu_val: u32,
    grade_val: u32,
    dim_r: u32,
    ll_quotient: LoewyLength,
    n_s: u32,
    ll_t: u32,
) -> Result<(u64, usize)> {
    let op1: Option<u64> = match ll_quotient {
        LoewyLength::Infinite => None,
        LoewyLength::Finite(ll) => {
            if dim_r > mu_val {
                return Err(Error::InvalidArgument(
                    "mu - dim + 1 must be positive".into(),
                ));
            }
            Some((ll as u64 + 1) * (mu_val - dim_r + 1) as u64 - 1)
        }
    };
    let op2 = dimsing1_radius(mu_val, grade_val, n_s, ll_t)? - 1;
    match op1 {
        Some(v1) if v1 <= op2 => Ok((v1, 0)),
        _ => Ok((op2, 1)),
    }
}

/// Relabels a cyclic generator R/(f) by the residue field when f is a
/// nonzero socle element: the short exact sequence 0 -> (f) -> R -> R/(f) -> 0
/// has (f) isomorphic to k, so R/(f) is a shifted copy of k in the
/// singularity category.
pub fn relabel_socle_cyclic(
    ball: BallExpr,
    ring: &Ring,
    socle_ideal: &IdealData,
) -> BallExpr {
    if let Generator::Cyclic(gens) = &ball.generator {
        if gens.len() == 1
            && !ring.is_zero_in_quotient(&gens[0])
            && socle_ideal.contains(&gens[0])
        {
            let mut provenance = ball.provenance;
            provenance.push(
                "generator relabeled: the cyclic module is cut out by a socle element, \
                 hence is a shifted residue field in the singularity category"
                    .to_string(),
            );
            return BallExpr {
                category: ball.category,
                generator: Generator::ResidueField,
                radius: ball.radius,
                provenance,
            };
        }
    }
    ball
}

/// Everything the bound pipeline needs about the ideal I.
pub struct PipelineInput {
    pub ring: Ring,
    pub kind: IdealKind,
    pub ideal: IdealData,
    pub strategy: Strategy,
    pub derived_radius: Option<u64>,
    pub radical_candidates: Option<Vec<RadicalCandidate>>,
    pub nil_cap: u32,
    pub attestations: Attestations,
    pub caps: Caps,
}

/// Runs the whole bound pipeline: invariants, hypothesis verification, every
/// applicable formula, and selection of the sharpest verified bound.
pub fn bound_pipeline(input: &PipelineInput) -> Result<BoundReport> {
    let ring = &input.ring;
    let caps = input.caps;
    let att = &input.attestations;
    let mut warnings: Vec<String> = Vec::new();
    let mut trace: Vec<String> = Vec::new();

    let depth = depth_graded(ring, caps)?;
    let dim_r = ring.dim;
    let mut inv = InvariantSet {
        depth: Some(depth),
        dim: Some(dim_r),
        ..Default::default()
    };

    if ring.h == 0 {
        warnings.push(
            "the presentation is regular (h = 0): the singularity category is trivial"
                .to_string(),
        );
    }

    let mut base_hyps =
        invariants::verify_hypotheses(ring, &input.ideal, input.kind, att, caps)?;
    base_hyps.push(HypothesisStatus {
        name: "quotient-quasi-excellent".into(),
        status: Status::Verified,
        evidence: "finitely generated algebra over a perfect field".into(),
    });
    let status_of = |hyps: &[HypothesisStatus], name: &str| -> Status {
        hyps.iter()
            .find(|h| h.name == name)
            .map(|h| h.status)
            .unwrap_or(Status::Unverifiable)
    };

    if !input.ideal.is_proper() {
        return Err(Error::InvalidArgument(
            "the ideal is the unit ideal; grade is undefined and no bound applies \
             (a regular presentation has a trivial singularity category)"
                .into(),
        ));
    }

    let mu_val = mu(&input.ideal, caps)?;
    let grade_val = grade_koszul(&input.ideal, caps)?;
    inv.mu = Some(mu_val);
    inv.grade = Some(grade_val);
    if let Ok(h) = input.ideal.height_monomial() {
        inv.height = Some(h);
    }
    let dim_s = match input.ideal.dimension()? {
        Dimension::Finite(d) => d,
        Dimension::Empty => unreachable!("proper ideal"),
    };
    inv.dim_quotient = Some(dim_s);
    let ll_quotient: LoewyLength = if dim_s == 0 {
        LoewyLength::Finite(loewy_length(&input.ideal, caps)?)
    } else {
        LoewyLength::Infinite
    };
    inv.loewy = Some(ll_quotient);

    let ann_ok = status_of(&base_hyps, "ideal-in-annihilator").acceptable();
    let sing_ok = input.kind == IdealKind::Socle
        || status_of(&base_hyps, "sing-in-v").acceptable();

    let mut candidates: Vec<Candidate> = Vec::new();

    // Depth-zero route via the socle, independent of the supplied ideal.
    if depth == 0 {
        match depth_zero_candidate(ring, input, &mut inv, &mut trace) {
            Ok(c) => candidates.push(c),
            Err(e) => trace.push(format!("candidate depth_zero: not applicable ({e})")),
        }
    }

    // Derived ball of R/I for the composed route.
    let label = match input.kind {
        IdealKind::Jacobian => "R/jac(R)".to_string(),
        IdealKind::Socle => "R/soc(R)".to_string(),
        IdealKind::User => "R/I".to_string(),
    };
    let derived = if let Some(r) = input.derived_radius {
        base_hyps.push(HypothesisStatus {
            name: "derived-ball".into(),
            status: Status::Attested,
            evidence: format!("radius {r} supplied via --derived-radius"),
        });
        Ok(BallExpr {
            category: Category::DerivedBounded(label.clone()),
            generator: Generator::UserSupplied,
            radius: r,
            provenance: vec!["user-supplied derived-category radius".to_string()],
        })
    } else {
        derived_category_ball(
            label,
            &input.ideal,
            input.strategy,
            input.radical_candidates.as_deref(),
            input.nil_cap,
            att,
            caps,
        )
    };

    match &derived {
        Ok(ball) => trace.push(format!(
            "derived ball of the quotient: {} radius {}",
            ball.category.render(),
            ball.radius
        )),
        Err(e) => trace.push(format!("derived ball unavailable: {e}")),
    }

    if ann_ok {
        if let Ok(dbs) = &derived {
            let composed = compose_singularity_ball(dbs, mu_val, grade_val)?;
            trace.push(format!(
                "candidate composed: radius {} (derived {} x multiplier {})",
                composed.radius,
                dbs.radius,
                multiplier(mu_val, grade_val)?
            ));
            candidates.push(Candidate {
                formula: "composed",
                ball: composed,
                priority: 5,
                hyps: base_hyps.clone(),
            });
        }
    }

    if ann_ok && dim_s == 0 {
        if let LoewyLength::Finite(ll) = ll_quotient {
            let artinian_note = HypothesisStatus {
                name: "artinian-quotient".into(),
                status: Status::Verified,
                evidence: "R/I has Krull dimension zero".into(),
            };
            let mut hyps0 = base_hyps.clone();
            hyps0.push(artinian_note.clone());
            let r0 = dimsing0_radius(mu_val, grade_val, ll)?;
            trace.push(format!("candidate dimsing0: radius {r0}"));
            candidates.push(Candidate {
                formula: "dimsing0",
                ball: BallExpr {
                    category: Category::Singularity,
                    generator: Generator::ResidueField,
                    radius: r0,
                    provenance: vec![format!(
                        "zero-dimensional singular locus: radius ll(R/I) * (mu - grade + 1) \
                         = {ll} * {}",
                        multiplier(mu_val, grade_val)?
                    )],
                },
                priority: 1,
                hyps: hyps0.clone(),
            });
            if sing_ok {
                match liu_radius(mu_val, depth, ll) {
                    Ok(rl) => {
                        trace.push(format!("candidate liu: radius {rl}"));
                        candidates.push(Candidate {
                            formula: "liu",
                            ball: BallExpr {
                                category: Category::Singularity,
                                generator: Generator::ResidueField,
                                radius: rl,
                                provenance: vec![format!(
                                    "isolated singularity: radius (mu - depth + 1) * ll(R/I) \
                                     = {} * {ll}",
                                    mu_val - depth + 1
                                )],
                            },
                            priority: 2,
                            hyps: hyps0.clone(),
                        });
                    }
                    Err(e) => trace.push(format!("candidate liu: not applicable ({e})")),
                }
            }
        }
    }

    // Dimension-one singular locus: needs V(I) = Sing R, which the Jacobian
    // criterion provides for I = jac.
    if ann_ok && sing_ok && input.kind == IdealKind::Jacobian && dim_s == 1 {
        match dimsing1_candidate(input, mu_val, grade_val, &base_hyps, &mut inv, &mut trace) {
            Ok(c) => candidates.push(c),
            Err(e) => trace.push(format!("candidate dimsing1: not applicable ({e})")),
        }
    }

    // Countable CM-type formula: only under explicit attestation.
    if att.countable_cm_type
        && ann_ok
        && sing_ok
        && depth == dim_r
        && dim_s <= 1
    {
        match countable_cm_candidate(
            input,
            mu_val,
            grade_val,
            dim_r,
            ll_quotient,
            &base_hyps,
            &mut inv,
        ) {
            Ok(c) => {
                trace.push(format!(
                    "candidate countable_cm: dim bound {}",
                    c.dim_bound()
                ));
                candidates.push(c);
            }
            Err(e) => trace.push(format!("candidate countable_cm: not applicable ({e})")),
        }
    }

    // Selection: smallest dim bound, ties by priority.
    candidates.sort_by_key(|c| (c.dim_bound(), c.priority));
    if let Some(best) = candidates.first() {
        trace.push(format!(
            "selected formula {} with dim bound {}",
            best.formula,
            best.dim_bound()
        ));
        return Ok(BoundReport {
            formula: best.formula.to_string(),
            dim_bound: Some(best.dim_bound()),
            ball: Some(best.ball.clone()),
            conditional: None,
            hypotheses: best.hyps.clone(),
            invariants: inv,
            trace,
            warnings,
        });
    }

    // No numeric bound: fall back to the class-generator statement when the
    // singular locus containment is known.
    if sing_ok {
        let m = multiplier(mu_val, grade_val)?;
        let gens = input.ideal.generators.clone();
        let ball = BallExpr {
            category: Category::Singularity,
            generator: Generator::FiltrationClass(gens),
            radius: m,
            provenance: vec![format!(
                "class-generator statement: the singularity category is the ball of radius \
                 mu - grade + 1 = {m} around the extension closure of the cyclic modules at \
                 primes of V(I)"
            )],
        };
        warnings.push(
            "no single-object generator was derived; the report is a class-generator \
             statement without a numeric dimension bound"
                .to_string(),
        );
        return Ok(BoundReport {
            formula: "class_generator".to_string(),
            dim_bound: None,
            ball: Some(ball),
            conditional: Some(format!(
                "dim D_sg(R) <= (radius of D^b(R/I) ball) * {} - 1",
                multiplier(mu_val, grade_val)?
            )),
            hypotheses: base_hyps,
            invariants: inv,
            trace,
            warnings,
        });
    }

    warnings.push("hypotheses unverified; only the conditional formula is reported".to_string());
    Ok(BoundReport {
        formula: "conditional".to_string(),
        dim_bound: None,
        ball: None,
        conditional: Some(format!(
            "if Sing R is contained in V(I) and I annihilates the singularity category, then \
             dim D_sg(R) <= (radius of D^b(R/I) ball) * {} - 1",
            multiplier(mu_val, grade_val)?
        )),
        hypotheses: base_hyps,
        invariants: inv,
        trace,
        warnings,
    })
}

fn depth_zero_candidate(
    ring: &Ring,
    input: &PipelineInput,
    inv: &mut InvariantSet,
    trace: &mut Vec<String>,
) -> Result<Candidate> {
    let caps = input.caps;
    let soc = socle(ring, caps)?;
    let rtype = mu(&soc, caps)?;
    inv.rtype = Some(rtype);
    let derived = derived_category_ball(
        "R/soc(R)".to_string(),
        &soc,
        input.strategy,
        input.radical_candidates.as_deref(),
        input.nil_cap,
        &input.attestations,
        caps,
    )?;
    trace.push(format!(
        "candidate depth_zero: derived ball radius {} over R/soc(R), multiplier 1",
        derived.radius
    ));
    let mut provenance = derived.provenance.clone();
    provenance.push(
        "depth zero: the singularity category is the radius-one ball around mod(R/soc R), \
         so the derived ball passes through unchanged"
            .to_string(),
    );
    let ball = BallExpr {
        category: Category::Singularity,
        generator: derived.generator.clone(),
        radius: derived.radius,
        provenance,
    };
    let ball = relabel_socle_cyclic(ball, ring, &soc);
    let hyps = vec![
        invariants::depth_zero_status(0),
        HypothesisStatus {
            name: "ideal-in-annihilator".into(),
            status: Status::Verified,
            evidence: "the socle annihilates all syzygies at depth zero".into(),
        },
    ];
    Ok(Candidate {
        formula: "depth_zero",
        ball,
        priority: 0,
        hyps,
    })
}

fn dimsing1_candidate(
    input: &PipelineInput,
    mu_val: u32,
    grade_val: u32,
    base_hyps: &[HypothesisStatus],
    inv: &mut InvariantSet,
    trace: &mut Vec<String>,
) -> Result<Candidate> {
    let caps = input.caps;
    let att = &input.attestations;
    let cands_storage;
    let cands: &[RadicalCandidate] = match &input.radical_candidates {
        Some(c) => c,
        None => {
            cands_storage = auto_radical_candidates(&input.ideal)?;
            &cands_storage
        }
    };
    if cands.is_empty() {
        return Err(Error::Unsupported(
            "no radical candidates for the nilpotency index".into(),
        ));
    }
    let nil = nilpotency_index(&input.ideal, cands, input.nil_cap, caps)?;
    if !nil.verified {
        return Err(Error::Unsupported(
            "nilradical verification failed or the cap was exhausted".into(),
        ));
    }
    let n_s = nil.index.expect("verified");
    inv.nilpotency = Some(n_s);

    // S_red must be verified regular (T = 0 path).
    let ring = input.ideal.ring.clone();
    let mut red_gens = input.ideal.generators.clone();
    for c in cands {
        red_gens.extend(c.gens.iter().cloned());
    }
    let s_red = IdealData::new(ring, red_gens, caps)?;
    let reg = invariants::regularity_status(&s_red, att, caps)?;
    if reg.status != Status::Verified {
        return Err(Error::Unsupported(format!(
            "the reduced quotient is not verified regular, so the conductor data is not \
             forced trivial: {}",
            reg.evidence
        )));
    }
    let reg = HypothesisStatus {
        name: "reduced-quotient-regular".into(),
        status: Status::Verified,
        evidence: reg.evidence,
    };
    let radius = dimsing1_radius(mu_val, grade_val, n_s, 0)?;
    trace.push(format!(
        "candidate dimsing1: radius 2 * {n_s} * (0 + 1) * {} = {radius}",
        multiplier(mu_val, grade_val)?
    ));
    let generator = cyclic_label(&s_red, caps)?;
    let mut hyps = base_hyps.to_vec();
    hyps.push(HypothesisStatus {
        name: "nilradical-verified".into(),
        status: Status::Verified,
        evidence: format!("candidate primes contain the defining ideal and their \
             intersection vanishes at exponent {n_s}"),
    });
    hyps.push(reg);
    Ok(Candidate {
        formula: "dimsing1",
        ball: BallExpr {
            category: Category::Singularity,
            generator,
            radius,
            provenance: vec![format!(
                "one-dimensional singular locus with regular reduced quotient (conductor \
                 ring T = 0): radius 2 n(S) (ll(T) + 1)(mu - grade + 1) = 2 * {n_s} * 1 * {}",
                multiplier(mu_val, grade_val)?
            )],
        },
        priority: 3,
        hyps,
    })
}

fn countable_cm_candidate(
    input: &PipelineInput,
    mu_val: u32,
    grade_val: u32,
    dim_r: u32,
    ll_quotient: LoewyLength,
    base_hyps: &[HypothesisStatus],
    inv: &mut InvariantSet,
) -> Result<Candidate> {
    let caps = input.caps;
    let cands_storage;
    let cands: &[RadicalCandidate] = match &input.radical_candidates {
        Some(c) => c,
        None => {
            cands_storage = auto_radical_candidates(&input.ideal)?;
            &cands_storage
        }
    };
    if cands.is_empty() {
        return Err(Error::Unsupported("no radical candidates".into()));
    }
    let nil = nilpotency_index(&input.ideal, cands, input.nil_cap, caps)?;
    if !nil.verified {
        return Err(Error::Unsupported("nilradical unverified".into()));
    }
    let n_s = nil.index.expect("verified");
    inv.nilpotency = Some(n_s);
    let ring = input.ideal.ring.clone();
    let mut red_gens = input.ideal.generators.clone();
    for c in cands {
        red_gens.extend(c.gens.iter().cloned());
    }
    let s_red = IdealData::new(ring, red_gens, caps)?;
    let reg = invariants::regularity_status(&s_red, &input.attestations, caps)?;
    if reg.status != Status::Verified {
        return Err(Error::Unsupported(
            "reduced quotient not verified regular".into(),
        ));
    }
    let (bound, which) = countable_cm_bound(mu_val, grade_val, dim_r, ll_quotient, n_s, 0)?;
    let generator = if which == 0 {
        Generator::ResidueField
    } else {
        cyclic_label(&s_red, caps)?
    };
    let mut hyps = base_hyps.to_vec();
    hyps.push(HypothesisStatus {
        name: "countable-cm-type".into(),
        status: Status::Attested,
        evidence: "attested via --attest countable-cm-type".into(),
    });
    Ok(Candidate {
        formula: "countable_cm",
        ball: BallExpr {
            category: Category::Singularity,
            generator,
            radius: bound + 1,
            provenance: vec![format!(
                "countable CM-type bound: minimum of the artinian-locus and \
                 one-dimensional-locus formulas (operand {} selected)",
                which + 1
            )],
        },
        priority: 4,
        hyps,
    })
}
