//! Ring and ideal invariants feeding the bound formulas: Jacobian ideal,
//! minimal generator count, grade via Koszul homology, Loewy length, socle
//! and type, nilpotency index against verified radical candidates, and the
//! hypothesis checks the bound formulas depend on.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::groebner::Caps;
use crate::ideal::{self, Dimension, IdealData};
use crate::matrix::PolyMatrix;
use crate::module::VecPoly;
use crate::monomial::monomials_of_total_degree;
use crate::poly::{PolyRing, Polynomial};
use crate::resolution::{depth_graded, homology_nonzero};
use crate::ring::Ring;

/// The Jacobian matrix (d f_i / d X_j) of the presentation, one row per
/// relation.
pub fn jacobian_matrix(ring: &Ring) -> PolyMatrix {
    let ambient = &ring.ambient;
    let entries: Vec<Vec<Polynomial>> = ring
        .relations
        .iter()
        .map(|f| {
            (0..ambient.nvars())
                .map(|j| f.partial_derivative(ambient, j))
                .collect()
        })
        .collect();
    PolyMatrix::new(ring.relations.len(), ambient.nvars(), entries)
}

/// The Jacobian ideal of R: all h x h minors of the Jacobian matrix with
/// h = n - dim R, reduced mod J, zeros and duplicates dropped, and replaced
/// by a canonical minimal generating set when the grading allows.
///
/// For a free presentation (h = 0) the ideal is the unit ideal: the ring
/// presents a regular ring and its singular locus is empty.
pub fn jacobian_ideal(ring: &Ring, caps: Caps) -> Result<IdealData> {
    let ambient = ring.ambient.clone();
    if ring.h == 0 {
        return IdealData::new(ring.clone(), vec![Polynomial::one(&ambient)], caps);
    }
    let jm = jacobian_matrix(ring);
    let h = ring.h as usize;
    if h > jm.rows.min(jm.cols) {
        // Fewer relations than the height: no h x h minors exist, the
        // Jacobian ideal is zero. (Cannot occur for proper presentations,
        // kept as a guard.)
        return IdealData::new(ring.clone(), vec![], caps);
    }
    let minors = jm.minors(&ambient, h)?;
    let mut gens: Vec<Polynomial> = Vec::new();
    for m in minors {
        let r = ring.reduce(&m);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(&ambient);
        if !gens.contains(&r) {
            gens.push(r);
        }
    }
    let raw = IdealData::new(ring.clone(), gens, caps)?;
    normalize_generators(raw, caps)
}

/// Replaces the generator list by the canonical graded minimal generating
/// set when the ideal is weighted-homogeneous; otherwise keeps it as is.
pub fn normalize_generators(ideal: IdealData, caps: Caps) -> Result<IdealData> {
    if !ideal.is_weighted_homogeneous() || !ideal.ring.homogeneous {
        return Ok(ideal);
    }
    let mingens = ideal.minimal_generators(caps)?;
    IdealData::new(ideal.ring.clone(), mingens, caps)
}

/// Minimal number of generators of the image of I in R (graded Nakayama).
pub fn mu(ideal_data: &IdealData, caps: Caps) -> Result<u32> {
    if !ideal_data.ring.homogeneous {
        return Err(Error::Unsupported(
            "mu requires weighted-homogeneous relations; supply weights".into(),
        ));
    }
    ideal::mu(ideal_data, caps)
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    (0..m).combinations(k).collect()
}

/// Columns of the Koszul differential d_i : Λ^i R^m -> Λ^{i-1} R^m on the
/// sequence `xs`; bases are the size-i and size-(i-1) subsets in
/// lexicographic order.
fn koszul_differential(
    ambient: &PolyRing,
    xs: &[Polynomial],
    i: usize,
) -> Vec<VecPoly> {
    let m = xs.len();
    let source = subsets(m, i);
    let target = subsets(m, i - 1);
    let target_index = |s: &Vec<usize>| target.binary_search(s).expect("subset indexed");
    source
        .iter()
        .map(|s| {
            let mut col = VecPoly::zero(target.len());
            for (t, &elem) in s.iter().enumerate() {
                let mut reduced = s.clone();
                reduced.remove(t);
                let pos = target_index(&reduced);
                let signed = if t % 2 == 0 {
                    xs[elem].clone()
                } else {
                    xs[elem].neg(ambient)
                };
                col.coords[pos] = col.coords[pos].add(ambient, &signed);
            }
            col
        })
        .collect()
}

/// Grade of a proper ideal I on R via Koszul homology: with minimal
/// generators x_1..x_m of I, grade = m - max{ i : H_i(x; R) != 0 }.
pub fn grade_koszul(ideal_data: &IdealData, caps: Caps) -> Result<u32> {
    if !ideal_data.is_proper() {
        return Err(Error::InvalidArgument(
            "grade of the unit ideal rejected (see report notes)".into(),
        ));
    }
    let ambient = &ideal_data.ring.ambient;
    let xs: Vec<Polynomial> = if ideal_data.is_weighted_homogeneous() && ideal_data.ring.homogeneous
    {
        ideal_data.minimal_generators(caps)?
    } else {
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in &ideal_data.generators {
            let r = ideal_data.ring.reduce(g);
            if !r.is_zero() {
                let r = r.monic(ambient);
                if !gens.contains(&r) {
                    gens.push(r);
                }
            }
        }
        gens
    };
    grade_koszul_on_generators(ideal_data.ring.clone(), &xs, caps)
}

/// Koszul grade on an explicit generating sequence (grade sensitivity makes
/// the result independent of the chosen generators).
pub fn grade_koszul_on_generators(
    ring: Ring,
    xs: &[Polynomial],
    caps: Caps,
) -> Result<u32> {
    let m = xs.len();
    if m == 0 {
        // Zero ideal: H_0 = R != 0.
        return Ok(0);
    }
    let ambient = &ring.ambient;
    let j_gens = &ring.gb.elements;
    for i in (0..=m).rev() {
        let t = subsets(m, i).len();
        let incoming: Vec<VecPoly> = if i < m {
            koszul_differential(ambient, xs, i + 1)
        } else {
            Vec::new()
        };
        let outgoing: Option<Vec<VecPoly>> = if i > 0 {
            Some(koszul_differential(ambient, xs, i))
        } else {
            None
        };
        if homology_nonzero(ambient, j_gens, &incoming, outgoing.as_deref(), t, caps)? {
            return Ok((m - i) as u32);
        }
    }
    Err(Error::InvalidArgument(
        "all Koszul homology vanished; the ideal is the unit ideal".into(),
    ))
}

/// Loewy length of the artinian quotient S = P/(I + J): the least e with
/// m^e = 0 in S, found by checking that every monomial of total degree e
/// lies in the defining ideal.
pub fn loewy_length(defining: &IdealData, caps: Caps) -> Result<u32> {
    let _ = caps;
    match defining.dimension()? {
        Dimension::Empty => {
            return Err(Error::InvalidArgument(
                "Loewy length of the zero ring is undefined".into(),
            ))
        }
        Dimension::Finite(0) => {}
        Dimension::Finite(_) => {
            return Err(Error::InvalidArgument(
                "Loewy length requires an artinian quotient".into(),
            ))
        }
    }
    if !defining.ring.homogeneous || !defining.is_weighted_homogeneous() {
        return Err(Error::Unsupported(
            "Loewy length requires weighted-homogeneous input".into(),
        ));
    }
    let ambient = &defining.ring.ambient;
    let n = ambient.nvars();
    const LL_CEILING: u32 = 4096;
    for e in 0..=LL_CEILING {
        let all_in = monomials_of_total_degree(n, e)
            .into_iter()
            .all(|mm| defining.contains(&Polynomial::monomial(ambient, mm, ambient.field.one())));
        if all_in {
            return Ok(e);
        }
    }
    Err(Error::CapExceeded("Loewy length search", LL_CEILING as u64))
}

/// The socle (J : m)/J of R as an ideal of R, with canonical minimal
/// generators when graded.
pub fn socle(ring: &Ring, caps: Caps) -> Result<IdealData> {
    let ambient = ring.ambient.clone();
    let zero = IdealData::zero(ring.clone(), caps)?;
    let maximal = IdealData::new(
        ring.clone(),
        (0..ambient.nvars())
            .map(|i| Polynomial::var(&ambient, i))
            .collect(),
        caps,
    )?;
    let soc = zero.colon(&maximal, caps)?;
    normalize_generators(soc, caps)
}

/// Type r(R) = mu(soc R); meaningful when depth R = 0.
pub fn ring_type(ring: &Ring, caps: Caps) -> Result<u32> {
    let soc = socle(ring, caps)?;
    mu(&soc, caps)
}

/// One radical candidate for a nilradical computation.
#[derive(Debug, Clone)]
pub struct RadicalCandidate {
    pub gens: Vec<Polynomial>,
    /// Generated by variables, hence automatically prime.
    pub variable_generated: bool,
    /// Primality attested by the user rather than verified.
    pub attested: bool,
}

#[derive(Debug, Clone)]
pub struct CandidateReport {
    pub rendered: Vec<String>,
    pub prime_basis: &'static str,
    pub contains_defining: bool,
}

/// Outcome of the nilpotency-index verification.
#[derive(Debug, Clone)]
pub struct NilData {
    /// Least e with N^e inside the defining ideal; `None` when the cap was
    /// exhausted.
    pub index: Option<u32>,
    pub candidates: Vec<CandidateReport>,
    /// Every candidate contains the defining ideal and is prime (verified or
    /// attested), so the intersection is the nilradical.
    pub verified: bool,
}

/// Variable-generated radical candidates read off a monomial defining ideal:
/// its minimal primes.
pub fn auto_radical_candidates(defining: &IdealData) -> Result<Vec<RadicalCandidate>> {
    let primes = defining.monomial_minimal_primes()?;
    let ambient = &defining.ring.ambient;
    Ok(primes
        .into_iter()
        .map(|vars| RadicalCandidate {
            gens: vars
                .into_iter()
                .map(|i| Polynomial::var(ambient, i))
                .collect(),
            variable_generated: true,
            attested: false,
        })
        .collect())
}

fn is_variable_generated(gens: &[Polynomial]) -> bool {
    gens.iter().all(|g| {
        g.num_terms() == 1
            && g.leading_monomial()
                .is_some_and(|m| m.total_degree() == 1)
    })
}

/// Verifies radical candidates against the defining ideal of S and finds the
/// least e <= cap with (intersection of candidates)^e inside it.
///
/// With verified candidates the intersection equals the nilradical exactly:
/// containment in each prime bounds the radical from above, and the vanishing
/// power bounds it from below.
pub fn nilpotency_index(
    defining: &IdealData,
    candidates: &[RadicalCandidate],
    cap: u32,
    caps: Caps,
) -> Result<NilData> {
    if candidates.is_empty() {
        return Err(Error::InvalidArgument(
            "no radical candidates supplied or derivable".into(),
        ));
    }
    let ring = defining.ring.clone();
    let ambient = &ring.ambient;
    let mut reports = Vec::new();
    let mut all_ok = true;
    let mut ideals: Vec<IdealData> = Vec::new();
    for c in candidates {
        let variable_generated = is_variable_generated(&c.gens);
        let prime_basis: &'static str = if variable_generated {
            "variable-generated"
        } else if c.attested {
            "attested"
        } else {
            "unverified"
        };
        let cand_ideal = IdealData::new(ring.clone(), c.gens.clone(), caps)?;
        let contains_defining = cand_ideal.contains_ideal(defining)
            && defining
                .lifted
                .elements
                .iter()
                .all(|g| cand_ideal.contains(g));
        if !contains_defining || prime_basis == "unverified" {
            all_ok = false;
        }
        reports.push(CandidateReport {
            rendered: c.gens.iter().map(|g| g.render(ambient)).collect(),
            prime_basis,
            contains_defining,
        });
        ideals.push(cand_ideal);
    }
    let mut iter = ideals.into_iter();
    let first = iter.next().expect("nonempty");
    let nil = iter.try_fold(first, |acc, p| acc.intersection(&p, caps))?;
    let nil_gens = if nil.is_weighted_homogeneous() && ring.homogeneous {
        nil.minimal_generators(caps)?
    } else {
        nil.generators.clone()
    };

    // Least e with every e-fold product of nilradical generators inside the
    // defining ideal.
    let mut index = None;
    for e in 1..=cap {
        let mut all_in = true;
        'products: for combo in (0..nil_gens.len()).combinations_with_replacement(e as usize) {
            let mut prod = Polynomial::one(ambient);
            for idx in combo {
                prod = ring.reduce(&prod.mul(ambient, &nil_gens[idx]));
                if prod.is_zero() {
                    continue 'products;
                }
            }
            if !defining.contains(&prod) {
                all_in = false;
                break;
            }
        }
        if all_in {
            index = Some(e);
            break;
        }
    }
    Ok(NilData {
        index,
        candidates: reports,
        verified: all_ok && index.is_some(),
    })
}

/// Verification state of one hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Verified,
    Attested,
    Failed,
    Unverifiable,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Attested => "attested",
            Status::Failed => "failed",
            Status::Unverifiable => "unverifiable",
        }
    }

    pub fn acceptable(&self) -> bool {
        matches!(self, Status::Verified | Status::Attested)
    }
}

#[derive(Debug, Clone)]
pub struct HypothesisStatus {
    pub name: String,
    pub status: Status,
    pub evidence: String,
}

/// User attestations passed on the command line.
#[derive(Debug, Clone, Copy, Default)]
pub struct Attestations {
    pub half_cm_local: bool,
    pub equidimensional: bool,
    pub prime_candidates: bool,
    pub countable_cm_type: bool,
}

/// Equidimensionality of R: verified for monomial relation ideals (all
/// minimal primes cut the same dimension) and for principal nonzero ones;
/// otherwise attested or unverifiable.
pub fn equidimensionality_status(ring: &Ring, att: &Attestations, caps: Caps) -> Result<HypothesisStatus> {
    let name = "equidimensional".to_string();
    if ring.is_free_presentation() {
        return Ok(HypothesisStatus {
            name,
            status: Status::Verified,
            evidence: "polynomial ring".into(),
        });
    }
    let zero = IdealData::zero(ring.clone(), caps)?;
    if zero.is_monomial_lifted() {
        let primes = zero.monomial_minimal_primes()?;
        let dims: Vec<usize> = primes.iter().map(|p| ring.nvars() - p.len()).collect();
        let equal = dims.windows(2).all(|w| w[0] == w[1]);
        return Ok(HypothesisStatus {
            name,
            status: if equal { Status::Verified } else { Status::Failed },
            evidence: format!(
                "monomial relations; minimal prime dimensions {:?}",
                dims
            ),
        });
    }
    if ring.gb.elements.len() == 1 {
        return Ok(HypothesisStatus {
            name,
            status: Status::Verified,
            evidence: "principal nonzero relation ideal; all components have height one".into(),
        });
    }
    if att.equidimensional {
        return Ok(HypothesisStatus {
            name,
            status: Status::Attested,
            evidence: "attested via --attest equidimensional".into(),
        });
    }
    Ok(HypothesisStatus {
        name,
        status: Status::Unverifiable,
        evidence: "non-monomial, non-principal relations; pass --attest equidimensional".into(),
    })
}

/// Half Cohen-Macaulay: verified outright when depth = dim at the irrelevant
/// maximal ideal (graded Cohen-Macaulay is Cohen-Macaulay everywhere);
/// verified at the irrelevant maximal ideal when 2 depth >= dim, with the
/// prime-local condition left to attestation; failed otherwise.
pub fn half_cm_status(ring: &Ring, att: &Attestations, caps: Caps) -> Result<HypothesisStatus> {
    let name = "half-cohen-macaulay".to_string();
    let depth = depth_graded(ring, caps)?;
    let dim = ring.dim;
    if depth == dim {
        return Ok(HypothesisStatus {
            name,
            status: Status::Verified,
            evidence: format!(
                "depth {depth} equals dimension {dim} at the irrelevant maximal ideal; \
                 a graded Cohen-Macaulay ring is Cohen-Macaulay at every prime"
            ),
        });
    }
    if 2 * depth >= dim {
        if att.half_cm_local {
            return Ok(HypothesisStatus {
                name,
                status: Status::Attested,
                evidence: format!(
                    "2*depth = {} >= dim = {dim} verified at the irrelevant maximal ideal; \
                     other primes attested via --attest half-cm-local",
                    2 * depth
                ),
            });
        }
        return Ok(HypothesisStatus {
            name,
            status: Status::Unverifiable,
            evidence: format!(
                "2*depth = {} >= dim = {dim} holds at the irrelevant maximal ideal; \
                 pass --attest half-cm-local for the remaining primes",
                2 * depth
            ),
        });
    }
    Ok(HypothesisStatus {
        name,
        status: Status::Failed,
        evidence: format!("2*depth = {} < dim = {dim}", 2 * depth),
    })
}

/// Regularity of the quotient S = P/(I + J).
///
/// Fast path: the defining basis consists of linear forms, so S is a
/// polynomial ring in fresh coordinates. Fallback: the Jacobian ideal of the
/// presentation is the unit ideal, valid under verified equidimensionality.
pub fn regularity_status(defining: &IdealData, att: &Attestations, caps: Caps) -> Result<HypothesisStatus> {
    let name = "quotient-regular".to_string();
    if !defining.is_proper() {
        return Ok(HypothesisStatus {
            name,
            status: Status::Failed,
            evidence: "zero ring".into(),
        });
    }
    let linear = defining.lifted.elements.iter().all(|g| {
        g.terms().iter().all(|(m, _)| m.total_degree() == 1)
    });
    if defining.is_zero_in_quotient() && defining.ring.is_free_presentation() {
        return Ok(HypothesisStatus {
            name,
            status: Status::Verified,
            evidence: "polynomial ring".into(),
        });
    }
    if linear {
        return Ok(HypothesisStatus {
            name,
            status: Status::Verified,
            evidence: "defining basis is linear; the quotient is a polynomial ring".into(),
        });
    }
    let s_ring = ideal::quotient_presentation(defining, caps)?;
    let jac = jacobian_ideal(&s_ring, caps)?;
    if !jac.is_proper() {
        let equi = equidimensionality_status(&s_ring, att, caps)?;
        if equi.status.acceptable() {
            return Ok(HypothesisStatus {
                name,
                status: Status::Verified,
                evidence: "Jacobian ideal of the presentation is the unit ideal".into(),
            });
        }
        return Ok(HypothesisStatus {
            name,
            status: Status::Unverifiable,
            evidence:
                "Jacobian ideal is the unit ideal but equidimensionality is unverified".into(),
        });
    }
    Ok(HypothesisStatus {
        name,
        status: Status::Failed,
        evidence: "Jacobian ideal of the presentation is proper".into(),
    })
}

/// Which ideal the pipeline received.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealKind {
    Jacobian,
    Socle,
    User,
}

/// Statuses for the bound hypotheses: equidimensionality, half-CM,
/// Sing R ⊆ V(I), and I ⊆ ann of the singularity category.
pub fn verify_hypotheses(
    ring: &Ring,
    ideal_data: &IdealData,
    kind: IdealKind,
    att: &Attestations,
    caps: Caps,
) -> Result<Vec<HypothesisStatus>> {
    let mut out = Vec::new();
    let equi = equidimensionality_status(ring, att, caps)?;
    let half_cm = half_cm_status(ring, att, caps)?;
    let depth = depth_graded(ring, caps)?;

    // Sing R ⊆ V(I).
    let sing = match kind {
        IdealKind::Jacobian => {
            if equi.status.acceptable() {
                HypothesisStatus {
                    name: "sing-in-v".into(),
                    status: Status::Verified,
                    evidence: "I is the Jacobian ideal; the Jacobian criterion applies \
                               (perfect coefficient field, equidimensional presentation)"
                        .into(),
                }
            } else {
                HypothesisStatus {
                    name: "sing-in-v".into(),
                    status: Status::Unverifiable,
                    evidence: "Jacobian criterion needs equidimensionality".into(),
                }
            }
        }
        IdealKind::Socle => {
            if depth == 0 {
                HypothesisStatus {
                    name: "sing-in-v".into(),
                    status: Status::Verified,
                    evidence: "socle route at depth zero builds the category directly; \
                               no singular-locus comparison is needed"
                        .into(),
                }
            } else {
                HypothesisStatus {
                    name: "sing-in-v".into(),
                    status: Status::Failed,
                    evidence: "socle route requires depth zero".into(),
                }
            }
        }
        IdealKind::User => {
            let jac = jacobian_ideal(ring, caps)?;
            let mut all_in = true;
            let mut witness = String::new();
            for g in &ideal_data.generators {
                if !jac.radical_contains(g, caps)? {
                    all_in = false;
                    witness = g.render(&ring.ambient);
                    break;
                }
            }
            if all_in && equi.status.acceptable() {
                HypothesisStatus {
                    name: "sing-in-v".into(),
                    status: Status::Verified,
                    evidence: "every generator of I lies in the radical of the Jacobian \
                               ideal, so V(I) contains V(jac) = Sing R"
                        .into(),
                }
            } else if all_in {
                HypothesisStatus {
                    name: "sing-in-v".into(),
                    status: Status::Unverifiable,
                    evidence: "I is inside rad(jac) but the Jacobian criterion needs \
                               equidimensionality"
                        .into(),
                }
            } else {
                HypothesisStatus {
                    name: "sing-in-v".into(),
                    status: Status::Failed,
                    evidence: format!("generator {witness} is not in rad(jac)"),
                }
            }
        }
    };

    // I ⊆ ann of the singularity category.
    let ann = match kind {
        IdealKind::Jacobian => {
            if equi.status.acceptable() && half_cm.status.acceptable() {
                HypothesisStatus {
                    name: "ideal-in-annihilator".into(),
                    status: if equi.status == Status::Attested
                        || half_cm.status == Status::Attested
                    {
                        Status::Attested
                    } else {
                        Status::Verified
                    },
                    evidence: "Jacobian ideal of an equidimensional half Cohen-Macaulay \
                               ring annihilates the singularity category"
                        .into(),
                }
            } else {
                HypothesisStatus {
                    name: "ideal-in-annihilator".into(),
                    status: Status::Unverifiable,
                    evidence: "needs equidimensionality and half Cohen-Macaulayness".into(),
                }
            }
        }
        IdealKind::Socle => {
            if depth == 0 {
                HypothesisStatus {
                    name: "ideal-in-annihilator".into(),
                    status: Status::Verified,
                    evidence: "the socle annihilates all syzygies at depth zero".into(),
                }
            } else {
                HypothesisStatus {
                    name: "ideal-in-annihilator".into(),
                    status: Status::Failed,
                    evidence: format!("depth is {depth}, not zero"),
                }
            }
        }
        IdealKind::User => HypothesisStatus {
            name: "ideal-in-annihilator".into(),
            status: Status::Unverifiable,
            evidence: "annihilator containment is only derived for the Jacobian ideal or \
                       the socle"
                .into(),
        },
    };

    // Only the hypotheses the route actually relies on are reported: the
    // socle route stands on depth zero alone, while the Jacobian route
    // carries the full set.
    match kind {
        IdealKind::Jacobian => {
            out.push(equi);
            out.push(half_cm);
            out.push(sing);
            out.push(ann);
        }
        IdealKind::Socle => {
            out.push(depth_zero_status(depth));
            out.push(ann);
        }
        IdealKind::User => {
            out.push(equi);
            out.push(sing);
            out.push(ann);
        }
    }
    Ok(out)
}

/// Status of the depth-zero precondition for the socle route.
pub fn depth_zero_status(depth: u32) -> HypothesisStatus {
    if depth == 0 {
        HypothesisStatus {
            name: "depth-zero".into(),
            status: Status::Verified,
            evidence: "graded depth is zero".into(),
        }
    } else {
        HypothesisStatus {
            name: "depth-zero".into(),
            status: Status::Failed,
            evidence: format!("graded depth is {depth}"),
        }
    }
}
