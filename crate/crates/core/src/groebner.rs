//! Buchberger's algorithm with the normal selection strategy and
//! Gebauer-Moeller pair pruning, full normal forms, reduced bases, and
//! variable elimination.
//!
//! Output is canonical: the reduced basis is monic, interreduced, and sorted
//! ascending by leading monomial, so it is independent of generator order.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};

/// Hard resource ceilings. A capped run fails loudly; it never returns a
/// partial basis.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Budget of single leading-term reduction steps.
    pub steps: u64,
    /// Maximum number of basis elements held at once.
    pub basis: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            steps: 20_000_000,
            basis: 50_000,
        }
    }
}

impl Caps {
    pub fn with_steps(steps: u64) -> Self {
        Caps {
            steps,
            ..Caps::default()
        }
    }
}

#[derive(Debug)]
pub struct Budget {
    caps: Caps,
    used: u64,
}

impl Budget {
    pub fn new(caps: Caps) -> Self {
        Budget { caps, used: 0 }
    }

    pub(crate) fn charge(&mut self, n: u64) -> Result<()> {
        self.used += n;
        if self.used > self.caps.steps {
            return Err(Error::CapExceeded("reduction", self.caps.steps));
        }
        Ok(())
    }
}

/// A reduced Groebner basis: the unique canonical certificate for
/// (ideal, order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    /// Monic, fully interreduced, sorted ascending by leading monomial.
    pub elements: Vec<Polynomial>,
    pub generators_echo: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_unit_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().expect("basis elements nonzero").clone())
            .collect()
    }

    /// Full normal form of `f` against this basis; the canonical
    /// representative of `f` modulo the ideal.
    pub fn normal_form(&self, ring: &PolyRing, f: &Polynomial) -> Polynomial {
        normal_form(ring, f, &self.elements)
    }

    pub fn contains(&self, ring: &PolyRing, f: &Polynomial) -> bool {
        self.normal_form(ring, f).is_zero()
    }
}

/// Full normal form of `f` against `basis`: no term of the result is
/// divisible by any basis leading monomial.
pub fn normal_form(ring: &PolyRing, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut budget = Budget::new(Caps {
        steps: u64::MAX,
        basis: usize::MAX,
    });
    normal_form_budgeted(ring, f, basis, &mut budget).expect("uncapped normal form")
}

fn normal_form_budgeted(
    ring: &PolyRing,
    f: &Polynomial,
    basis: &[Polynomial],
    budget: &mut Budget,
) -> Result<Polynomial> {
    let leads: Vec<(&Monomial, &crate::field::Coef)> = basis
        .iter()
        .map(|g| g.leading().expect("basis elements nonzero"))
        .collect();
    let mut work = f.clone();
    let mut remainder: Vec<(Monomial, crate::field::Coef)> = Vec::new();
    'outer: while let Some((wm, wc)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for (g, (gm, gc)) in basis.iter().zip(&leads) {
            if gm.divides(&wm) {
                budget.charge(1)?;
                let qm = gm.quotient_into(&wm);
                let qc = ring.field.div(&wc, gc);
                work = work.sub(ring, &g.term_mul(ring, &qm, &qc));
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the remainder.
        remainder.push((wm, wc));
        work = work.sub(
            ring,
            &Polynomial::monomial(
                ring,
                remainder.last().unwrap().0.clone(),
                remainder.last().unwrap().1.clone(),
            ),
        );
    }
    // Terms were collected in strictly descending order.
    Ok(Polynomial::from_terms(ring, remainder))
}

fn s_polynomial(ring: &PolyRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.term_mul(ring, &fm.quotient_into(&l), &ring.field.inv(fc));
    let b = g.term_mul(ring, &gm.quotient_into(&l), &ring.field.inv(gc));
    a.sub(ring, &b)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Computes the unique reduced Groebner basis of the ideal generated by
/// `gens` under `ring.order`.
pub fn reduced_groebner(
    ring: &PolyRing,
    gens: &[Polynomial],
    caps: Caps,
) -> Result<GroebnerBasis> {
    let mut budget = Budget::new(caps);
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut initial: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    // Deterministic staging: interreduce input order-insensitively by
    // inserting in a canonical sequence.
    initial.sort_by(|a, b| {
        ring.order
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then_with(|| a.num_terms().cmp(&b.num_terms()))
    });

    for g in initial {
        let reduced = normal_form_budgeted(ring, &g, &basis, &mut budget)?;
        if reduced.is_zero() {
            continue;
        }
        add_element(ring, &mut basis, &mut pairs, reduced.monic(ring), caps, &mut budget)?;
    }

    while !pairs.is_empty() {
        // Normal strategy: minimal weighted degree of the lcm first, ties by
        // the order on lcms, then by indices.
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let da = a.lcm.weighted_degree(&ring.weights);
                let db = b.lcm.weighted_degree(&ring.weights);
                da.cmp(&db)
                    .then_with(|| ring.order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(idx, _)| idx)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(ring, &basis[pair.i], &basis[pair.j]);
        let reduced = normal_form_budgeted(ring, &s, &basis, &mut budget)?;
        if reduced.is_zero() {
            continue;
        }
        add_element(ring, &mut basis, &mut pairs, reduced.monic(ring), caps, &mut budget)?;
    }

    let elements = interreduce(ring, basis);
    Ok(GroebnerBasis {
        order: ring.order.clone(),
        elements,
        generators_echo: gens.to_vec(),
    })
}

/// Gebauer-Moeller update: prunes the pending pair set as `new` enters the
/// basis at index `t`.
fn add_element(
    ring: &PolyRing,
    basis: &mut Vec<Polynomial>,
    pairs: &mut Vec<Pair>,
    new: Polynomial,
    caps: Caps,
    _budget: &mut Budget,
) -> Result<()> {
    if basis.len() + 1 > caps.basis {
        return Err(Error::CapExceeded("basis size", caps.basis as u64));
    }
    let t = basis.len();
    let lt_new = new.leading_monomial().unwrap().clone();

    // Candidate pairs (i, t), pruned against each other.
    let cand: Vec<Pair> = (0..t)
        .map(|i| Pair {
            i,
            j: t,
            lcm: basis[i].leading_monomial().unwrap().lcm(&lt_new),
        })
        .collect();
    let mut kept: Vec<Pair> = Vec::new();
    for (idx, p) in cand.iter().enumerate() {
        let coprime = basis[p.i]
            .leading_monomial()
            .unwrap()
            .coprime(&lt_new);
        let dominated_later = cand[idx + 1..]
            .iter()
            .any(|q| q.lcm.divides(&p.lcm));
        let dominated_kept = kept.iter().any(|q| q.lcm.divides(&p.lcm));
        if coprime || !(dominated_later || dominated_kept) {
            kept.push(p.clone());
        }
    }
    // Buchberger's coprime criterion: those S-polynomials reduce to zero.
    kept.retain(|p| {
        !basis[p.i]
            .leading_monomial()
            .unwrap()
            .coprime(&lt_new)
    });

    // Prune old pairs whose lcm the new leading term properly cuts.
    pairs.retain(|p| {
        let li = basis[p.i].leading_monomial().unwrap();
        let lj = basis[p.j].leading_monomial().unwrap();
        !lt_new.divides(&p.lcm)
            || li.lcm(&lt_new) == p.lcm
            || lj.lcm(&lt_new) == p.lcm
    });

    pairs.extend(kept);
    basis.push(new);
    let _ = ring;
    Ok(())
}

/// Minimalizes (drops elements with redundant leading terms) and fully
/// interreduces; output sorted ascending by leading monomial.
fn interreduce(ring: &PolyRing, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| {
        ring.order
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    // Keep only elements whose leading monomial no earlier-kept element
    // divides; equal leading monomials keep the first.
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(g);
        }
    }
    // Tail-reduce every element against all the others until stable.
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let g = minimal[i].clone();
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let r = normal_form(ring, &g, &others).monic(ring);
            if r != minimal[i] {
                minimal[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.retain(|g| !g.is_zero());
    minimal.sort_by(|a, b| {
        ring.order
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    minimal
}

/// Exhaustively checks the Buchberger criterion on a finished basis: every
/// S-polynomial must reduce to zero. Intended for test and audit paths.
pub fn verify_buchberger(ring: &PolyRing, gb: &GroebnerBasis) -> bool {
    for i in 0..gb.elements.len() {
        for j in i + 1..gb.elements.len() {
            let s = s_polynomial(ring, &gb.elements[i], &gb.elements[j]);
            if !normal_form(ring, &s, &gb.elements).is_zero() {
                return false;
            }
        }
    }
    // Every original generator must also reduce to zero.
    gb.generators_echo
        .iter()
        .all(|g| normal_form(ring, g, &gb.elements).is_zero())
}

/// Generators of the elimination ideal I ∩ k[keep].
///
/// Computes a reduced basis under a block order in which the complement of
/// `keep` dominates, then selects the elements free of eliminated variables.
/// The result is returned in the original ring context, re-sorted.
pub fn eliminate(
    ring: &PolyRing,
    gens: &[Polynomial],
    keep: &[usize],
    caps: Caps,
) -> Result<Vec<Polynomial>> {
    for &i in keep {
        if i >= ring.nvars() {
            return Err(Error::InvalidArgument(format!(
                "keep index {i} out of range"
            )));
        }
    }
    let eliminated: Vec<usize> = (0..ring.nvars()).filter(|i| !keep.contains(i)).collect();
    if eliminated.is_empty() {
        return Ok(reduced_groebner(ring, gens, caps)?.elements);
    }
    let elim_ring = ring.with_order(MonomialOrder::elimination(
        eliminated.clone(),
        ring.weights.clone(),
    ));
    let regens: Vec<Polynomial> = gens.iter().map(|g| g.resorted(&elim_ring)).collect();
    let gb = reduced_groebner(&elim_ring, &regens, caps)?;
    let mut out = Vec::new();
    for g in &gb.elements {
        let lm = g.leading_monomial().unwrap();
        if eliminated.iter().all(|&i| lm.exps[i] == 0) {
            debug_assert!(g
                .terms()
                .iter()
                .all(|(m, _)| eliminated.iter().all(|&i| m.exps[i] == 0)));
            out.push(g.resorted(ring));
        }
    }
    out.sort_by(|a, b| {
        ring.order
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    Ok(out)
}
