//! Groebner machinery over free modules P^t: module normal forms, module
//! bases, and syzygies.
//!
//! Syzygies are computed by the tag-embedding: generators f_i are embedded as
//! f_i (+) e_i in P^t (+) P^s under a position-block order in which the main
//! block dominates; basis elements whose main block vanishes carry the
//! syzygies in their tags.

use crate::error::{Error, Result};
use crate::field::Coef;
use crate::groebner::{Budget, Caps};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

/// An element of a free module P^rank, one polynomial per coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VecPoly {
    pub coords: Vec<Polynomial>,
}

impl VecPoly {
    pub fn zero(rank: usize) -> Self {
        VecPoly {
            coords: vec![Polynomial::zero(); rank],
        }
    }

    pub fn unit(rank: usize, pos: usize, ring: &PolyRing) -> Self {
        let mut v = VecPoly::zero(rank);
        v.coords[pos] = Polynomial::one(ring);
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, ring: &PolyRing, other: &VecPoly) -> VecPoly {
        VecPoly {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(ring, b))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &PolyRing, other: &VecPoly) -> VecPoly {
        VecPoly {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(ring, b))
                .collect(),
        }
    }

    pub fn neg(&self, ring: &PolyRing) -> VecPoly {
        VecPoly {
            coords: self.coords.iter().map(|a| a.neg(ring)).collect(),
        }
    }

    pub fn term_mul(&self, ring: &PolyRing, m: &Monomial, c: &Coef) -> VecPoly {
        VecPoly {
            coords: self
                .coords
                .iter()
                .map(|a| a.term_mul(ring, m, c))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, ring: &PolyRing, c: &Coef) -> VecPoly {
        VecPoly {
            coords: self.coords.iter().map(|a| a.scalar_mul(ring, c)).collect(),
        }
    }

    pub fn poly_mul(&self, ring: &PolyRing, f: &Polynomial) -> VecPoly {
        VecPoly {
            coords: self.coords.iter().map(|a| a.mul(ring, f)).collect(),
        }
    }

    /// Extends with zero coordinates appended.
    pub fn padded(&self, rank: usize) -> VecPoly {
        let mut coords = self.coords.clone();
        coords.resize(rank, Polynomial::zero());
        VecPoly { coords }
    }

    pub fn render(&self, ring: &PolyRing) -> String {
        let parts: Vec<String> = self.coords.iter().map(|p| p.render(ring)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Module term orders extending the ring order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Term-over-position: ring order on the monomials, ties to the lower
    /// position.
    Top,
    /// Positions below `main_rank` dominate all others; term-over-position
    /// inside each block. Used for syzygy tags.
    MainThenTag { main_rank: usize },
}

impl ModuleOrder {
    fn block(&self, pos: usize) -> usize {
        match self {
            ModuleOrder::Top => 0,
            ModuleOrder::MainThenTag { main_rank } => usize::from(pos >= *main_rank),
        }
    }

    fn cmp(
        &self,
        ring: &PolyRing,
        a: (usize, &Monomial),
        b: (usize, &Monomial),
    ) -> std::cmp::Ordering {
        self.block(a.0)
            .cmp(&self.block(b.0))
            .reverse()
            .then_with(|| ring.order.cmp(a.1, b.1))
            .then_with(|| a.0.cmp(&b.0).reverse())
    }
}

/// Leading (position, monomial, coefficient) of `v` under `ord`.
fn leading<'a>(
    ring: &PolyRing,
    ord: ModuleOrder,
    v: &'a VecPoly,
) -> Option<(usize, &'a Monomial, &'a Coef)> {
    let mut best: Option<(usize, &Monomial, &Coef)> = None;
    for (pos, p) in v.coords.iter().enumerate() {
        if let Some((m, c)) = p.leading() {
            let better = match best {
                None => true,
                Some((bp, bm, _)) => {
                    ord.cmp(ring, (pos, m), (bp, bm)) == std::cmp::Ordering::Greater
                }
            };
            if better {
                best = Some((pos, m, c));
            }
        }
    }
    best
}

/// Public view of the leading term, for canonical sorting by callers.
pub fn leading_term(
    ring: &PolyRing,
    ord: ModuleOrder,
    v: &VecPoly,
) -> Option<(usize, Monomial, Coef)> {
    leading(ring, ord, v).map(|(p, m, c)| (p, m.clone(), c.clone()))
}

/// Full module normal form of `v` against `basis` under `ord`.
pub fn module_normal_form(
    ring: &PolyRing,
    ord: ModuleOrder,
    v: &VecPoly,
    basis: &[VecPoly],
) -> VecPoly {
    let mut caps = Budget::new(Caps {
        steps: u64::MAX,
        basis: usize::MAX,
    });
    module_nf_budgeted(ring, ord, v, basis, &mut caps).expect("uncapped module normal form")
}

fn module_nf_budgeted(
    ring: &PolyRing,
    ord: ModuleOrder,
    v: &VecPoly,
    basis: &[VecPoly],
    budget: &mut Budget,
) -> Result<VecPoly> {
    let leads: Vec<(usize, Monomial, Coef)> = basis
        .iter()
        .map(|g| {
            let (p, m, c) = leading(ring, ord, g).expect("basis elements nonzero");
            (p, m.clone(), c.clone())
        })
        .collect();
    let mut work = v.clone();
    let mut remainder = VecPoly::zero(v.rank());
    'outer: while let Some((wp, wm, wc)) =
        leading(ring, ord, &work).map(|(p, m, c)| (p, m.clone(), c.clone()))
    {
        for (g, (gp, gm, gc)) in basis.iter().zip(&leads) {
            if *gp == wp && gm.divides(&wm) {
                budget.charge(1)?;
                let qm = gm.quotient_into(&wm);
                let qc = ring.field.div(&wc, gc);
                work = work.sub(ring, &g.term_mul(ring, &qm, &qc));
                continue 'outer;
            }
        }
        // Irreducible leading term: move it over.
        let mut t = VecPoly::zero(v.rank());
        t.coords[wp] = Polynomial::monomial(ring, wm, wc);
        remainder = remainder.add(ring, &t);
        work = work.sub(ring, &t);
    }
    Ok(remainder)
}

fn module_s_pair(ring: &PolyRing, ord: ModuleOrder, f: &VecPoly, g: &VecPoly) -> Option<VecPoly> {
    let (fp, fm, fc) = leading(ring, ord, f)?;
    let (gp, gm, gc) = leading(ring, ord, g)?;
    if fp != gp {
        return None;
    }
    let l = fm.lcm(gm);
    let a = f.term_mul(ring, &fm.quotient_into(&l), &ring.field.inv(fc));
    let b = g.term_mul(ring, &gm.quotient_into(&l), &ring.field.inv(gc));
    Some(a.sub(ring, &b))
}

/// A Groebner basis of a submodule of P^rank under `ord`. Elements are monic
/// and sorted canonically.
#[derive(Debug, Clone)]
pub struct ModuleBasis {
    pub ord: ModuleOrder,
    pub elements: Vec<VecPoly>,
}

impl ModuleBasis {
    pub fn contains(&self, ring: &PolyRing, v: &VecPoly) -> bool {
        module_normal_form(ring, self.ord, v, &self.elements).is_zero()
    }
}

struct MPair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
}

/// Buchberger for submodules of a free module. The coprime criterion is not
/// sound for modules, so pruning is by lcm domination only.
pub fn module_groebner(
    ring: &PolyRing,
    ord: ModuleOrder,
    gens: &[VecPoly],
    caps: Caps,
) -> Result<ModuleBasis> {
    let mut budget = Budget::new(caps);
    let mut basis: Vec<VecPoly> = Vec::new();
    let mut pairs: Vec<MPair> = Vec::new();

    let mut initial: Vec<VecPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    initial.sort_by(|a, b| {
        let (ap, am, _) = leading(ring, ord, a).unwrap();
        let (bp, bm, _) = leading(ring, ord, b).unwrap();
        ord.cmp(ring, (ap, am), (bp, bm))
    });

    for g in initial {
        let r = module_nf_budgeted(ring, ord, &g, &basis, &mut budget)?;
        if r.is_zero() {
            continue;
        }
        add_module_element(ring, ord, &mut basis, &mut pairs, r, caps)?;
    }

    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let da = a.lcm.weighted_degree(&ring.weights);
                let db = b.lcm.weighted_degree(&ring.weights);
                da.cmp(&db)
                    .then_with(|| ring.order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.pos, a.i, a.j).cmp(&(b.pos, b.i, b.j)))
            })
            .map(|(idx, _)| idx)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        let s = module_s_pair(ring, ord, &basis[pair.i], &basis[pair.j])
            .expect("pair positions agree");
        let r = module_nf_budgeted(ring, ord, &s, &basis, &mut budget)?;
        if r.is_zero() {
            continue;
        }
        add_module_element(ring, ord, &mut basis, &mut pairs, r, caps)?;
    }

    let elements = module_interreduce(ring, ord, basis);
    Ok(ModuleBasis { ord, elements })
}

fn add_module_element(
    ring: &PolyRing,
    ord: ModuleOrder,
    basis: &mut Vec<VecPoly>,
    pairs: &mut Vec<MPair>,
    new: VecPoly,
    caps: Caps,
) -> Result<()> {
    if basis.len() + 1 > caps.basis {
        return Err(Error::CapExceeded("module basis size", caps.basis as u64));
    }
    let t = basis.len();
    let new = {
        let (_, _, c) = leading(ring, ord, &new).unwrap();
        let inv = ring.field.inv(c);
        new.scalar_mul(ring, &inv)
    };
    let (np, nm, _) = leading(ring, ord, &new).unwrap();
    let (np, nm) = (np, nm.clone());

    let cand: Vec<MPair> = (0..t)
        .filter_map(|i| {
            let (ip, im, _) = leading(ring, ord, &basis[i]).unwrap();
            (ip == np).then(|| MPair {
                i,
                j: t,
                pos: np,
                lcm: im.lcm(&nm),
            })
        })
        .collect();
    let mut kept: Vec<MPair> = Vec::new();
    for (idx, p) in cand.iter().enumerate() {
        let dominated_later = cand[idx + 1..].iter().any(|q| q.lcm.divides(&p.lcm));
        let dominated_kept = kept.iter().any(|q| q.lcm.divides(&p.lcm));
        if !(dominated_later || dominated_kept) {
            kept.push(MPair {
                i: p.i,
                j: p.j,
                pos: p.pos,
                lcm: p.lcm.clone(),
            });
        }
    }
    pairs.retain(|p| {
        if p.pos != np {
            return true;
        }
        let (_, li, _) = leading(ring, ord, &basis[p.i]).unwrap();
        let (_, lj, _) = leading(ring, ord, &basis[p.j]).unwrap();
        !nm.divides(&p.lcm) || li.lcm(&nm) == p.lcm || lj.lcm(&nm) == p.lcm
    });
    pairs.extend(kept);
    basis.push(new);
    Ok(())
}

fn module_interreduce(ring: &PolyRing, ord: ModuleOrder, basis: Vec<VecPoly>) -> Vec<VecPoly> {
    let mut sorted = basis;
    sorted.sort_by(|a, b| {
        let (ap, am, _) = leading(ring, ord, a).unwrap();
        let (bp, bm, _) = leading(ring, ord, b).unwrap();
        ord.cmp(ring, (ap, am), (bp, bm))
    });
    let mut minimal: Vec<VecPoly> = Vec::new();
    for g in sorted {
        let (gp, gm, _) = leading(ring, ord, &g).unwrap();
        let redundant = minimal.iter().any(|h| {
            let (hp, hm, _) = leading(ring, ord, h).unwrap();
            hp == gp && hm.divides(gm)
        });
        if !redundant {
            minimal.push(g);
        }
    }
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let g = minimal[i].clone();
            let others: Vec<VecPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let mut r = module_normal_form(ring, ord, &g, &others);
            if !r.is_zero() {
                let (_, _, c) = leading(ring, ord, &r).unwrap();
                let inv = ring.field.inv(c);
                r = r.scalar_mul(ring, &inv);
            }
            if r != minimal[i] {
                minimal[i] = r;
                changed = true;
            }
        }
        minimal.retain(|g| !g.is_zero());
        if !changed {
            break;
        }
    }
    minimal.sort_by(|a, b| {
        let (ap, am, _) = leading(ring, ord, a).unwrap();
        let (bp, bm, _) = leading(ring, ord, b).unwrap();
        ord.cmp(ring, (ap, am), (bp, bm))
    });
    minimal
}

/// Generators of the syzygy module of `columns` (elements of P^t): all
/// (a_1..a_s) with sum a_i * columns_i = 0.
pub fn syzygies(ring: &PolyRing, columns: &[VecPoly], caps: Caps) -> Result<Vec<VecPoly>> {
    let s = columns.len();
    if s == 0 {
        return Ok(Vec::new());
    }
    let t = columns[0].rank();
    assert!(columns.iter().all(|c| c.rank() == t), "ragged columns");
    let embedded: Vec<VecPoly> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v = c.padded(t + s);
            v.coords[t + i] = Polynomial::one(ring);
            v
        })
        .collect();
    let gb = module_groebner(
        ring,
        ModuleOrder::MainThenTag { main_rank: t },
        &embedded,
        caps,
    )?;
    let mut out = Vec::new();
    for g in &gb.elements {
        if g.coords[..t].iter().all(|p| p.is_zero()) {
            let syz = VecPoly {
                coords: g.coords[t..].to_vec(),
            };
            debug_assert!(syzygy_check(ring, columns, &syz));
            out.push(syz);
        }
    }
    Ok(out)
}

/// Verifies that each syzygy maps to zero: sum_i v_i * columns_i == 0.
pub fn syzygy_check(ring: &PolyRing, columns: &[VecPoly], syz: &VecPoly) -> bool {
    let t = columns.first().map_or(0, |c| c.rank());
    let mut acc = VecPoly::zero(t);
    for (v, col) in syz.coords.iter().zip(columns) {
        acc = acc.add(ring, &col.poly_mul(ring, v));
    }
    acc.is_zero()
}
