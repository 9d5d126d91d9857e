//! Graded minimal free resolutions over the ambient polynomial ring,
//! projective dimension and graded depth, homology of complexes over the
//! quotient ring, and the Ext-based grade oracle.
//!
//! Minimality falls out of the construction: every syzygy step extracts a
//! minimal homogeneous generating set, so no matrix entry can have a nonzero
//! constant term.

use crate::error::{Error, Result};
use crate::groebner::{reduced_groebner, Caps};
use crate::ideal::IdealData;
use crate::module::{
    leading_term, module_groebner, module_normal_form, syzygies, ModuleOrder, VecPoly,
};
use crate::poly::{PolyRing, Polynomial};
use crate::ring::Ring;

/// A graded free resolution F_0 <- F_1 <- ... <- F_len of a module.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    /// Ranks of F_0, F_1, ... (the Betti numbers when minimal).
    pub ranks: Vec<usize>,
    /// Weighted degrees of the basis elements of each F_i.
    pub twists: Vec<Vec<u64>>,
    /// maps[i] holds the columns of F_{i+1} -> F_i, elements of P^{ranks[i]}.
    pub maps: Vec<Vec<VecPoly>>,
    pub minimal: bool,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn betti(&self) -> &[usize] {
        &self.ranks
    }

    /// Exactness and minimality certificate: consecutive composites vanish
    /// identically, kernels are covered by the next map, and no entry has a
    /// nonzero constant term.
    pub fn verify(&self, ambient: &PolyRing, caps: Caps) -> Result<bool> {
        for map in &self.maps {
            for col in map {
                if col.coords.iter().any(has_constant_term) {
                    return Ok(false);
                }
            }
        }
        for i in 0..self.maps.len().saturating_sub(1) {
            for col in &self.maps[i + 1] {
                let image = apply_map(ambient, &self.maps[i], col, self.ranks[i]);
                if !image.is_zero() {
                    return Ok(false);
                }
            }
        }
        // Kernel coverage: syzygies of maps[i] lie in the span of maps[i+1].
        for i in 0..self.maps.len() {
            let kernel = syzygies(ambient, &self.maps[i], caps)?;
            let next: Vec<VecPoly> = if i + 1 < self.maps.len() {
                self.maps[i + 1].clone()
            } else {
                Vec::new()
            };
            if next.is_empty() {
                if kernel.iter().any(|k| !k.is_zero()) {
                    return Ok(false);
                }
                continue;
            }
            let gb = module_groebner(ambient, ModuleOrder::Top, &next, caps)?;
            for k in &kernel {
                if !module_normal_form(ambient, ModuleOrder::Top, k, &gb.elements).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn has_constant_term(p: &Polynomial) -> bool {
    p.terms().iter().any(|(m, _)| m.is_one())
}

/// Applies the map given by `columns` (each in P^target_rank) to a vector in
/// the source module.
pub fn apply_map(
    ambient: &PolyRing,
    columns: &[VecPoly],
    v: &VecPoly,
    target_rank: usize,
) -> VecPoly {
    let mut acc = VecPoly::zero(target_rank);
    for (coef, col) in v.coords.iter().zip(columns) {
        if !coef.is_zero() {
            acc = acc.add(ambient, &col.poly_mul(ambient, coef));
        }
    }
    acc
}

/// Degree of a homogeneous vector under the target twists; `None` for zero
/// or inhomogeneous input.
fn vector_degree(ambient: &PolyRing, twists: &[u64], v: &VecPoly) -> Option<u64> {
    let mut deg: Option<u64> = None;
    for (pos, p) in v.coords.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        if !p.is_weighted_homogeneous(ambient) {
            return None;
        }
        let d = p.weighted_degree(ambient).unwrap() + twists[pos];
        match deg {
            None => deg = Some(d),
            Some(existing) if existing == d => {}
            Some(_) => return None,
        }
    }
    deg
}

/// Extracts a minimal homogeneous generating set from `gens` (greedy in
/// ascending degree; graded Nakayama makes the count canonical).
fn minimal_module_generators(
    ambient: &PolyRing,
    twists: &[u64],
    gens: Vec<VecPoly>,
    caps: Caps,
) -> Result<Vec<VecPoly>> {
    let mut staged: Vec<(u64, VecPoly)> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let d = vector_degree(ambient, twists, &g).ok_or_else(|| {
            Error::Unsupported("inhomogeneous generator in graded module step".into())
        })?;
        staged.push((d, g));
    }
    staged.sort_by(|a, b| {
        let (ap, am, _) = leading_term(ambient, ModuleOrder::Top, &a.1).unwrap();
        let (bp, bm, _) = leading_term(ambient, ModuleOrder::Top, &b.1).unwrap();
        a.0.cmp(&b.0)
            .then_with(|| ap.cmp(&bp))
            .then_with(|| am.exps.cmp(&bm.exps))
    });
    let mut kept: Vec<VecPoly> = Vec::new();
    for (_, g) in staged {
        if kept.is_empty() {
            kept.push(g);
            continue;
        }
        let gb = module_groebner(ambient, ModuleOrder::Top, &kept, caps)?;
        if module_normal_form(ambient, ModuleOrder::Top, &g, &gb.elements).is_zero() {
            continue;
        }
        kept.push(g);
    }
    Ok(kept)
}

/// Minimal graded free resolution of the cokernel of the presentation
/// `columns` (a map into P^rank0 with the given twists), computed up to
/// `length_cap` steps.
///
/// The presentation must be graded and a minimal cover: entries with
/// constant terms are rejected.
pub fn minimal_free_resolution(
    ambient: &PolyRing,
    rank0: usize,
    twists0: Vec<u64>,
    columns: Vec<VecPoly>,
    length_cap: usize,
    caps: Caps,
) -> Result<FreeResolution> {
    for c in &columns {
        if c.coords.iter().any(has_constant_term) {
            return Err(Error::Unsupported(
                "presentation has constant entries; not a minimal cover".into(),
            ));
        }
    }
    let mut ranks = vec![rank0];
    let mut twists = vec![twists0];
    let mut maps: Vec<Vec<VecPoly>> = Vec::new();

    let first = minimal_module_generators(ambient, &twists[0], columns, caps)?;
    if first.is_empty() {
        return Ok(FreeResolution {
            ranks,
            twists,
            maps,
            minimal: true,
        });
    }
    let degs: Vec<u64> = first
        .iter()
        .map(|v| vector_degree(ambient, &twists[0], v).expect("homogeneous"))
        .collect();
    ranks.push(first.len());
    twists.push(degs);
    maps.push(first);

    while maps.len() < length_cap {
        let current = maps.last().unwrap();
        let kernel = syzygies(ambient, current, caps)?;
        let level = maps.len();
        let mingens = minimal_module_generators(ambient, &twists[level], kernel, caps)?;
        if mingens.is_empty() {
            break;
        }
        let degs: Vec<u64> = mingens
            .iter()
            .map(|v| vector_degree(ambient, &twists[level], v).expect("homogeneous"))
            .collect();
        ranks.push(mingens.len());
        twists.push(degs);
        maps.push(mingens);
    }
    Ok(FreeResolution {
        ranks,
        twists,
        maps,
        minimal: true,
    })
}

/// Minimal resolution of the cyclic module P/K for a proper homogeneous
/// ideal K given by `gens`.
pub fn resolve_cyclic(
    ambient: &PolyRing,
    gens: &[Polynomial],
    length_cap: usize,
    caps: Caps,
) -> Result<FreeResolution> {
    if gens.iter().any(|g| !g.is_weighted_homogeneous(ambient)) {
        return Err(Error::Unsupported(
            "resolution requires weighted-homogeneous input".into(),
        ));
    }
    let gb = reduced_groebner(ambient, gens, caps)?;
    if gb.is_unit_ideal() {
        return Err(Error::InvalidArgument(
            "cannot resolve the zero module P/(1)".into(),
        ));
    }
    let columns: Vec<VecPoly> = gb
        .elements
        .iter()
        .map(|g| VecPoly {
            coords: vec![g.clone()],
        })
        .collect();
    minimal_free_resolution(ambient, 1, vec![0], columns, length_cap, caps)
}

/// Projective dimension of P/J over P (graded).
pub fn projective_dimension(ring: &Ring, caps: Caps) -> Result<u32> {
    if !ring.homogeneous {
        return Err(Error::Unsupported(
            "projective dimension requires weighted-homogeneous relations".into(),
        ));
    }
    if ring.is_free_presentation() {
        return Ok(0);
    }
    let res = resolve_cyclic(&ring.ambient, &ring.gb.elements, ring.nvars() + 1, caps)?;
    Ok(res.length() as u32)
}

/// Depth of R at the irrelevant maximal ideal, via Auslander-Buchsbaum:
/// depth = n - pd_P(R).
pub fn depth_graded(ring: &Ring, caps: Caps) -> Result<u32> {
    let pd = projective_dimension(ring, caps)?;
    Ok(ring.nvars() as u32 - pd)
}

/// Decides whether the homology of R^a --A--> R^t --B--> R^b at the middle
/// spot is nonzero, working over R = P/J by adjoining relation columns.
///
/// `a_cols`: columns of A (each in P^t); `b_cols`: the t columns of B (each
/// in P^b), or `None` when B = 0.
pub fn homology_nonzero(
    ambient: &PolyRing,
    j_gens: &[Polynomial],
    a_cols: &[VecPoly],
    b_cols: Option<&[VecPoly]>,
    t: usize,
    caps: Caps,
) -> Result<bool> {
    if t == 0 {
        return Ok(false);
    }
    // Kernel of B over R.
    let kernel: Vec<VecPoly> = match b_cols {
        None => (0..t).map(|i| VecPoly::unit(t, i, ambient)).collect(),
        Some(cols) => {
            assert_eq!(cols.len(), t, "B must have t columns");
            let b_rank = cols.iter().map(|c| c.rank()).max().unwrap_or(0);
            if b_rank == 0 || cols.iter().all(|c| c.is_zero()) {
                (0..t).map(|i| VecPoly::unit(t, i, ambient)).collect()
            } else {
                let mut work = cols.to_vec();
                for j in j_gens {
                    for r in 0..b_rank {
                        let mut v = VecPoly::zero(b_rank);
                        v.coords[r] = j.clone();
                        work.push(v);
                    }
                }
                let syz = syzygies(ambient, &work, caps)?;
                syz.into_iter()
                    .map(|s| VecPoly {
                        coords: s.coords[..t].to_vec(),
                    })
                    .filter(|v| !v.is_zero())
                    .collect()
            }
        }
    };
    if kernel.is_empty() {
        return Ok(false);
    }
    // Image of A over R, inside R^t.
    let mut image: Vec<VecPoly> = a_cols.to_vec();
    for j in j_gens {
        for r in 0..t {
            let mut v = VecPoly::zero(t);
            v.coords[r] = j.clone();
            image.push(v);
        }
    }
    image.retain(|v| !v.is_zero());
    if image.is_empty() {
        return Ok(true);
    }
    let gb = module_groebner(ambient, ModuleOrder::Top, &image, caps)?;
    for k in &kernel {
        if !module_normal_form(ambient, ModuleOrder::Top, k, &gb.elements).is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Transposed columns: given the columns of F_source -> F_target, produce
/// the columns of the dual map (one per basis element of F_target).
fn transpose_columns(columns: &[VecPoly], source_rank: usize, target_rank: usize) -> Vec<VecPoly> {
    assert_eq!(columns.len(), source_rank);
    (0..target_rank)
        .map(|r| VecPoly {
            coords: (0..source_rank)
                .map(|c| columns[c].coords[r].clone())
                .collect(),
        })
        .collect()
}

/// Grade of I on R as the least i with Ext^i_P(P/(I+J), R) nonzero, computed
/// from a minimal resolution over P. Strictly a cross-validation oracle for
/// the Koszul-homology grade.
///
/// Returns `None` when no nonvanishing Ext is found up to `bound` (reported
/// by callers as ">= bound").
pub fn grade_ext_oracle(ideal: &IdealData, bound: u32, caps: Caps) -> Result<Option<u32>> {
    if !ideal.is_proper() {
        return Err(Error::InvalidArgument(
            "grade of the unit ideal is undefined here".into(),
        ));
    }
    let ambient = &ideal.ring.ambient;
    let res = resolve_cyclic(ambient, &ideal.lifted.elements, ambient.nvars() + 1, caps)?;
    let j_gens = &ideal.ring.gb.elements;
    let pd = res.length();
    for i in 0..=pd.min(bound as usize) {
        let t = res.ranks[i];
        // Incoming: dual of F_i -> F_{i-1}.
        let incoming: Vec<VecPoly> = if i == 0 {
            Vec::new()
        } else {
            transpose_columns(&res.maps[i - 1], res.ranks[i], res.ranks[i - 1])
        };
        // Outgoing: dual of F_{i+1} -> F_i, one column per basis of F_i.
        let outgoing: Option<Vec<VecPoly>> = if i < pd {
            Some(transpose_columns(&res.maps[i], res.ranks[i + 1], res.ranks[i]))
        } else {
            None
        };
        let nonzero = homology_nonzero(ambient, j_gens, &incoming, outgoing.as_deref(), t, caps)?;
        if nonzero {
            return Ok(Some(i as u32));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::parse_polynomial;
    use crate::ring::RingPresentation;

    fn ambient(vars: &[&str]) -> PolyRing {
        PolyRing::standard(FieldSpec::Rational, vars)
    }

    fn present(vars: &[&str], rels: &[&str]) -> Ring {
        let a = ambient(vars);
        let rels: Vec<Polynomial> = rels
            .iter()
            .map(|s| parse_polynomial(&a, s).unwrap())
            .collect();
        RingPresentation::new(a, rels, Caps::default()).unwrap()
    }

    #[test]
    fn koszul_resolution_of_residue_field() {
        let a = ambient(&["x", "y"]);
        let gens = vec![
            parse_polynomial(&a, "x").unwrap(),
            parse_polynomial(&a, "y").unwrap(),
        ];
        let res = resolve_cyclic(&a, &gens, 3, Caps::default()).unwrap();
        assert_eq!(res.betti(), &[1, 2, 1]);
        assert!(res.verify(&a, Caps::default()).unwrap());
    }

    #[test]
    fn hypersurface_pd_one() {
        let r = present(&["x", "y", "z"], &["x*y - z^2"]);
        assert_eq!(projective_dimension(&r, Caps::default()).unwrap(), 1);
        assert_eq!(depth_graded(&r, Caps::default()).unwrap(), 2);
    }

    #[test]
    fn free_ring_depth() {
        let r = present(&["x", "y", "z"], &[]);
        assert_eq!(depth_graded(&r, Caps::default()).unwrap(), 3);
    }

    #[test]
    fn depth_zero_example() {
        // k[x,y]/(x^n, x^{n-1} y) has depth zero (n = 3).
        let r = present(&["x", "y"], &["x^3", "x^2*y"]);
        assert_eq!(depth_graded(&r, Caps::default()).unwrap(), 0);
    }

    #[test]
    fn depth_one_intersection_ring() {
        let r = present(&["X", "Y", "Z", "W"], &["X^2*Z", "X^2*W", "Y*Z", "Y*W"]);
        assert_eq!(projective_dimension(&r, Caps::default()).unwrap(), 3);
        assert_eq!(depth_graded(&r, Caps::default()).unwrap(), 1);
    }

    #[test]
    fn betti_invariant_under_permutation() {
        let a = ambient(&["X", "Y", "Z", "W"]);
        let gens1: Vec<Polynomial> = ["X^2*Z", "X^2*W", "Y*Z", "Y*W"]
            .iter()
            .map(|s| parse_polynomial(&a, s).unwrap())
            .collect();
        let gens2: Vec<Polynomial> = ["Y*W", "X^2*Z", "Y*Z", "X^2*W"]
            .iter()
            .map(|s| parse_polynomial(&a, s).unwrap())
            .collect();
        let r1 = resolve_cyclic(&a, &gens1, 5, Caps::default()).unwrap();
        let r2 = resolve_cyclic(&a, &gens2, 5, Caps::default()).unwrap();
        assert_eq!(r1.betti(), r2.betti());
    }

    #[test]
    fn ext_oracle_regular_sequence() {
        let r = present(&["x", "y"], &[]);
        let i = IdealData::new(
            r.clone(),
            vec![
                parse_polynomial(&r.ambient, "x").unwrap(),
                parse_polynomial(&r.ambient, "y").unwrap(),
            ],
            Caps::default(),
        )
        .unwrap();
        assert_eq!(grade_ext_oracle(&i, 4, Caps::default()).unwrap(), Some(2));
    }

    #[test]
    fn ext_oracle_principal() {
        let r = present(&["x", "y"], &[]);
        let i = IdealData::new(
            r.clone(),
            vec![parse_polynomial(&r.ambient, "x^2").unwrap()],
            Caps::default(),
        )
        .unwrap();
        assert_eq!(grade_ext_oracle(&i, 4, Caps::default()).unwrap(), Some(1));
    }
}
