//! Ideals of a presented quotient ring R = P/J, handled through their
//! preimages in P containing J. Arithmetic, membership, dimension, minimal
//! primes of monomial ideals, and graded minimal generators.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::groebner::{eliminate, reduced_groebner, Caps, GroebnerBasis};
use crate::poly::{PolyRing, Polynomial};
use crate::ring::{dimension_from_leading_terms, Ring, RingPresentation};

/// Krull dimension of a quotient, with a sentinel for the empty scheme
/// (unit ideal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Empty,
    Finite(u32),
}

impl Dimension {
    pub fn finite(self) -> Option<u32> {
        match self {
            Dimension::Empty => None,
            Dimension::Finite(d) => Some(d),
        }
    }
}

/// An ideal of R given by representatives in P; `lifted` is the reduced
/// basis of (generators + J), the engine's certificate for every question
/// about the ideal.
#[derive(Debug, Clone)]
pub struct IdealData {
    pub ring: Ring,
    pub generators: Vec<Polynomial>,
    pub lifted: GroebnerBasis,
}

impl IdealData {
    pub fn new(ring: Ring, generators: Vec<Polynomial>, caps: Caps) -> Result<IdealData> {
        let ambient = ring.ambient.clone();
        let mut all = generators.clone();
        all.extend(ring.gb.elements.iter().cloned());
        let lifted = reduced_groebner(&ambient, &all, caps)?;
        Ok(IdealData {
            ring,
            generators,
            lifted,
        })
    }

    pub fn zero(ring: Ring, caps: Caps) -> Result<IdealData> {
        IdealData::new(ring, Vec::new(), caps)
    }

    fn ambient(&self) -> &PolyRing {
        &self.ring.ambient
    }

    /// Same underlying ideal of R (compares the canonical lifted bases).
    pub fn same_ideal(&self, other: &IdealData) -> bool {
        self.lifted.elements == other.lifted.elements
    }

    /// The lifted ideal is proper (the quotient R/I is nonzero).
    pub fn is_proper(&self) -> bool {
        !self.lifted.is_unit_ideal()
    }

    /// I is the zero ideal of R.
    pub fn is_zero_in_quotient(&self) -> bool {
        self.lifted.elements == self.ring.gb.elements
    }

    /// f in I + J, decided by normal form against the lifted basis.
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.lifted.contains(self.ambient(), f)
    }

    pub fn contains_ideal(&self, other: &IdealData) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// f in the radical of I + J, by the auxiliary-variable trick:
    /// 1 in (I + J + (1 - t f)) inside P[t].
    pub fn radical_contains(&self, f: &Polynomial, caps: Caps) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let tag = fresh_var_name(self.ambient(), "t");
        let ext = self.ambient().extended(&[&tag]);
        let n_ext = ext.nvars();
        let t = Polynomial::var(&ext, n_ext - 1);
        let f_ext = f.extend_vars(n_ext, &ext);
        let mut gens: Vec<Polynomial> = self
            .lifted
            .elements
            .iter()
            .map(|g| g.extend_vars(n_ext, &ext))
            .collect();
        gens.push(Polynomial::one(&ext).sub(&ext, &t.mul(&ext, &f_ext)));
        let gb = reduced_groebner(&ext, &gens, caps)?;
        Ok(gb.is_unit_ideal())
    }

    /// Krull dimension of P/(I + J).
    pub fn dimension(&self) -> Result<Dimension> {
        if !self.is_proper() {
            return Ok(Dimension::Empty);
        }
        let d = dimension_from_leading_terms(
            self.ambient().nvars(),
            &self.lifted.leading_monomials(),
        )?;
        Ok(Dimension::Finite(d))
    }

    /// Sum I + I'.
    pub fn sum(&self, other: &IdealData, caps: Caps) -> Result<IdealData> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        IdealData::new(self.ring.clone(), gens, caps)
    }

    /// Product I * I', generators reduced against J.
    pub fn product(&self, other: &IdealData, caps: Caps) -> Result<IdealData> {
        let ambient = self.ambient();
        let mut gens: Vec<Polynomial> = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                let p = self.ring.reduce(&a.mul(ambient, b));
                if !p.is_zero() && !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        IdealData::new(self.ring.clone(), gens, caps)
    }

    /// I^e, with intermediate reduction. I^0 is the unit ideal.
    pub fn power(&self, e: u32, caps: Caps) -> Result<IdealData> {
        let ambient = self.ambient().clone();
        let mut acc = IdealData::new(
            self.ring.clone(),
            vec![Polynomial::one(&ambient)],
            caps,
        )?;
        for _ in 0..e {
            acc = acc.product(self, caps)?;
        }
        Ok(acc)
    }

    /// Intersection via a tag variable: (t I + (1 - t) I') ∩ P.
    pub fn intersection(&self, other: &IdealData, caps: Caps) -> Result<IdealData> {
        let ambient = self.ambient();
        let tag = fresh_var_name(ambient, "t");
        let ext = ambient.extended(&[&tag]);
        let n_ext = ext.nvars();
        let t = Polynomial::var(&ext, n_ext - 1);
        let one_minus_t = Polynomial::one(&ext).sub(&ext, &t);
        let mut gens = Vec::new();
        for a in &self.lifted.elements {
            gens.push(t.mul(&ext, &a.extend_vars(n_ext, &ext)));
        }
        for b in &other.lifted.elements {
            gens.push(one_minus_t.mul(&ext, &b.extend_vars(n_ext, &ext)));
        }
        let keep: Vec<usize> = (0..n_ext - 1).collect();
        let cut = eliminate(&ext, &gens, &keep, caps)?;
        let restricted: Vec<Polynomial> = cut
            .iter()
            .map(|g| {
                g.restrict_vars(ambient.nvars(), ambient)
                    .expect("eliminated variable absent")
            })
            .collect();
        IdealData::new(self.ring.clone(), restricted, caps)
    }

    /// Colon by a single element: ((I + J) : f) = ((I + J) ∩ (f)) / f.
    pub fn colon_element(&self, f: &Polynomial, caps: Caps) -> Result<IdealData> {
        let ambient = self.ambient();
        if f.is_zero() {
            return Err(Error::InvalidArgument("colon by zero".into()));
        }
        // Intersect the lifted ideal with the raw principal ideal (f) in P
        // by the tag trick; J must not be adjoined to the (f)-side, or the
        // quotients would pick up spurious elements.
        let tag = fresh_var_name(ambient, "t");
        let ext = ambient.extended(&[&tag]);
        let n_ext = ext.nvars();
        let t = Polynomial::var(&ext, n_ext - 1);
        let one_minus_t = Polynomial::one(&ext).sub(&ext, &t);
        let mut gens = Vec::new();
        for a in &self.lifted.elements {
            gens.push(t.mul(&ext, &a.extend_vars(n_ext, &ext)));
        }
        gens.push(one_minus_t.mul(&ext, &f.extend_vars(n_ext, &ext)));
        let keep: Vec<usize> = (0..n_ext - 1).collect();
        let cut = eliminate(&ext, &gens, &keep, caps)?;
        let mut quotients = Vec::new();
        for g in &cut {
            let g0 = g
                .restrict_vars(ambient.nvars(), ambient)
                .expect("eliminated variable absent");
            let q = g0
                .exact_div(ambient, f)
                .expect("intersection members are multiples of f");
            quotients.push(q);
        }
        IdealData::new(self.ring.clone(), quotients, caps)
    }

    /// Colon (I : I') = intersection of the element colons.
    pub fn colon(&self, other: &IdealData, caps: Caps) -> Result<IdealData> {
        let mut parts = Vec::new();
        for f in &other.generators {
            if f.is_zero() {
                continue;
            }
            parts.push(self.colon_element(f, caps)?);
        }
        let mut iter = parts.into_iter();
        let first = match iter.next() {
            None => return Err(Error::InvalidArgument("colon by the zero ideal".into())),
            Some(p) => p,
        };
        iter.try_fold(first, |acc, p| acc.intersection(&p, caps))
    }

    /// Saturation (I : I'^infinity): iterate the colon until stable.
    pub fn saturation(&self, other: &IdealData, caps: Caps) -> Result<IdealData> {
        let mut current = self.clone();
        loop {
            let next = current.colon(other, caps)?;
            if next.same_ideal(&current) {
                return Ok(next);
            }
            current = next;
        }
    }

    /// Every lifted basis element is a monomial.
    pub fn is_monomial_lifted(&self) -> bool {
        self.lifted.elements.iter().all(|g| g.num_terms() == 1)
    }

    /// All supplied generators are weighted-homogeneous.
    pub fn is_weighted_homogeneous(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.is_weighted_homogeneous(self.ambient()))
    }

    /// Minimal primes of a monomial lifted ideal, each a set of variable
    /// indices: the minimal transversals of the generator supports after
    /// passing to the radical.
    pub fn monomial_minimal_primes(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_monomial_lifted() {
            return Err(Error::Unsupported(
                "minimal primes require a monomial ideal".into(),
            ));
        }
        let supports: Vec<BTreeSet<usize>> = self
            .lifted
            .elements
            .iter()
            .map(|g| {
                g.leading_monomial()
                    .expect("nonzero")
                    .support()
                    .into_iter()
                    .collect()
            })
            .collect();
        Ok(minimal_transversals(self.ambient().nvars(), &supports))
    }

    /// Height of the ideal in R (monomial lifted ideals with a monomial
    /// relation ideal only). For each minimal prime of I + J, its height in
    /// R is the largest codimension over components of J inside it; the
    /// ideal's height is the minimum over its minimal primes.
    pub fn height_monomial(&self) -> Result<u32> {
        if !self.is_proper() {
            return Err(Error::InvalidArgument("height of the unit ideal".into()));
        }
        let j_monomial = self
            .ring
            .gb
            .elements
            .iter()
            .all(|g| g.num_terms() == 1);
        if !j_monomial || !self.is_monomial_lifted() {
            return Err(Error::Unsupported(
                "height requires monomial relation and lifted ideals".into(),
            ));
        }
        let j_supports: Vec<BTreeSet<usize>> = self
            .ring
            .gb
            .elements
            .iter()
            .map(|g| {
                g.leading_monomial()
                    .expect("nonzero")
                    .support()
                    .into_iter()
                    .collect()
            })
            .collect();
        let j_primes = minimal_transversals(self.ambient().nvars(), &j_supports);
        let i_primes = self.monomial_minimal_primes()?;
        let mut best: Option<u32> = None;
        for q in &i_primes {
            let qset: BTreeSet<usize> = q.iter().copied().collect();
            let mut ht_q = 0u32;
            for p in &j_primes {
                if p.iter().all(|v| qset.contains(v)) {
                    ht_q = ht_q.max((q.len() - p.len()) as u32);
                }
            }
            best = Some(match best {
                None => ht_q,
                Some(b) => b.min(ht_q),
            });
        }
        best.ok_or_else(|| Error::InvalidArgument("no minimal primes".into()))
    }

    /// A minimal generating set of the image of I in R, extracted degreewise
    /// (graded Nakayama). Requires weighted-homogeneous input. The output is
    /// canonical: ascending (degree, leading monomial), monic, reduced mod J.
    pub fn minimal_generators(&self, caps: Caps) -> Result<Vec<Polynomial>> {
        let ambient = self.ambient().clone();
        if !self.is_weighted_homogeneous() {
            return Err(Error::Unsupported(
                "minimal generators require weighted-homogeneous generators; \
                 supply weights making the ideal homogeneous"
                    .into(),
            ));
        }
        if self.is_zero_in_quotient() {
            return Ok(Vec::new());
        }
        // Candidates: reduced basis of I + J, reduced mod J; they generate
        // the image of I in R and are homogeneous.
        let mut candidates: Vec<Polynomial> = self
            .lifted
            .elements
            .iter()
            .map(|g| self.ring.reduce(g).monic(&ambient))
            .filter(|g| !g.is_zero())
            .collect();
        candidates.sort_by(|a, b| {
            let da = a.weighted_degree(&ambient).unwrap();
            let db = b.weighted_degree(&ambient).unwrap();
            da.cmp(&db).then_with(|| {
                ambient
                    .order
                    .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            })
        });
        candidates.dedup();
        let mut kept: Vec<Polynomial> = Vec::new();
        let mut kept_basis = self.ring.gb.elements.clone();
        for c in candidates {
            let nf = crate::groebner::normal_form(&ambient, &c, &kept_basis);
            if nf.is_zero() {
                continue;
            }
            kept.push(c.clone());
            let mut all = kept_basis;
            all.push(c);
            kept_basis = reduced_groebner(&ambient, &all, caps)?.elements;
        }
        // Display order: descending in the ring order, as minimal generator
        // lists are conventionally written.
        kept.sort_by(|a, b| {
            ambient
                .order
                .cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
        });
        Ok(kept)
    }
}

/// Minimal generating count of the image of I in R.
pub fn mu(ideal: &IdealData, caps: Caps) -> Result<u32> {
    Ok(ideal.minimal_generators(caps)?.len() as u32)
}

/// A variable name not already declared in the ring.
pub fn fresh_var_name(ring: &PolyRing, base: &str) -> String {
    let mut name = format!("{base}_0");
    let mut i = 0;
    while ring.vars.iter().any(|v| v == &name) {
        i += 1;
        name = format!("{base}_{i}");
    }
    name
}

/// All minimal transversals (hitting sets) of the given supports, as sorted
/// variable index sets; the minimal primes of the monomial ideal whose
/// generators have these supports.
fn minimal_transversals(nvars: usize, supports: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    if supports.is_empty() {
        // Zero ideal: its unique minimal prime is the zero ideal.
        return vec![vec![]];
    }
    assert!(nvars <= 20, "transversal enumeration limited to 20 variables");
    let masks: Vec<u32> = supports
        .iter()
        .map(|s| s.iter().fold(0u32, |acc, &i| acc | (1 << i)))
        .collect();
    let hits = |subset: u32| masks.iter().all(|&m| m & subset != 0);
    let mut found: Vec<u32> = Vec::new();
    for subset in 0u32..(1 << nvars) {
        if !hits(subset) {
            continue;
        }
        // Minimal: removing any single variable must break some support.
        let minimal = (0..nvars).all(|i| {
            let bit = 1u32 << i;
            subset & bit == 0 || !hits(subset & !bit)
        });
        if minimal {
            found.push(subset);
        }
    }
    found.sort();
    found
        .into_iter()
        .map(|s| (0..nvars).filter(|i| s & (1 << i) != 0).collect())
        .collect()
}

/// Quotient presentation S = P/(I + J), with the canonical lifted basis as
/// relation list.
pub fn quotient_presentation(ideal: &IdealData, caps: Caps) -> Result<Ring> {
    if !ideal.is_proper() {
        return Err(Error::InvalidArgument(
            "quotient by the unit ideal is the zero ring".into(),
        ));
    }
    RingPresentation::new(
        ideal.ring.ambient.clone(),
        ideal.lifted.elements.clone(),
        caps,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::parse_polynomial;

    fn free_ring(vars: &[&str]) -> Ring {
        let ambient = PolyRing::standard(FieldSpec::Rational, vars);
        RingPresentation::new(ambient, vec![], Caps::default()).unwrap()
    }

    fn quotient(vars: &[&str], weights: Vec<u64>, rels: &[&str]) -> Ring {
        let ambient = PolyRing::new(
            FieldSpec::Rational,
            vars.iter().map(|s| s.to_string()).collect(),
            weights,
        )
        .unwrap();
        let rels: Vec<Polynomial> = rels
            .iter()
            .map(|s| parse_polynomial(&ambient, s).unwrap())
            .collect();
        RingPresentation::new(ambient, rels, Caps::default()).unwrap()
    }

    fn ideal(ring: &Ring, gens: &[&str]) -> IdealData {
        let gens: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse_polynomial(&ring.ambient, s).unwrap())
            .collect();
        IdealData::new(ring.clone(), gens, Caps::default()).unwrap()
    }

    #[test]
    fn intersection_of_plane_ideals() {
        // (X^2, Y) ∩ (Z, W) = (X^2 Z, X^2 W, Y Z, Y W).
        let r = free_ring(&["X", "Y", "Z", "W"]);
        let a = ideal(&r, &["X^2", "Y"]);
        let b = ideal(&r, &["Z", "W"]);
        let c = a.intersection(&b, Caps::default()).unwrap();
        let expect = ideal(&r, &["X^2*Z", "X^2*W", "Y*Z", "Y*W"]);
        assert!(c.same_ideal(&expect));
    }

    #[test]
    fn coprime_principal_intersection() {
        // (x) ∩ (y) = (xy), via the tag-variable elimination.
        let r = free_ring(&["x", "y"]);
        let a = ideal(&r, &["x"]);
        let b = ideal(&r, &["y"]);
        let c = a.intersection(&b, Caps::default()).unwrap();
        let expect = ideal(&r, &["x*y"]);
        assert!(c.same_ideal(&expect));
    }

    #[test]
    fn sum_and_product_units() {
        let r = free_ring(&["X", "Y"]);
        let i = ideal(&r, &["X^2", "Y"]);
        let zero = ideal(&r, &[]);
        let one = ideal(&r, &["1"]);
        assert!(i.sum(&zero, Caps::default()).unwrap().same_ideal(&i));
        assert!(i.product(&one, Caps::default()).unwrap().same_ideal(&i));
    }

    #[test]
    fn membership_examples() {
        let r = free_ring(&["x", "y"]);
        let i = ideal(&r, &["x^2", "y^3"]);
        assert!(i.contains(&parse_polynomial(&r.ambient, "x^3").unwrap()));
        assert!(!i.contains(&parse_polynomial(&r.ambient, "x*y^2").unwrap()));

        // Same generators over R = Q[x,y,z]/(x^3 - y^4), weights (4,3,1).
        let rq = quotient(&["x", "y", "z"], vec![4, 3, 1], &["x^3 - y^4"]);
        let iq = ideal(&rq, &["x^2", "y^3"]);
        assert!(iq.contains(&parse_polynomial(&rq.ambient, "y^4").unwrap()));
        assert!(!iq.contains(&parse_polynomial(&rq.ambient, "x*y^2").unwrap()));
    }

    #[test]
    fn radical_membership_examples() {
        let r = free_ring(&["x", "y", "z"]);
        let principal = ideal(&r, &["x^2"]);
        let x = parse_polynomial(&r.ambient, "x").unwrap();
        assert!(principal.radical_contains(&x, Caps::default()).unwrap());

        let i = ideal(&r, &["x^2", "y^3"]);
        let z = parse_polynomial(&r.ambient, "z").unwrap();
        assert!(i.radical_contains(&x, Caps::default()).unwrap());
        assert!(!i.radical_contains(&z, Caps::default()).unwrap());

        // Over the quotient ring of the depth-one example: the radical of
        // the Jacobian ideal is (x, y).
        let r41 = quotient(
            &["X", "Y", "Z", "W"],
            vec![1, 1, 1, 1],
            &["X^2*Z", "X^2*W", "Y*Z", "Y*W"],
        );
        let jac = ideal(
            &r41,
            &["X^4", "X^2*Y", "X*Z^2", "X*Z*W", "X*W^2", "Y^2"],
        );
        let y = parse_polynomial(&r41.ambient, "Y").unwrap();
        let z41 = parse_polynomial(&r41.ambient, "Z").unwrap();
        assert!(jac.radical_contains(&y, Caps::default()).unwrap());
        assert!(!jac.radical_contains(&z41, Caps::default()).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let r = quotient(
            &["X", "Y", "Z", "W"],
            vec![1, 1, 1, 1],
            &["X*Y", "Y*Z", "Z*X"],
        );
        let zero = ideal(&r, &[]);
        assert_eq!(zero.dimension().unwrap(), Dimension::Finite(2));

        let free = free_ring(&["a", "b", "c"]);
        let z2 = ideal(&free, &[]);
        assert_eq!(z2.dimension().unwrap(), Dimension::Finite(3));
        let unit = ideal(&free, &["1"]);
        assert_eq!(unit.dimension().unwrap(), Dimension::Empty);
    }

    #[test]
    fn minimal_primes_examples() {
        let r = free_ring(&["X", "Y", "Z", "W"]);
        let i = ideal(&r, &["X*Y", "Y*Z", "Z*X"]);
        assert_eq!(
            i.monomial_minimal_primes().unwrap(),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );

        let j = ideal(&r, &["X^2*Z", "X^2*W", "Y*Z", "Y*W"]);
        assert_eq!(
            j.monomial_minimal_primes().unwrap(),
            vec![vec![0, 1], vec![2, 3]]
        );

        let k = ideal(&r, &["X"]);
        assert_eq!(k.monomial_minimal_primes().unwrap(), vec![vec![0]]);
    }

    #[test]
    fn colon_and_saturation() {
        let r = free_ring(&["x", "y"]);
        let i = ideal(&r, &["x^2*y", "x*y^2"]);
        let m = ideal(&r, &["x", "y"]);
        let c = i.colon(&m, Caps::default()).unwrap();
        let expect = ideal(&r, &["x*y"]);
        assert!(c.same_ideal(&expect));
        let sat = i.saturation(&m, Caps::default()).unwrap();
        let expect_sat = ideal(&r, &["x*y"]);
        assert!(sat.same_ideal(&expect_sat));
    }

    #[test]
    fn homogeneity_detection() {
        let r34 = quotient(&["X", "Y"], vec![4, 3], &[]);
        let i = ideal(&r34, &["X^3 - Y^4"]);
        assert!(i.is_weighted_homogeneous());

        let r32 = quotient(&["X", "Y"], vec![3, 2], &[]);
        let j = ideal(&r32, &["X^2 - Y^3"]);
        assert!(j.is_weighted_homogeneous());

        let r11 = free_ring(&["X", "Y"]);
        let k = ideal(&r11, &["X^2 - Y^3"]);
        assert!(!k.is_weighted_homogeneous());
    }

    #[test]
    fn minimal_generator_counts() {
        let r = free_ring(&["x", "y"]);
        let i = ideal(&r, &["x", "y", "x + y", "x^2"]);
        assert_eq!(mu(&i, Caps::default()).unwrap(), 2);
        let z = ideal(&r, &[]);
        assert_eq!(mu(&z, Caps::default()).unwrap(), 0);
    }

    #[test]
    fn height_monomial_examples() {
        let r = quotient(
            &["X", "Y", "Z", "W"],
            vec![1, 1, 1, 1],
            &["X*Y", "Y*Z", "Z*X"],
        );
        // jac(R) = (x^2, y^2, z^2) has height one in R.
        let jac = ideal(&r, &["X^2", "Y^2", "Z^2"]);
        assert_eq!(jac.height_monomial().unwrap(), 1);

        let r41 = quotient(
            &["X", "Y", "Z", "W"],
            vec![1, 1, 1, 1],
            &["X^2*Z", "X^2*W", "Y*Z", "Y*W"],
        );
        let jac41 = ideal(
            &r41,
            &["X^4", "X^2*Y", "X*Z^2", "X*Z*W", "X*W^2", "Y^2"],
        );
        assert_eq!(jac41.height_monomial().unwrap(), 0);
    }
}
