//! Groebner engine property suite: canonicity under generator shuffles,
//! agreement of normal-form membership with an independent dense
//! linear-algebra oracle, and exhaustive S-polynomial verification.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singbound_core::field::Coef;
use singbound_core::groebner::{reduced_groebner, verify_buchberger, Caps};
use singbound_core::monomial::{monomials_of_total_degree, Monomial};
use singbound_core::poly::{parse_polynomial, PolyRing, Polynomial};
use singbound_core::FieldSpec;

fn qring(vars: &[&str], weights: Vec<u64>) -> PolyRing {
    PolyRing::new(
        FieldSpec::Rational,
        vars.iter().map(|s| s.to_string()).collect(),
        weights,
    )
    .unwrap()
}

fn polys(ring: &PolyRing, texts: &[&str]) -> Vec<Polynomial> {
    texts
        .iter()
        .map(|t| parse_polynomial(ring, t).unwrap())
        .collect()
}

/// The relation ideals of the four worked examples.
fn example_ideals() -> Vec<(PolyRing, Vec<Polynomial>)> {
    let mut out = Vec::new();
    let r1 = qring(&["X", "Y", "Z", "W"], vec![1, 1, 1, 1]);
    let g1 = polys(&r1, &["X^2*Z", "X^2*W", "Y*Z", "Y*W"]);
    out.push((r1, g1));
    let r2 = qring(&["X", "Y", "Z", "W"], vec![1, 1, 1, 1]);
    let g2 = polys(&r2, &["X*Y", "Y*Z", "Z*X"]);
    out.push((r2, g2));
    let r3 = qring(&["X", "Y", "Z"], vec![4, 3, 1]);
    let g3 = polys(&r3, &["X^3 - Y^4"]);
    out.push((r3, g3));
    let r4 = qring(&["x", "y"], vec![1, 1]);
    let g4 = polys(&r4, &["x^3", "x^2*y"]);
    out.push((r4, g4));
    out
}

#[test]
fn canonicity_under_100_shuffles() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for (ring, gens) in example_ideals() {
        let reference = reduced_groebner(&ring, &gens, Caps::default()).unwrap();
        for _ in 0..100 {
            let mut shuffled = gens.clone();
            shuffled.shuffle(&mut rng);
            let gb = reduced_groebner(&ring, &shuffled, Caps::default()).unwrap();
            assert_eq!(gb.elements, reference.elements);
        }
    }
}

#[test]
fn spolynomials_of_example_bases_reduce_to_zero() {
    for (ring, gens) in example_ideals() {
        let gb = reduced_groebner(&ring, &gens, Caps::default()).unwrap();
        assert!(gb.elements.len() <= 12);
        assert!(verify_buchberger(&ring, &gb));
    }
}

fn coef_to_rational(c: &Coef) -> BigRational {
    match c {
        Coef::Rat(r) => r.clone(),
        Coef::Fp(_) => unreachable!("rational suite"),
    }
}

/// Row-reduces `rows` in place over Q and returns the rank profile; used to
/// decide membership of a vector in the row span.
struct RowSpan {
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    fn new(width: usize) -> Self {
        let _ = width;
        RowSpan {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Reduces `v` against the current rows; returns the remainder.
    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi -= &factor * ri;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<BigRational>) {
        let mut v = self.reduce(v);
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[p].clone();
            for x in v.iter_mut() {
                *x /= &inv;
            }
            self.rows.push(v);
            self.pivots.push(p);
        }
    }

    fn contains(&self, v: Vec<BigRational>) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

fn poly_to_vector(poly: &Polynomial, index: &std::collections::BTreeMap<Monomial, usize>) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); index.len()];
    for (m, c) in poly.terms() {
        v[*index.get(m).expect("degree matches")] = coef_to_rational(c);
    }
    v
}

/// Membership of a degree-d monomial in a homogeneous ideal, decided by row
/// reduction of the span of all degree-d multiples of the generators. This
/// is the independent oracle against the normal-form path.
fn dense_membership_oracle(
    ring: &PolyRing,
    gens: &[Polynomial],
    target: &Monomial,
) -> bool {
    let d = target.total_degree() as u32;
    let basis = monomials_of_total_degree(ring.nvars(), d);
    let index: std::collections::BTreeMap<Monomial, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut span = RowSpan::new(basis.len());
    for g in gens {
        let gd = g
            .weighted_degree(ring)
            .expect("nonzero homogeneous generator") as u32;
        if gd > d {
            continue;
        }
        for mult in monomials_of_total_degree(ring.nvars(), d - gd) {
            let prod = g.term_mul(ring, &mult, &ring.field.one());
            span.insert(poly_to_vector(&prod, &index));
        }
    }
    let mut tv = vec![BigRational::zero(); basis.len()];
    tv[index[target]] = BigRational::from(BigInt::from(1));
    span.contains(tv)
}

fn random_homogeneous_poly(
    rng: &mut ChaCha8Rng,
    ring: &PolyRing,
    degree: u32,
) -> Polynomial {
    let monomials = monomials_of_total_degree(ring.nvars(), degree);
    loop {
        let mut terms = Vec::new();
        for m in &monomials {
            if rng.gen_bool(0.4) {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    terms.push((m.clone(), ring.field.from_i64(c)));
                }
            }
        }
        let p = Polynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn membership_agrees_with_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let ring = qring(&["x", "y", "z"], vec![1, 1, 1]);
    for trial in 0..20 {
        let ngens = rng.gen_range(2..=4);
        let gens: Vec<Polynomial> = (0..ngens)
            .map(|_| {
                let d = rng.gen_range(1..=4);
                random_homogeneous_poly(&mut rng, &ring, d)
            })
            .collect();
        let gb = reduced_groebner(&ring, &gens, Caps::default()).unwrap();
        assert!(verify_buchberger(&ring, &gb), "trial {trial}");
        for d in 0..=6u32 {
            for m in monomials_of_total_degree(3, d) {
                let poly = Polynomial::monomial(&ring, m.clone(), ring.field.one());
                let nf_member = gb.contains(&ring, &poly);
                let oracle_member = dense_membership_oracle(&ring, &gens, &m);
                assert_eq!(
                    nf_member, oracle_member,
                    "trial {trial}: disagreement on degree-{d} monomial"
                );
            }
        }
    }
}

#[test]
fn groebner_over_prime_field() {
    // The engine is exact over GF(p) as well.
    let field = FieldSpec::prime(32003).unwrap();
    let ring = PolyRing::standard(field, &["x", "y"]);
    let gens = polys(&ring, &["x^2 + y^2", "x*y"]);
    let gb = reduced_groebner(&ring, &gens, Caps::default()).unwrap();
    assert_eq!(gb.elements.len(), 3);
    assert!(verify_buchberger(&ring, &gb));
}
