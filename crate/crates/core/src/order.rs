//! Monomial orders: weighted graded reverse lexicographic (the default),
//! lexicographic, and block elimination orders built from the first two.
//!
//! All orders here are total, multiplicative well-orders (weights are
//! strictly positive), which is what Buchberger's algorithm requires.

use crate::monomial::Monomial;
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Compare by weighted degree, ties by reverse lexicographic.
    WeightedGrevlex { weights: Vec<u64> },
    /// Pure lexicographic on the variable sequence.
    Lex,
    /// Elimination order: the `eliminate` block dominates, each block
    /// compared by weighted grevlex with the given weights.
    Block {
        eliminate: Vec<usize>,
        weights: Vec<u64>,
    },
}

impl MonomialOrder {
    pub fn wgrevlex(weights: Vec<u64>) -> Self {
        MonomialOrder::WeightedGrevlex { weights }
    }

    /// Elimination order for the given variable block.
    pub fn elimination(eliminate: Vec<usize>, weights: Vec<u64>) -> Self {
        MonomialOrder::Block { eliminate, weights }
    }

    /// True when a leading term free of the eliminated block certifies the
    /// whole polynomial is (used by the elimination theorem).
    pub fn eliminated_block(&self) -> Option<&[usize]> {
        match self {
            MonomialOrder::Block { eliminate, .. } => Some(eliminate),
            _ => None,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::WeightedGrevlex { weights } => grevlex_cmp(a, b, weights, None),
            MonomialOrder::Lex => lex_cmp(a, b, None),
            MonomialOrder::Block { eliminate, weights } => {
                let in_block = |i: usize| eliminate.contains(&i);
                let first = grevlex_cmp(a, b, weights, Some(&|i| in_block(i)));
                if first != Ordering::Equal {
                    return first;
                }
                grevlex_cmp(a, b, weights, Some(&|i| !in_block(i)))
            }
        }
    }
}

/// Weighted grevlex restricted to the variables selected by `mask`
/// (all variables when `mask` is `None`).
fn grevlex_cmp(
    a: &Monomial,
    b: &Monomial,
    weights: &[u64],
    mask: Option<&dyn Fn(usize) -> bool>,
) -> Ordering {
    let selected = |i: usize| mask.is_none_or(|m| m(i));
    let deg = |m: &Monomial| -> u64 {
        m.exps
            .iter()
            .enumerate()
            .filter(|(i, _)| selected(*i))
            .map(|(i, &e)| e as u64 * weights[i])
            .sum()
    };
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        other => return other,
    }
    // Ties: the last variable (within the mask) where the exponents differ;
    // the smaller exponent there wins.
    for i in (0..a.exps.len()).rev() {
        if !selected(i) {
            continue;
        }
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn lex_cmp(a: &Monomial, b: &Monomial, mask: Option<&dyn Fn(usize) -> bool>) -> Ordering {
    let selected = |i: usize| mask.is_none_or(|m| m(i));
    for i in 0..a.exps.len() {
        if !selected(i) {
            continue;
        }
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}
