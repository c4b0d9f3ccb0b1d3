//! Reference normal ordering by single-step rewriting of words.
//!
//! Words are strings over `x, y, xi, eta` and a tensor bar `|` (over `A`).
//! One rule is applied at a time until no rule matches:
//!
//! ```text
//! y x   -> q^-1 x y          x xi  -> q^2 xi x      y xi  -> q xi y
//! y eta -> q^2 eta y         x eta -> q eta x + (q^2 - 1) xi y
//! eta xi -> -q xi eta        xi xi -> 0             eta eta -> 0
//! a |   -> | a               (a in {x, y})
//! ```
//!
//! This is slow and exponential in the worst case; it exists to check the
//! closed-form rules used by the engine.

use std::collections::BTreeMap;

use crate::oneforms::{OneForm, TensorOverA, TwoForm};
use crate::qalgebra::AlgElem;
use crate::scalar::QField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
    Xi,
    Eta,
    Bar,
}

use Letter::*;

pub type Word = Vec<Letter>;

/// The first applicable rewrite of `w`, as a list of `(coefficient, word)`.
fn step<F: QField>(w: &[Letter]) -> Option<Vec<(F, Word)>> {
    for i in 0..w.len().saturating_sub(1) {
        let splice = |mid: &[Letter]| {
            let mut v = w[..i].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[i + 2..]);
            v
        };
        let q = F::q_power;
        let out = match (w[i], w[i + 1]) {
            (Y, X) => vec![(q(-1), splice(&[X, Y]))],
            (X, Xi) => vec![(q(2), splice(&[Xi, X]))],
            (Y, Xi) => vec![(q(1), splice(&[Xi, Y]))],
            (Y, Eta) => vec![(q(2), splice(&[Eta, Y]))],
            (X, Eta) => vec![
                (q(1), splice(&[Eta, X])),
                (q(2) - F::one(), splice(&[Xi, Y])),
            ],
            (Eta, Xi) => vec![(-q(1), splice(&[Xi, Eta]))],
            (Xi, Xi) | (Eta, Eta) => vec![],
            (X, Bar) => vec![(F::one(), splice(&[Bar, X]))],
            (Y, Bar) => vec![(F::one(), splice(&[Bar, Y]))],
            _ => continue,
        };
        return Some(out);
    }
    None
}

/// Normal form of a linear combination of words.
pub fn normalize<F: QField>(input: Vec<(F, Word)>) -> BTreeMap<Word, F> {
    let mut pending: BTreeMap<Word, F> = BTreeMap::new();
    for (c, w) in input {
        add(&mut pending, w, c);
    }
    let mut done: BTreeMap<Word, F> = BTreeMap::new();
    while let Some((w, c)) = pending.pop_first() {
        match step::<F>(&w) {
            None => add(&mut done, w, c),
            Some(out) => {
                for (k, v) in out {
                    add(&mut pending, v, k * c.clone());
                }
            }
        }
    }
    done
}

fn add<F: QField>(map: &mut BTreeMap<Word, F>, w: Word, c: F) {
    let merged = match map.remove(&w) {
        Some(old) => old + c,
        None => c,
    };
    if !merged.is_zero() {
        map.insert(w, merged);
    }
}

pub fn monomial_word(p: u32, r: u32) -> Word {
    let mut w = vec![X; p as usize];
    w.extend(std::iter::repeat_n(Y, r as usize));
    w
}

pub fn basis_letter(i: usize) -> Letter {
    if i == 0 {
        Xi
    } else {
        Eta
    }
}

/// Splits a normal word into its form letters and the trailing `x^p y^r`.
fn split(w: &[Letter]) -> (Vec<Letter>, i64, i64) {
    let forms: Vec<Letter> = w.iter().copied().filter(|l| !matches!(l, X | Y)).collect();
    let p = w.iter().filter(|l| **l == X).count() as i64;
    let r = w.iter().filter(|l| **l == Y).count() as i64;
    (forms, p, r)
}

fn index_of(l: Letter) -> usize {
    if l == Xi {
        0
    } else {
        1
    }
}

/// Reads a normal form made of words `theta^i x^p y^r`.
pub fn to_oneform<F: QField>(nf: &BTreeMap<Word, F>) -> OneForm<F> {
    let mut out = OneForm::zero();
    for (w, c) in nf {
        let (forms, p, r) = split(w);
        assert_eq!(forms.len(), 1, "not a 1-form word");
        let i = index_of(forms[0]);
        out.b[i] = &out.b[i] + &AlgElem::monomial(p, r, c.clone());
    }
    out
}

/// Reads a normal form made of words `xi eta x^p y^r`.
pub fn to_twoform<F: QField>(nf: &BTreeMap<Word, F>) -> TwoForm<F> {
    let mut out = TwoForm::zero();
    for (w, c) in nf {
        let (forms, p, r) = split(w);
        assert_eq!(forms, vec![Xi, Eta], "not a 2-form word");
        out.c = &out.c + &AlgElem::monomial(p, r, c.clone());
    }
    out
}

/// Reads a normal form made of words `theta^j | theta^k x^p y^r`.
pub fn to_tensor<F: QField>(nf: &BTreeMap<Word, F>) -> TensorOverA<F> {
    let mut out = TensorOverA::zero();
    for (w, c) in nf {
        let (forms, p, r) = split(w);
        assert!(forms.len() == 3 && forms[1] == Bar, "not a tensor word");
        let (j, k) = (index_of(forms[0]), index_of(forms[2]));
        out.c[j][k] = &out.c[j][k] + &AlgElem::monomial(p, r, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, RatFunc};

    #[test]
    fn basic_rules() {
        let nf = normalize::<RatFunc>(vec![(RatFunc::one(), vec![X, Eta])]);
        let w = to_oneform(&nf);
        assert_eq!(w, OneForm::eta().left_mul(&AlgElem::x()));
        // xi x | xi = xi | x xi = q^2 xi | xi x
        let nf = normalize::<RatFunc>(vec![(RatFunc::one(), vec![Xi, X, Bar, Xi])]);
        let expect = TensorOverA::term(0, 0, AlgElem::monomial(1, 0, RatFunc::q_power(2)));
        assert_eq!(to_tensor(&nf), expect);
        assert!(normalize::<RatFunc>(vec![(RatFunc::one(), vec![Xi, Y, Xi])]).is_empty());
    }
}
