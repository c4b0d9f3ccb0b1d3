//! Seeded random instances for tests, benchmarks and the command line.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::connection::{total_degree_monomials, Christoffel, Side};
use crate::qalgebra::{AlgElem, Exp};
use crate::scalar::QField;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a + b q` with small integers `a, b`.
pub fn scalar<F: QField, R: Rng>(rng: &mut R) -> F {
    let a = rng.gen_range(-3..=3);
    let b = rng.gen_range(-3..=3);
    F::from_int(a) + F::q() * F::from_int(b)
}

pub fn nonzero_scalar<F: QField, R: Rng>(rng: &mut R) -> F {
    loop {
        let s: F = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Each monomial present with probability one half.
pub fn element<F: QField, R: Rng>(rng: &mut R, monos: &[Exp]) -> AlgElem<F> {
    let mut out = AlgElem::zero();
    for &(p, r) in monos {
        if rng.gen_bool(0.5) {
            out = &out + &AlgElem::monomial(p, r, scalar(rng));
        }
    }
    out
}

/// Terms of `a` with `x`-degree below `k`.
fn low_x<F: QField>(a: &AlgElem<F>, k: i64) -> AlgElem<F> {
    let low = a.terms().filter(|((p, _), _)| *p < k);
    AlgElem::from_terms(a.powers(), low.map(|(e, c)| (*e, c.clone()))).expect("same support")
}

/// A left connection with entries of total degree at most `degree` meeting
/// every admissibility clause.
pub fn admissible<F: QField, R: Rng>(rng: &mut R, degree: i64) -> Christoffel<F> {
    let monos = total_degree_monomials(degree);
    let mut g = Christoffel::zero(Side::Left);
    for e in g.gamma.iter_mut().flatten().flatten() {
        *e = element(rng, &monos);
    }
    for (idx, k) in [
        ((1, 1, 2), 1),
        ((1, 2, 1), 1),
        ((1, 2, 2), 2),
        ((2, 2, 2), 1),
    ] {
        let (i, j, l) = idx;
        let e = g.get(i, j, l).clone();
        g.set(i, j, l, &e - &low_x(&e, k));
    }
    // fix the x^0 part of G^2_12 so the combined clause holds
    let q = F::q();
    let y_xinv = &AlgElem::monomial(0, 1, F::one()) * &AlgElem::monomial(-1, 0, F::one());
    let rest = &g.get(2, 2, 1).scale(&(F::one() - F::q_power(2)))
        + &(&y_xinv * g.get(2, 2, 2)).scale(&(F::from_int(3) * F::q_power(2)));
    let c0 = low_x(&rest, 1).to_polynomial().expect("x^0 part");
    let inv = (q - F::one()).inv().expect("q != 1");
    let g212 = g.get(2, 1, 2).clone();
    g.set(2, 1, 2, &(&g212 - &low_x(&g212, 1)) - &c0.scale(&inv));
    g
}

/// Break one admissibility clause of an admissible connection, leaving the
/// others intact. `clause` indexes the clauses that can fail alone: 0, 1, 2 and 4.
pub fn violate<F: QField, R: Rng>(
    rng: &mut R,
    g: &Christoffel<F>,
    clause: usize,
) -> Christoffel<F> {
    let r = rng.gen_range(0..=3);
    let c: F = nonzero_scalar(rng);
    let (idx, p) = match clause {
        0 => ((1, 1, 2), 0),
        1 => ((1, 2, 1), 0),
        2 => ((1, 2, 2), 1),
        4 => ((2, 1, 2), 0),
        _ => panic!("clause {clause} cannot fail alone"),
    };
    let mut out = g.clone();
    let (i, j, k) = idx;
    out.set(i, j, k, g.get(i, j, k) + &AlgElem::monomial(p, r, c));
    out
}
