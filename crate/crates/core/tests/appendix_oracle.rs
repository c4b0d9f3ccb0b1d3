//! Commutation formulas of the engine against a separate string rewriter.
//!
//! Words use `x`, `y`, `a` for xi, `b` for eta and `|` for the tensor bar.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bimod_core::oneforms::{differential, differential_form, OneForm, TensorOverA};
use bimod_core::qalgebra::AlgElem;
use bimod_core::scalar::{qn_sum, Field, QField, RatFunc, Zeta3};

type Nf<F> = BTreeMap<String, F>;

fn push<F: QField>(map: &mut Nf<F>, w: String, c: F) {
    let sum = match map.remove(&w) {
        Some(old) => old + c,
        None => c,
    };
    if !sum.is_zero() {
        map.insert(w, sum);
    }
}

fn rules<F: QField>(pair: &str) -> Option<Vec<(F, &'static str)>> {
    let q = F::q_power;
    Some(match pair {
        "yx" => vec![(q(-1), "xy")],
        "xa" => vec![(q(2), "ax")],
        "ya" => vec![(q(1), "ay")],
        "yb" => vec![(q(2), "by")],
        "xb" => vec![(q(1), "bx"), (q(2) - F::one(), "ay")],
        "ba" => vec![(-q(1), "ab")],
        "aa" | "bb" => vec![],
        "x|" => vec![(F::one(), "|x")],
        "y|" => vec![(F::one(), "|y")],
        _ => return None,
    })
}

fn normal_form<F: QField>(input: Nf<F>) -> Nf<F> {
    let mut todo = input;
    let mut done = Nf::new();
    while let Some((w, c)) = todo.pop_first() {
        let hit =
            (0..w.len().saturating_sub(1)).find_map(|i| rules::<F>(&w[i..i + 2]).map(|r| (i, r)));
        match hit {
            None => push(&mut done, w, c),
            Some((i, out)) => {
                for (k, mid) in out {
                    push(
                        &mut todo,
                        format!("{}{}{}", &w[..i], mid, &w[i + 2..]),
                        k * c.clone(),
                    );
                }
            }
        }
    }
    done
}

fn word(p: usize, r: usize) -> String {
    "x".repeat(p) + &"y".repeat(r)
}

fn letter(i: usize) -> &'static str {
    ["a", "b"][i]
}

fn single<F: QField>(w: String) -> Nf<F> {
    Nf::from([(w, F::one())])
}

fn alg_words<F: QField>(prefix: &str, a: &AlgElem<F>, out: &mut Nf<F>) {
    for ((p, r), c) in a.terms() {
        push(
            out,
            format!("{prefix}{}", word(*p as usize, *r as usize)),
            c.clone(),
        );
    }
}

fn form_words<F: QField>(w: &OneForm<F>) -> Nf<F> {
    let mut out = Nf::new();
    for i in 0..2 {
        alg_words(letter(i), &w.b[i], &mut out);
    }
    out
}

fn tensor_words<F: QField>(t: &TensorOverA<F>) -> Nf<F> {
    let mut out = Nf::new();
    for j in 0..2 {
        for k in 0..2 {
            alg_words(
                &format!("{}|{}", letter(j), letter(k)),
                &t.c[j][k],
                &mut out,
            );
        }
    }
    out
}

/// `sign * prefix d(w)` by the Leibniz rule, in normal form.
fn d_word<F: QField>(prefix: &str, w: &str, sign: F) -> Nf<F> {
    let mut out = Nf::new();
    for (i, ch) in w.char_indices() {
        let form = if ch == 'x' { "a" } else { "b" };
        push(
            &mut out,
            format!("{prefix}{}{form}{}", &w[..i], &w[i + 1..]),
            sign.clone(),
        );
    }
    normal_form(out)
}

fn check_products<F: QField>(rng: &mut ChaCha8Rng, n: usize) {
    for _ in 0..n {
        let (p, r) = (rng.gen_range(0..6), rng.gen_range(0..6));
        let a = AlgElem::<F>::monomial(p as i64, r as i64, F::one());
        for i in 0..2 {
            let oracle = normal_form(single::<F>(word(p, r) + letter(i)));
            assert_eq!(
                form_words(&OneForm::basis(i).left_mul(&a)),
                oracle,
                "x^{p} y^{r} theta^{i}"
            );
        }
        let (j, k, m) = (
            rng.gen_range(0..2),
            rng.gen_range(0..2),
            rng.gen_range(0..6),
        );
        let bar = format!("{}|{}", letter(j), letter(k));
        for (pp, rr) in [(m, 0), (0, m)] {
            let oracle = normal_form(single::<F>(word(pp, rr) + &bar));
            let engine = TensorOverA::basis(j, k).left_mul(&AlgElem::monomial(
                pp as i64,
                rr as i64,
                F::one(),
            ));
            assert_eq!(tensor_words(&engine), oracle, "x^{pp} y^{rr} {bar}");
        }
    }
}

fn check_differentials<F: QField>(rng: &mut ChaCha8Rng, n: usize) {
    for _ in 0..n {
        let (p, r) = (rng.gen_range(0..6), rng.gen_range(0..6));
        let a = AlgElem::<F>::monomial(p as i64, r as i64, F::one());
        let da = differential(&a).unwrap();
        assert_eq!(
            form_words(&da),
            d_word("", &word(p, r), F::one()),
            "d(x^{p} y^{r})"
        );
        // d(theta^i x^p y^r) = -theta^i d(x^p y^r)
        let i = rng.gen_range(0..2);
        let oracle = d_word(letter(i), &word(p, r), -F::one());
        let engine = differential_form(&OneForm::basis(i).right_mul(&a)).unwrap();
        let mut words = Nf::new();
        alg_words("ab", &engine.c, &mut words);
        assert_eq!(words, oracle, "d(theta^{i} x^{p} y^{r})");
        assert!(differential_form(&da).unwrap().is_zero());
    }
}

#[test]
fn products_generic() {
    check_products::<RatFunc>(&mut ChaCha8Rng::seed_from_u64(1), 500);
}

#[test]
fn products_cube_root() {
    check_products::<Zeta3>(&mut ChaCha8Rng::seed_from_u64(2), 500);
}

#[test]
fn differentials() {
    check_differentials::<RatFunc>(&mut ChaCha8Rng::seed_from_u64(3), 200);
    check_differentials::<Zeta3>(&mut ChaCha8Rng::seed_from_u64(4), 200);
}

#[test]
fn q_integers() {
    // Q_n = 1 + q^2 + ... + q^(2n-2)
    let q2 = RatFunc::q_power(2);
    assert_eq!(
        qn_sum::<RatFunc>(3).unwrap(),
        RatFunc::one() + q2.clone() + q2.clone() * q2
    );
    assert!(qn_sum::<Zeta3>(3).unwrap().is_zero());
    assert!(!qn_sum::<Zeta3>(2).unwrap().is_zero());
}
