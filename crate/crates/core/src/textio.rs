//! Reading algebra elements, 1-forms and labeled input files.
//!
//! Files consist of `[section]` headers followed by `key = expression` lines;
//! `#` starts a comment.
//!
//! ```text
//! [gamma]
//! G^1_22 = x^2      # everything else is zero
//! ```

use std::collections::BTreeMap;

use crate::connection::{index_triples, label, Christoffel, GaugeMatrix, Side};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::oneforms::OneForm;
use crate::parse::{parse_expr_at, Expr, Pos};
use crate::qalgebra::{AlgElem, PowerMode};
use crate::scalar::QField;

enum Value<F> {
    Alg(AlgElem<F>),
    Form(OneForm<F>),
}

fn q_ident<F: QField>(name: &str) -> Option<F> {
    (name == "q").then(F::q)
}

fn eval<F: QField>(e: &Expr, forms: bool) -> Result<Value<F>> {
    use Value::*;
    Ok(match e {
        Expr::Num(r) => Alg(AlgElem::constant(F::from_rational(r.clone()))),
        Expr::Ident(name, pos) => match name.as_str() {
            "q" => Alg(AlgElem::constant(F::q())),
            "x" => Alg(AlgElem::x()),
            "y" => Alg(AlgElem::y()),
            "xi" if forms => Form(OneForm::xi()),
            "eta" if forms => Form(OneForm::eta()),
            _ => return Err(pos.error(format!("unknown symbol '{name}'"))),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let neg = matches!(e, Expr::Sub(..));
            match (eval::<F>(a, forms)?, eval::<F>(b, forms)?) {
                (Alg(u), Alg(v)) => Alg(if neg { &u - &v } else { &u + &v }),
                (Form(u), Form(v)) => Form(if neg { &u - &v } else { &u + &v }),
                (Alg(u), Form(v)) if u.is_zero() => Form(if neg { -&v } else { v }),
                (Form(u), Alg(v)) if v.is_zero() => Form(u),
                _ => return Err(first_pos(e).error("cannot add an algebra element to a 1-form")),
            }
        }
        Expr::Mul(a, b) => match (eval::<F>(a, forms)?, eval::<F>(b, forms)?) {
            (Alg(u), Alg(v)) => Alg(&u * &v),
            (Alg(u), Form(w)) => Form(w.left_mul(&u)),
            (Form(w), Alg(u)) => Form(w.right_mul(&u)),
            (Form(_), Form(_)) => {
                return Err(first_pos(e).error("product of two 1-forms is not a 1-form"))
            }
        },
        Expr::Div(a, b, pos) => {
            let d = crate::parse::eval_scalar::<F>(b, &q_ident)
                .map_err(|_| pos.error("can only divide by a scalar"))?;
            let inv = d.inv().ok_or_else(|| pos.error("division by zero"))?;
            match eval::<F>(a, forms)? {
                Alg(u) => Alg(u.scale(&inv)),
                Form(w) => Form(w.scale(&inv)),
            }
        }
        Expr::Neg(a) => match eval::<F>(a, forms)? {
            Alg(u) => Alg(-u),
            Form(w) => Form(-&w),
        },
        Expr::Pow(a, n, pos) => match eval::<F>(a, forms)? {
            Alg(u) => Alg(u.pow(*n).map_err(|err| pos.error(err.to_string()))?),
            Form(_) => return Err(pos.error("powers of 1-forms are not defined")),
        },
    })
}

fn first_pos(e: &Expr) -> Pos {
    match e {
        Expr::Ident(_, p) | Expr::Div(_, _, p) | Expr::Pow(_, _, p) => *p,
        Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) | Expr::Neg(a) => first_pos(a),
        Expr::Num(_) => Pos { line: 1, column: 1 },
    }
}

fn check_mode<F: QField>(a: AlgElem<F>, powers: PowerMode, at: Pos) -> Result<AlgElem<F>> {
    match powers {
        PowerMode::Laurent => Ok(a.to_laurent()),
        PowerMode::Polynomial => a
            .to_polynomial()
            .map_err(|_| at.error("negative exponent in polynomial mode")),
    }
}

pub fn parse_alg_at<F: QField>(src: &str, at: Pos, powers: PowerMode) -> Result<AlgElem<F>> {
    match eval::<F>(&parse_expr_at(src, at)?, false)? {
        Value::Alg(a) => check_mode(a, powers, at),
        Value::Form(_) => Err(at.error("expected an algebra element")),
    }
}

/// Parses text such as `(q^2 - 1)*x*y - y^2`.
pub fn parse_alg<F: QField>(src: &str, powers: PowerMode) -> Result<AlgElem<F>> {
    parse_alg_at(src, Pos { line: 1, column: 1 }, powers)
}

/// Parses text such as `x*xi + eta*(q*y)`.
pub fn parse_oneform<F: QField>(src: &str) -> Result<OneForm<F>> {
    let at = Pos { line: 1, column: 1 };
    match eval::<F>(&parse_expr_at(src, at)?, true)? {
        Value::Form(w) => Ok(OneForm {
            b: [
                check_mode(w.b[0].clone(), PowerMode::Polynomial, at)?,
                check_mode(w.b[1].clone(), PowerMode::Polynomial, at)?,
            ],
        }),
        Value::Alg(a) if a.is_zero() => Ok(OneForm::zero()),
        Value::Alg(_) => Err(at.error("expected a 1-form")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    /// Position of the first character of `value`.
    pub pos: Pos,
}

/// Sections in file order of first appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sections {
    pub sections: BTreeMap<String, Vec<Entry>>,
}

impl Sections {
    pub fn get(&self, name: &str) -> Option<&[Entry]> {
        self.sections.get(name).map(Vec::as_slice)
    }

    pub fn require(&self, name: &str) -> Result<&[Entry]> {
        self.get(name).ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: format!("missing section [{name}]"),
        })
    }
}

pub fn parse_sections(text: &str) -> Result<Sections> {
    let mut out = Sections::default();
    let mut current: Option<String> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let col = |byte: usize| raw[..byte].chars().count() + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| {
                Pos {
                    line,
                    column: col(indent),
                }
                .error("unterminated section header")
            })?;
            let name = name.trim().to_string();
            out.sections.entry(name.clone()).or_default();
            current = Some(name);
            continue;
        }
        let eq = body.find('=').ok_or_else(|| {
            Pos {
                line,
                column: col(indent),
            }
            .error("expected 'key = value'")
        })?;
        let key = body[..eq].trim().to_string();
        if key.is_empty() {
            return Err(Pos {
                line,
                column: col(indent),
            }
            .error("empty key"));
        }
        let section = current.clone().ok_or_else(|| {
            Pos {
                line,
                column: col(indent),
            }
            .error("entry outside of any section")
        })?;
        let value_start = eq + 1 + (body[eq + 1..].len() - body[eq + 1..].trim_start().len());
        out.sections.entry(section).or_default().push(Entry {
            key,
            value: body[value_start..].trim_end().to_string(),
            pos: Pos {
                line,
                column: col(value_start),
            },
        });
    }
    Ok(out)
}

fn lookup<'a>(entries: &'a [Entry], allowed: &[String]) -> Result<BTreeMap<&'a str, &'a Entry>> {
    let mut out = BTreeMap::new();
    for e in entries {
        if !allowed.contains(&e.key) {
            return Err(e.pos.error(format!("unknown key '{}'", e.key)));
        }
        if out.insert(e.key.as_str(), e).is_some() {
            return Err(e.pos.error(format!("duplicate key '{}'", e.key)));
        }
    }
    Ok(out)
}

fn alg_entry<F: QField>(map: &BTreeMap<&str, &Entry>, key: &str) -> Result<AlgElem<F>> {
    match map.get(key) {
        Some(e) => parse_alg_at(&e.value, e.pos, PowerMode::Polynomial),
        None => Ok(AlgElem::zero()),
    }
}

/// Keys `G11, G12, G21, G22`; missing entries are zero.
pub fn metric_from_entries<F: QField>(entries: &[Entry]) -> Result<Metric<F>> {
    let keys: Vec<String> = ["G11", "G12", "G21", "G22"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let map = lookup(entries, &keys)?;
    Ok(Metric::new(
        alg_entry(&map, "G11")?,
        alg_entry(&map, "G12")?,
        alg_entry(&map, "G21")?,
        alg_entry(&map, "G22")?,
    ))
}

/// Keys `G^i_jk`; missing entries are zero.
pub fn christoffel_from_entries<F: QField>(
    entries: &[Entry],
    side: Side,
) -> Result<Christoffel<F>> {
    let keys: Vec<String> = index_triples().map(|(i, j, k)| label(i, j, k)).collect();
    let map = lookup(entries, &keys)?;
    let mut g = Christoffel::zero(side);
    for (i, j, k) in index_triples() {
        g.gamma[i][j][k] = alg_entry(&map, &label(i, j, k))?;
    }
    Ok(g)
}

/// Keys `U11..U22` and `Uinv11..Uinv22`.
pub fn gauge_from_entries<F: QField>(entries: &[Entry]) -> Result<GaugeMatrix<F>> {
    let names = |p: &str| -> Vec<String> {
        ["11", "12", "21", "22"]
            .iter()
            .map(|s| format!("{p}{s}"))
            .collect()
    };
    let mut keys = names("U");
    keys.extend(names("Uinv"));
    let map = lookup(entries, &keys)?;
    let grid = |p: &str| -> Result<[[AlgElem<F>; 2]; 2]> {
        let n = names(p);
        Ok([
            [alg_entry(&map, &n[0])?, alg_entry(&map, &n[1])?],
            [alg_entry(&map, &n[2])?, alg_entry(&map, &n[3])?],
        ])
    };
    GaugeMatrix::new(grid("U")?, grid("Uinv")?)
}

pub fn write_christoffel<F: QField>(section: &str, g: &Christoffel<F>) -> String {
    let mut out = format!("[{section}]\n");
    for ((i, j, k), e) in g.entries() {
        out.push_str(&format!("{} = {e}\n", label(i, j, k)));
    }
    out
}

pub fn write_metric<F: QField>(section: &str, m: &Metric<F>) -> String {
    let mut out = format!("[{section}]\n");
    for i in 0..2 {
        for j in 0..2 {
            out.push_str(&format!("G{}{} = {}\n", i + 1, j + 1, m.g[i][j]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, RatFunc, Zeta3};

    type G = AlgElem<RatFunc>;

    #[test]
    fn algebra_round_trip() {
        let a = &G::monomial(1, 1, RatFunc::q_power(2) - RatFunc::one())
            - &G::monomial(0, 2, RatFunc::one());
        let text = a.to_string();
        assert_eq!(
            parse_alg::<RatFunc>(&text, PowerMode::Polynomial).unwrap(),
            a
        );
        let yx = parse_alg::<RatFunc>("y*x", PowerMode::Polynomial).unwrap();
        assert_eq!(yx, G::monomial(1, 1, RatFunc::q_power(-1)));
        let l = parse_alg::<RatFunc>("x^(-2)*y^4", PowerMode::Laurent).unwrap();
        assert_eq!(l.to_string(), "x^(-2)*y^4");
        assert!(matches!(
            parse_alg::<RatFunc>("x^-1", PowerMode::Polynomial),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn oneform_round_trip() {
        let w = parse_oneform::<Zeta3>("x*eta").unwrap();
        let expect = &OneForm::eta().right_mul(&AlgElem::monomial(1, 0, Zeta3::q()))
            + &OneForm::xi().right_mul(&AlgElem::monomial(0, 1, Zeta3::q_power(2) - Zeta3::one()));
        assert_eq!(w, expect);
        assert_eq!(parse_oneform::<Zeta3>(&w.to_string()).unwrap(), w);
        assert!(parse_oneform::<Zeta3>("xi*eta").is_err());
        assert!(parse_alg::<Zeta3>("xi", PowerMode::Polynomial).is_err());
    }

    #[test]
    fn sections() {
        let text = "# header\n[gamma]\nG^1_22 = x^2  # comment\n\n[metric]\n  G11 = 1\n";
        let s = parse_sections(text).unwrap();
        let g = christoffel_from_entries::<Zeta3>(s.require("gamma").unwrap(), Side::Left).unwrap();
        assert_eq!(g.get(1, 2, 2), &AlgElem::monomial(2, 0, Zeta3::one()));
        let m = metric_from_entries::<Zeta3>(s.require("metric").unwrap()).unwrap();
        assert_eq!(
            m,
            Metric::new(
                AlgElem::one(),
                AlgElem::zero(),
                AlgElem::zero(),
                AlgElem::zero()
            )
        );
        let err = parse_sections("[gamma]\nG^1_22 = x +* 2\n").unwrap();
        let err = christoffel_from_entries::<Zeta3>(err.require("gamma").unwrap(), Side::Left)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_sections("[metric]\nG13 = 1\n").unwrap();
        let err = metric_from_entries::<Zeta3>(err.require("metric").unwrap()).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 7,
                message: "unknown key 'G13'".into()
            }
        );
        assert!(matches!(
            parse_sections("G11 = 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn written_files_parse_back() {
        let g = crate::connection::whole_bimodule_family_generic::<RatFunc>(&RatFunc::one());
        let text = write_christoffel("gamma", &g);
        let s = parse_sections(&text).unwrap();
        assert_eq!(
            christoffel_from_entries::<RatFunc>(s.require("gamma").unwrap(), Side::Left).unwrap(),
            g
        );
    }
}
