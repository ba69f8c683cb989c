//! Canonical serialization: JSON, LaTeX, plain text and CSV.

use std::cmp::Ordering;
use std::fmt::Display;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{Monomial, Polynomial, SlotKind};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// Names the slots of a polynomial: boundaries `ℓ_1..ℓ_m` followed by cone
/// angles `θ_1..θ_n`, numbered separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotLabels {
    kinds: Vec<SlotKind>,
}

impl SlotLabels {
    pub fn new(boundaries: usize, cones: usize) -> Self {
        let mut kinds = vec![SlotKind::Boundary; boundaries];
        kinds.extend(std::iter::repeat(SlotKind::Cone).take(cones));
        SlotLabels { kinds }
    }

    pub fn all_boundary(n: usize) -> Self {
        Self::new(n, 0)
    }

    pub fn kinds(&self) -> &[SlotKind] {
        &self.kinds
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    /// 1-based index of the slot among slots of the same kind.
    fn ordinal(&self, slot: usize) -> usize {
        let kind = self.kinds[slot];
        self.kinds[..=slot].iter().filter(|&&k| k == kind).count()
    }

    pub fn latex_name(&self, slot: usize) -> String {
        let base = match self.kinds[slot] {
            SlotKind::Boundary => "\\ell",
            SlotKind::Cone => "\\theta",
        };
        format!("{base}_{}", braced(self.ordinal(slot)))
    }

    pub fn text_name(&self, slot: usize) -> String {
        let base = match self.kinds[slot] {
            SlotKind::Boundary => "ell",
            SlotKind::Cone => "theta",
        };
        format!("{base}{}", self.ordinal(slot))
    }
}

fn braced(n: impl Display) -> String {
    let s = n.to_string();
    if s.len() == 1 {
        s
    } else {
        format!("{{{s}}}")
    }
}

/// Canonical order: total weighted degree descending, then x-degree
/// descending, then exponent vectors lexicographically descending, then
/// π-exponent descending.
fn canonical_cmp(a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
    let grade = |m: &Monomial, p: u32| 2 * m.x_degree() + m.odd_mask().count_ones() + p;
    grade(b.0, b.1)
        .cmp(&grade(a.0, a.1))
        .then_with(|| b.0.x_degree().cmp(&a.0.x_degree()))
        .then_with(|| b.0.ell_powers().cmp(&a.0.ell_powers()))
        .then_with(|| b.1.cmp(&a.1))
}

/// Terms of `p` in canonical order.
pub fn canonical_terms<C: Scalar>(p: &Polynomial<C>) -> Vec<(&Monomial, u32, &C)> {
    let mut terms: Vec<_> = p.iter().collect();
    terms.sort_by(|a, b| canonical_cmp((a.0, a.1), (b.0, b.1)));
    terms
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub xexp: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub odd: Vec<usize>,
    pub piexp: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPolynomial {
    pub vars: usize,
    pub terms: Vec<JsonTerm>,
}

impl Polynomial<Rational> {
    pub fn to_json_value(&self) -> JsonPolynomial {
        let terms = canonical_terms(self)
            .into_iter()
            .map(|(m, p, c)| JsonTerm {
                xexp: m.xexp().to_vec(),
                odd: (0..self.nvars()).filter(|&i| m.is_odd_in(i)).collect(),
                piexp: p,
                coeff: c.to_string(),
            })
            .collect();
        JsonPolynomial { vars: self.nvars(), terms }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("polynomial JSON serialization")
    }

    pub fn from_json_value(j: &JsonPolynomial) -> Result<Self> {
        if j.vars > super::MAX_SLOTS {
            return Err(Error::TooManySlots { max: super::MAX_SLOTS, got: j.vars });
        }
        let mut p = Polynomial::zero(j.vars);
        for t in &j.terms {
            if t.xexp.len() != j.vars {
                return Err(Error::Parse(format!(
                    "term has {} exponents, expected {}",
                    t.xexp.len(),
                    j.vars
                )));
            }
            if t.piexp % 2 != 0 {
                return Err(Error::Parse(format!("odd π exponent {}", t.piexp)));
            }
            let mut mask = 0u32;
            for &i in &t.odd {
                if i >= j.vars {
                    return Err(Error::Parse(format!("odd slot {i} out of range")));
                }
                mask |= 1 << i;
            }
            let c = Rational::from_str(&t.coeff)
                .map_err(|e| Error::Parse(format!("coefficient {:?}: {e}", t.coeff)))?;
            p.add_term(Monomial::new(t.xexp.clone(), mask), t.piexp, c);
        }
        Ok(p)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: JsonPolynomial = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&j)
    }

    /// LaTeX form, e.g. `-\frac{\theta_1^2}{48}+\frac{\pi^2}{12}`.
    pub fn to_latex(&self, labels: &SlotLabels) -> String {
        let terms = canonical_terms(self);
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, p, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let syms = latex_symbols(m, p, labels);
            let num = c.numer().abs();
            let den = c.denom();
            let num_str = if num.is_one() && !syms.is_empty() {
                syms
            } else {
                format!("{num}{syms}")
            };
            if den.is_one() {
                out.push_str(&num_str);
            } else {
                out.push_str(&format!("\\frac{{{num_str}}}{{{den}}}"));
            }
        }
        out
    }

    pub fn to_text(&self, labels: &SlotLabels) -> String {
        to_text_generic(self, labels)
    }

    /// One row per term: exponents of each slot's squared variable, the
    /// π-exponent and the coefficient.
    pub fn to_csv(&self, labels: &SlotLabels) -> String {
        let mut out = String::new();
        let mut header: Vec<String> = (0..labels.len()).map(|i| labels.text_name(i)).collect();
        header.push("piexp".into());
        header.push("coeff".into());
        out.push_str(&header.join(","));
        out.push('\n');
        for (m, p, c) in canonical_terms(self) {
            let mut row: Vec<String> = m.xexp().iter().map(u32::to_string).collect();
            row.push(p.to_string());
            row.push(c.to_string());
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn latex_symbols(m: &Monomial, piexp: u32, labels: &SlotLabels) -> String {
    let mut s = String::new();
    if piexp > 0 {
        s.push_str("\\pi");
        if piexp > 1 {
            s.push_str(&format!("^{}", braced(piexp)));
        }
    }
    for i in 0..m.nvars() {
        let e = m.ell_power(i);
        if e == 0 {
            continue;
        }
        s.push_str(&labels.latex_name(i));
        if e > 1 {
            s.push_str(&format!("^{}", braced(e)));
        }
    }
    s
}

fn text_symbols(m: &Monomial, piexp: u32, labels: &SlotLabels) -> Vec<String> {
    let mut s = Vec::new();
    let power = |name: String, e: u32| if e == 1 { name } else { format!("{name}^{e}") };
    if piexp > 0 {
        s.push(power("pi".into(), piexp));
    }
    for i in 0..m.nvars() {
        let e = m.ell_power(i);
        if e > 0 {
            s.push(power(labels.text_name(i), e));
        }
    }
    s
}

/// Plain text, e.g. `-1/48*theta1^2 + 1/12*pi^2`.
pub(crate) fn to_text_generic<C: Scalar + Display>(p: &Polynomial<C>, labels: &SlotLabels) -> String {
    let terms = canonical_terms(p);
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, piexp, c)) in terms.into_iter().enumerate() {
        let raw = c.to_string();
        let (neg, mag) = match raw.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, raw),
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors = text_symbols(m, piexp, labels);
        if factors.is_empty() || mag != "1" {
            factors.insert(0, mag);
        }
        out.push_str(&factors.join("*"));
    }
    out
}
