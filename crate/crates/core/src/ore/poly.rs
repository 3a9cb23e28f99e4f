use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::{Field, Scalar};

/// Exponent vector of the normal-ordered monomial `x_1^e_1 ··· x_n^e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Highest generator index with a nonzero exponent.
    pub fn last(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// Lowest generator index with a nonzero exponent.
    pub fn first(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// The monomial as a word of generator indices, in normal order.
    pub fn word(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &e)| core::iter::repeat_n(i, e as usize)).collect()
    }

    pub(crate) fn with(&self, i: usize, e: u32) -> Self {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }
}

/// Normal-ordered noncommutative polynomial: a finite map from monomials to
/// nonzero coefficients. Multiplication needs a presentation and lives on
/// [`super::OrePresentation`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl NCPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        NCPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        Self::monomial(field, Monomial::one(nvars), c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn generator(field: Field, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::generator(nvars, i), field.one())
    }

    pub fn monomial(field: Field, m: Monomial, c: Scalar) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(field, nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(field: Field, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.scale(&-other.field.one()))
    }

    pub fn scale(&self, s: &Scalar) -> NCPoly {
        if s.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        NCPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(), ..self.clone() }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest generator index occurring in any term.
    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::last).max()
    }

    /// Exponent of generator `i` in the highest-power term.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Reinterprets the polynomial with `n` generators (padding or
    /// truncating unused trailing generators).
    pub fn with_nvars(&self, n: usize) -> NCPoly {
        let mut out = Self::zero(self.field, n);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            assert!(e.iter().skip(n).all(|&x| x == 0), "polynomial uses generators beyond {n}");
            e.resize(n, 0);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Writes the polynomial with the given generator names, highest total
    /// degree first.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> DisplayPoly<'a> {
        DisplayPoly { poly: self, names }
    }

    /// `x_i ↦ c_i · x_i` for some scalar `c_i`, if the polynomial is that
    /// shape (including `0`).
    pub fn as_scaled_generator(&self, i: usize) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        let g = Monomial::generator(self.nvars, i);
        (self.terms.len() == 1).then(|| self.terms.get(&g).cloned()).flatten()
    }

    /// `x_i ↦ a · x_i + b`, if the polynomial is that shape.
    pub fn as_affine_in(&self, i: usize) -> Option<(Scalar, Scalar)> {
        let g = Monomial::generator(self.nvars, i);
        let one = Monomial::one(self.nvars);
        if self.terms.keys().any(|m| *m != g && *m != one) {
            return None;
        }
        Some((self.coeff(&g), self.coeff(&one)))
    }
}

pub struct DisplayPoly<'a> {
    poly: &'a NCPoly,
    names: &'a [String],
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Monomial, &Scalar)> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(alloc::format!("{mag}"));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(alloc::format!("{}^{}", self.names[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        f.write_str(&out)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| alloc::format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

/// `λ̂(p)`: evaluates a polynomial at scalar generator values. Generators at
/// or beyond `values.len()` must not occur.
pub fn eval_at_values(p: &NCPoly, values: &[Scalar]) -> Scalar {
    let f = p.field();
    let mut acc = f.zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = &t * &values[i].pow(e);
            }
        }
        acc = &acc + &t;
    }
    acc
}
