use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::poly::{Monomial, NCPoly};
use super::PresentationError;
use crate::scalar::{Field, Scalar};

/// One commutation rule. In the right datum it reads
/// `x_hi · x_lo = sigma · x_hi + theta`; in the left datum
/// `x_lo · x_hi = x_hi · sigma + theta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapRule {
    pub sigma: NCPoly,
    pub theta: NCPoly,
}

/// `x_i^bound = reduction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerRule {
    pub bound: u32,
    pub reduction: NCPoly,
}

/// An iterated Ore extension, possibly cut down by power relations.
///
/// Generators are indexed from 0. The datum of generator `j` acts on the
/// subalgebra generated by `x_0, …, x_{j-1}`; `right[j][i]` is the rule for
/// `x_j · x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrePresentation {
    field: Field,
    names: Vec<String>,
    right: Vec<Vec<SwapRule>>,
    left: Option<Vec<Vec<SwapRule>>>,
    power: Vec<Option<PowerRule>>,
}

impl OrePresentation {
    /// Builds a presentation after checking the index and power invariants.
    /// Polynomials may be given with any number of variables up to `n`.
    pub fn new(
        field: Field,
        names: Vec<String>,
        right: Vec<Vec<SwapRule>>,
        left: Option<Vec<Vec<SwapRule>>>,
        power: Vec<Option<PowerRule>>,
    ) -> Result<Self, PresentationError> {
        let n = names.len();
        if right.len() != n || power.len() != n || left.as_ref().is_some_and(|l| l.len() != n) {
            return Err(PresentationError::Shape);
        }
        // With at most one generator there are no pairs, so the left datum
        // is empty rather than missing.
        let left = if n <= 1 { Some(left.unwrap_or_else(|| vec![Vec::new(); n])) } else { left };
        let fix = |r: &SwapRule| SwapRule { sigma: r.sigma.with_nvars(n), theta: r.theta.with_nvars(n) };
        let mut p = OrePresentation {
            field,
            right: right.iter().map(|row| row.iter().map(fix).collect()).collect(),
            left: left.map(|l| l.iter().map(|row| row.iter().map(fix).collect()).collect()),
            power: power
                .into_iter()
                .map(|o| o.map(|r| PowerRule { bound: r.bound, reduction: r.reduction.with_nvars(n) }))
                .collect(),
            names,
        };
        p.validate()?;
        p.names.shrink_to_fit();
        Ok(p)
    }

    fn validate(&self) -> Result<(), PresentationError> {
        let tables = core::iter::once(&self.right).chain(self.left.as_ref());
        for table in tables {
            for (j, row) in table.iter().enumerate() {
                if row.len() != j {
                    return Err(PresentationError::Shape);
                }
                for (i, rule) in row.iter().enumerate() {
                    for poly in [&rule.sigma, &rule.theta] {
                        if poly.field() != self.field {
                            return Err(PresentationError::FieldMismatch);
                        }
                        if let Some(g) = poly.max_generator().filter(|&g| g >= j) {
                            return Err(PresentationError::IndexViolation {
                                line: 0,
                                hi: self.names[j].clone(),
                                lo: self.names[i].clone(),
                                generator: self.names[g].clone(),
                            });
                        }
                    }
                }
            }
        }
        for (i, rule) in self.power.iter().enumerate() {
            let Some(rule) = rule else { continue };
            let violation = |reason: &str| PresentationError::PowerViolation {
                line: 0,
                generator: self.names[i].clone(),
                reason: reason.into(),
            };
            if rule.bound == 0 {
                return Err(violation("bound must be at least 1"));
            }
            if rule.reduction.field() != self.field {
                return Err(PresentationError::FieldMismatch);
            }
            if rule.reduction.max_generator().is_some_and(|g| g > i) {
                return Err(violation("reduction uses a later generator"));
            }
            if rule.reduction.degree_in(i) >= rule.bound {
                return Err(violation("reduction is not of lower degree"));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn right_rule(&self, hi: usize, lo: usize) -> &SwapRule {
        &self.right[hi][lo]
    }

    pub fn left_rule(&self, hi: usize, lo: usize) -> Option<&SwapRule> {
        self.left.as_ref().map(|l| &l[hi][lo])
    }

    pub fn has_left_datum(&self) -> bool {
        self.left.is_some()
    }

    pub fn power_rule(&self, i: usize) -> Option<&PowerRule> {
        self.power[i].as_ref()
    }

    pub fn with_left_datum(&self, left: Vec<Vec<SwapRule>>) -> Result<Self, PresentationError> {
        Self::new(self.field, self.names.clone(), self.right.clone(), Some(left), self.power.clone())
    }

    pub fn without_left_datum(&self) -> Self {
        OrePresentation { left: None, ..self.clone() }
    }

    /// The subalgebra on the first `level` generators, as a presentation of
    /// its own.
    pub fn truncate(&self, level: usize) -> Self {
        assert!(level <= self.ngens());
        let cut = |r: &SwapRule| SwapRule { sigma: r.sigma.with_nvars(level), theta: r.theta.with_nvars(level) };
        let table = |t: &Vec<Vec<SwapRule>>| t[..level].iter().map(|row| row.iter().map(cut).collect()).collect();
        OrePresentation {
            field: self.field,
            names: self.names[..level].to_vec(),
            right: table(&self.right),
            left: self.left.as_ref().map(table),
            power: self.power[..level]
                .iter()
                .map(|o| o.as_ref().map(|r| PowerRule { bound: r.bound, reduction: r.reduction.with_nvars(level) }))
                .collect(),
        }
    }

    pub fn zero(&self) -> NCPoly {
        NCPoly::zero(self.field, self.ngens())
    }

    pub fn one(&self) -> NCPoly {
        NCPoly::one(self.field, self.ngens())
    }

    pub fn scalar(&self, c: Scalar) -> NCPoly {
        NCPoly::constant(self.field, self.ngens(), c)
    }

    pub fn gen(&self, i: usize) -> NCPoly {
        NCPoly::generator(self.field, self.ngens(), i)
    }

    /// A rewriting session that caches monomial products. Useful when many
    /// products are needed at once.
    pub fn rewriter(&self) -> Rewriter<'_> {
        Rewriter { pres: self, memo: BTreeMap::new(), steps: 0, budget: None }
    }

    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.rewriter().mul(a, b)
    }

    pub fn pow(&self, a: &NCPoly, k: u32) -> NCPoly {
        let mut rw = self.rewriter();
        let mut acc = self.one();
        for _ in 0..k {
            acc = rw.mul(&acc, a);
        }
        acc
    }

    /// Normal form of `coeff · x_{w_1} ··· x_{w_k}`.
    pub fn normal_form(&self, word: &[usize], coeff: &Scalar) -> NCPoly {
        self.rewriter().word(word, coeff)
    }

    /// Like [`normal_form`](Self::normal_form) but gives up after `budget`
    /// monomial products. Returns the result and the number of steps used.
    pub fn normal_form_bounded(&self, word: &[usize], coeff: &Scalar, budget: u64) -> Option<(NCPoly, u64)> {
        let mut rw = self.rewriter();
        rw.budget = Some(budget);
        let out = rw.word(word, coeff);
        (!rw.exhausted()).then_some((out, rw.steps))
    }

    /// Extends `x_i ↦ images[i]` multiplicatively to `a`, which must only
    /// involve generators below `images.len()`.
    pub fn apply_endomorphism(&self, images: &[NCPoly], a: &NCPoly) -> NCPoly {
        let mut rw = self.rewriter();
        let mut out = self.zero();
        for (m, c) in a.terms() {
            let mut t = self.scalar(c.clone());
            for i in m.word() {
                t = rw.mul(&t, &images[i]);
            }
            out = out.add(&t);
        }
        out
    }

    fn images(&self, table: &[Vec<SwapRule>], j: usize) -> Vec<NCPoly> {
        table[j].iter().map(|r| r.sigma.clone()).collect()
    }

    /// `σ'_j(a)` for `a` in the subalgebra below generator `j`.
    pub fn sigma_right(&self, j: usize, a: &NCPoly) -> NCPoly {
        self.apply_endomorphism(&self.images(&self.right, j), a)
    }

    /// `θ'_j(a)`, extended by `θ'(uv) = σ'(u)θ'(v) + θ'(u)v`.
    pub fn theta_right(&self, j: usize, a: &NCPoly) -> NCPoly {
        let mut rw = self.rewriter();
        let rules = &self.right[j];
        let mut out = self.zero();
        for (m, c) in a.terms() {
            let word = m.word();
            // prefix_sigma = σ'(x_{w_1} ··· x_{w_{t-1}})
            let mut prefix_sigma = self.scalar(c.clone());
            for (t, &g) in word.iter().enumerate() {
                let mut term = rw.mul(&prefix_sigma, &rules[g].theta);
                for &h in &word[t + 1..] {
                    term = rw.mul(&term, &self.gen(h));
                }
                out = out.add(&term);
                prefix_sigma = rw.mul(&prefix_sigma, &rules[g].sigma);
            }
        }
        out
    }

    /// `σ_j(a)` from the left datum.
    pub fn sigma_left(&self, j: usize, a: &NCPoly) -> Option<NCPoly> {
        let left = self.left.as_ref()?;
        Some(self.apply_endomorphism(&self.images(left, j), a))
    }

    /// `θ_j(a)` from the left datum, extended by `θ(uv) = θ(u)σ(v) + uθ(v)`.
    pub fn theta_left(&self, j: usize, a: &NCPoly) -> Option<NCPoly> {
        let rules = &self.left.as_ref()?[j];
        let mut rw = self.rewriter();
        let mut out = self.zero();
        for (m, c) in a.terms() {
            let word = m.word();
            // prefix = x_{w_1} ··· x_{w_{t-1}} (scaled), then θ(x_{w_t}), then σ of the rest
            let mut prefix = self.scalar(c.clone());
            for (t, &g) in word.iter().enumerate() {
                let mut term = rw.mul(&prefix, &rules[g].theta);
                for &h in &word[t + 1..] {
                    term = rw.mul(&term, &rules[h].sigma);
                }
                out = out.add(&term);
                prefix = rw.mul(&prefix, &self.gen(g));
            }
        }
        Some(out)
    }
}

/// Multiplication engine with a cache of monomial products.
pub struct Rewriter<'a> {
    pres: &'a OrePresentation,
    memo: BTreeMap<(Monomial, Monomial), NCPoly>,
    steps: u64,
    budget: Option<u64>,
}

impl Rewriter<'_> {
    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn exhausted(&self) -> bool {
        self.budget.is_some_and(|b| self.steps > b)
    }

    pub fn word(&mut self, word: &[usize], coeff: &Scalar) -> NCPoly {
        let mut acc = self.pres.scalar(coeff.clone());
        for &g in word {
            let x = self.pres.gen(g);
            acc = self.mul(&acc, &x);
        }
        acc
    }

    pub fn mul(&mut self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        let mut out = self.pres.zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let prod = self.mul_mono(ma, mb);
                let c = ca * cb;
                for (m, d) in prod.terms() {
                    out.add_term(m.clone(), &c * d);
                }
            }
        }
        out
    }

    fn mono(&self, m: Monomial) -> NCPoly {
        NCPoly::monomial(self.pres.field, m, self.pres.field.one())
    }

    fn mul_mono(&mut self, a: &Monomial, b: &Monomial) -> NCPoly {
        if a.is_one() {
            return self.mono(b.clone());
        }
        if b.is_one() {
            return self.mono(a.clone());
        }
        if let Some(hit) = self.memo.get(&(a.clone(), b.clone())) {
            return hit.clone();
        }
        self.steps += 1;
        if self.exhausted() {
            return self.pres.zero();
        }
        let j = a.last().expect("nonconstant");
        let i = b.first().expect("nonconstant");
        let result = if j < i {
            self.mono(concat(a, b))
        } else if j == i {
            let e = a.0[j] + b.0[j];
            match self.pres.power[j].as_ref().filter(|r| e >= r.bound) {
                None => self.mono(concat(a, b)),
                Some(rule) => {
                    let head = self.mono(a.with(j, e - rule.bound));
                    let tail = self.mono(b.with(j, 0));
                    let reduced = rule.reduction.clone();
                    let t = self.mul(&head, &reduced);
                    self.mul(&t, &tail)
                }
            }
        } else {
            let rule = self.pres.right[j][i].clone();
            let a_rest = self.mono(a.with(j, a.0[j] - 1));
            let b_rest_m = b.with(i, b.0[i] - 1);
            let xj_b = self.mul_mono(&Monomial::generator(a.0.len(), j), &b_rest_m);
            let left = self.mul(&a_rest, &rule.sigma);
            let first = self.mul(&left, &xj_b);
            let b_rest = self.mono(b_rest_m);
            let left = self.mul(&a_rest, &rule.theta);
            let second = self.mul(&left, &b_rest);
            first.add(&second)
        };
        if !self.exhausted() {
            self.memo.insert((a.clone(), b.clone()), result.clone());
        }
        result
    }
}

fn concat(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
}
