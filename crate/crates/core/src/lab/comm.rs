//! Commutative polynomials: the image of normal-form polynomials under a
//! character with symbolic values.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::ore::NCPoly;
use crate::scalar::{Field, Scalar};
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CommPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl CommPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        CommPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(field, nvars);
        p.add_term(e, field.one());
        p
    }

    /// Reads exponents of `p` commutatively, keeping the first `nvars`
    /// generators (later ones must not occur).
    pub fn from_nc(p: &NCPoly, nvars: usize) -> Self {
        let mut out = Self::zero(p.field(), nvars);
        for (m, c) in p.terms() {
            let e = m.exponents();
            debug_assert!(e[nvars.min(e.len())..].iter().all(|&x| x == 0));
            let mut v = e[..nvars.min(e.len())].to_vec();
            v.resize(nvars, 0);
            out.add_term(v, c.clone());
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&e) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut acc = Self::constant(self.field, self.nvars, self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Nonzero constant: the equation `self = 0` has no solution.
    pub fn is_nonzero_constant(&self) -> bool {
        !self.is_zero() && self.variables().is_empty()
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    /// Replaces every variable `i` by `images[i]`.
    pub fn compose(&self, images: &[CommPoly]) -> CommPoly {
        let nv = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Self::zero(self.field, nv);
        for (e, c) in &self.terms {
            let mut t = Self::constant(self.field, nv, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&images[i].pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn substitute(&self, i: usize, value: &Scalar) -> CommPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = core::mem::replace(&mut e2[i], 0);
            out.add_term(e2, c * &value.pow(k));
        }
        out
    }

    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &values[i].pow(k);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// The polynomial as a univariate one when at most one variable occurs.
    pub fn as_univariate(&self) -> Option<(usize, UniPoly)> {
        let vars = self.variables();
        if vars.len() != 1 {
            return None;
        }
        let v = vars[0];
        let deg = self.terms.keys().map(|e| e[v]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[v] as usize] = c.clone();
        }
        Some((v, UniPoly::new(self.field, coeffs)))
    }

    /// A variable dividing every term, with its smallest exponent.
    pub fn common_variable(&self) -> Option<(usize, u32)> {
        (0..self.nvars).find_map(|i| {
            let m = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
            (m > 0).then_some((i, m))
        })
    }

    pub fn divide_by_power(&self, i: usize, k: u32) -> CommPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] -= k;
            out.add_term(e2, c.clone());
        }
        out
    }
}
