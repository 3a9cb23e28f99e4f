//! Dense univariate polynomials and root extraction in the base field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{Field, FieldError, Scalar};

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    /// `t - root`
    pub fn linear(root: &Scalar) -> Self {
        let f = root.field();
        Self::new(f, vec![-root, f.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field, out)
    }

    /// Quotient by `t - root`, assuming `root` is a root.
    fn deflate(&self, root: &Scalar) -> UniPoly {
        let n = self.coeffs.len();
        let mut q = vec![self.field.zero(); n.saturating_sub(1)];
        let mut carry = self.field.zero();
        for i in (1..n).rev() {
            carry = &(&carry * root) + &self.coeffs[i];
            q[i - 1] = carry.clone();
        }
        UniPoly::new(self.field, q)
    }

    /// Strips every root in `roots` (with multiplicity) and returns what is left.
    pub fn remainder_after(&self, roots: &[(Scalar, usize)]) -> UniPoly {
        let mut p = self.clone();
        for (r, m) in roots {
            for _ in 0..*m {
                p = p.deflate(r);
            }
        }
        p
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                UniPoly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Roots of `p` lying in its base field, with multiplicities, in canonical
/// scalar order.
///
/// Over Q this is the rational root test on the primitive integer form
/// (candidates `±a/b` with `a | a_0`, `b | a_n`) followed by deflation; over
/// GF(p) every residue is tried.
pub fn univariate_roots(p: &UniPoly) -> Result<Vec<(Scalar, usize)>, FieldError> {
    if p.is_zero() {
        return Err(FieldError::ZeroPolynomial);
    }
    let candidates: Vec<Scalar> = match p.field {
        Field::Prime(_) => p.field.elements().into_iter().flatten().collect(),
        Field::Rationals => rational_candidates(p),
    };
    let mut rest = p.clone();
    let mut roots = Vec::new();
    for c in candidates {
        let mut mult = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.eval(&c).is_zero() {
            rest = rest.deflate(&c);
            mult += 1;
        }
        if mult > 0 {
            roots.push((c, mult));
        }
    }
    roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(roots)
}

fn rational_candidates(p: &UniPoly) -> Vec<Scalar> {
    let ints = primitive_integer_form(p);
    let mut out = Vec::new();
    let lowest = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if lowest > 0 {
        out.push(Field::Rationals.zero());
    }
    let a0 = ints[lowest].abs().to_biguint().expect("abs is nonnegative");
    let an = ints.last().expect("nonzero polynomial").abs().to_biguint().expect("abs");
    if ints.len() - lowest <= 1 {
        return out;
    }
    let nums = divisors(&a0);
    let dens = divisors(&an);
    let mut seen: Vec<BigRational> = Vec::new();
    for d in &dens {
        for n in &nums {
            let r = BigRational::new(BigInt::from(n.clone()), BigInt::from(d.clone()));
            for cand in [r.clone(), -r] {
                if !seen.contains(&cand) {
                    seen.push(cand);
                }
            }
        }
    }
    out.extend(seen.into_iter().map(Scalar::Rational));
    out
}

fn primitive_integer_form(p: &UniPoly) -> Vec<BigInt> {
    let rats: Vec<&BigRational> = p.coeffs.iter().map(|c| c.as_rational().expect("rational coefficient")).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r.numer() * &lcm) / r.denom()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return vec![BigUint::one()];
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    if let Some(small) = rest.to_u128() {
        let mut r = small;
        let mut d: u128 = 2;
        while d * d <= r {
            let mut e = 0;
            while r % d == 0 {
                r /= d;
                e += 1;
            }
            if e > 0 {
                factors.push((BigUint::from(d), e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if r > 1 {
            factors.push((BigUint::from(r), 1));
        }
    } else {
        let mut d = BigUint::from(2u32);
        while &d * &d <= rest {
            let mut e = 0;
            while (&rest % &d).is_zero() {
                rest /= &d;
                e += 1;
            }
            if e > 0 {
                factors.push((d.clone(), e));
            }
            d += 1u32;
        }
        if rest > BigUint::one() {
            factors.push((rest, 1));
        }
    }
    let mut divs = vec![BigUint::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &prime;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Multiplicative order classification of a nonzero scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootOfUnity {
    NotRootOfUnity,
    Order(u64),
}

pub fn root_of_unity_order(q: &Scalar) -> Result<RootOfUnity, FieldError> {
    if q.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    match q {
        Scalar::Rational(r) => Ok(if r.is_one() {
            RootOfUnity::Order(1)
        } else if (-r).is_one() {
            RootOfUnity::Order(2)
        } else {
            RootOfUnity::NotRootOfUnity
        }),
        Scalar::Modular { .. } => {
            let one = q.field().one();
            let mut acc = q.clone();
            let mut k = 1;
            while acc != one {
                acc = &acc * q;
                k += 1;
            }
            Ok(RootOfUnity::Order(k))
        }
    }
}
