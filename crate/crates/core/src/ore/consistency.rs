use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::poly::NCPoly;
use super::presentation::{OrePresentation, Rewriter, SwapRule};
use super::PresentationError;

/// A word whose two bracketings reduce to different normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapFailure {
    pub word: Vec<usize>,
    /// Text such as `(z·x)·y` naming the bracketing of `left`.
    pub bracketing: String,
    pub left: NCPoly,
    pub right: NCPoly,
}

/// `x_lo · x_hi` as computed by the right datum versus the left datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumMismatch {
    pub lo: usize,
    pub hi: usize,
    pub via_right: NCPoly,
    pub via_left: NCPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConsistencyReport {
    pub overlaps_checked: usize,
    pub failures: Vec<OverlapFailure>,
    pub datum_failures: Vec<DatumMismatch>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.datum_failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&OverlapFailure> {
        self.failures.first()
    }
}

fn word_poly(p: &OrePresentation, rw: &mut Rewriter<'_>, word: &[usize]) -> NCPoly {
    rw.word(word, &p.field().one())
}

/// Checks every ambiguity of the rewriting system: triples `x_k x_j x_i`
/// with `k > j > i`, and each overlap involving a power relation. Also
/// compares the two data when a left datum is present.
pub fn overlap_consistency_check(p: &OrePresentation) -> ConsistencyReport {
    let n = p.ngens();
    let names = p.names();
    let mut rw = p.rewriter();
    let mut report = ConsistencyReport::default();
    // Compares (u·v)·w with u·(v·w), where v is the shared part of two redexes.
    let compare = |rw: &mut Rewriter<'_>, report: &mut ConsistencyReport, u: &[usize], v: &[usize], w: &[usize]| {
        report.overlaps_checked += 1;
        let uv: Vec<usize> = u.iter().chain(v).copied().collect();
        let vw: Vec<usize> = v.iter().chain(w).copied().collect();
        let (puv, pw) = (word_poly(p, rw, &uv), word_poly(p, rw, w));
        let left = rw.mul(&puv, &pw);
        let (pu, pvw) = (word_poly(p, rw, u), word_poly(p, rw, &vw));
        let right = rw.mul(&pu, &pvw);
        if left != right {
            let show = |w: &[usize]| w.iter().map(|&g| names[g].as_str()).collect::<Vec<_>>().join("·");
            report.failures.push(OverlapFailure {
                bracketing: format!("({})·{}", show(&uv), show(w)),
                word: uv.iter().chain(w).copied().collect(),
                left,
                right,
            });
        }
    };
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                compare(&mut rw, &mut report, &[k], &[j], &[i]);
            }
        }
    }
    for i in 0..n {
        let Some(rule) = p.power_rule(i) else { continue };
        let m = rule.bound as usize;
        compare(&mut rw, &mut report, &[i], &vec![i; m - 1], &[i]);
        for j in i + 1..n {
            compare(&mut rw, &mut report, &[j], &[i], &vec![i; m - 1]);
        }
        for lo in 0..i {
            compare(&mut rw, &mut report, &vec![i; m - 1], &[i], &[lo]);
        }
    }
    report.datum_failures = datum_consistency(p);
    report
}

/// For every `lo < hi`, compares `x_lo · x_hi` (already in normal order) to
/// `x_hi · σ(x_lo) + θ(x_lo)` from the left datum. Empty without a left
/// datum.
pub fn datum_consistency(p: &OrePresentation) -> Vec<DatumMismatch> {
    let mut out = Vec::new();
    if !p.has_left_datum() {
        return out;
    }
    let mut rw = p.rewriter();
    for hi in 0..p.ngens() {
        for lo in 0..hi {
            let rule = p.left_rule(hi, lo).expect("left datum present");
            let via_right = rw.word(&[lo, hi], &p.field().one());
            let via_left = rw.mul(&p.gen(hi), &rule.sigma).add(&rule.theta);
            if via_left != via_right {
                out.push(DatumMismatch { lo, hi, via_right, via_left });
            }
        }
    }
    out
}

/// Fills in the left datum from the right one. `inverse_images[j][i]` is the
/// claimed preimage of `x_i` under `σ'_j`; both compositions are checked on
/// generators before use.
pub fn left_datum_from_right(
    p: &OrePresentation,
    inverse_images: &[Vec<NCPoly>],
) -> Result<OrePresentation, PresentationError> {
    let n = p.ngens();
    if inverse_images.len() != n || inverse_images.iter().enumerate().any(|(j, v)| v.len() != j) {
        return Err(PresentationError::Shape);
    }
    let mut left = Vec::with_capacity(n);
    for (j, tau) in inverse_images.iter().enumerate() {
        let tau: Vec<NCPoly> = tau.iter().map(|t| t.with_nvars(n)).collect();
        let sigma: Vec<NCPoly> = (0..j).map(|i| p.right_rule(j, i).sigma.clone()).collect();
        for i in 0..j {
            let x = p.gen(i);
            let there_and_back = p.apply_endomorphism(&sigma, &tau[i]);
            let back_and_there = p.apply_endomorphism(&tau, &sigma[i]);
            if there_and_back != x || back_and_there != x {
                return Err(PresentationError::NotInverse { level: j, generator: p.names()[j].clone() });
            }
        }
        let row = (0..j)
            .map(|i| SwapRule { sigma: tau[i].clone(), theta: p.theta_right(j, &tau[i]).scale(&-p.field().one()) })
            .collect();
        left.push(row);
    }
    let out = p.with_left_datum(left)?;
    if let Some(bad) = datum_consistency(&out).first() {
        return Err(PresentationError::LeftDatumInconsistent {
            lo: p.names()[bad.lo].clone(),
            hi: p.names()[bad.hi].clone(),
        });
    }
    Ok(out)
}

/// Inverse images for data whose twists are all of the form
/// `x_i ↦ a·x_i + b` with `a` invertible and `b` a scalar.
pub fn affine_sigma_inverse(p: &OrePresentation) -> Option<Vec<Vec<NCPoly>>> {
    let n = p.ngens();
    (0..n)
        .map(|j| {
            (0..j)
                .map(|i| {
                    let (a, b) = p.right_rule(j, i).sigma.as_affine_in(i)?;
                    let a_inv = a.inv().ok()?;
                    let shifted = p.gen(i).sub(&p.scalar(b));
                    Some(shifted.scale(&a_inv))
                })
                .collect()
        })
        .collect()
}
