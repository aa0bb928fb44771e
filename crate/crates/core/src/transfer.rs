//! Weak-to-strong transfer: the Jacquet–Shalika condition, the forcing argument that
//! recovers a missing local factor from matching functional equations, and the per-place
//! strong-compatibility report.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{poly_eq, ArchFactor, CycNum, LocalFactor};
use crate::ldata::{CyclicExtension, FormalDatum, LData, LDataError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("{side} factor at {label} fails the Jacquet-Shalika condition")]
    JsViolation { side: Side, label: String },
    #[error("inconsistent functional equation: {0}")]
    InconsistentFunctionalEquation(String),
    #[error("contradictory data: {0}")]
    ContradictoryData(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error(transparent)]
    LData(#[from] LDataError),
}

impl TransferError {
    pub fn code(&self) -> &'static str {
        match self {
            TransferError::JsViolation { .. } => "E_JS_VIOLATION",
            TransferError::InconsistentFunctionalEquation(_) => "E_INCONSISTENT_FE",
            TransferError::ContradictoryData(_) => "E_CONTRADICTORY",
            TransferError::Precondition(_) => "E_PRECONDITION",
            TransferError::LData(_) => "E_LDATA",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Holomorphy of `L_v(s)` on the closed half plane `Re(s) >= 1/2`: every weight is `< 1`.
pub fn js_check(f: &LocalFactor) -> bool {
    f.roots().iter().all(|r| r.weight < num_rational::Rational64::one())
}

/// Holomorphy of both `L_v(s)` and `L_v(1 - s, dual)` off the critical line's opposite sides.
fn js_both(f: &LocalFactor) -> bool {
    js_check(f) && js_check(&f.contragredient())
}

/// Whether `L(s, f1) / L(s, f2)` is entire and nowhere zero.  After cancelling common
/// inverse roots every leftover root is a pole or zero on `Re(s) = w / 2`.
pub fn ratio_entire_nonvanishing(f1: &LocalFactor, f2: &LocalFactor) -> bool {
    let (a, b) = f1.cancel(f2);
    f1.q() == f2.q() && a.is_empty() && b.is_empty()
}

/// The forcing predicate: under the Jacquet–Shalika hypothesis on both factors and their
/// duals, and a monomial epsilon ratio, the local ratio is forced to be constant exactly
/// when it is entire and non-vanishing.  Returns `None` when the hypotheses fail.
pub fn forcing_predicate(f1: &LocalFactor, f2: &LocalFactor) -> Option<bool> {
    (js_both(f1) && js_both(f2)).then(|| ratio_entire_nonvanishing(f1, f2))
}

/// Exact restatement of "a ratio of Gamma products is entire only if constant".
pub fn arch_match(a1: &ArchFactor, a2: &ArchFactor, fe_consistent: bool) -> bool {
    fe_consistent && a1 == a2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsPlace {
    pub label: String,
    /// `js_check` at every place above.
    pub base_changed: bool,
    /// `js_check` of every twist `L_v(pi (x) chi^j)`.
    pub twisted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsPropagation {
    pub places: Vec<JsPlace>,
}

impl JsPropagation {
    /// The implication "base change satisfies JS => every twist does", at every place.
    pub fn holds(&self) -> bool {
        self.places.iter().all(|p| !p.base_changed || p.twisted)
    }
}

pub fn js_propagate(pi: &LData, ext: &CyclicExtension) -> Result<JsPropagation, TransferError> {
    let bc = pi.base_change(ext)?;
    let twists = (0..i64::from(ext.degree()))
        .map(|j| pi.twist(&ext.chi().pow(j)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut places = Vec::new();
    for v in pi.places() {
        let mut base_changed = true;
        for w in bc.places() {
            if w.lies_over(&v.label) {
                base_changed &= js_check(&bc.local_factor(&w.label)?);
            }
        }
        let mut twisted = true;
        for t in &twists {
            twisted &= js_check(&t.local_factor(&v.label)?);
        }
        places.push(JsPlace { label: v.label.clone(), base_changed, twisted });
    }
    Ok(JsPropagation { places })
}

/// Two formal data over the same field with a finite mask of unknown local factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferPair {
    left: FormalDatum,
    right: FormalDatum,
    unknown_left: BTreeSet<String>,
    unknown_right: BTreeSet<String>,
}

impl TransferPair {
    /// Checks weak compatibility: known and semistable on both sides implies equal factors.
    pub fn new(
        left: &LData,
        right: &LData,
        unknown_left: BTreeSet<String>,
        unknown_right: BTreeSet<String>,
    ) -> Result<Self, TransferError> {
        let left = left.to_formal()?;
        let right = right.to_formal()?;
        if left.field() != right.field() {
            return Err(LDataError::FieldMismatch(left.field().to_string(), right.field().to_string()).into());
        }
        let labels = |d: &FormalDatum| d.places().iter().map(|p| (p.place.label.clone(), p.place.q())).collect::<BTreeSet<_>>();
        if labels(&left) != labels(&right) {
            return Err(TransferError::ContradictoryData("the two sides list different places".into()));
        }
        for l in unknown_left.iter().chain(&unknown_right) {
            left.place(l)?;
        }
        let pair = TransferPair { left, right, unknown_left, unknown_right };
        for p in pair.left.places() {
            let label = &p.place.label;
            if pair.known(Side::Left, label) && pair.known(Side::Right, label) {
                let r = pair.right.place(label)?;
                if p.semistable && r.semistable && p.factor != r.factor {
                    return Err(TransferError::ContradictoryData(format!("weak compatibility fails at {label}")));
                }
            }
        }
        Ok(pair)
    }

    pub fn side(&self, side: Side) -> &FormalDatum {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn unknown(&self, side: Side) -> &BTreeSet<String> {
        match side {
            Side::Left => &self.unknown_left,
            Side::Right => &self.unknown_right,
        }
    }

    pub fn known(&self, side: Side, label: &str) -> bool {
        !self.unknown(side).contains(label)
    }

    pub fn labels(&self) -> Vec<String> {
        self.left.places().iter().map(|p| p.place.label.clone()).collect()
    }

    /// Fills in `factor` on `side` at `label` and marks it known.
    pub fn with_factor(&self, side: Side, label: &str, factor: LocalFactor) -> Result<Self, TransferError> {
        let d = self.side(side);
        let places = d
            .places()
            .iter()
            .map(|p| {
                let mut p = p.clone();
                if p.place.label == label {
                    p.factor = factor.clone();
                }
                p
            })
            .collect();
        let d = d.with_places(places)?;
        let mut out = self.clone();
        match side {
            Side::Left => {
                out.left = d;
                out.unknown_left.remove(label);
            }
            Side::Right => {
                out.right = d;
                out.unknown_right.remove(label);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub label: String,
    /// The side whose factor was unknown, if any.
    pub filled: Option<Side>,
    pub factor: LocalFactor,
    pub transcript: Vec<String>,
}

/// `log_q r` when `r` is an integral power of `q`.
fn log_power(r: &BigRational, q: u64) -> Option<i64> {
    if r <= &BigRational::zero() {
        return None;
    }
    let q = BigInt::from(q);
    let walk = |mut n: BigInt| -> Option<i64> {
        let mut k = 0;
        while n > BigInt::one() {
            if (&n % &q) != BigInt::zero() {
                return None;
            }
            n /= &q;
            k += 1;
        }
        Some(k)
    };
    if r.denom().is_one() {
        walk(r.numer().clone())
    } else if r.numer().is_one() {
        walk(r.denom().clone()).map(|k| -k)
    } else {
        None
    }
}

/// Recovers the local factor at the single unknown place `label`.
pub fn complete_missing_factor(pair: &TransferPair, label: &str) -> Result<Completion, TransferError> {
    let mut transcript = Vec::new();
    let q = pair.left.place(label)?.place.q();
    let stray: Vec<String> = [Side::Left, Side::Right]
        .iter()
        .flat_map(|&s| pair.unknown(s).iter().filter(|l| *l != label).cloned())
        .collect();
    if !stray.is_empty() {
        return Err(TransferError::Precondition(format!("{label} is not the only unknown place (also {})", stray.join(" "))));
    }
    let filled = match (pair.known(Side::Left, label), pair.known(Side::Right, label)) {
        (true, true) => None,
        (false, true) => Some(Side::Left),
        (true, false) => Some(Side::Right),
        (false, false) => return Err(TransferError::Precondition(format!("{label} is unknown on both sides"))),
    };
    for side in [Side::Left, Side::Right] {
        for p in pair.side(side).places() {
            if pair.known(side, &p.place.label) && !js_both(&p.factor) {
                return Err(TransferError::JsViolation { side, label: p.place.label.clone() });
            }
        }
    }
    transcript.push("js: every known factor and its dual is holomorphic on Re(s) >= 1/2".to_string());
    for p in pair.left.places() {
        let l = &p.place.label;
        if l != label && p.factor != pair.right.local_factor(l)? {
            return Err(TransferError::ContradictoryData(format!("factors differ at the known place {l}")));
        }
    }
    transcript.push(format!("known places other than {label} agree"));
    match (pair.left.arch(), pair.right.arch()) {
        (Some(a1), Some(a2)) => {
            if !arch_match(a1, a2, true) {
                return Err(TransferError::ContradictoryData(format!("archimedean factors differ: {a1} vs {a2}")));
            }
            transcript.push(format!("arch: shifts agree ({a1})"));
        }
        (a1, _) => {
            let side = if a1.is_none() { Side::Left } else { Side::Right };
            return Err(TransferError::InconsistentFunctionalEquation(format!("{side} archimedean factor missing")));
        }
    }
    let (e1, e2) = match (pair.left.epsilon(), pair.right.epsilon()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(TransferError::InconsistentFunctionalEquation("epsilon datum missing".into())),
    };
    let ratio = e1.ratio(e2);
    let Some(k) = log_power(&ratio.conductor, q) else {
        return Err(TransferError::InconsistentFunctionalEquation(format!(
            "epsilon ratio {ratio} is not a monomial in {q}^-s"
        )));
    };
    if k != 0 || ratio.root_number != CycNum::one() {
        return Err(TransferError::InconsistentFunctionalEquation(format!(
            "the local ratio at {label} is forced to be 1 but the epsilon ratio is {ratio}"
        )));
    }
    transcript.push(format!("epsilon: ratio {ratio} is trivial"));
    let factor = match filled {
        Some(Side::Left) => pair.right.local_factor(label)?,
        Some(Side::Right) | None => pair.left.local_factor(label)?,
    };
    if filled.is_none() {
        let other = pair.right.local_factor(label)?;
        if forcing_predicate(&factor, &other) != Some(true) {
            return Err(TransferError::ContradictoryData(format!("both sides known at {label} and {factor} != {other}")));
        }
    }
    // The forced answer must close the ratio identity: with it filled in, both local
    // ratios L(s)/L(s) and L(1-s, dual)/L(1-s, dual) are identically 1.
    let (l1, l2) = match filled {
        Some(Side::Left) => (factor.clone(), pair.right.local_factor(label)?),
        Some(Side::Right) => (pair.left.local_factor(label)?, factor.clone()),
        None => (pair.left.local_factor(label)?, pair.right.local_factor(label)?),
    };
    if !poly_eq(&l1.expand(), &l2.expand()) || !poly_eq(&l1.contragredient().expand(), &l2.contragredient().expand()) {
        return Err(TransferError::ContradictoryData(format!("no consistent factor at {label}")));
    }
    transcript.push(format!("forced: L_{label} = {factor}"));
    Ok(Completion { label: label.to_string(), filled, factor, transcript })
}

impl TransferPair {
    /// Runs `complete_missing_factor` and writes the answer into the unknown side.
    pub fn complete(&self, label: &str) -> Result<(TransferPair, Completion), TransferError> {
        let c = complete_missing_factor(self, label)?;
        let pair = match c.filled {
            Some(side) => self.with_factor(side, label, c.factor.clone())?,
            None => self.clone(),
        };
        Ok((pair, c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongReport {
    pub places: Vec<(String, Verdict)>,
    pub epsilon_equal: Option<bool>,
    pub arch_equal: Option<bool>,
    pub strong: bool,
}

impl StrongReport {
    /// Strong compatibility must carry equal epsilon data.
    pub fn consistent(&self) -> bool {
        !self.strong || self.epsilon_equal != Some(false)
    }

    pub fn mismatches(&self) -> Vec<&str> {
        self.places.iter().filter(|(_, v)| *v == Verdict::Mismatch).map(|(l, _)| l.as_str()).collect()
    }
}

impl fmt::Display for StrongReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, v) in &self.places {
            writeln!(f, "place {l}: {v}")?;
        }
        let tri = |b: Option<bool>| match b {
            Some(true) => "equal",
            Some(false) => "DIFFERENT",
            None => "unavailable",
        };
        writeln!(f, "epsilon: {}", tri(self.epsilon_equal))?;
        writeln!(f, "arch: {}", tri(self.arch_equal))?;
        write!(f, "verdict: {}", if self.strong { "strong" } else { "weak-only" })
    }
}

pub fn verify_strong_transfer(pair: &TransferPair) -> Result<StrongReport, TransferError> {
    let mut places = Vec::new();
    for l in pair.labels() {
        let v = if !pair.known(Side::Left, &l) || !pair.known(Side::Right, &l) {
            Verdict::Unknown
        } else if ratio_entire_nonvanishing(&pair.left.local_factor(&l)?, &pair.right.local_factor(&l)?) {
            Verdict::Match
        } else {
            Verdict::Mismatch
        };
        places.push((l, v));
    }
    let epsilon_equal = match (pair.left.epsilon(), pair.right.epsilon()) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let arch_equal = match (pair.left.arch(), pair.right.arch()) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let strong = places.iter().all(|(_, v)| *v == Verdict::Match);
    Ok(StrongReport { places, epsilon_equal, arch_equal, strong })
}

#[cfg(test)]
mod tests;
