//! Target classes and their exact orders, plus the generation check that
//! compares a stabilizer-chain order with the class order.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::groups::StabilizerChain;
use crate::partition::ComponentPartition;
use crate::perm::{GatePerm, Parity};
use crate::weight::{restriction_parity, weight, weight_classes};
use crate::word::degree;
use crate::{Error, Result, Word};

/// A total function from words to opaque class labels, for generalized
/// conserved quantities.
pub type Classifier = Arc<dyn Fn(&Word) -> u64 + Send + Sync>;

/// The gate class a generator set is tested against.
#[derive(Clone)]
pub enum TargetClass {
    /// All bijections of `A^n`.
    Full,
    /// Even bijections.
    Alt,
    /// Weight-preserving bijections.
    Conservative,
    /// Conservative and even on every weight class.
    AltConservative,
    /// Weight preserved coordinatewise modulo `k`.
    ModK(u32),
    /// Classifier-label preserved on every word.
    Conserved(Classifier),
}

impl fmt::Debug for TargetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetClass::Full => write!(f, "Full"),
            TargetClass::Alt => write!(f, "Alt"),
            TargetClass::Conservative => write!(f, "Conservative"),
            TargetClass::AltConservative => write!(f, "AltConservative"),
            TargetClass::ModK(k) => write!(f, "ModK({k})"),
            TargetClass::Conserved(_) => write!(f, "Conserved(<classifier>)"),
        }
    }
}

impl TargetClass {
    /// The class partition the target preserves, if it is defined by one.
    fn partition(&self, q: u32, n: usize) -> Result<Option<ComponentPartition>> {
        Ok(match self {
            TargetClass::Full | TargetClass::Alt => None,
            TargetClass::Conservative | TargetClass::AltConservative => {
                Some(weight_classes(q, n)?)
            }
            TargetClass::ModK(k) => {
                if *k < 1 {
                    return Err(Error::ZeroModulus);
                }
                Some(classify(q, n, |w| {
                    let mut key = 0u64;
                    for &c in weight(w).reduce_mod(*k).counts() {
                        key = key * (n as u64 + 1) + c as u64;
                    }
                    key
                })?)
            }
            TargetClass::Conserved(classifier) => Some(classify(q, n, |w| classifier(w))?),
        })
    }

    /// First word code witnessing that `f` is outside the class, if any.
    pub fn membership_witness(&self, f: &GatePerm) -> Result<Option<usize>> {
        let part = self.partition(f.q(), f.arity())?;
        if let Some(part) = &part {
            for code in 0..f.degree() {
                if part.class_of(code) != part.class_of(f.apply_code(code)) {
                    return Ok(Some(code));
                }
            }
        }
        match self {
            TargetClass::Alt if f.parity() == Parity::Odd => {
                Ok(Some(first_moved(f).unwrap_or(0)))
            }
            TargetClass::AltConservative => {
                let part = part.expect("partition exists for this class");
                for c in 0..part.class_count() {
                    if !restriction_parity(f, &part, c).is_even() {
                        return Ok(Some(part.representatives()[c] as usize));
                    }
                }
                Ok(None)
            }
            _ => Ok(None),
        }
    }

    pub fn contains_gate(&self, f: &GatePerm) -> Result<bool> {
        Ok(self.membership_witness(f)?.is_none())
    }
}

fn first_moved(f: &GatePerm) -> Option<usize> {
    (0..f.degree()).find(|&c| f.apply_code(c) != c)
}

/// Partition `A^n` by an arbitrary label function, classes indexed by
/// minimum word code.
fn classify(q: u32, n: usize, label: impl Fn(&Word) -> u64) -> Result<ComponentPartition> {
    let deg = degree(q, n)?;
    let mut ids: std::collections::HashMap<u64, u32> = std::collections::HashMap::new();
    let mut class_of = Vec::with_capacity(deg);
    for code in 0..deg {
        let l = label(&Word::decode(code, n, q)?);
        let next = ids.len() as u32;
        class_of.push(*ids.entry(l).or_insert(next));
    }
    Ok(ComponentPartition::from_class_indices(q, n, class_of))
}

fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Exact order of the target class inside `B_n(A)`.
pub fn target_order(t: &TargetClass, q: u32, n: usize) -> Result<BigUint> {
    let deg = degree(q, n)?;
    Ok(match t {
        TargetClass::Full => factorial(deg),
        TargetClass::Alt => factorial(deg) / 2u32,
        TargetClass::AltConservative => {
            let part = weight_classes(q, n)?;
            let mut acc = BigUint::from(1u32);
            for size in part.class_sizes() {
                // Alt of a class with at most two elements is trivial
                if size >= 2 {
                    acc *= factorial(size) / 2u32;
                }
            }
            acc
        }
        _ => {
            let part = t
                .partition(q, n)?
                .expect("Conservative/ModK/Conserved are partition classes");
            let mut acc = BigUint::from(1u32);
            for size in part.class_sizes() {
                acc *= factorial(size);
            }
            acc
        }
    })
}

/// True iff the generators (all verified to lie in the class) generate
/// exactly the class at their arity: chain order equals [`target_order`].
pub fn generates(gens: &[GatePerm], t: &TargetClass, q: u32, n: usize) -> Result<bool> {
    for (index, g) in gens.iter().enumerate() {
        if g.q() != q {
            return Err(Error::AlphabetMismatch(g.q(), q));
        }
        if g.arity() != n {
            return Err(Error::ArityMismatch(g.arity(), n));
        }
        if let Some(witness) = t.membership_witness(g)? {
            return Err(Error::GeneratorOutsideClass { index, witness });
        }
    }
    let chain = StabilizerChain::build(gens)?;
    Ok(chain.order() == target_order(t, q, n)?)
}
