//! Closed forms for the Ehrhart polynomials of the reflexive families.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{
    big_binom, binom_linear, factorial, falling_product, int, rat, Poly, Rational,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// Dual of the cross polytope, i.e. the cube `[-1, 1]^d`.
    CrossDual,
    TypeADual,
    TypeCDual,
    /// Dual of the symmetric edge polytope of a tree on `d + 1` vertices.
    TreeDual,
    /// Dual of the symmetric edge polytope of `K_{d+1}`.
    CompleteDual,
    StasheffDual,
    /// Dual of the symmetric edge polytope of the cycle `C_{d+1}`.
    CycleDual,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 7] = [
        FamilyKind::CrossDual,
        FamilyKind::TypeADual,
        FamilyKind::TypeCDual,
        FamilyKind::TreeDual,
        FamilyKind::CompleteDual,
        FamilyKind::StasheffDual,
        FamilyKind::CycleDual,
    ];

    pub fn token(self) -> &'static str {
        match self {
            FamilyKind::CrossDual => "cross",
            FamilyKind::TypeADual => "typeA",
            FamilyKind::TypeCDual => "typeC",
            FamilyKind::TreeDual => "tree",
            FamilyKind::CompleteDual => "complete",
            FamilyKind::StasheffDual => "stasheff",
            FamilyKind::CycleDual => "cycle",
        }
    }

    fn from_token(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.token() == s)
    }

    /// Smallest dimension for which the family is defined.
    pub fn min_dim(self) -> usize {
        match self {
            FamilyKind::CycleDual => 1,
            _ => 0,
        }
    }
}

/// A family member, parsed from strings such as `"stasheff:5"`.
///
/// For graph families `d` is the number of vertices minus one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub kind: FamilyKind,
    pub d: usize,
}

impl FamilyId {
    pub fn new(kind: FamilyKind, d: usize) -> Result<Self> {
        if d < kind.min_dim() {
            return Err(Error::InvalidArgument(format!(
                "{} needs d >= {}",
                kind.token(),
                kind.min_dim()
            )));
        }
        Ok(FamilyId { kind, d })
    }

    pub fn ehrhart(&self) -> Poly {
        family_ehrhart(*self)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.token(), self.d)
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, d) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected <family>:<d>, got {s:?}")))?;
        let kind = FamilyKind::from_token(name.trim())
            .ok_or_else(|| Error::Parse(format!("unknown family {name:?}")))?;
        let d: usize = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension in {s:?}")))?;
        FamilyId::new(kind, d)
    }
}

pub fn family_ehrhart(f: FamilyId) -> Poly {
    let d = f.d;
    match f.kind {
        FamilyKind::CrossDual | FamilyKind::TreeDual => cross_dual(d),
        FamilyKind::TypeADual | FamilyKind::CompleteDual => type_a_dual(d),
        FamilyKind::TypeCDual => type_c_dual(d),
        FamilyKind::StasheffDual => stasheff_dual(d),
        FamilyKind::CycleDual => cycle_dual(d),
    }
}

/// `(2n + 1)^d`
pub fn cross_dual(d: usize) -> Poly {
    Poly::from_ints(&[1, 2]).pow(d as u32)
}

/// `sum_{k=0}^{d} C(d+1, k) n^k`
pub fn type_a_dual(d: usize) -> Poly {
    let mut c = BigInt::one();
    let mut coeffs = Vec::with_capacity(d + 1);
    for k in 0..=d {
        coeffs.push(Rational::from_integer(c.clone()));
        c = c * BigInt::from(d + 1 - k) / BigInt::from(k + 1);
    }
    Poly::from_coeffs(coeffs)
}

/// `(n + 1)^d + n^d` for `d >= 1`; the point `d = 0` has `E = 1`.
pub fn type_c_dual(d: usize) -> Poly {
    if d == 0 {
        return Poly::one();
    }
    &Poly::from_ints(&[1, 1]).pow(d as u32) + &Poly::var().pow(d as u32)
}

/// Memo table for the Stasheff recurrence. Entries are immutable once
/// inserted; the table only ever grows.
#[derive(Debug, Default)]
pub struct StasheffCache {
    entries: Mutex<Vec<Arc<Poly>>>,
}

impl StasheffCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, d: usize) -> Arc<Poly> {
        let mut entries = self.entries.lock().expect("stasheff cache poisoned");
        if entries.is_empty() {
            entries.push(Arc::new(Poly::one()));
            entries.push(Arc::new(Poly::from_ints(&[1, 2])));
        }
        // E_d = (2n+1) E_{d-1} - n(n+1)/2 E_{d-2}
        let two_n_plus_one = Poly::from_ints(&[1, 2]);
        let half_n_n1 = Poly::from_coeffs(vec![Rational::zero(), rat(1, 2), rat(1, 2)]);
        while entries.len() <= d {
            let k = entries.len();
            let next = &(&two_n_plus_one * &*entries[k - 1]) - &(&half_n_n1 * &*entries[k - 2]);
            entries.push(Arc::new(next));
        }
        Arc::clone(&entries[d])
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("stasheff cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn global_stasheff() -> &'static StasheffCache {
    static CACHE: OnceLock<StasheffCache> = OnceLock::new();
    CACHE.get_or_init(StasheffCache::new)
}

/// Ehrhart polynomial of the dual Stasheff polytope, from the three-term
/// recurrence with `E_0 = 1` and `E_1 = 2n + 1`.
pub fn stasheff_dual(d: usize) -> Poly {
    (*global_stasheff().get(d)).clone()
}

/// `F_d = E_d - (n/2) E_{d-1}`, the auxiliary sequence whose magic
/// positivity drives the induction for the Stasheff family.
pub fn stasheff_aux(d: usize) -> Poly {
    assert!(d >= 1, "stasheff_aux needs d >= 1");
    let half_n = Poly::monomial(rat(1, 2), 1);
    &stasheff_dual(d) - &(&half_n * &stasheff_dual(d - 1))
}

/// `sum_{i=0}^{floor(d/2)} (-1)^i C(d+1, i) C((d+1-2i) n + d - i, d)`,
/// the dual of the symmetric edge polytope of `C_{d+1}`.
///
/// Summed over integer numerators and divided by `d!` once at the end.
pub fn cycle_dual(d: usize) -> Poly {
    assert!(d >= 1, "cycle_dual needs d >= 1");
    let mut total = vec![BigInt::zero(); d + 1];
    let mut weight = BigInt::one(); // C(d+1, i)
    for i in 0..=d / 2 {
        let term = falling_product((d + 1 - 2 * i) as i64, (d - i) as i64, d);
        for (t, c) in total.iter_mut().zip(term) {
            if i % 2 == 0 {
                *t += &weight * c;
            } else {
                *t -= &weight * c;
            }
        }
        weight = weight * BigInt::from(d + 1 - i) / BigInt::from(i + 1);
    }
    let fact = factorial(d);
    Poly::from_coeffs(
        total
            .into_iter()
            .map(|c| Rational::new(c, fact.clone()))
            .collect(),
    )
}

/// Same sum as [`cycle_dual`], assembled term by term through
/// [`binom_linear`].
pub fn cycle_dual_via_binom_linear(d: usize) -> Poly {
    assert!(d >= 1, "cycle_dual needs d >= 1");
    (0..=d / 2).fold(Poly::zero(), |acc, i| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let w = Rational::from_integer(big_binom((d + 1) as u64, i as u64).into()) * int(sign);
        let term = binom_linear((d + 1 - 2 * i) as i64, (d - i) as i64, d);
        &acc + &term.scale(&w)
    })
}
