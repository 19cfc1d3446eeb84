//! Ordinals below ω^ω in Cantor normal form, with the natural (Hessenberg) sum.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// `Σ ω^k · c_k` stored as a map from exponent `k` to a positive count `c_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrdinalPoly {
    coefficients: BTreeMap<u32, u64>,
}

impl OrdinalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// ω^k.
    pub fn omega_pow(k: u32) -> Self {
        Self::term(k, 1)
    }

    /// ω^k · c (zero when `c == 0`).
    pub fn term(k: u32, c: u64) -> Self {
        let mut coefficients = BTreeMap::new();
        if c > 0 {
            coefficients.insert(k, c);
        }
        OrdinalPoly { coefficients }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u64)>) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (k, c)| acc.nat_sum(&Self::term(k, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, k: u32) -> u64 {
        self.coefficients.get(&k).copied().unwrap_or(0)
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.coefficients.iter().rev().map(|(&k, &c)| (k, c))
    }

    /// Natural sum: coefficient-wise addition.
    pub fn nat_sum(&self, other: &OrdinalPoly) -> OrdinalPoly {
        let mut coefficients = self.coefficients.clone();
        for (&k, &c) in &other.coefficients {
            *coefficients.entry(k).or_insert(0) += c;
        }
        OrdinalPoly { coefficients }
    }
}

impl Ord for OrdinalPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms();
        let mut b = other.terms();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((ka, ca)), Some((kb, cb))) => {
                    let ord = ka.cmp(&kb).then(ca.cmp(&cb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl PartialOrd for OrdinalPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrdinalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(k, c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "ω".to_string(),
                (1, c) => format!("ω·{c}"),
                (k, 1) => format!("ω^{k}"),
                (k, c) => format!("ω^{k}·{c}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Expands to the descending list of exponents, one entry per ω^k summand.
    fn cantor_exponents(a: &OrdinalPoly) -> Vec<u32> {
        let mut out = Vec::new();
        for (k, c) in a.terms() {
            out.extend(std::iter::repeat_n(k, c as usize));
        }
        out
    }

    /// Positional comparison of two Cantor normal forms.
    fn oracle_cmp(a: &OrdinalPoly, b: &OrdinalPoly) -> Ordering {
        let (ea, eb) = (cantor_exponents(a), cantor_exponents(b));
        for (x, y) in ea.iter().zip(&eb) {
            if x != y {
                return x.cmp(y);
            }
        }
        ea.len().cmp(&eb.len())
    }

    fn omega_plus_one() -> OrdinalPoly {
        OrdinalPoly::from_terms([(1, 1), (0, 1)])
    }

    #[test]
    fn natural_sum_examples() {
        let a = omega_plus_one();
        let w = OrdinalPoly::omega_pow(1);
        assert_eq!(a.nat_sum(&w), OrdinalPoly::from_terms([(1, 2), (0, 1)]));
        assert_eq!(a.nat_sum(&w).to_string(), "ω·2 + 1");
        assert_eq!(OrdinalPoly::zero().nat_sum(&a), a);
        let sq = OrdinalPoly::omega_pow(2);
        let w3 = OrdinalPoly::term(1, 3);
        assert_eq!(sq.nat_sum(&w3).to_string(), "ω^2 + ω·3");
    }

    #[test]
    fn comparison_examples() {
        let w2 = OrdinalPoly::term(1, 2);
        assert_eq!(w2.cmp(&omega_plus_one()), Ordering::Greater);
        assert_eq!(oracle_cmp(&w2, &omega_plus_one()), Ordering::Greater);
        assert_eq!(omega_plus_one().cmp(&omega_plus_one()), Ordering::Equal);
        assert_eq!(OrdinalPoly::omega_pow(2).cmp(&OrdinalPoly::term(1, 5)), Ordering::Greater);
        assert!(OrdinalPoly::zero() < OrdinalPoly::term(0, 1));
    }

    fn ordinal() -> impl Strategy<Value = OrdinalPoly> {
        proptest::collection::vec((0u32..5, 0u64..4), 0..5).prop_map(OrdinalPoly::from_terms)
    }

    proptest! {
        #[test]
        fn compare_matches_oracle(a in ordinal(), b in ordinal()) {
            prop_assert_eq!(a.cmp(&b), oracle_cmp(&a, &b));
        }

        #[test]
        fn nat_sum_laws(a in ordinal(), b in ordinal(), c in ordinal()) {
            prop_assert_eq!(a.nat_sum(&b), b.nat_sum(&a));
            prop_assert_eq!(a.nat_sum(&b).nat_sum(&c), a.nat_sum(&b.nat_sum(&c)));
            if a.nat_sum(&c) == b.nat_sum(&c) {
                prop_assert_eq!(&a, &b);
            }
            if a < b {
                prop_assert!(a.nat_sum(&c) < b.nat_sum(&c));
            }
            prop_assert!(!a.terms().any(|(_, c)| c == 0));
        }
    }
}
