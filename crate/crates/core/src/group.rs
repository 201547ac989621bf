//! Arithmetic in the cyclic group `Z_d` and the k-argument bicharacter
//! `chi(g1, ..., gk) = exp(2 pi i g1 g2 ... gk / d)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::VertexId;

/// Absolute tolerance for comparing sums of roots of unity.
pub const ROOT_OF_UNITY_TOL: f64 = 1e-9;

/// Order `d >= 2` of the cyclic group `Z_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u32")]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(d: u64) -> Result<Self> {
        match u32::try_from(d) {
            Ok(d) if d >= 2 => Ok(Modulus(d)),
            _ => Err(Error::InvalidModulus(d)),
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_prime(self) -> bool {
        let d = self.0;
        (2..).take_while(|p| p * p <= d).all(|p| d % p != 0)
    }

    /// Reduces an arbitrary integer into `[0, d)`.
    pub fn reduce(self, value: i64) -> u32 {
        value.rem_euclid(self.0 as i64) as u32
    }

    pub fn element(self, value: i64) -> GroupElement {
        GroupElement {
            value: self.reduce(value),
            modulus: self,
        }
    }

    pub fn zero(self) -> GroupElement {
        self.element(0)
    }

    pub fn elements(self) -> impl Iterator<Item = GroupElement> {
        (0..self.0).map(move |v| GroupElement { value: v, modulus: self })
    }

    /// `exp(2 pi i / d)`.
    pub fn root_of_unity(self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI / self.0 as f64)
    }

    /// `omega^exponent`, with the exponent reduced mod d before evaluation.
    pub fn omega_pow(self, exponent: u64) -> Complex64 {
        let e = exponent % self.0 as u64;
        Complex64::from_polar(1.0, 2.0 * PI * e as f64 / self.0 as f64)
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;

    fn try_from(d: u64) -> Result<Self> {
        Modulus::new(d)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue in `[0, d)` tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    value: u32,
    modulus: Modulus,
}

impl GroupElement {
    pub fn new(value: u64, modulus: Modulus) -> Result<Self> {
        if value >= modulus.get() as u64 {
            return Err(Error::ResidueOutOfRange {
                value,
                modulus: modulus.get(),
            });
        }
        Ok(GroupElement {
            value: value as u32,
            modulus,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_modulus(self, other: GroupElement) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        Ok(())
    }

    pub fn add(self, other: GroupElement) -> Result<GroupElement> {
        self.same_modulus(other)?;
        let d = self.modulus.get() as u64;
        Ok(GroupElement {
            value: ((self.value as u64 + other.value as u64) % d) as u32,
            modulus: self.modulus,
        })
    }

    pub fn neg(self) -> GroupElement {
        let d = self.modulus.get();
        GroupElement {
            value: (d - self.value) % d,
            modulus: self.modulus,
        }
    }

    pub fn sub(self, other: GroupElement) -> Result<GroupElement> {
        self.add(other.neg())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// An assignment of group elements to labelled vertices, all in one `Z_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupTuple {
    modulus: Modulus,
    labels: Vec<VertexId>,
    values: Vec<u32>,
}

impl GroupTuple {
    /// Builds a tuple, reducing every value into `[0, d)`.
    pub fn new(modulus: Modulus, labels: Vec<VertexId>, values: Vec<i64>) -> Self {
        assert_eq!(labels.len(), values.len(), "labels and values differ in length");
        let values = values.into_iter().map(|v| modulus.reduce(v)).collect();
        GroupTuple {
            modulus,
            labels,
            values,
        }
    }

    pub fn zeros(modulus: Modulus, labels: Vec<VertexId>) -> Self {
        let values = vec![0; labels.len()];
        GroupTuple {
            modulus,
            labels,
            values,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, vertex: VertexId) -> Option<GroupElement> {
        self.labels
            .iter()
            .position(|&l| l == vertex)
            .map(|i| self.element(i))
    }

    pub fn element(&self, index: usize) -> GroupElement {
        GroupElement {
            value: self.values[index],
            modulus: self.modulus,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Non-zero entries as `(vertex, value)` pairs, in label order.
    pub fn support(&self) -> Vec<(VertexId, u32)> {
        self.labels
            .iter()
            .zip(&self.values)
            .filter(|(_, &v)| v != 0)
            .map(|(&l, &v)| (l, v))
            .collect()
    }
}

/// Product of the residues, reduced mod d.
fn residue_product(args: &[GroupElement], modulus: Modulus) -> u64 {
    let d = modulus.get() as u64;
    args.iter().fold(1 % d, |acc, g| acc * g.value as u64 % d)
}

fn common_modulus(args: &[GroupElement]) -> Result<Modulus> {
    let first = args.first().ok_or(Error::EmptyArguments)?;
    for g in &args[1..] {
        first.same_modulus(*g)?;
    }
    Ok(first.modulus)
}

/// `chi^k(g1, ..., gk) = omega^(g1 g2 ... gk)` with `omega = exp(2 pi i / d)`.
///
/// Multiplicative in every argument separately, since the exponent is linear
/// in each one.
pub fn bicharacter(args: &[GroupElement]) -> Result<Complex64> {
    let modulus = common_modulus(args)?;
    Ok(modulus.omega_pow(residue_product(args, modulus)))
}

/// `sum_{g in Z_d} chi^k(g, fixed...)`.
pub fn nondegeneracy_sum(modulus: Modulus, fixed: &[GroupElement]) -> Result<Complex64> {
    for g in fixed {
        if g.modulus != modulus {
            return Err(Error::ModulusMismatch {
                left: modulus.get(),
                right: g.modulus.get(),
            });
        }
    }
    let mut args = Vec::with_capacity(fixed.len() + 1);
    let mut total = Complex64::new(0.0, 0.0);
    for g in modulus.elements() {
        args.clear();
        args.push(g);
        args.extend_from_slice(fixed);
        total += bicharacter(&args)?;
    }
    Ok(total)
}

/// Checks that summing the first argument of `chi^k` out gives `d` when the
/// product of the `k - 1` fixed entries vanishes mod d and `0` otherwise.
///
/// `fixed` must hold exactly `k - 1` entries; anything else is reported as
/// `false`.
pub fn check_nondegeneracy(modulus: Modulus, k: usize, fixed: &[GroupElement]) -> bool {
    if k < 2 || fixed.len() != k - 1 {
        return false;
    }
    let Ok(sum) = nondegeneracy_sum(modulus, fixed) else {
        return false;
    };
    let expected = if residue_product(fixed, modulus) == 0 {
        modulus.get() as f64
    } else {
        0.0
    };
    (sum - Complex64::new(expected, 0.0)).norm() <= ROOT_OF_UNITY_TOL
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    fn el(v: u64, d: u64) -> GroupElement {
        GroupElement::new(v, m(d)).unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= ROOT_OF_UNITY_TOL
    }

    #[test]
    fn modulus_rejects_small_values() {
        assert_eq!(Modulus::new(1), Err(Error::InvalidModulus(1)));
        assert_eq!(Modulus::new(0), Err(Error::InvalidModulus(0)));
        assert!(Modulus::new(2).is_ok());
    }

    #[test]
    fn element_range_checked() {
        assert!(GroupElement::new(5, m(5)).is_err());
        assert_eq!(m(5).element(-1).value(), 4);
    }

    #[test]
    fn addition_examples() {
        assert_eq!(el(1, 2).add(el(1, 2)).unwrap(), el(0, 2));
        assert_eq!(el(2, 5).add(el(4, 5)).unwrap(), el(1, 5));
        for g in m(3).elements() {
            assert_eq!(el(0, 3).add(g).unwrap(), g);
        }
    }

    #[test]
    fn addition_rejects_mixed_moduli() {
        assert_eq!(
            el(1, 2).add(el(1, 3)),
            Err(Error::ModulusMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn group_axioms_exhaustive() {
        for d in 2..=7 {
            let md = m(d);
            for a in md.elements() {
                assert!(a.neg().add(a).unwrap().is_zero());
                for b in md.elements() {
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    for c in md.elements() {
                        let left = a.add(b).unwrap().add(c).unwrap();
                        let right = a.add(b.add(c).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn bicharacter_examples() {
        let v = bicharacter(&[el(1, 2), el(1, 2)]).unwrap();
        assert!(close(v, Complex64::new(-1.0, 0.0)));
        let v = bicharacter(&[el(1, 2), el(0, 2), el(1, 2)]).unwrap();
        assert!(close(v, Complex64::new(1.0, 0.0)));
        let v = bicharacter(&[el(1, 3), el(2, 3)]).unwrap();
        let expected = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 3.0);
        assert!(close(v, expected));
    }

    #[test]
    fn bicharacter_rejects_empty() {
        assert_eq!(bicharacter(&[]), Err(Error::EmptyArguments));
    }

    fn tuples(md: Modulus, len: usize) -> Vec<Vec<GroupElement>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|t| {
                    md.elements().map(move |g| {
                        let mut t = t.clone();
                        t.push(g);
                        t
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn bicharacter_multiplicative_exhaustive() {
        for d in 2..=5 {
            let md = m(d);
            for k in 1..=4 {
                for args in tuples(md, k) {
                    for h in md.elements() {
                        let mut shifted = args.clone();
                        shifted[0] = args[0].add(h).unwrap();
                        let mut with_h = args.clone();
                        with_h[0] = h;
                        let lhs = bicharacter(&shifted).unwrap();
                        let rhs = bicharacter(&args).unwrap() * bicharacter(&with_h).unwrap();
                        assert!(close(lhs, rhs), "d={d} args={args:?} h={h}");
                    }
                }
            }
        }
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(check_nondegeneracy(m(2), 2, &[el(0, 2)]));
        assert!(close(
            nondegeneracy_sum(m(2), &[el(0, 2)]).unwrap(),
            Complex64::new(2.0, 0.0)
        ));
        assert!(check_nondegeneracy(m(2), 2, &[el(1, 2)]));
        assert!(close(
            nondegeneracy_sum(m(2), &[el(1, 2)]).unwrap(),
            Complex64::new(0.0, 0.0)
        ));
        assert!(check_nondegeneracy(m(3), 3, &[el(1, 3), el(2, 3)]));
    }

    #[test]
    fn nondegeneracy_cube_roots_sum_to_zero() {
        // 1 + w^2 + w^4 for w = exp(2 pi i / 3), summed by hand.
        let w = |t: f64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t / 3.0);
        let by_hand = w(0.0) + w(2.0) + w(4.0);
        assert!(by_hand.norm() < 1e-12);
        let sum = nondegeneracy_sum(m(3), &[el(1, 3), el(2, 3)]).unwrap();
        assert!(close(sum, by_hand));
    }

    #[test]
    fn nondegeneracy_exhaustive_small_moduli() {
        for d in [2, 3, 4, 5, 6] {
            for k in 2..=4 {
                for fixed in tuples(m(d), k - 1) {
                    assert!(check_nondegeneracy(m(d), k, &fixed), "d={d} fixed={fixed:?}");
                }
            }
        }
    }

    #[test]
    fn nondegeneracy_arity_mismatch_is_false() {
        assert!(!check_nondegeneracy(m(2), 3, &[el(1, 2)]));
        assert!(!check_nondegeneracy(m(2), 1, &[]));
    }

    #[test]
    fn tuple_support_and_reduction() {
        let t = GroupTuple::new(m(4), vec![VertexId(0), VertexId(3)], vec![5, -4]);
        assert_eq!(t.values(), &[1, 0]);
        assert_eq!(t.support(), vec![(VertexId(0), 1)]);
        assert_eq!(t.get(VertexId(3)).unwrap().value(), 0);
        assert!(t.get(VertexId(9)).is_none());
    }
}
