//! Naturals extended with ω and vectors over them.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// A natural number or the top element ω.
///
/// The derived order puts every finite value below `Omega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nat {
    Fin(u64),
    Omega,
}

pub const OMEGA: Nat = Nat::Omega;

impl Nat {
    pub fn is_omega(self) -> bool {
        matches!(self, Nat::Omega)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Nat::Fin(n) => Some(n),
            Nat::Omega => None,
        }
    }

    /// `self + delta` with k+ω = ω. `None` when a finite result is negative.
    pub fn add_delta(self, delta: i64) -> Option<Nat> {
        match self {
            Nat::Omega => Some(Nat::Omega),
            Nat::Fin(n) => {
                let r = n as i128 + delta as i128;
                if r < 0 || r > u64::MAX as i128 {
                    None
                } else {
                    Some(Nat::Fin(r as u64))
                }
            }
        }
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nat::Fin(n) => write!(f, "{n}"),
            Nat::Omega => write!(f, "w"),
        }
    }
}

impl Serialize for Nat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Nat::Fin(n) => s.serialize_u64(*n),
            Nat::Omega => s.serialize_str("w"),
        }
    }
}

impl<'de> Deserialize<'de> for Nat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct NatVisitor;
        impl<'de> Visitor<'de> for NatVisitor {
            type Value = Nat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a natural number or \"w\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Nat, E> {
                Ok(Nat::Fin(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Nat, E> {
                u64::try_from(v)
                    .map(Nat::Fin)
                    .map_err(|_| E::custom("negative value"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Nat, E> {
                match v {
                    "w" | "ω" | "omega" => Ok(Nat::Omega),
                    _ => v.parse().map(Nat::Fin).map_err(E::custom),
                }
            }
        }
        d.deserialize_any(NatVisitor)
    }
}

/// A vector over ℕ ∪ {ω}; denotes the configuration ideal ↓v.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OmegaVec(pub Vec<Nat>);

impl OmegaVec {
    pub fn omega(dim: usize) -> Self {
        OmegaVec(vec![Nat::Omega; dim])
    }

    pub fn from_finite(values: &[u64]) -> Self {
        OmegaVec(values.iter().map(|&v| Nat::Fin(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Nat {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, n: Nat) {
        self.0[i] = n;
    }

    /// Indices carrying a finite value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_omega()).collect()
    }

    pub fn support_mask(&self) -> Vec<bool> {
        self.0.iter().map(|n| !n.is_omega()).collect()
    }

    pub fn finite_count(&self) -> usize {
        self.0.iter().filter(|n| !n.is_omega()).count()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|n| !n.is_omega())
    }

    /// The finite vector, when there is no ω entry.
    pub fn to_config(&self) -> Option<Vec<u64>> {
        self.0.iter().map(|n| n.finite()).collect()
    }

    /// Componentwise addition of an integer delta under ω-arithmetic.
    pub fn add_delta(&self, delta: &[i64]) -> Option<OmegaVec> {
        self.0
            .iter()
            .zip(delta)
            .map(|(n, &d)| n.add_delta(d))
            .collect::<Option<Vec<_>>>()
            .map(OmegaVec)
    }

    /// Componentwise order with ω on top, i.e. ↓self ⊆ ↓other.
    pub fn leq(&self, other: &OmegaVec) -> bool {
        omega_leq(self, other)
    }

    /// Membership of a finite configuration in ↓self.
    pub fn contains(&self, c: &[u64]) -> bool {
        self.0.iter().zip(c).all(|(n, &v)| match n {
            Nat::Omega => true,
            Nat::Fin(m) => v <= *m,
        })
    }

    /// Whether a finite configuration projects onto `self` over the
    /// support of `self`: π_F(c) = self.
    pub fn matches(&self, c: &[u64]) -> bool {
        self.0.iter().zip(c).all(|(n, &v)| match n {
            Nat::Omega => true,
            Nat::Fin(m) => v == *m,
        })
    }

    /// Partial order: `Some(Less)` when strictly below, etc.
    pub fn partial_cmp_product(&self, other: &OmegaVec) -> Option<Ordering> {
        let le = self.leq(other);
        let ge = other.leq(self);
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for OmegaVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

pub fn omega_leq(u: &OmegaVec, v: &OmegaVec) -> bool {
    u.dim() == v.dim() && u.0.iter().zip(&v.0).all(|(a, b)| a <= b)
}

/// π_F: keeps the components in `keep`, sends the others to ω.
pub fn project(v: &OmegaVec, keep: &[usize]) -> OmegaVec {
    let mut out = OmegaVec::omega(v.dim());
    for &i in keep {
        out.0[i] = v.0[i];
    }
    out
}

/// Projection of a finite configuration onto the support of `pattern`.
pub fn project_like(c: &[u64], pattern: &OmegaVec) -> OmegaVec {
    OmegaVec(
        c.iter()
            .zip(&pattern.0)
            .map(|(&v, p)| {
                if p.is_omega() {
                    Nat::Omega
                } else {
                    Nat::Fin(v)
                }
            })
            .collect(),
    )
}
