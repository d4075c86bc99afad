//! Closed-form entropy vectors of reference states.

use std::fmt;
use std::str::FromStr;

use crate::cone::{double_description, is_extreme_ray, HRepCone, VRepCone, Verdict};
use crate::entrospace::{ext_of_storage, EntropyVector, PartyPermutation, Rational};
use crate::error::{Error, Result};
use crate::ineq::{family_instances, sa_instances, Family};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateKind {
    Bell(usize, usize),
    /// Parties sharing the GHZ state, sorted.
    Ghz(Vec<usize>),
    Ame4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpec {
    kind: StateKind,
    n: usize,
}

impl StateSpec {
    pub fn bell(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidStateSpec(format!("bell needs distinct parties, got {a},{a}")));
        }
        Self::checked(n, StateKind::Bell(a.min(b), a.max(b)))
    }

    pub fn ghz(n: usize, parties: &[usize]) -> Result<Self> {
        let mut p = parties.to_vec();
        p.sort_unstable();
        p.dedup();
        if p.len() != parties.len() {
            return Err(Error::InvalidStateSpec("ghz parties repeat".into()));
        }
        if p.len() < 2 {
            return Err(Error::InvalidStateSpec("ghz needs at least 2 parties".into()));
        }
        Self::checked(n, StateKind::Ghz(p))
    }

    pub fn ame4(n: usize) -> Result<Self> {
        if n != 3 {
            return Err(Error::InvalidStateSpec(format!("ame4 needs N = 3, got {n}")));
        }
        Ok(StateSpec {
            kind: StateKind::Ame4,
            n,
        })
    }

    fn checked(n: usize, kind: StateKind) -> Result<Self> {
        let parties: Vec<usize> = match &kind {
            StateKind::Bell(a, b) => vec![*a, *b],
            StateKind::Ghz(p) => p.clone(),
            StateKind::Ame4 => vec![],
        };
        if let Some(&p) = parties.iter().find(|&&p| p > n) {
            return Err(Error::InvalidStateSpec(format!("party {p} out of range 0..={n}")));
        }
        EntropyVector::zero(n).map_err(|e| Error::InvalidStateSpec(e.to_string()))?;
        Ok(StateSpec { kind, n })
    }

    pub fn kind(&self) -> &StateKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The spec whose state is this one with parties relabelled by `pi`.
    pub fn permuted(&self, pi: &PartyPermutation) -> Result<Self> {
        if pi.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: pi.n(),
            });
        }
        match &self.kind {
            StateKind::Bell(a, b) => StateSpec::bell(self.n, pi.image(*a), pi.image(*b)),
            StateKind::Ghz(p) => {
                let q: Vec<usize> = p.iter().map(|&x| pi.image(x)).collect();
                StateSpec::ghz(self.n, &q)
            }
            StateKind::Ame4 => Ok(self.clone()),
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &[usize]| {
            p.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match &self.kind {
            StateKind::Bell(a, b) => write!(f, "bell({a},{b}) at N={}", self.n),
            StateKind::Ghz(p) => write!(f, "ghz({}) at N={}", join(p), self.n),
            StateKind::Ame4 => write!(f, "ame4 at N={}", self.n),
        }
    }
}

/// Parses `bell`, `ghz` or `ame4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindName {
    Bell,
    Ghz,
    Ame4,
}

impl FromStr for KindName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bell" => Ok(KindName::Bell),
            "ghz" => Ok(KindName::Ghz),
            "ame4" => Ok(KindName::Ame4),
            other => Err(Error::InvalidStateSpec(format!("unknown state kind `{other}`"))),
        }
    }
}

impl StateSpec {
    pub fn from_parts(kind: KindName, n: usize, parties: &[usize]) -> Result<Self> {
        match kind {
            KindName::Bell => match parties {
                [a, b] => StateSpec::bell(n, *a, *b),
                _ => Err(Error::InvalidStateSpec(format!(
                    "bell needs exactly 2 parties, got {}",
                    parties.len()
                ))),
            },
            KindName::Ghz => StateSpec::ghz(n, parties),
            KindName::Ame4 => {
                if !parties.is_empty() {
                    return Err(Error::InvalidStateSpec("ame4 takes no parties".into()));
                }
                StateSpec::ame4(n)
            }
        }
    }
}

fn bit(p: usize) -> u32 {
    1 << p
}

/// Entropy vector of the reference state.
pub fn state_vector(s: &StateSpec) -> EntropyVector {
    let one = || Rational::from_integer(1.into());
    let zero = || Rational::from_integer(0.into());
    let v = match &s.kind {
        StateKind::Bell(a, b) => EntropyVector::from_fn(s.n, |m| {
            let k = ext_of_storage(m);
            if (k & bit(*a) != 0) != (k & bit(*b) != 0) {
                one()
            } else {
                zero()
            }
        }),
        StateKind::Ghz(p) => {
            let pm = p.iter().fold(0u32, |m, &x| m | bit(x));
            EntropyVector::from_fn(s.n, |m| {
                let inter = ext_of_storage(m) & pm;
                if inter != 0 && inter != pm {
                    one()
                } else {
                    zero()
                }
            })
        }
        StateKind::Ame4 => EntropyVector::from_fn(s.n, |m| {
            let k = m.count_ones() as i64;
            Rational::from_integer(k.min(4 - k).into())
        }),
    };
    v.expect("spec validated at construction")
}

/// Λ_4 extreme rays that are also SAC_4-extreme.
pub fn erq4_trivial_rays() -> Result<VRepCone> {
    let lambda = HRepCone::from_instances(&family_instances(Family::Lambda4, 4)?);
    let sac = HRepCone::from_instances(&sa_instances(4)?);
    let rays = double_description(&lambda)?;
    let mut keep = Vec::new();
    for v in rays.vectors() {
        if is_extreme_ray(&v, &sac)?.verdict == Verdict::Extreme {
            keep.push(v);
        }
    }
    VRepCone::from_vectors(4, &keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{orbit_count, ray_of};

    fn ints(n: usize, v: &[i64]) -> EntropyVector {
        EntropyVector::from_integers(n, v).unwrap()
    }

    #[test]
    fn state_vector_examples() {
        assert_eq!(
            state_vector(&StateSpec::bell(3, 1, 2).unwrap()),
            ints(3, &[1, 1, 0, 0, 1, 1, 0])
        );
        assert_eq!(
            state_vector(&StateSpec::ghz(3, &[0, 1, 2, 3]).unwrap()),
            ints(3, &[1; 7])
        );
        assert_eq!(
            state_vector(&StateSpec::ame4(3).unwrap()),
            ints(3, &[1, 1, 2, 1, 2, 2, 1])
        );
        // K = {1,3} splits the GHZ parties.
        assert_eq!(
            state_vector(&StateSpec::ghz(3, &[0, 1, 2, 3]).unwrap()).at_mask(0b101),
            &Rational::from_integer(1.into())
        );
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(StateSpec::bell(3, 1, 1), Err(Error::InvalidStateSpec(_))));
        assert!(matches!(StateSpec::ghz(3, &[2]), Err(Error::InvalidStateSpec(_))));
        assert!(matches!(StateSpec::ame4(4), Err(Error::InvalidStateSpec(_))));
        assert!(matches!(StateSpec::bell(2, 1, 3), Err(Error::InvalidStateSpec(_))));
        assert!(matches!(
            "werner".parse::<KindName>(),
            Err(Error::InvalidStateSpec(_))
        ));
    }

    #[test]
    fn permutation_maps_specs() {
        let n = 3;
        let specs = vec![
            StateSpec::bell(n, 0, 2).unwrap(),
            StateSpec::ghz(n, &[1, 2, 3]).unwrap(),
            StateSpec::ame4(n).unwrap(),
        ];
        for pi in PartyPermutation::all(n) {
            for s in &specs {
                let lhs = state_vector(s).apply_permutation(&pi).unwrap();
                let rhs = state_vector(&s.permuted(&pi).unwrap());
                assert_eq!(lhs, rhs, "{s} under {:?}", pi.images());
            }
        }
    }

    #[test]
    fn trivial_rays() {
        let t = erq4_trivial_rays().unwrap();
        // Bell, AME4 with a pure fifth party, and one genuinely five-party
        // orbit. GHZ on four parties with a pure fifth is Λ_4-extreme but
        // saturates only the SA instances touching the pure party (rank 8).
        assert_eq!(orbit_count(&t), 3);
        let bell = state_vector(&StateSpec::bell(4, 1, 2).unwrap());
        assert!(t.contains_ray(&ray_of(&bell)));
        let sac = HRepCone::from_instances(&sa_instances(4).unwrap());
        for v in t.vectors() {
            assert_eq!(is_extreme_ray(&v, &sac).unwrap().verdict, Verdict::Extreme);
        }
    }
}
