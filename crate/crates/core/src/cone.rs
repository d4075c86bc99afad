//! Polyhedral cones in entropy space.
//!
//! An [`HRepCone`] is `{S : q·S ≥ 0 for every functional q}`; a [`VRepCone`]
//! is the conical hull of a finite set of primitive integer rays. Conversion
//! H → V uses the incremental double description method.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entrospace::{dim, parse_n_header, EntropyVector, PartyPermutation, Rational};
use crate::error::{Error, Result};
use crate::exactla::{
    conic_membership, primitive, primitive_integer, rank_certificate, to_rationals,
    ConicCertificate, IntRow, RankCertificate,
};
use crate::ineq::{saturation, InstanceSet, LinearFunctional};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRepCone {
    n: usize,
    functionals: Vec<LinearFunctional>,
}

impl HRepCone {
    pub fn new(n: usize, functionals: Vec<LinearFunctional>) -> Result<Self> {
        for f in &functionals {
            if f.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: f.n(),
                });
            }
        }
        Ok(HRepCone { n, functionals })
    }

    pub fn from_instances(s: &InstanceSet) -> Self {
        HRepCone {
            n: s.n(),
            functionals: s.functionals().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        dim(self.n)
    }

    pub fn functionals(&self) -> &[LinearFunctional] {
        &self.functionals
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("HREP\nN {}\n", self.n);
        for f in &self.functionals {
            out.push_str(&f.to_line());
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        expect_keyword(&mut lines, "HREP")?;
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(2, "missing `N <n>`"))?;
        let n = parse_n_header(header, ln)?;
        let functionals = lines
            .map(|(ln, l)| LinearFunctional::parse_line(l, n, ln))
            .collect::<Result<Vec<_>>>()?;
        HRepCone::new(n, functionals)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn expect_keyword<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    kw: &str,
) -> Result<()> {
    match lines.next() {
        Some((_, l)) if l == kw => Ok(()),
        Some((ln, l)) => Err(Error::parse(ln, format!("expected `{kw}`, found `{l}`"))),
        None => Err(Error::parse(1, format!("expected `{kw}`"))),
    }
}

/// Primitive integer rays (gcd 1), deduplicated and sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VRepCone {
    n: usize,
    rays: Vec<Vec<BigInt>>,
}

impl VRepCone {
    /// Canonicalizes every ray; zero vectors are dropped.
    pub fn new(n: usize, rays: Vec<Vec<BigInt>>) -> Result<Self> {
        let d = dim(n);
        let mut set = BTreeSet::new();
        for r in rays {
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: r.len(),
                });
            }
            if r.iter().all(Zero::is_zero) {
                continue;
            }
            set.insert(primitive(r));
        }
        Ok(VRepCone {
            n,
            rays: set.into_iter().collect(),
        })
    }

    pub fn from_vectors(n: usize, vs: &[EntropyVector]) -> Result<Self> {
        let mut rays = Vec::with_capacity(vs.len());
        for v in vs {
            if v.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.n(),
                });
            }
            rays.push(ray_of(v));
        }
        Self::new(n, rays)
    }

    pub fn empty(n: usize) -> Self {
        VRepCone {
            n,
            rays: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        dim(self.n)
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains_ray(&self, r: &[BigInt]) -> bool {
        self.rays.binary_search_by(|x| x.as_slice().cmp(r)).is_ok()
    }

    pub fn vectors(&self) -> Vec<EntropyVector> {
        self.rays
            .iter()
            .map(|r| EntropyVector::from_bigints(self.n, r).expect("dimension fixed"))
            .collect()
    }

    pub fn union(&self, other: &VRepCone) -> Result<VRepCone> {
        check_same(self.n, other.n)?;
        VRepCone::new(
            self.n,
            self.rays.iter().chain(&other.rays).cloned().collect(),
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("VREP\nN {}\n", self.n);
        for r in &self.rays {
            let line: Vec<String> = r.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        expect_keyword(&mut lines, "VREP")?;
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(2, "missing `N <n>`"))?;
        let n = parse_n_header(header, ln)?;
        let mut rays = Vec::new();
        for (ln, l) in lines {
            let r = l
                .split_whitespace()
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| Error::parse(ln, format!("bad integer `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if r.len() != dim(n) {
                return Err(Error::parse(
                    ln,
                    format!("ray has {} entries, expected {}", r.len(), dim(n)),
                ));
            }
            rays.push(r);
        }
        VRepCone::new(n, rays)
    }
}

/// Primitive integer ray through `v`.
pub fn ray_of(v: &EntropyVector) -> Vec<BigInt> {
    primitive_integer(v.components())
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            got: b,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Extreme,
    NotExtreme,
    Outside,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Extreme => "extreme",
            Verdict::NotExtreme => "not-extreme",
            Verdict::Outside => "outside",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalityCertificate {
    pub verdict: Verdict,
    pub dim: usize,
    pub saturated: Vec<usize>,
    pub violated: Vec<usize>,
    /// Rank of the saturated functionals.
    pub rank: usize,
    /// Rank statement over the saturated rows (row indices into `saturated`).
    pub rank_certificate: RankCertificate,
}

impl ExtremalityCertificate {
    /// Re-checks the certificate for `v` against `h` without re-running the
    /// rank computation.
    pub fn verify(&self, v: &EntropyVector, h: &HRepCone) -> Result<bool> {
        let (sat, viol) = saturation(&h.functionals, v)?;
        if sat != self.saturated || viol != self.violated || self.dim != h.dim() {
            return Ok(false);
        }
        let rows = saturated_rows(h, &sat);
        if self.rank_certificate.rank != self.rank || !self.rank_certificate.verify(&rows) {
            return Ok(false);
        }
        let expected = if !viol.is_empty() {
            Verdict::Outside
        } else if self.rank + 1 == self.dim {
            Verdict::Extreme
        } else {
            Verdict::NotExtreme
        };
        Ok(expected == self.verdict)
    }
}

fn saturated_rows(h: &HRepCone, sat: &[usize]) -> Vec<IntRow> {
    sat.iter()
        .map(|&i| {
            h.functionals[i]
                .terms()
                .iter()
                .map(|&(m, c)| (m as usize - 1, BigInt::from(c)))
                .collect()
        })
        .collect()
}

/// Extremality of `v` in the cone `h`: feasible and the saturated
/// functionals have rank `D − 1`.
pub fn is_extreme_ray(v: &EntropyVector, h: &HRepCone) -> Result<ExtremalityCertificate> {
    check_same(h.n, v.n())?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let (saturated, violated) = saturation(&h.functionals, v)?;
    let rows = saturated_rows(h, &saturated);
    let hint = ray_of(v);
    let cert = rank_certificate(&rows, h.dim(), Some(&hint));
    let verdict = if !violated.is_empty() {
        Verdict::Outside
    } else if cert.rank + 1 == h.dim() {
        Verdict::Extreme
    } else {
        Verdict::NotExtreme
    };
    Ok(ExtremalityCertificate {
        verdict,
        dim: h.dim(),
        saturated,
        violated,
        rank: cert.rank,
        rank_certificate: cert,
    })
}

/// A working ray of the double description: cached values of every
/// constraint and the set of processed constraints it saturates.
#[derive(Clone)]
struct DdRay {
    v: Vec<BigInt>,
    vals: Vec<BigInt>,
    zero: Vec<u64>,
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn is_superset(sup: &[u64], sub: &[u64]) -> bool {
    sup.iter().zip(sub).all(|(a, b)| a & b == *b)
}

/// Extreme rays of a pointed cone given by inequalities.
pub fn double_description(h: &HRepCone) -> Result<VRepCone> {
    if h.functionals.is_empty() {
        return Err(Error::EmptyConstraints);
    }
    let d = h.dim();
    let m = h.functionals.len();
    let words = m.div_ceil(64);
    let rows: Vec<Vec<i64>> = h.functionals.iter().map(LinearFunctional::dense).collect();
    let all_rows = saturated_rows(h, &(0..m).collect::<Vec<_>>());

    let cert = rank_certificate(&all_rows, d, None);
    if cert.rank < d {
        return Err(Error::NonPointedCone(d - cert.rank));
    }
    let initial = cert.basis.clone();

    // Simplicial start: the columns of A₀⁻¹ generate {x : A₀x ≥ 0}.
    let inv = invert(&initial.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>());
    let eval = |v: &[BigInt]| -> Vec<BigInt> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(c, _)| **c != 0)
                    .map(|(c, x)| x * *c)
                    .sum()
            })
            .collect()
    };
    let mut processed = vec![false; m];
    for &i in &initial {
        processed[i] = true;
    }
    let mut rays: Vec<DdRay> = (0..d)
        .map(|j| {
            let col: Vec<Rational> = (0..d).map(|i| inv[i][j].clone()).collect();
            let v = primitive_integer(&col);
            let vals = eval(&v);
            let mut zero = vec![0u64; words];
            for (k, val) in vals.iter().enumerate() {
                if processed[k] && val.is_zero() {
                    set_bit(&mut zero, k);
                }
            }
            DdRay { v, vals, zero }
        })
        .collect();

    loop {
        // Next constraint: the one cutting off the most current rays.
        let next = (0..m)
            .filter(|&k| !processed[k])
            .map(|k| (rays.iter().filter(|r| r.vals[k].is_negative()).count(), k))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((cut, k)) = next else { break };
        if cut == 0 {
            // Every remaining constraint is already implied.
            break;
        }
        processed[k] = true;
        for r in rays.iter_mut() {
            if r.vals[k].is_zero() {
                set_bit(&mut r.zero, k);
            }
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| rays[i].vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| rays[i].vals[k].is_negative()).collect();
        let pairs: Vec<(usize, usize)> = pos
            .iter()
            .flat_map(|&p| neg.iter().map(move |&q| (p, q)))
            .collect();
        let current = &rays;
        let mut created: Vec<DdRay> = pairs
            .par_iter()
            .filter_map(|&(p, q)| {
                let (rp, rq) = (&current[p], &current[q]);
                let common: Vec<u64> = rp.zero.iter().zip(&rq.zero).map(|(a, b)| a & b).collect();
                let size: u32 = common.iter().map(|w| w.count_ones()).sum();
                if (size as usize) + 2 < d {
                    return None;
                }
                let blocked = current
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != q && is_superset(&r.zero, &common));
                if blocked {
                    return None;
                }
                let a = rp.vals[k].clone();
                let b = -rq.vals[k].clone();
                let mut v: Vec<BigInt> = rq.v.iter().zip(&rp.v).map(|(x, y)| &a * x + &b * y).collect();
                let mut vals: Vec<BigInt> =
                    rq.vals.iter().zip(&rp.vals).map(|(x, y)| &a * x + &b * y).collect();
                let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                if !g.is_one() {
                    v.iter_mut().for_each(|x| *x /= &g);
                    vals.iter_mut().for_each(|x| *x /= &g);
                }
                let mut zero = common;
                set_bit(&mut zero, k);
                Some(DdRay { v, vals, zero })
            })
            .collect();
        rays.retain(|r| !r.vals[k].is_negative());
        created.sort_by(|a, b| a.v.cmp(&b.v));
        rays.extend(created);
    }
    debug_assert!(rays
        .iter()
        .all(|r| (0..m).all(|k| !processed[k] || bit(&r.zero, k) == r.vals[k].is_zero())));
    VRepCone::new(h.n, rays.into_iter().map(|r| r.v).collect())
}

/// Inverse of a nonsingular integer matrix by Gauss–Jordan over the rationals.
fn invert(a: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let d = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x.into())).collect();
            r.extend((0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&i| !m[i][c].is_zero()).expect("nonsingular");
        m.swap(c, p);
        let pv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &pv;
        }
        let prow = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[d..].to_vec()).collect()
}

/// Outcome of checking generators against inequalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub holds: bool,
    /// First `(ray index, functional index)` with a negative value.
    pub witness: Option<(usize, usize)>,
}

/// Whether every ray of `a` satisfies every functional of `b`.
pub fn contains(a: &VRepCone, b: &HRepCone) -> Result<Containment> {
    check_same(a.n, b.n)?;
    for (i, r) in a.rays.iter().enumerate() {
        if let Some(j) = b
            .functionals
            .iter()
            .position(|f| f.evaluate_int(r).is_negative())
        {
            return Ok(Containment {
                holds: false,
                witness: Some((i, j)),
            });
        }
    }
    Ok(Containment {
        holds: true,
        witness: None,
    })
}

/// Per-ray membership certificates for `cone(a) ⊆ cone(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullContainment {
    pub holds: bool,
    pub certificates: Vec<ConicCertificate>,
}

impl HullContainment {
    /// Indices of rays of `a` not in `cone(b)`.
    pub fn uncovered(&self) -> Vec<usize> {
        (0..self.certificates.len())
            .filter(|&i| !self.certificates[i].is_member())
            .collect()
    }

    pub fn verify(&self, a: &VRepCone, b: &VRepCone) -> bool {
        let b_rays: Vec<Vec<Rational>> = b.rays.iter().map(|r| to_rationals(r)).collect();
        self.certificates.len() == a.len()
            && self.holds == self.certificates.iter().all(ConicCertificate::is_member)
            && a.rays
                .iter()
                .zip(&self.certificates)
                .all(|(r, c)| c.verify(&to_rationals(r), &b_rays))
    }
}

/// Whether every ray of `a` lies in `cone(b)`.
pub fn hull_contains(a: &VRepCone, b: &VRepCone) -> Result<HullContainment> {
    check_same(a.n, b.n)?;
    let b_rays: Vec<Vec<Rational>> = b.rays.iter().map(|r| to_rationals(r)).collect();
    let certificates = a
        .rays
        .par_iter()
        .map(|r| conic_membership(&to_rationals(r), &b_rays))
        .collect::<Result<Vec<_>>>()?;
    Ok(HullContainment {
        holds: certificates.iter().all(ConicCertificate::is_member),
        certificates,
    })
}

pub fn equal(a: &VRepCone, b: &VRepCone) -> Result<bool> {
    Ok(hull_contains(a, b)?.holds && hull_contains(b, a)?.holds)
}

/// Drops generators lying in the hull of the remaining ones.
pub fn reduce_generators(a: &VRepCone) -> Result<VRepCone> {
    let mut kept: Vec<Vec<BigInt>> = a.rays.clone();
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<Vec<Rational>> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| to_rationals(r))
            .collect();
        if conic_membership(&to_rationals(&kept[i]), &others)?.is_member() {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    VRepCone::new(a.n, kept)
}

fn permute_ray(r: &[BigInt], source: &[u32]) -> Vec<BigInt> {
    source.iter().map(|&m| r[m as usize - 1].clone()).collect()
}

fn all_source_masks(n: usize) -> Vec<Vec<u32>> {
    PartyPermutation::all(n)
        .iter()
        .map(PartyPermutation::source_masks)
        .collect()
}

/// Closes the ray set under all permutations of `⟦N⟧`.
pub fn orbit_expand(a: &VRepCone) -> VRepCone {
    let perms = all_source_masks(a.n);
    let rays: BTreeSet<Vec<BigInt>> = a
        .rays
        .par_iter()
        .flat_map_iter(|r| perms.iter().map(move |s| permute_ray(r, s)))
        .collect();
    VRepCone {
        n: a.n,
        rays: rays.into_iter().collect(),
    }
}

/// Lexicographically smallest permutation image of each ray.
pub fn orbit_representative(r: &[BigInt], n: usize) -> Vec<BigInt> {
    all_source_masks(n)
        .iter()
        .map(|s| permute_ray(r, s))
        .min()
        .expect("at least the identity")
}

/// Distinct orbit representatives, sorted.
pub fn orbit_representatives(a: &VRepCone) -> Vec<Vec<BigInt>> {
    let perms = all_source_masks(a.n);
    let reps: BTreeSet<Vec<BigInt>> = a
        .rays
        .par_iter()
        .map(|r| perms.iter().map(|s| permute_ray(r, s)).min().unwrap())
        .collect();
    reps.into_iter().collect()
}

pub fn orbit_count(a: &VRepCone) -> usize {
    if a.is_empty() {
        return 0;
    }
    orbit_representatives(a).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ineq::{family_instances, sa_instances, Family};

    fn ray(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn vrep(n: usize, rays: &[&[i64]]) -> VRepCone {
        VRepCone::new(n, rays.iter().map(|r| ray(r)).collect()).unwrap()
    }

    #[test]
    fn sac2_rays() {
        let h = HRepCone::from_instances(&sa_instances(2).unwrap());
        let v = double_description(&h).unwrap();
        assert_eq!(v, vrep(2, &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
    }

    #[test]
    fn poly3_rays() {
        let h = HRepCone::from_instances(&family_instances(Family::Poly, 3).unwrap());
        let v = double_description(&h).unwrap();
        assert_eq!(v.len(), 8);
        assert!(v.contains_ray(&ray(&[1, 1, 1, 1, 1, 1, 1])));
        assert!(v.contains_ray(&ray(&[1, 1, 2, 1, 2, 2, 1])));
        assert!(v.contains_ray(&ray(&[1, 1, 0, 0, 1, 1, 0])));
        assert_eq!(orbit_count(&v), 3);
    }

    #[test]
    fn non_pointed_detection() {
        let f = LinearFunctional::from_terms(2, &[(1, 1)], "x").unwrap();
        let h = HRepCone::new(2, vec![f]).unwrap();
        assert_eq!(double_description(&h), Err(Error::NonPointedCone(2)));
        assert_eq!(
            double_description(&HRepCone::new(2, vec![]).unwrap()),
            Err(Error::EmptyConstraints)
        );
    }

    #[test]
    fn extremality_examples() {
        let h3 = HRepCone::from_instances(&sa_instances(3).unwrap());
        let bell = EntropyVector::from_integers(3, &[1, 1, 0, 0, 1, 1, 0]).unwrap();
        let c = is_extreme_ray(&bell, &h3).unwrap();
        assert_eq!(c.verdict, Verdict::Extreme);
        assert_eq!(c.rank, 6);
        assert!(c.verify(&bell, &h3).unwrap());

        let ghz = EntropyVector::from_integers(3, &[1; 7]).unwrap();
        let c = is_extreme_ray(&ghz, &h3).unwrap();
        assert_eq!(c.verdict, Verdict::NotExtreme);
        assert!(c.saturated.is_empty());
        assert!(c.verify(&ghz, &h3).unwrap());

        let h2 = HRepCone::from_instances(&sa_instances(2).unwrap());
        let bad = EntropyVector::from_integers(2, &[1, 1, 3]).unwrap();
        let c = is_extreme_ray(&bad, &h2).unwrap();
        assert_eq!(c.verdict, Verdict::Outside);
        assert!(!c.violated.is_empty());

        assert_eq!(
            is_extreme_ray(&EntropyVector::zero(2).unwrap(), &h2),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn contains_examples() {
        let sa3 = HRepCone::from_instances(&sa_instances(3).unwrap());
        let ghz = vrep(3, &[&[1; 7]]);
        assert!(contains(&ghz, &sa3).unwrap().holds);
        let sa2 = HRepCone::from_instances(&sa_instances(2).unwrap());
        let bad = vrep(2, &[&[1, 1, 3]]);
        let c = contains(&bad, &sa2).unwrap();
        assert!(!c.holds);
        let (_, j) = c.witness.unwrap();
        assert!(sa2.functionals()[j].evaluate_int(&ray(&[1, 1, 3])).is_negative());
        assert!(matches!(
            contains(&bad, &sa3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hull_examples() {
        let ame = vrep(3, &[&[1, 1, 2, 1, 2, 2, 1]]);
        assert!(hull_contains(&ame, &ame).unwrap().holds);
        let ghz = vrep(3, &[&[1; 7]]);
        let res = hull_contains(&ghz, &ame).unwrap();
        assert!(!res.holds);
        assert!(res.verify(&ghz, &ame));
        assert_eq!(res.uncovered(), vec![0]);
        assert!(equal(&ame, &ame).unwrap());
    }

    #[test]
    fn orbit_examples() {
        let bell = vrep(2, &[&[1, 1, 0]]);
        assert_eq!(
            orbit_expand(&bell),
            vrep(2, &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
        );
        let ghz = vrep(3, &[&[1; 7]]);
        assert_eq!(orbit_expand(&ghz), ghz);
        let ame = vrep(3, &[&[1, 1, 2, 1, 2, 2, 1]]);
        assert_eq!(orbit_expand(&ame), ame);
        assert_eq!(orbit_count(&VRepCone::empty(3)), 0);
    }

    #[test]
    fn reduce_drops_interior_generators() {
        let a = vrep(2, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1], &[2, 1, 1]]);
        assert_eq!(
            reduce_generators(&a).unwrap(),
            vrep(2, &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
        );
    }

    #[test]
    fn file_formats() {
        let h = HRepCone::from_instances(&sa_instances(2).unwrap());
        assert_eq!(HRepCone::parse_text(&h.to_text()).unwrap(), h);
        let v = vrep(2, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(v.to_text(), "VREP\nN 2\n0 1 1\n1 1 0\n");
        assert_eq!(VRepCone::parse_text(&v.to_text()).unwrap(), v);
        assert!(VRepCone::parse_text("VREP\nN 2\n1 1\n").is_err());
    }
}
