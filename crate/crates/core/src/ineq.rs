//! Instances of subadditivity, strong subadditivity and Ingleton's inequality
//! over `⟦N⟧`, canonicalized into the `2^N − 1` coordinates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::entrospace::{
    canonical_mask, dim, full_ext_mask, subset_label, EntropyVector, PartyPermutation, Rational,
    MAX_PARTIES,
};
use crate::error::{Error, Result};

/// The inequality `Σ coeff_I · S_I ≥ 0`, stored sparsely by storage mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearFunctional {
    n: usize,
    coeff: Vec<(u32, i64)>,
    label: String,
}

impl LinearFunctional {
    /// Builds from `(storage mask, coefficient)` terms; repeated masks are summed,
    /// zero coefficients dropped.
    pub fn from_terms(n: usize, terms: &[(u32, i64)], label: impl Into<String>) -> Result<Self> {
        let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
        for &(m, c) in terms {
            if m == 0 || m as usize > dim(n) {
                return Err(Error::PartyOutOfRange {
                    party: 32 - m.leading_zeros() as usize,
                    n,
                });
            }
            *acc.entry(m).or_default() += c;
        }
        Ok(LinearFunctional {
            n,
            coeff: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
            label: label.into(),
        })
    }

    pub fn from_dense(n: usize, dense: &[i64], label: impl Into<String>) -> Result<Self> {
        if dense.len() != dim(n) {
            return Err(Error::DimensionMismatch {
                expected: dim(n),
                got: dense.len(),
            });
        }
        let terms: Vec<(u32, i64)> = dense
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, &c)| (i as u32 + 1, c))
            .collect();
        Self::from_terms(n, &terms, label)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Nonzero `(storage mask, coefficient)` pairs in mask order.
    pub fn terms(&self) -> &[(u32, i64)] {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_empty()
    }

    pub fn dense(&self) -> Vec<i64> {
        let mut d = vec![0; dim(self.n)];
        for &(m, c) in &self.coeff {
            d[m as usize - 1] = c;
        }
        d
    }

    /// Coefficients divided by their gcd; the deduplication key.
    pub fn normalized(&self) -> Vec<(u32, i64)> {
        let g = self.coeff.iter().fold(0i64, |g, (_, c)| g.gcd(c));
        if g <= 1 {
            return self.coeff.clone();
        }
        self.coeff.iter().map(|&(m, c)| (m, c / g)).collect()
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.coeff.iter().map(|(_, c)| c).sum()
    }

    pub fn evaluate(&self, v: &EntropyVector) -> Result<Rational> {
        if v.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.n(),
            });
        }
        Ok(self
            .coeff
            .iter()
            .map(|&(m, c)| v.at_mask(m) * Rational::from_integer(c.into()))
            .sum())
    }

    /// Dot product with an integer vector in storage order.
    pub fn evaluate_int(&self, v: &[BigInt]) -> BigInt {
        self.coeff
            .iter()
            .map(|&(m, c)| &v[m as usize - 1] * c)
            .sum()
    }

    /// The functional `g` with `g(π·S) = f(S)` for every `S`.
    pub fn permuted(&self, pi: &PartyPermutation) -> Result<Self> {
        if pi.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: pi.n(),
            });
        }
        let terms: Vec<(u32, i64)> = self
            .coeff
            .iter()
            .map(|&(m, c)| (canonical_mask(pi.map_ext(m << 1), self.n), c))
            .collect();
        Self::from_terms(self.n, &terms, format!("{}∘π", self.label))
    }

    /// `<label>: <c>*S_<subset> + …`
    pub fn to_line(&self) -> String {
        let mut out = format!("{}: ", self.label);
        for (i, &(m, c)) in self.coeff.iter().enumerate() {
            if i == 0 {
                out.push_str(&format!("{c}*S_{}", subset_label(m)));
            } else {
                let sign = if c < 0 { '-' } else { '+' };
                out.push_str(&format!(" {sign} {}*S_{}", c.abs(), subset_label(m)));
            }
        }
        if self.coeff.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn parse_line(line: &str, n: usize, line_no: usize) -> Result<Self> {
        let (label, body) = line
            .split_once(": ")
            .ok_or_else(|| Error::parse(line_no, "expected `<label>: <terms>`"))?;
        let mut terms = Vec::new();
        let mut sign = 1i64;
        for tok in body.split_whitespace() {
            match tok {
                "+" => sign = 1,
                "-" => sign = -1,
                "0" => {}
                t => {
                    let (c, s) = t
                        .split_once("*S_")
                        .ok_or_else(|| Error::parse(line_no, format!("bad term `{t}`")))?;
                    let c: i64 = c
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad coefficient `{c}`")))?;
                    let mut mask = 0u32;
                    for ch in s.chars() {
                        let p = ch.to_digit(36).filter(|&p| p >= 1 && p as usize <= n).ok_or_else(
                            || Error::parse(line_no, format!("bad subset `{s}` for N = {n}")),
                        )?;
                        mask |= 1 << (p - 1);
                    }
                    if mask == 0 {
                        return Err(Error::parse(line_no, "empty subset"));
                    }
                    terms.push((mask, sign * c));
                    sign = 1;
                }
            }
        }
        Self::from_terms(n, &terms, label.trim())
    }
}

impl fmt::Display for LinearFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Sa,
    Ssa,
    Ingleton,
    /// SA ∪ SSA.
    Poly,
    /// SA ∪ SSA ∪ Ingleton.
    Lambda4,
    Union,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sa" => Ok(Family::Sa),
            "ssa" => Ok(Family::Ssa),
            "ingleton" => Ok(Family::Ingleton),
            "poly" => Ok(Family::Poly),
            "lambda4" => Ok(Family::Lambda4),
            other => Err(Error::parse(0, format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sa => "sa",
            Family::Ssa => "ssa",
            Family::Ingleton => "ingleton",
            Family::Poly => "poly",
            Family::Lambda4 => "lambda4",
            Family::Union => "union",
        })
    }
}

/// A deduplicated list of functionals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSet {
    n: usize,
    family: Family,
    functionals: Vec<LinearFunctional>,
    generated: usize,
}

impl InstanceSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn functionals(&self) -> &[LinearFunctional] {
        &self.functionals
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    /// Number of generating tuples before deduplication.
    pub fn generated(&self) -> usize {
        self.generated
    }

    /// Order-preserving union; later duplicates are dropped.
    pub fn union(&self, other: &InstanceSet) -> Result<InstanceSet> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut b = Builder::new(self.n, Family::Union);
        for f in self.functionals.iter().chain(&other.functionals) {
            b.push_functional(f.clone());
        }
        b.generated = self.generated + other.generated;
        Ok(b.finish())
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    pub fn contains_functional(&self, f: &LinearFunctional) -> bool {
        let key = f.normalized();
        self.functionals.iter().any(|g| g.normalized() == key)
    }

    pub fn to_text(&self) -> String {
        self.functionals
            .iter()
            .map(|f| f.to_line() + "\n")
            .collect()
    }
}

struct Builder {
    n: usize,
    family: Family,
    seen: HashSet<Vec<(u32, i64)>>,
    out: Vec<LinearFunctional>,
    generated: usize,
}

impl Builder {
    fn new(n: usize, family: Family) -> Self {
        Builder {
            n,
            family,
            seen: HashSet::new(),
            out: Vec::new(),
            generated: 0,
        }
    }

    /// Adds `Σ c · S_{canonicalize(ext)}` from extended-mask terms.
    fn push_ext(&mut self, terms: &[(u32, i64)], label: String) {
        self.generated += 1;
        let canon: Vec<(u32, i64)> = terms
            .iter()
            .map(|&(e, c)| (canonical_mask(e, self.n), c))
            .filter(|(m, _)| *m != 0)
            .collect();
        let f = LinearFunctional::from_terms(self.n, &canon, label)
            .expect("canonical masks are in range");
        self.push_functional(f);
    }

    fn push_functional(&mut self, f: LinearFunctional) {
        if f.is_zero() {
            return;
        }
        if self.seen.insert(f.normalized()) {
            self.out.push(f);
        }
    }

    fn finish(self) -> InstanceSet {
        InstanceSet {
            n: self.n,
            family: self.family,
            functionals: self.out,
            generated: self.generated,
        }
    }
}

fn ext_label(ext: u32) -> String {
    (0..32)
        .filter(|b| ext >> b & 1 == 1)
        .map(|b| char::from_digit(b, 36).unwrap())
        .collect()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PARTIES {
        return Err(Error::UnsupportedPartyCount(n));
    }
    Ok(())
}

/// Submasks of `m` in increasing order, excluding 0.
fn submasks(m: u32) -> impl Iterator<Item = u32> {
    let mut subs: Vec<u32> = Vec::new();
    let mut s = m;
    while s != 0 {
        subs.push(s);
        s = (s - 1) & m;
    }
    subs.into_iter().rev()
}

/// `S_I + S_J − S_{I∪J} ≥ 0` for each unordered pair of disjoint nonempty `I, J ⊆ ⟦N⟧`.
pub fn sa_instances(n: usize) -> Result<InstanceSet> {
    check_n(n)?;
    let full = full_ext_mask(n);
    let mut b = Builder::new(n, Family::Sa);
    for i in 1..=full {
        for j in submasks(full & !i).filter(|&j| j > i) {
            b.push_ext(
                &[(i, 1), (j, 1), (i | j, -1)],
                format!("SA({},{})", ext_label(i), ext_label(j)),
            );
        }
    }
    Ok(b.finish())
}

/// `S_{AB} + S_{BC} − S_B − S_{ABC} ≥ 0` for pairwise-disjoint nonempty `A, B, C ⊆ ⟦N⟧`.
pub fn ssa_instances(n: usize) -> Result<InstanceSet> {
    check_n(n)?;
    let full = full_ext_mask(n);
    let mut b = Builder::new(n, Family::Ssa);
    for bm in 1..=full {
        let rest = full & !bm;
        for a in submasks(rest) {
            // A and C play symmetric roles.
            for c in submasks(rest & !a).filter(|&c| c > a) {
                b.push_ext(
                    &[(a | bm, 1), (bm | c, 1), (bm, -1), (a | bm | c, -1)],
                    format!("SSA({},{},{})", ext_label(a), ext_label(bm), ext_label(c)),
                );
            }
        }
    }
    Ok(b.finish())
}

/// Ingleton's inequality
/// `I(a:b) ≤ I(a:b|c) + I(a:b|d) + I(c:d)` over distinct singletons of `⟦N⟧`.
pub fn ingleton_instances(n: usize) -> Result<InstanceSet> {
    if n < 3 {
        return Err(Error::UnsupportedPartyCount(n));
    }
    check_n(n)?;
    let mut b = Builder::new(n, Family::Ingleton);
    let parties = n + 1;
    for a in 0..parties {
        for bb in a + 1..parties {
            for c in 0..parties {
                for d in c + 1..parties {
                    if [a, bb].contains(&c) || [a, bb].contains(&d) {
                        continue;
                    }
                    let (ea, eb, ec, ed) = (1u32 << a, 1u32 << bb, 1u32 << c, 1u32 << d);
                    b.push_ext(
                        &[
                            (ea | ec, 1),
                            (eb | ec, 1),
                            (ea | ed, 1),
                            (eb | ed, 1),
                            (ea | eb, 1),
                            (ea | eb | ec, -1),
                            (ea | eb | ed, -1),
                            (ec | ed, -1),
                            (ea, -1),
                            (eb, -1),
                        ],
                        format!("ING({a}{bb};{c}{d})"),
                    );
                }
            }
        }
    }
    Ok(b.finish())
}

/// Generator union selected by family name.
pub fn family_instances(family: Family, n: usize) -> Result<InstanceSet> {
    match family {
        Family::Sa => sa_instances(n),
        Family::Ssa => ssa_instances(n),
        Family::Ingleton => ingleton_instances(n),
        Family::Poly => Ok(sa_instances(n)?
            .union(&ssa_instances(n)?)?
            .with_family(Family::Poly)),
        Family::Lambda4 => Ok(sa_instances(n)?
            .union(&ssa_instances(n)?)?
            .union(&ingleton_instances(n)?)?
            .with_family(Family::Lambda4)),
        Family::Union => Err(Error::parse(0, "`union` is not a generator family")),
    }
}

pub fn evaluate(f: &LinearFunctional, v: &EntropyVector) -> Result<Rational> {
    f.evaluate(v)
}

/// Indices of functionals evaluating to zero and to a negative value on `v`.
pub fn saturated_set(v: &EntropyVector, s: &InstanceSet) -> Result<(Vec<usize>, Vec<usize>)> {
    if v.n() != s.n {
        return Err(Error::DimensionMismatch {
            expected: s.n,
            got: v.n(),
        });
    }
    saturation(&s.functionals, v)
}

pub(crate) fn saturation(
    functionals: &[LinearFunctional],
    v: &EntropyVector,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let signs = functionals
        .par_iter()
        .map(|f| f.evaluate(v).map(|x| x.cmp(&Rational::from_integer(0.into()))))
        .collect::<Result<Vec<_>>>()?;
    let pick = |o| (0..signs.len()).filter(|&i| signs[i] == o).collect();
    Ok((pick(Ordering::Equal), pick(Ordering::Less)))
}
