//! Entropy-space conventions.
//!
//! Parties are `⟦N⟧ = {0, 1, …, N}` with party 0 the purifier. Only subsets of
//! `{1, …, N}` are stored: a subset `I` lives at component index `mask(I)`,
//! where bit `ℓ − 1` of the mask is set iff party `ℓ ∈ I`. Any subset that
//! contains the purifier is looked up through its complement in `⟦N⟧`.
//!
//! Two mask flavours appear throughout the crate:
//! - a *storage mask* (`u32`, bit `ℓ − 1` for party `ℓ ≥ 1`), which is the
//!   component index itself;
//! - an *extended mask* (`u32`, bit `ℓ` for party `ℓ ∈ ⟦N⟧`), used whenever
//!   the purifier may be present.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest supported party count (excluding the purifier).
pub const MAX_PARTIES: usize = 16;

/// Ambient dimension `2^N − 1`.
pub fn dim(n: usize) -> usize {
    (1usize << n) - 1
}

/// Extended mask of the whole of `⟦N⟧`.
pub fn full_ext_mask(n: usize) -> u32 {
    ((1u64 << (n + 1)) - 1) as u32
}

/// Canonical storage mask for an extended mask: subsets containing the
/// purifier are replaced by their complement. Returns 0 for `∅` and `⟦N⟧`.
#[inline]
pub fn canonical_mask(ext: u32, n: usize) -> u32 {
    let ext = if ext & 1 == 1 {
        !ext & full_ext_mask(n)
    } else {
        ext
    };
    ext >> 1
}

/// Extended mask of a storage mask.
#[inline]
pub fn ext_of_storage(mask: u32) -> u32 {
    mask << 1
}

/// Sorted party digits of a storage mask, e.g. `0b101 -> "13"`.
pub fn subset_label(mask: u32) -> String {
    parties_of_storage(mask)
        .into_iter()
        .map(|p| char::from_digit(p as u32, 36).expect("party < 36"))
        .collect()
}

pub fn parties_of_storage(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

fn parse_subset_label(s: &str, n: usize, line: usize) -> Result<u32> {
    let mut mask = 0u32;
    for ch in s.chars() {
        let p = ch
            .to_digit(36)
            .ok_or_else(|| Error::parse(line, format!("bad party digit `{ch}`")))?
            as usize;
        if p == 0 || p > n {
            return Err(Error::parse(line, format!("party {p} out of range 1..={n}")));
        }
        let bit = 1u32 << (p - 1);
        if mask & bit != 0 {
            return Err(Error::parse(line, format!("repeated party {p}")));
        }
        mask |= bit;
    }
    if mask == 0 {
        return Err(Error::parse(line, "empty subset"));
    }
    Ok(mask)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PARTIES {
        return Err(Error::UnsupportedPartyCount(n));
    }
    Ok(())
}

/// A subset of the non-purifier parties `{1, …, N}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartySet {
    n: usize,
    mask: u32,
}

impl PartySet {
    pub fn new(n: usize, parties: &[usize]) -> Result<Self> {
        check_n(n)?;
        let mut mask = 0u32;
        for &p in parties {
            if p == 0 || p > n {
                return Err(Error::PartyOutOfRange { party: p, n });
            }
            mask |= 1 << (p - 1);
        }
        Ok(PartySet { n, mask })
    }

    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        check_n(n)?;
        if mask >> n != 0 {
            return Err(Error::PartyOutOfRange {
                party: 32 - mask.leading_zeros() as usize,
                n,
            });
        }
        Ok(PartySet { n, mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn parties(&self) -> Vec<usize> {
        parties_of_storage(self.mask)
    }
}

impl fmt::Display for PartySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            f.write_str("∅")
        } else {
            f.write_str(&subset_label(self.mask))
        }
    }
}

/// Component index of a nonempty subset.
pub fn subset_index(k: &PartySet) -> Result<usize> {
    if k.is_empty() {
        return Err(Error::IndexOfEmptySet);
    }
    Ok(k.mask as usize)
}

/// Inverse of [`subset_index`].
pub fn subset_of_index(n: usize, index: usize) -> Result<PartySet> {
    if index == 0 || index > dim(n) {
        return Err(Error::IndexOfEmptySet);
    }
    PartySet::from_mask(n, index as u32)
}

/// Extended mask of an arbitrary subset of `⟦N⟧`.
pub fn ext_mask(parties: &[usize], n: usize) -> Result<u32> {
    let mut m = 0u32;
    for &p in parties {
        if p > n {
            return Err(Error::PartyOutOfRange { party: p, n });
        }
        m |= 1 << p;
    }
    Ok(m)
}

/// Maps a subset of `⟦N⟧` to the subset of `{1, …, N}` holding its entropy.
pub fn canonicalize(parties: &[usize], n: usize) -> Result<PartySet> {
    check_n(n)?;
    let ext = ext_mask(parties, n)?;
    Ok(PartySet {
        n,
        mask: canonical_mask(ext, n),
    })
}

/// `2^N − 1` subsystem entropies in storage-mask order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EntropyVector {
    n: usize,
    comp: Vec<Rational>,
}

impl EntropyVector {
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(EntropyVector {
            n,
            comp: vec![Rational::zero(); dim(n)],
        })
    }

    /// Components in storage-mask order, `comp[i - 1] = S_I` with `mask(I) = i`.
    pub fn new(n: usize, comp: Vec<Rational>) -> Result<Self> {
        check_n(n)?;
        if comp.len() != dim(n) {
            return Err(Error::DimensionMismatch {
                expected: dim(n),
                got: comp.len(),
            });
        }
        Ok(EntropyVector { n, comp })
    }

    pub fn from_integers(n: usize, comp: &[i64]) -> Result<Self> {
        Self::new(
            n,
            comp.iter().map(|&c| Rational::from_integer(c.into())).collect(),
        )
    }

    pub fn from_bigints(n: usize, comp: &[BigInt]) -> Result<Self> {
        Self::new(
            n,
            comp.iter().map(|c| Rational::from_integer(c.clone())).collect(),
        )
    }

    /// Builds a vector from a closure over storage masks `1..=2^N − 1`.
    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> Rational) -> Result<Self> {
        check_n(n)?;
        let comp = (1..=dim(n) as u32).map(&mut f).collect();
        Ok(EntropyVector { n, comp })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.comp.len()
    }

    pub fn components(&self) -> &[Rational] {
        &self.comp
    }

    pub fn into_components(self) -> Vec<Rational> {
        self.comp
    }

    /// `S_I` for a storage mask; 0 for the empty mask.
    #[inline]
    pub fn at_mask(&self, mask: u32) -> &Rational {
        static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
        if mask == 0 {
            ZERO.get_or_init(Rational::zero)
        } else {
            &self.comp[mask as usize - 1]
        }
    }

    /// Entropy of an extended-mask subset of `⟦N⟧`.
    #[inline]
    pub fn at_ext(&self, ext: u32) -> &Rational {
        self.at_mask(canonical_mask(ext, self.n))
    }

    pub fn component(&self, k: &PartySet) -> Result<&Rational> {
        if k.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: k.n,
            });
        }
        Ok(self.at_mask(k.mask))
    }

    /// Entropy of any subset of `⟦N⟧`, purifier included.
    pub fn entropy_of(&self, parties: &[usize]) -> Result<Rational> {
        let ext = ext_mask(parties, self.n)?;
        Ok(self.at_ext(ext).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        EntropyVector {
            n: self.n,
            comp: self.comp.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(EntropyVector {
            n: self.n,
            comp: self.comp.iter().zip(&other.comp).map(|(a, b)| a + b).collect(),
        })
    }

    /// Relabels parties: `r_K = S_{π⁻¹(K)}`.
    pub fn apply_permutation(&self, pi: &PartyPermutation) -> Result<Self> {
        if pi.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: pi.n(),
            });
        }
        let source = pi.source_masks();
        Ok(EntropyVector {
            n: self.n,
            comp: source.iter().map(|&m| self.at_mask(m).clone()).collect(),
        })
    }

    /// Text form: `N <n>` then `<digits>: <value>` per component.
    pub fn to_text(&self) -> String {
        let mut out = format!("N {}\n", self.n);
        for (i, c) in self.comp.iter().enumerate() {
            out.push_str(&subset_label(i as u32 + 1));
            out.push_str(": ");
            out.push_str(&format_rational(c));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let n = parse_n_header(header, ln)?;
        let mut comp: Vec<Option<Rational>> = vec![None; dim(n)];
        for (ln, line) in lines {
            let (label, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, "expected `<subset>: <value>`"))?;
            let mask = parse_subset_label(label.trim(), n, ln)?;
            let value = parse_rational(value.trim()).map_err(|m| Error::parse(ln, m))?;
            let slot = &mut comp[mask as usize - 1];
            if slot.is_some() {
                return Err(Error::parse(ln, format!("duplicate subset {}", label.trim())));
            }
            *slot = Some(value);
        }
        let comp = comp
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    Error::parse(0, format!("missing subset {}", subset_label(i as u32 + 1)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        EntropyVector::new(n, comp)
    }
}

impl fmt::Display for EntropyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.comp.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_rational(c))?;
        }
        f.write_str(")")
    }
}

impl FromStr for EntropyVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

pub(crate) fn parse_n_header(header: &str, line: usize) -> Result<usize> {
    let n = header
        .strip_prefix("N ")
        .and_then(|s| s.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::parse(line, "expected header `N <n>`"))?;
    check_n(n).map_err(|e| Error::parse(line, e.to_string()))?;
    Ok(n)
}

/// `p` or `p/q`, denominator omitted when 1.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("bad rational `{s}`");
    match s.split_once('/') {
        None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().map_err(|_| bad())?;
            let q = q.trim().parse::<BigInt>().map_err(|_| bad())?;
            if q.is_zero() || q.is_negative() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// A bijection of `⟦N⟧`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartyPermutation {
    images: Vec<usize>,
}

impl PartyPermutation {
    /// `images[ℓ] = π(ℓ)` for `ℓ = 0, …, N`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let len = images.len();
        if len < 2 {
            return Err(Error::InvalidPermutation(format!(
                "need at least 2 images, got {len}"
            )));
        }
        let mut seen = vec![false; len];
        for &p in &images {
            if p >= len || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..={}",
                    len - 1
                )));
            }
        }
        Ok(PartyPermutation { images })
    }

    pub fn identity(n: usize) -> Self {
        PartyPermutation {
            images: (0..=n).collect(),
        }
    }

    /// Transposition of parties `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..=n).collect();
        if a > n || b > n {
            return Err(Error::PartyOutOfRange { party: a.max(b), n });
        }
        images.swap(a, b);
        Ok(PartyPermutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len() - 1
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, p: usize) -> usize {
        self.images[p]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        PartyPermutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        PartyPermutation {
            images: other.images.iter().map(|&p| self.images[p]).collect(),
        }
    }

    pub fn map_ext(&self, ext: u32) -> u32 {
        let mut out = 0;
        for (p, &img) in self.images.iter().enumerate() {
            if ext >> p & 1 == 1 {
                out |= 1 << img;
            }
        }
        out
    }

    /// For each target storage mask `K = 1..=D`, the storage mask of
    /// `canonicalize(π⁻¹(K))`.
    pub fn source_masks(&self) -> Vec<u32> {
        let n = self.n();
        let inv = self.inverse();
        (1..=dim(n) as u32)
            .map(|k| canonical_mask(inv.map_ext(ext_of_storage(k)), n))
            .collect()
    }

    /// All `(N + 1)!` permutations of `⟦N⟧` in lexicographic order.
    pub fn all(n: usize) -> Vec<PartyPermutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..=n).collect();
        loop {
            out.push(PartyPermutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..cur.len() - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// Componentwise `Σ λ_i v_i` with every `λ_i ≥ 0`.
pub fn conic_combine(n: usize, terms: &[(Rational, EntropyVector)]) -> Result<EntropyVector> {
    let mut acc = EntropyVector::zero(n)?;
    for (lambda, v) in terms {
        if lambda.is_negative() {
            return Err(Error::NegativeCoefficient);
        }
        if v.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.n,
            });
        }
        for (a, b) in acc.comp.iter_mut().zip(&v.comp) {
            *a += lambda * b;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn bell12_n3() -> EntropyVector {
        EntropyVector::from_integers(3, &[1, 1, 0, 0, 1, 1, 0]).unwrap()
    }

    #[test]
    fn subset_index_examples() {
        assert_eq!(subset_index(&PartySet::new(3, &[1]).unwrap()).unwrap(), 1);
        assert_eq!(subset_index(&PartySet::new(3, &[2]).unwrap()).unwrap(), 2);
        assert_eq!(subset_index(&PartySet::new(3, &[1, 2, 3]).unwrap()).unwrap(), 7);
        assert_eq!(
            subset_index(&PartySet::new(3, &[]).unwrap()),
            Err(Error::IndexOfEmptySet)
        );
    }

    #[test]
    fn subset_index_round_trip() {
        for n in 1..=9 {
            for i in 1..=dim(n) {
                let k = subset_of_index(n, i).unwrap();
                assert_eq!(subset_index(&k).unwrap(), i);
            }
        }
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&[0, 1], 3).unwrap().parties(), vec![2, 3]);
        assert_eq!(canonicalize(&[2], 3).unwrap().parties(), vec![2]);
        assert!(canonicalize(&[0, 1, 2, 3], 3).unwrap().is_empty());
        assert!(canonicalize(&[4], 3).is_err());
    }

    #[test]
    fn entropy_of_examples() {
        let bell = bell12_n3();
        assert_eq!(bell.entropy_of(&[0, 1]).unwrap(), int(1));
        assert_eq!(bell.entropy_of(&[]).unwrap(), int(0));
        let ghz = EntropyVector::from_integers(3, &[1; 7]).unwrap();
        assert_eq!(ghz.entropy_of(&[1, 3]).unwrap(), int(1));
        assert_eq!(
            bell.entropy_of(&[5]),
            Err(Error::PartyOutOfRange { party: 5, n: 3 })
        );
    }

    #[test]
    fn permutation_examples() {
        let bell = bell12_n3();
        let swap23 = PartyPermutation::swap(3, 2, 3).unwrap();
        let bell13 = EntropyVector::from_integers(3, &[1, 0, 1, 1, 0, 1, 0]).unwrap();
        assert_eq!(bell.apply_permutation(&swap23).unwrap(), bell13);

        let ghz = EntropyVector::from_integers(3, &[1; 7]).unwrap();
        for pi in PartyPermutation::all(3) {
            assert_eq!(ghz.apply_permutation(&pi).unwrap(), ghz);
        }

        let swap03 = PartyPermutation::swap(3, 0, 3).unwrap();
        assert_eq!(bell.apply_permutation(&swap03).unwrap(), bell);

        assert!(matches!(
            PartyPermutation::new(vec![0, 1, 1]),
            Err(Error::InvalidPermutation(_))
        ));
    }

    #[test]
    fn all_permutations_count() {
        assert_eq!(PartyPermutation::all(1).len(), 2);
        assert_eq!(PartyPermutation::all(3).len(), 24);
        assert_eq!(PartyPermutation::all(4).len(), 120);
    }

    #[test]
    fn conic_combine_examples() {
        let b12 = bell12_n3();
        let b13 = EntropyVector::from_integers(3, &[1, 0, 1, 1, 0, 1, 0]).unwrap();
        let sum = conic_combine(3, &[(int(1), b12.clone()), (int(1), b13.clone())]).unwrap();
        assert_eq!(sum, b12.checked_add(&b13).unwrap());
        assert!(conic_combine(3, &[]).unwrap().is_zero());
        assert_eq!(
            conic_combine(3, &[(int(2), b12.clone())]).unwrap(),
            b12.scaled(&int(2))
        );
        assert_eq!(
            conic_combine(3, &[(int(-1), b12.clone())]),
            Err(Error::NegativeCoefficient)
        );
        let bell_n2 = EntropyVector::from_integers(2, &[1, 1, 0]).unwrap();
        assert!(matches!(
            conic_combine(3, &[(int(1), bell_n2)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn text_format() {
        let bell = EntropyVector::from_integers(2, &[1, 1, 0]).unwrap();
        assert_eq!(bell.to_text(), "N 2\n1: 1\n2: 1\n12: 0\n");
        let half = EntropyVector::new(
            2,
            vec![Rational::new(1.into(), 2.into()), int(1), int(0)],
        )
        .unwrap();
        let text = half.to_text();
        assert_eq!(text, "N 2\n1: 1/2\n2: 1\n12: 0\n");
        assert_eq!(EntropyVector::parse_text(&text).unwrap(), half);
        assert!(EntropyVector::parse_text("N 2\n1: 1\n2: 1\n").is_err());
        assert!(EntropyVector::parse_text("N 2\n1: 1\n1: 1\n12: 0\n").is_err());
    }
}
