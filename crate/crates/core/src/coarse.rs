//! Coarse grainings `f: ⟦N′⟧ → ⟦N⟧` and the cones they generate.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cone::{orbit_expand, VRepCone};
use crate::entrospace::{canonical_mask, dim, ext_of_storage, EntropyVector, MAX_PARTIES};
use crate::error::{Error, Result};

/// A surjection `⟦N′⟧ → ⟦N⟧`, purifier included.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoarseMap {
    n_from: usize,
    n_to: usize,
    images: Vec<usize>,
}

impl CoarseMap {
    pub fn new(n_from: usize, n_to: usize, images: Vec<usize>) -> Result<Self> {
        if n_to == 0 || n_from > MAX_PARTIES {
            return Err(Error::UnsupportedPartyCount(if n_to == 0 { n_to } else { n_from }));
        }
        if n_from < n_to {
            return Err(Error::InvalidArity {
                from: n_from,
                to: n_to,
            });
        }
        if images.len() != n_from + 1 {
            return Err(Error::LengthMismatch {
                expected: n_from + 1,
                got: images.len(),
            });
        }
        let mut hit = vec![false; n_to + 1];
        for &p in &images {
            if p > n_to {
                return Err(Error::PartyOutOfRange { party: p, n: n_to });
            }
            hit[p] = true;
        }
        if let Some(p) = hit.iter().position(|h| !h) {
            return Err(Error::NotSurjective(p));
        }
        Ok(CoarseMap {
            n_from,
            n_to,
            images,
        })
    }

    pub fn identity(n: usize) -> Self {
        CoarseMap {
            n_from: n,
            n_to: n,
            images: (0..=n).collect(),
        }
    }

    /// Keeps parties `0..=n` and sends `n+1..=n_from` to the purifier.
    pub fn collapse_into_purifier(n_from: usize, n: usize) -> Result<Self> {
        let images = (0..=n_from).map(|p| if p <= n { p } else { 0 }).collect();
        CoarseMap::new(n_from, n, images)
    }

    pub fn n_from(&self) -> usize {
        self.n_from
    }

    pub fn n_to(&self) -> usize {
        self.n_to
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, p: usize) -> usize {
        self.images[p]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CoarseMap) -> Result<CoarseMap> {
        if inner.n_to != self.n_from {
            return Err(Error::DimensionMismatch {
                expected: self.n_from,
                got: inner.n_to,
            });
        }
        Ok(CoarseMap {
            n_from: inner.n_from,
            n_to: self.n_to,
            images: inner.images.iter().map(|&p| self.images[p]).collect(),
        })
    }

    /// Extended mask of `f⁻¹(I)` for an extended mask `I` over `⟦N⟧`.
    pub fn preimage_ext(&self, ext: u32) -> u32 {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, &p)| ext >> p & 1 == 1)
            .fold(0, |m, (q, _)| m | 1 << q)
    }

    /// For each target storage mask, the source storage mask read by the pullback.
    pub fn source_masks(&self) -> Vec<u32> {
        (1..=dim(self.n_to) as u32)
            .map(|m| canonical_mask(self.preimage_ext(ext_of_storage(m)), self.n_from))
            .collect()
    }
}

impl fmt::Display for CoarseMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

/// Parses `"0,1,1,2,2,3,3"`: position `ℓ′` holds `f(ℓ′)`.
pub fn parse_map(text: &str, n_from: usize, n_to: usize) -> Result<CoarseMap> {
    let images = text
        .trim()
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::parse(1, format!("bad party index `{}`: {e}", t.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    if images.len() != n_from + 1 {
        return Err(Error::LengthMismatch {
            expected: n_from + 1,
            got: images.len(),
        });
    }
    CoarseMap::new(n_from, n_to, images)
}

/// `Ψ_f(v)`: `r_I = S_{f⁻¹(I)}`.
pub fn pullback(f: &CoarseMap, v: &EntropyVector) -> Result<EntropyVector> {
    if v.n() != f.n_from {
        return Err(Error::DimensionMismatch {
            expected: f.n_from,
            got: v.n(),
        });
    }
    let comp = f
        .source_masks()
        .into_iter()
        .map(|m| v.at_mask(m).clone())
        .collect();
    EntropyVector::new(f.n_to, comp)
}

fn pullback_ray(source: &[u32], ray: &[BigInt]) -> Vec<BigInt> {
    source
        .iter()
        .map(|&m| {
            if m == 0 {
                BigInt::from(0)
            } else {
                ray[m as usize - 1].clone()
            }
        })
        .collect()
}

/// All surjections `⟦N′⟧ → ⟦N⟧` in lexicographic order of their image lists.
pub fn enumerate_surjections(n_from: usize, n_to: usize) -> Result<Surjections> {
    if n_from < n_to {
        return Err(Error::InvalidArity {
            from: n_from,
            to: n_to,
        });
    }
    if n_from > MAX_PARTIES {
        return Err(Error::UnsupportedPartyCount(n_from));
    }
    Ok(Surjections {
        n_from,
        n_to,
        next: Some(vec![0; n_from + 1]),
    })
}

/// Iterator returned by [`enumerate_surjections`].
pub struct Surjections {
    n_from: usize,
    n_to: usize,
    next: Option<Vec<usize>>,
}

impl Surjections {
    fn advance(&mut self) {
        let Some(cur) = self.next.as_mut() else {
            return;
        };
        for i in (0..cur.len()).rev() {
            if cur[i] < self.n_to {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                return;
            }
        }
        self.next = None;
    }
}

impl Iterator for Surjections {
    type Item = CoarseMap;

    fn next(&mut self) -> Option<CoarseMap> {
        loop {
            let cur = self.next.clone()?;
            self.advance();
            let mut hit = 0u64;
            for &p in &cur {
                hit |= 1 << p;
            }
            if hit.count_ones() as usize == self.n_to + 1 {
                return Some(CoarseMap {
                    n_from: self.n_from,
                    n_to: self.n_to,
                    images: cur,
                });
            }
        }
    }
}

/// One surjection per partition of `⟦N′⟧` into `N + 1` blocks, blocks
/// labelled in order of first appearance. Every surjection is `π ∘ g` for
/// exactly one such `g` and one permutation `π` of `⟦N⟧`.
pub fn partition_surjections(n_from: usize, n_to: usize) -> Result<Vec<CoarseMap>> {
    if n_from < n_to {
        return Err(Error::InvalidArity {
            from: n_from,
            to: n_to,
        });
    }
    let blocks = n_to + 1;
    let mut out = Vec::new();
    let mut cur = vec![0usize; n_from + 1];
    fn rec(
        i: usize,
        used: usize,
        blocks: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == cur.len() {
            if used == blocks {
                out.push(cur.clone());
            }
            return;
        }
        // Not enough positions left to open the remaining blocks.
        if blocks - used > cur.len() - i {
            return;
        }
        for b in 0..=used.min(blocks - 1) {
            cur[i] = b;
            rec(i + 1, used.max(b + 1), blocks, cur, out);
        }
    }
    let mut raw = Vec::new();
    rec(0, 0, blocks, &mut cur, &mut raw);
    for images in raw {
        out.push(CoarseMap {
            n_from,
            n_to,
            images,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaMode {
    /// Every surjection.
    #[default]
    Exhaustive,
    /// One surjection per set partition, then the orbit under permutations
    /// of `⟦N⟧`. Same generator set as `Exhaustive`.
    SymmetryReduced,
}

/// Pullbacks of every ray under every surjection `⟦N′⟧ → ⟦N⟧`, deduplicated.
pub fn build_delta(rays: &VRepCone, n_to: usize, mode: DeltaMode) -> Result<VRepCone> {
    let n_from = rays.n();
    if n_from < n_to {
        return Err(Error::InvalidArity {
            from: n_from,
            to: n_to,
        });
    }
    let pull = |f: CoarseMap| -> BTreeSet<Vec<BigInt>> {
        let source = f.source_masks();
        rays.rays()
            .iter()
            .map(|r| pullback_ray(&source, r))
            .collect()
    };
    let merge = |mut a: BTreeSet<Vec<BigInt>>, b: BTreeSet<Vec<BigInt>>| {
        a.extend(b);
        a
    };
    let gens = match mode {
        DeltaMode::Exhaustive => enumerate_surjections(n_from, n_to)?
            .par_bridge()
            .map(pull)
            .reduce(BTreeSet::new, merge),
        DeltaMode::SymmetryReduced => partition_surjections(n_from, n_to)?
            .into_par_iter()
            .map(pull)
            .reduce(BTreeSet::new, merge),
    };
    let cone = VRepCone::new(n_to, gens.into_iter().collect())?;
    Ok(match mode {
        DeltaMode::Exhaustive => cone,
        DeltaMode::SymmetryReduced => orbit_expand(&cone),
    })
}

/// `v ⊗ |0⟩⟨0|` on `N′ − N` extra parties: `S_K = S_{K ∩ [N]}`.
pub fn tensor_pad(v: &EntropyVector, n_to: usize) -> Result<EntropyVector> {
    if n_to <= v.n() {
        return Err(Error::InvalidArity {
            from: v.n(),
            to: n_to,
        });
    }
    let low = (1u32 << v.n()) - 1;
    EntropyVector::from_fn(n_to, |m| v.at_mask(m & low).clone())
}
