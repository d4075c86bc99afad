//! Hypergraph models of entanglement.
//!
//! A model is a simple weighted hypergraph whose boundary vertices carry a
//! party label in `⟦N⟧`. `S_I` is the cheapest cost of a vertex set that
//! contains exactly the boundary vertices labelled by `I`; a hyperedge costs
//! its weight when it has vertices on both sides.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coarse::CoarseMap;
use crate::entrospace::{
    dim, format_rational, parse_rational, EntropyVector, PartySet, Rational, MAX_PARTIES,
};
use crate::error::{Error, Result};

/// Vertex sets are stored as bitmasks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    /// Vertex indices, sorted.
    pub vertices: Vec<usize>,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphModel {
    n: usize,
    vertices: Vec<String>,
    boundary: Vec<Option<usize>>,
    hyperedges: Vec<Hyperedge>,
}

/// A minimum `I`-cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutWitness {
    pub subset: PartySet,
    /// Vertex indices on the `I` side, sorted.
    pub cut: Vec<usize>,
    pub cost: Rational,
}

impl HypergraphModel {
    /// Builds a model from named vertices. Unknown names are an error; every
    /// structural property is left to [`HypergraphModel::validate`].
    pub fn new(
        n: usize,
        vertices: Vec<String>,
        boundary: &[(&str, usize)],
        hyperedges: Vec<(Vec<&str>, Rational)>,
    ) -> Result<Self> {
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::ModelInvalid(vec![format!("unknown vertex `{name}`")]))
        };
        let mut b = vec![None; vertices.len()];
        for &(name, party) in boundary {
            b[lookup(name)?] = Some(party);
        }
        let edges = hyperedges
            .into_iter()
            .map(|(vs, weight)| {
                let mut vertices = vs.into_iter().map(&lookup).collect::<Result<Vec<_>>>()?;
                vertices.sort_unstable();
                Ok(Hyperedge { vertices, weight })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HypergraphModel {
            n,
            vertices,
            boundary: b,
            hyperedges: edges,
        })
    }

    /// One boundary vertex per party of `⟦N⟧` and a single hyperedge over
    /// the vertices of `parties` (a Bell pair for two parties, GHZ otherwise).
    pub fn single_edge(n: usize, parties: &[usize], weight: Rational) -> Result<Self> {
        let names: Vec<String> = (0..=n).map(|p| format!("b{p}")).collect();
        let boundary: Vec<(&str, usize)> =
            names.iter().enumerate().map(|(p, s)| (s.as_str(), p)).collect();
        let edge: Vec<&str> = parties
            .iter()
            .map(|&p| names.get(p).map(String::as_str))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::PartyOutOfRange {
                party: parties.iter().copied().max().unwrap_or(0),
                n,
            })?;
        HypergraphModel::new(n, names.clone(), &boundary, vec![(edge, weight)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn boundary(&self) -> &[Option<usize>] {
        &self.boundary
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.boundary[v].is_none())
            .collect()
    }

    /// All violations of the model invariants; empty when valid.
    pub fn validate(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if self.n == 0 || self.n > MAX_PARTIES {
            errs.push(format!("unsupported party count N = {}", self.n));
        }
        if self.vertices.len() > MAX_VERTICES {
            errs.push(format!(
                "{} vertices exceed the supported {MAX_VERTICES}",
                self.vertices.len()
            ));
        }
        let mut names = BTreeSet::new();
        for v in &self.vertices {
            if !names.insert(v) {
                errs.push(format!("duplicate vertex name `{v}`"));
            }
        }
        let mut covered = vec![false; self.n + 1];
        for (v, b) in self.boundary.iter().enumerate() {
            if let Some(p) = *b {
                if p > self.n {
                    errs.push(format!(
                        "vertex `{}` labelled with party {p} > N = {}",
                        self.vertices[v], self.n
                    ));
                } else {
                    covered[p] = true;
                }
            }
        }
        for (p, c) in covered.iter().enumerate() {
            if !c {
                errs.push(format!("boundary map is not surjective: party {p} unassigned"));
            }
        }
        let mut seen = BTreeSet::new();
        for (i, e) in self.hyperedges.iter().enumerate() {
            let distinct: BTreeSet<usize> = e.vertices.iter().copied().collect();
            if distinct.len() != e.vertices.len() {
                errs.push(format!("hyperedge {i} repeats a vertex"));
            }
            if distinct.len() < 2 {
                errs.push(format!("hyperedge {i} has fewer than 2 distinct vertices"));
            }
            if e.vertices.iter().any(|&v| v >= self.vertices.len()) {
                errs.push(format!("hyperedge {i} references a missing vertex"));
            }
            if !e.weight.is_positive() {
                errs.push(format!(
                    "hyperedge {i} has non-positive weight {}",
                    format_rational(&e.weight)
                ));
            }
            if !seen.insert(distinct) {
                errs.push(format!("hyperedge {i} is a repeated edge"));
            }
        }
        errs
    }

    fn check(&self) -> Result<()> {
        let errs = self.validate();
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::ModelInvalid(errs))
        }
    }

    fn edge_masks(&self) -> Vec<(u64, &Rational)> {
        self.hyperedges
            .iter()
            .map(|e| (e.vertices.iter().fold(0u64, |m, &v| m | 1 << v), &e.weight))
            .collect()
    }

    /// Vertices forced into an `I`-cut: boundary vertices labelled by `I`.
    fn forced_in(&self, i: &PartySet) -> u64 {
        self.boundary
            .iter()
            .enumerate()
            .filter(|(_, b)| matches!(b, Some(p) if *p >= 1 && i.mask() >> (p - 1) & 1 == 1))
            .fold(0u64, |m, (v, _)| m | 1 << v)
    }

    /// Minimum `I`-cut over all assignments of internal vertices. Ties go to
    /// the cut whose sorted vertex-index list is lexicographically smallest.
    pub fn min_cut(&self, i: &PartySet) -> Result<CutWitness> {
        self.check()?;
        if i.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: i.n(),
            });
        }
        if i.is_empty() {
            return Err(Error::IndexOfEmptySet);
        }
        Ok(self.min_cut_unchecked(i))
    }

    fn min_cut_unchecked(&self, i: &PartySet) -> CutWitness {
        let internal = self.internal_vertices();
        let edges = self.edge_masks();
        let boundary_mask: u64 = self
            .boundary
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_some())
            .fold(0u64, |m, (v, _)| m | 1 << v);
        let mut search = CutSearch {
            internal: &internal,
            edges: &edges,
            best: None,
        };
        search.descend(0, self.forced_in(i), boundary_mask);
        let (cost, inside) = search.best.expect("at least one assignment");
        let cut = (0..self.vertices.len())
            .filter(|v| inside >> v & 1 == 1)
            .collect();
        CutWitness {
            subset: *i,
            cut,
            cost,
        }
    }

    /// `S_I` = min-cut cost for every nonempty `I ⊆ [N]`.
    pub fn entropy_vector(&self) -> Result<EntropyVector> {
        self.check()?;
        let comp: Vec<Rational> = (1..=dim(self.n) as u32)
            .into_par_iter()
            .map(|m| {
                let i = PartySet::from_mask(self.n, m).expect("in range");
                self.min_cut_unchecked(&i).cost
            })
            .collect();
        EntropyVector::new(self.n, comp)
    }

    /// Same hypergraph with the boundary labels pushed through `f`.
    pub fn relabel(&self, f: &CoarseMap) -> Result<Self> {
        if f.n_from() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: f.n_from(),
            });
        }
        let boundary = self
            .boundary
            .iter()
            .map(|b| b.map(|p| f.image(p)))
            .collect();
        Ok(HypergraphModel {
            n: f.n_to(),
            vertices: self.vertices.clone(),
            boundary,
            hyperedges: self.hyperedges.clone(),
        })
    }

    /// Disjoint union; vertex names are prefixed `a.` and `b.`.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let off = self.vertices.len();
        let vertices = self
            .vertices
            .iter()
            .map(|v| format!("a.{v}"))
            .chain(other.vertices.iter().map(|v| format!("b.{v}")))
            .collect();
        let boundary = self
            .boundary
            .iter()
            .chain(&other.boundary)
            .copied()
            .collect();
        let hyperedges = self
            .hyperedges
            .iter()
            .cloned()
            .chain(other.hyperedges.iter().map(|e| Hyperedge {
                vertices: e.vertices.iter().map(|v| v + off).collect(),
                weight: e.weight.clone(),
            }))
            .collect();
        Ok(HypergraphModel {
            n: self.n,
            vertices,
            boundary,
            hyperedges,
        })
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            n: self.n,
            vertices: self.vertices.clone(),
            boundary: self
                .boundary
                .iter()
                .enumerate()
                .filter_map(|(v, b)| b.map(|p| (self.vertices[v].clone(), p)))
                .collect(),
            hyperedges: self
                .hyperedges
                .iter()
                .map(|e| EdgeFile {
                    vertices: e.vertices.iter().map(|&v| self.vertices[v].clone()).collect(),
                    weight: format_rational(&e.weight),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.to_string()))?;
        let boundary: Vec<(&str, usize)> =
            file.boundary.iter().map(|(k, &p)| (k.as_str(), p)).collect();
        let edges = file
            .hyperedges
            .iter()
            .map(|e| {
                let w = parse_rational(&e.weight).map_err(|m| Error::parse(0, m))?;
                Ok((e.vertices.iter().map(String::as_str).collect(), w))
            })
            .collect::<Result<Vec<_>>>()?;
        HypergraphModel::new(file.n, file.vertices.clone(), &boundary, edges)
    }
}

struct CutSearch<'a> {
    internal: &'a [usize],
    edges: &'a [(u64, &'a Rational)],
    best: Option<(Rational, u64)>,
}

impl CutSearch<'_> {
    /// `inside`: vertices placed on the `I` side so far; `decided`: vertices
    /// whose side is fixed.
    fn descend(&mut self, t: usize, inside: u64, decided: u64) {
        // Edges with a decided vertex on each side already cross.
        let lower: Rational = self
            .edges
            .iter()
            .filter(|(e, _)| e & inside != 0 && e & decided & !inside != 0)
            .map(|(_, w)| (*w).clone())
            .sum();
        if let Some((best, _)) = &self.best {
            if lower > *best {
                return;
            }
        }
        if t == self.internal.len() {
            let better = match &self.best {
                None => true,
                Some((best, cut)) => lower < *best || (lower == *best && lex_less(inside, *cut)),
            };
            if better {
                self.best = Some((lower, inside));
            }
            return;
        }
        let v = 1u64 << self.internal[t];
        self.descend(t + 1, inside, decided | v);
        self.descend(t + 1, inside | v, decided | v);
    }
}

/// Lexicographic order on the sorted element lists of two vertex sets.
pub fn lex_less(a: u64, b: u64) -> bool {
    if a == b {
        return false;
    }
    let t = (a ^ b).trailing_zeros();
    let (with_t, without_t) = if a >> t & 1 == 1 { (a, b) } else { (b, a) };
    // The set lacking `t` is smaller only when it has nothing beyond `t`.
    let winner = if without_t >> t == 0 { without_t } else { with_t };
    winner == a
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    n: usize,
    vertices: Vec<String>,
    boundary: BTreeMap<String, usize>,
    hyperedges: Vec<EdgeFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    vertices: Vec<String>,
    weight: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    Fig1,
    Fig2,
    Fig3,
}

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::Fig1, Fixture::Fig2, Fixture::Fig3];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Fig1 => "fig1",
            Fixture::Fig2 => "fig2",
            Fixture::Fig3 => "fig3",
        }
    }
}

impl std::str::FromStr for Fixture {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Fixture::Fig1),
            "fig2" => Ok(Fixture::Fig2),
            "fig3" => Ok(Fixture::Fig3),
            other => Err(Error::UnknownFixture(other.to_string())),
        }
    }
}

fn w(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Built-in models.
///
/// - `fig1` (N = 6): internal `i1, i2, i3` each joined by weight-1 edges to
///   boundary pairs {1,2}, {3,4}, {5,6}; one weight-2 hyperedge over
///   `i1, i2, i3` and the purifier vertex `b0`.
/// - `fig2` (N = 9): internal `i1..i5` each joined by weight-1 edges to
///   boundary pairs {1,2}, {3,4}, {5,6}, {7,8}, {9,0}; one weight-2
///   hyperedge over the five internal vertices.
/// - `fig3` (N = 8): internal `top, right, bottom, left, center`. Weight-2
///   edges top–3, top–4, bottom–0, center–7, center–8; weight-1 edges
///   left–1, left–2, right–5, right–6. Two weight-2 hyperedges:
///   {top, left, bottom, center} and {top, right, bottom, center}.
pub fn fixture(name: Fixture) -> HypergraphModel {
    let build = |n: usize, internal: &[&str], edges: Vec<(Vec<&str>, Rational)>| {
        let mut vertices: Vec<String> = internal.iter().map(|s| s.to_string()).collect();
        vertices.extend((0..=n).map(|p| format!("b{p}")));
        let names: Vec<String> = (0..=n).map(|p| format!("b{p}")).collect();
        let boundary: Vec<(&str, usize)> =
            names.iter().enumerate().map(|(p, s)| (s.as_str(), p)).collect();
        HypergraphModel::new(n, vertices, &boundary, edges).expect("fixture names resolve")
    };
    match name {
        Fixture::Fig1 => build(
            6,
            &["i1", "i2", "i3"],
            vec![
                (vec!["i1", "b1"], w(1)),
                (vec!["i1", "b2"], w(1)),
                (vec!["i2", "b3"], w(1)),
                (vec!["i2", "b4"], w(1)),
                (vec!["i3", "b5"], w(1)),
                (vec!["i3", "b6"], w(1)),
                (vec!["i1", "i2", "i3", "b0"], w(2)),
            ],
        ),
        Fixture::Fig2 => build(
            9,
            &["i1", "i2", "i3", "i4", "i5"],
            vec![
                (vec!["i1", "b1"], w(1)),
                (vec!["i1", "b2"], w(1)),
                (vec!["i2", "b3"], w(1)),
                (vec!["i2", "b4"], w(1)),
                (vec!["i3", "b5"], w(1)),
                (vec!["i3", "b6"], w(1)),
                (vec!["i4", "b7"], w(1)),
                (vec!["i4", "b8"], w(1)),
                (vec!["i5", "b9"], w(1)),
                (vec!["i5", "b0"], w(1)),
                (vec!["i1", "i2", "i3", "i4", "i5"], w(2)),
            ],
        ),
        Fixture::Fig3 => build(
            8,
            &["top", "right", "bottom", "left", "center"],
            vec![
                (vec!["top", "b3"], w(2)),
                (vec!["top", "b4"], w(2)),
                (vec!["right", "b5"], w(1)),
                (vec!["right", "b6"], w(1)),
                (vec!["left", "b2"], w(1)),
                (vec!["left", "b1"], w(1)),
                (vec!["bottom", "b0"], w(2)),
                (vec!["center", "b7"], w(2)),
                (vec!["center", "b8"], w(2)),
                (vec!["top", "left", "bottom", "center"], w(2)),
                (vec!["top", "right", "bottom", "center"], w(2)),
            ],
        ),
    }
}

/// Counts `(vertices, weight-1 edges, weight-2 edges of arity 2, hyperedges of arity > 2)`.
pub fn shape_counts(h: &HypergraphModel) -> (usize, usize, usize, usize) {
    let two = w(2);
    let one = w(1);
    let e1 = h
        .hyperedges
        .iter()
        .filter(|e| e.vertices.len() == 2 && e.weight == one)
        .count();
    let e2 = h
        .hyperedges
        .iter()
        .filter(|e| e.vertices.len() == 2 && e.weight == two)
        .count();
    let hyper = h.hyperedges.iter().filter(|e| e.vertices.len() > 2).count();
    (h.vertices.len(), e1, e2, hyper)
}

impl CutWitness {
    /// Recomputes the cost of the stored cut and checks the boundary condition.
    pub fn verify(&self, h: &HypergraphModel) -> bool {
        let inside: u64 = self.cut.iter().fold(0, |m, &v| m | 1 << v);
        if (inside & boundary_mask(h)) != h.forced_in(&self.subset) {
            return false;
        }
        let cost: Rational = h
            .edge_masks()
            .iter()
            .filter(|(e, _)| e & inside != 0 && e & !inside != 0)
            .map(|(_, w)| (*w).clone())
            .sum();
        cost == self.cost
    }
}

fn boundary_mask(h: &HypergraphModel) -> u64 {
    h.boundary
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_some())
        .fold(0u64, |m, (v, _)| m | 1 << v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell_graph(with_purifier: bool) -> HypergraphModel {
        let mut vertices = vec!["x".to_string(), "y".to_string()];
        let mut boundary = vec![("x", 1), ("y", 2)];
        if with_purifier {
            vertices.push("o".into());
            boundary.push(("o", 0));
        }
        HypergraphModel::new(2, vertices, &boundary, vec![(vec!["x", "y"], w(1))]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let errs = bell_graph(false).validate();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].contains("party 0 unassigned"));
        assert!(bell_graph(true).validate().is_empty());

        let mut dup = bell_graph(true);
        dup.hyperedges.push(dup.hyperedges[0].clone());
        assert!(dup.validate().iter().any(|e| e.contains("repeated edge")));

        let mut neg = bell_graph(true);
        neg.hyperedges[0].weight = w(0);
        assert!(neg.validate().iter().any(|e| e.contains("non-positive")));

        let mut loop_edge = bell_graph(true);
        loop_edge.hyperedges[0].vertices = vec![0];
        assert!(loop_edge.validate().iter().any(|e| e.contains("fewer than 2")));

        assert!(matches!(
            bell_graph(false).entropy_vector(),
            Err(Error::ModelInvalid(_))
        ));
    }

    #[test]
    fn min_cut_examples() {
        let bell = bell_graph(true);
        let c = bell.min_cut(&PartySet::new(2, &[1]).unwrap()).unwrap();
        assert_eq!(c.cost, w(1));
        assert!(c.verify(&bell));

        let fig1 = fixture(Fixture::Fig1);
        let c = fig1.min_cut(&PartySet::new(6, &[1]).unwrap()).unwrap();
        assert_eq!(c.cost, w(1));
        assert!(c.verify(&fig1));
        let c = fig1
            .min_cut(&PartySet::new(6, &[1, 2, 3, 4, 5, 6]).unwrap())
            .unwrap();
        assert_eq!(c.cost, w(2));
        assert!(c.verify(&fig1));
        assert_eq!(
            fig1.min_cut(&PartySet::new(6, &[]).unwrap()),
            Err(Error::IndexOfEmptySet)
        );
    }

    #[test]
    fn entropy_vector_examples() {
        assert_eq!(
            bell_graph(true).entropy_vector().unwrap(),
            EntropyVector::from_integers(2, &[1, 1, 0]).unwrap()
        );
        let b12 = HypergraphModel::single_edge(3, &[1, 2], w(1)).unwrap();
        let b13 = HypergraphModel::single_edge(3, &[1, 3], w(1)).unwrap();
        let union = b12.disjoint_union(&b13).unwrap();
        assert_eq!(
            union.entropy_vector().unwrap(),
            b12.entropy_vector()
                .unwrap()
                .checked_add(&b13.entropy_vector().unwrap())
                .unwrap()
        );
    }

    #[test]
    fn relabel_examples() {
        let fig1 = fixture(Fixture::Fig1);
        let f = CoarseMap::new(6, 3, vec![0, 1, 1, 2, 2, 3, 3]).unwrap();
        let g = fig1.relabel(&f).unwrap();
        assert_eq!(
            g.entropy_vector().unwrap(),
            EntropyVector::from_integers(3, &[2; 7]).unwrap()
        );
        let id = CoarseMap::identity(6);
        assert_eq!(fig1.relabel(&id).unwrap(), fig1);

        let swap = CoarseMap::new(2, 2, vec![0, 2, 1]).unwrap();
        let swapped = bell_graph(true).relabel(&swap).unwrap();
        assert_eq!(swapped.boundary(), &[Some(2), Some(1), Some(0)]);
    }

    #[test]
    fn fixture_shapes() {
        assert_eq!(shape_counts(&fixture(Fixture::Fig1)), (10, 6, 0, 1));
        assert_eq!(shape_counts(&fixture(Fixture::Fig2)), (15, 10, 0, 1));
        let (v, e1, e2, hyper) = shape_counts(&fixture(Fixture::Fig3));
        assert_eq!((v, e1 + e2, hyper), (14, 9, 2));
        for f in Fixture::ALL {
            assert!(fixture(f).validate().is_empty(), "{}", f.name());
        }
        assert_eq!(
            "fig4".parse::<Fixture>(),
            Err(Error::UnknownFixture("fig4".into()))
        );
    }

    #[test]
    fn json_round_trip() {
        for f in Fixture::ALL {
            let h = fixture(f);
            let text = h.to_json();
            let back = HypergraphModel::from_json(&text).unwrap();
            assert_eq!(back, h);
            assert_eq!(back.to_json(), text);
        }
        let half = HypergraphModel::single_edge(2, &[1, 2], Rational::new(1.into(), 2.into()))
            .unwrap();
        assert!(half.to_json().contains("\"1/2\""));
        assert_eq!(HypergraphModel::from_json(&half.to_json()).unwrap(), half);
    }
}
