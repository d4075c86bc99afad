//! Property suites shared by the `properties` and `acceptance` targets, plus
//! independent oracles they compare against.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use entcone::coarse::{pullback, CoarseMap};
use entcone::cone::{double_description, HRepCone};
use entcone::entrospace::{canonical_mask, dim, full_ext_mask};
use entcone::exactla::{
    bareiss_rank, conic_membership, rank_certificate, RationalMatrix,
};
use entcone::hypergraph::HypergraphModel;
use entcone::ineq::{
    family_instances, ingleton_instances, sa_instances, ssa_instances, Family, InstanceSet,
};
use entcone::{EntropyVector, PartyPermutation, Rational};

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    )
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

// ---------------------------------------------------------------------------
// Random hypergraph models

#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub n: usize,
    pub internal: usize,
    /// Labels of boundary vertices beyond the one-per-party minimum.
    pub extra: Vec<usize>,
    /// (vertex bitmask, numerator, denominator)
    pub edges: Vec<(u32, i64, i64)>,
}

impl ModelSpec {
    pub fn build(&self) -> HypergraphModel {
        let mut names: Vec<String> = (0..self.internal).map(|i| format!("i{i}")).collect();
        names.extend((0..=self.n).map(|p| format!("b{p}")));
        names.extend((0..self.extra.len()).map(|j| format!("e{j}")));
        let mut boundary: Vec<(String, usize)> =
            (0..=self.n).map(|p| (format!("b{p}"), p)).collect();
        boundary.extend(self.extra.iter().enumerate().map(|(j, &p)| (format!("e{j}"), p)));
        let total = names.len();
        let mut seen = BTreeSet::new();
        let mut edges: Vec<(Vec<String>, Rational)> = Vec::new();
        for &(mask, p, q) in &self.edges {
            let m = mask & ((1u32 << total) - 1);
            if m.count_ones() < 2 || !seen.insert(m) {
                continue;
            }
            let vs = (0..total).filter(|v| m >> v & 1 == 1).map(|v| names[v].clone()).collect();
            edges.push((vs, rat(p, q)));
        }
        let b: Vec<(&str, usize)> = boundary.iter().map(|(s, p)| (s.as_str(), *p)).collect();
        let e = edges
            .iter()
            .map(|(vs, w)| (vs.iter().map(String::as_str).collect(), w.clone()))
            .collect();
        HypergraphModel::new(self.n, names.clone(), &b, e).expect("names resolve")
    }
}

pub fn model_spec(max_n: usize, max_internal: usize) -> impl Strategy<Value = ModelSpec> {
    (1..=max_n, 0..=max_internal).prop_flat_map(|(n, internal)| {
        (
            Just(n),
            Just(internal),
            prop::collection::vec(0..=n, 0..=2),
            prop::collection::vec((any::<u32>(), 1i64..=3, 1i64..=2), 1..=8),
        )
            .prop_map(|(n, internal, extra, edges)| ModelSpec {
                n,
                internal,
                extra,
                edges,
            })
    })
}

/// Cost of every assignment of internal vertices, no pruning. Returns the
/// minimum cost and the lexicographically smallest minimizing cut set.
pub fn naive_min_cut(h: &HypergraphModel, ext: u32) -> (Rational, Vec<usize>) {
    let nv = h.vertices().len();
    let internal: Vec<usize> = (0..nv).filter(|&v| h.boundary()[v].is_none()).collect();
    let forced: Vec<usize> = (0..nv)
        .filter(|&v| matches!(h.boundary()[v], Some(p) if ext >> p & 1 == 1))
        .collect();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for a in 0u64..(1 << internal.len()) {
        let mut cut: Vec<usize> = forced.clone();
        cut.extend((0..internal.len()).filter(|t| a >> t & 1 == 1).map(|t| internal[t]));
        cut.sort_unstable();
        let inside: BTreeSet<usize> = cut.iter().copied().collect();
        let cost: Rational = h
            .hyperedges()
            .iter()
            .filter(|e| {
                let k = e.vertices.iter().filter(|v| inside.contains(v)).count();
                k > 0 && k < e.vertices.len()
            })
            .map(|e| e.weight.clone())
            .sum();
        let better = match &best {
            None => true,
            Some((c, s)) => cost < *c || (cost == *c && cut < *s),
        };
        if better {
            best = Some((cost, cut));
        }
    }
    best.unwrap()
}

// ---------------------------------------------------------------------------
// Conic membership oracle (Carathéodory: some independent subset of the rays
// represents q with nonnegative coefficients).

fn solve_exact(cols: &[&Vec<Rational>], q: &[Rational]) -> Option<Vec<Rational>> {
    let m = q.len();
    let k = cols.len();
    let mut a: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(q[i].clone());
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            return None; // dependent columns
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=k {
                    let d = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..m).any(|i| !a[i][k].is_zero()) {
        return None;
    }
    Some((0..k).map(|c| a[c][k].clone()).collect())
}

pub fn caratheodory_member(q: &[Rational], rays: &[Vec<Rational>]) -> bool {
    if q.iter().all(Zero::is_zero) {
        return true;
    }
    for s in 1u32..(1 << rays.len()) {
        let cols: Vec<&Vec<Rational>> = (0..rays.len())
            .filter(|i| s >> i & 1 == 1)
            .map(|i| &rays[i])
            .collect();
        if let Some(l) = solve_exact(&cols, q) {
            if l.iter().all(|x| !x.is_negative()) {
                return true;
            }
        }
    }
    false
}

fn int_vec(len: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, len)
}

fn to_rat(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

fn surjection(n_from: usize, n_to: usize) -> impl Strategy<Value = CoarseMap> {
    // First n_to + 1 positions of a shuffled identity guarantee surjectivity.
    (
        Just((0..=n_from).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(0..=n_to, n_from + 1),
    )
        .prop_map(move |(order, rest)| {
            let mut images = rest;
            for (k, &pos) in order.iter().take(n_to + 1).enumerate() {
                images[pos] = k;
            }
            CoarseMap::new(n_from, n_to, images).expect("surjective")
        })
}

fn permutation(n: usize) -> impl Strategy<Value = PartyPermutation> {
    Just((0..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| PartyPermutation::new(v).unwrap())
}

fn vector(n: usize) -> impl Strategy<Value = EntropyVector> {
    int_vec(dim(n), -5, 9).prop_map(move |v| EntropyVector::from_integers(n, &v).unwrap())
}

// ---------------------------------------------------------------------------
// Suites

/// `S_K = S_{⟦N⟧∖K}` for every hypergraph vector, checked against the
/// unpruned min-cut over extended subsets.
pub fn purifier_symmetry() -> Result<(), String> {
    run(48, model_spec(4, 4), |spec| {
        let h = spec.build();
        let v = h.entropy_vector().map_err(|e| TestCaseError::fail(e.to_string()))?;
        let full = full_ext_mask(spec.n);
        for ext in 1..full {
            let direct = naive_min_cut(&h, ext).0;
            let comp = naive_min_cut(&h, full & !ext).0;
            prop_assert_eq!(&direct, &comp);
            prop_assert_eq!(v.at_ext(ext), &direct);
        }
        Ok(())
    })
}

/// Pruned search equals the unpruned oracle, tie-break included.
pub fn min_cut_oracle() -> Result<(), String> {
    let strat = (1usize..=3, 0usize..=12).prop_flat_map(|(n, internal)| {
        (
            Just(n),
            Just(internal),
            prop::collection::vec(0..=n, 0..=1),
            prop::collection::vec((any::<u32>(), 1i64..=3, 1i64..=2), 1..=14),
        )
            .prop_map(|(n, internal, extra, edges)| ModelSpec {
                n,
                internal,
                extra,
                edges,
            })
    });
    run(24, strat, |spec| {
        let h = spec.build();
        for m in 1..=dim(spec.n) as u32 {
            let i = entcone::PartySet::from_mask(spec.n, m).unwrap();
            let w = h.min_cut(&i).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let (cost, cut) = naive_min_cut(&h, m << 1);
            prop_assert_eq!(&w.cost, &cost);
            prop_assert_eq!(&w.cut, &cut);
            prop_assert!(w.verify(&h));
        }
        Ok(())
    })
}

/// Relabelling the boundary and pulling back the vector commute.
pub fn relabel_commutes_with_pullback() -> Result<(), String> {
    let strat = model_spec(5, 4).prop_flat_map(|spec| {
        let n = spec.n;
        (Just(spec), 1..=n).prop_flat_map(move |(spec, to)| (Just(spec), surjection(n, to)))
    });
    run(48, strat, |(spec, f)| {
        let h = spec.build();
        let lhs = h
            .relabel(&f)
            .and_then(|g| g.entropy_vector())
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let rhs = pullback(&f, &h.entropy_vector().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

/// `Ψ_g ∘ Ψ_f = Ψ_{g∘f}`.
pub fn pullback_functoriality() -> Result<(), String> {
    let strat = (2usize..=6).prop_flat_map(|n2| {
        (1..=n2).prop_flat_map(move |n1| {
            (1..=n1).prop_flat_map(move |n0| {
                (vector(n2), surjection(n2, n1), surjection(n1, n0))
            })
        })
    });
    run(64, strat, |(v, f, g)| {
        let two_step = pullback(&g, &pullback(&f, &v).unwrap()).unwrap();
        let one_step = pullback(&g.compose(&f).unwrap(), &v).unwrap();
        prop_assert_eq!(two_step, one_step);
        Ok(())
    })
}

/// Group laws of the party permutations and their action on vectors.
pub fn permutation_group_laws() -> Result<(), String> {
    let strat = (1usize..=5)
        .prop_flat_map(|n| (permutation(n), permutation(n), permutation(n), vector(n)));
    run(64, strat, |(a, b, c, v)| {
        let n = a.n();
        let id = PartyPermutation::identity(n);
        prop_assert_eq!(a.compose(&b.compose(&c)), a.compose(&b).compose(&c));
        prop_assert_eq!(a.compose(&id), a.clone());
        prop_assert_eq!(a.compose(&a.inverse()), id.clone());
        let ab = v.apply_permutation(&a.compose(&b)).unwrap();
        let seq = v.apply_permutation(&b).unwrap().apply_permutation(&a).unwrap();
        prop_assert_eq!(ab, seq);
        prop_assert_eq!(v.apply_permutation(&id).unwrap(), v.clone());
        Ok(())
    })
}

fn closed(set: &InstanceSet, pi: &PartyPermutation) -> bool {
    set.functionals()
        .iter()
        .all(|f| set.contains_functional(&f.permuted(pi).unwrap()))
}

/// Every instance family is mapped onto itself by every permutation, and
/// permuting a functional and a vector together preserves its value.
pub fn instance_set_closure() -> Result<(), String> {
    let strat = (2usize..=4).prop_flat_map(|n| (permutation(n), vector(n)));
    run(32, strat, |(pi, v)| {
        let n = pi.n();
        let mut sets = vec![sa_instances(n).unwrap(), ssa_instances(n).unwrap()];
        if n >= 3 {
            sets.push(ingleton_instances(n).unwrap());
        }
        let pv = v.apply_permutation(&pi).unwrap();
        for s in &sets {
            prop_assert!(closed(s, &pi), "{} not closed", s.family());
            for f in s.functionals() {
                let g = f.permuted(&pi).unwrap();
                prop_assert_eq!(f.evaluate(&v).unwrap(), g.evaluate(&pv).unwrap());
            }
        }
        Ok(())
    })
}

/// Membership certificates verify and agree with the Carathéodory oracle.
pub fn membership_certificates() -> Result<(), String> {
    let strat = (1usize..=4).prop_flat_map(|d| {
        (
            prop::collection::vec(int_vec(d, -3, 3), 0..=5),
            int_vec(d, -4, 4),
            prop::collection::vec(0i64..=3, 5),
            any::<bool>(),
        )
    });
    run(160, strat, |(rays, q, lambda, combine)| {
        let rays: Vec<Vec<Rational>> = rays.iter().map(|r| to_rat(r)).collect();
        // Half the cases use a known nonnegative combination of the rays.
        let q = if combine && !rays.is_empty() {
            let mut acc = vec![Rational::zero(); q.len()];
            for (r, &l) in rays.iter().zip(&lambda) {
                for (a, x) in acc.iter_mut().zip(r) {
                    *a = &*a + x * Rational::from_integer(l.into());
                }
            }
            acc
        } else {
            to_rat(&q)
        };
        let c = conic_membership(&q, &rays).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(c.verify(&q, &rays));
        prop_assert_eq!(c.is_member(), caratheodory_member(&q, &rays));
        if combine && !rays.is_empty() {
            prop_assert!(c.is_member());
        }
        Ok(())
    })
}

/// Rank statements: Bareiss, the certified path and the transpose agree, and
/// certificates verify.
pub fn rank_certificates() -> Result<(), String> {
    let strat = (1usize..=7, 1usize..=7).prop_flat_map(|(r, c)| {
        (
            Just(c),
            prop::collection::vec(int_vec(c, -3, 3), r),
            prop::collection::vec(0usize..r, 0..=3),
        )
    });
    run(160, strat, |(cols, mut rows, dup)| {
        // Duplicated rows force rank deficiency.
        for d in dup {
            let row = rows[d].clone();
            rows.push(row.iter().map(|x| 2 * x).collect());
        }
        let m = RationalMatrix::from_integer_rows(cols, &rows).unwrap();
        let r = bareiss_rank(&m);
        prop_assert_eq!(r, bareiss_rank(&m.transpose()));
        let int_rows = m.integer_rows();
        let cert = rank_certificate(&int_rows, cols, None);
        prop_assert_eq!(cert.rank, r);
        prop_assert!(cert.verify(&int_rows));
        let mut forged = cert.clone();
        forged.rank += 1;
        prop_assert!(!forged.verify(&int_rows) || r == cols);
        Ok(())
    })
}

/// SA and SSA are nonnegative on every hypergraph vector.
pub fn sa_ssa_nonnegative() -> Result<(), String> {
    run(48, model_spec(4, 4), |spec| {
        let h = spec.build();
        let v = h.entropy_vector().unwrap();
        let poly = family_instances(Family::Poly, spec.n).unwrap();
        for f in poly.functionals() {
            prop_assert!(!f.evaluate(&v).unwrap().is_negative(), "{} < 0", f.label());
        }
        Ok(())
    })
}

/// Double description is independent of the input order and returns rays
/// that satisfy every inequality.
pub fn double_description_order_invariance() -> Result<(), String> {
    let strat = prop_oneof![Just((Family::Sa, 3)), Just((Family::Poly, 3)), Just((Family::Sa, 2))]
        .prop_flat_map(|(fam, n)| {
            let len = family_instances(fam, n).unwrap().len();
            (Just(fam), Just(n), Just((0..len).collect::<Vec<_>>()).prop_shuffle())
        });
    let reference: Vec<_> = [(Family::Sa, 3), (Family::Poly, 3), (Family::Sa, 2)]
        .iter()
        .map(|&(f, n)| {
            (f, n, double_description(&HRepCone::from_instances(&family_instances(f, n).unwrap())).unwrap())
        })
        .collect();
    run(24, strat, |(fam, n, order)| {
        let set = family_instances(fam, n).unwrap();
        let shuffled: Vec<_> = order.iter().map(|&i| set.functionals()[i].clone()).collect();
        let h = HRepCone::new(n, shuffled).unwrap();
        let rays = double_description(&h).unwrap();
        let expected = &reference.iter().find(|r| r.0 == fam && r.1 == n).unwrap().2;
        prop_assert_eq!(&rays, expected);
        for r in rays.rays() {
            for f in h.functionals() {
                prop_assert!(!f.evaluate_int(r).is_negative());
            }
        }
        Ok(())
    })
}

/// Canonical lookup agrees with the complement rule.
pub fn canonical_lookup() -> Result<(), String> {
    let strat = (1usize..=6).prop_flat_map(|n| (Just(n), 0u32..(1 << (n + 1))));
    run(128, strat, |(n, ext)| {
        let full = full_ext_mask(n);
        prop_assert_eq!(canonical_mask(ext, n), canonical_mask(full & !ext, n));
        prop_assert_eq!(canonical_mask(ext, n) >> n, 0);
        Ok(())
    })
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: [Suite; 12] = [
    ("purifier-complement symmetry", purifier_symmetry),
    ("min-cut pruned vs naive oracle", min_cut_oracle),
    ("relabel/coarse-graining commutation", relabel_commutes_with_pullback),
    ("pullback functoriality", pullback_functoriality),
    ("permutation group laws", permutation_group_laws),
    ("instance-set closure", instance_set_closure),
    ("membership certificates vs oracle", membership_certificates),
    ("rank certificates", rank_certificates),
    ("SA/SSA nonnegativity on hypergraph vectors", sa_ssa_nonnegative),
    ("double description order invariance", double_description_order_invariance),
    ("canonical lookup symmetry", canonical_lookup),
    ("fixture files match built-ins", fixture_files),
];

/// Exported fixture files equal the built-in models.
pub fn fixture_files() -> Result<(), String> {
    use entcone::hypergraph::{fixture, Fixture};
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for f in Fixture::ALL {
        let text = std::fs::read_to_string(root.join(f.name())).map_err(|e| e.to_string())?;
        if text != fixture(f).to_json() {
            return Err(format!("fixtures/{} differs from the built-in model", f.name()));
        }
    }
    Ok(())
}
