//! Scripted reproductions of the N = 2, 3, 4 inner-bound results.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::coarse::{build_delta, parse_map, pullback, tensor_pad, DeltaMode};
use crate::cone::{
    double_description, equal, hull_contains, is_extreme_ray, orbit_count, orbit_expand,
    orbit_representative, orbit_representatives, ray_of, ExtremalityCertificate, HRepCone,
    VRepCone, Verdict,
};
use crate::entrospace::EntropyVector;
use crate::error::{Error, Result};
use crate::hypergraph::{fixture, Fixture};
use crate::ineq::{family_instances, sa_instances, Family};
use crate::report::RunReport;
use crate::states::{erq4_trivial_rays, state_vector, StateSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    N2,
    N3Chain,
    N4Lambda,
}

impl FromStr for Scenario {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n2" => Ok(Scenario::N2),
            "n3-chain" => Ok(Scenario::N3Chain),
            "n4-lambda" => Ok(Scenario::N4Lambda),
            other => Err(Error::parse(0, format!("unknown scenario `{other}`"))),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::N2 => "n2",
            Scenario::N3Chain => "n3-chain",
            Scenario::N4Lambda => "n4-lambda",
        })
    }
}

/// The map taking fig1 to the GHZ direction at N = 3.
pub const FIG1_TO_GHZ: &str = "0,1,1,2,2,3,3";

/// Coarse grainings of the three fixtures onto four parties.
pub const LAMBDA4_MAPS: [(Fixture, usize, &str); 3] = [
    (Fixture::Fig1, 6, "0,1,1,2,2,3,4"),
    (Fixture::Fig2, 9, "0,1,1,2,2,3,3,4,4,0"),
    (Fixture::Fig3, 8, "0,1,1,2,2,3,3,4,4"),
];

/// Takes fig1 padded with a pure seventh party to GHZ on `{0,2,3,4}` with
/// party 1 pure.
pub const PADDED_FIG1_TO_GHZ4: &str = "0,2,2,3,3,4,4,1";

pub fn sac(n: usize) -> Result<HRepCone> {
    Ok(HRepCone::from_instances(&sa_instances(n)?))
}

pub fn family_cone(family: Family, n: usize) -> Result<HRepCone> {
    Ok(HRepCone::from_instances(&family_instances(family, n)?))
}

/// Bell rays for every pair of `⟦N⟧`.
pub fn bell_rays(n: usize) -> Result<VRepCone> {
    let mut vs = Vec::new();
    for a in 0..=n {
        for b in a + 1..=n {
            vs.push(state_vector(&StateSpec::bell(n, a, b)?));
        }
    }
    VRepCone::from_vectors(n, &vs)
}

pub fn ghz_all(n: usize) -> Result<EntropyVector> {
    let parties: Vec<usize> = (0..=n).collect();
    Ok(state_vector(&StateSpec::ghz(n, &parties)?))
}

pub fn fig1_ghz_image() -> Result<EntropyVector> {
    let v = fixture(Fixture::Fig1).entropy_vector()?;
    pullback(&parse_map(FIG1_TO_GHZ, 6, 3)?, &v)
}

/// Pullbacks of the fixtures under [`LAMBDA4_MAPS`].
pub fn lambda4_images() -> Result<Vec<EntropyVector>> {
    LAMBDA4_MAPS
        .iter()
        .map(|&(fx, n, m)| pullback(&parse_map(m, n, 4)?, &fixture(fx).entropy_vector()?))
        .collect()
}

/// fig1 ⊗ pure party at N = 7, its SAC_7 certificate and its image at N = 4.
pub fn padded_ghz4_route() -> Result<(EntropyVector, ExtremalityCertificate, EntropyVector)> {
    let padded = tensor_pad(&fixture(Fixture::Fig1).entropy_vector()?, 7)?;
    let cert = is_extreme_ray(&padded, &sac(7)?)?;
    let image = pullback(&parse_map(PADDED_FIG1_TO_GHZ4, 7, 4)?, &padded)?;
    Ok((padded, cert, image))
}

fn summary(c: &ExtremalityCertificate) -> String {
    format!(
        "{}: {} saturated, {} violated, rank {} of {}",
        c.verdict,
        c.saturated.len(),
        c.violated.len(),
        c.rank,
        c.dim
    )
}

pub fn run(s: Scenario, long: bool) -> RunReport {
    match s {
        Scenario::N2 => run_n2(),
        Scenario::N3Chain => run_n3(),
        Scenario::N4Lambda => run_n4(long),
    }
}

fn run_n2() -> RunReport {
    let mut r = RunReport::new("n2");
    r.run("SAC_2 rays equal the three Bell rays", || {
        let rays = double_description(&sac(2)?)?;
        Ok((rays == bell_rays(2)?, format!("{} rays", rays.len())))
    });
    r.run("Delta_2^2 from Bell rays equals poly_2", || {
        let delta = build_delta(&bell_rays(2)?, 2, DeltaMode::Exhaustive)?;
        let poly = double_description(&family_cone(Family::Poly, 2)?)?;
        let ok = equal(&delta, &poly)?;
        Ok((ok, format!("{} generators vs {} rays", delta.len(), poly.len())))
    });
    r
}

fn run_n3() -> RunReport {
    let mut r = RunReport::new("n3-chain");
    r.run("poly_3 rays are 6 Bell, GHZ and AME4", || {
        let rays = double_description(&family_cone(Family::Poly, 3)?)?;
        let mut expected = bell_rays(3)?.vectors();
        expected.push(ghz_all(3)?);
        expected.push(state_vector(&StateSpec::ame4(3)?));
        let ok = rays == VRepCone::from_vectors(3, &expected)?;
        Ok((ok, format!("{} rays, {} orbits", rays.len(), orbit_count(&rays))))
    });
    r.run("SAC_3 rays", || {
        let rays = double_description(&sac(3)?)?;
        Ok((true, format!("{} rays, {} orbits", rays.len(), orbit_count(&rays))))
    });
    r.run("Bell and AME4 are SAC_3-extreme, GHZ is not", || {
        let h = sac(3)?;
        let mut ok = true;
        let mut notes = Vec::new();
        let mut good = bell_rays(3)?.vectors();
        good.push(state_vector(&StateSpec::ame4(3)?));
        for v in &good {
            let c = is_extreme_ray(v, &h)?;
            ok &= c.verdict == Verdict::Extreme && c.verify(v, &h)?;
        }
        notes.push(format!("{} extreme", good.len()));
        let ghz = ghz_all(3)?;
        let c = is_extreme_ray(&ghz, &h)?;
        ok &= c.verdict == Verdict::NotExtreme && c.saturated.is_empty() && c.verify(&ghz, &h)?;
        notes.push(format!("GHZ {}", summary(&c)));
        Ok((ok, notes.join("; ")))
    });
    r.run("fig1 is SAC_6-extreme", || {
        let v = fixture(Fixture::Fig1).entropy_vector()?;
        let h = sac(6)?;
        let c = is_extreme_ray(&v, &h)?;
        let ok = c.verdict == Verdict::Extreme && c.rank == 62 && c.verify(&v, &h)?;
        Ok((ok, summary(&c)))
    });
    r.run("fig1 under 0,1,1,2,2,3,3 is the GHZ direction", || {
        let img = fig1_ghz_image()?;
        let ok = ray_of(&img) == ray_of(&ghz_all(3)?);
        Ok((ok, format!("image {img}")))
    });
    r.run("hull{Bells, AME4} misses only GHZ in poly_3", || {
        let mut d33 = bell_rays(3)?.vectors();
        d33.push(state_vector(&StateSpec::ame4(3)?));
        let d33 = VRepCone::from_vectors(3, &d33)?;
        let poly = double_description(&family_cone(Family::Poly, 3)?)?;
        let inner = hull_contains(&d33, &poly)?;
        let outer = hull_contains(&poly, &d33)?;
        let missing: Vec<&Vec<BigInt>> = outer.uncovered().iter().map(|&i| &poly.rays()[i]).collect();
        let ghz = ray_of(&ghz_all(3)?);
        let ok = inner.holds
            && inner.verify(&d33, &poly)
            && outer.verify(&poly, &d33)
            && missing == vec![&ghz];
        Ok((ok, format!("{} uncovered generator(s)", missing.len())))
    });
    r.run("hull{Bells, AME4, GHZ from fig1} = poly_3", || {
        let mut gens = bell_rays(3)?.vectors();
        gens.push(state_vector(&StateSpec::ame4(3)?));
        gens.push(fig1_ghz_image()?);
        let gens = VRepCone::from_vectors(3, &gens)?;
        let poly = double_description(&family_cone(Family::Poly, 3)?)?;
        let a = hull_contains(&gens, &poly)?;
        let b = hull_contains(&poly, &gens)?;
        let ok = a.holds && b.holds && a.verify(&gens, &poly) && b.verify(&poly, &gens);
        Ok((ok, format!("mutual containment with {} LP certificates", a.certificates.len() + b.certificates.len())))
    });
    r
}

fn run_n4(long: bool) -> RunReport {
    let mut r = RunReport::new("n4-lambda");
    r.run("Lambda_4 rays fall into 7 orbits", || {
        let rays = double_description(&family_cone(Family::Lambda4, 4)?)?;
        let k = orbit_count(&rays);
        Ok((k == 7, format!("{} rays, {k} orbits", rays.len())))
    });
    r.run("SAC_4-extreme Lambda_4 orbits (expected 4)", || {
        let t = erq4_trivial_rays()?;
        let k = orbit_count(&t);
        Ok((
            k == 4,
            format!("{k} orbits; GHZ on 4 parties with a pure fifth is Lambda_4-extreme but not SAC_4-extreme"),
        ))
    });
    r.run("GHZ4 with a pure party lies in Delta_4^7", || {
        let (padded, cert, image) = padded_ghz4_route()?;
        let ghz4 = state_vector(&StateSpec::ghz(4, &[0, 2, 3, 4])?);
        let ok = cert.verdict == Verdict::Extreme
            && cert.verify(&padded, &sac(7)?)?
            && ray_of(&image) == ray_of(&ghz4);
        Ok((ok, format!("padded fig1 {}", summary(&cert))))
    });
    let fixtures: Vec<(Fixture, usize)> = if long {
        vec![(Fixture::Fig1, 6), (Fixture::Fig2, 9), (Fixture::Fig3, 8)]
    } else {
        vec![(Fixture::Fig1, 6)]
    };
    for (fx, n) in fixtures {
        r.run(&format!("{} is SAC_{n}-extreme", fx.name()), || {
            let v = fixture(fx).entropy_vector()?;
            let h = sac(n)?;
            let c = is_extreme_ray(&v, &h)?;
            let ok = c.verdict == Verdict::Extreme && c.rank + 1 == c.dim && c.verify(&v, &h)?;
            Ok((ok, summary(&c)))
        });
    }
    r.run("fixture images are Lambda_4-extreme in the 3 nontrivial orbits", || {
        let h = family_cone(Family::Lambda4, 4)?;
        let trivial: BTreeSet<Vec<BigInt>> = orbit_representatives(&erq4_trivial_rays()?)
            .into_iter()
            .collect();
        let ghz4 = orbit_representative(&ray_of(&padded_ghz4_route()?.2), 4);
        let mut ok = true;
        let mut reps = BTreeSet::new();
        for v in lambda4_images()? {
            let c = is_extreme_ray(&v, &h)?;
            ok &= c.verdict == Verdict::Extreme && c.verify(&v, &h)?;
            reps.insert(orbit_representative(&ray_of(&v), 4));
        }
        ok &= reps.len() == 3 && reps.iter().all(|x| !trivial.contains(x) && *x != ghz4);
        Ok((ok, format!("{} distinct orbits", reps.len())))
    });
    r.run("hull of trivial rays and images, orbit-expanded, equals Lambda_4", || {
        let (_, _, ghz4) = padded_ghz4_route()?;
        let mut gens = erq4_trivial_rays()?.vectors();
        gens.push(ghz4);
        gens.extend(lambda4_images()?);
        let gens = orbit_expand(&VRepCone::from_vectors(4, &gens)?);
        let lam = double_description(&family_cone(Family::Lambda4, 4)?)?;
        let a = hull_contains(&gens, &lam)?;
        let b = hull_contains(&lam, &gens)?;
        let ok = a.holds && b.holds && a.verify(&gens, &lam) && b.verify(&lam, &gens);
        Ok((ok, format!("{} generators, {} rays, mutual containment", gens.len(), lam.len())))
    });
    r
}
