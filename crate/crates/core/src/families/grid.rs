use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numerics::Rational;

use super::params::{GridDomain, ParamSet, ParamSpec, ParamValue};
use super::{family, FamilyError, FamilySpec};

const SMALLEST: usize = 3;
const RANDOM: usize = 2;
const RANDOM_ATTEMPTS: usize = 200_000;
const ODOMETER_CAP: usize = 5_000_000;

fn values(spec: &ParamSpec) -> Vec<ParamValue> {
    match spec.grid {
        GridDomain::Ints(lo, hi) => (lo..=hi).map(|n| ParamValue::Num(Rational::from_integer(n.into()))).collect(),
        GridDomain::Fracs { lo, hi, dens } => {
            let mut set = BTreeSet::new();
            for &den in dens {
                for j in lo * den..=hi * den {
                    set.insert(Rational::new(j.into(), den.into()));
                }
            }
            set.into_iter().map(ParamValue::Num).collect()
        }
        GridDomain::Lists(options) => {
            options.iter().map(|o| ParamValue::List(o.iter().map(|&x| x.into()).collect())).collect()
        }
    }
}

fn assemble(schema: &[ParamSpec], domains: &[Vec<ParamValue>], idx: &[usize]) -> ParamSet {
    let mut p = ParamSet::new();
    for ((s, d), &i) in schema.iter().zip(domains).zip(idx) {
        p.0.insert(s.name.to_string(), d[i].clone());
    }
    p
}

/// Seed derived from the family id, stable across runs and platforms.
fn seed(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// The three smallest valid tuples in schema order, then two seeded random
/// valid tuples distinct from them.
pub fn grid_for(spec: &FamilySpec) -> Vec<ParamSet> {
    let domains: Vec<Vec<ParamValue>> = spec.params.iter().map(values).collect();
    let mut out: Vec<ParamSet> = Vec::new();
    if domains.iter().any(|d| d.is_empty()) {
        return out;
    }

    let mut idx = vec![0usize; domains.len()];
    for _ in 0..ODOMETER_CAP {
        let p = assemble(spec.params, &domains, &idx);
        if spec.validate(&p).is_ok() {
            out.push(p);
            if out.len() == SMALLEST {
                break;
            }
        }
        // advance, last parameter fastest
        let mut pos = domains.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < domains[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
        if idx.iter().all(|&i| i == 0) {
            break;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed(spec.id));
    let want = out.len() + RANDOM;
    for _ in 0..RANDOM_ATTEMPTS {
        if out.len() >= want {
            break;
        }
        let pick: Vec<usize> = domains.iter().map(|d| rng.gen_range(0..d.len())).collect();
        let p = assemble(spec.params, &domains, &pick);
        if !out.contains(&p) && spec.validate(&p).is_ok() {
            out.push(p);
        }
    }
    out
}

pub fn default_grid(id: &str) -> Result<Vec<ParamSet>, FamilyError> {
    Ok(grid_for(family(id)?))
}
