use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{has_feasible, Instance};
use crate::error::{Error, Result};

const MAX_ATTEMPTS: usize = 200;

/// Parameters for [`generate_random`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub n_men: usize,
    pub n_women: usize,
    pub density: f64,
    pub n_critical: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n_men: usize, n_women: usize, density: f64, n_critical: usize, seed: u64) -> Self {
        GenSpec {
            n_men,
            n_women,
            density,
            n_critical,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::InvalidGenSpec(format!(
                "density {} is outside [0, 1]",
                self.density
            )));
        }
        if self.n_critical > self.n_men {
            return Err(Error::InvalidGenSpec(format!(
                "{} critical men requested but only {} men",
                self.n_critical, self.n_men
            )));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GenSpec { seed, ..self }
    }
}

/// Parses `men=4,women=4,density=0.8,critical=1,seed=7`; omitted keys
/// default to 4, 4, 0.8, 0 and 0.
impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut spec = GenSpec::new(4, 4, 0.8, 0, 0);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidGenSpec(format!("`{part}` is not key=value")))?;
            let bad = || Error::InvalidGenSpec(format!("bad value for `{key}`: `{value}`"));
            match key.trim() {
                "men" => spec.n_men = value.trim().parse().map_err(|_| bad())?,
                "women" => spec.n_women = value.trim().parse().map_err(|_| bad())?,
                "density" => spec.density = value.trim().parse().map_err(|_| bad())?,
                "critical" => spec.n_critical = value.trim().parse().map_err(|_| bad())?,
                "seed" => spec.seed = value.trim().parse().map_err(|_| bad())?,
                other => return Err(Error::InvalidGenSpec(format!("unknown key `{other}`"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Draws a random feasible instance. Deterministic in `spec`.
pub fn generate_random(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(inst) = attempt(spec, &mut rng)? {
            if spec.n_critical == 0 || has_feasible(&inst) {
                return Ok(inst);
            }
        }
    }
    Err(Error::GeneratorExhausted {
        seed: spec.seed,
        attempts: MAX_ATTEMPTS,
    })
}

fn attempt(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Option<Instance>> {
    let mut man_prefs = vec![Vec::new(); spec.n_men];
    let mut woman_prefs = vec![Vec::new(); spec.n_women];
    for (m, list) in man_prefs.iter_mut().enumerate() {
        for (w, wlist) in woman_prefs.iter_mut().enumerate() {
            if rng.gen_bool(spec.density) {
                list.push(w);
                wlist.push(m);
            }
        }
    }
    for list in man_prefs.iter_mut().chain(woman_prefs.iter_mut()) {
        list.shuffle(rng);
    }

    let mut critical_men = vec![false; spec.n_men];
    let candidates: Vec<usize> = (0..spec.n_men)
        .filter(|&m| !man_prefs[m].is_empty())
        .take(spec.n_critical)
        .collect();
    if candidates.len() < spec.n_critical {
        return Ok(None);
    }
    for m in candidates {
        critical_men[m] = true;
    }

    let men = (1..=spec.n_men).map(|i| format!("m{i}")).collect();
    let women = (1..=spec.n_women).map(|i| format!("w{i}")).collect();
    Instance::from_indexed(
        men,
        women,
        man_prefs,
        woman_prefs,
        critical_men,
        vec![false; spec.n_women],
    )
    .map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let spec = GenSpec::new(5, 4, 0.6, 2, 42);
        assert_eq!(generate_random(&spec).unwrap(), generate_random(&spec).unwrap());
    }

    #[test]
    fn full_density_is_complete() {
        let inst = generate_random(&GenSpec::new(3, 3, 1.0, 0, 1)).unwrap();
        assert_eq!(inst.n_edges(), 9);
        for m in 0..3 {
            let mut l = inst.man_prefs(m).to_vec();
            l.sort_unstable();
            assert_eq!(l, vec![0, 1, 2]);
        }
    }

    #[test]
    fn critical_men_are_the_first_with_neighbors() {
        let inst = generate_random(&GenSpec::new(6, 6, 0.5, 2, 9)).unwrap();
        let crit: Vec<usize> = inst.critical_men().collect();
        assert_eq!(crit.len(), 2);
        let with_neighbors: Vec<usize> =
            (0..6).filter(|&m| !inst.man_prefs(m).is_empty()).take(2).collect();
        assert_eq!(crit, with_neighbors);
        assert!(has_feasible(&inst));
    }

    #[test]
    fn impossible_specs_are_reported() {
        assert!(GenSpec::new(2, 2, 1.5, 0, 0).validate().is_err());
        let err = generate_random(&GenSpec::new(3, 1, 1.0, 3, 5)).unwrap_err();
        assert!(matches!(err, Error::GeneratorExhausted { seed: 5, .. }));
    }

    #[test]
    fn spec_strings() {
        let spec: GenSpec = "men=4,women=3,density=0.5,critical=1,seed=7".parse().unwrap();
        assert_eq!(spec, GenSpec::new(4, 3, 0.5, 1, 7));
        assert!("men=x".parse::<GenSpec>().is_err());
        assert!("colour=3".parse::<GenSpec>().is_err());
    }
}
