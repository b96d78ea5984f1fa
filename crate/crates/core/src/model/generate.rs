//! Synthetic instances following the usual scheme for route length, supply,
//! capacity and travel-time budget.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Instance, DEFAULT_LAMBDA};
use crate::error::{Error, Result};

const SIDE: f64 = 100.0;
const SUPPLY_SHARE: f64 = 0.7;
const EPSILON_SHARE: f64 = 0.85;
const MAX_ATTEMPTS: usize = 100;

/// Instance family: route-length and capacity tightness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InstanceType {
    /// Regular route length, abundant capacity.
    A,
    /// Regular route length, tight capacity.
    T,
    /// Regular route length, very tight capacity.
    VT,
    /// Very tight route length and capacity.
    VTL,
}

impl InstanceType {
    pub const ALL: [InstanceType; 4] = [Self::A, Self::T, Self::VT, Self::VTL];

    /// Route-length coefficient.
    pub fn zeta1(self) -> f64 {
        match self {
            Self::VTL => 1.0,
            _ => 2.0,
        }
    }

    /// Capacity coefficient.
    pub fn zeta3(self) -> f64 {
        match self {
            Self::A => 1.2,
            Self::T => 0.5,
            Self::VT | Self::VTL => 0.2,
        }
    }
}

impl fmt::Display for InstanceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A => "A",
            Self::T => "T",
            Self::VT => "VT",
            Self::VTL => "VTL",
        })
    }
}

impl FromStr for InstanceType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "T" => Ok(Self::T),
            "VT" => Ok(Self::VT),
            "VTL" => Ok(Self::VTL),
            other => Err(Error::InvalidParameter(format!(
                "unknown instance type {other:?}, expected A, T, VT or VTL"
            ))),
        }
    }
}

/// Mean travel time between distinct shelters.
pub fn mean_shelter_travel(travel: &[Vec<f64>]) -> f64 {
    let n = travel.len() - 1;
    if n < 2 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                sum += travel[i][j];
            }
        }
    }
    sum / (n * (n - 1)) as f64
}

/// Generates an instance deterministically from `seed`.
///
/// The depot sits at the centre of a 100 x 100 square and shelters are
/// uniform in it. Travel times are rounded Euclidean distances closed under
/// shortest paths, so they are integral and satisfy the triangle inequality.
/// Demands are uniform integers in `[10, 100]`. The whole sample is redrawn
/// (up to 100 times) until every shelter has a round trip within `psi`.
pub fn generate_instance(seed: u64, n: usize, m: usize, kind: InstanceType) -> Result<Instance> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inst = sample(&mut rng, n, m, kind);
    for _ in 1..MAX_ATTEMPTS {
        if inst.shelters().all(|i| inst.round_trip(i) <= inst.psi) {
            break;
        }
        inst = sample(&mut rng, n, m, kind);
    }
    Ok(inst)
}

fn sample(rng: &mut ChaCha8Rng, n: usize, m: usize, kind: InstanceType) -> Instance {
    let mut points = vec![(SIDE / 2.0, SIDE / 2.0)];
    points.extend((0..n).map(|_| (rng.gen_range(0.0..SIDE), rng.gen_range(0.0..SIDE))));
    let demands: Vec<f64> = (0..n).map(|_| rng.gen_range(10..=100) as f64).collect();

    let mut travel: Vec<Vec<f64>> = points
        .iter()
        .map(|&(xa, ya)| {
            points
                .iter()
                .map(|&(xb, yb)| ((xa - xb).hypot(ya - yb)).round())
                .collect()
        })
        .collect();
    for k in 0..=n {
        for i in 0..=n {
            for j in 0..=n {
                let via = travel[i][k] + travel[k][j];
                if via < travel[i][j] {
                    travel[i][j] = via;
                }
            }
        }
    }

    let mean = mean_shelter_travel(&travel);
    let psi = kind.zeta1() * n.div_ceil(m) as f64 * mean;
    let supply = SUPPLY_SHARE * demands.iter().sum::<f64>();
    Instance {
        n,
        m,
        capacity: kind.zeta3() * supply / m as f64,
        supply,
        psi,
        epsilon: EPSILON_SHARE * m as f64 * psi,
        lambda: DEFAULT_LAMBDA,
        demands,
        travel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abundant_capacity_scheme() {
        let inst = generate_instance(1, 15, 3, InstanceType::A).unwrap();
        assert!((inst.capacity - 1.2 * inst.supply / 3.0).abs() < 1e-9);
        assert!((inst.supply - 0.7 * inst.total_demand()).abs() < 1e-9);
        assert!((inst.epsilon - 0.85 * 3.0 * inst.psi).abs() < 1e-9);
        inst.validate().unwrap();
    }

    #[test]
    fn very_tight_route_length_scheme() {
        let inst = generate_instance(1, 15, 3, InstanceType::VTL).unwrap();
        let expected = 5.0 * mean_shelter_travel(&inst.travel);
        assert!((inst.psi - expected).abs() < 1e-9);
        let vt = generate_instance(1, 15, 3, InstanceType::VT).unwrap();
        assert!((vt.psi - 2.0 * 5.0 * mean_shelter_travel(&vt.travel)).abs() < 1e-9);
    }

    #[test]
    fn same_seed_same_instance() {
        for kind in InstanceType::ALL {
            let a = generate_instance(7, 9, 2, kind).unwrap();
            let b = generate_instance(7, 9, 2, kind).unwrap();
            assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        }
    }

    #[test]
    fn travel_is_integral_metric() {
        let inst = generate_instance(3, 10, 2, InstanceType::T).unwrap();
        assert!(inst.travel.iter().flatten().all(|t| t.fract() == 0.0));
        inst.validate().unwrap();
    }

    #[test]
    fn parses_type_codes() {
        assert_eq!("vtl".parse::<InstanceType>().unwrap(), InstanceType::VTL);
        assert!("X".parse::<InstanceType>().is_err());
    }
}
