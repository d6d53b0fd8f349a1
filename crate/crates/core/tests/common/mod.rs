#![allow(dead_code)]

use std::sync::Arc;

use pecr::{Frame, MassFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn frame(n: usize) -> Arc<Frame> {
    Arc::new(Frame::numbered(n).unwrap())
}

pub fn bpa(n: usize, values: &[f64]) -> MassFunction {
    assert_eq!(values.len(), 1 << n);
    MassFunction::new(frame(n), values.to_vec()).unwrap()
}

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    /// Allow mass on the empty set.
    pub conflict: bool,
    /// Force positive mass on Ω.
    pub non_dogmatic: bool,
}

pub const NORMALIZED: Shape = Shape {
    conflict: false,
    non_dogmatic: false,
};
pub const ANY: Shape = Shape {
    conflict: true,
    non_dogmatic: false,
};

/// Random sparse BPA on `frame`: each subset is focal with probability
/// one half, masses are uniform weights normalized to one.
pub fn random_bpa(rng: &mut impl Rng, frame: &Arc<Frame>, shape: Shape) -> MassFunction {
    let size = frame.power_set_size();
    loop {
        let mut masses = vec![0.0; size];
        for (i, v) in masses.iter_mut().enumerate() {
            if i == 0 && !shape.conflict {
                continue;
            }
            if rng.random_bool(0.5) {
                *v = rng.random_range(0.01..1.0);
            }
        }
        if shape.non_dogmatic {
            masses[size - 1] += rng.random_range(0.05..0.5);
        }
        let total: f64 = masses.iter().sum();
        if total <= 0.0 || (shape.conflict && masses[0] == total) {
            continue;
        }
        for v in masses.iter_mut() {
            *v /= total;
        }
        // Summing in a different order can leave the total a few ulps
        // off one; push the residue onto the largest entry.
        let residue = 1.0 - masses.iter().sum::<f64>();
        let big = (0..size)
            .max_by(|&a, &b| masses[a].total_cmp(&masses[b]))
            .unwrap();
        masses[big] += residue;
        return MassFunction::new(frame.clone(), masses).unwrap();
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
    let d = max_diff(actual, expected);
    assert!(
        d <= tol,
        "max diff {d} > {tol}\n actual   {actual:?}\n expected {expected:?}"
    );
}
