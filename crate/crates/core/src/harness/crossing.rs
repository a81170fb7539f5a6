use crate::error::{Error, Result};

/// Where two failure-rate curves cross.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub p_star: f64,
    /// Grid points on either side of the crossing.
    pub bracket: (f64, f64),
}

/// Crossing of two `(p, rate)` curves by linear interpolation of their difference,
/// using the grid points they share. Takes the first sign change in increasing `p`.
pub fn estimate_crossing(a: &[(f64, f64)], b: &[(f64, f64)]) -> Result<Crossing> {
    let mut diff: Vec<(f64, f64)> = a
        .iter()
        .filter_map(|&(p, ra)| b.iter().find(|&&(q, _)| q == p).map(|&(_, rb)| (p, ra - rb)))
        .collect();
    diff.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut last: Option<(usize, f64, f64)> = None;
    for (i, &(p, d)) in diff.iter().enumerate() {
        if d == 0.0 {
            continue;
        }
        if let Some((j, p0, d0)) = last {
            if d0.signum() != d.signum() {
                if i > j + 1 {
                    // Exactly equal rates somewhere in between.
                    let p_eq = diff[j + 1].0;
                    return Ok(Crossing { p_star: p_eq, bracket: (p_eq, p_eq) });
                }
                let p_star = p0 + (p - p0) * d0 / (d0 - d);
                return Ok(Crossing { p_star, bracket: (p0, p) });
            }
        }
        last = Some((i, p, d));
    }
    Err(Error::NoCrossing)
}
