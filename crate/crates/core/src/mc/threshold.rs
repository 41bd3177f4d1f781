use super::McError;

/// Slope below which a curve counts as flat.
pub const MIN_SLOPE: f64 = 1e-6;

/// Location of the steepest rise of a percolation-strength curve.
///
/// Uses central differences `(P[i+1] - P[i-1]) / (p[i+1] - p[i-1])` at the
/// interior points and returns the `p` with the largest slope, preferring the
/// lower `p` on ties. Resolution is one grid step.
pub fn estimate_threshold(curve: &[(f64, f64)]) -> Result<f64, McError> {
    if curve.len() < 5 {
        return Err(McError::TooFewPoints(curve.len()));
    }
    if curve
        .windows(2)
        .any(|w| w[1].0.partial_cmp(&w[0].0) != Some(std::cmp::Ordering::Greater))
    {
        return Err(McError::NonMonotoneGrid);
    }
    let mut best: Option<(f64, f64)> = None;
    for i in 1..curve.len() - 1 {
        let slope = (curve[i + 1].1 - curve[i - 1].1) / (curve[i + 1].0 - curve[i - 1].0);
        if best.is_none_or(|(s, _)| slope > s) {
            best = Some((slope, curve[i].0));
        }
    }
    match best {
        Some((s, p)) if s >= MIN_SLOPE => Ok(p),
        _ => Err(McError::NoTransition),
    }
}
