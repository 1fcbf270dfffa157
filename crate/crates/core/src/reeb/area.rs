//! Exact measure profile of one tree edge as a function of the level.

use crate::profile::Profile1D;

/// Linear density `d(t)` on `[lo, hi]` with `d(lo) = d_lo`, `d(hi) = d_hi`, or
/// a point mass when `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityPiece {
    pub lo: f64,
    pub hi: f64,
    pub d_lo: f64,
    pub d_hi: f64,
    /// Mass of a point piece; ignored when `lo < hi`.
    pub atom: f64,
}

impl DensityPiece {
    pub fn linear(lo: f64, hi: f64, d_lo: f64, d_hi: f64) -> Self {
        Self {
            lo,
            hi,
            d_lo,
            d_hi,
            atom: 0.0,
        }
    }

    pub fn atom(level: f64, mass: f64) -> Self {
        Self {
            lo: level,
            hi: level,
            d_lo: 0.0,
            d_hi: 0.0,
            atom: mass,
        }
    }

    fn at(&self, t: f64) -> f64 {
        self.d_lo + (self.d_hi - self.d_lo) * (t - self.lo) / (self.hi - self.lo)
    }

    /// The part of the piece over `[a, b] ∩ [lo, hi]`.
    pub fn clip(&self, a: f64, b: f64) -> Option<Self> {
        if self.lo == self.hi {
            return (self.lo >= a && self.lo <= b).then_some(*self);
        }
        let lo = self.lo.max(a);
        let hi = self.hi.min(b);
        if lo >= hi {
            return None;
        }
        Some(Self::linear(lo, hi, self.at(lo), self.at(hi)))
    }
}

/// Cumulative measure along an edge, piecewise quadratic in the level.
///
/// The level axis is cut at `knots`; on each interval the density is linear,
/// and an interval of zero width carries a point mass.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaProfile {
    knots: Vec<f64>,
    left: Vec<f64>,
    right: Vec<f64>,
    mass: Vec<f64>,
    cum: Vec<f64>,
}

impl AreaProfile {
    /// Sums the pieces. The knots always include `lo` and `hi`.
    pub fn from_pieces(lo: f64, hi: f64, pieces: &[DensityPiece]) -> Self {
        let mut xs: Vec<f64> = pieces
            .iter()
            .flat_map(|p| [p.lo, p.hi])
            .chain([lo, hi])
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let m = xs.len() - 1;
        let mut left = vec![0.0; m];
        let mut right = vec![0.0; m];
        let mut atoms = vec![0.0; xs.len()];
        let index = |x: f64| xs.partition_point(|&k| k < x);
        for p in pieces {
            if p.lo == p.hi {
                atoms[index(p.lo)] += p.atom;
                continue;
            }
            let (i0, i1) = (index(p.lo), index(p.hi));
            for k in i0..i1 {
                left[k] += p.at(xs[k]);
                right[k] += p.at(xs[k + 1]);
            }
        }
        let mut knots = vec![xs[0]];
        let (mut l, mut r, mut mass) = (Vec::new(), Vec::new(), Vec::new());
        for k in 0..xs.len() {
            if atoms[k] > 0.0 {
                knots.push(xs[k]);
                l.push(0.0);
                r.push(0.0);
                mass.push(atoms[k]);
            }
            if k < m {
                knots.push(xs[k + 1]);
                l.push(left[k]);
                r.push(right[k]);
                mass.push(0.5 * (left[k] + right[k]) * (xs[k + 1] - xs[k]));
            }
        }
        let mut cum = Vec::with_capacity(knots.len());
        cum.push(0.0);
        for &m in &mass {
            cum.push(cum.last().unwrap() + m);
        }
        Self {
            knots,
            left: l,
            right: r,
            mass,
            cum,
        }
    }

    /// Constant density carrying `mass` on `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64, mass: f64) -> Self {
        assert!(hi > lo, "uniform profile needs lo < hi");
        let d = mass / (hi - lo);
        Self::from_pieces(lo, hi, &[DensityPiece::linear(lo, hi, d, d)])
    }

    /// Profile of `self` followed by `upper`, which must start where `self`
    /// ends.
    pub fn concat(&self, upper: &AreaProfile) -> Self {
        let offset = self.total();
        let mut out = self.clone();
        out.knots.extend(&upper.knots[1..]);
        out.left.extend(&upper.left);
        out.right.extend(&upper.right);
        out.mass.extend(&upper.mass);
        out.cum.extend(upper.cum[1..].iter().map(|c| c + offset));
        out
    }

    pub fn total(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    pub fn lo_level(&self) -> f64 {
        self.knots[0]
    }

    pub fn hi_level(&self) -> f64 {
        *self.knots.last().unwrap()
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Cumulative measure at each knot.
    pub fn cumulative_at_knots(&self) -> &[f64] {
        &self.cum
    }

    /// Measure of the part of the edge at or below `level`.
    pub fn cumulative(&self, level: f64) -> f64 {
        if level <= self.lo_level() {
            return 0.0;
        }
        if level >= self.hi_level() {
            return self.total();
        }
        let k = self.knots.partition_point(|&x| x <= level) - 1;
        let h = self.knots[k + 1] - self.knots[k];
        let u = level - self.knots[k];
        let (dl, dr) = (self.left[k], self.right[k]);
        self.cum[k] + dl * u + 0.5 * (dr - dl) * u * u / h
    }

    /// Level at cumulative measure `offset` from the low end.
    pub fn level_at(&self, offset: f64) -> f64 {
        if offset <= 0.0 {
            return self.lo_level();
        }
        if offset >= self.total() {
            return self.hi_level();
        }
        let k = (self.cum.partition_point(|&c| c <= offset) - 1).min(self.mass.len() - 1);
        let h = self.knots[k + 1] - self.knots[k];
        if h == 0.0 {
            return self.knots[k];
        }
        let tau = offset - self.cum[k];
        let (dl, dr) = (self.left[k], self.right[k]);
        // Positive root of (dr − dl)/(2h)·u² + dl·u − τ = 0, written to avoid
        // cancellation.
        let disc = (dl * dl + 2.0 * (dr - dl) * tau / h).max(0.0);
        let denom = dl + disc.sqrt();
        let u = if denom > 0.0 { 2.0 * tau / denom } else { 0.0 };
        self.knots[k] + u.clamp(0.0, h)
    }

    /// `∫ w(level) dϱ` over the edge.
    pub fn integrate(&self, w: &Profile1D) -> f64 {
        (0..self.mass.len())
            .map(|k| {
                let (a, b) = (self.knots[k], self.knots[k + 1]);
                if a == b {
                    self.mass[k] * w.eval(a)
                } else {
                    w.integrate_linear_weight(a, b, self.left[k], self.right[k])
                }
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_profile() {
        let p = AreaProfile::uniform(-0.5, 0.5, 1.0);
        assert_eq!(p.total(), 1.0);
        assert!((p.cumulative(0.0) - 0.5).abs() < 1e-15);
        assert!((p.level_at(0.25) + 0.25).abs() < 1e-15);
        assert!(p.integrate(&Profile1D::identity()).abs() < 1e-16);
    }

    #[test]
    fn tent_profile_inverse() {
        // Density 2t on [0, 1].
        let p = AreaProfile::from_pieces(0.0, 1.0, &[DensityPiece::linear(0.0, 1.0, 0.0, 2.0)]);
        for &t in &[0.0, 0.1, 0.5, 0.9, 1.0] {
            assert!((p.cumulative(t) - t * t).abs() < 1e-15);
            assert!((p.level_at(t * t) - t).abs() < 1e-12);
        }
        assert!((p.integrate(&Profile1D::identity()) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn overlapping_pieces_and_atoms() {
        let pieces = [
            DensityPiece::linear(0.0, 2.0, 1.0, 1.0),
            DensityPiece::linear(1.0, 2.0, 0.0, 2.0),
            DensityPiece::atom(1.5, 0.25),
        ];
        let p = AreaProfile::from_pieces(0.0, 2.0, &pieces);
        assert!((p.total() - 3.25).abs() < 1e-15);
        assert!((p.cumulative(1.0) - 1.0).abs() < 1e-15);
        assert!((p.cumulative(1.5 - 1e-12) - 1.75).abs() < 1e-9);
        assert!((p.cumulative(1.5) - 2.0).abs() < 1e-15);
        assert_eq!(p.level_at(1.85), 1.5);
        let up = AreaProfile::uniform(2.0, 3.0, 0.75);
        let both = p.concat(&up);
        assert!((both.total() - 4.0).abs() < 1e-15);
        assert!((both.level_at(3.25 + 0.375) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn clipping() {
        let piece = DensityPiece::linear(0.0, 4.0, 0.0, 4.0);
        let c = piece.clip(1.0, 2.0).unwrap();
        assert_eq!((c.lo, c.hi, c.d_lo, c.d_hi), (1.0, 2.0, 1.0, 2.0));
        assert!(piece.clip(5.0, 6.0).is_none());
    }
}
