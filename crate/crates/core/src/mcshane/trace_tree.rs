//! Fricke trace trees for one-holed and one-cone tori.
//!
//! A marked torus group is determined up to conjugacy by the traces
//! `(x, y, z) = (tr A, tr B, tr AB)`, subject to
//! `x² + y² + z² − xyz = κ` with `κ = tr[A, B] + 2`. Replacing one coordinate
//! by the other product minus itself (`x ↦ yz − x`) is another generating
//! triple of the same group; walking these moves from the sink of the tree
//! visits every simple closed geodesic exactly once.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Slope of a simple closed curve as a primitive integer vector `(p, q)`,
/// normalized so that `q > 0`, or `(1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Self {
        if q < 0 || (q == 0 && p < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    fn add(self, o: Slope) -> Slope {
        Slope::new(self.p + o.p, self.q + o.q)
    }

    fn sub(self, o: Slope) -> Slope {
        Slope::new(self.p - o.p, self.q - o.q)
    }

    /// The slope of the curve obtained by the move that replaces `old` when
    /// the other two curves have slopes `a` and `b`.
    fn replace(a: Slope, b: Slope, old: Slope) -> Slope {
        let sum = a.add(b);
        if sum != old {
            sum
        } else {
            a.sub(b)
        }
    }

    /// Rational value `p/q` (infinite for `1/0`); used for ordering output.
    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Traces of `A`, `B`, `AB` with their slopes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceTriple {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub level: u32,
    pub slopes: [Slope; 3],
}

impl TraceTriple {
    pub fn traces(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn fricke_constant(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z - self.x * self.y * self.z
    }

    /// Relation residual relative to the size of the terms.
    pub fn fricke_residual(&self, kappa: f64) -> f64 {
        let scale = (self.x * self.y * self.z).abs().max(1.0);
        (self.fricke_constant() - kappa).abs() / scale
    }

    /// Replaces coordinate `i` by the product of the other two minus itself.
    pub fn flip(&self, i: usize) -> TraceTriple {
        let mut t = self.traces();
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        t[i] = t[a] * t[b] - t[i];
        let mut slopes = self.slopes;
        slopes[i] = Slope::replace(self.slopes[a], self.slopes[b], self.slopes[i]);
        TraceTriple { x: t[0], y: t[1], z: t[2], level: self.level + 1, slopes }
    }

    /// Walks downhill until no move lowers a trace (the sink of the tree).
    pub fn to_sink(&self) -> TraceTriple {
        let mut cur = *self;
        for _ in 0..10_000 {
            let t = cur.traces();
            let best = (0..3)
                .map(|i| (i, t[(i + 1) % 3] * t[(i + 2) % 3] - t[i] - t[i]))
                .filter(|&(_, gain)| gain < 0.0)
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((i, _)) => cur = cur.flip(i),
                None => break,
            }
        }
        cur.level = 0;
        cur
    }
}

/// `κ = 2 − 2cos(θ/2)` for a cone point of angle `θ`.
pub fn kappa_cone(theta: f64) -> f64 {
    2.0 - 2.0 * (theta / 2.0).cos()
}

/// `κ = 2 − 2cosh(ℓ/2)` for a geodesic boundary of length `ℓ`.
pub fn kappa_boundary(length: f64) -> f64 {
    2.0 - 2.0 * (length / 2.0).cosh()
}

fn root_slopes() -> [Slope; 3] {
    [Slope::new(0, 1), Slope::new(1, 0), Slope::new(1, 1)]
}

/// The triple on the surface `x² + y² + z² − xyz = κ`.
///
/// Symmetric: `x = y = z = t` with `3t² − t³ = κ`, `t > 2`. Otherwise the
/// start `(3, 3, 4)` is kept in `x, y` and `z` solved from the relation.
pub fn root_triple(kappa: f64, symmetric: bool) -> Result<TraceTriple> {
    if !(kappa < 4.0) || !kappa.is_finite() {
        return Err(Error::InvalidFrickeConstant(kappa));
    }
    let slopes = root_slopes();
    if symmetric {
        let f = |t: f64| 3.0 * t * t - t * t * t - kappa;
        let (mut lo, mut hi) = (2.0, 3.0);
        while f(hi) > 0.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 * hi {
                break;
            }
        }
        let mut t = 0.5 * (lo + hi);
        // Newton polish; keeps integer roots such as the Markov point exact.
        for _ in 0..3 {
            let next = t - f(t) / (6.0 * t - 3.0 * t * t);
            if f(next).abs() < f(t).abs() {
                t = next;
            }
        }
        return Ok(TraceTriple { x: t, y: t, z: t, level: 0, slopes });
    }
    let (x, y) = (3.0, 3.0);
    let disc = (x * y) * (x * y) - 4.0 * (x * x + y * y - kappa);
    if disc < 0.0 {
        return Err(Error::InvalidFrickeConstant(kappa));
    }
    let z = (x * y + disc.sqrt()) / 2.0;
    if z <= 2.0 {
        return Err(Error::InvalidFrickeConstant(kappa));
    }
    Ok(TraceTriple { x, y, z, level: 0, slopes })
}

/// A primitive simple closed geodesic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Geodesic {
    pub slope: Slope,
    pub trace: f64,
    pub length: f64,
    pub level: u32,
}

pub fn length_from_trace(t: f64) -> Result<f64> {
    if !(t > 2.0) {
        return Err(Error::NonHyperbolicTrace(t));
    }
    Ok(2.0 * (t / 2.0).acosh())
}

/// Every simple closed geodesic of length at most `cutoff`, sorted by slope.
///
/// Traces grow along every branch leaving the sink, so a branch is cut as
/// soon as its newest trace exceeds `2cosh(cutoff/2)`.
pub fn enumerate_geodesics(root: &TraceTriple, cutoff: f64, parallel: bool) -> Result<Vec<Geodesic>> {
    let sink = root.to_sink();
    let systole = sink.traces().into_iter().map(length_from_trace).try_fold(f64::INFINITY, |m, l| l.map(|l| m.min(l)))?;
    if cutoff < systole {
        return Err(Error::CutoffBelowSystole { cutoff, systole });
    }
    let max_trace = 2.0 * (cutoff / 2.0).cosh();
    let mut out = Vec::new();
    for i in 0..3 {
        let t = sink.traces()[i];
        if t <= max_trace {
            out.push(Geodesic { slope: sink.slopes[i], trace: t, length: length_from_trace(t)?, level: 0 });
        }
    }
    let branch = |i: usize| -> Result<Vec<Geodesic>> {
        let mut found = Vec::new();
        let mut stack = vec![(sink.flip(i), i)];
        while let Some((node, newest)) = stack.pop() {
            let t = node.traces()[newest];
            if t > max_trace {
                continue;
            }
            found.push(Geodesic { slope: node.slopes[newest], trace: t, length: length_from_trace(t)?, level: node.level });
            for j in 0..3 {
                if j != newest {
                    stack.push((node.flip(j), j));
                }
            }
        }
        Ok(found)
    };
    let branches: Vec<Vec<Geodesic>> = if parallel {
        (0..3).into_par_iter().map(branch).collect::<Result<_>>()?
    } else {
        (0..3).map(branch).collect::<Result<_>>()?
    };
    out.extend(branches.into_iter().flatten());
    out.sort_by(|a, b| a.slope.cmp(&b.slope));
    Ok(out)
}

/// Unpruned walk to a fixed depth below the sink; each entry is the newest
/// geodesic of a node together with the trace of its parent's newest one.
pub fn enumerate_to_depth(root: &TraceTriple, depth: u32) -> Vec<(Geodesic, f64)> {
    let sink = root.to_sink();
    let mut out = Vec::new();
    let mut stack: Vec<(TraceTriple, usize, f64)> =
        (0..3).map(|i| (sink.flip(i), i, sink.traces()[i])).collect();
    while let Some((node, newest, parent_trace)) = stack.pop() {
        let t = node.traces()[newest];
        out.push((
            Geodesic { slope: node.slopes[newest], trace: t, length: 2.0 * (t / 2.0).acosh(), level: node.level },
            parent_trace,
        ));
        if node.level < depth {
            for j in 0..3 {
                if j != newest {
                    stack.push((node.flip(j), j, t));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;
    use std::f64::consts::PI;

    #[test]
    fn markov_root() {
        let r = root_triple(0.0, true).unwrap();
        assert_eq!(r.x, 3.0);
        assert!(r.fricke_constant().abs() < 1e-10);
    }

    #[test]
    fn cone_root_by_bisection() {
        let k = kappa_cone(PI);
        let r = root_triple(k, true).unwrap();
        let t = r.x;
        assert!(t > 2.0);
        assert!((3.0 * t * t - t * t * t - k).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_root_projection() {
        for k in [0.0, kappa_cone(1.0), kappa_boundary(2.0)] {
            let r = root_triple(k, false).unwrap();
            assert!(r.fricke_residual(k) < 1e-10);
            let s = r.to_sink();
            assert!(s.fricke_residual(k) < 1e-10);
            for i in 0..3 {
                assert!(s.flip(i).traces()[i] >= s.traces()[i]);
            }
        }
        assert!(root_triple(4.5, true).is_err());
        assert!(root_triple(f64::NAN, false).is_err());
    }

    #[test]
    fn level_zero_at_markov() {
        let r = root_triple(0.0, true).unwrap();
        let systole = 2.0 * 1.5f64.acosh();
        let g = enumerate_geodesics(&r, systole + 1e-9, false).unwrap();
        assert_eq!(g.len(), 3);
        let slopes: HashSet<_> = g.iter().map(|g| g.slope).collect();
        assert_eq!(slopes, root_slopes().into_iter().collect());
        assert!(g.iter().all(|x| (x.length - systole).abs() < 1e-12));
        assert!(matches!(enumerate_geodesics(&r, 0.5, false), Err(Error::CutoffBelowSystole { .. })));
    }

    #[test]
    fn moves_preserve_relation_and_increase_traces() {
        for k in [0.0, kappa_cone(PI), kappa_cone(1.0), kappa_boundary(1.0)] {
            let r = root_triple(k, true).unwrap();
            let all = enumerate_to_depth(&r, 12);
            let mut seen = HashSet::new();
            for (g, parent) in &all {
                assert!(g.trace > *parent, "trace did not increase at {}", g.slope);
                assert!(seen.insert(g.slope), "duplicate slope {}", g.slope);
            }
            // 3·(2^12 − 1) nodes on levels 1..=12.
            assert_eq!(all.len(), 3 * ((1 << 12) - 1));
            let mut node = r;
            for step in 0..12 {
                node = node.flip(step % 3);
                assert!(node.fricke_residual(k) < 1e-10);
            }
        }
    }

    #[test]
    fn pruned_matches_unpruned() {
        let r = root_triple(kappa_cone(2.0), true).unwrap();
        let cutoff = 9.0;
        let pruned: HashSet<_> = enumerate_geodesics(&r, cutoff, false).unwrap().iter().map(|g| g.slope).collect();
        let mut full: HashSet<_> = enumerate_to_depth(&r, 12)
            .iter()
            .filter(|(g, _)| g.length <= cutoff)
            .map(|(g, _)| g.slope)
            .collect();
        full.extend(root_slopes());
        assert_eq!(pruned, full);
    }

    #[test]
    fn parallel_is_identical() {
        let r = root_triple(kappa_cone(1.0), true).unwrap();
        let a = enumerate_geodesics(&r, 20.0, false).unwrap();
        let b = enumerate_geodesics(&r, 20.0, true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn non_hyperbolic_trace_is_error() {
        assert!(matches!(length_from_trace(1.5), Err(Error::NonHyperbolicTrace(_))));
    }
}
