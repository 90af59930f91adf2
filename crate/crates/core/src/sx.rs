//! The invariant `S(X)`: the largest volume of a K-semistable log structure,
//! realized by cutting the moment polytope with a half-space orthogonal to
//! its barycenter.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{LinearMap, VPolytope};
use crate::presets;
use crate::rational::{dot, factorial, int, primitive_direction, to_f64, Rational};
use crate::toric::{GapVerdict, ToricLogFano};

/// Default bound on the barycenter of the optimal cut for it to count as certified.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Bisection stops once the bracket for the cutoff is this narrow.
const CUTOFF_WIDTH_LOG2: u32 = 50;

/// The body `(aΔ_n − 1) \ (bΔ_n − 1)` with `Δ_n` the standard simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexDifference {
    n: usize,
    a: Rational,
    b: Rational,
    det_correction: Rational,
}

/// Optimal half-space cut.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SxResult {
    #[serde(rename = "w")]
    pub cut_weight: f64,
    /// `n! · vol(cut) / det_correction`, i.e. `n! S(X)` in the degree convention.
    #[serde(rename = "n_factorial_S")]
    pub s_value: f64,
    pub certified: bool,
    pub residual: f64,
}

/// `s^n / n! · (s / (n+1) − 1)`, the first moment of `sΔ_n − 1` along `1/n`.
fn simplex_moment(n: usize, s: &Rational) -> Rational {
    simplex_volume(n, s) * (s / int(n as i64 + 1) - int(1))
}

fn simplex_volume(n: usize, s: &Rational) -> Rational {
    num_traits::pow(s.clone(), n) / Rational::from_integer(factorial(n))
}

impl SimplexDifference {
    pub fn new(n: usize, a: Rational, b: Rational, det_correction: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        if b.is_negative() || a <= b {
            return Err(Error::EmptyBody);
        }
        if det_correction < Rational::one() {
            return Err(Error::InvalidSpec("det_correction must be at least 1".into()));
        }
        Ok(Self {
            n,
            a,
            b,
            det_correction,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn det_correction(&self) -> &Rational {
        &self.det_correction
    }

    /// Every coordinate of the barycenter is
    /// `(M(a) − M(b)) / (V(a) − V(b))` with `V(s) = s^n/n!`, `M(s) = V(s)(s/(n+1) − 1)`.
    pub fn barycenter(&self) -> Vec<Rational> {
        let num = simplex_moment(self.n, &self.a) - simplex_moment(self.n, &self.b);
        let den = simplex_volume(self.n, &self.a) - simplex_volume(self.n, &self.b);
        vec![num / den; self.n]
    }

    /// Degree `n! vol / det_correction` of the uncut body.
    pub fn degree(&self) -> Rational {
        (num_traits::pow(self.a.clone(), self.n) - num_traits::pow(self.b.clone(), self.n)) / &self.det_correction
    }

    pub fn to_vpolytope(&self) -> Result<VPolytope> {
        let n = self.n;
        let corner = |s: &Rational, i: usize| -> Vec<Rational> {
            (0..n).map(|j| if i == j { s - int(1) } else { int(-1) }).collect()
        };
        let mut pts: Vec<Vec<Rational>> = (0..n).map(|i| corner(&self.a, i)).collect();
        if self.b.is_zero() {
            pts.push(vec![int(-1); n]);
        } else {
            pts.extend((0..n).map(|i| corner(&self.b, i)));
        }
        VPolytope::from_points(n, pts)
    }

    /// Weight `w` such that `((a−w)Δ_n − 1) \ (bΔ_n − 1)` has barycenter zero.
    ///
    /// Bisects on the branch `a − w ∈ (max(b, n), a)` where the moment is increasing.
    pub fn solve_cut_weight(&self) -> Result<f64> {
        let n = self.n;
        let a = to_f64(&self.a);
        let b = to_f64(&self.b);
        let nf = n as f64;
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        let m = |s: f64| s.powi(n as i32) / fact * (s / (nf + 1.0) - 1.0);
        let target = m(b);
        let f = |s: f64| m(s) - target;
        if f(a) == 0.0 || (simplex_moment(n, &self.a) - simplex_moment(n, &self.b)).is_zero() {
            return Ok(0.0);
        }
        let mut lo = b.max(nf);
        let mut hi = a;
        if !(lo < hi && f(lo) < 0.0 && f(hi) > 0.0) {
            return Err(Error::NoRootInRange);
        }
        while hi - lo > 0.0 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
        Ok(a - s)
    }

    pub fn sx(&self) -> Result<SxResult> {
        sx_invariant_polytope(&self.to_vpolytope()?, &self.det_correction, DEFAULT_TOLERANCE)
    }
}

/// Barycenter of a simplex difference; see [`SimplexDifference::barycenter`].
pub fn simplex_difference_barycenter(sd: &SimplexDifference) -> Vec<Rational> {
    sd.barycenter()
}

pub fn solve_cut_weight(sd: &SimplexDifference) -> Result<f64> {
    sd.solve_cut_weight()
}

pub fn sx_invariant(t: &ToricLogFano) -> Result<SxResult> {
    sx_invariant_polytope(t.vertices(), &Rational::one(), DEFAULT_TOLERANCE)
}

/// Runs the cut search on the image of `t` under `map`, dividing volumes by `|det map|`.
pub fn sx_invariant_with_map(t: &ToricLogFano, map: &LinearMap, tol: f64) -> Result<SxResult> {
    let image = t.vertices().transform(map)?;
    sx_invariant_polytope(&image, &map.determinant().abs(), tol)
}

/// State of the cut search, exposed so that callers can inspect the bracket.
#[derive(Debug, Clone)]
pub struct CutSearch {
    /// Primitive integer vector along the barycenter.
    pub direction: Vec<BigInt>,
    /// `max_P <direction, x>`.
    pub top: Rational,
    /// Final cutoff `c`; the cut is `{<direction, x> <= c}`.
    pub cutoff: Rational,
    pub cut: VPolytope,
    /// `(midpoint, objective)` pairs in bisection order.
    pub trace: Vec<(Rational, Rational)>,
}

fn origin_is_interior(p: &VPolytope) -> bool {
    p.hull_facets().iter().all(|f| f.facet.offset.is_positive())
}

/// `<u, ∫_{P ∩ {<u,x> <= c}} x dλ>`.
fn cut_objective(p: &VPolytope, u: &[Rational], c: &Rational) -> Result<(Rational, VPolytope)> {
    let cut = p.intersect_halfspace(u, c)?;
    let (_, moment) = cut.volume_and_moment();
    Ok((dot(u, &moment), cut))
}

/// Bisection for the cutoff along the barycenter direction. Returns `None`
/// when the polytope is already balanced.
pub fn cut_search(p: &VPolytope) -> Result<Option<CutSearch>> {
    if !origin_is_interior(p) {
        return Err(Error::OriginNotInterior);
    }
    let (_, moment) = p.volume_and_moment();
    let direction = match primitive_direction(&moment) {
        Some(d) => d,
        None => return Ok(None),
    };
    let u: Vec<Rational> = direction.iter().cloned().map(Rational::from_integer).collect();
    let top = p
        .vertices()
        .iter()
        .map(|v| dot(&u, v))
        .max()
        .expect("polytope has vertices");
    let mut lo = Rational::zero();
    let mut hi = top.clone();
    let (mut g_lo, _) = cut_objective(p, &u, &lo)?;
    let mut g_hi = dot(&u, &moment);
    if !(g_lo.is_negative() && g_hi.is_positive()) {
        return Err(Error::NonConvergence("cut objective does not change sign".into()));
    }
    let width = &top / Rational::from_integer(BigInt::one() << CUTOFF_WIDTH_LOG2);
    let mut trace = Vec::new();
    while &hi - &lo > width {
        let mid = (&lo + &hi) / int(2);
        let (g, _) = cut_objective(p, &u, &mid)?;
        if g <= g_lo || g >= g_hi {
            return Err(Error::NonConvergence("cut objective is not monotone".into()));
        }
        trace.push((mid.clone(), g.clone()));
        if g.is_zero() {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if g.is_negative() {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
            g_hi = g;
        }
    }
    let cutoff = (&lo + &hi) / int(2);
    let cut = p.intersect_halfspace(&u, &cutoff)?;
    Ok(Some(CutSearch {
        direction,
        top,
        cutoff,
        cut,
        trace,
    }))
}

/// Optimal cut of `p` along its barycenter, with `s_value` divided by `det_correction`.
///
/// `certified` is false when the cut only balances the barycenter direction;
/// the value is then merely an upper bound.
pub fn sx_invariant_polytope(p: &VPolytope, det_correction: &Rational, tol: f64) -> Result<SxResult> {
    let n = p.dim();
    let nf = Rational::from_integer(factorial(n));
    let Some(search) = cut_search(p)? else {
        return Ok(SxResult {
            cut_weight: 0.0,
            s_value: to_f64(&(nf * p.volume() / det_correction)),
            certified: true,
            residual: 0.0,
        });
    };
    let (vol, moment) = search.cut.volume_and_moment();
    let residual = moment
        .iter()
        .map(|m| to_f64(&(m / &vol)).abs())
        .fold(0.0, f64::max);
    Ok(SxResult {
        cut_weight: to_f64(&(&search.top - &search.cutoff)),
        s_value: to_f64(&(nf * vol / det_correction)),
        certified: residual <= tol,
        residual,
    })
}

/// One row of the toric del Pezzo table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceRow {
    pub label: String,
    pub degree: i64,
    pub expected_degree: i64,
    pub k_semistable: bool,
    /// `IsPn`, or whether the degree is at most that of `P^1 × P^1`.
    pub verdict: GapVerdict,
}

impl SurfaceRow {
    pub fn holds(&self) -> bool {
        self.degree == self.expected_degree && self.verdict != GapVerdict::ViolatesGap
    }
}

/// Degrees of the smooth toric del Pezzo surfaces against the gap value 8.
pub fn n2_classification_check() -> Vec<SurfaceRow> {
    let mut surfaces: Vec<(ToricLogFano, i64)> = (0..=3).map(|m| (presets::del_pezzo(m), 9 - m as i64)).collect();
    surfaces.insert(1, (presets::p1_x_p1(), 8));
    surfaces
        .into_iter()
        .map(|(t, expected_degree)| {
            let degree = t.log_fano_volume().degree;
            let degree_i = degree.to_integer().to_string().parse().unwrap_or(i64::MAX);
            let verdict = if t.is_pn() {
                GapVerdict::IsPn
            } else if degree <= int(8) {
                GapVerdict::SatisfiesGap
            } else {
                GapVerdict::ViolatesGap
            };
            SurfaceRow {
                label: t.label().unwrap_or_default().to_string(),
                degree: if degree.is_integer() { degree_i } else { i64::MAX },
                expected_degree,
                k_semistable: t.is_k_semistable(),
                verdict,
            }
        })
        .collect()
}

/// The two benchmark cases in normal form: the blow-up of
/// `P^3` in a point and `P(O ⊕ O(2))`.
pub fn benchmark_bodies() -> [SimplexDifference; 2] {
    [
        SimplexDifference::new(3, int(4), int(2), int(1)).expect("valid body"),
        SimplexDifference::new(3, int(5), int(1), int(2)).expect("valid body"),
    ]
}

/// Closed forms of the cut weights of [`benchmark_bodies`].
pub fn benchmark_weights() -> [f64; 2] {
    let r = (19.0 - 3.0 * 33f64.sqrt()).cbrt();
    let w1 = 2.0 / 3.0 * (5.0 - 4.0 / r - r);
    let q = 2.0 - 2f64.sqrt();
    let w2 = 4.0 - (4.0 / q).cbrt() - (2.0 * q).cbrt();
    [w1, w2]
}
