"""Vogt's theorem machinery for sampled spirals.

Cumulative boundary angles via continuous chord-direction unwrapping from
the reference point, Vogt's angle, the winding angle, chord-complement and
tangent-reversal counters, the bipolar angle delta(s), and shortness
classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .elements import NormalizedEnds, TWO_PI, canonical_angle, wrap_angle_low
from .errors import ResolutionTooCoarse

VOGT_CONSISTENT = "consistent"
VOGT_INCONSISTENT = "inconsistent"
VOGT_CIRCULAR = "circular"

# Maximum admissible per-step change of any tracked angle.  Above this the
# nearest-branch unwrapping is no longer trustworthy.
_MAX_STEP = 0.5 * math.pi


@dataclass(frozen=True)
class SampledSpiral:
    """Arclength-ordered samples (s, Z, tau, k-, k+) of a monotone-curvature curve.

    tau must be continuous-unwrapped; curvature jumps are carried as
    distinct left/right values at a sample.  Construction enforces the
    resolution contract (per-step |d tau| < pi/2, chord within pi/2 of the
    local tangent) and curvature monotonicity.
    """

    s: np.ndarray
    x: np.ndarray
    y: np.ndarray
    tau: np.ndarray
    k_left: np.ndarray
    k_right: np.ndarray
    circular: bool = False

    def __post_init__(self):
        for name in ("s", "x", "y", "tau", "k_left", "k_right"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        n = self.s.size
        if n < 1 or any(getattr(self, f).size != n for f in ("x", "y", "tau", "k_left", "k_right")):
            raise ValueError("sample arrays must be non-empty and equally sized")
        if self.s[0] != 0.0:
            raise ValueError("arclength must start at 0")
        if n == 1:
            return
        ds = np.diff(self.s)
        if np.any(ds <= 0.0):
            raise ValueError("arclength must be strictly increasing")
        dtau = np.abs(np.diff(self.tau))
        if np.any(dtau >= _MAX_STEP):
            raise ResolutionTooCoarse("per-step |d tau| must stay below pi/2")
        chord = np.arctan2(np.diff(self.y), np.diff(self.x))
        rel = np.abs(np.remainder(chord - self.tau[:-1] + math.pi, TWO_PI) - math.pi)
        if np.any(rel >= _MAX_STEP):
            raise ResolutionTooCoarse("chord direction departs more than pi/2 from the tangent")
        merged = np.empty(2 * n)
        merged[0::2] = self.k_left
        merged[1::2] = self.k_right
        d = np.diff(merged)
        if not self.circular:
            if np.all(d == 0.0):
                raise ValueError("constant-curvature data must be flagged circular")
            if np.any(d > 0.0) and np.any(d < 0.0):
                raise ValueError("merged curvature sequence must be monotone")

    @classmethod
    def from_rows(cls, rows, circular: bool = False) -> "SampledSpiral":
        """Build from rows (s, x, y, tau, k_left[, k_right])."""
        s, x, y, tau, kl, kr = [], [], [], [], [], []
        for row in rows:
            s.append(row[0]); x.append(row[1]); y.append(row[2]); tau.append(row[3])
            kl.append(row[4])
            kr.append(row[5] if len(row) > 5 else row[4])
        return cls(np.array(s), np.array(x), np.array(y), np.array(tau),
                   np.array(kl), np.array(kr), circular)

    @property
    def n(self) -> int:
        return self.s.size

    @property
    def length(self) -> float:
        return float(self.s[-1])

    @property
    def direction(self) -> int:
        """+1 for non-decreasing curvature, -1 for non-increasing, 0 circular."""
        merged = np.empty(2 * self.n)
        merged[0::2] = self.k_left
        merged[1::2] = self.k_right
        d = np.diff(merged)
        if np.any(d > 0.0):
            return 1
        if np.any(d < 0.0):
            return -1
        return 0

    def has_inflection(self) -> bool:
        """True when the curvature takes both signs (incl. a jump across zero)."""
        lo = min(self.k_left.min(), self.k_right.min())
        hi = max(self.k_left.max(), self.k_right.max())
        return lo < 0.0 < hi

    def end_chord_half(self) -> float:
        return 0.5 * math.hypot(self.x[-1] - self.x[0], self.y[-1] - self.y[0])

    def subspan(self, i0: int, i1: int) -> "SampledSpiral":
        """Sub-curve on sample indices [i0, i1], arclength rebased to 0."""
        if not (0 <= i0 <= i1 < self.n):
            raise IndexError("subspan indices out of range")
        sl = slice(i0, i1 + 1)
        return SampledSpiral(self.s[sl] - self.s[i0], self.x[sl], self.y[sl],
                             self.tau[sl], self.k_left[sl], self.k_right[sl],
                             circular=self.circular or i0 == i1)

    def mirrored(self) -> "SampledSpiral":
        """Reflection about the X axis; swaps the monotonicity class."""
        return SampledSpiral(self.s, self.x, -self.y, -self.tau,
                             -self.k_left, -self.k_right, self.circular)

    def normalized(self) -> "SampledSpiral":
        """Rotate/translate so the chord is [-c, c] on the X axis.

        The stored tangent becomes tau - mu~(0,S) with mu~ the cumulative
        chord direction, which fixes the 2*pi branch so that the
        reference-point tangent lies in (-pi, 0) / (0, pi).
        """
        if self.n == 1:
            return self
        mu = _chord_angle_cumulative(self)
        mx = 0.5 * (self.x[0] + self.x[-1])
        my = 0.5 * (self.y[0] + self.y[-1])
        cr, sr = math.cos(-mu), math.sin(-mu)
        xs = cr * (self.x - mx) - sr * (self.y - my)
        ys = sr * (self.x - mx) + cr * (self.y - my)
        return SampledSpiral(self.s, xs, ys, self.tau - mu,
                             self.k_left, self.k_right, self.circular)


@dataclass(frozen=True)
class CumulativeAngles:
    """Cumulative boundary angles, Vogt's angle, winding angle and counters."""

    alpha_tilde: float
    beta_tilde: float
    omega_tilde: float
    rho: float
    N1: int
    N2: int


def _sample_abs_curvature(curve: SampledSpiral) -> np.ndarray:
    """Per-sample |k| with 0 assigned to a sign-changing jump sample."""
    a = np.minimum(np.abs(curve.k_left), np.abs(curve.k_right))
    a[curve.k_left * curve.k_right < 0.0] = 0.0
    return a


def _reference_index(curve: SampledSpiral) -> int:
    """Sample of minimal |k|; midpoint of the run when a plateau exists."""
    a = _sample_abs_curvature(curve)
    amin = a.min()
    idx = np.flatnonzero(a == amin)
    # monotone curvature makes the argmin set one contiguous run
    return int(idx[(len(idx) - 1) // 2])


def _unwrap_steps(raw: np.ndarray, start: float) -> np.ndarray:
    """Continuously unwrap a sequence of raw angles beginning at start.

    Each step picks the branch nearest the previous value and must stay
    below pi/2 in magnitude.
    """
    vals = np.concatenate(([start], raw))
    d = np.remainder(np.diff(vals) + math.pi, TWO_PI) - math.pi
    if d.size and np.max(np.abs(d)) >= _MAX_STEP:
        raise ResolutionTooCoarse("chord direction step exceeds pi/2")
    return start + np.concatenate(([0.0], np.cumsum(d)))


def _chord_angle_cumulative(curve: SampledSpiral) -> float:
    """Cumulative chord direction mu~(0, S).

    Tracked continuously from the reference point, where mu(s,s) = tau(s):
    first grow the right end to S, then the left end down to 0.  Lemma-style
    path independence makes the particular path immaterial.
    """
    if curve.n == 1:
        return float(curve.tau[0])
    ref = _reference_index(curve)
    mu = float(curve.tau[ref])
    if ref < curve.n - 1:
        raw = np.arctan2(curve.y[ref + 1:] - curve.y[ref], curve.x[ref + 1:] - curve.x[ref])
        mu = float(_unwrap_steps(raw, mu)[-1])
    if ref > 0:
        raw = np.arctan2(curve.y[-1] - curve.y[ref - 1::-1], curve.x[-1] - curve.x[ref - 1::-1])
        mu = float(_unwrap_steps(raw, mu)[-1])
    return mu


def vogt_sign(alpha: float, beta: float, k1: float, k2: float) -> str:
    """Classify end data against sign(alpha+beta) = sign(k2-k1)."""
    s_ang = (alpha + beta > 0.0) - (alpha + beta < 0.0)
    s_cur = (k2 > k1) - (k2 < k1)
    if s_ang == 0 and s_cur == 0:
        return VOGT_CIRCULAR
    return VOGT_CONSISTENT if s_ang == s_cur else VOGT_INCONSISTENT


def short_bounds_check(ends: NormalizedEnds) -> bool:
    """Boundary-angle ranges of the short-spiral Vogt theorem.

    The interval endpoints are half-open exactly as the theorem states:
    +pi admitted when curvature increases, -pi when it decreases.
    """
    a, b = ends.alpha, ends.beta
    pi = math.pi
    if ends.kappa1 < ends.kappa2:
        return a + b > 0.0 and -pi < a <= pi and -pi < b <= pi
    if ends.kappa1 > ends.kappa2:
        return a + b < 0.0 and -pi <= a < pi and -pi <= b < pi
    return a + b == 0.0 and -pi < a < pi and -pi < b < pi


def cumulative_angles(curve: SampledSpiral) -> CumulativeAngles:
    """Cumulative alpha~, beta~, Vogt's angle, winding angle and N counters.

    rho integrates k by trapezoid with jumps contributing nothing
    (measure zero); N1, N2 come from reducing alpha~, beta~ to the
    half-open principal ranges of the counter theorem.
    """
    if curve.n == 1:
        return CumulativeAngles(0.0, 0.0, 0.0, 0.0, 0, 0)
    mu = _chord_angle_cumulative(curve)
    alpha_t = float(curve.tau[0] - mu)
    beta_t = float(curve.tau[-1] - mu)
    omega_t = 0.5 * (alpha_t + beta_t)
    ds = np.diff(curve.s)
    rho = float(np.sum(0.5 * (curve.k_right[:-1] + curve.k_left[1:]) * ds))
    if curve.direction >= 0:
        n1 = round((alpha_t - canonical_angle(alpha_t)) / TWO_PI)
        n2 = round((beta_t - canonical_angle(beta_t)) / TWO_PI)
    else:
        n1 = round((wrap_angle_low(alpha_t) - alpha_t) / TWO_PI)
        n2 = round((wrap_angle_low(beta_t) - beta_t) / TWO_PI)
    return CumulativeAngles(alpha_t, beta_t, omega_t, rho, int(n1), int(n2))


def _ensure_normalized(curve: SampledSpiral) -> SampledSpiral:
    c = curve.end_chord_half()
    tol = 1e-12 * max(c, 1.0)
    if (abs(curve.y[0]) <= tol and abs(curve.y[-1]) <= tol
            and abs(curve.x[0] + c) <= tol and abs(curve.x[-1] - c) <= tol
            and abs(curve.tau[_reference_index(curve)]) < math.pi):
        return curve
    return curve.normalized()


def _axis_crossings(curve: SampledSpiral) -> list[tuple[float, float]]:
    """Interior transversal crossings of the X axis as (s, x) pairs.

    A sample lying exactly on the axis is classified by the signs of its
    nonzero neighbors (a sign-preserving touch is not a crossing).
    """
    y = curve.y
    out = []
    prev_sign = 0
    prev_idx = -1
    for i in range(curve.n):
        sgn = (y[i] > 0.0) - (y[i] < 0.0)
        if sgn == 0:
            continue
        if prev_sign != 0 and sgn != prev_sign:
            if i == prev_idx + 1:
                t = y[prev_idx] / (y[prev_idx] - y[i])
                sc = curve.s[prev_idx] + t * (curve.s[i] - curve.s[prev_idx])
                xc = curve.x[prev_idx] + t * (curve.x[i] - curve.x[prev_idx])
            else:
                mid = (prev_idx + 1 + i - 1) // 2
                sc, xc = curve.s[mid], curve.x[mid]
            out.append((float(sc), float(xc)))
        prev_sign = sgn
        prev_idx = i
    return out


def _level_crossings(values: np.ndarray, positions: np.ndarray) -> list[tuple[float, float]]:
    """Interior crossings of the levels pi*(2m-1) by a sampled angle.

    Returns (position, level) pairs; samples exactly on a level follow the
    neighboring-sign convention.
    """
    t = (values - math.pi) / TWO_PI  # levels become the integers
    out = []
    prev_idx = -1
    for i in range(len(t)):
        if t[i] == round(t[i]):
            continue
        if prev_idx >= 0:
            lo, hi = (t[prev_idx], t[i]) if t[prev_idx] < t[i] else (t[i], t[prev_idx])
            m = math.floor(lo) + 1
            while m < hi:
                f = (m - t[prev_idx]) / (t[i] - t[prev_idx])
                p = positions[prev_idx] + f * (positions[i] - positions[prev_idx])
                out.append((float(p), (2 * m + 1) * math.pi))
                m += 1
        prev_idx = i
    return out


def chord_counters(curve: SampledSpiral) -> tuple[int, int, int, int]:
    """(N1, N2, M1, M2): complement crossings and tangent reversals.

    N1/N2 count transversal interior crossings of the left/right chord
    complements; M1/M2 count interior reversal points (cos tau = -1) on the
    branches before/after the reference point.  The theorem's pairwise
    equality is asserted; a mismatch indicates undersampling.
    """
    nc = _ensure_normalized(curve)
    c = nc.end_chord_half()
    n1 = n2 = 0
    for sc, xc in _axis_crossings(nc):
        if abs(abs(xc) - c) <= 1e-9 * max(c, 1.0):
            raise ResolutionTooCoarse("axis crossing too close to a chord endpoint to classify")
        if xc < -c:
            n1 += 1
        elif xc > c:
            n2 += 1
    s_ref = nc.s[_reference_index(nc)]
    m1 = m2 = 0
    for sc, _lvl in _level_crossings(nc.tau, nc.s):
        if sc < s_ref:
            m1 += 1
        else:
            m2 += 1
    if (n1, n2) != (m1, m2):
        raise ResolutionTooCoarse(
            f"counter mismatch N=({n1},{n2}) vs M=({m1},{m2}); refine the sampling")
    return n1, n2, m1, m2


def is_short(curve: SampledSpiral) -> bool:
    """True iff the arc meets no chord complement (equivalently: no reversal)."""
    n1, n2, m1, m2 = chord_counters(curve)
    return m1 == 0 and m2 == 0


def _bipolar_angles(nc: SampledSpiral) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative chord directions mu1(s) = mu~(0,s) and mu2(s) = mu~(s,S)."""
    n = nc.n
    raw1 = np.arctan2(nc.y[1:] - nc.y[0], nc.x[1:] - nc.x[0])
    mu1 = _unwrap_steps(raw1, float(nc.tau[0]))
    raw2 = np.arctan2(nc.y[-1] - nc.y[-2::-1], nc.x[-1] - nc.x[-2::-1])
    mu2 = _unwrap_steps(raw2, float(nc.tau[-1]))[::-1]
    return mu1, mu2


def delta_profile(curve: SampledSpiral) -> list[tuple[float, float]]:
    """delta(s) = mu2(s) - mu1(s), the turning of the chord pair at Z(s).

    Runs from -alpha~ to beta~ and is strictly monotone in the direction of
    the curvature monotonicity.
    """
    nc = _ensure_normalized(curve)
    if nc.n < 2:
        raise ValueError("delta profile needs at least two samples")
    mu1, mu2 = _bipolar_angles(nc)
    delta = mu2 - mu1
    return list(zip(nc.s.tolist(), delta.tolist()))


def omega_split(curve: SampledSpiral) -> tuple[np.ndarray, np.ndarray]:
    """Vogt angles of the two subarcs at each sample: (omega1(s), omega2(s))."""
    nc = _ensure_normalized(curve)
    mu1, mu2 = _bipolar_angles(nc)
    omega1 = 0.5 * (nc.tau[0] + nc.tau) - mu1
    omega2 = 0.5 * (nc.tau + nc.tau[-1]) - mu2
    return omega1, omega2


def winding_bounds_check(ca: CumulativeAngles, has_inflection: bool) -> bool:
    """Winding-angle bounds: |rho| < 2|w~| + 2 pi, and 0 < 2|w~| < |rho| without inflection."""
    ok = abs(ca.rho) < 2.0 * abs(ca.omega_tilde) + TWO_PI
    if not has_inflection:
        ok = ok and 0.0 < 2.0 * abs(ca.omega_tilde) < abs(ca.rho)
    return ok


def omega_tilde_by_integration(curve: SampledSpiral) -> float:
    """Debug oracle: Vogt's angle from the exact differential dH along u=0.

    Integrates H(0, v) = k(v)/2 - sin(beta(0,v))/h(0,v) by trapezoid; the
    integrand's 0/0 at v = 0 has limit 0.  Cross-checks the unwrapping path.
    """
    if curve.n < 2:
        return 0.0
    dx = curve.x - curve.x[0]
    dy = curve.y - curve.y[0]
    h = np.hypot(dx, dy)
    k = 0.5 * (curve.k_left + curve.k_right)
    integrand = np.zeros(curve.n)
    with np.errstate(invalid="ignore", divide="ignore"):
        sin_beta = (np.sin(curve.tau) * dx - np.cos(curve.tau) * dy) / h
        integrand[1:] = 0.5 * k[1:] - sin_beta[1:] / h[1:]
    return float(np.trapezoid(integrand, curve.s))
