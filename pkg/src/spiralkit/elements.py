"""Curvature elements, directed circles, and the inversive invariant Q.

A curvature element (x, y, tau, k) is a point, a tangent direction and a
signed curvature; it simultaneously names the directed constant-curvature
curve ("circle") through it.  k = 0 is a straight line, k > 0 bends left.
Everything here is immutable and side-effect free.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import CoincidentEndpoints, InversionCenterHit

TWO_PI = 2.0 * math.pi

# |k*s| below this switches arc evaluation to a 4-term series, keeping the
# k -> 0 limit continuous to ~1e-12 absolute.
_ARC_SERIES_CUT = 1e-6

# Scale factor of the tangency fence: |Q| <= fence*(1+|kappa1|)(1+|kappa2|)
# classifies a pair as tangent (Q = 0).
TANGENCY_FENCE = 1e-10


def wrap_angle_low(theta: float) -> float:
    """Reduce an angle to [-pi, pi)."""
    r = math.fmod(theta + math.pi, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    return r - math.pi


def canonical_angle(theta: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    return -wrap_angle_low(-theta)


def _xy(p) -> tuple[float, float]:
    if isinstance(p, complex):
        return p.real, p.imag
    return float(p[0]), float(p[1])


@dataclass(frozen=True)
class CurvatureElement:
    """Point + tangent direction + signed curvature; a directed circle.

    tau is stored unwrapped (any real); ``canonicalized`` reduces it to
    (-pi, pi].  All fields must be finite: curvature poles at endpoints,
    while admissible in the underlying theory, are not modeled here.
    """

    x: float
    y: float
    tau: float
    k: float

    def __post_init__(self):
        for v in (self.x, self.y, self.tau, self.k):
            if not math.isfinite(v):
                raise ValueError("curvature element fields must be finite")

    @property
    def point(self) -> complex:
        return complex(self.x, self.y)

    @property
    def is_line(self) -> bool:
        return self.k == 0.0

    def center(self) -> complex:
        """Circle center (x - sin tau / k, y + cos tau / k); requires k != 0."""
        if self.k == 0.0:
            raise ValueError("a straight line has no center")
        return complex(self.x - math.sin(self.tau) / self.k,
                       self.y + math.cos(self.tau) / self.k)

    def radius(self) -> float:
        if self.k == 0.0:
            return math.inf
        return 1.0 / abs(self.k)

    def canonicalized(self) -> "CurvatureElement":
        return CurvatureElement(self.x, self.y, canonical_angle(self.tau), self.k)

    def reversed(self) -> "CurvatureElement":
        """Same circle traversed the other way."""
        return CurvatureElement(self.x, self.y, canonical_angle(self.tau + math.pi), -self.k)

    def mirrored(self) -> "CurvatureElement":
        """Reflection about the X axis."""
        return CurvatureElement(self.x, -self.y, -self.tau, -self.k)


@dataclass(frozen=True)
class NormalizedEnds:
    """Chord-normalized end data: boundary elements K(-1,0,alpha,kappa1), K(1,0,beta,kappa2).

    kappa = c*k is the dimensionless normalized curvature; c is the
    half-chord of the original (un-normalized) pair.
    """

    alpha: float
    beta: float
    kappa1: float
    kappa2: float
    c: float = 1.0

    def __post_init__(self):
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise ValueError("half-chord c must be positive and finite")

    @property
    def omega(self) -> float:
        return 0.5 * (self.alpha + self.beta)

    @property
    def gamma(self) -> float:
        return 0.5 * (self.alpha - self.beta)

    def elements(self) -> tuple[CurvatureElement, CurvatureElement]:
        """Boundary circles in the normalized frame (chord [-1, 1])."""
        return (CurvatureElement(-1.0, 0.0, self.alpha, self.kappa1),
                CurvatureElement(1.0, 0.0, self.beta, self.kappa2))

    def mirrored(self) -> "NormalizedEnds":
        return NormalizedEnds(-self.alpha, -self.beta, -self.kappa1, -self.kappa2, self.c)


@dataclass(frozen=True)
class Similarity:
    """Direct (or reflecting) similarity w = scale * R(rotation) * z + t."""

    rotation: float = 0.0
    scale: float = 1.0
    tx: float = 0.0
    ty: float = 0.0
    reflect: bool = False

    def __post_init__(self):
        if not (self.scale > 0.0 and math.isfinite(self.scale)):
            raise ValueError("similarity scale must be positive and finite")

    def apply(self, p) -> tuple[float, float]:
        px, py = _xy(p)
        z = complex(px, py)
        if self.reflect:
            z = z.conjugate()
        w = self.scale * cmath.exp(1j * self.rotation) * z + complex(self.tx, self.ty)
        return w.real, w.imag

    def apply_element(self, e: CurvatureElement) -> CurvatureElement:
        wx, wy = self.apply((e.x, e.y))
        if self.reflect:
            return CurvatureElement(wx, wy, self.rotation - e.tau, -e.k / self.scale)
        return CurvatureElement(wx, wy, e.tau + self.rotation, e.k / self.scale)

    def inverse(self) -> "Similarity":
        t = complex(self.tx, self.ty)
        if self.reflect:
            u = cmath.exp(1j * self.rotation) * t.conjugate() / self.scale
            return Similarity(self.rotation, 1.0 / self.scale, -u.real, -u.imag, True)
        u = cmath.exp(-1j * self.rotation) * t / self.scale
        return Similarity(-self.rotation, 1.0 / self.scale, -u.real, -u.imag, False)


def circle_side(p, e: CurvatureElement) -> float:
    """Implicit circle equation C(x, y; K).

    Negative means p lies to the left of the directed boundary, positive to
    the right, zero on it.
    """
    px, py = _xy(p)
    dx = px - e.x
    dy = py - e.y
    return (e.k * (dx * dx + dy * dy)
            + 2.0 * dx * math.sin(e.tau) - 2.0 * dy * math.cos(e.tau))


def in_material(p, e: CurvatureElement) -> bool:
    """Closed 'region of material' Mat(K): C(p; K) <= 0."""
    return circle_side(p, e) <= 0.0


def q_invariant(e1: CurvatureElement, e2: CurvatureElement) -> float:
    """Inversive invariant Q of a pair of directed circles.

    Symmetric, independent of where on each circle the elements sit, and
    invariant under motions, homothety and inversion.  Zero iff the circles
    are tangent (or equally directed lines); sin^2(psi/2) for circles
    meeting at angle psi; negative for disjoint spiral-compatible pairs.
    """
    dx = e2.x - e1.x
    dy = e2.y - e1.y
    dtau = e2.tau - e1.tau
    s = math.sin(0.5 * dtau)
    return (0.25 * e1.k * e2.k * (dx * dx + dy * dy) + s * s
            + 0.5 * e2.k * (dx * math.sin(e1.tau) - dy * math.cos(e1.tau))
            - 0.5 * e1.k * (dx * math.sin(e2.tau) - dy * math.cos(e2.tau)))


def q_normalized(ends: NormalizedEnds) -> float:
    """Q in the chord-normalized frame: (k1+sin a)(k2-sin b) + sin^2 w."""
    sw = math.sin(ends.omega)
    return ((ends.kappa1 + math.sin(ends.alpha))
            * (ends.kappa2 - math.sin(ends.beta)) + sw * sw)


def q_is_tangent(q: float, kappa1: float, kappa2: float,
                 fence: float = TANGENCY_FENCE) -> bool:
    """Numeric fence for the trichotomy Q < 0 / Q = 0 / Q > 0."""
    return abs(q) <= fence * (1.0 + abs(kappa1)) * (1.0 + abs(kappa2))


def invert_element(e: CurvatureElement, e0: CurvatureElement) -> CurvatureElement:
    """Invert a curvature element about the circle carried by e0 (k0 != 0).

    The image point is the standard inversive image, the tangent is the
    reflected transport 2*arg(P-O) - tau + pi, and the image curvature is
    2*k0*(1 - 2*Q01) - k.  Inversion about a line (k0 = 0) is excluded;
    compose reflections explicitly instead.
    """
    if e0.k == 0.0:
        raise ValueError("inversion about a straight line is excluded")
    center = e0.center()
    r = e0.radius()
    d = e.point - center
    rho2 = d.real * d.real + d.imag * d.imag
    if rho2 <= (1e-12 * max(r, 1.0)) ** 2:
        raise InversionCenterHit("element point coincides with the inversion center")
    image = center + (r * r / rho2) * d
    phi = math.atan2(d.imag, d.real)
    tau2 = canonical_angle(2.0 * phi - e.tau + math.pi)
    k2 = 2.0 * e0.k * (1.0 - 2.0 * q_invariant(e0, e)) - e.k
    return CurvatureElement(image.real, image.imag, tau2, k2)


def invert_point(p, e0: CurvatureElement) -> tuple[float, float]:
    """Inversive image of a bare point about the circle carried by e0."""
    if e0.k == 0.0:
        raise ValueError("inversion about a straight line is excluded")
    center = e0.center()
    r = e0.radius()
    px, py = _xy(p)
    d = complex(px, py) - center
    rho2 = d.real * d.real + d.imag * d.imag
    if rho2 <= (1e-12 * max(r, 1.0)) ** 2:
        raise InversionCenterHit("point coincides with the inversion center")
    image = center + (r * r / rho2) * d
    return image.real, image.imag


def normalize_pair(e1: CurvatureElement, e2: CurvatureElement
                   ) -> tuple[NormalizedEnds, Similarity]:
    """Similarity taking e1's point to (-1,0) and e2's point to (1,0).

    Returns the transported end data (angles canonicalized to (-pi, pi],
    curvatures multiplied by the half-chord c) and the map itself.  Q is a
    homothety invariant, so q_normalized of the result equals
    q_invariant(e1, e2).
    """
    chord = e2.point - e1.point
    length = abs(chord)
    if length <= 1e-14 * (1.0 + abs(e1.point) + abs(e2.point)):
        raise CoincidentEndpoints("element points coincide")
    c = 0.5 * length
    rot = -cmath.phase(chord)
    mid = 0.5 * (e1.point + e2.point)
    t = -(cmath.exp(1j * rot) / c) * mid
    sim = Similarity(rot, 1.0 / c, t.real, t.imag)
    alpha = canonical_angle(e1.tau + rot)
    beta = canonical_angle(e2.tau + rot)
    return NormalizedEnds(alpha, beta, c * e1.k, c * e2.k, c), sim


def evaluate_arc(e: CurvatureElement, s: float) -> CurvatureElement:
    """Flow along the constant-curvature curve of e by arclength s.

    Z(s) = Z(0) + e^{i tau} (e^{iks} - 1)/(ik) for k != 0, a straight step
    for k = 0; tau(s) = tau + k s, curvature unchanged.  For |k s| < 1e-6 a
    4-term series removes the 0/0 so the k -> 0 limit is continuous.
    """
    x = e.k * s
    e_itau = cmath.exp(1j * e.tau)
    if abs(x) < _ARC_SERIES_CUT:
        ix = 1j * x
        disp = s * e_itau * (1.0 + ix * (0.5 + ix * (1.0 / 6.0 + ix / 24.0)))
    else:
        disp = e_itau * (cmath.exp(1j * x) - 1.0) / (1j * e.k)
    z = e.point + disp
    return CurvatureElement(z.real, z.imag, e.tau + x, e.k)
