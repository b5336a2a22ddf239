"""Wedge regions, their edges, causal complements, and inclusion predicates.

A wedge is stored by its two future-lightlike normals l1, l2 (normalized to
time component 1) plus a point p on its edge; membership is the strict pair
of inequalities l1.(x - p) < 0 and l2.(x - p) > 0.  For the standard wedge
about a spatial unit vector e this reduces to  x_spatial . e > |x_t|.  The
causal complement swaps the two normals.  Wedges carry the metric topology
induced by the Frobenius distance on (l1, l2, edge plane).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateEdge, ZeroAxis
from .minkowski import (
    METRIC,
    FourVector,
    LorentzElement,
    PoincareElement,
    classify_vector,
    CausalClass,
    minkowski_inner,
)
from .tolerances import resolve_tol

__all__ = [
    "Wedge",
    "EdgePlane",
    "DoubleCone",
    "InterpolationStep",
    "standard_wedge",
    "act",
    "causal_complement",
    "edge",
    "wedges_equal",
    "strictly_inside",
    "strictly_outside_approx",
    "interpolating_wedges",
    "mapping_between",
]


def _minkowski_orthonormal_pair(v1, v2, signs):
    """Diagonalize the Minkowski Gram matrix of two independent vectors.

    Returns unit vectors spanning the same plane whose squared norms have
    the requested signs, ordered to match ``signs``.
    """
    gram = np.array(
        [
            [v1 @ METRIC @ v1, v1 @ METRIC @ v2],
            [v2 @ METRIC @ v1, v2 @ METRIC @ v2],
        ]
    )
    w, q = np.linalg.eigh(gram)  # ascending eigenvalues
    vecs, norms = [], []
    for i in range(2):
        u = q[0, i] * v1 + q[1, i] * v2
        vecs.append(u)
        norms.append(w[i])
    out = []
    for wanted in signs:
        idx = int(np.argmax(norms)) if wanted > 0 else int(np.argmin(norms))
        nn = norms[idx]
        if wanted > 0 and nn <= 0:
            raise DegenerateEdge("expected a timelike direction in the plane")
        if wanted < 0 and nn >= 0:
            raise DegenerateEdge("expected a spacelike direction in the plane")
        out.append(vecs[idx] / np.sqrt(abs(nn)))
        norms[idx] = 0.0 if wanted > 0 else np.inf  # do not pick it twice
    return out


@dataclass(frozen=True)
class EdgePlane:
    """Two-dimensional spacelike affine plane point + span{u1, u2}.

    u1, u2 are Minkowski-orthonormal spacelike directions (u.u = -1) and the
    base point is the representative of the plane Minkowski-orthogonal to
    both directions, so equal planes have equal canonical data up to basis
    rotation in the plane.
    """

    point: FourVector
    u1: FourVector
    u2: FourVector

    def __post_init__(self):
        for u in (self.u1, self.u2):
            if abs(minkowski_inner(u, u) + 1.0) > 1e-6:
                raise DegenerateEdge("edge basis vector is not unit spacelike")
        if abs(minkowski_inner(self.u1, self.u2)) > 1e-6:
            raise DegenerateEdge("edge basis is not orthogonal")

    def point_at(self, s, t):
        return FourVector.from_array(
            self.point.array + s * self.u1.array + t * self.u2.array
        )

    def offplane_residual(self, x):
        """Euclidean norm of the component of x - point off the plane."""
        v = x.array - self.point.array
        v_plane = -minkowski_inner_arr(v, self.u1.array) * self.u1.array
        v_plane = v_plane - minkowski_inner_arr(v, self.u2.array) * self.u2.array
        return float(np.linalg.norm(v - v_plane))

    def contains(self, x, tol=1e-9):
        scale = 1.0 + float(np.linalg.norm(x.array - self.point.array))
        return self.offplane_residual(x) <= tol * scale


def minkowski_inner_arr(a, b):
    return float(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3])


class Wedge:
    """Open wedge region determined by two lightlike normals and an edge point."""

    __slots__ = ("_l1", "_l2", "_p")

    def __init__(self, l1, l2, p, tol=None):
        tol = resolve_tol(tol)
        for name, l in (("l1", l1), ("l2", l2)):
            arr = l.array
            scale = max(1.0, float(arr @ arr))
            if abs(minkowski_inner(l, l)) > 10.0 * tol * scale:
                raise ValueError(f"{name} is not lightlike")
            if abs(arr[0] - 1.0) > 10.0 * tol:
                raise ValueError(f"{name} must be normalized to time component 1")
        if float(np.linalg.norm(l1.array - l2.array)) <= 1e3 * tol:
            raise ValueError("the two lightlike normals must be distinct")
        self._l1, self._l2, self._p = l1, l2, p

    @classmethod
    def from_rays(cls, l1, l2, p, tol=None):
        """Build a wedge from unnormalized future-lightlike rays."""
        a1, a2 = l1.array, l2.array
        if a1[0] <= 0 or a2[0] <= 0:
            raise ValueError("normals must be future lightlike")
        return cls(
            FourVector.from_array(a1 / a1[0]),
            FourVector.from_array(a2 / a2[0]),
            p,
            tol=tol,
        )

    @property
    def l1(self):
        return self._l1

    @property
    def l2(self):
        return self._l2

    @property
    def p(self):
        return self._p

    def margins(self, x):
        """The pair (l1.(x-p), l2.(x-p)); inside means (negative, positive)."""
        d = x.array - self._p.array
        return (
            minkowski_inner_arr(self._l1.array, d),
            minkowski_inner_arr(self._l2.array, d),
        )

    def contains(self, x):
        a, b = self.margins(x)
        return a < 0.0 and b > 0.0

    def __repr__(self):
        return f"Wedge(l1={self._l1!r}, l2={self._l2!r}, p={self._p!r})"


def standard_wedge(e, tol=None):
    """Wedge about the spatial unit direction e with edge through the origin."""
    tol = resolve_tol(tol)
    e = np.asarray(e, dtype=float)
    n = float(np.linalg.norm(e))
    if n < tol:
        raise ZeroAxis("wedge direction has norm below tolerance")
    e = e / n
    l1 = FourVector(1.0, *e)
    l2 = FourVector(1.0, *(-e))
    return Wedge(l1, l2, FourVector(0.0, 0.0, 0.0, 0.0), tol=tol)


def act(g, w, tol=None):
    """Image of a wedge under a Poincare transformation (orthochronous).

    The transformed normals are rescaled back to time component 1, which
    leaves the defining inequalities unchanged up to positive factors.
    """
    g.lorentz.require_proper_orthochronous(tol)
    m = g.lorentz.m
    l1 = FourVector.from_array(m @ w.l1.array)
    l2 = FourVector.from_array(m @ w.l2.array)
    return Wedge.from_rays(l1, l2, g.apply(w.p), tol=tol)


def causal_complement(w):
    """Swap the two lightlike normals; the edge is shared."""
    return Wedge(w.l2, w.l1, w.p)


def edge(w, tol=None):
    """Edge plane of a wedge: the set where both defining forms vanish."""
    tol = resolve_tol(tol)
    rows = np.stack([METRIC @ w.l1.array, METRIC @ w.l2.array])
    _, _, vh = np.linalg.svd(rows)
    basis = vh[2:]  # Minkowski-orthogonal complement of span{l1, l2}
    u1, u2 = _minkowski_orthonormal_pair(basis[0], basis[1], signs=(-1, -1))
    parr = w.p.array
    q = parr.copy()
    q = q + minkowski_inner_arr(parr, u1) * u1
    q = q + minkowski_inner_arr(parr, u2) * u2
    return EdgePlane(
        FourVector.from_array(q),
        FourVector.from_array(u1),
        FourVector.from_array(u2),
    )


def wedges_equal(w1, w2, tol=1e-9):
    """Equality as regions: same normalized normals and the same edge plane."""
    if float(np.linalg.norm(w1.l1.array - w2.l1.array)) > tol:
        return False
    if float(np.linalg.norm(w1.l2.array - w2.l2.array)) > tol:
        return False
    e1, e2 = edge(w1), edge(w2)
    if not e1.contains(e2.point, tol=max(tol, 1e-9)):
        return False
    for u in (e2.u1, e2.u2):
        probe = FourVector.from_array(e1.point.array + u.array)
        if not e1.contains(probe, tol=max(tol, 1e-9)):
            return False
    return True


class DoubleCone:
    """Open intersection of a forward and a backward light cone."""

    __slots__ = ("_past", "_future")

    def __init__(self, apex_past, apex_future, tol=None):
        d = apex_future - apex_past
        if classify_vector(d, tol) is not CausalClass.TIMELIKE_FUTURE:
            raise ValueError("apexes must be separated by a future timelike vector")
        self._past, self._future = apex_past, apex_future

    @property
    def apex_past(self):
        return self._past

    @property
    def apex_future(self):
        return self._future

    @property
    def center(self):
        return FourVector.from_array(0.5 * (self._past.array + self._future.array))

    def contains(self, x):
        up = x - self._past
        down = self._future - x
        return (
            minkowski_inner(up, up) > 0.0
            and up.t > 0.0
            and minkowski_inner(down, down) > 0.0
            and down.t > 0.0
        )

    def extreme_points(self, n_equator=26):
        """Apexes plus a deterministic sample of the equatorial 2-sphere.

        The closed double cone is the convex hull of its apexes and the
        sphere where both light cones meet; 26 lattice directions sample it.
        """
        d = self._future.array - self._past.array
        c = 0.5 * (self._past.array + self._future.array)
        rho = 0.5 * np.sqrt(minkowski_inner_arr(d, d))
        row = (METRIC @ d)[None, :]
        _, _, vh = np.linalg.svd(row)
        raw = vh[1:]  # spacelike 3-space orthogonal to d
        basis = []
        for v in raw:
            u = v.copy()
            for b in basis:
                u = u + minkowski_inner_arr(u, b) * b  # subtract projection (b.b = -1)
            u = u / np.sqrt(-minkowski_inner_arr(u, u))
            basis.append(u)
        dirs = []
        for i in (-1, 0, 1):
            for j in (-1, 0, 1):
                for k in (-1, 0, 1):
                    if i == j == k == 0:
                        continue
                    dirs.append(np.array([i, j, k], dtype=float))
        dirs = [v / np.linalg.norm(v) for v in dirs[:n_equator]]
        points = [self._past, self._future]
        for v in dirs:
            w = rho * (v[0] * basis[0] + v[1] * basis[1] + v[2] * basis[2])
            points.append(FourVector.from_array(c + w))
        return points


def _required_margin(w, x, neighborhood):
    """Linearized bound on how much the defining forms move when the wedge is
    dragged by group elements within ``neighborhood`` of the identity."""
    reach = 1.0 + float(np.linalg.norm(x.array - w.p.array))
    return 2.0 * neighborhood * reach


def strictly_inside(c, w, neighborhood=1e-6):
    """True iff the double cone stays inside every wedge within the
    neighborhood of w (margin test on the extreme points of c)."""
    for x in c.extreme_points():
        a, b = w.margins(x)
        m = _required_margin(w, x, neighborhood)
        if not (a <= -m and b >= m):
            return False
    return True


def strictly_outside_approx(c, w, neighborhood=1e-6):
    """Same stability predicate, stated from the wedge's side: every wedge in
    a metric ball around w contains c.  Coincides with ``strictly_inside``."""
    return strictly_inside(c, w, neighborhood)


def _frame_from_plane(point_arr, u1_arr, u2_arr):
    """Proper orthochronous frame whose last two columns span the given
    spacelike plane; columns are (timelike, spacelike, u1, u2)."""
    rows = np.stack([METRIC @ u1_arr, METRIC @ u2_arr])
    _, _, vh = np.linalg.svd(rows)
    w1, w2 = vh[2:]
    tau, sigma = _minkowski_orthonormal_pair(w1, w2, signs=(1, -1))
    if tau[0] < 0:
        tau = -tau
    f = np.column_stack([tau, sigma, u1_arr, u2_arr])
    if np.linalg.det(f) < 0:
        f = np.column_stack([tau, -sigma, u1_arr, u2_arr])
    return f


def _wedge_frame(w):
    """Frame adapted to a wedge: timelike and spacelike legs from the normals,
    edge basis in the last two columns."""
    l1, l2 = w.l1.array, w.l2.array
    dot = minkowski_inner_arr(l1, l2)
    tau = (l1 + l2) / np.sqrt(2.0 * dot)
    sigma = (l1 - l2) / np.sqrt(2.0 * dot)
    pl = edge(w)
    f = np.column_stack([tau, sigma, pl.u1.array, pl.u2.array])
    if np.linalg.det(f) < 0:
        f = np.column_stack([tau, sigma, pl.u1.array, -pl.u2.array])
    return f, pl.point.array


def mapping_between(w1, w2, tol=None):
    """A Poincare element g with act(g, w1) = w2, built from adapted frames."""
    f1, p1 = _wedge_frame(w1)
    f2, p2 = _wedge_frame(w2)
    lam = LorentzElement(f2 @ METRIC @ f1.T @ METRIC, tol=tol)
    shift = FourVector.from_array(p2 - lam.m @ p1)
    return PoincareElement(lam, shift)


class InterpolationStep(NamedTuple):
    wedge: Wedge
    upsilon: PoincareElement


def _spacelike_gram_schmidt(d1, d2):
    """Minkowski Gram-Schmidt of two spacelike directions; continuous in the
    inputs, so frames built from it vary continuously with the family."""
    v1 = d1 / np.sqrt(-minkowski_inner_arr(d1, d1))
    w = d2 + minkowski_inner_arr(d2, v1) * v1
    v2 = w / np.sqrt(-minkowski_inner_arr(w, w))
    return v1, v2


def _complement_legs(v1, v2, tau_hint, sigma_hint):
    """Future timelike / spacelike legs of the plane Minkowski-orthogonal to
    span{v1, v2}, aligned with the hint legs for continuity."""
    def project_out(w):
        return w + minkowski_inner_arr(w, v1) * v1 + minkowski_inner_arr(w, v2) * v2

    tau = project_out(tau_hint)
    tt = minkowski_inner_arr(tau, tau)
    if tt <= 1e-12:
        raise DegenerateEdge("frame construction degenerated; family is too far from the base")
    tau = tau / np.sqrt(tt)
    if tau[0] < 0:
        tau = -tau
    sigma = project_out(sigma_hint)
    sigma = sigma - minkowski_inner_arr(sigma, tau) * tau
    ss = minkowski_inner_arr(sigma, sigma)
    if ss >= -1e-12:
        raise DegenerateEdge("frame construction degenerated; family is too far from the base")
    return tau, sigma / np.sqrt(-ss)


def interpolating_wedges(reflections, base_reflection, base_wedge, tol=None):
    """Wedges interpolating between a family of reflections and a base wedge.

    For each reflection r in the family, the affine average of the identity
    with r . base_reflection maps the base edge to a plane fixed pointwise
    by r; if that plane is spacelike it is the edge of the returned wedge,
    otherwise DegenerateEdge is raised.  Each step carries the Poincare
    element upsilon mapping the base wedge onto the interpolated one; as the
    family approaches the base reflection, upsilon approaches the identity.
    """
    tol = resolve_tol(tol)
    base_el = getattr(base_reflection, "element", base_reflection)
    f0, q0 = _wedge_frame(base_wedge)
    tau0, sigma0, u01, u02 = f0.T
    # the base reflection must fix the base edge pointwise
    for probe in (q0, q0 + u01, q0 + u02):
        moved = base_el.apply(FourVector.from_array(probe))
        if float(np.linalg.norm(moved.array - probe)) > 1e-6:
            raise ValueError("base reflection does not fix the base wedge edge")
    f0_inv = METRIC @ f0.T @ METRIC

    steps = []
    for r in reflections:
        el = getattr(r, "element", r)
        prod = el @ base_el
        lin = 0.5 * (np.eye(4) + prod.lorentz.m)
        q = 0.5 * (q0 + prod.apply(FourVector.from_array(q0)).array)
        d1, d2 = lin @ u01, lin @ u02
        gram = np.array(
            [
                [minkowski_inner_arr(d1, d1), minkowski_inner_arr(d1, d2)],
                [minkowski_inner_arr(d2, d1), minkowski_inner_arr(d2, d2)],
            ]
        )
        evals = np.linalg.eigvalsh(gram)
        if evals[1] >= -tol * max(1.0, abs(evals[0])):
            raise DegenerateEdge("interpolated plane is not spacelike")
        v1, v2 = _spacelike_gram_schmidt(d1, d2)
        tau, sigma = _complement_legs(v1, v2, tau0, sigma0)
        f = np.column_stack([tau, sigma, v1, v2])
        lam = LorentzElement(f @ f0_inv, tol=tol)
        shift = FourVector.from_array(q - lam.m @ q0)
        ups = PoincareElement(lam, shift)
        steps.append(InterpolationStep(act(ups, base_wedge, tol), ups))
    return steps
