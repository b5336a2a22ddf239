"""Spacetime reflections across spacelike planes and their factorizations.

A reflection here is a Poincare transformation that squares to the identity,
has unit determinant, reverses the direction of time, and fixes a
two-dimensional spacelike plane pointwise.  Every proper orthochronous
transformation close to such data factors into a product of two reflections
sharing one factor direction; the factorization is pinned down by the polar
decomposition of the linear part.
"""

from __future__ import annotations

import numpy as np

from .errors import NotAdmissible, NotCommuting, PreconditionViolated, ZeroAxis
from .minkowski import (
    METRIC,
    ConjugacyClass,
    FourVector,
    LorentzElement,
    PoincareElement,
    canonical_sign,
    classify_conjugacy,
    frobenius,
    make_boost,
    make_rotation,
    polar_decompose,
)
from .tolerances import resolve_tol
from .wedges import EdgePlane, Wedge, _frame_from_plane, _minkowski_orthonormal_pair, edge

__all__ = [
    "Reflection",
    "reflection_about_axis",
    "reflection_for_wedge",
    "is_reflection",
    "perpendicular_unit",
    "admissible_directions",
    "factor_into_reflections",
    "stability_group_element",
    "ambiguity_conjugate",
    "verify_ambiguity_classification",
    "reflection_conjugator",
]


class Reflection:
    """An involutive, unit-determinant, time-reversing Poincare element.

    The fixed-point set of such an element is an affine plane; construction
    checks it is two-dimensional and spacelike.
    """

    __slots__ = ("_g", "_plane")

    def __init__(self, element, tol=None, validate=True):
        tol = resolve_tol(tol)
        if not isinstance(element, PoincareElement):
            raise TypeError("expected a PoincareElement")
        self._g = element
        self._plane = None
        if validate:
            self._validate(tol)

    def _validate(self, tol):
        lam = self._g.lorentz.m
        square = self._g @ self._g
        if not square.is_identity(100 * tol):
            raise PreconditionViolated("element does not square to the identity")
        if abs(np.linalg.det(lam) - 1.0) > 1e3 * tol:
            raise PreconditionViolated("element does not have unit determinant")
        if lam[0, 0] >= 0:
            raise PreconditionViolated("element does not reverse time orientation")
        # A Lorentz involution with det +1 splits space into a fixed and a
        # negated g-orthogonal plane pair; time reversal forces the negated
        # plane timelike, hence the fixed one spacelike.  The trace (+2 for
        # the fixed plane, -2 for the negated one) separates the only other
        # involution in this class, total inversion, whose trace is -4.
        if np.trace(lam) < -2.0:
            raise PreconditionViolated(
                "fixed-point set is not a two-dimensional plane"
            )

    def _fixed_plane(self, tol):
        lam = self._g.lorentz.m
        a = self._g.translation.array
        # fixed points of x -> lam x + a form (a/2) + ker(lam - 1):
        # lam (a/2 + k) + a = a/2 + k needs lam a = -a, guaranteed by g*g = 1
        kernel = lam - np.eye(4)
        _, s, vh = np.linalg.svd(kernel)
        small = s < 1e-6 * max(1.0, s[0])
        if int(np.sum(small)) != 2:
            raise PreconditionViolated(
                "fixed-point set is not a two-dimensional plane"
            )
        b1, b2 = vh[2], vh[3]
        u1, u2 = _minkowski_orthonormal_pair(b1, b2, signs=(-1, -1))
        return EdgePlane(
            FourVector.from_array(0.5 * a),
            FourVector.from_array(u1),
            FourVector.from_array(u2),
        )

    @property
    def element(self) -> PoincareElement:
        return self._g

    @property
    def fixed_plane(self) -> EdgePlane:
        if self._plane is None:
            self._plane = self._fixed_plane(resolve_tol(None))
        return self._plane

    def apply(self, x: FourVector) -> FourVector:
        return self._g.apply(x)

    def conjugated_by(self, g: PoincareElement) -> "Reflection":
        """The reflection g r g^-1; fixes the g-image of the fixed plane."""
        return Reflection(g @ self._g @ g.inverse(), validate=False)

    def distance_to(self, other: "Reflection") -> float:
        return self._g.distance_to(other._g)

    def __repr__(self):
        return f"Reflection({self._g!r})"


def reflection_about_axis(direction, tol=None) -> Reflection:
    """Linear reflection that flips time and the given spatial direction.

    Fixes the spatial plane orthogonal to the direction; for the z axis the
    matrix is diag(-1, 1, 1, -1).
    """
    tol = resolve_tol(tol)
    e = _unit_spatial(direction)
    m = np.eye(4)
    m[0, 0] = -1.0
    m[1:, 1:] -= 2.0 * np.outer(e, e)
    lam = LorentzElement(m, tol=tol, validate=False)
    return Reflection(PoincareElement(lam), tol=tol, validate=False)


def reflection_for_wedge(w: Wedge, tol=None) -> Reflection:
    """The unique reflection whose fixed plane is the edge of the wedge."""
    tol = resolve_tol(tol)
    pl = edge(w, tol)
    u1, u2 = pl.u1.array, pl.u2.array
    proj = -(np.outer(u1, u1) + np.outer(u2, u2)) @ METRIC
    lam_m = 2.0 * proj - np.eye(4)
    lam = LorentzElement(lam_m, tol=tol, validate=False)
    a = FourVector.from_array((np.eye(4) - lam_m) @ pl.point.array)
    return Reflection(PoincareElement(lam, a), tol=tol, validate=False)


def is_reflection(element, tol=None) -> bool:
    """Whether a Poincare element is a reflection across a spacelike plane."""
    try:
        Reflection(element, tol=tol)
    except (PreconditionViolated, TypeError):
        return False
    return True


def _unit_spatial(direction):
    d = np.asarray(direction, dtype=float).reshape(3)
    n = np.linalg.norm(d)
    if n < 1e-12:
        raise ZeroAxis("spatial direction has zero length")
    return d / n


def perpendicular_unit(v):
    """A deterministic unit vector orthogonal to the given spatial vector.

    Picks the coordinate axis least aligned with v, projects out v, and fixes
    the overall sign so the first nonzero component is positive.
    """
    v = _unit_spatial(v)
    mags = np.abs(v)
    # first coordinate within tolerance of the smallest, so that round-off
    # dust in v cannot flip the tie-break between exact zeros
    pick = int(np.argmax(mags < mags.min() + 1e-9))
    axis = np.zeros(3)
    axis[pick] = 1.0
    w = axis - np.dot(axis, v) * v
    w /= np.linalg.norm(w)
    return canonical_sign(w)


def admissible_directions(lam: LorentzElement, tol=None):
    """Unit directions orthogonal to both the rotation axis and the boost
    direction of the polar decomposition of lam.

    Returns a pair of candidates.  When both axes are defined and independent
    the direction is unique up to sign and both entries are meaningful cross
    checks; in degenerate cases a deterministic completion is used and the
    second entry is an alternative valid choice.
    """
    tol = resolve_tol(tol)
    pd = polar_decompose(lam, tol)
    return _admissible_from_polar(pd)


def _admissible_from_polar(pd):
    r_axis, b_dir = pd.axis, pd.boost_dir
    if r_axis is not None and b_dir is not None:
        cross = np.cross(r_axis, b_dir)
        n = np.linalg.norm(cross)
        if n > 1e-8:
            e = canonical_sign(cross / n)
            return e, -e
        # parallel axes: anything orthogonal to the common line works
        e1 = perpendicular_unit(r_axis)
        e2 = np.cross(r_axis, e1)
        return e1, canonical_sign(e2 / np.linalg.norm(e2))
    constraint = r_axis if r_axis is not None else b_dir
    if constraint is None:
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    e1 = perpendicular_unit(constraint)
    e2 = np.cross(constraint / np.linalg.norm(constraint), e1)
    return e1, canonical_sign(e2)


def factor_into_reflections(lam: LorentzElement, direction=None, tol=None):
    """Factor a proper orthochronous lam as r1 * r2 with both factors
    reflections about planes orthogonal to a shared spatial direction.

    With R, B the polar factors and e orthogonal to both the rotation axis
    and the boost direction, the factors are R * flip(e) and flip(e) * B,
    where flip(e) is the linear reflection about e.  The product telescopes
    because flip(e) squares to the identity.
    """
    tol = resolve_tol(tol)
    lam.require_proper_orthochronous(tol)
    pd = polar_decompose(lam, tol)
    if direction is None:
        e = _admissible_from_polar(pd)[0]
    else:
        e = _unit_spatial(direction)
        _check_admissible(e, pd, tol)
    flip = reflection_about_axis(e, tol).element
    r1 = Reflection(PoincareElement(pd.rotation) @ flip, tol=tol, validate=False)
    r2 = Reflection(flip @ PoincareElement(pd.boost), tol=tol, validate=False)
    return r1, r2


def _check_admissible(e, pd, tol):
    if pd.axis is not None and abs(np.dot(e, pd.axis)) > 100 * tol:
        raise NotAdmissible("direction is not orthogonal to the rotation axis")
    if pd.boost_dir is not None and abs(np.dot(e, pd.boost_dir)) > 100 * tol:
        raise NotAdmissible("direction is not orthogonal to the boost direction")


def stability_group_element(e0, angle: float, rapidity: float, tol=None) -> LorentzElement:
    """Rotation about e0 composed with a boost along e0.

    These two commute, so the family is abelian with additive parameters; it
    preserves the wedge with direction e0 setwise.
    """
    tol = resolve_tol(tol)
    e = _unit_spatial(e0)
    rot = make_rotation(e, angle, tol)
    boost = make_boost(e, rapidity, tol)
    return rot @ boost


def ambiguity_conjugate(commuting, pair, tol=None):
    """Conjugate both members of a factorization pair by an element that
    commutes with their product.

    Returns (c r1 c^-1, c r2 c^-1); the product of the new pair equals the
    product of the old one, so this walks through the alternative
    factorizations of the same transformation.  NotCommuting is raised when
    the claimed element does not commute with the product.
    """
    tol = resolve_tol(tol)
    r1, r2 = pair
    c = commuting.m if isinstance(commuting, LorentzElement) else np.asarray(commuting, dtype=float)
    prod = (r1.element @ r2.element).lorentz.m
    scale = max(1.0, frobenius(prod))
    if frobenius(c @ prod - prod @ c) > 100 * tol * scale:
        raise NotCommuting("element does not commute with the factored transformation")
    g = PoincareElement(LorentzElement(c, tol=tol, validate=False))
    # conjugate with the numerical inverse rather than the metric transpose:
    # for an input slightly off the group the metric transpose is not its
    # inverse, and the conjugation would amplify that defect by the size of
    # the factors; the true inverse keeps the similarity exact
    g_inv = PoincareElement(LorentzElement(np.linalg.inv(c), validate=False))
    return (
        Reflection(g @ r1.element @ g_inv, validate=False),
        Reflection(g @ r2.element @ g_inv, validate=False),
    )


def _l0_frame(lam: LorentzElement, tol):
    """Orthonormal frame F with F^-1 lam F block-diagonal: a boost in the
    (t, z) block and a rotation in the (x, y) block."""
    m = lam.m
    vals, vecs = np.linalg.eig(m)
    order = np.argsort(-np.abs(vals))
    vals, vecs = vals[order], vecs[:, order]
    if np.abs(vals[0]) > 1.0 + 1e-9:
        # boost content: real eigenvectors on the light cone
        plus = np.real(vecs[:, 0])
        idx_min = int(np.argmin(np.abs(vals)))
        minus = np.real(vecs[:, idx_min])
        plus = plus / plus[0] if abs(plus[0]) > 1e-12 else plus
        minus = minus / minus[0] if abs(minus[0]) > 1e-12 else minus
        if plus[0] < 0:
            plus = -plus
        if minus[0] < 0:
            minus = -minus
        dot = _mi(plus, minus)
        that = (plus + minus) / np.sqrt(2.0 * dot)
        zhat = (plus - minus) / np.sqrt(2.0 * dot)
        rows = np.stack([METRIC @ that, METRIC @ zhat])
        _, _, vh = np.linalg.svd(rows)
        xhat, yhat = _minkowski_orthonormal_pair(vh[2], vh[3], signs=(-1, -1))
    else:
        # rotation content: complex eigenvector spans the rotation plane
        idx = None
        for k in range(4):
            if abs(np.imag(vals[k])) > 1e-9:
                idx = k
                break
        if idx is None:
            # no strict rotation either: lam is the identity on this branch;
            # any orthonormal frame block-diagonalizes it
            return np.eye(4)
        v = vecs[:, idx]
        xr, xi = np.real(v), np.imag(v)
        xhat, yhat = _minkowski_orthonormal_pair(xr, xi, signs=(-1, -1))
        rows = np.stack([METRIC @ xhat, METRIC @ yhat])
        _, _, vh = np.linalg.svd(rows)
        that, zhat = _minkowski_orthonormal_pair(vh[2], vh[3], signs=(1, -1))
        if that[0] < 0:
            that = -that
    f = np.column_stack([that, xhat, yhat, zhat])
    if np.linalg.det(f) < 0:
        yhat = -yhat
        f = np.column_stack([that, xhat, yhat, zhat])
    return f


def _mi(a, b):
    return float(a @ METRIC @ b)


def _l0_parameters(m):
    """Rotation angle about z and boost rapidity along t-z of a matrix that is
    (approximately) block-diagonal in the (t, z) and (x, y) blocks; the third
    return value is the off-block residual."""
    angle = float(np.arctan2(m[2, 1], m[1, 1]))
    # read the rapidity from the sinh entry: arcsinh never amplifies entry
    # errors, while arctanh of the velocity ratio loses cosh^2 digits once
    # the rapidity is large
    rapidity = float(np.arcsinh(m[3, 0]))
    mask = np.ones((4, 4))
    for i in (0, 3):
        for j in (0, 3):
            mask[i, j] = 0.0
    for i in (1, 2):
        for j in (1, 2):
            mask[i, j] = 0.0
    residual = frobenius(m * mask)
    return angle, rapidity, residual


def _l0_element(angle, rapidity):
    rot = make_rotation([0.0, 0.0, 1.0], angle)
    boost = make_boost([0.0, 0.0, 1.0], rapidity)
    return rot.m @ boost.m


def verify_ambiguity_classification(lam: LorentzElement, trials: int, seed, tol=None):
    """Check that alternative two-reflection factorizations of lam all arise
    from the canonical pair by conjugation inside the group commuting with lam.

    lam must classify as conjugate into the rotation-boost block group (so in
    particular it is not an involution); otherwise PreconditionViolated is
    raised.  Random alternative pairs are produced by conjugating the
    canonical pair with random commuting elements; for each, the conjugator
    carrying the canonical pair onto it is solved for in closed form inside
    the commuting group and the worst reconstruction defect is reported,
    measured relative to the size of the compared factors (conjugation can
    inflate matrix norms arbitrarily, so absolute defects are meaningless).
    """
    tol = resolve_tol(tol)
    kind = classify_conjugacy(lam, tol)
    if kind is not ConjugacyClass.CONJUGATE_INTO_L0:
        raise PreconditionViolated(
            f"classification is {kind.value}; ambiguity analysis needs the rotation-boost class"
        )
    r1, r2 = factor_into_reflections(lam, tol=tol)
    f = _l0_frame(lam, tol)
    f_inv = METRIC @ f.T @ METRIC
    rng = np.random.default_rng(seed)
    results = []
    for _ in range(int(trials)):
        alpha = float(rng.uniform(-np.pi, np.pi))
        beta = float(rng.uniform(-2.0, 2.0))
        commuting = LorentzElement(f @ _l0_element(alpha, beta) @ f_inv, validate=False)
        g1, g2 = ambiguity_conjugate(commuting, (r1, r2), tol=tol)
        # move everything into the block frame; there conjugation by a
        # commuting element d acts as x -> x d^-2, so d^2 is read off from
        # the product of the two factors and halved inside the abelian block
        # group.  The solve and the comparison both happen in that frame:
        # the frame congruence is a bijection of the statements, and going
        # back to world coordinates would only multiply round-off by the
        # squared conditioning of the frame.
        t1 = f_inv @ g1.element.lorentz.m @ f
        t2 = f_inv @ g2.element.lorentz.m @ f
        c1 = f_inv @ r1.element.lorentz.m @ f
        c2 = f_inv @ r2.element.lorentz.m @ f
        d_sq = t1 @ c1
        angle, rapidity, block_res = _l0_parameters(d_sq)
        d = _l0_element(0.5 * angle, 0.5 * rapidity)
        d_inv = _l0_element(-0.5 * angle, -0.5 * rapidity)
        scale = max(1.0, frobenius(t1), frobenius(t2), frobenius(d_sq))
        defect = max(
            frobenius(d @ c1 @ d_inv - t1),
            frobenius(d @ c2 @ d_inv - t2),
            block_res,
        ) / scale
        results.append(defect)
    worst = max(results) if results else 0.0
    return {
        "check": "ambiguity-classification",
        "samples": len(results),
        "max_residual": float(worst),
        "pass": bool(worst <= 1e-8),
    }


def reflection_conjugator(r: Reflection, tol=None) -> PoincareElement:
    """Poincare element carrying the reflection about the x axis to r.

    The conjugator maps the reference fixed plane (the y-z coordinate plane)
    onto the fixed plane of r; because a reflection is determined by its
    fixed plane, conjugating the reference reflection by the result
    reproduces r exactly up to roundoff.
    """
    tol = resolve_tol(tol)
    pl = r.fixed_plane
    # frame columns send e_t -> tau, e_x -> sigma, e_y -> u1, e_z -> u2,
    # carrying the y-z coordinate plane (fixed by the reference reflection)
    # onto the fixed plane of r
    f = _frame_from_plane(pl.point.array, pl.u1.array, pl.u2.array)
    lam = LorentzElement(f, tol=tol, validate=False)
    return PoincareElement(lam, pl.point)
