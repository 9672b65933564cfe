"""Two-dimensional confidence regions |Y - Y0| <= M for canonical pairs.

With all other canonical coordinates pinned to zero, the bound
``|lambda_i z_i^2 + lambda_j z_j^2| <= M`` cuts a conic slice whose
shape depends only on the eigenvalue signs: an ellipse interior when
they agree, an orthogonal-hyperbola band (unbounded, so not a
confidence region proper) when they differ.

Boundaries are parametrized with (cos, sin) for ellipses and
(cosh, sinh) for hyperbolas, and mapped back to original variables by
an affine table with one row per variable:

    x_v = center_v + coef1_v * basis1(param) + coef2_v * basis2(param)

Here M is a deterministic band on the transformed response, not a
probabilistic coverage set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .canonical import ZERO_TOL_FACTOR, CanonicalModel, fluctuation, from_canonical
from .errors import (
    DegeneratePair,
    IndexOutOfRange,
    InputError,
    NonPositiveBound,
    WrongKind,
)

# Slack applied to the membership test so exact boundary points
# (|Y - Y0| = M up to roundoff) count as inside.
CONTAINS_SLACK = 1e-12

DEFAULT_T_MAX = 3.0


class RegionKind(enum.Enum):
    """Conic class of a canonical pair's confidence region."""

    ELLIPTICAL_MAXIMUM = "elliptical_maximum"
    ELLIPTICAL_MINIMUM = "elliptical_minimum"
    HYPERBOLIC = "hyperbolic"

    @property
    def is_elliptical(self) -> bool:
        return self is not RegionKind.HYPERBOLIC


@dataclass(frozen=True, eq=False)
class RegionParametrization:
    """A parametrized 2D region boundary for one canonical pair.

    ``pair`` holds 1-based canonical indices in basis order: for
    ellipses (cos axis, sin axis) as requested, for hyperbolas
    (cosh axis with lambda > 0, sinh axis with lambda < 0).
    ``affine`` is an (n, 3) table of (center, coef on basis 1, coef on
    basis 2) rows, one per original variable.
    """

    pair: tuple[int, int]
    bound: float
    kind: RegionKind
    semiaxes: tuple[float, float]
    names: tuple[str, ...]
    affine: np.ndarray

    @property
    def basis(self) -> tuple[str, str]:
        if self.kind.is_elliptical:
            return ("cos", "sin")
        return ("cosh", "sinh")

    @property
    def unbounded(self) -> bool:
        """Hyperbolic bands do not enclose a finite region."""
        return not self.kind.is_elliptical


def _check_pair(canon: CanonicalModel, i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise IndexOutOfRange(f"canonical pair needs two distinct axes, got ({i}, {j})")
    for k in (i, j):
        if not 1 <= k <= canon.n:
            raise IndexOutOfRange(f"canonical axis {k} outside 1..{canon.n}")
    return i, j


def region_kind(canon: CanonicalModel, i: int, j: int) -> RegionKind:
    """Classify the (z_i, z_j) region by the eigenvalue sign product."""
    i, j = _check_pair(canon, i, j)
    lam = canon.lambdas
    tol = ZERO_TOL_FACTOR * float(np.abs(lam).max())
    bad = [k for k in (i, j) if abs(lam[k - 1]) <= tol]
    if bad:
        raise DegeneratePair(f"canonical axes {bad} have eigenvalues below tolerance {tol:g}")
    li, lj = lam[i - 1], lam[j - 1]
    if li * lj > 0.0:
        return RegionKind.ELLIPTICAL_MAXIMUM if li < 0.0 else RegionKind.ELLIPTICAL_MINIMUM
    return RegionKind.HYPERBOLIC


def _region_center(canon: CanonicalModel, center) -> np.ndarray:
    if center is None:
        return np.asarray(canon.center, dtype=float)
    c = np.asarray(center, dtype=float)
    if c.shape != (canon.n,):
        raise IndexOutOfRange(f"center has shape {c.shape}, expected ({canon.n},)")
    return c


def ellipse_region(canon: CanonicalModel, i: int, j: int, bound: float,
                   center=None) -> RegionParametrization:
    """Elliptical region z_i = a_i r cos(t), z_j = a_j r sin(t), r <= 1.

    Semiaxes are sqrt(M/|lambda|). ``center`` overrides the canonical
    center for the affine table (the shape itself is translation
    invariant).
    """
    kind = region_kind(canon, i, j)
    if not kind.is_elliptical:
        raise WrongKind(f"pair ({i}, {j}) has mixed eigenvalue signs; use hyperbola_region")
    if not bound > 0.0:
        raise NonPositiveBound(f"bound must be positive, got {bound!r}")
    lam = canon.lambdas
    a_i = float(np.sqrt(bound / abs(lam[i - 1])))
    a_j = float(np.sqrt(bound / abs(lam[j - 1])))
    affine = np.column_stack([
        _region_center(canon, center),
        a_i * canon.axes[:, i - 1],
        a_j * canon.axes[:, j - 1],
    ])
    affine.setflags(write=False)
    return RegionParametrization(
        pair=(i, j), bound=float(bound), kind=kind,
        semiaxes=(a_i, a_j), names=canon.names, affine=affine,
    )


def hyperbola_region(canon: CanonicalModel, i: int, j: int, bound: float,
                     center=None) -> RegionParametrization:
    """Hyperbolic band z_pos = a r cosh(t), z_neg = b r sinh(t), |r| <= 1.

    The positive-eigenvalue axis carries cosh and the negative one
    sinh; the pair is reordered internally if needed. The band is
    unbounded, so it bounds the response fluctuation without enclosing
    a finite region.
    """
    kind = region_kind(canon, i, j)
    if kind.is_elliptical:
        raise WrongKind(f"pair ({i}, {j}) has same-sign eigenvalues; use ellipse_region")
    if not bound > 0.0:
        raise NonPositiveBound(f"bound must be positive, got {bound!r}")
    lam = canon.lambdas
    pos, neg = (i, j) if lam[i - 1] > 0.0 else (j, i)
    a_pos = float(np.sqrt(bound / lam[pos - 1]))
    a_neg = float(np.sqrt(bound / abs(lam[neg - 1])))
    affine = np.column_stack([
        _region_center(canon, center),
        a_pos * canon.axes[:, pos - 1],
        a_neg * canon.axes[:, neg - 1],
    ])
    affine.setflags(write=False)
    return RegionParametrization(
        pair=(pos, neg), bound=float(bound), kind=kind,
        semiaxes=(a_pos, a_neg), names=canon.names, affine=affine,
    )


def boundary_points(region: RegionParametrization, count: int,
                    t_max: float = DEFAULT_T_MAX) -> list[tuple[float, tuple[float, float], np.ndarray]]:
    """Sample the r = 1 boundary at evenly spaced parameter values.

    Ellipses are sampled at t = 2*pi*k/count (endpoint excluded, so
    count = 4 hits the four vertices); hyperbolas at count points
    spanning [-t_max, t_max] inclusive. Returns
    (parameter, (z_i, z_j), original-variable point) triples.
    """
    if count < 2:
        raise InputError(f"need at least 2 samples, got {count}")
    if region.kind.is_elliptical:
        params = 2.0 * np.pi * np.arange(count) / count
        basis1, basis2 = np.cos(params), np.sin(params)
    else:
        params = np.linspace(-t_max, t_max, count)
        basis1, basis2 = np.cosh(params), np.sinh(params)
    a_i, a_j = region.semiaxes
    out = []
    for t, c1, c2 in zip(params, basis1, basis2):
        z = (a_i * c1, a_j * c2)
        x = region.affine[:, 0] + region.affine[:, 1] * c1 + region.affine[:, 2] * c2
        out.append((float(t), z, x))
    return out


def contains(canon: CanonicalModel, point, bound: float) -> bool:
    """Membership test |Y - Y0| <= M, evaluated in the canonical frame.

    Boundary points constructed at r = 1 satisfy equality up to
    roundoff and are counted as inside.
    """
    if not bound > 0.0:
        raise NonPositiveBound(f"bound must be positive, got {bound!r}")
    return abs(fluctuation(canon, point)) <= bound * (1.0 + CONTAINS_SLACK)


def max_intervals(region: RegionParametrization) -> list[tuple[str, float, float]]:
    """Per-variable box bounds |x_v - center_v| <= h_v for an ellipse.

    h_v is the largest displacement of x_v over the boundary, which for
    the (cos, sin) parametrization is hypot of the two coefficients;
    with axis-separated variables it reduces to the single nonzero
    coefficient. The box is looser than the ellipse itself.
    """
    if not region.kind.is_elliptical:
        raise WrongKind("maximal intervals are defined for elliptical regions only")
    out = []
    for name, (center_v, c1, c2) in zip(region.names, region.affine):
        out.append((name, float(center_v), float(np.hypot(c1, c2))))
    return out
