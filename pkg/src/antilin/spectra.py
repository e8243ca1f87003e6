"""Spectra of antilinear and real-linear operators.

For a square antilinear operator the spectrum is a union of circles centered
at the origin: if ``A conj(x) = lambda x`` has a nonzero solution then the
whole circle ``|mu| = |lambda|`` consists of such values (replace ``x`` by
``exp(i theta) x``).  The circle radii are recovered from the eigenvalues of
the linear square ``T^2`` (matrix ``A conj(A)``): ``r`` is a radius exactly
when ``r^2`` is a real nonnegative eigenvalue of ``A conj(A)``.

The definitional membership test stays available as an independent oracle:
``lambda`` belongs to the spectrum iff the real-linear operator
``T - lambda`` fails to be bijective, i.e. iff the smallest singular value
of its realification is (numerically) zero.  In finite dimension a
real-linear map is bijective iff injective, so the spectrum is pure point
spectrum and the continuous and residual parts are empty; see
:data:`CLASSIFICATION_NOTE`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .antiop import AntilinearOperator, Composable, coerce, realify
from .errors import DimensionMismatch
from .matkernel import SING_TOL, min_singular_real, singularity_threshold

DEDUP_ATOL = 1e-7

CLASSIFICATION_NOTE = (
    "finite dimension: a real-linear map is bijective iff injective, so the "
    "spectrum equals the point spectrum ('is not injective as a real linear' "
    "is the only failure mode) and the continuous and residual spectra are "
    "empty"
)


@dataclass(frozen=True)
class SpectrumDescription:
    """Spectrum of an operator.

    For antilinear operators (kind ``"antilinear-circles"``) each entry of
    ``radii`` denotes the full circle ``{lambda : |lambda| = r}``; the list is
    ascending and deduplicated within ``DEDUP_ATOL``.  ``clamped`` records
    eigenvalues of ``A conj(A)`` whose slightly negative real part was
    clamped to zero.  For general real-linear operators only the membership
    oracle is available (kind ``"membership-only"``).
    """

    radii: tuple
    kind: str
    clamped: tuple = ()
    note: str = CLASSIFICATION_NOTE


def _dedup(values: Sequence[float], atol: float = DEDUP_ATOL) -> tuple:
    out: list[list[float]] = []
    for v in sorted(values):
        if out and v - out[-1][-1] <= atol:
            out[-1].append(v)
        else:
            out.append([v])
    return tuple(float(np.mean(c)) for c in out)


def antilinear_spectrum(t: AntilinearOperator, tol: float = 1e-8) -> SpectrumDescription:
    """Circle radii of the spectrum of a square antilinear operator.

    ``radii = { sqrt(mu) : mu in eig(A conj(A)), |Im mu| <= tol*(1+|mu|),
    Re mu >= -tol }``; eigenvalues with ``-tol < Re mu < 0`` are clamped to
    zero and reported in ``clamped``.
    """
    if t.dim_in != t.dim_out:
        raise DimensionMismatch("spectrum requires a square operator")
    a = t.canon
    eigvals = np.linalg.eigvals(a @ np.conj(a))
    radii = []
    clamped = []
    for mu in eigvals:
        if abs(mu.imag) > tol * (1.0 + abs(mu)):
            continue
        re = mu.real
        if re < -tol:
            continue
        if re < 0.0:
            clamped.append(complex(mu))
            re = 0.0
        radii.append(float(np.sqrt(re)))
    return SpectrumDescription(
        radii=_dedup(radii), kind="antilinear-circles", clamped=tuple(clamped)
    )


def describe(op: Composable, tol: float = 1e-8) -> SpectrumDescription:
    """Spectrum description for any supported operator.

    Square antilinear operators get the circle radii; general real-linear
    operators carry no circle structure, so only the membership predicate
    :func:`is_in_spectrum` applies (kind ``"membership-only"``).
    """
    if isinstance(op, AntilinearOperator):
        return antilinear_spectrum(op, tol=tol)
    return SpectrumDescription(radii=(), kind="membership-only")


def is_in_spectrum(op: Composable, lam: complex, tol: float = SING_TOL) -> bool:
    """Definitional membership: ``op - lam`` is not bijective.

    ``lam`` subtracts from the linear part only.  Decided by comparing the
    smallest singular value of ``realify(op - lam)`` against
    ``tol * (1 + ||realify(op - lam)||)``.
    """
    shifted = coerce(op).shifted(lam)
    r = realify(shifted)
    return min_singular_real(r) <= singularity_threshold(r, tol)


@dataclass(frozen=True)
class CrosscheckPoint:
    """One probed point: a radius, a phase, the circle-algorithm prediction
    and the realification-oracle verdict."""

    radius: float
    phase: float
    predicted_member: bool
    oracle_member: bool

    @property
    def agrees(self) -> bool:
        return self.predicted_member == self.oracle_member


@dataclass(frozen=True)
class CrosscheckReport:
    radii: tuple
    points: tuple
    clamped: tuple

    @property
    def disagreements(self) -> tuple:
        return tuple(p for p in self.points if not p.agrees)

    @property
    def members_tested(self) -> int:
        return sum(1 for p in self.points if p.predicted_member)

    @property
    def nonmembers_tested(self) -> int:
        return sum(1 for p in self.points if not p.predicted_member)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def spectrum_crosscheck(
    t: AntilinearOperator,
    phases: int = 8,
    radial_grid: int = 1,
    tol: float = SING_TOL,
) -> CrosscheckReport:
    """Validate the circle algorithm against the membership oracle.

    Probes every reported circle at ``phases`` sampled angles (expected
    member at each angle, which is the phase-invariance content), and
    ``radial_grid`` radii strictly inside every gap between consecutive
    circles plus one radius below the smallest positive circle and one
    beyond the largest (expected non-member at each angle).
    """
    desc = antilinear_spectrum(t, tol=max(tol, 1e-8))
    radii = list(desc.radii)

    member_radii = list(radii)
    gap_radii: list[float] = []
    for lo, hi in zip(radii, radii[1:]):
        for k in range(radial_grid):
            frac = (k + 1) / (radial_grid + 1)
            gap_radii.append(lo + frac * (hi - lo))
    if radii:
        if radii[0] > DEDUP_ATOL:
            gap_radii.append(0.5 * radii[0])
        gap_radii.append(1.5 * radii[-1] + 0.5)
    else:
        gap_radii.extend([0.0, 0.5])

    points = []
    for r, expected in [(r, True) for r in member_radii] + [
        (r, False) for r in gap_radii
    ]:
        angles = [0.0] if r <= DEDUP_ATOL else [
            2.0 * np.pi * k / phases for k in range(phases)
        ]
        for theta in angles:
            lam = r * np.exp(1j * theta)
            member = is_in_spectrum(t, lam, tol=tol)
            points.append(
                CrosscheckPoint(
                    radius=float(r),
                    phase=float(theta),
                    predicted_member=expected,
                    oracle_member=member,
                )
            )
    return CrosscheckReport(radii=tuple(radii), points=tuple(points), clamped=desc.clamped)
