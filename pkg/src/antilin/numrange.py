"""Numerical range of antilinear operators.

``W(T) = { <T x, x> : ||x|| = 1 }``.  Under the package inner-product
convention the value at ``x`` is ``conj(x).T A conj(x)``, which depends only
on the symmetric part ``B = (A + A.T)/2`` and obeys the phase law
``w(exp(i theta) x) = exp(-2 i theta) w(x)``.

For ``n >= 2`` the set is the closed disk of radius ``sigma_max(B)``
centered at the origin (in particular ``0 in W(T)``): with the Takagi
factorization ``B = U S U.T`` the family ``x = c1 u1 + c2 u2`` has value
``conj(c1)^2 s1 + conj(c2)^2 s2``, so the curve
``x(s) = cos(s) u1 + i sin(s) u2`` sweeps the real segment
``[-s2, s1]`` and phase rotation fills the disk.  For ``n = 1`` the set is
the circle of radius ``|A|`` and 0 is not attained unless ``A = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .antiop import AntilinearOperator
from .errors import DimensionMismatch, DimensionOne, NotUnit, OutsideRange
from .matkernel import takagi

UNIT_ATOL = 1e-12


def _symmetric_part(t: AntilinearOperator) -> np.ndarray:
    if t.dim_in != t.dim_out:
        raise DimensionMismatch("numerical range requires a square operator")
    a = t.canon
    return 0.5 * (a + a.T)


def nr_value(t: AntilinearOperator, x, atol: float = UNIT_ATOL) -> complex:
    """Numerical-range value ``<T x, x>`` at a unit vector ``x``.

    Raises:
        NotUnit: if ``| ||x|| - 1 | > atol``.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape != (t.dim_in,):
        raise DimensionMismatch(f"vector of length {t.dim_in} expected")
    if abs(np.linalg.norm(x) - 1.0) > atol:
        raise NotUnit("nr_value requires a unit vector")
    xc = np.conj(x)
    return complex(xc @ (t.canon @ xc))


@dataclass(frozen=True)
class NumericalRangeDisk:
    """Closed origin-centered disk description of W(T).

    ``extremal_vector`` is a unit vector whose value has modulus ``radius``.
    For ``circle_only`` instances (n = 1) W(T) is the circle of radius
    ``radius`` rather than the full disk.
    """

    radius: float
    extremal_vector: np.ndarray
    circle_only: bool


def nr_disk(t: AntilinearOperator) -> NumericalRangeDisk:
    """Disk characterization: radius ``sigma_max((A + A.T)/2)``.

    The extremal vector is the leading Takagi vector ``u1`` of the symmetric
    part, for which the value equals the radius exactly.
    """
    b = _symmetric_part(t)
    fac = takagi(b)
    radius = float(fac.sigma[0]) if fac.sigma.size else 0.0
    x = fac.u[:, 0].copy()
    return NumericalRangeDisk(
        radius=radius, extremal_vector=x, circle_only=(t.dim_in == 1)
    )


def witness_disk(t: AntilinearOperator, target: complex, atol: float = 1e-10) -> np.ndarray:
    """Unit vector whose value equals ``target``, in closed form.

    Solves ``s1 cos(s)^2 - s2 sin(s)^2 = |target|`` on the Takagi curve and
    applies the phase law to rotate onto ``arg(target)``.

    Raises:
        DimensionOne: for n = 1 (only ``|target| = radius`` is achievable).
        OutsideRange: if ``|target| > radius + atol``.
    """
    b = _symmetric_part(t)
    n = b.shape[0]
    if n < 2:
        raise DimensionOne("witness_disk requires dimension at least 2")
    target = complex(target)
    fac = takagi(b)
    s1, s2 = float(fac.sigma[0]), float(fac.sigma[1])
    if abs(target) > s1 + atol:
        raise OutsideRange(
            f"|target| = {abs(target):.6g} exceeds the disk radius {s1:.6g}"
        )

    u1, u2 = fac.u[:, 0], fac.u[:, 1]
    denom = s1 + s2
    if denom <= atol:
        # radius ~ 0, so W(T) ~ {0}; any unit vector witnesses the target
        return u1.copy()
    c2 = min(max((abs(target) + s2) / denom, 0.0), 1.0)
    x = np.sqrt(c2) * u1 + 1j * np.sqrt(1.0 - c2) * u2
    if abs(target) > 0.0:
        phi = -0.5 * np.angle(target)
        x = np.exp(1j * phi) * x
    return x / np.linalg.norm(x)


@dataclass(frozen=True)
class WitnessResult:
    """Outcome of the convex-combination witness construction."""

    vector: np.ndarray
    value: complex
    target: complex
    used_fallback: bool
    degenerate: bool
    t_param: Optional[float]
    im_residual: Optional[float]


def witness_segment(
    t: AntilinearOperator,
    x1,
    x2,
    lam: float,
    achieve_tol: float = 1e-8,
) -> WitnessResult:
    """Witness for ``lam * w(x1) + (1 - lam) * w(x2)`` by the direct
    intermediate-value construction.

    With ``a1 = w(x1) != a2 = w(x2)``, ``c = Re<x1, x2>`` and

    ``beta = (<T x1, x2> + <T x2, x1> - 2 a2 c) / (a1 - a2)``,
    ``r(s) = -s c + sqrt(s^2 c^2 - s^2 + 1)``,
    ``S3(s) = s^2 + beta r(s) s``,

    a root ``s'`` of ``Re S3 = lam`` on [0, 1] is found by bisection
    (bracket width 1e-12) and accepted when ``|Im S3(s')| <= 1e-8 * (1 +
    |beta|)``; the witness is then ``s' x1 + r(s') x2``, unit by
    construction.  When no admissible root exists, or the achieved value
    misses the target by more than ``achieve_tol``, the closed-form
    :func:`witness_disk` with the same target is used instead and the
    fallback is recorded in the result.

    Degenerate inputs with ``a1 = a2`` return ``x1`` directly (every convex
    combination equals ``a1``).
    """
    if t.dim_in < 2:
        raise DimensionOne("witness_segment requires dimension at least 2")
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    x1 = np.asarray(x1, dtype=complex)
    x2 = np.asarray(x2, dtype=complex)
    a1 = nr_value(t, x1)
    a2 = nr_value(t, x2)
    target = lam * a1 + (1.0 - lam) * a2

    if abs(a1 - a2) <= 1e-12 * (1.0 + abs(a1) + abs(a2)):
        return WitnessResult(
            vector=x1.copy(), value=a1, target=target,
            used_fallback=False, degenerate=True, t_param=None, im_residual=None,
        )

    c = float(np.real(np.vdot(x2, x1)))  # Re<x1, x2> in the package convention
    t12 = complex(np.vdot(x2, t.apply(x1)))   # <T x1, x2>
    t21 = complex(np.vdot(x1, t.apply(x2)))   # <T x2, x1>
    beta = (t12 + t21 - 2.0 * a2 * c) / (a1 - a2)

    def r_of(s: float) -> float:
        rad = s * s * c * c - s * s + 1.0
        return -s * c + np.sqrt(max(rad, 0.0))

    def s3(s: float) -> complex:
        return s * s + beta * r_of(s) * s

    def f(s: float) -> float:
        return float(np.real(s3(s))) - lam

    # locate a sign change of Re S3 - lam on [0, 1], then bisect
    grid = np.linspace(0.0, 1.0, 1025)
    vals = [f(s) for s in grid]
    bracket = None
    for k in range(len(grid) - 1):
        if vals[k] == 0.0:
            bracket = (grid[k], grid[k])
            break
        if vals[k] * vals[k + 1] < 0.0:
            bracket = (grid[k], grid[k + 1])
            break
    if vals[-1] == 0.0 and bracket is None:
        bracket = (grid[-1], grid[-1])

    t_param: Optional[float] = None
    if bracket is not None:
        lo, hi = bracket
        while hi - lo > 1e-12:
            mid = 0.5 * (lo + hi)
            if f(lo) * f(mid) <= 0.0:
                hi = mid
            else:
                lo = mid
        t_param = 0.5 * (lo + hi)

    if t_param is not None:
        im_res = abs(float(np.imag(s3(t_param))))
        if im_res <= 1e-8 * (1.0 + abs(beta)):
            x = t_param * x1 + r_of(t_param) * x2
            nrm = np.linalg.norm(x)
            if nrm > 0.0:
                x = x / nrm
                value = nr_value(t, x)
                if abs(value - target) <= achieve_tol:
                    return WitnessResult(
                        vector=x, value=value, target=target,
                        used_fallback=False, degenerate=False,
                        t_param=float(t_param), im_residual=im_res,
                    )

    vec = witness_disk(t, target)
    return WitnessResult(
        vector=vec, value=nr_value(t, vec), target=target,
        used_fallback=True, degenerate=False, t_param=t_param,
        im_residual=None if t_param is None else abs(float(np.imag(s3(t_param)))),
    )


def sample_sup(
    t: AntilinearOperator,
    n_samples: int = 2000,
    rng: Optional[np.random.Generator] = None,
    refine: bool = True,
    refine_steps: int = 200,
) -> float:
    """Sampled supremum of ``|w(x)|`` over the unit sphere.

    Uniform random samples alone bound the radius from above; for the lower
    bound the best sample is polished by power iteration on the linear map
    ``x -> B conj(B conj(x))`` (``B`` the symmetric part), which converges to
    the extremal direction and is independent of the Takagi factorization.
    """
    b = _symmetric_part(t)
    n = b.shape[0]
    if rng is None:
        rng = np.random.default_rng(0x5A11)
    xs = rng.standard_normal((n, n_samples)) + 1j * rng.standard_normal((n, n_samples))
    xs /= np.linalg.norm(xs, axis=0)
    xc = np.conj(xs)
    vals = np.abs(np.sum(xc * (b @ xc), axis=0))
    best = float(np.max(vals)) if vals.size else 0.0
    if refine:
        z = xs[:, int(np.argmax(vals))]
        collapsed = False
        for _ in range(refine_steps):
            z = b @ np.conj(b @ np.conj(z))
            nrm = np.linalg.norm(z)
            if nrm <= 1e-300:
                collapsed = True
                break
            z = z / nrm
        if not collapsed:
            best = max(best, float(abs(np.conj(z) @ (b @ np.conj(z)))))
    return float(best)
