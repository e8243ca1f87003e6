"""Structural predicates and decompositions for antilinear operators.

Covers Gram operators, normality and self-adjointness tests, the modulus
``|T| = (T# T)^(1/2)``, the polar decomposition ``T = U_T |T|``, the
Moore-Penrose inverse (definitional and pseudoinverse constructions), and
the identity suite tying daggers, adjoints, moduli and partial isometries
together.

Canonical-matrix dictionary used throughout (A = canon of T, m x n):

* ``T# T``  is linear with matrix ``conj(A* A) = A.T conj(A)``  (n x n),
* ``T T#``  is linear with matrix ``A A*``                      (m x m),
* ``|T|``   is ``psd_sqrt(conj(A* A))``,
* ``T = U_T |T|`` becomes ``A = U_c conj(M)`` for the canonical matrix
  ``U_c`` of the partial antilinear isometry and ``M`` of ``|T|``.

Projector conventions: the initial-space projector of ``U_T`` is the linear
composition ``U_T# U_T`` with matrix ``U_c.T conj(U_c)``, and the final-space
projector is ``U_T U_T#`` with matrix ``U_c U_c*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from . import matkernel
from .antiop import AntilinearOperator, RealLinearOperator, compose, op_norm
from .errors import DimensionMismatch, NotNormal
from .matkernel import RANK_RTOL, pinv, psd_sqrt, spectral_norm

_NORM_SAMPLING_SEED = 0x5EED


def _square(t: AntilinearOperator) -> np.ndarray:
    if t.dim_in != t.dim_out:
        raise DimensionMismatch(f"square operator required, got {t.canon.shape}")
    return t.canon


def gram(t: AntilinearOperator) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of the Gram compositions (left = T T#, right = T# T).

    Both are Hermitian positive semidefinite.
    """
    a = t.canon
    left = a @ a.conj().T
    right = a.T @ a.conj()
    return left, right


@dataclass(frozen=True)
class NormalityCheck:
    """Outcome of the normality test; truthy when normal."""

    value: bool
    residual: float
    sampled_deviation: float
    sampled_value: bool

    def __bool__(self) -> bool:
        return self.value


def is_normal(
    t: AntilinearOperator,
    tol: float = 1e-8,
    samples: int = 50,
    rng: Optional[np.random.Generator] = None,
) -> NormalityCheck:
    """Decide ``T T# = T# T``.

    Primary criterion: ``||A A* - conj(A* A)|| <= tol * (1 + ||A||^2)``.
    Cross-validated by the norm criterion ``||T x|| = ||T# x||`` on random
    unit vectors (deviation threshold ``tol * (1 + ||A||)``); the sampling
    rng defaults to a fixed seed so results are deterministic.
    """
    a = _square(t)
    left, right = gram(t)
    residual = spectral_norm(left - right)
    scale = spectral_norm(a)
    value = residual <= tol * (1.0 + scale**2)

    if rng is None:
        rng = np.random.default_rng(_NORM_SAMPLING_SEED)
    n = t.dim_in
    dev = 0.0
    for _ in range(samples):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        nrm = np.linalg.norm(x)
        if nrm == 0.0:
            continue
        x /= nrm
        dev = max(dev, abs(np.linalg.norm(a @ np.conj(x)) - np.linalg.norm(a.T @ np.conj(x))))
    sampled_value = dev <= tol * (1.0 + scale)
    return NormalityCheck(value, residual, dev, sampled_value)


def is_selfadjoint(t: AntilinearOperator, tol: float = 1e-8) -> bool:
    """True when ``T = T#``, i.e. the canonical matrix is symmetric."""
    a = _square(t)
    return spectral_norm(a - a.T) <= tol * (1.0 + spectral_norm(a))


def modulus(t: AntilinearOperator) -> np.ndarray:
    """Matrix of ``|T| = (T# T)^(1/2)`` (Hermitian psd)."""
    a = t.canon
    return psd_sqrt(a.T @ a.conj())


@dataclass(frozen=True)
class PolarDecomposition:
    """``T = U_T |T|`` with U_T a partial antilinear isometry.

    ``u`` holds the canonical matrix of U_T and ``modulus`` the Hermitian
    psd matrix of |T|; the reconstruction reads ``A = u.canon @ conj(modulus)``.
    """

    u: AntilinearOperator
    modulus: np.ndarray

    def initial_projector(self) -> np.ndarray:
        """Matrix of the linear composition ``U_T# U_T`` (projects onto R(|T|))."""
        uc = self.u.canon
        return uc.T @ np.conj(uc)

    def final_projector(self) -> np.ndarray:
        """Matrix of ``U_T U_T#`` (projects onto R(T))."""
        uc = self.u.canon
        return uc @ uc.conj().T


def polar(t: AntilinearOperator, rank_rtol: float = RANK_RTOL) -> PolarDecomposition:
    """Polar decomposition via the compact SVD ``A = W_r S_r V_r*``.

    ``U_c = W_r V_r*`` and ``|T| = conj(V) S V.T`` (full), so that
    ``A = U_c conj(|T|)`` with initial space R(|T|) and final space R(T).
    For T = 0 both factors are zero (empty initial space).
    """
    a = t.canon
    m, n = a.shape
    w, s, vh = np.linalg.svd(a)
    smax = float(s[0]) if s.size else 0.0
    tau = rank_rtol * max(m, n) * smax
    r = int(np.count_nonzero(s > tau))

    uc = w[:, :r] @ vh[:r, :]
    v = vh.conj().T
    s_full = np.zeros(n)
    s_full[: s.size] = s
    s_full[s_full <= tau] = 0.0
    mod = (v.conj() * s_full) @ v.T
    mod = 0.5 * (mod + mod.conj().T)
    return PolarDecomposition(u=AntilinearOperator(uc), modulus=mod)


def check_polar_commutation(t: AntilinearOperator, tol: float = 1e-8) -> float:
    """Residual of ``U_T |T| = |T| U_T`` for a normal operator.

    The two sides are antilinear with canonical matrices ``U_c conj(M)`` and
    ``M U_c``; the residual is the spectral norm of their difference.

    Raises:
        NotNormal: when the operator fails :func:`is_normal`.
    """
    _square(t)
    if not is_normal(t, tol=tol):
        raise NotNormal("polar commutation requires an antilinear normal operator")
    p = polar(t)
    uc, m = p.u.canon, p.modulus
    return spectral_norm(uc @ np.conj(m) - m @ uc)


def c_normal_criterion(t: AntilinearOperator, tol: float = 1e-8) -> tuple[bool, float]:
    """Modulus-swap normality criterion under the standard conjugation.

    Compares ``L = conj(|T|)`` against ``R = psd_sqrt(conj(A) A.T)``, the
    modulus of the linear map with matrix ``A.T``.  Equality within
    ``tol * (1 + ||A||)`` holds exactly when T is antilinear normal, so the
    returned flag must agree with :func:`is_normal`.
    """
    a = _square(t)
    left = np.conj(modulus(t))
    right = psd_sqrt(a.conj() @ a.T)
    residual = spectral_norm(left - right)
    return residual <= tol * (1.0 + spectral_norm(a)), residual


def power_commute(t: AntilinearOperator, n: int, tol: float = 1e-8) -> float:
    """Residual of ``T^n (T#)^n = (T#)^n T^n`` for a normal operator.

    Powers alternate parity in the (P, Q) algebra; the residual is the
    operator norm of the difference of the two compositions.

    Raises:
        NotNormal: when the operator fails :func:`is_normal`.
        ValueError: when ``n < 1``.
    """
    _square(t)
    if n < 1:
        raise ValueError("power must be at least 1")
    if not is_normal(t, tol=tol):
        raise NotNormal("power commutation requires an antilinear normal operator")
    tn = RealLinearOperator.identity(t.dim_in)
    sn = RealLinearOperator.identity(t.dim_in)
    for _ in range(n):
        tn = compose(t, tn)
        sn = compose(t.adjoint(), sn)
    lhs = compose(tn, sn)
    rhs = compose(sn, tn)
    return op_norm(lhs - rhs)


@dataclass(frozen=True)
class MpResult:
    """Moore-Penrose inverse of an antilinear operator with check residuals."""

    dagger: AntilinearOperator
    residuals: Dict[str, float] = field(default_factory=dict)


def moore_penrose(t: AntilinearOperator, rank_rtol: float = RANK_RTOL) -> MpResult:
    """Moore-Penrose inverse built from the definitional construction.

    Primary construction: orthonormal bases of ``N(T)^perp = conj(row(A))``
    and ``R(T) = col(A)`` are taken from the SVD, the antilinear restriction
    of T between them is inverted in coordinates, and the inverse is extended
    by zero on ``R(T)^perp``.  The independent oracle is
    ``canon(T+) = conj(pinv(A))``; the residuals record the agreement between
    the two and the projector identities ``T T+ = P_R(T)``,
    ``T+ T = P_N(T)perp``.
    """
    a = t.canon
    m, n = a.shape
    w, s, vh = np.linalg.svd(a)
    smax = float(s[0]) if s.size else 0.0
    tau = rank_rtol * max(m, n) * smax
    r = int(np.count_nonzero(s > tau))

    v = vh.conj().T
    qn = v[:, :r].conj()          # orthonormal basis of N(T)^perp
    wr = w[:, :r]                 # orthonormal basis of R(T)
    if r > 0:
        # antilinear restriction in coordinates: b = rmat conj(a)
        rmat = wr.conj().T @ a @ v[:, :r]
        dag = qn @ np.linalg.inv(rmat).conj() @ wr.T
    else:
        dag = np.zeros((n, m), dtype=complex)

    oracle = np.conj(pinv(a, rank_rtol=rank_rtol))
    p_range = wr @ wr.conj().T
    p_nperp = qn @ qn.conj().T
    residuals = {
        "left_projector": spectral_norm(a @ np.conj(dag) - p_range),
        "oracle_agreement": spectral_norm(dag - oracle),
        "right_projector": spectral_norm(dag @ np.conj(a) - p_nperp),
    }
    return MpResult(dagger=AntilinearOperator(dag), residuals=residuals)


@dataclass(frozen=True)
class IdentitySuiteResult:
    """Residuals of the dagger/adjoint/modulus identity suite.

    ``projector_gap`` and ``range_gap`` feed the projector-equality test:
    ``T T+ = T+ T`` holds exactly when ``R(T) = R(T#)``; both gaps are None
    for rectangular operators, where the comparison is not defined.
    """

    residuals: Dict[str, float]
    projector_gap: Optional[float]
    range_gap: Optional[float]
    classification_consistent: Optional[bool]


def identity_suite(
    t: AntilinearOperator,
    rank_rtol: float = RANK_RTOL,
    tol: float = 1e-8,
) -> IdentitySuiteResult:
    """Evaluate the full dagger identity suite for ``t``.

    Residual keys (D = canon(T+), A = canon(T)):

    * ``dagger_adjoint_swap``:   (T#)+  vs  (T+)#
    * ``double_dagger``:         (T+)+  vs  T
    * ``gram_right_dagger``:     (T# T)+  vs  T+ (T#)+
    * ``gram_left_dagger``:      (T T#)+  vs  (T#)+ T+
    * ``modulus_dagger_left``:   |T|+  vs  |(T#)+|
    * ``modulus_dagger_right``:  |T+|  vs  |T#|+
    * ``dagger_polar_form``:     T+  vs  |T|+ U_{T#} with U_{T#} = (U_T)#
    """
    a = t.canon
    ts = t.adjoint()
    d = moore_penrose(t, rank_rtol).dagger
    ds = moore_penrose(ts, rank_rtol).dagger

    res: Dict[str, float] = {}
    res["dagger_adjoint_swap"] = spectral_norm(ds.canon - d.adjoint().canon)
    res["double_dagger"] = spectral_norm(
        moore_penrose(d, rank_rtol).dagger.canon - a
    )

    left_gram, right_gram = gram(t)
    res["gram_right_dagger"] = spectral_norm(
        pinv(right_gram, rank_rtol) - compose(d, ds).as_linear()
    )
    res["gram_left_dagger"] = spectral_norm(
        pinv(left_gram, rank_rtol) - compose(ds, d).as_linear()
    )

    res["modulus_dagger_left"] = spectral_norm(
        pinv(modulus(t), rank_rtol) - modulus(ds)
    )
    res["modulus_dagger_right"] = spectral_norm(
        modulus(d) - pinv(modulus(ts), rank_rtol)
    )

    uc = polar(t, rank_rtol).u.canon
    res["dagger_polar_form"] = spectral_norm(
        d.canon - pinv(modulus(t), rank_rtol) @ uc.T
    )

    if t.dim_in == t.dim_out:
        p_left = compose(t, d).as_linear()      # T T+  -> projector onto R(T)
        p_right = compose(d, t).as_linear()     # T+ T  -> projector onto N(T)^perp
        projector_gap = spectral_norm(p_left - p_right)
        range_gap = spectral_norm(
            matkernel.range_projector(a, rank_rtol)
            - matkernel.range_projector(a.T, rank_rtol)
        )
        consistent = (projector_gap <= tol) == (range_gap <= tol)
    else:
        projector_gap = range_gap = None
        consistent = None

    return IdentitySuiteResult(
        residuals=res,
        projector_gap=projector_gap,
        range_gap=range_gap,
        classification_consistent=consistent,
    )
