"""Antilinear normal extensions and the minimality span criterion.

An antilinear operator N on the ambient space extends T on the subspace
``H = range(V)`` (V with orthonormal columns) when ``N (V c) = V (T c)`` for
all coordinates c, i.e. ``A_N conj(V) = V A_T`` in canonical matrices.  A
normal extension N is minimal exactly when the span

    ``G = span{ (N#)^j N^i x : i, j >= 0, x in H }``

is the whole ambient space.  :func:`minimal_span` grows G degree by degree
using the parity-aware (P, Q) composition algebra; for normal N the single
commutation relation ``N N# = N# N`` collapses arbitrary words in {N, N#}
to the ``(N#)^j N^i`` form, so the span stabilizes as soon as one full
degree adds nothing new.  :func:`word_span_oracle` checks that independently
by spanning over ALL words up to a given length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .antiop import AntilinearOperator, RealLinearOperator, compose
from .errors import DimensionMismatch, NotNormal
from .matkernel import spectral_norm
from .structure import is_normal

SPAN_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ExtensionProblem:
    """Ambient operator N, subspace embedding V, optional restriction T."""

    ambient: AntilinearOperator
    embed: np.ndarray
    restricted: Optional[AntilinearOperator] = None

    def __post_init__(self):
        v = np.asarray(self.embed, dtype=complex)
        if v.ndim != 2:
            raise DimensionMismatch("embed must be a 2-d array of column vectors")
        big = self.ambient.dim_in
        if self.ambient.dim_out != big:
            raise DimensionMismatch("ambient operator must be square")
        if v.shape[0] != big or v.shape[1] > big:
            raise DimensionMismatch(
                f"embed must be {big} x h with h <= {big}, got {v.shape}"
            )
        gram_res = spectral_norm(v.conj().T @ v - np.eye(v.shape[1]))
        if gram_res > 1e-8:
            raise DimensionMismatch(
                f"embed columns are not orthonormal (residual {gram_res:.3e})"
            )
        if self.restricted is not None:
            h = v.shape[1]
            if self.restricted.canon.shape != (h, h):
                raise DimensionMismatch("restricted operator must be h x h")
        object.__setattr__(self, "embed", v)

    @property
    def ambient_dim(self) -> int:
        return self.ambient.dim_in

    @property
    def subspace_dim(self) -> int:
        return self.embed.shape[1]


@dataclass(frozen=True)
class ExtensionResidual:
    """match: ||A_N conj(V) - V A_T||; range_leak: ||(I - V V*) A_N conj(V)||.

    ``range_leak`` measures whether T maps the subspace into itself at all,
    which the match residual presupposes.
    """

    match: float
    range_leak: float


def check_extension(p: ExtensionProblem) -> ExtensionResidual:
    """Residuals of the extension property ``N h = T h`` on the subspace."""
    if p.restricted is None:
        raise ValueError("check_extension requires the restricted operator")
    v = p.embed
    nv = p.ambient.canon @ np.conj(v)
    match = spectral_norm(nv - v @ p.restricted.canon)
    big = p.ambient_dim
    leak = spectral_norm((np.eye(big) - v @ v.conj().T) @ nv)
    return ExtensionResidual(match=match, range_leak=leak)


class _Basis:
    """Orthonormal basis grown by modified Gram-Schmidt with
    re-orthogonalization."""

    def __init__(self, dim: int, tol: float = SPAN_TOL):
        self.dim = dim
        self.tol = tol
        self.columns: List[np.ndarray] = []

    def add(self, v: np.ndarray) -> bool:
        scale = max(1.0, float(np.linalg.norm(v)))
        w = v.astype(complex)
        for _ in range(2):
            for q in self.columns:
                w = w - q * np.vdot(q, w)
        nrm = float(np.linalg.norm(w))
        if nrm <= self.tol * scale:
            return False
        self.columns.append(w / nrm)
        return True

    def __len__(self) -> int:
        return len(self.columns)


@dataclass(frozen=True)
class SpanResult:
    g_dim: int
    is_minimal: bool
    stabilized_degree: int
    hit_cap: bool


def minimal_span(
    p: ExtensionProblem,
    cap: Optional[int] = None,
    tol: float = 1e-8,
) -> SpanResult:
    """Dimension of ``span{(N#)^j N^i x}`` and the minimality verdict.

    Words are organized by total degree i + j; the loop stops when a whole
    degree contributes no new direction (sufficient for normal N) or when
    ``i + j`` reaches the cap (2 * ambient dimension by default, never the
    binding constraint in practice; ``hit_cap`` flags if it ever is).

    Raises:
        NotNormal: when the ambient operator is not antilinear normal.
    """
    if not is_normal(p.ambient, tol=tol):
        raise NotNormal("minimal_span requires a normal ambient operator")
    big = p.ambient_dim
    if cap is None:
        cap = 2 * big
    n_op = p.ambient
    ns_op = n_op.adjoint()

    # powers of N and N# in the (P, Q) algebra, indexed by exponent
    n_pows = [RealLinearOperator.identity(big)]
    ns_pows = [RealLinearOperator.identity(big)]
    for _ in range(cap):
        n_pows.append(compose(n_op, n_pows[-1]))
        ns_pows.append(compose(ns_op, ns_pows[-1]))

    basis = _Basis(big)
    cols = [p.embed[:, k] for k in range(p.subspace_dim)]
    stabilized = 0
    hit_cap = True
    for degree in range(cap + 1):
        grew = False
        for j in range(degree + 1):
            i = degree - j
            word = compose(ns_pows[j], n_pows[i])
            for x in cols:
                if basis.add(word.apply(x)):
                    grew = True
        if degree > 0 and not grew:
            stabilized = degree - 1
            hit_cap = False
            break
        if len(basis) == big:
            stabilized = degree
            hit_cap = False
            break
    g_dim = len(basis)
    return SpanResult(
        g_dim=g_dim,
        is_minimal=(g_dim == big),
        stabilized_degree=stabilized,
        hit_cap=hit_cap,
    )


def word_span_oracle(p: ExtensionProblem, max_len: int, tol: float = 1e-8) -> int:
    """Span dimension over ALL words in {N, N#} up to ``max_len`` letters.

    Independent referee for :func:`minimal_span`: normality lets arbitrary
    words reorder into the ``(N#)^j N^i`` form, so both spans agree once
    both have stabilized.

    Raises:
        NotNormal: when the ambient operator is not antilinear normal.
    """
    if not is_normal(p.ambient, tol=tol):
        raise NotNormal("word_span_oracle requires a normal ambient operator")
    big = p.ambient_dim
    letters = (p.ambient, p.ambient.adjoint())
    basis = _Basis(big)
    cols = [p.embed[:, k] for k in range(p.subspace_dim)]
    level = [RealLinearOperator.identity(big)]
    for x in cols:
        basis.add(x)
    for _ in range(max_len):
        nxt = []
        grew = False
        for op in level:
            for letter in letters:
                w = compose(letter, op)
                nxt.append(w)
                for x in cols:
                    if basis.add(w.apply(x)):
                        grew = True
        level = nxt
        if len(basis) == big or not grew:
            # for normal N a whole stagnant level implies global stagnation
            break
    return len(basis)
