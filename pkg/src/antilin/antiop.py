"""Conjugations, antilinear operators, and the real-linear (P, Q) algebra.

Inner product convention
------------------------
The inner product is linear in the FIRST slot and conjugate-linear in the
second: ``<a, b> = sum_i a_i * conj(b_i)``.  With this convention the adjoint
of the antilinear map ``x -> A conj(x)`` is the antilinear map with canonical
matrix ``A.T``, defined by ``conj(<T x, y>) = <x, adjoint(T) y>``.

Representations
---------------
* ``AntilinearOperator`` stores the canonical matrix ``A`` of the action
  ``x -> A conj(x)``.  This is the single source of truth; the factored form
  ``T = C T1`` with a conjugation ``C`` is available as a conversion
  (:func:`to_factored` / :func:`from_factored`), not as storage.
* ``RealLinearOperator`` stores the pair ``(P, Q)`` of the action
  ``x -> P x + Q conj(x)``.  This algebra closes compositions, sums and
  resolvents of linear and antilinear maps.  Composition follows

  ``(P1, Q1) o (P2, Q2) = (P1 P2 + Q1 conj(Q2), P1 Q2 + Q1 conj(P2))``.

* ``realify`` represents a real-linear map as the real ``2m x 2n`` matrix
  acting on stacked ``(Re x; Im x)`` coordinates:

  ``[[Re P + Re Q, -Im P + Im Q], [Im P + Im Q, Re P - Re Q]]``.

All value types are immutable and every operation is a pure function, so
everything here is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DimensionMismatch, NotInvolution, NotIsometric
from .matkernel import spectral_norm


def _own_matrix(a) -> np.ndarray:
    m = np.array(a, dtype=complex, copy=True, order="C")
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got ndim={m.ndim}")
    if not np.isfinite(m).all():
        raise ValueError("matrix has non-finite entries")
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class AntilinearOperator:
    """Antilinear map ``x -> canon @ conj(x)`` between C^n and C^m."""

    canon: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "canon", _own_matrix(self.canon))

    @property
    def dim_in(self) -> int:
        return self.canon.shape[1]

    @property
    def dim_out(self) -> int:
        return self.canon.shape[0]

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.dim_in,):
            raise DimensionMismatch(
                f"vector of length {self.dim_in} expected, got shape {x.shape}"
            )
        return self.canon @ np.conj(x)

    def adjoint(self) -> "AntilinearOperator":
        """Adjoint under the pairing conj(<T x, y>) = <x, T# y>."""
        return AntilinearOperator(self.canon.T)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"AntilinearOperator({self.dim_out}x{self.dim_in})"


@dataclass(frozen=True, eq=False)
class Conjugation:
    """Isometric antilinear involution ``x -> kmat @ conj(x)``."""

    kmat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "kmat", _own_matrix(self.kmat))

    @property
    def dim(self) -> int:
        return self.kmat.shape[0]

    def as_operator(self) -> AntilinearOperator:
        return AntilinearOperator(self.kmat)

    def apply(self, x) -> np.ndarray:
        return self.as_operator().apply(x)


def make_conjugation(k, rtol: float = 1e-10) -> Conjugation:
    """Validate ``k`` as the matrix of a conjugation.

    Raises:
        NotInvolution: if ``||k conj(k) - I|| > rtol``.
        NotIsometric: if ``||k* k - I|| > rtol``.
    """
    k = np.asarray(k, dtype=complex)
    if k.ndim != 2 or k.shape[0] != k.shape[1]:
        raise DimensionMismatch(f"conjugation matrix must be square, got {k.shape}")
    eye = np.eye(k.shape[0])
    if spectral_norm(k @ np.conj(k) - eye) > rtol:
        raise NotInvolution("K conj(K) differs from the identity")
    if spectral_norm(k.conj().T @ k - eye) > rtol:
        raise NotIsometric("K is not unitary")
    return Conjugation(k)


def standard_conjugation(n: int) -> Conjugation:
    """Entrywise conjugation on C^n."""
    return Conjugation(np.eye(n))


@dataclass(frozen=True, eq=False)
class RealLinearOperator:
    """Real-linear map ``x -> lin @ x + anti @ conj(x)``."""

    lin: np.ndarray
    anti: np.ndarray

    def __post_init__(self):
        lin = _own_matrix(self.lin)
        anti = _own_matrix(self.anti)
        if lin.shape != anti.shape:
            raise DimensionMismatch(
                f"linear part {lin.shape} and antilinear part {anti.shape} differ"
            )
        object.__setattr__(self, "lin", lin)
        object.__setattr__(self, "anti", anti)

    @classmethod
    def from_linear(cls, mat) -> "RealLinearOperator":
        mat = np.asarray(mat, dtype=complex)
        return cls(mat, np.zeros_like(mat))

    @classmethod
    def from_antilinear(cls, t: AntilinearOperator) -> "RealLinearOperator":
        return cls(np.zeros_like(t.canon), t.canon)

    @classmethod
    def identity(cls, n: int) -> "RealLinearOperator":
        return cls.from_linear(np.eye(n))

    @classmethod
    def zero(cls, m: int, n: int) -> "RealLinearOperator":
        z = np.zeros((m, n), dtype=complex)
        return cls(z, z)

    @property
    def dim_in(self) -> int:
        return self.lin.shape[1]

    @property
    def dim_out(self) -> int:
        return self.lin.shape[0]

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.dim_in,):
            raise DimensionMismatch(
                f"vector of length {self.dim_in} expected, got shape {x.shape}"
            )
        return self.lin @ x + self.anti @ np.conj(x)

    def __add__(self, other: "RealLinearOperator") -> "RealLinearOperator":
        other = coerce(other)
        return RealLinearOperator(self.lin + other.lin, self.anti + other.anti)

    def __sub__(self, other: "RealLinearOperator") -> "RealLinearOperator":
        other = coerce(other)
        return RealLinearOperator(self.lin - other.lin, self.anti - other.anti)

    def __neg__(self) -> "RealLinearOperator":
        return RealLinearOperator(-self.lin, -self.anti)

    def shifted(self, mu: complex) -> "RealLinearOperator":
        """The operator ``self - mu``; mu subtracts from the linear part only."""
        if self.dim_in != self.dim_out:
            raise DimensionMismatch("scalar shift requires a square operator")
        return RealLinearOperator(
            self.lin - mu * np.eye(self.dim_in), self.anti
        )

    def as_antilinear(self, tol: float = 1e-12) -> AntilinearOperator:
        if spectral_norm(self.lin) > tol * (1.0 + spectral_norm(self.anti)):
            raise ValueError("operator is not purely antilinear")
        return AntilinearOperator(self.anti)

    def as_linear(self, tol: float = 1e-12) -> np.ndarray:
        if spectral_norm(self.anti) > tol * (1.0 + spectral_norm(self.lin)):
            raise ValueError("operator is not purely linear")
        return self.lin.copy()

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"RealLinearOperator({self.dim_out}x{self.dim_in})"


Composable = Union[AntilinearOperator, RealLinearOperator, Conjugation, np.ndarray]


def coerce(op: Composable) -> RealLinearOperator:
    """View any supported operator as a RealLinearOperator."""
    if isinstance(op, RealLinearOperator):
        return op
    if isinstance(op, AntilinearOperator):
        return RealLinearOperator.from_antilinear(op)
    if isinstance(op, Conjugation):
        return RealLinearOperator.from_antilinear(op.as_operator())
    return RealLinearOperator.from_linear(op)


def compose(f: Composable, g: Composable) -> RealLinearOperator:
    """Composition ``f o g`` (g applied first) in the (P, Q) algebra.

    antilinear o antilinear is purely linear, antilinear o linear and
    linear o antilinear are purely antilinear; the zero parts are exact.
    """
    f = coerce(f)
    g = coerce(g)
    if f.dim_in != g.dim_out:
        raise DimensionMismatch(
            f"inner dimensions differ: {f.dim_in} vs {g.dim_out}"
        )
    lin = f.lin @ g.lin + f.anti @ np.conj(g.anti)
    anti = f.lin @ g.anti + f.anti @ np.conj(g.lin)
    return RealLinearOperator(lin, anti)


def realify(op: Composable) -> np.ndarray:
    """Real 2m x 2n matrix of ``op`` on stacked (Re x; Im x) coordinates."""
    op = coerce(op)
    pr, pi = op.lin.real, op.lin.imag
    qr, qi = op.anti.real, op.anti.imag
    return np.block([[pr + qr, -pi + qi], [pi + qi, pr - qr]])


def unrealify(r) -> RealLinearOperator:
    """Inverse of :func:`realify`; every real matrix of even dims is valid."""
    r = np.asarray(r, dtype=float)
    if r.ndim != 2 or r.shape[0] % 2 or r.shape[1] % 2:
        raise DimensionMismatch(f"realified matrix must have even dims, got {r.shape}")
    m, n = r.shape[0] // 2, r.shape[1] // 2
    r11, r12 = r[:m, :n], r[:m, n:]
    r21, r22 = r[m:, :n], r[m:, n:]
    lin = 0.5 * (r11 + r22) + 0.5j * (r21 - r12)
    anti = 0.5 * (r11 - r22) + 0.5j * (r21 + r12)
    return RealLinearOperator(lin, anti)


def op_norm(op: Composable) -> float:
    """Operator norm of a real-linear map (largest singular value of its
    realification)."""
    return spectral_norm(realify(op))


def to_factored(t: AntilinearOperator, c: Conjugation | None = None) -> np.ndarray:
    """Linear factor S with ``t = compose(c, S)`` (the form T = C T1).

    With the standard conjugation this is ``conj(canon)``.
    """
    if c is None:
        c = standard_conjugation(t.dim_out)
    if c.dim != t.dim_out:
        raise DimensionMismatch("conjugation dimension must match dim_out")
    return c.kmat @ np.conj(t.canon)


def from_factored(c: Conjugation, s) -> AntilinearOperator:
    """Antilinear operator ``compose(c, s)`` for a linear matrix ``s``."""
    return compose(c, np.asarray(s, dtype=complex)).as_antilinear()
