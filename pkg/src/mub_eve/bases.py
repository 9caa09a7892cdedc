"""Protocol bases in dimension d and the unbiasedness checks between them.

Vectors are rows of a (d, d) complex array, so ``basis.vectors[i]`` is the
i-th state of the basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ProtocolError

ORTHONORMALITY_TOL = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Basis:
    """An ordered orthonormal set of d state vectors."""

    dim: int
    vectors: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        vecs = _frozen(self.vectors)
        if vecs.shape != (self.dim, self.dim):
            raise DimensionError(
                f"basis '{self.label}' needs shape ({self.dim}, {self.dim}), got {vecs.shape}"
            )
        gram = vecs.conj() @ vecs.T
        if np.max(np.abs(gram - np.eye(self.dim))) > ORTHONORMALITY_TOL:
            raise DimensionError(f"basis '{self.label}' is not orthonormal to {ORTHONORMALITY_TOL}")
        object.__setattr__(self, "vectors", vecs)


def overlap(a: np.ndarray, b: np.ndarray) -> complex:
    """Inner product <a|b>, conjugate-linear in the first argument."""
    return complex(np.vdot(a, b))


def _check_dim(d: int) -> int:
    if int(d) != d or d < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {d!r}")
    return int(d)


def computational_basis(d: int) -> Basis:
    """Standard basis e_0 .. e_{d-1}."""
    d = _check_dim(d)
    return Basis(dim=d, vectors=np.eye(d, dtype=complex), label="computational")


def fourier_basis(d: int) -> Basis:
    """Discrete-Fourier-transform basis: vector l has entries e^{2*pi*i*k*l/d}/sqrt(d)."""
    d = _check_dim(d)
    k = np.arange(d)
    vecs = np.exp(2j * np.pi * np.outer(k, k) / d) / np.sqrt(d)
    return Basis(dim=d, vectors=vecs, label="fourier")


def qutrit_three_basis_set() -> list[Basis]:
    """The three mutually unbiased qutrit bases used by the three-basis protocol.

    Returns [computational, alpha, alpha-star] where the alpha basis puts the
    phase alpha = e^{2*pi*i/3} on the diagonal entry and the third basis is its
    complex conjugate.
    """
    alpha = np.exp(2j * np.pi / 3)
    vecs = (np.ones((3, 3), dtype=complex) + (alpha - 1) * np.eye(3)) / np.sqrt(3)
    return [
        computational_basis(3),
        Basis(dim=3, vectors=vecs, label="alpha"),
        Basis(dim=3, vectors=vecs.conj(), label="alpha-star"),
    ]


def is_mutually_unbiased(a: Basis, b: Basis, tol: float = ORTHONORMALITY_TOL) -> bool:
    """True iff every cross overlap magnitude is within tol of 1/sqrt(d)."""
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
    mags = np.abs(a.vectors.conj() @ b.vectors.T)
    return bool(np.max(np.abs(mags - 1.0 / np.sqrt(a.dim))) <= tol)


def protocol_bases(dim: int, bases_count: int) -> list[Basis]:
    """The ordered basis set of the (dim, bases_count) protocol.

    Two bases: computational + Fourier, any d. Three bases: the qutrit set.
    """
    d = _check_dim(dim)
    if bases_count == 2:
        return [computational_basis(d), fourier_basis(d)]
    if bases_count == 3:
        if d != 3:
            raise ProtocolError("the three-basis protocol is implemented for d = 3 only")
        return qutrit_three_basis_set()
    raise ProtocolError(f"bases_count must be 2 or 3, got {bases_count}")
