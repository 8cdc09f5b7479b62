"""Homology action of surface mapping classes and the Lagrangian subgroup.

A mapping class of the genus-g surface acts on ``H_1 = Z^2g`` in the basis
``(a_1, ..., a_g, b_1, ..., b_g)``; the intersection form is
``J = [[0, I], [-I, 0]]`` and the action is a ``2g x 2g`` integer matrix
``W = [[A, B], [C, D]]`` with ``W^T J W = J``.  The Lagrangian subgroup
preserves both the a-span and the b-span, which on homology means
``B = C = 0`` and then ``D = (A^T)^-1`` with ``A`` in ``GL(g, Z)``.

Only the homology action is modelled; mapping classes acting trivially on
homology (the Torelli group) are invisible here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .generators import random_unimodular
from .linalg import IntMatrix, InvariantViolation, block, determinant, invert_rational
from .triplet import HomologySummary, cokernel


class NotSymplecticError(ValueError):
    pass


def intersection_form(g: int) -> IntMatrix:
    Z, I = IntMatrix.zeros(g, g), IntMatrix.identity(g)
    return block([[Z, I], [-I, Z]])


def _genus_of(W: IntMatrix) -> int:
    if not W.is_square() or W.rows % 2:
        raise ValueError(f"expected a 2g x 2g matrix, got {W.rows}x{W.cols}")
    return W.rows // 2


def is_symplectic(W: IntMatrix, g: int | None = None) -> bool:
    """``W^T J W == J``."""
    h = _genus_of(W)
    if g is not None and g != h:
        raise ValueError(f"matrix is {W.rows}x{W.cols}, expected genus {g}")
    J = intersection_form(h)
    return W.T @ J @ W == J


@dataclass(frozen=True)
class SymplecticMap:
    g: int
    W: IntMatrix

    def __post_init__(self):
        if _genus_of(self.W) != self.g:
            raise ValueError(f"W is {self.W.rows}x{self.W.cols}, expected genus {self.g}")

    @classmethod
    def of(cls, W, *, check: bool = True) -> "SymplecticMap":
        W = W if isinstance(W, IntMatrix) else IntMatrix(W)
        if check and not is_symplectic(W):
            raise NotSymplecticError("matrix does not preserve the intersection form")
        return cls(_genus_of(W), W)

    def _corner(self, r: int, c: int) -> IntMatrix:
        g = self.g
        return self.W.submatrix(range(r * g, (r + 1) * g), range(c * g, (c + 1) * g))

    @property
    def A(self) -> IntMatrix:
        return self._corner(0, 0)

    @property
    def B(self) -> IntMatrix:
        return self._corner(0, 1)

    @property
    def C(self) -> IntMatrix:
        return self._corner(1, 0)

    @property
    def D(self) -> IntMatrix:
        return self._corner(1, 1)

    def inverse(self) -> "SymplecticMap":
        # W^-1 = J^-1 W^T J = -J W^T J
        J = intersection_form(self.g)
        return SymplecticMap(self.g, -(J @ self.W.T @ J))


def _as_map(W) -> SymplecticMap:
    if isinstance(W, SymplecticMap):
        if not is_symplectic(W.W):
            raise NotSymplecticError("matrix does not preserve the intersection form")
        return W
    return SymplecticMap.of(W)


def in_lagrangian_subgroup(W) -> bool:
    """Whether ``W`` preserves both the a-span and the b-span."""
    w = _as_map(W)
    if not (w.B.is_zero() and w.C.is_zero()):
        return False
    # symplecticity then forces D = (A^T)^-1 with A unimodular
    if abs(determinant(w.A)) != 1 or invert_rational(w.A.T) != w.D:
        raise InvariantViolation("block-diagonal symplectic matrix with D != (A^T)^-1")
    return True


def heegaard_h1(W) -> HomologySummary:
    """H_1 of handlebody ∪_w anti-handlebody: the cokernel of the A-block.

    Trivial (an integral homology sphere) exactly when ``det A = ±1``.
    """
    return cokernel(_as_map(W).A)


def compose_maps(W2, W1) -> SymplecticMap:
    """The action of ``w2 ∘ w1``, i.e. the matrix product ``W2 W1``."""
    w2, w1 = _as_map(W2), _as_map(W1)
    if w2.g != w1.g:
        raise ValueError(f"genus mismatch: {w2.g} vs {w1.g}")
    return SymplecticMap(w2.g, w2.W @ w1.W)


def lagrangian_element(A: IntMatrix) -> SymplecticMap:
    """``diag(A, (A^T)^-1)`` for ``A`` in ``GL(g, Z)``."""
    if abs(determinant(A)) != 1:
        raise ValueError("A-block must be unimodular")
    g = A.rows
    Dm = invert_rational(A.T).to_int()
    Z = IntMatrix.zeros(g, g)
    return SymplecticMap(g, block([[A, Z], [Z, Dm]]))


def random_gl(rng: random.Random, g: int, steps: int | None = None) -> IntMatrix:
    return random_unimodular(rng, g, steps)


# the genus-1 maps used in the non-closure example
TWIST_A = IntMatrix([[1, 1], [0, 1]])
TWIST_B = IntMatrix([[1, 0], [-1, 1]])
TWIST_PRODUCT = IntMatrix([[0, 1], [-1, 1]])
