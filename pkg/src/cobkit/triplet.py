"""Surgery-triplet presentations of 3-cobordisms and their homology.

A presentation stores the linking data of a triplet ``(L, G, G')``: a framed
link ``L`` in S^3 with ``n`` components, a bottom chain graph ``G`` with
``g_bottom`` circles and a top chain graph ``G'`` with ``g_top`` circles.
The full symmetric linking matrix is::

    [[A, B^T, C^T],
     [B, D,   E^T],
     [C, E,   F  ]]

with ``A = lk(L)`` (framings on the diagonal), ``B = lk(G, L)``,
``C = lk(G', L)``, ``D = lk(G, G)``, ``E = lk(G', G)``, ``F = lk(G', G')``.
The diagonals of ``D`` and ``F`` hold ribbon self-framings.

Homology generators are ordered ``(mu_1..mu_n, m_1..m_g1, m'_1..m'_g2)``:
meridians of the link, of the bottom circles and of the top circles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .linalg import (
    IntMatrix,
    Matrix,
    block,
    determinant,
    rank,
    smith_normal_form,
    solve_rational,
    vstack,
)


class PresentationError(ValueError):
    """A presentation failed validation."""


@dataclass(frozen=True)
class TripletPresentation:
    g_bottom: int
    g_top: int
    n_link: int
    A: IntMatrix
    B: IntMatrix
    C: IntMatrix
    D: IntMatrix
    E: IntMatrix
    F: IntMatrix

    @classmethod
    def build(cls, g_bottom: int, g_top: int, n_link: int, A=None, B=None, C=None,
              D=None, E=None, F=None) -> "TripletPresentation":
        """Convenience constructor; omitted blocks are zero, lists are accepted."""
        def mat(x, r, c):
            if x is None:
                return IntMatrix.zeros(r, c)
            if isinstance(x, IntMatrix):
                return x
            return IntMatrix(x, r, c)
        n, g1, g2 = n_link, g_bottom, g_top
        return cls(g1, g2, n, mat(A, n, n), mat(B, g1, n), mat(C, g2, n),
                   mat(D, g1, g1), mat(E, g2, g1), mat(F, g2, g2))

    def linking_matrix(self) -> IntMatrix:
        """The full symmetric linking matrix in order (L, G, G')."""
        return block([
            [self.A, self.B.T, self.C.T],
            [self.B, self.D, self.E.T],
            [self.C, self.E, self.F],
        ])

    @classmethod
    def from_linking_matrix(cls, lk: IntMatrix, n_link: int, g_bottom: int,
                            g_top: int) -> "TripletPresentation":
        n, g1, g2 = n_link, g_bottom, g_top
        L = range(n)
        G = range(n, n + g1)
        Gp = range(n + g1, n + g1 + g2)
        return cls(g1, g2, n,
                   lk.submatrix(L, L), lk.submatrix(G, L), lk.submatrix(Gp, L),
                   lk.submatrix(G, G), lk.submatrix(Gp, G), lk.submatrix(Gp, Gp))

    def validate(self) -> list[str]:
        return validate(self)

    def check(self) -> "TripletPresentation":
        problems = validate(self)
        if problems:
            raise PresentationError("; ".join(problems))
        return self


def validate(T: TripletPresentation) -> list[str]:
    """Return a list of violations; empty means the presentation is usable."""
    out = []
    n, g1, g2 = T.n_link, T.g_bottom, T.g_top
    for name, value in (("n_link", n), ("g_bottom", g1), ("g_top", g2)):
        if not isinstance(value, int) or value < 0:
            out.append(f"{name} must be a nonnegative integer")
    if out:
        return out
    dims = {"n": n, "g_bottom": g1, "g_top": g2}
    shapes = {"A": ("n", "n"), "B": ("g_bottom", "n"), "C": ("g_top", "n"),
              "D": ("g_bottom", "g_bottom"), "E": ("g_top", "g_bottom"),
              "F": ("g_top", "g_top")}
    for key, (r, c) in shapes.items():
        m = getattr(T, key)
        if not isinstance(m, IntMatrix):
            out.append(f"{key} is not an integer matrix")
            continue
        if m.rows != dims[r]:
            out.append(f"{key} rows ≠ {r} ({m.rows} vs {dims[r]})")
        if m.cols != dims[c]:
            out.append(f"{key} cols ≠ {c} ({m.cols} vs {dims[c]})")
    for key in ("A", "D", "F"):
        m = getattr(T, key)
        if isinstance(m, IntMatrix) and m.is_square() and not m.is_symmetric():
            out.append(f"{key} not symmetric")
    return out


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologySummary:
    """A finitely generated abelian group ``Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    @classmethod
    def from_factors(cls, factors: Sequence[int], ngens: int) -> "HomologySummary":
        """Cokernel of a relation matrix with Smith factors ``factors`` on ``ngens`` generators."""
        rank = sum(1 for d in factors if d != 0)
        return cls(ngens - rank, tuple(d for d in factors if d > 1))

    def order(self):
        """Group order; ``math.inf`` if the group is infinite."""
        if self.free_rank:
            return math.inf
        return math.prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("ℤ")
        elif self.free_rank > 1:
            parts.append(f"ℤ^{self.free_rank}")
        parts.extend(f"ℤ/{t}" for t in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": [str(t) for t in self.torsion]}


def cokernel(R: IntMatrix) -> HomologySummary:
    """``Z^cols`` modulo the row span of ``R``."""
    return HomologySummary.from_factors(smith_normal_form(R).factors, R.cols)


@dataclass(frozen=True)
class HomologyPresentation:
    """Relations (rows) on labelled generators (columns)."""

    relations: IntMatrix
    labels: tuple[str, ...]

    @property
    def ngens(self) -> int:
        return len(self.labels)

    def indices(self, prefix: str) -> list[int]:
        return [i for i, lab in enumerate(self.labels) if lab.split("_")[0] == prefix]


def generator_labels(T: TripletPresentation) -> tuple[str, ...]:
    return (tuple(f"mu_{i + 1}" for i in range(T.n_link))
            + tuple(f"m_{i + 1}" for i in range(T.g_bottom))
            + tuple(f"m'_{i + 1}" for i in range(T.g_top)))


def h1_filling(T: TripletPresentation) -> HomologySummary:
    """H_1 of the filling: the cokernel of the link's linking matrix."""
    return cokernel(T.A)


def homology_presentation(T: TripletPresentation) -> HomologyPresentation:
    """One relation ``A mu + B^T m + C^T m'`` per link component."""
    R = block([[T.A, T.B.T, T.C.T]]) if T.n_link else IntMatrix.zeros(0, T.g_bottom + T.g_top)
    return HomologyPresentation(R, generator_labels(T))


def h1_cobordism(T: TripletPresentation) -> tuple[HomologyPresentation, HomologySummary]:
    P = homology_presentation(T)
    return P, cokernel(P.relations)


def chain_graph_complement_h1(g: int) -> HomologySummary:
    """H_1 of the complement of a genus-g chain graph, via Mayer-Vietoris.

    The map ``Z^(2g-1) -> Z^(2g-1) ⊕ Z^g`` stacks an identity block over ``g``
    rows that pair consecutive arcs: (1,-1,0,...), (0,0,1,-1,...), ...,
    ending in (0,...,0,1).  Its cokernel is the answer.
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if g == 0:
        return HomologySummary(0)
    k = 2 * g - 1
    pattern = []
    for i in range(g - 1):
        row = [0] * k
        row[2 * i] = 1
        row[2 * i + 1] = -1
        pattern.append(row)
    last = [0] * k
    last[k - 1] = 1
    pattern.append(last)
    M = vstack(IntMatrix.identity(k), IntMatrix(pattern, g, k))
    # cokernel of the column map: relations are the columns
    return cokernel(M.T)


# ---------------------------------------------------------------------------
# subgroup membership


def _as_matrix(vectors, ngens: int) -> IntMatrix:
    vectors = [list(v) for v in vectors]
    for v in vectors:
        if len(v) != ngens:
            raise ValueError(f"vector of length {len(v)} in a group with {ngens} generators")
    return IntMatrix(vectors, len(vectors), ngens)


def _in_integer_span(x: Sequence[int], snf) -> bool:
    # x is in the row lattice of M  iff  x V is divisible by the Smith factors
    y = [sum(a * b for a, b in zip(x, snf.V.col(j))) for j in range(snf.V.cols)]
    for j, yj in enumerate(y):
        d = snf.factors[j] if j < len(snf.factors) else 0
        if d == 0:
            if yj != 0:
                return False
        elif yj % d:
            return False
    return True


def submodule_leq(P: HomologyPresentation, X, Y, *, rational: bool = False) -> bool:
    """True iff every element of ``X`` lies in the subgroup generated by ``Y`` in coker(P).

    Elements are integer vectors in the generator basis of ``P``.  With
    ``rational=True`` the question is asked after tensoring with Q, which
    reduces to rank comparisons.
    """
    n = P.ngens
    Xm = _as_matrix(X, n)
    Ym = _as_matrix(Y, n)
    if Xm.rows == 0:
        return True
    span = vstack(Ym, P.relations)
    if rational:
        r = rank(span)
        return rank(vstack(span, Xm)) == r
    snf = smith_normal_form(span)
    return all(_in_integer_span(Xm.row(i), snf) for i in range(Xm.rows))


def submodule_leq_rational(P: HomologyPresentation, X, Y) -> bool:
    return submodule_leq(P, X, Y, rational=True)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassificationReport:
    is_Q: bool
    is_Z: bool
    semi_lagrangian_matrix: bool
    semi_lagrangian_integral: bool
    semi_lagrangian_rational: bool
    det_A: int
    bottom_defect: Matrix | None = field(default=None, compare=False)   # D - B A^-1 B^T
    top_defect: Matrix | None = field(default=None, compare=False)      # F - C A^-1 C^T
    cross_term: Matrix | None = field(default=None, compare=False)      # B A^-1 C^T

    def flags(self) -> tuple[bool, ...]:
        return (self.is_Q, self.is_Z, self.semi_lagrangian_matrix,
                self.semi_lagrangian_integral, self.semi_lagrangian_rational)

    def to_dict(self) -> dict:
        d = {
            "is_Q": self.is_Q,
            "is_Z": self.is_Z,
            "semi_lagrangian_matrix": self.semi_lagrangian_matrix,
            "semi_lagrangian_integral": self.semi_lagrangian_integral,
            "semi_lagrangian_rational": self.semi_lagrangian_rational,
            "det_A": str(self.det_A),
        }
        for key in ("bottom_defect", "top_defect", "cross_term"):
            m = getattr(self, key)
            d[key] = None if m is None else [[str(x) for x in row] for row in m]
        return d


def b_classes(T: TripletPresentation) -> list[tuple[int, ...]]:
    """Homology classes of the bottom b-curves: rows of [B | D | E^T]."""
    M = block([[T.B, T.D, T.E.T]])
    return [M.row(i) for i in range(M.rows)]


def a_classes(T: TripletPresentation) -> list[tuple[int, ...]]:
    """Homology classes of the top a-curves: rows of [C | E | F]."""
    M = block([[T.C, T.E, T.F]])
    return [M.row(i) for i in range(M.rows)]


def _units(ngens: int, idx: Sequence[int]) -> list[list[int]]:
    return [[int(j == i) for j in range(ngens)] for i in idx]


def schur_terms(T: TripletPresentation):
    """``(D - B A^-1 B^T, F - C A^-1 C^T, B A^-1 C^T)``; requires ``det A != 0``."""
    rhs = block([[T.B.T, T.C.T]]) if T.n_link else IntMatrix.zeros(0, T.g_bottom + T.g_top)
    X = solve_rational(T.A, rhs)     # A^-1 [B^T | C^T]
    g1, g2 = T.g_bottom, T.g_top
    AinvBt = X.submatrix(range(T.n_link), range(g1))
    AinvCt = X.submatrix(range(T.n_link), range(g1, g1 + g2))
    return T.D - T.B @ AinvBt, T.F - T.C @ AinvCt, T.B @ AinvCt


def classify(T: TripletPresentation) -> ClassificationReport:
    """Rational/integral cobordism type and the semi-Lagrangian conditions.

    ``semi_lagrangian_matrix`` is the block criterion (``D = B A^-1 B^T``,
    ``F = C A^-1 C^T`` and ``B A^-1 C^T`` integral).  The ``integral`` and
    ``rational`` flags test the subgroup conditions directly in H_1(M): each
    b-class must lie in the span of the top meridians and each a-class in the
    span of the bottom meridians.  All three are false unless ``is_Q``.
    """
    det = determinant(T.A)
    is_Q = det != 0
    is_Z = abs(det) == 1
    if not is_Q:
        return ClassificationReport(False, False, False, False, False, det)
    bottom, top, cross = schur_terms(T)
    matrix_ok = bottom.is_zero() and top.is_zero() and cross.is_integral()

    P = homology_presentation(T)
    n, g1 = T.n_link, T.g_bottom
    m_idx = range(n, n + g1)
    mp_idx = range(n + g1, P.ngens)
    b, a = b_classes(T), a_classes(T)
    integral = (submodule_leq(P, b, _units(P.ngens, mp_idx))
                and submodule_leq(P, a, _units(P.ngens, m_idx)))
    rational = (submodule_leq(P, b, _units(P.ngens, mp_idx), rational=True)
                and submodule_leq(P, a, _units(P.ngens, m_idx), rational=True))
    return ClassificationReport(is_Q, is_Z, matrix_ok, integral, rational, det,
                                bottom, top, cross)


Z4_EXAMPLE = TripletPresentation.build(
    1, 1, 2,
    A=[[1, 1], [1, -3]],
    B=[[1, -1]],
    C=[[0, 0]],
    D=[[0]],
    E=[[-1]],
    F=[[0]],
)
"""Two-component link with one bottom and one top circle whose filling has H_1 = Z/4.

Rational but not integral cobordism; the b-condition holds over Q and fails over Z.
"""

HOPF = TripletPresentation.build(1, 0, 1, A=[[0]], B=[[1]])
"""One Hopf component 0-surgered, the other excised as a genus-1 bottom."""

