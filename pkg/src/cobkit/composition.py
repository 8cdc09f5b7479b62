"""Gluing presentations along a genus-g surface, the decomposition integer s,
and the connected-sum style product of cobordisms with empty bottom.

The glued link is ``L1 ∪ L0 ∪ L2`` where ``L0`` consists of ``2g`` new
components: ``U_1..U_g`` closing the top circles of the first presentation
and ``V_1..V_g`` closing the bottom circles of the second.  ``U_i`` and
``V_i`` clasp with linking number -1.  Link components of the composite are
always ordered ``[L1, U, V, L2]``; nesting compositions therefore yields the
order ``[L1, U1, V1, L2, U2, V2, L3]`` regardless of bracketing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    IntMatrix,
    SignatureTriple,
    block,
    block_diag,
    determinant,
    signature_symmetric,
)
from .triplet import TripletPresentation, classify, h1_filling


class GenusMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class CompositeBuild:
    result: TripletPresentation
    interface_genus: int
    n_first: int
    n_second: int

    @property
    def component_order(self) -> tuple[str, ...]:
        return (("L1",) * self.n_first + ("U",) * self.interface_genus
                + ("V",) * self.interface_genus + ("L2",) * self.n_second)


def identity_presentation(g: int) -> TripletPresentation:
    """The cylinder over a genus-g surface: no link, parallel 0-framed graphs."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return TripletPresentation.build(g, g, 0)


def compose(T1: TripletPresentation, T2: TripletPresentation) -> CompositeBuild:
    """Glue the top of ``T1`` to the bottom of ``T2``.

    The link block is::

        [[A1,  C1^T, 0,    0   ],
         [C1,  F1,   -I,   0   ],
         [0,   -I,   D2,   B2  ],
         [0,   0,    B2^T, A2  ]]

    the bottom graph links ``L1`` by ``B1`` and ``U`` by ``E1^T``, the top
    graph links ``V`` by ``E2`` and ``L2`` by ``C2``, and the two graphs do not
    link each other.  The actual ``F1``/``D2`` blocks are used, so this is
    defined for any pair, semi-Lagrangian or not.
    """
    g = T1.g_top
    if T2.g_bottom != g:
        raise GenusMismatchError(
            f"top genus of first cobordism ({g}) ≠ bottom genus of second ({T2.g_bottom})")
    n1, n2 = T1.n_link, T2.n_link
    g1, g3 = T1.g_bottom, T2.g_top
    Z = IntMatrix.zeros
    minus_I = -IntMatrix.identity(g)
    A = block([
        [T1.A, T1.C.T, Z(n1, g), Z(n1, n2)],
        [T1.C, T1.F, minus_I, Z(g, n2)],
        [Z(g, n1), minus_I, T2.D, T2.B],
        [Z(n2, n1), Z(n2, g), T2.B.T, T2.A],
    ])
    B = block([[T1.B, T1.E.T, Z(g1, g), Z(g1, n2)]])
    C = block([[Z(g3, n1), Z(g3, g), T2.E, T2.C]])
    result = TripletPresentation(g1, g3, n1 + 2 * g + n2, A, B, C, T1.D, Z(g3, g1), T2.F)
    return CompositeBuild(result, g, n1, n2)


def signature_plus(M: IntMatrix) -> int:
    return signature_symmetric(M).pos


def s_invariant(T1: TripletPresentation, T2: TripletPresentation) -> int:
    """``sign+(A1) + sign+(A2) + g - sign+(A_glued)``."""
    build = compose(T1, T2)
    return (signature_plus(T1.A) + signature_plus(T2.A) + build.interface_genus
            - signature_plus(build.result.A))


def is_semi_lagrangian_q(T: TripletPresentation) -> bool:
    report = classify(T)
    return report.is_Q and report.semi_lagrangian_matrix


@dataclass(frozen=True)
class GluingReport:
    precondition_ok: bool
    genus: int
    signature_first: SignatureTriple
    signature_second: SignatureTriple
    signature_glued: SignatureTriple
    det_first: int
    det_second: int
    det_glued: int
    order_first: int | float
    order_second: int | float
    order_glued: int | float
    signature_ok: bool
    det_ok: bool
    s_value: int
    order_ok: bool

    @property
    def passed(self) -> bool:
        return self.precondition_ok and self.signature_ok and self.det_ok and self.order_ok \
            and self.s_value == 0

    def to_dict(self) -> dict:
        return {
            "precondition_ok": self.precondition_ok,
            "genus": self.genus,
            "signature_first": list(self.signature_first),
            "signature_second": list(self.signature_second),
            "signature_glued": list(self.signature_glued),
            "det_first": str(self.det_first),
            "det_second": str(self.det_second),
            "det_glued": str(self.det_glued),
            "order_first": str(self.order_first),
            "order_second": str(self.order_second),
            "order_glued": str(self.order_glued),
            "signature_ok": self.signature_ok,
            "det_ok": self.det_ok,
            "s": self.s_value,
            "order_ok": self.order_ok,
            "passed": self.passed,
        }


def verify_gluing_identities(T1: TripletPresentation, T2: TripletPresentation) -> GluingReport:
    """Check signature additivity, the determinant formula and |H_1| multiplicativity.

    Expected: the glued link matrix has signature
    ``(p1 + p2 + g, n1 + n2 + g)`` (no nullity), determinant
    ``(-1)^g det A1 det A2``, and the filling's first homology has order
    ``|H_1(first)| * |H_1(second)|``.  ``precondition_ok`` records whether
    both inputs are semi-Lagrangian rational presentations; the identities
    are evaluated regardless so failures off that locus are visible.
    """
    build = compose(T1, T2)
    g = build.interface_genus
    A12 = build.result.A
    s1, s2, s12 = (signature_symmetric(T1.A), signature_symmetric(T2.A),
                   signature_symmetric(A12))
    d1, d2, d12 = determinant(T1.A), determinant(T2.A), determinant(A12)
    o1, o2, o12 = h1_filling(T1).order(), h1_filling(T2).order(), h1_filling(build.result).order()
    pre = is_semi_lagrangian_q(T1) and is_semi_lagrangian_q(T2)
    sig_ok = (s12.pos == s1.pos + s2.pos + g and s12.neg == s1.neg + s2.neg + g
              and s12.zero == 0)
    det_ok = d12 == (-1) ** g * d1 * d2
    order_ok = o12 == o1 * o2
    s_value = s1.pos + s2.pos + g - s12.pos
    return GluingReport(pre, g, s1, s2, s12, d1, d2, d12, o1, o2, o12,
                        sig_ok, det_ok, s_value, order_ok)


def bullet(T1: TripletPresentation, T2: TripletPresentation) -> TripletPresentation:
    """Product of two cobordisms with empty bottom (split union of triplets).

    For genus-0 tops this is the connected sum of the fillings.
    """
    if T1.g_bottom or T2.g_bottom:
        raise ValueError("bullet product needs cobordisms with empty (genus 0) bottom")
    n = T1.n_link + T2.n_link
    g = T1.g_top + T2.g_top
    return TripletPresentation(
        0, g, n,
        block_diag(T1.A, T2.A),
        IntMatrix.zeros(0, n),
        block_diag(T1.C, T2.C),
        IntMatrix.zeros(0, 0),
        IntMatrix.zeros(g, 0),
        block_diag(T1.F, T2.F),
    )


def bullet_s(T1: TripletPresentation, T2: TripletPresentation) -> int:
    """``sign+(A1) + sign+(A2) - sign+(A)`` for the bullet product; always 0."""
    return signature_plus(T1.A) + signature_plus(T2.A) - signature_plus(bullet(T1, T2).A)
