"""Kirby moves on presentations, acting on linking data.

The moves here are diagrammatic operations seen through the linking matrix
only: every invariant the package computes factors through that matrix, so
a block update is a faithful shadow of the move, but nothing here
manipulates actual link diagrams.

Each move is a congruence ``lk -> P lk P^T`` of the full linking matrix
(order ``L, G, G'``) by an integral ``P``, except stabilization, which adds
an isolated ±1-framed unknot, and destabilization, which removes one:

* sliding link component ``i`` over ``j`` adds row/column ``j`` to row/column
  ``i`` (with sign ``eps``),
* sliding circle ``k`` of a graph over link component ``j`` does the same
  with a graph row.  Expanding ``(b_k + eps a_j)`` against itself and the
  other rows gives the block formulas in :func:`apply`,
* flipping the orientation of component ``j`` negates its row and column.

Indices in the text format are 1-based; in the Python API they are 0-based.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union

from .linalg import IntMatrix, block_diag
from .triplet import TripletPresentation


class KirbyMoveError(ValueError):
    pass


@dataclass(frozen=True)
class Stabilize:
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise KirbyMoveError("stabilization sign must be ±1")


@dataclass(frozen=True)
class Destabilize:
    index: int


@dataclass(frozen=True)
class SlideLinkOverLink:
    i: int
    j: int
    eps: int


@dataclass(frozen=True)
class SlideGraphOverLink:
    side: str       # "bottom" or "top"
    k: int
    j: int
    eps: int


@dataclass(frozen=True)
class FlipOrientation:
    index: int


KirbyMove = Union[Stabilize, Destabilize, SlideLinkOverLink, SlideGraphOverLink, FlipOrientation]


def _sign_char(e: int) -> str:
    return "+" if e > 0 else "-"


def format_move(move: KirbyMove) -> str:
    """One line of the move-log format, e.g. ``slide L 3 over 1 +``."""
    if isinstance(move, Stabilize):
        return f"stab {_sign_char(move.sign)}"
    if isinstance(move, Destabilize):
        return f"destab {move.index + 1}"
    if isinstance(move, SlideLinkOverLink):
        return f"slide L {move.i + 1} over {move.j + 1} {_sign_char(move.eps)}"
    if isinstance(move, SlideGraphOverLink):
        tag = "G" if move.side == "bottom" else "G'"
        return f"slide {tag} {move.k + 1} over {move.j + 1} {_sign_char(move.eps)}"
    if isinstance(move, FlipOrientation):
        return f"flip {move.index + 1}"
    raise TypeError(f"not a Kirby move: {move!r}")


def _parse_sign(tok: str) -> int:
    if tok in ("+", "+1"):
        return 1
    if tok in ("-", "-1"):
        return -1
    raise KirbyMoveError(f"bad sign {tok!r}")


def _parse_index(tok: str) -> int:
    try:
        i = int(tok)
    except ValueError:
        raise KirbyMoveError(f"bad index {tok!r}") from None
    if i < 1:
        raise KirbyMoveError(f"indices are 1-based, got {i}")
    return i - 1


def parse_move(line: str) -> KirbyMove:
    tok = line.split()
    if not tok:
        raise KirbyMoveError("empty move line")
    head = tok[0]
    if head == "stab" and len(tok) == 2:
        return Stabilize(_parse_sign(tok[1]))
    if head == "destab" and len(tok) == 2:
        return Destabilize(_parse_index(tok[1]))
    if head == "flip" and len(tok) == 2:
        return FlipOrientation(_parse_index(tok[1]))
    if head == "slide" and len(tok) == 6 and tok[3] == "over":
        what, a, b, eps = tok[1], _parse_index(tok[2]), _parse_index(tok[4]), _parse_sign(tok[5])
        if what == "L":
            return SlideLinkOverLink(a, b, eps)
        if what == "G":
            return SlideGraphOverLink("bottom", a, b, eps)
        if what == "G'":
            return SlideGraphOverLink("top", a, b, eps)
    raise KirbyMoveError(f"cannot parse move: {line!r}")


def parse_moves(text: str) -> list[KirbyMove]:
    """Parse a move log; blank lines and ``#`` comments are skipped."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_move(line))
    return out


def format_moves(moves) -> str:
    return "".join(format_move(m) + "\n" for m in moves)


# ---------------------------------------------------------------------------


def _check(cond: bool, msg: str):
    if not cond:
        raise KirbyMoveError(msg)


def _add_row(rows: list[list[int]], dst: int, src: int, c: int):
    rows[dst] = [a + c * b for a, b in zip(rows[dst], rows[src])]


def _congruence_add(lk: list[list[int]], dst: int, src: int, c: int):
    # row dst += c * row src, then column dst += c * column src
    _add_row(lk, dst, src, c)
    for row in lk:
        row[dst] += c * row[src]


def _split(T: TripletPresentation, lk: list[list[int]], n: int) -> TripletPresentation:
    M = IntMatrix._wrap(lk, len(lk), len(lk))
    return TripletPresentation.from_linking_matrix(M, n, T.g_bottom, T.g_top)


def is_destabilizable(T: TripletPresentation, j: int) -> bool:
    """Component ``j`` is an isolated ±1-framed unknot in the linking data."""
    if not 0 <= j < T.n_link:
        return False
    row = T.A.row(j)
    if abs(row[j]) != 1 or any(x for i, x in enumerate(row) if i != j):
        return False
    return not any(T.B.col(j)) and not any(T.C.col(j))


def apply(T: TripletPresentation, move: KirbyMove) -> TripletPresentation:
    """Apply one move to the linking data.

    Block form of the updates:

    * ``Stabilize(s)``: ``A -> diag(A, s)``; ``B``, ``C`` gain a zero column.
    * ``SlideLinkOverLink(i, j, eps)``: ``A -> P A P^T``, ``B -> B P^T``,
      ``C -> C P^T`` with ``P = I + eps e_ij``.
    * ``SlideGraphOverLink("bottom", k, j, eps)``: row ``k`` of ``B`` gains
      ``eps`` times row ``j`` of ``A``; ``D[k, m] += eps B[m, j]`` for
      ``m != k``; ``D[k, k] += 2 eps B[k, j] + A[j, j]``; column ``k`` of
      ``E`` gains ``eps`` times column ``j`` of ``C``.  The top side is the
      same with ``C``, ``F`` and the rows of ``E``.
    * ``FlipOrientation(j)``: negate row and column ``j`` of ``A`` and column
      ``j`` of ``B`` and ``C``.
    """
    n, g1, g2 = T.n_link, T.g_bottom, T.g_top
    if isinstance(move, Stabilize):
        return TripletPresentation(
            g1, g2, n + 1,
            block_diag(T.A, IntMatrix([[move.sign]], 1, 1)),
            IntMatrix._wrap([list(r) + [0] for r in T.B], g1, n + 1),
            IntMatrix._wrap([list(r) + [0] for r in T.C], g2, n + 1),
            T.D, T.E, T.F)
    if isinstance(move, Destabilize):
        j = move.index
        _check(is_destabilizable(T, j),
               f"component {j + 1} is not an isolated ±1-framed unknot")
        keep = [i for i in range(n) if i != j]
        return TripletPresentation(
            g1, g2, n - 1,
            T.A.submatrix(keep, keep),
            T.B.submatrix(range(g1), keep),
            T.C.submatrix(range(g2), keep),
            T.D, T.E, T.F)
    lk = T.linking_matrix().tolist()
    if isinstance(move, SlideLinkOverLink):
        _check(0 <= move.i < n and 0 <= move.j < n, "link index out of range")
        _check(move.i != move.j, "cannot slide a component over itself")
        _check(move.eps in (1, -1), "slide sign must be ±1")
        _congruence_add(lk, move.i, move.j, move.eps)
        return _split(T, lk, n)
    if isinstance(move, SlideGraphOverLink):
        _check(move.side in ("bottom", "top"), f"bad side {move.side!r}")
        _check(move.eps in (1, -1), "slide sign must be ±1")
        _check(0 <= move.j < n, "link index out of range")
        if move.side == "bottom":
            _check(0 <= move.k < g1, "bottom circle index out of range")
            row = n + move.k
        else:
            _check(0 <= move.k < g2, "top circle index out of range")
            row = n + g1 + move.k
        _congruence_add(lk, row, move.j, move.eps)
        return _split(T, lk, n)
    if isinstance(move, FlipOrientation):
        j = move.index
        _check(0 <= j < n, "link index out of range")
        lk[j] = [-x for x in lk[j]]
        for r in lk:
            r[j] = -r[j]
        return _split(T, lk, n)
    raise TypeError(f"not a Kirby move: {move!r}")


def apply_all(T: TripletPresentation, moves) -> TripletPresentation:
    for m in moves:
        T = apply(T, m)
    return T


def legal_moves(T: TripletPresentation) -> list[KirbyMove]:
    """Every move applicable to ``T``, in a fixed order."""
    n, g1, g2 = T.n_link, T.g_bottom, T.g_top
    out: list[KirbyMove] = [Stabilize(1), Stabilize(-1)]
    out += [Destabilize(j) for j in range(n) if is_destabilizable(T, j)]
    for i in range(n):
        for j in range(n):
            if i != j:
                out += [SlideLinkOverLink(i, j, 1), SlideLinkOverLink(i, j, -1)]
    for side, g in (("bottom", g1), ("top", g2)):
        for k in range(g):
            for j in range(n):
                out += [SlideGraphOverLink(side, k, j, 1), SlideGraphOverLink(side, k, j, -1)]
    out += [FlipOrientation(j) for j in range(n)]
    return out


def random_moves(T: TripletPresentation, seed: int, count: int
                 ) -> tuple[TripletPresentation, list[KirbyMove]]:
    """Apply ``count`` moves drawn uniformly from the legal ones at each step."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    rng = random.Random(seed)
    log = []
    for _ in range(count):
        move = rng.choice(legal_moves(T))
        T = apply(T, move)
        log.append(move)
    return T, log
