"""Seeded property suite over generated presentations.

Each check draws its inputs from a per-trial generator seeded with
``seed ^ trial`` and evaluates a set of named identities on them.  Inputs
are kept in serialized form, so a failing trial is reported as a witness
that :func:`replay_witness` can re-run without the generator.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .composition import (
    bullet,
    compose,
    identity_presentation,
    s_invariant,
    signature_plus,
    verify_gluing_identities,
)
from .generators import (
    RNG_ALGORITHM,
    gen_semilagrangian,
    random_pair,
    random_params,
    random_symmetric,
)
from .io import decode_matrix, encode_matrix, presentation_from_dict, presentation_to_dict
from .kirby import apply_all, format_moves, parse_moves, random_moves
from .linalg import IntMatrix, block, determinant, signature_symmetric
from .mcg import compose_maps, in_lagrangian_subgroup, lagrangian_element, random_gl
from .triplet import classify, h1_cobordism, h1_filling


def _pres(d):
    return presentation_from_dict(d)


def _dump(T):
    return presentation_to_dict(T)


def invariant_snapshot(T) -> tuple:
    """Everything a Kirby move must leave alone."""
    return (h1_filling(T), h1_cobordism(T)[1], classify(T).flags(), abs(determinant(T.A)))


# --- generator soundness ---------------------------------------------------

def _make_generator(rng):
    fam = rng.choice(("Z", "Q"))
    T = gen_semilagrangian(random_params(rng, fam, max_n=8, max_g=5))
    return {"family": fam, "T": _dump(T)}


def _check_generator(inp):
    r = classify(_pres(inp["T"]))
    ok = r.is_Q and r.semi_lagrangian_matrix and r.semi_lagrangian_rational
    if inp["family"] == "Z":
        ok = ok and r.is_Z and r.semi_lagrangian_integral
    return {"generator_soundness": ok}


# --- [[A, -I], [-I, 0]] blocks ----------------------------------------------------

def clasp_block_matrix(A: IntMatrix) -> IntMatrix:
    g = A.rows
    I = IntMatrix.identity(g)
    return block([[A, -I], [-I, IntMatrix.zeros(g, g)]])


def _make_clasp_block(rng):
    g = rng.randint(0, 6)
    return {"A": encode_matrix(random_symmetric(rng, g, 9))}


def _check_clasp_block(inp):
    A = decode_matrix(inp["A"])
    M = clasp_block_matrix(A)
    g = A.rows
    return {
        "clasp_block_signature": tuple(signature_symmetric(M)) == (g, 0, g),
        "clasp_block_determinant": determinant(M) == (-1) ** g,
    }


# --- gluing ----------------------------------------------------------------

def _make_pair(rng):
    T1, T2 = random_pair(rng, max_n=8, max_g=5, family=rng.choice(("Z", "Q")))
    return {"T1": _dump(T1), "T2": _dump(T2)}


def _check_gluing(inp):
    T1, T2 = _pres(inp["T1"]), _pres(inp["T2"])
    rep = verify_gluing_identities(T1, T2)
    c1, c2 = classify(T1), classify(T2)
    glued = classify(compose(T1, T2).result)
    closure = glued.is_Q and glued.semi_lagrangian_matrix and glued.semi_lagrangian_rational
    if c1.is_Z and c2.is_Z:
        closure = closure and glued.is_Z and glued.semi_lagrangian_integral
    return {
        "glued_signature": rep.signature_ok,
        "glued_determinant": rep.det_ok,
        "s_vanishes": rep.s_value == 0,
        "filling_order_multiplicative": rep.order_ok,
        "glued_semi_lagrangian": closure,
    }


# --- Kirby invariance ------------------------------------------------------

def _make_kirby(rng):
    T1, T2 = random_pair(rng, max_n=5, max_g=3, family=rng.choice(("Z", "Q")))
    _, m1 = random_moves(T1, rng.getrandbits(64), rng.randint(0, 30))
    _, m2 = random_moves(T2, rng.getrandbits(64), rng.randint(0, 30))
    return {"T1": _dump(T1), "T2": _dump(T2),
            "moves1": format_moves(m1), "moves2": format_moves(m2)}


def _check_kirby(inp):
    T1, T2 = _pres(inp["T1"]), _pres(inp["T2"])
    U1 = apply_all(T1, parse_moves(inp["moves1"]))
    U2 = apply_all(T2, parse_moves(inp["moves2"]))
    before, after = invariant_snapshot(T1), invariant_snapshot(U1)
    s_before, s_after = s_invariant(T1, T2), s_invariant(U1, U2)
    return {
        "kirby_h1_filling": before[0] == after[0],
        "kirby_h1_cobordism": before[1] == after[1],
        "kirby_flags": before[2] == after[2] and before[3] == after[3],
        "kirby_s": s_before == s_after == 0,
    }


# --- identity laws ---------------------------------------------------------

def _make_identity(rng):
    fam = rng.choice(("Z", "Q"))
    return {"T": _dump(gen_semilagrangian(random_params(rng, fam, max_n=6, max_g=4)))}


def _identity_view(T):
    return (h1_filling(T), h1_cobordism(T)[1], classify(T).flags())


def _check_identity(inp):
    T = _pres(inp["T"])
    ref = _identity_view(T)
    left = compose(identity_presentation(T.g_bottom), T).result
    right = compose(T, identity_presentation(T.g_top)).result
    return {
        "identity_left": _identity_view(left) == ref,
        "identity_right": _identity_view(right) == ref,
    }


# --- Lagrangian subgroup ---------------------------------------------------

def _make_lagrangian(rng):
    g = rng.randint(1, 5)
    return {"A1": encode_matrix(random_gl(rng, g)), "A2": encode_matrix(random_gl(rng, g))}


def _check_lagrangian(inp):
    w1 = lagrangian_element(decode_matrix(inp["A1"]))
    w2 = lagrangian_element(decode_matrix(inp["A2"]))
    return {
        "lagrangian_product": in_lagrangian_subgroup(compose_maps(w2, w1)),
        "lagrangian_inverse": in_lagrangian_subgroup(w1.inverse()),
    }


# --- bullet product --------------------------------------------------------

def _make_bullet(rng):
    Ts = [gen_semilagrangian(random_params(rng, rng.choice(("Z", "Q")), max_n=6,
                                           max_g=3, g_bottom=0)) for _ in range(2)]
    return {"T1": _dump(Ts[0]), "T2": _dump(Ts[1])}


def _check_bullet(inp):
    T1, T2 = _pres(inp["T1"]), _pres(inp["T2"])
    P = bullet(T1, T2)
    return {
        "bullet_order": h1_filling(P).order() == h1_filling(T1).order() * h1_filling(T2).order(),
        "bullet_signature": signature_plus(P.A) == signature_plus(T1.A) + signature_plus(T2.A),
    }


@dataclass(frozen=True)
class Check:
    name: str
    make: Callable[[random.Random], dict]
    holds: Callable[[dict], dict]


CHECKS: tuple[Check, ...] = (
    Check("generator", _make_generator, _check_generator),
    Check("clasp_block", _make_clasp_block, _check_clasp_block),
    Check("gluing", _make_pair, _check_gluing),
    Check("kirby", _make_kirby, _check_kirby),
    Check("identity", _make_identity, _check_identity),
    Check("lagrangian", _make_lagrangian, _check_lagrangian),
    Check("bullet", _make_bullet, _check_bullet),
)
CHECKS_BY_NAME = {c.name: c for c in CHECKS}


@dataclass
class SuiteReport:
    trials: int
    seed: int
    rng_algorithm: str = RNG_ALGORITHM
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    witnesses: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failures(self) -> int:
        return sum(c["failed"] for c in self.counts.values())

    def to_dict(self, include_timing: bool = True) -> dict:
        d = {
            "trials": self.trials,
            "seed": str(self.seed),
            "rng_algorithm": self.rng_algorithm,
            "counts": {k: dict(v) for k, v in sorted(self.counts.items())},
            "failures": self.failures,
            "witnesses": self.witnesses,
        }
        if include_timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d


def trial_seed(seed: int, trial: int) -> int:
    return seed ^ trial


def run_trial(check: Check, seed: int, trial: int) -> tuple[dict, dict]:
    rng = random.Random(f"{check.name}:{trial_seed(seed, trial)}")
    inputs = check.make(rng)
    return inputs, check.holds(inputs)


def run_suite(trials: int, seed: int, checks=CHECKS) -> SuiteReport:
    """Run every check ``trials`` times; failures are collected, never raised."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    start = time.perf_counter()
    report = SuiteReport(trials, seed)
    for check in checks:
        for trial in range(trials):
            inputs, results = run_trial(check, seed, trial)
            failed = sorted(k for k, ok in results.items() if not ok)
            for k, ok in results.items():
                c = report.counts.setdefault(k, {"passed": 0, "failed": 0})
                c["passed" if ok else "failed"] += 1
            if failed:
                report.witnesses.append({
                    "check": check.name, "trial": trial,
                    "trial_seed": str(trial_seed(seed, trial)),
                    "failed": failed, "inputs": inputs,
                })
    report.wall_time = time.perf_counter() - start
    return report


def replay_witness(witness: dict) -> dict[str, bool]:
    """Re-evaluate a witness; returns the per-identity results."""
    return CHECKS_BY_NAME[witness["check"]].holds(witness["inputs"])
