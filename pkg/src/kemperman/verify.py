"""Independent certificate checker.

Everything here is re-derived from set and trio primitives; the structure
definitions are checked verbatim on the normalized trio and nothing calls the
classifier's search.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import KempermanError
from .groups import GroupSet, Subgroup
from .sets import closure_coset, is_stable, sequence_profile, stabilizer, sumset
from .structures import Certificate, Kind, StructureTag
from .trio import Trio, apply_similarity, is_maximal, trio_deficiency


@dataclass(frozen=True)
class Verdict:
    ok: bool
    message: str = "OK"
    step: Optional[int] = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        return self.message if self.step is None else f"step {self.step}: {self.message}"


def _third(A: GroupSet, B: GroupSet, U: GroupSet) -> GroupSet:
    return (-sumset(A, B)).complement(U)


def _in_one_coset(X: GroupSet, H: GroupSet) -> bool:
    if not X:
        return True
    x = next(iter(X))
    return X <= H.shift(x)


def _proper_subgroup(H: GroupSet, U: GroupSet) -> Optional[str]:
    if not H.group.is_subgroup_mask(H.mask):
        return "H is not a subgroup"
    if not H < U:
        return "H is not a proper subgroup of the universe"
    return None


def _sequence(X, H, R, U, basic=False) -> Optional[str]:
    try:
        p = sequence_profile(X, H, R, U)
    except KempermanError as e:
        return f"R does not generate a cyclic quotient ({e})"
    if not p.is_sequence:
        return "not an R-sequence"
    if not p.is_nontrivial:
        return "R-sequence is trivial"
    if basic and not p.is_basic:
        return "R-sequence is not basic"
    return None


def check_definition(t: Trio, kind: Kind, H: GroupSet, R: Optional[int]) -> Optional[str]:
    """Check the normalized trio ``t`` against a structure definition.

    Returns ``None`` when every clause holds, else the first failing clause.
    """
    A, B, C = t.members
    U = t.universe
    bad = _proper_subgroup(H, U)
    if bad:
        return bad
    if kind is Kind.PURE_BEAT:
        if A != H:
            return "pure beat: A != H"
        if stabilizer(B) != H:
            return "pure beat: stabilizer of B is not H"
        T = _third(A, B, U)
        if C != T or not C:
            return "pure beat: C is not the nonempty completion of A+B"
        return None
    if kind is Kind.PURE_CHORD:
        if R is None:
            return "pure chord: missing R"
        for name, X in (("A", A), ("B", B)):
            bad = _sequence(X, H, R, U)
            if bad:
                return f"pure chord: {name} {bad}"
        if C != _third(A, B, U):
            return "pure chord: C is not the completion of A+B"
        if _in_one_coset(C, H):
            return "pure chord: C lies in a single H-coset"
        return None
    if kind is Kind.IMPURE_BEAT:
        if not A:
            return "impure beat: A is empty"
        K, x = closure_coset(A)
        if K != H or x not in H:
            return "impure beat: closure of A is not H"
        if not is_stable(B - H, H):
            return "impure beat: B \\ H is not H-stable"
        if C - H != _third(A, B, U) - H:
            return "impure beat: C \\ H differs from the completion outside H"
        if not (B & H) or not (C & H):
            return "impure beat: B or C misses H"
        return None
    if kind is Kind.IMPURE_CHORD:
        if R is None:
            return "impure chord: missing R"
        for name, X in (("A", A), ("B", B)):
            bad = _sequence(H | X, H, R, U, basic=True)
            if bad:
                return f"impure chord: H | {name} {bad}"
        outside = C - H
        if outside != _third(A, B, U) - H or not outside:
            return "impure chord: C \\ H is not the nonempty completion outside H"
        if not (A & H) or not (B & H) or not (C & H):
            return "impure chord: some member misses H"
        return None
    return f"unknown kind {kind!r}"


def check_tag(t: Trio, tag: StructureTag) -> Optional[str]:
    try:
        norm = apply_similarity(t, tag.similarity)
    except KempermanError as e:
        return f"invalid similarity ({e})"
    return check_definition(norm, tag.kind, tag.H, tag.R)


def continuation_of(norm: Trio, kind: Kind, H: Subgroup) -> Trio:
    """Continuation read off a normalized impure trio (universe ``H``)."""
    A, B, C = norm.members
    first = A if kind is Kind.IMPURE_BEAT else A & H
    return Trio.from_masks(norm.group, first.mask, (B & H).mask, (C & H).mask, H.mask)


def verify_certificate(cert: Certificate) -> Verdict:
    steps = cert.steps
    if not steps:
        return Verdict(False, "empty certificate")
    G = steps[0].trio.group
    for i, s in enumerate(steps):
        if s.trio.group != G or s.tag.H.group != G:
            return Verdict(False, "steps live in different groups", i)
        if not G.is_subgroup_mask(s.universe.mask):
            return Verdict(False, "universe is not a subgroup", i)
    for i in range(len(steps) - 1):
        if not steps[i + 1].universe < steps[i].universe:
            return Verdict(False, "chain not strictly descending", i)
    if not steps[-1].tag.kind.is_pure:
        return Verdict(False, "final step not pure", len(steps) - 1)
    for i, s in enumerate(steps[:-1]):
        if s.tag.kind.is_pure:
            return Verdict(False, "non-final step is pure", i)

    first = steps[0].trio
    if first.is_trivial:
        return Verdict(False, "first trio is trivial", 0)
    if trio_deficiency(first) <= 0:
        return Verdict(False, "first trio is not critical", 0)
    if not is_maximal(first):
        return Verdict(False, "first trio is not maximal", 0)

    for i, s in enumerate(steps):
        t = s.trio
        if sumset(sumset(t.A, t.B), t.C).mask & 1:
            return Verdict(False, "not a trio (0 in A+B+C)", i)
        if (t.A.mask | t.B.mask | t.C.mask) & ~t.universe.mask:
            return Verdict(False, "members leave the universe", i)
        bad = check_tag(t, s.tag)
        if bad:
            return Verdict(False, bad, i)
        if i + 1 < len(steps):
            nxt = steps[i + 1].trio
            if s.tag.H != nxt.universe:
                return Verdict(False, "next universe is not the tag subgroup", i)
            cont = continuation_of(apply_similarity(t, s.tag.similarity), s.tag.kind, s.tag.H)
            if cont.masks != nxt.masks:
                return Verdict(False, "continuation mismatch", i)
            if trio_deficiency(nxt) != trio_deficiency(t):
                return Verdict(False, "deficiency not preserved", i)
    return Verdict(True)
