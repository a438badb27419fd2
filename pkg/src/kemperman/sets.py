"""Set arithmetic: sumsets, stabilizers, closures, deficiencies and sequences."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import ContractError, EmptySetError, GroupMismatchError, MalformedSetError, ElementRangeError
from .groups import Group, GroupSet, QuotientMap, Subgroup, as_subgroup, iter_bits, quotient


def _pair(A: GroupSet, B: GroupSet) -> Group:
    if A.group != B.group:
        raise GroupMismatchError(f"sets live in different groups: {A.group} vs {B.group}")
    return A.group


def sumset(A: GroupSet, B: GroupSet) -> GroupSet:
    G = _pair(A, B)
    return GroupSet(G, G.sumset_mask(A.mask, B.mask))


def stabilizer(A: GroupSet) -> Subgroup:
    """``{g : g + A = A}``; the stabilizer of the empty set is the whole group."""
    return Subgroup(A.group, A.group.stabilizer_mask(A.mask))


def is_stable(A: GroupSet, H: GroupSet) -> bool:
    """True iff ``A + H = A``."""
    return A.group.sumset_mask(A.mask, H.mask) == A.mask if A.mask else True


def closure_coset(A: GroupSet) -> tuple[Subgroup, int]:
    """Smallest coset ``x + H`` containing ``A``; returns ``(H, x)`` with ``x = min(A)``."""
    if not A:
        raise EmptySetError("closure of the empty set is undefined")
    G = A.group
    x = (A.mask & -A.mask).bit_length() - 1
    diffs = G.translate(A.mask, G.neg(x))
    return Subgroup(G, G.generated_mask(diffs)), x


def deficiency_pair(A: GroupSet, B: GroupSet) -> int:
    """``|A| + |B| - |A+B|``; the pair is critical iff this is positive."""
    G = _pair(A, B)
    if not A or not B:
        raise EmptySetError("deficiency of a pair needs two nonempty sets")
    return len(A) + len(B) - G.sumset_mask(A.mask, B.mask).bit_count()


def is_critical_pair(A: GroupSet, B: GroupSet) -> bool:
    return deficiency_pair(A, B) > 0


def kneser_gap(A: GroupSet, B: GroupSet) -> int:
    """``|A+B| - (|A+H| + |B+H| - |H|)`` with ``H`` the stabilizer of ``A+B``.

    Kneser's theorem says the result is never negative.
    """
    G = _pair(A, B)
    if not A or not B:
        raise EmptySetError("Kneser's bound needs two nonempty sets")
    S = G.sumset_mask(A.mask, B.mask)
    H = G.stabilizer_mask(S)
    return S.bit_count() - (
        G.sumset_mask(A.mask, H).bit_count() + G.sumset_mask(B.mask, H).bit_count() - H.bit_count()
    )


def deficiency_set(A: GroupSet) -> tuple[int, Subgroup]:
    """Single-set deficiency, maximized over subgroups ``H`` with ``A + H != G``.

    Ties go to the smallest subgroup, then the least bitset.  By Mann's theorem
    the value equals the maximum over all nonempty ``B`` with ``A + B != G``.
    """
    G = A.group
    if not A:
        raise EmptySetError("deficiency of the empty set is undefined")
    if A.mask == G.full:
        raise ContractError("A = G admits no partner B with A + B != G")
    best = None
    for H in G.subgroup_masks:
        S = G.sumset_mask(A.mask, H)
        if S == G.full:
            continue
        d = len(A) + H.bit_count() - S.bit_count()
        if best is None or d > best[0]:
            best = (d, H)
    return best[0], Subgroup(G, best[1])


@dataclass(frozen=True)
class Quasistability:
    """``kind`` is ``"stable"``, ``"quasistable"`` or ``"neither"``.

    ``cosets`` lists the least element of each coset ``R`` for which ``A \\ R``
    is ``H``-stable (every coset when ``A`` itself is stable).
    """

    kind: str
    cosets: tuple[int, ...]

    @property
    def is_quasistable(self) -> bool:
        return self.kind != "neither"


def quasistability(A: GroupSet, H: GroupSet, universe: Optional[GroupSet] = None) -> Quasistability:
    G = _pair(A, H)
    q = quotient(G, H, universe)
    if G.sumset_mask(A.mask, H.mask) == A.mask:
        return Quasistability("stable", tuple(q.representative(c) for c in range(q.order)))
    valid = []
    for cid, coset in enumerate(q.cosets):
        rest = A.mask & ~coset
        if G.sumset_mask(rest, H.mask) == rest:
            valid.append(q.representative(cid))
    return Quasistability("quasistable" if valid else "neither", tuple(valid))


# -- sequences -------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceProfile:
    """How ``A`` sits against the ``R``-progression of ``H``-cosets.

    ``head``, ``tail`` and ``length`` describe the coset run of ``A + H`` (cosets
    are given by their least element) and are ``None``/0 when ``A + H`` is not a
    run.  ``is_nontrivial`` is the plain-sequence notion (length >= 2);
    ``is_nontrivial_near`` is the near/fringed notion ``|A| > |H|``.
    """

    H: Subgroup
    R: int
    head: Optional[int]
    tail: Optional[int]
    length: int
    is_sequence: bool
    is_basic: bool
    is_near: bool
    is_fringed: bool
    is_proper: bool
    is_nontrivial: bool
    is_nontrivial_near: bool

    @property
    def any_kind(self) -> bool:
        return self.is_sequence or self.is_near or self.is_fringed


def _run(ids: int, logs, m: int):
    """Head/tail coset ids and length if the coset ids form one ``R``-run."""
    ts = {logs[c] for c in iter_bits(ids)}
    if not ts:
        return None
    inv = {t: c for c, t in enumerate(logs)}
    if len(ts) == m:
        return 0, inv[m - 1], m
    starts = [t for t in ts if (t - 1) % m not in ts]
    if len(starts) != 1:
        return None
    h = starts[0]
    return inv[h], inv[(h + len(ts) - 1) % m], len(ts)


def _profile(G: Group, q: QuotientMap, A: int, r: int) -> SequenceProfile:
    H = q.kernel.mask
    h = H.bit_count()
    logs = q.logs(r)
    m = q.order
    sat = G.sumset_mask(A, H) if A else 0
    run = _run(q.image(A), logs, m)
    proper = (q.universe & ~A).bit_count() >= 2 * h
    nontriv_near = A.bit_count() > h
    R = q.representative(q.coset_id(r))
    if run is None:
        return SequenceProfile(q.kernel, R, None, None, 0, False, False, False, False, proper, False, nontriv_near)
    head, tail, length = run

    def stable(x):
        return G.sumset_mask(x, H) == x

    is_seq = sat == A
    near = (sat & ~A).bit_count() < h
    if length == m:
        fringed = any(stable(A & ~c) for c in q.cosets)
    else:
        fringed = stable(A & ~q.cosets[head]) or stable(A & ~q.cosets[tail])
    return SequenceProfile(
        H=q.kernel,
        R=R,
        head=q.representative(head),
        tail=q.representative(tail),
        length=length,
        is_sequence=is_seq,
        is_basic=head == 0,
        is_near=near,
        is_fringed=fringed,
        is_proper=proper,
        is_nontrivial=is_seq and length >= 2,
        is_nontrivial_near=nontriv_near,
    )


def sequence_profile(A: GroupSet, H: GroupSet, R: int, universe: Optional[GroupSet] = None) -> SequenceProfile:
    """Profile ``A`` against the cosets ``H, R+H, 2R+H, ...``.

    ``R`` is any representative of a coset generating the cyclic quotient
    ``U/H``; raises :class:`NotGeneratorError` otherwise.
    """
    G = _pair(A, H)
    q = quotient(G, as_subgroup(H), universe)
    if A.mask & ~q.universe:
        raise ContractError("set is not contained in the universe")
    return _profile(G, q, A.mask, G.check(R))


def cyclic_quotients(G: Group, universe: Optional[int] = None):
    """Yield ``(quotient map, generator representatives)`` for proper ``H < U`` with ``U/H`` cyclic."""
    u = G.full if universe is None else universe
    for H in G.subgroup_masks_within(u):
        if H == u:
            continue
        q = quotient(G, Subgroup(G, H), None if universe is None else Subgroup(G, u))
        if q.is_cyclic:
            yield q, q.generator_representatives()


def recognize_sequences(A: GroupSet, universe: Optional[GroupSet] = None) -> list[tuple[Subgroup, int, SequenceProfile]]:
    """Every ``(H, R)`` for which ``A`` is an ``R``-sequence, near or fringed ``R``-sequence.

    Ordered by ``(|H|, H bitset, R)``.
    """
    if not A:
        raise EmptySetError("recognize_sequences needs a nonempty set")
    G = A.group
    out = []
    for q, gens in cyclic_quotients(G, None if universe is None else universe.mask):
        for r in gens:
            p = _profile(G, q, A.mask, r)
            if p.any_kind:
                out.append((q.kernel, r, p))
    return out


def is_sidon(B: GroupSet) -> bool:
    """True iff every nonzero translate of ``B`` meets ``B`` in at most one point."""
    G = B.group
    for g in range(1, G.order):
        if (G.translate(B.mask, g) & B.mask).bit_count() > 1:
            return False
    return True


# -- literal grammar ---------------------------------------------------------------

_SET_RE = re.compile(r"\s*(~?)\s*\{(.*)\}\s*", re.DOTALL)
_TOKEN_RE = re.compile(r"\s*(\((?:[^()]*)\)|[^,()\s]+)\s*(?:,|$)")


def parse_set(text: str, group: Group, universe: Optional[GroupSet] = None) -> GroupSet:
    """Parse ``{0,3,(1,2)}`` or ``~{...}`` into a :class:`GroupSet`.

    Complements are taken relative to ``universe`` when given.
    """
    m = _SET_RE.fullmatch(text)
    if m is None:
        raise MalformedSetError(f"malformed set literal {text!r}")
    neg, body = m.groups()
    mask = 0
    body = body.strip()
    pos = 0
    while pos < len(body):
        t = _TOKEN_RE.match(body, pos)
        if t is None or t.end() == pos:
            raise MalformedSetError(f"malformed set literal {text!r}")
        tok = t.group(1)
        pos = t.end()
        if tok.startswith("("):
            parts = [p.strip() for p in tok[1:-1].split(",")]
            try:
                coords = [int(p) for p in parts]
            except ValueError:
                raise MalformedSetError(f"bad tuple {tok!r} in {text!r}") from None
            if len(coords) != len(group.factors):
                raise MalformedSetError(f"tuple {tok!r} needs {len(group.factors)} coordinates for {group.spec}")
            for c, n in zip(coords, group.factors):
                if not 0 <= c < n:
                    raise ElementRangeError(f"coordinate {c} out of range in {tok!r}")
            x = group.index(coords)
        else:
            try:
                x = int(tok)
            except ValueError:
                raise MalformedSetError(f"bad element {tok!r} in {text!r}") from None
            if not 0 <= x < group.order:
                raise ElementRangeError(f"element {x} out of range for {group.spec}")
        mask |= 1 << x
    if neg:
        u = group.full if universe is None else universe.mask
        mask = u & ~mask
    return GroupSet(group, mask)


def format_set(A: GroupSet) -> str:
    return "{" + ",".join(str(x) for x in A) + "}"
