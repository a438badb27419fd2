"""Beat/chord recognition, continuations and recursive decomposition."""
from __future__ import annotations

from typing import Iterable, Optional

from .errors import ContractError, NoStructureFound, NotCriticalError, NotMaximalError, TrivialTrioError
from .groups import Group, Subgroup, iter_bits, quotient
from .sets import _run, cyclic_quotients
from .structures import SEARCH_ORDER, Certificate, CertificateStep, Kind, StructureTag
from .trio import PERMS, Similarity, Trio, _complete, apply_similarity, is_maximal, trio_deficiency
from .verify import check_tag, continuation_of


def _stable(G: Group, x: int, h: int) -> bool:
    return G.sumset_mask(x, h) == x


def _low(m: int) -> int:
    return (m & -m).bit_length() - 1


def _pure_beats(t: Trio):
    G, u = t.group, t.universe.mask
    m = t.masks
    for perm in PERMS:
        a, b, c = m[perm[0]], m[perm[1]], m[perm[2]]
        h = G.stabilizer_mask(b)
        if h == u or a.bit_count() != h.bit_count():
            continue
        x = G.neg(_low(a))
        if G.translate(a, x) != h:
            continue
        if c == 0 or c != _complete(G, u, a, b):
            continue
        yield StructureTag(Kind.PURE_BEAT, Subgroup(G, h), None, Similarity(perm, (x, 0, G.neg(x))))


def _pure_chords(t: Trio):
    G, u = t.group, t.universe.mask
    m = t.masks
    quots = list(cyclic_quotients(G, u))
    for perm in PERMS:
        a, b, c = m[perm[0]], m[perm[1]], m[perm[2]]
        if c != _complete(G, u, a, b):
            continue
        common = G.stabilizer_mask(a) & G.stabilizer_mask(b)
        for q, gens in quots:
            h = q.kernel.mask
            if h & ~common:
                continue
            if q.image(c).bit_count() < 2:
                continue
            ia, ib = q.image(a), q.image(b)
            for r in gens:
                logs = q.logs(r)
                ra, rb = _run(ia, logs, q.order), _run(ib, logs, q.order)
                if ra and rb and ra[2] >= 2 and rb[2] >= 2:
                    yield StructureTag(Kind.PURE_CHORD, q.kernel, r, Similarity(perm, (0, 0, 0)))


def _quasi_cosets(G, q, x: int):
    """Coset ids ``Q`` meeting ``x`` with ``x \\ Q`` stable."""
    h = q.kernel.mask
    for cid in iter_bits(q.image(x)):
        if _stable(G, x & ~q.cosets[cid], h):
            yield cid


def _impure_beats(t: Trio):
    G, u = t.group, t.universe.mask
    m = t.masks
    for perm in PERMS:
        a, b, c = m[perm[0]], m[perm[1]], m[perm[2]]
        x0 = _low(a)
        h = G.generated_mask(G.translate(a, G.neg(x0)))
        if h == u:
            continue
        q = quotient(G, Subgroup(G, h), t.universe)
        x = G.neg(x0)
        a2 = G.translate(a, x)
        for cid in _quasi_cosets(G, q, b):
            y = G.neg(q.representative(cid))
            z = G.neg(G.add(x, y))
            b2 = G.translate(b, y)
            c2 = G.translate(c, z)
            if not c2 & h:
                continue
            if c2 & ~h != _complete(G, u, a2, b2) & ~h:
                continue
            yield StructureTag(Kind.IMPURE_BEAT, q.kernel, None, Similarity(perm, (x, y, z)))


def _impure_chords(t: Trio):
    G, u = t.group, t.universe.mask
    m = t.masks
    quots = list(cyclic_quotients(G, u))
    for perm in PERMS:
        a, b, c = m[perm[0]], m[perm[1]], m[perm[2]]
        for q, gens in quots:
            h = q.kernel.mask
            if h == 1:
                continue
            for ca in _quasi_cosets(G, q, a):
                x = G.neg(q.representative(ca))
                a2 = G.translate(a, x)
                ia = q.image(a2 | h)
                for cb in _quasi_cosets(G, q, b):
                    y = G.neg(q.representative(cb))
                    z = G.neg(G.add(x, y))
                    b2 = G.translate(b, y)
                    c2 = G.translate(c, z)
                    if not c2 & h:
                        continue
                    outside = c2 & ~h
                    if not outside or outside != _complete(G, u, a2, b2) & ~h:
                        continue
                    ib = q.image(b2 | h)
                    for r in gens:
                        logs = q.logs(r)
                        ra, rb = _run(ia, logs, q.order), _run(ib, logs, q.order)
                        if ra and rb and ra[0] == 0 and rb[0] == 0 and ra[2] >= 2 and rb[2] >= 2:
                            yield StructureTag(Kind.IMPURE_CHORD, q.kernel, r, Similarity(perm, (x, y, z)))


_MATCHERS = {
    Kind.PURE_BEAT: _pure_beats,
    Kind.PURE_CHORD: _pure_chords,
    Kind.IMPURE_BEAT: _impure_beats,
    Kind.IMPURE_CHORD: _impure_chords,
}


def match_structures(t: Trio, kinds: Iterable[Kind] = SEARCH_ORDER, first: bool = False) -> list[StructureTag]:
    """Every beat/chord tag under which ``t`` satisfies a structure definition.

    Tags are deduplicated on ``(kind, H, R)``, keeping the least-ranked
    similarity, and sorted by ``(kind, |H|, H bitset, R, similarity)``.  With
    ``first=True`` the search stops after the first kind (in ``kinds`` order)
    that yields any tag.
    """
    if t.is_trivial:
        raise TrivialTrioError("match_structures needs a nontrivial trio")
    out = []
    for kind in kinds:
        best = {}
        for tag in _MATCHERS[kind](t):
            key = (tag.H.mask, tag.R)
            if key not in best or tag.similarity.rank < best[key].similarity.rank:
                best[key] = tag
        out.extend(best.values())
        if first and best:
            break
    return sorted(out, key=lambda tag: tag.sort_key)


def continuation(t: Trio, tag: StructureTag) -> Trio:
    """The trio inside ``tag.H`` carried by an impure beat or chord."""
    if tag.kind.is_pure:
        raise ContractError(f"{tag.kind.value} has no continuation")
    bad = check_tag(t, tag)
    if bad:
        raise ContractError(f"tag does not fit the trio: {bad}")
    return continuation_of(apply_similarity(t, tag.similarity), tag.kind, tag.H)


def decompose(t: Trio) -> Certificate:
    """Certificate for a nontrivial maximal critical trio.

    Each level takes the first tag in search order (pure beat, pure chord,
    impure beat, impure chord; smallest ``H`` first) and recurses into the
    continuation until a pure structure is reached.
    """
    if t.order <= 1 or t.is_trivial:
        raise TrivialTrioError("decompose needs a nontrivial trio")
    if trio_deficiency(t) <= 0:
        raise NotCriticalError("decompose needs a critical trio")
    if not is_maximal(t):
        raise NotMaximalError("decompose needs a maximal trio")
    steps = []
    cur = t
    while True:
        tags = match_structures(cur, first=True)
        if not tags:
            raise NoStructureFound(cur)
        tag = tags[0]
        steps.append(CertificateStep(cur, tag))
        if tag.kind.is_pure:
            return Certificate(tuple(steps))
        cur = continuation_of(apply_similarity(cur, tag.similarity), tag.kind, tag.H)


def admitted_kinds(t: Trio) -> set[Kind]:
    return {tag.kind for tag in match_structures(t)}
