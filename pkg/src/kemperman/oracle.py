"""Brute-force enumeration and theorem checking over small abelian groups."""
from __future__ import annotations

import json
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

import numpy as np

from .classify import decompose, match_structures
from .errors import BoundExceeded, ContractError, KempermanError, NoStructureFound
from .groups import Group, GroupSet, Subgroup, build_group, iter_bits, quotient
from .kernels import U64, kernel, popcount
from .sets import deficiency_set, recognize_sequences, sequence_profile
from .structures import SEARCH_ORDER, Kind
from .trio import Trio, canonical_form, purify, trio_deficiency
from .verify import verify_certificate

DEFAULT_EXHAUSTIVE = 12

# Abelian groups up to order 24 in invariant-factor form (partitions of prime exponents).
ABELIAN_GROUPS = {
    1: ("Z1",),
    2: ("Z2",),
    3: ("Z3",),
    4: ("Z4", "Z2xZ2"),
    5: ("Z5",),
    6: ("Z6",),
    7: ("Z7",),
    8: ("Z8", "Z2xZ4", "Z2xZ2xZ2"),
    9: ("Z9", "Z3xZ3"),
    10: ("Z10",),
    11: ("Z11",),
    12: ("Z12", "Z2xZ6"),
    13: ("Z13",),
    14: ("Z14",),
    15: ("Z15",),
    16: ("Z16", "Z2xZ8", "Z4xZ4", "Z2xZ2xZ4", "Z2xZ2xZ2xZ2"),
    17: ("Z17",),
    18: ("Z18", "Z3xZ6"),
    19: ("Z19",),
    20: ("Z20", "Z2xZ10"),
    21: ("Z21",),
    22: ("Z22",),
    23: ("Z23",),
    24: ("Z24", "Z2xZ12", "Z2xZ2xZ6"),
}
MAX_CLASSIFIED = max(ABELIAN_GROUPS)

THEOREMS = (
    "cauchy-davenport",
    "kneser",
    "kneser-v2",
    "vosper",
    "kemperman",
    "mann",
    "purification",
    "pure-pair-prop",
    "maximal-trio-prop",
    "beat-stability",
    "chord-stability",
    "sidon-claim",
    "deficiency-one-claim",
)


def exhaustive_bound() -> int:
    return int(os.environ.get("KK_MAX_EXHAUSTIVE", DEFAULT_EXHAUSTIVE))


def abelian_groups(max_order: int, min_order: int = 2) -> list[Group]:
    if max_order > MAX_CLASSIFIED:
        raise BoundExceeded(f"abelian group table stops at order {MAX_CLASSIFIED}")
    return [build_group(s) for n in range(min_order, max_order + 1) for s in ABELIAN_GROUPS.get(n, ())]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _check_bound(group: Group, bound: Optional[int]) -> None:
    limit = exhaustive_bound() if bound is None else bound
    if group.order > limit:
        raise BoundExceeded(
            f"{group.spec} has order {group.order} > exhaustive bound {limit}; "
            "raise KK_MAX_EXHAUSTIVE or use sampling"
        )


# -- enumeration ---------------------------------------------------------------------


def _trio_batches(group: Group, anchored: bool, a_range=None) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(A, B array, C array)`` for every maximal critical nontrivial trio.

    ``anchored`` keeps only trios with ``0`` in both ``A`` and ``B`` (every
    similarity orbit has such members).
    """
    K = kernel(group)
    n = group.order
    full = K.full
    cards = K.all_popcounts
    lo, hi = a_range or (1, 1 << n)
    for a in range(lo, hi):
        if anchored and not a & 1:
            continue
        S = K.sums_over_all(a)
        C = full & ~K.neg(S)
        ok = (a.bit_count() + cards + popcount(C) - n > 0) & (C != 0)
        ok[0] = False
        if anchored:
            ok[::2] = False
        idx = np.nonzero(ok)[0]
        if not len(idx):
            continue
        B = idx.astype(U64)
        C = C[idx]
        keep = ((full & ~K.neg(K.sumset_scalar(a, C))) == B) & ((full & ~K.neg(K.sumset(B, C))) == U64(a))
        if keep.any():
            yield a, B[keep], C[keep]


def _iter_trio_masks(group: Group, anchored: bool = False, a_range=None) -> Iterator[tuple[int, int, int]]:
    for a, B, C in _trio_batches(group, anchored, a_range):
        for b, c in zip(B.tolist(), C.tolist()):
            yield a, b, c


def enumerate_maximal_critical_trios(group: Group, dedup: bool = True, bound: Optional[int] = None) -> Iterator[Trio]:
    """Every nontrivial maximal critical trio of ``group``.

    With ``dedup`` one canonical representative per similarity orbit is
    produced (sorted by canonical bitsets); otherwise every trio, ordered by
    ``(A, B)`` bitsets.
    """
    _check_bound(group, bound)
    if not dedup:
        for m in _iter_trio_masks(group):
            yield Trio.from_masks(group, *m)
        return
    yield from orbit_representatives(group, bound)


@lru_cache(maxsize=64)
def _orbit_keys(group: Group) -> tuple[tuple[int, int, int], ...]:
    keys = set()
    for m in _iter_trio_masks(group, anchored=True):
        keys.add(canonical_form(Trio.from_masks(group, *m))[0].masks)
    return tuple(sorted(keys))


def orbit_representatives(group: Group, bound: Optional[int] = None) -> list[Trio]:
    _check_bound(group, bound)
    return [Trio.from_masks(group, *k) for k in _orbit_keys(group)]


def brute_force_maximal_critical_trios(group: Group) -> set[tuple[int, int, int]]:
    """Second enumerator: scan every triple of subsets directly (tiny groups only)."""
    if group.order > 6:
        raise BoundExceeded("direct triple scan is limited to order 6")
    n = group.order
    out = set()
    for a in range(1, 1 << n):
        for b in range(1, 1 << n):
            ab = group.sumset_mask(a, b)
            for c in range(1, 1 << n):
                if group.sumset_mask(ab, c) & 1:
                    continue
                if a.bit_count() + b.bit_count() + c.bit_count() <= n:
                    continue
                grown = False
                for x in range(n):
                    for i, m in enumerate((a, b, c)):
                        if m >> x & 1:
                            continue
                        trial = [a, b, c]
                        trial[i] = m | 1 << x
                        if not group.sumset_mask(group.sumset_mask(trial[0], trial[1]), trial[2]) & 1:
                            grown = True
                            break
                    if grown:
                        break
                if not grown:
                    out.add((a, b, c))
    return out


def sample_maximal_critical_trios(group: Group, trials: int, seed: int = 0) -> list[Trio]:
    """Saturate ``make_trio(A, B)`` for random critical pairs (any group order).

    Each set is drawn with a random element density.
    """
    from .trio import make_trio, saturate

    rng = random.Random(f"{seed}:{group.spec}")
    out = {}
    n = group.order
    def draw() -> int:
        # uniform subsets are almost never critical; vary the density instead
        p = rng.random()
        return sum(1 << x for x in range(n) if rng.random() < p) or 1 << rng.randrange(n)

    for _ in range(trials):
        a, b = draw(), draw()
        t = make_trio(GroupSet(group, a), GroupSet(group, b))
        if t.is_trivial or trio_deficiency(t) <= 0:
            continue
        s = saturate(t)
        out.setdefault(s.masks, s)
    return [out[k] for k in sorted(out)]


# -- reports -------------------------------------------------------------------------


@dataclass
class TheoremReport:
    theorem: str
    group: str
    instances: int = 0
    violations: list = field(default_factory=list)
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def records(self, timing: bool = False) -> list[dict]:
        out = []
        for v in self.violations:
            rec = {"type": "violation", "theorem": self.theorem, "group": self.group}
            rec.update(v)
            rec["repro"] = f"kk check -g {self.group} {self.theorem}"
            out.append(rec)
        summary = {
            "type": "summary",
            "theorem": self.theorem,
            "group": self.group,
            "instances": self.instances,
            "violations": len(self.violations),
        }
        summary.update(self.extra)
        if timing:
            summary["wall_time"] = round(self.wall_time, 3)
        out.append(summary)
        return out

    def render(self, timing: bool = False) -> str:
        """Line-delimited JSON; byte-identical across runs unless ``timing``."""
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records(timing))


def _fmt(mask: int) -> str:
    return "{" + ",".join(str(x) for x in iter_bits(mask)) + "}"


def _trio_str(a, b, c) -> str:
    return ";".join(_fmt(int(m)) for m in (a, b, c))


def _map(fn, jobs, workers: int):
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, jobs))
    return [fn(j) for j in jobs]


def _a_ranges(group: Group, parts: int):
    total = 1 << group.order
    step = max(1, total // max(1, parts))
    return [(lo, min(total, lo + step)) for lo in range(1, total, step)]


# -- individual checks ---------------------------------------------------------------


def _cauchy_davenport(G: Group, rep: TheoremReport, **_):
    if len(G.factors) != 1 or not _is_prime(G.order):
        raise ContractError("cauchy-davenport applies to cyclic groups of prime order only")
    p = G.order
    K = kernel(G)
    cards = K.all_popcounts[1:]
    for a in range(1, 1 << p):
        S = popcount(K.sums_over_all(a)[1:])
        bound = np.minimum(p, a.bit_count() + cards - 1)
        bad = np.nonzero(S < bound)[0]
        rep.instances += len(S)
        for j in bad[:20]:
            rep.violations.append({"A": _fmt(a), "B": _fmt(j + 1), "sumset_size": int(S[j])})


def _kneser_rows(K, a: int, B: np.ndarray, S: np.ndarray):
    H = K.stabilizer(S)
    lhs = popcount(S)
    rhs = popcount(K.sumset_scalar(a, H)) + popcount(K.sumset(B, H)) - popcount(H)
    return lhs - rhs


def _kneser(G: Group, rep: TheoremReport, *, seed=0, trials=None, exhaustive_max=10, **_):
    K = kernel(G)
    n = G.order
    if n <= exhaustive_max and trials is None:
        rep.extra["mode"] = "exhaustive"
        B = K.all_masks[1:]
        for a in range(1, 1 << n):
            S = K.sums_over_all(a)[1:]
            gap = _kneser_rows(K, a, B, S)
            rep.instances += len(gap)
            for j in np.nonzero(gap < 0)[0][:20]:
                rep.violations.append({"A": _fmt(a), "B": _fmt(int(B[j])), "gap": int(gap[j])})
        return
    if n > 63:
        raise BoundExceeded("sampling supports orders up to 63")
    trials = 10 ** 5 if trials is None else trials
    rep.extra["mode"] = "sampled"
    rep.extra["seed"] = seed
    rng = np.random.default_rng([seed, *G.factors])
    done = 0
    while done < trials:
        m = min(20000, trials - done)
        A = rng.integers(1, 1 << n, size=m, dtype=np.uint64)
        B = rng.integers(1, 1 << n, size=m, dtype=np.uint64)
        S = K.sumset(A, B)
        H = K.stabilizer(S)
        gap = popcount(S) - (popcount(K.sumset(A, H)) + popcount(K.sumset(B, H)) - popcount(H))
        for j in np.nonzero(gap < 0)[0][:20]:
            rep.violations.append({"A": _fmt(int(A[j])), "B": _fmt(int(B[j])), "gap": int(gap[j])})
        done += m
    rep.instances = done


def _kneser_v2(G: Group, rep: TheoremReport, *, bound=None, **_):
    _check_bound(G, bound)
    K = kernel(G)
    n = G.order
    for a, B, C in _trio_batches(G, anchored=False):
        sa = U64(G.stabilizer_mask(a))
        sb, sc = K.stabilizer(B), K.stabilizer(C)
        d = a.bit_count() + popcount(B) + popcount(C) - n
        bad = ~((sb == sa) & (sc == sa) & (d == int(sa).bit_count()))
        rep.instances += len(B)
        for j in np.nonzero(bad)[0][:20]:
            rep.violations.append({"trio": _trio_str(a, B[j], C[j]), "deficiency": int(d[j])})


@lru_cache(maxsize=None)
def _ap_table(G: Group) -> np.ndarray:
    """``table[X]`` = bitset of differences ``d`` making ``X`` an arithmetic progression."""
    out = np.zeros(1 << G.order, dtype=U64)
    for x in range(1, 1 << G.order):
        bits = 0
        for H, r, prof in recognize_sequences(GroupSet(G, x)):
            if H.mask == 1 and prof.is_sequence:
                bits |= 1 << r
        out[x] = bits
    return out


def _vosper(G: Group, rep: TheoremReport, **_):
    if len(G.factors) != 1 or not _is_prime(G.order):
        raise ContractError("vosper applies to cyclic groups of prime order only")
    p = G.order
    K = kernel(G)
    ap = _ap_table(G)
    cards = K.all_popcounts
    full = K.full
    for a in range(1, 1 << p):
        S = K.sums_over_all(a)
        Cmax = full & ~K.neg(S)
        csize = popcount(Cmax)
        lo = np.maximum(1, p - a.bit_count() - cards + 1)
        has = (csize >= lo)
        has[0] = False
        idx = np.nonzero(has)[0]
        if not len(idx):
            continue
        single = idx[csize[idx] == lo[idx]]
        # trios with C = Cmax exactly (one per pair)
        Bs, Cs = single.astype(U64), Cmax[single]
        ok = (np.minimum(np.minimum(a.bit_count(), cards[single]), popcount(Cs)) == 1) | (
            (ap[a] & ap[single] & ap[Cs.astype(np.int64)]) != 0
        )
        rep.instances += len(single)
        for j in np.nonzero(~ok)[0][:20]:
            rep.violations.append({"trio": _trio_str(a, Bs[j], Cs[j])})
        # pairs leaving room for several third sets (none if Cauchy-Davenport holds)
        for j in idx[csize[idx] > lo[idx]]:
            cm = int(Cmax[j])
            elems = list(iter_bits(cm))
            for k in range(int(lo[j]), len(elems) + 1):
                for combo in combinations(elems, k):
                    c = sum(1 << e for e in combo)
                    rep.instances += 1
                    if min(a.bit_count(), int(j).bit_count(), k) == 1 or int(ap[a]) & int(ap[j]) & int(ap[c]):
                        continue
                    rep.violations.append({"trio": _trio_str(a, j, c)})


def _kemperman_job(job):
    spec, masks = job
    G = build_group(spec)
    violations, chains = [], Counter()
    for m in masks:
        t = Trio.from_masks(G, *m)
        try:
            cert = decompose(t)
        except NoStructureFound:
            violations.append({"trio": str(t), "error": "NoStructureFound"})
            continue
        verdict = verify_certificate(cert)
        if not verdict.ok:
            violations.append({"trio": str(t), "error": str(verdict)})
            continue
        chains["+".join(k.value for k in cert.kinds)] += 1
    return len(masks), violations, chains


def _kemperman(G: Group, rep: TheoremReport, *, dedup=False, bound=None, workers=1, **_):
    _check_bound(G, bound)
    if dedup:
        masks = [k for k in _orbit_keys(G)]
    else:
        masks = list(_iter_trio_masks(G))
    chunk = max(1, len(masks) // max(1, 4 * (workers or 1)))
    jobs = [(G.spec, masks[i:i + chunk]) for i in range(0, len(masks), chunk)]
    chains = Counter()
    for count, viol, ch in _map(_kemperman_job, jobs, workers):
        rep.instances += count
        rep.violations.extend(viol)
        chains.update(ch)
    rep.extra["scope"] = "orbits" if dedup else "all"
    rep.extra["chains"] = dict(sorted(chains.items()))


def _mann(G: Group, rep: TheoremReport, *, bound=8, **_):
    _check_bound(G, bound)
    K = kernel(G)
    cards = K.all_popcounts
    full = K.full
    for a in range(1, G.full):
        S = K.sums_over_all(a)
        valid = S != full
        valid[0] = False
        brute = int((a.bit_count() + cards - popcount(S))[valid].max())
        d, H = deficiency_set(GroupSet(G, a))
        rep.instances += 1
        if d != brute:
            rep.violations.append({"A": _fmt(a), "subgroup_max": d, "brute_max": brute, "H": _fmt(H.mask)})


def random_purification_instance(G: Group, rng: random.Random):
    """Random ``(t, H, r)`` meeting the purification preconditions."""
    n = G.order
    subs = [h for h in G.subgroup_masks if h != 1]
    while True:
        h = rng.choice(subs)
        q = quotient(G, Subgroup(G, h))
        k = q.order
        chosen = [c for c in range(k) if rng.random() < 0.5] or [rng.randrange(k)]
        sat = 0
        for c in chosen:
            sat |= q.cosets[c]
        elems = list(iter_bits(sat))
        drop = rng.randrange(0, min(h.bit_count(), len(elems)))
        a = sat
        for x in rng.sample(elems, drop):
            a &= ~(1 << x)
        dens = rng.random()
        b = sum(1 << x for x in range(n) if rng.random() < dens)
        if not a or not b:
            continue
        c = G.full & ~G.neg_mask(G.sumset_mask(a, b))
        d = a.bit_count() + b.bit_count() + c.bit_count() - n
        if d <= 0 or not c:
            continue
        celems = list(iter_bits(c))
        for x in rng.sample(celems, rng.randrange(0, min(d, len(celems)))):
            c &= ~(1 << x)
        split = [cid for cid in range(k) if 0 != b & q.cosets[cid] != q.cosets[cid]]
        if not split:
            continue
        cid = rng.choice(split)
        r = rng.choice(list(iter_bits(q.cosets[cid])))
        return Trio.from_masks(G, a, b, c), Subgroup(G, h), r


def _purification(G: Group, rep: TheoremReport, *, seed=0, trials=None, **_):
    trials = 1000 if trials is None else trials
    rng = random.Random(f"purification:{seed}:{G.spec}")
    rep.extra["seed"] = seed
    for _ in range(trials):
        t, H, r = random_purification_instance(G, rng)
        rep.instances += 1
        try:
            out = purify(t, H, r)
            Trio(out.A, out.B, out.C)
        except KempermanError as e:
            rep.violations.append({"trio": str(t), "H": _fmt(H.mask), "R": r, "error": str(e)})
            continue
        if trio_deficiency(out) < trio_deficiency(t):
            rep.violations.append({"trio": str(t), "H": _fmt(H.mask), "R": r, "result": str(out)})


def _pure_pair_prop(G: Group, rep: TheoremReport, *, bound=8, **_):
    """Nontrivial pairs: critical iff within budget of a pure critical superpair."""
    _check_bound(G, bound)
    K = kernel(G)
    n = G.order
    full = K.full
    B = K.all_masks
    cards = K.all_popcounts
    stabs = K.stabilizer(B)
    # (1) => (2) via A* = A + H, B* = B + H
    for a in range(1, 1 << n):
        S = K.sums_over_all(a)
        crit = (a.bit_count() + cards - popcount(S) > 0) & (S != full)
        crit[0] = False
        idx = np.nonzero(crit)[0]
        if not len(idx):
            continue
        H = stabs[S[idx].astype(np.int64)]
        As = K.sumset_scalar(a, H)
        Bs = K.sumset(B[idx], H)
        Ss = K.sumset(As, Bs)
        pure = (K.stabilizer(As) == H) & (stabs[Bs.astype(np.int64)] == H) & (stabs[Ss.astype(np.int64)] == H)
        critical = popcount(As) + popcount(Bs) - popcount(Ss) > 0
        budget = (popcount(As) - a.bit_count()) + (popcount(Bs) - cards[idx]) < popcount(H)
        ok = pure & critical & budget
        rep.instances += len(idx)
        for j in np.nonzero(~ok)[0][:20]:
            rep.violations.append({"A": _fmt(a), "B": _fmt(int(idx[j])), "direction": "critical => superpair"})
    # (2) => (1): every nontrivial subpair within budget of a pure critical pair is critical
    for a in range(1, 1 << n):
        S = K.sums_over_all(a)
        sa = G.stabilizer_mask(a)
        ok = (stabs == U64(sa)) & (stabs[S.astype(np.int64)] == U64(sa)) & (a.bit_count() + cards - popcount(S) > 0)
        ok[0] = False
        budget = sa.bit_count() - 1
        for bstar in np.nonzero(ok)[0].tolist():
            pool = [(0, x) for x in iter_bits(a)] + [(1, x) for x in iter_bits(bstar)]
            for k in range(1, budget + 1):
                for drop in combinations(pool, k):
                    aa, bb = a, bstar
                    for side, x in drop:
                        if side:
                            bb &= ~(1 << x)
                        else:
                            aa &= ~(1 << x)
                    if not aa or not bb:
                        continue
                    s = G.sumset_mask(aa, bb)
                    if s == G.full:
                        continue
                    rep.instances += 1
                    if aa.bit_count() + bb.bit_count() - s.bit_count() <= 0:
                        rep.violations.append({"A": _fmt(aa), "B": _fmt(bb), "superpair": _trio_str(a, bstar, 0)[:-3],
                                               "direction": "superpair => critical"})


def _maximal_trio_prop(G: Group, rep: TheoremReport, *, bound=8, **_):
    _check_bound(G, bound)
    K = kernel(G)
    n = G.order
    full = K.full
    B = K.all_masks
    cards = K.all_popcounts
    stabs = K.stabilizer(B)
    for a in range(1, 1 << n):
        S = K.sums_over_all(a)
        C = full & ~K.neg(S)
        live = C != 0
        live[0] = False
        idx = np.nonzero(live)[0]
        if not len(idx):
            continue
        Bi, Ci, Si = B[idx], C[idx], S[idx]
        sa = U64(G.stabilizer_mask(a))
        d = a.bit_count() + cards[idx] - popcount(Si)
        pure_crit = (stabs[idx] == sa) & (stabs[Si.astype(np.int64)] == sa) & (d > 0)
        maximal = ((full & ~K.neg(K.sumset_scalar(a, Ci))) == Bi) & ((full & ~K.neg(K.sumset(Bi, Ci))) == U64(a))
        max_crit = maximal & (a.bit_count() + cards[idx] + popcount(Ci) - n > 0)
        rep.instances += len(idx)
        for j in np.nonzero(pure_crit != max_crit)[0][:20]:
            rep.violations.append({"trio": _trio_str(a, Bi[j], Ci[j]), "pure_critical": bool(pure_crit[j])})


def _trios_for(G, dedup, bound):
    _check_bound(G, bound)
    if dedup:
        return [Trio.from_masks(G, *k) for k in _orbit_keys(G)]
    return [Trio.from_masks(G, *m) for m in _iter_trio_masks(G)]


def _proper_coset(G: Group, m: int) -> bool:
    x = (m & -m).bit_length() - 1
    return G.generated_mask(G.translate(m, G.neg(x))) != G.full


def _proper_near(G: Group, m: int) -> bool:
    return any(p.is_near and p.is_proper for _, _, p in recognize_sequences(GroupSet(G, m)))


def _beat_stability(G: Group, rep: TheoremReport, *, dedup=True, bound=None, **_):
    hits = 0
    for t in _trios_for(G, dedup, bound):
        rep.instances += 1
        if not any(_proper_coset(G, m) for m in t.masks):
            continue
        hits += 1
        if not match_structures(t, kinds=(Kind.PURE_BEAT, Kind.IMPURE_BEAT), first=True):
            rep.violations.append({"trio": str(t)})
    rep.extra["non_vacuous"] = hits


def _chord_stability(G: Group, rep: TheoremReport, *, dedup=True, bound=None, **_):
    hits = 0
    for t in _trios_for(G, dedup, bound):
        rep.instances += 1
        if any(_proper_coset(G, m) for m in t.masks):
            continue
        if not any(_proper_near(G, m) for m in t.masks):
            continue
        hits += 1
        if not match_structures(t, kinds=(Kind.PURE_CHORD, Kind.IMPURE_CHORD), first=True):
            rep.violations.append({"trio": str(t)})
    rep.extra["non_vacuous"] = hits


def _sidon_claim(G: Group, rep: TheoremReport, *, dedup=False, bound=10, **_):
    from .sets import is_sidon

    hits = 0
    for t in _trios_for(G, dedup, bound):
        rep.instances += 1
        a, b, c = sorted(t.masks, key=lambda m: (m.bit_count(), m))
        if a.bit_count() < 3:
            continue
        if any(_proper_coset(G, m) for m in (a, b, c)) or any(_proper_near(G, m) for m in (a, b, c)):
            continue
        hits += 1
        if is_sidon(GroupSet(G, b)):
            rep.violations.append({"trio": str(t)})
    rep.extra["non_vacuous"] = hits


def _deficiency_one_claim(G: Group, rep: TheoremReport, *, bound=10, **_):
    _check_bound(G, bound)
    K = kernel(G)
    cards = K.all_popcounts
    full = K.full
    middle = [h for h in G.subgroup_masks if h != 1 and h != G.full]
    closure_full = np.array(
        [m != 0 and not _proper_coset(G, m) for m in range(1 << G.order)], dtype=bool
    )
    hits = 0
    for a in range(1, G.full):
        if _proper_coset(G, a) or _proper_near(G, a):
            continue
        if any(a.bit_count() + h.bit_count() - G.sumset_mask(a, h).bit_count() > 0 for h in middle):
            continue
        hits += 1
        S = K.sums_over_all(a)
        d = a.bit_count() + cards - popcount(S)
        crit = (d > 0) & (S != full)
        crit[0] = False
        ok = (d == 1) & ((cards == 1) | closure_full)
        bad = np.nonzero(crit & ~ok)[0]
        rep.instances += int(crit.sum())
        for j in bad[:20]:
            rep.violations.append({"A": _fmt(a), "D": _fmt(int(j)), "deficiency": int(d[j])})
    rep.extra["non_vacuous"] = hits


_CHECKS = {
    "cauchy-davenport": _cauchy_davenport,
    "kneser": _kneser,
    "kneser-v2": _kneser_v2,
    "vosper": _vosper,
    "kemperman": _kemperman,
    "mann": _mann,
    "purification": _purification,
    "pure-pair-prop": _pure_pair_prop,
    "maximal-trio-prop": _maximal_trio_prop,
    "beat-stability": _beat_stability,
    "chord-stability": _chord_stability,
    "sidon-claim": _sidon_claim,
    "deficiency-one-claim": _deficiency_one_claim,
}


def check_theorem(group: Group | str, theorem: str, **options) -> TheoremReport:
    """Exhaustively (or by seeded sampling) check one statement on one group.

    ``options`` are forwarded to the individual checker (``seed``, ``trials``,
    ``dedup``, ``bound``, ``workers``).
    """
    G = build_group(group)
    if theorem not in _CHECKS:
        raise ContractError(f"unknown theorem id {theorem!r}; choose from {', '.join(THEOREMS)}")
    rep = TheoremReport(theorem, G.spec)
    start = time.perf_counter()
    _CHECKS[theorem](G, rep, **options)
    rep.wall_time = time.perf_counter() - start
    return rep


# -- atlas ---------------------------------------------------------------------------


@dataclass
class AtlasRow:
    group: str
    total: int
    first_step: dict
    admits: dict
    examples: dict
    certificates: dict = field(default_factory=dict, repr=False)

    def record(self) -> dict:
        return {
            "group": self.group,
            "orbits": self.total,
            "first_step": self.first_step,
            "admits": self.admits,
            "examples": self.examples,
        }


def atlas_row(G: Group) -> AtlasRow:
    first = {k.value: 0 for k in SEARCH_ORDER}
    admits = {k.value: 0 for k in SEARCH_ORDER}
    examples, certs = {}, {}
    reps = orbit_representatives(G)
    for t in reps:
        cert = decompose(t)
        kind = cert.steps[0].tag.kind.value
        first[kind] += 1
        if kind not in examples:
            examples[kind] = str(t)
            certs[kind] = cert
        for k in {tag.kind.value for tag in match_structures(t)}:
            admits[k] += 1
    return AtlasRow(G.spec, len(reps), first, admits, examples, certs)


def build_atlas(max_order: int) -> list[AtlasRow]:
    """One row per abelian group of order ``2 .. max_order`` (orbit counts per structure kind)."""
    if max_order > exhaustive_bound():
        raise BoundExceeded(f"atlas order {max_order} exceeds exhaustive bound {exhaustive_bound()}")
    return [atlas_row(G) for G in abelian_groups(max_order)]
