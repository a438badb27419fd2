"""Structure tags and certificates (plain data shared by classifier and verifier)."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .groups import Group, Subgroup
from .trio import Similarity, Trio


class Kind(enum.Enum):
    PURE_BEAT = "pure-beat"
    PURE_CHORD = "pure-chord"
    IMPURE_BEAT = "impure-beat"
    IMPURE_CHORD = "impure-chord"

    @property
    def is_pure(self) -> bool:
        return self in (Kind.PURE_BEAT, Kind.PURE_CHORD)

    @property
    def is_chord(self) -> bool:
        return self in (Kind.PURE_CHORD, Kind.IMPURE_CHORD)

    @property
    def rank(self) -> int:
        return SEARCH_ORDER.index(self)


SEARCH_ORDER = (Kind.PURE_BEAT, Kind.PURE_CHORD, Kind.IMPURE_BEAT, Kind.IMPURE_CHORD)


@dataclass(frozen=True)
class StructureTag:
    """Witness that a trio is a beat or chord relative to ``H``.

    ``similarity`` maps the tagged trio onto the normalized trio satisfying the
    definition verbatim; ``R`` (chords only) is the least element of the
    generating coset.
    """

    kind: Kind
    H: Subgroup
    R: Optional[int]
    similarity: Similarity

    @property
    def sort_key(self):
        return (self.kind.rank, self.H.order, self.H.mask, -1 if self.R is None else self.R, self.similarity.rank)


@dataclass(frozen=True)
class CertificateStep:
    trio: Trio
    tag: StructureTag

    @property
    def universe(self) -> Subgroup:
        return self.trio.universe


@dataclass(frozen=True)
class Certificate:
    """Chain of trios in descending subgroups, each impure step continuing into the next."""

    steps: tuple[CertificateStep, ...]

    @property
    def group(self) -> Group:
        return self.steps[0].trio.group

    def __len__(self):
        return len(self.steps)

    @property
    def kinds(self) -> tuple[Kind, ...]:
        return tuple(s.tag.kind for s in self.steps)
