"""Critical pairs and trios in finite abelian groups.

Sets are bitsets over a fixed element numbering of ``Z_{n1} x ... x Z_{nk}``;
the library classifies maximal critical trios into beats and chords, emits
independently checkable certificates and brute-forces the surrounding theorems
on small groups.
"""
from ._version import __version__
from .certify import batch_verify, parse, render
from .classify import admitted_kinds, continuation, decompose, match_structures
from .errors import *  # noqa: F401,F403
from .groups import (
    Group,
    GroupSet,
    QuotientMap,
    Subgroup,
    build_group,
    enumerate_subgroups,
    parse_group_spec,
    quotient,
)
from .oracle import (
    AtlasRow,
    TheoremReport,
    build_atlas,
    check_theorem,
    enumerate_maximal_critical_trios,
)
from .sets import (
    closure_coset,
    deficiency_pair,
    deficiency_set,
    format_set,
    is_critical_pair,
    is_sidon,
    is_stable,
    kneser_gap,
    parse_set,
    quasistability,
    recognize_sequences,
    sequence_profile,
    stabilizer,
    sumset,
)
from .structures import Certificate, CertificateStep, Kind, StructureTag
from .trio import (
    Similarity,
    Trio,
    apply_similarity,
    canonical_form,
    is_maximal,
    make_trio,
    maximal_supertrios,
    parse_trio,
    purify,
    saturate,
    trio_deficiency,
)
from .verify import Verdict, verify_certificate
