"""Verification and exhaustive search of k-geodetic digraphs near the Moore bound."""

from .core import (
    Digraph,
    GeodeticViolation,
    SearchParams,
    VerificationReport,
    ball,
    distance_layer,
    excess,
    find_geodetic_violation,
    in_neighbourhood,
    is_diregular,
    is_k_geodetic,
    moore_bound,
    out_neighbourhood,
    outlier_set,
    verify,
)
from .canon import (
    CanonicalForm,
    OrbitPartition,
    are_isomorphic,
    automorphism_orbits,
    canonical_form,
    canonical_relabelling,
)
from .lemmas import (
    CycleCensus,
    LemmaCheck,
    PairClass,
    check_lemma_identical_neighbourhoods,
    check_lemma_pair_exists,
    classify_pair,
    common_out_pairs,
    outlier_multiplicity,
    triangle_census,
)
from .catalog import (
    CatalogEntry,
    DigraphFormatError,
    catalog_a,
    catalog_b,
    read_digraph,
    write_digraph,
)
from .search import (
    PartialDigraph,
    SearchOutcome,
    SearchResult,
    prune,
    run_task,
    search,
    seed_tree,
    split_tasks,
)
from .cayley import CayleyWitness, a4_elements, cayley_digraph, search_cayley_a4

__version__ = "0.1.0"

__all__ = [
    "Digraph",
    "GeodeticViolation",
    "SearchParams",
    "VerificationReport",
    "ball",
    "distance_layer",
    "excess",
    "find_geodetic_violation",
    "in_neighbourhood",
    "is_diregular",
    "is_k_geodetic",
    "moore_bound",
    "out_neighbourhood",
    "outlier_set",
    "verify",
    "CanonicalForm",
    "OrbitPartition",
    "are_isomorphic",
    "automorphism_orbits",
    "canonical_form",
    "canonical_relabelling",
    "CycleCensus",
    "LemmaCheck",
    "PairClass",
    "check_lemma_identical_neighbourhoods",
    "check_lemma_pair_exists",
    "classify_pair",
    "common_out_pairs",
    "outlier_multiplicity",
    "triangle_census",
    "CatalogEntry",
    "DigraphFormatError",
    "catalog_a",
    "catalog_b",
    "read_digraph",
    "write_digraph",
    "PartialDigraph",
    "SearchOutcome",
    "SearchResult",
    "prune",
    "run_task",
    "search",
    "seed_tree",
    "split_tasks",
    "CayleyWitness",
    "a4_elements",
    "cayley_digraph",
    "search_cayley_a4",
    "__version__",
]
