"""Classification of finite metric spaces by their Gromov product structures.

A metric on ``n`` points is Delta-generic when each point has a unique
smallest Gromov product; the pair realizing it at every point forms the
structure of the metric.  This package enumerates structures, reduces them
modulo relabeling, decides which ones some metric realizes and keeps the
resulting catalogs.
"""
from .canon import CanonicalForm, InvariantKey, canonical_form, equivalent, invariant_key
from .catalog import (
    Catalog,
    ClassRecord,
    Containment,
    RankAudit,
    VerificationReport,
    classify_all,
    classify_substructures,
    identify,
    load,
    rank_audit,
    save,
    shipped_catalog,
    verify_fixtures,
)
from .core import GromovStructure, Permutation, apply_permutation, make_structure, parse, serialize
from .enumerate import enumerate_allowable, exclusions_of, is_allowable
from .errors import *  # noqa: F401,F403
from .fixtures import Fixture, bundled_fixture, parse_fixture, read_fixture
from .genericity import FeasibilityProblem, GenericityVerdict, build_problem, realize_metric, solve
from .matrixrep import (
    chain_decomposition,
    chain_diagram,
    closed_subsets,
    invariants,
    is_irreducible,
    structure_matrix,
    trace_powers,
)
from .metric import (
    DistanceMatrix,
    GromovTensor,
    gromov_products,
    is_metric,
    parse_metric,
    pendant_free_reduction,
    read_metric,
    structure_of_metric,
    verify_gromov_identities,
    write_metric,
)

__version__ = "0.1.0"
