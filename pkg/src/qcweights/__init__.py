"""Exact combinatorial analyzer for quasi-circular domain weights.

Decides class membership of weight tuples, builds per-window obstruction
sets, detects resonances, enumerates admissible weights, and reproduces the
closed-form gap counts, with every fast path cross-validated against
brute-force semantics.
"""

from qcweights.core import (
    BACKENDS,
    c_exponent,
    check_n3_criteria,
    enumerate_admissible,
    is_in_class,
    is_prime,
    obstruction_set,
    r_value,
    resonances,
    validate_weight,
    zero_set_equivalence_check,
)
from qcweights.counting import (
    CountReport,
    SPartition,
    closed_form_count,
    s_partition,
    table_d,
    table_f,
)
from qcweights.model import (
    ClassFailure,
    MembershipVerdict,
    ObstructionSet,
    ResonanceWitness,
    WeightError,
    WeightTuple,
)
from qcweights.semigroup import (
    AperyTable,
    RepresentabilityTable,
    build_apery,
    build_sieve,
    is_representable,
    is_representable_nonzero,
    obstruction_set_fast,
)

__version__ = "0.1.0"

__all__ = [
    "BACKENDS",
    "AperyTable",
    "ClassFailure",
    "CountReport",
    "MembershipVerdict",
    "ObstructionSet",
    "RepresentabilityTable",
    "ResonanceWitness",
    "SPartition",
    "WeightError",
    "WeightTuple",
    "build_apery",
    "build_sieve",
    "c_exponent",
    "check_n3_criteria",
    "closed_form_count",
    "enumerate_admissible",
    "is_in_class",
    "is_prime",
    "is_representable",
    "is_representable_nonzero",
    "obstruction_set",
    "obstruction_set_fast",
    "r_value",
    "resonances",
    "s_partition",
    "table_d",
    "table_f",
    "validate_weight",
    "zero_set_equivalence_check",
]
