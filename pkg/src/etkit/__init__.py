"""Finite effect algebras from integer test tables.

Build the quotient algebra of an algebraic test space, decide joins and
meets through bound-tuple enumeration, analyze homogeneity and sharp
elements, and search small tables for structural counterexamples.
"""

from ._core import KERNEL_IMPL
from .errors import (
    AntichainViolation,
    AxiomViolation,
    BudgetExceeded,
    CriteriaDisagree,
    EmptyTable,
    EntryTooLarge,
    EtkitError,
    EventBudgetExceeded,
    MalformedTable,
    NegativeEntry,
    NotAlgebraic,
    NotAnEvent,
    NotHomogeneous,
    TableError,
    ZeroColumn,
    ZeroIsotropy,
)
from .joinmeet import (
    BoundTuple,
    LatticeAnswer,
    join,
    join_literal,
    lower_candidate,
    lower_tuples,
    meet,
    meet_literal,
    oracle_join,
    oracle_meet,
    upper_candidate,
    upper_tuples,
)
from .quotient import (
    EffectAlgebra,
    EffectClass,
    build_algebra,
    hasse_covers,
    orthosupplement,
    residual_equal,
    residual_leq,
    to_dot,
    to_json_dict,
    verify_axioms,
)
from .search import (
    Finding,
    SearchConfig,
    canonical_key,
    canonicalize,
    enumerate_tables,
    run_search,
)
from .structure import (
    AtomicTest,
    HomogeneityResult,
    LatticeCheck,
    StructureReport,
    analyze,
    atomic_tests,
    atoms,
    is_homogeneous,
    is_lattice,
    isotropic_index,
    sharp_elements,
    sharpness_by_support,
)
from .testspace import (
    Counterexample,
    Event,
    OutcomeSet,
    TestTable,
    algebraic_counterexample,
    approx,
    approx_via,
    enumerate_events,
    is_algebraic,
    is_local_complement,
    is_orthogonal,
    load_eta,
    read_eta,
    save_eta,
    validate_table,
    write_eta,
)

__version__ = "0.1.0"
