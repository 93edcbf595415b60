"""Collapsible pushdown stacks: the stack algebra, alternating stack
automata with linear-time membership and checkable run certificates,
bounded emptiness search, corridor tilings, and the tiling-to-automaton
reduction, with text formats and a command-line front end."""

from .errors import (
    DimensionMismatch,
    MalformedCertificate,
    MalformedWitness,
    NotAccepted,
    OrderMismatch,
    ParseError,
    ResourceLimitExceeded,
    UndefinedOperation,
)
from .stacks import (
    NULL_LINK,
    Atom,
    Link,
    Operation,
    Stack,
    apply_op,
    atom_count,
    bottom,
    collapse,
    compose,
    cpush,
    decompose,
    empty_stack,
    linearize,
    link_destination,
    pop,
    push,
    rewrite,
    substacks,
    top,
    validate_stack,
)
from .automata import (
    CharTransition,
    RunCertificate,
    StackAutomaton,
    Transition,
    check_run,
    extract_run,
    member,
    membership_table,
    validate_automaton,
)
from .cpds import (
    AlternatingRule,
    Configuration,
    Cpds,
    OrdinaryRule,
    bounded_reach,
    successors,
)
from .emptiness import (
    NO_WITNESS_WITHIN_BOUNDS,
    EnumerationBounds,
    Witness,
    enumerate_stacks,
    is_empty_bounded,
    search_shaped,
)
from .tiling import TilingProblem, check_solution, side_length, solve_bruteforce
from .reduction import (
    ONE,
    SPACER,
    ZERO,
    ReductionOutput,
    build_automaton,
    decode_witness,
    encode_witness,
)
from .textio import (
    format_automaton,
    format_configuration,
    format_cpds,
    format_run,
    format_solution,
    format_stack,
    format_tiling,
    parse_automaton,
    parse_configuration,
    parse_cpds,
    parse_operation,
    parse_run,
    parse_solution,
    parse_stack,
    parse_tiling,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "UndefinedOperation",
    "OrderMismatch",
    "MalformedCertificate",
    "NotAccepted",
    "ResourceLimitExceeded",
    "DimensionMismatch",
    "MalformedWitness",
    "ParseError",
    # stacks
    "Link",
    "NULL_LINK",
    "Atom",
    "Stack",
    "empty_stack",
    "top",
    "bottom",
    "compose",
    "decompose",
    "pop",
    "push",
    "collapse",
    "cpush",
    "rewrite",
    "Operation",
    "apply_op",
    "atom_count",
    "linearize",
    "substacks",
    "link_destination",
    "validate_stack",
    # automata
    "CharTransition",
    "Transition",
    "StackAutomaton",
    "validate_automaton",
    "RunCertificate",
    "membership_table",
    "member",
    "extract_run",
    "check_run",
    # pushdown systems
    "OrdinaryRule",
    "AlternatingRule",
    "Configuration",
    "Cpds",
    "successors",
    "bounded_reach",
    # emptiness
    "EnumerationBounds",
    "Witness",
    "NO_WITNESS_WITHIN_BOUNDS",
    "enumerate_stacks",
    "is_empty_bounded",
    "search_shaped",
    # tiling
    "TilingProblem",
    "side_length",
    "check_solution",
    "solve_bruteforce",
    # reduction
    "SPACER",
    "ZERO",
    "ONE",
    "ReductionOutput",
    "build_automaton",
    "encode_witness",
    "decode_witness",
    # text formats
    "parse_stack",
    "format_stack",
    "parse_automaton",
    "format_automaton",
    "parse_tiling",
    "format_tiling",
    "parse_solution",
    "format_solution",
    "parse_run",
    "format_run",
    "parse_cpds",
    "format_cpds",
    "parse_configuration",
    "format_configuration",
    "parse_operation",
]
