"""Finite bi-Heyting algebras: construction, duality, morphisms, free
algebras, rule checking, and a verification battery.
"""

from ._kernels import IMPLEMENTATION as kernel_implementation
from .algebras import (
    BiHeytingAlgebra,
    chain_algebra,
    from_lattice_order,
    is_boolean,
    is_chain,
    product,
    residuation_violation,
    subset_algebra,
)
from .battery import (
    BatteryConfig,
    VerificationReport,
    poset_family,
    products_with_two,
    run_battery,
)
from .budgets import default_node_budget
from .duality import dual_poset, join_irreducibles, representation_iso, upset_algebra
from .errors import (
    BiheytError,
    BudgetExceededError,
    DegenerateAlgebraError,
    InvalidCongruenceError,
    InvalidPosetError,
    NotDistributiveError,
    NotLatticeError,
    ResiduationFailureError,
    RuleSyntaxError,
)
from .free import FreeAlgebraResult, free_algebra
from .morphisms import (
    Congruence,
    Morphism,
    congruence_generated,
    embeddings,
    embeds_in_power,
    generated_subalgebra,
    homomorphisms,
    is_isomorphic,
    is_subdirectly_irreducible,
    quotient,
    subalgebras,
)
from .posets import (
    Poset,
    disjoint_union,
    enumerate_posets,
    hasse_edges,
    poset_isomorphic,
    to_dot,
    up_closure,
    down_closure,
    upsets,
    validate_poset,
)
from .rules import (
    AdmissibilityEvidence,
    Bin,
    Const,
    Equation,
    Rule,
    RuleCheck,
    Var,
    admissible_up_to,
    dense_codense_rule,
    eval_term,
    format_rule,
    format_term,
    load_rule,
    parse_equation,
    parse_rule,
    parse_term,
    pos_existential_holds,
    premise_unifier,
    rule_holds,
    rule_to_json,
    valid_in_all,
    variety_counterexample,
)

__version__ = "0.1.0"
