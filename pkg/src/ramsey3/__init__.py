"""Classification of 3-uniform hypergraphs by the growth of their multicolor
Ramsey numbers, with the lower-bound colorings and small exact oracles."""

from .analysis import (
    collapse,
    collapsible_sets,
    decompose,
    exact_transversal,
    forward_colorable,
    is_tripartite,
)
from .bounds import arrows, ramsey_exact, tower, upper_bound_value, verify_lower_bound
from .classifier import (
    Certificate,
    Classifier,
    Verdict,
    check_certificate,
    classify,
    l1_member,
    min_level,
)
from .colorings import (
    audit_coloring,
    bit,
    delta,
    find_mono_copy,
    phi_oracle,
    phi_q,
    product_oracle,
    rainbow_coloring,
    random_tripartite_coloring,
)
from .constructions import generate, random_g3
from .core import (
    BudgetExceeded,
    CapExceeded,
    Hypergraph3,
    HypergraphError,
    canonical_key,
    find_embedding,
    induced,
    parse_hypergraph,
)

__all__ = [
    "BudgetExceeded",
    "CapExceeded",
    "Certificate",
    "Classifier",
    "Hypergraph3",
    "HypergraphError",
    "Verdict",
    "arrows",
    "audit_coloring",
    "bit",
    "canonical_key",
    "check_certificate",
    "classify",
    "collapse",
    "collapsible_sets",
    "decompose",
    "delta",
    "exact_transversal",
    "find_embedding",
    "find_mono_copy",
    "forward_colorable",
    "generate",
    "induced",
    "is_tripartite",
    "l1_member",
    "min_level",
    "parse_hypergraph",
    "phi_oracle",
    "phi_q",
    "product_oracle",
    "rainbow_coloring",
    "ramsey_exact",
    "random_g3",
    "random_tripartite_coloring",
    "tower",
    "upper_bound_value",
    "verify_lower_bound",
]
