"""Regular dessins d'enfants as finite groups with generating pairs.

Builds the class-two p-group families that carry exactly one regular dessin,
enumerates dessin classes, applies dessin operations, forms parallel products
and universal covers, and checks the published classification tables by
direct computation.
"""

__version__ = "0.1.0"

from .dessin import (  # noqa: E402
    DessinInvariants,
    DessinOperation,
    RegularDessin,
    apply_operation,
    are_isomorphic,
    count_automorphisms,
    edge_permutations,
    enumerate_dessins,
    invariants,
    is_reflexible,
    is_symmetric,
    is_totally_symmetric,
    make_dessin,
    multiplicity,
)
from .groups import FiniteGroup, build_group, validate_group  # noqa: E402
from .specs import parse_spec  # noqa: E402
from .universal import (  # noqa: E402
    is_unique_dessin_group,
    parallel_product,
    sylow_decompose,
    universal_dessin,
)

__all__ = [
    "DessinInvariants",
    "DessinOperation",
    "FiniteGroup",
    "RegularDessin",
    "apply_operation",
    "are_isomorphic",
    "build_group",
    "count_automorphisms",
    "edge_permutations",
    "enumerate_dessins",
    "invariants",
    "is_reflexible",
    "is_symmetric",
    "is_totally_symmetric",
    "is_unique_dessin_group",
    "make_dessin",
    "multiplicity",
    "parallel_product",
    "parse_spec",
    "sylow_decompose",
    "universal_dessin",
    "validate_group",
]
