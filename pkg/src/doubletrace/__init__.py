"""Braid-trace invariants of finite group algebras through the Drinfeld double."""

from .braid import (
    BraidWord,
    Permutation,
    closure_component_count,
    compose,
    inverse,
    lens_braid,
    parse_braid,
    tensor,
    underlying_permutation,
)
from .catalog import catalog, catalog_specs, group_from_spec
from .double import (
    BudgetExceeded,
    apply_braid,
    apply_generator,
    exponent_via_monodromy,
    holonomy,
    hurwitz_apply,
    lens_tau_closed_form,
    tau_brute,
    tau_fast,
)
from .groups import (
    FiniteGroup,
    abelianization_invariants,
    build_cyclic,
    build_dihedral,
    build_direct_product,
    build_generalized_quaternion,
    build_semidirect,
    build_symmetric,
    from_cayley_table,
)
from .invariants import (
    fs_indicator,
    omega,
    order_count_via_mobius,
    rt_value,
    screening_report,
)
from .presentations import GroupPresentation, count_homomorphisms, parse_word, preset_presentation

__version__ = "0.1.0"
