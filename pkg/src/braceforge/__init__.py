"""Computational algebra for finite left skew braces.

A left skew brace is a set with two group operations (a, b) -> a + b and
(a, b) -> a o b sharing one identity, tied together by the law
a o (b + c) = a o b - a + a o c.  This package builds and validates such
structures on explicit Cayley tables and verifies, by exhaustive
computation at small orders, the structure theory of their extensions:

- split products of a coefficient brace by an acting brace, driven by an
  action triple (nu, mu, sigma), with exhaustive enumeration of all
  valid triples for a pair (``braceforge.split``);
- general extensions described by a triplet (chi, beta, tau) of an
  action and two cocycle tables, with extraction from and rebuilding to
  concrete extensions, couplings, and equivalence classification
  (``braceforge.extensions``);
- a second cohomology of pairs for abelian trivial coefficients, whose
  classes act freely on extension classes (transitively for trivial
  coefficient braces), matching class counts exactly
  (``braceforge.cohomology``);
- the induced-automorphism machinery: the stabilizer of a coupling, its
  action on cohomology, and the exact sequence tying the automorphisms
  of an extension to derivations and an obstruction map
  (``braceforge.wells``);
- a fixture catalog with strict JSON file formats and a command-line
  front end, ``braceforge`` (``braceforge.catalog``, ``braceforge.cli``).

Elements are integers 0..n-1 with the shared identity at 0; permutations
are tuples p with p[x] the image of x, composed right-to-left.
"""

from .budget import get_budget
from .errors import (
    BraceforgeError,
    InputError,
    ParamOutOfRange,
    SchemaError,
    SearchBudgetExceeded,
    ValidationError,
)
from .groups import (
    FiniteGroup,
    PermGroup,
    automorphism_group,
    cyclic_group,
    describe_group,
    dicyclic_group,
    dihedral_group,
    direct_product_group,
    find_isomorphism,
    klein_group,
    standard_groups_of_order,
    validate_group,
)
from .braces import (
    BraceHom,
    SkewBrace,
    annihilator,
    brace_automorphisms,
    find_brace_isomorphism,
    socle,
    trivial_brace,
    validate_brace,
)
from .split import (
    ActionTriple,
    enumerate_split_triples,
    identity_triple,
    semidirect_product,
    split_decompose,
    validate_split_triple,
)
from .extensions import (
    Coupling,
    Extension,
    Triplet,
    canonical_section,
    coupling_of,
    ext_classes,
    extension_from_triplet,
    extract_triplet,
    h2_alpha,
    is_valid_triplet,
    triplets_equivalent,
    validate_extension,
    z2_alpha,
    zero_triplet,
)
from .cohomology import (
    CocyclePair,
    CohomologyGroup,
    Derivation,
    b2N,
    coboundary_pair,
    ext_bijection_check,
    h2N,
    h2_act,
    restrict_action,
    verify_free_transitive,
    z1N,
    z2N,
)
from .wells import (
    AutPair,
    StabilizerC,
    autb_I,
    c_act_on_h2,
    pair_act,
    rho,
    stabilizer_C,
    verify_exact_sequence,
    wells_map,
)
from .catalog import CatalogEntry, example, load, save

__version__ = "1.0.0"

__all__ = [
    "__version__",
    "get_budget",
    "BraceforgeError",
    "InputError",
    "ParamOutOfRange",
    "SchemaError",
    "SearchBudgetExceeded",
    "ValidationError",
    "FiniteGroup",
    "PermGroup",
    "automorphism_group",
    "cyclic_group",
    "describe_group",
    "dicyclic_group",
    "dihedral_group",
    "direct_product_group",
    "find_isomorphism",
    "klein_group",
    "standard_groups_of_order",
    "validate_group",
    "BraceHom",
    "SkewBrace",
    "annihilator",
    "brace_automorphisms",
    "find_brace_isomorphism",
    "socle",
    "trivial_brace",
    "validate_brace",
    "ActionTriple",
    "enumerate_split_triples",
    "identity_triple",
    "semidirect_product",
    "split_decompose",
    "validate_split_triple",
    "Coupling",
    "Extension",
    "Triplet",
    "canonical_section",
    "coupling_of",
    "ext_classes",
    "extension_from_triplet",
    "extract_triplet",
    "h2_alpha",
    "is_valid_triplet",
    "triplets_equivalent",
    "validate_extension",
    "z2_alpha",
    "zero_triplet",
    "CocyclePair",
    "CohomologyGroup",
    "Derivation",
    "b2N",
    "coboundary_pair",
    "ext_bijection_check",
    "h2N",
    "h2_act",
    "restrict_action",
    "verify_free_transitive",
    "z1N",
    "z2N",
    "AutPair",
    "StabilizerC",
    "autb_I",
    "c_act_on_h2",
    "pair_act",
    "rho",
    "stabilizer_C",
    "verify_exact_sequence",
    "wells_map",
    "CatalogEntry",
    "example",
    "load",
    "save",
]
