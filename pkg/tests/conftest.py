"""Shared fixtures: small trivial braces and catalog builds used across files.

Session scope keeps the expensive constructions (catalog examples,
exhaustive enumerations) to one evaluation per run.
"""

import pytest

from braceforge import catalog
from braceforge.braces import trivial_brace
from braceforge.groups import cyclic_group


@pytest.fixture(scope="session")
def Z2():
    return trivial_brace(cyclic_group(2))


@pytest.fixture(scope="session")
def Z3():
    return trivial_brace(cyclic_group(3))


@pytest.fixture(scope="session")
def Z4():
    return trivial_brace(cyclic_group(4))


@pytest.fixture(scope="session")
def flip4():
    """Order-4 brace with cyclic addition and a o b = a + (-1)^a b."""
    return catalog.example4_coefficient_brace()


@pytest.fixture(scope="session")
def xor4():
    """Order-4 brace with XOR addition and cyclic circle."""
    return catalog.example4_acting_brace()


@pytest.fixture(scope="session")
def split_ext(Z2, Z3):
    return catalog.split_z2_z3_extension()


@pytest.fixture(scope="session")
def z4_ext():
    return catalog.z4_additive_extension()
