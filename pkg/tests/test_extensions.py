"""Extensions: validation and exactness, sections, triplet extraction and
rebuild, the identity sweeps with their sign variants, couplings, twists,
triplet-level cohomology sets and exhaustive classification."""

import random

import pytest

from braceforge.braces import trivial_brace, validate_brace
from braceforge.errors import InputError, NotExact, TripletInvalid
from braceforge.extensions import (
    ActionTriple,
    Triplet,
    action_identities_witness,
    canonical_section,
    cocycle_conditions_witness,
    coupling_of,
    couplings_classwise_equal,
    couplings_related,
    enumerate_all_extensions,
    ext_classes,
    extension_from_triplet,
    extensions_equivalent,
    extract_triplet,
    h2_alpha,
    is_valid_triplet,
    parent_relation_witness,
    sections,
    twist_triplet,
    triplets_equivalent,
    validate_extension,
    z2_alpha,
    zero_triplet,
)
from braceforge.groups import (
    compose,
    cyclic_group,
    group_from_elements,
    identity_perm,
    invert_perm,
)
from braceforge.split import enumerate_split_triples, semidirect_product


def perm_pow(p, k):
    out = identity_perm(len(p))
    for _ in range(k):
        out = compose(p, out)
    return out


@pytest.fixture(scope="module")
def order6_coefficients():
    """Nonabelian-addition brace of order 6 on pairs (n mod 3, m mod 2)."""

    def idx(n, m):
        return 2 * (n % 3) + (m % 2)

    add = [[0] * 6 for _ in range(6)]
    circ = [[0] * 6 for _ in range(6)]
    for n in range(3):
        for m in range(2):
            for s in range(3):
                for t in range(2):
                    add[idx(n, m)][idx(s, t)] = idx(n + 2 ** m * s, m + t)
                    circ[idx(n, m)][idx(s, t)] = idx(2 ** t * n + 2 ** m * s, m + t)
    return validate_brace(add, circ)


@pytest.fixture(scope="module")
def ext48(order6_coefficients):
    """Order-48 split extension twisting the order-6 coefficients by an
    order-2 automorphism family over cyclic Z8."""
    H8 = trivial_brace(cyclic_group(8))
    psi = tuple((2 * (x // 2) % 3) * 2 + (x % 2) for x in range(6))
    nu = tuple(perm_pow(psi, k) for k in range(8))
    t = ActionTriple(nu, tuple(identity_perm(6) for _ in range(8)), nu)
    E = semidirect_product(H8, order6_coefficients, t)
    return validate_extension(
        E, H8, order6_coefficients, tuple(range(6)), tuple(x // 6 for x in range(48))
    )


def test_validate_extension_errors(Z2, Z3, split_ext):
    E, H, I = split_ext.E, split_ext.H, split_ext.I
    with pytest.raises(InputError):
        validate_extension(E, H, I, (0, 1), split_ext.proj)
    with pytest.raises(NotExact) as exc:
        validate_extension(E, H, I, split_ext.inj, tuple(x % 2 for x in range(6)))
    assert "homomorphism" in str(exc.value)
    # proj must kill exactly the embedded copy
    bad_proj = tuple(0 for _ in range(6))
    with pytest.raises(NotExact):
        validate_extension(E, H, I, split_ext.inj, bad_proj)


def test_sections_and_canonical(split_ext):
    all_sections = list(sections(split_ext))
    assert len(all_sections) == 3
    assert canonical_section(split_ext) in all_sections
    assert canonical_section(split_ext) == (0, 3)


def test_triplet_extraction_round_trip(ext48):
    T = extract_triplet(ext48)
    rebuilt = extension_from_triplet(ext48.H, ext48.I, T)
    # the rebuild lives on circle-decomposed pair labels while the split
    # product uses additive ones, so equality holds as extensions, not as
    # raw tables
    assert extensions_equivalent(ext48, rebuilt) is not None
    assert extract_triplet(rebuilt) == T


def test_both_pair_conventions_extract_the_same_triplet(Z2, Z3):
    for chi in enumerate_split_triples(Z2, Z3):
        t = Triplet(chi, ((0, 0), (0, 0)), ((0, 0), (0, 0)))
        built = extension_from_triplet(Z2, Z3, t)
        E = semidirect_product(Z2, Z3, chi)
        product = validate_extension(
            E, Z2, Z3, tuple(range(3)), tuple(x // 3 for x in range(6))
        )
        assert extract_triplet(product) == t
        assert extensions_equivalent(built, product) is not None


def test_identity_sweeps_across_sections(ext48):
    H, I = ext48.H, ext48.I
    rng = random.Random(7)
    derived = {"act": 0, "coc": 0, "par": 0}
    as_written = {"act": 0, "coc": 0, "par": 0}
    for _ in range(12):
        s = tuple(0 if h == 0 else h * 6 + rng.randrange(6) for h in range(8))
        t = extract_triplet(ext48, s)
        derived["act"] += action_identities_witness(H, I, t) is not None
        derived["coc"] += cocycle_conditions_witness(H, I, t) is not None
        derived["par"] += parent_relation_witness(H, I, t) is not None
        as_written["act"] += action_identities_witness(H, I, t, as_written=True) is not None
        as_written["coc"] += cocycle_conditions_witness(H, I, t, as_written=True) is not None
        as_written["par"] += parent_relation_witness(H, I, t, as_written=True) is not None
    assert derived == {"act": 0, "coc": 0, "par": 0}
    assert as_written == {"act": 12, "coc": 11, "par": 12}


def test_identity_sweeps_nonabelian_circle(Z2):
    s3 = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    S3 = trivial_brace(
        group_from_elements(s3, lambda p, q: tuple(p[q[i]] for i in range(3)))
    )
    tid = ActionTriple(
        (identity_perm(6),) * 2, (identity_perm(6),) * 2, (identity_perm(6),) * 2
    )
    E = semidirect_product(Z2, S3, tid)
    ext = validate_extension(E, Z2, S3, tuple(range(6)), tuple(x // 6 for x in range(12)))
    derived = [0, 0, 0]
    as_written = [0, 0, 0]
    for s1 in range(6):
        t = extract_triplet(ext, (0, 6 + s1))
        derived[0] += action_identities_witness(Z2, S3, t) is not None
        derived[1] += cocycle_conditions_witness(Z2, S3, t) is not None
        derived[2] += parent_relation_witness(Z2, S3, t) is not None
        as_written[0] += action_identities_witness(Z2, S3, t, as_written=True) is not None
        as_written[1] += cocycle_conditions_witness(Z2, S3, t, as_written=True) is not None
        as_written[2] += parent_relation_witness(Z2, S3, t, as_written=True) is not None
    assert derived == [0, 0, 0]
    assert as_written == [2, 0, 5]


def test_section_change_is_a_twist(ext48):
    H, I = ext48.H, ext48.I
    s_a = canonical_section(ext48)
    s_b = tuple(0 if h == 0 else h * 6 + (h % 6) for h in range(8))
    ta = extract_triplet(ext48, s_a)
    tb = extract_triplet(ext48, s_b)
    theta = triplets_equivalent(H, I, ta, tb)
    expected = tuple(
        ext48.into_I(ext48.E.circ.table[ext48.E.circ.inv[s_a[h]]][s_b[h]])
        for h in range(8)
    )
    assert theta == expected
    assert twist_triplet(H, I, ta, theta) == tb


def test_coupling_is_section_independent(ext48):
    # coupling_of itself raises when sampled sections disagree
    coup = coupling_of(ext48)
    ta = extract_triplet(ext48, canonical_section(ext48))
    tb = extract_triplet(ext48, tuple(0 if h == 0 else h * 6 + (h % 6) for h in range(8)))
    witness_sets = couplings_related(ext48.I, ta.chi, tb.chi)
    assert witness_sets is not None and 0 in witness_sets[0]
    assert couplings_classwise_equal(coup, ta.chi, tb.chi)


def test_triplet_cohomology_sets(Z2):
    tid = ActionTriple((identity_perm(2),) * 2, (identity_perm(2),) * 2, (identity_perm(2),) * 2)
    zset = z2_alpha(Z2, Z2, tid)
    assert len(zset) == 4
    classes = h2_alpha(Z2, Z2, tid)
    assert len(classes) == 4
    assert sorted(len(c) for c in classes) == [1, 1, 1, 1]
    assert sum(1 for t in zset if t.beta[1][1] == 1) == 2


def test_enumerate_and_classify_2_by_2(Z2):
    exts = enumerate_all_extensions(Z2, Z2)
    assert len(exts) == 12
    buckets = ext_classes(Z2, Z2)
    assert len(buckets) == 1
    sizes = sorted(len(c) for _, classes in buckets for c in classes)
    assert sizes == [3, 3, 3, 3]


def test_enumerate_and_classify_2_by_3(Z2, Z3):
    buckets = ext_classes(Z2, Z3)
    assert len(buckets) == 6
    assert [len(classes) for _, classes in buckets] == [1, 1, 1, 1, 1, 1]
    assert sum(len(c) for _, classes in buckets for c in classes) == 560


def test_enumerate_and_classify_3_by_2(Z2, Z3):
    # the quotient group of the total brace can be nonabelian here, which
    # exercises the additive-normality requirement on embedded kernels
    buckets = ext_classes(Z3, Z2)
    assert len(buckets) == 1
    assert [len(classes) for _, classes in buckets] == [1]
    assert sum(len(c) for _, classes in buckets for c in classes) == 120


def test_invalid_triplets_are_rejected(Z2, Z3):
    t = zero_triplet(Z2, Z3)
    # shape rejection: beta must vanish when either argument is 0
    bad_shape = Triplet(t.chi, ((0, 1), (0, 0)), t.tau)
    with pytest.raises(TripletInvalid):
        extension_from_triplet(Z2, Z3, bad_shape)
    assert not is_valid_triplet(Z2, Z3, bad_shape)
    # law rejection: normalized tables whose cocycle pair breaks the
    # compatibility between the two operations
    bad_law = Triplet(t.chi, ((0, 0), (0, 1)), t.tau)
    with pytest.raises(TripletInvalid):
        extension_from_triplet(Z2, Z3, bad_law)
    assert not is_valid_triplet(Z2, Z3, bad_law)


def test_round_trip_of_carry_triplet(Z3):
    carry = ((0, 0, 0), (0, 0, 1), (0, 1, 1))
    t = Triplet(
        ActionTriple((identity_perm(3),) * 3, (identity_perm(3),) * 3, (identity_perm(3),) * 3),
        carry,
        carry,
    )
    ext = extension_from_triplet(Z3, Z3, t)
    assert sorted(ext.E.add.element_order(x) for x in range(9)) == [1, 3, 3, 9, 9, 9, 9, 9, 9]
    assert extract_triplet(ext) == t
