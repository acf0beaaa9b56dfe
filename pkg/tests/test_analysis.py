import pytest

from hatdigraph import (
    ArgumentError,
    ClassificationInapplicable,
    PreconditionError,
    VoltagePresentation,
    alternets_periodic,
    blow_up,
    classify,
    decompose_pl_delta,
    delta_p,
    descendants,
    descendants_in_window,
    directed_cycle,
    folkman_construction,
    hat_certificate_window,
    is_skew_symmetric,
    ladder,
    pl_periodic,
    pl_power,
    psi_n,
    quotient_isomorphism,
    rooted_tree,
)
from hatdigraph.analysis import cell_isomorphism, default_quotient_sizes


def three_cycle_of_pairs() -> VoltagePresentation:
    """Graded, 2-regular, but its single alternet is not complete bipartite."""
    return VoltagePresentation(3, frozenset((c, d % 3, 1) for c in range(3) for d in (c, c + 1)))


def test_default_quotient_sizes():
    assert default_quotient_sizes(delta_p(2)) == (5, 6)
    assert default_quotient_sizes(ladder(), delta_p(2)) == (5, 6)


def test_quotient_isomorphism_witnesses():
    iso = quotient_isomorphism(alternets_periodic(pl_periodic(delta_p(3))).presentation, delta_p(3))
    assert iso is not None and iso.sizes == (5, 6)
    assert quotient_isomorphism(delta_p(2), delta_p(3)) is None


def test_cell_isomorphism():
    P = delta_p(2)
    assert cell_isomorphism(P, P, (1, 0))
    assert not cell_isomorphism(P, P, (0, 0))


def test_decomposition_stages():
    d = decompose_pl_delta(pl_power(delta_p(2), 2))
    assert (d.p, d.r, d.fibre_size) == (2, 2, 8)
    assert [s.cells for s in d.stages] == [8, 4, 2]
    assert len(d.witnesses) == 2


def test_decomposition_negative_and_errors():
    result = classify(three_cycle_of_pairs())
    assert result.decomposition is None and "K_{2,2}" in result.diagnostic
    with pytest.raises(PreconditionError):
        classify(ladder())
    with pytest.raises(ClassificationInapplicable):
        classify(folkman_construction())
    with pytest.raises(ClassificationInapplicable):
        classify(blow_up(delta_p(2), 2))


def test_skew_symmetry():
    assert is_skew_symmetric(directed_cycle(4))
    assert not is_skew_symmetric(rooted_tree(2, 2))
    assert is_skew_symmetric(pl_power(delta_p(2), 1))
    verdict = is_skew_symmetric(folkman_construction())
    assert not verdict and len(verdict.evidence) == 3


def test_hat_certificate_values():
    assert hat_certificate_window(delta_p(2), 3).stabilizer_order_at_depth == 8
    assert hat_certificate_window(delta_p(3), 3).stabilizer_order_at_depth == 216
    cert = hat_certificate_window(pl_periodic(delta_p(2)), 3)
    assert cert.transitive_on_out and cert.stabilizer_order_at_depth == 16
    with pytest.raises(PreconditionError):
        hat_certificate_window(psi_n(3), 3)
    with pytest.raises(ArgumentError):
        hat_certificate_window(delta_p(2), 0)


def test_hat_certificate_rejects_three_cycle_of_pairs():
    assert not hat_certificate_window(three_cycle_of_pairs(), 2).transitive_on_out


def test_descendants():
    tree = descendants(rooted_tree(2, 3), 0, 3)
    assert tree.count == 15 and tree.is_rooted_tree
    assert tree.per_depth == (1, 2, 4, 8)
    rep = descendants_in_window(delta_p(2), 0, 3, 0, 0, 3)
    assert rep.count == 7 and not rep.is_rooted_tree
    assert rep.per_depth == (1, 2, 2, 2)
    with pytest.raises(PreconditionError):
        descendants_in_window(delta_p(2), 0, 2, 0, 0, 3)
    with pytest.raises(ArgumentError):
        descendants(rooted_tree(2, 1), 0, -1)
