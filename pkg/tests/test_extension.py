import numpy as np
import pytest

from cartwl.cc import partition_leq, tensor_product, trivial, wl
from cartwl.errors import BudgetExceeded, NotColorExactError
from cartwl.extension import cylinder, is_two_closed, two_closure, two_extension
from cartwl.factor import tau_relation, theta_relation
from cartwl.graphs import BinaryRelation, cycle, hamming, path, petersen


def test_extension_of_trivial_two_points():
    ext = two_extension(trivial(2))
    assert ext.extended.n == 4
    diag = set(ext.diagonal_points.tolist())
    assert diag == {0, 3}
    fibers = ext.extended.fiber_of
    inside = {int(f) for f in fibers[list(diag)]}
    assert {p for p in range(4) if fibers[p] in inside} == diag
    assert ext.extended.tags["Delta"]


def test_extension_refines_tensor_square():
    cc = wl(path(4))
    ext = two_extension(cc)
    assert partition_leq(tensor_product([cc, cc]), ext.extended)


@pytest.mark.parametrize("i,j", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_cylinders_of_c5_are_extension_relations(i, j):
    cc = wl(cycle(5))
    ext = two_extension(cc).extended
    for s in range(cc.rank):
        assert ext.is_color_exact(cylinder(cc, [s], i, j).matrix)


def test_theta_and_tau_of_c6_are_extension_relations():
    g = cycle(6)
    ext = two_extension(wl(g)).extended
    assert ext.is_color_exact(theta_relation(g).point_mask(6))
    assert ext.is_color_exact(tau_relation(g).point_mask(6))


def test_cylinder_of_identity():
    n = 4
    cc = wl(path(n))
    cyl = cylinder(cc, BinaryRelation.identity(n), 1, 1).matrix
    assert np.array_equal(cyl, cyl.T)
    assert np.array_equal(cyl, (cyl.astype(int) @ cyl.astype(int)) > 0)
    labels = np.argmax(cyl, axis=1)
    assert np.unique(labels, return_counts=True)[1].tolist() == [n] * n


def test_cylinder_size():
    cc = wl(petersen())
    for s in range(cc.rank):
        assert len(cylinder(cc, [s], 1, 2)) == int(cc.sizes[s]) * 100


def test_cylinder_errors():
    cc = wl(cycle(5))
    with pytest.raises(NotColorExactError):
        cylinder(cc, BinaryRelation.from_pairs(5, [(0, 1)]), 1, 2)
    with pytest.raises(ValueError):
        cylinder(cc, [0], 0, 1)


def test_two_closure_examples():
    cc = wl(hamming(2, 4))
    assert two_closure(cc).same_partition(cc)
    assert is_two_closed(cc)
    for n in range(2, 11):
        assert is_two_closed(trivial(n))


def test_two_closure_is_above_the_configuration():
    for g in (path(5), cycle(7), petersen()):
        cc = wl(g)
        assert partition_leq(cc, two_closure(cc))


def test_cap_refusal():
    with pytest.raises(BudgetExceeded):
        two_extension(trivial(25))
    with pytest.raises(BudgetExceeded):
        is_two_closed(trivial(12), cap=10)
