import numpy as np
import pytest

from meroimm import InputError, ParamGrid


def test_line_basics():
    g = ParamGrid.line(5, q_nodes=[0, 4])
    assert g.npoints == 5
    assert g.points[0] == (0.0,)
    assert g.points[-1] == (1.0,)
    assert g.q_indices == [0, 4]
    assert g.adjacent_pairs() == [(0, 1), (1, 2), (2, 3), (3, 4)]


def test_box_basics():
    g = ParamGrid.box(3, 4)
    assert g.npoints == 12
    assert g.ndim == 2
    assert g.point(0) == (0.0, 0.0)
    assert g.point(11) == (1.0, 1.0)
    assert len(g.adjacent_pairs()) == 2 * 4 + 3 * 3 * 1 + 0  # 17 edges
    assert set(g.neighbors(0)) == {1, 4, 5}


def test_validation():
    with pytest.raises(InputError):
        ParamGrid.line(1)
    with pytest.raises(InputError):
        ParamGrid.line(5, q_nodes=[7])
    with pytest.raises(InputError):
        ParamGrid((2, 2, 2), (False,) * 8)


def test_hat_weights_partition_of_unity(rng):
    for g in (ParamGrid.line(7), ParamGrid.box(4, 5)):
        for _ in range(50):
            p = tuple(rng.random(g.ndim))
            w = g.hat_weights(p)
            assert np.all(w >= 0)
            assert np.sum(w) == pytest.approx(1.0, abs=1e-12)


def test_hat_weights_at_nodes_are_kronecker():
    g = ParamGrid.line(6)
    for i in range(6):
        w = g.hat_weights(g.point(i))
        assert w[i] == pytest.approx(1.0)
        assert np.sum(np.abs(np.delete(w, i))) == pytest.approx(0.0)


def test_hat_weights_single_cell_support(rng):
    g = ParamGrid.line(9)
    for _ in range(30):
        x = float(rng.random())
        w = g.hat_weights((x,))
        support = np.nonzero(w > 0)[0]
        # positive weight only at the two nodes bounding the cell of x
        assert len(support) <= 2
        h = 1.0 / 8.0
        for i in support:
            assert abs(x - i * h) < h + 1e-12


def test_q_cutoff():
    g = ParamGrid.line(11, q_nodes=[0, 10])
    assert g.q_cutoff((0.0,)) == pytest.approx(1.0)
    assert g.q_cutoff((1.0,)) == pytest.approx(1.0)
    assert g.q_cutoff(g.point(1)) == pytest.approx(0.0)
    assert g.q_cutoff((0.05,)) == pytest.approx(0.5)
    assert g.q_neighborhood() == [0, 1, 9, 10]
    assert g.nearest_q_node(3) == 0
    assert g.nearest_q_node(8) == 10


def test_net_indices_and_weights():
    g = ParamGrid.line(9)
    net = g.net_indices(4)
    assert net == [0, 4, 8]
    w = g.net_weights(net, (0.25,))
    assert w == pytest.approx([0.5, 0.5, 0.0])
    w = g.net_weights(net, g.point(4))
    assert w == pytest.approx([0.0, 1.0, 0.0])
    assert np.sum(g.net_weights(net, (0.9,))) == pytest.approx(1.0)
    full = g.net_indices(1)
    assert full == list(range(9))


def test_net_weights_2d():
    g = ParamGrid.box(5, 5)
    net = g.net_indices(4)
    assert len(net) == 4
    w = g.net_weights(net, (0.5, 0.5))
    assert np.sum(w) == pytest.approx(1.0)
    assert np.all(np.asarray(w) == 0.25)
