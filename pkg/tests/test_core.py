from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latinhc.construct import complement, cyclic_hypercube, prefix, unused_array
from latinhc.core import (
    ConstraintArray,
    Hypercuboid,
    Layer,
    PartialAssignment,
    SetArray,
    Shape,
    SymbolSet,
    coord_of,
    index_of,
    is_extension_of,
    is_layer_of,
    lines,
    validate_hypercuboid,
    validate_layer,
    validate_set_array,
)
from latinhc.errors import RangeError, ShapeError


def test_index_roundtrip_last_index_fastest():
    ext = (3, 4, 2)
    assert index_of((0, 0, 1), ext) == 1
    assert index_of((0, 1, 0), ext) == 2
    assert index_of((1, 0, 0), ext) == 8
    for i in range(24):
        assert index_of(coord_of(i, ext), ext) == i


def test_lines_cover_each_cell_once_per_axis():
    ext = (3, 3, 2)
    ls = lines(ext)
    assert len(ls) == 3 * 2 + 3 * 2 + 3 * 3
    for axis in range(3):
        cells = sorted(c for a, idx in ls if a == axis for c in idx)
        assert cells == list(range(18))


class TestSymbolSet:
    def test_operations(self):
        a = SymbolSet.of(5, [1, 3])
        b = SymbolSet.of(5, [3, 4])
        assert list(a | b) == [1, 3, 4]
        assert list(a & b) == [3]
        assert list(a.complement()) == [2, 4, 5]
        assert len(a) == 2
        assert 3 in a and 2 not in a and 9 not in a

    def test_out_of_range(self):
        with pytest.raises(RangeError):
            SymbolSet.of(3, [4])

    @given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)))))
    def test_iteration_ascending_and_complement_involution(self, data):
        n, members = data
        s = SymbolSet.of(n, members)
        assert list(s) == sorted(members)
        assert s.complement().complement() == s
        assert len(s) + len(s.complement()) == n


class TestValidateHypercuboid:
    def test_cyclic_group_table(self):
        H = Hypercuboid.build(2, 3, 3, [1, 2, 3, 2, 3, 1, 3, 1, 2])
        assert validate_hypercuboid(H)

    def test_row_repeat_reported(self):
        H = Hypercuboid.build(2, 2, 2, [1, 1, 2, 2])
        report = validate_hypercuboid(H)
        assert not report
        v = report.violation
        assert v.symbol == 1 and v.axis == 1
        assert v.cells == ((0, 0), (0, 1))
        assert "(1,1)" in str(v)

    def test_out_of_range_symbol(self):
        H = Hypercuboid.build(2, 2, 1, [1, 3])
        assert not validate_hypercuboid(H)

    def test_wrong_cell_count(self):
        with pytest.raises(ShapeError):
            Hypercuboid.build(3, 3, 2, [1] * 17)

    def test_shape_invariants(self):
        with pytest.raises(ShapeError):
            Shape(0, 3, 1)
        with pytest.raises(ShapeError):
            Shape(2, 3, 4)

    def test_empty_cuboid_is_valid(self):
        assert validate_hypercuboid(Hypercuboid.empty(3, 4))

    def test_independent_recount(self):
        # every line recounted from coordinates alone
        H = prefix(cyclic_hypercube(3, 5), 3)
        assert validate_hypercuboid(H)
        for i in range(5):
            for j in range(5):
                depth = [H[i, j, t] for t in range(3)]
                assert len(set(depth)) == 3
            for t in range(3):
                assert len({H[i, j, t] for j in range(5)}) == 5
                assert len({H[j, i, t] for j in range(5)}) == 5


class TestValidateSetArray:
    def test_unused_of_one_layer(self):
        A = unused_array(prefix(cyclic_hypercube(3, 3), 1))
        assert A.k == 2 and validate_set_array(A)

    def test_small_cell_rejected(self):
        A = unused_array(prefix(cyclic_hypercube(3, 3), 1))
        cells = list(A.cells)
        cells[0] = SymbolSet.of(3, list(cells[0])[:1])
        report = validate_set_array(SetArray(2, 3, 2, tuple(cells)))
        assert not report and report.violation.cells == ((0, 0),)

    def test_unbalanced_line_rejected(self):
        A = SetArray.from_sets(1, 3, 1, [[1], [1], [2]])
        report = validate_set_array(A)
        assert not report and report.violation.symbol == 1


class TestValidateLayer:
    def test_permutation(self):
        assert validate_layer(Layer(1, 3, (2, 3, 1)))

    def test_cyclic_z4(self):
        assert validate_layer(Layer(2, 4, tuple((i + j) % 4 + 1 for i in range(4) for j in range(4))))

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_constant_is_not_a_layer(self, n):
        assert not validate_layer(Layer(2, n, (1,) * n * n))

    def test_layer_view_round_trip(self):
        L = Layer(2, 3, (1, 2, 3, 2, 3, 1, 3, 1, 2))
        H = L.as_hypercuboid()
        assert H.shape == Shape(3, 3, 1)
        assert bool(validate_layer(L)) == bool(validate_hypercuboid(H))
        assert H.layer(0) == L
        bad = Layer(2, 3, (1, 1, 3, 2, 3, 1, 3, 1, 2))
        assert bool(validate_layer(bad)) == bool(validate_hypercuboid(bad.as_hypercuboid())) is False


class TestIsLayerOf:
    def test_full_sets(self):
        L = Layer(2, 3, (1, 2, 3, 2, 3, 1, 3, 1, 2))
        assert is_layer_of(L, ConstraintArray.filled(2, 3, [1, 2, 3]))

    def test_cell_outside_set(self):
        A = ConstraintArray.from_sets(1, 3, [[1, 2], [2, 3], [1, 3]])
        assert is_layer_of(Layer(1, 3, (1, 2, 3)), A)
        assert not is_layer_of(Layer(1, 3, (3, 1, 2)), A)

    def test_mismatch(self):
        with pytest.raises(ShapeError):
            is_layer_of(Layer(1, 3, (1, 2, 3)), ConstraintArray.filled(2, 3, [1]))


class TestIsExtensionOf:
    def test_identity_and_prefix(self):
        H = cyclic_hypercube(3, 4)
        assert is_extension_of(H, H)
        assert is_extension_of(H, prefix(H, 2))

    def test_altered_prefix(self):
        H = cyclic_hypercube(3, 4)
        P = prefix(H, 2)
        cells = list(P.cells)
        cells[0] = cells[0] % 4 + 1
        assert not is_extension_of(H, Hypercuboid(P.shape, tuple(cells)))

    def test_mismatch(self):
        with pytest.raises(ShapeError):
            is_extension_of(cyclic_hypercube(3, 4), cyclic_hypercube(2, 4))


def test_complement_of_valid_array_is_valid():
    A = unused_array(prefix(cyclic_hypercube(3, 5), 2))
    C = complement(A)
    assert C.k == 5 - A.k and validate_set_array(C)


def test_partial_assignment():
    pa = PartialAssignment.of({(0, 0): 5, (1, 2): 1})
    assert pa.indexed(2, 5) == {0: 5, 7: 1}
    with pytest.raises(ShapeError):
        PartialAssignment((((0, 0), 1), ((0, 0), 2)))
    with pytest.raises(RangeError):
        pa.indexed(2, 4)
