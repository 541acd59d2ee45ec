import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtransmute.f2 import BitMatrix, BitVec, F2Span, kernel_basis, rref, solve


def mat(rows):
    return BitMatrix.from_rows(rows)


@st.composite
def matrices(draw, max_dim=8):
    nrows = draw(st.integers(0, max_dim))
    ncols = draw(st.integers(1, max_dim))
    rows = tuple(draw(st.integers(0, (1 << ncols) - 1)) for _ in range(nrows))
    return BitMatrix(rows, ncols)


def test_rref_identity():
    res = rref(BitMatrix.identity(2))
    assert res.reduced == BitMatrix.identity(2)
    assert res.rank == 2
    assert res.pivots == (0, 1)


def test_rref_zero():
    res = rref(BitMatrix.zeros(3, 4))
    assert res.reduced == BitMatrix.zeros(3, 4)
    assert res.rank == 0
    assert res.pivots == ()


def test_rref_dependent_rows():
    # third row is the sum of the first two
    res = rref(mat([[1, 1, 0], [0, 1, 1], [1, 0, 1]]))
    assert res.rank == 2


@given(matrices())
@settings(max_examples=200)
def test_rref_idempotent(m):
    once = rref(m)
    twice = rref(once.reduced)
    assert twice.reduced == once.reduced
    assert twice.rank == once.rank


def test_kernel_identity_empty():
    assert kernel_basis(BitMatrix.identity(3)).nrows == 0


def test_kernel_zero_matrix_full():
    assert kernel_basis(BitMatrix.zeros(2, 3)).nrows == 3


def test_kernel_hand_example():
    # enumerate all 8 vectors: only 111 is in the kernel
    m = mat([[1, 1, 0], [0, 1, 1]])
    expected = [v for v in range(8)
                if all(bin(row & v).count("1") % 2 == 0 for row in m.rows)]
    assert expected == [0, 0b111]
    basis = kernel_basis(m)
    assert basis.rows == (0b111,)


@given(matrices())
@settings(max_examples=200)
def test_kernel_rows_annihilate_and_are_independent(m):
    basis = kernel_basis(m)
    for i in range(basis.nrows):
        assert m.matvec(basis.row(i)).is_zero()
    assert rref(basis).rank == basis.nrows
    assert basis.nrows == m.cols - rref(m).rank


def test_solve_identity():
    b = BitVec.from_string("101")
    assert solve(BitMatrix.identity(3), b) == b


def test_solve_inconsistent():
    assert solve(BitMatrix.zeros(2, 3), BitVec.from_string("10")) is None


def test_solve_hand_example():
    # m = [1 1; 0 1]; the expected solution is fixed by scanning all 4 candidates
    m = mat([[1, 1], [0, 1]])
    b = BitVec.from_string("10")
    sols = [x for x in range(4) if all(
        bin(row & x).count("1") % 2 == (b.bits >> i) & 1
        for i, row in enumerate(m.rows))]
    assert len(sols) == 1
    assert solve(m, b) == BitVec(2, sols[0])
    # the mirrored right-hand side has the mirrored unique solution
    b2 = BitVec.from_string("01")
    sols2 = [x for x in range(4) if all(
        bin(row & x).count("1") % 2 == (b2.bits >> i) & 1
        for i, row in enumerate(m.rows))]
    assert sols2 == [0b11]
    assert solve(m, b2) == BitVec(2, 0b11)


@given(matrices(), st.integers(0, 255))
@settings(max_examples=200)
def test_solve_soundness(m, bbits):
    b = BitVec(m.nrows, bbits & ((1 << m.nrows) - 1))
    x = solve(m, b)
    if x is not None:
        assert m.matvec(x) == b


def test_span_membership():
    span = F2Span([0b110, 0b011])
    assert span.contains(0b101)
    assert not span.contains(0b001)
    assert span.insert(0b101) == 0
    assert span.rank == 2


def test_bitvec_rejects_overflow():
    with pytest.raises(ValueError):
        BitVec(2, 0b100)
