import pytest
import sympy
from hypothesis import given, strategies as st

from lie2kit.errors import DimensionError, NotAnIdealError
from lie2kit.exactla import Matrix, Subspace
from lie2kit.liealg import (
    LieAlgebra,
    LieHom,
    ab2,
    abelian,
    center,
    derivation_defect,
    derivation_space,
    end_unvec,
    end_vec,
    heis3,
    heisenberg,
    lie_fiber_product,
    lie_quotient,
    sl2,
    verify_hom,
    verify_lie_algebra,
)


def sympy_derivation_dim(L: LieAlgebra) -> int:
    """Independent count: solve M[x, y] = [Mx, y] + [x, My] symbolically."""
    d = L.dim
    c = [[[sympy.Rational(x.numerator, x.denominator) for x in row] for row in plane]
         for plane in L.constants]
    M = sympy.Matrix(d, d, sympy.symbols(f"m0:{d * d}"))

    def br(x, y):
        return sympy.Matrix([sum(x[i] * y[j] * c[i][j][k] for i in range(d) for j in range(d))
                             for k in range(d)])

    basis = [sympy.eye(d)[:, i] for i in range(d)]
    eqs = []
    for x in basis:
        for y in basis:
            eqs.extend(M * br(x, y) - br(M * x, y) - br(x, M * y))
    system = sympy.Matrix([[sympy.diff(e, m) for m in M] for e in eqs if e != 0])
    return d * d - (system.rank() if system.shape[0] else 0)


@pytest.mark.parametrize("L, expected", [(ab2(), 4), (sl2(), 3), (heis3(), 6)])
def test_derivation_dims(L, expected):
    assert sympy_derivation_dim(L) == expected
    D = derivation_space(L)
    assert D.dim == expected
    for e in L.basis():
        assert D.contains(end_vec(L.ad(e)))


def test_fixtures_verify():
    for L in (ab2(), heis3(), sl2(), heisenberg(2)):
        assert verify_lie_algebra(L).ok


def test_corrupted_sl2_names_triple():
    bad = LieAlgebra.from_brackets(
        ["H", "E", "F"], {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"E": 1}}
    )
    rep = verify_lie_algebra(bad)
    assert rep.failed_ids() == ["jacobi"]
    assert rep.get("jacobi").counterexample["triple"] == ["H", "E", "F"]


def test_antisymmetry_failure():
    c = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
    rep = verify_lie_algebra(LieAlgebra(c, ["a", "b"]))
    assert "antisymmetry" in rep.failed_ids()


def test_hom_examples():
    assert verify_hom(LieHom.identity(sl2())).ok
    assert verify_hom(LieHom(abelian(1), heis3(), Matrix([[0], [0], [1]]))).ok
    phi0 = LieHom(heis3(), ab2(), Matrix([[1, 0, 0], [0, 1, 0]]))
    assert verify_hom(phi0).ok
    sect = LieHom(ab2(), heis3(), Matrix([[1, 0], [0, 1], [0, 0]]))
    assert not verify_hom(sect).ok
    with pytest.raises(DimensionError):
        LieHom(ab2(), heis3(), Matrix.identity(2))


def test_fiber_product_examples():
    S = sl2()
    fp = lie_fiber_product(LieHom.identity(S), LieHom.identity(S))
    assert fp.algebra.dim == 3
    assert verify_lie_algebra(fp.algebra).ok

    phi0 = LieHom(heis3(), ab2(), Matrix([[1, 0, 0], [0, 1, 0]]))
    zero = abelian(0)
    fp = lie_fiber_product(phi0, LieHom.zero(zero, ab2()))
    assert fp.algebra.dim == 1 and fp.algebra.is_abelian()
    assert fp.pr1.matrix.image() == Subspace(3, [(0, 0, 1)])

    fp = lie_fiber_product(LieHom.zero(sl2(), ab2()), LieHom.zero(heis3(), ab2()))
    assert fp.algebra.dim == 6
    assert phi0.matrix @ Matrix.zeros(3, 6) == Matrix.zeros(2, 6)


def test_quotient_examples():
    Q, proj = lie_quotient(heis3(), Subspace(3, [(0, 0, 1)]))
    assert Q.dim == 2 and Q.is_abelian()
    assert verify_hom(proj).ok

    Q, proj = lie_quotient(sl2(), Subspace.zero(3))
    assert Q == sl2()

    with pytest.raises(NotAnIdealError):
        lie_quotient(sl2(), Subspace(3, [(0, 1, 0)]))


def test_center_examples():
    assert center(heis3()) == Subspace(3, [(0, 0, 1)])
    assert center(sl2()).dim == 0
    assert center(ab2()).is_full()


def test_derivation_defect():
    L = heis3()
    assert derivation_defect(L, L.ad((1, 0, 0))) is None
    assert derivation_defect(L, Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])) == ("X", "Y")


@st.composite
def ideal_pairs(draw):
    """A fixture algebra with a subspace that is always an ideal (derived or center)."""
    L = draw(st.sampled_from([heis3(), sl2(), heisenberg(2), ab2()]))
    kind = draw(st.sampled_from(["center", "derived", "zero", "full"]))
    if kind == "center":
        I = center(L)
    elif kind == "derived":
        I = Subspace.span([L.bracket(a, b) for a in L.basis() for b in L.basis()], L.dim)
    elif kind == "zero":
        I = Subspace.zero(L.dim)
    else:
        I = Subspace.full(L.dim)
    return L, I


@given(ideal_pairs())
def test_quotient_properties(pair):
    L, I = pair
    Q, proj = lie_quotient(L, I)
    assert verify_lie_algebra(Q).ok
    assert verify_hom(proj).ok
    assert (proj.matrix @ I.inclusion()).is_zero()
    assert Q.dim == L.dim - I.dim


@given(st.sampled_from([heis3(), sl2(), ab2(), heisenberg(2)]), st.data())
def test_fiber_product_square_commutes(L, data):
    phi0 = LieHom(heis3(), ab2(), Matrix([[1, 0, 0], [0, 1, 0]]))
    f = data.draw(st.sampled_from([phi0, LieHom.zero(heis3(), ab2())]))
    h = LieHom.zero(L, ab2())
    fp = lie_fiber_product(f, h)
    assert verify_lie_algebra(fp.algebra).ok
    assert f.matrix @ fp.pr1.matrix == h.matrix @ fp.pr2.matrix


@given(st.sampled_from([heis3(), sl2(), ab2()]))
def test_derivations_closed_under_commutator(L):
    D = derivation_space(L)
    mats = [end_unvec(b, L.dim) for b in D.basis]
    for A in mats:
        assert derivation_defect(L, A) is None
        for B in mats:
            assert D.contains(end_vec(A @ B - B @ A))
