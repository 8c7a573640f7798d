import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from kanfuk import ainfinity as A
from kanfuk import nerve as NV
from kanfuk.ainfinity import CategoryBuilder
from kanfuk.kan import is_kan

LIB = A.library()
EXT_TRIANGLES = NV.nerve(LIB["exterior"], 2).all_simplices(2)
DG_EDGES = NV.nerve(LIB["dg"], 1).all_simplices(1)


def dual_numbers():
    b = CategoryBuilder(["A"])
    b.hom("A", "A", [("1", 0), ("x", 0)])
    b.unit("A", "1").strict_units()
    b.set_mu(("A", "A", "A"), ["x", "x"], "")
    return b.build()


DUAL = dual_numbers()
ONE, X_, ONE_X = 0b01, 0b10, 0b11


@pytest.mark.parametrize("f01,f12,f02,expected", [
    (X_, X_, 0, 0),  # x * x = 0
    (ONE_X, X_, X_, 0),  # (1 + x) x = x
    (ONE_X, ONE_X, ONE, 0),  # (1 + x)^2 = 1
    (ONE_X, ONE_X, ONE_X, X_),
    (ONE, X_, 0, X_),
])
def test_triangle_residual(f01, f12, f02, expected):
    data = {(0, 1): f01, (1, 2): f12, (0, 2): f02, (0, 1, 2): 0}
    assert NV.coherence_residual(DUAL, ["A"] * 3, data) == expected


def test_residual_with_mu1_term():
    C = LIB["dg"]
    objs = ["X0", "X1", "X2"]
    p = A.element(C, "X0", "X1", "p")
    s = A.element(C, "X1", "X2", "s")
    data = {(0, 1): p, (1, 2): s, (0, 2): 0}
    # f_02 = 0 leaves mu^2(p, s) = p.s, which is closed but not exact
    assert NV.extend_simplex(C, objs, data) is None
    data[(0, 2)] = A.element(C, "X0", "X2", "p.s")
    coset = NV.extend_simplex(C, objs, data)
    assert coset is not None
    for f in coset:
        assert NV.coherence_residual(C, objs, data, candidate=f) == 0


@pytest.mark.parametrize("name", ["dg", "exterior"])
def test_extend_simplex_coset_is_the_full_solution_set(name):
    C = LIB[name]
    rng_faces = list(NV.iter_simplices(C, 2))
    checked = 0
    for x in rng_faces[:200]:
        data = x.data()
        top = (0, 1, 2)
        objs = x.vertex_objects
        del data[top]
        coset = NV.extend_simplex(C, objs, data)
        H = C.hom(objs[0], objs[-1])
        brute = {f for f in range(1 << len(H))
                 if not f & ~H.degree_mask(1)
                 and NV.coherence_residual(C, objs, data, candidate=f) == 0}
        assert set(coset) == brute
        checked += 1
    assert checked > 0


def test_triangle_counts_against_brute_force():
    # 2-simplices of the dual-number nerve: any spine, f_02 forced, f_012 = 0
    N = NV.nerve(DUAL, 2)
    assert len(N.all_simplices(2)) == 16
    assert len(N.all_simplices(1)) == 4


@pytest.mark.parametrize("C,elements,mul", [
    (A.field_f2(), [0, 1], lambda a, b: a & b),
    (DUAL, [0, 1, 2, 3], oracles.dual_number_mul),
])
def test_one_object_nerve_is_classical(C, elements, mul):
    N = NV.nerve(C, 3)
    X, cell_of = oracles.classical_nerve(elements, mul, C.unit(C.objects[0]), 3)
    assert oracles.compare_with_classical(N, X, cell_of, 3) == []
    assert N.complex.validate().ok


def test_comparison_notices_a_wrong_product():
    N = NV.nerve(DUAL, 3)
    # x * x = x instead of zero
    wrong = lambda a, b: oracles.dual_number_mul(a, b) | (2 if a & 2 and b & 2 else 0)
    X, cell_of = oracles.classical_nerve([0, 1, 2, 3], wrong, 1, 3)
    assert oracles.compare_with_classical(N, X, cell_of, 3) != []


@pytest.mark.parametrize("name,dim", [("field", 3), ("dg", 2), ("exterior", 2)])
def test_nerve_is_a_valid_simplicial_set(name, dim):
    N = NV.nerve(LIB[name], dim)
    assert N.complex.validate().ok
    for c, x in N.simplices.items():
        assert NV.is_coherent(LIB[name], x)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_faces_and_restrictions_agree(data):
    C = LIB["exterior"]
    x = data.draw(st.sampled_from(EXT_TRIANGLES))
    for i in range(3):
        keep = [v for v in range(3) if v != i]
        assert x.face(i) == x.restrict(keep)
        assert NV.is_coherent(C, x.face(i))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_degeneracies_are_coherent(data):
    C = LIB["dg"]
    x = data.draw(st.sampled_from(DG_EDGES))
    for j in range(2):
        y = x.degeneracy(C, j)
        assert NV.is_coherent(C, y)
        assert y.face(j) == x and y.face(j + 1) == x


def test_corrupted_simplex_is_incoherent():
    C = LIB["dg"]
    x = next(iter(s for s in NV.iter_simplices(C, 2) if s[(0, 1, 2)] == 0
                  and s.vertex_objects == ("X0", "X1", "X2") and s[(0, 1)]))
    d = x.data()
    d[(0, 2)] ^= 1 << C.hom("X0", "X2").index("p.s")
    assert not NV.is_coherent(C, NV.NerveSimplex(x.vertex_objects, tuple(sorted(d.items()))))


def test_nerve_needs_units():
    b = CategoryBuilder(["a"])
    b.hom("a", "a", [("e", 0)])
    with pytest.raises(NV.PreconditionError):
        NV.nerve(b.build(), 1)
    assert NV.nerve(b.build(), 0).complex.counts() == (1,)


def test_nerve_budget():
    with pytest.raises(NV.NerveBudgetExceeded):
        NV.nerve(LIB["dg"], 2, budget=10)


def test_maximal_kan_subcomplex_of_dual_numbers():
    N = NV.nerve(DUAL, 3)
    assert is_kan(N.complex, 2).status == "not_kan"
    K = NV.maximal_kan_subcomplex(N)
    # units {1, 1 + x} form Z/2
    X, cell_of = oracles.classical_nerve([ONE, ONE_X], oracles.dual_number_mul, ONE, 3)
    assert oracles.compare_with_classical(K, X, cell_of, 3) == []
    assert is_kan(K.complex, 3).status == "kan"


@pytest.mark.parametrize("name,dim", [("field", 3), ("dg", 2), ("exterior", 2)])
def test_maximal_kan_subcomplex_is_idempotent(name, dim):
    K = NV.maximal_kan_subcomplex(NV.nerve(LIB[name], dim))
    assert NV.maximal_kan_subcomplex(K).complex == K.complex
    assert K.complex.validate().ok


def test_kan_subcomplex_edges_are_c_isomorphisms():
    C = LIB["exterior"]
    K = NV.maximal_kan_subcomplex(NV.nerve(C, 2))
    for x in K.simplices.values():
        for i, j, f in x.edges():
            assert A.is_c_isomorphism(C, "A", "A", f)


def test_missing_hom_means_no_simplex():
    C = LIB["dg"]
    assert NV.extend_simplex(C, ["X1", "X0"], {}) is None
    assert [x for x in NV.iter_simplices(C, 1) if x.vertex_objects == ("X2", "X0")] == []


@pytest.mark.parametrize("correlator", [0, 1])
@pytest.mark.parametrize("seed", range(6))
def test_obstruction_matches_brute_force(seed, correlator):
    C = NV.obstruction_fixture(seed, NV.ObstructionFixtureConfig(correlator=correlator))
    assert A.check_relations(C).ok
    rep = NV.obstruction_report(C)
    corr, count = oracles.brute_force_obstruction(C)
    assert rep.correlator == corr == correlator
    assert rep.simplex_exists == (count > 0) == (correlator == 0)
    assert rep.solutions == count


def test_fixture_respects_dimension_bound():
    for seed in range(20):
        C = NV.obstruction_fixture(seed)
        assert max(len(H) for H in C.homs.values()) <= 12


def test_fixture_is_deterministic():
    assert NV.obstruction_fixture(5) == NV.obstruction_fixture(5)
    assert NV.obstruction_fixture(5) != NV.obstruction_fixture(6)


def test_consecutive_pattern_is_rejected():
    C = NV.obstruction_fixture(0, skip_pattern="consecutive")
    with pytest.raises(NV.PreconditionError, match="mu\\^2"):
        NV.obstruction_report(C)


def test_missing_pairing_is_rejected():
    C = NV.obstruction_fixture(0)
    D = A.AInfinityCategory(C.objects, C.homs, C.mu, C.units, C.arity_bound, {})
    with pytest.raises(NV.PreconditionError):
        NV.correlator(D)


def test_report_string():
    C = NV.obstruction_fixture(1, correlator=1)
    assert str(NV.obstruction_report(C)) == "correlator=1 simplex_exists=false"
    assert NV.obstruction_theorem_check(C)


def test_decompositions():
    assert list(NV.decompositions((0, 1, 2), 2)) == [((0, 1), (1, 2))]
    assert len(list(NV.decompositions(tuple(range(5)), 2))) == 3
    assert sum(len(list(NV.decompositions(tuple(range(5)), s))) for s in range(1, 5)) == 8
    assert len(NV.all_faces(4)) == 26


def test_obstruction_fixture_files():
    from pathlib import Path
    root = Path(__file__).resolve().parents[1] / "fixtures"
    for corr, name in ((1, "obstruction_k1"), (0, "obstruction_k0")):
        path = root / name
        if path.is_dir():
            path = next(path.glob("*.ainf"))
        C = A.loads(path.read_text())
        assert NV.obstruction_report(C).correlator == corr
