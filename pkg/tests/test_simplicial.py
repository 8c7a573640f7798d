import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import simplex_subcomplexes
from kanfuk.simplicial import (Builder, Cell, Simplex, SimplicialError, SimplicialSet, boundary,
                               collapse, cone, disjoint_union, dumps, empty, glue, horn,
                               identity_map, loads, normalize_word, product,
                               product_with_interval, pushout, standard_simplex, subcomplex,
                               total_degeneracy, validate)


@pytest.mark.parametrize("n,count", [(0, 1), (1, 3), (2, 7), (3, 15), (4, 31)])
def test_standard_simplex_cells(n, count):
    X = standard_simplex(n)
    assert X.n_cells() == count
    assert validate(X).ok


def test_delta1_has_three_one_simplices():
    # monotone maps [1] -> [1]
    assert len(standard_simplex(1).simplices(1)) == 3


@pytest.mark.parametrize("n", range(0, 4))
@pytest.mark.parametrize("k", range(0, 4))
def test_all_simplices_are_monotone_maps(n, k):
    # k-simplices of Delta^n <-> monotone maps [k] -> [n]: C(n + k + 1, k + 1)
    from math import comb
    assert len(standard_simplex(n).simplices(k)) == comb(n + k + 1, k + 1)


def test_boundary_and_horn_counts():
    assert boundary(2)[0].n_cells() == 6
    assert horn(2, 1)[0].n_cells() == 5
    H, inc = horn(1, 0)
    # Lambda^1_0 keeps the face d_1 = vertex 0
    assert H.n_cells() == 1 and H.cells_in(0) == [Cell(0, "0")]
    assert inc.check().ok


@pytest.mark.parametrize("n,k", [(0, 0), (2, 3), (3, -1)])
def test_horn_out_of_range(n, k):
    with pytest.raises(SimplicialError):
        horn(n, k)


def test_normal_form_rewrites():
    # s_0 s_1 = s_2 s_0 ; s_1 s_1 = s_2 s_1
    assert normalize_word((0, 1)) == (2, 0)
    assert normalize_word((1, 1)) == (2, 1)
    assert normalize_word((2, 0)) == (2, 0)


def test_face_through_degeneracy_identities():
    X = standard_simplex(2)
    x = Simplex(Cell(2, "012"))
    for j in range(3):
        y = X.degeneracy(x, j)
        assert X.face(y, j) == x and X.face(y, j + 1) == x


def _monotone_pairs(p: int, q: int, n: int):
    """Injective monotone maps [n] -> [p] x [q] (brute force)."""
    pts = list(itertools.product(range(p + 1), range(q + 1)))
    out = 0
    for seq in itertools.combinations(pts, n + 1):
        if all(a[0] <= b[0] and a[1] <= b[1] for a, b in zip(seq, seq[1:])):
            out += 1
    return out


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_product_with_interval_counts_match_enumeration(p):
    P = product_with_interval(standard_simplex(p)).space
    for n in range(p + 2):
        assert P.n_cells(n) == _monotone_pairs(p, 1, n)
    assert validate(P).ok


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_product_counts_general(p, q):
    P = product(standard_simplex(p), standard_simplex(q)).space
    assert [P.n_cells(n) for n in range(p + q + 1)] == [_monotone_pairs(p, q, n)
                                                        for n in range(p + q + 1)]


def test_product_examples():
    assert product_with_interval(standard_simplex(0)).space.counts() == (2, 1)
    assert product_with_interval(standard_simplex(1)).space.n_cells(2) == 2
    assert product_with_interval(standard_simplex(2)).space.n_cells(3) == 3


def test_product_projections_are_maps():
    pr = product_with_interval(boundary(2)[0])
    assert pr.proj_left.check().ok and pr.proj_right.check().ok


def test_cone_examples():
    C, inc = cone(boundary(1)[0])
    assert C.n_cells() == 5 and inc.check().ok
    assert cone(empty())[0].counts() == (1,)


def test_glue_circle_and_noop():
    D = standard_simplex(1)
    Q, proj = glue(D, [(Cell(0, "0"), Cell(0, "1"))])
    assert Q.counts() == (1, 1)
    assert proj.check().ok
    same, _ = glue(D, [])
    assert same.counts() == D.counts()


def test_glue_s3():
    D = standard_simplex(3)
    base = Cell(0, "0")
    ids = [(c, total_degeneracy(base, c.dim)) for c in D.all_cells() if c.dim < 3]
    Q, _ = glue(D, ids)
    assert Q.n_cells() == 2 and validate(Q).ok


def test_glue_dimension_mismatch():
    D = standard_simplex(1)
    with pytest.raises(SimplicialError):
        glue(D, [(Cell(0, "0"), Cell(1, "01"))])


def test_pushout_examples():
    P0 = standard_simplex(0)
    E = empty()
    f = SimplicialMapOf(E, P0)
    P, _, _ = pushout(f, f)
    assert P.counts() == (2,)
    X = standard_simplex(2)
    A, inc = boundary(2)
    Q, _, _ = pushout(inc, identity_map(A))
    assert Q.counts() == X.counts()


def SimplicialMapOf(src, tgt):
    from kanfuk.simplicial import SimplicialMap
    return SimplicialMap(src, tgt, {})


def test_pushout_rejects_non_injective():
    from kanfuk.simplicial import SimplicialMap
    A = disjoint_union(standard_simplex(0), standard_simplex(0))[0]
    squash = SimplicialMap(A, standard_simplex(0), {c: Simplex(Cell(0, "0")) for c in A.all_cells()})
    with pytest.raises(SimplicialError):
        pushout(squash, identity_map(A))


def test_validate_names_identity():
    X = standard_simplex(2)
    faces = dict(X.faces)
    # d_0 of the top cell now points at the wrong edge
    faces[(Cell(2, "012"), 0)] = Simplex(Cell(1, "01"))
    bad = SimplicialSet(X.cells, faces, {}, X.dimension_bound)
    rep = validate(bad)
    assert not rep.ok
    assert rep.identity.startswith("d_0 d_")
    assert rep.cell == Cell(2, "012")


def test_validate_missing_face_and_bad_word():
    X = standard_simplex(1)
    faces = dict(X.faces)
    del faces[(Cell(1, "01"), 1)]
    assert validate(SimplicialSet(X.cells, faces)).identity == "face table"
    faces = dict(X.faces)
    faces[(Cell(1, "01"), 1)] = Simplex(Cell(0, "0"), (0,))
    assert not validate(SimplicialSet(X.cells, faces)).ok


def test_builder_rejects_duplicates_and_wrong_arity():
    b = Builder()
    b.add(0, "a")
    with pytest.raises(SimplicialError):
        b.add(0, "a")
    with pytest.raises(SimplicialError):
        b.add(1, "e", [Cell(0, "a")])


def test_collapse_edge():
    X = standard_simplex(1)
    Q, _ = collapse(X, [Cell(1, "01")])
    assert Q.counts() == (1,)


def test_round_trip_text():
    X = cone(boundary(3)[0])[0]
    assert loads(dumps(X)) == X


def test_loads_rejects_garbage():
    with pytest.raises(SimplicialError):
        loads("not a model\n")


@settings(max_examples=60, deadline=None)
@given(simplex_subcomplexes())
def test_constructors_validate(X):
    assert validate(X).ok
    C, inc = cone(X)
    assert validate(C).ok and inc.check().ok
    assert C.euler_characteristic() == 1
    assert validate(product_with_interval(X).space).ok


@settings(max_examples=60, deadline=None)
@given(simplex_subcomplexes())
def test_noop_glue_keeps_euler_characteristic(X):
    Q, _ = glue(X, [])
    assert Q.euler_characteristic() == X.euler_characteristic()
    if X.n_cells(1):
        e = X.cells_in(1)[0]
        # identifying an edge with itself is also a no-op
        Q2, _ = glue(X, [(e, e)])
        assert Q2.counts() == X.counts()


@settings(max_examples=30, deadline=None)
@given(simplex_subcomplexes(max_n=3))
def test_cylinder_has_same_homology(X):
    P = product_with_interval(X).space
    top = X.top_dim + 1
    assert oracles.homology_signature(P, top) == oracles.homology_signature(X, top)


@settings(max_examples=40, deadline=None)
@given(simplex_subcomplexes(), st.data())
def test_vertex_gluing_stays_valid(X, data):
    vs = X.cells_in(0)
    pairs = data.draw(st.lists(st.tuples(st.sampled_from(vs), st.sampled_from(vs)), max_size=3))
    Q, proj = glue(X, pairs)
    assert validate(Q).ok and proj.check().ok
    assert Q.n_cells(0) <= X.n_cells(0)


def test_subcomplex_must_be_closed():
    X = standard_simplex(2)
    with pytest.raises(SimplicialError):
        subcomplex(X, [Cell(1, "01")])
