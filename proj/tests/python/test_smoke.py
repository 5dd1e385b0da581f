import itertools
import random

import pytest

import scss_solver as s

TRIANGLE = "p scss 3 3 3 3\nt 1\nt 2\nt 3\na 1 2\na 2 3\na 3 1\n"


def reach(n, arcs):
    r = [[i == j for j in range(n + 1)] for i in range(n + 1)]
    for u, v in arcs:
        r[u][v] = True
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if r[i][k]:
                for j in range(1, n + 1):
                    r[i][j] = r[i][j] or r[k][j]
    return r


def python_optimum(n, arcs, terminals):
    for size in range(len(arcs) + 1):
        for chosen in itertools.combinations(arcs, size):
            r = reach(n, chosen)
            if all(r[a][b] for a in terminals for b in terminals):
                return size
    return None


def test_solve_triangle_exact():
    out = s.solve(TRIANGLE, engine="exact", emit_solution=True)
    assert out["verdict"] == "yes"
    assert out["optimum"] == 3
    assert sorted(map(tuple, out["solution"])) == [(1, 2), (2, 3), (3, 1)]
    assert list(out) == ["verdict", "optimum", "solution", "engine", "trials", "seed", "error_bound", "elapsed_ms"]


def test_solve_triangle_cutcount():
    out = s.solve(TRIANGLE, engine="cutcount", td="s td 1 3 3\nb 1 1 2 3\n", seed=3)
    assert out["verdict"] == "yes"
    assert out["engine"] == "cutcount"
    no = s.solve(TRIANGLE.replace("p scss 3 3 3 3", "p scss 3 3 3 2"), engine="cutcount")
    assert no["verdict"] == "no"
    assert no["error_bound"] == pytest.approx(2.0**-30)


def test_parse_and_digraph():
    inst = s.parse_instance(TRIANGLE)
    d = inst["digraph"]
    assert inst["problem"] == "scss"
    assert d.n == 3 and d.budget == 3
    assert d.arcs == [(1, 2), (2, 3), (3, 1)]
    assert d == s.Digraph(3, [(1, 2), (2, 3), (3, 1)], [1, 2, 3], 3)
    with pytest.raises(s.ScssError):
        s.parse_instance("p scss 3 1 1 3\nt 1\nx\n")
    with pytest.raises(s.ScssError):
        s.Digraph(2, [(1, 1)])


def test_engines_match_python_enumeration():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randint(2, 5)
        arcs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < 0.4]
        terminals = sorted(rng.sample(range(1, n + 1), rng.randint(1, n)))
        d = s.Digraph(n, arcs, terminals, 0)
        want = python_optimum(n, arcs, terminals)
        assert s.solve_exact(d)[0] == want
        assert s.brute_scss(d)[0] == want
        if want is not None and len(terminals) > 1:
            assert s.decide(d.with_budget(want), trials=30, seed=1)
            assert not s.decide(d.with_budget(want - 1), trials=5, seed=1)


def test_kernel_round_trip():
    arcs = [(1, v) for v in range(2, 7)] + [(v, 1) for v in range(2, 7)]
    d = s.Digraph(6, arcs, None, 10)
    reduced, trace = s.kernelize(d)
    assert reduced.n == 2 and reduced.budget == 2
    lifted = s.lift_solution(d, reduced, reduced.arcs, trace)
    assert len(lifted) == 10
    assert python_optimum(6, lifted, list(range(1, 7))) == 10


def test_reductions():
    assert s.solve_ecss(4, [(1, 2), (2, 3), (3, 4), (1, 4)])[0] == 4
    assert s.solve_ecss(3, [(1, 2), (2, 3)])[0] is None
    opt, arcs = s.solve_meg(s.Digraph(3, [(1, 2), (2, 3), (1, 3)]))
    assert opt == 2 and sorted(arcs) == [(1, 2), (2, 3)]
    g = s.setcover_to_scss(3, [[1, 2], [3], [2, 3]], 2)
    assert g.n == 3 + 3 + 2
    assert g.budget == 2 + 2 * 3 + 1


def test_convolutions_against_python():
    rng = random.Random(8)
    u = 5
    size = 1 << u
    f = [rng.randint(0, 1) for _ in range(size)]
    g = [rng.randint(0, 1) for _ in range(size)]
    want = [0] * size
    for a in range(size):
        for b in range(size):
            if a & b == 0:
                want[a | b] ^= f[a] & g[b]
    assert s.subset_convolution_gf2(f, g) == want

    fm = [rng.choice([None, rng.randint(0, 9)]) for _ in range(size)]
    gm = [rng.choice([None, rng.randint(0, 9)]) for _ in range(size)]
    wm = [None] * size
    for a in range(size):
        for b in range(size):
            if a & b == 0 and fm[a] is not None and gm[b] is not None:
                v = fm[a] + gm[b]
                wm[a | b] = v if wm[a | b] is None else min(wm[a | b], v)
    assert s.minplus_subset_convolution(fm, gm, 9) == wm


def test_heuristic_td_text():
    d = s.Digraph(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    text = s.heuristic_td(d)
    assert text.startswith("s td ")
    assert s.decide(d.with_budget(4), td=text)
