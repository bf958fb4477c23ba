"""Acceptance criteria 1-9, one test per criterion.

The terminal summary prints one PASS/FAIL line per criterion (see conftest).
"""

import math
import random
import time
from itertools import permutations, product

import numpy as np
import pytest

from blockinv import (FormSet, PointPermutation, brute_force_evaluate,
                      brute_force_generate, canonical_key, chromatic_number, collinearity,
                      det, evaluate, generate, is_design_automorphism, is_vertex_critical,
                      pipeline_filter, validate)
from blockinv.cli import main
from blockinv.evaluate import _crt, _primes
from blockinv.gen import GenParams
from blockinv.presets import OMEGA, PAPER8, TAU, get_design

REF_FORMS = FormSet(PAPER8)


def cli(capsys, *argv):
    code = main(list(argv))
    out, _ = capsys.readouterr()
    assert code == 0
    return out.strip()


def random_forms(rng, r, dim, lo=-5, hi=5):
    return FormSet(tuple(tuple(rng.randint(lo, hi) for _ in range(dim)) for _ in range(r)))


@pytest.fixture(scope="module")
def reference_value():
    return evaluate(get_design("ottaviani15"), REF_FORMS)


def test_criterion_1_coloring_count(capsys):
    t = time.perf_counter()
    out = cli(capsys, "colorings", "ottaviani15", "--colors", "8")
    elapsed = time.perf_counter() - t
    print(f"count={out} seconds={elapsed:.1f}")
    assert int(out) == 38_707_200
    assert elapsed <= 120


def test_criterion_2_nonvanishing_value(capsys):
    value = int(cli(capsys, "eval", "ottaviani15", "--preset", "paper8"))
    print(f"value={value} = {value // 57600} x 57600")
    assert abs(value) == 1_843_200


def test_criterion_3_sign_consistency(capsys, reference_value):
    alt = int(cli(capsys, "eval", "ottaviani15-alt", "--preset", "paper8"))
    assert alt == reference_value


def test_criterion_4_chromatic_property(capsys):
    d = get_design("ottaviani15")
    assert evaluate(d, REF_FORMS.take(7)) == 0
    rng = random.Random(20240704)
    for _ in range(20):
        assert evaluate(d, random_forms(rng, 7, 5)) == 0
    assert cli(capsys, "chi", "ottaviani15") == "8"
    assert is_vertex_critical(collinearity(d), 8)


def test_criterion_5_symmetry(capsys):
    d = get_design("ottaviani15")
    assert cli(capsys, "aut", "ottaviani15") == "12"
    assert cli(capsys, "aut", "ottaviani15", "--collinearity") == "288"
    tau = PointPermutation.from_cycles(TAU, 15)
    omega = PointPermutation.from_cycles(OMEGA, 15)
    assert is_design_automorphism(d, tau) and is_design_automorphism(d, omega)
    assert (tau ** 2).is_identity() and (omega ** 6).is_identity()
    assert tau * omega * tau == omega.inverse()


def test_criterion_6_census(capsys):
    t = time.perf_counter()
    iso = cli(capsys, "census", "isobaric", "--rows", "5", "--cols", "15",
              "--row-sum", "9", "--col-sum", "3")
    elapsed = time.perf_counter() - t
    assert int(iso) == 317_881_154
    assert elapsed <= 10
    assert cli(capsys, "census", "total", "--vars", "35", "--degree", "15") == "1575580702584"
    assert cli(capsys, "census", "cover-bound", "--m", "15") == "12"
    assert cli(capsys, "census", "ah", "--k", "7", "--d", "3", "--n", "4") == "1"
    assert cli(capsys, "census", "ah", "--k", "2", "--d", "2", "--n", "3") == "3"


def test_criterion_7_other_triples():
    rng = random.Random(7)

    clebsch = get_design("clebsch542")
    assert collinearity(clebsch).is_complete() and clebsch.num_points == 6
    for _ in range(10):
        assert evaluate(clebsch, random_forms(rng, 5, 3)) == 0
    assert all(evaluate(clebsch, random_forms(rng, 6, 3)) != 0 for _ in range(3))

    d943 = get_design("design943")
    g = collinearity(d943)
    assert g.is_complete() and g.num_vertices == 10 and g.num_edges == 45
    assert evaluate(d943, random_forms(rng, 9, 4)) == 0
    t = time.perf_counter()
    assert evaluate(d943, random_forms(rng, 10, 4)) != 0
    assert time.perf_counter() - t <= 60

    aron = get_design("aronhold")
    assert evaluate(aron, random_forms(rng, 3, 3)) == 0
    e = FormSet(((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)))
    assert evaluate(aron, e) == brute_force_evaluate(aron, e) != 0


# -- criterion 8 -------------------------------------------------------------------

def unfiltered_sum(design, forms):
    """Sum over all r**P colour maps, with no colouring logic at all.

    Determinants of injective k-tuples are computed directly; tuples with a
    repeated form have two equal rows and contribute zero.  Products are
    reduced modulo enough 31-bit primes and lifted by CRT.  The last points
    are enumerated as a numpy block, the rest in a Python loop.
    """
    r, n, k = len(forms), design.num_points, design.block_size
    flat = [0] * r ** k
    for t in permutations(range(r), k):
        flat[sum(c * r ** (k - 1 - i) for i, c in enumerate(t))] = det(
            [forms.forms[c] for c in t])
    bound = r ** n * max(1, max(abs(x) for x in flat)) ** design.num_blocks
    primes = _primes(math.ceil((2 * bound + 1).bit_length() / 30) + 1)
    outer = 0
    while r ** (n - outer) > 2 ** 21:
        outer += 1
    cols = np.array(list(product(range(r), repeat=n - outer)), dtype=np.int64)
    cols = np.hstack([np.zeros((len(cols), outer), dtype=np.int64), cols])
    weights = np.array([r ** (k - 1 - i) for i in range(k)], dtype=np.int64)
    inside = [b for b in design.blocks if min(b) >= outer]
    mixed = [b for b in design.blocks if min(b) < outer]
    sums = []
    for p in primes:
        tab = np.array([x % p for x in flat], dtype=np.int64)
        base = np.ones(len(cols), dtype=np.int64)
        for b in inside:
            base = base * tab[cols[:, list(b)] @ weights] % p
        acc = 0
        for head in product(range(r), repeat=outer):
            cols[:, :outer] = head
            prod = base
            for b in mixed:
                prod = prod * tab[cols[:, list(b)] @ weights] % p
            acc = (acc + int(prod.sum() % p)) % p
        sums.append(acc)
    return _crt(sums, primes)


SMALL_PRESETS = (["aronhold", "clebsch542"]
                 + [f"catalecticant:{k}" for k in range(1, 8)]
                 + [f"quadric:{n}" for n in range(1, 8)])


def _unimodular(rng, k, negative):
    m = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(3 * k):
        i, j = rng.sample(range(k), 2)
        c = rng.randint(-2, 2)
        for col in range(k):
            m[i][col] += c * m[j][col]
    if negative:
        m[0], m[1] = m[1], m[0]
    return m


def test_criterion_8_property_suites(reference_value):
    rng = random.Random(8)
    for name in ["aronhold", "clebsch542", "catalecticant:3", "quadric:3"]:
        d = get_design(name)
        r = chromatic_number(collinearity(d)) + 1
        fs = random_forms(rng, r, d.block_size, -3, 3)
        while (base := evaluate(d, fs)) == 0:
            fs = random_forms(rng, r, d.block_size, -3, 3)
        for t in (-1, 2, 3):
            assert evaluate(d, fs.scale(t)) == t ** (d.num_points * d.point_degree) * base
        for i in range(10):
            m = _unimodular(rng, d.block_size, negative=i % 2 == 1)
            assert evaluate(d, fs.transform(m)) == det(m) ** d.num_blocks * base
        shuffled = list(fs.forms)
        rng.shuffle(shuffled)
        assert evaluate(d, FormSet(tuple(shuffled))) == base

    swap = [d for d in generate(GenParams(6, 6, 3, 3)) if validate(d).vanishes_by_swap]
    assert swap
    for d in swap:
        for _ in range(5):
            assert evaluate(d, random_forms(rng, 6, 3)) == 0

    ott = get_design("ottaviani15")
    for parts in (1, 2, 8, 32):
        assert evaluate(ott, REF_FORMS, parts=parts) == reference_value

    for name in SMALL_PRESETS:
        d = get_design(name)
        assert d.num_points <= 8
        r = chromatic_number(collinearity(d))
        # small entries keep the prime count down; redraw until the value is nonzero
        fs = random_forms(rng, r, d.block_size, -3, 3)
        while evaluate(d, fs) == 0:
            fs = random_forms(rng, r, d.block_size, -3, 3)
        assert evaluate(d, fs) == unfiltered_sum(d, fs), name


def test_criterion_9_generation():
    for params, expected in [((3, 3, 2, 2), 1), ((4, 4, 2, 2), 2), ((4, 4, 3, 3), 1)]:
        p = GenParams(*params)
        gen = sorted(canonical_key(d) for d in generate(p))
        assert len(gen) == expected
        assert gen == sorted(canonical_key(d) for d in brute_force_generate(p))
    assert pipeline_filter(get_design("ottaviani15"), 8).outcome == "viable"
    assert pipeline_filter(get_design("ottaviani15-alt"), 8).outcome == "viable"
    v = pipeline_filter(get_design("aronhold"), 8)
    assert (v.outcome, v.chi) == ("rejected_chi", 4)
    assert pipeline_filter(get_design("design943"), 8).outcome == "rejected_chi"
