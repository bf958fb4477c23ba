import pytest
from hypothesis import given
from hypothesis import strategies as st

from blockinv import (GenParams, GuardExceeded, brute_force_generate, canonical_key,
                      chromatic_number, collinearity, generate, has_clique,
                      is_vertex_critical, parse_block_list, pipeline_filter, validate)
from blockinv.gen import VERDICTS
from blockinv.presets import get_design

ORACLE_CASES = [((3, 3, 2, 2), 1), ((4, 4, 2, 2), 2), ((4, 4, 3, 3), 1),
                ((5, 5, 2, 2), 2), ((6, 4, 3, 2), 3), ((6, 6, 3, 3), 7), ((6, 8, 3, 4), 19)]


def keys(designs):
    return sorted(canonical_key(d) for d in designs)


@pytest.mark.parametrize("params,expected", ORACLE_CASES)
def test_generate_matches_brute_force(params, expected):
    p = GenParams(*params)
    gen = list(generate(p))
    assert len(gen) == expected
    assert keys(gen) == keys(brute_force_generate(p))
    assert len(set(keys(gen))) == len(gen)
    for d in gen:
        rep = validate(d)
        assert rep.is_biregular and d.point_degree == params[3]
        assert d.block_size == params[2] and d.num_blocks == params[1]


def test_aronhold_is_the_unique_tetrahedron():
    (d,) = generate(GenParams(4, 4, 3, 3))
    assert canonical_key(d) == canonical_key(get_design("aronhold"))


def test_no_repeated_blocks_option():
    p = GenParams(4, 4, 2, 2, allow_repeated_blocks=False)
    gen = list(generate(p))
    assert len(gen) == 1
    assert keys(gen) == keys(brute_force_generate(p))


def test_params_validation():
    with pytest.raises(ValueError):
        GenParams(4, 4, 3, 2)
    with pytest.raises(ValueError):
        GenParams(2, 1, 4, 2)


def test_guards():
    with pytest.raises(GuardExceeded):
        list(generate(GenParams(15, 9, 5, 3), max_nodes=50))
    with pytest.raises(GuardExceeded):
        brute_force_generate(GenParams(15, 9, 5, 3))


def test_checkpoint_resume(tmp_path):
    p = GenParams(6, 6, 3, 3)
    first = list(generate(p, checkpoint_dir=tmp_path))
    assert sorted(f.name for f in tmp_path.iterdir())[-1] == "level_006.txt"
    # drop the last level so the resume has real work to do
    (tmp_path / "level_006.txt").unlink()
    again = list(generate(p, checkpoint_dir=tmp_path))
    assert keys(again) == keys(first)


# -- pipeline -----------------------------------------------------------------

def test_pipeline_presets():
    assert pipeline_filter(get_design("ottaviani15"), 8).outcome == "viable"
    v = pipeline_filter(get_design("aronhold"), 8)
    assert v.outcome == "rejected_chi" and v.chi == 4
    assert str(v) == "rejected_chi chi=4"
    assert pipeline_filter(get_design("aronhold"), 4).outcome == "viable"
    assert pipeline_filter(get_design("clebsch542"), 6).outcome == "viable"
    assert pipeline_filter(get_design("design943"), 10).outcome == "viable"


def test_pipeline_repeated_vertices():
    # points 0 and 1 share all three blocks; every point has degree 3
    d = parse_block_list("0,1,2; 0,1,3; 0,1,4; 2,3,5; 2,4,5; 3,4,5")
    assert validate(d).vanishes_by_swap
    for target in (2, 5, 8):
        assert pipeline_filter(d, target).outcome == "rejected_repeated_vertices"


def test_pipeline_clique_and_criticality():
    # K4 with a triangle hanging off vertex 3
    d = parse_block_list("0,1,2; 0,1,3; 0,2,3; 1,2,3; 3,4,5")
    v = pipeline_filter(d, 4)
    assert (v.outcome, v.chi) == ("rejected_has_clique", 4)


def test_pipeline_not_vertex_critical_without_clique():
    # 5-cycle with a pendant path: chi 3, no triangle, vertex 6 is removable
    d = parse_block_list("0,1; 1,2; 2,3; 3,4; 4,0; 0,5; 5,6")
    v = pipeline_filter(d, 3)
    assert v.outcome == "rejected_not_vertex_critical" and v.chi == 3


@given(st.sampled_from([(6, 6, 3, 3), (6, 4, 3, 2), (5, 5, 2, 2), (6, 8, 3, 4)]),
       st.integers(2, 7))
def test_pipeline_consistency(params, target):
    for d in generate(GenParams(*params)):
        v = pipeline_filter(d, target)
        assert v.outcome in VERDICTS
        if validate(d).vanishes_by_swap:
            assert v.outcome == "rejected_repeated_vertices"
            continue
        g = collinearity(d)
        if v.outcome == "viable":
            assert chromatic_number(g) == target
            assert is_vertex_critical(g, target)
            assert g.num_vertices == target or not has_clique(g, target)
        if v.outcome == "rejected_chi":
            assert v.chi != target
