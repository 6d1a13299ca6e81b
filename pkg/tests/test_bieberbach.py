import io

import pytest

import goldens
from conftest import random_rep
from flatiso import bieberbach
from flatiso.bieberbach import (BieberbachGroup, column_notation, construct_dim7_pair,
                                construct_family24, construct_main_pair,
                                derive_element_translations, element_translation,
                                find_translations, half_fixed_count,
                                is_sunada_isospectral, is_torsion_free, read_bgf,
                                sunada_table, sunada_table_text)
from flatiso.cohomology import kahler_obstruction, primitive_counts
from flatiso.diagrep import DiagonalRep, fixed_dim, kahler_class, pattern


def test_element_translations_are_mod1_sums():
    g = BieberbachGroup(2, (1, 2), ((1, 0), (1, 1)))
    trans = derive_element_translations(g)
    assert trans[0] == (0, 0)
    assert trans[0b11] == (0, 1)


def test_element_translations_family24_checks():
    g = construct_family24(1)
    starts = {}
    for j, c in enumerate(g.coord_chars):
        starts.setdefault(c, j)
    chi3, chi12 = 4, 3
    b12 = element_translation(g, 0b011)
    assert b12[starts[chi12]] == 1      # half survives: b_1 carries it, b_2 does not
    assert b12[starts[chi3]] == 0       # halves of b_1 and b_2 cancel mod 1


def test_translation_map_is_homomorphism(rng):
    g = construct_family24(3)
    trans = derive_element_translations(g)
    for _ in range(40):
        a, b = rng.randrange(8), rng.randrange(8)
        assert trans[a ^ b] == tuple(x ^ y for x, y in zip(trans[a], trans[b]))


def test_half_fixed_count_examples():
    g, _ = construct_main_pair(3, 8)
    assert half_fixed_count(g, 0) == 0
    assert half_fixed_count(g, 0b001) == 1
    assert half_fixed_count(g, 0b100) == 1  # third generator fixes its half at chi_1
    g13, _ = construct_main_pair(4, 13)
    assert half_fixed_count(g13, 0b0001) == 1
    assert half_fixed_count(g13, 0b0010) == 1


def test_is_torsion_free():
    ga, gb = construct_dim7_pair()
    assert is_torsion_free(ga).ok and is_torsion_free(gb).ok
    flat = BieberbachGroup(2, (1, 2, 3), (((0,) * 3), ((0,) * 3)))
    check = is_torsion_free(flat)
    assert not check.ok and check.witness in (1, 2, 3)
    for j in range(1, 9):
        assert is_torsion_free(construct_family24(j)).ok


def test_torsion_free_needs_positive_fixed_dims(rng):
    # whenever the check passes, every element fixes something
    for _ in range(30):
        rep = random_rep(rng, 3, rng.randrange(3, 9))
        group = find_translations(rep)
        if group is not None:
            assert all(fixed_dim(rep, f) >= 1 for f in range(8))


def test_sunada_table_marginal_is_pattern():
    for g in (*construct_dim7_pair(), construct_family24(5), *construct_main_pair(3, 9)):
        table = sunada_table(g)
        patt = [0] * (g.n + 1)
        for (s, _t), c in table.items():
            patt[s] += c
        assert tuple(patt) == pattern(g.rep)


def test_dim7_sunada_tables():
    ga, gb = construct_dim7_pair()
    assert sunada_table(ga) == goldens.DIM7_SUNADA
    assert sunada_table(gb) == goldens.DIM7_SUNADA
    assert is_sunada_isospectral(ga, gb)


def test_family24_sunada_tables():
    tables = [sunada_table(construct_family24(j)) for j in range(1, 9)]
    expected = dict(goldens.FAMILY24_SUNADA_NONID)
    expected[(24, 0)] = 1
    for t in tables:
        assert t == expected


def test_family24_fixed_dims_and_pattern():
    patterns = set()
    for j in range(1, 9):
        g = construct_family24(j)
        dims = bieberbach.fixed_dims(g)
        row = tuple(dims[m] for m in (1, 2, 4, 3, 5, 6, 7))
        assert row == goldens.FAMILY24_FIXED_DIMS[j]
        assert sorted(row) == [4, 6, 8, 10, 12, 14, 18]
        patterns.add(pattern(g.rep))
    assert len(patterns) == 1
    nonzero = {s: c for s, c in enumerate(patterns.pop()) if c}
    assert nonzero == {4: 1, 6: 1, 8: 1, 10: 1, 12: 1, 14: 1, 18: 1, 24: 1}


def test_family24_rep_rows():
    assert construct_family24(1).rep.to_display() == (10, 6, 3, 2, 1, 1, 1)
    assert construct_family24(8).rep.to_display() == (8, 6, 6, 4, 0, 0, 0)
    with pytest.raises(ValueError):
        construct_family24(9)


def test_is_sunada_isospectral():
    ga, gb = construct_main_pair(3, 8)
    assert is_sunada_isospectral(ga, gb)
    assert is_sunada_isospectral(ga, ga)
    groups = [construct_family24(j) for j in range(1, 9)]
    for i in range(8):
        for j in range(i + 1, 8):
            assert is_sunada_isospectral(groups[i], groups[j])
    with pytest.raises(ValueError):
        is_sunada_isospectral(ga, construct_dim7_pair()[0])


DIM8_GAMMA_TEXT = """\
block   coord  B1   B2   B3
chi_1   1      -1    1    1½
chi_1   2      -1    1    1
chi_2   3       1½  -1    1
chi_2   4       1   -1    1
chi_23  5       1   -1½  -1
chi_23  6       1   -1   -1
chi_3   7       1    1½  -1
chi_3   8       1    1   -1"""


def test_main_pair_dim8_matches_fixed_column_data():
    gamma, gamma_p = construct_main_pair(3, 8)
    assert gamma.rep.to_display() == (2, 2, 2, 0, 0, 2, 0)
    assert gamma_p.rep.to_display() == (3, 1, 2, 0, 1, 1, 0)
    # coordinate blocks chi_1 | chi_2 | chi_23 | chi_3 and chi_1 | chi_13 | chi_2 | chi_23 | chi_3
    assert gamma.coord_chars == (1, 1, 2, 2, 6, 6, 4, 4)
    assert gamma_p.coord_chars == (1, 1, 1, 5, 2, 6, 4, 4)
    assert gamma.gen_translations == (
        (0, 0, 1, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 1, 0, 1, 0),
        (1, 0, 0, 0, 0, 0, 0, 0),
    )
    assert gamma_p.gen_translations == (
        (0, 0, 0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, 0, 1, 1, 0),
        (1, 0, 0, 0, 0, 0, 0, 0),
    )
    assert column_notation(gamma) == DIM8_GAMMA_TEXT


def test_main_pair_small_cases():
    gamma, gamma_p = construct_main_pair(3, 7)
    assert gamma.rep.to_display() == (2, 2, 1, 0, 0, 2, 0)
    assert gamma_p.rep.to_display() == (3, 1, 1, 0, 1, 1, 0)
    assert is_torsion_free(gamma).ok and is_torsion_free(gamma_p).ok
    assert is_sunada_isospectral(gamma, gamma_p)


def test_main_pair_parameter_validation():
    with pytest.raises(ValueError):
        construct_main_pair(3, 6)
    with pytest.raises(ValueError):
        construct_main_pair(2, 10)


def test_main_pair_k4():
    gamma, gamma_p = construct_main_pair(4, 13)
    p, pp = primitive_counts(gamma.rep), primitive_counts(gamma_p.rep)
    assert p[4] == 16  # 2^4 * 4*3*2 / 4!
    assert pp[4] > p[4]
    assert pp[5] > p[5]
    assert p[5] == 0 and pp[5] > 0
    assert is_sunada_isospectral(gamma, gamma_p)


@pytest.mark.parametrize("k,q_mult", [(3, 2), (4, 1), (5, 1), (6, 2)])
def test_main_pair_closed_forms(k, q_mult):
    # P_4 and P_5 of the unflipped member against the counting closed forms
    n = 3 * (1 << (k - 2)) + q_mult
    gamma, _ = construct_main_pair(k, n)
    p = primitive_counts(gamma.rep)
    h = 1 << (k - 2)
    assert p[4] == 16 * h * (h - 1) * (h - 2) // 24
    assert p[5] == 16 * q_mult * h * (h - 2) * (h - 4) // 24


def test_find_translations():
    rep = DiagonalRep.from_display(3, (2, 2, 2, 0, 0, 2, 0))
    group = find_translations(rep)
    assert group is not None
    assert is_torsion_free(group).ok
    assert group.rep == rep

    assert find_translations(DiagonalRep(1, (0, 2))) is None
    with pytest.raises(ValueError):
        find_translations(DiagonalRep(2, (4, 0, 0, 0)))


def test_find_translations_wide_smoke(rng):
    rep = DiagonalRep.from_display(3, (1, 1, 1, 1, 1, 1, 1))
    narrow = find_translations(rep)
    wide = find_translations(rep, wide_search=True)
    for g in (narrow, wide):
        if g is not None:
            assert is_torsion_free(g).ok


def test_find_translations_deterministic():
    rep = DiagonalRep.from_display(3, (3, 1, 1, 1, 0, 1, 0))
    assert find_translations(rep) == find_translations(rep)


def test_bgf_roundtrip():
    for group in (*construct_main_pair(3, 8), construct_family24(2), *construct_dim7_pair()):
        text = bieberbach.bgf_text(group)
        back = read_bgf(io.StringIO(text))
        assert back == group
        assert sunada_table(back) == sunada_table(group)


def test_bgf_exact_format():
    gamma, _ = construct_main_pair(3, 8)
    lines = bieberbach.bgf_text(gamma).splitlines()
    assert lines[0] == "BGF1"
    assert lines[1] == "k=3 n=8"
    assert lines[2] == "B1 - - + + + + + +"
    assert lines[3] == "b1 0 0 1 0 0 0 0 0"
    assert len(lines) == 2 + 2 * 3


def test_bgf_accepts_trailing_comments():
    gamma, _ = construct_main_pair(3, 8)
    text = bieberbach.bgf_text(gamma) + "# a remark\n\n# another\n"
    assert read_bgf(io.StringIO(text)) == gamma


@pytest.mark.parametrize("mangle", [
    lambda t: t.replace("BGF1", "BGF2"),
    lambda t: t.replace("k=3", "k=x"),
    lambda t: t.replace("B1", "B9", 1),
    lambda t: t.replace("+", "?", 1),
    lambda t: t.replace("b1 0", "b1 2", 1),
    lambda t: t + "stray line\n",
    lambda t: "\n".join(t.splitlines()[:4]) + "\n",
])
def test_bgf_rejects_malformed(mangle):
    gamma, _ = construct_main_pair(3, 8)
    with pytest.raises(ValueError):
        read_bgf(io.StringIO(mangle(bieberbach.bgf_text(gamma))))


def test_sunada_table_text_suppresses_identity():
    g, _ = construct_main_pair(3, 8)
    text = sunada_table_text(sunada_table(g), g.n)
    assert "c[8,0]" not in text
    assert "c[6,1] = 1" in text
    full = sunada_table_text(sunada_table(g), g.n, include_identity=True)
    assert "c[8,0] = 1" in full


def test_group_validation():
    with pytest.raises(ValueError):
        BieberbachGroup(2, (1, 4), ((0, 0), (0, 0)))   # mask out of range
    with pytest.raises(ValueError):
        BieberbachGroup(2, (1, 2), ((0, 0),))          # missing generator row
    with pytest.raises(ValueError):
        BieberbachGroup(2, (1, 2), ((0, 2), (0, 0)))   # bad numerator


def test_kahler_split_of_main_pair():
    for k, n in ((3, 8), (3, 10), (4, 14)):
        gamma, gamma_p = construct_main_pair(k, n)
        assert kahler_class(gamma.rep) == "kahler"
        assert not kahler_obstruction(gamma.rep)
        assert kahler_obstruction(gamma_p.rep)
