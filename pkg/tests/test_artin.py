import pytest

from classtower.artin import (Ati2Entry, RankError, Transfer, Tkt, artin_pattern, format_ati2,
                              parse_ati2, relabel, tkt, tkt_canonical, tkt_name)
from classtower.families import build, mainline, metabelian_family
from classtower.invariants import TypeInvariants
from classtower.pc import derived_subgroup, elementary_abelian, maximal_subgroups
from groups import cyclic, heisenberg


def _artin_lemma(G, H, x):
    """Transfer of x into H modulo H' by the closed formulas for index p."""
    p = G.prime
    if not H.contains(x):
        return G.pow(x, p)
    g = next(G.gen(i) for i in range(G.ngens) if not H.contains(G.gen(i)))
    acc = G.identity()
    for k in range(p):
        gk = G.pow(g, k)
        acc = G.mul(acc, G.conj(x, gk))
    return acc


@pytest.mark.parametrize("G", [heisenberg(), build(mainline("Q", 4)),
                               build(metabelian_family("U", 5, "E8"))])
def test_transfer_matches_artin_lemma(G):
    for H in maximal_subgroups(G):
        T = Transfer(G, H)
        Hd = derived_subgroup(G, H)
        for i in range(G.ngens):
            x = G.gen(i)
            diff = G.mul(G.inv(T(x)), _artin_lemma(G, H, x))
            assert Hd.contains(diff)


def test_abelian_group_has_total_kernels():
    G = elementary_abelian(2)
    # every transfer of an abelian group to an index-p subgroup is x -> x^p
    assert str(tkt(G)) == "0000"


def test_tkt_needs_two_generators():
    with pytest.raises(RankError):
        tkt(cyclic(2))


def test_mainline_skeleton_types():
    assert tkt_name(artin_pattern(build(mainline("Q", 5)), False).tkt) == "c.18"
    assert tkt_name(artin_pattern(build(mainline("U", 5)), False).tkt) == "c.21"


def test_canonical_is_orbit_minimum():
    k = Tkt.parse("2231")
    can = tkt_canonical(k)
    assert can == tkt_canonical(relabel(k, (4, 3, 2, 1)))
    assert can.entries <= k.entries


def test_ati2_format_round_trip():
    text = "([32;221,(311)^3],[111;221,(111)^3,(11)^9],[21;221,(21)^3]^2)"
    entries = parse_ati2(text)
    assert len(entries) == 4 and len(entries[1].tail) == 13
    assert format_ati2(entries, TypeInvariants.parse("221")) == text


def test_entry_match_ignores_tail_order():
    a = Ati2Entry(TypeInvariants.parse("21"), tuple(TypeInvariants.parse(x) for x in ("31", "221")))
    b = Ati2Entry(TypeInvariants.parse("21"), tuple(TypeInvariants.parse(x) for x in ("221", "31")))
    assert a.matches(b)
