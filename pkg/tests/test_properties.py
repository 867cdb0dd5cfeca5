"""Randomized invariants of the arithmetic and of the transfer machinery."""

from hypothesis import assume, given, settings, strategies as st

from classtower.artin import Transfer, abelianization_elements, Tkt, relabel, tkt, tkt_canonical
from classtower.invariants import TypeInvariants
from classtower.pc import (abelian_quotient_invariants, closure, derived_subgroup,
                           factor_basis, frattini_rank, maximal_subgroups)
from groups import pool

CASES = 1000

POOL = pool()
TWO_GEN = tuple(G for G in POOL if frattini_rank(G) == 2 and G.ngens <= 9)
# transfer kernels name maximal subgroups only when G/G' is (3,3)
BICYCLIC = tuple(G for G in TWO_GEN if abelian_quotient_invariants(G) == TypeInvariants.of([1, 1]))


def _element(G, data):
    return tuple(data.draw(st.lists(st.integers(0, G.prime - 1), min_size=G.ngens,
                                    max_size=G.ngens)))


@settings(max_examples=CASES)
@given(st.sampled_from(POOL), st.data())
def test_collection_is_associative(G, data):
    a, b, c = (_element(G, data) for _ in range(3))
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(a, G.inv(a)) == G.identity()


def _random_in(G, H, data):
    h = G.identity()
    for x in H.gens:
        h = G.mul(h, G.pow(x, data.draw(st.integers(0, G.prime - 1))))
    return h


@settings(max_examples=CASES)
@given(st.sampled_from(TWO_GEN), st.data())
def test_transfer_is_independent_of_transversal(G, data):
    subs = maximal_subgroups(G)
    H = subs[data.draw(st.integers(0, len(subs) - 1))]
    g = next(G.gen(i) for i in range(G.ngens) if not H.contains(G.gen(i)))
    g = G.mul(_random_in(G, H, data), g)
    # one element from each coset H g^m, in shuffled order
    trans = [G.mul(_random_in(G, H, data), G.pow(g, m)) for m in range(G.prime)]
    trans = data.draw(st.permutations(trans))
    x = _element(G, data)
    T1, T2 = Transfer(G, H), Transfer(G, H, trans)
    assert T1.Hd.contains(G.mul(G.inv(T1(x)), T2(x)))


def _log(x, p):
    k = 0
    while x > 1:
        x //= p
        k += 1
    return k


def _brute_invariants(G, H, N):
    """Abelian invariants of H/N from counting elements by order."""
    p = G.prime
    elems = [G.identity()]
    for b in factor_basis(G, H, N):
        elems = [G.mul(e, G.pow(b, k)) for e in elems for k in range(p)]
    level = []
    for e in elems:
        k = 0
        while not N.contains(e):
            e = G.pow(e, p)
            k += 1
        level.append(k)
    top = max(level)
    # log_p of #{x : x^(p^k) in N} is sum_i min(k, a_i)
    c = [_log(sum(1 for v in level if v <= k), p) for k in range(top + 2)]
    ge = [c[k] - c[k - 1] for k in range(1, top + 2)] + [0]
    parts = []
    for k in range(top, 0, -1):
        parts += [k] * (ge[k - 1] - ge[k])
    return TypeInvariants.of(parts)


@settings(max_examples=CASES)
@given(st.sampled_from(POOL), st.data())
def test_abelian_invariants_match_element_orders(G, data):
    gens = [_element(G, data) for _ in range(data.draw(st.integers(1, 3)))]
    H = closure(G, gens)
    Hd = derived_subgroup(G, H)
    extra = [_random_in(G, H, data) for _ in range(data.draw(st.integers(0, 2)))]
    N = closure(G, list(Hd.gens) + extra, H.gens)
    assume(H.log_order - N.log_order <= 5)
    assert abelian_quotient_invariants(G, H, N) == _brute_invariants(G, H, N)


@settings(max_examples=CASES)
@given(st.lists(st.integers(0, 4), min_size=4, max_size=4), st.permutations((1, 2, 3, 4)))
def test_tkt_canonical_under_relabeling(entries, perm):
    k = Tkt(tuple(entries))
    assert tkt_canonical(relabel(k, tuple(perm))) == tkt_canonical(k)


@settings(max_examples=CASES)
@given(st.sampled_from(BICYCLIC), st.permutations((0, 1, 2, 3)))
def test_tkt_of_group_under_subgroup_reordering(G, perm):
    subs = maximal_subgroups(G)
    raw = tkt(G, subs)
    moved = tkt(G, [subs[i] for i in perm])
    assert tkt_canonical(moved) == tkt_canonical(raw)


def test_transfer_kernels_are_nontrivial():
    for G in BICYCLIC:
        elems = abelianization_elements(G)
        for H in maximal_subgroups(G):
            T = Transfer(G, H)
            assert sum(1 for x in elems if T.in_kernel(x)) >= G.prime
