from itertools import product

import pytest

from classtower.families import build, cover_quotient, mainline, metabelian_family
from classtower.pc import closure, elementary_abelian
from classtower.fp import FpPresentation
from classtower.pquotient import p_quotient, standardize
from classtower.sigma import (CapacityError, FieldSignature, apply, compose, find_sigma,
                              inverts_frattini_quotient, is_homomorphism, schur_status,
                              shafarevich_admissible)
from groups import heisenberg, random_quotients


def _brute_inverting_hom_exists(G):
    """Search all x_i -> x_i^-1 phi_i with phi_i in Phi(G) for a homomorphism.

    A map fixed on generators and extended along normal words is a homomorphism
    iff f(g v) = f(g) f(v) for every generator g and every element v.
    """
    G = standardize(G)
    first = [k for k, w in enumerate(G.weights) if w == 1]
    phi = closure(G, [G.gen(k) for k, w in enumerate(G.weights) if w > 1])
    frat = [G.identity()]
    for g in phi.gens:
        frat = [G.mul(x, G.pow(g, e)) for x in frat for e in range(G.prime)]
    elems = G.elements()
    gens = [G.gen(k) for k in range(G.ngens)]

    def extend(top):
        # images of all pc generators from the weight-one ones, via products only
        imgs = {}
        for k, d in enumerate(G.definitions):
            if d[0] == "gen":
                imgs[k] = top[first.index(k)]
            elif d[0] == "pow":
                imgs[k] = G.pow(imgs[d[1]], G.prime)
            else:
                imgs[k] = G.comm(imgs[d[1]], imgs[d[2]])
        return [imgs[k] for k in range(G.ngens)]

    def f(imgs, v):
        acc = G.identity()
        for k, e in enumerate(v):
            if e:
                acc = G.mul(acc, G.pow(imgs[k], e))
        return acc

    for choice in product(frat, repeat=len(first)):
        top = [G.mul(G.inv(G.gen(k)), c) for k, c in zip(first, choice)]
        imgs = extend(top)
        if any(f(imgs, G.mul(g, v)) != G.mul(f(imgs, g), f(imgs, v)) for g in gens for v in gens):
            continue
        if all(f(imgs, G.mul(g, v)) == G.mul(f(imgs, g), f(imgs, v)) for g in gens for v in elems):
            return True
    return False


# 3-quotients with no inverting automorphism, found by random search
NO_WITNESS = [
    ([(2, -1, -2, 2, 2, 2, 1)], 3),
    ([(1, -2, 1, 1, 2)], 2),
    ([(-1, 1, -1, -1, -2, -1, 1, -2, 1, -2, 1)], 2),
]


@pytest.mark.parametrize("rels, c", NO_WITNESS)
def test_no_witness_matches_brute_force(rels, c):
    G = p_quotient(FpPresentation(2, rels), 3, c)
    assert find_sigma(G) is None
    assert not _brute_inverting_hom_exists(G)


def _brute_range(G):
    return G.ngens <= 6 and sum(1 for w in standardize(G).weights if w == 1) == 2


@pytest.mark.parametrize("G", [elementary_abelian(2), heisenberg(), build(mainline("Q", 3)),
                               build(mainline("U", 4))]
                         + [G for G in random_quotients() if _brute_range(G)])
def test_witness_existence_matches_brute_force(G):
    assert (find_sigma(G) is not None) == _brute_inverting_hom_exists(G)


def test_witness_is_involutive_automorphism():
    G = standardize(build(metabelian_family("Q", 5, "E14a")))
    w = find_sigma(G)
    assert w is not None and w.inverts_h1
    assert is_homomorphism(G, list(w.images))
    assert inverts_frattini_quotient(G, list(w.images))


def test_elementary_abelian_h2_action():
    # inversion on H^1 fixes the cup product class, so H^2 is not inverted
    G = elementary_abelian(2)
    assert find_sigma(G) is not None
    assert find_sigma(G, check_h2=True) is None
    assert schur_status(G)["class"] == "SchurPlusOne"


def test_capacity_error():
    with pytest.raises(CapacityError):
        find_sigma(build(mainline("Q", 9)), max_lo=10)


@pytest.mark.parametrize("d, status", [
    (cover_quotient(0, 0, 5), {"sigma": True, "d1": 2, "d2": 2, "nu": 0, "class": "Schur"}),
    (cover_quotient(1, 1, 5), {"sigma": True, "d1": 2, "d2": 2, "nu": 0, "class": "Schur"}),
    (metabelian_family("U", 5, "E9b"), {"sigma": True, "d1": 2, "d2": 3, "nu": 0,
                                         "class": "SchurPlusOne"}),
    (metabelian_family("Q", 5, "H4a"), {"sigma": False, "d1": 2, "d2": 4, "nu": 1,
                                         "class": "Neither"}),
])
def test_schur_status_with_h2(d, status):
    assert schur_status(build(d), check_h2=True) == status


def test_q_plus_one_quotient_is_not_a_cover():
    r = schur_status(build(cover_quotient(0, 1, 5)), check_h2=True)
    assert r["d2"] == 3 and r["nu"] == 1 and r["class"] == "Neither"


def test_compose_identity():
    G = heisenberg()
    ident = [G.gen(i) for i in range(3)]
    assert compose(G, ident, ident) == ident
    assert apply(G, ident, (1, 2, 0)) == (1, 2, 0)


@pytest.mark.parametrize("disc, d2, ok, slack", [
    (-3299, 2, True, 0), (-3299, 3, False, -1), (32009, 3, True, 0), (32009, 4, False, -1),
])
def test_shafarevich(disc, d2, ok, slack):
    v = shafarevich_admissible(2, d2, FieldSignature.quadratic(disc))
    assert v.admissible == ok and v.slack == slack


def test_signature_validation():
    with pytest.raises(ValueError):
        FieldSignature(0, 0)
    assert FieldSignature(1, 1, 1).unit_rank == 1
