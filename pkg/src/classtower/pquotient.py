"""p-quotients, p-covering groups and rank invariants.

The quotient is built one layer of the lower exponent-p central series at a
time: every non-defining relation gets a central tail, the overlap tests and
the relators give linear equations on the tails, and the surviving tails form
the next layer.
"""

from dataclasses import dataclass

from . import fp as fpw
from .linalg import rref
from .pc import (PcPresentation, SubgroupCGS, closure, derived_series,
                 quotient as pc_quotient, frattini_rank)

DEFAULT_CLASS_CAP = 40


class TailSystemError(RuntimeError):
    """A tail system had no solution of the expected shape (internal guard)."""


@dataclass(frozen=True)
class RankReport:
    d1: int
    d2: int
    nu: int


class _Tails:
    """The extension of G by one free central tail per non-defining relation."""

    def __init__(self, G, extra=0):
        n = G.ngens
        defined = set()
        for d in G.definitions:
            if d is not None and d[0] != "gen":
                defined.add(d)
        tails = []
        for j in range(n):
            if ("pow", j) not in defined:
                tails.append(("pow", j))
            for i in range(j):
                if ("comm", j, i) not in defined:
                    tails.append(("comm", j, i))
        self.G = G
        self.tails = tails
        self.m = len(tails)
        self.extra = extra
        total = n + self.m + extra
        powers = []
        comms = {}
        index = {t: n + k for k, t in enumerate(tails)}
        for j in range(n):
            w = list(G.power_rhs[j])
            if ("pow", j) in index:
                w.append((index[("pow", j)], 1))
            powers.append(tuple(w))
            for i in range(j):
                w = list(G.comm_rhs.get((j, i), ()))
                if ("comm", j, i) in index:
                    w.append((index[("comm", j, i)], 1))
                if w:
                    comms[(j, i)] = tuple(w)
        powers.extend([()] * (self.m + extra))
        self.E = PcPresentation(G.prime, total, powers, comms)

    def eligible(self, c):
        G = self.G
        w = G.weights
        out = []
        for t in self.tails:
            if t[0] == "pow":
                out.append(w[t[1]] == c)
            else:
                out.append(w[t[1]] == c and w[t[2]] == 1)
        return out

    def consistency_rows(self):
        n = self.G.ngens
        rows = []
        for lhs, rhs in _pairs(self.E, n):
            if lhs[:n] != rhs[:n]:
                raise TailSystemError("presentation is not consistent")
            row = [(a - b) % self.G.prime for a, b in zip(lhs[n:], rhs[n:])]
            if any(row):
                rows.append(row)
        return rows


def _pairs(E, n):
    """Overlap tests of E restricted to its first n generators."""
    p = E.prime
    gens = [E.gen(i) for i in range(n)]
    for k in range(n):
        for j in range(k):
            kj = E.mul(gens[k], gens[j])
            for i in range(j):
                yield (E.mul(kj, gens[i]), E.mul(gens[k], E.mul(gens[j], gens[i])))
    for j in range(n):
        wj = E.power_word(j)
        for i in range(j):
            yield (E.mul(wj, gens[i]), E.mul(E.gen(j, p - 1), E.mul(gens[j], gens[i])))
            yield (E.mul(gens[j], E.power_word(i)),
                   E.mul(E.mul(gens[j], E.gen(i, p - 1)), gens[i]))
        yield (E.mul(wj, gens[j]), E.mul(gens[j], wj))


def _layer_quotient(G, tails, rows, order, weight, new_defs):
    """Quotient of the tail extension by the row space of ``rows``.

    Returns (presentation, free tail columns, map from tail vectors to layer words).
    """
    p = G.prime
    n = G.ngens
    m = len(order)
    red, pivots = rref(rows, m, p, order=order)
    pivset = set(pivots)
    free = [k for k in range(m) if k not in pivset]
    fpos = {k: n + a for a, k in enumerate(free)}
    subst = {pc: r for r, pc in zip(red, pivots)}

    def image(vec):
        out = {}
        for k, x in enumerate(vec):
            if not x:
                continue
            if k in subst:
                r = subst[k]
                for f in free:
                    if r[f]:
                        out[f] = (out.get(f, 0) - x * r[f]) % p
            else:
                out[k] = (out.get(k, 0) + x) % p
        return tuple((fpos[f], e) for f, e in sorted(out.items()) if e)

    tidx = {t: k for k, t in enumerate(tails)}

    def unit(t):
        v = [0] * m
        v[tidx[t]] = 1
        return v

    powers = []
    comms = {}
    for j in range(n):
        w = G.power_rhs[j]
        if ("pow", j) in tidx:
            w = w + image(unit(("pow", j)))
        powers.append(w)
        for i in range(j):
            w = G.comm_rhs.get((j, i), ())
            if ("comm", j, i) in tidx:
                w = w + image(unit(("comm", j, i)))
            if w:
                comms[(j, i)] = w
    powers.extend([()] * len(free))
    weights = list(G.weights) + [weight] * len(free)
    defs = list(G.definitions) + [new_defs(f) for f in free]
    Q = PcPresentation(p, n + len(free), powers, comms, weights, defs)
    return Q, free, image


class QuotientState:
    """A class-c quotient together with the images of the fp generators."""

    def __init__(self, F, G, images):
        self.F = F
        self.G = G
        self.images = images

    @property
    def p_class(self):
        return max(self.G.weights) if self.G.ngens else 0


def _exponent_sums(word, ngens):
    v = [0] * ngens
    for x in word:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


def class_one(F, p):
    m = F.ngens
    rows = [_exponent_sums(r, m) for r in F.relators]
    red, pivots = rref(rows, m, p, order=list(reversed(range(m))))
    free = [k for k in range(m) if k not in pivots]
    d = len(free)
    pos = {k: a for a, k in enumerate(free)}
    G = PcPresentation(p, d, [()] * d, {}, [1] * d, [("gen", k) for k in free])
    images = []
    rowof = {pc: r for r, pc in zip(red, pivots)}
    for k in range(m):
        v = [0] * d
        if k in pos:
            v[pos[k]] = 1
        else:
            r = rowof[k]
            for f in free:
                v[pos[f]] = (-r[f]) % p
        images.append(tuple(v))
    return QuotientState(F, G, images)


def _evaluate(E, images, word, inverse):
    acc = E.identity()
    k = 0
    while k < len(word):
        x = word[k]
        run = 1
        while k + run < len(word) and word[k + run] == x:
            run += 1
        k += run
        g = abs(x) - 1
        if x > 0:
            img = images[g]
        else:
            if g not in inverse:
                inverse[g] = E.inv(images[g])
            img = inverse[g]
        if run > 1:
            img = E.pow(img, run)
        acc = E.mul(acc, img)
    return acc


def next_class(state):
    """Extend a class-c quotient to class c+1; returns None if it is stable."""
    G = state.G
    F = state.F
    p = G.prime
    n = G.ngens
    c = state.p_class
    defining = {d[1] for d in G.definitions if d is not None and d[0] == "gen"}
    nondef = [k for k in range(F.ngens) if k not in defining]
    T = _Tails(G, extra=len(nondef))
    E = T.E
    m = T.m
    q = len(nondef)
    images = []
    for k in range(F.ngens):
        v = list(state.images[k]) + [0] * (m + q)
        if k in nondef:
            v[n + m + nondef.index(k)] = 1
        images.append(tuple(v))
    rows = [r + [0] * q for r in T.consistency_rows()]
    inverse = {}

    def word_eval(w):
        return _evaluate(E, images, w, inverse)

    for rel in F.expressions:
        val = fpw.evaluate(rel, E, word_eval)
        if any(val[:n]):
            raise TailSystemError("relator does not hold in the previous quotient")
        row = list(val[n:])
        if any(row):
            rows.append(row)
    elig = T.eligible(c) + [False] * q
    cols = list(range(m + q))
    order = [k for k in cols if not elig[k]] + list(reversed([k for k in cols if elig[k]]))
    all_tails = T.tails + [("fp", k) for k in nondef]
    Q, free, image = _layer_quotient(G, all_tails, rows, order, c + 1,
                                     lambda f: all_tails[f])
    for f in free:
        if not elig[f]:
            raise TailSystemError(f"non-defining tail {all_tails[f]} survived")
    if not free:
        return None
    new_images = []
    for k in range(F.ngens):
        base = state.images[k]
        vec = [0] * (m + q)
        if k in nondef:
            vec[m + nondef.index(k)] = 1
        w = list(base) + [0] * len(free)
        for g, e in image(vec):
            w[g] = (w[g] + e) % p
        new_images.append(tuple(w))
    return QuotientState(F, Q, new_images)


def p_quotient_state(F, p=3, class_bound=DEFAULT_CLASS_CAP):
    if class_bound < 1:
        raise ValueError("class bound must be at least 1")
    state = class_one(F, p)
    if state.G.ngens == 0:
        return state
    c = 1
    while c < class_bound:
        nxt = next_class(state)
        if nxt is None or nxt.G.ngens == state.G.ngens:
            break
        state = nxt
        c += 1
    return state


def p_quotient(F, p=3, class_bound=DEFAULT_CLASS_CAP):
    """Largest p-quotient of F of lower exponent-p class at most class_bound."""
    return p_quotient_state(F, p, class_bound).G


@dataclass
class Cover:
    group: PcPresentation
    cover: PcPresentation
    multiplicator: SubgroupCGS
    nucleus: SubgroupCGS
    tail_defs: list

    @property
    def d2(self):
        return self.multiplicator.log_order

    @property
    def nu(self):
        return self.nucleus.log_order


def fp_from_pc(G):
    """Relators of a pc presentation on its own generators."""
    n = G.ngens
    rels = []

    def word(sparse):
        out = ()
        for k, e in sparse:
            out = out + (k + 1,) * e
        return out

    for i in range(n):
        rels.append(fpw.mul(fpw.power((i + 1,), G.prime), fpw.inv(word(G.power_rhs[i]))))
    for j in range(n):
        for i in range(j):
            rels.append(fpw.mul(fpw.comm((j + 1,), (i + 1,)), fpw.inv(word(G.comm_rhs.get((j, i), ())))))
    return fpw.FpPresentation(n, rels)


def has_definitions(G):
    if G.definitions is None or G.weights is None:
        return False
    if any(G.weights[k] > G.weights[k + 1] for k in range(G.ngens - 1)):
        return False
    for k, d in enumerate(G.definitions):
        if G.weights[k] == 1:
            if d is None or d[0] != "gen":
                return False
            continue
        if d is None or d[0] == "gen":
            return False
        rhs = G.power_rhs[d[1]] if d[0] == "pow" else G.comm_rhs.get((d[1], d[2]), ())
        if rhs != ((k, 1),):
            return False
    return True


def standardize(G):
    """An isomorphic presentation with weights and definition tags."""
    if has_definitions(G):
        return G
    H = p_quotient(fp_from_pc(G), G.prime, class_bound=max(G.ngens, 1))
    if H.ngens != G.ngens:
        raise TailSystemError("re-derived presentation has the wrong order")
    return H


def p_cover(G):
    G = standardize(G)
    n = G.ngens
    c = max(G.weights) if n else 0
    T = _Tails(G)
    rows = T.consistency_rows()
    elig = T.eligible(c)
    cols = list(range(T.m))
    order = [k for k in cols if not elig[k]] + list(reversed([k for k in cols if elig[k]]))
    C, free, image = _layer_quotient(G, T.tails, rows, order, c + 1, lambda f: T.tails[f])
    mult = SubgroupCGS(C, [C.gen(n + a) for a in range(len(free))])
    nuc_words = []
    for k, t in enumerate(T.tails):
        if elig[k]:
            v = [0] * T.m
            v[k] = 1
            w = [0] * C.ngens
            for g, e in image(v):
                w[g] = e
            nuc_words.append(tuple(w))
    nucleus = closure(C, nuc_words)
    return Cover(G, C, mult, nucleus, [T.tails[f] for f in free])


def multiplicator_rank(G):
    return p_cover(G).d2


def nuclear_rank(G):
    return p_cover(G).nu


def rank_report(G):
    cov = p_cover(G)
    return RankReport(frattini_rank(cov.group), cov.d2, cov.nu)


def metabelianization(G):
    """G/G'' as a presentation with weights and definitions."""
    ds = derived_series(G)
    if len(ds) < 3 or not ds[2].gens:
        return standardize(G)
    return standardize(pc_quotient(G, ds[2]))
