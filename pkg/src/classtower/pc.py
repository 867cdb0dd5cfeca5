"""Power-commutator presentations of finite p-groups.

Generators are indexed from 0 internally and written g1, g2, ... in text.
Commutators are [a, b] = a^-1 b^-1 a b and conjugates are a^b = b^-1 a b.
"""

import re

from .invariants import TypeInvariants


class PresentationError(ValueError):
    pass


class NotNormalError(ValueError):
    pass


def _sparse(vec):
    return tuple((k, e) for k, e in enumerate(vec) if e)


class PcPresentation:
    """A weighted power-commutator presentation.

    ``power_rhs[i]`` and ``comm_rhs[(j, i)]`` (j > i) are sparse normal words,
    tuples of (generator, exponent) pairs in strictly higher generators.
    Definitions are None, ("gen", k), ("pow", j) or ("comm", j, i).
    """

    def __init__(self, prime, ngens, power_rhs, comm_rhs, weights=None, definitions=None,
                 strict=True):
        self.prime = prime
        self.ngens = ngens
        self.power_rhs = tuple(tuple(sorted((k, e % prime) for k, e in w if e % prime)) for w in power_rhs)
        self.comm_rhs = {}
        for (j, i), w in comm_rhs.items():
            w = tuple(sorted((k, e % prime) for k, e in w if e % prime))
            if w:
                self.comm_rhs[(j, i)] = w
        self.weights = tuple(weights) if weights is not None else None
        self.definitions = tuple(definitions) if definitions is not None else None
        if len(self.power_rhs) != ngens:
            raise PresentationError("one power relation per generator is required")
        for i, w in enumerate(self.power_rhs):
            if any(k <= i for k, _ in w):
                raise PresentationError(f"power relation of g{i + 1} is not in higher generators")
        for (j, i), w in self.comm_rhs.items():
            if not (0 <= i < j < ngens):
                raise PresentationError(f"bad commutator pair ({j + 1},{i + 1})")
            if any(k < j or (k == j and strict) for k, _ in w):
                raise PresentationError(f"[g{j + 1},g{i + 1}] is not in higher generators")
        self._prepare()

    def _prepare(self):
        n = self.ngens
        self._noncomm = [[] for _ in range(n)]
        self._conj = {}
        for (j, i), w in sorted(self.comm_rhs.items()):
            self._noncomm[i].append(j)
            # g_j^{g_i} = g_j [g_j, g_i] as a normal word
            if w[0][0] == j:
                self._conj[(j, i)] = ((j, 1 + w[0][1]),) + w[1:]
            else:
                self._conj[(j, i)] = ((j, 1),) + w
        for lst in self._noncomm:
            lst.sort()

    # element arithmetic

    def identity(self):
        return (0,) * self.ngens

    def gen(self, i, e=1):
        v = [0] * self.ngens
        v[i] = e % self.prime
        return tuple(v)

    def _run(self, e, stack):
        p = self.prime
        n = self.ngens
        noncomm = self._noncomm
        conj = self._conj
        powers = self.power_rhs
        while stack:
            g, a = stack.pop()
            k0 = -1
            for k in noncomm[g]:
                if e[k]:
                    k0 = k
                    break
            if k0 < 0:
                s = e[g] + a
                if s < p:
                    e[g] = s
                    continue
                e[g] = s - p
                tail = [(j, e[j]) for j in range(g + 1, n) if e[j]]
                for j, _ in tail:
                    e[j] = 0
                for j, b in powers[g]:
                    e[j] = b
                for item in reversed(tail):
                    stack.append(item)
                continue
            if a > 1:
                stack.append((g, a - 1))
            moved = [(j, e[j]) for j in range(k0, n) if e[j]]
            for j, _ in moved:
                e[j] = 0
            for j, b in reversed(moved):
                w = conj.get((j, g))
                if w is None:
                    stack.append((j, b))
                    continue
                for _ in range(b):
                    stack.extend(reversed(w))
            s = e[g] + 1
            if s < p:
                e[g] = s
                continue
            e[g] = 0
            kept = [(j, e[j]) for j in range(g + 1, k0) if e[j]]
            for j, _ in kept:
                e[j] = 0
            for j, b in powers[g]:
                e[j] = b
            for item in reversed(kept):
                stack.append(item)
        return e

    def mul(self, u, v):
        e = list(u)
        stack = [(k, x) for k, x in enumerate(v) if x]
        stack.reverse()
        return tuple(self._run(e, stack))

    def mul_letters(self, u, letters):
        """u times a product of (generator, positive exponent) letters."""
        e = list(u)
        stack = list(reversed(letters))
        return tuple(self._run(e, stack))

    def inv(self, u):
        p = self.prime
        cur = list(u)
        out = [0] * self.ngens
        for i in range(self.ngens):
            a = (-cur[i]) % p
            if a:
                out[i] = a
                cur = self._run(cur, [(i, a)])
        return tuple(out)

    def pow(self, u, k):
        if k < 0:
            u = self.inv(u)
            k = -k
        result = self.identity()
        base = u
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def comm(self, u, v):
        return self.mul(self.inv(self.mul(v, u)), self.mul(u, v))

    def conj(self, u, v):
        """u^v = v^-1 u v."""
        return self.mul(self.inv(v), self.mul(u, v))

    def word(self, letters):
        """Evaluate a list of (generator, integer exponent) letters."""
        e = [0] * self.ngens
        p = self.prime
        for g, a in letters:
            if 0 < a < p:
                e = self._run(e, [(g, a)])
            elif a:
                e = list(self.mul(tuple(e), self.pow(self.gen(g), a)))
        return tuple(e)

    def order(self, u):
        k = 1
        x = u
        while any(x):
            x = self.pow(x, self.prime)
            k *= self.prime
        return k

    def elements(self):
        """All normal words, in lexicographic exponent order."""
        from itertools import product
        return [tuple(v) for v in product(range(self.prime), repeat=self.ngens)]

    # relations

    def power_word(self, i):
        return self._dense(self.power_rhs[i])

    def comm_word(self, j, i):
        return self._dense(self.comm_rhs.get((j, i), ()))

    def _dense(self, sparse):
        v = [0] * self.ngens
        for k, e in sparse:
            v[k] = e
        return tuple(v)

    @property
    def log_order(self):
        return self.ngens

    @property
    def order_value(self):
        return self.prime ** self.ngens

    def rank(self):
        """Number of generators of weight 1, when weights are known."""
        if self.weights is None:
            return frattini_rank(self)
        return sum(1 for w in self.weights if w == 1)

    def __eq__(self, other):
        return (isinstance(other, PcPresentation) and self.prime == other.prime
                and self.ngens == other.ngens and self.power_rhs == other.power_rhs
                and self.comm_rhs == other.comm_rhs)

    def __hash__(self):
        return hash((self.prime, self.ngens, self.power_rhs, tuple(sorted(self.comm_rhs.items()))))

    def __repr__(self):
        return f"<PcPresentation p={self.prime} n={self.ngens}>"


def collect(G, word):
    """Normal form of a word given as (generator, integer exponent) letters."""
    for g, _ in word:
        if not 0 <= g < G.ngens:
            raise IndexError(f"generator index {g} out of range")
    return G.word(word)


def consistency_check(G):
    """Violated overlap tests, as (kind, indices) tuples; empty when consistent."""
    p = G.prime
    n = G.ngens
    bad = []
    gens = [G.gen(i) for i in range(n)]
    for k in range(n):
        for j in range(k):
            for i in range(j):
                lhs = G.mul(G.mul(gens[k], gens[j]), gens[i])
                rhs = G.mul(gens[k], G.mul(gens[j], gens[i]))
                if lhs != rhs:
                    bad.append(("kji", (k + 1, j + 1, i + 1)))
    for j in range(n):
        wj = G.power_word(j)
        for i in range(j):
            lhs = G.mul(wj, gens[i])
            rhs = G.mul(G.gen(j, p - 1), G.mul(gens[j], gens[i]))
            if lhs != rhs:
                bad.append(("jjj-i", (j + 1, i + 1)))
            wi = G.power_word(i)
            lhs = G.mul(gens[j], wi)
            rhs = G.mul(G.mul(gens[j], G.gen(i, p - 1)), gens[i])
            if lhs != rhs:
                bad.append(("j-iii", (j + 1, i + 1)))
        if G.mul(wj, gens[j]) != G.mul(gens[j], wj):
            bad.append(("power", (j + 1,)))
    return bad


def consistency_pairs(G):
    """The overlap tests as pairs of bracketings, for tail computations."""
    p = G.prime
    n = G.ngens
    gens = [G.gen(i) for i in range(n)]
    for k in range(n):
        for j in range(k):
            for i in range(j):
                yield (G.mul(G.mul(gens[k], gens[j]), gens[i]),
                       G.mul(gens[k], G.mul(gens[j], gens[i])))
    for j in range(n):
        wj = G.power_word(j)
        for i in range(j):
            yield (G.mul(wj, gens[i]), G.mul(G.gen(j, p - 1), G.mul(gens[j], gens[i])))
            yield (G.mul(gens[j], G.power_word(i)),
                   G.mul(G.mul(gens[j], G.gen(i, p - 1)), gens[i]))
        yield (G.mul(wj, gens[j]), G.mul(gens[j], wj))


# subgroups

def _lead(w):
    for k, e in enumerate(w):
        if e:
            return k
    return -1


class SubgroupCGS:
    """Canonical generating sequence of a subgroup.

    Each generator has leading exponent 1 and zero exponents at the leading
    positions of the other generators, so equal subgroups have equal CGS.
    """

    def __init__(self, group, gens):
        self.group = group
        self.gens = tuple(sorted(gens, key=_lead))
        self.depths = tuple(_lead(g) for g in self.gens)
        self._table = None

    @property
    def index(self):
        return self.group.prime ** (self.group.ngens - len(self.gens))

    @property
    def log_order(self):
        return len(self.gens)

    def table(self):
        if self._table is None:
            G = self.group
            self._table = {d: [G.pow(g, k) for k in range(G.prime)] for d, g in zip(self.depths, self.gens)}
        return self._table

    def sift(self, w):
        return _sift(self.group, self.table(), w)

    def contains(self, w):
        return not any(self.sift(w))

    def __contains__(self, w):
        return self.contains(w)

    def __eq__(self, other):
        return isinstance(other, SubgroupCGS) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __le__(self, other):
        return all(other.contains(g) for g in self.gens)

    def __repr__(self):
        return f"<SubgroupCGS order p^{len(self.gens)} index {self.index}>"


def _sift(G, table, w):
    p = G.prime
    w = tuple(w)
    while True:
        d = _lead(w)
        if d < 0 or d not in table:
            return w
        w = G.mul(w, table[d][p - w[d]])


def closure(G, words, normalizers=()):
    """Smallest subgroup containing ``words`` and normalized by ``normalizers``."""
    p = G.prime
    table = {}
    queue = [tuple(w) for w in words]
    normalizers = [tuple(x) for x in normalizers]
    while queue:
        r = _sift(G, table, queue.pop())
        d = _lead(r)
        if d < 0:
            continue
        r = G.pow(r, pow(r[d], -1, p))
        others = [t[1] for t in table.values()]
        table[d] = [G.pow(r, k) for k in range(p)]
        queue.append(G.pow(r, p))
        for s in others:
            queue.append(G.comm(r, s))
        for x in normalizers:
            queue.append(G.comm(r, x))
    return SubgroupCGS(G, _canonical(G, table))


def _canonical(G, table):
    p = G.prime
    depths = sorted(table)
    out = []
    for d in depths:
        t = table[d][1]
        for d2 in depths:
            if d2 > d and t[d2]:
                t = G.mul(t, table[d2][p - t[d2]])
        out.append(t)
    return out


def subgroup(G, words):
    return closure(G, words)


def whole(G):
    return SubgroupCGS(G, [G.gen(i) for i in range(G.ngens)])


def trivial(G):
    return SubgroupCGS(G, [])


def normal_closure(G, words, ambient=None):
    ambient = whole(G) if ambient is None else ambient
    return closure(G, words, ambient.gens)


def is_normal(G, N, ambient=None):
    ambient = whole(G) if ambient is None else ambient
    return all(N.contains(G.conj(n, g)) for n in N.gens for g in ambient.gens)


def generating_set(G):
    """The defining generators when every other generator carries a checked definition."""
    cached = getattr(G, "_generating_set", None)
    if cached is not None:
        return cached
    out = [G.gen(i) for i in range(G.ngens)]
    defs = G.definitions
    if defs is not None and len(defs) == G.ngens and all(d is not None for d in defs):
        ok = True
        for k, d in enumerate(defs):
            if d[0] == "gen":
                continue
            rhs = G.power_rhs[d[1]] if d[0] == "pow" else G.comm_rhs.get((d[1], d[2]), ())
            if rhs != ((k, 1),):
                ok = False
                break
        if ok:
            out = [G.gen(k) for k, d in enumerate(defs) if d[0] == "gen"]
    G._generating_set = out
    return out


def commutator_subgroup(G, A, B):
    """[A, B] for subgroups normalized by G."""
    gens = generating_set(G)
    if B == whole(G):
        # A is normal, so [A, G] is the normal closure of [a, x] over generators x
        words = [G.comm(a, x) for a in A.gens for x in gens]
    else:
        words = [G.comm(a, b) for a in A.gens for b in B.gens]
    return closure(G, words, gens)


def derived_subgroup(G, H=None):
    H = whole(G) if H is None else H
    words = [G.comm(a, b) for k, a in enumerate(H.gens) for b in H.gens[:k]]
    return closure(G, words, H.gens)


def frattini_subgroup(G, H=None):
    H = whole(G) if H is None else H
    D = derived_subgroup(G, H)
    return closure(G, list(D.gens) + [G.pow(h, G.prime) for h in H.gens], H.gens)


def frattini_rank(G, H=None):
    H = whole(G) if H is None else H
    return H.log_order - frattini_subgroup(G, H).log_order


def factor_basis(G, H, N):
    """Elements of H's CGS at depths not occupied by N (N <= H)."""
    nd = set(N.depths)
    return [h for h, d in zip(H.gens, H.depths) if d not in nd]


def section_coords(G, H, N, w):
    """Exponents of w along factor_basis(H, N), valid modulo normal N."""
    p = G.prime
    table = dict(N.table())
    hd = {d: h for d, h in zip(H.depths, H.gens)}
    fdepths = [d for d in H.depths if d not in table]
    for d in fdepths:
        table[d] = [G.pow(hd[d], k) for k in range(p)]
    coords = {d: 0 for d in fdepths}
    w = tuple(w)
    while True:
        d = _lead(w)
        if d < 0:
            break
        if d not in table:
            raise ValueError("element is not in the subgroup")
        if d in coords:
            coords[d] = (coords[d] + w[d]) % p
        w = G.mul(w, table[d][p - w[d]])
    return [coords[d] for d in fdepths]


def maximal_subgroups(G, H=None):
    """Index-p subgroups of H, ordered by normalized linear form on H/Phi(H).

    Forms v run lexicographically over vectors whose first nonzero entry is 1;
    the subgroup for v is the kernel of x -> sum v_j x_j.
    """
    from itertools import product
    p = G.prime
    H = whole(G) if H is None else H
    F = frattini_subgroup(G, H)
    basis = factor_basis(G, H, F)
    d = len(basis)
    out = []
    for v in product(range(p), repeat=d):
        nz = [k for k in range(d) if v[k]]
        if not nz or v[nz[0]] != 1:
            continue
        a = nz[0]
        words = list(F.gens)
        for j in range(d):
            if j != a:
                words.append(G.mul(basis[j], G.pow(basis[a], -v[j])))
        out.append(closure(G, words))
    return out


def linear_forms(d, p=3):
    from itertools import product
    return [v for v in product(range(p), repeat=d)
            if any(v) and v[[k for k in range(d) if v[k]][0]] == 1]


def abelian_quotient_invariants(G, H=None, N=None):
    """Abelian invariants of H/N, with N defaulting to the derived subgroup of H."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form
    p = G.prime
    H = whole(G) if H is None else H
    N = derived_subgroup(G, H) if N is None else N
    basis = factor_basis(G, H, N)
    r = len(basis)
    if r == 0:
        return TypeInvariants()
    rows = []
    for i, f in enumerate(basis):
        a = section_coords(G, H, N, G.pow(f, p))
        row = [-x for x in a]
        row[i] += p
        rows.append(row)
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    parts = []
    for k in range(r):
        x = abs(int(snf[k, k]))
        e = 0
        while x > 1 and x % p == 0:
            x //= p
            e += 1
        if e:
            parts.append(e)
    return TypeInvariants.of(parts)


def lower_central_series(G):
    series = [whole(G)]
    while series[-1].gens:
        series.append(commutator_subgroup(G, series[-1], whole(G)))
    return series


def derived_series(G):
    series = [whole(G)]
    while series[-1].gens:
        nxt = derived_subgroup(G, series[-1])
        series.append(nxt)
    return series


def exponent_p_central_series(G):
    series = [whole(G)]
    while series[-1].gens:
        S = series[-1]
        C = commutator_subgroup(G, S, whole(G))
        series.append(closure(G, list(C.gens) + [G.pow(s, G.prime) for s in S.gens],
                              [G.gen(i) for i in range(G.ngens)]))
    return series


def series_and_sizes(G):
    lcs = lower_central_series(G)
    ds = derived_series(G)
    cls = len(lcs) - 1
    return {
        "lower_central_series": lcs,
        "derived_series": ds,
        "class": cls,
        "coclass": G.ngens - cls,
        "log_order": G.ngens,
        "derived_length": len(ds) - 1,
    }


def nilpotency_class(G):
    return len(lower_central_series(G)) - 1


def derived_length(G):
    return len(derived_series(G)) - 1


def quotient(G, N):
    """Presentation of G/N on the generators not at depths of N."""
    if not is_normal(G, N):
        raise NotNormalError("subgroup is not normal")
    nd = set(N.depths)
    keep = [k for k in range(G.ngens) if k not in nd]
    pos = {k: m for m, k in enumerate(keep)}
    table = N.table()
    p = G.prime

    def reduce(w):
        w = list(w)
        for d in sorted(nd):
            if w[d]:
                w = list(G.mul(tuple(w), table[d][p - w[d]]))
        return tuple((pos[k], w[k]) for k in keep if w[k])

    powers = [reduce(G.power_word(k)) for k in keep]
    comms = {}
    for a, j in enumerate(keep):
        for i in keep[:a]:
            if (j, i) in G.comm_rhs:
                w = reduce(G.comm_word(j, i))
                if w:
                    comms[(pos[j], pos[i])] = w
    weights = [G.weights[k] for k in keep] if G.weights is not None else None
    return PcPresentation(p, len(keep), powers, comms, weights)


def projection(G, N, Q):
    """Map from words of G to words of Q = quotient(G, N)."""
    nd = set(N.depths)
    keep = [k for k in range(G.ngens) if k not in nd]
    table = N.table()
    p = G.prime

    def f(w):
        w = tuple(w)
        for d in sorted(nd):
            if w[d]:
                w = G.mul(w, table[d][p - w[d]])
        return tuple(w[k] for k in keep)
    return f


def elementary_abelian(rank, p=3):
    return PcPresentation(p, rank, [()] * rank, {}, [1] * rank,
                          [("gen", k) for k in range(rank)])


# text format

def format_word(w):
    if isinstance(w, tuple) and w and not isinstance(w[0], tuple):
        w = _sparse(w)
    if not w:
        return "1"
    return "*".join(f"g{k + 1}" if e == 1 else f"g{k + 1}^{e}" for k, e in w)


def _format_def(d):
    if d is None:
        return "-"
    if d[0] == "gen":
        return f"x{d[1] + 1}"
    if d[0] == "pow":
        return f"g{d[1] + 1}^p"
    return f"[g{d[1] + 1},g{d[2] + 1}]"


def write_presentation(G):
    lines = [f"pc p={G.prime} n={G.ngens}"]
    for i in range(G.ngens):
        lines.append(f"g{i + 1}^p = {format_word(G.power_rhs[i])}")
    for j in range(G.ngens):
        for i in range(j):
            w = G.comm_rhs.get((j, i))
            if w:
                lines.append(f"[g{j + 1},g{i + 1}] = {format_word(w)}")
    if G.weights is not None:
        lines.append("weights " + " ".join(str(x) for x in G.weights))
    if G.definitions is not None:
        lines.append("defs " + " ".join(_format_def(d) for d in G.definitions))
    return "\n".join(lines) + "\n"


_WORD = re.compile(r"^g(\d+)(?:\^(\d+))?$")


def _parse_word(text, lineno):
    text = text.strip()
    if text == "1":
        return ()
    out = []
    for tok in text.split("*"):
        m = _WORD.match(tok.strip())
        if not m:
            raise PresentationError(f"line {lineno}: bad word token {tok!r}")
        out.append((int(m.group(1)) - 1, int(m.group(2) or 1)))
    return tuple(out)


def _parse_def(tok, lineno):
    if tok == "-":
        return None
    m = re.match(r"^x(\d+)$", tok)
    if m:
        return ("gen", int(m.group(1)) - 1)
    m = re.match(r"^g(\d+)\^p$", tok)
    if m:
        return ("pow", int(m.group(1)) - 1)
    m = re.match(r"^\[g(\d+),g(\d+)\]$", tok)
    if m:
        return ("comm", int(m.group(1)) - 1, int(m.group(2)) - 1)
    raise PresentationError(f"line {lineno}: bad definition {tok!r}")


def read_presentation(text):
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise PresentationError("empty presentation")
    m = re.match(r"^pc p=(\d+) n=(\d+)$", lines[0].strip())
    if not m:
        raise PresentationError("line 1: expected 'pc p=<prime> n=<ngens>'")
    p, n = int(m.group(1)), int(m.group(2))
    powers = [()] * n
    comms = {}
    weights = None
    defs = None
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("weights"):
            weights = [int(x) for x in line.split()[1:]]
            continue
        if line.startswith("defs"):
            defs = [_parse_def(t, lineno) for t in line.split()[1:]]
            continue
        lhs, sep, rhs = line.partition("=")
        if not sep:
            raise PresentationError(f"line {lineno}: expected '='")
        lhs = lhs.strip()
        w = _parse_word(rhs, lineno)
        m1 = re.match(r"^g(\d+)\^p$", lhs)
        m2 = re.match(r"^\[g(\d+),g(\d+)\]$", lhs)
        if m1:
            powers[int(m1.group(1)) - 1] = w
        elif m2:
            comms[(int(m2.group(1)) - 1, int(m2.group(2)) - 1)] = w
        else:
            raise PresentationError(f"line {lineno}: bad relation {lhs!r}")
    return PcPresentation(p, n, powers, comms, weights, defs)
