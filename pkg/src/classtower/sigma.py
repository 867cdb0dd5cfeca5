"""Search for automorphisms acting as inversion on H^1 and H^2, and rank bounds.

A candidate sends each generator x_i of weight 1 to x_i^-1 phi_i with phi_i in
the Frattini subgroup.  The phi_i are chosen one weight layer at a time: the
layer-w part only affects the relations modulo the layer w+2, and does so
affinely, so each level is a linear system over F_p.  Directions coming from
inner automorphisms never change solvability and are not branched over.
"""

from dataclasses import dataclass
from itertools import product

from .linalg import nullspace, rank, solve
from .pc import PcPresentation
from .pquotient import p_cover, standardize

DEFAULT_MAX_LO = 10


class CapacityError(ValueError):
    """The group is larger than the configured search ceiling."""


@dataclass(frozen=True)
class SigmaWitness:
    images: tuple
    inverts_h1: bool
    inverts_h2: object = None  # None when not checked


@dataclass(frozen=True)
class FieldSignature:
    r1: int
    r2: int
    theta: int = 0

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0 or self.theta not in (0, 1):
            raise ValueError("bad signature")
        if self.r1 + self.r2 < 1:
            raise ValueError("unit rank would be negative")

    @property
    def unit_rank(self):
        return self.r1 + self.r2 - 1

    @classmethod
    def quadratic(cls, discriminant):
        return cls(2, 0, 0) if discriminant > 0 else cls(0, 1, 0)


@dataclass(frozen=True)
class ShafarevichVerdict:
    admissible: bool
    slack: int


def shafarevich_admissible(d1, d2, sig):
    """d1 <= d2 <= d1 + r + theta."""
    slack = d1 + sig.unit_rank + sig.theta - d2
    return ShafarevichVerdict(d1 <= d2 and slack >= 0, slack)


# homomorphisms given by generator images

def _truncate(G, m):
    """G modulo the generators from index m on (a normal subgroup for sorted weights)."""
    cut = lambda w: tuple((k, e) for k, e in w if k < m)
    powers = [cut(G.power_rhs[k]) for k in range(m)]
    comms = {}
    for (j, i), w in G.comm_rhs.items():
        if j < m:
            comms[(j, i)] = cut(w)
    return PcPresentation(G.prime, m, powers, comms, G.weights[:m], G.definitions[:m])


def _eval_sparse(G, imgs, sparse):
    acc = G.identity()
    for k, e in sparse:
        acc = G.mul(acc, G.pow(imgs[k], e))
    return acc


def _all_images(G, top):
    """Images of all generators from images of the weight-1 ones, via definitions."""
    imgs = []
    for k, d in enumerate(G.definitions):
        if d[0] == "gen":
            imgs.append(top[len(imgs)])
        elif d[0] == "pow":
            imgs.append(G.pow(imgs[d[1]], G.prime))
        else:
            imgs.append(G.comm(imgs[d[1]], imgs[d[2]]))
    return imgs


def _relation_values(G, imgs):
    """rhs^-1 * lhs for every pc relation, evaluated on the images."""
    out = []
    n = G.ngens
    for j in range(n):
        lhs = G.pow(imgs[j], G.prime)
        out.append(G.mul(G.inv(_eval_sparse(G, imgs, G.power_rhs[j])), lhs))
        for i in range(j):
            lhs = G.comm(imgs[j], imgs[i])
            out.append(G.mul(G.inv(_eval_sparse(G, imgs, G.comm_rhs.get((j, i), ()))), lhs))
    return out


def is_homomorphism(G, top):
    return not any(any(v) for v in _relation_values(G, _all_images(G, top)))


def apply(G, imgs, w):
    """Image of the element w under the map with generator images imgs."""
    return _eval_sparse(G, imgs, tuple((k, e) for k, e in enumerate(w) if e))


def compose(G, first, second):
    """Generator images of second after first."""
    return [apply(G, second, w) for w in first]


def _power_map(G, imgs, k):
    result = [G.gen(i) for i in range(G.ngens)]
    base = list(imgs)
    while k:
        if k & 1:
            result = compose(G, result, base)
        k >>= 1
        if k:
            base = compose(G, base, base)
    return result


def _is_identity_map(G, imgs):
    return all(w == G.gen(i) for i, w in enumerate(imgs))


# layered search

def _layers(G):
    out = {}
    for k, w in enumerate(G.weights):
        out.setdefault(w, []).append(k)
    return out


def _residual(T, top, layer):
    vals = _relation_values(T, _all_images(T, top))
    return [v[k] for v in vals for k in layer]


def _search(G):
    p = G.prime
    layers = _layers(G)
    W = max(G.weights)
    d = len(layers[1])
    first = layers[1]
    start = [G.inv(G.gen(k)) for k in first]

    def cut(m, vec):
        return tuple(vec[:m])

    def check(top, w):
        # relations modulo the layers of weight > w
        m = sum(len(layers[v]) for v in range(1, w + 1))
        T = _truncate(G, m)
        return not any(_residual(T, [cut(m, x) for x in top], range(m)))

    if not check(start, min(2, W)):
        return None

    def rec(top, w):
        # top is correct modulo weight > w; choose the weight-w parts
        if w >= W:
            return top
        layer = layers[w]
        nxt = layers[w + 1]
        m = nxt[-1] + 1
        T = _truncate(G, m)
        nvar = d * len(layer)

        def shifted(delta):
            out = []
            for a, x in enumerate(top):
                z = [0] * G.ngens
                for b, k in enumerate(layer):
                    z[k] = delta[a * len(layer) + b]
                out.append(G.mul(x, tuple(z)))
            return out

        def res(delta):
            return _residual(T, [cut(m, x) for x in shifted(delta)], nxt)

        base = res([0] * nvar)
        cols = []
        for v in range(nvar):
            e = [0] * nvar
            e[v] = 1
            cols.append([(a - b) % p for a, b in zip(res(e), base)])
        rows = [[cols[v][r] for v in range(nvar)] for r in range(len(base))]
        part = solve(rows, [(-b) % p for b in base], nvar, p)
        if part is None:
            return None
        null = nullspace(rows, nvar, p)
        inner = []
        for k in layers.get(w - 1, []):
            u = G.gen(k)
            vec = []
            for a in first:
                c = G.comm(G.gen(a), u)
                vec.extend(c[x] for x in layer)
            inner.append(vec)
        branch = []
        for v in null:
            if rank(inner + branch + [v], nvar, p) > rank(inner + branch, nvar, p):
                branch.append(v)
        for coeffs in product(range(p), repeat=len(branch)):
            delta = list(part)
            for c, v in zip(coeffs, branch):
                if c:
                    delta = [(x + c * y) % p for x, y in zip(delta, v)]
            found = rec(shifted(delta), w + 1)
            if found is not None:
                return found
        return None

    return rec(start, 2)


def _h2_inverted(G, top):
    """Whether the lift of the map to the p-cover acts as -1 on the multiplicator."""
    cov = p_cover(G)
    C = cov.cover
    n = G.ngens
    p = G.prime
    pad = lambda w: tuple(w) + (0,) * (C.ngens - n)
    imgs = []
    defs = list(G.definitions) + list(cov.tail_defs)
    for k, dfn in enumerate(defs):
        if dfn[0] == "gen":
            imgs.append(pad(top[len(imgs)]))
            continue
        if k < n:
            imgs.append(C.pow(imgs[dfn[1]], p) if dfn[0] == "pow" else C.comm(imgs[dfn[1]], imgs[dfn[2]]))
            continue
        # the relation defining a tail reads lhs = rest * t with t central
        if dfn[0] == "pow":
            lhs = C.pow(imgs[dfn[1]], p)
            rhs = C.power_rhs[dfn[1]]
        else:
            lhs = C.comm(imgs[dfn[1]], imgs[dfn[2]])
            rhs = C.comm_rhs.get((dfn[1], dfn[2]), ())
        if (k, 1) not in rhs or any(g > k for g, _ in rhs):
            raise RuntimeError("unexpected tail relation")
        rest = tuple((g, e) for g, e in rhs if g != k)
        imgs.append(C.mul(C.inv(_eval_sparse(C, imgs, rest)), lhs))
    for a, t in enumerate(range(n, C.ngens)):
        x = imgs[t]
        if any(x[:n]):
            return False
        target = [0] * (C.ngens - n)
        target[a] = p - 1
        if list(x[n:]) != target:
            return False
    return True


def find_sigma(G, check_h2=False, max_lo=DEFAULT_MAX_LO):
    """An involutory automorphism inverting G/Phi(G), or None.

    With check_h2 the witness must also act as -1 on the multiplicator of
    the p-covering group.  All involutions inverting G/Phi(G) are conjugate
    under the kernel of Aut(G) -> Aut(G/Phi(G)) (a p-group), so testing one
    decides the H^2 condition.
    """
    if G.ngens > max_lo:
        raise CapacityError(f"log order {G.ngens} exceeds the search ceiling {max_lo}")
    G = standardize(G)
    if G.ngens == 0:
        return SigmaWitness((), True, True if check_h2 else None)
    top = _search(G)
    if top is None:
        return None
    imgs = _all_images(G, top)
    if any(any(v) for v in _relation_values(G, imgs)):
        raise RuntimeError("search returned a non-homomorphism")
    # alpha has order 2 * 3^k; its 3^k-th power is an involution
    sq = compose(G, imgs, imgs)
    k3 = 1
    while not _is_identity_map(G, sq):
        sq = _power_map(G, sq, G.prime)
        k3 *= G.prime
    sigma = _power_map(G, imgs, k3)
    if not _is_identity_map(G, compose(G, sigma, sigma)):
        raise RuntimeError("power of the witness is not an involution")
    first = [k for k, w in enumerate(G.weights) if w == 1]
    top_sigma = [sigma[k] for k in first]
    h1 = inverts_frattini_quotient(G, top_sigma)
    h2 = None
    if check_h2:
        h2 = _h2_inverted(G, top_sigma)
        if not h2:
            return None
    return SigmaWitness(tuple(top_sigma), h1, h2)


def inverts_frattini_quotient(G, images):
    first = [k for k, w in enumerate(G.weights) if w == 1]
    for a, k in enumerate(first):
        inv = G.inv(G.gen(k))
        if any(images[a][j] != inv[j] for j in first):
            return False
    return True


def schur_status(G, check_h2=False, max_lo=DEFAULT_MAX_LO):
    """Report with fields sigma, d1, d2, nu and class (Schur, SchurPlusOne or Neither)."""
    from .pquotient import rank_report
    w = find_sigma(G, check_h2=check_h2, max_lo=max_lo)
    rr = rank_report(G)
    if w is None:
        cls = "Neither"
    elif rr.d2 == rr.d1:
        cls = "Schur"
    elif rr.d2 == rr.d1 + 1:
        cls = "SchurPlusOne"
    else:
        cls = "Neither"
    return {"sigma": w is not None, "d1": rr.d1, "d2": rr.d2, "nu": rr.nu, "class": cls}
