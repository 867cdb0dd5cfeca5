"""Artin transfers to maximal subgroups, TKT and abelian type invariants."""

from dataclasses import dataclass, field
from itertools import permutations, product
import re

from .invariants import (InvariantSyntaxError, TypeInvariants, compress,
                         parse_entries)
from .pc import (abelian_quotient_invariants, derived_subgroup, factor_basis,
                 frattini_rank, maximal_subgroups, section_coords, whole)


class NotMaximalError(ValueError):
    pass


class RankError(ValueError):
    pass


class KernelMismatchError(RuntimeError):
    pass


def _coset_index(G, H, g, y):
    p = G.prime
    ginv = G.inv(g)
    for m in range(p):
        if H.contains(y):
            return m
        y = G.mul(y, ginv)
    raise NotMaximalError("element lies in no coset of the transversal")


class Transfer:
    """The transfer G -> H/H' for a subgroup H of index p."""

    def __init__(self, G, H, transversal=None):
        if H.log_order != G.ngens - 1:
            raise NotMaximalError("transfer target must have index p")
        self.G = G
        self.H = H
        self.Hd = derived_subgroup(G, H)
        p = G.prime
        if transversal is None:
            g = next(G.gen(i) for i in range(G.ngens) if not H.contains(G.gen(i)))
            transversal = [G.pow(g, k) for k in range(p)]
        else:
            g = next(t for t in transversal if not H.contains(t))
        self.g = g
        # index each transversal element by its coset H g^m
        self.reps = {}
        for t in transversal:
            self.reps[_coset_index(G, H, g, t)] = t
        if len(self.reps) != p:
            raise ValueError("transversal does not meet every coset")
        self.rep_inv = {m: G.inv(t) for m, t in self.reps.items()}

    def __call__(self, x):
        """Transfer image of x as an element of H (meaningful modulo H')."""
        G = self.G
        acc = G.identity()
        for m in range(G.prime):
            tx = G.mul(self.reps[m], x)
            m2 = _coset_index(G, self.H, self.g, tx)
            acc = G.mul(acc, G.mul(tx, self.rep_inv[m2]))
        return acc

    def coords(self, x):
        """Coordinates of the image in H/H' along the factor basis."""
        return tuple(section_coords(self.G, self.H, self.Hd, self(x)))

    def in_kernel(self, x):
        return self.Hd.contains(self(x))


def transfer(G, H, transversal=None):
    return Transfer(G, H, transversal)


def abelianization_elements(G, D=None):
    """Representatives of all elements of G/G'."""
    p = G.prime
    D = derived_subgroup(G) if D is None else D
    basis = factor_basis(G, whole(G), D)
    out = []
    for exps in product(range(p), repeat=len(basis)):
        x = G.identity()
        for b, e in zip(basis, exps):
            if e:
                x = G.mul(x, G.pow(b, e))
        out.append(x)
    return out


@dataclass(frozen=True)
class Tkt:
    entries: tuple

    def __str__(self):
        return "".join(str(x) for x in self.entries)

    @classmethod
    def parse(cls, text):
        text = text.strip().strip("()")
        if not re.fullmatch(r"[0-9]+", text):
            raise ValueError(f"bad TKT {text!r}")
        return cls(tuple(int(ch) for ch in text))


def _check_two_generated(G):
    if frattini_rank(G) != 2:
        raise RankError("group must be 2-generated")


def tkt(G, subgroups=None):
    """Raw TKT in the fixed maximal-subgroup order."""
    _check_two_generated(G)
    subs = maximal_subgroups(G) if subgroups is None else subgroups
    D = derived_subgroup(G)
    elems = abelianization_elements(G, D)
    total = len(elems)
    out = []
    for H in subs:
        T = Transfer(G, H)
        kernel = [x for x in elems if T.in_kernel(x)]
        if len(kernel) == total:
            out.append(0)
            continue
        found = 0
        for j, K in enumerate(subs, start=1):
            if len(kernel) * G.prime ** (D.log_order) == G.prime ** K.log_order and all(K.contains(x) for x in kernel):
                found = j
                break
        if not found:
            raise KernelMismatchError("transfer kernel is not a maximal subgroup image")
        out.append(found)
    return Tkt(tuple(out))


def relabel(kappa, perm):
    """Apply a relabeling perm (a tuple, perm[i] is the new label of i+1)."""
    k = kappa.entries
    out = [0] * len(k)
    for i, v in enumerate(k):
        out[perm[i] - 1] = 0 if v == 0 else perm[v - 1]
    return Tkt(tuple(out))


def tkt_orbit(kappa):
    n = len(kappa.entries)
    return {relabel(kappa, perm) for perm in permutations(range(1, n + 1))}


def tkt_canonical(kappa):
    """Lexicographically least element of the relabeling orbit."""
    if isinstance(kappa, str):
        kappa = Tkt.parse(kappa)
    return min(tkt_orbit(kappa), key=lambda t: t.entries)


TKT_NAMES = {
    "0122": "c.18", "0231": "c.21", "1122": "E.6", "1231": "E.8",
    "2231": "E.9", "3122": "E.14", "4231": "G.16", "2122": "H.4", "0000": "a.1",
}


def tkt_name(kappa):
    """Scholz-Taussky name of a TKT orbit, or None."""
    can = tkt_canonical(kappa)
    for text, name in TKT_NAMES.items():
        if tkt_canonical(Tkt.parse(text)) == can:
            return name
    return None


def display_key(inv):
    return (inv.log_order, inv.rank, inv.parts)


def display_order(invs):
    """Largest component first: by order, then rank, then parts."""
    return sorted(invs, key=display_key, reverse=True)


@dataclass
class Ati2Entry:
    head: TypeInvariants
    tail: tuple

    def canonical_tail(self, alpha0):
        rest = list(self.tail)
        if alpha0 in rest:
            rest.remove(alpha0)
            lead = [alpha0]
        else:
            lead = []
        return lead + sorted(rest, key=lambda t: t.parts, reverse=True)

    def format(self, alpha0):
        return f"[{self.head};{compress(self.canonical_tail(alpha0))}]"

    def matches(self, other):
        return self.head == other.head and sorted(self.tail) == sorted(other.tail)


@dataclass
class ArtinPattern:
    tkt: Tkt
    ati: tuple
    alpha0: TypeInvariants
    ati2: tuple = None
    raw_tkt: Tkt = None
    raw_ati: tuple = field(default=None)

    def ati_string(self):
        return format_ati(self.ati)

    def ati2_string(self):
        if self.ati2 is None:
            return None
        return format_ati2(self.ati2, self.alpha0)


def format_ati(invs):
    return "[" + ",".join(str(x) for x in display_order(invs)) + "]"


def ati2_order(entries):
    return sorted(entries, key=lambda e: (display_key(e.head), sorted(e.tail, reverse=True)), reverse=True)


def format_ati2(entries, alpha0):
    """Brackets in display order, with runs of equal brackets as [..]^k."""
    items = [e.format(alpha0) for e in ati2_order(entries)]
    out = []
    k = 0
    while k < len(items):
        m = k
        while m < len(items) and items[m] == items[k]:
            m += 1
        out.append(items[k] if m - k == 1 else f"{items[k]}^{m - k}")
        k = m
    return "(" + ",".join(out) + ")"


def parse_ati2(text):
    """Parse "([32;221,(311)^3],[21;221,(21)^3]^3)" into entries."""
    s = re.sub(r"\s+", "", text)
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    out = []
    pos = 0
    while pos < len(s):
        if s[pos] != "[":
            raise InvariantSyntaxError(s, pos, "expected '['")
        head_end = s.find(";", pos)
        if head_end < 0:
            raise InvariantSyntaxError(s, pos, "expected ';'")
        head = TypeInvariants.parse(s[pos + 1:head_end])
        tail, pos = parse_entries(s, head_end + 1, s, "]")
        pos += 1
        count = 1
        m = re.match(r"\^(\d+)", s[pos:])
        if m:
            count = int(m.group(1))
            pos += m.end()
        out.extend([Ati2Entry(head, tuple(tail)) for _ in range(count)])
        if pos < len(s):
            if s[pos] != ",":
                raise InvariantSyntaxError(s, pos, "expected ','")
            pos += 1
    return out


def ati1(G, subgroups=None):
    _check_two_generated(G)
    subs = maximal_subgroups(G) if subgroups is None else subgroups
    raw = tuple(abelian_quotient_invariants(G, H) for H in subs)
    alpha0 = abelian_quotient_invariants(G, derived_subgroup(G))
    return {"raw": raw, "ati": tuple(display_order(raw)), "alpha0": alpha0}


def ati2(G, subgroups=None):
    _check_two_generated(G)
    subs = maximal_subgroups(G) if subgroups is None else subgroups
    out = []
    for H in subs:
        head = abelian_quotient_invariants(G, H)
        tail = tuple(abelian_quotient_invariants(G, K) for K in maximal_subgroups(G, H))
        out.append(Ati2Entry(head, tail))
    return tuple(out)


def artin_pattern(G, second_order=True):
    subs = maximal_subgroups(G)
    kappa = tkt(G, subs)
    a = ati1(G, subs)
    a2 = ati2(G, subs) if second_order else None
    return ArtinPattern(tkt=tkt_canonical(kappa), ati=a["ati"], alpha0=a["alpha0"],
                        ati2=a2, raw_tkt=kappa, raw_ati=a["raw"])
