"""Constructors for the two coclass-2 trees and relative identifiers naming their vertices.

Three kinds of group are constructible:

* mainline vertices X_c^r, quotients of the skeleton limit group;
* the six metabelian relator variants of class c on each tree;
* class-c quotients Q_c^(e,l) of the cover limit group.

Each construction is checked against the order it is supposed to have.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import re

from . import fp as fpw
from .fp import FpPresentation, fp_from_relations
from .pc import nilpotency_class
from .pquotient import metabelianization, p_quotient


class OrderGateError(RuntimeError):
    """A construction did not have the order or class it is supposed to have."""


class DescriptorError(ValueError):
    pass


TREES = ("Q", "U")
KINDS = ("mainline", "metab", "schur")

VARIANTS = {
    "Q": ("mainline", "E6", "E14a", "E14b", "H4a", "H4b"),
    "U": ("mainline", "E8", "E9a", "E9b", "G16a", "G16b"),
}

PAIR_TAGS = ("mainline-pair", "E6/E8", "E14a/E9a", "E14b/E9b", "H4a/G16a", "H4b/G16b")

# TKT name each variant is expected to produce
VARIANT_TKT = {
    "Q": {"mainline": "c.18", "E6": "E.6", "E14a": "E.14", "E14b": "E.14", "H4a": "H.4", "H4b": "H.4"},
    "U": {"mainline": "c.21", "E8": "E.8", "E9a": "E.9", "E9b": "E.9", "G16a": "G.16", "G16b": "G.16"},
}

SIMPLE_VARIANTS = {"E6", "E14a", "E14b", "E8", "E9a", "E9b"}

# final counter i of a step-1 leaf below X_c^2 and the variant it names;
# 5 and 6 are the complex-type siblings, assigned to a and b by convention
COUNTER_VARIANT = {
    "Q": {2: "E6", 3: "E14a", 4: "E14b", 5: "H4a", 6: "H4b"},
    "U": {2: "E8", 3: "E9a", 4: "E9b", 5: "G16a", 6: "G16b"},
}

# final counter i of a Schur path and the cover parameter l; Q has no i=4 quotient
COUNTER_ELL = {"Q": {2: 0, 3: -1}, "U": {2: 0, 3: -1, 4: 1}}


def normalize_variant(tree, variant):
    if variant in VARIANTS[tree]:
        return variant
    if variant in PAIR_TAGS:
        return VARIANTS[tree][PAIR_TAGS.index(variant)]
    raise DescriptorError(f"unknown relator variant {variant!r} on the {tree}-tree")


@dataclass(frozen=True)
class GroupDescriptor:
    tree: str
    kind: str
    c: int
    r: int = 2
    variant: str = None
    ell: int = None

    def __post_init__(self):
        if self.tree not in TREES:
            raise DescriptorError(f"tree must be Q or U, not {self.tree!r}")
        if self.kind not in KINDS:
            raise DescriptorError(f"unknown kind {self.kind!r}")
        if self.kind == "mainline":
            if self.r < 2 or self.c < 2 * self.r - 1:
                raise DescriptorError("mainline vertices need r >= 2 and c >= 2r-1")
        elif self.kind == "metab":
            if self.c < 5:
                raise DescriptorError("metabelian family needs class c >= 5")
            object.__setattr__(self, "variant", normalize_variant(self.tree, self.variant or "mainline"))
        else:
            if self.c < 5 or self.c % 2 == 0:
                raise DescriptorError("cover quotients need odd class c >= 5")
            if self.ell not in (-1, 0, 1):
                raise DescriptorError("cover parameter l must be -1, 0 or 1")

    @property
    def e(self):
        return 0 if self.tree == "Q" else 1

    @property
    def n(self):
        """State parameter for odd class c = 2n + 5."""
        if self.kind == "mainline" or self.c % 2 == 0:
            return None
        return (self.c - 5) // 2

    @property
    def i(self):
        if self.kind == "metab":
            for k, v in COUNTER_VARIANT[self.tree].items():
                if v == self.variant:
                    return k
            return None
        if self.kind == "schur":
            for k, v in COUNTER_ELL[self.tree].items():
                if v == self.ell:
                    return k
        return None

    @property
    def expected_log_order(self):
        if self.kind == "mainline":
            return self.c + self.r
        if self.kind == "metab":
            return self.c + 2
        return 3 * (self.c - 5) // 2 + 8

    def label(self):
        if self.kind == "mainline":
            return f"X_{self.c}^{self.r}({self.tree})"
        if self.kind == "metab":
            return f"M[{self.variant},c={self.c}]"
        return f"Q_{self.c}^({self.e},{self.ell:+d})" if self.ell else f"Q_{self.c}^({self.e},0)"


def mainline(tree, c, r=2):
    return GroupDescriptor(tree, "mainline", c, r=r)


def metabelian_family(tree, c, variant):
    return GroupDescriptor(tree, "metab", c, variant=variant)


def cover_quotient(e, ell, c):
    return GroupDescriptor("Q" if e == 0 else "U", "schur", c, ell=ell)


# finitely presented inputs

def mainline_fp(tree, c, r=2):
    sign = -3 if tree == "Q" else 3
    rels = ["(a*t)^3=a^3", f"[t,a,t]=a^{sign}", f"a^{3 ** r}"]
    j = c // 2
    rels.append(f"[t,a]^{3 ** j}" if c % 2 else f"t^{3 ** j}")
    return fp_from_relations(["a", "t"], rels)


def _relator_pair(tree, variant, c):
    if tree == "Q":
        rx = "x^3" if variant in ("mainline", "H4a", "H4b") else f"x^3*s{c}^-1"
        ry = "y^3*s3^-2*s4^-1"
        extra = {"E14a": 1, "H4a": 1, "E14b": 2, "H4b": 2}.get(variant)
        if extra:
            ry += f"*s{c}^-{extra}"
        return rx, ry
    ry = "y^3*s3^-1" if variant in ("mainline", "G16a", "G16b") else f"y^3*s3^-1*t{c}^-1"
    rx = "x^3*t3^-1*t4^-2*t5^-1"
    extra = {"E9a": 1, "G16a": 1, "E9b": 2, "G16b": 2}.get(variant)
    if extra:
        rx += f"*t{c}^-{extra}"
    return ry, rx


def family_fp(tree, c, variant):
    """Relators of the class-c metabelian family; commutators not listed are left free."""
    variant = normalize_variant(tree, variant)
    if tree == "Q":
        names = ["x", "y", "s2", "t3"] + [f"s{j}" for j in range(3, c + 1)]
        rels = ["s2=[y,x]", "t3=[s2,y]"] + [f"s{j}=[s{j - 1},x]" for j in range(3, c + 1)]
        rels += [f"s{j}^3=s{j + 2}^2*s{j + 3}" for j in range(2, c - 2)]
        rels += [f"s{c - 2}^3=s{c}^2", "t3^3"]
    else:
        names = ["x", "y", "t2", "s3"] + [f"t{j}" for j in range(3, c + 1)]
        rels = ["t2=[y,x]", "s3=[t2,x]"] + [f"t{j}=[t{j - 1},y]" for j in range(3, c + 1)]
        rels += [f"t{j}^3=t{j + 2}^2*t{j + 3}" for j in range(2, c - 2)]
        rels += [f"t{c - 2}^3=t{c}^2", "s3^3"]
    rels += list(_relator_pair(tree, variant, c))
    return fp_from_relations(names, rels)


COVER_LIMIT_RELATIONS = [
    "t^a=u", "u^a*t*u*y=[u,t]^{e}", "a^3*[t,a,t]=z", "[u,t,t]", "[u,t,u]", "y^3",
    "[a,y]", "[t,y]", "[u,y]", "[z,y]", "z^3", "[t,z]", "[u,z]",
]


def cover_fp(e, ell, c):
    """The cover limit modulo y w_c^l v_c and z w_c."""
    names = ["a", "t", "u", "y", "z"]
    base = fp_from_relations(names, [r.replace("{e}", str(e)) for r in COVER_LIMIT_RELATIONS])
    a, t, y, z = (fpw.X((k,)) for k in (1, 2, 4, 5))

    def w(k):
        # [t, a, ..., a] with k-1 entries a
        return fpw.xcomm(t, *([a] * (k - 1)))

    v = fpw.xcomm(w(c - 2), fpw.xcomm(t, a))
    rels = base.expressions + [fpw.xmul(y, fpw.xpow(w(c), ell), v), fpw.xmul(z, w(c))]
    return FpPresentation(5, rels, names)


def presentation_of(d):
    if d.kind == "mainline":
        return mainline_fp(d.tree, d.c, d.r)
    if d.kind == "metab":
        return family_fp(d.tree, d.c, d.variant)
    return cover_fp(d.e, d.ell, d.c)


@lru_cache(maxsize=256)
def build(d):
    """Consistent pc-presentation of the described group, with weights and definitions."""
    F = presentation_of(d)
    if d.kind == "metab":
        G = metabelianization(p_quotient(F, 3, d.c))
    else:
        G = p_quotient(F, 3, d.c)
    if G.ngens != d.expected_log_order:
        raise OrderGateError(f"{d.label()}: order 3^{G.ngens}, expected 3^{d.expected_log_order}")
    cl = nilpotency_class(G)
    if cl != d.c:
        raise OrderGateError(f"{d.label()}: class {cl}, expected {d.c}")
    return G


# relative identifiers

class IdentifierSyntaxError(ValueError):
    def __init__(self, text, pos, msg):
        super().__init__(f"{msg} at column {pos + 1} in {text!r}")
        self.text = text
        self.pos = pos


class UnrecognizedIdentifier(ValueError):
    """The identifier parses but names no path shape known here."""


@dataclass(frozen=True)
class Step:
    size: int
    counter: int

    def __str__(self):
        return f"-#{self.size};{self.counter}"


@dataclass(frozen=True)
class StepGroup:
    bracket: str  # "(" for skeleton vertices, "[" for hull vertices
    steps: tuple
    exponent: int = None

    def __str__(self):
        close = ")" if self.bracket == "(" else "]"
        body = self.bracket + "".join(str(s) for s in self.steps) + close
        return body if self.exponent is None else f"{body}^{self.exponent}"

    def expanded(self):
        return list(self.steps) * (1 if self.exponent is None else self.exponent)


@dataclass(frozen=True)
class RelativeIdentifier:
    base: str
    items: tuple = field(default=())

    def __str__(self):
        return self.base + "".join(str(x) for x in self.items)


class _IdParser:
    def __init__(self, text):
        self.text = text
        self.s = text
        self.pos = 0

    def error(self, msg):
        raise IdentifierSyntaxError(self.text, self.pos, msg)

    def skip(self):
        while self.pos < len(self.s) and self.s[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def number(self):
        self.skip()
        m = re.match(r"\d+", self.s[self.pos:])
        if not m:
            self.error("expected a number")
        self.pos += m.end()
        return int(m.group())

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def step(self):
        self.expect("-")
        self.expect("#")
        start = self.pos
        s = self.number()
        if s not in (1, 2):
            self.pos = start
            self.error("step size must be 1 or 2")
        self.expect(";")
        start = self.pos
        j = self.number()
        if j < 1:
            self.pos = start
            self.error("counter must be at least 1")
        return Step(s, j)

    def parse(self):
        self.skip()
        m = re.match(r"[A-Za-z][A-Za-z0-9]*", self.s[self.pos:])
        if not m:
            self.error("expected a base symbol")
        base = m.group()
        self.pos += m.end()
        items = []
        while True:
            ch = self.peek()
            if not ch:
                break
            if ch == "-":
                items.append(self.step())
            elif ch in "([":
                close = ")" if ch == "(" else "]"
                self.pos += 1
                steps = []
                while self.peek() == "-":
                    steps.append(self.step())
                if not steps:
                    self.error("empty step group")
                self.expect(close)
                exponent = None
                if self.peek() == "^":
                    self.pos += 1
                    exponent = self.number()
                items.append(StepGroup(ch, tuple(steps), exponent))
            else:
                self.error("unexpected character")
        return RelativeIdentifier(base, tuple(items))


def parse_identifier(text):
    return _IdParser(text).parse()


def format_identifier(ident):
    return str(ident)


@dataclass(frozen=True)
class Unconstructible:
    """A recognized vertex without a presentation here, with its coordinates."""
    shape: str
    tree: str
    coords: tuple

    def label(self):
        inner = ",".join(f"{k}={v}" for k, v in self.coords)
        return f"{self.shape}[{self.tree}]({inner})"


def _split(ident):
    """Skeleton step sizes before the first hull bracket, the hull groups, then trailing steps."""
    skeleton = []
    hulls = []
    trailing = []
    for item in ident.items:
        if isinstance(item, Step):
            (trailing if hulls else skeleton).append(item)
        elif item.bracket == "(":
            if hulls:
                raise UnrecognizedIdentifier("skeleton group after a hull group")
            skeleton.extend(item.expanded())
        else:
            if trailing:
                raise UnrecognizedIdentifier("hull group after a trailing step")
            hulls.append(item)
    return skeleton, hulls, trailing


def _pairs_of(sizes, pair):
    k = 0
    while sizes[2 * k:2 * k + 2] == list(pair):
        k += 1
    return k


def _walk_mainline(tree, c, r, steps):
    for st in steps:
        if st.counter != 1:
            raise UnrecognizedIdentifier("skeleton steps must have counter 1")
        if st.size == 1:
            c += 1
        elif c == 2 * r:
            c, r = c + 1, r + 1
        else:
            raise UnrecognizedIdentifier(f"no step of size 2 from the class-{c} mainline vertex")
    return mainline(tree, c, r)


def _skeleton_shape(sizes):
    """(u, v) with sizes = [2,1]*u + [1,1]*v, or None."""
    u = _pairs_of(sizes, (2, 1))
    rest = sizes[2 * u:]
    if len(rest) % 2 or any(x != 1 for x in rest):
        return None
    return u, len(rest) // 2


def resolve_identifier(ident, tree):
    """GroupDescriptor for constructible paths, Unconstructible for known other shapes."""
    if isinstance(ident, str):
        ident = parse_identifier(ident)
    if tree not in TREES:
        raise DescriptorError(f"tree must be Q or U, not {tree!r}")
    skeleton, hulls, trailing = _split(ident)
    if ident.base == "N":
        sizes = [s.size for s in skeleton]
        k = _pairs_of(sizes, (2, 1))
        tail = skeleton[2 * k:]
        if not hulls and not trailing and len(tail) == 1 and tail[0] == Step(2, 2) \
                and all(s.counter == 1 for s in skeleton[:2 * k]):
            return Unconstructible("G", tree, (("m", k + 2),))
        raise UnrecognizedIdentifier(f"unknown shape {ident}")
    if ident.base == "R":
        start = (3, 2)
    elif ident.base == "F":
        start = (4, 2)
    else:
        raise UnrecognizedIdentifier(f"unknown base {ident.base!r}")
    if not hulls and not trailing:
        return _walk_mainline(tree, start[0], start[1], skeleton)
    if ident.base == "R":
        # R followed by one step of size 1 is the fork
        if not skeleton or skeleton[0] != Step(1, 1):
            raise UnrecognizedIdentifier(f"unknown shape {ident}")
        skeleton = skeleton[1:]
    if any(s.counter != 1 for s in skeleton):
        raise UnrecognizedIdentifier("skeleton steps must have counter 1")
    shape = _skeleton_shape([s.size for s in skeleton])
    if shape is None:
        raise UnrecognizedIdentifier(f"unknown skeleton in {ident}")
    u, v = shape
    n = u + v
    first = hulls[0]
    steps = first.steps
    if first.exponent not in (None, 1):
        raise UnrecognizedIdentifier(f"unknown hull in {ident}")
    complex_n = n
    if len(hulls) == 1 and not trailing and len(steps) == 1:
        s, i = steps[0].size, steps[0].counter
        if s == 1 and u == 0 and i in COUNTER_VARIANT[tree]:
            return metabelian_family(tree, 2 * n + 5, COUNTER_VARIANT[tree][i])
        if s == 1 and u >= 1 and 2 <= i <= 4:
            return Unconstructible("T", tree, (("n", n), ("u", u), ("i", i)))
        if s == 2 and v == 0 and 2 <= i <= 4:
            if i in COUNTER_ELL[tree]:
                return cover_quotient(0 if tree == "Q" else 1, COUNTER_ELL[tree][i], 2 * n + 5)
            return Unconstructible("S", tree, (("n", n), ("i", i)))
    if len(steps) == 2 and steps[1] == Step(1, 1) and steps[0].counter in (5, 6):
        i = steps[0].counter
        if steps[0].size == 1 and len(hulls) == 1:
            if u == 0 and not trailing:
                return Unconstructible("M", tree, (("n", complex_n), ("i", i)))
            if u == 0 and len(trailing) == 1 and trailing[0].size == 1:
                j = trailing[0].counter
                if j <= (3 if tree == "Q" else 2):
                    return Unconstructible("R", tree, (("n", n), ("j", j), ("i", i)))
            if u >= 1 and not trailing:
                return Unconstructible("T", tree, (("n", n), ("u", u), ("i", i)))
        if steps[0].size == 2 and v == 0 and not trailing and len(hulls) == 3:
            mid, last = hulls[1], hulls[2]
            if mid.steps == (Step(2, 1), Step(1, 1)) and last.steps == (Step(2, 2),) \
                    and last.exponent in (None, 1):
                t = 1 if mid.exponent is None else mid.exponent
                return Unconstructible("S", tree, (("n", n), ("t", t), ("i", i)))
        if steps[0].size == 2 and v == 0 and not trailing and len(hulls) == 2:
            last = hulls[1]
            if last.steps == (Step(2, 2),) and last.exponent in (None, 1):
                return Unconstructible("S", tree, (("n", n), ("t", 0), ("i", i)))
    raise UnrecognizedIdentifier(f"unknown shape {ident}")
