"""Tower-length decisions from Artin patterns, IPAD screening and a soluble-length formula.

Second-order patterns are compared as multisets of brackets, each bracket a
head together with the multiset of its tail.
"""

from collections import Counter
from dataclasses import dataclass
import re

from .artin import Ati2Entry, Tkt, format_ati2, parse_ati2, tkt_canonical, tkt_name
from .invariants import TypeInvariants

TOKENS = ("Exactly2", "Exactly3", "AtLeast3", "TwoOrThree", "Unknown")

SIMPLE_TYPES = {"E.6": "Q", "E.14": "Q", "E.8": "U", "E.9": "U"}
COMPLEX_TYPES = {"H.4": "Q", "G.16": "U"}

# complex-type patterns are proven only for states up to this bound
PROVEN_COMPLEX_STATE = 4


class NotSimpleError(ValueError):
    pass


class NotComplexError(ValueError):
    pass


@dataclass(frozen=True)
class LengthVerdict:
    token: str
    reason: str
    conjectural: bool = False

    def __post_init__(self):
        if self.token not in TOKENS:
            raise ValueError(f"unknown verdict {self.token!r}")

    def __str__(self):
        flag = " (conjectural)" if self.conjectural else ""
        return f"{self.token} [{self.reason}]{flag}"


@dataclass(frozen=True)
class StateReading:
    n: int = None
    tree_hint: str = None
    family: str = "undetermined"
    reason: str = ""

    @property
    def label(self):
        if self.n is None:
            return ""
        return "GS" if self.n == 0 else f"ES{self.n}"


def _inv(*parts):
    return TypeInvariants.of(parts)


def _polarization(inv):
    """State n if inv is a heterocyclic polarization (n+3, n+2), else None."""
    p = inv.parts
    if len(p) == 2 and p[0] == p[1] + 1 and p[0] >= 3:
        return p[0] - 3
    return None


def _homocyclic(inv):
    p = inv.parts
    return len(p) == 2 and p[0] == p[1] and p[0] >= 2


STAB_Q = Counter([_inv(1, 1, 1), _inv(2, 1), _inv(2, 1)])
STAB_U = Counter([_inv(2, 1)] * 3)


def detect_state(ati, tkt=None):
    """State parameter and tree from first-order invariants (four entries)."""
    ati = [x if isinstance(x, TypeInvariants) else TypeInvariants.parse(x) for x in ati]
    if len(ati) != 4:
        return StateReading(reason="need four invariants")
    family = "undetermined"
    if tkt is not None:
        name = tkt_name(tkt)
        if name in SIMPLE_TYPES:
            family = "simple"
        elif name in COMPLEX_TYPES:
            family = "complex"
    pol = [k for k, x in enumerate(ati) if _polarization(x) is not None]
    if len(pol) != 1:
        if any(_homocyclic(x) for x in ati):
            return StateReading(family=family, reason="homocyclic polarization")
        return StateReading(family=family, reason="no unique heterocyclic polarization")
    n = _polarization(ati[pol[0]])
    rest = Counter(x for k, x in enumerate(ati) if k != pol[0])
    if rest == STAB_Q:
        return StateReading(n, "Q", family)
    if rest == STAB_U:
        return StateReading(n, "U", family)
    return StateReading(n, None, family, reason="stabilization is neither 111,21,21 nor 21,21,21")


# second-order patterns

def _key(entry):
    return (entry.head, tuple(sorted(entry.tail)))


def _bracket(head, alpha0, rest):
    return Ati2Entry(head, tuple([alpha0] + list(rest)))


def simple_alpha0(n):
    return _inv(n + 2, n + 2, 1)


def complex_alpha0(n):
    return _inv(n + 3, n + 2, 1)


def _pattern(tree, n, alpha0, pol_tail, singular, regular):
    head = _inv(n + 3, n + 2)
    out = [_bracket(head, alpha0, [pol_tail] * 3)]
    if tree == "Q":
        out.append(_bracket(_inv(1, 1, 1), alpha0, [singular] * 3 + [_inv(1, 1)] * 9))
        out.extend([_bracket(_inv(2, 1), alpha0, [regular] * 3)] * 2)
    else:
        out.extend([_bracket(_inv(2, 1), alpha0, [regular] * 3)] * 3)
    return out


def two_stage_pattern(tree, n):
    return _pattern(tree, n, simple_alpha0(n), _inv(n + 3, n + 1, 1), _inv(1, 1, 1), _inv(2, 1))


def three_stage_pattern(tree, n):
    return _pattern(tree, n, simple_alpha0(n), _inv(n + 3, n + 1, 1), _inv(2, 1, 1), _inv(3, 1))


def tame_complex_pattern(tree, n):
    return _pattern(tree, n, complex_alpha0(n), _inv(n + 3, n + 1, 1), _inv(1, 1, 1), _inv(2, 1))


def wild_complex_patterns(tree, n):
    """The three patterns forcing at least three stages, with the tag of each."""
    a0 = complex_alpha0(n)
    tame_pol, wild_pol = _inv(n + 3, n + 1, 1), _inv(n + 4, n + 1, 1)
    return [
        ("wild polarization", _pattern(tree, n, a0, wild_pol, _inv(1, 1, 1), _inv(2, 1))),
        ("wild stabilization", _pattern(tree, n, a0, tame_pol, _inv(2, 1, 1), _inv(3, 1))),
        ("wild polarization and stabilization", _pattern(tree, n, a0, wild_pol, _inv(2, 1, 1), _inv(3, 1))),
    ]


def matches(ati2, pattern):
    return Counter(_key(e) for e in ati2) == Counter(_key(e) for e in pattern)


def _first_mismatch(ati2, pattern):
    have = Counter(_key(e) for e in ati2)
    alpha0 = pattern[0].tail[0]
    names = ["polarization"] + ["stabilization"] * (len(pattern) - 1)
    if pattern[1].head.rank == 3:
        names[1] = "singular stabilization"
        names[2:] = ["regular stabilization"] * (len(pattern) - 2)
    for name, e in zip(names, pattern):
        k = _key(e)
        if have[k] > 0:
            have[k] -= 1
            continue
        return f"{name} bracket {e.format(alpha0)} not matched"
    return "extra brackets"


def state_from_ati2(ati2):
    heads = [_polarization(e.head) for e in ati2]
    found = [n for n in heads if n is not None]
    return found[0] if len(found) == 1 else None


def _as_entries(ati2):
    if ati2 is None:
        return None
    if isinstance(ati2, str):
        return parse_ati2(ati2)
    return list(ati2)


def _signature(sig):
    if isinstance(sig, int):
        return "real" if sig > 0 else "imaginary"
    if sig not in ("real", "imaginary"):
        raise ValueError("signature must be 'real' or 'imaginary'")
    return sig


def _type_of(tkt):
    if isinstance(tkt, str):
        tkt = Tkt.parse(tkt)
    return tkt_name(tkt_canonical(tkt))


def classify_simple(tkt, signature, ati2=None):
    name = _type_of(tkt)
    if name not in SIMPLE_TYPES:
        raise NotSimpleError(f"TKT {tkt} is not of simple type")
    if _signature(signature) == "imaginary":
        return LengthVerdict("Exactly3", "imaginary field")
    ati2 = _as_entries(ati2)
    if ati2 is None:
        return LengthVerdict("Unknown", "no second-order invariants")
    n = state_from_ati2(ati2)
    if n is None:
        return LengthVerdict("Unknown", "polarization bracket not found")
    tree = SIMPLE_TYPES[name]
    two = two_stage_pattern(tree, n)
    if matches(ati2, two):
        return LengthVerdict("Exactly2", f"two-stage pattern {tree} n={n}")
    three = three_stage_pattern(tree, n)
    if matches(ati2, three):
        return LengthVerdict("Exactly3", f"three-stage pattern {tree} n={n}")
    return LengthVerdict("Unknown", _first_mismatch(ati2, two))


def classify_complex(tkt, signature, ati2=None):
    name = _type_of(tkt)
    if name not in COMPLEX_TYPES:
        raise NotComplexError(f"TKT {tkt} is not of complex type")
    if _signature(signature) == "imaginary":
        return LengthVerdict("AtLeast3", "imaginary field")
    ati2 = _as_entries(ati2)
    if ati2 is None:
        return LengthVerdict("Unknown", "no second-order invariants")
    n = state_from_ati2(ati2)
    if n is None:
        return LengthVerdict("Unknown", "polarization bracket not found")
    conj = n > PROVEN_COMPLEX_STATE
    tree = COMPLEX_TYPES[name]
    tame = tame_complex_pattern(tree, n)
    if matches(ati2, tame):
        return LengthVerdict("TwoOrThree", f"tame pattern {tree} n={n}", conj)
    for tag, pat in wild_complex_patterns(tree, n):
        if matches(ati2, pat):
            return LengthVerdict("AtLeast3", tag, conj)
    return LengthVerdict("Unknown", _first_mismatch(ati2, tame), conj)


def classify_length(tkt, signature, ati2=None):
    """Dispatch on the type of the TKT."""
    name = _type_of(tkt)
    if name in SIMPLE_TYPES:
        return classify_simple(tkt, signature, ati2)
    if name in COMPLEX_TYPES:
        return classify_complex(tkt, signature, ati2)
    raise ValueError(f"TKT {tkt} is neither simple nor complex")


def fixture_ati2(columns, alpha0):
    """ATI2 from table columns that leave alpha0 out of every tail.

    A column is "head,tail..." or "head;tail..." or "[head;tail]^k".
    """
    out = []
    for col in columns:
        col = re.sub(r"\s+", "", col)
        if col.startswith("["):
            text = "(" + col + ")"
        elif ";" in col:
            text = "([" + col + "])"
        else:
            head, _, rest = col.partition(",")
            text = f"([{head};{rest}])"
        for e in parse_ati2(text):
            out.append(Ati2Entry(e.head, (alpha0,) + tuple(e.tail)))
    return out


# IPAD screening

@dataclass(frozen=True)
class ScreenVerdict:
    category: str
    n: int = None

    @property
    def state(self):
        if self.n is None:
            return ""
        return "GS" if self.n == 0 else f"ES{self.n}"

    def __str__(self):
        return f"{self.category}, {self.state}" if self.state else self.category


MAXIMAL_CLASS = "maximal class, cc=1"
SPORADIC_4 = "sporadic <243,4> branch"
BRANCH_7_3 = "<243,7> or <243,3> branch"
Q_TREE = "Q-tree"
U_TREE = "U-tree"
HOMOCYCLIC = "excluded: homocyclic polarization"
OTHER = "other"


def screen_ipad(ipad):
    """Screen a 5-component IPAD (logarithmic) with the elementary-bicyclic base rules."""
    ipad = [x if isinstance(x, TypeInvariants) else TypeInvariants.parse(x) for x in ipad]
    if len(ipad) != 5:
        raise ValueError("an IPAD has exactly five components")
    base, comps = ipad[0], ipad[1:]
    if base != _inv(1, 1):
        return ScreenVerdict(OTHER)
    if sum(1 for x in comps if x == _inv(1, 1)) >= 3:
        return ScreenVerdict(MAXIMAL_CLASS)
    eps = sum(1 for x in comps if x == _inv(1, 1, 1))
    if eps == 3:
        return ScreenVerdict(SPORADIC_4)
    if eps == 2:
        return ScreenVerdict(BRANCH_7_3)
    pol = [x for x in comps if _polarization(x) is not None]
    if any(_homocyclic(x) for x in comps):
        return ScreenVerdict(HOMOCYCLIC)
    if len(pol) != 1:
        return ScreenVerdict(OTHER)
    n = _polarization(pol[0])
    rest = list(comps)
    rest.remove(pol[0])
    if eps == 1 and Counter(rest) == STAB_Q:
        return ScreenVerdict(Q_TREE, n)
    if eps == 0:
        return ScreenVerdict(U_TREE, n)
    return ScreenVerdict(OTHER)


def babu_soluble_length(m):
    """floor(log2(3m + 3)) for m >= 2."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return (3 * m + 3).bit_length() - 1


def format_pattern(entries, alpha0=None):
    alpha0 = alpha0 if alpha0 is not None else entries[0].tail[0]
    return format_ati2(entries, alpha0)
