"""Logarithmic abelian type invariants and their text grammar.

An invariant is rendered as concatenated digits when every part is at most 9
("32", "111") and as a parenthesized comma list otherwise ("(10,9)").  The
trivial invariant renders as "0".  Inside a digit string ``d^k`` repeats a
part ("1^3" is "111").  In comma separated lists ``X^k`` repeats a whole
entry, where X is a parenthesized invariant ("(21)^3").
"""

from dataclasses import dataclass
import re


class InvariantSyntaxError(ValueError):
    def __init__(self, text, pos, msg):
        super().__init__(f"{msg} at column {pos + 1} in {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True, order=True)
class TypeInvariants:
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 1 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts):
        return cls(tuple(sorted((int(x) for x in parts if x), reverse=True)))

    @classmethod
    def from_orders(cls, orders, p=3):
        """From cyclic factor orders such as (9, 27)."""
        logs = []
        for o in orders:
            k = 0
            while o % p == 0:
                o //= p
                k += 1
            if o != 1:
                raise ValueError(f"order is not a power of {p}")
            logs.append(k)
        return cls.of(logs)

    @property
    def rank(self):
        return len(self.parts)

    @property
    def log_order(self):
        return sum(self.parts)

    def orders(self, p=3):
        return [p ** k for k in self.parts]

    def __str__(self):
        if not self.parts:
            return "0"
        if all(x <= 9 for x in self.parts):
            return "".join(str(x) for x in self.parts)
        return "(" + ",".join(str(x) for x in self.parts) + ")"

    def __repr__(self):
        return f"TypeInvariants({self})"

    @classmethod
    def parse(cls, text):
        s = re.sub(r"\s+", "", text)
        inv, pos = _parse_invariant(s, 0, s)
        if pos != len(s):
            raise InvariantSyntaxError(s, pos, "trailing characters")
        return inv


def _parse_digits(s, pos, text):
    parts = []
    start = pos
    while pos < len(s) and s[pos].isdigit():
        d = int(s[pos])
        pos += 1
        if pos < len(s) and s[pos] == "^":
            m = re.match(r"\^(\d+)", s[pos:])
            if not m:
                raise InvariantSyntaxError(text, pos, "expected exponent")
            parts.extend([d] * int(m.group(1)))
            pos += m.end()
        else:
            parts.append(d)
    if pos == start:
        raise InvariantSyntaxError(text, pos, "expected invariant")
    if parts == [0]:
        return TypeInvariants(), pos
    if 0 in parts:
        raise InvariantSyntaxError(text, start, "zero part")
    return _checked(parts, text, start), pos


def _checked(parts, text, pos):
    try:
        return TypeInvariants(tuple(parts))
    except ValueError as exc:
        raise InvariantSyntaxError(text, pos, str(exc)) from None


def _parse_invariant(s, pos, text):
    """A single invariant: digits, or "(a,b,...)", or "(digits)"."""
    if pos < len(s) and s[pos] == "(":
        close = s.find(")", pos)
        if close < 0:
            raise InvariantSyntaxError(text, pos, "unclosed parenthesis")
        inner = s[pos + 1:close]
        if "," in inner:
            try:
                parts = [int(x) for x in inner.split(",")]
            except ValueError:
                raise InvariantSyntaxError(text, pos, "bad part list") from None
            return _checked(parts, text, pos), close + 1
        inv, end = _parse_digits(s, pos + 1, text)
        if end != close:
            raise InvariantSyntaxError(text, end, "expected ')'")
        return inv, close + 1
    return _parse_digits(s, pos, text)


def parse_entries(s, pos, text, stop="", allow_end=False):
    """Comma separated invariants with (X)^k repetition, up to a stop char."""
    out = []
    while True:
        start = pos
        inv, pos = _parse_invariant(s, pos, text)
        count = 1
        if pos < len(s) and s[pos] == "^":
            if s[start] != "(":
                raise InvariantSyntaxError(text, pos, "repetition needs parentheses")
            m = re.match(r"\^(\d+)", s[pos:])
            if not m:
                raise InvariantSyntaxError(text, pos, "expected exponent")
            count = int(m.group(1))
            pos += m.end()
        out.extend([inv] * count)
        if pos < len(s) and s[pos] == ",":
            pos += 1
            continue
        if pos < len(s) and s[pos] in stop:
            return out, pos
        if pos >= len(s) and allow_end:
            return out, pos
        raise InvariantSyntaxError(text, pos, "expected ',' or end of list")


def parse_list(text):
    """Parse "[32,111,21,21]" or "32,(21)^3" into a list of invariants."""
    s = re.sub(r"\s+", "", text)
    if s.startswith("["):
        if not s.endswith("]"):
            raise InvariantSyntaxError(s, len(s) - 1, "expected ']'")
        out, pos = parse_entries(s, 1, s, "]")
        if pos != len(s) - 1:
            raise InvariantSyntaxError(s, pos, "trailing characters")
        return out
    out, pos = parse_entries(s, 0, s, allow_end=True)
    return out


def compress(entries):
    """Render entries with runs written as (X)^k."""
    out = []
    k = 0
    while k < len(entries):
        m = k
        while m < len(entries) and entries[m] == entries[k]:
            m += 1
        text = str(entries[k])
        run = m - k
        if run == 1:
            out.append(text)
        else:
            if not text.startswith("("):
                text = "(" + text + ")"
            out.append(f"{text}^{run}")
        k = m
    return ",".join(out)


def format_list(entries):
    return "[" + ",".join(str(x) for x in entries) + "]"
