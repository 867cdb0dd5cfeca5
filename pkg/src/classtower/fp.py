"""Finitely presented groups: free words, relators and their text format.

A word is a tuple of nonzero integers, +k for generator k (1-based) and -k
for its inverse.  Words are kept freely reduced.
"""

import re


class FpSyntaxError(ValueError):
    def __init__(self, msg, line=None, col=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if col is not None:
                where += f", column {col}"
            where += ": "
        super().__init__(where + msg)
        self.line = line
        self.col = col


def reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def mul(*words):
    return reduce(tuple(x for w in words for x in w))


def inv(w):
    return tuple(-x for x in reversed(w))


def power(w, k):
    if k < 0:
        return power(inv(w), -k)
    return reduce(tuple(w) * k)


def comm(*words):
    """Left-normed commutator [a, b, c] = [[a, b], c] with [a, b] = a^-1 b^-1 a b."""
    acc = tuple(words[0])
    for b in words[1:]:
        acc = mul(inv(acc), inv(b), acc, b)
    return acc


def conj(w, v):
    """w^v = v^-1 w v."""
    return mul(inv(v), w, v)


def gen(k):
    return (k,)


# Expression trees keep commutator structure so that evaluation in a pc group
# does not pay for the exponential length of expanded left-normed commutators.
# Nodes: ("word", w), ("inv", x), ("mul", (x, ...)), ("pow", x, k),
# ("comm", x, y), ("conj", x, y).

def expand(expr):
    kind = expr[0]
    if kind == "word":
        return reduce(expr[1])
    if kind == "inv":
        return inv(expand(expr[1]))
    if kind == "mul":
        return mul(*[expand(x) for x in expr[1]])
    if kind == "pow":
        return power(expand(expr[1]), expr[2])
    if kind == "comm":
        return comm(expand(expr[1]), expand(expr[2]))
    if kind == "conj":
        return conj(expand(expr[1]), expand(expr[2]))
    raise ValueError(f"unknown expression node {kind!r}")


def evaluate(expr, ops, word_eval):
    """Evaluate in a group given ops with mul, inv, pow, comm, conj, identity."""
    kind = expr[0]
    if kind == "word":
        return word_eval(expr[1])
    if kind == "inv":
        return ops.inv(evaluate(expr[1], ops, word_eval))
    if kind == "mul":
        acc = ops.identity()
        for x in expr[1]:
            acc = ops.mul(acc, evaluate(x, ops, word_eval))
        return acc
    if kind == "pow":
        return ops.pow(evaluate(expr[1], ops, word_eval), expr[2])
    if kind == "comm":
        return ops.comm(evaluate(expr[1], ops, word_eval), evaluate(expr[2], ops, word_eval))
    if kind == "conj":
        return ops.conj(evaluate(expr[1], ops, word_eval), evaluate(expr[2], ops, word_eval))
    raise ValueError(f"unknown expression node {kind!r}")


def X(w):
    return ("word", tuple(w))


def xmul(*xs):
    return ("mul", tuple(xs))


def xinv(x):
    return ("inv", x)


def xpow(x, k):
    return ("pow", x, k)


def xcomm(*xs):
    acc = xs[0]
    for b in xs[1:]:
        acc = ("comm", acc, b)
    return acc


def xconj(x, v):
    return ("conj", x, v)


class FpPresentation:
    """Generators and freely reduced relator words.

    Relators may be given as expression trees; they are expanded to words and
    the trees are kept in ``expressions`` for fast evaluation.
    """

    def __init__(self, ngens, relators, names=None):
        self.ngens = ngens
        exprs = []
        for r in relators:
            if r and isinstance(r[0], str):
                exprs.append(r)
            else:
                exprs.append(X(r))
        pairs = [(expand(x), x) for x in exprs]
        pairs = [(w, x) for w, x in pairs if w]
        self.relators = [w for w, _ in pairs]
        self.expressions = [x for _, x in pairs]
        for r in self.relators:
            for x in r:
                if not 1 <= abs(x) <= ngens:
                    raise ValueError(f"generator {abs(x)} out of range")
        self.names = list(names) if names else [f"g{k + 1}" for k in range(ngens)]

    def __repr__(self):
        return f"<FpPresentation n={self.ngens} relators={len(self.relators)}>"


def format_word(w, names=None):
    if not w:
        return "1"
    names = names or {}
    out = []
    k = 0
    while k < len(w):
        m = k
        while m < len(w) and w[m] == w[k]:
            m += 1
        g = abs(w[k])
        name = names[g - 1] if names else f"g{g}"
        e = (m - k) * (1 if w[k] > 0 else -1)
        out.append(name if e == 1 else f"{name}^{e}")
        k = m
    return "*".join(out)


def write_fp(F):
    lines = [f"fp n={F.ngens}"]
    default = [f"g{k + 1}" for k in range(F.ngens)]
    if F.names != default:
        lines.append("gens " + " ".join(F.names))
    for r in F.relators:
        lines.append(format_word(r, F.names))
    return "\n".join(lines) + "\n"


class _WordParser:
    """Recursive descent over: word := factor ('*' factor)*;
    factor := atom ('^' (int | atom))*; atom := name | '(' word ')' | '[' word (',' word)+ ']'.
    """

    def __init__(self, text, names, line):
        self.s = text
        self.pos = 0
        self.names = names
        self.line = line

    def error(self, msg):
        raise FpSyntaxError(msg, self.line, self.pos + 1)

    def peek(self):
        while self.pos < len(self.s) and self.s[self.pos].isspace():
            self.pos += 1
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def take(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self):
        w = self.word()
        if self.peek() == "=":
            self.pos += 1
            rhs = self.word()
            w = xmul(w, xinv(rhs))
        if self.peek():
            self.error("unexpected character")
        return w

    def word(self):
        if self.peek() == "1":
            save = self.pos
            self.pos += 1
            if self.peek() in ("", ")", "]", ",", "=", "*"):
                acc = X(())
            else:
                self.pos = save
                acc = self.factor()
        else:
            acc = self.factor()
        parts = [acc]
        while self.peek() == "*":
            self.pos += 1
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else xmul(*parts)

    def factor(self):
        w = self.atom()
        while self.peek() == "^":
            self.pos += 1
            self.peek()
            m = re.match(r"-?\d+", self.s[self.pos:])
            if m:
                self.pos += m.end()
                w = xpow(w, int(m.group()))
            else:
                w = xconj(w, self.atom())
        return w

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            w = self.word()
            self.take(")")
            return w
        if ch == "[":
            self.pos += 1
            parts = [self.word()]
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.word())
            self.take("]")
            if len(parts) < 2:
                self.error("commutator needs two entries")
            return xcomm(*parts)
        m = re.match(r"[A-Za-z_][A-Za-z_0-9]*", self.s[self.pos:])
        if not m:
            self.error("expected generator")
        name = m.group()
        if name not in self.names:
            self.error(f"unknown generator {name!r}")
        self.pos += m.end()
        return X((self.names[name],))


def parse_expr(text, names, line=None):
    """Parse into an expression tree; ``names`` lists generator names."""
    if isinstance(names, (list, tuple)):
        names = {n: k + 1 for k, n in enumerate(names)}
    return _WordParser(text, names, line).parse()


def parse_word(text, names, line=None):
    return expand(parse_expr(text, names, line))


def read_fp(text):
    lines = text.splitlines()
    body = [(k + 1, ln.split("#")[0].strip()) for k, ln in enumerate(lines)]
    body = [(k, ln) for k, ln in body if ln]
    if not body:
        raise FpSyntaxError("empty presentation")
    lineno, head = body[0]
    m = re.match(r"^fp n=(\d+)$", head)
    if not m:
        raise FpSyntaxError("expected 'fp n=<ngens>'", lineno, 1)
    n = int(m.group(1))
    names = [f"g{k + 1}" for k in range(n)]
    rels = []
    for lineno, ln in body[1:]:
        if ln.startswith("gens "):
            names = ln.split()[1:]
            if len(names) != n:
                raise FpSyntaxError("wrong number of generator names", lineno, 1)
            continue
        rels.append(parse_expr(ln, names, lineno))
    return FpPresentation(n, rels, names)


def fp_from_relations(names, relations):
    """Build from relation strings such as "[t,a,t] = a^-3"."""
    rels = [parse_expr(r, names, k + 1) for k, r in enumerate(relations)]
    return FpPresentation(len(names), rels, names)
