"""Field-data records: a line format, reports over it, and descendant-tree DOT output."""

from collections import Counter
from dataclasses import dataclass, replace
import csv
import io
import re

from .artin import Tkt, parse_ati2, tkt_canonical, tkt_name
from .classify import (COMPLEX_TYPES, SIMPLE_TYPES, TOKENS, classify_length,
                       detect_state, screen_ipad)
from .invariants import InvariantSyntaxError, TypeInvariants, parse_entries


class RecordSyntaxError(ValueError):
    def __init__(self, msg, line, col=1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


# short forms used in printed tables
LENGTH_ALIASES = {"2": "Exactly2", "3": "Exactly3", "2or3": "TwoOrThree", ">=3": "AtLeast3"}


def _ipad_key(ipad):
    # table order: smallest order first, higher rank first among equal orders
    return (ipad[0],) + tuple(sorted(ipad[1:], key=lambda x: (x.log_order, -x.rank, x.parts)))


def format_ipad(ipad):
    return f"[{ipad[0]};" + ",".join(str(x) for x in ipad[1:]) + "]"


def parse_ipad(text):
    s = re.sub(r"\s+", "", text)
    if not (s.startswith("[") and s.endswith("]")):
        raise InvariantSyntaxError(s, 0, "IPAD must be bracketed")
    head, sep, rest = s[1:-1].partition(";")
    if not sep:
        raise InvariantSyntaxError(s, 1, "expected ';' after the first component")
    first = TypeInvariants.parse(head)
    comps, _ = parse_entries(rest, 0, rest, allow_end=True)
    if len(comps) != 4:
        raise InvariantSyntaxError(s, len(head) + 2, "expected four components after ';'")
    return _ipad_key([first] + comps)


@dataclass(frozen=True)
class FieldRecord:
    disc: int
    ipad: tuple
    tkt: Tkt = None
    length_claim: str = None
    ati2: tuple = None

    def __post_init__(self):
        if self.disc == 0:
            raise ValueError("discriminant must be nonzero")
        if len(self.ipad) != 5:
            raise ValueError("an IPAD has five components")
        if self.length_claim is not None and self.length_claim not in TOKENS:
            raise ValueError(f"unknown length token {self.length_claim!r}")

    @property
    def signature(self):
        return "real" if self.disc > 0 else "imaginary"

    def line(self):
        out = [f"disc={self.disc}", f"ipad={format_ipad(self.ipad)}"]
        if self.tkt is not None:
            out.append(f"tkt={self.tkt}")
        if self.length_claim is not None:
            out.append(f"len={self.length_claim}")
        return " ".join(out)


_FIELD = re.compile(r"(\w+)=(\S+)")


def parse_record(text, lineno=1):
    fields = {}
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _FIELD.match(text, pos)
        if not m:
            raise RecordSyntaxError("expected key=value", lineno, pos + 1)
        key, val = m.group(1), m.group(2)
        if key in fields:
            raise RecordSyntaxError(f"repeated field {key!r}", lineno, pos + 1)
        if key not in ("disc", "ipad", "tkt", "len"):
            raise RecordSyntaxError(f"unknown field {key!r}", lineno, pos + 1)
        fields[key] = (val, m.start(2) + 1)
        pos = m.end()
    for key in ("disc", "ipad"):
        if key not in fields:
            raise RecordSyntaxError(f"missing field {key!r}", lineno)
    val, col = fields["disc"]
    if not re.fullmatch(r"-?\d+", val) or int(val) == 0:
        raise RecordSyntaxError("discriminant must be a nonzero integer", lineno, col)
    disc = int(val)
    val, col = fields["ipad"]
    try:
        ipad = parse_ipad(val)
    except (InvariantSyntaxError, ValueError) as exc:
        raise RecordSyntaxError(f"bad IPAD: {exc}", lineno, col) from None
    kappa = None
    if "tkt" in fields:
        val, col = fields["tkt"]
        if not re.fullmatch(r"\d{4}", val):
            raise RecordSyntaxError("TKT must be four digits", lineno, col)
        kappa = Tkt.parse(val)
    claim = None
    if "len" in fields:
        val, col = fields["len"]
        claim = LENGTH_ALIASES.get(val, val)
        if claim not in TOKENS:
            raise RecordSyntaxError(f"unknown length token {val!r}", lineno, col)
    return FieldRecord(disc, ipad, kappa, claim)


def parse_records(text):
    out = []
    seen = {}
    for k, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#")[0]
        if not body.strip():
            continue
        rec = parse_record(body, k)
        if rec.disc in seen:
            raise RecordSyntaxError(f"duplicate discriminant {rec.disc} (first on line {seen[rec.disc]})", k)
        seen[rec.disc] = k
        out.append(rec)
    return out


def serialize_records(records):
    return "".join(r.line() + "\n" for r in records)


def with_ati2(record, ati2):
    if isinstance(ati2, str):
        ati2 = parse_ati2(ati2)
    return replace(record, ati2=tuple(ati2))


# reports

REPORT_COLUMNS = ("disc", "ipad", "screen", "state", "tkt", "verdict", "reason")
STATS_COLUMNS = ("ipad", "count", "min_disc", "screen", "tkt_histogram")


def _verdict(rec):
    if rec.tkt is None:
        return "", ""
    name = tkt_name(rec.tkt)
    if name not in SIMPLE_TYPES and name not in COMPLEX_TYPES:
        return "", f"TKT {name or rec.tkt} has no length criterion"
    v = classify_length(rec.tkt, rec.signature, rec.ati2)
    reason = v.reason + (" (conjectural)" if v.conjectural else "")
    return v.token, reason


def _histogram(names):
    counts = Counter(names)
    return {k: counts[k] for k in sorted(counts, key=lambda k: (-counts[k], k))}


def report_rows(records, mode="classify"):
    """Rows as dicts; stats groups by IPAD, the other modes give one row per record."""
    if mode not in ("screen", "classify", "stats"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "stats":
        groups = {}
        for r in records:
            groups.setdefault(r.ipad, []).append(r)
        rows = []
        for ipad, rs in groups.items():
            names = [tkt_name(r.tkt) or str(r.tkt) for r in rs if r.tkt is not None]
            hist = _histogram(names)
            rows.append({
                "ipad": format_ipad(ipad), "count": len(rs),
                "min_disc": min(abs(r.disc) for r in rs),
                "screen": str(screen_ipad(ipad)),
                "tkt_histogram": " ".join(f"{k}:{v}" for k, v in hist.items()),
            })
        rows.sort(key=lambda row: (row["min_disc"], row["ipad"]))
        return rows
    rows = []
    for r in sorted(records, key=lambda r: (abs(r.disc), r.disc)):
        sv = screen_ipad(r.ipad)
        row = {"disc": r.disc, "ipad": format_ipad(r.ipad), "screen": sv.category,
               "state": sv.state, "tkt": "" if r.tkt is None else str(tkt_canonical(r.tkt)),
               "verdict": "", "reason": ""}
        if mode == "classify":
            reading = detect_state(r.ipad[1:], r.tkt)
            if reading.n is not None:
                row["state"] = reading.label
            row["verdict"], row["reason"] = _verdict(r)
            if not row["reason"] and reading.reason:
                row["reason"] = reading.reason
        rows.append(row)
    return rows


def report(records, mode="classify"):
    """CSV text of report_rows."""
    rows = report_rows(records, mode)
    cols = STATS_COLUMNS if mode == "stats" else REPORT_COLUMNS
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def tkt_histogram(records):
    return _histogram(tkt_name(r.tkt) for r in records if r.tkt is not None)


# aggregated IPAD frequency rows: "ipad=[..] num=<int> min=<int>"

@dataclass(frozen=True)
class IpadFrequency:
    ipad: tuple
    count: int
    min_disc: int


def parse_frequencies(text):
    out = []
    for k, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#")[0].strip()
        if not body:
            continue
        m = re.fullmatch(r"ipad=(\S+)\s+num=(\d+)\s+min=(\d+)", body)
        if not m:
            raise RecordSyntaxError("expected 'ipad=[..] num=<int> min=<int>'", k)
        try:
            ipad = parse_ipad(m.group(1))
        except (InvariantSyntaxError, ValueError) as exc:
            raise RecordSyntaxError(f"bad IPAD: {exc}", k, m.start(1) + 1) from None
        out.append(IpadFrequency(ipad, int(m.group(2)), int(m.group(3))))
    return out


def merge_frequencies(rows):
    """Combine rows with equal IPAD: counts add, minima take the minimum."""
    acc = {}
    for r in rows:
        if r.ipad in acc:
            old = acc[r.ipad]
            acc[r.ipad] = IpadFrequency(r.ipad, old.count + r.count, min(old.min_disc, r.min_disc))
        else:
            acc[r.ipad] = r
    return sorted(acc.values(), key=lambda r: (r.min_disc, format_ipad(r.ipad)))


def frequencies_of(records):
    return merge_frequencies(IpadFrequency(r.ipad, 1, abs(r.disc)) for r in records)


# descendant trees

MAX_DOT_LO = 20


@dataclass(frozen=True)
class _Node:
    ident: str
    lo: int
    label: str
    constructible: bool


def _hull_run(t):
    if t == 0:
        return ""
    return "[-#2;1-#1;1]" + (f"^{t}" if t > 1 else "")


def _tree_vertices(tree, max_lo):
    """Nodes and (parent, child, step size) edges up to logarithmic order max_lo."""
    from .families import COUNTER_ELL, COUNTER_VARIANT
    nodes = {}
    edges = []

    def add(ident, lo, label, ok=True, parent=None, step=1):
        if lo > max_lo:
            return False
        nodes[ident] = _Node(ident, lo, label, ok)
        if parent is not None:
            edges.append((parent, ident, step))
        return True

    def seq(n, pair):
        if n == 0:
            return ""
        return f"({pair})" if n == 1 else f"({pair})^{n}"

    m1 = "-#1;1-#1;1"
    m2 = "-#2;1-#1;1"
    add("R", 5, "X_3^2")
    add("F", 6, "X_4^2 (fork)", parent="R")
    # coclass-2 mainline and its leaves
    for n in range(0, max_lo):
        even = "F" + seq(n, m1)
        odd = even + "-#1;1"
        c = 4 + 2 * n
        if n and not add(even, c + 2, f"X_{c}^2", parent="F" + seq(n - 1, m1) + "-#1;1"):
            break
        if not add(odd, c + 3, f"X_{c + 1}^2", parent=even):
            break
        # metabelian leaves of class c+1 hang off X_c^2
        for i, v in sorted(COUNTER_VARIANT[tree].items()):
            if i < 5:
                add(f"{even}[-#1;{i}]", c + 3, f"M_{n}^{i} ({v})", parent=even)
            elif add(f"{even}[-#1;{i}]", c + 3, f"{v} (c={c + 1})", parent=even):
                # complex-type leaves sit one step below these siblings
                add(f"{even}[-#1;{i}-#1;1]", c + 4, f"M_{n}^{i}", False, parent=f"{even}[-#1;{i}]")
    # the maintrunk of step-2 pairs, higher-coclass mainlines and their leaves
    for u in range(0, max_lo):
        top = "F" + seq(u, m2)
        lo_top = 6 + 3 * u
        if u and not add(top, lo_top, f"X_{4 + 2 * u}^{2 + u}",
                         parent="F" + seq(u - 1, m2) + "-#2;1", step=1):
            break
        if lo_top > max_lo:
            break
        mid = top + "-#2;1"
        add(mid, lo_top + 2, f"X_{5 + 2 * u}^{3 + u}", parent=top, step=2)
        # Schur sigma-group leaves
        for i in (2, 3, 4):
            ell = COUNTER_ELL[tree].get(i)
            ok = ell is not None
            label = f"S_{u}^{i}" + (f" (e={0 if tree == 'Q' else 1}, l={ell})" if ok else "")
            add(f"{top}[-#2;{i}]", lo_top + 2, label, ok, parent=top, step=2)
        # complex hulls and their Schur leaves
        for i in (5, 6):
            h1 = f"{top}[-#2;{i}]"
            if not add(h1, lo_top + 2, f"H_{u}^{i}", False, parent=top, step=2):
                continue
            t = 0
            prev = f"{top}[-#2;{i}-#1;1]"
            add(prev, lo_top + 3, f"P_{u},0^{i}", False, parent=h1)
            while prev in nodes:
                lo_p = lo_top + 3 + 3 * t
                add(f"{prev}[-#2;2]", lo_p + 2, f"S_{u},{t}^{i}", False, parent=prev, step=2)
                half = f"{prev}[-#2;1]"
                nxt = f"{top}[-#2;{i}-#1;1]" + _hull_run(t + 1)
                if add(half, lo_p + 2, f"Q_{u},{t}^{i}", False, parent=prev, step=2):
                    add(nxt, lo_p + 3, f"P_{u},{t + 1}^{i}", False, parent=half)
                prev = nxt
                t += 1
        if u == 0:
            continue
        # coclass 2+u mainline below the trunk vertex, with T leaves
        for v in range(0, max_lo):
            even = top + seq(v, m1)
            c = 4 + 2 * (u + v)
            lo_even = c + 2 + u
            if v and not add(even, lo_even, f"X_{c}^{2 + u}", parent=top + seq(v - 1, m1) + "-#1;1"):
                break
            if lo_even > max_lo:
                break
            add(even + "-#1;1", lo_even + 1, f"X_{c + 1}^{2 + u}", parent=even)
            for i in (2, 3, 4):
                add(f"{even}[-#1;{i}]", lo_even + 1, f"T_{u + v},{u}^{i}", False, parent=even)
    return nodes, edges


def emit_tree_dot(tree, max_lo):
    if tree not in ("Q", "U"):
        raise ValueError("tree must be 'Q' or 'U'")
    if max_lo > MAX_DOT_LO:
        raise ValueError(f"max_lo must be at most {MAX_DOT_LO}")
    nodes, edges = _tree_vertices(tree, max_lo)
    root = "<243,6>" if tree == "Q" else "<243,8>"
    lines = [f'digraph "{tree}" {{', f'  label="descendants of {root} up to lo={max_lo}";']
    for nd in sorted(nodes.values(), key=lambda x: (x.lo, x.ident)):
        shape = "ellipse" if nd.constructible else "diamond"
        lines.append(f'  "{nd.ident}" [label="{nd.label}\\nlo={nd.lo}", shape={shape}];')
    for a, b, s in sorted(edges, key=lambda e: (nodes[e[1]].lo, e[0], e[1])):
        lines.append(f'  "{a}" -> "{b}" [label="{s}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
