"""Plain-text bundle formats: .sgp tables, .tsm modules, .tpa actions and .ext extensions."""
from __future__ import annotations

import re
from pathlib import Path

from .actions import ExtensionByG, verify_tpa
from .clifford import Multiplier, certify_clifford
from .errors import MalformedInput
from .groups import FiniteGroup
from .modules import ExtensionByS, verify_module
from .semigroup import FiniteSemigroup, inverse_structure, load_table, parse_sgp_lines

_HEADER = re.compile(r"^(S|A|U|Q|ALPHA|LAMBDA|F|GROUP|ALGEBRA|DOMAIN|THETA|W|I|J|KIND)\b\s*(.*)$")
_ARROW = re.compile(r"^(-?\d+)\s*(?:->|→)\s*(-?\d+)$")


def _clean(text):
    out = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            out.append(ln)
    return out


def _sections(text):
    """List of (keyword, header args, body lines) in file order."""
    secs = []
    for ln in _clean(text):
        m = _HEADER.match(ln)
        if m:
            head, rest = m.group(1), m.group(2)
            args, _, tail = rest.partition(":")
            if ":" not in rest:
                args, tail = "", rest
            secs.append([head, args.split(), []])
            if tail.strip():
                secs[-1][2].append(tail.strip())
        elif not secs:
            raise MalformedInput(f"content before the first section: {ln!r}")
        else:
            secs[-1][2].append(ln)
    return secs


def _one(secs, key, required=True):
    found = [s for s in secs if s[0] == key]
    if len(found) > 1:
        raise MalformedInput(f"section {key} appears {len(found)} times")
    if not found:
        if required:
            raise MalformedInput(f"missing section {key}")
        return None
    return found[0]


def _ints(line, what):
    try:
        return [int(x) for x in line.split()]
    except ValueError:
        raise MalformedInput(f"non-integer entry in {what}: {line!r}") from None


def _int_arg(args, what):
    try:
        return int(args[0])
    except (IndexError, ValueError):
        raise MalformedInput(f"{what} needs an integer index") from None


def _pairs(lines, what):
    out = {}
    for tok in re.findall(r"-?\d+\s*(?:->|→)\s*-?\d+", " ".join(lines)):
        a, b = (int(v) for v in _ARROW.match(tok).groups())
        if a in out:
            raise MalformedInput(f"{what}: {a} mapped twice", (a,))
        out[a] = b
    rest = re.sub(r"-?\d+\s*(?:->|→)\s*-?\d+", "", " ".join(lines)).replace(",", " ").strip()
    if rest:
        raise MalformedInput(f"{what}: cannot parse {rest!r}")
    return out


def _sgp(sec):
    return parse_sgp_lines(sec[2])


def read_sgp(path):
    return load_table(Path(path).read_text())


def write_sgp(S, comments=()):
    base = getattr(S, "base", S)
    while not isinstance(base, FiniteSemigroup):
        base = base.base
    head = "".join(f"# {c}\n" for c in comments)
    return head + base.to_sgp()


def _block(name, S):
    return f"{name}\n" + write_sgp(S)


# ---------------------------------------------------------------------------
# .tsm


def parse_tsm(text):
    secs = _sections(text)
    S = inverse_structure(_sgp(_one(secs, "S")))
    A = certify_clifford(_sgp(_one(secs, "A")))
    alpha = _pairs(_one(secs, "ALPHA")[2], "ALPHA")
    lam = [_ints(ln, "LAMBDA") for ln in _one(secs, "LAMBDA")[2]]
    f = [_ints(ln, "F") for ln in _one(secs, "F")[2]]
    return verify_module(S, A, alpha, lam, f)


def write_tsm(mod, comments=()):
    out = ["".join(f"# {c}\n" for c in comments)]
    out.append(_block("S", mod.S))
    out.append(_block("A", mod.A))
    out.append("ALPHA\n" + " ".join(f"{e}->{mod.alpha[e]}" for e in sorted(mod.alpha)) + "\n")
    out.append("LAMBDA\n" + "".join(" ".join(map(str, r)) + "\n" for r in mod.lam))
    out.append("F\n" + "".join(" ".join(map(str, r)) + "\n" for r in mod.f))
    return "".join(out)


# ---------------------------------------------------------------------------
# .tpa


def parse_tpa(text):
    secs = _sections(text)
    G = FiniteGroup(_sgp(_one(secs, "GROUP")))
    A = certify_clifford(_sgp(_one(secs, "ALGEBRA")))
    doms, theta, w = {}, {}, {}
    for head, args, body in secs:
        if head == "DOMAIN":
            x = _int_arg(args, "DOMAIN")
            if x in doms:
                raise MalformedInput("DOMAIN given twice", (x,))
            doms[x] = frozenset(v for ln in body for v in _ints(ln, "DOMAIN"))
        elif head == "THETA":
            x = _int_arg(args, "THETA")
            if x in theta:
                raise MalformedInput("THETA given twice", (x,))
            theta[x] = _pairs(body, f"THETA {x}")
    for x in range(G.n):
        if x not in doms or x not in theta:
            raise MalformedInput("missing DOMAIN or THETA", (x,))
    domains = tuple(doms[x] for x in range(G.n))
    for head, args, body in secs:
        if head != "W":
            continue
        if len(args) != 2:
            raise MalformedInput("W needs two indices")
        x, y = (int(v) for v in args)
        if (x, y) in w:
            raise MalformedInput("W given twice", (x, y))
        if not (0 <= x < G.n and 0 <= y < G.n):
            raise MalformedInput("W index out of range", (x, y))
        dom = tuple(sorted(domains[x] & domains[G.mul(x, y)]))
        if len(body) != 2:
            raise MalformedInput("W block needs a left line and a right line", (x, y))
        left, right = (_ints(ln, "W") for ln in body)
        if len(left) != len(dom) or len(right) != len(dom):
            raise MalformedInput("W line length differs from |D_x D_xy|", (x, y))
        w[(x, y)] = Multiplier(dom, dict(zip(dom, left)), dict(zip(dom, right)))
    for x in range(G.n):
        for y in range(G.n):
            if (x, y) not in w:
                raise MalformedInput("missing W block", (x, y))
    return verify_tpa(G, A, domains, tuple(theta[x] for x in range(G.n)), w)


def write_tpa(T, comments=()):
    G = T.G
    out = ["".join(f"# {c}\n" for c in comments)]
    out.append(_block("GROUP", G))
    out.append(_block("ALGEBRA", T.A))
    for x in range(G.n):
        out.append(f"DOMAIN {x}: " + " ".join(map(str, sorted(T.domains[x]))) + "\n")
    for x in range(G.n):
        th = T.theta[x]
        out.append(f"THETA {x}: " + " ".join(f"{a}->{th[a]}" for a in sorted(th)) + "\n")
    for x in range(G.n):
        for y in range(G.n):
            m = T.w[(x, y)]
            out.append(f"W {x} {y}:\n")
            out.append(" ".join(str(m.left[a]) for a in m.domain) + "\n")
            out.append(" ".join(str(m.right[a]) for a in m.domain) + "\n")
    return "".join(out)


# ---------------------------------------------------------------------------
# .ext


def parse_ext(text):
    secs = _sections(text)
    A = certify_clifford(_sgp(_one(secs, "A")))
    U = inverse_structure(_sgp(_one(secs, "U")))
    Q = _sgp(_one(secs, "Q"))
    i = tuple(v for ln in _one(secs, "I")[2] for v in _ints(ln, "I"))
    j = tuple(v for ln in _one(secs, "J")[2] for v in _ints(ln, "J"))
    kind_sec = _one(secs, "KIND", required=False)
    if kind_sec is not None:
        kind = " ".join(kind_sec[2] + kind_sec[1]).strip().upper()
    else:
        kind = "G" if len(Q.idempotent_set) == 1 and _is_group(Q) else "S"
    if kind == "G":
        return ExtensionByG(A, U, FiniteGroup(Q), i, j)
    if kind == "S":
        return ExtensionByS(A, U, inverse_structure(Q), i, j)
    raise MalformedInput(f"KIND must be S or G, got {kind!r}")


def _is_group(Q):
    from .semigroup import group_witness

    return group_witness(Q) is None


def write_ext(ext, comments=()):
    kind = "G" if isinstance(ext, ExtensionByG) else "S"
    Q = ext.G if kind == "G" else ext.S
    out = ["".join(f"# {c}\n" for c in comments)]
    out.append(f"KIND {kind}\n")
    out.append(_block("A", ext.A))
    out.append(_block("U", ext.U))
    out.append(_block("Q", Q))
    out.append("I " + " ".join(map(str, ext.i.map)) + "\n")
    out.append("J " + " ".join(map(str, ext.j.map)) + "\n")
    return "".join(out)


_READERS = {".sgp": load_table, ".tsm": parse_tsm, ".tpa": parse_tpa, ".ext": parse_ext}


def load_bundle(path):
    """Parse any supported file by suffix."""
    path = Path(path)
    reader = _READERS.get(path.suffix)
    if reader is None:
        raise MalformedInput(f"unknown file type {path.suffix!r}")
    return reader(path.read_text(encoding="utf-8"))
