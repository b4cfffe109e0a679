"""Plain-text instance files.

::

    # tight example: path a-b-c-d
    n 4
    e 0 1
    e 1 2
    e 2 3
    opt 0 2
    alice 1
    order 3 1 2 4

``e`` lines fix edge indices in order of appearance; ``alice`` lists the
non-OPT edges Alice holds in the semi-robust model (default none) and
``order`` gives the rank of vertex 0, 1, ... (default identity).
"""

from __future__ import annotations

from pathlib import Path

from .graph import GraphInstance, InstanceError

DIRECTIVES = ("n", "e", "opt", "alice", "order")


class ParseError(InstanceError):
    def __init__(self, lineno: int | None, msg: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse_instance(text: str) -> GraphInstance:
    n = None
    edges: list[tuple[int, int]] = []
    opt = adversary = order = None
    where: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key not in DIRECTIVES:
            raise ParseError(lineno, f"unknown directive {key!r}")
        vals = _ints(rest, lineno)
        if key != "e" and key in where:
            raise ParseError(lineno, f"duplicate {key!r} directive (first on line {where[key]})")
        where.setdefault(key, lineno)
        if key == "n":
            if len(vals) != 1 or vals[0] < 0:
                raise ParseError(lineno, "'n' takes one non-negative count")
            n = vals[0]
        elif key == "e":
            if len(vals) != 2:
                raise ParseError(lineno, "'e' takes exactly two vertices")
            if n is None:
                raise ParseError(lineno, "'e' before 'n'")
            u, v = vals
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(lineno, f"vertex out of range 0..{n - 1}")
            if u == v:
                raise ParseError(lineno, f"self-loop on vertex {u}")
            if (min(u, v), max(u, v)) in {(min(a, b), max(a, b)) for a, b in edges}:
                raise ParseError(lineno, f"duplicate edge {u} {v}")
            edges.append((u, v))
        elif key == "opt":
            opt = vals
        elif key == "alice":
            adversary = vals
        else:
            order = vals
    if n is None:
        raise ParseError(None, "missing 'n' directive")
    if opt is None:
        raise ParseError(None, "missing 'opt' directive")
    try:
        return GraphInstance(n, tuple(edges), tuple(opt), tuple(adversary or ()), tuple(order or ()))
    except InstanceError as exc:
        msg = str(exc)
        for key, word in (("opt", "opt"), ("alice", "adversary"), ("order", "ordering")):
            if msg.startswith(word) and key in where:
                raise ParseError(where[key], msg) from None
        raise ParseError(None, msg) from None


def load_instance(path) -> GraphInstance:
    return parse_instance(Path(path).read_text())


def format_instance(inst: GraphInstance, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(f"n {inst.n}")
    lines += [f"e {u} {v}" for u, v in inst.edges]
    lines.append("opt " + " ".join(map(str, inst.opt)))
    if inst.adversary:
        lines.append("alice " + " ".join(map(str, inst.adversary)))
    lines.append("order " + " ".join(map(str, inst.sigma)))
    return "\n".join(lines) + "\n"


def save_instance(inst: GraphInstance, path, comment: str | None = None) -> None:
    Path(path).write_text(format_instance(inst, comment))
