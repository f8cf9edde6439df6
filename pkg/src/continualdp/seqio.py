"""Update-log text format for graph sequences.

One update per line:

    t=<int> +v:<id,...> -v:<id,...> +e:<u-v:w,...> -e:<u-v,...>

Empty fields are omitted.  The initial graph is serialized as a ``t=0``
line carrying only insertions; a ``t=0`` line is emitted even when the
initial graph is empty so the horizon is unambiguous.  Lines starting
with ``#`` are comments and ignored on parse.
"""

from __future__ import annotations

from .errors import FormatError
from .graphs import Graph, GraphSequence, Update


def _fmt_update(t: int, u: Update) -> str:
    parts = [f"t={t}"]
    if u.v_ins:
        parts.append("+v:" + ",".join(str(v) for v in sorted(u.v_ins)))
    if u.v_del:
        parts.append("-v:" + ",".join(str(v) for v in sorted(u.v_del)))
    if u.e_ins:
        parts.append(
            "+e:" + ",".join(f"{a}-{b}:{w}" for (a, b), w in sorted(u.e_ins.items()))
        )
    if u.e_del:
        parts.append("-e:" + ",".join(f"{a}-{b}" for a, b in sorted(u.e_del)))
    return " ".join(parts)


def serialize_sequence(seq: GraphSequence) -> str:
    g0 = seq.initial
    init = Update(v_ins=g0.nodes, e_ins=dict(g0.edges))
    lines = [_fmt_update(0, init)]
    lines.extend(_fmt_update(t, u) for t, u in enumerate(seq.updates, start=1))
    return "\n".join(lines) + "\n"


def _parse_int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"bad {what}: {tok!r}") from None


def _parse_update(line: str) -> tuple[int, Update]:
    fields = line.split()
    if not fields or not fields[0].startswith("t="):
        raise FormatError(f"line must start with t=<int>: {line!r}")
    t = _parse_int(fields[0][2:], "time index")
    v_ins: list[int] = []
    v_del: list[int] = []
    e_ins: list[tuple[int, int, int]] = []
    e_del: list[tuple[int, int]] = []
    for field in fields[1:]:
        if ":" not in field:
            raise FormatError(f"malformed field {field!r}")
        tag, body = field.split(":", 1)
        items = body.split(",") if body else []
        if tag == "+v":
            v_ins.extend(_parse_int(x, "node id") for x in items)
        elif tag == "-v":
            v_del.extend(_parse_int(x, "node id") for x in items)
        elif tag == "+e":
            for item in items:
                try:
                    uv, w = item.split(":")
                    a, b = uv.split("-")
                except ValueError:
                    raise FormatError(f"bad edge insert {item!r}") from None
                e_ins.append(
                    (_parse_int(a, "node id"), _parse_int(b, "node id"), _parse_int(w, "weight"))
                )
        elif tag == "-e":
            for item in items:
                try:
                    a, b = item.split("-")
                except ValueError:
                    raise FormatError(f"bad edge delete {item!r}") from None
                e_del.append((_parse_int(a, "node id"), _parse_int(b, "node id")))
        else:
            raise FormatError(f"unknown field tag {tag!r}")
    return t, Update(v_ins=v_ins, v_del=v_del, e_ins=e_ins, e_del=e_del)


def parse_sequence(text: str) -> GraphSequence:
    updates: dict[int, Update] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        t, u = _parse_update(line)
        if t < 0:
            raise FormatError(f"negative time index {t}")
        if t in updates:
            raise FormatError(f"duplicate line for t={t}")
        updates[t] = u
    if 0 not in updates:
        raise FormatError("missing t=0 initial-graph line")
    init = updates.pop(0)
    if init.v_del or init.e_del:
        raise FormatError("t=0 line may only contain insertions")
    initial = Graph(init.v_ins, init.e_ins)
    if updates:
        T = max(updates)
        if sorted(updates) != list(range(1, T + 1)):
            raise FormatError("time indices must be contiguous 1..T")
        seq = GraphSequence(initial, [updates[t] for t in range(1, T + 1)])
    else:
        seq = GraphSequence(initial, [])
    seq.validate()
    return seq
