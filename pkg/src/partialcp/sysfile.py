"""Reading and writing system descriptions.

Two renderings are accepted.  JSON::

    {"blocks": [{"id": "1", "dim": 1}, {"id": "2", "dim": 1}], "map": [["1", "2"]]}

and a line format with ``id dim`` lines followed by ``src -> dst`` lines;
``#`` starts a comment::

    1 1
    2 1
    1 -> 2
"""

from __future__ import annotations

import json
from typing import List, Optional, Tuple

from .algebra import BlockAlgebra
from .partial import PartialInjection, PartialSystem


class SystemFileError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


Located = Tuple[object, Optional[int]]


def _build(blocks: List[Tuple[str, object, Optional[int]]], pairs: List[Tuple[str, str, Optional[int]]]) -> PartialSystem:
    """Validate everything a :class:`PartialSystem` would, keeping line numbers."""
    dims = {}
    for bid, dim, line in blocks:
        if bid in dims:
            raise SystemFileError(f"duplicate block id {bid!r}", line)
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise SystemFileError(f"block {bid!r} has invalid dimension {dim!r} (need a positive integer)", line)
        dims[bid] = dim
    fwd, back = {}, {}
    for s, t, line in pairs:
        for b in (s, t):
            if b not in dims:
                raise SystemFileError(f"map refers to unknown block {b!r}", line)
        if s in fwd:
            raise SystemFileError(f"map not a function at source {s}", line)
        if t in back:
            raise SystemFileError(f"map not injective at target {t}", line)
        if dims[s] != dims[t]:
            raise SystemFileError(
                f"map pairs block {s} (dim {dims[s]}) with block {t} (dim {dims[t]})", line
            )
        fwd[s] = t
        back[t] = s
    return PartialSystem(
        BlockAlgebra(tuple((b, d) for b, d, _ in blocks)),
        PartialInjection(tuple((s, t) for s, t, _ in pairs)),
    )


def _parse_json(text: str) -> PartialSystem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SystemFileError(e.msg, e.lineno, e.colno) from None
    if not isinstance(data, dict) or set(data) - {"blocks", "map"} or "blocks" not in data:
        raise SystemFileError('expected an object with keys "blocks" and "map"')
    blocks = []
    for i, b in enumerate(data["blocks"]):
        if not isinstance(b, dict) or "id" not in b or "dim" not in b:
            raise SystemFileError(f"blocks[{i}] must be an object with id and dim")
        blocks.append((str(b["id"]), b["dim"], None))
    pairs = []
    for i, p in enumerate(data.get("map", [])):
        if not isinstance(p, (list, tuple)) or len(p) != 2:
            raise SystemFileError(f"map[{i}] must be a [source, target] pair")
        pairs.append((str(p[0]), str(p[1]), None))
    try:
        return _build(blocks, pairs)
    except SystemFileError as e:
        raise SystemFileError(e.message + _json_where(data, e.message)) from None


def _json_where(data: dict, message: str) -> str:
    for i, b in enumerate(data["blocks"]):
        if repr(str(b["id"])) in message:
            return f" (blocks[{i}])"
    return ""


def _parse_lines(text: str) -> PartialSystem:
    blocks, pairs = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            src, _, dst = line.partition("->")
            src, dst = src.strip(), dst.strip()
            if not src or not dst or " " in src or " " in dst:
                raise SystemFileError("expected 'src -> dst'", lineno, raw.find("->") + 1)
            pairs.append((src, dst, lineno))
            continue
        if pairs:
            raise SystemFileError("block lines must come before map lines", lineno, 1)
        parts = line.split()
        if len(parts) != 2:
            raise SystemFileError("expected 'id dim'", lineno, 1)
        try:
            dim = int(parts[1])
        except ValueError:
            raise SystemFileError(
                f"block {parts[0]!r} has invalid dimension {parts[1]!r} (need a positive integer)",
                lineno, raw.find(parts[1], raw.find(parts[0]) + len(parts[0])) + 1,
            ) from None
        blocks.append((parts[0], dim, lineno))
    return _build(blocks, pairs)


def parse_system(text: str) -> PartialSystem:
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_lines(text)


def load_system(path: str) -> PartialSystem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SystemFileError(f"cannot read {path}: {e.strerror}") from None
    return parse_system(text)


def to_json(system: PartialSystem) -> str:
    return json.dumps(
        {
            "blocks": [{"id": str(b), "dim": d} for b, d in system.algebra.blocks],
            "map": [[str(s), str(t)] for s, t in system.map.pairs],
        },
        indent=2,
    )


def to_text(system: PartialSystem) -> str:
    lines = [f"{b} {d}" for b, d in system.algebra.blocks]
    lines += [f"{s} -> {t}" for s, t in system.map.pairs]
    return "\n".join(lines) + "\n"
