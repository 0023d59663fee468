"""Frame JSON and Graphviz DOT.

Frame JSON::

    {"points": ["a", "b"], "edges": [["a", "b"]], "closed": true}

``closed: false`` means the edges are to be transitively closed on load.
A ``closed: true`` file whose relation is not transitive is rejected
unless ``close=True`` is passed.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import FrameError
from .frame import Frame, build_frame


def frame_from_json(data, close: bool = False) -> Frame:
    if not isinstance(data, dict):
        raise FrameError("frame JSON must be an object")
    if "points" not in data:
        raise FrameError("frame JSON needs a 'points' list")
    points = data["points"]
    edges = data.get("edges", [])
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise FrameError("'points' must be a list of strings")
    if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 2 for e in edges):
        raise FrameError("'edges' must be a list of [source, target] pairs")
    auto = close or not data.get("closed", True)
    return build_frame(points, [tuple(e) for e in edges], auto_close=auto)


def frame_to_json(F: Frame) -> dict:
    return {"points": [str(p) for p in F.points],
            "edges": [[str(a), str(b)] for a, b in F.edges()],
            "closed": True}


def dump_frame(F: Frame) -> str:
    return json.dumps(frame_to_json(F), indent=1) + "\n"


def load_frame(path, close: bool = False) -> Frame:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FrameError(f"{path}: invalid JSON ({e})") from e
    return frame_from_json(data, close)


def save_frame(F: Frame, path) -> None:
    Path(path).write_text(dump_frame(F))


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(F: Frame, name: str = "frame") -> str:
    """Clusters as boxed subgraphs (dashed when degenerate), reflexive
    points filled, irreflexive points dashed, and the covering edges of
    the skeleton drawn between cluster boxes."""
    sk = F.skeleton
    lines = [f"digraph {_q(name)} {{", "  compound=true;", "  node [shape=circle];"]
    for c, cl in enumerate(sk.clusters):
        style = "dashed" if cl.degenerate else "solid"
        lines.append(f"  subgraph cluster_{c} {{")
        lines.append(f"    style={style}; label={_q(cl.label)};")
        for w in cl.members:
            if F.is_reflexive(w):
                lines.append(f"    {_q(w)} [style=filled, fillcolor=lightgray];")
            else:
                lines.append(f"    {_q(w)} [style=dashed];")
        lines.append("  }")
    for c, s in enumerate(sk.succ):
        for d in range(len(sk.clusters)):
            if not s >> d & 1:
                continue
            # covering edges only: no cluster strictly between c and d
            if any(s >> e & 1 and sk.succ[e] >> d & 1 for e in range(len(sk.clusters))):
                continue
            a = sk.clusters[c].members[0]
            b = sk.clusters[d].members[0]
            lines.append(f"  {_q(a)} -> {_q(b)} [ltail=cluster_{c}, lhead=cluster_{d}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
