"""Reading and writing families, colorings, posets and embeddings."""

from __future__ import annotations

import json
from pathlib import Path

from .constructions import build
from .copies import Coloring
from .errors import BadParams
from .families import SetFamily, katona_tarjan_family, layer, middle_layers
from .poset import Poset, hasse, parse_catalog_id, transitive_closure


def _header(line):
    line = line.strip()
    if not line.startswith("n="):
        raise BadParams(f"expected 'n=<n>' header, got {line!r}")
    return int(line[2:])


def _body(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise BadParams("empty file")
    return _header(lines[0]), lines[1:]


def dump_family(F):
    return "\n".join([f"n={F.n}"] + [format(m, "x") for m in F]) + "\n"


def parse_family(text):
    n, rows = _body(text)
    return SetFamily(n, [int(r, 16) for r in rows])


def dump_coloring(c):
    return "\n".join([f"n={c.n}"] + [str(x) for x in c.colors]) + "\n"


def parse_coloring(text):
    n, rows = _body(text)
    return Coloring.from_labels(n, [int(r) for r in rows])


def poset_to_json(P):
    return {"n": P.size, "covers": [list(a) for a in hasse(P).arcs], "labels": list(P.labels)}


def poset_from_json(data):
    return transitive_closure([tuple(c) for c in data["covers"]], data["n"], data.get("labels"))


def load_poset(spec):
    """A catalog id such as ``crown:3`` or the path of a poset JSON file."""
    if isinstance(spec, Poset):
        return spec
    path = Path(spec)
    if path.suffix == ".json" and path.exists():
        return poset_from_json(json.loads(path.read_text()))
    return parse_catalog_id(spec)


_FAMILY_SPECS = {
    "layer": (layer, 2),
    "middle": (middle_layers, 2),
    "katona_tarjan": (katona_tarjan_family, 1),
}


def load_family(spec):
    """A family file, or an inline spec ``layer:N:K``, ``middle:N:H``, ``katona_tarjan:N``."""
    path = Path(spec)
    if path.exists():
        return parse_family(path.read_text())
    name, *args = spec.split(":")
    if name not in _FAMILY_SPECS:
        raise BadParams(f"no file {spec!r} and not an inline family spec")
    fn, arity = _FAMILY_SPECS[name]
    try:
        args = [int(a) for a in args]
    except ValueError as exc:
        raise BadParams(f"bad family spec {spec!r}") from exc
    if len(args) != arity:
        raise BadParams(f"{name} takes {arity} integer argument(s)")
    return fn(*args)


def load_coloring(spec):
    """A coloring file or an inline construction spec such as ``butterfly:4``."""
    path = Path(spec)
    if path.exists():
        return parse_coloring(path.read_text())
    return build(spec)


def embedding_to_json(emb):
    return {label: format(m, "x") for label, m in emb.as_dict().items()}
