"""JSON schemas for every value the command line reads or writes.

Subset conventions: a space is ``{"points": n, "connected": [[i, ...],
...]}`` with the empty set implicit; an optional ``"integral": true``
makes the singletons implicit too.  Emitters list every nonempty
connected part explicitly, in canonical order, so identical values
serialize to identical bytes.

Any document may also arrive wrapped in a report envelope ``{"ok": ...,
"result": ...}``; parsers unwrap it, which lets commands be piped.
"""

from __future__ import annotations

import json
import os
from typing import Any

from .conncat import ConnCat
from .conndynamics import ConnDynamics
from .core import InputError, bits, mask_of, sorted_family
from .dynamics import Dynamics, Dynamorphism
from .fincat import FinCat, FunctorData
from .foliations import Foliation
from .representations import Representation, RepMorphism
from .spaces import PartialEquiv, SeparationDevice, Space


def unwrap(doc: Any) -> Any:
    if isinstance(doc, dict) and "ok" in doc and "result" in doc:
        return doc["result"]
    return doc


def _as_dict(doc: Any, what: str) -> dict:
    doc = unwrap(doc)
    if not isinstance(doc, dict):
        raise InputError(f"{what} document must be a JSON object")
    return doc


def _points(doc: dict) -> int:
    n = doc.get("points")
    if not isinstance(n, int) or n < 0:
        raise InputError("'points' must be a non-negative integer")
    return n


def _family(doc: dict, key: str, n: int, integral_key: str | None = None) -> frozenset[int]:
    raw = doc.get(key, [])
    if not isinstance(raw, list):
        raise InputError(f"'{key}' must be a list of index lists")
    fam = {0}
    for part in raw:
        if not isinstance(part, list):
            raise InputError(f"'{key}' must be a list of index lists")
        fam.add(mask_of(part, n))
    flag = doc.get(integral_key if integral_key else "integral", False)
    if flag:
        fam.update(1 << i for i in range(n))
    return frozenset(fam)


def parse_family(doc: Any) -> tuple[int, frozenset[int]]:
    """A support size and a subset family, with no validity requirement."""
    doc = _as_dict(doc, "family")
    n = _points(doc)
    return n, _family(doc, "connected", n)


def parse_space(doc: Any) -> Space:
    n, fam = parse_family(doc)
    return Space(n, fam)


def emit_space(sp: Space) -> dict:
    return {
        "points": sp.n,
        "connected": [list(t) for t in sorted_family(sp.connected) if t],
    }


def parse_foliation(doc: Any) -> Foliation:
    doc = _as_dict(doc, "foliation")
    n = _points(doc)
    internal = _family(doc, "internal", n, "internal_integral")
    external = _family(doc, "external", n, "external_integral")
    return Foliation(n, internal, external)


def emit_foliation(fol: Foliation) -> dict:
    return {
        "points": fol.n,
        "internal": [list(t) for t in sorted_family(fol.internal) if t],
        "external": [list(t) for t in sorted_family(fol.external) if t],
    }


def parse_device(doc: Any) -> SeparationDevice:
    doc = _as_dict(doc, "separation device")
    n = _points(doc)
    raw = doc.get("pairs", [])
    pairs = set()
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError("every device pair must be a two-element list of index lists")
        pairs.add((mask_of(pair[0], n), mask_of(pair[1], n)))
    return SeparationDevice(n, frozenset(pairs))


def emit_device(dev: SeparationDevice) -> dict:
    pairs = sorted((sorted(bits(s)), sorted(bits(t))) for s, t in dev.pairs)
    return {"points": dev.n, "pairs": [[list(s), list(t)] for s, t in pairs]}


def parse_partial_equiv(doc: Any) -> PartialEquiv:
    doc = _as_dict(doc, "partial equivalence")
    n = _points(doc)
    raw = doc.get("classes", [])
    return PartialEquiv(n, tuple(mask_of(c, n) for c in raw))


def parse_classes_option(text: str, n: int) -> PartialEquiv:
    """Classes from a compact 'i,j;k' command-line string."""
    classes = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        classes.append(mask_of((int(v) for v in chunk.split(",")), n))
    return PartialEquiv(n, tuple(classes))


def parse_pointmap_option(text: str, source: int, target: int) -> tuple[int, ...]:
    values = tuple(int(v) for v in text.split(",")) if text.strip() else ()
    if len(values) != source:
        raise InputError(f"point map needs {source} comma-separated values")
    for v in values:
        if not 0 <= v < target:
            raise InputError(f"point map value {v} out of range")
    return values


def parse_representation(doc: Any) -> Representation:
    doc = _as_dict(doc, "representation")
    obj = parse_space(doc.get("object"))
    amb = parse_space(doc.get("ambient"))
    raw = doc.get("map")
    if not isinstance(raw, list) or len(raw) != obj.n:
        raise InputError("'map' must list one image per object point")
    images = tuple(mask_of(img, amb.n) for img in raw)
    return Representation(obj, amb, images)


def emit_representation(rho: Representation) -> dict:
    return {
        "object": emit_space(rho.object_space),
        "ambient": emit_space(rho.ambient),
        "map": [sorted(bits(img)) for img in rho.images],
    }


def parse_category(doc: Any, base_dir: str = ".") -> FinCat:
    doc = unwrap(doc)
    if isinstance(doc, str):
        with open(os.path.join(base_dir, doc), "r", encoding="utf-8") as handle:
            return parse_category(json.load(handle), os.path.dirname(os.path.join(base_dir, doc)) or ".")
    doc = _as_dict(doc, "category")
    obs = doc.get("objects")
    if not isinstance(obs, list):
        raise InputError("'objects' must be a list of names")
    obs = [str(o) for o in obs]
    ob_index = {o: i for i, o in enumerate(obs)}
    raw_arrows = doc.get("arrows")
    if not isinstance(raw_arrows, list):
        raise InputError("'arrows' must be a list of {id, dom, cod} objects")
    names, dom, cod = [], [], []
    for a in raw_arrows:
        if not isinstance(a, dict) or not {"id", "dom", "cod"} <= set(a):
            raise InputError("every arrow needs 'id', 'dom' and 'cod'")
        names.append(str(a["id"]))
        try:
            dom.append(ob_index[str(a["dom"])])
            cod.append(ob_index[str(a["cod"])])
        except KeyError as missing:
            raise InputError(f"arrow endpoint {missing} is not an object") from None
    ar_index = {a: i for i, a in enumerate(names)}
    raw_ident = doc.get("identities")
    if not isinstance(raw_ident, dict) or set(raw_ident) != set(obs):
        raise InputError("'identities' must map every object to an arrow id")
    ident = [ar_index[str(raw_ident[o])] for o in obs]
    comp: dict[tuple[int, int], int] = {}
    for triple in doc.get("compose", []):
        if not isinstance(triple, list) or len(triple) != 3:
            raise InputError("'compose' entries must be [f, g, h] triples meaning g after f is h")
        f, g, h = (ar_index[str(x)] for x in triple)
        comp[(g, f)] = h
    # identity composites follow from the laws unless given explicitly
    for f in range(len(names)):
        comp.setdefault((f, ident[dom[f]]), f)
        comp.setdefault((ident[cod[f]], f), f)
    return FinCat(obs, names, dom, cod, ident, comp)


def emit_category(cat: FinCat) -> dict:
    compose = []
    for (g, f), h in sorted(cat.comp.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if f == cat.ident[cat.dom[f]] or g == cat.ident[cat.cod[f]]:
            continue
        compose.append([cat.arrows[f], cat.arrows[g], cat.arrows[h]])
    return {
        "objects": list(cat.obs),
        "arrows": [
            {"id": cat.arrows[f], "dom": cat.obs[cat.dom[f]], "cod": cat.obs[cat.cod[f]]}
            for f in range(len(cat.arrows))
        ],
        "identities": {cat.obs[o]: cat.arrows[cat.ident[o]] for o in range(len(cat.obs))},
        "compose": compose,
    }


def parse_dynamics(doc: Any, base_dir: str = ".") -> Dynamics:
    doc = _as_dict(doc, "dynamics")
    cat = parse_category(doc.get("category"), base_dir)
    raw_states = doc.get("states")
    if not isinstance(raw_states, dict):
        raise InputError("'states' must map object names to state lists")
    states = []
    for o in cat.obs:
        block = raw_states.get(o, [])
        if not isinstance(block, list):
            raise InputError("state lists must be JSON lists")
        states.append([str(s) for s in block])
    raw_trans = doc.get("transitions", {})
    if not isinstance(raw_trans, dict):
        raise InputError("'transitions' must map arrow ids to state tables")
    for arrow_id in raw_trans:
        if arrow_id not in cat.arrows:
            raise InputError(f"transition given for unknown arrow {arrow_id!r}")
    trans = []
    for f in range(len(cat.arrows)):
        table = raw_trans.get(cat.arrows[f])
        if table is None:
            # omitted identities act as identities, omitted arrows act emptily
            if f == cat.ident[cat.dom[f]]:
                trans.append({s: {s} for s in states[cat.dom[f]]})
            else:
                trans.append({})
            continue
        if not isinstance(table, dict):
            raise InputError("every transition must map states to state lists")
        trans.append({str(s): [str(v) for v in imgs] for s, imgs in table.items()})
    return Dynamics(cat, states, trans)


def emit_dynamics(dyn: Dynamics) -> dict:
    return {
        "category": emit_category(dyn.cat),
        "states": {dyn.cat.obs[o]: list(dyn.states[o]) for o in range(len(dyn.cat.obs))},
        "transitions": {
            dyn.cat.arrows[f]: {s: sorted(img) for s, img in sorted(dyn.trans[f].rel.items())}
            for f in range(len(dyn.cat.arrows))
        },
    }


def parse_dynamorphism(doc: Any, source: Dynamics, target: Dynamics) -> Dynamorphism:
    doc = _as_dict(doc, "dynamorphism")
    raw_fn = doc.get("functor", {})
    if not isinstance(raw_fn, dict):
        raise InputError("'functor' must hold object and arrow maps")
    raw_obs = raw_fn.get("objects", {})
    raw_ars = raw_fn.get("arrows", {})
    if set(raw_obs) != set(source.cat.obs):
        raise InputError("functor object map must cover exactly the source objects")
    if set(raw_ars) != set(source.cat.arrows):
        raise InputError("functor arrow map must cover exactly the source arrows")
    obmap = tuple(target.cat.object_index(str(raw_obs[o])) for o in source.cat.obs)
    armap = tuple(target.cat.arrow_index(str(raw_ars[a])) for a in source.cat.arrows)
    raw_delta = doc.get("delta", {})
    if not isinstance(raw_delta, dict):
        raise InputError("'delta' must map source objects to state tables")
    delta = []
    for o, name in enumerate(source.cat.obs):
        table = raw_delta.get(name, {})
        if not isinstance(table, dict):
            raise InputError("every delta entry must map states to state lists")
        delta.append({str(s): frozenset(str(v) for v in imgs) for s, imgs in table.items()})
    return Dynamorphism(FunctorData(obmap, armap), delta)


def emit_dynamorphism(m: Dynamorphism, source: Dynamics, target: Dynamics) -> dict:
    return {
        "functor": {
            "objects": {
                source.cat.obs[o]: target.cat.obs[m.functor.obmap[o]]
                for o in range(len(source.cat.obs))
            },
            "arrows": {
                source.cat.arrows[f]: target.cat.arrows[m.functor.armap[f]]
                for f in range(len(source.cat.arrows))
            },
        },
        "delta": {
            source.cat.obs[o]: {s: sorted(img) for s, img in sorted(m.delta[o].items())}
            for o in range(len(source.cat.obs))
        },
    }


def _arrow_family(doc: dict, cat: FinCat, key: str) -> frozenset[int]:
    fam = {0}
    for part in doc.get(key, []):
        if not isinstance(part, list):
            raise InputError(f"'{key}' must be a list of arrow id lists")
        mask = 0
        for name in part:
            mask |= 1 << cat.arrow_index(str(name))
        fam.add(mask)
    return frozenset(fam)


def parse_conncat(doc: Any, base_dir: str = ".") -> ConnCat:
    doc = _as_dict(doc, "connective category")
    cat = parse_category(doc, base_dir) if "objects" in doc else parse_category(doc.get("category"), base_dir)
    return ConnCat(cat, _arrow_family(doc, cat, "arrow_connected"))


def parse_arrow_family(doc: Any, base_dir: str = ".") -> tuple[FinCat, frozenset[int]]:
    doc = _as_dict(doc, "arrow family")
    cat = parse_category(doc, base_dir) if "objects" in doc else parse_category(doc.get("category"), base_dir)
    return cat, _arrow_family(doc, cat, "family")


def parse_conndynamics(doc: Any, base_dir: str = ".") -> ConnDynamics:
    doc = _as_dict(doc, "connective dynamics")
    dyn = parse_dynamics(doc, base_dir)
    arrow_structure = _arrow_family(doc, dyn.cat, "arrow_connected")
    states = dyn.st()
    state_index = {s: i for i, s in enumerate(states)}
    fam = {0}
    for part in doc.get("state_connected", []):
        if not isinstance(part, list):
            raise InputError("'state_connected' must be a list of state id lists")
        mask = 0
        for name in part:
            if str(name) not in state_index:
                raise InputError(f"unknown state {name!r} in 'state_connected'")
            mask |= 1 << state_index[str(name)]
        fam.add(mask)
    return ConnDynamics(dyn, arrow_structure, frozenset(fam))


def parse_monoid(doc: Any) -> tuple[tuple[str, ...], list[list[str]], str, frozenset[int]]:
    doc = _as_dict(doc, "monoid")
    elements = doc.get("elements")
    if not isinstance(elements, list) or not elements:
        raise InputError("'elements' must be a nonempty list")
    elements = tuple(str(e) for e in elements)
    index = {e: i for i, e in enumerate(elements)}
    rows = doc.get("table")
    if not isinstance(rows, list):
        raise InputError("'table' must be a row-major list of lists")
    table = [[str(v) for v in row] for row in rows]
    unit = str(doc.get("unit", elements[0]))
    fam = {0}
    for part in doc.get("connected", []):
        mask = 0
        for name in part:
            if str(name) not in index:
                raise InputError(f"unknown element {name!r} in 'connected'")
            mask |= 1 << index[str(name)]
        fam.add(mask)
    if doc.get("integral", False):
        fam.update(1 << i for i in range(len(elements)))
    return elements, table, unit, frozenset(fam)
