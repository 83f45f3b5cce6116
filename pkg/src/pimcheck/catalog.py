"""Load and validate the shipped group/subgroup catalog.

A catalog file is JSON: {"format": "pimcheck-catalog-1", "groups": [...]},
each group carrying name, degree, declared order, generators, provenance,
and a list of subgroups of the same shape (minus nested subgroups).
Permutations are written either as 1-based cycle strings "(1 2 3)(4 5)" or
as 1-based image lists; they are converted to 0-based arrays internally.

Loading is total-or-fail: every declared order is recomputed from a
certified stabilizer chain and every subgroup generator is sifted through
the parent's chain.  A catalog that loads never contains an unvalidated
entry.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

import numpy as np

from . import permgrp

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
DEFAULT_CATALOG = os.path.join(DATA_DIR, "catalog.json")
CATALOG_FORMAT = "pimcheck-catalog-1"


class CatalogError(ValueError):
    pass


class CatalogParseError(CatalogError):
    """Malformed file; message carries the line/column when known."""


class CatalogValidationError(CatalogError):
    """An entry failed its order or membership check; names the entry."""


def parse_permutation(value, degree, where):
    """A 0-based permutation array from a cycle string or 1-based image list."""
    if isinstance(value, str):
        try:
            return permgrp.parse_cycles(value, degree)
        except permgrp.PermError as exc:
            raise CatalogParseError("%s: %s" % (where, exc)) from exc
    if isinstance(value, list):
        if sorted(value) != list(range(1, degree + 1)):
            raise CatalogParseError(
                "%s: image list is not a 1-based permutation of 1..%d"
                % (where, degree)
            )
        return np.array([v - 1 for v in value], dtype=np.int64)
    raise CatalogParseError(
        "%s: expected a cycle string or image list, got %r" % (where, type(value))
    )


def _require(mapping, key, types, where):
    if key not in mapping:
        raise CatalogParseError("%s: missing field %r" % (where, key))
    value = mapping[key]
    if not isinstance(value, types):
        raise CatalogParseError(
            "%s: field %r has type %s" % (where, key, type(value).__name__)
        )
    return value


@dataclass
class CatalogSubgroup:
    name: str
    order: int
    genset: permgrp.GenSet
    provenance: str
    bsgs: object = field(default=None, repr=False)


@dataclass
class CatalogGroup:
    name: str
    degree: int
    order: int
    genset: permgrp.GenSet
    provenance: str
    subgroups: dict
    bsgs: object = field(default=None, repr=False)

    def subgroup(self, name):
        try:
            return self.subgroups[name]
        except KeyError:
            raise CatalogError(
                "group %r has no subgroup %r (has: %s)"
                % (self.name, name, ", ".join(sorted(self.subgroups)))
            ) from None


@dataclass
class Catalog:
    groups: dict
    content_hash: str
    path: str

    def group(self, name):
        try:
            return self.groups[name]
        except KeyError:
            raise CatalogError(
                "catalog has no group %r (has: %s)"
                % (name, ", ".join(sorted(self.groups)))
            ) from None

    def resolve(self, group_name, subgroup_name):
        g = self.group(group_name)
        return g, g.subgroup(subgroup_name)


def _load_genset(raw, degree, name, where):
    gens = raw if raw else []
    arrays = tuple(
        parse_permutation(g, degree, "%s generator %d" % (where, i + 1))
        for i, g in enumerate(gens)
    )
    try:
        return permgrp.GenSet(degree, arrays, name)
    except permgrp.PermError as exc:
        raise CatalogParseError("%s: %s" % (where, exc)) from exc


def _validate_group(entry, seed):
    where = "group %r" % entry["name"]
    degree = _require(entry, "degree", int, where)
    declared = _require(entry, "order", int, where)
    gs = _load_genset(
        _require(entry, "generators", list, where), degree, entry["name"], where
    )
    bsgs = permgrp.schreier_sims(gs, seed=seed)
    if bsgs.order != declared:
        raise CatalogValidationError(
            "%s: declared order %d but the stabilizer chain gives %d"
            % (where, declared, bsgs.order)
        )
    subgroups = {}
    for sub in _require(entry, "subgroups", list, where):
        sub_name = _require(sub, "name", str, "subgroup of %s" % where)
        swhere = "group %r subgroup %r" % (entry["name"], sub_name)
        sdecl = _require(sub, "order", int, swhere)
        sgs = _load_genset(
            _require(sub, "generators", list, swhere), degree, sub_name, swhere
        )
        for i, x in enumerate(sgs.gens):
            if not bsgs.contains(x):
                raise CatalogValidationError(
                    "%s: generator %d (%s) is not an element of the parent"
                    % (swhere, i + 1, permgrp.to_cycles(x))
                )
        sbsgs = permgrp.schreier_sims(sgs, seed=seed)
        if sbsgs.order != sdecl:
            raise CatalogValidationError(
                "%s: declared order %d but the stabilizer chain gives %d"
                % (swhere, sdecl, sbsgs.order)
            )
        if sub_name in subgroups:
            raise CatalogValidationError("%s: duplicate subgroup name" % swhere)
        subgroups[sub_name] = CatalogSubgroup(
            name=sub_name,
            order=sdecl,
            genset=sgs,
            provenance=sub.get("provenance", ""),
            bsgs=sbsgs,
        )
    return CatalogGroup(
        name=entry["name"],
        degree=degree,
        order=declared,
        genset=gs,
        provenance=entry.get("provenance", ""),
        subgroups=subgroups,
        bsgs=bsgs,
    )


def load_catalog(path=None, seed=1):
    """Parse and fully validate a catalog file (default: the shipped one)."""
    path = DEFAULT_CATALOG if path is None else path
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CatalogError("cannot read catalog %s: %s" % (path, exc)) from exc
    try:
        doc = json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise CatalogParseError(
            "%s: line %d column %d: %s" % (path, exc.lineno, exc.colno, exc.msg)
        ) from exc
    if not isinstance(doc, dict) or doc.get("format") != CATALOG_FORMAT:
        raise CatalogParseError(
            "%s: expected format %r, got %r"
            % (path, CATALOG_FORMAT, doc.get("format") if isinstance(doc, dict) else doc)
        )
    groups = {}
    for entry in _require(doc, "groups", list, path):
        name = _require(entry, "name", str, "catalog %s" % path)
        if name in groups:
            raise CatalogValidationError("group %r appears twice" % name)
        groups[name] = _validate_group(entry, seed)
    return Catalog(
        groups=groups,
        content_hash=hashlib.sha256(raw).hexdigest(),
        path=path,
    )
