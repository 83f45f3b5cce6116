"""The verification manifest: expected verdicts for catalog pairs, and the
batch runner that checks them.

A manifest file is JSON: {"format": "pimcheck-manifest-1", "entries": [...]}
where each entry names a catalog group/subgroup pair and a prime, carries
the expected verdict (expect_holds, optional expect_dim), a runtime budget
in minutes, and a free-form tag.  An entry may instead carry a "skip" note
explaining why it cannot be run; skipped entries are reported but neither
executed nor counted against the run.

Reports are byte-identical across runs and parallelism settings: each entry
derives its own PRNG seed from the run seed and the entry id, never from
scheduling order, and serialized reports normalize wall-clock fields.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import modrep, permgrp, pimverify, prng
from .catalog import CatalogError, CatalogParseError, DATA_DIR

DEFAULT_MANIFEST = os.path.join(DATA_DIR, "manifest.json")
MANIFEST_FORMAT = "pimcheck-manifest-1"


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    group: str
    subgroup: str
    prime: int
    expect_holds: bool
    expect_dim: object
    max_minutes: int
    tag: str
    skip: object = None

    def __post_init__(self):
        if self.expect_dim is not None and not self.expect_holds:
            raise ManifestError(
                "entry %s: expect_dim given although expect_holds is false"
                % self.entry_id
            )

    @property
    def entry_id(self):
        return "%s/%s/p%d" % (self.group, self.subgroup, self.prime)

    @property
    def file_stem(self):
        keep = []
        for ch in self.entry_id:
            keep.append(ch if ch.isalnum() or ch in "._-" else "_")
        return "".join(keep)


def load_manifest(path=None):
    """Parse a manifest file (default: the shipped one) into entries."""
    path = DEFAULT_MANIFEST if path is None else path
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ManifestError("cannot read manifest %s: %s" % (path, exc)) from exc
    try:
        doc = json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise CatalogParseError(
            "%s: line %d column %d: %s" % (path, exc.lineno, exc.colno, exc.msg)
        ) from exc
    if not isinstance(doc, dict) or doc.get("format") != MANIFEST_FORMAT:
        raise ManifestError(
            "%s: expected format %r, got %r"
            % (path, MANIFEST_FORMAT, doc.get("format") if isinstance(doc, dict) else doc)
        )
    entries = []
    seen = set()
    for i, e in enumerate(doc.get("entries", [])):
        try:
            entry = ManifestEntry(
                group=e["group"],
                subgroup=e["subgroup"],
                prime=int(e["prime"]),
                expect_holds=bool(e["expect_holds"]),
                expect_dim=e.get("expect_dim"),
                max_minutes=int(e.get("max_minutes", 5)),
                tag=str(e.get("tag", "")),
                skip=e.get("skip"),
            )
        except KeyError as exc:
            raise ManifestError(
                "%s: entry %d is missing field %s" % (path, i + 1, exc)
            ) from exc
        if entry.entry_id in seen:
            raise ManifestError(
                "%s: entry %s appears twice" % (path, entry.entry_id)
            )
        seen.add(entry.entry_id)
        entries.append(entry)
    return entries


def entry_seed(run_seed, entry_id):
    """Per-entry seed derived from the run seed and the entry id only."""
    return prng.XorShift(run_seed, label=entry_id).next_u64()


def _cache_key(catalog_hash, entry, seed):
    text = "|".join(
        [catalog_hash, entry.group, entry.subgroup, str(entry.prime), str(seed)]
    )
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _atomic_write(path, data):
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass
class EntryResult:
    entry: ManifestEntry
    status: str
    got_dim: object = None
    path: str = ""
    wall_ms: int = 0
    detail: str = ""
    report_bytes: object = None

    @property
    def matched(self):
        return self.status == "pass"


def _judge(entry, report_dict):
    """pass/mismatch verdict for a finished report against the expectation."""
    holds = report_dict["holds"]
    inconclusive = report_dict["inconclusive"]
    dim = report_dict["dim_phi1"]
    if inconclusive:
        return "mismatch", "inconclusive: %s" % report_dict.get("reason")
    if holds != entry.expect_holds:
        return "mismatch", "expected holds=%s, got %s" % (entry.expect_holds, holds)
    if entry.expect_dim is not None and dim != entry.expect_dim:
        return "mismatch", "expected dim %s, got %s" % (entry.expect_dim, dim)
    return "pass", ""


def run_entry(entry, catalog, run_seed, cache_dir=None, max_dim=pimverify.DEFAULT_MAX_DIM):
    """Verify one manifest entry, consulting the report cache when enabled."""
    if entry.skip is not None:
        return EntryResult(entry, "skip", detail=str(entry.skip))
    seed = entry_seed(run_seed, entry.entry_id)
    cache_path = None
    if cache_dir is not None:
        cache_path = os.path.join(
            cache_dir, _cache_key(catalog.content_hash, entry, seed) + ".json"
        )
        if os.path.exists(cache_path):
            with open(cache_path, "rb") as fh:
                data = fh.read()
            report = json.loads(data.decode("utf-8"))
            status, detail = _judge(entry, report)
            return EntryResult(
                entry,
                status,
                got_dim=report["dim_phi1"],
                path=report["path"] + "+cache",
                wall_ms=0,
                detail=detail,
                report_bytes=data,
            )
    try:
        group, sub = catalog.resolve(entry.group, entry.subgroup)
        report = pimverify.verify_ipp(
            group.genset,
            sub.genset,
            entry.prime,
            seed=seed,
            allow_shortcut=True,
            max_dim=max_dim,
            group_name=entry.group,
            subgroup_name=entry.subgroup,
        )
    except (CatalogError, permgrp.PermError, modrep.ModuleError,
            pimverify.VerifyError) as exc:
        return EntryResult(entry, "error", detail="%s: %s" % (type(exc).__name__, exc))
    data = report.json_bytes()
    if cache_path is not None:
        os.makedirs(cache_dir, exist_ok=True)
        if not os.path.exists(cache_path):
            _atomic_write(cache_path, data)
    status, detail = _judge(entry, report.to_dict())
    if report.wall_time_ms > entry.max_minutes * 60_000:
        status, detail = "timeout", "exceeded %d min budget" % entry.max_minutes
    return EntryResult(
        entry,
        status,
        got_dim=report.dim_phi1,
        path=report.path,
        wall_ms=report.wall_time_ms,
        detail=detail,
        report_bytes=data,
    )


def run_manifest(
    entries,
    catalog,
    run_seed=1,
    parallelism=1,
    out_dir=None,
    cache_dir=None,
    max_dim=pimverify.DEFAULT_MAX_DIM,
):
    """Run every manifest entry; returns (exit_code, results in entry order).

    Names are resolved up front so an unresolvable non-skipped entry is a
    usage error (exit 2) before anything runs.  Execution order never
    affects report bytes; results are reported in manifest order.
    """
    for entry in entries:
        if entry.skip is None:
            catalog.resolve(entry.group, entry.subgroup)

    def work(entry):
        return run_entry(
            entry, catalog, run_seed, cache_dir=cache_dir, max_dim=max_dim
        )

    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(work, entries))
    else:
        results = [work(e) for e in entries]

    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        for res in results:
            if res.report_bytes is not None:
                _atomic_write(
                    os.path.join(out_dir, res.entry.file_stem + ".json"),
                    res.report_bytes,
                )
        summary = {
            "seed": run_seed,
            "entries": [
                {
                    "id": r.entry.entry_id,
                    "tag": r.entry.tag,
                    "status": r.status,
                    "expected_dim": r.entry.expect_dim,
                    "got_dim": r.got_dim,
                    "path": r.path,
                    "wall_ms": r.wall_ms,
                    "detail": r.detail,
                }
                for r in results
            ],
        }
        _atomic_write(
            os.path.join(out_dir, "summary.json"),
            (json.dumps(summary, indent=2) + "\n").encode(),
        )

    failed = [r for r in results if r.status not in ("pass", "skip")]
    return (1 if failed else 0), results


def summary_lines(results):
    """Fixed-width summary table, one line per entry."""
    header = "%-9s %-10s %-10s %3s %9s %9s %-9s %7s  %s" % (
        "status", "group", "subgroup", "p", "expected", "got", "path", "ms", "note"
    )
    lines = [header, "-" * len(header)]
    for r in results:
        e = r.entry
        lines.append(
            "%-9s %-10s %-10s %3d %9s %9s %-9s %7d  %s"
            % (
                r.status,
                e.group,
                e.subgroup,
                e.prime,
                "-" if e.expect_dim is None else e.expect_dim,
                "-" if r.got_dim is None else r.got_dim,
                r.path or "-",
                r.wall_ms,
                r.detail,
            )
        )
    npass = sum(r.status == "pass" for r in results)
    nskip = sum(r.status == "skip" for r in results)
    nbad = len(results) - npass - nskip
    lines.append(
        "%d entries: %d pass, %d skip, %d failing" % (len(results), npass, nskip, nbad)
    )
    return lines
