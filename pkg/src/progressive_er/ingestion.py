"""Load profile collections (CSV or JSONL) and ground-truth pair files."""

from __future__ import annotations

import csv
import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from .errors import DuplicateExternalId, ParseError, SamePair, SameSource, UnknownId
from .model import ERMode, GroundTruth, Profile, ProfileCollection, canonicalize

FORMATS = ("csv", "jsonl")


@dataclass(frozen=True)
class DatasetSpec:
    paths: tuple[Path, ...]
    format: str | None = None
    id_column: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(Path(p) for p in self.paths))
        if len(self.paths) not in (1, 2):
            raise ValueError("a dataset is one file (dirty) or two files (clean-clean)")
        if self.format is not None and self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}; expected one of {FORMATS}")

    @property
    def mode(self) -> ERMode:
        return ERMode.DIRTY if len(self.paths) == 1 else ERMode.CLEAN_CLEAN

    def format_of(self, path: Path) -> str:
        if self.format:
            return self.format
        return "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson", ".json") else "csv"


def _read_csv(path: Path, id_column: str | None):
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, strict=True)
        try:
            header = next(reader, None)
            if header is None:
                return rows
            if id_column is not None and id_column not in header:
                raise ParseError(path, 1, f"id column {id_column!r} not in header")
            for row in reader:
                line = reader.line_num
                if not row:
                    continue
                if len(row) != len(header):
                    raise ParseError(path, line, f"expected {len(header)} fields, got {len(row)}")
                ext = None
                attrs = []
                for name, value in zip(header, row):
                    if name == id_column:
                        ext = value
                    elif value != "":
                        attrs.append((name, value))
                rows.append((line, ext, attrs))
        except csv.Error as exc:
            raise ParseError(path, reader.line_num, str(exc)) from exc
    return rows


def _stringify(value) -> str:
    if isinstance(value, str):
        return value
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return str(value)
    return json.dumps(value, ensure_ascii=False, sort_keys=True)


def _read_jsonl(path: Path, id_column: str | None):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(path, line_no, exc.msg) from exc
            if not isinstance(obj, dict):
                raise ParseError(path, line_no, "expected a JSON object")
            ext = None
            attrs = []
            for name, value in obj.items():
                if name == id_column:
                    ext = _stringify(value)
                    continue
                text = _stringify(value)
                if text != "":
                    attrs.append((name, text))
            if id_column is not None and ext is None:
                raise ParseError(path, line_no, f"missing id field {id_column!r}")
            rows.append((line_no, ext, attrs))
    return rows


def load_profiles(spec: DatasetSpec) -> ProfileCollection:
    """Read every file of ``spec`` into one collection with dense ids.

    Source-0 profiles come first. Without ``id_column`` the 0-based row index
    within its file is the external id.
    """
    profiles = []
    external = []
    for source, path in enumerate(spec.paths):
        fmt = spec.format_of(path)
        rows = _read_jsonl(path, spec.id_column) if fmt == "jsonl" else _read_csv(path, spec.id_column)
        seen = {}
        for row_index, (line, ext, attrs) in enumerate(rows):
            ext = str(row_index) if ext is None else ext
            if ext in seen:
                raise DuplicateExternalId(
                    f"{path}:{line}: id {ext!r} already used on line {seen[ext]}"
                )
            seen[ext] = line
            profiles.append(Profile(len(profiles), source, tuple(attrs)))
            external.append(ext)
    if spec.mode is ERMode.CLEAN_CLEAN and len({p.source for p in profiles}) < 2:
        raise ParseError(spec.paths[0], 0, "clean-clean datasets need profiles in both files")
    return ProfileCollection(spec.mode, tuple(profiles), tuple(external))


def id_maps(collection: ProfileCollection) -> list[dict[str, int]]:
    """External-to-dense id lookup, one dict per source."""
    maps: list[dict[str, int]] = [{}, {}] if collection.mode is ERMode.CLEAN_CLEAN else [{}]
    for p, ext in zip(collection.profiles, collection.external_ids):
        maps[p.source][ext] = p.id
    return maps


def _resolve(ext: str, maps: Sequence[dict[str, int]], preferred: int, where: str) -> int:
    order = [preferred] + [k for k in range(len(maps)) if k != preferred]
    for k in order:
        if ext in maps[k]:
            return maps[k][ext]
    raise UnknownId(f"{where}: unknown profile id {ext!r}")


def load_ground_truth(
    path,
    maps: Sequence[dict[str, int]],
    mode: ERMode,
    split: int = 0,
    header: bool = False,
) -> GroundTruth:
    """Read a two-column CSV of external ids into canonical dense pairs.

    In clean-clean mode the first column is looked up in source 0 first and
    the second in source 1 first, so reversed rows still resolve.
    """
    path = Path(path)
    pairs = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            for row in reader:
                line = reader.line_num
                if header and line == 1:
                    continue
                if not row or all(not cell.strip() for cell in row):
                    continue
                if len(row) != 2:
                    raise ParseError(path, line, f"expected 2 columns, got {len(row)}")
                where = f"{path}:{line}"
                a = _resolve(row[0].strip(), maps, 0, where)
                b = _resolve(row[1].strip(), maps, 1 if len(maps) > 1 else 0, where)
                try:
                    pairs.add(canonicalize(a, b, mode, split))
                except SamePair as exc:
                    raise SamePair(f"{where}: {exc}") from None
                except SameSource as exc:
                    raise SameSource(f"{where}: {exc}") from None
        except csv.Error as exc:
            raise ParseError(path, reader.line_num, str(exc)) from exc
    return GroundTruth(mode, split, frozenset(pairs))


def write_profiles_csv(collection: ProfileCollection, path, source: int = 0) -> None:
    """Write one source of a collection as a profile CSV (``id`` column first).

    Attribute names become columns in first-seen order; profiles lacking an
    attribute get an empty cell. Repeated attribute names inside one profile
    are not representable in CSV and raise ``ValueError``.
    """
    chosen = [p for p in collection if p.source == source]
    columns: list[str] = []
    for p in chosen:
        names = [n for n, _ in p.attributes]
        if len(names) != len(set(names)):
            raise ValueError(f"profile {p.id} repeats an attribute name")
        for n in names:
            if n not in columns:
                columns.append(n)
    if "id" in columns:
        raise ValueError("attribute name 'id' is reserved")
    ext = collection.external_ids or tuple(str(p.id) for p in collection)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", *columns])
        for p in chosen:
            values = dict(p.attributes)
            writer.writerow([ext[p.id], *(values.get(c, "") for c in columns)])
