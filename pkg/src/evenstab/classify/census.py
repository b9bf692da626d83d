"""Persistent, resumable result store for the classification searches.

Each stage of a long-running search is one line-oriented JSON file
(``<stage>.jsonl``) in the census directory, with one record per line in a
fixed deterministic encoding.  A stage becomes *sealed* once its record
count and content hash are entered in ``manifest.json``; sealed stages are
trusted on resume and never recomputed.  Because every producer writes its
records in a deterministic order, re-running a search in the same
directory — or merging the work of repeated runs — yields byte-identical
stage files.

The branch-level stages of the nonexistence search are *appendable*: lines
are flushed as branches finish, an interrupted run resumes after the last
complete line, and the stage is sealed only when every branch is present.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Dict, Iterable, List, Optional

from ..errors import ValidationError

FORMAT = "evenstab-census/1"


def encode_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n"


class Census:
    """A directory of sealed search stages."""

    def __init__(self, root: os.PathLike | str):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    # -- manifest ----------------------------------------------------------

    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.json"

    def _read_manifest(self) -> Dict:
        if not self.manifest_path.exists():
            return {"format": FORMAT, "stages": {}}
        with open(self.manifest_path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if data.get("format") != FORMAT:
            raise ValidationError(
                f"census at {self.root} has format {data.get('format')!r}, "
                f"expected {FORMAT!r}"
            )
        return data

    def _write_manifest(self, data: Dict) -> None:
        tmp = self.manifest_path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, self.manifest_path)

    # -- sealed stages -----------------------------------------------------

    def stage_path(self, stage: str) -> Path:
        return self.root / f"{stage}.jsonl"

    def complete(self, stage: str) -> bool:
        entry = self._read_manifest()["stages"].get(stage)
        path = self.stage_path(stage)
        if entry is None or not path.exists():
            return False
        return self._digest(path) == entry["sha256"]

    def load(self, stage: str) -> List[dict]:
        if not self.complete(stage):
            raise ValidationError(f"census stage {stage!r} is not sealed")
        return self._read_records(self.stage_path(stage))

    def store(self, stage: str, records: Iterable[dict]) -> List[dict]:
        """Write a full stage atomically and seal it."""
        records = list(records)
        path = self.stage_path(stage)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            for record in records:
                fh.write(encode_record(record))
        os.replace(tmp, path)
        self._seal(stage, path, len(records))
        return records

    # -- appendable stages -------------------------------------------------

    def load_partial(self, stage: str) -> List[dict]:
        """Records of an unsealed stage, ignoring a trailing partial line."""
        path = self.stage_path(stage)
        if not path.exists():
            return []
        out = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                if line.endswith("\n"):
                    out.append(json.loads(line))
        return out

    def append(self, stage: str, record: dict) -> None:
        with open(self.stage_path(stage), "a", encoding="utf-8") as fh:
            fh.write(encode_record(record))
            fh.flush()

    def rewrite_partial(self, stage: str, records: Iterable[dict]) -> None:
        """Replace an unsealed stage's contents (used to drop partial lines)."""
        path = self.stage_path(stage)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            for record in records:
                fh.write(encode_record(record))
        os.replace(tmp, path)

    def seal(self, stage: str) -> None:
        path = self.stage_path(stage)
        if not path.exists():
            raise ValidationError(f"census stage {stage!r} has no data file")
        count = sum(1 for _ in open(path, "r", encoding="utf-8"))
        self._seal(stage, path, count)

    # -- internals ----------------------------------------------------------

    @staticmethod
    def _digest(path: Path) -> str:
        h = hashlib.sha256()
        with open(path, "rb") as fh:
            for chunk in iter(lambda: fh.read(1 << 20), b""):
                h.update(chunk)
        return h.hexdigest()

    @staticmethod
    def _read_records(path: Path) -> List[dict]:
        with open(path, "r", encoding="utf-8") as fh:
            return [json.loads(line) for line in fh]

    def _seal(self, stage: str, path: Path, count: int) -> None:
        manifest = self._read_manifest()
        manifest["stages"][stage] = {
            "count": count,
            "sha256": self._digest(path),
        }
        self._write_manifest(manifest)

    def summary(self) -> Dict[str, int]:
        return {
            stage: entry["count"]
            for stage, entry in sorted(self._read_manifest()["stages"].items())
        }
