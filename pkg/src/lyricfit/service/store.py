"""File-backed JSON project store with per-project optimistic versioning.

Each project lives in ``<data_dir>/<id>.json``. Writers supply the
version they read; a mismatch against the stored version rejects the
write, so concurrent conflicting updates cannot both succeed.
"""

from __future__ import annotations

import json
import threading
import uuid
from collections import defaultdict
from pathlib import Path

from ..errors import NotFound, VersionConflict
from .project import Project, from_doc, to_doc


class ProjectStore:
    def __init__(self, data_dir: str | Path):
        self._dir = Path(data_dir)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
        self._locks_guard = threading.Lock()

    def _lock(self, project_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks[project_id]

    def _path(self, project_id: str) -> Path:
        return self._dir / f"{project_id}.json"

    def create(self) -> Project:
        project = Project(id=uuid.uuid4().hex[:12], version=1)
        with self._lock(project.id):
            self._write(project)
        return project

    def get(self, project_id: str) -> Project:
        path = self._path(project_id)
        if not path.is_file():
            raise NotFound(f"no project {project_id!r}")
        with path.open(encoding="utf-8") as fh:
            return from_doc(json.load(fh))

    def save(self, project: Project, expected_version: int) -> Project:
        """Commit a mutated project if nobody else wrote since ``expected_version``.

        On success the stored version becomes ``expected_version + 1`` and
        the committed project is returned.
        """
        with self._lock(project.id):
            current = self.get(project.id).version
            if current != expected_version:
                raise VersionConflict(supplied=expected_version, current=current)
            project.version = expected_version + 1
            self._write(project)
        return project

    def delete(self, project_id: str) -> None:
        with self._lock(project_id):
            path = self._path(project_id)
            if not path.is_file():
                raise NotFound(f"no project {project_id!r}")
            path.unlink()

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self._dir.glob("*.json"))

    def _write(self, project: Project) -> None:
        path = self._path(project.id)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(
            json.dumps(to_doc(project), ensure_ascii=False, indent=1), encoding="utf-8"
        )
        tmp.replace(path)
