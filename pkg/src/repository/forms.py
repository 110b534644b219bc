"""On-disk cache of the Igusa tower in FSER format."""
import hashlib
import logging
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator

from pydantic import ValidationError

from src.conf.config import settings
from src.exceptions import CacheIntegrityError, CacheLockedError
from src.schemas import CacheManifest, ManifestForm
from src.services import fser
from src.services.igusa import SiegelForm, build_tower
from src.services.series import OrthoSeries

logger = logging.getLogger(__name__)

FORM_KEYS = ("e4", "e6", "chi10", "chi12", "psi5", "phi35", "phi30")

MANIFEST = "manifest.json"


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class FormCache:
    """
    Layout::

        <root>/.lock
        <root>/prec-08/manifest.json
        <root>/prec-08/psi5.fser
        ...
    """

    def __init__(self, root: Path):
        self.root = Path(root)

    def directory(self, prec: int) -> Path:
        return self.root / f"prec-{prec:02d}"

    def is_built(self, prec: int) -> bool:
        return (self.directory(prec) / MANIFEST).is_file()

    @contextmanager
    def lock(self) -> Iterator[None]:
        """
        Holds the exclusive lock file while the cache is written.

        Raises:
            CacheLockedError: The lock file already exists.
        """
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.root / ".lock"
        try:
            fd = os.open(path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise CacheLockedError(f"{path} is held by another process") from None
        try:
            os.write(fd, str(os.getpid()).encode())
            yield
        finally:
            os.close(fd)
            path.unlink(missing_ok=True)

    def build(self, prec: int) -> CacheManifest:
        """
        Builds every form of the tower and writes it with a checksummed manifest.

        Parameters:
            prec: Precision P >= 4.

        Returns:
            The manifest just written. Rebuilding gives byte-identical files.
        """
        with self.lock():
            tower = build_tower(prec)
            directory = self.directory(prec)
            directory.mkdir(parents=True, exist_ok=True)
            entries = []
            for key in FORM_KEYS:
                form = tower.forms[key]
                text = fser.dumps(form.series)
                (directory / f"{key}.fser").write_text(text, encoding="utf-8")
                entries.append(
                    ManifestForm(
                        key=key,
                        name=form.name,
                        weight=form.weight,
                        parity=form.parity,
                        prec=form.prec,
                        terms=len(form.series),
                        sha256=_sha256(text),
                    )
                )
            manifest = CacheManifest(prec=prec, content_divisor=tower.content_divisor, forms=entries)
            (directory / MANIFEST).write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info("wrote %d forms to %s", len(entries), directory)
        return manifest

    def manifest(self, prec: int) -> CacheManifest:
        path = self.directory(prec) / MANIFEST
        try:
            return CacheManifest.model_validate_json(path.read_text(encoding="utf-8"))
        except OSError as err:
            raise CacheIntegrityError(f"cannot read {path}: {err}") from err
        except ValidationError as err:
            raise CacheIntegrityError(f"invalid manifest {path}: {err}") from err

    def load(self, key: str, prec: int) -> SiegelForm:
        """
        Reads one form back and verifies its checksum.

        Raises:
            CacheIntegrityError: The file is missing, altered or malformed.
        """
        entry = next((f for f in self.manifest(prec).forms if f.key == key), None)
        if entry is None:
            raise CacheIntegrityError(f"{key} is not in the manifest at precision {prec}")
        path = self.directory(prec) / f"{key}.fser"
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as err:
            raise CacheIntegrityError(f"cannot read {path}: {err}") from err
        if _sha256(text) != entry.sha256:
            logger.error("checksum mismatch for %s", path)
            raise CacheIntegrityError(f"{path} does not match its recorded checksum")
        series = fser.loads(text)
        if not isinstance(series, OrthoSeries):
            raise CacheIntegrityError(f"{path} does not hold an orthogonal series")
        return SiegelForm(entry.name, entry.weight, series)

    def get(self, key: str, prec: int) -> SiegelForm:
        """Loads a form, building the whole tower first if this precision was never built."""
        if key not in FORM_KEYS:
            raise KeyError(key)
        if not self.is_built(prec):
            self.build(prec)
        return self.load(key, prec)


def get_forms() -> FormCache:
    return FormCache(settings.cache_dir)
