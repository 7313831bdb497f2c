import json
import os
from pathlib import Path
from typing import Any, Union

from loguru import logger


class ReportStorage:
    @staticmethod
    def atomic_write(file_path: Union[str, Path], content: Any, mode: str = "w"):
        """Writes content to a temporary sibling file, then renames it over the target.
        Readers see either the old file or the complete new one.
        """
        path = Path(file_path)
        temp_path = path.with_suffix(path.suffix + ".tmp")
        path.parent.mkdir(parents=True, exist_ok=True)

        open_args = {"mode": mode}
        if "b" not in mode:
            open_args["encoding"] = "utf-8"
            # byte-stable output on every platform
            open_args["newline"] = "\n"

        try:
            with open(temp_path, **open_args) as f:
                f.write(content)
            os.replace(temp_path, path)
        except BaseException:
            temp_path.unlink(missing_ok=True)
            raise
        logger.debug(f"ReportStorage: wrote {path}")

    @staticmethod
    def dumps(payload: Any) -> str:
        """Canonical JSON: sorted keys, shortest round-trip floats, trailing newline."""
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"

    @staticmethod
    def write_json(file_path: Union[str, Path], payload: Any):
        ReportStorage.atomic_write(file_path, ReportStorage.dumps(payload))

    @staticmethod
    def read_json(file_path: Union[str, Path]) -> Any:
        with open(file_path, "r", encoding="utf-8") as f:
            return json.load(f)
