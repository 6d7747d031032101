import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import get_config
from ..exceptions import ParseError
from .results import NumpyEncoder, write_csv, write_json
from .timeseries import TimeSeries


logger = logging.getLogger("lc_modulation.run_store")


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _locate_error(path: Path, lines: List[Tuple[int, str]], delimiter: Optional[str]) -> ParseError:
    width: Optional[int] = None
    for line_no, text in lines:
        try:
            row = np.loadtxt([text], delimiter=delimiter, dtype=np.float64, ndmin=1)
        except ValueError as e:
            return ParseError(f"{path}: {e}", line=line_no)
        width = width or row.size
        if row.size != width:
            return ParseError(f"{path}: expected {width} columns, got {row.size}", line=line_no)
    return ParseError(f"{path}: unreadable numeric table")


def read_columns(path: Union[str, Path]) -> Dict[str, np.ndarray]:
    """Read a CSV or whitespace-delimited numeric table.

    Lines starting with '#' and blank lines are skipped. The first remaining
    line is taken as a header when it is not numeric; columns are otherwise
    named by position ("0", "1", ...).
    """
    path = Path(path)
    with open(path, "r") as f:
        lines = [(line_no, line.strip()) for line_no, line in enumerate(f, start=1)]
    lines = [(line_no, text) for line_no, text in lines if text and not text.startswith("#")]
    if not lines:
        raise ParseError(f"{path}: no data rows")

    delimiter = "," if "," in lines[0][1] else None
    header: Optional[List[str]] = None
    first = [tok.strip() for tok in lines[0][1].split(delimiter)]
    if not all(_is_number(tok) for tok in first):
        header, lines = first, lines[1:]
    if not lines:
        raise ParseError(f"{path}: no data rows")

    try:
        data = np.loadtxt([text for _, text in lines], delimiter=delimiter, dtype=np.float64, ndmin=2)
    except ValueError:
        raise _locate_error(path, lines, delimiter) from None

    width = data.shape[1]
    if header is not None and len(header) != width:
        raise ParseError(f"{path}: header has {len(header)} names for {width} columns")
    names = header or [str(i) for i in range(width)]
    return {name: data[:, i] for i, name in enumerate(names)}


def read_series(path: Union[str, Path], value_column: Union[int, str, None] = None,
                t0: Optional[float] = None, delta: Optional[float] = None) -> TimeSeries:
    """Columns time, value[, error]; the error column is accepted and ignored.

    ``value_column`` picks a different value column by header name or position.
    """
    columns = read_columns(path)
    names = list(columns)
    if len(names) < 2:
        raise ParseError(f"{path}: need at least time and value columns, got {len(names)}")

    if value_column is None:
        value_name = names[1]
    elif isinstance(value_column, int) or str(value_column).isdigit():
        index = int(value_column)
        if not 1 <= index < len(names):
            raise ParseError(f"{path}: value column {index} outside 1..{len(names) - 1}")
        value_name = names[index]
    elif value_column in columns:
        value_name = value_column
    else:
        raise ParseError(f"{path}: no column named '{value_column}' in {names}")

    ts = TimeSeries.from_arrays(columns[names[0]], columns[value_name], t0=t0, delta=delta)
    logger.info(f"Read {len(ts)} observations from {path}")
    return ts


class RunStore:
    """Output files named after a short hash of the run's config echo."""

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = Path(output_dir or get_config().output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.logger = logging.getLogger("lc_modulation.run_store")
        self.written: List[str] = []

    @staticmethod
    def config_hash(config: Dict[str, Any]) -> str:
        config_str = json.dumps(config, sort_keys=True, cls=NumpyEncoder)
        return hashlib.md5(config_str.encode()).hexdigest()[:12]

    def path(self, command: str, config: Dict[str, Any], suffix: str, ext: str) -> Path:
        stem = f"{command}_{self.config_hash(config)}"
        if suffix:
            stem = f"{stem}_{suffix}"
        return self.output_dir / f"{stem}.{ext}"

    def save_json(self, command: str, config: Dict[str, Any], data: Dict[str, Any],
                  suffix: str = "") -> Path:
        path = self.path(command, config, suffix, "json")
        write_json(data, str(path))
        self._record(path)
        return path

    def save_csv(self, command: str, config: Dict[str, Any],
                 columns: Dict[str, Sequence[float]], suffix: str) -> Path:
        path = self.path(command, config, suffix, "csv")
        write_csv(str(path), columns)
        self._record(path)
        return path

    def _record(self, path: Path) -> None:
        self.written.append(path.name)
        self.logger.info(f"Wrote {path}")
