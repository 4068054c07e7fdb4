"""
Channel trace files: one row per (user, subcarrier).

    user_id,subcarrier_index,real,imag
    1,0,0.83,-0.12
    ...

A magnitude-only variant with header `user_id,subcarrier_index,magnitude` is accepted too, phase is then 0.
Leading `#` comment lines (provenance headers) are skipped. Grid parameters are not part of the trace.
"""

from __future__ import annotations

import io
import re
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from comparative_alloc.channel.grid import ResourceGrid
from comparative_alloc.channel.response import FrequencyResponse
from comparative_alloc.errors import DuplicateTraceEntryError, InconsistentTraceLengthError, MalformedTraceRowError
from comparative_alloc.utils.io import write_csv
from comparative_alloc.utils.misc import DEFAULT_BLOCK_SIZE
from comparative_alloc.utils.utils import log

COMPLEX_COLUMNS = ["user_id", "subcarrier_index", "real", "imag"]
MAGNITUDE_COLUMNS = ["user_id", "subcarrier_index", "magnitude"]


def _split_comments(text: str):
    lines = text.splitlines(keepends=True)
    num_comments = 0
    while num_comments < len(lines) and lines[num_comments].startswith("#"):
        num_comments += 1
    return num_comments, "".join(lines[num_comments:])


def _read_table(path: str):
    with open(path, "r") as f:
        text = f.read()

    num_comments, body = _split_comments(text)
    header_line = num_comments + 1
    if not body.strip():
        raise MalformedTraceRowError(f"{path}: empty trace", line=header_line)

    try:
        df = pd.read_csv(
            io.StringIO(body), dtype=str, keep_default_na=False, na_values=[], skip_blank_lines=False, engine="c"
        )
    except pd.errors.ParserError as exc:
        match = re.search(r"line (\d+)", str(exc))
        line = int(match.group(1)) + num_comments if match else None
        raise MalformedTraceRowError(f"{path}: malformed row ({exc})", line=line)

    # data row r (0-based) sits on file line header_line + 1 + r
    lines = np.arange(len(df)) + header_line + 1
    return df, lines, header_line


def _first_bad(mask: np.ndarray) -> Optional[int]:
    bad = np.flatnonzero(mask)
    return int(bad[0]) if len(bad) > 0 else None


def _numeric(df: pd.DataFrame, column: str, lines: np.ndarray, path: str) -> np.ndarray:
    values = pd.to_numeric(df[column].str.strip(), errors="coerce").to_numpy(dtype=np.float64)
    row = _first_bad(~np.isfinite(values))
    if row is not None:
        raise MalformedTraceRowError(
            f"{path}: {column}={df[column].iloc[row]!r} is not a finite number", line=lines[row]
        )
    return values


def load_channel_trace(
    path: str, grid: Optional[ResourceGrid] = None, magnitude_only: Optional[bool] = None
) -> List[FrequencyResponse]:
    """
    Parse a trace file into one FrequencyResponse per user (in order of first appearance).
    If `grid` is None a grid with the trace's subcarrier count and default spacing is assumed, with the default
    block size when it divides the subcarrier count and single-subcarrier blocks otherwise.
    """
    df, lines, header_line = _read_table(path)
    columns = [c.strip() for c in df.columns]

    if columns == COMPLEX_COLUMNS and not magnitude_only:
        magnitude_only = False
    elif columns == MAGNITUDE_COLUMNS and magnitude_only in (None, True):
        magnitude_only = True
    else:
        raise MalformedTraceRowError(
            f"{path}: unexpected header {columns}, expected {COMPLEX_COLUMNS} or {MAGNITUDE_COLUMNS}",
            line=header_line,
        )
    df.columns = columns

    user_ids = df["user_id"].str.strip()
    row = _first_bad((user_ids.isna() | (user_ids == "")).to_numpy())
    if row is not None:
        raise MalformedTraceRowError(f"{path}: missing user_id", line=lines[row])

    index = _numeric(df, "subcarrier_index", lines, path)
    row = _first_bad((index < 0) | (index != np.floor(index)))
    if row is not None:
        raise MalformedTraceRowError(f"{path}: subcarrier_index must be a non-negative integer", line=lines[row])
    index = index.astype(np.int64)

    if magnitude_only:
        magnitude = _numeric(df, "magnitude", lines, path)
        row = _first_bad(magnitude < 0)
        if row is not None:
            raise MalformedTraceRowError(f"{path}: negative magnitude", line=lines[row])
        gains = magnitude.astype(np.complex128)
    else:
        gains = _numeric(df, "real", lines, path) + 1j * _numeric(df, "imag", lines, path)

    table = pd.DataFrame({"user_id": user_ids, "index": index, "line": lines})
    row = _first_bad(table.duplicated(["user_id", "index"]).to_numpy())
    if row is not None:
        raise DuplicateTraceEntryError(
            f"{path}: duplicate entry for user {user_ids.iloc[row]} subcarrier {index[row]}", line=lines[row]
        )

    users = list(pd.unique(user_ids))
    counts = table.groupby("user_id", sort=False).size()
    expected = int(counts[users[0]])
    for user in users:
        rows = np.flatnonzero((user_ids == user).to_numpy())
        if len(rows) != expected:
            raise InconsistentTraceLengthError(
                f"{path}: user {user} has {len(rows)} subcarriers, user {users[0]} has {expected}",
                line=lines[rows[-1]],
            )

        missing = np.setdiff1d(np.arange(expected), index[rows])
        if len(missing) > 0:
            raise InconsistentTraceLengthError(
                f"{path}: user {user} has no entry for subcarrier {missing[0]}, indices must be 0..{expected - 1}",
                line=lines[rows[-1]],
            )

    if grid is None:
        block_size = DEFAULT_BLOCK_SIZE if expected % DEFAULT_BLOCK_SIZE == 0 else 1
        grid = ResourceGrid(subcarrier_count=expected, block_size=block_size)
    elif grid.subcarrier_count != expected:
        raise InconsistentTraceLengthError(
            f"{path}: trace has {expected} subcarriers per user, the grid expects {grid.subcarrier_count}"
        )

    responses = []
    for user in users:
        rows = np.flatnonzero((user_ids == user).to_numpy())
        ordered = rows[np.argsort(index[rows], kind="stable")]
        responses.append(FrequencyResponse(user, gains[ordered], grid))

    log.debug("Loaded %d users x %d subcarriers from %s", len(users), expected, path)
    return responses


def trace_frame(responses: Sequence[FrequencyResponse]) -> pd.DataFrame:
    frames = []
    for response in responses:
        n = len(response.gains)
        frames.append(
            pd.DataFrame(
                {
                    "user_id": [response.user_id] * n,
                    "subcarrier_index": np.arange(n),
                    "real": response.gains.real,
                    "imag": response.gains.imag,
                }
            )
        )
    return pd.concat(frames, ignore_index=True)


def write_channel_trace(responses: Sequence[FrequencyResponse], path: str, digest: Optional[str] = None) -> str:
    return write_csv(trace_frame(responses), path, digest)
