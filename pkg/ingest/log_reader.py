"""
Readers for raw sequence logs and link tables.

Two log shapes are accepted:
  - CSV ``user_id,item,position`` (optional header), positions ascending per user
  - TSV ``user_id<TAB>item1 item2 ...``, one user per line
"""
import io
import logging
from pathlib import Path
from typing import Tuple, Union

import pandas as pd

from models.experiment import LinkTable, SequenceLog
from utils.constants import LOG_LEVEL_VALUE, LOG_FORMAT
from utils.errors import InputError

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

CSV_HEADER = ("user_id", "item", "position")
TSV_COLUMNS = ("user_id", "items")
LINK_HEADER = ("src", "dst")

# first cell of a row that had more fields than the first line, followed by its field count
OVERFLOW = "\x00overflow:"


def _read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


def _read_rows(text: str, sep: str, columns: Tuple[str, ...], header: Tuple[str, ...] = ()) -> pd.DataFrame:
    """
    One frame row per non-blank line, cells stripped, with its 1-based ``line``.
    Rows whose field count differs from ``len(columns)`` raise InputError.
    """
    lines = text.splitlines(keepends=True)
    skipped = next((i for i, line in enumerate(lines) if line.strip()), len(lines))
    body = "".join(lines[skipped:])
    if not body:
        return pd.DataFrame(columns=[*columns, "line"])
    try:
        frame = pd.read_csv(
            io.StringIO(body),
            sep=sep,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            engine="python",
            on_bad_lines=lambda fields: [f"{OVERFLOW}{len(fields)}"],
        )
    except pd.errors.ParserError as e:
        raise InputError(f"cannot parse log: {e}") from e

    frame["line"] = frame.index + skipped + 1
    cells = frame.drop(columns="line")
    blank = cells.fillna("").apply(lambda col: col.str.strip()).eq("").all(axis=1)
    counts = cells.notna().sum(axis=1)
    overflow = cells[0].str.startswith(OVERFLOW, na=False)
    counts[overflow] = cells.loc[overflow, 0].str.removeprefix(OVERFLOW).astype(int)

    frame = frame[~blank].copy()
    counts = counts[~blank]
    bad = counts[counts != len(columns)]
    if not bad.empty:
        row = bad.index[0]
        raise InputError(
            f"expected {len(columns)} fields ({', '.join(columns)}), got {bad.iloc[0]}",
            line=int(frame.at[row, "line"]),
        )

    frame.columns = [*columns, "line"]
    frame[list(columns)] = frame[list(columns)].apply(lambda col: col.str.strip())
    if header and not frame.empty and tuple(frame.iloc[0][list(columns)]) == header:
        frame = frame.iloc[1:]
    return frame.reset_index(drop=True)


def _first_line(frame: pd.DataFrame, mask: pd.Series) -> int:
    return int(frame.loc[mask, "line"].iloc[0])


def parse_csv_log(text: str) -> SequenceLog:
    frame = _read_rows(text, ",", CSV_HEADER, header=CSV_HEADER)
    empty = frame.user_id.eq("") | frame["item"].eq("")
    if empty.any():
        raise InputError("empty user id or item name", line=_first_line(frame, empty))
    not_int = ~frame.position.str.fullmatch(r"[+-]?\d+")
    if not_int.any():
        line = _first_line(frame, not_int)
        raise InputError(f"position '{frame.loc[not_int, 'position'].iloc[0]}' is not an integer", line=line)

    frame = frame.assign(position=frame.position.astype(int))
    entries = [
        (user, tuple(group.sort_values(["position", "line"])["item"]))
        for user, group in frame.groupby("user_id", sort=False)
    ]
    return SequenceLog(entries=entries)


def parse_tsv_log(text: str) -> SequenceLog:
    frame = _read_rows(text, "\t", TSV_COLUMNS)
    empty = frame.user_id.eq("")
    if empty.any():
        raise InputError("empty user id", line=_first_line(frame, empty))
    repeated = frame.user_id.duplicated()
    if repeated.any():
        user = frame.loc[repeated, "user_id"].iloc[0]
        raise InputError(f"user '{user}' appears twice", line=_first_line(frame, repeated))
    entries = list(zip(frame.user_id, frame["items"].str.split().map(tuple)))
    return SequenceLog(entries=entries)


def parse_sequence_log(text: str) -> SequenceLog:
    first = next((line for line in text.splitlines() if line.strip()), "")
    if not first:
        return SequenceLog()
    if "\t" in first:
        return parse_tsv_log(text)
    return parse_csv_log(text)


def read_sequence_log(path: Union[str, Path]) -> SequenceLog:
    log = parse_sequence_log(_read_text(path))
    logger.info(f"read {len(log)} sequences over {len(log.items())} items from {path}")
    return log


def parse_link_table(text: str) -> LinkTable:
    frame = _read_rows(text, ",", LINK_HEADER, header=LINK_HEADER)
    empty = frame.src.eq("") | frame.dst.eq("")
    if empty.any():
        raise InputError("empty page name", line=_first_line(frame, empty))
    return LinkTable(links=list(zip(frame.src, frame.dst)))


def read_link_table(path: Union[str, Path]) -> LinkTable:
    table = parse_link_table(_read_text(path))
    logger.info(f"read {len(table.links)} links from {path}")
    return table
