"""Parsing and validation of delimiter-separated daily market data.

Canonical format: UTF-8 text, one header row, comma delimiter, ISO-8601
dates, period decimal separator, columns Date and Close plus an optional
integer Volume. ``IngestConfig`` remaps provider-specific layouts onto that
shape. Parsing is total: it either returns a series or raises a structured
error, never a silently truncated result.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from datetime import date as Date
from datetime import datetime
from pathlib import Path

from .errors import DuplicateDate, EmptySeries, MalformedRow, UnknownColumn
from .series import DailyRecord, DailySeries

DEFAULT_VOLUME_COLUMN = "Volume"


@dataclass(frozen=True)
class IngestConfig:
    """Column mapping and dialect for a daily data file.

    ``volume_column=None`` picks up a column named "Volume" when one exists
    and otherwise leaves volumes empty; an explicitly configured name must be
    present in the header or parsing fails with UnknownColumn.
    """

    date_column: str = "Date"
    price_column: str = "Close"
    volume_column: str | None = None
    date_format: str = "%Y-%m-%d"
    delimiter: str = ","
    decimal_comma: bool = False

    def __post_init__(self):
        if self.date_column == self.price_column:
            raise ValueError("date_column and price_column must differ")
        if len(self.delimiter) != 1 or not self.delimiter.isprintable():
            raise ValueError("delimiter must be a single printable character")


@dataclass(frozen=True)
class ValidationSummary:
    """Pure diagnostic snapshot of a series; computing it never mutates anything."""

    n: int
    first_date: Date | None
    last_date: Date | None
    bad_prices: int
    missing_volumes: int
    max_abs_delta: float | None


def _as_text(source) -> str:
    if isinstance(source, str):
        return source
    data = source.read() if hasattr(source, "read") else source
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise MalformedRow(1, f"stream is not valid UTF-8 ({exc.reason})") from None
    return data


def _column_index(header: list[str], name: str) -> int:
    try:
        return header.index(name)
    except ValueError:
        raise UnknownColumn(name) from None


def _parse_price(cell: str, config: IngestConfig, line_no: int) -> float:
    text = cell.strip()
    if not text:
        raise MalformedRow(line_no, "empty price cell")
    if config.decimal_comma:
        text = text.replace(",", ".")
    try:
        value = float(text)
    except ValueError:
        raise MalformedRow(line_no, f"unparseable price {cell!r}") from None
    if not math.isfinite(value):
        raise MalformedRow(line_no, f"non-finite price {cell!r}")
    if value <= 0:
        raise MalformedRow(line_no, f"nonpositive price {value}")
    return value


def _parse_volume(cell: str, line_no: int) -> int | None:
    text = cell.strip()
    if not text:
        return None  # missing volume is allowed, zero volume is data
    try:
        value = int(text)
    except ValueError:
        try:
            as_float = float(text)
        except ValueError:
            raise MalformedRow(line_no, f"unparseable volume {cell!r}") from None
        if not as_float.is_integer():
            raise MalformedRow(line_no, f"non-integer volume {cell!r}")
        value = int(as_float)
    if value < 0:
        raise MalformedRow(line_no, f"negative volume {value}")
    return value


def parse_daily_file(
    source, config: IngestConfig | None = None, index_name: str = "unnamed"
) -> DailySeries:
    """Parse one delimiter-separated stream into a DailySeries.

    ``source`` may be bytes, text, or a readable file object. Rows are sorted
    ascending by date on ingest. Unparseable cells, empty or nonpositive
    prices and negative volumes raise MalformedRow with the 1-based line
    number; repeated dates raise DuplicateDate; a file without data rows
    raises EmptySeries; a configured column missing from the header raises
    UnknownColumn.
    """
    config = config or IngestConfig()
    text = _as_text(source)
    reader = csv.reader(io.StringIO(text), delimiter=config.delimiter)

    header: list[str] | None = None
    parsed: list[tuple[Date, float, int | None, int]] = []
    while True:
        try:
            row = next(reader)
        except StopIteration:
            break
        except csv.Error as exc:
            raise MalformedRow(reader.line_num, f"csv error: {exc}") from None
        line_no = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue  # tolerate blank lines, they are not data rows
        cells = [cell.strip() for cell in row]
        if header is None:
            header = cells
            date_idx = _column_index(header, config.date_column)
            price_idx = _column_index(header, config.price_column)
            if config.volume_column is not None:
                volume_idx = _column_index(header, config.volume_column)
            else:
                lowered = [h.lower() for h in header]
                volume_idx = (
                    lowered.index(DEFAULT_VOLUME_COLUMN.lower())
                    if DEFAULT_VOLUME_COLUMN.lower() in lowered
                    else None
                )
            continue

        needed = max(date_idx, price_idx, volume_idx if volume_idx is not None else 0)
        if len(cells) <= needed:
            raise MalformedRow(line_no, f"expected at least {needed + 1} fields, got {len(cells)}")
        try:
            day = datetime.strptime(cells[date_idx], config.date_format).date()
        except ValueError:
            raise MalformedRow(line_no, f"unparseable date {cells[date_idx]!r}") from None
        close = _parse_price(cells[price_idx], config, line_no)
        volume = _parse_volume(cells[volume_idx], line_no) if volume_idx is not None else None
        parsed.append((day, close, volume, line_no))

    if header is None or not parsed:
        raise EmptySeries("no data rows found")

    parsed.sort(key=lambda item: item[0])
    for (d1, *_), (d2, *_) in zip(parsed, parsed[1:]):
        if d1 == d2:
            raise DuplicateDate(d1)

    records = tuple(DailyRecord(day, close, volume) for day, close, volume, _ in parsed)
    return DailySeries(records, index_name)


def parse_daily_path(
    path, config: IngestConfig | None = None, index_name: str | None = None
) -> DailySeries:
    """Parse a file on disk; the index name defaults to the file stem."""
    path = Path(path)
    with path.open("rb") as fh:
        return parse_daily_file(fh, config, index_name or path.stem)


def write_daily_file(series: DailySeries, dest) -> None:
    """Serialize to the canonical comma-delimited format.

    The output round-trips through ``parse_daily_file``: closes use the
    shortest decimal that reproduces the float exactly, and the Volume
    column is emitted only when at least one record carries a volume.
    """
    with_volume = series.has_volume()
    lines = ["Date,Close,Volume" if with_volume else "Date,Close"]
    for rec in series.records:
        base = f"{rec.date.isoformat()},{rec.close!r}"
        if with_volume:
            base += f",{rec.volume if rec.volume is not None else ''}"
        lines.append(base)
    payload = "\n".join(lines) + "\n"

    if hasattr(dest, "write"):
        dest.write(payload)
        return
    Path(dest).write_text(payload, encoding="utf-8")


def validate_series(series: DailySeries) -> ValidationSummary:
    """Report record count, date span, bad prices, missing volumes and the
    largest single-day percentage move. Never raises on bad data: that is
    what it exists to count."""
    closes = [r.close for r in series.records]
    bad = sum(1 for c in closes if not (math.isfinite(c) and c > 0))
    missing_vol = sum(1 for r in series.records if r.volume is None)
    max_abs_delta: float | None = None
    for prev, cur in zip(closes, closes[1:]):
        if math.isfinite(prev) and prev > 0 and math.isfinite(cur):
            delta = abs(100.0 * (cur - prev) / prev)
            if max_abs_delta is None or delta > max_abs_delta:
                max_abs_delta = delta
    return ValidationSummary(
        n=len(series),
        first_date=series.records[0].date,
        last_date=series.records[-1].date,
        bad_prices=bad,
        missing_volumes=missing_vol,
        max_abs_delta=max_abs_delta,
    )
