"""CSV sample files, result tables and the JSON model file."""
from __future__ import annotations

import csv
import io
import json
import math
import os
from datetime import datetime, timezone
from typing import Iterable

import numpy as np

from .partitioner import PartitionModel

MODEL_FORMAT_VERSION = 1


class CSVFormatError(ValueError):
    pass


class ModelFormatError(ValueError):
    pass


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def parse_csv(source) -> np.ndarray:
    """Read a comma-separated numeric matrix.

    ``source`` is a path or an open text stream. A first line containing any
    non-numeric cell is taken as a header and skipped. Blank lines are
    ignored; LF and CRLF line endings are both accepted.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, newline="") as fh:
            text = fh.read()
        name = os.fspath(source)
    else:
        text = source.read()
        name = getattr(source, "name", "<stream>")

    rows = []
    width = None
    header_seen = False
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c.strip() for c in row]
        if not cells or all(c == "" for c in cells):
            continue
        if not rows and not header_seen and not all(_is_number(c) for c in cells):
            header_seen = True
            width = len(cells)
            continue
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise CSVFormatError(f"{name}: line {lineno}: ragged row, expected {width} fields, found {len(cells)}")
        values = []
        for col, cell in enumerate(cells, start=1):
            try:
                v = float(cell)
            except ValueError:
                raise CSVFormatError(f"{name}: line {lineno}, column {col}: non-numeric value {cell!r}") from None
            if not math.isfinite(v):
                raise CSVFormatError(f"{name}: line {lineno}, column {col}: non-finite value {cell!r}")
            values.append(v)
        rows.append(values)
    if not rows:
        raise CSVFormatError(f"{name}: no data rows")
    return np.array(rows, dtype=np.float64)


def _open_for_write(path):
    try:
        return open(path, "w", newline="")
    except OSError as exc:
        raise OSError(f"cannot write {os.fspath(path)}: {exc.strerror}") from exc


def write_csv(matrix, path, header: Iterable[str] | None = None) -> None:
    """Write a sample matrix at full (round-trip) precision."""
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.size == 0:
        raise ValueError(f"refusing to write an empty matrix (shape {m.shape})")
    with _open_for_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if header is not None:
            writer.writerow(list(header))
        writer.writerows([repr(float(v)) for v in row] for row in m)


RESULT_COLUMNS = ("family", "repetition", "n_train", "n_test", "alpha", "k", "theta", "fallback",
                  "type1_pct", "type2_pct")


def result_rows(results) -> list[list[str]]:
    """One row per (data set, repetition) followed by mean and std rows."""
    rows = []
    for res in results:
        c = res.config
        common = [c.family]
        tail = [str(c.n_train), str(c.n_test), f"{res.alpha:g}"]
        for rep, t1, t2 in zip(res.repetitions, res.type1_rates, res.type2_rates):
            rows.append(common + [str(rep.repetition)] + tail
                        + [str(rep.k), f"{rep.theta:g}", str(int(rep.fallback)), f"{t1:.2f}", f"{t2:.2f}"])
        rows.append(common + ["mean"] + tail + ["", "", "", f"{res.type1_mean:.2f}", f"{res.type2_mean:.2f}"])
        rows.append(common + ["std"] + tail + ["", "", "", f"{res.type1_std:.2f}", f"{res.type2_std:.2f}"])
    return rows


def write_results_csv(results, path) -> None:
    rows = result_rows(results)
    if not rows:
        raise ValueError("refusing to write an empty result table")
    with _open_for_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULT_COLUMNS)
        writer.writerows(rows)


def model_to_dict(model: PartitionModel, created_at: str | None = None) -> dict:
    if created_at is None:
        created_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "k": model.k,
        "dim": model.d,
        "beta": model.beta,
        "theta": model.theta,
        "fallback": model.fallback,
        "centroids": model.centroids.tolist(),
        "coefficients": model.coefficients.tolist(),
        "train_counts": [int(c) for c in model.train_counts],
        "fit_seed": model.seed,
        "created_at": created_at,
    }


def model_from_dict(doc: dict) -> PartitionModel:
    version = doc.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format_version {version!r} (this build reads {MODEL_FORMAT_VERSION})")
    try:
        model = PartitionModel(
            centroids=np.array(doc["centroids"], dtype=np.float64),
            coefficients=np.array(doc["coefficients"], dtype=np.float64),
            train_counts=np.array(doc["train_counts"], dtype=np.int64),
            beta=doc["beta"],
            theta=doc["theta"],
            fallback=doc["fallback"],
            seed=doc.get("fit_seed"),
        )
    except KeyError as exc:
        raise ModelFormatError(f"model file is missing field {exc.args[0]!r}") from None
    except ValueError as exc:
        raise ModelFormatError(f"invalid model file: {exc}") from None
    if model.k != doc.get("k") or model.d != doc.get("dim"):
        raise ModelFormatError(f"model header says k={doc.get('k')}, dim={doc.get('dim')} "
                               f"but centroids are {model.k}x{model.d}")
    return model


def save_model(model: PartitionModel, path, created_at: str | None = None) -> None:
    with _open_for_write(path) as fh:
        json.dump(model_to_dict(model, created_at), fh, indent=1)
        fh.write("\n")


def load_model(source) -> PartitionModel:
    if isinstance(source, (str, os.PathLike)):
        with open(source) as fh:
            text = fh.read()
    else:
        text = source.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ModelFormatError("model file must hold a JSON object")
    return model_from_dict(doc)


def report_json(report) -> str:
    """The report as one line of JSON."""
    return json.dumps(report.to_dict(), separators=(",", ":"))
