"""CSV ingestion and emission for observation sets.

The on-disk format is self-describing: a header row ``x1,...,xp,y1,...,yq``
(UTF-8, decimal points, no thousands separators) followed by one row per
observation.  Input and output dimensions are inferred from the header.
"""

import csv

import numpy as np

from .dea import ObservationSet
from .errors import InvalidSample


def _parse_header(fields):
    fields = [f.strip() for f in fields]
    p = 0
    while p < len(fields) and fields[p] == f"x{p + 1}":
        p += 1
    q = 0
    while p + q < len(fields) and fields[p + q] == f"y{q + 1}":
        q += 1
    if p == 0 or q == 0 or p + q != len(fields):
        raise InvalidSample(
            "header must be x1,...,xp,y1,...,yq; got " + ",".join(fields)
        )
    return p, q


def read_observations(path):
    """Load an ObservationSet from a CSV file."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidSample(f"{path}: empty file") from None
        p, q = _parse_header(header)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != p + q:
                raise InvalidSample(f"{path}:{lineno}: expected {p + q} fields, got {len(row)}")
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise InvalidSample(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise InvalidSample(f"{path}: no observations")
    data = np.asarray(rows, dtype=np.float64)
    return ObservationSet(inputs=data[:, :p], outputs=data[:, p:])


def write_observations(path, sample):
    """Write an ObservationSet in the package CSV format."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            [f"x{i + 1}" for i in range(sample.p)] + [f"y{j + 1}" for j in range(sample.q)]
        )
        for i in range(sample.n):
            writer.writerow(
                [repr(float(v)) for v in sample.inputs[i]]
                + [repr(float(v)) for v in sample.outputs[i]]
            )
