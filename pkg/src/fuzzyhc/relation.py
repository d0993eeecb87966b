"""Fuzzy compatibility relations built from Minkowski distances."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateDatasetError, IngestError

# entries this far outside [0, 1] are representation error and get clamped
RANGE_SLACK = 1e-12


class Dataset:
    """n labelled points of dimension p, stored as an (n, p) float array."""

    def __init__(self, points, labels: Sequence[str] | None = None):
        points = np.array(points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2 or points.shape[1] < 1:
            raise ValueError("points must form an (n, p) array with p >= 1")
        if not np.all(np.isfinite(points)):
            raise ValueError("all coordinates must be finite")
        if labels is None:
            labels = [f"x{i + 1}" for i in range(len(points))]
        labels = tuple(str(lab) for lab in labels)
        if len(labels) != len(points):
            raise ValueError(f"{len(labels)} labels for {len(points)} points")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be unique")
        points.setflags(write=False)
        self.points = points
        self.labels = labels

    def __len__(self):
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __repr__(self):
        return f"Dataset(n={len(self)}, p={self.dim})"


@dataclass(frozen=True)
class DistanceParams:
    q: float
    delta: float

    def __post_init__(self):
        if not self.q > 0:
            raise ValueError("q must be > 0")
        if not self.delta > 0:
            raise ValueError("delta must be > 0")


class FuzzyRelation:
    """Square matrix of membership degrees in [0, 1] over a labelled set.

    Reflexivity and symmetry are not enforced here because compositions of
    two different relations need not have them; use ``is_reflexive`` and
    ``is_symmetric`` to check.
    """

    def __init__(self, values, labels: Sequence[str] | None = None):
        values = np.array(values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError("relation values must be a square matrix")
        if not np.all(np.isfinite(values)):
            raise ValueError("relation values must be finite")
        if values.size and (values.min() < -RANGE_SLACK or values.max() > 1 + RANGE_SLACK):
            raise ValueError("relation values must lie in [0, 1]")
        np.clip(values, 0.0, 1.0, out=values)
        n = len(values)
        if labels is None:
            labels = [f"x{i + 1}" for i in range(n)]
        labels = tuple(str(lab) for lab in labels)
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for a {n}x{n} relation")
        values.setflags(write=False)
        self.values = values
        self.labels = labels

    @property
    def size(self) -> int:
        return len(self.values)

    def __len__(self):
        return self.size

    def __getitem__(self, idx):
        return self.values[idx]

    def __repr__(self):
        return f"FuzzyRelation(size={self.size})"

    def same_shape(self, other: "FuzzyRelation") -> bool:
        return self.size == other.size and self.labels == other.labels

    def is_reflexive(self) -> bool:
        return bool(np.all(np.diag(self.values) == 1.0))

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.values, self.values.T))

    def allclose(self, other: "FuzzyRelation", atol: float = 0.0) -> bool:
        return self.same_shape(other) and bool(
            np.all(np.abs(self.values - other.values) <= atol)
        )

    def distinct_values(self, tol: float = 1e-9) -> list[float]:
        """Sorted distinct entries; values within ``tol`` of the previous one merge.

        Each merged level is represented by its smallest member.
        """
        levels: list[float] = []
        prev = None
        for v in np.unique(self.values):
            v = float(v)
            if prev is None or v - prev > tol:
                levels.append(v)
            prev = v
        return levels

    @classmethod
    def identity(cls, labels: Sequence[str]) -> "FuzzyRelation":
        return cls(np.eye(len(labels)), labels)

    # serialisation

    def to_json(self, **extra) -> str:
        payload = {"labels": list(self.labels), "values": self.values.tolist()}
        payload.update(extra)
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "FuzzyRelation":
        payload = json.loads(text)
        return cls(payload["values"], payload["labels"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["", *self.labels])
        for lab, row in zip(self.labels, self.values):
            writer.writerow([lab, *(repr(float(v)) for v in row)])
        return buf.getvalue()

    def to_text(self, title: str | None = None) -> str:
        """Tab-separated matrix rounded to 2 decimals, like a printed report."""
        lines = []
        if title:
            lines.append(title)
        lines.append("\t".join(self.labels))
        for row in self.values:
            lines.append("\t".join(fmt2(v) for v in row))
        return "\n".join(lines) + "\n"


def fmt2(value: float) -> str:
    """Round to 2 decimals for display: 0.7171 -> '0.72', 0.8 -> '0.8', 1 -> '1.0'."""
    return str(round(float(value), 2) + 0.0)


def minkowski_distance(a, b, q: float) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if not q > 0:
        raise ValueError("q must be > 0")
    return float(np.sum(np.abs(a - b) ** q) ** (1.0 / q))


def pairwise_distances(data: Dataset, q: float) -> np.ndarray:
    if not q > 0:
        raise ValueError("q must be > 0")
    x = data.points
    diff = np.abs(x[:, None, :] - x[None, :, :])
    return np.sum(diff**q, axis=-1) ** (1.0 / q)


def compute_delta(data: Dataset, q: float) -> float:
    """Reciprocal of the largest pairwise distance in the dataset."""
    if len(data) < 2:
        raise ValueError("need at least two points")
    d_max = float(pairwise_distances(data, q).max())
    if d_max == 0.0:
        raise DegenerateDatasetError()
    return 1.0 / d_max


def compatibility_relation(data: Dataset, q: float = 2.0) -> tuple[FuzzyRelation, DistanceParams]:
    """R[i, k] = 1 - delta * ||x_i - x_k||_q with delta = 1 / diameter.

    Computed as 1 - d / d_max so the farthest pair lands on exactly 0.
    """
    if len(data) < 2:
        raise ValueError("need at least two points")
    dist = pairwise_distances(data, q)
    d_max = float(dist.max())
    if d_max == 0.0:
        raise DegenerateDatasetError()
    values = np.clip(1.0 - dist / d_max, 0.0, 1.0)
    np.fill_diagonal(values, 1.0)
    return FuzzyRelation(values, data.labels), DistanceParams(q=q, delta=1.0 / d_max)


def read_points_csv(text: str) -> Dataset:
    """Parse points from CSV text with a header row.

    A first column named ``label`` supplies point labels; every other
    column is a real-valued coordinate.
    """
    rows = [row for row in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in row)]
    if not rows:
        raise IngestError("points file is empty")
    header, body = rows[0], rows[1:]
    if not body:
        raise IngestError("points file has a header but no rows")
    has_labels = header[0].strip().lower() == "label"
    width = len(header)
    labels, points = [], []
    for lineno, row in enumerate(body, start=2):
        if len(row) != width:
            raise IngestError(f"line {lineno}: expected {width} columns, got {len(row)}")
        cells = row[1:] if has_labels else row
        try:
            coords = [float(c) for c in cells]
        except ValueError as exc:
            raise IngestError(f"line {lineno}: {exc}") from exc
        if not all(math.isfinite(c) for c in coords):
            raise IngestError(f"line {lineno}: non-finite coordinate")
        if has_labels:
            labels.append(row[0].strip())
        points.append(coords)
    if not points[0]:
        raise IngestError("points file has no coordinate columns")
    try:
        return Dataset(points, labels if has_labels else None)
    except ValueError as exc:
        raise IngestError(str(exc)) from exc
