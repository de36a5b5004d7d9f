"""Finite point sets, node products and the dual weight."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import DuplicatePoint, InvalidArgument, NonPositiveWeight
from .hypernum import RATIONAL, parse_rational


@dataclass(frozen=True)
class Grid:
    """Ascending points ``x_0 < ... < x_M`` with ``pi_k = prod_{j != k} (x_k - x_j)``."""

    points: tuple
    node_products: tuple
    epsilons: tuple
    backend: object = field(default=RATIONAL, compare=False)

    @property
    def M(self) -> int:
        return len(self.points) - 1

    @property
    def size(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)


def make_grid(points: Sequence, backend=RATIONAL) -> Grid:
    if len(points) == 0:
        raise InvalidArgument("a grid needs at least one point")
    xs = sorted(backend.coerce(x) for x in points)
    for left, right in zip(xs, xs[1:]):
        if left == right:
            raise DuplicatePoint(f"point {left} occurs more than once")
    one = backend.coerce(1)
    products = []
    for k, xk in enumerate(xs):
        prod = one
        for j, xj in enumerate(xs):
            if j != k:
                prod *= xk - xj
        products.append(prod)
    eps = tuple(1 if pk > 0 else -1 for pk in products)
    return Grid(tuple(xs), tuple(products), eps, backend)


@dataclass(frozen=True)
class WeightTable:
    grid: Grid
    values: tuple

    def __post_init__(self):
        values = tuple(self.grid.backend.coerce(w) for w in self.values)
        if len(values) != self.grid.size:
            raise InvalidArgument(
                f"expected {self.grid.size} weights, got {len(values)}")
        for k, w in enumerate(values):
            if not w > 0:
                raise NonPositiveWeight(f"weight at node {k} is {w}, must be positive")
        object.__setattr__(self, "values", values)

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)


def dual_weight(g: Grid, u: WeightTable) -> WeightTable:
    """Weight ``v`` with ``u_k v_k pi_k^2 = 1`` at every node."""
    return WeightTable(g, tuple(1 / (uk * pk * pk) for uk, pk in zip(u.values, g.node_products)))


def make_weighted_grid(points: Sequence, weights: Sequence, backend=RATIONAL):
    """Build a grid and a weight table from paired, possibly unsorted, inputs."""
    if len(points) != len(weights):
        raise InvalidArgument("points and weights differ in length")
    pairs = sorted(((backend.coerce(x), w) for x, w in zip(points, weights)), key=lambda t: t[0])
    g = make_grid([x for x, _ in pairs], backend)
    return g, WeightTable(g, tuple(w for _, w in pairs))


def parse_grid_document(doc: dict, backend=RATIONAL):
    """Read ``{"points": [...], "weights": [...]}`` with exact string entries."""
    if not isinstance(doc, dict):
        raise InvalidArgument("grid document must be a JSON object")
    try:
        points = doc["points"]
        weights = doc["weights"]
    except KeyError as exc:
        raise InvalidArgument(f"grid document is missing key {exc.args[0]!r}") from None
    if not isinstance(points, list) or not isinstance(weights, list):
        raise InvalidArgument("'points' and 'weights' must be lists")
    for entry in points + weights:
        if not isinstance(entry, str):
            raise InvalidArgument(f"entries must be strings, got {entry!r}")
    xs = [parse_rational(s) for s in points]
    ws = [parse_rational(s) for s in weights]
    return make_weighted_grid(xs, ws, backend)


def load_grid_file(path, backend=RATIONAL):
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path}: malformed JSON ({exc})") from exc
    return parse_grid_document(doc, backend)
