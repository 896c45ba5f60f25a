"""Strong-coincidence checking between two fixed points.

The scan tracks the prefix count-difference sequence D_k =
counts(x_0..x_{k-1}) - counts(y_0..y_{k-1}); a witness is the least index
k >= 1 with D_k = 0 and x_k = y_k, in which case the length-k prefixes are
abelian equivalent words followed by a common letter. With no witness below
the horizon the scan reports the set of D values seen and whether that set
stopped growing (finiteness evidence), never a proof of non-coincidence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InputError
from .words import FixedPointStream, Word, abelianize


@dataclass(frozen=True)
class DeltaSequence:
    """Exact prefix count-difference vectors D_0..D_horizon."""

    horizon: int
    values: tuple[tuple[int, ...], ...]

    def __getitem__(self, k: int) -> tuple[int, ...]:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class CoincidenceWitness:
    """Index k with abelian-equivalent length-k prefixes and a shared next letter."""

    index: int
    letter: str
    prefix_x: Word
    prefix_y: Word

    def to_json_dict(self) -> dict:
        # wire format keys: k (index), c (shared letter), s/t (the two prefixes)
        return {
            "k": self.index,
            "c": self.letter,
            "s": str(self.prefix_x),
            "t": str(self.prefix_y),
        }


@dataclass(frozen=True)
class CoincidenceVerdict:
    """Either a validated witness, or the bounded-scan negative report.

    When ``witness`` is None the scan found no qualifying index below the
    horizon; ``delta_values`` then holds every distinct difference vector
    observed and ``stabilized`` is True when none of them first appeared in
    the second half of the scan.
    """

    horizon: int
    witness: CoincidenceWitness | None
    delta_values: frozenset[tuple[int, ...]] | None = None
    stabilized: bool | None = None

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_json_dict(self) -> dict:
        if self.witness is not None:
            return {"horizon": self.horizon, "witness": self.witness.to_json_dict()}
        return {
            "horizon": self.horizon,
            "witness": None,
            "delta_values": sorted(list(v) for v in self.delta_values),
            "stabilized": self.stabilized,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def _check_pair(x: FixedPointStream, y: FixedPointStream) -> None:
    if x.alphabet != y.alphabet:
        raise InputError("streams must share an alphabet")


def _scan(x: FixedPointStream, y: FixedPointStream, horizon: int, stop_at_witness: bool):
    """Shared incremental scan.

    Returns (witness_index, first_seen) where first_seen maps each distinct
    difference vector to the index at which it first appeared (scanned over
    k in [0, horizon)), and witness_index is the least k >= 1 with zero
    difference and equal next letters, or None.
    """
    xs = x.prefix_indices(horizon)
    ys = y.prefix_indices(horizon)
    n = len(x.alphabet)
    delta = [0] * n
    first_seen: dict[tuple[int, ...], int] = {tuple(delta): 0}
    witness_index = None
    zero = tuple([0] * n)
    for k in range(1, horizon):
        delta[xs[k - 1]] += 1
        delta[ys[k - 1]] -= 1
        key = tuple(delta)
        if key not in first_seen:
            first_seen[key] = k
        if witness_index is None and key == zero and xs[k] == ys[k]:
            witness_index = k
            if stop_at_witness:
                break
    return witness_index, first_seen


def delta_sequence(x: FixedPointStream, y: FixedPointStream, horizon: int) -> DeltaSequence:
    """The exact difference sequence D_0..D_horizon via the step recurrence."""
    _check_pair(x, y)
    if horizon < 0:
        raise InputError("horizon must be >= 0")
    xs = x.prefix_indices(horizon)
    ys = y.prefix_indices(horizon)
    n = len(x.alphabet)
    delta = [0] * n
    values = [tuple(delta)]
    for k in range(horizon):
        delta[xs[k]] += 1
        delta[ys[k]] -= 1
        values.append(tuple(delta))
    return DeltaSequence(horizon, tuple(values))


def find_strong_coincidence(
    x: FixedPointStream, y: FixedPointStream, horizon: int
) -> CoincidenceVerdict:
    """Least witness index below the horizon, or the negative scan report.

    Witness prefixes are nonempty (k >= 1): a coincidence at the very first
    letter needs no prefix evidence and is excluded by definition.
    """
    _check_pair(x, y)
    if horizon < 1:
        raise InputError("horizon must be >= 1")
    witness_index, first_seen = _scan(x, y, horizon, stop_at_witness=True)
    if witness_index is None:
        return CoincidenceVerdict(
            horizon=horizon,
            witness=None,
            delta_values=frozenset(first_seen),
            stabilized=max(first_seen.values()) < horizon // 2,
        )
    k = witness_index
    letter = x.alphabet.letters[x.prefix_indices(k + 1)[k]]
    return CoincidenceVerdict(
        horizon=horizon,
        witness=CoincidenceWitness(k, letter, x.expand(k), y.expand(k)),
    )


def validate_witness(
    x: FixedPointStream, y: FixedPointStream, witness: CoincidenceWitness
) -> bool:
    """Re-derive every witness requirement from the streams themselves."""
    _check_pair(x, y)
    k = witness.index
    if k < 1 or len(witness.prefix_x) != k or len(witness.prefix_y) != k:
        return False
    if witness.prefix_x != x.expand(k) or witness.prefix_y != y.expand(k):
        return False
    if abelianize(witness.prefix_x) != abelianize(witness.prefix_y):
        return False
    xk = x.prefix_indices(k + 1)[k]
    yk = y.prefix_indices(k + 1)[k]
    if xk != yk:
        return False
    return x.alphabet.letters[xk] == witness.letter


def delta_value_set(
    x: FixedPointStream, y: FixedPointStream, horizon: int
) -> frozenset[tuple[int, ...]]:
    """Distinct difference vectors D_k for k below the horizon.

    For irreducible Pisot pairs this set is expected to stop growing as the
    horizon does; comparing cardinalities across horizons is the desk-scale
    finiteness check.
    """
    _check_pair(x, y)
    if horizon < 1:
        raise InputError("horizon must be >= 1")
    _, first_seen = _scan(x, y, horizon, stop_at_witness=False)
    return frozenset(first_seen)
