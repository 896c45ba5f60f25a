"""The prefix automaton of a substitution and its integer numeration.

Vertices are letters; for every occurrence of a letter b in the image of a
letter a there is an edge a -> b labeled by the image prefix strictly before
that occurrence. A path from a seed letter, read as labels u_0..u_n, stands
for the prefix

    image^n(u_0) image^(n-1)(u_1) ... image(u_{n-1}) u_n

of the fixed point at the seed, and therefore for the integer equal to that
prefix's length. Values are computed with exact integer matrix powers; the
prefix word itself is only materialized on request (it can be astronomically
long while the path stays short).

Path text format: ``a: a.e.a`` (start vertex, dot-separated labels, empty
label written ``e`` unless the alphabet uses the letter e, in which case the
empty token is used instead).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ._intmat import MatrixPowers
from .errors import InputError
from .spectral import abelianization_matrix
from .words import Substitution, Word, abelianize, apply_substitution

DEFAULT_REALIZE_CAP = 10**6


@dataclass(frozen=True)
class PrefixEdge:
    """Edge of the prefix automaton: label then target spell an image prefix."""

    source: str
    target: str
    label: Word

    def to_json_dict(self) -> dict:
        return {"source": self.source, "target": self.target, "label": str(self.label)}


class PrefixGraph:
    """The prefix automaton of a substitution.

    Out-edges of a vertex are ordered by label length (0, 1, 2, ...), one
    edge per occurrence, so labels at a vertex have pairwise distinct
    lengths; this is what makes the path order total.
    """

    def __init__(self, sub: Substitution):
        self.substitution = sub
        self.alphabet = sub.alphabet
        edges: list[tuple[PrefixEdge, ...]] = []
        for a in sub.alphabet:
            image = sub.image(a)
            edges.append(
                tuple(
                    PrefixEdge(a, image[k], image[:k])
                    for k in range(len(image))
                )
            )
        self._edges = tuple(edges)
        self._powers = MatrixPowers(abelianization_matrix(sub))

    def out_edges(self, vertex: str) -> tuple[PrefixEdge, ...]:
        return self._edges[self.alphabet.index(vertex)]

    def edge_for_label(self, vertex: str, label: Word) -> PrefixEdge:
        """The unique out-edge with this label, or an input error."""
        candidates = self._edges[self.alphabet.index(vertex)]
        if len(label) < len(candidates):
            edge = candidates[len(label)]
            if edge.label == label:
                return edge
        raise InputError(
            f"no edge labeled {str(label)!r} at vertex {vertex!r}"
        )

    def weight(self, level: int, word: Word) -> int:
        """Exact length of image^level(word)."""
        return self._powers.image_length(level, abelianize(word))

    def letter_weight(self, level: int, letter_index: int) -> int:
        return self._powers.column_sums(level)[letter_index]

    def is_seed(self, vertex: str) -> bool:
        """Whether the fixed point at this vertex exists and is infinite."""
        idx = self.alphabet.index(vertex)
        image = self.substitution.image_indices(idx)
        return image[0] == idx and len(image) > 1

    def require_seed(self, vertex: str) -> None:
        if not self.is_seed(vertex):
            raise InputError(
                f"{vertex!r} is not a period-1 seed of this substitution; "
                "build the graph of the appropriate power instead"
            )

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.alphabet.letters),
            "edges": [e.to_json_dict() for group in self._edges for e in group],
        }

    def __repr__(self) -> str:
        return f"PrefixGraph({self.substitution.rules()!r})"


def build_prefix_graph(sub: Substitution) -> PrefixGraph:
    """One edge per (letter, occurrence) pair, ordered by label length."""
    return PrefixGraph(sub)


@dataclass(frozen=True)
class PathRepresentation:
    """A labeled path from a start vertex; the empty label list is the 0th path.

    For paths with more than one label the first label must be nonempty
    (properness), otherwise distinct paths could stand for the same integer.
    """

    start: str
    labels: tuple[Word, ...]

    def __post_init__(self):
        if len(self.labels) > 1 and len(self.labels[0]) == 0:
            raise InputError("first label must be nonempty on a multi-label path")

    def __len__(self) -> int:
        return len(self.labels)

    def to_json_dict(self) -> dict:
        return {"start": self.start, "labels": [str(u) for u in self.labels]}


@dataclass(frozen=True)
class DecodedValue:
    """Value and terminal vertex of a path; the realized prefix is optional."""

    value: int
    terminal: str
    realized: Word | None

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "terminal": self.terminal,
            "realized": None if self.realized is None else str(self.realized),
        }


def decode_path(
    g: PrefixGraph,
    path: PathRepresentation,
    materialize: bool = True,
    realize_cap: int = DEFAULT_REALIZE_CAP,
) -> DecodedValue:
    """Value, terminal vertex, and (optionally) the realized prefix of a path.

    The value is computed with exact matrix powers; the realized word is
    built only when requested and no longer than realize_cap.
    """
    if path.start not in g.alphabet:
        raise InputError(f"start vertex {path.start!r} not in the alphabet")
    vertex = path.start
    n = len(path.labels) - 1
    value = 0
    for i, label in enumerate(path.labels):
        edge = g.edge_for_label(vertex, label)
        value += g.weight(n - i, label)
        vertex = edge.target
    realized = None
    if materialize and value <= realize_cap:
        word = Word(g.alphabet)
        for label in path.labels:
            word = apply_substitution(g.substitution, word) + label
        realized = word
    return DecodedValue(value, vertex, realized)


def encode_integer(g: PrefixGraph, start: str, value: int) -> PathRepresentation:
    """The unique proper path at the seed whose value is the given integer.

    Greedy, most significant level first: at each level take the longest
    image-prefix label whose weight still fits, exactly as the order-
    preserving correspondence demands. Specializes to the greedy Zeckendorf
    expansion in the Fibonacci case and to base-k digits for uniform
    length-k substitutions.
    """
    g.require_seed(start)
    if value < 0:
        raise InputError("value must be >= 0")
    if value == 0:
        return PathRepresentation(start, ())
    start_index = g.alphabet.index(start)
    levels = 0
    while g.letter_weight(levels + 1, start_index) <= value:
        levels += 1
    # levels + 1 labels, exponents levels..0
    sub = g.substitution
    vertex_index = start_index
    remaining = value
    labels: list[Word] = []
    for level in range(levels, -1, -1):
        image = sub.image_indices(vertex_index)
        weights = g._powers.column_sums(level)
        # longest image prefix whose weight still fits; prefix weights are
        # strictly increasing partial sums, and the loop invariant
        # remaining < weight(level, whole image) keeps take < len(image)
        acc = 0
        take = 0
        for k in range(len(image) - 1):
            extended = acc + weights[image[k]]
            if extended > remaining:
                break
            acc = extended
            take = k + 1
        labels.append(Word(g.alphabet, image[:take]))
        remaining -= acc
        vertex_index = image[take]
    assert remaining == 0, "greedy digit extraction must terminate exactly"
    return PathRepresentation(start, tuple(labels))


def enumerate_paths(g: PrefixGraph, start: str, count: int) -> list[PathRepresentation]:
    """The first ``count`` paths at the seed in the total path order.

    Paths are ordered by label count, then lexicographically by label
    length; the k-th path (from 0) has value k. Generated directly from the
    order, independently of the greedy encoder.
    """
    g.require_seed(start)
    if count < 1:
        raise InputError("count must be >= 1")
    out = [PathRepresentation(start, ())]
    sub = g.substitution
    start_index = g.alphabet.index(start)

    def extend(vertex_index: int, labels: list[tuple[int, ...]], remaining_levels: int):
        if remaining_levels == 0:
            out.append(
                PathRepresentation(
                    start, tuple(Word(g.alphabet, l) for l in labels)
                )
            )
            return len(out) < count
        image = sub.image_indices(vertex_index)
        for k in range(len(image)):
            if not labels and k == 0:
                continue  # properness: first label nonempty
            labels.append(image[:k])
            keep_going = extend(image[k], labels, remaining_levels - 1)
            labels.pop()
            if not keep_going:
                return False
        return True

    n_labels = 1
    while len(out) < count:
        before = len(out)
        if not extend(start_index, [], n_labels):
            break
        if len(out) == before:
            break  # no paths of this length exist, none longer will either
        n_labels += 1
    return out[:count]


@dataclass(frozen=True)
class SynchronizingEntry:
    """An integer whose paths from both start vertices share a terminal."""

    value: int
    terminal: str
    path_a: PathRepresentation
    path_b: PathRepresentation

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "terminal": self.terminal,
            "path_a": format_path(self.path_a),
            "path_b": format_path(self.path_b),
        }


@dataclass(frozen=True)
class SynchronizingScan:
    """Synchronizing values in a range plus the longest consecutive run."""

    start_a: str
    start_b: str
    lo: int
    hi: int
    entries: tuple[SynchronizingEntry, ...]
    max_run: int

    def to_json_dict(self) -> dict:
        return {
            "start_a": self.start_a,
            "start_b": self.start_b,
            "range": [self.lo, self.hi],
            "synchronizing": [e.to_json_dict() for e in self.entries],
            "max_run": self.max_run,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def synchronizing_scan(
    g: PrefixGraph, start_a: str, start_b: str, value_range: tuple[int, int]
) -> SynchronizingScan:
    """Which integers in [lo, hi] have same-terminal paths from both seeds.

    Long runs of consecutive synchronizing integers are the desk-scale
    shadow of thickness of the synchronizing value set.
    """
    g.require_seed(start_a)
    g.require_seed(start_b)
    lo, hi = value_range
    if lo < 0 or hi < lo:
        raise InputError("range must satisfy 0 <= lo <= hi")
    entries = []
    run = 0
    max_run = 0
    previous = None
    for value in range(lo, hi + 1):
        pa = encode_integer(g, start_a, value)
        pb = encode_integer(g, start_b, value)
        ta = decode_path(g, pa, materialize=False).terminal
        tb = decode_path(g, pb, materialize=False).terminal
        if ta == tb:
            entries.append(SynchronizingEntry(value, ta, pa, pb))
            run = run + 1 if previous == value - 1 else 1
            previous = value
            max_run = max(max_run, run)
    return SynchronizingScan(start_a, start_b, lo, hi, tuple(entries), max_run)


# ---------------------------------------------------------------------------
# text I/O for paths

EMPTY_LABEL_TOKEN = "e"


def format_path(path: PathRepresentation, alphabet=None) -> str:
    """Render ``a: a.e.a``; empty labels use ``e`` unless e is a letter."""
    labels = path.labels
    if alphabet is None and labels:
        alphabet = labels[0].alphabet
    empty_token = "" if (alphabet is not None and "e" in alphabet) else EMPTY_LABEL_TOKEN
    body = ".".join(str(u) if len(u) else empty_token for u in labels)
    return f"{path.start}: {body}" if body else f"{path.start}:"


def parse_path(sub: Substitution, text: str) -> PathRepresentation:
    """Parse the text rendering of a path over this substitution's alphabet."""
    head, sep, body = text.partition(":")
    if not sep:
        raise InputError(f"path text needs a ': ' separator: {text!r}")
    start = head.strip()
    if len(start) != 1 or start not in sub.alphabet:
        raise InputError(f"bad start vertex {start!r}")
    body = body.strip()
    if not body:
        return PathRepresentation(start, ())
    labels = []
    e_is_letter = "e" in sub.alphabet
    for token in body.split("."):
        token = token.strip()
        if token == "" or (token == EMPTY_LABEL_TOKEN and not e_is_letter):
            labels.append(Word(sub.alphabet))
        else:
            labels.append(sub.alphabet.word(token))
    if len(labels) == 1 and len(labels[0]) == 0:
        return PathRepresentation(start, ())  # "a: e" is the 0th path
    return PathRepresentation(start, tuple(labels))
