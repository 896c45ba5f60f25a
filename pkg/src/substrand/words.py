"""Alphabets, finite words, substitutions, and lazy fixed-point expansion.

Letters are single characters; internally words are stored as tuples of
letter indices so that count vectors and matrices share one canonical
ordering. Rule files use the text format (parsed in :mod:`substrand.cli`)::

    # Fibonacci
    a -> ab
    b -> a
"""

from __future__ import annotations

from typing import Iterable, Mapping

from ._intmat import MatrixPowers
from .errors import InputError


class Alphabet:
    """An ordered set of distinct single-character letters.

    The order is fixed for the lifetime of the value: it defines the
    indexing used by count vectors, matrices, and strand coordinates.
    """

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[str]):
        letters = tuple(letters)
        if not letters:
            raise InputError("alphabet needs at least one letter")
        for a in letters:
            if not isinstance(a, str) or len(a) != 1:
                raise InputError(f"letters must be single characters, got {a!r}")
        if len(set(letters)) != len(letters):
            raise InputError(f"duplicate letters in alphabet {''.join(letters)!r}")
        self.letters = letters
        self._index = {a: i for i, a in enumerate(letters)}

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter: str) -> bool:
        return letter in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Alphabet({''.join(self.letters)!r})"

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise InputError(f"letter {letter!r} is not in alphabet {''.join(self.letters)!r}") from None

    def word(self, text: str | Word) -> Word:
        """Build a word from its surface string (or pass a word through)."""
        if isinstance(text, Word):
            if text.alphabet != self:
                raise InputError("word belongs to a different alphabet")
            return text
        return Word(self, (self.index(ch) for ch in text))


class Word:
    """An immutable finite word, possibly empty."""

    __slots__ = ("alphabet", "indices")

    def __init__(self, alphabet: Alphabet, indices: Iterable[int] = ()):
        indices = tuple(indices)
        n = len(alphabet)
        for i in indices:
            if not 0 <= i < n:
                raise InputError(f"letter index {i} out of range for {alphabet!r}")
        self.alphabet = alphabet
        self.indices = indices

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        letters = self.alphabet.letters
        return (letters[i] for i in self.indices)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.indices[item])
        return self.alphabet.letters[self.indices[item]]

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise InputError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.indices + other.indices)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self.alphabet == other.alphabet
            and self.indices == other.indices
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.indices))

    def __str__(self) -> str:
        letters = self.alphabet.letters
        return "".join(letters[i] for i in self.indices)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def startswith(self, prefix: "Word") -> bool:
        return self.indices[: len(prefix.indices)] == prefix.indices


def abelianize(u: Word) -> tuple[int, ...]:
    """Letter-count vector of a word; coordinate i counts letter i."""
    counts = [0] * len(u.alphabet)
    for i in u.indices:
        counts[i] += 1
    return tuple(counts)


class Substitution:
    """A map sending each letter to a nonempty word, extended by concatenation."""

    __slots__ = ("alphabet", "_images")

    def __init__(self, rules: Mapping[str, str | Word], alphabet: Alphabet | None = None):
        if alphabet is None:
            alphabet = Alphabet(rules.keys())
        images = []
        for letter in alphabet:
            if letter not in rules:
                raise InputError(f"no rule for letter {letter!r}")
            image = alphabet.word(rules[letter])
            if len(image) == 0:
                raise InputError(f"image of {letter!r} is empty")
            images.append(image.indices)
        if len(rules) != len(alphabet):
            raise InputError("rules mention letters outside the alphabet")
        self.alphabet = alphabet
        self._images = tuple(images)

    def image(self, letter: str) -> Word:
        return Word(self.alphabet, self._images[self.alphabet.index(letter)])

    def image_indices(self, letter_index: int) -> tuple[int, ...]:
        return self._images[letter_index]

    def rules(self) -> dict[str, str]:
        letters = self.alphabet.letters
        return {a: "".join(letters[i] for i in self._images[k]) for k, a in enumerate(letters)}

    def power(self, m: int) -> "Substitution":
        """The substitution whose images are the m-th iterated images."""
        if m < 1:
            raise InputError("power must be >= 1")
        if m == 1:
            return self
        rules = {
            a: apply_substitution(self, self.image(a), m - 1) for a in self.alphabet
        }
        return Substitution(rules, self.alphabet)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Substitution)
            and self.alphabet == other.alphabet
            and self._images == other._images
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self._images))

    def __repr__(self) -> str:
        return f"Substitution({self.rules()!r})"


def apply_substitution(sub: Substitution, u: Word | str, power: int = 1) -> Word:
    """Apply the substitution ``power`` times to ``u`` (images concatenated in order)."""
    if power < 1:
        raise InputError("power must be >= 1")
    word = sub.alphabet.word(u)
    indices = word.indices
    for _ in range(power):
        out: list[int] = []
        for i in indices:
            out.extend(sub._images[i])
        indices = tuple(out)
    return Word(sub.alphabet, indices)


def list_periodic_seeds(sub: Substitution, max_period: int) -> list[tuple[str, int]]:
    """All (letter, least period m <= max_period) whose m-th image restarts the letter.

    A qualifying letter has ``sub^m(a)`` beginning with ``a`` and of length
    at least 2, so iterating ``sub^m`` from ``a`` expands to an infinite
    periodic point.
    """
    if max_period < 1:
        raise InputError("max_period must be >= 1")
    from .spectral import abelianization_matrix  # local import, no cycle at module load

    powers = MatrixPowers(abelianization_matrix(sub))
    seeds = []
    n = len(sub.alphabet)
    for idx, letter in enumerate(sub.alphabet):
        first = idx
        for m in range(1, max_period + 1):
            first = sub._images[first][0]
            if first == idx:
                e = [0] * n
                e[idx] = 1
                if powers.image_length(m, e) > 1:
                    seeds.append((letter, m))
                break
    return seeds


class FixedPointStream:
    """Lazily expanded prefix of the one-sided periodic point at a seed letter.

    The working substitution is ``substitution ** period``; its image of the
    seed must begin with the seed and have length > 1. The buffer only ever
    grows, by applying the working substitution to the current prefix and
    truncating on a doubling schedule (amortized linear in output length).
    """

    def __init__(self, substitution: Substitution, seed: str, period: int = 1):
        if period < 1:
            raise InputError("period must be >= 1")
        self.substitution = substitution
        self.seed = seed
        self.period = period
        self._working = substitution.power(period)
        seed_index = substitution.alphabet.index(seed)
        image = self._working.image_indices(seed_index)
        if image[0] != seed_index or len(image) < 2:
            raise InputError(
                f"{seed!r} is not a periodic seed of period {period}: "
                f"image {''.join(substitution.alphabet.letters[i] for i in image)!r} "
                f"must start with {seed!r} and have length > 1"
            )
        self._buf: list[int] = [seed_index]

    @property
    def alphabet(self) -> Alphabet:
        return self.substitution.alphabet

    @property
    def working_substitution(self) -> Substitution:
        return self._working

    def _ensure(self, length: int) -> None:
        if length <= len(self._buf):
            return
        images = self._working._images
        buf = self._buf
        while len(buf) < length:
            target = max(length, 2 * len(buf))
            grown: list[int] = []
            for i in buf:
                grown.extend(images[i])
                if len(grown) >= target:
                    break
            buf = grown
        self._buf = buf

    def expand(self, length: int) -> Word:
        """The prefix of the periodic point of the given length (idempotent)."""
        if length < 0:
            raise InputError("length must be >= 0")
        self._ensure(length)
        return Word(self.alphabet, self._buf[:length])

    def prefix_indices(self, length: int) -> list[int]:
        """Prefix as a list of letter indices (for scanning loops)."""
        if length < 0:
            raise InputError("length must be >= 0")
        self._ensure(length)
        return self._buf[:length]

    def prefix_text(self, length: int) -> str:
        letters = self.alphabet.letters
        return "".join(letters[i] for i in self.prefix_indices(length))

    def __repr__(self) -> str:
        return f"FixedPointStream(seed={self.seed!r}, period={self.period})"


def expand(stream: FixedPointStream, length: int) -> Word:
    """Prefix of the stream's periodic point (see :meth:`FixedPointStream.expand`)."""
    return stream.expand(length)
