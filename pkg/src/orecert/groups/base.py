"""Common backend contract for monoid and group element arithmetic.

A backend turns words into elements, multiplies them, and exposes a
canonical key so that equality, hashing, and deterministic sorting all
reduce to key comparison.  ``from_word`` is a monoid homomorphism from
words under concatenation; group backends additionally provide ``inverse``.
Elements are immutable values that can be shared freely.
"""

from __future__ import annotations

from ..errors import UnsupportedOperationError
from ..words import Alphabet, Word, parse_word


class Backend:
    name: str
    alphabet: Alphabet
    is_group: bool

    # -- construction ----------------------------------------------------

    @property
    def identity(self):
        raise NotImplementedError

    def from_word(self, w: Word):
        x = self.identity
        for letter in w:
            x = self.multiply(x, self.letter_element(letter))
        return x

    def letter_element(self, letter):
        gen, exp = letter
        g = self.generator_element(gen)
        return g if exp > 0 else self.inverse(g)

    def generator_element(self, gen):
        raise NotImplementedError

    def from_text(self, text: str):
        return self.from_word(self.parse(text))

    def parse(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    # -- arithmetic -------------------------------------------------------

    def multiply(self, x, y):
        raise NotImplementedError

    def inverse(self, x):
        raise UnsupportedOperationError(f"{self.name} has no inverses")

    # -- identity and equality --------------------------------------------

    def is_identity(self, x) -> bool:
        return self.equals(x, self.identity)

    def equals(self, x, y) -> bool:
        return self.canonical_key(x) == self.canonical_key(y)

    def canonical_key(self, x):
        """Totally ordered, hashable key; equal keys iff equal elements."""
        raise NotImplementedError

    def canonical_str(self, x) -> str:
        """Bit-exact text form used in certificates."""
        raise NotImplementedError

    def element_from_str(self, s: str):
        """Inverse of canonical_str; used when re-verifying certificates."""
        raise NotImplementedError

    # -- standard generators ------------------------------------------------

    def generators(self, max_index: int | None = None) -> list:
        """Standard generating elements, as (label, element) pairs."""
        raise NotImplementedError

    # -- group envelope -----------------------------------------------------

    def envelope(self) -> "Backend":
        """Group in which relations over this backend are evaluated."""
        if self.is_group:
            return self
        raise UnsupportedOperationError(f"{self.name} has no group envelope")

    def embed_to_envelope(self, x):
        if self.is_group:
            return x
        raise UnsupportedOperationError(f"{self.name} has no group envelope")

    def __eq__(self, other):
        return isinstance(other, Backend) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"<backend {self.name}>"


def vector_str(t: tuple[int, ...]) -> str:
    return "(" + ",".join(str(c) for c in t) + ")"


def vector_from_str(s: str) -> tuple[int, ...]:
    body = s.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"not a vector: {s!r}")
    inner = body[1:-1]
    if not inner:
        return ()
    return tuple(int(c) for c in inner.split(","))
