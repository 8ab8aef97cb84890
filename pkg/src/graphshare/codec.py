"""Graph <-> digit string <-> integer conversion.

A colored graph is written as its lower-triangle edge bits followed by its
vertex colors.  The digit string is read as a mixed-radix number, most
significant digit first: the edge positions have radix 2 and the color
positions radix k.  With k = 1 no color digits are written.

(n, k) always travel with the value.  They are never inferred from it,
because leading zeros are significant.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import MalformedDigitsError, OutOfSpaceError, PaddingViolationError
from .graph import ColoredGraph, Coloring, Graph, triangle_size


def mixed_radix_value(digits: Sequence[int], radices: Sequence[int]) -> int:
    if len(digits) != len(radices):
        raise MalformedDigitsError(f"{len(digits)} digits for {len(radices)} radices")
    value = 0
    for pos, (d, r) in enumerate(zip(digits, radices)):
        if not 0 <= d < r:
            raise MalformedDigitsError(f"digit {d} at position {pos} outside radix {r}")
        value = value * r + d
    return value


def mixed_radix_digits(value: int, radices: Sequence[int]) -> tuple[int, ...]:
    if value < 0:
        raise OutOfSpaceError(f"negative value {value}")
    out = []
    for r in reversed(radices):
        value, d = divmod(value, r)
        out.append(d)
    if value:
        raise OutOfSpaceError("value exceeds the digit space")
    return tuple(reversed(out))


def space_size(radices: Sequence[int]) -> int:
    size = 1
    for r in radices:
        size *= r
    return size


def digit_radices(n: int, k: int) -> tuple[int, ...]:
    return (2,) * triangle_size(n) + ((k,) * n if k > 1 else ())


def digit_space_size(n: int, k: int) -> int:
    """2^(n(n-1)/2) * k^n, the number of distinct digit strings for (n, k)."""
    return gamma(n) * k**n


@dataclass(frozen=True)
class DigitString:
    n: int
    k: int
    structure_digits: tuple[int, ...]
    color_digits: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise MalformedDigitsError(f"invalid dimensions n={self.n}, k={self.k}")
        s = tuple(int(d) for d in self.structure_digits)
        c = tuple(int(d) for d in self.color_digits)
        if len(s) != triangle_size(self.n):
            raise MalformedDigitsError(
                f"n={self.n} needs {triangle_size(self.n)} structure digits, got {len(s)}"
            )
        want = self.n if self.k > 1 else 0
        if len(c) != want:
            raise MalformedDigitsError(
                f"n={self.n}, k={self.k} needs {want} color digits, got {len(c)}"
            )
        if any(d not in (0, 1) for d in s):
            raise MalformedDigitsError("structure digits must be binary")
        if any(not 0 <= d < self.k for d in c):
            raise MalformedDigitsError(f"color digit outside Z_{self.k}")
        object.__setattr__(self, "structure_digits", s)
        object.__setattr__(self, "color_digits", c)

    @classmethod
    def from_digits(cls, digits: Sequence[int], n: int, k: int) -> "DigitString":
        t = triangle_size(n)
        digits = tuple(digits)
        expected = t + (n if k > 1 else 0)
        if len(digits) != expected:
            raise MalformedDigitsError(
                f"n={n}, k={k} needs {expected} digits, got {len(digits)}"
            )
        return cls(n, k, digits[:t], digits[t:])

    @property
    def digits(self) -> tuple[int, ...]:
        return self.structure_digits + self.color_digits

    @property
    def radices(self) -> tuple[int, ...]:
        return digit_radices(self.n, self.k)

    def __len__(self) -> int:
        return len(self.structure_digits) + len(self.color_digits)

    def __str__(self) -> str:
        # Unambiguous only while k <= 10; larger palettes use a separator.
        sep = "" if self.k <= 10 else ","
        return sep.join(str(d) for d in self.digits)


def encode_graph(cg: ColoredGraph) -> DigitString:
    colors = cg.coloring.colors if cg.k > 1 else ()
    return DigitString(cg.n, cg.k, cg.graph.bits, colors)


def decode_graph(d: DigitString) -> ColoredGraph:
    if not isinstance(d, DigitString):
        raise MalformedDigitsError(f"expected DigitString, got {type(d).__name__}")
    graph = Graph(d.n, d.structure_digits)
    if d.k == 1:
        return ColoredGraph(graph, Coloring.blank(d.n))
    return ColoredGraph(graph, Coloring(d.k, d.color_digits))


def digits_to_integer(d: DigitString) -> int:
    return mixed_radix_value(d.digits, d.radices)


def integer_to_digits(value: int, n: int, k: int) -> DigitString:
    size = digit_space_size(n, k)
    if not 0 <= value < size:
        raise OutOfSpaceError(f"value {value} outside the digit space [0, {size}) of n={n}, k={k}")
    return DigitString.from_digits(mixed_radix_digits(value, digit_radices(n, k)), n, k)


def gamma(n: int) -> int:
    """Number of labeled simple graphs on n vertices."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 1 << triangle_size(n)


@dataclass(frozen=True)
class BitPayload:
    """A plain binary number to be carried as a graph.

    ``length`` is the number of significant bits; anything in ``bits`` past
    it must be zero padding.
    """

    bits: tuple[int, ...]
    length: int | None = None

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("payload bits must be 0 or 1")
        length = len(bits) if self.length is None else self.length
        if not 0 <= length <= len(bits):
            raise ValueError(f"declared length {length} exceeds {len(bits)} bits")
        if any(bits[length:]):
            raise ValueError("padding bits past the declared length must be zero")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "length", length)

    @classmethod
    def from_string(cls, text: str) -> "BitPayload":
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits[: self.length])


def vertices_for_length(length: int) -> int:
    """Smallest n >= 1 with n(n-1)/2 >= length."""
    n = 1
    while triangle_size(n) < length:
        n += 1
    return n


def number_to_graph(p: BitPayload) -> Graph:
    n = vertices_for_length(p.length)
    significant = p.bits[: p.length]
    return Graph(n, significant + (0,) * (triangle_size(n) - p.length))


def graph_to_number(g: Graph, length: int) -> BitPayload:
    if not 0 <= length <= len(g.bits):
        raise ValueError(f"declared length {length} exceeds the {len(g.bits)} triangle bits")
    if any(g.bits[length:]):
        first = length + g.bits[length:].index(1)
        raise PaddingViolationError(f"nonzero padding bit at triangle position {first}")
    return BitPayload(g.bits[:length], length)
