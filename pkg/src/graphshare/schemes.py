"""Number-based secret sharing: Shamir (t, n) over a prime field and
Karnin-Greene-Hellman n-of-n additive sharing over mixed radices.

All dealer randomness comes from an explicit :class:`RandomSource`.
"""
from __future__ import annotations

import random
import secrets
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DuplicateShareError,
    InsufficientSharesError,
    MalformedDigitsError,
    OutOfSpaceError,
    ShareMismatchError,
)
from .codec import (
    DigitString,
    digit_radices,
    digit_space_size,
    mixed_radix_digits,
    mixed_radix_value,
)

PRODUCTION_PRIME = 2**61 - 1
TEST_PRIMES = (5, 7, 11)


class RandomSource:
    """Dealer randomness. One source per dealing; not thread-safe."""

    def __init__(self, generator: random.Random):
        self._gen = generator

    @classmethod
    def from_seed(cls, seed: bytes | int) -> "RandomSource":
        if isinstance(seed, int):
            seed = seed.to_bytes(32, "big")
        if len(seed) != 32:
            raise ValueError(f"seed must be 32 bytes, got {len(seed)}")
        return cls(random.Random(bytes(seed)))

    @classmethod
    def from_entropy(cls) -> "RandomSource":
        return cls(secrets.SystemRandom())

    def randbelow(self, bound: int) -> int:
        return self._gen.randrange(bound)

    def spawn(self) -> "RandomSource":
        """An independent child source derived from this one."""
        if isinstance(self._gen, secrets.SystemRandom):
            return RandomSource.from_entropy()
        return RandomSource.from_seed(self._gen.getrandbits(256).to_bytes(32, "big"))


class ScriptedSource(RandomSource):
    """Replays a fixed list of draws, for exhaustive enumeration of dealer choices."""

    def __init__(self, values: Iterable[int]):
        self._values = list(values)
        self._pos = 0

    def randbelow(self, bound: int) -> int:
        if self._pos >= len(self._values):
            raise RuntimeError("scripted randomness exhausted")
        v = self._values[self._pos]
        self._pos += 1
        if not 0 <= v < bound:
            raise ValueError(f"scripted draw {v} outside [0, {bound})")
        return v

    def spawn(self) -> "RandomSource":
        return self

    @property
    def consumed(self) -> int:
        return self._pos


@dataclass(frozen=True)
class ShamirParams:
    t: int
    n_participants: int
    prime: int = PRODUCTION_PRIME

    def __post_init__(self):
        if self.prime != PRODUCTION_PRIME and self.prime not in TEST_PRIMES:
            raise ValueError(f"prime must be 2^61-1 or a test prime {TEST_PRIMES}")
        if not 1 <= self.t <= self.n_participants <= self.prime - 1:
            raise ValueError(
                f"need 1 <= t <= n_participants <= p-1, got t={self.t}, "
                f"n={self.n_participants}, p={self.prime}"
            )

    @property
    def block_bits(self) -> int:
        return self.prime.bit_length() - 1

    @property
    def test_mode(self) -> bool:
        return self.prime != PRODUCTION_PRIME


@dataclass(frozen=True)
class KghParams:
    n_participants: int
    radices: tuple[int, ...]

    def __post_init__(self):
        if self.n_participants < 1:
            raise ValueError("need at least one participant")
        radices = tuple(int(r) for r in self.radices)
        if any(r < 1 for r in radices):
            raise ValueError("radices must be >= 1")
        object.__setattr__(self, "radices", radices)


@dataclass(frozen=True)
class SecretDescriptor:
    """What a dealing protects: enough to turn the reconstructed number back
    into a graph, a coloring or a bit payload, and the restriction to check."""

    kind: str = "raw"
    n: int = 0
    k: int = 1
    length: int | None = None
    predicate: str = "any"

    KINDS = ("raw", "structure", "coloring", "colored_graph", "number_as_graph")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown secret kind {self.kind!r}")


RAW = SecretDescriptor()


@dataclass(frozen=True)
class Share:
    scheme: str
    index: int
    payload: tuple[int, ...]
    params: ShamirParams | KghParams
    descriptor: SecretDescriptor = field(default=RAW)

    def __post_init__(self):
        if self.scheme not in ("shamir", "kgh"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if not 1 <= self.index <= self.params.n_participants:
            raise ValueError(f"participant index {self.index} out of range")
        payload = tuple(int(x) for x in self.payload)
        if self.scheme == "kgh" and len(payload) != len(self.params.radices):
            raise ValueError("kgh payload length differs from the radix sequence")
        object.__setattr__(self, "payload", payload)


def _check_consistent(shares: Sequence[Share], scheme: str, params=None):
    if not shares:
        raise InsufficientSharesError("no shares given")
    first = shares[0]
    params = params if params is not None else first.params
    seen = set()
    for s in shares:
        if s.scheme != scheme:
            raise ShareMismatchError(f"expected {scheme} shares, got {s.scheme}")
        if s.params != params or s.descriptor != first.descriptor:
            raise ShareMismatchError("shares come from different dealings")
        if len(s.payload) != len(first.payload):
            raise ShareMismatchError("share payload lengths differ")
        if s.index in seen:
            raise DuplicateShareError(f"participant {s.index} appears twice")
        seen.add(s.index)
    return params


def _poly_eval(coeffs: Sequence[int], x: int, p: int) -> int:
    # coeffs[0] is the constant term
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def shamir_split(
    blocks: Sequence[int],
    params: ShamirParams,
    rng: RandomSource,
    descriptor: SecretDescriptor = RAW,
) -> list[Share]:
    p = params.prime
    for b in blocks:
        if not 0 <= b < p:
            raise ValueError(f"secret block {b} not in the field of order {p}")
    polys = [[b] + [rng.randbelow(p) for _ in range(params.t - 1)] for b in blocks]
    return [
        Share("shamir", x, tuple(_poly_eval(c, x, p) for c in polys), params, descriptor)
        for x in range(1, params.n_participants + 1)
    ]


def lagrange_at_zero(points: Sequence[tuple[int, int]], p: int) -> int:
    total = 0
    for i, (xi, yi) in enumerate(points):
        num, den = 1, 1
        for j, (xj, _) in enumerate(points):
            if i != j:
                num = num * -xj % p
                den = den * (xi - xj) % p
        total = (total + yi * num * pow(den, -1, p)) % p
    return total


def shamir_reconstruct(shares: Sequence[Share], params: ShamirParams | None = None) -> list[int]:
    params = _check_consistent(shares, "shamir", params)
    if len(shares) < params.t:
        raise InsufficientSharesError(f"need {params.t} shares, got {len(shares)}")
    p = params.prime
    return [
        lagrange_at_zero([(s.index, s.payload[b]) for s in shares], p)
        for b in range(len(shares[0].payload))
    ]


def block_count(space: int, block_bits: int) -> int:
    """Blocks needed for every value below ``space``; fixed per space so the
    share length leaks nothing about the secret's magnitude."""
    return max(1, -(-(space - 1).bit_length() // block_bits))


def pack_value(value: int, space: int, block_bits: int) -> list[int]:
    if not 0 <= value < space:
        raise OutOfSpaceError(f"value outside [0, {space})")
    count = block_count(space, block_bits)
    mask = (1 << block_bits) - 1
    return [(value >> (block_bits * (count - 1 - i))) & mask for i in range(count)]


def unpack_value(blocks: Sequence[int], space: int, block_bits: int) -> int:
    if len(blocks) != block_count(space, block_bits):
        raise OutOfSpaceError(f"expected {block_count(space, block_bits)} blocks, got {len(blocks)}")
    value = 0
    for b in blocks:
        if not 0 <= b < (1 << block_bits):
            raise OutOfSpaceError(f"block {b} exceeds {block_bits} bits")
        value = (value << block_bits) | b
    if value >= space:
        raise OutOfSpaceError("reconstructed value lies outside the secret space")
    return value


def pack_digits_to_blocks(d: DigitString, block_bits: int = 60) -> list[int]:
    """Most-significant block first."""
    return pack_value(mixed_radix_value(d.digits, d.radices), digit_space_size(d.n, d.k), block_bits)


def unpack_blocks_to_digits(blocks: Sequence[int], n: int, k: int, block_bits: int = 60) -> DigitString:
    value = unpack_value(blocks, digit_space_size(n, k), block_bits)
    return DigitString.from_digits(mixed_radix_digits(value, digit_radices(n, k)), n, k)


def kgh_split(
    digits: Sequence[int],
    params: KghParams,
    rng: RandomSource,
    descriptor: SecretDescriptor = RAW,
) -> list[Share]:
    radices = params.radices
    if len(digits) != len(radices):
        raise MalformedDigitsError(f"{len(digits)} digits for {len(radices)} radices")
    for pos, (d, r) in enumerate(zip(digits, radices)):
        if not 0 <= d < r:
            raise MalformedDigitsError(f"digit {d} at position {pos} outside radix {r}")
    random_parts = [
        tuple(rng.randbelow(r) for r in radices) for _ in range(params.n_participants - 1)
    ]
    last = tuple(
        (d - sum(part[pos] for part in random_parts)) % r
        for pos, (d, r) in enumerate(zip(digits, radices))
    )
    payloads = random_parts + [last]
    return [
        Share("kgh", i, payload, params, descriptor)
        for i, payload in enumerate(payloads, start=1)
    ]


def kgh_reconstruct(shares: Sequence[Share], params: KghParams | None = None) -> list[int]:
    params = _check_consistent(shares, "kgh", params)
    if len(shares) != params.n_participants:
        missing = sorted(set(range(1, params.n_participants + 1)) - {s.index for s in shares})
        raise InsufficientSharesError(f"kgh needs all {params.n_participants} shares; missing {missing}")
    return [
        sum(s.payload[pos] for s in shares) % r for pos, r in enumerate(params.radices)
    ]
